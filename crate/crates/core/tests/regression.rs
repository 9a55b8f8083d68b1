//! Recomputes every exact value in `data/regression.csv` and compares values and witness
//! hashes. `HYPERBOUND_BLESS=1` rewrites the table instead.

use hyperbound::harness::{regression_from_csv, regression_matrix, regression_to_csv};

const TABLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/regression.csv");

#[test]
fn regression_table_is_current() {
    let fresh = regression_matrix().unwrap();
    if std::env::var_os("HYPERBOUND_BLESS").is_some() {
        std::fs::write(TABLE, regression_to_csv(&fresh)).unwrap();
        return;
    }
    let stored = regression_from_csv(&std::fs::read_to_string(TABLE).unwrap()).unwrap();
    assert_eq!(stored.len(), fresh.len(), "table rows");
    for (s, f) in stored.iter().zip(&fresh) {
        assert_eq!(s, f, "{} {}", s.quantity, s.parameters);
    }
}

#[test]
fn pinned_values() {
    let stored = regression_from_csv(&std::fs::read_to_string(TABLE).unwrap()).unwrap();
    let get = |q: &str, p: &str| {
        stored
            .iter()
            .find(|e| e.quantity == q && e.parameters == p)
            .unwrap_or_else(|| panic!("{q} {p} missing"))
            .value
    };
    // known C4 Turán numbers
    let c4 = [0, 1, 3, 4, 6, 7, 9, 11, 13, 16];
    for (i, &v) in c4.iter().enumerate() {
        assert_eq!(get("ex", &format!("n={};F=C4", i + 1)), v);
    }
    assert_eq!(get("ex", "n=8;F=C4;floor=7"), 10);
    // known Zarankiewicz numbers z(m, n; 2, 2)
    for (m, n, v) in [(2, 2, 3), (3, 3, 6), (4, 4, 9), (4, 5, 10), (5, 5, 12), (5, 6, 14)] {
        assert_eq!(get("z", &format!("m={m};n={n};F=K22")), v);
    }
    assert_eq!(get("zexp", "m=2;n=2;P1=K22+;P2=K22+"), 2);
    assert_eq!(get("zexp", "m=4;n=4;P1=K22+;P2=K22+"), 18);
}
