use proptest::prelude::*;

use hyperbound::hypergraph::{BipartiteGraph, Graph, SemibipartiteThreeGraph, ThreeGraph};
use hyperbound::io::{content_hash, from_graph6, to_graph6, AnyGraph};

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n as u32, 0..n as u32), 0..120).prop_map(move |pairs| {
            let edges: std::collections::BTreeSet<(u32, u32)> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn three_graph() -> impl Strategy<Value = ThreeGraph> {
    (3usize..12).prop_flat_map(|n| {
        proptest::collection::btree_set([0..n as u32, 0..n as u32, 0..n as u32], 0..60).prop_map(move |ts| {
            let edges: std::collections::BTreeSet<[u32; 3]> = ts
                .into_iter()
                .filter(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
                .map(|mut t| {
                    t.sort();
                    t
                })
                .collect();
            ThreeGraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph_json_round_trips(g in graph()) {
        let any = AnyGraph::Graph(g);
        let text = any.to_json();
        let back = AnyGraph::from_json(&text).unwrap();
        prop_assert_eq!(&back, &any);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn three_graph_json_round_trips(h in three_graph()) {
        let any = AnyGraph::Three(h);
        let text = any.to_json();
        prop_assert_eq!(AnyGraph::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn graph6_round_trips(g in graph()) {
        let text = to_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(from_graph6(&text).unwrap(), g);
    }
}

#[test]
fn graph6_reference_strings() {
    let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(to_graph6(&k4), "C~");
    assert_eq!(to_graph6(&Graph::empty(0)), "?");
    assert_eq!(to_graph6(&Graph::new(2, [(0, 1)]).unwrap()), "A_");
    // Petersen graph: 3-regular, 15 edges, no triangles or 4-cycles
    let p = from_graph6("IheA@GUAo").unwrap();
    assert_eq!((p.n(), p.edge_count()), (10, 15));
    assert!((0..10).all(|v| p.degree(v) == 3));
    for a in 0..10u32 {
        for b in a + 1..10 {
            let common = p.neighbors(a).iter().filter(|x| p.neighbors(b).contains(x)).count();
            assert!(common <= if p.has_edge(a, b) { 0 } else { 1 });
        }
    }
    // long-form size prefix for n >= 63
    let big = Graph::empty(100);
    let text = to_graph6(&big);
    assert!(text.starts_with("~?@c"), "{}", &text[..4]);
    assert_eq!(&to_graph6(&Graph::empty(63))[..4], "~??~");
    assert_eq!(from_graph6(&text).unwrap(), big);
}

#[test]
fn content_hash_is_the_git_blob_id() {
    // `git hash-object` values
    assert_eq!(content_hash(b""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
    assert_eq!(content_hash(b"hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
    let g = AnyGraph::Graph(Graph::new(3, [(0, 1)]).unwrap());
    assert_eq!(g.content_hash(), content_hash(g.to_json().as_bytes()));
}

#[test]
fn canonical_json_shapes() {
    let g = AnyGraph::Graph(Graph::new(3, [(1, 2), (0, 1)]).unwrap());
    assert_eq!(g.to_json(), r#"{"kind":"graph","n":3,"edges":[[0,1],[1,2]]}"#);
    let b = AnyGraph::Bipartite(BipartiteGraph::new(2, 3, [(1, 2), (0, 0)]).unwrap());
    assert_eq!(b.to_json(), r#"{"kind":"bipartite","m":2,"n":3,"edges":[[0,0],[1,2]]}"#);
    let h = AnyGraph::Semibipartite(SemibipartiteThreeGraph::new(2, 1, [[0, 1, 0]]).unwrap());
    let back = AnyGraph::from_json(&h.to_json()).unwrap();
    assert_eq!(back, h);
}

#[test]
fn malformed_files_are_rejected() {
    for text in [
        r#"{"kind":"graph","n":3,"edges":[[0,3]]}"#,
        r#"{"kind":"graph","n":3,"edges":[[0,1,2]]}"#,
        r#"{"kind":"graph","n":3,"edges":[[0,1],[1,0]]}"#,
        r#"{"kind":"bipartite","n":3,"edges":[]}"#,
        r#"{"kind":"4graph","n":3,"edges":[]}"#,
        r#"{"kind":"graph","n":3,"edges":[],"extra":1}"#,
        "not json",
    ] {
        assert!(AnyGraph::from_json(text).is_err(), "{text}");
    }
    assert!(from_graph6("C~~").is_err());
}

#[test]
fn files_round_trip_on_disk() {
    let dir = tempfile_dir();
    let path = dir.join("h.json");
    let h = AnyGraph::Three(ThreeGraph::complete(5));
    h.write(&path).unwrap();
    assert_eq!(AnyGraph::read(&path).unwrap(), h);
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperbound-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
