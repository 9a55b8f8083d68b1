use hyperbound::hypergraph::{BipartiteGraph, SemibipartiteThreeGraph, ThreeGraph};
use hyperbound::io::AnyGraph;
use hyperbound::patterns::{complete_bipartite, even_cycle, find_expansion, ExpansionHost, PatternSpec, Placement};
use hyperbound::solvers::*;

fn spec(s: &str) -> PatternSpec {
    PatternSpec::parse(s).unwrap()
}

#[test]
fn graph_solver_matches_full_enumeration() {
    let cases = [
        ("C4", complete_bipartite(2, 2)),
        ("K{2,3}", complete_bipartite(2, 3)),
        ("K{1,3}", complete_bipartite(1, 3)),
        ("C6", even_cycle(6).unwrap()),
    ];
    for (name, f) in cases {
        for n in 1..=6 {
            let r = ex_exact(n, &[spec(name)], HostKind::Graph, None).unwrap();
            assert_eq!(Some(r.value), naive_ex(n, &f, 0), "ex({n}, {name})");
            assert!(witness_is_free(&r, &[spec(name)]).unwrap());
        }
    }
    // degree floors
    for n in 3..=6 {
        for floor in 0..n {
            let got = ex_exact(n, &[spec("C4")], HostKind::Graph, Some(floor))
                .ok()
                .map(|r| r.value);
            assert_eq!(
                got,
                naive_ex(n, &complete_bipartite(2, 2), floor),
                "n = {n}, floor = {floor}"
            );
        }
    }
}

#[test]
fn forbidding_a_list_forbids_each() {
    let both = [spec("C4"), spec("K{1,3}")];
    for n in 3..=7 {
        let r = ex_exact(n, &both, HostKind::Graph, None).unwrap();
        assert!(witness_is_free(&r, &both).unwrap());
        let single = ex_exact(n, &both[..1], HostKind::Graph, None).unwrap().value;
        assert!(r.value <= single);
    }
    // max degree 2 and no C4: a union of paths and cycles other than C4
    assert_eq!(ex_exact(7, &both, HostKind::Graph, None).unwrap().value, 7);
}

#[test]
fn zarankiewicz_matches_full_enumeration() {
    for f in [
        complete_bipartite(2, 2),
        complete_bipartite(1, 2),
        complete_bipartite(2, 3),
        complete_bipartite(2, 1),
    ] {
        for m in 1..=4 {
            for n in 1..=4 {
                let r = z_exact(m, n, &f).unwrap();
                assert_eq!(r.value, naive_z(m, n, &f), "Z({m}, {n}, {f:?})");
                let ordered = PatternSpec::bipartite("F", f.clone()).with_placement(Placement::Ordered);
                assert!(witness_is_free(&r, &[ordered]).unwrap());
            }
        }
    }
}

#[test]
fn zarankiewicz_witness_is_lexicographically_first() {
    let k22 = complete_bipartite(2, 2);
    let cells: Vec<[u32; 2]> = (0..3u32).flat_map(|a| (0..3u32).map(move |b| [a, b])).collect();
    let free = (0u32..1 << 9).filter_map(|mask| {
        let set: Vec<[u32; 2]> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| cells[i]).collect();
        let g = BipartiteGraph::new(3, 3, set.iter().map(|&[a, b]| (a, b))).unwrap();
        hyperbound::patterns::find_ordered_bipartite(&g, &k22)
            .is_none()
            .then_some(set)
    });
    let expected = lex_first_max(free).unwrap();
    match z_exact(3, 3, &k22).unwrap().witness {
        AnyGraph::Bipartite(g) => assert_eq!(g.edges(), expected.as_slice()),
        other => panic!("unexpected witness {}", other.kind()),
    }
}

#[test]
fn three_graph_matches_enumeration() {
    let k12p = spec("K{1,2}+");
    for n in 3..=5usize {
        let triples: Vec<[u32; 3]> = (0..n as u32)
            .flat_map(|a| (a + 1..n as u32).flat_map(move |b| (b + 1..n as u32).map(move |c| [a, b, c])))
            .collect();
        let mut best = 0;
        for mask in 0u32..1 << triples.len() {
            let count = mask.count_ones() as usize;
            if count <= best {
                continue;
            }
            let h = ThreeGraph::new(n, (0..triples.len()).filter(|i| mask >> i & 1 == 1).map(|i| triples[i])).unwrap();
            let host = ExpansionHost::from_three_graph(&h);
            if find_expansion(&host, &complete_bipartite(1, 2), Placement::Unordered)
                .unwrap()
                .is_none()
            {
                best = count;
            }
        }
        let r = ex_exact(n, std::slice::from_ref(&k12p), HostKind::ThreeGraph, None).unwrap();
        assert_eq!(r.value, best, "ex({n}, K12+)");
        assert!(witness_is_free(&r, std::slice::from_ref(&k12p)).unwrap());
    }
}

#[test]
fn three_graph_host_rules() {
    assert!(matches!(
        ex_exact(5, &[spec("C4")], HostKind::ThreeGraph, None),
        Err(SolveError::Pattern(_))
    ));
    assert!(matches!(
        ex_exact(5, &[spec("K{2,2}+")], HostKind::Graph, None),
        Err(SolveError::Pattern(_))
    ));
    assert!(matches!(
        ex_exact(5, &[spec("K{2,2}+ ordered")], HostKind::ThreeGraph, None),
        Err(SolveError::Pattern(_))
    ));
    assert!(matches!(
        ex_exact(11, &[spec("C4")], HostKind::Graph, None),
        Err(SolveError::CapExceeded(_))
    ));
    assert!(matches!(
        ex_exact(5, &[spec("C4")], HostKind::Graph, Some(5)),
        Err(SolveError::Infeasible(_))
    ));
    // a floor of 6 on 5 vertices is infeasible for 3-graphs too (C(4, 2) = 6 is the maximum)
    let single = spec("K{1,1}+");
    assert!(matches!(
        ex_exact(5, &[single], HostKind::ThreeGraph, Some(1)),
        Err(SolveError::Infeasible(_))
    ));
}

/// Freeness is closed under deleting edges, so `Z = v` iff a free `v`-set exists and every
/// `(v+1)`-subset of the universe contains a forbidden copy.
#[test]
fn semibipartite_4x4_by_subset_enumeration() {
    let k22 = complete_bipartite(2, 2);
    let r = z_expansion_exact(4, 4, &k22, &k22).unwrap();
    assert_eq!(r.value, 18);
    let specs = [
        PatternSpec::kst_expansion(2, 2, Placement::Ordered),
        PatternSpec::kst_expansion(2, 2, Placement::CoreInV1),
    ];
    assert!(witness_is_free(&r, &specs).unwrap());

    let universe: Vec<[u32; 3]> = (0..4u32)
        .flat_map(|a| (a + 1..4).flat_map(move |b| (0..4u32).map(move |w| [a, b, w])))
        .collect();
    assert_eq!(universe.len(), 24);
    let k = r.value + 1;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut checked = 0u64;
    loop {
        let h = SemibipartiteThreeGraph::new(4, 4, idx.iter().map(|&i| universe[i])).unwrap();
        let host = ExpansionHost::from_semibipartite(&h);
        let hit = find_expansion(&host, &k22, Placement::Ordered).unwrap().is_some()
            || find_expansion(&host, &k22, Placement::CoreInV1).unwrap().is_some();
        assert!(hit, "free {k}-set {idx:?}");
        checked += 1;
        // next combination
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < universe.len() - k + p) else {
            break;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    assert_eq!(checked, 42_504);
}

#[test]
fn semibipartite_trivial_values() {
    let k11 = complete_bipartite(1, 1);
    let k22 = complete_bipartite(2, 2);
    for (m, n) in [(3, 3), (4, 2), (2, 4)] {
        assert_eq!(z_expansion_exact(m, n, &k11, &k22).unwrap().value, 0);
    }
    // with no room for either pattern every candidate triple is allowed
    assert_eq!(z_expansion_exact(3, 3, &k22, &k22).unwrap().value, 9);
    let p1 = spec("K{2,2}+ ordered");
    let p2 = spec("K{2,2}+ core-in-V1");
    assert_eq!(z_expansion_exact_specs(2, 2, &p1, &p2).unwrap().value, 2);
    assert!(z_expansion_exact_specs(2, 2, &p2, &p1).is_err());
}

#[test]
fn monotone_in_every_argument() {
    let c4 = spec("C4");
    let ex: Vec<usize> = (1..=9)
        .map(|n| {
            ex_exact(n, std::slice::from_ref(&c4), HostKind::Graph, None)
                .unwrap()
                .value
        })
        .collect();
    assert!(ex.windows(2).all(|w| w[0] <= w[1]), "{ex:?}");
    let k22 = complete_bipartite(2, 2);
    for m in 1..=4 {
        for n in 1..=4 {
            let z = z_exact(m, n, &k22).unwrap().value;
            assert!(z <= z_exact(m + 1, n, &k22).unwrap().value);
            assert!(z <= z_exact(m, n + 1, &k22).unwrap().value);
        }
    }
}

#[test]
fn bounds_dominate_exact_values() {
    for (s, t) in [(2, 2), (2, 3), (1, 2)] {
        let f = complete_bipartite(s, t);
        for m in 1..=5 {
            for n in 1..=5 {
                let z = z_exact(m, n, &f).unwrap().value;
                let b = eval_bound(BoundId::KstZ, &[m as u64, n as u64, s as u64, t as u64]).unwrap();
                assert!(b.dominates(z), "Z({m},{n},K{s},{t}) = {z} > {}", b.value);
            }
        }
    }
    for n in 2..=10 {
        let ex = ex_exact(n, &[spec("C4")], HostKind::Graph, None).unwrap().value;
        assert!(eval_bound(BoundId::KstEx, &[n as u64, 2, 2]).unwrap().dominates(ex));
    }
    for k in 2..=3usize {
        let c = even_cycle(2 * k).unwrap();
        for m in 2..=4 {
            for n in 2..=4 {
                let z = z_exact(m, n, &c).unwrap().value;
                assert!(eval_bound(BoundId::NvCycle, &[m as u64, n as u64, k as u64])
                    .unwrap()
                    .dominates(z));
            }
        }
    }
    let k22 = complete_bipartite(2, 2);
    for m in 2..=4 {
        for n in 1..=4 {
            let z = z_expansion_exact(m, n, &k22, &k22).unwrap().value;
            let b = eval_bound(BoundId::ZExpI, &[m as u64, n as u64, 2, 2, 2, 2]).unwrap();
            assert!(b.dominates(z));
        }
    }
}

#[test]
fn bound_formulas_by_hand() {
    // independent substitutions
    let b = eval_bound(BoundId::KstEx, &[10, 2, 2]).unwrap();
    assert!((b.value - (0.5 * 10f64.powf(1.5) + 5.0)).abs() < 1e-9);
    let b = eval_bound(BoundId::NvCycle, &[8, 27, 3]).unwrap();
    // k = 3 odd: 3 (8^{2/3} 27^{2/3} + 35) = 3 (4 * 9 + 35)
    assert!((b.value - 213.0).abs() < 1e-9);
    assert_eq!(b.branch, "k odd");
    let b = eval_bound(BoundId::ZExpII, &[4, 4, 2, 2, 2, 2]).unwrap();
    // f = 2*4*4*(2 * 4^{3/4} * 4 + 2 * 4^2), r = 288
    let f = 32.0 * (8.0 * 4f64.powf(0.75) + 32.0);
    assert!((b.value - (2.0 * f + 288.0)).abs() < 1e-9);
    let terms: std::collections::HashMap<_, _> = b.terms.iter().cloned().collect();
    assert!((terms["g"] - (2.0 * 4.0 * 2.0 + 8.0)).abs() < 1e-12);
    assert!((terms["h"] - 2.0 * 8.0).abs() < 1e-12);
    assert_eq!(BoundId::parse("z_exp_ii"), Some(BoundId::ZExpII));
    assert!(BoundId::parse("nope").is_none());
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = || {
        let r = ex_exact(9, &[spec("C4")], HostKind::Graph, None).unwrap();
        let z = z_exact(4, 5, &complete_bipartite(2, 2)).unwrap();
        (r.value, r.witness, z.value, z.witness)
    };
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(run);
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(run);
    assert_eq!(one, four);
}
