use hyperbound::constructions::{
    bipartite_norm_graph, composed_construction, find_kst, find_ordered_kst, norm_graph, random_deletion_lower_bound,
    NormGraphParams,
};
use hyperbound::ff::NormMap;
use hyperbound::patterns::embed::{find_copy, Host, PatternPlan};
use hyperbound::patterns::{complete_bipartite, even_cycle};

/// `N(X) = X^{1 + q + ... + q^{s-2}}`, computed by repeated Frobenius powers in the big field.
fn norm_by_powers(norm: &NormMap, x: u32) -> u32 {
    let big = norm.big_field();
    let q = norm.q() as u64;
    let mut acc = 1; // index 1 is the unit in the lexicographic encoding
    let mut frob = x;
    for _ in 0..norm.s() - 1 {
        acc = big.mul(acc, frob);
        frob = big.pow(frob, q);
    }
    acc
}

#[test]
fn norm_matches_frobenius_product() {
    for (q, s) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (2, 4), (5, 3)] {
        let norm = NormMap::new(q, s).unwrap();
        for x in 0..norm.big_field().order() {
            assert_eq!(
                norm.embed_index(norm.norm_index(x)),
                norm_by_powers(&norm, x),
                "q={q} s={s} x={x}"
            );
        }
    }
}

#[test]
fn adjacency_is_the_norm_equation() {
    for (q, s) in [(3, 2), (4, 2), (3, 3), (2, 3)] {
        let params = NormGraphParams::new(q, s).unwrap();
        let norm = NormMap::new(q, s).unwrap();
        let g = norm_graph(q, s).unwrap();
        let (big, small) = (norm.big_field(), norm.small_field());
        for a in 0..g.n() as u32 {
            for b in a + 1..g.n() as u32 {
                let ((xa, ya), (xb, yb)) = (params.unlabel(a), params.unlabel(b));
                let want = norm.norm_index(big.add(xa, xb)) == small.mul(ya, yb);
                assert_eq!(g.has_edge(a, b), want, "q={q} s={s} {a}-{b}");
            }
        }
    }
}

#[test]
fn bipartite_norm_graph_shape() {
    for (q, s) in [(3, 2), (5, 2), (2, 3), (3, 3)] {
        let b = bipartite_norm_graph(q, s).unwrap();
        let side = (q as usize).pow(s) - (q as usize).pow(s - 1);
        assert_eq!((b.left_size(), b.right_size()), (side, side));
        // the double of PG(q, s): u on the left sees w on the right iff uw is an edge
        let g = norm_graph(q, s).unwrap();
        assert_eq!(b.edge_count(), 2 * g.edge_count());
        assert!(b.edges().iter().all(|&[u, w]| u != w && g.has_edge(u, w)));
        let t = (1..s as usize).product::<usize>() + 1;
        assert!(find_ordered_kst(&b, s as usize, t).is_none(), "q={q} s={s}");
    }
}

#[test]
fn kst_search_finds_planted_copies() {
    let g = hyperbound::hypergraph::Graph::new(6, [(0, 3), (0, 4), (1, 3), (1, 4), (2, 5)]).unwrap();
    let (left, right) = find_kst(&g, 2, 2).unwrap();
    assert_eq!(left.len(), 2);
    assert!(left.iter().all(|&a| right.iter().all(|&b| g.has_edge(a, b))));
    assert!(find_kst(&g, 2, 3).is_none());
    // PG(q, 2) with s = 2 is C4-free but contains K_{1,q-1} stars
    let pg = norm_graph(5, 2).unwrap();
    assert!(find_kst(&pg, 2, 2).is_none());
    assert!(find_kst(&pg, 1, 4).is_some());
}

#[test]
fn composed_layers() {
    let c = composed_construction(2, 3, 3).unwrap();
    assert_eq!((c.q, c.q_tilde, c.n), (8, 8, 448));
    assert_eq!(c.hypergraph.first_size(), 448);
    assert_eq!(c.hypergraph.second_size(), 448);
    // every triangle of the layers is an edge: count by brute force over V1-pairs
    let mut count = 0;
    for &[a, b] in c.inner.edges() {
        let (na, nb) = (c.cross.left_neighbors(a), c.cross.left_neighbors(b));
        count += na.iter().filter(|w| nb.binary_search(w).is_ok()).count();
    }
    assert_eq!(count, c.hypergraph.edge_count());
}

#[test]
fn deletion_lower_bound_is_pattern_free() {
    let c4 = even_cycle(4).unwrap();
    let c6 = even_cycle(6).unwrap();
    for seed in 0..5 {
        for (f, n) in [(&c4, 40), (&c6, 30), (&complete_bipartite(2, 3), 30)] {
            let g = random_deletion_lower_bound(n, f, seed).unwrap();
            let plan = PatternPlan::from_bipartite(f);
            assert!(find_copy(&Host::from_graph(&g), &plan).is_none(), "seed {seed}");
            assert_eq!(g, random_deletion_lower_bound(n, f, seed).unwrap());
        }
    }
    assert!(random_deletion_lower_bound(10, &complete_bipartite(1, 3), 0).is_err());
}

#[test]
fn invalid_parameters() {
    assert!(norm_graph(6, 2).is_err());
    assert!(norm_graph(3, 1).is_err());
    assert!(composed_construction(2, 2, 3).is_err());
    assert!(NormMap::new(10, 2).is_err());
}
