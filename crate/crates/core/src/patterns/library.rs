//! Named bipartite patterns, each with its proper bipartition fixed.

use crate::hypergraph::{BipartiteGraph, Graph};
use crate::patterns::PatternError;

pub fn complete_bipartite(s: usize, t: usize) -> BipartiteGraph {
    let edges = (0..s as u32).flat_map(|a| (0..t as u32).map(move |b| (a, b)));
    BipartiteGraph::new(s, t, edges).expect("complete bipartite graph is simple")
}

/// `C_{2k}` as `l0 r0 l1 r1 ... l_{k-1} r_{k-1}` with parts `(k, k)`.
pub fn even_cycle(len: usize) -> Result<BipartiteGraph, PatternError> {
    if len < 4 || !len.is_multiple_of(2) {
        return Err(PatternError::BadParameters(format!("C{len}: need an even length >= 4")));
    }
    let k = len / 2;
    let edges = (0..k as u32).flat_map(|i| [(i, i), ((i + 1) % k as u32, i)]);
    Ok(BipartiteGraph::new(k, k, edges).expect("cycle is simple"))
}

/// Proper 2-colouring of `g`, each component coloured so its smallest vertex lands in the
/// first part. Returns the bipartite graph and the old-vertex -> (side, index) map.
pub fn two_colour(g: &Graph) -> Result<(BipartiteGraph, Vec<(bool, u32)>), PatternError> {
    let n = g.n();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start as u32];
        while let Some(v) = stack.pop() {
            let c = colour[v as usize].unwrap();
            for &u in g.neighbors(v) {
                match colour[u as usize] {
                    None => {
                        colour[u as usize] = Some(!c);
                        stack.push(u);
                    }
                    Some(cu) if cu == c => return Err(PatternError::NotBipartite),
                    Some(_) => {}
                }
            }
        }
    }
    let mut place = Vec::with_capacity(n);
    let (mut left, mut right) = (0u32, 0u32);
    for c in colour {
        if c == Some(true) {
            place.push((true, right));
            right += 1;
        } else {
            place.push((false, left));
            left += 1;
        }
    }
    let edges = g.edges().iter().map(|&[a, b]| {
        let (pa, pb) = (place[a as usize], place[b as usize]);
        if pa.0 {
            (pb.1, pa.1)
        } else {
            (pa.1, pb.1)
        }
    });
    let bip = BipartiteGraph::new(left as usize, right as usize, edges).expect("colouring is proper");
    Ok((bip, place))
}

/// Theta graph: two poles joined by three internally disjoint paths of lengths `a, b, c`.
/// The first pole is on the first side.
pub fn theta(a: usize, b: usize, c: usize) -> Result<BipartiteGraph, PatternError> {
    let lens = [a, b, c];
    if lens.contains(&0) || lens.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(PatternError::BadParameters(format!(
            "theta{{{a},{b},{c}}}: lengths must be positive with at most one equal to 1"
        )));
    }
    let mut edges = Vec::new();
    let mut next = 2u32;
    for len in lens {
        let mut prev = 0u32;
        for step in 1..=len {
            let v = if step == len {
                1
            } else {
                next += 1;
                next - 1
            };
            edges.push((prev, v));
            prev = v;
        }
    }
    let g = Graph::new(next as usize, edges).map_err(|e| PatternError::BadParameters(e.to_string()))?;
    Ok(two_colour(&g)?.0)
}

/// The 2 by 2 grid: a 3 by 3 array of vertices; the side with the four corners and the
/// centre comes first.
pub fn grid2x2() -> BipartiteGraph {
    let id = |r: u32, c: u32| r * 3 + c;
    let mut edges = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            if c < 2 {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r < 2 {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let g = Graph::new(9, edges).expect("grid is simple");
    two_colour(&g).expect("grid is bipartite").0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let c8 = even_cycle(8).unwrap();
        assert_eq!((c8.left_size(), c8.right_size(), c8.edge_count()), (4, 4, 8));
        assert_eq!(even_cycle(4).unwrap(), complete_bipartite(2, 2));
        assert!(even_cycle(5).is_err());

        let t = theta(4, 4, 4).unwrap();
        assert_eq!(t.edge_count(), 12);
        assert_eq!(t.left_size() + t.right_size(), 11);
        assert!(theta(1, 2, 2).is_err());
        assert!(theta(1, 1, 3).is_err());

        let g = grid2x2();
        assert_eq!((g.left_size(), g.right_size(), g.edge_count()), (5, 4, 12));
    }

    #[test]
    fn grid_minus_centre_is_c8() {
        // centre vertex 4 is the third vertex of the first side (corners 0,2 precede it)
        let g = grid2x2();
        let centre = (0..5).find(|&v| g.left_neighbors(v).len() == 4).unwrap();
        let rest = g.remove_vertex(true, centre);
        assert_eq!(rest.edge_count(), 8);
        assert!((0..rest.left_size() as u32).all(|v| rest.left_neighbors(v).len() == 2));
        assert!((0..rest.right_size() as u32).all(|v| rest.right_neighbors(v).len() == 2));
    }
}
