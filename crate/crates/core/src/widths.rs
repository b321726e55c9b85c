//! Brute-force width oracles at desk scale: cutwidth, linear MIM-width and
//! the vertex isoperimetric peak.

use crate::graph::Graph;
use crate::rep::Ordering;
use crate::search::SearchError;

pub const WIDTH_PERMUTATION_LIMIT: usize = 8;
pub const ISOPERIMETRIC_LIMIT: usize = 16;

/// Edges crossing each prefix cut of a layout, maximized.
fn layout_cutwidth(g: &Graph, layout: &[usize]) -> usize {
    let n = g.n();
    let mut in_prefix = vec![false; n];
    let mut cut = 0usize;
    let mut worst = 0usize;
    for &v in &layout[..n.saturating_sub(1)] {
        let inside = g.neighbors(v).iter().filter(|&&u| in_prefix[u]).count();
        cut = cut + g.degree(v) - 2 * inside;
        in_prefix[v] = true;
        worst = worst.max(cut);
    }
    worst
}

/// Exact cutwidth by branch and bound over layouts.
pub fn cutwidth_bruteforce(g: &Graph) -> Result<usize, SearchError> {
    let n = g.n();
    if n > WIDTH_PERMUTATION_LIMIT {
        return Err(SearchError::TooLarge {
            n,
            limit: WIDTH_PERMUTATION_LIMIT,
        });
    }
    if n == 1 {
        return Ok(0);
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut best = layout_cutwidth(g, &identity);

    fn dfs(
        g: &Graph,
        placed: &mut Vec<usize>,
        in_prefix: &mut [bool],
        cut: usize,
        worst: usize,
        best: &mut usize,
    ) {
        let n = g.n();
        if worst >= *best {
            return;
        }
        if placed.len() == n {
            *best = worst;
            return;
        }
        for v in 0..n {
            if in_prefix[v] {
                continue;
            }
            let inside = g.neighbors(v).iter().filter(|&&u| in_prefix[u]).count();
            let next_cut = cut + g.degree(v) - 2 * inside;
            let next_worst = if placed.len() + 1 < n {
                worst.max(next_cut)
            } else {
                worst
            };
            placed.push(v);
            in_prefix[v] = true;
            dfs(g, placed, in_prefix, next_cut, next_worst, best);
            in_prefix[v] = false;
            placed.pop();
        }
    }
    dfs(
        g,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        0,
        0,
        &mut best,
    );
    Ok(best)
}

/// Maximum induced matching among the cut edges of a prefix: chosen edges
/// must not touch and no cut edge may join their opposite endpoints.
fn cut_induced_matching(g: &Graph, in_prefix: &[bool]) -> usize {
    let mut cut_edges = Vec::new();
    for u in 0..g.n() {
        if !in_prefix[u] {
            continue;
        }
        for &v in g.neighbors(u) {
            if !in_prefix[v] {
                cut_edges.push((u, v));
            }
        }
    }
    fn rec(g: &Graph, edges: &[(usize, usize)], idx: usize, chosen: &mut Vec<(usize, usize)>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if idx == edges.len() || chosen.len() + (edges.len() - idx) <= *best {
            return;
        }
        let (a, b) = edges[idx];
        let compatible = chosen.iter().all(|&(c, d)| {
            a != c && b != d && !g.has_edge(a, d) && !g.has_edge(c, b)
        });
        if compatible {
            chosen.push((a, b));
            rec(g, edges, idx + 1, chosen, best);
            chosen.pop();
        }
        rec(g, edges, idx + 1, chosen, best);
    }
    let mut best = 0;
    rec(g, &cut_edges, 0, &mut Vec::new(), &mut best);
    best
}

/// Maximum over all prefix cuts of the induced matching size, for a fixed
/// layout.
pub fn max_cut_induced_matching(g: &Graph, ord: &Ordering) -> usize {
    let n = g.n();
    let mut in_prefix = vec![false; n];
    let mut worst = 0;
    for p in 0..n.saturating_sub(1) {
        in_prefix[ord.vertex_at(p)] = true;
        worst = worst.max(cut_induced_matching(g, &in_prefix));
    }
    worst
}

/// Exact linear MIM-width by branch and bound over layouts.
pub fn lmimw_bruteforce(g: &Graph) -> Result<usize, SearchError> {
    let n = g.n();
    if n > WIDTH_PERMUTATION_LIMIT {
        return Err(SearchError::TooLarge {
            n,
            limit: WIDTH_PERMUTATION_LIMIT,
        });
    }
    if n == 1 {
        return Ok(0);
    }
    let mut best = max_cut_induced_matching(g, &Ordering::identity(n).expect("n >= 1"));

    fn dfs(g: &Graph, depth: usize, in_prefix: &mut [bool], worst: usize, best: &mut usize) {
        let n = g.n();
        if worst >= *best {
            return;
        }
        if depth == n {
            *best = worst;
            return;
        }
        for v in 0..n {
            if in_prefix[v] {
                continue;
            }
            in_prefix[v] = true;
            let next_worst = if depth + 1 < n {
                worst.max(cut_induced_matching(g, in_prefix))
            } else {
                worst
            };
            dfs(g, depth + 1, in_prefix, next_worst, best);
            in_prefix[v] = false;
        }
    }
    dfs(g, 0, &mut vec![false; n], 0, &mut best);
    Ok(best)
}

/// max over sizes s of min over |X| = s of |N(X)|, by subset enumeration.
pub fn isoperimetric_peak(g: &Graph) -> Result<usize, SearchError> {
    let n = g.n();
    if n > ISOPERIMETRIC_LIMIT {
        return Err(SearchError::TooLarge {
            n,
            limit: ISOPERIMETRIC_LIMIT,
        });
    }
    let masks: Vec<u32> = (0..n).map(|v| {
        g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u)
    }).collect();
    let mut min_boundary = vec![usize::MAX; n + 1];
    for subset in 1u32..(1 << n) {
        let size = subset.count_ones() as usize;
        let mut boundary = 0u32;
        let mut rest = subset;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            boundary |= masks[v];
        }
        boundary &= !subset;
        let b = boundary.count_ones() as usize;
        if b < min_boundary[size] {
            min_boundary[size] = b;
        }
    }
    Ok((1..=n).map(|s| min_boundary[s]).max().unwrap_or(0))
}

/// Maximum induced matching of the whole graph (pairwise disjoint edges
/// with no edge between them), by recursion over the edge list.
pub fn max_induced_matching(g: &Graph) -> usize {
    let edges = g.edges();
    fn rec(
        g: &Graph,
        edges: &[(usize, usize)],
        idx: usize,
        chosen: &mut Vec<(usize, usize)>,
        best: &mut usize,
    ) {
        *best = (*best).max(chosen.len());
        if idx == edges.len() || chosen.len() + (edges.len() - idx) <= *best {
            return;
        }
        let (a, b) = edges[idx];
        let compatible = chosen.iter().all(|&(c, d)| {
            a != c && a != d && b != c && b != d
                && !g.has_edge(a, c)
                && !g.has_edge(a, d)
                && !g.has_edge(b, c)
                && !g.has_edge(b, d)
        });
        if compatible {
            chosen.push((a, b));
            rec(g, edges, idx + 1, chosen, best);
            chosen.pop();
        }
        rec(g, edges, idx + 1, chosen, best);
    }
    let mut best = 0;
    rec(g, &edges, 0, &mut Vec::new(), &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutwidth_examples() {
        assert_eq!(cutwidth_bruteforce(&Graph::path(4).unwrap()).unwrap(), 1);
        assert_eq!(cutwidth_bruteforce(&Graph::complete(4).unwrap()).unwrap(), 4);
        assert_eq!(cutwidth_bruteforce(&Graph::cycle(4).unwrap()).unwrap(), 2);
    }

    #[test]
    fn lmimw_examples() {
        assert_eq!(lmimw_bruteforce(&Graph::cycle(4).unwrap()).unwrap(), 1);
        assert_eq!(lmimw_bruteforce(&Graph::complete(5).unwrap()).unwrap(), 1);
        let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(lmimw_bruteforce(&two_k2).unwrap(), 1);
    }

    #[test]
    fn isoperimetric_examples() {
        assert_eq!(isoperimetric_peak(&Graph::complete(4).unwrap()).unwrap(), 3);
        assert_eq!(isoperimetric_peak(&Graph::path(3).unwrap()).unwrap(), 1);
        assert_eq!(isoperimetric_peak(&Graph::edgeless(1).unwrap()).unwrap(), 0);
    }

    #[test]
    fn induced_matching_examples() {
        // a path on 6 vertices has two edges at distance two
        assert_eq!(max_induced_matching(&Graph::path(6).unwrap()), 2);
        assert_eq!(max_induced_matching(&Graph::complete(4).unwrap()), 1);
        let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(max_induced_matching(&two_k2), 2);
    }

    #[test]
    fn size_caps() {
        let g = Graph::edgeless(9).unwrap();
        assert!(cutwidth_bruteforce(&g).is_err());
        assert!(lmimw_bruteforce(&g).is_err());
        assert!(isoperimetric_peak(&Graph::edgeless(17).unwrap()).is_err());
    }
}
