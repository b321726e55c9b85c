//! Incompatibility graphs for a fixed vertex ordering, and the minimum
//! consistent partition computed through them.
//!
//! For an ordering `<` of `V(G)`, two vertices `v < w` are incompatible when
//! they cannot share a class of a partition consistent with `<`. The
//! incompatibility graph has exactly those edges; its proper colorings are
//! exactly the consistent partitions. Its complement is transitively
//! oriented by `<`, so an optimum coloring is a minimum chain partition of
//! that order, found by maximum bipartite matching.

use crate::graph::Graph;
use crate::rep::{Ordering, Partition, RepError};

/// The auxiliary graph whose colorings are the (strongly) consistent
/// partitions for `source_order`.
#[derive(Debug, Clone)]
pub struct IncompatibilityGraph {
    graph: Graph,
    source_order: Ordering,
    strong: bool,
}

impl IncompatibilityGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn source_order(&self) -> &Ordering {
        &self.source_order
    }

    pub fn strong(&self) -> bool {
        self.strong
    }

    /// Checks that the source order transitively orients the complement:
    /// no positional triple r < s < t with rs, st non-edges and rt an edge.
    pub fn complement_transitively_ordered(&self) -> bool {
        let n = self.graph.n();
        for r in 0..n {
            for s in r + 1..n {
                for t in s + 1..n {
                    let (vr, vs, vt) = (
                        self.source_order.vertex_at(r),
                        self.source_order.vertex_at(s),
                        self.source_order.vertex_at(t),
                    );
                    if !self.graph.has_edge(vr, vs)
                        && !self.graph.has_edge(vs, vt)
                        && self.graph.has_edge(vr, vt)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Builds the incompatibility graph for `ord`.
///
/// For positions v < w the weak rule adds an edge when some z > w has
/// `zv` an edge and `zw` a non-edge; the strong rule also adds an edge when
/// some x < v has `xw` an edge and `xv` a non-edge.
pub fn incompatibility_graph(
    g: &Graph,
    ord: &Ordering,
    strong: bool,
) -> Result<IncompatibilityGraph, RepError> {
    if ord.len() != g.n() {
        return Err(RepError::DimensionMismatch {
            got: ord.len(),
            expected: g.n(),
        });
    }
    let n = g.n();
    let mut edges = Vec::new();
    for vp in 0..n {
        for wp in vp + 1..n {
            let v = ord.vertex_at(vp);
            let w = ord.vertex_at(wp);
            let mut incompatible = (wp + 1..n).any(|zp| {
                let z = ord.vertex_at(zp);
                g.has_edge(z, v) && !g.has_edge(z, w)
            });
            if strong && !incompatible {
                incompatible = (0..vp).any(|xp| {
                    let x = ord.vertex_at(xp);
                    g.has_edge(x, w) && !g.has_edge(x, v)
                });
            }
            if incompatible {
                edges.push((v, w));
            }
        }
    }
    Ok(IncompatibilityGraph {
        graph: Graph::new(n, &edges).expect("incompatibility graph on same vertex set"),
        source_order: ord.clone(),
        strong,
    })
}

/// Maximum bipartite matching by augmenting paths (Kuhn). `adj[u]` lists the
/// right-side vertices reachable from left vertex `u`. Returns `match_left`
/// where `match_left[u]` is the right partner of `u`, if any.
fn maximum_bipartite_matching(adj: &[Vec<usize>], right_size: usize) -> Vec<Option<usize>> {
    let left_size = adj.len();
    let mut match_right: Vec<Option<usize>> = vec![None; right_size];
    let mut match_left: Vec<Option<usize>> = vec![None; left_size];

    fn try_augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
        match_left: &mut [Option<usize>],
    ) -> bool {
        for &w in &adj[u] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if match_right[w].is_none()
                || try_augment(match_right[w].unwrap(), adj, seen, match_right, match_left)
            {
                match_right[w] = Some(u);
                match_left[u] = Some(w);
                return true;
            }
        }
        false
    }

    for u in 0..left_size {
        let mut seen = vec![false; right_size];
        try_augment(u, adj, &mut seen, &mut match_right, &mut match_left);
    }
    match_left
}

/// Minimum partition (strongly) consistent with `ord`: an optimum coloring
/// of the incompatibility graph, computed as a minimum chain partition of
/// the order `u < w, uw not incompatible` via maximum matching
/// (chain count = n - matching size). Class ids are relabeled by first
/// appearance along `ord` so ties resolve deterministically.
pub fn min_consistent_partition(
    g: &Graph,
    ord: &Ordering,
    strong: bool,
) -> Result<Partition, RepError> {
    let inc = incompatibility_graph(g, ord, strong)?;
    min_partition_from_incompatibility(&inc)
}

pub fn min_partition_from_incompatibility(
    inc: &IncompatibilityGraph,
) -> Result<Partition, RepError> {
    let n = inc.graph.n();
    let ord = &inc.source_order;
    debug_assert!(inc.complement_transitively_ordered());

    // chain order on positions: p -> q allowed when p < q and compatible
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            (p + 1..n)
                .filter(|&q| !inc.graph.has_edge(ord.vertex_at(p), ord.vertex_at(q)))
                .collect()
        })
        .collect();
    let match_left = maximum_bipartite_matching(&adj, n);

    // walk chains from their heads (positions that are nobody's successor)
    let mut is_successor = vec![false; n];
    for succ in match_left.iter().flatten() {
        is_successor[*succ] = true;
    }
    let mut class_of = vec![usize::MAX; n];
    let mut next_class = 0;
    for head in 0..n {
        if is_successor[head] {
            continue;
        }
        let mut p = head;
        loop {
            class_of[ord.vertex_at(p)] = next_class;
            match match_left[p] {
                Some(q) => p = q,
                None => break,
            }
        }
        next_class += 1;
    }
    debug_assert!(class_of.iter().all(|&c| c != usize::MAX));

    // relabel by first appearance along the order
    let mut remap = vec![usize::MAX; next_class];
    let mut fresh = 0;
    for p in 0..n {
        let c = class_of[ord.vertex_at(p)];
        if remap[c] == usize::MAX {
            remap[c] = fresh;
            fresh += 1;
        }
    }
    let relabeled: Vec<usize> = class_of.iter().map(|&c| remap[c]).collect();
    Partition::new(relabeled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{is_consistent, is_strongly_consistent};
    use itertools::Itertools;

    fn c4() -> Graph {
        Graph::cycle(4).unwrap()
    }

    #[test]
    fn c4_weak_incompatibility_is_single_edge() {
        let ord = Ordering::identity(4).unwrap();
        let inc = incompatibility_graph(&c4(), &ord, false).unwrap();
        assert_eq!(inc.graph().edges(), vec![(0, 1)]);
    }

    #[test]
    fn complete_graph_has_empty_incompatibility() {
        let g = Graph::complete(5).unwrap();
        let ord = Ordering::new(vec![2, 0, 4, 1, 3]).unwrap();
        for strong in [false, true] {
            let inc = incompatibility_graph(&g, &ord, strong).unwrap();
            assert_eq!(inc.graph().m(), 0);
        }
    }

    #[test]
    fn strong_edges_contain_weak_edges() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(1..=8usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let mut seq: Vec<usize> = (0..n).collect();
            seq.shuffle(&mut rng);
            let ord = Ordering::new(seq).unwrap();
            let weak = incompatibility_graph(&g, &ord, false).unwrap();
            let strong = incompatibility_graph(&g, &ord, true).unwrap();
            for (u, v) in weak.graph().edges() {
                assert!(strong.graph().has_edge(u, v));
            }
            assert!(weak.complement_transitively_ordered());
            assert!(strong.complement_transitively_ordered());
        }
    }

    #[test]
    fn c4_minimum_partition_has_two_classes() {
        let ord = Ordering::identity(4).unwrap();
        let part = min_consistent_partition(&c4(), &ord, false).unwrap();
        assert_eq!(part.num_classes(), 2);
        assert!(is_consistent(&c4(), &ord, &part).unwrap());
        let strong_part = min_consistent_partition(&c4(), &ord, true).unwrap();
        assert_eq!(strong_part.num_classes(), 2);
        assert!(is_strongly_consistent(&c4(), &ord, &strong_part).unwrap());
    }

    #[test]
    fn interval_right_end_order_needs_one_class() {
        // right-end order of an interval graph: neighbors below any vertex
        // form a contiguous run ending just before it
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let ord = Ordering::identity(5).unwrap();
        let part = min_consistent_partition(&g, &ord, false).unwrap();
        assert_eq!(part.num_classes(), 1);
        // a path in natural order is proper interval: strong also one class
        let p = Graph::path(5).unwrap();
        let strong = min_consistent_partition(&p, &Ordering::identity(5).unwrap(), true).unwrap();
        assert_eq!(strong.num_classes(), 1);
    }

    /// Brute-force minimum over all set partitions, used to pin the matching
    /// route on small instances.
    pub(crate) fn min_partition_bruteforce(
        g: &Graph,
        ord: &Ordering,
        strong: bool,
    ) -> usize {
        let n = g.n();
        let mut best = n;
        // enumerate set partitions by restricted growth strings
        let mut rgs = vec![0usize; n];
        loop {
            let part = Partition::new(rgs.clone()).unwrap();
            let ok = if strong {
                is_strongly_consistent(g, ord, &part).unwrap()
            } else {
                is_consistent(g, ord, &part).unwrap()
            };
            if ok {
                best = best.min(part.num_classes());
            }
            // next restricted growth string
            let mut i = n;
            loop {
                if i == 1 {
                    return best;
                }
                i -= 1;
                let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
                if rgs[i] <= max_prefix {
                    rgs[i] += 1;
                    for x in rgs.iter_mut().skip(i + 1) {
                        *x = 0;
                    }
                    break;
                }
                rgs[i] = 0;
            }
        }
    }

    #[test]
    fn matching_route_matches_bruteforce_on_small_graphs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.random_range(1..=6usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let mut seq: Vec<usize> = (0..n).collect();
            seq.shuffle(&mut rng);
            let ord = Ordering::new(seq).unwrap();
            for strong in [false, true] {
                let got = min_consistent_partition(&g, &ord, strong).unwrap();
                let expect = min_partition_bruteforce(&g, &ord, strong);
                assert_eq!(got.num_classes(), expect);
            }
        }
    }

    #[test]
    fn deterministic_labels_follow_order() {
        let ord = Ordering::identity(4).unwrap();
        let part = min_consistent_partition(&c4(), &ord, false).unwrap();
        // first vertex must sit in class 0 by the relabeling rule
        assert_eq!(part.class_of(0), 0);
        let again = min_consistent_partition(&c4(), &ord, false).unwrap();
        assert_eq!(part, again);
    }

    #[test]
    fn all_orders_of_claw_need_two_classes_weak_or_one() {
        // sanity: minimum over orders of the claw is 1 (claw is interval)
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let best = (0..4)
            .permutations(4)
            .map(|p| {
                let ord = Ordering::new(p).unwrap();
                min_consistent_partition(&g, &ord, false)
                    .unwrap()
                    .num_classes()
            })
            .min()
            .unwrap();
        assert_eq!(best, 1);
    }
}
