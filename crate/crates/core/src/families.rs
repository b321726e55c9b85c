//! Graph operations that carry representations (union, join, Cartesian
//! product), generators for families with known thinness behavior, and the
//! interval-nesting route to proper thin representations.

use num_rational::Rational64;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::rep::{Mode, Ordering, Partition, RepError, ThinRepresentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("representations must share the same mode")]
    ModeMismatch,
    #[error("construction of size {requested} exceeds the cap {cap}")]
    SizeCap { requested: usize, cap: usize },
    #[error("parameter out of range: {0}")]
    BadParameter(&'static str),
    #[error("interval [{0}, {1}] has its left endpoint after its right one")]
    BadInterval(Rational64, Rational64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn merged_order(ord1: &Ordering, ord2: &Ordering, offset: usize) -> Ordering {
    let seq: Vec<usize> = ord1
        .sequence()
        .iter()
        .copied()
        .chain(ord2.sequence().iter().map(|&v| v + offset))
        .collect();
    Ordering::new(seq).expect("concatenation of two permutations")
}

/// Disjoint union; classes merge index-wise, so the result has
/// `max(k1, k2)` classes and keeps the common mode.
pub fn union_with_rep(
    g1: &Graph,
    rep1: &ThinRepresentation,
    g2: &Graph,
    rep2: &ThinRepresentation,
) -> Result<(Graph, ThinRepresentation), FamilyError> {
    if rep1.mode() != rep2.mode() {
        return Err(FamilyError::ModeMismatch);
    }
    let n1 = g1.n();
    let mut edges = g1.edges();
    edges.extend(g2.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
    let graph = Graph::new(n1 + g2.n(), &edges)?;
    let class_of: Vec<usize> = (0..graph.n())
        .map(|v| {
            if v < n1 {
                rep1.partition().class_of(v)
            } else {
                rep2.partition().class_of(v - n1)
            }
        })
        .collect();
    let rep = ThinRepresentation::new(
        &graph,
        merged_order(rep1.ordering(), rep2.ordering(), n1),
        Partition::new(class_of)?,
        rep1.mode(),
    )?;
    Ok((graph, rep))
}

/// Join (all edges between the two sides). Classes are the disjoint union
/// of both families, `k1 + k2` of them; when the second graph is complete
/// and the mode is weak, its vertices merge into the first class instead,
/// leaving `k1` classes.
pub fn join_with_rep(
    g1: &Graph,
    rep1: &ThinRepresentation,
    g2: &Graph,
    rep2: &ThinRepresentation,
) -> Result<(Graph, ThinRepresentation), FamilyError> {
    if rep1.mode() != rep2.mode() {
        return Err(FamilyError::ModeMismatch);
    }
    let (n1, n2) = (g1.n(), g2.n());
    let mut edges = g1.edges();
    edges.extend(g2.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
    for u in 0..n1 {
        for v in 0..n2 {
            edges.push((u, v + n1));
        }
    }
    let graph = Graph::new(n1 + n2, &edges)?;
    let merge_complete = rep1.mode() == Mode::Weak && g2.is_complete();
    let class_of: Vec<usize> = (0..graph.n())
        .map(|v| {
            if v < n1 {
                rep1.partition().class_of(v)
            } else if merge_complete {
                0
            } else {
                rep1.num_classes() + rep2.partition().class_of(v - n1)
            }
        })
        .collect();
    let rep = ThinRepresentation::new(
        &graph,
        merged_order(rep1.ordering(), rep2.ordering(), n1),
        Partition::new(class_of)?,
        rep1.mode(),
    )?;
    Ok((graph, rep))
}

/// Cartesian product ordered lexicographically by (position in rep1's
/// ordering, vertex id in g2); each (class of g1, vertex of g2) pair is a
/// class, `k1 * |V(g2)|` in total. The mode of `rep1` carries over.
pub fn cartesian_product_with_rep(
    g1: &Graph,
    rep1: &ThinRepresentation,
    g2: &Graph,
    cap: usize,
) -> Result<(Graph, ThinRepresentation), FamilyError> {
    let (n1, n2) = (g1.n(), g2.n());
    let n = n1 * n2;
    if n > cap {
        return Err(FamilyError::SizeCap { requested: n, cap });
    }
    let id = |v: usize, w: usize| v * n2 + w;
    let mut edges = Vec::new();
    for v in 0..n1 {
        for (w1, w2) in g2.edges() {
            edges.push((id(v, w1), id(v, w2)));
        }
    }
    for w in 0..n2 {
        for (v1, v2) in g1.edges() {
            edges.push((id(v1, w), id(v2, w)));
        }
    }
    let graph = Graph::new(n, &edges)?;
    let mut seq = Vec::with_capacity(n);
    for p in 0..n1 {
        let v = rep1.ordering().vertex_at(p);
        for w in 0..n2 {
            seq.push(id(v, w));
        }
    }
    let class_of: Vec<usize> = (0..n)
        .map(|x| rep1.partition().class_of(x / n2) * n2 + x % n2)
        .collect();
    let rep = ThinRepresentation::new(
        &graph,
        Ordering::new(seq)?,
        Partition::new(class_of)?,
        rep1.mode(),
    )?;
    Ok((graph, rep))
}

/// Complement of t disjoint edges on 2t vertices; vertex 2i is matched with
/// 2i+1 in the underlying matching.
pub fn gen_complement_matching(t: usize) -> Result<Graph, FamilyError> {
    if t == 0 {
        return Err(FamilyError::BadParameter("t must be at least 1"));
    }
    let edges: Vec<_> = (0..t).map(|i| (2 * i, 2 * i + 1)).collect();
    Ok(Graph::new(2 * t, &edges)?.complement())
}

/// Complete ternary tree of height h with every vertex joined to all its
/// ancestors, plus the strong representation given by tree height classes
/// and a postorder.
pub fn gen_claw_h(h: usize) -> Result<(Graph, ThinRepresentation), FamilyError> {
    if h == 0 || h > 7 {
        return Err(FamilyError::BadParameter("height must be in 1..=7"));
    }
    let n = (3usize.pow(h as u32 + 1) - 1) / 2;
    let mut edges = Vec::new();
    let mut depth_of = vec![0usize; n];
    let mut postorder = Vec::with_capacity(n);
    let mut counter = 0usize;

    fn grow(
        depth: usize,
        h: usize,
        counter: &mut usize,
        ancestors: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        depth_of: &mut [usize],
        postorder: &mut Vec<usize>,
    ) {
        let id = *counter;
        *counter += 1;
        depth_of[id] = depth;
        for &a in ancestors.iter() {
            edges.push((a, id));
        }
        if depth < h {
            ancestors.push(id);
            for _ in 0..3 {
                grow(depth + 1, h, counter, ancestors, edges, depth_of, postorder);
            }
            ancestors.pop();
        }
        postorder.push(id);
    }
    grow(
        0,
        h,
        &mut counter,
        &mut Vec::new(),
        &mut edges,
        &mut depth_of,
        &mut postorder,
    );
    let graph = Graph::new(n, &edges)?;
    let rep = ThinRepresentation::new(
        &graph,
        Ordering::new(postorder)?,
        Partition::new(depth_of)?,
        Mode::Strong,
    )?;
    Ok((graph, rep))
}

/// The 3k+1-vertex graph on A ∪ B ∪ W with W a clique, two paths hanging
/// off it, and a_i, b_i joined to the clique tail; ships its strong
/// three-class representation (order a_1..a_k, b_1..b_k, v_1..v_{k+1}).
pub fn gen_gk(k: usize) -> Result<(Graph, ThinRepresentation), FamilyError> {
    if k == 0 {
        return Err(FamilyError::BadParameter("k must be at least 1"));
    }
    let n = 3 * k + 1;
    let a = |i: usize| i - 1; // a_i, 1-based
    let b = |i: usize| k + i - 1;
    let w = |j: usize| 2 * k + j - 1; // v_j, 1-based, j in 1..=k+1
    let mut edges = Vec::new();
    for j1 in 1..=k + 1 {
        for j2 in j1 + 1..=k + 1 {
            edges.push((w(j1), w(j2)));
        }
    }
    // a_i and b_i see the i outermost clique vertices; v_{k+1} stays inside,
    // adjacent to neither tail
    for i in 1..=k {
        if i > 1 {
            edges.push((a(i), a(i - 1)));
            edges.push((b(i), b(i - 1)));
        }
        for j in 1..=i {
            edges.push((a(i), w(j)));
            edges.push((b(i), w(j)));
        }
    }
    let graph = Graph::new(n, &edges)?;
    let class_of: Vec<usize> = (0..n)
        .map(|v| if v < k { 0 } else if v < 2 * k { 1 } else { 2 })
        .collect();
    let rep = ThinRepresentation::new(
        &graph,
        Ordering::identity(n)?,
        Partition::new(class_of)?,
        Mode::Strong,
    )?;
    Ok((graph, rep))
}

/// The r x r grid.
pub fn gen_grid(r: usize) -> Result<Graph, FamilyError> {
    if r == 0 {
        return Err(FamilyError::BadParameter("grid side must be at least 1"));
    }
    let id = |i: usize, j: usize| i * r + j;
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i + 1 < r {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < r {
                edges.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    Ok(Graph::new(r * r, &edges)?)
}

/// Complete m-ary tree of height h (h = 0 is a single vertex).
pub fn gen_mary_tree(m: usize, h: usize) -> Result<Graph, FamilyError> {
    if m == 0 {
        return Err(FamilyError::BadParameter("arity must be at least 1"));
    }
    let mut n = 1usize;
    let mut level = 1usize;
    for _ in 0..h {
        level = level
            .checked_mul(m)
            .ok_or(FamilyError::BadParameter("tree too large"))?;
        n = n
            .checked_add(level)
            .ok_or(FamilyError::BadParameter("tree too large"))?;
    }
    if n > 100_000 {
        return Err(FamilyError::SizeCap {
            requested: n,
            cap: 100_000,
        });
    }
    let mut edges = Vec::new();
    let mut counter = 0usize;
    fn grow(
        depth: usize,
        h: usize,
        m: usize,
        counter: &mut usize,
        parent: Option<usize>,
        edges: &mut Vec<(usize, usize)>,
    ) {
        let id = *counter;
        *counter += 1;
        if let Some(p) = parent {
            edges.push((p, id));
        }
        if depth < h {
            for _ in 0..m {
                grow(depth + 1, h, m, counter, Some(id), edges);
            }
        }
    }
    grow(0, h, m, &mut counter, None, &mut edges);
    Ok(Graph::new(n, &edges)?)
}

/// Closed intervals with rational endpoints, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    intervals: Vec<(Rational64, Rational64)>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<(Rational64, Rational64)>) -> Result<Self, FamilyError> {
        if intervals.is_empty() {
            return Err(FamilyError::BadParameter("model needs an interval"));
        }
        for &(l, r) in &intervals {
            if l > r {
                return Err(FamilyError::BadInterval(l, r));
            }
        }
        Ok(IntervalModel { intervals })
    }

    pub fn from_integers(intervals: &[(i64, i64)]) -> Result<Self, FamilyError> {
        IntervalModel::new(
            intervals
                .iter()
                .map(|&(l, r)| (Rational64::from_integer(l), Rational64::from_integer(r)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Two vertices are adjacent iff their closed intervals meet.
    pub fn intersection_graph(&self) -> Graph {
        let n = self.intervals.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let (lu, ru) = self.intervals[u];
                let (lv, rv) = self.intervals[v];
                if lu <= rv && lv <= ru {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("intersection graph is simple")
    }

    /// Distinct integer endpoints by stable perturbation: endpoints sort by
    /// value, left ends before right ends on ties (so touching intervals
    /// keep intersecting), vertex id last.
    pub fn canonical_ranks(&self) -> Vec<(usize, usize)> {
        let n = self.intervals.len();
        let mut events: Vec<(Rational64, u8, usize)> = Vec::with_capacity(2 * n);
        for (v, &(l, r)) in self.intervals.iter().enumerate() {
            events.push((l, 0, v));
            events.push((r, 1, v));
        }
        events.sort();
        let mut ranks = vec![(0usize, 0usize); n];
        for (rank, &(_, kind, v)) in events.iter().enumerate() {
            if kind == 0 {
                ranks[v].0 = rank;
            } else {
                ranks[v].1 = rank;
            }
        }
        ranks
    }
}

/// Builds the strong representation from nesting depth: vertices are
/// ordered by right endpoint and classed by the length of the longest chain
/// of intervals strictly containing them. The class count equals the
/// model's maximum nesting chain length.
pub fn interval_to_proper_thin(
    model: &IntervalModel,
) -> Result<(Graph, ThinRepresentation), FamilyError> {
    let n = model.len();
    let ranks = model.canonical_ranks();
    let graph = model.intersection_graph();
    debug_assert_eq!(
        graph,
        // the perturbation must not change the intersection graph
        {
            let as_ints: Vec<(i64, i64)> =
                ranks.iter().map(|&(l, r)| (l as i64, r as i64)).collect();
            IntervalModel::from_integers(&as_ints)
                .expect("ranks are ordered")
                .intersection_graph()
        }
    );

    // longest chain of strict containers, outermost label 1
    let mut by_span: Vec<usize> = (0..n).collect();
    by_span.sort_by_key(|&v| std::cmp::Reverse(ranks[v].1 - ranks[v].0));
    let mut label = vec![0usize; n];
    for &v in &by_span {
        let mut best = 0;
        for u in 0..n {
            let contains = ranks[u].0 < ranks[v].0 && ranks[v].1 < ranks[u].1;
            if contains {
                best = best.max(label[u]);
            }
        }
        label[v] = best + 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| ranks[v].1);
    let class_of: Vec<usize> = label.iter().map(|&c| c - 1).collect();
    let rep = ThinRepresentation::new(
        &graph,
        Ordering::new(order)?,
        Partition::new(class_of)?,
        Mode::Strong,
    )?;
    Ok((graph, rep))
}

/// Interval model of the claw-with-ancestors tree: every node's interval
/// strictly contains its subtree, sibling subtrees are disjoint.
pub fn claw_interval_model(h: usize) -> Result<IntervalModel, FamilyError> {
    if h == 0 || h > 7 {
        return Err(FamilyError::BadParameter("height must be in 1..=7"));
    }
    let n = (3usize.pow(h as u32 + 1) - 1) / 2;
    let mut intervals = vec![(0i64, 0i64); n];
    let mut id_counter = 0usize;
    let mut coord = 0i64;
    fn grow(
        depth: usize,
        h: usize,
        id_counter: &mut usize,
        coord: &mut i64,
        intervals: &mut [(i64, i64)],
    ) {
        let id = *id_counter;
        *id_counter += 1;
        let left = *coord;
        *coord += 1;
        if depth < h {
            for _ in 0..3 {
                grow(depth + 1, h, id_counter, coord, intervals);
            }
        }
        let right = *coord;
        *coord += 1;
        intervals[id] = (left, right);
    }
    grow(0, h, &mut id_counter, &mut coord, &mut intervals);
    IntervalModel::from_integers(&intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{is_consistent, is_strongly_consistent};
    use crate::search::{proper_thinness_exact, thinness_exact, thinness_exact_with_limit};

    fn weak_rep(g: &Graph) -> ThinRepresentation {
        thinness_exact(g).unwrap().1
    }

    #[test]
    fn union_merges_classes_indexwise() {
        let k3 = Graph::complete(3).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let (g, rep) = union_with_rep(&k3, &weak_rep(&k3), &c4, &weak_rep(&c4)).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(rep.num_classes(), 2);
        assert!(is_consistent(&g, rep.ordering(), rep.partition()).unwrap());
        // adding an isolated vertex leaves the class count alone
        let k1 = Graph::edgeless(1).unwrap();
        let (g2, rep2) = union_with_rep(&c4, &weak_rep(&c4), &k1, &weak_rep(&k1)).unwrap();
        assert_eq!(g2.n(), 5);
        assert_eq!(rep2.num_classes(), 2);
    }

    #[test]
    fn join_of_two_c4_has_four_classes_and_thinness_four() {
        let c4 = Graph::cycle(4).unwrap();
        let rep = weak_rep(&c4);
        let (g, jrep) = join_with_rep(&c4, &rep, &c4, &rep).unwrap();
        assert_eq!(jrep.num_classes(), 4);
        assert!(is_consistent(&g, jrep.ordering(), jrep.partition()).unwrap());
        // the join of the two matching complements is the complement of the
        // size-4 matching, with thinness exactly 4
        assert_eq!(thinness_exact_with_limit(&g, 8).unwrap().0, 4);
    }

    #[test]
    fn join_with_complete_side_keeps_class_count() {
        let c4 = Graph::cycle(4).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let (g, rep) = join_with_rep(&c4, &weak_rep(&c4), &k3, &weak_rep(&k3)).unwrap();
        assert_eq!(rep.num_classes(), 2);
        assert!(is_consistent(&g, rep.ordering(), rep.partition()).unwrap());
        // K1 join K1 = K2 through the complete-side merge
        let k1 = Graph::edgeless(1).unwrap();
        let (k2, rep2) = join_with_rep(&k1, &weak_rep(&k1), &k1, &weak_rep(&k1)).unwrap();
        assert!(k2.is_complete());
        assert_eq!(rep2.num_classes(), 1);
    }

    #[test]
    fn cartesian_product_rep_is_consistent() {
        let p3 = Graph::path(3).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let rep = proper_thinness_exact(&p3).unwrap().1;
        let (g, prep) = cartesian_product_with_rep(&p3, &rep, &k2, 4096).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(prep.num_classes(), rep.num_classes() * 2);
        assert!(is_strongly_consistent(&g, prep.ordering(), prep.partition()).unwrap());

        let c4 = Graph::cycle(4).unwrap();
        let c4rep = weak_rep(&c4);
        let (gc, crep) = cartesian_product_with_rep(&c4, &c4rep, &k2, 4096).unwrap();
        assert_eq!(crep.num_classes(), 4);
        assert!(is_consistent(&gc, crep.ordering(), crep.partition()).unwrap());

        // K1 x g2 is g2 itself with one class per copy layer
        let k1 = Graph::edgeless(1).unwrap();
        let (gk, krep) = cartesian_product_with_rep(&k1, &weak_rep(&k1), &c4, 4096).unwrap();
        assert_eq!(gk.n(), 4);
        assert_eq!(krep.num_classes(), 4);
    }

    #[test]
    fn complement_matching_family() {
        let g1 = gen_complement_matching(1).unwrap();
        assert_eq!((g1.n(), g1.m()), (2, 0));
        assert_eq!(thinness_exact(&g1).unwrap().0, 1);
        let g2 = gen_complement_matching(2).unwrap();
        assert_eq!((g2.n(), g2.m()), (4, 4));
        assert!(g2.has_edge(0, 2) && g2.has_edge(2, 1) && g2.has_edge(1, 3) && g2.has_edge(3, 0));
        let g3 = gen_complement_matching(3).unwrap();
        assert_eq!(thinness_exact(&g3).unwrap().0, 3);
    }

    #[test]
    fn claw_h_generator() {
        let (claw, rep) = gen_claw_h(1).unwrap();
        assert_eq!(claw.n(), 4);
        assert_eq!(rep.num_classes(), 2);
        assert_eq!(proper_thinness_exact(&claw).unwrap().0, 2);
        let (g2, rep2) = gen_claw_h(2).unwrap();
        assert_eq!(g2.n(), 13);
        assert_eq!(rep2.num_classes(), 3);
        assert!(is_strongly_consistent(&g2, rep2.ordering(), rep2.partition()).unwrap());
    }

    #[test]
    fn gk_generator() {
        let (g1, rep1) = gen_gk(1).unwrap();
        // the claw again, this time with three classes
        assert_eq!(g1.n(), 4);
        assert_eq!(g1.m(), 3);
        assert_eq!(rep1.num_classes(), 3);
        for k in 2..=4 {
            let (g, rep) = gen_gk(k).unwrap();
            assert_eq!(g.n(), 3 * k + 1);
            assert_eq!(rep.num_classes(), 3);
            assert!(is_strongly_consistent(&g, rep.ordering(), rep.partition()).unwrap());
        }
    }

    #[test]
    fn grid_and_tree_generators() {
        let g2 = gen_grid(2).unwrap();
        assert_eq!((g2.n(), g2.m()), (4, 4));
        assert_eq!(thinness_exact(&g2).unwrap().0, 2); // the 4-cycle
        let g3 = gen_grid(3).unwrap();
        assert_eq!((g3.n(), g3.m()), (9, 12));
        let t = gen_mary_tree(2, 2).unwrap();
        assert_eq!((t.n(), t.m()), (7, 6));
    }

    #[test]
    fn interval_nesting_labels() {
        // proper interval model of a path: one class
        let model = IntervalModel::from_integers(&[(0, 2), (1, 4), (3, 6), (5, 8)]).unwrap();
        let (g, rep) = interval_to_proper_thin(&model).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(rep.num_classes(), 1);

        // one interval inside another plus a disjoint third: two classes
        let nested = IntervalModel::from_integers(&[(0, 10), (2, 3), (20, 21)]).unwrap();
        let (_, nrep) = interval_to_proper_thin(&nested).unwrap();
        assert_eq!(nrep.num_classes(), 2);

        // the claw tower of height 3 nests four deep
        let claw3 = claw_interval_model(3).unwrap();
        let (cg, crep) = interval_to_proper_thin(&claw3).unwrap();
        assert_eq!(cg.n(), 40);
        assert_eq!(crep.num_classes(), 4);
        let (expected, _) = gen_claw_h(3).unwrap();
        assert_eq!(cg.m(), expected.m());
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let p3 = Graph::path(3).unwrap();
        let weak = thinness_exact(&p3).unwrap().1;
        let strong = proper_thinness_exact(&p3).unwrap().1;
        assert_eq!(
            union_with_rep(&p3, &weak, &p3, &strong).unwrap_err(),
            FamilyError::ModeMismatch
        );
    }

    #[test]
    fn touching_intervals_intersect_after_perturbation() {
        let model = IntervalModel::from_integers(&[(0, 5), (5, 9)]).unwrap();
        assert_eq!(model.intersection_graph().m(), 1);
        let (g, _) = interval_to_proper_thin(&model).unwrap();
        assert_eq!(g.m(), 1);
    }
}
