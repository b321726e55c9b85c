//! Vertex orderings, partitions, and the two consistency predicates.
//!
//! An ordering and a partition are *consistent* when no positional triple
//! r < s < t has `v_r`, `v_s` in one class with `v_t` adjacent to `v_r` but
//! not to `v_s`. They are *strongly consistent* when the ordering and its
//! reverse are both consistent with the partition.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("sequence of length {got} is not a permutation of 0..{expected}")]
    NotAPermutation { got: usize, expected: usize },
    #[error("class assignment has {got} entries, graph has {expected} vertices")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("class ids must be contiguous from 0; class {0} is empty")]
    EmptyClass(usize),
    #[error("partition must cover at least one vertex")]
    EmptyPartition,
    #[error("ordering and partition are not consistent with the graph")]
    NotConsistent,
    #[error("ordering and partition are not strongly consistent with the graph")]
    NotStronglyConsistent,
}

/// A permutation of the vertices together with its inverse (position index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl Ordering {
    pub fn new(seq: Vec<usize>) -> Result<Self, RepError> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(RepError::NotAPermutation {
                    got: n,
                    expected: n,
                });
            }
            pos[v] = i;
        }
        if n == 0 {
            return Err(RepError::NotAPermutation { got: 0, expected: 0 });
        }
        Ok(Ordering { seq, pos })
    }

    pub fn identity(n: usize) -> Result<Self, RepError> {
        Ordering::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Vertex at position `i` (0-based).
    pub fn vertex_at(&self, i: usize) -> usize {
        self.seq[i]
    }

    /// Position of vertex `v` in the ordering.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn reversed(&self) -> Ordering {
        let seq: Vec<usize> = self.seq.iter().rev().copied().collect();
        Ordering::new(seq).expect("reverse of a permutation is a permutation")
    }
}

/// A partition of the vertices into classes `0..k`, every class nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(class_of: Vec<usize>) -> Result<Self, RepError> {
        if class_of.is_empty() {
            return Err(RepError::EmptyPartition);
        }
        let k = class_of.iter().copied().max().unwrap() + 1;
        let mut used = vec![false; k];
        for &c in &class_of {
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|&u| !u) {
            return Err(RepError::EmptyClass(c));
        }
        Ok(Partition { class_of, k })
    }

    pub fn one_class(n: usize) -> Result<Self, RepError> {
        Partition::new(vec![0; n])
    }

    pub fn singletons(n: usize) -> Result<Self, RepError> {
        Partition::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.class_of
    }

    /// Members of every class, each listed in vertex-id order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Weak consistency checks one direction of the ordering; strong checks both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Weak,
    Strong,
}

fn check_dims(g: &Graph, ord: &Ordering, part: &Partition) -> Result<(), RepError> {
    if ord.len() != g.n() {
        return Err(RepError::DimensionMismatch {
            got: ord.len(),
            expected: g.n(),
        });
    }
    if part.len() != g.n() {
        return Err(RepError::DimensionMismatch {
            got: part.len(),
            expected: g.n(),
        });
    }
    Ok(())
}

/// True iff no triple r < s < t (positions) has `v_r`, `v_s` in the same
/// class, `v_t v_r` an edge and `v_t v_s` a non-edge.
///
/// Scans, for every vertex `t` and class, the class members below `t` in
/// position order; a neighbor followed by a non-neighbor is a violation.
pub fn is_consistent(g: &Graph, ord: &Ordering, part: &Partition) -> Result<bool, RepError> {
    check_dims(g, ord, part)?;
    let n = g.n();
    // positions of every class's members, ascending
    let mut class_positions = vec![Vec::new(); part.num_classes()];
    for p in 0..n {
        class_positions[part.class_of(ord.vertex_at(p))].push(p);
    }
    for tp in 0..n {
        let t = ord.vertex_at(tp);
        for positions in &class_positions {
            let mut seen_neighbor = false;
            for &p in positions {
                if p >= tp {
                    break;
                }
                if g.has_edge(t, ord.vertex_at(p)) {
                    seen_neighbor = true;
                } else if seen_neighbor {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// True iff the ordering and its reverse are both consistent with the partition.
pub fn is_strongly_consistent(
    g: &Graph,
    ord: &Ordering,
    part: &Partition,
) -> Result<bool, RepError> {
    Ok(is_consistent(g, ord, part)? && is_consistent(g, &ord.reversed(), part)?)
}

/// A validated (ordering, partition, mode) triple for a specific graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinRepresentation {
    ordering: Ordering,
    partition: Partition,
    mode: Mode,
}

impl ThinRepresentation {
    /// Validates the pair against `g` under the requested mode.
    pub fn new(
        g: &Graph,
        ordering: Ordering,
        partition: Partition,
        mode: Mode,
    ) -> Result<Self, RepError> {
        let ok = match mode {
            Mode::Weak => is_consistent(g, &ordering, &partition)?,
            Mode::Strong => is_strongly_consistent(g, &ordering, &partition)?,
        };
        if !ok {
            return Err(match mode {
                Mode::Weak => RepError::NotConsistent,
                Mode::Strong => RepError::NotStronglyConsistent,
            });
        }
        Ok(ThinRepresentation {
            ordering,
            partition,
            mode,
        })
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    /// Re-checks the representation against a graph (it may have been built
    /// for a different one).
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        match self.mode {
            Mode::Weak => is_consistent(g, &self.ordering, &self.partition).unwrap_or(false),
            Mode::Strong => {
                is_strongly_consistent(g, &self.ordering, &self.partition).unwrap_or(false)
            }
        }
    }
}

/// Checks the prefix-neighborhood monotonicity that strong consistency
/// provides: for same-class vertices `v_s < v_r` (positions), every neighbor
/// of `v_r` at position <= s is also in `N[v_s]`.
pub fn monotone_neighborhoods_ok(g: &Graph, ord: &Ordering, part: &Partition) -> bool {
    let n = g.n();
    for sp in 0..n {
        let vs = ord.vertex_at(sp);
        for rp in sp + 1..n {
            let vr = ord.vertex_at(rp);
            if part.class_of(vs) != part.class_of(vr) {
                continue;
            }
            for ap in 0..=sp {
                let va = ord.vertex_at(ap);
                let in_closed_r = va == vr || g.has_edge(va, vr);
                let in_closed_s = va == vs || g.has_edge(va, vs);
                if in_closed_r && !in_closed_s {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    /// Naive cubic triple scan, kept as an oracle for the linear-pass checker.
    pub(crate) fn is_consistent_naive(g: &Graph, ord: &Ordering, part: &Partition) -> bool {
        let n = g.n();
        for r in 0..n {
            for s in r + 1..n {
                for t in s + 1..n {
                    let (vr, vs, vt) = (ord.vertex_at(r), ord.vertex_at(s), ord.vertex_at(t));
                    if part.class_of(vr) == part.class_of(vs)
                        && g.has_edge(vt, vr)
                        && !g.has_edge(vt, vs)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn complete_graph_single_class() {
        let g = Graph::complete(5).unwrap();
        let ord = Ordering::identity(5).unwrap();
        let part = Partition::one_class(5).unwrap();
        assert!(is_consistent(&g, &ord, &part).unwrap());
        assert!(is_strongly_consistent(&g, &ord, &part).unwrap());
    }

    #[test]
    fn cycle_single_class_fails_split_passes() {
        // C4 with cycle edges (0,1),(1,2),(2,3),(3,0); triple 0 < 1 < 3
        // violates a one-class partition: 3 ~ 0 but 3 !~ 1.
        let g = Graph::cycle(4).unwrap();
        let ord = Ordering::identity(4).unwrap();
        assert!(!is_consistent(&g, &ord, &Partition::one_class(4).unwrap()).unwrap());
        // classes {v1,v3,v4},{v2} -> consistent
        let part = Partition::new(vec![0, 1, 0, 0]).unwrap();
        assert!(is_consistent(&g, &ord, &part).unwrap());
    }

    #[test]
    fn proper_interval_right_end_order_is_strong() {
        // A path in its natural order is the right-end order of a proper
        // interval representation.
        let g = Graph::path(5).unwrap();
        let ord = Ordering::identity(5).unwrap();
        let part = Partition::one_class(5).unwrap();
        assert!(is_strongly_consistent(&g, &ord, &part).unwrap());
    }

    #[test]
    fn claw_is_not_proper_one_thin() {
        // K_{1,3} with center 0: no ordering is strongly consistent with a
        // single class.
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let part = Partition::one_class(4).unwrap();
        for perm in (0..4).permutations(4) {
            let ord = Ordering::new(perm).unwrap();
            assert!(!is_strongly_consistent(&g, &ord, &part).unwrap());
        }
    }

    #[test]
    fn strong_implies_weak_and_matches_naive() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
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
            let class_of: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            // normalize to contiguous ids
            let mut remap = std::collections::HashMap::new();
            let class_of: Vec<usize> = class_of
                .into_iter()
                .map(|c| {
                    let next = remap.len();
                    *remap.entry(c).or_insert(next)
                })
                .collect();
            let part = Partition::new(class_of).unwrap();
            let weak = is_consistent(&g, &ord, &part).unwrap();
            assert_eq!(weak, is_consistent_naive(&g, &ord, &part));
            if is_strongly_consistent(&g, &ord, &part).unwrap() {
                assert!(weak);
                assert!(monotone_neighborhoods_ok(&g, &ord, &part));
            }
        }
    }

    #[test]
    fn refining_preserves_consistency() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 50 {
            let n = rng.random_range(2..=7usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let ord = Ordering::identity(n).unwrap();
            let part = Partition::one_class(n).unwrap();
            if !is_consistent(&g, &ord, &part).unwrap() {
                continue;
            }
            // split off a random nonempty proper subset into a new class
            let split: Vec<usize> = (0..n)
                .map(|v| if rng.random_bool(0.5) && v > 0 { 1 } else { 0 })
                .collect();
            if !split.contains(&1) {
                continue;
            }
            let refined = Partition::new(split).unwrap();
            assert!(is_consistent(&g, &ord, &refined).unwrap());
            checked += 1;
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let g = Graph::complete(3).unwrap();
        let ord = Ordering::identity(4).unwrap();
        let part = Partition::one_class(3).unwrap();
        assert!(matches!(
            is_consistent(&g, &ord, &part),
            Err(RepError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn representation_validates_on_construction() {
        let g = Graph::cycle(4).unwrap();
        let ord = Ordering::identity(4).unwrap();
        let err = ThinRepresentation::new(&g, ord.clone(), Partition::one_class(4).unwrap(), Mode::Weak);
        assert_eq!(err.unwrap_err(), RepError::NotConsistent);
        let ok = ThinRepresentation::new(
            &g,
            ord,
            Partition::new(vec![0, 1, 0, 0]).unwrap(),
            Mode::Weak,
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn partition_rejects_gaps() {
        assert!(matches!(
            Partition::new(vec![0, 2]),
            Err(RepError::EmptyClass(1))
        ));
    }
}
