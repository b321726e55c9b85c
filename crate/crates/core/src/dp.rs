//! Solver framework over a consistent (ordering, partition) pair.
//!
//! A problem instance is solved as a shortest or longest path in a layered
//! acyclic digraph built backward from its unique final state. A state at
//! layer `s` carries the still-open weight bounds plus, per (class, set)
//! pair, how many leading vertices of the class are barred from the set
//! (`alpha`) and how many trailing ones are (`beta`). Arcs from layer `s-1`
//! to layer `s` correspond to admissible combination choices for the s-th
//! vertex in the ordering; consistency of the representation is what makes
//! the barred regions contiguous.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::Graph;
use crate::rep::{is_consistent, ThinRepresentation};
use crate::spec::{
    combination_cmp, validate_spec, Combination, MatrixEntry, ProblemSpec, Sense, SpecError,
    UpperBound,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("representation does not fit the graph (n mismatch)")]
    RepMismatch,
    #[error("representation is not consistent with the graph")]
    RepNotConsistent,
    #[error("representation is not strongly consistent (strong mode required)")]
    RepNotStrong,
    #[error("graph has {n} vertices, above the supported maximum {max}")]
    TooManyVertices { n: usize, max: usize },
}

/// Why a claimed solution fails its definitional re-check.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolutionViolation {
    #[error("vertex {vertex} takes a combination not in its list")]
    ListViolated { vertex: usize },
    #[error("matrix entry ({i}, {j}) violated by vertices {u} and {v}")]
    MatrixViolated {
        i: usize,
        j: usize,
        u: usize,
        v: usize,
    },
    #[error("intersection bound {index} violated: weight is {value}")]
    CapBoundViolated { index: usize, value: u64 },
    #[error("union bound {index} violated: weight is {value}")]
    CupBoundViolated { index: usize, value: u64 },
    #[error("open neighborhood bound ({i}, {j}) violated at vertex {v}: count {count}")]
    OpenNeighborhood {
        i: usize,
        j: usize,
        v: usize,
        count: usize,
    },
    #[error("closed neighborhood bound ({i}, {j}) violated at vertex {v}: count {count}")]
    ClosedNeighborhood {
        i: usize,
        j: usize,
        v: usize,
        count: usize,
    },
}

/// An optimal assignment: the chosen sets, the objective value, and the
/// per-vertex combination trace that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// members of each set, ascending vertex ids
    pub sets: Vec<Vec<usize>>,
    pub objective: u64,
    /// combination chosen for each vertex, indexed by vertex id
    pub trace: Vec<Combination>,
}

/// Result of a solver run; `states` counts materialized digraph states
/// (excluding the artificial source).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solution: Option<Solution>,
    pub states: usize,
}

/// Shared per-solve precomputation over graph, representation and spec.
pub(crate) struct DpContext<'a> {
    pub spec: &'a ProblemSpec,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// vertex at layer s is `order[s - 1]`
    pub order: Vec<usize>,
    /// class of the layer-s vertex
    pub class_at: Vec<usize>,
    /// canonicalized combination list of the layer-s vertex
    pub lists_at: Vec<Vec<Combination>>,
    /// `class_prefix[i][s]` = members of class i among the first s vertices
    pub class_prefix: Vec<Vec<usize>>,
    /// `nbr_before[s - 1][i]` = neighbors of v_s in class i before layer s
    pub nbr_before: Vec<Vec<usize>>,
    /// same for non-neighbors
    pub nonnbr_before: Vec<Vec<usize>>,
    /// bounded weight values of the layer-s vertex
    pub b_at: Vec<Vec<u64>>,
}

impl<'a> DpContext<'a> {
    pub fn new(g: &'a Graph, rep: &ThinRepresentation, spec: &'a ProblemSpec) -> Self {
        let n = g.n();
        let k = rep.num_classes();
        let r = spec.num_sets;
        let order: Vec<usize> = rep.ordering().sequence().to_vec();
        let class_at: Vec<usize> = order.iter().map(|&v| rep.partition().class_of(v)).collect();
        let lists_at: Vec<Vec<Combination>> = order
            .iter()
            .map(|&v| {
                let mut list = spec.lists[v].clone();
                list.sort_by(|&a, &b| combination_cmp(a, b));
                list.dedup();
                list
            })
            .collect();
        let mut class_prefix = vec![vec![0usize; n + 1]; k];
        for s in 1..=n {
            for (i, prefix) in class_prefix.iter_mut().enumerate() {
                prefix[s] = prefix[s - 1] + usize::from(class_at[s - 1] == i);
            }
        }
        let mut nbr_before = vec![vec![0usize; k]; n];
        for s in 1..=n {
            let vs = order[s - 1];
            for t in 0..s - 1 {
                if g.has_edge(vs, order[t]) {
                    nbr_before[s - 1][class_at[t]] += 1;
                }
            }
        }
        let nonnbr_before = (0..n)
            .map(|sm1| {
                (0..k)
                    .map(|i| class_prefix[i][sm1] - nbr_before[sm1][i])
                    .collect()
            })
            .collect();
        let b_at = (0..spec.bounded_weights.len())
            .map(|i| order.iter().map(|&v| spec.bounded_weights[i][v]).collect())
            .collect();
        DpContext {
            spec,
            n,
            k,
            r,
            order,
            class_at,
            lists_at,
            class_prefix,
            nbr_before,
            nonnbr_before,
            b_at,
        }
    }

    pub fn has_earlier_neighbor(&self, s: usize) -> bool {
        self.nbr_before[s - 1].iter().any(|&c| c > 0)
    }

    /// ln of the framework's state-count bound, n^(2kr+1) * (n q)^(2^(r+2) p)
    /// with the weight product floored at 1 when no bounded weights exist.
    pub fn base_state_bound_ln(&self) -> f64 {
        let n = self.n as f64;
        let p = self.spec.bounded_weights.len() as f64;
        let nq = (self.n as u64 * self.spec.weight_cap.max(1)) as f64;
        (2.0 * self.k as f64 * self.r as f64 + 1.0) * n.ln()
            + 2f64.powi(self.r as i32 + 2) * p * nq.max(1.0).ln()
    }
}

/// Bound vectors plus the barred-prefix/suffix matrices; one per constraint
/// entry of the spec, aligned by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct BaseState {
    pub cap: Vec<(u64, UpperBound)>,
    pub cup: Vec<(u64, UpperBound)>,
    /// k x r row-major: barred leading vertices of class i for set j
    pub alpha: Vec<u16>,
    /// k x r row-major: barred trailing vertices
    pub beta: Vec<u16>,
}

impl BaseState {
    pub fn sink(spec: &ProblemSpec, k: usize) -> BaseState {
        BaseState {
            cap: spec
                .cap_bounds
                .iter()
                .map(|b| (b.lower, b.upper))
                .collect(),
            cup: spec
                .cup_bounds
                .iter()
                .map(|b| (b.lower, b.upper))
                .collect(),
            alpha: vec![0; k * spec.num_sets],
            beta: vec![0; k * spec.num_sets],
        }
    }
}

impl<'a> DpContext<'a> {
    /// Conditions s.1-s.4 for layers s >= 2.
    pub fn base_admissible(&self, st: &BaseState, s: usize, combo: Combination) -> bool {
        let l = self.class_at[s - 1];
        for j in 0..self.r {
            if combo >> j & 1 == 0 {
                continue;
            }
            if st.beta[l * self.r + j] != 0 {
                return false;
            }
            if st.alpha[l * self.r + j] as usize >= self.class_prefix[l][s] {
                return false;
            }
        }
        for (idx, bound) in self.spec.cap_bounds.iter().enumerate() {
            if bound.sets & !combo == 0 && !st.cap[idx].1.allows(self.b_at[bound.weight][s - 1]) {
                return false;
            }
        }
        for (idx, bound) in self.spec.cup_bounds.iter().enumerate() {
            if bound.sets & combo != 0 && !st.cup[idx].1.allows(self.b_at[bound.weight][s - 1]) {
                return false;
            }
        }
        true
    }

    /// Conditions 1.1-1.5: the arc from the source into a layer-1 state.
    pub fn base_source_admissible(&self, st: &BaseState, combo: Combination) -> bool {
        let l = self.class_at[0];
        for j in 0..self.r {
            if combo >> j & 1 == 1
                && (st.beta[l * self.r + j] != 0 || st.alpha[l * self.r + j] != 0)
            {
                return false;
            }
        }
        for (idx, bound) in self.spec.cap_bounds.iter().enumerate() {
            let (lower, upper) = st.cap[idx];
            if bound.sets & !combo == 0 {
                let b = self.b_at[bound.weight][0];
                if b < lower || !upper.allows(b) {
                    return false;
                }
            } else if lower != 0 {
                return false;
            }
        }
        for (idx, bound) in self.spec.cup_bounds.iter().enumerate() {
            let (lower, upper) = st.cup[idx];
            if bound.sets & combo != 0 {
                let b = self.b_at[bound.weight][0];
                if b < lower || !upper.allows(b) {
                    return false;
                }
            } else if lower != 0 {
                return false;
            }
        }
        true
    }

    /// Predecessor updates for the bound vectors and barred regions.
    /// `beta_restrict[j]` says whether earlier neighbors of v_s must stay
    /// out of S_j (the thin framework derives it from matrix zeroes; the
    /// proper framework adds neighborhood-cap triggers).
    pub fn base_predecessor(
        &self,
        st: &BaseState,
        s: usize,
        combo: Combination,
        beta_restrict: &[bool],
    ) -> BaseState {
        let l = self.class_at[s - 1];
        let r = self.r;
        let mut alpha = vec![0u16; self.k * r];
        let mut beta = vec![0u16; self.k * r];
        for j in 0..r {
            let one_exists = (0..r).any(|j2| {
                combo >> j2 & 1 == 1 && self.matrix_entry(j, j2) == MatrixEntry::One
            });
            for i in 0..self.k {
                let idx = i * r + j;
                let nbr = self.nbr_before[s - 1][i] as u16;
                let nonnbr = self.nonnbr_before[s - 1][i] as u16;
                if i == l {
                    let dec = st.beta[idx].saturating_sub(1);
                    beta[idx] = if beta_restrict[j] { dec.max(nbr) } else { dec };
                    let capped = st.alpha[idx].min(self.class_prefix[l][s - 1] as u16);
                    alpha[idx] = if one_exists { capped.max(nonnbr) } else { capped };
                } else {
                    beta[idx] = if beta_restrict[j] {
                        st.beta[idx].max(nbr)
                    } else {
                        st.beta[idx]
                    };
                    alpha[idx] = if one_exists {
                        st.alpha[idx].max(nonnbr)
                    } else {
                        st.alpha[idx]
                    };
                }
            }
        }
        let cap = self
            .spec
            .cap_bounds
            .iter()
            .zip(&st.cap)
            .map(|(bound, &(lower, upper))| {
                if bound.sets & !combo == 0 {
                    let b = self.b_at[bound.weight][s - 1];
                    (lower.saturating_sub(b), upper.minus(b))
                } else {
                    (lower, upper)
                }
            })
            .collect();
        let cup = self
            .spec
            .cup_bounds
            .iter()
            .zip(&st.cup)
            .map(|(bound, &(lower, upper))| {
                if bound.sets & combo != 0 {
                    let b = self.b_at[bound.weight][s - 1];
                    (lower.saturating_sub(b), upper.minus(b))
                } else {
                    (lower, upper)
                }
            })
            .collect();
        BaseState {
            cap,
            cup,
            alpha,
            beta,
        }
    }

    pub fn matrix_entry(&self, i: usize, j: usize) -> MatrixEntry {
        self.spec.matrix.get(i, j)
    }

    /// Earlier-neighbor demand, used by the thin framework's beta updates.
    pub fn thin_beta_restrict(&self, combo: Combination) -> Vec<bool> {
        (0..self.r)
            .map(|j| {
                (0..self.r).any(|j2| {
                    combo >> j2 & 1 == 1 && self.matrix_entry(j, j2) == MatrixEntry::Zero
                })
            })
            .collect()
    }
}

/// The two solver frameworks plug their state type and arc rules into the
/// shared backward-construction / forward-path engine.
pub(crate) trait DpModel {
    type State: Clone + Eq + std::hash::Hash;
    fn context(&self) -> &DpContext<'_>;
    fn sink_state(&self) -> Self::State;
    fn arc_admissible(&self, st: &Self::State, s: usize, combo: Combination) -> bool;
    fn predecessor(&self, st: &Self::State, s: usize, combo: Combination) -> Self::State;
    fn source_admissible(&self, st: &Self::State, combo: Combination) -> bool;
    fn state_invariants_ok(&self, _st: &Self::State) -> bool {
        true
    }
    fn state_bound_ln(&self) -> f64;
}

#[derive(Debug, Clone, Copy)]
struct InArc {
    /// node index in the previous layer; `usize::MAX` is the source
    pred: usize,
    label: Combination,
    weight: u64,
}

fn keep_better(arcs: &mut Vec<InArc>, arc: InArc, sense: Sense) {
    if let Some(existing) = arcs.iter_mut().find(|a| a.pred == arc.pred) {
        let better = match sense {
            Sense::Minimize => arc.weight < existing.weight,
            Sense::Maximize => arc.weight > existing.weight,
        };
        let tie_smaller_label = arc.weight == existing.weight
            && combination_cmp(arc.label, existing.label) == std::cmp::Ordering::Less;
        if better || tie_smaller_label {
            *existing = arc;
        }
    } else {
        arcs.push(arc);
    }
}

pub(crate) fn run_dp<M: DpModel>(model: &M) -> SolveOutcome {
    let ctx = model.context();
    let n = ctx.n;
    let sense = ctx.spec.sense;

    // Backward construction, one layer at a time; only states co-reachable
    // from the sink are materialized.
    let mut arcs_by_layer: Vec<Vec<Vec<InArc>>> = vec![Vec::new(); n + 1];
    let mut cur_nodes: Vec<M::State> = vec![model.sink_state()];
    let mut total_states = 1usize;
    for s in (2..=n).rev() {
        let mut prev_nodes: Vec<M::State> = Vec::new();
        let mut prev_index: HashMap<M::State, usize> = HashMap::new();
        let mut arcs: Vec<Vec<InArc>> = vec![Vec::new(); cur_nodes.len()];
        for (widx, state) in cur_nodes.iter().enumerate() {
            for &combo in &ctx.lists_at[s - 1] {
                if !model.arc_admissible(state, s, combo) {
                    continue;
                }
                let pred = model.predecessor(state, s, combo);
                debug_assert!(model.state_invariants_ok(&pred));
                let pidx = match prev_index.get(&pred) {
                    Some(&i) => i,
                    None => {
                        let i = prev_nodes.len();
                        prev_nodes.push(pred.clone());
                        prev_index.insert(pred, i);
                        i
                    }
                };
                keep_better(
                    &mut arcs[widx],
                    InArc {
                        pred: pidx,
                        label: combo,
                        weight: ctx.spec.vertex_weight(ctx.order[s - 1], combo),
                    },
                    sense,
                );
            }
        }
        arcs_by_layer[s] = arcs;
        total_states += prev_nodes.len();
        cur_nodes = prev_nodes;
    }
    // arcs from the source into layer 1
    {
        let mut arcs: Vec<Vec<InArc>> = vec![Vec::new(); cur_nodes.len()];
        for (widx, state) in cur_nodes.iter().enumerate() {
            for &combo in &ctx.lists_at[0] {
                if model.source_admissible(state, combo) {
                    keep_better(
                        &mut arcs[widx],
                        InArc {
                            pred: usize::MAX,
                            label: combo,
                            weight: ctx.spec.vertex_weight(ctx.order[0], combo),
                        },
                        sense,
                    );
                }
            }
        }
        arcs_by_layer[1] = arcs;
    }

    let bound_ln = model.state_bound_ln();
    assert!(
        (total_states as f64).ln() <= bound_ln + 1e-9,
        "materialized {} states, above the framework bound exp({:.3})",
        total_states,
        bound_ln
    );

    // Forward pass by layers; deterministic tie-breaks on label then
    // predecessor index.
    let mut chosen: Vec<Vec<Option<(usize, Combination)>>> = vec![Vec::new(); n + 1];
    let mut prev_dist: Vec<Option<u64>> = Vec::new();
    for s in 1..=n {
        let arcs = &arcs_by_layer[s];
        let mut dist: Vec<Option<u64>> = vec![None; arcs.len()];
        let mut choice: Vec<Option<(usize, Combination)>> = vec![None; arcs.len()];
        for (widx, in_arcs) in arcs.iter().enumerate() {
            for arc in in_arcs {
                let base = if s == 1 {
                    Some(0)
                } else {
                    prev_dist.get(arc.pred).copied().flatten()
                };
                let Some(base) = base else { continue };
                let value = base + arc.weight;
                let take = match (dist[widx], sense) {
                    (None, _) => true,
                    (Some(best), Sense::Minimize) if value < best => true,
                    (Some(best), Sense::Maximize) if value > best => true,
                    (Some(best), _) if value == best => {
                        let (cur_pred, cur_label) = choice[widx].unwrap();
                        match combination_cmp(arc.label, cur_label) {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Equal => arc.pred < cur_pred,
                            std::cmp::Ordering::Greater => false,
                        }
                    }
                    _ => false,
                };
                if take {
                    dist[widx] = Some(value);
                    choice[widx] = Some((arc.pred, arc.label));
                }
            }
        }
        chosen[s] = choice;
        prev_dist = dist;
    }

    // single sink node at layer n
    let Some(objective) = prev_dist.first().copied().flatten() else {
        return SolveOutcome {
            solution: None,
            states: total_states,
        };
    };
    let mut trace = vec![0 as Combination; n];
    let mut node = 0usize;
    for s in (1..=n).rev() {
        let (pred, label) = chosen[s][node].expect("path exists back from the sink");
        trace[ctx.order[s - 1]] = label;
        node = pred;
    }
    let mut sets = vec![Vec::new(); ctx.r];
    for &v in &ctx.order {
        for (j, set) in sets.iter_mut().enumerate() {
            if trace[v] >> j & 1 == 1 {
                set.push(v);
            }
        }
    }
    for set in &mut sets {
        set.sort_unstable();
    }
    SolveOutcome {
        solution: Some(Solution {
            sets,
            objective,
            trace,
        }),
        states: total_states,
    }
}

struct ThinModel<'a> {
    ctx: DpContext<'a>,
}

impl<'a> DpModel for ThinModel<'a> {
    type State = BaseState;

    fn context(&self) -> &DpContext<'_> {
        &self.ctx
    }

    fn sink_state(&self) -> BaseState {
        BaseState::sink(self.ctx.spec, self.ctx.k)
    }

    fn arc_admissible(&self, st: &BaseState, s: usize, combo: Combination) -> bool {
        self.ctx.base_admissible(st, s, combo)
    }

    fn predecessor(&self, st: &BaseState, s: usize, combo: Combination) -> BaseState {
        let restrict = self.ctx.thin_beta_restrict(combo);
        self.ctx.base_predecessor(st, s, combo, &restrict)
    }

    fn source_admissible(&self, st: &BaseState, combo: Combination) -> bool {
        self.ctx.base_source_admissible(st, combo)
    }

    fn state_invariants_ok(&self, st: &BaseState) -> bool {
        st.cap
            .iter()
            .chain(&st.cup)
            .all(|&(lower, upper)| upper.allows(lower) || matches!(upper, UpperBound::Unbounded))
    }

    fn state_bound_ln(&self) -> f64 {
        self.ctx.base_state_bound_ln()
    }
}

/// Solves the instance over a consistent representation. Returns the
/// optimum and a witness, or no solution when infeasible.
pub fn solve(
    g: &Graph,
    rep: &ThinRepresentation,
    spec: &ProblemSpec,
) -> Result<SolveOutcome, SolveError> {
    validate_spec(spec, g)?;
    if rep.ordering().len() != g.n() {
        return Err(SolveError::RepMismatch);
    }
    if g.n() > u16::MAX as usize {
        return Err(SolveError::TooManyVertices {
            n: g.n(),
            max: u16::MAX as usize,
        });
    }
    if !is_consistent(g, rep.ordering(), rep.partition()).map_err(|_| SolveError::RepMismatch)? {
        return Err(SolveError::RepNotConsistent);
    }
    let model = ThinModel {
        ctx: DpContext::new(g, rep, spec),
    };
    let outcome = run_dp(&model);
    if let Some(solution) = &outcome.solution {
        // the framework is never trusted for its own feasibility claim
        if let Err(violation) = check_solution(g, spec, &solution.sets) {
            panic!("solver produced an invalid solution: {violation}");
        }
        let recomputed: u64 = (0..g.n()).map(|v| spec.vertex_weight(v, solution.trace[v])).sum();
        assert_eq!(recomputed, solution.objective, "objective mismatch on trace");
    }
    Ok(outcome)
}

/// Solves the instance interpreted on the complement of `g`, using the
/// representation of `g` itself: zeroes and ones swap in the matrix, all
/// other constraints are graph-independent.
pub fn solve_on_complement(
    g: &Graph,
    rep: &ThinRepresentation,
    spec: &ProblemSpec,
) -> Result<SolveOutcome, SolveError> {
    let swapped = spec.complement_form();
    validate_spec(&swapped, g)?;
    if rep.ordering().len() != g.n() {
        return Err(SolveError::RepMismatch);
    }
    if !is_consistent(g, rep.ordering(), rep.partition()).map_err(|_| SolveError::RepMismatch)? {
        return Err(SolveError::RepNotConsistent);
    }
    let model = ThinModel {
        ctx: DpContext::new(g, rep, &swapped),
    };
    let outcome = run_dp(&model);
    if let Some(solution) = &outcome.solution {
        let complement = g.complement();
        if let Err(violation) = check_solution(&complement, spec, &solution.sets) {
            panic!("solver produced an invalid complement solution: {violation}");
        }
    }
    Ok(outcome)
}

/// Literal re-check of lists, matrix conditions and weight bounds, written
/// against the definitions and independent of the solver path.
pub fn check_solution(
    g: &Graph,
    spec: &ProblemSpec,
    sets: &[Vec<usize>],
) -> Result<(), SolutionViolation> {
    let n = g.n();
    let r = spec.num_sets;
    let mut member = vec![vec![false; n]; r];
    for (j, set) in sets.iter().enumerate() {
        for &v in set {
            member[j][v] = true;
        }
    }
    for v in 0..n {
        let combo: Combination = (0..r).map(|j| (member[j][v] as u32) << j).sum();
        if !spec.lists[v].contains(&combo) {
            return Err(SolutionViolation::ListViolated { vertex: v });
        }
    }
    for i in 0..r {
        for j in 0..r {
            let entry = spec.matrix.get(i, j);
            if entry == MatrixEntry::Any {
                continue;
            }
            for &u in &sets[i] {
                for &v in &sets[j] {
                    if u == v {
                        continue;
                    }
                    let edge = g.has_edge(u, v);
                    if (entry == MatrixEntry::One && !edge) || (entry == MatrixEntry::Zero && edge)
                    {
                        return Err(SolutionViolation::MatrixViolated { i, j, u, v });
                    }
                }
            }
        }
    }
    for (index, bound) in spec.cap_bounds.iter().enumerate() {
        let value: u64 = (0..n)
            .filter(|&v| (0..r).all(|j| bound.sets >> j & 1 == 0 || member[j][v]))
            .map(|v| spec.bounded_weights[bound.weight][v])
            .sum();
        if value < bound.lower || !bound.upper.allows(value) {
            return Err(SolutionViolation::CapBoundViolated { index, value });
        }
    }
    for (index, bound) in spec.cup_bounds.iter().enumerate() {
        let value: u64 = (0..n)
            .filter(|&v| (0..r).any(|j| bound.sets >> j & 1 == 1 && member[j][v]))
            .map(|v| spec.bounded_weights[bound.weight][v])
            .sum();
        if value < bound.lower || !bound.upper.allows(value) {
            return Err(SolutionViolation::CupBoundViolated { index, value });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{Mode, Ordering, Partition};
    use crate::spec::Matrix;

    fn mwss_spec(n: usize, weights: Vec<u64>) -> ProblemSpec {
        ProblemSpec {
            num_sets: 1,
            sense: Sense::Maximize,
            objective_weights: vec![weights],
            coefficients: vec![vec![1]],
            bounded_weights: Vec::new(),
            weight_cap: 0,
            lists: vec![vec![0b0, 0b1]; n],
            matrix: Matrix::from_rows(vec![vec![MatrixEntry::Zero]]).unwrap(),
            cap_bounds: Vec::new(),
            cup_bounds: Vec::new(),
        }
    }

    fn c4_rep() -> (Graph, ThinRepresentation) {
        let g = Graph::cycle(4).unwrap();
        let rep = ThinRepresentation::new(
            &g,
            Ordering::identity(4).unwrap(),
            Partition::new(vec![0, 1, 1, 1]).unwrap(),
            Mode::Weak,
        )
        .unwrap();
        (g, rep)
    }

    #[test]
    fn stable_set_on_c4() {
        let (g, rep) = c4_rep();
        let spec = mwss_spec(4, vec![1; 4]);
        let out = solve(&g, &rep, &spec).unwrap();
        let sol = out.solution.unwrap();
        assert_eq!(sol.objective, 2);
        assert_eq!(sol.sets[0], vec![0, 2]);
    }

    #[test]
    fn stable_set_on_clique() {
        let g = Graph::complete(5).unwrap();
        let rep = ThinRepresentation::new(
            &g,
            Ordering::identity(5).unwrap(),
            Partition::one_class(5).unwrap(),
            Mode::Weak,
        )
        .unwrap();
        let spec = mwss_spec(5, vec![1; 5]);
        let out = solve(&g, &rep, &spec).unwrap();
        assert_eq!(out.solution.unwrap().objective, 1);
    }

    fn two_coloring_spec(n: usize) -> ProblemSpec {
        let mut spec = ProblemSpec::feasibility(2, n);
        spec.matrix = Matrix::from_rows(vec![
            vec![MatrixEntry::Zero, MatrixEntry::Any],
            vec![MatrixEntry::Any, MatrixEntry::Zero],
        ])
        .unwrap();
        spec.lists = vec![vec![0b01, 0b10]; n];
        spec
    }

    #[test]
    fn two_coloring_feasibility() {
        let (g, rep) = c4_rep();
        let out = solve(&g, &rep, &two_coloring_spec(4)).unwrap();
        assert!(out.solution.is_some());

        let k3 = Graph::complete(3).unwrap();
        let rep3 = ThinRepresentation::new(
            &k3,
            Ordering::identity(3).unwrap(),
            Partition::one_class(3).unwrap(),
            Mode::Weak,
        )
        .unwrap();
        let out = solve(&k3, &rep3, &two_coloring_spec(3)).unwrap();
        assert!(out.solution.is_none());
    }

    #[test]
    fn complement_solve_finds_cliques() {
        // stable sets of the complement of C4 = cliques of C4: size 2
        let (g, rep) = c4_rep();
        let spec = mwss_spec(4, vec![1; 4]);
        let out = solve_on_complement(&g, &rep, &spec).unwrap();
        assert_eq!(out.solution.unwrap().objective, 2);
        // swapping twice returns the original matrix and the original answer
        let twice = spec.complement_form().complement_form();
        assert_eq!(twice, spec);
    }

    #[test]
    fn scaling_coefficients_scales_objective_and_keeps_trace() {
        let (g, rep) = c4_rep();
        let spec = mwss_spec(4, vec![2, 1, 3, 1]);
        let base = solve(&g, &rep, &spec).unwrap().solution.unwrap();
        let mut scaled_spec = spec.clone();
        scaled_spec.coefficients = vec![vec![7]];
        let scaled = solve(&g, &rep, &scaled_spec).unwrap().solution.unwrap();
        assert_eq!(scaled.objective, 7 * base.objective);
        assert_eq!(scaled.trace, base.trace);
    }

    #[test]
    fn rejects_inconsistent_representation() {
        let g = Graph::cycle(4).unwrap();
        let h = Graph::path(4).unwrap();
        // valid for the path, not for the cycle
        let rep = ThinRepresentation::new(
            &h,
            Ordering::identity(4).unwrap(),
            Partition::one_class(4).unwrap(),
            Mode::Weak,
        )
        .unwrap();
        let spec = mwss_spec(4, vec![1; 4]);
        assert_eq!(solve(&g, &rep, &spec).unwrap_err(), SolveError::RepNotConsistent);
    }

    #[test]
    fn revalidator_rejects_bad_sets() {
        let g = Graph::cycle(4).unwrap();
        let spec = mwss_spec(4, vec![1; 4]);
        // adjacent vertices in a set required stable
        let err = check_solution(&g, &spec, &[vec![0, 1]]).unwrap_err();
        assert!(matches!(err, SolutionViolation::MatrixViolated { .. }));
    }

    #[test]
    fn cap_and_cup_bounds_respected() {
        use crate::spec::SetFamilyBound;
        // at most 1 chosen vertex (cap bound), at least 3 covered by the
        // union of the two sets (cup bound), on an edgeless graph
        let g = Graph::edgeless(4).unwrap();
        let rep = ThinRepresentation::new(
            &g,
            Ordering::identity(4).unwrap(),
            Partition::one_class(4).unwrap(),
            Mode::Weak,
        )
        .unwrap();
        let mut spec = ProblemSpec::feasibility(2, 4);
        spec.lists = vec![vec![0b00, 0b01, 0b10]; 4];
        spec.bounded_weights = vec![vec![1; 4]];
        spec.weight_cap = 1;
        spec.cap_bounds.push(SetFamilyBound {
            weight: 0,
            sets: 0b01,
            lower: 0,
            upper: UpperBound::Finite(1),
        });
        spec.cup_bounds.push(SetFamilyBound {
            weight: 0,
            sets: 0b11,
            lower: 3,
            upper: UpperBound::Unbounded,
        });
        let out = solve(&g, &rep, &spec).unwrap();
        let sol = out.solution.expect("feasible");
        assert!(sol.sets[0].len() <= 1);
        assert!(sol.sets[0].len() + sol.sets[1].len() >= 3);
        // tightening the cup bound past n makes it infeasible
        spec.cup_bounds[0].lower = 5;
        assert!(solve(&g, &rep, &spec).unwrap().solution.is_none());
    }
}
