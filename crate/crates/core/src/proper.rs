//! Neighborhood-count constraints over strongly consistent representations.
//!
//! Strong consistency gives prefix-neighborhood monotonicity inside every
//! class, so domination-style demands from not-yet-processed vertices can be
//! summarized per class. The state grows by three parameter families:
//! `gamma[i][j]` - the trailing gamma vertices of class i already have a
//! neighbor chosen into S_j above them; `gamma2` - same with two neighbors;
//! `lambda[(i, j, c)]` - S_j still has to hit the union, over classes i, of
//! the trailing lambda vertices of class i (one demand slot per class c that
//! raised it).

use std::collections::BTreeMap;

use crate::dp::{
    check_solution, run_dp, BaseState, DpContext, DpModel, SolutionViolation, SolveError,
    SolveOutcome,
};
use crate::graph::Graph;
use crate::rep::{is_strongly_consistent, monotone_neighborhoods_ok, ThinRepresentation};
use crate::spec::{validate_spec, Combination, MatrixEntry, ProblemSpec};

/// One side of a neighborhood-count constraint: the lower bound is 0 or 1,
/// the upper bound is 1 or absent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NbBound {
    pub lower_one: bool,
    pub upper_one: bool,
}

impl NbBound {
    pub fn is_trivial(&self) -> bool {
        !self.lower_one && !self.upper_one
    }
}

/// For every ordered set pair (i, j): bounds on `|S_i ∩ N(v)|` (open) and
/// `|S_i ∩ N[v]|` (closed) required of every `v` in `S_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodBounds {
    r: usize,
    open: Vec<NbBound>,
    closed: Vec<NbBound>,
}

impl NeighborhoodBounds {
    pub fn none(r: usize) -> Self {
        NeighborhoodBounds {
            r,
            open: vec![NbBound::default(); r * r],
            closed: vec![NbBound::default(); r * r],
        }
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn open(&self, i: usize, j: usize) -> NbBound {
        self.open[i * self.r + j]
    }

    pub fn closed(&self, i: usize, j: usize) -> NbBound {
        self.closed[i * self.r + j]
    }

    pub fn set_open(&mut self, i: usize, j: usize, bound: NbBound) {
        self.open[i * self.r + j] = bound;
    }

    pub fn set_closed(&mut self, i: usize, j: usize, bound: NbBound) {
        self.closed[i * self.r + j] = bound;
    }

    pub fn is_trivial(&self) -> bool {
        self.open.iter().chain(&self.closed).all(NbBound::is_trivial)
    }
}

/// Base state plus the gamma/gamma2 promise counters and the sparse lambda
/// demand map keyed by (class of counted vertices, target set, class that
/// raised the demand).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct ProperState {
    base: BaseState,
    gamma: Vec<u16>,
    gamma2: Vec<u16>,
    lambda: BTreeMap<(u16, u16, u16), u16>,
}

struct ProperModel<'a> {
    ctx: DpContext<'a>,
    nb: &'a NeighborhoodBounds,
}

impl<'a> ProperModel<'a> {
    fn lambda_get(state: &ProperState, i: usize, j: usize, c: usize) -> u16 {
        state
            .lambda
            .get(&(i as u16, j as u16, c as u16))
            .copied()
            .unwrap_or(0)
    }

    /// Sets S_i whose lower neighborhood bounds v_s must cover from below,
    /// given that no promised future neighbor exists (gamma = 0).
    fn lower_triggered_sets(&self, state: &ProperState, l: usize, combo: Combination) -> Vec<usize> {
        let r = self.ctx.r;
        (0..r)
            .filter(|&i| {
                if state.gamma[l * r + i] != 0 {
                    return false;
                }
                let open_hit =
                    (0..r).any(|j| combo >> j & 1 == 1 && self.nb.open(i, j).lower_one);
                let closed_hit = combo >> i & 1 == 0
                    && (0..r).any(|j| combo >> j & 1 == 1 && self.nb.closed(i, j).lower_one);
                open_hit || closed_hit
            })
            .collect()
    }
}

impl<'a> DpModel for ProperModel<'a> {
    type State = ProperState;

    fn context(&self) -> &DpContext<'_> {
        &self.ctx
    }

    fn sink_state(&self) -> ProperState {
        ProperState {
            base: BaseState::sink(self.ctx.spec, self.ctx.k),
            gamma: vec![0; self.ctx.k * self.ctx.r],
            gamma2: vec![0; self.ctx.k * self.ctx.r],
            lambda: BTreeMap::new(),
        }
    }

    fn arc_admissible(&self, st: &ProperState, s: usize, combo: Combination) -> bool {
        if !self.ctx.base_admissible(&st.base, s, combo) {
            return false;
        }
        let (k, r) = (self.ctx.k, self.ctx.r);
        let l = self.ctx.class_at[s - 1];
        // a vertex with two promised neighbors in S_i cannot join a set
        // whose pair with i is capped at one
        for j in 0..r {
            if combo >> j & 1 == 0 {
                continue;
            }
            for i in 0..r {
                if (self.nb.open(i, j).upper_one || self.nb.closed(i, j).upper_one)
                    && st.gamma2[l * r + i] != 0
                {
                    return false;
                }
            }
        }
        // closed-cap at one: joining both sets while a neighbor is promised
        for i in 0..r {
            if combo >> i & 1 == 0 {
                continue;
            }
            for j in 0..r {
                if combo >> j & 1 == 1 && self.nb.closed(i, j).upper_one && st.gamma[l * r + i] != 0
                {
                    return false;
                }
            }
        }
        // a demand whose region is exactly {v_s} dies if v_s skips the set
        for j in 0..r {
            if combo >> j & 1 == 1 {
                continue;
            }
            for c in 0..k {
                if Self::lambda_get(st, l, j, c) == 1
                    && (0..k).all(|i| i == l || Self::lambda_get(st, i, j, c) == 0)
                {
                    return false;
                }
            }
        }
        // fresh lower-bound demands need earlier neighbors to point at
        if !self.lower_triggered_sets(st, l, combo).is_empty()
            && !self.ctx.has_earlier_neighbor(s)
        {
            return false;
        }
        true
    }

    fn predecessor(&self, st: &ProperState, s: usize, combo: Combination) -> ProperState {
        let (k, r) = (self.ctx.k, self.ctx.r);
        let l = self.ctx.class_at[s - 1];
        let nbr = &self.ctx.nbr_before[s - 1];

        // lambda0: demands satisfied by this choice disappear; the own-class
        // component of untouched demands shifts by one
        let mut lambda: BTreeMap<(u16, u16, u16), u16> = BTreeMap::new();
        for (&(i, j, c), &value) in &st.lambda {
            let ju = j as usize;
            if combo >> ju & 1 == 1 {
                if Self::lambda_get(st, l, ju, c as usize) > 0 {
                    continue; // v_s lands inside the demanded region
                }
                lambda.insert((i, j, c), value);
            } else if i as usize == l {
                if value > 1 {
                    lambda.insert((i, j, c), value - 1);
                }
            } else {
                lambda.insert((i, j, c), value);
            }
        }
        // fresh demands raised by v_s's own lower bounds
        for i in self.lower_triggered_sets(st, l, combo) {
            let active = (0..k).any(|j| Self::lambda_get_map(&lambda, j, i, l) > 0);
            if active {
                // an older same-class demand is tighter; keep it
                debug_assert!((0..k).all(|jp| {
                    Self::lambda_get_map(&lambda, jp, i, l) <= nbr[jp] as u16
                }));
                continue;
            }
            for jp in 0..k {
                if nbr[jp] > 0 {
                    lambda.insert((jp as u16, i as u16, l as u16), nbr[jp] as u16);
                }
            }
        }

        // beta restrictions: matrix zeroes, plus neighborhood caps that are
        // already exhausted by a promise or by the vertex itself
        let restrict: Vec<bool> = (0..r)
            .map(|j| {
                (0..r).any(|jp| {
                    if combo >> jp & 1 == 0 {
                        return false;
                    }
                    if self.ctx.matrix_entry(j, jp) == MatrixEntry::Zero {
                        return true;
                    }
                    if (self.nb.open(j, jp).upper_one || self.nb.closed(j, jp).upper_one)
                        && st.gamma[l * r + j] != 0
                    {
                        return true;
                    }
                    combo >> j & 1 == 1 && self.nb.closed(j, jp).upper_one
                })
            })
            .collect();
        let base = self.ctx.base_predecessor(&st.base, s, combo, &restrict);

        // gamma/gamma2 bookkeeping
        let mut gamma = st.gamma.clone();
        let mut gamma2 = st.gamma2.clone();
        for j in 0..r {
            if combo >> j & 1 == 1 {
                for i in 0..k {
                    let idx = i * r + j;
                    let nb_i = nbr[i] as u16;
                    if i == l {
                        if nb_i + 1 >= st.gamma[idx] {
                            gamma[idx] = nb_i;
                            gamma2[idx] = st.gamma[idx].saturating_sub(1);
                        } else {
                            gamma[idx] = st.gamma[idx] - 1;
                            gamma2[idx] = st.gamma2[idx].saturating_sub(1).max(nb_i);
                        }
                    } else if nb_i >= st.gamma[idx] {
                        gamma[idx] = nb_i;
                        gamma2[idx] = st.gamma[idx];
                    } else {
                        gamma2[idx] = st.gamma2[idx].max(nb_i);
                    }
                }
            } else {
                let idx = l * r + j;
                gamma[idx] = st.gamma[idx].saturating_sub(1);
                gamma2[idx] = st.gamma2[idx].saturating_sub(1);
            }
        }

        ProperState {
            base,
            gamma,
            gamma2,
            lambda,
        }
    }

    fn source_admissible(&self, st: &ProperState, combo: Combination) -> bool {
        if !self.ctx.base_source_admissible(&st.base, combo) {
            return false;
        }
        let (k, r) = (self.ctx.k, self.ctx.r);
        let l = self.ctx.class_at[0];
        // lower bounds can only be met by promised future neighbors here
        for i in 0..r {
            let open_needed = (0..r).any(|j| combo >> j & 1 == 1 && self.nb.open(i, j).lower_one);
            if open_needed && st.gamma[l * r + i] == 0 {
                return false;
            }
            let closed_needed = combo >> i & 1 == 0
                && (0..r).any(|j| combo >> j & 1 == 1 && self.nb.closed(i, j).lower_one);
            if closed_needed && st.gamma[l * r + i] == 0 {
                return false;
            }
        }
        for j in 0..r {
            if combo >> j & 1 == 0 {
                continue;
            }
            for i in 0..r {
                if (self.nb.open(i, j).upper_one || self.nb.closed(i, j).upper_one)
                    && st.gamma2[l * r + i] != 0
                {
                    return false;
                }
            }
        }
        for i in 0..r {
            if combo >> i & 1 == 0 {
                continue;
            }
            for j in 0..r {
                if combo >> j & 1 == 1 && self.nb.closed(i, j).upper_one && st.gamma[l * r + i] != 0
                {
                    return false;
                }
            }
        }
        // no unmet demands may survive past the first vertex
        for j in 0..r {
            if combo >> j & 1 == 1 {
                continue;
            }
            for c in 0..k {
                if Self::lambda_get(st, l, j, c) != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn state_invariants_ok(&self, st: &ProperState) -> bool {
        st.gamma2.iter().zip(&st.gamma).all(|(&g2, &g)| g2 <= g)
    }

    fn state_bound_ln(&self) -> f64 {
        let (k, r, n) = (self.ctx.k as f64, self.ctx.r as f64, self.ctx.n as f64);
        self.ctx.base_state_bound_ln() + (k * k * r + 2.0 * k * r) * n.ln()
    }
}

impl<'a> ProperModel<'a> {
    fn lambda_get_map(map: &BTreeMap<(u16, u16, u16), u16>, i: usize, j: usize, c: usize) -> u16 {
        map.get(&(i as u16, j as u16, c as u16)).copied().unwrap_or(0)
    }
}

/// Solves the instance plus neighborhood bounds over a strongly consistent
/// representation.
pub fn solve_proper(
    g: &Graph,
    rep: &ThinRepresentation,
    spec: &ProblemSpec,
    nb: &NeighborhoodBounds,
) -> Result<SolveOutcome, SolveError> {
    validate_spec(spec, g)?;
    if rep.ordering().len() != g.n() || nb.size() != spec.num_sets {
        return Err(SolveError::RepMismatch);
    }
    if g.n() > u16::MAX as usize {
        return Err(SolveError::TooManyVertices {
            n: g.n(),
            max: u16::MAX as usize,
        });
    }
    // the solver leans on prefix-neighborhood monotonicity; both checks are
    // hard errors
    if !is_strongly_consistent(g, rep.ordering(), rep.partition())
        .map_err(|_| SolveError::RepMismatch)?
        || !monotone_neighborhoods_ok(g, rep.ordering(), rep.partition())
    {
        return Err(SolveError::RepNotStrong);
    }
    let model = ProperModel {
        ctx: DpContext::new(g, rep, spec),
        nb,
    };
    let outcome = run_dp(&model);
    if let Some(solution) = &outcome.solution {
        if let Err(violation) = check_solution(g, spec, &solution.sets)
            .and_then(|()| check_neighborhood_bounds(g, nb, &solution.sets))
        {
            panic!("proper solver produced an invalid solution: {violation}");
        }
    }
    Ok(outcome)
}

/// Literally counts `|S_i ∩ N(v)|` and `|S_i ∩ N[v]|` for every member of
/// every constrained set.
pub fn check_neighborhood_bounds(
    g: &Graph,
    nb: &NeighborhoodBounds,
    sets: &[Vec<usize>],
) -> Result<(), SolutionViolation> {
    let r = nb.size();
    let n = g.n();
    let mut member = vec![vec![false; n]; r];
    for (j, set) in sets.iter().enumerate() {
        for &v in set {
            member[j][v] = true;
        }
    }
    for j in 0..r {
        for &v in &sets[j] {
            for i in 0..r {
                let open_count = g.neighbors(v).iter().filter(|&&u| member[i][u]).count();
                let open = nb.open(i, j);
                if (open.lower_one && open_count < 1) || (open.upper_one && open_count > 1) {
                    return Err(SolutionViolation::OpenNeighborhood {
                        i,
                        j,
                        v,
                        count: open_count,
                    });
                }
                let closed_count = open_count + usize::from(member[i][v]);
                let closed = nb.closed(i, j);
                if (closed.lower_one && closed_count < 1) || (closed.upper_one && closed_count > 1)
                {
                    return Err(SolutionViolation::ClosedNeighborhood {
                        i,
                        j,
                        v,
                        count: closed_count,
                    });
                }
            }
        }
    }
    Ok(())
}
