//! Ready-made encodings of named problems onto the solver frameworks, the
//! exhaustive assignment oracle that double-checks every one of them, and
//! clique / rainbow-domination routines.

use thiserror::Error;

use crate::dp::{check_solution, Solution};
use crate::families::{cartesian_product_with_rep, FamilyError};
use crate::graph::Graph;
use crate::proper::{check_neighborhood_bounds, solve_proper, NbBound, NeighborhoodBounds};
use crate::rep::{Mode, ThinRepresentation};
use crate::spec::{
    combination_cmp, Combination, Matrix, MatrixEntry, ProblemSpec, Sense, SetFamilyBound,
    UpperBound,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("capacities sum to {total}, below the {n} vertices to color")]
    CapacityTooSmall { total: u64, n: usize },
    #[error("vertex {vertex} has an empty list of allowed parts")]
    EmptyList { vertex: usize },
    #[error("matrix size {got} does not match {expected} parts")]
    MatrixSize { got: usize, expected: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("assignment space of about 2^{bits} exceeds the oracle cap 2^{cap_bits}")]
    TooLarge { bits: u32, cap_bits: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("graph has {n} vertices, clique enumeration supports up to 64")]
    TooManyVertices { n: usize },
    #[error("more than {cap} maximal cliques")]
    CapExceeded { cap: usize },
}

/// A named instance builder output: the spec, plus neighborhood bounds when
/// the problem routes through the proper framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemEncoding {
    pub name: &'static str,
    pub spec: ProblemSpec,
    pub neighborhood: Option<NeighborhoodBounds>,
}

/// r = 1, the single set is stable, every vertex may stay out.
pub fn encode_max_weight_stable_set(weights: &[u64]) -> ProblemEncoding {
    let n = weights.len();
    ProblemEncoding {
        name: "max-weight-stable-set",
        spec: ProblemSpec {
            num_sets: 1,
            sense: Sense::Maximize,
            objective_weights: vec![weights.to_vec()],
            coefficients: vec![vec![1]],
            bounded_weights: Vec::new(),
            weight_cap: 0,
            lists: vec![vec![0b0, 0b1]; n],
            matrix: Matrix::from_rows(vec![vec![MatrixEntry::Zero]]).expect("1x1"),
            cap_bounds: Vec::new(),
            cup_bounds: Vec::new(),
        },
        neighborhood: None,
    }
}

/// One set per color, each a stable set, each capped in size; a union bound
/// over all colors forces totality on top of the singleton lists.
pub fn encode_capacitated_coloring(
    n: usize,
    capacities: &[u64],
) -> Result<ProblemEncoding, EncodingError> {
    let s = capacities.len();
    let total: u64 = capacities.iter().sum();
    if total < n as u64 {
        return Err(EncodingError::CapacityTooSmall { total, n });
    }
    let mut matrix = Matrix::any(s);
    for j in 0..s {
        matrix.set(j, j, MatrixEntry::Zero);
    }
    let lists = vec![(0..s).map(|j| 1 << j).collect::<Vec<Combination>>(); n];
    let cap_bounds = capacities
        .iter()
        .enumerate()
        .map(|(j, &alpha)| SetFamilyBound {
            weight: 0,
            sets: 1 << j,
            lower: 0,
            upper: UpperBound::Finite(alpha),
        })
        .collect();
    let all: Combination = (1 << s) - 1;
    Ok(ProblemEncoding {
        name: "capacitated-coloring",
        spec: ProblemSpec {
            num_sets: s,
            sense: Sense::Minimize,
            objective_weights: Vec::new(),
            coefficients: Vec::new(),
            bounded_weights: vec![vec![1; n]],
            weight_cap: 1,
            lists,
            matrix,
            cap_bounds,
            cup_bounds: vec![SetFamilyBound {
                weight: 0,
                sets: all,
                lower: n as u64,
                upper: UpperBound::Unbounded,
            }],
        },
        neighborhood: None,
    })
}

/// Classic list matrix partition: each vertex goes to exactly one allowed
/// part; feasibility only.
pub fn encode_list_matrix_partition(
    matrix: Matrix,
    allowed_parts: &[Vec<usize>],
) -> Result<ProblemEncoding, EncodingError> {
    let r = matrix.size();
    let n = allowed_parts.len();
    let mut lists = Vec::with_capacity(n);
    for (vertex, parts) in allowed_parts.iter().enumerate() {
        if parts.is_empty() {
            return Err(EncodingError::EmptyList { vertex });
        }
        if parts.iter().any(|&p| p >= r) {
            return Err(EncodingError::MatrixSize {
                got: r,
                expected: parts.iter().copied().max().unwrap() + 1,
            });
        }
        let mut list: Vec<Combination> = parts.iter().map(|&p| 1 << p).collect();
        list.sort_by(|&a, &b| combination_cmp(a, b));
        list.dedup();
        lists.push(list);
    }
    let mut spec = ProblemSpec::feasibility(r, n);
    spec.matrix = matrix;
    spec.lists = lists;
    Ok(ProblemEncoding {
        name: "list-matrix-partition",
        spec,
        neighborhood: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominationVariant {
    Plain,
    Independent,
    Total,
    Efficient,
    Perfect,
}

impl DominationVariant {
    pub fn name(&self) -> &'static str {
        match self {
            DominationVariant::Plain => "dominating-set",
            DominationVariant::Independent => "independent-dominating-set",
            DominationVariant::Total => "total-dominating-set",
            DominationVariant::Efficient => "efficient-dominating-set",
            DominationVariant::Perfect => "perfect-dominating-set",
        }
    }
}

/// r = 2 with S_1 the chosen set and S_2 the rest; singleton lists make the
/// split total. Neighborhood bounds carry the variant. Routes through the
/// proper framework.
pub fn encode_domination_variant(
    variant: DominationVariant,
    weights: &[u64],
) -> ProblemEncoding {
    let n = weights.len();
    let mut matrix = Matrix::any(2);
    if variant == DominationVariant::Independent {
        matrix.set(0, 0, MatrixEntry::Zero);
    }
    let mut nb = NeighborhoodBounds::none(2);
    let at_least = NbBound {
        lower_one: true,
        upper_one: false,
    };
    let exactly = NbBound {
        lower_one: true,
        upper_one: true,
    };
    match variant {
        DominationVariant::Plain | DominationVariant::Independent => {
            nb.set_closed(0, 1, at_least);
        }
        DominationVariant::Total => {
            nb.set_open(0, 0, at_least);
            nb.set_open(0, 1, at_least);
        }
        DominationVariant::Efficient => {
            nb.set_closed(0, 0, exactly);
            nb.set_closed(0, 1, exactly);
        }
        DominationVariant::Perfect => {
            nb.set_closed(0, 1, exactly);
        }
    }
    ProblemEncoding {
        name: variant.name(),
        spec: ProblemSpec {
            num_sets: 2,
            sense: Sense::Minimize,
            objective_weights: vec![weights.to_vec()],
            coefficients: vec![vec![1, 0]],
            bounded_weights: Vec::new(),
            weight_cap: 0,
            lists: vec![vec![0b01, 0b10]; n],
            matrix,
            cap_bounds: Vec::new(),
            cup_bounds: Vec::new(),
        },
        neighborhood: Some(nb),
    }
}

/// Exhaustive assignment search filtered by the literal constraint
/// definitions; shares no code with either solver. Prunes only on
/// monotone violations (matrix conflicts among assigned vertices, upper
/// bounds that can only keep growing); lower bounds are checked on
/// complete assignments.
pub fn brute_force_oracle(
    enc: &ProblemEncoding,
    g: &Graph,
    cap_bits: u32,
) -> Result<Option<(u64, Vec<Vec<usize>>)>, OracleError> {
    let spec = &enc.spec;
    let n = g.n();
    let r = spec.num_sets;
    let mut bits = 0f64;
    for list in &spec.lists {
        bits += (list.len().max(1) as f64).log2();
    }
    if bits > cap_bits as f64 {
        return Err(OracleError::TooLarge {
            bits: bits.ceil() as u32,
            cap_bits,
        });
    }
    let lists: Vec<Vec<Combination>> = spec
        .lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_by(|&a, &b| combination_cmp(a, b));
            l.dedup();
            l
        })
        .collect();

    struct SearchState<'s> {
        g: &'s Graph,
        spec: &'s ProblemSpec,
        nb: Option<&'s NeighborhoodBounds>,
        lists: &'s [Vec<Combination>],
        assigned: Vec<Combination>,
        best: Option<(u64, Vec<Combination>)>,
    }

    // matrix conflicts between the candidate and earlier assignments
    fn matrix_ok(st: &SearchState, v: usize, combo: Combination) -> bool {
        let r = st.spec.num_sets;
        for (u, &cu) in st.assigned.iter().enumerate() {
            let edge = st.g.has_edge(u, v);
            for i in 0..r {
                if cu >> i & 1 == 0 {
                    continue;
                }
                for j in 0..r {
                    if combo >> j & 1 == 0 {
                        continue;
                    }
                    match st.spec.matrix.get(i, j) {
                        MatrixEntry::One if !edge => return false,
                        MatrixEntry::Zero if edge => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn partial_upper_ok(st: &SearchState, upto: usize) -> bool {
        for bound in &st.spec.cap_bounds {
            let value: u64 = (0..upto)
                .filter(|&v| st.assigned[v] & bound.sets == bound.sets)
                .map(|v| st.spec.bounded_weights[bound.weight][v])
                .sum();
            if !bound.upper.allows(value) {
                return false;
            }
        }
        for bound in &st.spec.cup_bounds {
            let value: u64 = (0..upto)
                .filter(|&v| st.assigned[v] & bound.sets != 0)
                .map(|v| st.spec.bounded_weights[bound.weight][v])
                .sum();
            if !bound.upper.allows(value) {
                return false;
            }
        }
        true
    }

    fn complete_ok(st: &SearchState) -> bool {
        let n = st.g.n();
        let r = st.spec.num_sets;
        let sets: Vec<Vec<usize>> = (0..r)
            .map(|j| (0..n).filter(|&v| st.assigned[v] >> j & 1 == 1).collect())
            .collect();
        if check_solution(st.g, st.spec, &sets).is_err() {
            return false;
        }
        match st.nb {
            Some(nb) => check_neighborhood_bounds(st.g, nb, &sets).is_ok(),
            None => true,
        }
    }

    fn descend(st: &mut SearchState, v: usize) {
        let n = st.g.n();
        if v == n {
            if !complete_ok(st) {
                return;
            }
            let objective: u64 = (0..n)
                .map(|u| st.spec.vertex_weight(u, st.assigned[u]))
                .sum();
            let better = match (&st.best, st.spec.sense) {
                (None, _) => true,
                (Some((b, _)), Sense::Minimize) => objective < *b,
                (Some((b, _)), Sense::Maximize) => objective > *b,
            };
            if better {
                st.best = Some((objective, st.assigned.clone()));
            }
            return;
        }
        for idx in 0..st.lists[v].len() {
            let combo = st.lists[v][idx];
            if !matrix_ok(st, v, combo) {
                continue;
            }
            st.assigned.push(combo);
            if partial_upper_ok(st, v + 1) {
                descend(st, v + 1);
            }
            st.assigned.pop();
        }
    }

    let mut st = SearchState {
        g,
        spec,
        nb: enc.neighborhood.as_ref(),
        lists: &lists,
        assigned: Vec::with_capacity(n),
        best: None,
    };
    descend(&mut st, 0);
    Ok(st.best.map(|(objective, assignment)| {
        let sets = (0..r)
            .map(|j| (0..n).filter(|&v| assignment[v] >> j & 1 == 1).collect())
            .collect();
        (objective, sets)
    }))
}

/// All maximal cliques, Bron-Kerbosch with pivoting, capped.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>, CliqueError> {
    let n = g.n();
    if n > 64 {
        return Err(CliqueError::TooManyVertices { n });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &u| acc | 1 << u))
        .collect();
    let mut out: Vec<Vec<usize>> = Vec::new();

    fn expand(
        adj: &[u64],
        clique: &mut Vec<usize>,
        mut candidates: u64,
        mut excluded: u64,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), CliqueError> {
        if candidates == 0 && excluded == 0 {
            if out.len() == cap {
                return Err(CliqueError::CapExceeded { cap });
            }
            out.push(clique.clone());
            return Ok(());
        }
        // pivot with most candidate neighbors
        let pivot = {
            let mut best = usize::MAX;
            let mut best_score = usize::MAX;
            let mut pool = candidates | excluded;
            while pool != 0 {
                let u = pool.trailing_zeros() as usize;
                pool &= pool - 1;
                let score = (candidates & !adj[u]).count_ones() as usize;
                if score < best_score {
                    best_score = score;
                    best = u;
                }
            }
            best
        };
        let mut branch = candidates & !adj[pivot];
        while branch != 0 {
            let v = branch.trailing_zeros() as usize;
            branch &= branch - 1;
            clique.push(v);
            expand(adj, clique, candidates & adj[v], excluded & adj[v], out, cap)?;
            clique.pop();
            candidates &= !(1 << v);
            excluded |= 1 << v;
        }
        Ok(())
    }

    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    expand(&adj, &mut Vec::new(), all, 0, &mut out, cap)?;
    for clique in &mut out {
        clique.sort_unstable();
    }
    out.sort();
    Ok(out)
}

/// Best-weight maximal clique; with nonnegative weights this is the maximum
/// weight clique overall.
pub fn max_weight_clique(
    g: &Graph,
    weights: &[u64],
    cap: usize,
) -> Result<(Vec<usize>, u64), CliqueError> {
    let cliques = maximal_cliques(g, cap)?;
    let best = cliques
        .into_iter()
        .map(|c| {
            let w: u64 = c.iter().map(|&v| weights[v]).sum();
            (c, w)
        })
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .expect("a nonempty graph has a maximal clique");
    Ok(best)
}

/// Minimum dominating set by subset enumeration; the fallback oracle for
/// products whose representation is not strongly consistent.
pub fn minimum_dominating_set_bruteforce(
    g: &Graph,
    cap_bits: u32,
) -> Result<Vec<usize>, OracleError> {
    let n = g.n();
    if n as u32 > cap_bits {
        return Err(OracleError::TooLarge {
            bits: n as u32,
            cap_bits,
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &u| acc | 1 << u))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: Option<u64> = None;
    for subset in 0..=all {
        if let Some(b) = best {
            if subset.count_ones() >= b.count_ones() {
                continue;
            }
        }
        let dominated = (0..n).all(|v| {
            subset >> v & 1 == 1 || adj[v] & subset != 0
        });
        if dominated {
            best = Some(subset);
        }
    }
    let best = best.expect("the whole vertex set dominates");
    Ok((0..n).filter(|&v| best >> v & 1 == 1).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RainbowRoute {
    /// solved on the product through the proper framework
    ProperDp,
    /// product representation was not strongly consistent; solved by
    /// subset enumeration
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowOutcome {
    /// colors (0-based, subset of 0..t) assigned to each vertex
    pub assignment: Vec<Vec<usize>>,
    pub weight: u64,
    pub route: RainbowRoute,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RainbowError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("t must be at least 1")]
    BadT,
}

/// Minimum-size rainbow domination with t colors, via minimum dominating
/// set of the product with the complete graph on t vertices. The product
/// representation inherits the input's mode; only a strongly consistent one
/// can ride the proper framework, otherwise a brute-force oracle takes
/// over (and the outcome says which route ran).
pub fn t_rainbow_domination(
    g: &Graph,
    rep: &ThinRepresentation,
    t: usize,
    product_cap: usize,
    brute_cap_bits: u32,
) -> Result<RainbowOutcome, RainbowError> {
    if t == 0 {
        return Err(RainbowError::BadT);
    }
    let kt = Graph::complete(t).expect("t >= 1");
    let (product, prod_rep) = cartesian_product_with_rep(g, rep, &kt, product_cap)?;
    let (chosen, route) = if prod_rep.mode() == Mode::Strong {
        let enc = encode_domination_variant(DominationVariant::Plain, &vec![1; product.n()]);
        let outcome = solve_proper(
            &product,
            &prod_rep,
            &enc.spec,
            enc.neighborhood.as_ref().expect("domination bounds"),
        )
        .expect("plain domination spec is valid for any graph");
        let solution = outcome
            .solution
            .expect("the full vertex set always dominates");
        (solution.sets[0].clone(), RainbowRoute::ProperDp)
    } else {
        (
            minimum_dominating_set_bruteforce(&product, brute_cap_bits)?,
            RainbowRoute::BruteForce,
        )
    };
    let mut assignment = vec![Vec::new(); g.n()];
    for &x in &chosen {
        assignment[x / t].push(x % t);
    }
    Ok(RainbowOutcome {
        weight: chosen.len() as u64,
        assignment,
        route,
    })
}

/// Checks a rainbow assignment literally: vertices with no colors must see
/// every color in their neighborhood.
pub fn rainbow_assignment_ok(g: &Graph, t: usize, assignment: &[Vec<usize>]) -> bool {
    (0..g.n()).all(|v| {
        if !assignment[v].is_empty() {
            return true;
        }
        let mut seen = vec![false; t];
        for &u in g.neighbors(v) {
            for &c in &assignment[u] {
                seen[c] = true;
            }
        }
        seen.iter().all(|&s| s)
    })
}

/// Interprets a framework solution whose lists are singletons as a part
/// assignment per vertex.
pub fn decode_exactly_one(solution: &Solution, n: usize) -> Option<Vec<usize>> {
    let mut parts = Vec::with_capacity(n);
    for v in 0..n {
        let combo = solution.trace[v];
        if combo.count_ones() != 1 {
            return None;
        }
        parts.push(combo.trailing_zeros() as usize);
    }
    Some(parts)
}
