//! Problem instances for the solver frameworks: sets to choose, objective
//! weights, per-vertex combination lists, an adjacency restriction matrix,
//! and bounds on weights of set intersections and unions.

use thiserror::Error;

use crate::graph::Graph;

/// A combination of sets encoded as a bitmask: bit `j` set means the vertex
/// joins `S_j` (set indices are 0-based).
pub type Combination = u32;

/// Compares combinations as sorted index sequences, the tie-break order used
/// everywhere a deterministic choice among labels is needed.
pub fn combination_cmp(a: Combination, b: Combination) -> std::cmp::Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return std::cmp::Ordering::Equal,
            (true, false) => return std::cmp::Ordering::Less,
            (false, true) => return std::cmp::Ordering::Greater,
            (false, false) => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la.cmp(&lb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

pub fn combination_to_indices(c: Combination) -> Vec<usize> {
    (0..32).filter(|j| c >> j & 1 == 1).collect()
}

pub fn combination_from_indices(indices: &[usize]) -> Combination {
    indices.iter().fold(0, |acc, &j| acc | 1 << j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixEntry {
    Zero,
    One,
    Any,
}

/// Symmetric r x r restriction matrix over {0, 1, *}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    r: usize,
    entries: Vec<MatrixEntry>,
}

impl Matrix {
    pub fn any(r: usize) -> Matrix {
        Matrix {
            r,
            entries: vec![MatrixEntry::Any; r * r],
        }
    }

    pub fn from_rows(rows: Vec<Vec<MatrixEntry>>) -> Result<Matrix, SpecError> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(SpecError::MatrixNotSquare);
        }
        let entries: Vec<MatrixEntry> = rows.into_iter().flatten().collect();
        let m = Matrix { r, entries };
        for i in 0..r {
            for j in i + 1..r {
                if m.get(i, j) != m.get(j, i) {
                    return Err(SpecError::MatrixAsymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> MatrixEntry {
        self.entries[i * self.r + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: MatrixEntry) {
        self.entries[i * self.r + j] = e;
        self.entries[j * self.r + i] = e;
    }

    /// Swaps `0` and `1` entries, leaving `*` alone. Involution.
    pub fn swapped(&self) -> Matrix {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                MatrixEntry::Zero => MatrixEntry::One,
                MatrixEntry::One => MatrixEntry::Zero,
                MatrixEntry::Any => MatrixEntry::Any,
            })
            .collect();
        Matrix {
            r: self.r,
            entries,
        }
    }
}

/// Upper bound that may be absent; subtraction leaves `Unbounded` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpperBound {
    Finite(u64),
    Unbounded,
}

impl UpperBound {
    pub fn allows(&self, value: u64) -> bool {
        match self {
            UpperBound::Finite(u) => value <= *u,
            UpperBound::Unbounded => true,
        }
    }

    pub fn minus(&self, value: u64) -> UpperBound {
        match self {
            UpperBound::Finite(u) => UpperBound::Finite(u - value),
            UpperBound::Unbounded => UpperBound::Unbounded,
        }
    }
}

/// One constraint `l <= b_i(op over S_j for j in sets) <= u`, where `op` is
/// intersection for entries in `cap_bounds` and union for `cup_bounds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamilyBound {
    /// index into `bounded_weights`
    pub weight: usize,
    /// nonempty set family J as a combination mask
    pub sets: Combination,
    pub lower: u64,
    pub upper: UpperBound,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("restriction matrix must be square")]
    MatrixNotSquare,
    #[error("restriction matrix asymmetric at ({i}, {j})")]
    MatrixAsymmetric { i: usize, j: usize },
    #[error("restriction matrix is {got}x{got} but the instance has {expected} sets")]
    MatrixSizeMismatch { got: usize, expected: usize },
    #[error("{field} has {got} entries, expected {expected}")]
    DimensionMismatch {
        field: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("bounded weight {weight} of vertex {vertex} is {value}, above the cap {cap}")]
    WeightAboveCap {
        weight: usize,
        vertex: usize,
        value: u64,
        cap: u64,
    },
    #[error("list of vertex {vertex} names a set outside 0..{r}")]
    ListSetOutOfRange { vertex: usize, r: usize },
    #[error("bound names weight index {weight}, but only {p} bounded weights exist")]
    BoundWeightOutOfRange { weight: usize, p: usize },
    #[error("bound set family must be a nonempty subset of 0..{r}")]
    BoundSetsInvalid { r: usize },
    #[error("bound has lower {lower} above upper {upper}")]
    InvertedBound { lower: u64, upper: u64 },
    #[error("number of sets must be between 1 and 16, got {0}")]
    BadSetCount(usize),
}

/// A full instance for the solver frameworks. `num_sets` is the number of
/// sets S_j to find; lists restrict per-vertex combinations; the matrix
/// states pairwise adjacency requirements between sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub num_sets: usize,
    pub sense: Sense,
    /// t weight functions, each over all vertices
    pub objective_weights: Vec<Vec<u64>>,
    /// t x num_sets coefficients applied to `objective_weights`
    pub coefficients: Vec<Vec<u64>>,
    /// p bounded weight functions, each value at most `weight_cap`
    pub bounded_weights: Vec<Vec<u64>>,
    /// the cap q(n) for every bounded weight
    pub weight_cap: u64,
    /// per-vertex allowed combinations (may include the empty combination)
    pub lists: Vec<Vec<Combination>>,
    pub matrix: Matrix,
    pub cap_bounds: Vec<SetFamilyBound>,
    pub cup_bounds: Vec<SetFamilyBound>,
}

impl ProblemSpec {
    /// A feasibility skeleton: no objective, all-`*` matrix, empty lists to
    /// be filled by the caller.
    pub fn feasibility(num_sets: usize, n: usize) -> ProblemSpec {
        ProblemSpec {
            num_sets,
            sense: Sense::Minimize,
            objective_weights: Vec::new(),
            coefficients: Vec::new(),
            bounded_weights: Vec::new(),
            weight_cap: 0,
            lists: vec![Vec::new(); n],
            matrix: Matrix::any(num_sets),
            cap_bounds: Vec::new(),
            cup_bounds: Vec::new(),
        }
    }

    /// Per-vertex objective contribution when the vertex takes `combo`.
    pub fn vertex_weight(&self, v: usize, combo: Combination) -> u64 {
        let mut total = 0u64;
        for (wi, w) in self.objective_weights.iter().enumerate() {
            for j in 0..self.num_sets {
                if combo >> j & 1 == 1 {
                    total += self.coefficients[wi][j] * w[v];
                }
            }
        }
        total
    }

    /// The spec reinterpreted on the complement graph: 0 and 1 swapped in
    /// the restriction matrix, everything else untouched.
    pub fn complement_form(&self) -> ProblemSpec {
        let mut out = self.clone();
        out.matrix = self.matrix.swapped();
        out
    }
}

/// Accepts iff the invariants hold and all referenced indices are in range
/// for the given graph.
pub fn validate_spec(spec: &ProblemSpec, g: &Graph) -> Result<(), SpecError> {
    let n = g.n();
    let r = spec.num_sets;
    if r == 0 || r > 16 {
        return Err(SpecError::BadSetCount(r));
    }
    if spec.matrix.size() != r {
        return Err(SpecError::MatrixSizeMismatch {
            got: spec.matrix.size(),
            expected: r,
        });
    }
    for i in 0..r {
        for j in i + 1..r {
            if spec.matrix.get(i, j) != spec.matrix.get(j, i) {
                return Err(SpecError::MatrixAsymmetric { i, j });
            }
        }
    }
    if spec.coefficients.len() != spec.objective_weights.len() {
        return Err(SpecError::DimensionMismatch {
            field: "coefficients",
            got: spec.coefficients.len(),
            expected: spec.objective_weights.len(),
        });
    }
    for w in &spec.objective_weights {
        if w.len() != n {
            return Err(SpecError::DimensionMismatch {
                field: "objective_weights",
                got: w.len(),
                expected: n,
            });
        }
    }
    for c in &spec.coefficients {
        if c.len() != r {
            return Err(SpecError::DimensionMismatch {
                field: "coefficients row",
                got: c.len(),
                expected: r,
            });
        }
    }
    for (wi, b) in spec.bounded_weights.iter().enumerate() {
        if b.len() != n {
            return Err(SpecError::DimensionMismatch {
                field: "bounded_weights",
                got: b.len(),
                expected: n,
            });
        }
        for (v, &value) in b.iter().enumerate() {
            if value > spec.weight_cap {
                return Err(SpecError::WeightAboveCap {
                    weight: wi,
                    vertex: v,
                    value,
                    cap: spec.weight_cap,
                });
            }
        }
    }
    if spec.lists.len() != n {
        return Err(SpecError::DimensionMismatch {
            field: "lists",
            got: spec.lists.len(),
            expected: n,
        });
    }
    let full: Combination = if r == 32 { u32::MAX } else { (1 << r) - 1 };
    for (v, list) in spec.lists.iter().enumerate() {
        if list.iter().any(|&c| c & !full != 0) {
            return Err(SpecError::ListSetOutOfRange { vertex: v, r });
        }
    }
    for bound in spec.cap_bounds.iter().chain(&spec.cup_bounds) {
        if bound.weight >= spec.bounded_weights.len() {
            return Err(SpecError::BoundWeightOutOfRange {
                weight: bound.weight,
                p: spec.bounded_weights.len(),
            });
        }
        if bound.sets == 0 || bound.sets & !full != 0 {
            return Err(SpecError::BoundSetsInvalid { r });
        }
        if let UpperBound::Finite(u) = bound.upper {
            if bound.lower > u {
                return Err(SpecError::InvertedBound {
                    lower: bound.lower,
                    upper: u,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mwss_spec(n: usize) -> ProblemSpec {
        ProblemSpec {
            num_sets: 1,
            sense: Sense::Maximize,
            objective_weights: vec![vec![1; n]],
            coefficients: vec![vec![1]],
            bounded_weights: Vec::new(),
            weight_cap: 0,
            lists: vec![vec![0b0, 0b1]; n],
            matrix: Matrix::from_rows(vec![vec![MatrixEntry::Zero]]).unwrap(),
            cap_bounds: Vec::new(),
            cup_bounds: Vec::new(),
        }
    }

    #[test]
    fn stable_set_spec_validates() {
        let g = Graph::cycle(4).unwrap();
        assert!(validate_spec(&mwss_spec(4), &g).is_ok());
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let err = Matrix::from_rows(vec![
            vec![MatrixEntry::Zero, MatrixEntry::One],
            vec![MatrixEntry::Zero, MatrixEntry::Zero],
        ])
        .unwrap_err();
        assert_eq!(err, SpecError::MatrixAsymmetric { i: 0, j: 1 });
    }

    #[test]
    fn inverted_bound_rejected() {
        let g = Graph::cycle(4).unwrap();
        let mut spec = mwss_spec(4);
        spec.bounded_weights = vec![vec![1; 4]];
        spec.weight_cap = 1;
        spec.cap_bounds.push(SetFamilyBound {
            weight: 0,
            sets: 0b1,
            lower: 3,
            upper: UpperBound::Finite(2),
        });
        assert_eq!(
            validate_spec(&spec, &g),
            Err(SpecError::InvertedBound { lower: 3, upper: 2 })
        );
    }

    #[test]
    fn weight_above_cap_rejected() {
        let g = Graph::cycle(4).unwrap();
        let mut spec = mwss_spec(4);
        spec.bounded_weights = vec![vec![0, 0, 5, 0]];
        spec.weight_cap = 4;
        assert!(matches!(
            validate_spec(&spec, &g),
            Err(SpecError::WeightAboveCap {
                vertex: 2,
                value: 5,
                ..
            })
        ));
    }

    #[test]
    fn list_outside_sets_rejected() {
        let g = Graph::cycle(4).unwrap();
        let mut spec = mwss_spec(4);
        spec.lists[1].push(0b10);
        assert_eq!(
            validate_spec(&spec, &g),
            Err(SpecError::ListSetOutOfRange { vertex: 1, r: 1 })
        );
    }

    #[test]
    fn combination_order_is_lexicographic_on_index_sequences() {
        use std::cmp::Ordering::*;
        // [] < [0] < [0,1] < [0,2] < [1]
        let seq = [0b000, 0b001, 0b011, 0b101, 0b010];
        for w in seq.windows(2) {
            assert_eq!(combination_cmp(w[0], w[1]), Less);
        }
        assert_eq!(combination_cmp(0b101, 0b101), Equal);
        assert_eq!(combination_cmp(0b010, 0b011), Greater);
    }

    #[test]
    fn matrix_swap_is_involution() {
        let m = Matrix::from_rows(vec![
            vec![MatrixEntry::Zero, MatrixEntry::Any],
            vec![MatrixEntry::Any, MatrixEntry::One],
        ])
        .unwrap();
        assert_eq!(m.swapped().swapped(), m);
        assert_eq!(m.swapped().get(0, 0), MatrixEntry::One);
        assert_eq!(m.swapped().get(0, 1), MatrixEntry::Any);
    }
}
