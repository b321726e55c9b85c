//! The Non-Betweenness problem and its reduction to the consistent-ordering
//! decision with a fixed partition.

use itertools::Itertools;
use thiserror::Error;

use crate::graph::Graph;
use crate::rep::Partition;
use crate::search::SearchError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NonBetweennessError {
    #[error("ground set must be nonempty")]
    EmptyGroundSet,
    #[error("duplicate element {0:?} in ground set")]
    DuplicateElement(String),
    #[error("triple refers to unknown element {0:?}")]
    UnknownElement(String),
    #[error("triple ({0:?}, {1:?}, {2:?}) repeats an element")]
    DuplicateInTriple(String, String, String),
}

/// A ground set plus ordered triples `(x, y, z)`; a total order satisfies
/// the instance when no `y` lies strictly between its `x` and `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonBetweennessInstance {
    elements: Vec<String>,
    triples: Vec<[usize; 3]>,
}

impl NonBetweennessInstance {
    pub fn new(
        elements: Vec<String>,
        triples: &[(String, String, String)],
    ) -> Result<Self, NonBetweennessError> {
        if elements.is_empty() {
            return Err(NonBetweennessError::EmptyGroundSet);
        }
        let mut index = std::collections::HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(NonBetweennessError::DuplicateElement(e.clone()));
            }
        }
        let mut resolved = Vec::with_capacity(triples.len());
        for (x, y, z) in triples {
            let lookup = |name: &String| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| NonBetweennessError::UnknownElement(name.clone()))
            };
            let t = [lookup(x)?, lookup(y)?, lookup(z)?];
            if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(NonBetweennessError::DuplicateInTriple(
                    x.clone(),
                    y.clone(),
                    z.clone(),
                ));
            }
            resolved.push(t);
        }
        Ok(NonBetweennessInstance {
            elements,
            triples: resolved,
        })
    }

    /// Construction over element indices; names become `e0`, `e1`, ...
    pub fn from_indices(
        num_elements: usize,
        triples: &[[usize; 3]],
    ) -> Result<Self, NonBetweennessError> {
        let elements: Vec<String> = (0..num_elements).map(|i| format!("e{i}")).collect();
        let named: Vec<_> = triples
            .iter()
            .map(|t| {
                (
                    format!("e{}", t[0]),
                    format!("e{}", t[1]),
                    format!("e{}", t[2]),
                )
            })
            .collect();
        NonBetweennessInstance::new(elements, &named)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn satisfied_by(&self, order: &[usize]) -> bool {
        let mut pos = vec![0usize; self.elements.len()];
        for (p, &e) in order.iter().enumerate() {
            pos[e] = p;
        }
        self.triples.iter().all(|&[x, y, z]| {
            let between = (pos[x] < pos[y] && pos[y] < pos[z])
                || (pos[z] < pos[y] && pos[y] < pos[x]);
            !between
        })
    }
}

/// Output graph: one base copy per element plus a 3-vertex gadget per
/// triple. Inside gadget i for triple (x, y, z) the only edge is x^i z^i;
/// all copies of one element are pairwise adjacent. The base copies form
/// class 0; each gadget is its own class.
///
/// The instance is satisfiable iff the output admits a consistent ordering
/// (equivalently a strongly consistent one).
pub fn reduce_non_betweenness(inst: &NonBetweennessInstance) -> (Graph, Partition) {
    let a = inst.elements.len();
    let s = inst.triples.len();
    let n = a + 3 * s;
    let mut edges = Vec::new();
    // copies[e] collects every vertex standing for element e
    let mut copies: Vec<Vec<usize>> = (0..a).map(|e| vec![e]).collect();
    let mut class_of = vec![0usize; n];
    for (i, &[x, y, z]) in inst.triples.iter().enumerate() {
        let base = a + 3 * i;
        let (xv, yv, zv) = (base, base + 1, base + 2);
        edges.push((xv, zv));
        copies[x].push(xv);
        copies[y].push(yv);
        copies[z].push(zv);
        class_of[xv] = i + 1;
        class_of[yv] = i + 1;
        class_of[zv] = i + 1;
    }
    for group in &copies {
        for pair in group.iter().combinations(2) {
            edges.push((*pair[0], *pair[1]));
        }
    }
    let graph = Graph::new(n, &edges).expect("reduction graph is simple");
    let partition = Partition::new(class_of).expect("class ids contiguous");
    (graph, partition)
}

/// Satisfying total order by enumerating all |A|! permutations, or `None`.
pub fn solve_non_betweenness_bruteforce(
    inst: &NonBetweennessInstance,
) -> Result<Option<Vec<usize>>, SearchError> {
    let a = inst.elements.len();
    if a > 8 {
        return Err(SearchError::TooLarge { n: a, limit: 8 });
    }
    for perm in (0..a).permutations(a) {
        if inst.satisfied_by(&perm) {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::consistent_order_for_partition;

    fn abc_instance(triples: &[[usize; 3]]) -> NonBetweennessInstance {
        NonBetweennessInstance::from_indices(3, triples).unwrap()
    }

    #[test]
    fn empty_collection_reduces_to_stable_base() {
        let inst = abc_instance(&[]);
        let (g, part) = reduce_non_betweenness(&inst);
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 0);
        assert_eq!(part.num_classes(), 1);
    }

    #[test]
    fn single_triple_reduction_shape() {
        let inst = abc_instance(&[[0, 1, 2]]);
        let (g, part) = reduce_non_betweenness(&inst);
        assert_eq!(g.n(), 6);
        // gadget edge x^1 z^1 plus the three copy edges
        assert_eq!(g.m(), 4);
        assert!(g.has_edge(3, 5));
        assert!(g.has_edge(0, 3) && g.has_edge(1, 4) && g.has_edge(2, 5));
        assert_eq!(part.num_classes(), 2);
    }

    #[test]
    fn repeated_element_in_triple_is_rejected() {
        let e = vec!["a".to_string(), "b".to_string()];
        let err = NonBetweennessInstance::new(
            e,
            &[("a".into(), "a".into(), "b".into())],
        )
        .unwrap_err();
        assert!(matches!(err, NonBetweennessError::DuplicateInTriple(..)));
    }

    #[test]
    fn brute_force_solves_single_triple() {
        let inst = abc_instance(&[[0, 1, 2]]);
        let order = solve_non_betweenness_bruteforce(&inst).unwrap().unwrap();
        assert!(inst.satisfied_by(&order));
        // any satisfying order keeps element 1 off the middle of (0, _, 2)
        let pos1 = order.iter().position(|&e| e == 1).unwrap();
        assert!(pos1 == 0 || pos1 == 2);
    }

    #[test]
    fn empty_collection_accepts_any_order() {
        let inst = abc_instance(&[]);
        assert!(solve_non_betweenness_bruteforce(&inst).unwrap().is_some());
    }

    #[test]
    fn reduction_agrees_with_bruteforce_on_samples() {
        let samples: Vec<Vec<[usize; 3]>> = vec![
            vec![[0, 1, 2]],
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1]],
            vec![[0, 1, 2], [2, 0, 1]],
        ];
        for triples in samples {
            let inst = abc_instance(&triples);
            let sat = solve_non_betweenness_bruteforce(&inst).unwrap().is_some();
            let (g, part) = reduce_non_betweenness(&inst);
            for strong in [false, true] {
                let found = consistent_order_for_partition(&g, &part, strong)
                    .unwrap()
                    .is_some();
                assert_eq!(sat, found, "triples {triples:?} strong={strong}");
            }
        }
    }
}
