//! Exact searches: thinness and proper thinness by branch and bound over
//! vertex orderings, and the NP-complete ordering-for-a-given-partition
//! decision by backtracking.

use thiserror::Error;

use crate::graph::Graph;
use crate::incompat::min_consistent_partition;
use crate::rep::{Mode, Ordering, Partition, ThinRepresentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("instance too large for exact search: n = {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Size caps for the exponential searches. `THINKIT_SIZE_CAP` overrides
/// these at the CLI layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// cap for `thinness_exact` / `proper_thinness_exact`
    pub exact_thinness_n: usize,
    /// cap for `consistent_order_for_partition`
    pub order_search_n: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            exact_thinness_n: 10,
            order_search_n: 12,
        }
    }
}

/// Union-find over twin pairs (equal open or equal closed neighborhoods).
/// Every transposition inside a bucket is an automorphism, so orderings can
/// be restricted to those listing each bucket in increasing vertex id.
fn twin_buckets(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for u in 0..n {
        for v in u + 1..n {
            let open_twins = !g.has_edge(u, v)
                && (0..n).all(|w| w == u || w == v || g.has_edge(u, w) == g.has_edge(v, w));
            let closed_twins = g.has_edge(u, v)
                && (0..n).all(|w| w == u || w == v || g.has_edge(u, w) == g.has_edge(v, w));
            if open_twins || closed_twins {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Exact maximum clique size of a small graph given as bitmasks.
fn max_clique_size(adj: &[u64], cand: u64, current: usize, best: &mut usize) {
    if current + (cand.count_ones() as usize) <= *best {
        return;
    }
    if cand == 0 {
        *best = (*best).max(current);
        return;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        max_clique_size(adj, rest & adj[v], current + 1, best);
        if current + 1 + (rest.count_ones() as usize) <= *best {
            return;
        }
    }
}

struct ExactSearch<'a> {
    g: &'a Graph,
    strong: bool,
    n: usize,
    twin_root: Vec<usize>,
    placed: Vec<usize>,
    used: Vec<bool>,
    // incompatibility edges among placed vertices, indexed by slot
    slot_adj: Vec<u64>,
    best_count: usize,
    best_order: Vec<usize>,
}

impl<'a> ExactSearch<'a> {
    /// Incompatibility edges revealed by placing `z` at the next slot:
    /// weak witnesses among earlier pairs, and (strong mode) earlier
    /// witnesses for pairs ending at `z`.
    fn new_edges_for(&self, z: usize) -> Vec<(usize, usize)> {
        let depth = self.placed.len();
        let mut out = Vec::new();
        for vp in 0..depth {
            let v = self.placed[vp];
            if !self.g.has_edge(z, v) {
                continue;
            }
            for wp in vp + 1..depth {
                let w = self.placed[wp];
                if !self.g.has_edge(z, w) && self.slot_adj[vp] & (1 << wp) == 0 {
                    out.push((vp, wp));
                }
            }
        }
        if self.strong {
            for vp in 0..depth {
                let v = self.placed[vp];
                if self.slot_adj[vp] & (1 << depth) != 0 {
                    continue;
                }
                let witnessed = (0..vp).any(|xp| {
                    let x = self.placed[xp];
                    self.g.has_edge(x, z) && !self.g.has_edge(x, v)
                });
                if witnessed {
                    out.push((vp, depth));
                }
            }
        }
        out
    }

    fn dfs(&mut self) {
        if self.best_count == 1 {
            return; // cannot improve
        }
        let depth = self.placed.len();
        if depth == self.n {
            let ord = Ordering::new(self.placed.clone()).expect("permutation by construction");
            let part = min_consistent_partition(self.g, &ord, self.strong)
                .expect("dimensions match by construction");
            if part.num_classes() < self.best_count {
                self.best_count = part.num_classes();
                self.best_order = self.placed.clone();
            }
            return;
        }
        for z in 0..self.n {
            if self.used[z] {
                continue;
            }
            // canonical orbit representative: within a twin bucket place
            // vertices in increasing id order
            if (0..z).any(|u| !self.used[u] && self.twin_root[u] == self.twin_root[z]) {
                continue;
            }
            let new_edges = self.new_edges_for(z);
            for &(a, b) in &new_edges {
                self.slot_adj[a] |= 1 << b;
                self.slot_adj[b] |= 1 << a;
            }
            self.placed.push(z);
            self.used[z] = true;

            let full = (1u64 << self.placed.len()) - 1;
            let mut omega = 0;
            max_clique_size(&self.slot_adj, full, 0, &mut omega);
            if omega < self.best_count {
                self.dfs();
            }

            self.used[z] = false;
            self.placed.pop();
            for &(a, b) in &new_edges {
                self.slot_adj[a] &= !(1 << b);
                self.slot_adj[b] &= !(1 << a);
            }
        }
    }
}

fn exact_search(
    g: &Graph,
    strong: bool,
    limit: usize,
) -> Result<(usize, ThinRepresentation), SearchError> {
    let n = g.n();
    if n > limit || n > 60 {
        return Err(SearchError::TooLarge {
            n,
            limit: limit.min(60),
        });
    }
    let identity = Ordering::identity(n).expect("n >= 1");
    let seed = min_consistent_partition(g, &identity, strong).expect("identity order fits");
    let mut search = ExactSearch {
        g,
        strong,
        n,
        twin_root: twin_buckets(g),
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        slot_adj: vec![0; n],
        best_count: seed.num_classes(),
        best_order: identity.sequence().to_vec(),
    };
    search.dfs();
    let ord = Ordering::new(search.best_order).expect("permutation");
    let part = min_consistent_partition(g, &ord, strong).expect("dimensions match");
    let count = part.num_classes();
    let mode = if strong { Mode::Strong } else { Mode::Weak };
    let rep = ThinRepresentation::new(g, ord, part, mode)
        .expect("minimum partition is consistent by construction");
    Ok((count, rep))
}

/// Minimum k such that `g` is k-thin, with a witness representation.
pub fn thinness_exact(g: &Graph) -> Result<(usize, ThinRepresentation), SearchError> {
    thinness_exact_with_limit(g, SearchLimits::default().exact_thinness_n)
}

pub fn thinness_exact_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<(usize, ThinRepresentation), SearchError> {
    exact_search(g, false, limit)
}

/// Minimum k such that `g` is proper k-thin, with a witness representation.
pub fn proper_thinness_exact(g: &Graph) -> Result<(usize, ThinRepresentation), SearchError> {
    proper_thinness_exact_with_limit(g, SearchLimits::default().exact_thinness_n)
}

pub fn proper_thinness_exact_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<(usize, ThinRepresentation), SearchError> {
    exact_search(g, true, limit)
}

struct OrderSearch<'a> {
    g: &'a Graph,
    part: &'a Partition,
    strong: bool,
    n: usize,
    placed: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> OrderSearch<'a> {
    /// Both consistency conditions restricted to triples whose largest
    /// vertex is the newly placed one; these are exactly the triples that
    /// become determined at this step.
    fn placement_ok(&self, t: usize) -> bool {
        let depth = self.placed.len();
        // forward: r < s < t, r,s same class, t~r, t!~s
        for cls in 0..self.part.num_classes() {
            let mut seen_neighbor = false;
            for &v in &self.placed {
                if self.part.class_of(v) != cls {
                    continue;
                }
                if self.g.has_edge(t, v) {
                    seen_neighbor = true;
                } else if seen_neighbor {
                    return false;
                }
            }
        }
        if self.strong {
            // reverse: a < b < t, b,t same class, a~t, a!~b
            let ct = self.part.class_of(t);
            for bp in 0..depth {
                let b = self.placed[bp];
                if self.part.class_of(b) != ct {
                    continue;
                }
                for &a in &self.placed[..bp] {
                    if self.g.has_edge(a, t) && !self.g.has_edge(a, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A violating pair never leaves the prefix, so a vertex that already
    /// has one can never be placed and the branch is dead. After placing
    /// `u`, only pairs ending at `u` are new; older blocks were caught when
    /// their pair formed.
    fn placement_blocks_someone(&self, u: usize) -> bool {
        let cu = self.part.class_of(u);
        let before = &self.placed[..self.placed.len() - 1];
        for w in 0..self.n {
            if self.used[w] {
                continue;
            }
            // w as a future t of the forward condition
            let blocked = before.iter().any(|&r| {
                self.part.class_of(r) == cu && self.g.has_edge(w, r) && !self.g.has_edge(w, u)
            });
            if blocked {
                return true;
            }
            // w as a future t of the reverse condition, u as its classmate b
            if self.strong && self.part.class_of(w) == cu {
                let blocked = before.iter().any(|&a| {
                    self.g.has_edge(a, w) && !self.g.has_edge(a, u)
                });
                if blocked {
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&mut self) -> bool {
        if self.placed.len() == self.n {
            return true;
        }
        for v in 0..self.n {
            if self.used[v] || !self.placement_ok(v) {
                continue;
            }
            self.placed.push(v);
            self.used[v] = true;
            if !self.placement_blocks_someone(v) && self.dfs() {
                return true;
            }
            self.used[v] = false;
            self.placed.pop();
        }
        false
    }
}

/// Finds an ordering (strongly) consistent with a fixed partition, if one
/// exists. Backtracking, left to right; checks are exact at every prefix.
pub fn consistent_order_for_partition(
    g: &Graph,
    part: &Partition,
    strong: bool,
) -> Result<Option<Ordering>, SearchError> {
    consistent_order_for_partition_with_limit(
        g,
        part,
        strong,
        SearchLimits::default().order_search_n,
    )
}

pub fn consistent_order_for_partition_with_limit(
    g: &Graph,
    part: &Partition,
    strong: bool,
    limit: usize,
) -> Result<Option<Ordering>, SearchError> {
    let n = g.n();
    if n > limit {
        return Err(SearchError::TooLarge { n, limit });
    }
    let mut search = OrderSearch {
        g,
        part,
        strong,
        n,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
    };
    if !search.dfs() {
        return Ok(None);
    }
    let ord = Ordering::new(search.placed).expect("permutation by construction");
    debug_assert!(if strong {
        crate::rep::is_strongly_consistent(g, &ord, part).unwrap()
    } else {
        crate::rep::is_consistent(g, &ord, part).unwrap()
    });
    Ok(Some(ord))
}
