//! Exact algorithms around graph thinness and proper thinness.
//!
//! The crate provides the graph model and the two consistency predicates,
//! minimum consistent partitions for a fixed vertex order (through the
//! incompatibility graph and a chain partition), exact thinness and proper
//! thinness by branch and bound, the Non-Betweenness reduction for the
//! fixed-partition ordering decision, two dynamic-programming solver
//! frameworks over (proper) thin representations, ready-made problem
//! encodings with brute-force oracles, representation-carrying graph
//! operations and family generators, small-graph width oracles, and the
//! text formats used by the command line tool.

pub mod dp;
pub mod families;
pub mod graph;
pub mod incompat;
pub mod io;
pub mod nonbetween;
pub mod problems;
pub mod proper;
pub mod rep;
pub mod search;
pub mod spec;
pub mod widths;

pub use dp::{check_solution, solve, solve_on_complement, Solution, SolveError, SolveOutcome};
pub use families::{
    cartesian_product_with_rep, claw_interval_model, gen_claw_h, gen_complement_matching, gen_gk,
    gen_grid, gen_mary_tree, interval_to_proper_thin, join_with_rep, union_with_rep, FamilyError,
    IntervalModel,
};
pub use graph::{Graph, GraphError};
pub use incompat::{incompatibility_graph, min_consistent_partition, IncompatibilityGraph};
pub use nonbetween::{
    reduce_non_betweenness, solve_non_betweenness_bruteforce, NonBetweennessInstance,
};
pub use problems::{
    brute_force_oracle, encode_capacitated_coloring, encode_domination_variant,
    encode_list_matrix_partition, encode_max_weight_stable_set, max_weight_clique,
    maximal_cliques, minimum_dominating_set_bruteforce, t_rainbow_domination, DominationVariant,
    ProblemEncoding, RainbowOutcome, RainbowRoute,
};
pub use proper::{check_neighborhood_bounds, solve_proper, NbBound, NeighborhoodBounds};
pub use rep::{
    is_consistent, is_strongly_consistent, monotone_neighborhoods_ok, Mode, Ordering, Partition,
    RepError, ThinRepresentation,
};
pub use search::{
    consistent_order_for_partition, consistent_order_for_partition_with_limit,
    proper_thinness_exact, proper_thinness_exact_with_limit, thinness_exact,
    thinness_exact_with_limit, SearchError, SearchLimits,
};
pub use spec::{
    validate_spec, Combination, Matrix, MatrixEntry, ProblemSpec, Sense, SetFamilyBound,
    SpecError, UpperBound,
};
pub use widths::{
    cutwidth_bruteforce, isoperimetric_peak, lmimw_bruteforce, max_cut_induced_matching,
    max_induced_matching,
};
