//! Enumeration and number theory: binomials mod p, path-graph weights and
//! their intervals, p-indices, nim-sums, ribbons and two-row tableaux.

mod binomial;
mod pindex;
mod ribbon;
mod tableau;
mod weights;

pub use binomial::{binom_mod_p, binomial, generalized_binomial};
pub use pindex::{enumerate_a, nim_sum, p_index, tuple_p_index};
pub use ribbon::{columns_to_ribbon, ribbon_to_columns, RibbonShape};
pub use tableau::{enumerate_pssyt, enumerate_ssyt, TwoRowTableau};
pub use weights::{interval_data, k_subsets, EdgeSet, IntervalSplit, SubsetIndexer, WeightSequence};
