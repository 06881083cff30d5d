//! Reduction gadgets between the weak odd domination problems and Oddset,
//! with an exact Oddset solver and an equivalence-checking harness.

mod gadgets;
mod harness;
mod oddset;

pub use gadgets::{
    kq_to_oddset_witness, nonwod_to_bipartite_witness, oddset_to_wod_witness, reduce_kq_to_oddset,
    reduce_kq_to_oddset_with, reduce_nonwod_to_bipartite, reduce_nonwod_to_kq, reduce_oddset_to_wod,
    reduce_wod_to_nonwod, wod_to_nonwod_witness, KqOddsetWiring, ReductionOutput, ThresholdSide,
};
pub use harness::{
    all_graphs, enumerate_suite, minimize, verify_reduction, Counterexample, EquivalenceReport, HarnessConfig,
    InstanceVerdict, ReductionKind, Skipped, SourceInstance, SuiteConfig,
};
pub use oddset::{solve_oddset, OddsetInstance, ODDSET_ENUMERATION_LIMIT};
