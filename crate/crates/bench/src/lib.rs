//! Benchmark fixtures.

use tsetlin::action::BasisSpec;
use tsetlin::tableau::enumerate_standard_int;
use tsetlin::RelationSet;

/// The finite-dimensional module with the given strictly decreasing top row.
pub fn standard_spec(top: &[i64]) -> BasisSpec {
    let seed = enumerate_standard_int(top).swap_remove(0);
    BasisSpec::new(RelationSet::standard(top.len()), seed).expect("standard seed")
}
