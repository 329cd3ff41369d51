//! Benchmark fixtures shared by the criterion targets.

use qladder::families::{FamilyId, FamilySpec};
use qladder::QBase;

/// Askey-Wilson parameters used throughout the benchmarks.
pub fn askey_wilson(q: f64) -> FamilySpec {
    FamilySpec::new(FamilyId::AskeyWilson, QBase::new(q).expect("valid q")).with_real_t(&[0.37, -0.29, 0.21, 0.33])
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixture_is_valid() {
        assert!(super::askey_wilson(0.5).validate().is_ok());
    }
}
