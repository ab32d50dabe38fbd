use serde::Serialize;

/// How "composite order" is read in the Sumi `G^nil`-condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositeOrderMode {
    /// Order divisible by at least two distinct primes.
    #[default]
    TwoDistinctPrimes,
    /// Any order that is neither 1 nor prime.
    NonPrime,
}

impl CompositeOrderMode {
    pub fn accepts(self, order: u64) -> bool {
        match self {
            CompositeOrderMode::TwoDistinctPrimes => crate::arith::omega(order) >= 2,
            CompositeOrderMode::NonPrime => order > 1 && !crate::arith::is_prime(order),
        }
    }
}

/// Switches shared by the classification and verification layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Settings {
    /// Count the trivial subgroup as a prime power order subgroup in the
    /// gap and weak gap conditions.
    pub include_trivial_prime_power: bool,
    pub composite_order_mode: CompositeOrderMode,
    /// Largest group order for which the subgroup lattice is enumerated.
    pub subgroup_bound: usize,
    /// Check every witness pair `(s, t)` instead of only `(1, 1)`.
    pub exhaustive_witness_scan: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            include_trivial_prime_power: true,
            composite_order_mode: CompositeOrderMode::TwoDistinctPrimes,
            subgroup_bound: 1000,
            exhaustive_witness_scan: false,
        }
    }
}
