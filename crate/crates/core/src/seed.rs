//! Deterministic seed derivation.
//!
//! Every randomized sub-computation receives its own seed, derived from its
//! parent seed and a numeric label with [`derive_seed`]. Repetition `i` of a
//! solver always uses `derive_seed(base, i)`, so the outcome depends only on
//! the base seed and never on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for all randomized steps.
pub type SolverRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed number `label` of `parent`.
pub fn derive_seed(parent: u64, label: u64) -> u64 {
    splitmix64(parent ^ splitmix64(label.wrapping_add(0x6A09_E667_F3BC_C909)))
}

pub fn rng_from_seed(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn derivation_is_stable_and_separates_labels() {
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
        assert_ne!(derive_seed(7, 3), derive_seed(7, 4));
        assert_ne!(derive_seed(7, 3), derive_seed(8, 3));
        let a: u64 = rng_from_seed(derive_seed(1, 0)).gen();
        let b: u64 = rng_from_seed(derive_seed(1, 0)).gen();
        assert_eq!(a, b);
    }
}
