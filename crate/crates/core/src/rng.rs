use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tensor::{Mat3, SymTensor2};

/// Independent stream for one trial, derived by counter from the seed.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Symmetric tensor with entries uniform in `[-1, 1]`.
pub fn random_sym<R: Rng + ?Sized>(rng: &mut R) -> SymTensor2 {
    SymTensor2::from_components(std::array::from_fn(|_| rng.random_range(-1.0..=1.0)))
}

/// Positive-definite tensor `BᵀB + 0.1 I` with `B` entries uniform in `[-1, 1]`.
pub fn random_spd<R: Rng + ?Sized>(rng: &mut R) -> SymTensor2 {
    let b = Mat3::new(std::array::from_fn(|_| {
        std::array::from_fn(|_| rng.random_range(-1.0..=1.0))
    }));
    SymTensor2::from_mat_lossy(&(b.transpose() * b)) + SymTensor2::IDENTITY.scale(0.1)
}
