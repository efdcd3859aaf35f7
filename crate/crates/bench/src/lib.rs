//! Fixtures shared by the benchmarks.

use monodromy_core::{Algebra, Word};

/// A D=4 algebra with bases up to `max_rank` already built.
pub fn warm_algebra(max_rank: usize) -> Algebra {
    let alg = Algebra::minkowski(4).expect("D=4 is valid");
    for n in 1..=max_rank {
        alg.basis(n).expect("rank in range");
    }
    alg
}

/// The first `count` basis words of rank `n`.
pub fn sample_words(alg: &Algebra, n: usize, count: usize) -> Vec<Word> {
    alg.basis(n).expect("rank in range").basis_words().iter().copied().take(count).collect()
}
