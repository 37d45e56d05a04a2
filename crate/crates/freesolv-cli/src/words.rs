//! Seeded random word generation with a pinned byte stream, so repeated
//! invocations with the same seed produce identical words on any
//! platform.

use freesolv::{Letter, Word};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform independent letters over the `2 * rank` signed generators;
/// immediate cancellations are not filtered out.
pub fn random_word(rank: usize, len: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = (0..len)
        .map(|_| {
            // Explicit modulo keeps the mapping stable across rand
            // versions; the bias over 2r <= 52 values is negligible.
            let draw = rng.next_u32() as usize % (2 * rank);
            Letter::new(draw / 2 + 1, draw.is_multiple_of(2))
        })
        .collect();
    Word::from_letters(rank, letters).expect("letters within rank")
}
