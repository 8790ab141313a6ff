//! Reproducible random streams.
//!
//! Every (cell, run) of an experiment draws from its own ChaCha8 stream
//! derived from the master seed, so results do not depend on how work is
//! split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn substream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
