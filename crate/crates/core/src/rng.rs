//! Deterministic, independently seekable random streams.
//!
//! Every stream is a ChaCha8 keystream keyed by the master seed and selected by
//! a 64-bit stream id. ChaCha is counter based, so two streams with the same
//! key and different ids never overlap, and a stream can be rebuilt anywhere
//! from `(master_seed, stream_id)` alone. Monte-Carlo trials derive one stream
//! per trial and purpose, which makes the aggregate independent of the order
//! (or thread) in which trials run.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// What a per-trial stream is used for. Folded into the high byte of the
/// stream id so that channel draws, bound samples and acquisition orders of
/// the same trial are independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Purpose {
    Channel = 1,
    BoundSample = 2,
    AcquisitionOrder = 3,
}

#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

/// Builds the stream identified by `(master_seed, stream_id)`.
pub fn derive_stream(master_seed: u64, stream_id: u64) -> RngStream {
    let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
    inner.set_stream(stream_id);
    RngStream {
        master_seed,
        stream_id,
        inner,
    }
}

/// Stream for one Monte-Carlo trial and purpose.
pub fn trial_stream(master_seed: u64, trial: u64, purpose: Purpose) -> RngStream {
    debug_assert!(trial < 1 << 56);
    derive_stream(master_seed, ((purpose as u64) << 56) | trial)
}

impl RngStream {
    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform sample in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
