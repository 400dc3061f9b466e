//! Reproducible random streams and uniform samplers for `P6 × T³`.
//!
//! A run of `n` samples is split into chunks of [`CHUNK_SIZE`]. Chunk `k`
//! draws from its own ChaCha8 stream keyed by `(seed, k)`, so results do not
//! depend on how chunks are scheduled across threads.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::action_angle::{ActionAngleCoords, AngleTriple, DiagonalTriple};
use crate::error::{Error, Result};

pub const CHUNK_SIZE: u64 = 1 << 16;

/// Rejections tolerated before [`sample_action`] gives up. With acceptance
/// probability 1/2 this is never reached by a working generator.
const MAX_REJECTIONS: usize = 1000;

/// Single-owner random stream.
#[derive(Debug, Clone)]
pub struct RandomStream(ChaCha8Rng);

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Independent stream `k` under the same seed.
    pub fn substream(seed: u64, k: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        Self(rng)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.0.gen()
    }
}

/// Uniform on the interior of the moment polytope, by rejection from `[0, 2]³`.
pub fn sample_action(rng: &mut RandomStream) -> DiagonalTriple {
    for _ in 0..=MAX_REJECTIONS {
        let d = DiagonalTriple::new(2.0 * rng.uniform(), 2.0 * rng.uniform(), 2.0 * rng.uniform());
        if d.is_interior() {
            return d;
        }
    }
    panic!("sample_action rejected {MAX_REJECTIONS} candidates in a row; random stream is broken");
}

pub fn sample_angles(rng: &mut RandomStream) -> AngleTriple {
    AngleTriple::new(TAU * rng.uniform(), TAU * rng.uniform(), TAU * rng.uniform())
}

pub fn sample_coords(rng: &mut RandomStream) -> ActionAngleCoords {
    let diagonals = sample_action(rng);
    ActionAngleCoords::new(diagonals, sample_angles(rng))
}

/// `(chunk index, samples in chunk)` for a run of `n` samples.
pub fn chunk_plan(n: u64) -> impl Iterator<Item = (u64, u64)> {
    let chunks = n.div_ceil(CHUNK_SIZE);
    (0..chunks).map(move |k| (k, CHUNK_SIZE.min(n - k * CHUNK_SIZE)))
}

/// Runs `body(stream, count)` once per chunk and returns the results in chunk
/// order. `workers = None` uses the global rayon pool.
pub fn run_chunked<T, F>(n: u64, seed: u64, workers: Option<usize>, body: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RandomStream, u64) -> T + Sync,
{
    let plan: Vec<(u64, u64)> = chunk_plan(n).collect();
    let run = || {
        plan.par_iter()
            .map(|&(k, count)| body(&mut RandomStream::substream(seed, k), count))
            .collect()
    };
    match workers {
        None => Ok(run()),
        Some(0) => Err(Error::InvalidArgument("workers must be at least 1".into())),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?;
            Ok(pool.install(run))
        }
    }
}

/// The sample sequence used by the estimators, drawn serially.
pub struct SampleStream {
    seed: u64,
    remaining: u64,
    chunk: u64,
    left_in_chunk: u64,
    rng: RandomStream,
}

impl SampleStream {
    pub fn new(n: u64, seed: u64) -> Self {
        Self {
            seed,
            remaining: n,
            chunk: 0,
            left_in_chunk: CHUNK_SIZE,
            rng: RandomStream::substream(seed, 0),
        }
    }
}

impl Iterator for SampleStream {
    type Item = ActionAngleCoords;

    fn next(&mut self) -> Option<ActionAngleCoords> {
        if self.remaining == 0 {
            return None;
        }
        if self.left_in_chunk == 0 {
            self.chunk += 1;
            self.left_in_chunk = CHUNK_SIZE;
            self.rng = RandomStream::substream(self.seed, self.chunk);
        }
        self.remaining -= 1;
        self.left_in_chunk -= 1;
        Some(sample_coords(&mut self.rng))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}
