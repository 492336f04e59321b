//! Seeded per-sample random streams and chunked parallel scans.
//!
//! Every sample index owns an independent ChaCha stream keyed by
//! `(seed, stream, index)`. A larger budget therefore evaluates a superset of
//! the samples of a smaller one, and the split of indices across rayon workers
//! has no influence on what is drawn.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::Worst;

const CHUNK: u64 = 2048;

pub(crate) fn sample_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    key[24..].copy_from_slice(b"phi-b-nm");
    ChaCha8Rng::from_seed(key)
}

/// Stable stream identifier derived from a label, so different checks under
/// the same seed draw unrelated samples.
pub(crate) fn stream_id(label: &str) -> u64 {
    // FNV-1a
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Runs `body(index, &mut worst)` for every index in `0..total` on the current
/// rayon pool and merges the per-chunk minima.
pub(crate) fn par_scan<F>(total: u64, body: F) -> Worst
where
    F: Fn(u64, &mut Worst) + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut worst = Worst::empty();
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            for index in start..end {
                body(index, &mut worst);
            }
            worst
        })
        .reduce(Worst::empty, Worst::merge)
}

pub(crate) fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * rng.random::<f64>()).exp()
}

pub(crate) fn signed_log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let m = log_uniform(rng, lo, hi);
    if rng.random::<bool>() {
        m
    } else {
        -m
    }
}

/// `count` points `10^(lo_exp) .. 10^(hi_exp)` evenly spaced in the exponent.
pub(crate) fn log_grid(lo_exp: f64, hi_exp: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    (0..count)
        .map(|i| {
            let e = lo_exp + (hi_exp - lo_exp) * i as f64 / (count - 1) as f64;
            10f64.powf(e)
        })
        .collect()
}
