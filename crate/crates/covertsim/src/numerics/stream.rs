//! Reproducible random streams addressed by `(master_seed, label, index)`.
//!
//! Streams are backed by the counter-based ChaCha generator, keyed through a
//! hash of the full address, so any worker can re-derive any stream without
//! coordination and two parties holding the same master seed regenerate
//! identical draws. This is the mechanism behind the shared-seed reference
//! and projection matrices.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;

const DERIVATION_CONTEXT: &[u8] = b"covertsim.stream.v1";

fn address_digest(master_seed: u64, label: &str, index: u64) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(DERIVATION_CONTEXT);
    hasher.update(master_seed.to_le_bytes());
    hasher.update((label.len() as u64).to_le_bytes());
    hasher.update(label.as_bytes());
    hasher.update(index.to_le_bytes());
    hasher.finalize().into()
}

/// Deterministic random stream with a stable `(master_seed, label, index)` address.
#[derive(Debug, Clone)]
pub struct RandomStream {
    master_seed: u64,
    label: String,
    index: u64,
    rng: ChaCha12Rng,
}

/// Creates the stream addressed by `(master_seed, label, index)`.
///
/// Equal addresses always yield byte-identical sequences; distinct addresses
/// yield independent sequences for simulation purposes.
pub fn derive_stream(master_seed: u64, label: &str, index: u64) -> RandomStream {
    let rng = ChaCha12Rng::from_seed(address_digest(master_seed, label, index));
    RandomStream {
        master_seed,
        label: label.to_owned(),
        index,
        rng,
    }
}

/// Collapses `(master_seed, label, index)` into a new 64-bit seed.
///
/// Used to give every Monte Carlo frame its own seed domain while keeping the
/// per-frame stream labels fixed.
pub fn derive_subseed(master_seed: u64, label: &str, index: u64) -> u64 {
    let digest = address_digest(master_seed, label, index);
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

impl RandomStream {
    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Fresh stream at the same `(master_seed, label)` but a different index.
    pub fn with_index(&self, index: u64) -> RandomStream {
        derive_stream(self.master_seed, &self.label, index)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw in `[0, 1)` with 53 random bits.
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw in `(0, 1]`, safe as a logarithm argument.
    pub fn next_uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw in the open interval `(0, 1)`.
    pub fn next_uniform_open01(&mut self) -> f64 {
        loop {
            let u = self.next_uniform();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Uniform codeword index with `bits` random bits (`bits` in 1..=32).
    pub fn next_index(&mut self, bits: u32) -> usize {
        debug_assert!(bits >= 1 && bits <= 32);
        (self.next_u64() >> (64 - bits)) as usize
    }

    /// Pair of independent standard normals via the Box-Muller transform.
    pub fn next_standard_normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_uniform_open();
        let u2 = self.next_uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        (radius * angle.cos(), radius * angle.sin())
    }

    /// One circularly-symmetric complex Gaussian draw with the given per-entry variance.
    pub fn next_complex_gaussian(&mut self, variance: f64) -> Complex64 {
        let (g_re, g_im) = self.next_standard_normal_pair();
        let scale = (variance / 2.0).sqrt();
        Complex64::new(scale * g_re, scale * g_im)
    }
}

/// Samples a `rows × cols` matrix of i.i.d. `CN(0, variance)` entries.
pub fn sample_complex_gaussian(
    stream: &mut RandomStream,
    rows: usize,
    cols: usize,
    variance: f64,
) -> Result<ComplexMatrix> {
    if !(variance > 0.0) {
        return Err(Error::Parameter(format!(
            "complex Gaussian variance must be positive, got {variance}"
        )));
    }
    let mut m = ComplexMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, stream.next_complex_gaussian(variance));
        }
    }
    Ok(m)
}
