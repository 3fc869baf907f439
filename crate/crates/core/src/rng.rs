//! Portable seeded randomness for generators and tests.
//!
//! The stream is PCG32 (XSH-RR output, 64-bit LCG state) initialised as in the
//! reference `pcg32_srandom(seed, STREAM)`. A `u64` is two consecutive `u32`
//! outputs, low word first. Uniform reals are `(u64 >> 11) * 2^-53`. Every
//! derived sample below uses only these two primitives so the sequence can be
//! reproduced outside Rust.

use std::convert::Infallible;

use rand_core::{Rng, TryRng};
use rand_pcg::Lcg64Xsh32;

/// Fixed PCG stream selector (the reference implementation's default).
pub const STREAM: u64 = 0xda3e_39cb_94b9_5bdb;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Lcg64Xsh32,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: Lcg64Xsh32::new(seed, STREAM),
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform01(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform01()
    }

    /// Uniform index in `0..n` by modulo reduction (bias below 2^-40 for the
    /// sizes used here).
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.inner.next_u64() % n as u64) as usize
    }

    /// Uniform point in the ball, by rejection from the bounding cube.
    pub fn point_in_ball(&mut self, center: &[f64], radius: f64) -> Vec<f64> {
        let d = center.len();
        loop {
            let v: Vec<f64> = (0..d).map(|_| self.uniform(-1.0, 1.0)).collect();
            let r2: f64 = v.iter().map(|x| x * x).sum();
            if r2 <= 1.0 {
                return center.iter().zip(&v).map(|(c, x)| c + radius * x).collect();
            }
        }
    }

    /// Uniform direction, by normalising a rejection sample from the unit ball.
    pub fn unit_vector(&mut self, d: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..d).map(|_| self.uniform(-1.0, 1.0)).collect();
            let r2: f64 = v.iter().map(|x| x * x).sum();
            if r2 <= 1.0 && r2 > 1e-12 {
                let r = r2.sqrt();
                return v.into_iter().map(|x| x / r).collect();
            }
        }
    }
}

impl TryRng for SeededRng {
    type Error = Infallible;

    fn try_next_u32(&mut self) -> Result<u32, Infallible> {
        Ok(self.inner.next_u32())
    }

    fn try_next_u64(&mut self) -> Result<u64, Infallible> {
        Ok(self.inner.next_u64())
    }

    fn try_fill_bytes(&mut self, dst: &mut [u8]) -> Result<(), Infallible> {
        self.inner.fill_bytes(dst);
        Ok(())
    }
}
