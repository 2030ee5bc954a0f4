//! Seeded sampling.
//!
//! All randomness comes from ChaCha8 seeded with [`rand_core::SeedableRng::seed_from_u64`].
//! A value below `m` is drawn by rejection: take `next_u64`, reject if it
//! falls in the final partial block of `2^64 mod m` values, else reduce mod `m`.
//! Matrices are filled row-major with one draw per entry.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::group::{Gl, GroupWord, InvertibleMatrix, Letter, Matrix};
use crate::ring::{Elem, Ideal, Ring};

/// Candidate matrices tried per requested sample before giving up.
pub const ATTEMPTS_PER_SAMPLE: usize = 1000;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `0..m`, `m > 0`.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0);
        let zone = u64::MAX - (u64::MAX % m + 1) % m;
        loop {
            let v = self.rng.next_u64();
            if v <= zone {
                return v % m;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    pub fn elem(&mut self, ring: &Ring) -> Elem {
        Elem(self.below(ring.order() as u64) as u32)
    }

    pub fn pick<T: Copy>(&mut self, items: &[T]) -> T {
        items[self.index(items.len())]
    }

    /// A pair `i != j`.
    pub fn pair(&mut self, n: usize) -> (usize, usize) {
        let i = self.index(n);
        let mut j = self.index(n - 1);
        if j >= i {
            j += 1;
        }
        (i, j)
    }

    pub fn matrix(&mut self, gl: &Gl) -> Matrix {
        let mut m = gl.zero_matrix();
        for i in 0..gl.degree() {
            for j in 0..gl.degree() {
                m.set(i, j, self.elem(gl.ring()));
            }
        }
        m
    }

    /// `len` letters with uniform positions and nonzero parameters.
    pub fn word(&mut self, gl: &Gl, len: usize) -> GroupWord {
        let r = gl.ring();
        let mut w = GroupWord::empty();
        for _ in 0..len {
            let (i, j) = self.pair(gl.degree());
            let x = Elem(1 + self.below(r.order() as u64 - 1) as u32);
            w.push(Letter::new(i, j, x));
        }
        w
    }

    /// Uniform invertible matrices by rejection.
    pub fn gl(&mut self, gl: &Gl, count: usize) -> Result<Vec<InvertibleMatrix>> {
        self.filtered(gl, count, |s, g| s.matrix(g), |_, _| true)
    }

    /// Invertible matrices with off-diagonal entries drawn from `I` and any
    /// diagonal, kept when they satisfy the congruence test for `I`.
    pub fn congruence(&mut self, gl: &Gl, ideal: &Ideal, count: usize) -> Result<Vec<InvertibleMatrix>> {
        let members = ideal.elements().to_vec();
        let draw = |s: &mut Sampler, g: &Gl| {
            let mut m = g.zero_matrix();
            for i in 0..g.degree() {
                for j in 0..g.degree() {
                    let x = if i == j { s.elem(g.ring()) } else { s.pick(&members) };
                    m.set(i, j, x);
                }
            }
            m
        };
        self.filtered(gl, count, draw, |g, m| g.congruence_member(m, ideal))
    }

    fn filtered(
        &mut self,
        gl: &Gl,
        count: usize,
        mut draw: impl FnMut(&mut Sampler, &Gl) -> Matrix,
        keep: impl Fn(&Gl, &Matrix) -> bool,
    ) -> Result<Vec<InvertibleMatrix>> {
        let budget = count.saturating_mul(ATTEMPTS_PER_SAMPLE);
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count {
            if attempts >= budget {
                return Err(Error::Sampling(format!(
                    "kept {} of {count} after {attempts} candidates",
                    out.len()
                )));
            }
            attempts += 1;
            let m = draw(self, gl);
            if !keep(gl, &m) {
                continue;
            }
            match gl.invert(&m) {
                Ok(inv) => out.push(inv),
                Err(Error::NotInvertible) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

/// `count` invertible matrices, reproducible from `seed`.
pub fn sample_gl(gl: &Gl, seed: u64, count: usize) -> Result<Vec<InvertibleMatrix>> {
    Sampler::new(seed).gl(gl, count)
}

/// `count` elements of `C_n(R, I)`, reproducible from `seed`.
pub fn sample_congruence(gl: &Gl, ideal: &Ideal, seed: u64, count: usize) -> Result<Vec<InvertibleMatrix>> {
    Sampler::new(seed).congruence(gl, ideal, count)
}
