//! Reproducible sampling.
//!
//! A fixed 64-bit linear congruential generator (Knuth's MMIX constants:
//! multiplier 6364136223846793005, increment 1442695040888963407). Output is
//! the high 32 bits of the state, so reports keyed by a seed are identical
//! across platforms and releases.

use crate::matrix::Matrix;
use crate::scalar::{rational, Scalar};

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        let mut rng = Self { state: seed };
        rng.step();
        rng
    }

    fn step(&mut self) {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
    }

    pub fn next_u32(&mut self) -> u32 {
        self.step();
        (self.state >> 32) as u32
    }

    pub fn next_u64(&mut self) -> u64 {
        ((self.next_u32() as u64) << 32) | self.next_u32() as u64
    }

    /// Uniform in `0..n`. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u32() & 1 == 1
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

/// A rational `p/q` with `|p| ≤ height` and `1 ≤ q ≤ height`.
pub fn small_rational<F: Scalar>(rng: &mut Lcg64, height: i64) -> F {
    let p = rng.range(-height, height);
    let q = rng.range(1, height.max(1));
    F::from_rational(rational(p, q))
}

/// A field element of bounded height; complex parts appear only when the
/// field has an imaginary unit and `complex` is set.
pub fn small_scalar<F: Scalar>(rng: &mut Lcg64, height: i64, complex: bool) -> F {
    let re = small_rational::<F>(rng, height);
    match F::imaginary_unit() {
        Some(i) if complex && rng.coin() => re + i * small_rational::<F>(rng, height),
        _ => re,
    }
}

pub fn random_vector<F: Scalar>(rng: &mut Lcg64, n: usize, height: i64, complex: bool) -> Vec<F> {
    (0..n).map(|_| small_scalar(rng, height, complex)).collect()
}

pub fn random_matrix<F: Scalar>(rng: &mut Lcg64, rows: usize, cols: usize, height: i64, complex: bool) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| small_scalar(rng, height, complex))
}

/// Rejection-samples an invertible `n × n` matrix.
pub fn random_invertible<F: Scalar>(rng: &mut Lcg64, n: usize, height: i64, complex: bool) -> Matrix<F> {
    loop {
        let m = random_matrix(rng, n, n, height, complex);
        if m.is_invertible() {
            return m;
        }
    }
}
