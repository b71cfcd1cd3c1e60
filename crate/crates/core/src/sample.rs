//! Seeded random generators for property checks and the `verify` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{PhaseFn, StructureMatrix};
use crate::coeff::CoefFn;
use crate::diffop::{DiffOp, MultiIndex};
use crate::scalar::{rational, ComplexRational};

/// Size limits for generated objects.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_order: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    pub max_coef: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 2,
            max_degree: 3,
            max_terms: 3,
            max_coef: 3,
        }
    }
}

/// Per-trial seed, stable regardless of how trials are scheduled.
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pub limits: Limits,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            limits: Limits::default(),
        }
    }

    pub fn with_limits(seed: u64, limits: Limits) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            limits,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn nonzero_int(&mut self) -> i64 {
        let m = self.limits.max_coef.max(1);
        let v = self.rng.gen_range(1..=m);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    /// Non-zero rational with small numerator and denominator.
    pub fn rational(&mut self) -> ComplexRational {
        let den = self.rng.gen_range(1..=2);
        ComplexRational::real(rational(self.nonzero_int(), den))
    }

    /// Non-zero Gaussian rational.
    pub fn complex(&mut self) -> ComplexRational {
        match self.rng.gen_range(0..3) {
            0 => self.rational(),
            1 => &self.rational() * &ComplexRational::i(),
            _ => &self.rational() + &(&self.rational() * &ComplexRational::i()),
        }
    }

    fn powers(&mut self, dim: usize, max_degree: u32) -> Vec<u32> {
        let total = self.rng.gen_range(0..=max_degree);
        let mut powers = vec![0; dim];
        for _ in 0..total {
            let j = self.rng.gen_range(0..dim);
            powers[j] += 1;
        }
        powers
    }

    /// Real polynomial of degree at most `max_degree`.
    pub fn real_poly(&mut self, dim: usize) -> CoefFn {
        let mut f = CoefFn::zero(dim);
        let count = self.rng.gen_range(1..=self.limits.max_terms);
        for _ in 0..count {
            let powers = self.powers(dim, self.limits.max_degree);
            let c = self.rational();
            f = &f + &CoefFn::term(c, powers, vec![ComplexRational::zero(); dim]);
        }
        f
    }

    /// Real structural function that is not constant.
    pub fn structure_fn(&mut self, dim: usize) -> CoefFn {
        loop {
            let s = self.real_poly(dim);
            if s.max_degree() > 0 {
                return s;
            }
        }
    }

    /// Complex polynomial, possibly with one imaginary-exponential factor.
    pub fn coef(&mut self, dim: usize) -> CoefFn {
        let mut f = CoefFn::zero(dim);
        let count = self.rng.gen_range(1..=self.limits.max_terms);
        for _ in 0..count {
            let powers = self.powers(dim, self.limits.max_degree);
            let mut freq = vec![ComplexRational::zero(); dim];
            if self.rng.gen_bool(0.25) {
                let j = self.rng.gen_range(0..dim);
                freq[j] = ComplexRational::imag(rational(self.nonzero_int(), 1));
            }
            f = &f + &CoefFn::term(self.complex(), powers, freq);
        }
        f
    }

    fn multi_index(&mut self, dim: usize, max_order: u32) -> MultiIndex {
        MultiIndex(self.powers(dim, max_order))
    }

    /// Differential operator with random coefficient functions.
    pub fn diffop(&mut self, dim: usize) -> DiffOp {
        let mut op = DiffOp::zero(dim);
        let count = self.rng.gen_range(1..=self.limits.max_terms);
        for _ in 0..count {
            let alpha = self.multi_index(dim, self.limits.max_order);
            let c = self.coef(dim);
            op = &op + &DiffOp::from_term(alpha, c);
        }
        op
    }

    /// Real trigonometric polynomial in one variable, `Σ a_k cos kx + b_k sin kx`.
    pub fn periodic_real(&mut self, max_freq: i64) -> CoefFn {
        let mut f = CoefFn::constant(1, self.rational());
        for k in 1..=max_freq {
            if self.rng.gen_bool(0.7) {
                f = &f + &CoefFn::cos(1, 0, k).unwrap().scale(&self.rational());
            }
            if self.rng.gen_bool(0.7) {
                f = &f + &CoefFn::sin(1, 0, k).unwrap().scale(&self.rational());
            }
        }
        f
    }

    /// Trigonometric polynomial in one variable with complex coefficients.
    pub fn periodic_coef(&mut self, max_freq: i64) -> CoefFn {
        let mut f = CoefFn::zero(1);
        let count = self.rng.gen_range(1..=self.limits.max_terms);
        for _ in 0..count {
            let k = self.rng.gen_range(-max_freq..=max_freq);
            let freq = vec![ComplexRational::imag(rational(k, 1))];
            f = &f + &CoefFn::term(self.complex(), vec![0], freq);
        }
        f
    }

    /// One-dimensional operator with periodic coefficients.
    pub fn periodic_diffop(&mut self, max_freq: i64) -> DiffOp {
        let mut op = DiffOp::zero(1);
        let count = self.rng.gen_range(1..=self.limits.max_terms);
        for _ in 0..count {
            let alpha = self.multi_index(1, self.limits.max_order);
            let c = self.periodic_coef(max_freq);
            op = &op + &DiffOp::from_term(alpha, c);
        }
        op
    }

    /// Real polynomial over `n` degrees of freedom.
    pub fn phase_fn(&mut self, n: usize) -> PhaseFn {
        PhaseFn::new(self.real_poly(2 * n)).expect("real_poly is polynomial over 2n coordinates")
    }

    /// Random antisymmetric integer matrix, never all zero.
    pub fn structure_matrix(&mut self, n: usize) -> StructureMatrix {
        let size = 2 * n;
        loop {
            let mut rows = vec![vec![rational(0, 1); size]; size];
            let mut any = false;
            for i in 0..size {
                for j in i + 1..size {
                    let v = self.rng.gen_range(-2..=2);
                    any |= v != 0;
                    rows[i][j] = rational(v, 1);
                    rows[j][i] = rational(-v, 1);
                }
            }
            if any {
                return StructureMatrix::new(rows).expect("antisymmetric by construction");
            }
        }
    }

    /// Picks one element of a non-empty slice.
    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty slice")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_objects() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.diffop(2), b.diffop(2));
        }
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::HashSet<_> = (0..1000).map(|t| trial_seed(7, t)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn generated_shapes() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let f = s.structure_fn(2);
            assert!(f.is_real() && f.is_polynomial() && f.max_degree() > 0);
            assert!(s.diffop(3).order() <= 2);
            assert!(s.periodic_real(2).is_real());
        }
    }
}
