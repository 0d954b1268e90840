//! Seeded source of random coefficients for "general" choices.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coeff;
use crate::error::Result;
use crate::groebner::FreeModuleElement;
use crate::poly::Polynomial;

pub const DEFAULT_BOUND: u64 = 997;
pub const DEFAULT_TRIALS: usize = 3;

/// Deterministic stream of coefficients drawn uniformly from `[1, bound]`.
#[derive(Clone, Debug)]
pub struct GeneralElementSampler {
    seed: u64,
    bound: u64,
    trials: usize,
    rng: ChaCha8Rng,
}

impl GeneralElementSampler {
    pub fn new(seed: u64) -> Self {
        GeneralElementSampler {
            seed,
            bound: DEFAULT_BOUND,
            trials: DEFAULT_TRIALS,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound.max(1);
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials.max(1);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    /// Independent sampler for a sub-task, keyed by `label`.
    pub fn fork(&mut self, label: u64) -> Self {
        let s: u64 = self.rng.random();
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ label.rotate_left(17));
        rng.set_stream(label);
        GeneralElementSampler { seed: self.seed, bound: self.bound, trials: self.trials, rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.random_range(1..=self.bound)
    }

    pub fn coeff<C: Coeff>(&mut self) -> C {
        C::from_u64(self.next_u64())
    }

    pub fn coeffs<C: Coeff>(&mut self, n: usize) -> Vec<C> {
        (0..n).map(|_| self.coeff()).collect()
    }

    /// `sum c_i g_i` with fresh coefficients.
    pub fn combination<C: Coeff>(&mut self, gens: &[Polynomial<C>]) -> Polynomial<C> {
        let mut acc = Polynomial::zero(gens[0].arity(), gens[0].order());
        for g in gens {
            let c: C = self.coeff();
            acc = &acc + &g.scale(&c);
        }
        acc
    }

    /// Column combination `sum c_j m_j`.
    pub fn column_combination<C: Coeff>(
        &mut self,
        cols: &[FreeModuleElement<C>],
    ) -> Result<FreeModuleElement<C>> {
        let mut acc = FreeModuleElement::zero(cols[0].rank(), cols[0].arity(), cols[0].comp(0).order());
        for m in cols {
            let c: C = self.coeff();
            acc = acc.add(&m.scale_coeff(&c))?;
        }
        Ok(acc)
    }

    /// Square matrix with entries in `[1, bound]` that is invertible over `C`.
    pub fn invertible_matrix<C: Coeff>(&mut self, n: usize) -> Vec<Vec<C>> {
        loop {
            let m: Vec<Vec<C>> = (0..n).map(|_| self.coeffs(n)).collect();
            if crate::linalg::rank(&m, n) == n {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Fp31;

    #[test]
    fn deterministic_given_seed() {
        let mut a = GeneralElementSampler::new(7);
        let mut b = GeneralElementSampler::new(7);
        let va: Vec<u64> = (0..20).map(|_| a.next_u64()).collect();
        let vb: Vec<u64> = (0..20).map(|_| b.next_u64()).collect();
        assert_eq!(va, vb);
        assert!(va.iter().all(|&v| (1..=DEFAULT_BOUND).contains(&v)));
        let mut c = GeneralElementSampler::new(8);
        let vc: Vec<u64> = (0..20).map(|_| c.next_u64()).collect();
        assert_ne!(va, vc);
    }

    #[test]
    fn invertible_matrices_have_full_rank() {
        let mut s = GeneralElementSampler::new(1).with_bound(2);
        let m: Vec<Vec<Fp31>> = s.invertible_matrix(3);
        assert_eq!(crate::linalg::rank(&m, 3), 3);
    }
}
