//! Ideals of `k[x, y]` and their local invariants at the origin.
//!
//! Local quantities are computed from `a + m^N` for growing `N`. Once every
//! monomial of some degree `k < N` reduces to zero modulo `a + m^N`, we have
//! `m^k ⊆ a + m^(k+1)`, hence `m^k ⊆ a` locally by Nakayama's lemma, and the
//! truncated quotient is the local quotient.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::groebner::{groebner, groebner_truncated, GroebnerBasis, StandardMonomials, StdIndex};
use crate::linalg;
use crate::monomial::{Monomial, MonomialOrder, DEGREE_CAP};
use crate::poly::Polynomial;

/// Largest exponent accepted by [`Ideal::power`].
pub const POWER_CAP: u32 = 64;

/// First truncation exponent tried by local computations.
pub(crate) const FIRST_TRUNCATION: u32 = 8;

/// Certified local length `ℓ(R_m / a R_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLengthReport {
    pub value: u64,
    /// Truncation exponent `N` of the certifying computation.
    pub truncation: u32,
    /// The ideal contains `m^k` locally for `k = stable_from`, so the value of
    /// `dim R/(a + m^n)` is the same for every `n >= stable_from`; in
    /// particular at `N`, `N + 1` and `N + 2`.
    pub stable_from: u32,
    /// `(N, dim R/(a + m^N))` for every truncation tried.
    pub trail: Vec<(u32, u64)>,
}

pub(crate) struct LocalData<C> {
    pub(crate) basis: GroebnerBasis<C>,
    pub(crate) report: LocalLengthReport,
}

/// Run truncated bases for `N = 8, 12, 18, ...` until some `m^k`, `k < N`, is
/// certified to lie in the truncated ideal.
pub(crate) fn certify_local<C: Coeff>(
    start: u32,
    mut basis_at: impl FnMut(u32) -> Result<GroebnerBasis<C>>,
) -> Result<LocalData<C>> {
    let mut n = start.max(2);
    let mut trail = Vec::new();
    loop {
        if n > DEGREE_CAP {
            return Err(Error::NonFinite);
        }
        let basis = basis_at(n)?;
        let (count, max_deg) = basis.quotient_profile().ok_or(Error::NonFinite)?;
        trail.push((n, count as u64));
        // monomials of degree <= max_deg include standard ones, so start above it
        let stable_from = match max_deg {
            None => Some(0),
            Some(d) => (d + 1..n).find(|&k| basis.contains_degree(k)),
        };
        if let Some(stable_from) = stable_from {
            let report = LocalLengthReport { value: count as u64, truncation: n, stable_from, trail };
            return Ok(LocalData { basis, report });
        }
        n = if n >= DEGREE_CAP { DEGREE_CAP + 1 } else { (n + n.div_ceil(2)).min(DEGREE_CAP) };
    }
}

/// Ideal of a polynomial ring, given by generators.
pub struct Ideal<C> {
    gens: Vec<Polynomial<C>>,
    arity: usize,
    gb: OnceBox<GroebnerBasis<C>>,
    local: OnceBox<LocalData<C>>,
}

impl<C: Coeff> Clone for Ideal<C> {
    fn clone(&self) -> Self {
        let out = Ideal::from_parts(self.gens.clone(), self.arity);
        if let Some(g) = self.gb.get() {
            let _ = out.gb.set(Box::new(g.clone()));
        }
        if let Some(l) = self.local.get() {
            let _ = out.local.set(Box::new(LocalData { basis: l.basis.clone(), report: l.report.clone() }));
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl<C: Coeff> fmt::Display for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

impl<C: Coeff> Ideal<C> {
    fn from_parts(gens: Vec<Polynomial<C>>, arity: usize) -> Self {
        Ideal { gens, arity, gb: OnceBox::new(), local: OnceBox::new() }
    }

    /// Ideal generated by `gens`; zero generators are dropped.
    pub fn new(gens: Vec<Polynomial<C>>) -> Result<Self> {
        let arity = gens
            .first()
            .map(|g| g.arity())
            .ok_or_else(|| Error::InvalidInput("an ideal needs at least one generator".into()))?;
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.arity() != arity {
                return Err(Error::ArityMismatch { left: arity, right: g.arity() });
            }
            if !g.is_zero() {
                kept.push(g.reorder(MonomialOrder::GrevLex));
            }
        }
        Ok(Self::from_parts(kept, arity))
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_parts(Vec::new(), arity)
    }

    pub fn unit(arity: usize) -> Self {
        Self::from_parts(vec![Polynomial::one(arity, MonomialOrder::GrevLex)], arity)
    }

    /// The maximal ideal `(x, y)` of `k[x, y]`.
    pub fn maximal() -> Self {
        Self::from_parts(vec![Polynomial::xy(1, 0), Polynomial::xy(0, 1)], 2)
    }

    /// Monomial ideal `(x^a1 y^b1, ...)` in two variables.
    pub fn from_exponents(exps: &[(u16, u16)]) -> Result<Self> {
        Self::new(exps.iter().map(|&(a, b)| Polynomial::xy(a, b)).collect())
    }

    pub fn gens(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    /// Exponent pairs when every generator is a monomial in two variables.
    pub fn monomial_exponents(&self) -> Option<Vec<(u16, u16)>> {
        if self.arity != 2 || !self.is_monomial() {
            return None;
        }
        Some(self.gens.iter().map(|g| {
            let m = g.leading_monomial().expect("nonzero");
            (m.exp(0), m.exp(1))
        }).collect())
    }

    /// Reduced grevlex Gröbner basis, computed once.
    pub fn groebner_basis(&self) -> Result<&GroebnerBasis<C>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero ideal has no Gröbner basis".into()));
        }
        self.gb.get_or_try_init(|| groebner(&self.gens, MonomialOrder::GrevLex).map(Box::new))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(Self::from_parts(g, self.arity))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out: Vec<Polynomial<C>> = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                let p = a.try_mul(b)?.monic();
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        Ok(Self::from_parts(out, self.arity))
    }

    /// `a^n`; `a^0` is the unit ideal.
    pub fn power(&self, n: u32) -> Result<Self> {
        if n > POWER_CAP {
            return Err(Error::SizeCap(alloc::format!("power {n} exceeds {POWER_CAP}")));
        }
        let mut acc = Self::unit(self.arity);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Multiply every generator by the polynomial `f`.
    pub fn scale(&self, f: &Polynomial<C>) -> Result<Self> {
        let g = self.gens.iter().map(|g| g.try_mul(f)).collect::<Result<Vec<_>>>()?;
        Self::new(g)
    }

    /// Global membership test.
    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(false);
        }
        self.groebner_basis()?.contains(f)
    }

    /// `other ⊆ self` globally.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals in the polynomial ring.
    pub fn global_eq(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ok(true),
            (false, false) => Ok(self.groebner_basis()?.polynomials() == other.groebner_basis()?.polynomials()),
            _ => Ok(false),
        }
    }

    /// True when the ideal is the whole polynomial ring.
    pub fn is_unit(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        Ok(self.groebner_basis()?.is_unit())
    }

    /// `a ∩ b`, eliminating `t` from `t a + (1 - t) b`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.arity));
        }
        let n = self.arity;
        if n + 1 > crate::monomial::MAX_VARS {
            return Err(Error::InvalidInput("no room for an elimination variable".into()));
        }
        let order = MonomialOrder::BlockElim(1);
        let map: Vec<usize> = (1..=n).collect();
        let t = Polynomial::monomial(Monomial::var(n + 1, 0, 1), order);
        let one_minus_t = &Polynomial::one(n + 1, order) - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(g.remap(n + 1, &map, order).try_mul(&t)?);
        }
        for g in &other.gens {
            gens.push(g.remap(n + 1, &map, order).try_mul(&one_minus_t)?);
        }
        let gb = groebner(&gens, order)?;
        let back: Vec<Polynomial<C>> = gb
            .polynomials()
            .into_iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0))
            .map(|p| drop_first_variable(&p, MonomialOrder::GrevLex))
            .collect();
        if back.is_empty() {
            return Ok(Self::zero(n));
        }
        Self::new(back)
    }

    /// `a : (f)` via `(a ∩ (f)) / f`.
    pub fn colon_poly(&self, f: &Polynomial<C>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidInput("colon by the zero polynomial".into()));
        }
        let principal = Self::new(vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        if meet.is_zero() {
            return Ok(Self::zero(self.arity));
        }
        let quotients = meet
            .gens
            .iter()
            .map(|g| g.div_exact(f).ok_or_else(|| Error::Mismatch("inexact division in colon".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(quotients)
    }

    /// Ideal quotient `a : b = {f : f b ⊆ a}`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::InvalidInput("colon by the zero ideal".into()));
        }
        let mut acc: Option<Self> = None;
        for g in &other.gens {
            let q = self.colon_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.expect("nonempty generator list"))
    }

    /// Whether the leading-term ideal contains pure powers of `x` and `y`
    /// (so that the global quotient is finite-dimensional), excluding `(1)`.
    pub fn is_m_primary(&self) -> Result<bool> {
        if self.is_zero() || self.arity != 2 {
            return Ok(false);
        }
        let gb = self.groebner_basis()?;
        if gb.is_unit() {
            return Ok(false);
        }
        let lms = gb.leading_monomials();
        let has = |v: usize| lms.iter().any(|(_, m)| m.pure_power_var() == Some(v));
        Ok(has(0) && has(1))
    }

    /// Global quotient dimension, when finite.
    pub fn global_colength(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Ok(None);
        }
        Ok(self.groebner_basis()?.standard_monomials().count().map(|c| c as u64))
    }

    pub(crate) fn local_data(&self) -> Result<&LocalData<C>> {
        if self.arity != 2 {
            return Err(Error::InvalidInput("local invariants need two variables".into()));
        }
        if self.is_zero() {
            return Err(Error::NonFinite);
        }
        self.local.get_or_try_init(|| {
            let start = self.local_start();
            certify_local(start, |n| groebner_truncated(&self.gens, MonomialOrder::GrevLex, n)).map(Box::new)
        })
    }

    /// Initial truncation: for monomial ideals the staircase bounds the answer.
    fn local_start(&self) -> u32 {
        if let Some(exps) = self.monomial_exponents() {
            let a = exps.iter().filter(|e| e.1 == 0).map(|e| e.0 as u32).min();
            let b = exps.iter().filter(|e| e.0 == 0).map(|e| e.1 as u32).min();
            if let (Some(a), Some(b)) = (a, b) {
                return (a + b).clamp(2, DEGREE_CAP);
            }
        }
        FIRST_TRUNCATION
    }

    /// `ℓ(R_m / a R_m)` with its stabilization certificate.
    pub fn local_colength(&self) -> Result<LocalLengthReport> {
        Ok(self.local_data()?.report.clone())
    }

    /// Length as a plain number.
    pub fn colength(&self) -> Result<u64> {
        Ok(self.local_data()?.report.value)
    }

    /// Reduced basis of `a + m^N` at the certified truncation.
    pub fn local_basis(&self) -> Result<&GroebnerBasis<C>> {
        Ok(&self.local_data()?.basis)
    }

    /// True when the ideal has finite nonzero colength at the origin.
    pub fn is_locally_m_primary(&self) -> Result<bool> {
        match self.colength() {
            Ok(v) => Ok(v > 0),
            Err(Error::NonFinite) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Minimal number of generators of `a R_m`: `ℓ(R/m a) - ℓ(R/a)`.
    pub fn local_mingens(&self) -> Result<u64> {
        let la = self.colength()?;
        let ma = Self::maximal().product(self)?;
        Ok(ma.colength()? - la)
    }

    /// `f ∈ a R_m` for an ideal of finite colength.
    pub fn locally_contains(&self, f: &Polynomial<C>) -> Result<bool> {
        self.local_basis()?.contains(f)
    }

    /// `b R_m ⊆ a R_m`.
    pub fn locally_contains_ideal(&self, other: &Self) -> Result<bool> {
        for g in &other.gens {
            if !self.locally_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality after localizing at the origin, for ideals of finite colength.
    ///
    /// Equal colengths together with one containment suffice.
    pub fn local_eq(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        if self.colength()? != other.colength()? {
            return Ok(false);
        }
        self.locally_contains_ideal(other)
    }

    /// Ideal locally equal to `a R_m : b R_m`, for `a` of finite colength.
    ///
    /// Works in the Artinian quotient `R/(a + m^N)`: the colon is the kernel
    /// of `v ↦ (v h_1, ..., v h_k)` for generators `h_j` of `b`.
    pub fn colon_local(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let data = self.local_data()?;
        let q = ArtinianQuotient::new(&data.basis)?;
        let n = q.dim();
        let mut rows: Vec<Vec<C>> = Vec::new();
        for h in &other.gens {
            let images = q.multiplication_images(h);
            for t in 0..n {
                let row: Vec<C> = images.iter().map(|img| img[t].clone()).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let kernel = linalg::kernel(&rows, n);
        let mut gens = data.basis.polynomials();
        for v in kernel {
            gens.push(q.polynomial(&v));
        }
        let gb = groebner_truncated(&gens, MonomialOrder::GrevLex, data.report.truncation)?;
        Self::new(gb.polynomials())
    }
}

fn drop_first_variable<C: Coeff>(p: &Polynomial<C>, order: MonomialOrder) -> Polynomial<C> {
    let n = p.arity() - 1;
    let terms = p.terms().iter().map(|(m, c)| (Monomial::new(&m.exps()[1..]), c.clone()));
    Polynomial::from_terms(terms, n, order)
}

/// Finite-dimensional quotient `R/(a + m^N)` with its standard monomial basis.
pub(crate) struct ArtinianQuotient<'a, C> {
    basis: &'a GroebnerBasis<C>,
    index: StdIndex,
    /// `NF(x * s)` and `NF(y * s)` for each standard monomial `s`, as sparse columns.
    times: [Vec<Vec<(usize, C)>>; 2],
    /// For each standard monomial other than 1: a variable and the index of `s / var`.
    parent: Vec<Option<(usize, usize)>>,
}

impl<'a, C: Coeff> ArtinianQuotient<'a, C> {
    pub(crate) fn new(basis: &'a GroebnerBasis<C>) -> Result<Self> {
        let items = match basis.standard_monomials() {
            StandardMonomials::Finite(v) => v,
            StandardMonomials::Infinite => return Err(Error::NonFinite),
        };
        let mut items = items;
        items.sort_by_key(|(_, m)| (m.degree(), m.exp(1)));
        let index = StdIndex::new(items);
        let mut times: [Vec<Vec<(usize, C)>>; 2] = [Vec::new(), Vec::new()];
        for (var, col) in times.iter_mut().enumerate() {
            for (_, s) in index.items() {
                let m = s.mul(&Monomial::var(2, var, 1));
                let sparse = match index.index(0, &m) {
                    Some(i) => vec![(i, C::one())],
                    None => {
                        let p = Polynomial::monomial(m, MonomialOrder::GrevLex);
                        let v = basis.coordinates(&p, &index);
                        v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                    }
                };
                col.push(sparse);
            }
        }
        let parent = index
            .items()
            .iter()
            .map(|(_, s)| {
                (0..2).find(|&v| s.exp(v) > 0).map(|v| {
                    let mut e = [s.exp(0), s.exp(1)];
                    e[v] -= 1;
                    (v, index.index(0, &Monomial::xy(e[0], e[1])).expect("staircase is closed under division"))
                })
            })
            .collect();
        Ok(ArtinianQuotient { basis, index, times, parent })
    }

    pub(crate) fn dim(&self) -> usize {
        self.index.len()
    }

    pub(crate) fn coordinates(&self, f: &Polynomial<C>) -> Vec<C> {
        self.basis.coordinates(f, &self.index)
    }

    fn apply(&self, var: usize, v: &[C]) -> Vec<C> {
        let mut out = vec![C::zero(); v.len()];
        for (s, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, a) in &self.times[var][s] {
                out[*t] = out[*t].add(&a.mul(c));
            }
        }
        out
    }

    /// Coordinates of `NF(s * h)` for every standard monomial `s`.
    pub(crate) fn multiplication_images(&self, h: &Polynomial<C>) -> Vec<Vec<C>> {
        let mut out: Vec<Vec<C>> = Vec::with_capacity(self.dim());
        for s in 0..self.dim() {
            let img = match self.parent[s] {
                None => self.coordinates(h),
                Some((var, p)) => self.apply(var, &out[p]),
            };
            out.push(img);
        }
        out
    }

    pub(crate) fn polynomial(&self, v: &[C]) -> Polynomial<C> {
        let terms = self
            .index
            .items()
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|((_, m), c)| (*m, c.clone()));
        Polynomial::from_terms(terms, 2, MonomialOrder::GrevLex)
    }
}
