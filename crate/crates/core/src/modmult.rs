//! Submodules of finite colength in `F = R^r` and their Buchsbaum-Rim
//! multiplicity.
//!
//! For `U ⊆ M` both of finite colength, `Fitt0(F/U) ⊆ Fitt0(F/M)`, so
//! `e(Fitt0(F/U)) >= e(Fitt0(F/M))` with equality exactly when `U` is a
//! reduction of `M`. A random pair `(f, g)` in `Fitt0(F/U)` with
//! `ℓ(R/(f, g)) = e(Fitt0(F/M))` closes the sandwich and certifies `U`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::groebner::{groebner_module_truncated, FreeModuleElement};
use crate::hilbert::{self, Certificate, MultiplicityReport, Route};
use crate::ideal::{certify_local, Ideal, LocalData, LocalLengthReport, FIRST_TRUNCATION};
use crate::matrix::{fitting_ideal, subsets, PolyMatrix};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::sampler::GeneralElementSampler;

/// Largest rank accepted by the λ-oracle.
pub const LAMBDA_MAX_RANK: usize = 3;
/// Largest symmetric power used by the λ-oracle.
pub const LAMBDA_MAX_N: u32 = 10;
/// Largest entry degree accepted by the λ-oracle.
pub const LAMBDA_MAX_ENTRY_DEGREE: u32 = 6;

/// `M ⊆ R^r` given by the columns of an `r x n` matrix.
pub struct ModulePresentation<C> {
    matrix: PolyMatrix<C>,
    fitt0: OnceBox<Ideal<C>>,
    local: OnceBox<LocalData<C>>,
}

impl<C: Coeff> Clone for ModulePresentation<C> {
    fn clone(&self) -> Self {
        let out = ModulePresentation::new_unchecked(self.matrix.clone());
        if let Some(f) = self.fitt0.get() {
            let _ = out.fitt0.set(Box::new(f.clone()));
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for ModulePresentation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModulePresentation({})", self.matrix)
    }
}

impl<C: Coeff> ModulePresentation<C> {
    fn new_unchecked(matrix: PolyMatrix<C>) -> Self {
        ModulePresentation { matrix, fitt0: OnceBox::new(), local: OnceBox::new() }
    }

    pub fn new(matrix: PolyMatrix<C>) -> Result<Self> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::InvalidInput("empty presentation matrix".into()));
        }
        if matrix.arity() != 2 {
            return Err(Error::InvalidInput("modules live over k[x, y]".into()));
        }
        Ok(Self::new_unchecked(matrix))
    }

    pub fn parse(rows: &[Vec<&str>]) -> Result<Self> {
        Self::new(PolyMatrix::parse(rows)?)
    }

    pub fn from_columns(cols: &[FreeModuleElement<C>]) -> Result<Self> {
        Self::new(PolyMatrix::from_columns(cols)?)
    }

    pub fn matrix(&self) -> &PolyMatrix<C> {
        &self.matrix
    }

    /// Rank `r` of the ambient free module.
    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn ngens(&self) -> usize {
        self.matrix.cols()
    }

    pub fn columns(&self) -> Vec<FreeModuleElement<C>> {
        self.matrix.columns()
    }

    /// `Fitt0(F/M)`, the ideal of maximal minors.
    pub fn fitt0(&self) -> &Ideal<C> {
        self.fitt0.get_or_init(|| Box::new(fitting_ideal(&self.matrix, 0)))
    }

    fn local_data(&self) -> Result<&LocalData<C>> {
        self.local.get_or_try_init(|| {
            let cols = self.columns();
            certify_local(FIRST_TRUNCATION, |n| groebner_module_truncated(&cols, MonomialOrder::GrevLex, n))
                .map(Box::new)
        })
    }

    /// `ℓ(F/M)` localized at the origin, from a module basis of `M + m^N F`.
    pub fn local_colength(&self) -> Result<LocalLengthReport> {
        Ok(self.local_data()?.report.clone())
    }

    pub fn colength(&self) -> Result<u64> {
        Ok(self.local_data()?.report.value)
    }

    /// Column `v` lies in `M` after localizing.
    pub fn locally_contains(&self, v: &FreeModuleElement<C>) -> Result<bool> {
        self.local_data()?.basis.contains_vector(v)
    }

    pub fn locally_contains_module(&self, other: &Self) -> Result<bool> {
        if other.rank() != self.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        for c in other.columns() {
            if !self.locally_contains(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `Fitt0(F/M)` has finite nonzero colength.
    pub fn has_finite_colength(&self) -> Result<bool> {
        if self.ngens() < self.rank() {
            return Ok(false);
        }
        self.fitt0().is_locally_m_primary()
    }

    fn require_finite(&self) -> Result<()> {
        if self.has_finite_colength()? {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }
}

/// `e(Fitt0(F/M))`, exact for monomial Fitting ideals.
pub fn fitt0_multiplicity<C: Coeff>(m: &ModulePresentation<C>, sampler: &mut GeneralElementSampler) -> Result<u64> {
    m.require_finite()?;
    hilbert::e(m.fitt0(), sampler)
}

/// Outcome of comparing `e(Fitt0(F/U))` with `e(Fitt0(F/M))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTest {
    pub is_reduction: bool,
    /// `e(Fitt0(F/M))`.
    pub e_module: u64,
    /// `e(Fitt0(F/U))` when it was determined; `None` for `U` of infinite colength.
    pub e_sub: Option<u64>,
}

/// Rees' criterion through Fitting ideals: `U ⊆ M` is a reduction iff
/// `e(Fitt0(F/U)) = e(Fitt0(F/M))`.
pub fn is_reduction_module<C: Coeff>(
    u: &ModulePresentation<C>,
    m: &ModulePresentation<C>,
    sampler: &mut GeneralElementSampler,
) -> Result<ReductionTest> {
    if u.rank() != m.rank() {
        return Err(Error::RankMismatch { left: u.rank(), right: m.rank() });
    }
    let e_module = fitt0_multiplicity(m, sampler)?;
    if !m.locally_contains_module(u)? {
        return Err(Error::ContainmentViolated);
    }
    if !u.has_finite_colength()? {
        return Ok(ReductionTest { is_reduction: false, e_module, e_sub: None });
    }
    let e_sub = sub_fitt0_multiplicity(u, e_module, sampler)?;
    Ok(ReductionTest { is_reduction: e_sub == e_module, e_module, e_sub: Some(e_sub) })
}

/// `e(Fitt0(F/U))` using the lower bound `e(Fitt0(F/M))` for `U ⊆ M`.
fn sub_fitt0_multiplicity<C: Coeff>(
    u: &ModulePresentation<C>,
    lower: u64,
    sampler: &mut GeneralElementSampler,
) -> Result<u64> {
    let k = u.fitt0();
    if k.is_monomial() {
        return hilbert::e(k, sampler);
    }
    if k.gens().len() <= 2 {
        return k.colength();
    }
    Ok(hilbert::minimal_reduction_with_bound(k, sampler, Some(lower))?.value)
}

/// Minimal reduction of `M` with `r + 1` columns, and `br(M) = ℓ(F/U)`.
#[derive(Clone, Debug)]
pub struct ModuleReduction<C: Coeff> {
    pub module: ModulePresentation<C>,
    /// `ℓ(R/Fitt0(F/U))`, which equals `br(M)`.
    pub br: u64,
    /// `e(Fitt0(F/M)) = e(Fitt0(F/U))`.
    pub e_fitt0: u64,
    /// `ℓ(R/Fitt0(F/U))` for every candidate tried (`None`: infinite colength).
    pub trial_values: Vec<Option<u64>>,
    pub certificate: Certificate,
}

/// Random `r + 1` column combinations of `M`, certified to be a reduction.
/// When `M` has at most `r + 1` columns it is returned unchanged.
pub fn minimal_reduction_module<C: Coeff>(
    m: &ModulePresentation<C>,
    sampler: &mut GeneralElementSampler,
) -> Result<ModuleReduction<C>> {
    m.require_finite()?;
    let r = m.rank();
    let e_fitt0 = fitt0_multiplicity(m, sampler)?;
    if m.ngens() <= r + 1 {
        let br = m.fitt0().colength()?;
        return Ok(ModuleReduction {
            module: m.clone(),
            br,
            e_fitt0,
            trial_values: vec![Some(br)],
            certificate: Certificate::Exact,
        });
    }
    let cols = m.columns();
    let mut values = Vec::new();
    for _ in 0..sampler.trials() {
        let picked = (0..=r)
            .map(|_| sampler.column_combination(&cols))
            .collect::<Result<Vec<_>>>()?;
        let u = ModulePresentation::from_columns(&picked)?;
        if !u.has_finite_colength()? {
            values.push(None);
            continue;
        }
        let lu = u.fitt0().colength()?;
        values.push(Some(lu));
        let e_u = match sub_fitt0_multiplicity(&u, e_fitt0, sampler) {
            Ok(v) => v,
            Err(Error::GenericityFailure { .. }) => continue,
            Err(e) => return Err(e),
        };
        if e_u == e_fitt0 {
            return Ok(ModuleReduction {
                module: u,
                br: lu,
                e_fitt0,
                trial_values: values,
                certificate: Certificate::LowerBound,
            });
        }
    }
    Err(Error::GenericityFailure { trials: values.len(), values })
}

/// `λ(n) = ℓ(S_n(F)/R_n(M))` for `n = 0..=N` and its stabilized top difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTable {
    pub rank: usize,
    pub values: Vec<(u32, u64)>,
    /// `(r + 1)`-th finite differences, indexed by their last `n`.
    pub differences: Vec<(u32, i64)>,
    /// Common value of three consecutive top differences, which is `br(M)`.
    pub stabilized: Option<u64>,
}

/// Compute `λ(n)` through symmetric powers of `F`.
pub fn lambda_table<C: Coeff>(m: &ModulePresentation<C>, n_max: u32) -> Result<LambdaTable> {
    let r = m.rank();
    if r > LAMBDA_MAX_RANK {
        return Err(Error::SizeCap(format!("λ-oracle needs rank <= {LAMBDA_MAX_RANK}")));
    }
    if n_max > LAMBDA_MAX_N {
        return Err(Error::SizeCap(format!("λ-oracle needs N <= {LAMBDA_MAX_N}")));
    }
    let deg = m.matrix.row_entries().iter().flatten().filter_map(|p| p.degree()).max().unwrap_or(0);
    if deg > LAMBDA_MAX_ENTRY_DEGREE {
        return Err(Error::SizeCap(format!("λ-oracle needs entry degree <= {LAMBDA_MAX_ENTRY_DEGREE}")));
    }
    m.require_finite()?;
    let mut values = vec![(0u32, 0u64)];
    for n in 1..=n_max {
        values.push((n, symmetric_power_colength(m, n)?));
    }
    let order = r + 1;
    let raw: Vec<i64> = values.iter().map(|v| v.1 as i64).collect();
    let mut differences = Vec::new();
    for end in order..raw.len() {
        // order-th forward difference ending at `end`
        let mut d = 0i64;
        for k in 0..=order {
            let c = binomial(order as u64, k as u64) as i64;
            let v = raw[end - k];
            d += if k % 2 == 0 { c * v } else { -c * v };
        }
        differences.push((end as u32, d));
    }
    let stabilized = differences
        .windows(3)
        .rev()
        .find(|w| w[0].1 == w[1].1 && w[1].1 == w[2].1)
        .map(|w| w[2].1.max(0) as u64);
    Ok(LambdaTable { rank: r, values, differences, stabilized })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent vectors of degree `n` in `r` variables, in a fixed order.
fn symmetric_basis(r: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; r];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    rec(0, n, &mut cur, &mut out);
    out
}

/// `ℓ(S_n(F)/R_n(M))` where `R_n(M)` is spanned by products of `n` columns.
fn symmetric_power_colength<C: Coeff>(m: &ModulePresentation<C>, n: u32) -> Result<u64> {
    let r = m.rank();
    let basis = symmetric_basis(r, n);
    let index = |e: &[u32]| basis.iter().position(|b| b.as_slice() == e).expect("basis exponent");
    let cols = m.columns();
    let k = cols.len();
    let zero = Polynomial::zero(2, MonomialOrder::GrevLex);
    let mut gens: Vec<FreeModuleElement<C>> = Vec::new();
    // multisets of n columns, as non-decreasing index sequences
    for combo in subsets(k + n as usize - 1, n as usize) {
        let picks: Vec<usize> = combo.iter().enumerate().map(|(i, c)| c - i).collect();
        // product of linear forms sum_i col[i] e_i, expanded over S_n(F)
        let mut poly: Vec<(Vec<u32>, Polynomial<C>)> = vec![(vec![0; r], Polynomial::one(2, MonomialOrder::GrevLex))];
        for &j in &picks {
            let mut next: Vec<(Vec<u32>, Polynomial<C>)> = Vec::new();
            for (e, c) in &poly {
                for i in 0..r {
                    let entry = cols[j].comp(i);
                    if entry.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[i] += 1;
                    let prod = c.try_mul(entry)?;
                    match next.iter_mut().find(|(f, _)| *f == e2) {
                        Some((_, acc)) => *acc = &*acc + &prod,
                        None => next.push((e2, prod)),
                    }
                }
            }
            poly = next;
        }
        let mut comps = vec![zero.clone(); basis.len()];
        for (e, c) in poly {
            comps[index(&e)] = c;
        }
        let v = FreeModuleElement::new(comps)?;
        if !v.is_zero() {
            gens.push(v);
        }
    }
    if gens.is_empty() {
        return Err(Error::NonFinite);
    }
    let data = certify_local(FIRST_TRUNCATION, |t| groebner_module_truncated(&gens, MonomialOrder::GrevLex, t))?;
    Ok(data.report.value)
}

/// Buchsbaum-Rim multiplicity by the requested route(s).
pub fn buchsbaum_rim<C: Coeff>(
    m: &ModulePresentation<C>,
    route: Route,
    sampler: &mut GeneralElementSampler,
) -> Result<MultiplicityReport> {
    let reduction = |s: &mut GeneralElementSampler| -> Result<MultiplicityReport> {
        let red = minimal_reduction_module(m, s)?;
        Ok(MultiplicityReport {
            value: red.br,
            method: Route::Reduction,
            trials: red.trial_values.len(),
            trial_values: red.trial_values,
            routes: vec![(Route::Reduction, red.br)],
            consistent: true,
            certificate: Some(red.certificate),
        })
    };
    let lambda = || -> Result<u64> {
        let t = lambda_table(m, LAMBDA_MAX_N.min(8))?;
        t.stabilized.ok_or(Error::NoStabilization)
    };
    match route {
        Route::Reduction => reduction(sampler),
        Route::Lambda => {
            let v = lambda()?;
            Ok(MultiplicityReport {
                value: v,
                method: Route::Lambda,
                trials: 0,
                trial_values: Vec::new(),
                routes: vec![(Route::Lambda, v)],
                consistent: true,
                certificate: None,
            })
        }
        Route::All => {
            let mut rep = reduction(sampler)?;
            rep.method = Route::All;
            let can_lambda = m.rank() <= LAMBDA_MAX_RANK
                && m.matrix.row_entries().iter().flatten().filter_map(|p| p.degree()).max().unwrap_or(0)
                    <= LAMBDA_MAX_ENTRY_DEGREE;
            if can_lambda {
                let v = lambda()?;
                rep.routes.push((Route::Lambda, v));
                rep.consistent = v == rep.value;
                if rep.consistent {
                    rep.certificate = Some(Certificate::CrossRoute);
                }
            }
            Ok(rep)
        }
        Route::Difference | Route::Newton => {
            if m.rank() == 1 {
                let ideal = m.fitt0().clone();
                hilbert::multiplicity(&ideal, route, sampler)
            } else {
                Err(Error::InvalidInput(format!("route {route} applies to ideals only")))
            }
        }
    }
}

/// `br(M)` with the default certified reduction route.
pub fn br<C: Coeff>(m: &ModulePresentation<C>, sampler: &mut GeneralElementSampler) -> Result<u64> {
    Ok(minimal_reduction_module(m, sampler)?.br)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp31, Rational};

    fn module(rows: &[&[&str]]) -> ModulePresentation<Rational> {
        ModulePresentation::parse(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_module_is_its_own_reduction() {
        let m = module(&[&["x", "0", "y"], &["0", "y", "x"]]);
        let mut s = GeneralElementSampler::new(0);
        let red = minimal_reduction_module(&m, &mut s).unwrap();
        assert_eq!(red.module.ngens(), 3);
        assert_eq!(red.br, 3);
        assert_eq!(m.colength().unwrap(), 3);
        let t = is_reduction_module(&m, &m, &mut s).unwrap();
        assert!(t.is_reduction);
    }

    #[test]
    fn two_columns_are_not_a_reduction() {
        let m = module(&[&["x", "0", "y"], &["0", "y", "x"]]);
        let u = module(&[&["x", "0"], &["0", "y"]]);
        let mut s = GeneralElementSampler::new(0);
        let t = is_reduction_module(&u, &m, &mut s).unwrap();
        assert!(!t.is_reduction);
        assert_eq!(t.e_sub, None);
    }

    #[test]
    fn containment_is_checked() {
        let m = module(&[&["x^2", "0", "y^2"], &["0", "y^2", "x^2"]]);
        let u = module(&[&["x", "0", "y"], &["0", "y", "x"]]);
        let mut s = GeneralElementSampler::new(0);
        assert_eq!(is_reduction_module(&u, &m, &mut s), Err(Error::ContainmentViolated));
    }

    #[test]
    fn rank_one_is_hilbert_samuel() {
        let m = module(&[&["x^2", "x*y", "y^2"]]);
        let mut s = GeneralElementSampler::new(0);
        assert_eq!(br(&m, &mut s).unwrap(), 4);
        let t = lambda_table(&module(&[&["x", "y"]]), 5).unwrap();
        for (n, v) in &t.values {
            assert_eq!(*v as u32, n * (n + 1) / 2);
        }
    }

    #[test]
    fn direct_sum_of_maximal_ideals() {
        let m = module(&[&["x", "y", "0", "0"], &["0", "0", "x", "y"]]);
        let mut s = GeneralElementSampler::new(2);
        let red = minimal_reduction_module(&m, &mut s).unwrap();
        assert_eq!(red.br, 3);
        let t = lambda_table(&m, 7).unwrap();
        assert_eq!(t.stabilized, Some(3));
    }

    #[test]
    fn lambda_matches_reduction_for_small_module() {
        let m = module(&[&["x", "0", "y"], &["0", "y", "x"]]);
        let t = lambda_table(&m, 7).unwrap();
        assert_eq!(t.stabilized, Some(3));
    }

    #[test]
    fn quadratic_module() {
        let m: ModulePresentation<Fp31> = ModulePresentation::parse(&[
            vec!["x^2", "x*y", "y^2", "x^3"],
            vec!["y^2", "x^2 + y^2", "x*y", "y^3"],
        ])
        .unwrap();
        let mut s = GeneralElementSampler::new(4);
        let red = minimal_reduction_module(&m, &mut s).unwrap();
        let t = is_reduction_module(&red.module, &m, &mut s).unwrap();
        assert!(t.is_reduction);
        assert_eq!(red.module.colength().unwrap(), red.br);
    }
}
