//! Hilbert-Samuel multiplicity of ideals of finite colength.
//!
//! Three independent routes:
//! * `Reduction`: `ℓ(R/(f, g))` for general `f, g` in the ideal, minimized over trials;
//! * `Difference`: stabilized second difference of `n ↦ ℓ(R/a^n)`;
//! * `Newton`: twice the covolume of the Newton polygon (monomial ideals).
//!
//! For `b = (f, g) ⊆ a` we always have `e(a) <= ℓ(R/b)`, and `e(a) >= e(c)` for
//! the monomial ideal `c ⊇ a` spanned by the terms of the generators. When a
//! trial meets such a lower bound the value is certified outright.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial_ideal::MonomialIdeal;
use crate::sampler::GeneralElementSampler;

/// Largest power used by the difference route.
pub const DIFFERENCE_POWER_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Reduction,
    Difference,
    Newton,
    Lambda,
    All,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Reduction => "REDUCTION",
            Route::Difference => "DIFFERENCE",
            Route::Newton => "NEWTON",
            Route::Lambda => "LAMBDA",
            Route::All => "ALL",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a reduction-route value was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A trial value met a proven lower bound.
    LowerBound,
    /// The minimum was attained by at least two trials.
    RepeatedMinimum,
    /// Agreement with an independent route.
    CrossRoute,
    /// Exact formula (complete intersections, monomial ideals, conventions).
    Exact,
}

/// A multiplicity with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub value: u64,
    pub method: Route,
    pub trials: usize,
    pub trial_values: Vec<Option<u64>>,
    /// Value found by each route that was run.
    pub routes: Vec<(Route, u64)>,
    /// All routes that were run agree.
    pub consistent: bool,
    pub certificate: Option<Certificate>,
}

impl MultiplicityReport {
    fn exact(value: u64, method: Route) -> Self {
        MultiplicityReport {
            value,
            method,
            trials: 0,
            trial_values: Vec::new(),
            routes: vec![(method, value)],
            consistent: true,
            certificate: Some(Certificate::Exact),
        }
    }
}

/// Two-generated reduction `b = (f, g) ⊆ a` with `ℓ(R/b) = e(a)`.
#[derive(Clone, Debug)]
pub struct CertifiedReduction<C: Coeff> {
    pub ideal: Ideal<C>,
    pub value: u64,
    pub trial_values: Vec<Option<u64>>,
    pub certificate: Certificate,
}

/// Lower bound `e(c) <= e(a)` from the monomial ideal of all generator terms.
pub fn newton_lower_bound<C: Coeff>(a: &Ideal<C>) -> Option<u64> {
    if a.arity() != 2 || a.is_zero() {
        return None;
    }
    let c = MonomialIdeal::term_support(a).ok()?;
    c.newton_multiplicity().ok()
}

fn random_pair<C: Coeff>(a: &Ideal<C>, sampler: &mut GeneralElementSampler) -> Result<Ideal<C>> {
    let f = sampler.combination(a.gens());
    let g = sampler.combination(a.gens());
    Ideal::new(vec![f, g])
}

fn colength_or_none<C: Coeff>(b: &Ideal<C>) -> Result<Option<u64>> {
    match b.colength() {
        Ok(v) => Ok(Some(v)),
        Err(Error::NonFinite) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Certified minimal reduction of an ideal of finite colength.
///
/// `known` is an externally proven lower bound on `e(a)`, if any.
pub fn minimal_reduction_ideal<C: Coeff>(
    a: &Ideal<C>,
    sampler: &mut GeneralElementSampler,
) -> Result<CertifiedReduction<C>> {
    minimal_reduction_with_bound(a, sampler, None)
}

pub fn minimal_reduction_with_bound<C: Coeff>(
    a: &Ideal<C>,
    sampler: &mut GeneralElementSampler,
    known: Option<u64>,
) -> Result<CertifiedReduction<C>> {
    let la = match a.colength() {
        Ok(v) => v,
        Err(Error::NonFinite) => return Err(Error::NotMPrimary),
        Err(e) => return Err(e),
    };
    if la == 0 {
        return Err(Error::NotMPrimary);
    }
    let mut lower = la;
    if let Some(n) = newton_lower_bound(a) {
        lower = lower.max(n);
    }
    if let Some(k) = known {
        lower = lower.max(k);
    }
    let mut values: Vec<Option<u64>> = Vec::new();
    let mut best: Option<(Ideal<C>, u64)> = None;
    for _ in 0..sampler.trials() {
        let b = random_pair(a, sampler)?;
        let v = colength_or_none(&b)?;
        values.push(v);
        if let Some(v) = v {
            if v < lower {
                return Err(Error::Mismatch(alloc::format!(
                    "reduction colength {v} below the proven lower bound {lower}"
                )));
            }
            if v == lower {
                return Ok(CertifiedReduction { ideal: b, value: v, trial_values: values, certificate: Certificate::LowerBound });
            }
            if best.as_ref().map_or(true, |(_, bv)| v < *bv) {
                best = Some((b, v));
            }
        }
    }
    let (b, v) = best.ok_or_else(|| Error::GenericityFailure { trials: values.len(), values: values.clone() })?;
    let hits = values.iter().filter(|x| **x == Some(v)).count();
    if hits >= 2 {
        return Ok(CertifiedReduction { ideal: b, value: v, trial_values: values, certificate: Certificate::RepeatedMinimum });
    }
    if let Ok(d) = difference_multiplicity(a, DIFFERENCE_POWER_CAP) {
        if d == v {
            return Ok(CertifiedReduction { ideal: b, value: v, trial_values: values, certificate: Certificate::CrossRoute });
        }
    }
    Err(Error::GenericityFailure { trials: values.len(), values })
}

/// `e(a)` from second differences of `ℓ(R/a^n)`, `n <= cap`.
pub fn difference_multiplicity<C: Coeff>(a: &Ideal<C>, cap: u32) -> Result<u64> {
    difference_table(a, cap).map(|t| t.1)
}

/// Lengths `ℓ(R/a^n)` for `n = 0..` and the stabilized second difference.
pub fn difference_table<C: Coeff>(a: &Ideal<C>, cap: u32) -> Result<(Vec<u64>, u64)> {
    let cap = cap.min(DIFFERENCE_POWER_CAP);
    let mut lengths: Vec<u64> = vec![0];
    let mut diffs: Vec<i64> = Vec::new();
    let mut power = Ideal::unit(a.arity());
    for n in 1..=cap {
        power = power.product(a)?;
        let l = match power.colength() {
            Ok(v) => v,
            Err(Error::NonFinite) => return Err(Error::NotMPrimary),
            Err(e) => return Err(e),
        };
        lengths.push(l);
        if n >= 2 {
            let k = n as usize;
            diffs.push(lengths[k] as i64 - 2 * lengths[k - 1] as i64 + lengths[k - 2] as i64);
            let d = diffs.len();
            if d >= 3 && diffs[d - 1] == diffs[d - 2] && diffs[d - 2] == diffs[d - 3] {
                return Ok((lengths, diffs[d - 1].max(0) as u64));
            }
        }
    }
    Err(Error::NoStabilization)
}

/// `e(a)` as twice the Newton covolume.
pub fn newton_multiplicity<C: Coeff>(a: &Ideal<C>) -> Result<u64> {
    let m = MonomialIdeal::from_ideal(a)?;
    if !m.is_m_primary() && !m.is_unit() {
        return Err(Error::NotMPrimary);
    }
    m.newton_multiplicity()
}

/// Hilbert-Samuel multiplicity by the requested route(s).
pub fn multiplicity<C: Coeff>(
    a: &Ideal<C>,
    route: Route,
    sampler: &mut GeneralElementSampler,
) -> Result<MultiplicityReport> {
    multiplicity_with_cap(a, route, sampler, DIFFERENCE_POWER_CAP)
}

pub fn multiplicity_with_cap<C: Coeff>(
    a: &Ideal<C>,
    route: Route,
    sampler: &mut GeneralElementSampler,
    max_power: u32,
) -> Result<MultiplicityReport> {
    let la = match a.colength() {
        Ok(v) => v,
        Err(Error::NonFinite) => return Err(Error::NotMPrimary),
        Err(e) => return Err(e),
    };
    if la == 0 {
        // the unit ideal: e((1)) = 0 by convention
        return Ok(MultiplicityReport::exact(0, route));
    }
    match route {
        Route::Newton => Ok(MultiplicityReport::exact(newton_multiplicity(a)?, Route::Newton)),
        Route::Difference => {
            let d = difference_multiplicity(a, max_power)?;
            let mut r = MultiplicityReport::exact(d, Route::Difference);
            r.certificate = None;
            Ok(r)
        }
        Route::Reduction => {
            let red = minimal_reduction_ideal(a, sampler)?;
            Ok(MultiplicityReport {
                value: red.value,
                method: Route::Reduction,
                trials: red.trial_values.len(),
                trial_values: red.trial_values,
                routes: vec![(Route::Reduction, red.value)],
                consistent: true,
                certificate: Some(red.certificate),
            })
        }
        Route::Lambda => Err(Error::InvalidInput("LAMBDA applies to modules".into())),
        Route::All => {
            let red = minimal_reduction_ideal(a, sampler)?;
            let mut routes = vec![(Route::Reduction, red.value)];
            routes.push((Route::Difference, difference_multiplicity(a, max_power)?));
            if a.is_monomial() {
                routes.push((Route::Newton, newton_multiplicity(a)?));
            }
            let consistent = routes.iter().all(|(_, v)| *v == red.value);
            Ok(MultiplicityReport {
                value: red.value,
                method: Route::All,
                trials: red.trial_values.len(),
                trial_values: red.trial_values,
                routes,
                consistent,
                certificate: Some(if consistent { Certificate::CrossRoute } else { red.certificate }),
            })
        }
    }
}

/// `e(a)` with the default policy: exact for monomial ideals and complete
/// intersections, otherwise a certified reduction. `e((1)) = 0`.
pub fn e<C: Coeff>(a: &Ideal<C>, sampler: &mut GeneralElementSampler) -> Result<u64> {
    if a.is_monomial() && a.arity() == 2 && !a.is_zero() {
        let m = MonomialIdeal::from_ideal(a)?;
        if m.is_unit() {
            return Ok(0);
        }
        if m.is_m_primary() {
            return m.newton_multiplicity();
        }
    }
    let la = match a.colength() {
        Ok(v) => v,
        Err(Error::NonFinite) => return Err(Error::NotMPrimary),
        Err(err) => return Err(err),
    };
    if la == 0 {
        return Ok(0);
    }
    if a.gens().len() <= 2 {
        return Ok(la);
    }
    Ok(minimal_reduction_ideal(a, sampler)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp31, Rational};
    use crate::parse::parse_poly;

    fn id(gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(gens.iter().map(|s| parse_poly(s, 2).unwrap()).collect()).unwrap()
    }

    #[test]
    fn complete_intersections() {
        let mut s = GeneralElementSampler::new(0);
        for route in [Route::Reduction, Route::Difference, Route::Newton] {
            let r = multiplicity(&id(&["x^3", "y^5"]), route, &mut s).unwrap();
            assert_eq!(r.value, 15, "{route}");
        }
    }

    #[test]
    fn maximal_ideal_squared() {
        let mut s = GeneralElementSampler::new(0);
        let a = id(&["x^2", "x*y", "y^2"]);
        let r = multiplicity(&a, Route::All, &mut s).unwrap();
        assert_eq!(r.value, 4);
        assert!(r.consistent);
        let (lengths, d) = difference_table(&a, 12).unwrap();
        assert_eq!(d, 4);
        for (n, l) in lengths.iter().enumerate() {
            let n = n as u64;
            assert_eq!(*l, 2 * n * n + n);
        }
    }

    #[test]
    fn reduction_of_maximal_ideal_and_powers() {
        let mut s = GeneralElementSampler::new(3);
        let red = minimal_reduction_ideal(&Ideal::<Rational>::maximal(), &mut s).unwrap();
        assert_eq!(red.value, 1);
        let red = minimal_reduction_ideal(&id(&["x^2", "x*y", "y^2"]), &mut s).unwrap();
        assert_eq!(red.value, 4);
        assert_eq!(red.ideal.gens().len(), 2);
        let red = minimal_reduction_ideal(&id(&["x^3", "y^5"]), &mut s).unwrap();
        assert_eq!(red.value, 15);
    }

    #[test]
    fn counterexample_ideal_i() {
        let i: Ideal<Fp31> = Ideal::from_exponents(&[(20, 0), (0, 14)]).unwrap();
        let mut s = GeneralElementSampler::new(0);
        assert_eq!(multiplicity(&i, Route::Reduction, &mut s).unwrap().value, 280);
        assert_eq!(multiplicity(&i, Route::Newton, &mut s).unwrap().value, 280);
    }

    #[test]
    fn unit_ideal_convention() {
        let mut s = GeneralElementSampler::new(0);
        assert_eq!(e(&Ideal::<Rational>::unit(2), &mut s).unwrap(), 0);
        assert_eq!(e(&id(&["x - 1", "y"]), &mut s).unwrap(), 0);
        assert_eq!(multiplicity(&id(&["x"]), Route::Reduction, &mut s), Err(Error::NotMPrimary));
        assert_eq!(multiplicity(&id(&["x^2 + y", "y^2"]), Route::Newton, &mut s), Err(Error::NonMonomial));
    }

    #[test]
    fn non_monomial_routes_agree() {
        let mut s = GeneralElementSampler::new(5);
        let a: Ideal<Fp31> = Ideal::new(vec![
            parse_poly("x^2 - y^3", 2).unwrap(),
            parse_poly("x*y^2", 2).unwrap(),
            parse_poly("y^4 + x^3", 2).unwrap(),
        ])
        .unwrap();
        let r = multiplicity(&a, Route::All, &mut s).unwrap();
        assert!(r.consistent, "{r:?}");
        assert!(a.colength().unwrap() <= r.value);
    }
}
