//! Sparse multivariate polynomials over a [`Coeff`] field.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{is_negative, Coeff};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, DEGREE_CAP, MAX_VARS};

/// Polynomial as a list of terms sorted strictly decreasing under `order`.
///
/// No stored coefficient is zero; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<C> {
    terms: Vec<(Monomial, C)>,
    arity: u8,
    order: MonomialOrder,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(arity: usize, order: MonomialOrder) -> Self {
        assert!(arity >= 1 && arity <= MAX_VARS);
        Polynomial { terms: Vec::new(), arity: arity as u8, order }
    }

    pub fn constant(c: C, arity: usize, order: MonomialOrder) -> Self {
        Self::term(c, Monomial::one(arity), order)
    }

    pub fn one(arity: usize, order: MonomialOrder) -> Self {
        Self::constant(C::one(), arity, order)
    }

    pub fn term(c: C, m: Monomial, order: MonomialOrder) -> Self {
        let arity = m.arity();
        if c.is_zero() {
            Self::zero(arity, order)
        } else {
            Polynomial { terms: alloc::vec![(m, c)], arity: arity as u8, order }
        }
    }

    pub fn monomial(m: Monomial, order: MonomialOrder) -> Self {
        Self::term(C::one(), m, order)
    }

    /// `x^a y^b` with coefficient one, in grevlex on two variables.
    pub fn xy(a: u16, b: u16) -> Self {
        Self::monomial(Monomial::xy(a, b), MonomialOrder::GrevLex)
    }

    /// Build from arbitrary terms: sorts, merges equal monomials, drops zeros.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Monomial, C)>,
        arity: usize,
        order: MonomialOrder,
    ) -> Self {
        let mut keyed: Vec<(u128, Monomial, C)> = terms
            .into_iter()
            .map(|(m, c)| {
                assert_eq!(m.arity(), arity, "term arity differs from polynomial arity");
                (order.key(&m), m, c)
            })
            .collect();
        keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(keyed.len());
        let mut last_key = None;
        for (k, m, c) in keyed {
            if last_key == Some(k) {
                let slot = out.last_mut().expect("previous term");
                slot.1 = slot.1.add(&c);
            } else {
                if let Some((_, prev)) = out.last() {
                    if prev.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
                last_key = Some(k);
            }
        }
        if let Some((_, prev)) = out.last() {
            if prev.is_zero() {
                out.pop();
            }
        }
        Polynomial { terms: out, arity: arity as u8, order }
    }

    /// Trusted constructor for terms already in canonical order.
    pub(crate) fn from_sorted_terms(
        terms: Vec<(Monomial, C)>,
        arity: usize,
        order: MonomialOrder,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.key(&w[0].0) > order.key(&w[1].0)));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms, arity: arity as u8, order }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest total degree of a term (the m-adic order).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let other_cow;
        let other = if other.order != self.order {
            other_cow = other.reorder(self.order);
            &other_cow
        } else {
            other
        };
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ord.key(ma).cmp(&ord.key(mb)) {
                core::cmp::Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                core::cmp::Ordering::Less => {
                    out.push((*mb, if negate { cb.neg() } else { cb.clone() }));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..].iter().map(|(m, c)| (*m, if negate { c.neg() } else { c.clone() })),
        );
        Polynomial { terms: out, arity: self.arity, order: ord }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a + b > DEGREE_CAP {
                return Err(Error::DegreeCap { degree: a + b });
            }
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.arity(), self.order);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.reorder(self.order).mul_term(m, c);
        }
        let prods = self
            .terms
            .iter()
            .flat_map(|(ma, ca)| other.terms.iter().map(move |(mb, cb)| (ma.mul(mb), ca.mul(cb))));
        Self::from_terms(prods, self.arity(), self.order)
    }

    /// Multiply by `c * m`. Term order is preserved because orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity(), self.order);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d.mul(c))).collect();
        Polynomial { terms, arity: self.arity, order: self.order }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul_term(m, &C::one())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::one(self.arity()), c)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.arity(), self.order);
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Same polynomial sorted under another order.
    pub fn reorder(&self, order: MonomialOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| order.key(&b.0).cmp(&order.key(&a.0)));
        Polynomial { terms, arity: self.arity, order }
    }

    /// Reinterpret in another arity, mapping variable `i` to `map[i]`.
    pub fn remap(&self, arity: usize, map: &[usize], order: MonomialOrder) -> Self {
        assert_eq!(map.len(), self.arity());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Monomial::one(arity);
            for (i, &j) in map.iter().enumerate() {
                e.set_exp(j, m.exp(i));
            }
            (e, c.clone())
        });
        Self::from_terms(terms, arity, order)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let d = d.reorder(self.order);
        let (dm, dc) = d.leading_term().expect("nonzero").clone();
        let dinv = dc.inv().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            let q = dm.quotient_of(&m)?;
            let qc = c.mul(&dinv);
            rem = rem.merge(&d.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Some(Self::from_terms(quot, self.arity(), self.order))
    }

    /// Drop every term of total degree `>= n`.
    pub fn truncate(&self, n: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() < n).cloned().collect();
        Polynomial { terms, arity: self.arity, order: self.order }
    }

    /// Content-free representative: monic over any field.
    pub fn normalized(&self) -> Self {
        self.monic()
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomial arities differ")
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomial arities differ")
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial product rejected")
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&C::one().neg())
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;
    use crate::parse::parse_poly;

    type P = Polynomial<Rational>;

    fn p(s: &str) -> P {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x + y") + &p("x - y"), p("2*x"));
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert!((&p("x^2 + x*y") * &P::zero(2, MonomialOrder::GrevLex)).is_zero());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = p("x");
        let b: P = parse_poly("t", 3).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::ArityMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn degree_cap_enforced() {
        let a = P::xy(300, 0);
        assert!(matches!(a.try_mul(&a), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn exact_division() {
        let f = p("x^3 - y^3");
        let d = p("x - y");
        assert_eq!(f.div_exact(&d).unwrap(), p("x^2 + x*y + y^2"));
        assert!(p("x^2 + 1").div_exact(&p("x")).is_none());
    }

    #[test]
    fn leading_term_is_largest() {
        let f = p("y^3 + x^2*y + x");
        assert_eq!(f.leading_monomial().unwrap(), Monomial::xy(2, 1));
        assert_eq!(f.reorder(MonomialOrder::Lex).leading_monomial().unwrap(), Monomial::xy(2, 1));
        assert_eq!(p("y^9 + x").reorder(MonomialOrder::Lex).leading_monomial().unwrap(), Monomial::xy(1, 0));
    }
}
