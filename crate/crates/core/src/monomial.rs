//! Exponent vectors and monomial orders.

use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 4;

/// Variable names by position.
pub const VAR_NAMES: [char; MAX_VARS] = ['x', 'y', 't', 'u'];

/// Polynomials of larger total degree are rejected.
pub const DEGREE_CAP: u32 = 512;

/// Exponent vector `x^a y^b t^c u^d` of a fixed arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    arity: u8,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        assert!(arity >= 1 && arity <= MAX_VARS, "arity out of range");
        Monomial { exps: [0; MAX_VARS], arity: arity as u8 }
    }

    pub fn new(exps: &[u16]) -> Self {
        assert!(!exps.is_empty() && exps.len() <= MAX_VARS, "arity out of range");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { exps: e, arity: exps.len() as u8 }
    }

    /// `x^a y^b` in the two working variables.
    pub fn xy(a: u16, b: u16) -> Self {
        Monomial::new(&[a, b])
    }

    pub fn var(arity: usize, index: usize, power: u16) -> Self {
        let mut m = Monomial::one(arity);
        m.exps[index] = power;
        m
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps[..self.arity as usize]
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Degree in the first two variables only.
    #[inline]
    pub fn xy_degree(&self) -> u32 {
        self.exps[0] as u32 + self.exps[1] as u32
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity, other.arity);
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial { exps: e, arity: self.arity }
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        if self.degree() + other.degree() > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: self.degree() + other.degree() });
        }
        Ok(self.mul(other))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Some(Monomial { exps: e, arity: self.arity })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        Monomial { exps: e, arity: self.arity }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        Monomial { exps: e, arity: self.arity }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the variable when this monomial is a nontrivial pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps().iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Same exponents viewed in a different arity. Extra variables are zero.
    pub fn with_arity(&self, arity: usize) -> Monomial {
        let mut m = Monomial::one(arity);
        let n = arity.min(self.arity());
        m.exps[..n].copy_from_slice(&self.exps[..n]);
        m
    }

    pub(crate) fn set_exp(&mut self, i: usize, e: u16) {
        self.exps[i] = e;
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[i], e)?;
            }
        }
        Ok(())
    }
}

/// Term order on monomials of a fixed arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    /// Eliminates the first `k` variables: compares grevlex on the block of
    /// the first `k` variables, then grevlex on the rest.
    BlockElim(u8),
}

const FIELD: u32 = 16;
const MASK: u128 = 0xFFFF;

impl MonomialOrder {
    /// Integer key whose natural order agrees with the monomial order.
    ///
    /// Keys are affine in the exponents, so `key(m * w) = key(m) + key(w) - key(1)`.
    #[inline]
    pub fn key(&self, m: &Monomial) -> u128 {
        let e = &m.exps;
        match *self {
            MonomialOrder::GrevLex => {
                let deg = e.iter().map(|&v| v as u128).sum::<u128>();
                let mut k = deg;
                for i in (0..MAX_VARS).rev() {
                    k = (k << FIELD) | (MASK - e[i] as u128);
                }
                k
            }
            MonomialOrder::Lex => {
                let mut k = 0u128;
                for &v in e.iter() {
                    k = (k << FIELD) | v as u128;
                }
                k
            }
            MonomialOrder::BlockElim(b) => {
                let b = b as usize;
                let d1 = e[..b].iter().map(|&v| v as u128).sum::<u128>();
                let mut k = d1;
                for i in (0..b).rev() {
                    k = (k << FIELD) | (MASK - e[i] as u128);
                }
                let d2 = e[b..].iter().map(|&v| v as u128).sum::<u128>();
                k = (k << FIELD) | d2;
                for i in (b..MAX_VARS).rev() {
                    k = (k << FIELD) | (MASK - e[i] as u128);
                }
                k
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Compare two monomials of equal arity under `ord`.
pub fn compare(a: &Monomial, b: &Monomial, ord: MonomialOrder) -> Result<Ordering> {
    if a.arity != b.arity {
        return Err(Error::ArityMismatch { left: a.arity(), right: b.arity() });
    }
    if let MonomialOrder::BlockElim(k) = ord {
        if k as usize > a.arity() {
            return Err(Error::InvalidInput("elimination block larger than arity".into()));
        }
    }
    Ok(ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grevlex_examples() {
        let x2 = Monomial::xy(2, 0);
        let xy = Monomial::xy(1, 1);
        assert_eq!(compare(&x2, &xy, MonomialOrder::GrevLex).unwrap(), Ordering::Greater);
        // x*y^2 vs x^2*t in three variables: equal degree, smaller t-exponent wins
        let a = Monomial::new(&[1, 2, 0]);
        let b = Monomial::new(&[2, 0, 1]);
        assert_eq!(compare(&a, &b, MonomialOrder::GrevLex).unwrap(), Ordering::Greater);
    }

    #[test]
    fn lex_examples() {
        let x = Monomial::xy(1, 0);
        let y9 = Monomial::xy(0, 9);
        assert_eq!(compare(&x, &y9, MonomialOrder::Lex).unwrap(), Ordering::Greater);
        assert_eq!(compare(&x, &x, MonomialOrder::Lex).unwrap(), Ordering::Equal);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let ord = MonomialOrder::BlockElim(1);
        let t = Monomial::new(&[1, 0, 0]);
        let big = Monomial::new(&[0, 30, 30]);
        assert_eq!(ord.cmp(&t, &big), Ordering::Greater);
    }

    #[test]
    fn arity_mismatch_rejected() {
        let a = Monomial::new(&[1, 0]);
        let b = Monomial::new(&[1, 0, 0]);
        assert!(matches!(
            compare(&a, &b, MonomialOrder::GrevLex),
            Err(Error::ArityMismatch { .. })
        ));
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..20, 3).prop_map(|v| Monomial::new(&v))
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::GrevLex),
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::BlockElim(1)),
            Just(MonomialOrder::BlockElim(2)),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(u in mono3(), v in mono3(), w in mono3(), ord in orders()) {
            let c = ord.cmp(&u, &v);
            prop_assert_eq!(ord.cmp(&u.mul(&w), &v.mul(&w)), c);
            prop_assert!(ord.cmp(&Monomial::one(3), &w) != Ordering::Greater);
            let one = ord.key(&Monomial::one(3));
            prop_assert_eq!(ord.key(&u.mul(&w)), ord.key(&u) + ord.key(&w) - one);
        }

        #[test]
        fn orders_are_total(u in mono3(), v in mono3(), ord in orders()) {
            prop_assert_eq!(ord.cmp(&u, &v) == Ordering::Equal, u == v);
            prop_assert_eq!(ord.cmp(&u, &v), ord.cmp(&v, &u).reverse());
        }
    }
}
