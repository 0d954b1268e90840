//! Monomial ideals of `k[x, y]`: staircases, Newton polygons, integral
//! closures and Hilbert-Burch matrices.

use alloc::vec::Vec;

use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Minimal monomial generators `x^a y^b`, with `a` increasing and `b` decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<(u32, u32)>,
}

/// Lower-left boundary of the convex hull of the exponent set plus the quadrant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Vertices from the `y`-axis to the `x`-axis.
    pub vertices: Vec<(u32, u32)>,
}

impl NewtonPolygon {
    /// Twice the area under the boundary; an integer.
    pub fn twice_covolume(&self) -> u64 {
        self.vertices
            .windows(2)
            .map(|w| {
                let (a0, b0) = w[0];
                let (a1, b1) = w[1];
                (a1 - a0) as u64 * (b0 + b1) as u64
            })
            .sum()
    }

    /// Smallest `b` with `(a, b)` in the closed Newton region, `0 <= a`.
    pub fn height_at(&self, a: u32) -> u32 {
        let last = *self.vertices.last().expect("nonempty polygon");
        if a >= last.0 {
            return last.1;
        }
        for w in self.vertices.windows(2) {
            let (a0, b0) = w[0];
            let (a1, b1) = w[1];
            if a >= a0 && a <= a1 {
                // b0 - (b0 - b1) (a - a0) / (a1 - a0), rounded up
                let num = (b0 - b1) as u64 * (a - a0) as u64;
                let den = (a1 - a0) as u64;
                return b0 - (num / den) as u32;
            }
        }
        self.vertices[0].1
    }
}

impl MonomialIdeal {
    /// Minimalize an arbitrary exponent list.
    pub fn new(exps: &[(u32, u32)]) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidInput("monomial ideal without generators".into()));
        }
        let mut v: Vec<(u32, u32)> = exps.to_vec();
        v.sort();
        v.dedup();
        let mut gens: Vec<(u32, u32)> = Vec::new();
        for (a, b) in v {
            // sorted by a; keep only points strictly lower than every kept point
            if gens.last().map_or(true, |&(_, pb)| b < pb) {
                gens.push((a, b));
            }
        }
        Ok(MonomialIdeal { gens })
    }

    /// `(x^a, y^b)`.
    pub fn complete_intersection(a: u32, b: u32) -> Self {
        MonomialIdeal::new(&[(a, 0), (0, b)]).expect("nonempty")
    }

    pub fn maximal_power(n: u32) -> Self {
        let v: Vec<(u32, u32)> = (0..=n).map(|a| (a, n - a)).collect();
        MonomialIdeal::new(&v).expect("nonempty")
    }

    /// Read off the exponents of an ideal whose generators are monomials.
    pub fn from_ideal<C: Coeff>(a: &Ideal<C>) -> Result<Self> {
        let exps = a.monomial_exponents().ok_or(Error::NonMonomial)?;
        if exps.is_empty() {
            return Err(Error::NotMPrimary);
        }
        Self::new(&exps.iter().map(|&(a, b)| (a as u32, b as u32)).collect::<Vec<_>>())
    }

    /// Monomial ideal of all terms of the generators; contains `a`.
    pub fn term_support<C: Coeff>(a: &Ideal<C>) -> Result<Self> {
        let exps: Vec<(u32, u32)> = a
            .gens()
            .iter()
            .flat_map(|g| g.terms().iter().map(|(m, _)| (m.exp(0) as u32, m.exp(1) as u32)))
            .collect();
        Self::new(&exps)
    }

    pub fn gens(&self) -> &[(u32, u32)] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens == [(0, 0)]
    }

    pub fn is_m_primary(&self) -> bool {
        !self.is_unit() && self.gens[0].0 == 0 && self.gens[self.gens.len() - 1].1 == 0
    }

    fn require_m_primary(&self) -> Result<()> {
        if self.is_m_primary() || self.is_unit() {
            Ok(())
        } else {
            Err(Error::NotMPrimary)
        }
    }

    pub fn to_ideal<C: Coeff>(&self) -> Ideal<C> {
        Ideal::new(
            self.gens
                .iter()
                .map(|&(a, b)| Polynomial::xy(a as u16, b as u16))
                .collect(),
        )
        .expect("nonempty")
    }

    /// Number of monomials outside the ideal.
    pub fn colength(&self) -> Result<u64> {
        self.require_m_primary()?;
        Ok(self
            .gens
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) as u64 * w[0].1 as u64)
            .sum())
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.gens.iter().any(|&(p, q)| p <= a && q <= b)
    }

    pub fn newton_polygon(&self) -> Result<NewtonPolygon> {
        self.require_m_primary()?;
        if self.is_unit() {
            return Ok(NewtonPolygon { vertices: alloc::vec![(0, 0)] });
        }
        // lower hull of points sorted by a (b decreasing)
        let mut hull: Vec<(u32, u32)> = Vec::new();
        for &p in &self.gens {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 as i64 - o.0 as i64) * (p.1 as i64 - o.1 as i64)
                    - (a.1 as i64 - o.1 as i64) * (p.0 as i64 - o.0 as i64);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Ok(NewtonPolygon { vertices: hull })
    }

    /// `2 * covolume` of the Newton polygon, which is `e(a)`.
    pub fn newton_multiplicity(&self) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        Ok(self.newton_polygon()?.twice_covolume())
    }

    /// All lattice points in the Newton region.
    pub fn integral_closure(&self) -> Result<Self> {
        let poly = self.newton_polygon()?;
        if self.is_unit() {
            return Ok(self.clone());
        }
        let last = self.gens[self.gens.len() - 1].0;
        let pts: Vec<(u32, u32)> = (0..=last).map(|a| (a, poly.height_at(a))).collect();
        Self::new(&pts)
    }

    pub fn is_integrally_closed(&self) -> Result<bool> {
        Ok(self.integral_closure()? == *self)
    }

    /// Adjacent-generator syzygies, an `(n+1) x n` matrix whose maximal minors
    /// generate the ideal.
    pub fn hilbert_burch<C: Coeff>(&self) -> PolyMatrix<C> {
        let n = self.gens.len();
        let zero = Polynomial::zero(2, MonomialOrder::GrevLex);
        let mut rows: Vec<Vec<Polynomial<C>>> = (0..n).map(|_| alloc::vec![zero.clone(); n.saturating_sub(1)]).collect();
        for i in 0..n.saturating_sub(1) {
            let (a0, b0) = self.gens[i];
            let (a1, b1) = self.gens[i + 1];
            rows[i][i] = Polynomial::monomial(Monomial::xy((a1 - a0) as u16, 0), MonomialOrder::GrevLex);
            rows[i + 1][i] = -&Polynomial::monomial(Monomial::xy(0, (b0 - b1) as u16), MonomialOrder::GrevLex);
        }
        PolyMatrix::new(rows, 2).expect("rectangular")
    }

    /// `Σ_{i >= 1} (-1)^{i+1} e(Fitt_i(a))` over the Hilbert-Burch matrix,
    /// stopping at the unit ideal. For integrally closed ideals this is `ℓ(R/a)`.
    pub fn ingclosed_sum(&self) -> Result<u64> {
        self.require_m_primary()?;
        if !self.is_integrally_closed()? {
            return Err(Error::NotIntegrallyClosed);
        }
        Ok(self.fitting_multiplicities()?.iter().enumerate().fold(0i64, |acc, (k, &e)| {
            if k % 2 == 0 {
                acc + e as i64
            } else {
                acc - e as i64
            }
        }) as u64)
    }

    /// `e(Fitt_i(a))` for `i = 1, 2, ...` up to the first unit ideal (excluded).
    pub fn fitting_multiplicities(&self) -> Result<Vec<u64>> {
        let hb: PolyMatrix<Rational> = self.hilbert_burch();
        let mut out = Vec::new();
        for i in 1..=hb.rows() {
            let f = crate::matrix::fitting_ideal(&hb, i);
            let f = MonomialIdeal::from_ideal(&f)?;
            if f.is_unit() {
                break;
            }
            out.push(f.newton_multiplicity()?);
        }
        Ok(out)
    }
}

impl core::fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("(")?;
        for (i, &(a, b)) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", Monomial::xy(a as u16, b as u16))?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn colength_examples() {
        assert_eq!(MonomialIdeal::maximal_power(1).colength().unwrap(), 1);
        assert_eq!(MonomialIdeal::maximal_power(2).colength().unwrap(), 3);
        assert_eq!(MonomialIdeal::complete_intersection(20, 14).colength().unwrap(), 280);
        assert!(MonomialIdeal::new(&[(1, 0)]).unwrap().colength().is_err());
    }

    #[test]
    fn newton_examples() {
        assert_eq!(MonomialIdeal::complete_intersection(3, 5).newton_multiplicity().unwrap(), 15);
        assert_eq!(MonomialIdeal::maximal_power(2).newton_multiplicity().unwrap(), 4);
        let j = MonomialIdeal::new(&[(36, 0), (25, 4), (8, 18), (0, 24)]).unwrap();
        assert_eq!(j.newton_multiplicity().unwrap(), 744);
        let f0 = MonomialIdeal::new(&[(36, 0), (24, 4), (13, 8), (5, 14), (0, 24)]).unwrap();
        assert_eq!(f0.newton_multiplicity().unwrap(), 546);
    }

    #[test]
    fn closure_examples() {
        let c = MonomialIdeal::complete_intersection(2, 2).integral_closure().unwrap();
        assert_eq!(c, MonomialIdeal::maximal_power(2));
        let m = MonomialIdeal::maximal_power(1);
        assert_eq!(m.integral_closure().unwrap(), m);
    }

    #[test]
    fn hilbert_burch_of_m_squared() {
        let hb: PolyMatrix<Rational> = MonomialIdeal::maximal_power(2).hilbert_burch();
        assert_eq!((hb.rows(), hb.cols()), (3, 2));
        assert_eq!(hb.entry(0, 0).to_string(), "x");
        assert_eq!(hb.entry(1, 0).to_string(), "-y");
        assert_eq!(hb.entry(1, 1).to_string(), "x");
        assert_eq!(hb.entry(2, 1).to_string(), "-y");
        let ci: PolyMatrix<Rational> = MonomialIdeal::complete_intersection(3, 2).hilbert_burch();
        assert_eq!(ci.entry(0, 0).to_string(), "x^3");
        assert_eq!(ci.entry(1, 0).to_string(), "-y^2");
    }

    #[test]
    fn ingclosed_examples() {
        let m2 = MonomialIdeal::maximal_power(2);
        assert_eq!(m2.fitting_multiplicities().unwrap(), alloc::vec![4, 1]);
        assert_eq!(m2.ingclosed_sum().unwrap(), 3);
        let ci = MonomialIdeal::complete_intersection(1, 5);
        assert_eq!(ci.ingclosed_sum().unwrap(), 5);
        let not_closed = MonomialIdeal::complete_intersection(2, 2);
        assert_eq!(not_closed.ingclosed_sum(), Err(Error::NotIntegrallyClosed));
    }

    fn staircase() -> impl Strategy<Value = MonomialIdeal> {
        proptest::collection::vec((0u32..12, 0u32..12), 0..4).prop_map(|mut v| {
            v.push((0, 1 + v.len() as u32 * 3));
            v.push((2 + v.len() as u32 * 2, 0));
            MonomialIdeal::new(&v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn closure_is_idempotent_and_larger(a in staircase()) {
            let c = a.integral_closure().unwrap();
            prop_assert_eq!(c.integral_closure().unwrap(), c.clone());
            for &(p, q) in a.gens() {
                prop_assert!(c.contains(p, q));
            }
            prop_assert!(c.colength().unwrap() <= a.colength().unwrap());
            prop_assert_eq!(c.newton_multiplicity().unwrap(), a.newton_multiplicity().unwrap());
            prop_assert!(a.colength().unwrap() <= a.newton_multiplicity().unwrap());
        }

        #[test]
        fn hilbert_burch_minors_regenerate(a in staircase()) {
            let hb: PolyMatrix<Rational> = a.hilbert_burch();
            let n = hb.cols();
            let minors = crate::matrix::fitting_ideal(&hb, 1);
            let back = MonomialIdeal::from_ideal(&minors).unwrap();
            prop_assert_eq!(back, a.clone());
            prop_assert_eq!(n + 1, a.gens().len());
        }

        #[test]
        fn ingclosed_sum_is_colength(a in staircase()) {
            let c = a.integral_closure().unwrap();
            prop_assert_eq!(c.ingclosed_sum().unwrap(), c.colength().unwrap());
        }
    }
}
