//! Polynomial matrices, minors and Fitting ideals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::groebner::FreeModuleElement;
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::parse::parse_poly;
use crate::poly::Polynomial;

/// Dense matrix of polynomials over a fixed ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<C> {
    rows: usize,
    cols: usize,
    arity: usize,
    entries: Vec<Vec<Polynomial<C>>>,
}

impl<C: Coeff> PolyMatrix<C> {
    /// Build from rows; an empty row list gives a `0 x 0` matrix.
    pub fn new(entries: Vec<Vec<Polynomial<C>>>, arity: usize) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        for r in &entries {
            if r.len() != cols {
                return Err(Error::InvalidInput("rows of different lengths".into()));
            }
            for p in r {
                if p.arity() != arity {
                    return Err(Error::ArityMismatch { left: arity, right: p.arity() });
                }
            }
        }
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().map(|p| p.reorder(MonomialOrder::GrevLex)).collect())
            .collect();
        Ok(PolyMatrix { rows, cols, arity, entries })
    }

    /// Parse a matrix of polynomial strings in `x, y`.
    pub fn parse(rows: &[Vec<&str>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s, 2)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries, 2)
    }

    pub fn from_columns(cols: &[FreeModuleElement<C>]) -> Result<Self> {
        let first = cols.first().ok_or_else(|| Error::InvalidInput("no columns".into()))?;
        let rows = (0..first.rank())
            .map(|i| cols.iter().map(|c| c.comp(i).clone()).collect())
            .collect();
        Self::new(rows, first.arity())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[i][j]
    }

    pub fn row_entries(&self) -> &[Vec<Polynomial<C>>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> FreeModuleElement<C> {
        FreeModuleElement::new((0..self.rows).map(|i| self.entries[i][j].clone()).collect())
            .expect("uniform arity")
    }

    pub fn columns(&self) -> Vec<FreeModuleElement<C>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        PolyMatrix { rows: self.cols, cols: self.rows, arity: self.arity, entries }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        PolyMatrix { rows: rows.len(), cols: cols.len(), arity: self.arity, entries }
    }

    /// Keep the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    /// Reverse the order of rows and of columns.
    pub fn reversed(&self) -> Self {
        let rows: Vec<usize> = (0..self.rows).rev().collect();
        let cols: Vec<usize> = (0..self.cols).rev().collect();
        self.submatrix(&rows, &cols)
    }

    /// `P * self` for a constant `rows x rows` matrix `P`.
    pub fn left_mul_const(&self, p: &[Vec<C>]) -> Self {
        let entries = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let mut acc = Polynomial::zero(self.arity, MonomialOrder::GrevLex);
                        for (k, c) in p[i].iter().enumerate() {
                            if !c.is_zero() {
                                acc = &acc + &self.entries[k][j].scale(c);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { rows: self.rows, cols: self.cols, arity: self.arity, entries }
    }

    /// `self * Q` for a constant `cols x m` matrix `Q`.
    pub fn right_mul_const(&self, q: &[Vec<C>]) -> Self {
        let m = q.first().map_or(0, |r| r.len());
        let entries = (0..self.rows)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut acc = Polynomial::zero(self.arity, MonomialOrder::GrevLex);
                        for k in 0..self.cols {
                            let c = &q[k][j];
                            if !c.is_zero() {
                                acc = &acc + &self.entries[i][k].scale(c);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { rows: self.rows, cols: m, arity: self.arity, entries }
    }

    /// Append columns of another matrix with the same row count.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::RankMismatch { left: self.rows, right: other.rows });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        Ok(PolyMatrix { rows: self.rows, cols: self.cols + other.cols, arity: self.arity, entries })
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Polynomial<C>> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        let mut memo = BTreeMap::new();
        self.minor_memo(&rows, &cols, &mut memo)
    }

    /// Minor on the given rows and columns, by expansion along the first row,
    /// memoized on the remaining column subset.
    fn minor_memo(
        &self,
        rows: &[usize],
        cols: &[usize],
        memo: &mut BTreeMap<(u64, u64), Polynomial<C>>,
    ) -> Result<Polynomial<C>> {
        let k = rows.len();
        if k == 0 {
            return Ok(Polynomial::one(self.arity, MonomialOrder::GrevLex));
        }
        let key = (mask(rows), mask(cols));
        if let Some(p) = memo.get(&key) {
            return Ok(p.clone());
        }
        let r = rows[0];
        let mut acc = Polynomial::zero(self.arity, MonomialOrder::GrevLex);
        for (idx, &c) in cols.iter().enumerate() {
            let e = &self.entries[r][c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.minor_memo(&rows[1..], &rest, memo)?;
            if sub.is_zero() {
                continue;
            }
            let term = e.try_mul(&sub)?;
            acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        memo.insert(key, acc.clone());
        Ok(acc)
    }

    /// All `k x k` minors in lexicographic order of (row subset, column subset).
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial<C>>> {
        if k > self.rows.min(self.cols) {
            return Ok(Vec::new());
        }
        if self.rows > 63 || self.cols > 63 {
            return Err(Error::SizeCap("matrix too large for minors".into()));
        }
        let mut memo = BTreeMap::new();
        let mut out = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in subsets(self.cols, k) {
                out.push(self.minor_memo(&rs, &cs, &mut memo)?);
            }
        }
        Ok(out)
    }

    /// Maximal minors when `rows <= cols`, in lexicographic column order.
    pub fn maximal_minors(&self) -> Result<Vec<Polynomial<C>>> {
        self.minors(self.rows.min(self.cols))
    }

    /// True when every entry vanishes at the origin.
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.constant_term().is_zero())
    }
}

fn mask(v: &[usize]) -> u64 {
    v.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// All increasing `k`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `Fitt_j` of the cokernel of `P`: the ideal of `(p - j)`-minors, where `p`
/// is the number of rows. It is the unit ideal when `p - j <= 0`.
pub fn fitting_ideal<C: Coeff>(p: &PolyMatrix<C>, j: usize) -> Ideal<C> {
    if j >= p.rows() {
        return Ideal::unit(p.arity());
    }
    let k = p.rows() - j;
    let minors = p.minors(k).unwrap_or_default();
    let nonzero: Vec<Polynomial<C>> = minors.into_iter().filter(|m| !m.is_zero()).collect();
    if nonzero.is_empty() {
        return Ideal::zero(p.arity());
    }
    Ideal::new(nonzero).expect("uniform arity")
}

impl<C: Coeff> fmt::Display for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, p) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
