//! Linkage through minimal reductions and the alternating-sum formulas it
//! yields for colengths and Buchsbaum-Rim multiplicities.
//!
//! A link `a ~ a'` is `a' = b : a` for a complete intersection `b ⊆ a`. When
//! `b` is a reduction of `a`, `ℓ(R/a) = e(a) - ℓ(R/a')`, and iterating down to
//! a complete intersection gives `ℓ(R/a_0) = Σ (-1)^i e(a_i)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hilbert;
use crate::ideal::Ideal;
use crate::matrix::{fitting_ideal, PolyMatrix};
use crate::modmult::{fitt0_multiplicity, minimal_reduction_module, ModulePresentation};
use crate::sampler::GeneralElementSampler;

/// Longest chain `link_chain` will build.
pub const CHAIN_CAP: usize = 64;
/// Fresh random row and column operations tried by `submatrix_chain`.
pub const MAX_ATTEMPTS: usize = 5;

/// `a_0 ~ a_1 ~ ... ~ a_n` with `a_{i+1} = b_i : a_i`.
#[derive(Clone, Debug)]
pub struct LinkChain<C: Coeff> {
    pub ideals: Vec<Ideal<C>>,
    /// Two-generated links, one per step.
    pub links: Vec<Ideal<C>>,
    /// Certified `e(a_i)` for every ideal of the chain.
    pub multiplicities: Vec<u64>,
    /// `a_n` is a complete intersection.
    pub terminal: bool,
}

impl<C: Coeff> LinkChain<C> {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// `Σ (-1)^i e(a_i)` over `i` in `range`.
    pub fn alternating_sum(&self, from: usize) -> i64 {
        self.multiplicities
            .iter()
            .enumerate()
            .skip(from)
            .map(|(i, &e)| if i % 2 == 0 { e as i64 } else { -(e as i64) })
            .sum()
    }
}

/// One link through a certified minimal reduction.
pub fn link_once<C: Coeff>(a: &Ideal<C>, sampler: &mut GeneralElementSampler) -> Result<(Ideal<C>, Ideal<C>)> {
    let (b, a_next, _) = link_step(a, sampler)?;
    Ok((b, a_next))
}

fn link_step<C: Coeff>(a: &Ideal<C>, sampler: &mut GeneralElementSampler) -> Result<(Ideal<C>, Ideal<C>, u64)> {
    if !a.is_locally_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    if a.local_mingens()? < 3 {
        return Err(Error::InvalidInput("a complete intersection has no proper link".into()));
    }
    let red = hilbert::minimal_reduction_ideal(a, sampler)?;
    let b = red.ideal;
    let a_next = b.colon_local(a)?;
    if !a_next.is_locally_m_primary()? || !b.colon_local(&a_next)?.local_eq(a)? {
        return Err(Error::InvolutionFailure);
    }
    Ok((b, a_next, red.value))
}

/// Link until a complete intersection is reached.
pub fn link_chain<C: Coeff>(a: &Ideal<C>, sampler: &mut GeneralElementSampler) -> Result<LinkChain<C>> {
    if !a.is_locally_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let mut ideals = vec![a.clone()];
    let mut links = Vec::new();
    let mut multiplicities = Vec::new();
    let mut mu = a.local_mingens()?;
    while mu > 2 {
        if links.len() >= CHAIN_CAP {
            return Err(Error::ChainCap);
        }
        let cur = ideals.last().expect("nonempty chain");
        let mut step = Err(Error::InvolutionFailure);
        for _ in 0..MAX_ATTEMPTS {
            step = link_step(cur, sampler);
            if !matches!(step, Err(Error::InvolutionFailure)) {
                break;
            }
        }
        let (b, next, e) = step?;
        let next_mu = next.local_mingens()?;
        if next_mu >= mu {
            return Err(Error::Mismatch(alloc::format!(
                "number of generators did not drop along the chain ({mu} -> {next_mu})"
            )));
        }
        mu = next_mu;
        links.push(b);
        multiplicities.push(e);
        ideals.push(next);
    }
    let last = ideals.last().expect("nonempty chain");
    multiplicities.push(last.colength()?);
    Ok(LinkChain { ideals, links, multiplicities, terminal: mu <= 2 })
}

/// `Σ (-1)^i e(a_i)`, which equals `ℓ(R/a_0)`.
pub fn colength_by_links<C: Coeff>(chain: &LinkChain<C>) -> u64 {
    chain.alternating_sum(0).max(0) as u64
}

fn ceil_half(k: i64) -> i64 {
    k.div_euclid(2) + k.rem_euclid(2)
}

/// Row and column counts of the `i`-th submatrix of an `r x (r + 1)` matrix.
pub fn chain_shape(r: usize, i: usize) -> (usize, usize) {
    let i = i as i64;
    let rows = r as i64 - 2 * ceil_half(i - 1);
    let cols = r as i64 + 1 - 2 * ceil_half(i);
    (rows as usize, cols as usize)
}

fn maximal_minor_ideal<C: Coeff>(s: &PolyMatrix<C>) -> Ideal<C> {
    let k = s.rows().min(s.cols());
    fitting_ideal(s, s.rows() - k)
}

/// Ideals of maximal minors of the trailing submatrices of `u`.
pub fn trailing_ideals<C: Coeff>(u: &PolyMatrix<C>) -> Vec<Ideal<C>> {
    let r = u.rows();
    (0..r)
        .map(|i| {
            let (p, q) = chain_shape(r, i);
            let rows: Vec<usize> = (r - p..r).collect();
            let cols: Vec<usize> = (r + 1 - q..r + 1).collect();
            maximal_minor_ideal(&u.submatrix(&rows, &cols))
        })
        .collect()
}

/// The two maximal minors of the `i`-th trailing submatrix that drop its first
/// or its second row (or column).
fn chain_link<C: Coeff>(u: &PolyMatrix<C>, i: usize) -> Result<Ideal<C>> {
    let r = u.rows();
    let (p, q) = chain_shape(r, i);
    let rows: Vec<usize> = (r - p..r).collect();
    let cols: Vec<usize> = (r + 1 - q..r + 1).collect();
    let s = u.submatrix(&rows, &cols);
    let mut gens = Vec::new();
    for drop in 0..2 {
        let minor = if q > p {
            let keep: Vec<usize> = (0..q).filter(|&c| c != drop).collect();
            s.submatrix(&(0..p).collect::<Vec<_>>(), &keep).det()?
        } else {
            let keep: Vec<usize> = (0..p).filter(|&c| c != drop).collect();
            s.submatrix(&keep, &(0..q).collect::<Vec<_>>()).det()?
        };
        gens.push(minor);
    }
    Ideal::new(gens)
}

/// Certify that the trailing submatrices of an `r x (r + 1)` matrix form a
/// chain of links through reductions. `head` is a proven lower bound on
/// `e(a_0)`, if known.
pub fn chain_from_matrix<C: Coeff>(
    u: &PolyMatrix<C>,
    head: Option<u64>,
    sampler: &mut GeneralElementSampler,
) -> Result<LinkChain<C>> {
    let r = u.rows();
    if u.cols() != r + 1 {
        return Err(Error::InvalidInput("expected an r x (r + 1) matrix".into()));
    }
    let ideals = trailing_ideals(u);
    let mut links = Vec::new();
    let mut multiplicities = Vec::new();
    for i in 0..r {
        let a = &ideals[i];
        if !a.is_locally_m_primary()? {
            return Err(Error::GenericityFailure { trials: 1, values: vec![None] });
        }
        if i + 1 == r {
            // the last matrix is 1 x 2 or 2 x 1
            multiplicities.push(a.colength()?);
            break;
        }
        let known = if i == 0 { head } else { None };
        let e = certified_e(a, known, sampler)?;
        let b = chain_link(u, i)?;
        let lb = match b.colength() {
            Ok(v) => v,
            Err(Error::NonFinite) => return Err(Error::GenericityFailure { trials: 1, values: vec![None] }),
            Err(err) => return Err(err),
        };
        if lb != e {
            // not a reduction of a_i
            return Err(Error::GenericityFailure { trials: 1, values: vec![Some(lb)] });
        }
        let next = &ideals[i + 1];
        if !b.colon_local(a)?.local_eq(next)? || !b.colon_local(next)?.local_eq(a)? {
            return Err(Error::InvolutionFailure);
        }
        links.push(b);
        multiplicities.push(e);
    }
    Ok(LinkChain { ideals, links, multiplicities, terminal: true })
}

fn certified_e<C: Coeff>(a: &Ideal<C>, known: Option<u64>, sampler: &mut GeneralElementSampler) -> Result<u64> {
    if a.is_monomial() || a.gens().len() <= 2 {
        return hilbert::e(a, sampler);
    }
    Ok(hilbert::minimal_reduction_with_bound(a, sampler, known)?.value)
}

/// A minimal reduction after general row and column operations, with its
/// certified chain.
#[derive(Clone, Debug)]
pub struct SubmatrixChain<C: Coeff> {
    /// `P Ũ Q` for the random invertible `P`, `Q` that were accepted.
    pub matrix: PolyMatrix<C>,
    /// The row operation `P`.
    pub row_op: Vec<Vec<C>>,
    pub chain: LinkChain<C>,
    /// `e(Fitt0(F/M))`.
    pub e_fitt0: u64,
    pub attempts: usize,
}

/// Chain of the trailing submatrices of a general minimal reduction of `M`.
pub fn submatrix_chain<C: Coeff>(
    m: &ModulePresentation<C>,
    sampler: &mut GeneralElementSampler,
) -> Result<SubmatrixChain<C>> {
    let red = minimal_reduction_module(m, sampler)?;
    let u = red.module.matrix().clone();
    let r = u.rows();
    let mut last = Error::GenericityFailure { trials: 0, values: Vec::new() };
    for attempt in 1..=MAX_ATTEMPTS {
        let p: Vec<Vec<C>> = sampler.invertible_matrix(r);
        let q: Vec<Vec<C>> = sampler.invertible_matrix(u.cols());
        let g = u.left_mul_const(&p).right_mul_const(&q);
        match chain_from_matrix(&g, Some(red.e_fitt0), sampler) {
            Ok(chain) => {
                return Ok(SubmatrixChain { matrix: g, row_op: p, chain, e_fitt0: red.e_fitt0, attempts: attempt })
            }
            Err(e @ (Error::GenericityFailure { .. } | Error::InvolutionFailure)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// `Fitt0(C_i)` for the modules presented by the leading submatrices.
pub fn auslander_chain<C: Coeff>(u: &PolyMatrix<C>) -> Vec<Ideal<C>> {
    let r = u.rows();
    (0..r)
        .map(|i| {
            let (p, q) = chain_shape(r, i);
            let rows: Vec<usize> = (0..p).collect();
            let cols: Vec<usize> = (0..q).collect();
            maximal_minor_ideal(&u.submatrix(&rows, &cols))
        })
        .collect()
}

/// `Fitt0(C_i)` with certified multiplicities and `Σ (-1)^i e(Fitt0(C_i))`.
#[derive(Clone, Debug)]
pub struct AuslanderReport<C: Coeff> {
    pub ideals: Vec<Ideal<C>>,
    pub multiplicities: Vec<u64>,
    pub br: u64,
    /// Each `Fitt0(C_i)` equals the `i`-th ideal of the trailing chain of the
    /// reversed matrix.
    pub matches_reversed_chain: bool,
}

/// Alternating sum over the Auslander-dual chain of a general `r x (r + 1)`
/// matrix; `head` bounds `e(Fitt0(C_0))` from below.
pub fn auslander_br<C: Coeff>(
    u: &PolyMatrix<C>,
    head: Option<u64>,
    sampler: &mut GeneralElementSampler,
) -> Result<AuslanderReport<C>> {
    let ideals = auslander_chain(u);
    let chain = chain_from_matrix(&u.reversed(), head, sampler)?;
    let mut matches = true;
    for (a, b) in ideals.iter().zip(&chain.ideals) {
        if !a.local_eq(b)? {
            matches = false;
        }
    }
    let value = chain.alternating_sum(0);
    Ok(AuslanderReport {
        ideals,
        multiplicities: chain.multiplicities,
        br: value.max(0) as u64,
        matches_reversed_chain: matches,
    })
}

/// Result of the chain formula for `br(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinksReport {
    pub br: u64,
    pub e_fitt0: u64,
    /// `e(a_i)` along the chain, `a_0 = Fitt0(F/U)`.
    pub chain_multiplicities: Vec<u64>,
    pub attempts: usize,
}

/// `br(M) = e(Fitt0(F/M)) + Σ_{i=1}^{r-1} (-1)^i e(a_i)`.
pub fn br_by_links<C: Coeff>(m: &ModulePresentation<C>, sampler: &mut GeneralElementSampler) -> Result<LinksReport> {
    if m.rank() == 1 {
        let e = fitt0_multiplicity(m, sampler)?;
        return Ok(LinksReport { br: e, e_fitt0: e, chain_multiplicities: vec![e], attempts: 0 });
    }
    let sc = submatrix_chain(m, sampler)?;
    let value = sc.e_fitt0 as i64 + sc.chain.alternating_sum(1);
    if value < 0 {
        return Err(Error::Mismatch(alloc::format!("negative chain sum {value}")));
    }
    Ok(LinksReport {
        br: value as u64,
        e_fitt0: sc.e_fitt0,
        chain_multiplicities: sc.chain.multiplicities,
        attempts: sc.attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp31, Rational};

    fn ideal(s: &str) -> Ideal<Rational> {
        crate::parse::parse_ideal(s, 2).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(chain_shape(2, 0), (2, 3));
        assert_eq!(chain_shape(2, 1), (2, 1));
        assert_eq!(chain_shape(3, 1), (3, 2));
        assert_eq!(chain_shape(3, 2), (1, 2));
        assert_eq!(chain_shape(4, 3), (2, 1));
    }

    #[test]
    fn link_m_squared() {
        let mut s = GeneralElementSampler::new(0);
        let (b, next) = link_once(&ideal("x^2, x*y, y^2"), &mut s).unwrap();
        assert_eq!(b.colength().unwrap(), 4);
        assert!(next.local_eq(&Ideal::maximal()).unwrap());
        let chain = link_chain(&ideal("x^2, x*y, y^2"), &mut s).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(colength_by_links(&chain), 3);
    }

    #[test]
    fn link_m_cubed() {
        let mut s = GeneralElementSampler::new(1);
        let (_, next) = link_once(&ideal("x^3, x^2*y, x*y^2, y^3"), &mut s).unwrap();
        assert_eq!(next.colength().unwrap(), 3);
        let chain = link_chain(&ideal("x^3, x^2*y, x*y^2, y^3"), &mut s).unwrap();
        // a_1 has colength 3 and three generators, so it is m^2 and e(a_1) = 4
        assert_eq!(chain.multiplicities, vec![9, 4, 1]);
        assert_eq!(colength_by_links(&chain), 6);
    }

    #[test]
    fn complete_intersections_terminate() {
        let mut s = GeneralElementSampler::new(0);
        let a = ideal("x^3, y^5");
        assert!(link_once(&a, &mut s).is_err());
        let chain = link_chain(&a, &mut s).unwrap();
        assert!(chain.is_empty());
        assert_eq!(colength_by_links(&chain), 15);
    }

    #[test]
    fn small_module_chain() {
        let m: ModulePresentation<Rational> =
            ModulePresentation::parse(&[vec!["x", "0", "y"], vec!["0", "y", "x"]]).unwrap();
        let mut s = GeneralElementSampler::new(3);
        let sc = submatrix_chain(&m, &mut s).unwrap();
        assert_eq!(sc.chain.multiplicities, vec![4, 1]);
        assert!(sc.chain.ideals[1].local_eq(&Ideal::maximal()).unwrap());
        assert_eq!(br_by_links(&m, &mut s).unwrap().br, 3);
        let a = auslander_chain(&sc.matrix);
        let back = trailing_ideals(&sc.matrix.reversed());
        for (x, y) in a.iter().zip(&back) {
            assert!(x.global_eq(y).unwrap());
        }
        let aus = auslander_br(&sc.matrix, Some(sc.e_fitt0), &mut s).unwrap();
        assert!(aus.matches_reversed_chain);
        assert_eq!(aus.br, 3);
    }

    #[test]
    fn rank_three_chain() {
        let m: ModulePresentation<Fp31> = ModulePresentation::parse(&[
            vec!["x", "y", "0", "0", "x^2"],
            vec!["0", "x", "y", "0", "y^2"],
            vec!["0", "0", "x", "y", "x*y"],
        ])
        .unwrap();
        let mut s = GeneralElementSampler::new(5);
        let rep = br_by_links(&m, &mut s).unwrap();
        assert_eq!(rep.chain_multiplicities.len(), 3);
        let direct = crate::modmult::br(&m, &mut s).unwrap();
        assert_eq!(rep.br, direct);
    }
}
