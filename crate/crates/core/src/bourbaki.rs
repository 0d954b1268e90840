//! Bourbaki ideals `J ⊆ I` with `F/M ≅ I/J` and the multiplicity formulas
//! that express `br(M)` through `e(J)` and `e(I)`.
//!
//! For a free `G ⊆ M` of rank `r - 1` given by the columns of `Ṽ`, the map
//! `v ↦ det(Ṽ | v)` identifies `F/G` with `I = I_{r-1}(Ṽ)` and `M/G` with
//! `J = (det(Ṽ | m_j))`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::groebner::FreeModuleElement;
use crate::hilbert;
use crate::ideal::Ideal;
use crate::linkage::{chain_from_matrix, link_chain, submatrix_chain, LinkChain, SubmatrixChain, MAX_ATTEMPTS};
use crate::matrix::{fitting_ideal, PolyMatrix};
use crate::modmult::{fitt0_multiplicity, is_reduction_module, minimal_reduction_module, ModulePresentation};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::sampler::GeneralElementSampler;

/// `det(Ṽ | v)` for an `r x (r - 1)` matrix `Ṽ`.
pub fn bourbaki_image<C: Coeff>(v: &PolyMatrix<C>, col: &FreeModuleElement<C>) -> Result<Polynomial<C>> {
    v.hcat(&PolyMatrix::from_columns(core::slice::from_ref(col))?)?.det()
}

/// `J ⊆ I` with `F/M ≅ I/J`, realized by `Ṽ`.
#[derive(Clone, Debug)]
pub struct BourbakiData<C: Coeff> {
    /// Columns generating the free module `G`.
    pub v: PolyMatrix<C>,
    pub i: Ideal<C>,
    pub j: Ideal<C>,
    /// Present when `Ṽ` came from a certified chain of a minimal reduction.
    pub chain: Option<SubmatrixChain<C>>,
}

impl<C: Coeff> BourbakiData<C> {
    /// Image of a vector of `F` in `I`.
    pub fn image(&self, col: &FreeModuleElement<C>) -> Result<Polynomial<C>> {
        bourbaki_image(&self.v, col)
    }
}

fn require_no_free_summand<C: Coeff>(m: &ModulePresentation<C>) -> Result<()> {
    let unit_entry = m.matrix().row_entries().iter().flatten().any(|p| !p.constant_term().is_zero());
    if unit_entry {
        return Err(Error::InvalidInput("presentation has an entry outside m; split off the free summand".into()));
    }
    Ok(())
}

/// `I = I_{r-1}(Ṽ)` and `J = (det(Ṽ | m_j))` for a given `Ṽ`.
pub fn bourbaki_pair_with<C: Coeff>(m: &ModulePresentation<C>, v: &PolyMatrix<C>) -> Result<BourbakiData<C>> {
    let r = m.rank();
    if r < 2 {
        return Err(Error::InvalidInput("Bourbaki ideals need rank at least 2".into()));
    }
    if v.rows() != r || v.cols() != r - 1 {
        return Err(Error::InvalidInput(format!("Ṽ must be {r} x {}", r - 1)));
    }
    let i = fitting_ideal(v, 1);
    let gens = m
        .columns()
        .iter()
        .map(|c| bourbaki_image(v, c))
        .collect::<Result<Vec<_>>>()?;
    let j = Ideal::new(gens)?;
    Ok(BourbakiData { v: v.clone(), i, j, chain: None })
}

/// Bourbaki pair from a general minimal reduction: `Ṽ` is the `r - 1` columns
/// whose minors give the first link of the chain.
pub fn bourbaki_pair<C: Coeff>(
    m: &ModulePresentation<C>,
    sampler: &mut GeneralElementSampler,
) -> Result<BourbakiData<C>> {
    if m.rank() < 2 {
        return Err(Error::InvalidInput("Bourbaki ideals need rank at least 2".into()));
    }
    require_no_free_summand(m)?;
    let sc = submatrix_chain(m, sampler)?;
    let r = m.rank();
    let cols: Vec<usize> = (2..r + 1).collect();
    // undo the row operation so that the columns of Ṽ lie in M
    let p_inv = crate::linalg::inverse(&sc.row_op).expect("invertible row operation");
    let v = sc.matrix.select_columns(&cols).left_mul_const(&p_inv);
    let mut data = bourbaki_pair_with(m, &v)?;
    if !data.i.is_locally_m_primary()? {
        return Err(Error::GenericityFailure { trials: sc.attempts, values: vec![None] });
    }
    data.chain = Some(sc);
    Ok(data)
}

/// `br(M) = e(J) - e(I) + Σ_{i>=2} (-1)^i e(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BourbakiReport {
    pub br: u64,
    pub e_j: u64,
    pub e_i: u64,
    /// `Σ_{i=2}^{r-1} (-1)^i e(a_i)`.
    pub tail: i64,
    /// `ℓ(R/J) - ℓ(R/I)`, which must equal `ℓ(F/M)`.
    pub length_difference: i64,
}

pub fn br_by_bourbaki<C: Coeff>(
    m: &ModulePresentation<C>,
    sampler: &mut GeneralElementSampler,
) -> Result<BourbakiReport> {
    if m.rank() == 1 {
        let e = fitt0_multiplicity(m, sampler)?;
        return Ok(BourbakiReport { br: e, e_j: e, e_i: 0, tail: 0, length_difference: m.colength()? as i64 });
    }
    let data = bourbaki_pair(m, sampler)?;
    let chain = data.chain.as_ref().expect("chain from bourbaki_pair");
    let e_i = chain.chain.multiplicities[1];
    let e_j = hilbert::e(&data.j, sampler)?;
    let tail = chain.chain.alternating_sum(2);
    let value = e_j as i64 - e_i as i64 + tail;
    if value < 0 {
        return Err(Error::Mismatch(format!("negative Bourbaki formula value {value}")));
    }
    let length_difference = data.j.colength()? as i64 - data.i.colength()? as i64;
    Ok(BourbakiReport { br: value as u64, e_j, e_i, tail, length_difference })
}

/// The pieces of the all-rank formula, each certified.
#[derive(Clone, Debug)]
pub struct AllRankData<C: Coeff> {
    pub rank: usize,
    /// `(s_1 | ... | s_{r-1} | z_r | ... | z_{2r})` after the general operations.
    pub l: PolyMatrix<C>,
    pub u: PolyMatrix<C>,
    pub n: PolyMatrix<C>,
    pub i: Ideal<C>,
    pub j: Ideal<C>,
    pub j_prime: Ideal<C>,
    pub i_prime: Ideal<C>,
    /// `Fitt0(I/I')`.
    pub fitt_i_iprime: Ideal<C>,
    pub chain_u: LinkChain<C>,
    pub chain_n: LinkChain<C>,
    /// Links from `Fitt0(I/I')`; empty when it is the unit ideal.
    pub chain_i: Option<LinkChain<C>>,
    pub e_j: u64,
    pub e_i: u64,
    /// `e(Fitt0(I/J)) = e(Fitt0(F/M))`.
    pub e_fitt_ij: u64,
    /// `e(Fitt0(I/J')) = e(I_r(Ñ))`.
    pub e_fitt_ijprime: u64,
    pub e_fitt_iiprime: u64,
    pub sum_u: i64,
    pub sum_n: i64,
    pub sum_i: i64,
    /// `ℓ(R/I_r(Ñ)) - ℓ(R/Fitt0(I/I'))`, which must equal `e(J) - e(I)`.
    pub hs_difference: i64,
    pub attempts: usize,
}

fn alternating(values: &[u64], from: usize, to: usize) -> i64 {
    (from..=to)
        .filter(|&i| i < values.len())
        .map(|i| if i % 2 == 0 { values[i] as i64 } else { -(values[i] as i64) })
        .sum()
}

fn random_matrix<C: Coeff>(rows: usize, cols: usize, sampler: &mut GeneralElementSampler) -> Vec<Vec<C>> {
    (0..rows).map(|_| sampler.coeffs(cols)).collect()
}

fn constant_column<C: Coeff>(cs: &[C]) -> Result<FreeModuleElement<C>> {
    FreeModuleElement::new(cs.iter().map(|c| Polynomial::constant(c.clone(), 2, MonomialOrder::GrevLex)).collect())
}

/// Build and certify the matrices `L̃`, `Ũ`, `Ñ` and all chains for `F/M ≅ I/J`
/// with `I ≅ F/G`, `G` given by the columns of `g`.
pub fn assume_pipeline<C: Coeff>(
    m: &ModulePresentation<C>,
    g: &PolyMatrix<C>,
    sampler: &mut GeneralElementSampler,
) -> Result<AllRankData<C>> {
    let r = m.rank();
    if r < 2 {
        return Err(Error::InvalidInput("the pipeline needs rank at least 2".into()));
    }
    require_no_free_summand(m)?;
    let base = bourbaki_pair_with(m, g)?;
    if !base.i.is_locally_m_primary()? || !base.j.is_locally_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    for c in g.columns() {
        if !m.locally_contains(&c)? {
            return Err(Error::ContainmentViolated);
        }
    }
    let e_j = hilbert::e(&base.j, sampler)?;
    let e_i = hilbert::e(&base.i, sampler)?;
    let red = minimal_reduction_module(m, sampler)?;
    let e_fitt_ij = red.e_fitt0;
    let z = red.module.matrix().clone();
    let mut failures: Vec<Option<u64>> = Vec::new();
    for attempt in 1..=MAX_ATTEMPTS {
        let p: Vec<Vec<C>> = sampler.invertible_matrix(r);
        let a: Vec<Vec<C>> = sampler.invertible_matrix(r - 1);
        let q: Vec<Vec<C>> = sampler.invertible_matrix(r + 1);
        let k: Vec<Vec<C>> = random_matrix(r - 1, r + 1, sampler);
        let s = g.right_mul_const(&a).left_mul_const(&p);
        // z' = z Q + g K, written as (z | g) (Q ; K)
        let mut stacked = q;
        stacked.extend(k);
        let zz = z.hcat(g)?.right_mul_const(&stacked).left_mul_const(&p);
        let l = s.hcat(&zz)?;
        let u_mod = ModulePresentation::new(zz.clone())?;
        let m_rot = ModulePresentation::new(m.matrix().left_mul_const(&p))?;
        let red_ok = is_reduction_module(&u_mod, &m_rot, sampler)?.is_reduction;
        if !red_ok {
            failures.push(None);
            continue;
        }
        let last_two = zz.select_columns(&[r - 1, r]);
        let n = s.hcat(&last_two)?;
        let jp = Ideal::new(vec![bourbaki_image(&s, &last_two.column(0))?, bourbaki_image(&s, &last_two.column(1))?])?;
        match jp.colength() {
            Ok(v) if v == e_j => {}
            Ok(v) => {
                failures.push(Some(v));
                continue;
            }
            Err(Error::NonFinite) => {
                failures.push(None);
                continue;
            }
            Err(err) => return Err(err),
        }
        let chain_u = match chain_from_matrix(&zz, Some(e_fitt_ij), sampler) {
            Ok(c) => c,
            Err(Error::GenericityFailure { .. } | Error::InvolutionFailure) => {
                failures.push(None);
                continue;
            }
            Err(err) => return Err(err),
        };
        let chain_n = match chain_from_matrix(&n, None, sampler) {
            Ok(c) => c,
            Err(Error::GenericityFailure { .. } | Error::InvolutionFailure) => {
                failures.push(None);
                continue;
            }
            Err(err) => return Err(err),
        };
        if !chain_u.ideals[r - 1].local_eq(&chain_n.ideals[r - 1])?
            || (r % 2 == 1 && !chain_u.ideals[r - 2].local_eq(&chain_n.ideals[r - 2])?)
        {
            return Err(Error::Mismatch("tails of the U and N chains differ".into()));
        }
        // I' from two general constant lifts
        let w1 = constant_column::<C>(&sampler.coeffs(r))?;
        let w2 = constant_column::<C>(&sampler.coeffs(r))?;
        let i_prime = Ideal::new(vec![bourbaki_image(&s, &w1)?, bourbaki_image(&s, &w2)?])?;
        match i_prime.colength() {
            Ok(v) if v == e_i => {}
            Ok(v) => {
                failures.push(Some(v));
                continue;
            }
            Err(Error::NonFinite) => {
                failures.push(None);
                continue;
            }
            Err(err) => return Err(err),
        }
        let sw = s.hcat(&PolyMatrix::from_columns(&[w1, w2])?)?;
        let fitt_i_iprime = fitting_ideal(&sw, 0);
        let (e_fitt_iiprime, chain_i) = if fitt_i_iprime.colength()? == 0 {
            (0, None)
        } else {
            let c = link_chain(&fitt_i_iprime, sampler)?;
            (c.multiplicities[0], Some(c))
        };
        let top = 2 * ((r - 2) / 2);
        let sum_u = alternating(&chain_u.multiplicities, 1, top);
        let sum_n = alternating(&chain_n.multiplicities, 1, top);
        let sum_i = match &chain_i {
            Some(c) if r >= 4 => alternating(&c.multiplicities, 1, r - 3),
            _ => 0,
        };
        let hs_difference = chain_n.ideals[0].colength()? as i64 - fitt_i_iprime.colength()? as i64;
        let e_fitt_ijprime = chain_n.multiplicities[0];
        return Ok(AllRankData {
            rank: r,
            l,
            u: zz,
            n,
            i: base.i.clone(),
            j: base.j.clone(),
            j_prime: jp,
            i_prime,
            fitt_i_iprime,
            chain_u,
            chain_n,
            chain_i,
            e_j,
            e_i,
            e_fitt_ij,
            e_fitt_ijprime,
            e_fitt_iiprime,
            sum_u,
            sum_n,
            sum_i,
            hs_difference,
            attempts: attempt,
        });
    }
    Err(Error::GenericityFailure { trials: failures.len(), values: failures })
}

/// `e(J) - e(I) + (e(Fitt0(I/J)) + E_U) - (e(Fitt0(I/J')) + E_N) + (e(Fitt0(I/I')) + E_I)`.
pub fn br_all_rank<C: Coeff>(data: &AllRankData<C>) -> i64 {
    data.e_j as i64 - data.e_i as i64 + (data.e_fitt_ij as i64 + data.sum_u)
        - (data.e_fitt_ijprime as i64 + data.sum_n)
        + (data.e_fitt_iiprime as i64 + data.sum_i)
}

/// Terms of the rank-two formula for a prescribed `J'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwoTerms {
    pub e_i: u64,
    pub e_j: u64,
    pub e_fitt_ij: u64,
    pub e_fitt_ijprime: u64,
    /// `e(J) - e(I) + e(Fitt0(I/J)) - e(Fitt0(I/J'))`.
    pub rhs: i64,
}

/// Evaluate the rank-two formula with `J'` generated by the images of the two
/// given vectors of `M`, so `Fitt0(I/J') = I_2(g | w_1 | w_2)`.
pub fn rank_two_terms<C: Coeff>(
    m: &ModulePresentation<C>,
    g: &PolyMatrix<C>,
    lifts: [&FreeModuleElement<C>; 2],
    sampler: &mut GeneralElementSampler,
) -> Result<RankTwoTerms> {
    if m.rank() != 2 {
        return Err(Error::InvalidInput("the rank-two formula needs rank 2".into()));
    }
    let data = bourbaki_pair_with(m, g)?;
    let e_i = hilbert::e(&data.i, sampler)?;
    let e_j = hilbert::e(&data.j, sampler)?;
    let e_fitt_ij = fitt0_multiplicity(m, sampler)?;
    let n = g.hcat(&PolyMatrix::from_columns(&[lifts[0].clone(), lifts[1].clone()])?)?;
    let e_fitt_ijprime = hilbert::e(&fitting_ideal(&n, 0), sampler)?;
    let rhs = e_j as i64 - e_i as i64 + e_fitt_ij as i64 - e_fitt_ijprime as i64;
    Ok(RankTwoTerms { e_i, e_j, e_fitt_ij, e_fitt_ijprime, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp31, Rational};
    use crate::modmult::br;

    fn small() -> ModulePresentation<Rational> {
        ModulePresentation::parse(&[vec!["x", "0", "y"], vec!["0", "y", "x"]]).unwrap()
    }

    #[test]
    fn pair_for_a_given_column() {
        let m = small();
        let g = PolyMatrix::parse(&[vec!["y"], vec!["x"]]).unwrap();
        let d = bourbaki_pair_with(&m, &g).unwrap();
        assert!(d.i.global_eq(&Ideal::maximal()).unwrap());
        let j = crate::parse::parse_ideal("x^2, y^2", 2).unwrap();
        assert!(d.j.global_eq(&j).unwrap());
    }

    #[test]
    fn rank_two_bourbaki_formula() {
        let mut s = GeneralElementSampler::new(0);
        let rep = br_by_bourbaki(&small(), &mut s).unwrap();
        assert_eq!(rep.br, 3);
        assert_eq!(rep.length_difference, 3);
    }

    #[test]
    fn rank_two_pipeline() {
        let m = small();
        let g = PolyMatrix::parse(&[vec!["y"], vec!["x"]]).unwrap();
        let mut s = GeneralElementSampler::new(1);
        let data = assume_pipeline(&m, &g, &mut s).unwrap();
        assert_eq!((data.e_j, data.e_i, data.e_fitt_ij, data.e_fitt_iiprime), (4, 1, 4, 0));
        assert_eq!(br_all_rank(&data), 3);
        assert_eq!(data.hs_difference, 3);
    }

    #[test]
    fn rank_three_pipeline() {
        let m: ModulePresentation<Fp31> = ModulePresentation::parse(&[
            vec!["x", "y", "0", "0", "x^2"],
            vec!["0", "x", "y", "0", "y^2"],
            vec!["0", "0", "x", "y", "x*y"],
        ])
        .unwrap();
        let mut s = GeneralElementSampler::new(2);
        let g = bourbaki_pair(&m, &mut s).unwrap().v;
        let data = assume_pipeline(&m, &g, &mut s).unwrap();
        let want = br(&m, &mut s).unwrap() as i64;
        assert_eq!(br_all_rank(&data), want);
        assert_eq!(data.hs_difference, data.e_j as i64 - data.e_i as i64);
        let rep = br_by_bourbaki(&m, &mut s).unwrap();
        assert_eq!(rep.br as i64, want);
    }
}
