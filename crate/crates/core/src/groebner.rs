//! Buchberger's algorithm for ideals and for submodules of free modules.
//!
//! Ideals are handled as submodules of rank one. Module elements are ordered
//! position-over-term: the component index is compared first, lower indices
//! being greater, and the base monomial order breaks ties inside a component.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree, then
//! smallest lcm in the term order) and pruned with Buchberger's coprime and
//! chain criteria in the Gebauer-Möller formulation. The coprime criterion is
//! applied only in rank one, where it is valid.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, DEGREE_CAP};
use crate::poly::Polynomial;

/// Element of a free module `R^r`, as a column of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeModuleElement<C> {
    comps: Vec<Polynomial<C>>,
}

impl<C: Coeff> FreeModuleElement<C> {
    pub fn new(comps: Vec<Polynomial<C>>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::InvalidInput("free module element of rank zero".into()));
        }
        let a = comps[0].arity();
        for p in &comps {
            if p.arity() != a {
                return Err(Error::ArityMismatch { left: a, right: p.arity() });
            }
        }
        Ok(FreeModuleElement { comps })
    }

    pub fn zero(rank: usize, arity: usize, order: MonomialOrder) -> Self {
        FreeModuleElement { comps: vec![Polynomial::zero(arity, order); rank] }
    }

    /// `p * e_i` in a module of the given rank.
    pub fn basis(rank: usize, i: usize, p: Polynomial<C>) -> Self {
        let mut v = Self::zero(rank, p.arity(), p.order());
        v.comps[i] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn arity(&self) -> usize {
        self.comps[0].arity()
    }

    pub fn comps(&self) -> &[Polynomial<C>] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Polynomial<C> {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        Ok(FreeModuleElement { comps })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        Ok(FreeModuleElement { comps })
    }

    pub fn scale(&self, f: &Polynomial<C>) -> Result<Self> {
        let comps = self.comps.iter().map(|p| p.try_mul(f)).collect::<Result<Vec<_>>>()?;
        Ok(FreeModuleElement { comps })
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        FreeModuleElement { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for FreeModuleElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term<C> {
    key: u128,
    mono: Monomial,
    comp: u16,
    c: C,
}

type Vector<C> = Vec<Term<C>>;

const COMP_SHIFT: u32 = 112;

#[inline]
fn term_key(order: MonomialOrder, m: &Monomial, comp: u16) -> u128 {
    ((0xFFFF - comp as u128) << COMP_SHIFT) | order.key(m)
}

/// What the generators of a basis are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Ideal,
    Module { rank: usize },
}

/// Reduced Gröbner basis of an ideal or a submodule.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C> {
    elems: Vec<Vector<C>>,
    order: MonomialOrder,
    arity: usize,
    kind: BasisKind,
    truncation: Option<u32>,
    reduced: bool,
}

/// Monomials outside the leading-term ideal (or submodule).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonomials {
    /// Pairs `(component, monomial)`; the component is always zero for ideals.
    Finite(Vec<(usize, Monomial)>),
    Infinite,
}

impl StandardMonomials {
    pub fn count(&self) -> Option<usize> {
        match self {
            StandardMonomials::Finite(v) => Some(v.len()),
            StandardMonomials::Infinite => None,
        }
    }
}

struct Elem<C> {
    terms: Vector<C>,
    lm: Monomial,
    comp: u16,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
    key: u128,
}

struct Engine<C> {
    order: MonomialOrder,
    product_criterion: bool,
    truncation: Option<u32>,
    one_key: u128,
    elems: Vec<Elem<C>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<C: Coeff> Engine<C> {
    fn new(order: MonomialOrder, arity: usize, kind: BasisKind, truncation: Option<u32>) -> Self {
        Engine {
            order,
            product_criterion: kind == BasisKind::Ideal,
            truncation,
            one_key: order.key(&Monomial::one(arity)),
            elems: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    #[inline]
    fn dropped(&self, m: &Monomial) -> bool {
        match self.truncation {
            Some(n) => m.xy_degree() >= n,
            None => false,
        }
    }

    /// `dst = a - c * shift * b`, terms of `b` multiplied by the monomial `shift`.
    fn merge_sub(&self, a: &[Term<C>], b: &[Term<C>], c: &C, shift: &Monomial, dst: &mut Vector<C>) {
        let delta = self.order.key(shift).wrapping_sub(self.one_key);
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term<C>| -> Option<(u128, Monomial)> {
            let m = t.mono.mul(shift);
            if self.dropped(&m) {
                None
            } else {
                Some((t.key.wrapping_add(delta), m))
            }
        };
        let mut next_b = None;
        loop {
            if next_b.is_none() {
                while j < b.len() {
                    let cand = shifted(&b[j]);
                    j += 1;
                    if let Some((k, m)) = cand {
                        next_b = Some((k, m, j - 1));
                        break;
                    }
                }
            }
            match (a.get(i), next_b) {
                (None, None) => break,
                (Some(_), None) => {
                    dst.extend_from_slice(&a[i..]);
                    break;
                }
                (None, Some((k, m, jb))) => {
                    dst.push(Term { key: k, mono: m, comp: b[jb].comp, c: b[jb].c.mul(c).neg() });
                    next_b = None;
                }
                (Some(ta), Some((k, m, jb))) => {
                    if ta.key > k {
                        dst.push(ta.clone());
                        i += 1;
                    } else if ta.key < k {
                        dst.push(Term { key: k, mono: m, comp: b[jb].comp, c: b[jb].c.mul(c).neg() });
                        next_b = None;
                    } else {
                        let v = ta.c.sub_mul(c, &b[jb].c);
                        if !v.is_zero() {
                            dst.push(Term { key: k, mono: m, comp: ta.comp, c: v });
                        }
                        i += 1;
                        next_b = None;
                    }
                }
            }
        }
    }

    /// Full normal form against the active elements (which are monic).
    fn reduce(&self, mut f: Vector<C>, skip: Option<usize>) -> Vector<C> {
        let mut rem: Vector<C> = Vec::new();
        let mut buf: Vector<C> = Vec::new();
        let mut start = 0;
        while start < f.len() {
            let t = &f[start];
            if self.dropped(&t.mono) {
                start += 1;
                continue;
            }
            let div = self
                .elems
                .iter()
                .enumerate()
                .find(|(i, e)| {
                    Some(*i) != skip && self.active[*i] && e.comp == t.comp && e.lm.divides(&t.mono)
                })
                .map(|(i, _)| i);
            match div {
                None => {
                    rem.push(t.clone());
                    start += 1;
                }
                Some(gi) => {
                    let g = &self.elems[gi];
                    let shift = g.lm.quotient_of(&t.mono).expect("divides");
                    let c = t.c.clone();
                    buf.clear();
                    self.merge_sub(&f[start + 1..], &g.terms[1..], &c, &shift, &mut buf);
                    core::mem::swap(&mut f, &mut buf);
                    start = 0;
                }
            }
        }
        rem
    }

    fn make_monic(v: &mut Vector<C>) {
        if let Some(first) = v.first() {
            if !first.c.is_one() {
                let inv = first.c.inv().expect("nonzero leading coefficient");
                for t in v.iter_mut() {
                    t.c = t.c.mul(&inv);
                }
            }
        }
    }

    fn spoly(&self, p: &Pair) -> Vector<C> {
        let a = &self.elems[p.i];
        let b = &self.elems[p.j];
        let sa = a.lm.quotient_of(&p.lcm).expect("lcm");
        let sb = b.lm.quotient_of(&p.lcm).expect("lcm");
        let delta = self.order.key(&sa).wrapping_sub(self.one_key);
        let mut lhs: Vector<C> = Vec::with_capacity(a.terms.len());
        for t in &a.terms[1..] {
            let m = t.mono.mul(&sa);
            if !self.dropped(&m) {
                lhs.push(Term { key: t.key.wrapping_add(delta), mono: m, comp: t.comp, c: t.c.clone() });
            }
        }
        let mut out = Vec::new();
        self.merge_sub(&lhs, &b.terms[1..], &C::one(), &sb, &mut out);
        out
    }

    fn add_element(&mut self, v: Vector<C>) -> Result<()> {
        let lead = &v[0];
        let deg = v.iter().map(|t| t.mono.degree()).max().unwrap_or(0);
        if deg > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: deg });
        }
        let elem = Elem { lm: lead.mono, comp: lead.comp, terms: v };
        let h = self.elems.len();
        self.elems.push(elem);
        self.active.push(true);
        self.update(h);
        Ok(())
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.elems[i].lm.lcm(&self.elems[j].lm);
        Pair {
            i,
            j,
            lcm,
            deg: lcm.degree(),
            key: term_key(self.order, &lcm, self.elems[i].comp),
        }
    }

    /// Gebauer-Möller pair update after appending element `h`.
    fn update(&mut self, h: usize) {
        let hlm = self.elems[h].lm;
        let hcomp = self.elems[h].comp;
        let mut cand: Vec<(usize, Monomial, bool)> = (0..h)
            .filter(|&g| self.active[g] && self.elems[g].comp == hcomp)
            .map(|g| {
                let glm = self.elems[g].lm;
                (g, hlm.lcm(&glm), self.product_criterion && hlm.is_coprime(&glm))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g1, l1, coprime)) = cand.pop() {
            let dominated = !coprime
                && cand.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l1));
            if !dominated {
                kept.push((g1, l1, coprime));
            }
        }
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if elems[p.i].comp != hcomp {
                return true;
            }
            let li = elems[p.i].lm.lcm(&hlm);
            let lj = elems[p.j].lm.lcm(&hlm);
            !(hlm.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        for (g, _, coprime) in kept {
            if !coprime {
                let p = self.make_pair(g, h);
                self.pairs.push(p);
            }
        }
        for g in 0..h {
            if self.active[g] && self.elems[g].comp == hcomp && hlm.divides(&self.elems[g].lm) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for (idx, p) in self.pairs.iter().enumerate().skip(1) {
            let b = &self.pairs[best];
            if (p.deg, p.key) < (b.deg, b.key) {
                best = idx;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// `seeds` are monic monomials added as they are; `gens` are reduced first.
    fn run(mut self, seeds: Vec<Vector<C>>, gens: Vec<Vector<C>>) -> Result<Vec<Vector<C>>> {
        for s in seeds {
            self.add_element(s)?;
        }
        let mut gens = gens;
        gens.sort_by(|a, b| {
            let ka = a.first().map(|t| (t.mono.degree(), t.key));
            let kb = b.first().map(|t| (t.mono.degree(), t.key));
            ka.cmp(&kb)
        });
        for g in gens {
            let mut r = self.reduce(g, None);
            if r.is_empty() {
                continue;
            }
            Self::make_monic(&mut r);
            self.add_element(r)?;
        }
        while let Some(p) = self.select() {
            let s = self.spoly(&p);
            let mut r = self.reduce(s, None);
            if r.is_empty() {
                continue;
            }
            Self::make_monic(&mut r);
            self.add_element(r)?;
        }
        Ok(self.finish())
    }

    fn finish(mut self) -> Vec<Vector<C>> {
        // minimal basis: active elements whose leading term is not divisible by another's
        let idx: Vec<usize> = (0..self.elems.len()).filter(|&i| self.active[i]).collect();
        let mut minimal: Vec<usize> = Vec::new();
        for &i in &idx {
            let (lm, comp) = (self.elems[i].lm, self.elems[i].comp);
            let redundant = idx.iter().any(|&j| {
                j != i
                    && self.elems[j].comp == comp
                    && self.elems[j].lm.divides(&lm)
                    && (self.elems[j].lm != lm || j < i)
            });
            if !redundant {
                minimal.push(i);
            }
        }
        for a in self.active.iter_mut() {
            *a = false;
        }
        for &i in &minimal {
            self.active[i] = true;
        }
        let mut out = Vec::with_capacity(minimal.len());
        for &i in &minimal {
            let terms = self.elems[i].terms.clone();
            let head = terms[0].clone();
            let tail = self.reduce(terms[1..].to_vec(), Some(i));
            let mut v = Vec::with_capacity(tail.len() + 1);
            v.push(head);
            v.extend(tail);
            out.push(v);
        }
        out.sort_by(|a, b| b[0].key.cmp(&a[0].key));
        out
    }
}

fn poly_to_vector<C: Coeff>(p: &Polynomial<C>, comp: u16, order: MonomialOrder) -> Vector<C> {
    let p = p.reorder(order);
    p.terms()
        .iter()
        .map(|(m, c)| Term { key: term_key(order, m, comp), mono: *m, comp, c: c.clone() })
        .collect()
}

fn element_to_vector<C: Coeff>(v: &FreeModuleElement<C>, order: MonomialOrder) -> Vector<C> {
    let mut out: Vector<C> = Vec::new();
    // components are ordered with index 0 greatest
    for (i, p) in v.comps().iter().enumerate() {
        out.extend(poly_to_vector(p, i as u16, order));
    }
    out
}

fn vector_to_poly<C: Coeff>(v: &[Term<C>], arity: usize, order: MonomialOrder) -> Polynomial<C> {
    Polynomial::from_sorted_terms(v.iter().map(|t| (t.mono, t.c.clone())).collect(), arity, order)
}

fn vector_to_element<C: Coeff>(
    v: &[Term<C>],
    rank: usize,
    arity: usize,
    order: MonomialOrder,
) -> FreeModuleElement<C> {
    let mut comps: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); rank];
    for t in v {
        comps[t.comp as usize].push((t.mono, t.c.clone()));
    }
    FreeModuleElement {
        comps: comps
            .into_iter()
            .map(|ts| Polynomial::from_sorted_terms(ts, arity, order))
            .collect(),
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner<C: Coeff>(gens: &[Polynomial<C>], order: MonomialOrder) -> Result<GroebnerBasis<C>> {
    groebner_with(gens, order, None)
}

/// Reduced Gröbner basis of `(gens) + m^n`, with `m = (x, y)`.
///
/// Terms of degree `>= n` are discarded as soon as they appear, which is
/// sound because `m^n` lies in the ideal.
pub fn groebner_truncated<C: Coeff>(
    gens: &[Polynomial<C>],
    order: MonomialOrder,
    n: u32,
) -> Result<GroebnerBasis<C>> {
    groebner_with(gens, order, Some(n))
}

fn groebner_with<C: Coeff>(
    gens: &[Polynomial<C>],
    order: MonomialOrder,
    truncation: Option<u32>,
) -> Result<GroebnerBasis<C>> {
    let arity = gens
        .first()
        .map(|g| g.arity())
        .ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    for g in gens {
        if g.arity() != arity {
            return Err(Error::ArityMismatch { left: arity, right: g.arity() });
        }
        if let Some(d) = g.degree() {
            if d > DEGREE_CAP {
                return Err(Error::DegreeCap { degree: d });
            }
        }
    }
    let vecs: Vec<Vector<C>> = gens.iter().map(|g| poly_to_vector(g, 0, order)).collect();
    let mut seeds = Vec::new();
    if let Some(n) = truncation {
        check_truncation(arity, n)?;
        for a in 0..=n as u16 {
            let m = Monomial::xy(a, n as u16 - a).with_arity(arity);
            seeds.push(vec![Term { key: term_key(order, &m, 0), mono: m, comp: 0, c: C::one() }]);
        }
    }
    let engine = Engine::new(order, arity, BasisKind::Ideal, truncation);
    let elems = engine.run(seeds, vecs)?;
    Ok(GroebnerBasis { elems, order, arity, kind: BasisKind::Ideal, truncation, reduced: true })
}

fn check_truncation(arity: usize, n: u32) -> Result<()> {
    if arity != 2 {
        return Err(Error::InvalidInput("truncation is only defined in two variables".into()));
    }
    if n > DEGREE_CAP {
        return Err(Error::DegreeCap { degree: n });
    }
    Ok(())
}

/// Reduced position-over-term Gröbner basis of the submodule spanned by `gens`.
pub fn groebner_module<C: Coeff>(
    gens: &[FreeModuleElement<C>],
    order: MonomialOrder,
) -> Result<GroebnerBasis<C>> {
    groebner_module_with(gens, order, None)
}

/// Reduced basis of `span(gens) + m^n F`.
pub fn groebner_module_truncated<C: Coeff>(
    gens: &[FreeModuleElement<C>],
    order: MonomialOrder,
    n: u32,
) -> Result<GroebnerBasis<C>> {
    groebner_module_with(gens, order, Some(n))
}

fn groebner_module_with<C: Coeff>(
    gens: &[FreeModuleElement<C>],
    order: MonomialOrder,
    truncation: Option<u32>,
) -> Result<GroebnerBasis<C>> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    let (rank, arity) = (first.rank(), first.arity());
    if rank > 0xFFF0 {
        return Err(Error::SizeCap("free module rank".into()));
    }
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch { left: rank, right: g.rank() });
        }
        if g.arity() != arity {
            return Err(Error::ArityMismatch { left: arity, right: g.arity() });
        }
    }
    let vecs: Vec<Vector<C>> = gens.iter().map(|g| element_to_vector(g, order)).collect();
    let mut seeds = Vec::new();
    if let Some(n) = truncation {
        check_truncation(arity, n)?;
        for comp in 0..rank as u16 {
            for a in 0..=n as u16 {
                let m = Monomial::xy(a, n as u16 - a);
                seeds.push(vec![Term { key: term_key(order, &m, comp), mono: m, comp, c: C::one() }]);
            }
        }
    }
    let kind = BasisKind::Module { rank };
    let engine = Engine::new(order, arity, kind, truncation);
    let elems = engine.run(seeds, vecs)?;
    Ok(GroebnerBasis { elems, order, arity, kind, truncation, reduced: true })
}

impl<C: Coeff> GroebnerBasis<C> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Truncation degree `n` when this is a basis of `(...) + m^n`.
    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            BasisKind::Ideal => 1,
            BasisKind::Module { rank } => rank,
        }
    }

    /// Basis elements as polynomials (ideal case).
    pub fn polynomials(&self) -> Vec<Polynomial<C>> {
        assert_eq!(self.kind, BasisKind::Ideal, "module basis has no polynomial view");
        self.elems.iter().map(|v| vector_to_poly(v, self.arity, self.order)).collect()
    }

    /// Basis elements as free-module columns.
    pub fn elements(&self) -> Vec<FreeModuleElement<C>> {
        let rank = self.rank();
        self.elems.iter().map(|v| vector_to_element(v, rank, self.arity, self.order)).collect()
    }

    /// Leading `(component, monomial)` of every basis element.
    pub fn leading_monomials(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|v| (v[0].comp as usize, v[0].mono)).collect()
    }

    /// True when the basis generates the whole ring (or free module).
    pub fn is_unit(&self) -> bool {
        let rank = self.rank();
        (0..rank).all(|c| {
            self.elems.iter().any(|v| v[0].comp as usize == c && v[0].mono.is_one())
        })
    }

    fn engine(&self) -> Engine<C> {
        let mut e = Engine::new(self.order, self.arity, self.kind, self.truncation);
        for v in &self.elems {
            e.elems.push(Elem { lm: v[0].mono, comp: v[0].comp, terms: v.clone() });
            e.active.push(true);
        }
        e
    }

    fn reduce_vector(&self, v: Vector<C>) -> Vector<C> {
        self.engine().reduce(v, None)
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        if self.kind != BasisKind::Ideal {
            return Err(Error::InvalidInput("polynomial reduced against a module basis".into()));
        }
        if f.arity() != self.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: f.arity() });
        }
        let r = self.reduce_vector(poly_to_vector(f, 0, self.order));
        Ok(vector_to_poly(&r, self.arity, self.order))
    }

    pub fn normal_form_vector(&self, f: &FreeModuleElement<C>) -> Result<FreeModuleElement<C>> {
        if f.rank() != self.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: f.rank() });
        }
        if f.arity() != self.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: f.arity() });
        }
        let r = self.reduce_vector(element_to_vector(f, self.order));
        Ok(vector_to_element(&r, self.rank(), self.arity, self.order))
    }

    /// Every monomial of total degree `k`, in every component, reduces to
    /// zero. Two variables only.
    pub fn contains_degree(&self, k: u32) -> bool {
        debug_assert_eq!(self.arity, 2);
        for comp in 0..self.rank() {
            for a in 0..=k {
                let m = Polynomial::monomial(Monomial::xy(a as u16, (k - a) as u16), self.order);
                if !self.reduce_vector(poly_to_vector(&m, comp as u16, self.order)).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_vector(&self, f: &FreeModuleElement<C>) -> Result<bool> {
        Ok(self.normal_form_vector(f)?.is_zero())
    }

    /// Normal form coordinates of `f` on the given standard monomial basis.
    pub(crate) fn coordinates(&self, f: &Polynomial<C>, basis: &StdIndex) -> Vec<C> {
        let r = self.reduce_vector(poly_to_vector(f, 0, self.order));
        let mut out = vec![C::zero(); basis.len()];
        for t in r {
            let i = basis.index(0, &t.mono).expect("normal form term is standard");
            out[i] = t.c;
        }
        out
    }

    /// Buchberger's criterion: every S-pair reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let e = self.engine();
        for i in 0..self.elems.len() {
            for j in (i + 1)..self.elems.len() {
                if e.elems[i].comp != e.elems[j].comp {
                    continue;
                }
                let p = e.make_pair(i, j);
                let s = e.spoly(&p);
                if !e.reduce(s, None).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Structural checks of the reduced-basis invariants.
    pub fn is_reduced_basis(&self) -> bool {
        for (i, v) in self.elems.iter().enumerate() {
            if !v[0].c.is_one() {
                return false;
            }
            for (j, w) in self.elems.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (lm, comp) = (w[0].mono, w[0].comp);
                if v.iter().any(|t| t.comp == comp && lm.divides(&t.mono)) {
                    return false;
                }
            }
        }
        true
    }

    fn leading_by_comp(&self, comp: usize) -> Vec<Monomial> {
        self.elems.iter().filter(|v| v[0].comp as usize == comp).map(|v| v[0].mono).collect()
    }

    /// Enumerate standard monomials, or report that there are infinitely many.
    pub fn standard_monomials(&self) -> StandardMonomials {
        let mut out = Vec::new();
        for comp in 0..self.rank() {
            let lms = self.leading_by_comp(comp);
            if lms.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = vec![0u16; self.arity];
            for (v, b) in bounds.iter_mut().enumerate() {
                match lms.iter().filter(|m| m.pure_power_var() == Some(v)).map(|m| m.exp(v)).min() {
                    Some(e) => *b = e,
                    None => return StandardMonomials::Infinite,
                }
            }
            let mut cur = vec![0u16; self.arity];
            loop {
                let m = Monomial::new(&cur);
                if !lms.iter().any(|l| l.divides(&m)) {
                    out.push((comp, m));
                }
                let mut k = 0;
                loop {
                    if k == self.arity {
                        break;
                    }
                    cur[k] += 1;
                    if cur[k] < bounds[k] {
                        break;
                    }
                    cur[k] = 0;
                    k += 1;
                }
                if k == self.arity {
                    break;
                }
            }
        }
        out.sort_by(|a, b| {
            b.0.cmp(&a.0).reverse().then(self.order.key(&b.1).cmp(&self.order.key(&a.1)))
        });
        StandardMonomials::Finite(out)
    }

    /// Number of standard monomials and their largest total degree, in two variables.
    ///
    /// `None` when the quotient is infinite-dimensional.
    pub fn quotient_profile(&self) -> Option<(usize, Option<u32>)> {
        if self.arity != 2 {
            return self.standard_monomials().count().map(|n| (n, None));
        }
        let mut count = 0usize;
        let mut max_deg: Option<u32> = None;
        for comp in 0..self.rank() {
            let lms = self.leading_by_comp(comp);
            if lms.iter().any(|m| m.is_one()) {
                continue;
            }
            let xa = lms.iter().filter(|m| m.exp(1) == 0).map(|m| m.exp(0)).min()?;
            lms.iter().filter(|m| m.exp(0) == 0).map(|m| m.exp(1)).min()?;
            for a in 0..xa {
                let height = lms
                    .iter()
                    .filter(|m| m.exp(0) <= a)
                    .map(|m| m.exp(1))
                    .min()
                    .expect("pure y-power present");
                if height > 0 {
                    count += height as usize;
                    let d = a as u32 + height as u32 - 1;
                    max_deg = Some(max_deg.map_or(d, |m| m.max(d)));
                }
            }
        }
        Some((count, max_deg))
    }
}

/// Index of standard monomials for coordinate computations.
pub(crate) struct StdIndex {
    items: Vec<(usize, Monomial)>,
    lookup: alloc::collections::BTreeMap<(usize, Monomial), usize>,
}

impl StdIndex {
    pub(crate) fn new(items: Vec<(usize, Monomial)>) -> Self {
        let lookup = items.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        StdIndex { items, lookup }
    }

    pub(crate) fn len(&self) -> usize {
        self.items.len()
    }

    pub(crate) fn items(&self) -> &[(usize, Monomial)] {
        &self.items
    }

    pub(crate) fn index(&self, comp: usize, m: &Monomial) -> Option<usize> {
        self.lookup.get(&(comp, *m)).copied()
    }
}

impl<C: Coeff> PartialEq for GroebnerBasis<C> {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.order == other.order
            && self.arity == other.arity
            && self.elems.len() == other.elems.len()
            && self.elems.iter().zip(&other.elems).all(|(a, b)| {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(s, t)| s.key == t.key && s.comp == t.comp && s.c == t.c)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp31, Rational};
    use crate::parse::parse_poly;

    type P = Polynomial<Rational>;

    fn p(s: &str) -> P {
        parse_poly(s, 2).unwrap()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis<Rational> {
        let g: Vec<P> = gens.iter().map(|s| p(s)).collect();
        groebner(&g, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn monomial_generators() {
        assert_eq!(gb(&["x", "y"]).polynomials(), vec![p("x"), p("y")]);
    }

    #[test]
    fn single_spair_reduces_to_zero() {
        // S(x^2+y, y^2) = y^2*(x^2+y) - x^2*y^2 = y^3 = y*(y^2)
        assert_eq!(gb(&["x^2 + y", "y^2"]).polynomials(), vec![p("x^2 + y"), p("y^2")]);
    }

    #[test]
    fn shuffled_input_gives_identical_basis() {
        let a = gb(&["x^2 - x", "x*y"]);
        let b = gb(&["x*y", "x^2 - x"]);
        assert_eq!(a, b);
        assert!(a.satisfies_buchberger_criterion());
        assert!(a.is_reduced_basis());
    }

    #[test]
    fn normal_form_examples() {
        let g = gb(&["x", "y"]);
        assert!(g.normal_form(&p("x^2")).unwrap().is_zero());
        assert_eq!(g.normal_form(&p("x^2 + 1")).unwrap(), p("1"));
        let h = gb(&["x^2 + y", "y^2"]);
        assert_eq!(h.normal_form(&p("x^3")).unwrap(), p("-x*y"));
    }

    #[test]
    fn standard_monomial_examples() {
        let s = gb(&["x^2", "y^2"]).standard_monomials();
        assert_eq!(s.count(), Some(4));
        if let StandardMonomials::Finite(v) = &s {
            let ms: Vec<Monomial> = v.iter().map(|x| x.1).collect();
            for m in [Monomial::xy(0, 0), Monomial::xy(1, 0), Monomial::xy(0, 1), Monomial::xy(1, 1)] {
                assert!(ms.contains(&m));
            }
        }
        assert_eq!(gb(&["x", "y"]).standard_monomials().count(), Some(1));
        assert_eq!(gb(&["x"]).standard_monomials(), StandardMonomials::Infinite);
        assert_eq!(gb(&["x^2", "y^2"]).quotient_profile(), Some((4, Some(2))));
    }

    #[test]
    fn kind_mismatch_in_normal_form() {
        let e = FreeModuleElement::new(vec![p("x"), p("y")]).unwrap();
        let m = groebner_module(&[e], MonomialOrder::GrevLex).unwrap();
        assert!(m.normal_form(&p("x")).is_err());
        assert!(gb(&["x"]).normal_form_vector(&FreeModuleElement::basis(2, 0, p("x"))).is_err());
    }

    #[test]
    fn truncated_basis_contains_power_of_maximal_ideal() {
        let g = groebner_truncated(&[p("x^2 - y^3")], MonomialOrder::GrevLex, 5).unwrap();
        for a in 0..=5 {
            assert!(g.contains(&P::xy(a, 5 - a)).unwrap());
        }
        // standard monomials: 1, x, y, xy, y^2, xy^2, y^3, xy^3, y^4, x y^4 ... bounded by degree 5
        let full: Vec<P> = vec![p("x^2 - y^3"), P::xy(5, 0), P::xy(4, 1), P::xy(3, 2), P::xy(2, 3), P::xy(1, 4), P::xy(0, 5)];
        let h = groebner(&full, MonomialOrder::GrevLex).unwrap();
        assert_eq!(g.polynomials(), h.polynomials());
    }

    #[test]
    fn module_basis_pot() {
        // columns (x, 0), (y, 0), (0, x), (0, y): m + m
        let cols: Vec<FreeModuleElement<Fp31>> = [("x", "0"), ("y", "0"), ("0", "x"), ("0", "y")]
            .iter()
            .map(|(a, b)| FreeModuleElement::new(vec![parse_poly(a, 2).unwrap(), parse_poly(b, 2).unwrap()]).unwrap())
            .collect();
        let g = groebner_module(&cols, MonomialOrder::GrevLex).unwrap();
        assert_eq!(g.standard_monomials().count(), Some(2));
        assert!(g.satisfies_buchberger_criterion());
        // column (y, x): quotient of F by it is infinite
        let c = FreeModuleElement::<Fp31>::new(vec![parse_poly("y", 2).unwrap(), parse_poly("x", 2).unwrap()]).unwrap();
        let g2 = groebner_module(&[c], MonomialOrder::GrevLex).unwrap();
        assert_eq!(g2.standard_monomials(), StandardMonomials::Infinite);
    }
}
