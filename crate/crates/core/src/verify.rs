//! Seeded property sweeps for the multiplicity formulas.
//!
//! Every sweep draws its instances from `seed` and gives instance `k` its own
//! sampler `sampler.fork(k)`, so a single instance can be replayed. An
//! instance passes when the identity holds, fails when both sides were
//! computed and differ, and counts as an error when a computation gave up.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bourbaki::{assume_pipeline, bourbaki_pair, br_all_rank, rank_two_terms};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::jones::{jones_br, jones_classify, JonesInstance};
use crate::linkage::{auslander_br, br_by_links, colength_by_links, link_chain, submatrix_chain};
use crate::matrix::PolyMatrix;
use crate::modmult::{self, ModulePresentation};
use crate::monomial::{Monomial, MonomialOrder};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::Polynomial;
use crate::sampler::GeneralElementSampler;

/// Fresh samplers tried per instance before it counts as an error.
pub const INSTANCE_RETRIES: u64 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: usize,
    pub fail: usize,
    pub errors: usize,
    /// Instances excluded by the suite's own rules (degenerate configurations).
    pub skipped: usize,
    pub first_failure: Option<String>,
    pub tallies: BTreeMap<String, usize>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), ..Default::default() }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.errors
    }

    pub fn all_passed(&self) -> bool {
        self.fail == 0 && self.errors == 0
    }

    fn record(&mut self, outcome: Outcome, describe: impl FnOnce() -> String) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail(msg) => {
                self.fail += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{}: {msg}", describe()));
                }
            }
            Outcome::Error(err) => {
                self.errors += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{}: {err}", describe()));
                }
            }
        }
    }

    fn tally(&mut self, key: String) {
        *self.tallies.entry(key).or_default() += 1;
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Error(Error),
}

/// Run `check` with fresh forks until it produces an answer.
fn with_retries(
    sampler: &mut GeneralElementSampler,
    k: u64,
    mut check: impl FnMut(&mut GeneralElementSampler) -> Result<Option<String>>,
) -> Outcome {
    let mut last = Error::GenericityFailure { trials: 0, values: Vec::new() };
    for attempt in 0..INSTANCE_RETRIES {
        let mut s = sampler.fork(k * INSTANCE_RETRIES + attempt);
        match check(&mut s) {
            Ok(None) => return Outcome::Pass,
            Ok(Some(msg)) => return Outcome::Fail(msg),
            Err(err @ (Error::GenericityFailure { .. } | Error::InvolutionFailure)) => last = err,
            Err(err) => return Outcome::Error(err),
        }
    }
    Outcome::Error(last)
}

/// m-primary monomial ideal with `2..=max_gens` minimal generators and
/// exponents at most `max_exp`.
pub fn random_monomial_ideal(rng: &mut ChaCha8Rng, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let k = rng.random_range(2..=max_gens.clamp(2, max_exp as usize + 1));
    // k - 1 distinct positive x exponents and k - 1 distinct positive y exponents
    let mut xs = distinct(rng, k - 1, max_exp);
    let mut ys = distinct(rng, k - 1, max_exp);
    xs.insert(0, 0);
    ys.sort_unstable_by(|a, b| b.cmp(a));
    ys.push(0);
    let pts: Vec<(u32, u32)> = xs.into_iter().zip(ys).collect();
    MonomialIdeal::new(&pts).expect("m-primary")
}

fn distinct(rng: &mut ChaCha8Rng, n: usize, max: u32) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(n);
    while out.len() < n {
        let v = rng.random_range(1..=max);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort_unstable();
    out
}

/// `r x (r + extra)` matrix with entries of one or two terms of degree
/// `1..=max_deg` (or zero), redrawn until `Fitt0(F/M)` vanishes only at the
/// origin. The global test is cheap; proving infinite local length is not.
pub fn random_module<C: Coeff>(
    rng: &mut ChaCha8Rng,
    r: usize,
    extra: usize,
    max_deg: u32,
) -> ModulePresentation<C> {
    loop {
        let rows: Vec<Vec<Polynomial<C>>> =
            (0..r).map(|_| (0..r + extra).map(|_| random_entry(rng, max_deg)).collect()).collect();
        let m = ModulePresentation::new(PolyMatrix::new(rows, 2).expect("rectangular")).expect("rank");
        if m.fitt0().is_m_primary().unwrap_or(false) {
            return m;
        }
    }
}

fn random_entry<C: Coeff>(rng: &mut ChaCha8Rng, max_deg: u32) -> Polynomial<C> {
    let mut p = Polynomial::zero(2, MonomialOrder::GrevLex);
    if rng.random_range(0..3) == 0 {
        return p;
    }
    for _ in 0..rng.random_range(1..=2) {
        let deg = rng.random_range(1..=max_deg);
        let a = rng.random_range(0..=deg);
        let c = rng.random_range(1..=9i64) * if rng.random_bool(0.5) { 1 } else { -1 };
        let term = Polynomial::monomial(Monomial::xy(a as u16, (deg - a) as u16), MonomialOrder::GrevLex);
        p = &p + &term.scale(&C::from_i64(c));
    }
    p
}

fn describe_module<C: Coeff>(m: &ModulePresentation<C>) -> String {
    m.matrix().to_string()
}

/// `ℓ(R/a) = Σ (-1)^i e(a_i)` along a chain of links.
pub fn rankone<C: Coeff>(count: usize, seed: u64, sampler: &mut GeneralElementSampler) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("rankone");
    for k in 0..count {
        let a = random_monomial_ideal(&mut rng, 5, 12);
        let mut links = None;
        let outcome = with_retries(sampler, k as u64, |s| {
            let ideal = a.to_ideal::<C>();
            let chain = link_chain(&ideal, s)?;
            links = Some(chain.links.len());
            let lhs = a.colength()?;
            let rhs = colength_by_links(&chain);
            Ok((lhs != rhs).then(|| format!("colength {lhs}, chain sum {rhs} over {:?}", chain.multiplicities)))
        });
        if let Some(n) = links {
            report.tally(format!("{n} links"));
        }
        report.record(outcome, || a.to_string());
    }
    report
}

/// `br_by_links = buchsbaum_rim` and the Auslander chain equals the reversed
/// submatrix chain, on modules of rank 2 and 3.
pub fn shortformula<C: Coeff>(count: usize, seed: u64, sampler: &mut GeneralElementSampler) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("shortformula");
    for k in 0..count {
        let r = 2 + k % 2;
        let m: ModulePresentation<C> = random_module(&mut rng, r, 2, if r == 2 { 3 } else { 2 });
        let mut value = None;
        let outcome = with_retries(sampler, k as u64, |s| {
            let direct = modmult::br(&m, s)?;
            value = Some(direct);
            let links = br_by_links(&m, s)?;
            if links.br != direct {
                return Ok(Some(format!("chain formula {} vs br {direct}", links.br)));
            }
            let sc = submatrix_chain(&m, s)?;
            let aus = auslander_br(&sc.matrix, Some(sc.e_fitt0), s)?;
            if !aus.matches_reversed_chain {
                return Ok(Some("Auslander chain differs from the submatrix chain".into()));
            }
            Ok(None)
        });
        report.tally(format!("rank {r}"));
        if let Some(v) = value {
            report.tally(format!("br {v}"));
        }
        report.record(outcome, || describe_module(&m));
    }
    report
}

/// `ℓ(R/a) = Σ (-1)^{i+1} e(Fitt_i(a))` for integral closures of random
/// monomial ideals.
pub fn ingclosed(count: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("ingclosed");
    for _ in 0..count {
        let a = random_monomial_ideal(&mut rng, 5, 12);
        let outcome = match a.integral_closure().and_then(|c| Ok((c.ingclosed_sum()?, c.colength()?, c))) {
            Ok((sum, len, _)) if sum == len => Outcome::Pass,
            Ok((sum, len, c)) => Outcome::Fail(format!("closure {c}: sum {sum}, colength {len}")),
            Err(err) => Outcome::Error(err),
        };
        report.record(outcome, || a.to_string());
    }
    report
}

/// The all-rank formula equals `br(M)` on certified pipelines of rank 2 and 3.
pub fn thmallrank<C: Coeff>(count: usize, seed: u64, sampler: &mut GeneralElementSampler) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("thmallrank");
    for k in 0..count {
        let r = 2 + k % 2;
        let m: ModulePresentation<C> = random_module(&mut rng, r, 2, 2);
        let mut value = None;
        let outcome = with_retries(sampler, k as u64, |s| {
            let g = bourbaki_pair(&m, s)?.v;
            let data = assume_pipeline(&m, &g, s)?;
            let formula = br_all_rank(&data);
            let direct = modmult::br(&m, s)? as i64;
            value = Some(direct as u64);
            if formula != direct {
                return Ok(Some(format!("formula {formula} vs br {direct}")));
            }
            if data.hs_difference != data.e_j as i64 - data.e_i as i64 {
                return Ok(Some(format!(
                    "length difference {} vs e(J) - e(I) = {}",
                    data.hs_difference,
                    data.e_j as i64 - data.e_i as i64
                )));
            }
            Ok(None)
        });
        report.tally(format!("rank {r}"));
        if let Some(v) = value {
            report.tally(format!("br {v}"));
        }
        report.record(outcome, || describe_module(&m));
    }
    report
}

/// Every non-degenerate tuple with `s, t, i, j, d, e <= max`.
pub fn jones<C: Coeff>(max: u32, sampler: &mut GeneralElementSampler) -> SuiteReport {
    let mut report = SuiteReport::new("jones");
    let mut k = 0u64;
    for s in 1..=max {
        for t in 1..=max {
            for i in 1..=max {
                for j in 1..=max {
                    for d in 0..=max {
                        for e in 0..=max {
                            if d + e == 0 {
                                continue;
                            }
                            let inst = JonesInstance::new(s, t, i, j, d, e).expect("valid parameters");
                            let Ok(case) = jones_classify(&inst) else {
                                report.skipped += 1;
                                continue;
                            };
                            k += 1;
                            let mut smp = sampler.fork(k);
                            let outcome = match jones_br::<C>(&inst, &mut smp) {
                                Ok(r) => {
                                    report.tally(format!("{} {:?}", case.label(), r.method));
                                    Outcome::Pass
                                }
                                Err(err @ Error::AreaMismatch { .. }) => {
                                    report.tally(format!("{} AREA_MISMATCH", case.label()));
                                    Outcome::Fail(err.to_string())
                                }
                                Err(err) => Outcome::Error(err),
                            };
                            report.record(outcome, || format!("{inst:?}"));
                        }
                    }
                }
            }
        }
    }
    report
}

/// The rank two matrix whose special `J'` breaks the formula.
pub fn counterexample_module<C: Coeff>() -> ModulePresentation<C> {
    ModulePresentation::parse(&[
        alloc::vec!["x^16", "0", "0", "x^5*y^4", "-y^14"],
        alloc::vec!["0", "y^10", "x^8*y^4", "0", "x^20"],
    ])
    .expect("valid matrix")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub e_i: u64,
    pub e_j: u64,
    pub e_fitt_ij: u64,
    pub e_fitt_ijprime: u64,
    pub rhs: i64,
    pub br: u64,
    /// The all-rank formula on a general pipeline for the same `M` and `G`.
    pub pipeline: Option<i64>,
}

impl CounterexampleReport {
    pub fn matches(&self) -> bool {
        self.rhs == self.br as i64
    }
}

/// `G` is the last column, `J' = (x^36 + y^24, x^25 y^4)` comes from the
/// lifts `m_1 + m_2` and `m_4`.
pub fn counterexample<C: Coeff>(with_pipeline: bool, sampler: &mut GeneralElementSampler) -> Result<CounterexampleReport> {
    let m = counterexample_module::<C>();
    let g = m.matrix().select_columns(&[4]);
    let cols = m.columns();
    let w1 = cols[0].add(&cols[1])?;
    let terms = rank_two_terms(&m, &g, [&w1, &cols[3]], sampler)?;
    let br = modmult::br(&m, sampler)?;
    let pipeline = if with_pipeline { Some(br_all_rank(&assume_pipeline(&m, &g, sampler)?)) } else { None };
    Ok(CounterexampleReport {
        e_i: terms.e_i,
        e_j: terms.e_j,
        e_fitt_ij: terms.e_fitt_ij,
        e_fitt_ijprime: terms.e_fitt_ijprime,
        rhs: terms.rhs,
        br,
        pipeline,
    })
}
