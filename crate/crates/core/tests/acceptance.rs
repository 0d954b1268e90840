//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails or runs past its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use brmult_core::coeff::{Coeff, Fp31, Rational};
use brmult_core::groebner::groebner;
use brmult_core::hilbert::{difference_multiplicity, minimal_reduction_ideal, multiplicity, Route, DIFFERENCE_POWER_CAP};
use brmult_core::modmult::{buchsbaum_rim, minimal_reduction_module};
use brmult_core::verify::{self, random_module, random_monomial_ideal, CounterexampleReport};
use brmult_core::{Error, GeneralElementSampler, Ideal, Monomial, MonomialOrder, Polynomial, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20;

/// Field for everything that draws random general elements.
type F = Fp31;

type Check = std::result::Result<String, String>;

/// Retries on a fresh sampler when random choices were not general.
fn retry<T>(sampler: &mut GeneralElementSampler, mut f: impl FnMut(&mut GeneralElementSampler) -> Result<T>) -> Result<T> {
    let mut last = None;
    for attempt in 0..3 {
        match f(&mut sampler.fork(attempt)) {
            Err(err @ (Error::GenericityFailure { .. } | Error::InvolutionFailure { .. })) => last = Some(err),
            other => return other,
        }
    }
    Err(last.unwrap())
}

fn counterexample(report: &Result<CounterexampleReport>) -> Check {
    let r = report.as_ref().map_err(|e| e.to_string())?;
    let got = [r.e_i as i64, r.e_j as i64, r.e_fitt_ij as i64, r.e_fitt_ijprime as i64, r.rhs, r.br as i64];
    if got == [280, 744, 546, 594, 416, 420] {
        Ok(format!("e(I)=280 e(J)=744 e(F0(I/J))=546 e(F0(I/J'))=594 rhs=416 br=420"))
    } else {
        Err(format!("got {got:?}"))
    }
}

fn suite(r: verify::SuiteReport, want: usize) -> Check {
    let line = format!("{}/{want} ({} failed, {} errors)", r.pass, r.fail, r.errors);
    if r.pass == want && r.all_passed() {
        Ok(line)
    } else {
        Err(format!("{line}; first: {:?}", r.first_failure))
    }
}

fn reductions() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut sampler = GeneralElementSampler::new(SEED);
    let mut ideals: Vec<Ideal<F>> = (0..10).map(|_| random_monomial_ideal(&mut rng, 5, 8).to_ideal()).collect();
    ideals.extend((0..10).map(|_| random_module::<F>(&mut rng, 1, 2, 3).fitt0().clone()));
    let mut es = Vec::new();
    for a in &ideals {
        let red = retry(&mut sampler, |s| minimal_reduction_ideal(a, s)).map_err(|e| format!("{a}: {e}"))?;
        let b = &red.ideal;
        let checks = [
            b.gens().len() == 2,
            a.locally_contains_ideal(b).map_err(|e| e.to_string())?,
            b.colength().map_err(|e| e.to_string())? == red.value,
            difference_multiplicity(a, DIFFERENCE_POWER_CAP).map_err(|e| e.to_string())? == red.value,
        ];
        if checks.contains(&false) {
            return Err(format!("{a}: reduction {b} checks {checks:?}"));
        }
        es.push(red.value);
    }
    let mut brs = Vec::new();
    for _ in 0..10 {
        let m = random_module::<F>(&mut rng, 2, 2, 4);
        let red = retry(&mut sampler, |s| minimal_reduction_module(&m, s)).map_err(|e| e.to_string())?;
        let len = red.module.colength().map_err(|e| e.to_string())?;
        let fitt = red.module.fitt0().colength().map_err(|e| e.to_string())?;
        if red.module.ngens() != 3 || len != red.br || fitt != red.br {
            return Err(format!("{}: br {} l(F/U) {len} l(R/Fitt0) {fitt}", m.matrix(), red.br));
        }
        brs.push(red.br);
    }
    Ok(format!("20 ideals with e in {es:?}, 10 modules with br in {brs:?}"))
}

fn oracle_triangle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut sampler = GeneralElementSampler::new(SEED + 1);
    for _ in 0..30 {
        let a: Ideal<F> = random_monomial_ideal(&mut rng, 4, 6).to_ideal();
        let r = retry(&mut sampler, |s| multiplicity(&a, Route::All, s)).map_err(|e| format!("{a}: {e}"))?;
        if !r.consistent || r.routes.len() != 3 {
            return Err(format!("{a}: {:?}", r.routes));
        }
    }
    for _ in 0..5 {
        let m = random_module::<F>(&mut rng, 2, 1, 2);
        let red = retry(&mut sampler, |s| buchsbaum_rim(&m, Route::Reduction, s)).map_err(|e| e.to_string())?;
        let lambda = buchsbaum_rim(&m, Route::Lambda, &mut sampler).map_err(|e| e.to_string())?;
        if red.value != lambda.value {
            return Err(format!("{}: reduction {} lambda {}", m.matrix(), red.value, lambda.value));
        }
    }
    Ok("30 ideals, 5 modules".into())
}

fn small_poly<C: Coeff>(rng: &mut ChaCha8Rng, terms: usize, max_deg: u32) -> Polynomial<C> {
    let mut p = Polynomial::zero(2, MonomialOrder::GrevLex);
    for _ in 0..terms {
        let deg = rng.random_range(0..=max_deg);
        let a = rng.random_range(0..=deg);
        let c = C::from_i64(rng.random_range(-5..=5));
        p = &p + &Polynomial::term(c, Monomial::xy(a as u16, (deg - a) as u16), MonomialOrder::GrevLex);
    }
    p
}

fn eval_at_one_two(p: &Polynomial<Rational>) -> Rational {
    p.terms().iter().fold(Rational::zero(), |acc, (m, c)| {
        acc.add(&c.mul(&Rational::from_i64(1i64 << m.exp(1))))
    })
}

fn groebner_engine() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for _ in 0..50 {
        let n = rng.random_range(2..=3);
        let mut gens: Vec<Polynomial<Rational>> =
            (0..n).map(|_| small_poly(&mut rng, 3, 3)).filter(|p| !p.is_zero()).collect();
        let g = groebner(&gens, MonomialOrder::GrevLex).map_err(|e| e.to_string())?;
        gens.reverse();
        gens.rotate_left(1);
        let scaled: Vec<_> = gens.iter().map(|p| p.scale(&Rational::new(-3, 7))).collect();
        let h = groebner(&scaled, MonomialOrder::GrevLex).map_err(|e| e.to_string())?;
        if g != h || !g.satisfies_buchberger_criterion() || !g.is_reduced_basis() {
            return Err(format!("basis depends on input order for {gens:?}"));
        }
    }
    // every generator vanishes at (1, 2), so adding x^a y^b leaves the ideal
    let (x1, y2) = (
        &Polynomial::<Rational>::xy(1, 0) - &Polynomial::constant(Rational::one(), 2, MonomialOrder::GrevLex),
        &Polynomial::<Rational>::xy(0, 1) - &Polynomial::constant(Rational::from_i64(2), 2, MonomialOrder::GrevLex),
    );
    let mut right = 0;
    for k in 0..50 {
        let gens: Vec<Polynomial<Rational>> = (0..2)
            .map(|_| &(&small_poly(&mut rng, 2, 2) * &x1) + &(&small_poly(&mut rng, 2, 2) * &y2))
            .collect();
        let mut f = gens.iter().fold(Polynomial::zero(2, MonomialOrder::GrevLex), |acc, g| {
            &acc + &(&small_poly(&mut rng, 2, 2) * g)
        });
        let member = k % 2 == 0;
        if !member {
            f = &f + &Polynomial::xy(rng.random_range(0..4), rng.random_range(0..4));
            assert!(!eval_at_one_two(&f).is_zero());
        }
        let g = groebner(&gens, MonomialOrder::GrevLex).map_err(|e| e.to_string())?;
        if g.contains(&f).map_err(|e| e.to_string())? == member {
            right += 1;
        }
    }
    if right == 50 {
        Ok("50 shuffled bases, membership 50/50".into())
    } else {
        Err(format!("membership {right}/50"))
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut line = |n: usize, name: &str, limit: u64, run: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let late = took > Duration::from_secs(limit);
        let (status, detail) = match (&result, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the time limit")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("[{status}] {n} {name}: {detail} ({:.1}s, limit {limit}s)", took.as_secs_f64());
    };

    let mut sampler = GeneralElementSampler::new(SEED);
    let mut report = None;
    line(1, "counterexample", 600, &mut || {
        let r = verify::counterexample::<F>(true, &mut sampler.fork(1));
        let out = counterexample(&r);
        report = Some(r);
        out
    });
    line(2, "rank one alternating sums", 300, &mut || suite(verify::rankone::<F>(25, SEED, &mut sampler.fork(2)), 25));
    line(3, "integrally closed Fitting sums", 60, &mut || suite(verify::ingclosed(15, SEED), 15));
    line(4, "reductions compute multiplicities", 300, &mut reductions);
    line(5, "oracle triangle", 600, &mut oracle_triangle);
    line(6, "short formula and Auslander chains", 600, &mut || {
        suite(verify::shortformula::<F>(10, SEED, &mut sampler.fork(6)), 10)
    });
    line(7, "all-rank formula", 600, &mut || {
        let mut out = suite(verify::thmallrank::<F>(10, SEED, &mut sampler.fork(7)), 10)?;
        match report.as_ref() {
            Some(Ok(r)) if r.rhs == 416 && r.br == 420 && r.pipeline == Some(420) => {
                out.push_str("; special J' gives 416 against 420, general J' gives 420");
                Ok(out)
            }
            Some(Ok(r)) => Err(format!("special J' rhs {} br {} general {:?}", r.rhs, r.br, r.pipeline)),
            _ => Err("counterexample did not run".into()),
        }
    });
    line(8, "Jones sweep", 1800, &mut || {
        let r = verify::jones::<F>(6, &mut sampler.fork(8));
        let total = r.pass + r.fail + r.errors;
        let skipped = r.skipped;
        suite(r, total).map(|s| format!("{s}, {skipped} degenerate skipped"))
    });
    line(9, "Groebner engine", 300, &mut groebner_engine);

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
