//! `mult`: multiplicities of ideals and modules of `k[x, y]` at the origin.
//!
//! Every command prints one JSON report. Exit status is 0 on success, 2 when
//! a formula disagrees with its oracle and 1 for anything else.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use brmult_core::hilbert::{self, DIFFERENCE_POWER_CAP};
use brmult_core::jones::{jones_br, jones_classify, jones_family, JonesFamily, JonesInstance};
use brmult_core::modmult::{self, buchsbaum_rim};
use brmult_core::parse::parse_ideal;
use brmult_core::svg::staircase_svg;
use brmult_core::verify;
use brmult_core::{Coeff, Error, Fp31, GeneralElementSampler, ModulePresentation, MonomialIdeal, Rational, Route};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "mult", version, about = "Hilbert-Samuel and Buchsbaum-Rim multiplicities over k[x, y] at the origin")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient field. Defaults to q, except `verify`, which defaults to fp.
    #[arg(long, global = true, value_enum)]
    field: Option<Field>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials per general choice.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    #[arg(long, global = true, value_enum)]
    route: Option<RouteArg>,
    /// Power cap for the finite-difference route.
    #[arg(long, global = true, default_value_t = DIFFERENCE_POWER_CAP)]
    max_power: u32,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Write a staircase picture here (monomial ideals and `jones`).
    #[arg(long, global = true)]
    svg_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert-Samuel multiplicity e(a).
    E {
        /// Comma separated generators, e.g. "x^2, x*y, y^2".
        #[arg(long)]
        gens: String,
    },
    /// Colength of the ideal at the origin.
    Colength {
        #[arg(long)]
        gens: String,
    },
    /// Buchsbaum-Rim multiplicity of the module generated by the columns.
    Br {
        /// JSON array of rows of polynomial strings.
        #[arg(long)]
        matrix: String,
    },
    /// The rank two module with F/M = (x^s, y^t)/(x^{s+i}, x^d y^{t+e}, y^{t+j}).
    Jones {
        /// "s,t,i,j,d,e"
        #[arg(long)]
        params: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Number of random instances (suite default when omitted).
        #[arg(long)]
        count: Option<usize>,
        /// Parameter bound for the jones sweep.
        #[arg(long, default_value_t = 6)]
        max: u32,
        /// Also run the general pipeline in the counterexample.
        #[arg(long)]
        pipeline: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Q,
    Fp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RouteArg {
    Reduction,
    Difference,
    Newton,
    Lambda,
    All,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Reduction => Route::Reduction,
            RouteArg::Difference => Route::Difference,
            RouteArg::Newton => Route::Newton,
            RouteArg::Lambda => Route::Lambda,
            RouteArg::All => Route::All,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Rankone,
    Shortformula,
    Ingclosed,
    Thmallrank,
    Jones,
    Counterexample,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Mismatch(_) | Error::AreaMismatch { .. }) => 2,
            _ => 1,
        }
    }
}

/// A report and the exit status it calls for.
struct Outcome {
    report: Map<String, Value>,
    mismatch: bool,
}

impl Outcome {
    fn ok(report: Map<String, Value>) -> Self {
        Outcome { report, mismatch: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let default_field = if matches!(cli.command, Command::Verify { .. }) { Field::Fp } else { Field::Q };
    let field = cli.field.unwrap_or(default_field);
    let result = match field {
        Field::Q => run::<Rational>(&cli),
        Field::Fp => run::<Fp31>(&cli),
    };
    match result {
        Ok(mut out) => {
            out.report.insert("field".into(), if field == Field::Q { "QQ" } else { "GF(2147483647)" }.into());
            out.report.insert("seed".into(), report::int(cli.seed));
            out.report.insert("trials".into(), cli.trials.into());
            out.report.insert("version".into(), env!("CARGO_PKG_VERSION").into());
            out.report.insert("wall_time_ms".into(), report::int(start.elapsed().as_millis() as i128));
            let text = serde_json::to_string_pretty(&Value::Object(out.report)).expect("serializable");
            println!("{text}");
            if let Some(path) = &cli.json_out {
                if let Err(err) = fs::write(path, format!("{text}\n")) {
                    eprintln!("error: {err}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(if out.mismatch { 2 } else { 0 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn sampler(cli: &Cli) -> GeneralElementSampler {
    GeneralElementSampler::new(cli.seed).with_trials(cli.trials.max(1))
}

fn run<C: Coeff>(cli: &Cli) -> Result<Outcome, CliError> {
    let mut s = sampler(cli);
    match &cli.command {
        Command::E { gens } => {
            let a = parse_ideal::<C>(gens, 2)?;
            let route = cli.route.map(Route::from).unwrap_or(Route::All);
            let r = hilbert::multiplicity_with_cap(&a, route, &mut s, cli.max_power)?;
            let mut out = report::multiplicity("e", &r);
            out.insert("command".into(), "e".into());
            out.insert("gens".into(), gens.as_str().into());
            write_staircase(cli, &a)?;
            Ok(Outcome::ok(out))
        }
        Command::Colength { gens } => {
            let a = parse_ideal::<C>(gens, 2)?;
            let r = a.local_colength()?;
            let mut out = Map::new();
            out.insert("command".into(), "colength".into());
            out.insert("gens".into(), gens.as_str().into());
            if let Value::Object(m) = report::local_length(&r) {
                out.extend(m);
            }
            write_staircase(cli, &a)?;
            Ok(Outcome::ok(out))
        }
        Command::Br { matrix } => {
            let rows: Vec<Vec<String>> =
                serde_json::from_str(matrix).map_err(|e| CliError::Input(format!("matrix: {e}")))?;
            let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
            let m = ModulePresentation::<C>::parse(&rows)?;
            let route = cli.route.map(Route::from).unwrap_or(Route::All);
            let r = buchsbaum_rim(&m, route, &mut s)?;
            let mut out = report::multiplicity("br", &r);
            out.insert("command".into(), "br".into());
            out.insert("rank".into(), m.rank().into());
            let mismatch = !r.consistent;
            Ok(Outcome { report: out, mismatch })
        }
        Command::Jones { params } => jones::<C>(cli, params, &mut s),
        Command::Verify { suite, count, max, pipeline } => verify_suite::<C>(*suite, *count, *max, *pipeline, cli, &mut s),
    }
}

fn write_staircase<C: Coeff>(cli: &Cli, a: &brmult_core::Ideal<C>) -> Result<(), CliError> {
    let Some(path) = &cli.svg_out else { return Ok(()) };
    let m = MonomialIdeal::from_ideal(a).map_err(|_| CliError::Input("--svg-out needs monomial generators".into()))?;
    fs::write(path, staircase_svg(&m, None)?)?;
    Ok(())
}

fn parse_params(text: &str) -> Result<JonesInstance, CliError> {
    let v: Vec<u32> = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("params: {e}")))?;
    let [s, t, i, j, d, e] = v[..] else {
        return Err(CliError::Input("params: expected six numbers s,t,i,j,d,e".into()));
    };
    Ok(JonesInstance::new(s, t, i, j, d, e)?)
}

fn jones<C: Coeff>(cli: &Cli, params: &str, s: &mut GeneralElementSampler) -> Result<Outcome, CliError> {
    let inst = parse_params(params)?;
    let mut out = Map::new();
    out.insert("command".into(), "jones".into());
    out.insert("params".into(), json!([inst.s, inst.t, inst.i, inst.j, inst.d, inst.e]));
    out.insert("points".into(), report::jones_points(&inst));
    out.insert(
        "family".into(),
        match jones_family(&inst) {
            Ok(JonesFamily::A) => "A".into(),
            Ok(JonesFamily::B) => "B".into(),
            Err(_) => Value::Null,
        },
    );
    match jones_classify(&inst) {
        Ok(c) => out.insert("case".into(), c.label().into()),
        Err(e) => out.insert("degenerate".into(), e.to_string().into()),
    };
    if let Some(path) = &cli.svg_out {
        fs::write(path, staircase_svg(&inst.ideal_j(), Some(&inst))?)?;
    }
    match jones_br::<C>(&inst, s) {
        Ok(r) => {
            out.extend(report::jones(&r));
            Ok(Outcome::ok(out))
        }
        Err(Error::Degenerate(_)) => {
            // no reduction certified and no area formula applies
            out.insert("br".into(), report::int(modmult::br(&inst.module::<C>(), s)?));
            out.insert("method".into(), "ORACLE".into());
            Ok(Outcome::ok(out))
        }
        Err(err @ Error::AreaMismatch { delta, .. }) => {
            out.insert("delta".into(), report::int(delta));
            out.insert("error".into(), err.to_string().into());
            Ok(Outcome { report: out, mismatch: true })
        }
        Err(err) => Err(err.into()),
    }
}

fn verify_suite<C: Coeff>(
    suite: Suite,
    count: Option<usize>,
    max: u32,
    pipeline: bool,
    cli: &Cli,
    s: &mut GeneralElementSampler,
) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    let r = match suite {
        Suite::Rankone => verify::rankone::<C>(count.unwrap_or(25), seed, s),
        Suite::Shortformula => verify::shortformula::<C>(count.unwrap_or(10), seed, s),
        Suite::Ingclosed => verify::ingclosed(count.unwrap_or(15), seed),
        Suite::Thmallrank => verify::thmallrank::<C>(count.unwrap_or(10), seed, s),
        Suite::Jones => verify::jones::<C>(max, s),
        Suite::Counterexample => {
            let r = verify::counterexample::<C>(pipeline, s)?;
            let Value::Object(mut out) = report::counterexample(&r) else { unreachable!() };
            out.insert("command".into(), "verify".into());
            let mismatch = r.pipeline.is_some_and(|p| p != r.br as i64);
            return Ok(Outcome { report: out, mismatch });
        }
    };
    let Value::Object(mut out) = report::suite(&r) else { unreachable!() };
    out.insert("command".into(), "verify".into());
    if matches!(suite, Suite::Jones) {
        out.insert("max".into(), max.into());
    }
    Ok(Outcome { report: out, mismatch: r.fail > 0 })
}
