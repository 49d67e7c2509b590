//! The `gjs3` command line: parses arguments, runs one operation and renders
//! a [`CommandResult`] as JSON.

#[macro_use]
mod output;
mod args;
mod error;
pub mod syntax;

use std::ffi::OsString;
use std::fs::File;
use std::io::BufWriter;
use std::sync::Arc;

use clap::Parser;
use gjs3_core::factor::{dykema_free_product, m3_description};
use gjs3_core::freeprob::freeness_check;
use gjs3_core::matrix::RationalMatrix;
use gjs3_core::model::{
    dim_box, floating_loops, pi_term, tau_word, z_moment, FreeModel, ModelLetter, ModelParams,
};
use gjs3_core::nc::{
    block_count_histogram, catalan, cumulants_to_moments, enumerate_nc, mobius,
    moments_to_cumulants, pi_tilde, pi_tilde_brute, GroundSet, NonCrossingPartition,
};
use gjs3_core::scalar::{self, int_pow, ratio, to_f64, Scalar};
use gjs3_core::verify::{CriterionOutcome, Suite, CRITERIA};
use gjs3_rmt::marchenko_pastur;
use gjs3_rmt::{sample_free_pair, sample_free_poisson, MomentEstimate, SimulationConfig};
use serde_json::{json, Value};

use args::*;
pub use error::{CliError, Result};
pub use output::{CommandResult, Provenance};

const LIST_CAP: usize = 12;

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut stderr = String::new();
    let executed = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(cli.command, &mut stderr)),
            Err(e) => Err(CliError::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => execute(cli.command, &mut stderr),
    };
    match executed {
        Ok(result) => {
            let stdout = serde_json::to_string_pretty(&result.to_json())
                .expect("json values serialize")
                + "\n";
            Outcome {
                code: if result.failed { 1 } else { 0 },
                stdout,
                stderr,
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: stderr + &format!("error: {e}\n"),
        },
    }
}

fn execute(command: Command, log: &mut String) -> Result<CommandResult> {
    match command {
        Command::Nc(c) => nc(c),
        Command::Cumulants(c) => cumulants(c),
        Command::Model(c) => model(c),
        Command::Free(c) => free(c),
        Command::Factor(c) => factor(c),
        Command::Rmt(c) => rmt(c),
        Command::Verify(c) => verify(c, log),
    }
}

fn s(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn params_of(n: u32) -> Result<ModelParams> {
    Ok(ModelParams::new(n)?)
}

fn partition(text: &str) -> Result<NonCrossingPartition> {
    Ok(NonCrossingPartition::from_blocks(syntax::parse_blocks(
        text,
    )?)?)
}

fn nc(c: NcCommand) -> Result<CommandResult> {
    match c {
        NcCommand::Enum { q, list } => {
            let hist = block_count_histogram(q)?;
            let count: u64 = hist.iter().sum();
            let mut result = json!({
                "count": count,
                "catalan": catalan(q as u32).to_string(),
                "by_blocks": hist,
            });
            if list {
                if q > LIST_CAP {
                    return Err(CliError::Usage(format!(
                        "--list is limited to q <= {LIST_CAP}"
                    )));
                }
                let all: Vec<String> = enumerate_nc(&GroundSet::interval(q))?
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                result["partitions"] = json!(all);
            }
            Ok(CommandResult::exact(
                "nc enum",
                params!("q" => q, "list" => list),
                result,
            ))
        }
        NcCommand::Mobius { pi, sigma } => {
            let value = mobius(&partition(&pi)?, &partition(&sigma)?)?;
            Ok(CommandResult::exact(
                "nc mobius",
                params!("pi" => pi, "sigma" => sigma),
                s(&value),
            ))
        }
        NcCommand::Pitilde { q, d, pi, brute } => {
            let d_set = GroundSet::new(syntax::parse_list(&d)?)?;
            if d_set.elements().last().is_some_and(|&x| x as usize > q) {
                return Err(CliError::Usage(format!("D = {d_set} is not inside [{q}]")));
            }
            let e_set = d_set.complement_in_interval(q);
            let pi_part = NonCrossingPartition::new(d_set.clone(), syntax::parse_blocks(&pi)?)?;
            let tilde = if brute {
                pi_tilde_brute(&d_set, &e_set, &pi_part)?
            } else {
                pi_tilde(&d_set, &e_set, &pi_part)?
            };
            let result = json!({
                "pi_tilde": tilde.to_string(),
                "blocks": tilde.blocks(),
                "e": e_set.elements(),
                "floating_loops": floating_loops(&d_set, &e_set, &pi_part)?,
            });
            Ok(CommandResult::exact(
                "nc pitilde",
                params!("q" => q, "d" => d, "pi" => pi, "brute" => brute),
                result,
            ))
        }
    }
}

/// Univariate transform: letter `()` repeated, functional indexed by length.
fn univariate(values: &[Scalar], to_cumulants: bool) -> Result<Vec<Scalar>> {
    let f = |w: &[()]| -> gjs3_core::Result<Scalar> { Ok(values[w.len() - 1].clone()) };
    (1..=values.len())
        .map(|q| {
            let letters = vec![(); q];
            Ok(if to_cumulants {
                moments_to_cumulants(&f, &letters)?
            } else {
                cumulants_to_moments(&f, &letters)?
            })
        })
        .collect()
}

fn cumulants(c: CumulantsCommand) -> Result<CommandResult> {
    let (op, key, text, to_cumulants) = match &c {
        CumulantsCommand::FromMoments { moments } => {
            ("cumulants from-moments", "moments", moments, true)
        }
        CumulantsCommand::ToMoments { cumulants } => {
            ("cumulants to-moments", "cumulants", cumulants, false)
        }
    };
    let values = syntax::parse_rationals(text)?;
    let out = univariate(&values, to_cumulants)?;
    Ok(CommandResult::exact(
        op,
        params!(key => text),
        json!(out.iter().map(s).collect::<Vec<_>>()),
    ))
}

fn word_json(word: &[ModelLetter]) -> Value {
    json!(word
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" "))
}

fn model(c: ModelCommand) -> Result<CommandResult> {
    match c {
        ModelCommand::Tau { order, word } => {
            let p = params_of(order.n)?;
            let value = tau_word(&syntax::parse_word(&word)?, &p)?;
            Ok(CommandResult::exact(
                "model tau",
                params!("n" => order.n, "word" => word),
                s(&value),
            ))
        }
        ModelCommand::PiTerm { order, word, pi } => {
            let p = params_of(order.n)?;
            let letters = syntax::parse_word(&word)?;
            let b = pi_term(&letters, &partition(&pi)?, &p)?;
            let traces: Vec<Value> = b
                .block_traces
                .iter()
                .map(|(v, t)| json!({"block": v, "trace": s(t)}))
                .collect();
            let result = json!({
                "pi": b.pi.to_string(),
                "pi_tilde": b.pi_tilde.to_string(),
                "cumulant_factor": s(&b.cumulant_factor),
                "block_traces": traces,
                "floating_loops": b.loop_count,
                "value": s(&b.value),
            });
            Ok(CommandResult::exact(
                "model pi-term",
                params!("n" => order.n, "word" => word, "pi" => pi),
                result,
            ))
        }
        ModelCommand::ZMoment { order, m } => {
            let value = z_moment(m, &params_of(order.n)?)?;
            Ok(CommandResult::exact(
                "model z-moment",
                params!("n" => order.n, "m" => m),
                s(&value),
            ))
        }
        ModelCommand::Dims { order, k } => {
            let value = dim_box(k, &params_of(order.n)?)?;
            Ok(CommandResult::exact(
                "model dims",
                params!("n" => order.n, "k" => k),
                json!(value.to_string()),
            ))
        }
    }
}

fn matrix_units(n: usize) -> Vec<ModelLetter> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| ModelLetter::Matrix(RationalMatrix::unit(n, i, j))))
        .collect()
}

fn free(c: FreeCommand) -> Result<CommandResult> {
    match c {
        FreeCommand::Check { order, max_q } => {
            let p = params_of(order.n)?;
            let source = |w: &[ModelLetter]| tau_word(w, &p);
            let report = freeness_check(
                &[vec![ModelLetter::Z], matrix_units(order.n as usize)],
                max_q,
                &source,
            )?;
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    let word: Vec<ModelLetter> = v.tuple.iter().map(|t| t.1.clone()).collect();
                    json!({"word": word_json(&word), "cumulant": s(&v.cumulant)})
                })
                .collect();
            let result = json!({
                "certified": report.certified(),
                "checked": report.checked,
                "completed_q": report.completed_q,
                "truncated": report.truncated,
                "violation_count": report.violation_count,
                "violations": violations,
            });
            let mut out = CommandResult::exact(
                "free check",
                params!("n" => order.n, "max_q" => max_q),
                result,
            );
            out.failed = !report.certified();
            Ok(out)
        }
        FreeCommand::ProductMoment { order, word } => {
            let value = FreeModel::new(params_of(order.n)?).moment(&syntax::parse_word(&word)?)?;
            Ok(CommandResult::exact(
                "free product-moment",
                params!("n" => order.n, "word" => word),
                s(&value),
            ))
        }
    }
}

fn factor(c: FactorCommand) -> Result<CommandResult> {
    match c {
        FactorCommand::Dykema { r, alpha, d } => {
            let desc = dykema_free_product(&scalar::parse(&r)?, &scalar::parse(&alpha)?, d)?;
            Ok(CommandResult::exact(
                "factor dykema",
                params!("r" => r, "alpha" => alpha, "d" => d),
                json!(desc.to_string()),
            ))
        }
        FactorCommand::M3 { order } => {
            let desc = m3_description(&params_of(order.n)?)?;
            Ok(CommandResult::exact(
                "factor m3",
                params!("n" => order.n),
                json!(desc.to_string()),
            ))
        }
    }
}

fn simulation_config(sim: &SimulationArgs) -> Result<SimulationConfig> {
    let mut cfg = SimulationConfig::for_model(sim.size, sim.n, sim.trials, sim.seed);
    if let Some(eps) = sim.epsilon_atom {
        cfg.epsilon_atom = eps;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn estimate_json(e: &MomentEstimate) -> Value {
    json!({
        "value": e.value,
        "std_error": e.std_error,
        "trials": e.trials,
        "std_error_available": e.std_error_available,
    })
}

fn sim_params(sim: &SimulationArgs, cfg: &SimulationConfig) -> serde_json::Map<String, Value> {
    params!(
        "size" => sim.size,
        "n" => sim.n,
        "trials" => sim.trials,
        "seed" => sim.seed,
        "lambda" => cfg.lambda,
        "alpha" => cfg.alpha,
        "epsilon_atom" => cfg.epsilon_atom,
    )
}

fn rmt(c: RmtCommand) -> Result<CommandResult> {
    match c {
        RmtCommand::Sample { sim, out, bins } => {
            let cfg = simulation_config(&sim)?;
            if bins == 0 {
                return Err(CliError::Usage("--bins must be at least 1".into()));
            }
            let sample = sample_free_poisson(&cfg)?;
            if let Some(path) = &out {
                sample.write_csv(BufWriter::new(File::create(path)?))?;
            }
            let exact = params_of(sim.n)?;
            let moments: Vec<Value> = (1..=4u32)
                .map(|k| {
                    Ok(json!({
                        "k": k,
                        "estimate": estimate_json(&sample.moment(k)),
                        "exact": to_f64(&z_moment(k as usize, &exact)?),
                    }))
                })
                .collect::<Result<_>>()?;
            let (a, b) = marchenko_pastur::support(cfg.lambda, cfg.alpha);
            let hi = b + 0.5;
            let result = json!({
                "moments": moments,
                "atom_fraction": estimate_json(&sample.atom_fraction()),
                "atom_mass_limit": marchenko_pastur::atom_mass(cfg.lambda, cfg.alpha),
                "support": [a, b],
                "outside_support_fraction": sample.outside_support_fraction(0.3),
                "histogram": {"lo": 0.0, "hi": hi, "counts": sample.histogram(0.0, hi, bins)},
            });
            let mut p = sim_params(&sim, &cfg);
            p.insert("bins".into(), json!(bins));
            p.insert("out".into(), json!(out.map(|o| o.display().to_string())));
            Ok(CommandResult::monte_carlo("rmt sample", p, result))
        }
        RmtCommand::Estimate { sim, word } => {
            let cfg = simulation_config(&sim)?;
            let exact_params = params_of(sim.n)?;
            let words = word
                .iter()
                .map(|w| syntax::parse_word(w))
                .collect::<Result<Vec<_>>>()?;
            let letters: Vec<RationalMatrix> = words
                .iter()
                .flatten()
                .filter_map(|l| match l {
                    ModelLetter::Matrix(m) => Some(m.clone()),
                    ModelLetter::Z => None,
                })
                .collect();
            let ctx = sample_free_pair(&cfg, &letters)?;
            let estimates = ctx.estimate_words(&words, cfg.trials)?;
            let rows: Vec<Value> = words
                .iter()
                .zip(&estimates)
                .map(|(w, e)| {
                    let exact = tau_word(w, &exact_params)?;
                    Ok(json!({
                        "word": word_json(w),
                        "estimate": estimate_json(e),
                        "exact": s(&exact),
                        "z_score": finite_or_null(e.z_score(to_f64(&exact))),
                    }))
                })
                .collect::<Result<_>>()?;
            let mut p = sim_params(&sim, &cfg);
            p.insert("words".into(), json!(word));
            Ok(CommandResult::monte_carlo("rmt estimate", p, json!(rows)))
        }
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn outcome_json(o: &CriterionOutcome) -> Value {
    json!({
        "id": o.id,
        "title": o.title,
        "passed": o.passed,
        "detail": o.detail,
        "seconds": o.elapsed.as_secs_f64(),
    })
}

fn verify(c: VerifyCommand, log: &mut String) -> Result<CommandResult> {
    let VerifyCommand::All {
        criteria,
        seed,
        mutate,
    } = c;
    let ids: Vec<u32> = match &criteria {
        Some(text) => syntax::parse_list(text)?,
        None => CRITERIA.to_vec(),
    };
    for id in &ids {
        Suite::title(*id)
            .map_err(|_| CliError::Usage(format!("unknown criterion {id}; choose from 1-8")))?;
    }
    let mut suite = Suite::new();
    if let Some(seed) = seed {
        suite = suite.with_seed(seed);
    }
    match mutate {
        Some(Mutation::Exponent) => {
            suite = suite.with_weight(Arc::new(|d, b, n| int_pow(n as u64, (d - b + 1) as u32)));
        }
        Some(Mutation::Single) => {
            suite = suite.with_weight(Arc::new(|d, b, n| {
                let w = int_pow(n as u64, (d - b) as u32);
                if d == 4 && b == 2 {
                    w * ratio(9, 10)
                } else {
                    w
                }
            }));
        }
        None => {}
    }
    let mut outcomes = Vec::new();
    for id in ids {
        let o = suite.run(id)?;
        log.push_str(&format!("{o}\n"));
        outcomes.push(o);
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let mut p = params!("criteria" => criteria, "seed" => seed);
    if let Some(m) = mutate {
        p.insert("mutate".into(), json!(format!("{m:?}").to_lowercase()));
    }
    let mut out = CommandResult::exact(
        "verify all",
        p,
        json!({"passed": passed, "criteria": outcomes.iter().map(outcome_json).collect::<Vec<_>>()}),
    );
    out.failed = !passed;
    Ok(out)
}
