//! Acceptance suite: the eight exact criteria plus the Monte Carlo check,
//! one PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gjs3_core::matrix::RationalMatrix;
use gjs3_core::model::{tau_word, ModelLetter, ModelParams};
use gjs3_core::scalar::to_f64;
use gjs3_core::verify::{CriterionOutcome, Suite, CRITERIA};
use gjs3_rmt::marchenko_pastur::atom_mass;
use gjs3_rmt::{sample_free_pair, sample_free_poisson, SimulationConfig};

const SIZE: usize = 2000;
const N: u32 = 2;
const TRIALS: usize = 50;
const SEED: u64 = 20_250_901;
const TIME_BUDGET: Duration = Duration::from_secs(600);

fn mixed_words(alphabet: &[ModelLetter], max_len: u32) -> Vec<Vec<ModelLetter>> {
    let k = alphabet.len();
    let mut out = Vec::new();
    for len in 1..=max_len {
        for code in 0..k.pow(len) {
            let mut c = code;
            let w: Vec<ModelLetter> = (0..len)
                .map(|_| {
                    let l = alphabet[c % k].clone();
                    c /= k;
                    l
                })
                .collect();
            if w.iter().any(ModelLetter::is_z) && w.iter().any(|l| !l.is_z()) {
                out.push(w);
            }
        }
    }
    out
}

fn monte_carlo() -> CriterionOutcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let cfg = SimulationConfig::for_model(SIZE, N, TRIALS, SEED);
    let params = ModelParams::new(N).unwrap();

    let spectra = sample_free_poisson(&cfg).unwrap();
    let atom = spectra.atom_fraction();
    let expected_atom = 1.0 - 1.0 / N as f64;
    let quadrature = atom_mass(cfg.lambda, cfg.alpha);
    if (atom.value - expected_atom).abs() > 0.02 * expected_atom
        || (quadrature - expected_atom).abs() > 1e-9
    {
        bad.push(format!(
            "atom {:.4} (quadrature {quadrature:.6})",
            atom.value
        ));
    }
    let z2 = spectra.moment(2);
    let z2_score = z2.z_score(3.0);
    if z2_score > 4.0 {
        bad.push(format!("tau(Z^2) {:.5} +- {:.5}", z2.value, z2.std_error));
    }

    let e11 = RationalMatrix::unit(2, 0, 0);
    let flip = RationalMatrix::unit(2, 0, 1)
        .add(&RationalMatrix::unit(2, 1, 0))
        .unwrap();
    let alphabet = [
        ModelLetter::Z,
        ModelLetter::Matrix(e11.clone()),
        ModelLetter::Matrix(flip.clone()),
    ];
    let words = mixed_words(&alphabet, 4);
    let ctx = sample_free_pair(&cfg, &[e11, flip]).unwrap();
    let estimates = ctx.estimate_words(&words, TRIALS).unwrap();
    let mut worst: f64 = 0.0;
    for (w, e) in words.iter().zip(&estimates) {
        let exact = to_f64(&tau_word(w, &params).unwrap());
        let z = e.z_score(exact);
        worst = worst.max(z);
        if z > 4.0 {
            let text: Vec<String> = w.iter().map(ToString::to_string).collect();
            bad.push(format!(
                "{}: {:.5} +- {:.5} vs {exact}",
                text.join(" "),
                e.value,
                e.std_error
            ));
        }
    }

    // Bit-reproducibility: the first trials replayed in a fresh run.
    let replay_cfg = SimulationConfig {
        trials: 2,
        ..cfg.clone()
    };
    if sample_free_poisson(&replay_cfg).unwrap().eigenvalues[..] != spectra.eigenvalues[..2] {
        bad.push("spectra not reproducible".into());
    }
    let few = &words[..6];
    let replay = sample_free_pair(&replay_cfg, ctx.letters()).unwrap();
    if replay.estimate_words(few, 2).unwrap() != replay.estimate_words(few, 2).unwrap() {
        bad.push("word estimates not reproducible".into());
    }

    let elapsed = start.elapsed();
    if elapsed > TIME_BUDGET {
        bad.push(format!("took {:.0}s", elapsed.as_secs_f64()));
    }
    let passed = bad.is_empty();
    let detail = if passed {
        format!(
            "N={SIZE} n={N} trials={TRIALS}: atom {:.4}, tau(Z^2) {:.4} ({z2_score:.2} se), {} mixed words, worst {worst:.2} se",
            atom.value,
            z2.value,
            words.len()
        )
    } else {
        format!("{} failures: {}", bad.len(), bad.join("; "))
    };
    CriterionOutcome {
        id: 9,
        title: "Monte Carlo agreement",
        passed,
        detail,
        elapsed,
    }
}

fn main() -> ExitCode {
    let suite = Suite::new();
    let mut all_passed = true;
    for id in CRITERIA {
        let outcome = suite.run(id).unwrap_or_else(|e| CriterionOutcome {
            id,
            title: Suite::title(id).unwrap_or("unknown"),
            passed: false,
            detail: format!("error: {e}"),
            elapsed: Duration::ZERO,
        });
        all_passed &= outcome.passed;
        println!("{outcome}");
    }
    let mc = monte_carlo();
    all_passed &= mc.passed;
    println!("{mc}");
    if all_passed {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
