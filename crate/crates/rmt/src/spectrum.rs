use std::io::Write;

use faer::{Scale, Side};
use rayon::prelude::*;

use crate::config::SimulationConfig;
use crate::error::{Result, RmtError};
use crate::estimate::MomentEstimate;
use crate::marchenko_pastur;
use crate::sampling::{gaussian, sequential_kernels, trial_rng};

/// Eigenvalues of the Wishart approximant, one spectrum per trial.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSample {
    pub config: SimulationConfig,
    /// Ascending eigenvalues of each trial.
    pub eigenvalues: Vec<Vec<f64>>,
}

/// Spectra of `A = (α/N) X Xᵀ`, `X` an `N × ⌊λN⌋` standard Gaussian matrix.
pub fn sample_free_poisson(config: &SimulationConfig) -> Result<SpectralSample> {
    config.validate()?;
    sequential_kernels();
    let eigenvalues = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.seed, t);
            let x = gaussian(&mut rng, config.size, config.columns());
            let a = &x * x.transpose() * Scale(config.alpha / config.size as f64);
            let mut ev = a
                .self_adjoint_eigenvalues(Side::Lower)
                .map_err(|e| RmtError::Linalg(format!("{e:?}")))?;
            ev.sort_by(f64::total_cmp);
            Ok(ev)
        })
        .collect::<Result<_>>()?;
    Ok(SpectralSample {
        config: config.clone(),
        eigenvalues,
    })
}

impl SpectralSample {
    fn per_trial(&self, f: impl Fn(&[f64]) -> f64) -> MomentEstimate {
        let samples: Vec<f64> = self.eigenvalues.iter().map(|ev| f(ev)).collect();
        MomentEstimate::from_samples(&samples)
    }

    /// Normalized trace of `A^k`.
    pub fn moment(&self, k: u32) -> MomentEstimate {
        self.per_trial(|ev| ev.iter().map(|x| x.powi(k as i32)).sum::<f64>() / ev.len() as f64)
    }

    /// Fraction of eigenvalues with `|x| < epsilon_atom`.
    pub fn atom_fraction(&self) -> MomentEstimate {
        let eps = self.config.epsilon_atom;
        self.per_trial(|ev| ev.iter().filter(|x| x.abs() < eps).count() as f64 / ev.len() as f64)
    }

    /// Among eigenvalues outside the atom, the fraction lying outside the
    /// limiting support widened by `margin` on both sides.
    pub fn outside_support_fraction(&self, margin: f64) -> f64 {
        let (a, b) = marchenko_pastur::support(self.config.lambda, self.config.alpha);
        let eps = self.config.epsilon_atom;
        let bulk = self.eigenvalues.iter().flatten().filter(|x| x.abs() >= eps);
        let (total, outside) = bulk.fold((0usize, 0usize), |(t, o), &x| {
            (t + 1, o + (x < a - margin || x > b + margin) as usize)
        });
        if total == 0 {
            0.0
        } else {
            outside as f64 / total as f64
        }
    }

    /// Counts over `bins` equal bins of `[lo, hi)`; values outside are dropped.
    pub fn histogram(&self, lo: f64, hi: f64, bins: usize) -> Vec<usize> {
        let mut counts = vec![0; bins];
        let width = (hi - lo) / bins as f64;
        for &x in self.eigenvalues.iter().flatten() {
            if x >= lo && x < hi {
                counts[(((x - lo) / width) as usize).min(bins - 1)] += 1;
            }
        }
        counts
    }

    /// A `#`-prefixed config header, then one eigenvalue per line.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "# {}", self.config.describe())?;
        writeln!(out, "eigenvalue")?;
        for x in self.eigenvalues.iter().flatten() {
            writeln!(out, "{x:e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sample_shapes() {
        let cfg = SimulationConfig::for_model(120, 3, 2, 9);
        let s = sample_free_poisson(&cfg).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!(s.eigenvalues.iter().all(|e| e.len() == 120));
        // Rank is M = 40, so exactly 80 eigenvalues sit at zero.
        assert_eq!(s.atom_fraction().value, 80.0 / 120.0);
        assert_eq!(s.histogram(-1.0, 100.0, 5).iter().sum::<usize>(), 240);
    }

    #[test]
    fn csv_layout() {
        let s = sample_free_poisson(&SimulationConfig::for_model(100, 2, 1, 1)).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# N=100 n=2"));
        assert_eq!(lines[1], "eigenvalue");
        assert_eq!(lines.len(), 102);
        assert!(lines[2..].iter().all(|l| l.parse::<f64>().is_ok()));
    }
}
