use crate::error::{Result, RmtError};

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationConfig {
    /// Matrix dimension `N`.
    pub size: usize,
    /// Group order of the model.
    pub n: u32,
    pub lambda: f64,
    pub alpha: f64,
    pub trials: usize,
    pub seed: u64,
    /// Eigenvalues below this count towards the atom at zero.
    pub epsilon_atom: f64,
}

impl SimulationConfig {
    pub const MIN_SIZE: usize = 100;

    /// Rate `1/n`, jump `n` and `epsilon_atom = 1e-6·n`.
    pub fn for_model(size: usize, n: u32, trials: usize, seed: u64) -> Self {
        Self {
            size,
            n,
            lambda: 1.0 / n as f64,
            alpha: n as f64,
            trials,
            seed,
            epsilon_atom: 1e-6 * n as f64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(RmtError::InvalidConfig(msg));
        if self.size < Self::MIN_SIZE {
            return fail(format!("N = {} is below {}", self.size, Self::MIN_SIZE));
        }
        if self.n < 2 {
            return fail(format!("n = {} must be at least 2", self.n));
        }
        if !self.size.is_multiple_of(self.n as usize) {
            return fail(format!(
                "N = {} is not divisible by n = {}",
                self.size, self.n
            ));
        }
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) || !self.alpha.is_finite() {
            return fail(format!(
                "rate {} and jump {} must be finite with positive rate",
                self.lambda, self.alpha
            ));
        }
        if self.columns() < 1 {
            return fail(format!(
                "M = floor(lambda N) = {} is below 1",
                self.columns()
            ));
        }
        if self.epsilon_atom.is_nan() || self.epsilon_atom < 0.0 {
            return fail(format!(
                "epsilon_atom = {} must be nonnegative",
                self.epsilon_atom
            ));
        }
        Ok(())
    }

    /// `M = ⌊λN⌋`, the number of Wishart columns.
    pub fn columns(&self) -> usize {
        (self.lambda * self.size as f64).floor() as usize
    }

    /// One-line summary, used as the CSV header.
    pub fn describe(&self) -> String {
        format!(
            "N={} n={} lambda={} alpha={} trials={} seed={} epsilon_atom={}",
            self.size, self.n, self.lambda, self.alpha, self.trials, self.seed, self.epsilon_atom
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_defaults() {
        let c = SimulationConfig::for_model(2000, 2, 50, 7);
        assert_eq!(c.columns(), 1000);
        assert_eq!(c.epsilon_atom, 2e-6);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_bad_configs() {
        let base = SimulationConfig::for_model(300, 3, 4, 0);
        assert!(base.validate().is_ok());
        for bad in [
            SimulationConfig {
                size: 99,
                ..base.clone()
            },
            SimulationConfig {
                size: 301,
                ..base.clone()
            },
            SimulationConfig {
                trials: 0,
                ..base.clone()
            },
            SimulationConfig {
                n: 1,
                ..base.clone()
            },
            SimulationConfig {
                lambda: 1e-4,
                ..base.clone()
            },
            SimulationConfig {
                epsilon_atom: f64::NAN,
                ..base.clone()
            },
        ] {
            assert!(
                matches!(bad.validate(), Err(RmtError::InvalidConfig(_))),
                "{bad:?}"
            );
        }
    }
}
