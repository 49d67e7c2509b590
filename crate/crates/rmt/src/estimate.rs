/// Mean over trials with its standard error `s/√trials`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub value: f64,
    pub std_error: f64,
    pub trials: usize,
    /// False for a single trial, where `std_error` is reported as 0.
    pub std_error_available: bool,
}

impl MomentEstimate {
    /// Panics on an empty sample.
    pub fn from_samples(samples: &[f64]) -> Self {
        assert!(!samples.is_empty(), "no samples");
        let t = samples.len();
        let value = samples.iter().sum::<f64>() / t as f64;
        if t == 1 {
            return Self {
                value,
                std_error: 0.0,
                trials: 1,
                std_error_available: false,
            };
        }
        let var = samples.iter().map(|x| (x - value).powi(2)).sum::<f64>() / (t - 1) as f64;
        Self {
            value,
            std_error: (var / t as f64).sqrt(),
            trials: t,
            std_error_available: true,
        }
    }

    /// `|value − exact|` in units of the standard error; infinite when the
    /// error is zero but the values differ beyond `1e-9` relative.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = (self.value - exact).abs();
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff <= 1e-9 * exact.abs().max(1.0) {
            0.0
        } else {
            f64::INFINITY
        }
    }
}
