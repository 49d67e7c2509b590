use std::collections::HashMap;

use faer::Mat;
use gjs3_core::matrix::RationalMatrix;
use gjs3_core::model::ModelLetter;
use gjs3_core::scalar::to_f64;
use rayon::prelude::*;

use crate::config::SimulationConfig;
use crate::error::{Result, RmtError};
use crate::estimate::MomentEstimate;
use crate::sampling::{gaussian, haar_orthogonal, sequential_kernels, trial_rng};

/// Joint realization of the Wishart `A` and the rotated copy
/// `b ↦ U (b ⊗ I_{N/n}) Uᵀ` of `M_n`, one independent pair per trial.
#[derive(Clone, Debug)]
pub struct FreePairContext {
    config: SimulationConfig,
    letters: Vec<RationalMatrix>,
}

pub fn sample_free_pair(
    config: &SimulationConfig,
    matrix_letters: &[RationalMatrix],
) -> Result<FreePairContext> {
    config.validate()?;
    for m in matrix_letters {
        check_dim(config, m)?;
    }
    Ok(FreePairContext {
        config: config.clone(),
        letters: matrix_letters.to_vec(),
    })
}

fn check_dim(config: &SimulationConfig, m: &RationalMatrix) -> Result<()> {
    if m.dim() != config.n as usize {
        return Err(RmtError::Dimension {
            expected: config.n as usize,
            actual: m.dim(),
        });
    }
    Ok(())
}

/// How a word is evaluated from the trial data.
enum Plan {
    /// No `Z`: `tr(U (p ⊗ I) Uᵀ)`.
    MatrixOnly(RationalMatrix),
    /// Rotated to `Z p_1 Z p_2 ⋯ Z p_k`; each `p_i` may be the identity.
    Cyclic(Vec<RationalMatrix>),
}

fn plan(word: &[ModelLetter], n: usize) -> Result<Plan> {
    let matrices = |letters: &[ModelLetter]| {
        RationalMatrix::product(letters.iter().map(|l| match l {
            ModelLetter::Matrix(m) => m,
            ModelLetter::Z => unreachable!("split at Z"),
        }))
    };
    let Some(first) = word.iter().position(ModelLetter::is_z) else {
        return Ok(Plan::MatrixOnly(if word.is_empty() {
            RationalMatrix::identity(n)
        } else {
            matrices(word)?
        }));
    };
    let rotated: Vec<ModelLetter> = word[first..]
        .iter()
        .chain(&word[..first])
        .cloned()
        .collect();
    let mut runs = Vec::new();
    for chunk in rotated.split(ModelLetter::is_z).skip(1) {
        runs.push(if chunk.is_empty() {
            RationalMatrix::identity(n)
        } else {
            matrices(chunk)?
        });
    }
    Ok(Plan::Cyclic(runs))
}

impl FreePairContext {
    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn letters(&self) -> &[RationalMatrix] {
        &self.letters
    }

    pub fn estimate_word(&self, word: &[ModelLetter], trials: usize) -> Result<MomentEstimate> {
        Ok(self.estimate_words(&[word.to_vec()], trials)?.remove(0))
    }

    /// Normalized-trace estimates of several words from shared trials.
    pub fn estimate_words(
        &self,
        words: &[Vec<ModelLetter>],
        trials: usize,
    ) -> Result<Vec<MomentEstimate>> {
        if trials == 0 {
            return Err(RmtError::InvalidConfig("trials must be at least 1".into()));
        }
        let n = self.config.n as usize;
        for w in words {
            for l in w {
                if let ModelLetter::Matrix(m) = l {
                    check_dim(&self.config, m)?;
                }
            }
        }
        let plans = words
            .iter()
            .map(|w| plan(w, n))
            .collect::<Result<Vec<_>>>()?;
        sequential_kernels();
        let per_trial: Vec<Vec<f64>> = (0..trials)
            .into_par_iter()
            .map(|t| self.trial(t, &plans))
            .collect();
        Ok((0..words.len())
            .map(|i| {
                let samples: Vec<f64> = per_trial.iter().map(|v| v[i]).collect();
                MomentEstimate::from_samples(&samples)
            })
            .collect())
    }

    fn trial(&self, t: usize, plans: &[Plan]) -> Vec<f64> {
        let cfg = &self.config;
        let (size, n) = (cfg.size, cfg.n as usize);
        let s = size / n;
        let mut rng = trial_rng(cfg.seed, t);
        let x = gaussian(&mut rng, size, cfg.columns());
        let u = haar_orthogonal(&mut rng, size);

        let needs_z = plans.iter().any(|p| matches!(p, Plan::Cyclic(_)));
        let needs_trace = plans.iter().any(|p| matches!(p, Plan::MatrixOnly(_)));

        // h[i][j] = Y_iᵀ Y_j for the row blocks Y_i of Y = Uᵀ X.
        let mut h: Vec<Vec<Option<Mat<f64>>>> = vec![vec![None; n]; n];
        if needs_z {
            let y = u.transpose() * &x;
            for (i, row) in h.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate().skip(i) {
                    *slot = Some(y.subrows(i * s, s).transpose() * y.subrows(j * s, s));
                }
            }
        }
        // trace_blocks[i][j] = Tr of the (i, j) block of UᵀU.
        let mut trace_blocks = vec![vec![0.0; n]; n];
        if needs_trace {
            for (i, row) in trace_blocks.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = (0..s)
                        .map(|a| {
                            let (ci, cj) = (u.col(i * s + a), u.col(j * s + a));
                            (0..size).map(|r| ci[r] * cj[r]).sum::<f64>()
                        })
                        .sum();
                }
            }
        }

        let mut g_cache: HashMap<RationalMatrix, Mat<f64>> = HashMap::new();
        let mut prefix_cache: HashMap<Vec<RationalMatrix>, Mat<f64>> = HashMap::new();
        let scale = cfg.alpha / size as f64;
        plans
            .iter()
            .map(|plan| match plan {
                Plan::MatrixOnly(p) => {
                    let mut acc = 0.0;
                    for (i, row) in trace_blocks.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            acc += to_f64(p.get(i, j)) * v;
                        }
                    }
                    acc / size as f64
                }
                Plan::Cyclic(runs) => {
                    for p in runs {
                        g_cache.entry(p.clone()).or_insert_with(|| g_matrix(p, &h));
                    }
                    let k = runs.len();
                    let last = &g_cache[&runs[k - 1]];
                    let tr = if k == 1 {
                        (0..last.nrows()).map(|a| last[(a, a)]).sum::<f64>()
                    } else {
                        let prefix = prefix_product(&runs[..k - 1], &g_cache, &mut prefix_cache);
                        trace_of_product(prefix.as_ref().unwrap_or(&g_cache[&runs[0]]), last)
                    };
                    scale.powi(k as i32) * tr / size as f64
                }
            })
            .collect()
    }
}

/// `G_p = Yᵀ (p ⊗ I) Y = Σ_{ij} p_ij Y_iᵀ Y_j`.
#[allow(clippy::needless_range_loop)]
fn g_matrix(p: &RationalMatrix, h: &[Vec<Option<Mat<f64>>>]) -> Mat<f64> {
    let n = h.len();
    let m = h[0][0].as_ref().expect("gram blocks computed").nrows();
    let mut g = Mat::<f64>::zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            let c = to_f64(p.get(i, j));
            if c == 0.0 {
                continue;
            }
            if i <= j {
                let b = h[i][j].as_ref().expect("gram blocks computed");
                g += faer::Scale(c) * b;
            } else {
                let b = h[j][i].as_ref().expect("gram blocks computed");
                g += faer::Scale(c) * b.transpose();
            }
        }
    }
    g
}

/// Product `G_{p_1} ⋯ G_{p_j}`, cached by the run sequence; `None` for a
/// single factor, which the caller reads from the `G` cache directly.
fn prefix_product(
    runs: &[RationalMatrix],
    g_cache: &HashMap<RationalMatrix, Mat<f64>>,
    prefix_cache: &mut HashMap<Vec<RationalMatrix>, Mat<f64>>,
) -> Option<Mat<f64>> {
    if runs.len() == 1 {
        return None;
    }
    if let Some(p) = prefix_cache.get(runs) {
        return Some(p.clone());
    }
    let head = prefix_product(&runs[..runs.len() - 1], g_cache, prefix_cache);
    let left = head.as_ref().unwrap_or(&g_cache[&runs[0]]);
    let product = left * &g_cache[&runs[runs.len() - 1]];
    prefix_cache.insert(runs.to_vec(), product.clone());
    Some(product)
}

/// `Tr(AB) = Σ_{ab} A_ab B_ba`.
fn trace_of_product(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    let mut acc = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use gjs3_core::scalar::int;

    fn e(n: usize, i: usize, j: usize) -> ModelLetter {
        ModelLetter::Matrix(RationalMatrix::unit(n, i, j))
    }

    #[test]
    fn plans_rotate_to_z() {
        let w = [
            e(2, 0, 1),
            ModelLetter::Z,
            ModelLetter::Z,
            e(2, 1, 0),
            e(2, 0, 0),
        ];
        let Plan::Cyclic(runs) = plan(&w, 2).unwrap() else {
            panic!()
        };
        assert_eq!(runs.len(), 2);
        assert_eq!(runs[0], RationalMatrix::identity(2));
        // e21 e11 e12 = e22
        assert_eq!(runs[1], RationalMatrix::unit(2, 1, 1));
        assert!(matches!(plan(&[], 2).unwrap(), Plan::MatrixOnly(_)));
    }

    #[test]
    fn matrix_only_words_are_exact() {
        let cfg = SimulationConfig::for_model(120, 2, 3, 5);
        let x =
            RationalMatrix::from_rows(vec![vec![int(3), int(1)], vec![int(2), int(-5)]]).unwrap();
        let ctx = sample_free_pair(&cfg, std::slice::from_ref(&x)).unwrap();
        let est = ctx.estimate_word(&[ModelLetter::Matrix(x)], 3).unwrap();
        assert!((est.value - (-1.0)).abs() < 1e-12);
        assert!(est.std_error < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let cfg = SimulationConfig::for_model(120, 2, 1, 0);
        assert!(matches!(
            sample_free_pair(&cfg, &[RationalMatrix::identity(3)]),
            Err(RmtError::Dimension {
                expected: 2,
                actual: 3
            })
        ));
        let ctx = sample_free_pair(&cfg, &[]).unwrap();
        assert!(ctx.estimate_word(&[ModelLetter::Z, e(3, 0, 0)], 1).is_err());
        assert!(ctx.estimate_word(&[ModelLetter::Z], 0).is_err());
    }

    #[test]
    fn z_only_matches_spectrum() {
        // tr(A^k) from the Gram route equals the eigenvalue moment of the
        // same trial, since both draw X first from the same stream.
        let cfg = SimulationConfig::for_model(120, 2, 2, 11);
        let ctx = sample_free_pair(&cfg, &[]).unwrap();
        let spectra = crate::sample_free_poisson(&cfg).unwrap();
        for k in 1..=3u32 {
            let est = ctx
                .estimate_word(&vec![ModelLetter::Z; k as usize], 2)
                .unwrap();
            let direct = spectra.moment(k);
            assert!(
                (est.value - direct.value).abs() < 1e-9 * direct.value,
                "k={k}"
            );
        }
    }
}
