//! Möbius function of `NC`, from the defining recursion
//! `μ(π, π) = 1`, `Σ_{π ≤ ρ ≤ σ} μ(π, ρ) = 0` for `π < σ`.
//!
//! An interval `[π, σ]` splits as the product over blocks `W` of `σ` of
//! `[π|W, 1_W]`, so everything reduces to `μ(π, 1_k)` for a partition on
//! `k` points. Those values are memoized on the canonical relabelling of
//! `π`, which identifies isomorphic top intervals arising from different
//! ground sets.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use super::table::NcTable;
use super::{refines_labels, NonCrossingPartition};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `μ(π, σ)` for `π ≤ σ`.
pub fn mobius(pi: &NonCrossingPartition, sigma: &NonCrossingPartition) -> Result<Scalar> {
    if pi.ground() != sigma.ground() {
        return Err(Error::GroundMismatch(
            pi.ground().to_string(),
            sigma.ground().to_string(),
        ));
    }
    let pi_labels = pi.labels();
    if !refines_labels(&pi_labels, &sigma.labels()) {
        return Err(Error::NotRefinement(pi.to_string(), sigma.to_string()));
    }
    Ok(mobius_labels(&pi_labels, &sigma.position_blocks()))
}

/// `μ(π, σ)` with `π` as labels and `σ` as position blocks; assumes `π ≤ σ`.
pub(crate) fn mobius_labels(pi: &[usize], sigma_blocks: &[Vec<usize>]) -> Scalar {
    let mut acc = Scalar::one();
    for w in sigma_blocks {
        acc *= mobius_to_top_labels(&restrict(pi, w));
    }
    acc
}

/// Labels of `π` restricted to the positions `w`, renumbered by first
/// appearance.
fn restrict(pi: &[usize], w: &[usize]) -> Vec<usize> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    w.iter()
        .map(|&p| {
            let l = pi[p];
            match map.iter().find(|(from, _)| *from == l) {
                Some(&(_, to)) => to,
                None => {
                    let to = map.len();
                    map.push((l, to));
                    to
                }
            }
        })
        .collect()
}

/// `μ(π, 1_k)` for canonical labels `π` on `k` points.
pub(crate) fn mobius_to_top_labels(pi: &[usize]) -> Scalar {
    if pi.iter().all(|&l| l == 0) {
        return Scalar::one();
    }
    static MEMO: OnceLock<RwLock<HashMap<Vec<u8>, Scalar>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key: Vec<u8> = pi.iter().map(|&l| l as u8).collect();
    if let Some(v) = memo.read().unwrap().get(&key) {
        return v.clone();
    }
    let table = NcTable::get(pi.len()).expect("size already validated by caller");
    let mut sum = Scalar::zero();
    for (rho_labels, rho_blocks) in table.labels().iter().zip(table.blocks()) {
        if rho_blocks.len() == 1 || !refines_labels(pi, rho_labels) {
            continue;
        }
        sum += mobius_labels(pi, rho_blocks);
    }
    let value = -sum;
    memo.write().unwrap().insert(key, value.clone());
    value
}
