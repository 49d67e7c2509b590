//! Multiplicative extensions and the moment/cumulant transforms.

use num_traits::{One, Zero};

use super::mobius::mobius_labels;
use super::table::NcTable;
use super::{enumerate_nc, refines_labels, NonCrossingPartition};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A family `φ_q : S^q → Q`, one map per tuple length.
pub trait PartitionFunctional<L> {
    fn eval(&self, letters: &[L]) -> Result<Scalar>;
}

impl<L, F> PartitionFunctional<L> for F
where
    F: Fn(&[L]) -> Result<Scalar>,
{
    fn eval(&self, letters: &[L]) -> Result<Scalar> {
        self(letters)
    }
}

fn check_arity(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Arity { expected, actual });
    }
    Ok(())
}

/// Product over position blocks of `φ` on the block's letters, taken in
/// increasing order. Stops at the first zero factor.
pub(crate) fn extend_positions<L: Clone, F: PartitionFunctional<L> + ?Sized>(
    phi: &F,
    blocks: &[Vec<usize>],
    letters: &[L],
) -> Result<Scalar> {
    let mut acc = Scalar::one();
    let mut buf = Vec::with_capacity(letters.len());
    for block in blocks {
        buf.clear();
        buf.extend(block.iter().map(|&p| letters[p].clone()));
        let v = phi.eval(&buf)?;
        if v.is_zero() {
            return Ok(v);
        }
        acc *= v;
    }
    Ok(acc)
}

/// `φ_π(letters)`; `letters[i]` sits at the `i`-th ground element of `pi`.
pub fn multiplicative_extension<L: Clone, F: PartitionFunctional<L> + ?Sized>(
    phi: &F,
    pi: &NonCrossingPartition,
    letters: &[L],
) -> Result<Scalar> {
    check_arity(pi.len(), letters.len())?;
    extend_positions(phi, &pi.position_blocks(), letters)
}

/// `κ_q = Σ_{π ∈ NC(q)} μ(π, 1_q) φ_π`.
pub fn moments_to_cumulants<L: Clone, F: PartitionFunctional<L> + ?Sized>(
    phi: &F,
    letters: &[L],
) -> Result<Scalar> {
    if letters.is_empty() {
        return Err(Error::Arity {
            expected: 1,
            actual: 0,
        });
    }
    let table = NcTable::get(letters.len())?;
    let mut sum = Scalar::zero();
    for (blocks, mu) in table.blocks().iter().zip(table.mobius_to_top()) {
        let term = extend_positions(phi, blocks, letters)?;
        if !term.is_zero() {
            sum += term * mu;
        }
    }
    Ok(sum)
}

/// `φ_q = Σ_{π ∈ NC(q)} κ_π`.
pub fn cumulants_to_moments<L: Clone, F: PartitionFunctional<L> + ?Sized>(
    kappa: &F,
    letters: &[L],
) -> Result<Scalar> {
    if letters.is_empty() {
        return Err(Error::Arity {
            expected: 1,
            actual: 0,
        });
    }
    let table = NcTable::get(letters.len())?;
    let mut sum = Scalar::zero();
    for blocks in table.blocks() {
        sum += extend_positions(kappa, blocks, letters)?;
    }
    Ok(sum)
}

/// Outcome of the partition-restricted transforms for one `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormsReport {
    /// `φ_τ = Σ_{π ≤ τ} κ_π`
    pub moments_from_cumulants: bool,
    /// `κ_τ = Σ_{π ≤ τ} μ(π, τ) φ_π`
    pub cumulants_from_moments: bool,
}

impl FormsReport {
    pub fn holds(&self) -> bool {
        self.moments_from_cumulants && self.cumulants_from_moments
    }
}

/// Checks both sums over the interval `[0, τ]`.
pub fn partitioned_forms_check<L, F, K>(
    phi: &F,
    kappa: &K,
    tau: &NonCrossingPartition,
    letters: &[L],
) -> Result<FormsReport>
where
    L: Clone,
    F: PartitionFunctional<L> + ?Sized,
    K: PartitionFunctional<L> + ?Sized,
{
    check_arity(tau.len(), letters.len())?;
    let tau_labels = tau.labels();
    let tau_blocks = tau.position_blocks();
    let mut kappa_sum = Scalar::zero();
    let mut mobius_sum = Scalar::zero();
    for pi in enumerate_nc(tau.ground())? {
        let pi_labels = pi.labels();
        if !refines_labels(&pi_labels, &tau_labels) {
            continue;
        }
        let pi_blocks = pi.position_blocks();
        kappa_sum += extend_positions(kappa, &pi_blocks, letters)?;
        let phi_pi = extend_positions(phi, &pi_blocks, letters)?;
        if !phi_pi.is_zero() {
            mobius_sum += mobius_labels(&pi_labels, &tau_blocks) * phi_pi;
        }
    }
    Ok(FormsReport {
        moments_from_cumulants: extend_positions(phi, &tau_blocks, letters)? == kappa_sum,
        cumulants_from_moments: extend_positions(kappa, &tau_blocks, letters)? == mobius_sum,
    })
}
