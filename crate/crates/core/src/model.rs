//! Joint moments of the generator `Z` and the matrix algebra `P_(3,+) ≅ M_n`
//! in the level-3 algebra of the group planar algebra of a group of order
//! `n`, with modulus `δ = √n`.
//!
//! Only `δ² = n` ever enters a formula, so all arithmetic stays rational.
//! For a word with `Z` at positions `D` and matrices at positions `E`,
//!
//! ```text
//! τ(Z_1 ⋯ Z_q) = Σ_{π ∈ NC(D)} n^{|D|−|π|} · Π_{V ∈ π̃} tr(Π_{j ∈ V} x_j)
//! ```
//!
//! where `tr` is the normalized matrix trace and letters inside a block
//! multiply in increasing position order.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freeprob::{
    AlgebraId, Element, FreePoissonPowers, FreeProduct, MatrixAlgebra, TracialLetter,
};
use crate::matrix::RationalMatrix;
use crate::nc::{
    block_count_histogram, moments_to_cumulants, pi_tilde, pi_tilde_positions, GroundSet, NcTable,
    NonCrossingPartition,
};
use crate::scalar::{int, int_pow, powi, ratio, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelParams {
    n: u32,
}

impl ModelParams {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!(
                "group order must be at least 2, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `δ² = n`.
    pub fn delta_sq(&self) -> Scalar {
        int(self.n as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelLetter {
    Z,
    Matrix(RationalMatrix),
}

impl ModelLetter {
    pub fn is_z(&self) -> bool {
        matches!(self, ModelLetter::Z)
    }
}

impl fmt::Display for ModelLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelLetter::Z => f.write_str("Z"),
            ModelLetter::Matrix(m) => m.fmt(f),
        }
    }
}

/// `dim P_(k,±) = n^{k−1}`.
pub fn dim_box(k: u32, params: &ModelParams) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::OutOfRange("box index k must be at least 1".into()));
    }
    Ok(BigUint::from(params.n).pow(k - 1))
}

/// `κ_q(Z, …, Z) = δ^{2q−2} = n^{q−1}`.
pub fn z_cumulant(q: usize, params: &ModelParams) -> Result<Scalar> {
    if q == 0 {
        return Err(Error::Arity {
            expected: 1,
            actual: 0,
        });
    }
    Ok(int_pow(params.n as u64, q as u32 - 1))
}

/// `τ(Z^m) = Σ_{π ∈ NC(m)} n^{m−|π|}`.
pub fn z_moment(m: usize, params: &ModelParams) -> Result<Scalar> {
    if m == 0 {
        return Ok(Scalar::one());
    }
    let hist = block_count_histogram(m)?;
    Ok(hist
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, &c)| Scalar::from_integer(c.into()) * int_pow(params.n as u64, (m - k) as u32))
        .sum())
}

fn check_dims(word: &[ModelLetter], params: &ModelParams) -> Result<()> {
    let n = params.n as usize;
    for l in word {
        if let ModelLetter::Matrix(m) = l {
            if m.dim() != n {
                return Err(Error::Dimension {
                    expected: n,
                    rows: m.dim(),
                    cols: m.dim(),
                });
            }
        }
    }
    Ok(())
}

/// 1-based positions of `Z` letters and of matrix letters.
pub fn split_positions(word: &[ModelLetter]) -> (GroundSet, GroundSet) {
    let (d, e): (Vec<u32>, Vec<u32>) =
        (1..=word.len() as u32).partition(|&i| word[i as usize - 1].is_z());
    (
        GroundSet::new(d).expect("increasing"),
        GroundSet::new(e).expect("increasing"),
    )
}

/// Normalized trace of the product of the matrix letters at `positions`
/// (1-based, increasing).
fn block_trace(word: &[ModelLetter], positions: &[u32]) -> Result<Scalar> {
    let product =
        RationalMatrix::product(positions.iter().map(|&p| match &word[p as usize - 1] {
            ModelLetter::Matrix(m) => m,
            ModelLetter::Z => unreachable!("block of E contains only matrix letters"),
        }))?;
    Ok(product.normalized_trace())
}

/// `τ(word)`; the empty word has trace one.
pub fn tau_word(word: &[ModelLetter], params: &ModelParams) -> Result<Scalar> {
    tau_word_weighted(word, params, &|d, blocks| {
        int_pow(params.n as u64, (d - blocks) as u32)
    })
}

/// [`tau_word`] with the cumulant factor `κ_π(Z, …, Z)` supplied as a
/// function of `(|D|, |π|)`. Used to inject deliberate faults when checking
/// that the verification suite detects them.
pub fn tau_word_weighted(
    word: &[ModelLetter],
    params: &ModelParams,
    cumulant_factor: &dyn Fn(usize, usize) -> Scalar,
) -> Result<Scalar> {
    check_dims(word, params)?;
    let (d, e) = split_positions(word);
    if word.is_empty() {
        return Ok(Scalar::one());
    }
    if d.is_empty() {
        return block_trace(word, e.elements());
    }
    let table = NcTable::get(d.len())?;
    let mut traces: HashMap<Vec<u32>, Scalar> = HashMap::new();
    let mut total = Scalar::zero();
    for blocks in table.blocks() {
        let weight = cumulant_factor(d.len(), blocks.len());
        if weight.is_zero() {
            continue;
        }
        let pi_blocks: Vec<Vec<u32>> = blocks
            .iter()
            .map(|b| b.iter().map(|&p| d.elements()[p]).collect())
            .collect();
        let mut term = weight;
        for v in pi_tilde_positions(&pi_blocks, e.elements()) {
            let t = match traces.get(&v) {
                Some(t) => t.clone(),
                None => {
                    let t = block_trace(word, &v)?;
                    traces.insert(v, t.clone());
                    t
                }
            };
            if t.is_zero() {
                term = Scalar::zero();
                break;
            }
            term *= t;
        }
        total += term;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiTermBreakdown {
    pub pi: NonCrossingPartition,
    pub pi_tilde: NonCrossingPartition,
    /// `κ_π(Z, …, Z) = n^{|D|−|π|}`
    pub cumulant_factor: Scalar,
    pub block_traces: Vec<(Vec<u32>, Scalar)>,
    pub loop_count: u64,
    pub value: Scalar,
}

/// `2(|D| − |π| − |π̃| + 1)`.
pub fn floating_loops(d: &GroundSet, e: &GroundSet, pi: &NonCrossingPartition) -> Result<u64> {
    let tilde = pi_tilde(d, e, pi)?;
    loops_from_counts(d.len(), pi.num_blocks(), tilde.num_blocks())
}

fn loops_from_counts(d: usize, pi_blocks: usize, tilde_blocks: usize) -> Result<u64> {
    let half = (d + 1)
        .checked_sub(pi_blocks + tilde_blocks)
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "negative loop count for |D|={d}, |pi|={pi_blocks}, |pi~|={tilde_blocks}"
            ))
        })?;
    Ok(2 * half as u64)
}

/// The π-summand of [`tau_word`] with its bookkeeping.
///
/// Checks `δ^{−2} · δ^{loops} · δ^{2|π̃|} = δ^{2(|D|−|π|)}` exactly, with
/// `δ² = n`.
pub fn pi_term(
    word: &[ModelLetter],
    pi: &NonCrossingPartition,
    params: &ModelParams,
) -> Result<PiTermBreakdown> {
    check_dims(word, params)?;
    let (d, e) = split_positions(word);
    if d.is_empty() {
        return Err(Error::OutOfRange("word has no Z letters".into()));
    }
    if pi.ground() != &d {
        return Err(Error::GroundMismatch(
            pi.ground().to_string(),
            d.to_string(),
        ));
    }
    let tilde = pi_tilde(&d, &e, pi)?;
    let loop_count = loops_from_counts(d.len(), pi.num_blocks(), tilde.num_blocks())?;
    let cumulant_factor = int_pow(params.n as u64, (d.len() - pi.num_blocks()) as u32);
    let bookkeeping = powi(&params.delta_sq(), -1)?
        * int_pow(params.n as u64, (loop_count / 2) as u32)
        * int_pow(params.n as u64, tilde.num_blocks() as u32);
    if bookkeeping != cumulant_factor {
        return Err(Error::Inconsistent(format!(
            "pi-term bookkeeping {bookkeeping} != cumulant factor {cumulant_factor}"
        )));
    }
    let block_traces = tilde
        .blocks()
        .iter()
        .map(|v| Ok((v.clone(), block_trace(word, v)?)))
        .collect::<Result<Vec<_>>>()?;
    let value = block_traces
        .iter()
        .fold(cumulant_factor.clone(), |acc, (_, t)| acc * t);
    Ok(PiTermBreakdown {
        pi: pi.clone(),
        pi_tilde: tilde,
        cumulant_factor,
        block_traces,
        loop_count,
        value,
    })
}

/// Free cumulant `κ_q` of matrices under the normalized trace.
pub fn matrix_cumulant(matrices: &[RationalMatrix]) -> Result<Scalar> {
    let phi = |w: &[RationalMatrix]| Ok(RationalMatrix::product(w.iter())?.normalized_trace());
    moments_to_cumulants(&phi, matrices)
}

/// `κ̃_σ`: `κ_σ` when every block of `σ` is all-`Z` or all-matrix, else 0.
pub fn tilde_kappa(
    word: &[ModelLetter],
    sigma: &NonCrossingPartition,
    params: &ModelParams,
) -> Result<Scalar> {
    check_dims(word, params)?;
    if sigma.ground() != &GroundSet::interval(word.len()) {
        return Err(Error::GroundMismatch(
            sigma.ground().to_string(),
            GroundSet::interval(word.len()).to_string(),
        ));
    }
    let mut acc = Scalar::one();
    for block in sigma.blocks() {
        let letters: Vec<&ModelLetter> = block.iter().map(|&p| &word[p as usize - 1]).collect();
        let factor = if letters.iter().all(|l| l.is_z()) {
            z_cumulant(letters.len(), params)?
        } else if letters.iter().all(|l| !l.is_z()) {
            let ms: Vec<RationalMatrix> = letters
                .iter()
                .map(|l| match l {
                    ModelLetter::Matrix(m) => m.clone(),
                    ModelLetter::Z => unreachable!(),
                })
                .collect();
            matrix_cumulant(&ms)?
        } else {
            Scalar::zero()
        };
        if factor.is_zero() {
            return Ok(factor);
        }
        acc *= factor;
    }
    Ok(acc)
}

/// The abstract free product `⟨Z⟩ ∗ M_n`, with `Z` free Poisson of rate
/// `1/n` and jump `n`, evaluated on model words.
pub struct FreeModel {
    params: ModelParams,
    product: FreeProduct<Element>,
    z: AlgebraId,
    m: AlgebraId,
}

impl FreeModel {
    pub fn new(params: ModelParams) -> Self {
        let n = params.n as i64;
        let mut product = FreeProduct::new();
        let z = product.register(Box::new(FreePoissonPowers::new(ratio(1, n), int(n))));
        let m = product.register(Box::new(MatrixAlgebra::new(params.n as usize)));
        Self {
            params,
            product,
            z,
            m,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.product = self.product.with_cap(cap);
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Free product state of `word`.
    pub fn moment(&self, word: &[ModelLetter]) -> Result<Scalar> {
        check_dims(word, &self.params)?;
        let letters: Vec<TracialLetter<Element>> = word
            .iter()
            .map(|l| match l {
                ModelLetter::Z => self.product.letter(self.z, Element::Power(1)),
                ModelLetter::Matrix(x) => self.product.letter(self.m, Element::Matrix(x.clone())),
            })
            .collect();
        self.product.moment(&letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprob::free_poisson_cumulant;
    use crate::nc::enumerate_nc;
    use crate::scalar::ratio;

    fn params(n: u32) -> ModelParams {
        ModelParams::new(n).unwrap()
    }

    fn e(n: usize, i: usize, j: usize) -> ModelLetter {
        ModelLetter::Matrix(RationalMatrix::unit(n, i, j))
    }

    #[test]
    fn dims() {
        let p = params(2);
        assert_eq!(dim_box(1, &p).unwrap(), BigUint::from(1u32));
        assert_eq!(dim_box(3, &p).unwrap(), BigUint::from(4u32));
        for m in 0..5 {
            assert_eq!(
                dim_box(2 * m + 3, &params(3)).unwrap(),
                BigUint::from(3u32).pow(2 * m + 2)
            );
        }
        assert!(dim_box(0, &p).is_err());
        assert!(ModelParams::new(1).is_err());
    }

    #[test]
    fn z_cumulants_and_moments() {
        assert_eq!(z_cumulant(1, &params(5)).unwrap(), int(1));
        assert_eq!(z_cumulant(2, &params(3)).unwrap(), int(3));
        for q in 1..=8 {
            let n = 4;
            assert_eq!(
                z_cumulant(q, &params(n)).unwrap(),
                free_poisson_cumulant(&ratio(1, n as i64), &int(n as i64), q).unwrap()
            );
        }
        let p = params(2);
        assert_eq!(z_moment(1, &p).unwrap(), int(1));
        assert_eq!(z_moment(2, &p).unwrap(), int(3));
        assert_eq!(z_moment(3, &p).unwrap(), int(11));
        assert_eq!(z_moment(4, &p).unwrap(), int(45));
    }

    #[test]
    fn tau_examples() {
        let p = params(2);
        let x = ModelLetter::Matrix(
            RationalMatrix::from_rows(vec![vec![int(3), int(1)], vec![int(0), int(-1)]]).unwrap(),
        );
        assert_eq!(tau_word(std::slice::from_ref(&x), &p).unwrap(), int(1));
        assert_eq!(tau_word(&[ModelLetter::Z, x], &p).unwrap(), int(1));
        let e11 = e(2, 0, 0);
        let w = [ModelLetter::Z, e11.clone(), ModelLetter::Z, e11];
        assert_eq!(tau_word(&w, &p).unwrap(), int(1));
        assert_eq!(tau_word(&vec![ModelLetter::Z; 3], &p).unwrap(), int(11));
        assert_eq!(tau_word(&[], &p).unwrap(), int(1));
        assert!(tau_word(&[e(3, 0, 0)], &p).is_err());
    }

    #[test]
    fn pi_terms_sum_to_tau() {
        let p = params(3);
        let w = [
            ModelLetter::Z,
            e(3, 0, 1),
            ModelLetter::Z,
            e(3, 1, 0),
            ModelLetter::Z,
            e(3, 0, 0),
        ];
        let (d, _) = split_positions(&w);
        let sum: Scalar = enumerate_nc(&d)
            .unwrap()
            .iter()
            .map(|pi| pi_term(&w, pi, &p).unwrap().value)
            .sum();
        assert_eq!(sum, tau_word(&w, &p).unwrap());
    }

    #[test]
    fn single_z_term() {
        let p = params(2);
        let w = [ModelLetter::Z];
        let pi = NonCrossingPartition::coarsest(&GroundSet::interval(1));
        let t = pi_term(&w, &pi, &p).unwrap();
        assert_eq!(t.cumulant_factor, int(1));
        assert_eq!(t.loop_count, 2);
        assert!(t.pi_tilde.is_empty());
        assert!(pi_term(
            &[e(2, 0, 0)],
            &NonCrossingPartition::finest(&GroundSet::empty()),
            &p
        )
        .is_err());
    }

    #[test]
    fn loop_counts() {
        let d = GroundSet::new(vec![2, 5, 8, 11, 13, 14, 17]).unwrap();
        let e = d.complement_in_interval(18);
        let pi =
            NonCrossingPartition::new(d.clone(), vec![vec![2, 8, 11], vec![5], vec![13, 14, 17]])
                .unwrap();
        assert_eq!(floating_loops(&d, &e, &pi).unwrap(), 2);
        let d = GroundSet::interval(2);
        assert_eq!(
            floating_loops(&d, &GroundSet::empty(), &NonCrossingPartition::coarsest(&d)).unwrap(),
            4
        );
    }

    #[test]
    fn tilde_kappa_cases() {
        let p = params(2);
        let w = [ModelLetter::Z, e(2, 0, 0)];
        let one = NonCrossingPartition::coarsest(&GroundSet::interval(2));
        assert!(tilde_kappa(&w, &one, &p).unwrap().is_zero());
        let zs = vec![ModelLetter::Z; 4];
        assert_eq!(
            tilde_kappa(
                &zs,
                &NonCrossingPartition::coarsest(&GroundSet::interval(4)),
                &p
            )
            .unwrap(),
            int(8)
        );
        let w = [
            ModelLetter::Z,
            e(2, 0, 1),
            ModelLetter::Z,
            e(2, 1, 0),
            e(2, 1, 1),
        ];
        let sum: Scalar = enumerate_nc(&GroundSet::interval(5))
            .unwrap()
            .iter()
            .map(|s| tilde_kappa(&w, s, &p).unwrap())
            .sum();
        assert_eq!(sum, tau_word(&w, &p).unwrap());
    }
}
