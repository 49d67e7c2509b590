//! Tracial non-commutative probability: free Poisson elements, moments in
//! free products, and cumulant-based freeness certification.
//!
//! Everything here is exact; there is no floating point in this module.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::nc::{block_count_histogram, moments_to_cumulants, NcTable, PartitionFunctional};
use crate::scalar::{powi, Scalar};

/// `κ_q = λ α^q`.
pub fn free_poisson_cumulant(lambda: &Scalar, alpha: &Scalar, q: usize) -> Result<Scalar> {
    if q == 0 {
        return Err(Error::Arity {
            expected: 1,
            actual: 0,
        });
    }
    if lambda.is_negative() {
        return Err(Error::OutOfRange(format!("rate {lambda} is negative")));
    }
    Ok(lambda * powi(alpha, q as i64)?)
}

/// `Σ_{π ∈ NC(m)} Π_{V ∈ π} λ α^{|V|} = α^m Σ_k #{π : |π| = k} λ^k`.
pub fn free_poisson_moment(lambda: &Scalar, alpha: &Scalar, m: usize) -> Result<Scalar> {
    if m == 0 {
        return Err(Error::Arity {
            expected: 1,
            actual: 0,
        });
    }
    if lambda.is_negative() {
        return Err(Error::OutOfRange(format!("rate {lambda} is negative")));
    }
    let hist = block_count_histogram(m)?;
    let mut sum = Scalar::zero();
    let mut lambda_k = Scalar::one();
    for count in hist {
        if count != 0 {
            sum += &lambda_k * Scalar::from_integer(count.into());
        }
        lambda_k *= lambda;
    }
    Ok(sum * powi(alpha, m as i64)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(pub u32);

/// One tracial factor `(A_i, φ_i)` of a free product.
pub trait AlgebraOracle<E>: Send + Sync {
    /// Trace of a word in this algebra's own letters.
    fn trace(&self, word: &[E]) -> Result<Scalar>;
    /// In-algebra product, when representable.
    fn multiply(&self, a: &E, b: &E) -> Option<E>;
    fn unit(&self) -> E;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TracialLetter<E> {
    pub algebra: AlgebraId,
    pub payload: E,
}

/// Payloads understood by the built-in oracles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    /// `x^k` for the generator `x` of a one-variable algebra.
    Power(u32),
    Matrix(RationalMatrix),
}

/// The algebra generated by a free Poisson element; letters are powers.
pub struct FreePoissonPowers {
    lambda: Scalar,
    alpha: Scalar,
    moments: Mutex<HashMap<u32, Scalar>>,
}

impl FreePoissonPowers {
    pub fn new(lambda: Scalar, alpha: Scalar) -> Self {
        Self {
            lambda,
            alpha,
            moments: Mutex::default(),
        }
    }

    fn moment(&self, k: u32) -> Result<Scalar> {
        if k == 0 {
            return Ok(Scalar::one());
        }
        if let Some(v) = self.moments.lock().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let v = free_poisson_moment(&self.lambda, &self.alpha, k as usize)?;
        self.moments.lock().unwrap().insert(k, v.clone());
        Ok(v)
    }
}

impl AlgebraOracle<Element> for FreePoissonPowers {
    fn trace(&self, word: &[Element]) -> Result<Scalar> {
        let mut total = 0;
        for e in word {
            match e {
                Element::Power(k) => total += k,
                Element::Matrix(_) => {
                    return Err(Error::Inconsistent(
                        "matrix letter given to a power algebra".into(),
                    ))
                }
            }
        }
        self.moment(total)
    }

    fn multiply(&self, a: &Element, b: &Element) -> Option<Element> {
        match (a, b) {
            (Element::Power(x), Element::Power(y)) => Some(Element::Power(x + y)),
            _ => None,
        }
    }

    fn unit(&self) -> Element {
        Element::Power(0)
    }
}

/// `M_d(Q)` with its normalized trace.
pub struct MatrixAlgebra {
    dim: usize,
}

impl MatrixAlgebra {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl AlgebraOracle<Element> for MatrixAlgebra {
    fn trace(&self, word: &[Element]) -> Result<Scalar> {
        let mut acc = RationalMatrix::identity(self.dim);
        for e in word {
            match e {
                Element::Matrix(m) => acc = acc.mul(m)?,
                Element::Power(_) => {
                    return Err(Error::Inconsistent(
                        "power letter given to a matrix algebra".into(),
                    ))
                }
            }
        }
        Ok(acc.normalized_trace())
    }

    fn multiply(&self, a: &Element, b: &Element) -> Option<Element> {
        match (a, b) {
            (Element::Matrix(x), Element::Matrix(y)) => x.mul(y).ok().map(Element::Matrix),
            _ => None,
        }
    }

    fn unit(&self) -> Element {
        Element::Matrix(RationalMatrix::identity(self.dim))
    }
}

/// Default longest word [`FreeProduct::moment`] accepts.
pub const DEFAULT_WORD_CAP: usize = 10;

/// The free product of registered tracial algebras, evaluated by centering.
///
/// For an alternating word `a_1 ⋯ a_q` (adjacent letters from different
/// algebras) freeness forces `φ(å_1 ⋯ å_q) = 0` with `å = a − φ(a)1`.
/// Expanding that product gives
/// `φ(a_1 ⋯ a_q) = Σ_{S ⊊ [q]} (−1)^{q−|S|+1} Π_{i ∉ S} φ(a_i) · φ(a_S)`,
/// where `a_S` keeps the letters in `S` and is re-merged before recursing.
pub struct FreeProduct<E> {
    oracles: Vec<Box<dyn AlgebraOracle<E>>>,
    cap: usize,
    memo: Mutex<HashMap<Vec<TracialLetter<E>>, Scalar>>,
}

impl<E: Clone + Eq + Hash> Default for FreeProduct<E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<E: Clone + Eq + Hash> FreeProduct<E> {
    pub fn new() -> Self {
        Self {
            oracles: Vec::new(),
            cap: DEFAULT_WORD_CAP,
            memo: Mutex::default(),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn register(&mut self, oracle: Box<dyn AlgebraOracle<E>>) -> AlgebraId {
        self.oracles.push(oracle);
        AlgebraId(self.oracles.len() as u32 - 1)
    }

    pub fn letter(&self, algebra: AlgebraId, payload: E) -> TracialLetter<E> {
        TracialLetter { algebra, payload }
    }

    fn oracle(&self, id: AlgebraId) -> Result<&dyn AlgebraOracle<E>> {
        self.oracles
            .get(id.0 as usize)
            .map(|b| b.as_ref())
            .ok_or(Error::UnknownAlgebra(id.0))
    }

    /// `φ(word)` in the free product.
    pub fn moment(&self, word: &[TracialLetter<E>]) -> Result<Scalar> {
        if word.len() > self.cap {
            return Err(Error::OutOfRange(format!(
                "word length {} exceeds the cap of {}",
                word.len(),
                self.cap
            )));
        }
        for l in word {
            self.oracle(l.algebra)?;
        }
        let merged = self.merge(word.iter())?;
        self.eval(&merged)
    }

    fn merge<'a>(
        &self,
        letters: impl Iterator<Item = &'a TracialLetter<E>>,
    ) -> Result<Vec<TracialLetter<E>>>
    where
        E: 'a,
    {
        let mut out: Vec<TracialLetter<E>> = Vec::new();
        for l in letters {
            match out.last_mut() {
                Some(last) if last.algebra == l.algebra => {
                    let oracle = self.oracle(l.algebra)?;
                    last.payload = oracle
                        .multiply(&last.payload, &l.payload)
                        .ok_or(Error::UnsupportedProduct(l.algebra.0))?;
                }
                _ => out.push(l.clone()),
            }
        }
        Ok(out)
    }

    fn eval(&self, word: &[TracialLetter<E>]) -> Result<Scalar> {
        match word {
            [] => return Ok(Scalar::one()),
            [single] => {
                return self
                    .oracle(single.algebra)?
                    .trace(std::slice::from_ref(&single.payload))
            }
            _ => {}
        }
        if let Some(v) = self.memo.lock().unwrap().get(word) {
            return Ok(v.clone());
        }
        let q = word.len();
        let centers = word
            .iter()
            .map(|l| {
                self.oracle(l.algebra)?
                    .trace(std::slice::from_ref(&l.payload))
            })
            .collect::<Result<Vec<_>>>()?;
        let full = (1u32 << q) - 1;
        let mut total = Scalar::zero();
        for kept in 0..full {
            let mut coeff = Scalar::one();
            for (i, c) in centers.iter().enumerate() {
                if kept & (1 << i) == 0 {
                    coeff *= c;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let sub = self.merge(
                word.iter()
                    .enumerate()
                    .filter(|(i, _)| kept & (1 << i) != 0)
                    .map(|(_, l)| l),
            )?;
            let value = coeff * self.eval(&sub)?;
            let removed = q - kept.count_ones() as usize;
            if removed % 2 == 1 {
                total += value;
            } else {
                total -= value;
            }
        }
        self.memo
            .lock()
            .unwrap()
            .insert(word.to_vec(), total.clone());
        Ok(total)
    }
}

/// `κ_q(word)` from the joint moments supplied by `moment_source`.
pub fn mixed_cumulant<L: Clone, F: PartitionFunctional<L> + ?Sized>(
    word: &[L],
    moment_source: &F,
) -> Result<Scalar> {
    moments_to_cumulants(moment_source, word)
}

/// Largest dense cumulant table (entries per tuple length) the freeness check
/// will allocate.
pub const FREENESS_TABLE_CAP: usize = 1 << 24;

#[derive(Clone, Debug)]
pub struct Violation<L> {
    /// `(generator set index, letter)` per position.
    pub tuple: Vec<(usize, L)>,
    pub cumulant: Scalar,
}

#[derive(Clone, Debug)]
pub struct FreenessReport<L> {
    pub max_q: usize,
    /// Largest tuple length fully evaluated.
    pub completed_q: usize,
    /// Mixed tuples evaluated.
    pub checked: u64,
    pub violation_count: u64,
    /// At most [`FreenessReport::VIOLATION_SAMPLE`] violations are kept.
    pub violations: Vec<Violation<L>>,
    pub truncated: bool,
}

impl<L> FreenessReport<L> {
    pub const VIOLATION_SAMPLE: usize = 64;

    pub fn certified(&self) -> bool {
        self.violation_count == 0 && !self.truncated
    }
}

/// Evaluates every mixed cumulant `κ_q(a_1, …, a_q)` with `a_j` drawn from
/// the generator sets, not all from the same set, for `q ≤ max_q`.
///
/// Cumulants are tabulated bottom-up by length through
/// `κ_q = φ_q − Σ_{π ≠ 1_q} κ_π`, the inverse of the Möbius sum used by
/// [`mixed_cumulant`], so each tuple costs one call to `moment_source`.
pub fn freeness_check<L, F>(
    generator_sets: &[Vec<L>],
    max_q: usize,
    moment_source: &F,
) -> Result<FreenessReport<L>>
where
    L: Clone + Send + Sync,
    F: PartitionFunctional<L> + Sync + ?Sized,
{
    let mut report = FreenessReport {
        max_q,
        completed_q: 0,
        checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        truncated: false,
    };
    let letters: Vec<(usize, L)> = generator_sets
        .iter()
        .enumerate()
        .flat_map(|(tag, set)| set.iter().map(move |l| (tag, l.clone())))
        .collect();
    let nonempty_sets = generator_sets.iter().filter(|s| !s.is_empty()).count();
    if nonempty_sets < 2 {
        report.completed_q = max_q;
        return Ok(report);
    }
    let radix = letters.len();
    let mut tables: Vec<Vec<Scalar>> = vec![Vec::new()];
    for q in 1..=max_q {
        let size = match radix.checked_pow(q as u32) {
            Some(s) if s <= FREENESS_TABLE_CAP => s,
            _ => {
                report.truncated = true;
                break;
            }
        };
        let nc = match NcTable::get(q) {
            Ok(t) => t,
            Err(_) => {
                report.truncated = true;
                break;
            }
        };
        let last = q == max_q;
        let cumulant_of = |index: usize| -> Result<Scalar> {
            let mut digits = [0usize; 16];
            let mut rest = index;
            for d in digits.iter_mut().take(q) {
                *d = rest % radix;
                rest /= radix;
            }
            let word: Vec<L> = digits[..q].iter().map(|&d| letters[d].1.clone()).collect();
            let mut value = moment_source.eval(&word)?;
            for blocks in nc.blocks() {
                if blocks.len() == 1 {
                    continue;
                }
                let mut term = Scalar::one();
                for block in blocks {
                    let mut sub = 0;
                    for &p in block.iter().rev() {
                        sub = sub * radix + digits[p];
                    }
                    let k = &tables[block.len()][sub];
                    if k.is_zero() {
                        term = Scalar::zero();
                        break;
                    }
                    term *= k;
                }
                if !term.is_zero() {
                    value -= term;
                }
            }
            Ok(value)
        };
        let is_mixed = |index: usize| {
            let mut rest = index;
            let first = letters[rest % radix].0;
            (0..q).any(|_| {
                let tag = letters[rest % radix].0;
                rest /= radix;
                tag != first
            })
        };
        let found: Vec<(usize, Scalar)> = if last {
            (0..size)
                .into_par_iter()
                .filter(|&i| is_mixed(i))
                .map(|i| cumulant_of(i).map(|k| (i, k)))
                .filter(|r| !matches!(r, Ok((_, k)) if k.is_zero()))
                .collect::<Result<Vec<_>>>()?
        } else {
            let table = (0..size)
                .into_par_iter()
                .map(cumulant_of)
                .collect::<Result<Vec<_>>>()?;
            let found = (0..size)
                .filter(|&i| is_mixed(i) && !table[i].is_zero())
                .map(|i| (i, table[i].clone()))
                .collect();
            tables.push(table);
            found
        };
        report.checked += (0..size).filter(|&i| is_mixed(i)).count() as u64;
        report.violation_count += found.len() as u64;
        for (index, cumulant) in found {
            if report.violations.len() >= FreenessReport::<L>::VIOLATION_SAMPLE {
                break;
            }
            let mut rest = index;
            let tuple = (0..q)
                .map(|_| {
                    let l = letters[rest % radix].clone();
                    rest /= radix;
                    l
                })
                .collect();
            report.violations.push(Violation { tuple, cumulant });
        }
        report.completed_q = q;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, int_pow, ratio};

    fn model_product(n: usize) -> (FreeProduct<Element>, AlgebraId, AlgebraId) {
        let mut fp = FreeProduct::new();
        let z = fp.register(Box::new(FreePoissonPowers::new(
            ratio(1, n as i64),
            int(n as i64),
        )));
        let m = fp.register(Box::new(MatrixAlgebra::new(n)));
        (fp, z, m)
    }

    #[test]
    fn poisson_cumulants() {
        assert_eq!(
            free_poisson_cumulant(&ratio(1, 2), &int(2), 1).unwrap(),
            int(1)
        );
        for q in 1..=5 {
            assert!(free_poisson_cumulant(&ratio(3, 4), &int(0), q)
                .unwrap()
                .is_zero());
            assert_eq!(
                free_poisson_cumulant(&ratio(1, 3), &int(3), q).unwrap(),
                int_pow(3, q as u32 - 1)
            );
        }
        assert!(free_poisson_cumulant(&int(1), &int(1), 0).is_err());
        assert!(free_poisson_cumulant(&int(-1), &int(1), 1).is_err());
    }

    #[test]
    fn poisson_moments() {
        let (l, a) = (ratio(2, 5), ratio(7, 3));
        assert_eq!(free_poisson_moment(&l, &a, 1).unwrap(), &l * &a);
        for n in [2i64, 3, 7] {
            let (l, a) = (ratio(1, n), int(n));
            assert_eq!(free_poisson_moment(&l, &a, 2).unwrap(), int(n + 1));
            assert_eq!(
                free_poisson_moment(&l, &a, 4).unwrap(),
                int(n * n * n + 6 * n * n + 6 * n + 1)
            );
        }
    }

    #[test]
    fn single_algebra_restriction() {
        let (fp, z, m) = model_product(2);
        let e11 = Element::Matrix(RationalMatrix::unit(2, 0, 0));
        let e12 = Element::Matrix(RationalMatrix::unit(2, 0, 1));
        let e21 = Element::Matrix(RationalMatrix::unit(2, 1, 0));
        let w = [fp.letter(m, e12), fp.letter(m, e21), fp.letter(m, e11)];
        assert_eq!(fp.moment(&w).unwrap(), ratio(1, 2));
        let zz = [
            fp.letter(z, Element::Power(1)),
            fp.letter(z, Element::Power(2)),
        ];
        assert_eq!(fp.moment(&zz).unwrap(), int(11));
    }

    #[test]
    fn two_letter_factorizes() {
        let (fp, z, m) = model_product(3);
        let x = Element::Matrix(
            RationalMatrix::from_rows(vec![
                vec![int(1), int(2), int(0)],
                vec![int(0), ratio(1, 2), int(0)],
                vec![int(5), int(0), int(-4)],
            ])
            .unwrap(),
        );
        let got = fp
            .moment(&[fp.letter(z, Element::Power(2)), fp.letter(m, x)])
            .unwrap();
        assert_eq!(got, int(4) * ratio(-5, 6));
    }

    #[test]
    fn alternating_four() {
        // φ(a x a x) = n·tr(x)^2 + tr(x^2) for a with φ(a)=1, φ(a²)=n+1.
        for n in [2usize, 3] {
            let (fp, z, m) = model_product(n);
            let x = RationalMatrix::from_rows(
                (0..n)
                    .map(|i| (0..n).map(|j| ratio((i * n + j) as i64 - 2, 3)).collect())
                    .collect(),
            )
            .unwrap();
            let tr = x.normalized_trace();
            let tr2 = x.mul(&x).unwrap().normalized_trace();
            let xl = fp.letter(m, Element::Matrix(x));
            let zl = fp.letter(z, Element::Power(1));
            let got = fp.moment(&[zl.clone(), xl.clone(), zl, xl]).unwrap();
            assert_eq!(got, int(n as i64) * &tr * &tr + tr2);
        }
    }

    #[test]
    fn unsupported_and_unknown() {
        struct NoProducts;
        impl AlgebraOracle<Element> for NoProducts {
            fn trace(&self, _: &[Element]) -> Result<Scalar> {
                Ok(int(1))
            }
            fn multiply(&self, _: &Element, _: &Element) -> Option<Element> {
                None
            }
            fn unit(&self) -> Element {
                Element::Power(0)
            }
        }
        let mut fp = FreeProduct::new();
        let a = fp.register(Box::new(NoProducts));
        let w = [
            fp.letter(a, Element::Power(1)),
            fp.letter(a, Element::Power(1)),
        ];
        assert_eq!(fp.moment(&w), Err(Error::UnsupportedProduct(0)));
        let stray = [fp.letter(AlgebraId(7), Element::Power(1))];
        assert_eq!(fp.moment(&stray), Err(Error::UnknownAlgebra(7)));
        let long = vec![fp.letter(a, Element::Power(1)); 11];
        assert!(fp.moment(&long).is_err());
    }

    #[test]
    fn cumulant_of_z_with_traceless_matrix() {
        let (fp, z, m) = model_product(2);
        let x = Element::Matrix(
            RationalMatrix::from_rows(vec![vec![int(1), int(3)], vec![int(2), int(-1)]]).unwrap(),
        );
        let source = |w: &[TracialLetter<Element>]| fp.moment(w);
        let k =
            mixed_cumulant(&[fp.letter(z, Element::Power(1)), fp.letter(m, x)], &source).unwrap();
        assert!(k.is_zero());
        for q in 1..=6 {
            let word = vec![fp.letter(z, Element::Power(1)); q];
            assert_eq!(
                mixed_cumulant(&word, &source).unwrap(),
                int_pow(2, q as u32 - 1)
            );
        }
    }

    #[test]
    fn freeness_vacuous_and_duplicate() {
        let source = |w: &[u8]| Ok(int(w.len() as i64 + 1));
        let r = freeness_check(&[vec![0u8, 1]], 4, &source).unwrap();
        assert!(r.certified());
        assert_eq!(r.checked, 0);

        // a with φ(a)=2, φ(a²)=3 registered twice: κ₂(a, a) = 3 − 4 ≠ 0.
        let r = freeness_check(&[vec![0u8], vec![0u8]], 2, &source).unwrap();
        assert!(!r.certified());
        assert_eq!(r.violation_count, 2);
        assert_eq!(r.violations[0].cumulant, int(-1));
    }

    #[test]
    fn freeness_of_free_product_letters() {
        let (fp, z, m) = model_product(2);
        let zs = vec![fp.letter(z, Element::Power(1))];
        let ms: Vec<_> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(i, j)| fp.letter(m, Element::Matrix(RationalMatrix::unit(2, i, j))))
            .collect();
        let source = |w: &[TracialLetter<Element>]| fp.moment(w);
        let r = freeness_check(&[zs, ms], 4, &source).unwrap();
        assert!(r.certified(), "{:?}", r.violations);
        assert_eq!(
            r.checked,
            (5u64.pow(2) - 1 - 16) + (125 - 1 - 64) + (625 - 1 - 256)
        );
        assert_eq!(r.completed_q, 4);
    }

    #[test]
    fn table_matches_mobius_route() {
        // Cumulants from the bottom-up table agree with the Möbius sum.
        let phi = |w: &[u8]| {
            Ok(ratio(
                w.iter().map(|&x| x as i64 + 1).product::<i64>() + w.len() as i64,
                3,
            ))
        };
        let r = freeness_check(&[vec![0u8], vec![1u8, 2]], 4, &phi).unwrap();
        assert!(r.violation_count > 0);
        for v in &r.violations {
            let word: Vec<u8> = v.tuple.iter().map(|t| t.1).collect();
            assert_eq!(mixed_cumulant(&word, &phi).unwrap(), v.cumulant);
        }
    }
}
