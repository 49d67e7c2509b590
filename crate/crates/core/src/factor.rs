//! Parameter bookkeeping for weighted direct sums of finite-dimensional
//! blocks and interpolated free group factors `L(F_r)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::scalar::{int, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Scalar,
    MatrixAlgebra(u32),
    InterpolatedFreeGroup(Scalar),
    /// `Lℤ`, identified with `L(F_1)` when fed to the free product formula.
    GroupVonNeumannZ,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Scalar => f.write_str("C"),
            FactorKind::MatrixAlgebra(d) => write!(f, "M{d}(C)"),
            FactorKind::InterpolatedFreeGroup(r) => write!(f, "LF({r})"),
            FactorKind::GroupVonNeumannZ => f.write_str("LZ"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub weight: Scalar,
    pub kind: FactorKind,
}

/// A weighted direct sum; weights are positive and sum to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDescription {
    summands: Vec<Summand>,
}

impl FactorDescription {
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::OutOfRange(
                "a factor description needs a summand".into(),
            ));
        }
        let mut total = Scalar::zero();
        for s in &summands {
            if s.weight <= Scalar::zero() || s.weight > Scalar::one() {
                return Err(Error::OutOfRange(format!(
                    "weight {} not in (0,1]",
                    s.weight
                )));
            }
            match &s.kind {
                FactorKind::InterpolatedFreeGroup(r) if *r <= Scalar::one() => {
                    return Err(Error::OutOfRange(format!(
                        "LF({r}) needs r > 1; use LZ for r = 1"
                    )))
                }
                FactorKind::MatrixAlgebra(0) => {
                    return Err(Error::OutOfRange("matrix block of size 0".into()))
                }
                _ => {}
            }
            total += &s.weight;
        }
        if !total.is_one() {
            return Err(Error::OutOfRange(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { summands })
    }

    /// A single summand of weight one.
    pub fn single(kind: FactorKind) -> Result<Self> {
        Self::new(vec![Summand {
            weight: Scalar::one(),
            kind,
        }])
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// `r` when the description is exactly `L(F_r)`.
    pub fn free_group_parameter(&self) -> Option<&Scalar> {
        match self.summands.as_slice() {
            [Summand {
                kind: FactorKind::InterpolatedFreeGroup(r),
                ..
            }] => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for FactorDescription {
    /// `LF(3/2)` for a single summand, else `C[1/2] + LZ[1/2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [only] = self.summands.as_slice() {
            return only.kind.fmt(f);
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}[{}]", s.kind, s.weight)?;
        }
        Ok(())
    }
}

/// `vN(Z) ≅ C_{1−1/n} ⊕ (Lℤ)_{1/n}`.
pub fn vn_z_description(params: &ModelParams) -> FactorDescription {
    let rate = Scalar::new(1.into(), params.n().into());
    FactorDescription::new(vec![
        Summand {
            weight: Scalar::one() - &rate,
            kind: FactorKind::Scalar,
        },
        Summand {
            weight: rate,
            kind: FactorKind::GroupVonNeumannZ,
        },
    ])
    .expect("weights of vN(Z) are valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DykemaBranch {
    /// `α ≥ d^{-2}`: a single interpolated free group factor.
    Factor,
    /// `α < d^{-2}`: a matrix block survives.
    MatrixAtom,
}

pub fn dykema_branch(alpha: &Scalar, d: u32) -> DykemaBranch {
    if alpha * int(d as i64 * d as i64) >= Scalar::one() {
        DykemaBranch::Factor
    } else {
        DykemaBranch::MatrixAtom
    }
}

fn first_branch_parameter(r: &Scalar, alpha: &Scalar, d_inv_sq: &Scalar) -> Scalar {
    r * alpha * alpha + int(2) * alpha * (Scalar::one() - alpha) + Scalar::one() - d_inv_sq
}

fn second_branch(r: &Scalar, alpha: &Scalar, d: u32, d_inv_sq: &Scalar) -> (Scalar, Scalar) {
    let d_sq = int(d as i64 * d as i64);
    let matrix_weight = Scalar::one() - alpha * &d_sq;
    let parameter = (r - int(2)) * d_inv_sq * d_inv_sq + Scalar::one() + d_inv_sq;
    (matrix_weight, parameter)
}

/// `(C_{1−α} ⊕ L(F_r)_α) * M_d(C)`.
///
/// For `α ≥ d^{-2}` the result is `L(F_{rα² + 2α(1−α) + 1 − d^{-2}})`;
/// for `α ≤ d^{-2}` it is `M_d(C)_{1−αd²} ⊕ L(F_{(r−2)d^{-4} + 1 + d^{-2}})_{αd²}`.
/// At `α = d^{-2}` both expressions are evaluated and must coincide.
pub fn dykema_free_product(r: &Scalar, alpha: &Scalar, d: u32) -> Result<FactorDescription> {
    if *alpha <= Scalar::zero() || *alpha >= Scalar::one() {
        return Err(Error::OutOfRange(format!(
            "alpha = {alpha} must lie in (0,1)"
        )));
    }
    if d < 2 {
        return Err(Error::OutOfRange(format!(
            "matrix size d = {d} must be at least 2"
        )));
    }
    if *r < Scalar::one() {
        return Err(Error::OutOfRange(format!("r = {r} must be at least 1")));
    }
    let d_inv_sq = Scalar::new(1.into(), (d as i64 * d as i64).into());
    let boundary = *alpha == d_inv_sq;
    match dykema_branch(alpha, d) {
        DykemaBranch::Factor => {
            let parameter = first_branch_parameter(r, alpha, &d_inv_sq);
            if boundary {
                let (matrix_weight, other) = second_branch(r, alpha, d, &d_inv_sq);
                if !matrix_weight.is_zero() || other != parameter {
                    return Err(Error::Inconsistent(format!(
                        "free product branches disagree at alpha = d^-2: LF({parameter}) vs M{d}[{matrix_weight}] + LF({other})"
                    )));
                }
            }
            FactorDescription::single(FactorKind::InterpolatedFreeGroup(parameter))
        }
        DykemaBranch::MatrixAtom => {
            let (matrix_weight, parameter) = second_branch(r, alpha, d, &d_inv_sq);
            FactorDescription::new(vec![
                Summand {
                    weight: matrix_weight.clone(),
                    kind: FactorKind::MatrixAlgebra(d),
                },
                Summand {
                    weight: Scalar::one() - matrix_weight,
                    kind: FactorKind::InterpolatedFreeGroup(parameter),
                },
            ])
        }
    }
}

/// Both branch expressions at `α = d^{-2}`, for consistency checks:
/// `(first-branch parameter, second-branch matrix weight, second-branch parameter)`.
pub fn dykema_boundary_values(r: &Scalar, d: u32) -> (Scalar, Scalar, Scalar) {
    let d_inv_sq = Scalar::new(1.into(), (d as i64 * d as i64).into());
    let first = first_branch_parameter(r, &d_inv_sq, &d_inv_sq);
    let (w, p) = second_branch(r, &d_inv_sq, d, &d_inv_sq);
    (first, w, p)
}

/// Feeds `vN(Z) * M_n(C)` through [`dykema_free_product`], reading `Lℤ` as
/// `L(F_1)`.
pub fn m3_description(params: &ModelParams) -> Result<FactorDescription> {
    let vn_z = vn_z_description(params);
    let (alpha, r) = vn_z
        .summands()
        .iter()
        .find_map(|s| match &s.kind {
            FactorKind::GroupVonNeumannZ => Some((s.weight.clone(), Scalar::one())),
            FactorKind::InterpolatedFreeGroup(r) => Some((s.weight.clone(), r.clone())),
            _ => None,
        })
        .ok_or_else(|| Error::Inconsistent("vN(Z) has no diffuse summand".into()))?;
    dykema_free_product(&r, &alpha, params.n())
}

/// `1 + 2(n−1)/n²`, checked against [`m3_description`].
pub fn m3_parameter(params: &ModelParams) -> Result<Scalar> {
    let n = int(params.n() as i64);
    let closed = Scalar::one() + int(2) * (&n - Scalar::one()) / (&n * &n);
    let description = m3_description(params)?;
    match description.free_group_parameter() {
        Some(r) if *r == closed => Ok(closed),
        _ => Err(Error::Inconsistent(format!(
            "free product gives {description}, expected LF({closed})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn vn_z_weights() {
        let d = vn_z_description(&ModelParams::new(2).unwrap());
        assert_eq!(d.summands()[0].weight, ratio(1, 2));
        assert_eq!(d.summands()[1].weight, ratio(1, 2));
        let d = vn_z_description(&ModelParams::new(3).unwrap());
        assert_eq!(d.summands()[0].weight, ratio(2, 3));
        assert_eq!(d.summands()[1].weight, ratio(1, 3));
        assert_eq!(d.to_string(), "C[2/3] + LZ[1/3]");
    }

    #[test]
    fn factor_values() {
        assert_eq!(
            m3_parameter(&ModelParams::new(2).unwrap()).unwrap(),
            ratio(3, 2)
        );
        assert_eq!(
            m3_parameter(&ModelParams::new(3).unwrap()).unwrap(),
            ratio(13, 9)
        );
        let lf = dykema_free_product(&int(1), &ratio(1, 2), 2).unwrap();
        assert_eq!(lf.to_string(), "LF(3/2)");
        let mut prev = ratio(3, 2);
        for n in 3..50 {
            let r = m3_parameter(&ModelParams::new(n).unwrap()).unwrap();
            assert!(r < prev && r > Scalar::one());
            prev = r;
        }
    }

    #[test]
    fn branches() {
        let low = dykema_free_product(&int(3), &ratio(1, 20), 4).unwrap();
        assert_eq!(low.summands().len(), 2);
        assert_eq!(low.summands()[0].kind, FactorKind::MatrixAlgebra(4));
        assert_eq!(low.summands()[0].weight, ratio(1, 5));
        assert_eq!(
            low.summands()[1].kind,
            FactorKind::InterpolatedFreeGroup(ratio(273, 256))
        );
        assert_eq!(low.summands()[1].weight, ratio(4, 5));
        assert_eq!(dykema_branch(&ratio(1, 10), 4), DykemaBranch::Factor);
        let boundary = dykema_free_product(&ratio(5, 2), &ratio(1, 9), 3).unwrap();
        assert_eq!(boundary.summands().len(), 1);
        let (first, w, second) = dykema_boundary_values(&ratio(5, 2), 3);
        assert!(w.is_zero());
        assert_eq!(first, second);
    }

    #[test]
    fn range_errors() {
        assert!(dykema_free_product(&int(1), &int(0), 2).is_err());
        assert!(dykema_free_product(&int(1), &int(1), 2).is_err());
        assert!(dykema_free_product(&int(1), &ratio(1, 2), 1).is_err());
        assert!(dykema_free_product(&ratio(1, 2), &ratio(1, 2), 2).is_err());
        assert!(FactorDescription::new(vec![Summand {
            weight: ratio(1, 2),
            kind: FactorKind::Scalar
        }])
        .is_err());
        assert!(FactorDescription::single(FactorKind::InterpolatedFreeGroup(int(1))).is_err());
    }
}
