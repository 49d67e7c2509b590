use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense square matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Scalar>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Dimension {
                expected: 1,
                rows: 0,
                cols: 0,
            });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    rows: dim,
                    cols: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Scalar::one();
        }
        m
    }

    /// Matrix unit `e_{ij}` (0-based indices).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim);
        m.entries[i * dim + j] = Scalar::one();
        m
    }

    /// Permutation matrix of the cyclic shift `e_j ↦ e_{j+1 mod dim}`: the
    /// image of a generator under the regular representation of `Z/dim`.
    pub fn cyclic_shift(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for j in 0..dim {
            m.entries[((j + 1) % dim) * dim + j] = Scalar::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .chunks(self.dim)
            .map(<[Scalar]>::to_vec)
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                rows: other.dim,
                cols: other.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        out.entries[i * d + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                rows: other.dim,
                cols: other.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn trace(&self) -> Scalar {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// `Tr / dim`, so the identity has trace one.
    pub fn normalized_trace(&self) -> Scalar {
        self.trace() / Scalar::from_integer(self.dim.into())
    }

    /// Product of a nonempty sequence, left to right.
    pub fn product<'a>(mut factors: impl Iterator<Item = &'a RationalMatrix>) -> Result<Self> {
        let first = factors
            .next()
            .ok_or_else(|| Error::OutOfRange("empty matrix product".into()))?
            .clone();
        factors.try_fold(first, |acc, m| acc.mul(m))
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.dim)
            .map(|r| r.iter().map(crate::scalar::to_f64).collect())
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    /// `M[[a,b],[c,d]]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
