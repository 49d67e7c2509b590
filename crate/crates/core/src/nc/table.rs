use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

use super::{check_cap, for_each_nc_labels, mobius::mobius_to_top_labels, DEFAULT_ENUMERATION_CAP};
use crate::error::Result;
use crate::scalar::Scalar;

/// Every partition of `NC(q)` in position form, shared process-wide.
///
/// The Möbius column `μ(π, 1_q)` is filled on first use.
#[derive(Debug)]
pub struct NcTable {
    size: usize,
    labels: Vec<Vec<usize>>,
    blocks: Vec<Vec<Vec<usize>>>,
    to_top: OnceLock<Vec<Scalar>>,
}

impl NcTable {
    /// Cached table for `NC(q)`, subject to the default enumeration cap.
    pub fn get(q: usize) -> Result<Arc<NcTable>> {
        check_cap(q, DEFAULT_ENUMERATION_CAP)?;
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<NcTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.read().unwrap().get(&q) {
            return Ok(t.clone());
        }
        let table = Arc::new(NcTable::build(q));
        Ok(cache.write().unwrap().entry(q).or_insert(table).clone())
    }

    fn build(size: usize) -> Self {
        let mut labels = Vec::new();
        let mut blocks = Vec::new();
        for_each_nc_labels(size, |l, count| {
            let mut b = vec![Vec::new(); count];
            for (pos, &label) in l.iter().enumerate() {
                b[label].push(pos);
            }
            labels.push(l.to_vec());
            blocks.push(b);
        });
        Self {
            size,
            labels,
            blocks,
            to_top: OnceLock::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Position blocks (0-based) of each partition.
    pub fn blocks(&self) -> &[Vec<Vec<usize>>] {
        &self.blocks
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    /// `μ(π, 1_q)` aligned with [`NcTable::blocks`].
    pub fn mobius_to_top(&self) -> &[Scalar] {
        self.to_top.get_or_init(|| {
            self.labels
                .iter()
                .map(|l| mobius_to_top_labels(l))
                .collect()
        })
    }
}

/// Catalan number `C_q = binom(2q, q) / (q + 1)`.
pub fn catalan(q: u32) -> BigUint {
    binomial(2 * q, q) / BigUint::from(q + 1)
}

/// Narayana number `N(q, k) = binom(q, k) binom(q, k-1) / q`: partitions of
/// `NC(q)` with exactly `k` blocks.
pub fn narayana(q: u32, k: u32) -> BigUint {
    if q == 0 {
        return BigUint::from((k == 0) as u32);
    }
    if k == 0 || k > q {
        return BigUint::from(0u32);
    }
    binomial(q, k) * binomial(q, k - 1) / BigUint::from(q)
}

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of partitions of `NC(q)` with `k` blocks, indexed by `k`, obtained
/// by counting the enumeration.
pub fn block_count_histogram(q: usize) -> Result<Vec<u64>> {
    let table = NcTable::get(q)?;
    let mut hist = vec![0u64; q + 1];
    for b in table.blocks() {
        hist[b.len()] += 1;
    }
    Ok(hist)
}
