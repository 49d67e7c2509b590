//! The lattice `NC(q)` of non-crossing partitions over a finite totally
//! ordered ground set.
//!
//! Partitions are stored canonically: each block is sorted and blocks are
//! ordered by their minimum element, so derived `Eq`/`Hash` are structural.
//! Ground sets are arbitrary strictly increasing lists of positive integers,
//! which lets the same type describe `[q]` as well as subsets such as the
//! positions of one kind of letter inside a word.

mod mobius;
mod pitilde;
mod table;
mod transform;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub use mobius::mobius;
pub(crate) use pitilde::pi_tilde_positions;
pub use pitilde::{pi_tilde, pi_tilde_brute};
pub use table::{block_count_histogram, catalan, narayana, NcTable};
pub use transform::{
    cumulants_to_moments, moments_to_cumulants, multiplicative_extension, partitioned_forms_check,
    FormsReport, PartitionFunctional,
};

/// Default largest ground set [`enumerate_nc`] will expand (`C_16 ≈ 3.5e7`).
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(Vec<u32>);

impl GroundSet {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.first() == Some(&0) {
            return Err(Error::InvalidGround("elements must be positive".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGround(format!(
                "{elements:?} is not strictly increasing"
            )));
        }
        Ok(Self(elements))
    }

    /// `[q] = {1, …, q}`.
    pub fn interval(q: usize) -> Self {
        Self((1..=q as u32).collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, element: u32) -> Option<usize> {
        self.0.binary_search(&element).ok()
    }

    pub fn contains(&self, element: u32) -> bool {
        self.position(element).is_some()
    }

    /// Elements of `[q]` not in `self`.
    pub fn complement_in_interval(&self, q: usize) -> Self {
        Self((1..=q as u32).filter(|e| !self.contains(*e)).collect())
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonCrossingPartition {
    ground: GroundSet,
    blocks: Vec<Vec<u32>>,
}

impl NonCrossingPartition {
    /// Validates cover, disjointness and the non-crossing condition, then
    /// canonicalizes.
    pub fn new(ground: GroundSet, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let blocks = canonical_blocks(blocks)?;
        let mut covered: Vec<u32> = blocks.iter().flatten().copied().collect();
        covered.sort_unstable();
        if covered != ground.0 {
            return Err(Error::MalformedPartition(format!(
                "blocks {} do not cover ground set {ground}",
                fmt_blocks(&blocks)
            )));
        }
        if !noncrossing_canonical(&blocks) {
            return Err(Error::MalformedPartition(format!(
                "{} is crossing",
                fmt_blocks(&blocks)
            )));
        }
        Ok(Self { ground, blocks })
    }

    /// Builds a partition whose ground set is the union of `blocks`.
    pub fn from_blocks(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        let ground = GroundSet::new(all)?;
        Self::new(ground, blocks)
    }

    /// `0`: every element in its own block.
    pub fn finest(ground: &GroundSet) -> Self {
        let blocks = ground.0.iter().map(|&e| vec![e]).collect();
        Self {
            ground: ground.clone(),
            blocks,
        }
    }

    /// `1`: a single block (no blocks on the empty ground set).
    pub fn coarsest(ground: &GroundSet) -> Self {
        let blocks = if ground.is_empty() {
            Vec::new()
        } else {
            vec![ground.0.clone()]
        };
        Self {
            ground: ground.clone(),
            blocks,
        }
    }

    /// Trusted constructor from a restricted-growth label vector indexed by
    /// ground position.
    pub(crate) fn from_labels(ground: &GroundSet, labels: &[usize]) -> Self {
        let count = labels.iter().map(|l| l + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (pos, &l) in labels.iter().enumerate() {
            blocks[l].push(ground.0[pos]);
        }
        Self {
            ground: ground.clone(),
            blocks,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Block index of each ground position.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.ground.len()];
        for (i, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[self.ground.position(e).expect("block element in ground")] = i;
            }
        }
        labels
    }

    /// Blocks as 0-based ground positions.
    pub fn position_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&e| self.ground.position(e).expect("block element in ground"))
                    .collect()
            })
            .collect()
    }

    pub fn is_finest(&self) -> bool {
        self.blocks.len() == self.ground.len()
    }

    pub fn is_coarsest(&self) -> bool {
        self.blocks.len() <= 1
    }
}

impl fmt::Display for NonCrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_blocks(&self.blocks))
    }
}

/// `{1,3}{2}` style rendering.
pub fn fmt_blocks(blocks: &[Vec<u32>]) -> String {
    let mut out = String::new();
    for b in blocks {
        out.push('{');
        for (i, e) in b.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&e.to_string());
        }
        out.push('}');
    }
    out
}

fn canonical_blocks(mut blocks: Vec<Vec<u32>>) -> Result<Vec<Vec<u32>>> {
    let mut seen = HashSet::new();
    for b in &mut blocks {
        if b.is_empty() {
            return Err(Error::MalformedPartition("empty block".into()));
        }
        b.sort_unstable();
        for &e in b.iter() {
            if e == 0 {
                return Err(Error::MalformedPartition(
                    "elements must be positive".into(),
                ));
            }
            if !seen.insert(e) {
                return Err(Error::MalformedPartition(format!(
                    "element {e} appears in more than one block"
                )));
            }
        }
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    Ok(blocks)
}

/// Stack scan over the elements in increasing order: a block may only be
/// revisited while every block opened after it is already exhausted.
fn noncrossing_canonical(blocks: &[Vec<u32>]) -> bool {
    let mut seq: Vec<(u32, usize)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |&e| (e, i)))
        .collect();
    seq.sort_unstable();
    let mut remaining: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let mut seen = vec![false; blocks.len()];
    let mut stack: Vec<usize> = Vec::new();
    for (_, l) in seq {
        if seen[l] {
            while let Some(&top) = stack.last() {
                if top == l {
                    break;
                }
                if remaining[top] > 0 {
                    return false;
                }
                stack.pop();
            }
        } else {
            seen[l] = true;
            stack.push(l);
        }
        remaining[l] -= 1;
    }
    true
}

/// True iff no `a<b<c<d` has `a,c` in one block and `b,d` in another.
pub fn is_noncrossing(blocks: &[Vec<u32>]) -> Result<bool> {
    let blocks = canonical_blocks(blocks.to_vec())?;
    Ok(noncrossing_canonical(&blocks))
}

/// True iff every block of `rho` lies inside a block of `pi`.
pub fn refines(rho: &NonCrossingPartition, pi: &NonCrossingPartition) -> Result<bool> {
    if rho.ground != pi.ground {
        return Err(Error::GroundMismatch(
            rho.ground.to_string(),
            pi.ground.to_string(),
        ));
    }
    Ok(refines_labels(&rho.labels(), &pi.labels()))
}

pub(crate) fn refines_labels(rho: &[usize], pi: &[usize]) -> bool {
    let mut image = vec![usize::MAX; rho.len()];
    for (r, p) in rho.iter().zip(pi) {
        if image[*r] == usize::MAX {
            image[*r] = *p;
        } else if image[*r] != *p {
            return false;
        }
    }
    true
}

/// Visits the restricted-growth label vector of every partition in `NC(q)`.
///
/// Element `i` either opens a new block or joins a block still on the
/// stack, which closes every block opened after it.
pub(crate) fn for_each_nc_labels(q: usize, mut visit: impl FnMut(&[usize], usize)) {
    fn rec(
        i: usize,
        q: usize,
        labels: &mut Vec<usize>,
        stack: &mut Vec<usize>,
        count: usize,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        if i == q {
            visit(labels, count);
            return;
        }
        stack.push(count);
        labels[i] = count;
        rec(i + 1, q, labels, stack, count + 1, visit);
        stack.pop();
        for s in (0..stack.len()).rev() {
            let tail = stack.split_off(s + 1);
            labels[i] = stack[s];
            rec(i + 1, q, labels, stack, count, visit);
            stack.extend(tail);
        }
    }
    let mut labels = vec![0; q];
    let mut stack = Vec::with_capacity(q);
    rec(0, q, &mut labels, &mut stack, 0, &mut visit);
}

/// Every non-crossing partition of `ground`, each exactly once, in a
/// deterministic order. Uses [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_nc(ground: &GroundSet) -> Result<Vec<NonCrossingPartition>> {
    enumerate_nc_with_cap(ground, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_nc_with_cap(ground: &GroundSet, cap: usize) -> Result<Vec<NonCrossingPartition>> {
    let q = ground.len();
    check_cap(q, cap)?;
    let mut out = Vec::new();
    for_each_nc_labels(q, |labels, _| {
        out.push(NonCrossingPartition::from_labels(ground, labels))
    });
    Ok(out)
}

pub(crate) fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::SizeLimit {
            size,
            cap,
            catalan: catalan(size as u32).to_string(),
        });
    }
    Ok(())
}
