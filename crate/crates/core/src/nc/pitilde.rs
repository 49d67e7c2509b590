//! The complement `π̃ ∈ NC(E)` of `π ∈ NC(D)` for `D ⊔ E = [q]`: the largest
//! non-crossing partition of `E` whose union with `π` is still non-crossing.
//!
//! Two constructions are provided. [`pi_tilde_brute`] searches `NC(E)` for
//! the maximum directly and is the reference. [`pi_tilde`] joins `e < f` in
//! `E` exactly when no block of `π` has an element strictly between them and
//! another outside `[e, f]`.

use super::{enumerate_nc, noncrossing_canonical, refines_labels, GroundSet, NonCrossingPartition};
use crate::error::{Error, Result};

fn validate(d: &GroundSet, e: &GroundSet, pi: &NonCrossingPartition) -> Result<()> {
    if pi.ground() != d {
        return Err(Error::GroundMismatch(
            pi.ground().to_string(),
            d.to_string(),
        ));
    }
    let mut union: Vec<u32> = d.elements().iter().chain(e.elements()).copied().collect();
    union.sort_unstable();
    let q = union.len() as u32;
    if union.iter().copied().ne(1..=q) {
        return Err(Error::InvalidGround(format!(
            "D={d} and E={e} must be disjoint with union [{q}]"
        )));
    }
    Ok(())
}

pub fn pi_tilde(
    d: &GroundSet,
    e: &GroundSet,
    pi: &NonCrossingPartition,
) -> Result<NonCrossingPartition> {
    validate(d, e, pi)?;
    let blocks = pi_tilde_positions(pi.blocks(), e.elements());
    NonCrossingPartition::new(e.clone(), blocks)
}

/// Direct construction on raw blocks; `e` sorted, disjoint from the blocks.
pub(crate) fn pi_tilde_positions(pi_blocks: &[Vec<u32>], e: &[u32]) -> Vec<Vec<u32>> {
    let separated = |lo: u32, hi: u32| {
        pi_blocks.iter().any(|b| {
            let inside = b.iter().any(|&x| lo < x && x < hi);
            inside && (b[0] < lo || *b.last().unwrap() > hi)
        })
    };
    let mut out: Vec<Vec<u32>> = Vec::new();
    for &x in e {
        match out.iter_mut().find(|block| !separated(block[0], x)) {
            Some(block) => block.push(x),
            None => out.push(vec![x]),
        }
    }
    out
}

/// Reference construction: the unique maximum of
/// `{ρ ∈ NC(E) : π ⊔ ρ ∈ NC(q)}`.
pub fn pi_tilde_brute(
    d: &GroundSet,
    e: &GroundSet,
    pi: &NonCrossingPartition,
) -> Result<NonCrossingPartition> {
    validate(d, e, pi)?;
    let admissible: Vec<NonCrossingPartition> = enumerate_nc(e)?
        .into_iter()
        .filter(|rho| {
            let mut joined: Vec<Vec<u32>> = pi.blocks().to_vec();
            joined.extend(rho.blocks().iter().cloned());
            joined.sort_unstable_by_key(|b| b[0]);
            noncrossing_canonical(&joined)
        })
        .collect();
    let top = admissible
        .iter()
        .min_by_key(|rho| rho.num_blocks())
        .ok_or_else(|| Error::Inconsistent("no admissible partition of E".into()))?;
    let top_labels = top.labels();
    if admissible
        .iter()
        .all(|rho| refines_labels(&rho.labels(), &top_labels))
    {
        Ok(top.clone())
    } else {
        Err(Error::Inconsistent(format!(
            "admissible partitions of {e} have no maximum for pi={pi}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[u32]) -> GroundSet {
        GroundSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reference_instance() {
        let d = g(&[2, 5, 8, 11, 13, 14, 17]);
        let e = d.complement_in_interval(18);
        let pi =
            NonCrossingPartition::new(d.clone(), vec![vec![2, 8, 11], vec![5], vec![13, 14, 17]])
                .unwrap();
        let expected = "{1,12,18}{3,4,6,7}{9,10}{15,16}";
        assert_eq!(pi_tilde(&d, &e, &pi).unwrap().to_string(), expected);
        assert_eq!(pi_tilde_brute(&d, &e, &pi).unwrap().to_string(), expected);
    }

    #[test]
    fn small_cases() {
        let d = g(&[2]);
        let e = g(&[1, 3]);
        let pi = NonCrossingPartition::coarsest(&d);
        assert_eq!(pi_tilde(&d, &e, &pi).unwrap().to_string(), "{1,3}");
        assert_eq!(pi_tilde_brute(&d, &e, &pi).unwrap().to_string(), "{1,3}");

        let d = GroundSet::interval(3);
        let pi = NonCrossingPartition::coarsest(&d);
        let empty = pi_tilde(&d, &GroundSet::empty(), &pi).unwrap();
        assert!(empty.is_empty() && empty.num_blocks() == 0);
    }

    #[test]
    fn exhaustive_agreement_small() {
        for q in 1..=7usize {
            for mask in 0u32..(1 << q) {
                let d: Vec<u32> = (1..=q as u32)
                    .filter(|i| mask & (1 << (i - 1)) != 0)
                    .collect();
                let d = g(&d);
                let e = d.complement_in_interval(q);
                for pi in enumerate_nc(&d).unwrap() {
                    assert_eq!(
                        pi_tilde(&d, &e, &pi).unwrap(),
                        pi_tilde_brute(&d, &e, &pi).unwrap(),
                        "D={d} pi={pi}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_non_interval() {
        let d = g(&[1, 2]);
        let pi = NonCrossingPartition::finest(&d);
        assert!(pi_tilde(&d, &g(&[4]), &pi).is_err());
        assert!(pi_tilde(&d, &g(&[2, 3]), &pi).is_err());
        assert!(pi_tilde(&g(&[1, 3]), &g(&[2]), &pi).is_err());
    }
}
