//! Expanded information set.
//!
//! Information bits that feed a frozen (or already expanded) position
//! through `T` must be enumerated over `{0, 1}`; so must the free member of
//! any pair `(2m-1, 2m)` whose couple is fixed. The two rules are applied
//! alternately until neither adds anything.

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// The couple of position `i`: `i - 1` for even `i`, `i + 1` for odd `i`.
pub fn couple(i: usize, len: usize) -> Result<usize> {
    if i == 0 || i > len {
        return Err(Error::IndexOutOfRange { index: i, len });
    }
    Ok(if i % 2 == 0 { i - 1 } else { i + 1 })
}

/// Expanded information set and the sets derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionResult {
    expanded: Vec<usize>,
    fixed: BitVector,
    free: BitVector,
    fixed_pairs: Vec<usize>,
    free_pairs: Vec<usize>,
}

impl ExpansionResult {
    /// Expanded information positions, ascending.
    pub fn expanded(&self) -> &[usize] {
        &self.expanded
    }

    /// Complexity parameter λ: the number of expanded information bits.
    pub fn lambda(&self) -> usize {
        self.expanded.len()
    }

    /// Frozen or expanded positions.
    pub fn fixed_mask(&self) -> &BitVector {
        &self.fixed
    }

    /// Information positions left free.
    pub fn free_mask(&self) -> &BitVector {
        &self.free
    }

    /// Pair indices `m` with both `2m-1` and `2m` fixed.
    pub fn fixed_pairs(&self) -> &[usize] {
        &self.fixed_pairs
    }

    /// Pair indices `m` with both `2m-1` and `2m` free.
    pub fn free_pairs(&self) -> &[usize] {
        &self.free_pairs
    }
}

/// Runs the two-phase fixpoint on a code.
pub fn expanded_information_set(code: &CodeSpec) -> ExpansionResult {
    expand_rows(code.transform().rows(), code.info_mask(), None)
}

/// Core of [`expanded_information_set`] over raw rows of `T`.
///
/// `seed` pre-marks positions as expanded; information positions only.
pub fn expand_rows(
    rows: &[BitVector],
    info: &BitVector,
    seed: Option<&BitVector>,
) -> ExpansionResult {
    let len = info.len();
    let mut fixed = info.complement();
    if let Some(s) = seed {
        fixed ^= &(s & info);
    }
    loop {
        // Phase 1: a backward scan sees every position above `j` in its final state.
        for j in (1..=len).rev() {
            if !fixed.get(j) && reaches_beyond(&rows[j - 1], &fixed, j) {
                fixed.set(j, true);
            }
        }
        // Phase 2: resolve mixed pairs.
        let (odd, even) = fixed.deinterleave();
        let mixed = &odd ^ &even;
        if mixed.is_zero() {
            break;
        }
        for m in mixed.ones() {
            fixed.set(2 * m - 1, true);
            fixed.set(2 * m, true);
        }
    }
    finish(fixed, info)
}

#[inline]
fn reaches_beyond(row: &BitVector, fixed: &BitVector, j: usize) -> bool {
    // Columns strictly above j; row entries below j are zero by triangularity.
    let start = j / 64;
    let bit = j % 64;
    let (r, f) = (row.words(), fixed.words());
    if start >= r.len() {
        return false;
    }
    let first = r[start] & f[start] & (u64::MAX.checked_shl(bit as u32).unwrap_or(0));
    if first != 0 {
        return true;
    }
    r[start + 1..]
        .iter()
        .zip(&f[start + 1..])
        .any(|(a, b)| a & b != 0)
}

fn finish(fixed: BitVector, info: &BitVector) -> ExpansionResult {
    let expanded: Vec<usize> = (&fixed & info).ones().collect();
    let free = fixed.complement();
    let (odd_fixed, even_fixed) = fixed.deinterleave();
    let fixed_pairs = (&odd_fixed & &even_fixed).ones().collect();
    let (odd_free, even_free) = free.deinterleave();
    let free_pairs = (&odd_free & &even_free).ones().collect();
    ExpansionResult {
        expanded,
        fixed,
        free,
        fixed_pairs,
        free_pairs,
    }
}

/// Number of information bits the earlier deterministic method enumerates:
/// those up to the end of the pair holding the last frozen bit. Zero when
/// nothing is frozen.
pub fn baseline_expansion_size(code: &CodeSpec) -> usize {
    baseline_from_mask(code.info_mask())
}

pub(crate) fn baseline_from_mask(info: &BitVector) -> usize {
    let frozen = info.complement();
    match frozen.last_one() {
        None => 0,
        Some(last) => {
            let end = (last + last % 2).min(info.len());
            (1..=end).filter(|&i| info.get(i)).count()
        }
    }
}

/// Checks the closure rule directly: no free position `j` has
/// `T_{j,i} = 1` for a fixed `i > j`. Returns the first offending pair.
pub fn check_closure(code: &CodeSpec, exp: &ExpansionResult) -> Result<()> {
    for j in exp.free_mask().ones() {
        let row = code.transform().row(j);
        if let Some(i) = (row & exp.fixed_mask()).ones().find(|&i| i > j) {
            return Err(Error::ClosureViolated { free: j, fixed: i });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Pretransform;
    use crate::gf2::UnitUpperTriangular;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn code(n: u32, frozen: &[usize], t: UnitUpperTriangular) -> CodeSpec {
        let len = 1 << n;
        let info = (1..=len).filter(|i| !frozen.contains(i)).collect();
        CodeSpec::new(n, info, t).unwrap()
    }

    #[test]
    fn couple_mapping() {
        assert_eq!(couple(1, 8).unwrap(), 2);
        assert_eq!(couple(2, 8).unwrap(), 1);
        for i in 1..=8 {
            assert_eq!(couple(couple(i, 8).unwrap(), 8).unwrap(), i);
        }
        assert!(couple(0, 8).is_err());
        assert!(couple(9, 8).is_err());
    }

    #[test]
    fn hand_executed_instance() {
        let t = UnitUpperTriangular::shift_matrix(&bv("11000000")).unwrap();
        let c = code(3, &[1, 2, 3, 5], t);
        let e = expanded_information_set(&c);
        assert_eq!(e.expanded(), &[4, 6]);
        assert_eq!(e.lambda(), 2);
        assert_eq!(e.fixed_pairs(), &[1, 2, 3]);
        assert_eq!(e.free_pairs(), &[4]);
        check_closure(&c, &e).unwrap();
    }

    #[test]
    fn identity_transform_gives_parity_set() {
        // Frozen {1, 2, 3, 5}: mixed pairs (3,4) and (5,6).
        let c = code(3, &[1, 2, 3, 5], UnitUpperTriangular::identity(8));
        assert_eq!(expanded_information_set(&c).expanded(), &[4, 6]);
        let c = code(3, &[1, 2, 3], UnitUpperTriangular::identity(8));
        assert_eq!(expanded_information_set(&c).expanded(), &[4]);
    }

    #[test]
    fn full_rate_has_nothing_to_expand() {
        let t = crate::code::build_pretransform(
            &Pretransform::Random {
                density: 0.5,
                seed: 4,
            },
            16,
            &[],
            &[],
        )
        .unwrap();
        let c = code(4, &[], t);
        let e = expanded_information_set(&c);
        assert_eq!(e.lambda(), 0);
        assert_eq!(e.free_pairs().len(), 8);
        assert_eq!(baseline_expansion_size(&c), 0);
    }

    #[test]
    fn baseline_metric() {
        let id = UnitUpperTriangular::identity(8);
        assert_eq!(baseline_expansion_size(&code(3, &[8], id.clone())), 7);
        assert_eq!(
            baseline_expansion_size(&code(3, &[1, 2, 3, 5], id.clone())),
            2
        );
        // Last frozen bit even: nothing beyond it is counted.
        assert_eq!(baseline_expansion_size(&code(3, &[1, 4], id)), 2);
    }

    #[test]
    fn closure_checker_flags_free_constrainer() {
        let t = UnitUpperTriangular::shift_matrix(&bv("11000000")).unwrap();
        let c = code(3, &[1, 2, 3, 5], t);
        let mut e = expanded_information_set(&c);
        e.fixed.set(4, false);
        e.free.set(4, true);
        assert_eq!(
            check_closure(&c, &e),
            Err(Error::ClosureViolated { free: 4, fixed: 5 })
        );
    }
}
