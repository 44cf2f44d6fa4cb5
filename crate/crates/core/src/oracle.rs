//! Brute-force ground truth: enumerate every message, encode, tally.
//!
//! Shares nothing with the decomposition engine except [`encode`] and the
//! data types.

use num_bigint::BigUint;

use crate::code::CodeSpec;
use crate::engine::{PolarCosetSpec, WeightDistribution};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, UnitUpperTriangular};
use crate::kernel::encode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_k: usize,
    pub max_n: u32,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_k: 24,
            max_n: 10,
        }
    }
}

impl OracleLimits {
    fn check(&self, k: usize, n: u32) -> Result<()> {
        if k > self.max_k {
            return Err(Error::OracleLimit {
                what: "dimension",
                value: k,
                limit: self.max_k,
            });
        }
        if n > self.max_n {
            return Err(Error::OracleLimit {
                what: "log2 length",
                value: n as usize,
                limit: self.max_n as usize,
            });
        }
        Ok(())
    }
}

fn tally(len: usize, tallies: Vec<u64>) -> WeightDistribution {
    debug_assert_eq!(tallies.len(), len + 1);
    WeightDistribution::from_counts(tallies.into_iter().map(BigUint::from).collect())
}

/// Enumerates all `2^K` messages `u` (frozen bits zero) and counts the
/// weights of `u T K_2^{⊗n}`.
pub fn brute_force_wd(code: &CodeSpec, limits: &OracleLimits) -> Result<WeightDistribution> {
    limits.check(code.k(), code.n())?;
    let len = code.len();
    let info = code.info_set();
    let mut tallies = vec![0u64; len + 1];
    for message in 0u64..(1u64 << info.len()) {
        let mut u = BitVector::zeros(len);
        for (t, &pos) in info.iter().enumerate() {
            if message >> t & 1 == 1 {
                u.set(pos, true);
            }
        }
        let x = encode(&u, code.transform(), code.n())?.x;
        tallies[x.weight()] += 1;
    }
    Ok(tally(len, tallies))
}

/// Enumerates every completion of a coset's free positions.
pub fn brute_force_coset_wd(
    spec: &PolarCosetSpec,
    limits: &OracleLimits,
) -> Result<WeightDistribution> {
    let free: Vec<usize> = spec.mask().complement().ones().collect();
    limits.check(free.len(), spec.level())?;
    let len = spec.len();
    let identity = UnitUpperTriangular::identity(len);
    let mut tallies = vec![0u64; len + 1];
    for fill in 0u64..(1u64 << free.len()) {
        let mut v = spec.values().clone();
        for (t, &pos) in free.iter().enumerate() {
            if fill >> t & 1 == 1 {
                v.set(pos, true);
            }
        }
        let x = encode(&v, &identity, spec.level())?.x;
        tallies[x.weight()] += 1;
    }
    Ok(tally(len, tallies))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn wd(counts: &[u64]) -> WeightDistribution {
        WeightDistribution::from_counts(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    #[test]
    fn small_codes() {
        let full = CodeSpec::new(1, vec![1, 2], UnitUpperTriangular::identity(2)).unwrap();
        assert_eq!(
            brute_force_wd(&full, &OracleLimits::default()).unwrap(),
            wd(&[1, 2, 1])
        );
        let pac = UnitUpperTriangular::shift_matrix(&bv("11")).unwrap();
        let c = CodeSpec::new(1, vec![2], pac).unwrap();
        assert_eq!(
            brute_force_wd(&c, &OracleLimits::default()).unwrap(),
            wd(&[1, 0, 1])
        );
    }

    #[test]
    fn limits_are_enforced() {
        let c = CodeSpec::new(3, (1..=8).collect(), UnitUpperTriangular::identity(8)).unwrap();
        let tight = OracleLimits {
            max_k: 7,
            max_n: 10,
        };
        assert!(matches!(
            brute_force_wd(&c, &tight),
            Err(Error::OracleLimit {
                what: "dimension",
                ..
            })
        ));
        let short = OracleLimits {
            max_k: 24,
            max_n: 2,
        };
        assert!(brute_force_wd(&c, &short).is_err());
    }

    #[test]
    fn coset_cases() {
        let all_fixed = PolarCosetSpec::new(2, bv("1111"), bv("0001")).unwrap();
        assert_eq!(
            brute_force_coset_wd(&all_fixed, &OracleLimits::default()).unwrap(),
            wd(&[0, 0, 0, 0, 1])
        );
        let all_free = PolarCosetSpec::all_free(2);
        assert_eq!(
            brute_force_coset_wd(&all_free, &OracleLimits::default()).unwrap(),
            wd(&[1, 4, 6, 4, 1])
        );
    }

    #[test]
    fn mass_is_two_to_the_k() {
        let t = UnitUpperTriangular::shift_matrix(&bv("1011000000000000")).unwrap();
        let c = CodeSpec::new(4, vec![4, 6, 7, 8, 10, 12, 14, 15, 16], t).unwrap();
        let d = brute_force_wd(&c, &OracleLimits::default()).unwrap();
        assert_eq!(d.total(), BigUint::one() << 9);
        assert_eq!(d.get(0), &BigUint::one());
    }
}
