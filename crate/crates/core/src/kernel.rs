//! Kronecker-kernel algebra: rows of `K_2^{⊗n}`, the fast polar transform,
//! encoding `x = u T K_2^{⊗n}`, and the row identities that make shift
//! matrices act as cyclic shifts on codewords.

use crate::error::{Error, Result};
use crate::gf2::{BitVector, UnitUpperTriangular};

/// Largest supported log2 block length.
pub const MAX_LEVEL: u32 = 24;

fn check_level(n: u32) -> Result<usize> {
    if n > MAX_LEVEL {
        Err(Error::LevelTooLarge(n))
    } else {
        Ok(1usize << n)
    }
}

fn check_index(i: usize, len: usize) -> Result<()> {
    if i == 0 || i > len {
        Err(Error::IndexOutOfRange { index: i, len })
    } else {
        Ok(())
    }
}

/// Row `g_i` of `K_2^{⊗n}`.
///
/// `g_i(j) = 1` iff the binary support of `j - 1` is contained in that of
/// `i - 1`. The identities test suite checks this against
/// [`kronecker_power`] entrywise.
pub fn kernel_row(n: u32, i: usize) -> Result<BitVector> {
    let len = check_level(n)?;
    check_index(i, len)?;
    let mask = i - 1;
    // Enumerate submasks of `mask` directly.
    let mut row = BitVector::zeros(len);
    let mut sub = mask;
    loop {
        row.set(sub + 1, true);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    Ok(row)
}

/// Kronecker product of two square GF(2) matrices given as row lists.
pub fn kronecker(a: &[BitVector], b: &[BitVector]) -> Vec<BitVector> {
    let (na, nb) = (a.len(), b.len());
    let mut out = Vec::with_capacity(na * nb);
    for ra in a {
        for rb in b {
            let mut row = BitVector::zeros(na * nb);
            for ja in ra.ones() {
                for jb in rb.ones() {
                    row.set((ja - 1) * nb + jb, true);
                }
            }
            out.push(row);
        }
    }
    out
}

/// `K_2^{⊗n}` built by repeated Kronecker products of the 2×2 kernel.
pub fn kronecker_power(n: u32) -> Result<Vec<BitVector>> {
    check_level(n)?;
    let k2 = [BitVector::from_bits(&[1, 0]), BitVector::from_bits(&[1, 1])];
    let mut g = vec![BitVector::from_bits(&[1])];
    for _ in 0..n {
        g = kronecker(&g, &k2);
    }
    Ok(g)
}

/// `v K_2^{⊗n}` for a vector of length `2^n`, by in-place butterflies.
pub fn polar_transform(v: &BitVector) -> BitVector {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    let len = v.len();
    debug_assert!(len.is_power_of_two());
    let mut words = v.words().to_vec();
    let n = len.trailing_zeros() as usize;
    for (s, mask) in MASKS.iter().enumerate().take(n) {
        let d = 1u32 << s;
        for w in words.iter_mut() {
            *w ^= (*w >> d) & mask;
        }
    }
    for s in 6..n {
        let stride = 1usize << (s - 6);
        for w in 0..words.len() {
            if w & stride == 0 {
                words[w] ^= words[w | stride];
            }
        }
    }
    BitVector::from_words(len, words)
}

/// Intermediate and final vectors of one encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    /// `v = u T`
    pub v: BitVector,
    /// `x = v K_2^{⊗n}`
    pub x: BitVector,
}

/// Encodes `x = u T K_2^{⊗n}`.
pub fn encode(u: &BitVector, t: &UnitUpperTriangular, n: u32) -> Result<Encoded> {
    let len = check_level(n)?;
    if u.len() != len {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: len,
        });
    }
    let v = t.apply(u)?;
    let x = polar_transform(&v);
    Ok(Encoded { v, x })
}

/// Support of `g_i`; summing the rows `g_j` over it yields `e_i`
/// because `K_2^{⊗n}` is its own inverse.
pub fn basis_expansion(n: u32, i: usize) -> Result<Vec<usize>> {
    Ok(kernel_row(n, i)?.ones().collect())
}

/// `Σ g_{i+k-1}` over `k ∈ supp(g_j)` with `k <= N + 1 - i`.
///
/// Equals `g_i` cyclically shifted right by `j - 1`; that equality is
/// checked in the identity suite rather than used here.
pub fn lemma1_row_sum(n: u32, i: usize, j: usize) -> Result<BitVector> {
    let len = check_level(n)?;
    check_index(i, len)?;
    let gj = kernel_row(n, j)?;
    let mut acc = BitVector::zeros(len);
    for k in gj.ones().take_while(|&k| k + i <= len + 1) {
        acc ^= &kernel_row(n, i + k - 1)?;
    }
    Ok(acc)
}

/// Shift matrix `T(g_j)` generated by row `j` of `K_2^{⊗n}`.
pub fn kernel_shift_matrix(n: u32, j: usize) -> Result<UnitUpperTriangular> {
    UnitUpperTriangular::shift_matrix(&kernel_row(n, j)?)
}
