//! Pre-transformed polar code descriptions: reliability sequences,
//! information sets and pre-transformation recipes.

use std::collections::HashSet;
use std::fmt;
use std::io::Read;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, UnitUpperTriangular};
use crate::kernel::MAX_LEVEL;

/// TS 38.212 polar reliability sequence (Table 5.3.1.2-1), 0-based channel
/// indices from least to most reliable.
pub const NR_RELIABILITY_1024: &str = include_str!("../data/nr_reliability_1024.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("token {0:?} is not a non-negative integer")]
    InvalidToken(String),
    #[error("index {0} appears more than once")]
    Duplicate(usize),
    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },
    #[error("expected {expected} entries, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("sequence has {0} entries; expected a power of two")]
    NotPowerOfTwo(usize),
    #[error("io error: {0}")]
    Io(String),
}

/// Channel indices (1-based) ordered from least to most reliable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReliabilitySequence {
    order: Vec<usize>,
}

impl ReliabilitySequence {
    /// Parses whitespace-separated 0-based indices; the declared length is
    /// the number of tokens and must be a power of two.
    pub fn parse(text: &str) -> std::result::Result<Self, SequenceError> {
        let count = text.split_whitespace().count();
        if count == 0 || !count.is_power_of_two() {
            return Err(SequenceError::NotPowerOfTwo(count));
        }
        Self::parse_with_len(text, count)
    }

    /// Parses and requires exactly `len` entries forming a permutation of `[0, len)`.
    pub fn parse_with_len(text: &str, len: usize) -> std::result::Result<Self, SequenceError> {
        let mut order = Vec::with_capacity(len);
        let mut seen = vec![false; len];
        for tok in text.split_whitespace() {
            let idx: usize = tok
                .parse()
                .map_err(|_| SequenceError::InvalidToken(tok.to_string()))?;
            if idx >= len {
                return Err(SequenceError::OutOfRange { index: idx, len });
            }
            if std::mem::replace(&mut seen[idx], true) {
                return Err(SequenceError::Duplicate(idx));
            }
            order.push(idx + 1);
        }
        if order.len() != len {
            return Err(SequenceError::WrongCount {
                expected: len,
                found: order.len(),
            });
        }
        Ok(Self { order })
    }

    pub fn load<R: Read>(mut reader: R) -> std::result::Result<Self, SequenceError> {
        let mut text = String::new();
        reader
            .read_to_string(&mut text)
            .map_err(|e| SequenceError::Io(e.to_string()))?;
        Self::parse(&text)
    }

    /// The bundled 5G NR sequence of length 1024.
    pub fn nr() -> Self {
        Self::parse(NR_RELIABILITY_1024).expect("bundled sequence is valid")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// 1-based indices, least reliable first.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Entries `<= len`, order preserved.
    pub fn restrict(&self, len: usize) -> Result<Self> {
        let order: Vec<usize> = self.order.iter().copied().filter(|&i| i <= len).collect();
        if order.len() != len {
            return Err(SequenceError::WrongCount {
                expected: len,
                found: order.len(),
            }
            .into());
        }
        Ok(Self { order })
    }
}

/// Information set (the `k` most reliable indices `<= len`) and its
/// complement, both sorted ascending.
pub fn build_info_set(
    seq: &ReliabilitySequence,
    len: usize,
    k: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if k > len {
        return Err(Error::DimensionTooLarge { k, n: len });
    }
    let restricted = seq.restrict(len)?;
    let order = restricted.order();
    let mut info = order[len - k..].to_vec();
    let mut frozen = order[..len - k].to_vec();
    info.sort_unstable();
    frozen.sort_unstable();
    Ok((info, frozen))
}

/// How the pre-transformation matrix is built.
#[derive(Debug, Clone, PartialEq)]
pub enum Pretransform {
    Identity,
    /// Convolutional precoder; `memory(1)` must be 1.
    Pac {
        memory: BitVector,
    },
    /// `v_i = u_i + Σ_d u_{i-d}` at each parity position `i`; all frozen
    /// positions when `positions` is `None`.
    ParityCheck {
        taps: Vec<usize>,
        positions: Option<Vec<usize>>,
    },
    /// CRC generator polynomial, highest degree first (`"1100001"` is
    /// `x^6 + x^5 + 1`). The CRC occupies the largest-index positions of
    /// the information set, which become frozen (dynamically determined).
    Crc {
        polynomial: BitVector,
    },
    /// i.i.d. Bernoulli(`density`) entries above the diagonal from ChaCha8
    /// seeded with `seed`.
    Random {
        density: f64,
        seed: u64,
    },
    Explicit(UnitUpperTriangular),
}

impl Pretransform {
    pub fn kind(&self) -> &'static str {
        match self {
            Pretransform::Identity => "identity",
            Pretransform::Pac { .. } => "pac",
            Pretransform::ParityCheck { .. } => "pc",
            Pretransform::Crc { .. } => "crc",
            Pretransform::Random { .. } => "random",
            Pretransform::Explicit(_) => "explicit",
        }
    }
}

/// Builds the pre-transformation matrix for the given recipe.
///
/// For [`Pretransform::Crc`] the `info` set is the full set of non-frozen
/// positions including the CRC bits; see [`crc_split`].
pub fn build_pretransform(
    recipe: &Pretransform,
    len: usize,
    info: &[usize],
    frozen: &[usize],
) -> Result<UnitUpperTriangular> {
    match recipe {
        Pretransform::Identity => Ok(UnitUpperTriangular::identity(len)),
        Pretransform::Pac { memory } => {
            if memory.is_empty() || !memory.get(1) {
                return Err(Error::LeadingZero);
            }
            UnitUpperTriangular::shift_matrix(&memory.resized(len))
        }
        Pretransform::ParityCheck { taps, positions } => {
            if taps.contains(&0) {
                return Err(Error::Recipe("parity taps must be positive".into()));
            }
            let positions = positions.as_deref().unwrap_or(frozen);
            let mut rows: Vec<BitVector> = UnitUpperTriangular::identity(len).into_rows();
            for &i in positions {
                if i == 0 || i > len {
                    return Err(Error::IndexOutOfRange { index: i, len });
                }
                for &d in taps {
                    if d < i {
                        rows[i - d - 1].set(i, true);
                    }
                }
            }
            Ok(UnitUpperTriangular::from_rows_unchecked(rows))
        }
        Pretransform::Crc { polynomial } => {
            let (payload, crc) = crc_split(polynomial, info)?;
            let r = crc.len();
            let mut rows: Vec<BitVector> = UnitUpperTriangular::identity(len).into_rows();
            for (p, &j) in payload.iter().enumerate() {
                let mut msg = vec![0u8; payload.len()];
                msg[p] = 1;
                let parity = crc_register(polynomial, &msg);
                for (c, &pos) in crc.iter().enumerate() {
                    if (parity >> (r - 1 - c)) & 1 == 1 {
                        rows[j - 1].set(pos, true);
                    }
                }
            }
            Ok(UnitUpperTriangular::from_rows_unchecked(rows))
        }
        Pretransform::Random { density, seed } => {
            if !(*density > 0.0 && *density <= 1.0) {
                return Err(Error::Recipe(format!("density {density} not in (0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let rows = (1..=len)
                .map(|j| {
                    let mut row = BitVector::zeros(len);
                    row.set(j, true);
                    for i in j + 1..=len {
                        if rng.gen_bool(*density) {
                            row.set(i, true);
                        }
                    }
                    row
                })
                .collect();
            Ok(UnitUpperTriangular::from_rows_unchecked(rows))
        }
        Pretransform::Explicit(m) => {
            if m.size() != len {
                return Err(Error::LengthMismatch {
                    left: m.size(),
                    right: len,
                });
            }
            Ok(m.clone())
        }
    }
}

/// Splits sorted non-frozen positions into payload positions and the `r`
/// CRC positions (the `r` largest indices), `r = deg(polynomial)`.
pub fn crc_split(polynomial: &BitVector, info: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if polynomial.len() < 2 || !polynomial.get(1) {
        return Err(Error::Recipe(
            "CRC polynomial needs a leading 1 and degree >= 1".into(),
        ));
    }
    let r = polynomial.len() - 1;
    if r > 63 {
        return Err(Error::Recipe("CRC degree above 63".into()));
    }
    if r > info.len() {
        return Err(Error::Recipe(format!(
            "CRC degree {r} exceeds {} information positions",
            info.len()
        )));
    }
    let mut sorted = info.to_vec();
    sorted.sort_unstable();
    let crc = sorted.split_off(sorted.len() - r);
    Ok((sorted, crc))
}

/// CRC remainder of `msg(x) x^r mod g(x)` by a linear feedback shift
/// register; bit `r-1` of the result is the coefficient of `x^{r-1}`.
pub fn crc_register(polynomial: &BitVector, msg: &[u8]) -> u64 {
    let r = polynomial.len() - 1;
    let top = 1u64 << (r - 1);
    let mut feedback = 0u64;
    for k in 2..=polynomial.len() {
        if polynomial.get(k) {
            feedback |= 1 << (polynomial.len() - k);
        }
    }
    let mask = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    let mut reg = 0u64;
    for &b in msg {
        let fb = (b & 1 == 1) ^ (reg & top != 0);
        reg = (reg << 1) & mask;
        if fb {
            reg ^= feedback;
        }
    }
    reg
}

/// First violated invariant of a code description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("log2 length {0} not supported")]
    Level(u32),
    #[error("position {index} outside [1, {len}]")]
    OutOfRange { index: usize, len: usize },
    #[error("position {0} is both information and frozen")]
    Overlap(usize),
    #[error("position {0} is neither information nor frozen")]
    Uncovered(usize),
    #[error("position {0} listed twice")]
    Repeated(usize),
    #[error("information set has {found} positions, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix has {rows} rows of length {cols}, expected {len}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("matrix entry ({row}, {col}) below the diagonal is 1")]
    NotUpperTriangular { row: usize, col: usize },
    #[error("diagonal entry {0} is 0")]
    ZeroDiagonal(usize),
}

/// Unvalidated code description, as it might arrive from a user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParts {
    pub n: u32,
    pub k: usize,
    pub info_set: Vec<usize>,
    pub frozen_set: Vec<usize>,
    pub transform: Vec<BitVector>,
}

/// Checks every code invariant and reports the first one violated.
pub fn validate(parts: &CodeParts) -> std::result::Result<(), Violation> {
    if parts.n > MAX_LEVEL {
        return Err(Violation::Level(parts.n));
    }
    let len = 1usize << parts.n;
    let mut role = vec![0u8; len];
    for &i in &parts.info_set {
        if i == 0 || i > len {
            return Err(Violation::OutOfRange { index: i, len });
        }
        if role[i - 1] & 1 != 0 {
            return Err(Violation::Repeated(i));
        }
        role[i - 1] |= 1;
    }
    for &i in &parts.frozen_set {
        if i == 0 || i > len {
            return Err(Violation::OutOfRange { index: i, len });
        }
        if role[i - 1] & 2 != 0 {
            return Err(Violation::Repeated(i));
        }
        if role[i - 1] & 1 != 0 {
            return Err(Violation::Overlap(i));
        }
        role[i - 1] |= 2;
    }
    if let Some(i) = role.iter().position(|&r| r == 0) {
        return Err(Violation::Uncovered(i + 1));
    }
    if parts.info_set.len() != parts.k {
        return Err(Violation::Dimension {
            expected: parts.k,
            found: parts.info_set.len(),
        });
    }
    if parts.transform.len() != len {
        return Err(Violation::MatrixShape {
            rows: parts.transform.len(),
            cols: parts.transform.first().map_or(0, |r| r.len()),
            len,
        });
    }
    for (r, row) in parts.transform.iter().enumerate() {
        if row.len() != len {
            return Err(Violation::MatrixShape {
                rows: parts.transform.len(),
                cols: row.len(),
                len,
            });
        }
        let i = r + 1;
        if let Some(col) = row.ones().find(|&c| c < i) {
            return Err(Violation::NotUpperTriangular { row: i, col });
        }
        if !row.get(i) {
            return Err(Violation::ZeroDiagonal(i));
        }
    }
    Ok(())
}

/// A pre-transformed polar code: length `N = 2^n`, information set and a
/// unit upper-triangular pre-transformation `T`. Frozen bits carry 0.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeSpec {
    n: u32,
    info_set: Vec<usize>,
    info_mask: BitVector,
    transform: UnitUpperTriangular,
}

impl CodeSpec {
    /// Validated constructor; the frozen set is the complement of `info_set`.
    pub fn new(n: u32, info_set: Vec<usize>, transform: UnitUpperTriangular) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(Violation::Level(n).into());
        }
        let len = 1usize << n;
        let set: HashSet<usize> = info_set.iter().copied().collect();
        let frozen: Vec<usize> = (1..=len).filter(|i| !set.contains(i)).collect();
        let parts = CodeParts {
            n,
            k: info_set.len(),
            info_set,
            frozen_set: frozen,
            transform: transform.rows().to_vec(),
        };
        Self::try_from(parts)
    }

    /// Builds the code from an information set (all non-frozen positions
    /// for CRC recipes) and a recipe.
    pub fn from_recipe(n: u32, info_set: Vec<usize>, recipe: &Pretransform) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(Violation::Level(n).into());
        }
        let len = 1usize << n;
        let mut info = info_set;
        info.sort_unstable();
        let set: HashSet<usize> = info.iter().copied().collect();
        let frozen: Vec<usize> = (1..=len).filter(|i| !set.contains(i)).collect();
        let t = build_pretransform(recipe, len, &info, &frozen)?;
        if let Pretransform::Crc { polynomial } = recipe {
            let (payload, _) = crc_split(polynomial, &info)?;
            info = payload;
        }
        Self::new(n, info, t)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Block length `N`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension `K`.
    pub fn k(&self) -> usize {
        self.info_set.len()
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn frozen_set(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&i| !self.info_mask.get(i))
            .collect()
    }

    pub fn info_mask(&self) -> &BitVector {
        &self.info_mask
    }

    pub fn is_info(&self, i: usize) -> bool {
        self.info_mask.get(i)
    }

    pub fn transform(&self) -> &UnitUpperTriangular {
        &self.transform
    }

    /// Same information set, different pre-transformation.
    pub fn with_transform(&self, transform: UnitUpperTriangular) -> Result<Self> {
        if transform.size() != self.len() {
            return Err(Error::LengthMismatch {
                left: transform.size(),
                right: self.len(),
            });
        }
        Ok(Self {
            transform,
            ..self.clone()
        })
    }

    /// `u` with information bits taken from the low bits of `message`
    /// (bit `t` goes to the `t`-th information position).
    pub fn message_vector(&self, message: u128) -> BitVector {
        let mut u = BitVector::zeros(self.len());
        for (t, &i) in self.info_set.iter().enumerate() {
            if t < 128 && (message >> t) & 1 == 1 {
                u.set(i, true);
            }
        }
        u
    }
}

impl TryFrom<CodeParts> for CodeSpec {
    type Error = Error;

    fn try_from(parts: CodeParts) -> Result<Self> {
        validate(&parts)?;
        let len = 1usize << parts.n;
        let mut info_set = parts.info_set;
        info_set.sort_unstable();
        let info_mask = BitVector::from_positions(len, info_set.iter().copied())?;
        Ok(Self {
            n: parts.n,
            info_set,
            info_mask,
            transform: UnitUpperTriangular::from_rows_unchecked(parts.transform),
        })
    }
}

impl fmt::Debug for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CodeSpec")
            .field("n", &self.n)
            .field("k", &self.k())
            .field("info_set", &self.info_set)
            .field("transform", &self.transform)
            .finish()
    }
}
