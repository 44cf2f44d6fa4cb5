//! Exact weight distributions by parity-consistent decomposition.
//!
//! A polar coset of length `2^n` is described by which positions of
//! `v` are fixed and their values. When every pair `(v_{2m-1}, v_{2m})` is
//! either fixed or free, the coset factors into two cosets of length
//! `2^{n-1}` (values `v_{2m-1} ⊕ v_{2m}` and `v_{2m}` at fixed pairs) whose
//! codewords interleave, so their spectra convolve. Mixed pairs are
//! resolved by enumerating the free member.
//!
//! For a pre-transformed code, enumerating the expanded information set
//! turns the code into a disjoint union of such cosets, which is what
//! [`compute_wd`] sums.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::expansion::{expanded_information_set, ExpansionResult};
use crate::gf2::BitVector;
use crate::kernel::polar_transform;

/// Codeword counts indexed by Hamming weight `0..=N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    /// All-zero distribution for block length `len`.
    pub fn zeros(len: usize) -> Self {
        Self {
            counts: vec![BigUint::zero(); len + 1],
        }
    }

    /// A single codeword of weight `w`.
    pub fn unit(len: usize, w: usize) -> Self {
        let mut d = Self::zeros(len);
        d.counts[w] = BigUint::one();
        d
    }

    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        assert!(!counts.is_empty(), "a distribution has at least one entry");
        Self { counts }
    }

    /// Block length `N`.
    pub fn block_len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    /// Total number of codewords.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `(weight, count)` for every nonzero count.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Smallest nonzero weight, if any nonzero codeword exists.
    pub fn min_distance(&self) -> Option<usize> {
        self.nonzero().map(|(w, _)| w).find(|&w| w > 0)
    }

    pub fn add_assign(&mut self, other: &WeightDistribution) {
        assert_eq!(self.counts.len(), other.counts.len());
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.nonzero().map(|(w, c)| (w, c.to_string())))
            .finish()
    }
}

/// `c[w] = Σ_{i+j=w} a[i] b[j]`.
pub fn wd_convolve(a: &WeightDistribution, b: &WeightDistribution) -> WeightDistribution {
    let mut out = vec![BigUint::zero(); a.counts.len() + b.counts.len() - 1];
    for (i, x) in a.nonzero() {
        for (j, y) in b.nonzero() {
            out[i + j] += x * y;
        }
    }
    WeightDistribution { counts: out }
}

/// Exact counter used inside the recursion.
///
/// `u128` is used whenever the total mass `2^K` fits; otherwise `BigUint`.
pub trait Count: Clone + Send + Sync + fmt::Debug + 'static {
    fn nil() -> Self;
    fn from_u64(x: u64) -> Self;
    fn is_nil(&self) -> bool;
    fn add_ref(&mut self, other: &Self);
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);
    fn to_big(&self) -> BigUint;
}

impl Count for u128 {
    fn nil() -> Self {
        0
    }
    fn from_u64(x: u64) -> Self {
        x as u128
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_ref(&mut self, other: &Self) {
        *self += *other;
    }
    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Count for BigUint {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_u64(x: u64) -> Self {
        BigUint::from(x)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

/// A polar coset `{ v K_2^{⊗n} : v agrees with `values` on `mask` }`.
///
/// Values outside the mask are always zero, so structurally equal cosets
/// compare and hash equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolarCosetSpec {
    level: u32,
    mask: BitVector,
    values: BitVector,
}

impl PolarCosetSpec {
    /// Canonicalizing constructor: value bits outside `mask` are cleared.
    pub fn new(level: u32, mask: BitVector, values: BitVector) -> Result<Self> {
        let len = 1usize << level;
        for v in [&mask, &values] {
            if v.len() != len {
                return Err(Error::LengthMismatch {
                    left: v.len(),
                    right: len,
                });
            }
        }
        let values = &values & &mask;
        Ok(Self {
            level,
            mask,
            values,
        })
    }

    /// The whole space `{0,1}^{2^level}`.
    pub fn all_free(level: u32) -> Self {
        let len = 1usize << level;
        Self {
            level,
            mask: BitVector::zeros(len),
            values: BitVector::zeros(len),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        1 << self.level
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self) -> &BitVector {
        &self.mask
    }

    pub fn values(&self) -> &BitVector {
        &self.values
    }

    /// Number of free positions.
    pub fn free_count(&self) -> usize {
        self.len() - self.mask.weight()
    }

    /// Free members of pairs whose couple is fixed, ascending.
    pub fn local_expansion(&self) -> Vec<usize> {
        if self.level == 0 {
            return Vec::new();
        }
        let (odd, even) = self.mask.deinterleave();
        (&odd ^ &even)
            .ones()
            .map(|m| if odd.get(m) { 2 * m } else { 2 * m - 1 })
            .collect()
    }
}

impl fmt::Debug for PolarCosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.len())
            .map(|i| match (self.mask.get(i), self.values.get(i)) {
                (false, _) => '*',
                (true, false) => '0',
                (true, true) => '1',
            })
            .collect();
        write!(f, "Coset[{s}]")
    }
}

/// Canonical byte encoding of a coset: level, then mask words, then value
/// words, little-endian.
pub fn cache_key(spec: &PolarCosetSpec) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 16 * spec.mask.words().len());
    out.push(spec.level as u8);
    for w in spec.mask.words().iter().chain(spec.values.words()) {
        out.extend_from_slice(&w.to_le_bytes());
    }
    out
}

/// Fixes the given `(position, bit)` pairs and splits into the two
/// half-length component cosets.
pub fn split_coset(
    spec: &PolarCosetSpec,
    assignment: &[(usize, bool)],
) -> Result<(PolarCosetSpec, PolarCosetSpec)> {
    if spec.level == 0 {
        return Err(Error::LevelTooLarge(0));
    }
    let mut mask = spec.mask.clone();
    let mut values = spec.values.clone();
    for &(i, bit) in assignment {
        if i == 0 || i > spec.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: spec.len(),
            });
        }
        mask.set(i, true);
        values.set(i, bit);
    }
    let (mo, me) = mask.deinterleave();
    if let Some(m) = (&mo ^ &me).ones().next() {
        return Err(Error::MixedPair(m));
    }
    let (vo, ve) = values.deinterleave();
    let level = spec.level - 1;
    Ok((
        PolarCosetSpec {
            level,
            mask: mo.clone(),
            values: &vo ^ &ve,
        },
        PolarCosetSpec {
            level,
            mask: mo,
            values: ve,
        },
    ))
}

/// Tuning knobs for the engine. None of them changes results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub use_cache: bool,
    /// Cosets at or below this level are enumerated directly.
    pub leaf_level: u32,
    /// Largest λ accepted before refusing to enumerate `2^λ` cosets.
    pub lambda_limit: usize,
    /// Worker threads; 0 uses the global rayon pool size.
    pub workers: usize,
    /// Maximum memo entries per worker; insertion stops once reached.
    pub cache_capacity: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            use_cache: true,
            leaf_level: 2,
            lambda_limit: 30,
            workers: 0,
            cache_capacity: 1 << 18,
        }
    }
}

/// Counters reported alongside a computed spectrum.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WdStats {
    pub lambda: usize,
    pub cosets: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub cache_entries: u64,
}

impl WdStats {
    pub fn hit_rate(&self) -> f64 {
        let total = self.cache_hits + self.cache_misses;
        if total == 0 {
            0.0
        } else {
            self.cache_hits as f64 / total as f64
        }
    }
}

type Spectrum<C> = Vec<C>;

/// Memo table for coset spectra, plus the recursion that fills it.
pub struct CosetCache<C: Count = BigUint> {
    map: HashMap<PolarCosetSpec, Arc<Spectrum<C>>>,
    enabled: bool,
    capacity: usize,
    leaf_level: u32,
    hits: u64,
    misses: u64,
}

impl<C: Count> CosetCache<C> {
    pub fn new(config: &EngineConfig) -> Self {
        Self {
            map: HashMap::new(),
            enabled: config.use_cache,
            capacity: config.cache_capacity,
            leaf_level: config.leaf_level,
            hits: 0,
            misses: 0,
        }
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn entries(&self) -> usize {
        self.map.len()
    }

    fn spectrum(&mut self, spec: &PolarCosetSpec) -> Arc<Spectrum<C>> {
        if self.enabled {
            if let Some(s) = self.map.get(spec) {
                self.hits += 1;
                return Arc::clone(s);
            }
            self.misses += 1;
        }
        let s = Arc::new(self.compute(spec));
        if self.enabled && self.map.len() < self.capacity {
            self.map.insert(spec.clone(), Arc::clone(&s));
        }
        s
    }

    fn compute(&mut self, spec: &PolarCosetSpec) -> Spectrum<C> {
        let len = spec.len();
        let free = spec.free_count();
        if free == 0 {
            return unit(len, polar_transform(&spec.values).weight());
        }
        if free == len {
            return binomial(len);
        }
        if spec.level <= self.leaf_level || free <= 4 {
            return enumerate_coset(spec);
        }
        let rho = spec.local_expansion();
        assert!(rho.len() < 64, "local expansion of {} bits", rho.len());
        let (mo, me) = spec.mask.deinterleave();
        let child_mask = &mo | &me;
        let (vo, ve) = spec.values.deinterleave();
        let mut acc = PairAccumulator::new(spec.level - 1, child_mask);
        let mut c1 = &vo ^ &ve;
        let mut c2 = ve;
        // Pair index touched by each local bit, and whether it is the even member.
        let toggles: Vec<(usize, bool)> =
            rho.iter().map(|&i| (i.div_ceil(2), i % 2 == 0)).collect();
        let count = 1u64 << rho.len();
        acc.push(self, &c1, &c2);
        for idx in 1..count {
            let (m, even) = toggles[idx.trailing_zeros() as usize];
            c1.toggle(m);
            if even {
                c2.toggle(m);
            }
            acc.push(self, &c1, &c2);
        }
        acc.finish(self)
    }
}

/// Groups child pairs by their first component so that each distinct
/// first child is convolved once against the sum of its partners.
struct PairAccumulator<C: Count> {
    level: u32,
    mask: BitVector,
    groups: HashMap<BitVector, Spectrum<C>>,
    total: Spectrum<C>,
    pushes: u64,
}

const GROUP_LIMIT: usize = 4096;

impl<C: Count> PairAccumulator<C> {
    fn new(level: u32, mask: BitVector) -> Self {
        Self {
            level,
            mask,
            groups: HashMap::new(),
            total: vec![C::nil(); (2usize << level) + 1],
            pushes: 0,
        }
    }

    fn child(&self, values: &BitVector) -> PolarCosetSpec {
        PolarCosetSpec {
            level: self.level,
            mask: self.mask.clone(),
            values: values.clone(),
        }
    }

    fn push(&mut self, cache: &mut CosetCache<C>, c1: &BitVector, c2: &BitVector) {
        self.pushes += 1;
        let s2 = cache.spectrum(&self.child(c2));
        match self.groups.get_mut(c1) {
            Some(acc) => {
                for (a, b) in acc.iter_mut().zip(s2.iter()) {
                    a.add_ref(b);
                }
            }
            None => {
                self.groups.insert(c1.clone(), s2.as_ref().clone());
                if self.groups.len() >= GROUP_LIMIT {
                    self.flush(cache);
                }
            }
        }
    }

    fn flush(&mut self, cache: &mut CosetCache<C>) {
        let mut groups: Vec<_> = self.groups.drain().collect();
        groups.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        for (c1, partner) in groups {
            let s1 = cache.spectrum(&self.child(&c1));
            convolve_into(&mut self.total, &s1, &partner);
        }
    }

    fn finish(mut self, cache: &mut CosetCache<C>) -> Spectrum<C> {
        self.flush(cache);
        self.total
    }
}

fn convolve_into<C: Count>(out: &mut [C], a: &[C], b: &[C]) {
    let nz_b: Vec<(usize, &C)> = b.iter().enumerate().filter(|(_, c)| !c.is_nil()).collect();
    for (i, x) in a.iter().enumerate() {
        if x.is_nil() {
            continue;
        }
        for &(j, y) in &nz_b {
            out[i + j].add_product(x, y);
        }
    }
}

fn unit<C: Count>(len: usize, w: usize) -> Spectrum<C> {
    let mut s = vec![C::nil(); len + 1];
    s[w] = C::from_u64(1);
    s
}

fn binomial<C: Count>(len: usize) -> Spectrum<C> {
    let mut row = vec![C::nil(); len + 1];
    row[0] = C::from_u64(1);
    for r in 1..=len {
        for w in (1..=r).rev() {
            let prev = row[w - 1].clone();
            row[w].add_ref(&prev);
        }
    }
    row
}

fn enumerate_coset<C: Count>(spec: &PolarCosetSpec) -> Spectrum<C> {
    let free: Vec<usize> = spec.mask.complement().ones().collect();
    let mut counts = vec![0u64; spec.len() + 1];
    let mut v = spec.values.clone();
    counts[polar_transform(&v).weight()] += 1;
    for idx in 1..(1u64 << free.len()) {
        v.toggle(free[idx.trailing_zeros() as usize]);
        counts[polar_transform(&v).weight()] += 1;
    }
    counts.into_iter().map(C::from_u64).collect()
}

fn to_distribution<C: Count>(s: &[C]) -> WeightDistribution {
    WeightDistribution {
        counts: s.iter().map(Count::to_big).collect(),
    }
}

/// Exact spectrum of a polar coset.
pub fn polar_coset_wd(spec: &PolarCosetSpec, cache: &mut CosetCache) -> WeightDistribution {
    to_distribution(&cache.spectrum(spec))
}

/// Expanded positions paired with their bits, in ascending position order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetAssignment {
    positions: Vec<usize>,
    bits: Vec<bool>,
}

impl CosetAssignment {
    pub fn new(exp: &ExpansionResult, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != exp.lambda() {
            return Err(Error::AssignmentArity {
                expected: exp.lambda(),
                got: bits.len(),
            });
        }
        Ok(Self {
            positions: exp.expanded().to_vec(),
            bits,
        })
    }

    /// Bit `t` of `index` goes to the `t`-th expanded position.
    pub fn from_index(exp: &ExpansionResult, index: u64) -> Self {
        let bits = (0..exp.lambda())
            .map(|t| t < 64 && (index >> t) & 1 == 1)
            .collect();
        Self {
            positions: exp.expanded().to_vec(),
            bits,
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// `v` at the fixed positions of a coset, evaluated position by position
/// from `v_i = u_i ⊕ Σ_{j<i, T_{j,i}=1} u_j`. Free positions are left 0.
pub fn v_values(
    code: &CodeSpec,
    exp: &ExpansionResult,
    assignment: &CosetAssignment,
) -> Result<BitVector> {
    if assignment.positions() != exp.expanded() {
        return Err(Error::AssignmentArity {
            expected: exp.lambda(),
            got: assignment.positions().len(),
        });
    }
    let len = code.len();
    let mut u = BitVector::zeros(len);
    for (&p, &b) in assignment.positions.iter().zip(&assignment.bits) {
        u.set(p, b);
    }
    let t = code.transform();
    let mut v = BitVector::zeros(len);
    for i in exp.fixed_mask().ones() {
        let mut bit = u.get(i);
        for j in 1..i {
            if t.get(j, i) {
                if exp.free_mask().get(j) {
                    return Err(Error::ClosureViolated { free: j, fixed: i });
                }
                bit ^= u.get(j);
            }
        }
        v.set(i, bit);
    }
    Ok(v)
}

/// Exact weight distribution with the default configuration.
pub fn compute_wd(code: &CodeSpec) -> Result<WeightDistribution> {
    compute_wd_with(code, &EngineConfig::default()).map(|(wd, _)| wd)
}

/// Exact weight distribution: sum over all `2^λ` cosets of the expanded
/// information set, each split into its two component cosets.
pub fn compute_wd_with(
    code: &CodeSpec,
    config: &EngineConfig,
) -> Result<(WeightDistribution, WdStats)> {
    let exp = expanded_information_set(code);
    let limit = config.lambda_limit.min(62);
    if exp.lambda() > limit {
        return Err(Error::LambdaLimit {
            lambda: exp.lambda(),
            limit,
        });
    }
    if code.k() < 127 {
        run::<u128>(code, &exp, config)
    } else {
        run::<BigUint>(code, &exp, config)
    }
}

fn run<C: Count>(
    code: &CodeSpec,
    exp: &ExpansionResult,
    config: &EngineConfig,
) -> Result<(WeightDistribution, WdStats)> {
    let len = code.len();
    let total_cosets = 1u64 << exp.lambda();
    let mut stats = WdStats {
        lambda: exp.lambda(),
        cosets: total_cosets,
        ..Default::default()
    };

    if code.n() == 0 {
        let mut cache = CosetCache::<C>::new(config);
        let spec = PolarCosetSpec::new(0, exp.fixed_mask().clone(), BitVector::zeros(1))?;
        let s = cache.spectrum(&spec);
        return Ok((to_distribution(&s), stats));
    }

    // Per expanded bit: its row of T restricted to the fixed positions,
    // already folded into the two component value vectors.
    let deltas: Vec<(BitVector, BitVector)> = exp
        .expanded()
        .iter()
        .map(|&p| {
            let row = code.transform().row(p) & exp.fixed_mask();
            let (o, e) = row.deinterleave();
            (&o ^ &e, e)
        })
        .collect();
    let child_mask = BitVector::from_positions(len / 2, exp.fixed_pairs().iter().copied())?;

    let workers = if config.workers == 0 {
        rayon::current_num_threads()
    } else {
        config.workers
    };
    let chunks = (workers as u64).clamp(1, total_cosets);
    let bounds: Vec<(u64, u64)> = (0..chunks)
        .map(|c| (total_cosets * c / chunks, total_cosets * (c + 1) / chunks))
        .collect();

    let work = |&(lo, hi): &(u64, u64)| {
        let mut cache = CosetCache::<C>::new(config);
        let mut acc = PairAccumulator::new(code.n() - 1, child_mask.clone());
        let gray = lo ^ (lo >> 1);
        let mut c1 = BitVector::zeros(len / 2);
        let mut c2 = BitVector::zeros(len / 2);
        for (t, (d1, d2)) in deltas.iter().enumerate() {
            if (gray >> t) & 1 == 1 {
                c1 ^= d1;
                c2 ^= d2;
            }
        }
        acc.push(&mut cache, &c1, &c2);
        for idx in lo + 1..hi {
            let (d1, d2) = &deltas[idx.trailing_zeros() as usize];
            c1 ^= d1;
            c2 ^= d2;
            acc.push(&mut cache, &c1, &c2);
        }
        let total = acc.finish(&mut cache);
        (total, cache.hits, cache.misses, cache.entries() as u64)
    };

    let parts: Vec<_> = if chunks == 1 {
        bounds.iter().map(work).collect()
    } else if config.workers == 0 {
        bounds.par_iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| bounds.par_iter().map(work).collect())
    };

    let mut total = vec![C::nil(); len + 1];
    for (part, hits, misses, entries) in parts {
        for (a, b) in total.iter_mut().zip(&part) {
            a.add_ref(b);
        }
        stats.cache_hits += hits;
        stats.cache_misses += misses;
        stats.cache_entries += entries;
    }
    Ok((to_distribution(&total), stats))
}

/// `2^k` as a big integer.
pub fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}
