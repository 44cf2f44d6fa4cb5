//! Equivalence classes under right multiplication by kernel shift matrices.
//!
//! Replacing `T` by `T · T(g_j)` cyclically shifts every generator row by
//! `j - 1` positions, so all `N` members of the class share one weight
//! distribution while their expanded information sets can differ in size.
//! The optimizer picks the member with the fewest expanded bits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::{CodeSpec, Pretransform};
use crate::error::Result;
use crate::expansion::{baseline_from_mask, expand_rows};
use crate::gf2::{BitVector, UnitUpperTriangular};
use crate::kernel::{kernel_row, kernel_shift_matrix};

/// Class member `j`: same information set, transform `T · T(g_j)`.
pub fn candidate(code: &CodeSpec, j: usize) -> Result<CodeSpec> {
    let t = code.transform().mul(&kernel_shift_matrix(code.n(), j)?)?;
    code.with_transform(t)
}

/// All `N` members, `j = 1..=N`, produced lazily. Member 1 is the input.
pub fn equivalence_class(code: &CodeSpec) -> impl Iterator<Item = CodeSpec> + '_ {
    (1..=code.len()).map(move |j| candidate(code, j).expect("valid class member"))
}

#[cfg(test)]
/// Rows of `T · T(g)`; row `i` is the truncated product of row `i` of `T`
/// with `g` as polynomials.
fn shifted_rows(t: &UnitUpperTriangular, g: &BitVector) -> Vec<BitVector> {
    t.rows()
        .iter()
        .map(|r| r.truncated_convolution(g).expect("equal lengths"))
        .collect()
}

/// Generator of `T` when `T` is a truncated Toeplitz (shift) matrix.
pub fn recover_memory(t: &UnitUpperTriangular) -> Option<BitVector> {
    let first = t.row(1);
    for i in 2..=t.size() {
        if t.row(i) != &first.shift_right(i - 1) {
            return None;
        }
    }
    Some(first.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    SmallestIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRecord {
    pub j: usize,
    pub lambda: usize,
    /// Generator of the candidate transform when it is Toeplitz.
    pub memory: Option<BitVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub candidates: Vec<CandidateRecord>,
    pub selected: usize,
    pub tie_break: TieBreak,
    /// Expansion size of the earlier deterministic method.
    pub baseline: usize,
}

impl EquivalenceReport {
    pub fn best(&self) -> &CandidateRecord {
        &self.candidates[self.selected - 1]
    }

    /// λ of the unmodified code (candidate 1).
    pub fn original_lambda(&self) -> usize {
        self.candidates[0].lambda
    }
}

/// λ of every class member, indexed by `j - 1`.
///
/// `g_j` is the product of `1 + x^(2^b)` over the bits `b` of `j - 1`, so a
/// depth-first walk over bit subsets reaches each member from its parent
/// with one shift-and-add per row.
fn class_lambdas(t: &UnitUpperTriangular, info: &BitVector) -> Vec<usize> {
    let n = t.size().trailing_zeros();
    let mut out = vec![0; t.size()];
    let mut rows = t.rows().to_vec();
    walk(&mut rows, info, n, 0, 0, &mut out);
    out
}

fn walk(
    rows: &mut [BitVector],
    info: &BitVector,
    n: u32,
    mask: usize,
    from: u32,
    out: &mut [usize],
) {
    out[mask] = expand_rows(rows, info, None).lambda();
    for b in from..n {
        let mut child = rows.to_vec();
        for r in &mut child {
            r.mul_binomial_assign(1 << b);
        }
        walk(&mut child, info, n, mask | 1 << b, b + 1, out);
    }
}

/// Computes λ for every class member and selects the smallest, ties to
/// the smallest `j`.
pub fn optimize_pretransform(code: &CodeSpec) -> EquivalenceReport {
    let t = code.transform();
    let lambdas = class_lambdas(t, code.info_mask());
    let generator = recover_memory(t);
    let candidates: Vec<CandidateRecord> = lambdas
        .into_iter()
        .enumerate()
        .map(|(m, lambda)| {
            let j = m + 1;
            let memory = generator.as_ref().map(|g| {
                g.truncated_convolution(&kernel_row(code.n(), j).expect("in range"))
                    .expect("equal lengths")
            });
            CandidateRecord { j, lambda, memory }
        })
        .collect();
    let selected = select(&candidates);
    EquivalenceReport {
        candidates,
        selected,
        tie_break: TieBreak::SmallestIndex,
        baseline: baseline_from_mask(code.info_mask()),
    }
}

fn select(candidates: &[CandidateRecord]) -> usize {
    candidates
        .iter()
        .min_by_key(|c| (c.lambda, c.j))
        .map(|c| c.j)
        .expect("at least one candidate")
}

/// One row of a reduction-ratio table.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionRow {
    pub k: usize,
    pub samples: usize,
    /// Baseline expansion size (fixed by the information set).
    pub baseline: usize,
    /// Codes whose own λ beats the baseline.
    pub reduced_plain: usize,
    /// Codes whose best class member beats the baseline.
    pub reduced_optimized: usize,
}

impl ReductionRow {
    pub fn r1(&self) -> f64 {
        self.reduced_plain as f64 / self.samples as f64
    }

    pub fn r2(&self) -> f64 {
        self.reduced_optimized as f64 / self.samples as f64
    }
}

/// Samples random pre-transformations for each information set and
/// counts how often λ (plain, and optimized over the class) falls strictly
/// below the baseline.
///
/// Sample seeds are drawn from a ChaCha8 stream seeded with `seed`, so the
/// table depends only on the inputs.
pub fn monte_carlo_reduction(
    density: f64,
    n: u32,
    info_sets: &[Vec<usize>],
    samples: usize,
    seed: u64,
) -> Result<Vec<ReductionRow>> {
    let len = 1usize << n;
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(info_sets.len());
    for info in info_sets {
        let seeds: Vec<u64> = (0..samples).map(|_| master.gen()).collect();
        let outcomes: Vec<(bool, bool)> = seeds
            .par_iter()
            .map(|&s| -> Result<(bool, bool)> {
                let recipe = Pretransform::Random { density, seed: s };
                let code = CodeSpec::from_recipe(n, info.clone(), &recipe)?;
                let baseline = baseline_from_mask(code.info_mask());
                let lambdas = class_lambdas(code.transform(), code.info_mask());
                let best = *lambdas.iter().min().expect("nonempty class");
                Ok((lambdas[0] < baseline, best < baseline))
            })
            .collect::<Result<_>>()?;
        let probe = CodeSpec::new(n, info.clone(), UnitUpperTriangular::identity(len))?;
        rows.push(ReductionRow {
            k: info.len(),
            samples,
            baseline: baseline_from_mask(probe.info_mask()),
            reduced_plain: outcomes.iter().filter(|o| o.0).count(),
            reduced_optimized: outcomes.iter().filter(|o| o.1).count(),
        });
    }
    Ok(rows)
}
