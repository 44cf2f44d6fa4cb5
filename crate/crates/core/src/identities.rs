//! Executable kernel identities.
//!
//! Each check runs exhaustively up to level 6 (8 for the matrix-level
//! checks) and on random `(i, j)` samples above that. A failing check keeps
//! its first counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::{BitVector, UnitUpperTriangular};
use crate::kernel::{basis_expansion, kernel_row, kronecker_power, lemma1_row_sum};

const EXHAUSTIVE_LEVEL: u32 = 6;
const MATRIX_LEVEL: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestOptions {
    /// Highest level checked.
    pub max_n: u32,
    /// Random `(i, j)` pairs per level above the exhaustive range.
    pub samples: usize,
    pub seed: u64,
    /// Deliberately corrupts the row-sum check (harness testing).
    pub inject_fault: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        Self {
            max_n: 10,
            samples: 10_000,
            seed: 1,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

struct Tally {
    name: &'static str,
    cases: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn done(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// `(i, j)` pairs to check at level `n`: all pairs up to the exhaustive
/// level, random pairs above it.
fn index_pairs(n: u32, opts: &SelftestOptions, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let len = 1usize << n;
    if n <= EXHAUSTIVE_LEVEL {
        (1..=len)
            .flat_map(|i| (1..=len).map(move |j| (i, j)))
            .collect()
    } else {
        (0..opts.samples)
            .map(|_| (rng.gen_range(1..=len), rng.gen_range(1..=len)))
            .collect()
    }
}

fn self_inverse(max_n: u32) -> CheckResult {
    let mut t = Tally::new("self-inverse");
    for n in 0..=max_n.min(MATRIX_LEVEL) {
        let g = kronecker_power(n).expect("level in range");
        let len = g.len();
        for (r, row) in g.iter().enumerate() {
            let mut prod = BitVector::zeros(len);
            for k in row.ones() {
                prod ^= &g[k - 1];
            }
            let expected = BitVector::unit(len, r + 1).expect("in range");
            t.record(prod == expected, || {
                format!("n={n}: row {} of K·K is {prod}", r + 1)
            });
        }
    }
    t.done()
}

fn closed_form(max_n: u32) -> CheckResult {
    let mut t = Tally::new("closed-form rows");
    for n in 0..=max_n.min(MATRIX_LEVEL) {
        let g = kronecker_power(n).expect("level in range");
        for (r, row) in g.iter().enumerate() {
            let fast = kernel_row(n, r + 1).expect("in range");
            t.record(&fast == row, || {
                format!("n={n} i={}: closed form {fast}, Kronecker {row}", r + 1)
            });
        }
    }
    t.done()
}

fn basis_sum(max_n: u32, opts: &SelftestOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut t = Tally::new("row sums give unit vectors");
    for n in 0..=max_n {
        let len = 1usize << n;
        let rows: Vec<usize> = if n <= EXHAUSTIVE_LEVEL {
            (1..=len).collect()
        } else {
            (0..opts.samples).map(|_| rng.gen_range(1..=len)).collect()
        };
        for i in rows {
            let mut acc = BitVector::zeros(len);
            for j in basis_expansion(n, i).expect("in range") {
                acc ^= &kernel_row(n, j).expect("in range");
            }
            let ok = acc == BitVector::unit(len, i).expect("in range");
            t.record(ok, || format!("n={n} i={i}: sum is {acc}"));
        }
    }
    t.done()
}

fn convolution_law(max_n: u32, opts: &SelftestOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut t = Tally::new("row convolution");
    for n in 0..=max_n {
        let len = 1usize << n;
        for (i, j) in index_pairs(n, opts, rng) {
            let k = i + j - 1;
            if k > len {
                continue;
            }
            let gi = kernel_row(n, i).expect("in range");
            let gj = kernel_row(n, j).expect("in range");
            let prod = gi.truncated_convolution(&gj).expect("equal lengths");
            let gk = kernel_row(n, k).expect("in range");
            t.record(prod == gk, || {
                format!("n={n} i={i} j={j}: got {prod}, want g_{k}")
            });
        }
    }
    t.done()
}

fn shifted_row_sums(
    max_n: u32,
    opts: &SelftestOptions,
    rng: &mut ChaCha8Rng,
) -> (CheckResult, CheckResult) {
    let mut inside = Tally::new("row-sum shift (no wrap)");
    let mut wrapped = Tally::new("row-sum shift (wrap)");
    for n in 0..=max_n {
        let len = 1usize << n;
        for (i, j) in index_pairs(n, opts, rng) {
            let lhs = lemma1_row_sum(n, i, j).expect("in range");
            let shift = if opts.inject_fault { j } else { j - 1 };
            let rhs = kernel_row(n, i).expect("in range").cyclic_shift(shift);
            let tally = if j <= len + 1 - i {
                &mut inside
            } else {
                &mut wrapped
            };
            tally.record(lhs == rhs, || {
                format!("n={n} i={i} j={j}: sum {lhs}, shifted row {rhs}")
            });
        }
    }
    (inside.done(), wrapped.done())
}

/// `T(a) T(b) = T(a ⊛ b)` over every unit-leading pair at each length.
fn shift_product_law(max_n: u32) -> CheckResult {
    let mut t = Tally::new("shift-matrix product");
    let max_len = 1usize << max_n.min(3);
    for len in 1..=max_len {
        let half = 1u64 << (len - 1);
        let vec_of = |bits: u64| {
            BitVector::from_positions(len, (0..len).filter(|p| bits >> p & 1 == 1).map(|p| p + 1))
                .expect("in range")
        };
        let mats: Vec<(BitVector, UnitUpperTriangular)> = (0..half)
            .map(|tail| {
                let g = vec_of(1 | tail << 1);
                let m = UnitUpperTriangular::shift_matrix(&g).expect("leading one");
                (g, m)
            })
            .collect();
        for (a, ma) in &mats {
            for (b, mb) in &mats {
                let prod = ma.mul(mb).expect("same size");
                let c = a.truncated_convolution(b).expect("same size");
                let expected = UnitUpperTriangular::shift_matrix(&c).expect("leading one");
                t.record(prod == expected, || format!("N={len} a={a} b={b}"));
            }
        }
    }
    t.done()
}

/// Runs every identity check.
pub fn run_selftest(opts: &SelftestOptions) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let max_n = opts.max_n;
    let (inside, wrapped) = shifted_row_sums(max_n, opts, &mut rng);
    SelftestReport {
        checks: vec![
            self_inverse(max_n),
            closed_form(max_n),
            basis_sum(max_n, opts, &mut rng),
            convolution_law(max_n, opts, &mut rng),
            inside,
            wrapped,
            shift_product_law(max_n),
        ],
    }
}
