//! Expansion-size tables at `N = 128` (and the random ensemble at any `N`).

use crate::code::{build_info_set, CodeSpec, Pretransform, ReliabilitySequence};
use crate::equivalence::{monte_carlo_reduction, optimize_pretransform, ReductionRow};
use crate::error::Result;
use crate::expansion::{baseline_expansion_size, expanded_information_set};
use crate::gf2::BitVector;

pub const TABLE1_KS: [usize; 9] = [12, 25, 38, 51, 64, 76, 89, 102, 115];
pub const TABLE1_TAPS: [usize; 3] = [3, 5, 6];
pub const TABLE3_KS: [usize; 8] = [25, 38, 51, 64, 76, 89, 102, 115];
pub const TABLE3_MEMORY: &str = "10101011";
pub const TABLE_LEVEL: u32 = 7;

/// `N = 128` rows of Table 2 and the matching `N = 256` rows.
pub const TABLE2_KS_128: [usize; 8] = [25, 38, 51, 64, 76, 89, 102, 115];
pub const TABLE2_KS_256: [usize; 8] = [51, 76, 102, 128, 153, 179, 204, 230];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRow {
    pub k: usize,
    /// Baseline size.
    pub n1: usize,
    /// λ of the code as given.
    pub n2: usize,
    /// Best λ over the equivalence class.
    pub n3: usize,
    /// Selected class index.
    pub j: usize,
    /// Generator of the selected transform when it is Toeplitz.
    pub memory: Option<BitVector>,
}

/// Builds `(n1, n2, n3)` for one code.
pub fn expansion_row(code: &CodeSpec) -> ExpansionRow {
    let report = optimize_pretransform(code);
    let best = report.best();
    ExpansionRow {
        k: code.k(),
        n1: baseline_expansion_size(code),
        n2: expanded_information_set(code).lambda(),
        n3: best.lambda,
        j: best.j,
        memory: best.memory.clone(),
    }
}

fn rows_for(
    seq: &ReliabilitySequence,
    ks: &[usize],
    recipe: &Pretransform,
) -> Result<Vec<ExpansionRow>> {
    let len = 1usize << TABLE_LEVEL;
    ks.iter()
        .map(|&k| {
            let (info, _) = build_info_set(seq, len, k)?;
            Ok(expansion_row(&CodeSpec::from_recipe(
                TABLE_LEVEL,
                info,
                recipe,
            )?))
        })
        .collect()
}

/// PC-polar codes with taps `{3, 5, 6}`. `positions = None` makes every
/// frozen bit a parity bit.
pub fn table1(
    seq: &ReliabilitySequence,
    positions: Option<Vec<usize>>,
) -> Result<Vec<ExpansionRow>> {
    let recipe = Pretransform::ParityCheck {
        taps: TABLE1_TAPS.to_vec(),
        positions,
    };
    rows_for(seq, &TABLE1_KS, &recipe)
}

/// PAC codes with memory `10101011`.
pub fn table3(seq: &ReliabilitySequence) -> Result<Vec<ExpansionRow>> {
    let recipe = Pretransform::Pac {
        memory: TABLE3_MEMORY.parse().expect("valid bit string"),
    };
    rows_for(seq, &TABLE3_KS, &recipe)
}

/// Random-ensemble reduction ratios at level `n`.
pub fn table2(
    seq: &ReliabilitySequence,
    n: u32,
    ks: &[usize],
    samples: usize,
    density: f64,
    seed: u64,
) -> Result<Vec<ReductionRow>> {
    let len = 1usize << n;
    let info_sets = ks
        .iter()
        .map(|&k| build_info_set(seq, len, k).map(|(info, _)| info))
        .collect::<Result<Vec<_>>>()?;
    monte_carlo_reduction(density, n, &info_sets, samples, seed)
}

/// Default `K` list for [`table2`] at level `n`: the published rows at
/// 128 and 256, otherwise nine evenly spaced rates.
pub fn table2_default_ks(n: u32) -> Vec<usize> {
    match n {
        7 => TABLE2_KS_128.to_vec(),
        8 => TABLE2_KS_256.to_vec(),
        _ => {
            let len = 1usize << n;
            (1..=9)
                .map(|t| (len * t + 5) / 10)
                .filter(|&k| k > 0)
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table3_values() {
        let rows = table3(&ReliabilitySequence::nr()).unwrap();
        let got: Vec<(usize, usize, usize, usize)> =
            rows.iter().map(|r| (r.k, r.n1, r.n2, r.n3)).collect();
        assert_eq!(
            got,
            vec![
                (25, 13, 13, 11),
                (38, 24, 24, 20),
                (51, 29, 29, 27),
                (64, 34, 34, 30),
                (76, 46, 46, 42),
                (89, 43, 43, 39),
                (102, 42, 42, 40),
                (115, 53, 53, 49),
            ]
        );
        for r in &rows {
            assert_eq!(r.memory.as_ref().unwrap().trimmed(), "1000000111");
        }
    }

    #[test]
    fn table1_baseline_column() {
        let rows = table1(&ReliabilitySequence::nr(), None).unwrap();
        let n1: Vec<usize> = rows.iter().map(|r| r.n1).collect();
        assert_eq!(n1, vec![6, 13, 24, 29, 34, 46, 43, 42, 53]);
        assert!(rows.iter().all(|r| r.n2 <= r.n1 && r.n3 <= r.n2));
    }

    #[test]
    fn default_ks() {
        assert_eq!(table2_default_ks(7), TABLE2_KS_128);
        assert_eq!(table2_default_ks(6).len(), 9);
    }
}
