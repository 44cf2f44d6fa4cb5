mod common;

use common::{random_bits, random_code, rng, KINDS};
use polarwd::{
    brute_force_wd, candidate, compute_wd, equivalence_class, kernel_row, optimize_pretransform,
    polar_transform, BitVector, CodeSpec, OracleLimits, Pretransform, UnitUpperTriangular,
};
use rand::Rng;

#[test]
fn class_members_share_one_spectrum() {
    let mut r = rng(31);
    for sample in 0..60 {
        let n = r.gen_range(2..=5u32);
        let len = 1usize << n;
        let k = r.gen_range(1..=len.min(14));
        let code = random_code(&mut r, n, k, KINDS[sample % KINDS.len()]);
        let reference = compute_wd(&code).unwrap();
        for member in equivalence_class(&code) {
            assert_eq!(compute_wd(&member).unwrap(), reference, "{member:?}");
        }
        let j = r.gen_range(2..=len);
        let other = candidate(&code, j).unwrap();
        assert_eq!(
            brute_force_wd(&other, &OracleLimits::default()).unwrap(),
            reference
        );
    }
}

#[test]
fn generator_rows_shift_cyclically() {
    let mut r = rng(8);
    for _ in 0..20 {
        let n = r.gen_range(1..=5u32);
        let len = 1usize << n;
        let code = random_code(&mut r, n, len, "random");
        for j in 1..=len {
            let shifted = candidate(&code, j).unwrap();
            for i in 1..=len {
                let base = polar_transform(code.transform().row(i));
                let moved = polar_transform(shifted.transform().row(i));
                assert_eq!(moved, base.cyclic_shift(j - 1), "i={i} j={j}");
            }
        }
    }
}

#[test]
fn repeated_products_stay_in_the_class() {
    let mut r = rng(12);
    for _ in 0..10 {
        let code = random_code(&mut r, 4, 7, "random");
        let reference = compute_wd(&code).unwrap();
        let a = r.gen_range(1..=16);
        let b = r.gen_range(1..=16);
        let twice = candidate(&candidate(&code, a).unwrap(), b).unwrap();
        assert_eq!(compute_wd(&twice).unwrap(), reference);
        assert_eq!(
            brute_force_wd(&twice, &OracleLimits::default()).unwrap(),
            reference
        );
    }
}

#[test]
fn oracle_alone_confirms_invariance() {
    let mut r = rng(41);
    for _ in 0..15 {
        let code = random_code(&mut r, 3, 5, "explicit");
        let reference = brute_force_wd(&code, &OracleLimits::default()).unwrap();
        for j in 1..=8 {
            let m = candidate(&code, j).unwrap();
            assert_eq!(
                brute_force_wd(&m, &OracleLimits::default()).unwrap(),
                reference
            );
        }
    }
}

fn pac(memory: &BitVector, len: usize) -> UnitUpperTriangular {
    polarwd::build_pretransform(
        &Pretransform::Pac {
            memory: memory.clone(),
        },
        len,
        &[],
        &[],
    )
    .unwrap()
}

#[test]
fn pac_product_law() {
    for len in [1usize, 2, 4, 8] {
        for a in 0..(1u64 << (len - 1)) {
            for b in 0..(1u64 << (len - 1)) {
                let bits = |x: u64| {
                    BitVector::from_positions(
                        len,
                        std::iter::once(1)
                            .chain((1..len).filter(|p| x >> (p - 1) & 1 == 1).map(|p| p + 1)),
                    )
                    .unwrap()
                };
                let (ga, gb) = (bits(a), bits(b));
                let lhs = pac(&ga, len)
                    .mul(&UnitUpperTriangular::shift_matrix(&gb).unwrap())
                    .unwrap();
                assert_eq!(lhs, pac(&ga.truncated_convolution(&gb).unwrap(), len));
            }
        }
    }
    let mut r = rng(3);
    for _ in 0..2000 {
        let ga = random_bits(&mut r, 16, true);
        let gb = random_bits(&mut r, 16, true);
        let lhs = pac(&ga, 16)
            .mul(&UnitUpperTriangular::shift_matrix(&gb).unwrap())
            .unwrap();
        assert_eq!(lhs, pac(&ga.truncated_convolution(&gb).unwrap(), 16));
    }
}

#[test]
fn optimizer_never_worse_than_input() {
    let mut r = rng(19);
    for sample in 0..40 {
        let n = r.gen_range(2..=6u32);
        let len = 1usize << n;
        let k = r.gen_range(0..=len);
        let code = random_code(&mut r, n, k, KINDS[sample % KINDS.len()]);
        let report = optimize_pretransform(&code);
        assert_eq!(report.candidates.len(), len);
        assert!(report.best().lambda <= report.original_lambda());
    }
}

#[test]
fn identity_class_contains_kernel_shift_matrices() {
    let code = CodeSpec::new(3, vec![4, 6, 7, 8], UnitUpperTriangular::identity(8)).unwrap();
    for j in 1..=8 {
        let m = candidate(&code, j).unwrap();
        assert_eq!(m.transform().row(1), &kernel_row(3, j).unwrap());
    }
}
