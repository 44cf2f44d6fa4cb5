mod common;

use common::{random_code, rng, KINDS};
use polarwd::expansion::{check_closure, expand_rows};
use polarwd::{engine::v_values, expanded_information_set, BitVector, CodeSpec, CosetAssignment};
use proptest::prelude::*;
use rand::Rng;

/// Closure by chaotic iteration: apply any enabled rule until none is.
fn chaotic_closure(code: &CodeSpec) -> Vec<usize> {
    let len = code.len();
    let t = code.transform();
    let mut fixed: Vec<bool> = (1..=len).map(|i| !code.is_info(i)).collect();
    loop {
        let mut changed = false;
        for i in (1..=len).filter(|&i| i % 3 == 0).chain(1..=len) {
            if !fixed[i - 1] {
                continue;
            }
            for j in 1..i {
                if t.get(j, i) && !fixed[j - 1] {
                    fixed[j - 1] = true;
                    changed = true;
                }
            }
            let c = if i % 2 == 0 { i - 1 } else { i + 1 };
            if !fixed[c - 1] {
                fixed[c - 1] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (1..=len)
        .filter(|&i| fixed[i - 1] && code.is_info(i))
        .collect()
}

fn arb_code() -> impl Strategy<Value = CodeSpec> {
    (1u32..=6, any::<u64>(), 0usize..KINDS.len(), 0.0f64..=1.0).prop_map(|(n, seed, kind, rate)| {
        let mut r = rng(seed);
        let len = 1usize << n;
        let k = ((len as f64) * rate).round() as usize;
        random_code(&mut r, n, k, KINDS[kind])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fixpoint_is_stable(code in arb_code()) {
        let e = expanded_information_set(&code);
        let seed = BitVector::from_positions(code.len(), e.expanded().iter().copied()).unwrap();
        let again = expand_rows(code.transform().rows(), code.info_mask(), Some(&seed));
        prop_assert_eq!(again, e);
    }

    #[test]
    fn scan_order_does_not_matter(code in arb_code()) {
        let e = expanded_information_set(&code);
        prop_assert_eq!(e.expanded().to_vec(), chaotic_closure(&code));
    }

    #[test]
    fn structure_of_result(code in arb_code()) {
        let e = expanded_information_set(&code);
        prop_assert!(e.lambda() <= code.k());
        check_closure(&code, &e).unwrap();
        prop_assert_eq!(e.fixed_pairs().len() + e.free_pairs().len(), code.len() / 2);
        prop_assert!(e.expanded().iter().all(|&p| code.is_info(p)));
        let mut union = e.fixed_mask().clone();
        union ^= e.free_mask();
        prop_assert!(union.weight() == code.len() && !e.fixed_mask().intersects(e.free_mask()));
    }
}

/// Every fixed `v_i` is a function of the expanded bits alone.
#[test]
fn fixed_values_are_determined() {
    let mut r = rng(9);
    for sample in 0..120 {
        let n = r.gen_range(2..=5u32);
        let len = 1usize << n;
        let k = r.gen_range(0..=len);
        let code = random_code(&mut r, n, k, KINDS[sample % KINDS.len()]);
        let e = expanded_information_set(&code);
        let lambda = e.lambda().min(10);
        for _ in 0..8 {
            let bits: Vec<bool> = (0..e.lambda())
                .map(|t| t < lambda && r.gen_bool(0.5))
                .collect();
            let a = CosetAssignment::new(&e, bits.clone()).unwrap();
            let fixed_v = v_values(&code, &e, &a).unwrap();
            // Random free bits must not change v on fixed positions.
            let mut u = BitVector::zeros(len);
            for (&p, &b) in e.expanded().iter().zip(&bits) {
                u.set(p, b);
            }
            for i in e.free_mask().ones() {
                u.set(i, r.gen_bool(0.5));
            }
            let v = code.transform().apply(&u).unwrap();
            let restricted = &v & e.fixed_mask();
            assert_eq!(restricted, fixed_v, "{code:?}");
        }
    }
}
