mod common;

use common::{random_code, rng, KINDS};
use num_bigint::BigUint;
use num_traits::One;
use polarwd::{compute_wd_with, CodeSpec, EngineConfig, Error, Pretransform};
use rand::Rng;

fn config(workers: usize, use_cache: bool) -> EngineConfig {
    EngineConfig {
        workers,
        use_cache,
        lambda_limit: 12,
        ..EngineConfig::default()
    }
}

#[test]
fn cache_and_workers_do_not_change_results() {
    let mut r = rng(101);
    let mut checked = 0;
    for sample in 0..40 {
        let n = r.gen_range(3..=5u32);
        let len = 1usize << n;
        let k = r.gen_range(0..=len);
        let code = random_code(&mut r, n, k, KINDS[sample % KINDS.len()]);
        let Ok((reference, stats)) = compute_wd_with(&code, &config(1, true)) else {
            continue;
        };
        assert_eq!(reference.total(), BigUint::one() << code.k());
        for (w, c) in [(1, false), (3, true), (4, false), (8, true)] {
            let (wd, s) = compute_wd_with(&code, &config(w, c)).unwrap();
            assert_eq!(wd, reference, "workers={w} cache={c}");
            assert_eq!(s.lambda, stats.lambda);
        }
        checked += 1;
    }
    assert!(checked >= 15, "only {checked} codes under the limit");
}

#[test]
fn leaf_level_does_not_change_results() {
    let mut r = rng(55);
    for sample in 0..20 {
        let code = random_code(&mut r, 5, 20, KINDS[sample % KINDS.len()]);
        let base = compute_wd_with(&code, &config(0, true));
        let Ok((reference, _)) = base else { continue };
        for leaf in [0, 1, 3] {
            let cfg = EngineConfig {
                leaf_level: leaf,
                ..config(0, true)
            };
            assert_eq!(compute_wd_with(&code, &cfg).unwrap().0, reference);
        }
    }
}

#[test]
fn big_dimension_uses_exact_big_integers() {
    let info: Vec<usize> = (1..=256).filter(|&i| i != 1).collect();
    let code = CodeSpec::from_recipe(8, info, &Pretransform::Identity).unwrap();
    let (wd, stats) = compute_wd_with(&code, &EngineConfig::default()).unwrap();
    assert_eq!(stats.lambda, 1);
    assert_eq!(wd.total(), BigUint::one() << 255);
    assert_eq!(wd.get(0), &BigUint::one());
    // Even-weight code: binomial(256, w) at even w.
    assert_eq!(wd.get(2), &BigUint::from(256u32 * 255 / 2));
    assert_eq!(wd.get(1), &BigUint::from(0u32));
}

#[test]
fn lambda_guard_is_reported() {
    let mut r = rng(1);
    let code = random_code(&mut r, 6, 40, "random");
    let cfg = EngineConfig {
        lambda_limit: 2,
        ..EngineConfig::default()
    };
    match compute_wd_with(&code, &cfg) {
        Err(Error::LambdaLimit { limit: 2, .. }) => {}
        other => panic!("expected guard, got {other:?}"),
    }
}
