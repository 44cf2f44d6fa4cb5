mod common;

use common::{random_code, rng, KINDS};
use num_bigint::BigUint;
use num_traits::One;
use polarwd::{
    brute_force_coset_wd, brute_force_wd, compute_wd, polar_coset_wd, CosetCache, EngineConfig,
    OracleLimits, PolarCosetSpec,
};
use rand::Rng;

#[test]
fn engine_matches_oracle_on_random_codes() {
    let mut r = rng(2024);
    let limits = OracleLimits::default();
    let mut checked = 0;
    for sample in 0..240 {
        let n = [2u32, 3, 4, 5][sample % 4];
        let len = 1usize << n;
        let k = r.gen_range(0..=len.min(16));
        let kind = KINDS[sample % KINDS.len()];
        let code = random_code(&mut r, n, k, kind);
        let fast = compute_wd(&code).unwrap();
        let slow = brute_force_wd(&code, &limits).unwrap();
        assert_eq!(fast, slow, "sample {sample} kind {kind}: {code:?}");
        assert_eq!(fast.total(), BigUint::one() << code.k());
        assert_eq!(fast.get(0), &BigUint::one());
        checked += 1;
    }
    assert!(checked >= 200);
}

#[test]
fn coset_recursion_matches_oracle() {
    let mut r = rng(77);
    let mut cache = CosetCache::new(&EngineConfig::default());
    for _ in 0..300 {
        let level = r.gen_range(0..=5u32);
        let len = 1usize << level;
        let mut mask = polarwd::BitVector::zeros(len);
        let mut values = polarwd::BitVector::zeros(len);
        for i in 1..=len {
            if r.gen_bool(0.6) {
                mask.set(i, true);
                values.set(i, r.gen_bool(0.5));
            }
        }
        let spec = PolarCosetSpec::new(level, mask, values).unwrap();
        let fast = polar_coset_wd(&spec, &mut cache);
        let slow = brute_force_coset_wd(&spec, &OracleLimits::default()).unwrap();
        assert_eq!(fast, slow, "{spec:?}");
    }
}

#[test]
fn six_free_bits_at_level_four() {
    let mut r = rng(5);
    let mut cache = CosetCache::new(&EngineConfig::default());
    for _ in 0..50 {
        let free = common::random_info(&mut r, 16, 6);
        let mut mask = polarwd::BitVector::all_ones(16);
        let mut values = common::random_bits(&mut r, 16, false);
        for &p in &free {
            mask.set(p, false);
            values.set(p, false);
        }
        let spec = PolarCosetSpec::new(4, mask, values).unwrap();
        let slow = brute_force_coset_wd(&spec, &OracleLimits::default()).unwrap();
        assert_eq!(slow.total(), BigUint::from(64u32));
        assert_eq!(polar_coset_wd(&spec, &mut cache), slow);
    }
}
