#![allow(dead_code)]

use polarwd::{BitVector, CodeSpec, Pretransform, UnitUpperTriangular};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const KINDS: [&str; 6] = ["identity", "pac", "pc", "crc", "random", "explicit"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random information set of size `k` from a random reliability order.
pub fn random_info(rng: &mut ChaCha8Rng, len: usize, k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=len).collect();
    order.shuffle(rng);
    let mut info = order[..k].to_vec();
    info.sort_unstable();
    info
}

pub fn random_bits(rng: &mut ChaCha8Rng, len: usize, leading_one: bool) -> BitVector {
    let mut v = BitVector::zeros(len);
    for i in 1..=len {
        v.set(i, rng.gen_bool(0.5));
    }
    if leading_one {
        v.set(1, true);
    }
    v
}

pub fn random_recipe(rng: &mut ChaCha8Rng, kind: &str, len: usize, k: usize) -> Pretransform {
    match kind {
        "identity" => Pretransform::Identity,
        "pac" => {
            let m = rng.gen_range(1..=len.min(9));
            Pretransform::Pac {
                memory: random_bits(rng, m, true),
            }
        }
        "pc" => {
            let taps: Vec<usize> = (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(1..len.max(2)))
                .collect();
            Pretransform::ParityCheck {
                taps,
                positions: None,
            }
        }
        "crc" if k == 0 => Pretransform::Identity,
        "crc" => {
            let r = rng.gen_range(1..=k.clamp(1, 4));
            let mut poly = random_bits(rng, r + 1, true);
            poly.set(r + 1, true);
            Pretransform::Crc { polynomial: poly }
        }
        "random" => Pretransform::Random {
            density: rng.gen_range(0.05..=1.0),
            seed: rng.gen(),
        },
        "explicit" => {
            let rows = (1..=len)
                .map(|j| {
                    let mut row = BitVector::zeros(len);
                    row.set(j, true);
                    for i in j + 1..=len {
                        row.set(i, rng.gen_bool(0.3));
                    }
                    row
                })
                .collect();
            Pretransform::Explicit(UnitUpperTriangular::from_rows(rows).unwrap())
        }
        other => panic!("unknown kind {other}"),
    }
}

/// A random code; for CRC the returned dimension is `k - r`.
pub fn random_code(rng: &mut ChaCha8Rng, n: u32, k: usize, kind: &str) -> CodeSpec {
    let len = 1usize << n;
    let info = random_info(rng, len, k);
    let recipe = random_recipe(rng, kind, len, k);
    CodeSpec::from_recipe(n, info, &recipe).unwrap()
}
