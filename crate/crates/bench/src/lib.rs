//! Fixtures shared by the benchmarks.

use polarwd::{build_info_set, CodeSpec, Pretransform, ReliabilitySequence};

/// A PAC code on the bundled reliability sequence.
pub fn pac_code(n: u32, k: usize, memory: &str) -> CodeSpec {
    let (info, _) = build_info_set(&ReliabilitySequence::nr(), 1 << n, k).expect("valid k");
    let recipe = Pretransform::Pac {
        memory: memory.parse().expect("bit string"),
    };
    CodeSpec::from_recipe(n, info, &recipe).expect("valid code")
}

/// A random pre-transformed code on the bundled reliability sequence.
pub fn random_code(n: u32, k: usize, seed: u64) -> CodeSpec {
    let (info, _) = build_info_set(&ReliabilitySequence::nr(), 1 << n, k).expect("valid k");
    let recipe = Pretransform::Random { density: 0.5, seed };
    CodeSpec::from_recipe(n, info, &recipe).expect("valid code")
}
