use std::fs::File;
use std::path::Path;

use polarwd::{build_info_set, BitVector, CodeSpec, Error, Pretransform, ReliabilitySequence};

use crate::args::{CodeArgs, Kind};

/// A failed command and its exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Guard(String),
    Selftest(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Guard(_) => 2,
            Failure::Selftest(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Guard(m) | Failure::Selftest(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LambdaLimit { .. } | Error::OracleLimit { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub fn load_sequence(path: Option<&Path>) -> Result<ReliabilitySequence, Failure> {
    match path {
        None => Ok(ReliabilitySequence::nr()),
        Some(p) => {
            let f = File::open(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            ReliabilitySequence::load(f)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn bits(flag: &str, s: &Option<String>) -> Result<BitVector, Failure> {
    let s = s
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("--{flag} is required for this pre-transform")))?;
    s.parse()
        .map_err(|_| Failure::Usage(format!("--{flag} must be a bit string, got {s:?}")))
}

fn recipe(a: &CodeArgs) -> Result<Pretransform, Failure> {
    Ok(match a.pretransform {
        Kind::Identity => Pretransform::Identity,
        Kind::Pac => Pretransform::Pac {
            memory: bits("memory", &a.memory)?,
        },
        Kind::Pc => Pretransform::ParityCheck {
            taps: a
                .taps
                .clone()
                .ok_or_else(|| Failure::Usage("--taps is required for pc".into()))?,
            positions: a.parity_positions.clone(),
        },
        Kind::Crc => Pretransform::Crc {
            polynomial: bits("crc-poly", &a.crc_poly)?,
        },
        Kind::Random => Pretransform::Random {
            density: a.density,
            seed: a.seed,
        },
    })
}

/// Builds the code described by the flags. `--frozen` wins over `--seq`.
pub fn build_code(a: &CodeArgs) -> Result<CodeSpec, Failure> {
    if a.n > polarwd::kernel::MAX_LEVEL {
        return Err(Error::LevelTooLarge(a.n).into());
    }
    let len = 1usize << a.n;
    let info = match &a.frozen {
        Some(frozen) => {
            let mut mask = vec![false; len + 1];
            for &f in frozen {
                if f == 0 || f > len {
                    return Err(Error::IndexOutOfRange { index: f, len }.into());
                }
                if mask[f] {
                    return Err(Failure::Usage(format!("frozen position {f} repeated")));
                }
                mask[f] = true;
            }
            let info: Vec<usize> = (1..=len).filter(|&i| !mask[i]).collect();
            if let Some(k) = a.k {
                if k != info.len() {
                    return Err(Failure::Usage(format!(
                        "--k {k} disagrees with {} frozen positions at length {len}",
                        frozen.len()
                    )));
                }
            }
            info
        }
        None => {
            let k =
                a.k.ok_or_else(|| Failure::Usage("either --k or --frozen is required".into()))?;
            let seq = load_sequence(a.seq.as_deref())?;
            build_info_set(&seq, len, k)?.0
        }
    };
    Ok(CodeSpec::from_recipe(a.n, info, &recipe(a)?)?)
}
