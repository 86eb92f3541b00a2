//! Timing of pseudonym generation and verification.

use std::time::Instant;

use bpk_core::scheme;
use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const MIN_ITERATIONS: usize = 10;

/// Mean and standard error of the mean, in milliseconds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub mean_ms: f64,
    pub stderr_ms: f64,
}

impl Timing {
    pub fn from_samples(samples_ms: &[f64]) -> Timing {
        let n = samples_ms.len() as f64;
        let mean = samples_ms.iter().sum::<f64>() / n;
        let var = samples_ms.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Timing {
            mean_ms: mean,
            stderr_ms: (var / n).sqrt(),
        }
    }
}

/// The published measurements this implementation is compared against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub machine: String,
    pub nymgen: Timing,
    pub nymvf: Timing,
}

impl Default for Reference {
    fn default() -> Self {
        Reference {
            machine: "Intel Core i7-1265U".into(),
            nymgen: Timing {
                mean_ms: 4.94,
                stderr_ms: 0.02,
            },
            nymvf: Timing {
                mean_ms: 7.61,
                stderr_ms: 0.03,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub iterations: usize,
    pub nymgen: Timing,
    pub nymvf: Timing,
    pub reference: Reference,
}

/// Times `iterations` runs of user-side pseudonym generation and of
/// verification, each on fresh keys from `rng`.
pub fn run<R: RngCore + CryptoRng>(iterations: usize, rng: &mut R) -> Result<BenchReport> {
    if iterations < MIN_ITERATIONS {
        return Err(CliError::Usage(format!(
            "at least {MIN_ITERATIONS} iterations are needed, got {iterations}"
        )));
    }
    let pp = scheme::setup(scheme::SECURITY_LEVEL, scheme::VERSION.as_bytes())?;
    let master = scheme::keygen(&pp, rng);
    let user = scheme::keygen_user(&pp, &master.msk, rng)?;

    let mut gen = Vec::with_capacity(iterations);
    let mut vf = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let sp = scheme::keygen_sp(&pp, &master.msk, rng);
        let start = Instant::now();
        let (nym, proof) = scheme::nymgen_user(&pp, &user.usk, &master.mpk, &sp.sppk, rng)?;
        gen.push(start.elapsed().as_secs_f64() * 1e3);

        let start = Instant::now();
        let ok = scheme::nymvf(&pp, &master.mpk, &sp.sppk, &nym, &proof);
        vf.push(start.elapsed().as_secs_f64() * 1e3);
        if !ok {
            return Err(CliError::Failed("an honest proof failed to verify".into()));
        }
    }
    Ok(BenchReport {
        iterations,
        nymgen: Timing::from_samples(&gen),
        nymvf: Timing::from_samples(&vf),
        reference: Reference::default(),
    })
}

impl BenchReport {
    pub fn table(&self) -> String {
        let r = &self.reference;
        let row = |name: &str, t: &Timing, p: &Timing| {
            format!(
                "{name:<8} {:>11.2} ± {:<6.2} {:>11.2} ± {:<6.2}\n",
                t.mean_ms, t.stderr_ms, p.mean_ms, p.stderr_ms
            )
        };
        let mut out = format!(
            "{:<8} {:>20} {:>20}\n",
            "ms",
            format!("this machine (n={})", self.iterations),
            r.machine.trim_start_matches("Intel Core ")
        );
        out += &row("nymgen", &self.nymgen, &r.nymgen);
        out += &row("nymvf", &self.nymvf, &r.nymvf);
        out
    }
}
