//! Wall-clock timing of `ylm` per method and degree.

use std::time::Instant;

use disentangle::{ylm, Method};

use crate::CliError;

const THETA: f64 = 1.1;
const PHI: f64 = 0.7;

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: Method,
    pub l: u32,
    pub median_ns: u128,
}

/// One timed op evaluates every `m` of degree `l`; `reps` ops per row.
pub fn run(lmax: u32, reps: usize) -> Result<Vec<BenchRow>, CliError> {
    if reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for method in Method::ALL {
        for l in 0..=lmax {
            let mut times = Vec::with_capacity(reps);
            for _ in 0..reps {
                let start = Instant::now();
                for m in -(l as i64)..=l as i64 {
                    std::hint::black_box(ylm(l, m, THETA, PHI, method)?);
                }
                times.push(start.elapsed().as_nanos());
            }
            times.sort_unstable();
            rows.push(BenchRow {
                method,
                l,
                median_ns: times[times.len() / 2],
            });
        }
    }
    Ok(rows)
}
