//! Benchmark harness: random instances with `n` evaders and `n` sites,
//! solved in parallel and written as CSV ordered by `(n, seed)`.

use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use cegame_core::generate::gen_random;
use cegame_core::nash::{solve_nash, NashOptions};
use cegame_core::normal_form::normal_form_size;
use cegame_core::response::verify_equilibrium;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;

pub const HEADER: &str = "n,m,seed,iterations,wall_time_ms,normal_form_size,verified";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub iterations: usize,
    pub wall_time_ms: f64,
    /// Decimal digits; the count overflows every fixed-width integer.
    pub normal_form_size: String,
    pub verified: bool,
}

/// Accepts `N`, `A..B` (inclusive) or a comma-separated mix of both.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("sizes must look like '2..10' or '2,5,10', got '{text}'"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let range: RangeInclusive<usize> = match part.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                a.parse().map_err(|_| bad())?..=b.parse().map_err(|_| bad())?
            }
            None => {
                let v = part.parse().map_err(|_| bad())?;
                v..=v
            }
        };
        if range.is_empty() || *range.start() == 0 {
            return Err(bad());
        }
        out.extend(range);
    }
    Ok(out)
}

/// Solves one instance and re-verifies the result before reporting it.
pub fn run_one(n: usize, seed: u64, opts: &NashOptions) -> Result<BenchRecord, CliError> {
    let game = gen_random(n, n, seed);
    let start = Instant::now();
    let sol = solve_nash(&game, opts)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = verify_equilibrium(&game, &sol.profile, opts.verify_eps)?;
    if !report.is_equilibrium {
        return Err(CliError::NotEquilibrium(report.worst_violation));
    }
    Ok(BenchRecord {
        n,
        m: n,
        seed,
        iterations: sol.iterations,
        wall_time_ms,
        normal_form_size: normal_form_size(&game)?.to_string(),
        verified: true,
    })
}

/// Runs `per_size` seeds `0..per_size` for every size.
pub fn run(sizes: &[usize], per_size: u64, opts: &NashOptions) -> Result<Vec<BenchRecord>, CliError> {
    let jobs: Vec<(usize, u64)> = sizes
        .iter()
        .flat_map(|&n| (0..per_size).map(move |seed| (n, seed)))
        .collect();
    let mut records = jobs
        .par_iter()
        .map(|&(n, seed)| run_one(n, seed, opts))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by_key(|r| (r.n, r.seed));
    Ok(records)
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(HEADER.split(','))?;
    }
    w.flush().map_err(|e| CliError::io("csv output", e))?;
    Ok(())
}
