//! Single-threaded timing harness around the closure kernels. Times the
//! plain and blocked sweeps on the same raw input, asserts their outputs
//! are bit-identical, and reports wall time plus an operation rate (one
//! compose + one compare per inner step, `2 n^3` ops per closure).

use crate::gen::via_closure_input;
use crate::instance::Error;
use crate::tropical::{closure_with_kernel, Kernel};

/// Timing results for one benchmark run. Times are wall-clock seconds;
/// rates are billions of inner-loop operations per second based on the
/// median time.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub plain_median_s: f64,
    pub plain_min_s: f64,
    pub blocked_median_s: f64,
    pub blocked_min_s: f64,
    pub plain_gops: f64,
    pub blocked_gops: f64,
    /// Always true; the run panics if the kernels ever disagree.
    pub identical: bool,
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[m]
    } else {
        (sorted[m - 1] + sorted[m]) / 2.0
    }
}

fn time_kernel(
    input: &crate::instance::Instance<f64>,
    kernel: Kernel,
    reps: usize,
) -> Result<(Vec<f64>, crate::instance::Instance<f64>), Error> {
    let mut times = Vec::with_capacity(reps);
    let mut out = None;
    for _ in 0..reps {
        let t0 = std::time::Instant::now();
        let c = closure_with_kernel(input, kernel)?;
        times.push(t0.elapsed().as_secs_f64());
        out = Some(c);
    }
    times.sort_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
    Ok((times, out.expect("reps >= 1")))
}

/// Generate the raw `via-closure` input for `(n, seed)`, run both kernels
/// `reps` times each, verify bit-identical outputs, and report timings.
pub fn bench_closure(n: usize, reps: usize, seed: u64) -> Result<BenchReport, Error> {
    if n < 2 {
        return Err(Error::BadGenSpec {
            reason: "benchmark size must be at least 2".into(),
        });
    }
    if reps < 1 {
        return Err(Error::BadGenSpec {
            reason: "benchmark needs at least one repetition".into(),
        });
    }
    let input = via_closure_input(n, seed)?;
    let (plain_times, plain_out) = time_kernel(&input, Kernel::Plain, reps)?;
    let (blocked_times, blocked_out) = time_kernel(&input, Kernel::Blocked, reps)?;
    let identical = plain_out
        .data()
        .iter()
        .zip(blocked_out.data())
        .all(|(a, b)| a.to_bits() == b.to_bits());
    assert!(identical, "closure kernels disagreed at n={n} seed={seed}");
    let ops = 2.0 * (n as f64).powi(3);
    let plain_median_s = median(&plain_times);
    let blocked_median_s = median(&blocked_times);
    Ok(BenchReport {
        n,
        reps,
        seed,
        plain_median_s,
        plain_min_s: plain_times[0],
        blocked_median_s,
        blocked_min_s: blocked_times[0],
        plain_gops: ops / plain_median_s / 1e9,
        blocked_gops: ops / blocked_median_s / 1e9,
        identical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_valid_run_works() {
        let report = bench_closure(2, 1, 0).unwrap();
        assert!(report.identical);
        assert!(report.plain_median_s >= 0.0);
    }

    #[test]
    fn kernels_agree_on_a_real_size() {
        let report = bench_closure(64, 3, 7).unwrap();
        assert!(report.identical);
        assert!(report.plain_gops > 0.0);
        assert!(report.blocked_gops > 0.0);
    }

    #[test]
    fn degenerate_requests_are_rejected() {
        assert!(matches!(
            bench_closure(1, 1, 0).unwrap_err(),
            Error::BadGenSpec { .. }
        ));
        assert!(matches!(
            bench_closure(8, 0, 0).unwrap_err(),
            Error::BadGenSpec { .. }
        ));
    }
}
