//! Scoped-thread evaluation of grids. Spline samples are independent, so
//! chunks of the abscissa vector go to worker threads; `FRACSPLINE_THREADS`
//! caps the worker count.

use std::num::NonZeroUsize;

/// Worker count: `FRACSPLINE_THREADS` if set (validated by the caller),
/// otherwise the machine's available parallelism.
pub fn worker_count(env_cap: Option<usize>) -> usize {
    let available = std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1);
    env_cap.unwrap_or(available).clamp(1, available.max(1))
}

/// Maps `f` over `xs`, splitting into up to `threads` chunks.
pub fn map_f64(xs: &[f64], threads: usize, f: impl Fn(f64) -> f64 + Sync) -> Vec<f64> {
    let threads = threads.clamp(1, xs.len().max(1));
    if threads == 1 || xs.len() < 64 {
        return xs.iter().map(|&x| f(x)).collect();
    }
    let chunk = xs.len().div_ceil(threads);
    let mut out = vec![0.0; xs.len()];
    std::thread::scope(|scope| {
        for (inp, outp) in xs.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(|| {
                for (i, &x) in inp.iter().enumerate() {
                    outp[i] = f(x);
                }
            });
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_serial() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 * 0.01).collect();
        let serial: Vec<f64> = xs.iter().map(|&x| x * x + 1.0).collect();
        for threads in [1, 2, 3, 8] {
            assert_eq!(map_f64(&xs, threads, |x| x * x + 1.0), serial);
        }
    }

    #[test]
    fn worker_count_respects_cap() {
        assert_eq!(worker_count(Some(1)), 1);
        assert!(worker_count(None) >= 1);
    }
}
