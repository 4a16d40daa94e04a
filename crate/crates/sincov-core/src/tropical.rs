//! Min-plus (tropical) transitive closure: repair an arbitrary matrix into a
//! triangle-valid one, or a positive multiplicative matrix into an upper-law
//! solution, by all-pairs shortest-composition sweeps.
//!
//! The diagonal is forced to the composition identity (0 additively, 1
//! multiplicatively) before sweeping — the empty path — so the input
//! diagonal is deliberately discarded. A cycle composing strictly below the
//! identity (negative sum / product below one) makes the closure unbounded;
//! it is detected up front by a label-correcting pass and reported as
//! [`Error::UnboundedClosure`] with a witness cycle.
//!
//! # Determinism across kernels
//!
//! Three kernels are provided and produce **bit-identical** output:
//!
//! - [`Kernel::Plain`]: textbook triple loop, pivot index outermost.
//! - [`Kernel::Blocked`]: the row/column loops inside each pivot sweep are
//!   tiled for cache locality. This is *not* the classic three-phase blocked
//!   all-pairs scheme — that one reorders pivot-partial updates and is not
//!   float-bit-stable. Tiling inside one sweep is: once no below-identity
//!   cycle exists, the pivot row and column are fixed points of their own
//!   sweep (`x + 0` and `0 + x` compare equal to `x`, and updates use strict
//!   `<`), so every update in a sweep reads only frozen data and the visit
//!   order cannot matter.
//! - [`Kernel::Parallel`] (feature `parallel`): rows of each sweep run on a
//!   thread pool against a snapshot of the pivot row; the same freezing
//!   argument makes the result independent of thread count and schedule.
//!
//! Float multiplicative closures run additively in log domain and exponentiate
//! at the end (so they are idempotent within tolerance, not bitwise); exact
//! rational closures compose directly and are bitwise idempotent, as are
//! additive closures in both modes.

use alloc::vec;
use alloc::vec::Vec;

use crate::entry::Entry;
use crate::instance::{Error, Instance, Mode};

/// Tile edge for the blocked kernel, in matrix elements.
const TILE: usize = 64;

/// Sweep strategy; all kernels produce bit-identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    Plain,
    Blocked,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Kernel {
    pub fn as_str(self) -> &'static str {
        match self {
            Kernel::Plain => "plain",
            Kernel::Blocked => "blocked",
            #[cfg(feature = "parallel")]
            Kernel::Parallel => "parallel",
        }
    }
}

impl core::fmt::Display for Kernel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Kernel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "plain" => Ok(Kernel::Plain),
            "blocked" => Ok(Kernel::Blocked),
            #[cfg(feature = "parallel")]
            "parallel" => Ok(Kernel::Parallel),
            other => Err(Error::UnknownKernel {
                name: other.into(),
            }),
        }
    }
}

/// Transitive closure with an automatically chosen kernel (blocked sweeps
/// once the matrix is large enough for tiling to pay off).
pub fn closure<T: Entry>(inst: &Instance<T>) -> Result<Instance<T>, Error> {
    let kernel = if inst.n() >= 256 {
        Kernel::Blocked
    } else {
        Kernel::Plain
    };
    closure_with_kernel(inst, kernel)
}

/// Transitive closure with an explicit kernel.
///
/// Additive instances may contain any finite entries. Multiplicative
/// instances must be strictly positive; the float path runs in log domain,
/// the exact path composes rationals directly.
pub fn closure_with_kernel<T: Entry>(
    inst: &Instance<T>,
    kernel: Kernel,
) -> Result<Instance<T>, Error> {
    let n = inst.n();
    match inst.mode() {
        Mode::Additive => {
            let mut d: Vec<T> = overlay(inst, T::zero());
            check_cycles(&d, n, Mode::Additive, &T::add, &T::zero())?;
            run_sweeps(&mut d, n, kernel, &T::add);
            Instance::from_flat(inst.labels().to_vec(), d, Mode::Additive)
        }
        Mode::Multiplicative => {
            for (k, v) in inst.data().iter().enumerate() {
                if !(*v > T::zero()) {
                    return Err(Error::NonPositiveEntry {
                        row: k / n,
                        col: k % n,
                    });
                }
            }
            if T::LOG_DOMAIN {
                let mut d: Vec<f64> = Vec::with_capacity(n * n);
                for (k, v) in inst.data().iter().enumerate() {
                    d.push(if k / n == k % n { 0.0 } else { T::ln_lossy(v) });
                }
                check_cycles(&d, n, Mode::Multiplicative, &<f64 as Entry>::add, &0.0)?;
                run_sweeps(&mut d, n, kernel, &<f64 as Entry>::add);
                let data = d.into_iter().map(T::from_ln).collect();
                Instance::from_flat(inst.labels().to_vec(), data, Mode::Multiplicative)
            } else {
                let mut d: Vec<T> = overlay(inst, T::one());
                check_cycles(&d, n, Mode::Multiplicative, &T::mul, &T::one())?;
                run_sweeps(&mut d, n, kernel, &T::mul);
                Instance::from_flat(inst.labels().to_vec(), d, Mode::Multiplicative)
            }
        }
    }
}

/// Copy of the matrix with the diagonal forced to `id`.
fn overlay<T: Entry>(inst: &Instance<T>, id: T) -> Vec<T> {
    let n = inst.n();
    let mut d = Vec::with_capacity(n * n);
    for (k, v) in inst.data().iter().enumerate() {
        d.push(if k / n == k % n { id.clone() } else { v.clone() });
    }
    d
}

fn check_cycles<E: Entry>(
    w: &[E],
    n: usize,
    mode: Mode,
    combine: &impl Fn(&E, &E) -> E,
    identity: &E,
) -> Result<(), Error> {
    if let Some(cycle) = find_unbounded_cycle(w, n, combine, identity) {
        return Err(Error::UnboundedClosure { mode, cycle });
    }
    Ok(())
}

/// Label-correcting search for a cycle composing strictly below the
/// identity, on the diagonal-overlaid matrix. Returns the cycle as vertex
/// indices in edge direction (last closes back to first), or `None` when
/// every cycle composes at or above the identity.
fn find_unbounded_cycle<E: Entry>(
    w: &[E],
    n: usize,
    combine: &impl Fn(&E, &E) -> E,
    identity: &E,
) -> Option<Vec<usize>> {
    let mut dist: Vec<E> = vec![identity.clone(); n];
    let mut pred: Vec<usize> = vec![usize::MAX; n];
    let mut last_relaxed = usize::MAX;
    let mut converged = false;
    // Starting at the identity everywhere, pass p computes the best
    // composition over walks of at most p edges. A walk that still improves
    // after n passes must revisit a vertex through a below-identity cycle.
    for _ in 0..=n {
        let mut any = false;
        for i in 0..n {
            for j in 0..n {
                let cand = combine(&dist[i], &w[i * n + j]);
                if cand < dist[j] {
                    dist[j] = cand;
                    pred[j] = i;
                    any = true;
                    last_relaxed = j;
                }
            }
        }
        if !any {
            converged = true;
            break;
        }
    }
    if converged {
        return None;
    }
    // Walk predecessors n steps to enter the cycle, then collect it.
    let mut v = last_relaxed;
    for _ in 0..n {
        v = pred[v];
    }
    let mut cycle = vec![v];
    let mut u = pred[v];
    while u != v {
        cycle.push(u);
        u = pred[u];
    }
    cycle.reverse();
    Some(cycle)
}

/// Composite weight of `cycle` on the diagonal-overlaid matrix of `inst`:
/// the sum (additive) or product (multiplicative) of its edges, the last
/// vertex closing back to the first. A witness cycle from
/// [`Error::UnboundedClosure`] composes strictly below the identity here.
pub fn cycle_weight<T: Entry>(inst: &Instance<T>, cycle: &[usize]) -> T {
    let id = match inst.mode() {
        Mode::Additive => T::zero(),
        Mode::Multiplicative => T::one(),
    };
    let edge = |a: usize, b: usize| {
        if a == b {
            id.clone()
        } else {
            inst.get(a, b).clone()
        }
    };
    let mut acc = id.clone();
    for pair in cycle.windows(2) {
        let w = edge(pair[0], pair[1]);
        acc = match inst.mode() {
            Mode::Additive => T::add(&acc, &w),
            Mode::Multiplicative => T::mul(&acc, &w),
        };
    }
    if cycle.len() > 1 {
        let w = edge(cycle[cycle.len() - 1], cycle[0]);
        acc = match inst.mode() {
            Mode::Additive => T::add(&acc, &w),
            Mode::Multiplicative => T::mul(&acc, &w),
        };
    }
    acc
}

fn run_sweeps<E: Entry>(
    d: &mut [E],
    n: usize,
    kernel: Kernel,
    combine: &(impl Fn(&E, &E) -> E + Sync),
) {
    match kernel {
        Kernel::Plain => {
            for k in 0..n {
                sweep_plain(d, n, k, combine);
            }
        }
        Kernel::Blocked => {
            for k in 0..n {
                sweep_blocked(d, n, k, combine);
            }
        }
        #[cfg(feature = "parallel")]
        Kernel::Parallel => {
            for k in 0..n {
                sweep_parallel(d, n, k, combine);
            }
        }
    }
}

/// One pivot sweep: d[i][j] = min(d[i][j], d[i][k] ∘ d[k][j]).
fn sweep_plain<E: Entry>(d: &mut [E], n: usize, k: usize, combine: &impl Fn(&E, &E) -> E) {
    for i in 0..n {
        let dik = d[i * n + k].clone();
        for j in 0..n {
            let cand = combine(&dik, &d[k * n + j]);
            if cand < d[i * n + j] {
                d[i * n + j] = cand;
            }
        }
    }
}

/// The same sweep with the (i, j) plane visited tile by tile. Reads only
/// the pivot row/column, which a sweep leaves bitwise unchanged, so the
/// tile order cannot affect the result.
fn sweep_blocked<E: Entry>(d: &mut [E], n: usize, k: usize, combine: &impl Fn(&E, &E) -> E) {
    let mut ib = 0;
    while ib < n {
        let imax = core::cmp::min(ib + TILE, n);
        let mut jb = 0;
        while jb < n {
            let jmax = core::cmp::min(jb + TILE, n);
            for i in ib..imax {
                let dik = d[i * n + k].clone();
                for j in jb..jmax {
                    let cand = combine(&dik, &d[k * n + j]);
                    if cand < d[i * n + j] {
                        d[i * n + j] = cand;
                    }
                }
            }
            jb = jmax;
        }
        ib = imax;
    }
}

/// Row-parallel sweep against a snapshot of the pivot row. Each worker owns
/// one row; the pivot row's own updates are no-ops, so the snapshot equals
/// the live row throughout and scheduling cannot affect the result.
#[cfg(feature = "parallel")]
fn sweep_parallel<E: Entry>(
    d: &mut [E],
    n: usize,
    k: usize,
    combine: &(impl Fn(&E, &E) -> E + Sync),
) {
    use rayon::prelude::*;
    let row_k: Vec<E> = d[k * n..(k + 1) * n].to_vec();
    d.par_chunks_mut(n).for_each(|row| {
        let dik = row[k].clone();
        for j in 0..n {
            let cand = combine(&dik, &row_k[j]);
            if cand < row[j] {
                row[j] = cand;
            }
        }
    });
}
