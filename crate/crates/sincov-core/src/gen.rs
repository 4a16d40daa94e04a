//! Deterministic instance generation. Every family is constructed so that
//! it satisfies its advertised law *by construction*, giving test corpora
//! with known ground truth. The same spec always produces byte-identical
//! output (a fixed stream cipher drives all draws, and the draw order is
//! part of the contract).

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entry::Entry;
use crate::instance::{default_labels, Error, Instance, Mode};
use crate::tropical::closure;
use num_rational::BigRational;

/// Instance family to generate.
///
/// | kind                 | mode           | law it satisfies            |
/// |----------------------|----------------|-----------------------------|
/// | `Ratio`              | multiplicative | equation (hence both one-sided laws) |
/// | `Bounded { c }`      | multiplicative | upper law (entries in `[c, c^2]`, `c >= 1`) |
/// | `Component { blocks }` | multiplicative | upper law; the equation too when `blocks <= 2` |
/// | `ViaClosure`         | multiplicative | upper law (random entries in `[1, e^3]`, then closure) |
/// | `ReverseF3`          | multiplicative | reverse law (`(t_i - 1) / t_j` on a grid `t >= 1`) |
/// | `AdditivePotential`  | additive       | triangle law (upper envelope of potential differences) |
///
/// `Component` instances are `+1` inside a contiguous block of points and
/// `-1` across blocks; with three or more blocks the equation fails (a
/// cross-block triple composes to `+1` against a direct `-1`) while the
/// upper law still holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    Ratio,
    Bounded { c: f64 },
    Component { blocks: usize },
    ViaClosure,
    ReverseF3,
    AdditivePotential,
}

impl GenKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GenKind::Ratio => "ratio",
            GenKind::Bounded { .. } => "bounded",
            GenKind::Component { .. } => "component",
            GenKind::ViaClosure => "via-closure",
            GenKind::ReverseF3 => "reverse-f3",
            GenKind::AdditivePotential => "additive-potential",
        }
    }
}

/// Full generation request: family, size, seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
}

fn check(spec: &GenSpec) -> Result<(), Error> {
    if spec.n == 0 {
        return Err(Error::BadGenSpec {
            reason: "size must be at least 1".into(),
        });
    }
    match spec.kind {
        GenKind::Bounded { c } => {
            if !(c.is_finite() && c >= 1.0) {
                return Err(Error::BadGenSpec {
                    reason: "bounded family needs a finite bound c >= 1".into(),
                });
            }
        }
        GenKind::Component { blocks } => {
            if blocks == 0 || blocks > spec.n {
                return Err(Error::BadGenSpec {
                    reason: "component count must be in 1..=n".into(),
                });
            }
        }
        _ => {}
    }
    Ok(())
}

fn rng_for(spec: &GenSpec) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(spec.seed)
}

/// Uniform draw in `[0, 1)` with 53 explicit bits, independent of platform
/// float quirks.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Log-uniform draw in `[e^lo, e^hi]`.
fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    <f64 as Entry>::from_ln(lo + unit(rng) * (hi - lo))
}

/// Rational draw on the 4096-step lattice over `[lo, hi]`.
fn rational_in(rng: &mut ChaCha8Rng, lo: &BigRational, hi: &BigRational) -> BigRational {
    let k = rng.next_u64() & 0xFFF;
    let step = BigRational::new(k.into(), 4096.into());
    lo + (hi - lo) * step
}

/// Block id of point `x` when `n` points split into `blocks` contiguous
/// groups.
fn block_of(x: usize, n: usize, blocks: usize) -> usize {
    x * blocks / n
}

/// `+1` within a block, `-1` across blocks.
fn component_matrix<T: Entry>(n: usize, blocks: usize) -> Vec<T> {
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(if block_of(i, n, blocks) == block_of(j, n, blocks) {
                T::one()
            } else {
                T::neg(&T::one())
            });
        }
    }
    data
}

/// Reverse-law family on an explicit grid: `F(i, j) = (t_i - 1) / t_j`.
/// Grid values must be at least 1 (below 1 the reverse law genuinely
/// fails: the composite exceeds the direct value by `(t_i - 1) / (t_j t_k)`,
/// which flips sign with `t_i - 1`).
pub fn f3_instance<T: Entry>(grid: &[T]) -> Result<Instance<T>, Error> {
    if grid.is_empty() {
        return Err(Error::BadGenSpec {
            reason: "grid must be non-empty".into(),
        });
    }
    if grid.iter().any(|t| *t < T::one()) {
        return Err(Error::BadGenSpec {
            reason: "grid values must be >= 1".into(),
        });
    }
    let n = grid.len();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(T::div(&T::sub(&grid[i], &T::one()), &grid[j]));
        }
    }
    Instance::from_flat(default_labels(n), data, Mode::Multiplicative)
}

/// Generate a float instance. Same spec, same bytes.
pub fn generate(spec: &GenSpec) -> Result<Instance<f64>, Error> {
    check(spec)?;
    let n = spec.n;
    let mut rng = rng_for(spec);
    let labels = default_labels(n);
    match spec.kind {
        GenKind::Ratio => {
            let f: Vec<f64> = (0..n).map(|_| log_uniform(&mut rng, -3.0, 3.0)).collect();
            let data = ratio_matrix(&f);
            Instance::from_flat(labels, data, Mode::Multiplicative)
        }
        GenKind::Component { blocks } => {
            Instance::from_flat(labels, component_matrix(n, blocks), Mode::Multiplicative)
        }
        GenKind::Bounded { c } => {
            let hi = c * c;
            let data = (0..n * n).map(|_| c + unit(&mut rng) * (hi - c)).collect();
            Instance::from_flat(labels, data, Mode::Multiplicative)
        }
        GenKind::ViaClosure => closure(&via_closure_input(n, spec.seed)?),
        GenKind::ReverseF3 => {
            let t: Vec<f64> = (0..n).map(|_| log_uniform(&mut rng, 0.0, 3.0)).collect();
            f3_instance(&t)
        }
        GenKind::AdditivePotential => {
            let pots = n.max(2);
            let phi: Vec<Vec<f64>> = (0..pots)
                .map(|_| (0..n).map(|_| -3.0 + 6.0 * unit(&mut rng)).collect())
                .collect();
            let mut data = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let mut best = phi[0][x] - phi[0][y];
                    for p in &phi[1..] {
                        let d = p[x] - p[y];
                        if d > best {
                            best = d;
                        }
                    }
                    data.push(best);
                }
            }
            Instance::from_flat(labels, data, Mode::Additive)
        }
    }
}

/// Generate an exact rational instance of the same family. Ranges are
/// rational stand-ins for the float ones (`[1, 20]` replaces `[1, e^3]`).
pub fn generate_exact(spec: &GenSpec) -> Result<Instance<BigRational>, Error> {
    check(spec)?;
    let n = spec.n;
    let mut rng = rng_for(spec);
    let labels = default_labels(n);
    let one = || <BigRational as Entry>::one();
    let lo_one = one();
    let hi_twenty = BigRational::from_integer(20.into());
    match spec.kind {
        GenKind::Ratio => {
            let f: Vec<BigRational> = (0..n).map(|_| positive_rational(&mut rng)).collect();
            let data = ratio_matrix(&f);
            Instance::from_flat(labels, data, Mode::Multiplicative)
        }
        GenKind::Component { blocks } => {
            Instance::from_flat(labels, component_matrix(n, blocks), Mode::Multiplicative)
        }
        GenKind::Bounded { c } => {
            let c = <BigRational as Entry>::from_f64(c);
            let hi = &c * &c;
            let data = (0..n * n).map(|_| rational_in(&mut rng, &c, &hi)).collect();
            Instance::from_flat(labels, data, Mode::Multiplicative)
        }
        GenKind::ViaClosure => {
            let data = (0..n * n)
                .map(|_| rational_in(&mut rng, &lo_one, &hi_twenty))
                .collect();
            let raw = Instance::from_flat(labels, data, Mode::Multiplicative)?;
            closure(&raw)
        }
        GenKind::ReverseF3 => {
            let t: Vec<BigRational> = (0..n)
                .map(|_| rational_in(&mut rng, &lo_one, &hi_twenty))
                .collect();
            f3_instance(&t)
        }
        GenKind::AdditivePotential => {
            let pots = n.max(2);
            let lo = BigRational::from_integer((-3).into());
            let hi = BigRational::from_integer(3.into());
            let phi: Vec<Vec<BigRational>> = (0..pots)
                .map(|_| (0..n).map(|_| rational_in(&mut rng, &lo, &hi)).collect())
                .collect();
            let mut data = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let mut best = &phi[0][x] - &phi[0][y];
                    for p in &phi[1..] {
                        let d = &p[x] - &p[y];
                        if d > best {
                            best = d;
                        }
                    }
                    data.push(best);
                }
            }
            Instance::from_flat(labels, data, Mode::Additive)
        }
    }
}

/// The raw (pre-closure) input of the `via-closure` family: entries
/// log-uniform in `[1, e^3]`, so no cycle can compose below one and the
/// closure never fails. Shared with the benchmark harness, which times the
/// closure of exactly this input.
pub(crate) fn via_closure_input(n: usize, seed: u64) -> Result<Instance<f64>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * n).map(|_| log_uniform(&mut rng, 0.0, 3.0)).collect();
    Instance::from_flat(default_labels(n), data, Mode::Multiplicative)
}

/// `S[i][j] = f(i) / f(j)` — an equation solution for any positive `f`.
fn ratio_matrix<T: Entry>(f: &[T]) -> Vec<T> {
    let n = f.len();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(T::div(&f[i], &f[j]));
        }
    }
    data
}

/// Rational in `[1/64, 64]` as a ratio of small integers.
fn positive_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let p = (rng.next_u64() & 63) + 1;
    let q = (rng.next_u64() & 63) + 1;
    BigRational::new(p.into(), q.into())
}
