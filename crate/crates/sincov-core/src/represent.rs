//! Potential representations: one-variable functions whose coboundaries
//! (ratios or differences) are bounded by an instance, and the envelope
//! constructions that rebuild instances from such families.
//!
//! A [`Potential`] is a vector of values over the point set. Three classes
//! tie potentials to instances:
//!
//! - [`PotentialClass::MultUpper`]: `f(x)/f(y) ≤ G(x,y)` — the instance
//!   bounds ratio coboundaries from above (upper product law side).
//! - [`PotentialClass::MultLower`]: `f(x)/f(y) ≥ F(x,y)` — the instance
//!   bounds them from below (reverse law side).
//! - [`PotentialClass::Additive`]: `φ(x) − φ(y) ≤ H(x,y)` — difference
//!   coboundaries under the triangle law.
//!
//! On a finite point set the columns of a solution already attain the
//! envelope: [`canonical_family`] extracts them, and [`reconstruct`] rebuilds
//! the instance as the pointwise sup (or inf) of member coboundaries. This
//! makes the representation exact — the round trip
//! `reconstruct(canonical_family(G), Sup) == G` holds for unit-diagonal
//! solutions, which the test suite and the claim oracle both pin down.
//!
//! [`solve_equation`] recovers the generating potential of an exact-equation
//! solution (or reports the all-zero solution / a non-solution), and
//! [`comparability_check`] probes the rigidity of equation solutions:
//! comparable *positive* solutions must be equal. Sign-mixed solutions can
//! genuinely be comparable yet unequal — see `docs/findings.md` — so the
//! `Violation` outcome is reachable and reportable.

use alloc::string::String;
use alloc::vec::Vec;

use crate::entry::{Entry, TolCtx};
use crate::instance::{default_labels, Error, Instance, Mode, Tolerance};
use crate::validate::{validate, Law};

/// A one-variable function over the point set.
///
/// Values are finite; positivity is *not* a type invariant — exact-equation
/// solutions over sign-mixed instances have sign-mixed potentials. The
/// operations that need positivity (multiplicative membership and envelopes)
/// enforce it at the call site.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential<T> {
    values: Vec<T>,
}

impl<T: Entry> Potential<T> {
    pub fn new(values: Vec<T>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        for (i, v) in values.iter().enumerate() {
            if !T::is_finite(v) {
                return Err(Error::NonFinite { row: 0, col: i });
            }
        }
        Ok(Potential { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lossy float view for reports.
    pub fn to_f64_lossy(&self) -> Vec<f64> {
        self.values.iter().map(T::to_f64).collect()
    }
}

/// Which coboundary bound a potential satisfies relative to an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialClass {
    /// f(x)/f(y) ≤ G(x,y); multiplicative instances.
    MultUpper,
    /// f(x)/f(y) ≥ F(x,y); multiplicative instances.
    MultLower,
    /// φ(x) − φ(y) ≤ H(x,y); additive instances.
    Additive,
}

impl PotentialClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PotentialClass::MultUpper => "mult-upper",
            PotentialClass::MultLower => "mult-lower",
            PotentialClass::Additive => "additive",
        }
    }

    pub fn required_mode(self) -> Mode {
        match self {
            PotentialClass::Additive => Mode::Additive,
            _ => Mode::Multiplicative,
        }
    }
}

impl core::fmt::Display for PotentialClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for PotentialClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "mult-upper" => Ok(PotentialClass::MultUpper),
            "mult-lower" => Ok(PotentialClass::MultLower),
            "additive" => Ok(PotentialClass::Additive),
            other => Err(Error::UnknownMode {
                name: other.into(),
            }),
        }
    }
}

/// Envelope direction for [`reconstruct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Sup,
    Inf,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Sup => "sup",
            Direction::Inf => "inf",
        }
    }
}

impl core::fmt::Display for Direction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sup" => Ok(Direction::Sup),
            "inf" => Ok(Direction::Inf),
            other => Err(Error::UnknownMode {
                name: other.into(),
            }),
        }
    }
}

/// A finite list of potentials over a shared labeled point set.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialFamily<T> {
    labels: Vec<String>,
    mode: Mode,
    members: Vec<Potential<T>>,
}

impl<T: Entry> PotentialFamily<T> {
    /// Build a family, checking that every member matches the label count.
    /// An empty member list is representable; [`reconstruct`] rejects it.
    pub fn new(
        labels: Vec<String>,
        members: Vec<Potential<T>>,
        mode: Mode,
    ) -> Result<Self, Error> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || labels[..i].contains(l) {
                return Err(Error::BadLabel { label: l.clone() });
            }
        }
        for m in &members {
            if m.len() != n {
                return Err(Error::SizeMismatch {
                    left: m.len(),
                    right: n,
                });
            }
        }
        Ok(PotentialFamily {
            labels,
            mode,
            members,
        })
    }

    /// Build with synthesized labels `x0..x{n-1}` taken from the first
    /// member's length.
    pub fn with_default_labels(members: Vec<Potential<T>>, mode: Mode) -> Result<Self, Error> {
        let n = members.first().map(Potential::len).ok_or(Error::EmptyFamily)?;
        Self::new(default_labels(n), members, mode)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn members(&self) -> &[Potential<T>] {
        &self.members
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }
}

/// Does `f` belong to the given class relative to `inst`?
///
/// Multiplicative checks run in product form — `f(x) ≤ G(x,y)·f(y)` — so no
/// division happens near the zero band; multiplicative classes require a
/// strictly positive potential.
pub fn member_of<T: Entry>(
    f: &Potential<T>,
    inst: &Instance<T>,
    class: PotentialClass,
    tol: &Tolerance,
) -> Result<bool, Error> {
    if inst.mode() != class.required_mode() {
        return Err(Error::ModeMismatch {
            left: class.required_mode(),
            right: inst.mode(),
        });
    }
    if f.len() != inst.n() {
        return Err(Error::SizeMismatch {
            left: f.len(),
            right: inst.n(),
        });
    }
    if class != PotentialClass::Additive {
        require_positive_values(f.values(), 0)?;
    }
    let ctx = TolCtx::new(tol);
    let n = inst.n();
    let v = f.values();
    for x in 0..n {
        for y in 0..n {
            let ok = match class {
                PotentialClass::MultUpper => {
                    let bound = T::mul(inst.get(x, y), &v[y]);
                    !ctx.exceeds(&v[x], &bound, &bound)
                }
                PotentialClass::MultLower => {
                    let bound = T::mul(inst.get(x, y), &v[y]);
                    !ctx.exceeds(&bound, &v[x], &bound)
                }
                PotentialClass::Additive => {
                    let bound = T::add(inst.get(x, y), &v[y]);
                    let scale = T::add(&T::abs(inst.get(x, y)), &T::abs(&v[y]));
                    !ctx.exceeds(&v[x], &bound, &scale)
                }
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn require_positive_values<T: Entry>(values: &[T], member: usize) -> Result<(), Error> {
    for (i, v) in values.iter().enumerate() {
        if !(*v > T::zero()) {
            return Err(Error::NonPositivePotential { member, index: i });
        }
    }
    Ok(())
}

/// The column family of a solution: member `c` is the column vector
/// `x ↦ inst(x, c)`.
///
/// For multiplicative instances this requires strict positivity and a pass
/// of the upper product law; for additive instances, a pass of the triangle
/// law. Every returned member belongs to the matching class
/// ([`PotentialClass::MultUpper`] resp. [`PotentialClass::Additive`]), and
/// on finite sets the family attains the representation envelope.
pub fn canonical_family<T: Entry>(
    inst: &Instance<T>,
    tol: &Tolerance,
) -> Result<PotentialFamily<T>, Error> {
    let law = match inst.mode() {
        Mode::Multiplicative => Law::MultIneq,
        Mode::Additive => Law::Triangle,
    };
    if inst.mode() == Mode::Multiplicative {
        let n = inst.n();
        for (k, v) in inst.data().iter().enumerate() {
            if !(*v > T::zero()) {
                return Err(Error::NonPositiveEntry {
                    row: k / n,
                    col: k % n,
                });
            }
        }
    }
    if !validate(inst, law, tol)?.pass {
        return Err(Error::NotASolution { law });
    }
    let n = inst.n();
    let members = (0..n)
        .map(|c| {
            Potential::new((0..n).map(|x| inst.get(x, c).clone()).collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    PotentialFamily::new(inst.labels().to_vec(), members, inst.mode())
}

/// Pointwise envelope of member coboundaries.
///
/// - multiplicative, [`Direction::Sup`]: `R(a,b) = max_f f(a)/f(b)` — passes
///   the upper product law with unit diagonal;
/// - multiplicative, [`Direction::Inf`]: `R(a,b) = min_f f(a)/f(b)` — passes
///   the reverse law with unit diagonal;
/// - additive, [`Direction::Sup`]: `R(a,b) = max_φ (φ(a) − φ(b))` — passes
///   the triangle law with zero diagonal.
///
/// The additive lower envelope has no law in this family and is rejected.
/// Multiplicative members must be strictly positive. Float ratio scans run
/// in log domain; the stored value is one direct division.
pub fn reconstruct<T: Entry>(
    family: &PotentialFamily<T>,
    direction: Direction,
) -> Result<Instance<T>, Error> {
    if family.members().is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.mode() == Mode::Additive && direction == Direction::Inf {
        return Err(Error::UnsupportedReconstruction);
    }
    let n = family.n();
    let members = family.members();
    let mut data = Vec::with_capacity(n * n);
    match family.mode() {
        Mode::Multiplicative => {
            for (m, f) in members.iter().enumerate() {
                require_positive_values(f.values(), m)?;
            }
            // Log-domain scan for the extremal member, then one division.
            let logs: Option<Vec<Vec<f64>>> = T::LOG_DOMAIN.then(|| {
                members
                    .iter()
                    .map(|f| f.values().iter().map(T::ln_lossy).collect())
                    .collect()
            });
            for a in 0..n {
                for b in 0..n {
                    let pick = |want_max: bool| -> usize {
                        let mut best = 0usize;
                        if let Some(l) = &logs {
                            let mut best_v = l[0][a] - l[0][b];
                            for (m, lf) in l.iter().enumerate().skip(1) {
                                let v = lf[a] - lf[b];
                                if (want_max && v > best_v) || (!want_max && v < best_v) {
                                    best_v = v;
                                    best = m;
                                }
                            }
                        } else {
                            let ratio = |f: &Potential<T>| T::div(&f.values()[a], &f.values()[b]);
                            let mut best_v = ratio(&members[0]);
                            for (m, f) in members.iter().enumerate().skip(1) {
                                let v = ratio(f);
                                if (want_max && v > best_v) || (!want_max && v < best_v) {
                                    best_v = v;
                                    best = m;
                                }
                            }
                        }
                        best
                    };
                    let m = pick(direction == Direction::Sup);
                    let f = members[m].values();
                    data.push(T::div(&f[a], &f[b]));
                }
            }
        }
        Mode::Additive => {
            for a in 0..n {
                for b in 0..n {
                    let mut best = T::sub(&members[0].values()[a], &members[0].values()[b]);
                    for f in &members[1..] {
                        let v = T::sub(&f.values()[a], &f.values()[b]);
                        if v > best {
                            best = v;
                        }
                    }
                    data.push(best);
                }
            }
        }
    }
    Instance::from_flat(family.labels().to_vec(), data, family.mode())
}

/// Outcome of [`solve_equation`].
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome<T> {
    /// Every entry lies in the zero band: the identically-zero solution.
    Zero,
    /// The instance is the coboundary of this potential: `S(a,b)·f(b) = f(a)`
    /// for all pairs, with `f(x) = S(x, first label)`.
    Ratio(Potential<T>),
    /// Not an exact-equation solution.
    None,
}

/// Recover the generating potential of an exact-equation solution.
///
/// Anchors at index 0 — `f(x) = S(x, 0)`, so `f(0) = S(0,0)` — and verifies
/// `S(a,b)·f(b) = f(a)` over all pairs within slack. Any anchor works for
/// true solutions; the verification sweep rejects everything else. The
/// recovered potential is unique up to a scalar. Verification is
/// multiplication-only, so zero or sign-mixed entries are handled without
/// special cases.
pub fn solve_equation<T: Entry>(
    inst: &Instance<T>,
    tol: &Tolerance,
) -> Result<SolveOutcome<T>, Error> {
    if inst.mode() != Mode::Multiplicative {
        return Err(Error::ModeMismatch {
            left: Mode::Multiplicative,
            right: inst.mode(),
        });
    }
    let ctx = TolCtx::new(tol);
    if inst.data().iter().all(|v| ctx.is_zero(v)) {
        return Ok(SolveOutcome::Zero);
    }
    let n = inst.n();
    let f: Vec<T> = (0..n).map(|x| inst.get(x, 0).clone()).collect();
    for a in 0..n {
        for b in 0..n {
            let composed = T::mul(inst.get(a, b), &f[b]);
            if ctx.differs(&f[a], &composed, &composed) {
                return Ok(SolveOutcome::None);
            }
        }
    }
    Ok(SolveOutcome::Ratio(Potential::new(f)?))
}

/// Outcome of [`comparability_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparability {
    /// Entrywise equal within slack.
    Equal,
    /// Neither instance dominates the other.
    Incomparable,
    /// Comparable but unequal. Impossible for positive equation solutions
    /// (rigidity); reachable for sign-mixed ones — see `docs/findings.md`.
    Violation,
}

impl Comparability {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparability::Equal => "equal",
            Comparability::Incomparable => "incomparable",
            Comparability::Violation => "violation",
        }
    }
}

impl core::fmt::Display for Comparability {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rigidity probe for two exact-equation solutions on the same labels:
/// comparable solutions should be equal.
pub fn comparability_check<T: Entry>(
    s1: &Instance<T>,
    s2: &Instance<T>,
    tol: &Tolerance,
) -> Result<Comparability, Error> {
    if s1.labels() != s2.labels() {
        return Err(Error::LabelMismatch);
    }
    if s1.mode() != s2.mode() {
        return Err(Error::ModeMismatch {
            left: s1.mode(),
            right: s2.mode(),
        });
    }
    for s in [s1, s2] {
        if !validate(s, Law::MultEq, tol)?.pass {
            return Err(Error::NotASolution { law: Law::MultEq });
        }
    }
    let ctx = TolCtx::new(tol);
    let le = |a: &Instance<T>, b: &Instance<T>| {
        a.data()
            .iter()
            .zip(b.data())
            .all(|(x, y)| !ctx.exceeds(x, y, y))
    };
    let eq = s1
        .data()
        .iter()
        .zip(s2.data())
        .all(|(x, y)| ctx.approx_eq(x, y));
    if eq {
        Ok(Comparability::Equal)
    } else if le(s1, s2) || le(s2, s1) {
        Ok(Comparability::Violation)
    } else {
        Ok(Comparability::Incomparable)
    }
}
