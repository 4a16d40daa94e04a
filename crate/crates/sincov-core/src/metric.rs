//! Distance-flavored operations on additive instances: the exp/ln bridge
//! between additive and multiplicative laws, a Lipschitz-style audit of the
//! averaged two-way bound, and the quotient that merges points at mutual
//! distance zero.

use alloc::vec::Vec;

use crate::entry::{Entry, TolCtx};
use crate::instance::{Error, Instance, Mode, Tolerance};
use crate::represent::{member_of, Potential, PotentialClass};
use crate::validate::{validate, Law};

/// Map an additive instance through `exp`, entrywise, producing a strictly
/// positive multiplicative instance. Triangle-valid input becomes upper-law
/// valid output (up to float rounding); a zero diagonal becomes an exact
/// unit diagonal. Fails with [`Error::NonFinite`] when an entry overflows.
pub fn exp_bridge(inst: &Instance<f64>) -> Result<Instance<f64>, Error> {
    if inst.mode() != Mode::Additive {
        return Err(Error::ModeMismatch {
            left: Mode::Additive,
            right: inst.mode(),
        });
    }
    let data = inst
        .data()
        .iter()
        .map(|v| <f64 as Entry>::from_ln(*v))
        .collect();
    Instance::from_flat(inst.labels().to_vec(), data, Mode::Multiplicative)
}

/// Map a strictly positive multiplicative instance through `ln`, entrywise,
/// producing an additive instance. Inverse of [`exp_bridge`] up to float
/// rounding; a unit diagonal becomes an exact zero diagonal.
pub fn ln_bridge(inst: &Instance<f64>) -> Result<Instance<f64>, Error> {
    if inst.mode() != Mode::Multiplicative {
        return Err(Error::ModeMismatch {
            left: Mode::Multiplicative,
            right: inst.mode(),
        });
    }
    let n = inst.n();
    for (k, v) in inst.data().iter().enumerate() {
        if !(*v > 0.0) {
            return Err(Error::NonPositiveEntry {
                row: k / n,
                col: k % n,
            });
        }
    }
    let data = inst
        .data()
        .iter()
        .map(|v| <f64 as Entry>::ln_lossy(v))
        .collect();
    Instance::from_flat(inst.labels().to_vec(), data, Mode::Additive)
}

/// One pair exceeding the averaged two-way bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadViolation<T> {
    pub a: usize,
    pub b: usize,
    /// `|phi(a) - phi(b)|`.
    pub delta: T,
    /// `(H(a, b) + H(b, a)) / 2`.
    pub bound: T,
}

/// Outcome of [`lipschitz_audit`]: whether every unordered pair satisfies
/// `|phi(a) - phi(b)| <= (H(a, b) + H(b, a)) / 2`, with the exceptions.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzReport<T> {
    pub pass: bool,
    pub violations: Vec<SpreadViolation<T>>,
}

/// Audit the averaged two-way bound for a member potential of an additive
/// instance. The bound is an audit target, not a theorem: members of the
/// one-sided class can exceed it on asymmetric instances (see the crate's
/// findings notes), so this reports rather than asserts.
///
/// Preconditions: `inst` is additive, the lengths agree, and `phi` is a
/// member of the additive class ([`Error::NotAMember`] otherwise).
pub fn lipschitz_audit<T: Entry>(
    phi: &Potential<T>,
    inst: &Instance<T>,
    tol: &Tolerance,
) -> Result<LipschitzReport<T>, Error> {
    if inst.mode() != Mode::Additive {
        return Err(Error::ModeMismatch {
            left: Mode::Additive,
            right: inst.mode(),
        });
    }
    if phi.len() != inst.n() {
        return Err(Error::SizeMismatch {
            left: phi.len(),
            right: inst.n(),
        });
    }
    if !member_of(phi, inst, PotentialClass::Additive, tol)? {
        return Err(Error::NotAMember);
    }
    let ctx = TolCtx::new(tol);
    let two = T::add(&T::one(), &T::one());
    let mut violations = Vec::new();
    for a in 0..inst.n() {
        for b in (a + 1)..inst.n() {
            let delta = T::abs(&T::sub(&phi.values()[a], &phi.values()[b]));
            let bound = T::div(&T::add(inst.get(a, b), inst.get(b, a)), &two);
            if ctx.exceeds(&delta, &bound, &bound) {
                violations.push(SpreadViolation {
                    a,
                    b,
                    delta,
                    bound,
                });
            }
        }
    }
    Ok(LipschitzReport {
        pass: violations.is_empty(),
        violations,
    })
}

/// Result of [`quotient`]: a partition of the points into classes at mutual
/// distance zero, and the instance induced on class representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMap<T: Entry> {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    reduced: Instance<T>,
}

impl<T: Entry> QuotientMap<T> {
    /// Class index of each original point.
    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    /// Original point indices per class, each sorted ascending; the first
    /// element is the representative.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Instance induced on the representatives (entries copied verbatim
    /// from the input, labels taken from the representatives).
    pub fn reduced(&self) -> &Instance<T> {
        &self.reduced
    }
}

/// Merge points at mutual distance zero: `x ~ y` when both `H(x, y)` and
/// `H(y, x)` lie in the zero band. On triangle-valid input with a zero
/// diagonal this is an equivalence relation, and rows/columns of merged
/// points agree, so the induced instance is well defined; representatives
/// are the lowest index of each class, classes are discovered in index
/// order.
///
/// One-way zero distances do **not** merge: an asymmetric instance can keep
/// distinct points at distance zero in one direction, and they survive into
/// the reduced instance.
///
/// Preconditions: additive mode, triangle law passes
/// ([`Error::NotASolution`]), diagonal within the zero band
/// ([`Error::NonzeroDiagonal`]).
pub fn quotient<T: Entry>(
    inst: &Instance<T>,
    tol: &Tolerance,
) -> Result<QuotientMap<T>, Error> {
    if inst.mode() != Mode::Additive {
        return Err(Error::ModeMismatch {
            left: Mode::Additive,
            right: inst.mode(),
        });
    }
    let ctx = TolCtx::new(tol);
    let n = inst.n();
    for i in 0..n {
        if !ctx.is_zero(inst.get(i, i)) {
            return Err(Error::NonzeroDiagonal { index: i });
        }
    }
    if !validate(inst, Law::Triangle, tol)?.pass {
        return Err(Error::NotASolution {
            law: Law::Triangle,
        });
    }
    let mut class_of = Vec::with_capacity(n);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let found = classes.iter().position(|class| {
            let r = class[0];
            ctx.is_zero(inst.get(r, x)) && ctx.is_zero(inst.get(x, r))
        });
        match found {
            Some(c) => {
                class_of.push(c);
                classes[c].push(x);
            }
            None => {
                class_of.push(classes.len());
                classes.push(alloc::vec![x]);
            }
        }
    }
    let labels: Vec<_> = classes
        .iter()
        .map(|class| inst.labels()[class[0]].clone())
        .collect();
    let mut data = Vec::with_capacity(classes.len() * classes.len());
    for ci in &classes {
        for cj in &classes {
            data.push(inst.get(ci[0], cj[0]).clone());
        }
    }
    let reduced = Instance::from_flat(labels, data, Mode::Additive)?;
    Ok(QuotientMap {
        class_of,
        classes,
        reduced,
    })
}
