//! The reverse product law F(x,z) ≥ F(x,y)·F(y,z): reduction to the upper
//! law by reciprocals, a diagonal/sign diagnostic, and the structure of the
//! zero set.
//!
//! Three facts drive this module:
//!
//! - A strictly positive F satisfies the reverse law exactly when 1/F
//!   satisfies the upper law — [`invert`] performs the reduction (it is an
//!   involution), letting all upper-law machinery apply to positive
//!   reverse-law solutions.
//! - Every reverse-law solution has diagonal values in [0, 1] (take
//!   x = y = z), and if for every pair (x,y) the row-x or column-y section
//!   satisfies the zero-crossing surrogate, the whole matrix is
//!   non-negative. [`fsp_audit`] reports both, flagging the impossible
//!   combination (hypothesis met, negative value present) as a theorem
//!   violation.
//! - For non-negative solutions, each zero anchor (a,b) satisfies the
//!   alternative "(a,x) is a zero or (x,b) is a zero, for every x", which
//!   forces the zero set to contain the full row of `a`, the full column of
//!   `b`, or a cross built from the positivity sets of that row and column.
//!   [`zero_structure`] classifies every anchor accordingly.

use alloc::vec::Vec;

use crate::analysis::section_has_z;
use crate::entry::{Entry, TolCtx};
use crate::instance::{Error, Instance, Mode, Tolerance};
use crate::validate::{validate, Law};

/// Entrywise reciprocal: maps reverse-law solutions to upper-law solutions
/// and back. Requires every entry strictly positive (beyond the zero band).
pub fn invert<T: Entry>(inst: &Instance<T>, tol: &Tolerance) -> Result<Instance<T>, Error> {
    if inst.mode() != Mode::Multiplicative {
        return Err(Error::ModeMismatch {
            left: Mode::Multiplicative,
            right: inst.mode(),
        });
    }
    let ctx = TolCtx::new(tol);
    let n = inst.n();
    for (k, v) in inst.data().iter().enumerate() {
        if !ctx.is_positive(v) {
            return Err(Error::NonPositiveEntry {
                row: k / n,
                col: k % n,
            });
        }
    }
    let one = T::one();
    let data = inst.data().iter().map(|v| T::div(&one, v)).collect();
    Instance::from_flat(inst.labels().to_vec(), data, Mode::Multiplicative)
}

/// Diagnostic profile of a reverse-law instance.
#[derive(Debug, Clone, PartialEq)]
pub struct FspReport<T> {
    /// Set when the instance fails the reverse law at the given tolerance;
    /// the remaining fields are still computed.
    pub not_a_solution: bool,
    /// Every diagonal entry lies in [-slack, 1+slack]. Must hold for every
    /// reverse-law solution.
    pub diag_in_unit_interval: bool,
    pub diag_min: T,
    pub diag_max: T,
    /// For every (x,y), the row-x section or the column-y section satisfies
    /// the zero-crossing surrogate. Equivalent finite form: all rows satisfy
    /// it, or all columns do.
    pub z_hypothesis: bool,
    /// No entry below the zero band.
    pub nonnegative: bool,
    /// Solution + hypothesis met + negative entry: must never occur.
    pub theorem_violation: bool,
}

/// Compute the reverse-law diagnostic profile.
pub fn fsp_audit<T: Entry>(inst: &Instance<T>, tol: &Tolerance) -> Result<FspReport<T>, Error> {
    if inst.mode() != Mode::Multiplicative {
        return Err(Error::ModeMismatch {
            left: Mode::Multiplicative,
            right: inst.mode(),
        });
    }
    let ctx = TolCtx::new(tol);
    let n = inst.n();
    let not_a_solution = !validate(inst, Law::ReverseIneq, tol)?.pass;

    let mut diag_min = inst.get(0, 0).clone();
    let mut diag_max = inst.get(0, 0).clone();
    for i in 1..n {
        let v = inst.get(i, i);
        if *v < diag_min {
            diag_min = v.clone();
        }
        if *v > diag_max {
            diag_max = v.clone();
        }
    }
    let one = T::one();
    let diag_in_unit_interval =
        ctx.is_nonnegative(&diag_min) && !ctx.exceeds(&diag_max, &one, &one);

    // ∀(x,y): rowZ(x) ∨ colZ(y) collapses to: all rows or all columns.
    let all_rows = (0..n).all(|i| section_has_z(&ctx, (0..n).map(|j| inst.get(i, j))));
    let all_cols = || (0..n).all(|j| section_has_z(&ctx, (0..n).map(|i| inst.get(i, j))));
    let z_hypothesis = all_rows || all_cols();

    let nonnegative = inst.data().iter().all(|v| ctx.is_nonnegative(v));
    let theorem_violation = !not_a_solution && z_hypothesis && !nonnegative;

    Ok(FspReport {
        not_a_solution,
        diag_in_unit_interval,
        diag_min,
        diag_max,
        z_hypothesis,
        nonnegative,
        theorem_violation,
    })
}

/// The zero pattern of a non-negative matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSet {
    /// All (row, col) pairs inside the zero band, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    /// `row_view[x]` lists the columns y with (x,y) in the zero set.
    pub row_view: Vec<Vec<usize>>,
}

impl ZeroSet {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.row_view[x].binary_search(&y).is_ok()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// How one zero anchor sits inside the zero set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FZKind {
    /// The anchor's full row is zero.
    RowContained,
    /// The anchor's full column is zero.
    ColumnContained,
    /// Neither line is contained; the positivity sets of the anchor's row
    /// (`u1`) and column (`u2`) are non-empty and the cross
    /// u1×{b} ∪ {a}×u2 lies inside the zero set.
    Cross { u1: Vec<usize>, u2: Vec<usize> },
    /// Some x has neither (a,x) nor (x,b) in the zero set. Impossible for
    /// genuine non-negative reverse-law solutions.
    AlternativeViolated { witness: usize },
}

/// Classification of one anchor of the zero set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FZOutcome {
    pub anchor: (usize, usize),
    pub kind: FZKind,
}

/// Full zero-set structure report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroReport {
    pub zero_set: ZeroSet,
    /// One outcome per anchor, in lexicographic anchor order.
    pub outcomes: Vec<FZOutcome>,
    pub row_contained: usize,
    pub column_contained: usize,
    pub cross: usize,
    pub violated: usize,
}

/// Classify every zero anchor of a non-negative multiplicative matrix.
///
/// Containment is tested row first (an all-zero matrix reports every anchor
/// as row-contained). The law itself is not re-validated here — the op is a
/// diagnostic usable on raw data — but for genuine non-negative reverse-law
/// solutions no anchor can come out `AlternativeViolated`; the claim oracle
/// checks exactly that.
pub fn zero_structure<T: Entry>(
    inst: &Instance<T>,
    tol: &Tolerance,
) -> Result<ZeroReport, Error> {
    if inst.mode() != Mode::Multiplicative {
        return Err(Error::ModeMismatch {
            left: Mode::Multiplicative,
            right: inst.mode(),
        });
    }
    let ctx = TolCtx::new(tol);
    let n = inst.n();
    for (k, v) in inst.data().iter().enumerate() {
        if !ctx.is_nonnegative(v) {
            return Err(Error::NegativeEntry {
                row: k / n,
                col: k % n,
            });
        }
    }

    let mut pairs = Vec::new();
    let mut row_view: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            if ctx.is_zero(inst.get(x, y)) {
                pairs.push((x, y));
                row_view[x].push(y);
            }
        }
    }
    let zero_set = ZeroSet { pairs, row_view };

    let mut outcomes = Vec::with_capacity(zero_set.len());
    let (mut rows, mut cols, mut crosses, mut violated) = (0, 0, 0, 0);
    for &(a, b) in &zero_set.pairs {
        let kind = classify_anchor(inst, &ctx, &zero_set, a, b);
        match kind {
            FZKind::RowContained => rows += 1,
            FZKind::ColumnContained => cols += 1,
            FZKind::Cross { .. } => crosses += 1,
            FZKind::AlternativeViolated { .. } => violated += 1,
        }
        outcomes.push(FZOutcome { anchor: (a, b), kind });
    }

    Ok(ZeroReport {
        zero_set,
        outcomes,
        row_contained: rows,
        column_contained: cols,
        cross: crosses,
        violated,
    })
}

fn classify_anchor<T: Entry>(
    inst: &Instance<T>,
    ctx: &TolCtx<T>,
    zeros: &ZeroSet,
    a: usize,
    b: usize,
) -> FZKind {
    let n = inst.n();
    // The alternative: every x has (a,x) or (x,b) in the zero set.
    for x in 0..n {
        if !zeros.contains(a, x) && !zeros.contains(x, b) {
            return FZKind::AlternativeViolated { witness: x };
        }
    }
    if zeros.row_view[a].len() == n {
        return FZKind::RowContained;
    }
    if (0..n).all(|x| zeros.contains(x, b)) {
        return FZKind::ColumnContained;
    }
    // Maximal witness sets: the positivity sets of row a and column b. The
    // alternative (already verified) forces the cross into the zero set.
    let u1: Vec<usize> = (0..n).filter(|&x| ctx.is_positive(inst.get(a, x))).collect();
    let u2: Vec<usize> = (0..n).filter(|&x| ctx.is_positive(inst.get(x, b))).collect();
    debug_assert!(!u1.is_empty() && !u2.is_empty());
    debug_assert!(u1.iter().all(|&x| zeros.contains(x, b)));
    debug_assert!(u2.iter().all(|&x| zeros.contains(a, x)));
    FZKind::Cross { u1, u2 }
}
