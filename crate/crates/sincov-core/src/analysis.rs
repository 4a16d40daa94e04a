//! Structural analysis of multiplicative solutions: sign/zero classification,
//! the two-sided entry estimate, the column-ratio tightening map, and the
//! extremal exact solutions lying below an inequality solution.
//!
//! Throughout, "solution" means an instance passing the upper product law
//! G(x,z) ≤ G(x,y)·G(y,z). Three constructions matter here:
//!
//! - [`audit`] computes the diagnostic profile of a matrix: positivity, the
//!   two-sided bound `[1/c, c]` with `c` the largest entry, the sandwich
//!   estimate `1/G(y,x) ≤ G(a,y)/G(a,x) ≤ G(x,y)`, and a per-section
//!   intermediate-value surrogate (does every row/column that spans zero
//!   actually contain a zero entry?).
//! - [`tilde`] computes the tightening map `G̃(x,y) = max_a G(a,y)/G(a,x)`,
//!   which squeezes a solution toward an exact-equation solution: it stays
//!   between `1/G*` and `G`, has unit diagonal, fixes unit-diagonal inputs,
//!   and still satisfies the upper law.
//! - [`extremal_solution`] picks the maximizing row index `a*` for a chosen
//!   pair `(x0, y0)` and returns the exact-equation solution
//!   `S(b,a) = G(a*,a)/G(a*,b)`, which agrees with `G̃` at `(x0,y0)` and is
//!   sandwiched between `1/G*` and `G` entrywise.
//!
//! Float ratio scans run in log domain so comparisons stay finite across
//! wide entry magnitudes; the value finally stored is a single direct
//! division of the chosen pair (one rounding step instead of ln/exp
//! round-trips). Exact mode does rational arithmetic throughout.

use alloc::string::String;
use alloc::vec::Vec;

use crate::entry::{Entry, TolCtx};
use crate::instance::{Error, Instance, Mode, Tolerance};
use crate::validate::{validate, Law};

/// Diagnostic profile of a multiplicative instance. Computed even for
/// matrices failing the upper law (`not_a_solution` is then set), so the
/// audit is usable on raw data.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport<T> {
    /// Set when the instance fails the upper product law at the given
    /// tolerance; all other fields are still computed.
    pub not_a_solution: bool,
    /// Some entry is ≤ zero_tol.
    pub has_nonpositive: bool,
    /// Some entry has |v| ≤ zero_tol.
    pub has_zero: bool,
    /// Every entry has |v| ≤ zero_tol.
    pub all_zero: bool,
    pub diag_min: T,
    pub diag_max: T,
    /// Largest entry, present when all entries are strictly positive: for
    /// positive solutions every entry then lies in [1/bound_c, bound_c].
    pub bound_c: Option<T>,
    /// Smallest entry ≥ 1/bound_c (within slack); present with `bound_c`.
    pub lower_bound_ok: Option<bool>,
    /// Two-sided estimate 1/G(y,x) ≤ G(a,y)/G(a,x) ≤ G(x,y) over all
    /// (a,x,y), checked in product form; present only for strictly
    /// positive matrices (the ratio estimate is undefined otherwise).
    pub sandwich_ok: Option<bool>,
    /// Every row and column section satisfies the zero-crossing surrogate:
    /// a section containing values on both sides of the zero band also
    /// contains a value inside it.
    pub z_property_sections: bool,
}

/// Compute the full diagnostic profile of a multiplicative instance.
pub fn audit<T: Entry>(inst: &Instance<T>, tol: &Tolerance) -> Result<AuditReport<T>, Error> {
    require_mode(inst, Mode::Multiplicative)?;
    let ctx = TolCtx::new(tol);
    let n = inst.n();

    let not_a_solution = !validate(inst, Law::MultIneq, tol)?.pass;

    let mut has_nonpositive = false;
    let mut has_zero = false;
    let mut all_zero = true;
    let mut min_entry = inst.get(0, 0).clone();
    let mut max_entry = inst.get(0, 0).clone();
    for v in inst.data() {
        if !ctx.is_positive(v) {
            has_nonpositive = true;
        }
        if ctx.is_zero(v) {
            has_zero = true;
        } else {
            all_zero = false;
        }
        if *v < min_entry {
            min_entry = v.clone();
        }
        if *v > max_entry {
            max_entry = v.clone();
        }
    }

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

    let strictly_positive = !has_nonpositive;
    let (bound_c, lower_bound_ok, sandwich_ok) = if strictly_positive {
        // min ≥ 1/c checked as min·c ≥ 1: no division near the zero band.
        let prod = T::mul(&min_entry, &max_entry);
        let lower_ok = !ctx.exceeds(&T::one(), &prod, &prod);
        (
            Some(max_entry.clone()),
            Some(lower_ok),
            Some(sandwich_holds(inst, &ctx)),
        )
    } else {
        (None, None, None)
    };

    let mut z_property_sections = true;
    for i in 0..n {
        let row_ok = section_has_z(&ctx, (0..n).map(|j| inst.get(i, j)));
        let col_ok = section_has_z(&ctx, (0..n).map(|j| inst.get(j, i)));
        if !row_ok || !col_ok {
            z_property_sections = false;
            break;
        }
    }

    Ok(AuditReport {
        not_a_solution,
        has_nonpositive,
        has_zero,
        all_zero,
        diag_min,
        diag_max,
        bound_c,
        lower_bound_ok,
        sandwich_ok,
        z_property_sections,
    })
}

/// Zero-crossing surrogate for one section: if values occur strictly on both
/// sides of the zero band, some value must lie inside the band.
pub(crate) fn section_has_z<'a, T: Entry + 'a>(
    ctx: &TolCtx<T>,
    values: impl Iterator<Item = &'a T>,
) -> bool {
    let mut strict_neg = false;
    let mut strict_pos = false;
    let mut has_zero = false;
    for v in values {
        if ctx.is_zero(v) {
            has_zero = true;
        } else if ctx.is_positive(v) {
            strict_pos = true;
        } else {
            strict_neg = true;
        }
    }
    !(strict_neg && strict_pos && !has_zero)
}

/// Both halves of the estimate, in product form (strictly positive input):
/// G(a,x) ≤ G(a,y)·G(y,x) and G(a,y) ≤ G(x,y)·G(a,x).
fn sandwich_holds<T: Entry>(inst: &Instance<T>, ctx: &TolCtx<T>) -> bool {
    let n = inst.n();
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                let lower = T::mul(inst.get(a, y), inst.get(y, x));
                if ctx.exceeds(inst.get(a, x), &lower, &lower) {
                    return false;
                }
                let upper = T::mul(inst.get(x, y), inst.get(a, x));
                if ctx.exceeds(inst.get(a, y), &upper, &upper) {
                    return false;
                }
            }
        }
    }
    true
}

/// Natural logs of all entries, for float-mode ratio scans; `None` in exact
/// mode, where ratios are compared directly.
fn ln_matrix<T: Entry>(inst: &Instance<T>) -> Option<Vec<f64>> {
    T::LOG_DOMAIN.then(|| inst.data().iter().map(T::ln_lossy).collect())
}

/// Index maximizing G(a,y)/G(a,x) over `a`, ties to the lowest index.
fn argmax_ratio<T: Entry>(
    inst: &Instance<T>,
    logs: &Option<Vec<f64>>,
    x: usize,
    y: usize,
) -> usize {
    let n = inst.n();
    let mut best = 0usize;
    if let Some(l) = logs {
        let mut best_v = l[y] - l[x];
        for a in 1..n {
            let v = l[a * n + y] - l[a * n + x];
            if v > best_v {
                best_v = v;
                best = a;
            }
        }
    } else {
        let mut best_v = T::div(inst.get(0, y), inst.get(0, x));
        for a in 1..n {
            let v = T::div(inst.get(a, y), inst.get(a, x));
            if v > best_v {
                best_v = v;
                best = a;
            }
        }
    }
    best
}

fn require_mode<T: Entry>(inst: &Instance<T>, expected: Mode) -> Result<(), Error> {
    if inst.mode() != expected {
        return Err(Error::ModeMismatch {
            left: expected,
            right: inst.mode(),
        });
    }
    Ok(())
}

fn require_strictly_positive<T: Entry>(inst: &Instance<T>) -> Result<(), Error> {
    let n = inst.n();
    for (k, v) in inst.data().iter().enumerate() {
        if !(*v > T::zero()) {
            return Err(Error::NonPositiveEntry {
                row: k / n,
                col: k % n,
            });
        }
    }
    Ok(())
}

/// The tightening map: `out(x,y) = max_a G(a,y)/G(a,x)`.
///
/// On solutions of the upper law this satisfies `1/G* ≤ out ≤ G`, has unit
/// diagonal, fixes unit-diagonal inputs, and passes the upper law itself.
/// Requires strictly positive entries (ratios must be defined); the input
/// need not be a solution — the guarantees just don't apply then.
pub fn tilde<T: Entry>(inst: &Instance<T>) -> Result<Instance<T>, Error> {
    require_mode(inst, Mode::Multiplicative)?;
    require_strictly_positive(inst)?;
    let n = inst.n();
    let logs = ln_matrix(inst);
    let mut data = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let a = argmax_ratio(inst, &logs, x, y);
            data.push(T::div(inst.get(a, y), inst.get(a, x)));
        }
    }
    // from_flat re-checks finiteness: a wildly non-solution float input can
    // overflow the winning ratio, which surfaces as NonFinite here.
    Instance::from_flat(inst.labels().to_vec(), data, Mode::Multiplicative)
}

/// Result of [`extremal_solution`]: the exact-equation solution plus the
/// maximizing index it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalOutcome<T> {
    pub solution: Instance<T>,
    /// Label of the maximizing row `a*`.
    pub witness: String,
    pub witness_index: usize,
}

/// Build the extremal exact solution below `inst` touching it at `(x0, y0)`.
///
/// `a* = argmax_a G(a,y0)/G(a,x0)` (ties to the lowest index), and the
/// output is `S(b,a) = G(a*,a)/G(a*,b)` — an exact ratio matrix, so it
/// satisfies the product equation (strictly, in exact mode). Guarantees on
/// solutions: `S(x0,y0)` equals the tightening map at `(x0,y0)`, and
/// `1/G* ≤ S ≤ G` entrywise; when the diagonal is all ones additionally
/// `S(x0,y0) = G(x0,y0)`.
pub fn extremal_solution<T: Entry>(
    inst: &Instance<T>,
    x0: &str,
    y0: &str,
    tol: &Tolerance,
) -> Result<ExtremalOutcome<T>, Error> {
    require_mode(inst, Mode::Multiplicative)?;
    let xi = inst.index_of(x0).ok_or_else(|| Error::UnknownLabel {
        label: x0.into(),
    })?;
    let yi = inst.index_of(y0).ok_or_else(|| Error::UnknownLabel {
        label: y0.into(),
    })?;
    require_strictly_positive(inst)?;
    if !validate(inst, Law::MultIneq, tol)?.pass {
        return Err(Error::NotASolution { law: Law::MultIneq });
    }

    let n = inst.n();
    let logs = ln_matrix(inst);
    let a_star = argmax_ratio(inst, &logs, xi, yi);
    let mut data = Vec::with_capacity(n * n);
    for b in 0..n {
        for a in 0..n {
            data.push(T::div(inst.get(a_star, a), inst.get(a_star, b)));
        }
    }
    let solution = Instance::from_flat(inst.labels().to_vec(), data, Mode::Multiplicative)?;
    Ok(ExtremalOutcome {
        witness: inst.labels()[a_star].clone(),
        witness_index: a_star,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_rational::BigRational;

    fn mat(rows: Vec<Vec<f64>>) -> Instance {
        Instance::with_default_labels(rows, Mode::Multiplicative).unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn tilde_tightens_the_symmetric_example() {
        // Frozen by exact enumeration: entry (0,1) = max(3/2, 4/3) = 3/2,
        // entry (1,0) = max(2/3, 3/4) = 3/4.
        let g = mat(vec![vec![2.0, 3.0], vec![3.0, 4.0]]).to_exact();
        let t = tilde(&g).unwrap();
        assert_eq!(*t.get(0, 0), rat(1, 1));
        assert_eq!(*t.get(0, 1), rat(3, 2));
        assert_eq!(*t.get(1, 0), rat(3, 4));
        assert_eq!(*t.get(1, 1), rat(1, 1));
        // Output still satisfies the upper law, strictly.
        assert!(validate(&t, Law::MultIneq, &Tolerance::exact()).unwrap().pass);
        // Sandwich (i): 1/G* ≤ G̃ ≤ G entrywise.
        for x in 0..2 {
            for y in 0..2 {
                let recip = BigRational::new(1.into(), 1.into()) / g.get(y, x);
                assert!(recip <= *t.get(x, y));
                assert!(*t.get(x, y) <= *g.get(x, y));
            }
        }
    }

    #[test]
    fn tilde_float_matches_exact_within_tolerance() {
        let g = mat(vec![vec![2.0, 3.0], vec![3.0, 4.0]]);
        let t = tilde(&g).unwrap();
        assert!((t.get(0, 1) - 1.5).abs() < 1e-12);
        assert!((t.get(1, 0) - 0.75).abs() < 1e-12);
        assert_eq!(*t.get(0, 0), 1.0); // diagonal division is v/v = exactly 1
        assert_eq!(*t.get(1, 1), 1.0);
    }

    #[test]
    fn tilde_fixes_unit_diagonal_solutions() {
        // Exact-mode fixed points, bitwise.
        for rows in [
            vec![vec![1.0, 4.0], vec![1.0, 1.0]],
            vec![vec![1.0, 2.0], vec![0.5, 1.0]],
        ] {
            let g = mat(rows).to_exact();
            assert_eq!(tilde(&g).unwrap(), g);
        }
    }

    #[test]
    fn tilde_rejects_nonpositive_entries() {
        let g = mat(vec![vec![1.0, 0.0], vec![1.0, 1.0]]);
        assert!(matches!(
            tilde(&g).unwrap_err(),
            Error::NonPositiveEntry { row: 0, col: 1 }
        ));
    }

    #[test]
    fn audit_positive_solution() {
        let g = mat(vec![vec![1.0, 2.0], vec![0.5, 1.0]]);
        let rep = audit(&g, &Tolerance::default()).unwrap();
        assert!(!rep.not_a_solution);
        assert!(!rep.has_nonpositive);
        assert!(!rep.has_zero);
        assert_eq!(rep.diag_min, 1.0);
        assert_eq!(rep.diag_max, 1.0);
        assert_eq!(rep.bound_c, Some(2.0));
        assert_eq!(rep.lower_bound_ok, Some(true));
        assert_eq!(rep.sandwich_ok, Some(true));
        assert!(rep.z_property_sections);
    }

    #[test]
    fn audit_all_zero_matrix() {
        let g = mat(vec![vec![0.0; 3]; 3]);
        let rep = audit(&g, &Tolerance::default()).unwrap();
        assert!(!rep.not_a_solution); // 0 ≤ 0·0 holds
        assert!(rep.has_nonpositive && rep.has_zero && rep.all_zero);
        assert_eq!(rep.bound_c, None);
        assert_eq!(rep.sandwich_ok, None);
        assert!(rep.z_property_sections);
    }

    #[test]
    fn audit_sign_mixed_blocks() {
        // Three singleton blocks: 1 on the diagonal, -1 off it. Passes the
        // upper law but its sections span zero with no zero entry.
        let g = mat(vec![
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ]);
        let rep = audit(&g, &Tolerance::default()).unwrap();
        assert!(!rep.not_a_solution);
        assert!(rep.has_nonpositive);
        assert!(!rep.has_zero);
        assert!(!rep.z_property_sections);
        assert_eq!(rep.bound_c, None);
    }

    #[test]
    fn audit_constant_negative_matrix() {
        let g = mat(vec![vec![-1.0, -1.0], vec![-1.0, -1.0]]);
        let rep = audit(&g, &Tolerance::default()).unwrap();
        assert!(!rep.not_a_solution); // -1 ≤ (-1)·(-1)
        assert!(rep.has_nonpositive && !rep.has_zero);
        assert!(rep.z_property_sections); // no section spans zero
    }

    #[test]
    fn audit_flags_non_solutions_but_still_reports() {
        let g = mat(vec![vec![1.0, 3.0], vec![0.2, 1.0]]);
        let rep = audit(&g, &Tolerance::default()).unwrap();
        assert!(rep.not_a_solution);
        assert_eq!(rep.bound_c, Some(3.0));
        assert_eq!(rep.sandwich_ok, Some(false));
    }

    #[test]
    fn audit_requires_multiplicative_mode() {
        let h = Instance::with_default_labels(vec![vec![0.0]], Mode::Additive).unwrap();
        assert!(matches!(
            audit(&h, &Tolerance::default()),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn extremal_touches_at_the_anchor() {
        // Frozen: a* = 0, S = [[1,4],[1/4,1]], S(0,1) = G(0,1) = 4.
        let g = mat(vec![vec![1.0, 4.0], vec![1.0, 1.0]]).to_exact();
        let out = extremal_solution(&g, "x0", "x1", &Tolerance::exact()).unwrap();
        assert_eq!(out.witness_index, 0);
        assert_eq!(out.witness, "x0");
        let s = &out.solution;
        assert_eq!(*s.get(0, 1), rat(4, 1));
        assert_eq!(*s.get(1, 0), rat(1, 4));
        assert!(validate(s, Law::MultEq, &Tolerance::exact()).unwrap().pass);
        assert_eq!(s.get(0, 1), g.get(0, 1)); // unit diagonal ⇒ touch equals G
    }

    #[test]
    fn extremal_without_unit_diagonal_stays_strictly_below() {
        // Frozen: S = [[1,3/2],[2/3,1]]; S(0,0) = 1 ≠ G(0,0) = 2 — the
        // unit-diagonal hypothesis cannot be dropped.
        let g = mat(vec![vec![2.0, 3.0], vec![3.0, 4.0]]).to_exact();
        let out = extremal_solution(&g, "x0", "x0", &Tolerance::exact()).unwrap();
        let s = &out.solution;
        assert_eq!(out.witness_index, 0);
        assert_eq!(*s.get(0, 0), rat(1, 1));
        assert_eq!(*s.get(0, 1), rat(3, 2));
        assert_eq!(*s.get(1, 0), rat(2, 3));
        assert_ne!(s.get(0, 0), g.get(0, 0));
        // Sandwich: 1/G* ≤ S ≤ G entrywise.
        for x in 0..2 {
            for y in 0..2 {
                let recip = BigRational::new(1.into(), 1.into()) / g.get(y, x);
                assert!(recip <= *s.get(x, y) && *s.get(x, y) <= *g.get(x, y));
            }
        }
    }

    #[test]
    fn extremal_fixes_exact_ratio_matrices() {
        // S(a,b) = f(a)/f(b) with f = (2,1): any anchor reproduces G.
        let g = mat(vec![vec![1.0, 2.0], vec![0.5, 1.0]]).to_exact();
        for (x0, y0) in [("x0", "x0"), ("x0", "x1"), ("x1", "x0")] {
            let out = extremal_solution(&g, x0, y0, &Tolerance::exact()).unwrap();
            assert_eq!(out.solution, g);
        }
    }

    #[test]
    fn extremal_rejects_bad_inputs() {
        let g = mat(vec![vec![1.0, 3.0], vec![0.2, 1.0]]);
        assert!(matches!(
            extremal_solution(&g, "x0", "x1", &Tolerance::default()),
            Err(Error::NotASolution { law: Law::MultIneq })
        ));
        let ok = mat(vec![vec![1.0, 2.0], vec![0.5, 1.0]]);
        assert!(matches!(
            extremal_solution(&ok, "nope", "x1", &Tolerance::default()),
            Err(Error::UnknownLabel { .. })
        ));
    }
}
