//! Law validators: sweep all ordered triples (x, y, z) and report every
//! composition failure.
//!
//! Four laws are supported, two per composition mode:
//!
//! | id            | mode           | constraint on (x, y, z)          |
//! |---------------|----------------|----------------------------------|
//! | `mult-eq`     | multiplicative | S(x,z) = S(x,y)·S(y,z)           |
//! | `mult-ineq`   | multiplicative | G(x,z) ≤ G(x,y)·G(y,z)           |
//! | `reverse-ineq`| multiplicative | F(x,z) ≥ F(x,y)·F(y,z)           |
//! | `triangle`    | additive       | H(x,z) ≤ H(x,y)+H(y,z)           |
//!
//! A triple is flagged when the constraint fails beyond the relative slack
//! `rel · max(1, scale)`, where `scale` is the magnitude of the composite
//! side (the product, or |H(x,y)|+|H(y,z)| for the triangle law). Violations
//! come out in lexicographic (x, y, z) order so reports are deterministic.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::entry::{Entry, TolCtx};
use crate::instance::{Error, Instance, Mode, Tolerance};

/// Identifier of one of the four supported laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    MultEq,
    MultIneq,
    ReverseIneq,
    Triangle,
}

impl Law {
    pub fn as_str(self) -> &'static str {
        match self {
            Law::MultEq => "mult-eq",
            Law::MultIneq => "mult-ineq",
            Law::ReverseIneq => "reverse-ineq",
            Law::Triangle => "triangle",
        }
    }

    /// Composition mode instances of this law must carry.
    pub fn required_mode(self) -> Mode {
        match self {
            Law::Triangle => Mode::Additive,
            _ => Mode::Multiplicative,
        }
    }
}

impl core::fmt::Display for Law {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Law {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "mult-eq" => Ok(Law::MultEq),
            "mult-ineq" => Ok(Law::MultIneq),
            "reverse-ineq" => Ok(Law::ReverseIneq),
            "triangle" => Ok(Law::Triangle),
            other => Err(Error::UnknownMode {
                name: other.to_string(),
            }),
        }
    }
}

/// One failed triple. `lhs` is the side that exceeded its bound (for the
/// equation law, the left-hand side S(x,z)); `gap` is the slack-normalized
/// excess `(lhs - rhs) / max(1, scale)`, made absolute for the equation law.
/// A recorded violation always has `gap > rel`.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation<T> {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub lhs: T,
    pub rhs: T,
    pub gap: T,
}

/// Outcome of a full triple sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport<T> {
    pub law: Law,
    pub pass: bool,
    /// First violations in lexicographic order, possibly capped.
    pub violations: Vec<Violation<T>>,
    /// Total number of violating triples, counted past any cap.
    pub total_violations: usize,
    /// Always n³: the sweep never exits early.
    pub checked_triples: usize,
}

/// Check `inst` against `law`, reporting every violating triple.
pub fn validate<T: Entry>(
    inst: &Instance<T>,
    law: Law,
    tol: &Tolerance,
) -> Result<ViolationReport<T>, Error> {
    validate_capped(inst, law, tol, None)
}

/// [`validate`] with an optional cap on the number of retained violation
/// records. Counting continues past the cap; `checked_triples` still covers
/// the whole cube.
pub fn validate_capped<T: Entry>(
    inst: &Instance<T>,
    law: Law,
    tol: &Tolerance,
    max_violations: Option<usize>,
) -> Result<ViolationReport<T>, Error> {
    if inst.mode() != law.required_mode() {
        return Err(Error::LawModeMismatch {
            law,
            mode: inst.mode(),
        });
    }
    let ctx = TolCtx::new(tol);
    let n = inst.n();
    let cap = max_violations.unwrap_or(usize::MAX);
    let mut violations = Vec::new();
    let mut total = 0usize;

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if let Some(v) = check_triple(inst, law, &ctx, x, y, z) {
                    total += 1;
                    if violations.len() < cap {
                        violations.push(v);
                    }
                }
            }
        }
    }

    Ok(ViolationReport {
        law,
        pass: total == 0,
        violations,
        total_violations: total,
        checked_triples: n * n * n,
    })
}

/// Evaluate one triple; `None` when the constraint holds within slack.
fn check_triple<T: Entry>(
    inst: &Instance<T>,
    law: Law,
    ctx: &TolCtx<T>,
    x: usize,
    y: usize,
    z: usize,
) -> Option<Violation<T>> {
    let direct = inst.get(x, z);
    match law {
        Law::MultIneq => {
            let composite = T::mul(inst.get(x, y), inst.get(y, z));
            ctx.exceeds(direct, &composite, &composite)
                .then(|| Violation {
                    x,
                    y,
                    z,
                    gap: ctx.gap(direct, &composite, &composite),
                    lhs: direct.clone(),
                    rhs: composite,
                })
        }
        Law::ReverseIneq => {
            // The offending (larger) side is the composite product.
            let composite = T::mul(inst.get(x, y), inst.get(y, z));
            ctx.exceeds(&composite, direct, &composite)
                .then(|| Violation {
                    x,
                    y,
                    z,
                    gap: ctx.gap(&composite, direct, &composite),
                    lhs: composite.clone(),
                    rhs: direct.clone(),
                })
        }
        Law::MultEq => {
            let composite = T::mul(inst.get(x, y), inst.get(y, z));
            ctx.differs(direct, &composite, &composite)
                .then(|| Violation {
                    x,
                    y,
                    z,
                    gap: T::abs(&ctx.gap(direct, &composite, &composite)),
                    lhs: direct.clone(),
                    rhs: composite,
                })
        }
        Law::Triangle => {
            let composite = T::add(inst.get(x, y), inst.get(y, z));
            let scale = T::add(&T::abs(inst.get(x, y)), &T::abs(inst.get(y, z)));
            ctx.exceeds(direct, &composite, &scale).then(|| Violation {
                x,
                y,
                z,
                gap: ctx.gap(direct, &composite, &scale),
                lhs: direct.clone(),
                rhs: composite,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Mode;
    use alloc::vec;

    fn mat(rows: Vec<Vec<f64>>, mode: Mode) -> Instance {
        Instance::with_default_labels(rows, mode).unwrap()
    }

    #[test]
    fn ratio_matrix_satisfies_equation() {
        // S(a,b) = f(a)/f(b) with f = (2, 1, 5).
        let f = [2.0, 1.0, 5.0];
        let rows = (0..3)
            .map(|a| (0..3).map(|b| f[a] / f[b]).collect())
            .collect();
        let s = mat(rows, Mode::Multiplicative);
        let rep = validate(&s, Law::MultEq, &Tolerance::default()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.checked_triples, 27);
        // The equation implies both inequalities.
        assert!(validate(&s, Law::MultIneq, &Tolerance::default()).unwrap().pass);
        assert!(validate(&s, Law::ReverseIneq, &Tolerance::default()).unwrap().pass);
    }

    #[test]
    fn sum_matrix_on_two_points_passes_upper_law() {
        // G(a,b) = a + b over {1, 2}: a valid non-diag-1 solution.
        let g = mat(vec![vec![2.0, 3.0], vec![3.0, 4.0]], Mode::Multiplicative);
        assert!(validate(&g, Law::MultIneq, &Tolerance::default()).unwrap().pass);
    }

    #[test]
    fn violations_come_out_in_lex_order() {
        // Frozen by exact-fraction enumeration: violations at (0,1,0) and
        // (1,0,1), both with lhs 1 vs composite 3/5.
        let g = mat(vec![vec![1.0, 3.0], vec![0.2, 1.0]], Mode::Multiplicative);
        let rep = validate(&g, Law::MultIneq, &Tolerance::default()).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.total_violations, 2);
        let v0 = &rep.violations[0];
        assert_eq!((v0.x, v0.y, v0.z), (0, 1, 0));
        assert_eq!(v0.lhs, 1.0);
        assert!((v0.rhs - 0.6).abs() < 1e-15);
        assert!(v0.gap > 0.0);
        let v1 = &rep.violations[1];
        assert_eq!((v1.x, v1.y, v1.z), (1, 0, 1));
    }

    #[test]
    fn cap_truncates_list_but_not_count() {
        let g = mat(vec![vec![1.0, 3.0], vec![0.2, 1.0]], Mode::Multiplicative);
        let rep = validate_capped(&g, Law::MultIneq, &Tolerance::default(), Some(1)).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.total_violations, 2);
        assert!(!rep.pass);
    }

    #[test]
    fn reverse_law_flags_the_opposite_direction() {
        // F(a,b) = (a-1)/b on the grid {1,2,3} — frozen oracle matrix.
        let f = mat(
            vec![
                vec![0.0, 0.0, 0.0],
                vec![1.0, 0.5, 1.0 / 3.0],
                vec![2.0, 1.0, 2.0 / 3.0],
            ],
            Mode::Multiplicative,
        );
        assert!(validate(&f, Law::ReverseIneq, &Tolerance::default()).unwrap().pass);
        // A diagonal entry above 1 cannot satisfy F(x,x) >= F(x,x)^2.
        let bad = mat(vec![vec![1.5, 0.1], vec![0.1, 0.5]], Mode::Multiplicative);
        let rep = validate(&bad, Law::ReverseIneq, &Tolerance::default()).unwrap();
        assert!(!rep.pass);
        let v = &rep.violations[0];
        assert_eq!((v.x, v.y, v.z), (0, 0, 0));
        assert_eq!(v.lhs, 2.25); // the composite product is the offending side
        assert_eq!(v.rhs, 1.5);
    }

    #[test]
    fn triangle_law_on_additive_instances() {
        let h = mat(vec![vec![0.0, 1.0], vec![2.0, 0.0]], Mode::Additive);
        assert!(validate(&h, Law::Triangle, &Tolerance::default()).unwrap().pass);
        let bad = mat(vec![vec![0.0, 5.0], vec![1.0, 0.0]], Mode::Additive);
        // 5 > H(0,1)+H(1,1) = 5? no: via y=1, H(0,1)=5 <= 5+0 holds; the law
        // fails only through shorter detours — here there are none, so add one.
        assert!(validate(&bad, Law::Triangle, &Tolerance::default()).unwrap().pass);
        let worse = mat(
            vec![
                vec![0.0, 5.0, 1.0],
                vec![9.0, 0.0, 9.0],
                vec![9.0, 1.0, 0.0],
            ],
            Mode::Additive,
        );
        let rep = validate(&worse, Law::Triangle, &Tolerance::default()).unwrap();
        assert!(!rep.pass);
        // (0, 2, 1): 5 > 1 + 1.
        let v = &rep.violations[0];
        assert_eq!((v.x, v.y, v.z), (0, 2, 1));
        assert_eq!(v.lhs, 5.0);
        assert_eq!(v.rhs, 2.0);
    }

    #[test]
    fn law_mode_mismatch_is_a_usage_error() {
        let g = mat(vec![vec![1.0]], Mode::Multiplicative);
        assert!(matches!(
            validate(&g, Law::Triangle, &Tolerance::default()),
            Err(Error::LawModeMismatch { .. })
        ));
        let h = mat(vec![vec![0.0]], Mode::Additive);
        assert!(matches!(
            validate(&h, Law::MultIneq, &Tolerance::default()),
            Err(Error::LawModeMismatch { .. })
        ));
    }

    #[test]
    fn exact_mode_is_permutation_invariant() {
        use num_rational::BigRational;
        let g = mat(vec![vec![1.0, 3.0], vec![0.2, 1.0]], Mode::Multiplicative).to_exact();
        // Apply the swap permutation consistently to rows and columns.
        let perm = [1usize, 0];
        let rows: Vec<Vec<BigRational>> = (0..2)
            .map(|i| (0..2).map(|j| g.get(perm[i], perm[j]).clone()).collect())
            .collect();
        let p = Instance::with_default_labels(rows, Mode::Multiplicative).unwrap();
        let t = Tolerance::exact();
        let a = validate(&g, Law::MultIneq, &t).unwrap();
        let b = validate(&p, Law::MultIneq, &t).unwrap();
        assert_eq!(a.pass, b.pass);
        assert_eq!(a.total_violations, b.total_violations);
    }

    #[test]
    fn slack_is_scaled_by_the_composite_side() {
        // Start from the exact ratio solution [[1,2],[1/2,1]] and shrink
        // G(0,1), so the composite for (0,1,0) drops below the direct entry
        // G(0,0)=1 by `eps` relative. At 1e-12 that is inside the default
        // slack; at 1e-8 it is flagged.
        let shrunk = |eps: f64| {
            mat(
                vec![vec![1.0, 2.0 * (1.0 - eps)], vec![0.5, 1.0]],
                Mode::Multiplicative,
            )
        };
        assert!(validate(&shrunk(1e-12), Law::MultIneq, &Tolerance::default())
            .unwrap()
            .pass);
        assert!(!validate(&shrunk(1e-8), Law::MultIneq, &Tolerance::default())
            .unwrap()
            .pass);
    }
}
