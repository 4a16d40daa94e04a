//! Independent brute-force verification of the governing claims.
//!
//! Each claim re-derives both its hypotheses and its conclusion with direct
//! loops over the matrix — deliberately naive O(n³)–O(n⁴) enumeration,
//! sharing nothing with the optimized implementations beyond the
//! [`Instance`] type and raw entry arithmetic — so a bug in a fast path
//! cannot vouch for itself. Checks run on both float and exact instances;
//! float ratio computations divide directly (no log-domain tricks), which
//! assumes a moderate dynamic range, as the seeded generators guarantee.
//!
//! A check returns one of three verdicts: the hypotheses were not met, the
//! claim holds, or the claim is **violated** with a human-readable witness.
//! Verification of the anchored-extremal claim costs O(n⁴)–O(n⁵) when every
//! anchor pair is enumerated, so past `n = 8` it samples a fixed number of
//! anchors, seeded only by `n` — verdicts stay pure functions of the input.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entry::{Entry, TolCtx};
use crate::instance::{Error, Instance, Mode, Tolerance};

/// Registered claim identifiers, in registry order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// `p0`: a non-negative equation solution with a zero entry is zero
    /// everywhere.
    P0,
    /// `b`: a strictly positive upper-law solution with maximum `c` has all
    /// entries in `[1/c, c]` and unit-or-larger diagonal.
    B,
    /// `t1-Z`: an upper-law solution whose rows and columns all have the
    /// zero-bridging property and which takes a non-positive value is
    /// non-positive everywhere.
    T1Z,
    /// `sup-i`: the column-ratio tightening of a positive upper-law
    /// solution sits between the reciprocal transpose and the instance.
    SupI,
    /// `sup-ii`: that tightening has unit diagonal.
    SupII,
    /// `sup-iii`: on unit-diagonal instances the tightening is the
    /// instance itself.
    SupIII,
    /// `sup-iv`: the tightening satisfies the upper law.
    SupIV,
    /// `t2`: on unit-diagonal instances the anchored extremal value equals
    /// the instance entry at the anchor.
    T2,
    /// `SG`: every anchored extremal matrix is an equation solution
    /// sandwiched between the reciprocal transpose and the instance.
    Sg,
    /// `repG`: a positive unit-diagonal upper-law solution is the upper
    /// envelope of its column ratios.
    RepG,
    /// `repF`: a positive unit-diagonal reverse-law solution is the lower
    /// envelope of its column ratios.
    RepF,
    /// `repH`: a zero-diagonal triangle solution is the upper envelope of
    /// its column differences.
    RepH,
    /// `Fsp`: a reverse-law solution whose every (row, column) pair has a
    /// zero-bridging side is non-negative, with diagonal in `[0, 1]`.
    Fsp,
    /// `FZ-alt`: around any zero entry of a non-negative reverse-law
    /// solution, every point zeroes the row or the column.
    FzAlt,
    /// `remark1`: no strictly dominating perturbation of a positive
    /// equation solution is again a solution (comparable solutions are
    /// rigid). Guarded on positivity: sign-mixed solutions genuinely admit
    /// comparable distinct solutions.
    Remark1,
    /// `cT2-a`: on a zero-diagonal triangle solution, points at positive
    /// distance are separated by some column.
    Ct2A,
    /// `cT2-merge-zero`: mutual zero distance is equivalent to column
    /// equality (two-way statement; one-way zero distance implies
    /// neither).
    Ct2MergeZero,
}

/// All registered claims, in registry order.
pub const ALL_CLAIMS: [Claim; 17] = [
    Claim::P0,
    Claim::B,
    Claim::T1Z,
    Claim::SupI,
    Claim::SupII,
    Claim::SupIII,
    Claim::SupIV,
    Claim::T2,
    Claim::Sg,
    Claim::RepG,
    Claim::RepF,
    Claim::RepH,
    Claim::Fsp,
    Claim::FzAlt,
    Claim::Remark1,
    Claim::Ct2A,
    Claim::Ct2MergeZero,
];

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::P0 => "p0",
            Claim::B => "b",
            Claim::T1Z => "t1-Z",
            Claim::SupI => "sup-i",
            Claim::SupII => "sup-ii",
            Claim::SupIII => "sup-iii",
            Claim::SupIV => "sup-iv",
            Claim::T2 => "t2",
            Claim::Sg => "SG",
            Claim::RepG => "repG",
            Claim::RepF => "repF",
            Claim::RepH => "repH",
            Claim::Fsp => "Fsp",
            Claim::FzAlt => "FZ-alt",
            Claim::Remark1 => "remark1",
            Claim::Ct2A => "cT2-a",
            Claim::Ct2MergeZero => "cT2-merge-zero",
        }
    }
}

impl core::fmt::Display for Claim {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_CLAIMS
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownClaim { name: s.into() })
    }
}

/// Outcome of one claim check.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds,
    HypothesisNotMet,
    Violated { witness: String },
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::Violated { .. } => "VIOLATED",
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::Violated { witness } => write!(f, "VIOLATED: {witness}"),
            other => f.write_str(other.as_str()),
        }
    }
}

/// Check one registered claim against an instance. Pure in
/// `(inst, claim, tol)`.
pub fn oracle_check<T: Entry>(inst: &Instance<T>, claim: Claim, tol: &Tolerance) -> Verdict {
    let c = Checker {
        inst,
        ctx: TolCtx::new(tol),
    };
    match claim {
        Claim::P0 => c.p0(),
        Claim::B => c.bounded(),
        Claim::T1Z => c.t1z(),
        Claim::SupI => c.sup(SupPart::Bounds),
        Claim::SupII => c.sup(SupPart::Diag),
        Claim::SupIII => c.sup(SupPart::Fixed),
        Claim::SupIV => c.sup(SupPart::Law),
        Claim::T2 => c.t2(),
        Claim::Sg => c.sandwich(),
        Claim::RepG => c.rep_upper(),
        Claim::RepF => c.rep_reverse(),
        Claim::RepH => c.rep_triangle(),
        Claim::Fsp => c.reverse_sign(),
        Claim::FzAlt => c.zero_alternative(),
        Claim::Remark1 => c.rigidity(),
        Claim::Ct2A => c.separation(),
        Claim::Ct2MergeZero => c.merge_zero(),
    }
}

enum SupPart {
    Bounds,
    Diag,
    Fixed,
    Law,
}

struct Checker<'a, T: Entry> {
    inst: &'a Instance<T>,
    ctx: TolCtx<T>,
}

impl<'a, T: Entry> Checker<'a, T> {
    fn n(&self) -> usize {
        self.inst.n()
    }

    fn g(&self, i: usize, j: usize) -> &'a T {
        self.inst.get(i, j)
    }

    // ---- re-derived hypotheses -------------------------------------------

    fn is_mult(&self) -> bool {
        self.inst.mode() == Mode::Multiplicative
    }

    fn is_add(&self) -> bool {
        self.inst.mode() == Mode::Additive
    }

    fn eq_holds_on(&self, get: &dyn Fn(usize, usize) -> T) -> bool {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let comp = T::mul(&get(x, y), &get(y, z));
                    if self.ctx.differs(&get(x, z), &comp, &comp) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn eq_holds(&self) -> bool {
        self.eq_holds_on(&|i, j| self.g(i, j).clone())
    }

    fn upper_holds_on(&self, get: &dyn Fn(usize, usize) -> T) -> bool {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let comp = T::mul(&get(x, y), &get(y, z));
                    if self.ctx.exceeds(&get(x, z), &comp, &comp) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn upper_holds(&self) -> bool {
        self.upper_holds_on(&|i, j| self.g(i, j).clone())
    }

    fn reverse_holds(&self) -> bool {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let comp = T::mul(self.g(x, y), self.g(y, z));
                    if self.ctx.exceeds(&comp, self.g(x, z), &comp) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn triangle_holds(&self) -> bool {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let comp = T::add(self.g(x, y), self.g(y, z));
                    let scale = T::add(&T::abs(self.g(x, y)), &T::abs(self.g(y, z)));
                    if self.ctx.exceeds(self.g(x, z), &comp, &scale) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn strictly_positive(&self) -> bool {
        self.inst.data().iter().all(|v| self.ctx.is_positive(v))
    }

    fn nonnegative(&self) -> bool {
        self.inst.data().iter().all(|v| self.ctx.is_nonnegative(v))
    }

    fn unit_diag(&self) -> bool {
        (0..self.n()).all(|i| self.ctx.approx_eq(self.g(i, i), &T::one()))
    }

    fn zero_diag(&self) -> bool {
        (0..self.n()).all(|i| self.ctx.is_zero(self.g(i, i)))
    }

    /// Zero-bridging property of a finite value family: values strictly on
    /// both sides of the zero band force a value inside the band.
    fn values_bridge_zero(&self, values: impl Iterator<Item = &'a T>) -> bool {
        let mut has_neg = false;
        let mut has_pos = false;
        let mut has_zero = false;
        for v in values {
            if self.ctx.is_zero(v) {
                has_zero = true;
            } else if self.ctx.is_positive(v) {
                has_pos = true;
            } else {
                has_neg = true;
            }
        }
        !(has_neg && has_pos && !has_zero)
    }

    fn row_bridges(&self, x: usize) -> bool {
        self.values_bridge_zero((0..self.n()).map(move |y| self.g(x, y)))
    }

    fn col_bridges(&self, y: usize) -> bool {
        self.values_bridge_zero((0..self.n()).map(move |x| self.g(x, y)))
    }

    // ---- claim bodies ----------------------------------------------------

    fn p0(&self) -> Verdict {
        if !(self.is_mult() && self.eq_holds() && self.nonnegative()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        let zero_at = (0..n * n).find(|&k| self.ctx.is_zero(&self.inst.data()[k]));
        let Some(anchor) = zero_at else {
            return Verdict::HypothesisNotMet;
        };
        for i in 0..n {
            for j in 0..n {
                if !self.ctx.is_zero(self.g(i, j)) {
                    return Verdict::Violated {
                        witness: format!(
                            "entry ({i}, {j}) = {} is nonzero although ({}, {}) is zero",
                            T::render(self.g(i, j)),
                            anchor / n,
                            anchor % n
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    fn bounded(&self) -> Verdict {
        if !(self.is_mult() && self.strictly_positive() && self.upper_holds()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        let one = T::one();
        let mut max = self.g(0, 0).clone();
        for v in self.inst.data() {
            if *v > max {
                max = v.clone();
            }
        }
        for i in 0..n {
            if self.ctx.exceeds(&one, self.g(i, i), &one) {
                return Verdict::Violated {
                    witness: format!(
                        "diagonal ({i}, {i}) = {} is below one",
                        T::render(self.g(i, i))
                    ),
                };
            }
            for j in 0..n {
                let prod = T::mul(self.g(i, j), &max);
                if self.ctx.exceeds(&one, &prod, &prod) {
                    return Verdict::Violated {
                        witness: format!(
                            "entry ({i}, {j}) = {} is below 1/max with max = {}",
                            T::render(self.g(i, j)),
                            T::render(&max)
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    fn t1z(&self) -> Verdict {
        if !(self.is_mult() && self.upper_holds()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        if !self
            .inst
            .data()
            .iter()
            .any(|v| !self.ctx.is_positive(v))
        {
            return Verdict::HypothesisNotMet;
        }
        let sections_ok =
            (0..n).all(|x| self.row_bridges(x)) && (0..n).all(|y| self.col_bridges(y));
        if !sections_ok {
            return Verdict::HypothesisNotMet;
        }
        for i in 0..n {
            for j in 0..n {
                if self.ctx.is_positive(self.g(i, j)) {
                    return Verdict::Violated {
                        witness: format!(
                            "entry ({i}, {j}) = {} stays positive",
                            T::render(self.g(i, j))
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    /// Column-ratio tightening, recomputed naively by direct division.
    fn naive_tilde(&self) -> Vec<T> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut best = T::div(self.g(0, y), self.g(0, x));
                for a in 1..n {
                    let cand = T::div(self.g(a, y), self.g(a, x));
                    if cand > best {
                        best = cand;
                    }
                }
                out.push(best);
            }
        }
        out
    }

    fn sup(&self, part: SupPart) -> Verdict {
        if !(self.is_mult() && self.strictly_positive() && self.upper_holds()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        let tilde = self.naive_tilde();
        let t = |x: usize, y: usize| &tilde[x * n + y];
        let one = T::one();
        match part {
            SupPart::Bounds => {
                for x in 0..n {
                    for y in 0..n {
                        if self.ctx.exceeds(t(x, y), self.g(x, y), self.g(x, y)) {
                            return Verdict::Violated {
                                witness: format!(
                                    "tightening ({x}, {y}) = {} exceeds the entry {}",
                                    T::render(t(x, y)),
                                    T::render(self.g(x, y))
                                ),
                            };
                        }
                        let prod = T::mul(t(x, y), self.g(y, x));
                        if self.ctx.exceeds(&one, &prod, &prod) {
                            return Verdict::Violated {
                                witness: format!(
                                    "tightening ({x}, {y}) = {} falls below the reciprocal of {}",
                                    T::render(t(x, y)),
                                    T::render(self.g(y, x))
                                ),
                            };
                        }
                    }
                }
                Verdict::Holds
            }
            SupPart::Diag => {
                for x in 0..n {
                    if !self.ctx.approx_eq(t(x, x), &one) {
                        return Verdict::Violated {
                            witness: format!(
                                "tightening diagonal ({x}, {x}) = {} is not one",
                                T::render(t(x, x))
                            ),
                        };
                    }
                }
                Verdict::Holds
            }
            SupPart::Fixed => {
                if !self.unit_diag() {
                    return Verdict::HypothesisNotMet;
                }
                for x in 0..n {
                    for y in 0..n {
                        if !self.ctx.approx_eq(t(x, y), self.g(x, y)) {
                            return Verdict::Violated {
                                witness: format!(
                                    "tightening ({x}, {y}) = {} differs from the entry {}",
                                    T::render(t(x, y)),
                                    T::render(self.g(x, y))
                                ),
                            };
                        }
                    }
                }
                Verdict::Holds
            }
            SupPart::Law => {
                if self.upper_holds_on(&|i, j| tilde[i * n + j].clone()) {
                    Verdict::Holds
                } else {
                    Verdict::Violated {
                        witness: "the tightened matrix breaks the upper law".into(),
                    }
                }
            }
        }
    }

    /// Extremal anchor index for `(x0, y0)`: the row maximizing the column
    /// ratio, ties to the lowest index.
    fn naive_anchor(&self, x0: usize, y0: usize) -> usize {
        let mut best = 0;
        let mut best_val = T::div(self.g(0, y0), self.g(0, x0));
        for a in 1..self.n() {
            let cand = T::div(self.g(a, y0), self.g(a, x0));
            if cand > best_val {
                best_val = cand;
                best = a;
            }
        }
        best
    }

    fn t2(&self) -> Verdict {
        if !(self.is_mult() && self.strictly_positive() && self.upper_holds() && self.unit_diag())
        {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        for x0 in 0..n {
            for y0 in 0..n {
                let a = self.naive_anchor(x0, y0);
                let s = T::div(self.g(a, y0), self.g(a, x0));
                if !self.ctx.approx_eq(&s, self.g(x0, y0)) {
                    return Verdict::Violated {
                        witness: format!(
                            "anchored value at ({x0}, {y0}) is {} but the entry is {}",
                            T::render(&s),
                            T::render(self.g(x0, y0))
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    /// Anchor pairs to verify: all of them up to n = 8, a fixed seeded
    /// sample of four beyond that (full verification is quartic).
    fn anchor_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        if n <= 8 {
            let mut pairs = Vec::with_capacity(n * n);
            for x0 in 0..n {
                for y0 in 0..n {
                    pairs.push((x0, y0));
                }
            }
            pairs
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5347 ^ n as u64);
            (0..4)
                .map(|_| {
                    let k = rng.next_u64() as usize % (n * n);
                    (k / n, k % n)
                })
                .collect()
        }
    }

    fn sandwich(&self) -> Verdict {
        if !(self.is_mult() && self.strictly_positive() && self.upper_holds()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        let one = T::one();
        for (x0, y0) in self.anchor_pairs() {
            let a = self.naive_anchor(x0, y0);
            // Extremal matrix for this anchor: S(x, y) = G(a, y) / G(a, x).
            let s = |x: usize, y: usize| T::div(self.g(a, y), self.g(a, x));
            if !self.eq_holds_on(&s) {
                return Verdict::Violated {
                    witness: format!(
                        "extremal matrix anchored at ({x0}, {y0}) is not an equation solution"
                    ),
                };
            }
            for x in 0..n {
                for y in 0..n {
                    let sxy = s(x, y);
                    if self.ctx.exceeds(&sxy, self.g(x, y), self.g(x, y)) {
                        return Verdict::Violated {
                            witness: format!(
                                "extremal ({x}, {y}) = {} exceeds the entry {} (anchor ({x0}, {y0}))",
                                T::render(&sxy),
                                T::render(self.g(x, y))
                            ),
                        };
                    }
                    let prod = T::mul(&sxy, self.g(y, x));
                    if self.ctx.exceeds(&one, &prod, &prod) {
                        return Verdict::Violated {
                            witness: format!(
                                "extremal ({x}, {y}) = {} falls below the reciprocal of {} (anchor ({x0}, {y0}))",
                                T::render(&sxy),
                                T::render(self.g(y, x))
                            ),
                        };
                    }
                }
            }
        }
        Verdict::Holds
    }

    fn rep_upper(&self) -> Verdict {
        if !(self.is_mult() && self.strictly_positive() && self.upper_holds() && self.unit_diag())
        {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let mut best = T::div(self.g(x, 0), self.g(y, 0));
                for c in 1..n {
                    let cand = T::div(self.g(x, c), self.g(y, c));
                    if cand > best {
                        best = cand;
                    }
                }
                if !self.ctx.approx_eq(&best, self.g(x, y)) {
                    return Verdict::Violated {
                        witness: format!(
                            "upper envelope at ({x}, {y}) is {} but the entry is {}",
                            T::render(&best),
                            T::render(self.g(x, y))
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    fn rep_reverse(&self) -> Verdict {
        if !(self.is_mult() && self.strictly_positive() && self.reverse_holds() && self.unit_diag())
        {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let mut best = T::div(self.g(x, 0), self.g(y, 0));
                for c in 1..n {
                    let cand = T::div(self.g(x, c), self.g(y, c));
                    if cand < best {
                        best = cand;
                    }
                }
                if !self.ctx.approx_eq(&best, self.g(x, y)) {
                    return Verdict::Violated {
                        witness: format!(
                            "lower envelope at ({x}, {y}) is {} but the entry is {}",
                            T::render(&best),
                            T::render(self.g(x, y))
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    fn rep_triangle(&self) -> Verdict {
        if !(self.is_add() && self.triangle_holds() && self.zero_diag()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let mut best = T::sub(self.g(x, 0), self.g(y, 0));
                for c in 1..n {
                    let cand = T::sub(self.g(x, c), self.g(y, c));
                    if cand > best {
                        best = cand;
                    }
                }
                if !self.ctx.approx_eq(&best, self.g(x, y)) {
                    return Verdict::Violated {
                        witness: format!(
                            "difference envelope at ({x}, {y}) is {} but the entry is {}",
                            T::render(&best),
                            T::render(self.g(x, y))
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    fn reverse_sign(&self) -> Verdict {
        if !(self.is_mult() && self.reverse_holds()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        // Hypothesis: every (row, column) pair has a zero-bridging side.
        for x in 0..n {
            for y in 0..n {
                if !(self.row_bridges(x) || self.col_bridges(y)) {
                    return Verdict::HypothesisNotMet;
                }
            }
        }
        let one = T::one();
        for i in 0..n {
            for j in 0..n {
                if !self.ctx.is_nonnegative(self.g(i, j)) {
                    return Verdict::Violated {
                        witness: format!(
                            "entry ({i}, {j}) = {} is negative",
                            T::render(self.g(i, j))
                        ),
                    };
                }
            }
            if self.ctx.exceeds(self.g(i, i), &one, &one) {
                return Verdict::Violated {
                    witness: format!(
                        "diagonal ({i}, {i}) = {} exceeds one",
                        T::render(self.g(i, i))
                    ),
                };
            }
        }
        Verdict::Holds
    }

    fn zero_alternative(&self) -> Verdict {
        if !(self.is_mult() && self.reverse_holds() && self.nonnegative()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        let mut any_zero = false;
        for a in 0..n {
            for b in 0..n {
                if !self.ctx.is_zero(self.g(a, b)) {
                    continue;
                }
                any_zero = true;
                for x in 0..n {
                    if !(self.ctx.is_zero(self.g(a, x)) || self.ctx.is_zero(self.g(x, b))) {
                        return Verdict::Violated {
                            witness: format!(
                                "zero at ({a}, {b}) but point {x} zeroes neither ({a}, {x}) = {} nor ({x}, {b}) = {}",
                                T::render(self.g(a, x)),
                                T::render(self.g(x, b))
                            ),
                        };
                    }
                }
            }
        }
        if any_zero {
            Verdict::Holds
        } else {
            Verdict::HypothesisNotMet
        }
    }

    fn rigidity(&self) -> Verdict {
        if !(self.is_mult() && self.strictly_positive() && self.eq_holds()) {
            return Verdict::HypothesisNotMet;
        }
        // Probe with a canonical strictly dominating perturbation: scale one
        // entry up by 3/2 (exactly representable in both entry types). The
        // claim says a comparable distinct solution cannot exist, so the
        // perturbed matrix must fail the equation.
        let n = self.n();
        let (pi, pj) = (0, n - 1);
        let scale = T::div(
            &T::add(&T::one(), &T::add(&T::one(), &T::one())),
            &T::add(&T::one(), &T::one()),
        );
        let bumped = T::mul(self.g(pi, pj), &scale);
        let get = |i: usize, j: usize| {
            if (i, j) == (pi, pj) {
                bumped.clone()
            } else {
                self.g(i, j).clone()
            }
        };
        if self.eq_holds_on(&get) {
            return Verdict::Violated {
                witness: format!(
                    "scaling entry ({pi}, {pj}) by 3/2 yields a distinct comparable solution"
                ),
            };
        }
        Verdict::Holds
    }

    fn separation(&self) -> Verdict {
        if !(self.is_add() && self.triangle_holds() && self.zero_diag()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        for x in 0..n {
            for y in (x + 1)..n {
                let apart =
                    !self.ctx.is_zero(self.g(x, y)) || !self.ctx.is_zero(self.g(y, x));
                if !apart {
                    continue;
                }
                let separated =
                    (0..n).any(|c| self.ctx.differs(self.g(x, c), self.g(y, c), self.g(x, c)));
                if !separated {
                    return Verdict::Violated {
                        witness: format!(
                            "points {x} and {y} are at positive distance but no column separates them"
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }

    fn merge_zero(&self) -> Verdict {
        if !(self.is_add() && self.triangle_holds() && self.zero_diag()) {
            return Verdict::HypothesisNotMet;
        }
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let mutual_zero =
                    self.ctx.is_zero(self.g(x, y)) && self.ctx.is_zero(self.g(y, x));
                let columns_equal = (0..n)
                    .all(|c| !self.ctx.differs(self.g(x, c), self.g(y, c), self.g(x, c)));
                if mutual_zero && !columns_equal {
                    return Verdict::Violated {
                        witness: format!(
                            "({x}, {y}) is mutually zero yet some column distinguishes the points"
                        ),
                    };
                }
                if columns_equal && !mutual_zero {
                    return Verdict::Violated {
                        witness: format!(
                            "points {x} and {y} agree on every column yet are not mutually zero"
                        ),
                    };
                }
            }
        }
        Verdict::Holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{f3_instance, generate, generate_exact, GenKind, GenSpec};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn mat(rows: Vec<Vec<f64>>, mode: Mode) -> Instance {
        Instance::with_default_labels(rows, mode).unwrap()
    }

    #[test]
    fn claim_ids_round_trip() {
        for claim in ALL_CLAIMS {
            assert_eq!(claim.as_str().parse::<Claim>().unwrap(), claim);
        }
        assert!(matches!(
            "no-such-claim".parse::<Claim>().unwrap_err(),
            Error::UnknownClaim { .. }
        ));
    }

    #[test]
    fn verdict_rendering() {
        assert_eq!(Verdict::Holds.as_str(), "holds");
        assert_eq!(Verdict::HypothesisNotMet.as_str(), "hypothesis-not-met");
        let v = Verdict::Violated {
            witness: "w".into(),
        };
        assert!(v.is_violated());
        assert_eq!(alloc::format!("{v}"), "VIOLATED: w");
    }

    #[test]
    fn zero_solution_satisfies_the_zero_propagation_claim() {
        let z = mat(vec![vec![0.0, 0.0], vec![0.0, 0.0]], Mode::Multiplicative);
        assert_eq!(oracle_check(&z, Claim::P0, &tol()), Verdict::Holds);
        // A positive ratio matrix has no zero entry: hypothesis not met.
        let r = mat(vec![vec![1.0, 2.0], vec![0.5, 1.0]], Mode::Multiplicative);
        assert_eq!(oracle_check(&r, Claim::P0, &tol()), Verdict::HypothesisNotMet);
        // The indicator matrix is not an equation solution.
        let ind = mat(vec![vec![0.0, 1.0], vec![0.0, 0.0]], Mode::Multiplicative);
        assert_eq!(
            oracle_check(&ind, Claim::P0, &tol()),
            Verdict::HypothesisNotMet
        );
    }

    #[test]
    fn bound_claim_holds_on_bounded_instances() {
        let spec = GenSpec {
            kind: GenKind::Bounded { c: 2.0 },
            n: 6,
            seed: 4,
        };
        let inst = generate(&spec).unwrap();
        assert_eq!(oracle_check(&inst, Claim::B, &tol()), Verdict::Holds);
    }

    #[test]
    fn nonpositive_propagation_on_the_constant_negative_matrix() {
        // All entries -1: passes the upper law, sections bridge zero
        // vacuously (no positive values), and everything is non-positive.
        let neg = mat(vec![vec![-1.0; 3]; 3], Mode::Multiplicative);
        assert_eq!(oracle_check(&neg, Claim::T1Z, &tol()), Verdict::Holds);
        // Sign-mixed two-block matrix: rows carry both signs with no zero,
        // so the bridging hypothesis fails.
        let blocks = generate(&GenSpec {
            kind: GenKind::Component { blocks: 2 },
            n: 4,
            seed: 0,
        })
        .unwrap();
        assert_eq!(
            oracle_check(&blocks, Claim::T1Z, &tol()),
            Verdict::HypothesisNotMet
        );
    }

    #[test]
    fn tightening_claims_hold_on_generated_instances() {
        for kind in [
            GenKind::Ratio,
            GenKind::Bounded { c: 2.0 },
            GenKind::ViaClosure,
        ] {
            let inst = generate(&GenSpec { kind, n: 6, seed: 9 }).unwrap();
            for claim in [Claim::SupI, Claim::SupII, Claim::SupIV] {
                assert_eq!(
                    oracle_check(&inst, claim, &tol()),
                    Verdict::Holds,
                    "{} on {}",
                    claim,
                    kind.as_str()
                );
            }
        }
        // sup-iii and t2 need a unit diagonal: via-closure provides one,
        // bounded (c > 1) does not.
        let via = generate(&GenSpec {
            kind: GenKind::ViaClosure,
            n: 6,
            seed: 9,
        })
        .unwrap();
        assert_eq!(oracle_check(&via, Claim::SupIII, &tol()), Verdict::Holds);
        assert_eq!(oracle_check(&via, Claim::T2, &tol()), Verdict::Holds);
        let bounded = generate(&GenSpec {
            kind: GenKind::Bounded { c: 2.0 },
            n: 6,
            seed: 9,
        })
        .unwrap();
        assert_eq!(
            oracle_check(&bounded, Claim::SupIII, &tol()),
            Verdict::HypothesisNotMet
        );
    }

    #[test]
    fn sandwich_claim_holds_and_samples_large_instances() {
        let small = generate(&GenSpec {
            kind: GenKind::Bounded { c: 2.0 },
            n: 5,
            seed: 21,
        })
        .unwrap();
        assert_eq!(oracle_check(&small, Claim::Sg, &tol()), Verdict::Holds);
        let large = generate(&GenSpec {
            kind: GenKind::ViaClosure,
            n: 12,
            seed: 21,
        })
        .unwrap();
        assert_eq!(oracle_check(&large, Claim::Sg, &tol()), Verdict::Holds);
    }

    #[test]
    fn representation_claims_hold_where_hypotheses_are_met() {
        let via = generate(&GenSpec {
            kind: GenKind::ViaClosure,
            n: 6,
            seed: 2,
        })
        .unwrap();
        assert_eq!(oracle_check(&via, Claim::RepG, &tol()), Verdict::Holds);
        // Reverse representation: reciprocal of a unit-diagonal upper-law
        // solution is a unit-diagonal reverse-law solution.
        let recip = via.map_entries(|v| 1.0 / v);
        assert_eq!(oracle_check(&recip, Claim::RepF, &tol()), Verdict::Holds);
        let add = generate(&GenSpec {
            kind: GenKind::AdditivePotential,
            n: 6,
            seed: 2,
        })
        .unwrap();
        assert_eq!(oracle_check(&add, Claim::RepH, &tol()), Verdict::Holds);
    }

    #[test]
    fn reverse_claims_on_the_grid_family() {
        let f3 = f3_instance(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(oracle_check(&f3, Claim::Fsp, &tol()), Verdict::Holds);
        assert_eq!(oracle_check(&f3, Claim::FzAlt, &tol()), Verdict::Holds);
        // Strictly positive reverse instance has no zero: FZ-alt hypothesis
        // not met.
        let pos = mat(vec![vec![1.0, 1.0], vec![1.0, 1.0]], Mode::Multiplicative);
        assert_eq!(
            oracle_check(&pos, Claim::FzAlt, &tol()),
            Verdict::HypothesisNotMet
        );
    }

    #[test]
    fn rigidity_is_guarded_on_positivity() {
        let ratio = generate(&GenSpec {
            kind: GenKind::Ratio,
            n: 5,
            seed: 8,
        })
        .unwrap();
        assert_eq!(oracle_check(&ratio, Claim::Remark1, &tol()), Verdict::Holds);
        // The two-block instance is an equation solution but sign-mixed:
        // dominating-distinct solutions genuinely exist there, so the claim
        // refuses to run rather than report a false violation.
        let blocks = generate(&GenSpec {
            kind: GenKind::Component { blocks: 2 },
            n: 4,
            seed: 8,
        })
        .unwrap();
        assert_eq!(
            oracle_check(&blocks, Claim::Remark1, &tol()),
            Verdict::HypothesisNotMet
        );
    }

    #[test]
    fn separation_and_merge_claims_on_additive_instances() {
        let add = generate(&GenSpec {
            kind: GenKind::AdditivePotential,
            n: 7,
            seed: 31,
        })
        .unwrap();
        assert_eq!(oracle_check(&add, Claim::Ct2A, &tol()), Verdict::Holds);
        assert_eq!(oracle_check(&add, Claim::Ct2MergeZero, &tol()), Verdict::Holds);
        // The asymmetric probe: one-way zero distance, still separated and
        // still consistent with the two-way merge statement.
        let probe = mat(vec![vec![0.0, 0.0], vec![1.0, 0.0]], Mode::Additive);
        assert_eq!(oracle_check(&probe, Claim::Ct2A, &tol()), Verdict::Holds);
        assert_eq!(
            oracle_check(&probe, Claim::Ct2MergeZero, &tol()),
            Verdict::Holds
        );
    }

    #[test]
    fn exact_instances_get_exact_verdicts() {
        let spec = GenSpec {
            kind: GenKind::Ratio,
            n: 4,
            seed: 17,
        };
        let inst = generate_exact(&spec).unwrap();
        let exact = Tolerance::exact();
        for claim in [Claim::SupI, Claim::SupII, Claim::SupIV, Claim::Sg, Claim::Remark1] {
            assert_eq!(
                oracle_check(&inst, claim, &exact),
                Verdict::Holds,
                "{claim} on exact ratio"
            );
        }
    }

    #[test]
    fn every_claim_answers_on_every_generated_kind() {
        // Sweep: no claim may ever report VIOLATED on generated instances.
        let kinds = [
            GenKind::Ratio,
            GenKind::Bounded { c: 2.0 },
            GenKind::Component { blocks: 2 },
            GenKind::Component { blocks: 3 },
            GenKind::ViaClosure,
            GenKind::ReverseF3,
            GenKind::AdditivePotential,
        ];
        for kind in kinds {
            for seed in 0..3u64 {
                let inst = generate(&GenSpec { kind, n: 6, seed }).unwrap();
                for claim in ALL_CLAIMS {
                    let verdict = oracle_check(&inst, claim, &tol());
                    assert!(
                        !verdict.is_violated(),
                        "{claim} violated on {} seed {seed}: {verdict}",
                        kind.as_str()
                    );
                }
            }
        }
    }
}
