//! Finite instances: a square matrix over a labeled point set, plus the
//! tolerance policy every comparison runs under.
//!
//! An instance fixes the composition mode of its law family:
//! [`Mode::Multiplicative`] for the product laws (equation, upper and lower
//! inequalities) and [`Mode::Additive`] for the triangle law. Entries are
//! validated for finiteness at construction, so downstream kernels never see
//! NaN or infinities.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::entry::Entry;
use crate::validate::Law;

/// Composition mode of the law an instance is meant to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Product composition: S(x,z) vs S(x,y)·S(y,z).
    Multiplicative,
    /// Sum composition: H(x,z) vs H(x,y)+H(y,z).
    Additive,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Multiplicative => "multiplicative",
            Mode::Additive => "additive",
        }
    }
}

impl core::fmt::Display for Mode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "multiplicative" => Ok(Mode::Multiplicative),
            "additive" => Ok(Mode::Additive),
            other => Err(Error::UnknownMode {
                name: other.to_string(),
            }),
        }
    }
}

/// Comparison policy.
///
/// Inequality checks allow a relative slack of `rel * max(1, |scale|)` where
/// `scale` is the magnitude of the composite side; `|v| <= zero_tol`
/// classifies `v` as zero everywhere downstream. With `exact` set, both knobs
/// are treated as zero and every comparison is strict — meant to be paired
/// with rational entries, where arithmetic carries no rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub zero_tol: f64,
    pub exact: bool,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            zero_tol: 1e-12,
            exact: false,
        }
    }
}

impl Tolerance {
    /// Float-mode tolerance with explicit knobs.
    pub fn new(rel: f64, zero_tol: f64) -> Result<Self, Error> {
        if !rel.is_finite() || !zero_tol.is_finite() || rel < 0.0 || zero_tol < 0.0 {
            return Err(Error::BadTolerance { rel, zero_tol });
        }
        Ok(Tolerance {
            rel,
            zero_tol,
            exact: false,
        })
    }

    /// Exact mode: strict comparisons, zero slack.
    pub fn exact() -> Self {
        Tolerance {
            rel: 0.0,
            zero_tol: 0.0,
            exact: true,
        }
    }

    pub fn effective_rel(&self) -> f64 {
        if self.exact {
            0.0
        } else {
            self.rel
        }
    }

    pub fn effective_zero_tol(&self) -> f64 {
        if self.exact {
            0.0
        } else {
            self.zero_tol
        }
    }
}

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix must have at least one point.
    EmptyMatrix,
    /// Row `row` has `len` entries; the matrix has `expected` columns.
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    /// `labels` names for an `n`-point matrix.
    LabelCount { labels: usize, n: usize },
    /// Labels must be distinct and non-empty.
    BadLabel { label: String },
    /// NaN or infinite entry.
    NonFinite { row: usize, col: usize },
    /// Negative or non-finite tolerance knobs.
    BadTolerance { rel: f64, zero_tol: f64 },
    /// Law requires the other composition mode.
    LawModeMismatch { law: Law, mode: Mode },
    /// Unknown mode name in input.
    UnknownMode { name: String },
    /// Label not present in the instance.
    UnknownLabel { label: String },
    /// Operation requires strictly positive entries.
    NonPositiveEntry { row: usize, col: usize },
    /// Operation requires non-negative entries.
    NegativeEntry { row: usize, col: usize },
    /// Operation requires a zero diagonal.
    NonzeroDiagonal { index: usize },
    /// Input fails the law the operation presupposes.
    NotASolution { law: Law },
    /// Multiplicative potential operations need strictly positive values.
    NonPositivePotential { member: usize, index: usize },
    /// Potential family must be non-empty.
    EmptyFamily,
    /// Dimension disagreement between two objects.
    SizeMismatch { left: usize, right: usize },
    /// Mode disagreement between two objects.
    ModeMismatch { left: Mode, right: Mode },
    /// Two instances must share the same label list.
    LabelMismatch,
    /// The additive lower envelope is outside the supported law family.
    UnsupportedReconstruction,
    /// Closure diverges: a cycle composes below the identity
    /// (negative total weight / product below one). Vertex indices follow
    /// edge direction; the last closes back to the first.
    UnboundedClosure { mode: Mode, cycle: Vec<usize> },
    /// Generator specification rejected.
    BadGenSpec { reason: String },
    /// Unknown oracle claim identifier.
    UnknownClaim { name: String },
    /// The potential is not a member of the class it is audited against.
    NotAMember,
    /// Unknown closure kernel name.
    UnknownKernel { name: String },
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::EmptyMatrix => write!(f, "matrix must have at least one point"),
            Error::RaggedRow { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            Error::LabelCount { labels, n } => {
                write!(f, "{labels} labels for an {n}-point matrix")
            }
            Error::BadLabel { label } => write!(f, "label {label:?} is empty or repeated"),
            Error::NonFinite { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            Error::BadTolerance { rel, zero_tol } => {
                write!(f, "tolerances must be finite and non-negative, got rel={rel}, zero_tol={zero_tol}")
            }
            Error::LawModeMismatch { law, mode } => {
                write!(f, "law {law} requires {} instances, got {mode}", law.required_mode())
            }
            Error::UnknownMode { name } => write!(f, "unknown mode {name:?}"),
            Error::UnknownLabel { label } => write!(f, "label {label:?} not in instance"),
            Error::NonPositiveEntry { row, col } => {
                write!(f, "entry at ({row}, {col}) must be strictly positive")
            }
            Error::NegativeEntry { row, col } => {
                write!(f, "entry at ({row}, {col}) must be non-negative")
            }
            Error::NonzeroDiagonal { index } => {
                write!(f, "diagonal entry at point {index} must be zero")
            }
            Error::NotASolution { law } => {
                write!(f, "input does not satisfy {law}")
            }
            Error::NonPositivePotential { member, index } => {
                write!(
                    f,
                    "potential member {member} has a non-positive value at index {index}"
                )
            }
            Error::EmptyFamily => write!(f, "potential family is empty"),
            Error::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
            Error::ModeMismatch { left, right } => {
                write!(f, "mode mismatch: {left} vs {right}")
            }
            Error::LabelMismatch => write!(f, "instances must share the same labels"),
            Error::UnsupportedReconstruction => {
                write!(f, "additive families only support the upper (sup) envelope")
            }
            Error::UnboundedClosure { mode, cycle } => {
                let what = match mode {
                    Mode::Additive => "negative total weight",
                    Mode::Multiplicative => "weight product below one",
                };
                write!(f, "closure unbounded: cycle {cycle:?} has {what}")
            }
            Error::BadGenSpec { reason } => write!(f, "bad generator spec: {reason}"),
            Error::UnknownClaim { name } => write!(f, "unknown claim {name:?}"),
            Error::NotAMember => {
                write!(f, "the potential is not a member of the audited class")
            }
            Error::UnknownKernel { name } => write!(f, "unknown kernel {name:?}"),
        }
    }
}

impl core::error::Error for Error {}

/// A labeled square matrix in a fixed composition mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T = f64> {
    labels: Vec<String>,
    mode: Mode,
    n: usize,
    data: Vec<T>, // row-major
}

impl<T: Entry> Instance<T> {
    /// Build from nested rows, validating shape, labels and finiteness.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<T>>, mode: Mode) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend(row);
        }
        Self::from_flat(labels, data, mode)
    }

    /// Build from a row-major flat vector of length n².
    pub fn from_flat(labels: Vec<String>, data: Vec<T>, mode: Mode) -> Result<Self, Error> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::SizeMismatch {
                left: data.len(),
                right: n * n,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || labels[..i].contains(l) {
                return Err(Error::BadLabel { label: l.clone() });
            }
        }
        for (k, v) in data.iter().enumerate() {
            if !T::is_finite(v) {
                return Err(Error::NonFinite {
                    row: k / n,
                    col: k % n,
                });
            }
        }
        Ok(Instance {
            labels,
            mode,
            n,
            data,
        })
    }

    /// Build with synthesized labels `x0..x{n-1}`.
    pub fn with_default_labels(rows: Vec<Vec<T>>, mode: Mode) -> Result<Self, Error> {
        let labels = default_labels(rows.len());
        Self::new(labels, rows, mode)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Entry at row `i`, column `j`. Panics out of range, like slice indexing.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    /// Row-major flat view.
    pub fn data(&self) -> &[T] {
        &self.data
    }

    /// Position of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The dual instance: same labels and mode, transposed matrix.
    /// A matrix satisfies the upper product law exactly when its dual does.
    pub fn dual(&self) -> Instance<T> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].clone());
            }
        }
        Instance {
            labels: self.labels.clone(),
            mode: self.mode,
            n,
            data,
        }
    }

    /// Same instance with entries converted losslessly or lossily to `U`.
    pub fn map_entries<U: Entry>(&self, f: impl Fn(&T) -> U) -> Instance<U> {
        Instance {
            labels: self.labels.clone(),
            mode: self.mode,
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Lossy float view, for rendering exact instances in reports.
    pub fn to_f64_lossy(&self) -> Instance<f64> {
        self.map_entries(|v| T::to_f64(v))
    }
}

impl Instance<f64> {
    /// Exact view: every finite f64 entry is a dyadic rational.
    pub fn to_exact(&self) -> Instance<num_rational::BigRational> {
        self.map_entries(|v| <num_rational::BigRational as Entry>::from_f64(*v))
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}
