//! The dimension-2 cyclic code `C(a,b,q)` and everything computed from it.
//!
//! Codewords are the `N`-periodic solutions of the recurrence, so the code
//! is spanned by the two impulse sequences with initial states `(1,0)` and
//! `(0,1)`.

mod classification;
mod poly;
mod report;
mod weights;

pub use classification::{swc_classification, swc_classification_of, SwcClassification};
pub use poly::{check_polynomials, CheckPolynomials, Poly};
pub use report::flags;
pub use report::{analyze, AnalyzeOptions, CodeReport, DEFAULT_BRUTEFORCE_BUDGET};
pub use weights::{weights_bruteforce, weights_theoretical, weights_theoretical_of, WeightDistribution};

use std::collections::HashSet;

use crate::error::ensure_invariant;
use crate::gf::{Element, Field, QuadraticExtension};
use crate::recurrence::{self, CharFactorization, RecurrenceParams, SequenceProfile};
use crate::Result;

/// `C(a,b,q)` with its 2 x N generator matrix.
#[derive(Clone, Debug)]
pub struct TwoDimCyclicCode<'t> {
    tower: &'t QuadraticExtension,
    params: RecurrenceParams,
    factorization: CharFactorization,
    profile: SequenceProfile,
    rows: [Vec<Element>; 2],
}

impl<'t> TwoDimCyclicCode<'t> {
    pub fn tower(&self) -> &'t QuadraticExtension {
        self.tower
    }

    pub fn field(&self) -> &'t Field {
        self.tower.base()
    }

    pub fn params(&self) -> &RecurrenceParams {
        &self.params
    }

    pub fn factorization(&self) -> &CharFactorization {
        &self.factorization
    }

    pub fn profile(&self) -> SequenceProfile {
        self.profile
    }

    pub fn length(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Element>; 2] {
        &self.rows
    }

    /// Column `n` of the generator matrix.
    pub fn column(&self, n: usize) -> [Element; 2] {
        [self.rows[0][n], self.rows[1][n]]
    }

    /// `λ * row0 + μ * row1`, i.e. the solution with initial state `(λ, μ)`.
    pub fn codeword(&self, lambda: Element, mu: Element) -> Vec<Element> {
        let f = self.field();
        self.rows[0].iter().zip(&self.rows[1]).map(|(&x, &y)| f.add(f.mul(lambda, x), f.mul(mu, y))).collect()
    }
}

pub fn build_code<'t>(tower: &'t QuadraticExtension, params: &RecurrenceParams) -> Result<TwoDimCyclicCode<'t>> {
    let factorization = recurrence::classify(tower, params);
    let profile = recurrence::profile_of(tower, &factorization)?;
    let f = tower.base();
    let n = profile.period as usize;

    let impulse = |g0, g1| {
        let mut seq = recurrence::generate_sequence(f, params, g0, g1, n + 2);
        let wraps = seq[n] == seq[0] && seq[n + 1] == seq[1];
        seq.truncate(n);
        (seq, wraps)
    };
    let (row0, wraps0) = impulse(Element::ONE, Element::ZERO);
    let (row1, wraps1) = impulse(Element::ZERO, Element::ONE);
    ensure_invariant!(wraps0 && wraps1, "impulse sequences are not {n}-periodic");

    // the cyclic shift of a row is the solution started one step later
    for row in [&row0, &row1] {
        for i in 0..n {
            let shifted = row[(i + 1) % n];
            let combo = f.add(f.mul(row[1 % n], row0[i]), f.mul(row[2 % n], row1[i]));
            ensure_invariant!(shifted == combo, "code is not closed under the cyclic shift");
        }
    }
    ensure_invariant!(
        row0.iter().zip(&row1).all(|(x, y)| !(x.is_zero() && y.is_zero())),
        "generator matrix has a zero column"
    );

    Ok(TwoDimCyclicCode { tower, params: *params, factorization, profile, rows: [row0, row1] })
}

/// Which closed form the generator columns take.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ColumnForm {
    /// `(tr(α^n), tr(α^{n+1}))`
    TraceOfPowers,
    /// `(α^n, β^n)`
    RootPowers,
    /// `(α^n, n α^n)`
    PowerTimesIndex,
}

/// The generator matrix together with its predicted closed-form columns.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    pub rows: [Vec<Element>; 2],
    pub form: ColumnForm,
    pub predicted: Vec<[Element; 2]>,
    /// `T` with `predicted[n] = T * column[n]` for every `n`.
    pub change_of_basis: [[Element; 2]; 2],
}

pub fn generator_matrix(code: &TwoDimCyclicCode<'_>) -> Result<GeneratorMatrix> {
    let tower = code.tower;
    let f = tower.base();
    let n = code.length();
    let (form, predicted): (ColumnForm, Vec<[Element; 2]>) = match *code.factorization() {
        CharFactorization::Irreducible { alpha, .. } => {
            let ext = tower.ext();
            let cols = (0..n as u64)
                .map(|i| {
                    let lo = tower.relative_trace(ext.pow(alpha, i))?;
                    let hi = tower.relative_trace(ext.pow(alpha, i + 1))?;
                    Ok([lo, hi])
                })
                .collect::<Result<_>>()?;
            (ColumnForm::TraceOfPowers, cols)
        }
        CharFactorization::Distinct { alpha, beta } => {
            let cols = (0..n as u64).map(|i| [f.pow(alpha, i), f.pow(beta, i)]).collect();
            (ColumnForm::RootPowers, cols)
        }
        CharFactorization::Repeated { alpha } => {
            let cols = (0..n as u64)
                .map(|i| {
                    let power = f.pow(alpha, i);
                    [power, f.mul(f.from_int((i % f.p()) as i64), power)]
                })
                .collect();
            (ColumnForm::PowerTimesIndex, cols)
        }
    };

    // impulse columns 0 and 1 are the unit vectors, so T is read off directly
    let t = [[predicted[0][0], predicted[1][0]], [predicted[0][1], predicted[1][1]]];
    let det = f.sub(f.mul(t[0][0], t[1][1]), f.mul(t[0][1], t[1][0]));
    ensure_invariant!(!det.is_zero(), "predicted column form is degenerate");
    for (i, pred) in predicted.iter().enumerate() {
        let [c0, c1] = code.column(i);
        let image = [f.add(f.mul(t[0][0], c0), f.mul(t[0][1], c1)), f.add(f.mul(t[1][0], c0), f.mul(t[1][1], c1))];
        ensure_invariant!(image == *pred, "column {i} disagrees with the {form:?} form");
    }
    Ok(GeneratorMatrix { rows: code.rows.clone(), form, predicted, change_of_basis: t })
}

/// Minimum distance by exhaustive enumeration of codewords.
pub fn min_distance(code: &TwoDimCyclicCode<'_>, budget: u64) -> Result<u64> {
    Ok(weights_bruteforce(code, budget)?.min_weight().expect("a 2-dimensional code has nonzero codewords"))
}

/// Dual distance: 3 when no two generator columns are proportional, else 2.
pub fn dual_distance(code: &TwoDimCyclicCode<'_>) -> Result<u64> {
    let f = code.field();
    let mut seen = HashSet::with_capacity(code.length());
    for i in 0..code.length() {
        let [c0, c1] = code.column(i);
        // projective point of the column
        let point = match (c0.is_zero(), c1.is_zero()) {
            (true, true) => return Err(crate::Error::Invariant(format!("column {i} is zero"))),
            (true, false) => None,
            _ => Some(f.div(c1, c0)?),
        };
        if !seen.insert(point) {
            return Ok(2);
        }
    }
    Ok(3)
}

/// Singleton bound `d = n - k + 1` with `k = 2`.
pub fn meets_singleton(length: u64, d: u64) -> bool {
    d + 1 == length
}

pub fn is_mds(code: &TwoDimCyclicCode<'_>, budget: u64) -> Result<bool> {
    Ok(meets_singleton(code.length() as u64, min_distance(code, budget)?))
}

pub fn is_projective(code: &TwoDimCyclicCode<'_>) -> Result<bool> {
    Ok(dual_distance(code)? >= 3)
}
