use serde::{Deserialize, Serialize};

use super::{build_code, dual_distance, generator_matrix, meets_singleton, weights_bruteforce, weights_theoretical_of};
use super::{swc_classification_of, WeightDistribution};
use crate::error::ensure_invariant;
use crate::gf::QuadraticExtension;
use crate::recurrence::{Case, RecurrenceParams};
use crate::Result;

/// Default cap on `q^2 * N` for exhaustive codeword enumeration.
pub const DEFAULT_BRUTEFORCE_BUDGET: u64 = 1_000_000_000;

/// Report flags.
pub mod flags {
    /// `u = 1`: semiprimitive holds vacuously.
    pub const TRIVIAL_U: &str = "trivial-u";
    /// MDS with a repeated root (only possible for `α = 1`).
    pub const SQUARE_MDS: &str = "square-mds";
    /// MDS in the irreducible case.
    pub const IRREDUCIBLE_MDS: &str = "irreducible-mds";
    /// Distribution taken from the closed form; enumeration was over budget.
    pub const THEORY_ONLY: &str = "theory-only";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Enumerate codewords when `q^2 * N` is at most this; `None` never enumerates.
    pub bruteforce_budget: Option<u64>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { bruteforce_budget: Some(DEFAULT_BRUTEFORCE_BUDGET) }
    }
}

/// Full analysis of one code. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub q: u64,
    pub a: String,
    pub b: String,
    pub case: Case,
    #[serde(rename = "N")]
    pub n: u64,
    pub e: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub weights: WeightDistribution,
    pub d: u64,
    pub d_dual: u64,
    pub mds: bool,
    pub projective: bool,
    pub one_weight: bool,
    pub u: Option<u64>,
    pub subfield: Option<bool>,
    pub semiprimitive: Option<bool>,
    pub flags: Vec<String>,
}

impl CodeReport {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    /// Irreducible, two-weight, and neither subfield nor semiprimitive.
    pub fn outside_classification(&self) -> bool {
        self.case == Case::Irreducible
            && !self.one_weight
            && self.subfield == Some(false)
            && self.semiprimitive == Some(false)
    }
}

/// Computes the full report for `C(a,b,q)`.
///
/// When enumeration is within budget the closed-form distribution must match
/// it exactly; any disagreement, and any broken structural invariant, is an
/// [`Error::Invariant`](crate::Error::Invariant).
pub fn analyze(tower: &QuadraticExtension, params: &RecurrenceParams, opts: &AnalyzeOptions) -> Result<CodeReport> {
    let field = tower.base();
    let q = field.q();
    let code = build_code(tower, params)?;
    let fact = *code.factorization();
    let profile = code.profile();
    let n = profile.period;
    generator_matrix(&code)?;

    let theory = weights_theoretical_of(tower, &fact, &profile)?;
    let mut flags = Vec::new();
    let within_budget = opts.bruteforce_budget.is_some_and(|budget| q * q * n <= budget);
    let weights = if within_budget {
        let brute = weights_bruteforce(&code, u64::MAX)?;
        ensure_invariant!(
            brute == theory,
            "q={q} a={} b={}: enumeration {brute} != closed form {theory}",
            field.format_element(params.a()),
            field.format_element(params.b())
        );
        brute
    } else {
        flags.push(flags::THEORY_ONLY.to_string());
        theory
    };

    ensure_invariant!(weights.num_weights() <= 2, "more than two nonzero weights: {weights}");
    ensure_invariant!(weights.total() == q * q - 1, "codeword count {} != q^2 - 1", weights.total());
    ensure_invariant!(weights.weighted_sum() == q * (q - 1) * n, "second moment mismatch for {weights}");

    let d = weights.min_weight().expect("nonempty distribution");
    let d_dual = dual_distance(&code)?;
    let mds = meets_singleton(n, d);
    let projective = d_dual >= 3;
    ensure_invariant!((2..=3).contains(&d_dual), "dual distance {d_dual} outside {{2, 3}}");
    ensure_invariant!(mds == projective, "MDS ({mds}) and projective ({projective}) disagree");

    let (mut u, mut subfield, mut semiprimitive) = (None, None, None);
    match fact.case() {
        Case::Irreducible => {
            let c = swc_classification_of(tower, &fact)?;
            u = Some(c.u);
            subfield = Some(c.subfield);
            semiprimitive = Some(c.semiprimitive);
            if c.trivial_u {
                flags.push(flags::TRIVIAL_U.to_string());
            }
            if mds {
                flags.push(flags::IRREDUCIBLE_MDS.to_string());
            }
        }
        Case::Repeated if mds => flags.push(flags::SQUARE_MDS.to_string()),
        _ => {}
    }

    Ok(CodeReport {
        q,
        a: field.format_element(params.a()),
        b: field.format_element(params.b()),
        case: fact.case(),
        n,
        e: profile.rank,
        k: profile.zero_count,
        one_weight: weights.num_weights() == 1,
        weights,
        d,
        d_dual,
        mds,
        projective,
        u,
        subfield,
        semiprimitive,
        flags,
    })
}
