//! Exhaustive invariant suites over every field up to a given size.
//!
//! Each suite counts how many pairs (or fields) it checked and collects a
//! message per failure; nothing here short-circuits.

use std::fmt;

use rayon::prelude::*;

use crate::codes::{analyze, build_code, check_polynomials, AnalyzeOptions};
use crate::gf::{nt, Element, Field, QuadraticExtension};
use crate::recurrence::{self, CharFactorization, RecurrenceParams};
use crate::{Error, Result};

/// Largest `N` for which check polynomials are verified.
pub const CHECK_POLY_MAX_N: u64 = 2500;
/// Fields up to this size get the exhaustive axiom checks.
pub const FIELD_AXIOMS_MAX_Q: u64 = 27;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Suite {
    FieldArithmetic,
    Factorization,
    CompanionOrder,
    PeriodBounds,
    Weights,
    OneWeightDichotomy,
    PlessMoments,
    Duality,
    CheckPolynomial,
    ClosedForm,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::FieldArithmetic,
        Suite::Factorization,
        Suite::CompanionOrder,
        Suite::PeriodBounds,
        Suite::Weights,
        Suite::OneWeightDichotomy,
        Suite::PlessMoments,
        Suite::Duality,
        Suite::CheckPolynomial,
        Suite::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FieldArithmetic => "field axioms, Zech table, embedding, trace",
            Suite::Factorization => "factorization reproduces x^2 - a x - b",
            Suite::CompanionOrder => "period = companion matrix order",
            Suite::PeriodBounds => "period divisibility by case",
            Suite::Weights => "at most two weights, closed form = enumeration",
            Suite::OneWeightDichotomy => "irreducible: e <= q+1, one-weight iff e = q+1",
            Suite::PlessMoments => "first two power moments",
            Suite::Duality => "d_dual in {2,3}, MDS iff projective iff K = 1",
            Suite::CheckPolynomial => "g * h = x^N - 1",
            Suite::ClosedForm => "closed form = iteration, zero sets",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checked: u64,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub fields: Vec<u64>,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    pub fn suite(&self, suite: Suite) -> &SuiteResult {
        self.suites.iter().find(|s| s.suite == suite).expect("every suite is reported")
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.fields.iter().map(u64::to_string).collect();
        writeln!(f, "fields: {}", qs.join(" "))?;
        for s in &self.suites {
            let status = if s.failures.is_empty() { "PASS" } else { "FAIL" };
            writeln!(f, "[{status}] {}: {} checked, {} failed", s.suite.name(), s.checked, s.failures.len())?;
            for msg in s.failures.iter().take(10) {
                writeln!(f, "    {msg}")?;
            }
        }
        writeln!(f, "selftest {}", if self.passed() { "passed" } else { "FAILED" })
    }
}

/// Prime powers `2 <= q <= max_q`.
pub fn field_orders(max_q: u64) -> Vec<u64> {
    (2..=max_q).filter(|&q| nt::prime_power(q).is_some()).collect()
}

/// Runs every suite over all fields of order at most `max_q`.
pub fn run_selftest(max_q: u64) -> Result<SelftestReport> {
    if max_q < 2 {
        return Err(Error::Usage(format!("max-q must be at least 2, got {max_q}")));
    }
    let fields = field_orders(max_q);
    let mut outcomes: Vec<Outcome> = Vec::new();
    for &q in &fields {
        let tower = QuadraticExtension::new(Field::with_order(q)?)?;
        if q <= FIELD_AXIOMS_MAX_Q {
            outcomes.extend(check_field(&tower));
        }
        let pairs: Vec<(Element, Element)> =
            tower.base().elements().flat_map(|a| tower.base().nonzero().map(move |b| (a, b))).collect();
        let per_pair: Vec<Vec<Outcome>> = pairs.par_iter().map(|&(a, b)| check_pair(&tower, a, b)).collect();
        outcomes.extend(per_pair.into_iter().flatten());
    }

    let suites = Suite::ALL
        .iter()
        .map(|&suite| {
            let mine: Vec<&Outcome> = outcomes.iter().filter(|o| o.suite == suite).collect();
            SuiteResult {
                suite,
                checked: mine.len() as u64,
                failures: mine.iter().filter_map(|o| o.failure.clone()).collect(),
            }
        })
        .collect();
    Ok(SelftestReport { fields, suites })
}

struct Outcome {
    suite: Suite,
    failure: Option<String>,
}

fn outcome(suite: Suite, ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    Outcome { suite, failure: (!ok).then(msg) }
}

fn check_field(tower: &QuadraticExtension) -> Vec<Outcome> {
    let f = tower.base();
    let q = f.q();
    let elems: Vec<Element> = f.elements().collect();
    let mut ok = true;
    let mut first_bad = String::new();
    let mut fail = |what: String| {
        if ok {
            first_bad = what;
        }
        ok = false;
    };

    for &x in &elems {
        for &y in &elems {
            if f.add(x, y) != f.add(y, x) || f.mul(x, y) != f.mul(y, x) {
                fail(format!("q={q}: commutativity at {x:?}, {y:?}"));
            }
            if tower.embed(f.add(x, y)) != tower.ext().add(tower.embed(x), tower.embed(y))
                || tower.embed(f.mul(x, y)) != tower.ext().mul(tower.embed(x), tower.embed(y))
            {
                fail(format!("q={q}: embedding not a homomorphism at {x:?}, {y:?}"));
            }
            for &z in &elems {
                if f.add(f.add(x, y), z) != f.add(x, f.add(y, z))
                    || f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z))
                    || f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z))
                {
                    fail(format!("q={q}: associativity/distributivity at {x:?}, {y:?}, {z:?}"));
                }
            }
        }
        if !x.is_zero() {
            let order = f.mult_order(x).unwrap_or(0);
            if f.pow(x, q - 1) != Element::ONE || !(q - 1).is_multiple_of(order.max(1)) {
                fail(format!("q={q}: x^(q-1) != 1 or bad order for {x:?}"));
            }
        }
    }

    let p = f.p() as u32;
    for n in 0..f.group_order() as u32 {
        let mut c = f.coeffs(f.exp(n as i64));
        c[0] = (c[0] + 1) % p;
        let expected = f.from_coeffs(&c).expect("coefficients in range");
        let table = f.zech(n).map_or(Element::ZERO, Element::from_log);
        if expected != table {
            fail(format!("q={q}: Zech entry {n}"));
        }
    }

    for y in tower.ext().elements() {
        if tower.relative_trace(y).is_err() {
            fail(format!("q={q}: trace of {y:?} leaves the base field"));
        }
    }

    vec![outcome(Suite::FieldArithmetic, ok, || first_bad)]
}

fn check_pair(tower: &QuadraticExtension, a: Element, b: Element) -> Vec<Outcome> {
    let f = tower.base();
    let q = f.q();
    let label = format!("q={q} a={} b={}", f.format_element(a), f.format_element(b));
    let params = RecurrenceParams::new(a, b).expect("b is nonzero");
    let fact = recurrence::classify(tower, &params);
    let mut out = Vec::new();

    out.push(outcome(Suite::Factorization, reconstructs(tower, &params, &fact), || {
        format!("{label}: {fact:?} does not expand to x^2 - a x - b")
    }));

    let profile = match recurrence::profile_of(tower, &fact) {
        Ok(p) => p,
        Err(e) => {
            out.push(outcome(Suite::PeriodBounds, false, || format!("{label}: {e}")));
            return out;
        }
    };
    let (n, e, k) = (profile.period, profile.rank, profile.zero_count);

    let companion = recurrence::companion_order(f, &params);
    out.push(outcome(Suite::CompanionOrder, companion == n, || {
        format!("{label}: period {n} != companion order {companion}")
    }));

    let bounds_ok = match fact {
        CharFactorization::Irreducible { .. } => {
            let ord_neg_b = f.mult_order(f.neg(b)).expect("b != 0");
            ((q + 1) * ord_neg_b).is_multiple_of(n)
        }
        CharFactorization::Distinct { .. } => (q - 1).is_multiple_of(n),
        CharFactorization::Repeated { alpha } => n == f.p() * f.mult_order(alpha).expect("alpha != 0"),
    };
    out.push(outcome(Suite::PeriodBounds, bounds_ok, || format!("{label}: N={n} violates its bound")));

    let report = match analyze(tower, &params, &AnalyzeOptions { bruteforce_budget: Some(u64::MAX) }) {
        Ok(r) => r,
        Err(err) => {
            out.push(outcome(Suite::Weights, false, || format!("{label}: {err}")));
            return out;
        }
    };
    out.push(outcome(Suite::Weights, report.weights.num_weights() <= 2, || {
        format!("{label}: weights {}", report.weights)
    }));

    if let CharFactorization::Irreducible { .. } = fact {
        let ok = e <= q + 1 && report.one_weight == (e == q + 1);
        out.push(outcome(Suite::OneWeightDichotomy, ok, || {
            format!("{label}: e={e}, one_weight={}", report.one_weight)
        }));
    }

    let w = &report.weights;
    out.push(outcome(Suite::PlessMoments, w.total() == q * q - 1 && w.weighted_sum() == q * (q - 1) * n, || {
        format!("{label}: moments of {w} do not balance")
    }));

    let duality_ok = (2..=3).contains(&report.d_dual)
        && report.mds == report.projective
        && report.mds == (report.d + 1 == n)
        && report.mds == (k == 1);
    out.push(outcome(Suite::Duality, duality_ok, || {
        format!("{label}: d={} d_dual={} mds={} K={k}", report.d, report.d_dual, report.mds)
    }));

    if n <= CHECK_POLY_MAX_N {
        let res = check_polynomials(f, &params, n);
        out.push(outcome(Suite::CheckPolynomial, res.is_ok(), || format!("{label}: {}", res.unwrap_err())));
    }

    out.push(match closed_form_agrees(tower, &params, &fact, n, e, k) {
        Ok(()) => outcome(Suite::ClosedForm, true, String::new),
        Err(msg) => outcome(Suite::ClosedForm, false, || format!("{label}: {msg}")),
    });
    out
}

fn reconstructs(tower: &QuadraticExtension, params: &RecurrenceParams, fact: &CharFactorization) -> bool {
    let sum_product = |field: &Field, alpha, beta, a, b| {
        field.add(alpha, beta) == a && field.mul(alpha, beta) == field.neg(b) && alpha != beta
    };
    match *fact {
        CharFactorization::Irreducible { alpha, beta } => {
            tower.restrict(alpha).is_none()
                && sum_product(tower.ext(), alpha, beta, tower.embed(params.a()), tower.embed(params.b()))
        }
        CharFactorization::Distinct { alpha, beta } => sum_product(tower.base(), alpha, beta, params.a(), params.b()),
        CharFactorization::Repeated { alpha } => {
            let f = tower.base();
            !alpha.is_zero() && f.add(alpha, alpha) == params.a() && f.mul(alpha, alpha) == f.neg(params.b())
        }
    }
}

/// Every nonzero state: closed form matches iteration, the zero set has size 0
/// or `K` and sits in one residue class mod `e`. In the irreducible case the
/// set of observed zero counts must follow the one-/two-weight dichotomy.
fn closed_form_agrees(
    tower: &QuadraticExtension,
    params: &RecurrenceParams,
    fact: &CharFactorization,
    n: u64,
    e: u64,
    k: u64,
) -> std::result::Result<(), String> {
    let f = tower.base();
    let code = build_code(tower, params).map_err(|err| err.to_string())?;
    let mut seen_counts = std::collections::BTreeSet::new();
    for g0 in f.elements() {
        for g1 in f.elements() {
            if g0.is_zero() && g1.is_zero() {
                continue;
            }
            let coeffs = recurrence::solve_coefficients(tower, fact, g0, g1).map_err(|err| err.to_string())?;
            let seq = code.codeword(g0, g1);
            let mut zeros = Vec::new();
            for (i, &g) in seq.iter().enumerate() {
                let closed = recurrence::closed_form(tower, fact, &coeffs, i as u64).map_err(|err| err.to_string())?;
                if closed != g {
                    return Err(format!("state ({g0:?},{g1:?}) differs at n={i}"));
                }
                if g.is_zero() {
                    zeros.push(i as u64);
                }
            }
            let count = zeros.len() as u64;
            if count != 0 && count != k {
                return Err(format!("state ({g0:?},{g1:?}) has {count} zeros, K={k}"));
            }
            if zeros.iter().any(|z| z % e != zeros[0] % e) {
                return Err(format!("zeros of ({g0:?},{g1:?}) span several classes mod {e}"));
            }
            seen_counts.insert(count);
        }
    }
    if let CharFactorization::Irreducible { .. } = fact {
        let q = f.q();
        let expected: std::collections::BTreeSet<u64> = if e == q + 1 { [k].into() } else { [0, k].into() };
        if seen_counts != expected {
            return Err(format!("zero counts {seen_counts:?} for e={e}, N={n}"));
        }
    }
    Ok(())
}
