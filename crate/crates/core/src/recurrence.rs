//! The recurrence `g(n+2) = a*g(n+1) + b*g(n)` and its characteristic
//! polynomial `P(x) = x^2 - a x - b`.
//!
//! Depending on how `P` factors over `F_q` the solutions take one of three
//! closed forms, and the period `N` and rank `e` follow from the roots:
//!
//! | case        | `g(n)`                          | `N`                         | `e`              |
//! |-------------|---------------------------------|-----------------------------|------------------|
//! | irreducible | `λα^n + λ^q α^{qn}`             | `ord(α)` in `F_{q^2}`       | `ord(β/α)`       |
//! | distinct    | `λα^n + μβ^n`                   | `lcm(ord α, ord β)`         | `ord(β/α)`       |
//! | repeated    | `α^n (λ + μ n)`                 | `p · ord(α)`                | `p`              |

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ensure_invariant;
use crate::gf::{nt, Element, Field, QuadraticExtension};
use crate::{Error, Result};

/// Coefficients `(a, b)` of the recurrence, with `b != 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RecurrenceParams {
    a: Element,
    b: Element,
}

impl RecurrenceParams {
    pub fn new(a: Element, b: Element) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::ZeroB);
        }
        Ok(RecurrenceParams { a, b })
    }

    /// Parses both coefficients in element text form.
    pub fn parse(field: &Field, a: &str, b: &str) -> Result<Self> {
        Self::new(field.parse_element(a)?, field.parse_element(b)?)
    }

    pub fn a(&self) -> Element {
        self.a
    }

    pub fn b(&self) -> Element {
        self.b
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Irreducible,
    Distinct,
    Repeated,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Irreducible => "irreducible",
            Case::Distinct => "distinct",
            Case::Repeated => "repeated",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "irreducible" => Ok(Case::Irreducible),
            "distinct" => Ok(Case::Distinct),
            "repeated" => Ok(Case::Repeated),
            other => Err(format!("unknown case {other:?}")),
        }
    }
}

/// Factorization of `x^2 - a x - b`.
///
/// In the irreducible case both roots live in `F_{q^2}` and `beta = alpha^q`;
/// otherwise the roots are base-field elements. `alpha` is always the root
/// with the smaller discrete log.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CharFactorization {
    Irreducible { alpha: Element, beta: Element },
    Distinct { alpha: Element, beta: Element },
    Repeated { alpha: Element },
}

impl CharFactorization {
    pub fn case(&self) -> Case {
        match self {
            CharFactorization::Irreducible { .. } => Case::Irreducible,
            CharFactorization::Distinct { .. } => Case::Distinct,
            CharFactorization::Repeated { .. } => Case::Repeated,
        }
    }
}

/// Period `N`, rank `e` and `K = N / e`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SequenceProfile {
    pub period: u64,
    pub rank: u64,
    /// `K`: number of zeros in one period of any solution that has zeros.
    pub zero_count: u64,
}

/// `(λ, μ)` in the closed form of a solution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SolutionCoeffs {
    pub lambda: Element,
    pub mu: Element,
}

fn is_root(f: &Field, a: Element, b: Element, t: Element) -> bool {
    // t^2 - a t - b
    f.sub(f.sub(f.mul(t, t), f.mul(a, t)), b).is_zero()
}

pub fn classify(tower: &QuadraticExtension, params: &RecurrenceParams) -> CharFactorization {
    let f = tower.base();
    let (a, b) = (params.a, params.b);
    let roots: Vec<Element> = f.nonzero().filter(|&t| is_root(f, a, b, t)).take(2).collect();
    match roots[..] {
        [alpha, beta] => return CharFactorization::Distinct { alpha, beta },
        [alpha] => return CharFactorization::Repeated { alpha },
        _ => {}
    }

    // Both roots of an irreducible P have norm alpha^{q+1} = -b, so only
    // the q+1 elements of that norm need testing.
    let ext = tower.ext();
    let (ea, eb) = (tower.embed(a), tower.embed(b));
    let q = f.q();
    let target = tower.embed(f.neg(b)).log().expect("b != 0") as u64;
    let first = (target / (q + 1)) % (q - 1).max(1);
    let mut candidates: Vec<u64> = (0..=q).map(|j| first + j * (q - 1)).collect();
    candidates.sort_unstable();
    let mut found = candidates.into_iter().map(|m| ext.exp(m as i64)).filter(|&t| is_root(ext, ea, eb, t));
    let alpha = found.next().expect("a quadratic without roots in F_q splits in F_{q^2}");
    let beta = tower.frobenius(alpha);
    CharFactorization::Irreducible { alpha, beta }
}

pub fn period(tower: &QuadraticExtension, params: &RecurrenceParams) -> u64 {
    period_of(tower, &classify(tower, params))
}

pub fn period_of(tower: &QuadraticExtension, fact: &CharFactorization) -> u64 {
    let f = tower.base();
    let order = |field: &Field, x| field.mult_order(x).expect("roots are nonzero");
    match *fact {
        CharFactorization::Irreducible { alpha, .. } => order(tower.ext(), alpha),
        CharFactorization::Distinct { alpha, beta } => nt::lcm(order(f, alpha), order(f, beta)),
        CharFactorization::Repeated { alpha } => f.p() * order(f, alpha),
    }
}

pub fn rank(tower: &QuadraticExtension, params: &RecurrenceParams) -> u64 {
    rank_of(tower, &classify(tower, params))
}

pub fn rank_of(tower: &QuadraticExtension, fact: &CharFactorization) -> u64 {
    let ratio_order = |field: &Field, alpha, beta| {
        let ratio = field.div(beta, alpha).expect("roots are nonzero");
        field.mult_order(ratio).expect("roots are nonzero")
    };
    match *fact {
        CharFactorization::Irreducible { alpha, beta } => ratio_order(tower.ext(), alpha, beta),
        CharFactorization::Distinct { alpha, beta } => ratio_order(tower.base(), alpha, beta),
        CharFactorization::Repeated { .. } => tower.base().p(),
    }
}

pub fn profile(tower: &QuadraticExtension, params: &RecurrenceParams) -> Result<SequenceProfile> {
    profile_of(tower, &classify(tower, params))
}

pub fn profile_of(tower: &QuadraticExtension, fact: &CharFactorization) -> Result<SequenceProfile> {
    let period = period_of(tower, fact);
    let rank = rank_of(tower, fact);
    ensure_invariant!(period.is_multiple_of(rank), "rank {rank} does not divide period {period}");
    Ok(SequenceProfile { period, rank, zero_count: period / rank })
}

/// Solves for `(λ, μ)` given the initial state `(g0, g1)` (base-field elements).
pub fn solve_coefficients(
    tower: &QuadraticExtension,
    fact: &CharFactorization,
    g0: Element,
    g1: Element,
) -> Result<SolutionCoeffs> {
    if g0.is_zero() && g1.is_zero() {
        return Err(Error::ZeroState);
    }
    let two_roots = |f: &Field, alpha, beta, g0, g1| -> Result<SolutionCoeffs> {
        let denom = f.sub(alpha, beta);
        let lambda = f.div(f.sub(g1, f.mul(beta, g0)), denom)?;
        let mu = f.div(f.sub(f.mul(alpha, g0), g1), denom)?;
        Ok(SolutionCoeffs { lambda, mu })
    };
    match *fact {
        CharFactorization::Distinct { alpha, beta } => two_roots(tower.base(), alpha, beta, g0, g1),
        CharFactorization::Irreducible { alpha, beta } => {
            let c = two_roots(tower.ext(), alpha, beta, tower.embed(g0), tower.embed(g1))?;
            ensure_invariant!(c.mu == tower.frobenius(c.lambda), "mu != lambda^q in the irreducible case");
            Ok(c)
        }
        CharFactorization::Repeated { alpha } => {
            let f = tower.base();
            Ok(SolutionCoeffs { lambda: g0, mu: f.sub(f.div(g1, alpha)?, g0) })
        }
    }
}

/// Evaluates the closed form at index `n`, returning a base-field element.
pub fn closed_form(
    tower: &QuadraticExtension,
    fact: &CharFactorization,
    coeffs: &SolutionCoeffs,
    n: u64,
) -> Result<Element> {
    let SolutionCoeffs { lambda, mu } = *coeffs;
    let two_roots = |f: &Field, alpha, beta| f.add(f.mul(lambda, f.pow(alpha, n)), f.mul(mu, f.pow(beta, n)));
    match *fact {
        CharFactorization::Distinct { alpha, beta } => Ok(two_roots(tower.base(), alpha, beta)),
        CharFactorization::Irreducible { alpha, beta } => {
            let v = two_roots(tower.ext(), alpha, beta);
            tower.restrict(v).ok_or_else(|| Error::Invariant(format!("closed form at n={n} left the base field")))
        }
        CharFactorization::Repeated { alpha } => {
            let f = tower.base();
            let linear = f.add(lambda, f.mul(mu, f.from_int((n % f.p()) as i64)));
            Ok(f.mul(f.pow(alpha, n), linear))
        }
    }
}

/// First `len` terms starting from `(g0, g1)`, by direct iteration.
pub fn generate_sequence(
    field: &Field,
    params: &RecurrenceParams,
    g0: Element,
    g1: Element,
    len: usize,
) -> Vec<Element> {
    let mut out = Vec::with_capacity(len);
    let (mut x, mut y) = (g0, g1);
    for _ in 0..len {
        out.push(x);
        let next = field.add(field.mul(params.a, y), field.mul(params.b, x));
        (x, y) = (y, next);
    }
    out
}

/// Indices `n` in `0..N` with `g(n) = 0`.
pub fn zero_positions(
    tower: &QuadraticExtension,
    params: &RecurrenceParams,
    g0: Element,
    g1: Element,
) -> Result<BTreeSet<u64>> {
    if g0.is_zero() && g1.is_zero() {
        return Err(Error::ZeroState);
    }
    let n = period(tower, params) as usize;
    let seq = generate_sequence(tower.base(), params, g0, g1, n);
    Ok(seq.iter().enumerate().filter(|(_, g)| g.is_zero()).map(|(i, _)| i as u64).collect())
}

type Mat2 = [[Element; 2]; 2];

fn mat_mul(f: &Field, x: &Mat2, y: &Mat2) -> Mat2 {
    let entry = |i: usize, j: usize| f.add(f.mul(x[i][0], y[0][j]), f.mul(x[i][1], y[1][j]));
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// Order of the companion matrix `[[0, 1], [b, a]]`, by repeated multiplication.
pub fn companion_order(field: &Field, params: &RecurrenceParams) -> u64 {
    let m: Mat2 = [[Element::ZERO, Element::ONE], [params.b, params.a]];
    let identity: Mat2 = [[Element::ONE, Element::ZERO], [Element::ZERO, Element::ONE]];
    let mut acc = m;
    let mut t = 1;
    while acc != identity {
        acc = mat_mul(field, &acc, &m);
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u64, k: u32) -> QuadraticExtension {
        QuadraticExtension::new(Field::conway(p, k).unwrap()).unwrap()
    }

    fn params(t: &QuadraticExtension, a: &str, b: &str) -> RecurrenceParams {
        RecurrenceParams::parse(t.base(), a, b).unwrap()
    }

    #[test]
    fn rejects_zero_b() {
        let t = tower(3, 2);
        assert!(matches!(RecurrenceParams::parse(t.base(), "r^2", "0"), Err(Error::ZeroB)));
    }

    #[test]
    fn f9_three_cases() {
        let t = tower(3, 2);
        let f = t.base();

        let irr = params(&t, "r^2", "r^3");
        assert_eq!(classify(&t, &irr).case(), Case::Irreducible);
        assert_eq!(period(&t, &irr), 80);
        assert_eq!(rank(&t, &irr), 10);
        assert_eq!(profile(&t, &irr).unwrap(), SequenceProfile { period: 80, rank: 10, zero_count: 8 });
        assert_eq!(companion_order(f, &irr), 80);

        let dist = params(&t, "r^4", "r^8");
        assert_eq!(classify(&t, &dist), CharFactorization::Distinct { alpha: f.exp(5), beta: f.exp(7) });
        assert_eq!(profile(&t, &dist).unwrap(), SequenceProfile { period: 8, rank: 4, zero_count: 2 });
        assert_eq!(companion_order(f, &dist), 8);

        let rep = params(&t, "r^8", "r^4");
        assert_eq!(classify(&t, &rep), CharFactorization::Repeated { alpha: f.from_int(2) });
        assert_eq!(profile(&t, &rep).unwrap(), SequenceProfile { period: 6, rank: 3, zero_count: 2 });
    }

    #[test]
    fn f3_sequences() {
        let t = tower(3, 1);
        let f = t.base();
        let one = Element::ONE;
        let fib = RecurrenceParams::new(one, one).unwrap();
        let seq = generate_sequence(f, &fib, Element::ZERO, one, 8);
        let ints: Vec<_> = seq.iter().map(|&x| f.coeffs(x)[0]).collect();
        assert_eq!(ints, vec![0, 1, 1, 2, 0, 2, 2, 1]);

        let two = f.from_int(2);
        let sq = RecurrenceParams::new(two, two).unwrap();
        assert_eq!(classify(&t, &sq), CharFactorization::Repeated { alpha: one });
        let seq = generate_sequence(f, &sq, Element::ZERO, one, 6);
        let ints: Vec<_> = seq.iter().map(|&x| f.coeffs(x)[0]).collect();
        assert_eq!(ints, vec![0, 1, 2, 0, 1, 2]);
        // N = p * ord(1) = 3; the sequence 0,1,2 already repeats
        assert_eq!(companion_order(f, &sq), 3);
        assert_eq!(period(&t, &sq), 3);
        let zeros = zero_positions(&t, &sq, Element::ZERO, one).unwrap();
        assert_eq!(zeros.into_iter().collect::<Vec<_>>(), vec![0]);

        let echo = generate_sequence(f, &sq, one, two, 2);
        assert_eq!(echo, vec![one, two]);
    }

    #[test]
    fn solution_coefficients_examples() {
        let t = tower(3, 2);
        let f = t.base();
        let dist = params(&t, "r^4", "r^8");
        let fact = classify(&t, &dist);
        let CharFactorization::Distinct { alpha, beta } = fact else { unreachable!() };
        let c = solve_coefficients(&t, &fact, Element::ONE, alpha).unwrap();
        assert_eq!(c, SolutionCoeffs { lambda: Element::ONE, mu: Element::ZERO });
        let c = solve_coefficients(&t, &fact, f.from_int(2), f.add(alpha, beta)).unwrap();
        assert_eq!(c, SolutionCoeffs { lambda: Element::ONE, mu: Element::ONE });
        assert_eq!(zero_positions(&t, &dist, Element::ONE, alpha).unwrap().len(), 0);
        assert!(matches!(solve_coefficients(&t, &fact, Element::ZERO, Element::ZERO), Err(Error::ZeroState)));

        let rep = params(&t, "r^8", "r^4");
        let fact = classify(&t, &rep);
        let CharFactorization::Repeated { alpha } = fact else { unreachable!() };
        let c = solve_coefficients(&t, &fact, Element::ZERO, alpha).unwrap();
        assert_eq!(c, SolutionCoeffs { lambda: Element::ZERO, mu: Element::ONE });
    }

    #[test]
    fn characteristic_two_irreducible() {
        // x^2 + x + 1 over F_2 has roots of order 3 in F_4
        let t = tower(2, 1);
        let p = RecurrenceParams::new(Element::ONE, Element::ONE).unwrap();
        let fact = classify(&t, &p);
        assert_eq!(fact.case(), Case::Irreducible);
        assert_eq!(profile(&t, &p).unwrap(), SequenceProfile { period: 3, rank: 3, zero_count: 1 });
        assert_eq!(companion_order(t.base(), &p), 3);
    }
}
