use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::TwoDimCyclicCode;
use crate::error::ensure_invariant;
use crate::gf::{Element, QuadraticExtension};
use crate::recurrence::{self, CharFactorization, RecurrenceParams, SequenceProfile};
use crate::{Error, Result};

/// Nonzero-codeword weight enumerator: `(weight, count)` pairs with strictly
/// increasing weights and positive counts.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u64)>", into = "Vec<(u64, u64)>")]
pub struct WeightDistribution(Vec<(u64, u64)>);

impl WeightDistribution {
    /// Merges repeated weights and drops zero counts.
    pub fn from_counts(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (w, c) in pairs {
            *map.entry(w).or_insert(0) += c;
        }
        WeightDistribution(map.into_iter().filter(|&(_, c)| c > 0).collect())
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.0
    }

    pub fn num_weights(&self) -> usize {
        self.0.len()
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.0.iter().find(|&&(w, _)| w == weight).map_or(0, |&(_, c)| c)
    }

    pub fn min_weight(&self) -> Option<u64> {
        self.0.first().map(|&(w, _)| w)
    }

    /// Number of nonzero codewords.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&(_, c)| c).sum()
    }

    /// Sum of weights over all codewords.
    pub fn weighted_sum(&self) -> u64 {
        self.0.iter().map(|&(w, c)| w * c).sum()
    }
}

impl TryFrom<Vec<(u64, u64)>> for WeightDistribution {
    type Error = String;

    fn try_from(v: Vec<(u64, u64)>) -> std::result::Result<Self, String> {
        if v.windows(2).any(|p| p[0].0 >= p[1].0) || v.iter().any(|&(_, c)| c == 0) {
            return Err(format!("weights must increase strictly with positive counts: {v:?}"));
        }
        Ok(WeightDistribution(v))
    }
}

impl From<WeightDistribution> for Vec<(u64, u64)> {
    fn from(w: WeightDistribution) -> Self {
        w.0
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Closed-form weight distribution.
///
/// Weights `N-K` and `N` with counts `(q-1)N/K` and `(q-1)(K(q+1)-N)/K`. The
/// second count vanishes exactly when `e = q+1` (one-weight irreducible
/// codes). For a repeated root `K = N/p`, giving counts `p(q-1)` and
/// `(q-1)(q+1-p)`: a solution `α^n(λ + μn)` with `μ != 0` has zeros only when
/// `-λ/μ` lies in the prime field.
pub fn weights_theoretical(tower: &QuadraticExtension, params: &RecurrenceParams) -> Result<WeightDistribution> {
    let fact = recurrence::classify(tower, params);
    let profile = recurrence::profile_of(tower, &fact)?;
    weights_theoretical_of(tower, &fact, &profile)
}

pub fn weights_theoretical_of(
    tower: &QuadraticExtension,
    fact: &CharFactorization,
    profile: &SequenceProfile,
) -> Result<WeightDistribution> {
    let q = tower.base().q();
    let n = profile.period;
    let k = profile.zero_count;
    if let CharFactorization::Repeated { .. } = fact {
        ensure_invariant!(k * tower.base().p() == n, "repeated root with K != N/p");
    }
    ensure_invariant!(k * (q + 1) >= n, "K(q+1) < N for K={k}, q={q}, N={n}");
    let low = (q - 1) * n / k;
    let high = (q - 1) * (k * (q + 1) - n) / k;
    Ok(WeightDistribution::from_counts([(n - k, low), (n, high)]))
}

/// Enumerates all `q^2 - 1` nonzero codewords, each generated by running the
/// recurrence from its initial state.
///
/// Fails when `q^2 * N` exceeds `budget`.
pub fn weights_bruteforce(code: &TwoDimCyclicCode<'_>, budget: u64) -> Result<WeightDistribution> {
    let f = code.field();
    let q = f.q();
    let n = code.length();
    let cost = q * q * n as u64;
    if cost > budget {
        return Err(Error::BudgetExceeded { cost, budget });
    }
    let (a, b) = (code.params().a(), code.params().b());
    let elements: Vec<Element> = f.elements().collect();

    let zero_tallies = elements
        .par_iter()
        .map(|&g0| {
            let mut tally = vec![0u64; n + 1];
            for g1 in f.elements() {
                if g0.is_zero() && g1.is_zero() {
                    continue;
                }
                let (mut x, mut y) = (g0, g1);
                let mut zeros = 0;
                for _ in 0..n {
                    zeros += x.is_zero() as usize;
                    let next = f.add(f.mul(a, y), f.mul(b, x));
                    (x, y) = (y, next);
                }
                tally[zeros] += 1;
            }
            tally
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut acc, t| {
                acc.iter_mut().zip(t).for_each(|(x, y)| *x += y);
                acc
            },
        );

    Ok(WeightDistribution::from_counts(
        zero_tallies.into_iter().enumerate().map(|(zeros, count)| ((n - zeros) as u64, count)),
    ))
}
