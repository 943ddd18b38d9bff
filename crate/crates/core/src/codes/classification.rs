use crate::gf::{nt, QuadraticExtension};
use crate::recurrence::{self, CharFactorization, RecurrenceParams};
use crate::{Error, Result};

/// Where an irreducible code sits in the subfield / semiprimitive scheme.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SwcClassification {
    /// `u = (q^2 - 1) / N`.
    pub u: u64,
    /// The root of the check polynomial is primitive in a proper subfield of `F_{q^2}`.
    pub subfield: bool,
    /// `-1` is a power of `q` modulo `u`.
    pub semiprimitive: bool,
    /// `u = 1`, where the semiprimitive condition holds vacuously.
    pub trivial_u: bool,
}

impl SwcClassification {
    /// Neither subfield nor semiprimitive.
    pub fn is_outside(&self) -> bool {
        !self.subfield && !self.semiprimitive
    }
}

pub fn swc_classification(tower: &QuadraticExtension, params: &RecurrenceParams) -> Result<SwcClassification> {
    swc_classification_of(tower, &recurrence::classify(tower, params))
}

pub fn swc_classification_of(tower: &QuadraticExtension, fact: &CharFactorization) -> Result<SwcClassification> {
    let CharFactorization::Irreducible { alpha, .. } = *fact else {
        return Err(Error::NotIrreducible);
    };
    let base = tower.base();
    let (p, k, q) = (base.p(), base.k(), base.q());
    let order = tower.ext().mult_order(alpha)?;
    let group = q * q - 1;
    debug_assert_eq!(group % order, 0);
    let u = group / order;

    let semiprimitive = u == 1 || {
        let target = u - 1;
        (0..nt::order_mod(q % u, u)).any(|j| nt::pow_mod(q, j, u) == target)
    };
    let subfield =
        nt::divisors(2 * k as u64).into_iter().filter(|&d| d < 2 * k as u64).any(|d| p.pow(d as u32) - 1 == order);

    Ok(SwcClassification { u, subfield, semiprimitive, trivial_u: u == 1 })
}
