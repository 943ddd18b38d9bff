use std::fmt;

use crate::error::ensure_invariant;
use crate::gf::{Element, Field};
use crate::recurrence::RecurrenceParams;
use crate::Result;

/// Polynomial over `F_q`, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly(Vec<Element>);

impl Poly {
    pub fn new(mut coeffs: Vec<Element>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: &Field, n: usize) -> Self {
        let mut c = vec![Element::ZERO; n + 1];
        c[0] = field.neg(Element::ONE);
        c[n] = field.add(c[n], Element::ONE);
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.0.last() == Some(&Element::ONE)
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Element::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in other.0.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
        Poly::new(out)
    }

    /// Long division by a monic divisor: `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &Poly, field: &Field) -> (Poly, Poly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.0.len() - 1;
        if self.0.len() <= dd {
            return (Poly::default(), self.clone());
        }
        let mut rem = self.0.clone();
        let mut quot = vec![Element::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dd];
            if lead.is_zero() {
                continue;
            }
            quot[i] = lead;
            for (j, &d) in divisor.0.iter().enumerate() {
                rem[i + j] = field.sub(rem[i + j], field.mul(lead, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn display<'a>(&'a self, field: &'a Field) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, field }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    field: &'a Field,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .poly
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let coeff = self.field.format_element(c);
                match (i, c == Element::ONE) {
                    (0, _) => coeff,
                    (1, true) => "x".into(),
                    (1, false) => format!("{coeff}*x"),
                    (_, true) => format!("x^{i}"),
                    (_, false) => format!("{coeff}*x^{i}"),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Check polynomial `h` (monic reciprocal of `x^2 - a x - b`) and generator
/// polynomial `g = (x^N - 1) / h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckPolynomials {
    pub h: Poly,
    pub g: Poly,
}

/// Builds `h = x^2 + (a/b) x - 1/b`, divides it into `x^N - 1`, and checks
/// `g * h = x^N - 1`.
pub fn check_polynomials(field: &Field, params: &RecurrenceParams, period: u64) -> Result<CheckPolynomials> {
    let b_inv = field.inv(params.b())?;
    let h = Poly::new(vec![field.neg(b_inv), field.mul(params.a(), b_inv), Element::ONE]);
    let target = Poly::x_pow_minus_one(field, period as usize);
    let (g, rem) = target.div_rem_monic(&h, field);
    ensure_invariant!(rem.is_zero(), "h = {} does not divide x^{period} - 1", h.display(field));
    ensure_invariant!(g.mul(&h, field) == target, "g * h != x^{period} - 1");
    Ok(CheckPolynomials { h, g })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_examples() {
        let f = Field::conway(3, 1).unwrap();
        let swap = RecurrenceParams::new(Element::ZERO, Element::ONE).unwrap();
        let c = check_polynomials(&f, &swap, 2).unwrap();
        assert_eq!(c.h, Poly::x_pow_minus_one(&f, 2));
        assert_eq!(c.g, Poly::new(vec![Element::ONE]));

        let sq = RecurrenceParams::new(f.from_int(2), f.from_int(2)).unwrap();
        let c = check_polynomials(&f, &sq, 3).unwrap();
        assert_eq!(c.h, Poly::new(vec![Element::ONE, Element::ONE, Element::ONE]));
        assert_eq!(c.g, Poly::new(vec![f.from_int(-1), Element::ONE]));
    }

    #[test]
    fn f9_distinct_check_polynomial() {
        let f = Field::conway(3, 2).unwrap();
        let p = RecurrenceParams::parse(&f, "r^4", "r^8").unwrap();
        let c = check_polynomials(&f, &p, 8).unwrap();
        assert_eq!(c.h, Poly::new(vec![f.from_int(2), f.from_int(2), Element::ONE]));
        assert_eq!(c.g.degree(), Some(6));
        assert_eq!(c.h.display(&f).to_string(), "x^2 + r^4*x + r^4");
    }

    #[test]
    fn wrong_period_is_reported() {
        let f = Field::conway(3, 2).unwrap();
        let p = RecurrenceParams::parse(&f, "r^4", "r^8").unwrap();
        assert!(check_polynomials(&f, &p, 5).unwrap_err().is_invariant_violation());
    }

    #[test]
    fn division_round_trip() {
        let f = Field::conway(5, 1).unwrap();
        let a = Poly::new(vec![f.exp(1), Element::ZERO, f.exp(3), Element::ONE, f.exp(2)]);
        let d = Poly::new(vec![f.exp(2), f.exp(1), Element::ONE]);
        let (quot, rem) = a.div_rem_monic(&d, &f);
        let back = quot.mul(&d, &f);
        let summed: Vec<_> = (0..5)
            .map(|i| {
                let x = back.coeffs().get(i).copied().unwrap_or(Element::ZERO);
                let y = rem.coeffs().get(i).copied().unwrap_or(Element::ZERO);
                f.add(x, y)
            })
            .collect();
        assert_eq!(Poly::new(summed), a);
    }
}
