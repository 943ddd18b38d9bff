//! Exact arithmetic in small finite fields `F_{p^k}`.
//!
//! Nonzero elements are stored as discrete logarithms to a fixed primitive
//! element `r`, so multiplication, inversion and order are exponent
//! arithmetic. Addition goes through a Zech logarithm table:
//! `1 + r^n = r^{z(n)}`.

mod conway;
mod extension;
pub mod nt;

use std::fmt;

pub use conway::{conway_polynomial, parse_table as parse_conway_table, table_entries as conway_entries};
pub use extension::QuadraticExtension;

use crate::{Error, Result};

/// Largest field size accepted unless overridden by [`MAX_FIELD_ENV`].
pub const DEFAULT_MAX_FIELD_SIZE: u64 = 1 << 20;
/// Environment variable overriding [`DEFAULT_MAX_FIELD_SIZE`].
pub const MAX_FIELD_ENV: &str = "RECUR2CODE_MAX_Q";

pub fn max_field_size() -> u64 {
    std::env::var(MAX_FIELD_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_FIELD_SIZE)
}

const ZECH_NONE: u32 = u32::MAX;

/// A field element: zero, or `r^n` for an exponent `n` in `0..q-1`.
///
/// The encoding puts zero first so that the derived ordering sorts by
/// discrete log with zero ahead of everything else.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    /// `r^n`; the exponent must already be reduced modulo `q - 1`.
    pub const fn from_log(n: u32) -> Element {
        Element(n + 1)
    }

    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The finite field `F_q`, `q = p^k`, with its log/antilog/Zech tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Vec<u32>,
    /// `exp[n]` is the coefficient index of `r^n`.
    exp: Vec<u32>,
    /// `log[i]` is the exponent of the element with coefficient index `i` (unused at 0).
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &format_poly(&self.modulus))
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (modulus {})", self.q, format_poly(&self.modulus))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_{p^k}` on the Conway polynomial, within [`max_field_size`].
    pub fn conway(p: u64, k: u32) -> Result<Field> {
        Field::build(p, k, None, max_field_size())
    }

    /// Builds the field of order `q` on its Conway polynomial.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, k) = nt::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::conway(p, k)
    }

    /// Builds `F_{p^k}` on `modulus` (constant term first), or on the Conway
    /// polynomial when `modulus` is `None`.
    ///
    /// The primitive element `r` is the class of `x` when that is primitive,
    /// otherwise the primitive element with the smallest coefficient index.
    pub fn build(p: u64, k: u32, modulus: Option<&[u32]>, max_size: u64) -> Result<Field> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(k).filter(|&q| q <= max_size && q <= u32::MAX as u64).ok_or(Error::FieldTooLarge {
            p,
            k,
            bound: max_size,
        })?;
        let modulus = match modulus {
            Some(m) => {
                validate_modulus(m, p as u32, k)?;
                m.to_vec()
            }
            None => conway_polynomial(p, k).ok_or(Error::MissingConway { p, k })?,
        };
        let p = p as u32;
        let q = q as u32;

        let ring = PolyRing { p, modulus: &modulus };
        let x_class = if k == 1 {
            vec![(p - modulus[0]) % p]
        } else {
            let mut v = vec![0; k as usize];
            v[1] = 1;
            v
        };
        let generator = std::iter::once(x_class)
            .chain((1..q).map(|i| ring.unindex(i)))
            .find(|c| ring.is_primitive(c, q))
            .expect("the multiplicative group of a field is cyclic");

        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; q as usize];
        let mut cur = ring.one(k as usize);
        let x_is_generator = k > 1 && generator.iter().enumerate().all(|(i, &c)| c == (i == 1) as u32);
        for n in 0..order {
            let idx = ring.index(&cur);
            exp.push(idx);
            log[idx as usize] = n as u32;
            cur = if x_is_generator { ring.times_x(&cur) } else { ring.mul(&cur, &generator) };
        }
        if ring.index(&cur) != 1 {
            return Err(Error::Invariant("power table did not close".into()));
        }

        let mut zech = Vec::with_capacity(order);
        for &idx in &exp {
            let c0 = idx % p;
            let shifted = idx - c0 + (c0 + 1) % p;
            zech.push(if shifted == 0 { ZECH_NONE } else { log[shifted as usize] });
        }
        let neg_one = if p == 2 { 0 } else { (q - 1) / 2 };

        Ok(Field { p, k, q, modulus, generator, exp, log, zech, neg_one })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u64 {
        (self.q - 1) as u64
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficient vector of the primitive element `r`.
    pub fn generator_coeffs(&self) -> &[u32] {
        &self.generator
    }

    /// Zero first, then `r^0, r^1, ..., r^{q-2}`.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.q).map(Element)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Element> + '_ {
        (1..self.q).map(Element)
    }

    /// `r^n` for any integer `n`.
    pub fn exp(&self, n: i64) -> Element {
        Element::from_log(n.rem_euclid((self.q - 1) as i64) as u32)
    }

    pub fn contains(&self, x: Element) -> bool {
        x.0 < self.q
    }

    /// `z(n)` with `1 + r^n = r^{z(n)}`, or `None` when `1 + r^n = 0`.
    pub fn zech(&self, n: u32) -> Option<u32> {
        let z = self.zech[n as usize];
        (z != ZECH_NONE).then_some(z)
    }

    #[inline]
    fn reduce(&self, e: u32) -> u32 {
        let m = self.q - 1;
        if e >= m {
            e - m
        } else {
            e
        }
    }

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        let (Some(i), Some(j)) = (x.log(), y.log()) else {
            return Element(x.0 | y.0);
        };
        // r^i + r^j = r^i (1 + r^{j-i})
        let d = if j >= i { j - i } else { j + (self.q - 1) - i };
        match self.zech[d as usize] {
            ZECH_NONE => Element::ZERO,
            z => Element::from_log(self.reduce(i + z)),
        }
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        match x.log() {
            None => x,
            Some(i) => Element::from_log(self.reduce(i + self.neg_one)),
        }
    }

    #[inline]
    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        match (x.log(), y.log()) {
            (Some(i), Some(j)) => Element::from_log(self.reduce(i + j)),
            _ => Element::ZERO,
        }
    }

    pub fn inv(&self, x: Element) -> Result<Element> {
        let i = x.log().ok_or(Error::DivisionByZero)?;
        Ok(Element::from_log(if i == 0 { 0 } else { self.q - 1 - i }))
    }

    pub fn div(&self, x: Element, y: Element) -> Result<Element> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^n` with `0^0 = 1`.
    pub fn pow(&self, x: Element, n: u64) -> Element {
        match x.log() {
            None if n == 0 => Element::ONE,
            None => Element::ZERO,
            Some(i) => Element::from_log((i as u64 * (n % self.group_order()) % self.group_order()) as u32),
        }
    }

    /// `x^n` for signed `n`; negative powers of zero fail.
    pub fn powi(&self, x: Element, n: i64) -> Result<Element> {
        if n >= 0 {
            Ok(self.pow(x, n as u64))
        } else {
            Ok(self.pow(self.inv(x)?, n.unsigned_abs()))
        }
    }

    /// Least `t >= 1` with `x^t = 1`.
    pub fn mult_order(&self, x: Element) -> Result<u64> {
        let i = x.log().ok_or(Error::OrderOfZero)? as u64;
        Ok(self.group_order() / nt::gcd(self.group_order(), i))
    }

    /// The image of the integer `n` under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Element {
        let c = n.rem_euclid(self.p as i64) as u32;
        if c == 0 {
            Element::ZERO
        } else {
            Element::from_log(self.log[c as usize])
        }
    }

    /// Coefficients `c0, ..., c_{k-1}` of `x` in the polynomial basis.
    pub fn coeffs(&self, x: Element) -> Vec<u32> {
        let idx = x.log().map_or(0, |i| self.exp[i as usize]);
        PolyRing { p: self.p, modulus: &self.modulus }.unindex(idx)
    }

    /// Element with coefficient vector `c` (missing high coefficients are zero).
    pub fn from_coeffs(&self, c: &[u32]) -> Result<Element> {
        if c.len() > self.k as usize {
            return Err(Error::ParseElement {
                text: format!("{c:?}"),
                reason: format!("at most {} coefficients expected", self.k),
            });
        }
        if let Some(&bad) = c.iter().find(|&&ci| ci >= self.p) {
            return Err(Error::ParseElement {
                text: format!("{c:?}"),
                reason: format!("coefficient {bad} out of range 0..{}", self.p),
            });
        }
        let idx = c.iter().rev().fold(0u32, |acc, &ci| acc * self.p + ci);
        Ok(if idx == 0 { Element::ZERO } else { Element::from_log(self.log[idx as usize]) })
    }

    /// Parses `"0"`, `"r^<n>"` or `"[c0,c1,...]"`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let err = |reason: &str| Error::ParseElement { text: text.to_string(), reason: reason.to_string() };
        let t = text.trim();
        if t == "0" {
            return Ok(Element::ZERO);
        }
        if let Some(exp) = t.strip_prefix("r^") {
            if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("exponent must be a decimal integer"));
            }
            let n: u64 = exp.parse().map_err(|_| err("exponent too large"))?;
            return Ok(Element::from_log((n % self.group_order()) as u32));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("coefficients must be decimal integers"))?;
            return self.from_coeffs(&coeffs).map_err(|e| match e {
                Error::ParseElement { reason, .. } => err(&reason),
                other => other,
            });
        }
        Err(err("expected 0, r^<n> or [c0,...]"))
    }

    /// Canonical `"0"` / `"r^n"` form.
    pub fn format_element(&self, x: Element) -> String {
        match x.log() {
            None => "0".to_string(),
            Some(n) => format!("r^{n}"),
        }
    }
}

/// Renders coefficients (constant term first) as `x^2 + 2x + 2`.
pub fn format_poly(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn validate_modulus(m: &[u32], p: u32, k: u32) -> Result<()> {
    let shown = format_poly(m);
    if m.len() != k as usize + 1 {
        return Err(Error::InvalidModulus(format!("{shown} does not have degree {k}")));
    }
    if m[k as usize] != 1 {
        return Err(Error::InvalidModulus(format!("{shown} is not monic")));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus(format!("{shown} has coefficients outside 0..{p}")));
    }
    if !is_irreducible(m, p) {
        return Err(Error::ReducibleModulus(shown));
    }
    Ok(())
}

/// Exhaustive trial division by every monic polynomial of degree `1..=k/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for i in 0..count {
            let mut f = vec![0u32; d + 1];
            let mut rest = i;
            for c in f.iter_mut().take(d) {
                *c = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            f[d] = 1;
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` by the monic `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    while r.len() > db {
        let lead = r.pop().unwrap() % p;
        let shift = r.len() - db;
        if lead != 0 {
            for (i, &bc) in b[..db].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * bc as u64) % p;
            }
        }
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

/// `F_p[x] / (modulus)` in coefficient form; only used while building tables.
struct PolyRing<'a> {
    p: u32,
    modulus: &'a [u32],
}

impl PolyRing<'_> {
    fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    fn one(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0; k];
        v[0] = 1;
        v
    }

    fn index(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &ci| acc * self.p + ci)
    }

    fn unindex(&self, mut idx: u32) -> Vec<u32> {
        (0..self.k())
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect()
    }

    fn times_x(&self, c: &[u32]) -> Vec<u32> {
        let k = self.k();
        let top = c[k - 1] as u64;
        let p = self.p as u64;
        (0..k)
            .map(|i| {
                let lower = if i == 0 { 0 } else { c[i - 1] as u64 };
                ((lower + (p - top) * self.modulus[i] as u64) % p) as u32
            })
            .collect()
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let k = self.k();
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let reduced = poly_rem(&prod.iter().map(|&c| c as u32).collect::<Vec<_>>(), self.modulus, self.p);
        let mut out = reduced;
        out.resize(k, 0);
        out
    }

    fn pow(&self, base: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.one(self.k());
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn is_primitive(&self, c: &[u32], q: u32) -> bool {
        if c.iter().all(|&x| x == 0) {
            return false;
        }
        let order = (q - 1) as u64;
        let one = self.one(self.k());
        nt::prime_factors(order).into_iter().all(|f| self.pow(c, order / f) != one)
    }
}
