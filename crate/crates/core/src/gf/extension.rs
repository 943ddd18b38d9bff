use super::{max_field_size, nt, Element, Field};
use crate::{Error, Result};

/// `F_q` together with `F_{q^2}` and a fixed embedding `F_q -> F_{q^2}`.
///
/// With Conway moduli on both sides the embedding sends the base primitive
/// element `r` to `R^{q+1}`, `R` the primitive element of `F_{q^2}`.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    base: Field,
    ext: Field,
    /// Exponent of the image of `r` in the extension.
    scale: u32,
    /// `down[t]` is the base exponent of the element `R^{t(q+1)}`.
    down: Vec<u32>,
}

impl QuadraticExtension {
    pub fn new(base: Field) -> Result<Self> {
        Self::with_bound(base, max_field_size())
    }

    pub fn with_bound(base: Field, max_size: u64) -> Result<Self> {
        let ext = Field::build(base.p(), 2 * base.k(), None, max_size)?;
        let q = base.q();
        let group = base.group_order();
        let ext_group = ext.group_order();

        // The subgroup of order q-1 in F_{q^2}* is generated by R^{q+1}; pick
        // the generator of it that is compatible with the base field's addition.
        let candidates = std::iter::once(1).chain((2..group.max(2)).filter(|&j| nt::gcd(j, group) == 1));
        for j in candidates {
            let scale = ((q + 1) * j % ext_group) as u32;
            if is_homomorphism(&base, &ext, scale) {
                let mut down = vec![0u32; group as usize];
                for n in 0..group {
                    down[(n * j % group) as usize] = n as u32;
                }
                return Ok(QuadraticExtension { base, ext, scale, down });
            }
        }
        Err(Error::Invariant(format!("no embedding of {base} into {ext}")))
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn embed(&self, x: Element) -> Element {
        match x.log() {
            None => Element::ZERO,
            Some(n) => self.ext.exp(n as i64 * self.scale as i64),
        }
    }

    /// Inverse of [`embed`](Self::embed); `None` when `y` is not in the image.
    pub fn restrict(&self, y: Element) -> Option<Element> {
        let Some(m) = y.log() else {
            return Some(Element::ZERO);
        };
        let step = (self.base.q() + 1) as u32;
        (m % step == 0).then(|| Element::from_log(self.down[(m / step) as usize]))
    }

    /// `y^q`.
    pub fn frobenius(&self, y: Element) -> Element {
        self.ext.pow(y, self.base.q())
    }

    /// `y + y^q`, as an element of the base field.
    pub fn relative_trace(&self, y: Element) -> Result<Element> {
        let t = self.ext.add(y, self.frobenius(y));
        self.restrict(t)
            .ok_or_else(|| Error::Invariant(format!("trace of {} left the base field", self.ext.format_element(y))))
    }

    /// `y^{q+1}`, as an element of the base field.
    pub fn relative_norm(&self, y: Element) -> Result<Element> {
        let t = self.ext.pow(y, self.base.q() + 1);
        self.restrict(t)
            .ok_or_else(|| Error::Invariant(format!("norm of {} left the base field", self.ext.format_element(y))))
    }
}

fn is_homomorphism(base: &Field, ext: &Field, scale: u32) -> bool {
    let image = |n: u32| ext.exp(n as i64 * scale as i64);
    (0..base.group_order() as u32).all(|n| {
        let lhs = base.zech(n).map_or(Element::ZERO, image);
        lhs == ext.add(Element::ONE, image(n))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_into_f81() {
        let tower = QuadraticExtension::new(Field::conway(3, 2).unwrap()).unwrap();
        assert_eq!(tower.ext().q(), 81);
        let img = tower.embed(tower.base().exp(1));
        assert_eq!(img, tower.ext().exp(10));
        // image of r is a root of x^2 + 2x + 2
        let ext = tower.ext();
        let two = ext.from_int(2);
        let val = ext.add(ext.add(ext.mul(img, img), ext.mul(two, img)), two);
        assert_eq!(val, Element::ZERO);
        assert_eq!(tower.embed(Element::ZERO), Element::ZERO);
        assert_eq!(tower.embed(Element::ONE), Element::ONE);
    }

    #[test]
    fn trace_of_base_element_is_double() {
        let tower = QuadraticExtension::new(Field::conway(3, 2).unwrap()).unwrap();
        let base = tower.base();
        for z in base.elements() {
            let t = tower.relative_trace(tower.embed(z)).unwrap();
            assert_eq!(t, base.add(z, z));
        }
        assert_eq!(tower.relative_trace(Element::ZERO).unwrap(), Element::ZERO);
        assert_eq!(tower.restrict(tower.ext().exp(1)), None);
    }

    #[test]
    fn non_conway_base_still_embeds() {
        let base = Field::build(7, 2, Some(&[1, 0, 1]), 1 << 20).unwrap();
        let tower = QuadraticExtension::new(base).unwrap();
        let b = tower.base();
        let e = tower.ext();
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(tower.embed(b.add(x, y)), e.add(tower.embed(x), tower.embed(y)));
            }
            assert_eq!(tower.restrict(tower.embed(x)), Some(x));
        }
    }
}
