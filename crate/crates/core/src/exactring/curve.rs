use std::collections::BTreeMap;

use super::poly::{Exponent, Poly};
use super::series::Series;
use crate::rational::{binomial, Q};

/// The relation `y^2 = x^2 + x^3`, given by the positions of `x` and `y`
/// in a variable list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveRelation {
    pub x: usize,
    pub y: usize,
}

impl CurveRelation {
    /// Representative with `y`-degree at most one.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut out: BTreeMap<Exponent, Q> = BTreeMap::new();
        for (e, c) in p.terms() {
            let k = e[self.y];
            if k < 2 {
                *out.entry(e.clone()).or_default() += c;
                continue;
            }
            // y^k = y^(k mod 2) * x^(2m) * (1 + x)^m with m = k / 2
            let m = k / 2;
            let mut base = e.clone();
            base[self.y] = k % 2;
            for j in 0..=m {
                let mut ne = base.clone();
                ne[self.x] += 2 * m + j;
                *out.entry(ne).or_default() += c * binomial(m, j);
            }
        }
        Poly::from_terms(p.vars(), out)
    }

    pub fn is_normal(&self, p: &Poly) -> bool {
        p.terms().keys().all(|e| e[self.y] < 2)
    }

    /// Normal form of a truncated series. Rewriting never lowers the total
    /// degree, so the precision carries over unchanged.
    pub fn normal_form_series(&self, s: &Series) -> Series {
        Series::with_grading(
            self.normal_form(s.poly()),
            s.grading().clone(),
            s.precision(),
        )
    }
}

/// Element of `k[x,y,z]/(y^2 - x^2 - x^3)` kept in normal form `c0 + c1·y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveElement {
    relation: CurveRelation,
    poly: Poly,
}

impl CurveElement {
    pub fn new(relation: CurveRelation, p: &Poly) -> Self {
        CurveElement {
            relation,
            poly: relation.normal_form(p),
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Splits into `(c0, c1)` with `self = c0 + c1·y`, both free of `y`.
    pub fn parts(&self) -> (Poly, Poly) {
        let y = self.relation.y;
        let c0 = self.poly.filter(|e| e[y] == 0);
        let mut c1 = Poly::zero(self.poly.vars());
        for (e, c) in self.poly.terms() {
            if e[y] == 1 {
                let mut ne = e.clone();
                ne[y] = 0;
                c1.add_term(ne, c.clone());
            }
        }
        (c0, c1)
    }

    pub fn mul(&self, other: &CurveElement) -> CurveElement {
        CurveElement::new(self.relation, &(&self.poly * &other.poly))
    }

    pub fn add(&self, other: &CurveElement) -> CurveElement {
        CurveElement {
            relation: self.relation,
            poly: &self.poly + &other.poly,
        }
    }

    /// Same element with every term of total degree `>= n` dropped.
    pub fn truncate(&self, n: u32) -> CurveElement {
        CurveElement {
            relation: self.relation,
            poly: self.poly.truncate(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::poly::vars;

    fn setup() -> (crate::exactring::Vars, CurveRelation) {
        let v = vars(&["z", "y", "x"]);
        (v, CurveRelation { x: 2, y: 1 })
    }

    #[test]
    fn y_squared_rewrites() {
        let (v, rel) = setup();
        let nf = rel.normal_form(&Poly::parse(&v, "y^2").unwrap());
        assert_eq!(nf, Poly::parse(&v, "x^2 + x^3").unwrap());
        let nf3 = rel.normal_form(&Poly::parse(&v, "y^3").unwrap());
        assert_eq!(nf3, Poly::parse(&v, "x^2*y + x^3*y").unwrap());
    }

    #[test]
    fn already_normal_is_unchanged() {
        let (v, rel) = setup();
        let p = Poly::parse(&v, "x*z").unwrap();
        assert_eq!(rel.normal_form(&p), p);
    }

    #[test]
    fn parts_split() {
        let (v, rel) = setup();
        let e = CurveElement::new(rel, &Poly::parse(&v, "y^2 + 2*x*y + z").unwrap());
        let (c0, c1) = e.parts();
        assert_eq!(c0, Poly::parse(&v, "z + x^2 + x^3").unwrap());
        assert_eq!(c1, Poly::parse(&v, "2*x").unwrap());
    }
}
