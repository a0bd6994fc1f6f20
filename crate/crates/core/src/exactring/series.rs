use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{weighted_degree, Exponent, Poly, Vars};
use super::ExactError;
use crate::rational::{q, Q};

/// Truncated power series. Every term of weighted degree `< precision` is
/// known exactly; nothing is known about terms at or above it.
///
/// The grading defaults to total degree. A grading with zero weights lets a
/// variable stay exact while the others are truncated (used when a valuation
/// only needs precision in some directions).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    poly: Poly,
    grading: Arc<[u32]>,
    precision: u32,
}

impl Series {
    pub fn new(poly: Poly, precision: u32) -> Self {
        let grading: Arc<[u32]> = vec![1; poly.nvars()].into();
        Self::with_grading(poly, grading, precision)
    }

    pub fn with_grading(poly: Poly, grading: Arc<[u32]>, precision: u32) -> Self {
        assert_eq!(grading.len(), poly.nvars());
        let poly = poly.filter(|e| weighted_degree(e, &grading) < precision);
        Series {
            poly,
            grading,
            precision,
        }
    }

    pub fn zero(vars: &Vars, precision: u32) -> Self {
        Self::new(Poly::zero(vars), precision)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn vars(&self) -> &Vars {
        self.poly.vars()
    }

    pub fn grading(&self) -> &Arc<[u32]> {
        &self.grading
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.poly.coeff(e)
    }

    /// Weighted order of the known part; `None` when no term is known.
    pub fn order(&self) -> Option<u32> {
        self.poly
            .terms()
            .keys()
            .map(|e| weighted_degree(e, &self.grading))
            .min()
    }

    fn compatible(&self, other: &Series) -> Result<(), ExactError> {
        if self.vars() != other.vars() {
            return Err(ExactError::VariableMismatch(
                self.vars().join(","),
                other.vars().join(","),
            ));
        }
        if self.grading != other.grading {
            return Err(ExactError::GradingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series, ExactError> {
        self.compatible(other)?;
        let precision = self.precision.min(other.precision);
        Ok(Series::with_grading(
            self.poly.checked_add(&other.poly)?,
            self.grading.clone(),
            precision,
        ))
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series, ExactError> {
        self.checked_add(&other.scale(&-Q::one()))
    }

    /// Product with precision `min` of the operands.
    pub fn checked_mul(&self, other: &Series) -> Result<Series, ExactError> {
        self.compatible(other)?;
        let precision = self.precision.min(other.precision);
        let g = self.grading.clone();
        let poly = self
            .poly
            .mul_bounded(&other.poly, |e| weighted_degree(e, &g) < precision);
        Ok(Series {
            poly,
            grading: self.grading.clone(),
            precision,
        })
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series {
            poly: self.poly.scale(c),
            grading: self.grading.clone(),
            precision: self.precision,
        }
    }

    pub fn one_like(&self) -> Series {
        Series::with_grading(Poly::one(self.vars()), self.grading.clone(), self.precision)
    }

    /// Substitutes `images[i]` for the `i`-th variable of `f`.
    ///
    /// The result precision is the minimum image precision; an image with
    /// precision zero determines nothing and is rejected.
    pub fn substitute(f: &Poly, images: &[Series]) -> Result<Series, ExactError> {
        if images.len() != f.nvars() {
            return Err(ExactError::MissingImage);
        }
        let first = images.first().ok_or(ExactError::MissingImage)?;
        for im in images {
            first.compatible(im)?;
        }
        let precision = images.iter().map(|s| s.precision).min().unwrap();
        if precision == 0 {
            return Err(ExactError::Precision("image precision is zero".into()));
        }
        let grading = first.grading.clone();
        let target = first.vars().clone();
        let mut powers: Vec<Vec<Series>> = images
            .iter()
            .map(|s| vec![s.one_like(), s.clone()])
            .collect();
        let mut acc = Poly::zero(&target);
        for (e, c) in f.terms() {
            let mut term = Series::with_grading(
                Poly::constant(&target, c.clone()),
                grading.clone(),
                precision,
            );
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                while powers[i].len() <= *k as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.checked_mul(&powers[i][*k as usize])?;
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.checked_add(&term.poly)?;
        }
        Ok(Series::with_grading(acc, grading, precision))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.poly.terms().iter()
    }
}

/// `√(1+x)` to precision `n` in a single variable, by the binomial series.
pub fn series_sqrt_one_plus(var: &str, n: u32) -> Series {
    let v: Vars = vec![var.to_string()].into();
    let mut coeff = Q::one();
    let half = crate::rational::q_frac(1, 2);
    let mut terms = Vec::new();
    for k in 0..n {
        terms.push((vec![k], coeff.clone()));
        // C(1/2, k+1) = C(1/2, k) * (1/2 - k) / (k + 1)
        coeff = coeff * (&half - q(k as i64)) / q(k as i64 + 1);
    }
    Series::new(Poly::from_terms(&v, terms), n)
}

/// Coefficients `a_2, …, a_{n-1}` with `(x + Σ a_i x^i)^2 = x^2 + x^3`,
/// solved one degree at a time. Entry `i - 2` holds `a_i`.
pub fn derive_branch_coefficients(n: u32) -> Vec<Q> {
    assert!(n >= 3, "branch coefficients need n >= 3");
    // alpha with alpha^2 = 1 + x, alpha_0 = 1; a_i = alpha_{i-1}
    let mut alpha: Vec<Q> = vec![Q::one()];
    for k in 1..(n - 1) as usize {
        let mut cross = Q::zero();
        for j in 1..k {
            cross += &alpha[j] * &alpha[k - j];
        }
        let target = if k == 1 { Q::one() } else { Q::zero() };
        alpha.push((target - cross) / q(2));
    }
    alpha[1..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::poly::vars;
    use crate::rational::q_frac;

    #[test]
    fn product_precision_is_min() {
        let v = vars(&["t"]);
        let a = Series::new(Poly::parse(&v, "1 + t").unwrap(), 5);
        let b = Series::new(Poly::parse(&v, "1 - t").unwrap(), 8);
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p.precision(), 5);
        assert_eq!(p.poly(), &Poly::parse(&v, "1 - t^2").unwrap());
    }

    #[test]
    fn identity_substitution() {
        let src = vars(&["u", "v"]);
        let t = vars(&["t"]);
        let cs: Vec<Q> = (1..12).map(|i| q_frac(i, i + 1)).collect();
        let s = Poly::from_terms(
            &t,
            cs.iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32 + 1], c.clone())),
        );
        let u_img = Series::new(s.clone(), 12);
        let v_img = Series::new(Poly::var(&t, 0), 12);
        let out = Series::substitute(&Poly::var(&src, 0), &[u_img, v_img]).unwrap();
        assert_eq!(out.poly(), &s);
        assert_eq!(out.precision(), 12);
    }

    #[test]
    fn first_approximant_has_order_two() {
        let src = vars(&["u", "v"]);
        let t = vars(&["t"]);
        let cs: Vec<Q> = (1..12)
            .map(|i| q_frac(if i % 2 == 0 { -i } else { i }, 3))
            .collect();
        let s = Poly::from_terms(
            &t,
            cs.iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32 + 1], c.clone())),
        );
        let f = Poly::from_terms(&src, [(vec![1, 0], Q::one()), (vec![0, 1], -cs[0].clone())]);
        let out = Series::substitute(&f, &[Series::new(s, 12), Series::new(Poly::var(&t, 0), 12)])
            .unwrap();
        assert_eq!(out.order(), Some(2));
        assert_eq!(out.coeff(&[2]), cs[1]);
    }

    #[test]
    fn zero_precision_image_rejected() {
        let src = vars(&["u"]);
        let t = vars(&["t"]);
        let img = Series::new(Poly::var(&t, 0), 0);
        assert!(matches!(
            Series::substitute(&Poly::var(&src, 0), &[img]),
            Err(ExactError::Precision(_))
        ));
    }

    #[test]
    fn branch_coefficients_low_degrees() {
        let a = derive_branch_coefficients(6);
        assert_eq!(a[0], q_frac(1, 2));
        assert_eq!(a[1], q_frac(-1, 8));
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn weighted_truncation_keeps_zero_weight_directions() {
        let v = vars(&["u", "v"]);
        let g: Arc<[u32]> = vec![1, 0].into();
        let s = Series::with_grading(Poly::parse(&v, "v^9 + u*v^3 + u^2").unwrap(), g, 2);
        assert_eq!(s.poly(), &Poly::parse(&v, "v^9 + u*v^3").unwrap());
    }
}
