use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ExactError;
use crate::rational::{fmt_q, parse_q, q, Q};

/// Ordered list of variable names shared between values of the same ring.
pub type Vars = Arc<[String]>;
pub type Exponent = Vec<u32>;

pub fn vars(names: &[&str]) -> Vars {
    names
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .into()
}

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

pub fn weighted_degree(e: &[u32], grading: &[u32]) -> u32 {
    e.iter().zip(grading).map(|(a, w)| a * w).sum()
}

/// Degree ascending, then lexicographically descending (earlier variables
/// dominate). Used for jet bases and for canonical text.
pub fn monomial_order(a: &[u32], b: &[u32]) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| b.cmp(a))
}

/// Multivariate polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Exponent, Q>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn var(vars: &Vars, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, e, Q::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .expect("unknown variable");
        Self::var(vars, i)
    }

    pub fn monomial(vars: &Vars, exp: Exponent, c: Q) -> Self {
        assert_eq!(exp.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exponent, Q)>) -> Self {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, Q> {
        self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Poly) -> Result<(), ExactError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(ExactError::VariableMismatch(
                self.vars.join(","),
                other.vars.join(","),
            ))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, ExactError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, ExactError> {
        self.checked_add(&other.scale(&-Q::one()))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, ExactError> {
        self.same_ring(other)?;
        Ok(self.mul_bounded(other, |_| true))
    }

    /// Product keeping only the exponents accepted by `keep`.
    pub fn mul_bounded(&self, other: &Poly, keep: impl Fn(&[u32]) -> bool) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if keep(&e) {
                    out.add_term(e, ca * cb);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u32]) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Highest total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncate(&self, n: u32) -> Poly {
        self.filter(|e| total_degree(e) < n)
    }

    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact substitution of polynomial images (one per variable).
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, ExactError> {
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .ok_or(ExactError::MissingImage)?;
        if images.len() != self.nvars() {
            return Err(ExactError::MissingImage);
        }
        for im in images {
            if im.vars != target {
                return Err(ExactError::VariableMismatch(
                    im.vars.join(","),
                    target.join(","),
                ));
            }
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(&target), p.clone()])
            .collect();
        let mut out = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, k) in e.iter().enumerate() {
                while powers[i].len() <= *k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if *k > 0 {
                    term = &term * &powers[i][*k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a different variable list, mapping
    /// variables by name. Variables missing from `target` must not occur.
    pub fn rename_into(&self, target: &Vars) -> Result<Poly, ExactError> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => ne[j] += k,
                    None => {
                        return Err(ExactError::VariableMismatch(
                            self.vars.join(","),
                            target.join(","),
                        ))
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Terms in canonical (degree ascending, lex descending) order.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &Q)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| monomial_order(a.0, b.0));
        t
    }

    /// Canonical text form, e.g. `u - 3/2*v^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = crate::rational::is_neg(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_text(&self.vars, e);
            if mono.is_empty() {
                out.push_str(&fmt_q(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_q(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the canonical text form (`+`/`-` separated terms of `*`
    /// separated factors `coef`, `var` or `var^k`).
    pub fn parse(vars: &Vars, text: &str) -> Result<Poly, ExactError> {
        let err = |m: &str| ExactError::Parse(format!("{text}: {m}"));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty"));
        }
        let mut out = Poly::zero(vars);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut neg = false;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('^') {
                chunks.push((neg, std::mem::take(&mut current)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                neg ^= ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(err("dangling sign"));
        }
        chunks.push((neg, current));
        for (neg, chunk) in chunks {
            let mut coef = Q::one();
            let mut e = vec![0u32; vars.len()];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(c) = parse_q(factor) {
                    coef *= c;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (n, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let i = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| err("unknown variable"))?;
                e[i] += power;
            }
            if neg {
                coef = -coef;
            }
            out.add_term(e, coef);
        }
        Ok(out)
    }
}

fn monomial_text(vars: &Vars, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial rings differ")
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial rings differ")
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial rings differ")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&q(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn difference_of_squares() {
        let v = vars(&["u", "v"]);
        let u = Poly::var(&v, 0);
        let w = Poly::var(&v, 1);
        let lhs = &(&u + &w) * &(&u - &w);
        let rhs = &(&u * &u) - &(&w * &w);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_text(), "u^2 - v^2");
    }

    #[test]
    fn scale_by_zero_is_empty() {
        let v = vars(&["u", "v"]);
        let p = Poly::parse(&v, "u + 3*v^2").unwrap();
        let z = p.scale(&Q::zero());
        assert!(z.is_zero());
        assert_eq!(z.terms().len(), 0);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = Poly::var(&vars(&["u", "v"]), 0);
        let b = Poly::var(&vars(&["x", "y"]), 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(ExactError::VariableMismatch(..))
        ));
        assert!(matches!(
            a.checked_mul(&b),
            Err(ExactError::VariableMismatch(..))
        ));
    }

    #[test]
    fn text_round_trip() {
        let v = vars(&["z'", "y'", "x'"]);
        let p = Poly::parse(&v, "z' - 3/2*y' + y'^2*x' - 7").unwrap();
        assert_eq!(p.coeff(&[0, 1, 0]), q_frac(-3, 2));
        assert_eq!(Poly::parse(&v, &p.to_text()).unwrap(), p);
        assert_eq!(p.to_text(), "-7 + z' - 3/2*y' + y'^2*x'");
    }

    #[test]
    fn compose_blowup_map() {
        let src = vars(&["z", "y", "x"]);
        let tgt = vars(&["z'", "y'", "x'"]);
        let images = vec![
            Poly::parse(&tgt, "z'").unwrap(),
            Poly::parse(&tgt, "x'*y'").unwrap(),
            Poly::parse(&tgt, "x'").unwrap(),
        ];
        let f = Poly::parse(&src, "x*z - 2*y").unwrap();
        let img = f.compose(&images).unwrap();
        assert_eq!(img, Poly::parse(&tgt, "x'*z' - 2*x'*y'").unwrap());
    }
}
