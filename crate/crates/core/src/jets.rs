//! Linear algebra on jet spaces `R̂/m^N` over the rationals.
//!
//! An ideal at truncation `N` is the subspace `(I + m^N)/m^N`, stored as a
//! matrix in reduced row-echelon form. Columns follow the jet basis order
//! (degree ascending), so pivots are the lowest-order terms and two
//! subspaces are equal exactly when their matrices are.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactring::{
    monomial_order, total_degree, CurveRelation, ExactError, Exponent, Poly, Series, Vars,
};
use crate::rational::{fmt_q, Q};
use crate::valideal::IdealPresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("jet spaces differ")]
    SpaceMismatch,
    #[error("subspace is not contained in the ambient subspace")]
    Containment,
    #[error("precision error: {0}")]
    Precision(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type SparseRow = Vec<(usize, Q)>;

/// Finite model of `R̂/m^N`: monomials of total degree `< N`, in normal
/// form when a curve relation is present.
#[derive(Debug)]
pub struct JetSpace {
    vars: Vars,
    order: u32,
    curve: Option<CurveRelation>,
    basis: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

fn exponents_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl JetSpace {
    pub fn new(vars: &Vars, order: u32, curve: Option<CurveRelation>) -> Arc<Self> {
        let mut basis: Vec<Exponent> = (0..order)
            .flat_map(|d| exponents_of_degree(vars.len(), d))
            .filter(|e| curve.is_none_or(|c| e[c.y] < 2))
            .collect();
        basis.sort_by(|a, b| monomial_order(a, b));
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Arc::new(JetSpace {
            vars: vars.clone(),
            order,
            curve,
            basis,
            index,
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn curve(&self) -> Option<CurveRelation> {
        self.curve
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn degree_of(&self, col: usize) -> u32 {
        total_degree(&self.basis[col])
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        match self.curve {
            Some(c) => c.normal_form(p),
            None => p.clone(),
        }
    }

    /// Truncated, normal-formed coordinates of a polynomial in this space.
    pub fn sparse_of(&self, p: &Poly) -> Result<SparseRow, JetError> {
        if p.vars() != &self.vars {
            return Err(
                ExactError::VariableMismatch(p.vars().join(","), self.vars.join(",")).into(),
            );
        }
        let nf = self
            .normal_form(&p.truncate(self.order))
            .truncate(self.order);
        let mut row: SparseRow = nf
            .terms()
            .iter()
            .map(|(e, c)| (self.index[e], c.clone()))
            .collect();
        row.sort_by_key(|(i, _)| *i);
        Ok(row)
    }

    pub fn poly_of(&self, row: &[(usize, Q)]) -> Poly {
        Poly::from_terms(
            &self.vars,
            row.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())),
        )
    }

    pub fn same(a: &Arc<JetSpace>, b: &Arc<JetSpace>) -> bool {
        Arc::ptr_eq(a, b) || (a.vars == b.vars && a.order == b.order && a.curve == b.curve)
    }
}

/// A jet: coordinates in the basis of a [`JetSpace`].
#[derive(Debug, Clone)]
pub struct Jet {
    space: Arc<JetSpace>,
    coords: SparseRow,
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        JetSpace::same(&self.space, &other.space) && self.coords == other.coords
    }
}

impl Jet {
    pub fn from_poly(space: &Arc<JetSpace>, p: &Poly) -> Result<Jet, JetError> {
        Ok(Jet {
            space: space.clone(),
            coords: space.sparse_of(p)?,
        })
    }

    /// Requires the series to be known in total degree below the truncation order.
    pub fn from_series(space: &Arc<JetSpace>, s: &Series) -> Result<Jet, JetError> {
        if s.grading().iter().any(|w| *w != 1) {
            return Err(JetError::Precision(
                "series must be graded by total degree".into(),
            ));
        }
        if s.precision() < space.order {
            return Err(JetError::Precision(format!(
                "series precision {} below truncation {}",
                s.precision(),
                space.order
            )));
        }
        Self::from_poly(space, s.poly())
    }

    pub fn from_sparse(space: &Arc<JetSpace>, coords: SparseRow) -> Jet {
        Jet {
            space: space.clone(),
            coords,
        }
    }

    pub fn zero(space: &Arc<JetSpace>) -> Jet {
        Jet {
            space: space.clone(),
            coords: Vec::new(),
        }
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn coords(&self) -> &[(usize, Q)] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_poly(&self) -> Poly {
        self.space.poly_of(&self.coords)
    }

    /// Lowest total degree of a nonzero coordinate.
    pub fn order(&self) -> Option<u32> {
        self.coords.first().map(|(i, _)| self.space.degree_of(*i))
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet, JetError> {
        if !JetSpace::same(&self.space, &other.space) {
            return Err(JetError::SpaceMismatch);
        }
        let n = self.space.order;
        let p = self
            .to_poly()
            .mul_bounded(&other.to_poly(), |e| total_degree(e) < n);
        Jet::from_poly(&self.space, &p)
    }

    pub fn add(&self, other: &Jet) -> Result<Jet, JetError> {
        if !JetSpace::same(&self.space, &other.space) {
            return Err(JetError::SpaceMismatch);
        }
        Ok(Jet {
            space: self.space.clone(),
            coords: axpy(&self.coords, &Q::one(), &other.coords),
        })
    }

    pub fn scale(&self, c: &Q) -> Jet {
        if c.is_zero() {
            return Jet::zero(&self.space);
        }
        Jet {
            space: self.space.clone(),
            coords: self.coords.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet, JetError> {
        self.add(&other.scale(&-Q::one()))
    }
}

/// `a + f·b` for sorted sparse rows.
pub fn axpy(a: &[(usize, Q)], f: &Q, b: &[(usize, Q)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental reduced row-echelon form over the rationals.
#[derive(Debug, Clone, Default)]
pub struct RowReducer {
    rows: Vec<SparseRow>,
    pivot_row: HashMap<usize, usize>,
}

impl RowReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows(rows: &[SparseRow]) -> Self {
        let pivot_row = rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        RowReducer {
            rows: rows.to_vec(),
            pivot_row,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(usize, Q)]) -> SparseRow {
        let hits: Vec<(usize, Q)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(c).map(|r| (*r, x.clone())))
            .collect();
        if hits.is_empty() {
            return v.to_vec();
        }
        if hits.len() == 1 {
            return axpy(v, &-hits[0].1.clone(), &self.rows[hits[0].0]);
        }
        let mut acc: BTreeMap<usize, Q> = v.iter().cloned().collect();
        for (r, x) in hits {
            for (c, y) in &self.rows[r] {
                let e = acc.entry(*c).or_insert_with(Q::zero);
                *e -= &x * y;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Q)]) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let pivot = r[0].0;
        let inv = Q::one() / &r[0].1;
        let r: SparseRow = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |(c, _)| *c) {
                let f = -row[pos].1.clone();
                *row = axpy(row, &f, &r);
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn into_rows(mut self) -> Vec<SparseRow> {
        self.rows.sort_by_key(|r| r[0].0);
        self.rows
    }
}

/// A subspace of a jet space in canonical reduced row-echelon form.
#[derive(Debug, Clone)]
pub struct JetSubspace {
    space: Arc<JetSpace>,
    rows: Vec<SparseRow>,
}

impl PartialEq for JetSubspace {
    fn eq(&self, other: &Self) -> bool {
        JetSpace::same(&self.space, &other.space) && self.rows == other.rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceDigest {
    pub dim: usize,
    pub ambient_dim: usize,
    pub sha256: String,
}

impl JetSubspace {
    pub fn zero(space: &Arc<JetSpace>) -> Self {
        JetSubspace {
            space: space.clone(),
            rows: Vec::new(),
        }
    }

    pub fn full(space: &Arc<JetSpace>) -> Self {
        Self::from_rows(space, (0..space.dim()).map(|i| vec![(i, Q::one())]))
    }

    /// `m^d` at this truncation.
    pub fn power_of_maximal(space: &Arc<JetSpace>, d: u32) -> Self {
        Self::from_rows(
            space,
            (0..space.dim())
                .filter(|i| space.degree_of(*i) >= d)
                .map(|i| vec![(i, Q::one())]),
        )
    }

    pub fn from_rows(space: &Arc<JetSpace>, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut red = RowReducer::new();
        for r in rows {
            red.insert(&r);
        }
        JetSubspace {
            space: space.clone(),
            rows: red.into_rows(),
        }
    }

    pub fn span_of(space: &Arc<JetSpace>, polys: &[Poly]) -> Result<Self, JetError> {
        let rows: Result<Vec<_>, _> = polys.iter().map(|p| space.sparse_of(p)).collect();
        Ok(Self::from_rows(space, rows?))
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.space.dim()
    }

    fn reducer(&self) -> RowReducer {
        RowReducer::from_rows(&self.rows)
    }

    fn check(&self, other: &Arc<JetSpace>) -> Result<(), JetError> {
        if JetSpace::same(&self.space, other) {
            Ok(())
        } else {
            Err(JetError::SpaceMismatch)
        }
    }

    pub fn member(&self, x: &Jet) -> Result<bool, JetError> {
        self.check(x.space())?;
        Ok(self.reducer().reduce(&x.coords).is_empty())
    }

    /// Normal form of `x` modulo this subspace.
    pub fn remainder(&self, x: &Jet) -> Result<Jet, JetError> {
        self.check(x.space())?;
        Ok(Jet::from_sparse(
            &self.space,
            self.reducer().reduce(&x.coords),
        ))
    }

    pub fn contains(&self, other: &JetSubspace) -> Result<bool, JetError> {
        self.check(&other.space)?;
        let red = self.reducer();
        Ok(other.rows.iter().all(|r| red.reduce(r).is_empty()))
    }

    pub fn sum(&self, other: &JetSubspace) -> Result<JetSubspace, JetError> {
        self.check(&other.space)?;
        let mut red = self.reducer();
        for r in &other.rows {
            red.insert(r);
        }
        Ok(JetSubspace {
            space: self.space.clone(),
            rows: red.into_rows(),
        })
    }

    /// Exact intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &JetSubspace) -> Result<JetSubspace, JetError> {
        self.check(&other.space)?;
        if other.contains(self)? {
            return Ok(self.clone());
        }
        if self.contains(other)? {
            return Ok(other.clone());
        }
        let n = self.space.dim();
        let mut red = RowReducer::new();
        for r in &self.rows {
            let mut doubled = r.clone();
            doubled.extend(r.iter().map(|(c, x)| (c + n, x.clone())));
            red.insert(&doubled);
        }
        for r in &other.rows {
            red.insert(r);
        }
        let rows = red
            .into_rows()
            .into_iter()
            .filter(|r| r[0].0 >= n)
            .map(|r| r.into_iter().map(|(c, x)| (c - n, x)).collect());
        Ok(JetSubspace::from_rows(&self.space, rows))
    }

    /// `dim self - dim sub`, after checking `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &JetSubspace) -> Result<usize, JetError> {
        if !self.contains(sub)? {
            return Err(JetError::Containment);
        }
        Ok(self.dim() - sub.dim())
    }

    pub fn row_polys(&self) -> Vec<Poly> {
        self.rows.iter().map(|r| self.space.poly_of(r)).collect()
    }

    pub fn digest(&self) -> SubspaceDigest {
        let mut h = Sha256::new();
        h.update(self.space.vars.join(",").as_bytes());
        h.update(format!("|N={}|", self.space.order).as_bytes());
        for r in &self.rows {
            for (c, x) in r {
                h.update(format!("{c}:{};", fmt_q(x)).as_bytes());
            }
            h.update(b"\n");
        }
        SubspaceDigest {
            dim: self.dim(),
            ambient_dim: self.space.dim(),
            sha256: hex::encode(h.finalize()),
        }
    }
}

/// Intersection of a family of subspaces, reduced as a balanced tree.
pub fn intersect_all(
    space: &Arc<JetSpace>,
    subspaces: &[JetSubspace],
) -> Result<JetSubspace, JetError> {
    match subspaces.len() {
        0 => Ok(JetSubspace::full(space)),
        1 => Ok(subspaces[0].clone()),
        n => {
            let (a, b) = subspaces.split_at(n / 2);
            let (l, r) = rayon::join(|| intersect_all(space, a), || intersect_all(space, b));
            l?.intersect(&r?)
        }
    }
}

/// Multiples `g·m` of the generators by monomials, truncated at the space order.
pub fn ideal_rows(gens: &[Poly], space: &Arc<JetSpace>) -> Result<Vec<SparseRow>, JetError> {
    let n = space.order();
    let mut rows = Vec::new();
    for g in gens {
        let g = space.normal_form(g).truncate(n);
        let Some(ord) = g.order() else { continue };
        for m in space.basis() {
            if ord + total_degree(m) >= n {
                continue;
            }
            let row = space.sparse_of(&g.mul_monomial(m))?;
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// `(I + m^N)/m^N` for the ideal `I` presented by `gens`.
pub fn ideal_to_subspace(
    gens: &IdealPresentation,
    space: &Arc<JetSpace>,
) -> Result<JetSubspace, JetError> {
    if let Some(p) = gens.precision {
        if p < space.order() {
            return Err(JetError::Precision(format!(
                "generators of {} known to degree {p}, truncation is {}",
                gens.label,
                space.order()
            )));
        }
    }
    Ok(JetSubspace::from_rows(
        space,
        ideal_rows(&gens.generators, space)?,
    ))
}

/// Jets of `source` whose (canonical polynomial lift's) image under the
/// substitution lies in `target`.
///
/// `images[i]` is the image of the `i`-th source variable, a series in the
/// target variables known at least to the target truncation order.
pub fn kernel_of_substitution(
    images: &[Series],
    source: &Arc<JetSpace>,
    target: &JetSubspace,
) -> Result<JetSubspace, JetError> {
    let tspace = target.space().clone();
    let tdim = tspace.dim();
    let reducer = target.reducer();
    let columns: Result<Vec<SparseRow>, JetError> = source
        .basis()
        .par_iter()
        .map(|e| {
            let mono = Poly::monomial(source.vars(), e.clone(), Q::one());
            let img = Series::substitute(&mono, images)?;
            let jet = Jet::from_series(&tspace, &img)?;
            Ok(reducer.reduce(jet.coords()))
        })
        .collect();
    let mut red = RowReducer::new();
    for (i, col) in columns?.into_iter().enumerate() {
        let mut row = col;
        row.push((tdim + i, Q::one()));
        red.insert(&row);
    }
    let kernel = red
        .into_rows()
        .into_iter()
        .filter(|r| r[0].0 >= tdim)
        .map(|r| r.into_iter().map(|(c, x)| (c - tdim, x)).collect());
    Ok(JetSubspace::from_rows(source, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::vars;
    use crate::rational::q;

    fn pres(space: &Arc<JetSpace>, gens: &[&str]) -> IdealPresentation {
        IdealPresentation::exact(
            "test",
            gens.iter()
                .map(|g| Poly::parse(space.vars(), g).unwrap())
                .collect(),
        )
    }

    #[test]
    fn maximal_ideal_mod_cube() {
        let sp = JetSpace::new(&vars(&["u", "v"]), 3, None);
        let s = ideal_to_subspace(&pres(&sp, &["v", "u"]), &sp).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s, JetSubspace::power_of_maximal(&sp, 1));
    }

    #[test]
    fn high_power_vanishes_and_unit_fills() {
        let sp = JetSpace::new(&vars(&["z", "y", "x"]), 4, None);
        assert!(ideal_to_subspace(&pres(&sp, &["z^4"]), &sp)
            .unwrap()
            .is_zero());
        assert!(ideal_to_subspace(&pres(&sp, &["1"]), &sp)
            .unwrap()
            .is_full());
    }

    #[test]
    fn canonical_form_independent_of_generators() {
        let sp = JetSpace::new(&vars(&["u", "v"]), 6, None);
        let a = ideal_to_subspace(&pres(&sp, &["v", "u^2 - v^3"]), &sp).unwrap();
        let b = ideal_to_subspace(&pres(&sp, &["u^2 + v", "v - 2*u*v"]), &sp).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_basics() {
        let sp = JetSpace::new(&vars(&["u", "v"]), 5, None);
        let a = ideal_to_subspace(&pres(&sp, &["u"]), &sp).unwrap();
        let b = ideal_to_subspace(&pres(&sp, &["v"]), &sp).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        let ab = ideal_to_subspace(&pres(&sp, &["u*v"]), &sp).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), ab);
        let powers: Vec<_> = (1..7)
            .map(|k| ideal_to_subspace(&pres(&sp, &[&format!("u^{k}")]), &sp).unwrap())
            .collect();
        assert!(intersect_all(&sp, &powers).unwrap().is_zero());
    }

    #[test]
    fn membership_and_quotients() {
        let sp = JetSpace::new(&vars(&["u", "v"]), 4, None);
        let a = ideal_to_subspace(&pres(&sp, &["u", "v"]), &sp).unwrap();
        let b = ideal_to_subspace(&pres(&sp, &["u", "v^2"]), &sp).unwrap();
        assert!(a.member(&Jet::zero(&sp)).unwrap());
        assert_eq!(a.quotient_dim(&b).unwrap(), 1);
        assert_eq!(b.quotient_dim(&a), Err(JetError::Containment));
    }

    #[test]
    fn curve_space_skips_y_squared() {
        let v = vars(&["z", "y", "x"]);
        let sp = JetSpace::new(&v, 4, Some(CurveRelation { x: 2, y: 1 }));
        assert!(sp.basis().iter().all(|e| e[1] < 2));
        let j = Jet::from_poly(&sp, &Poly::parse(&v, "y^2").unwrap()).unwrap();
        assert_eq!(j.to_poly(), Poly::parse(&v, "x^2 + x^3").unwrap());
    }

    #[test]
    fn kernel_trivial_cases() {
        let v = vars(&["u", "v"]);
        let sp = JetSpace::new(&v, 4, None);
        let images: Vec<Series> = (0..2).map(|i| Series::new(Poly::var(&v, i), 4)).collect();
        let full = JetSubspace::full(&sp);
        assert!(kernel_of_substitution(&images, &sp, &full)
            .unwrap()
            .is_full());
        let zero = JetSubspace::zero(&sp);
        assert!(kernel_of_substitution(&images, &sp, &zero)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(0, q(1)), (1, q(1))];
        assert_eq!(axpy(&a, &q(-1), &b), vec![(1, q(-1)), (2, q(3))]);
    }
}
