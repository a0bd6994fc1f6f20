//! Valuation ideals `P_β`, `P_β⁺` and the value semigroup `Φ`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::exactring::{total_degree, Poly, Series};
use crate::rational::Q;
use rayon::prelude::*;
use serde::Serialize;

use crate::jets::{ideal_to_subspace, Jet, JetError, JetSpace, JetSubspace, RowReducer, SparseRow};
use crate::scenario::{RingKind, ScenarioError, ValuedRing};
use crate::valgroup::{GroupElement, GroupError};
use crate::valuation::{monomial_value, ValuationError, ValueResult};

/// Generators of an ideal of the jet ring.
///
/// `precision` is the total degree below which the generators are known
/// exactly; `None` means they are exact polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPresentation {
    pub label: String,
    pub generators: Vec<Poly>,
    pub precision: Option<u32>,
}

impl IdealPresentation {
    pub fn exact(label: &str, generators: Vec<Poly>) -> Self {
        IdealPresentation {
            label: label.to_string(),
            generators,
            precision: None,
        }
    }

    pub fn truncated(label: &str, generators: Vec<Poly>, precision: u32) -> Self {
        IdealPresentation {
            label: label.to_string(),
            generators,
            precision: Some(precision),
        }
    }

    pub fn texts(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_text()).collect()
    }
}

#[derive(Serialize)]
struct PresentationView<'a> {
    label: &'a str,
    generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    precision: Option<u32>,
}

impl Serialize for IdealPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PresentationView {
            label: &self.label,
            generators: self.texts(),
            precision: self.precision,
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("no closed form and no value oracle for ring {0}")]
    NoPresentation(String),
    #[error("{0} has no successor inside the enumerated bound")]
    NoSuccessor(GroupElement),
    #[error("generator {generator} of {label} has value {value}, below {beta}")]
    GeneratorBelow {
        label: String,
        generator: String,
        value: String,
        beta: GroupElement,
    },
}

/// Values of `ν` up to a bound, sorted increasingly.
///
/// Rank-one groups are bounded by `x <= bound`; higher-rank lex groups by
/// the box `x_i <= bound_i`, since a lex interval is infinite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Semigroup {
    pub bound: GroupElement,
    pub elements: Vec<GroupElement>,
    #[serde(skip)]
    pub atoms: Vec<GroupElement>,
}

fn is_box(bound: &GroupElement) -> bool {
    matches!(bound, GroupElement::Lex(c) if c.len() > 1)
}

pub fn within_bound(x: &GroupElement, bound: &GroupElement) -> Result<bool, GroupError> {
    match (x, bound) {
        (GroupElement::Lex(a), GroupElement::Lex(b)) if b.len() > 1 => {
            x.try_cmp(bound)?;
            Ok(a.iter().zip(b).all(|(p, q)| p <= q))
        }
        _ => Ok(x.try_cmp(bound)? != Ordering::Greater),
    }
}

fn insert_sorted(v: &mut Vec<GroupElement>, x: GroupElement) -> Result<bool, GroupError> {
    let mut lo = 0;
    let mut hi = v.len();
    while lo < hi {
        let mid = (lo + hi) / 2;
        match v[mid].try_cmp(&x)? {
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return Ok(false),
        }
    }
    v.insert(lo, x);
    Ok(true)
}

impl Semigroup {
    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.iter().any(|e| e == x)
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    /// Least value of `ν` above `beta`.
    ///
    /// Candidates are the enumerated elements above `beta` and `beta` plus
    /// each atom; for a rank-one bound the result must lie inside it.
    pub fn successor(&self, beta: &GroupElement) -> Result<GroupElement, IdealError> {
        let mut best: Option<GroupElement> = None;
        let listed = self
            .elements
            .iter()
            .find(|e| e.try_cmp(beta) == Ok(Ordering::Greater))
            .cloned();
        for cand in listed
            .into_iter()
            .chain(self.atoms.iter().map(|a| beta.plus(a)))
        {
            if cand.try_cmp(beta)? != Ordering::Greater {
                continue;
            }
            best = match best {
                Some(b) if b.try_cmp(&cand)? != Ordering::Greater => Some(b),
                _ => Some(cand),
            };
        }
        let best = best.ok_or_else(|| IdealError::NoSuccessor(beta.clone()))?;
        if !is_box(&self.bound) && !within_bound(&best, &self.bound)? {
            return Err(IdealError::NoSuccessor(beta.clone()));
        }
        Ok(best)
    }

    /// Elements lying in the isolated subgroup of level `level`.
    pub fn in_level(&self, level: usize) -> Vec<GroupElement> {
        self.elements
            .iter()
            .filter(|e| e.in_isolated(crate::valgroup::IsolatedLevel(level)))
            .cloned()
            .collect()
    }
}

/// Ring elements whose values generate the semigroup: the variables and
/// the approximating elements.
pub fn atom_elements(ring: &ValuedRing, count: u32) -> Vec<Poly> {
    let mut out: Vec<Poly> = (0..ring.vars.len())
        .map(|i| Poly::var(&ring.vars, i))
        .collect();
    if ring.kind != RingKind::Ex29Source {
        out.extend((2..=count).filter_map(|a| ring.w(a).ok()));
    }
    out
}

pub fn enumerate_semigroup(
    ring: &ValuedRing,
    bound: &GroupElement,
) -> Result<Semigroup, IdealError> {
    let zero = ring.zero_value();
    zero.try_cmp(bound)?;
    let count = bound.ceil().unwrap_or_else(|| match bound {
        GroupElement::Lex(c) => c.iter().copied().max().unwrap_or(0),
        _ => 0,
    });
    let mut atoms = Vec::new();
    for f in atom_elements(ring, count.clamp(0, 40) as u32) {
        match ring.value(&f)? {
            ValueResult::Finite(g) if !g.is_zero() => {
                insert_sorted(&mut atoms, g)?;
            }
            ValueResult::Finite(_) | ValueResult::Infinity => {}
            ValueResult::BoundedBelow(_) => return Err(ValuationError::NotFinite.into()),
        }
    }
    let mut elements = vec![zero.clone()];
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for a in &atoms {
            let y = x.plus(a);
            if within_bound(&y, bound)? && insert_sorted(&mut elements, y.clone())? {
                frontier.push(y);
            }
        }
    }
    Ok(Semigroup {
        bound: bound.clone(),
        elements,
        atoms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

/// `ν(f) >= β`, or `ν(f) > β` when `strict`.
pub fn member_by_value(
    ring: &ValuedRing,
    f: &Poly,
    beta: &GroupElement,
    strict: bool,
) -> Result<Membership, IdealError> {
    let passes = |g: &GroupElement| -> Result<bool, GroupError> {
        let o = g.try_cmp(beta)?;
        Ok(if strict {
            o == Ordering::Greater
        } else {
            o != Ordering::Less
        })
    };
    Ok(match ring.value(f)? {
        ValueResult::Infinity => Membership::Yes,
        ValueResult::Finite(g) => {
            if passes(&g)? {
                Membership::Yes
            } else {
                Membership::No
            }
        }
        ValueResult::BoundedBelow(g) => {
            if passes(&g)? {
                Membership::Yes
            } else {
                Membership::Unknown
            }
        }
    })
}

fn mono(ring: &ValuedRing, e: Vec<u32>) -> Poly {
    Poly::monomial(&ring.vars, e, Q::one())
}

fn lex_pair(beta: &GroupElement) -> Result<(u32, u32), IdealError> {
    match beta {
        GroupElement::Lex(c) if c.len() == 2 && c[0] >= 0 && c[1] >= 0 => {
            Ok((c[0] as u32, c[1] as u32))
        }
        _ => Err(GroupError::Shape(beta.to_string(), "lex:a,b".into()).into()),
    }
}

/// Closed-form generators of `P_β`; `None` when the ring has none.
pub fn p_beta_closed_form(
    ring: &ValuedRing,
    beta: &GroupElement,
) -> Result<Option<IdealPresentation>, IdealError> {
    let label = format!("P_{beta}");
    beta.try_cmp(&ring.zero_value())?;
    if beta.try_cmp(&ring.zero_value())? != Ordering::Greater {
        return Ok(Some(IdealPresentation::exact(
            &label,
            vec![Poly::one(&ring.vars)],
        )));
    }
    let gens = match ring.kind {
        RingKind::Ex22 => {
            let b = beta.ceil().expect("rank one") as u32;
            vec![mono(ring, vec![0, b]), ring.w(b)?]
        }
        RingKind::Ex29Target => {
            // x'^α y'^γ with √2α + γ >= β, minimal in γ for each α
            let mut gens = Vec::new();
            let mut alpha = 0u32;
            loop {
                let rest = beta.try_sub(&GroupElement::quad_int(0, alpha as i64))?;
                let gamma = rest.ceil().expect("rank one").max(0) as u32;
                gens.push(mono(ring, vec![0, gamma, alpha]));
                if gamma == 0 {
                    break;
                }
                alpha += 1;
            }
            let i = beta.ceil().expect("rank one") as u32;
            gens.push(ring.w(i)?);
            gens
        }
        RingKind::Ex41 => {
            let (a, b) = lex_pair(beta)?;
            vec![
                mono(ring, vec![0, a, b]),
                &mono(ring, vec![0, 0, b]) * &ring.w(a)?,
                mono(ring, vec![0, a + 1, 0]),
                ring.w(a + 1)?,
            ]
        }
        RingKind::Ex42 => {
            let (a, b) = lex_pair(beta)?;
            vec![
                mono(ring, vec![a, 0, b]),
                &mono(ring, vec![a, 0, 0]) * &ring.branch_factor(b, true),
                mono(ring, vec![a + 1, 0, 0]),
            ]
        }
        RingKind::Ex29Source => return Ok(None),
    };
    Ok(Some(IdealPresentation::exact(&label, gens)))
}

/// Checks that every generator has value at least `β`.
pub fn verify_presentation(
    ring: &ValuedRing,
    p: &IdealPresentation,
    beta: &GroupElement,
) -> Result<(), IdealError> {
    for g in &p.generators {
        match member_by_value(ring, g, beta, false)? {
            Membership::Yes => {}
            _ => {
                return Err(IdealError::GeneratorBelow {
                    label: p.label.clone(),
                    generator: g.to_text(),
                    value: ring.value(g)?.to_string(),
                    beta: beta.clone(),
                })
            }
        }
    }
    Ok(())
}

/// `P_β` (or `P_β⁺ = P_{next(β)}` when `plus`) as a presentation.
pub fn p_beta(
    ring: &ValuedRing,
    semigroup: &Semigroup,
    beta: &GroupElement,
    plus: bool,
) -> Result<IdealPresentation, IdealError> {
    let b = if plus {
        semigroup.successor(beta)?
    } else {
        beta.clone()
    };
    p_beta_closed_form(ring, &b)?.ok_or_else(|| IdealError::NoPresentation(ring.label.clone()))
}

/// Truncation order of the oracle's target jets: every target monomial of
/// value below `β` reachable from source degree `< d` has degree below it.
fn oracle_target_order(ring: &ValuedRing, beta: &GroupElement, d: u32) -> u32 {
    match ring.kind {
        RingKind::Ex41 => {
            let (a, _) = lex_pair(beta).unwrap_or((0, 0));
            a + d + 1
        }
        _ => beta.ceil().unwrap_or(0).max(0) as u32 + 1,
    }
}

/// `{f : deg f < d, ν(f) >= β}` (or `> β`), by linear algebra against the
/// monomial valuation of the ring's embedding.
pub fn value_subspace(
    ring: &ValuedRing,
    beta: &GroupElement,
    strict: bool,
    d: u32,
) -> Result<JetSubspace, IdealError> {
    Ok(value_filtration(ring, std::slice::from_ref(beta), strict, d)?.remove(0))
}

/// [`value_subspace`] for several `β` at once.
///
/// The image matrix is reduced once with target columns ordered by value;
/// the subspace for `β` is spanned by the rows whose pivot has value `>= β`.
pub fn value_filtration(
    ring: &ValuedRing,
    betas: &[GroupElement],
    strict: bool,
    d: u32,
) -> Result<Vec<JetSubspace>, IdealError> {
    let oracle = ring
        .oracle
        .as_ref()
        .ok_or_else(|| IdealError::NoPresentation(ring.label.clone()))?;
    let source = ring.jet_space(d);
    if betas.is_empty() {
        return Ok(Vec::new());
    }
    let mut m = 0;
    for b in betas {
        m = m.max(oracle_target_order(ring, b, d));
    }
    let tspace = JetSpace::new(&oracle.target, m, None);
    let mut valued: Vec<(usize, GroupElement)> = Vec::with_capacity(tspace.dim());
    for (i, e) in tspace.basis().iter().enumerate() {
        let v = monomial_value(
            &oracle.weights,
            &Poly::monomial(&oracle.target, e.clone(), Q::one()),
        )?
        .expect("monomial");
        valued.push((i, v));
    }
    let mut err = None;
    valued.sort_by(|a, b| {
        a.1.try_cmp(&b.1).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let mut position = vec![0; tspace.dim()];
    for (pos, (i, _)) in valued.iter().enumerate() {
        position[*i] = pos;
    }
    let tdim = tspace.dim();
    let images: Vec<Series> = (oracle.embedding.images)(m)
        .into_iter()
        .map(|s| Series::new(s.poly().clone(), s.precision()))
        .collect();
    let columns: Result<Vec<SparseRow>, JetError> = source
        .basis()
        .par_iter()
        .map(|e| {
            let mono = Poly::monomial(source.vars(), e.clone(), Q::one());
            let img = Series::substitute(&mono, &images)?;
            let jet = Jet::from_series(&tspace, &img)?;
            let mut row: SparseRow = jet
                .coords()
                .iter()
                .map(|(c, x)| (position[*c], x.clone()))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            Ok(row)
        })
        .collect();
    let mut red = RowReducer::new();
    for (i, mut row) in columns?.into_iter().enumerate() {
        row.push((tdim + i, Q::one()));
        red.insert(&row);
    }
    let rows = red.into_rows();
    let mut out = Vec::with_capacity(betas.len());
    for b in betas {
        // first position whose value clears the threshold
        let mut k = tdim;
        for (pos, (_, v)) in valued.iter().enumerate() {
            let o = v.try_cmp(b)?;
            if o == Ordering::Greater || (!strict && o == Ordering::Equal) {
                k = pos;
                break;
            }
        }
        let kept = rows.iter().filter(|r| r[0].0 >= k).map(|r| {
            r.iter()
                .filter(|(c, _)| *c >= tdim)
                .map(|(c, x)| (c - tdim, x.clone()))
                .collect()
        });
        out.push(JetSubspace::from_rows(&source, kept));
    }
    Ok(out)
}

/// Rows of `s` with every coordinate of degree `>= n` dropped, as a
/// subspace of the order-`n` space.
pub fn project_to(s: &JetSubspace, space: &Arc<JetSpace>) -> Result<JetSubspace, IdealError> {
    let from = s.space();
    let n = space.order();
    let rows = s.rows().iter().map(|r| {
        r.iter()
            .filter(|(c, _)| from.degree_of(*c) < n)
            .map(|(c, x)| {
                (
                    space
                        .index_of(&from.basis()[*c])
                        .expect("lower-degree monomial"),
                    x.clone(),
                )
            })
            .collect::<SparseRow>()
    });
    let rows: Vec<SparseRow> = rows.filter(|r| !r.is_empty()).collect();
    Ok(JetSubspace::from_rows(space, rows))
}

/// Least degree `n` with `m^n ⊆ P_β`.
pub fn saturation_degree(ring: &ValuedRing, beta: &GroupElement) -> Option<u32> {
    match ring.kind {
        // every variable has value at least 1 in the rank-one rings
        RingKind::Ex22 | RingKind::Ex29Source | RingKind::Ex29Target => {
            Some(beta.ceil()?.max(0) as u32)
        }
        RingKind::Ex41 | RingKind::Ex42 => None,
    }
}

/// `(P_β R̂ + m^N)/m^N`, from the closed form when there is one and from
/// the value oracle otherwise.
pub fn p_beta_subspace(
    ring: &ValuedRing,
    beta: &GroupElement,
    space: &Arc<JetSpace>,
) -> Result<JetSubspace, IdealError> {
    if let Some(p) = p_beta_closed_form(ring, beta)? {
        return Ok(ideal_to_subspace(&p, space)?);
    }
    let n = space.order();
    let d = saturation_degree(ring, beta)
        .ok_or_else(|| IdealError::NoPresentation(ring.label.clone()))?;
    if d <= n {
        return value_subspace(ring, beta, false, n);
    }
    project_to(&value_subspace(ring, beta, false, d)?, space)
}

/// [`p_beta_subspace`] for many `β`; the oracle path shares one reduction.
pub fn p_beta_subspaces(
    ring: &ValuedRing,
    betas: &[GroupElement],
    space: &Arc<JetSpace>,
) -> Result<Vec<JetSubspace>, IdealError> {
    if betas.is_empty() {
        return Ok(Vec::new());
    }
    if p_beta_closed_form(ring, &betas[0])?.is_some() {
        return betas
            .par_iter()
            .map(|b| p_beta_subspace(ring, b, space))
            .collect();
    }
    let mut d = space.order();
    for b in betas {
        d = d.max(
            saturation_degree(ring, b)
                .ok_or_else(|| IdealError::NoPresentation(ring.label.clone()))?,
        );
    }
    value_filtration(ring, betas, false, d)?
        .iter()
        .map(|v| project_to(v, space))
        .collect()
}

/// Degree of `f` plus one: the smallest truncation holding `f` exactly.
pub fn exact_order(f: &Poly) -> u32 {
    f.terms()
        .keys()
        .map(|e| total_degree(e) + 1)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{Scenario, ScenarioConfig, ScenarioName};

    fn scenario(name: ScenarioName) -> Scenario {
        Scenario::new(name, &ScenarioConfig::default()).unwrap()
    }

    fn lex(c: &[i64]) -> GroupElement {
        GroupElement::lex(c)
    }

    #[test]
    fn example22_formula_at_three() {
        let s = scenario(ScenarioName::Example22);
        let r = s.primary();
        let p = p_beta_closed_form(r, &lex(&[3])).unwrap().unwrap();
        let expected = vec![
            Poly::parse(&r.vars, "v^3").unwrap(),
            &(&Poly::var(&r.vars, 0) - &Poly::var(&r.vars, 1).scale(&r.c(1)))
                - &Poly::parse(&r.vars, "v^2").unwrap().scale(&r.c(2)),
        ];
        assert_eq!(p.generators, expected);
    }

    #[test]
    fn example22_formula_matches_value_oracle() {
        let s = scenario(ScenarioName::Example22);
        let r = s.primary();
        let sp = r.jet_space(8);
        for b in 0..=7 {
            let beta = lex(&[b]);
            let formula = p_beta_subspace(r, &beta, &sp).unwrap();
            assert_eq!(
                formula,
                value_subspace(r, &beta, false, 8).unwrap(),
                "beta = {b}"
            );
        }
    }

    #[test]
    fn example29_formula_matches_value_oracle() {
        let s = scenario(ScenarioName::Example29);
        let r = s.ring("R'").unwrap();
        let sp = r.jet_space(5);
        let phi = enumerate_semigroup(r, &GroupElement::quad_int(3, 0)).unwrap();
        for beta in &phi.elements {
            let p = p_beta_closed_form(r, beta).unwrap().unwrap();
            verify_presentation(r, &p, beta).unwrap();
            assert_eq!(
                ideal_to_subspace(&p, &sp).unwrap(),
                value_subspace(r, beta, false, 5).unwrap(),
                "{beta}"
            );
        }
    }

    #[test]
    fn lex_formulas() {
        let s = scenario(ScenarioName::Example41);
        let r = s.primary();
        let p = p_beta_closed_form(r, &lex(&[2, 1])).unwrap().unwrap();
        assert_eq!(p.generators[0], Poly::parse(&r.vars, "x*y^2").unwrap());
        let w2 = &Poly::var(&r.vars, 0) - &Poly::var(&r.vars, 1).scale(&r.c(1));
        assert_eq!(p.generators[1], &Poly::var(&r.vars, 2) * &w2);
        verify_presentation(r, &p, &lex(&[2, 1])).unwrap();

        let s = scenario(ScenarioName::Example42);
        let r = s.primary();
        let sp = r.jet_space(6);
        let p = p_beta_closed_form(r, &lex(&[3, 0])).unwrap().unwrap();
        let z3 = IdealPresentation::exact("z^3", vec![Poly::parse(&r.vars, "z^3").unwrap()]);
        assert_eq!(
            ideal_to_subspace(&p, &sp).unwrap(),
            ideal_to_subspace(&z3, &sp).unwrap()
        );
        let p = p_beta_closed_form(r, &lex(&[1, 4])).unwrap().unwrap();
        verify_presentation(r, &p, &lex(&[1, 4])).unwrap();
    }

    #[test]
    fn zero_gives_unit_ideal() {
        let s = scenario(ScenarioName::Example41);
        let p = p_beta_closed_form(s.primary(), &lex(&[0, 0]))
            .unwrap()
            .unwrap();
        assert!(ideal_to_subspace(&p, &s.primary().jet_space(4))
            .unwrap()
            .is_full());
    }

    #[test]
    fn semigroups() {
        let s = scenario(ScenarioName::Example22);
        let phi = enumerate_semigroup(s.primary(), &lex(&[4])).unwrap();
        assert_eq!(phi.elements, (0..=4).map(|i| lex(&[i])).collect::<Vec<_>>());
        assert_eq!(
            enumerate_semigroup(s.primary(), &lex(&[0]))
                .unwrap()
                .elements,
            vec![lex(&[0])]
        );

        let s = scenario(ScenarioName::Example29);
        let bound = GroupElement::quad_int(3, 0);
        let phi = enumerate_semigroup(s.ring("R'").unwrap(), &bound).unwrap();
        let mut brute = Vec::new();
        for a in 0..4 {
            for b in 0..3 {
                let g = GroupElement::quad_int(a, b);
                if g <= bound {
                    brute.push(g);
                }
            }
        }
        brute.sort_by(|x, y| x.try_cmp(y).unwrap());
        assert_eq!(phi.elements, brute);
        assert_eq!(
            phi.elements[..4],
            [
                GroupElement::quad_int(0, 0),
                GroupElement::quad_int(1, 0),
                GroupElement::quad_int(0, 1),
                GroupElement::quad_int(2, 0)
            ]
        );
        let source = enumerate_semigroup(s.ring("R").unwrap(), &bound).unwrap();
        assert_eq!(source.elements, phi.elements);
    }

    #[test]
    fn successors() {
        let s = scenario(ScenarioName::Example41);
        let phi = enumerate_semigroup(s.primary(), &lex(&[3, 3])).unwrap();
        assert_eq!(phi.successor(&lex(&[1, 3])).unwrap(), lex(&[1, 4]));
        let s = scenario(ScenarioName::Example29);
        let phi =
            enumerate_semigroup(s.ring("R'").unwrap(), &GroupElement::quad_int(3, 0)).unwrap();
        assert_eq!(
            phi.successor(&GroupElement::quad_int(0, 1)).unwrap(),
            GroupElement::quad_int(2, 0)
        );
        assert!(phi.successor(&GroupElement::quad_int(3, 0)).is_err());
    }

    #[test]
    fn membership_by_value() {
        let s = scenario(ScenarioName::Example41);
        let r = s.primary();
        assert_eq!(
            member_by_value(r, &r.w(2).unwrap(), &lex(&[2, 0]), false).unwrap(),
            Membership::Yes
        );
        assert_eq!(
            member_by_value(r, &Poly::one(&r.vars), &lex(&[0, 1]), false).unwrap(),
            Membership::No
        );
        let s = scenario(ScenarioName::Example22);
        let r = s.primary();
        assert_eq!(
            member_by_value(r, &r.w(2).unwrap(), &lex(&[2]), true).unwrap(),
            Membership::No
        );
    }

    #[test]
    fn source_ring_uses_oracle_with_projection() {
        let s = scenario(ScenarioName::Example29);
        let r = s.ring("R").unwrap();
        let sp = r.jet_space(3);
        let small = p_beta_subspace(r, &GroupElement::quad_int(1, 0), &sp).unwrap();
        assert_eq!(small, JetSubspace::power_of_maximal(&sp, 1));
        // x z - c1 y has value 2 + sqrt2 and degree 2
        let big = p_beta_subspace(r, &GroupElement::quad_int(2, 1), &sp).unwrap();
        let f = &Poly::parse(&r.vars, "x*z").unwrap() - &Poly::var(&r.vars, 1).scale(&r.c(1));
        assert!(big
            .member(&crate::jets::Jet::from_poly(&sp, &f).unwrap())
            .unwrap());
        assert!(!big
            .member(
                &crate::jets::Jet::from_poly(&sp, &Poly::parse(&r.vars, "x*z").unwrap()).unwrap()
            )
            .unwrap());
    }
}
