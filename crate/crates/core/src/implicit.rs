//! Implicit ideals at truncation: intersections of extended valuation
//! ideals, generator detection, primality probes and graded pieces.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactring::{total_degree, Poly, Series};
use crate::jets::{ideal_to_subspace, intersect_all, Jet, JetSpace, JetSubspace, SubspaceDigest};
use crate::rational::{q, Q};
use crate::scenario::{RingKind, ValuedRing};
use crate::valgroup::{GroupElement, IsolatedLevel};
use crate::valideal::{
    enumerate_semigroup, p_beta_closed_form, p_beta_subspace, p_beta_subspaces, value_subspace,
    IdealError, IdealPresentation, Semigroup,
};
use crate::valuation::{monomial_value, value_nu_hat_minus, ValueResult};

/// Smallest bound at which every `P_β R̂` past it vanishes modulo `m^n`
/// together with the implicit ideal, so the intersection has saturated.
pub fn saturating_bound(ring: &ValuedRing, n: u32) -> GroupElement {
    let n = n as i64;
    match ring.kind {
        RingKind::Ex22 => GroupElement::lex(&[n]),
        // x'^(n-1) has the largest value among monomials below degree n;
        // modulo H the source ring is k[[x, z]] with the same values
        RingKind::Ex29Target | RingKind::Ex29Source => GroupElement::quad_int(1, n - 1),
        RingKind::Ex41 | RingKind::Ex42 => GroupElement::lex(&[n, n]),
    }
}

/// The extended ideals `P_β R̂` at one truncation, for every enumerated `β`.
#[derive(Debug, Clone)]
pub struct Tower {
    pub space: Arc<JetSpace>,
    pub semigroup: Semigroup,
    pub subspaces: Vec<JetSubspace>,
}

impl Tower {
    pub fn build(ring: &ValuedRing, n: u32, bound: &GroupElement) -> Result<Tower, IdealError> {
        let space = ring.jet_space(n);
        let semigroup = enumerate_semigroup(ring, bound)?;
        let subspaces = p_beta_subspaces(ring, &semigroup.elements, &space)?;
        Ok(Tower {
            space,
            semigroup,
            subspaces,
        })
    }

    pub fn get(&self, beta: &GroupElement) -> Option<&JetSubspace> {
        self.semigroup.index_of(beta).map(|i| &self.subspaces[i])
    }

    /// `ν̂_-` of a jet modulo `h`.
    pub fn nu_hat_minus(&self, x: &Jet, h: &JetSubspace) -> Result<ValueResult, IdealError> {
        Ok(value_nu_hat_minus(x, h, &self.semigroup.elements, |i| {
            Ok(self.subspaces[i].clone())
        })?)
    }

    /// Index of the value of `x` in the tower, `None` when `x` lies in every level.
    pub fn level_of(&self, x: &Jet) -> Result<Option<usize>, IdealError> {
        let (mut lo, mut hi) = (0usize, self.subspaces.len());
        if self.subspaces[hi - 1].member(x)? {
            return Ok(None);
        }
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.subspaces[mid].member(x)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(Some(lo))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizationStep {
    pub truncation: u32,
    pub bound: GroupElement,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stabilization {
    pub steps: Vec<StabilizationStep>,
    pub stable: bool,
}

#[derive(Debug, Clone)]
pub struct ImplicitResult {
    pub label: String,
    pub level: usize,
    pub truncation: u32,
    pub bound: GroupElement,
    pub subspace: JetSubspace,
    pub generators: IdealPresentation,
    pub stabilization: Stabilization,
    pub codim_estimate: usize,
}

#[derive(Serialize)]
pub struct ImplicitView {
    pub label: String,
    pub level: usize,
    pub truncation: u32,
    pub bound: GroupElement,
    pub generators: Vec<String>,
    pub subspace: SubspaceDigest,
    pub stabilization: Stabilization,
    pub codim_estimate: usize,
}

impl ImplicitResult {
    pub fn view(&self) -> ImplicitView {
        ImplicitView {
            label: self.label.clone(),
            level: self.level,
            truncation: self.truncation,
            bound: self.bound.clone(),
            generators: self.generators.texts(),
            subspace: self.subspace.digest(),
            stabilization: self.stabilization.clone(),
            codim_estimate: self.codim_estimate,
        }
    }
}

/// Greedy generators: echelon rows in pivot order, skipping any row already
/// in the ideal generated by earlier picks.
pub fn detect_generators(h: &JetSubspace, label: &str) -> Result<IdealPresentation, IdealError> {
    let space = h.space();
    let mut picks: Vec<Poly> = Vec::new();
    let mut current = JetSubspace::zero(space);
    for row in h.rows() {
        let jet = Jet::from_sparse(space, row.clone());
        if current.member(&jet)? {
            continue;
        }
        picks.push(jet.to_poly());
        current = ideal_to_subspace(&IdealPresentation::exact(label, picks.clone()), space)?;
        if current == *h {
            break;
        }
    }
    Ok(IdealPresentation::truncated(label, picks, space.order()))
}

fn intersect_level(
    ring: &ValuedRing,
    level: usize,
    n: u32,
    bound: &GroupElement,
) -> Result<JetSubspace, IdealError> {
    let space = ring.jet_space(n);
    let semigroup = enumerate_semigroup(ring, bound)?;
    let betas = semigroup.in_level(level);
    let subspaces: Result<Vec<_>, _> = p_beta_subspaces(ring, &betas, &space);
    Ok(intersect_all(&space, &subspaces?)?)
}

/// `⋂_{β ∈ Δ_ℓ, β ≤ B} P_β R̂` at truncation `n`, with generators and a
/// stabilization comparison against truncation `n + 2`.
///
/// `bound` defaults to the saturating bound; a smaller one is raised to it.
pub fn compute_h(
    ring: &ValuedRing,
    level: IsolatedLevel,
    n: u32,
    bound: Option<&GroupElement>,
) -> Result<ImplicitResult, IdealError> {
    let label = if level.0 == 0 {
        "H".to_string()
    } else {
        format!("H_{}", 2 * level.0 + 1)
    };
    let sat = saturating_bound(ring, n);
    let bound = match bound {
        Some(b) if crate::valideal::within_bound(&sat, b)? => b.clone(),
        _ => sat,
    };
    let h = intersect_level(ring, level.0, n, &bound)?;
    let generators = detect_generators(&h, &label)?;

    let n2 = n + 2;
    let bound2 = saturating_bound(ring, n2);
    let h2 = intersect_level(ring, level.0, n2, &bound2)?;
    let gens2 = detect_generators(&h2, &label)?;
    let truncated: Vec<Poly> = gens2
        .generators
        .iter()
        .map(|g| g.truncate(n))
        .filter(|g| !g.is_zero())
        .collect();
    let stable = truncated == generators.generators;
    let steps = vec![
        StabilizationStep {
            truncation: n,
            bound: bound.clone(),
            generators: generators.texts(),
        },
        StabilizationStep {
            truncation: n2,
            bound: bound2,
            generators: gens2.texts(),
        },
    ];
    let codim_estimate = h.space().dim() - h.dim();
    Ok(ImplicitResult {
        label,
        level: level.0,
        truncation: n,
        bound,
        subspace: h,
        generators,
        stabilization: Stabilization { steps, stable },
        codim_estimate,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum PrimalityProbe {
    NotPrime { x: Poly, y: Poly },
    NoWitnessFound { samples: usize },
}

impl Serialize for PrimalityProbe {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "snake_case")]
        enum View {
            NotPrime { x: String, y: String },
            NoWitnessFound { samples: usize },
        }
        match self {
            PrimalityProbe::NotPrime { x, y } => View::NotPrime {
                x: x.to_text(),
                y: y.to_text(),
            },
            PrimalityProbe::NoWitnessFound { samples } => {
                View::NoWitnessFound { samples: *samples }
            }
        }
        .serialize(s)
    }
}

/// Largest `d` with `x ∈ S + m^d` (the truncation order when `x ∈ S`).
pub fn depth_in(s: &JetSubspace, x: &Jet) -> Result<u32, IdealError> {
    let r = s.remainder(x)?;
    Ok(r.order().unwrap_or(s.space().order()))
}

/// A zero-divisor witness modulo `S` that cannot be an artefact of
/// truncation: neither factor in `S`, product in `S`, and the factors'
/// depths summing below the truncation order.
pub fn is_witness(s: &JetSubspace, x: &Jet, y: &Jet) -> Result<bool, IdealError> {
    if s.member(x)? || s.member(y)? {
        return Ok(false);
    }
    if !s.member(&x.mul(y)?)? {
        return Ok(false);
    }
    Ok(depth_in(s, x)? + depth_in(s, y)? < s.space().order())
}

fn random_poly(space: &Arc<JetSpace>, rng: &mut ChaCha8Rng, max_degree: u32) -> Poly {
    let mut p = Poly::zero(space.vars());
    for e in space.basis() {
        let d = total_degree(e);
        if d == 0 || d > max_degree || !rng.gen_bool(0.4) {
            continue;
        }
        p.add_term(e.clone(), q(rng.gen_range(-5..=5)));
    }
    p
}

/// Falsification-only primality test: distinguished elements first, then
/// seeded random jets.
pub fn primality_probe(
    s: &JetSubspace,
    distinguished: &[Poly],
    samples: usize,
    seed: u64,
) -> Result<PrimalityProbe, IdealError> {
    let space = s.space();
    let jets: Result<Vec<Jet>, _> = distinguished
        .iter()
        .map(|p| Jet::from_poly(space, p))
        .collect();
    let jets = jets?;
    for i in 0..jets.len() {
        for j in i..jets.len() {
            if is_witness(s, &jets[i], &jets[j])? {
                return Ok(PrimalityProbe::NotPrime {
                    x: distinguished[i].clone(),
                    y: distinguished[j].clone(),
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = (space.order() / 2).max(1);
    for _ in 0..samples {
        let x = random_poly(space, &mut rng, half);
        let y = random_poly(space, &mut rng, half);
        if is_witness(s, &Jet::from_poly(space, &x)?, &Jet::from_poly(space, &y)?)? {
            return Ok(PrimalityProbe::NotPrime { x, y });
        }
    }
    Ok(PrimalityProbe::NoWitnessFound { samples })
}

#[derive(Debug, Clone, Serialize)]
pub struct AlternativeCheck {
    pub generators: Vec<String>,
    pub contains_prime_ideal: bool,
    pub inside_candidate: bool,
    pub inside_odd_ideal: bool,
    pub strictly_between: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvenReport {
    pub level: usize,
    pub candidate: IdealPresentation,
    pub contains_prime_ideal: bool,
    pub inside_odd_ideal: bool,
    pub probe: PrimalityProbe,
    pub alternatives: Vec<AlternativeCheck>,
    pub pass: bool,
}

/// The prime ideal `P_ℓ = {x : ν(x) ∉ Δ_ℓ}` of the ring.
pub fn prime_nu_ideal(ring: &ValuedRing, level: usize) -> Result<IdealPresentation, IdealError> {
    let label = format!("P_{level}");
    if level == 0 {
        return Ok(IdealPresentation::exact(&label, vec![]));
    }
    let mut e = vec![0i64; ring.zero_value().rank()];
    e[level - 1] = 1;
    let mut p = p_beta_closed_form(ring, &GroupElement::Lex(e))?
        .ok_or_else(|| IdealError::NoPresentation(ring.label.clone()))?;
    p.label = label;
    Ok(p)
}

/// Checks a candidate even implicit ideal: `P_ℓ R̂ ⊆ candidate ⊆ H_{2ℓ+1}`,
/// no witness against primality, and no alternative strictly between.
#[allow(clippy::too_many_arguments)]
pub fn verify_even_implicit(
    ring: &ValuedRing,
    level: usize,
    candidate: &IdealPresentation,
    alternatives: &[IdealPresentation],
    odd: &JetSubspace,
    distinguished: &[Poly],
    samples: usize,
    seed: u64,
) -> Result<EvenReport, IdealError> {
    let space = odd.space();
    let p_level = ideal_to_subspace(&prime_nu_ideal(ring, level)?, space)?;
    let cand = ideal_to_subspace(candidate, space)?;
    let contains_prime_ideal = cand.contains(&p_level)?;
    let inside_odd_ideal = odd.contains(&cand)?;
    let probe = primality_probe(&cand, distinguished, samples, seed)?;
    let mut alts = Vec::new();
    for a in alternatives {
        let sub = ideal_to_subspace(a, space)?;
        let contains = sub.contains(&p_level)?;
        let inside = cand.contains(&sub)?;
        alts.push(AlternativeCheck {
            generators: a.texts(),
            contains_prime_ideal: contains,
            inside_candidate: inside,
            inside_odd_ideal: odd.contains(&sub)?,
            strictly_between: contains && inside && sub != cand,
        });
    }
    let pass = contains_prime_ideal
        && inside_odd_ideal
        && matches!(probe, PrimalityProbe::NoWitnessFound { .. })
        && alts.iter().all(|a| !a.strictly_between);
    Ok(EvenReport {
        level,
        candidate: candidate.clone(),
        contains_prime_ideal,
        inside_odd_ideal,
        probe,
        alternatives: alts,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedDegree {
    pub beta: GroupElement,
    pub completion_dim: usize,
    pub ring_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedIsoReport {
    pub degrees: Vec<GradedDegree>,
    pub mismatch: Option<GroupElement>,
    pub pass: bool,
}

/// Compares `dim (P_β R̂ + H)/(P_β⁺ R̂ + H)` with `dim P_β/P_β⁺`, the latter
/// computed on polynomials of degree below `d` by the value oracle.
pub fn graded_iso_check(
    ring: &ValuedRing,
    semigroup: &Semigroup,
    h: &JetSubspace,
    betas: &[GroupElement],
    d: u32,
) -> Result<GradedIsoReport, IdealError> {
    let space = h.space();
    let rows: Result<Vec<GradedDegree>, IdealError> = betas
        .par_iter()
        .map(|beta| {
            let next = semigroup.successor(beta)?;
            let a = p_beta_subspace(ring, beta, space)?.sum(h)?;
            let b = p_beta_subspace(ring, &next, space)?.sum(h)?;
            let completion_dim = a.quotient_dim(&b)?;
            let va = value_subspace(ring, beta, false, d)?;
            let vb = value_subspace(ring, beta, true, d)?;
            Ok(GradedDegree {
                beta: beta.clone(),
                completion_dim,
                ring_dim: va.quotient_dim(&vb)?,
            })
        })
        .collect();
    let degrees = rows?;
    let mismatch = degrees
        .iter()
        .find(|g| g.completion_dim != g.ring_dim)
        .map(|g| g.beta.clone());
    Ok(GradedIsoReport {
        pass: mismatch.is_none(),
        degrees,
        mismatch,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct H1Consistency {
    pub probe: PrimalityProbe,
    pub checked: usize,
    pub skipped: usize,
    pub mismatch: Option<String>,
    pub contains_naive: bool,
    pub pass: bool,
}

/// Value of the image of `r` in `k[[x,z]]` under `y ↦ -x - Σ a_i x^i`,
/// with `ν̂_-(z) = (1,0)`, `ν̂_-(x) = (0,1)`.
///
/// A nonzero coefficient of `z^k` in the image of a polynomial of degree
/// `d` has `x`-order at most `3d`, so precision `3d + 1` decides it.
pub fn quotient_value(ring: &ValuedRing, r: &Poly) -> Result<ValueResult, IdealError> {
    let target = crate::exactring::vars(&["z", "x"]);
    let d = r.degree().unwrap_or(0);
    let p = 3 * d + 2;
    let grading: Arc<[u32]> = vec![0, 1].into();
    let mut y = Poly::monomial(&target, vec![0, 1], -Q::from_integer(1.into()));
    for i in 2..p {
        y.add_term(vec![0, i], -ring.coefficients[i as usize - 2].clone());
    }
    let images = vec![
        Series::with_grading(Poly::var(&target, 0), grading.clone(), p),
        Series::with_grading(y, grading.clone(), p),
        Series::with_grading(Poly::var(&target, 1), grading, p),
    ];
    let img = Series::substitute(r, &images).map_err(crate::valuation::ValuationError::from)?;
    let weights = vec![GroupElement::lex(&[1, 0]), GroupElement::lex(&[0, 1])];
    Ok(match monomial_value(&weights, img.poly())? {
        Some(g) => ValueResult::Finite(g),
        None => ValueResult::Infinity,
    })
}

/// Checks the candidate `H_1 = (f)` on the node: no primality witness, the
/// quotient valuation agrees with `ν` on random elements, and `(f)`
/// contains the naive intersection.
pub fn consistency_h1_example42(
    ring: &ValuedRing,
    n: u32,
    naive: &JetSubspace,
    samples: usize,
    seed: u64,
) -> Result<H1Consistency, IdealError> {
    let space = ring.jet_space(n);
    let f = ring.branch_factor(n, true);
    let g = ring.branch_factor(n, false);
    let cand = ideal_to_subspace(
        &IdealPresentation::truncated("H1", vec![f.clone()], n),
        &space,
    )?;
    let distinguished = vec![f, g, Poly::var(&ring.vars, 0), Poly::var(&ring.vars, 2)];
    let probe = primality_probe(&cand, &distinguished, samples, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (mut checked, mut skipped, mut mismatch) = (0, 0, None);
    let fixed =
        ["z", "y + x", "x", "y"].map(|t| Poly::parse(&ring.vars, t).expect("fixed element"));
    let mut pool: Vec<Poly> = fixed.to_vec();
    while pool.len() < samples {
        let r = random_poly(&space, &mut rng, 4);
        if !r.is_zero() {
            pool.push(r);
        }
    }
    for r in &pool {
        let lhs = ring.value(r)?;
        if !matches!(lhs, ValueResult::Finite(_)) {
            skipped += 1;
            continue;
        }
        let rhs = quotient_value(ring, r)?;
        checked += 1;
        if lhs != rhs && mismatch.is_none() {
            mismatch = Some(format!("{}: {lhs} vs {rhs}", r.to_text()));
        }
    }
    let contains_naive = cand.contains(naive)?;
    let pass = matches!(probe, PrimalityProbe::NoWitnessFound { .. })
        && mismatch.is_none()
        && contains_naive;
    Ok(H1Consistency {
        probe,
        checked,
        skipped,
        mismatch,
        contains_naive,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{Scenario, ScenarioConfig, ScenarioName};

    fn scenario(name: ScenarioName) -> Scenario {
        Scenario::new(name, &ScenarioConfig::default()).unwrap()
    }

    #[test]
    fn example22_h_is_w() {
        let s = scenario(ScenarioName::Example22);
        let r = s.primary();
        let h = compute_h(r, IsolatedLevel(0), 8, None).unwrap();
        assert_eq!(h.generators.generators, vec![r.w(8).unwrap()]);
        assert!(h.stabilization.stable);
        let probe = primality_probe(
            &h.subspace,
            &[r.w(8).unwrap(), Poly::var(&r.vars, 1)],
            50,
            1,
        )
        .unwrap();
        assert_eq!(probe, PrimalityProbe::NoWitnessFound { samples: 50 });
    }

    #[test]
    fn example41_levels() {
        let s = scenario(ScenarioName::Example41);
        let r = s.primary();
        let h1 = compute_h(r, IsolatedLevel(0), 6, None).unwrap();
        assert_eq!(h1.generators.generators, vec![r.w(6).unwrap()]);
        let h3 = compute_h(r, IsolatedLevel(1), 6, None).unwrap();
        assert_eq!(h3.generators.texts(), vec!["z", "y"]);
        assert!(h3.subspace.contains(&h1.subspace).unwrap());
        let cand =
            IdealPresentation::exact("H2", vec![Poly::var(&r.vars, 1), Poly::var(&r.vars, 0)]);
        let rep = verify_even_implicit(r, 1, &cand, &[], &h3.subspace, &[], 20, 0).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn example42_naive_intersection_is_not_prime() {
        let s = scenario(ScenarioName::Example42);
        let r = s.primary();
        let n = 8;
        let h = compute_h(r, IsolatedLevel(0), n, None).unwrap();
        assert!(h.subspace.is_zero());
        let f = r.branch_factor(n, true);
        let g = r.branch_factor(n, false);
        let probe = primality_probe(&h.subspace, &[f.clone(), g.clone()], 0, 0).unwrap();
        assert_eq!(
            probe,
            PrimalityProbe::NotPrime {
                x: f.clone(),
                y: g.clone()
            }
        );

        let h3 = compute_h(r, IsolatedLevel(1), n, None).unwrap();
        assert_eq!(
            h3.generators.generators,
            vec![Poly::var(&r.vars, 0), f.clone()]
        );
        let cand = IdealPresentation::exact("H2", vec![Poly::var(&r.vars, 0), f.clone()]);
        let alt = IdealPresentation::exact("alt", vec![Poly::var(&r.vars, 0), g.clone()]);
        let rep = verify_even_implicit(r, 1, &cand, &[alt], &h3.subspace, &[f, g], 20, 0).unwrap();
        assert!(rep.pass);
        assert!(!rep.alternatives[0].inside_odd_ideal);
    }

    #[test]
    fn example42_h1_consistency() {
        let s = scenario(ScenarioName::Example42);
        let r = s.primary();
        let naive = JetSubspace::zero(&r.jet_space(8));
        let rep = consistency_h1_example42(r, 8, &naive, 30, 3).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.checked >= 4);
    }

    #[test]
    fn example29_both_rings() {
        let s = scenario(ScenarioName::Example29);
        let target = s.ring("R'").unwrap();
        let h = compute_h(target, IsolatedLevel(0), 6, None).unwrap();
        assert_eq!(h.generators.generators, vec![target.w(6).unwrap()]);
        let source = s.ring("R").unwrap();
        let h = compute_h(source, IsolatedLevel(0), 4, None).unwrap();
        let f = inverse_relation(source, 4);
        let expected = ideal_to_subspace(
            &IdealPresentation::exact("H", vec![f]),
            &h.subspace.space().clone(),
        )
        .unwrap();
        assert_eq!(h.subspace, expected);
    }

    /// `y - x σ(z)` below degree `d`, `σ` the compositional inverse of
    /// `Σ c_i t^i`, solved coefficient by coefficient.
    fn inverse_relation(ring: &ValuedRing, d: u32) -> Poly {
        let t = crate::exactring::vars(&["t"]);
        let s_poly = Poly::from_terms(&t, (1..=d as usize).map(|i| (vec![i as u32], ring.c(i))));
        let c1 = ring.c(1);
        let mut sigma: Vec<Q> = vec![q(0), q(1) / &c1];
        for j in 2..d {
            let mut acc = Poly::zero(&t);
            for (i, si) in sigma.iter().enumerate().skip(1) {
                acc = acc.checked_add(&s_poly.pow(i as u32).scale(si)).unwrap();
            }
            let mut cj = c1.clone();
            for _ in 1..j {
                cj *= &c1;
            }
            sigma.push(-acc.coeff(&[j]) / cj);
        }
        let v = &ring.vars;
        let mut f = Poly::var_named(v, "y");
        for (j, sj) in sigma.iter().enumerate().skip(1) {
            let term = Poly::var_named(v, "x")
                .checked_mul(&Poly::var_named(v, "z").pow(j as u32))
                .unwrap();
            f = f.checked_sub(&term.scale(sj)).unwrap();
        }
        f
    }

    #[test]
    fn example29_source_relation_has_growing_value() {
        let s = scenario(ScenarioName::Example29);
        let source = s.ring("R").unwrap();
        for d in 2..6 {
            let f = inverse_relation(source, d);
            let v = source.value(&f).unwrap();
            assert_eq!(
                v,
                ValueResult::Finite(GroupElement::quad_int(d as i64, 1)),
                "d = {d}"
            );
        }
    }

    #[test]
    fn maximal_ideal_has_no_witness() {
        let s = scenario(ScenarioName::Example41);
        let sp = s.primary().jet_space(5);
        let m = JetSubspace::power_of_maximal(&sp, 1);
        assert_eq!(
            primality_probe(&m, &[], 40, 9).unwrap(),
            PrimalityProbe::NoWitnessFound { samples: 40 }
        );
    }

    #[test]
    fn graded_pieces_example22() {
        let s = scenario(ScenarioName::Example22);
        let r = s.primary();
        let h = compute_h(r, IsolatedLevel(0), 8, None).unwrap();
        let phi = enumerate_semigroup(r, &GroupElement::lex(&[8])).unwrap();
        let betas: Vec<_> = phi.elements[..6].to_vec();
        let rep = graded_iso_check(r, &phi, &h.subspace, &betas, 8).unwrap();
        assert!(rep.pass);
        assert!(rep.degrees.iter().all(|d| d.ring_dim == 1));
    }

    #[test]
    fn nu_hat_minus_flips_once() {
        let s = scenario(ScenarioName::Example22);
        let r = s.primary();
        let tower = Tower::build(r, 8, &GroupElement::lex(&[8])).unwrap();
        let h = tower.subspaces.last().unwrap().clone();
        let x = Jet::from_poly(&tower.space, &r.w(2).unwrap()).unwrap();
        assert_eq!(
            tower.nu_hat_minus(&x, &h).unwrap(),
            ValueResult::Finite(GroupElement::lex(&[2]))
        );
        let one = Jet::from_poly(&tower.space, &Poly::one(&r.vars)).unwrap();
        assert_eq!(
            tower.nu_hat_minus(&one, &h).unwrap(),
            ValueResult::Finite(GroupElement::lex(&[0]))
        );
    }
}
