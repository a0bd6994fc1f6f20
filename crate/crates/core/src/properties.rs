//! Seeded property suites.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::exactring::Poly;
use crate::implicit::{compute_h, Tower};
use crate::jets::{ideal_to_subspace, Jet, JetSpace, JetSubspace};
use crate::report::{CheckRecord, Report, Status};
use crate::runner::{random_source_poly, timed, RunOptions};
use crate::scenario::{
    RingKind, Scenario, ScenarioConfig, ScenarioError, ScenarioName, ValuedRing,
};
use crate::valgroup::{GroupElement, IsolatedLevel};
use crate::valideal::{
    enumerate_semigroup, member_by_value, p_beta_subspace, IdealPresentation, Membership,
};
use crate::valuation::ValueResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ValuationAxioms,
    AdditivityNuHatMinus,
    Uniqueness,
    FaithfulFlatness,
    SemigroupFiniteness,
    CanonicalForm,
    Stabilization,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::ValuationAxioms,
        Suite::AdditivityNuHatMinus,
        Suite::Uniqueness,
        Suite::FaithfulFlatness,
        Suite::SemigroupFiniteness,
        Suite::CanonicalForm,
        Suite::Stabilization,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::ValuationAxioms => "valuation-axioms",
            Suite::AdditivityNuHatMinus => "additivity-nu-hat-minus",
            Suite::Uniqueness => "uniqueness",
            Suite::FaithfulFlatness => "faithful-flatness",
            Suite::SemigroupFiniteness => "semigroup-finiteness",
            Suite::CanonicalForm => "canonical-form",
            Suite::Stabilization => "stabilization",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown suite '{}'", self.0)
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

type CheckResult = Result<CheckRecord, Box<dyn std::error::Error + Send + Sync>>;

/// Every valued ring of every scenario, at default settings with the given seed.
fn all_rings(seed: u64) -> Result<Vec<Scenario>, ScenarioError> {
    let cfg = ScenarioConfig {
        seed,
        ..ScenarioConfig::default()
    };
    ScenarioName::ALL
        .into_iter()
        .map(|n| Scenario::new(n, &cfg))
        .collect()
}

fn tally(
    name: String,
    checked: usize,
    skipped: usize,
    bad: Vec<String>,
    what: &str,
) -> CheckRecord {
    let ok = bad.is_empty() && checked > 0;
    CheckRecord::new(
        name,
        Status::from_bool(ok),
        format!(
            "{checked} {what} checked, {skipped} skipped, {} failures",
            bad.len()
        ),
    )
    .with_witnesses(bad.into_iter().take(5).collect())
}

fn axioms_on(ring: &ValuedRing, samples: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
    for _ in 0..samples {
        let f = random_source_poly(&ring.vars, &mut rng, 3);
        let g = random_source_poly(&ring.vars, &mut rng, 3);
        let (ValueResult::Finite(vf), ValueResult::Finite(vg)) = (ring.value(&f)?, ring.value(&g)?)
        else {
            skipped += 1;
            continue;
        };
        checked += 1;
        let fg = ring.value(&(&f * &g))?;
        if fg != ValueResult::Finite(vf.plus(&vg)) {
            bad.push(format!(
                "product ({})({}): {fg} vs {vf} + {vg}",
                f.to_text(),
                g.to_text()
            ));
        }
        let min = if vf.try_cmp(&vg)?.is_le() {
            vf.clone()
        } else {
            vg.clone()
        };
        match ring.value(&(&f + &g))? {
            ValueResult::Finite(s) if s.try_cmp(&min)?.is_lt() => bad.push(format!(
                "sum ({}) + ({}): {s} < {min}",
                f.to_text(),
                g.to_text()
            )),
            _ => {}
        }
        if ring.kind == RingKind::Ex42 {
            // first component is the z-order of the curve normal form
            let nf = ring.jet_space(1).normal_form(&f);
            let zord = nf.terms().keys().map(|e| e[0]).min().unwrap_or(0) as i64;
            if let GroupElement::Lex(v) = &vf {
                if v[0] != zord {
                    bad.push(format!("z-order of {}: {} vs {zord}", f.to_text(), v[0]));
                }
            }
        }
    }
    Ok(tally(
        format!("axioms {} {}", ring_scenario(ring), ring.label),
        checked,
        skipped,
        bad,
        "pairs",
    ))
}

fn ring_scenario(ring: &ValuedRing) -> &'static str {
    match ring.kind {
        RingKind::Ex22 => "example_2_2",
        RingKind::Ex29Source | RingKind::Ex29Target => "example_2_9",
        RingKind::Ex41 => "example_4_1",
        RingKind::Ex42 => "example_4_2",
    }
}

fn valuation_axioms(o: &RunOptions, seed: u64) -> Result<Vec<CheckRecord>, ScenarioError> {
    let scenarios = all_rings(seed)?;
    let mut out = Vec::new();
    for (i, s) in scenarios.iter().enumerate() {
        for (j, r) in s.rings.iter().enumerate() {
            let name = format!("axioms {} {}", s.name, r.label);
            out.push(timed(&name, o.timings, || {
                axioms_on(r, o.samples, seed ^ ((i * 8 + j) as u64))
            }));
        }
    }
    Ok(out)
}

/// Rank-one rings with a truncation at which towers are cheap, and the
/// value below which every level is visible at that truncation.
fn rank_one_towers(seed: u64) -> Result<Vec<(ValuedRing, u32, GroupElement)>, ScenarioError> {
    let cfg = ScenarioConfig {
        seed,
        ..ScenarioConfig::default()
    };
    let s22 = Scenario::new(ScenarioName::Example22, &cfg)?;
    let s29 = Scenario::new(ScenarioName::Example29, &cfg)?;
    Ok(vec![
        (s22.primary().clone(), 8, GroupElement::lex(&[7])),
        (
            s29.ring("R'").expect("target ring").clone(),
            6,
            GroupElement::quad_int(5, 0),
        ),
    ])
}

fn random_jet(
    space: &std::sync::Arc<JetSpace>,
    rng: &mut ChaCha8Rng,
    max_degree: u32,
) -> Result<Jet, crate::jets::JetError> {
    let p = random_source_poly(space.vars(), rng, max_degree);
    let p = if rng.gen_bool(0.3) {
        &p + &Poly::one(space.vars())
    } else {
        p
    };
    Jet::from_poly(space, &p)
}

fn below(v: &ValueResult, limit: &GroupElement) -> bool {
    matches!(v, ValueResult::Finite(g) if g.try_cmp(limit).is_ok_and(|o| o.is_le()))
}

fn additivity(o: &RunOptions, seed: u64) -> Result<Vec<CheckRecord>, ScenarioError> {
    let mut out = Vec::new();
    for (ring, n, limit) in rank_one_towers(seed)? {
        let name = format!("additivity {} {}", ring_scenario(&ring), ring.label);
        out.push(timed(&name, o.timings, || {
            let bound = crate::implicit::saturating_bound(&ring, n);
            let tower = Tower::build(&ring, n, &bound)?;
            let h = tower.subspaces.last().expect("tower").clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
            for _ in 0..o.samples {
                let x = random_jet(&tower.space, &mut rng, 2)?;
                let y = random_jet(&tower.space, &mut rng, 2)?;
                if h.member(&x)? || h.member(&y)? {
                    skipped += 1;
                    continue;
                }
                let (vx, vy) = (tower.nu_hat_minus(&x, &h)?, tower.nu_hat_minus(&y, &h)?);
                let (ValueResult::Finite(a), ValueResult::Finite(b)) = (&vx, &vy) else {
                    skipped += 1;
                    continue;
                };
                let sum = a.plus(b);
                if !below(&ValueResult::Finite(sum.clone()), &limit) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                let xy = x.mul(&y)?;
                let vxy = tower.nu_hat_minus(&xy, &h)?;
                if h.member(&xy)? || vxy != ValueResult::Finite(sum.clone()) {
                    bad.push(format!(
                        "({})({}): {vxy} vs {sum}",
                        x.to_poly().to_text(),
                        y.to_poly().to_text()
                    ));
                }
            }
            Ok(tally(name.clone(), checked, skipped, bad, "jet pairs"))
        }));
    }
    Ok(out)
}

fn uniqueness(o: &RunOptions, seed: u64) -> Result<Vec<CheckRecord>, ScenarioError> {
    let mut out = Vec::new();
    for (ring, n, limit) in rank_one_towers(seed)? {
        let name = format!("uniqueness {} {}", ring_scenario(&ring), ring.label);
        out.push(timed(&name, o.timings, || {
            let bound = crate::implicit::saturating_bound(&ring, n);
            let tower = Tower::build(&ring, n, &bound)?;
            let h = tower.subspaces.last().expect("tower").clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
            let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
            for _ in 0..o.samples {
                let x = random_jet(&tower.space, &mut rng, 3)?;
                // membership over the enumerated values flips at most once
                let marks: Vec<bool> = tower
                    .subspaces
                    .iter()
                    .map(|s| s.member(&x))
                    .collect::<Result<_, _>>()?;
                let flips = marks.windows(2).filter(|w| w[0] != w[1]).count();
                if !marks[0] || flips > 1 {
                    bad.push(format!("{}: membership {:?}", x.to_poly().to_text(), marks));
                    continue;
                }
                // restriction: ν̂_- of a polynomial jet is ν of the polynomial
                let r = x.to_poly();
                let vr = ring.value(&r)?;
                if !below(&vr, &limit) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                let vh = tower.nu_hat_minus(&x, &h)?;
                if vh != vr {
                    bad.push(format!("{}: nu_hat_minus {vh} vs nu {vr}", r.to_text()));
                }
            }
            Ok(tally(name.clone(), checked, skipped, bad, "jets"))
        }));
    }
    Ok(out)
}

/// `jet(f) ∈ P_β R̂` forces `ν(f) >= β`, and conversely, for polynomials
/// below the truncation and values visible there.
fn faithful_flatness(o: &RunOptions, seed: u64) -> Result<Vec<CheckRecord>, ScenarioError> {
    let cfg = ScenarioConfig {
        seed,
        ..ScenarioConfig::default()
    };
    let s29 = Scenario::new(ScenarioName::Example29, &cfg)?;
    let mut rings: Vec<(ValuedRing, u32, GroupElement)> = rank_one_towers(seed)?;
    rings.push((
        s29.ring("R").expect("source ring").clone(),
        5,
        GroupElement::quad_int(4, 0),
    ));
    let mut out = Vec::new();
    for (ring, n, limit) in rings {
        let name = format!("contraction {} {}", ring_scenario(&ring), ring.label);
        out.push(timed(&name, o.timings, || {
            let space = ring.jet_space(n);
            let phi = enumerate_semigroup(&ring, &limit)?;
            let subs: Vec<JetSubspace> = phi
                .elements
                .iter()
                .map(|b| p_beta_subspace(&ring, b, &space))
                .collect::<Result<_, _>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xff);
            let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
            for _ in 0..o.samples {
                let f = random_source_poly(&ring.vars, &mut rng, n - 1);
                let i = rng.gen_range(0..phi.elements.len());
                let beta = &phi.elements[i];
                let by_value = member_by_value(&ring, &f, beta, false)?;
                if by_value == Membership::Unknown {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                let by_jet = subs[i].member(&Jet::from_poly(&space, &f)?)?;
                if by_jet != (by_value == Membership::Yes) {
                    bad.push(format!(
                        "{} at {beta}: jet {by_jet}, value {by_value:?}",
                        f.to_text()
                    ));
                }
            }
            Ok(tally(name.clone(), checked, skipped, bad, "polynomials"))
        }));
    }
    Ok(out)
}

fn semigroup_finiteness(o: &RunOptions, seed: u64) -> Result<Vec<CheckRecord>, ScenarioError> {
    let scenarios = all_rings(seed)?;
    let mut out = Vec::new();
    for s in &scenarios {
        for r in &s.rings {
            let name = format!("semigroup {} {}", s.name, r.label);
            out.push(timed(&name, o.timings, || {
                let bound = &s.value_bound;
                let phi = enumerate_semigroup(r, bound)?;
                let mut bad = Vec::new();
                for w in phi.elements.windows(2) {
                    if !w[0].try_cmp(&w[1])?.is_lt() {
                        bad.push(format!("not sorted at {}", w[1]));
                    }
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e);
                let mut checked = 0;
                let len = phi.elements.len();
                for _ in 0..o.samples {
                    let a = &phi.elements[rng.gen_range(0..len)];
                    let b = &phi.elements[rng.gen_range(0..len)];
                    let sum = a.plus(b);
                    if !crate::valideal::within_bound(&sum, bound)? {
                        continue;
                    }
                    checked += 1;
                    if !phi.contains(&sum) {
                        bad.push(format!("{a} + {b} missing"));
                    }
                }
                // P_β⁺ ⊆ P_β along the enumerated list
                let space = r.jet_space(4.min(s.truncation));
                let subs: Vec<JetSubspace> = phi
                    .elements
                    .iter()
                    .take(12)
                    .map(|b| p_beta_subspace(r, b, &space))
                    .collect::<Result<_, _>>()?;
                for (i, w) in subs.windows(2).enumerate() {
                    if !w[0].contains(&w[1])? {
                        bad.push(format!("P at {} not inside P at {}", phi.elements[i + 1], phi.elements[i]));
                    }
                }
                let ok = bad.is_empty();
                Ok(CheckRecord::new(
                    name.clone(),
                    Status::from_bool(ok),
                    format!("{len} values up to {bound}; {checked} sums checked"),
                )
                .with_witnesses(bad.into_iter().take(5).collect())
                .with_detail(json!({ "elements": phi.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>() })))
            }));
        }
    }
    Ok(out)
}

fn canonical_form(o: &RunOptions, seed: u64) -> Result<Vec<CheckRecord>, ScenarioError> {
    let vars = crate::exactring::vars(&["z", "y", "x"]);
    let space = JetSpace::new(&vars, 5, None);
    let mut out = Vec::new();
    out.push(timed("generator changes", o.timings, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
        let mut bad = Vec::new();
        for _ in 0..o.samples {
            let k = rng.gen_range(1..=3);
            let gens: Vec<Poly> = (0..k)
                .map(|_| random_source_poly(&vars, &mut rng, 2))
                .collect();
            // unimodular change plus a redundant combination
            let lambda = crate::rational::q(rng.gen_range(-3..=3));
            let mut other = gens.clone();
            if k > 1 {
                other[0] = &gens[0] + &gens[1].scale(&lambda);
            }
            let m = random_source_poly(&vars, &mut rng, 1);
            other.push(&gens[0] * &m);
            other.reverse();
            let a = ideal_to_subspace(&IdealPresentation::exact("a", gens.clone()), &space)?;
            let b = ideal_to_subspace(&IdealPresentation::exact("b", other), &space)?;
            if a != b || a.digest() != b.digest() {
                bad.push(
                    gens.iter()
                        .map(Poly::to_text)
                        .collect::<Vec<_>>()
                        .join(", "),
                );
            }
        }
        Ok(tally(
            "generator changes".into(),
            o.samples,
            0,
            bad,
            "generator sets",
        ))
    }));
    out.push(timed("intersection laws", o.timings, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc1);
        let mut bad = Vec::new();
        let random_sub = |rng: &mut ChaCha8Rng| -> Result<JetSubspace, crate::jets::JetError> {
            let gens: Vec<Poly> = (0..rng.gen_range(1..=2))
                .map(|_| random_source_poly(&vars, rng, 2))
                .collect();
            ideal_to_subspace(&IdealPresentation::exact("s", gens), &space)
        };
        for i in 0..o.samples {
            let (a, b, c) = (
                random_sub(&mut rng)?,
                random_sub(&mut rng)?,
                random_sub(&mut rng)?,
            );
            let ab = a.intersect(&b)?;
            let ok = ab == b.intersect(&a)?
                && ab.intersect(&c)? == a.intersect(&b.intersect(&c)?)?
                && a.intersect(&a)? == a
                && a.contains(&ab)?
                && b.contains(&ab)?;
            if !ok {
                bad.push(format!("sample {i}"));
            }
        }
        Ok(tally(
            "intersection laws".into(),
            o.samples,
            0,
            bad,
            "triples",
        ))
    }));
    Ok(out)
}

fn stabilization(o: &RunOptions, seed: u64) -> Result<Vec<CheckRecord>, ScenarioError> {
    let scenarios = all_rings(seed)?;
    let cases: Vec<(&Scenario, &ValuedRing, usize, u32)> = scenarios
        .iter()
        .flat_map(|s| {
            let levels = s.primary().zero_value().rank();
            s.rings.iter().flat_map(move |r| {
                let n = match r.kind {
                    RingKind::Ex22 => 10,
                    RingKind::Ex29Source | RingKind::Ex29Target => 4,
                    RingKind::Ex41 | RingKind::Ex42 => 6,
                };
                (0..levels).map(move |l| (s, r, l, n))
            })
        })
        .collect();
    let mut out = Vec::new();
    for (s, r, level, n) in cases {
        let name = format!("stabilization {} {} level {level}", s.name, r.label);
        out.push(timed(&name, o.timings, || {
            let h = compute_h(r, IsolatedLevel(level), n, None)?;
            let steps: Vec<String> = h
                .stabilization
                .steps
                .iter()
                .map(|st| format!("N = {}: ({})", st.truncation, st.generators.join(", ")))
                .collect();
            Ok(CheckRecord::new(
                name.clone(),
                Status::from_bool(h.stabilization.stable),
                steps.join("; "),
            ))
        }));
    }
    Ok(out)
}

pub fn run_properties(suite: Suite, o: &RunOptions) -> Result<Report, ScenarioError> {
    let seed = o.config.seed;
    let checks = match suite {
        Suite::ValuationAxioms => valuation_axioms(o, seed)?,
        Suite::AdditivityNuHatMinus => additivity(o, seed)?,
        Suite::Uniqueness => uniqueness(o, seed)?,
        Suite::FaithfulFlatness => faithful_flatness(o, seed)?,
        Suite::SemigroupFiniteness => semigroup_finiteness(o, seed)?,
        Suite::CanonicalForm => canonical_form(o, seed)?,
        Suite::Stabilization => stabilization(o, seed)?,
    };
    let config = json!({ "suite": suite.as_str(), "samples": o.samples, "seed": seed });
    Ok(Report::new(
        "properties",
        suite.as_str(),
        seed,
        config,
        checks,
    ))
}
