//! Scenario check lists.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::blowup::{
    contraction_check_h, contraction_check_pbeta, height_report, value_compatible, ExtensionMap,
};
use crate::exactring::{Poly, Vars};
use crate::implicit::{
    compute_h, consistency_h1_example42, graded_iso_check, primality_probe, verify_even_implicit,
    ImplicitResult, PrimalityProbe,
};
use crate::jets::{ideal_to_subspace, Jet, JetSubspace};
use crate::report::{CheckRecord, Report, Status};
use crate::scenario::{
    RingKind, Scenario, ScenarioConfig, ScenarioError, ScenarioName, ValuedRing,
};
use crate::valgroup::{GroupElement, IsolatedLevel};
use crate::valideal::{
    enumerate_semigroup, p_beta_closed_form, project_to, value_filtration, verify_presentation,
    within_bound, IdealPresentation, Semigroup,
};
use crate::valuation::{ValuationSpec, ValueResult};

pub const DEFAULT_SAMPLES: usize = 100;

/// Degree bound for the lex value oracle; its target grows with `β`.
const LEX_ORACLE_DEGREE: u32 = 6;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub config: ScenarioConfig,
    pub samples: usize,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            config: ScenarioConfig::default(),
            samples: DEFAULT_SAMPLES,
            timings: false,
        }
    }
}

type CheckResult = Result<CheckRecord, Box<dyn std::error::Error + Send + Sync>>;

/// Runs one check, turning errors into `unknown` and recording time.
pub(crate) fn timed(name: &str, timings: bool, f: impl FnOnce() -> CheckResult) -> CheckRecord {
    let start = Instant::now();
    let mut rec = match f() {
        Ok(r) => r,
        Err(e) => CheckRecord::errored(name, e),
    };
    if timings {
        rec.millis = Some(start.elapsed().as_millis() as u64);
    }
    rec
}

fn texts(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_text).collect()
}

fn elements(ring: &ValuedRing, gens: &[String], n: u32) -> Result<Vec<Poly>, ScenarioError> {
    gens.iter().map(|g| ring.element(g, n)).collect()
}

fn values_check(s: &Scenario) -> CheckResult {
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for v in &s.catalog.values {
        let ring = s
            .ring(&v.ring)
            .ok_or_else(|| ScenarioError::Unknown(v.ring.clone()))?;
        let f = ring.element(&v.element, s.truncation)?;
        let got = ring.value(&f)?;
        let want = ValueResult::Finite(GroupElement::parse(&v.value)?);
        if got != want {
            bad.push(format!(
                "{} {}: got {got}, expected {want}",
                v.ring, v.element
            ));
        }
        rows.push(json!({"ring": v.ring, "element": v.element, "value": got, "basis": v.basis}));
    }
    let n = rows.len();
    Ok(CheckRecord::new(
        "values",
        Status::from_bool(bad.is_empty()),
        format!("{} of {n} catalog values reproduced", n - bad.len()),
    )
    .with_witnesses(bad)
    .with_detail(rows))
}

fn semigroup_check(ring: &ValuedRing, bound: &GroupElement) -> CheckResult {
    let phi = enumerate_semigroup(ring, bound)?;
    let mut ok = phi.elements.first() == Some(&ring.zero_value());
    for w in phi.elements.windows(2) {
        ok &= w[0].try_cmp(&w[1])? == std::cmp::Ordering::Less;
    }
    for e in &phi.elements {
        ok &= within_bound(e, bound)?;
    }
    let shown: Vec<String> = phi.elements.iter().map(|e| e.to_string()).collect();
    Ok(CheckRecord::new(
        format!("semigroup {}", ring.label),
        Status::from_bool(ok),
        format!(
            "{} values up to {bound}, sorted and bounded",
            phi.elements.len()
        ),
    )
    .with_detail(json!({ "elements": shown })))
}

/// Closed form against the value oracle. Rank one: equality of subspaces.
/// Lex rank two: generators certified `>= β`, and every polynomial of
/// degree `< N` with value `>= β` lies in the closed form's jets.
fn p_beta_check(ring: &ValuedRing, phi: &Semigroup, n: u32) -> CheckResult {
    let space = ring.jet_space(n);
    let betas: Vec<GroupElement> = phi.elements.clone();
    let formula: Vec<JetSubspace> = betas
        .par_iter()
        .map(|b| {
            let p = p_beta_closed_form(ring, b)?
                .ok_or_else(|| crate::valideal::IdealError::NoPresentation(ring.label.clone()))?;
            verify_presentation(ring, &p, b)?;
            Ok(ideal_to_subspace(&p, &space)?)
        })
        .collect::<Result<_, crate::valideal::IdealError>>()?;
    let mut bad = Vec::new();
    let mode;
    match ring.kind {
        RingKind::Ex42 => {
            mode = "generators certified";
        }
        RingKind::Ex41 => {
            mode = "generators certified, oracle contained";
            let d = n.min(LEX_ORACLE_DEGREE);
            let small = ring.jet_space(d);
            let oracle = value_filtration(ring, &betas, false, d)?;
            for ((b, f), o) in betas.iter().zip(&formula).zip(&oracle) {
                if !project_to(f, &small)?.contains(o)? {
                    bad.push(b.to_string());
                }
            }
        }
        _ => {
            mode = "equal to oracle";
            let oracle = p_oracle(ring, &betas, n)?;
            for ((b, f), o) in betas.iter().zip(&formula).zip(&oracle) {
                if f != o {
                    bad.push(b.to_string());
                }
            }
        }
    }
    Ok(CheckRecord::new(
        format!("p_beta {}", ring.label),
        Status::from_bool(bad.is_empty()),
        format!(
            "{} of {} closed forms {mode}",
            betas.len() - bad.len(),
            betas.len()
        ),
    )
    .with_witnesses(bad))
}

fn p_oracle(
    ring: &ValuedRing,
    betas: &[GroupElement],
    n: u32,
) -> Result<Vec<JetSubspace>, crate::valideal::IdealError> {
    let space = ring.jet_space(n);
    let mut d = n;
    for b in betas {
        d = d.max(b.ceil().unwrap_or(0).max(0) as u32);
    }
    value_filtration(ring, betas, false, d)?
        .iter()
        .map(|v| project_to(v, &space))
        .collect()
}

/// Detected generators against the catalog, compared as ideals and counts.
fn implicit_check(
    name: &str,
    ring: &ValuedRing,
    h: &ImplicitResult,
    expected: &[String],
    n: u32,
) -> CheckResult {
    let want = elements(ring, expected, n)?;
    let want_sub = ideal_to_subspace(
        &IdealPresentation::truncated("expected", want.clone(), n),
        h.subspace.space(),
    )?;
    let found = &h.generators.generators;
    let ok = want_sub == h.subspace && want.len() == found.len() && h.stabilization.stable;
    let summary = format!(
        "{} = ({}) at N = {n}, bound {}; expected ({}); {}",
        h.label,
        texts(found).join(", "),
        h.bound,
        texts(&want).join(", "),
        if h.stabilization.stable {
            "stable to N + 2"
        } else {
            "not stable to N + 2"
        }
    );
    let witnesses = if ok { vec![] } else { texts(found) };
    Ok(CheckRecord::new(name, Status::from_bool(ok), summary)
        .with_witnesses(witnesses)
        .with_detail(h.view()))
}

fn expected_implicit<'a>(s: &'a Scenario, ring: &str, level: usize) -> &'a [String] {
    s.catalog
        .implicit
        .iter()
        .find(|e| e.ring == ring && e.level == level)
        .map(|e| e.generators.as_slice())
        .unwrap_or(&[])
}

fn probe_summary(p: &PrimalityProbe) -> String {
    match p {
        PrimalityProbe::NotPrime { x, y } => format!("NotPrime({}, {})", x.to_text(), y.to_text()),
        PrimalityProbe::NoWitnessFound { samples } => format!("no witness in {samples} samples"),
    }
}

fn error_text(e: &impl std::fmt::Display) -> String {
    e.to_string()
}

/// Values `β` whose graded piece is visible below degree `n`.
fn graded_betas(ring: &ValuedRing, phi: &Semigroup, n: u32) -> Vec<GroupElement> {
    let cap = 8i64.min(n as i64 - 1);
    let last = phi.elements.len().saturating_sub(1);
    phi.elements[..last]
        .iter()
        .filter(|b| match b {
            GroupElement::Lex(v) if v.len() == 2 => v[0] + v[1] <= cap.min(4),
            _ => b.ceil().is_some_and(|c| c <= cap),
        })
        .filter(|b| ring.kind != RingKind::Ex22 || b.ceil().is_some_and(|c| c <= 8))
        .cloned()
        .collect()
}

fn graded_check(ring: &ValuedRing, phi: &Semigroup, h: &JetSubspace, n: u32) -> CheckResult {
    let betas = graded_betas(ring, phi, n);
    let d = if ring.kind == RingKind::Ex41 {
        n.min(LEX_ORACLE_DEGREE)
    } else {
        n
    };
    let rep = graded_iso_check(ring, phi, h, &betas, d)?;
    let ones = rep
        .degrees
        .iter()
        .all(|d| d.completion_dim == 1 && d.ring_dim == 1);
    let ok = rep.pass && ones && !betas.is_empty();
    let witnesses = rep.mismatch.iter().map(|m| m.to_string()).collect();
    Ok(CheckRecord::new(
        "graded iso",
        Status::from_bool(ok),
        format!(
            "{} degrees compared, all of dimension 1: {}",
            rep.degrees.len(),
            ones
        ),
    )
    .with_witnesses(witnesses)
    .with_detail(&rep))
}

pub(crate) fn random_source_poly(
    vars: &Vars,
    rng: &mut rand_chacha::ChaCha8Rng,
    max_degree: u32,
) -> Poly {
    use rand::Rng;
    let space = crate::jets::JetSpace::new(vars, max_degree + 1, None);
    loop {
        let mut p = Poly::zero(vars);
        for e in space.basis() {
            if e.iter().sum::<u32>() > 0 && rng.gen_bool(0.35) {
                p.add_term(e.clone(), crate::rational::q(rng.gen_range(-4..=4)));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn example22(s: &Scenario, o: &RunOptions) -> Vec<CheckRecord> {
    let (r, n, b, t) = (s.primary(), s.truncation, &s.value_bound, o.timings);
    let mut out = vec![
        timed("values", t, || values_check(s)),
        timed("semigroup R", t, || semigroup_check(r, b)),
    ];
    let phi = enumerate_semigroup(r, b);
    out.push(timed("p_beta R", t, || {
        p_beta_check(r, phi.as_ref().map_err(error_text)?, n)
    }));
    let mut h = None;
    out.push(timed("implicit H", t, || {
        let res = compute_h(r, IsolatedLevel(0), n, Some(b))?;
        let rec = implicit_check("implicit H", r, &res, expected_implicit(s, "R", 0), n)?;
        h = Some(res);
        Ok(rec)
    }));
    out.push(timed("primality H", t, || {
        let h = h.as_ref().ok_or("H unavailable")?;
        let p = primality_probe(
            &h.subspace,
            &[r.w(n)?, Poly::var(&r.vars, 1)],
            o.samples,
            s.seed,
        )?;
        let ok = matches!(p, PrimalityProbe::NoWitnessFound { .. });
        Ok(
            CheckRecord::new("primality H", Status::from_bool(ok), probe_summary(&p))
                .with_detail(&p),
        )
    }));
    out.push(timed("graded iso", t, || {
        let h = h.as_ref().ok_or("H unavailable")?;
        graded_check(r, phi.as_ref().map_err(error_text)?, &h.subspace, n)
    }));
    out
}

fn example29(s: &Scenario, o: &RunOptions) -> Vec<CheckRecord> {
    let (n, b, t) = (s.truncation, &s.value_bound, o.timings);
    let (src, tgt) = (
        s.ring("R").expect("source ring"),
        s.ring("R'").expect("target ring"),
    );
    let mut out = vec![
        timed("values", t, || values_check(s)),
        timed("semigroup R'", t, || semigroup_check(tgt, b)),
    ];
    let phi = enumerate_semigroup(tgt, b);
    out.push(timed("p_beta R'", t, || {
        p_beta_check(tgt, phi.as_ref().map_err(error_text)?, n)
    }));
    let (mut ht, mut hs) = (None, None);
    out.push(timed("implicit H'", t, || {
        let res = compute_h(tgt, IsolatedLevel(0), n, Some(b))?;
        let rec = implicit_check("implicit H'", tgt, &res, expected_implicit(s, "R'", 0), n)?;
        ht = Some(res);
        Ok(rec)
    }));
    out.push(timed("implicit H", t, || {
        let res = compute_h(src, IsolatedLevel(0), n, None)?;
        let rec = implicit_check("implicit H", src, &res, expected_implicit(s, "R", 0), n)?;
        hs = Some(res);
        Ok(rec)
    }));
    let map = ExtensionMap::parse(&src.vars, &tgt.vars, &s.catalog.extension_map);
    out.push(timed("contraction H", t, || {
        let map = map.as_ref().map_err(error_text)?;
        let (hs, ht) = (
            hs.as_ref().ok_or("H unavailable")?,
            ht.as_ref().ok_or("H' unavailable")?,
        );
        let rep = contraction_check_h(map, hs, ht)?;
        let summary = format!(
            "kernel of R-jets into R'-jets mod H' has dimension {}; H has dimension {}",
            rep.kernel.dim, rep.expected.dim
        );
        Ok(
            CheckRecord::new("contraction H", Status::from_bool(rep.equal), summary)
                .with_witnesses(rep.witnesses.clone())
                .with_detail(&rep),
        )
    }));
    out.push(timed("kernel is zero", t, || {
        let hs = hs.as_ref().ok_or("H unavailable")?;
        let zero = hs.subspace.is_zero();
        let summary = format!("kernel dimension {} at N = {n}", hs.subspace.dim());
        Ok(
            CheckRecord::new("kernel is zero", Status::from_bool(zero), summary)
                .with_witnesses(hs.generators.texts()),
        )
    }));
    out.push(timed("heights", t, || {
        let (hs, ht) = (
            hs.as_ref().ok_or("H unavailable")?,
            ht.as_ref().ok_or("H' unavailable")?,
        );
        let rep = height_report(hs, ht)?;
        let want = s.catalog.heights.ok_or("catalog has no heights")?;
        let ok = rep.holds && rep.source == want.source && rep.target == want.target;
        let summary = format!(
            "{}: {} <= {} (expected {} < {})",
            rep.label, rep.source, rep.target, want.source, want.target
        );
        Ok(CheckRecord::new("heights", Status::from_bool(ok), summary).with_detail(&rep))
    }));
    out.push(timed("contraction p_beta", t, || {
        let map = map.as_ref().map_err(error_text)?;
        let three = GroupElement::quad_int(3, 0);
        let cap = if within_bound(b, &three)? {
            b.clone()
        } else {
            three
        };
        let phi_s = enumerate_semigroup(src, &cap)?;
        let mut bad = Vec::new();
        for beta in &phi_s.elements {
            let rep = contraction_check_pbeta(map, src, tgt, beta, n)?;
            if !rep.equal {
                bad.push(beta.to_string());
            }
        }
        let summary = format!(
            "{} of {} values up to {cap} contract",
            phi_s.elements.len() - bad.len(),
            phi_s.elements.len()
        );
        Ok(CheckRecord::new(
            "contraction p_beta",
            Status::from_bool(bad.is_empty()),
            summary,
        )
        .with_witnesses(bad))
    }));
    out.push(timed("extension values", t, || {
        use rand::SeedableRng;
        let map = map.as_ref().map_err(error_text)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s.seed ^ 0x29);
        let mut bad = Vec::new();
        for _ in 0..o.samples {
            let f = random_source_poly(&src.vars, &mut rng, 3);
            if !value_compatible(map, src, tgt, &f)? {
                bad.push(f.to_text());
            }
        }
        let summary = format!(
            "{} of {} sampled values preserved by the map",
            o.samples - bad.len(),
            o.samples
        );
        Ok(CheckRecord::new(
            "extension values",
            Status::from_bool(bad.is_empty()),
            summary,
        )
        .with_witnesses(bad))
    }));
    out.push(timed("injective", t, || {
        let map = map.as_ref().map_err(error_text)?;
        let ok = map.injective_at(&src.jet_space(n))?;
        Ok(CheckRecord::new(
            "injective",
            Status::from_bool(ok),
            format!("no kernel on polynomials of degree < {n}"),
        ))
    }));
    out.push(timed("graded iso", t, || {
        let ht = ht.as_ref().ok_or("H' unavailable")?;
        graded_check(tgt, phi.as_ref().map_err(error_text)?, &ht.subspace, n)
    }));
    out
}

fn nu_hat_check(s: &Scenario, r: &ValuedRing, n: u32) -> CheckResult {
    let rank3 = |i: usize| {
        let mut e = vec![0; 3];
        e[i] = 1;
        GroupElement::lex(&e)
    };
    let spec = ValuationSpec::CompletionExtension {
        vars: r.vars.clone(),
        z: 0,
        y: 1,
        rewrite: (1..n as usize).map(|j| r.c(j)).collect(),
        weights: vec![rank3(0), rank3(1), rank3(2)],
    };
    let space = r.jet_space(n);
    let mut bad = Vec::new();
    for e in &s.catalog.nu_hat {
        let jet = Jet::from_poly(&space, &r.element(&e.element, n)?)?;
        let got = spec.value_nu_hat(&jet)?;
        let want = ValueResult::Finite(GroupElement::parse(&e.value)?);
        if got != want {
            bad.push(format!("{}: got {got}, expected {want}", e.element));
        }
    }
    let total = s.catalog.nu_hat.len();
    Ok(CheckRecord::new(
        "nu_hat",
        Status::from_bool(bad.is_empty()),
        format!(
            "{} of {total} extension values reproduced",
            total - bad.len()
        ),
    )
    .with_witnesses(bad))
}

/// Candidate even ideals from the catalog, each checked against its odd
/// ideal; returns the records and the candidate subspaces by level.
fn even_checks(
    s: &Scenario,
    r: &ValuedRing,
    odd: &[Option<JetSubspace>],
    o: &RunOptions,
) -> (Vec<CheckRecord>, Vec<Option<JetSubspace>>) {
    let n = s.truncation;
    let mut recs = Vec::new();
    let mut subs = vec![None; odd.len()];
    for c in &s.catalog.candidates {
        let name = format!("even H_{}", 2 * c.level);
        let rec = timed(&name, o.timings, || {
            let odd = odd
                .get(c.level)
                .and_then(|x| x.as_ref())
                .ok_or("odd ideal unavailable")?;
            let gens = elements(r, &c.generators, n)?;
            let cand = IdealPresentation::truncated(&format!("H_{}", 2 * c.level), gens.clone(), n);
            let alts: Vec<IdealPresentation> = c
                .alternatives
                .iter()
                .map(|a| {
                    Ok(IdealPresentation::truncated(
                        "alternative",
                        elements(r, a, n)?,
                        n,
                    ))
                })
                .collect::<Result<_, ScenarioError>>()?;
            let mut distinguished = gens.clone();
            for a in &alts {
                distinguished.extend(a.generators.iter().cloned());
            }
            let rep = verify_even_implicit(
                r,
                c.level,
                &cand,
                &alts,
                odd,
                &distinguished,
                o.samples,
                s.seed,
            )?;
            subs[c.level] = Some(ideal_to_subspace(&cand, odd.space())?);
            let summary = format!(
                "({}) contains P_{}: {}, inside H_{}: {}, {}, {} alternatives strictly between",
                texts(&gens).join(", "),
                c.level,
                rep.contains_prime_ideal,
                2 * c.level + 1,
                rep.inside_odd_ideal,
                probe_summary(&rep.probe),
                rep.alternatives
                    .iter()
                    .filter(|a| a.strictly_between)
                    .count()
            );
            Ok(
                CheckRecord::new(name.clone(), Status::from_bool(rep.pass), summary)
                    .with_detail(&rep),
            )
        });
        recs.push(rec);
    }
    (recs, subs)
}

fn chain_check(pieces: &[(String, Option<JetSubspace>)]) -> CheckResult {
    let mut ok = true;
    let mut names = Vec::new();
    for w in pieces.windows(2) {
        let a = w[0]
            .1
            .as_ref()
            .ok_or_else(|| format!("{} unavailable", w[0].0))?;
        let b = w[1]
            .1
            .as_ref()
            .ok_or_else(|| format!("{} unavailable", w[1].0))?;
        ok &= b.contains(a)?;
    }
    for (n, _) in pieces {
        names.push(n.clone());
    }
    Ok(CheckRecord::new(
        "chain",
        Status::from_bool(ok),
        names.join(" ⊆ "),
    ))
}

fn example41(s: &Scenario, o: &RunOptions) -> Vec<CheckRecord> {
    let (r, n, b, t) = (s.primary(), s.truncation, &s.value_bound, o.timings);
    let mut out = vec![
        timed("values", t, || values_check(s)),
        timed("nu_hat", t, || nu_hat_check(s, r, n)),
        timed("semigroup R", t, || semigroup_check(r, b)),
    ];
    let phi = enumerate_semigroup(r, b);
    out.push(timed("p_beta R", t, || {
        p_beta_check(r, phi.as_ref().map_err(error_text)?, n)
    }));
    let mut odd: Vec<Option<JetSubspace>> = vec![None, None];
    for (level, slot) in odd.iter_mut().enumerate() {
        let name = format!("implicit H_{}", 2 * level + 1);
        out.push(timed(&name, t, || {
            let res = compute_h(r, IsolatedLevel(level), n, Some(b))?;
            let rec = implicit_check(&name, r, &res, expected_implicit(s, "R", level), n)?;
            *slot = Some(res.subspace.clone());
            Ok(rec)
        }));
    }
    let (recs, even) = even_checks(s, r, &odd, o);
    out.extend(recs);
    out.push(timed("chain", t, || {
        chain_check(&[
            ("H_0".into(), even[0].clone()),
            ("H_1".into(), odd[0].clone()),
            ("H_2".into(), even[1].clone()),
            ("H_3".into(), odd[1].clone()),
        ])
    }));
    out.push(timed("graded iso", t, || {
        let h = odd[0].as_ref().ok_or("H_1 unavailable")?;
        graded_check(r, phi.as_ref().map_err(error_text)?, h, n)
    }));
    out
}

fn example42(s: &Scenario, o: &RunOptions) -> Vec<CheckRecord> {
    let (r, n, b, t) = (s.primary(), s.truncation, &s.value_bound, o.timings);
    let f = r.branch_factor(n, true);
    let g = r.branch_factor(n, false);
    let mut out = vec![timed("branch coefficients", t, || {
        let mut bad = Vec::new();
        for e in &s.catalog.branch_coefficients {
            let got = &r.coefficients[e.index - 2];
            let want = crate::rational::parse_q(&e.value).ok_or("bad rational in catalog")?;
            if *got != want {
                bad.push(format!(
                    "a_{}: got {}, expected {}",
                    e.index,
                    crate::rational::fmt_q(got),
                    e.value
                ));
            }
        }
        let total = s.catalog.branch_coefficients.len();
        Ok(CheckRecord::new(
            "branch coefficients",
            Status::from_bool(bad.is_empty()),
            format!("{} of {total} reproduced", total - bad.len()),
        )
        .with_witnesses(bad))
    })];
    out.push(timed("f*g vanishes", t, || {
        let space = r.jet_space(n);
        let prod = Jet::from_poly(&space, &f)?.mul(&Jet::from_poly(&space, &g)?)?;
        Ok(CheckRecord::new(
            "f*g vanishes",
            Status::from_bool(prod.is_zero()),
            format!("f_N g_N = 0 in the curve jets at N = {n}"),
        ))
    }));
    out.push(timed("values", t, || values_check(s)));
    out.push(timed("semigroup R", t, || semigroup_check(r, b)));
    let phi = enumerate_semigroup(r, b);
    out.push(timed("p_beta R", t, || {
        p_beta_check(r, phi.as_ref().map_err(error_text)?, n)
    }));
    let mut naive = None;
    let mut h3 = None;
    out.push(timed("implicit H*", t, || {
        let res = compute_h(r, IsolatedLevel(0), n, Some(b))?;
        let rec = implicit_check("implicit H*", r, &res, expected_implicit(s, "R", 0), n)?;
        naive = Some(res.subspace.clone());
        Ok(rec)
    }));
    out.push(timed("primality H*", t, || {
        let h = naive.as_ref().ok_or("H* unavailable")?;
        let p = primality_probe(h, &[f.clone(), g.clone()], o.samples, s.seed)?;
        let ok = p
            == PrimalityProbe::NotPrime {
                x: f.clone(),
                y: g.clone(),
            };
        Ok(
            CheckRecord::new("primality H*", Status::from_bool(ok), probe_summary(&p))
                .with_detail(&p),
        )
    }));
    out.push(timed("consistency H_1", t, || {
        let h = naive.as_ref().ok_or("H* unavailable")?;
        let rep = consistency_h1_example42(r, n, h, o.samples, s.seed)?;
        let summary = format!(
            "(f) {}; {} values agree, {} skipped; contains H*: {}",
            probe_summary(&rep.probe),
            rep.checked,
            rep.skipped,
            rep.contains_naive
        );
        Ok(
            CheckRecord::new("consistency H_1", Status::from_bool(rep.pass), summary)
                .with_witnesses(rep.mismatch.iter().cloned().collect())
                .with_detail(&rep),
        )
    }));
    out.push(timed("implicit H_3", t, || {
        let res = compute_h(r, IsolatedLevel(1), n, Some(b))?;
        let rec = implicit_check("implicit H_3", r, &res, expected_implicit(s, "R", 1), n)?;
        h3 = Some(res.subspace.clone());
        Ok(rec)
    }));
    let h1 = s
        .catalog
        .odd_candidates
        .iter()
        .find(|c| c.level == 0)
        .and_then(|c| elements(r, &c.generators, n).ok())
        .and_then(|gens| {
            ideal_to_subspace(
                &IdealPresentation::truncated("H_1", gens, n),
                &r.jet_space(n),
            )
            .ok()
        });
    let (recs, even) = even_checks(s, r, &[h1.clone(), h3.clone()], o);
    out.extend(recs);
    out.push(timed("chain", t, || {
        chain_check(&[
            ("H*".into(), naive.clone()),
            ("H_0".into(), even[0].clone()),
            ("H_1".into(), h1.clone()),
            ("H_2".into(), even[1].clone()),
            ("H_3".into(), h3.clone()),
        ])
    }));
    out.push(CheckRecord::new(
        "graded iso",
        Status::Unknown,
        "no monomial value oracle for the composite valuation",
    ));
    out
}

pub fn run_scenario(name: ScenarioName, o: &RunOptions) -> Result<Report, ScenarioError> {
    let s = Scenario::new(name, &o.config)?;
    let checks = match name {
        ScenarioName::Example22 => example22(&s, o),
        ScenarioName::Example29 => example29(&s, o),
        ScenarioName::Example41 => example41(&s, o),
        ScenarioName::Example42 => example42(&s, o),
    };
    let config = json!({
        "scenario": name.as_str(),
        "truncation": s.truncation,
        "value_bound": s.value_bound.to_string(),
        "max_precision": s.max_precision,
        "seed": s.seed,
        "samples": o.samples,
    });
    Ok(Report::new(
        "scenario",
        name.as_str(),
        s.seed,
        config,
        checks,
    ))
}
