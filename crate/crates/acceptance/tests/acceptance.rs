//! End-to-end acceptance checks. Each test prints one `PASS` or `FAIL` line to
//! stderr (uncaptured, so it shows in ordinary `cargo test` output) and then
//! asserts the same condition.

use std::f64::consts::PI;
use std::io::Write;

use hexknot::predicates::predicate_class;
use hexknot::sampling::SampleStream;
use hexknot::{
    build_hexagon, classify, compare_bound, estimate_knotting_probability, estimate_with_repeats, extract_action_angle,
    joint_chirality_curl, lemma_filters, mc_region_volume, reverse, satisfies_l_plus, satisfies_negative_curl,
    satisfies_r_plus, shift, ActionAngleCoords, AngleTriple, EstimationReport, Hexagon, KnotClass, Mode, RegionSpec,
};

fn report(criterion: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    writeln!(err, "{verdict} criterion {criterion}: {detail}").unwrap();
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

#[test]
fn criterion_1_monte_carlo_reproduction() {
    let r = estimate_with_repeats(10_000_000, 1, Mode::Predicate, None, 10).unwrap();
    let (lo, hi) = (3.426005e-5 - 3.0 * 2.241511e-6, 3.426005e-5 + 3.0 * 2.241511e-6);
    let in_window = r.fraction_r_plus >= lo && r.fraction_r_plus <= hi;
    let std = r.repeats.as_ref().unwrap().std_r_plus;
    let ratio = std / 2.24e-6;
    let std_ok = (0.5..=2.0).contains(&ratio);
    report(
        "1",
        in_window && std_ok,
        &format!(
            "fraction_R_plus = {:.4e} (window [{lo:.4e}, {hi:.4e}]); std over 10 runs = {std:.3e} ({ratio:.2}x of 2.24e-6)",
            r.fraction_r_plus
        ),
    );
    assert!(in_window, "fraction_R_plus {} outside [{lo}, {hi}]", r.fraction_r_plus);
    assert!(std_ok, "repeat std {std} not within a factor 2 of 2.24e-6");
}

#[test]
fn criterion_2_volume_verification() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, region) in [
        RegionSpec::P6,
        RegionSpec::ObtuseD1,
        RegionSpec::TorusObtuseWindow,
        RegionSpec::TorusAcuteWindow,
    ]
    .into_iter()
    .enumerate()
    {
        let e = mc_region_volume(region, 10_000_000, 100 + i as u64).unwrap();
        let z = e.z_score();
        ok &= z.abs() < 4.0;
        parts.push(format!("{region} {:.6} vs {:.6} (z = {z:+.2})", e.estimate, e.analytic));
    }
    // the reference values themselves, computed here independently of the library
    let obtuse = 2.0 * (PI - 2.0) / 3.0;
    let refs = [
        (RegionSpec::P6.analytic_volume(), 4.0),
        (RegionSpec::ObtuseD1.analytic_volume(), obtuse),
        (
            RegionSpec::TorusObtuseWindow.analytic_volume() / (2.0 * PI).powi(3),
            1.0 / 192.0,
        ),
        (
            RegionSpec::TorusAcuteWindow.analytic_volume() / (2.0 * PI).powi(3),
            1.0 / 48.0,
        ),
    ];
    let refs_ok = refs.iter().all(|(a, b)| (a - b).abs() < 1e-12);
    report("2", ok && refs_ok, &parts.join("; "));
    assert!(refs_ok);
    assert!(ok);
}

#[test]
fn criterion_3_bound_arithmetic() {
    let bound = (14.0 - 3.0 * PI) / 192.0;
    let b = compare_bound(&estimate_knotting_probability(10_000_000, 1, Mode::Predicate, None).unwrap()).unwrap();
    let arithmetic = (b.upper_bound - bound).abs() < 1e-12 && (b.upper_bound - 0.023_829_281_454_326_147).abs() < 1e-12;
    let ordering = b.bound_below_one_over_42 == (bound < 1.0 / 42.0)
        && b.estimate_below_bound == Some(b.estimate.unwrap() < bound)
        && b.estimate_below_one_over_42 == Some(b.estimate.unwrap() < 1.0 / 42.0);
    let ci_upper = b.ci95_upper.unwrap();
    let below = ci_upper < bound;
    report(
        "3",
        arithmetic && ordering && below,
        &format!(
            "(14-3pi)/192 = {:.15}, 1/42 = {:.15}, bound < 1/42: {}; estimate {:.4e}, ci95 upper {ci_upper:.4e} < bound: {below}",
            b.upper_bound,
            b.one_over_42,
            b.bound_below_one_over_42,
            b.estimate.unwrap()
        ),
    );
    assert!(arithmetic && ordering && below);
}

fn class_predicate(aa: &ActionAngleCoords, class: KnotClass) -> bool {
    match class {
        KnotClass::RightTrefoilCurlPlus => satisfies_r_plus(aa).unwrap(),
        KnotClass::LeftTrefoilCurlPlus => satisfies_l_plus(aa).unwrap(),
        _ => satisfies_negative_curl(aa, class.handedness().unwrap()).unwrap(),
    }
}

#[test]
fn criterion_4_oracle_necessity() {
    let n = 1_000_000;
    let mut trefoils = 0u64;
    let mut predicate_fail = 0u64;
    let mut clause_fail = [0u64; 4];
    let mut names = [""; 4];
    let mut both = 0u64;
    let mut predicted = 0u64;
    for aa in SampleStream::new(n, 1) {
        let class = classify(&build_hexagon(&aa).unwrap());
        let guess = predicate_class(&aa).unwrap();
        if guess.is_some() {
            predicted += 1;
        }
        if !class.is_trefoil() {
            continue;
        }
        trefoils += 1;
        if guess == Some(class) {
            both += 1;
        }
        if !class_predicate(&aa, class) {
            predicate_fail += 1;
        }
        let filters = lemma_filters(&aa, class.invariant().unwrap()).unwrap();
        for (k, (name, ok)) in filters.clauses().into_iter().enumerate() {
            names[k] = name;
            if !ok {
                clause_fail[k] += 1;
            }
        }
    }
    let union = trefoils + predicted - both;
    let agreement = both as f64 / union as f64;
    let pass = predicate_fail == 0 && clause_fail.iter().all(|&c| c == 0);
    let clauses: Vec<String> = names.iter().zip(clause_fail).map(|(n, c)| format!("{n} {c}")).collect();
    report(
        "4",
        pass,
        &format!(
            "{trefoils} oracle trefoils in {n} samples; failures: predicate {predicate_fail}, {}; agreement rate {agreement:.4}",
            clauses.join(", ")
        ),
    );
    assert!(
        pass,
        "oracle trefoils failing a necessary condition: predicate {predicate_fail}, clauses {clause_fail:?}"
    );
}

#[test]
fn criterion_5_round_trip_and_construction() {
    let mut worst_round_trip = 0.0f64;
    let mut worst_edge = 0.0f64;
    let mut worst_planar = 0.0f64;
    for aa in SampleStream::new(10_000, 2) {
        let h = build_hexagon(&aa).unwrap();
        worst_edge = worst_edge.max(h.max_edge_error());
        let back = extract_action_angle(&h).unwrap();
        let (a, b) = (aa.to_array(), back.to_array());
        for i in 0..3 {
            worst_round_trip = worst_round_trip.max((a[i] - b[i]).abs());
            worst_round_trip = worst_round_trip.max(angle_gap(a[i + 3], b[i + 3]));
        }

        let flat = ActionAngleCoords::new(aa.diagonals, AngleTriple::new(PI, PI, PI));
        let p = build_hexagon(&flat).unwrap();
        worst_edge = worst_edge.max(p.max_edge_error());
        for v in p.vertices() {
            worst_planar = worst_planar.max(v.z.abs());
        }
    }
    let pass = worst_round_trip <= 1e-9 && worst_edge <= 1e-10 && worst_planar <= 1e-12;
    report(
        "5",
        pass,
        &format!("max round trip error {worst_round_trip:.2e}, max edge error {worst_edge:.2e}, max planar offset {worst_planar:.2e}"),
    );
    assert!(pass);
}

/// Trefoils are rare, so the invariance checks also visit every trefoil in a
/// longer run alongside the first 10⁴ samples.
fn symmetry_pool() -> Vec<Hexagon> {
    let mut pool: Vec<Hexagon> = SampleStream::new(10_000, 3)
        .map(|aa| build_hexagon(&aa).unwrap())
        .collect();
    for aa in SampleStream::new(2_000_000, 4) {
        let h = build_hexagon(&aa).unwrap();
        if classify(&h).is_trefoil() {
            pool.push(h);
        }
    }
    pool
}

#[test]
fn criterion_6_symmetry() {
    let pool = symmetry_pool();
    let mut checked = 0u64;
    let mut mirror_bad = 0u64;
    let mut group_bad = 0u64;
    let mut knotted = 0u64;
    for h in &pool {
        let Ok(j) = joint_chirality_curl(h) else { continue };
        checked += 1;
        if j.is_trefoil() {
            knotted += 1;
        }
        match joint_chirality_curl(&h.mirrored()) {
            Ok(m) if m.chirality == -j.chirality && m.curl_part == -j.curl_part => {}
            _ => mirror_bad += 1,
        }
        let s2 = joint_chirality_curl(&shift(&shift(h)));
        let rs = joint_chirality_curl(&reverse(&shift(h)));
        let s = joint_chirality_curl(&shift(h)).map(|x| x.chirality);
        let r = joint_chirality_curl(&reverse(h)).map(|x| x.chirality);
        if s2 != Ok(j) || rs != Ok(j) || s != Ok(j.chirality) || r != Ok(j.chirality) {
            group_bad += 1;
        }
    }

    let o = estimate_knotting_probability(10_000_000, 6, Mode::Oracle, None).unwrap();
    let usable = o.usable() as f64;
    let (p, q) = (
        o.fraction(KnotClass::RightTrefoilCurlPlus),
        o.fraction(KnotClass::LeftTrefoilCurlMinus),
    );
    let se = (p * (1.0 - p) / usable + q * (1.0 - q) / usable).sqrt();
    let balanced = (p - q).abs() <= 3.0 * se;

    let pass = checked >= 10_000 && mirror_bad == 0 && group_bad == 0 && balanced;
    report(
        "6",
        pass,
        &format!(
            "{checked} hexagons ({knotted} trefoils): mirror failures {mirror_bad}, s^2/rs/r/s failures {group_bad}; \
             (1,1) {p:.4e} vs (-1,-1) {q:.4e}, |diff| = {:.2} combined SE",
            (p - q).abs() / se
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_7_unknot_floor() {
    let o = estimate_knotting_probability(1_000_000, 7, Mode::Oracle, None).unwrap();
    let f = o.fraction(KnotClass::Unknot);
    report(
        "7",
        f >= 0.5,
        &format!("unknot fraction {f:.6} over {} usable samples", o.usable()),
    );
    assert!(f >= 0.5);
}

fn canonical(r: EstimationReport) -> String {
    r.without_timing().to_json().unwrap()
}

#[test]
fn criterion_8_determinism() {
    let mut pass = true;
    let mut parts = Vec::new();
    for mode in [Mode::Predicate, Mode::Oracle] {
        let runs: Vec<String> = [1, 4, 16]
            .into_iter()
            .map(|w| canonical(estimate_knotting_probability(2_000_000, 8, mode, Some(w)).unwrap()))
            .collect();
        let same = runs.iter().all(|r| r == &runs[0]);
        pass &= same;
        parts.push(format!("{mode} identical at 1/4/16 workers: {same}"));
    }
    report("8", pass, &parts.join("; "));
    assert!(pass);
}
