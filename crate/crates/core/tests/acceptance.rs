//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::f64::consts::PI;
use std::time::Instant;

use kleinian_rp::algebra::ParameterTriple;
use kleinian_rp::classifier::{
    classify, default_spec, enumerate_family, EnumerationSpec, Family, FamilyMatch, IndexChoice,
    Verdict, ALL_FAMILIES,
};
use kleinian_rp::config::Config;
use kleinian_rp::geometry::{
    gram_of, hyperbolicity, named_tetrahedra, proof_identities, ProofIdentity, Realizability,
};
use kleinian_rp::orbifolds::orbifold_of;
use kleinian_rp::presentations::{generator_words, presentation_of};
use kleinian_rp::verify::{certify_geometry, certify_presentation, certify_sqrt, realize};

fn cfg() -> Config {
    Config::default()
}

fn fin(values: &[u32]) -> Vec<IndexChoice> {
    values.iter().map(|&p| IndexChoice::Finite(p)).collect()
}

fn with_ends(values: &[u32], d: f64) -> Vec<IndexChoice> {
    let mut out = fin(values);
    out.push(IndexChoice::Inf);
    out.push(IndexChoice::InfBar(d));
    out
}

fn classify_expecting(triple: &ParameterTriple, fam: Family, cfg: &Config) -> FamilyMatch {
    match classify(triple, cfg) {
        Verdict::Discrete { matches } => matches
            .into_iter()
            .find(|m| m.family == fam)
            .unwrap_or_else(|| panic!("{fam}: no match for {triple:?}")),
        other => panic!("{fam}: {triple:?} classified as {other:?}"),
    }
}

/// Criterion 1: for every family, enumerate admissible tuples (with inf
/// and inf_bar variants where permitted), classify each triple and
/// recover the same family and indices with residual < 1e-9, in < 5 s.
#[test]
fn criterion_01_table_roundtrip() {
    let cfg = cfg();
    let start = Instant::now();
    let mut total = 0usize;
    for fam in ALL_FAMILIES {
        let rows = enumerate_family(fam, &default_spec(fam), &cfg).unwrap();
        let parametric = !matches!(
            fam,
            Family::P12
                | Family::P13
                | Family::P14
                | Family::P15
                | Family::P16
                | Family::P17
                | Family::P18
                | Family::P19
        );
        if parametric {
            assert!(rows.len() >= 5, "{fam}: only {} tuples", rows.len());
        }
        for (triple, expect) in rows {
            let got = classify_expecting(&triple, fam, &cfg);
            assert_eq!(got.n, expect.n, "{fam}");
            assert_eq!(got.t_u(), expect.t_u(), "{fam}");
            assert_eq!(got.t_v(), expect.t_v(), "{fam}");
            assert_eq!(got.m, expect.m, "{fam}");
            assert!(got.residual < 1e-9, "{fam}: residual {}", got.residual);
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 01 (table round-trip, {total} tuples in {:.3}s): PASS",
        elapsed.as_secs_f64()
    );
}

/// Points with all indices finite, used for the perturbation control.
fn finite_index_points(cfg: &Config) -> Vec<(Family, ParameterTriple)> {
    let mut out = Vec::new();
    let mut add = |fam: Family, spec: EnumerationSpec| {
        for (t, _) in enumerate_family(fam, &spec, cfg).unwrap() {
            out.push((fam, t));
        }
    };
    add(
        Family::D1,
        EnumerationSpec {
            n: Some(vec![3]),
            u: Some(fin(&[3, 4, 5, 6, 7])),
            beta_prime: Some(vec![1.5]),
            ..Default::default()
        },
    );
    add(
        Family::D2,
        EnumerationSpec { n: Some(vec![5, 7]), u: Some(fin(&[4, 5])), ..Default::default() },
    );
    add(Family::D3, EnumerationSpec { u: Some(fin(&[3, 4, 5])), ..Default::default() });
    add(
        Family::P1,
        EnumerationSpec {
            n: Some(vec![4]),
            u: Some(fin(&[6, 8])),
            v: Some(fin(&[3, 4])),
            ..Default::default()
        },
    );
    add(
        Family::P2,
        EnumerationSpec {
            n: Some(vec![4]),
            u: Some(fin(&[5, 7])),
            v: Some(fin(&[3])),
            ..Default::default()
        },
    );
    add(Family::P3, EnumerationSpec { m: Some(vec![5, 7, 9]), ..Default::default() });
    add(
        Family::P4,
        EnumerationSpec {
            n: Some(vec![3]),
            u: Some(fin(&[8, 10])),
            v: Some(fin(&[2, 3])),
            ..Default::default()
        },
    );
    add(
        Family::P5,
        EnumerationSpec {
            n: Some(vec![3]),
            u: Some(fin(&[7, 9])),
            v: Some(fin(&[2, 3])),
            ..Default::default()
        },
    );
    add(Family::P7, EnumerationSpec { n: Some(vec![5, 7, 11]), ..Default::default() });
    add(Family::P8, EnumerationSpec { n: Some(vec![5, 7, 11]), ..Default::default() });
    add(Family::P9, EnumerationSpec { m: Some(vec![7, 9, 11]), ..Default::default() });
    add(Family::P10, EnumerationSpec { m: Some(vec![8, 10, 14]), ..Default::default() });
    add(Family::P11, EnumerationSpec { m: Some(vec![7, 9, 10]), ..Default::default() });
    for fam in [
        Family::P12,
        Family::P13,
        Family::P14,
        Family::P15,
        Family::P16,
        Family::P17,
        Family::P18,
    ] {
        add(fam, EnumerationSpec::default());
    }
    out
}

/// Criterion 2: perturbing gamma by 1e-3 at finite-index family points,
/// transverse to any continuum direction, is never discrete.
#[test]
fn criterion_02_negative_controls() {
    let cfg = cfg();
    let points = finite_index_points(&cfg);
    assert!(points.len() >= 50, "only {} control points", points.len());
    for (fam, triple) in &points {
        let perturbed =
            ParameterTriple::new(triple.beta, triple.beta_prime, triple.gamma + 1e-3);
        match classify(&perturbed, &cfg) {
            Verdict::NotDiscrete { .. } => {}
            other => panic!("{fam}: perturbed {triple:?} gave {other:?}"),
        }
    }
    println!(
        "criterion 02 (negative controls, {} perturbed points): PASS",
        points.len()
    );
}

/// Criterion 3: the exact triples P12-P19 classify with residual < 1e-10
/// and map to the presentations of the classification theorem.
#[test]
fn criterion_03_fixed_constant_rows() {
    let cfg = cfg();
    let expected = [
        (Family::P12, "H[2;2,3;5]"),
        (Family::P13, "H[2;2,3;5]"),
        (Family::P14, "Tet[4,5;3]"),
        (Family::P15, "H[2;2,3;5]"),
        (Family::P16, "Tet[3,3;5]"),
        (Family::P17, "H[2;2,5;3]"),
        (Family::P18, "H[2;2,5;3]"),
        (Family::P19, "H[2;2,3;5]"),
    ];
    for (fam, name) in expected {
        let rows = enumerate_family(fam, &EnumerationSpec::default(), &cfg).unwrap();
        let (triple, _) = &rows[0];
        let m = classify_expecting(triple, fam, &cfg);
        assert!(m.residual < 1e-10, "{fam}: residual {}", m.residual);
        let pres = presentation_of(&m, &cfg).unwrap();
        assert_eq!(pres.name_text(), name, "{fam}");
    }
    println!("criterion 03 (fixed-constant rows P12-P19): PASS");
}

/// Grid specs per presentation schema for the relator certificates.
fn certificate_grids() -> Vec<(&'static str, Family, EnumerationSpec)> {
    vec![
        (
            "GT",
            Family::D1,
            EnumerationSpec {
                n: Some(vec![3]),
                u: Some(with_ends(&[4, 6, 8], 0.4)),
                beta_prime: Some(vec![1.5]),
                ..Default::default()
            },
        ),
        (
            "Tet (odd branch)",
            Family::D1,
            EnumerationSpec {
                n: Some(vec![3]),
                u: Some(fin(&[3, 5, 7, 9, 11])),
                beta_prime: Some(vec![1.5]),
                ..Default::default()
            },
        ),
        (
            "PH",
            Family::P1,
            EnumerationSpec {
                n: Some(vec![4, 6]),
                u: Some(with_ends(&[6, 8], 0.3)),
                v: Some(fin(&[3, 5])),
                ..Default::default()
            },
        ),
        (
            "P",
            Family::P2,
            EnumerationSpec {
                n: Some(vec![4, 6]),
                u: Some(fin(&[5, 7])),
                v: Some(fin(&[3, 5])),
                ..Default::default()
            },
        ),
        (
            "S2",
            Family::P1,
            EnumerationSpec {
                n: Some(vec![4]),
                u: Some(with_ends(&[6, 8], 0.3)),
                v: Some(with_ends(&[4, 6], 0.35)),
                ..Default::default()
            },
        ),
        (
            "S3",
            Family::P4,
            EnumerationSpec {
                n: Some(vec![3, 5]),
                u: Some(with_ends(&[8, 10], 0.3)),
                v: Some(with_ends(&[2, 3], 0.4)),
                ..Default::default()
            },
        ),
        (
            "GTet2 (P5)",
            Family::P5,
            EnumerationSpec {
                n: Some(vec![3, 5]),
                u: Some(fin(&[7, 9])),
                v: Some(with_ends(&[2, 3], 0.4)),
                ..Default::default()
            },
        ),
        (
            "R",
            Family::P8,
            EnumerationSpec { n: Some(vec![5, 7, 11, 13, 17]), ..Default::default() },
        ),
    ]
}

/// Criterion 4: all finite-exponent relators of the schemas with total
/// word tables evaluate to +-identity within 1e-8 on realized matrices;
/// parabolic relators have |tr| = 2 and are not +-identity.
#[test]
fn criterion_04_relator_certificates() {
    let cfg = cfg();
    let mut count = 0usize;
    for (label, fam, spec) in certificate_grids() {
        let rows = enumerate_family(fam, &spec, &cfg).unwrap();
        assert!(rows.len() >= 5, "{label}: only {} grid points", rows.len());
        for (triple, m) in rows {
            let pair = realize(&triple, &cfg).unwrap();
            let pres = presentation_of(&m, &cfg).unwrap();
            let words = generator_words(&m, &cfg).unwrap();
            assert!(words.total, "{label}: table not total for {m:?}");
            let cert = certify_presentation(&pair, &pres, &words, &cfg);
            assert!(
                cert.pass && cert.notes.is_empty(),
                "{label}: {triple:?} -> {cert:?}"
            );
            for e in &cert.entries {
                assert!(e.residual < 1e-8, "{label}: {} residual {}", e.label, e.residual);
            }
            count += 1;
        }
    }
    println!("criterion 04 (relator certificates, {count} grid points): PASS");
}

/// Criterion 5: the commutator square root on disjoint-axes grid points:
/// h^2 = +-[f,g], (hg)^2 = +-1, and the type of h matches t(u).
#[test]
fn criterion_05_square_root_theorem() {
    let cfg = cfg();
    let mut specs = vec![(
        Family::D1,
        EnumerationSpec {
            n: Some(vec![3, 4, 5]),
            u: Some(with_ends(&[3, 4, 5, 6], 0.4)),
            beta_prime: Some(vec![1.5]),
            ..Default::default()
        },
    )];
    specs.push((Family::D2, default_spec(Family::D2)));
    specs.push((Family::D3, default_spec(Family::D3)));
    let mut count = 0usize;
    for (fam, spec) in specs {
        for (triple, m) in enumerate_family(fam, &spec, &cfg).unwrap() {
            let pair = realize(&triple, &cfg).unwrap();
            let cert = certify_sqrt(&pair, &m, &cfg).unwrap();
            assert!(cert.pass, "{fam}: {triple:?} -> {cert:?}");
            for e in &cert.entries {
                assert!(e.residual < 1e-8, "{fam}: {} residual {}", e.label, e.residual);
            }
            count += 1;
        }
    }
    assert!(count >= 30, "only {count} disjoint-axes points");
    println!("criterion 05 (commutator square root, {count} points): PASS");
}

/// Criterion 6: |tr(gfg^-1 f)| against the printed family constants.
#[test]
fn criterion_06_geometric_constants() {
    let cfg = cfg();
    let mut checks = 0usize;
    let mut check = |triple: &ParameterTriple, m: &FamilyMatch, expect_half: f64| {
        let pair = realize(triple, &cfg).unwrap();
        let cert = certify_geometry(&pair, m, &cfg);
        assert!(cert.pass, "{}: {cert:?}", m.family);
        let w = pair.g.mul(&pair.f).mul(&pair.g.inv()).mul(&pair.f);
        let got = w.trace().norm() / 2.0;
        assert!(
            (got - expect_half).abs() < 1e-8,
            "{}: |tr|/2 = {got}, expected {expect_half}",
            m.family
        );
        checks += 1;
    };

    // P8 for n in {5,7}: classifier-backed matches; n = 8 sits outside the
    // odd-n table block, so the row formulas and match are built directly.
    for n in [5u32, 7] {
        let spec = EnumerationSpec { n: Some(vec![n]), ..Default::default() };
        let (triple, _) = &enumerate_family(Family::P8, &spec, &cfg).unwrap()[0];
        let m = classify_expecting(triple, Family::P8, &cfg);
        check(triple, &m, 2.0 * (PI / n as f64).cos().powi(2));
    }
    {
        let n = 8u32;
        let beta = -4.0 * (PI / n as f64).sin().powi(2);
        let cos_n = (PI / n as f64).cos();
        let triple = ParameterTriple::new(
            beta,
            -6.0 * (2.0 * cos_n + beta + 2.0) / beta,
            2.0 * (beta + 3.0),
        );
        let m = FamilyMatch { family: Family::P8, n, u: None, v: None, m: None, residual: 0.0 };
        check(&triple, &m, 2.0 * cos_n * cos_n);
    }

    // P12 and P19: cosh d = (3+sqrt5)/4 and (5+sqrt5)/4.
    for (fam, expect) in [
        (Family::P12, (3.0 + 5.0_f64.sqrt()) / 4.0),
        (Family::P19, (5.0 + 5.0_f64.sqrt()) / 4.0),
    ] {
        let rows = enumerate_family(fam, &EnumerationSpec::default(), &cfg).unwrap();
        let (triple, _) = &rows[0];
        let m = classify_expecting(triple, fam, &cfg);
        check(triple, &m, expect);
    }

    // P11 for r in {7,9,11}: cosh d = 2cos^2(pi/r) - 1/2.
    for r in [7u32, 9, 11] {
        let spec = EnumerationSpec { m: Some(vec![r]), ..Default::default() };
        let (triple, _) = &enumerate_family(Family::P11, &spec, &cfg).unwrap()[0];
        let m = classify_expecting(triple, Family::P11, &cfg);
        check(triple, &m, 2.0 * (PI / r as f64).cos().powi(2) - 0.5);
    }

    // P1 and P2 finite-m samples: the folded axis is elliptic of rotation
    // 2pi/m with m = t(u)/2, so |tr|/2 = cos(pi/m) = cos(2pi/t(u)).
    for (fam, us) in [(Family::P1, vec![6u32, 8]), (Family::P2, vec![5, 7])] {
        for tu in us {
            let spec = EnumerationSpec {
                n: Some(vec![4]),
                u: Some(fin(&[tu])),
                v: Some(fin(&[3])),
                ..Default::default()
            };
            let (triple, _) = &enumerate_family(fam, &spec, &cfg).unwrap()[0];
            let m = classify_expecting(triple, fam, &cfg);
            check(triple, &m, (2.0 * PI / tu as f64).cos().abs());
        }
    }
    println!("criterion 06 (geometric trace constants, {checks} checks): PASS");
}

/// Criterion 7: every named tetrahedron schema has Gram signature (3,1).
#[test]
fn criterion_07_gram_signatures() {
    let cfg = cfg();
    let schemas = named_tetrahedra();
    for schema in &schemas {
        let g = gram_of(schema).unwrap();
        assert_eq!(
            hyperbolicity(&g, &cfg),
            Realizability::Hyperbolic,
            "{schema}"
        );
    }
    println!(
        "criterion 07 (Gram signatures, {} tetrahedra): PASS",
        schemas.len()
    );
}

/// Criterion 8: the two closed-form identities and the cosh^2 T chain
/// hold with residual < 1e-11 over 100-point grids.
#[test]
fn criterion_08_proof_identities() {
    for i in 0..100 {
        let d = i as f64 * 0.03;
        assert!(proof_identities(ProofIdentity::Eq1 { d }) < 1e-11, "eq1 at d={d}");
    }
    for p in 3..103u32 {
        assert!(proof_identities(ProofIdentity::Eq2 { p }) < 1e-11, "eq2 at p={p}");
    }
    for q in 4..104u32 {
        assert!(
            proof_identities(ProofIdentity::Cosh2T { n: 5, q }) < 1e-11,
            "cosh2T at q={q}"
        );
    }
    println!("criterion 08 (proof identities, 3 x 100-point grids): PASS");
}

/// Criterion 9: every emitted singular graph satisfies the four
/// structural rules and decodes completely, over the full grid.
#[test]
fn criterion_09_orbifold_rules() {
    let cfg = cfg();
    let mut count = 0usize;
    for fam in ALL_FAMILIES {
        for (_, m) in enumerate_family(fam, &default_spec(fam), &cfg).unwrap() {
            let pres = presentation_of(&m, &cfg).unwrap();
            let orb = orbifold_of(&pres);
            orb.graph.check_rules().unwrap_or_else(|e| panic!("{fam}: {e}"));
            assert_eq!(orb.vertex_decodings.len(), orb.graph.vertices.len());
            assert_eq!(orb.edge_decodings.len(), orb.graph.edges.len());
            count += 1;
        }
    }
    println!("criterion 09 (orbifold structural rules, {count} graphs): PASS");
}
