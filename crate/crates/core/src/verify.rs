//! Matrix realization of parameter triples, commutator square roots and
//! numerical certification of presentations and geometric constants.
//!
//! The normal form puts f upper-triangular with diagonal (e^{iπ/n},
//! e^{−iπ/n}) and unit upper-right entry, and g lower-triangular with
//! real diagonal (ν, ν⁻¹), ν + ν⁻¹ = √(β′+4). Expanding tr(fgf⁻¹g⁻¹)
//! symbolically gives the closed form γ(c) = c² + c·(a − a⁻¹)(ν − ν⁻¹)
//! with a = e^{iπ/n}, a quadratic whose roots realize the target γ; the
//! two roots mark (f,g) and (f,g⁻¹) and either is acceptable.

use num_complex::Complex64;
use std::fmt;

use crate::algebra::{
    classify_element, params_of_pair, axis_regime, ElementClass, MoebiusElement, ParameterTriple,
};
use crate::classifier::{Family, FamilyMatch};
use crate::config::Config;
use crate::indices::{ExtIndex, UPoint};
use crate::presentations::{
    generator_words, presentation_of, Fg, FgWord, PresentationInstance, RelExp,
};

type C = Complex64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    GammaZero,
    NotPrimitiveElliptic,
    NotHyperbolic,
    /// Neither square-root class satisfies (hg)² = ±1: a realization or
    /// classification bug upstream.
    NoAdmissibleRoot,
    /// A word needs an exponent parity the match does not provide.
    WordParity(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::GammaZero => write!(f, "gamma = 0 is elementary"),
            VerifyError::NotPrimitiveElliptic => {
                write!(f, "beta is not primitive elliptic of order >= 3")
            }
            VerifyError::NotHyperbolic => write!(f, "beta' does not give a hyperbolic generator"),
            VerifyError::NoAdmissibleRoot => write!(f, "no admissible commutator square root"),
            VerifyError::WordParity(msg) => write!(f, "word parity mismatch: {msg}"),
        }
    }
}

impl std::error::Error for VerifyError {}

/// A realized pair of matrices achieving a target triple.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedPair {
    pub f: MoebiusElement,
    pub g: MoebiusElement,
    pub achieved: ParameterTriple,
    /// |β − β̂|, |β′ − β̂′|, |γ − γ̂|.
    pub residuals: [f64; 3],
}

/// Build the normal-form pair for a triple with γ ≠ 0, β = −4sin²(π/n)
/// (n ≥ 3) and β′ > 0.
pub fn realize(triple: &ParameterTriple, cfg: &Config) -> Result<RealizedPair, VerifyError> {
    if triple.gamma == 0.0 {
        return Err(VerifyError::GammaZero);
    }
    let n = match classify_element(triple.beta, cfg) {
        ElementClass::Elliptic { order, rotation: 1 } if order >= 3 => order,
        _ => return Err(VerifyError::NotPrimitiveElliptic),
    };
    if triple.beta_prime <= 0.0 {
        return Err(VerifyError::NotHyperbolic);
    }

    let a = C::from_polar(1.0, std::f64::consts::PI / n as f64);
    let s = (triple.beta_prime + 4.0).sqrt();
    let nu = (s + (s * s - 4.0).sqrt()) / 2.0;

    // c from the quadratic c^2 + B c - gamma = 0, B = (a - 1/a)(nu - 1/nu).
    let b_coef = (a - a.inv()) * (nu - 1.0 / nu);
    let disc = (b_coef * b_coef + 4.0 * triple.gamma).sqrt();
    let c = (-b_coef + disc) / 2.0;

    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let f = MoebiusElement { a, b: one, c: zero, d: a.inv() };
    let g = MoebiusElement {
        a: C::new(nu, 0.0),
        b: zero,
        c,
        d: C::new(1.0 / nu, 0.0),
    };

    let achieved = params_of_pair(&f, &g, cfg).expect("normal form is non-degenerate");
    let residuals = [
        (achieved.triple.beta - triple.beta).abs(),
        (achieved.triple.beta_prime - triple.beta_prime).abs(),
        (achieved.triple.gamma - triple.gamma).abs(),
    ];
    debug_assert!(
        axis_regime(&achieved.triple) == axis_regime(triple)
            || residuals.iter().any(|&r| r > cfg.eps_realize)
    );
    Ok(RealizedPair { f, g, achieved: achieved.triple, residuals })
}

/// One certified relator or identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CertEntry {
    pub label: String,
    pub residual: f64,
    pub pass: bool,
}

/// Batch of residual checks; passes only if every entry does. Uncovered
/// relators are listed in the notes and make the certificate partial,
/// not failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub entries: Vec<CertEntry>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl Certificate {
    fn from_entries(entries: Vec<CertEntry>, notes: Vec<String>) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        Certificate { entries, notes, pass }
    }
}

/// The two square-root classes of K in the unit-determinant lift:
/// (K+I)/√(tr K+2) squares to K and (−K+I)/√(−tr K+2) squares to −K.
fn sqrt_classes(k: &MoebiusElement) -> Vec<MoebiusElement> {
    let mut out = Vec::new();
    let id = MoebiusElement::identity();
    let t = k.trace();
    for sign in [1.0, -1.0] {
        let rad = t * sign + 2.0;
        if rad.norm() > 1e-14 {
            let s = rad.sqrt();
            let num = MoebiusElement {
                a: k.a * sign + id.a,
                b: k.b * sign,
                c: k.c * sign,
                d: k.d * sign + id.d,
            };
            out.push(MoebiusElement {
                a: num.a / s,
                b: num.b / s,
                c: num.c / s,
                d: num.d / s,
            });
        }
    }
    out
}

/// The square root h of [f,g] with h² = [f,g] and (hg)² = 1, both up to
/// sign in the unit-determinant lift.
pub fn sqrt_commutator(pair: &RealizedPair, cfg: &Config) -> Result<MoebiusElement, VerifyError> {
    let k = pair.f.commutator(&pair.g);
    let id = MoebiusElement::identity();
    sqrt_classes(&k)
        .into_iter()
        .find(|h| {
            let hg = h.mul(&pair.g);
            h.mul(h).dist_up_to_sign(&k) < cfg.eps_cert
                && hg.mul(&hg).dist_up_to_sign(&id) < cfg.eps_cert
        })
        .ok_or(VerifyError::NoAdmissibleRoot)
}

/// Certify the square-root theorem on a disjoint-axes match: h² = ±[f,g],
/// (hg)² = ±1, and the element type of h agrees with the family.
///
/// For D1, γ = −4cosh²u makes t(u) the type of h directly (order p,
/// parabolic, or translation 2d). For D2 and D3, γ is pinned by n and h
/// is the square of a primitive elliptic of order n resp. 5, so its trace
/// is 2|cos(2π/n)| resp. 2|cos(2π/5)|; there t(u) parametrizes β′ instead.
pub fn certify_sqrt(
    pair: &RealizedPair,
    m: &FamilyMatch,
    cfg: &Config,
) -> Result<Certificate, VerifyError> {
    let h = sqrt_commutator(pair, cfg)?;
    let k = pair.f.commutator(&pair.g);
    let id = MoebiusElement::identity();
    let hg = h.mul(&pair.g);
    let mut entries = vec![
        entry("h^2 = [f,g]", h.mul(&h).dist_up_to_sign(&k), cfg.eps_cert),
        entry("(hg)^2 = 1", hg.mul(&hg).dist_up_to_sign(&id), cfg.eps_cert),
    ];
    let tr = h.trace();
    entries.push(entry("tr h real", tr.im.abs(), cfg.eps_cert));
    let abs_tr = tr.norm();
    let type_slot = match m.family {
        Family::D1 => m.u,
        Family::D2 => Some(UPoint::Angle(2)), // placeholder replaced below
        Family::D3 => Some(UPoint::Angle(2)),
        _ => None,
    };
    match (m.family, type_slot) {
        (Family::D2, _) | (Family::D3, _) => {
            let order = if m.family == Family::D2 { m.n } else { 5 };
            let expect = 2.0 * (2.0 * std::f64::consts::PI / order as f64).cos().abs();
            entries.push(entry(
                &format!("|tr h| = 2|cos(2pi/{order})| (square of order-{order} elliptic)"),
                (abs_tr - expect).abs(),
                cfg.eps_cert,
            ));
        }
        (_, Some(UPoint::Angle(p))) => {
            let expect = 2.0 * (std::f64::consts::PI / p as f64).cos();
            entries.push(entry(
                &format!("|tr h| = 2cos(pi/{p})"),
                (abs_tr - expect).abs(),
                cfg.eps_cert,
            ));
        }
        (_, Some(UPoint::Zero)) => {
            entries.push(entry("|tr h| = 2 (parabolic)", (abs_tr - 2.0).abs(), cfg.eps_cert));
        }
        (_, Some(UPoint::Positive(d))) => {
            entries.push(entry(
                "|tr h| = 2cosh(d)",
                (abs_tr - 2.0 * d.cosh()).abs(),
                cfg.eps_cert,
            ));
        }
        (_, None) => {}
    }
    Ok(Certificate::from_entries(entries, Vec::new()))
}

fn entry(label: &str, residual: f64, eps: f64) -> CertEntry {
    CertEntry { label: label.to_string(), residual, pass: residual < eps }
}

/// Evaluate a word in f, g on the realized pair.
pub fn eval_fg_word(pair: &RealizedPair, word: &FgWord) -> MoebiusElement {
    let mut acc = MoebiusElement::identity();
    for &(letter, pow) in word {
        let base = match letter {
            Fg::F => &pair.f,
            Fg::G => &pair.g,
        };
        acc = acc.mul(&base.pow(pow));
    }
    acc.renormalize()
}

/// Substitute generator words into every relator of the presentation and
/// check that finite-exponent relators evaluate to ±identity. Relators
/// with exponent ∞ are certified as parabolic: |tr| = 2 and the matrix is
/// not ±identity. Relators whose letters lack words are listed as notes.
pub fn certify_presentation(
    pair: &RealizedPair,
    pres: &PresentationInstance,
    words: &crate::presentations::GeneratorWordTable,
    cfg: &Config,
) -> Certificate {
    let gens = pres.generators();
    let matrices: Vec<Option<MoebiusElement>> = words
        .words
        .iter()
        .map(|w| w.as_ref().map(|w| eval_fg_word(pair, w)))
        .collect();
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    if !words.total {
        let missing = words.missing(gens);
        if !missing.is_empty() {
            notes.push(format!(
                "no f,g-words for generator(s) {}: certificate is partial",
                missing.join(", ")
            ));
        }
    }
    for r in &pres.relators {
        let label = {
            let mut s = String::new();
            for &(gi, p) in &r.word {
                s.push_str(gens[gi]);
                if p != 1 {
                    s.push('^');
                    s.push_str(&p.to_string());
                }
            }
            match r.exponent {
                RelExp::One => s,
                RelExp::Idx(e) => format!("({s})^{e}"),
            }
        };
        if r.word.iter().any(|&(gi, _)| matrices[gi].is_none()) {
            notes.push(format!("relator {label} not covered"));
            continue;
        }
        let mut base = MoebiusElement::identity();
        for &(gi, p) in &r.word {
            base = base.mul(&matrices[gi].as_ref().unwrap().pow(p as i64));
        }
        base = base.renormalize();
        match r.exponent {
            RelExp::One => {
                entries.push(entry(&label, base.dist_to_identity(), cfg.eps_cert));
            }
            RelExp::Idx(ExtIndex::Finite(k)) => {
                let w = base.pow(k as i64);
                entries.push(entry(&label, w.dist_to_identity(), cfg.eps_cert));
            }
            RelExp::Idx(ExtIndex::Inf) => {
                // Two-sided test: parabolic trace and not the identity.
                let tr_res = (base.trace().norm() - 2.0).abs();
                let nondegenerate = base.dist_to_identity() > cfg.eps_cert;
                entries.push(CertEntry {
                    label: format!("{label} parabolic"),
                    residual: tr_res,
                    pass: tr_res < cfg.eps_cert && nondegenerate,
                });
            }
            RelExp::Idx(ExtIndex::InfBar) => {
                // Dropped at instantiation; nothing to certify.
            }
        }
    }
    Certificate::from_entries(entries, notes)
}

/// Expected |tr(gfg⁻¹f)| for an intersecting-axes family: the element
/// h = gfg⁻¹f is the rotation (or translation) about the folded axis, and
/// tr(gfg⁻¹f) = β − γ + 2 pins it to the printed family constant.
fn expected_abs_trace(m: &FamilyMatch) -> Option<(String, f64)> {
    use std::f64::consts::PI;
    let from_u = |u: &UPoint| match u {
        UPoint::Angle(p) => (
            format!("2|cos(2pi/{p})|"),
            2.0 * (2.0 * PI / *p as f64).cos().abs(),
        ),
        UPoint::Zero => ("2 (parabolic)".to_string(), 2.0),
        UPoint::Positive(d) => (format!("2cosh({})", 2.0 * d), 2.0 * (2.0 * d).cosh()),
    };
    let fin_m = |e: &ExtIndex| match e {
        ExtIndex::Finite(k) => Some(*k),
        _ => None,
    };
    match m.family {
        Family::P1 | Family::P2 | Family::P4 | Family::P5 => m.u.as_ref().map(from_u),
        Family::P6 => {
            let n = m.n as f64;
            Some((
                format!("2|cos(4pi/{})|", m.n),
                2.0 * (4.0 * PI / n).cos().abs(),
            ))
        }
        Family::P3 | Family::P9 | Family::P10 => {
            let k = fin_m(m.m.as_ref()?)?;
            Some((
                format!("2|cos(2pi/{k})|"),
                2.0 * (2.0 * PI / k as f64).cos().abs(),
            ))
        }
        Family::P11 => {
            // cosh d = 2cos^2(pi/m) - 1/2.
            let k = fin_m(m.m.as_ref()?)?;
            let cosh_d = 2.0 * (PI / k as f64).cos().powi(2) - 0.5;
            Some((format!("2(2cos^2(pi/{k}) - 1/2)"), 2.0 * cosh_d))
        }
        Family::P7 => Some(("2cos(pi/3)".to_string(), 1.0)),
        Family::P8 => {
            // cosh d = 2cos^2(pi/n).
            let cosh_d = 2.0 * (PI / m.n as f64).cos().powi(2);
            Some((format!("2*2cos^2(pi/{})", m.n), 2.0 * cosh_d))
        }
        Family::P12 => Some(("2(3+sqrt5)/4".to_string(), (3.0 + 5.0_f64.sqrt()) / 2.0)),
        Family::P13 | Family::P14 => {
            Some(("2cos(pi/5)".to_string(), (5.0_f64.sqrt() + 1.0) / 2.0))
        }
        Family::P15 | Family::P16 | Family::P17 => Some(("2cos(pi/2)".to_string(), 0.0)),
        Family::P18 => Some(("2cos(pi/3)".to_string(), 1.0)),
        Family::P19 => Some(("2(5+sqrt5)/4".to_string(), (5.0 + 5.0_f64.sqrt()) / 2.0)),
        Family::D1 | Family::D2 | Family::D3 => None,
    }
}

/// Certify the geometric constant of an intersecting-axes family:
/// |tr(gfg⁻¹f)| equals the rotation trace 2cos(2π/m') for finite folded
/// index, 2 for the parabolic case, or 2cosh d with the printed d.
pub fn certify_geometry(pair: &RealizedPair, m: &FamilyMatch, cfg: &Config) -> Certificate {
    let w = pair.g.mul(&pair.f).mul(&pair.g.inv()).mul(&pair.f);
    let tr = w.trace();
    let mut entries = vec![entry("tr(gfg^-1 f) real", tr.im.abs(), cfg.eps_cert)];
    let mut notes = Vec::new();
    match expected_abs_trace(m) {
        Some((label, expect)) => {
            entries.push(entry(
                &format!("|tr(gfg^-1 f)| = {label}"),
                (tr.norm() - expect).abs(),
                cfg.eps_cert,
            ));
        }
        None => notes.push(format!(
            "family {} has no intersecting-axes trace constant",
            m.family
        )),
    }
    Certificate::from_entries(entries, notes)
}

/// Realize a match produced by enumeration and certify its presentation.
pub fn certify_match(
    triple: &ParameterTriple,
    m: &FamilyMatch,
    cfg: &Config,
) -> Result<(RealizedPair, Certificate), VerifyError> {
    let pair = realize(triple, cfg)?;
    let pres = presentation_of(m, cfg)
        .map_err(|e| VerifyError::WordParity(e.to_string()))?;
    let words = generator_words(m, cfg)
        .map_err(|e| VerifyError::WordParity(e.to_string()))?;
    Ok((pair.clone(), certify_presentation(&pair, &pres, &words, cfg)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, default_spec, enumerate_family, Verdict};
    use std::f64::consts::PI;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn realize_hits_targets() {
        let cfg = cfg();
        for (b, bp, g) in [(-3.0, 1.0, -1.0), (-2.0, 3.0, 1.0), (-3.0, 11.0, -4.0)] {
            let t = ParameterTriple::new(b, bp, g);
            let pair = realize(&t, &cfg).unwrap();
            for r in pair.residuals {
                assert!(r < 1e-10, "residual {r} for {t:?}");
            }
        }
    }

    #[test]
    fn realize_rejects_bad_inputs() {
        let cfg = cfg();
        assert_eq!(
            realize(&ParameterTriple::new(-3.0, 1.0, 0.0), &cfg),
            Err(VerifyError::GammaZero)
        );
        assert_eq!(
            realize(&ParameterTriple::new(-4.0, 1.0, -1.0), &cfg),
            Err(VerifyError::NotPrimitiveElliptic)
        );
        assert_eq!(
            realize(&ParameterTriple::new(-3.0, -1.0, -1.0), &cfg),
            Err(VerifyError::NotHyperbolic)
        );
    }

    #[test]
    fn gamma_closed_form_matches_matrix_commutator() {
        // The quadratic gamma(c) = c^2 + c(a - 1/a)(nu - 1/nu) against a
        // direct matrix evaluation, on an arbitrary c.
        let cfg = cfg();
        let n = 5u32;
        let a = C::from_polar(1.0, PI / n as f64);
        let nu = 1.7f64;
        let c = C::new(0.3, -0.8);
        let f = MoebiusElement::new(a, C::new(1.0, 0.0), C::new(0.0, 0.0), a.inv(), &cfg).unwrap();
        let g = MoebiusElement::new(
            C::new(nu, 0.0),
            C::new(0.0, 0.0),
            c,
            C::new(1.0 / nu, 0.0),
            &cfg,
        )
        .unwrap();
        let gamma_matrix = f.commutator(&g).trace() - 2.0;
        let gamma_closed = c * c + c * (a - a.inv()) * (nu - 1.0 / nu);
        assert!((gamma_matrix - gamma_closed).norm() < 1e-12);
    }

    #[test]
    fn sqrt_commutator_types() {
        let cfg = cfg();
        // Elliptic of order 3: |tr h| = 2cos(pi/3) = 1.
        let pair = realize(&ParameterTriple::new(-3.0, 1.0, -1.0), &cfg).unwrap();
        let h = sqrt_commutator(&pair, &cfg).unwrap();
        assert!((h.trace().norm() - 1.0).abs() < 1e-9);

        // Parabolic: gamma = -4 gives |tr h| = 2.
        let pair = realize(&ParameterTriple::new(-3.0, 1.0, -4.0), &cfg).unwrap();
        let h = sqrt_commutator(&pair, &cfg).unwrap();
        assert!((h.trace().norm() - 2.0).abs() < 1e-9);

        // Hyperbolic: gamma = -4cosh^2(0.5) gives |tr h| = 2cosh(0.5).
        let gamma = -4.0 * 0.5f64.cosh().powi(2);
        let pair = realize(&ParameterTriple::new(-3.0, 1.0, gamma), &cfg).unwrap();
        let h = sqrt_commutator(&pair, &cfg).unwrap();
        assert!((h.trace().norm() - 2.0 * 0.5f64.cosh()).abs() < 1e-9);
    }

    #[test]
    fn realized_triples_reclassify() {
        let cfg = cfg();
        for fam in crate::classifier::ALL_FAMILIES {
            for (triple, expect) in enumerate_family(fam, &default_spec(fam), &cfg).unwrap() {
                let pair = realize(&triple, &cfg).unwrap();
                match classify(&pair.achieved, &cfg) {
                    Verdict::Discrete { matches } => {
                        let found = matches.iter().any(|m| {
                            m.family == fam
                                && m.t_u() == expect.t_u()
                                && m.t_v() == expect.t_v()
                                && m.m == expect.m
                        });
                        assert!(found, "{fam}: {triple:?} -> {matches:?}");
                    }
                    other => panic!("{fam}: realized triple gave {other:?}"),
                }
            }
        }
    }

    #[test]
    fn gt_certificate_example() {
        let cfg = cfg();
        let gamma = -4.0 * (PI / 8.0).cos().powi(2);
        let triple = ParameterTriple::new(-3.0, 1.0, gamma);
        let m = match classify(&triple, &cfg) {
            Verdict::Discrete { matches } => matches[0].clone(),
            other => panic!("{other:?}"),
        };
        let (_, cert) = certify_match(&triple, &m, &cfg).unwrap();
        assert!(cert.pass, "{cert:?}");
        assert!(cert.entries.iter().all(|e| e.residual < 1e-8));
    }

    #[test]
    fn p6_certificate_is_partial_but_passing() {
        let cfg = cfg();
        let rows = enumerate_family(Family::P6, &default_spec(Family::P6), &cfg).unwrap();
        let (triple, m) = &rows[0];
        let (_, cert) = certify_match(triple, m, &cfg).unwrap();
        assert!(cert.pass);
        assert!(!cert.notes.is_empty());
    }

    #[test]
    fn geometry_constants_p8_p12() {
        let cfg = cfg();
        let rows = enumerate_family(Family::P8, &default_spec(Family::P8), &cfg).unwrap();
        let (triple, m) = &rows[0]; // n = 5
        let pair = realize(triple, &cfg).unwrap();
        let cert = certify_geometry(&pair, m, &cfg);
        assert!(cert.pass, "{cert:?}");
        let w = pair.g.mul(&pair.f).mul(&pair.g.inv()).mul(&pair.f);
        let expect = 2.0 * (2.0 * (PI / 5.0).cos().powi(2));
        assert!((w.trace().norm() - expect).abs() < 1e-8);

        let rows = enumerate_family(Family::P12, &default_spec(Family::P12), &cfg).unwrap();
        let (triple, m) = &rows[0];
        let pair = realize(triple, &cfg).unwrap();
        assert!(certify_geometry(&pair, m, &cfg).pass);
    }
}
