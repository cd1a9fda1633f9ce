//! The discreteness decision: match (β, β′, γ) against the three
//! disjoint-axes families and the nineteen intersecting-axes families.
//!
//! Disjoint axes (γ < 0):
//!   D1: γ = −4cosh²u, t(u) ≥ 3;
//!   D2: n ≥ 5 odd, γ = −(β+2)², β′ = 4(β+4)cosh²u − 4, t(u) ≥ 4;
//!   D3: β = −3, γ = (√5−3)/2, β′ = 2(7+3√5)cosh²u − 4, t(u) ≥ 3.
//!
//! Intersecting axes (0 < γ < −ββ′/4): rows P1–P19, split by the parity
//! of n. Parametric rows are tested by inverting their γ- and β′-equations
//! for cosh²u / cosh v and matching against 𝒰; semi-fixed rows recover an
//! integer m from γ; fixed rows are compared componentwise.
//!
//! Rows are not claimed mutually exclusive, so the verdict carries a list
//! of matches in row order.

use std::fmt;
use std::f64::consts::PI;

use crate::algebra::{classify_element, normalize_primitive, ElementClass, ParameterTriple};
use crate::config::Config;
use crate::indices::{match_cosh2, t_of, ExtIndex, Parity, UPoint};

/// Family identifiers, in row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    D1,
    D2,
    D3,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
    P13,
    P14,
    P15,
    P16,
    P17,
    P18,
    P19,
}

pub const ALL_FAMILIES: [Family; 22] = [
    Family::D1,
    Family::D2,
    Family::D3,
    Family::P1,
    Family::P2,
    Family::P3,
    Family::P4,
    Family::P5,
    Family::P6,
    Family::P7,
    Family::P8,
    Family::P9,
    Family::P10,
    Family::P11,
    Family::P12,
    Family::P13,
    Family::P14,
    Family::P15,
    Family::P16,
    Family::P17,
    Family::P18,
    Family::P19,
];

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.to_ascii_uppercase();
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.to_string() == up)
            .ok_or_else(|| format!("unknown family {s}"))
    }
}

/// A matched family row, with the recovered indices and the worst
/// mismatch over the row's defining equations.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMatch {
    pub family: Family,
    /// Order of the elliptic generator f.
    pub n: u32,
    pub u: Option<UPoint>,
    pub v: Option<UPoint>,
    /// Recovered integer of the semi-fixed rows P3, P9, P10, P11.
    pub m: Option<ExtIndex>,
    pub residual: f64,
}

impl FamilyMatch {
    pub fn t_u(&self) -> Option<ExtIndex> {
        self.u.map(t_of)
    }

    pub fn t_v(&self) -> Option<ExtIndex> {
        self.v.map(t_of)
    }

    /// Named index map as it appears in reports.
    pub fn indices(&self) -> Vec<(&'static str, ExtIndex)> {
        let mut out = Vec::new();
        if let Some(t) = self.t_u() {
            out.push(("t_u", t));
        }
        if let Some(t) = self.t_v() {
            out.push(("t_v", t));
        }
        if let Some(m) = self.m {
            out.push(("m", m));
        }
        out
    }
}

/// Outcome of the discreteness decision.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Discrete { matches: Vec<FamilyMatch> },
    NotDiscrete { nearest: Option<FamilyMatch>, reason: Option<String> },
    OutOfScope { reason: String },
}

impl Verdict {
    pub fn is_discrete(&self) -> bool {
        matches!(self, Verdict::Discrete { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumError {
    InvalidRange(String),
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::InvalidRange(msg) => write!(f, "invalid range: {msg}"),
        }
    }
}

impl std::error::Error for EnumError {}

fn beta_of_order(n: u32) -> f64 {
    -4.0 * (PI / n as f64).sin().powi(2)
}

/// S of the odd-n table header.
fn s_term(n: u32, beta: f64, gamma: f64) -> f64 {
    let c = (PI / n as f64).cos();
    -2.0 * ((gamma - beta).powi(2) * c + gamma * (gamma + beta)) / (gamma * beta)
}

/// T of the odd-n table header.
fn t_term(n: u32, beta: f64) -> f64 {
    let c = (PI / n as f64).cos();
    -2.0 * (beta + 2.0).powi(2) * c / (beta + 1.0)
        - 2.0 * (beta * beta + 6.0 * beta + 4.0) / beta
}

/// The nine fixed rows (β, γ, β′) of the table, P12 through P19.
pub fn fixed_row(family: Family) -> Option<(f64, f64, f64)> {
    let r5 = 5.0_f64.sqrt();
    match family {
        Family::P12 => Some((-3.0, (r5 + 1.0) / 2.0, r5)),
        Family::P13 => Some((-3.0, (r5 - 1.0) / 2.0, r5)),
        Family::P14 => Some((-3.0, (r5 - 1.0) / 2.0, r5 - 1.0)),
        Family::P15 => Some(((r5 - 5.0) / 2.0, (r5 - 1.0) / 2.0, r5)),
        Family::P16 => Some(((r5 - 5.0) / 2.0, (r5 - 1.0) / 2.0, (3.0 * r5 - 1.0) / 2.0)),
        Family::P17 => Some(((r5 - 5.0) / 2.0, (r5 - 1.0) / 2.0, 3.0 * (r5 + 1.0) / 2.0)),
        Family::P18 => Some(((r5 - 5.0) / 2.0, (r5 + 1.0) / 2.0, 3.0 * (r5 + 1.0) / 2.0)),
        Family::P19 => Some(((r5 - 5.0) / 2.0, r5 + 2.0, (5.0 * r5 + 9.0) / 2.0)),
        _ => None,
    }
}

/// 1/n + 1/t < 1/2, exactly, with 1/∞ = 1/∞̄ = 0.
fn side_condition(n: u32, t: ExtIndex) -> bool {
    match t {
        ExtIndex::Finite(p) => 2 * (n as u64 + p as u64) < n as u64 * p as u64,
        ExtIndex::Inf | ExtIndex::InfBar => n > 2,
    }
}

/// Recover an integer m from an estimate, with the same relative window
/// used for angle indices.
fn recover_integer(m_hat: f64, cfg: &Config) -> Option<u32> {
    if !m_hat.is_finite() || m_hat < 1.5 {
        return None;
    }
    let r = m_hat.round();
    ((m_hat - r).abs() < cfg.int_window * m_hat && r <= cfg.p_max as f64).then_some(r as u32)
}

/// m from γ = 2cos(2π/m) + offset.
fn m_from_gamma(gamma: f64, offset: f64, cfg: &Config) -> Option<u32> {
    let c = (gamma - offset) / 2.0;
    if c.abs() >= 1.0 {
        return None;
    }
    recover_integer(2.0 * PI / c.acos(), cfg)
}

struct Candidates {
    matches: Vec<FamilyMatch>,
    nearest: Option<FamilyMatch>,
    eps_match: f64,
    eps_report: f64,
}

impl Candidates {
    fn new(cfg: &Config) -> Self {
        Candidates {
            matches: Vec::new(),
            nearest: None,
            eps_match: cfg.eps_match,
            eps_report: cfg.eps_report,
        }
    }

    fn push(&mut self, m: FamilyMatch) {
        if m.residual < self.eps_match {
            self.matches.push(m);
        } else if m.residual < self.eps_report
            && self.nearest.as_ref().is_none_or(|n| m.residual < n.residual)
        {
            self.nearest = Some(m);
        }
    }

    fn into_verdict(self) -> Verdict {
        if self.matches.is_empty() {
            Verdict::NotDiscrete { nearest: self.nearest, reason: None }
        } else {
            Verdict::Discrete { matches: self.matches }
        }
    }
}

/// Decide discreteness of a normalized triple.
///
/// Non-primitive markings are renormalized internally (the operation is
/// idempotent), half-turns and out-of-window parameters report out of
/// scope, and irrational rotations are never discrete in this regime.
///
/// The window γ < −ββ′/4 is not applied before row matching: the row
/// P19 sits beyond it (its γ exceeds −ββ′/4 by exactly 3/4) yet belongs
/// to the classification, so γ > 0 inputs are matched first and only a
/// matchless out-of-window triple reports out of scope.
pub fn classify(triple: &ParameterTriple, cfg: &Config) -> Verdict {
    let (triple, n) = match prepare(triple, cfg) {
        Ok(pair) => pair,
        Err(v) => return v,
    };
    if triple.gamma < 0.0 {
        classify_disjoint_with(&triple, n, cfg)
    } else {
        let verdict = classify_intersecting_with(&triple, n, cfg);
        let in_window = triple.gamma < -triple.beta * triple.beta_prime / 4.0;
        match verdict {
            Verdict::NotDiscrete { .. } if !in_window => Verdict::OutOfScope {
                reason: "outside the truly-spatial coplanar regime".to_string(),
            },
            v => v,
        }
    }
}

/// Normalize and recover the elliptic order; errors become verdicts.
fn prepare(triple: &ParameterTriple, cfg: &Config) -> Result<(ParameterTriple, u32), Verdict> {
    // Scope gates first, so that elementary and degenerate inputs are
    // reported as such regardless of the rotation arithmetic of beta.
    if !(triple.beta > -4.0 && triple.beta < 0.0) {
        return Err(Verdict::OutOfScope {
            reason: format!(
                "beta = {} is not in (-4,0): f is not elliptic of order >= 3",
                triple.beta
            ),
        });
    }
    if triple.beta_prime <= 0.0 {
        return Err(Verdict::OutOfScope {
            reason: format!(
                "beta' = {} is not positive: g is not hyperbolic",
                triple.beta_prime
            ),
        });
    }
    if triple.gamma == 0.0 {
        return Err(Verdict::OutOfScope {
            reason: "elementary; f and g have a common fixed point".to_string(),
        });
    }
    match classify_element(triple.beta, cfg) {
        ElementClass::Elliptic { order: 2, .. } => Err(Verdict::OutOfScope {
            reason: "elliptic generator is a half-turn".to_string(),
        }),
        ElementClass::Elliptic { order, rotation: 1 } => Ok((triple.clone(), order)),
        ElementClass::Elliptic { order, .. } => {
            // Renormalizing multiplies gamma by beta0/beta > 0, so the
            // scope gates above still hold for the primitive marking.
            let normalized = normalize_primitive(triple, cfg).map_err(|e| Verdict::OutOfScope {
                reason: e.to_string(),
            })?;
            Ok((normalized, order))
        }
        ElementClass::InfiniteOrderElliptic => Err(Verdict::NotDiscrete {
            nearest: None,
            reason: Some("irrational rotation".to_string()),
        }),
        other => Err(Verdict::OutOfScope {
            reason: format!("elliptic generator expected, found {other}"),
        }),
    }
}

/// Theorem-2 families, γ < 0.
pub fn classify_disjoint(triple: &ParameterTriple, cfg: &Config) -> Verdict {
    match prepare(triple, cfg) {
        Ok((t, n)) => classify_disjoint_with(&t, n, cfg),
        Err(v) => v,
    }
}

fn classify_disjoint_with(triple: &ParameterTriple, n: u32, cfg: &Config) -> Verdict {
    debug_assert!(triple.gamma < 0.0);
    let mut out = Candidates::new(cfg);
    let (beta, bp, gamma) = (triple.beta, triple.beta_prime, triple.gamma);

    // D1: gamma = -4 cosh^2 u, t(u) >= 3.
    if let Ok(Some((u, _))) = match_cosh2(-gamma / 4.0, Parity::Any, ExtIndex::Finite(3), cfg) {
        out.push(FamilyMatch {
            family: Family::D1,
            n,
            u: Some(u),
            v: None,
            m: None,
            residual: (gamma + 4.0 * u.cosh2()).abs(),
        });
    }

    // D2: n >= 5 odd, gamma = -(beta+2)^2, beta' = 4(beta+4)cosh^2 u - 4.
    if n >= 5 && n % 2 == 1 {
        let g_res = (gamma + (beta + 2.0).powi(2)).abs();
        if g_res < cfg.eps_report {
            let w = (bp + 4.0) / (4.0 * (beta + 4.0));
            if let Ok(Some((u, _))) = match_cosh2(w, Parity::Any, ExtIndex::Finite(4), cfg) {
                let b_res = (bp - (4.0 * (beta + 4.0) * u.cosh2() - 4.0)).abs();
                out.push(FamilyMatch {
                    family: Family::D2,
                    n,
                    u: Some(u),
                    v: None,
                    m: None,
                    residual: g_res.max(b_res),
                });
            }
        }
    }

    // D3: beta = -3, gamma = (sqrt5-3)/2, beta' = 2(7+3 sqrt5)cosh^2 u - 4.
    if n == 3 {
        let r5 = 5.0_f64.sqrt();
        let g_res = (gamma - (r5 - 3.0) / 2.0).abs();
        if g_res < cfg.eps_report {
            let coef = 2.0 * (7.0 + 3.0 * r5);
            if let Ok(Some((u, _))) =
                match_cosh2((bp + 4.0) / coef, Parity::Any, ExtIndex::Finite(3), cfg)
            {
                let b_res = (bp - (coef * u.cosh2() - 4.0)).abs();
                out.push(FamilyMatch {
                    family: Family::D3,
                    n,
                    u: Some(u),
                    v: None,
                    m: None,
                    residual: g_res.max((beta + 3.0).abs()).max(b_res),
                });
            }
        }
    }

    out.into_verdict()
}

/// Table-1 families, 0 < γ < −ββ′/4.
pub fn classify_intersecting(triple: &ParameterTriple, cfg: &Config) -> Verdict {
    match prepare(triple, cfg) {
        Ok((t, n)) => classify_intersecting_with(&t, n, cfg),
        Err(v) => v,
    }
}

fn classify_intersecting_with(triple: &ParameterTriple, n: u32, cfg: &Config) -> Verdict {
    let mut out = Candidates::new(cfg);
    if n.is_multiple_of(2) {
        rows_even(triple, n, cfg, &mut out);
    } else {
        rows_odd(triple, n, cfg, &mut out);
    }
    out.into_verdict()
}

/// Match u against w = (γ−β)/4 under the row's parity and the side
/// condition 1/n + 1/t(u) < 1/2.
fn match_u(triple: &ParameterTriple, n: u32, parity: Parity, cfg: &Config) -> Option<UPoint> {
    let w = (triple.gamma - triple.beta) / 4.0;
    let (u, t) = match_cosh2(w, parity, ExtIndex::Finite(2), cfg).ok()??;
    side_condition(n, t).then_some(u)
}

fn rows_even(triple: &ParameterTriple, n: u32, cfg: &Config, out: &mut Candidates) {
    let (beta, bp, gamma) = (triple.beta, triple.beta_prime, triple.gamma);

    // P1: (t(u),2)=2; beta' = 4 cosh^2 v / gamma - 4 gamma / beta, t(v) >= 3.
    if let Some(u) = match_u(triple, n, Parity::Even, cfg) {
        let wv = gamma * (bp + 4.0 * gamma / beta) / 4.0;
        if let Ok(Some((v, _))) = match_cosh2(wv, Parity::Any, ExtIndex::Finite(3), cfg) {
            let g_res = (gamma - (4.0 * u.cosh2() + beta)).abs();
            let b_res = (bp - (4.0 * v.cosh2() / gamma - 4.0 * gamma / beta)).abs();
            out.push(FamilyMatch {
                family: Family::P1,
                n,
                u: Some(u),
                v: Some(v),
                m: None,
                residual: g_res.max(b_res),
            });
        }
    }

    // P2: (t(u),2)=1; beta' = 4(gamma-beta) cosh^2 v / gamma - 4 gamma / beta.
    if let Some(u) = match_u(triple, n, Parity::Odd, cfg) {
        let wv = gamma * (bp + 4.0 * gamma / beta) / (4.0 * (gamma - beta));
        if let Ok(Some((v, _))) = match_cosh2(wv, Parity::Any, ExtIndex::Finite(3), cfg) {
            let g_res = (gamma - (4.0 * u.cosh2() + beta)).abs();
            let b_res =
                (bp - (4.0 * (gamma - beta) * v.cosh2() / gamma - 4.0 * gamma / beta)).abs();
            out.push(FamilyMatch {
                family: Family::P2,
                n,
                u: Some(u),
                v: Some(v),
                m: None,
                residual: g_res.max(b_res),
            });
        }
    }

    // P3: beta = -2, gamma = 2cos(2pi/m), m >= 5 odd, beta' = gamma^2 + 4 gamma.
    if n == 4 {
        if let Some(m) = m_from_gamma(gamma, 0.0, cfg) {
            if m >= 5 && m % 2 == 1 {
                let g_res = (gamma - 2.0 * (2.0 * PI / m as f64).cos()).abs();
                let b_res = (bp - (gamma * gamma + 4.0 * gamma)).abs();
                out.push(FamilyMatch {
                    family: Family::P3,
                    n,
                    u: None,
                    v: None,
                    m: Some(ExtIndex::Finite(m)),
                    residual: g_res.max(b_res).max((beta + 2.0).abs()),
                });
            }
        }
    }
}

/// Match v from a recovered cosh v value (rows P4–P6 use cosh, not cosh²).
fn match_v_cosh(cosh_v: f64, cfg: &Config) -> Option<UPoint> {
    if cosh_v < -cfg.u_tol {
        return None;
    }
    let w = cosh_v.max(0.0).powi(2);
    match_cosh2(w, Parity::Any, ExtIndex::Finite(2), cfg)
        .ok()?
        .map(|(v, _)| v)
}

fn rows_odd(triple: &ParameterTriple, n: u32, cfg: &Config, out: &mut Candidates) {
    let (beta, bp, gamma) = (triple.beta, triple.beta_prime, triple.gamma);
    let cos_n = (PI / n as f64).cos();
    let s = s_term(n, beta, gamma);

    // P4: (t(u),2)=2; beta' = (2/gamma)(cosh v - cos(pi/n)) + S, t(v) >= 2.
    if let Some(u) = match_u(triple, n, Parity::Even, cfg) {
        if let Some(v) = match_v_cosh(gamma * (bp - s) / 2.0 + cos_n, cfg) {
            let g_res = (gamma - (4.0 * u.cosh2() + beta)).abs();
            let b_res = (bp - (2.0 / gamma * (v.cosh() - cos_n) + s)).abs();
            out.push(FamilyMatch {
                family: Family::P4,
                n,
                u: Some(u),
                v: Some(v),
                m: None,
                residual: g_res.max(b_res),
            });
        }
    }

    // P5: (t(u),2)=1; beta' = 2(gamma-beta) cosh v / gamma + S.
    if let Some(u) = match_u(triple, n, Parity::Odd, cfg) {
        if let Some(v) = match_v_cosh(gamma * (bp - s) / (2.0 * (gamma - beta)), cfg) {
            let g_res = (gamma - (4.0 * u.cosh2() + beta)).abs();
            let b_res = (bp - (2.0 * (gamma - beta) * v.cosh() / gamma + s)).abs();
            out.push(FamilyMatch {
                family: Family::P5,
                n,
                u: Some(u),
                v: Some(v),
                m: None,
                residual: g_res.max(b_res),
            });
        }
    }

    // P6: n >= 7, gamma = (beta+4)(beta+1),
    //     beta' = 2(beta+2)^2 cosh v / (beta+1) + T.
    if n >= 7 {
        let g_res = (gamma - (beta + 4.0) * (beta + 1.0)).abs();
        if g_res < cfg.eps_report {
            let t = t_term(n, beta);
            let coef = 2.0 * (beta + 2.0).powi(2) / (beta + 1.0);
            if let Some(v) = match_v_cosh((bp - t) / coef, cfg) {
                let b_res = (bp - (coef * v.cosh() + t)).abs();
                out.push(FamilyMatch {
                    family: Family::P6,
                    n,
                    u: None,
                    v: Some(v),
                    m: None,
                    residual: g_res.max(b_res),
                });
            }
        }
    }

    // P7 and P8: n >= 5, (n,3)=1, gamma and beta' pinned by n.
    if n >= 5 && !n.is_multiple_of(3) {
        let p7_b = 2.0 * ((beta - 3.0) * cos_n - 2.0 * beta - 3.0) / beta;
        let res7 = (gamma - (beta + 3.0)).abs().max((bp - p7_b).abs());
        out.push(FamilyMatch {
            family: Family::P7,
            n,
            u: None,
            v: None,
            m: None,
            residual: res7,
        });

        let p8_b = -6.0 * (2.0 * cos_n + beta + 2.0) / beta;
        let res8 = (gamma - 2.0 * (beta + 3.0)).abs().max((bp - p8_b).abs());
        out.push(FamilyMatch {
            family: Family::P8,
            n,
            u: None,
            v: None,
            m: None,
            residual: res8,
        });
    }

    if n == 3 {
        // P9: gamma = 2cos(2pi/m) - 1, m >= 7 odd, beta' = 2(g^2+2g+2)/g.
        if let Some(m) = m_from_gamma(gamma, -1.0, cfg) {
            if m >= 7 && m % 2 == 1 {
                let g_res = (gamma - (2.0 * (2.0 * PI / m as f64).cos() - 1.0)).abs();
                let b_res = (bp - 2.0 * (gamma * gamma + 2.0 * gamma + 2.0) / gamma).abs();
                out.push(FamilyMatch {
                    family: Family::P9,
                    n,
                    u: None,
                    v: None,
                    m: Some(ExtIndex::Finite(m)),
                    residual: g_res.max(b_res),
                });
            }
            // P10: same gamma form, m >= 8, (m,6)=2, beta' = gamma^2+4gamma.
            if m >= 8 && m % 2 == 0 && m % 3 != 0 {
                let g_res = (gamma - (2.0 * (2.0 * PI / m as f64).cos() - 1.0)).abs();
                let b_res = (bp - (gamma * gamma + 4.0 * gamma)).abs();
                out.push(FamilyMatch {
                    family: Family::P10,
                    n,
                    u: None,
                    v: None,
                    m: Some(ExtIndex::Finite(m)),
                    residual: g_res.max(b_res),
                });
            }
        }
        // P11: gamma = 2cos(2pi/m), m >= 7, (m,4) <= 2, beta' = 2 gamma.
        if let Some(m) = m_from_gamma(gamma, 0.0, cfg) {
            if m >= 7 && m % 4 != 0 {
                let g_res = (gamma - 2.0 * (2.0 * PI / m as f64).cos()).abs();
                let b_res = (bp - 2.0 * gamma).abs();
                out.push(FamilyMatch {
                    family: Family::P11,
                    n,
                    u: None,
                    v: None,
                    m: Some(ExtIndex::Finite(m)),
                    residual: g_res.max(b_res),
                });
            }
        }
    }

    // Fixed rows P12-P19.
    for fam in [
        Family::P12,
        Family::P13,
        Family::P14,
        Family::P15,
        Family::P16,
        Family::P17,
        Family::P18,
        Family::P19,
    ] {
        let (b0, g0, bp0) = fixed_row(fam).unwrap();
        let n0 = if b0 == -3.0 { 3 } else { 5 };
        if n != n0 {
            continue;
        }
        let res = (beta - b0)
            .abs()
            .max((gamma - g0).abs())
            .max((bp - bp0).abs());
        if res < cfg.eps_report {
            out.push(FamilyMatch {
                family: fam,
                n,
                u: None,
                v: None,
                m: None,
                residual: res,
            });
        }
    }
}

/// One admissible value for a u- or v-slot in an enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexChoice {
    Finite(u32),
    Inf,
    /// Hyperbolic branch with the given u = d > 0.
    InfBar(f64),
}

impl IndexChoice {
    pub fn to_upoint(self) -> UPoint {
        match self {
            IndexChoice::Finite(p) => UPoint::Angle(p),
            IndexChoice::Inf => UPoint::Zero,
            IndexChoice::InfBar(d) => UPoint::Positive(d),
        }
    }
}

/// Named index ranges for `enumerate_family`; unset slots fall back to the
/// family's default sampling grid.
#[derive(Debug, Clone, Default)]
pub struct EnumerationSpec {
    pub n: Option<Vec<u32>>,
    pub u: Option<Vec<IndexChoice>>,
    pub v: Option<Vec<IndexChoice>>,
    pub m: Option<Vec<u32>>,
    /// Free continuous parameter of family D1.
    pub beta_prime: Option<Vec<f64>>,
}

/// Default sampling grid per family: a handful of admissible tuples
/// including ∞ and ∞̄ variants where the row permits them.
pub fn default_spec(family: Family) -> EnumerationSpec {
    use Family::*;
    use IndexChoice as I;
    let fin = |v: &[u32]| v.iter().map(|&p| I::Finite(p)).collect::<Vec<_>>();
    let with_ends = |v: &[u32], d: f64| {
        let mut out = fin(v);
        out.push(I::Inf);
        out.push(I::InfBar(d));
        out
    };
    let mut spec = EnumerationSpec::default();
    match family {
        D1 => {
            spec.n = Some(vec![3, 4]);
            spec.u = Some(with_ends(&[3, 4, 6], 0.4));
            spec.beta_prime = Some(vec![1.5]);
        }
        D2 => {
            spec.n = Some(vec![5, 7]);
            spec.u = Some(with_ends(&[4, 5], 0.3));
        }
        D3 => {
            spec.u = Some(with_ends(&[3, 4, 5], 0.25));
        }
        P1 => {
            spec.n = Some(vec![4, 6]);
            spec.u = Some(with_ends(&[6, 8], 0.3));
            spec.v = Some(with_ends(&[3, 4], 0.35));
        }
        P2 => {
            spec.n = Some(vec![4, 6]);
            spec.u = Some(fin(&[5, 7]));
            spec.v = Some(with_ends(&[3, 5], 0.3));
        }
        P3 => spec.m = Some(vec![5, 7, 9, 11, 13]),
        P4 => {
            spec.n = Some(vec![3, 5]);
            spec.u = Some(with_ends(&[8, 10], 0.3));
            spec.v = Some(with_ends(&[2, 3], 0.4));
        }
        P5 => {
            spec.n = Some(vec![3, 5]);
            spec.u = Some(fin(&[7, 9]));
            spec.v = Some(with_ends(&[2, 3], 0.4));
        }
        P6 => {
            // Small t(v) at n = 7 drives beta' negative; sample orders
            // where the full default v-grid stays admissible.
            spec.n = Some(vec![9, 11, 13]);
            spec.v = Some(with_ends(&[3, 4], 0.5));
        }
        P7 | P8 => spec.n = Some(vec![5, 7, 11, 13, 17]),
        P9 => spec.m = Some(vec![7, 9, 11, 13, 15]),
        P10 => spec.m = Some(vec![8, 10, 14, 16, 20]),
        P11 => spec.m = Some(vec![7, 9, 10, 11, 13]),
        P12 | P13 | P14 | P15 | P16 | P17 | P18 | P19 => {}
    }
    spec
}

fn invalid(msg: impl Into<String>) -> EnumError {
    EnumError::InvalidRange(msg.into())
}

/// Forward-evaluate a family over the given (or default) index ranges.
///
/// Output order is deterministic: nested loops over the slot lists as
/// given. Every choice is validated against the row's printed constraints
/// and every emitted triple re-classifies to the same family.
pub fn enumerate_family(
    family: Family,
    spec: &EnumerationSpec,
    _cfg: &Config,
) -> Result<Vec<(ParameterTriple, FamilyMatch)>, EnumError> {
    let defaults = default_spec(family);
    let ns = spec.n.clone().or(defaults.n).unwrap_or_default();
    let us = spec.u.clone().or(defaults.u).unwrap_or_default();
    let vs = spec.v.clone().or(defaults.v).unwrap_or_default();
    let ms = spec.m.clone().or(defaults.m).unwrap_or_default();
    let bps = spec
        .beta_prime
        .clone()
        .or(defaults.beta_prime)
        .unwrap_or_default();

    let mk = |family, n, u: Option<UPoint>, v, m, triple: ParameterTriple| {
        let fm = FamilyMatch { family, n, u, v, m, residual: 0.0 };
        (triple, fm)
    };

    let mut out: Vec<(ParameterTriple, FamilyMatch)> = Vec::new();
    use Family::*;
    match family {
        D1 => {
            for &n in &ns {
                if n < 3 {
                    return Err(invalid("D1 requires n >= 3"));
                }
                let beta = beta_of_order(n);
                for &uc in &us {
                    let u = uc.to_upoint();
                    if t_of(u) < ExtIndex::Finite(3) {
                        return Err(invalid("D1 requires t(u) >= 3"));
                    }
                    for &bp in &bps {
                        if bp <= 0.0 {
                            return Err(invalid("D1 requires beta' > 0"));
                        }
                        let triple = ParameterTriple::new(beta, bp, -4.0 * u.cosh2());
                        out.push(mk(D1, n, Some(u), None, None, triple));
                    }
                }
            }
        }
        D2 => {
            for &n in &ns {
                if n < 5 || n % 2 == 0 {
                    return Err(invalid("D2 requires odd n >= 5"));
                }
                let beta = beta_of_order(n);
                for &uc in &us {
                    let u = uc.to_upoint();
                    if t_of(u) < ExtIndex::Finite(4) {
                        return Err(invalid("D2 requires t(u) >= 4"));
                    }
                    let triple = ParameterTriple::new(
                        beta,
                        4.0 * (beta + 4.0) * u.cosh2() - 4.0,
                        -(beta + 2.0).powi(2),
                    );
                    out.push(mk(D2, n, Some(u), None, None, triple));
                }
            }
        }
        D3 => {
            let r5 = 5.0_f64.sqrt();
            for &uc in &us {
                let u = uc.to_upoint();
                if t_of(u) < ExtIndex::Finite(3) {
                    return Err(invalid("D3 requires t(u) >= 3"));
                }
                let triple = ParameterTriple::new(
                    -3.0,
                    2.0 * (7.0 + 3.0 * r5) * u.cosh2() - 4.0,
                    (r5 - 3.0) / 2.0,
                );
                out.push(mk(D3, 3, Some(u), None, None, triple));
            }
        }
        P1 | P2 => {
            for &n in &ns {
                if n < 4 || n % 2 == 1 {
                    return Err(invalid("P1/P2 require even n >= 4"));
                }
                let beta = beta_of_order(n);
                for &uc in &us {
                    let u = uc.to_upoint();
                    let tu = t_of(u);
                    let ok_parity = if family == P1 { tu.is_even_class() } else { tu.is_odd() };
                    if !ok_parity {
                        return Err(invalid("t(u) parity does not fit the row"));
                    }
                    if !side_condition(n, tu) {
                        return Err(invalid("1/n + 1/t(u) < 1/2 fails"));
                    }
                    let gamma = 4.0 * u.cosh2() + beta;
                    for &vc in &vs {
                        let v = vc.to_upoint();
                        if t_of(v) < ExtIndex::Finite(3) {
                            return Err(invalid("P1/P2 require t(v) >= 3"));
                        }
                        let bp = if family == P1 {
                            4.0 * v.cosh2() / gamma - 4.0 * gamma / beta
                        } else {
                            4.0 * (gamma - beta) * v.cosh2() / gamma - 4.0 * gamma / beta
                        };
                        let triple = ParameterTriple::new(beta, bp, gamma);
                        out.push(mk(family, n, Some(u), Some(v), None, triple));
                    }
                }
            }
        }
        P3 => {
            for &m in &ms {
                if m < 5 || m % 2 == 0 {
                    return Err(invalid("P3 requires odd m >= 5"));
                }
                let gamma = 2.0 * (2.0 * PI / m as f64).cos();
                let triple = ParameterTriple::new(-2.0, gamma * gamma + 4.0 * gamma, gamma);
                out.push(mk(P3, 4, None, None, Some(ExtIndex::Finite(m)), triple));
            }
        }
        P4 | P5 => {
            for &n in &ns {
                if n < 3 || n % 2 == 0 {
                    return Err(invalid("P4/P5 require odd n >= 3"));
                }
                let beta = beta_of_order(n);
                let cos_n = (PI / n as f64).cos();
                for &uc in &us {
                    let u = uc.to_upoint();
                    let tu = t_of(u);
                    let ok_parity = if family == P4 { tu.is_even_class() } else { tu.is_odd() };
                    if !ok_parity {
                        return Err(invalid("t(u) parity does not fit the row"));
                    }
                    if !side_condition(n, tu) {
                        return Err(invalid("1/n + 1/t(u) < 1/2 fails"));
                    }
                    let gamma = 4.0 * u.cosh2() + beta;
                    let s = s_term(n, beta, gamma);
                    for &vc in &vs {
                        let v = vc.to_upoint();
                        let bp = if family == P4 {
                            2.0 / gamma * (v.cosh() - cos_n) + s
                        } else {
                            2.0 * (gamma - beta) * v.cosh() / gamma + s
                        };
                        let triple = ParameterTriple::new(beta, bp, gamma);
                        out.push(mk(family, n, Some(u), Some(v), None, triple));
                    }
                }
            }
        }
        P6 => {
            for &n in &ns {
                if n < 7 || n % 2 == 0 {
                    return Err(invalid("P6 requires odd n >= 7"));
                }
                let beta = beta_of_order(n);
                let gamma = (beta + 4.0) * (beta + 1.0);
                let t = t_term(n, beta);
                let coef = 2.0 * (beta + 2.0).powi(2) / (beta + 1.0);
                for &vc in &vs {
                    let v = vc.to_upoint();
                    let triple = ParameterTriple::new(beta, coef * v.cosh() + t, gamma);
                    out.push(mk(P6, n, None, Some(v), None, triple));
                }
            }
        }
        P7 | P8 => {
            for &n in &ns {
                if n < 5 || n % 2 == 0 || n % 3 == 0 {
                    return Err(invalid("P7/P8 require odd n >= 5 with (n,3)=1"));
                }
                let beta = beta_of_order(n);
                let cos_n = (PI / n as f64).cos();
                let (gamma, bp) = if family == P7 {
                    (beta + 3.0, 2.0 * ((beta - 3.0) * cos_n - 2.0 * beta - 3.0) / beta)
                } else {
                    (2.0 * (beta + 3.0), -6.0 * (2.0 * cos_n + beta + 2.0) / beta)
                };
                let triple = ParameterTriple::new(beta, bp, gamma);
                out.push(mk(family, n, None, None, None, triple));
            }
        }
        P9 => {
            for &m in &ms {
                if m < 7 || m % 2 == 0 {
                    return Err(invalid("P9 requires odd m >= 7"));
                }
                let gamma = 2.0 * (2.0 * PI / m as f64).cos() - 1.0;
                let bp = 2.0 * (gamma * gamma + 2.0 * gamma + 2.0) / gamma;
                let triple = ParameterTriple::new(-3.0, bp, gamma);
                out.push(mk(P9, 3, None, None, Some(ExtIndex::Finite(m)), triple));
            }
        }
        P10 => {
            for &m in &ms {
                if m < 8 || m % 2 == 1 || m % 3 == 0 {
                    return Err(invalid("P10 requires m >= 8 with (m,6)=2"));
                }
                let gamma = 2.0 * (2.0 * PI / m as f64).cos() - 1.0;
                let triple =
                    ParameterTriple::new(-3.0, gamma * gamma + 4.0 * gamma, gamma);
                out.push(mk(P10, 3, None, None, Some(ExtIndex::Finite(m)), triple));
            }
        }
        P11 => {
            for &m in &ms {
                if m < 7 || m % 4 == 0 {
                    return Err(invalid("P11 requires m >= 7 with (m,4) <= 2"));
                }
                let gamma = 2.0 * (2.0 * PI / m as f64).cos();
                let triple = ParameterTriple::new(-3.0, 2.0 * gamma, gamma);
                out.push(mk(P11, 3, None, None, Some(ExtIndex::Finite(m)), triple));
            }
        }
        P12 | P13 | P14 | P15 | P16 | P17 | P18 | P19 => {
            let (b, g, bp) = fixed_row(family).unwrap();
            let n = if b == -3.0 { 3 } else { 5 };
            out.push(mk(family, n, None, None, None, ParameterTriple::new(b, bp, g)));
        }
    }
    // The theorem hypotheses beta' > 0 and gamma != 0 bound the admissible
    // tuples implicitly; a range that escapes them is invalid.
    for (triple, m) in &out {
        if triple.beta_prime <= 0.0 {
            return Err(invalid(format!(
                "{}: tuple gives beta' = {} <= 0",
                m.family, triple.beta_prime
            )));
        }
        if triple.gamma == 0.0 {
            return Err(invalid(format!("{}: tuple gives gamma = 0", m.family)));
        }
    }
    Ok(out)
}

/// Like `enumerate_family`, but inadmissible tuples in the ranges are
/// skipped instead of rejected, so a contiguous range like m = 5..11 for
/// a row with (m,2) = 1 keeps only the odd values. Errors when nothing
/// in the range is admissible.
pub fn enumerate_family_filtered(
    family: Family,
    spec: &EnumerationSpec,
    cfg: &Config,
) -> Result<Vec<(ParameterTriple, FamilyMatch)>, EnumError> {
    let defaults = default_spec(family);
    let opt = |xs: Vec<u32>| -> Vec<Option<u32>> {
        if xs.is_empty() { vec![None] } else { xs.into_iter().map(Some).collect() }
    };
    let opt_c = |xs: Vec<IndexChoice>| -> Vec<Option<IndexChoice>> {
        if xs.is_empty() { vec![None] } else { xs.into_iter().map(Some).collect() }
    };
    let opt_f = |xs: Vec<f64>| -> Vec<Option<f64>> {
        if xs.is_empty() { vec![None] } else { xs.into_iter().map(Some).collect() }
    };
    let ns = opt(spec.n.clone().or(defaults.n).unwrap_or_default());
    let us = opt_c(spec.u.clone().or(defaults.u).unwrap_or_default());
    let vs = opt_c(spec.v.clone().or(defaults.v).unwrap_or_default());
    let ms = opt(spec.m.clone().or(defaults.m).unwrap_or_default());
    let bps = opt_f(spec.beta_prime.clone().or(defaults.beta_prime).unwrap_or_default());

    let mut out = Vec::new();
    for &n in &ns {
        for &u in &us {
            for &v in &vs {
                for &m in &ms {
                    for &bp in &bps {
                        let single = EnumerationSpec {
                            n: n.map(|x| vec![x]),
                            u: u.map(|x| vec![x]),
                            v: v.map(|x| vec![x]),
                            m: m.map(|x| vec![x]),
                            beta_prime: bp.map(|x| vec![x]),
                        };
                        if let Ok(mut rows) = enumerate_family(family, &single, cfg) {
                            out.append(&mut rows);
                        }
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(invalid(format!("no admissible tuples in range for {family}")));
    }
    Ok(out)
}
