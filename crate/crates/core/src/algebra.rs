//! Möbius-transformation arithmetic, trace parameters and element
//! classification by β.
//!
//! Elements of PSL(2,ℂ) are represented by unit-determinant 2×2 complex
//! matrices identified up to global sign; every contract below therefore
//! uses |tr| or tr², never a bare sign.

use num_complex::Complex64;
use std::fmt;

use crate::config::Config;

pub type C = Complex64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// One of the inputs is ±identity.
    DegenerateInput,
    /// The elliptic generator is a half-turn (n = 2), excluded from scope.
    HalfTurn,
    /// β does not recognize as an elliptic rotation.
    NotElliptic,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DegenerateInput => write!(f, "matrix is the identity up to sign"),
            AlgebraError::HalfTurn => write!(f, "elliptic generator is a half-turn"),
            AlgebraError::NotElliptic => write!(f, "beta is not of elliptic rotation form"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Unit-determinant 2×2 complex matrix, identified up to global sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusElement {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl MoebiusElement {
    /// Build from entries, requiring |det − 1| < eps_det.
    pub fn new(a: C, b: C, c: C, d: C, cfg: &Config) -> Result<Self, String> {
        let m = MoebiusElement { a, b, c, d };
        let err = (m.det() - 1.0).norm();
        if err >= cfg.eps_det {
            return Err(format!("determinant off unity by {err:.3e}"));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MoebiusElement {
            a: C::new(1.0, 0.0),
            b: C::new(0.0, 0.0),
            c: C::new(0.0, 0.0),
            d: C::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C {
        self.a + self.d
    }

    pub fn mul(&self, o: &MoebiusElement) -> MoebiusElement {
        MoebiusElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Inverse of a unit-determinant matrix.
    pub fn inv(&self) -> MoebiusElement {
        MoebiusElement {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn neg(&self) -> MoebiusElement {
        MoebiusElement {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// Rescale so the determinant is exactly 1 again (drift repair).
    pub fn renormalize(&self) -> MoebiusElement {
        let s = self.det().sqrt();
        MoebiusElement {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    /// Binary powering with determinant renormalization every 16
    /// multiplications, keeping residuals meaningful at large exponents.
    pub fn pow(&self, e: i64) -> MoebiusElement {
        if e == 0 {
            return MoebiusElement::identity();
        }
        let mut base = if e < 0 { self.inv() } else { *self };
        let mut e = e.unsigned_abs();
        let mut acc = MoebiusElement::identity();
        let mut muls = 0u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
                muls += 1;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
                muls += 1;
            }
            if muls >= 16 {
                acc = acc.renormalize();
                base = base.renormalize();
                muls = 0;
            }
        }
        acc
    }

    /// Entrywise max-modulus norm.
    pub fn norm_inf(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    fn diff_norm(&self, o: &MoebiusElement) -> f64 {
        (self.a - o.a)
            .norm()
            .max((self.b - o.b).norm())
            .max((self.c - o.c).norm())
            .max((self.d - o.d).norm())
    }

    /// min(‖M−N‖∞, ‖M+N‖∞): distance in PSL(2,ℂ).
    pub fn dist_up_to_sign(&self, o: &MoebiusElement) -> f64 {
        self.diff_norm(o).min(self.diff_norm(&o.neg()))
    }

    /// Equality up to global sign.
    pub fn approx_eq(&self, o: &MoebiusElement, cfg: &Config) -> bool {
        self.dist_up_to_sign(o) < cfg.eps_eq
    }

    /// min(‖M−I‖∞, ‖M+I‖∞): how far from ±identity.
    pub fn dist_to_identity(&self) -> f64 {
        self.dist_up_to_sign(&MoebiusElement::identity())
    }

    pub fn is_identity_up_to_sign(&self, cfg: &Config) -> bool {
        self.dist_to_identity() < cfg.eps_eq
    }

    /// Commutator [M,N] = M N M⁻¹ N⁻¹.
    pub fn commutator(&self, o: &MoebiusElement) -> MoebiusElement {
        self.mul(o).mul(&self.inv()).mul(&o.inv())
    }

    /// Conjugate by M: M · self · M⁻¹.
    pub fn conj_by(&self, m: &MoebiusElement) -> MoebiusElement {
        m.mul(self).mul(&m.inv())
    }
}

/// The triple (β, β′, γ) with optional symbolic provenance tags.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub beta: Option<String>,
    pub beta_prime: Option<String>,
    pub gamma: Option<String>,
}

/// β = tr²f − 4, β′ = tr²g − 4, γ = tr[f,g] − 2 as reals.
///
/// The triple determines ⟨f,g⟩ up to conjugacy whenever γ ≠ 0; γ = 0 means
/// the generators share a fixed point and the group is elementary.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterTriple {
    pub beta: f64,
    pub beta_prime: f64,
    pub gamma: f64,
    pub provenance: Provenance,
}

impl ParameterTriple {
    pub fn new(beta: f64, beta_prime: f64, gamma: f64) -> Self {
        ParameterTriple {
            beta,
            beta_prime,
            gamma,
            provenance: Provenance::default(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.beta.is_finite() && self.beta_prime.is_finite() && self.gamma.is_finite()
    }
}

/// Element type of a non-trivial f ∈ PSL(2,ℂ) with real β = tr²f − 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    /// Rotation through 2πq/n with gcd(q,n) = 1 and 1 ≤ q < n/2 (q = 1 for
    /// n = 2); primitive exactly when q = 1.
    Elliptic { order: u32, rotation: u32 },
    Parabolic,
    Hyperbolic,
    PiLoxodromic,
    StrictlyLoxodromic,
    /// β ∈ (−4,0) with no rational rotation of order ≤ n_max.
    InfiniteOrderElliptic,
}

impl ElementClass {
    pub fn is_primitive_elliptic(&self) -> bool {
        matches!(self, ElementClass::Elliptic { rotation: 1, .. })
    }
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementClass::Elliptic { order, rotation } => {
                write!(f, "elliptic(n={order},q={rotation})")
            }
            ElementClass::Parabolic => write!(f, "parabolic"),
            ElementClass::Hyperbolic => write!(f, "hyperbolic"),
            ElementClass::PiLoxodromic => write!(f, "pi_loxodromic"),
            ElementClass::StrictlyLoxodromic => write!(f, "strictly_loxodromic"),
            ElementClass::InfiniteOrderElliptic => write!(f, "infinite_order_elliptic"),
        }
    }
}

/// Parameters of a generating pair, with the imaginary parts reported
/// separately so the real-parameter predicate can be applied.
#[derive(Debug, Clone, PartialEq)]
pub struct PairParameters {
    pub triple: ParameterTriple,
    /// |Im β|, |Im β′|, |Im γ|.
    pub imag: [f64; 3],
}

impl PairParameters {
    pub fn is_real(&self, cfg: &Config) -> bool {
        self.imag.iter().all(|&x| x < cfg.eps_im)
    }
}

/// Compute (β, β′, γ) for a pair of non-identity elements.
pub fn params_of_pair(
    f: &MoebiusElement,
    g: &MoebiusElement,
    cfg: &Config,
) -> Result<PairParameters, AlgebraError> {
    if f.is_identity_up_to_sign(cfg) || g.is_identity_up_to_sign(cfg) {
        return Err(AlgebraError::DegenerateInput);
    }
    let beta = f.trace() * f.trace() - 4.0;
    let beta_prime = g.trace() * g.trace() - 4.0;
    let gamma = f.commutator(g).trace() - 2.0;
    Ok(PairParameters {
        triple: ParameterTriple::new(beta.re, beta_prime.re, gamma.re),
        imag: [beta.im.abs(), beta_prime.im.abs(), gamma.im.abs()],
    })
}

/// Recognize x ∈ (0,1) as a fraction q/n with n ≤ n_max via continued
/// fraction convergents. Returns the first convergent within `window`.
fn recognize_fraction(x: f64, n_max: u32, window: f64) -> Option<(u32, u32)> {
    let (mut h0, mut h1) = (0u64, 1u64); // numerators
    let (mut k0, mut k1) = (1u64, 0u64); // denominators
    let mut t = x;
    for _ in 0..64 {
        let a = t.floor();
        if a < 0.0 || a > u64::MAX as f64 {
            return None;
        }
        let a_int = a as u64;
        let h2 = a_int.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a_int.checked_mul(k1)?.checked_add(k0)?;
        if k2 > n_max as u64 {
            return None;
        }
        if k2 > 0 {
            let approx = h2 as f64 / k2 as f64;
            if (approx - x).abs() < window {
                return Some((h2 as u32, k2 as u32));
            }
        }
        let frac = t - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        t = 1.0 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

/// Classify an element by real β, recognizing elliptic rotations
/// β = −4 sin²(πq/n) for coprime q < n/2 (or q = 1, n = 2) up to n_max.
///
/// Total: unrecognized β ∈ (−4,0) reports an infinite-order elliptic.
pub fn classify_element(beta: f64, cfg: &Config) -> ElementClass {
    if beta == 0.0 {
        return ElementClass::Parabolic;
    }
    if beta > 0.0 {
        return ElementClass::Hyperbolic;
    }
    if beta < -4.0 {
        return ElementClass::PiLoxodromic;
    }
    // β ∈ [−4, 0): elliptic range. The rotation fraction is
    // q/n = arcsin(√(−β/4)) / π ∈ (0, 1/2].
    let x = (-beta / 4.0).sqrt().min(1.0).asin() / std::f64::consts::PI;
    // A convergent within this window still has to pass the residual gate,
    // so a generous window only costs a rejected candidate.
    if let Some((q, n)) = recognize_fraction(x, cfg.n_max, 1e-7) {
        if q >= 1 && (q as f64) <= n as f64 / 2.0 {
            let model = -4.0 * (std::f64::consts::PI * q as f64 / n as f64).sin().powi(2);
            if (model - beta).abs() < cfg.eps_recog {
                return ElementClass::Elliptic {
                    order: n,
                    rotation: q,
                };
            }
        }
    }
    ElementClass::InfiniteOrderElliptic
}

/// Classify from a complex β, separating strictly loxodromic elements.
pub fn classify_element_complex(beta: C, cfg: &Config) -> ElementClass {
    if beta.im.abs() >= cfg.eps_im {
        return ElementClass::StrictlyLoxodromic;
    }
    classify_element(beta.re, cfg)
}

/// Replace a non-primitive elliptic marking (f,g) by the primitive one
/// (f^r, g) using γ(f,g) = γ(f^r,g) · β(f)/β(f^r).
///
/// Idempotent on primitive inputs. The elliptic generator must have order
/// n ≥ 3; half-turns are out of scope.
pub fn normalize_primitive(
    triple: &ParameterTriple,
    cfg: &Config,
) -> Result<ParameterTriple, AlgebraError> {
    match classify_element(triple.beta, cfg) {
        ElementClass::Elliptic { order: 2, .. } => Err(AlgebraError::HalfTurn),
        ElementClass::Elliptic { order: n, rotation: 1 } => {
            debug_assert!(n >= 3);
            Ok(triple.clone())
        }
        ElementClass::Elliptic { order: n, .. } => {
            let beta0 = -4.0 * (std::f64::consts::PI / n as f64).sin().powi(2);
            Ok(ParameterTriple::new(
                beta0,
                triple.beta_prime,
                triple.gamma * beta0 / triple.beta,
            ))
        }
        _ => Err(AlgebraError::NotElliptic),
    }
}

/// Mutual position of the generator axes, read off the parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Regime {
    /// γ < 0: disjoint non-parallel lines in a hyperbolic plane.
    DisjointCoplanar,
    /// 0 < γ < −ββ′/4: axes intersect non-orthogonally in ℍ³.
    IntersectingNonOrthogonal,
    OutOfScope(String),
}

impl Regime {
    pub fn is_in_scope(&self) -> bool {
        !matches!(self, Regime::OutOfScope(_))
    }
}

/// Decide the axis regime of a triple with β ∈ (−4,0) and β′ > 0.
pub fn axis_regime(triple: &ParameterTriple) -> Regime {
    if !(triple.beta > -4.0 && triple.beta < 0.0) {
        return Regime::OutOfScope(format!(
            "beta = {} is not in (-4,0): f is not elliptic of order >= 3",
            triple.beta
        ));
    }
    if triple.beta_prime <= 0.0 {
        return Regime::OutOfScope(format!(
            "beta' = {} is not positive: g is not hyperbolic",
            triple.beta_prime
        ));
    }
    if triple.gamma == 0.0 {
        return Regime::OutOfScope(
            "elementary; f and g have a common fixed point".to_string(),
        );
    }
    if triple.gamma < 0.0 {
        Regime::DisjointCoplanar
    } else if triple.gamma < -triple.beta * triple.beta_prime / 4.0 {
        Regime::IntersectingNonOrthogonal
    } else {
        Regime::OutOfScope("outside the truly-spatial coplanar regime".to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> Config {
        Config::default()
    }

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn commuting_diagonal_pair() {
        let cfg = cfg();
        let f = MoebiusElement::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0), &cfg)
            .unwrap();
        let g = MoebiusElement::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), &cfg)
            .unwrap();
        let p = params_of_pair(&f, &g, &cfg).unwrap();
        assert!((p.triple.beta + 4.0).abs() < 1e-12);
        assert!((p.triple.beta_prime - 2.25).abs() < 1e-12);
        assert!(p.triple.gamma.abs() < 1e-12);
        assert!(p.is_real(&cfg));
    }

    #[test]
    fn beta_of_order_four_rotation() {
        let cfg = cfg();
        let a = C::from_polar(1.0, PI / 4.0);
        let f = MoebiusElement::new(a, c(1.0, 0.0), c(0.0, 0.0), a.conj(), &cfg).unwrap();
        let g = MoebiusElement::new(c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0 / 3.0, 0.0), &cfg)
            .unwrap();
        let p = params_of_pair(&f, &g, &cfg).unwrap();
        assert!((p.triple.beta + 2.0).abs() < 1e-12);
    }

    #[test]
    fn identity_inputs_are_degenerate() {
        let cfg = cfg();
        let id = MoebiusElement::identity();
        let g = MoebiusElement::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), &cfg)
            .unwrap();
        assert_eq!(
            params_of_pair(&id, &g, &cfg),
            Err(AlgebraError::DegenerateInput)
        );
        assert_eq!(
            params_of_pair(&g, &id.neg(), &cfg),
            Err(AlgebraError::DegenerateInput)
        );
    }

    #[test]
    fn classify_examples() {
        let cfg = cfg();
        assert_eq!(
            classify_element(-3.0, &cfg),
            ElementClass::Elliptic { order: 3, rotation: 1 }
        );
        assert_eq!(classify_element(0.0, &cfg), ElementClass::Parabolic);
        assert_eq!(classify_element(1.5, &cfg), ElementClass::Hyperbolic);
        assert_eq!(classify_element(-5.0, &cfg), ElementClass::PiLoxodromic);
        let b = -4.0 * (2.0 * PI / 5.0).sin().powi(2);
        assert_eq!(
            classify_element(b, &cfg),
            ElementClass::Elliptic { order: 5, rotation: 2 }
        );
        assert_eq!(
            classify_element(-4.0, &cfg),
            ElementClass::Elliptic { order: 2, rotation: 1 }
        );
        // An angle with no small rational multiple of pi.
        assert_eq!(
            classify_element(-3.1, &cfg),
            ElementClass::InfiniteOrderElliptic
        );
        assert_eq!(
            classify_element_complex(c(-3.0, 0.5), &cfg),
            ElementClass::StrictlyLoxodromic
        );
    }

    #[test]
    fn classify_primitive_for_all_orders_up_to_200() {
        let cfg = cfg();
        for n in 3..=200u32 {
            let beta = -4.0 * (PI / n as f64).sin().powi(2);
            assert_eq!(
                classify_element(beta, &cfg),
                ElementClass::Elliptic { order: n, rotation: 1 },
                "n = {n}"
            );
        }
    }

    #[test]
    fn normalize_primitive_examples() {
        let cfg = cfg();
        let s1 = (PI / 5.0).sin().powi(2);
        let s2 = (2.0 * PI / 5.0).sin().powi(2);
        let t = ParameterTriple::new(-4.0 * s2, 7.0, -2.0);
        let n = normalize_primitive(&t, &cfg).unwrap();
        assert!((n.beta + 4.0 * s1).abs() < 1e-12);
        assert_eq!(n.beta_prime, 7.0);
        assert!((n.gamma + 2.0 * s1 / s2).abs() < 1e-12);
        // Idempotent.
        let again = normalize_primitive(&n, &cfg).unwrap();
        assert_eq!(again, n);
        // Primitive input unchanged.
        let p = ParameterTriple::new(-3.0, 1.0, -1.0);
        assert_eq!(normalize_primitive(&p, &cfg).unwrap(), p);
        // Half-turn rejected.
        let h = ParameterTriple::new(-4.0, 1.0, -1.0);
        assert_eq!(normalize_primitive(&h, &cfg), Err(AlgebraError::HalfTurn));
        let nh = ParameterTriple::new(1.0, 1.0, -1.0);
        assert_eq!(normalize_primitive(&nh, &cfg), Err(AlgebraError::NotElliptic));
    }

    #[test]
    fn axis_regime_examples() {
        assert_eq!(
            axis_regime(&ParameterTriple::new(-3.0, 1.0, -1.0)),
            Regime::DisjointCoplanar
        );
        assert_eq!(
            axis_regime(&ParameterTriple::new(-2.0, 3.0, 1.0)),
            Regime::IntersectingNonOrthogonal
        );
        assert!(matches!(
            axis_regime(&ParameterTriple::new(-3.0, 1.0, 0.0)),
            Regime::OutOfScope(_)
        ));
        assert!(matches!(
            axis_regime(&ParameterTriple::new(-2.0, 3.0, 1.5)),
            Regime::OutOfScope(_)
        ));
    }

    #[test]
    fn equality_is_blind_to_global_sign() {
        let cfg = cfg();
        let a = C::from_polar(1.0, PI / 5.0);
        let m = MoebiusElement::new(a, c(0.2, -0.4), c(0.0, 0.0), a.conj(), &cfg).unwrap();
        assert!(m.approx_eq(&m.neg(), &cfg));
        assert!(m.neg().is_identity_up_to_sign(&cfg) == m.is_identity_up_to_sign(&cfg));
        assert!(!m.approx_eq(&MoebiusElement::identity(), &cfg));
    }

    #[test]
    fn powering_matches_repeated_multiplication() {
        let cfg = cfg();
        let a = C::from_polar(1.0, PI / 7.0);
        let f = MoebiusElement::new(a, c(0.3, 0.1), c(0.0, 0.0), a.conj(), &cfg).unwrap();
        let mut acc = MoebiusElement::identity();
        for _ in 0..23 {
            acc = acc.mul(&f);
        }
        assert!(f.pow(23).dist_up_to_sign(&acc) < 1e-12);
        assert!(f.pow(-5).mul(&f.pow(5)).dist_to_identity() < 1e-12);
        assert!(f.pow(14).dist_to_identity() < 1e-10); // order 14 in SL(2,C)
    }
}
