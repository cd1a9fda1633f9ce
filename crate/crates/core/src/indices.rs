//! Extended indices {2,3,…} ∪ {∞, ∞̄}, the point set 𝒰 and the map t(u).
//!
//! Conventions: ∞̄ > ∞ > k for every finite k, and gcd(∞,k) = gcd(∞̄,k) = k
//! for every positive integer k. A dihedral angle π/p between two planes
//! means they intersect for finite p, are parallel for p = ∞ and disjoint
//! for p = ∞̄.

use std::cmp::Ordering;
use std::fmt;

/// An index in {2,3,…} ∪ {∞, ∞̄}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtIndex {
    Finite(u32),
    Inf,
    InfBar,
}

impl ExtIndex {
    /// gcd with a positive integer, under the convention (∞,k) = (∞̄,k) = k.
    pub fn gcd(self, k: u32) -> u32 {
        match self {
            ExtIndex::Finite(m) => gcd_u32(m, k),
            ExtIndex::Inf | ExtIndex::InfBar => k,
        }
    }

    /// True when gcd with 2 equals 2 (even, ∞ or ∞̄).
    pub fn is_even_class(self) -> bool {
        self.gcd(2) == 2
    }

    /// True for finite odd values. By the gcd convention (m,2) = 1 forces
    /// m finite, so ∞ and ∞̄ are never odd.
    pub fn is_odd(self) -> bool {
        matches!(self, ExtIndex::Finite(m) if m % 2 == 1)
    }

    /// Division by a positive integer: ∞/k = ∞, ∞̄/k = ∞̄, and finite m/k
    /// only when k divides m.
    pub fn div_exact(self, k: u32) -> Option<ExtIndex> {
        match self {
            ExtIndex::Finite(m) => (m % k == 0).then(|| ExtIndex::Finite(m / k)),
            ExtIndex::Inf => Some(ExtIndex::Inf),
            ExtIndex::InfBar => Some(ExtIndex::InfBar),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtIndex::Finite(_))
    }

    /// Report serialization: `"k"`, `"inf"`, `"inf_bar"`.
    pub fn as_str(self) -> String {
        match self {
            ExtIndex::Finite(k) => k.to_string(),
            ExtIndex::Inf => "inf".to_string(),
            ExtIndex::InfBar => "inf_bar".to_string(),
        }
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

impl PartialOrd for ExtIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtIndex::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), _) => Ordering::Less,
            (_, Finite(_)) => Ordering::Greater,
            (Inf, Inf) | (InfBar, InfBar) => Ordering::Equal,
            (Inf, InfBar) => Ordering::Less,
            (InfBar, Inf) => Ordering::Greater,
        }
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A point of 𝒰 = {iπ/p | p ∈ ℤ, p ≥ 2} ∪ [0, +∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UPoint {
    /// u = iπ/p with p ≥ 2; cosh u = cos(π/p) < 1.
    Angle(u32),
    /// u = 0; cosh u = 1.
    Zero,
    /// u = d > 0; cosh u = cosh d > 1.
    Positive(f64),
}

impl UPoint {
    pub fn cosh(self) -> f64 {
        match self {
            UPoint::Angle(p) => (std::f64::consts::PI / p as f64).cos(),
            UPoint::Zero => 1.0,
            UPoint::Positive(d) => d.cosh(),
        }
    }

    pub fn cosh2(self) -> f64 {
        let c = self.cosh();
        c * c
    }
}

/// The map t: 𝒰 → {2,3,…} ∪ {∞, ∞̄}.
pub fn t_of(u: UPoint) -> ExtIndex {
    match u {
        UPoint::Angle(p) => ExtIndex::Finite(p),
        UPoint::Zero => ExtIndex::Inf,
        UPoint::Positive(_) => ExtIndex::InfBar,
    }
}

/// Parity constraint on t(u), written (t(u),2) = 1 or 2 in the row tables.
///
/// `Odd` admits only finite odd indices: if (m,k) < k then m is finite.
/// `Even` admits even integers together with ∞ and ∞̄.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    fn admits(self, t: ExtIndex) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => t.is_even_class(),
            Parity::Odd => t.is_odd(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexError {
    /// A quantity that should be a cosh² came out negative.
    NegativeSquare,
}

impl fmt::Display for IndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexError::NegativeSquare => write!(f, "negative value where cosh\u{b2} expected"),
        }
    }
}

impl std::error::Error for IndexError {}

/// Invert the encoding w = cosh²(u): recover u ∈ 𝒰 and t(u) from w.
///
/// w < 1 is matched against cos²(π/p) for an integer p ≤ p_max using a
/// relative acceptance window (arccos loses precision as w → 1, where the
/// map p ↦ cos²(π/p) compresses); w ≈ 1 gives u = 0 and w > 1 gives the
/// hyperbolic branch u = arccosh √w. The candidate is accepted only if the
/// parity constraint and t(u) ≥ min_t hold.
pub fn match_cosh2(
    w: f64,
    parity: Parity,
    min_t: ExtIndex,
    cfg: &crate::config::Config,
) -> Result<Option<(UPoint, ExtIndex)>, IndexError> {
    let tol = cfg.u_tol;
    if w < -tol {
        return Err(IndexError::NegativeSquare);
    }
    let w = w.max(0.0);
    let accept = |u: UPoint| {
        let t = t_of(u);
        (parity.admits(t) && t >= min_t).then_some((u, t))
    };
    if (w - 1.0).abs() < tol {
        return Ok(accept(UPoint::Zero));
    }
    if w > 1.0 {
        return Ok(accept(UPoint::Positive(w.sqrt().acosh())));
    }
    let p_hat = std::f64::consts::PI / w.sqrt().acos();
    let p = p_hat.round();
    if (p_hat - p).abs() >= cfg.int_window * p_hat || p < 2.0 || p > cfg.p_max as f64 {
        return Ok(None);
    }
    Ok(accept(UPoint::Angle(p as u32)))
}
