//! Hyperbolic tetrahedron Gram matrices, vertex classification and the
//! trigonometric identities from the disjoint-axes derivation.
//!
//! A tetrahedron T[p1,p2,p3;q1,q2,q3] has dihedral angles π/p1, π/p2, π/p3
//! at the edges of one face and π/q1, π/q2, π/q3 at the opposite edges.
//! The Gram matrix of its face planes has 1 on the diagonal and, off the
//! diagonal, −cos(π/k) for intersecting planes, −1 for parallel ones and
//! −cosh d for disjoint ones; signature (3,1) characterizes hyperbolic
//! realizability.

use std::f64::consts::PI;
use std::fmt;

use crate::config::Config;
use crate::indices::ExtIndex;

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// An ∞̄ entry needs the distance between the disjoint planes.
    MissingDistance,
    UnknownIdentity(String),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::MissingDistance => {
                write!(f, "inf_bar entry without a plane distance")
            }
            GeometryError::UnknownIdentity(name) => write!(f, "unknown identity {name}"),
        }
    }
}

impl std::error::Error for GeometryError {}

/// One dihedral-angle slot of a tetrahedron schema.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetEntry {
    pub idx: ExtIndex,
    /// Distance between the planes, required when idx = ∞̄.
    pub d: Option<f64>,
}

impl TetEntry {
    pub fn finite(k: u32) -> Self {
        TetEntry { idx: ExtIndex::Finite(k), d: None }
    }

    pub fn parallel() -> Self {
        TetEntry { idx: ExtIndex::Inf, d: None }
    }

    pub fn disjoint(d: f64) -> Self {
        TetEntry { idx: ExtIndex::InfBar, d: Some(d) }
    }

    /// cos(π/k), 1, or cosh d; the Gram entry is the negative of this.
    fn value(&self) -> Result<f64, GeometryError> {
        match self.idx {
            ExtIndex::Finite(2) => Ok(0.0), // exact right angle
            ExtIndex::Finite(k) => Ok((PI / k as f64).cos()),
            ExtIndex::Inf => Ok(1.0),
            ExtIndex::InfBar => self.d.map(f64::cosh).ok_or(GeometryError::MissingDistance),
        }
    }
}

/// Face-angle data [p1,p2,p3; q1,q2,q3] with qᵢ opposite pᵢ.
#[derive(Debug, Clone, PartialEq)]
pub struct TetSchema {
    pub p: [TetEntry; 3],
    pub q: [TetEntry; 3],
}

impl TetSchema {
    pub fn finite(p: [u32; 3], q: [u32; 3]) -> Self {
        TetSchema {
            p: [TetEntry::finite(p[0]), TetEntry::finite(p[1]), TetEntry::finite(p[2])],
            q: [TetEntry::finite(q[0]), TetEntry::finite(q[1]), TetEntry::finite(q[2])],
        }
    }
}

impl fmt::Display for TetSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T[{},{},{};{},{},{}]",
            self.p[0].idx, self.p[1].idx, self.p[2].idx,
            self.q[0].idx, self.q[1].idx, self.q[2].idx
        )
    }
}

/// Symmetric 4×4 Gram matrix of the four face planes.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(pub [[f64; 4]; 4]);

/// Faces are numbered 0 (the p-face) and 1,2,3; edge 0∩i has angle π/pᵢ
/// and edge j∩k (with {j,k} = {1,2,3}∖{i}) carries the opposite qᵢ.
#[allow(clippy::needless_range_loop)]
pub fn gram_of(schema: &TetSchema) -> Result<GramMatrix, GeometryError> {
    let mut g = [[0.0f64; 4]; 4];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for i in 0..3 {
        let v = schema.p[i].value()?;
        g[0][i + 1] = -v;
        g[i + 1][0] = -v;
    }
    let opp = [(2usize, 3usize), (1, 3), (1, 2)];
    for i in 0..3 {
        let v = schema.q[i].value()?;
        let (j, k) = opp[i];
        g[j][k] = -v;
        g[k][j] = -v;
    }
    Ok(GramMatrix(g))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigenvalues<const N: usize>(m: &[[f64; N]; N]) -> [f64; N] {
    let mut a = *m;
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..N {
            for j in (i + 1)..N {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig = [0.0; N];
    for i in 0..N {
        eig[i] = a[i][i];
    }
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realizability {
    /// Signature (3,1): a hyperbolic tetrahedron, possibly of infinite
    /// volume (vertices on or beyond the sphere at infinity are fine).
    Hyperbolic,
    /// Some eigenvalue vanishes within tolerance.
    Degenerate,
    NonRealizable,
}

/// Signature test with eigenvalue cutoff eps_eig.
pub fn hyperbolicity(gram: &GramMatrix, cfg: &Config) -> Realizability {
    let eig = symmetric_eigenvalues(&gram.0);
    if eig.iter().any(|e| e.abs() < cfg.eps_eig) {
        return Realizability::Degenerate;
    }
    let neg = eig.iter().filter(|&&e| e < 0.0).count();
    if neg == 1 {
        Realizability::Hyperbolic
    } else {
        Realizability::NonRealizable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    FiniteVertex,
    IdealVertex,
    HyperidealVertex,
}

/// Classify the vertex opposite to `face` by the 3×3 principal minor on
/// the other three faces: positive definite → finite, singular positive
/// semidefinite → ideal, indefinite → hyperideal.
pub fn vertex_kind(gram: &GramMatrix, face: usize, cfg: &Config) -> VertexKind {
    let rows: Vec<usize> = (0..4).filter(|&i| i != face).collect();
    let mut minor = [[0.0f64; 3]; 3];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in rows.iter().enumerate() {
            minor[i][j] = gram.0[r][c];
        }
    }
    let eig = symmetric_eigenvalues(&minor);
    if eig[0] < -cfg.eps_eig {
        VertexKind::HyperidealVertex
    } else if eig[0] < cfg.eps_eig {
        VertexKind::IdealVertex
    } else {
        VertexKind::FiniteVertex
    }
}

/// The named identities from the disjoint-axes derivation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProofIdentity {
    /// −2cosh(2d) − 2 = −4cosh²d.
    Eq1 { d: f64 },
    /// −2cos(2π/p) − 2 = −4cos²(π/p).
    Eq2 { p: u32 },
    /// The spherical-link chain computing cosh²T = 4cos²(π/n)cos²(π/q),
    /// as displayed for n = 5 and finite q ≥ 4.
    Cosh2T { n: u32, q: u32 },
}

/// Evaluate both sides of the identity and return |lhs − rhs|.
pub fn proof_identities(id: ProofIdentity) -> f64 {
    match id {
        ProofIdentity::Eq1 { d } => {
            let lhs = -2.0 * (2.0 * d).cosh() - 2.0;
            let rhs = -4.0 * d.cosh().powi(2);
            (lhs - rhs).abs()
        }
        ProofIdentity::Eq2 { p } => {
            let p = p as f64;
            let lhs = -2.0 * (2.0 * PI / p).cos() - 2.0;
            let rhs = -4.0 * (PI / p).cos().powi(2);
            (lhs - rhs).abs()
        }
        ProofIdentity::Cosh2T { n, q } => {
            let n = n as f64;
            let q = q as f64;
            let sn = (PI / n).sin();
            let cn = (PI / n).cos();
            let cq = (PI / q).cos();
            // Link of the finite vertex: cos ABE = cos(2pi/n)/sin(pi/n),
            // then cosh AB = cos(pi/q)/sin ABC with cos ABC = 1/(2 sin(pi/n)),
            // and cosh T = sin ABE * cosh AB. Assembled in squares so the
            // common factor 4sin^2(pi/n) - 1 cancels exactly.
            let sin2_abe = cn * cn * (4.0 * sn * sn - 1.0) / (sn * sn);
            let cosh2_ab = 4.0 * cq * cq * sn * sn / (4.0 * sn * sn - 1.0);
            let lhs = sin2_abe * cosh2_ab;
            let rhs = 4.0 * cn * cn * cq * cq;
            let beta = -4.0 * sn * sn;
            let rhs_beta = (beta + 4.0) * cq * cq;
            (lhs - rhs).abs().max((lhs - rhs_beta).abs())
        }
    }
}

/// Name-keyed dispatch for external callers.
pub fn proof_identity_by_name(name: &str, params: &[f64]) -> Result<f64, GeometryError> {
    match (name, params) {
        ("eq1", [d]) => Ok(proof_identities(ProofIdentity::Eq1 { d: *d })),
        ("eq2", [p]) => Ok(proof_identities(ProofIdentity::Eq2 { p: *p as u32 })),
        ("cosh2T", [n, q]) => Ok(proof_identities(ProofIdentity::Cosh2T {
            n: *n as u32,
            q: *q as u32,
        })),
        _ => Err(GeometryError::UnknownIdentity(name.to_string())),
    }
}

/// Every tetrahedron named in the family descriptions, with admissible
/// sample indices where a slot is parametric. All must realize with
/// signature (3,1).
pub fn named_tetrahedra() -> Vec<TetSchema> {
    let mut out = vec![
        TetSchema::finite([2, 3, 5], [2, 3, 2]),
        TetSchema::finite([2, 2, 3], [2, 5, 3]),
        TetSchema::finite([2, 3, 5], [2, 2, 4]),
        TetSchema::finite([2, 3, 5], [2, 2, 5]),
    ];
    for m in (5..=15).step_by(2) {
        out.push(TetSchema::finite([2, 2, 4], [2, 3, m]));
    }
    for n in [5, 7, 8] {
        out.push(TetSchema::finite([2, 3, n], [2, 3, n]));
    }
    for n in [5, 7, 8] {
        out.push(TetSchema::finite([2, 2, 4], [2, n, 4]));
    }
    // P10 rows have m >= 8 with (m,6)=2; the tetrahedron uses m/2.
    for m in [8, 10, 14, 16, 20] {
        out.push(TetSchema::finite([2, 3, m / 2], [2, 3, 3]));
    }
    for r in [7, 9, 11] {
        out.push(TetSchema::finite([2, 3, r], [2, 2, 4]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn gram_entries_follow_opposite_edge_map() {
        let g = gram_of(&TetSchema::finite([2, 2, 4], [2, 3, 5])).unwrap().0;
        assert_eq!(g[0][1], 0.0); // -cos(pi/2)
        assert_eq!(g[0][2], 0.0);
        assert!((g[0][3] + (PI / 4.0).cos()).abs() < 1e-15);
        assert!((g[2][3] + (PI / 2.0).cos()).abs() < 1e-15); // q1 opposite p1
        assert!((g[1][3] + (PI / 3.0).cos()).abs() < 1e-15); // q2
        assert!((g[1][2] + (PI / 5.0).cos()).abs() < 1e-15); // q3
        for (i, row) in g.iter().enumerate() {
            assert_eq!(row[i], 1.0);
            for (j, entry) in row.iter().enumerate() {
                assert_eq!(*entry, g[j][i]);
            }
        }
    }

    #[test]
    fn disjoint_entry_uses_cosh_d() {
        let d = (2.0 * (PI / 5.0).cos().powi(2)).acosh();
        let mut schema = TetSchema::finite([2, 2, 4], [2, 5, 4]);
        schema.q[1] = TetEntry::disjoint(d);
        let g = gram_of(&schema).unwrap().0;
        assert!((g[1][3] + 2.0 * (PI / 5.0).cos().powi(2)).abs() < 1e-14);

        schema.q[1] = TetEntry { idx: ExtIndex::InfBar, d: None };
        assert_eq!(gram_of(&schema), Err(GeometryError::MissingDistance));
    }

    /// Independent oracle for the signature: eigenvalues are all real, so
    /// Descartes' rule on the characteristic polynomial is exact.
    fn signature_by_charpoly(m: &[[f64; 4]; 4]) -> (usize, usize) {
        // Faddeev-LeVerrier: p(x) = x^4 - c1 x^3 + c2 x^2 - c3 x + c4.
        let mul = |a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]| {
            let mut c = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        c[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            c
        };
        let tr = |a: &[[f64; 4]; 4]| a[0][0] + a[1][1] + a[2][2] + a[3][3];
        let m2 = mul(m, m);
        let m3 = mul(&m2, m);
        let m4 = mul(&m3, m);
        let (t1, t2, t3, t4) = (tr(m), tr(&m2), tr(&m3), tr(&m4));
        let c1 = t1;
        let c2 = (t1 * t1 - t2) / 2.0;
        let c3 = (t1 * t1 * t1 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0;
        let c4 = (t1.powi(4) - 6.0 * t1 * t1 * t2 + 3.0 * t2 * t2 + 8.0 * t1 * t3 - 6.0 * t4)
            / 24.0;
        // Coefficients of p(x): [1, -c1, c2, -c3, c4]; sign changes count
        // positive roots, p(-x) changes count negative roots.
        let coeffs = [1.0, -c1, c2, -c3, c4];
        let changes = |cs: &[f64]| {
            let mut last = 0.0_f64;
            let mut n = 0;
            for &c in cs {
                if c.abs() < 1e-9 {
                    continue;
                }
                if last != 0.0 && c.signum() != last.signum() {
                    n += 1;
                }
                last = c;
            }
            n
        };
        let neg_coeffs = [1.0, c1, c2, c3, c4];
        (changes(&coeffs), changes(&neg_coeffs))
    }

    #[test]
    fn signature_examples() {
        let cfg = cfg();
        let compact = gram_of(&TetSchema::finite([2, 3, 5], [2, 3, 2])).unwrap();
        assert_eq!(hyperbolicity(&compact, &cfg), Realizability::Hyperbolic);
        assert_eq!(signature_by_charpoly(&compact.0), (3, 1));

        // All dihedral angles pi/3 is the regular ideal tetrahedron:
        // eigenvalues {-1/2, 3/2, 3/2, 3/2}, hyperbolic of signature (3,1).
        let ideal = gram_of(&TetSchema::finite([3, 3, 3], [3, 3, 3])).unwrap();
        assert_eq!(hyperbolicity(&ideal, &cfg), Realizability::Hyperbolic);
        assert_eq!(signature_by_charpoly(&ideal.0), (3, 1));

        // The spherical Coxeter chain 3-3-3 (faces 0-1-2-3 with angle pi/3
        // between consecutive planes) is positive definite.
        let spherical = gram_of(&TetSchema::finite([3, 2, 2], [3, 2, 3])).unwrap();
        assert_eq!(hyperbolicity(&spherical, &cfg), Realizability::NonRealizable);
        assert_eq!(signature_by_charpoly(&spherical.0), (4, 0));

        let identity = GramMatrix([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(hyperbolicity(&identity, &cfg), Realizability::NonRealizable);
    }

    #[test]
    fn jacobi_agrees_with_charpoly_signature_on_named_tetrahedra() {
        let cfg = cfg();
        for schema in named_tetrahedra() {
            let g = gram_of(&schema).unwrap();
            assert_eq!(
                hyperbolicity(&g, &cfg),
                Realizability::Hyperbolic,
                "{schema}"
            );
            assert_eq!(signature_by_charpoly(&g.0), (3, 1), "{schema}");
        }
    }

    #[test]
    fn vertex_kinds_by_angle_sum() {
        let cfg = cfg();
        // Vertex triples of T[p1,p2,p3;q1,q2,q3]: the vertex opposite
        // face 0 sees (q1,q2,q3); opposite face 3 sees (p1,p2,q3).
        let g = gram_of(&TetSchema::finite([2, 3, 5], [2, 3, 2])).unwrap();
        assert_eq!(vertex_kind(&g, 0, &cfg), VertexKind::FiniteVertex); // (2,3,2)
        let g = gram_of(&TetSchema::finite([2, 4, 4], [2, 2, 4])).unwrap();
        assert_eq!(vertex_kind(&g, 3, &cfg), VertexKind::IdealVertex); // (2,4,4)
        let g = gram_of(&TetSchema::finite([2, 3, 5], [2, 2, 7])).unwrap();
        assert_eq!(vertex_kind(&g, 3, &cfg), VertexKind::HyperidealVertex); // (2,3,7)
    }

    #[test]
    fn identities_hold_pointwise() {
        assert_eq!(proof_identities(ProofIdentity::Eq1 { d: 0.0 }), 0.0);
        assert!(proof_identities(ProofIdentity::Eq2 { p: 3 }) < 1e-15);
        assert!(proof_identities(ProofIdentity::Cosh2T { n: 5, q: 4 }) < 1e-12);
        assert!(proof_identity_by_name("bogus", &[]).is_err());
        assert!(proof_identity_by_name("eq1", &[0.5]).unwrap() < 1e-12);
    }
}
