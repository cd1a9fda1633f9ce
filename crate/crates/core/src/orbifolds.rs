//! Orbifold descriptors: labelled 3-regular singular graphs per
//! presentation schema, together with the decoding rules for fat
//! vertices and edges.
//!
//! Structural rules for a singular graph:
//! 1. non-fat edges carry finite integer labels > 1;
//! 2. fat edges carry integer labels > 1 or the symbols ∞, ∞̄;
//! 3. the endpoints of a fat edge are fat vertices;
//! 4. a non-fat vertex with incident labels p, q, r has 1/p+1/q+1/r > 1.
//!
//! An unlabelled edge is labelled 2.
//!
//! Singular sets of the Seifert-fibered quotients contain closed circle
//! components with no trivalent vertex; these are stored as edges without
//! endpoints and decode like edges. Fatness is derived per instance: an
//! edge is fat when its label is ∞ or ∞̄, and a vertex is fat when an
//! incident edge is fat or its label triple fails the spherical bound.

use std::fmt;

use crate::indices::ExtIndex;
use crate::presentations::{PresentationInstance, Schema};

/// Ambient space the singular graph is embedded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Sphere3,
    S2xS1,
    /// 𝒮(p): two fibered solid tori glued fiber to fiber, with two
    /// critical fibers p times shorter than regular ones.
    SeifertS(u32),
    RP3MinusBall,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Sphere3 => write!(f, "S3"),
            Ambient::S2xS1 => write!(f, "S2xS1"),
            Ambient::SeifertS(p) => write!(f, "S({p})"),
            Ambient::RP3MinusBall => write!(f, "RP3_minus_ball"),
        }
    }
}

/// Placement of a singular component relative to the Seifert fibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fiber {
    Regular,
    Critical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularVertex {
    pub id: usize,
    pub fat: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularEdge {
    /// None for a closed circle component.
    pub endpoints: Option<(usize, usize)>,
    pub label: ExtIndex,
    pub fat: bool,
    /// Seifert placement metadata, where the construction records it.
    pub fiber: Option<Fiber>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularGraph {
    pub ambient: Ambient,
    pub vertices: Vec<SingularVertex>,
    pub edges: Vec<SingularEdge>,
}

impl SingularGraph {
    /// Labels of the edges incident to a vertex, loops counted twice.
    pub fn incident_labels(&self, v: usize) -> Vec<ExtIndex> {
        let mut out = Vec::new();
        for e in &self.edges {
            if let Some((a, b)) = e.endpoints {
                if a == v {
                    out.push(e.label);
                }
                if b == v {
                    out.push(e.label);
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident_labels(v).len()
    }

    /// Check the four structural rules; returns the first violation.
    pub fn check_rules(&self) -> Result<(), String> {
        for v in &self.vertices {
            let deg = self.degree(v.id);
            if deg != 3 {
                return Err(format!("vertex {} has degree {deg}", v.id));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            match e.label {
                ExtIndex::Finite(k) if k > 1 => {}
                ExtIndex::Finite(k) => return Err(format!("edge {i} labelled {k}")),
                ExtIndex::Inf | ExtIndex::InfBar if e.fat => {}
                _ => return Err(format!("edge {i} has infinite label but is not fat")),
            }
            if e.fat {
                if let Some((a, b)) = e.endpoints {
                    if !self.vertices[a].fat || !self.vertices[b].fat {
                        return Err(format!("fat edge {i} has a non-fat endpoint"));
                    }
                }
            }
        }
        for v in &self.vertices {
            if !v.fat && !spherical_triple(&self.incident_labels(v.id)) {
                return Err(format!("non-fat vertex {} fails 1/p+1/q+1/r > 1", v.id));
            }
        }
        Ok(())
    }
}

fn spherical_triple(labels: &[ExtIndex]) -> bool {
    let mut fin = [0u64; 3];
    if labels.len() != 3 {
        return false;
    }
    for (i, l) in labels.iter().enumerate() {
        match l {
            ExtIndex::Finite(k) => fin[i] = *k as u64,
            _ => return false,
        }
    }
    let [p, q, r] = fin;
    // 1/p + 1/q + 1/r > 1, exactly.
    q * r + p * r + p * q > p * q * r
}

/// Local structure at a fat or non-fat vertex, determined by the three
/// incident labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalGroup {
    /// Dihedral group of order 2k at a (2,2,k) vertex.
    Dihedral(u32),
    A4,
    S4,
    A5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EuclideanTriangle {
    T236,
    T244,
    T333,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexDecoding {
    SingularPoint(LocalGroup),
    Cusp(EuclideanTriangle),
    /// Removed together with an open neighborhood: a boundary component.
    Boundary,
    Puncture,
}

impl fmt::Display for VertexDecoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexDecoding::SingularPoint(LocalGroup::Dihedral(k)) => {
                write!(f, "singular_point(D{})", 2 * k)
            }
            VertexDecoding::SingularPoint(LocalGroup::A4) => write!(f, "singular_point(A4)"),
            VertexDecoding::SingularPoint(LocalGroup::S4) => write!(f, "singular_point(S4)"),
            VertexDecoding::SingularPoint(LocalGroup::A5) => write!(f, "singular_point(A5)"),
            VertexDecoding::Cusp(EuclideanTriangle::T236) => write!(f, "cusp(2,3,6)"),
            VertexDecoding::Cusp(EuclideanTriangle::T244) => write!(f, "cusp(2,4,4)"),
            VertexDecoding::Cusp(EuclideanTriangle::T333) => write!(f, "cusp(3,3,3)"),
            VertexDecoding::Boundary => write!(f, "boundary"),
            VertexDecoding::Puncture => write!(f, "puncture"),
        }
    }
}

/// Decode a vertex from its three incident labels. Total: any label
/// combination is assigned a meaning.
pub fn decode_vertex(p: ExtIndex, q: ExtIndex, r: ExtIndex) -> VertexDecoding {
    use ExtIndex::*;
    let labels = [p, q, r];
    if labels.iter().any(|l| matches!(l, InfBar)) {
        return VertexDecoding::Boundary;
    }
    let n_inf = labels.iter().filter(|l| matches!(l, Inf)).count();
    if n_inf > 0 {
        // One index ∞ with the other two equal to 2 is a puncture; every
        // other infinite combination is removed with its neighborhood.
        let finite: Vec<u32> = labels
            .iter()
            .filter_map(|l| match l {
                Finite(k) => Some(*k),
                _ => None,
            })
            .collect();
        if n_inf == 1 && finite == [2, 2] {
            return VertexDecoding::Puncture;
        }
        return VertexDecoding::Boundary;
    }
    let mut fin: Vec<u64> = labels
        .iter()
        .map(|l| match l {
            Finite(k) => *k as u64,
            _ => unreachable!(),
        })
        .collect();
    fin.sort_unstable();
    let (a, b, c) = (fin[0], fin[1], fin[2]);
    let lhs = b * c + a * c + a * b;
    let rhs = a * b * c;
    if lhs > rhs {
        let group = match (a, b, c) {
            (2, 2, k) => LocalGroup::Dihedral(k as u32),
            (2, 3, 3) => LocalGroup::A4,
            (2, 3, 4) => LocalGroup::S4,
            (2, 3, 5) => LocalGroup::A5,
            // 1/p+1/q+1/r > 1 admits no other triple with entries >= 2.
            _ => unreachable!("spherical triple ({a},{b},{c})"),
        };
        VertexDecoding::SingularPoint(group)
    } else if lhs == rhs {
        let tri = match (a, b, c) {
            (2, 3, 6) => EuclideanTriangle::T236,
            (2, 4, 4) => EuclideanTriangle::T244,
            (3, 3, 3) => EuclideanTriangle::T333,
            _ => unreachable!("euclidean triple ({a},{b},{c})"),
        };
        VertexDecoding::Cusp(tri)
    } else {
        VertexDecoding::Boundary
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeDecoding {
    /// Part of the singular set: cone points of the given index.
    ConePoints(u32),
    /// A fat edge labelled ∞: a cusp.
    CuspAnnulus,
    /// Labelled ∞̄: deleted with an open regular neighborhood.
    Removed,
}

impl fmt::Display for EdgeDecoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeDecoding::ConePoints(p) => write!(f, "cone_points({p})"),
            EdgeDecoding::CuspAnnulus => write!(f, "cusp"),
            EdgeDecoding::Removed => write!(f, "removed"),
        }
    }
}

pub fn decode_edge(label: ExtIndex) -> EdgeDecoding {
    match label {
        ExtIndex::Finite(p) => EdgeDecoding::ConePoints(p),
        ExtIndex::Inf => EdgeDecoding::CuspAnnulus,
        ExtIndex::InfBar => EdgeDecoding::Removed,
    }
}

/// A singular graph together with the decoded features of every vertex
/// and edge.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbifoldDescriptor {
    pub graph: SingularGraph,
    pub vertex_decodings: Vec<VertexDecoding>,
    pub edge_decodings: Vec<EdgeDecoding>,
}

struct TemplateEdge {
    endpoints: Option<(usize, usize)>,
    label: ExtIndex,
    fiber: Option<Fiber>,
}

fn edge(a: usize, b: usize, label: ExtIndex) -> TemplateEdge {
    TemplateEdge { endpoints: Some((a, b)), label, fiber: None }
}

fn circle(label: ExtIndex, fiber: Option<Fiber>) -> TemplateEdge {
    TemplateEdge { endpoints: None, label, fiber }
}

fn fibered(a: usize, b: usize, label: ExtIndex, fiber: Fiber) -> TemplateEdge {
    TemplateEdge { endpoints: Some((a, b)), label, fiber: Some(fiber) }
}

const L2: ExtIndex = ExtIndex::Finite(2);

/// Instantiate the graph template of a presentation schema.
///
/// The templates transcribe the figure panels: GT is a theta-curve; the
/// Tet forms give the 1-skeleton of the tetrahedron (K4) with opposite
/// edges carrying (pᵢ, qᵢ); H and R fold a two-vertex graph through the
/// two pierce points of an axis of symmetry; PH and P are label chains
/// whose non-trivial labels sit on parallel strands; the Seifert panels
/// combine circle components with a theta component.
pub fn orbifold_of(pres: &PresentationInstance) -> OrbifoldDescriptor {
    let e = &pres.exponents;
    let (ambient, n_vertices, template): (Ambient, usize, Vec<TemplateEdge>) = match pres.schema {
        // Theta graph on labels n, m, q.
        Schema::GT => (
            Ambient::Sphere3,
            2,
            vec![edge(0, 1, e[0]), edge(0, 1, e[1]), edge(0, 1, e[2])],
        ),
        // Triangular prism: labelled verticals n, m, q on 2-labelled triangles.
        Schema::PH | Schema::P => (
            Ambient::Sphere3,
            6,
            vec![
                edge(0, 3, e[0]),
                edge(1, 4, e[1]),
                edge(2, 5, e[2]),
                edge(0, 1, L2),
                edge(1, 2, L2),
                edge(2, 0, L2),
                edge(3, 4, L2),
                edge(4, 5, L2),
                edge(5, 3, L2),
            ],
        ),
        // Fold graph: two strands n, m between A and B, pendant arcs p, q
        // to the pierce points, closed by the 2-labelled symmetry axis.
        Schema::H => (
            Ambient::Sphere3,
            4,
            vec![
                edge(0, 1, e[1]),
                edge(0, 1, e[2]),
                edge(0, 2, e[0]),
                edge(1, 3, e[3]),
                edge(2, 3, L2),
                edge(2, 3, L2),
            ],
        ),
        // K4 with opposite-edge pairs (p_i, q_i).
        Schema::Tet6 => (
            Ambient::Sphere3,
            4,
            vec![
                edge(0, 1, e[0]),
                edge(0, 2, e[1]),
                edge(0, 3, e[2]),
                edge(2, 3, e[3]),
                edge(1, 3, e[4]),
                edge(1, 2, e[5]),
            ],
        ),
        // Tet[n,m;q] = Tet[2,2,n;2,q,m].
        Schema::Tet3 => (
            Ambient::Sphere3,
            4,
            vec![
                edge(0, 1, L2),
                edge(0, 2, L2),
                edge(0, 3, e[0]),
                edge(2, 3, L2),
                edge(1, 3, e[2]),
                edge(1, 2, e[1]),
            ],
        ),
        // Three disjoint circles; the m-circle on a critical fiber, the
        // n-circle on a regular one.
        Schema::S2 => (
            Ambient::SeifertS(2),
            0,
            vec![
                circle(e[0], Some(Fiber::Regular)),
                circle(e[1], Some(Fiber::Critical)),
                circle(e[2], None),
            ],
        ),
        // Theta on n, m, q; the n- and m-arcs close up along a regular fiber.
        Schema::S3 => (
            Ambient::SeifertS(3),
            2,
            vec![
                fibered(0, 1, e[0], Fiber::Regular),
                fibered(0, 1, e[1], Fiber::Regular),
                edge(0, 1, e[2]),
            ],
        ),
        // Circle of index n on a critical fiber; the curve of cone points
        // of indices m and 2 lies on a regular fiber, met by the q-arc.
        Schema::GTet2 => (
            Ambient::SeifertS(2),
            2,
            vec![
                circle(e[0], Some(Fiber::Critical)),
                fibered(0, 1, e[1], Fiber::Regular),
                fibered(0, 1, L2, Fiber::Regular),
                edge(0, 1, e[2]),
            ],
        ),
        // Same shape in the trivially fibered S2 x S1.
        Schema::GTet1 => (
            Ambient::S2xS1,
            2,
            vec![
                circle(e[0], Some(Fiber::Regular)),
                edge(0, 1, e[1]),
                edge(0, 1, L2),
                edge(0, 1, e[2]),
            ],
        ),
        // Lens picture: strands n, n between the folded vertices, pendant
        // m- and q-arcs, and the index-2 loop from the lens edge.
        Schema::R => (
            Ambient::RP3MinusBall,
            4,
            vec![
                edge(0, 1, e[0]),
                edge(0, 1, e[0]),
                edge(0, 2, e[1]),
                edge(1, 3, e[2]),
                edge(2, 3, L2),
                edge(2, 3, L2),
            ],
        ),
    };

    // Fatness per instance: infinite labels force fat edges, fat edges and
    // non-spherical label triples force fat vertices.
    let edge_fat: Vec<bool> = template
        .iter()
        .map(|t| !matches!(t.label, ExtIndex::Finite(_)))
        .collect();
    let mut vertices: Vec<SingularVertex> = (0..n_vertices)
        .map(|id| SingularVertex { id, fat: false })
        .collect();
    for (t, &fat) in template.iter().zip(&edge_fat) {
        if fat {
            if let Some((a, b)) = t.endpoints {
                vertices[a].fat = true;
                vertices[b].fat = true;
            }
        }
    }
    let graph_probe = SingularGraph {
        ambient,
        vertices: vertices.clone(),
        edges: template
            .iter()
            .zip(&edge_fat)
            .map(|(t, &fat)| SingularEdge {
                endpoints: t.endpoints,
                label: t.label,
                fat,
                fiber: t.fiber,
            })
            .collect(),
    };
    for v in &mut vertices {
        if !v.fat && !spherical_triple(&graph_probe.incident_labels(v.id)) {
            v.fat = true;
        }
    }
    let graph = SingularGraph { vertices, ..graph_probe };

    let vertex_decodings = graph
        .vertices
        .iter()
        .map(|v| {
            let l = graph.incident_labels(v.id);
            decode_vertex(l[0], l[1], l[2])
        })
        .collect();
    let edge_decodings = graph.edges.iter().map(|e| decode_edge(e.label)).collect();
    OrbifoldDescriptor { graph, vertex_decodings, edge_decodings }
}

impl SingularGraph {
    /// Renderer-agnostic node/edge record stream: one JSON object per
    /// line, for external drawing tools.
    pub fn to_json_records(&self) -> String {
        let mut s = format!("{{\"kind\":\"ambient\",\"space\":\"{}\"}}\n", self.ambient);
        for v in &self.vertices {
            s.push_str(&format!(
                "{{\"kind\":\"vertex\",\"id\":{},\"fat\":{}}}\n",
                v.id, v.fat
            ));
        }
        for e in &self.edges {
            let ends = match e.endpoints {
                Some((a, b)) => format!("\"endpoints\":[{a},{b}]"),
                None => "\"circle\":true".to_string(),
            };
            let fiber = match e.fiber {
                Some(Fiber::Regular) => ",\"fiber\":\"regular\"",
                Some(Fiber::Critical) => ",\"fiber\":\"critical\"",
                None => "",
            };
            s.push_str(&format!(
                "{{\"kind\":\"edge\",{ends},\"label\":\"{}\",\"fat\":{}{fiber}}}\n",
                e.label, e.fat
            ));
        }
        s
    }

    /// Plain edge-list export: one record per line.
    pub fn to_edge_list_text(&self) -> String {
        let mut s = format!("ambient {}\n", self.ambient);
        for v in &self.vertices {
            s.push_str(&format!(
                "vertex {} {}\n",
                v.id,
                if v.fat { "fat" } else { "plain" }
            ));
        }
        for e in &self.edges {
            let ends = match e.endpoints {
                Some((a, b)) => format!("{a} {b}"),
                None => "circle".to_string(),
            };
            let fiber = match e.fiber {
                Some(Fiber::Regular) => " fiber=regular",
                Some(Fiber::Critical) => " fiber=critical",
                None => "",
            };
            s.push_str(&format!(
                "edge {ends} label={} {}{}\n",
                e.label,
                if e.fat { "fat" } else { "plain" },
                fiber
            ));
        }
        s
    }
}
