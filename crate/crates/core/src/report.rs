//! The machine-readable report (schema `report_v1`) and its
//! byte-deterministic serializers.
//!
//! Key order is fixed by construction and floats print with 17
//! significant digits in lowercase scientific notation, so two runs on
//! the same input produce identical bytes.

use crate::algebra::{axis_regime, classify_element, normalize_primitive, ParameterTriple, Regime};
use crate::classifier::{classify, Family, FamilyMatch, Verdict};
use crate::config::{Config, P11Convention};
use crate::indices::UPoint;
use crate::orbifolds::{orbifold_of, OrbifoldDescriptor};
use crate::presentations::{
    fg_text, generator_words, presentation_of, GeneratorWordTable, PresentationInstance,
};
use crate::verify::Certificate;

pub const REPORT_VERSION: &str = "report_v1";

/// 17 significant digits, lowercase scientific: the fixed float format of
/// every report and enumeration record.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    format!("{:.16e}", x)
}

/// Minimal JSON writer with explicit key order.
pub struct JsonWriter {
    out: String,
}

impl Default for JsonWriter {
    fn default() -> Self {
        Self::new()
    }
}

impl JsonWriter {
    pub fn new() -> Self {
        JsonWriter { out: String::new() }
    }

    pub fn finish(self) -> String {
        self.out
    }

    pub fn raw(&mut self, s: &str) {
        self.out.push_str(s);
    }

    pub fn string(&mut self, s: &str) {
        self.out.push('"');
        for ch in s.chars() {
            match ch {
                '"' => self.out.push_str("\\\""),
                '\\' => self.out.push_str("\\\\"),
                '\n' => self.out.push_str("\\n"),
                c if (c as u32) < 0x20 => {
                    self.out.push_str(&format!("\\u{:04x}", c as u32));
                }
                c => self.out.push(c),
            }
        }
        self.out.push('"');
    }

    pub fn number(&mut self, x: f64) {
        self.out.push_str(&fmt_f64(x));
    }
}

/// Everything `cmd_classify` and `cmd_verify` report about one input.
pub struct Report {
    pub raw: ParameterTriple,
    pub normalized: ParameterTriple,
    pub element_class: String,
    pub regime: Regime,
    pub verdict: Verdict,
    /// Per matched family: presentation (both forms), word table,
    /// orbifold descriptor.
    pub details: Vec<MatchDetail>,
    /// Per matched family: named certificates, when verification ran.
    pub certificates: Vec<(String, Certificate)>,
    pub notes: Vec<String>,
}

pub struct MatchDetail {
    pub family: Family,
    pub kleinian: PresentationInstance,
    pub abstract_form: PresentationInstance,
    pub words: GeneratorWordTable,
    pub orbifold: OrbifoldDescriptor,
}

/// Classify and assemble the full report (without certificates).
pub fn build_report(triple: &ParameterTriple, cfg: &Config) -> Report {
    let element_class = classify_element(triple.beta, cfg).to_string();
    let normalized = normalize_primitive(triple, cfg).unwrap_or_else(|_| triple.clone());
    let verdict = classify(triple, cfg);
    // P6 and P19 classify as discrete beyond the gamma window, where
    // axis_regime alone would report out of scope; a discrete verdict
    // fixes the regime by the sign of gamma.
    let regime = if verdict.is_discrete() {
        if normalized.gamma < 0.0 {
            Regime::DisjointCoplanar
        } else {
            Regime::IntersectingNonOrthogonal
        }
    } else {
        axis_regime(&normalized)
    };
    let mut details = Vec::new();
    let mut notes = Vec::new();
    if let Verdict::Discrete { matches } = &verdict {
        for m in matches {
            if m.family == Family::P11 {
                notes.push(
                    "P11: the theorem item admits m >= 5 with (m,4)=1 while the table row \
                     prints m >= 7; the m = 5 value coincides with row P14"
                        .to_string(),
                );
            }
            if m.family == Family::P10 {
                notes.push(
                    "P10: the theorem item prints Tet[2,3,3;2,3,m] with m >= 4, (m,3)=1; \
                     the last index here is the half m/2 of the table row's m, following \
                     the tetrahedron of the construction"
                        .to_string(),
                );
            }
            let kleinian = match presentation_of(m, cfg) {
                Ok(p) => p,
                Err(e) => {
                    notes.push(format!("{}: {e}", m.family));
                    continue;
                }
            };
            let words = match generator_words(m, cfg) {
                Ok(w) => w,
                Err(e) => {
                    notes.push(format!("{}: {e}", m.family));
                    continue;
                }
            };
            let orbifold = orbifold_of(&kleinian);
            details.push(MatchDetail {
                family: m.family,
                abstract_form: kleinian.to_abstract(),
                kleinian,
                words,
                orbifold,
            });
        }
    }
    Report {
        raw: triple.clone(),
        normalized,
        element_class,
        regime,
        verdict,
        details,
        certificates: Vec::new(),
        notes,
    }
}

fn write_triple(w: &mut JsonWriter, t: &ParameterTriple) {
    w.raw("{\"beta\":");
    w.number(t.beta);
    w.raw(",\"beta_prime\":");
    w.number(t.beta_prime);
    w.raw(",\"gamma\":");
    w.number(t.gamma);
    w.raw("}");
}

fn write_upoint(w: &mut JsonWriter, u: &UPoint) {
    match u {
        UPoint::Angle(p) => {
            w.raw("{\"kind\":\"angle\",\"p\":");
            w.raw(&p.to_string());
            w.raw("}");
        }
        UPoint::Zero => w.raw("{\"kind\":\"zero\"}"),
        UPoint::Positive(d) => {
            w.raw("{\"kind\":\"positive\",\"d\":");
            w.number(*d);
            w.raw("}");
        }
    }
}

fn write_match(w: &mut JsonWriter, m: &FamilyMatch) {
    w.raw("{\"family\":");
    w.string(&m.family.to_string());
    w.raw(",\"n\":");
    w.raw(&m.n.to_string());
    w.raw(",\"indices\":{");
    for (i, (name, idx)) in m.indices().iter().enumerate() {
        if i > 0 {
            w.raw(",");
        }
        w.string(name);
        w.raw(":");
        w.string(&idx.as_str());
    }
    w.raw("}");
    if let Some(u) = &m.u {
        w.raw(",\"u\":");
        write_upoint(w, u);
    }
    if let Some(v) = &m.v {
        w.raw(",\"v\":");
        write_upoint(w, v);
    }
    w.raw(",\"residual\":");
    w.number(m.residual);
    w.raw("}");
}

fn write_presentation(w: &mut JsonWriter, p: &PresentationInstance) {
    w.raw("{\"name\":");
    w.string(&p.name_text());
    w.raw(",\"text\":");
    w.string(&p.text());
    w.raw("}");
}

fn write_certificate(w: &mut JsonWriter, c: &Certificate) {
    w.raw("{\"pass\":");
    w.raw(if c.pass { "true" } else { "false" });
    w.raw(",\"entries\":[");
    for (i, e) in c.entries.iter().enumerate() {
        if i > 0 {
            w.raw(",");
        }
        w.raw("{\"check\":");
        w.string(&e.label);
        w.raw(",\"residual\":");
        w.number(e.residual);
        w.raw(",\"pass\":");
        w.raw(if e.pass { "true" } else { "false" });
        w.raw("}");
    }
    w.raw("],\"notes\":[");
    for (i, n) in c.notes.iter().enumerate() {
        if i > 0 {
            w.raw(",");
        }
        w.string(n);
    }
    w.raw("]}");
}

fn write_config(w: &mut JsonWriter, cfg: &Config) {
    w.raw("{\"eps_det\":");
    w.number(cfg.eps_det);
    w.raw(",\"eps_eq\":");
    w.number(cfg.eps_eq);
    w.raw(",\"eps_im\":");
    w.number(cfg.eps_im);
    w.raw(",\"eps_recog\":");
    w.number(cfg.eps_recog);
    w.raw(",\"eps_match\":");
    w.number(cfg.eps_match);
    w.raw(",\"eps_report\":");
    w.number(cfg.eps_report);
    w.raw(",\"eps_realize\":");
    w.number(cfg.eps_realize);
    w.raw(",\"eps_cert\":");
    w.number(cfg.eps_cert);
    w.raw(",\"eps_eig\":");
    w.number(cfg.eps_eig);
    w.raw(",\"u_tol\":");
    w.number(cfg.u_tol);
    w.raw(",\"int_window\":");
    w.number(cfg.int_window);
    w.raw(",\"p_max\":");
    w.raw(&cfg.p_max.to_string());
    w.raw(",\"n_max\":");
    w.raw(&cfg.n_max.to_string());
    w.raw(",\"p11_index_convention\":");
    w.string(match cfg.p11_convention {
        P11Convention::Proof => "proof",
        P11Convention::Theorem => "theorem",
    });
    w.raw("}");
}

impl Report {
    pub fn to_json(&self, cfg: &Config) -> String {
        let mut w = JsonWriter::new();
        w.raw("{\"report_version\":");
        w.string(REPORT_VERSION);
        w.raw(",\"tool\":{\"name\":\"kleinian-rp\",\"version\":");
        w.string(env!("CARGO_PKG_VERSION"));
        w.raw("},\"config\":");
        write_config(&mut w, cfg);
        w.raw(",\"input\":{\"raw\":");
        write_triple(&mut w, &self.raw);
        w.raw(",\"normalized\":");
        write_triple(&mut w, &self.normalized);
        w.raw(",\"element_class\":");
        w.string(&self.element_class);
        w.raw("},\"regime\":");
        match &self.regime {
            Regime::DisjointCoplanar => w.string("disjoint_coplanar"),
            Regime::IntersectingNonOrthogonal => w.string("intersecting_non_orthogonal"),
            Regime::OutOfScope(r) => {
                w.raw("{\"out_of_scope\":");
                w.string(r);
                w.raw("}");
            }
        }
        w.raw(",\"verdict\":{\"status\":");
        match &self.verdict {
            Verdict::Discrete { matches } => {
                w.string("discrete");
                w.raw(",\"matches\":[");
                for (i, m) in matches.iter().enumerate() {
                    if i > 0 {
                        w.raw(",");
                    }
                    write_match(&mut w, m);
                }
                w.raw("]");
            }
            Verdict::NotDiscrete { nearest, reason } => {
                w.string("not_discrete");
                if let Some(n) = nearest {
                    w.raw(",\"nearest\":");
                    write_match(&mut w, n);
                }
                if let Some(r) = reason {
                    w.raw(",\"reason\":");
                    w.string(r);
                }
            }
            Verdict::OutOfScope { reason } => {
                w.string("out_of_scope");
                w.raw(",\"reason\":");
                w.string(reason);
            }
        }
        w.raw("},\"presentations\":[");
        for (i, d) in self.details.iter().enumerate() {
            if i > 0 {
                w.raw(",");
            }
            w.raw("{\"family\":");
            w.string(&d.family.to_string());
            w.raw(",\"kleinian\":");
            write_presentation(&mut w, &d.kleinian);
            w.raw(",\"abstract\":");
            write_presentation(&mut w, &d.abstract_form);
            w.raw(",\"generator_words\":{\"complete\":");
            w.raw(if d.words.total { "true" } else { "false" });
            w.raw(",\"words\":{");
            let gens = d.kleinian.generators();
            let mut first = true;
            for (name, word) in gens.iter().zip(&d.words.words) {
                if let Some(word) = word {
                    if !first {
                        w.raw(",");
                    }
                    first = false;
                    w.string(name);
                    w.raw(":");
                    w.string(&fg_text(word));
                }
            }
            w.raw("},\"missing\":[");
            for (i, name) in d.words.missing(gens).iter().enumerate() {
                if i > 0 {
                    w.raw(",");
                }
                w.string(name);
            }
            w.raw("]},\"orbifold\":");
            write_orbifold(&mut w, &d.orbifold);
            w.raw("}");
        }
        w.raw("],\"certificates\":[");
        for (i, (name, cert)) in self.certificates.iter().enumerate() {
            if i > 0 {
                w.raw(",");
            }
            w.raw("{\"name\":");
            w.string(name);
            w.raw(",\"certificate\":");
            write_certificate(&mut w, cert);
            w.raw("}");
        }
        w.raw("],\"notes\":[");
        for (i, n) in self.notes.iter().enumerate() {
            if i > 0 {
                w.raw(",");
            }
            w.string(n);
        }
        w.raw("]}");
        let mut out = w.finish();
        out.push('\n');
        out
    }

    /// Human-readable rendering with the same information.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "input: beta={} beta'={} gamma={}\n",
            fmt_f64(self.raw.beta),
            fmt_f64(self.raw.beta_prime),
            fmt_f64(self.raw.gamma)
        ));
        if self.normalized != self.raw {
            s.push_str(&format!(
                "normalized: beta={} beta'={} gamma={}\n",
                fmt_f64(self.normalized.beta),
                fmt_f64(self.normalized.beta_prime),
                fmt_f64(self.normalized.gamma)
            ));
        }
        s.push_str(&format!("element class: {}\n", self.element_class));
        match &self.regime {
            Regime::DisjointCoplanar => s.push_str("regime: disjoint coplanar axes\n"),
            Regime::IntersectingNonOrthogonal => {
                s.push_str("regime: intersecting non-orthogonal axes\n")
            }
            Regime::OutOfScope(r) => s.push_str(&format!("regime: out of scope ({r})\n")),
        }
        match &self.verdict {
            Verdict::Discrete { matches } => {
                s.push_str("verdict: discrete\n");
                for m in matches {
                    s.push_str(&format!(
                        "match: {} n={} residual={}",
                        m.family,
                        m.n,
                        fmt_f64(m.residual)
                    ));
                    for (name, idx) in m.indices() {
                        s.push_str(&format!(" {name}={idx}"));
                    }
                    s.push('\n');
                }
            }
            Verdict::NotDiscrete { nearest, reason } => {
                s.push_str("verdict: not discrete\n");
                if let Some(r) = reason {
                    s.push_str(&format!("reason: {r}\n"));
                }
                if let Some(n) = nearest {
                    s.push_str(&format!(
                        "nearest: {} residual={}\n",
                        n.family,
                        fmt_f64(n.residual)
                    ));
                }
            }
            Verdict::OutOfScope { reason } => {
                s.push_str(&format!("verdict: out of scope ({reason})\n"));
            }
        }
        for d in &self.details {
            s.push_str(&format!("presentation[{}]: {}\n", d.family, d.kleinian.text()));
            s.push_str(&format!(
                "presentation[{}] abstract: {}\n",
                d.family,
                d.abstract_form.text()
            ));
            let gens = d.kleinian.generators();
            for (name, word) in gens.iter().zip(&d.words.words) {
                if let Some(word) = word {
                    s.push_str(&format!("word[{}] {} = {}\n", d.family, name, fg_text(word)));
                }
            }
            let missing = d.words.missing(gens);
            if !missing.is_empty() {
                s.push_str(&format!(
                    "word[{}] missing: {}\n",
                    d.family,
                    missing.join(", ")
                ));
            }
            s.push_str(&format!(
                "orbifold[{}]: ambient {}\n",
                d.family, d.orbifold.graph.ambient
            ));
            for line in d.orbifold.graph.to_edge_list_text().lines().skip(1) {
                s.push_str(&format!("orbifold[{}]: {line}\n", d.family));
            }
            for (v, dec) in d.orbifold.graph.vertices.iter().zip(&d.orbifold.vertex_decodings) {
                s.push_str(&format!("orbifold[{}]: vertex {} -> {dec}\n", d.family, v.id));
            }
        }
        for (name, cert) in &self.certificates {
            s.push_str(&format!(
                "certificate[{name}]: {}\n",
                if cert.pass { "pass" } else { "FAIL" }
            ));
            for e in &cert.entries {
                s.push_str(&format!(
                    "  {} residual={} {}\n",
                    e.label,
                    fmt_f64(e.residual),
                    if e.pass { "ok" } else { "FAIL" }
                ));
            }
            for n in &cert.notes {
                s.push_str(&format!("  note: {n}\n"));
            }
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}

fn write_orbifold(w: &mut JsonWriter, o: &OrbifoldDescriptor) {
    w.raw("{\"ambient\":");
    w.string(&o.graph.ambient.to_string());
    w.raw(",\"vertices\":[");
    for (i, (v, dec)) in o
        .graph
        .vertices
        .iter()
        .zip(&o.vertex_decodings)
        .enumerate()
    {
        if i > 0 {
            w.raw(",");
        }
        w.raw("{\"id\":");
        w.raw(&v.id.to_string());
        w.raw(",\"fat\":");
        w.raw(if v.fat { "true" } else { "false" });
        w.raw(",\"decodes\":");
        w.string(&dec.to_string());
        w.raw("}");
    }
    w.raw("],\"edges\":[");
    for (i, (e, dec)) in o.graph.edges.iter().zip(&o.edge_decodings).enumerate() {
        if i > 0 {
            w.raw(",");
        }
        w.raw("{");
        match e.endpoints {
            Some((a, b)) => {
                w.raw("\"endpoints\":[");
                w.raw(&a.to_string());
                w.raw(",");
                w.raw(&b.to_string());
                w.raw("],");
            }
            None => w.raw("\"circle\":true,"),
        }
        w.raw("\"label\":");
        w.string(&e.label.as_str());
        w.raw(",\"fat\":");
        w.raw(if e.fat { "true" } else { "false" });
        if let Some(fiber) = e.fiber {
            w.raw(",\"fiber\":");
            w.string(match fiber {
                crate::orbifolds::Fiber::Regular => "regular",
                crate::orbifolds::Fiber::Critical => "critical",
            });
        }
        w.raw(",\"decodes\":");
        w.string(&dec.to_string());
        w.raw("}");
    }
    w.raw("]}");
}
