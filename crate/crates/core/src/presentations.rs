//! The ten presentation schemas and the family → presentation mapping,
//! with relator-dropping conventions and generator words in f, g.
//!
//! Exponents may be integers, ∞ or ∞̄. Relators with exponent ∞̄ are
//! removed (the element is hyperbolic in the Kleinian group); relators
//! with exponent ∞ mark parabolics and survive only in the Kleinian form
//! of the presentation.
//!
//! Words are integer-exponent sequences over a fixed alphabet with free
//! cancellation only; the verifier evaluates them on matrices, so no
//! group-theoretic simplification is wanted.

use std::fmt;

use crate::classifier::{Family, FamilyMatch};
use crate::config::{Config, P11Convention};
use crate::indices::ExtIndex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    /// The match lacks an index the mapping needs, or an index fails the
    /// extended-division rule.
    UnmappedFamily(String),
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::UnmappedFamily(msg) => write!(f, "unmapped family: {msg}"),
        }
    }
}

impl std::error::Error for PresentationError {}

/// Presentation schema identifiers.
///
/// `Tet3` is the shorthand Tet[n,m;q] for Tet[2,2,n;2,q,m]; `Tet6` is the
/// full six-index form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Schema {
    GT,
    PH,
    H,
    P,
    Tet6,
    Tet3,
    GTet1,
    GTet2,
    S2,
    S3,
    R,
}

pub const ALL_SCHEMAS: [Schema; 11] = [
    Schema::GT,
    Schema::PH,
    Schema::H,
    Schema::P,
    Schema::Tet6,
    Schema::Tet3,
    Schema::GTet1,
    Schema::GTet2,
    Schema::S2,
    Schema::S3,
    Schema::R,
];

impl Schema {
    pub fn name(self) -> &'static str {
        match self {
            Schema::GT => "GT",
            Schema::PH => "PH",
            Schema::H => "H",
            Schema::P => "P",
            Schema::Tet6 | Schema::Tet3 => "Tet",
            Schema::GTet1 => "GTet1",
            Schema::GTet2 => "GTet2",
            Schema::S2 => "S2",
            Schema::S3 => "S3",
            Schema::R => "R",
        }
    }

    pub fn generators(self) -> &'static [&'static str] {
        match self {
            Schema::GT => &["f", "g"],
            Schema::PH => &["x", "y", "z"],
            Schema::H => &["x", "y", "s"],
            Schema::P => &["w", "x", "y", "z"],
            Schema::Tet6 | Schema::Tet3 => &["x", "y", "z"],
            Schema::GTet1 | Schema::GTet2 => &["x", "y", "z"],
            Schema::S2 | Schema::S3 => &["x", "L"],
            Schema::R => &["u", "v"],
        }
    }

    /// Number of exponent slots in the bracket.
    pub fn arity(self) -> usize {
        match self {
            Schema::Tet6 => 6,
            Schema::H => 4,
            _ => 3,
        }
    }

    /// Positions of the `;` separators in the bracket, matching the
    /// printed forms GT[n,m;q], H[p;n,m;q], Tet[…;…], R[n,m;q].
    fn semicolons(self) -> &'static [usize] {
        match self {
            Schema::GT | Schema::Tet3 | Schema::R => &[2],
            Schema::H => &[1, 3],
            Schema::Tet6 => &[3],
            _ => &[],
        }
    }
}

/// A word over schema generators: letters with integer powers.
pub type Word = Vec<(usize, i32)>;

/// Exponent of an instantiated relator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelExp {
    /// The word itself is a relator (printed without an exponent).
    One,
    Idx(ExtIndex),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relator {
    pub word: Word,
    pub exponent: RelExp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Fixed(u32),
    At(usize),
    One,
}

fn templates(schema: Schema) -> Vec<(Word, Slot)> {
    use Slot::*;
    let w = |letters: &[(usize, i32)]| letters.to_vec();
    match schema {
        Schema::GT => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(1, 1)]), At(1)),
            (w(&[(0, 1), (1, 1), (0, -1), (1, -1)]), At(2)),
        ],
        Schema::PH => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(1, 1)]), Fixed(2)),
            (w(&[(2, 1)]), Fixed(2)),
            (w(&[(0, 1), (2, 1)]), Fixed(2)),
            (w(&[(0, 1), (1, 1), (0, -1), (1, -1)]), At(1)),
            (w(&[(1, 1), (0, 1), (1, 1), (2, 1)]), At(2)),
        ],
        Schema::H => vec![
            (w(&[(2, 1)]), Fixed(2)),
            (w(&[(0, 1)]), At(1)),
            (w(&[(1, 1)]), At(2)),
            (w(&[(0, 1), (1, -1)]), At(0)),
            (w(&[(2, 1), (0, 1), (2, 1), (1, -1)]), At(3)),
            (w(&[(2, 1), (0, -1), (1, 1)]), Fixed(2)),
        ],
        Schema::P => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(1, 1)]), Fixed(2)),
            (w(&[(2, 1)]), Fixed(2)),
            (w(&[(3, 1)]), Fixed(2)),
            (w(&[(0, 1), (1, 1)]), Fixed(2)),
            (w(&[(0, 1), (2, 1)]), Fixed(2)),
            (w(&[(2, 1), (3, 1)]), Fixed(2)),
            (w(&[(3, 1), (1, 1)]), At(2)),
            (w(&[(3, 1), (0, 1)]), At(1)),
        ],
        Schema::Tet6 => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(1, 1)]), At(1)),
            (w(&[(2, 1)]), At(2)),
            (w(&[(1, 1), (2, -1)]), At(3)),
            (w(&[(2, 1), (0, -1)]), At(4)),
            (w(&[(0, 1), (1, -1)]), At(5)),
        ],
        // Tet[n,m;q] = Tet[2,2,n;2,q,m] with slots [n,m,q].
        Schema::Tet3 => vec![
            (w(&[(0, 1)]), Fixed(2)),
            (w(&[(1, 1)]), Fixed(2)),
            (w(&[(2, 1)]), At(0)),
            (w(&[(1, 1), (2, -1)]), Fixed(2)),
            (w(&[(2, 1), (0, -1)]), At(2)),
            (w(&[(0, 1), (1, -1)]), At(1)),
        ],
        Schema::GTet1 => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(1, 1)]), Fixed(2)),
            (w(&[(0, 1), (1, 1)]), At(1)),
            (w(&[(1, 1), (2, 1), (1, -1), (2, -1)]), At(2)),
            (w(&[(0, 1), (2, 1), (0, -1), (2, -1)]), One),
        ],
        Schema::GTet2 => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(1, 1)]), Fixed(2)),
            (w(&[(0, 1), (1, 1)]), At(1)),
            (w(&[(0, 1), (2, -1), (1, -1), (2, 1), (1, 1)]), At(2)),
            (w(&[(0, 1), (2, 1), (0, -1), (2, -1)]), One),
        ],
        Schema::S2 => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(0, 1), (1, 1), (0, 1), (1, -1)]), At(1)),
            (w(&[(0, 1), (1, 2), (0, -1), (1, -2)]), At(2)),
        ],
        Schema::S3 => vec![
            (w(&[(0, 1)]), At(0)),
            (w(&[(0, 1), (1, 1), (0, 1), (1, -1)]), At(1)),
            (w(&[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, -2)]), At(2)),
        ],
        Schema::R => vec![
            (w(&[(0, 1), (1, 1)]), At(0)),
            (w(&[(0, 1), (1, -1)]), At(1)),
            (w(&[(0, 1), (1, 1), (0, -1), (1, -1)]), At(2)),
        ],
    }
}

/// Kleinian presentations keep exponent-∞ relators as parabolic markers;
/// abstract presentations drop them too.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Kleinian,
    Abstract,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PresentationInstance {
    pub schema: Schema,
    pub exponents: Vec<ExtIndex>,
    pub form: Form,
    pub relators: Vec<Relator>,
}

impl PresentationInstance {
    pub fn new(schema: Schema, exponents: Vec<ExtIndex>, form: Form) -> Self {
        assert_eq!(exponents.len(), schema.arity());
        let relators = templates(schema)
            .into_iter()
            .filter_map(|(word, slot)| {
                let exponent = match slot {
                    Slot::Fixed(k) => RelExp::Idx(ExtIndex::Finite(k)),
                    Slot::At(i) => RelExp::Idx(exponents[i]),
                    Slot::One => RelExp::One,
                };
                match exponent {
                    RelExp::Idx(ExtIndex::InfBar) => None,
                    RelExp::Idx(ExtIndex::Inf) if form == Form::Abstract => None,
                    _ => Some(Relator { word, exponent }),
                }
            })
            .collect();
        PresentationInstance { schema, exponents, form, relators }
    }

    pub fn to_abstract(&self) -> Self {
        PresentationInstance::new(self.schema, self.exponents.clone(), Form::Abstract)
    }

    pub fn generators(&self) -> &'static [&'static str] {
        self.schema.generators()
    }

    /// Bracket name, e.g. `Tet[3,inf_bar;5]` or `H[2;2,3;5]`.
    pub fn name_text(&self) -> String {
        let mut s = String::from(self.schema.name());
        s.push('[');
        let semis = self.schema.semicolons();
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                s.push(if semis.contains(&i) { ';' } else { ',' });
            }
            s.push_str(&e.as_str());
        }
        s.push(']');
        s
    }

    fn word_text(&self, word: &Word) -> String {
        let gens = self.generators();
        let mut s = String::new();
        for &(g, p) in word {
            s.push_str(gens[g]);
            if p != 1 {
                s.push('^');
                s.push_str(&p.to_string());
            }
        }
        s
    }

    fn relator_text(&self, r: &Relator) -> String {
        let body = self.word_text(&r.word);
        match r.exponent {
            RelExp::One => body,
            RelExp::Idx(ExtIndex::Finite(1)) => body,
            RelExp::Idx(e) => {
                if r.word.len() == 1 && r.word[0].1 == 1 {
                    format!("{body}^{e}")
                } else {
                    format!("({body})^{e}")
                }
            }
        }
    }

    /// Canonical text `NAME[e1,...;ek] = < gens | relators >`.
    pub fn text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.relator_text(r)).collect();
        format!(
            "{} = < {} | {} >",
            self.name_text(),
            self.generators().join(", "),
            rels.join(", ")
        )
    }
}

fn need_t_u(m: &FamilyMatch) -> Result<ExtIndex, PresentationError> {
    m.t_u()
        .ok_or_else(|| PresentationError::UnmappedFamily(format!("{} match lacks t(u)", m.family)))
}

fn need_t_v(m: &FamilyMatch) -> Result<ExtIndex, PresentationError> {
    m.t_v()
        .ok_or_else(|| PresentationError::UnmappedFamily(format!("{} match lacks t(v)", m.family)))
}

fn need_m(m: &FamilyMatch) -> Result<ExtIndex, PresentationError> {
    m.m
        .ok_or_else(|| PresentationError::UnmappedFamily(format!("{} match lacks m", m.family)))
}

fn halve(e: ExtIndex, what: &str) -> Result<ExtIndex, PresentationError> {
    e.div_exact(2)
        .ok_or_else(|| PresentationError::UnmappedFamily(format!("{what} = {e} is not even")))
}

/// The family → presentation mapping of the classification theorems.
///
/// Returns the Kleinian form; `.to_abstract()` strips parabolic markers.
pub fn presentation_of(
    m: &FamilyMatch,
    cfg: &Config,
) -> Result<PresentationInstance, PresentationError> {
    use ExtIndex::{Finite, InfBar};
    let n = Finite(m.n);
    let inst = |schema, exps: Vec<ExtIndex>| PresentationInstance::new(schema, exps, Form::Kleinian);
    let out = match m.family {
        Family::D1 => {
            let tu = need_t_u(m)?;
            if tu.is_odd() {
                inst(Schema::Tet3, vec![n, InfBar, tu])
            } else {
                inst(Schema::GT, vec![n, InfBar, halve(tu, "t(u)")?])
            }
        }
        Family::D2 => inst(Schema::Tet3, vec![n, need_t_u(m)?, Finite(3)]),
        Family::D3 => inst(Schema::Tet3, vec![Finite(3), need_t_u(m)?, Finite(5)]),
        Family::P1 => {
            let tu2 = halve(need_t_u(m)?, "t(u)")?;
            let tv = need_t_v(m)?;
            if tv.is_odd() {
                inst(Schema::PH, vec![n, tu2, tv])
            } else {
                inst(Schema::S2, vec![n, tu2, halve(tv, "t(v)")?])
            }
        }
        Family::P2 => {
            let tu = need_t_u(m)?;
            let tv = need_t_v(m)?;
            if tv.is_odd() {
                inst(Schema::P, vec![n, tu, tv])
            } else {
                inst(Schema::GTet1, vec![n, tu, halve(tv, "t(v)")?])
            }
        }
        Family::P3 => inst(Schema::Tet3, vec![Finite(4), need_m(m)?, Finite(3)]),
        Family::P4 => inst(
            Schema::S3,
            vec![n, halve(need_t_u(m)?, "t(u)")?, need_t_v(m)?],
        ),
        Family::P5 => inst(Schema::GTet2, vec![n, need_t_u(m)?, need_t_v(m)?]),
        Family::P6 => inst(Schema::GTet2, vec![n, Finite(3), need_t_v(m)?]),
        Family::P7 => inst(Schema::H, vec![Finite(2), Finite(3), n, Finite(2)]),
        Family::P8 => inst(Schema::R, vec![n, Finite(2), Finite(2)]),
        Family::P9 => inst(Schema::GTet1, vec![need_m(m)?, Finite(3), Finite(2)]),
        Family::P10 => {
            let m2 = halve(need_m(m)?, "m")?;
            inst(
                Schema::Tet6,
                vec![Finite(2), Finite(3), Finite(3), Finite(2), Finite(3), m2],
            )
        }
        Family::P11 => {
            let mm = need_m(m)?;
            if mm.is_odd() {
                inst(Schema::Tet3, vec![Finite(4), mm, Finite(3)])
            } else {
                let first = match cfg.p11_convention {
                    P11Convention::Proof => halve(mm, "m")?,
                    P11Convention::Theorem => mm,
                };
                inst(Schema::H, vec![first, Finite(3), Finite(3), Finite(2)])
            }
        }
        Family::P12 | Family::P13 | Family::P15 | Family::P19 => {
            inst(Schema::H, vec![Finite(2), Finite(2), Finite(3), Finite(5)])
        }
        Family::P14 => inst(Schema::Tet3, vec![Finite(4), Finite(5), Finite(3)]),
        Family::P16 => inst(Schema::Tet3, vec![Finite(3), Finite(3), Finite(5)]),
        Family::P17 | Family::P18 => {
            inst(Schema::H, vec![Finite(2), Finite(2), Finite(5), Finite(3)])
        }
    };
    Ok(out)
}

/// The two-letter alphabet of generator words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fg {
    F,
    G,
}

/// A word in f, g with integer exponents; reduction is free cancellation.
pub type FgWord = Vec<(Fg, i64)>;

pub fn fg_reduce(word: &[(Fg, i64)]) -> FgWord {
    let mut out: FgWord = Vec::with_capacity(word.len());
    for &(l, p) in word {
        if p == 0 {
            continue;
        }
        match out.last_mut() {
            Some((last, lp)) if *last == l => {
                *lp += p;
                if *lp == 0 {
                    out.pop();
                }
            }
            _ => out.push((l, p)),
        }
    }
    out
}

pub fn fg_concat(parts: &[&[(Fg, i64)]]) -> FgWord {
    let mut out = Vec::new();
    for part in parts {
        out.extend_from_slice(part);
    }
    fg_reduce(&out)
}

pub fn fg_inverse(word: &[(Fg, i64)]) -> FgWord {
    let mut out: FgWord = word.iter().rev().map(|&(l, p)| (l, -p)).collect();
    out = fg_reduce(&out);
    out
}

pub fn fg_pow(word: &[(Fg, i64)], k: i64) -> FgWord {
    if k == 0 {
        return Vec::new();
    }
    let base = if k < 0 { fg_inverse(word) } else { fg_reduce(word) };
    let mut out = Vec::new();
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    fg_reduce(&out)
}

/// Letterwise f ↦ f⁻¹, g ↦ g⁻¹ (conjugation by a half-turn inverting both
/// generator axes), order preserved.
fn fg_bar(word: &[(Fg, i64)]) -> FgWord {
    word.iter().map(|&(l, p)| (l, -p)).collect()
}

fn f(p: i64) -> FgWord {
    vec![(Fg::F, p)]
}

fn g(p: i64) -> FgWord {
    vec![(Fg::G, p)]
}

pub fn fg_text(word: &[(Fg, i64)]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut s = String::new();
    for &(l, p) in word {
        s.push(match l {
            Fg::F => 'f',
            Fg::G => 'g',
        });
        if p != 1 {
            s.push('^');
            s.push_str(&p.to_string());
        }
    }
    s
}

/// Extract the half-turn e from an odd relator (we)^ell = 1, where e
/// inverts both f and g: since (we)² = w·w̄, e = (w·w̄)^{(ell−1)/2}·w.
fn halfturn_from_odd_relator(w: &[(Fg, i64)], ell: u32) -> FgWord {
    debug_assert!(ell % 2 == 1);
    let wbar = fg_bar(w);
    let pair = fg_concat(&[w, &wbar]);
    fg_concat(&[&fg_pow(&pair, ((ell - 1) / 2) as i64), w])
}

/// The involution word shared by the P2/P5 constructions: from
/// (fv)^m = (fgfg⁻¹)^{(m−1)/2}·fv with m odd, v = (fgfg⁻¹)^{(m−1)/2}·f.
fn v_from_odd_m(m: u32) -> FgWord {
    debug_assert!(m % 2 == 1);
    let fgfg = fg_concat(&[&f(1), &g(1), &f(1), &g(-1)]);
    fg_concat(&[&fg_pow(&fgfg, ((m - 1) / 2) as i64), &f(1)])
}

fn modular_inverse(a: u32, n: u32) -> Option<u32> {
    (1..n).find(|&k| (a as u64 * k as u64) % n as u64 == 1)
}

/// Map from presentation generators to explicit words in f, g.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorWordTable {
    /// One entry per schema generator, in order; None where the proof
    /// supplies no word.
    pub words: Vec<Option<FgWord>>,
    pub total: bool,
}

impl GeneratorWordTable {
    fn total_table(words: Vec<FgWord>) -> Self {
        GeneratorWordTable { words: words.into_iter().map(Some).collect(), total: true }
    }

    fn partial_table(words: Vec<Option<FgWord>>) -> Self {
        GeneratorWordTable { words, total: false }
    }

    fn empty(n_gens: usize) -> Self {
        GeneratorWordTable { words: vec![None; n_gens], total: false }
    }

    pub fn missing<'a>(&self, gens: &'a [&'a str]) -> Vec<&'a str> {
        gens.iter()
            .zip(&self.words)
            .filter_map(|(&name, w)| w.is_none().then_some(name))
            .collect()
    }
}

fn finite_odd(e: ExtIndex) -> Option<u32> {
    match e {
        ExtIndex::Finite(k) if k % 2 == 1 => Some(k),
        _ => None,
    }
}

/// Generator words for the presentation of a match, where the proofs
/// supply them; elsewhere the table is partial and lists exactly which
/// generators lack f,g-words.
pub fn generator_words(
    m: &FamilyMatch,
    cfg: &Config,
) -> Result<GeneratorWordTable, PresentationError> {
    let pres = presentation_of(m, cfg)?;
    let n = m.n;
    let table = match (m.family, pres.schema) {
        (Family::D1, Schema::GT) => GeneratorWordTable::total_table(vec![f(1), g(1)]),
        (Family::D1, Schema::Tet3) => {
            // e = (fgf⁻¹g⁻¹)^{(p−1)/2} fg, then x ↦ ge, y ↦ e, z ↦ f.
            let p = finite_odd(need_t_u(m)?).ok_or_else(|| {
                PresentationError::UnmappedFamily("D1 odd branch needs odd t(u)".into())
            })?;
            let e = halfturn_from_odd_relator(&fg_concat(&[&f(1), &g(1)]), p);
            GeneratorWordTable::total_table(vec![fg_concat(&[&g(1), &e]), e, f(1)])
        }
        (Family::D2, Schema::Tet3) | (Family::D3, Schema::Tet3)
            if matches!(m.family, Family::D2 | Family::D3) =>
        {
            // h is the square root of [f,g] of odd order k (k = n for D2,
            // k = 5 for D3), so h = [f,g]^{−(k−1)/2} and the primitive
            // x with x² = h is x = h^{−(k−1)/2}. The bisector rotation
            // satisfies R_α R_κ = x, so s = (R_ω R_κ)² = (f⁻¹x)² and the
            // tetrahedron generators are x ↦ s⁻¹f⁻¹ = x⁻¹fx⁻¹, y ↦ fe = hg,
            // z ↦ f.
            let k = if m.family == Family::D2 { n } else { 5 };
            let comm = fg_concat(&[&f(1), &g(1), &f(-1), &g(-1)]);
            let h = fg_pow(&comm, -(((k - 1) / 2) as i64));
            let x_el = fg_pow(&h, -(((k - 1) / 2) as i64));
            let x_word = fg_concat(&[&fg_inverse(&x_el), &f(1), &fg_inverse(&x_el)]);
            let y_word = fg_concat(&[&h, &g(1)]);
            GeneratorWordTable::total_table(vec![x_word, y_word, f(1)])
        }
        (Family::P1, Schema::PH) => {
            // Relator (f^{n/2}g⁻¹fg·e)^ℓ with ℓ odd gives e, then
            // x ↦ f, y ↦ ge, z ↦ f^{n/2}e.
            let ell = finite_odd(need_t_v(m)?).ok_or_else(|| {
                PresentationError::UnmappedFamily("PH branch needs odd t(v)".into())
            })?;
            let w = fg_concat(&[&f((n / 2) as i64), &g(-1), &f(1), &g(1)]);
            let e = halfturn_from_odd_relator(&w, ell);
            GeneratorWordTable::total_table(vec![
                f(1),
                fg_concat(&[&g(1), &e]),
                fg_concat(&[&f((n / 2) as i64), &e]),
            ])
        }
        (Family::P1, Schema::S2) => {
            // L = e_g e_2 = g f^{n/2}.
            GeneratorWordTable::total_table(vec![f(1), fg_concat(&[&g(1), &f((n / 2) as i64)])])
        }
        (Family::P2, Schema::P) => {
            // z from (fz)^m, e from (z f^{n/2} e)^k, then w ↦ f,
            // x ↦ f^{n/2}e, y ↦ e_g z⁻¹ = g e z⁻¹, z ↦ z.
            let mm = finite_odd(need_t_u(m)?).ok_or_else(|| {
                PresentationError::UnmappedFamily("P row needs odd t(u)".into())
            })?;
            let k = finite_odd(need_t_v(m)?).ok_or_else(|| {
                PresentationError::UnmappedFamily("P row needs odd t(v)".into())
            })?;
            let z = fg_inverse(&v_from_odd_m(mm));
            let w = fg_concat(&[&z, &f((n / 2) as i64)]);
            let e = halfturn_from_odd_relator(&w, k);
            GeneratorWordTable::total_table(vec![
                f(1),
                fg_concat(&[&f((n / 2) as i64), &e]),
                fg_concat(&[&g(1), &e, &fg_inverse(&z)]),
                z,
            ])
        }
        (Family::P2, Schema::GTet1) => {
            // x ↦ f, y ↦ z, z ↦ u = z g f^{n/2}; z as in the P row.
            let mm = finite_odd(need_t_u(m)?).ok_or_else(|| {
                PresentationError::UnmappedFamily("GTet1 row needs odd t(u)".into())
            })?;
            let z = fg_inverse(&v_from_odd_m(mm));
            let u = fg_concat(&[&z, &g(1), &f((n / 2) as i64)]);
            GeneratorWordTable::total_table(vec![f(1), z, u])
        }
        (Family::P4, Schema::S3) => {
            // The construction gives e_g e_1 = g f^{−(n−1)/2}; the schema
            // generator is its inverse, which turns the printed relator
            // (xLxLxL⁻²)^q into the construction's (fL⁻¹fL⁻¹fL²)^q exactly.
            GeneratorWordTable::total_table(vec![
                f(1),
                fg_concat(&[&f(((n - 1) / 2) as i64), &g(-1)]),
            ])
        }
        (Family::P5, Schema::GTet2) => {
            // v = (fgfg⁻¹)^{(m−1)/2} f, u = v⁻¹ g f^{−(n−1)/2};
            // x ↦ f⁻¹, y ↦ v, z ↦ u⁻¹.
            let mm = finite_odd(need_t_u(m)?).ok_or_else(|| {
                PresentationError::UnmappedFamily("GTet2 row needs odd t(u)".into())
            })?;
            let v = v_from_odd_m(mm);
            let u = fg_concat(&[&fg_inverse(&v), &g(1), &f(-(((n - 1) / 2) as i64))]);
            GeneratorWordTable::total_table(vec![f(-1), v, fg_inverse(&u)])
        }
        (Family::P8, Schema::R) => {
            // v = e_1 e_g = f^{(n−1)/2} g⁻¹. Expanding h₃ = (R_{α'}e₁)²
            // with R_{α'} = gfg⁻¹ R_ω gives the word below; h̄₃ is its
            // cube root of order n, and the relator vuh̄₃ closes u.
            let inv3 = modular_inverse(3, n).ok_or_else(|| {
                PresentationError::UnmappedFamily("R row needs (n,3)=1".into())
            })?;
            let half = ((n - 1) / 2) as i64;
            let v = fg_concat(&[&f(half), &g(-1)]);
            let h3 = fg_concat(&[
                &g(1),
                &f(1),
                &g(-1),
                &f(-half),
                &g(-1),
                &f(1),
                &g(1),
                &f(-half),
            ]);
            let u = fg_concat(&[&fg_inverse(&v), &fg_pow(&h3, -(inv3 as i64))]);
            GeneratorWordTable::total_table(vec![u, v])
        }
        (Family::P6, Schema::GTet2) => {
            // Only the x-word is printed; the proof closes v, u by coset
            // enumeration.
            GeneratorWordTable::partial_table(vec![Some(f(-1)), None, None])
        }
        _ => GeneratorWordTable::empty(pres.generators().len()),
    };
    Ok(table)
}
