//! The standard finite presentation of `PSO(A_Γ)` and the structure that can
//! be read off it: Tietze eliminations, the `N_1 × N_2` and semidirect
//! generator splits, conjugation rewriting and HNN data.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId};
use crate::order::{leq, Side, TransvectionSpec};
use crate::pconj::{classify_pc, commutes, nontrivial_pcs, PartialConjugation, PcType};
use crate::sil::{Region, SilSystemDecomposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: usize,
    pub pc: PartialConjugation,
    pub name: String,
}

/// A freely reduced word over generator ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<(usize, i8)>,
}

impl GroupWord {
    /// Builds a word, cancelling adjacent inverse pairs.
    pub fn new(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (id, e) in letters {
            assert!(e == 1 || e == -1, "exponents are ±1");
            match out.last() {
                Some(&(last, le)) if last == id && le == -e => {
                    out.pop();
                }
                _ => out.push((id, e)),
            }
        }
        GroupWord { letters: out }
    }

    pub fn letter(id: usize) -> Self {
        GroupWord { letters: vec![(id, 1)] }
    }

    pub fn power(id: usize, e: i8) -> Self {
        GroupWord::new([(id, e)])
    }

    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|&(id, e)| (id, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        GroupWord::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a GroupWord>) -> Self {
        GroupWord::new(words.into_iter().flat_map(|w| w.letters.iter().copied()))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> Self {
        GroupWord::product([a, b, &a.inverse(), &b.inverse()])
    }

    /// `by · w · by⁻¹`.
    pub fn conjugate(by: &GroupWord, w: &GroupWord) -> Self {
        GroupWord::product([by, w, &by.inverse()])
    }

    /// Replaces every occurrence of each listed generator by a word.
    pub fn substitute(&self, subs: &[(usize, GroupWord)]) -> Self {
        let mut out = Vec::new();
        for &(id, e) in &self.letters {
            match subs.iter().find(|(s, _)| *s == id) {
                Some((_, w)) if e == 1 => out.extend_from_slice(&w.letters),
                Some((_, w)) => out.extend_from_slice(&w.inverse().letters),
                None => out.push((id, e)),
            }
        }
        GroupWord::new(out)
    }

    /// Space-separated `name^±1` letters; the empty word renders as `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|&(id, e)| format!("{}^{}", names[id], e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: u8,
    pub word: GroupWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsoPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub vertex: String,
    pub support: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LetterDoc {
    pub generator: String,
    pub exponent: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationDoc {
    pub family: u8,
    pub word: Vec<LetterDoc>,
}

/// Name-based, serializable form of a presentation.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationDoc {
    pub generators: Vec<GeneratorDoc>,
    pub relations: Vec<RelationDoc>,
}

/// Whether `P_v^C` and `P_w^D` fall under relation family 2 or 3.
fn family_2_or_3(p: &PartialConjugation, q: &PartialConjugation) -> Option<u8> {
    let (v, c, w, d) = (p.vertex, &p.support, q.vertex, &q.support);
    if c.is_disjoint(d) && !c.contains(w) && !d.contains(v) {
        return Some(2);
    }
    let mut vc = *c;
    vc.insert(v);
    let mut wd = *d;
    wd.insert(w);
    if vc.is_subset(d) || wd.is_subset(c) {
        return Some(3);
    }
    None
}

/// The relation family (1, 2 or 3) asserting that `p` and `q` commute, if
/// any applies.
pub fn commuting_family(g: &SimplicialGraph, p: &PartialConjugation, q: &PartialConjugation) -> Option<u8> {
    if p.vertex == q.vertex || g.adjacent(p.vertex, q.vertex) {
        Some(1)
    } else {
        family_2_or_3(p, q)
    }
}

/// Generators are the nontrivial partial conjugations by vertex and
/// component order. Relations of families 1 to 3 are listed per unordered
/// generator pair (first applicable family only), then family 4 by
/// `(P_v^C, P_w^D)` id pairs, then one family-5 product per vertex.
pub fn pso_presentation(g: &SimplicialGraph) -> PsoPresentation {
    let generators: Vec<Generator> = nontrivial_pcs(g)
        .into_iter()
        .enumerate()
        .map(|(id, pc)| Generator {
            id,
            name: pc.name(g),
            pc,
        })
        .collect();
    let mut relations = Vec::new();
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i + 1..] {
            if let Some(family) = commuting_family(g, &a.pc, &b.pc) {
                relations.push(Relation {
                    family,
                    word: GroupWord::commutator(&GroupWord::letter(a.id), &GroupWord::letter(b.id)),
                });
            }
        }
    }
    let find = |v: VertexId, support| {
        generators
            .iter()
            .find(|x| x.pc.vertex == v && x.pc.support == support)
            .map(|x| x.id)
    };
    for vc in &generators {
        for wd in &generators {
            let (v, w) = (vc.pc.vertex, wd.pc.vertex);
            if v == w || !vc.pc.support.contains(w) || wd.pc.support.contains(v) {
                continue;
            }
            if let Some(vd) = find(v, wd.pc.support) {
                let left = GroupWord::new([(vc.id, 1), (vd, 1)]);
                relations.push(Relation {
                    family: 4,
                    word: GroupWord::commutator(&left, &GroupWord::letter(wd.id)),
                });
            }
        }
    }
    let mut i = 0;
    while i < generators.len() {
        let v = generators[i].pc.vertex;
        let j = generators[i..]
            .iter()
            .position(|x| x.pc.vertex != v)
            .map_or(generators.len(), |k| i + k);
        relations.push(Relation {
            family: 5,
            word: GroupWord::new((i..j).map(|id| (id, 1))),
        });
        i = j;
    }
    PsoPresentation {
        generators,
        relations,
    }
}

impl PsoPresentation {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|x| x.name.clone()).collect()
    }

    pub fn id_of(&self, pc: &PartialConjugation) -> Option<usize> {
        self.generators
            .iter()
            .find(|x| x.pc.vertex == pc.vertex && x.pc.support == pc.support)
            .map(|x| x.id)
    }

    pub fn id_by_name(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|x| x.name == name)
    }

    fn require(&self, pc: &PartialConjugation) -> Result<usize> {
        self.id_of(pc).ok_or_else(|| {
            Error::Input(format!(
                "{} is not a generator of the presentation",
                self_name(pc)
            ))
        })
    }

    /// Generator ids of one vertex, in component order.
    pub fn ids_of_vertex(&self, v: VertexId) -> Vec<usize> {
        self.generators
            .iter()
            .filter(|x| x.pc.vertex == v)
            .map(|x| x.id)
            .collect()
    }

    pub fn to_text(&self, g: &SimplicialGraph) -> String {
        let names = self.names();
        let mut out = String::new();
        for x in &self.generators {
            let members = g.set_names(&x.pc.support).join(", ");
            let _ = writeln!(out, "gen {} = ({}, {{{}}})", x.name, g.name(x.pc.vertex), members);
        }
        for r in &self.relations {
            let _ = writeln!(out, "rel {}: {}", r.family, r.word.render(&names));
        }
        out
    }

    /// GAP input: `F.i` is the `i`-th generator (1-based) in listing order.
    pub fn to_gap(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "F := FreeGroup({});", self.generators.len());
        for x in &self.generators {
            let _ = writeln!(out, "# F.{} = {}", x.id + 1, x.name);
        }
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| {
                if r.word.is_empty() {
                    return "One(F)".to_string();
                }
                r.word
                    .letters()
                    .iter()
                    .map(|&(id, e)| format!("F.{}^{}", id + 1, e))
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        if rels.is_empty() {
            out.push_str("rels := [];\n");
        } else {
            let _ = writeln!(out, "rels := [\n  {}\n];", rels.join(",\n  "));
        }
        out
    }

    pub fn to_doc(&self, g: &SimplicialGraph) -> PresentationDoc {
        let names = self.names();
        PresentationDoc {
            generators: self
                .generators
                .iter()
                .map(|x| GeneratorDoc {
                    name: x.name.clone(),
                    vertex: g.name(x.pc.vertex).to_string(),
                    support: g.set_names(&x.pc.support),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationDoc {
                    family: r.family,
                    word: word_doc(&r.word, &names),
                })
                .collect(),
        }
    }

    /// Removes the listed generators using the family-5 relation of their
    /// vertex: `a_m = (a_{m+1} ⋯ a_k a_1 ⋯ a_{m-1})⁻¹`. The base
    /// presentation is left untouched.
    pub fn tietze_view(&self, eliminate: &[usize]) -> Result<TietzeView> {
        let mut subs: Vec<(usize, GroupWord)> = Vec::new();
        let mut dropped_vertices = Vec::new();
        for &id in eliminate {
            let x = self
                .generators
                .get(id)
                .ok_or_else(|| Error::Input(format!("no generator with id {id}")))?;
            let v = x.pc.vertex;
            if dropped_vertices.contains(&v) {
                return Err(Error::Input(format!(
                    "two eliminations use the product relation of the same vertex ({})",
                    x.name
                )));
            }
            dropped_vertices.push(v);
            let ids = self.ids_of_vertex(v);
            let m = ids.iter().position(|&i| i == id).expect("generator of its vertex");
            let rotated = ids[m + 1..].iter().chain(&ids[..m]).map(|&i| (i, 1));
            subs.push((id, GroupWord::new(rotated).inverse()));
        }
        // Substitutions only reference generators of the same vertex, and at
        // most one per vertex is eliminated, so one pass suffices.
        let relations = self
            .relations
            .iter()
            .filter(|r| {
                !(r.family == 5
                    && r.word
                        .letters()
                        .first()
                        .is_some_and(|&(id, _)| dropped_vertices.contains(&self.generators[id].pc.vertex)))
            })
            .map(|r| Relation {
                family: r.family,
                word: r.word.substitute(&subs),
            })
            .filter(|r| !r.word.is_empty())
            .collect();
        let kept = (0..self.generators.len())
            .filter(|id| !eliminate.contains(id))
            .collect();
        Ok(TietzeView {
            kept,
            substitutions: subs,
            relations,
        })
    }
}

fn self_name(pc: &PartialConjugation) -> String {
    format!("P[#{}][{}]", pc.vertex.index(), pc.ordinal)
}

fn word_doc(w: &GroupWord, names: &[String]) -> Vec<LetterDoc> {
    w.letters()
        .iter()
        .map(|&(id, e)| LetterDoc {
            generator: names[id].clone(),
            exponent: e,
        })
        .collect()
}

/// A presentation with some generators expressed through the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeView {
    pub kept: Vec<usize>,
    pub substitutions: Vec<(usize, GroupWord)>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    N1n2,
    Semidirect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub generators: Vec<PartialConjugation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub kind: ReportKind,
    pub factors: Vec<Factor>,
    /// Dominant generators removed by Tietze elimination.
    pub excluded: Vec<PartialConjugation>,
    pub flags: Vec<Flag>,
}

impl DecompositionReport {
    pub fn factor(&self, name: &str) -> Option<&[PartialConjugation]> {
        self.factors
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.generators.as_slice())
    }
}

/// Nontrivial pcs with their classification.
pub fn typed_pcs(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
) -> Result<Vec<(PartialConjugation, PcType)>> {
    nontrivial_pcs(g)
        .into_iter()
        .map(|p| classify_pc(g, d, &p).map(|t| (p, t)))
        .collect()
}

/// Dominant generators that the product relations make redundant:
/// `P_v^{C_2}` for `v ∈ C_1`, and `P_v^{C_1}` for `v` in any other `C_i`.
pub fn is_excluded_dominant(d: &SilSystemDecomposition, p: &PartialConjugation) -> bool {
    match d.region(p.vertex) {
        Region::Shared(0) => d.shared_components.get(1) == Some(&p.support),
        Region::Shared(_) => d.shared_components[0] == p.support,
        _ => false,
    }
}

fn require_no_additional(d: &SilSystemDecomposition) -> Result<()> {
    if d.additional_components.is_empty() {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "the system has {} additional component(s)",
            d.additional_components.len()
        )))
    }
}

fn flag(name: &str, holds: bool, detail: impl Into<String>) -> Flag {
    Flag {
        name: name.into(),
        holds,
        detail: detail.into(),
    }
}

/// The `N_1`, `N_2` generator split for a system without additional
/// components and without subordinate partial conjugations.
pub fn n1n2_report(g: &SimplicialGraph, d: &SilSystemDecomposition) -> Result<DecompositionReport> {
    require_no_additional(d)?;
    let typed = typed_pcs(g, d)?;
    if let Some((p, _)) = typed.iter().find(|(_, t)| t.is_subordinate()) {
        return Err(Error::precondition(format!(
            "nontrivial subordinate partial conjugations exist (e.g. {})",
            p.name(g)
        )));
    }
    let mut n1 = Vec::new();
    let mut n2 = Vec::new();
    let mut excluded = Vec::new();
    for (p, t) in typed {
        if !t.is_dominant() {
            n2.push(p);
        } else if is_excluded_dominant(d, &p) {
            excluded.push(p);
        } else {
            n1.push(p);
        }
    }
    let flags = vec![
        flag("n1_nonempty", !n1.is_empty(), format!("{} generator(s)", n1.len())),
        flag("n2_nonempty", !n2.is_empty(), format!("{} generator(s)", n2.len())),
    ];
    Ok(DecompositionReport {
        kind: ReportKind::N1n2,
        factors: vec![
            Factor {
                name: "N1".into(),
                generators: n1,
            },
            Factor {
                name: "N2".into(),
                generators: n2,
            },
        ],
        excluded,
        flags,
    })
}

/// Checks that every nontrivial pc of a shared-component vertex is dominant
/// or subordinate, that every such vertex defines a subordinate pc, and that
/// every subordinate support contains another vertex defining one.
pub fn check_shared_vertex_hypothesis(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
    typed: &[(PartialConjugation, PcType)],
) -> Result<()> {
    let definers: Vec<VertexId> = typed
        .iter()
        .filter(|(_, t)| t.is_subordinate())
        .map(|(p, _)| p.vertex)
        .collect();
    for (p, t) in typed {
        if !matches!(d.region(p.vertex), Region::Shared(_)) {
            continue;
        }
        let v = g.name(p.vertex);
        if !(t.is_dominant() || t.is_subordinate()) {
            return Err(Error::precondition(format!(
                "vertex {v} defines {} of type {t}",
                p.name(g)
            )));
        }
        if !definers.contains(&p.vertex) {
            return Err(Error::precondition(format!(
                "vertex {v} has a disconnected star complement but defines no subordinate partial conjugation"
            )));
        }
        if t.is_subordinate() && !definers.iter().any(|&w| w != p.vertex && p.support.contains(w)) {
            return Err(Error::precondition(format!(
                "the support of {} contains no other vertex defining subordinate partial conjugations",
                p.name(g)
            )));
        }
    }
    Ok(())
}

/// Generator lists `G`, `H_3 … H_n`, `K` of the semidirect decomposition.
pub fn semidirect_report(g: &SimplicialGraph, d: &SilSystemDecomposition) -> Result<DecompositionReport> {
    let n = d.pivots().len();
    if n < 3 {
        return Err(Error::precondition(format!("need at least 3 pivots, found {n}")));
    }
    require_no_additional(d)?;
    let typed = typed_pcs(g, d)?;
    check_shared_vertex_hypothesis(g, d, &typed)?;

    let core_pcs: Vec<PartialConjugation> = typed
        .iter()
        .filter(|(p, _)| d.region(p.vertex) == Region::Core)
        .map(|(p, _)| *p)
        .collect();
    let subordinate: Vec<PartialConjugation> = typed
        .iter()
        .filter(|(_, t)| t.is_subordinate())
        .map(|(p, _)| *p)
        .collect();
    let dominant: Vec<PartialConjugation> = typed
        .iter()
        .filter(|(_, t)| t.is_dominant())
        .map(|(p, _)| *p)
        .collect();
    let region_index = |p: &PartialConjugation| match d.region(p.vertex) {
        Region::Shared(i) => i,
        _ => unreachable!("dominant pcs come from shared components"),
    };
    let support_index = |p: &PartialConjugation| {
        d.shared_components
            .iter()
            .position(|c| *c == p.support)
            .expect("dominant support is a shared component")
    };

    let mut factors = vec![Factor {
        name: "G".into(),
        generators: core_pcs,
    }];
    // Zero-based: H_k for k in 2..n collects P_{v_j}^{C_k} with j < k and
    // P_{v_k}^{C_j} with 1 ≤ j < k.
    for k in 2..n {
        let generators = dominant
            .iter()
            .filter(|p| {
                let (j, s) = (region_index(p), support_index(p));
                (s == k && j < k) || (j == k && (1..k).contains(&s))
            })
            .copied()
            .collect();
        factors.push(Factor {
            name: format!("H{}", k + 1),
            generators,
        });
    }
    factors.push(Factor {
        name: "K".into(),
        generators: subordinate,
    });
    let excluded = dominant
        .iter()
        .filter(|p| is_excluded_dominant(d, p))
        .copied()
        .collect();
    let g_nonempty = !factors[0].generators.is_empty();
    Ok(DecompositionReport {
        kind: ReportKind::Semidirect,
        factors,
        excluded,
        flags: vec![flag(
            "g_nonempty",
            g_nonempty,
            "partial conjugations defined by core vertices",
        )],
    })
}

fn check_exponent(e: i8) -> Result<()> {
    if e == 1 || e == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("exponent must be ±1, got {e}")))
    }
}

/// `x^e · q · x^{-e}` for generators `x = P_x^E` and `q = P_y^F`, written in
/// the presentation's generators.
///
/// Supported cases, tried in order:
/// * the two commute: the result is `q`;
/// * `y ∈ E`, `x ∉ F` and `F` is a component of `Γ − st(x)`: conjugate `q`
///   by `(P_x^F)^{∓1}`;
/// * `x ∈ F`, `y ∉ E` and `E` is a component of `Γ − st(y)`:
///   `P_y^F P_y^E (x^e P_y^E x^{-e})⁻¹`;
/// * `E = F`: conjugate `q` by the product `Q` of the other pcs of `x` that
///   do not commute with `q`, as `Q^{∓1} q Q^{±1}`.
///
/// Anything else is reported as [`Error::UnsupportedCase`].
pub fn conjugate_pc(
    g: &SimplicialGraph,
    pres: &PsoPresentation,
    conjugator: usize,
    exponent: i8,
    target: usize,
) -> Result<GroupWord> {
    check_exponent(exponent)?;
    let gen = |id: usize| {
        pres.generators
            .get(id)
            .map(|x| x.pc)
            .ok_or_else(|| Error::Input(format!("no generator with id {id}")))
    };
    let xp = gen(conjugator)?;
    let q = gen(target)?;
    let (x, e_set, y, f_set) = (xp.vertex, xp.support, q.vertex, q.support);
    let q_word = GroupWord::letter(target);

    if commuting_family(g, &xp, &q).is_some() || commutes(g, &xp, &q)? {
        return Ok(q_word);
    }
    let find = |v: VertexId, s| {
        pres.generators
            .iter()
            .find(|gx| gx.pc.vertex == v && gx.pc.support == s)
            .map(|gx| gx.id)
    };
    if e_set.contains(y) && !f_set.contains(x) {
        if let Some(xf) = find(x, f_set) {
            let by = GroupWord::power(xf, -exponent);
            return Ok(GroupWord::conjugate(&by, &q_word));
        }
    }
    if f_set.contains(x) && !e_set.contains(y) {
        if let Some(ye) = find(y, e_set) {
            let inner = conjugate_pc(g, pres, conjugator, exponent, ye)?;
            return Ok(GroupWord::new([(target, 1), (ye, 1)]).concat(&inner.inverse()));
        }
    }
    if e_set == f_set {
        let mut others = Vec::new();
        for id in pres.ids_of_vertex(x) {
            if id != conjugator && !commutes(g, &pres.generators[id].pc, &q)? {
                others.push((id, 1));
            }
        }
        let prod = GroupWord::new(others);
        let by = if exponent == 1 { prod.inverse() } else { prod };
        return Ok(GroupWord::conjugate(&by, &q_word));
    }
    Err(Error::UnsupportedCase(format!(
        "conjugating {} by {}^{}",
        pres.generators[target].name, pres.generators[conjugator].name, exponent
    )))
}

/// `τ^e · P_v^{D} · τ^{-e}` for a transvection `τ` and a generator whose
/// support is an additional component.
pub fn transvection_conjugate(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
    pres: &PsoPresentation,
    t: TransvectionSpec,
    exponent: i8,
    target: usize,
) -> Result<GroupWord> {
    check_exponent(exponent)?;
    if !leq(g, t.moved, t.by)? {
        return Err(Error::InvalidParameter(format!(
            "{} ≰ {}: not a transvection",
            g.name(t.moved),
            g.name(t.by)
        )));
    }
    let q = pres
        .generators
        .get(target)
        .ok_or_else(|| Error::Input(format!("no generator with id {target}")))?
        .pc;
    if !d.additional_components.contains(&q.support) {
        return Err(Error::precondition(format!(
            "the support of {} is not an additional component",
            pres.generators[target].name
        )));
    }
    let v = q.vertex;
    if t.by == v && !q.support.contains(t.moved) {
        return Ok(GroupWord::letter(target));
    }
    if t.moved == v && d.core_in_link(g, v) {
        let a = t.by;
        let Some(ad) = pres
            .generators
            .iter()
            .find(|x| x.pc.vertex == a && x.pc.support == q.support)
            .map(|x| x.id)
        else {
            return Err(Error::UnsupportedCase(format!(
                "{} does not define a partial conjugation of the target support",
                g.name(a)
            )));
        };
        let word = match (t.side, exponent) {
            (Side::Right, 1) => [(ad, 1), (target, 1)],
            (Side::Right, _) => [(ad, -1), (target, 1)],
            (Side::Left, 1) => [(target, 1), (ad, 1)],
            (Side::Left, _) => [(target, 1), (ad, -1)],
        };
        return Ok(GroupWord::new(word));
    }
    Err(Error::UnsupportedCase(format!(
        "transvection ({}, {}) acting on {}",
        g.name(t.moved),
        g.name(t.by),
        pres.generators[target].name
    )))
}

/// One rewritten conjugate `t a t⁻¹ = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRelation {
    pub generator: usize,
    pub lhs: GroupWord,
    pub rhs: GroupWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnData {
    pub stable_letter: usize,
    pub base_generators: Vec<usize>,
    pub associated_generators: Vec<usize>,
    /// Conjugates of the associated generators by the stable letter.
    pub t_relations: Vec<TRelation>,
    /// Conjugates of the remaining base generators, computed as a
    /// completeness check of the rewriting rules.
    pub base_conjugates: Vec<TRelation>,
}

/// HNN splitting of `PSO(A_Γ)` for a three-pivot system with stable letter
/// `P_{w_1}^{C_3}`.
pub fn hnn_data(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
    pres: &PsoPresentation,
) -> Result<HnnData> {
    let report = semidirect_report(g, d)?;
    if d.pivots().len() != 3 {
        return Err(Error::precondition(format!(
            "need exactly 3 pivots, found {}",
            d.pivots().len()
        )));
    }
    let w1 = d.pivots()[0];
    let c1 = d.shared_components[0];
    let c3 = d.shared_components[2];
    let t = pres
        .generators
        .iter()
        .find(|x| x.pc.vertex == w1 && x.pc.support == c3)
        .map(|x| x.id)
        .ok_or_else(|| Error::precondition("the first pivot defines no partial conjugation of C_3"))?;

    let ids = |pcs: &[PartialConjugation]| -> Result<Vec<usize>> {
        pcs.iter().map(|p| pres.require(p)).collect()
    };
    let mut base = Vec::new();
    for f in &report.factors {
        base.extend(ids(&f.generators)?);
    }
    base.retain(|&id| id != t);
    base.sort_unstable();
    base.dedup();

    let h3 = report.factor("H3").unwrap_or(&[]);
    let mut associated: Vec<usize> = ids(report.factor("K").unwrap_or(&[]))?;
    associated.extend(ids(report.factor("G").unwrap_or(&[]))?);
    for p in h3 {
        if c1.contains(p.vertex) && p.support == c3 {
            associated.push(pres.require(p)?);
        }
    }
    associated.retain(|&id| id != t);
    associated.sort_unstable();
    associated.dedup();

    let rel = |a: usize| -> Result<TRelation> {
        Ok(TRelation {
            generator: a,
            lhs: GroupWord::conjugate(&GroupWord::letter(t), &GroupWord::letter(a)),
            rhs: conjugate_pc(g, pres, t, 1, a)?,
        })
    };
    let t_relations = associated.iter().map(|&a| rel(a)).collect::<Result<Vec<_>>>()?;
    let base_conjugates = base
        .iter()
        .filter(|id| !associated.contains(id))
        .map(|&a| rel(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(HnnData {
        stable_letter: t,
        base_generators: base,
        associated_generators: associated,
        t_relations,
        base_conjugates,
    })
}
