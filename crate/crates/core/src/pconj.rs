//! Partial conjugations `P_v^C`, their classification against a maximal
//! SIL-pair system, and the pairwise commuting test.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};
use crate::sil::{classify_pair, sil_unchecked, Region, SilSystemDecomposition};

/// `P_v^C` for a component `C` of `Γ − st(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialConjugation {
    pub vertex: VertexId,
    pub support: VertexSet,
    /// Position of `support` in `star_complement_components(vertex)`.
    pub ordinal: usize,
    /// Set when `Γ − st(vertex)` is connected, so the automorphism is inner.
    pub out_trivial: bool,
}

impl PartialConjugation {
    pub fn name(&self, g: &SimplicialGraph) -> String {
        format!("P[{}][{}]", g.name(self.vertex), self.ordinal)
    }
}

/// Tag from the thirteen-way classification, or `OutTrivial`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PcType {
    OutTrivial,
    Type(u8),
}

impl PcType {
    pub fn number(self) -> Option<u8> {
        match self {
            PcType::OutTrivial => None,
            PcType::Type(n) => Some(n),
        }
    }

    pub fn is_dominant(self) -> bool {
        self == PcType::Type(1)
    }

    pub fn is_subordinate(self) -> bool {
        self == PcType::Type(3)
    }
}

impl fmt::Display for PcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcType::OutTrivial => f.write_str("out_trivial"),
            PcType::Type(n) => write!(f, "{n}"),
        }
    }
}

/// Partial conjugations of one vertex, in component order.
pub fn pcs_of(g: &SimplicialGraph, v: VertexId) -> Result<Vec<PartialConjugation>> {
    let comps = g.star_complement_components(v)?;
    let out_trivial = comps.len() == 1;
    Ok(comps
        .into_iter()
        .enumerate()
        .map(|(ordinal, support)| PartialConjugation {
            vertex: v,
            support,
            ordinal,
            out_trivial,
        })
        .collect())
}

/// Every `(v, C)` pair, by vertex index and then component order.
pub fn enumerate_pcs(g: &SimplicialGraph) -> Vec<PartialConjugation> {
    g.vertices()
        .flat_map(|v| pcs_of(g, v).expect("vertex from the graph"))
        .collect()
}

/// The pcs that are nontrivial in `Out(A_Γ)`.
pub fn nontrivial_pcs(g: &SimplicialGraph) -> Vec<PartialConjugation> {
    enumerate_pcs(g).into_iter().filter(|p| !p.out_trivial).collect()
}

fn check_pc(g: &SimplicialGraph, p: &PartialConjugation) -> Result<()> {
    g.check(p.vertex)?;
    let comps = g.star_complement_components(p.vertex)?;
    match comps.get(p.ordinal) {
        Some(c) if *c == p.support && p.out_trivial == (comps.len() == 1) => Ok(()),
        _ => Err(Error::Input(format!(
            "{} is not a partial conjugation of this graph",
            p.name(g)
        ))),
    }
}

/// Classifies `p` relative to the decomposition `d` of `g`.
pub fn classify_pc(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
    p: &PartialConjugation,
) -> Result<PcType> {
    check_pc(g, p)?;
    if p.out_trivial {
        return Ok(PcType::OutTrivial);
    }
    let c = &p.support;
    let core = d.core();
    let is_additional = || d.additional_components.contains(c);
    let tag = match d.region(p.vertex) {
        Region::Shared(i) if d.core_in_link(g, p.vertex) => {
            let ci = &d.shared_components[i];
            if d.shared_components.iter().enumerate().any(|(k, ck)| k != i && ck == c) {
                Some(1)
            } else if is_additional() {
                Some(2)
            } else if c.is_subset(ci) {
                if c.iter().any(|w| d.core_in_link(g, w)) {
                    Some(3)
                } else {
                    Some(4)
                }
            } else {
                None
            }
        }
        Region::Shared(i) => {
            if c.is_subset(&d.shared_components[i]) {
                Some(5)
            } else if is_additional() {
                Some(6)
            } else if !c.is_disjoint(core) {
                Some(7)
            } else {
                None
            }
        }
        Region::Core => {
            if !c.is_disjoint(core) {
                Some(8)
            } else if d.shared_components.iter().any(|ci| c.is_subset(ci)) {
                Some(9)
            } else if d.additional_components.iter().any(|dj| c.is_subset(dj)) {
                Some(10)
            } else {
                None
            }
        }
        Region::Additional(j) => {
            let pivots: VertexSet = d.pivots().iter().copied().collect();
            if c.is_subset(&d.additional_components[j]) {
                Some(11)
            } else if is_additional() {
                Some(12)
            } else if pivots.is_subset(c) {
                Some(13)
            } else {
                None
            }
        }
    };
    tag.map(PcType::Type)
        .ok_or_else(|| Error::Unclassified(p.name(g)))
}

fn filter_by(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
    keep: impl Fn(PcType) -> bool,
) -> Result<Vec<PartialConjugation>> {
    let mut out = Vec::new();
    for p in nontrivial_pcs(g) {
        if keep(classify_pc(g, d, &p)?) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Type-(1) partial conjugations.
pub fn dominant_pcs(g: &SimplicialGraph, d: &SilSystemDecomposition) -> Result<Vec<PartialConjugation>> {
    filter_by(g, d, PcType::is_dominant)
}

/// Type-(3) partial conjugations.
pub fn subordinate_pcs(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
) -> Result<Vec<PartialConjugation>> {
    filter_by(g, d, PcType::is_subordinate)
}

/// Whether `p` and `q` commute in `Out(A_Γ)`. Both must be nontrivial there.
pub fn commutes(g: &SimplicialGraph, p: &PartialConjugation, q: &PartialConjugation) -> Result<bool> {
    for x in [p, q] {
        check_pc(g, x)?;
        if x.out_trivial {
            return Err(Error::Input(format!("{} is trivial in Out", x.name(g))));
        }
    }
    let (a, b) = (p.vertex, q.vertex);
    if a == b || g.adjacent(a, b) || !sil_unchecked(g, a, b) {
        return Ok(true);
    }
    let split = classify_pair(g, a, b)?;
    let dom_p = p.support == split.dominating_a;
    let dom_q = q.support == split.dominating_b;
    let shared_p = split.shared.contains(&p.support);
    let shared_q = split.shared.contains(&q.support);
    let clash = (dom_p && (dom_q || shared_q))
        || (shared_p && dom_q)
        || (shared_p && shared_q && p.support == q.support);
    Ok(!clash)
}
