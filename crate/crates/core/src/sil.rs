//! SIL pairs, the component split for a nonadjacent pair, v̂-components and
//! maximal SIL-pair systems.

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};
use crate::order::{leaf_like, Side, TransvectionSpec};

/// Split of the components of `Γ − st(a)` and `Γ − st(b)` for a
/// nonadjacent pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComponentClassification {
    pub a: VertexId,
    pub b: VertexId,
    /// `A_0`: the component of `Γ − st(a)` containing `b`.
    pub dominating_a: VertexSet,
    /// `B_0`: the component of `Γ − st(b)` containing `a`.
    pub dominating_b: VertexSet,
    pub subordinate_a: Vec<VertexSet>,
    pub subordinate_b: Vec<VertexSet>,
    pub shared: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SilSystem {
    pub pivots: Vec<VertexId>,
    /// `∩ lk(w_i)`.
    pub core: VertexSet,
}

/// Where a vertex sits in the decomposition `core ⊎ C_i ⊎ D_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Core,
    Shared(usize),
    Additional(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SilSystemDecomposition {
    pub system: SilSystem,
    /// `C_i`, aligned with `system.pivots`.
    pub shared_components: Vec<VertexSet>,
    /// `D_j`, ordered by least member.
    pub additional_components: Vec<VertexSet>,
}

impl SilSystemDecomposition {
    pub fn core(&self) -> &VertexSet {
        &self.system.core
    }

    pub fn pivots(&self) -> &[VertexId] {
        &self.system.pivots
    }

    pub fn region(&self, v: VertexId) -> Region {
        if self.system.core.contains(v) {
            return Region::Core;
        }
        if let Some(i) = self.shared_components.iter().position(|c| c.contains(v)) {
            return Region::Shared(i);
        }
        let j = self
            .additional_components
            .iter()
            .position(|d| d.contains(v))
            .expect("decomposition covers every vertex");
        Region::Additional(j)
    }

    /// Whether `core ⊆ lk(v)`.
    pub fn core_in_link(&self, g: &SimplicialGraph, v: VertexId) -> bool {
        self.system.core.is_subset(&g.lk(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KerPGenerator {
    LeafTransvection(TransvectionSpec),
    VhatConjugation { v: VertexId, component: VertexSet },
}

fn check_pair(g: &SimplicialGraph, a: VertexId, b: VertexId) -> Result<()> {
    g.check(a)?;
    g.check(b)?;
    if a == b {
        return Err(Error::SameVertex(g.name(a).to_string()));
    }
    Ok(())
}

/// Components of `Γ − (lk a ∩ lk b)` containing `a` and `b`, plus whether
/// anything is left over (the SIL condition). Assumes `a`, `b` nonadjacent.
fn pair_reach(g: &SimplicialGraph, a: VertexId, b: VertexId) -> (VertexSet, VertexSet, bool) {
    let rest = g.all().difference(&g.lk(a).intersection(&g.lk(b)));
    let ca = g.component_of(a, &rest);
    let cb = if ca.contains(b) {
        ca
    } else {
        g.component_of(b, &rest)
    };
    let leftover = !rest.difference(&ca.union(&cb)).is_empty();
    (ca, cb, leftover)
}

pub(crate) fn sil_unchecked(g: &SimplicialGraph, a: VertexId, b: VertexId) -> bool {
    !g.adjacent(a, b) && pair_reach(g, a, b).2
}

pub(crate) fn separated_unchecked(g: &SimplicialGraph, a: VertexId, b: VertexId) -> bool {
    if g.adjacent(a, b) {
        return false;
    }
    let (ca, _, leftover) = pair_reach(g, a, b);
    leftover && !ca.contains(b)
}

pub fn is_sil_pair(g: &SimplicialGraph, a: VertexId, b: VertexId) -> Result<bool> {
    check_pair(g, a, b)?;
    Ok(sil_unchecked(g, a, b))
}

/// Whether `(a, b)` is a SIL pair whose members are separated by `lk a ∩ lk b`.
pub fn is_separated_sil_pair(g: &SimplicialGraph, a: VertexId, b: VertexId) -> Result<bool> {
    check_pair(g, a, b)?;
    Ok(separated_unchecked(g, a, b))
}

pub fn classify_pair(
    g: &SimplicialGraph,
    a: VertexId,
    b: VertexId,
) -> Result<PairComponentClassification> {
    check_pair(g, a, b)?;
    if g.adjacent(a, b) {
        return Err(Error::AdjacentPair(g.name(a).into(), g.name(b).into()));
    }
    let comps_a = g.star_complement_components(a)?;
    let comps_b = g.star_complement_components(b)?;
    let dominating_a = *comps_a.iter().find(|c| c.contains(b)).expect("b ∉ st(a)");
    let dominating_b = *comps_b.iter().find(|c| c.contains(a)).expect("a ∉ st(b)");
    let shared: Vec<VertexSet> = comps_a.iter().filter(|c| comps_b.contains(c)).copied().collect();
    let subordinate = |comps: &[VertexSet], dom: &VertexSet| -> Vec<VertexSet> {
        comps
            .iter()
            .filter(|c| *c != dom && !shared.contains(c))
            .copied()
            .collect()
    };
    Ok(PairComponentClassification {
        a,
        b,
        subordinate_a: subordinate(&comps_a, &dominating_a),
        subordinate_b: subordinate(&comps_b, &dominating_b),
        dominating_a,
        dominating_b,
        shared,
    })
}

fn pairs_where(g: &SimplicialGraph, f: impl Fn(VertexId, VertexId) -> bool) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for a in g.vertices() {
        for b in g.vertices().filter(|&b| b > a) {
            if f(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// All unordered SIL pairs `(a, b)` with `a < b`, lexicographic.
pub fn sil_pairs(g: &SimplicialGraph) -> Vec<(VertexId, VertexId)> {
    pairs_where(g, |a, b| sil_unchecked(g, a, b))
}

pub fn has_sil_pair(g: &SimplicialGraph) -> bool {
    g.vertices()
        .any(|a| g.vertices().filter(|&b| b > a).any(|b| sil_unchecked(g, a, b)))
}

pub fn separated_sil_pairs(g: &SimplicialGraph) -> Vec<(VertexId, VertexId)> {
    pairs_where(g, |a, b| separated_unchecked(g, a, b))
}

/// True when SIL pairs exist but none of them is separated.
pub fn all_sil_pairs_connected(g: &SimplicialGraph) -> bool {
    has_sil_pair(g) && separated_sil_pairs(g).is_empty()
}

/// Checks the five defining conditions of a maximal SIL-pair system for the
/// given pivots. Returns the name of the first failing condition.
pub fn check_system(g: &SimplicialGraph, pivots: &[VertexId]) -> std::result::Result<(), String> {
    if pivots.len() < 2 {
        return Err("a system needs at least two pivots".into());
    }
    let mut core = g.all();
    for &w in pivots {
        core = core.intersection(&g.lk(w));
    }
    for (i, &x) in pivots.iter().enumerate() {
        for &y in &pivots[i + 1..] {
            if !sil_unchecked(g, x, y) {
                return Err(format!("pivots {} and {} are not a SIL pair", g.name(x), g.name(y)));
            }
            if g.lk(x).intersection(&g.lk(y)) != core {
                return Err(format!(
                    "lk({}) ∩ lk({}) differs from the common core",
                    g.name(x),
                    g.name(y)
                ));
            }
        }
    }
    for (a, b) in separated_sil_pairs(g) {
        if g.lk(a).intersection(&g.lk(b)).len() < core.len() {
            return Err(format!(
                "separated SIL pair ({}, {}) has a smaller link intersection",
                g.name(a),
                g.name(b)
            ));
        }
    }
    let rest = g.all().difference(&core);
    let mut pivot_comps = VertexSet::empty();
    for &w in pivots {
        let c = g.component_of(w, &rest);
        if pivots.iter().any(|&o| o != w && c.contains(o)) {
            return Err(format!("pivot {} shares its component with another pivot", g.name(w)));
        }
        pivot_comps = pivot_comps.union(&c);
    }
    let outside = rest.difference(&pivot_comps);
    for v in &outside {
        for &w in pivots {
            if sil_unchecked(g, v, w) {
                return Err(format!(
                    "{} in a pivot-free component forms a SIL pair with pivot {}",
                    g.name(v),
                    g.name(w)
                ));
            }
        }
    }
    Ok(())
}

/// Builds the decomposition induced by a pivot list, without validation.
pub fn decompose(g: &SimplicialGraph, pivots: &[VertexId]) -> SilSystemDecomposition {
    let mut core = g.all();
    for &w in pivots {
        core = core.intersection(&g.lk(w));
    }
    let rest = g.all().difference(&core);
    let shared_components: Vec<VertexSet> = pivots.iter().map(|&w| g.component_of(w, &rest)).collect();
    let covered = shared_components
        .iter()
        .fold(core, |acc, c| acc.union(c));
    let additional_components = g.connected_components(&g.all().difference(&covered));
    SilSystemDecomposition {
        system: SilSystem {
            pivots: pivots.to_vec(),
            core,
        },
        shared_components,
        additional_components,
    }
}

fn grow_from(g: &SimplicialGraph, w1: VertexId, w2: VertexId) -> Vec<VertexId> {
    let core = g.lk(w1).intersection(&g.lk(w2));
    let rest = g.all().difference(&core);
    let mut pivots = vec![w1, w2];
    let mut claimed = g.component_of(w1, &rest).union(&g.component_of(w2, &rest));
    loop {
        let candidate = rest.difference(&claimed).iter().find(|&x| {
            pivots.iter().all(|&w| {
                g.lk(x).intersection(&g.lk(w)) == core && separated_unchecked(g, w, x)
            })
        });
        match candidate {
            Some(x) => {
                pivots.push(x);
                claimed = claimed.union(&g.component_of(x, &rest));
            }
            None => return pivots,
        }
    }
}

/// Greedy construction of a maximal SIL-pair system.
///
/// Seeds are the separated SIL pairs of minimum link-intersection size, in
/// lexicographic order. From a seed, pivots are added by scanning vertices of
/// pivot-free components of `Γ − core` in index order. The first seed whose
/// result satisfies every defining condition wins.
///
/// Returns `Ok(None)` when no separated SIL pair exists and
/// [`Error::NoMaximalSystem`] when every seed fails.
pub fn maximal_sil_system(g: &SimplicialGraph) -> Result<Option<SilSystemDecomposition>> {
    let separated = separated_sil_pairs(g);
    let Some(min) = separated
        .iter()
        .map(|&(a, b)| g.lk(a).intersection(&g.lk(b)).len())
        .min()
    else {
        return Ok(None);
    };
    let mut last_failure = String::new();
    for &(a, b) in separated
        .iter()
        .filter(|&&(a, b)| g.lk(a).intersection(&g.lk(b)).len() == min)
    {
        let pivots = grow_from(g, a, b);
        match check_system(g, &pivots) {
            Ok(()) => {
                let d = decompose(g, &pivots);
                validate_decomposition(g, &d)?;
                return Ok(Some(d));
            }
            Err(why) => {
                last_failure = format!("seed ({}, {}): {why}", g.name(a), g.name(b));
            }
        }
    }
    Err(Error::NoMaximalSystem(last_failure))
}

fn validate_decomposition(g: &SimplicialGraph, d: &SilSystemDecomposition) -> Result<()> {
    let mut seen = d.system.core;
    for part in d.shared_components.iter().chain(&d.additional_components) {
        if !seen.is_disjoint(part) {
            return Err(Error::Defect("decomposition parts overlap".into()));
        }
        seen = seen.union(part);
    }
    if seen != g.all() {
        return Err(Error::Defect("decomposition does not cover the graph".into()));
    }
    for (w, c) in d.system.pivots.iter().zip(&d.shared_components) {
        if !c.contains(*w) {
            return Err(Error::Defect("pivot outside its shared component".into()));
        }
    }
    Ok(())
}

/// `v̂`-components: classes of the reachability relation after deleting
/// every edge with both endpoints in `st(v)`. Each class is flagged trivial
/// when it lies inside `st(v)`. Ordered by least member.
pub fn vhat_components(g: &SimplicialGraph, v: VertexId) -> Result<Vec<(VertexSet, bool)>> {
    let st = g.star(v)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let neighbors = |x: VertexId| {
        if st.contains(x) {
            g.lk(x).difference(&st)
        } else {
            g.lk(x)
        }
    };
    let mut rest = g.all();
    let mut out = Vec::new();
    while let Some(start) = rest.first() {
        let mut class = VertexSet::singleton(start);
        let mut frontier = class;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for x in &frontier {
                next = next.union(&neighbors(x));
            }
            frontier = next.difference(&class);
            class = class.union(&frontier);
        }
        rest = rest.difference(&class);
        out.push((class, class.is_subset(&st)));
    }
    Ok(out)
}

/// Leaf transvections followed by nontrivial `v̂`-component conjugations.
///
/// A vertex with a single nontrivial `v̂`-component contributes nothing: that
/// conjugation agrees with the inner automorphism by `v` up to conjugations
/// of trivial classes, which act trivially.
pub fn ker_p_generators(g: &SimplicialGraph) -> Result<Vec<KerPGenerator>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut out = Vec::new();
    for v in g.vertices() {
        if let Some(w) = leaf_like(g, v)? {
            out.push(KerPGenerator::LeafTransvection(TransvectionSpec {
                moved: v,
                by: w,
                side: Side::Right,
            }));
        }
    }
    for v in g.vertices() {
        let nontrivial: Vec<VertexSet> = vhat_components(g, v)?
            .into_iter()
            .filter(|(_, trivial)| !trivial)
            .map(|(c, _)| c)
            .collect();
        if nontrivial.len() >= 2 {
            out.extend(
                nontrivial
                    .into_iter()
                    .map(|component| KerPGenerator::VhatConjugation { v, component }),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named;

    fn id(g: &SimplicialGraph, n: &str) -> VertexId {
        g.vertex(n).unwrap()
    }

    fn set(g: &SimplicialGraph, names: &[&str]) -> VertexSet {
        g.set_of(names).unwrap()
    }

    #[test]
    fn sil_examples() {
        let three = named("three_isolated").unwrap();
        assert!(is_sil_pair(&three, id(&three, "a"), id(&three, "b")).unwrap());
        let two = SimplicialGraph::from_edges(["a", "b"], []).unwrap();
        assert!(!is_sil_pair(&two, id(&two, "a"), id(&two, "b")).unwrap());
        let ta = named("two_additional").unwrap();
        assert!(is_sil_pair(&ta, id(&ta, "c1"), id(&ta, "c2")).unwrap());
        assert!(matches!(
            is_sil_pair(&ta, id(&ta, "c1"), id(&ta, "c1")),
            Err(Error::SameVertex(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let three = named("three_isolated").unwrap();
        let c = classify_pair(&three, id(&three, "a"), id(&three, "b")).unwrap();
        assert_eq!(c.dominating_a, set(&three, &["b"]));
        assert_eq!(c.dominating_b, set(&three, &["a"]));
        assert_eq!(c.shared, vec![set(&three, &["c"])]);

        let ta = named("two_additional").unwrap();
        let c = classify_pair(&ta, id(&ta, "c1"), id(&ta, "c2")).unwrap();
        assert_eq!(c.dominating_a, set(&ta, &["c2"]));
        assert_eq!(c.dominating_b, set(&ta, &["c1"]));
        assert_eq!(c.shared, vec![set(&ta, &["a1", "a2"]), set(&ta, &["b1", "b2"])]);

        let path = named("path3").unwrap();
        let c = classify_pair(&path, id(&path, "a"), id(&path, "c")).unwrap();
        assert_eq!(c.dominating_a, set(&path, &["c"]));
        assert_eq!(c.dominating_b, set(&path, &["a"]));
        assert!(c.shared.is_empty());
        assert!(matches!(
            classify_pair(&path, id(&path, "a"), id(&path, "b")),
            Err(Error::AdjacentPair(..))
        ));
    }

    #[test]
    fn pair_listings() {
        assert!(sil_pairs(&named("fig_sl2").unwrap()).is_empty());
        let three = named("three_isolated").unwrap();
        assert_eq!(sil_pairs(&three).len(), 3);
        assert_eq!(separated_sil_pairs(&three).len(), 3);
        let g1 = named("gamma1").unwrap();
        let pairs = sil_pairs(&g1);
        for (a, b) in [("v1", "v2"), ("v1", "v3"), ("v2", "v3")] {
            assert!(pairs.contains(&(id(&g1, a), id(&g1, b))));
        }
        let ta = named("two_additional").unwrap();
        assert_eq!(separated_sil_pairs(&ta), vec![(id(&ta, "c1"), id(&ta, "c2"))]);
        assert!(!all_sil_pairs_connected(&three));
        assert!(!all_sil_pairs_connected(&named("fig_sl2").unwrap()));
        assert!(!all_sil_pairs_connected(&ta));
    }

    #[test]
    fn system_three_isolated() {
        let g = named("three_isolated").unwrap();
        let d = maximal_sil_system(&g).unwrap().unwrap();
        assert_eq!(d.pivots(), &[id(&g, "a"), id(&g, "b"), id(&g, "c")]);
        assert!(d.core().is_empty());
        assert_eq!(d.shared_components.len(), 3);
        assert!(d.additional_components.is_empty());
    }

    #[test]
    fn system_two_additional() {
        let g = named("two_additional").unwrap();
        let d = maximal_sil_system(&g).unwrap().unwrap();
        assert_eq!(d.pivots(), &[id(&g, "c1"), id(&g, "c2")]);
        assert_eq!(*d.core(), set(&g, &["h1", "h2"]));
        assert_eq!(d.shared_components, vec![set(&g, &["c1"]), set(&g, &["c2"])]);
        assert_eq!(
            d.additional_components,
            vec![set(&g, &["a1", "a2"]), set(&g, &["b1", "b2"])]
        );
        assert_eq!(d.region(id(&g, "b2")), Region::Additional(1));
    }

    #[test]
    fn system_gamma_243() {
        let g = named("gamma_243").unwrap();
        let d = maximal_sil_system(&g).unwrap().unwrap();
        assert_eq!(d.pivots().len(), 3);
        assert_eq!(*d.core(), set(&g, &["gt", "gb"]));
        let sizes: Vec<usize> = d.shared_components.iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![4, 12, 9]);
        assert!(d.additional_components.is_empty());
    }

    #[test]
    fn system_absent_without_separated_pairs() {
        assert!(maximal_sil_system(&named("fig_sl2").unwrap()).unwrap().is_none());
    }

    #[test]
    fn system_may_not_exist() {
        let g = named("no_max_system").unwrap();
        assert!(!separated_sil_pairs(&g).is_empty());
        assert!(matches!(maximal_sil_system(&g), Err(Error::NoMaximalSystem(_))));
    }

    #[test]
    fn vhat_examples() {
        let star = named("star3").unwrap();
        let classes = vhat_components(&star, id(&star, "c")).unwrap();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|(c, trivial)| c.len() == 1 && *trivial));

        let k3 = named("k3").unwrap();
        assert!(vhat_components(&k3, VertexId::from_index(0))
            .unwrap()
            .iter()
            .all(|(_, t)| *t));

        let path = named("path3").unwrap();
        let classes = vhat_components(&path, id(&path, "a")).unwrap();
        assert_eq!(classes, vec![(set(&path, &["a"]), true), (set(&path, &["b", "c"]), false)]);

        let three = named("three_isolated").unwrap();
        assert!(matches!(vhat_components(&three, VertexId::from_index(0)), Err(Error::Disconnected)));
    }

    #[test]
    fn ker_p_examples() {
        assert!(ker_p_generators(&named("fig_sl2").unwrap()).unwrap().is_empty());
        assert!(ker_p_generators(&named("k3").unwrap()).unwrap().is_empty());
        let star = named("star3").unwrap();
        let gens = ker_p_generators(&star).unwrap();
        let c = id(&star, "c");
        for leaf in ["a", "b", "d"] {
            assert!(gens.contains(&KerPGenerator::LeafTransvection(TransvectionSpec {
                moved: id(&star, leaf),
                by: c,
                side: Side::Right,
            })));
        }
    }
}
