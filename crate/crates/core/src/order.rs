//! The link-star order `v ≤ w ⟺ lk(v) ⊆ st(w)` and what is derived from it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};

/// An ordered pair `lower ≤ upper` of distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderPair {
    pub lower: VertexId,
    pub upper: VertexId,
}

/// A `∼`-class together with its least-index member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivClass {
    pub members: VertexSet,
    pub representative: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The transvection `R_{moved,by}` (right) or `L_{moved,by}` (left).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransvectionSpec {
    pub moved: VertexId,
    pub by: VertexId,
    pub side: Side,
}

pub(crate) fn leq_unchecked(g: &SimplicialGraph, v: VertexId, w: VertexId) -> bool {
    g.lk(v).is_subset(&g.st(w))
}

/// `v ≤ w`. Only defined for distinct vertices.
pub fn leq(g: &SimplicialGraph, v: VertexId, w: VertexId) -> Result<bool> {
    g.check(v)?;
    g.check(w)?;
    if v == w {
        return Err(Error::SameVertex(g.name(v).to_string()));
    }
    Ok(leq_unchecked(g, v, w))
}

/// Every ordered pair of distinct vertices with `lower ≤ upper`, sorted by
/// `(lower, upper)`.
pub fn order_pairs(g: &SimplicialGraph) -> Vec<OrderPair> {
    let mut out = Vec::new();
    for v in g.vertices() {
        for w in g.vertices() {
            if v != w && leq_unchecked(g, v, w) {
                out.push(OrderPair { lower: v, upper: w });
            }
        }
    }
    out
}

/// `v ∼ w`: distinct and mutually `≤`.
pub fn equivalent(g: &SimplicialGraph, v: VertexId, w: VertexId) -> bool {
    v != w && leq_unchecked(g, v, w) && leq_unchecked(g, w, v)
}

/// Partition of the vertex set into `∼`-classes, ordered by representative.
pub fn equivalence_classes(g: &SimplicialGraph) -> Vec<EquivClass> {
    let mut rest = g.all();
    let mut out = Vec::new();
    while let Some(v) = rest.first() {
        let members: VertexSet = rest
            .iter()
            .filter(|&w| w == v || equivalent(g, v, w))
            .collect();
        rest = rest.difference(&members);
        out.push(EquivClass {
            members,
            representative: v,
        });
    }
    out
}

/// Vertices `v` such that every `w` with `v ≤ w` is equivalent to `v`.
pub fn maximal_vertices(g: &SimplicialGraph) -> VertexSet {
    let mut out = g.all();
    for p in order_pairs(g) {
        if !leq_unchecked(g, p.upper, p.lower) {
            out.remove(p.lower);
        }
    }
    out
}

/// If `v` is leaf-like, the unique maximal vertex `w` of `lk(v)` (which then
/// satisfies `v ≤ w`).
pub fn leaf_like(g: &SimplicialGraph, v: VertexId) -> Result<Option<VertexId>> {
    let link = g.link(v)?;
    let candidates = link.intersection(&maximal_vertices(g));
    if candidates.len() != 1 {
        return Ok(None);
    }
    let w = candidates.first().expect("one candidate");
    Ok(leq_unchecked(g, v, w).then_some(w))
}

/// All transvections, right before left for each pair, in pair order.
pub fn transvections(g: &SimplicialGraph) -> Vec<TransvectionSpec> {
    order_pairs(g)
        .into_iter()
        .flat_map(|p| {
            [Side::Right, Side::Left].map(|side| TransvectionSpec {
                moved: p.lower,
                by: p.upper,
                side,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named;

    fn ids(g: &SimplicialGraph, pairs: &[OrderPair]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|p| (g.name(p.lower).to_string(), g.name(p.upper).to_string()))
            .collect()
    }

    #[test]
    fn leq_examples() {
        let two = SimplicialGraph::from_edges(["a", "b"], []).unwrap();
        assert!(leq(&two, VertexId::from_index(0), VertexId::from_index(1)).unwrap());
        let path = named("path3").unwrap();
        assert!(leq(&path, path.vertex("a").unwrap(), path.vertex("b").unwrap()).unwrap());
        let sl2 = named("fig_sl2").unwrap();
        assert!(!leq(&sl2, sl2.vertex("m").unwrap(), sl2.vertex("t").unwrap()).unwrap());
        assert!(matches!(
            leq(&sl2, sl2.vertex("m").unwrap(), sl2.vertex("m").unwrap()),
            Err(Error::SameVertex(_))
        ));
    }

    #[test]
    fn order_pairs_examples() {
        let k3 = named("k3").unwrap();
        assert_eq!(order_pairs(&k3).len(), 6);
        let sl2 = named("fig_sl2").unwrap();
        assert_eq!(
            ids(&sl2, &order_pairs(&sl2)),
            vec![("t".into(), "b".into()), ("b".into(), "t".into())]
        );
        assert!(order_pairs(&named("gamma3").unwrap()).is_empty());
    }

    #[test]
    fn classes_and_maximal() {
        let k3 = named("k3").unwrap();
        assert_eq!(equivalence_classes(&k3).len(), 1);
        assert_eq!(maximal_vertices(&k3), k3.all());

        let sl2 = named("fig_sl2").unwrap();
        let classes = equivalence_classes(&sl2);
        assert_eq!(classes.len(), 6);
        assert_eq!(classes[0].members, sl2.set_of(&["t", "b"]).unwrap());

        let path = named("path3").unwrap();
        let classes = equivalence_classes(&path);
        assert_eq!(classes[0].members, path.set_of(&["a", "c"]).unwrap());
        assert_eq!(classes[1].members, path.set_of(&["b"]).unwrap());
        assert_eq!(maximal_vertices(&path), path.set_of(&["b"]).unwrap());

        let two = SimplicialGraph::from_edges(["a", "b"], []).unwrap();
        assert_eq!(maximal_vertices(&two), two.all());
    }

    #[test]
    fn leaf_like_examples() {
        let star = named("star3").unwrap();
        let c = star.vertex("c").unwrap();
        assert_eq!(leaf_like(&star, star.vertex("a").unwrap()).unwrap(), Some(c));
        let k3 = named("k3").unwrap();
        assert_eq!(leaf_like(&k3, VertexId::from_index(0)).unwrap(), None);
        let k1 = named("k1").unwrap();
        assert_eq!(leaf_like(&k1, VertexId::from_index(0)).unwrap(), None);
    }

    #[test]
    fn transvection_listing() {
        let sl2 = named("fig_sl2").unwrap();
        let t = transvections(&sl2);
        assert_eq!(t.len(), 4);
        assert_eq!(t[0].side, Side::Right);
        assert_eq!(t[1].side, Side::Left);
    }
}
