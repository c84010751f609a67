mod common;

use std::collections::BTreeSet;

use common::{from_mask, subset, to_set, Oracle};
use proptest::prelude::*;
use raag_out::decide::{decide, no_sil_rule, Rule, Status};
use raag_out::order::{equivalent, leq, order_pairs};
use raag_out::pconj::{commutes, nontrivial_pcs};
use raag_out::presentation::{commuting_family, conjugate_pc, pso_presentation, GroupWord};
use raag_out::sil::{classify_pair, has_sil_pair, is_separated_sil_pair, is_sil_pair, maximal_sil_system};
use raag_out::verify::verify_decision;
use raag_out::{Error, SimplicialGraph, VertexId, VertexSet};

fn graph() -> impl Strategy<Value = SimplicialGraph> {
    (1usize..=8, any::<u32>()).prop_map(|(n, mask)| from_mask(n, mask))
}

fn graph_and_perm() -> impl Strategy<Value = (SimplicialGraph, Vec<usize>)> {
    graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn vid(i: usize) -> VertexId {
    VertexId::from_index(i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn vertex_set_matches_btreeset(a in proptest::collection::btree_set(0usize..256, 0..40),
                                   b in proptest::collection::btree_set(0usize..256, 0..40)) {
        let sa: VertexSet = a.iter().map(|&i| vid(i)).collect();
        let sb: VertexSet = b.iter().map(|&i| vid(i)).collect();
        let back = |s: VertexSet| s.iter().map(|v| v.index()).collect::<BTreeSet<_>>();
        prop_assert_eq!(back(sa.union(&sb)), a.union(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(back(sa.intersection(&sb)), a.intersection(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(back(sa.difference(&sb)), a.difference(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
        prop_assert_eq!(sa.len(), a.len());
        prop_assert_eq!(sa.first().map(|v| v.index()), a.first().copied());
    }

    #[test]
    fn links_stars_and_components(g in graph()) {
        let o = Oracle::new(&g);
        for v in g.vertices() {
            prop_assert_eq!(to_set(&g.link(v).unwrap()), o.link(v.index()));
            prop_assert_eq!(to_set(&g.star(v).unwrap()), o.star(v.index()));
            let comps: Vec<_> = g.star_complement_components(v).unwrap().iter().map(to_set).collect();
            prop_assert_eq!(comps, o.star_components(v.index()));
        }
        prop_assert_eq!(g.is_connected(), o.connected());
    }

    #[test]
    fn order_is_a_preorder(g in graph()) {
        let o = Oracle::new(&g);
        let pairs = order_pairs(&g);
        for p in &pairs {
            prop_assert!(o.leq(p.lower.index(), p.upper.index()));
        }
        let expected = (0..o.n).flat_map(|a| (0..o.n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && o.leq(a, b)).count();
        prop_assert_eq!(pairs.len(), expected);
        for p in &pairs {
            for q in pairs.iter().filter(|q| q.lower == p.upper && q.upper != p.lower) {
                prop_assert!(leq(&g, p.lower, q.upper).unwrap());
            }
            prop_assert_eq!(equivalent(&g, p.lower, p.upper), o.leq(p.upper.index(), p.lower.index()));
        }
    }

    #[test]
    fn sil_pairs_and_split(g in graph()) {
        let o = Oracle::new(&g);
        for (a, b) in o.pairs() {
            if o.adj[a][b] {
                prop_assert!(matches!(classify_pair(&g, vid(a), vid(b)), Err(Error::AdjacentPair(..))));
                continue;
            }
            let sil = is_sil_pair(&g, vid(a), vid(b)).unwrap();
            prop_assert_eq!(sil, is_sil_pair(&g, vid(b), vid(a)).unwrap());
            prop_assert_eq!(sil, o.sil(a, b));
            let sep = is_separated_sil_pair(&g, vid(a), vid(b)).unwrap();
            prop_assert_eq!(sep, o.separated(a, b));
            prop_assert!(!sep || sil);
            let c = classify_pair(&g, vid(a), vid(b)).unwrap();
            prop_assert_eq!(c.shared.is_empty(), !sil);
            // The pieces partition the components of Γ − st(a).
            let mut pieces: Vec<_> = c.subordinate_a.iter().chain(&c.shared).map(to_set).collect();
            pieces.push(to_set(&c.dominating_a));
            pieces.sort();
            let mut comps = o.star_components(a);
            comps.sort();
            prop_assert_eq!(pieces, comps);
        }
    }

    #[test]
    fn maximal_systems_are_valid(g in graph()) {
        let o = Oracle::new(&g);
        let any_separated = o.pairs().iter().any(|&(a, b)| o.separated(a, b));
        match maximal_sil_system(&g) {
            Ok(Some(d)) => {
                prop_assert!(any_separated);
                if let Err(e) = o.check_decomposition(&d) {
                    return Err(TestCaseError::fail(e));
                }
            }
            Ok(None) => prop_assert!(!any_separated),
            Err(Error::NoMaximalSystem(_)) => prop_assert!(any_separated),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn decide_is_sound_and_verifiable(g in graph()) {
        let d = decide(&g).unwrap();
        if let Err(e) = verify_decision(&g, &d) {
            return Err(TestCaseError::fail(format!("{}: {e}", d.rule.as_str())));
        }
        if d.verdict.out_status == Status::Yes {
            prop_assert_eq!(d.rule, Rule::NoSil);
            prop_assert!(d.verdict.pso_status != Status::No);
        }
        if d.verdict.pso_status == Status::Yes {
            prop_assert_eq!(d.rule, Rule::BeingAhCorollary);
        }
        if !has_sil_pair(&g) {
            prop_assert!(d.verdict.out_status != Status::Unknown);
            prop_assert_eq!(&d, &no_sil_rule(&g).unwrap());
        }
        prop_assert_eq!(&d, &decide(&g).unwrap());
    }

    #[test]
    fn decide_is_invariant_under_relabeling((g, perm) in graph_and_perm()) {
        let h = g.permuted(&perm).unwrap();
        let (a, b) = (decide(&g).unwrap(), decide(&h).unwrap());
        // A different vertex order can change which maximal system the
        // greedy search finds, so only the system-free rules are compared
        // outright.
        if matches!(a.rule, Rule::NoSil | Rule::ConnectedSil) {
            prop_assert_eq!(a.rule, b.rule);
            prop_assert_eq!(a.verdict, b.verdict);
        }
        prop_assert_eq!(has_sil_pair(&g), has_sil_pair(&h));
        prop_assert_eq!(order_pairs(&g).len(), order_pairs(&h).len());
    }

    #[test]
    fn presentation_invariants(g in graph()) {
        let o = Oracle::new(&g);
        let pres = pso_presentation(&g);
        prop_assert_eq!(pres.generators.len(), nontrivial_pcs(&g).len());
        let multi = (0..o.n).filter(|&v| o.star_components(v).len() >= 2).count();
        prop_assert_eq!(pres.relations.iter().filter(|r| r.family == 5).count(), multi);
        for r in &pres.relations {
            let l = r.word.letters();
            prop_assert!(l.windows(2).all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1)));
        }
        let commuting: BTreeSet<(usize, usize)> = pres.relations.iter()
            .filter(|r| r.family <= 3)
            .map(|r| (r.word.letters()[0].0, r.word.letters()[1].0))
            .collect();
        for (i, x) in pres.generators.iter().enumerate() {
            for y in &pres.generators[i + 1..] {
                let c = commutes(&g, &x.pc, &y.pc).unwrap();
                if commuting.contains(&(x.id, y.id)) {
                    prop_assert!(c);
                }
                let nonadjacent = x.pc.vertex != y.pc.vertex && !g.adjacent(x.pc.vertex, y.pc.vertex);
                if nonadjacent && !c {
                    prop_assert!(!commuting.contains(&(x.id, y.id)));
                }
            }
        }
    }

    #[test]
    fn conjugation_of_commuting_pairs_is_trivial(g in graph()) {
        let pres = pso_presentation(&g);
        for x in &pres.generators {
            for y in &pres.generators {
                if commutes(&g, &x.pc, &y.pc).unwrap() || commuting_family(&g, &x.pc, &y.pc).is_some() {
                    for e in [1, -1] {
                        prop_assert_eq!(conjugate_pc(&g, &pres, x.id, e, y.id).unwrap(), GroupWord::letter(y.id));
                    }
                }
            }
        }
    }

    #[test]
    fn group_words_reduce(letters in proptest::collection::vec((0usize..4, prop_oneof![Just(1i8), Just(-1i8)]), 0..30)) {
        let w = GroupWord::new(letters);
        let l = w.letters();
        prop_assert!(l.windows(2).all(|p| !(p[0].0 == p[1].0 && p[0].1 == -p[1].1)));
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert_eq!(GroupWord::new(l.iter().copied()), w.clone());
    }
}

#[test]
fn conjugation_round_trip_on_gamma3() {
    let g = raag_out::gen::named("gamma3").unwrap();
    let pres = pso_presentation(&g);
    let mut closed = 0;
    for x in &pres.generators {
        for q in &pres.generators {
            let Ok(w) = conjugate_pc(&g, &pres, x.id, 1, q.id) else { continue };
            let mut back = GroupWord::identity();
            let mut ok = true;
            for &(id, e) in w.letters() {
                match conjugate_pc(&g, &pres, x.id, -1, id) {
                    Ok(c) => back = back.concat(&if e == 1 { c } else { c.inverse() }),
                    Err(_) => ok = false,
                }
            }
            if ok {
                assert_eq!(back, GroupWord::letter(q.id), "{} by {}", q.name, x.name);
                closed += 1;
            }
        }
    }
    assert!(closed >= pres.generators.len() * pres.generators.len() / 2);
}

#[test]
fn path3_order_examples() {
    let g = raag_out::gen::named("path3").unwrap();
    let o = Oracle::new(&g);
    let pairs: Vec<(usize, usize)> = order_pairs(&g).iter().map(|p| (p.lower.index(), p.upper.index())).collect();
    let unordered: BTreeSet<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    assert_eq!(unordered.len(), 3);
    assert!(pairs.iter().all(|&(a, b)| o.leq(a, b)));
    assert!(subset(&o.link(0), &o.star(1)));
}

#[test]
fn additional_factor_with_core_vertex_outside_lambda() {
    // x6 lies in the core but its link misses x2, yet {x3} is still a
    // component of Γ − st(x6).
    let g = SimplicialGraph::from_edges(
        (0..7).map(|i| format!("x{i}")),
        [(0, 2), (0, 4), (0, 6), (1, 2), (2, 5), (3, 4), (4, 5), (4, 6), (5, 6)],
    )
    .unwrap();
    let d = decide(&g).unwrap();
    assert_eq!(d.rule, Rule::AdditionalComponents);
    verify_decision(&g, &d).unwrap();
    let raag_out::decide::Certificate::AdditionalComponents { lambda, factors, .. } = &d.certificate else {
        panic!("wrong certificate");
    };
    assert!(!lambda.contains(vid(6)));
    assert!(factors.iter().flatten().any(|p| p.vertex == vid(6)));
    assert_eq!(d.warnings.len(), 1);
}
