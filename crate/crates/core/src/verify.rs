//! Re-checks a [`Decision`] against the graph using a separate, deliberately
//! plain implementation (adjacency matrix, sorted index vectors, DFS).
//! Nothing here calls into the SIL, order or classification modules.

use crate::decide::{Certificate, Decision, Rule, Status};
use crate::graph::{SimplicialGraph, VertexSet};
use crate::pconj::PartialConjugation;
use crate::presentation::ReportKind;
use crate::sil::{KerPGenerator, SilSystemDecomposition};

type Set = Vec<usize>;
type Check = std::result::Result<(), String>;

struct Naive {
    n: usize,
    adj: Vec<Vec<bool>>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn to_set(s: &VertexSet) -> Set {
    s.iter().map(|v| v.index()).collect()
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn meet(a: &[usize], b: &[usize]) -> Set {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

impl Naive {
    fn new(g: &SimplicialGraph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u.index()][v.index()] = true;
            adj[v.index()][u.index()] = true;
        }
        Naive { n, adj }
    }

    fn link(&self, v: usize) -> Set {
        (0..self.n).filter(|&u| self.adj[v][u]).collect()
    }

    fn star(&self, v: usize) -> Set {
        (0..self.n).filter(|&u| u == v || self.adj[v][u]).collect()
    }

    fn complement(&self, s: &[usize]) -> Set {
        (0..self.n).filter(|x| !s.contains(x)).collect()
    }

    /// Components of the induced subgraph, ordered by least member.
    fn components(&self, within: &[usize]) -> Vec<Set> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &s in within {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in within {
                    if !seen[y] && self.adj[x][y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn star_components(&self, v: usize) -> Vec<Set> {
        self.components(&self.complement(&self.star(v)))
    }

    fn leq(&self, v: usize, w: usize) -> bool {
        subset(&self.link(v), &self.star(w))
    }

    fn pair_components(&self, a: usize, b: usize) -> (Vec<Set>, Set) {
        let i = meet(&self.link(a), &self.link(b));
        (self.components(&self.complement(&i)), i)
    }

    fn sil(&self, a: usize, b: usize) -> bool {
        if a == b || self.adj[a][b] {
            return false;
        }
        let (comps, _) = self.pair_components(a, b);
        comps.iter().any(|c| !c.contains(&a) && !c.contains(&b))
    }

    fn separated(&self, a: usize, b: usize) -> bool {
        if !self.sil(a, b) {
            return false;
        }
        let (comps, _) = self.pair_components(a, b);
        !comps.iter().any(|c| c.contains(&a) && c.contains(&b))
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (a + 1..self.n).map(move |b| (a, b)))
    }

    fn connected(&self) -> bool {
        self.components(&(0..self.n).collect::<Vec<_>>()).len() <= 1
    }

    /// Commutation of two nontrivial pcs from the split of the pair's star
    /// components.
    fn commutes(&self, v: usize, c: &[usize], w: usize, e: &[usize]) -> bool {
        if v == w || self.adj[v][w] || !self.sil(v, w) {
            return true;
        }
        let (cv, cw) = (self.star_components(v), self.star_components(w));
        let dom_v = cv.iter().find(|x| x.contains(&w)).is_some_and(|x| x == c);
        let dom_w = cw.iter().find(|x| x.contains(&v)).is_some_and(|x| x == e);
        let sh_c = cw.iter().any(|x| x == c);
        let sh_e = cv.iter().any(|x| x == e);
        !((dom_v && dom_w) || (dom_v && sh_e) || (sh_c && dom_w) || (sh_c && sh_e && c == e))
    }

    fn all_nontrivial_pcs(&self) -> Vec<(usize, Set)> {
        (0..self.n)
            .flat_map(|v| {
                let comps = self.star_components(v);
                let k = comps.len();
                comps.into_iter().filter(move |_| k >= 2).map(move |c| (v, c))
            })
            .collect()
    }
}

/// The decomposition as plain sets, with its five defining conditions and
/// the partition re-checked.
struct System {
    pivots: Set,
    core: Set,
    shared: Vec<Set>,
    additional: Vec<Set>,
}

impl System {
    fn core_in_link(&self, n: &Naive, v: usize) -> bool {
        subset(&self.core, &n.link(v))
    }

    fn shared_index(&self, v: usize) -> Option<usize> {
        self.shared.iter().position(|c| c.contains(&v))
    }

    fn dominant(&self, n: &Naive, v: usize, support: &[usize]) -> bool {
        match self.shared_index(v) {
            Some(i) => {
                self.core_in_link(n, v)
                    && self.shared.iter().enumerate().any(|(j, c)| j != i && c.as_slice() == support)
            }
            None => false,
        }
    }

    fn subordinate(&self, n: &Naive, v: usize, support: &[usize]) -> bool {
        match self.shared_index(v) {
            Some(i) => {
                self.core_in_link(n, v)
                    && subset(support, &self.shared[i])
                    && support.iter().any(|&w| self.core_in_link(n, w))
            }
            None => false,
        }
    }
}

fn check_system(n: &Naive, d: &SilSystemDecomposition) -> std::result::Result<System, String> {
    let pivots: Set = d.pivots().iter().map(|v| v.index()).collect();
    ensure(pivots.len() >= 2, || "fewer than two pivots".into())?;
    let mut core: Set = (0..n.n).collect();
    for &w in &pivots {
        core = meet(&core, &n.link(w));
    }
    ensure(core == to_set(d.core()), || "core is not the common link".into())?;
    for (i, &a) in pivots.iter().enumerate() {
        for &b in &pivots[i + 1..] {
            ensure(n.sil(a, b), || format!("pivots {a}, {b} are not a SIL pair"))?;
            ensure(meet(&n.link(a), &n.link(b)) == core, || {
                format!("pivots {a}, {b} have a link intersection other than the core")
            })?;
        }
    }
    for (a, b) in n.pairs() {
        if n.separated(a, b) {
            ensure(meet(&n.link(a), &n.link(b)).len() >= core.len(), || {
                format!("separated pair {a}, {b} has a smaller link intersection")
            })?;
        }
    }
    let comps = n.components(&n.complement(&core));
    let mut shared = Vec::new();
    for &w in &pivots {
        let c = comps.iter().find(|c| c.contains(&w)).expect("pivot outside core").clone();
        ensure(!shared.contains(&c), || format!("pivot {w} shares its component"))?;
        shared.push(c);
    }
    let additional: Vec<Set> = comps.into_iter().filter(|c| !shared.contains(c)).collect();
    for c in &additional {
        for &x in c {
            ensure(!pivots.iter().any(|&w| n.sil(x, w)), || {
                format!("vertex {x} of a pivot-free component forms a SIL pair with a pivot")
            })?;
        }
    }
    let given_shared: Vec<Set> = d.shared_components.iter().map(to_set).collect();
    let given_additional: Vec<Set> = d.additional_components.iter().map(to_set).collect();
    ensure(given_shared == shared, || "shared components differ".into())?;
    ensure(given_additional == additional, || "additional components differ".into())?;
    Ok(System {
        pivots,
        core,
        shared,
        additional,
    })
}

fn sorted_pcs(pcs: impl IntoIterator<Item = (usize, Set)>) -> Vec<(usize, Set)> {
    let mut v: Vec<_> = pcs.into_iter().collect();
    v.sort();
    v
}

fn plain(pcs: &[PartialConjugation]) -> Vec<(usize, Set)> {
    sorted_pcs(pcs.iter().map(|p| (p.vertex.index(), to_set(&p.support))))
}

fn naive_order_pairs(n: &Naive) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..n.n {
        for w in 0..n.n {
            if v != w && n.leq(v, w) {
                out.push((v, w));
            }
        }
    }
    out
}

fn naive_maximal(n: &Naive, w: usize) -> bool {
    (0..n.n).all(|u| u == w || !n.leq(w, u) || n.leq(u, w))
}

/// Vertex classes joined by paths avoiding edges inside `st(v)`.
fn naive_vhat_class(n: &Naive, v: usize, start: usize) -> Set {
    let st = n.star(v);
    let mut seen = vec![false; n.n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = vec![];
    while let Some(x) = stack.pop() {
        out.push(x);
        for y in 0..n.n {
            if n.adj[x][y] && !(st.contains(&x) && st.contains(&y)) && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

fn check_verdict(d: &Decision, out: Status, pso: Status) -> Check {
    ensure(d.verdict.out_status == out && d.verdict.pso_status == pso, || {
        format!(
            "verdict ({}, {}) but the certificate supports ({}, {})",
            d.verdict.out_status.as_str(),
            d.verdict.pso_status.as_str(),
            out.as_str(),
            pso.as_str()
        )
    })
}

/// Re-verifies the hypotheses of the fired rule from its certificate.
pub fn verify_decision(g: &SimplicialGraph, d: &Decision) -> Check {
    let n = Naive::new(g);
    let any_sil = n.pairs().any(|(a, b)| n.sil(a, b));
    let pairs = naive_order_pairs(&n);
    let pcs = sorted_pcs(n.all_nontrivial_pcs());
    ensure(
        d.verdict.out_status != Status::Yes
            || matches!(d.verdict.pso_status, Status::Yes | Status::Unknown | Status::NotApplicable),
        || "out=yes together with pso=no".into(),
    )?;
    match (&d.rule, &d.certificate) {
        (
            Rule::NoSil,
            Certificate::NoSil {
                order_pairs,
                disconnected,
                nontrivial_pcs,
            },
        ) => {
            ensure(!any_sil, || "the graph has a SIL pair".into())?;
            let given: Vec<(usize, usize)> = order_pairs
                .iter()
                .map(|p| (p.lower.index(), p.upper.index()))
                .collect();
            ensure(given == pairs, || "order pairs differ".into())?;
            let disc: Set = (0..n.n).filter(|&v| n.star_components(v).len() > 1).collect();
            let given: Set = disconnected.iter().map(|v| v.index()).collect();
            ensure(given == disc, || "disconnected star complements differ".into())?;
            ensure(plain(nontrivial_pcs) == pcs, || "partial conjugations differ".into())?;
            let mut unordered: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            unordered.sort_unstable();
            unordered.dedup();
            let yes = disc.is_empty()
                && unordered.len() == 1
                && n.leq(unordered[0].0, unordered[0].1)
                && n.leq(unordered[0].1, unordered[0].0);
            let pso = if pcs.is_empty() { Status::NotApplicable } else { Status::No };
            check_verdict(d, if yes { Status::Yes } else { Status::No }, pso)
        }
        (Rule::ConnectedSil, Certificate::ConnectedSil { sil_pairs }) => {
            let given: Vec<(usize, usize)> = sil_pairs.iter().map(|&(a, b)| (a.index(), b.index())).collect();
            let expect: Vec<(usize, usize)> = n.pairs().filter(|&(a, b)| n.sil(a, b)).collect();
            ensure(!expect.is_empty() && given == expect, || "SIL pairs differ".into())?;
            ensure(!n.pairs().any(|(a, b)| n.separated(a, b)), || "a separated SIL pair exists".into())?;
            check_verdict(d, Status::Unknown, Status::Unknown)
        }
        (Rule::NoMaximalSystem, Certificate::NoMaximalSystem { .. }) => {
            ensure(n.pairs().any(|(a, b)| n.separated(a, b)), || "no separated SIL pair".into())?;
            check_verdict(d, Status::Unknown, Status::Unknown)
        }
        (Rule::CoreSingleton, Certificate::CoreSingleton { system, ker_p }) => {
            let s = check_system(&n, system)?;
            ensure(s.core.len() == 1, || "core is not a single vertex".into())?;
            ensure(n.connected(), || "graph is disconnected".into())?;
            ensure(!ker_p.is_empty(), || "empty kernel witness list".into())?;
            for k in ker_p {
                match k {
                    KerPGenerator::LeafTransvection(t) => {
                        let (v, w) = (t.moved.index(), t.by.index());
                        let link = n.link(v);
                        let maxes: Set = link.iter().copied().filter(|&u| naive_maximal(&n, u)).collect();
                        ensure(maxes == vec![w] && n.leq(v, w), || format!("{v} is not leaf-like at {w}"))?;
                    }
                    KerPGenerator::VhatConjugation { v, component } => {
                        let c = to_set(component);
                        let class = naive_vhat_class(&n, v.index(), c[0]);
                        ensure(class == c && !subset(&c, &n.star(v.index())), || {
                            format!("not a nontrivial v-hat class of {}", v.index())
                        })?;
                    }
                }
            }
            check_verdict(d, Status::No, Status::Unknown)
        }
        (
            Rule::AdditionalComponents,
            Certificate::AdditionalComponents {
                system,
                lambda,
                factors,
            },
        ) => {
            let s = check_system(&n, system)?;
            ensure(s.additional.len() >= 2, || "fewer than two additional components".into())?;
            let lam: Set = (0..n.n).filter(|&v| s.core_in_link(&n, v)).collect();
            ensure(to_set(lambda) == lam, || "lambda differs".into())?;
            ensure(factors.len() == s.additional.len(), || "factor count".into())?;
            let all = n.all_nontrivial_pcs();
            for (f, dj) in factors.iter().zip(&s.additional) {
                let expect = sorted_pcs(all.iter().filter(|(_, c)| c == dj).cloned());
                ensure(sorted_pcs(plain(f)) == expect, || "factor generators differ".into())?;
                for &v in &lam {
                    ensure(expect.iter().any(|(w, _)| *w == v), || "a lambda vertex is missing from a factor".into())?;
                }
            }
            for (j, fj) in factors.iter().enumerate() {
                for fk in &factors[j + 1..] {
                    for (v, c) in plain(fj) {
                        for (w, e) in plain(fk) {
                            ensure(n.commutes(v, &c, w, &e), || "factors do not commute".into())?;
                        }
                    }
                }
            }
            check_verdict(d, Status::No, Status::No)
        }
        (Rule::OneAdditionalComponent, Certificate::OneAdditionalComponent { system }) => {
            let s = check_system(&n, system)?;
            ensure(s.additional.len() == 1, || "not exactly one additional component".into())?;
            check_verdict(d, Status::Unknown, Status::Unknown)
        }
        (
            Rule::StructureOfPso | Rule::Semidirect,
            Certificate::Report {
                system,
                report,
                order_pairs,
            },
        ) => {
            let s = check_system(&n, system)?;
            ensure(s.additional.is_empty(), || "additional components present".into())?;
            ensure(order_pairs.len() == pairs.len(), || "order pairs differ".into())?;
            let dominant: Vec<(usize, Set)> = pcs.iter().filter(|(v, c)| s.dominant(&n, *v, c)).cloned().collect();
            let subordinate: Vec<(usize, Set)> =
                pcs.iter().filter(|(v, c)| s.subordinate(&n, *v, c)).cloned().collect();
            let excluded = plain(&report.excluded);
            for (v, c) in &excluded {
                let i = s.shared_index(*v).ok_or("excluded pc outside shared components")?;
                let target = if i == 0 { 1 } else { 0 };
                ensure(s.shared.get(target) == Some(c), || "unexpected excluded pc".into())?;
            }
            let factor = |name: &str| report.factor(name).map(plain).unwrap_or_default();
            if d.rule == Rule::StructureOfPso {
                ensure(report.kind == ReportKind::N1n2, || "wrong report kind".into())?;
                ensure(subordinate.is_empty(), || "subordinate pcs exist".into())?;
                let n1 = factor("N1");
                let n2 = factor("N2");
                let mut all_dom = sorted_pcs(n1.iter().chain(&excluded).cloned());
                all_dom.dedup();
                ensure(all_dom == dominant, || "N1 plus exclusions is not the dominant set".into())?;
                let rest: Vec<(usize, Set)> = pcs.iter().filter(|p| !dominant.contains(p)).cloned().collect();
                ensure(n2 == rest, || "N2 is not the non-dominant set".into())?;
                let expect = if n1.is_empty() || n2.is_empty() {
                    (Status::Unknown, Status::Unknown)
                } else if pairs.is_empty() {
                    (Status::No, Status::No)
                } else {
                    (Status::Unknown, Status::No)
                };
                check_verdict(d, expect.0, expect.1)
            } else {
                ensure(report.kind == ReportKind::Semidirect, || "wrong report kind".into())?;
                ensure(s.pivots.len() >= 3, || "fewer than three pivots".into())?;
                let g_core: Vec<(usize, Set)> = pcs.iter().filter(|(v, _)| s.core.contains(v)).cloned().collect();
                ensure(factor("G") == g_core && !g_core.is_empty(), || "G differs or is empty".into())?;
                ensure(factor("K") == subordinate, || "K is not the subordinate set".into())?;
                let mut hs: Vec<(usize, Set)> = report
                    .factors
                    .iter()
                    .filter(|f| f.name.starts_with('H'))
                    .flat_map(|f| plain(&f.generators))
                    .chain(excluded.iter().cloned())
                    .collect();
                hs.sort();
                hs.dedup();
                ensure(hs == dominant, || "H factors plus exclusions are not the dominant set".into())?;
                for (v, c) in &pcs {
                    if s.shared_index(*v).is_some() {
                        ensure(s.dominant(&n, *v, c) || s.subordinate(&n, *v, c), || {
                            format!("vertex {v} defines a pc that is neither dominant nor subordinate")
                        })?;
                    }
                }
                let expect_out = if pairs.is_empty() { Status::No } else { Status::Unknown };
                check_verdict(d, expect_out, Status::No)
            }
        }
        (
            Rule::BeingAhCorollary,
            Certificate::Corollary {
                system, finite_index, ..
            },
        ) => {
            let s = check_system(&n, system)?;
            ensure(s.pivots.len() == 3 && s.additional.is_empty(), || "need three pivots and no additional components".into())?;
            ensure(!pcs.iter().any(|(v, _)| s.core.contains(v)), || "a core vertex defines a pc".into())?;
            for (i, ci) in s.shared.iter().enumerate() {
                let definers: Set = pcs
                    .iter()
                    .filter(|(v, c)| ci.contains(v) && s.subordinate(&n, *v, c))
                    .map(|(v, _)| *v)
                    .collect();
                for (v, c) in pcs.iter().filter(|(v, _)| s.shared_index(*v) == Some(i)) {
                    ensure(s.dominant(&n, *v, c) || s.subordinate(&n, *v, c), || {
                        format!("vertex {v} defines a pc of another type")
                    })?;
                    ensure(definers.contains(v), || format!("vertex {v} defines no subordinate pc"))?;
                    if s.subordinate(&n, *v, c) {
                        ensure(definers.iter().any(|w| w != v && c.contains(w)), || {
                            format!("a subordinate support of {v} holds no other definer")
                        })?;
                        ensure(definers.iter().all(|w| w == v || c.contains(w)), || {
                            format!("a subordinate support of {v} misses a definer")
                        })?;
                    }
                }
            }
            ensure(*finite_index == pairs.is_empty(), || "finite-index flag".into())?;
            check_verdict(d, Status::Unknown, Status::Yes)
        }
        (Rule::Unresolved, Certificate::Unresolved { system, .. }) => {
            check_system(&n, system)?;
            check_verdict(d, Status::Unknown, Status::Unknown)
        }
        _ => Err(format!("rule {} carries a mismatched certificate", d.rule.as_str())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::decide;
    use crate::gen::{named, FIXTURES};

    #[test]
    fn fixtures_verify() {
        for name in FIXTURES {
            let g = named(name).unwrap();
            let d = decide(&g).unwrap();
            verify_decision(&g, &d).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn tampered_verdict_is_caught() {
        let g = named("gamma3").unwrap();
        let mut d = decide(&g).unwrap();
        d.verdict.pso_status = Status::No;
        assert!(verify_decision(&g, &d).is_err());
        let g = named("two_additional").unwrap();
        let mut d = decide(&g).unwrap();
        if let Certificate::AdditionalComponents { factors, .. } = &mut d.certificate {
            factors[0].pop();
        }
        assert!(verify_decision(&g, &d).is_err());
    }
}
