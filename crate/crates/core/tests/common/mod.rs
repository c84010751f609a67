//! Brute-force oracles written straight from the definitions, on plain
//! `Vec<usize>` sets. They share no code with the library beyond reading the
//! edge list.

#![allow(dead_code)]

use raag_out::gen::{gnp, GnpConfig};
use raag_out::sil::SilSystemDecomposition;
use raag_out::{SimplicialGraph, VertexSet};

pub type Set = Vec<usize>;

pub struct Oracle {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

pub fn to_set(s: &VertexSet) -> Set {
    s.iter().map(|v| v.index()).collect()
}

pub fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

pub fn meet(a: &[usize], b: &[usize]) -> Set {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

impl Oracle {
    pub fn new(g: &SimplicialGraph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u.index()][v.index()] = true;
            adj[v.index()][u.index()] = true;
        }
        Oracle { n, adj }
    }

    pub fn link(&self, v: usize) -> Set {
        (0..self.n).filter(|&u| self.adj[v][u]).collect()
    }

    pub fn star(&self, v: usize) -> Set {
        let mut s = self.link(v);
        s.push(v);
        s.sort_unstable();
        s
    }

    pub fn minus(&self, s: &[usize]) -> Set {
        (0..self.n).filter(|x| !s.contains(x)).collect()
    }

    /// Components of the induced subgraph on `within`, as sorted sets, by
    /// repeated relaxation of a label array.
    pub fn components(&self, within: &[usize]) -> Vec<Set> {
        let mut label: Vec<usize> = (0..self.n).collect();
        loop {
            let mut changed = false;
            for &x in within {
                for &y in within {
                    if self.adj[x][y] && label[y] < label[x] {
                        label[x] = label[y];
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut roots: Vec<usize> = within.iter().map(|&x| label[x]).collect();
        roots.sort_unstable();
        roots.dedup();
        roots
            .into_iter()
            .map(|r| within.iter().copied().filter(|&x| label[x] == r).collect())
            .collect()
    }

    pub fn star_components(&self, v: usize) -> Vec<Set> {
        self.components(&self.minus(&self.star(v)))
    }

    pub fn leq(&self, v: usize, w: usize) -> bool {
        subset(&self.link(v), &self.star(w))
    }

    pub fn pair_components(&self, a: usize, b: usize) -> Vec<Set> {
        self.components(&self.minus(&meet(&self.link(a), &self.link(b))))
    }

    pub fn sil(&self, a: usize, b: usize) -> bool {
        a != b
            && !self.adj[a][b]
            && self
                .pair_components(a, b)
                .iter()
                .any(|c| !c.contains(&a) && !c.contains(&b))
    }

    pub fn separated(&self, a: usize, b: usize) -> bool {
        self.sil(a, b)
            && self
                .pair_components(a, b)
                .iter()
                .all(|c| !(c.contains(&a) && c.contains(&b)))
    }

    pub fn connected(&self) -> bool {
        self.components(&(0..self.n).collect::<Vec<_>>()).len() <= 1
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| (a + 1..self.n).map(move |b| (a, b))).collect()
    }

    /// `(dominating_a, dominating_b, subordinate_a, subordinate_b, shared)`
    /// for a nonadjacent pair.
    pub fn classify_pair(&self, a: usize, b: usize) -> (Set, Set, Vec<Set>, Vec<Set>, Vec<Set>) {
        let ca = self.star_components(a);
        let cb = self.star_components(b);
        let da = ca.iter().find(|c| c.contains(&b)).unwrap().clone();
        let db = cb.iter().find(|c| c.contains(&a)).unwrap().clone();
        let shared: Vec<Set> = ca.iter().filter(|c| cb.contains(c)).cloned().collect();
        let sa = ca.iter().filter(|c| **c != da && !shared.contains(c)).cloned().collect();
        let sb = cb.iter().filter(|c| **c != db && !shared.contains(c)).cloned().collect();
        (da, db, sa, sb, shared)
    }

    /// Checks the five defining conditions of a maximal SIL-pair system and
    /// the partition `core ⊎ C_i ⊎ D_j = V`.
    pub fn check_decomposition(&self, d: &SilSystemDecomposition) -> Result<(), String> {
        let pivots: Set = d.pivots().iter().map(|v| v.index()).collect();
        let core = to_set(d.core());
        if pivots.len() < 2 {
            return Err("fewer than two pivots".into());
        }
        for (i, &a) in pivots.iter().enumerate() {
            for &b in &pivots[i + 1..] {
                if !self.sil(a, b) {
                    return Err(format!("({a},{b}) not SIL"));
                }
                if meet(&self.link(a), &self.link(b)) != core {
                    return Err(format!("({a},{b}) link intersection is not the core"));
                }
            }
        }
        for (a, b) in self.pairs() {
            if self.separated(a, b) && meet(&self.link(a), &self.link(b)).len() < core.len() {
                return Err(format!("separated ({a},{b}) below core size"));
            }
        }
        let comps = self.components(&self.minus(&core));
        let mut owners = Vec::new();
        for &w in &pivots {
            let k = comps.iter().position(|c| c.contains(&w)).ok_or("pivot in core")?;
            if owners.contains(&k) {
                return Err(format!("pivot {w} shares a component"));
            }
            owners.push(k);
        }
        for (k, c) in comps.iter().enumerate() {
            if owners.contains(&k) {
                continue;
            }
            for &x in c {
                if pivots.iter().any(|&w| self.sil(x, w)) {
                    return Err(format!("{x} in a pivot-free component is SIL with a pivot"));
                }
            }
        }
        let mut cover = core.clone();
        for part in d.shared_components.iter().chain(&d.additional_components) {
            let p = to_set(part);
            if p.iter().any(|x| cover.contains(x)) {
                return Err("parts overlap".into());
            }
            cover.extend(p);
        }
        cover.sort_unstable();
        if cover != (0..self.n).collect::<Vec<_>>() {
            return Err("parts do not cover V".into());
        }
        for (w, c) in pivots.iter().zip(&d.shared_components) {
            if !c.contains(raag_out::VertexId::from_index(*w)) {
                return Err("pivot outside its shared component".into());
            }
        }
        Ok(())
    }

    /// Every one of the thirteen type predicates that holds for `P_v^C`,
    /// each evaluated on its own.
    pub fn pc_types(&self, d: &SilSystemDecomposition, v: usize, c: &[usize]) -> Vec<u8> {
        let core = to_set(d.core());
        let shared: Vec<Set> = d.shared_components.iter().map(to_set).collect();
        let additional: Vec<Set> = d.additional_components.iter().map(to_set).collect();
        let pivots: Set = d.pivots().iter().map(|v| v.index()).collect();
        let core_in = |x: usize| subset(&core, &self.link(x));
        let meets_core = c.iter().any(|x| core.contains(x));
        let mut out = Vec::new();
        if let Some(i) = shared.iter().position(|s| s.contains(&v)) {
            let ci = &shared[i];
            if core_in(v) {
                if shared.iter().enumerate().any(|(k, s)| k != i && s.as_slice() == c) {
                    out.push(1);
                }
                if additional.iter().any(|s| s.as_slice() == c) {
                    out.push(2);
                }
                if subset(c, ci) && c.iter().any(|&w| core_in(w)) {
                    out.push(3);
                }
                if subset(c, ci) && !c.iter().any(|&w| core_in(w)) {
                    out.push(4);
                }
            } else {
                if subset(c, ci) {
                    out.push(5);
                }
                if additional.iter().any(|s| s.as_slice() == c) {
                    out.push(6);
                }
                if meets_core {
                    out.push(7);
                }
            }
        } else if core.contains(&v) {
            if meets_core {
                out.push(8);
            }
            if !meets_core && shared.iter().any(|s| subset(c, s)) {
                out.push(9);
            }
            if !meets_core && additional.iter().any(|s| subset(c, s)) {
                out.push(10);
            }
        } else {
            let j = additional.iter().position(|s| s.contains(&v)).unwrap();
            if subset(c, &additional[j]) {
                out.push(11);
            }
            if additional.iter().enumerate().any(|(k, s)| k != j && s.as_slice() == c) {
                out.push(12);
            }
            if subset(&pivots, c) {
                out.push(13);
            }
        }
        out
    }

    /// Commutation of two nontrivial pcs straight from the pair split.
    pub fn commutes(&self, v: usize, c: &[usize], w: usize, d: &[usize]) -> bool {
        if v == w || self.adj[v][w] || !self.sil(v, w) {
            return true;
        }
        let (da, db, _, _, shared) = self.classify_pair(v, w);
        let dom_c = c == da.as_slice();
        let dom_d = d == db.as_slice();
        let sh_c = shared.iter().any(|s| s.as_slice() == c);
        let sh_d = shared.iter().any(|s| s.as_slice() == d);
        !((dom_c && dom_d) || (dom_c && sh_d) || (sh_c && dom_d) || (sh_c && sh_d && c == d))
    }
}

/// The seeded corpus of small random graphs shared by several checks.
pub fn corpus(count: usize) -> Vec<SimplicialGraph> {
    const PS: [f64; 5] = [0.15, 0.3, 0.45, 0.6, 0.75];
    (0..count)
        .map(|i| {
            gnp(GnpConfig {
                n: 2 + i % 7,
                p: PS[(i / 7) % PS.len()],
                seed: 1_000 + i as u64,
            })
            .unwrap()
        })
        .collect()
}

/// A graph on `n ≤ 8` vertices from an edge bitmask over pairs `i < j`.
pub fn from_mask(n: usize, mask: u32) -> SimplicialGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    SimplicialGraph::from_edges((0..n).map(|i| format!("x{i}")), edges).unwrap()
}
