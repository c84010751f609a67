//! Graph constructors: the `Λ_m` and `Γ(p,q,r)` families, figure fixtures
//! and seeded Erdős–Rényi sampling.
//!
//! # Fixture transcriptions
//!
//! Figures are read with one convention: a dot drawn on a straight segment
//! subdivides that segment into two edges.
//!
//! * `fig_sl2`: two tips `t`, `b` are joined to every vertex of the middle
//!   row (`L1`, `R1`, `L2`, `R2`, `m`). The middle row carries the edges
//!   `L2–R2`, `L2–L1`, `R2–R1`, `m–L1`, `m–R1`.
//! * `gamma1`: `v1`, `v2`, `v3` each joined to `l1` and `l2`, plus the path
//!   `l1–d1–d2–l2`.
//! * `gamma2` / `gamma3`: three blocks `w_i–v_i–v_i'–w_i'` where `w_i` and
//!   `w_i'` are joined to both hubs `hr`, `hl`. In `gamma3` additionally
//!   `v_i–hr` and `v_i'–hl`. Primes are written with a `p` suffix.
//! * `two_additional`: `c1`, `c2` joined to both hubs `h1`, `h2`, and two
//!   paths `h1–a1–a2–h2`, `h1–b1–b2–h2`.
//! * `decomp_left`: `K_{2,3}` with spokes `w1`, `w2`, `w3` and hubs `hl`,
//!   `hr`. `decomp_right`: spokes `w1`, `w2` and the path `hl–d1–d2–hr`.
//! * `no_max_system`: a graph with a separated SIL pair but no maximal
//!   SIL-pair system (`w1`, `w2` on hubs `c1`, `c2`, the path `c1–v–u–c2`
//!   and a pendant `z` on `c1`).

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, MAX_VERTICES};

/// Parameters of `Γ(n, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GnpConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

/// Names accepted by [`named`].
pub const FIXTURES: &[&str] = &[
    "k1",
    "k2",
    "k3",
    "path3",
    "star3",
    "two_isolated",
    "three_isolated",
    "fig_sl2",
    "gamma1",
    "gamma2",
    "gamma3",
    "gamma_243",
    "two_additional",
    "decomp_left",
    "decomp_right",
    "lambda2",
    "lambda3",
    "no_max_system",
];

/// Non-green vertices and internal edges of `Λ_m`, plus which of them attach
/// to the top (`gt`) and bottom (`gb`) green vertices.
struct LambdaBlock {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

fn lambda_block(m: usize) -> Result<LambdaBlock> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("Λ_m needs m ≥ 2, got {m}")));
    }
    if m == 2 {
        // b1 – r1 – u1 – b2
        return Ok(LambdaBlock {
            names: ["b1", "r1", "u1", "b2"].map(String::from).to_vec(),
            edges: vec![(0, 1), (1, 2), (2, 3)],
            top: vec![0, 1, 3],
            bottom: vec![0, 2, 3],
        });
    }
    let mut names = Vec::with_capacity(3 * m);
    let (mut top, mut bottom) = (Vec::new(), Vec::new());
    for k in 1..=m {
        let base = names.len();
        names.push(format!("b{k}"));
        names.push(format!("r{k}"));
        names.push(format!("u{k}"));
        top.extend([base, base + 1]);
        bottom.extend([base, base + 2]);
    }
    let len = names.len();
    let edges = (0..len).map(|i| (i, (i + 1) % len)).collect();
    Ok(LambdaBlock {
        names,
        edges,
        top,
        bottom,
    })
}

fn assemble(blocks: &[(String, LambdaBlock)]) -> Result<SimplicialGraph> {
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for (prefix, block) in blocks {
        let off = names.len();
        names.extend(block.names.iter().map(|n| format!("{prefix}{n}")));
        edges.extend(block.edges.iter().map(|&(a, b)| (a + off, b + off)));
        top.extend(block.top.iter().map(|&i| i + off));
        bottom.extend(block.bottom.iter().map(|&i| i + off));
    }
    let gt = names.len();
    let gb = gt + 1;
    names.push("gt".into());
    names.push("gb".into());
    edges.extend(top.into_iter().map(|i| (i, gt)));
    edges.extend(bottom.into_iter().map(|i| (i, gb)));
    SimplicialGraph::from_edges(names, edges)
}

/// `Λ_m` for `m ≥ 2`.
pub fn lambda(m: usize) -> Result<SimplicialGraph> {
    assemble(&[(String::new(), lambda_block(m)?)])
}

/// `Γ(p, q, r)`: disjoint `Λ_p`, `Λ_q`, `Λ_r` with their green vertices
/// identified. Block vertices are prefixed `a_`, `b_`, `c_`.
pub fn gamma_pqr(p: usize, q: usize, r: usize) -> Result<SimplicialGraph> {
    let blocks = [("a_", p), ("b_", q), ("c_", r)]
        .into_iter()
        .map(|(prefix, m)| Ok((prefix.to_string(), lambda_block(m)?)))
        .collect::<Result<Vec<_>>>()?;
    assemble(&blocks)
}

/// Maps a `Γ(2,2,2)` vertex name to the corresponding `gamma3` name.
pub fn gamma222_to_gamma3(name: &str) -> Option<String> {
    match name {
        "gt" => return Some("hr".into()),
        "gb" => return Some("hl".into()),
        _ => {}
    }
    let (prefix, rest) = name.split_once('_')?;
    let i = match prefix {
        "a" => 1,
        "b" => 2,
        "c" => 3,
        _ => return None,
    };
    let mapped = match rest {
        "b1" => format!("w{i}"),
        "r1" => format!("v{i}"),
        "u1" => format!("v{i}p"),
        "b2" => format!("w{i}p"),
        _ => return None,
    };
    Some(mapped)
}

/// Uniform draw in `[0, 1)` for the unordered pair with the given index.
fn pair_uniform(seed: u64, pair: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(u128::from(pair) * 2);
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Erdős–Rényi graph on vertices `v0..v{n-1}`. Pair `(i, j)`, `i < j`, is an
/// edge iff the ChaCha8 stream keyed by `seed`, read at the pair's
/// lexicographic index, yields a uniform value below `p`.
pub fn gnp(c: GnpConfig) -> Result<SimplicialGraph> {
    if !(0.0..=1.0).contains(&c.p) || c.p.is_nan() {
        return Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {}", c.p)));
    }
    if c.n == 0 || c.n > MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "n must lie in 1..={MAX_VERTICES}, got {}",
            c.n
        )));
    }
    let mut edges = Vec::new();
    let mut pair = 0u64;
    for i in 0..c.n {
        for j in i + 1..c.n {
            if pair_uniform(c.seed, pair) < c.p {
                edges.push((i, j));
            }
            pair += 1;
        }
    }
    SimplicialGraph::from_edges((0..c.n).map(|i| format!("v{i}")), edges)
}

fn from_names(names: &[&str], edges: &[(&str, &str)]) -> SimplicialGraph {
    SimplicialGraph::from_named_edges(names, edges.iter().copied()).expect("fixture is well formed")
}

fn gamma23(with_hub_edges: bool) -> SimplicialGraph {
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=3 {
        let w = format!("w{i}");
        let v = format!("v{i}");
        let vp = format!("v{i}p");
        let wp = format!("w{i}p");
        edges.push((w.clone(), v.clone()));
        edges.push((v.clone(), vp.clone()));
        edges.push((vp.clone(), wp.clone()));
        for hub in ["hr", "hl"] {
            edges.push((w.clone(), hub.to_string()));
            edges.push((wp.clone(), hub.to_string()));
        }
        if with_hub_edges {
            edges.push((v.clone(), "hr".into()));
            edges.push((vp.clone(), "hl".into()));
        }
        names.extend([w, v, vp, wp]);
    }
    names.extend(["hr".to_string(), "hl".to_string()]);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    from_names(&names, &edges)
}

/// A documented fixture by name; see [`FIXTURES`].
pub fn named(name: &str) -> Result<SimplicialGraph> {
    let g = match name {
        "k1" => from_names(&["a"], &[]),
        "k2" => from_names(&["a", "b"], &[("a", "b")]),
        "k3" => from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]),
        "path3" => from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]),
        "star3" => from_names(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("c", "d")]),
        "two_isolated" => from_names(&["a", "b"], &[]),
        "three_isolated" => from_names(&["a", "b", "c"], &[]),
        "fig_sl2" => {
            let mut edges = Vec::new();
            for tip in ["t", "b"] {
                for mid in ["L1", "R1", "L2", "R2", "m"] {
                    edges.push((tip, mid));
                }
            }
            edges.extend([("L2", "R2"), ("L2", "L1"), ("R2", "R1"), ("m", "L1"), ("m", "R1")]);
            from_names(&["t", "b", "L1", "R1", "L2", "R2", "m"], &edges)
        }
        "gamma1" => from_names(
            &["v1", "v2", "v3", "l1", "l2", "d1", "d2"],
            &[
                ("v1", "l1"),
                ("v1", "l2"),
                ("v2", "l1"),
                ("v2", "l2"),
                ("v3", "l1"),
                ("v3", "l2"),
                ("d1", "l1"),
                ("d2", "l2"),
                ("d1", "d2"),
            ],
        ),
        "gamma2" => gamma23(false),
        "gamma3" => gamma23(true),
        "gamma_243" => gamma_pqr(2, 4, 3)?,
        "two_additional" => from_names(
            &["c1", "c2", "h1", "h2", "a1", "a2", "b1", "b2"],
            &[
                ("c1", "h1"),
                ("c1", "h2"),
                ("c2", "h1"),
                ("c2", "h2"),
                ("a1", "a2"),
                ("a1", "h1"),
                ("a2", "h2"),
                ("b1", "b2"),
                ("b1", "h1"),
                ("b2", "h2"),
            ],
        ),
        "decomp_left" => from_names(
            &["w1", "w2", "w3", "hl", "hr"],
            &[
                ("w1", "hl"),
                ("w1", "hr"),
                ("w2", "hl"),
                ("w2", "hr"),
                ("w3", "hl"),
                ("w3", "hr"),
            ],
        ),
        "decomp_right" => from_names(
            &["w1", "w2", "hl", "hr", "d1", "d2"],
            &[
                ("w1", "hl"),
                ("w1", "hr"),
                ("w2", "hl"),
                ("w2", "hr"),
                ("d1", "hl"),
                ("d2", "hr"),
                ("d1", "d2"),
            ],
        ),
        "lambda2" => lambda(2)?,
        "lambda3" => lambda(3)?,
        "no_max_system" => from_names(
            &["c1", "c2", "w1", "w2", "v", "u", "z"],
            &[
                ("w1", "c1"),
                ("w1", "c2"),
                ("w2", "c1"),
                ("w2", "c2"),
                ("v", "c1"),
                ("v", "u"),
                ("u", "c2"),
                ("z", "c1"),
            ],
        ),
        other => return Err(Error::InvalidParameter(format!("unknown fixture `{other}`"))),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_sizes() {
        let l2 = lambda(2).unwrap();
        assert_eq!((l2.vertex_count(), l2.edge_count()), (6, 9));
        let l3 = lambda(3).unwrap();
        assert_eq!((l3.vertex_count(), l3.edge_count()), (11, 21));
        for m in 3..8 {
            let l = lambda(m).unwrap();
            assert_eq!((l.vertex_count(), l.edge_count()), (3 * m + 2, 7 * m));
        }
        assert!(matches!(lambda(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn gamma_pqr_sizes() {
        assert_eq!(gamma_pqr(2, 4, 3).unwrap().vertex_count(), 27);
        assert_eq!(gamma_pqr(3, 3, 3).unwrap().vertex_count(), 29);
        assert!(gamma_pqr(2, 1, 2).is_err());
    }

    #[test]
    fn gamma222_matches_gamma3() {
        let a = gamma_pqr(2, 2, 2).unwrap();
        let b = named("gamma3").unwrap();
        assert_eq!(a.vertex_count(), b.vertex_count());
        assert_eq!(a.edge_count(), b.edge_count());
        for (u, v) in a.edges() {
            let mu = gamma222_to_gamma3(a.name(u)).unwrap();
            let mv = gamma222_to_gamma3(a.name(v)).unwrap();
            assert!(b.adjacent(b.vertex(&mu).unwrap(), b.vertex(&mv).unwrap()), "{mu}-{mv}");
        }
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        let empty = gnp(GnpConfig { n: 7, p: 0.0, seed: 1 }).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = gnp(GnpConfig { n: 7, p: 1.0, seed: 1 }).unwrap();
        assert_eq!(full.edge_count(), 21);
        let c = GnpConfig { n: 30, p: 0.4, seed: 99 };
        assert_eq!(gnp(c).unwrap(), gnp(c).unwrap());
        assert_ne!(gnp(c).unwrap(), gnp(GnpConfig { seed: 100, ..c }).unwrap());
        assert!(gnp(GnpConfig { n: 3, p: 1.5, seed: 0 }).is_err());
        assert!(gnp(GnpConfig { n: 0, p: 0.5, seed: 0 }).is_err());
    }

    #[test]
    fn gnp_golden() {
        let g = gnp(GnpConfig { n: 10, p: 0.5, seed: 42 }).unwrap();
        let edges: Vec<(usize, usize)> =
            g.edges().into_iter().map(|(u, v)| (u.index(), v.index())).collect();
        assert_eq!(edges, GNP_10_05_42);
    }

    // Recorded from the first build; guards against drift in the sampler.
    const GNP_10_05_42: &[(usize, usize)] = &[
        (0, 3), (0, 5), (0, 6), (0, 7), (1, 2), (1, 8), (2, 3), (2, 4), (2, 5), (2, 6),
        (2, 7), (2, 9), (3, 4), (3, 5), (4, 6), (4, 7), (4, 8), (5, 7), (5, 8), (7, 8),
    ];

    #[test]
    fn fixture_shapes() {
        let sl2 = named("fig_sl2").unwrap();
        assert_eq!((sl2.vertex_count(), sl2.edge_count()), (7, 15));
        let g1 = named("gamma1").unwrap();
        assert_eq!(g1.vertex_count(), 7);
        let ta = named("two_additional").unwrap();
        let hubs = ta.link_of_set(&ta.set_of(&["c1", "c2"]).unwrap()).unwrap();
        assert_eq!(hubs, ta.set_of(&["h1", "h2"]).unwrap());
        for name in FIXTURES {
            assert!(named(name).is_ok(), "{name}");
        }
        assert!(named("nope").is_err());
    }
}
