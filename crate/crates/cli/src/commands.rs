use raag_out::decide::decide;
use raag_out::order::{equivalence_classes, order_pairs};
use raag_out::pconj::{classify_pc, enumerate_pcs};
use raag_out::presentation::pso_presentation;
use raag_out::sil::{maximal_sil_system, separated_sil_pairs, sil_pairs, SilSystemDecomposition};
use raag_out::{Error, Result, SimplicialGraph, VertexId};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PresentationFormat {
    Text,
    Gap,
    Json,
}

#[derive(Serialize)]
struct SystemDoc {
    pivots: Vec<String>,
    core: Vec<String>,
    shared_components: Vec<Vec<String>>,
    additional_components: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct PcDoc {
    name: String,
    vertex: String,
    support: Vec<String>,
    out_trivial: bool,
    #[serde(rename = "type")]
    kind: Option<String>,
}

#[derive(Serialize)]
struct Analysis {
    vertices: Vec<String>,
    edge_count: usize,
    order_pairs: Vec<[String; 2]>,
    equivalence_classes: Vec<Vec<String>>,
    sil_pairs: Vec<[String; 2]>,
    separated_sil_pairs: Vec<[String; 2]>,
    system: Option<SystemDoc>,
    system_error: Option<String>,
    partial_conjugations: Vec<PcDoc>,
}

fn pair(g: &SimplicialGraph, a: VertexId, b: VertexId) -> [String; 2] {
    [g.name(a).to_string(), g.name(b).to_string()]
}

fn system_doc(g: &SimplicialGraph, d: &SilSystemDecomposition) -> SystemDoc {
    SystemDoc {
        pivots: d.pivots().iter().map(|&v| g.name(v).to_string()).collect(),
        core: g.set_names(d.core()),
        shared_components: d.shared_components.iter().map(|c| g.set_names(c)).collect(),
        additional_components: d.additional_components.iter().map(|c| g.set_names(c)).collect(),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Order, SIL pairs, the maximal system when one exists, and every partial
/// conjugation with its type (types need a system).
pub fn analyze(g: &SimplicialGraph) -> Result<String> {
    let (system, system_error) = match maximal_sil_system(g) {
        Ok(d) => (d, None),
        Err(e @ Error::NoMaximalSystem(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let mut pcs = Vec::new();
    for p in enumerate_pcs(g) {
        let kind = match &system {
            Some(d) => Some(classify_pc(g, d, &p)?.to_string()),
            None => None,
        };
        pcs.push(PcDoc {
            name: p.name(g),
            vertex: g.name(p.vertex).to_string(),
            support: g.set_names(&p.support),
            out_trivial: p.out_trivial,
            kind,
        });
    }
    Ok(json(&Analysis {
        vertices: g.names().to_vec(),
        edge_count: g.edge_count(),
        order_pairs: order_pairs(g).iter().map(|p| pair(g, p.lower, p.upper)).collect(),
        equivalence_classes: equivalence_classes(g).iter().map(|c| g.set_names(&c.members)).collect(),
        sil_pairs: sil_pairs(g).iter().map(|&(a, b)| pair(g, a, b)).collect(),
        separated_sil_pairs: separated_sil_pairs(g).iter().map(|&(a, b)| pair(g, a, b)).collect(),
        system: system.as_ref().map(|d| system_doc(g, d)),
        system_error,
        partial_conjugations: pcs,
    }))
}

pub fn decide_json(g: &SimplicialGraph) -> Result<String> {
    Ok(json(&decide(g)?.to_doc(g)))
}

pub fn presentation(g: &SimplicialGraph, format: PresentationFormat) -> String {
    let p = pso_presentation(g);
    match format {
        PresentationFormat::Text => p.to_text(g),
        PresentationFormat::Gap => p.to_gap(),
        PresentationFormat::Json => json(&p.to_doc(g)),
    }
}
