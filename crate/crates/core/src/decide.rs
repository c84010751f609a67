//! Rule chain deciding acylindrical hyperbolicity of `Out(A_Γ)` and
//! `PSO(A_Γ)`.
//!
//! Rules are tried in a fixed order and the first that applies produces the
//! decision. Each decision carries a certificate holding the data its
//! hypotheses were checked on, so [`crate::verify`] can re-check them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};
use crate::order::{equivalent, order_pairs, OrderPair};
use crate::pconj::{commutes, nontrivial_pcs, PartialConjugation, PcType};
use crate::presentation::{
    check_shared_vertex_hypothesis, n1n2_report, semidirect_report, typed_pcs, DecompositionReport,
};
use crate::sil::{has_sil_pair, ker_p_generators, maximal_sil_system, sil_pairs, KerPGenerator, Region, SilSystemDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Unknown,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Unknown => "unknown",
            Status::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub out_status: Status,
    pub pso_status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    NoSil,
    ConnectedSil,
    NoMaximalSystem,
    CoreSingleton,
    AdditionalComponents,
    OneAdditionalComponent,
    StructureOfPso,
    BeingAhCorollary,
    Semidirect,
    Unresolved,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::NoSil => "no_sil",
            Rule::ConnectedSil => "connected_sil",
            Rule::NoMaximalSystem => "no_maximal_system",
            Rule::CoreSingleton => "core_singleton",
            Rule::AdditionalComponents => "withaddcpnts",
            Rule::OneAdditionalComponent => "one_additional_component",
            Rule::StructureOfPso => "structureofPSO",
            Rule::BeingAhCorollary => "beingAHcor",
            Rule::Semidirect => "semidirect",
            Rule::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    NoSil {
        order_pairs: Vec<OrderPair>,
        /// Vertices whose star complement is disconnected.
        disconnected: Vec<VertexId>,
        nontrivial_pcs: Vec<PartialConjugation>,
    },
    ConnectedSil {
        sil_pairs: Vec<(VertexId, VertexId)>,
    },
    NoMaximalSystem {
        reason: String,
    },
    CoreSingleton {
        system: SilSystemDecomposition,
        ker_p: Vec<KerPGenerator>,
    },
    AdditionalComponents {
        system: SilSystemDecomposition,
        lambda: VertexSet,
        /// One generator list per additional component.
        factors: Vec<Vec<PartialConjugation>>,
    },
    OneAdditionalComponent {
        system: SilSystemDecomposition,
    },
    Report {
        system: SilSystemDecomposition,
        report: DecompositionReport,
        order_pairs: Vec<OrderPair>,
    },
    Corollary {
        system: SilSystemDecomposition,
        typed: Vec<(PartialConjugation, PcType)>,
        finite_index: bool,
    },
    Unresolved {
        system: SilSystemDecomposition,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub rule: Rule,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
    /// Conclusions obtained by combining results rather than read off one.
    pub derived: Vec<String>,
}

/// Untyped certificate value for export.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CertValue {
    Flag(bool),
    Count(usize),
    Text(String),
    Names(Vec<String>),
    Lists(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct DecisionDoc {
    pub out_status: Status,
    pub pso_status: Status,
    pub rule: &'static str,
    pub certificate: BTreeMap<String, CertValue>,
    pub warnings: Vec<String>,
    pub derived: Vec<String>,
}

fn decision(out: Status, pso: Status, rule: Rule, certificate: Certificate) -> Decision {
    Decision {
        verdict: Verdict {
            out_status: out,
            pso_status: pso,
        },
        rule,
        certificate,
        warnings: Vec::new(),
        derived: Vec::new(),
    }
}

/// Outcome of the triviality test for the nilpotent subgroup generated by
/// partial conjugations and strict transvections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTriviality {
    pub trivial: bool,
    pub nontrivial_pcs: Vec<PartialConjugation>,
    /// Pairs `a ≤ b` with `a ≁ b`.
    pub strict_pairs: Vec<OrderPair>,
}

fn require_no_sil(g: &SimplicialGraph) -> Result<()> {
    if has_sil_pair(g) {
        Err(Error::precondition("the graph has a SIL pair"))
    } else {
        Ok(())
    }
}

pub fn p_is_trivial(g: &SimplicialGraph) -> Result<PTriviality> {
    require_no_sil(g)?;
    let pcs = nontrivial_pcs(g);
    let strict: Vec<OrderPair> = order_pairs(g)
        .into_iter()
        .filter(|p| !equivalent(g, p.lower, p.upper))
        .collect();
    Ok(PTriviality {
        trivial: pcs.is_empty() && strict.is_empty(),
        nontrivial_pcs: pcs,
        strict_pairs: strict,
    })
}

/// Complete answer for graphs without SIL pairs: `Out` is acylindrically
/// hyperbolic iff every star complement is connected and the only related
/// pair of vertices is one equivalent pair.
pub fn no_sil_rule(g: &SimplicialGraph) -> Result<Decision> {
    require_no_sil(g)?;
    let pairs = order_pairs(g);
    let disconnected: Vec<VertexId> = g
        .vertices()
        .filter(|&v| g.connected_components(&g.all().difference(&g.st(v))).len() > 1)
        .collect();
    let mut unordered: Vec<(VertexId, VertexId)> = pairs
        .iter()
        .map(|p| (p.lower.min(p.upper), p.lower.max(p.upper)))
        .collect();
    unordered.sort();
    unordered.dedup();
    let single_equivalent = unordered.len() == 1 && equivalent(g, unordered[0].0, unordered[0].1);
    let yes = disconnected.is_empty() && single_equivalent;
    let pcs = nontrivial_pcs(g);
    let pso = if pcs.is_empty() {
        Status::NotApplicable
    } else {
        Status::No
    };
    let mut d = decision(
        if yes { Status::Yes } else { Status::No },
        pso,
        Rule::NoSil,
        Certificate::NoSil {
            order_pairs: pairs,
            disconnected,
            nontrivial_pcs: pcs,
        },
    );
    if pso == Status::No {
        d.derived.push(
            "pso=no: without SIL pairs the partial conjugations pairwise commute, so PSO is infinite abelian".into(),
        );
    }
    Ok(d)
}

/// Fires when the core is a single vertex of a connected graph and the
/// projection kernel has a witness generator.
pub fn core_singleton_rule(g: &SimplicialGraph, d: &SilSystemDecomposition) -> Result<Option<Decision>> {
    if d.core().len() != 1 || !g.is_connected() {
        return Ok(None);
    }
    let ker_p = ker_p_generators(g)?;
    if ker_p.is_empty() {
        return Ok(None);
    }
    Ok(Some(decision(
        Status::No,
        Status::Unknown,
        Rule::CoreSingleton,
        Certificate::CoreSingleton {
            system: d.clone(),
            ker_p,
        },
    )))
}

fn additional_components_rule(g: &SimplicialGraph, d: &SilSystemDecomposition) -> Result<Option<Decision>> {
    let lambda: VertexSet = g.vertices().filter(|&v| d.core_in_link(g, v)).collect();
    let pcs = nontrivial_pcs(g);
    let factors: Vec<Vec<PartialConjugation>> = d
        .additional_components
        .iter()
        .map(|dj| pcs.iter().filter(|p| p.support == *dj).copied().collect())
        .collect();
    for (j, fj) in factors.iter().enumerate() {
        for fk in &factors[j + 1..] {
            for p in fj {
                for q in fk {
                    if !commutes(g, p, q)? {
                        return Ok(None);
                    }
                }
            }
        }
    }
    let extra: VertexSet = factors
        .iter()
        .flatten()
        .map(|p| p.vertex)
        .filter(|&v| !lambda.contains(v))
        .collect();
    let mut out = decision(
        Status::No,
        Status::No,
        Rule::AdditionalComponents,
        Certificate::AdditionalComponents {
            system: d.clone(),
            lambda,
            factors,
        },
    );
    if !extra.is_empty() {
        out.warnings.push(format!(
            "factors contain partial conjugations by {} whose links miss part of the core",
            extra.iter().map(|v| g.name(v)).collect::<Vec<_>>().join(", ")
        ));
    }
    out.derived.push(
        "pso=no: the product of the additional-component factors is an infinite normal direct product inside PSO".into(),
    );
    Ok(Some(out))
}

/// The extra corollary hypotheses beyond the shared-vertex condition:
/// every subordinate support of `v ∈ C_i` contains all other subordinate
/// definers of `C_i`, and no core vertex defines a nontrivial pc.
fn corollary_hypotheses(
    g: &SimplicialGraph,
    d: &SilSystemDecomposition,
    typed: &[(PartialConjugation, PcType)],
) -> std::result::Result<(), String> {
    check_shared_vertex_hypothesis(g, d, typed).map_err(|e| e.to_string())?;
    if let Some((p, _)) = typed.iter().find(|(p, _)| d.region(p.vertex) == Region::Core) {
        return Err(format!("core vertex {} defines {}", g.name(p.vertex), p.name(g)));
    }
    for (i, c) in d.shared_components.iter().enumerate() {
        let definers: Vec<VertexId> = typed
            .iter()
            .filter(|(p, t)| t.is_subordinate() && c.contains(p.vertex))
            .map(|(p, _)| p.vertex)
            .collect();
        for (p, t) in typed {
            if !t.is_subordinate() || d.region(p.vertex) != Region::Shared(i) {
                continue;
            }
            if let Some(w) = definers.iter().find(|&&w| w != p.vertex && !p.support.contains(w)) {
                return Err(format!(
                    "the support of {} misses the subordinate definer {}",
                    p.name(g),
                    g.name(*w)
                ));
            }
        }
    }
    Ok(())
}

fn decide_with_system(g: &SimplicialGraph, d: SilSystemDecomposition) -> Result<Decision> {
    if let Some(dec) = core_singleton_rule(g, &d)? {
        return Ok(dec);
    }
    match d.additional_components.len() {
        0 => {}
        1 => {
            let mut dec = decision(
                Status::Unknown,
                Status::Unknown,
                Rule::OneAdditionalComponent,
                Certificate::OneAdditionalComponent { system: d },
            );
            dec.warnings
                .push("a single additional component is not covered by any rule".into());
            return Ok(dec);
        }
        _ => {
            if let Some(dec) = additional_components_rule(g, &d)? {
                return Ok(dec);
            }
            let mut dec = decision(
                Status::Unknown,
                Status::Unknown,
                Rule::Unresolved,
                Certificate::Unresolved {
                    system: d,
                    reason: "additional-component factors do not commute".into(),
                },
            );
            dec.warnings.push("no rule applies to this decomposition".into());
            return Ok(dec);
        }
    }

    let pairs = order_pairs(g);
    let typed = typed_pcs(g, &d)?;
    let no_transvections = pairs.is_empty();

    if !typed.iter().any(|(_, t)| t.is_subordinate()) {
        let report = n1n2_report(g, &d)?;
        let empty: Vec<&str> = report
            .flags
            .iter()
            .filter(|f| !f.holds)
            .map(|f| f.name.as_str())
            .collect();
        let mut warnings = Vec::new();
        let verdict = if !empty.is_empty() {
            warnings.push(format!(
                "direct-product obstruction needs two infinite factors; failed: {}",
                empty.join(", ")
            ));
            (Status::Unknown, Status::Unknown)
        } else if no_transvections {
            (Status::No, Status::No)
        } else {
            warnings.push("PSO is a proper subgroup of Out* when transvections exist; Out-level status left open".into());
            (Status::Unknown, Status::No)
        };
        let mut dec = decision(
            verdict.0,
            verdict.1,
            Rule::StructureOfPso,
            Certificate::Report {
                system: d,
                report,
                order_pairs: pairs,
            },
        );
        dec.warnings = warnings;
        if dec.verdict.out_status == Status::No {
            dec.derived
                .push("out=no: PSO equals Out* without transvections and has finite index in Out".into());
        }
        return Ok(dec);
    }

    if d.pivots().len() == 3 && corollary_hypotheses(g, &d, &typed).is_ok() {
        return Ok(decision(
            Status::Unknown,
            Status::Yes,
            Rule::BeingAhCorollary,
            Certificate::Corollary {
                system: d,
                typed,
                finite_index: no_transvections,
            },
        ));
    }

    if let Ok(report) = semidirect_report(g, &d) {
        let g_nonempty = report.factor("G").is_some_and(|f| !f.is_empty());
        let rest_nonempty = report
            .factors
            .iter()
            .any(|f| f.name != "G" && !f.generators.is_empty());
        if g_nonempty && rest_nonempty {
            let mut dec = decision(
                if no_transvections { Status::No } else { Status::Unknown },
                Status::No,
                Rule::Semidirect,
                Certificate::Report {
                    system: d,
                    report,
                    order_pairs: pairs,
                },
            );
            if no_transvections {
                dec.derived.push(
                    "out=no: PSO = Out* is an infinite normal subgroup of Out that is not acylindrically hyperbolic".into(),
                );
            } else {
                dec.warnings
                    .push("transvections exist, so the Out-level inference does not apply".into());
            }
            return Ok(dec);
        }
    }

    let mut dec = decision(
        Status::Unknown,
        Status::Unknown,
        Rule::Unresolved,
        Certificate::Unresolved {
            system: d,
            reason: "no rule applies".into(),
        },
    );
    dec.warnings.push("no rule applies to this decomposition".into());
    Ok(dec)
}

/// Runs the rule chain. Errors only on internal defects; an undecided graph
/// yields an `unknown` verdict.
pub fn decide(g: &SimplicialGraph) -> Result<Decision> {
    if !has_sil_pair(g) {
        return no_sil_rule(g);
    }
    match maximal_sil_system(g) {
        Ok(None) => {
            let mut dec = decision(
                Status::Unknown,
                Status::Unknown,
                Rule::ConnectedSil,
                Certificate::ConnectedSil {
                    sil_pairs: sil_pairs(g),
                },
            );
            dec.warnings
                .push("every SIL pair is connected; no rule covers this case".into());
            Ok(dec)
        }
        Err(Error::NoMaximalSystem(reason)) => {
            let mut dec = decision(
                Status::Unknown,
                Status::Unknown,
                Rule::NoMaximalSystem,
                Certificate::NoMaximalSystem { reason },
            );
            dec.warnings
                .push("separated SIL pairs exist but no maximal SIL-pair system was found".into());
            Ok(dec)
        }
        Err(e) => Err(e),
        Ok(Some(d)) => decide_with_system(g, d),
    }
}

fn names(g: &SimplicialGraph, vs: impl IntoIterator<Item = VertexId>) -> CertValue {
    CertValue::Names(vs.into_iter().map(|v| g.name(v).to_string()).collect())
}

fn pc_names(g: &SimplicialGraph, pcs: &[PartialConjugation]) -> CertValue {
    CertValue::Names(pcs.iter().map(|p| p.name(g)).collect())
}

fn system_entries(g: &SimplicialGraph, d: &SilSystemDecomposition, out: &mut BTreeMap<String, CertValue>) {
    out.insert("pivots".into(), names(g, d.pivots().iter().copied()));
    out.insert("core".into(), names(g, d.core()));
    let lists = |sets: &[VertexSet]| CertValue::Lists(sets.iter().map(|s| g.set_names(s)).collect());
    out.insert("shared_components".into(), lists(&d.shared_components));
    out.insert("additional_components".into(), lists(&d.additional_components));
}

fn pair_list(g: &SimplicialGraph, pairs: &[OrderPair]) -> CertValue {
    CertValue::Lists(
        pairs
            .iter()
            .map(|p| vec![g.name(p.lower).to_string(), g.name(p.upper).to_string()])
            .collect(),
    )
}

impl Decision {
    /// Vertex- and generator-name based export.
    pub fn to_doc(&self, g: &SimplicialGraph) -> DecisionDoc {
        let mut c = BTreeMap::new();
        match &self.certificate {
            Certificate::NoSil {
                order_pairs,
                disconnected,
                nontrivial_pcs,
            } => {
                c.insert("order_pairs".into(), pair_list(g, order_pairs));
                c.insert("disconnected_star_complements".into(), names(g, disconnected.iter().copied()));
                c.insert("connected_star_complements".into(), CertValue::Count(g.vertex_count() - disconnected.len()));
                c.insert("nontrivial_pcs".into(), pc_names(g, nontrivial_pcs));
            }
            Certificate::ConnectedSil { sil_pairs } => {
                c.insert(
                    "sil_pairs".into(),
                    CertValue::Lists(
                        sil_pairs
                            .iter()
                            .map(|&(a, b)| vec![g.name(a).to_string(), g.name(b).to_string()])
                            .collect(),
                    ),
                );
            }
            Certificate::NoMaximalSystem { reason } => {
                c.insert("reason".into(), CertValue::Text(reason.clone()));
            }
            Certificate::CoreSingleton { system, ker_p } => {
                system_entries(g, system, &mut c);
                let ker = ker_p
                    .iter()
                    .map(|k| match k {
                        KerPGenerator::LeafTransvection(t) => {
                            format!("R[{}][{}]", g.name(t.moved), g.name(t.by))
                        }
                        KerPGenerator::VhatConjugation { v, component } => {
                            format!("vhat[{}]{{{}}}", g.name(*v), g.set_names(component).join(","))
                        }
                    })
                    .collect();
                c.insert("ker_p_generators".into(), CertValue::Names(ker));
            }
            Certificate::AdditionalComponents {
                system,
                lambda,
                factors,
            } => {
                system_entries(g, system, &mut c);
                c.insert("lambda".into(), names(g, lambda));
                c.insert(
                    "factors".into(),
                    CertValue::Lists(factors.iter().map(|f| f.iter().map(|p| p.name(g)).collect()).collect()),
                );
            }
            Certificate::OneAdditionalComponent { system } => system_entries(g, system, &mut c),
            Certificate::Report {
                system,
                report,
                order_pairs,
            } => {
                system_entries(g, system, &mut c);
                for f in &report.factors {
                    c.insert(format!("factor_{}", f.name), pc_names(g, &f.generators));
                }
                c.insert("excluded".into(), pc_names(g, &report.excluded));
                for f in &report.flags {
                    c.insert(f.name.clone(), CertValue::Flag(f.holds));
                }
                c.insert("order_pairs".into(), pair_list(g, order_pairs));
            }
            Certificate::Corollary {
                system,
                typed,
                finite_index,
            } => {
                system_entries(g, system, &mut c);
                c.insert(
                    "pc_types".into(),
                    CertValue::Lists(typed.iter().map(|(p, t)| vec![p.name(g), t.to_string()]).collect()),
                );
                c.insert("finite_index_in_out".into(), CertValue::Flag(*finite_index));
            }
            Certificate::Unresolved { system, reason } => {
                system_entries(g, system, &mut c);
                c.insert("reason".into(), CertValue::Text(reason.clone()));
            }
        }
        DecisionDoc {
            out_status: self.verdict.out_status,
            pso_status: self.verdict.pso_status,
            rule: self.rule.as_str(),
            certificate: c,
            warnings: self.warnings.clone(),
            derived: self.derived.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gamma_pqr, named};

    fn run(name: &str) -> Decision {
        decide(&named(name).unwrap()).unwrap()
    }

    #[test]
    fn small_graphs() {
        for (name, out) in [
            ("k1", Status::No),
            ("k2", Status::Yes),
            ("k3", Status::No),
            ("two_isolated", Status::Yes),
            ("path3", Status::No),
            ("fig_sl2", Status::Yes),
        ] {
            let d = run(name);
            assert_eq!(d.rule, Rule::NoSil, "{name}");
            assert_eq!(d.verdict.out_status, out, "{name}");
        }
    }

    #[test]
    fn p_triviality() {
        assert!(p_is_trivial(&named("fig_sl2").unwrap()).unwrap().trivial);
        assert!(!p_is_trivial(&named("path3").unwrap()).unwrap().trivial);
        assert!(matches!(
            p_is_trivial(&named("star3").unwrap()),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn rule_matrix() {
        let cases = [
            ("star3", Rule::CoreSingleton, Status::No, Status::Unknown),
            ("three_isolated", Rule::StructureOfPso, Status::Unknown, Status::Unknown),
            ("two_additional", Rule::AdditionalComponents, Status::No, Status::No),
            ("decomp_left", Rule::StructureOfPso, Status::Unknown, Status::Unknown),
            ("gamma1", Rule::OneAdditionalComponent, Status::Unknown, Status::Unknown),
            ("gamma2", Rule::Semidirect, Status::Unknown, Status::No),
            ("gamma3", Rule::BeingAhCorollary, Status::Unknown, Status::Yes),
            ("gamma_243", Rule::BeingAhCorollary, Status::Unknown, Status::Yes),
        ];
        for (name, rule, out, pso) in cases {
            let d = run(name);
            assert_eq!((d.rule, d.verdict.out_status, d.verdict.pso_status), (rule, out, pso), "{name}");
        }
        assert!(!run("three_isolated").warnings.is_empty());
    }

    #[test]
    fn gamma_family() {
        for (p, q, r) in [(2, 2, 2), (3, 3, 3), (2, 4, 3)] {
            let d = decide(&gamma_pqr(p, q, r).unwrap()).unwrap();
            assert_eq!(d.rule, Rule::BeingAhCorollary);
            assert_eq!(d.verdict.pso_status, Status::Yes);
        }
    }

    #[test]
    fn no_maximal_system_is_unknown() {
        let d = run("no_max_system");
        assert_eq!(d.rule, Rule::NoMaximalSystem);
        assert_eq!(d.verdict.out_status, Status::Unknown);
    }
}
