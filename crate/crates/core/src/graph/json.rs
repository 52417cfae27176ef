//! JSON documents for instances, designs and analysis output.
//!
//! Documents use 1-based indices; the in-memory model is 0-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structural::{SccKind, SccPartition};

use super::{DesignResult, NetworkOptimality, ProblemInstance, StructuredMatrix, WeightedDigraph};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<[usize; 2]>,
    pub c: Vec<SensingCostDoc>,
    pub net: NetworkDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensingCostDoc {
    pub sensor: usize,
    pub state: usize,
    pub cost: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    pub undirected: bool,
    pub links: Vec<LinkDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub from: usize,
    pub to: usize,
    pub cost: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignDoc {
    #[serde(rename = "H")]
    pub h: Vec<[usize; 2]>,
    #[serde(rename = "W")]
    pub w: Vec<[usize; 2]>,
    pub sensing_cost: f64,
    pub networking_cost: f64,
    pub network_optimality: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree_cost: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub components: Vec<Vec<usize>>,
    pub kinds: Vec<String>,
    pub condensation: Vec<[usize; 2]>,
    pub parents: Vec<usize>,
}

fn index(path: &str, value: usize, bound: usize) -> Result<usize> {
    if value == 0 || value > bound {
        Err(Error::invalid(
            path,
            format!("index {value} outside 1..={bound}"),
        ))
    } else {
        Ok(value - 1)
    }
}

fn cost(path: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(
            path,
            format!("cost {value} is not a finite nonnegative number"),
        ))
    }
}

fn pattern_from_doc(field: &str, rows: usize, cols: usize, pairs: &[[usize; 2]]) -> Result<StructuredMatrix> {
    let mut entries = Vec::with_capacity(pairs.len());
    let mut seen = std::collections::BTreeSet::new();
    for (k, &[i, j]) in pairs.iter().enumerate() {
        let path = format!("{field}[{k}]");
        let i = index(&format!("{path}[0]"), i, rows)?;
        let j = index(&format!("{path}[1]"), j, cols)?;
        if !seen.insert((i, j)) {
            return Err(Error::invalid(
                path,
                format!("duplicate entry [{}, {}]", i + 1, j + 1),
            ));
        }
        entries.push((i, j));
    }
    StructuredMatrix::new(rows, cols, entries)
}

fn pattern_to_doc(pattern: &StructuredMatrix) -> Vec<[usize; 2]> {
    pattern.iter().map(|(i, j)| [i + 1, j + 1]).collect()
}

impl InstanceDoc {
    pub fn into_instance(self) -> Result<ProblemInstance> {
        let InstanceDoc { n, m, a, c, net } = self;
        if n == 0 {
            return Err(Error::invalid("n", "state count must be at least 1"));
        }
        if m == 0 {
            return Err(Error::invalid("m", "sensor count must be at least 1"));
        }
        let system = pattern_from_doc("A", n, n, &a)?;

        let mut sensing = BTreeMap::new();
        for (k, entry) in c.iter().enumerate() {
            let path = format!("c[{k}]");
            let i = index(&format!("{path}.sensor"), entry.sensor, m)?;
            let j = index(&format!("{path}.state"), entry.state, n)?;
            let value = cost(&format!("{path}.cost"), entry.cost)?;
            if sensing.insert((i, j), value).is_some() {
                return Err(Error::invalid(
                    path,
                    format!("duplicate cost for sensor {} and state {}", i + 1, j + 1),
                ));
            }
        }

        let mut arcs = Vec::with_capacity(net.links.len());
        for (k, link) in net.links.iter().enumerate() {
            let path = format!("net.links[{k}]");
            let u = index(&format!("{path}.from"), link.from, m)?;
            let v = index(&format!("{path}.to"), link.to, m)?;
            let value = cost(&format!("{path}.cost"), link.cost)?;
            arcs.push((u, v, value));
        }
        let network = WeightedDigraph::new(m, arcs).map_err(|e| match e {
            Error::Invalid { path, message } => Error::Invalid {
                path: format!("net.{path}"),
                message,
            },
            other => other,
        })?;
        ProblemInstance::new(system, m, sensing, network, net.undirected)
    }

    pub fn from_instance(instance: &ProblemInstance) -> Self {
        Self {
            n: instance.states(),
            m: instance.sensors(),
            a: pattern_to_doc(instance.system()),
            c: instance
                .sensing_costs()
                .iter()
                .map(|(&(i, j), &cost)| SensingCostDoc {
                    sensor: i + 1,
                    state: j + 1,
                    cost,
                })
                .collect(),
            net: NetworkDoc {
                undirected: instance.is_undirected(),
                links: instance
                    .network()
                    .arcs()
                    .map(|(u, v, cost)| LinkDoc {
                        from: u + 1,
                        to: v + 1,
                        cost,
                    })
                    .collect(),
            },
        }
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    doc.into_instance()
}

pub fn instance_to_json(instance: &ProblemInstance) -> String {
    to_pretty(&InstanceDoc::from_instance(instance))
}

impl DesignDoc {
    pub fn from_design(design: &DesignResult) -> Self {
        Self {
            h: pattern_to_doc(&design.measurement),
            w: pattern_to_doc(&design.network),
            sensing_cost: design.sensing_cost,
            networking_cost: design.networking_cost,
            network_optimality: design.network_optimality.as_str().to_owned(),
            tree_cost: design.tree_cost,
        }
    }

    /// Shapes come from the instance the design was computed for.
    pub fn into_design(self, instance: &ProblemInstance) -> Result<DesignResult> {
        let m = instance.sensors();
        let measurement = pattern_from_doc("H", m, instance.states(), &self.h)?;
        let network = pattern_from_doc("W", m, m, &self.w)?;
        let network_optimality = match self.network_optimality.as_str() {
            "exact" => NetworkOptimality::Exact,
            "two_approx" => NetworkOptimality::TwoApprox,
            other => {
                return Err(Error::invalid(
                    "network_optimality",
                    format!("unknown value {other:?}"),
                ))
            }
        };
        Ok(DesignResult {
            measurement,
            network,
            sensing_cost: self.sensing_cost,
            networking_cost: self.networking_cost,
            network_optimality,
            tree_cost: self.tree_cost,
        })
    }
}

pub fn design_to_json(design: &DesignResult) -> String {
    to_pretty(&DesignDoc::from_design(design))
}

pub fn parse_design(text: &str, instance: &ProblemInstance) -> Result<DesignResult> {
    let doc: DesignDoc = serde_json::from_str(text)?;
    doc.into_design(instance)
}

impl PartitionDoc {
    pub fn from_partition(partition: &SccPartition) -> Self {
        let components = partition
            .components()
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect();
        let kinds = (0..partition.len())
            .map(|k| match partition.kind(k) {
                SccKind::Parent => "parent".to_owned(),
                SccKind::Child => "child".to_owned(),
            })
            .collect();
        let condensation = partition
            .condensation()
            .iter()
            .enumerate()
            .flat_map(|(a, outs)| outs.iter().map(move |&b| [a + 1, b + 1]))
            .collect();
        Self {
            components,
            kinds,
            condensation,
            parents: partition.parents().iter().map(|p| p + 1).collect(),
        }
    }
}

pub(crate) fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents always serialize");
    text.push('\n');
    text
}
