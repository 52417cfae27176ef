use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{StructuredMatrix, WeightedDigraph};

/// A sensing and networking design problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    system: StructuredMatrix,
    sensors: usize,
    sensing_cost: BTreeMap<(usize, usize), f64>,
    network: WeightedDigraph,
    undirected: bool,
}

impl ProblemInstance {
    /// `sensing_cost` is keyed by `(sensor, state)`; absent pairs are
    /// forbidden measurements.
    pub fn new(
        system: StructuredMatrix,
        sensors: usize,
        sensing_cost: BTreeMap<(usize, usize), f64>,
        network: WeightedDigraph,
        undirected: bool,
    ) -> Result<Self> {
        let n = system.rows();
        if n == 0 {
            return Err(Error::invalid("n", "state count must be at least 1"));
        }
        system.require_square()?;
        if sensors == 0 {
            return Err(Error::invalid("m", "sensor count must be at least 1"));
        }
        for (&(i, j), &cost) in &sensing_cost {
            let path = format!("c[sensor={}, state={}]", i + 1, j + 1);
            if i >= sensors || j >= n {
                return Err(Error::invalid(path, "index out of range"));
            }
            if !cost.is_finite() || cost < 0.0 {
                return Err(Error::invalid(
                    format!("{path}.cost"),
                    format!("cost {cost} is not a finite nonnegative number"),
                ));
            }
        }
        if network.node_count() != sensors {
            return Err(Error::invalid(
                "net",
                format!(
                    "network has {} nodes but there are {sensors} sensors",
                    network.node_count()
                ),
            ));
        }
        if undirected {
            if let Some((u, v, c)) = network
                .arcs()
                .find(|&(u, v, c)| network.cost(v, u) != Some(c))
            {
                return Err(Error::invalid(
                    "net.links",
                    format!(
                        "undirected network has link {} -> {} (cost {c}) without an equal-cost reverse link",
                        u + 1,
                        v + 1
                    ),
                ));
            }
        }
        Ok(Self {
            system,
            sensors,
            sensing_cost,
            network,
            undirected,
        })
    }

    pub fn states(&self) -> usize {
        self.system.rows()
    }

    pub fn sensors(&self) -> usize {
        self.sensors
    }

    pub fn system(&self) -> &StructuredMatrix {
        &self.system
    }

    pub fn sensing_cost(&self, sensor: usize, state: usize) -> Option<f64> {
        self.sensing_cost.get(&(sensor, state)).copied()
    }

    pub fn sensing_costs(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.sensing_cost
    }

    pub fn network(&self) -> &WeightedDigraph {
        &self.network
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkOptimality {
    Exact,
    TwoApprox,
}

impl NetworkOptimality {
    pub fn as_str(self) -> &'static str {
        match self {
            NetworkOptimality::Exact => "exact",
            NetworkOptimality::TwoApprox => "two_approx",
        }
    }
}

/// Measurement and network structure chosen for an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult {
    pub measurement: StructuredMatrix,
    pub network: StructuredMatrix,
    pub sensing_cost: f64,
    pub networking_cost: f64,
    pub network_optimality: NetworkOptimality,
    /// Undirected tree cost (each link once); only set for MST designs.
    pub tree_cost: Option<f64>,
}

impl DesignResult {
    pub fn total_cost(&self) -> f64 {
        self.sensing_cost + self.networking_cost
    }

    /// Recomputes both cost components from the instance's `c` and `b`.
    pub fn recompute_costs(&self, instance: &ProblemInstance) -> Result<(f64, f64)> {
        let mut sensing = 0.0;
        for (i, j) in self.measurement.iter() {
            sensing += instance.sensing_cost(i, j).ok_or_else(|| {
                Error::invalid(
                    "H",
                    format!("sensor {} cannot measure state {}", i + 1, j + 1),
                )
            })?;
        }
        let mut networking = 0.0;
        for (i, j) in self.network.iter() {
            networking += instance
                .network()
                .cost(i, j)
                .ok_or(Error::ArcOutsideNetwork { from: i, to: j })?;
        }
        Ok((sensing, networking))
    }
}
