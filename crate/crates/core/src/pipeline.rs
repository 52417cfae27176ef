//! End-to-end design: sensing and networking are optimised independently
//! since the objective and the constraints separate.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{digraph_from_pattern, DesignResult, NetworkOptimality, ProblemInstance};
use crate::network::{self, Method, NetworkDesign};
use crate::sensing::{self, SensorAssignment};
use crate::structural::{scc_decompose, SccPartition};

/// How to treat a directed candidate network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootStrategy {
    /// Best branching union over every root.
    #[default]
    AllRoots,
    /// Branching union at a single root.
    Root(usize),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DesignOptions {
    pub root: RootStrategy,
    /// Solve the directed network problem exactly by enumeration.
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct DesignOutcome {
    pub partition: SccPartition,
    pub sensing: SensorAssignment,
    pub network: NetworkDesign,
    pub design: DesignResult,
}

pub fn partition(instance: &ProblemInstance) -> Result<SccPartition> {
    Ok(scc_decompose(&digraph_from_pattern(instance.system())?))
}

pub fn solve_sensing(instance: &ProblemInstance, partition: &SccPartition) -> Result<SensorAssignment> {
    let matrix = sensing::build_parent_cost_matrix(instance, partition)?;
    sensing::hungarian_solve(&matrix)
}

pub fn solve_network(instance: &ProblemInstance, options: DesignOptions) -> Result<NetworkDesign> {
    let net = instance.network();
    if instance.is_undirected() {
        network::mst_solve(net)
    } else if options.exact {
        network::brute_force_msss(net)
    } else {
        match options.root {
            RootStrategy::AllRoots => network::msss_best_root(net),
            RootStrategy::Root(r) => network::msss_2approx(net, r),
        }
    }
}

pub fn design(instance: &ProblemInstance, options: DesignOptions) -> Result<DesignOutcome> {
    let partition = partition(instance)?;
    let sensing = solve_sensing(instance, &partition)?;
    let measurement = sensing::recover_measurement_structure(&sensing, instance.states())?;
    let network = solve_network(instance, options)?;
    let network_optimality = match network.method {
        Method::BranchingUnion => NetworkOptimality::TwoApprox,
        Method::Mst | Method::BruteForce => NetworkOptimality::Exact,
    };
    let design = DesignResult {
        measurement,
        network: network.pattern(instance.sensors()),
        sensing_cost: sensing.total_cost,
        networking_cost: network.total_cost,
        network_optimality,
        tree_cost: network.tree_cost,
    };
    Ok(DesignOutcome {
        partition,
        sensing,
        network,
        design,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub sensing: SensingComparison,
    pub network: NetworkComparison,
}

#[derive(Debug, Clone, Serialize)]
pub struct SensingComparison {
    pub hungarian_cost: f64,
    pub brute_force_cost: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NetworkComparison {
    pub method: &'static str,
    pub heuristic_cost: f64,
    pub exact_cost: f64,
    /// `(heuristic - exact) / exact`
    pub gap: f64,
    pub gap_bound: f64,
}

/// Heuristic designs next to exhaustive optima.
///
/// For undirected networks the exact reference is the best symmetric design,
/// which is what the spanning-tree solution optimises.
pub fn oracle(instance: &ProblemInstance, options: DesignOptions) -> Result<OracleReport> {
    let partition = partition(instance)?;
    let matrix = sensing::build_parent_cost_matrix(instance, &partition)?;
    let hungarian = sensing::hungarian_solve(&matrix)?;
    let brute = sensing::brute_force_assignment(&matrix)?;

    let heuristic = solve_network(instance, DesignOptions { exact: false, ..options })?;
    let exact = if instance.is_undirected() {
        network::brute_force_symmetric(instance.network())?
    } else {
        network::brute_force_msss(instance.network())?
    };
    Ok(OracleReport {
        sensing: SensingComparison {
            hungarian_cost: hungarian.total_cost,
            brute_force_cost: brute.total_cost,
        },
        network: NetworkComparison {
            method: heuristic.method.as_str(),
            heuristic_cost: heuristic.total_cost,
            exact_cost: exact.total_cost,
            gap: network::gap(heuristic.total_cost, exact.total_cost),
            gap_bound: heuristic.gap_bound,
        },
    })
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        crate::graph::json::to_pretty(self)
    }
}
