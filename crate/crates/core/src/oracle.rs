//! Brute-force ground truth for list colorability and choosability.
//!
//! `l_colorable` is exhaustive backtracking, so a negative answer is a
//! proof. Choosability is checked either by enumerating every list
//! assignment over a sufficient color universe or by seeded random
//! sampling when exhaustion is infeasible.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cn::{derive_caps, is_reducible, CnError, Configuration, ReducibilityStatus};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("vertex {0} has an empty color list")]
    EmptyList(usize),
    #[error("expected {expected} lists, got {got}")]
    ListCountMismatch { expected: usize, got: usize },
    #[error("size budget exceeded: sum of list sizes {total} > {budget} (pass the override to force)")]
    BudgetExceeded { total: usize, budget: usize },
    #[error("sampled search requires at least one trial")]
    ZeroTrials,
    #[error("list size at vertex {0} must be at least 1")]
    ZeroSize(usize),
    #[error(transparent)]
    Cn(#[from] CnError),
}

/// Per-vertex finite sets of colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment(pub Vec<BTreeSet<u32>>);

impl ListAssignment {
    /// Serialization used by the CLI and in counterexample reports.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (v, list) in self.0.iter().enumerate() {
            out.push_str(&format!("list {}:", v));
            for c in list {
                out.push_str(&format!(" {}", c));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeVector(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorVerdict {
    Colorable(Vec<u32>),
    NotColorable,
}

/// Exhaustive backtracking search for a proper coloring drawing each color
/// from its vertex's list. Vertices are tried in descending-degree order
/// (ties by index), colors in ascending numeric order.
pub fn l_colorable(g: &Graph, lists: &ListAssignment) -> Result<ColorVerdict, OracleError> {
    let n = g.vertex_count();
    if lists.0.len() != n {
        return Err(OracleError::ListCountMismatch {
            expected: n,
            got: lists.0.len(),
        });
    }
    for (v, list) in lists.0.iter().enumerate() {
        if list.is_empty() {
            return Err(OracleError::EmptyList(v));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut coloring: Vec<Option<u32>> = vec![None; n];
    if backtrack(g, lists, &order, 0, &mut coloring) {
        let colors: Vec<u32> = coloring.into_iter().map(Option::unwrap).collect();
        debug_assert!(verify_coloring(g, lists, &colors));
        Ok(ColorVerdict::Colorable(colors))
    } else {
        Ok(ColorVerdict::NotColorable)
    }
}

fn backtrack(
    g: &Graph,
    lists: &ListAssignment,
    order: &[usize],
    depth: usize,
    coloring: &mut Vec<Option<u32>>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'colors: for &c in &lists.0[v] {
        for &u in g.neighbors(v) {
            if coloring[u] == Some(c) {
                continue 'colors;
            }
        }
        coloring[v] = Some(c);
        if backtrack(g, lists, order, depth + 1, coloring) {
            return true;
        }
        coloring[v] = None;
    }
    false
}

/// Direct re-check that a coloring is proper and list-respecting.
pub fn verify_coloring(g: &Graph, lists: &ListAssignment, colors: &[u32]) -> bool {
    colors.len() == g.vertex_count()
        && colors
            .iter()
            .enumerate()
            .all(|(v, c)| lists.0[v].contains(c))
        && g.edges().all(|(u, v)| colors[u] != colors[v])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChoosableVerdict {
    Choosable,
    NotChoosable(ListAssignment),
}

pub const DEFAULT_SIZE_BUDGET: usize = 8;

/// Enumerates every list assignment with the given sizes over the color
/// universe `0..Σ sizes` (sufficient because only intersection patterns
/// matter) and reports the first failing assignment. Vertex 0's list is
/// pinned to the least `sizes[0]` colors, which is safe up to color
/// relabeling.
pub fn f_choosable_exhaustive(
    g: &Graph,
    sizes: &SizeVector,
    override_budget: bool,
) -> Result<ChoosableVerdict, OracleError> {
    check_sizes(g, sizes)?;
    let total: usize = sizes.0.iter().sum();
    if total > DEFAULT_SIZE_BUDGET && !override_budget {
        return Err(OracleError::BudgetExceeded {
            total,
            budget: DEFAULT_SIZE_BUDGET,
        });
    }
    let universe = total as u32;
    let n = g.vertex_count();
    let mut lists: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    lists[0] = (0..sizes.0[0] as u32).collect();
    enumerate_assignments(g, sizes, universe, 1, &mut lists)
}

fn enumerate_assignments(
    g: &Graph,
    sizes: &SizeVector,
    universe: u32,
    vertex: usize,
    lists: &mut Vec<BTreeSet<u32>>,
) -> Result<ChoosableVerdict, OracleError> {
    if vertex == g.vertex_count() {
        let assignment = ListAssignment(lists.clone());
        return Ok(match l_colorable(g, &assignment)? {
            ColorVerdict::Colorable(_) => ChoosableVerdict::Choosable,
            ColorVerdict::NotColorable => ChoosableVerdict::NotChoosable(assignment),
        });
    }
    let size = sizes.0[vertex];
    let mut subset: Vec<u32> = (0..size as u32).collect();
    loop {
        lists[vertex] = subset.iter().copied().collect();
        match enumerate_assignments(g, sizes, universe, vertex + 1, lists)? {
            ChoosableVerdict::Choosable => {}
            failure => return Ok(failure),
        }
        if !next_combination(&mut subset, universe) {
            return Ok(ChoosableVerdict::Choosable);
        }
    }
}

/// Advances a sorted k-subset of `0..universe` to its lexicographic
/// successor; false when exhausted.
fn next_combination(subset: &mut [u32], universe: u32) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < universe - (k - i) as u32 {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn check_sizes(g: &Graph, sizes: &SizeVector) -> Result<(), OracleError> {
    if sizes.0.len() != g.vertex_count() {
        return Err(OracleError::ListCountMismatch {
            expected: g.vertex_count(),
            got: sizes.0.len(),
        });
    }
    for (v, &s) in sizes.0.iter().enumerate() {
        if s == 0 {
            return Err(OracleError::ZeroSize(v));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampledVerdict {
    NoCounterexampleFound,
    NotChoosable { trial: usize, assignment: ListAssignment },
}

/// Seeded random search for a failing list assignment.
///
/// Trial 0 is always the all-identical assignment (vertex `v` gets colors
/// `0..sizes[v]`). Trials `1..trials` draw each vertex's list with a
/// `ChaCha8Rng` seeded by `seed`: for vertex 0, 1, ... in order, colors
/// are drawn by `gen_range(0..Σ sizes)` and inserted into a set until it
/// reaches the requested size. This mapping is stable across releases so
/// reported counterexamples reproduce.
pub fn f_choosable_sampled(
    g: &Graph,
    sizes: &SizeVector,
    trials: usize,
    seed: u64,
) -> Result<SampledVerdict, OracleError> {
    if trials == 0 {
        return Err(OracleError::ZeroTrials);
    }
    check_sizes(g, sizes)?;
    let universe = sizes.0.iter().sum::<usize>() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let assignment = if trial == 0 {
            ListAssignment(
                sizes
                    .0
                    .iter()
                    .map(|&s| (0..s as u32).collect())
                    .collect(),
            )
        } else {
            let mut lists = Vec::with_capacity(sizes.0.len());
            for &s in &sizes.0 {
                let mut list = BTreeSet::new();
                while list.len() < s {
                    list.insert(rng.gen_range(0..universe));
                }
                lists.push(list);
            }
            ListAssignment(lists)
        };
        if let ColorVerdict::NotColorable = l_colorable(g, &assignment)? {
            return Ok(SampledVerdict::NotChoosable { trial, assignment });
        }
    }
    Ok(SampledVerdict::NoCounterexampleFound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossCheckMode {
    Exhaustive { override_budget: bool },
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub cn_status: ReducibilityStatus,
    pub sizes: SizeVector,
    pub counterexample: Option<ListAssignment>,
    /// Set when the CN verdict was `Reducible` yet the oracle found a
    /// failing assignment; this would falsify the coefficient check.
    pub soundness_violation: bool,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        !self.soundness_violation
    }
}

/// Certifies a CN verdict against the oracle with list sizes `cap_i + 1`.
/// A `Reducible` verdict asserts that no counterexample exists; an
/// `Inconclusive` verdict only records what the oracle found.
pub fn cross_check(
    config: &Configuration,
    mode: CrossCheckMode,
) -> Result<CrossCheckReport, OracleError> {
    let verdict = is_reducible(config)?;
    let sizes = SizeVector(derive_caps(config)?.0.iter().map(|c| c + 1).collect());
    let counterexample = match mode {
        CrossCheckMode::Exhaustive { override_budget } => {
            match f_choosable_exhaustive(&config.internal, &sizes, override_budget)? {
                ChoosableVerdict::Choosable => None,
                ChoosableVerdict::NotChoosable(cx) => Some(cx),
            }
        }
        CrossCheckMode::Sampled { trials, seed } => {
            match f_choosable_sampled(&config.internal, &sizes, trials, seed)? {
                SampledVerdict::NoCounterexampleFound => None,
                SampledVerdict::NotChoosable { assignment, .. } => Some(assignment),
            }
        }
    };
    let soundness_violation =
        verdict.status == ReducibilityStatus::Reducible && counterexample.is_some();
    Ok(CrossCheckReport {
        cn_status: verdict.status,
        sizes,
        counterexample,
        soundness_violation,
    })
}
