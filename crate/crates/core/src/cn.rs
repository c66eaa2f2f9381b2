//! Coefficient extraction for the graph polynomial `∏ (x_a − x_b)`.
//!
//! A configuration is certified reducible when the truncated expansion of
//! its graph polynomial keeps at least one monomial whose exponents stay
//! within the per-vertex caps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnError {
    #[error("vertex {vertex}: derived cap {cap} is negative; vertex may have empty residual list; configuration not checkable by this method")]
    NegativeCap { vertex: usize, cap: i64 },
    #[error("edge endpoint {0} out of range for {1} caps")]
    EndpointOutOfRange(usize, usize),
    #[error("full degree {full} at vertex {vertex} below internal degree {internal}")]
    FullDegreeTooSmall {
        vertex: usize,
        full: usize,
        internal: usize,
    },
    #[error("expected {expected} full degrees, got {got}")]
    DegreeCountMismatch { expected: usize, got: usize },
    #[error("naive expansion limited to {limit} edges, got {got}")]
    TooManyEdges { limit: usize, got: usize },
}

/// A configuration: an internal graph whose vertices carry the degree they
/// have in the host graph, plus the choosability target `k`.
#[derive(Debug, Clone)]
pub struct Configuration {
    pub name: String,
    pub internal: Graph,
    pub full_degree: Vec<usize>,
    pub k: usize,
    pub explicit_caps: Option<Vec<usize>>,
}

impl Configuration {
    pub fn new(
        name: impl Into<String>,
        internal: Graph,
        full_degree: Vec<usize>,
        k: usize,
    ) -> Result<Self, CnError> {
        if full_degree.len() != internal.vertex_count() {
            return Err(CnError::DegreeCountMismatch {
                expected: internal.vertex_count(),
                got: full_degree.len(),
            });
        }
        for v in 0..internal.vertex_count() {
            if full_degree[v] < internal.degree(v) {
                return Err(CnError::FullDegreeTooSmall {
                    vertex: v,
                    full: full_degree[v],
                    internal: internal.degree(v),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            internal,
            full_degree,
            k,
            explicit_caps: None,
        })
    }

    pub fn with_explicit_caps(mut self, caps: Vec<usize>) -> Self {
        self.explicit_caps = Some(caps);
        self
    }

    /// Default factor orientation: edges in lexicographic order, each
    /// oriented low index → high index.
    pub fn default_orientation(&self) -> Vec<(usize, usize)> {
        self.internal.edges().collect()
    }
}

/// Per-vertex exponent budget: the guaranteed residual list size minus one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapVector(pub Vec<usize>);

impl CapVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Residual caps: `t_i = (k−1) − (full_degree_i − internal_degree_i)`.
/// Explicit caps, when present, are returned verbatim.
pub fn derive_caps(config: &Configuration) -> Result<CapVector, CnError> {
    if let Some(caps) = &config.explicit_caps {
        return Ok(CapVector(caps.clone()));
    }
    let mut caps = Vec::with_capacity(config.internal.vertex_count());
    for v in 0..config.internal.vertex_count() {
        let external = config.full_degree[v] - config.internal.degree(v);
        let cap = config.k as i64 - 1 - external as i64;
        if cap < 0 {
            return Err(CnError::NegativeCap { vertex: v, cap });
        }
        caps.push(cap as usize);
    }
    Ok(CapVector(caps))
}

/// Sparse map from exponent vectors to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpansionTable {
    entries: BTreeMap<Vec<usize>, BigInt>,
}

impl ExpansionTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, exponents: &[usize]) -> Option<&BigInt> {
        self.entries.get(exponents)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.entries.keys()
    }

    fn add(&mut self, exponents: Vec<usize>, delta: BigInt) {
        let entry = self.entries.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                if !delta.is_zero() {
                    slot.insert(delta);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += delta;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

/// Incremental capped expansion of `∏ (x_a − x_b)`: one pass per edge,
/// dropping any monomial whose exponent would exceed its cap and deleting
/// entries that cancel to zero.
pub fn expand(edges: &[(usize, usize)], caps: &CapVector) -> Result<ExpansionTable, CnError> {
    let n = caps.len();
    for &(a, b) in edges {
        for endpoint in [a, b] {
            if endpoint >= n {
                return Err(CnError::EndpointOutOfRange(endpoint, n));
            }
        }
    }
    let mut table = ExpansionTable::default();
    table.add(vec![0; n], BigInt::one());
    for &(a, b) in edges {
        let mut next = ExpansionTable::default();
        for (exponents, coefficient) in table.iter() {
            if exponents[a] < caps.0[a] {
                let mut bumped = exponents.clone();
                bumped[a] += 1;
                next.add(bumped, coefficient.clone());
            }
            if exponents[b] < caps.0[b] {
                let mut bumped = exponents.clone();
                bumped[b] += 1;
                next.add(bumped, -coefficient.clone());
            }
        }
        table = next;
    }
    Ok(table)
}

/// Test oracle: expands all `2^m` signed terms directly and truncates at
/// the end. Limited to 16 edges.
pub fn naive_expand(edges: &[(usize, usize)], caps: &CapVector) -> Result<ExpansionTable, CnError> {
    const LIMIT: usize = 16;
    if edges.len() > LIMIT {
        return Err(CnError::TooManyEdges {
            limit: LIMIT,
            got: edges.len(),
        });
    }
    let n = caps.len();
    for &(a, b) in edges {
        for endpoint in [a, b] {
            if endpoint >= n {
                return Err(CnError::EndpointOutOfRange(endpoint, n));
            }
        }
    }
    let mut full: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for pick in 0u32..(1u32 << edges.len()) {
        let mut exponents = vec![0usize; n];
        let mut sign = BigInt::one();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if pick & (1 << i) == 0 {
                exponents[a] += 1;
            } else {
                exponents[b] += 1;
                sign = -sign;
            }
        }
        *full.entry(exponents).or_insert_with(BigInt::zero) += sign;
    }
    let mut table = ExpansionTable::default();
    for (exponents, coefficient) in full {
        if coefficient.is_zero() {
            continue;
        }
        if exponents.iter().zip(&caps.0).all(|(e, c)| e <= c) {
            table.add(exponents, coefficient);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducibilityStatus {
    Reducible,
    Inconclusive,
}

/// Outcome of the coefficient check. `Reducible` means at least one
/// monomial survives; an empty table is only ever `Inconclusive` since the
/// criterion is one-directional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibilityVerdict {
    pub status: ReducibilityStatus,
    pub witnesses: Vec<Vec<usize>>,
    pub caps: CapVector,
}

impl ReducibilityVerdict {
    pub fn count(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_reducible(&self) -> bool {
        self.status == ReducibilityStatus::Reducible
    }
}

/// Runs the capped expansion on the default orientation and reports every
/// surviving monomial as a witness.
pub fn is_reducible(config: &Configuration) -> Result<ReducibilityVerdict, CnError> {
    let caps = derive_caps(config)?;
    let table = expand(&config.default_orientation(), &caps)?;
    let witnesses: Vec<Vec<usize>> = table.keys().cloned().collect();
    let status = if witnesses.is_empty() {
        ReducibilityStatus::Inconclusive
    } else {
        ReducibilityStatus::Reducible
    };
    Ok(ReducibilityVerdict {
        status,
        witnesses,
        caps,
    })
}
