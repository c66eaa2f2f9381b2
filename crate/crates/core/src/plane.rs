//! Plane graphs as rotation systems and face extraction by next-edge
//! tracing. Faces are always derived from the rotation, never stored as
//! input.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlaneError {
    #[error("rotation of vertex {0} mentions out-of-range vertex {1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {0} appears twice in the rotation of vertex {1}")]
    DuplicateNeighbor(usize, usize),
    #[error("asymmetric adjacency: {0} lists {1} but {1} does not list {0}")]
    Asymmetric(usize, usize),
}

/// Combinatorial embedding: each vertex stores the clockwise cyclic order
/// of its neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
}

impl PlaneGraph {
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self, PlaneError> {
        let n = rotation.len();
        for (v, order) in rotation.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &u in order {
                if u >= n {
                    return Err(PlaneError::VertexOutOfRange(v, u));
                }
                if u == v {
                    return Err(PlaneError::LoopEdge(v));
                }
                if !seen.insert(u) {
                    return Err(PlaneError::DuplicateNeighbor(u, v));
                }
            }
        }
        for v in 0..n {
            for &u in &rotation[v] {
                if !rotation[u].contains(&v) {
                    return Err(PlaneError::Asymmetric(v, u));
                }
            }
        }
        Ok(Self { rotation })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Forgets the embedding.
    pub fn underlying_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (v, order) in self.rotation.iter().enumerate() {
            for &u in order {
                if v < u {
                    edges.push((v, u));
                }
            }
        }
        Graph::new(self.rotation.len(), &edges).expect("validated rotation")
    }

    /// Successor of `u` in the cyclic rotation at `v`.
    fn next_neighbor(&self, v: usize, u: usize) -> usize {
        let order = &self.rotation[v];
        let i = order.iter().position(|&x| x == u).expect("validated rotation");
        order[(i + 1) % order.len()]
    }

    /// Face tracing: the directed edge after `(u, v)` is `(v, w)` where
    /// `w` follows `u` in the rotation at `v`. Every directed edge lies on
    /// exactly one face; a bridge contributes both directions to one face.
    pub fn trace_faces(&self) -> Vec<Face> {
        let mut remaining: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (v, order) in self.rotation.iter().enumerate() {
            for &u in order {
                remaining.insert((v, u));
            }
        }
        let mut faces = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut boundary = Vec::new();
            let mut current = start;
            loop {
                remaining.remove(&current);
                boundary.push(current);
                let (u, v) = current;
                current = (v, self.next_neighbor(v, u));
                if current == start {
                    break;
                }
            }
            faces.push(Face { boundary });
        }
        faces
    }
}

/// A face boundary walk as a closed sequence of directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<(usize, usize)>,
}

impl Face {
    /// Length of the boundary walk; a cut edge traversed in both
    /// directions counts twice.
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    /// Boundary vertices in walk order (the tail of each directed edge),
    /// with multiplicity.
    pub fn walk_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|&(u, _)| u)
    }

    /// Distinct boundary vertices.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.walk_vertices().collect()
    }

    /// Number of boundary incidences of `v`.
    pub fn incidences(&self, v: usize) -> usize {
        self.walk_vertices().filter(|&u| u == v).count()
    }

    pub fn contains_directed(&self, dart: (usize, usize)) -> bool {
        self.boundary.contains(&dart)
    }

    /// Whether the undirected edge `{u, v}` lies on this boundary walk.
    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.contains_directed((u, v)) || self.contains_directed((v, u))
    }
}

/// Map from directed edge to the index of the unique face carrying it.
pub fn face_of_dart(faces: &[Face]) -> BTreeMap<(usize, usize), usize> {
    let mut map = BTreeMap::new();
    for (i, face) in faces.iter().enumerate() {
        for &dart in &face.boundary {
            map.insert(dart, i);
        }
    }
    map
}

/// Standard planar embedding of the cube graph.
pub fn cube_q3() -> PlaneGraph {
    PlaneGraph::new(vec![
        vec![1, 2, 4],
        vec![0, 5, 3],
        vec![0, 3, 6],
        vec![1, 7, 2],
        vec![0, 6, 5],
        vec![1, 4, 7],
        vec![2, 7, 4],
        vec![3, 5, 6],
    ])
    .expect("valid rotation")
}

/// Icosahedron: vertex 0 on top, rings 1..=5 and 6..=10, vertex 11 at the
/// bottom.
pub fn icosahedron() -> PlaneGraph {
    PlaneGraph::new(vec![
        vec![2, 1, 5, 4, 3],
        vec![0, 2, 6, 10, 5],
        vec![1, 0, 3, 7, 6],
        vec![2, 0, 4, 8, 7],
        vec![3, 0, 5, 9, 8],
        vec![4, 0, 1, 10, 9],
        vec![1, 2, 7, 11, 10],
        vec![11, 6, 2, 3, 8],
        vec![11, 7, 3, 4, 9],
        vec![11, 8, 4, 5, 10],
        vec![1, 6, 11, 9, 5],
        vec![6, 7, 8, 9, 10],
    ])
    .expect("valid rotation")
}

/// Planar embedding of K4 (outer triangle 0-1-2, vertex 3 inside).
pub fn k4_plane() -> PlaneGraph {
    PlaneGraph::new(vec![
        vec![1, 3, 2],
        vec![2, 3, 0],
        vec![0, 3, 1],
        vec![0, 1, 2],
    ])
    .expect("valid rotation")
}
