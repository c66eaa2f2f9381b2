//! Simple undirected graphs with degree/distance queries, 4-cycle
//! enumeration and the distance hypothesis validator.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are collapsed,
    /// loops and out-of-range endpoints are rejected.
    pub fn new(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = BTreeSet::new();
        for &(u, v) in edge_list {
            if u >= vertex_count {
                return Err(GraphError::VertexOutOfRange(u, vertex_count));
            }
            if v >= vertex_count {
                return Err(GraphError::VertexOutOfRange(v, vertex_count));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            edges.insert((u.min(v), u.max(v)));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let dist = self.bfs(0);
        dist.iter().all(Option::is_some)
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Breadth-first distance between two vertices; `None` when they lie
    /// in different components.
    pub fn shortest_path_distance(
        &self,
        u: usize,
        v: usize,
    ) -> Result<Option<usize>, GraphError> {
        for x in [u, v] {
            if x >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange(x, self.vertex_count));
            }
        }
        Ok(self.bfs(u)[v])
    }

    /// All 4-vertex cycles, in canonical form, lexicographically sorted.
    pub fn enumerate_4cycles(&self) -> CycleList {
        let mut cycles = BTreeSet::new();
        for u in 0..self.vertex_count {
            for w in u + 1..self.vertex_count {
                // common neighbors give the two "opposite" corners of a 4-cycle
                let common: Vec<usize> = self.adjacency[u]
                    .iter()
                    .copied()
                    .filter(|x| *x != w && self.has_edge(*x, w))
                    .collect();
                for i in 0..common.len() {
                    for j in i + 1..common.len() {
                        cycles.insert(FourCycle::canonical([u, common[i], w, common[j]]));
                    }
                }
            }
        }
        CycleList {
            cycles: cycles.into_iter().collect(),
        }
    }

    /// Minimum over unordered pairs of distinct 4-cycles of the
    /// min-vertex-pair distance. `None` when fewer than two 4-cycles exist.
    pub fn min_pairwise_4cycle_distance(&self) -> Option<usize> {
        self.closest_4cycle_pair().map(|(_, _, d)| d)
    }

    /// Closest pair of distinct 4-cycles together with their distance.
    pub fn closest_4cycle_pair(&self) -> Option<(FourCycle, FourCycle, usize)> {
        let list = self.enumerate_4cycles();
        if list.cycles.len() < 2 {
            return None;
        }
        // BFS from every vertex that lies on some 4-cycle
        let mut on_cycle: BTreeSet<usize> = BTreeSet::new();
        for c in &list.cycles {
            on_cycle.extend(c.vertices);
        }
        let dists: std::collections::BTreeMap<usize, Vec<Option<usize>>> =
            on_cycle.iter().map(|&v| (v, self.bfs(v))).collect();
        let mut best: Option<(FourCycle, FourCycle, usize)> = None;
        for i in 0..list.cycles.len() {
            for j in i + 1..list.cycles.len() {
                let (a, b) = (&list.cycles[i], &list.cycles[j]);
                let mut pair_min = None;
                for &x in &a.vertices {
                    for &y in &b.vertices {
                        if let Some(d) = dists[&x][y] {
                            pair_min = Some(pair_min.map_or(d, |m: usize| m.min(d)));
                        }
                    }
                }
                // unreachable pairs impose no constraint
                if let Some(d) = pair_min {
                    if best.as_ref().map_or(true, |&(_, _, bd)| d < bd) {
                        best = Some((*a, *b, d));
                    }
                }
            }
        }
        // None here means every pair is unreachable: no finite distance
        best
    }

    /// Checks the hypothesis "any two 4-cycles have distance at least `d`".
    pub fn validate_hypothesis(&self, d: usize) -> HypothesisVerdict {
        match self.closest_4cycle_pair() {
            None => HypothesisVerdict::Satisfied,
            Some((a, b, dist)) if dist < d => HypothesisVerdict::Violated {
                first: a,
                second: b,
                distance: dist,
            },
            Some(_) => HypothesisVerdict::Satisfied,
        }
    }
}

/// A 4-cycle stored as the lexicographically least of its 8
/// rotations/reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FourCycle {
    pub vertices: [usize; 4],
}

impl FourCycle {
    pub fn canonical(vs: [usize; 4]) -> Self {
        let mut best = vs;
        for start in 0..4 {
            for dir in [1usize, 3] {
                let cand = [
                    vs[start],
                    vs[(start + dir) % 4],
                    vs[(start + 2 * dir) % 4],
                    vs[(start + 3 * dir) % 4],
                ];
                if cand < best {
                    best = cand;
                }
            }
        }
        Self { vertices: best }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleList {
    pub cycles: Vec<FourCycle>,
}

impl CycleList {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn touches(&self, v: usize) -> bool {
        self.cycles.iter().any(|c| c.contains(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisVerdict {
    Satisfied,
    Violated {
        first: FourCycle,
        second: FourCycle,
        distance: usize,
    },
}

impl HypothesisVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, HypothesisVerdict::Satisfied)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_degrees() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!((0..3).map(|v| g.degree(v)).collect::<Vec<_>>(), [2, 2, 2]);
    }

    #[test]
    fn s1_internal_degrees() {
        let g = Graph::new(5, &[(0, 1), (0, 4), (1, 2), (1, 4), (2, 3), (3, 4)]).unwrap();
        let degs: Vec<usize> = (0..5).map(|v| g.degree(v)).collect();
        assert_eq!(degs, [2, 3, 2, 2, 3]);
    }

    #[test]
    fn loop_rejected() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::LoopEdge(0)));
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange(2, 2))
        );
    }

    #[test]
    fn parallel_edges_collapse() {
        let g = Graph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn path_distance() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.shortest_path_distance(0, 2).unwrap(), Some(2));
        assert_eq!(g.shortest_path_distance(1, 1).unwrap(), Some(0));
    }

    #[test]
    fn disconnected_distance() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.shortest_path_distance(0, 3).unwrap(), None);
    }

    #[test]
    fn distance_out_of_range() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(g.shortest_path_distance(0, 5).is_err());
    }

    #[test]
    fn c4_has_one_cycle() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.enumerate_4cycles().len(), 1);
    }

    #[test]
    fn p4_has_no_cycle() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(g.enumerate_4cycles().is_empty());
    }

    #[test]
    fn k4_has_three_cycles() {
        // frozen against the brute force below
        assert_eq!(k4().enumerate_4cycles().len(), 3);
        assert_eq!(brute_force_4cycles(&k4()).len(), 3);
    }

    #[test]
    fn k4_min_distance_zero() {
        assert_eq!(k4().min_pairwise_4cycle_distance(), Some(0));
        assert!(matches!(
            k4().validate_hypothesis(5),
            HypothesisVerdict::Violated { distance: 0, .. }
        ));
    }

    #[test]
    fn single_c4_satisfies() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(g.validate_hypothesis(5).is_satisfied());
        assert_eq!(g.min_pairwise_4cycle_distance(), None);
    }

    #[test]
    fn tree_satisfies() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        assert!(g.validate_hypothesis(5).is_satisfied());
    }

    #[test]
    fn shared_vertex_cycles_distance_zero() {
        // two C4s glued at vertex 0
        let g = Graph::new(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)],
        )
        .unwrap();
        assert_eq!(g.min_pairwise_4cycle_distance(), Some(0));
    }

    #[test]
    fn cycles_joined_by_path() {
        // C4 on 0..4, C4 on 4..8, path of 5 edges between vertices 0 and 4+0
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        edges.extend([(4, 5), (5, 6), (6, 7), (7, 4)]);
        edges.extend([(0, 8), (8, 9), (9, 10), (10, 11), (11, 4)]);
        let g = Graph::new(12, &edges).unwrap();
        assert_eq!(g.min_pairwise_4cycle_distance(), Some(5));
        assert!(g.validate_hypothesis(5).is_satisfied());
        assert!(!g.validate_hypothesis(6).is_satisfied());
    }

    #[test]
    fn hypothesis_distance_zero_always_holds() {
        for g in [k4(), Graph::new(1, &[]).unwrap()] {
            assert!(g.validate_hypothesis(0).is_satisfied());
        }
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let sum: usize = (0..6).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    /// Independent oracle: every ordered 4-tuple of distinct vertices that
    /// forms a closed walk, canonicalized.
    fn brute_force_4cycles(g: &Graph) -> BTreeSet<FourCycle> {
        let n = g.vertex_count();
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let vs = [a, b, c, d];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
                        if distinct
                            && g.has_edge(a, b)
                            && g.has_edge(b, c)
                            && g.has_edge(c, d)
                            && g.has_edge(d, a)
                        {
                            out.insert(FourCycle::canonical(vs));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=8usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let fast: BTreeSet<FourCycle> = g.enumerate_4cycles().cycles.into_iter().collect();
            assert_eq!(fast, brute_force_4cycles(&g));
        }
    }

    #[test]
    fn distance_is_a_metric() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..=9usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            for _ in 0..30 {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                let d = |x, y| g.shortest_path_distance(x, y).unwrap();
                assert_eq!(d(a, b), d(b, a));
                assert_eq!(d(a, a), Some(0));
                if let (Some(ab), Some(bc)) = (d(a, b), d(b, c)) {
                    let ac = d(a, c).expect("connected through b");
                    assert!(ac <= ab + bc);
                }
            }
        }
    }

    #[test]
    fn canonical_form_unique() {
        let c = FourCycle::canonical([2, 1, 0, 3]);
        for start in 0..4 {
            for dir in [1usize, 3] {
                let vs = c.vertices;
                let rotated = [
                    vs[start],
                    vs[(start + dir) % 4],
                    vs[(start + 2 * dir) % 4],
                    vs[(start + 3 * dir) % 4],
                ];
                assert_eq!(FourCycle::canonical(rotated), c);
            }
        }
    }
}
