//! Finite median-graph primitives.
//!
//! A median graph is a connected graph in which every vertex triple has a
//! unique median: a vertex lying on shortest paths between each pair. These
//! are exactly the 1-skeleta of CAT(0) cube complexes, so everything here is
//! phrased in wall terms: the edge classes of the Djokovic-Winkler relation
//! partition the edges, and removing one class splits the graph into the two
//! sides of a wall.
//!
//! Vertex ids are opaque strings. All iteration orders are derived from the
//! sorted id list, so outputs are reproducible byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MedianError {
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge {0:?} -- {1:?} is a self-loop")]
    SelfLoop(String, String),
    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected ({0:?} and {1:?} lie in different components)")]
    Disconnected(String, String),
    #[error("wall classes are not transitive; not a partial cube (edges {0:?} and {1:?})")]
    NotPartialCube(String, String),
    #[error("removing a wall class does not split the graph into two sides")]
    BadWallSplit,
    #[error("identical walls passed to transversality test")]
    IdenticalWalls,
    #[error("vertices {0:?} and {1:?} are not adjacent")]
    NotAdjacent(String, String),
    #[error("path repeats the wall of edge {0:?} -- {1:?}; not a geodesic")]
    NotGeodesic(String, String),
    #[error("no unique median for triple ({0:?}, {1:?}, {2:?})")]
    NoMedian(String, String, String),
}

/// Result of [`MedianGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Ok,
    /// Two vertices in different components.
    Disconnected { left: String, right: String },
    /// First triple (in sorted id order) with no unique median, and how many
    /// candidate medians it has.
    MedianFailure { triple: [String; 3], candidates: usize },
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationReport::Ok)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Ok => write!(f, "ok"),
            ValidationReport::Disconnected { left, right } => {
                write!(f, "disconnected: {left} and {right} are in different components")
            }
            ValidationReport::MedianFailure { triple, candidates } => write!(
                f,
                "median failure at ({}, {}, {}): {} candidates",
                triple[0], triple[1], triple[2], candidates
            ),
        }
    }
}

/// One Djokovic-Winkler edge class together with the two sides it bounds.
#[derive(Debug, Clone)]
pub struct Wall {
    id: usize,
    /// Indices into the graph's edge list, sorted.
    edges: Vec<usize>,
    /// `side[v] == true` iff vertex `v` lies on the plus side. The minus side
    /// contains the sorted-first endpoint of the class's first edge.
    side: Vec<bool>,
}

impl Wall {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edges
    }

    pub fn on_plus_side(&self, vertex: usize) -> bool {
        self.side[vertex]
    }

    /// The two sides as index lists (minus side first).
    pub fn sides(&self) -> (Vec<usize>, Vec<usize>) {
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for (v, &s) in self.side.iter().enumerate() {
            if s {
                plus.push(v)
            } else {
                minus.push(v)
            }
        }
        (minus, plus)
    }
}

/// A walk in a median graph, adjacency-checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicPath {
    vertices: Vec<usize>,
}

impl GeodesicPath {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite graph with the median-graph toolkit: BFS distance table, interval
/// and median queries, wall classes, squares in links.
#[derive(Debug)]
pub struct MedianGraph {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_index: BTreeMap<(usize, usize), usize>,
    dist: Vec<Vec<u32>>,
    walls: OnceLock<Result<WallTable, MedianError>>,
}

#[derive(Debug, Clone)]
struct WallTable {
    walls: Vec<Wall>,
    /// wall id of each edge, aligned with the edge list
    edge_wall: Vec<usize>,
}

pub const UNREACHABLE: u32 = u32::MAX;

impl MedianGraph {
    pub fn new<I, J, S, T>(vertices: I, edges: J) -> Result<Self, MedianError>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = (T, T)>,
        S: Into<String>,
        T: AsRef<str>,
    {
        let mut ids: Vec<String> = vertices.into_iter().map(Into::into).collect();
        ids.sort();
        if ids.is_empty() {
            return Err(MedianError::Empty);
        }
        for pair in ids.windows(2) {
            if pair[0] == pair[1] {
                return Err(MedianError::DuplicateVertex(pair[0].clone()));
            }
        }
        let index: BTreeMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut edge_set: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| MedianError::UnknownVertex(a.to_string()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| MedianError::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(MedianError::SelfLoop(a.to_string(), b.to_string()));
            }
            edge_set.push((ia.min(ib), ia.max(ib)));
        }
        edge_set.sort();
        for pair in edge_set.windows(2) {
            if pair[0] == pair[1] {
                let (u, v) = pair[0];
                return Err(MedianError::DuplicateEdge(ids[u].clone(), ids[v].clone()));
            }
        }
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in &edge_set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort();
        }
        let edge_index = edge_set
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let dist = all_pairs_bfs(&adj);
        Ok(MedianGraph {
            ids,
            index,
            adj,
            edges: edge_set,
            edge_index,
            dist,
            walls: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted vertex ids.
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id_of(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, MedianError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| MedianError::UnknownVertex(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn is_connected(&self) -> bool {
        self.dist[0].iter().all(|&d| d != UNREACHABLE)
    }

    pub fn dist_idx(&self, u: usize, v: usize) -> u32 {
        self.dist[u][v]
    }

    /// Combinatorial distance between two vertex ids.
    pub fn distance(&self, u: &str, v: &str) -> Result<u32, MedianError> {
        Ok(self.dist_idx(self.index_of(u)?, self.index_of(v)?))
    }

    /// Checks connectivity and the unique-median property over all triples.
    ///
    /// The scan uses interval bitsets, so it is independent of the
    /// distance-equation search used by `median` and by the test oracles.
    pub fn validate(&self) -> ValidationReport {
        let n = self.vertex_count();
        if let Some(v) = (0..n).find(|&v| self.dist[0][v] == UNREACHABLE) {
            return ValidationReport::Disconnected {
                left: self.ids[0].clone(),
                right: self.ids[v].clone(),
            };
        }
        let words = n.div_ceil(64);
        // interval bitsets for every ordered pair (row-major by u, then v)
        let mut intervals = vec![0u64; n * n * words];
        for u in 0..n {
            for v in 0..n {
                let row = (u * n + v) * words;
                let duv = self.dist[u][v];
                for t in 0..n {
                    if self.dist[u][t] + self.dist[t][v] == duv {
                        intervals[row + t / 64] |= 1u64 << (t % 64);
                    }
                }
            }
        }
        let mut meet = vec![0u64; words];
        for u in 0..n {
            for v in u..n {
                for w in v..n {
                    let ruv = (u * n + v) * words;
                    let rvw = (v * n + w) * words;
                    let rwu = (w * n + u) * words;
                    let mut count = 0u32;
                    for k in 0..words {
                        meet[k] = intervals[ruv + k] & intervals[rvw + k] & intervals[rwu + k];
                        count += meet[k].count_ones();
                    }
                    if count != 1 {
                        return ValidationReport::MedianFailure {
                            triple: [
                                self.ids[u].clone(),
                                self.ids[v].clone(),
                                self.ids[w].clone(),
                            ],
                            candidates: count as usize,
                        };
                    }
                }
            }
        }
        ValidationReport::Ok
    }

    /// The wall classes of the Djokovic-Winkler relation.
    ///
    /// Classes are built by closing the relation `e ~ f` (for `e = uv`,
    /// `f = xy`: `d(u,x) + d(v,y) != d(u,y) + d(v,x)`) and then re-checked:
    /// a class containing an unrelated pair means the relation was not
    /// transitive, which is reported as a not-a-partial-cube diagnostic
    /// rather than silently closed. Each class must split the graph into
    /// exactly two sides.
    pub fn walls(&self) -> Result<&[Wall], MedianError> {
        let table = self
            .walls
            .get_or_init(|| self.compute_walls())
            .as_ref()
            .map_err(Clone::clone)?;
        Ok(&table.walls)
    }

    /// Wall id of an edge (by edge index).
    pub fn wall_of_edge(&self, edge: usize) -> Result<usize, MedianError> {
        let table = self
            .walls
            .get_or_init(|| self.compute_walls())
            .as_ref()
            .map_err(Clone::clone)?;
        Ok(table.edge_wall[edge])
    }

    fn related(&self, e: (usize, usize), f: (usize, usize)) -> bool {
        let (u, v) = e;
        let (x, y) = f;
        self.dist[u][x] + self.dist[v][y] != self.dist[u][y] + self.dist[v][x]
    }

    fn compute_walls(&self) -> Result<WallTable, MedianError> {
        if !self.is_connected() {
            let bad = (0..self.vertex_count())
                .find(|&v| self.dist[0][v] == UNREACHABLE)
                .expect("disconnected graph has an unreachable vertex");
            return Err(MedianError::Disconnected(
                self.ids[0].clone(),
                self.ids[bad].clone(),
            ));
        }
        let m = self.edges.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut e: usize) -> usize {
            while parent[e] != e {
                parent[e] = parent[parent[e]];
                e = parent[e];
            }
            e
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if self.related(self.edges[i], self.edges[j]) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..m {
            let root = find(&mut parent, e);
            classes.entry(root).or_default().push(e);
        }
        // transitivity check: every pair inside a class must be related
        for class in classes.values() {
            for (a, &i) in class.iter().enumerate() {
                for &j in &class[a + 1..] {
                    if !self.related(self.edges[i], self.edges[j]) {
                        let (u, v) = self.edges[i];
                        let (x, y) = self.edges[j];
                        return Err(MedianError::NotPartialCube(
                            format!("{} -- {}", self.ids[u], self.ids[v]),
                            format!("{} -- {}", self.ids[x], self.ids[y]),
                        ));
                    }
                }
            }
        }
        let mut walls = Vec::new();
        let mut edge_wall = vec![usize::MAX; m];
        // deterministic wall order: by smallest edge index in the class
        let mut ordered: Vec<Vec<usize>> = classes.into_values().collect();
        ordered.sort_by_key(|c| c[0]);
        for (id, class) in ordered.into_iter().enumerate() {
            let side = self.two_color_without(&class)?;
            for &e in &class {
                edge_wall[e] = id;
            }
            walls.push(Wall {
                id,
                edges: class,
                side,
            });
        }
        Ok(WallTable { walls, edge_wall })
    }

    /// 2-colors the vertices after removing the given edge class; the side of
    /// the first removed edge's smaller endpoint is the minus side.
    fn two_color_without(&self, removed: &[usize]) -> Result<Vec<bool>, MedianError> {
        let n = self.vertex_count();
        let banned: std::collections::BTreeSet<usize> = removed.iter().copied().collect();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0usize;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let label = next;
            next += 1;
            let mut queue = std::collections::VecDeque::from([start]);
            comp[start] = label;
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    let e = self.edge_between(u, v).expect("adjacency implies edge");
                    if banned.contains(&e) || comp[v] != usize::MAX {
                        continue;
                    }
                    comp[v] = label;
                    queue.push_back(v);
                }
            }
        }
        if next != 2 {
            return Err(MedianError::BadWallSplit);
        }
        let (root, _) = self.edges[removed[0]];
        let minus = comp[root];
        Ok(comp.iter().map(|&c| c != minus).collect())
    }

    /// Two walls are transverse iff all four side intersections are nonempty.
    pub fn transverse(&self, w1: &Wall, w2: &Wall) -> Result<bool, MedianError> {
        if w1.id == w2.id {
            return Err(MedianError::IdenticalWalls);
        }
        let mut quadrants = [false; 4];
        for v in 0..self.vertex_count() {
            let q = (w1.side[v] as usize) << 1 | (w2.side[v] as usize);
            quadrants[q] = true;
        }
        Ok(quadrants.iter().all(|&q| q))
    }

    /// `I(u, v)`: all vertices on shortest paths between `u` and `v`.
    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        let duv = self.dist[u][v];
        (0..self.vertex_count())
            .filter(|&t| self.dist[u][t] + self.dist[t][v] == duv)
            .collect()
    }

    /// The unique vertex in all three pairwise intervals.
    pub fn median(&self, u: usize, v: usize, w: usize) -> Result<usize, MedianError> {
        let mut found = None;
        for t in 0..self.vertex_count() {
            if self.dist[u][t] + self.dist[t][v] == self.dist[u][v]
                && self.dist[v][t] + self.dist[t][w] == self.dist[v][w]
                && self.dist[w][t] + self.dist[t][u] == self.dist[w][u]
            {
                if found.is_some() {
                    return Err(MedianError::NoMedian(
                        self.ids[u].clone(),
                        self.ids[v].clone(),
                        self.ids[w].clone(),
                    ));
                }
                found = Some(t);
            }
        }
        found.ok_or_else(|| {
            MedianError::NoMedian(self.ids[u].clone(), self.ids[v].clone(), self.ids[w].clone())
        })
    }

    /// Incident-edge data at `v`: the edges, which pairs of them span a
    /// square, and the walls they are dual to.
    pub fn link_data(&self, v: usize) -> Result<LinkData, MedianError> {
        let incident: Vec<usize> = self.adj[v]
            .iter()
            .map(|&n| self.edge_between(v, n).expect("adjacency implies edge"))
            .collect();
        let nbrs: Vec<usize> = self.adj[v].clone();
        let mut square_pairs = Vec::new();
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                if self.spans_square(v, nbrs[i], nbrs[j]) {
                    square_pairs.push((i, j));
                }
            }
        }
        let mut adjacent_walls: Vec<usize> = incident
            .iter()
            .map(|&e| self.wall_of_edge(e))
            .collect::<Result<_, _>>()?;
        adjacent_walls.sort();
        adjacent_walls.dedup();
        Ok(LinkData {
            incident,
            square_pairs,
            adjacent_walls,
        })
    }

    /// True iff the edges `v--a` and `v--b` span a 4-cycle.
    pub fn spans_square(&self, v: usize, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        self.adj[a]
            .iter()
            .any(|&x| x != v && self.adj[b].binary_search(&x).is_ok())
    }

    pub fn path(&self, ids: &[&str]) -> Result<GeodesicPath, MedianError> {
        let vertices: Vec<usize> = ids
            .iter()
            .map(|id| self.index_of(id))
            .collect::<Result<_, _>>()?;
        for pair in vertices.windows(2) {
            if self.edge_between(pair[0], pair[1]).is_none() {
                return Err(MedianError::NotAdjacent(
                    self.ids[pair[0]].clone(),
                    self.ids[pair[1]].clone(),
                ));
            }
        }
        Ok(GeodesicPath { vertices })
    }

    /// Walls crossed by the path, in traversal order. Errors if a wall
    /// repeats, i.e. the path is not a geodesic.
    pub fn path_walls(&self, path: &GeodesicPath) -> Result<Vec<usize>, MedianError> {
        let mut seen = std::collections::BTreeSet::new();
        let mut crossed = Vec::new();
        for pair in path.vertices.windows(2) {
            let e = self
                .edge_between(pair[0], pair[1])
                .expect("path is adjacency-checked");
            let w = self.wall_of_edge(e)?;
            if !seen.insert(w) {
                return Err(MedianError::NotGeodesic(
                    self.ids[pair[0]].clone(),
                    self.ids[pair[1]].clone(),
                ));
            }
            crossed.push(w);
        }
        Ok(crossed)
    }

    /// True iff no two walls crossed by the geodesic are transverse.
    pub fn is_straight_path(&self, path: &GeodesicPath) -> Result<bool, MedianError> {
        let crossed = self.path_walls(path)?;
        let walls = self.walls()?;
        for (i, &a) in crossed.iter().enumerate() {
            for &b in &crossed[i + 1..] {
                if self.transverse(&walls[a], &walls[b])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Graph diameter (vertex count must be finite and graph connected).
    pub fn diameter(&self) -> u32 {
        let mut best = 0;
        for row in &self.dist {
            for &d in row {
                if d != UNREACHABLE && d > best {
                    best = d;
                }
            }
        }
        best
    }
}

/// Link of a vertex: incident edges, square adjacency among them, and the
/// walls adjacent to the vertex.
#[derive(Debug, Clone)]
pub struct LinkData {
    /// Edge indices incident to the vertex, ordered by neighbor id.
    pub incident: Vec<usize>,
    /// Pairs of positions in `incident` whose edges span a square.
    pub square_pairs: Vec<(usize, usize)>,
    /// Sorted wall ids dual to the incident edges.
    pub adjacent_walls: Vec<usize>,
}

fn all_pairs_bfs(adj: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut dist = vec![vec![UNREACHABLE; n]; n];
    for start in 0..n {
        let row = &mut dist[start];
        row[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == UNREACHABLE {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> MedianGraph {
        MedianGraph::new(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap()
    }

    fn path(n: usize) -> MedianGraph {
        let ids: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (format!("p{i}"), format!("p{}", i + 1)))
            .collect();
        MedianGraph::new(ids, edges).unwrap()
    }

    fn star4() -> MedianGraph {
        MedianGraph::new(
            ["c", "x", "y", "z", "w"],
            [("c", "x"), ("c", "y"), ("c", "z"), ("c", "w")],
        )
        .unwrap()
    }

    #[test]
    fn validate_single_vertex() {
        let g = MedianGraph::new(["v"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(g.validate(), ValidationReport::Ok);
    }

    #[test]
    fn validate_cycle4() {
        assert_eq!(cycle4().validate(), ValidationReport::Ok);
    }

    #[test]
    fn validate_triangle_fails_with_triple() {
        let g = MedianGraph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        match g.validate() {
            ValidationReport::MedianFailure { triple, candidates } => {
                assert_eq!(triple, ["a".to_string(), "b".to_string(), "c".to_string()]);
                assert_eq!(candidates, 0);
            }
            other => panic!("expected median failure, got {other:?}"),
        }
    }

    #[test]
    fn validate_disconnected_reported_distinctly() {
        let g = MedianGraph::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(matches!(g.validate(), ValidationReport::Disconnected { .. }));
    }

    #[test]
    fn distances() {
        let g = cycle4();
        assert_eq!(g.distance("a", "a").unwrap(), 0);
        assert_eq!(g.distance("a", "c").unwrap(), 2);
        assert!(g.distance("a", "nope").is_err());
    }

    #[test]
    fn walls_single_edge() {
        let g = MedianGraph::new(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(g.walls().unwrap().len(), 1);
    }

    #[test]
    fn walls_cycle4_two_classes_of_two() {
        let g = cycle4();
        let walls = g.walls().unwrap();
        assert_eq!(walls.len(), 2);
        for w in walls {
            assert_eq!(w.edge_indices().len(), 2);
            let (minus, plus) = w.sides();
            assert_eq!(minus.len(), 2);
            assert_eq!(plus.len(), 2);
        }
    }

    #[test]
    fn walls_path3_singletons() {
        let g = path(3);
        let walls = g.walls().unwrap();
        assert_eq!(walls.len(), 3);
        assert!(walls.iter().all(|w| w.edge_indices().len() == 1));
    }

    #[test]
    fn transverse_cycle4() {
        let g = cycle4();
        let walls = g.walls().unwrap();
        assert!(g.transverse(&walls[0], &walls[1]).unwrap());
        assert!(g.transverse(&walls[0], &walls[0]).is_err());
    }

    #[test]
    fn transverse_false_on_paths_and_trees() {
        let g = path(3);
        let walls = g.walls().unwrap();
        for i in 0..walls.len() {
            for j in (i + 1)..walls.len() {
                assert!(!g.transverse(&walls[i], &walls[j]).unwrap());
            }
        }
        let s = star4();
        let walls = s.walls().unwrap();
        for i in 0..walls.len() {
            for j in (i + 1)..walls.len() {
                assert!(!s.transverse(&walls[i], &walls[j]).unwrap());
            }
        }
    }

    #[test]
    fn interval_and_median() {
        let g = cycle4();
        let v = g.index_of("a").unwrap();
        assert_eq!(g.interval(v, v), vec![v]);
        let (a, b, c) = (
            g.index_of("a").unwrap(),
            g.index_of("b").unwrap(),
            g.index_of("c").unwrap(),
        );
        assert_eq!(g.median(a, b, c).unwrap(), b);
        // majority rule
        assert_eq!(g.median(a, a, c).unwrap(), a);
    }

    #[test]
    fn link_data_shapes() {
        // degree-2 path vertex: two link vertices, no link edge
        let g = path(2);
        let mid = g.index_of("p1").unwrap();
        let link = g.link_data(mid).unwrap();
        assert_eq!(link.incident.len(), 2);
        assert!(link.square_pairs.is_empty());
        assert_eq!(link.adjacent_walls.len(), 2);

        // 4-cycle corner: two link vertices joined by a link edge
        let c4 = cycle4();
        let a = c4.index_of("a").unwrap();
        let link = c4.link_data(a).unwrap();
        assert_eq!(link.incident.len(), 2);
        assert_eq!(link.square_pairs, vec![(0, 1)]);

        // star center: four isolated link vertices
        let s = star4();
        let c = s.index_of("c").unwrap();
        let link = s.link_data(c).unwrap();
        assert_eq!(link.incident.len(), 4);
        assert!(link.square_pairs.is_empty());
    }

    #[test]
    fn straight_paths() {
        // tree paths are always straight
        let g = path(3);
        let p = g.path(&["p0", "p1", "p2", "p3"]).unwrap();
        assert!(g.is_straight_path(&p).unwrap());
        // length-1 path is straight
        let p1 = g.path(&["p0", "p1"]).unwrap();
        assert!(g.is_straight_path(&p1).unwrap());
        // an L around a square is not
        let c4 = cycle4();
        let l = c4.path(&["a", "b", "c"]).unwrap();
        assert!(!c4.is_straight_path(&l).unwrap());
        // backtracking repeats a wall: rejected
        let back = g.path(&["p0", "p1", "p0"]).unwrap();
        assert!(matches!(
            g.is_straight_path(&back),
            Err(MedianError::NotGeodesic(..))
        ));
    }

    #[test]
    fn distance_equals_separating_wall_count() {
        for g in [cycle4(), path(3), star4()] {
            let walls = g.walls().unwrap();
            for u in 0..g.vertex_count() {
                for v in 0..g.vertex_count() {
                    let separating = walls
                        .iter()
                        .filter(|w| w.on_plus_side(u) != w.on_plus_side(v))
                        .count() as u32;
                    assert_eq!(g.dist_idx(u, v), separating);
                }
            }
        }
    }

    #[test]
    fn wall_sides_are_convex() {
        for g in [cycle4(), path(3), star4()] {
            let walls = g.walls().unwrap();
            for w in walls {
                for u in 0..g.vertex_count() {
                    for v in 0..g.vertex_count() {
                        if w.on_plus_side(u) != w.on_plus_side(v) {
                            continue;
                        }
                        for t in g.interval(u, v) {
                            assert_eq!(w.on_plus_side(t), w.on_plus_side(u));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn median_symmetric_and_between() {
        let g = cycle4();
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let m = g.median(u, v, w).unwrap();
                    for (a, b, c) in [(u, w, v), (v, u, w), (v, w, u), (w, u, v), (w, v, u)] {
                        assert_eq!(g.median(a, b, c).unwrap(), m);
                    }
                    assert_eq!(g.dist_idx(u, m) + g.dist_idx(m, v), g.dist_idx(u, v));
                    assert_eq!(g.dist_idx(v, m) + g.dist_idx(m, w), g.dist_idx(v, w));
                    assert_eq!(g.dist_idx(w, m) + g.dist_idx(m, u), g.dist_idx(w, u));
                }
            }
        }
    }

    /// Independent oracle: a graph passes `validate` iff a brute-force scan of
    /// the three distance equations finds exactly one solution per triple.
    fn brute_force_median_total(g: &MedianGraph) -> bool {
        let n = g.vertex_count();
        if !g.is_connected() {
            return false;
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let hits = (0..n)
                        .filter(|&t| {
                            g.dist_idx(u, t) + g.dist_idx(t, v) == g.dist_idx(u, v)
                                && g.dist_idx(v, t) + g.dist_idx(t, w) == g.dist_idx(v, w)
                                && g.dist_idx(w, t) + g.dist_idx(t, u) == g.dist_idx(w, u)
                        })
                        .count();
                    if hits != 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn validate_matches_brute_force_oracle() {
        let candidates: Vec<MedianGraph> = vec![
            cycle4(),
            path(3),
            star4(),
            MedianGraph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap(),
            // K4 minus an edge: contains triangles
            MedianGraph::new(
                ["a", "b", "c", "d"],
                [("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("b", "d")],
            )
            .unwrap(),
            // 5-cycle
            MedianGraph::new(
                ["a", "b", "c", "d", "e"],
                [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
            )
            .unwrap(),
            // cube graph
            MedianGraph::new(
                ["000", "001", "010", "011", "100", "101", "110", "111"],
                [
                    ("000", "001"),
                    ("000", "010"),
                    ("000", "100"),
                    ("001", "011"),
                    ("001", "101"),
                    ("010", "011"),
                    ("010", "110"),
                    ("100", "101"),
                    ("100", "110"),
                    ("011", "111"),
                    ("101", "111"),
                    ("110", "111"),
                ],
            )
            .unwrap(),
        ];
        for g in &candidates {
            assert_eq!(g.validate().is_ok(), brute_force_median_total(g));
        }
    }
}
