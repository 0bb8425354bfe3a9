//! Simple undirected graphs and the distance machinery built on them:
//! BFS distances, eccentricity profiles, centers, diametral paths,
//! blocks, caterpillars, spanning trees and canonical forms.

mod canon;
mod spanning;

pub use canon::{canonical_form, canonical_form_with_cap, CanonicalForm, DEFAULT_CANON_CAP};
pub use spanning::{
    all_spanning_trees_caterpillar_of_diameter, for_each_spanning_tree, spanning_trees,
    CaterpillarCheck, SpanningTrees,
};

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Distance reported for vertices not reachable from the BFS source.
pub const UNREACHABLE: usize = usize::MAX;

/// An undirected simple graph on vertices `0..order`.
///
/// Neighbor lists are kept sorted so that every traversal expands the
/// lowest-index neighbor first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::input("graph order must be positive"));
        }
        Ok(Self::empty(order))
    }

    pub(crate) fn empty(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(order)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds the graph whose upper-triangle adjacency bits, taken in
    /// column order `(0,1), (0,2), (1,2), (0,3), ...`, are the low bits of
    /// `mask`.
    pub fn from_upper_mask(order: usize, mask: u64) -> Self {
        let mut g = Self::empty(order);
        let mut bit = 0;
        for j in 1..order {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    g.adj[i].push(j);
                    g.adj[j].push(i);
                    g.edge_count += 1;
                }
                bit += 1;
            }
        }
        // columns are visited in increasing j, so each list is already sorted
        g
    }

    /// Adds the edge `{u, v}`. Loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::input(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::input(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn is_connected(&self) -> bool {
        let dist = bfs_from(self, 0);
        dist.iter().all(|&d| d != UNREACHABLE)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.order() && self.is_connected()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::input("permutation does not match graph order"));
        }
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.adj[a].push(b);
            g.adj[b].push(a);
        }
        for ns in &mut g.adj {
            ns.sort_unstable();
        }
        g.edge_count = self.edge_count;
        Ok(g)
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut index = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n || index[v] != usize::MAX {
                return Err(Error::input(format!("bad vertex {v} in induced subgraph")));
            }
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len())?;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.adj[i].push(j);
                    g.adj[j].push(i);
                    g.edge_count += 1;
                }
            }
        }
        for ns in &mut g.adj {
            ns.sort_unstable();
        }
        Ok(g)
    }

    /// Packs the upper triangle in the same column order as
    /// [`Graph::from_upper_mask`]. Only defined for `order <= 11`.
    pub fn upper_mask(&self) -> Option<u64> {
        let n = self.order();
        if n * n.saturating_sub(1) / 2 > 64 {
            return None;
        }
        let mut mask = 0u64;
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        Some(mask)
    }
}

fn bfs_from(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.order()];
    let mut queue = VecDeque::with_capacity(g.order());
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = du;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<usize>> {
    if source >= g.order() {
        return Err(Error::input(format!(
            "source {source} out of range for order {}",
            g.order()
        )));
    }
    Ok(bfs_from(g, source))
}

/// All-pairs hop distances of a connected graph.
pub fn distance_matrix(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let rows: Vec<Vec<usize>> = (0..g.order()).map(|s| bfs_from(g, s)).collect();
    if rows[0].contains(&UNREACHABLE) {
        return Err(Error::disconnected());
    }
    Ok(rows)
}

/// Per-vertex eccentricities and degrees plus the quantities derived
/// from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EccentricityProfile {
    pub eccentricity: Vec<usize>,
    pub degree: Vec<usize>,
    pub diameter: usize,
    pub radius: usize,
    pub center: Vec<usize>,
}

impl EccentricityProfile {
    /// `⌈diameter / 2⌉`, the smallest eccentricity any vertex can have.
    pub fn half_diameter_ceil(&self) -> usize {
        self.diameter.div_ceil(2)
    }

    pub fn order(&self) -> usize {
        self.eccentricity.len()
    }
}

/// Eccentricity profile of a connected graph.
pub fn profile(g: &Graph) -> Result<EccentricityProfile> {
    let n = g.order();
    let mut eccentricity = Vec::with_capacity(n);
    for s in 0..n {
        let dist = bfs_from(g, s);
        let mut ecc = 0;
        for &d in &dist {
            if d == UNREACHABLE {
                return Err(Error::disconnected());
            }
            ecc = ecc.max(d);
        }
        eccentricity.push(ecc);
    }
    Ok(profile_from_eccentricities(g, eccentricity))
}

pub(crate) fn profile_from_eccentricities(
    g: &Graph,
    eccentricity: Vec<usize>,
) -> EccentricityProfile {
    let diameter = eccentricity.iter().copied().max().unwrap_or(0);
    let radius = eccentricity.iter().copied().min().unwrap_or(0);
    let center = (0..g.order())
        .filter(|&v| eccentricity[v] == radius)
        .collect();
    EccentricityProfile {
        eccentricity,
        degree: g.degrees(),
        diameter,
        radius,
        center,
    }
}

/// A geodesic `v_0, ..., v_d` whose length equals the host diameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiametralPath {
    vertices: Vec<usize>,
}

impl DiametralPath {
    /// Wraps `vertices` after checking that they form a diametral path of `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        let path = DiametralPath { vertices };
        path.validate(g)?;
        Ok(path)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges on the path.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Center of the path itself: the middle vertex for even length, the
    /// two middle vertices for odd length.
    pub fn center(&self) -> Vec<usize> {
        let d = self.length();
        if d.is_multiple_of(2) {
            vec![self.vertices[d / 2]]
        } else {
            vec![self.vertices[(d - 1) / 2], self.vertices[d.div_ceil(2)]]
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.order();
        let vs = &self.vertices;
        if vs.is_empty() {
            return Err(Error::input("diametral path is empty"));
        }
        let mut seen = vec![false; n];
        for &v in vs {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::input(format!(
                    "diametral path repeats or leaves the graph at {v}"
                )));
            }
        }
        if vs.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::input("consecutive path vertices are not adjacent"));
        }
        let p = profile(g)?;
        let end_dist = bfs_from(g, vs[0])[self.end()];
        if self.length() != p.diameter || end_dist != p.diameter {
            return Err(Error::input(format!(
                "path of length {} is not diametral (diameter {})",
                self.length(),
                p.diameter
            )));
        }
        Ok(())
    }
}

/// Deterministic diametral path: the lexicographically smallest endpoint
/// pair `(s, t)` at distance `diameter`, joined through the BFS parent tree
/// of `s` (lowest-index neighbor expanded first).
pub fn find_diametral_path(g: &Graph) -> Result<DiametralPath> {
    let n = g.order();
    let dist = distance_matrix(g)?;
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    let (s, t) = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .find(|&(s, t)| dist[s][t] == diameter)
        .expect("some pair attains the diameter");

    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[s] = true;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut vertices = vec![t];
    let mut cur = t;
    while cur != s {
        cur = parent[cur];
        vertices.push(cur);
    }
    vertices.reverse();
    Ok(DiametralPath { vertices })
}

/// True iff the tree `g` becomes a path (or at most one vertex) once its
/// leaves are removed.
pub fn is_caterpillar(g: &Graph) -> Result<bool> {
    if !g.is_tree() {
        return Err(Error::Domain("caterpillar test requires a tree".into()));
    }
    let spine: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) > 1).collect();
    if spine.len() <= 1 {
        return Ok(true);
    }
    let spine_graph = g.induced_subgraph(&spine)?;
    Ok((0..spine_graph.order()).all(|v| spine_graph.degree(v) <= 2))
}

/// Blocks (maximal biconnected subgraphs, including bridges) as sorted
/// vertex sets. Isolated vertices form singleton blocks.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<usize>>,
    }

    fn visit(st: &mut State<'_>, u: usize, parent: usize) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for i in 0..st.g.degree(u) {
            let w = st.g.neighbors(u)[i];
            if st.disc[w] == 0 {
                st.stack.push((u, w));
                visit(st, w, u);
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = st.stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    st.out.push(block);
                }
            } else if w != parent && st.disc[w] < st.disc[u] {
                st.stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }

    let n = g.order();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if st.disc[v] == 0 {
            if g.degree(v) == 0 {
                st.out.push(vec![v]);
                st.disc[v] = usize::MAX;
            } else {
                visit(&mut st, v, usize::MAX);
            }
        }
    }
    st.out
}
