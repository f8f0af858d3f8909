//! Graphs with loops, list instances, and the basic queries on the target
//! graph that everything else builds on.

use serde::Serialize;

use crate::colorset::{ColorSet, MAX_COLORS};
use crate::error::{Error, Result};

/// Undirected graph on `0..n` with optional loops. `v` has a loop iff
/// `v` appears in its own neighbor list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `uv` (a loop if `u == v`). Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u},{v}) out of range for {n} vertices"
            )));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                if u != v {
                    let pos = self.adj[v].binary_search(&u).unwrap_err();
                    self.adj[v].insert(pos, u);
                }
                Ok(true)
            }
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// A loop contributes exactly one to the degree.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Every edge once, as `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Subgraph induced on `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j >= i {
                    g.add_edge(i, j).expect("indices in range");
                }
            }
        }
        g
    }
}

/// The fixed target graph `H`, with neighborhoods cached as bit sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGraph {
    graph: Graph,
    nbr: Vec<ColorSet>,
}

impl HGraph {
    pub fn new(graph: Graph) -> Result<HGraph> {
        let h = graph.vertex_count();
        if h == 0 {
            return Err(Error::InvalidGraph("target graph needs at least one vertex".into()));
        }
        if h > MAX_COLORS {
            return Err(Error::InvalidGraph(format!(
                "target graph has {h} vertices; at most {MAX_COLORS} supported"
            )));
        }
        let nbr = (0..h)
            .map(|v| graph.neighbors(v).iter().copied().collect())
            .collect();
        Ok(HGraph { graph, nbr })
    }

    pub fn from_edges(h: usize, edges: &[(usize, usize)]) -> Result<HGraph> {
        HGraph::new(Graph::from_edges(h, edges)?)
    }

    /// Number of vertices (colors).
    pub fn h(&self) -> usize {
        self.nbr.len()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertices(&self) -> ColorSet {
        ColorSet::full(self.h())
    }

    #[inline]
    pub fn nbr(&self, v: usize) -> ColorSet {
        self.nbr[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.nbr[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbr[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.nbr.iter().map(|n| n.len()).max().unwrap_or(0)
    }

    /// Intersection of the neighborhoods of `s` (everything for `s = {}`).
    #[inline]
    pub fn common_nbrs(&self, s: ColorSet) -> ColorSet {
        s.iter().fold(self.vertices(), |acc, v| acc & self.nbr[v])
    }

    /// Colors of `l` adjacent to every vertex of `s`.
    pub fn common_neighbors(&self, s: ColorSet, l: ColorSet) -> ColorSet {
        self.common_nbrs(s) & l
    }

    pub fn has_common_neighbor(&self, s: ColorSet, l: ColorSet) -> bool {
        !self.common_neighbors(s, l).is_empty()
    }

    /// Neither neighborhood contains the other.
    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        !self.nbr[u].is_subset(self.nbr[v]) && !self.nbr[v].is_subset(self.nbr[u])
    }

    pub fn is_incomparable_set(&self, l: ColorSet) -> bool {
        let vs = l.to_vec();
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.incomparable(a, b)))
    }

    /// Removes dominated colors from `l`: `x` goes if some other `y` in `l`
    /// has `N(x) ⊊ N(y)`, or `N(x) = N(y)` and `y < x`.
    pub fn reduce_list(&self, l: ColorSet) -> ColorSet {
        l.iter()
            .filter(|&x| {
                !l.iter().any(|y| {
                    y != x
                        && self.nbr[x].is_subset(self.nbr[y])
                        && (self.nbr[x] != self.nbr[y] || y < x)
                })
            })
            .collect()
    }
}

/// An instance `(G, L)` of list H-coloring, optionally with a vertex cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub h: usize,
    pub graph: Graph,
    pub lists: Vec<ColorSet>,
    pub cover: Option<Vec<usize>>,
}

impl Instance {
    pub fn new(h: usize, graph: Graph, lists: Vec<ColorSet>, cover: Option<Vec<usize>>) -> Result<Instance> {
        let inst = Instance {
            h,
            graph,
            lists,
            cover,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        if self.h == 0 || self.h > MAX_COLORS {
            return Err(Error::InvalidInstance(format!("unsupported target size {}", self.h)));
        }
        if self.lists.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} lists for {n} vertices",
                self.lists.len()
            )));
        }
        let all = ColorSet::full(self.h);
        if let Some(v) = self.lists.iter().position(|l| !l.is_subset(all)) {
            return Err(Error::InvalidInstance(format!(
                "list of vertex {v} mentions colors outside 0..{}",
                self.h
            )));
        }
        if let Some(cover) = &self.cover {
            let mut in_cover = vec![false; n];
            for &x in cover {
                if x >= n {
                    return Err(Error::InvalidInstance(format!("cover vertex {x} out of range")));
                }
                if in_cover[x] {
                    return Err(Error::InvalidInstance(format!("cover vertex {x} repeated")));
                }
                in_cover[x] = true;
            }
            if let Some((u, v)) = self.graph.edges().find(|&(u, v)| !in_cover[u] && !in_cover[v]) {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u},{v}) is not covered by the supplied cover"
                )));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `reduce_lists`: every list becomes an incomparable subset of itself.
    pub fn reduce_lists(&self, hg: &HGraph) -> Instance {
        Instance {
            lists: self.lists.iter().map(|&l| hg.reduce_list(l)).collect(),
            ..self.clone()
        }
    }

    /// The supplied cover, or a greedy 2-approximation if none was given.
    pub fn cover_certificate(&self) -> VertexCoverCertificate {
        match &self.cover {
            Some(c) => VertexCoverCertificate {
                cover: c.clone(),
                approx_factor: 1,
            },
            None => greedy_vertex_cover(&self.graph),
        }
    }

    /// Keeps the vertices `keep` (in that order) and exactly the edges of
    /// `edges`, given in original numbering.
    pub fn subinstance(&self, keep: &[usize], edges: &[(usize, usize)], cover: Option<Vec<usize>>) -> Instance {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for &(u, v) in edges {
            debug_assert!(self.graph.has_edge(u, v));
            g.add_edge(index[u], index[v]).expect("kept endpoints");
        }
        Instance {
            h: self.h,
            graph: g,
            lists: keep.iter().map(|&v| self.lists[v]).collect(),
            cover: cover.map(|c| c.into_iter().map(|v| index[v]).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCoverCertificate {
    pub cover: Vec<usize>,
    /// 1 when supplied externally, 2 when computed by [`greedy_vertex_cover`].
    pub approx_factor: u32,
}

/// Maximal-matching heuristic: scan edges in order and take both endpoints of
/// every edge not yet covered.
pub fn greedy_vertex_cover(g: &Graph) -> VertexCoverCertificate {
    let mut taken = vec![false; g.vertex_count()];
    for (u, v) in g.edges() {
        if !taken[u] && !taken[v] {
            taken[u] = true;
            taken[v] = true;
        }
    }
    VertexCoverCertificate {
        cover: (0..g.vertex_count()).filter(|&v| taken[v]).collect(),
        approx_factor: 2,
    }
}

pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut inc = vec![false; g.vertex_count()];
    for &v in cover {
        inc[v] = true;
    }
    g.edges().all(|(u, v)| inc[u] || inc[v])
}
