use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed::{EdgeSet, MAX_ELEMENTS};

/// A finite multigraph with a reference orientation.
///
/// Edge `e` is the arc `edges[e] = (tail, head)`. Loops and parallel edges
/// are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        if edges.len() > MAX_ELEMENTS {
            return Err(Error::InvalidGraph(format!(
                "at most {MAX_ELEMENTS} edges are supported, got {}",
                edges.len()
            )));
        }
        if let Some(&(t, h)) = edges.iter().find(|&&(t, h)| t >= vertex_count || h >= vertex_count) {
            return Err(Error::InvalidGraph(format!("edge ({t},{h}) references a vertex outside 0..{vertex_count}")));
        }
        Ok(Graph { vertex_count, edges })
    }

    /// Same as [`Graph::new`] but also rejects disconnected graphs.
    pub fn connected(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self::new(vertex_count, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (t, h) = self.edges[e];
        t == h
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    /// Number of connected components of the spanning subgraph `(V, s)`.
    pub fn components(&self, s: EdgeSet) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        s.iter().for_each(|e| {
            let (t, h) = self.edges[e];
            uf.union(t, h);
        });
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.all_edges()) == 1
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::connected(doc.vertices, doc.edges.into_iter().map(|[t, h]| (t, h)).collect())
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDoc { vertices: self.vertex_count, edges: self.edges.iter().map(|&(t, h)| [t, h]).collect() };
        serde_json::to_string(&doc).expect("graph serializes")
    }

    /// The directed triangle with arcs `v2→v0`, `v0→v1`, `v1→v2`.
    pub fn triangle() -> Self {
        Graph::new(3, vec![(2, 0), (0, 1), (1, 2)]).expect("valid")
    }
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), sets: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.sets -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.sets
    }
}
