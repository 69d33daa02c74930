//! Trivalent multigraphs, their GF(2) cycle space and the edge-cut operation.
//!
//! Vertices and edges keep the order in which they were supplied; every
//! deterministic output of the crate (weight order, cycle bases, fixture
//! numbering) is keyed to that order.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{self, BitVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex `{vertex}` has degree {degree}; expected 3 (or 1 at a leg end)")]
    BadDegree { vertex: String, degree: usize },
    #[error("leg `{0}` must have exactly one univalent endpoint")]
    BadLeg(String),
    #[error("univalent vertex `{0}` is not the end of a declared leg")]
    UndeclaredLeg(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
    #[error("operation needs a closed trivalent graph but the graph has {0} legs")]
    NotClosed(usize),
    #[error("edge `{0}` is a boundary leg")]
    IsLeg(String),
    #[error("edge set is not a cycle: vertex `{0}` meets it an odd number of times")]
    OddVertex(String),
    #[error("edge set has length {got}, graph has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Endpoints as vertex indices; equal for a loop.
    pub ends: [usize; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

/// Serialized graph: `{"vertices": [...], "edges": [{"id", "ends"}], "legs": [...]}`.
/// A loop lists the same vertex twice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub legs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
}

/// Connected multigraph whose vertices are trivalent or univalent leg ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    legs: Vec<usize>,
    /// For each vertex the incident edge slots; a loop occupies two slots.
    incidence: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds and validates a graph from vertex ids, `(edge id, [end, end])`
    /// pairs and the ordered list of leg edge ids.
    pub fn new<V, E, L>(vertices: V, edges: E, legs: L) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, [String; 2])>,
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut eindex = HashMap::new();
        let mut built = Vec::new();
        for (id, ends) in edges {
            let mut idx = [0; 2];
            for (slot, name) in ends.iter().enumerate() {
                idx[slot] = *vindex.get(name).ok_or_else(|| GraphError::UnknownVertex {
                    edge: id.clone(),
                    vertex: name.clone(),
                })?;
            }
            if eindex.insert(id.clone(), built.len()).is_some() {
                return Err(GraphError::DuplicateEdge(id));
            }
            built.push(Edge { id, ends: idx });
        }
        let mut leg_idx = Vec::new();
        for leg in legs {
            let leg: String = leg.into();
            let i = *eindex
                .get(&leg)
                .ok_or_else(|| GraphError::UnknownEdge(leg.clone()))?;
            if leg_idx.contains(&i) {
                return Err(GraphError::DuplicateEdge(leg));
            }
            leg_idx.push(i);
        }
        Self::from_parts(vertices, built, leg_idx)
    }

    pub(crate) fn from_parts(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        legs: Vec<usize>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.ends[0]].push(i);
            incidence[e.ends[1]].push(i);
        }
        let graph = Graph {
            vertices,
            edges,
            legs,
            incidence,
        };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<(), GraphError> {
        let mut is_leg_end = vec![false; self.vertices.len()];
        for &l in &self.legs {
            let e = &self.edges[l];
            let univalent: Vec<usize> = e
                .ends
                .iter()
                .copied()
                .filter(|&v| self.incidence[v].len() == 1)
                .collect();
            if e.is_loop() || univalent.len() != 1 {
                return Err(GraphError::BadLeg(e.id.clone()));
            }
            is_leg_end[univalent[0]] = true;
        }
        for (v, inc) in self.incidence.iter().enumerate() {
            match inc.len() {
                3 => {}
                1 if is_leg_end[v] => {}
                1 => return Err(GraphError::UndeclaredLeg(self.vertices[v].clone())),
                d => {
                    return Err(GraphError::BadDegree {
                        vertex: self.vertices[v].clone(),
                        degree: d,
                    })
                }
            }
        }
        if self.components(None).len() != 1 {
            return Err(GraphError::Disconnected);
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Leg edge indices in label order.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn is_closed(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn is_leg(&self, edge: usize) -> bool {
        self.legs.contains(&edge)
    }

    /// Incident edge slots of a vertex (a loop is listed twice).
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn is_trivalent_vertex(&self, v: usize) -> bool {
        self.incidence[v].len() == 3
    }

    /// First Betti number `|E| - |V| + 1`, counting leg ends as vertices.
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    /// Edge set from a list of edge ids.
    pub fn edge_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<BitVec, GraphError> {
        let mut v = BitVec::zeros(self.num_edges());
        for id in ids {
            let i = self
                .edge_index(id.as_ref())
                .ok_or_else(|| GraphError::UnknownEdge(id.as_ref().to_string()))?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        Graph::new(
            json.vertices.iter().cloned(),
            json.edges.iter().map(|e| (e.id.clone(), e.ends.clone())),
            json.legs.iter().cloned(),
        )
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    ends: e.ends.map(|v| self.vertices[v].clone()),
                })
                .collect(),
            legs: self
                .legs
                .iter()
                .map(|&l| self.edges[l].id.clone())
                .collect(),
        }
    }

    pub fn edge_ids(&self, set: &BitVec) -> Vec<String> {
        set.ones().map(|i| self.edges[i].id.clone()).collect()
    }

    pub(crate) fn require_closed(&self) -> Result<(), GraphError> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(GraphError::NotClosed(self.legs.len()))
        }
    }

    /// Vertex partition into connected components, optionally ignoring one edge.
    fn components(&self, skip: Option<usize>) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    if Some(e) == skip {
                        continue;
                    }
                    let ends = self.edges[e].ends;
                    let w = if ends[0] == v { ends[1] } else { ends[0] };
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Edges in breadth-first order from vertex 0: each vertex's incident
    /// edges are visited in input order, every edge appears once.
    pub fn bfs_edge_order(&self) -> Vec<usize> {
        let mut seen_v = vec![false; self.vertices.len()];
        let mut seen_e = vec![false; self.edges.len()];
        let mut order = Vec::with_capacity(self.edges.len());
        let mut queue = VecDeque::from([0]);
        seen_v[0] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                let ends = self.edges[e].ends;
                let w = if ends[0] == v { ends[1] } else { ends[0] };
                if !seen_v[w] {
                    seen_v[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Breadth-first spanning tree from vertex 0: the parent edge of every
    /// vertex (`None` at the root) and the tree-edge indicator.
    fn spanning_tree(&self) -> (Vec<Option<usize>>, Vec<bool>) {
        let mut parent = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        let mut tree = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                let ends = self.edges[e].ends;
                let w = if ends[0] == v { ends[1] } else { ends[0] };
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(e);
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
        (parent, tree)
    }

    /// Edge set of the tree path from `v` to the root.
    fn root_path(&self, parent: &[Option<usize>], mut v: usize) -> BitVec {
        let mut path = BitVec::zeros(self.edges.len());
        while let Some(e) = parent[v] {
            path.flip(e);
            let ends = self.edges[e].ends;
            v = if ends[0] == v { ends[1] } else { ends[0] };
        }
        path
    }

    /// Fundamental cycles of the breadth-first spanning tree, one per
    /// non-tree edge in edge order.
    pub fn cycle_basis(&self) -> Result<Vec<Cycle>, GraphError> {
        self.require_closed()?;
        let (parent, tree) = self.spanning_tree();
        let basis = (0..self.edges.len())
            .filter(|&e| !tree[e])
            .map(|e| {
                let [a, b] = self.edges[e].ends;
                let mut support = self.root_path(&parent, a);
                support.xor_assign(&self.root_path(&parent, b));
                support.flip(e);
                Cycle { support }
            })
            .collect();
        Ok(basis)
    }

    /// Vertices touched by an edge set.
    pub fn touched_vertices(&self, set: &BitVec) -> Vec<bool> {
        let mut on = vec![false; self.vertices.len()];
        for e in set.ones() {
            let [a, b] = self.edges[e].ends;
            on[a] = true;
            on[b] = true;
        }
        on
    }

    /// Edges off the cycle with exactly one endpoint on it (`Ex`) and with
    /// both endpoints on it (`In`). A loop at a cycle vertex is internal.
    pub fn external_internal_edges(&self, cycle: &Cycle) -> (BitVec, BitVec) {
        let on = self.touched_vertices(&cycle.support);
        let mut ex = BitVec::zeros(self.edges.len());
        let mut inner = BitVec::zeros(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            if cycle.support.get(i) {
                continue;
            }
            match (on[e.ends[0]], on[e.ends[1]]) {
                (true, true) => inner.set(i, true),
                (true, false) | (false, true) => ex.set(i, true),
                (false, false) => {}
            }
        }
        (ex, inner)
    }

    /// Whether removing the edge disconnects the graph.
    pub fn is_separating(&self, edge: usize) -> bool {
        self.components(Some(edge)).len() > 1
    }

    /// Replaces an internal edge by two boundary legs `<id>a` (at the first
    /// endpoint, taking the edge's position) and `<id>b` (at the second,
    /// appended). New legs are appended to the leg list in that order.
    pub fn cut_edge(&self, edge: usize) -> Result<Cut, GraphError> {
        let cut = &self.edges[edge];
        if self.is_leg(edge) {
            return Err(GraphError::IsLeg(cut.id.clone()));
        }
        let [u, v] = cut.ends;
        let mut vertices = self.vertices.clone();
        let wa = vertices.len();
        vertices.push(format!("{}a*", cut.id));
        let wb = vertices.len();
        vertices.push(format!("{}b*", cut.id));
        let mut edges = self.edges.clone();
        edges[edge] = Edge {
            id: format!("{}a", cut.id),
            ends: [u, wa],
        };
        let eb = edges.len();
        edges.push(Edge {
            id: format!("{}b", cut.id),
            ends: [v, wb],
        });
        let mut legs = self.legs.clone();
        legs.push(edge);
        legs.push(eb);

        let separating = self.is_separating(edge);
        if !separating {
            let graph = Graph::from_parts(vertices, edges, legs)?;
            return Ok(Cut::NonSeparating {
                graph,
                legs: [edge, eb],
            });
        }
        let comps = self.components(Some(edge));
        let side_of = |x: usize| comps.iter().position(|c| c.contains(&x)).unwrap();
        let (su, sv) = (side_of(u), side_of(v));
        let mut pieces = Vec::new();
        for (side, new_end, new_edge) in [(su, wa, edge), (sv, wb, eb)] {
            let mut keep_v: Vec<usize> = comps[side].clone();
            keep_v.push(new_end);
            let mut vmap = vec![usize::MAX; vertices.len()];
            for (n, &old) in keep_v.iter().enumerate() {
                vmap[old] = n;
            }
            let mut emap = vec![usize::MAX; edges.len()];
            let mut new_edges = Vec::new();
            for (i, e) in edges.iter().enumerate() {
                if vmap[e.ends[0]] != usize::MAX
                    && (i != eb || new_edge == eb)
                    && (i != edge || new_edge == edge)
                {
                    emap[i] = new_edges.len();
                    new_edges.push(Edge {
                        id: e.id.clone(),
                        ends: [vmap[e.ends[0]], vmap[e.ends[1]]],
                    });
                }
            }
            // original legs on this side keep their relative order
            let mut original = Vec::new();
            let mut new_legs = Vec::new();
            for (pos, &l) in self.legs.iter().enumerate() {
                if emap[l] != usize::MAX {
                    original.push(pos);
                    new_legs.push(emap[l]);
                }
            }
            new_legs.push(emap[new_edge]);
            let names = keep_v.iter().map(|&x| vertices[x].clone()).collect();
            pieces.push(CutPiece {
                graph: Graph::from_parts(names, new_edges, new_legs)?,
                original_legs: original,
            });
        }
        let second = pieces.pop().unwrap();
        let first = pieces.pop().unwrap();
        Ok(Cut::Separating {
            pieces: [first, second],
        })
    }

    /// Joins two legs into a single internal edge named `id`, removing their
    /// univalent ends. Inverse of [`Graph::cut_edge`] for a non-separating cut.
    pub fn glue_legs(&self, leg_a: usize, leg_b: usize, id: &str) -> Result<Graph, GraphError> {
        for l in [leg_a, leg_b] {
            if !self.is_leg(l) {
                return Err(GraphError::UnknownEdge(self.edges[l].id.clone()));
            }
        }
        let inner_end = |l: usize| {
            let e = &self.edges[l];
            if self.incidence[e.ends[0]].len() == 1 {
                (e.ends[1], e.ends[0])
            } else {
                (e.ends[0], e.ends[1])
            }
        };
        let (ua, wa) = inner_end(leg_a);
        let (ub, wb) = inner_end(leg_b);
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if i != wa && i != wb {
                vmap[i] = vertices.len();
                vertices.push(name.clone());
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if i == leg_b {
                continue;
            }
            emap[i] = edges.len();
            if i == leg_a {
                edges.push(Edge {
                    id: id.to_string(),
                    ends: [vmap[ua], vmap[ub]],
                });
            } else {
                edges.push(Edge {
                    id: e.id.clone(),
                    ends: [vmap[e.ends[0]], vmap[e.ends[1]]],
                });
            }
        }
        let legs = self
            .legs
            .iter()
            .filter(|&&l| l != leg_a && l != leg_b)
            .map(|&l| emap[l])
            .collect();
        Graph::from_parts(vertices, edges, legs)
    }
}

/// Result of cutting an edge.
#[derive(Clone, Debug)]
pub enum Cut {
    /// The graph stays connected; `legs` are the two new leg indices.
    NonSeparating { graph: Graph, legs: [usize; 2] },
    /// The graph falls into two pieces. Each piece carries its share of the
    /// original legs (in order) followed by the new leg.
    Separating { pieces: [CutPiece; 2] },
}

#[derive(Clone, Debug)]
pub struct CutPiece {
    pub graph: Graph,
    /// Positions in the parent's leg list of the legs this piece inherited.
    pub original_legs: Vec<usize>,
}

/// Element of the cycle space `H_1(Γ; Z/2)`: an edge set meeting every
/// vertex an even number of times (a loop meets its vertex twice).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    support: BitVec,
}

impl Cycle {
    pub fn new(graph: &Graph, support: BitVec) -> Result<Self, GraphError> {
        if support.len() != graph.num_edges() {
            return Err(GraphError::LengthMismatch {
                expected: graph.num_edges(),
                got: support.len(),
            });
        }
        let mut parity = vec![false; graph.num_vertices()];
        for e in support.ones() {
            let [a, b] = graph.edge(e).ends;
            parity[a] ^= true;
            parity[b] ^= true;
        }
        if let Some(v) = parity.iter().position(|&p| p) {
            return Err(GraphError::OddVertex(graph.vertices()[v].clone()));
        }
        Ok(Cycle { support })
    }

    pub fn from_ids<S: AsRef<str>>(graph: &Graph, ids: &[S]) -> Result<Self, GraphError> {
        Cycle::new(graph, graph.edge_set(ids)?)
    }

    pub fn zero(num_edges: usize) -> Self {
        Cycle {
            support: BitVec::zeros(num_edges),
        }
    }

    pub fn support(&self) -> &BitVec {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_zero()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.support.get(edge)
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        Cycle {
            support: self.support.xor(&other.support),
        }
    }
}

/// Sum of the basis cycles selected by the bits of `mask`.
pub fn combine(basis: &[Cycle], num_edges: usize, mask: u64) -> Cycle {
    let mut out = Cycle::zero(num_edges);
    for (h, c) in basis.iter().enumerate() {
        if mask >> h & 1 == 1 {
            out = out.add(c);
        }
    }
    out
}

/// GF(2) rank of a family of cycles.
pub fn cycle_rank(graph: &Graph, cycles: &[Cycle]) -> usize {
    gf2::rank(graph.num_edges(), cycles.iter().map(|c| c.support()))
}
