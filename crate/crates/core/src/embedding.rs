//! Rotation systems and face tracing for planar embeddings.

use std::collections::HashMap;

use thiserror::Error;

use crate::gf2::BitVec;
use crate::graph::{Cycle, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rotation lists unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("rotation is missing vertex `{0}`")]
    MissingVertex(String),
    #[error("bad edge-end token `{0}` (expected an edge id followed by + or -)")]
    BadToken(String),
    #[error("edge end `{0}` is not incident to vertex `{1}`")]
    WrongVertex(String, String),
    #[error("edge end `{0}` appears more than once")]
    DuplicateEnd(String),
    #[error("rotation at `{vertex}` lists {got} ends, vertex has degree {expected}")]
    WrongDegree {
        vertex: String,
        expected: usize,
        got: usize,
    },
    #[error("embedding is not planar: {faces} faces - {edges} edges + {vertices} vertices != 2")]
    NotPlanar {
        faces: usize,
        edges: usize,
        vertices: usize,
    },
}

/// One end of an edge: `end` 0 is the first listed endpoint (`+`), 1 the second (`-`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    pub fn twin(self) -> Dart {
        Dart {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// Cyclic order of edge ends around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<Dart>>,
}

impl RotationSystem {
    /// Validates per-vertex cyclic orders given as dart lists indexed by vertex.
    pub fn new(graph: &Graph, order: Vec<Vec<Dart>>) -> Result<Self, EmbeddingError> {
        if order.len() != graph.num_vertices() {
            let v = graph.vertices()[order.len().min(graph.num_vertices() - 1)].clone();
            return Err(EmbeddingError::MissingVertex(v));
        }
        let mut seen = HashMap::new();
        for (v, darts) in order.iter().enumerate() {
            let vname = &graph.vertices()[v];
            let degree = graph.incident(v).len();
            if darts.len() != degree {
                return Err(EmbeddingError::WrongDegree {
                    vertex: vname.clone(),
                    expected: degree,
                    got: darts.len(),
                });
            }
            for &d in darts {
                let token = dart_token(graph, d);
                if graph.edge(d.edge).ends[d.end as usize] != v {
                    return Err(EmbeddingError::WrongVertex(token, vname.clone()));
                }
                if seen.insert(d, v).is_some() {
                    return Err(EmbeddingError::DuplicateEnd(token));
                }
            }
        }
        Ok(RotationSystem { order })
    }

    /// Parses `{"v1": ["f1+", "f2+", "f3+"], ...}`-style data.
    pub fn from_tokens(
        graph: &Graph,
        tokens: &HashMap<String, Vec<String>>,
    ) -> Result<Self, EmbeddingError> {
        for v in tokens.keys() {
            if graph.vertex_index(v).is_none() {
                return Err(EmbeddingError::UnknownVertex(v.clone()));
            }
        }
        let mut order = Vec::with_capacity(graph.num_vertices());
        for v in graph.vertices() {
            let list = tokens
                .get(v)
                .ok_or_else(|| EmbeddingError::MissingVertex(v.clone()))?;
            let darts = list
                .iter()
                .map(|t| parse_dart(graph, t))
                .collect::<Result<Vec<_>, _>>()?;
            order.push(darts);
        }
        RotationSystem::new(graph, order)
    }

    pub fn to_tokens(&self, graph: &Graph) -> Vec<(String, Vec<String>)> {
        graph
            .vertices()
            .iter()
            .zip(&self.order)
            .map(|(v, ds)| {
                (
                    v.clone(),
                    ds.iter().map(|&d| dart_token(graph, d)).collect(),
                )
            })
            .collect()
    }

    pub fn order(&self) -> &[Vec<Dart>] {
        &self.order
    }

    fn vertex_of(&self, graph: &Graph, d: Dart) -> usize {
        graph.edge(d.edge).ends[d.end as usize]
    }

    /// Dart following `d` in the cyclic order at its vertex.
    fn successor(&self, graph: &Graph, d: Dart) -> Dart {
        let ring = &self.order[self.vertex_of(graph, d)];
        let at = ring.iter().position(|&x| x == d).expect("dart in rotation");
        ring[(at + 1) % ring.len()]
    }

    /// All faces as (start dart, boundary edge set). A face walk leaves
    /// along a dart, arrives at its twin and continues with the twin's
    /// successor. Edges traversed twice cancel in the boundary.
    pub fn trace_faces(&self, graph: &Graph) -> Vec<(Dart, BitVec)> {
        let mut used: HashMap<Dart, bool> = HashMap::new();
        let mut faces = Vec::new();
        for ring in &self.order {
            for &start in ring {
                if used.contains_key(&start) {
                    continue;
                }
                let mut boundary = BitVec::zeros(graph.num_edges());
                let mut d = start;
                loop {
                    used.insert(d, true);
                    boundary.flip(d.edge);
                    d = self.successor(graph, d.twin());
                    if d == start {
                        break;
                    }
                }
                faces.push((start, boundary));
            }
        }
        faces
    }
}

/// Bounded faces of a planar embedding.
///
/// The outer face is the one traced from the first edge end listed at the
/// first vertex; the remaining `g` boundaries are sorted by their edge-index
/// lists.
pub fn faces(graph: &Graph, rotation: &RotationSystem) -> Result<Vec<Cycle>, EmbeddingError> {
    faces_with_outer(graph, rotation, 0)
}

/// As [`faces`], treating the `outer`-th traced face as the unbounded one.
pub fn faces_with_outer(
    graph: &Graph,
    rotation: &RotationSystem,
    outer: usize,
) -> Result<Vec<Cycle>, EmbeddingError> {
    let traced = rotation.trace_faces(graph);
    let (f, e, v) = (traced.len(), graph.num_edges(), graph.num_vertices());
    if f + v != e + 2 {
        return Err(EmbeddingError::NotPlanar {
            faces: f,
            edges: e,
            vertices: v,
        });
    }
    let mut bounded: Vec<BitVec> = traced
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != outer % f)
        .map(|(_, (_, b))| b)
        .collect();
    bounded.sort_by_key(|b| b.ones().collect::<Vec<_>>());
    Ok(bounded
        .into_iter()
        .map(|b| Cycle::new(graph, b).expect("face boundaries are cycles"))
        .collect())
}

fn parse_dart(graph: &Graph, token: &str) -> Result<Dart, EmbeddingError> {
    let bad = || EmbeddingError::BadToken(token.to_string());
    let (id, end) = if let Some(id) = token.strip_suffix('+') {
        (id, 0)
    } else if let Some(id) = token
        .strip_suffix('-')
        .or_else(|| token.strip_suffix('\u{2212}'))
    {
        (id, 1)
    } else {
        return Err(bad());
    };
    let edge = graph.edge_index(id).ok_or_else(bad)?;
    Ok(Dart { edge, end })
}

fn dart_token(graph: &Graph, d: Dart) -> String {
    format!(
        "{}{}",
        graph.edge(d.edge).id,
        if d.end == 0 { '+' } else { '-' }
    )
}

/// Every rotation system of a graph with only trivalent or univalent
/// vertices: each trivalent vertex has two cyclic orders.
pub fn all_rotations(graph: &Graph) -> impl Iterator<Item = RotationSystem> + '_ {
    let base: Vec<Vec<Dart>> = (0..graph.num_vertices())
        .map(|v| {
            let mut darts = Vec::new();
            for &e in graph.incident(v) {
                let end = if darts.contains(&Dart { edge: e, end: 0 }) || graph.edge(e).ends[0] != v
                {
                    1
                } else {
                    0
                };
                darts.push(Dart { edge: e, end });
            }
            darts
        })
        .collect();
    let flippable: Vec<usize> = (0..base.len()).filter(|&v| base[v].len() == 3).collect();
    (0u64..1 << flippable.len()).map(move |mask| {
        let mut order = base.clone();
        for (bit, &v) in flippable.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                order[v].swap(1, 2);
            }
        }
        RotationSystem { order }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::cycle_rank;

    fn tokens(pairs: &[(&str, &[&str])]) -> HashMap<String, Vec<String>> {
        pairs
            .iter()
            .map(|(v, ts)| (v.to_string(), ts.iter().map(|t| t.to_string()).collect()))
            .collect()
    }

    #[test]
    fn theta_faces() {
        let g = fixtures::theta();
        let rot = RotationSystem::from_tokens(
            &g,
            &tokens(&[
                ("v1", &["f1+", "f2+", "f3+"]),
                ("v2", &["f3-", "f2-", "f1-"]),
            ]),
        )
        .unwrap();
        assert_eq!(rot.trace_faces(&g).len(), 3);
        let f = faces(&g, &rot).unwrap();
        let ids: Vec<_> = f.iter().map(|c| g.edge_ids(c.support())).collect();
        assert_eq!(ids, vec![vec!["f1", "f2"], vec!["f2", "f3"]]);
    }

    #[test]
    fn double_theta_faces_span() {
        let fx = fixtures::fixture("double-theta").unwrap();
        let rot = fx.rotation.as_ref().unwrap();
        assert_eq!(rot.trace_faces(&fx.graph).len(), 4);
        let f = faces(&fx.graph, rot).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(cycle_rank(&fx.graph, &f), 3);
    }

    #[test]
    fn dumbbell_faces_cancel_bridge() {
        let fx = fixtures::fixture("dumbbell").unwrap();
        let f = faces(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
        let ids: Vec<_> = f.iter().map(|c| fx.graph.edge_ids(c.support())).collect();
        assert_eq!(ids, vec![vec!["f1"], vec!["f3"]]);
    }

    #[test]
    fn nonplanar_g4_has_no_planar_rotation() {
        let g = fixtures::nonplanar_g4();
        let mut tried = 0;
        for rot in all_rotations(&g) {
            tried += 1;
            assert!(matches!(
                faces(&g, &rot),
                Err(EmbeddingError::NotPlanar { .. })
            ));
        }
        assert_eq!(tried, 64);
    }

    #[test]
    fn rejects_malformed_rotations() {
        let g = fixtures::theta();
        let err = RotationSystem::from_tokens(
            &g,
            &tokens(&[
                ("v1", &["f1+", "f2+", "f3-"]),
                ("v2", &["f3+", "f2-", "f1-"]),
            ]),
        );
        assert!(matches!(err, Err(EmbeddingError::WrongVertex(..))));
        let err = RotationSystem::from_tokens(&g, &tokens(&[("v1", &["f1+", "f2+", "f3+"])]));
        assert!(matches!(err, Err(EmbeddingError::MissingVertex(_))));
        let err = RotationSystem::from_tokens(
            &g,
            &tokens(&[
                ("v1", &["f1", "f2+", "f3+"]),
                ("v2", &["f3-", "f2-", "f1-"]),
            ]),
        );
        assert!(matches!(err, Err(EmbeddingError::BadToken(_))));
    }

    #[test]
    fn token_roundtrip() {
        let fx = fixtures::fixture("ladder-4").unwrap();
        let rot = fx.rotation.unwrap();
        let map: HashMap<_, _> = rot.to_tokens(&fx.graph).into_iter().collect();
        assert_eq!(RotationSystem::from_tokens(&fx.graph, &map).unwrap(), rot);
    }
}
