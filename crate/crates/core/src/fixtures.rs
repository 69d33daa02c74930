//! Bundled graphs.
//!
//! The planar fixtures come with a rotation system; the two non-planar ones
//! do not. Edge and vertex numbering of the non-planar graphs is a
//! reconstruction pinned by the cycle data their cocycles are written
//! against, so it may differ from other drawings by a relabeling.

use crate::embedding::{Dart, RotationSystem};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
    pub note: &'static str,
}

/// Names accepted by [`fixture`]; `ladder-<g>` takes any `g >= 2`.
pub const NAMES: &[&str] = &[
    "theta",
    "dumbbell",
    "double-theta",
    "ladder-<g>",
    "nonplanar-g4",
    "nonplanar-g5",
];

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::new(
        vertices.iter().copied(),
        edges
            .iter()
            .map(|&(id, a, b)| (id.to_string(), [a.to_string(), b.to_string()])),
        Vec::<String>::new(),
    )
    .expect("bundled fixture is valid")
}

/// Rotation from per-vertex lists of `(edge id, end)` pairs.
fn rotation(graph: &Graph, order: &[&[(&str, u8)]]) -> RotationSystem {
    let darts = order
        .iter()
        .map(|ring| {
            ring.iter()
                .map(|&(id, end)| Dart {
                    edge: graph.edge_index(id).expect("known edge"),
                    end,
                })
                .collect()
        })
        .collect();
    RotationSystem::new(graph, darts).expect("bundled rotation is valid")
}

/// Two vertices joined by three parallel edges (genus 2).
pub fn theta() -> Graph {
    build(
        &["v1", "v2"],
        &[("f1", "v1", "v2"), ("f2", "v1", "v2"), ("f3", "v1", "v2")],
    )
}

/// Loops `f1`, `f3` joined by the bridge `f2` (genus 2).
pub fn dumbbell() -> Graph {
    build(
        &["v1", "v2"],
        &[("f1", "v1", "v1"), ("f2", "v1", "v2"), ("f3", "v2", "v2")],
    )
}

/// Planar ladder of genus `g`: rungs `f1` (outer arc), `f2`, `f5`, ..., rails
/// `f3i` on the top and `f3i+1` on the bottom, closing arc `f(3g-3)`. Its
/// bounded faces are `f1+f2`, the squares, and `f(3g-4)+f(3g-3)`.
pub fn ladder(g: usize) -> (Graph, RotationSystem) {
    ladder_named(g, |top, i| format!("{}{}", if top { "x" } else { "y" }, i))
}

fn ladder_named(g: usize, name: impl Fn(bool, usize) -> String) -> (Graph, RotationSystem) {
    assert!(g >= 2, "ladder needs genus at least 2");
    let n = g - 1;
    let f = |i: usize| format!("f{i}");
    let mut vertices = Vec::new();
    for i in 1..=n {
        vertices.push(name(true, i));
        vertices.push(name(false, i));
    }
    let mut edges = vec![(f(1), [name(true, 1), name(false, 1)])];
    for i in 1..=n {
        edges.push((f(3 * i - 1), [name(true, i), name(false, i)]));
        if i < n {
            edges.push((f(3 * i), [name(true, i), name(true, i + 1)]));
            edges.push((f(3 * i + 1), [name(false, i), name(false, i + 1)]));
        }
    }
    edges.push((f(3 * g - 3), [name(true, n), name(false, n)]));
    edges.sort_by_key(|(id, _)| id[1..].parse::<usize>().unwrap());
    let graph = Graph::new(vertices, edges, Vec::<String>::new()).expect("ladder is valid");

    // Counter-clockwise orders with x_i at (i, 1), y_i at (i, 0); f1 bulges
    // left and the closing edge bulges right; x1 lists f1 first so the outer
    // face is traced first. No loops, so each edge meets a
    // vertex at a single end.
    let mut order = Vec::new();
    for i in 1..=n {
        let left_top = if i == 1 { f(1) } else { f(3 * i - 3) };
        let left_bot = if i == 1 { f(1) } else { f(3 * i - 2) };
        let right_top = if i == n { f(3 * g - 3) } else { f(3 * i) };
        let right_bot = if i == n { f(3 * g - 3) } else { f(3 * i + 1) };
        let rung = f(3 * i - 1);
        for (v, ring) in [
            (name(true, i), [left_top, rung.clone(), right_top]),
            (name(false, i), [right_bot, rung, left_bot]),
        ] {
            let vi = graph.vertex_index(&v).unwrap();
            order.push(
                ring.iter()
                    .map(|e| {
                        let edge = graph.edge_index(e).unwrap();
                        let end = u8::from(graph.edge(edge).ends[0] != vi);
                        Dart { edge, end }
                    })
                    .collect(),
            );
        }
    }
    let rot = RotationSystem::new(&graph, order).expect("ladder rotation is valid");
    (graph, rot)
}

/// The genus-3 ladder with vertices `v1..v4`: `v1`,`v2` joined by `f1`,`f2`;
/// `v3`,`v4` joined by `f5`,`f6`; `f3: v1-v3`; `f4: v2-v4`.
pub fn double_theta() -> Graph {
    double_theta_embedded().0
}

fn double_theta_embedded() -> (Graph, RotationSystem) {
    ladder_named(3, |top, i| format!("v{}", 2 * i - usize::from(top)))
}

/// Genus-4 bipartite graph on sides `a1..a3`, `b1..b3` (a K3,3).
pub fn nonplanar_g4() -> Graph {
    build(
        &["a1", "a2", "a3", "b1", "b2", "b3"],
        &[
            ("f1", "a3", "b2"),
            ("f2", "a2", "b3"),
            ("f3", "a2", "b2"),
            ("f4", "a2", "b1"),
            ("f5", "a1", "b2"),
            ("f6", "a1", "b1"),
            ("f7", "a3", "b1"),
            ("f8", "a1", "b3"),
            ("f9", "a3", "b3"),
        ],
    )
}

/// Genus-5 extension: `f1` is subdivided by `u`, `w` into the path
/// `b2 -f1- u -f12- w -f10- a3`, and `f11` doubles `f12`.
pub fn nonplanar_g5() -> Graph {
    build(
        &["a1", "a2", "a3", "b1", "b2", "b3", "u", "w"],
        &[
            ("f1", "u", "b2"),
            ("f2", "a2", "b3"),
            ("f3", "a2", "b2"),
            ("f4", "a2", "b1"),
            ("f5", "a1", "b2"),
            ("f6", "a1", "b1"),
            ("f7", "a3", "b1"),
            ("f8", "a1", "b3"),
            ("f9", "a3", "b3"),
            ("f10", "a3", "w"),
            ("f11", "u", "w"),
            ("f12", "u", "w"),
        ],
    )
}

/// Looks up a bundled fixture by name.
pub fn fixture(name: &str) -> Option<Fixture> {
    let planar = |name: &str, (graph, rot): (Graph, RotationSystem), note| Fixture {
        name: name.to_string(),
        graph,
        rotation: Some(rot),
        note,
    };
    let fx = match name {
        "theta" => {
            let g = theta();
            let rot = rotation(
                &g,
                &[
                    &[("f1", 0), ("f2", 0), ("f3", 0)],
                    &[("f3", 1), ("f2", 1), ("f1", 1)],
                ],
            );
            planar(name, (g, rot), "theta graph, genus 2")
        }
        "dumbbell" => {
            let g = dumbbell();
            let rot = rotation(
                &g,
                &[
                    &[("f1", 0), ("f1", 1), ("f2", 0)],
                    &[("f2", 1), ("f3", 0), ("f3", 1)],
                ],
            );
            planar(name, (g, rot), "two loops joined by a bridge, genus 2")
        }
        "double-theta" => planar(name, double_theta_embedded(), "genus-3 ladder on v1..v4"),
        "nonplanar-g4" => Fixture {
            name: name.to_string(),
            graph: nonplanar_g4(),
            rotation: None,
            note: "K3,3, genus 4; labeling reconstructed from its cycle basis",
        },
        "nonplanar-g5" => Fixture {
            name: name.to_string(),
            graph: nonplanar_g5(),
            rotation: None,
            note: "genus-4 K3,3 with f1 subdivided and a doubled edge, genus 5",
        },
        _ => {
            let g: usize = name.strip_prefix("ladder-")?.parse().ok()?;
            if g < 2 {
                return None;
            }
            planar(name, ladder(g), "planar ladder family")
        }
    };
    Some(fx)
}
