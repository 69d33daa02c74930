//! Closed-form Verlinde dimension and the cut-and-sum factorization checks.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Cut, Graph, GraphError};
use crate::weights::{self, WeightError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerlindeError {
    #[error("label {label} is outside 0..={level}")]
    LabelOutOfRange { label: u32, level: u32 },
    #[error("2g - 2 + n must be positive (g = {genus}, n = {legs})")]
    Unstable { genus: usize, legs: usize },
    #[error("float value {raw} is not within tolerance of an integer; enumerate instead")]
    Tolerance { raw: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Weights(#[from] WeightError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerlindeValue {
    pub dim: u64,
    pub raw: f64,
}

/// Evaluates the sine-sum formula for genus `g`, level `k` and doubled leg
/// labels, rounding with a relative guard of `1e-6`.
pub fn verlinde_dim(
    genus: usize,
    level: u32,
    labels: &[u32],
) -> Result<VerlindeValue, VerlindeError> {
    if let Some(&label) = labels.iter().find(|&&a| a > level) {
        return Err(VerlindeError::LabelOutOfRange { label, level });
    }
    let power = 2 * genus as i32 - 2 + labels.len() as i32;
    if power <= 0 {
        return Err(VerlindeError::Unstable {
            genus,
            legs: labels.len(),
        });
    }
    let kk = f64::from(level + 2);
    let sum: f64 = (1..=level + 1)
        .map(|l| {
            let l = f64::from(l);
            let num: f64 = labels
                .iter()
                .map(|&a| ((f64::from(a) + 1.0) * l * PI / kk).sin())
                .product();
            num / (l * PI / kk).sin().powi(power)
        })
        .sum();
    let raw = (kk / 2.0).powi(genus as i32 - 1) * sum;
    let rounded = raw.round();
    if rounded < 0.0 || (raw - rounded).abs() >= 1e-6 * rounded.max(1.0) {
        return Err(VerlindeError::Tolerance { raw });
    }
    Ok(VerlindeValue {
        dim: rounded as u64,
        raw,
    })
}

/// Dimension for a graph, with the genus read off the graph itself.
pub fn verlinde_for_graph(
    graph: &Graph,
    level: u32,
    labels: &[u32],
) -> Result<VerlindeValue, VerlindeError> {
    verlinde_dim(graph.genus(), level, labels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub edge: String,
    pub separating: bool,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

/// Counts weights before and after cutting `edge`, summing the new leg
/// label over `0..=k` (a product over the two pieces for a separating edge).
pub fn check_factorization(
    graph: &Graph,
    edge: usize,
    level: u32,
    labels: &[u32],
) -> Result<FactorizationReport, VerlindeError> {
    let lhs = weights::count(graph, level, labels)?;
    let (separating, rhs) = match graph.cut_edge(edge)? {
        Cut::NonSeparating { graph: cut, .. } => {
            let mut rhs = 0;
            for a in 0..=level {
                let mut l = labels.to_vec();
                l.extend([a, a]);
                rhs += weights::count(&cut, level, &l)?;
            }
            (false, rhs)
        }
        Cut::Separating { pieces } => {
            let mut rhs = 0;
            for a in 0..=level {
                let mut product = 1;
                for piece in &pieces {
                    let mut l: Vec<u32> = piece.original_legs.iter().map(|&p| labels[p]).collect();
                    l.push(a);
                    product *= weights::count(&piece.graph, level, &l)?;
                }
                rhs += product;
            }
            (true, rhs)
        }
    };
    Ok(FactorizationReport {
        edge: graph.edge(edge).id.clone(),
        separating,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_values() {
        assert_eq!(verlinde_dim(2, 1, &[]).unwrap().dim, 4);
        assert_eq!(verlinde_dim(2, 0, &[]).unwrap().dim, 1);
        assert_eq!(verlinde_dim(4, 4, &[]).unwrap().dim, 3611);
        // a pair of pants carries one weight exactly when admissible
        assert_eq!(verlinde_dim(0, 3, &[1, 1, 2]).unwrap().dim, 1);
        assert_eq!(verlinde_dim(0, 3, &[3, 3, 2]).unwrap().dim, 0);
        assert_eq!(verlinde_dim(0, 3, &[1, 1, 1]).unwrap().dim, 0);
    }

    #[test]
    fn agrees_with_enumeration() {
        for name in ["theta", "dumbbell", "double-theta", "ladder-4"] {
            let g = fixtures::fixture(name).unwrap().graph;
            for k in 0..=8 {
                let v = verlinde_for_graph(&g, k, &[]).unwrap();
                assert_eq!(v.dim, weights::count(&g, k, &[]).unwrap(), "{name} k={k}");
            }
        }
    }

    #[test]
    fn label_permutation_and_odd_sum() {
        let a = verlinde_dim(1, 5, &[1, 2, 3]).unwrap().dim;
        let b = verlinde_dim(1, 5, &[3, 1, 2]).unwrap().dim;
        assert_eq!(a, b);
        assert_eq!(verlinde_dim(1, 5, &[1, 2, 2]).unwrap().dim, 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            verlinde_dim(1, 2, &[]),
            Err(VerlindeError::Unstable { .. })
        ));
        assert!(matches!(
            verlinde_dim(2, 2, &[3]),
            Err(VerlindeError::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn factorization_examples() {
        let theta = fixtures::theta();
        let r = check_factorization(&theta, 2, 2, &[]).unwrap();
        assert!(r.holds && !r.separating);
        assert_eq!(r.lhs, 10);

        let d = fixtures::dumbbell();
        let r = check_factorization(&d, 1, 3, &[]).unwrap();
        assert!(r.holds && r.separating);

        let dt = fixtures::double_theta();
        let r = check_factorization(&dt, 0, 4, &[]).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn factorization_with_legs() {
        // cut twice: the second cut sees the first cut's legs
        let g = fixtures::double_theta();
        let Cut::NonSeparating { graph, .. } = g.cut_edge(0).unwrap() else {
            unreachable!()
        };
        for a in 0..=4 {
            for e in 0..graph.num_edges() {
                if graph.is_leg(e) {
                    assert!(check_factorization(&graph, e, 4, &[a, a]).is_err());
                } else {
                    assert!(check_factorization(&graph, e, 4, &[a, a]).unwrap().holds);
                }
            }
        }
    }
}
