//! The two bundled non-planar examples.
//!
//! Each carries the signed coefficient formulas usually written for it and
//! a cocycle that actually passes both checks. The formulas on the third and
//! fourth basis cycles have odd sums at some admissible weights, so they do
//! not define a `Z/2` value there; no integer coefficient formula on any
//! cycle basis of the genus-4 graph satisfies the external edge condition.
//! The working cocycle is therefore tabulated orbit by orbit.

use std::sync::Arc;

use crate::cocycle::{CocycleError, CocycleSpec};
use crate::fixtures;
use crate::graph::{Cycle, Graph};
use crate::orbit::{OrbitCocycle, Representative};
use crate::weights::WeightSet;

#[derive(Clone, Debug)]
pub struct BuiltinNonplanar {
    pub name: &'static str,
    pub graph: Graph,
    /// The coefficient formulas as usually stated, on their named basis.
    pub stated: CocycleSpec,
}

impl BuiltinNonplanar {
    /// The levels the example is meant for.
    pub fn valid_at(&self, level: u32) -> bool {
        level.is_multiple_of(4)
    }

    /// A cocycle on this graph satisfying the external edge condition at
    /// the table's level, if one exists.
    pub fn cocycle(&self, weights: Arc<WeightSet>) -> Result<OrbitCocycle, CocycleError> {
        OrbitCocycle::build(&self.graph, weights, Representative::Min)
    }
}

fn spec(graph: &Graph, basis: &[&[&str]], formulas: &[&[(&str, i64)]]) -> CocycleSpec {
    let basis = basis
        .iter()
        .map(|ids| Cycle::from_ids(graph, ids).expect("basis cycle of the fixture"))
        .collect();
    let coeffs = formulas
        .iter()
        .map(|f| {
            let mut c = vec![0; graph.num_edges()];
            for &(id, x) in *f {
                c[graph.edge_index(id).expect("edge of the fixture")] = x;
            }
            c
        })
        .collect();
    CocycleSpec::new(graph, basis, coeffs).expect("well-formed bundled spec")
}

const L1: &[&str] = &["f3", "f4", "f5", "f6"];
const L2: &[&str] = &["f6", "f7", "f8", "f9"];
const L4: &[&str] = &["f2", "f4", "f7", "f9"];
const D1: &[(&str, i64)] = &[("f1", 1), ("f2", 1), ("f7", 1), ("f8", -1)];
const D2: &[(&str, i64)] = &[("f1", -1), ("f2", -1), ("f4", 1), ("f5", 1)];
const D3: &[(&str, i64)] = &[
    ("f2", 1),
    ("f3", 1),
    ("f6", 1),
    ("f7", 1),
    ("f8", 1),
    ("f9", 1),
];
const D4: &[(&str, i64)] = &[
    ("f1", 1),
    ("f3", 1),
    ("f6", 1),
    ("f7", 1),
    ("f8", 1),
    ("f9", -1),
];

pub fn builtin_nonplanar_specs() -> Vec<BuiltinNonplanar> {
    let g4 = fixtures::nonplanar_g4();
    let stated4 = spec(
        &g4,
        &[L1, L2, &["f1", "f5", "f8", "f9"], L4],
        &[D1, D2, D3, D4],
    );
    let g5 = fixtures::nonplanar_g5();
    let stated5 = spec(
        &g5,
        &[
            L1,
            L2,
            &["f1", "f5", "f8", "f9", "f10", "f12"],
            L4,
            &["f11", "f12"],
        ],
        &[D1, D2, D3, D4, &[("f1", 1), ("f10", 1)]],
    );
    vec![
        BuiltinNonplanar {
            name: "nonplanar-g4",
            graph: g4,
            stated: stated4,
        },
        BuiltinNonplanar {
            name: "nonplanar-g5",
            graph: g5,
            stated: stated5,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{
        check_cocycle, check_external_edge_condition, is_coboundary, Difference, TwistedCocycle,
    };

    #[test]
    fn stated_formulas_as_written() {
        let b = &builtin_nonplanar_specs()[0];
        let g = &b.graph;
        let c2: Vec<(String, i64)> = b.stated.coeffs()[1]
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(l, &x)| (g.edge(l).id.clone(), x))
            .collect();
        let want: Vec<(String, i64)> = [("f1", -1), ("f2", -1), ("f4", 1), ("f5", 1)]
            .iter()
            .map(|&(s, x)| (s.to_string(), x))
            .collect();
        assert_eq!(c2, want);
        // a weight with ones on f1, f2, f7, f8 gives (1 + 1 + 1 - 1)/2 = 1
        let ws = WeightSet::enumerate(g, 4, &[]).unwrap();
        let ones = ["f1", "f2", "f7", "f8"].map(|id| g.edge_index(id).unwrap());
        let j = ws.iter().find(|j| ones.iter().all(|&l| j[l] == 1)).unwrap();
        assert!(b.stated.basis_value(0, j).unwrap());
    }

    #[test]
    fn stated_formulas_are_not_integral() {
        for b in builtin_nonplanar_specs() {
            let ws = WeightSet::enumerate(&b.graph, 4, &[]).unwrap();
            for h in [2, 3] {
                let odd = ws.iter().find(|j| b.stated.basis_value(h, j).is_err());
                assert!(odd.is_some(), "{} basis {h}", b.name);
            }
            let report = check_cocycle(&b.graph, &b.stated, &ws).unwrap();
            assert!(!report.ok);
            assert!(report.violation.unwrap().reason.contains("odd"));
        }
    }

    #[test]
    fn working_cocycles_pass_at_level_four() {
        for b in builtin_nonplanar_specs() {
            assert!(b.valid_at(4) && !b.valid_at(6));
            let ws = Arc::new(WeightSet::enumerate(&b.graph, 4, &[]).unwrap());
            let d = b.cocycle(ws.clone()).unwrap();
            assert_eq!(d.generators().len(), b.graph.genus());
            assert!(check_cocycle(&b.graph, &d, &ws).unwrap().ok);
            assert!(check_external_edge_condition(&b.graph, &d, &ws).unwrap().ok);
            let t = d.twisted(11);
            assert!(
                is_coboundary(&b.graph, &Difference { a: &d, b: &t }, &ws)
                    .unwrap()
                    .ok
            );
        }
    }
}
