//! Twisted 1-cocycles `δ: Λ*/2Λ₀* → (Z/2)^{QCG_k}` and their checks.
//!
//! The twisted law is `δ_j(λ₁+λ₂) = δ_j(λ₁) + δ_{λ₁·j}(λ₂)`. A cocycle given
//! on a basis extends to the whole group by folding that law over the
//! basis decomposition.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{self, EmbeddingError, RotationSystem};
use crate::graph::{Cycle, Graph, GraphError};
use crate::lattice::{CycleSpace, LatticeError};
use crate::weights::{act_in_place, is_fixed, WeightSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("coefficient sum {sum} of basis cycle {basis} is odd at weight {weight:?}")]
    Integrality {
        basis: usize,
        sum: i64,
        weight: Vec<u8>,
    },
    #[error("external edge sum is odd at weight {0:?}")]
    OddExternalSum(Vec<u8>),
    #[error("{basis} basis cycles but {coeffs} coefficient vectors")]
    Shape { basis: usize, coeffs: usize },
    #[error("{0:?} is not an admissible weight of this table")]
    NotAWeight(Vec<u8>),
    #[error("cocycle was built for level {built}, asked at level {asked}")]
    LevelMismatch { built: u8, asked: u8 },
    #[error("genus {0} is too large for a tabulated cocycle (at most 5)")]
    GenusTooLarge(usize),
    #[error("external edge sums are not additive on the stabilizer of {0:?}; no cocycle satisfies the condition")]
    NoExtension(Vec<u8>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// A twisted 1-cocycle that can be evaluated at any cycle class.
pub trait TwistedCocycle: Sync {
    /// Cycles whose pairwise commutation relations are checked.
    fn generators(&self) -> &[Cycle];

    /// `δ_j(λ)` for an admissible weight `j` at level `k`.
    fn evaluate(&self, lambda: &Cycle, w: &[u8], level: u8) -> Result<bool, CocycleError>;

    /// `δ_j(λ)` for every class at once: bit `m` holds the value at
    /// `space.element(m)`.
    fn row(&self, space: &CycleSpace, w: &[u8], level: u8) -> Result<u64, CocycleError> {
        let mut out = 0;
        for m in 0..1u64 << space.dim() {
            if self.evaluate(&space.element(m), w, level)? {
                out |= 1 << m;
            }
        }
        Ok(out)
    }
}

/// Cocycle given by integer coefficient formulas `δ_j(λ_h) = Σ c_l j_l mod 2`
/// on a basis, extended by the twisted law in basis order.
#[derive(Clone, Debug)]
pub struct CocycleSpec {
    space: CycleSpace,
    coeffs: Vec<Vec<i64>>,
}

impl CocycleSpec {
    pub fn new(
        graph: &Graph,
        basis: Vec<Cycle>,
        coeffs: Vec<Vec<i64>>,
    ) -> Result<Self, CocycleError> {
        if basis.len() != coeffs.len() || coeffs.iter().any(|c| c.len() != graph.num_edges()) {
            return Err(CocycleError::Shape {
                basis: basis.len(),
                coeffs: coeffs.len(),
            });
        }
        Ok(CocycleSpec {
            space: CycleSpace::with_basis(graph, basis)?,
            coeffs,
        })
    }

    /// The cocycle `δ ≡ 0` on the spanning-tree basis.
    pub fn zero(graph: &Graph) -> Result<Self, CocycleError> {
        let basis = graph.cycle_basis()?;
        let coeffs = vec![vec![0; graph.num_edges()]; basis.len()];
        Self::new(graph, basis, coeffs)
    }

    pub fn space(&self) -> &CycleSpace {
        &self.space
    }

    pub fn coeffs(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    /// Copy with one coefficient changed.
    pub fn with_coeff(&self, basis: usize, edge: usize, value: i64) -> Self {
        let mut out = self.clone();
        out.coeffs[basis][edge] = value;
        out
    }

    /// Same cocycle data with the basis (and its formulas) permuted.
    pub fn permuted(&self, graph: &Graph, perm: &[usize]) -> Result<Self, CocycleError> {
        let basis = perm
            .iter()
            .map(|&h| self.space.basis()[h].clone())
            .collect();
        let coeffs = perm.iter().map(|&h| self.coeffs[h].clone()).collect();
        Self::new(graph, basis, coeffs)
    }

    /// `δ_j(λ_h)` with the integrality assertion.
    pub fn basis_value(&self, h: usize, w: &[u8]) -> Result<bool, CocycleError> {
        let sum: i64 = self.coeffs[h]
            .iter()
            .zip(w)
            .map(|(&c, &a)| c * i64::from(a))
            .sum();
        if sum % 2 != 0 {
            return Err(CocycleError::Integrality {
                basis: h,
                sum,
                weight: w.to_vec(),
            });
        }
        Ok((sum / 2).rem_euclid(2) == 1)
    }

    /// Twisted extension over a coordinate mask: for
    /// `λ = λ_{h₁} + … + λ_{h_m}` with `h₁ < … < h_m`,
    /// `δ_j(λ) = Σ_t δ_{(λ_{h_{t+1}} + … + λ_{h_m})·j}(λ_{h_t})`.
    pub fn evaluate_mask(&self, mask: u64, w: &[u8], level: u8) -> Result<bool, CocycleError> {
        let mut cur = w.to_vec();
        let mut acc = false;
        for h in (0..self.space.dim()).rev().filter(|h| mask >> h & 1 == 1) {
            acc ^= self.basis_value(h, &cur)?;
            crate::weights::act_in_place(&mut cur, self.space.basis()[h].support(), level);
        }
        Ok(acc)
    }

    pub fn to_json(&self, graph: &Graph) -> CocycleJson {
        CocycleJson {
            basis: self
                .space
                .basis()
                .iter()
                .map(|c| graph.edge_ids(c.support()))
                .collect(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    c.iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(l, &x)| (graph.edge(l).id.clone(), x))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(graph: &Graph, json: &CocycleJson) -> Result<Self, CocycleError> {
        let basis = json
            .basis
            .iter()
            .map(|ids| Cycle::from_ids(graph, ids))
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs = json
            .coeffs
            .iter()
            .map(|m| {
                let mut c = vec![0; graph.num_edges()];
                for (id, &x) in m {
                    let l = graph
                        .edge_index(id)
                        .ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
                    c[l] = x;
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>, CocycleError>>()?;
        Self::new(graph, basis, coeffs)
    }
}

impl TwistedCocycle for CocycleSpec {
    fn generators(&self) -> &[Cycle] {
        self.space.basis()
    }

    fn evaluate(&self, lambda: &Cycle, w: &[u8], level: u8) -> Result<bool, CocycleError> {
        let mask = self.space.coords(lambda)?;
        self.evaluate_mask(mask, w, level)
    }

    fn row(&self, space: &CycleSpace, w: &[u8], level: u8) -> Result<u64, CocycleError> {
        let mut out = 0;
        for m in 0..1u64 << space.dim() {
            let own = if space.basis() == self.space.basis() {
                m
            } else {
                self.space.coords(&space.element(m))?
            };
            if self.evaluate_mask(own, w, level)? {
                out |= 1 << m;
            }
        }
        Ok(out)
    }
}

/// Serialized form: basis cycles as edge-id lists, formulas as sparse maps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub basis: Vec<Vec<String>>,
    pub coeffs: Vec<BTreeMap<String, i64>>,
}

/// Pointwise sum (equivalently difference) of two cocycles.
pub struct Difference<'a> {
    pub a: &'a dyn TwistedCocycle,
    pub b: &'a dyn TwistedCocycle,
}

impl TwistedCocycle for Difference<'_> {
    fn generators(&self) -> &[Cycle] {
        self.a.generators()
    }

    fn evaluate(&self, lambda: &Cycle, w: &[u8], level: u8) -> Result<bool, CocycleError> {
        Ok(self.a.evaluate(lambda, w, level)? ^ self.b.evaluate(lambda, w, level)?)
    }

    fn row(&self, space: &CycleSpace, w: &[u8], level: u8) -> Result<u64, CocycleError> {
        Ok(self.a.row(space, w, level)? ^ self.b.row(space, w, level)?)
    }
}

/// Where a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Basis indices for a commutation failure, or the cycle coordinate
    /// mask (in the graph's spanning-tree basis) for a pointwise check.
    pub at: Vec<usize>,
    pub cycle: Vec<String>,
    pub weight: Vec<u8>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub checked: u64,
    pub violation: Option<Violation>,
}

impl CheckReport {
    fn from_first(checked: u64, violation: Option<Violation>) -> Self {
        CheckReport {
            ok: violation.is_none(),
            checked,
            violation,
        }
    }
}

/// Rows of `δ` at `j` and at every generator translate `λ_h·j`, in
/// spanning-tree coordinates.
struct Rows {
    at: u64,
    moved: Vec<u64>,
}

fn rows_at(
    delta: &dyn TwistedCocycle,
    space: &CycleSpace,
    gens: &[Cycle],
    j: &[u8],
    k: u8,
) -> Result<Rows, CocycleError> {
    let at = delta.row(space, j, k)?;
    let mut buf = j.to_vec();
    let mut moved = Vec::with_capacity(gens.len());
    for a in gens {
        act_in_place(&mut buf, a.support(), k);
        moved.push(delta.row(space, &buf, k)?);
        act_in_place(&mut buf, a.support(), k);
    }
    Ok(Rows { at, moved })
}

fn bit(row: u64, m: u64) -> bool {
    row >> m & 1 == 1
}

/// Scans the weights in order, reporting the first failure of `test`.
fn scan_rows(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
    test: impl Fn(&Rows, &[u64]) -> Option<(Vec<usize>, u64)> + Sync,
    what: &str,
) -> Result<CheckReport, CocycleError> {
    let space = CycleSpace::new(graph)?;
    let gens = delta.generators();
    let coords = gens
        .iter()
        .map(|c| space.coords(c))
        .collect::<Result<Vec<_>, _>>()?;
    let k = ws.level();
    let found = (0..ws.len()).into_par_iter().find_map_first(|i| {
        let j = ws.get(i);
        let (at, mask, reason) = match rows_at(delta, &space, gens, j, k) {
            Ok(rows) => {
                let (at, mask) = test(&rows, &coords)?;
                (at, mask, what.to_string())
            }
            Err(e) => (Vec::new(), 0, e.to_string()),
        };
        Some(Violation {
            at,
            cycle: graph.edge_ids(space.element(mask).support()),
            weight: j.to_vec(),
            reason,
        })
    });
    let checked = found.as_ref().map_or(ws.len() as u64, |v| {
        ws.position(&v.weight).unwrap() as u64 + 1
    });
    Ok(CheckReport::from_first(checked, found))
}

/// Checks `δ_j(λ_h) + δ_{λ_h·j}(λ_{h'}) = δ_{λ_{h'}·j}(λ_h) + δ_j(λ_{h'})` for
/// every generator pair `h ≤ h'` and weight, together with integrality of
/// every value involved. The first violation is the one at the lowest
/// weight index, then the lowest pair; `checked` counts weights.
pub fn check_cocycle(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
) -> Result<CheckReport, CocycleError> {
    scan_rows(
        graph,
        delta,
        ws,
        |r, c| {
            for h in 0..c.len() {
                for h2 in h..c.len() {
                    let lhs = bit(r.at, c[h]) ^ bit(r.moved[h], c[h2]);
                    let rhs = bit(r.moved[h2], c[h]) ^ bit(r.at, c[h2]);
                    if lhs != rhs {
                        return Some((vec![h, h2], c[h] ^ c[h2]));
                    }
                }
            }
            None
        },
        "commutation relation fails",
    )
}

/// Checks the twisted law `δ(λ₁+λ₂) = δ(λ₁) + λ₁·δ(λ₂)` for every generator
/// `λ₁` and every class `λ₂`. Since the generators span, this is the law
/// for all pairs.
pub fn check_cocycle_law(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
) -> Result<CheckReport, CocycleError> {
    let n = 1u64 << graph.genus();
    scan_rows(
        graph,
        delta,
        ws,
        |r, c| {
            for (h, &ch) in c.iter().enumerate() {
                for m in 0..n {
                    if bit(r.at, ch ^ m) != bit(r.at, ch) ^ bit(r.moved[h], m) {
                        return Some((vec![h, m as usize], ch ^ m));
                    }
                }
            }
            None
        },
        "twisted law fails",
    )
}

/// `Σ_{l ∈ Ex(λ)} j_l mod 2` at a weight fixed by `λ`.
pub fn external_sum(ex: &crate::gf2::BitVec, w: &[u8]) -> Result<bool, CocycleError> {
    let s: u32 = ex.ones().map(|l| u32::from(w[l])).sum();
    if !s.is_multiple_of(2) {
        return Err(CocycleError::OddExternalSum(w.to_vec()));
    }
    Ok((s / 2) % 2 == 1)
}

/// Runs `test(δ_j(λ), Ex(λ), j)` at every `(λ, j)` with `j` fixed by `λ`,
/// over all `2^g` classes in spanning-tree coordinates. The first failure
/// is the one at the lowest weight index, then the lowest mask.
fn over_fixed_points(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
    test: impl Fn(bool, &crate::gf2::BitVec, &[u8]) -> Result<bool, CocycleError> + Sync,
    what: &str,
) -> Result<CheckReport, CocycleError> {
    let space = CycleSpace::new(graph)?;
    let k = ws.level();
    let classes: Vec<(Cycle, crate::gf2::BitVec)> = (0..1u64 << space.dim())
        .map(|m| {
            let lambda = space.element(m);
            let (ex, _) = graph.external_internal_edges(&lambda);
            (lambda, ex)
        })
        .collect();
    let at_weight = |i: usize| -> (u64, Option<Violation>) {
        let j = ws.get(i);
        let fixed: Vec<usize> = (0..classes.len())
            .filter(|&m| m == 0 || (k.is_multiple_of(2) && is_fixed(j, classes[m].0.support(), k)))
            .collect();
        let violation = |m: usize, reason: String| Violation {
            at: vec![m],
            cycle: graph.edge_ids(classes[m].0.support()),
            weight: j.to_vec(),
            reason,
        };
        let row = match delta.row(&space, j, k) {
            Ok(r) => r,
            Err(e) => return (fixed.len() as u64, Some(violation(0, e.to_string()))),
        };
        for &m in &fixed {
            match test(row >> m & 1 == 1, &classes[m].1, j) {
                Ok(true) => {}
                Ok(false) => return (fixed.len() as u64, Some(violation(m, what.to_string()))),
                Err(e) => return (fixed.len() as u64, Some(violation(m, e.to_string()))),
            }
        }
        (fixed.len() as u64, None)
    };
    let (checked, first) = (0..ws.len())
        .into_par_iter()
        .map(|i| {
            let (c, v) = at_weight(i);
            (c, v.map(|v| (i, v)))
        })
        .reduce(
            || (0, None),
            |(c1, v1), (c2, v2)| {
                let first = match (v1, v2) {
                    (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
                    (a, b) => a.or(b),
                };
                (c1 + c2, first)
            },
        );
    Ok(CheckReport::from_first(checked, first.map(|(_, v)| v)))
}

/// The external edge condition: `δ_j(λ) = Σ_{Ex(λ)} j_l mod 2` whenever
/// `λ·j = j`, for every class `λ`.
pub fn check_external_edge_condition(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
) -> Result<CheckReport, CocycleError> {
    over_fixed_points(
        graph,
        delta,
        ws,
        |value, ex, j| Ok(value == external_sum(ex, j)?),
        "external edge condition fails",
    )
}

/// Whether `δ` vanishes at every `(λ, j)` with `λ·j = j`, which makes it a
/// coboundary.
pub fn is_coboundary(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
) -> Result<CheckReport, CocycleError> {
    over_fixed_points(
        graph,
        delta,
        ws,
        |value, _, _| Ok(!value),
        "nonzero on a fixed point",
    )
}

/// Face construction for a planar embedding: on each bounded face `λ_h`,
/// `δ_j(λ_h) = Σ_{Ex(λ_h)} j_l + Σ_{In(λ_h)} 2 j_l`.
pub fn build_planar(graph: &Graph, rotation: &RotationSystem) -> Result<CocycleSpec, CocycleError> {
    build_planar_with_outer(graph, rotation, 0)
}

/// Face construction with another face chosen as the unbounded one.
pub fn build_planar_with_outer(
    graph: &Graph,
    rotation: &RotationSystem,
    outer: usize,
) -> Result<CocycleSpec, CocycleError> {
    let faces = embedding::faces_with_outer(graph, rotation, outer)?;
    let coeffs = faces
        .iter()
        .map(|face| {
            let (ex, inner) = graph.external_internal_edges(face);
            let mut c = vec![0; graph.num_edges()];
            for l in ex.ones() {
                c[l] = 1;
            }
            for l in inner.ones() {
                c[l] = 2;
            }
            c
        })
        .collect();
    CocycleSpec::new(graph, faces, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn planar(name: &str) -> (Graph, CocycleSpec) {
        let fx = fixtures::fixture(name).unwrap();
        let spec = build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
        (fx.graph, spec)
    }

    fn formula(graph: &Graph, spec: &CocycleSpec, h: usize) -> Vec<(String, i64)> {
        spec.coeffs()[h]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(l, &c)| (graph.edge(l).id.clone(), c))
            .collect()
    }

    #[test]
    fn ladder_formulas() {
        let (g, spec) = planar("ladder-5");
        let f = |pairs: &[(&str, i64)]| {
            pairs
                .iter()
                .map(|&(s, c)| (s.to_string(), c))
                .collect::<Vec<_>>()
        };
        assert_eq!(formula(&g, &spec, 0), f(&[("f3", 1), ("f4", 1)]));
        assert_eq!(formula(&g, &spec, 1), f(&[("f1", 2), ("f6", 1), ("f7", 1)]));
        assert_eq!(
            formula(&g, &spec, 2),
            f(&[("f3", 1), ("f4", 1), ("f9", 1), ("f10", 1)])
        );
        assert_eq!(formula(&g, &spec, 4), f(&[("f9", 1), ("f10", 1)]));
    }

    #[test]
    fn small_planar_formulas() {
        let (g, spec) = planar("dumbbell");
        assert_eq!(formula(&g, &spec, 0), vec![("f2".to_string(), 1)]);
        let (g, spec) = planar("theta");
        assert_eq!(formula(&g, &spec, 0), vec![("f3".to_string(), 2)]);
    }

    #[test]
    fn zero_cycle_evaluates_to_zero() {
        let (g, spec) = planar("double-theta");
        let ws = WeightSet::enumerate(&g, 4, &[]).unwrap();
        for j in ws.iter() {
            assert!(!spec.evaluate(&Cycle::zero(6), j, 4).unwrap());
        }
    }

    #[test]
    fn single_face_matches_external_sum() {
        let (g, spec) = planar("double-theta");
        let ws = WeightSet::enumerate(&g, 4, &[]).unwrap();
        for face in spec.space().basis() {
            let (ex, _) = g.external_internal_edges(face);
            for &i in &ws.fixed_points(face) {
                let j = ws.get(i);
                assert_eq!(
                    spec.evaluate(face, j, 4).unwrap(),
                    external_sum(&ex, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn planar_specs_pass_both_checks() {
        for name in ["theta", "dumbbell", "double-theta", "ladder-4"] {
            let (g, spec) = planar(name);
            for k in [0, 2, 4, 6] {
                let ws = WeightSet::enumerate(&g, k, &[]).unwrap();
                assert!(check_cocycle(&g, &spec, &ws).unwrap().ok, "{name} k={k}");
                assert!(
                    check_external_edge_condition(&g, &spec, &ws).unwrap().ok,
                    "{name} k={k}"
                );
            }
        }
    }

    #[test]
    fn full_law_and_order_independence() {
        for name in ["theta", "dumbbell", "double-theta"] {
            let (g, spec) = planar(name);
            let rev: Vec<usize> = (0..spec.space().dim()).rev().collect();
            let flipped = spec.permuted(&g, &rev).unwrap();
            for k in [2, 4, 6] {
                let ws = WeightSet::enumerate(&g, k, &[]).unwrap();
                assert!(check_cocycle_law(&g, &spec, &ws).unwrap().ok);
                let space = CycleSpace::new(&g).unwrap();
                for m in 0..1 << space.dim() {
                    let lam = space.element(m);
                    for j in ws.iter() {
                        assert_eq!(
                            spec.evaluate(&lam, j, k as u8).unwrap(),
                            flipped.evaluate(&lam, j, k as u8).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mutation_is_caught() {
        let (g, spec) = planar("theta");
        let ws = WeightSet::enumerate(&g, 2, &[]).unwrap();
        let bad = spec.with_coeff(0, 0, 1);
        let report = check_cocycle(&g, &bad, &ws).unwrap();
        assert!(!report.ok);
        assert!(report.violation.is_some());
    }

    #[test]
    fn zero_cocycle_cases() {
        let g = fixtures::double_theta();
        let zero = CocycleSpec::zero(&g).unwrap();
        let ws = WeightSet::enumerate(&g, 3, &[]).unwrap();
        assert!(check_external_edge_condition(&g, &zero, &ws).unwrap().ok);
        assert!(is_coboundary(&g, &zero, &ws).unwrap().ok);
        let ws = WeightSet::enumerate(&g, 2, &[]).unwrap();
        assert!(!check_external_edge_condition(&g, &zero, &ws).unwrap().ok);
    }

    #[test]
    fn planar_is_not_a_coboundary_but_differences_are() {
        let (g, spec) = planar("double-theta");
        let ws = WeightSet::enumerate(&g, 2, &[]).unwrap();
        assert!(!is_coboundary(&g, &spec, &ws).unwrap().ok);
        let flipped = spec.permuted(&g, &[2, 0, 1]).unwrap();
        let diff = Difference {
            a: &spec,
            b: &flipped,
        };
        assert!(is_coboundary(&g, &diff, &ws).unwrap().ok);
    }

    #[test]
    fn other_outer_faces_differ_by_coboundaries() {
        let fx = fixtures::fixture("ladder-4").unwrap();
        let rot = fx.rotation.as_ref().unwrap();
        let base = build_planar(&fx.graph, rot).unwrap();
        for k in [2, 4] {
            let ws = WeightSet::enumerate(&fx.graph, k, &[]).unwrap();
            for outer in 1..5 {
                let other = build_planar_with_outer(&fx.graph, rot, outer).unwrap();
                assert_ne!(other.coeffs(), base.coeffs());
                assert!(check_cocycle(&fx.graph, &other, &ws).unwrap().ok);
                assert!(
                    check_external_edge_condition(&fx.graph, &other, &ws)
                        .unwrap()
                        .ok
                );
                let diff = Difference {
                    a: &base,
                    b: &other,
                };
                assert!(
                    is_coboundary(&fx.graph, &diff, &ws).unwrap().ok,
                    "outer {outer} k={k}"
                );
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let (g, spec) = planar("ladder-4");
        let json = spec.to_json(&g);
        let text = serde_json::to_string(&json).unwrap();
        let back: CocycleJson = serde_json::from_str(&text).unwrap();
        let again = CocycleSpec::from_json(&g, &back).unwrap();
        assert_eq!(again.coeffs(), spec.coeffs());
    }
}
