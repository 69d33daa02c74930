//! The Z/4 Heisenberg extension of `Λ₀/2Λ ⊕ Λ*/2Λ₀*` and its action on
//! the weight space by signed permutation matrices.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cocycle::{CocycleError, TwistedCocycle};
use crate::gf2::BitVec;
use crate::graph::{Cycle, Graph};
use crate::lattice::{pairing, CycleSpace, LatticeError, MuQuotient};
use crate::weights::{act_cycle, is_fixed, parity_mu, WeightSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("element does not match the graph: {0}")]
    Shape(String),
    #[error("cannot parse element `{0}` (expected c=i^t;mu=ids;lambda=ids)")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// `(i^t, μ, λ)` with `μ` a 0/1 lift of a class in `Λ₀/2Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    /// Exponent of `i`, in `0..4`.
    pub central: u8,
    pub mu: BitVec,
    pub lambda: Cycle,
}

impl HeisenbergElement {
    pub fn identity(num_edges: usize) -> Self {
        HeisenbergElement {
            central: 0,
            mu: BitVec::zeros(num_edges),
            lambda: Cycle::zero(num_edges),
        }
    }

    pub fn new(central: u8, mu: BitVec, lambda: Cycle) -> Self {
        HeisenbergElement {
            central: central % 4,
            mu,
            lambda,
        }
    }
}

impl HeisenbergElement {
    /// Parses `c=i^t;mu=f1,f3;lambda=f1,f2`. A `mu` token that is not an
    /// edge id may be `e<n>`, the `n`-th basis class of `Λ₀/2Λ` (from 1).
    /// Missing fields default to the identity part.
    pub fn parse(graph: &Graph, text: &str) -> Result<Self, HeisenbergError> {
        let bad = || HeisenbergError::Parse(text.to_string());
        let mut out = HeisenbergElement::identity(graph.num_edges());
        let ids = |v: &str| -> Vec<String> {
            v.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        };
        for field in text.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "c" => {
                    let t = value.trim().strip_prefix("i^").ok_or_else(bad)?;
                    out.central = t.parse::<u8>().map_err(|_| bad())? % 4;
                }
                "mu" => {
                    let mut mu = BitVec::zeros(graph.num_edges());
                    for id in ids(value) {
                        if let Some(l) = graph.edge_index(&id) {
                            mu.flip(l);
                        } else {
                            let n: usize = id
                                .strip_prefix('e')
                                .and_then(|n| n.parse().ok())
                                .filter(|&n| n >= 1 && n <= graph.genus())
                                .ok_or_else(bad)?;
                            mu = mu.xor(&MuQuotient::new(graph)?.element(1 << (n - 1)));
                        }
                    }
                    out.mu = mu;
                }
                "lambda" => out.lambda = Cycle::from_ids(graph, &ids(value))?,
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }

    pub fn display(&self, graph: &Graph) -> String {
        format!(
            "c=i^{};mu={};lambda={}",
            self.central,
            graph.edge_ids(&self.mu).join(","),
            graph.edge_ids(self.lambda.support()).join(",")
        )
    }
}

/// All `4^g` elements `(1, μ, λ)`, `μ` major, in quotient basis order.
pub fn elements(graph: &Graph) -> Result<Vec<HeisenbergElement>, HeisenbergError> {
    let q = MuQuotient::new(graph)?;
    let space = CycleSpace::new(graph)?;
    let n = 1u64 << graph.genus();
    Ok((0..n)
        .flat_map(|m| (0..n).map(move |l| (m, l)))
        .map(|(m, l)| HeisenbergElement::new(0, q.element(m), space.element(l)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub pairs: u64,
    pub failures: u64,
    /// First failing pair and what failed.
    pub first_failure: Option<(String, String, String)>,
}

impl HomomorphismReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// For each index pair `(a, b)`: `ρ(ab) = ρ(a)ρ(b)`, the group commutator
/// `[a,b] = (−1)^{ω₂(a,b)}`, and `ρ(a)ρ(b) = ρ([a,b]) ρ(b)ρ(a)` with the
/// central `−1` acting by `(−1)^k`.
pub fn check_homomorphism(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
    elems: &[HeisenbergElement],
    pairs: &[(usize, usize)],
) -> Result<HomomorphismReport, HeisenbergError> {
    let mats = elems
        .iter()
        .map(|e| represent(e, delta, ws))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = HomomorphismReport {
        pairs: 0,
        failures: 0,
        first_failure: None,
    };
    for &(ia, ib) in pairs {
        let (a, b) = (&elems[ia], &elems[ib]);
        let ab = mats[ia].mul(&mats[ib]);
        let ba = mats[ib].mul(&mats[ia]);
        let omega = crate::lattice::symplectic_form((&a.mu, &a.lambda), (&b.mu, &b.lambda));
        let central = commutator(a, b);
        let group_ok = central.central == if omega { 2 } else { 0 }
            && central.lambda.is_zero()
            && MuQuotient::new(graph)?.is_relation(&central.mu);
        let shift = ((u32::from(central.central) * u32::from(ws.level())) % 4) as u8;
        let scalar_ok = ab.row == ba.row
            && ab
                .phase
                .iter()
                .zip(&ba.phase)
                .all(|(&x, &y)| (y + shift) % 4 == x);
        let what = if represent(&multiply(a, b), delta, ws)? != ab {
            Some("rho(ab) != rho(a) rho(b)")
        } else if !group_ok {
            Some("group commutator is not the symplectic sign")
        } else if !scalar_ok {
            Some("matrix commutator is not rho of the group commutator")
        } else {
            None
        };
        report.pairs += 1;
        if let Some(what) = what {
            report.failures += 1;
            report
                .first_failure
                .get_or_insert_with(|| (a.display(graph), b.display(graph), what.to_string()));
        }
    }
    Ok(report)
}

/// `(c₁,μ₁,λ₁)(c₂,μ₂,λ₂) = (c₁c₂(−1)^{λ₂·μ₁}, μ₁+μ₂, λ₁+λ₂)`.
pub fn multiply(a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
    let sign = if pairing(&a.mu, &b.lambda) { 2 } else { 0 };
    HeisenbergElement::new(
        a.central + b.central + sign,
        a.mu.xor(&b.mu),
        a.lambda.add(&b.lambda),
    )
}

pub fn inverse(a: &HeisenbergElement) -> HeisenbergElement {
    let sign = if pairing(&a.mu, &a.lambda) { 2 } else { 0 };
    HeisenbergElement::new(4 - a.central + sign, a.mu.clone(), a.lambda.clone())
}

/// `aba⁻¹b⁻¹`, which is central.
pub fn commutator(a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
    multiply(&multiply(a, b), &multiply(&inverse(a), &inverse(b)))
}

/// Equality with `μ` compared modulo the vertex relations.
pub fn same_element(q: &MuQuotient, a: &HeisenbergElement, b: &HeisenbergElement) -> bool {
    a.central == b.central && a.lambda == b.lambda && q.class(&a.mu).ok() == q.class(&b.mu).ok()
}

/// Signed permutation matrix with entries in `{±1, ±i}`: column `j` has a
/// single entry `i^{phase[j]}` in row `row[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub row: Vec<u32>,
    pub phase: Vec<u8>,
}

impl RepMatrix {
    pub fn identity(dim: usize) -> Self {
        RepMatrix {
            row: (0..dim as u32).collect(),
            phase: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.row.len()
    }

    /// `self · other`.
    pub fn mul(&self, other: &RepMatrix) -> RepMatrix {
        let (row, phase) = (0..other.dim())
            .map(|j| {
                let mid = other.row[j] as usize;
                (self.row[mid], (self.phase[mid] + other.phase[j]) % 4)
            })
            .unzip();
        RepMatrix { row, phase }
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.dim()];
        self.row
            .iter()
            .all(|&r| !std::mem::replace(&mut seen[r as usize], true))
    }

    /// Trace as a Gaussian integer `(re, im)`.
    pub fn trace(&self) -> (i64, i64) {
        let mut t = (0, 0);
        for (j, (&r, &p)) in self.row.iter().zip(&self.phase).enumerate() {
            if r as usize == j {
                add_phase(&mut t, p);
            }
        }
        t
    }

    /// Sparse `(row, col, i-exponent)` triplets.
    pub fn triplets(&self) -> Vec<(u32, u32, u8)> {
        let mut out: Vec<_> = (0..self.dim())
            .map(|j| (self.row[j], j as u32, self.phase[j]))
            .collect();
        out.sort_unstable();
        out
    }
}

fn add_phase(t: &mut (i64, i64), phase: u8) {
    match phase % 4 {
        0 => t.0 += 1,
        1 => t.1 += 1,
        2 => t.0 -= 1,
        _ => t.1 -= 1,
    }
}

/// Phase exponent of column `j`: `k t + 2(2j_μ + δ_j(λ))`.
fn column_phase(
    element: &HeisenbergElement,
    delta: &dyn TwistedCocycle,
    j: &[u8],
    level: u8,
) -> Result<u8, CocycleError> {
    let flips = u8::from(parity_mu(j, &element.mu))
        + u8::from(delta.evaluate(&element.lambda, j, level)?);
    Ok(((u32::from(level) * u32::from(element.central) + 2 * u32::from(flips)) % 4) as u8)
}

/// `ρ(c,μ,λ)|j⟩ = c^k (−1)^{2j_μ + δ_j(λ)} |λ·j⟩`.
pub fn represent(
    element: &HeisenbergElement,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
) -> Result<RepMatrix, HeisenbergError> {
    if element.mu.len() != ws.num_edges() {
        return Err(HeisenbergError::Shape(format!(
            "mu has length {}, weights have {} edges",
            element.mu.len(),
            ws.num_edges()
        )));
    }
    let k = ws.level();
    let cols: Vec<(u32, u8)> = (0..ws.len())
        .into_par_iter()
        .map(|i| {
            let j = ws.get(i);
            let target = ws
                .position(&act_cycle(j, &element.lambda, k))
                .expect("the action preserves admissibility");
            Ok((target as u32, column_phase(element, delta, j, k)?))
        })
        .collect::<Result<_, CocycleError>>()?;
    let (row, phase) = cols.into_iter().unzip();
    Ok(RepMatrix { row, phase })
}

/// Trace summed over the fixed points of `λ` only.
pub fn trace(
    element: &HeisenbergElement,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
) -> Result<(i64, i64), HeisenbergError> {
    let k = ws.level();
    let phases: Vec<u8> = (0..ws.len())
        .into_par_iter()
        .filter(|&i| is_fixed(ws.get(i), element.lambda.support(), k))
        .map(|i| column_phase(element, delta, ws.get(i), k))
        .collect::<Result<_, _>>()?;
    let mut t = (0, 0);
    for p in phases {
        add_phase(&mut t, p);
    }
    Ok(t)
}

/// Closed-form character value at `(1, μ, λ)`: the dimension at the origin,
/// otherwise `(−1)^{(k/2)μ·λ}((k+2)/2)^{g−1}` for even `k` and `0` for odd `k`.
pub fn target_trace(genus: usize, level: u8, dim: u64, mu: &BitVec, lambda: &Cycle) -> i64 {
    if mu.is_zero() && lambda.is_zero() {
        return dim as i64;
    }
    if level % 2 == 1 {
        return 0;
    }
    let magnitude = (i64::from(level) / 2 + 1).pow(genus as u32 - 1);
    let odd = (u64::from(level / 2) * mu.overlap(lambda.support()) as u64) % 2 == 1;
    if odd {
        -magnitude
    } else {
        magnitude
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub mu: Vec<String>,
    pub lambda: Vec<String>,
    pub trace: i64,
    pub target: i64,
    pub pass: bool,
}

/// Traces of `(1, μ, λ)` over all `4^g` classes, `μ` major, each side in
/// its quotient basis order.
pub fn character_table(
    graph: &Graph,
    delta: &dyn TwistedCocycle,
    ws: &WeightSet,
) -> Result<Vec<CharacterRow>, HeisenbergError> {
    let q = MuQuotient::new(graph)?;
    let space = CycleSpace::new(graph)?;
    let g = graph.genus();
    let k = ws.level();
    let mu_basis: Vec<BitVec> = (0..g).map(|i| q.element(1 << i)).collect();
    let n = 1u64 << g;
    // for every λ: per fixed point, the μ-parity bit mask and δ
    let per_lambda: Vec<Vec<(u64, bool)>> = (0..n)
        .map(|lm| {
            let lambda = space.element(lm);
            (0..ws.len())
                .into_par_iter()
                .filter(|&i| is_fixed(ws.get(i), lambda.support(), k))
                .map(|i| {
                    let j = ws.get(i);
                    let bits = mu_basis
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| parity_mu(j, m))
                        .fold(0u64, |acc, (b, _)| acc | 1 << b);
                    Ok((bits, delta.evaluate(&lambda, j, k)?))
                })
                .collect::<Result<Vec<_>, CocycleError>>()
        })
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity((n * n) as usize);
    for mm in 0..n {
        let mu = q.element(mm);
        for (lm, fixed) in per_lambda.iter().enumerate() {
            let lambda = space.element(lm as u64);
            let trace: i64 = fixed
                .iter()
                .map(|&(bits, d)| {
                    if ((bits & mm).count_ones() % 2 == 1) ^ d {
                        -1
                    } else {
                        1
                    }
                })
                .sum();
            let target = target_trace(g, k, ws.len() as u64, &mu, &lambda);
            rows.push(CharacterRow {
                mu: graph.edge_ids(&mu),
                lambda: graph.edge_ids(lambda.support()),
                trace,
                target,
                pass: trace == target,
            });
        }
    }
    Ok(rows)
}

/// How the cocycle-level comparison with the square-root extension is set up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QConvention {
    /// `τ₂(a,b) = i^{ω₄(s(a),s(b))}` and `q(a) = i^{x_a·y_a mod 2}`.
    Naive,
    /// `τ₂(a,b) = i^{−ω₄(s(a),s(b)) − ω₄(s(a)+s(b), s(a+b))}`, which accounts
    /// for changing the lift of `a+b`, and `q(a) = i^{x_a·y_a mod 4}`.
    Normalized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QReport {
    pub pairs: u64,
    pub failures: u64,
    /// First failing `(a, b)` as `(x_a, y_a, x_b, y_b)` coordinate masks.
    pub first_failure: Option<[u64; 4]>,
}

impl QReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `τ₁(a,b) τ₂(a,b)⁻¹ = q(a) q(a+b)⁻¹ q(b)` in `Z/4` for all pairs.
///
/// Elements are written in symplectic coordinates `a = (x, y) ∈ (Z/2)^{2g}`:
/// `y` are the coordinates of `λ` in the cycle basis `l_1..l_g` and
/// `x_h = μ·l_h`. The section lifts both to 0/1 integer vectors, and
/// `τ₁(a,b) = (−1)^{μ_a·λ_b} = (−1)^{x_a·y_b}`.
pub fn verify_q_reduction(
    graph: &Graph,
    convention: QConvention,
) -> Result<QReport, HeisenbergError> {
    let q = MuQuotient::new(graph)?;
    let space = CycleSpace::new(graph)?;
    let g = graph.genus();
    let n = 1u64 << g;
    // x-coordinates of every μ class
    let xs: Vec<u64> = (0..n)
        .map(|mm| {
            let mu = q.element(mm);
            (0..g)
                .filter(|&h| pairing(&mu, &space.basis()[h]))
                .fold(0, |acc, h| acc | 1 << h)
        })
        .collect();
    let mut all_x: Vec<u64> = xs.clone();
    all_x.sort_unstable();
    all_x.dedup();
    if all_x.len() != n as usize {
        return Err(HeisenbergError::Shape("pairing is degenerate".into()));
    }
    let dot = |a: u64, b: u64| i64::from((a & b).count_ones());
    // ω₄(u, v) = x_u·y_v − y_u·x_v on integer vectors given as 0/1 masks or sums
    let omega = |ux: &[i64], uy: &[i64], vx: &[i64], vy: &[i64]| -> i64 {
        (0..g).map(|h| ux[h] * vy[h] - uy[h] * vx[h]).sum()
    };
    let lift = |m: u64| -> Vec<i64> { (0..g).map(|h| i64::from((m >> h & 1) as u8)).collect() };
    let qexp = |x: u64, y: u64| match convention {
        QConvention::Naive => dot(x, y) % 2,
        QConvention::Normalized => dot(x, y) % 4,
    };
    let mut report = QReport {
        pairs: 0,
        failures: 0,
        first_failure: None,
    };
    for &xa in &xs {
        for ya in 0..n {
            for &xb in &xs {
                for yb in 0..n {
                    let tau1 = 2 * (dot(xa, yb) % 2);
                    let (sxa, sya, sxb, syb) = (lift(xa), lift(ya), lift(xb), lift(yb));
                    let tau2 = match convention {
                        QConvention::Naive => omega(&sxa, &sya, &sxb, &syb),
                        QConvention::Normalized => {
                            let sum_x: Vec<i64> =
                                sxa.iter().zip(&sxb).map(|(a, b)| a + b).collect();
                            let sum_y: Vec<i64> =
                                sya.iter().zip(&syb).map(|(a, b)| a + b).collect();
                            let (rx, ry) = (lift(xa ^ xb), lift(ya ^ yb));
                            -(omega(&sxa, &sya, &sxb, &syb) + omega(&sum_x, &sum_y, &rx, &ry))
                        }
                    };
                    let lhs = tau1 - tau2;
                    let rhs = qexp(xa, ya) - qexp(xa ^ xb, ya ^ yb) + qexp(xb, yb);
                    report.pairs += 1;
                    if (lhs - rhs).rem_euclid(4) != 0 {
                        report.failures += 1;
                        report.first_failure.get_or_insert([xa, ya, xb, yb]);
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{build_planar, CocycleSpec};
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn elements(graph: &Graph) -> Vec<HeisenbergElement> {
        let q = MuQuotient::new(graph).unwrap();
        let space = CycleSpace::new(graph).unwrap();
        let n = 1u64 << graph.genus();
        let mut out = Vec::new();
        for t in 0..4 {
            for m in 0..n {
                for l in 0..n {
                    out.push(HeisenbergElement::new(t, q.element(m), space.element(l)));
                }
            }
        }
        out
    }

    #[test]
    fn group_axioms_on_theta() {
        let g = fixtures::theta();
        let q = MuQuotient::new(&g).unwrap();
        let all = elements(&g);
        let id = HeisenbergElement::identity(3);
        for a in &all {
            assert!(same_element(&q, &multiply(a, &inverse(a)), &id));
            assert!(same_element(&q, &multiply(&id, a), a));
        }
    }

    #[test]
    fn associativity_random_genus_three() {
        let g = fixtures::double_theta();
        let all = elements(&g);
        let q = MuQuotient::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let [a, b, c] = [0; 3].map(|_| &all[rng.gen_range(0..all.len())]);
            let left = multiply(&multiply(a, b), c);
            let right = multiply(a, &multiply(b, c));
            assert!(same_element(&q, &left, &right));
        }
    }

    #[test]
    fn dumbbell_commutator() {
        let g = fixtures::dumbbell();
        let f1 = Cycle::from_ids(&g, &["f1"]).unwrap();
        let a = HeisenbergElement::new(0, BitVec::unit(3, 0), Cycle::zero(3));
        let b = HeisenbergElement::new(0, BitVec::zeros(3), f1);
        let c = commutator(&a, &b);
        assert_eq!(c.central, 2);
        assert!(c.mu.is_zero() && c.lambda.is_zero());
    }

    #[test]
    fn matrices_basic_shapes() {
        let fx = fixtures::fixture("theta").unwrap();
        let spec = build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
        let ws = WeightSet::enumerate(&fx.graph, 2, &[]).unwrap();
        let id = represent(&HeisenbergElement::identity(3), &spec, &ws).unwrap();
        assert_eq!(id, RepMatrix::identity(ws.len()));
        let mu = BitVec::unit(3, 0);
        let m = represent(
            &HeisenbergElement::new(0, mu.clone(), Cycle::zero(3)),
            &spec,
            &ws,
        )
        .unwrap();
        for (j, w) in ws.iter().enumerate() {
            assert_eq!(m.row[j] as usize, j);
            assert_eq!(m.phase[j], if parity_mu(w, &mu) { 2 } else { 0 });
        }
    }

    #[test]
    fn homomorphism_exhaustive_theta() {
        let fx = fixtures::fixture("theta").unwrap();
        let spec = build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
        let ws = WeightSet::enumerate(&fx.graph, 2, &[]).unwrap();
        let all: Vec<_> = elements(&fx.graph)
            .into_iter()
            .filter(|e| e.central == 0)
            .collect();
        assert_eq!(all.len(), 16);
        let mats: Vec<_> = all
            .iter()
            .map(|e| represent(e, &spec, &ws).unwrap())
            .collect();
        for (a, ma) in all.iter().zip(&mats) {
            assert!(ma.is_permutation());
            assert_eq!(
                ma.mul(&represent(&inverse(a), &spec, &ws).unwrap()),
                RepMatrix::identity(ws.len())
            );
            for (b, mb) in all.iter().zip(&mats) {
                assert_eq!(represent(&multiply(a, b), &spec, &ws).unwrap(), ma.mul(mb));
            }
        }
    }

    #[test]
    fn center_acts_by_i_to_the_k() {
        let fx = fixtures::fixture("dumbbell").unwrap();
        let spec = build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
        for k in 1..=4 {
            let ws = WeightSet::enumerate(&fx.graph, k, &[]).unwrap();
            let m = represent(
                &HeisenbergElement::new(1, BitVec::zeros(3), Cycle::zero(3)),
                &spec,
                &ws,
            )
            .unwrap();
            assert!(m.phase.iter().all(|&p| u32::from(p) == k % 4));
        }
    }

    #[test]
    fn traces_match_the_closed_form() {
        for name in ["theta", "dumbbell", "double-theta"] {
            let fx = fixtures::fixture(name).unwrap();
            let spec = build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
            for k in 0..=6 {
                let ws = WeightSet::enumerate(&fx.graph, k, &[]).unwrap();
                let table = character_table(&fx.graph, &spec, &ws).unwrap();
                assert_eq!(table.len(), 1 << (2 * fx.graph.genus()));
                assert!(table.iter().all(|r| r.pass), "{name} k={k}");
            }
        }
    }

    #[test]
    fn trace_agrees_with_matrix_and_table() {
        let fx = fixtures::fixture("double-theta").unwrap();
        let spec = build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
        let ws = WeightSet::enumerate(&fx.graph, 4, &[]).unwrap();
        for e in elements(&fx.graph).iter().step_by(7) {
            let direct = trace(e, &spec, &ws).unwrap();
            assert_eq!(direct, represent(e, &spec, &ws).unwrap().trace());
        }
    }

    #[test]
    fn zero_cocycle_fails_on_genus_three() {
        let g = fixtures::double_theta();
        let zero = CocycleSpec::zero(&g).unwrap();
        let ws = WeightSet::enumerate(&g, 2, &[]).unwrap();
        let lam = Cycle::from_ids(&g, &["f1", "f2"]).unwrap();
        let e = HeisenbergElement::new(0, BitVec::zeros(6), lam);
        assert_eq!(trace(&e, &zero, &ws).unwrap(), (8, 0));
    }

    #[test]
    fn homomorphism_report_on_genus_two() {
        for name in ["theta", "dumbbell"] {
            let fx = fixtures::fixture(name).unwrap();
            let spec = build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
            let all = super::elements(&fx.graph).unwrap();
            let pairs: Vec<_> = (0..16).flat_map(|a| (0..16).map(move |b| (a, b))).collect();
            for k in [1, 2, 3, 4] {
                let ws = WeightSet::enumerate(&fx.graph, k, &[]).unwrap();
                let r = check_homomorphism(&fx.graph, &spec, &ws, &all, &pairs).unwrap();
                assert_eq!(r.pairs, 256);
                assert!(r.ok(), "{name} k={k}: {r:?}");
            }
        }
    }

    /// `δ_j(λ) = [λ ≠ 0 and a₁ = 1]`, which breaks the twisted law.
    struct NotACocycle(Vec<Cycle>);

    impl TwistedCocycle for NotACocycle {
        fn generators(&self) -> &[Cycle] {
            &self.0
        }

        fn evaluate(&self, lambda: &Cycle, w: &[u8], _: u8) -> Result<bool, CocycleError> {
            Ok(!lambda.is_zero() && w[0] == 1)
        }
    }

    #[test]
    fn broken_cocycle_breaks_the_homomorphism() {
        let g = fixtures::theta();
        let bad = NotACocycle(g.cycle_basis().unwrap());
        let ws = WeightSet::enumerate(&g, 2, &[]).unwrap();
        assert!(!crate::cocycle::check_cocycle_law(&g, &bad, &ws).unwrap().ok);
        let all = super::elements(&g).unwrap();
        let pairs: Vec<_> = (0..16).flat_map(|a| (0..16).map(move |b| (a, b))).collect();
        let r = check_homomorphism(&g, &bad, &ws, &all, &pairs).unwrap();
        assert!(!r.ok());
    }

    #[test]
    fn parse_and_display() {
        let g = fixtures::double_theta();
        let e = HeisenbergElement::parse(&g, "c=i^3;mu=f2;lambda=f1,f2").unwrap();
        assert_eq!(e.central, 3);
        assert_eq!(e.display(&g), "c=i^3;mu=f2;lambda=f1,f2");
        assert_eq!(HeisenbergElement::parse(&g, &e.display(&g)).unwrap(), e);
        let q = MuQuotient::new(&g).unwrap();
        let e1 = HeisenbergElement::parse(&g, "mu=e1").unwrap();
        assert_eq!(e1.mu, q.element(1));
        assert!(HeisenbergElement::parse(&g, "lambda=f1").is_err());
        assert!(HeisenbergElement::parse(&g, "c=2").is_err());
        assert!(HeisenbergElement::parse(&g, "mu=e9").is_err());
    }

    #[test]
    fn q_reduction() {
        for name in ["theta", "dumbbell", "double-theta"] {
            let g = fixtures::fixture(name).unwrap().graph;
            let r = verify_q_reduction(&g, QConvention::Normalized).unwrap();
            assert!(r.ok(), "{name}: {r:?}");
            assert_eq!(r.pairs, 1 << (4 * g.genus()));
            assert!(!verify_q_reduction(&g, QConvention::Naive).unwrap().ok());
        }
    }
}
