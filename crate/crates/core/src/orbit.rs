//! Cocycles tabulated orbit by orbit, for graphs where no coefficient
//! formula satisfies the external edge condition.
//!
//! Fix a representative `j₀` in every orbit of the cycle-space action and,
//! for each weight `j` of the orbit, the smallest mask `s(j)` carrying `j`
//! to `j₀`. With a functional `φ` on the stabilizer of `j₀`,
//!
//! `δ_j(λ) = φ(s(j) + λ + s(λ·j))`
//!
//! satisfies the twisted law identically. Taking `φ` to be the external edge
//! sum at `j₀` gives the external edge condition at `j₀`, and at the rest of
//! the orbit whenever those sums are invariant along it.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cocycle::{external_sum, CocycleError, TwistedCocycle};
use crate::graph::{Cycle, Graph};
use crate::lattice::CycleSpace;
use crate::weights::{act_cycle, WeightSet};

/// How the orbit representative is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representative {
    /// Lexicographically smallest weight of the orbit.
    Min,
    /// Lexicographically largest weight of the orbit.
    Max,
}

#[derive(Clone, Debug)]
pub struct OrbitCocycle {
    space: CycleSpace,
    weights: Arc<WeightSet>,
    rows: Vec<u32>,
}

impl OrbitCocycle {
    /// Tabulates `δ` over a weight table in the graph's spanning-tree basis.
    pub fn build(
        graph: &Graph,
        weights: Arc<WeightSet>,
        rep: Representative,
    ) -> Result<Self, CocycleError> {
        let space = CycleSpace::new(graph)?;
        let g = space.dim();
        if g > 5 {
            return Err(CocycleError::GenusTooLarge(g));
        }
        let n = 1usize << g;
        let k = weights.level();
        let supports: Vec<Vec<usize>> = space
            .basis()
            .iter()
            .map(|c| c.support().ones().collect())
            .collect();
        let external: Vec<Vec<usize>> = (0..n as u64)
            .map(|m| {
                graph
                    .external_internal_edges(&space.element(m))
                    .0
                    .ones()
                    .collect()
            })
            .collect();
        let ex_bits: Vec<crate::gf2::BitVec> = external
            .iter()
            .map(|ls| crate::gf2::BitVec::from_indices(graph.num_edges(), ls.iter().copied()))
            .collect();
        let packed = weights
            .key_width()
            .map(|bits| Packed::new(&supports, graph.num_edges(), bits, k));
        let rows = (0..weights.len())
            .into_par_iter()
            .map_init(
                || (Vec::new(), Vec::new(), Vec::new()),
                |(cur, best, to_best): &mut (Vec<u8>, Vec<u8>, Vec<usize>), i| {
                    match &packed {
                        Some(p) => p.walk(weights.key(i), rep, best, to_best),
                        None => walk_slices(weights.get(i), &supports, k, rep, cur, best, to_best),
                    }
                    // `to_best` is a coset of the stabilizer; values of φ on it
                    let a0 = to_best[0];
                    let mut phi = [None; 32];
                    for &a in to_best.iter() {
                        let x = a ^ a0;
                        phi[x] = Some(external_sum(&ex_bits[x], best)?);
                    }
                    for &a in to_best.iter() {
                        for &b in to_best.iter() {
                            let (x, y) = (a ^ a0, b ^ a0);
                            if phi[x ^ y] != Some(phi[x].unwrap() ^ phi[y].unwrap()) {
                                return Err(CocycleError::NoExtension(best.clone()));
                            }
                        }
                    }
                    let shift = |m: usize| to_best.iter().map(|&a| a ^ m).min().unwrap();
                    let s0 = shift(0);
                    let mut row = 0u32;
                    for lam in 0..n {
                        if phi[s0 ^ lam ^ shift(lam)].expect("lies in the stabilizer") {
                            row |= 1 << lam;
                        }
                    }
                    Ok(row)
                },
            )
            .collect::<Result<Vec<u32>, CocycleError>>()?;
        Ok(OrbitCocycle {
            space,
            weights,
            rows,
        })
    }

    /// Adds the coboundary of a pseudo-random `f: QCG_k → Z/2`:
    /// `δ'_j(λ) = δ_j(λ) + f(j) + f(λ·j)`.
    pub fn twisted(&self, seed: u64) -> Self {
        let n = 1usize << self.space.dim();
        let k = self.level();
        let f = |w: &[u8]| {
            let mut h = seed;
            for &a in w {
                h = splitmix(h ^ u64::from(a));
            }
            h & 1 == 1
        };
        let elems: Vec<Cycle> = (0..n as u64).map(|m| self.space.element(m)).collect();
        let rows = (0..self.weights.len())
            .into_par_iter()
            .map(|i| {
                let j = self.weights.get(i);
                let fj = f(j);
                let mut row = self.rows[i];
                for (m, lam) in elems.iter().enumerate() {
                    if fj ^ f(&act_cycle(j, lam, k)) {
                        row ^= 1 << m;
                    }
                }
                row
            })
            .collect();
        OrbitCocycle {
            space: self.space.clone(),
            weights: self.weights.clone(),
            rows,
        }
    }

    pub fn space(&self) -> &CycleSpace {
        &self.space
    }

    pub fn level(&self) -> u8 {
        self.weights.level()
    }

    fn lookup(&self, w: &[u8], level: u8) -> Result<u32, CocycleError> {
        if level != self.level() {
            return Err(CocycleError::LevelMismatch {
                built: self.level(),
                asked: level,
            });
        }
        let i = self
            .weights
            .position(w)
            .ok_or_else(|| CocycleError::NotAWeight(w.to_vec()))?;
        Ok(self.rows[i])
    }
}

/// Walks the orbit of `j` in Gray-code order, leaving the extreme weight in
/// `best` and every mask carrying `j` to it in `to_best`.
fn walk_slices(
    j: &[u8],
    supports: &[Vec<usize>],
    k: u8,
    rep: Representative,
    cur: &mut Vec<u8>,
    best: &mut Vec<u8>,
    to_best: &mut Vec<usize>,
) {
    cur.clear();
    cur.extend_from_slice(j);
    best.clear();
    best.extend_from_slice(j);
    to_best.clear();
    to_best.push(0);
    for t in 1..1usize << supports.len() {
        for &l in &supports[t.trailing_zeros() as usize] {
            cur[l] = k - cur[l];
        }
        let ord = cur.as_slice().cmp(best);
        if rep.prefers(ord) {
            best.copy_from_slice(cur);
            to_best.clear();
        }
        if rep.prefers(ord) || ord.is_eq() {
            to_best.push(t ^ (t >> 1));
        }
    }
}

/// The same walk on packed keys: acting on a cycle replaces every field
/// `v` under its mask by `k - v`, which never borrows across fields.
struct Packed {
    masks: Vec<u64>,
    fills: Vec<u64>,
    bits: u32,
    edges: usize,
}

impl Packed {
    fn new(supports: &[Vec<usize>], edges: usize, bits: u32, k: u8) -> Self {
        let field = |l: usize| bits * (edges - 1 - l) as u32;
        let ones = (1u64 << bits) - 1;
        let masks = supports
            .iter()
            .map(|s| s.iter().fold(0, |m, &l| m | ones << field(l)))
            .collect();
        let fills = supports
            .iter()
            .map(|s| s.iter().fold(0, |m, &l| m | u64::from(k) << field(l)))
            .collect();
        Packed {
            masks,
            fills,
            bits,
            edges,
        }
    }

    fn walk(&self, key: u64, rep: Representative, best: &mut Vec<u8>, to_best: &mut Vec<usize>) {
        let (mut cur, mut top) = (key, key);
        to_best.clear();
        to_best.push(0);
        for t in 1..1usize << self.masks.len() {
            let h = t.trailing_zeros() as usize;
            cur = (cur & !self.masks[h]) | (self.fills[h] - (cur & self.masks[h]));
            let ord = cur.cmp(&top);
            if rep.prefers(ord) {
                top = cur;
                to_best.clear();
            }
            if rep.prefers(ord) || ord.is_eq() {
                to_best.push(t ^ (t >> 1));
            }
        }
        let ones = (1u64 << self.bits) - 1;
        best.clear();
        best.extend(
            (0..self.edges)
                .rev()
                .map(|f| (top >> (self.bits * f as u32) & ones) as u8),
        );
    }
}

impl Representative {
    fn prefers(self, ord: std::cmp::Ordering) -> bool {
        match self {
            Representative::Min => ord.is_lt(),
            Representative::Max => ord.is_gt(),
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl TwistedCocycle for OrbitCocycle {
    fn generators(&self) -> &[Cycle] {
        self.space.basis()
    }

    fn evaluate(&self, lambda: &Cycle, w: &[u8], level: u8) -> Result<bool, CocycleError> {
        let m = self.space.coords(lambda)?;
        Ok(self.lookup(w, level)? >> m & 1 == 1)
    }

    fn row(&self, space: &CycleSpace, w: &[u8], level: u8) -> Result<u64, CocycleError> {
        let own = self.lookup(w, level)?;
        if space.basis() == self.space.basis() {
            return Ok(u64::from(own));
        }
        let mut out = 0;
        for m in 0..1u64 << space.dim() {
            if own >> self.space.coords(&space.element(m))? & 1 == 1 {
                out |= 1 << m;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{
        check_cocycle, check_cocycle_law, check_external_edge_condition, is_coboundary, Difference,
    };
    use crate::fixtures;

    fn built(g: &Graph, k: u32, rep: Representative) -> (Arc<WeightSet>, OrbitCocycle) {
        let ws = Arc::new(WeightSet::enumerate(g, k, &[]).unwrap());
        let d = OrbitCocycle::build(g, ws.clone(), rep).unwrap();
        (ws, d)
    }

    #[test]
    fn law_holds_by_construction() {
        for name in ["theta", "dumbbell", "double-theta", "nonplanar-g4"] {
            let g = fixtures::fixture(name).unwrap().graph;
            for k in [1, 2, 4] {
                let (ws, d) = built(&g, k, Representative::Min);
                assert!(check_cocycle_law(&g, &d, &ws).unwrap().ok, "{name} k={k}");
                assert!(check_cocycle(&g, &d, &ws).unwrap().ok, "{name} k={k}");
            }
        }
    }

    #[test]
    fn planar_orbit_cocycle_is_cohomologous_to_faces() {
        let fx = fixtures::fixture("double-theta").unwrap();
        let faces = crate::cocycle::build_planar(&fx.graph, fx.rotation.as_ref().unwrap()).unwrap();
        for k in [2, 4, 6] {
            let (ws, d) = built(&fx.graph, k, Representative::Min);
            assert!(
                check_external_edge_condition(&fx.graph, &d, &ws)
                    .unwrap()
                    .ok
            );
            let diff = Difference { a: &d, b: &faces };
            assert!(is_coboundary(&fx.graph, &diff, &ws).unwrap().ok, "k={k}");
        }
    }

    #[test]
    fn representative_choices_pass_the_condition() {
        let g = fixtures::nonplanar_g4();
        for k in [2, 4] {
            let (ws, lo) = built(&g, k, Representative::Min);
            let hi = OrbitCocycle::build(&g, ws.clone(), Representative::Max).unwrap();
            for d in [&lo, &hi] {
                assert!(check_external_edge_condition(&g, d, &ws).unwrap().ok);
            }
            let diff = Difference { a: &lo, b: &hi };
            assert!(is_coboundary(&g, &diff, &ws).unwrap().ok);
        }
    }

    #[test]
    fn twisting_adds_a_coboundary() {
        let g = fixtures::nonplanar_g4();
        let (ws, d) = built(&g, 4, Representative::Min);
        let t = d.twisted(7);
        assert!(ws
            .iter()
            .any(|j| d.row(d.space(), j, 4).unwrap() != t.row(t.space(), j, 4).unwrap()));
        assert!(check_cocycle_law(&g, &t, &ws).unwrap().ok);
        assert!(check_external_edge_condition(&g, &t, &ws).unwrap().ok);
        let diff = Difference { a: &d, b: &t };
        assert!(is_coboundary(&g, &diff, &ws).unwrap().ok);
    }

    #[test]
    fn packed_walk_matches_slice_walk() {
        let g = fixtures::nonplanar_g4();
        let ws = WeightSet::enumerate(&g, 6, &[]).unwrap();
        let space = CycleSpace::new(&g).unwrap();
        let supports: Vec<Vec<usize>> = space
            .basis()
            .iter()
            .map(|c| c.support().ones().collect())
            .collect();
        let packed = Packed::new(&supports, g.num_edges(), ws.key_width().unwrap(), 6);
        let (mut cur, mut b1, mut b2, mut t1, mut t2) = (vec![], vec![], vec![], vec![], vec![]);
        for rep in [Representative::Min, Representative::Max] {
            for i in 0..ws.len() {
                walk_slices(ws.get(i), &supports, 6, rep, &mut cur, &mut b1, &mut t1);
                packed.walk(ws.key(i), rep, &mut b2, &mut t2);
                assert_eq!((&b1, &t1), (&b2, &t2));
            }
        }
    }

    #[test]
    fn rejects_foreign_input() {
        let g = fixtures::theta();
        let (_, d) = built(&g, 2, Representative::Min);
        let f1f2 = Cycle::from_ids(&g, &["f1", "f2"]).unwrap();
        assert!(matches!(
            d.evaluate(&f1f2, &[0, 0, 0], 4),
            Err(CocycleError::LevelMismatch { .. })
        ));
        assert!(matches!(
            d.evaluate(&f1f2, &[1, 0, 0], 2),
            Err(CocycleError::NotAWeight(_))
        ));
    }
}
