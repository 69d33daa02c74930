//! Level-k admissible weights in doubled units, the cycle action on them and
//! the parity functional of a lattice vector.

use std::cmp::Ordering;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::BitVec;
use crate::graph::{Cycle, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("level {0} exceeds the supported maximum 255")]
    LevelTooLarge(u32),
    #[error("expected {expected} boundary labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("boundary label {label} is outside 0..={level}")]
    LabelOutOfRange { label: u32, level: u32 },
}

/// Quantum Clebsch-Gordan condition at one vertex, doubled units.
#[inline]
pub fn vertex_admissible(a: u8, b: u8, c: u8, level: u8) -> bool {
    let (a, b, c) = (u32::from(a), u32::from(b), u32::from(c));
    let s = a + b + c;
    s % 2 == 0 && s <= 2 * u32::from(level) && a <= b + c && b <= a + c && c <= a + b
}

/// Whether a full weight vector satisfies the condition at every trivalent
/// vertex and stays within `0..=level`.
pub fn is_admissible(graph: &Graph, level: u8, w: &[u8]) -> bool {
    w.len() == graph.num_edges()
        && w.iter().all(|&a| a <= level)
        && (0..graph.num_vertices())
            .filter(|&v| graph.is_trivalent_vertex(v))
            .all(|v| {
                let [x, y, z] = [0, 1, 2].map(|i| w[graph.incident(v)[i]]);
                vertex_admissible(x, y, z, level)
            })
}

/// `a_l -> k - a_l` on the cycle support.
pub fn act_cycle(w: &[u8], cycle: &Cycle, level: u8) -> Vec<u8> {
    let mut out = w.to_vec();
    act_in_place(&mut out, cycle.support(), level);
    out
}

pub fn act_in_place(w: &mut [u8], support: &BitVec, level: u8) {
    for l in support.ones() {
        w[l] = level - w[l];
    }
}

/// Fixed by the cycle: every support edge carries `k/2`.
pub fn is_fixed(w: &[u8], support: &BitVec, level: u8) -> bool {
    support
        .ones()
        .all(|l| 2 * u32::from(w[l]) == u32::from(level))
}

/// `2 j_mu mod 2` for a 0/1 lift `mu`: the parity of the weight sum over it.
pub fn parity_mu(w: &[u8], mu: &BitVec) -> bool {
    mu.ones().map(|l| u32::from(w[l])).sum::<u32>() % 2 == 1
}

/// The shift identity `(lambda.j)_mu = (k/2) mu.lambda + j_mu mod Z` in
/// doubled units.
pub fn shift_relation_check(w: &[u8], mu: &BitVec, cycle: &Cycle, level: u8) -> bool {
    let moved = act_cycle(w, cycle, level);
    let rhs = (u32::from(level) * mu.overlap(cycle.support()) as u32) % 2 == 1;
    parity_mu(&moved, mu) == (rhs ^ parity_mu(w, mu))
}

/// Backtracking plan: edges in assignment order with the vertex checks that
/// become decidable at each step.
struct Plan {
    level: u8,
    num_edges: usize,
    /// Leg edges and their fixed values.
    fixed: Vec<(usize, u8)>,
    /// Free edges in breadth-first order.
    order: Vec<usize>,
    /// `checks[p]`: vertex triples completed by assigning `order[p]`.
    checks: Vec<Vec<[usize; 3]>>,
    /// Triples completed by the legs alone.
    initial_checks: Vec<[usize; 3]>,
}

impl Plan {
    fn new(graph: &Graph, level: u32, labels: &[u32]) -> Result<Self, WeightError> {
        if level > 255 {
            return Err(WeightError::LevelTooLarge(level));
        }
        if labels.len() != graph.legs().len() {
            return Err(WeightError::LabelCount {
                expected: graph.legs().len(),
                got: labels.len(),
            });
        }
        for &label in labels {
            if label > level {
                return Err(WeightError::LabelOutOfRange { label, level });
            }
        }
        let fixed: Vec<(usize, u8)> = graph
            .legs()
            .iter()
            .zip(labels)
            .map(|(&e, &a)| (e, a as u8))
            .collect();
        let order: Vec<usize> = graph
            .bfs_edge_order()
            .into_iter()
            .filter(|e| !graph.is_leg(*e))
            .collect();
        let mut pos = vec![None; graph.num_edges()];
        for (p, &e) in order.iter().enumerate() {
            pos[e] = Some(p);
        }
        let mut checks = vec![Vec::new(); order.len()];
        let mut initial_checks = Vec::new();
        for v in 0..graph.num_vertices() {
            if !graph.is_trivalent_vertex(v) {
                continue;
            }
            let inc = graph.incident(v);
            let triple = [inc[0], inc[1], inc[2]];
            match triple.iter().filter_map(|&e| pos[e]).max() {
                Some(p) => checks[p].push(triple),
                None => initial_checks.push(triple),
            }
        }
        Ok(Plan {
            level: level as u8,
            num_edges: graph.num_edges(),
            fixed,
            order,
            checks,
            initial_checks,
        })
    }

    fn ok(&self, triples: &[[usize; 3]], vals: &[u8]) -> bool {
        triples
            .iter()
            .all(|t| vertex_admissible(vals[t[0]], vals[t[1]], vals[t[2]], self.level))
    }

    fn start(&self) -> Option<Vec<u8>> {
        let mut vals = vec![0; self.num_edges];
        for &(e, a) in &self.fixed {
            vals[e] = a;
        }
        self.ok(&self.initial_checks, &vals).then_some(vals)
    }

    /// Visits every admissible completion of positions `p..`.
    fn walk(&self, p: usize, vals: &mut [u8], visit: &mut impl FnMut(&[u8])) {
        if p == self.order.len() {
            visit(vals);
            return;
        }
        let e = self.order[p];
        for a in 0..=self.level {
            vals[e] = a;
            if self.ok(&self.checks[p], vals) {
                self.walk(p + 1, vals, visit);
            }
        }
        vals[e] = 0;
    }

    /// Valid partial assignments of the first `depth` positions, used as
    /// independent shards for parallel search.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u8>> {
        let Some(start) = self.start() else {
            return Vec::new();
        };
        let mut layer = vec![start];
        for p in 0..depth {
            let e = self.order[p];
            let mut next = Vec::new();
            for vals in layer {
                for a in 0..=self.level {
                    let mut v = vals.clone();
                    v[e] = a;
                    if self.ok(&self.checks[p], &v) {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    fn split_depth(&self) -> usize {
        let branching = usize::from(self.level) + 1;
        let mut depth = 0;
        let mut width = 1usize;
        while depth < self.order.len() && width < 512 {
            width = width.saturating_mul(branching);
            depth += 1;
        }
        depth
    }
}

/// All admissible weights of a graph at one level, in lexicographic order
/// of the edge-indexed value vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    level: u8,
    num_edges: usize,
    data: Vec<u8>,
    /// Order-preserving packed keys, present when a weight fits in 64 bits.
    keys: Vec<u64>,
}

fn key_width(level: u8, num_edges: usize) -> Option<u32> {
    let bits = (8 - level.leading_zeros()).max(1);
    (bits as usize * num_edges <= 64).then_some(bits)
}

fn pack(w: &[u8], bits: u32) -> u64 {
    w.iter().fold(0, |acc, &a| acc << bits | u64::from(a))
}

impl WeightSet {
    /// Enumerates `QCG_k` with the given leg labels (doubled, in leg order).
    pub fn enumerate(graph: &Graph, level: u32, labels: &[u32]) -> Result<Self, WeightError> {
        let plan = Plan::new(graph, level, labels)?;
        let e = plan.num_edges;
        let shards: Vec<Vec<u8>> = plan
            .prefixes(plan.split_depth())
            .into_par_iter()
            .map(|mut vals| {
                let mut out = Vec::new();
                plan.walk(plan.split_depth(), &mut vals, &mut |w| {
                    out.extend_from_slice(w)
                });
                out
            })
            .collect();
        let flat = shards.concat();
        let rows = flat.len() / e;
        let mut idx: Vec<u32> = (0..rows as u32).collect();
        let row = |i: u32| &flat[i as usize * e..(i as usize + 1) * e];
        idx.par_sort_unstable_by(|&a, &b| row(a).cmp(row(b)));
        let mut data = Vec::with_capacity(flat.len());
        for i in idx {
            data.extend_from_slice(row(i));
        }
        let keys = match key_width(plan.level, e) {
            Some(bits) => data.par_chunks(e.max(1)).map(|w| pack(w, bits)).collect(),
            None => Vec::new(),
        };
        Ok(WeightSet {
            level: plan.level,
            num_edges: e,
            data,
            keys,
        })
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Bits per edge of the packed keys (edge 0 in the highest field), if
    /// weights are packed.
    pub fn key_width(&self) -> Option<u32> {
        (!self.keys.is_empty()).then(|| key_width(self.level, self.num_edges).unwrap())
    }

    /// Packed key of the `i`-th weight; only meaningful with a key width.
    pub fn key(&self, i: usize) -> u64 {
        self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.num_edges
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.data[i * self.num_edges..(i + 1) * self.num_edges]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Position of a weight (binary search over the sorted table).
    pub fn position(&self, w: &[u8]) -> Option<usize> {
        if !self.keys.is_empty() {
            if w.len() != self.num_edges || w.iter().any(|&a| a > self.level) {
                return None;
            }
            let bits = key_width(self.level, self.num_edges).expect("keys imply a width");
            return self.keys.binary_search(&pack(w, bits)).ok();
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(w) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// `perm[i]` is the position of `lambda . w_i`.
    pub fn action_permutation(&self, cycle: &Cycle) -> Vec<u32> {
        (0..self.len())
            .into_par_iter()
            .map(|i| {
                let moved = act_cycle(self.get(i), cycle, self.level);
                self.position(&moved)
                    .expect("the action preserves admissibility") as u32
            })
            .collect()
    }

    /// Positions of the weights fixed by `cycle`, via the `k/2` criterion.
    pub fn fixed_points(&self, cycle: &Cycle) -> Vec<usize> {
        if self.level % 2 == 1 && !cycle.is_zero() {
            return Vec::new();
        }
        (0..self.len())
            .filter(|&i| is_fixed(self.get(i), cycle.support(), self.level))
            .collect()
    }

    /// Positions of the weights fixed by `cycle`, by applying the action.
    pub fn fixed_points_by_action(&self, cycle: &Cycle) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| act_cycle(self.get(i), cycle, self.level) == self.get(i))
            .collect()
    }
}

/// `|QCG_k|` without materializing the weights.
pub fn count(graph: &Graph, level: u32, labels: &[u32]) -> Result<u64, WeightError> {
    let plan = Plan::new(graph, level, labels)?;
    let depth = plan.split_depth();
    Ok(plan
        .prefixes(depth)
        .into_par_iter()
        .map(|mut vals| {
            let mut n = 0u64;
            plan.walk(depth, &mut vals, &mut |_| n += 1);
            n
        })
        .sum())
}
