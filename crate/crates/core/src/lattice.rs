//! The finite quotients `Λ₀/2Λ` (edge vectors modulo vertex stars) and
//! `Λ*/2Λ₀*` (the GF(2) cycle space), with their pairing.

use thiserror::Error;

use crate::gf2::{BitVec, Span};
use crate::graph::{Cycle, Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex relations have rank {got}, expected {expected}")]
    RelationRank { expected: usize, got: usize },
    #[error("vector has length {got}, graph has {expected} edges")]
    Length { expected: usize, got: usize },
    #[error("cycle is not in the span of the basis")]
    NotInSpan,
}

/// Class of an edge vector in `Λ₀/2Λ`.
#[derive(Clone, Debug)]
pub struct MuClass {
    /// The 0/1 lift it was built from.
    pub representative: BitVec,
    /// Canonical coset representative, zero on every relation pivot.
    pub reduced: BitVec,
}

impl PartialEq for MuClass {
    fn eq(&self, other: &Self) -> bool {
        self.reduced == other.reduced
    }
}

impl Eq for MuClass {}

/// `Λ₀/2Λ` for a closed trivalent graph.
#[derive(Clone, Debug)]
pub struct MuQuotient {
    num_edges: usize,
    relations: Span,
    /// Edge indices off the relation pivots; their unit vectors form a basis.
    free: Vec<usize>,
}

impl MuQuotient {
    pub fn new(graph: &Graph) -> Result<Self, LatticeError> {
        graph.require_closed()?;
        let e = graph.num_edges();
        let stars: Vec<BitVec> = (0..graph.num_vertices())
            .map(|v| {
                let mut s = BitVec::zeros(e);
                for &l in graph.incident(v) {
                    s.flip(l);
                }
                s
            })
            .collect();
        let relations = Span::from_generators(e, &stars);
        let expected = 2 * graph.genus() - 3;
        if relations.rank() != expected {
            return Err(LatticeError::RelationRank {
                expected,
                got: relations.rank(),
            });
        }
        let pivots: Vec<usize> = relations.pivots().collect();
        let free = (0..e).filter(|l| !pivots.contains(l)).collect();
        Ok(MuQuotient {
            num_edges: e,
            relations,
            free,
        })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn class(&self, lift: &BitVec) -> Result<MuClass, LatticeError> {
        if lift.len() != self.num_edges {
            return Err(LatticeError::Length {
                expected: self.num_edges,
                got: lift.len(),
            });
        }
        Ok(MuClass {
            representative: lift.clone(),
            reduced: self.relations.reduce(lift),
        })
    }

    /// Basis classes `e_l` for the edges off the pivots.
    pub fn basis(&self) -> Vec<MuClass> {
        self.free
            .iter()
            .map(|&l| self.class(&BitVec::unit(self.num_edges, l)).unwrap())
            .collect()
    }

    /// Coordinates of a class in [`MuQuotient::basis`].
    pub fn coords(&self, class: &MuClass) -> BitVec {
        BitVec::from_indices(
            self.dim(),
            self.free
                .iter()
                .enumerate()
                .filter(|(_, &l)| class.reduced.get(l))
                .map(|(i, _)| i),
        )
    }

    /// The canonical 0/1 lift of the element with the given coordinates.
    pub fn element(&self, mask: u64) -> BitVec {
        BitVec::from_indices(
            self.num_edges,
            self.free
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l),
        )
    }

    pub fn is_relation(&self, v: &BitVec) -> bool {
        self.relations.contains(v)
    }
}

/// `Λ*/2Λ₀* = H₁(Γ; Z/2)` with a fixed cycle basis.
#[derive(Clone, Debug)]
pub struct CycleSpace {
    basis: Vec<Cycle>,
    span: Span,
    num_edges: usize,
}

impl CycleSpace {
    /// Uses the spanning-tree basis of the graph.
    pub fn new(graph: &Graph) -> Result<Self, LatticeError> {
        Self::with_basis(graph, graph.cycle_basis()?)
    }

    /// Uses the given cycles, which must be a basis.
    pub fn with_basis(graph: &Graph, basis: Vec<Cycle>) -> Result<Self, LatticeError> {
        let e = graph.num_edges();
        let span = Span::from_generators(e, basis.iter().map(Cycle::support));
        if span.rank() != basis.len() || basis.len() != graph.genus() {
            return Err(LatticeError::NotInSpan);
        }
        Ok(CycleSpace {
            basis,
            span,
            num_edges: e,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Cycle] {
        &self.basis
    }

    /// Sum of the basis cycles selected by `mask`.
    pub fn element(&self, mask: u64) -> Cycle {
        crate::graph::combine(&self.basis, self.num_edges, mask)
    }

    /// Basis coordinates of a cycle as a bit mask.
    pub fn coords(&self, cycle: &Cycle) -> Result<u64, LatticeError> {
        self.span
            .express(cycle.support())
            .map(|c| c.to_mask())
            .ok_or(LatticeError::NotInSpan)
    }
}

/// `μ·λ mod 2`.
pub fn pairing(mu: &BitVec, lambda: &Cycle) -> bool {
    mu.dot(lambda.support())
}

/// `ω₂((μ₁,λ₁),(μ₂,λ₂)) = μ₁·λ₂ + λ₁·μ₂`.
pub fn symplectic_form(a: (&BitVec, &Cycle), b: (&BitVec, &Cycle)) -> bool {
    pairing(a.0, b.1) ^ pairing(b.0, a.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gf2;

    const ALL: [&str; 6] = [
        "theta",
        "dumbbell",
        "double-theta",
        "ladder-5",
        "nonplanar-g4",
        "nonplanar-g5",
    ];

    #[test]
    fn quotient_dimensions() {
        for name in ALL {
            let g = fixtures::fixture(name).unwrap().graph;
            let q = MuQuotient::new(&g).unwrap();
            assert_eq!(q.dim(), g.genus(), "{name}");
        }
    }

    #[test]
    fn theta_and_dumbbell_by_hand() {
        let t = MuQuotient::new(&fixtures::theta()).unwrap();
        assert!(t.is_relation(&BitVec::from_indices(3, [0, 1, 2])));
        assert_eq!(t.dim(), 2);

        let d = MuQuotient::new(&fixtures::dumbbell()).unwrap();
        assert!(d.is_relation(&BitVec::unit(3, 1)));
        let basis: Vec<_> = d
            .basis()
            .iter()
            .map(|c| c.representative.ones().collect::<Vec<_>>())
            .collect();
        assert_eq!(basis, vec![vec![0], vec![2]]);
    }

    #[test]
    fn classes_compare_modulo_relations() {
        let g = fixtures::double_theta();
        let q = MuQuotient::new(&g).unwrap();
        let star = BitVec::from_indices(6, [0, 1, 2]);
        let a = q.class(&BitVec::unit(6, 4)).unwrap();
        let b = q.class(&BitVec::unit(6, 4).xor(&star)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, q.class(&BitVec::unit(6, 5)).unwrap());
        for m in 0..8 {
            let v = q.element(m);
            assert_eq!(q.coords(&q.class(&v).unwrap()).to_mask(), m);
        }
    }

    #[test]
    fn pairing_is_well_defined_and_nondegenerate() {
        for name in ALL {
            let g = fixtures::fixture(name).unwrap().graph;
            let q = MuQuotient::new(&g).unwrap();
            let cs = CycleSpace::new(&g).unwrap();
            for v in 0..g.num_vertices() {
                let mut star = BitVec::zeros(g.num_edges());
                for &l in g.incident(v) {
                    star.flip(l);
                }
                assert!(cs.basis().iter().all(|c| !pairing(&star, c)));
            }
            // the pairing matrix between the two bases has full rank
            let rows: Vec<BitVec> = q
                .basis()
                .iter()
                .map(|m| {
                    BitVec::from_indices(
                        cs.dim(),
                        (0..cs.dim()).filter(|&h| pairing(&m.representative, &cs.basis()[h])),
                    )
                })
                .collect();
            assert_eq!(gf2::rank(cs.dim(), &rows), g.genus(), "{name}");
        }
    }

    #[test]
    fn dumbbell_pairings() {
        let g = fixtures::dumbbell();
        let f1 = Cycle::from_ids(&g, &["f1"]).unwrap();
        assert!(!pairing(&BitVec::unit(3, 1), &f1));
        assert!(pairing(&BitVec::unit(3, 0), &f1));
        assert!(!pairing(&BitVec::zeros(3), &f1));
        let zero = Cycle::zero(3);
        assert!(symplectic_form(
            (&BitVec::unit(3, 0), &zero),
            (&BitVec::zeros(3), &f1)
        ));
    }

    #[test]
    fn symplectic_form_is_alternating_bilinear() {
        let g = fixtures::theta();
        let cs = CycleSpace::new(&g).unwrap();
        let q = MuQuotient::new(&g).unwrap();
        let elems: Vec<(BitVec, Cycle)> = (0..4)
            .flat_map(|m| (0..4).map(move |l| (m, l)))
            .map(|(m, l)| (q.element(m), cs.element(l)))
            .collect();
        for a in &elems {
            assert!(!symplectic_form((&a.0, &a.1), (&a.0, &a.1)));
            for b in &elems {
                for c in &elems {
                    let bc = (b.0.xor(&c.0), b.1.add(&c.1));
                    assert_eq!(
                        symplectic_form((&a.0, &a.1), (&bc.0, &bc.1)),
                        symplectic_form((&a.0, &a.1), (&b.0, &b.1))
                            ^ symplectic_form((&a.0, &a.1), (&c.0, &c.1))
                    );
                }
            }
        }
    }

    #[test]
    fn cycle_coordinates_roundtrip() {
        let g = fixtures::nonplanar_g5();
        let cs = CycleSpace::new(&g).unwrap();
        for m in 0..32 {
            assert_eq!(cs.coords(&cs.element(m)).unwrap(), m);
        }
    }
}
