//! Homomorphisms between groups in canonical form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

use super::FgAbGroup;
use crate::intlin::{self, IntMatrix};

/// A homomorphism given by an integer matrix on canonical generators
/// (free generators of the source first, then torsion generators).
///
/// Entries in torsion rows of the target are kept reduced modulo the
/// generator order, so equality of homomorphisms is matrix equality.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("matrix is {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    Shape {
        want_rows: usize,
        want_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error(
        "column {col} (torsion generator of order {order}) maps to an element not killed by {order}"
    )]
    TorsionViolation { col: usize, order: BigInt },
    #[error("composition mismatch: target {0} != source {1}")]
    ComposeMismatch(FgAbGroup, FgAbGroup),
}

impl GroupHom {
    /// Validates torsion-order compatibility and normalizes the matrix.
    pub fn new(
        source: FgAbGroup,
        target: FgAbGroup,
        matrix: IntMatrix,
    ) -> Result<GroupHom, HomError> {
        let want_rows = target.num_generators();
        let want_cols = source.num_generators();
        if matrix.rows() != want_rows || matrix.cols() != want_cols {
            return Err(HomError::Shape {
                want_rows,
                want_cols,
                got_rows: matrix.rows(),
                got_cols: matrix.cols(),
            });
        }
        let mut m = matrix;
        // reduce torsion rows mod the generator order
        for (ti, e) in target.torsion().iter().enumerate() {
            let i = target.rank() + ti;
            for j in 0..want_cols {
                let reduced = m.at(i, j).mod_floor(e);
                m.set(i, j, reduced);
            }
        }
        // a torsion generator of order d must land in the d-torsion
        for (tj, d) in source.torsion().iter().enumerate() {
            let j = source.rank() + tj;
            for i in 0..target.rank() {
                if !m.at(i, j).is_zero() {
                    return Err(HomError::TorsionViolation {
                        col: j,
                        order: d.clone(),
                    });
                }
            }
            for (ti, e) in target.torsion().iter().enumerate() {
                let i = target.rank() + ti;
                if !(d * m.at(i, j)).mod_floor(e).is_zero() {
                    return Err(HomError::TorsionViolation {
                        col: j,
                        order: d.clone(),
                    });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix: m,
        })
    }

    pub fn identity(g: &FgAbGroup) -> GroupHom {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.num_generators()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zero(target.num_generators(), source.num_generators()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// `other` after `self` (apply `self` first).
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, HomError> {
        if self.target != other.source {
            return Err(HomError::ComposeMismatch(
                self.target.clone(),
                other.source.clone(),
            ));
        }
        GroupHom::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    /// Pointwise sum of two parallel homomorphisms.
    pub fn add(&self, other: &GroupHom) -> Result<GroupHom, HomError> {
        assert_eq!(self.source, other.source, "source mismatch in sum");
        assert_eq!(self.target, other.target, "target mismatch in sum");
        let m = IntMatrix::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            self.matrix.at(i, j) + other.matrix.at(i, j)
        });
        GroupHom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn neg(&self) -> GroupHom {
        let m = IntMatrix::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            -self.matrix.at(i, j)
        });
        GroupHom::new(self.source.clone(), self.target.clone(), m)
            .expect("negation preserves validity")
    }

    /// The cokernel `target / image`.
    pub fn cokernel(&self) -> FgAbGroup {
        let rels = self.matrix.hstack(&self.target.relations_matrix());
        intlin::cokernel(&rels)
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Lattice of ambient vectors mapping into the zero class of the target.
    fn kernel_lattice(&self) -> IntMatrix {
        intlin::preimage_lattice(&self.matrix, &self.target.relations_matrix())
    }

    pub fn is_injective(&self) -> bool {
        let source_rels = self.source.relations_matrix();
        let p = self.kernel_lattice();
        (0..p.cols()).all(|j| intlin::lattice_contains(&source_rels, &p.column(j)))
    }

    /// The kernel as an abstract group.
    pub fn kernel(&self) -> FgAbGroup {
        // kernel = P / L_source where P is the preimage lattice; express the
        // source relations in a basis of P and take the quotient.
        let p = self.kernel_lattice();
        let source_rels = self.source.relations_matrix();
        let mut coords = Vec::with_capacity(source_rels.cols());
        for j in 0..source_rels.cols() {
            let x = intlin::solve(&p, &source_rels.column(j))
                .expect("source relations lie in the kernel lattice");
            coords.push(x);
        }
        let rels_in_p = IntMatrix::from_fn(p.cols(), coords.len(), |i, j| coords[j][i].clone());
        intlin::cokernel(&rels_in_p)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// Exact inverse of an isomorphism, or None.
    pub fn try_inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let n_target = self.target.num_generators();
        let n_source = self.source.num_generators();
        // solve F x = e_i modulo the target relations, one generator at a time
        let stacked = self.matrix.hstack(&self.target.relations_matrix());
        let mut cols = Vec::with_capacity(n_target);
        for i in 0..n_target {
            let mut e = vec![BigInt::zero(); n_target];
            e[i] = BigInt::from(1);
            let y = intlin::solve(&stacked, &e).expect("isomorphism is surjective");
            cols.push(y[..n_source].to_vec());
        }
        let m = IntMatrix::from_fn(n_source, n_target, |i, j| cols[j][i].clone());
        Some(
            GroupHom::new(self.target.clone(), self.source.clone(), m)
                .expect("inverse of an isomorphism is a homomorphism"),
        )
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, {:?})",
            self.source, self.target, self.matrix
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: i64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    #[test]
    fn torsion_violation_is_rejected() {
        // Z/2 -> Z cannot send the generator to 1
        let err = GroupHom::new(zmod(2), FgAbGroup::free(1), IntMatrix::from_rows(&[vec![1]]));
        assert!(matches!(err, Err(HomError::TorsionViolation { .. })));
        // Z/2 -> Z/4 must land in the 2-torsion
        let err = GroupHom::new(zmod(2), zmod(4), IntMatrix::from_rows(&[vec![1]]));
        assert!(err.is_err());
        let ok = GroupHom::new(zmod(2), zmod(4), IntMatrix::from_rows(&[vec![2]]));
        assert!(ok.is_ok());
    }

    #[test]
    fn normalization_reduces_torsion_rows() {
        let f = GroupHom::new(zmod(4), zmod(4), IntMatrix::from_rows(&[vec![7]])).unwrap();
        assert_eq!(f.matrix().at(0, 0), &BigInt::from(3));
        let g = GroupHom::new(zmod(4), zmod(4), IntMatrix::from_rows(&[vec![-1]])).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn composition_applies_left_then_right() {
        let double = GroupHom::new(
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        let triple = GroupHom::new(
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::from_rows(&[vec![3]]),
        )
        .unwrap();
        let six = double.then(&triple).unwrap();
        assert_eq!(six.matrix().at(0, 0), &BigInt::from(6));
    }

    #[test]
    fn surjectivity_and_injectivity() {
        let double = GroupHom::new(
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        assert!(double.is_injective());
        assert!(!double.is_surjective());
        assert_eq!(double.cokernel(), zmod(2));

        let triple_mod4 = GroupHom::new(zmod(4), zmod(4), IntMatrix::from_rows(&[vec![3]])).unwrap();
        assert!(triple_mod4.is_isomorphism());

        let double_mod4 = GroupHom::new(zmod(4), zmod(4), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(!double_mod4.is_injective());
        assert_eq!(double_mod4.kernel(), zmod(2));
    }

    #[test]
    fn inverse_of_automorphism() {
        let f = GroupHom::new(zmod(5), zmod(5), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let inv = f.try_inverse().unwrap();
        assert_eq!(f.then(&inv).unwrap(), GroupHom::identity(&zmod(5)));
        assert_eq!(inv.then(&f).unwrap(), GroupHom::identity(&zmod(5)));
        // 3 * 2 = 6 = 1 mod 5
        assert_eq!(inv.matrix().at(0, 0), &BigInt::from(3));
    }

    #[test]
    fn inverse_on_mixed_group() {
        // automorphism of Z^2 + Z/3: unimodular free block, unit on torsion
        let g = FgAbGroup::new(2, vec![BigInt::from(3)]);
        let f = GroupHom::new(
            g.clone(),
            g.clone(),
            IntMatrix::from_rows(&[vec![1, 1, 0], vec![1, 2, 0], vec![0, 0, 2]]),
        )
        .unwrap();
        let inv = f.try_inverse().unwrap();
        assert_eq!(f.then(&inv).unwrap(), GroupHom::identity(&g));
        assert_eq!(inv.then(&f).unwrap(), GroupHom::identity(&g));
    }

    #[test]
    fn non_surjective_has_no_inverse() {
        let double = GroupHom::new(
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        assert!(double.try_inverse().is_none());
    }
}
