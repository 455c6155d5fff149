//! Quotient presentations with explicit coordinate changes to and from
//! the canonical generators.

use num_bigint::BigInt;
use num_traits::One;

use super::FgAbGroup;
use crate::intlin::{snf_extended, IntMatrix};

/// A quotient `Z^n / (column span of R)` together with integer matrices
/// translating between ambient coordinates and canonical generators.
///
/// `to_canon * from_canon` is exactly the identity on canonical
/// coordinates; `to_canon` applied to an ambient vector gives canonical
/// coordinates of its class (torsion coordinates are meaningful modulo
/// their orders).
#[derive(Clone, Debug)]
pub(crate) struct Presentation {
    pub group: FgAbGroup,
    pub to_canon: IntMatrix,
    pub from_canon: IntMatrix,
}

impl Presentation {
    pub fn new(relations: &IntMatrix) -> Self {
        let n = relations.rows();
        let d = snf_extended(relations);
        // After the change of basis by U the quotient splits coordinatewise:
        // order diag[i] for i < rank (units give trivial factors), free past
        // the rank. Canonical order is free generators first, then torsion.
        let first_nonunit = d.diag.iter().take(d.rank).take_while(|e| e.is_one()).count();
        let mut kept: Vec<usize> = (d.rank..n).collect();
        kept.extend(first_nonunit..d.rank);
        let torsion: Vec<BigInt> = (first_nonunit..d.rank).map(|i| d.diag[i].clone()).collect();
        let group = FgAbGroup::new(n - d.rank, torsion);
        let to_canon = d.u.select_rows(&kept);
        let from_canon = d.u_inv.select_columns(&kept);
        Presentation {
            group,
            to_canon,
            from_canon,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::IntMatrix;

    #[test]
    fn round_trip_is_identity() {
        let rels = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3], vec![0, 0]]);
        let p = Presentation::new(&rels);
        assert_eq!(p.group, FgAbGroup::new(1, vec![num_bigint::BigInt::from(6)]));
        let round = p.to_canon.mul(&p.from_canon);
        assert_eq!(round, IntMatrix::identity(p.group.num_generators()));
    }

    #[test]
    fn free_presentation() {
        let rels = IntMatrix::zero(2, 0);
        let p = Presentation::new(&rels);
        assert_eq!(p.group, FgAbGroup::free(2));
        assert_eq!(p.to_canon.mul(&p.from_canon), IntMatrix::identity(2));
    }
}
