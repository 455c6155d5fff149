//! Finitely generated abelian groups in canonical invariant-factor form,
//! with the Hom/Ext/Tor/tensor bifunctors and induced maps.
//!
//! Canonical form is unique: two groups are isomorphic exactly when their
//! (rank, torsion chain) data are equal, so isomorphism testing is `==`.

mod ext;
mod hom;
mod present;
mod primary;

pub use ext::{
    ext_pullback, ext_pushforward, induced_ext_map, induced_ext_map_covariant, ExtClass, ExtGroup,
};
pub use hom::{GroupHom, HomError};
pub(crate) use present::Presentation;
pub use primary::{factor, primary_decomposition};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

use crate::intlin::{self, IntMatrix};

/// A finitely generated abelian group `Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`
/// with `d1 | d2 | ... | dk` and every `di >= 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    /// Panics if the torsion list is not a divisor chain of integers >= 2.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        Self::try_new(rank, torsion).expect("invalid invariant factors")
    }

    pub fn try_new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, InvariantError> {
        for d in &torsion {
            if *d < BigInt::from(2) {
                return Err(InvariantError::SmallFactor(d.clone()));
            }
        }
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(InvariantError::ChainBroken(w[0].clone(), w[1].clone()));
            }
        }
        Ok(FgAbGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic<T: Into<BigInt>>(order: T) -> Self {
        let d: BigInt = order.into();
        assert!(d >= BigInt::from(2), "cyclic order must be >= 2");
        FgAbGroup {
            rank: 0,
            torsion: vec![d],
        }
    }

    /// Canonical form of `⊕ Z/c` over arbitrary cyclic orders, where an
    /// order of 0 stands for `Z` and 1 for the trivial group.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        intlin::cokernel(&IntMatrix::diagonal(orders))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order, or None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn free_part(&self) -> FgAbGroup {
        FgAbGroup::free(self.rank)
    }

    pub fn torsion_part(&self) -> FgAbGroup {
        FgAbGroup {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Number of canonical generators (free then torsion).
    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Orders of the canonical generators, 0 meaning infinite.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut orders = vec![BigInt::zero(); self.rank];
        orders.extend(self.torsion.iter().cloned());
        orders
    }

    /// Canonical relations: the columns `d_j * e_{rank+j}` presenting the
    /// group as a quotient of `Z^(rank + k)`.
    pub fn relations_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let k = self.torsion.len();
        IntMatrix::from_fn(n, k, |i, j| {
            if i == self.rank + j {
                self.torsion[j].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Number of elements killed by `m`, i.e. `|{x : m·x = 0}|`,
    /// assuming the group is finite. Determines a finite abelian group
    /// when known for all m.
    pub fn count_torsion_elements(&self, m: &BigInt) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|d| m.gcd(d)).product())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("torsion factor {0} is below 2")]
    SmallFactor(BigInt),
    #[error("divisor chain broken: {0} does not divide {1}")]
    ChainBroken(BigInt, BigInt),
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({})", self)
    }
}

/// Canonical form of the quotient presented by a relations matrix
/// (`Z^rows` modulo the column span).
pub fn canonicalize(relations: &IntMatrix) -> FgAbGroup {
    intlin::cokernel(relations)
}

/// Canonical form of `G ⊕ H`.
pub fn direct_sum(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut orders: Vec<BigInt> = g.torsion.to_vec();
    orders.extend_from_slice(&h.torsion);
    let merged = FgAbGroup::from_cyclic_orders(&orders);
    FgAbGroup {
        rank: g.rank + h.rank,
        torsion: merged.torsion,
    }
}

/// `Hom(G, H)`: `Hom(Z,H) = H`, `Hom(Z/d, Z) = 0`,
/// `Hom(Z/d, Z/e) = Z/gcd(d,e)`, additive in both slots.
pub fn hom(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for e in &h.torsion {
        for _ in 0..g.rank {
            orders.push(e.clone());
        }
    }
    for d in &g.torsion {
        for e in &h.torsion {
            orders.push(d.gcd(e));
        }
    }
    let merged = FgAbGroup::from_cyclic_orders(&orders);
    FgAbGroup {
        rank: g.rank * h.rank,
        torsion: merged.torsion,
    }
}

/// `Ext(G, H)`: `Ext(Z,H) = 0`, `Ext(Z/d, Z) = Z/d`,
/// `Ext(Z/d, Z/e) = Z/gcd(d,e)`, additive in both slots.
pub fn ext(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for d in &g.torsion {
        for _ in 0..h.rank {
            orders.push(d.clone());
        }
        for e in &h.torsion {
            orders.push(d.gcd(e));
        }
    }
    FgAbGroup::from_cyclic_orders(&orders)
}

/// `G ⊗ H`: `Z ⊗ H = H`, `Z/d ⊗ Z/e = Z/gcd(d,e)`, additive in both slots.
pub fn tensor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for e in &h.torsion {
        for _ in 0..g.rank {
            orders.push(e.clone());
        }
    }
    for d in &g.torsion {
        for _ in 0..h.rank {
            orders.push(d.clone());
        }
        for e in &h.torsion {
            orders.push(d.gcd(e));
        }
    }
    let merged = FgAbGroup::from_cyclic_orders(&orders);
    FgAbGroup {
        rank: g.rank * h.rank,
        torsion: merged.torsion,
    }
}

/// `Tor(G, H)`: `Tor(Z, -) = 0`, `Tor(Z/d, Z/e) = Z/gcd(d,e)`,
/// additive in both slots.
pub fn tor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for d in &g.torsion {
        for e in &h.torsion {
            orders.push(d.gcd(e));
        }
    }
    FgAbGroup::from_cyclic_orders(&orders)
}

/// Canonical data equality is isomorphism.
pub fn is_isomorphic(g: &FgAbGroup, h: &FgAbGroup) -> bool {
    g == h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: i64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    #[test]
    fn canonicalize_merges_coprime_factors() {
        let g = canonicalize(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g, zmod(6));
    }

    #[test]
    fn canonicalize_zero_and_unit() {
        assert_eq!(
            canonicalize(&IntMatrix::from_rows(&[vec![0]])),
            FgAbGroup::free(1)
        );
        assert_eq!(
            canonicalize(&IntMatrix::from_rows(&[vec![1]])),
            FgAbGroup::trivial()
        );
    }

    #[test]
    fn canonicalize_idempotent() {
        let g = FgAbGroup::new(2, vec![BigInt::from(2), BigInt::from(12)]);
        let re = canonicalize(&{
            let mut orders = vec![BigInt::zero(); g.rank()];
            orders.extend(g.torsion().iter().cloned());
            IntMatrix::diagonal(&orders)
        });
        assert_eq!(re, g);
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&zmod(2), &zmod(3)), zmod(6));
        let two_two = direct_sum(&zmod(2), &zmod(2));
        assert_eq!(two_two.torsion(), &[BigInt::from(2), BigInt::from(2)]);
        let g = FgAbGroup::new(1, vec![BigInt::from(4)]);
        assert_eq!(direct_sum(&g, &FgAbGroup::trivial()), g);
    }

    #[test]
    fn hom_examples() {
        let h = hom(&FgAbGroup::free(2), &zmod(4));
        assert_eq!(h.torsion(), &[BigInt::from(4), BigInt::from(4)]);
        assert_eq!(hom(&zmod(4), &zmod(6)), zmod(2));
        assert_eq!(hom(&zmod(5), &FgAbGroup::free(1)), FgAbGroup::trivial());
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext(&zmod(7), &FgAbGroup::free(1)), zmod(7));
        assert_eq!(
            ext(&FgAbGroup::free(3), &FgAbGroup::new(1, vec![BigInt::from(9)])),
            FgAbGroup::trivial()
        );
        assert_eq!(ext(&zmod(4), &zmod(6)), zmod(2));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor(&zmod(5), &zmod(5)), zmod(5));
        assert_eq!(
            tensor(&FgAbGroup::free(2), &FgAbGroup::free(3)),
            FgAbGroup::free(6)
        );
        assert_eq!(tensor(&zmod(2), &zmod(3)), FgAbGroup::trivial());
    }

    #[test]
    fn tor_examples() {
        assert_eq!(tor(&zmod(5), &zmod(5)), zmod(5));
        assert_eq!(tor(&FgAbGroup::free(1), &zmod(12)), FgAbGroup::trivial());
        assert_eq!(tor(&zmod(6), &zmod(4)), zmod(2));
    }

    #[test]
    fn ext_into_z_is_torsion_part() {
        let g = FgAbGroup::new(2, vec![BigInt::from(3), BigInt::from(12)]);
        assert_eq!(ext(&g, &FgAbGroup::free(1)), g.torsion_part());
    }

    #[test]
    fn display_round_trips_canonically() {
        let g = FgAbGroup::new(2, vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/12");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
    }

    #[test]
    fn invalid_chains_are_rejected() {
        assert!(FgAbGroup::try_new(0, vec![BigInt::from(4), BigInt::from(6)]).is_err());
        assert!(FgAbGroup::try_new(0, vec![BigInt::from(1)]).is_err());
    }
}
