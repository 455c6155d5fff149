//! The split square-zero model of the endomorphism ring of an object:
//! `End(K_*) ⋉ Ext(K_*, K_{*+1})` with the Ext part squaring to zero.
//!
//! An element is `(phi, kappa)` with `phi` the pair of induced maps on
//! K-theory and `kappa` the pair of degree-shifting Ext classes. The index
//! map sends an element to its `phi` part; elements with invertible `phi`
//! are exactly the invertible ones, with an explicit closed-form inverse.

use std::fmt;

use crate::fgab::{ext_pullback, ext_pushforward, ExtClass, ExtGroup, FgAbGroup, GroupHom};
use crate::kkobj::GradedGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("elements live over different base objects")]
    BaseMismatch,
    #[error("component {0} is not an endomorphism of the base degree-{1} group")]
    BadComponent(&'static str, u8),
}

/// An element of the modeled endomorphism ring of a fixed base object.
#[derive(Clone, PartialEq, Eq)]
pub struct EndoRingElement {
    base: GradedGroup,
    phi0: GroupHom,
    phi1: GroupHom,
    kappa01: ExtClass,
    kappa10: ExtClass,
}

impl EndoRingElement {
    pub fn new(
        base: GradedGroup,
        phi0: GroupHom,
        phi1: GroupHom,
        kappa01: ExtClass,
        kappa10: ExtClass,
    ) -> Result<Self, RingError> {
        if phi0.source() != base.k0() || phi0.target() != base.k0() {
            return Err(RingError::BadComponent("phi0", 0));
        }
        if phi1.source() != base.k1() || phi1.target() != base.k1() {
            return Err(RingError::BadComponent("phi1", 1));
        }
        let want01 = ExtGroup::new(base.k0(), base.k1());
        let want10 = ExtGroup::new(base.k1(), base.k0());
        if kappa01.group() != &want01 {
            return Err(RingError::BadComponent("kappa01", 0));
        }
        if kappa10.group() != &want10 {
            return Err(RingError::BadComponent("kappa10", 1));
        }
        Ok(EndoRingElement {
            base,
            phi0,
            phi1,
            kappa01,
            kappa10,
        })
    }

    pub fn identity(base: &GradedGroup) -> Self {
        EndoRingElement {
            base: base.clone(),
            phi0: GroupHom::identity(base.k0()),
            phi1: GroupHom::identity(base.k1()),
            kappa01: ExtGroup::new(base.k0(), base.k1()).zero(),
            kappa10: ExtGroup::new(base.k1(), base.k0()).zero(),
        }
    }

    pub fn zero(base: &GradedGroup) -> Self {
        EndoRingElement {
            base: base.clone(),
            phi0: GroupHom::zero(base.k0(), base.k0()),
            phi1: GroupHom::zero(base.k1(), base.k1()),
            kappa01: ExtGroup::new(base.k0(), base.k1()).zero(),
            kappa10: ExtGroup::new(base.k1(), base.k0()).zero(),
        }
    }

    /// An element of the kernel of the index map: zero `phi`, given `kappa`.
    pub fn pure_kernel(base: &GradedGroup, kappa01: ExtClass, kappa10: ExtClass) -> Result<Self, RingError> {
        EndoRingElement::new(
            base.clone(),
            GroupHom::zero(base.k0(), base.k0()),
            GroupHom::zero(base.k1(), base.k1()),
            kappa01,
            kappa10,
        )
    }

    /// An element of the split copy of `End(K_*)`: given `phi`, zero `kappa`.
    pub fn from_endos(base: &GradedGroup, phi0: GroupHom, phi1: GroupHom) -> Result<Self, RingError> {
        EndoRingElement::new(
            base.clone(),
            phi0,
            phi1,
            ExtGroup::new(base.k0(), base.k1()).zero(),
            ExtGroup::new(base.k1(), base.k0()).zero(),
        )
    }

    pub fn base(&self) -> &GradedGroup {
        &self.base
    }

    pub fn phi0(&self) -> &GroupHom {
        &self.phi0
    }

    pub fn phi1(&self) -> &GroupHom {
        &self.phi1
    }

    pub fn kappa01(&self) -> &ExtClass {
        &self.kappa01
    }

    pub fn kappa10(&self) -> &ExtClass {
        &self.kappa10
    }

    pub fn is_identity(&self) -> bool {
        self == &EndoRingElement::identity(&self.base)
    }

    pub fn add(&self, other: &EndoRingElement) -> Result<EndoRingElement, RingError> {
        if self.base != other.base {
            return Err(RingError::BaseMismatch);
        }
        EndoRingElement::new(
            self.base.clone(),
            self.phi0.add(&other.phi0).expect("parallel endomorphisms"),
            self.phi1.add(&other.phi1).expect("parallel endomorphisms"),
            self.kappa01.add(&other.kappa01),
            self.kappa10.add(&other.kappa10),
        )
    }
}

impl fmt::Debug for EndoRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "EndoRingElement(base {}, phi0 {:?}, phi1 {:?}, k01 {:?}, k10 {:?})",
            self.base, self.phi0, self.phi1, self.kappa01, self.kappa10
        )
    }
}

/// Ring multiplication `u · v` (compose: `v` acts first).
///
/// End parts compose; Ext parts are transported by the bimodule action,
/// `kappa_{uv} = (phi_u)_* kappa_v + (phi_v)^* kappa_u`, so the product of
/// two pure-kernel elements is zero.
pub fn multiply(u: &EndoRingElement, v: &EndoRingElement) -> Result<EndoRingElement, RingError> {
    if u.base != v.base {
        return Err(RingError::BaseMismatch);
    }
    let phi0 = v.phi0.then(&u.phi0).expect("endomorphisms compose");
    let phi1 = v.phi1.then(&u.phi1).expect("endomorphisms compose");
    // kappa01 lives in Ext(K0, K1): covariant slot is K1, contravariant K0
    let kappa01 = ext_pushforward(&u.phi1, &v.kappa01)
        .add(&ext_pullback(&v.phi0, u.base.k1(), &u.kappa01));
    let kappa10 = ext_pushforward(&u.phi0, &v.kappa10)
        .add(&ext_pullback(&v.phi1, u.base.k0(), &u.kappa10));
    EndoRingElement::new(u.base.clone(), phi0, phi1, kappa01, kappa10)
}

/// The index map: an element's action on K-theory. Kernel elements map
/// to the zero pair.
pub fn gamma_infinity(u: &EndoRingElement) -> (GroupHom, GroupHom) {
    (u.phi0.clone(), u.phi1.clone())
}

/// Why an element fails to be invertible: a nontrivial cokernel or kernel
/// of its index-map component in the named degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Cokernel { degree: u8, witness: FgAbGroup },
    Kernel { degree: u8, witness: FgAbGroup },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Cokernel { degree, witness } => {
                write!(f, "cokernel {} in degree {}", witness, degree)
            }
            Obstruction::Kernel { degree, witness } => {
                write!(f, "kernel {} in degree {}", witness, degree)
            }
        }
    }
}

/// Outcome of the invertibility test; `NotInvertible` is a value, not an
/// error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvertOutcome {
    Inverse(EndoRingElement),
    NotInvertible(Obstruction),
}

/// Inverts `u` exactly when its index map is an automorphism in both
/// degrees. Writing `u = w + k` with `x = w^{-1}`, the inverse is
/// `(1 - xk)x`, which expands to `(x, -x^* x_* kappa)` componentwise.
pub fn try_invert(u: &EndoRingElement) -> InvertOutcome {
    for (degree, phi) in [(0u8, &u.phi0), (1u8, &u.phi1)] {
        if !phi.is_surjective() {
            return InvertOutcome::NotInvertible(Obstruction::Cokernel {
                degree,
                witness: phi.cokernel(),
            });
        }
        if !phi.is_injective() {
            return InvertOutcome::NotInvertible(Obstruction::Kernel {
                degree,
                witness: phi.kernel(),
            });
        }
    }
    let x0 = u.phi0.try_inverse().expect("checked automorphism");
    let x1 = u.phi1.try_inverse().expect("checked automorphism");
    let kappa01 = ext_pullback(&x0, u.base.k1(), &ext_pushforward(&x1, &u.kappa01)).neg();
    let kappa10 = ext_pullback(&x1, u.base.k0(), &ext_pushforward(&x0, &u.kappa10)).neg();
    InvertOutcome::Inverse(
        EndoRingElement::new(u.base.clone(), x0, x1, kappa01, kappa10)
            .expect("inverse components stay over the base"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::intlin::IntMatrix;

    fn zmod(n: i64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    fn moore_pair(p: i64) -> GradedGroup {
        GradedGroup::new(zmod(p), zmod(p))
    }

    #[test]
    fn square_zero_identity() {
        // (1 + k)(1 - k) = 1 for any kernel element k
        let base = moore_pair(5);
        let eg01 = ExtGroup::new(base.k0(), base.k1());
        let eg10 = ExtGroup::new(base.k1(), base.k0());
        let k = EndoRingElement::pure_kernel(
            &base,
            eg01.class(vec![BigInt::from(2)]),
            eg10.class(vec![BigInt::from(3)]),
        )
        .unwrap();
        let one = EndoRingElement::identity(&base);
        let one_plus = one.add(&k).unwrap();
        let minus_k = EndoRingElement::pure_kernel(&base, k.kappa01().neg(), k.kappa10().neg()).unwrap();
        let one_minus = one.add(&minus_k).unwrap();
        assert!(multiply(&one_plus, &one_minus).unwrap().is_identity());
        assert!(multiply(&one_minus, &one_plus).unwrap().is_identity());
    }

    #[test]
    fn split_ring_embedding() {
        let base = GradedGroup::new(zmod(8), zmod(4));
        let w1 = GroupHom::new(zmod(8), zmod(8), IntMatrix::from_rows(&[vec![3]])).unwrap();
        let w2 = GroupHom::new(zmod(8), zmod(8), IntMatrix::from_rows(&[vec![5]])).unwrap();
        let v1 = GroupHom::new(zmod(4), zmod(4), IntMatrix::from_rows(&[vec![1]])).unwrap();
        let v2 = GroupHom::new(zmod(4), zmod(4), IntMatrix::from_rows(&[vec![3]])).unwrap();
        let a = EndoRingElement::from_endos(&base, w1.clone(), v1.clone()).unwrap();
        let b = EndoRingElement::from_endos(&base, w2.clone(), v2.clone()).unwrap();
        let prod = multiply(&a, &b).unwrap();
        assert_eq!(prod.phi0(), &w2.then(&w1).unwrap());
        assert_eq!(prod.phi1(), &v2.then(&v1).unwrap());
        assert!(prod.kappa01().is_zero());
        assert!(prod.kappa10().is_zero());
    }

    #[test]
    fn identity_action_adds_kernel_parts() {
        let base = moore_pair(5);
        let eg01 = ExtGroup::new(base.k0(), base.k1());
        let eg10 = ExtGroup::new(base.k1(), base.k0());
        let one = EndoRingElement::identity(&base);
        let u = one
            .add(&EndoRingElement::pure_kernel(&base, eg01.class(vec![BigInt::from(1)]), eg10.zero()).unwrap())
            .unwrap();
        let v = one
            .add(&EndoRingElement::pure_kernel(&base, eg01.class(vec![BigInt::from(3)]), eg10.zero()).unwrap())
            .unwrap();
        let prod = multiply(&u, &v).unwrap();
        assert_eq!(prod.kappa01().residues(), &[BigInt::from(4)]);
        assert!(prod.kappa10().is_zero());
        assert_eq!(prod.phi0(), &GroupHom::identity(base.k0()));
    }

    #[test]
    fn kernel_kernel_products_vanish() {
        let base = moore_pair(3);
        let eg01 = ExtGroup::new(base.k0(), base.k1());
        let eg10 = ExtGroup::new(base.k1(), base.k0());
        let k1 = EndoRingElement::pure_kernel(&base, eg01.class(vec![BigInt::from(1)]), eg10.class(vec![BigInt::from(2)])).unwrap();
        let k2 = EndoRingElement::pure_kernel(&base, eg01.class(vec![BigInt::from(2)]), eg10.class(vec![BigInt::from(1)])).unwrap();
        let prod = multiply(&k1, &k2).unwrap();
        assert_eq!(prod, EndoRingElement::zero(&base));
    }

    #[test]
    fn gamma_is_multiplicative() {
        let base = moore_pair(7);
        let eg01 = ExtGroup::new(base.k0(), base.k1());
        let eg10 = ExtGroup::new(base.k1(), base.k0());
        let u = EndoRingElement::new(
            base.clone(),
            GroupHom::new(zmod(7), zmod(7), IntMatrix::from_rows(&[vec![2]])).unwrap(),
            GroupHom::new(zmod(7), zmod(7), IntMatrix::from_rows(&[vec![3]])).unwrap(),
            eg01.class(vec![BigInt::from(4)]),
            eg10.class(vec![BigInt::from(5)]),
        )
        .unwrap();
        let v = EndoRingElement::new(
            base.clone(),
            GroupHom::new(zmod(7), zmod(7), IntMatrix::from_rows(&[vec![4]])).unwrap(),
            GroupHom::new(zmod(7), zmod(7), IntMatrix::from_rows(&[vec![5]])).unwrap(),
            eg01.class(vec![BigInt::from(1)]),
            eg10.class(vec![BigInt::from(6)]),
        )
        .unwrap();
        let (p0, p1) = gamma_infinity(&multiply(&u, &v).unwrap());
        assert_eq!(p0, v.phi0().then(u.phi0()).unwrap());
        assert_eq!(p1, v.phi1().then(u.phi1()).unwrap());
    }

    #[test]
    fn invert_identity_plus_kernel() {
        let base = moore_pair(5);
        let eg01 = ExtGroup::new(base.k0(), base.k1());
        let eg10 = ExtGroup::new(base.k1(), base.k0());
        let k = EndoRingElement::pure_kernel(&base, eg01.class(vec![BigInt::from(2)]), eg10.class(vec![BigInt::from(4)])).unwrap();
        let u = EndoRingElement::identity(&base).add(&k).unwrap();
        match try_invert(&u) {
            InvertOutcome::Inverse(inv) => {
                // inverse of 1 + k is 1 - k
                assert_eq!(inv.kappa01(), &k.kappa01().neg());
                assert_eq!(inv.kappa10(), &k.kappa10().neg());
                assert!(multiply(&u, &inv).unwrap().is_identity());
                assert!(multiply(&inv, &u).unwrap().is_identity());
            }
            InvertOutcome::NotInvertible(o) => panic!("should invert, got {}", o),
        }
    }

    #[test]
    fn doubling_on_z_is_not_invertible() {
        let base = GradedGroup::unit();
        let double = GroupHom::new(
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        let u = EndoRingElement::from_endos(&base, double, GroupHom::identity(base.k1())).unwrap();
        match try_invert(&u) {
            InvertOutcome::NotInvertible(Obstruction::Cokernel { degree, witness }) => {
                assert_eq!(degree, 0);
                assert_eq!(witness, zmod(2));
            }
            other => panic!("expected cokernel obstruction, got {:?}", other),
        }
    }

    #[test]
    fn invert_unit_multiple_with_kernel_part() {
        let base = moore_pair(5);
        let eg01 = ExtGroup::new(base.k0(), base.k1());
        let eg10 = ExtGroup::new(base.k1(), base.k0());
        let u = EndoRingElement::new(
            base.clone(),
            GroupHom::new(zmod(5), zmod(5), IntMatrix::from_rows(&[vec![2]])).unwrap(),
            GroupHom::new(zmod(5), zmod(5), IntMatrix::from_rows(&[vec![3]])).unwrap(),
            eg01.class(vec![BigInt::from(1)]),
            eg10.class(vec![BigInt::from(2)]),
        )
        .unwrap();
        match try_invert(&u) {
            InvertOutcome::Inverse(inv) => {
                assert!(multiply(&u, &inv).unwrap().is_identity());
                assert!(multiply(&inv, &u).unwrap().is_identity());
            }
            InvertOutcome::NotInvertible(o) => panic!("gcd(2,5)=1 should invert, got {}", o),
        }
    }

    #[test]
    fn base_mismatch_is_an_error() {
        let a = EndoRingElement::identity(&moore_pair(3));
        let b = EndoRingElement::identity(&moore_pair(5));
        assert_eq!(multiply(&a, &b), Err(RingError::BaseMismatch));
    }
}
