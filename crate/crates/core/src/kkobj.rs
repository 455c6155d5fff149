//! Z/2-graded K-theory objects and the operations determined by them:
//! the duality functor, suspension, the Künneth tensor, KK-groups via the
//! universal coefficient sequence, and mod-n K-theory.
//!
//! An object is identified with its graded K-theory `(K0, K1)`; for
//! bootstrap algebras with finitely generated K-theory this datum
//! determines the algebra up to KK-equivalence, so every operation here
//! is a computation on pairs of canonical groups.

use num_bigint::BigInt;
use std::fmt;

use crate::fgab::{self, FgAbGroup};

/// The pair `(K0, K1)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    g0: FgAbGroup,
    g1: FgAbGroup,
}

impl GradedGroup {
    pub fn new(g0: FgAbGroup, g1: FgAbGroup) -> Self {
        GradedGroup { g0, g1 }
    }

    pub fn zero() -> Self {
        GradedGroup {
            g0: FgAbGroup::trivial(),
            g1: FgAbGroup::trivial(),
        }
    }

    /// The unit object: `K0 = Z`, `K1 = 0` (the K-theory of the scalars).
    pub fn unit() -> Self {
        GradedGroup {
            g0: FgAbGroup::free(1),
            g1: FgAbGroup::trivial(),
        }
    }

    pub fn k0(&self) -> &FgAbGroup {
        &self.g0
    }

    pub fn k1(&self) -> &FgAbGroup {
        &self.g1
    }

    pub fn degree(&self, i: u8) -> &FgAbGroup {
        match i % 2 {
            0 => &self.g0,
            _ => &self.g1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g0.is_trivial() && self.g1.is_trivial()
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} ; {}]", self.g0, self.g1)
    }
}

impl fmt::Debug for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedGroup({})", self)
    }
}

/// Whether the duality classes sit in degree zero or one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

/// Graded K-theory of the Spanier-Whitehead K-dual.
///
/// Even parity: `K0(DA) = free(K0 A) ⊕ tors(K1 A)` and
/// `K1(DA) = free(K1 A) ⊕ tors(K0 A)`; odd parity swaps the two degrees
/// on top of that.
pub fn dual(a: &GradedGroup, parity: Parity) -> GradedGroup {
    let d0 = fgab::direct_sum(&a.g0.free_part(), &a.g1.torsion_part());
    let d1 = fgab::direct_sum(&a.g1.free_part(), &a.g0.torsion_part());
    let even = GradedGroup::new(d0, d1);
    match parity {
        Parity::Even => even,
        Parity::Odd => suspend(&even),
    }
}

/// Degree swap; its own inverse by periodicity.
pub fn suspend(a: &GradedGroup) -> GradedGroup {
    GradedGroup::new(a.g1.clone(), a.g0.clone())
}

/// Graded group of the tensor product:
/// `K_i(A⊗B) = ⊕_{j+k=i} K_j(A)⊗K_k(B) ⊕ ⊕_{j+k=i+1} Tor(K_j(A), K_k(B))`
/// with indices mod 2. The sequence splits for finitely generated groups,
/// so the result is determined.
pub fn kunneth(a: &GradedGroup, b: &GradedGroup) -> GradedGroup {
    let t = |x: &FgAbGroup, y: &FgAbGroup| fgab::tensor(x, y);
    let tor = |x: &FgAbGroup, y: &FgAbGroup| fgab::tor(x, y);
    let sum = |parts: Vec<FgAbGroup>| {
        parts
            .into_iter()
            .fold(FgAbGroup::trivial(), |acc, g| fgab::direct_sum(&acc, &g))
    };
    let k0 = sum(vec![
        t(&a.g0, &b.g0),
        t(&a.g1, &b.g1),
        tor(&a.g0, &b.g1),
        tor(&a.g1, &b.g0),
    ]);
    let k1 = sum(vec![
        t(&a.g0, &b.g1),
        t(&a.g1, &b.g0),
        tor(&a.g0, &b.g0),
        tor(&a.g1, &b.g1),
    ]);
    GradedGroup::new(k0, k1)
}

/// The group `KK_degree(A, B)` from the universal coefficient sequence,
/// which splits (unnaturally), so the group is determined:
/// `KK_0(A,B) = Hom(K0 A, K0 B) ⊕ Hom(K1 A, K1 B) ⊕ Ext(K0 A, K1 B) ⊕ Ext(K1 A, K0 B)`,
/// and degree one shifts the grading of `B`.
pub fn kk_group(a: &GradedGroup, b: &GradedGroup, degree: u8) -> FgAbGroup {
    let b = match degree % 2 {
        0 => b.clone(),
        _ => suspend(b),
    };
    let parts = [
        fgab::hom(&a.g0, &b.g0),
        fgab::hom(&a.g1, &b.g1),
        fgab::ext(&a.g0, &b.g1),
        fgab::ext(&a.g1, &b.g0),
    ];
    parts
        .iter()
        .fold(FgAbGroup::trivial(), |acc, g| fgab::direct_sum(&acc, g))
}

/// Which of the two equivalent constructions of mod-n K-theory to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModpConstruction {
    /// `K_j(A; Z/n) = K_j(A ⊗ N)` with `N` the mod-n coefficient object.
    ByTensor,
    /// `K_j(A; Z/n) = KK_{j-1}(N, A)`.
    ByKk,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("mod-n K-theory needs n >= 2, got {0}")]
pub struct ModpError(pub BigInt);

/// Mod-n K-theory of `A` in the given degree, by the chosen construction.
///
/// The coefficient object is `N = (Z/n, 0)`; the two constructions give
/// isomorphic groups.
pub fn modp_k(
    a: &GradedGroup,
    n: &BigInt,
    construction: ModpConstruction,
    degree: u8,
) -> Result<FgAbGroup, ModpError> {
    if *n < BigInt::from(2) {
        return Err(ModpError(n.clone()));
    }
    let coeff = GradedGroup::new(FgAbGroup::cyclic(n.clone()), FgAbGroup::trivial());
    Ok(match construction {
        ModpConstruction::ByTensor => kunneth(a, &coeff).degree(degree).clone(),
        // KK_{j-1} = KK_{j+1} by periodicity
        ModpConstruction::ByKk => kk_group(&coeff, a, (degree + 1) % 2),
    })
}

/// Whether both pairings with the unit object are pure torsion, the
/// obstruction to duality classes being KK-inverses.
pub fn pairing_into_unit_is_trivial(a: &GradedGroup) -> bool {
    kk_group(a, &GradedGroup::unit(), 0).is_finite()
        && kk_group(&GradedGroup::unit(), a, 0).is_finite()
}
