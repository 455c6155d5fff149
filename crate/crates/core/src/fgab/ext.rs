//! Ext groups with a fixed cyclic decomposition, elements as residue
//! vectors, and the induced maps in both variables.
//!
//! For `G = Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` the resolution
//! `0 -> Z^k -> Z^(r+k) -> G -> 0` identifies `Ext(G, H)` with
//! `⊕_j H/d_j H`, one summand per torsion generator of `G`. Each summand
//! decomposes along the generators of `H`, giving one cyclic slot of order
//! `d_j` (free generator of `H`) or `gcd(d_j, e_i)` (torsion generator of
//! order `e_i`). Elements are stored as residues against these slots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

use super::{FgAbGroup, GroupHom, Presentation};
use crate::intlin::IntMatrix;

/// `Ext(source, target)` with its canonical cyclic decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtGroup {
    source: FgAbGroup,
    target: FgAbGroup,
    orders: Vec<BigInt>,
}

impl ExtGroup {
    pub fn new(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        let target_orders = target.generator_orders();
        let mut orders = Vec::with_capacity(source.torsion().len() * target.num_generators());
        for d in source.torsion() {
            for o in &target_orders {
                if o.is_zero() {
                    orders.push(d.clone());
                } else {
                    orders.push(d.gcd(o));
                }
            }
        }
        ExtGroup {
            source: source.clone(),
            target: target.clone(),
            orders,
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    /// Orders of the cyclic slots (order 1 slots are trivial but kept so
    /// that indexing stays uniform).
    pub fn slot_orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn num_slots(&self) -> usize {
        self.orders.len()
    }

    fn slot(&self, j: usize, i: usize) -> usize {
        j * self.target.num_generators() + i
    }

    /// The canonical invariant-factor form; agrees with `fgab::ext`.
    pub fn as_group(&self) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(&self.orders)
    }

    pub fn zero(&self) -> ExtClass {
        ExtClass {
            group: self.clone(),
            residues: vec![BigInt::zero(); self.orders.len()],
        }
    }

    /// An element from residues against the slot orders.
    pub fn class(&self, residues: Vec<BigInt>) -> ExtClass {
        assert_eq!(
            residues.len(),
            self.orders.len(),
            "residue vector length mismatch"
        );
        let mut c = ExtClass {
            group: self.clone(),
            residues,
        };
        c.reduce();
        c
    }
}

/// An element of an `ExtGroup`, reduced against the slot orders.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtClass {
    group: ExtGroup,
    residues: Vec<BigInt>,
}

impl ExtClass {
    pub fn group(&self) -> &ExtGroup {
        &self.group
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    fn reduce(&mut self) {
        for (r, o) in self.residues.iter_mut().zip(&self.group.orders) {
            *r = r.mod_floor(o);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        assert_eq!(self.group, other.group, "Ext group mismatch in sum");
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .map(|(a, b)| a + b)
            .collect();
        self.group.class(residues)
    }

    pub fn neg(&self) -> ExtClass {
        let residues = self.residues.iter().map(|r| -r).collect();
        self.group.class(residues)
    }
}

impl fmt::Debug for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .residues
            .iter()
            .zip(&self.group.orders)
            .map(|(r, o)| format!("{} (mod {})", r, o))
            .collect();
        write!(f, "ExtClass[{}]", parts.join(", "))
    }
}

/// The lift of `f : G -> G'` to the resolution kernels: a `k' x k` integer
/// matrix with `lift[l][j] = d_j * F[r'+l][r+j] / d'_l`.
fn resolution_lift(f: &GroupHom) -> IntMatrix {
    let src = f.source();
    let tgt = f.target();
    let k_src = src.torsion().len();
    let k_tgt = tgt.torsion().len();
    IntMatrix::from_fn(k_tgt, k_src, |l, j| {
        let entry = f.matrix().at(tgt.rank() + l, src.rank() + j);
        let num = &src.torsion()[j] * entry;
        let (q, r) = num.div_rem(&tgt.torsion()[l]);
        debug_assert!(r.is_zero(), "torsion validity guarantees divisibility");
        q
    })
}

/// Contravariant action: pulls a class in `Ext(G', H)` back along
/// `f : G -> G'`, landing in `Ext(G, H)`.
pub fn ext_pullback(f: &GroupHom, h: &FgAbGroup, class: &ExtClass) -> ExtClass {
    assert_eq!(
        class.group.source(),
        f.target(),
        "class must live over Ext(target(f), H)"
    );
    assert_eq!(class.group.target(), h, "target group mismatch");
    let lift = resolution_lift(f);
    let result_group = ExtGroup::new(f.source(), h);
    let n_h = h.num_generators();
    let k_src = f.source().torsion().len();
    let k_tgt = f.target().torsion().len();
    let mut residues = vec![BigInt::zero(); result_group.num_slots()];
    for j in 0..k_src {
        for i in 0..n_h {
            let mut acc = BigInt::zero();
            for l in 0..k_tgt {
                acc += lift.at(l, j) * &class.residues[class.group.slot(l, i)];
            }
            residues[result_group.slot(j, i)] = acc;
        }
    }
    result_group.class(residues)
}

/// Covariant action: pushes a class in `Ext(G, H)` forward along
/// `g : H -> H'`, landing in `Ext(G, H')`.
pub fn ext_pushforward(g: &GroupHom, class: &ExtClass) -> ExtClass {
    assert_eq!(class.group.target(), g.source(), "class target mismatch");
    let src_of_ext = class.group.source().clone();
    let result_group = ExtGroup::new(&src_of_ext, g.target());
    let k = src_of_ext.torsion().len();
    let n_h = g.source().num_generators();
    let n_h2 = g.target().num_generators();
    let mut residues = vec![BigInt::zero(); result_group.num_slots()];
    for j in 0..k {
        for i2 in 0..n_h2 {
            let mut acc = BigInt::zero();
            for i in 0..n_h {
                acc += g.matrix().at(i2, i) * &class.residues[class.group.slot(j, i)];
            }
            residues[result_group.slot(j, i2)] = acc;
        }
    }
    result_group.class(residues)
}

/// Matrix of a slot-level linear map against the canonical forms of the
/// two Ext groups.
fn slots_to_group_hom(
    source_ext: &ExtGroup,
    target_ext: &ExtGroup,
    slot_matrix: &IntMatrix,
) -> GroupHom {
    let p_src = Presentation::new(&IntMatrix::diagonal(source_ext.slot_orders()));
    let p_tgt = Presentation::new(&IntMatrix::diagonal(target_ext.slot_orders()));
    let m = p_tgt.to_canon.mul(slot_matrix).mul(&p_src.from_canon);
    GroupHom::new(p_src.group, p_tgt.group, m)
        .expect("induced map on Ext is a homomorphism")
}

/// The contravariantly induced map `Ext(G', H) -> Ext(G, H)` of
/// `f : G -> G'`, between the canonical forms.
pub fn induced_ext_map(f: &GroupHom, h: &FgAbGroup) -> GroupHom {
    let from_ext = ExtGroup::new(f.target(), h);
    let to_ext = ExtGroup::new(f.source(), h);
    let lift = resolution_lift(f);
    let n_h = h.num_generators();
    // the closure only runs when both slot counts are positive, so n_h > 0
    let slot_matrix = IntMatrix::from_fn(to_ext.num_slots(), from_ext.num_slots(), |row, col| {
        let (j, i) = (row / n_h, row % n_h);
        let (l, i2) = (col / n_h, col % n_h);
        if i == i2 {
            lift.at(l, j).clone()
        } else {
            BigInt::zero()
        }
    });
    slots_to_group_hom(&from_ext, &to_ext, &slot_matrix)
}

/// The covariantly induced map `Ext(G, H) -> Ext(G, H')` of `g : H -> H'`.
pub fn induced_ext_map_covariant(g: &GroupHom, source: &FgAbGroup) -> GroupHom {
    let from_ext = ExtGroup::new(source, g.source());
    let to_ext = ExtGroup::new(source, g.target());
    let n_h = g.source().num_generators();
    let n_h2 = g.target().num_generators();
    let slot_matrix = IntMatrix::from_fn(to_ext.num_slots(), from_ext.num_slots(), |row, col| {
        let (j2, i2) = (row / n_h2, row % n_h2);
        let (j, i) = (col / n_h, col % n_h);
        if j == j2 {
            g.matrix().at(i2, i).clone()
        } else {
            BigInt::zero()
        }
    });
    slots_to_group_hom(&from_ext, &to_ext, &slot_matrix)
}
