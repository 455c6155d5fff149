//! Random instances for the property suites: groups, graded objects,
//! valid homomorphisms, ring elements, 0/1 matrices, and direct systems.
//! Everything is driven by a caller-supplied RNG, so a fixed seed gives a
//! fixed stream of instances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::fgab::{ExtGroup, FgAbGroup, GroupHom};
use crate::intlin::IntMatrix;
use crate::kkobj::GradedGroup;
use crate::limits::DirectSystem;
use crate::ringmodel::EndoRingElement;

/// Size bounds for generated instances.
#[derive(Clone, Copy, Debug)]
pub struct SampleBounds {
    pub max_rank: usize,
    pub max_torsion_factors: usize,
    pub max_order: u64,
    /// Magnitude bound for unconstrained matrix entries.
    pub entry_bound: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_rank: 3,
            max_torsion_factors: 3,
            max_order: 64,
            entry_bound: 3,
        }
    }
}

pub fn group<R: Rng + ?Sized>(rng: &mut R, bounds: &SampleBounds) -> FgAbGroup {
    let rank = rng.random_range(0..=bounds.max_rank);
    let k = rng.random_range(0..=bounds.max_torsion_factors);
    let mut orders = vec![BigInt::zero(); rank];
    for _ in 0..k {
        orders.push(BigInt::from(rng.random_range(2..=bounds.max_order)));
    }
    FgAbGroup::from_cyclic_orders(&orders)
}

pub fn graded<R: Rng + ?Sized>(rng: &mut R, bounds: &SampleBounds) -> GradedGroup {
    GradedGroup::new(group(rng, bounds), group(rng, bounds))
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        BigInt::from(rng.random_range(-bound..=bound))
    })
}

/// A valid homomorphism: free-generator columns are unconstrained, while a
/// torsion generator of order `d` maps into the `d`-torsion of the target.
pub fn hom<R: Rng + ?Sized>(
    rng: &mut R,
    source: &FgAbGroup,
    target: &FgAbGroup,
    bounds: &SampleBounds,
) -> GroupHom {
    let src_orders = source.generator_orders();
    let tgt_orders = target.generator_orders();
    let m = IntMatrix::from_fn(target.num_generators(), source.num_generators(), |i, j| {
        let d = &src_orders[j];
        let e = &tgt_orders[i];
        if d.is_zero() {
            if e.is_zero() {
                BigInt::from(rng.random_range(-bounds.entry_bound..=bounds.entry_bound))
            } else {
                random_below(rng, e)
            }
        } else if e.is_zero() {
            BigInt::zero()
        } else {
            let g = d.gcd(e);
            let step = e / &g;
            step * random_below(rng, &g)
        }
    });
    GroupHom::new(source.clone(), target.clone(), m).expect("constructed entries are valid")
}

fn random_below<R: Rng + ?Sized>(rng: &mut R, bound: &BigInt) -> BigInt {
    // orders here are small; sample through u64
    let b: u64 = bound.try_into().expect("sample orders fit in u64");
    if b == 0 {
        BigInt::zero()
    } else {
        BigInt::from(rng.random_range(0..b))
    }
}

/// A random automorphism, built as a product of elementary automorphisms
/// applied to the identity.
pub fn automorphism<R: Rng + ?Sized>(rng: &mut R, g: &FgAbGroup, steps: usize) -> GroupHom {
    let r = g.rank();
    let orders = g.generator_orders();
    let n = g.num_generators();
    let mut m = IntMatrix::identity(n);
    for _ in 0..steps {
        match rng.random_range(0..4) {
            // unimodular column operation on the free block
            0 if r >= 2 => {
                let i = rng.random_range(0..r);
                let mut j = rng.random_range(0..r);
                while j == i {
                    j = rng.random_range(0..r);
                }
                let c = BigInt::from(rng.random_range(-2..=2i64));
                for row in 0..n {
                    let delta = &c * m.at(row, i);
                    let cur = m.at(row, j).clone();
                    m.set(row, j, cur + delta);
                }
            }
            // unit scaling of a torsion generator
            1 if n > r => {
                let j = rng.random_range(r..n);
                let d = &orders[j];
                let unit = loop {
                    let a = random_below(rng, d);
                    if a.gcd(d).is_one() {
                        break a;
                    }
                };
                for row in 0..n {
                    let cur = m.at(row, j).clone();
                    m.set(row, j, cur * &unit);
                }
            }
            // torsion shear along the divisor chain (earlier order divides later)
            2 if n - r >= 2 => {
                let i = rng.random_range(r..n - 1);
                let j = rng.random_range(i + 1..n);
                let c = random_below(rng, &orders[i]);
                for row in 0..n {
                    let delta = &c * m.at(row, i);
                    let cur = m.at(row, j).clone();
                    m.set(row, j, cur + delta);
                }
            }
            // free generator picks up a torsion component
            3 if r >= 1 && n > r => {
                let i = rng.random_range(r..n);
                let j = rng.random_range(0..r);
                let c = random_below(rng, &orders[i]);
                for row in 0..n {
                    let delta = &c * m.at(row, i);
                    let cur = m.at(row, j).clone();
                    m.set(row, j, cur + delta);
                }
            }
            _ => {}
        }
    }
    GroupHom::new(g.clone(), g.clone(), m).expect("elementary moves preserve validity")
}

pub fn ext_class<R: Rng + ?Sized>(rng: &mut R, group: &ExtGroup) -> crate::fgab::ExtClass {
    let residues = group
        .slot_orders()
        .iter()
        .map(|o| random_below(rng, o))
        .collect();
    group.class(residues)
}

/// A random ring element over the base; `phi` components are arbitrary
/// valid endomorphisms, the Ext parts arbitrary residues.
pub fn endo_element<R: Rng + ?Sized>(
    rng: &mut R,
    base: &GradedGroup,
    bounds: &SampleBounds,
) -> EndoRingElement {
    let phi0 = hom(rng, base.k0(), base.k0(), bounds);
    let phi1 = hom(rng, base.k1(), base.k1(), bounds);
    let k01 = ext_class(rng, &ExtGroup::new(base.k0(), base.k1()));
    let k10 = ext_class(rng, &ExtGroup::new(base.k1(), base.k0()));
    EndoRingElement::new(base.clone(), phi0, phi1, k01, k10).expect("components match the base")
}

/// A random ring element whose index map is an automorphism in both
/// degrees (hence invertible).
pub fn invertible_endo_element<R: Rng + ?Sized>(
    rng: &mut R,
    base: &GradedGroup,
) -> EndoRingElement {
    let phi0 = automorphism(rng, base.k0(), 6);
    let phi1 = automorphism(rng, base.k1(), 6);
    let k01 = ext_class(rng, &ExtGroup::new(base.k0(), base.k1()));
    let k10 = ext_class(rng, &ExtGroup::new(base.k1(), base.k0()));
    EndoRingElement::new(base.clone(), phi0, phi1, k01, k10).expect("components match the base")
}

/// A random 0/1 matrix with no zero rows or columns.
pub fn zero_one_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> IntMatrix {
    assert!(n >= 1);
    loop {
        let rows: Vec<u64> = (0..n).map(|_| rng.random_range(1..(1u64 << n))).collect();
        let no_zero_col = (0..n).any(|j| rows.iter().all(|r| r & (1 << j) == 0));
        if no_zero_col {
            continue;
        }
        return IntMatrix::from_fn(n, n, |i, j| BigInt::from((rows[i] >> j) & 1));
    }
}

/// A random eventually-periodic system with a short random prefix.
pub fn system<R: Rng + ?Sized>(rng: &mut R, bounds: &SampleBounds) -> DirectSystem {
    let tail_group = group(rng, bounds);
    let tail_map = hom(rng, &tail_group, &tail_group, bounds);
    let stages = rng.random_range(0..=2);
    let mut prefix: Vec<(FgAbGroup, GroupHom)> = Vec::new();
    let mut groups: Vec<FgAbGroup> = (0..stages).map(|_| group(rng, bounds)).collect();
    groups.push(tail_group.clone());
    for i in 0..stages {
        let f = hom(rng, &groups[i], &groups[i + 1], bounds);
        prefix.push((groups[i].clone(), f));
    }
    DirectSystem::new(prefix, tail_group, tail_map).expect("constructed stages compose")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixed_seed_gives_fixed_stream() {
        let bounds = SampleBounds::default();
        let a: Vec<FgAbGroup> = {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..10).map(|_| group(&mut rng, &bounds)).collect()
        };
        let b: Vec<FgAbGroup> = {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..10).map(|_| group(&mut rng, &bounds)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_homs_are_valid_and_automorphisms_invert() {
        let bounds = SampleBounds::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = group(&mut rng, &bounds);
            let h = group(&mut rng, &bounds);
            let _f = hom(&mut rng, &g, &h, &bounds);
            let a = automorphism(&mut rng, &g, 6);
            assert!(a.is_isomorphism(), "{:?} on {}", a, g);
        }
    }

    #[test]
    fn zero_one_matrices_have_no_zero_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let m = zero_one_matrix(&mut rng, n);
            for i in 0..n {
                assert!((0..n).any(|j| !m.at(i, j).is_zero()));
                assert!((0..n).any(|j| !m.at(j, i).is_zero()));
            }
        }
    }
}
