//! Countable, possibly non-finitely-generated K-theory presented as
//! eventually-periodic direct systems, with an exact finite-generation
//! decision and the dual-existence verdict.
//!
//! A system is a finite prefix of stages followed by one endomorphism
//! repeated forever. Eventual periodicity is what makes finite generation
//! of the colimit exactly decidable; the colimit of the repeated part is
//! computed by quotienting out the eventual kernel and asking whether the
//! induced (always injective) endomorphism is onto.

use std::fmt;

use crate::fgab::{FgAbGroup, GroupHom, Presentation};
use crate::intlin;
use crate::kkobj::{self, GradedGroup, Parity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("stage {index}: connecting map source does not match the stage group")]
    StageSourceMismatch { index: usize },
    #[error("stage {index}: connecting map target does not match the next group")]
    StageTargetMismatch { index: usize },
    #[error("tail map is not an endomorphism of the tail group")]
    TailNotEndomorphism,
}

/// Finitely many explicit stages, then one endomorphism repeated forever.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectSystem {
    prefix: Vec<(FgAbGroup, GroupHom)>,
    tail_group: FgAbGroup,
    tail_map: GroupHom,
}

impl DirectSystem {
    pub fn new(
        prefix: Vec<(FgAbGroup, GroupHom)>,
        tail_group: FgAbGroup,
        tail_map: GroupHom,
    ) -> Result<Self, SystemError> {
        for (i, (stage, map)) in prefix.iter().enumerate() {
            if map.source() != stage {
                return Err(SystemError::StageSourceMismatch { index: i });
            }
            let next = prefix.get(i + 1).map(|(g, _)| g).unwrap_or(&tail_group);
            if map.target() != next {
                return Err(SystemError::StageTargetMismatch { index: i });
            }
        }
        if tail_map.source() != &tail_group || tail_map.target() != &tail_group {
            return Err(SystemError::TailNotEndomorphism);
        }
        Ok(DirectSystem {
            prefix,
            tail_group,
            tail_map,
        })
    }

    /// The constant system on `g` (identity tail, no prefix).
    pub fn constant(g: &FgAbGroup) -> Self {
        DirectSystem {
            prefix: Vec::new(),
            tail_group: g.clone(),
            tail_map: GroupHom::identity(g),
        }
    }

    /// A system with no prefix and the given repeating endomorphism.
    pub fn from_tail(tail_map: GroupHom) -> Result<Self, SystemError> {
        if tail_map.source() != tail_map.target() {
            return Err(SystemError::TailNotEndomorphism);
        }
        let tail_group = tail_map.source().clone();
        Ok(DirectSystem {
            prefix: Vec::new(),
            tail_group,
            tail_map,
        })
    }

    pub fn prefix(&self) -> &[(FgAbGroup, GroupHom)] {
        &self.prefix
    }

    pub fn tail_group(&self) -> &FgAbGroup {
        &self.tail_group
    }

    pub fn tail_map(&self) -> &GroupHom {
        &self.tail_map
    }
}

/// Colimit outcome: the canonical group when finitely generated, or
/// `Unbounded`. A non-finitely-generated colimit is never materialized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Colimit {
    FinitelyGenerated(FgAbGroup),
    Unbounded,
}

impl Colimit {
    pub fn is_finitely_generated(&self) -> bool {
        matches!(self, Colimit::FinitelyGenerated(_))
    }
}

impl fmt::Display for Colimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colimit::FinitelyGenerated(g) => write!(f, "{}", g),
            Colimit::Unbounded => write!(f, "unbounded"),
        }
    }
}

struct TailAnalysis {
    /// Tail group modulo the eventual kernel of the tail map.
    reduced: FgAbGroup,
    /// Induced endomorphism on the reduced group; always injective.
    induced: GroupHom,
}

/// Kills the eventual kernel of the tail endomorphism. The union of the
/// iterated kernels stabilizes (checked by a fixpoint test); the induced
/// map on the quotient is injective, and the colimit is finitely
/// generated exactly when it is onto.
fn analyze_tail(system: &DirectSystem) -> TailAnalysis {
    let g = &system.tail_group;
    let m = system.tail_map.matrix();
    // ascending lattices Q_s = {x : M^s x ∈ relations}; free rank can grow
    // at most rank(G) times and the torsion index at most log2(|torsion|)
    // times, so the fixpoint arrives within the cap
    let cap = g.rank()
        + g.torsion()
            .iter()
            .map(|d| d.bits() as usize)
            .sum::<usize>()
        + 2;
    let mut q = intlin::column_lattice_basis(&g.relations_matrix());
    for _ in 0..cap {
        let next = intlin::preimage_lattice(m, &q);
        let contained = (0..next.cols())
            .all(|j| intlin::lattice_contains(&q, &next.column(j)));
        if contained {
            break;
        }
        q = next;
    }
    let pres = Presentation::new(&q);
    let induced_matrix = pres.to_canon.mul(m).mul(&pres.from_canon);
    let induced = GroupHom::new(pres.group.clone(), pres.group.clone(), induced_matrix)
        .expect("tail map descends to the quotient by its eventual kernel");
    TailAnalysis {
        reduced: pres.group,
        induced,
    }
}

/// Exact finite-generation decision for the colimit of the system.
///
/// The prefix never affects the answer; when finitely generated, the
/// colimit is the reduced tail group.
pub fn colimit_is_fg(system: &DirectSystem) -> Colimit {
    let t = analyze_tail(system);
    if t.induced.is_surjective() {
        Colimit::FinitelyGenerated(t.reduced)
    } else {
        Colimit::Unbounded
    }
}

/// Why a dual fails to exist.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NonExistenceMechanism {
    /// The colimit in the named degree is not finitely generated.
    NotFinitelyGenerated,
    /// Additionally the colimit is torsion-free and divisible-directed
    /// (strictly multiplying maps on a free group, a Q-like colimit), so
    /// `Ext(Q, Z) ≅ R` forces any dual to have uncountable K-theory.
    TorsionFreeDivisible,
}

/// The dual-existence decision for a pair of systems presenting K0, K1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DualVerdict {
    Exists(GradedGroup),
    NotExists {
        degree: u8,
        mechanism: NonExistenceMechanism,
    },
}

impl DualVerdict {
    pub fn reason(&self) -> String {
        match self {
            DualVerdict::Exists(_) => String::new(),
            DualVerdict::NotExists { degree, mechanism } => {
                let mut s = format!(
                    "K_{} colimit is not finitely generated; Spanier-Whitehead K-duals \
                     exist exactly for finitely generated K-theory (the largest \
                     subcategory closed under K-duality).",
                    degree
                );
                if *mechanism == NonExistenceMechanism::TorsionFreeDivisible {
                    s.push_str(
                        " The colimit is torsion-free and divisible-directed (a Q-like \
                         group), and Ext(Q, Z) is isomorphic to R, which is uncountable, \
                         while the K-theory of a separable dual must be countable.",
                    );
                }
                s
            }
        }
    }
}

impl fmt::Display for DualVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualVerdict::Exists(g) => write!(f, "exists: dual has K-theory {}", g),
            DualVerdict::NotExists { .. } => write!(f, "does not exist: {}", self.reason()),
        }
    }
}

/// Decides dual existence for the object with `K0` presented by `s0` and
/// `K1` by `s1`. When both colimits are finitely generated the dual is
/// computed by the duality functor; otherwise the verdict names the
/// failing degree and, for free divisible-directed tails, the
/// uncountability mechanism.
pub fn dual_verdict(s0: &DirectSystem, s1: &DirectSystem, parity: Parity) -> DualVerdict {
    let mut colimits = Vec::with_capacity(2);
    for (degree, system) in [(0u8, s0), (1u8, s1)] {
        let t = analyze_tail(system);
        if t.induced.is_surjective() {
            colimits.push(t.reduced);
        } else {
            let mechanism = if t.reduced.is_free() {
                NonExistenceMechanism::TorsionFreeDivisible
            } else {
                NonExistenceMechanism::NotFinitelyGenerated
            };
            return DualVerdict::NotExists { degree, mechanism };
        }
    }
    let k1 = colimits.pop().expect("two colimits");
    let k0 = colimits.pop().expect("two colimits");
    DualVerdict::Exists(kkobj::dual(&GradedGroup::new(k0, k1), parity))
}
