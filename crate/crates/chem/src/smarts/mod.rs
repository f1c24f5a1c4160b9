//! SMARTS subset: element, aromaticity, charge, hydrogen-count, degree,
//! connectivity, valence, and ring primitives with full `!`/`&`/`,`/`;`
//! logic. Recursive SMARTS, stereo-SMARTS, and component grouping are
//! rejected with a structured unsupported-feature error.

mod matcher;
mod parser;

pub use matcher::{count_matches, find_matches, has_match};
pub use parser::parse_smarts;

use crate::element::Element;
use crate::mol::{BondOrder, Molecule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomPrim {
    /// `*`
    Wildcard,
    /// `a`
    Aromatic,
    /// `A`
    Aliphatic,
    /// Element symbol; `aromatic` is None for `#n` (either form).
    Element { z: u8, aromatic: Option<bool> },
    /// `Hn`: total hydrogen count.
    TotalH(u8),
    /// `hn`: implicit hydrogen count.
    ImplicitH(u8),
    /// `Dn`: heavy-atom degree.
    Degree(u8),
    /// `Xn`: degree plus total hydrogens.
    Connectivity(u8),
    /// `vn`: bond-order sum plus total hydrogens.
    Valence(u8),
    /// `R` (any ring), `R0` (no ring), `Rn` (exactly n SSSR rings).
    InRings(Option<u8>),
    /// `r` (any ring), `rn` (member of an SSSR ring of size n).
    RingSize(Option<u8>),
    /// `+n` / `-n`.
    Charge(i8),
}

/// `;`-joined groups of `,`-joined alternatives of `&`-joined (possibly
/// negated) primitives.
#[derive(Debug, Clone, Default)]
pub struct AtomExpr {
    pub groups: Vec<Vec<Vec<(bool, AtomPrim)>>>,
}

impl AtomExpr {
    pub fn matches(&self, mol: &Molecule, idx: usize) -> bool {
        self.groups.iter().all(|group| {
            group.iter().any(|alt| {
                alt.iter()
                    .all(|(negated, prim)| prim.eval(mol, idx) != *negated)
            })
        })
    }
}

impl AtomPrim {
    fn eval(&self, mol: &Molecule, idx: usize) -> bool {
        let atom = &mol.atoms[idx];
        match self {
            AtomPrim::Wildcard => true,
            AtomPrim::Aromatic => atom.aromatic,
            AtomPrim::Aliphatic => !atom.aromatic,
            AtomPrim::Element { z, aromatic } => {
                atom.element == Element(*z)
                    && aromatic.map_or(true, |want| atom.aromatic == want)
            }
            AtomPrim::TotalH(n) => atom.total_h() == *n,
            AtomPrim::ImplicitH(n) => atom.implicit_h == *n,
            AtomPrim::Degree(n) => atom.degree == *n,
            AtomPrim::Connectivity(n) => atom.degree + atom.total_h() == *n,
            AtomPrim::Valence(n) => mol.total_valence(idx) == *n,
            AtomPrim::InRings(None) => atom.in_ring,
            AtomPrim::InRings(Some(0)) => !atom.in_ring,
            AtomPrim::InRings(Some(n)) => mol.rings.membership_count(idx) == *n as usize,
            AtomPrim::RingSize(None) => atom.in_ring,
            AtomPrim::RingSize(Some(n)) => mol
                .rings
                .rings
                .iter()
                .any(|r| r.len() == *n as usize && r.contains(&idx)),
            AtomPrim::Charge(q) => atom.formal_charge == *q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondPrim {
    Single,
    Double,
    Triple,
    Aromatic,
    /// `~`
    Any,
    /// `@`
    InRing,
    /// Elided bond: single or aromatic.
    Default,
}

#[derive(Debug, Clone, Default)]
pub struct BondExpr {
    pub groups: Vec<Vec<Vec<(bool, BondPrim)>>>,
}

impl BondExpr {
    pub fn single() -> BondExpr {
        BondExpr {
            groups: vec![vec![vec![(false, BondPrim::Default)]]],
        }
    }

    pub fn matches(&self, mol: &Molecule, bond_idx: usize) -> bool {
        self.groups.iter().all(|group| {
            group.iter().any(|alt| {
                alt.iter()
                    .all(|(negated, prim)| prim.eval(mol, bond_idx) != *negated)
            })
        })
    }
}

impl BondPrim {
    fn eval(&self, mol: &Molecule, bond_idx: usize) -> bool {
        let bond = &mol.bonds[bond_idx];
        match self {
            BondPrim::Single => bond.order == BondOrder::Single,
            BondPrim::Double => bond.order == BondOrder::Double,
            BondPrim::Triple => bond.order == BondOrder::Triple,
            BondPrim::Aromatic => bond.order == BondOrder::Aromatic,
            BondPrim::Any => true,
            BondPrim::InRing => bond.in_ring,
            BondPrim::Default => {
                matches!(bond.order, BondOrder::Single | BondOrder::Aromatic)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct PatternBond {
    pub a: usize,
    pub b: usize,
    pub expr: BondExpr,
}

/// A compiled pattern graph. Always connected.
#[derive(Debug, Clone)]
pub struct SmartsPattern {
    pub atoms: Vec<AtomExpr>,
    pub bonds: Vec<PatternBond>,
    pub source: String,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl SmartsPattern {
    pub(crate) fn new(atoms: Vec<AtomExpr>, bonds: Vec<PatternBond>, source: String) -> Self {
        let mut adjacency = vec![Vec::new(); atoms.len()];
        for (i, b) in bonds.iter().enumerate() {
            adjacency[b.a].push((b.b, i));
            adjacency[b.b].push((b.a, i));
        }
        SmartsPattern {
            atoms,
            bonds,
            source,
            adjacency,
        }
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn neighbors(&self, idx: usize) -> &[(usize, usize)] {
        &self.adjacency[idx]
    }

    pub fn bond_expr_between(&self, a: usize, b: usize) -> Option<&BondExpr> {
        self.adjacency[a]
            .iter()
            .find(|(n, _)| *n == b)
            .map(|&(_, i)| &self.bonds[i].expr)
    }
}
