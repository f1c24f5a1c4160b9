//! Hydrogen-suppressed molecular graph with ring, aromaticity, and charge
//! annotations.

use crate::element::Element;

/// Parsed-but-ignored tetrahedral stereo marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiralTag {
    Ccw,
    Cw,
}

/// Parsed-but-ignored directional bond marker (/ or \).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondDir {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BondOrder {
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondOrder {
    /// Contribution to an atom's valence; aromatic bonds count as the sigma
    /// framework only, the pi electron is tracked by the Kekule assignment.
    pub fn valence_contribution(self) -> u8 {
        match self {
            BondOrder::Single | BondOrder::Aromatic => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Atom {
    pub element: Element,
    pub formal_charge: i8,
    /// Hydrogens written explicitly in a bracket atom.
    pub explicit_h: u8,
    /// Hydrogens filled in from the valence table.
    pub implicit_h: u8,
    pub aromatic: bool,
    pub isotope: Option<u16>,
    /// Stereo annotation, preserved but ignored by all descriptors.
    pub chirality: Option<ChiralTag>,
    // Derived during perception.
    pub in_ring: bool,
    pub degree: u8,
}

impl Atom {
    pub fn total_h(&self) -> u8 {
        self.explicit_h + self.implicit_h
    }
}

#[derive(Debug, Clone)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: BondOrder,
    /// Single/double assignment chosen for aromatic bonds by kekulization;
    /// equals `order` everywhere else.
    pub kekule: BondOrder,
    pub dir: Option<BondDir>,
    pub in_ring: bool,
}

impl Bond {
    pub fn other(&self, atom: usize) -> usize {
        if self.a == atom {
            self.b
        } else {
            self.a
        }
    }
}

/// Smallest set of smallest rings plus per-molecule ring summaries.
#[derive(Debug, Clone, Default)]
pub struct RingInfo {
    /// Each ring is a cycle of atom indices in traversal order.
    pub rings: Vec<Vec<usize>>,
    pub max_size: usize,
    /// Atoms shared by exactly two rings that have no bond in common.
    pub spiro_atoms: Vec<usize>,
}

impl RingInfo {
    /// Number of SSSR rings containing the atom.
    pub fn membership_count(&self, atom: usize) -> usize {
        self.rings.iter().filter(|r| r.contains(&atom)).count()
    }

    /// Size of the smallest SSSR ring containing the atom, or 0.
    pub fn min_ring_size(&self, atom: usize) -> usize {
        self.rings
            .iter()
            .filter(|r| r.contains(&atom))
            .map(|r| r.len())
            .min()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct Molecule {
    pub atoms: Vec<Atom>,
    pub bonds: Vec<Bond>,
    pub rings: RingInfo,
    /// The SMILES text this molecule was parsed from.
    pub source: String,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Molecule {
    pub(crate) fn new(atoms: Vec<Atom>, bonds: Vec<Bond>, source: String) -> Molecule {
        let mut adjacency = vec![Vec::new(); atoms.len()];
        for (i, bond) in bonds.iter().enumerate() {
            adjacency[bond.a].push((bond.b, i));
            adjacency[bond.b].push((bond.a, i));
        }
        Molecule {
            atoms,
            bonds,
            rings: RingInfo::default(),
            source,
            adjacency,
        }
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn num_bonds(&self) -> usize {
        self.bonds.len()
    }

    /// Neighbor atom indices paired with the connecting bond index.
    pub fn neighbors(&self, atom: usize) -> &[(usize, usize)] {
        &self.adjacency[atom]
    }

    pub fn bond_between(&self, a: usize, b: usize) -> Option<&Bond> {
        self.adjacency[a]
            .iter()
            .find(|(n, _)| *n == b)
            .map(|&(_, i)| &self.bonds[i])
    }

    /// Sum of bond orders at an atom using the Kekule assignment.
    pub fn kekule_valence_sum(&self, atom: usize) -> u8 {
        self.adjacency[atom]
            .iter()
            .map(|&(_, b)| self.bonds[b].kekule.valence_contribution())
            .sum()
    }

    /// Total valence: Kekule bond-order sum plus all hydrogens.
    pub fn total_valence(&self, atom: usize) -> u8 {
        self.kekule_valence_sum(atom) + self.atoms[atom].total_h()
    }

    /// Connected components as lists of atom indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.atoms.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(a) = stack.pop() {
                for &(nb, _) in &self.adjacency[a] {
                    if !seen[nb] {
                        seen[nb] = true;
                        comp.push(nb);
                        stack.push(nb);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Rebuild the molecule with atoms renumbered by `perm`, where atom `i`
    /// moves to position `perm[i]`. Ring and aromaticity annotations carry
    /// over unchanged.
    pub fn permuted(&self, perm: &[usize]) -> Molecule {
        assert_eq!(perm.len(), self.atoms.len());
        let mut atoms = vec![None; self.atoms.len()];
        for (i, atom) in self.atoms.iter().enumerate() {
            atoms[perm[i]] = Some(atom.clone());
        }
        let atoms: Vec<Atom> = atoms.into_iter().map(Option::unwrap).collect();
        let mut bonds: Vec<Bond> = self
            .bonds
            .iter()
            .map(|b| {
                let (a, bb) = (perm[b.a], perm[b.b]);
                Bond {
                    a: a.min(bb),
                    b: a.max(bb),
                    ..b.clone()
                }
            })
            .collect();
        bonds.sort_by_key(|b| (b.a, b.b));
        let mut out = Molecule::new(atoms, bonds, self.source.clone());
        out.rings = RingInfo {
            rings: self
                .rings
                .rings
                .iter()
                .map(|r| r.iter().map(|&a| perm[a]).collect())
                .collect(),
            max_size: self.rings.max_size,
            spiro_atoms: {
                let mut s: Vec<usize> = self.rings.spiro_atoms.iter().map(|&a| perm[a]).collect();
                s.sort_unstable();
                s
            },
        };
        out
    }
}
