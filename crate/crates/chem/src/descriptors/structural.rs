//! Structural counts: atoms, rings by class, rotatable bonds, hydrogen-bond
//! donors/acceptors, hybridization fractions, and stereocenter detection.

use crate::element::Element;
use crate::error::ChemError;
use crate::mol::{BondOrder, Molecule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralCounts {
    /// Every atom including implicit hydrogens.
    pub num_atoms: u64,
    pub num_heavy: u64,
    pub num_bonds: u64,
    pub num_heteroatoms: u64,
    pub num_aromatic_rings: u64,
    pub num_saturated_rings: u64,
    pub num_stereocenters_unassigned: u64,
}

pub fn structural_counts(mol: &Molecule) -> StructuralCounts {
    let heavy = mol.num_atoms() as u64;
    let hydrogens: u64 = mol.atoms.iter().map(|a| a.total_h() as u64).sum();
    let hetero = mol
        .atoms
        .iter()
        .filter(|a| a.element != Element::C)
        .count() as u64;
    StructuralCounts {
        num_atoms: heavy + hydrogens,
        num_heavy: heavy,
        num_bonds: mol.num_bonds() as u64,
        num_heteroatoms: hetero,
        num_aromatic_rings: count_rings(mol, RingClass::Aromatic, RingComposition::Any),
        num_saturated_rings: count_rings(mol, RingClass::Saturated, RingComposition::Any),
        num_stereocenters_unassigned: unspecified_stereocenters(mol),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum RingClass {
    Aromatic,
    Saturated,
    /// At least one non-aromatic bond.
    Aliphatic,
    Any,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum RingComposition {
    CarbocycleOnly,
    HeterocycleOnly,
    Any,
}

/// Counts SSSR rings by bond class and atom composition.
pub fn count_rings(mol: &Molecule, class: RingClass, composition: RingComposition) -> u64 {
    mol.rings
        .rings
        .iter()
        .filter(|ring| {
            let orders: Vec<BondOrder> = ring_bond_orders(mol, ring);
            let class_ok = match class {
                RingClass::Aromatic => orders.iter().all(|&o| o == BondOrder::Aromatic),
                RingClass::Saturated => orders.iter().all(|&o| o == BondOrder::Single),
                RingClass::Aliphatic => orders.iter().any(|&o| o != BondOrder::Aromatic),
                RingClass::Any => true,
            };
            let hetero = ring.iter().any(|&a| mol.atoms[a].element != Element::C);
            let comp_ok = match composition {
                RingComposition::CarbocycleOnly => !hetero,
                RingComposition::HeterocycleOnly => hetero,
                RingComposition::Any => true,
            };
            class_ok && comp_ok
        })
        .count() as u64
}

fn ring_bond_orders(mol: &Molecule, ring: &[usize]) -> Vec<BondOrder> {
    (0..ring.len())
        .filter_map(|w| {
            let a = ring[w];
            let b = ring[(w + 1) % ring.len()];
            mol.bond_between(a, b).map(|bond| bond.order)
        })
        .collect()
}

/// Non-ring single bonds between two atoms of heavy degree >= 2. Strict mode
/// additionally drops amide C-N bonds.
pub fn rotatable_bonds(mol: &Molecule, strict: bool) -> u64 {
    mol.bonds
        .iter()
        .filter(|b| {
            if b.order != BondOrder::Single || b.in_ring {
                return false;
            }
            if mol.atoms[b.a].degree < 2 || mol.atoms[b.b].degree < 2 {
                return false;
            }
            if strict {
                let amide = (mol.atoms[b.a].element == Element::N && is_carbonyl_carbon(mol, b.b))
                    || (mol.atoms[b.b].element == Element::N && is_carbonyl_carbon(mol, b.a));
                if amide {
                    return false;
                }
            }
            true
        })
        .count() as u64
}

fn is_carbonyl_carbon(mol: &Molecule, idx: usize) -> bool {
    mol.atoms[idx].element == Element::C
        && mol.neighbors(idx).iter().any(|&(nb, b)| {
            mol.bonds[b].kekule == BondOrder::Double && mol.atoms[nb].element == Element::O
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HBondCounts {
    /// N/O atoms carrying at least one hydrogen.
    pub hbd: u64,
    /// N/O acceptors after excluding pyrrole-type nitrogens, amide and
    /// positively charged nitrogens (rule set shipped in the registry data).
    pub hba: u64,
    /// Total count of N-H and O-H hydrogens.
    pub lipinski_hbd: u64,
    /// Total count of N and O atoms.
    pub lipinski_hba: u64,
}

pub fn hbond_counts(mol: &Molecule) -> HBondCounts {
    let mut hbd = 0;
    let mut hba = 0;
    let mut lip_hbd = 0;
    let mut lip_hba = 0;
    for (i, atom) in mol.atoms.iter().enumerate() {
        let is_n = atom.element == Element::N;
        let is_o = atom.element == Element::O;
        if !is_n && !is_o {
            continue;
        }
        lip_hba += 1;
        lip_hbd += atom.total_h() as u64;
        if atom.total_h() > 0 {
            hbd += 1;
        }
        if is_o {
            // Oxygens accept unless they sit in a nitro group.
            if !in_nitro_group(mol, i) {
                hba += 1;
            }
        } else {
            let positively_charged = atom.formal_charge > 0;
            let pyrrole_type =
                atom.aromatic && (atom.degree == 3 || atom.total_h() > 0);
            let amide = mol
                .neighbors(i)
                .iter()
                .any(|&(nb, b)| {
                    mol.bonds[b].order == BondOrder::Single && is_carbonyl_carbon(mol, nb)
                });
            let nitro = is_nitro_nitrogen(mol, i);
            if !positively_charged && !pyrrole_type && !amide && !nitro {
                hba += 1;
            }
        }
    }
    HBondCounts {
        hbd,
        hba,
        lipinski_hbd: lip_hbd,
        lipinski_hba: lip_hba,
    }
}

fn is_nitro_nitrogen(mol: &Molecule, idx: usize) -> bool {
    if mol.atoms[idx].element != Element::N {
        return false;
    }
    let oxygens = mol
        .neighbors(idx)
        .iter()
        .filter(|&&(nb, _)| {
            mol.atoms[nb].element == Element::O && mol.atoms[nb].degree == 1
        })
        .count();
    oxygens >= 2
}

fn in_nitro_group(mol: &Molecule, idx: usize) -> bool {
    mol.neighbors(idx)
        .iter()
        .any(|&(nb, _)| is_nitro_nitrogen(mol, nb))
}

/// sp3 carbons / all carbons. Errors when the molecule has no carbon.
pub fn fraction_csp3(mol: &Molecule) -> Result<f64, ChemError> {
    let carbons: Vec<usize> = (0..mol.num_atoms())
        .filter(|&i| mol.atoms[i].element == Element::C)
        .collect();
    if carbons.is_empty() {
        return Err(ChemError::UndefinedValue(
            "fraction Csp3 of a molecule with no carbon".into(),
        ));
    }
    let sp3 = carbons
        .iter()
        .filter(|&&i| {
            !mol.atoms[i].aromatic
                && mol
                    .neighbors(i)
                    .iter()
                    .all(|&(_, b)| mol.bonds[b].kekule == BondOrder::Single)
        })
        .count();
    Ok(sp3 as f64 / carbons.len() as f64)
}

/// Single C-N bonds where the carbon has a double bond to oxygen.
pub fn amide_bond_count(mol: &Molecule) -> u64 {
    mol.bonds
        .iter()
        .filter(|b| {
            b.order == BondOrder::Single
                && ((mol.atoms[b.a].element == Element::N && is_carbonyl_carbon(mol, b.b))
                    || (mol.atoms[b.b].element == Element::N && is_carbonyl_carbon(mol, b.a)))
        })
        .count() as u64
}

/// Potential tetrahedral stereocenters: non-aromatic carbons whose four
/// substituent environments (implicit hydrogens included) are pairwise
/// distinct. Environments are compared by a bounded-depth neighborhood hash
/// that never walks back through the center.
pub fn potential_stereocenters(mol: &Molecule) -> Vec<usize> {
    (0..mol.num_atoms())
        .filter(|&i| {
            let atom = &mol.atoms[i];
            if atom.element != Element::C || atom.aromatic {
                return false;
            }
            if atom.degree + atom.total_h() != 4 || atom.total_h() > 1 {
                return false;
            }
            if mol
                .neighbors(i)
                .iter()
                .any(|&(_, b)| mol.bonds[b].kekule != BondOrder::Single)
            {
                return false;
            }
            let mut sigs: Vec<u64> = mol
                .neighbors(i)
                .iter()
                .map(|&(nb, _)| environment_signature(mol, nb, i))
                .collect();
            if atom.total_h() == 1 {
                sigs.push(u64::MAX); // implicit hydrogen branch
            }
            sigs.sort_unstable();
            sigs.windows(2).all(|w| w[0] != w[1])
        })
        .collect()
}

pub fn unspecified_stereocenters(mol: &Molecule) -> u64 {
    potential_stereocenters(mol)
        .iter()
        .filter(|&&i| mol.atoms[i].chirality.is_none())
        .count() as u64
}

/// Layered BFS hash of the branch rooted at `start`, with `blocked` removed
/// from the graph.
fn environment_signature(mol: &Molecule, start: usize, blocked: usize) -> u64 {
    let mut dist = vec![usize::MAX; mol.num_atoms()];
    let mut queue = std::collections::VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    let mut layers: Vec<Vec<u64>> = Vec::new();
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        if d >= 8 {
            continue;
        }
        let a = &mol.atoms[v];
        let code = (a.element.atomic_number() as u64) << 24
            | (a.total_h() as u64) << 16
            | (a.degree as u64) << 8
            | (a.aromatic as u64) << 4
            | ((a.formal_charge as i64 + 8) as u64);
        if layers.len() <= d {
            layers.resize(d + 1, Vec::new());
        }
        layers[d].push(code);
        for &(nb, b) in mol.neighbors(v) {
            if nb == blocked || dist[nb] != usize::MAX {
                continue;
            }
            let _ = b;
            dist[nb] = d + 1;
            queue.push_back(nb);
        }
    }
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for mut layer in layers {
        layer.sort_unstable();
        for code in layer {
            hash ^= code;
            hash = hash.wrapping_mul(0x1000_0000_01b3);
        }
        hash ^= 0xffff;
        hash = hash.wrapping_mul(0x1000_0000_01b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;

    fn m(s: &str) -> Molecule {
        parse_smiles(s).unwrap()
    }

    #[test]
    fn counts_for_ethanol() {
        let c = structural_counts(&m("CCO"));
        assert_eq!(c.num_atoms, 9);
        assert_eq!(c.num_heavy, 3);
        assert_eq!(c.num_heteroatoms, 1);
        assert_eq!(c.num_bonds, 2);
    }

    #[test]
    fn ring_classes() {
        assert_eq!(structural_counts(&m("c1ccccc1")).num_aromatic_rings, 1);
        assert_eq!(structural_counts(&m("c1ccccc1")).num_saturated_rings, 0);
        assert_eq!(structural_counts(&m("C1CCCCC1")).num_saturated_rings, 1);
        assert_eq!(
            count_rings(&m("C1CCNCC1"), RingClass::Saturated, RingComposition::HeterocycleOnly),
            1
        );
        assert_eq!(
            count_rings(&m("C1=CCCCC1"), RingClass::Aliphatic, RingComposition::Any),
            1
        );
        assert_eq!(
            count_rings(&m("C1=CCCCC1"), RingClass::Saturated, RingComposition::Any),
            0
        );
    }

    #[test]
    fn rotatable_bond_rules() {
        assert_eq!(rotatable_bonds(&m("CCCC"), true), 1);
        assert_eq!(rotatable_bonds(&m("c1ccccc1"), true), 0);
        assert_eq!(rotatable_bonds(&m("CC(=O)NC"), true), 0);
        assert_eq!(rotatable_bonds(&m("CC(=O)NC"), false), 1);
        assert_eq!(rotatable_bonds(&m("CCc1ccccc1"), true), 1);
    }

    #[test]
    fn hbond_rules() {
        let ethanol = hbond_counts(&m("CCO"));
        assert_eq!(ethanol.lipinski_hbd, 1);
        assert_eq!(ethanol.lipinski_hba, 1);
        assert_eq!(ethanol.hbd, 1);
        assert_eq!(ethanol.hba, 1);

        let benzene = hbond_counts(&m("c1ccccc1"));
        assert_eq!(
            (benzene.hbd, benzene.hba, benzene.lipinski_hbd, benzene.lipinski_hba),
            (0, 0, 0, 0)
        );

        let aniline = hbond_counts(&m("Nc1ccccc1"));
        assert_eq!(aniline.lipinski_hbd, 2);
        assert_eq!(aniline.lipinski_hba, 1);
        assert_eq!(aniline.hbd, 1);

        // Amide nitrogen does not accept; carbonyl oxygen does.
        let acetamide = hbond_counts(&m("CC(=O)N"));
        assert_eq!(acetamide.hba, 1);
        // Pyrrole nitrogen donates but does not accept; pyridine accepts.
        assert_eq!(hbond_counts(&m("c1cc[nH]c1")).hba, 0);
        assert_eq!(hbond_counts(&m("c1ccncc1")).hba, 1);
    }

    #[test]
    fn csp3_fractions() {
        assert!((fraction_csp3(&m("CC")).unwrap() - 1.0).abs() < 1e-12);
        assert!((fraction_csp3(&m("c1ccccc1")).unwrap()).abs() < 1e-12);
        assert!((fraction_csp3(&m("CCc1ccccc1")).unwrap() - 0.25).abs() < 1e-12);
        assert!(fraction_csp3(&m("[NH4+]")).is_err());
    }

    #[test]
    fn amide_bonds() {
        assert_eq!(amide_bond_count(&m("CC(=O)NC")), 1);
        assert_eq!(amide_bond_count(&m("CCO")), 0);
        assert_eq!(amide_bond_count(&m("NC(=O)CC(=O)N")), 2);
    }

    #[test]
    fn stereocenters() {
        // Bromochlorofluoromethane has one stereocenter.
        assert_eq!(potential_stereocenters(&m("FC(Cl)Br")).len(), 1);
        assert_eq!(potential_stereocenters(&m("CC(C)C")).len(), 0);
        // Alanine alpha carbon.
        assert_eq!(potential_stereocenters(&m("CC(N)C(=O)O")).len(), 1);
        // A specified center is no longer unassigned.
        assert_eq!(unspecified_stereocenters(&m("C[C@H](N)C(=O)O")), 0);
        assert_eq!(unspecified_stereocenters(&m("CC(N)C(=O)O")), 1);
    }
}
