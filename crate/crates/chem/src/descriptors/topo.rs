//! Kier-Hall connectivity (chi) and shape (kappa) indices over the
//! heavy-atom graph.

use crate::element::Element;
use crate::error::ChemError;
use crate::mol::Molecule;

/// Calls `f` once per simple path with `edges` bonds, each undirected path
/// visited exactly once.
fn for_each_path(mol: &Molecule, edges: usize, f: &mut dyn FnMut(&[usize])) {
    if edges == 0 {
        for i in 0..mol.num_atoms() {
            f(&[i]);
        }
        return;
    }
    let mut path = Vec::with_capacity(edges + 1);
    for start in 0..mol.num_atoms() {
        path.push(start);
        extend_path(mol, edges, &mut path, f);
        path.pop();
    }
}

fn extend_path(mol: &Molecule, edges: usize, path: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if path.len() == edges + 1 {
        // Count each undirected path once.
        if path[0] < path[path.len() - 1] {
            f(path);
        }
        return;
    }
    let last = *path.last().unwrap();
    for &(nb, _) in mol.neighbors(last) {
        if path.contains(&nb) {
            continue;
        }
        path.push(nb);
        extend_path(mol, edges, path, f);
        path.pop();
    }
}

/// Number of simple paths with `edges` bonds.
pub fn path_count(mol: &Molecule, edges: usize) -> u64 {
    let mut n = 0u64;
    for_each_path(mol, edges, &mut |_| n += 1);
    n
}

/// Simple delta: heavy-atom degree.
fn delta_simple(mol: &Molecule, idx: usize) -> f64 {
    mol.atoms[idx].degree as f64
}

/// Valence delta: Zv - h for second-row atoms, (Zv - h)/(Z - Zv - 1)
/// otherwise. Atoms without a valence-electron entry fall back to the simple
/// delta.
fn delta_valence(mol: &Molecule, idx: usize) -> f64 {
    let atom = &mol.atoms[idx];
    let h = atom.total_h() as f64;
    match atom.element.valence_electrons() {
        Some(zv) => {
            let zv = zv as f64;
            if atom.element.is_second_row() || atom.element == Element::H {
                zv - h
            } else {
                let z = atom.element.atomic_number() as f64;
                (zv - h) / (z - zv - 1.0)
            }
        }
        None => delta_simple(mol, idx),
    }
}

/// Kier-Hall connectivity index of the given order. Atoms with delta 0
/// contribute nothing, by convention.
pub fn chi_index(mol: &Molecule, order: usize, valence: bool) -> Result<f64, ChemError> {
    if order > 4 {
        return Err(ChemError::UndefinedValue(format!(
            "chi order {order} exceeds the supported maximum of 4"
        )));
    }
    let delta = |i: usize| {
        if valence {
            delta_valence(mol, i)
        } else {
            delta_simple(mol, i)
        }
    };
    let mut total = 0.0;
    for_each_path(mol, order, &mut |path| {
        let mut product = 1.0;
        for &i in path {
            let d = delta(i);
            if d <= 0.0 {
                product = 0.0;
                break;
            }
            product *= d;
        }
        if product > 0.0 {
            total += 1.0 / product.sqrt();
        }
    });
    Ok(total)
}

/// Kier shape indices without the alpha heavy-atom correction.
pub fn kappa_index(mol: &Molecule, order: usize) -> Result<f64, ChemError> {
    let a = mol.num_atoms() as f64;
    if !(1..=3).contains(&order) {
        return Err(ChemError::UndefinedValue(format!(
            "kappa order {order} outside 1..=3"
        )));
    }
    if mol.num_atoms() < order + 1 {
        return Err(ChemError::UndefinedValue(format!(
            "kappa{order} needs at least {} heavy atoms",
            order + 1
        )));
    }
    let p = path_count(mol, order) as f64;
    if p == 0.0 {
        return Err(ChemError::UndefinedValue(format!(
            "kappa{order} undefined: no paths of length {order}"
        )));
    }
    let value = match order {
        1 => a * (a - 1.0).powi(2) / (p * p),
        2 => (a - 1.0) * (a - 2.0).powi(2) / (p * p),
        _ => {
            if mol.num_atoms() % 2 == 1 {
                (a - 1.0) * (a - 3.0).powi(2) / (p * p)
            } else {
                (a - 3.0) * (a - 2.0).powi(2) / (p * p)
            }
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;

    fn m(s: &str) -> Molecule {
        parse_smiles(s).unwrap()
    }

    #[test]
    fn benzene_chi_valence() {
        let benzene = m("c1ccccc1");
        // Six aromatic CH atoms with delta-v = 3.
        let chi0v = chi_index(&benzene, 0, true).unwrap();
        assert!((chi0v - 6.0 / 3f64.sqrt()).abs() < 1e-9);
        assert!((chi0v - 3.4641).abs() < 1e-4);
        let chi1v = chi_index(&benzene, 1, true).unwrap();
        assert!((chi1v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn pentane_chi_simple() {
        let pentane = m("CCCCC");
        let chi0 = chi_index(&pentane, 0, false).unwrap();
        let expected = 2.0 / 1f64.sqrt() + 3.0 / 2f64.sqrt();
        assert!((chi0 - expected).abs() < 1e-9);
        assert!((chi0 - 4.1213).abs() < 1e-4);
    }

    #[test]
    fn pentane_kappas() {
        let pentane = m("CCCCC");
        assert!((kappa_index(&pentane, 1).unwrap() - 5.0).abs() < 1e-12);
        assert!((kappa_index(&pentane, 2).unwrap() - 4.0).abs() < 1e-12);
        assert!((kappa_index(&pentane, 3).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn path_counts() {
        let pentane = m("CCCCC");
        assert_eq!(path_count(&pentane, 1), 4);
        assert_eq!(path_count(&pentane, 2), 3);
        assert_eq!(path_count(&pentane, 3), 2);
        let benzene = m("c1ccccc1");
        assert_eq!(path_count(&benzene, 1), 6);
        assert_eq!(path_count(&benzene, 2), 6);
    }

    #[test]
    fn kappa_errors() {
        assert!(kappa_index(&m("CC"), 2).is_err());
        assert!(kappa_index(&m("C"), 1).is_err());
    }

    #[test]
    fn chi_isolated_atom_contributes_zero() {
        let na = m("[Na+].[Na+]");
        assert!((chi_index(&na, 0, false).unwrap()).abs() < 1e-12);
    }
}
