//! Backtracking subgraph matching with most-constrained-first atom ordering.

use crate::mol::Molecule;

use super::SmartsPattern;

/// All injective, bond-consistent assignments pattern atom -> target atom.
/// With `unique_sets`, assignments covering the same target atom set are
/// collapsed to one (fragment-counter semantics).
pub fn find_matches(pattern: &SmartsPattern, mol: &Molecule, unique_sets: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(pattern, mol, false, &mut out);
    if unique_sets {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        out.retain(|mapping| {
            let mut key = mapping.clone();
            key.sort_unstable();
            if seen.contains(&key) {
                false
            } else {
                seen.push(key);
                true
            }
        });
    }
    out
}

pub fn count_matches(pattern: &SmartsPattern, mol: &Molecule, unique_sets: bool) -> usize {
    find_matches(pattern, mol, unique_sets).len()
}

pub fn has_match(pattern: &SmartsPattern, mol: &Molecule) -> bool {
    let mut out = Vec::new();
    search(pattern, mol, true, &mut out);
    !out.is_empty()
}

/// Static search order: start at the most constrained pattern atom, then
/// grow through the pattern graph so every placed atom connects to an
/// already-placed one.
fn search_order(pattern: &SmartsPattern) -> Vec<usize> {
    let n = pattern.num_atoms();
    let score = |i: usize| -> (usize, usize) {
        let prims: usize = pattern.atoms[i]
            .groups
            .iter()
            .flat_map(|g| g.iter())
            .map(|alt| alt.len())
            .sum();
        (prims, pattern.neighbors(i).len())
    };
    let start = (0..n).max_by_key(|&i| score(i)).unwrap_or(0);
    let mut order = vec![start];
    let mut placed = vec![false; n];
    placed[start] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .filter(|&i| pattern.neighbors(i).iter().any(|&(nb, _)| placed[nb]))
            .max_by_key(|&i| score(i))
            .expect("pattern is connected");
        placed[next] = true;
        order.push(next);
    }
    order
}

fn search(
    pattern: &SmartsPattern,
    mol: &Molecule,
    first_only: bool,
    out: &mut Vec<Vec<usize>>,
) {
    let order = search_order(pattern);
    let mut assignment: Vec<Option<usize>> = vec![None; pattern.num_atoms()];
    let mut used = vec![false; mol.num_atoms()];
    extend(
        pattern,
        mol,
        &order,
        0,
        &mut assignment,
        &mut used,
        first_only,
        out,
    );
}

#[allow(clippy::too_many_arguments)]
fn extend(
    pattern: &SmartsPattern,
    mol: &Molecule,
    order: &[usize],
    depth: usize,
    assignment: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    first_only: bool,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == order.len() {
        out.push(
            assignment
                .iter()
                .map(|a| a.expect("complete assignment"))
                .collect(),
        );
        return;
    }
    if first_only && !out.is_empty() {
        return;
    }
    let p_atom = order[depth];

    // Candidates: neighbors of an already-assigned pattern neighbor when one
    // exists (always, except at depth 0), otherwise all atoms.
    let anchored: Option<(usize, usize)> = pattern
        .neighbors(p_atom)
        .iter()
        .find(|&&(nb, _)| assignment[nb].is_some())
        .map(|&(nb, b)| (assignment[nb].unwrap(), b));

    let candidates: Vec<usize> = match anchored {
        Some((t_anchor, _)) => mol.neighbors(t_anchor).iter().map(|&(n, _)| n).collect(),
        None => (0..mol.num_atoms()).collect(),
    };

    for t_atom in candidates {
        if used[t_atom] || !pattern.atoms[p_atom].matches(mol, t_atom) {
            continue;
        }
        // Every bond to an assigned pattern neighbor must exist and match.
        let mut ok = true;
        for &(p_nb, p_bond) in pattern.neighbors(p_atom) {
            if let Some(t_nb) = assignment[p_nb] {
                match mol
                    .neighbors(t_atom)
                    .iter()
                    .find(|&&(n, _)| n == t_nb)
                    .map(|&(_, b)| b)
                {
                    Some(t_bond) => {
                        if !pattern.bonds[p_bond].expr.matches(mol, t_bond) {
                            ok = false;
                            break;
                        }
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        assignment[p_atom] = Some(t_atom);
        used[t_atom] = true;
        extend(pattern, mol, order, depth + 1, assignment, used, first_only, out);
        assignment[p_atom] = None;
        used[t_atom] = false;
        if first_only && !out.is_empty() {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::smarts::parse_smarts;
    use crate::smiles::parse_smiles;

    use super::*;

    fn m(s: &str) -> crate::mol::Molecule {
        parse_smiles(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn hydroxyl_predicate() {
        let p = parse_smarts("[O;H1]").unwrap();
        assert_eq!(count_matches(&p, &m("CCO"), true), 1);
        assert_eq!(count_matches(&p, &m("CCCC"), true), 0);
        assert_eq!(count_matches(&p, &m("OCCO"), true), 2);
    }

    #[test]
    fn benzene_pattern_symmetry_dedup() {
        let p = parse_smarts("c1ccccc1").unwrap();
        let benzene = m("c1ccccc1");
        assert_eq!(count_matches(&p, &benzene, false), 12);
        assert_eq!(count_matches(&p, &benzene, true), 1);
        assert_eq!(count_matches(&p, &m("c1ccc2ccccc2c1"), true), 2);
    }

    #[test]
    fn recursive_smarts_rejected() {
        let err = parse_smarts("[$(cc)]").unwrap_err();
        assert!(err.to_string().contains("recursive"), "{err}");
    }

    #[test]
    fn aromatic_oh_on_phenol() {
        let p = parse_smarts("[O;H1][c]").unwrap();
        assert_eq!(count_matches(&p, &m("Oc1ccccc1"), true), 1);
        assert_eq!(count_matches(&p, &m("OCc1ccccc1"), true), 0);
    }

    #[test]
    fn pyridine_nitrogen() {
        let p = parse_smarts("[n]").unwrap();
        assert!(has_match(&p, &m("c1ccncc1")));
        assert!(!has_match(&p, &m("c1ccccc1")));
    }

    #[test]
    fn seven_ring_absent_in_benzene() {
        let p = parse_smarts("C1CCCCCC1").unwrap();
        assert!(!has_match(&p, &m("c1ccccc1")));
    }

    #[test]
    fn benzene_in_toluene() {
        let p = parse_smarts("c1ccccc1").unwrap();
        assert!(has_match(&p, &m("Cc1ccccc1")));
    }

    #[test]
    fn charge_and_negation() {
        let p = parse_smarts("[O-]").unwrap();
        assert!(has_match(&p, &m("[O-]C(=O)C")));
        assert!(!has_match(&p, &m("OC(=O)C")));
        let p = parse_smarts("[!C;!H1;R]").unwrap();
        assert!(has_match(&p, &m("C1COCC1"))); // ring O with no H
    }

    #[test]
    fn bond_primitives() {
        let double = parse_smarts("C=O").unwrap();
        assert!(has_match(&double, &m("CC(=O)C")));
        assert!(!has_match(&double, &m("CCO")));
        let any = parse_smarts("C~O").unwrap();
        assert!(has_match(&any, &m("CCO")));
        let ring_bond = parse_smarts("C@C").unwrap();
        assert!(has_match(&ring_bond, &m("C1CC1")));
        assert!(!has_match(&ring_bond, &m("CC")));
        let not_ring = parse_smarts("C!@C").unwrap();
        assert!(has_match(&not_ring, &m("CC")));
        assert!(!has_match(&not_ring, &m("C1CC1")));
    }

    #[test]
    fn ring_size_primitive() {
        let p = parse_smarts("[r5]").unwrap();
        assert!(has_match(&p, &m("C1CCCC1")));
        assert!(!has_match(&p, &m("C1CCCCC1")));
    }

    #[test]
    fn degree_and_connectivity() {
        let quaternary = parse_smarts("[CX4;D4]").unwrap();
        assert!(has_match(&quaternary, &m("CC(C)(C)C")));
        assert!(!has_match(&quaternary, &m("CCC")));
        let methyl = parse_smarts("[CH3]").unwrap();
        assert_eq!(count_matches(&methyl, &m("CC(C)C"), true), 3);
    }
}
