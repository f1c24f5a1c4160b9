//! Aromatic systems: implicit-hydrogen rules for aromatic atoms, Kekule
//! assignment by perfect matching, and ring aromaticity perception with a
//! 4n+2 electron count.

use std::collections::HashSet;

use crate::element::Element;
use crate::error::ParseDiagnostics;
use crate::mol::{BondOrder, Molecule};

/// Fills implicit hydrogens for bare (organic-subset) atoms and decides which
/// aromatic atoms must receive a ring double bond during kekulization.
///
/// `bare[i]` is true when atom `i` was written without brackets and therefore
/// takes hydrogens from the valence table.
pub(crate) fn assign_hydrogens(
    mol: &mut Molecule,
    bare: &[bool],
    positions: &[usize],
) -> Result<Vec<bool>, ParseDiagnostics> {
    let n = mol.num_atoms();
    let mut needs_pi = vec![false; n];
    for i in 0..n {
        let vsum: u8 = mol
            .neighbors(i)
            .iter()
            .map(|&(_, b)| mol.bonds[b].order.valence_contribution())
            .sum();
        let has_exo_multiple = mol.neighbors(i).iter().any(|&(_, b)| {
            matches!(mol.bonds[b].order, BondOrder::Double | BondOrder::Triple)
        });
        let atom = &mol.atoms[i];
        let elem = atom.element;
        let pos = positions[i];

        if atom.aromatic {
            if !elem.can_be_aromatic() {
                return Err(ParseDiagnostics::error(
                    pos,
                    format!("element {} cannot be aromatic", elem.symbol()),
                ));
            }
            if bare[i] {
                let (h, pi) = match elem {
                    Element::C => {
                        if has_exo_multiple {
                            (4u8.saturating_sub(vsum), false)
                        } else if vsum <= 3 {
                            (4 - vsum - 1, true)
                        } else {
                            (0, false)
                        }
                    }
                    Element::N | Element::P => (0, vsum == 2),
                    Element::O | Element::S => (0, false),
                    Element::B => (3u8.saturating_sub(vsum), false),
                    _ => (0, false),
                };
                mol.atoms[i].implicit_h = h;
                needs_pi[i] = pi;
            } else {
                let total = vsum + atom.total_h();
                let allowed = elem.allowed_valences(atom.formal_charge);
                if allowed.is_empty() {
                    // No valence entry (e.g. [se]): accept as a lone-pair
                    // donor with no ring double bond.
                    needs_pi[i] = false;
                    continue;
                }
                match allowed.iter().filter(|&&v| v >= total).min() {
                    Some(&v) if v == total => needs_pi[i] = false,
                    Some(&v) if v == total + 1 => needs_pi[i] = true,
                    _ => {
                        return Err(ParseDiagnostics::error(
                            pos,
                            format!(
                                "aromatic {} with valence {} cannot kekulize",
                                elem.symbol(),
                                total
                            ),
                        ));
                    }
                }
            }
        } else if bare[i] {
            let allowed = elem.allowed_valences(0);
            match allowed.iter().filter(|&&v| v >= vsum).min() {
                Some(&v) => mol.atoms[i].implicit_h = v - vsum,
                None => {
                    return Err(ParseDiagnostics::error(
                        pos,
                        format!(
                            "valence violation: {} with bond order sum {}",
                            elem.symbol(),
                            vsum
                        ),
                    ));
                }
            }
        }
    }
    Ok(needs_pi)
}

/// Assigns Kekule single/double orders to aromatic bonds via a perfect
/// matching over the atoms that need a ring double bond.
pub(crate) fn kekulize(
    mol: &mut Molecule,
    needs_pi: &[bool],
    positions: &[usize],
) -> Result<(), ParseDiagnostics> {
    for i in 0..mol.num_bonds() {
        mol.bonds[i].kekule = mol.bonds[i].order;
    }
    let nodes: Vec<usize> = (0..mol.num_atoms()).filter(|&i| needs_pi[i]).collect();
    if nodes.is_empty() {
        for b in mol.bonds.iter_mut() {
            if b.order == BondOrder::Aromatic {
                b.kekule = BondOrder::Single;
            }
        }
        return Ok(());
    }

    // Adjacency restricted to aromatic bonds joining two pi-seeking atoms.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); mol.num_atoms()];
    for (bi, bond) in mol.bonds.iter().enumerate() {
        if bond.order == BondOrder::Aromatic && needs_pi[bond.a] && needs_pi[bond.b] {
            adj[bond.a].push((bond.b, bi));
            adj[bond.b].push((bond.a, bi));
        }
    }

    let mut partner: Vec<Option<usize>> = vec![None; mol.num_atoms()];
    let mut matched_bonds: Vec<usize> = Vec::new();
    if !match_all(&nodes, &adj, &mut partner, &mut matched_bonds, 0) {
        let first = nodes
            .iter()
            .find(|&&i| partner[i].is_none())
            .copied()
            .unwrap_or(nodes[0]);
        return Err(ParseDiagnostics::error(
            positions[first],
            "unkekulizable aromatic system",
        ));
    }

    for b in mol.bonds.iter_mut() {
        if b.order == BondOrder::Aromatic {
            b.kekule = BondOrder::Single;
        }
    }
    for bi in matched_bonds {
        mol.bonds[bi].kekule = BondOrder::Double;
    }
    Ok(())
}

/// Backtracking perfect matching; aromatic systems are small enough that no
/// blossom machinery is needed.
fn match_all(
    nodes: &[usize],
    adj: &[Vec<(usize, usize)>],
    partner: &mut Vec<Option<usize>>,
    matched_bonds: &mut Vec<usize>,
    from: usize,
) -> bool {
    let next = match nodes[from..].iter().find(|&&n| partner[n].is_none()) {
        Some(&n) => n,
        None => return true,
    };
    for &(to, bond) in &adj[next] {
        if partner[to].is_some() {
            continue;
        }
        partner[next] = Some(to);
        partner[to] = Some(next);
        matched_bonds.push(bond);
        if match_all(nodes, adj, partner, matched_bonds, from) {
            return true;
        }
        matched_bonds.pop();
        partner[next] = None;
        partner[to] = None;
    }
    false
}

/// Post-kekulization valence check against the fixed table. Bare atoms were
/// filled exactly; bracket atoms may sit below an allowed valence (explicit
/// radicals) but never above the maximum.
pub(crate) fn check_valences(
    mol: &Molecule,
    positions: &[usize],
) -> Result<(), ParseDiagnostics> {
    for i in 0..mol.num_atoms() {
        let atom = &mol.atoms[i];
        let allowed = atom.element.allowed_valences(atom.formal_charge);
        if allowed.is_empty() {
            continue;
        }
        let total = mol.total_valence(i);
        let max = *allowed.iter().max().unwrap();
        if total > max {
            return Err(ParseDiagnostics::error(
                positions[i],
                format!(
                    "valence violation: {} has valence {} (max {})",
                    atom.element.symbol(),
                    total,
                    max
                ),
            ));
        }
    }
    Ok(())
}

/// Pi-electron contribution of one atom toward a ring system, or None when
/// the atom cannot take part in an aromatic ring.
fn pi_contribution(mol: &Molecule, idx: usize, in_system: &HashSet<usize>) -> Option<u8> {
    let atom = &mol.atoms[idx];
    let mut double_in_system = false;
    let mut double_to_ring_atom = false;
    let mut double_to_exo_hetero = false;
    let mut double_to_exo_carbon = false;
    for &(nb, bi) in mol.neighbors(idx) {
        match mol.bonds[bi].kekule {
            BondOrder::Triple => return None,
            BondOrder::Double => {
                if in_system.contains(&nb) {
                    double_in_system = true;
                } else if mol.atoms[nb].in_ring {
                    double_to_ring_atom = true;
                } else if mol.atoms[nb].element == Element::C {
                    double_to_exo_carbon = true;
                } else {
                    double_to_exo_hetero = true;
                }
            }
            _ => {}
        }
    }
    if double_in_system || double_to_ring_atom {
        return Some(1);
    }
    if double_to_exo_carbon {
        return None;
    }
    if double_to_exo_hetero {
        // Quinoid center: sp2 but contributes no ring electrons.
        return Some(0);
    }
    let connections = mol.neighbors(idx).len() as u8 + atom.total_h();
    let q = atom.formal_charge;
    match atom.element {
        Element::C => match (q, connections) {
            (-1, 3) => Some(2),
            (1, 3) => Some(0),
            _ => None,
        },
        Element::N | Element::P => match (q, connections) {
            (0, 3) => Some(2),
            (-1, 2) => Some(2),
            (1, 3) => Some(2),
            _ => None,
        },
        Element::O | Element::S | Element::SE | Element::TE => match (q, connections) {
            (0, 2) => Some(2),
            (1, 3) => Some(2),
            _ => None,
        },
        Element::B => match (q, connections) {
            (0, 3) => Some(0),
            _ => None,
        },
        _ => None,
    }
}

/// Marks aromatic rings. Every candidate small ring is tested with the 4n+2
/// count; rings that fail individually are retried as fused systems (unions
/// of failed rings sharing bonds), which accepts azulene-like systems while
/// rejecting antiaromatic counts. Input-aromatic atoms that end up outside
/// every aromatic ring are an error.
pub(crate) fn perceive_aromaticity(
    mol: &mut Molecule,
    candidates: &[Vec<usize>],
    positions: &[usize],
) -> Result<(), ParseDiagnostics> {
    let input_aromatic: Vec<bool> = mol.atoms.iter().map(|a| a.aromatic).collect();
    let mut ring_ok = vec![false; candidates.len()];
    let mut ring_capable = vec![false; candidates.len()];

    for (ri, ring) in candidates.iter().enumerate() {
        if !ring_bonds_kekulizable(mol, ring) {
            continue;
        }
        let system: HashSet<usize> = ring.iter().copied().collect();
        let mut total = 0u32;
        let mut capable = true;
        for &a in ring {
            match pi_contribution(mol, a, &system) {
                Some(c) => total += c as u32,
                None => {
                    capable = false;
                    break;
                }
            }
        }
        ring_capable[ri] = capable;
        ring_ok[ri] = capable && total % 4 == 2;
    }

    // Fused-system fallback: rings that fail alone (azulene halves,
    // bridgehead-nitrogen bicyclics) are retried as the union of their
    // bond-sharing group, where shared lone pairs count once.
    let capable: Vec<usize> = (0..candidates.len()).filter(|&i| ring_capable[i]).collect();
    for group in bond_sharing_groups(mol, candidates, &capable) {
        if group.iter().all(|&ri| ring_ok[ri]) {
            continue;
        }
        let system: HashSet<usize> = group
            .iter()
            .flat_map(|&ri| candidates[ri].iter().copied())
            .collect();
        let total: u32 = system
            .iter()
            .map(|&a| pi_contribution(mol, a, &system).unwrap_or(0) as u32)
            .sum();
        if total % 4 == 2 {
            for &ri in &group {
                ring_ok[ri] = true;
            }
        }
    }

    let mut in_aromatic_ring = vec![false; mol.num_atoms()];
    for (ri, ring) in candidates.iter().enumerate() {
        if !ring_ok[ri] {
            continue;
        }
        for w in 0..ring.len() {
            let a = ring[w];
            let b = ring[(w + 1) % ring.len()];
            in_aromatic_ring[a] = true;
            mol.atoms[a].aromatic = true;
            let bond_idx = mol
                .neighbors(a)
                .iter()
                .find(|(n, _)| *n == b)
                .map(|&(_, i)| i)
                .expect("ring bond exists");
            mol.bonds[bond_idx].order = BondOrder::Aromatic;
        }
    }

    for i in 0..mol.num_atoms() {
        if input_aromatic[i] && !in_aromatic_ring[i] {
            return Err(ParseDiagnostics::error(
                positions[i],
                "aromatic atom is not part of an aromatic ring",
            ));
        }
        if !in_aromatic_ring[i] {
            mol.atoms[i].aromatic = false;
        }
    }
    Ok(())
}

fn ring_bonds_kekulizable(mol: &Molecule, ring: &[usize]) -> bool {
    for w in 0..ring.len() {
        let a = ring[w];
        let b = ring[(w + 1) % ring.len()];
        match mol.bond_between(a, b) {
            Some(bond) => {
                if bond.kekule == BondOrder::Triple {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}

/// Groups ring indices (a subset) into clusters connected by shared bonds.
fn bond_sharing_groups(
    mol: &Molecule,
    candidates: &[Vec<usize>],
    subset: &[usize],
) -> Vec<Vec<usize>> {
    let bond_sets: Vec<HashSet<usize>> = subset
        .iter()
        .map(|&ri| {
            let ring = &candidates[ri];
            let mut set = HashSet::new();
            for w in 0..ring.len() {
                let a = ring[w];
                let b = ring[(w + 1) % ring.len()];
                if let Some(&(_, i)) = mol.neighbors(a).iter().find(|(n, _)| *n == b) {
                    set.insert(i);
                }
            }
            set
        })
        .collect();

    let mut group_of: Vec<usize> = (0..subset.len()).collect();
    fn find(g: &mut Vec<usize>, i: usize) -> usize {
        if g[i] != i {
            let root = find(g, g[i]);
            g[i] = root;
        }
        g[i]
    }
    for i in 0..subset.len() {
        for j in (i + 1)..subset.len() {
            if !bond_sets[i].is_disjoint(&bond_sets[j]) {
                let (ri, rj) = (find(&mut group_of, i), find(&mut group_of, j));
                if ri != rj {
                    group_of[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..subset.len() {
        let root = find(&mut group_of, i);
        groups.entry(root).or_default().push(subset[i]);
    }
    groups.into_values().collect()
}
