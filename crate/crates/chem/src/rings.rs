//! Ring perception: bridge detection for in-ring flags and a smallest set of
//! smallest rings for ring statistics and aromaticity.

use std::collections::VecDeque;

use crate::mol::Molecule;

/// Marks `in_ring` on atoms and bonds. A bond is in a ring iff it is not a
/// bridge of its connected component.
pub fn mark_ring_membership(mol: &mut Molecule) {
    let bridges = find_bridges(mol);
    for (i, bond) in mol.bonds.iter_mut().enumerate() {
        bond.in_ring = !bridges[i];
    }
    let ring_bonds: Vec<(usize, usize)> = mol
        .bonds
        .iter()
        .filter(|b| b.in_ring)
        .map(|b| (b.a, b.b))
        .collect();
    for atom in mol.atoms.iter_mut() {
        atom.in_ring = false;
    }
    for (a, b) in ring_bonds {
        mol.atoms[a].in_ring = true;
        mol.atoms[b].in_ring = true;
    }
}

/// Tarjan bridge finding, iterative to survive long chains.
fn find_bridges(mol: &Molecule) -> Vec<bool> {
    let n = mol.num_atoms();
    let mut is_bridge = vec![false; mol.num_bonds()];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Stack entries: (atom, incoming bond, neighbor cursor).
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent_bond, ref mut cursor)) = stack.last_mut() {
            if *cursor < mol.neighbors(v).len() {
                let (to, bond) = mol.neighbors(v)[*cursor];
                *cursor += 1;
                if Some(bond) == parent_bond {
                    continue;
                }
                if disc[to] == usize::MAX {
                    disc[to] = timer;
                    low[to] = timer;
                    timer += 1;
                    stack.push((to, Some(bond), 0));
                } else {
                    low[v] = low[v].min(disc[to]);
                }
            } else {
                stack.pop();
                if let Some(&mut (parent, _, _)) = stack.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        if let Some(pb) = parent_bond {
                            is_bridge[pb] = true;
                        }
                    }
                }
            }
        }
    }
    is_bridge
}

/// Computes an SSSR: for every ring bond, the shortest cycle through it is a
/// candidate; candidates are taken smallest-first while linearly independent
/// over GF(2) until the circuit rank is reached.
///
/// Returns the full deduplicated candidate list, a symmetric superset of the
/// chosen SSSR used by aromaticity perception.
pub fn perceive_sssr(mol: &mut Molecule) -> Vec<Vec<usize>> {
    let n_components = mol.components().len();
    let rank = mol.num_bonds() + n_components - mol.num_atoms();
    if rank == 0 {
        mol.rings = crate::mol::RingInfo::default();
        return Vec::new();
    }

    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for (i, bond) in mol.bonds.iter().enumerate() {
        if !bond.in_ring {
            continue;
        }
        if let Some(cycle) = shortest_cycle_through(mol, i) {
            candidates.push(cycle);
        }
    }
    // Deterministic order: by size, then by the sorted atom list.
    candidates.sort_by(|a, b| {
        let ka = sorted_key(a);
        let kb = sorted_key(b);
        (a.len(), ka).cmp(&(b.len(), kb))
    });
    candidates.dedup_by_key(|c| sorted_key(c));

    let mut basis: Vec<Vec<u128>> = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    for cycle in &candidates {
        if chosen.len() == rank {
            break;
        }
        let vec = edge_vector(mol, cycle);
        if add_independent(&mut basis, vec) {
            chosen.push(cycle.clone());
        }
    }

    let max_size = chosen.iter().map(Vec::len).max().unwrap_or(0);
    let spiro = spiro_atoms(mol, &chosen);
    mol.rings = crate::mol::RingInfo {
        rings: chosen,
        max_size,
        spiro_atoms: spiro,
    };
    candidates
}

fn sorted_key(cycle: &[usize]) -> Vec<usize> {
    let mut k = cycle.to_vec();
    k.sort_unstable();
    k
}

/// BFS from one endpoint to the other with the bond itself removed.
fn shortest_cycle_through(mol: &Molecule, bond_idx: usize) -> Option<Vec<usize>> {
    let bond = &mol.bonds[bond_idx];
    let (src, dst) = (bond.a, bond.b);
    let mut prev: Vec<Option<usize>> = vec![None; mol.num_atoms()];
    let mut seen = vec![false; mol.num_atoms()];
    let mut queue = VecDeque::new();
    queue.push_back(src);
    seen[src] = true;
    while let Some(v) = queue.pop_front() {
        if v == dst {
            break;
        }
        for &(to, b) in mol.neighbors(v) {
            if b == bond_idx || seen[to] {
                continue;
            }
            seen[to] = true;
            prev[to] = Some(v);
            queue.push_back(to);
        }
    }
    if !seen[dst] {
        return None;
    }
    let mut path = vec![dst];
    let mut cur = dst;
    while let Some(p) = prev[cur] {
        path.push(p);
        cur = p;
    }
    // Path runs dst..src; the closing bond src-dst completes the cycle.
    Some(path)
}

/// Cycle as a bond-incidence bit vector; supports molecules up to 128 bonds
/// per word group.
fn edge_vector(mol: &Molecule, cycle: &[usize]) -> Vec<u128> {
    let words = mol.num_bonds() / 128 + 1;
    let mut v = vec![0u128; words];
    for w in 0..cycle.len() {
        let a = cycle[w];
        let b = cycle[(w + 1) % cycle.len()];
        let bond = mol
            .neighbors(a)
            .iter()
            .find(|(n, _)| *n == b)
            .map(|&(_, i)| i)
            .expect("cycle edges exist");
        v[bond / 128] ^= 1 << (bond % 128);
    }
    v
}

/// Gaussian elimination over GF(2): basis rows each keep a unique leading
/// bit; returns true when the vector enlarged the span.
fn add_independent(basis: &mut Vec<Vec<u128>>, mut v: Vec<u128>) -> bool {
    loop {
        let lead = match leading_bit(&v) {
            Some(l) => l,
            None => return false,
        };
        match basis.iter().find(|r| leading_bit(r) == Some(lead)) {
            Some(row) => {
                for (a, b) in v.iter_mut().zip(row.iter()) {
                    *a ^= b;
                }
            }
            None => {
                basis.push(v);
                return true;
            }
        }
    }
}

fn leading_bit(words: &[u128]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate().rev() {
        if w != 0 {
            return Some(i * 128 + (127 - w.leading_zeros() as usize));
        }
    }
    None
}

/// Atoms shared by exactly two SSSR rings that have no bond in common.
fn spiro_atoms(mol: &Molecule, rings: &[Vec<usize>]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..rings.len() {
        for j in (i + 1)..rings.len() {
            let shared: Vec<usize> = rings[i]
                .iter()
                .filter(|a| rings[j].contains(a))
                .copied()
                .collect();
            if shared.len() != 1 {
                continue;
            }
            let bonds_i = ring_bond_set(mol, &rings[i]);
            let bonds_j = ring_bond_set(mol, &rings[j]);
            if bonds_i.iter().any(|b| bonds_j.contains(b)) {
                continue;
            }
            let atom = shared[0];
            // Spiro requires membership in exactly two rings overall.
            let memberships = rings.iter().filter(|r| r.contains(&atom)).count();
            if memberships == 2 && !out.contains(&atom) {
                out.push(atom);
            }
        }
    }
    out.sort_unstable();
    out
}

fn ring_bond_set(mol: &Molecule, ring: &[usize]) -> Vec<usize> {
    let mut bonds = Vec::with_capacity(ring.len());
    for w in 0..ring.len() {
        let a = ring[w];
        let b = ring[(w + 1) % ring.len()];
        if let Some(&(_, i)) = mol.neighbors(a).iter().find(|(n, _)| *n == b) {
            bonds.push(i);
        }
    }
    bonds.sort_unstable();
    bonds
}
