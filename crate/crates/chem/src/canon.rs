//! Canonical SMILES: iterative refinement of atom invariants with
//! deterministic tie-breaking, then a rank-driven DFS writer. Stereo
//! annotations are stripped; aromatic systems are written in lowercase form,
//! so the output is independent of the Kekule assignment.

use std::collections::HashMap;

use crate::element::Element;
use crate::mol::{BondOrder, Molecule};
use crate::smiles::parse_smiles;

/// Distinct canonical ranks (0..n), stable across atom renumbering for the
/// molecules this crate targets.
pub fn canonical_ranks(mol: &Molecule) -> Vec<usize> {
    let n = mol.num_atoms();
    if n == 0 {
        return Vec::new();
    }
    // Ring invariants must not depend on which tied SSSR ring was chosen:
    // the number of incident ring bonds and the shortest cycle length
    // through the atom are both independent of atom numbering.
    let initial: Vec<InitialKey> = (0..n)
        .map(|i| {
            let a = &mol.atoms[i];
            let ring_bonds = mol
                .neighbors(i)
                .iter()
                .filter(|&&(_, b)| mol.bonds[b].in_ring)
                .count() as u8;
            InitialKey {
                element: a.element.atomic_number(),
                aromatic: a.aromatic,
                degree: a.degree,
                total_h: a.total_h(),
                charge: a.formal_charge,
                isotope: a.isotope.unwrap_or(0),
                ring_count: ring_bonds,
                min_ring: min_cycle_len(mol, i),
            }
        })
        .collect();
    let mut ranks = dense_ranks(&initial);

    // Artificial splits are appended as a per-atom priority so refinement can
    // keep running under one key type.
    let mut split_priority = vec![0u32; n];
    loop {
        ranks = refine(mol, ranks, &split_priority);
        let classes = count_classes(&ranks);
        if classes == n {
            return ranks;
        }
        // Split the lowest-ranked non-singleton class at its lowest index.
        let mut by_rank: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &r) in ranks.iter().enumerate() {
            by_rank.entry(r).or_default().push(i);
        }
        let (_, members) = by_rank
            .iter()
            .filter(|(_, m)| m.len() > 1)
            .min_by_key(|(r, _)| **r)
            .map(|(r, m)| (*r, m.clone()))
            .expect("a non-singleton class exists");
        let chosen = *members.iter().min().unwrap();
        let bump = split_priority.iter().max().unwrap() + 1;
        split_priority[chosen] = bump;
    }
}

/// Length of the shortest cycle containing the atom, or 0 when acyclic.
fn min_cycle_len(mol: &Molecule, atom: usize) -> u8 {
    let mut best = 0usize;
    for &(nb, bond) in mol.neighbors(atom) {
        if !mol.bonds[bond].in_ring {
            continue;
        }
        // Shortest path atom -> nb avoiding this bond, plus the bond itself.
        let mut dist = vec![usize::MAX; mol.num_atoms()];
        let mut queue = std::collections::VecDeque::new();
        dist[atom] = 0;
        queue.push_back(atom);
        while let Some(v) = queue.pop_front() {
            if v == nb {
                break;
            }
            for &(to, b) in mol.neighbors(v) {
                if b == bond || dist[to] != usize::MAX {
                    continue;
                }
                dist[to] = dist[v] + 1;
                queue.push_back(to);
            }
        }
        if dist[nb] != usize::MAX {
            let cycle = dist[nb] + 1;
            if best == 0 || cycle < best {
                best = cycle;
            }
        }
    }
    best.min(u8::MAX as usize) as u8
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct InitialKey {
    element: u8,
    aromatic: bool,
    degree: u8,
    total_h: u8,
    charge: i8,
    isotope: u16,
    ring_count: u8,
    min_ring: u8,
}

fn dense_ranks<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).unwrap())
        .collect()
}

fn count_classes(ranks: &[usize]) -> usize {
    let mut seen: Vec<usize> = ranks.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn bond_code(order: BondOrder) -> u8 {
    match order {
        BondOrder::Single => 1,
        BondOrder::Double => 2,
        BondOrder::Triple => 3,
        BondOrder::Aromatic => 4,
    }
}

fn refine(mol: &Molecule, mut ranks: Vec<usize>, split: &[u32]) -> Vec<usize> {
    loop {
        let keys: Vec<(usize, u32, Vec<(u8, usize)>)> = (0..mol.num_atoms())
            .map(|i| {
                let mut nb: Vec<(u8, usize)> = mol
                    .neighbors(i)
                    .iter()
                    .map(|&(n, b)| (bond_code(mol.bonds[b].order), ranks[n]))
                    .collect();
                nb.sort_unstable();
                (ranks[i], split[i], nb)
            })
            .collect();
        let new_ranks = dense_ranks(&keys);
        let stable = count_classes(&new_ranks) == count_classes(&ranks);
        let done = new_ranks == ranks;
        ranks = new_ranks;
        if stable || done {
            return ranks;
        }
    }
}

/// Deterministic canonical SMILES. Fragments are canonicalized separately and
/// joined in lexicographic order.
pub fn canonical_smiles(mol: &Molecule) -> String {
    let ranks = canonical_ranks(mol);
    let mut fragments: Vec<String> = mol
        .components()
        .iter()
        .map(|comp| write_component(mol, comp, &ranks))
        .collect();
    fragments.sort();
    fragments.join(".")
}

/// Number of connected components and the largest one re-parsed as its own
/// molecule. Size is heavy-atom count; ties go to the lexicographically
/// smallest canonical SMILES.
pub fn fragment_split(mol: &Molecule) -> (usize, Molecule) {
    let ranks = canonical_ranks(mol);
    let comps = mol.components();
    let mut best: Option<(usize, String)> = None;
    for comp in &comps {
        let smiles = write_component(mol, comp, &ranks);
        let better = match &best {
            None => true,
            Some((size, s)) => {
                comp.len() > *size || (comp.len() == *size && smiles < *s)
            }
        };
        if better {
            best = Some((comp.len(), smiles));
        }
    }
    let (_, smiles) = best.expect("molecule has at least one atom");
    let largest = parse_smiles(&smiles).expect("canonical fragment re-parses");
    (comps.len(), largest)
}

struct Writer<'m> {
    mol: &'m Molecule,
    ranks: &'m [usize],
    out: String,
    visited: Vec<bool>,
    tree_bond: Vec<bool>,
    /// bond index -> allocated ring-closure digit
    ring_digits: HashMap<usize, u16>,
    next_digit: u16,
}

fn write_component(mol: &Molecule, comp: &[usize], ranks: &[usize]) -> String {
    let root = *comp
        .iter()
        .min_by_key(|&&i| ranks[i])
        .expect("component non-empty");
    let mut w = Writer {
        mol,
        ranks,
        out: String::new(),
        visited: vec![false; mol.num_atoms()],
        tree_bond: vec![false; mol.num_bonds()],
        ring_digits: HashMap::new(),
        next_digit: 1,
    };
    w.plan_tree(root);
    w.visited = vec![false; mol.num_atoms()];
    w.emit_atom(root, None);
    w.out
}

impl<'m> Writer<'m> {
    /// First pass: mark tree bonds of the rank-ordered DFS. Bonds within the
    /// component that are not tree bonds become ring closures.
    fn plan_tree(&mut self, root: usize) {
        let mut stack = vec![root];
        self.visited[root] = true;
        while let Some(v) = stack.pop() {
            let mut children: Vec<(usize, usize, usize)> = self
                .mol
                .neighbors(v)
                .iter()
                .filter(|&&(n, _)| !self.visited[n])
                .map(|&(n, b)| (self.ranks[n], n, b))
                .collect();
            children.sort_unstable();
            // Reverse so the lowest-ranked child is processed first.
            for &(_, n, b) in children.iter().rev() {
                if !self.visited[n] {
                    self.visited[n] = true;
                    self.tree_bond[b] = true;
                    stack.push(n);
                }
            }
        }
    }

    fn emit_atom(&mut self, idx: usize, via_bond: Option<usize>) {
        self.visited[idx] = true;
        if let Some(b) = via_bond {
            self.out.push_str(self.bond_symbol(b));
        }
        self.out.push_str(&atom_token(self.mol, idx));

        // Ring-closure digits at this atom: closings (digit already issued)
        // first in digit order, then openings in neighbor-rank order.
        let mut closings: Vec<(u16, usize)> = Vec::new();
        let mut openings: Vec<(usize, usize)> = Vec::new();
        for &(n, b) in self.mol.neighbors(idx) {
            if self.tree_bond[b] {
                continue;
            }
            match self.ring_digits.get(&b) {
                Some(&d) => closings.push((d, b)),
                None => openings.push((self.ranks[n], b)),
            }
        }
        closings.sort_unstable();
        openings.sort_unstable();
        for (d, _) in closings {
            push_digit(&mut self.out, d);
        }
        for (_, b) in openings {
            let digit = self.next_digit;
            self.next_digit += 1;
            self.ring_digits.insert(b, digit);
            // The bond symbol rides on the opening side only.
            self.out.push_str(self.bond_symbol(b));
            push_digit(&mut self.out, digit);
        }

        let mut children: Vec<(usize, usize, usize)> = self
            .mol
            .neighbors(idx)
            .iter()
            .filter(|&&(n, b)| self.tree_bond[b] && !self.visited[n])
            .map(|&(n, b)| (self.ranks[n], n, b))
            .collect();
        children.sort_unstable();
        let count = children.len();
        for (pos, &(_, n, b)) in children.iter().enumerate() {
            if pos + 1 < count {
                self.out.push('(');
                self.emit_atom(n, Some(b));
                self.out.push(')');
            } else {
                self.emit_atom(n, Some(b));
            }
        }
    }

    fn bond_symbol(&self, bond_idx: usize) -> &'static str {
        let bond = &self.mol.bonds[bond_idx];
        let both_aromatic = self.mol.atoms[bond.a].aromatic && self.mol.atoms[bond.b].aromatic;
        match bond.order {
            BondOrder::Aromatic => "",
            BondOrder::Single => {
                if both_aromatic {
                    "-"
                } else {
                    ""
                }
            }
            BondOrder::Double => "=",
            BondOrder::Triple => "#",
        }
    }
}

fn push_digit(out: &mut String, digit: u16) {
    if digit >= 10 {
        out.push('%');
        out.push_str(&format!("{digit:02}"));
    } else {
        out.push_str(&digit.to_string());
    }
}

/// What the parser would infer for a bare symbol in this environment, or
/// None when the atom cannot be written bare.
fn inferred_bare_h(mol: &Molecule, idx: usize) -> Option<u8> {
    let atom = &mol.atoms[idx];
    if !atom.element.in_organic_subset() {
        return None;
    }
    let vsum: u8 = mol
        .neighbors(idx)
        .iter()
        .map(|&(_, b)| mol.bonds[b].order.valence_contribution())
        .sum();
    if atom.aromatic {
        let has_exo_multiple = mol
            .neighbors(idx)
            .iter()
            .any(|&(_, b)| matches!(mol.bonds[b].order, BondOrder::Double | BondOrder::Triple));
        match atom.element {
            Element::C => {
                if has_exo_multiple {
                    Some(4u8.saturating_sub(vsum))
                } else if vsum <= 3 {
                    Some(4 - vsum - 1)
                } else {
                    Some(0)
                }
            }
            Element::N | Element::P => Some(0),
            Element::O | Element::S => Some(0),
            Element::B => Some(3u8.saturating_sub(vsum)),
            _ => None,
        }
    } else {
        let allowed = atom.element.allowed_valences(0);
        allowed.iter().filter(|&&v| v >= vsum).min().map(|&v| v - vsum)
    }
}

fn atom_token(mol: &Molecule, idx: usize) -> String {
    let atom = &mol.atoms[idx];
    let symbol = if atom.aromatic {
        atom.element.symbol().to_ascii_lowercase()
    } else {
        atom.element.symbol().to_string()
    };
    let needs_bracket = atom.formal_charge != 0
        || atom.isotope.is_some()
        || !atom.element.in_organic_subset()
        || inferred_bare_h(mol, idx) != Some(atom.total_h());
    if !needs_bracket {
        return symbol;
    }
    let mut out = String::from("[");
    if let Some(iso) = atom.isotope {
        out.push_str(&iso.to_string());
    }
    out.push_str(&symbol);
    match atom.total_h() {
        0 => {}
        1 => out.push('H'),
        h => {
            out.push('H');
            out.push_str(&h.to_string());
        }
    }
    match atom.formal_charge {
        0 => {}
        1 => out.push('+'),
        -1 => out.push('-'),
        q if q > 0 => out.push_str(&format!("+{q}")),
        q => out.push_str(&format!("-{}", -q)),
    }
    out.push(']');
    out
}
