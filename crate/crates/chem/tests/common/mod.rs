//! Test support: a seeded random-molecule generator that emits valid SMILES
//! by construction (valence budgets respected while building a tree plus a
//! few ring-closure edges).

use rand::rngs::StdRng;
use rand::Rng;

const ELEMENTS: &[(&str, u8)] = &[
    ("C", 4),
    ("C", 4),
    ("C", 4),
    ("C", 4),
    ("N", 3),
    ("O", 2),
    ("S", 2),
    ("F", 1),
    ("Cl", 1),
];

pub struct RandomMol {
    pub smiles: String,
}

/// Random connected molecule with up to `max_heavy` heavy atoms. When
/// `allow_aromatic` is set, the whole fragment is sometimes grafted onto a
/// benzene ring.
pub fn random_smiles(rng: &mut StdRng, max_heavy: usize, allow_aromatic: bool) -> RandomMol {
    let n = rng.gen_range(1..=max_heavy.max(1));
    let mut element = Vec::with_capacity(n);
    let mut budget = Vec::with_capacity(n);
    for i in 0..n {
        let (sym, val) = ELEMENTS[rng.gen_range(0..ELEMENTS.len())];
        // Halogens cannot be interior atoms of the spanning tree.
        let (sym, val) = if i + 1 < n && val == 1 {
            ("C", 4u8)
        } else {
            (sym, val)
        };
        element.push(sym);
        budget.push(val);
    }

    // Spanning tree with occasional multiple bonds.
    let mut children: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for i in 1..n {
        let mut parent = rng.gen_range(0..i);
        for _ in 0..8 {
            if budget[parent] >= 1 {
                break;
            }
            parent = rng.gen_range(0..i);
        }
        if budget[parent] == 0 {
            // Fall back to any earlier atom with room; skip the atom if none.
            match (0..i).find(|&p| budget[p] >= 1) {
                Some(p) => parent = p,
                None => {
                    element.truncate(i);
                    budget.truncate(i);
                    break;
                }
            }
        }
        let max_order = budget[parent].min(budget[i]).min(3);
        let order = match max_order {
            0 | 1 => 1,
            _ => {
                let roll: f32 = rng.gen();
                if roll < 0.12 && max_order >= 2 {
                    2
                } else if roll < 0.15 && max_order >= 3 {
                    3
                } else {
                    1
                }
            }
        };
        budget[parent] -= order;
        budget[i] -= order;
        children[parent].push((i, order));
    }
    let n = element.len();

    // Extra edges close rings between non-adjacent atoms with spare budget.
    let mut ring_edges: Vec<(usize, usize)> = Vec::new();
    if n >= 3 && rng.gen_bool(0.45) {
        let attempts = rng.gen_range(1..=2);
        'outer: for _ in 0..attempts {
            for _ in 0..12 {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a == b || budget[a] == 0 || budget[b] == 0 {
                    continue;
                }
                let adjacent = children[a].iter().any(|&(c, _)| c == b)
                    || children[b].iter().any(|&(c, _)| c == a)
                    || ring_edges.contains(&(a, b))
                    || ring_edges.contains(&(b, a));
                if adjacent {
                    continue;
                }
                budget[a] -= 1;
                budget[b] -= 1;
                ring_edges.push((a.min(b), a.max(b)));
                continue 'outer;
            }
        }
    }

    // Emit SMILES: DFS over the tree, ring digits (from 5) for extra edges.
    let mut digit_of: Vec<Vec<u16>> = vec![Vec::new(); n];
    for (k, &(a, b)) in ring_edges.iter().enumerate() {
        let d = 5 + k as u16;
        digit_of[a].push(d);
        digit_of[b].push(d);
    }
    let mut out = String::new();
    emit(0, &children, &element, &digit_of, &mut out);

    let smiles = if allow_aromatic && rng.gen_bool(0.35) && budget[0] >= 1 {
        format!("c1ccc({out})cc1")
    } else {
        out
    };
    RandomMol { smiles }
}

fn emit(
    idx: usize,
    children: &[Vec<(usize, u8)>],
    element: &[&str],
    digits: &[Vec<u16>],
    out: &mut String,
) {
    out.push_str(element[idx]);
    for d in &digits[idx] {
        if *d >= 10 {
            out.push('%');
            out.push_str(&format!("{d:02}"));
        } else {
            out.push_str(&d.to_string());
        }
    }
    let kids = &children[idx];
    for (pos, &(child, order)) in kids.iter().enumerate() {
        let bond = match order {
            2 => "=",
            3 => "#",
            _ => "",
        };
        if pos + 1 < kids.len() {
            out.push('(');
            out.push_str(bond);
            emit(child, children, element, digits, out);
            out.push(')');
        } else {
            out.push_str(bond);
            emit(child, children, element, digits, out);
        }
    }
}

/// Fisher-Yates permutation of 0..n.
pub fn random_permutation(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}
