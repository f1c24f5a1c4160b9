//! Matcher correctness against a naive oracle: enumerate every injective
//! assignment of pattern atoms to molecule atoms and keep the
//! bond-consistent ones. Exponential, so only run on small molecules.

mod common;

use molforge_chem::smarts::SmartsPattern;
use molforge_chem::{count_matches, parse_smarts, parse_smiles, Molecule};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// All injective assignments, checked bond-by-bond, deduplicated by target
/// atom set when `unique_sets` is on.
fn naive_count(pattern: &SmartsPattern, mol: &Molecule, unique_sets: bool) -> usize {
    let k = pattern.num_atoms();
    let n = mol.num_atoms();
    if k > n {
        return 0;
    }
    let mut assignment: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; n];
    let mut found: Vec<Vec<usize>> = Vec::new();
    enumerate(pattern, mol, &mut assignment, &mut used, &mut found);
    if unique_sets {
        let mut keys: Vec<Vec<usize>> = found
            .iter()
            .map(|m| {
                let mut s = m.clone();
                s.sort_unstable();
                s
            })
            .collect();
        keys.sort();
        keys.dedup();
        keys.len()
    } else {
        found.len()
    }
}

fn enumerate(
    pattern: &SmartsPattern,
    mol: &Molecule,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    let depth = assignment.len();
    if depth == pattern.num_atoms() {
        found.push(assignment.clone());
        return;
    }
    for t in 0..mol.num_atoms() {
        if used[t] || !pattern.atoms[depth].matches(mol, t) {
            continue;
        }
        let mut ok = true;
        for &(p_nb, p_bond) in pattern.neighbors(depth) {
            if p_nb >= depth {
                continue;
            }
            let t_nb = assignment[p_nb];
            let bond_idx = mol
                .neighbors(t)
                .iter()
                .find(|&&(nb, _)| nb == t_nb)
                .map(|&(_, b)| b);
            match bond_idx {
                Some(b) => {
                    if !pattern.bonds[p_bond].expr.matches(mol, b) {
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
        if ok {
            assignment.push(t);
            used[t] = true;
            enumerate(pattern, mol, assignment, used, found);
            assignment.pop();
            used[t] = false;
        }
    }
}

const PATTERNS: &[&str] = &[
    "[O;H1]",
    "[O;H1][c]",
    "C=O",
    "[C;X4]",
    "[N;!H0]",
    "c1ccccc1",
    "[R]",
    "[r5]",
    "C~N",
    "[C,N;R0]",
    "CC(=O)O",
    "[!C;!N;!O]",
    "[D3]",
    "C!@C",
    "[c;H1]",
    "[#8]",
    "[O;D2]([#6])[#6]",
    "[S,s]",
];

#[test]
fn matcher_equals_naive_oracle_on_random_molecules() {
    let mut rng = StdRng::seed_from_u64(0x0dd_ba11);
    let patterns: Vec<SmartsPattern> = PATTERNS
        .iter()
        .map(|s| parse_smarts(s).expect("test pattern parses"))
        .collect();

    let mut checked = 0;
    while checked < 500 {
        let gen = common::random_smiles(&mut rng, 10, true);
        let mol = match parse_smiles(&gen.smiles) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if mol.num_atoms() > 10 {
            // The aromatic graft can push past 10 heavy atoms; the oracle is
            // exponential, so stay within its budget.
            continue;
        }
        for (pi, pattern) in patterns.iter().enumerate() {
            for unique in [true, false] {
                let fast = count_matches(pattern, &mol, unique);
                let slow = naive_count(pattern, &mol, unique);
                assert_eq!(
                    fast, slow,
                    "pattern {} on {} (unique_sets={unique})",
                    PATTERNS[pi], gen.smiles
                );
            }
        }
        checked += 1;
    }
}
