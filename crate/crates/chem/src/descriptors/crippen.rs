//! Wildman-Crippen logP and molar refractivity: per-atom environment typing
//! against the contribution table shipped in `data/crippen.tsv`. Hydrogens
//! are typed from their heavy neighbor, so the hydrogen-suppressed graph is
//! enough.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::element::Element;
use crate::mol::{BondOrder, Molecule};

const TABLE: &str = include_str!("../../data/crippen.tsv");

struct Contribution {
    logp: f64,
    mr: f64,
}

fn table() -> &'static HashMap<String, Contribution> {
    static CELL: OnceLock<HashMap<String, Contribution>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut map = HashMap::new();
        for line in TABLE.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let code = fields.next().expect("type code");
            let logp: f64 = fields
                .next()
                .expect("logp column")
                .parse()
                .expect("numeric logp");
            let mr: f64 = fields
                .next()
                .expect("mr column")
                .parse()
                .expect("numeric mr");
            map.insert(code.to_string(), Contribution { logp, mr });
        }
        map
    })
}

/// (logP, MR) as sums of per-atom and per-hydrogen contributions.
pub fn crippen(mol: &Molecule) -> (f64, f64) {
    let table = table();
    let mut logp = 0.0;
    let mut mr = 0.0;
    for i in 0..mol.num_atoms() {
        let code = atom_type(mol, i);
        let c = &table[code];
        logp += c.logp;
        mr += c.mr;
        let h_code = hydrogen_type(mol, i);
        let hc = &table[h_code];
        let n_h = mol.atoms[i].total_h() as f64;
        logp += n_h * hc.logp;
        mr += n_h * hc.mr;
    }
    (logp, mr)
}

fn is_heteroatom(e: Element) -> bool {
    matches!(
        e,
        Element::N
            | Element::O
            | Element::P
            | Element::S
            | Element::F
            | Element::CL
            | Element::BR
            | Element::I
    )
}

fn is_exotic(e: Element) -> bool {
    e != Element::C && e != Element::H && !is_heteroatom(e)
}

fn atom_type(mol: &Molecule, idx: usize) -> &'static str {
    let atom = &mol.atoms[idx];
    match atom.element {
        Element::C => carbon_type(mol, idx),
        Element::N => nitrogen_type(mol, idx),
        Element::O => oxygen_type(mol, idx),
        Element::F => {
            if atom.formal_charge == 0 {
                "F"
            } else {
                "Hal"
            }
        }
        Element::CL => {
            if atom.formal_charge == 0 {
                "Cl"
            } else {
                "Hal"
            }
        }
        Element::BR => {
            if atom.formal_charge == 0 {
                "Br"
            } else {
                "Hal"
            }
        }
        Element::I => {
            if atom.formal_charge == 0 {
                "I"
            } else {
                "Hal"
            }
        }
        Element::P => "P",
        Element::S => {
            if atom.aromatic {
                "S3"
            } else if atom.formal_charge != 0 {
                "S2"
            } else {
                "S1"
            }
        }
        e if e.atomic_number() >= 3 && !is_exotic(e) => "ME",
        Element::H => "HS",
        _ => "Me1",
    }
}

fn carbon_type(mol: &Molecule, idx: usize) -> &'static str {
    let atom = &mol.atoms[idx];
    let h = atom.total_h();
    let neighbors: Vec<usize> = mol.neighbors(idx).iter().map(|&(n, _)| n).collect();
    let neighbor_elem = |pred: fn(Element) -> bool| {
        neighbors.iter().any(|&n| pred(mol.atoms[n].element))
    };

    if atom.aromatic {
        let aromatic_bond_count = mol
            .neighbors(idx)
            .iter()
            .filter(|&&(_, b)| mol.bonds[b].order == BondOrder::Aromatic)
            .count();
        if h >= 1 {
            return "C18";
        }
        if aromatic_bond_count >= 3 {
            return "C19";
        }
        // Exactly one non-aromatic substituent (or aromatic single link).
        let sub = mol
            .neighbors(idx)
            .iter()
            .find(|&&(_, b)| mol.bonds[b].order != BondOrder::Aromatic);
        if let Some(&(nb, b)) = sub {
            let nb_atom = &mol.atoms[nb];
            if mol.bonds[b].kekule == BondOrder::Double {
                return match nb_atom.element {
                    Element::C | Element::N | Element::O => "C25",
                    _ => "CS",
                };
            }
            if nb_atom.aromatic {
                return "C20";
            }
            return match nb_atom.element {
                Element::F => "C14",
                Element::CL => "C15",
                Element::BR => "C16",
                Element::I => "C17",
                Element::C => "C21",
                Element::N => "C22",
                Element::O => "C23",
                Element::S => "C24",
                _ => "C13",
            };
        }
        return "CS";
    }

    let has_triple = mol
        .neighbors(idx)
        .iter()
        .any(|&(_, b)| mol.bonds[b].kekule == BondOrder::Triple);
    let doubles: Vec<usize> = mol
        .neighbors(idx)
        .iter()
        .filter(|&&(_, b)| mol.bonds[b].kekule == BondOrder::Double)
        .map(|&(n, _)| n)
        .collect();

    if has_triple {
        return "C7";
    }
    if !doubles.is_empty() {
        if doubles.iter().any(|&n| mol.atoms[n].element != Element::C) {
            return "C5";
        }
        let touches_aromatic =
            neighbors.iter().any(|&n| mol.atoms[n].aromatic);
        if touches_aromatic {
            return "C26";
        }
        return "C6";
    }

    // sp3 carbon.
    if neighbor_elem(is_heteroatom) {
        return if h >= 2 { "C3" } else { "C4" };
    }
    if neighbors.iter().any(|&n| mol.atoms[n].aromatic) {
        let aromatic_carbon = neighbors
            .iter()
            .any(|&n| mol.atoms[n].aromatic && mol.atoms[n].element == Element::C);
        return match h {
            3 => {
                if aromatic_carbon {
                    "C8"
                } else {
                    "C9"
                }
            }
            2 => "C10",
            1 => "C11",
            _ => "C12",
        };
    }
    if neighbor_elem(is_exotic) {
        return "C27";
    }
    if h >= 2 {
        "C1"
    } else {
        "C2"
    }
}

fn nitrogen_type(mol: &Molecule, idx: usize) -> &'static str {
    let atom = &mol.atoms[idx];
    let h = atom.total_h();
    let q = atom.formal_charge;
    if atom.aromatic {
        return match q.cmp(&0) {
            std::cmp::Ordering::Equal => "N11",
            std::cmp::Ordering::Greater => "N12",
            std::cmp::Ordering::Less => "NS",
        };
    }
    let has_triple = mol
        .neighbors(idx)
        .iter()
        .any(|&(_, b)| mol.bonds[b].kekule == BondOrder::Triple);
    let doubles: Vec<usize> = mol
        .neighbors(idx)
        .iter()
        .filter(|&&(_, b)| mol.bonds[b].kekule == BondOrder::Double)
        .map(|&(n, _)| n)
        .collect();
    let aromatic_neighbor = mol
        .neighbors(idx)
        .iter()
        .any(|&(n, _)| mol.atoms[n].aromatic);

    if q > 0 {
        if h >= 1 && doubles.is_empty() && !has_triple {
            return "N10";
        }
        if has_triple
            || doubles
                .iter()
                .any(|&n| mol.atoms[n].element == Element::N && mol.atoms[n].formal_charge < 0)
        {
            return "N14";
        }
        if h >= 1 {
            return "N10";
        }
        return "N13";
    }
    if q < 0 {
        return "N14";
    }
    if has_triple {
        return "N9";
    }
    if !doubles.is_empty() {
        return if h >= 1 { "N5" } else { "N6" };
    }
    match h {
        2 => {
            if aromatic_neighbor {
                "N3"
            } else {
                "N1"
            }
        }
        1 => {
            if aromatic_neighbor {
                "N4"
            } else {
                "N2"
            }
        }
        0 => {
            if aromatic_neighbor {
                "N8"
            } else {
                "N7"
            }
        }
        _ => "NS",
    }
}

fn oxygen_type(mol: &Molecule, idx: usize) -> &'static str {
    let atom = &mol.atoms[idx];
    if atom.aromatic {
        return "O1";
    }
    if atom.total_h() >= 1 {
        return "O2";
    }
    let neighbors: Vec<(usize, BondOrder)> = mol
        .neighbors(idx)
        .iter()
        .map(|&(n, b)| (n, mol.bonds[b].kekule))
        .collect();
    if atom.formal_charge < 0 {
        for &(n, _) in &neighbors {
            match mol.atoms[n].element {
                Element::N => return "O5",
                Element::S => return "O6",
                Element::C => {
                    let carboxylate = mol.neighbors(n).iter().any(|&(nn, bb)| {
                        nn != idx
                            && mol.atoms[nn].element == Element::O
                            && mol.bonds[bb].kekule == BondOrder::Double
                    });
                    return if carboxylate { "O12" } else { "O7" };
                }
                _ => return "O7",
            }
        }
        return "O7";
    }
    if let Some(&(partner, _)) = neighbors
        .iter()
        .find(|&&(_, order)| order == BondOrder::Double)
    {
        let p = &mol.atoms[partner];
        return match p.element {
            Element::N | Element::O => "O5",
            Element::S => "O6",
            Element::C => {
                if p.aromatic {
                    "O8"
                } else if mol
                    .neighbors(partner)
                    .iter()
                    .any(|&(nn, _)| nn != idx && is_heteroatom(mol.atoms[nn].element))
                {
                    "O11"
                } else if mol.neighbors(partner).iter().any(|&(nn, _)| mol.atoms[nn].aromatic) {
                    "O10"
                } else {
                    "O9"
                }
            }
            _ => "OS",
        };
    }
    if neighbors.len() == 2 {
        let any_aromatic = neighbors.iter().any(|&(n, _)| mol.atoms[n].aromatic);
        return if any_aromatic { "O4" } else { "O3" };
    }
    "OS"
}

fn hydrogen_type(mol: &Molecule, heavy: usize) -> &'static str {
    match mol.atoms[heavy].element {
        Element::C => "H1",
        Element::N => "H3",
        Element::O => {
            // Classify by the oxygen's other neighbor.
            let other = mol.neighbors(heavy).iter().map(|&(n, _)| n).next();
            match other {
                Some(n) => {
                    let nb = &mol.atoms[n];
                    match nb.element {
                        Element::N => "H3",
                        Element::O | Element::S => "H4",
                        Element::C => {
                            let enol_or_acid = mol.neighbors(n).iter().any(|&(nn, bb)| {
                                mol.bonds[bb].kekule == BondOrder::Double
                                    && matches!(
                                        mol.atoms[nn].element,
                                        Element::C | Element::N | Element::O | Element::S
                                    )
                            });
                            if enol_or_acid && !nb.aromatic {
                                "H4"
                            } else {
                                "H2"
                            }
                        }
                        _ => "H2",
                    }
                }
                None => "HS",
            }
        }
        _ => "H2",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;

    fn logp(s: &str) -> f64 {
        crippen(&parse_smiles(s).unwrap()).0
    }

    #[test]
    fn benzene_matches_published_contributions() {
        // Six aromatic CH (0.1581) plus six aromatic hydrogens (0.1230).
        let (lp, mr) = crippen(&parse_smiles("c1ccccc1").unwrap());
        assert!((lp - 1.6866).abs() < 0.01, "logp {lp}");
        assert!((mr - 26.442).abs() < 0.05, "mr {mr}");
    }

    #[test]
    fn reference_values_from_the_published_table() {
        assert!((logp("CCO") - (-0.0014)).abs() < 1e-4);
        assert!((logp("Oc1ccccc1") - 1.3922).abs() < 1e-4);
        assert!((logp("Cc1ccccc1") - 1.9950).abs() < 1e-3);
        assert!((logp("CC(=O)O") - 0.0909).abs() < 1e-3);
        assert!((logp("Nc1ccccc1") - 1.2688).abs() < 1e-3);
    }

    #[test]
    fn additive_over_fragments() {
        let combined = logp("CCO.CC(=O)O");
        assert!((combined - (logp("CCO") + logp("CC(=O)O"))).abs() < 1e-12);
    }

    #[test]
    fn single_matched_atom_equals_row_value() {
        // A lone neutral chlorine atom scores exactly the Cl row.
        let (lp, mr) = crippen(&parse_smiles("[Cl]").unwrap());
        assert!((lp - 0.6895).abs() < 1e-12);
        assert!((mr - 5.853).abs() < 1e-12);
    }
}
