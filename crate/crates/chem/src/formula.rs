//! Molecular formula in Hill order, with hydrogen counts taken from the
//! implicit/explicit totals.

use std::collections::BTreeMap;

use crate::element::Element;
use crate::mol::Molecule;

/// Element -> atom count, including every hydrogen.
pub fn element_counts(mol: &Molecule) -> BTreeMap<Element, u64> {
    let mut counts: BTreeMap<Element, u64> = BTreeMap::new();
    for (i, atom) in mol.atoms.iter().enumerate() {
        *counts.entry(atom.element).or_insert(0) += 1;
        let h = atom.total_h() as u64;
        if h > 0 {
            *counts.entry(Element::H).or_insert(0) += h;
        }
        let _ = i;
    }
    counts
}

/// Hill-order formula: carbon, then hydrogen, then the rest alphabetically;
/// without carbon everything is alphabetical. A net-charge suffix is added
/// when the molecule is charged.
pub fn molecular_formula(mol: &Molecule) -> String {
    let counts = element_counts(mol);
    let mut parts: Vec<(String, u64)> = Vec::new();
    let has_carbon = counts.contains_key(&Element::C);

    let mut symbols: Vec<(&str, u64)> = counts
        .iter()
        .map(|(e, c)| (e.symbol(), *c))
        .collect();
    symbols.sort_by(|a, b| a.0.cmp(b.0));

    if has_carbon {
        parts.push(("C".to_string(), counts[&Element::C]));
        if let Some(&h) = counts.get(&Element::H) {
            parts.push(("H".to_string(), h));
        }
        for (sym, c) in &symbols {
            if *sym != "C" && *sym != "H" {
                parts.push((sym.to_string(), *c));
            }
        }
    } else {
        for (sym, c) in &symbols {
            parts.push((sym.to_string(), *c));
        }
    }

    let mut out = String::new();
    for (sym, count) in parts {
        out.push_str(&sym);
        if count > 1 {
            out.push_str(&count.to_string());
        }
    }

    let net: i32 = mol.atoms.iter().map(|a| a.formal_charge as i32).sum();
    match net {
        0 => {}
        1 => out.push('+'),
        -1 => out.push('-'),
        q if q > 0 => out.push_str(&format!("+{q}")),
        q => out.push_str(&format!("-{}", -q)),
    }
    out
}

/// Average molecular weight over all atoms including hydrogens.
pub fn molecular_weight(mol: &Molecule) -> f64 {
    element_counts(mol)
        .iter()
        .map(|(e, c)| e.average_mass() * *c as f64)
        .sum()
}
