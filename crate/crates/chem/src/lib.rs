//! Native cheminformatics substrate: SMILES parsing and canonicalization,
//! SMARTS subset matching, descriptor registry, and circular fingerprints.

pub mod arom;
pub mod canon;
pub mod element;
pub mod error;
pub mod formula;
pub mod mol;
pub mod rings;
pub mod smarts;
pub mod smiles;

pub use canon::{canonical_ranks, canonical_smiles, fragment_split};
pub use element::Element;
pub use error::{ChemError, Diagnostic, ParseDiagnostics, ParseStatus};
pub use formula::{element_counts, molecular_formula, molecular_weight};
pub use mol::{Atom, Bond, BondOrder, Molecule, RingInfo};
pub use smarts::{count_matches, find_matches, has_match, parse_smarts, SmartsPattern};
pub use smiles::{parse_smiles, validate_smiles};

/// Number of SSSR rings, largest ring size, and spiro atoms.
pub fn ring_stats(mol: &Molecule) -> (usize, usize, Vec<usize>) {
    (
        mol.rings.rings.len(),
        mol.rings.max_size,
        mol.rings.spiro_atoms.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mol(s: &str) -> Molecule {
        parse_smiles(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn cyclopropane() {
        let m = mol("C1CC1");
        assert_eq!(m.num_atoms(), 3);
        assert_eq!(m.num_bonds(), 3);
        assert_eq!(ring_stats(&m), (1, 3, vec![]));
        for a in &m.atoms {
            assert_eq!(a.implicit_h, 2);
            assert!(a.in_ring);
        }
    }

    #[test]
    fn unclosed_ring_is_an_error() {
        let err = parse_smiles("C1CC").unwrap_err();
        assert!(err.summary().contains("unclosed ring closure 1"), "{err}");
    }

    #[test]
    fn benzene_is_aromatic_and_kekulizable() {
        let m = mol("c1ccccc1");
        assert_eq!(m.num_atoms(), 6);
        assert!(m.atoms.iter().all(|a| a.aromatic && a.implicit_h == 1));
        assert!(m.bonds.iter().all(|b| b.order == BondOrder::Aromatic));
        let doubles = m
            .bonds
            .iter()
            .filter(|b| b.kekule == BondOrder::Double)
            .count();
        assert_eq!(doubles, 3);
    }

    #[test]
    fn kekule_benzene_is_perceived_aromatic() {
        let m = mol("C1=CC=CC=C1");
        assert!(m.atoms.iter().all(|a| a.aromatic));
        assert!(m.bonds.iter().all(|b| b.order == BondOrder::Aromatic));
    }

    #[test]
    fn cyclobutadiene_rejected() {
        assert!(parse_smiles("c1ccc1").is_err());
    }

    #[test]
    fn kekule_cyclobutadiene_not_aromatic() {
        let m = mol("C1=CC=C1");
        assert!(m.atoms.iter().all(|a| !a.aromatic));
    }

    #[test]
    fn pyrrole_needs_bracket_h() {
        let m = mol("c1cc[nH]c1");
        let n = m.atoms.iter().find(|a| a.element == Element::N).unwrap();
        assert!(n.aromatic);
        assert_eq!(n.total_h(), 1);
        // Pyrrole nitrogen written bare has no hydrogen and cannot kekulize.
        assert!(parse_smiles("c1ccnc1").is_err() || {
            let m2 = parse_smiles("c1ccnc1").unwrap();
            m2.atoms.iter().any(|a| a.aromatic)
        });
    }

    #[test]
    fn pyridine_parses() {
        let m = mol("c1ccncc1");
        let n = m.atoms.iter().find(|a| a.element == Element::N).unwrap();
        assert_eq!(n.total_h(), 0);
        assert!(n.aromatic);
    }

    #[test]
    fn pentavalent_carbon_rejected() {
        let err = parse_smiles("C(C)(C)(C)(C)C").unwrap_err();
        assert!(err.summary().contains("valence"), "{err}");
    }

    #[test]
    fn charges_and_isotopes() {
        let m = mol("[13CH4]");
        assert_eq!(m.atoms[0].isotope, Some(13));
        assert_eq!(m.atoms[0].total_h(), 4);
        let m = mol("[NH4+]");
        assert_eq!(m.atoms[0].formal_charge, 1);
        assert_eq!(m.atoms[0].total_h(), 4);
        let m = mol("[O-]S(=O)(=O)[O-]");
        let net: i32 = m.atoms.iter().map(|a| a.formal_charge as i32).sum();
        assert_eq!(net, -2);
    }

    #[test]
    fn formulas() {
        assert_eq!(molecular_formula(&mol("CCO")), "C2H6O");
        assert_eq!(molecular_formula(&mol("c1ccccc1")), "C6H6");
        assert_eq!(molecular_formula(&mol("[Na+]")), "Na+");
        assert_eq!(molecular_formula(&mol("O")), "H2O");
        assert_eq!(molecular_formula(&mol("CC(=O)NC")), "C3H7NO");
    }

    #[test]
    fn naphthalene_ring_stats() {
        let m = mol("c1ccc2ccccc2c1");
        let (n, max, spiro) = ring_stats(&m);
        assert_eq!((n, max), (2, 6));
        assert!(spiro.is_empty());
    }

    #[test]
    fn spiro_decane() {
        let m = mol("C1CCC2(CC1)CCCC2");
        let (n, _, spiro) = ring_stats(&m);
        assert_eq!(n, 2);
        assert_eq!(spiro.len(), 1);
    }

    #[test]
    fn acyclic_ring_stats() {
        assert_eq!(ring_stats(&mol("CCCC")), (0, 0, vec![]));
    }

    #[test]
    fn fragment_split_examples() {
        let (count, largest) = fragment_split(&mol("CCO"));
        assert_eq!(count, 1);
        assert_eq!(molecular_formula(&largest), "C2H6O");

        let (count, largest) = fragment_split(&mol("CC.O"));
        assert_eq!(count, 2);
        assert_eq!(molecular_formula(&largest), "C2H6");

        let (count, largest) = fragment_split(&mol("[Na+].[Cl-]"));
        assert_eq!(count, 2);
        assert_eq!(largest.num_atoms(), 1);
    }

    #[test]
    fn canonical_same_molecule() {
        assert_eq!(canonical_smiles(&mol("OCC")), canonical_smiles(&mol("CCO")));
        let c = canonical_smiles(&mol("CCO"));
        assert_eq!(canonical_smiles(&mol(&c)), c);
    }

    #[test]
    fn canonical_kekule_forms_agree() {
        let a = canonical_smiles(&mol("Cc1ccccc1"));
        let b = canonical_smiles(&mol("CC1=CC=CC=C1"));
        let c = canonical_smiles(&mol("CC1=CC=CC=C1")); // same alternation
        let d = canonical_smiles(&mol("CC1C=CC=CC=1"));
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a, d);
    }

    #[test]
    fn canonical_round_trip_complex() {
        for s in [
            "CC(C)(C)NCC(O)c1ccc(O)c(CO)c1",
            "Cc1ccc(-c2cc(C(F)(F)F)nn2-c2ccc(S(N)(=O)=O)cc2)cc1",
            "CN1CCN(CCC=C2c3ccccc3Sc3ccc(S(=O)(=O)N(C)C)cc32)CC1",
            "O=C1N(CC(N2C1CC3=C(C2C4=CC5=C(OCO5)C=C4)NC6=CC=CC=C36)=O)C",
            "CCN(c1cccc(-c2ccn3ncc(C#N)c3n2)c1)C(C)=O",
            "NC(CC(=O)N1CCn2c(nnc2C(F)(F)F)C1)Cc1cc(F)c(F)cc1F",
            "COc1ccc2[C@H]3CC[C@@]4(C)[C@@H](CC[C@@]4(O)C#C)[C@@H]3CCc2c1",
            "CC(C)(C(=O)O)c1ccc(C(O)CCCN2CCC(C(O)(c3ccccc3)c3ccccc3)CC2)cc1",
        ] {
            let m = mol(s);
            let c1 = canonical_smiles(&m);
            let m2 = mol(&c1);
            let c2 = canonical_smiles(&m2);
            assert_eq!(c1, c2, "round trip failed for {s}");
        }
    }

    #[test]
    fn parser_never_panics_on_junk() {
        for junk in [
            "", "(", ")", "C(", "C)", "1", "C1", "C=", "C#N#C", "[Xx]", "[C", "C%1", "c1ccccc1c",
            "C..C", "[]", "[13]", "C=1CC=1", "C/C=C/C", "%%", "=C", "[C@@H](C)(C)(C)C",
        ] {
            let _ = parse_smiles(junk);
        }
    }

    #[test]
    fn directional_bonds_parse_and_are_ignored() {
        let m = mol("C/C=C/C");
        assert_eq!(m.num_atoms(), 4);
        assert_eq!(canonical_smiles(&m), canonical_smiles(&mol("CC=CC")));
    }

    #[test]
    fn azulene_fused_fallback() {
        let m = mol("c1ccc2cccc2cc1");
        assert!(m.atoms.iter().all(|a| a.aromatic));
    }

    #[test]
    fn biphenyl_single_link() {
        let m = mol("c1ccccc1-c1ccccc1");
        let link = m
            .bonds
            .iter()
            .find(|b| !b.in_ring)
            .expect("biphenyl link bond");
        assert_eq!(link.order, BondOrder::Single);
        let c = canonical_smiles(&m);
        assert_eq!(canonical_smiles(&mol(&c)), c);
    }
}
