//! Canonicalization properties: permutation invariance, round trips, and
//! ring-count consistency over randomly generated molecules.

mod common;

use molforge_chem::{canonical_smiles, molecular_formula, parse_smiles};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn permutation_invariance_thousand_pairs() {
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    let mut checked = 0;
    while checked < 1000 {
        let gen = common::random_smiles(&mut rng, 12, true);
        let mol = match parse_smiles(&gen.smiles) {
            Ok(m) => m,
            Err(e) => panic!("generator produced invalid SMILES {}: {e}", gen.smiles),
        };
        let perm = common::random_permutation(&mut rng, mol.num_atoms());
        let permuted = mol.permuted(&perm);
        let a = canonical_smiles(&mol);
        let b = canonical_smiles(&permuted);
        assert_eq!(a, b, "permutation changed canonical form of {}", gen.smiles);
        checked += 1;
    }
}

#[test]
fn parse_canonical_parse_is_isomorphic() {
    let mut rng = StdRng::seed_from_u64(0xabcd_1234);
    for _ in 0..1000 {
        let gen = common::random_smiles(&mut rng, 12, true);
        let mol = parse_smiles(&gen.smiles).expect("generator output parses");
        let canon = canonical_smiles(&mol);
        let reparsed = parse_smiles(&canon)
            .unwrap_or_else(|e| panic!("canonical form of {} failed to parse: {e}", gen.smiles));
        assert_eq!(
            canonical_smiles(&reparsed),
            canon,
            "round trip of {} via {} drifted",
            gen.smiles,
            canon
        );
        assert_eq!(mol.num_atoms(), reparsed.num_atoms());
        assert_eq!(mol.num_bonds(), reparsed.num_bonds());
        assert_eq!(molecular_formula(&mol), molecular_formula(&reparsed));
    }
}

#[test]
fn sssr_count_matches_circuit_rank() {
    let mut rng = StdRng::seed_from_u64(1729);
    for _ in 0..500 {
        let gen = common::random_smiles(&mut rng, 14, true);
        let mol = parse_smiles(&gen.smiles).expect("generator output parses");
        let components = mol.components().len();
        let rank = mol.num_bonds() + components - mol.num_atoms();
        assert_eq!(
            mol.rings.rings.len(),
            rank,
            "SSSR count disagrees with circuit rank for {}",
            gen.smiles
        );
    }
}

#[test]
fn hydrogen_conservation() {
    // implicit + explicit H + bond-order sum lands on a standard valence for
    // every neutral organic-subset atom.
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..500 {
        let gen = common::random_smiles(&mut rng, 12, true);
        let mol = parse_smiles(&gen.smiles).expect("generator output parses");
        for i in 0..mol.num_atoms() {
            let atom = &mol.atoms[i];
            if atom.formal_charge != 0 || !atom.element.in_organic_subset() {
                continue;
            }
            let total = mol.total_valence(i);
            assert!(
                atom.element.standard_valences().contains(&total),
                "atom {i} of {} has off-table valence {total}",
                gen.smiles
            );
        }
    }
}
