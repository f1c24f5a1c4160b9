//! Periodic-table data: symbols, valences, masses, valence-electron counts.

use std::fmt;

/// An element identified by atomic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub u8);

/// Symbol table indexed by atomic number (index 0 unused).
const SYMBOLS: [&str; 87] = [
    "?", "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S",
    "Cl", "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge",
    "As", "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd",
    "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg",
    "Tl", "Pb", "Bi", "Po", "At", "Rn",
];

/// Average atomic masses (IUPAC conventional values) for formula weights.
/// Elements beyond the common organic set fall back to integer mass numbers.
const MASSES: [(u8, f64); 30] = [
    (1, 1.008),
    (3, 6.94),
    (5, 10.811),
    (6, 12.011),
    (7, 14.007),
    (8, 15.999),
    (9, 18.998),
    (11, 22.990),
    (12, 24.305),
    (13, 26.982),
    (14, 28.086),
    (15, 30.974),
    (16, 32.066),
    (17, 35.453),
    (19, 39.098),
    (20, 40.078),
    (26, 55.845),
    (29, 63.546),
    (30, 65.38),
    (33, 74.922),
    (34, 78.971),
    (35, 79.904),
    (47, 107.868),
    (50, 118.71),
    (52, 127.60),
    (53, 126.904),
    (56, 137.327),
    (78, 195.084),
    (79, 196.967),
    (80, 200.592),
];

impl Element {
    pub const H: Element = Element(1);
    pub const B: Element = Element(5);
    pub const C: Element = Element(6);
    pub const N: Element = Element(7);
    pub const O: Element = Element(8);
    pub const F: Element = Element(9);
    pub const P: Element = Element(15);
    pub const S: Element = Element(16);
    pub const CL: Element = Element(17);
    pub const SE: Element = Element(34);
    pub const BR: Element = Element(35);
    pub const TE: Element = Element(52);
    pub const I: Element = Element(53);

    pub fn atomic_number(self) -> u8 {
        self.0
    }

    pub fn symbol(self) -> &'static str {
        SYMBOLS.get(self.0 as usize).copied().unwrap_or("?")
    }

    pub fn from_symbol(s: &str) -> Option<Element> {
        SYMBOLS
            .iter()
            .position(|&sym| sym == s)
            .map(|z| Element(z as u8))
    }

    /// Average atomic mass, or the atomic number as a crude fallback.
    pub fn average_mass(self) -> f64 {
        MASSES
            .iter()
            .find(|(z, _)| *z == self.0)
            .map(|(_, m)| *m)
            .unwrap_or(self.0 as f64 * 2.0)
    }

    /// Elements writable bare (no brackets) in SMILES.
    pub fn in_organic_subset(self) -> bool {
        matches!(
            self,
            Element::B
                | Element::C
                | Element::N
                | Element::O
                | Element::P
                | Element::S
                | Element::F
                | Element::CL
                | Element::BR
                | Element::I
        )
    }

    /// Elements that may carry the aromatic flag.
    pub fn can_be_aromatic(self) -> bool {
        matches!(
            self,
            Element::B
                | Element::C
                | Element::N
                | Element::O
                | Element::P
                | Element::S
                | Element::SE
                | Element::TE
        )
    }

    /// Fixed standard valences used for implicit-hydrogen filling and
    /// valence checks; elements outside this table get no implicit H.
    pub fn standard_valences(self) -> &'static [u8] {
        match self {
            Element::B => &[3],
            Element::C => &[4],
            Element::N => &[3],
            Element::O => &[2],
            Element::P => &[3, 5],
            Element::S => &[2, 4, 6],
            Element::F | Element::CL | Element::BR | Element::I => &[1],
            _ => &[],
        }
    }

    /// Valences shifted by formal charge: left-of-carbon elements lose
    /// capacity with positive charge, carbon saturates either way, and the
    /// electronegative block gains one bond per positive charge.
    pub fn allowed_valences(self, charge: i8) -> Vec<u8> {
        let base = self.standard_valences();
        let shift = |v: u8, d: i32| -> Option<u8> {
            let adj = v as i32 + d;
            (0..=8).contains(&adj).then_some(adj as u8)
        };
        let delta = match self {
            Element::B => -(charge as i32),
            Element::C => -(charge.abs() as i32),
            _ => charge as i32,
        };
        base.iter().filter_map(|&v| shift(v, delta)).collect()
    }

    /// Valence-electron count for the Kier–Hall delta-v.
    pub fn valence_electrons(self) -> Option<u8> {
        let z = self.0;
        let group = match z {
            1 => 1,
            2 => 2,
            3..=10 => z - 2,
            11..=18 => z - 10,
            31..=36 => z - 28,
            49..=54 => z - 46,
            _ => return None,
        };
        Some(group)
    }

    /// True for period-2 elements (delta-v uses the simple Zv - h form).
    pub fn is_second_row(self) -> bool {
        (3..=10).contains(&self.0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_round_trip() {
        for z in 1..=86u8 {
            let e = Element(z);
            assert_eq!(Element::from_symbol(e.symbol()), Some(e));
        }
        assert_eq!(Element::from_symbol("Cl"), Some(Element::CL));
        assert_eq!(Element::from_symbol("Xx"), None);
    }

    #[test]
    fn charged_valences() {
        assert_eq!(Element::N.allowed_valences(1), vec![4]);
        assert_eq!(Element::N.allowed_valences(-1), vec![2]);
        assert_eq!(Element::O.allowed_valences(1), vec![3]);
        assert_eq!(Element::C.allowed_valences(1), vec![3]);
        assert_eq!(Element::C.allowed_valences(-1), vec![3]);
        assert_eq!(Element::B.allowed_valences(-1), vec![4]);
        assert_eq!(Element::S.allowed_valences(1), vec![3, 5, 7]);
    }

    #[test]
    fn valence_electron_counts() {
        assert_eq!(Element::C.valence_electrons(), Some(4));
        assert_eq!(Element::N.valence_electrons(), Some(5));
        assert_eq!(Element::O.valence_electrons(), Some(6));
        assert_eq!(Element::S.valence_electrons(), Some(6));
        assert_eq!(Element::CL.valence_electrons(), Some(7));
        assert_eq!(Element::BR.valence_electrons(), Some(7));
        assert_eq!(Element::I.valence_electrons(), Some(7));
        assert_eq!(Element::P.valence_electrons(), Some(5));
    }
}
