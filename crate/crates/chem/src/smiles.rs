//! SMILES reader: organic subset plus bracket atoms with charge, isotope,
//! and explicit hydrogens. Stereo markers are parsed and kept as annotations
//! but play no role in perception or descriptors.

use std::collections::HashMap;

use crate::arom;
use crate::element::Element;
use crate::error::ParseDiagnostics;
use crate::mol::{Atom, Bond, BondDir, BondOrder, ChiralTag, Molecule};
use crate::rings;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PendingBond {
    Elided,
    Order(BondOrder),
    Directional(BondDir),
}

impl PendingBond {
    fn label(self) -> &'static str {
        match self {
            PendingBond::Elided => "",
            PendingBond::Order(BondOrder::Single) => "-",
            PendingBond::Order(BondOrder::Double) => "=",
            PendingBond::Order(BondOrder::Triple) => "#",
            PendingBond::Order(BondOrder::Aromatic) => ":",
            PendingBond::Directional(BondDir::Up) => "/",
            PendingBond::Directional(BondDir::Down) => "\\",
        }
    }
}

struct RawBond {
    a: usize,
    b: usize,
    kind: PendingBond,
    pos: usize,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    atoms: Vec<Atom>,
    bare: Vec<bool>,
    positions: Vec<usize>,
    bonds: Vec<RawBond>,
    prev: Option<usize>,
    pending: Option<PendingBond>,
    branch_stack: Vec<Option<usize>>,
    ring_open: HashMap<u16, (usize, Option<PendingBond>, usize)>,
}

/// Parses SMILES text into an annotated molecule. Every failure comes back as
/// positioned diagnostics; no input panics.
pub fn parse_smiles(text: &str) -> Result<Molecule, ParseDiagnostics> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseDiagnostics::error(0, "empty SMILES"));
    }
    let mut parser = Parser {
        bytes: trimmed.as_bytes(),
        pos: 0,
        atoms: Vec::new(),
        bare: Vec::new(),
        positions: Vec::new(),
        bonds: Vec::new(),
        prev: None,
        pending: None,
        branch_stack: Vec::new(),
        ring_open: HashMap::new(),
    };
    parser.run()?;
    parser.finish(trimmed.to_string())
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, text: impl Into<String>) -> Result<T, ParseDiagnostics> {
        Err(ParseDiagnostics::error(pos, text))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn run(&mut self) -> Result<(), ParseDiagnostics> {
        while let Some(c) = self.peek() {
            let start = self.pos;
            match c {
                b'-' => {
                    self.bump();
                    self.set_pending(PendingBond::Order(BondOrder::Single), start)?;
                }
                b'=' => {
                    self.bump();
                    self.set_pending(PendingBond::Order(BondOrder::Double), start)?;
                }
                b'#' => {
                    self.bump();
                    self.set_pending(PendingBond::Order(BondOrder::Triple), start)?;
                }
                b':' => {
                    self.bump();
                    self.set_pending(PendingBond::Order(BondOrder::Aromatic), start)?;
                }
                b'/' => {
                    self.bump();
                    self.set_pending(PendingBond::Directional(BondDir::Up), start)?;
                }
                b'\\' => {
                    self.bump();
                    self.set_pending(PendingBond::Directional(BondDir::Down), start)?;
                }
                b'(' => {
                    self.bump();
                    if self.prev.is_none() {
                        return self.err(start, "branch start with no preceding atom");
                    }
                    if self.pending.is_some() {
                        return self.err(start, "bond symbol before branch start");
                    }
                    self.branch_stack.push(self.prev);
                }
                b')' => {
                    self.bump();
                    if self.pending.is_some() {
                        return self.err(start, "dangling bond before branch close");
                    }
                    match self.branch_stack.pop() {
                        Some(p) => self.prev = p,
                        None => return self.err(start, "unmatched closing parenthesis"),
                    }
                }
                b'.' => {
                    self.bump();
                    if !self.branch_stack.is_empty() {
                        return self.err(start, "fragment separator inside a branch");
                    }
                    if self.pending.is_some() {
                        return self.err(start, "bond symbol before fragment separator");
                    }
                    self.prev = None;
                }
                b'0'..=b'9' => {
                    self.bump();
                    self.ring_closure((c - b'0') as u16, start)?;
                }
                b'%' => {
                    self.bump();
                    let d1 = self.bump();
                    let d2 = self.bump();
                    match (d1, d2) {
                        (Some(a), Some(b)) if a.is_ascii_digit() && b.is_ascii_digit() => {
                            let n = (a - b'0') as u16 * 10 + (b - b'0') as u16;
                            self.ring_closure(n, start)?;
                        }
                        _ => return self.err(start, "expected two digits after %"),
                    }
                }
                b'[' => {
                    self.bump();
                    self.bracket_atom(start)?;
                }
                b'*' => {
                    return self.err(start, "unknown element symbol '*'");
                }
                b' ' | b'\t' => {
                    // Trailing title field; everything before must be complete.
                    break;
                }
                _ => {
                    self.organic_atom(start)?;
                }
            }
        }
        Ok(())
    }

    fn set_pending(&mut self, bond: PendingBond, pos: usize) -> Result<(), ParseDiagnostics> {
        if self.pending.is_some() {
            return self.err(pos, "two consecutive bond symbols");
        }
        if self.prev.is_none() {
            return self.err(pos, "bond symbol with no preceding atom");
        }
        self.pending = Some(bond);
        Ok(())
    }

    fn organic_atom(&mut self, start: usize) -> Result<(), ParseDiagnostics> {
        let c = self.bump().expect("caller peeked");
        let (element, aromatic) = match c {
            b'C' => {
                if self.peek() == Some(b'l') {
                    self.bump();
                    (Element::CL, false)
                } else {
                    (Element::C, false)
                }
            }
            b'B' => {
                if self.peek() == Some(b'r') {
                    self.bump();
                    (Element::BR, false)
                } else {
                    (Element::B, false)
                }
            }
            b'N' => (Element::N, false),
            b'O' => (Element::O, false),
            b'P' => (Element::P, false),
            b'S' => (Element::S, false),
            b'F' => (Element::F, false),
            b'I' => (Element::I, false),
            b'b' => (Element::B, true),
            b'c' => (Element::C, true),
            b'n' => (Element::N, true),
            b'o' => (Element::O, true),
            b'p' => (Element::P, true),
            b's' => (Element::S, true),
            other => {
                return self.err(
                    start,
                    format!("unknown element symbol '{}'", other as char),
                );
            }
        };
        self.push_atom(
            Atom {
                element,
                formal_charge: 0,
                explicit_h: 0,
                implicit_h: 0,
                aromatic,
                isotope: None,
                chirality: None,
                in_ring: false,
                degree: 0,
            },
            true,
            start,
        )
    }

    fn bracket_atom(&mut self, start: usize) -> Result<(), ParseDiagnostics> {
        let mut isotope: Option<u16> = None;
        if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            let mut v: u32 = 0;
            while let Some(d) = self.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                v = v * 10 + (d - b'0') as u32;
                self.bump();
            }
            if v > u16::MAX as u32 {
                return self.err(start, "isotope out of range");
            }
            isotope = Some(v as u16);
        }

        let sym_pos = self.pos;
        let first = match self.bump() {
            Some(b) => b,
            None => return self.err(start, "unterminated bracket atom"),
        };
        let mut symbol = String::new();
        symbol.push(first as char);
        if first.is_ascii_lowercase() {
            // Two-letter aromatic symbols (se, te) are allowed.
            if matches!(self.peek(), Some(b) if b.is_ascii_lowercase())
                && matches!(&symbol[..], "s" | "t" | "a")
            {
                let two: String = format!("{}{}", first as char, self.peek().unwrap() as char);
                if matches!(two.as_str(), "se" | "te" | "as") {
                    self.bump();
                    symbol = two;
                }
            }
        } else if first.is_ascii_uppercase() {
            if matches!(self.peek(), Some(b) if b.is_ascii_lowercase()) {
                // Greedy two-letter symbol, backtracking to one letter when
                // the pair is not a known element (e.g. [CH4]).
                let two: String = format!("{}{}", first as char, self.peek().unwrap() as char);
                if Element::from_symbol(&two).is_some() {
                    self.bump();
                    symbol = two;
                }
            }
        } else {
            return self.err(sym_pos, "expected element symbol in bracket");
        }

        let aromatic = symbol.chars().next().unwrap().is_ascii_lowercase();
        let canonical_symbol = if aromatic {
            let mut s = symbol.clone();
            s.replace_range(0..1, &symbol[0..1].to_ascii_uppercase());
            s
        } else {
            symbol.clone()
        };
        let element = match Element::from_symbol(&canonical_symbol) {
            Some(e) => e,
            None => return self.err(sym_pos, format!("unknown element symbol '{symbol}'")),
        };
        if aromatic && !element.can_be_aromatic() {
            return self.err(sym_pos, format!("element {symbol} cannot be aromatic"));
        }

        let mut chirality = None;
        if self.peek() == Some(b'@') {
            self.bump();
            if self.peek() == Some(b'@') {
                self.bump();
                chirality = Some(ChiralTag::Cw);
            } else {
                chirality = Some(ChiralTag::Ccw);
            }
            // Extended chirality classes (@TH1 etc.) are not supported.
            if self.pos + 1 < self.bytes.len() {
                let pair = &self.bytes[self.pos..self.pos + 2];
                if matches!(pair, b"TH" | b"AL" | b"SP" | b"TB" | b"OH") {
                    return self.err(self.pos, "extended chirality classes are not supported");
                }
            }
        }

        let mut explicit_h: u8 = 0;
        if self.peek() == Some(b'H') {
            self.bump();
            explicit_h = 1;
            if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                let mut v: u32 = 0;
                while let Some(d) = self.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    v = v * 10 + (d - b'0') as u32;
                    self.bump();
                }
                if v > 9 {
                    return self.err(self.pos, "hydrogen count out of range");
                }
                explicit_h = v as u8;
            }
        }

        let mut charge: i8 = 0;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            let sign: i8 = if self.bump() == Some(b'+') { 1 } else { -1 };
            let mut magnitude: i8 = 1;
            if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                magnitude = (self.bump().unwrap() - b'0') as i8;
            } else {
                while self.peek() == Some(if sign > 0 { b'+' } else { b'-' }) {
                    self.bump();
                    magnitude += 1;
                }
            }
            charge = sign * magnitude;
        }

        // Atom-map class: accepted and discarded.
        if self.peek() == Some(b':') {
            self.bump();
            if !matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                return self.err(self.pos, "expected digits after atom-map colon");
            }
            while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                self.bump();
            }
        }

        if self.bump() != Some(b']') {
            return self.err(start, "unterminated bracket atom");
        }

        if element == Element::H {
            return self.err(
                sym_pos,
                "explicit hydrogen atoms are not supported; use bracket H counts",
            );
        }

        self.push_atom(
            Atom {
                element,
                formal_charge: charge,
                explicit_h,
                implicit_h: 0,
                aromatic,
                isotope,
                chirality,
                in_ring: false,
                degree: 0,
            },
            false,
            start,
        )
    }

    fn push_atom(&mut self, atom: Atom, bare: bool, pos: usize) -> Result<(), ParseDiagnostics> {
        let idx = self.atoms.len();
        self.atoms.push(atom);
        self.bare.push(bare);
        self.positions.push(pos);
        if let Some(prev) = self.prev {
            let kind = self.pending.take().unwrap_or(PendingBond::Elided);
            self.add_bond(prev, idx, kind, pos)?;
        } else if let Some(p) = self.pending.take() {
            return self.err(pos, format!("bond '{}' with no preceding atom", p.label()));
        }
        self.prev = Some(idx);
        Ok(())
    }

    fn add_bond(
        &mut self,
        a: usize,
        b: usize,
        kind: PendingBond,
        pos: usize,
    ) -> Result<(), ParseDiagnostics> {
        if a == b {
            return self.err(pos, "bond joins an atom to itself");
        }
        if self
            .bonds
            .iter()
            .any(|bond| (bond.a == a && bond.b == b) || (bond.a == b && bond.b == a))
        {
            return self.err(pos, "duplicate bond between the same atoms");
        }
        self.bonds.push(RawBond { a, b, kind, pos });
        Ok(())
    }

    fn ring_closure(&mut self, digit: u16, pos: usize) -> Result<(), ParseDiagnostics> {
        let current = match self.prev {
            Some(a) => a,
            None => return self.err(pos, "ring closure with no preceding atom"),
        };
        let pending = self.pending.take();
        match self.ring_open.remove(&digit) {
            None => {
                self.ring_open.insert(digit, (current, pending, pos));
            }
            Some((other, other_bond, _)) => {
                let kind = match (pending, other_bond) {
                    (None, None) => PendingBond::Elided,
                    (Some(k), None) | (None, Some(k)) => k,
                    (Some(k1), Some(k2)) if k1 == k2 => k1,
                    (Some(_), Some(_)) => {
                        return self.err(pos, format!("conflicting bond orders for ring closure {digit}"));
                    }
                };
                self.add_bond(other, current, kind, pos)?;
            }
        }
    Ok(())
    }

    fn finish(self, source: String) -> Result<Molecule, ParseDiagnostics> {
        let Parser {
            atoms,
            bare,
            positions,
            bonds,
            pending,
            branch_stack,
            ring_open,
            pos,
            ..
        } = self;

        if let Some((digit, &(_, _, open_pos))) = ring_open.iter().min_by_key(|(_, v)| v.2).map(|(k, v)| (*k, v))
        {
            return Err(ParseDiagnostics::error(
                open_pos,
                format!("unclosed ring closure {digit}"),
            ));
        }
        if !branch_stack.is_empty() {
            return Err(ParseDiagnostics::error(pos, "unmatched opening parenthesis"));
        }
        if let Some(p) = pending {
            return Err(ParseDiagnostics::error(
                pos,
                format!("dangling bond '{}' at end of input", p.label()),
            ));
        }
        if atoms.is_empty() {
            return Err(ParseDiagnostics::error(0, "no atoms in SMILES"));
        }

        let aromatic_flags: Vec<bool> = atoms.iter().map(|a| a.aromatic).collect();
        let built_bonds: Vec<Bond> = bonds
            .iter()
            .map(|rb| Bond {
                a: rb.a,
                b: rb.b,
                order: match rb.kind {
                    PendingBond::Order(o) => o,
                    PendingBond::Elided | PendingBond::Directional(_) => BondOrder::Single,
                },
                kekule: BondOrder::Single,
                dir: match rb.kind {
                    PendingBond::Directional(d) => Some(d),
                    _ => None,
                },
                in_ring: false,
            })
            .collect();

        let mut mol = Molecule::new(atoms, built_bonds, source);
        for i in 0..mol.num_atoms() {
            mol.atoms[i].degree = mol.neighbors(i).len() as u8;
        }
        rings::mark_ring_membership(&mut mol);

        // Elided bonds between two aromatic atoms become aromatic when they
        // sit in a ring; explicit ':' bonds must do so.
        for (i, rb) in bonds.iter().enumerate() {
            let both_aromatic = aromatic_flags[rb.a] && aromatic_flags[rb.b];
            match rb.kind {
                PendingBond::Elided if both_aromatic && mol.bonds[i].in_ring => {
                    mol.bonds[i].order = BondOrder::Aromatic;
                }
                PendingBond::Order(BondOrder::Aromatic) => {
                    if !both_aromatic || !mol.bonds[i].in_ring {
                        return Err(ParseDiagnostics::error(
                            rb.pos,
                            "aromatic bond outside an aromatic ring",
                        ));
                    }
                }
                _ => {}
            }
        }

        let needs_pi = arom::assign_hydrogens(&mut mol, &bare, &positions)?;
        arom::kekulize(&mut mol, &needs_pi, &positions)?;
        arom::check_valences(&mol, &positions)?;
        let candidates = rings::perceive_sssr(&mut mol);
        arom::perceive_aromaticity(&mut mol, &candidates, &positions)?;
        Ok(mol)
    }
}

/// Convenience wrapper producing the validation report of `parse_smiles`.
pub fn validate_smiles(text: &str) -> ParseDiagnostics {
    match parse_smiles(text) {
        Ok(_) => ParseDiagnostics {
            status: crate::error::ParseStatus::Valid,
            messages: Vec::new(),
        },
        Err(d) => d,
    }
}
