//! SMARTS text -> pattern graph. Shares the SMILES surface syntax for
//! branches and ring closures; atom and bond expressions carry the logic
//! operators.

use std::collections::HashMap;

use crate::element::Element;
use crate::error::ChemError;

use super::{AtomExpr, AtomPrim, BondExpr, BondPrim, PatternBond, SmartsPattern};

pub fn parse_smarts(text: &str) -> Result<SmartsPattern, ChemError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ChemError::SmartsSyntax {
            position: 0,
            text: "empty SMARTS".into(),
        });
    }
    let mut p = Parser {
        bytes: trimmed.as_bytes(),
        pos: 0,
        atoms: Vec::new(),
        bonds: Vec::new(),
        prev: None,
        pending: None,
        branch_stack: Vec::new(),
        ring_open: HashMap::new(),
    };
    p.run()?;
    p.finish(trimmed.to_string())
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    atoms: Vec<AtomExpr>,
    bonds: Vec<PatternBond>,
    prev: Option<usize>,
    pending: Option<BondExpr>,
    branch_stack: Vec<Option<usize>>,
    ring_open: HashMap<u16, (usize, Option<BondExpr>)>,
}

impl<'a> Parser<'a> {
    fn syntax<T>(&self, pos: usize, text: impl Into<String>) -> Result<T, ChemError> {
        Err(ChemError::SmartsSyntax {
            position: pos,
            text: text.into(),
        })
    }

    fn unsupported<T>(&self, what: impl Into<String>) -> Result<T, ChemError> {
        Err(ChemError::UnsupportedSmarts(what.into()))
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

    fn run(&mut self) -> Result<(), ChemError> {
        while let Some(c) = self.peek() {
            let start = self.pos;
            match c {
                b'[' => {
                    self.bump();
                    let expr = self.bracket_expr()?;
                    self.push_atom(expr)?;
                }
                b'(' => {
                    self.bump();
                    if self.prev.is_none() {
                        return self.unsupported("component-level grouping '(' at pattern start");
                    }
                    self.branch_stack.push(self.prev);
                }
                b')' => {
                    self.bump();
                    match self.branch_stack.pop() {
                        Some(p) => self.prev = p,
                        None => return self.syntax(start, "unmatched closing parenthesis"),
                    }
                }
                b'.' => return self.unsupported("disconnected pattern '.'"),
                b'0'..=b'9' => {
                    self.bump();
                    self.ring_closure((c - b'0') as u16, start)?;
                }
                b'%' => {
                    self.bump();
                    let (d1, d2) = (self.bump(), self.bump());
                    match (d1, d2) {
                        (Some(a), Some(b)) if a.is_ascii_digit() && b.is_ascii_digit() => {
                            let n = (a - b'0') as u16 * 10 + (b - b'0') as u16;
                            self.ring_closure(n, start)?;
                        }
                        _ => return self.syntax(start, "expected two digits after %"),
                    }
                }
                b'-' | b'=' | b'#' | b':' | b'~' | b'@' | b'!' | b'/' | b'\\' => {
                    let expr = self.bond_expr()?;
                    if self.pending.is_some() {
                        return self.syntax(start, "two consecutive bond expressions");
                    }
                    self.pending = Some(expr);
                }
                b'$' => return self.unsupported("recursive SMARTS '$(...)'"),
                b'*' => {
                    self.bump();
                    self.push_atom(AtomExpr {
                        groups: vec![vec![vec![(false, AtomPrim::Wildcard)]]],
                    })?;
                }
                _ => {
                    let prim = self.bare_atom(start)?;
                    self.push_atom(AtomExpr {
                        groups: vec![vec![vec![(false, prim)]]],
                    })?;
                }
            }
        }
        Ok(())
    }

    fn bare_atom(&mut self, start: usize) -> Result<AtomPrim, ChemError> {
        let c = self.bump().expect("caller peeked");
        let mut two_letter = |p: &mut Self, second: u8, z: u8| -> Option<AtomPrim> {
            if p.peek() == Some(second) {
                p.bump();
                Some(AtomPrim::Element {
                    z,
                    aromatic: Some(false),
                })
            } else {
                None
            }
        };
        let prim = match c {
            b'C' => two_letter(self, b'l', 17).unwrap_or(AtomPrim::Element {
                z: 6,
                aromatic: Some(false),
            }),
            b'B' => two_letter(self, b'r', 35).unwrap_or(AtomPrim::Element {
                z: 5,
                aromatic: Some(false),
            }),
            b'N' => AtomPrim::Element { z: 7, aromatic: Some(false) },
            b'O' => AtomPrim::Element { z: 8, aromatic: Some(false) },
            b'P' => AtomPrim::Element { z: 15, aromatic: Some(false) },
            b'S' => AtomPrim::Element { z: 16, aromatic: Some(false) },
            b'F' => AtomPrim::Element { z: 9, aromatic: Some(false) },
            b'I' => AtomPrim::Element { z: 53, aromatic: Some(false) },
            b'b' => AtomPrim::Element { z: 5, aromatic: Some(true) },
            b'c' => AtomPrim::Element { z: 6, aromatic: Some(true) },
            b'n' => AtomPrim::Element { z: 7, aromatic: Some(true) },
            b'o' => AtomPrim::Element { z: 8, aromatic: Some(true) },
            b'p' => AtomPrim::Element { z: 15, aromatic: Some(true) },
            b's' => AtomPrim::Element { z: 16, aromatic: Some(true) },
            b'a' => AtomPrim::Aromatic,
            b'A' => AtomPrim::Aliphatic,
            other => {
                return self.syntax(
                    start,
                    format!("unexpected character '{}'", other as char),
                )
            }
        };
        Ok(prim)
    }

    /// Bracket atom expression with `!`, `&`, `,`, `;` logic.
    fn bracket_expr(&mut self) -> Result<AtomExpr, ChemError> {
        let mut groups: Vec<Vec<Vec<(bool, AtomPrim)>>> = Vec::new();
        let mut alternatives: Vec<Vec<(bool, AtomPrim)>> = Vec::new();
        let mut conjunction: Vec<(bool, AtomPrim)> = Vec::new();
        loop {
            let start = self.pos;
            let c = match self.peek() {
                Some(c) => c,
                None => return self.syntax(start, "unterminated bracket expression"),
            };
            match c {
                b']' => {
                    self.bump();
                    if conjunction.is_empty() {
                        return self.syntax(start, "empty atom expression");
                    }
                    alternatives.push(std::mem::take(&mut conjunction));
                    groups.push(std::mem::take(&mut alternatives));
                    return Ok(AtomExpr { groups });
                }
                b';' => {
                    self.bump();
                    if conjunction.is_empty() {
                        return self.syntax(start, "empty term before ';'");
                    }
                    alternatives.push(std::mem::take(&mut conjunction));
                    groups.push(std::mem::take(&mut alternatives));
                }
                b',' => {
                    self.bump();
                    if conjunction.is_empty() {
                        return self.syntax(start, "empty term before ','");
                    }
                    alternatives.push(std::mem::take(&mut conjunction));
                }
                b'&' => {
                    self.bump();
                    if conjunction.is_empty() {
                        return self.syntax(start, "empty term before '&'");
                    }
                }
                _ => {
                    let mut negated = false;
                    while self.peek() == Some(b'!') {
                        self.bump();
                        negated = !negated;
                    }
                    let prim = self.bracket_prim()?;
                    conjunction.push((negated, prim));
                }
            }
        }
    }

    fn read_number(&mut self) -> Option<u8> {
        let mut v: Option<u32> = None;
        while let Some(d) = self.peek() {
            if !d.is_ascii_digit() {
                break;
            }
            self.bump();
            v = Some(v.unwrap_or(0) * 10 + (d - b'0') as u32);
        }
        v.map(|n| n.min(255) as u8)
    }

    fn bracket_prim(&mut self) -> Result<AtomPrim, ChemError> {
        let start = self.pos;
        let c = self.bump().expect("caller peeked");
        match c {
            b'$' => self.unsupported("recursive SMARTS '$(...)'"),
            b'@' => self.unsupported("stereo-SMARTS '@'"),
            b'*' => Ok(AtomPrim::Wildcard),
            b'a' => Ok(AtomPrim::Aromatic),
            b'A' => {
                // 'As' as an element is not in the supported set; bare 'A'
                // means aliphatic.
                Ok(AtomPrim::Aliphatic)
            }
            b'#' => match self.read_number() {
                Some(z) => Ok(AtomPrim::Element { z, aromatic: None }),
                None => self.syntax(start, "expected atomic number after '#'"),
            },
            b'H' => Ok(AtomPrim::TotalH(self.read_number().unwrap_or(1))),
            b'h' => Ok(AtomPrim::ImplicitH(self.read_number().unwrap_or(1))),
            b'D' => Ok(AtomPrim::Degree(self.read_number().unwrap_or(1))),
            b'X' => Ok(AtomPrim::Connectivity(self.read_number().unwrap_or(1))),
            b'v' => Ok(AtomPrim::Valence(self.read_number().unwrap_or(1))),
            b'R' => Ok(AtomPrim::InRings(self.read_number())),
            b'r' => Ok(AtomPrim::RingSize(self.read_number())),
            b'+' => {
                let mut q: i8 = 1;
                if let Some(n) = self.read_number() {
                    q = n as i8;
                } else {
                    while self.peek() == Some(b'+') {
                        self.bump();
                        q += 1;
                    }
                }
                Ok(AtomPrim::Charge(q))
            }
            b'-' => {
                let mut q: i8 = 1;
                if let Some(n) = self.read_number() {
                    q = n as i8;
                } else {
                    while self.peek() == Some(b'-') {
                        self.bump();
                        q += 1;
                    }
                }
                Ok(AtomPrim::Charge(-q))
            }
            b'0'..=b'9' => self.unsupported("isotope specification in SMARTS"),
            c if c.is_ascii_uppercase() => {
                // Element symbol, greedily two letters.
                let mut sym = String::new();
                sym.push(c as char);
                if let Some(nxt) = self.peek() {
                    if nxt.is_ascii_lowercase() {
                        let two = format!("{}{}", c as char, nxt as char);
                        if Element::from_symbol(&two).is_some() {
                            self.bump();
                            sym = two;
                        }
                    }
                }
                match Element::from_symbol(&sym) {
                    Some(e) => Ok(AtomPrim::Element {
                        z: e.atomic_number(),
                        aromatic: Some(false),
                    }),
                    None => self.syntax(start, format!("unknown element '{sym}'")),
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut sym = String::new();
                sym.push(c as char);
                if matches!(c, b's' | b't') && matches!(self.peek(), Some(b'e')) {
                    self.bump();
                    sym.push('e');
                }
                let canonical = {
                    let mut s = sym.clone();
                    s.replace_range(0..1, &sym[0..1].to_ascii_uppercase());
                    s
                };
                match Element::from_symbol(&canonical) {
                    Some(e) if e.can_be_aromatic() => Ok(AtomPrim::Element {
                        z: e.atomic_number(),
                        aromatic: Some(true),
                    }),
                    _ => self.syntax(start, format!("unknown aromatic symbol '{sym}'")),
                }
            }
            other => self.syntax(start, format!("unexpected character '{}'", other as char)),
        }
    }

    /// Bond expression: primitives with `!`/`&`/`,` logic (`;` also accepted).
    fn bond_expr(&mut self) -> Result<BondExpr, ChemError> {
        let mut groups: Vec<Vec<Vec<(bool, BondPrim)>>> = Vec::new();
        let mut alternatives: Vec<Vec<(bool, BondPrim)>> = Vec::new();
        let mut conjunction: Vec<(bool, BondPrim)> = Vec::new();
        loop {
            let c = match self.peek() {
                Some(c) => c,
                None => break,
            };
            match c {
                b'-' | b'=' | b'#' | b':' | b'~' | b'@' | b'/' | b'\\' | b'!' => {
                    let mut negated = false;
                    while self.peek() == Some(b'!') {
                        self.bump();
                        negated = !negated;
                    }
                    let prim = match self.bump() {
                        Some(b'-') => BondPrim::Single,
                        Some(b'=') => BondPrim::Double,
                        Some(b'#') => BondPrim::Triple,
                        Some(b':') => BondPrim::Aromatic,
                        Some(b'~') => BondPrim::Any,
                        Some(b'@') => BondPrim::InRing,
                        // Directional bonds match as single here.
                        Some(b'/') | Some(b'\\') => BondPrim::Single,
                        _ => return self.syntax(self.pos, "expected bond primitive"),
                    };
                    conjunction.push((negated, prim));
                    match self.peek() {
                        Some(b'&') => {
                            self.bump();
                        }
                        Some(b',') => {
                            self.bump();
                            alternatives.push(std::mem::take(&mut conjunction));
                        }
                        Some(b';') => {
                            self.bump();
                            alternatives.push(std::mem::take(&mut conjunction));
                            groups.push(std::mem::take(&mut alternatives));
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        if conjunction.is_empty() {
            return self.syntax(self.pos, "empty bond expression");
        }
        alternatives.push(conjunction);
        groups.push(alternatives);
        Ok(BondExpr { groups })
    }

    fn push_atom(&mut self, expr: AtomExpr) -> Result<(), ChemError> {
        let idx = self.atoms.len();
        self.atoms.push(expr);
        if let Some(prev) = self.prev {
            let bond = self.pending.take().unwrap_or_else(BondExpr::single);
            self.add_bond(prev, idx, bond)?;
        } else if self.pending.is_some() {
            return self.syntax(self.pos, "bond expression with no preceding atom");
        }
        self.prev = Some(idx);
        Ok(())
    }

    fn add_bond(&mut self, a: usize, b: usize, expr: BondExpr) -> Result<(), ChemError> {
        if a == b {
            return self.syntax(self.pos, "bond joins an atom to itself");
        }
        if self
            .bonds
            .iter()
            .any(|bond| (bond.a == a && bond.b == b) || (bond.a == b && bond.b == a))
        {
            return self.syntax(self.pos, "duplicate bond between the same atoms");
        }
        self.bonds.push(PatternBond { a, b, expr });
        Ok(())
    }

    fn ring_closure(&mut self, digit: u16, pos: usize) -> Result<(), ChemError> {
        let current = match self.prev {
            Some(a) => a,
            None => return self.syntax(pos, "ring closure with no preceding atom"),
        };
        let pending = self.pending.take();
        match self.ring_open.remove(&digit) {
            None => {
                self.ring_open.insert(digit, (current, pending));
            }
            Some((other, other_bond)) => {
                let expr = pending
                    .or(other_bond)
                    .unwrap_or_else(BondExpr::single);
                self.add_bond(other, current, expr)?;
            }
        }
        Ok(())
    }

    fn finish(self, source: String) -> Result<SmartsPattern, ChemError> {
        if !self.ring_open.is_empty() {
            return Err(ChemError::SmartsSyntax {
                position: self.pos,
                text: "unclosed ring closure".into(),
            });
        }
        if !self.branch_stack.is_empty() {
            return Err(ChemError::SmartsSyntax {
                position: self.pos,
                text: "unmatched opening parenthesis".into(),
            });
        }
        if self.pending.is_some() {
            return Err(ChemError::SmartsSyntax {
                position: self.pos,
                text: "dangling bond expression".into(),
            });
        }
        if self.atoms.is_empty() {
            return Err(ChemError::SmartsSyntax {
                position: 0,
                text: "no atoms in pattern".into(),
            });
        }
        let pattern = SmartsPattern::new(self.atoms, self.bonds, source);
        // Connectivity invariant.
        let mut seen = vec![false; pattern.num_atoms()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(n, _) in pattern.neighbors(v) {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(ChemError::UnsupportedSmarts(
                "disconnected pattern".into(),
            ));
        }
        Ok(pattern)
    }
}
