//! Fragment counters: unique-set SMARTS counts, with composite counters
//! expressed as clamped sums and differences of pattern counts.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::ChemError;
use crate::mol::Molecule;
use crate::smarts::{count_matches, parse_smarts, SmartsPattern};

const TABLE: &str = include_str!("../../data/fragments.tsv");

pub struct FragmentDef {
    pub name: String,
    /// (+1 or -1, compiled pattern)
    pub terms: Vec<(i64, SmartsPattern)>,
}

pub fn fragment_defs() -> &'static Vec<FragmentDef> {
    static CELL: OnceLock<Vec<FragmentDef>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut defs = Vec::new();
        for line in TABLE.lines() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let (name, kind, definition) = (fields[0], fields[1], fields[2]);
            let terms = match kind {
                "pattern" => vec![(
                    1,
                    parse_smarts(definition)
                        .unwrap_or_else(|e| panic!("fragment {name}: {e}")),
                )],
                "composite" => {
                    let mut terms = Vec::new();
                    let mut tokens = definition.split_whitespace();
                    while let Some(sign) = tokens.next() {
                        let sign = match sign {
                            "+" => 1,
                            "-" => -1,
                            other => panic!("fragment {name}: bad sign token {other}"),
                        };
                        let smarts = tokens
                            .next()
                            .unwrap_or_else(|| panic!("fragment {name}: missing pattern"));
                        terms.push((
                            sign,
                            parse_smarts(smarts)
                                .unwrap_or_else(|e| panic!("fragment {name}: {e}")),
                        ));
                    }
                    terms
                }
                other => panic!("fragment {name}: unknown kind {other}"),
            };
            defs.push(FragmentDef {
                name: name.to_string(),
                terms,
            });
        }
        defs
    })
}

/// Unique-set count for one named fragment counter, clamped at zero for
/// composite definitions.
pub fn fragment_count(name: &str, mol: &Molecule) -> Result<i64, ChemError> {
    let def = fragment_defs()
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| ChemError::UnknownTool(name.to_string()))?;
    Ok(eval_def(def, mol))
}

fn eval_def(def: &FragmentDef, mol: &Molecule) -> i64 {
    let value: i64 = def
        .terms
        .iter()
        .map(|(sign, pattern)| sign * count_matches(pattern, mol, true) as i64)
        .sum();
    value.max(0)
}

/// Every fragment counter evaluated against the molecule.
pub fn fragment_profile(mol: &Molecule) -> BTreeMap<String, i64> {
    fragment_defs()
        .iter()
        .map(|def| (def.name.clone(), eval_def(def, mol)))
        .collect()
}
