//! Molecule parameters: the builtin table and a whitespace-separated text
//! format, one molecule per line:
//!
//! ```text
//! # name  d0_cm1       r0_angstrom  mu_amu
//! N2      96288.03528  1.0940       7.00335
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::spectrum::Molecule;

/// Ground-state spectroscopic parameters of N₂, CO, NO and CH, with the
/// digits exactly as tabulated.
pub const BUILTIN_TEXT: &str = "\
N2 96288.03528 1.0940 7.00335
CO 87471.42567 1.1282 6.860586
NO 64877.06229 1.1508 7.468441
CH 31838.08149 1.1198 0.929931
";

/// One parsed line, keeping the numeric literals as written.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeEntry {
    pub molecule: Molecule,
    pub line: usize,
    literals: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MoleculeFile {
    pub entries: Vec<MoleculeEntry>,
}

impl MoleculeFile {
    pub fn parse(content: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (idx, raw) in content.lines().enumerate() {
            let line = idx + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "expected 4 fields (name d0_cm1 r0_angstrom mu_amu), found {}",
                        fields.len()
                    ),
                });
            }
            let name = fields[0];
            let mut values = [0.0; 3];
            for (slot, (field, literal)) in values
                .iter_mut()
                .zip(["d0", "r0", "mu"].into_iter().zip(&fields[1..]))
            {
                let value: f64 = literal.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("{field} '{literal}' is not a number"),
                })?;
                if !(value > 0.0 && value.is_finite()) {
                    return Err(Error::Validation {
                        line,
                        field,
                        message: format!("must be positive, got {literal}"),
                    });
                }
                *slot = value;
            }
            if !seen.insert(name.to_string()) {
                return Err(Error::Validation {
                    line,
                    field: "name",
                    message: format!("duplicate molecule '{name}'"),
                });
            }
            let molecule = Molecule::new(name, values[0], values[1], values[2]).map_err(|e| {
                Error::Validation {
                    line,
                    field: "name",
                    message: e.to_string(),
                }
            })?;
            entries.push(MoleculeEntry {
                molecule,
                line,
                literals: [fields[1], fields[2], fields[3]].map(str::to_string),
            });
        }
        Ok(Self { entries })
    }

    /// Entries for molecules built in code; numbers use the shortest
    /// representation that parses back to the same value.
    pub fn from_molecules(molecules: &[Molecule]) -> Self {
        let entries = molecules
            .iter()
            .enumerate()
            .map(|(idx, m)| MoleculeEntry {
                molecule: m.clone(),
                line: idx + 1,
                literals: [m.d0(), m.r0(), m.mu()].map(|v| v.to_string()),
            })
            .collect();
        Self { entries }
    }

    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                let [d0, r0, mu] = &e.literals;
                format!("{} {d0} {r0} {mu}\n", e.molecule.name())
            })
            .collect()
    }

    pub fn molecules(&self) -> Vec<Molecule> {
        self.entries.iter().map(|e| e.molecule.clone()).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Molecule> {
        self.entries
            .iter()
            .map(|e| &e.molecule)
            .find(|m| m.name() == name)
    }
}

pub fn parse_molecule_file(content: &str) -> Result<Vec<Molecule>> {
    MoleculeFile::parse(content).map(|f| f.molecules())
}

pub fn builtin_file() -> MoleculeFile {
    MoleculeFile::parse(BUILTIN_TEXT).expect("builtin table is well formed")
}

pub fn builtin_table() -> Vec<Molecule> {
    builtin_file().molecules()
}

pub fn lookup(name: &str) -> Result<Molecule> {
    builtin_file()
        .find(name)
        .cloned()
        .ok_or_else(|| Error::UnknownMolecule(name.to_string()))
}
