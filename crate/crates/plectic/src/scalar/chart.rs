use std::fmt;

use crate::error::{Error, Result};

/// Ordered coordinate names of a local chart.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
    excluded_locus: Option<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        // `d<name>` is reserved for differentials in form text.
        for n in &names {
            if let Some(rest) = n.strip_prefix('d') {
                if names.iter().any(|m| m == rest) {
                    return Err(Error::InvalidChart(format!(
                        "`{n}` clashes with the differential of `{rest}`"
                    )));
                }
            }
        }
        Ok(Chart {
            names,
            excluded_locus: None,
        })
    }

    pub fn with_excluded_locus(mut self, note: impl Into<String>) -> Self {
        self.excluded_locus = Some(note.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn excluded_locus(&self) -> Option<&str> {
        self.excluded_locus.as_deref()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({})", self.names.join(","))
    }
}
