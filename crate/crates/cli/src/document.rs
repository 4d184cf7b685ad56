//! The JSON document format for games, coefficient tables, and index
//! tables.
//!
//! A document carries `n`, a `representation` tag, and an `entries` object
//! mapping subset keys to rational strings. Subset keys are comma-separated
//! ascending 1-based player indices (`""` for the empty coalition); missing
//! coalitions default to zero. Emitted documents order their keys by
//! cardinality, then lexicographically by index list, and always re-parse
//! to the same in-memory document.

use std::collections::BTreeMap;

use lovasz::interaction::{IndexKind, InteractionTable};
use lovasz::set_function::{MinPolynomial, MobiusRep, SetFunction};
use lovasz::subset::{cardinality, players, Mask};
use lovasz::{BigRational, MAX_PLAYERS};
use num_traits::Zero;
use serde::Deserialize;

use crate::rational::{format_rational, parse_rational};

/// What the entries of a document mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Worths `v(S)`.
    Game,
    /// Möbius / min-polynomial coefficients `a(S)`.
    Mobius,
    /// Banzhaf interaction table.
    Banzhaf,
    /// Interaction table of the approximation-induced index.
    Im,
    /// Per-player Shapley power values.
    ShapleyPower,
    /// Per-player Banzhaf power values.
    BanzhafPower,
    /// Per-player power values of the approximation-induced index.
    ImPower,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Game => "game",
            Representation::Mobius => "mobius",
            Representation::Banzhaf => "banzhaf",
            Representation::Im => "im",
            Representation::ShapleyPower => "shapley-power",
            Representation::BanzhafPower => "banzhaf-power",
            Representation::ImPower => "im-power",
        }
    }

    fn from_str(s: &str) -> Option<Self> {
        match s {
            "game" => Some(Representation::Game),
            "mobius" => Some(Representation::Mobius),
            "banzhaf" => Some(Representation::Banzhaf),
            "im" => Some(Representation::Im),
            "shapley-power" => Some(Representation::ShapleyPower),
            "banzhaf-power" => Some(Representation::BanzhafPower),
            "im-power" => Some(Representation::ImPower),
            _ => None,
        }
    }
}

/// A parsed document: player count, representation, and sparse entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub n: usize,
    pub representation: Representation,
    pub entries: BTreeMap<Mask, BigRational>,
}

#[derive(Deserialize)]
struct RawDocument {
    n: u64,
    representation: String,
    #[serde(default)]
    entries: BTreeMap<String, serde_json::Value>,
}

/// Parses a subset key (`""` or `"i,j,…"` with strictly ascending 1-based
/// indices) into a bitmask.
pub fn parse_subset_key(key: &str, n: usize) -> Result<Mask, String> {
    if key.is_empty() {
        return Ok(0);
    }
    let mut mask: Mask = 0;
    let mut previous = 0usize;
    for part in key.split(',') {
        let index: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("subset key {key:?}: {part:?} is not a player index"))?;
        if index == 0 || index > n {
            return Err(format!(
                "subset key {key:?}: index {index} out of range for n = {n}"
            ));
        }
        if index <= previous {
            return Err(format!(
                "subset key {key:?}: indices must be strictly ascending"
            ));
        }
        previous = index;
        mask |= 1 << (index - 1);
    }
    Ok(mask)
}

/// Renders a bitmask as a subset key: ascending 1-based indices, empty
/// string for the empty coalition.
pub fn format_subset_key(mask: Mask) -> String {
    players(mask)
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn entry_value(key: &str, value: &serde_json::Value) -> Result<BigRational, String> {
    match value {
        serde_json::Value::String(s) => {
            parse_rational(s).map_err(|e| format!("entry {key:?}: {e}"))
        }
        serde_json::Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if let Some(u) = num.as_u64() {
                Ok(BigRational::from_integer(u.into()))
            } else {
                Err(format!(
                    "entry {key:?}: write non-integer values as strings (e.g. \"3/10\" or \"0.3\") so they stay exact"
                ))
            }
        }
        other => Err(format!("entry {key:?}: expected a rational string, got {other}")),
    }
}

/// Parses and validates a JSON document.
pub fn parse_document(text: &str) -> Result<Document, String> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| format!("malformed JSON document: {e}"))?;
    let n = raw.n as usize;
    if raw.n == 0 || n > MAX_PLAYERS {
        return Err(format!("n = {} outside 1..={MAX_PLAYERS}", raw.n));
    }
    let representation = Representation::from_str(&raw.representation).ok_or_else(|| {
        format!(
            "unknown representation {:?} (expected game, mobius, or an index kind)",
            raw.representation
        )
    })?;
    let mut entries = BTreeMap::new();
    for (key, value) in &raw.entries {
        let mask = parse_subset_key(key, n)?;
        let rational = entry_value(key, value)?;
        if entries.insert(mask, rational).is_some() {
            return Err(format!("entry {key:?}: duplicate coalition"));
        }
    }
    Ok(Document {
        n,
        representation,
        entries,
    })
}

impl Document {
    /// Builds a document from a dense table, dropping zero entries.
    pub fn from_table(
        n: usize,
        representation: Representation,
        table: &[BigRational],
    ) -> Document {
        let entries = table
            .iter()
            .enumerate()
            .filter(|(_, value)| !value.is_zero())
            .map(|(mask, value)| (mask as Mask, value.clone()))
            .collect();
        Document {
            n,
            representation,
            entries,
        }
    }

    /// Builds a document from a bounded-degree coefficient map, dropping
    /// zero entries.
    pub fn from_min_polynomial(p: &MinPolynomial) -> Document {
        let entries = p
            .coefficients()
            .iter()
            .filter(|(_, value)| !value.is_zero())
            .map(|(&mask, value)| (mask, value.clone()))
            .collect();
        Document {
            n: p.n(),
            representation: Representation::Mobius,
            entries,
        }
    }

    /// Dense 2^n table with missing coalitions filled by zero.
    pub fn dense_table(&self) -> Vec<BigRational> {
        let mut table = vec![BigRational::zero(); 1 << self.n];
        for (&mask, value) in &self.entries {
            table[mask as usize] = value.clone();
        }
        table
    }

    /// Interprets the document as a set function, converting from the
    /// Möbius representation when needed.
    pub fn as_set_function(&self) -> Result<SetFunction, String> {
        match self.representation {
            Representation::Game => {
                SetFunction::new(self.n, self.dense_table()).map_err(|e| e.to_string())
            }
            Representation::Mobius => Ok(MobiusRep::new(self.n, self.dense_table())
                .map_err(|e| e.to_string())?
                .zeta_transform()),
            other => Err(format!(
                "representation {:?} does not describe a game",
                other.as_str()
            )),
        }
    }

    /// Interprets the document as Möbius coefficients, converting from game
    /// values when needed.
    pub fn as_mobius(&self) -> Result<MobiusRep, String> {
        match self.representation {
            Representation::Mobius => {
                MobiusRep::new(self.n, self.dense_table()).map_err(|e| e.to_string())
            }
            Representation::Game => Ok(SetFunction::new(self.n, self.dense_table())
                .map_err(|e| e.to_string())?
                .mobius_transform()),
            other => Err(format!(
                "representation {:?} does not describe a game",
                other.as_str()
            )),
        }
    }

    /// Interprets the document as a complete interaction table.
    pub fn as_interaction_table(&self) -> Result<InteractionTable, String> {
        let kind = match self.representation {
            Representation::Im => IndexKind::Im,
            Representation::Banzhaf => IndexKind::Banzhaf,
            other => {
                return Err(format!(
                    "representation {:?} is not an interaction table",
                    other.as_str()
                ))
            }
        };
        InteractionTable::new(self.n, kind, self.dense_table()).map_err(|e| e.to_string())
    }

    /// Serializes to pretty JSON with entries ordered by cardinality, then
    /// lexicographically by index list.
    pub fn to_json(&self) -> String {
        let mut order: Vec<Mask> = self.entries.keys().copied().collect();
        order.sort_by_key(|&mask| (cardinality(mask), players(mask).collect::<Vec<_>>()));
        let mut entries = serde_json::Map::new();
        for mask in order {
            entries.insert(
                format_subset_key(mask),
                serde_json::Value::String(format_rational(&self.entries[&mask])),
            );
        }
        let value = serde_json::json!({
            "n": self.n,
            "representation": self.representation.as_str(),
            "entries": entries,
        });
        let mut text = serde_json::to_string_pretty(&value).expect("document serializes");
        text.push('\n');
        text
    }
}

/// Convenience check used by commands that require a specific
/// representation on input.
pub fn require_representation(doc: &Document, expected: Representation) -> Result<(), String> {
    if doc.representation != expected {
        return Err(format!(
            "expected a {:?} document, got {:?}",
            expected.as_str(),
            doc.representation.as_str()
        ));
    }
    Ok(())
}
