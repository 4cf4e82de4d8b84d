//! Definition files: JSON documents naming the elements and listing the
//! nonzero structure constants as exact rational strings.
//!
//! ```json
//! {
//!   "elements": ["l0", "l1"],
//!   "identity": "l0",
//!   "involution": {"l0": "l0", "l1": "l1"},
//!   "constants": [
//!     {"i": "l0", "j": "l0", "k": "l0", "value": "1"},
//!     {"i": "l1", "j": "l1", "k": "l0", "value": "1/2"}
//!   ]
//! }
//! ```
//!
//! Omitted triples are zero. Unknown fields are rejected.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use crate::constructions::Subhypergroup;
use crate::error::{Error, Result};
use crate::hyperfield::{Hyperfield, SheetedHypergroup};
use crate::hypergroup::{FiniteHypergroup, RawHypergroup, TAU_AXIOM};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: String,
    pub j: String,
    pub k: String,
    pub value: String,
}

/// On-disk form of a hypergroup, before name resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionFile {
    pub elements: Vec<String>,
    pub identity: String,
    pub involution: serde_json::Map<String, serde_json::Value>,
    pub constants: Vec<ConstantEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

fn json_error(e: serde_json::Error) -> Error {
    match e.classify() {
        Category::Data => {
            let msg = e.to_string();
            // serde names the offending field between backticks
            let field = msg.split('`').nth(1).map(str::to_string);
            match field {
                Some(f) if msg.starts_with("missing field") => Error::Schema(f),
                Some(f) if msg.starts_with("unknown field") => Error::Schema(format!("unknown field {f}")),
                _ => Error::Schema(msg),
            }
        }
        Category::Io => Error::Io(e.to_string()),
        Category::Syntax | Category::Eof => Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        },
    }
}

impl DefinitionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    fn resolve<S>(&self, parse: impl Fn(&str) -> Option<S>) -> Result<RawHypergroup<S>>
    where
        S: Scalar,
    {
        let mut index = HashMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::Schema(format!("elements: duplicate name {name:?}")));
            }
        }
        let lookup = |field: &str, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Schema(format!("{field}: unknown element {name:?}")))
        };
        let identity = lookup("identity", &self.identity)?;
        let mut involution = vec![usize::MAX; self.elements.len()];
        for (from, to) in &self.involution {
            let to = to
                .as_str()
                .ok_or_else(|| Error::Schema(format!("involution.{from}: expected a string")))?;
            involution[lookup("involution", from)?] = lookup("involution", to)?;
        }
        if let Some(missing) = involution.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Schema(format!("involution: no entry for {:?}", self.elements[missing])));
        }
        let mut raw = RawHypergroup::zeros(self.elements.clone(), identity, involution);
        let mut seen = vec![false; raw.constants.len()];
        let n = raw.order();
        for (pos, c) in self.constants.iter().enumerate() {
            let field = format!("constants[{pos}]");
            let (i, j, k) = (lookup(&field, &c.i)?, lookup(&field, &c.j)?, lookup(&field, &c.k)?);
            let value = parse(&c.value).ok_or_else(|| Error::Schema(format!("{field}.value: cannot parse {:?}", c.value)))?;
            if std::mem::replace(&mut seen[(i * n + j) * n + k], true) {
                return Err(Error::Schema(format!("{field}: duplicate triple")));
            }
            raw.set(i, j, k, value);
        }
        Ok(raw)
    }

    /// Exact constants.
    pub fn to_raw(&self) -> Result<RawHypergroup<Rational>> {
        self.resolve(|s| s.parse::<Rational>().ok())
    }

    /// Floating-point constants; `p/q` values are divided, decimals parsed
    /// directly.
    pub fn to_raw_f64(&self) -> Result<RawHypergroup<f64>> {
        self.resolve(|s| {
            if s.contains('/') {
                s.parse::<Rational>().ok().map(|r| r.to_f64())
            } else {
                s.trim().parse::<f64>().ok().filter(|x| x.is_finite())
            }
        })
    }

    pub fn from_raw<S: FormatValue>(raw: &RawHypergroup<S>, meta: Option<Meta>) -> Self {
        let n = raw.order();
        let mut involution = serde_json::Map::new();
        for (i, name) in raw.names.iter().enumerate() {
            involution.insert(name.clone(), serde_json::Value::String(raw.names[raw.involution[i]].clone()));
        }
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = raw.get(i, j, k);
                    if !v.is_zero() {
                        constants.push(ConstantEntry {
                            i: raw.names[i].clone(),
                            j: raw.names[j].clone(),
                            k: raw.names[k].clone(),
                            value: v.format_value(),
                        });
                    }
                }
            }
        }
        DefinitionFile {
            elements: raw.names.clone(),
            identity: raw.names[raw.identity].clone(),
            involution,
            constants,
            meta,
        }
    }
}

/// How a constant is written to a definition file.
pub trait FormatValue: Scalar {
    fn format_value(&self) -> String;
}

impl FormatValue for Rational {
    fn format_value(&self) -> String {
        self.to_string()
    }
}

impl FormatValue for f64 {
    /// Small-denominator fractions are written as `p/q` when they reproduce
    /// the value to within `1e-13`; anything else as the shortest decimal
    /// that reads back to the same `f64`.
    fn format_value(&self) -> String {
        let r = Rational::approximate(*self, 10_000);
        if (r.to_f64() - self).abs() <= 1e-13 {
            r.to_string()
        } else {
            format!("{self}")
        }
    }
}

/// Parses definition text into exact constants.
pub fn parse_definition(text: &str) -> Result<RawHypergroup<Rational>> {
    DefinitionFile::from_json(text)?.to_raw()
}

/// Serializes a hypergroup to definition text.
pub fn serialize_definition<S: FormatValue>(h: &FiniteHypergroup<S>, meta: Option<Meta>) -> String {
    DefinitionFile::from_raw(h.raw(), meta).to_json()
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Reads and validates an exact hypergroup.
pub fn load_exact(path: &Path) -> Result<FiniteHypergroup<Rational>> {
    FiniteHypergroup::exact(parse_definition(&read_text(path)?)?)
}

/// Reads and validates a hypergroup with floating-point constants.
pub fn load_f64(path: &Path, tol: f64) -> Result<FiniteHypergroup<f64>> {
    FiniteHypergroup::new(DefinitionFile::from_json(&read_text(path)?)?.to_raw_f64()?, tol)
}

/// Hyperfield file: paths to the two hypergroup files (relative to the
/// hyperfield file) and `ℓ`-name → list of `H`-element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperfieldFile {
    /// `L`.
    pub base: String,
    /// `H`.
    pub target: String,
    pub assignment: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl HyperfieldFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

/// Loads a hyperfield file together with the hypergroups it references.
pub fn load_hyperfield(path: &Path) -> Result<Hyperfield<Rational>> {
    let file = HyperfieldFile::from_json(&read_text(path)?)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let rel = |p: &str| -> PathBuf { dir.join(p) };
    let base = load_exact(&rel(&file.base))?;
    let target = load_exact(&rel(&file.target))?;
    hyperfield_from_names(base, target, &file.assignment)
}

/// Resolves a name-based assignment. Every element of the base must be
/// listed.
pub fn hyperfield_from_names<S: Scalar>(
    base: FiniteHypergroup<S>,
    target: FiniteHypergroup<S>,
    assignment: &BTreeMap<String, Vec<String>>,
) -> Result<Hyperfield<S>> {
    let mut subs = vec![None; base.order()];
    for (l, members) in assignment {
        let li = base
            .index_of(l)
            .ok_or_else(|| Error::Schema(format!("assignment: unknown base element {l:?}")))?;
        let mut idx = members
            .iter()
            .map(|m| {
                target
                    .index_of(m)
                    .ok_or_else(|| Error::Schema(format!("assignment.{l}: unknown element {m:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        subs[li] = Some(Subhypergroup::new(&target, &idx)?);
    }
    let subs = subs
        .into_iter()
        .enumerate()
        .map(|(l, s)| s.ok_or_else(|| Error::Schema(format!("assignment: no entry for {:?}", base.name(l)))))
        .collect::<Result<Vec<_>>>()?;
    Hyperfield::new(base, target, subs)
}

/// One row of the sheet-map sidecar written next to a built `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheetEntry {
    pub element: String,
    pub sheet: String,
    pub coset: Vec<String>,
}

pub fn sheet_map<S: Scalar>(k: &SheetedHypergroup<S>) -> Vec<SheetEntry> {
    let (h, l) = (&k.field.target, &k.field.base);
    (0..k.hypergroup.order())
        .map(|x| {
            let sheet = &k.sheets[k.sheet_of[x]];
            SheetEntry {
                element: k.hypergroup.name(x).to_string(),
                sheet: l.name(k.sheet_of[x]).to_string(),
                coset: sheet.classes[k.class_index(x)].iter().map(|&m| h.name(m).to_string()).collect(),
            }
        })
        .collect()
}

pub fn sheet_map_json<S: Scalar>(k: &SheetedHypergroup<S>) -> String {
    let mut s = serde_json::to_string_pretty(&sheet_map(k)).expect("plain data serializes");
    s.push('\n');
    s
}

/// Default tolerance for floating-point files.
pub const DEFAULT_FILE_TOLERANCE: f64 = TAU_AXIOM;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, zq_family};

    const ZQ: &str = r#"{
  "elements": ["l0", "l1"],
  "identity": "l0",
  "involution": {"l0": "l0", "l1": "l1"},
  "constants": [
    {"i": "l0", "j": "l0", "k": "l0", "value": "1"},
    {"i": "l0", "j": "l1", "k": "l1", "value": "1"},
    {"i": "l1", "j": "l0", "k": "l1", "value": "1"},
    {"i": "l1", "j": "l1", "k": "l0", "value": "1/3"},
    {"i": "l1", "j": "l1", "k": "l1", "value": "2/3"}
  ]
}"#;

    #[test]
    fn parses_exact_thirds() {
        let raw = parse_definition(ZQ).unwrap();
        assert_eq!(raw.get(1, 1, 0), Rational::new(1, 3));
        assert!(FiniteHypergroup::exact(raw).is_ok());
    }

    #[test]
    fn round_trip_is_byte_exact() {
        for h in [zq_family(2, Rational::new(1, 3)).unwrap(), cyclic_group(5).unwrap()] {
            let text = serialize_definition(&h, None);
            let again = FiniteHypergroup::exact(parse_definition(&text).unwrap()).unwrap();
            assert_eq!(serialize_definition(&again, None), text);
            assert!(again.same_structure(&h, 0.0));
        }
    }

    #[test]
    fn missing_identity_names_field() {
        let text = ZQ.replace("\"identity\": \"l0\",", "");
        match parse_definition(&text) {
            Err(Error::Schema(f)) => assert_eq!(f, "identity"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_field_rejected() {
        let text = ZQ.replacen('{', "{\"extra\": 1, ", 1);
        assert!(matches!(parse_definition(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn syntax_error_has_position() {
        let text = "{\n  \"elements\": [\"a\",\n}";
        match parse_definition(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_element_in_constants() {
        let text = ZQ.replace("\"k\": \"l0\", \"value\": \"1/3\"", "\"k\": \"zz\", \"value\": \"1/3\"");
        assert!(matches!(parse_definition(&text), Err(Error::Schema(m)) if m.contains("zz")));
    }

    #[test]
    fn float_values_round_trip() {
        let h = cyclic_group(3).unwrap().to_f64(1e-12);
        let text = serialize_definition(&h, None);
        let back = DefinitionFile::from_json(&text).unwrap().to_raw_f64().unwrap();
        assert_eq!(back.constants, h.raw().constants);
        assert_eq!((0.1f64 + 0.2).format_value(), "3/10");
        assert_eq!(0.123456789f64.format_value(), "0.123456789");
    }
}
