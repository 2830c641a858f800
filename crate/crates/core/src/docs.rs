//! JSON documents for quantales, V-categories and posets.
//!
//! A file holds one document or an array of them. The kind is recognised
//! by its keys: `elements` (quantale), `quantale` (V-category) or `leq`
//! (poset).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::ordered::FinPoset;
use crate::quantale::{boolean_square, build_chain, build_two, diamond_m3, ChainTensor, Quantale};
use crate::vcat::VCat;
use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{source_name}: document {index}: {message}")]
    Schema {
        source_name: String,
        index: usize,
        message: String,
    },

    #[error("unknown quantale reference `{name}`")]
    UnknownQuantaleRef { name: String },

    #[error("name `{name}` is defined twice")]
    DuplicateName { name: String },

    #[error("`{name}` is invalid: {error}")]
    Invalid { name: String, error: crate::Error },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Named(String),
    Matrix(Vec<Vec<bool>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TensorSpec {
    Named(ChainTensor),
    Table(Vec<Vec<Elem>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub order: OrderSpec,
    pub tensor: TensorSpec,
    pub unit: Elem,
    #[serde(default)]
    pub dense: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Index(Elem),
    Label(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VCatDoc {
    pub name: String,
    pub quantale: String,
    pub points: Vec<String>,
    pub a: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub name: String,
    pub points: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Quantale(QuantaleDoc),
    VCat(VCatDoc),
    Poset(PosetDoc),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Quantale(d) => &d.name,
            Document::VCat(d) => &d.name,
            Document::Poset(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Quantale(_) => "quantale",
            Document::VCat(_) => "vcat",
            Document::Poset(_) => "poset",
        }
    }
}

/// Parses a file body into its documents.
pub fn parse_documents(text: &str, source_name: &str) -> Result<Vec<Document>, DocError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocError::Parse {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .enumerate()
        .map(|(index, item)| {
            let schema = |message: String| DocError::Schema {
                source_name: source_name.to_string(),
                index,
                message,
            };
            let obj = item.as_object().ok_or_else(|| schema("expected an object".into()))?;
            let doc = if obj.contains_key("elements") {
                serde_json::from_value(item).map(Document::Quantale)
            } else if obj.contains_key("quantale") {
                serde_json::from_value(item).map(Document::VCat)
            } else if obj.contains_key("leq") {
                serde_json::from_value(item).map(Document::Poset)
            } else {
                return Err(schema("expected a quantale, vcat or poset document".into()));
            };
            doc.map_err(|e| schema(e.to_string()))
        })
        .collect()
}

/// Built-in quantales: `two`, `L<m>`, `G<n>`, `B4`, `M3`.
pub fn builtin_quantale(name: &str) -> Option<Quantale> {
    match name {
        "two" => return Some(build_two()),
        "B4" => return Some(boolean_square()),
        "M3" => return Some(diamond_m3()),
        _ => {}
    }
    let (kind, rest) = if let Some(rest) = name.strip_prefix('L') {
        (ChainTensor::Lukasiewicz, rest)
    } else {
        (ChainTensor::Minimum, name.strip_prefix('G')?)
    };
    let k: usize = rest.parse().ok()?;
    let levels = match kind {
        ChainTensor::Lukasiewicz => k.checked_add(1)?,
        ChainTensor::Minimum => k,
    };
    if !(2..=64).contains(&levels) {
        return None;
    }
    build_chain(levels, kind).ok()
}

pub fn build_quantale(doc: &QuantaleDoc) -> Result<Quantale, crate::Error> {
    let n = doc.elements.len();
    let leq = match &doc.order {
        OrderSpec::Named(s) if s == "chain" => (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect(),
        OrderSpec::Named(s) => return Err(crate::Error::InvalidArgument(format!("unknown order `{s}`"))),
        OrderSpec::Matrix(m) => m.clone(),
    };
    let tensor = match &doc.tensor {
        TensorSpec::Table(t) => t.clone(),
        TensorSpec::Named(kind) => {
            if !matches!(doc.order, OrderSpec::Named(_)) {
                return Err(crate::Error::InvalidArgument(
                    "named tensors need \"order\": \"chain\"".into(),
                ));
            }
            let m = n.saturating_sub(1);
            (0..n).map(|i| (0..n).map(|j| kind.apply(m, i, j)).collect()).collect()
        }
    };
    Ok(Quantale::from_tables(
        doc.name.clone(),
        doc.elements.clone(),
        &leq,
        &tensor,
        doc.unit,
        doc.dense.clone(),
    )?)
}

/// Loaded, validated objects by name.
#[derive(Debug, Default, Clone)]
pub struct Workspace {
    pub quantales: BTreeMap<String, Arc<Quantale>>,
    pub vcats: BTreeMap<String, VCat>,
    pub posets: BTreeMap<String, FinPoset>,
}

impl Workspace {
    /// A loaded quantale, or a built-in one.
    pub fn quantale(&self, name: &str) -> Result<Arc<Quantale>, DocError> {
        if let Some(q) = self.quantales.get(name) {
            return Ok(q.clone());
        }
        builtin_quantale(name)
            .map(Arc::new)
            .ok_or_else(|| DocError::UnknownQuantaleRef { name: name.into() })
    }

    fn check_fresh(&self, name: &str) -> Result<(), DocError> {
        if self.quantales.contains_key(name) || self.vcats.contains_key(name) || self.posets.contains_key(name) {
            Err(DocError::DuplicateName { name: name.into() })
        } else {
            Ok(())
        }
    }

    /// Registers documents, quantales first. Each outcome is reported in
    /// input order; later documents see earlier successes.
    pub fn add(&mut self, docs: &[Document]) -> Vec<Result<(), DocError>> {
        let mut out: Vec<Option<Result<(), DocError>>> = vec![None; docs.len()];
        for (i, d) in docs.iter().enumerate() {
            if let Document::Quantale(qd) = d {
                out[i] = Some(self.add_quantale(qd));
            }
        }
        for (i, d) in docs.iter().enumerate() {
            match d {
                Document::VCat(vd) => out[i] = Some(self.add_vcat(vd)),
                Document::Poset(pd) => out[i] = Some(self.add_poset(pd)),
                Document::Quantale(_) => {}
            }
        }
        out.into_iter().map(|r| r.expect("every document handled")).collect()
    }

    fn add_quantale(&mut self, doc: &QuantaleDoc) -> Result<(), DocError> {
        self.check_fresh(&doc.name)?;
        let q = build_quantale(doc).map_err(|error| DocError::Invalid {
            name: doc.name.clone(),
            error,
        })?;
        self.quantales.insert(doc.name.clone(), Arc::new(q));
        Ok(())
    }

    fn add_vcat(&mut self, doc: &VCatDoc) -> Result<(), DocError> {
        self.check_fresh(&doc.name)?;
        let q = self.quantale(&doc.quantale)?;
        let invalid = |error: crate::Error| DocError::Invalid {
            name: doc.name.clone(),
            error,
        };
        let a = doc
            .a
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Index(i) => Ok(*i),
                        Entry::Label(l) => q
                            .find_label(l)
                            .ok_or_else(|| invalid(crate::Error::InvalidArgument(format!("unknown element `{l}`")))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if a.len() != doc.points.len() {
            return Err(invalid(crate::Error::InvalidArgument(
                "one row of `a` per point".into(),
            )));
        }
        let x = VCat::new(q, a)
            .map_err(|e| invalid(e.into()))?
            .with_labels(doc.points.clone())
            .with_name(doc.name.clone());
        self.vcats.insert(doc.name.clone(), x);
        Ok(())
    }

    fn add_poset(&mut self, doc: &PosetDoc) -> Result<(), DocError> {
        self.check_fresh(&doc.name)?;
        if doc.leq.len() != doc.points.len() {
            return Err(DocError::Invalid {
                name: doc.name.clone(),
                error: crate::Error::InvalidArgument("one row of `leq` per point".into()),
            });
        }
        let p = FinPoset::new(&doc.leq).map_err(|error| DocError::Invalid {
            name: doc.name.clone(),
            error,
        })?;
        self.posets.insert(doc.name.clone(), p);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(builtin_quantale("L2").unwrap().size(), 3);
        assert_eq!(builtin_quantale("G3").unwrap().size(), 3);
        assert_eq!(builtin_quantale("two").unwrap().size(), 2);
        assert!(builtin_quantale("G1").is_none());
        assert!(builtin_quantale("X9").is_none());
    }

    #[test]
    fn chain_document() {
        let docs = parse_documents(
            r#"{"name": "L2", "elements": ["0", "1/2", "1"], "order": "chain", "tensor": "lukasiewicz", "unit": 2}"#,
            "t",
        )
        .unwrap();
        let mut ws = Workspace::default();
        assert!(ws.add(&docs).iter().all(Result::is_ok));
        assert_eq!(ws.quantales["L2"].hom(1, 0), 1);
    }

    #[test]
    fn vcat_with_labels_and_missing_ref() {
        let docs = parse_documents(
            r#"[{"name": "x", "quantale": "L2", "points": ["p", "q"], "a": [["1", "1/2"], [0, "1"]]},
                {"name": "y", "quantale": "nope", "points": ["p"], "a": [[0]]}]"#,
            "t",
        )
        .unwrap();
        let mut ws = Workspace::default();
        let res = ws.add(&docs);
        assert!(res[0].is_ok());
        assert_eq!(res[1], Err(DocError::UnknownQuantaleRef { name: "nope".into() }));
        assert_eq!(ws.vcats["x"].a(0, 1), 1);
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let err = parse_documents("{\n\"name\": }", "f.json").unwrap_err();
        assert!(matches!(err, DocError::Parse { line: 2, .. }));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_documents(r#"{"name": "p", "points": [], "leq": [], "extra": 1}"#, "f").unwrap_err();
        assert!(matches!(err, DocError::Schema { index: 0, .. }));
    }
}
