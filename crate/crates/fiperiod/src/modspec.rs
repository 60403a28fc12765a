//! JSON module specifications.
//!
//! A presented module:
//!
//! ```json
//! { "p": 2, "generators": [0, 5],
//!   "relations": [ { "degree": 5,
//!     "terms": [ {"gen": 0, "inj": [], "c": 1},
//!                {"gen": 1, "inj": "*", "c": 1} ] } ] }
//! ```
//!
//! A kernel module wraps two presented specs and the generator images:
//!
//! ```json
//! { "kernel_of": { "source": {...}, "target": {...},
//!                  "images": [ { "degree": 1, "terms": [...] } ] } }
//! ```
//!
//! `inj` is an image sequence with 1-based values, or `"*"` for the sum of
//! all injections of the generator's arity into the term's degree.

use std::fmt;

use serde::Deserialize;

use fiperiod_core::fimod::{Element, FIMorphism, FIPresentation, FreeShape, InjSpec};
use fiperiod_core::oracle;

#[derive(Debug)]
pub enum SpecError {
    Json(serde_json::Error),
    Semantic(String),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Json(e) => write!(f, "module spec JSON: {e}"),
            SpecError::Semantic(msg) => write!(f, "module spec: {msg}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> SpecError {
        SpecError::Json(e)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecJson {
    pub p: Option<u64>,
    pub generators: Option<Vec<usize>>,
    #[serde(default)]
    pub relations: Vec<RelationJson>,
    pub kernel_of: Option<Box<KernelJson>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelJson {
    pub source: ModuleSpecJson,
    pub target: ModuleSpecJson,
    pub images: Vec<ElementJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub gen: usize,
    pub inj: InjJson,
    pub c: i64,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum InjJson {
    Star(String),
    Seq(Vec<usize>),
}

fn inj_spec(inj: &InjJson, ctx: &str) -> Result<InjSpec, SpecError> {
    match inj {
        InjJson::Star(s) if s == "*" => Ok(InjSpec::All),
        InjJson::Star(s) => Err(SpecError::Semantic(format!(
            "{ctx}: inj must be an array of 1-based values or \"*\", got {s:?}"
        ))),
        InjJson::Seq(values) => {
            let mut out = Vec::with_capacity(values.len());
            for &v in values {
                if v == 0 {
                    return Err(SpecError::Semantic(format!(
                        "{ctx}: inj values are 1-based; 0 is out of range"
                    )));
                }
                out.push(v - 1);
            }
            Ok(InjSpec::Seq(out))
        }
    }
}

fn element(shape: &FreeShape, degree: usize, terms: &[TermJson], ctx: &str) -> Result<Element, SpecError> {
    let mut raw = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let tctx = format!("{ctx} term {i}");
        raw.push((t.gen, inj_spec(&t.inj, &tctx)?, t.c));
    }
    Element::new(shape, degree, raw).map_err(|e| SpecError::Semantic(format!("{ctx}: {e}")))
}

fn presented(spec: &ModuleSpecJson) -> Result<(FreeShape, FIPresentation), SpecError> {
    let p = spec
        .p
        .ok_or_else(|| SpecError::Semantic("missing field `p`".into()))?;
    let generators = spec
        .generators
        .clone()
        .ok_or_else(|| SpecError::Semantic("missing field `generators`".into()))?;
    let shape =
        FreeShape::new(p, generators).map_err(|e| SpecError::Semantic(e.to_string()))?;
    let mut relations = Vec::with_capacity(spec.relations.len());
    for (i, rel) in spec.relations.iter().enumerate() {
        relations.push(element(
            &shape,
            rel.degree,
            &rel.terms,
            &format!("relation {i}"),
        )?);
    }
    Ok((shape.clone(), FIPresentation::presented(shape, relations)))
}

pub fn presentation_from_json(spec: &ModuleSpecJson) -> Result<FIPresentation, SpecError> {
    match &spec.kernel_of {
        Some(kernel) => {
            if spec.p.is_some() || spec.generators.is_some() || !spec.relations.is_empty() {
                return Err(SpecError::Semantic(
                    "a kernel spec carries only the `kernel_of` field".into(),
                ));
            }
            let (_, source) = presented(&kernel.source)?;
            let (tgt_shape, target) = presented(&kernel.target)?;
            let mut images = Vec::with_capacity(kernel.images.len());
            for (i, img) in kernel.images.iter().enumerate() {
                images.push(element(
                    &tgt_shape,
                    img.degree,
                    &img.terms,
                    &format!("image {i}"),
                )?);
            }
            let morphism = FIMorphism::new(source, target, images)
                .map_err(|e| SpecError::Semantic(format!("kernel_of: {e}")))?;
            Ok(FIPresentation::kernel_of(morphism))
        }
        None => Ok(presented(spec)?.1),
    }
}

pub fn parse_module_spec(text: &str) -> Result<FIPresentation, SpecError> {
    let spec: ModuleSpecJson = serde_json::from_str(text)?;
    presentation_from_json(&spec)
}

/// Named built-in specs so the bundled examples need no hand-written JSON.
pub fn builtin(name: &str, d: Option<usize>) -> Result<FIPresentation, SpecError> {
    match name {
        "intro-kernel" | "intro_kernel" => Ok(oracle::intro_kernel_presentation()),
        "example1" => {
            let d = d.ok_or_else(|| {
                SpecError::Semantic("builtin example1 needs --d (generator degree >= 3)".into())
            })?;
            oracle::example1_presentation(d).map_err(|e| SpecError::Semantic(e.to_string()))
        }
        other => Err(SpecError::Semantic(format!(
            "unknown builtin {other:?}; available: intro-kernel, example1"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUOTIENT_SPEC: &str = r#"{ "p": 2, "generators": [0, 5],
      "relations": [ { "degree": 5,
        "terms": [ {"gen": 0, "inj": [], "c": 1},
                   {"gen": 1, "inj": "*", "c": 1} ] } ] }"#;

    #[test]
    fn parses_the_quotient_family_spec() {
        let pres = parse_module_spec(QUOTIENT_SPEC).unwrap();
        // matches the built-in construction level by level
        let builtin = oracle::example1_presentation(5).unwrap();
        for n in 0..=7 {
            assert_eq!(pres.evaluate(n).dim(), builtin.evaluate(n).dim());
        }
    }

    #[test]
    fn parses_a_kernel_spec() {
        let text = r#"{ "kernel_of": {
            "source": { "p": 2, "generators": [1] },
            "target": { "p": 2, "generators": [0] },
            "images": [ { "degree": 1, "terms": [ {"gen": 0, "inj": [], "c": 1} ] } ] } }"#;
        let pres = parse_module_spec(text).unwrap();
        assert_eq!(pres.evaluate(4).dim(), 3);
    }

    #[test]
    fn one_based_injections() {
        let text = r#"{ "p": 3, "generators": [1],
          "relations": [ { "degree": 2,
            "terms": [ {"gen": 0, "inj": [1], "c": 1}, {"gen": 0, "inj": [2], "c": -1} ] } ] }"#;
        let pres = parse_module_spec(text).unwrap();
        // quotient by (e_i - e_j): one dimension left at each level >= 1
        assert_eq!(pres.evaluate(4).dim(), 1);
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_module_spec("{").is_err());
        assert!(parse_module_spec(r#"{ "p": 4, "generators": [0] }"#).is_err());
        assert!(parse_module_spec(r#"{ "p": 2 }"#).is_err());
        // 0 is not a valid 1-based injection value
        let bad = r#"{ "p": 2, "generators": [1],
          "relations": [ { "degree": 1, "terms": [ {"gen": 0, "inj": [0], "c": 1} ] } ] }"#;
        assert!(parse_module_spec(bad).is_err());
        // bad generator index
        let bad = r#"{ "p": 2, "generators": [1],
          "relations": [ { "degree": 1, "terms": [ {"gen": 5, "inj": [1], "c": 1} ] } ] }"#;
        assert!(parse_module_spec(bad).is_err());
        // star literal must be "*"
        let bad = r#"{ "p": 2, "generators": [1],
          "relations": [ { "degree": 1, "terms": [ {"gen": 0, "inj": "all", "c": 1} ] } ] }"#;
        assert!(parse_module_spec(bad).is_err());
    }

    #[test]
    fn builtins_resolve() {
        assert!(builtin("intro-kernel", None).is_ok());
        assert!(builtin("example1", Some(3)).is_ok());
        assert!(builtin("example1", None).is_err());
        assert!(builtin("nope", None).is_err());
    }
}
