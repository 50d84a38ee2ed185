//! JSON formats. Rationals are strings `"p"` or `"p/q"`.
//!
//! ```json
//! {"dim": 2, "basis": ["x", "y"], "unit": ["1", "1"], "mul": [[["1","0"],["0","0"]],[["0","0"],["0","1"]]]}
//! {"domain": "A.json", "codomain": "Q", "matrix": [["1", "1"]]}
//! {"coords": ["2", "3/2"]}
//! ```
//!
//! `domain` and `codomain` are either inline algebra objects or paths relative to the
//! map file; the string `"Q"` denotes the one-dimensional ground field.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{ground_field, Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::series::TruncatedSeries;

pub fn serialize_series<S: Serializer>(s: &TruncatedSeries, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&s.render())
}

pub fn serialize_scalars<S: Serializer>(values: &[Scalar], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(scalar::format))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub mul: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearMapJson {
    pub domain: AlgebraRef,
    pub codomain: AlgebraRef,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub coords: Vec<String>,
}

fn parse_json<'de, T: Deserialize<'de>>(text: &'de str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{origin}: {e}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn scalar_at(text: &str, origin: &str, location: impl FnOnce() -> String) -> Result<Scalar> {
    scalar::parse(text).map_err(|_| Error::Input(format!("{origin}: {}: not a rational: {text:?}", location())))
}

fn scalars(values: &[String], origin: &str, field: &str) -> Result<Vec<Scalar>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| scalar_at(v, origin, || format!("{field}[{i}]")))
        .collect()
}

impl AlgebraJson {
    pub fn from_algebra(algebra: &Algebra) -> AlgebraJson {
        let fmt = |v: &[Scalar]| v.iter().map(scalar::format).collect::<Vec<_>>();
        AlgebraJson {
            dim: algebra.dim(),
            basis: algebra.labels().to_vec(),
            unit: fmt(algebra.unit_coords()),
            mul: algebra.structure().iter().map(|row| row.iter().map(|c| fmt(c)).collect()).collect(),
        }
    }

    /// Shape checks only; callers gate on [`Algebra::check_axioms`].
    pub fn build(&self, origin: &str) -> Result<Arc<Algebra>> {
        let dim = self.dim;
        if self.basis.len() != dim {
            return Err(Error::Input(format!("{origin}: basis has {} labels, dim is {dim}", self.basis.len())));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = self.basis.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::DuplicateLabel(dup.clone()));
        }
        if self.unit.len() != dim {
            return Err(Error::Input(format!("{origin}: unit has {} entries, dim is {dim}", self.unit.len())));
        }
        let unit = scalars(&self.unit, origin, "unit")?;
        if self.mul.len() != dim {
            return Err(Error::Input(format!("{origin}: mul has {} rows, dim is {dim}", self.mul.len())));
        }
        let mut structure = Vec::with_capacity(dim);
        for (i, row) in self.mul.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Input(format!("{origin}: mul[{i}] has {} entries, dim is {dim}", row.len())));
            }
            let mut parsed = Vec::with_capacity(dim);
            for (j, c) in row.iter().enumerate() {
                if c.len() != dim {
                    return Err(Error::Input(format!("{origin}: mul[{i}][{j}] has {} entries, dim is {dim}", c.len())));
                }
                parsed.push(scalars(c, origin, &format!("mul[{i}][{j}]"))?);
            }
            structure.push(parsed);
        }
        Algebra::new(self.basis.clone(), unit, structure)
    }
}

pub fn parse_algebra(text: &str, origin: &str) -> Result<Arc<Algebra>> {
    parse_json::<AlgebraJson>(text, origin)?.build(origin)
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>> {
    parse_algebra(&read(path)?, &path.display().to_string())
}

fn resolve(reference: &AlgebraRef, base_dir: &Path, origin: &str) -> Result<Arc<Algebra>> {
    match reference {
        AlgebraRef::Path(p) if p == "Q" => Ok(ground_field()),
        AlgebraRef::Path(p) => {
            let path: PathBuf = base_dir.join(p);
            load_algebra(&path)
        }
        AlgebraRef::Inline(json) => json.build(origin),
    }
}

/// `base_dir` resolves relative algebra paths.
pub fn parse_map(text: &str, origin: &str, base_dir: &Path) -> Result<LinearMap> {
    let json: LinearMapJson = parse_json(text, origin)?;
    let domain = resolve(&json.domain, base_dir, origin)?;
    let codomain = resolve(&json.codomain, base_dir, origin)?;
    if json.matrix.len() != codomain.dim() {
        return Err(Error::Input(format!(
            "{origin}: matrix has {} rows, codomain dimension is {}",
            json.matrix.len(),
            codomain.dim()
        )));
    }
    let mut rows = Vec::with_capacity(json.matrix.len());
    for (r, row) in json.matrix.iter().enumerate() {
        if row.len() != domain.dim() {
            return Err(Error::Input(format!(
                "{origin}: matrix[{r}] has {} entries, domain dimension is {}",
                row.len(),
                domain.dim()
            )));
        }
        rows.push(scalars(row, origin, &format!("matrix[{r}]"))?);
    }
    LinearMap::new(&domain, &codomain, rows)
}

pub fn load_map(path: &Path) -> Result<LinearMap> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    parse_map(&read(path)?, &path.display().to_string(), dir)
}

pub fn parse_element(text: &str, origin: &str, algebra: &Arc<Algebra>) -> Result<Element> {
    let json: ElementJson = parse_json(text, origin)?;
    if json.coords.len() != algebra.dim() {
        return Err(Error::Input(format!(
            "{origin}: {} coordinates, algebra dimension is {}",
            json.coords.len(),
            algebra.dim()
        )));
    }
    Element::new(algebra, scalars(&json.coords, origin, "coords")?)
}

pub fn load_element(path: &Path, algebra: &Arc<Algebra>) -> Result<Element> {
    parse_element(&read(path)?, &path.display().to_string(), algebra)
}

pub fn map_json(f: &LinearMap) -> LinearMapJson {
    let fmt = |v: &[Scalar]| v.iter().map(scalar::format).collect::<Vec<_>>();
    LinearMapJson {
        domain: AlgebraRef::Inline(AlgebraJson::from_algebra(f.domain())),
        codomain: AlgebraRef::Inline(AlgebraJson::from_algebra(f.codomain())),
        matrix: f.matrix().iter().map(|r| fmt(r)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{function_algebra, truncated_polynomial_algebra};
    use crate::scalar::ratio;

    #[test]
    fn algebra_round_trip() {
        for alg in [function_algebra(&["x", "y"]).unwrap(), truncated_polynomial_algebra(3).unwrap()] {
            let text = serde_json::to_string(&AlgebraJson::from_algebra(&alg)).unwrap();
            let back = parse_algebra(&text, "mem").unwrap();
            assert!(back.same_as(&alg));
            assert_eq!(back.labels(), alg.labels());
        }
    }

    #[test]
    fn map_with_inline_and_ground_references() {
        let text = r#"{"domain": {"dim": 2, "basis": ["x","y"], "unit": ["1","1"],
            "mul": [[["1","0"],["0","0"]],[["0","0"],["0","1"]]]}, "codomain": "Q", "matrix": [["1", "-1/2"]]}"#;
        let f = parse_map(text, "mem", Path::new(".")).unwrap();
        assert!(f.codomain().same_as(&ground_field()));
        assert_eq!(f.matrix()[0][1], ratio(-1, 2));
        let again = parse_map(&serde_json::to_string(&map_json(&f)).unwrap(), "mem", Path::new(".")).unwrap();
        assert_eq!(again, f);
        let e = parse_element(r#"{"coords": ["2", "3/4"]}"#, "mem", f.domain()).unwrap();
        assert_eq!(e.coords()[1], ratio(3, 4));
    }

    #[test]
    fn errors_carry_locations() {
        let err = parse_algebra("{\"dim\": 1,\n \"basis\": [\"x\"", "a.json").unwrap_err();
        let Error::Input(msg) = err else { panic!("{err:?}") };
        assert!(msg.starts_with("a.json: ") && msg.contains("line 2"), "{msg}");
        let err = parse_algebra(r#"{"dim": 1, "basis": ["x"], "unit": ["1"], "mul": [[["one"]]]}"#, "b.json").unwrap_err();
        assert_eq!(err, Error::Input("b.json: mul[0][0][0]: not a rational: \"one\"".into()));
        let err = parse_element(r#"{"coords": ["1/0"]}"#, "c.json", &ground_field()).unwrap_err();
        assert!(matches!(err, Error::Input(m) if m.contains("coords[0]")));
    }

    #[test]
    fn shape_errors() {
        let err = parse_algebra(r#"{"dim": 2, "basis": ["x"], "unit": ["1"], "mul": []}"#, "d").unwrap_err();
        assert!(matches!(err, Error::Input(m) if m.contains("basis has 1 labels")));
        let err = parse_algebra(r#"{"dim": 2, "basis": ["x","x"], "unit": ["1","1"], "mul": []}"#, "d").unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("x".into()));
        let text = r#"{"domain": "Q", "codomain": "Q", "matrix": [["1", "2"]]}"#;
        assert!(parse_map(text, "m", Path::new(".")).is_err());
    }
}
