//! JSON model files.
//!
//! ```json
//! {
//!   "lie_algebra": {"dim": 2, "bracket": [[[0,0],[0,1]],[[0,-1],[0,0]]]},
//!   "representation": {"dim": 2, "matrices": [[[0,0],[0,1]], [[0,0],[-1,0]]]},
//!   "operators": {"T0": [[0,0],[1,0]]},
//!   "prelie": {"dim": 2, "product": [[[0,-1],[0,0]],[[0,0],[0,0]]]},
//!   "tensors": {"Hid": [[1,0],[0,1]]},
//!   "forms": {"B": [[0,1],[1,0]]},
//!   "series": {"X": [[1,0]]},
//!   "action": {"base_dim": 1, "bmap": [[0,0],[1,0]], "phi": [["1"], ["0"]]}
//! }
//! ```
//!
//! `bracket[i][j]` and `product[i][j]` hold the coordinates of `[e_i,e_j]`
//! and `e_i∗e_j`. Matrices are lists of rows; an operator `E → A` is
//! `dim A × dim E` with column `j` the image of `e_j`. Rationals are
//! integers or strings `"p/q"`. Without `representation` the adjoint
//! representation is used. `action.lie_algebra` may override the top-level
//! algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::action::{ActionModel, PolyVecField, RbLieAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, QMatrix, Rational};
use crate::kv::{SymForm, SymTensor};
use crate::liealg::{LieAlgebra, LieRepPair, Representation};
use crate::prelie::PreLieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (self.0.denom().is_one(), self.0.numer().to_i64()) {
            (true, Some(v)) => s.serialize_i64(v),
            _ => s.serialize_str(&format_rational(&self.0)),
        }
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                parse_rational(v).map(JsonRational).ok_or_else(|| E::custom(format!("not a rational: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

type Mat = Vec<Vec<JsonRational>>;
type Table = Vec<Vec<Vec<JsonRational>>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LieFile {
    dim: usize,
    bracket: Table,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    dim: usize,
    matrices: Vec<Mat>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PreLieFile {
    dim: usize,
    product: Table,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lie_algebra: Option<LieFile>,
    base_dim: usize,
    bmap: Mat,
    phi: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lie_algebra: Option<LieFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    representation: Option<RepFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    operators: BTreeMap<String, Mat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prelie: Option<PreLieFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    tensors: BTreeMap<String, Mat>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    forms: BTreeMap<String, Mat>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    series: BTreeMap<String, Vec<Vec<JsonRational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<ActionFile>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    pub lie_algebra: Option<LieAlgebra>,
    pub representation: Option<Representation>,
    pub operators: BTreeMap<String, QMatrix>,
    pub prelie: Option<PreLieAlgebra>,
    pub tensors: BTreeMap<String, SymTensor>,
    pub forms: BTreeMap<String, SymForm>,
    pub series: BTreeMap<String, Vec<Vec<Rational>>>,
    pub action: Option<ActionModel>,
}

fn at<T>(path: &str, msg: impl fmt::Display) -> Result<T> {
    Err(Error::Input(format!("{path}: {msg}")))
}

fn rats(v: &[JsonRational]) -> Vec<Rational> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn to_matrix(path: &str, m: &Mat, rows: usize, cols: usize) -> Result<QMatrix> {
    if m.len() != rows {
        return at(path, format!("expected {rows} rows, found {}", m.len()));
    }
    for (r, row) in m.iter().enumerate() {
        if row.len() != cols {
            return at(&format!("{path}[{r}]"), format!("expected {cols} entries, found {}", row.len()));
        }
    }
    Ok(QMatrix::from_rows(&m.iter().map(|r| rats(r)).collect::<Vec<_>>()).expect("checked shape"))
}

fn to_table(path: &str, t: &Table, n: usize) -> Result<Vec<Vec<Vec<Rational>>>> {
    if t.len() != n {
        return at(path, format!("expected {n} entries, found {}", t.len()));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in t.iter().enumerate() {
        if row.len() != n {
            return at(&format!("{path}[{i}]"), format!("expected {n} entries, found {}", row.len()));
        }
        let mut r = Vec::with_capacity(n);
        for (j, v) in row.iter().enumerate() {
            if v.len() != n {
                return at(&format!("{path}[{i}][{j}]"), format!("expected {n} entries, found {}", v.len()));
            }
            r.push(rats(v));
        }
        out.push(r);
    }
    Ok(out)
}

fn lie_from_file(path: &str, l: &LieFile) -> Result<LieAlgebra> {
    LieAlgebra::from_table(&to_table(&format!("{path}.bracket"), &l.bracket, l.dim)?)
}

fn lie_to_file(l: &LieAlgebra) -> LieFile {
    LieFile { dim: l.dim(), bracket: table_to_file(&l.table()) }
}

fn table_to_file(t: &[Vec<Vec<Rational>>]) -> Table {
    t.iter().map(|r| r.iter().map(|v| v.iter().cloned().map(JsonRational).collect()).collect()).collect()
}

fn matrix_to_file(m: &QMatrix) -> Mat {
    m.to_rows().into_iter().map(|r| r.into_iter().map(JsonRational).collect()).collect()
}

impl Model {
    /// Parses a model from JSON text; errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ModelFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let msg = e.inner().to_string();
            // serde reports a missing field at its parent; name the field itself
            let path = match msg.split('`').nth(1) {
                Some(field) if msg.starts_with("missing field") => {
                    if path == "." {
                        field.to_owned()
                    } else {
                        format!("{path}.{field}")
                    }
                }
                _ => path,
            };
            Error::Input(format!("{path}: {msg}"))
        })?;
        Self::from_file(&file)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn from_file(f: &ModelFile) -> Result<Self> {
        let lie = f.lie_algebra.as_ref().map(|l| lie_from_file("lie_algebra", l)).transpose()?;
        let representation = match &f.representation {
            None => None,
            Some(r) => {
                let Some(g) = &lie else {
                    return at("representation", "needs lie_algebra");
                };
                if r.matrices.len() != g.dim() {
                    return at("representation.matrices", format!("expected {} matrices, found {}", g.dim(), r.matrices.len()));
                }
                let ms = r
                    .matrices
                    .iter()
                    .enumerate()
                    .map(|(i, m)| to_matrix(&format!("representation.matrices[{i}]"), m, r.dim, r.dim))
                    .collect::<Result<_>>()?;
                Some(Representation::new(r.dim, ms)?)
            }
        };
        let (na, ne) = match &lie {
            Some(g) => (g.dim(), representation.as_ref().map_or(g.dim(), Representation::dim)),
            None => (0, 0),
        };
        let mut operators = BTreeMap::new();
        for (name, m) in &f.operators {
            let path = format!("operators.{name}");
            if lie.is_none() {
                return at(&path, "operators need lie_algebra");
            }
            operators.insert(name.clone(), to_matrix(&path, m, na, ne)?);
        }
        let prelie = match &f.prelie {
            None => None,
            Some(p) => Some(PreLieAlgebra::from_table(&to_table("prelie.product", &p.product, p.dim)?)?),
        };
        let np = prelie.as_ref().map(PreLieAlgebra::dim);
        let mut tensors = BTreeMap::new();
        for (name, m) in &f.tensors {
            let path = format!("tensors.{name}");
            let Some(n) = np else {
                return at(&path, "tensors need prelie");
            };
            let m = to_matrix(&path, m, n, n)?;
            tensors.insert(name.clone(), SymTensor::new(m).or_else(|_| at(&path, "not symmetric"))?);
        }
        let mut forms = BTreeMap::new();
        for (name, m) in &f.forms {
            let path = format!("forms.{name}");
            let Some(n) = np else {
                return at(&path, "forms need prelie");
            };
            let m = to_matrix(&path, m, n, n)?;
            forms.insert(name.clone(), SymForm::new(m).or_else(|_| at(&path, "not symmetric"))?);
        }
        let mut series = BTreeMap::new();
        for (name, terms) in &f.series {
            let path = format!("series.{name}");
            if lie.is_none() {
                return at(&path, "series need lie_algebra");
            }
            for (i, t) in terms.iter().enumerate() {
                if t.len() != na {
                    return at(&format!("{path}[{i}]"), format!("expected {na} entries, found {}", t.len()));
                }
            }
            series.insert(name.clone(), terms.iter().map(|t| rats(t)).collect());
        }
        let action = match &f.action {
            None => None,
            Some(a) => {
                let g = match (&a.lie_algebra, &lie) {
                    (Some(l), _) => lie_from_file("action.lie_algebra", l)?,
                    (None, Some(g)) => g.clone(),
                    (None, None) => return at("action", "needs lie_algebra"),
                };
                let n = g.dim();
                let bmap = to_matrix("action.bmap", &a.bmap, n, n)?;
                if a.phi.len() != n {
                    return at("action.phi", format!("expected {n} vector fields, found {}", a.phi.len()));
                }
                let mut phi = Vec::with_capacity(n);
                for (i, comps) in a.phi.iter().enumerate() {
                    let path = format!("action.phi[{i}]");
                    let strs: Vec<&str> = comps.iter().map(String::as_str).collect();
                    phi.push(PolyVecField::parse(a.base_dim, &strs).or_else(|e| at(&path, e))?);
                }
                Some(ActionModel::new(RbLieAlgebra::new(g, bmap)?, a.base_dim, phi)?)
            }
        };
        Ok(Self { lie_algebra: lie, representation, operators, prelie, tensors, forms, series, action })
    }

    fn to_file(&self) -> ModelFile {
        ModelFile {
            lie_algebra: self.lie_algebra.as_ref().map(lie_to_file),
            representation: self
                .representation
                .as_ref()
                .map(|r| RepFile { dim: r.dim(), matrices: r.matrices().iter().map(matrix_to_file).collect() }),
            operators: self.operators.iter().map(|(k, m)| (k.clone(), matrix_to_file(m))).collect(),
            prelie: self.prelie.as_ref().map(|p| PreLieFile { dim: p.dim(), product: table_to_file(&p.table()) }),
            tensors: self.tensors.iter().map(|(k, t)| (k.clone(), matrix_to_file(t.matrix()))).collect(),
            forms: self.forms.iter().map(|(k, t)| (k.clone(), matrix_to_file(t.matrix()))).collect(),
            series: self
                .series
                .iter()
                .map(|(k, s)| (k.clone(), s.iter().map(|v| v.iter().cloned().map(JsonRational).collect()).collect()))
                .collect(),
            action: self.action.as_ref().map(|a| ActionFile {
                lie_algebra: (Some(a.rb().algebra()) != self.lie_algebra.as_ref()).then(|| lie_to_file(a.rb().algebra())),
                base_dim: a.base_dim(),
                bmap: matrix_to_file(a.rb().bmap()),
                phi: a.phi().iter().map(|x| x.components().iter().map(ToString::to_string).collect()).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn pair(&self) -> Result<LieRepPair> {
        let Some(g) = &self.lie_algebra else {
            return Err(Error::Input("model has no lie_algebra".into()));
        };
        match &self.representation {
            Some(r) => LieRepPair::new(g.clone(), r.clone()),
            None => Ok(LieRepPair::adjoint(g.clone())),
        }
    }

    pub fn operator(&self, name: &str) -> Result<&QMatrix> {
        self.operators.get(name).ok_or_else(|| Error::Input(format!("unknown operator {name:?}")))
    }

    pub fn tensor(&self, name: &str) -> Result<&SymTensor> {
        self.tensors.get(name).ok_or_else(|| Error::Input(format!("unknown tensor {name:?}")))
    }

    pub fn form(&self, name: &str) -> Result<&SymForm> {
        self.forms.get(name).ok_or_else(|| Error::Input(format!("unknown form {name:?}")))
    }

    pub fn gauge_series(&self, name: &str) -> Result<&Vec<Vec<Rational>>> {
        self.series.get(name).ok_or_else(|| Error::Input(format!("unknown series {name:?}")))
    }

    pub fn prelie(&self) -> Result<&PreLieAlgebra> {
        self.prelie.as_ref().ok_or_else(|| Error::Input("model has no prelie".into()))
    }

    pub fn action(&self) -> Result<&ActionModel> {
        self.action.as_ref().ok_or_else(|| Error::Input("model has no action".into()))
    }
}
