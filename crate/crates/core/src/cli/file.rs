//! The `lieshift/1` algebra file: labels, sparse brackets with exact
//! coefficient strings, optional annotations and tower variables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::field::{FieldContext, FieldElement, Var, Vector};
use crate::liealg::{Annotations, HeisenbergSplit, LieAlgebra, Subspace};

use super::CliError;

pub const SCHEMA: &str = "lieshift/1";

/// Vector as `label → coefficient`; zero coefficients omitted.
pub type VectorFile = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: VectorFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarDecl {
    pub name: String,
    pub level: u8,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDecl {
    pub variables: Vec<VarDecl>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitFile {
    pub l: Vec<VectorFile>,
    pub x: Vec<VectorFile>,
    pub y: Vec<VectorFile>,
    pub z: VectorFile,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnotationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<VectorFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilradical: Option<Vec<VectorFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solvable_radical: Option<Vec<VectorFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heisenberg_split: Option<SplitFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<AnnotationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDecl>,
}

fn vector_to_file(labels: &[String], v: &[FieldElement]) -> VectorFile {
    labels
        .iter()
        .zip(v)
        .filter(|(_, x)| !x.is_zero())
        .map(|(l, x)| (l.clone(), x.to_string()))
        .collect()
}

fn space_to_file(labels: &[String], s: &Subspace) -> Vec<VectorFile> {
    s.basis().iter().map(|v| vector_to_file(labels, v)).collect()
}

impl AlgebraFile {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let labels = l.labels();
        let brackets = l
            .brackets()
            .iter()
            .map(|(&(i, j), v)| BracketEntry {
                i,
                j,
                coeffs: vector_to_file(labels, v),
            })
            .collect();
        let ann = l.annotations();
        let annotations = (!ann.is_empty()).then(|| AnnotationFile {
            central: ann
                .central
                .as_ref()
                .map(|c| c.iter().map(|&i| labels[i].clone()).collect()),
            levi: ann.levi.as_ref().map(|s| space_to_file(labels, s)),
            nilradical: ann.nilradical.as_ref().map(|s| space_to_file(labels, s)),
            solvable_radical: ann.solvable_radical.as_ref().map(|s| space_to_file(labels, s)),
            heisenberg_split: ann.heisenberg_split.as_ref().map(|s| SplitFile {
                l: space_to_file(labels, &s.l_basis),
                x: s.x.iter().map(|v| vector_to_file(labels, v)).collect(),
                y: s.y.iter().map(|v| vector_to_file(labels, v)).collect(),
                z: vector_to_file(labels, &s.z),
            }),
        });
        let vars = l.field().vars();
        let field = (!vars.is_empty()).then(|| FieldDecl {
            variables: vars
                .iter()
                .map(|v| VarDecl {
                    name: v.name().to_string(),
                    level: v.level(),
                })
                .collect(),
        });
        AlgebraFile {
            schema: SCHEMA.to_string(),
            name: Some(l.name().to_string()),
            dim: l.dim(),
            basis: labels.to_vec(),
            brackets,
            annotations,
            field,
        }
    }

    /// Builds the algebra and rejects it unless it validates.
    pub fn to_algebra(&self) -> Result<LieAlgebra, CliError> {
        let l = self.to_algebra_unchecked()?;
        let report = l.validate();
        if !report.is_valid() {
            let mut msgs: Vec<String> = report
                .jacobi_failures
                .iter()
                .map(|[a, b, c]| {
                    format!("Jacobi fails on ({}, {}, {})", self.basis[*a], self.basis[*b], self.basis[*c])
                })
                .collect();
            msgs.extend(report.annotation_failures);
            return Err(CliError::Schema(msgs.join("; ")));
        }
        Ok(l)
    }

    /// Builds the algebra without checking Jacobi or annotations.
    pub fn to_algebra_unchecked(&self) -> Result<LieAlgebra, CliError> {
        if self.schema != SCHEMA {
            return Err(CliError::Schema(format!(
                "unsupported schema '{}', expected '{SCHEMA}'",
                self.schema
            )));
        }
        if self.basis.len() != self.dim {
            return Err(CliError::Schema(format!(
                "dim is {} but {} basis labels are given",
                self.dim,
                self.basis.len()
            )));
        }
        for (k, lab) in self.basis.iter().enumerate() {
            if self.basis[..k].contains(lab) {
                return Err(CliError::Schema(format!("duplicate basis label '{lab}'")));
            }
        }
        let vars = self
            .field
            .as_ref()
            .map(|f| {
                f.variables
                    .iter()
                    .map(|v| Var::new(v.name.clone(), v.level))
                    .collect()
            })
            .unwrap_or_default();
        let ctx = FieldContext::new(vars);
        let vector = |v: &VectorFile| -> Result<Vector, CliError> {
            let mut out = vec![FieldElement::zero(); self.dim];
            for (lab, s) in v {
                let k = self
                    .basis
                    .iter()
                    .position(|b| b == lab)
                    .ok_or_else(|| CliError::Schema(format!("unknown label '{lab}'")))?;
                out[k] = ctx.parse(s)?;
            }
            Ok(out)
        };
        let space = |vs: &[VectorFile]| -> Result<Subspace, CliError> {
            let vectors = vs.iter().map(vector).collect::<Result<Vec<_>, _>>()?;
            Ok(Subspace::span(self.dim, vectors))
        };
        let entries = self
            .brackets
            .iter()
            .map(|b| Ok((b.i, b.j, vector(&b.coeffs)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let name = self.name.clone().unwrap_or_else(|| "q".into());
        let mut l = LieAlgebra::new(name, self.basis.clone(), ctx.clone(), entries)?;
        if let Some(a) = &self.annotations {
            let central = match &a.central {
                Some(c) => Some(
                    c.iter()
                        .map(|lab| {
                            self.basis.iter().position(|b| b == lab).ok_or_else(|| {
                                CliError::Schema(format!("unknown label '{lab}'"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
                None => None,
            };
            let heisenberg_split = match &a.heisenberg_split {
                Some(s) => Some(HeisenbergSplit {
                    l_basis: space(&s.l)?,
                    x: s.x.iter().map(vector).collect::<Result<_, _>>()?,
                    y: s.y.iter().map(vector).collect::<Result<_, _>>()?,
                    z: vector(&s.z)?,
                }),
                None => None,
            };
            l = l.with_annotations(Annotations {
                central,
                levi: a.levi.as_deref().map(space).transpose()?,
                nilradical: a.nilradical.as_deref().map(space).transpose()?,
                solvable_radical: a.solvable_radical.as_deref().map(space).transpose()?,
                heisenberg_split,
            });
        }
        Ok(l)
    }

    pub fn parse(text: &str) -> Result<LieAlgebra, CliError> {
        let f: AlgebraFile = serde_json::from_str(text)?;
        f.to_algebra()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::abelian_qhat;
    use crate::invariants::Sampling;
    use crate::liealg::presets::{preset, PRESET_NAMES};

    #[test]
    fn presets_round_trip() {
        for name in PRESET_NAMES {
            let name = &name.replace("(n)", "(2)");
            let l = preset(name).unwrap();
            let f = AlgebraFile::from_algebra(&l);
            let back = AlgebraFile::parse(&f.to_json()).unwrap();
            assert_eq!(back, l, "{name}");
            assert_eq!(back.annotations(), l.annotations(), "{name}");
            assert_eq!(AlgebraFile::from_algebra(&back), f, "{name}");
        }
    }

    #[test]
    fn tower_coefficients_round_trip() {
        let h3 = preset("heisenberg(1)").unwrap();
        let hat = abelian_qhat(&h3, &Subspace::units(3, &[2]), &Sampling::default()).unwrap();
        let f = AlgebraFile::from_algebra(&hat.algebra);
        assert!(f.field.is_some());
        assert_eq!(AlgebraFile::parse(&f.to_json()).unwrap(), hat.algebra);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let bad_schema = r#"{"schema":"other","dim":1,"basis":["a"]}"#;
        assert!(matches!(AlgebraFile::parse(bad_schema), Err(CliError::Schema(_))));
        let floats = r#"{"schema":"lieshift/1","dim":2,"basis":["a","b"],
            "brackets":[{"i":0,"j":1,"coeffs":{"b":"0.5"}}]}"#;
        assert!(AlgebraFile::parse(floats).is_err());
        let jacobi = r#"{"schema":"lieshift/1","dim":3,"basis":["x","y","z"],
            "brackets":[{"i":0,"j":1,"coeffs":{"z":"1"}},{"i":1,"j":2,"coeffs":{"x":"1"}},
                        {"i":2,"j":0,"coeffs":{"x":"1"}}]}"#;
        assert!(AlgebraFile::parse(jacobi).is_err());
        let ok = r#"{"schema":"lieshift/1","dim":2,"basis":["t","y"],
            "brackets":[{"i":0,"j":1,"coeffs":{"y":"1"}}]}"#;
        assert_eq!(AlgebraFile::parse(ok).unwrap(), preset("aff1").unwrap());
    }
}
