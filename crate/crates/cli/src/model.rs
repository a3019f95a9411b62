//! Model files: the JSON inputs of `pois`, `truncate` and `bps`.

use std::path::Path;

use higher_currents::exact::Rational;
use higher_currents::forms::{GeometricModel, Parity};
use higher_currents::plectic::{PlecticStructure, SearchKind, SearchSpace};
use higher_currents::superspace::{SpinorChoice, SuperMinkowskiModel};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// Polynomial forms on ℝⁿ truncated at total polynomial degree.
    Polynomial {
        coordinates: Vec<String>,
        truncation: u32,
        omega: String,
        #[serde(default)]
        theta: Option<String>,
        #[serde(default = "affine")]
        search: SearchKind,
    },
    /// Invariant forms of a Lie superalgebra; brackets are
    /// `[X_i, X_j] = c X_k` as `(i, j, k, c)`.
    Ce {
        basis: Vec<BasisEntry>,
        #[serde(default)]
        brackets: Vec<(usize, usize, usize, String)>,
        omega: String,
        #[serde(default)]
        theta: Option<String>,
        #[serde(default = "invariant")]
        search: SearchKind,
    },
    /// Super-Minkowski spacetime with its WZW cocycle of rank `p`; `pois`
    /// and `truncate` run on the super-torus with supertranslations.
    SuperMinkowski { d: usize, spinors: SpinorChoice, p: usize },
}

fn affine() -> SearchKind {
    SearchKind::Affine
}

fn invariant() -> SearchKind {
    SearchKind::Invariant
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    #[serde(flatten)]
    pub spec: ModelSpec,
}

impl ModelFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn super_minkowski(&self) -> Result<(SuperMinkowskiModel, usize), CliError> {
        match &self.spec {
            ModelSpec::SuperMinkowski { d, spinors, p } => Ok((SuperMinkowskiModel::build(*d, *spinors)?, *p)),
            _ => Err(CliError::Config(format!("model `{}` is not a super-Minkowski model", self.name))),
        }
    }

    /// The plectic structure and the field space to search.
    pub fn plectic(&self) -> Result<(PlecticStructure, SearchSpace), CliError> {
        let space = |k: SearchKind| match k {
            SearchKind::Affine => Ok(SearchSpace::Affine),
            SearchKind::Invariant => Ok(SearchSpace::Invariant),
            SearchKind::Supertranslations => {
                Err(CliError::Config("supertranslations need a super-Minkowski model".into()))
            }
        };
        match &self.spec {
            ModelSpec::Polynomial { coordinates, truncation, omega, theta, search } => {
                let coords: Vec<&str> = coordinates.iter().map(String::as_str).collect();
                let m = GeometricModel::polynomial(&coords, *truncation)?;
                Ok((PlecticStructure::parse(m, omega, theta.as_deref())?, space(*search)?))
            }
            ModelSpec::Ce { basis, brackets, omega, theta, search } => {
                let b: Vec<(&str, Parity)> = basis.iter().map(|e| (e.name.as_str(), e.parity)).collect();
                let mut constants = Vec::new();
                for (i, j, k, c) in brackets {
                    constants.push((*i, *j, *k, c.parse::<Rational>()?));
                }
                let m = GeometricModel::ce_from_structure_constants(&b, &constants)?;
                Ok((PlecticStructure::parse(m, omega, theta.as_deref())?, space(*search)?))
            }
            ModelSpec::SuperMinkowski { .. } => {
                let (sm, p) = self.super_minkowski()?;
                let st = sm.super_torus()?;
                let omega = st.embed(&sm.wzw_cocycle(p)?);
                let theta = st.primitive(&omega)?;
                let s = PlecticStructure::new(st.model.clone(), omega, Some(theta))?;
                Ok((s, SearchSpace::Fields(st.supertranslations()?)))
            }
        }
    }
}
