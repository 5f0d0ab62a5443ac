//! Pair description records (family, parameters, character values) and a
//! summary report for arbitrary user-supplied pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjoint::{classify_pair, AdjointError, CartanMatrix, ChainConfig, PairState};
use crate::groups::GroupError;
use crate::hilbert::{assemble, HilbertSeries};
use crate::instantiate::{cached_group, Instance, CHARACTERISTICS};
use crate::linalg::Matrix;
use crate::scalars::{Field, ScalarError};
use crate::weylgroupoid::{generate, root_modules, ObjectIdentity, SchemeRecord};
use crate::ydmod::{CentralizerRep, YDModule, YdError};

#[derive(Debug, Error)]
pub enum PairFileError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Yd(#[from] YdError),
    #[error(transparent)]
    Adjoint(#[from] AdjointError),
    #[error("characteristic {0} is not one of 0, 2, 3, 5, 7")]
    Characteristic(u64),
    #[error("{0}")]
    Invalid(String),
}

/// A scalar (character value) or a square matrix, entries in the field's string syntax.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepValue {
    Scalar(String),
    Matrix(Vec<Vec<String>>),
}

/// `M(degree, τ)` with `τ` given on generator words of the centralizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepDescription {
    pub degree: String,
    pub values: BTreeMap<String, RepValue>,
}

/// Everything needed to rebuild a pair. Scalars are written in the adjoined
/// root `z`, e.g. `"-1"`, `"z^2"`, `"1 + 2*z"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDescription {
    pub family: String,
    pub parameters: Vec<u32>,
    pub characteristic: u64,
    pub cyclotomic_order: u32,
    pub v: RepDescription,
    pub w: RepDescription,
}

impl PairDescription {
    pub fn from_instance(inst: &Instance) -> PairDescription {
        let field = inst.pair.field();
        let group = inst.pair.group();
        let rep = |r: &crate::instantiate::RepRecord| RepDescription {
            degree: r.degree.clone(),
            values: r
                .values
                .iter()
                .map(|(s, rows)| {
                    let v = if rows.len() == 1 { RepValue::Scalar(rows[0][0].clone()) } else { RepValue::Matrix(rows.clone()) };
                    (s.clone(), v)
                })
                .collect(),
        };
        PairDescription {
            family: group.spec().family.clone(),
            parameters: group.spec().parameters.clone(),
            characteristic: field.characteristic(),
            cyclotomic_order: field.cyclotomic_order(),
            v: rep(&inst.provenance.v),
            w: rep(&inst.provenance.w),
        }
    }

    pub fn build(&self) -> Result<PairState, PairFileError> {
        if !CHARACTERISTICS.contains(&self.characteristic) {
            return Err(PairFileError::Characteristic(self.characteristic));
        }
        let group = cached_group(&self.family, &self.parameters)?;
        let field = Field::create(self.characteristic, self.cyclotomic_order)?;
        let module = |d: &RepDescription, name: &str| -> Result<YDModule, PairFileError> {
            let x = group.word(&d.degree)?;
            let mut gens = Vec::new();
            let mut images = Vec::new();
            for (word, value) in &d.values {
                gens.push(group.word(word)?);
                images.push(match value {
                    RepValue::Scalar(s) => Matrix::scalar(field, 1, &field.parse(s)?),
                    RepValue::Matrix(rows) => {
                        let rows = rows
                            .iter()
                            .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<Vec<_>, _>>()?;
                        if rows.iter().any(|r| r.len() != rows.len()) {
                            return Err(PairFileError::Invalid(format!("value of {word} is not a square matrix")));
                        }
                        Matrix::from_rows(field, rows)
                    }
                });
            }
            let degree = images.first().map(|m| m.rows()).ok_or_else(|| PairFileError::Invalid("no values".into()))?;
            if images.iter().any(|m| m.rows() != degree) {
                return Err(PairFileError::Invalid("values of different sizes".into()));
            }
            Ok(YDModule::induce(group.clone(), &CentralizerRep { x, generators: gens, images }, name)?)
        };
        Ok(PairState::new(module(&self.v, "v")?, module(&self.w, "w")?)?)
    }
}

/// What can be said about a pair without a table entry to compare against.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub group: String,
    pub field: String,
    pub dims: [usize; 2],
    pub label: String,
    pub braiding_square_identity: bool,
    pub cartan: Option<CartanMatrix>,
    pub reflections: [Option<String>; 2],
    /// "finite", or why the groupoid could not be built.
    pub outcome: String,
    pub cap_hit: bool,
    pub scheme: Option<SchemeRecord>,
    pub root_classes: Vec<String>,
    pub series: Option<String>,
    pub dimension: Option<String>,
    #[serde(skip)]
    pub hilbert: Option<HilbertSeries>,
}

pub fn describe(pair: &PairState, identity: &dyn ObjectIdentity, cfg: &ChainConfig, object_cap: usize) -> PairReport {
    let analysis = pair.analyze(cfg);
    let cartan = analysis.as_ref().ok().and_then(|a| a.cartan().ok());
    let reflections = [1, 2].map(|i| {
        analysis.as_ref().ok().and_then(|a| pair.reflect_with(i, a).ok()).map(|p| classify_pair(&p).to_string())
    });
    let mut r = PairReport {
        group: pair.group().spec().to_string(),
        field: pair.field().to_string(),
        dims: [pair.v.dim(), pair.w.dim()],
        label: classify_pair(pair).to_string(),
        braiding_square_identity: pair.braiding_square_is_identity(),
        cartan,
        reflections,
        outcome: String::new(),
        cap_hit: false,
        scheme: None,
        root_classes: Vec::new(),
        series: None,
        dimension: None,
        hilbert: None,
    };
    if r.braiding_square_identity {
        r.outcome = "rejected: braiding square is identity".into();
        return r;
    }
    let scheme = match generate(pair, identity, cfg, object_cap) {
        Ok(s) => s,
        Err(e) => {
            r.cap_hit = e.is_cap();
            r.outcome = e.to_string();
            return r;
        }
    };
    r.outcome = "finite".into();
    r.scheme = Some(scheme.record());
    if let Ok(roots) = scheme.positive_roots(0) {
        if let Ok(mods) = root_modules(pair, &roots, cfg) {
            r.root_classes = mods.iter().map(|m| m.class.map_or("-".into(), |c| c.to_string())).collect();
            let data: Vec<_> = mods.iter().map(|m| (m.root.coefficients(), m.class)).collect();
            if let Ok(s) = assemble(&data, pair.field().characteristic()) {
                r.dimension = Some(s.dimension().to_string());
                r.series = Some(s.to_string());
                r.hilbert = Some(s);
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instantiate::{example, instantiate};
    use crate::weylgroupoid::default_identity;

    #[test]
    fn description_round_trip() {
        let inst = instantiate(example("z32-p1").unwrap().as_ref(), 0).unwrap();
        let d = PairDescription::from_instance(&inst);
        let json = serde_json::to_string(&d).unwrap();
        let back: PairDescription = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        let pair = back.build().unwrap();
        assert!(pair.is_isomorphic(&inst.pair));
    }

    #[test]
    fn degree_two_description() {
        let inst = instantiate(example("z31b-p3").unwrap().as_ref(), 0).unwrap();
        let d = PairDescription::from_instance(&inst);
        assert!(d.w.values.values().any(|v| matches!(v, RepValue::Matrix(_))));
        let pair = d.build().unwrap();
        let r = describe(&pair, default_identity(&pair).as_ref(), &ChainConfig::default(), 16);
        assert_eq!(r.outcome, "finite");
        assert_eq!(r.dimension.as_deref(), Some("2304"));
    }
}
