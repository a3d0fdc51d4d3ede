//! JSON poset and weight files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use posetdegen::{Ideal, Marking, Poset, RelativeStructure, WeightVector};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, ParseError};

/// How the weak order `<'` is obtained from a poset file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeakMode {
    /// `<'` is generated by `weak_covers`.
    #[default]
    Explicit,
    /// `<'` is empty (order polytope).
    Trivial,
    /// `<'` equals `<` (chain polytope).
    Full,
    /// `p <' q` iff `p < q` and `p` is unmarked.
    FullUnmarked,
}

impl WeakMode {
    fn is_explicit(&self) -> bool {
        *self == WeakMode::Explicit
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default)]
    pub weak_covers: Vec<(String, String)>,
    #[serde(default)]
    pub marked: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "WeakMode::is_explicit")]
    pub weak_mode: WeakMode,
}

impl PosetFile {
    pub fn parse(text: &str, path: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError::json(path, &e))
    }

    pub fn load(path: &Path) -> Result<Self, ParseError> {
        let text = read(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Hasse covers of both orders and the marking, with `weak_mode` made explicit.
    pub fn from_structure(s: &RelativeStructure) -> Self {
        let poset = s.poset();
        let pairs = |order: &Poset| -> Vec<(String, String)> {
            order
                .covers()
                .into_iter()
                .map(|(p, q)| (poset.label(p).to_string(), poset.label(q).to_string()))
                .collect()
        };
        PosetFile {
            elements: poset.labels().to_vec(),
            covers: pairs(poset),
            weak_covers: pairs(s.weak()),
            marked: s
                .marking()
                .map(|m| m.iter().map(|(p, v)| (poset.label(p).to_string(), v)).collect())
                .unwrap_or_default(),
            weak_mode: WeakMode::Explicit,
        }
    }

    /// Builds and validates the structure; an empty `marked` map means unmarked.
    pub fn to_structure(&self) -> posetdegen::Result<RelativeStructure> {
        let poset = Poset::new(&self.elements, &self.covers)?;
        let marking = if self.marked.is_empty() {
            None
        } else {
            let values: Vec<(&String, i64)> = self.marked.iter().map(|(l, &v)| (l, v)).collect();
            Some(Marking::from_labels(&poset, &values)?)
        };
        let weak = match self.weak_mode {
            WeakMode::Explicit => {
                let pairs = self
                    .weak_covers
                    .iter()
                    .map(|(a, b)| Ok((poset.require(a)?, poset.require(b)?)))
                    .collect::<posetdegen::Result<Vec<_>>>()?;
                poset.with_pairs(pairs)?
            }
            WeakMode::Trivial => poset.trivial_like(),
            WeakMode::Full => poset.clone(),
            WeakMode::FullUnmarked => {
                let marked = marking.as_ref().map_or(0, Marking::marked_set);
                let pairs = poset
                    .relation_pairs()
                    .into_iter()
                    .filter(|&(p, _)| marked & (1u64 << p) == 0);
                poset.with_pairs(pairs)?
            }
        };
        RelativeStructure::new(poset, weak, marking)
    }
}

/// `comma-joined sorted labels`, with the empty ideal spelled `""`.
pub fn ideal_key(poset: &Poset, ideal: Ideal) -> String {
    let mut names = poset.names(ideal.bits());
    names.sort();
    names.join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub weights: BTreeMap<String, String>,
}

impl WeightsFile {
    pub fn parse(text: &str, path: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError::json(path, &e))
    }

    pub fn load(path: &Path) -> Result<Self, ParseError> {
        let text = read(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn from_weights(poset: &Poset, ideals: &[Ideal], w: &WeightVector) -> Self {
        WeightsFile {
            weights: ideals
                .iter()
                .zip(w.values())
                .map(|(&j, v)| (ideal_key(poset, j), v.to_string()))
                .collect(),
        }
    }

    /// Weights in the order of `ideals`. Keys may list labels in any order.
    pub fn to_weights(
        &self,
        poset: &Poset,
        ideals: &[Ideal],
        default_zero: bool,
        path: &str,
    ) -> Result<WeightVector, ParseError> {
        let mut by_mask: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (key, value) in &self.weights {
            let mut mask = 0u64;
            for label in key.split(',').filter(|l| !l.is_empty()) {
                let p = poset.index_of(label.trim()).ok_or_else(|| ParseError::UnknownKey {
                    path: path.to_string(),
                    key: key.clone(),
                })?;
                mask |= 1u64 << p;
            }
            if !ideals.iter().any(|j| j.bits() == mask) {
                return Err(ParseError::UnknownKey {
                    path: path.to_string(),
                    key: key.clone(),
                });
            }
            let v = BigRational::from_str(value.trim()).map_err(|_| ParseError::BadRational {
                path: path.to_string(),
                key: key.clone(),
                value: value.clone(),
            })?;
            if by_mask.insert(mask, v).is_some() {
                return Err(ParseError::DuplicateKey {
                    path: path.to_string(),
                    key: key.clone(),
                });
            }
        }
        let values = ideals
            .iter()
            .map(|&j| match by_mask.get(&j.bits()) {
                Some(v) => Ok(v.clone()),
                None if default_zero => Ok(BigRational::from_integer(0.into())),
                None => Err(ParseError::MissingKey {
                    path: path.to_string(),
                    key: ideal_key(poset, j),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightVector::new(values))
    }
}

fn read(path: &Path) -> Result<String, ParseError> {
    fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Loads and validates a poset file, attaching the path to validation errors.
pub fn load_structure(path: &Path) -> Result<RelativeStructure, CliError> {
    let file = PosetFile::load(path)?;
    file.to_structure().map_err(|source| CliError::Validation {
        context: path.display().to_string(),
        source,
    })
}
