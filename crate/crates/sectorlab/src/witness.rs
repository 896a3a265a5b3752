//! Serializable instance payloads. A witness carries every input of one
//! inequality check (matrices, scalar parameters, catalog tokens), so any
//! outcome can be replayed or shrunk from its serialized form alone.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, MatrixJson};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, MatrixJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub scalars: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tokens: BTreeMap<String, String>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_matrix(mut self, name: &str, m: &ComplexMatrix) -> Self {
        self.set_matrix(name, m);
        self
    }

    pub fn with_scalar(mut self, name: &str, v: f64) -> Self {
        self.scalars.insert(name.into(), v);
        self
    }

    pub fn with_token(mut self, name: &str, t: &str) -> Self {
        self.tokens.insert(name.into(), t.into());
        self
    }

    pub fn set_matrix(&mut self, name: &str, m: &ComplexMatrix) {
        self.matrices.insert(name.into(), MatrixJson::from_matrix(m));
    }

    pub fn matrix(&self, name: &str) -> Result<ComplexMatrix> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::MissingWitnessField(name.into()))?
            .to_matrix()
    }

    pub fn scalar(&self, name: &str) -> Result<f64> {
        self.scalars
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingWitnessField(name.into()))
    }

    pub fn token(&self, name: &str) -> Result<&str> {
        self.tokens
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::MissingWitnessField(name.into()))
    }

    pub fn token_or(&self, name: &str, default: &str) -> String {
        self.tokens.get(name).cloned().unwrap_or_else(|| default.into())
    }
}
