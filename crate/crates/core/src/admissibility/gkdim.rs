use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact GKdim of `V_j ⊕ V_X` for T3 connections, keyed by row id,
/// optionally refined by the ghost as `T3-1:G=2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Contributions {
    pub values: BTreeMap<String, u64>,
}

impl Contributions {
    pub fn parse(text: &str, file: &str) -> Result<Contributions> {
        let err = |reason: String| Error::Data {
            file: file.into(),
            reason,
        };
        let table: toml::Table = toml::from_str(text).map_err(|e| err(e.to_string()))?;
        let mut values = BTreeMap::new();
        for (k, v) in table {
            let n = v
                .as_integer()
                .ok_or_else(|| err(format!("`{k}`: expected an integer")))?;
            if n < 3 {
                return Err(err(format!("`{k}`: a T3 connection has GKdim at least 3, got {n}")));
            }
            let row = k.split(':').next().unwrap_or_default();
            if !row.starts_with("T3-") {
                return Err(err(format!("`{k}`: only T3 rows take contributions")));
            }
            values.insert(k, n as u64);
        }
        Ok(Contributions { values })
    }

    /// `GKdim 𝔅(V_j ⊕ V_X) - 2`, when known.
    pub fn contribution(&self, row: &str, ghost: &BigRational) -> Option<u64> {
        let refined = ghost.is_integer().then(|| format!("{row}:G={}", ghost.to_integer()));
        refined
            .and_then(|k| self.values.get(&k))
            .or_else(|| self.values.get(row))
            .map(|v| v - 2)
    }
}
