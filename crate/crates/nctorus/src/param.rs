//! Parameter files: `{ "g": 2, "N": 3, "M": [[0, 1], [0, 0]], "Q": [[[re, im], ...], ...] }`.

use std::path::Path;

use nctorus_core::cocycle::BilinearCocycle;
use nctorus_core::qweyl::PeriodMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub g: usize,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "M")]
    pub m: Vec<Vec<i64>>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<[f64; 2]>>>,
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let p: ParamFile = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        ParamFile::parse(&text).map_err(|e| match e {
            CliError::Usage(msg) => CliError::Usage(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.m.len() != self.g || self.m.iter().any(|r| r.len() != self.g) {
            return Err(CliError::Usage(format!("M must be a {0}x{0} matrix", self.g)));
        }
        self.cocycle()?;
        self.period_matrix()?;
        Ok(())
    }

    pub fn cocycle(&self) -> Result<BilinearCocycle, CliError> {
        BilinearCocycle::new(self.n, self.m.clone()).map_err(|e| CliError::Usage(format!("invalid cocycle: {e}")))
    }

    /// `Q`, or the all-ones period matrix when absent.
    pub fn period_matrix(&self) -> Result<PeriodMatrix, CliError> {
        match &self.q {
            None => Ok(PeriodMatrix::ones(self.g)),
            Some(rows) => {
                if rows.len() != self.g || rows.iter().any(|r| r.len() != self.g) {
                    return Err(CliError::Usage(format!("Q must be a {0}x{0} matrix", self.g)));
                }
                let q = rows
                    .iter()
                    .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
                    .collect();
                PeriodMatrix::new(q).map_err(|e| CliError::Usage(format!("invalid Q: {e}")))
            }
        }
    }

    pub fn has_period_matrix(&self) -> bool {
        self.q.is_some()
    }
}
