//! JSON covariance-matrix documents.
//!
//! ```json
//! {"n_modes": 2, "ordering": "xp-interleaved",
//!  "matrix": [[0.5, 0, 0, 0], [0, 0.5, 0, 0], [0, 0, 0.5, 0], [0, 0, 0, 0.5]],
//!  "partition": {"A": [0], "B": [1]}}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{CovarianceMatrix, ModePartition};
use crate::symplectic::Matrix;

pub const ORDERING: &str = "xp-interleaved";

/// Largest tolerated `|M_ij − M_ji|` in an input document.
pub const MAX_ASYMMETRY: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceDocument {
    pub n_modes: usize,
    pub ordering: String,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<ModePartition>,
}

impl CovarianceDocument {
    pub fn new(v: &CovarianceMatrix, partition: Option<&ModePartition>) -> Self {
        CovarianceDocument {
            n_modes: v.n_modes(),
            ordering: ORDERING.to_string(),
            matrix: v.matrix().rows(),
            partition: partition.cloned(),
        }
    }

    /// Checks the document and builds the state it describes.
    pub fn into_state(self) -> Result<(CovarianceMatrix, Option<ModePartition>)> {
        if self.ordering != ORDERING {
            return Err(Error::Document(format!(
                "unsupported ordering {:?}, expected {ORDERING:?}",
                self.ordering
            )));
        }
        if self.n_modes == 0 || self.matrix.len() != 2 * self.n_modes {
            return Err(Error::Document(format!(
                "n_modes = {} needs a {}x{} matrix, got {} rows",
                self.n_modes,
                2 * self.n_modes,
                2 * self.n_modes,
                self.matrix.len()
            )));
        }
        let raw = Matrix::from_rows(&self.matrix)?;
        let max_asymmetry = raw.max_asymmetry();
        if max_asymmetry > MAX_ASYMMETRY {
            return Err(Error::Asymmetric { max_asymmetry });
        }
        let v = CovarianceMatrix::new(crate::symplectic::SymMatrix::new(raw)?);
        let partition = match self.partition {
            Some(p) => Some(ModePartition::new(
                p.modes_a().to_vec(),
                p.modes_b().to_vec(),
                self.n_modes,
            )?),
            None => None,
        };
        Ok((v, partition))
    }
}

pub fn parse(json: &str) -> Result<(CovarianceMatrix, Option<ModePartition>)> {
    let doc: CovarianceDocument =
        serde_json::from_str(json).map_err(|e| Error::Document(e.to_string()))?;
    doc.into_state()
}

pub fn to_json(v: &CovarianceMatrix, partition: Option<&ModePartition>) -> String {
    serde_json::to_string_pretty(&CovarianceDocument::new(v, partition))
        .expect("covariance documents always serialize")
}
