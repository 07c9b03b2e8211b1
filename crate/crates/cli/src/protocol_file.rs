//! JSON description of a purification protocol.
//!
//! ```json
//! { "schemaVersion": 1, "dimProof": 2, "dimToken": 2,
//!   "chi0": [[1, 0], [0, 0], [0, 0], [0, 0]],
//!   "chi1": [[0, 0], [0, 0], [1, 0], [0, 0]] }
//! ```
//!
//! Amplitude `proof * dimToken + token` is stored as `[re, im]`.

use std::path::Path;

use qbc_core::linalg::{BipartiteState, Complex64, PureState};
use qbc_core::protocol::{make_protocol, PurificationProtocol};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::CliError;
use crate::output::Num;

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProtocolSpecFile {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub dim_proof: usize,
    pub dim_token: usize,
    #[serde(serialize_with = "amplitudes")]
    pub chi0: Vec<[f64; 2]>,
    #[serde(serialize_with = "amplitudes")]
    pub chi1: Vec<[f64; 2]>,
}

fn amplitudes<S: Serializer>(v: &[[f64; 2]], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|[re, im]| [Num(*re), Num(*im)]))
}

fn pairs(state: &PureState) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|z| [z.re, z.im]).collect()
}

impl ProtocolSpecFile {
    pub fn from_protocol(p: &PurificationProtocol) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            dim_proof: p.dim_proof(),
            dim_token: p.dim_token(),
            chi0: pairs(p.chi0().state()),
            chi1: pairs(p.chi1().state()),
        }
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse(&text, path)
    }

    pub fn to_json(&self) -> String {
        crate::output::to_json(self)
    }

    /// Validates every invariant; the error names the first one violated.
    pub fn to_protocol(&self) -> Result<PurificationProtocol, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Usage(format!(
                "SchemaVersion: expected {SCHEMA_VERSION}, got {}",
                self.schema_version
            )));
        }
        let n = self.dim_proof * self.dim_token;
        let state = |amps: &[[f64; 2]]| -> Result<BipartiteState, CliError> {
            if amps.len() != n || n == 0 {
                return Err(qbc_core::Error::DimMismatch {
                    expected: n,
                    found: amps.len(),
                }
                .into());
            }
            let v = amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            Ok(BipartiteState::new(self.dim_proof, self.dim_token, PureState::new(v)?)?)
        };
        Ok(make_protocol(state(&self.chi0)?, state(&self.chi1)?)?)
    }
}
