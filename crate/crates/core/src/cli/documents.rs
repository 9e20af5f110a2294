//! JSON documents for states and channels. Complex entries are `[re, im]`
//! pairs; matrices are row-major nested arrays.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::output::Real;
use super::CliError;
use crate::linalg::ComplexMatrix;
use crate::quantum::{ChoiMatrix, DensityMatrix, QuantumChannel};

type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InputDocument {
    State {
        dim: usize,
        matrix: RawMatrix,
    },
    Channel {
        dim_in: usize,
        dim_out: usize,
        #[serde(default)]
        kraus: Option<Vec<RawMatrix>>,
        #[serde(default)]
        choi: Option<RawMatrix>,
    },
}

fn to_matrix(
    raw: &RawMatrix,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<ComplexMatrix, CliError> {
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return Err(CliError::Parse(format!("{what} must be {rows}x{cols}")));
    }
    let data = raw
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    Ok(ComplexMatrix::new(rows, cols, data)?)
}

fn parse(text: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_state(text: &str) -> Result<DensityMatrix, CliError> {
    match parse(text)? {
        InputDocument::State { dim, matrix } => Ok(DensityMatrix::new(to_matrix(
            &matrix,
            dim,
            dim,
            "state matrix",
        )?)?),
        InputDocument::Channel { .. } => Err(CliError::Parse(
            "expected a state document, found a channel".into(),
        )),
    }
}

pub fn parse_channel(text: &str) -> Result<QuantumChannel, CliError> {
    match parse(text)? {
        InputDocument::Channel {
            dim_in,
            dim_out,
            kraus,
            choi,
        } => match (kraus, choi) {
            (Some(kraus), None) => {
                if kraus.is_empty() {
                    return Err(CliError::Parse("kraus list is empty".into()));
                }
                let ops = kraus
                    .iter()
                    .map(|k| to_matrix(k, dim_out, dim_in, "Kraus operator"))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(QuantumChannel::new(dim_in, dim_out, ops)?)
            }
            (None, Some(choi)) => {
                let n = dim_in * dim_out;
                let c = ChoiMatrix::new(dim_in, dim_out, to_matrix(&choi, n, n, "Choi matrix")?)?;
                Ok(QuantumChannel::from_choi(&c)?)
            }
            _ => Err(CliError::Parse(
                "channel needs exactly one of \"kraus\" or \"choi\"".into(),
            )),
        },
        InputDocument::State { .. } => Err(CliError::Parse(
            "expected a channel document, found a state".into(),
        )),
    }
}

pub type MatrixOut = Vec<Vec<[Real; 2]>>;

pub fn matrix_out(m: &ComplexMatrix) -> MatrixOut {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|z| [Real(z.re), Real(z.im)]).collect())
        .collect()
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OutputDocument {
    State {
        dim: usize,
        matrix: MatrixOut,
    },
    Channel {
        dim_in: usize,
        dim_out: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        kraus: Option<Vec<MatrixOut>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        choi: Option<MatrixOut>,
    },
}

pub fn state_document(rho: &DensityMatrix) -> OutputDocument {
    OutputDocument::State {
        dim: rho.dim(),
        matrix: matrix_out(rho.matrix()),
    }
}

pub fn kraus_document(dim_in: usize, dim_out: usize, kraus: &[ComplexMatrix]) -> OutputDocument {
    OutputDocument::Channel {
        dim_in,
        dim_out,
        kraus: Some(kraus.iter().map(matrix_out).collect()),
        choi: None,
    }
}

pub fn channel_document(phi: &QuantumChannel) -> OutputDocument {
    kraus_document(phi.dim_in(), phi.dim_out(), phi.kraus())
}

pub fn choi_document(choi: &ChoiMatrix) -> OutputDocument {
    OutputDocument::Channel {
        dim_in: choi.dim_in(),
        dim_out: choi.dim_out(),
        kraus: None,
        choi: Some(matrix_out(choi.matrix())),
    }
}
