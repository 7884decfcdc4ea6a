//! Report envelope shared by every CLI command, and the JSON writer that
//! pins floating-point values to 17 significant digits so serialized reports
//! parse back to bit-identical numbers.

use std::io;

use serde::{Deserialize, Serialize};

use crate::census::{CycleTerm, SensitivityCell, SensitivityTable, SignPattern, WeightedCycleSet};
use crate::matrix::DenseMatrix;
use crate::sigma::{OmegaSet, SigmaReport};
use crate::signature::{CensusResult, MatrixPolynomial, SignatureMode, SpectralSignature};
use crate::tol::Tolerances;

/// Echo of what the command consumed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputEcho {
    Matrix { matrix: DenseMatrix },
    Pattern { pattern: SignPattern },
    Args { args: String },
}

/// Result payload, one variant per subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Payload {
    Analyze {
        report: SigmaReport,
        omega: OmegaSet,
    },
    SigmaPoint {
        report: SigmaReport,
    },
    Table1 {
        plain: SensitivityTable,
        forced: SensitivityTable,
    },
    Cycles {
        coefficients: Vec<CycleReport>,
    },
    Signature {
        mode: SignatureMode,
        polynomial: MatrixPolynomial,
        signature: SpectralSignature,
    },
    Census {
        result: CensusResult,
    },
}

/// Term-level view of one coefficient of a pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub coefficient: usize,
    pub sensitivity: SensitivityCell,
    pub weights: WeightedCycleSet,
    /// Present when the forced decomposition was requested.
    pub by_sigma_power: Option<Vec<SigmaPowerGroup>>,
    pub terms: Vec<CycleTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaPowerGroup {
    pub power: usize,
    pub sensitivity: SensitivityCell,
    pub weights: WeightedCycleSet,
}

/// Envelope written by every command: tool identity, the tolerance record in
/// effect, the echoed input, the payload, and wall-clock timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub tolerances: Tolerances,
    pub input: InputEcho,
    pub payload: Payload,
    pub timing_ms: u64,
}

impl AnalysisReport {
    pub fn new(tolerances: Tolerances, input: InputEcho, payload: Payload, timing_ms: u64) -> Self {
        AnalysisReport {
            tool: "tipforge".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            tolerances,
            input,
            payload,
            timing_ms,
        }
    }
}

struct SeventeenDigitFormatter;

impl serde_json::ser::Formatter for SeventeenDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        // 17 significant digits round-trip every finite f64.
        write!(writer, "{:.16e}", value)
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{:.8e}", value)
    }
}

/// Serializes any value to JSON with every float carrying 17 significant
/// digits.
pub fn to_json(value: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SeventeenDigitFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization is infallible");
    String::from_utf8(out).expect("serialized JSON is UTF-8")
}
