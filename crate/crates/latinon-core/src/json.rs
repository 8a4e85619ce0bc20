//! The `.latinon.json` document format: partition lengths plus the nested
//! alpha tensor.

use serde::{Deserialize, Serialize};

use crate::{
    validate_latinon, IntervalPartition, LatinonError, SemiLatinon, StepLatinon, Tensor3,
};

#[derive(Serialize, Deserialize)]
struct Document {
    row_parts: Vec<f64>,
    col_parts: Vec<f64>,
    value_parts: Vec<f64>,
    alpha: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed latinon document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Latinon(#[from] LatinonError),
}

/// Serializes a semilatinon (or, via [`StepLatinon::as_semi`], a Latinon) to
/// the document format. Reading the output back reproduces it exactly.
pub fn to_json(w: &SemiLatinon) -> String {
    let alpha = w.alpha();
    let nested: Vec<Vec<Vec<f64>>> = (0..alpha.rows())
        .map(|i| (0..alpha.cols()).map(|j| alpha.slice(i, j).to_vec()).collect())
        .collect();
    let doc = Document {
        row_parts: w.rows().lengths(),
        col_parts: w.cols().lengths(),
        value_parts: w.values().lengths(),
        alpha: nested,
    };
    serde_json::to_string_pretty(&doc).expect("documents of plain floats serialize")
}

/// Parses a document and checks the semilatinon invariants only.
pub fn semilatinon_from_json(text: &str) -> Result<SemiLatinon, JsonError> {
    let doc: Document = serde_json::from_str(text)?;
    let rows = IntervalPartition::from_lengths(&doc.row_parts)?;
    let cols = IntervalPartition::from_lengths(&doc.col_parts)?;
    let values = IntervalPartition::from_lengths(&doc.value_parts)?;
    let mut alpha = Tensor3::zeros(rows.cells(), cols.cells(), values.cells())?;
    let shape_err = || LatinonError::DimensionMismatch {
        want: format!("{}x{}x{}", rows.cells(), cols.cells(), values.cells()),
        got: "a ragged alpha array".into(),
    };
    if doc.alpha.len() != rows.cells() {
        return Err(shape_err().into());
    }
    for (i, row) in doc.alpha.iter().enumerate() {
        if row.len() != cols.cells() {
            return Err(shape_err().into());
        }
        for (j, dist) in row.iter().enumerate() {
            if dist.len() != values.cells() {
                return Err(shape_err().into());
            }
            for (k, &mass) in dist.iter().enumerate() {
                alpha.set(i, j, k, mass);
            }
        }
    }
    Ok(SemiLatinon::new(rows, cols, values, alpha)?)
}

/// Parses a document and runs full Latinon validation.
pub fn latinon_from_json(text: &str) -> Result<StepLatinon, JsonError> {
    Ok(validate_latinon(semilatinon_from_json(text)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_latinon;

    #[test]
    fn write_read_write_is_identity() {
        let w = random_latinon(3, 4, 7);
        let text = to_json(w.as_semi());
        let back = latinon_from_json(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(to_json(back.as_semi()), text);
    }

    #[test]
    fn semilatinons_are_admitted_without_validation() {
        // One row cell, two column cells, mass pinned per column: a
        // semilatinon whose column marginals fail.
        let text = r#"{
            "row_parts": [1.0],
            "col_parts": [0.5, 0.5],
            "value_parts": [0.5, 0.5],
            "alpha": [[[1.0, 0.0], [0.0, 1.0]]]
        }"#;
        assert!(semilatinon_from_json(text).is_ok());
        let err = latinon_from_json(text).unwrap_err();
        assert!(matches!(
            err,
            JsonError::Latinon(LatinonError::ColMarginalViolation { j: 0, k: 0, .. })
        ));
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        assert!(matches!(
            latinon_from_json("{\"row_parts\": [1.0]"),
            Err(JsonError::Parse(_))
        ));
    }

    #[test]
    fn ragged_alpha_is_a_shape_error() {
        let text = r#"{
            "row_parts": [0.5, 0.5],
            "col_parts": [1.0],
            "value_parts": [1.0],
            "alpha": [[[1.0]]]
        }"#;
        assert!(matches!(
            semilatinon_from_json(text),
            Err(JsonError::Latinon(LatinonError::DimensionMismatch { .. }))
        ));
    }
}
