//! Shared pieces of JSON reports.

use crate::ratlin::{Matrix, Rational};

pub const SCHEMA_VERSION: u32 = 1;

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Rows of a matrix as rational strings (`"-3/2"`).
pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rational_strings(m.row(i))).collect()
}
