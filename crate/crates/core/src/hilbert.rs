//! Hilbert series of principal-class ideals and counted Hilbert functions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pdesystem::LinearSystem;
use crate::ratlinalg::Field;

/// Coefficients of a power series up to and including degree `truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSeries {
    pub coefficients: Vec<i64>,
    pub truncation: usize,
}

impl PowerSeries {
    pub fn new(coefficients: Vec<i64>) -> Self {
        assert!(!coefficients.is_empty(), "a truncated series has at least one coefficient");
        let truncation = coefficients.len() - 1;
        Self { coefficients, truncation }
    }

    pub fn sum(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    pub fn coefficient(&self, t: usize) -> i64 {
        self.coefficients.get(t).copied().unwrap_or(0)
    }

    fn mul(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        let mut c = vec![0i64; t + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(t + 1) {
            for (j, b) in other.coefficients.iter().enumerate().take(t + 1 - i) {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Π(1 − x^{lᵢ}) · (1 − x)^{−n}, truncated at degree `t`.
pub fn principal_class_series(degrees: &[usize], n: usize, t: usize) -> Result<PowerSeries> {
    if degrees.len() > n {
        return Err(Error::RankExceedsVariables { r: degrees.len(), n });
    }
    if degrees.contains(&0) {
        return Err(Error::ZeroDegree);
    }
    // (1 − x)^{-1} has all coefficients 1.
    let geometric = PowerSeries::new(vec![1; t + 1]);
    let mut s = PowerSeries::new({
        let mut c = vec![0; t + 1];
        c[0] = 1;
        c
    });
    for _ in 0..n {
        s = s.mul(&geometric);
    }
    for &l in degrees {
        let mut c = vec![0; t + 1];
        c[0] = 1;
        if l <= t {
            c[l] = -1;
        }
        s = s.mul(&PowerSeries::new(c));
    }
    Ok(s)
}

/// Number of parametric jets of each exact order 0..=t.
pub fn hilbert_function<F: Field>(sys: &LinearSystem<F>, t: usize) -> PowerSeries {
    let dims = sys.dimensions(t);
    let coefficients = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| d as i64 - if i == 0 { 0 } else { dims[i - 1] as i64 })
        .collect();
    PowerSeries::new(coefficients)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub equal: Vec<bool>,
    pub first_mismatch: Option<usize>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Degree-by-degree comparison; `counted` is taken as ground truth and
/// `predicted` as the claim.
pub fn compare(counted: &PowerSeries, predicted: &PowerSeries) -> Result<Comparison> {
    if counted.truncation != predicted.truncation {
        return Err(Error::TruncationMismatch(counted.truncation, predicted.truncation));
    }
    let equal: Vec<bool> = counted.coefficients.iter().zip(&predicted.coefficients).map(|(a, b)| a == b).collect();
    let first_mismatch = equal.iter().position(|e| !e);
    Ok(Comparison { equal, first_mismatch })
}
