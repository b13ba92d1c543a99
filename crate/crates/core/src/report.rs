use serde::{Deserialize, Serialize};

use crate::musin::HValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    CoxeterBoroczky,
    FejesToth,
    Levenshtein,
    Lp,
    Musin,
    Construction,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::Levenshtein => "levenshtein",
            Method::Lp => "lp",
            Method::FejesToth => "fejes-toth",
            Method::CoxeterBoroczky => "coxeter-boroczky",
            Method::Musin => "musin",
            Method::Construction => "construction",
        }
    }
}

/// A polynomial that passed the Delsarte conditions, in the serialized layout
/// `{"n", "s", "degree", "monomial_coeffs", "gegenbauer_coeffs", "bound", "rigorous"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialCertificate {
    pub n: usize,
    pub s: f64,
    pub degree: usize,
    pub monomial_coeffs: Vec<f64>,
    pub gegenbauer_coeffs: Vec<f64>,
    pub bound: f64,
    pub rigorous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Polynomial(PolynomialCertificate),
    Levenshtein {
        m: usize,
        interval: [f64; 2],
        /// Exact value as `numerator/denominator` when computed in rational mode.
        exact: Option<String>,
    },
    Quadrature {
        alpha: f64,
        numerator: f64,
        denominator: f64,
        central: f64,
        error_estimate: f64,
        clamped: bool,
    },
    FejesToth {
        min_distance: f64,
        cardinality: usize,
        distance_bound: f64,
    },
    Musin {
        t0: f64,
        mu: usize,
        f0: f64,
        h: Vec<HValue>,
        polynomial: Vec<f64>,
    },
    Construction {
        source: String,
        construction: String,
        code_length: usize,
        code_size: usize,
        min_distance: usize,
    },
    ExplicitCode {
        source: String,
        size: usize,
        max_inner_product: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub s: f64,
    pub method: Method,
    pub value: f64,
    pub floor_value: Option<u64>,
    pub rigorous: bool,
    pub certificate: Certificate,
}

/// `floor(value)` with a relative guard of 1e-9 so that a float result
/// sitting a few ulps under an integer is not floored past it. The guard can
/// only raise an upper bound, never lower it.
pub fn cardinality_floor(value: f64) -> u64 {
    if !value.is_finite() || value < 0.0 {
        return 0;
    }
    (value + 1e-9 * value.max(1.0)).floor() as u64
}

impl BoundReport {
    pub fn cardinality(
        n: usize,
        s: f64,
        method: Method,
        value: f64,
        rigorous: bool,
        certificate: Certificate,
    ) -> Self {
        Self {
            n,
            s,
            method,
            value,
            floor_value: Some(cardinality_floor(value)),
            rigorous,
            certificate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_guard() {
        assert_eq!(cardinality_floor(239.99999999999997), 240);
        assert_eq!(cardinality_floor(13.285), 13);
        assert_eq!(cardinality_floor(46.99), 46);
        assert_eq!(cardinality_floor(f64::NAN), 0);
    }
}
