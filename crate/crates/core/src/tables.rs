//! Best known kissing-number bounds for dimensions 3 to 24 (as of July
//! 2012) and a comparison of computed bounds against them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{BoundReport, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    ConwaySloane,
    EricsonZinoviev,
    Musin,
    Levenshtein,
    MittelmannVallentin,
}

impl Source {
    pub fn tag(&self) -> &'static str {
        match self {
            Source::ConwaySloane => "conway-sloane",
            Source::EricsonZinoviev => "ericson-zinoviev",
            Source::Musin => "musin",
            Source::Levenshtein => "levenshtein",
            Source::MittelmannVallentin => "mittelmann-vallentin",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub dimension: usize,
    pub lower: u64,
    pub upper: u64,
    pub lower_source: Source,
    pub upper_source: Source,
}

/// A bound quoted alongside the table without replacing a row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub dimension: usize,
    pub upper: f64,
    pub source: Source,
}

/// The semidefinite-programming value behind `tau_5 <= 44`; the table row
/// itself prints 45.
pub const TAU5_ANNOTATION: Annotation = Annotation {
    dimension: 5,
    upper: 44.998,
    source: Source::MittelmannVallentin,
};

const fn row(dimension: usize, lower: u64, upper: u64) -> TableRow {
    let lower_source = match dimension {
        13 | 14 => Source::EricsonZinoviev,
        _ => Source::ConwaySloane,
    };
    let upper_source = match dimension {
        3 | 4 => Source::Musin,
        8 | 24 => Source::Levenshtein,
        _ => Source::MittelmannVallentin,
    };
    TableRow {
        dimension,
        lower,
        upper,
        lower_source,
        upper_source,
    }
}

static KNOWN: [TableRow; 22] = [
    row(3, 12, 12),
    row(4, 24, 24),
    row(5, 40, 45),
    row(6, 72, 78),
    row(7, 126, 134),
    row(8, 240, 240),
    row(9, 306, 364),
    row(10, 500, 554),
    row(11, 582, 870),
    row(12, 840, 1357),
    row(13, 1154, 2069),
    row(14, 1606, 3183),
    row(15, 2564, 4866),
    row(16, 4320, 7355),
    row(17, 5346, 11072),
    row(18, 7398, 16572),
    row(19, 10668, 24812),
    row(20, 17400, 36764),
    row(21, 27720, 54584),
    row(22, 49896, 82340),
    row(23, 93150, 124416),
    row(24, 196560, 196560),
];

pub fn known_table() -> &'static [TableRow] {
    &KNOWN
}

pub fn known_row(n: usize) -> Result<&'static TableRow> {
    KNOWN
        .iter()
        .find(|r| r.dimension == n)
        .ok_or_else(|| Error::PreconditionViolated(format!("no table row for dimension {n}")))
}

/// `dimension,lower,upper` with one line per row.
pub fn table_csv() -> String {
    let mut out = String::from("dimension,lower,upper\n");
    for r in &KNOWN {
        out.push_str(&format!("{},{},{}\n", r.dimension, r.lower, r.upper));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reconciliation {
    pub dimension: usize,
    pub known: TableRow,
    /// Smallest floored rigorous upper bound and the method that gave it.
    pub computed_upper: Option<u64>,
    pub upper_method: Option<Method>,
    /// Largest certified configuration size.
    pub computed_lower: Option<u64>,
    /// `computed_upper - known.upper`; positive means weaker than the record.
    pub upper_delta: Option<i64>,
    /// `known.lower - computed_lower`; positive means weaker than the record.
    pub lower_delta: Option<i64>,
}

/// Compares reports for dimension `n` at `s = 1/2` (lower-bound reports may
/// have any `s <= 1/2`) with the table. Reports
/// with method `construction` are lower bounds, everything else upper
/// bounds; non-rigorous upper bounds are ignored. A rigorous upper bound
/// below the known lower bound, or a certified configuration above the
/// known upper bound, is a soundness violation.
pub fn reconcile(n: usize, reports: &[BoundReport]) -> Result<Reconciliation> {
    let known = *known_row(n)?;
    let mut upper: Option<(u64, Method)> = None;
    let mut lower: Option<u64> = None;
    for r in reports {
        // A configuration with smaller inner products is still a kissing
        // configuration.
        let s_ok = if r.method == Method::Construction {
            r.s <= 0.5 + 1e-9
        } else {
            (r.s - 0.5).abs() <= 1e-9
        };
        if r.n != n || !s_ok {
            return Err(Error::PreconditionViolated(format!(
                "report for n = {}, s = {} in reconciliation of n = {n}, s = 1/2",
                r.n, r.s
            )));
        }
        let Some(v) = r.floor_value else { continue };
        if r.method == Method::Construction {
            if v > known.upper {
                return Err(Error::SoundnessViolation {
                    n,
                    upper: known.upper,
                    known_lower: v,
                });
            }
            lower = Some(lower.map_or(v, |l| l.max(v)));
        } else if r.rigorous {
            if v < known.lower {
                return Err(Error::SoundnessViolation {
                    n,
                    upper: v,
                    known_lower: known.lower,
                });
            }
            if upper.is_none_or(|(u, _)| v < u) {
                upper = Some((v, r.method));
            }
        }
    }
    Ok(Reconciliation {
        dimension: n,
        known,
        computed_upper: upper.map(|u| u.0),
        upper_method: upper.map(|u| u.1),
        computed_lower: lower,
        upper_delta: upper.map(|(u, _)| u as i64 - known.upper as i64),
        lower_delta: lower.map(|l| known.lower as i64 - l as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Certificate;

    fn rep(n: usize, method: Method, value: f64, rigorous: bool) -> BoundReport {
        BoundReport::cardinality(
            n,
            0.5,
            method,
            value,
            rigorous,
            Certificate::Levenshtein {
                m: 0,
                interval: [0.0, 0.0],
                exact: None,
            },
        )
    }

    #[test]
    fn rows_as_printed() {
        let t = known_table();
        assert_eq!(t.len(), 22);
        let get = |n| known_row(n).map(|r| (r.lower, r.upper)).unwrap();
        assert_eq!(get(12), (840, 1357));
        assert_eq!(get(5), (40, 45));
        assert_eq!(get(24), (196560, 196560));
        assert!(t.iter().all(|r| 0 < r.lower && r.lower <= r.upper));
        assert_eq!(known_row(13).unwrap().lower_source, Source::EricsonZinoviev);
        assert_eq!(TAU5_ANNOTATION.upper.floor() as u64, 44);
    }

    #[test]
    fn serde_round_trip() {
        let json = serde_json::to_string(known_table()).unwrap();
        let back: Vec<TableRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, known_table());
    }

    #[test]
    fn reconcile_deltas_and_violations() {
        let r = reconcile(
            5,
            &[
                rep(5, Method::Lp, 46.345, true),
                rep(5, Method::Construction, 40.0, true),
            ],
        )
        .unwrap();
        assert_eq!((r.upper_delta, r.lower_delta), (Some(1), Some(0)));
        // non-rigorous values do not count
        let r = reconcile(3, &[rep(3, Method::Musin, 11.0, false)]).unwrap();
        assert_eq!(r.computed_upper, None);
        assert!(matches!(
            reconcile(3, &[rep(3, Method::Lp, 11.5, true)]),
            Err(Error::SoundnessViolation {
                n: 3,
                upper: 11,
                known_lower: 12
            })
        ));
        assert!(matches!(
            reconcile(3, &[rep(3, Method::Construction, 13.0, true)]),
            Err(Error::SoundnessViolation { .. })
        ));
        assert!(reconcile(4, &[rep(3, Method::Lp, 13.0, true)]).is_err());
    }
}
