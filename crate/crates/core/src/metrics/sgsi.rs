//! Scientific Gain Specialization Index.
//!
//! For country `k` and subject category `j` with SC-level gains `G`:
//!
//! ```text
//! x        = (G[k][j] / sum_j G[k][j]) / (sum_k G[k][j] / sum_k sum_j G[k][j])
//! SGSI[kj] = 100 * tanh(ln x)
//! ```
//!
//! `tanh(ln x)` is evaluated in its algebraic form `(x^2 - 1) / (x^2 + 1)`.
//! Conventions at the edges: `G[k][j] = 0` with positive margins gives the
//! limit -100; a zero row or column margin leaves the value undefined.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::attribution::GainLedger;
use crate::num::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SgsiConfig<F> {
    /// Additive smoothing applied to every (country, SC) cell.
    pub smoothing: Option<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SgsiMatrix<F> {
    /// (country, SC) -> value; `None` is undefined.
    pub values: BTreeMap<(String, String), Option<F>>,
    pub config: SgsiConfig<F>,
}

impl<F: Scalar> SgsiMatrix<F> {
    pub fn get(&self, country: &str, sc: &str) -> Option<F> {
        self.values
            .get(&(country.to_owned(), sc.to_owned()))
            .copied()
            .flatten()
    }

    /// Defined values for one country, highest first (ties by SC code).
    pub fn ranked_for(&self, country: &str) -> Vec<(&str, F)> {
        let mut v: Vec<(&str, F)> = self
            .values
            .iter()
            .filter(|((c, _), _)| c == country)
            .filter_map(|((_, sc), val)| val.map(|x| (sc.as_str(), x)))
            .collect();
        v.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(b.0)));
        v
    }
}

/// SGSI from the four raw quantities: the cell, the country's row total,
/// the SC's column total and the grand total.
pub fn sgsi_from_counts<F: Scalar>(cell: F, row: F, col: F, total: F) -> Option<F> {
    if row <= F::zero() || col <= F::zero() || total <= F::zero() {
        return None;
    }
    let x = (cell / row) / (col / total);
    let t = if x <= F::one() {
        let x2 = x * x;
        (x2 - F::one()) / (x2 + F::one())
    } else {
        let y2 = (F::one() / x) * (F::one() / x);
        (F::one() - y2) / (F::one() + y2)
    };
    Some(F::hundred() * t)
}

struct Margins<F> {
    rows: BTreeMap<String, F>,
    cols: BTreeMap<String, F>,
    total: F,
    eps: F,
}

fn margins<F: Scalar>(ledger: &GainLedger, cfg: &SgsiConfig<F>) -> Margins<F> {
    let eps = cfg.smoothing.unwrap_or_else(F::zero);
    let countries = ledger.countries();
    let n_c = F::from_usize_lossy(countries.len());
    let n_sc = F::from_usize_lossy(ledger.sc_benefits.len());
    let mut rows: BTreeMap<String, F> = countries
        .iter()
        .map(|c| (c.to_string(), eps * n_sc))
        .collect();
    let mut cols = BTreeMap::new();
    let mut total = eps * n_sc * n_c;
    for sc in ledger.sc_benefits.keys() {
        let mut col = eps * n_c;
        if let Some(tally) = ledger.sc_gains.get(sc) {
            for (country, &g) in tally {
                let g = F::from_count(g);
                col = col + g;
                total = total + g;
                if let Some(r) = rows.get_mut(country) {
                    *r = *r + g;
                }
            }
        }
        cols.insert(sc.clone(), col);
    }
    Margins {
        rows,
        cols,
        total,
        eps,
    }
}

pub fn sgsi_with<F: Scalar>(
    ledger: &GainLedger,
    country: &str,
    sc: &str,
    cfg: &SgsiConfig<F>,
) -> Option<F> {
    let m = margins(ledger, cfg);
    let row = *m.rows.get(country)?;
    let col = *m.cols.get(sc)?;
    let cell = F::from_count(ledger.sc_gain(sc, country)) + m.eps;
    sgsi_from_counts(cell, row, col, m.total)
}

/// SGSI for one cell without smoothing.
pub fn sgsi<F: Scalar>(ledger: &GainLedger, country: &str, sc: &str) -> Option<F> {
    sgsi_with(ledger, country, sc, &SgsiConfig::default())
}

/// SGSI over every country with gains and every SC with benefits.
pub fn sgsi_matrix_with<F: Scalar>(ledger: &GainLedger, cfg: &SgsiConfig<F>) -> SgsiMatrix<F> {
    let m = margins(ledger, cfg);
    let mut values = BTreeMap::new();
    for (country, &row) in &m.rows {
        for (sc, &col) in &m.cols {
            let cell = F::from_count(ledger.sc_gain(sc, country)) + m.eps;
            values.insert(
                (country.clone(), sc.clone()),
                sgsi_from_counts(cell, row, col, m.total),
            );
        }
    }
    SgsiMatrix {
        values,
        config: *cfg,
    }
}

pub fn sgsi_matrix<F: Scalar>(ledger: &GainLedger) -> SgsiMatrix<F> {
    sgsi_matrix_with(ledger, &SgsiConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ledger(cells: &[(&str, &str, u64)]) -> GainLedger {
        let mut l = GainLedger::default();
        for &(country, sc, g) in cells {
            l.sc_benefits.entry(sc.to_string()).or_insert(0);
            if g > 0 {
                l.sc_gains
                    .entry(sc.to_string())
                    .or_default()
                    .insert(country.to_string(), g);
            }
        }
        l
    }

    /// Direct transcription with the transcendental functions.
    fn oracle(cell: f64, row: f64, col: f64, total: f64) -> f64 {
        100.0 * ((cell / row) / (col / total)).ln().tanh()
    }

    #[test]
    fn ratio_two_gives_sixty() {
        let v: f64 = sgsi_from_counts(8.0, 10.0, 16.0, 40.0).unwrap();
        assert!((v - 60.0).abs() < 1e-9, "{v}");
        assert!((oracle(8.0, 10.0, 16.0, 40.0) - 60.0).abs() < 1e-9);
    }

    #[test]
    fn ratio_one_gives_zero_and_empty_cell_gives_floor() {
        assert_eq!(sgsi_from_counts(4.0, 10.0, 16.0, 40.0), Some(0.0));
        assert_eq!(sgsi_from_counts(0.0, 10.0, 16.0, 40.0), Some(-100.0));
        assert_eq!(sgsi_from_counts::<f64>(0.0, 0.0, 16.0, 40.0), None);
        assert_eq!(sgsi_from_counts::<f64>(0.0, 10.0, 0.0, 40.0), None);
    }

    #[test]
    fn antisymmetric_two_by_two() {
        let l = ledger(&[
            ("K1", "A", 2),
            ("K1", "B", 1),
            ("K2", "A", 1),
            ("K2", "B", 2),
        ]);
        let m = sgsi_matrix::<f64>(&l);
        let (a1, b1, a2, b2) = (
            m.get("K1", "A").unwrap(),
            m.get("K1", "B").unwrap(),
            m.get("K2", "A").unwrap(),
            m.get("K2", "B").unwrap(),
        );
        assert_eq!(a1, b2);
        assert_eq!(b1, a2);
        // x = (1/3)/(3/6) = 2/3 -> (4/9 - 1)/(4/9 + 1) = -5/13
        assert!((b1 + 500.0 / 13.0).abs() < 1e-9);
        // x = (2/3)/(3/6) = 4/3 -> (16/9 - 1)/(16/9 + 1) = 7/25
        assert!((a1 - 28.0).abs() < 1e-9);
    }

    #[test]
    fn uniform_and_single_country_worlds_are_zero() {
        let l = ledger(&[
            ("K1", "A", 5),
            ("K1", "B", 5),
            ("K2", "A", 5),
            ("K2", "B", 5),
        ]);
        assert!(sgsi_matrix::<f64>(&l)
            .values
            .values()
            .all(|v| *v == Some(0.0)));
        let l = ledger(&[("K1", "A", 3), ("K1", "B", 9), ("K1", "C", 1)]);
        assert!(sgsi_matrix::<f64>(&l)
            .values
            .values()
            .all(|v| *v == Some(0.0)));
    }

    #[test]
    fn edge_conventions_in_matrix() {
        // SC "Z" has benefits but nobody gained from it.
        let l = ledger(&[("K1", "A", 3), ("K2", "B", 4), ("K1", "Z", 0)]);
        let m = sgsi_matrix::<f64>(&l);
        assert_eq!(m.get("K1", "B"), Some(-100.0));
        assert_eq!(m.values[&("K1".to_string(), "Z".to_string())], None);
        assert_eq!(sgsi::<f64>(&l, "nobody", "A"), None);
        assert_eq!(sgsi::<f64>(&GainLedger::default(), "K1", "A"), None);
    }

    #[test]
    fn smoothing_pulls_towards_zero() {
        let l = ledger(&[("K1", "A", 3), ("K2", "B", 4)]);
        let cfg = SgsiConfig {
            smoothing: Some(0.5),
        };
        let smoothed = sgsi_with::<f64>(&l, "K1", "B", &cfg).unwrap();
        assert!(smoothed > -100.0 && smoothed < 0.0);
        // cell 0.5, row 4, col 5, total 9
        assert!((smoothed - oracle(0.5, 4.0, 5.0, 9.0)).abs() < 1e-9);
    }

    #[test]
    fn f32_matches_f64() {
        let a: f32 = sgsi_from_counts(8.0, 10.0, 16.0, 40.0).unwrap();
        assert!((a - 60.0).abs() < 1e-4);
    }

    #[test]
    fn adding_a_gain_can_lower_the_index() {
        // K1 is the only country in A, so x = T / R; raising the cell
        // raises both and x falls.
        let before = ledger(&[("K1", "A", 10), ("K1", "B", 1), ("K2", "B", 100)]);
        let after = ledger(&[("K1", "A", 11), ("K1", "B", 1), ("K2", "B", 100)]);
        let (b, a) = (
            sgsi::<f64>(&before, "K1", "A").unwrap(),
            sgsi::<f64>(&after, "K1", "A").unwrap(),
        );
        assert!(a < b);
    }

    fn grid() -> impl Strategy<Value = Vec<Vec<u64>>> {
        (1usize..5, 1usize..6).prop_flat_map(|(nc, ns)| {
            prop::collection::vec(prop::collection::vec(0u64..50, ns), nc)
        })
    }

    fn ledger_from_grid(g: &[Vec<u64>], scale: u64) -> GainLedger {
        let mut cells = vec![];
        let names: Vec<(String, Vec<String>)> = g
            .iter()
            .enumerate()
            .map(|(k, row)| {
                (
                    format!("K{k}"),
                    (0..row.len()).map(|j| format!("S{j}")).collect(),
                )
            })
            .collect();
        for (k, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                cells.push((names[k].0.as_str(), names[k].1[j].as_str(), v * scale));
            }
        }
        ledger(&cells)
    }

    proptest! {
        #[test]
        fn bounded_and_matches_transcendental_form(g in grid()) {
            let l = ledger_from_grid(&g, 1);
            let m = sgsi_matrix::<f64>(&l);
            for ((k, j), v) in &m.values {
                if let Some(v) = v {
                    prop_assert!((-100.0..=100.0).contains(v));
                    let cell = l.sc_gain(j, k) as f64;
                    if cell > 0.0 {
                        let row: u64 = l.sc_gains.values().filter_map(|t| t.get(k)).sum();
                        let col: u64 = l.sc_gains[j].values().sum();
                        let total: u64 = l.sc_gains.values().flat_map(|t| t.values()).sum();
                        let o = oracle(cell, row as f64, col as f64, total as f64);
                        prop_assert!((v - o).abs() < 1e-9);
                        // zero exactly when the share ratio is exactly one
                        prop_assert_eq!(*v == 0.0, cell as u128 * total as u128 == row as u128 * col as u128);
                    }
                }
            }
        }

        #[test]
        fn strictly_increasing_in_share_ratio(
            (c1, r, col, t) in (1u64..100, 1u64..100, 1u64..100, 1u64..100),
            bump in 1u64..20,
        ) {
            // only the ratio matters: larger cell with the same margins
            let r = r.max(c1 + bump);
            let col = col.max(c1 + bump);
            let t = t.max(r + col);
            let lo: f64 = sgsi_from_counts(c1 as f64, r as f64, col as f64, t as f64).unwrap();
            let hi: f64 = sgsi_from_counts((c1 + bump) as f64, r as f64, col as f64, t as f64).unwrap();
            prop_assert!(hi > lo);
        }
    }
}
