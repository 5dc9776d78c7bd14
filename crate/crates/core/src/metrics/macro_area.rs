use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MetricsError, ReachRow};
use crate::num::Scalar;

/// Subject category -> macro-area. An SC belongs to exactly one area.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MacroAreaMap {
    map: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct MacroRow {
    subject_category: String,
    macro_area: String,
}

impl MacroAreaMap {
    pub fn from_pairs<I, S, T>(pairs: I) -> Result<MacroAreaMap, MetricsError>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (sc, area) in pairs {
            let (sc, area) = (sc.into(), area.into());
            if let Some(prev) = map.get(&sc) {
                if *prev != area {
                    return Err(MetricsError::ConflictingMacroArea {
                        sc,
                        first: prev.clone(),
                        second: area,
                    });
                }
            }
            map.insert(sc, area);
        }
        Ok(MacroAreaMap { map })
    }

    /// CSV with header `subject_category,macro_area`.
    pub fn load_csv(path: &Path) -> Result<MacroAreaMap, MetricsError> {
        let file_err = |message: String| MetricsError::MacroMapFile {
            path: path.display().to_string(),
            message,
        };
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_path(path)
            .map_err(|e| file_err(e.to_string()))?;
        let rows = reader
            .deserialize::<MacroRow>()
            .map(|r| r.map(|r| (r.subject_category, r.macro_area)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| file_err(e.to_string()))?;
        MacroAreaMap::from_pairs(rows)
    }

    pub fn area_of(&self, sc: &str) -> Option<&str> {
        self.map.get(sc).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReachMeasure {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaRange<F> {
    pub area: String,
    pub subject_categories: usize,
    pub min: F,
    pub max: F,
    pub mean: F,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MacroAreaRanges<F> {
    pub measure: ReachMeasure,
    pub areas: Vec<AreaRange<F>>,
    /// Mean over all SCs (not over area means).
    pub global_mean: F,
}

/// Per macro-area min, max and mean of SC reach.
pub fn macro_area_ranges<F: Scalar>(
    rows: &[ReachRow<F>],
    map: &MacroAreaMap,
    measure: ReachMeasure,
) -> Result<MacroAreaRanges<F>, MetricsError> {
    let unmapped: Vec<String> = rows
        .iter()
        .filter(|r| map.area_of(&r.sc).is_none())
        .map(|r| r.sc.clone())
        .collect();
    if !unmapped.is_empty() {
        return Err(MetricsError::UnmappedSubjectCategories(unmapped));
    }
    let mut by_area: BTreeMap<&str, Vec<F>> = BTreeMap::new();
    let mut all = Vec::with_capacity(rows.len());
    for r in rows {
        let v = match measure {
            ReachMeasure::Exact => F::from_usize_lossy(r.exact_reach),
            ReachMeasure::Sampled => r
                .sampled_mean_reach
                .ok_or_else(|| MetricsError::MissingSampledReach(r.sc.clone()))?,
        };
        by_area
            .entry(map.area_of(&r.sc).unwrap())
            .or_default()
            .push(v);
        all.push(v);
    }
    let mean = |v: &[F]| v.iter().fold(F::zero(), |a, &b| a + b) / F::from_usize_lossy(v.len());
    let areas = by_area
        .into_iter()
        .map(|(area, v)| AreaRange {
            area: area.to_owned(),
            subject_categories: v.len(),
            min: v.iter().copied().fold(F::infinity(), F::min),
            max: v.iter().copied().fold(F::neg_infinity(), F::max),
            mean: mean(&v),
        })
        .collect();
    Ok(MacroAreaRanges {
        measure,
        areas,
        global_mean: if all.is_empty() {
            F::zero()
        } else {
            mean(&all)
        },
    })
}
