//! Country normalization: merge rules and dated split events.
//!
//! Raw country strings are matched on a folded key (lowercase, trimmed,
//! inner whitespace collapsed, diacritics removed). Matching is exact on that
//! key; there is no fuzzy matching.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Built-in rules: China/Hong Kong/Macau, UK constituents and Gibraltar,
/// overseas territories of France, the Netherlands and New Zealand, and the
/// Yugoslavia / Serbia-Montenegro / {Serbia, Montenegro} history.
pub const DEFAULT_RULES_JSON: &str = include_str!("../data/georules.json");

/// Counts keyed by country code.
pub type CountryTally = BTreeMap<String, u64>;

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid georules: {0}")]
    Json(#[from] serde_json::Error),
    #[error("raw name {raw:?} maps to both {first:?} and {second:?}")]
    ConflictingMerge {
        raw: String,
        first: String,
        second: String,
    },
    #[error("merge target {target:?} is itself remapped to {other:?}")]
    ChainedMerge { target: String, other: String },
    #[error("split of {0:?} has no successors")]
    EmptySplit(String),
    #[error("split of {predecessor:?} lists successor {successor:?} twice")]
    DuplicateSuccessor {
        predecessor: String,
        successor: String,
    },
    #[error("{0:?} is both a split predecessor and a canonical country or successor")]
    PredecessorNotRetired(String),
    #[error("{0:?} is a successor in more than one split")]
    SuccessorInMultipleSplits(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEvent {
    pub predecessor: String,
    pub successors: Vec<String>,
    #[serde(rename = "year")]
    pub split_year: i32,
}

#[derive(Deserialize)]
struct RulesFile {
    #[serde(default)]
    canonical: Vec<String>,
    #[serde(default)]
    merges: BTreeMap<String, String>,
    #[serde(default)]
    splits: Vec<SplitEvent>,
}

/// How a raw name was resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Merged,
    Canonical,
    Predecessor,
    Unknown,
}

/// Folded matching key for a country string.
pub fn country_key(raw: &str) -> String {
    let folded: String = raw
        .nfd()
        .filter(|c| !is_combining_mark(*c))
        .collect::<String>()
        .to_lowercase();
    folded.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn collapse_ws(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone)]
pub struct GeoRuleSet {
    canonical: BTreeSet<String>,
    merges: HashMap<String, String>,
    known: HashMap<String, String>,
    splits: Vec<SplitEvent>,
    predecessor_of: HashMap<String, usize>,
}

impl Default for GeoRuleSet {
    fn default() -> Self {
        GeoRuleSet::from_json(DEFAULT_RULES_JSON).expect("built-in georules are valid")
    }
}

impl GeoRuleSet {
    /// A rule set with no merges or splits: every name is its own code.
    pub fn empty() -> GeoRuleSet {
        GeoRuleSet::new([], BTreeMap::new(), vec![]).expect("empty rules are valid")
    }

    pub fn new(
        canonical: impl IntoIterator<Item = String>,
        merges: BTreeMap<String, String>,
        mut splits: Vec<SplitEvent>,
    ) -> Result<GeoRuleSet, GeoError> {
        let mut predecessor_of = HashMap::new();
        for (i, s) in splits.iter_mut().enumerate() {
            if s.successors.is_empty() {
                return Err(GeoError::EmptySplit(s.predecessor.clone()));
            }
            s.successors.sort();
            if let Some(w) = s.successors.windows(2).find(|w| w[0] == w[1]) {
                return Err(GeoError::DuplicateSuccessor {
                    predecessor: s.predecessor.clone(),
                    successor: w[0].clone(),
                });
            }
            predecessor_of.insert(s.predecessor.clone(), i);
        }

        let mut canon: BTreeSet<String> = canonical.into_iter().collect();
        let mut successors = BTreeSet::new();
        for s in &splits {
            for succ in &s.successors {
                if !successors.insert(succ.clone()) {
                    return Err(GeoError::SuccessorInMultipleSplits(succ.clone()));
                }
            }
            canon.extend(s.successors.iter().cloned());
        }
        for target in merges.values() {
            if !predecessor_of.contains_key(target) {
                canon.insert(target.clone());
            }
        }
        if let Some(p) = predecessor_of.keys().find(|p| canon.contains(*p)) {
            return Err(GeoError::PredecessorNotRetired(p.clone()));
        }

        let mut merge_keys: HashMap<String, String> = HashMap::new();
        for (raw, target) in &merges {
            let key = country_key(raw);
            if let Some(prev) = merge_keys.get(&key) {
                if prev != target {
                    return Err(GeoError::ConflictingMerge {
                        raw: raw.clone(),
                        first: prev.clone(),
                        second: target.clone(),
                    });
                }
            }
            merge_keys.insert(key, target.clone());
        }
        for target in merges.values() {
            if let Some(other) = merge_keys.get(&country_key(target)) {
                if other != target {
                    return Err(GeoError::ChainedMerge {
                        target: target.clone(),
                        other: other.clone(),
                    });
                }
            }
        }

        let mut known = HashMap::new();
        for code in canon.iter().chain(predecessor_of.keys()) {
            known.insert(country_key(code), code.clone());
        }

        Ok(GeoRuleSet {
            canonical: canon,
            merges: merge_keys,
            known,
            splits,
            predecessor_of,
        })
    }

    pub fn from_json(text: &str) -> Result<GeoRuleSet, GeoError> {
        let file: RulesFile = serde_json::from_str(text)?;
        GeoRuleSet::new(file.canonical, file.merges, file.splits)
    }

    pub fn load(path: &Path) -> Result<GeoRuleSet, GeoError> {
        let text = std::fs::read_to_string(path).map_err(|source| GeoError::Io {
            path: path.display().to_string(),
            source,
        })?;
        GeoRuleSet::from_json(&text)
    }

    pub fn canonical(&self) -> &BTreeSet<String> {
        &self.canonical
    }

    pub fn splits(&self) -> &[SplitEvent] {
        &self.splits
    }

    pub fn split_of(&self, predecessor: &str) -> Option<&SplitEvent> {
        self.predecessor_of
            .get(predecessor)
            .map(|&i| &self.splits[i])
    }

    /// The split naming `code` as a successor, if any.
    pub fn split_with_successor(&self, code: &str) -> Option<&SplitEvent> {
        self.splits
            .iter()
            .find(|s| s.successors.iter().any(|c| c == code))
    }

    /// Resolves a raw name and reports how.
    pub fn resolve(&self, raw: &str) -> (String, Resolution) {
        let key = country_key(raw);
        if let Some(target) = self.merges.get(&key) {
            return (target.clone(), Resolution::Merged);
        }
        match self.known.get(&key) {
            Some(code) if self.predecessor_of.contains_key(code) => {
                (code.clone(), Resolution::Predecessor)
            }
            Some(code) => (code.clone(), Resolution::Canonical),
            None => (collapse_ws(raw), Resolution::Unknown),
        }
    }

    /// Canonical code for a raw country string. Predecessor codes of split
    /// events pass through; they are redistributed later by
    /// [`reassign_splits`]. Unknown names become their own code.
    pub fn normalize(&self, raw: &str) -> String {
        self.resolve(raw).0
    }
}

/// A split whose successors had no post-split counts, so the predecessor's
/// count was shared equally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualSplitFallback {
    pub predecessor: String,
    pub amount: u64,
}

/// Largest-remainder apportionment of `amount` by integer `weights`.
/// Ties on the remainder go to the earlier entry. All-zero weights share
/// equally.
pub fn apportion(amount: u64, weights: &[u64]) -> Vec<u64> {
    let n = weights.len();
    assert!(n > 0, "apportion needs at least one recipient");
    let total: u128 = weights.iter().map(|&w| w as u128).sum();
    let (weights, total): (Vec<u128>, u128) = if total == 0 {
        (vec![1; n], n as u128)
    } else {
        (weights.iter().map(|&w| w as u128).collect(), total)
    };
    let amount = amount as u128;
    let mut out: Vec<u64> = weights
        .iter()
        .map(|w| (amount * w / total) as u64)
        .collect();
    let assigned: u64 = out.iter().sum();
    let leftover = amount as u64 - assigned;
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps index order among equal remainders
    order.sort_by_key(|&i| std::cmp::Reverse(amount * weights[i] % total));
    for &i in order.iter().take(leftover as usize) {
        out[i] += 1;
    }
    out
}

/// Moves each split predecessor's count onto its successors in proportion
/// to the successors' post-split counts.
///
/// The grand total is conserved exactly. Predecessor codes are removed from
/// the result even when their count is zero.
pub fn reassign_splits(
    tally: &CountryTally,
    post_split: &CountryTally,
    rules: &GeoRuleSet,
) -> (CountryTally, Vec<EqualSplitFallback>) {
    let mut out = tally.clone();
    let mut fallbacks = Vec::new();
    for split in rules.splits() {
        let amount = out.remove(&split.predecessor).unwrap_or(0);
        if amount == 0 {
            continue;
        }
        let weights: Vec<u64> = split
            .successors
            .iter()
            .map(|s| post_split.get(s).copied().unwrap_or(0))
            .collect();
        if weights.iter().all(|&w| w == 0) {
            fallbacks.push(EqualSplitFallback {
                predecessor: split.predecessor.clone(),
                amount,
            });
        }
        for (succ, share) in split.successors.iter().zip(apportion(amount, &weights)) {
            if share > 0 {
                *out.entry(succ.clone()).or_insert(0) += share;
            }
        }
    }
    (out, fallbacks)
}
