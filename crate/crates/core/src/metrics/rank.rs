use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::MetricsError;
use crate::attribution::GainLedger;
use crate::num::{ratio, Scalar};

/// One beneficiary country, with publication-level gains compared against
/// the country's own publication output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow<F> {
    pub country: String,
    pub gains: u64,
    /// Share of all publication-level gains.
    pub share: F,
    pub rank_by_gains: usize,
    pub external_pub_count: Option<u64>,
    pub share_of_pubs: Option<F>,
    /// Rank among every country in the publication-count table.
    pub rank_by_pubs: Option<usize>,
    pub gains_per_pub: Option<F>,
    pub rank_by_gains_per_pub: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankTable<F> {
    pub rows: Vec<RankRow<F>>,
    /// Countries with gains but no publication count.
    pub missing_pub_counts: Vec<String>,
    /// Number of countries ranked before truncation.
    pub countries_ranked: usize,
}

fn desc_then_code<T: PartialOrd>(a: (&str, T), b: (&str, T)) -> Ordering {
    b.1.partial_cmp(&a.1)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.0.cmp(b.0))
}

/// Countries by publication-level gains, descending; ties by code.
pub fn rank_table<F: Scalar>(
    ledger: &GainLedger,
    external_pub_counts: &BTreeMap<String, u64>,
    top_n: usize,
) -> Result<RankTable<F>, MetricsError> {
    if top_n < 1 {
        return Err(MetricsError::InvalidTopN);
    }
    let total_gains: u64 = ledger.pub_level_gains.values().sum();
    let total_pubs: u64 = external_pub_counts.values().sum();

    let mut by_gains: Vec<(&str, u64)> = ledger
        .pub_level_gains
        .iter()
        .map(|(c, &g)| (c.as_str(), g))
        .collect();
    by_gains.sort_by(|a, b| desc_then_code(*a, *b));

    let mut by_pubs: Vec<(&str, u64)> = external_pub_counts
        .iter()
        .map(|(c, &p)| (c.as_str(), p))
        .collect();
    by_pubs.sort_by(|a, b| desc_then_code(*a, *b));
    let pub_rank: BTreeMap<&str, usize> = by_pubs
        .iter()
        .enumerate()
        .map(|(i, (c, _))| (*c, i + 1))
        .collect();

    let per_pub: BTreeMap<&str, F> = by_gains
        .iter()
        .filter_map(|&(c, g)| {
            let p = *external_pub_counts.get(c)?;
            ratio::<F>(g, p).map(|r| (c, r))
        })
        .collect();
    let mut by_ratio: Vec<(&str, F)> = per_pub.iter().map(|(c, r)| (*c, *r)).collect();
    by_ratio.sort_by(|a, b| desc_then_code(*a, *b));
    let ratio_rank: BTreeMap<&str, usize> = by_ratio
        .iter()
        .enumerate()
        .map(|(i, (c, _))| (*c, i + 1))
        .collect();

    let missing_pub_counts = by_gains
        .iter()
        .filter(|(c, _)| !external_pub_counts.contains_key(*c))
        .map(|(c, _)| c.to_string())
        .collect();

    let rows = by_gains
        .iter()
        .enumerate()
        .take(top_n)
        .map(|(i, &(country, gains))| {
            let pubs = external_pub_counts.get(country).copied();
            RankRow {
                country: country.to_owned(),
                gains,
                share: ratio(gains, total_gains).unwrap_or_else(F::zero),
                rank_by_gains: i + 1,
                external_pub_count: pubs,
                share_of_pubs: pubs.and_then(|p| ratio(p, total_pubs)),
                rank_by_pubs: pub_rank.get(country).copied(),
                gains_per_pub: per_pub.get(country).copied(),
                rank_by_gains_per_pub: ratio_rank.get(country).copied(),
            }
        })
        .collect();

    Ok(RankTable {
        rows,
        missing_pub_counts,
        countries_ranked: by_gains.len(),
    })
}

/// For each country reaching the top `k` by SC-level gains in at least one
/// SC, how many SCs place it at positions 1..=k.
pub fn top_rank_frequencies(
    ledger: &GainLedger,
    k: usize,
) -> Result<BTreeMap<String, Vec<u64>>, MetricsError> {
    if k < 1 {
        return Err(MetricsError::InvalidK);
    }
    let mut freq: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    for tally in ledger.sc_gains.values() {
        let mut order: Vec<(&str, u64)> = tally
            .iter()
            .filter(|(_, &g)| g > 0)
            .map(|(c, &g)| (c.as_str(), g))
            .collect();
        order.sort_by(|a, b| desc_then_code(*a, *b));
        for (pos, (country, _)) in order.into_iter().take(k).enumerate() {
            freq.entry(country.to_owned()).or_insert_with(|| vec![0; k])[pos] += 1;
        }
    }
    Ok(freq)
}

/// Share of an SC's benefits gained by `country`; `None` when the SC has no
/// benefits.
pub fn gains_to_benefits_ratio<F: Scalar>(
    ledger: &GainLedger,
    sc: &str,
    country: &str,
) -> Option<F> {
    let benefits = ledger.sc_benefits.get(sc).copied().unwrap_or(0);
    ratio(ledger.sc_gain(sc, country), benefits)
}
