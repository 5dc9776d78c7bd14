//! Geographical reach: how many countries gained from an SC's source
//! publications, exactly and under size-controlled sampling.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{spearman, MacroAreaMap, MetricsError, Spearman};
use crate::attribution::GainLedger;
use crate::corpus::Corpus;
use crate::geo::GeoRuleSet;
use crate::num::Scalar;

/// Master seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_151_231;

/// Size-controlled sampling. Each SC draws `n_samples` samples of
/// `min(sample_size, |SC|)` publications without replacement.
///
/// The generator is ChaCha8, seeded per SC with the first 8 bytes
/// (little-endian) of `SHA-256(seed.to_le_bytes() || sc)`; samples are drawn
/// by partial Fisher-Yates over the SC's publications in id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub n_samples: usize,
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            n_samples: 100,
            sample_size: 100,
            seed: DEFAULT_SEED,
        }
    }
}

fn sc_seed(seed: u64, sc: &str) -> u64 {
    let digest = Sha256::new()
        .chain_update(seed.to_le_bytes())
        .chain_update(sc.as_bytes())
        .finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// Number of countries with a positive SC-level gain.
pub fn geographical_reach(ledger: &GainLedger, sc: &str) -> Result<usize, MetricsError> {
    if !ledger.sc_benefits.contains_key(sc) {
        return Err(MetricsError::UnknownSubjectCategory(sc.to_owned()));
    }
    Ok(ledger
        .sc_gains
        .get(sc)
        .map_or(0, |t| t.values().filter(|&&g| g > 0).count()))
}

struct ScEntry {
    pubs: Vec<u32>,
    /// predecessor country id -> successor ids that hold gains in this SC
    redirect: HashMap<u32, Vec<u32>>,
}

/// Per-publication citing-country sets grouped by SC, ready for repeated
/// reach computations over subsets.
pub struct ReachIndex {
    n_countries: usize,
    pub_countries: Vec<Vec<u32>>,
    scs: BTreeMap<String, ScEntry>,
}

impl ReachIndex {
    pub fn new(corpus: &Corpus, ledger: &GainLedger, rules: &GeoRuleSet) -> ReachIndex {
        let mut lookup: HashMap<String, u32> = HashMap::new();
        let mut intern = |code: String| -> u32 {
            let next = lookup.len() as u32;
            *lookup.entry(code).or_insert(next)
        };

        let citing: Vec<Vec<u32>> = corpus
            .citing()
            .iter()
            .map(|p| {
                let mut ids: Vec<u32> = p
                    .affiliations
                    .iter()
                    .map(|a| intern(rules.normalize(&a.raw_country)))
                    .collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            })
            .collect();

        // source publications in id order
        let mut slot = vec![None; corpus.cited().len()];
        let mut source_pos = Vec::with_capacity(ledger.pub_benefits.len());
        for id in ledger.pub_benefits.keys() {
            if let Some(pos) = corpus.cited_position(id) {
                slot[pos] = Some(source_pos.len());
                source_pos.push(pos);
            }
        }
        let mut pub_countries: Vec<Vec<u32>> = vec![Vec::new(); source_pos.len()];
        for l in corpus.resolved_links() {
            if let Some(s) = slot[l.cited as usize] {
                pub_countries[s].extend_from_slice(&citing[l.citing as usize]);
            }
        }
        for c in &mut pub_countries {
            c.sort_unstable();
            c.dedup();
        }

        let mut scs: BTreeMap<String, ScEntry> = ledger
            .sc_benefits
            .keys()
            .map(|sc| {
                (
                    sc.clone(),
                    ScEntry {
                        pubs: Vec::new(),
                        redirect: HashMap::new(),
                    },
                )
            })
            .collect();
        for (s, &pos) in source_pos.iter().enumerate() {
            for sc in &corpus.cited()[pos].subject_categories {
                if let Some(e) = scs.get_mut(sc) {
                    e.pubs.push(s as u32);
                }
            }
        }
        for split in rules.splits() {
            let pred = intern(split.predecessor.clone());
            for (sc, entry) in scs.iter_mut() {
                let targets: Vec<u32> = split
                    .successors
                    .iter()
                    .filter(|s| ledger.sc_gain(sc, s) > 0)
                    .map(|s| intern(s.clone()))
                    .collect();
                entry.redirect.insert(pred, targets);
            }
        }

        ReachIndex {
            n_countries: lookup.len(),
            pub_countries,
            scs,
        }
    }

    fn entry(&self, sc: &str) -> Result<&ScEntry, MetricsError> {
        self.scs
            .get(sc)
            .ok_or_else(|| MetricsError::UnknownSubjectCategory(sc.to_owned()))
    }

    pub fn publication_count(&self, sc: &str) -> Result<usize, MetricsError> {
        Ok(self.entry(sc)?.pubs.len())
    }

    fn count(&self, entry: &ScEntry, pubs: &[u32], seen: &mut [u32], stamp: u32) -> usize {
        let mut n = 0;
        let mut mark = |c: u32, n: &mut usize| {
            if seen[c as usize] != stamp {
                seen[c as usize] = stamp;
                *n += 1;
            }
        };
        for &p in pubs {
            for &c in &self.pub_countries[p as usize] {
                match entry.redirect.get(&c) {
                    Some(targets) => targets.iter().for_each(|&t| mark(t, &mut n)),
                    None => mark(c, &mut n),
                }
            }
        }
        n
    }

    /// Reach over every source publication of the SC; equals
    /// [`geographical_reach`] on the same ledger.
    pub fn full_reach(&self, sc: &str) -> Result<usize, MetricsError> {
        let entry = self.entry(sc)?;
        let mut seen = vec![0u32; self.n_countries];
        Ok(self.count(entry, &entry.pubs, &mut seen, 1))
    }

    /// Reach of each individual sample.
    pub fn sample_reaches(
        &self,
        sc: &str,
        cfg: &SamplingConfig,
    ) -> Result<Vec<usize>, MetricsError> {
        if cfg.n_samples == 0 || cfg.sample_size == 0 {
            return Err(MetricsError::InvalidSampling);
        }
        let entry = self.entry(sc)?;
        let n = entry.pubs.len();
        let k = cfg.sample_size.min(n);
        let mut seen = vec![0u32; self.n_countries];
        if k == n {
            let whole = self.count(entry, &entry.pubs, &mut seen, 1);
            return Ok(vec![whole; cfg.n_samples]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(sc_seed(cfg.seed, sc));
        let mut pool = entry.pubs.clone();
        let mut out = Vec::with_capacity(cfg.n_samples);
        for s in 0..cfg.n_samples {
            for i in 0..k {
                let j = rng.random_range(i..n);
                pool.swap(i, j);
            }
            out.push(self.count(entry, &pool[..k], &mut seen, s as u32 + 1));
        }
        Ok(out)
    }

    pub fn sampled_mean<F: Scalar>(
        &self,
        sc: &str,
        cfg: &SamplingConfig,
    ) -> Result<F, MetricsError> {
        let reaches = self.sample_reaches(sc, cfg)?;
        let sum: u64 = reaches.iter().map(|&r| r as u64).sum();
        Ok(F::from_count(sum) / F::from_usize_lossy(reaches.len()))
    }
}

/// Mean reach over random samples of the SC's source publications.
pub fn sampled_reach<F: Scalar>(
    corpus: &Corpus,
    ledger: &GainLedger,
    rules: &GeoRuleSet,
    sc: &str,
    cfg: &SamplingConfig,
) -> Result<F, MetricsError> {
    ReachIndex::new(corpus, ledger, rules).sampled_mean(sc, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReachRow<F> {
    pub sc: String,
    pub macro_area: Option<String>,
    pub publication_count: u64,
    pub benefits: u64,
    /// Benefits per source publication.
    pub average_impact: F,
    pub exact_reach: usize,
    pub sampled_mean_reach: Option<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReachReport<F> {
    pub rows: Vec<ReachRow<F>>,
}

/// One row per SC with benefits. SCs are processed in parallel; sampling is
/// seeded per SC so the result does not depend on scheduling.
pub fn reach_report<F: Scalar>(
    corpus: &Corpus,
    ledger: &GainLedger,
    rules: &GeoRuleSet,
    macro_map: Option<&MacroAreaMap>,
    sampling: Option<&SamplingConfig>,
) -> Result<ReachReport<F>, MetricsError> {
    let index = sampling.map(|_| ReachIndex::new(corpus, ledger, rules));
    let scs: Vec<&String> = ledger.sc_benefits.keys().collect();
    let rows = scs
        .par_iter()
        .map(|sc| -> Result<ReachRow<F>, MetricsError> {
            let pubs = ledger.sc_publications.get(*sc).copied().unwrap_or(0);
            let benefits = ledger.sc_benefits[*sc];
            let sampled = match (&index, sampling) {
                (Some(ix), Some(cfg)) => Some(ix.sampled_mean::<F>(sc, cfg)?),
                _ => None,
            };
            Ok(ReachRow {
                sc: sc.to_string(),
                macro_area: macro_map.and_then(|m| m.area_of(sc)).map(str::to_owned),
                publication_count: pubs,
                benefits,
                average_impact: crate::num::ratio(benefits, pubs).unwrap_or_else(F::zero),
                exact_reach: geographical_reach(ledger, sc)?,
                sampled_mean_reach: sampled,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReachReport { rows })
}

/// Spearman correlation of reach against publication count and against
/// average impact.
pub fn reach_correlations<F: Scalar>(
    report: &ReachReport<F>,
) -> Result<(Spearman<F>, Spearman<F>), MetricsError> {
    let reach: Vec<F> = report
        .rows
        .iter()
        .map(|r| F::from_usize_lossy(r.exact_reach))
        .collect();
    let pubs: Vec<F> = report
        .rows
        .iter()
        .map(|r| F::from_count(r.publication_count))
        .collect();
    let impact: Vec<F> = report.rows.iter().map(|r| r.average_impact).collect();
    Ok((spearman(&reach, &pubs)?, spearman(&reach, &impact)?))
}
