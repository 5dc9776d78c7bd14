//! Synthetic corpora and a naive reference ledger.
//!
//! [`oracle_ledger`] recounts benefits and gains with plain nested loops and
//! its own normalization calls. It shares no aggregation code with
//! [`crate::attribution::build_ledger`] and exists to check it.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::attribution::{CountingBasis, GainLedger, LedgerSplitFallback, MadeInConfig};
use crate::corpus::{Affiliation, CitationLink, Corpus, CorpusError, DocType, Publication};
use crate::geo::{reassign_splits, CountryTally, GeoRuleSet};

const FOREIGN: [&str; 24] = [
    "USA",
    "Germany",
    "France",
    "Spain",
    "Japan",
    "Canada",
    "Netherlands",
    "Australia",
    "Switzerland",
    "India",
    "Brazil",
    "South Korea",
    "Belgium",
    "Poland",
    "Sweden",
    "Turkey",
    "Greece",
    "Austria",
    "Portugal",
    "Denmark",
    "Israel",
    "Finland",
    "Norway",
    "Mexico",
];

/// Foreign names drawn when `geo_variants` is set: merge aliases and the
/// Yugoslav succession, so that normalization and split reassignment get
/// exercised.
const GEO_VARIANTS: [&str; 10] = [
    "Scotland",
    "England",
    "Hong Kong",
    "China",
    "Macau",
    "Yugoslavia",
    "Serbia-Montenegro",
    "Serbia and Montenegro",
    "Serbia",
    "Montenegro",
];

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid synth spec: {0}")]
    InvalidSpec(String),
    #[error("oracle limited to {limit} publications, corpus has {actual}")]
    TooLarge { limit: usize, actual: usize },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRange {
    pub min: usize,
    pub max: usize,
}

fn default_source() -> String {
    "Italy".to_owned()
}

fn default_max_affiliations() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    /// Number of distinct countries, the source included.
    pub n_countries: usize,
    pub n_scs: usize,
    pub n_cited: usize,
    pub n_citing: usize,
    /// Links per citing publication, drawn uniformly from the range.
    pub links_per_citing: LinkRange,
    /// Probability that a citing address is in the source country.
    pub home_bias: f64,
    /// Probability that a cited publication carries a further SC (applied
    /// repeatedly, so three or more SCs are possible).
    pub multi_sc_probability: f64,
    pub seed: u64,
    #[serde(default = "default_source")]
    pub source_country: String,
    /// Probability that a cited publication fails the made-in rule.
    #[serde(default)]
    pub violator_probability: f64,
    /// Probability that a citing address lacks a country and is dropped.
    #[serde(default)]
    pub missing_country_probability: f64,
    #[serde(default = "default_max_affiliations")]
    pub max_affiliations: usize,
    #[serde(default)]
    pub geo_variants: bool,
    /// Probability that a citing publication is itself one of the cited
    /// publications (same id).
    #[serde(default)]
    pub self_citation_probability: f64,
}

impl SynthSpec {
    pub fn new(seed: u64) -> SynthSpec {
        SynthSpec {
            n_countries: 8,
            n_scs: 5,
            n_cited: 40,
            n_citing: 120,
            links_per_citing: LinkRange { min: 1, max: 3 },
            home_bias: 0.3,
            multi_sc_probability: 0.3,
            seed,
            source_country: default_source(),
            violator_probability: 0.0,
            missing_country_probability: 0.0,
            max_affiliations: default_max_affiliations(),
            geo_variants: false,
            self_citation_probability: 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: &str| Err(SynthError::InvalidSpec(m.to_owned()));
        if self.n_countries < 1
            || self.n_scs < 1
            || self.n_cited < 1
            || self.n_citing < 1
            || self.max_affiliations < 1
        {
            return bad("counts must be at least 1");
        }
        if self.links_per_citing.min > self.links_per_citing.max {
            return bad("links_per_citing.min exceeds max");
        }
        for (name, p) in [
            ("home_bias", self.home_bias),
            ("multi_sc_probability", self.multi_sc_probability),
            ("violator_probability", self.violator_probability),
            (
                "missing_country_probability",
                self.missing_country_probability,
            ),
            ("self_citation_probability", self.self_citation_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(&format!("{name} must lie in [0, 1]"));
            }
        }
        if self.source_country.trim().is_empty() {
            return bad("source_country is empty");
        }
        Ok(())
    }

    /// Real country names while they last (so generated corpora are clean
    /// under the built-in rules), numbered placeholders beyond that.
    fn foreign_names(&self) -> Vec<String> {
        let mut names: Vec<String> = FOREIGN
            .iter()
            .filter(|c| **c != self.source_country)
            .map(|c| c.to_string())
            .chain((1..).map(|i| format!("Country {i:03}")))
            .take(self.n_countries - 1)
            .collect();
        if self.geo_variants {
            names.extend(GEO_VARIANTS.iter().map(|s| s.to_string()));
        }
        names
    }
}

fn institution(rng: &mut ChaCha8Rng, country: &str) -> String {
    format!("{country} institute {}", rng.random_range(0..4))
}

/// Deterministic corpus for `spec.seed`.
pub fn generate(spec: &SynthSpec) -> Result<Corpus, SynthError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let source = spec.source_country.as_str();
    let foreign = spec.foreign_names();
    let scs: Vec<String> = (0..spec.n_scs).map(|j| format!("SC {j:03}")).collect();
    let pick_foreign = |rng: &mut ChaCha8Rng| -> Option<String> {
        (!foreign.is_empty()).then(|| foreign[rng.random_range(0..foreign.len())].clone())
    };

    let mut cited = Vec::with_capacity(spec.n_cited);
    for i in 0..spec.n_cited {
        let year = rng.random_range(2004..=2008);
        let n_aff = rng.random_range(1..=spec.max_affiliations);
        let half_up = n_aff.div_ceil(2);
        let violator = !foreign.is_empty() && rng.random_bool(spec.violator_probability);
        let home = if violator {
            rng.random_range(0..half_up)
        } else {
            rng.random_range(half_up..=n_aff)
        };
        let mut affiliations = Vec::with_capacity(n_aff);
        for k in 0..n_aff {
            let country = if k < home {
                source.to_owned()
            } else {
                pick_foreign(&mut rng).unwrap_or_else(|| source.to_owned())
            };
            affiliations.push(Affiliation {
                institution: institution(&mut rng, &country),
                raw_country: country,
                record_date: year,
            });
        }
        let mut subject_categories = BTreeSet::new();
        subject_categories.insert(scs[rng.random_range(0..scs.len())].clone());
        while subject_categories.len() < scs.len() && rng.random_bool(spec.multi_sc_probability) {
            subject_categories.insert(scs[rng.random_range(0..scs.len())].clone());
        }
        let doc_type = if rng.random_bool(0.05) {
            DocType::Other
        } else {
            DocType::RESEARCH[rng.random_range(0..DocType::RESEARCH.len())]
        };
        cited.push(Publication {
            id: format!("S{i:06}"),
            year,
            doc_type,
            affiliations,
            subject_categories,
        });
    }

    let mut citing = Vec::with_capacity(spec.n_citing);
    let mut links = Vec::new();
    for i in 0..spec.n_citing {
        let reuse = i < spec.n_cited && rng.random_bool(spec.self_citation_probability);
        let (id, year, affiliations) = if reuse {
            let c = &cited[i];
            (c.id.clone(), c.year, c.affiliations.clone())
        } else {
            let year = rng.random_range(2004..=2015);
            let n_aff = rng.random_range(1..=spec.max_affiliations);
            let mut affiliations = Vec::with_capacity(n_aff);
            for _ in 0..n_aff {
                let home = foreign.is_empty() || rng.random_bool(spec.home_bias);
                let country = if home {
                    source.to_owned()
                } else {
                    pick_foreign(&mut rng).unwrap()
                };
                if rng.random_bool(spec.missing_country_probability) {
                    continue;
                }
                affiliations.push(Affiliation {
                    institution: institution(&mut rng, &country),
                    raw_country: country,
                    record_date: year,
                });
            }
            (format!("P{i:07}"), year, affiliations)
        };
        let want = rng
            .random_range(spec.links_per_citing.min..=spec.links_per_citing.max)
            .min(spec.n_cited);
        for target in sample(&mut rng, spec.n_cited, want).into_iter() {
            if cited[target].id != id {
                links.push(CitationLink {
                    citing_id: id.clone(),
                    cited_id: cited[target].id.clone(),
                });
            }
        }
        citing.push(Publication {
            id,
            year,
            doc_type: DocType::ALL[rng.random_range(0..DocType::ALL.len())],
            affiliations,
            subject_categories: BTreeSet::new(),
        });
    }

    Ok(Corpus::new(source, cited, citing, links)?)
}

/// Publication limit for [`oracle_ledger`].
pub const ORACLE_LIMIT: usize = 1000;

fn naive_made_in(p: &Publication, source: &str, cfg: &MadeInConfig, rules: &GeoRuleSet) -> bool {
    if p.affiliations.is_empty() {
        return false;
    }
    let (hits, total) = match cfg.basis() {
        CountingBasis::InstitutionInstances => {
            let mut hits = 0usize;
            for a in &p.affiliations {
                if rules.normalize(&a.raw_country) == source {
                    hits += 1;
                }
            }
            (hits, p.affiliations.len())
        }
        CountingBasis::DistinctInstitutions => {
            let mut all = BTreeSet::new();
            let mut local = BTreeSet::new();
            for a in &p.affiliations {
                all.insert(&a.institution);
                if rules.normalize(&a.raw_country) == source {
                    local.insert(&a.institution);
                }
            }
            (local.len(), all.len())
        }
    };
    hits as f64 / total as f64 >= cfg.threshold()
}

/// Reference ledger: selects source publications and recounts every
/// (link, SC, country) triple with nested loops.
pub fn oracle_ledger(
    corpus: &Corpus,
    cfg: &MadeInConfig,
    rules: &GeoRuleSet,
) -> Result<GainLedger, SynthError> {
    let size = corpus.cited().len() + corpus.citing().len();
    if size > ORACLE_LIMIT {
        return Err(SynthError::TooLarge {
            limit: ORACLE_LIMIT,
            actual: size,
        });
    }
    let source = corpus.source_country();
    let links = corpus.links();

    let mut sources: Vec<&Publication> = Vec::new();
    for p in corpus.cited() {
        let mut cited_at_all = false;
        for l in links {
            if l.cited_id == p.id {
                cited_at_all = true;
            }
        }
        if cited_at_all && naive_made_in(p, source, cfg, rules) {
            sources.push(p);
        }
    }

    let mut ledger = GainLedger::default();
    let mut pub_post = CountryTally::new();
    let mut sc_raw: BTreeMap<String, CountryTally> = BTreeMap::new();
    let mut sc_post: BTreeMap<String, CountryTally> = BTreeMap::new();
    let mut citing_ids = BTreeSet::new();
    for s in &sources {
        ledger.pub_benefits.insert(s.id.clone(), 0);
    }

    for l in links {
        let Some(cited) = sources.iter().find(|p| p.id == l.cited_id) else {
            continue;
        };
        let citing = corpus
            .citing()
            .iter()
            .find(|p| p.id == l.citing_id)
            .expect("corpus links resolve");
        citing_ids.insert(citing.id.clone());
        ledger.total_benefits += 1;
        *ledger.pub_benefits.get_mut(&cited.id).unwrap() += 1;

        let mut countries: BTreeMap<String, bool> = BTreeMap::new();
        for a in &citing.affiliations {
            let code = rules.normalize(&a.raw_country);
            let post = rules
                .split_with_successor(&code)
                .is_some_and(|s| a.record_date >= s.split_year);
            *countries.entry(code).or_insert(false) |= post;
        }
        for (country, post) in &countries {
            ledger.total_gains += 1;
            *ledger.pub_level_gains.entry(country.clone()).or_insert(0) += 1;
            if *post {
                *pub_post.entry(country.clone()).or_insert(0) += 1;
            }
            for sc in &cited.subject_categories {
                *sc_raw
                    .entry(sc.clone())
                    .or_default()
                    .entry(country.clone())
                    .or_insert(0) += 1;
                if *post {
                    *sc_post
                        .entry(sc.clone())
                        .or_default()
                        .entry(country.clone())
                        .or_insert(0) += 1;
                }
            }
        }
    }
    ledger.citing_publication_count = citing_ids.len() as u64;

    for s in &sources {
        for sc in &s.subject_categories {
            *ledger.sc_benefits.entry(sc.clone()).or_insert(0) += ledger.pub_benefits[&s.id];
            *ledger.sc_publications.entry(sc.clone()).or_insert(0) += 1;
        }
    }

    let (pub_level, fb) = reassign_splits(&ledger.pub_level_gains, &pub_post, rules);
    ledger.pub_level_gains = pub_level;
    for f in fb {
        ledger.split_fallbacks.push(LedgerSplitFallback {
            subject_category: None,
            predecessor: f.predecessor,
            amount: f.amount,
        });
    }
    let empty = CountryTally::new();
    for (sc, raw) in &sc_raw {
        let (tally, fb) = reassign_splits(raw, sc_post.get(sc).unwrap_or(&empty), rules);
        for f in fb {
            ledger.split_fallbacks.push(LedgerSplitFallback {
                subject_category: Some(sc.clone()),
                predecessor: f.predecessor,
                amount: f.amount,
            });
        }
        ledger.sc_gains.insert(sc.clone(), tally);
    }
    Ok(ledger)
}
