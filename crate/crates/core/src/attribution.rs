//! Made-in rule, benefit/gain accounting and full counting over subject
//! categories.
//!
//! Every citation link into a source publication is one benefit. Each
//! distinct country on the citing publication's address list earns one gain
//! from it, however many authors or institutions that country contributes.
//! At subject-category level the gain is credited in full to every category
//! of the cited publication, so SC-level gains do not sum to the
//! publication-level total.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Corpus, LinkRef, Publication};
use crate::geo::{reassign_splits, CountryTally, GeoRuleSet};

#[derive(Debug, Error)]
pub enum AttributionError {
    #[error("made-in threshold must lie in (0, 1], got {0}")]
    InvalidThreshold(f64),
    #[error("publication {0:?} has no affiliations")]
    NoAffiliations(String),
    #[error("source publication {0:?} is not in the cited set")]
    UnknownSourcePublication(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountingBasis {
    /// Every address on the list counts, repeats included.
    #[default]
    InstitutionInstances,
    /// Each institution counts once.
    DistinctInstitutions,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MadeInConfig {
    threshold: f64,
    basis: CountingBasis,
}

impl Default for MadeInConfig {
    fn default() -> Self {
        MadeInConfig {
            threshold: 0.5,
            basis: CountingBasis::InstitutionInstances,
        }
    }
}

impl MadeInConfig {
    pub fn new(threshold: f64, basis: CountingBasis) -> Result<MadeInConfig, AttributionError> {
        if !(threshold > 0.0 && threshold <= 1.0) {
            return Err(AttributionError::InvalidThreshold(threshold));
        }
        Ok(MadeInConfig { threshold, basis })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn basis(&self) -> CountingBasis {
        self.basis
    }
}

/// True when the source country's share of the publication's institutions
/// reaches the threshold (at least half, by default).
pub fn is_made_in(
    publication: &Publication,
    source: &str,
    cfg: &MadeInConfig,
    rules: &GeoRuleSet,
) -> Result<bool, AttributionError> {
    if publication.affiliations.is_empty() {
        return Err(AttributionError::NoAffiliations(publication.id.clone()));
    }
    let (hits, total) = match cfg.basis {
        CountingBasis::InstitutionInstances => {
            let hits = publication
                .affiliations
                .iter()
                .filter(|a| rules.normalize(&a.raw_country) == source)
                .count();
            (hits, publication.affiliations.len())
        }
        CountingBasis::DistinctInstitutions => {
            let mut institutions: BTreeMap<&str, bool> = BTreeMap::new();
            for a in &publication.affiliations {
                let local = rules.normalize(&a.raw_country) == source;
                *institutions.entry(a.institution.as_str()).or_insert(false) |= local;
            }
            let hits = institutions.values().filter(|&&v| v).count();
            (hits, institutions.len())
        }
    };
    Ok(hits as f64 / total as f64 >= cfg.threshold)
}

/// Ids of cited publications that are made in the corpus's source country
/// and were cited at least once.
pub fn select_source_publications(
    corpus: &Corpus,
    cfg: &MadeInConfig,
    rules: &GeoRuleSet,
) -> BTreeSet<String> {
    let mut cited_once = vec![false; corpus.cited().len()];
    for l in corpus.resolved_links() {
        cited_once[l.cited as usize] = true;
    }
    corpus
        .cited()
        .iter()
        .zip(cited_once)
        .filter(|(p, cited)| {
            *cited && is_made_in(p, corpus.source_country(), cfg, rules).unwrap_or(false)
        })
        .map(|(p, _)| p.id.clone())
        .collect()
}

/// Distinct normalized countries on a publication's address list.
pub fn citing_countries(publication: &Publication, rules: &GeoRuleSet) -> BTreeSet<String> {
    publication
        .affiliations
        .iter()
        .map(|a| rules.normalize(&a.raw_country))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerSplitFallback {
    /// `None` for the publication-level tally.
    pub subject_category: Option<String>,
    pub predecessor: String,
    pub amount: u64,
}

/// Benefit and gain counts for one source country.
///
/// Split predecessors have already been redistributed to their successors
/// in every tally. Only positive gain counts are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GainLedger {
    /// Publication-level gains per country; sums to `total_gains`.
    pub pub_level_gains: CountryTally,
    /// Full-counting gains, subject category -> country -> gains.
    pub sc_gains: BTreeMap<String, CountryTally>,
    pub sc_benefits: BTreeMap<String, u64>,
    /// Number of source publications per subject category.
    pub sc_publications: BTreeMap<String, u64>,
    /// Citations received by each source publication.
    pub pub_benefits: BTreeMap<String, u64>,
    pub total_benefits: u64,
    pub total_gains: u64,
    /// Citing publications with at least one link into the source set.
    pub citing_publication_count: u64,
    pub split_fallbacks: Vec<LedgerSplitFallback>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LedgerTotals {
    pub total_benefits: u64,
    pub total_gains: u64,
    pub citing_publication_count: u64,
    pub source_publications: u64,
    pub subject_categories: u64,
    pub beneficiary_countries: u64,
}

impl GainLedger {
    pub fn sc_gain(&self, sc: &str, country: &str) -> u64 {
        self.sc_gains
            .get(sc)
            .and_then(|t| t.get(country))
            .copied()
            .unwrap_or(0)
    }

    /// Every country with at least one SC-level gain, in code order.
    pub fn countries(&self) -> BTreeSet<&str> {
        self.sc_gains
            .values()
            .flat_map(|t| t.keys().map(String::as_str))
            .chain(self.pub_level_gains.keys().map(String::as_str))
            .collect()
    }

    /// Mean number of beneficiary countries per benefit.
    pub fn gains_per_benefit(&self) -> Option<f64> {
        (self.total_benefits > 0).then(|| self.total_gains as f64 / self.total_benefits as f64)
    }

    /// Mean number of source publications cited per citing publication.
    pub fn benefits_per_citing_publication(&self) -> Option<f64> {
        (self.citing_publication_count > 0)
            .then(|| self.total_benefits as f64 / self.citing_publication_count as f64)
    }

    pub fn totals(&self) -> LedgerTotals {
        LedgerTotals {
            total_benefits: self.total_benefits,
            total_gains: self.total_gains,
            citing_publication_count: self.citing_publication_count,
            source_publications: self.pub_benefits.len() as u64,
            subject_categories: self.sc_benefits.len() as u64,
            beneficiary_countries: self.pub_level_gains.len() as u64,
        }
    }

    /// CSV export with columns `level,sc,country,count`.
    ///
    /// Levels: `publication` (country gains, no SC), `sc_gain` (full
    /// counting), `sc_benefit` (no country) and `sc_publications`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["level", "sc", "country", "count"])?;
        for (country, n) in &self.pub_level_gains {
            w.write_record(["publication", "", country, &n.to_string()])?;
        }
        for (sc, tally) in &self.sc_gains {
            for (country, n) in tally {
                w.write_record(["sc_gain", sc, country, &n.to_string()])?;
            }
        }
        for (sc, n) in &self.sc_benefits {
            w.write_record(["sc_benefit", sc, "", &n.to_string()])?;
        }
        for (sc, n) in &self.sc_publications {
            w.write_record(["sc_publications", sc, "", &n.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Shards links over the current rayon pool.
    #[default]
    Parallel,
}

/// Interned view of the citing side: for each citing publication, its
/// distinct country ids, and the subset observed at or after the split
/// that created them.
struct CitingCountries {
    names: Vec<String>,
    ids: Vec<Vec<u32>>,
    post_split: Vec<Vec<u32>>,
}

fn intern_citing(corpus: &Corpus, rules: &GeoRuleSet) -> CitingCountries {
    let mut lookup: HashMap<String, u32> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut split_year: Vec<Option<i32>> = Vec::new();
    let mut ids = Vec::with_capacity(corpus.citing().len());
    let mut post_split = Vec::with_capacity(corpus.citing().len());
    for p in corpus.citing() {
        let mut mine: Vec<u32> = Vec::with_capacity(p.affiliations.len());
        let mut post: Vec<u32> = Vec::new();
        for a in &p.affiliations {
            let code = rules.normalize(&a.raw_country);
            let id = match lookup.get(&code) {
                Some(&id) => id,
                None => {
                    let id = names.len() as u32;
                    split_year.push(rules.split_with_successor(&code).map(|s| s.split_year));
                    lookup.insert(code.clone(), id);
                    names.push(code);
                    id
                }
            };
            mine.push(id);
            if split_year[id as usize].is_some_and(|y| a.record_date >= y) {
                post.push(id);
            }
        }
        mine.sort_unstable();
        mine.dedup();
        post.sort_unstable();
        post.dedup();
        ids.push(mine);
        post_split.push(post);
    }
    CitingCountries {
        names,
        ids,
        post_split,
    }
}

struct Accumulator {
    n_countries: usize,
    pub_gains: Vec<u64>,
    pub_post: Vec<u64>,
    sc_gains: Vec<u64>,
    sc_post: Vec<u64>,
    source_benefits: Vec<u64>,
    total_benefits: u64,
    total_gains: u64,
}

impl Accumulator {
    fn new(n_countries: usize, n_sc: usize, n_source: usize) -> Self {
        Accumulator {
            n_countries,
            pub_gains: vec![0; n_countries],
            pub_post: vec![0; n_countries],
            sc_gains: vec![0; n_countries * n_sc],
            sc_post: vec![0; n_countries * n_sc],
            source_benefits: vec![0; n_source],
            total_benefits: 0,
            total_gains: 0,
        }
    }

    fn merge(mut self, other: Accumulator) -> Accumulator {
        fn add(a: &mut [u64], b: &[u64]) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        add(&mut self.pub_gains, &other.pub_gains);
        add(&mut self.pub_post, &other.pub_post);
        add(&mut self.sc_gains, &other.sc_gains);
        add(&mut self.sc_post, &other.sc_post);
        add(&mut self.source_benefits, &other.source_benefits);
        self.total_benefits += other.total_benefits;
        self.total_gains += other.total_gains;
        self
    }
}

struct SourceIndex {
    /// Cited position -> index into the source list.
    of_cited: Vec<Option<u32>>,
    /// Interned SC ids for each source publication.
    scs: Vec<Vec<u32>>,
    sc_names: Vec<String>,
    ids: Vec<String>,
}

fn index_sources(
    corpus: &Corpus,
    source_pubs: &BTreeSet<String>,
) -> Result<SourceIndex, AttributionError> {
    let mut of_cited = vec![None; corpus.cited().len()];
    let mut scs = Vec::with_capacity(source_pubs.len());
    let mut ids = Vec::with_capacity(source_pubs.len());
    let sc_names: Vec<String> = source_pubs
        .iter()
        .filter_map(|id| corpus.cited_by_id(id))
        .flat_map(|p| p.subject_categories.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let sc_lookup: HashMap<&str, u32> = sc_names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as u32))
        .collect();
    for id in source_pubs {
        let pos = corpus
            .cited_position(id)
            .ok_or_else(|| AttributionError::UnknownSourcePublication(id.clone()))?;
        of_cited[pos] = Some(ids.len() as u32);
        scs.push(
            corpus.cited()[pos]
                .subject_categories
                .iter()
                .map(|s| sc_lookup[s.as_str()])
                .collect(),
        );
        ids.push(id.clone());
    }
    Ok(SourceIndex {
        of_cited,
        scs,
        sc_names,
        ids,
    })
}

fn accumulate(acc: &mut Accumulator, links: &[LinkRef], src: &SourceIndex, cc: &CitingCountries) {
    let n = acc.n_countries;
    for l in links {
        let Some(s) = src.of_cited[l.cited as usize] else {
            continue;
        };
        acc.total_benefits += 1;
        acc.source_benefits[s as usize] += 1;
        let countries = &cc.ids[l.citing as usize];
        let post = &cc.post_split[l.citing as usize];
        acc.total_gains += countries.len() as u64;
        for &c in countries {
            acc.pub_gains[c as usize] += 1;
        }
        for &c in post {
            acc.pub_post[c as usize] += 1;
        }
        for &sc in &src.scs[s as usize] {
            let row = sc as usize * n;
            for &c in countries {
                acc.sc_gains[row + c as usize] += 1;
            }
            for &c in post {
                acc.sc_post[row + c as usize] += 1;
            }
        }
    }
}

fn tally_from(counts: &[u64], names: &[String]) -> CountryTally {
    counts
        .iter()
        .zip(names)
        .filter(|(&n, _)| n > 0)
        .map(|(&n, name)| (name.clone(), n))
        .collect()
}

const SHARD: usize = 64 * 1024;

/// Builds the ledger for the given source publications.
///
/// Integer accumulation is commutative, so sequential and parallel
/// execution produce identical ledgers.
pub fn build_ledger(
    corpus: &Corpus,
    source_pubs: &BTreeSet<String>,
    rules: &GeoRuleSet,
    execution: Execution,
) -> Result<GainLedger, AttributionError> {
    let src = index_sources(corpus, source_pubs)?;
    let cc = intern_citing(corpus, rules);
    let (n_c, n_sc, n_src) = (cc.names.len(), src.sc_names.len(), src.ids.len());
    let links = corpus.resolved_links();

    let acc = match execution {
        Execution::Sequential => {
            let mut acc = Accumulator::new(n_c, n_sc, n_src);
            accumulate(&mut acc, links, &src, &cc);
            acc
        }
        Execution::Parallel => links
            .par_chunks(SHARD)
            .fold(
                || Accumulator::new(n_c, n_sc, n_src),
                |mut acc, chunk| {
                    accumulate(&mut acc, chunk, &src, &cc);
                    acc
                },
            )
            .reduce(|| Accumulator::new(n_c, n_sc, n_src), Accumulator::merge),
    };

    let mut citing_seen = vec![false; corpus.citing().len()];
    for l in links {
        if src.of_cited[l.cited as usize].is_some() {
            citing_seen[l.citing as usize] = true;
        }
    }

    let mut fallbacks = Vec::new();
    let (pub_level_gains, fb) = reassign_splits(
        &tally_from(&acc.pub_gains, &cc.names),
        &tally_from(&acc.pub_post, &cc.names),
        rules,
    );
    fallbacks.extend(fb.into_iter().map(|f| LedgerSplitFallback {
        subject_category: None,
        predecessor: f.predecessor,
        amount: f.amount,
    }));

    let mut sc_gains = BTreeMap::new();
    for (j, sc) in src.sc_names.iter().enumerate() {
        let row = j * n_c..(j + 1) * n_c;
        let (tally, fb) = reassign_splits(
            &tally_from(&acc.sc_gains[row.clone()], &cc.names),
            &tally_from(&acc.sc_post[row], &cc.names),
            rules,
        );
        fallbacks.extend(fb.into_iter().map(|f| LedgerSplitFallback {
            subject_category: Some(sc.clone()),
            predecessor: f.predecessor,
            amount: f.amount,
        }));
        if !tally.is_empty() {
            sc_gains.insert(sc.clone(), tally);
        }
    }

    let mut sc_benefits: BTreeMap<String, u64> = BTreeMap::new();
    let mut sc_publications: BTreeMap<String, u64> = BTreeMap::new();
    for (s, scs) in src.scs.iter().enumerate() {
        for &sc in scs {
            let name = &src.sc_names[sc as usize];
            *sc_benefits.entry(name.clone()).or_insert(0) += acc.source_benefits[s];
            *sc_publications.entry(name.clone()).or_insert(0) += 1;
        }
    }

    Ok(GainLedger {
        pub_level_gains,
        sc_gains,
        sc_benefits,
        sc_publications,
        pub_benefits: src
            .ids
            .iter()
            .cloned()
            .zip(acc.source_benefits.iter().copied())
            .collect(),
        total_benefits: acc.total_benefits,
        total_gains: acc.total_gains,
        citing_publication_count: citing_seen.iter().filter(|&&b| b).count() as u64,
        split_fallbacks: fallbacks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Affiliation, CitationLink, DocType};

    fn aff(inst: &str, country: &str, year: i32) -> Affiliation {
        Affiliation {
            institution: inst.into(),
            raw_country: country.into(),
            record_date: year,
        }
    }

    fn publication(id: &str, year: i32, countries: &[&str], scs: &[&str]) -> Publication {
        Publication {
            id: id.into(),
            year,
            doc_type: DocType::Article,
            affiliations: countries
                .iter()
                .enumerate()
                .map(|(i, c)| aff(&format!("{id}-i{i}"), c, year))
                .collect(),
            subject_categories: scs.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn link(citing: &str, cited: &str) -> CitationLink {
        CitationLink {
            citing_id: citing.into(),
            cited_id: cited.into(),
        }
    }

    #[test]
    fn made_in_threshold_is_inclusive() {
        let rules = GeoRuleSet::default();
        let cfg = MadeInConfig::default();
        let half = publication("a", 2005, &["Italy", "France"], &["X"]);
        assert!(is_made_in(&half, "Italy", &cfg, &rules).unwrap());
        let third = publication("b", 2005, &["Italy", "France", "Spain"], &["X"]);
        assert!(!is_made_in(&third, "Italy", &cfg, &rules).unwrap());
        let all = publication("c", 2005, &["Italy", "italy"], &["X"]);
        assert!(is_made_in(&all, "Italy", &cfg, &rules).unwrap());
        let none = publication("d", 2005, &[], &["X"]);
        assert!(matches!(
            is_made_in(&none, "Italy", &cfg, &rules),
            Err(AttributionError::NoAffiliations(_))
        ));
    }

    #[test]
    fn distinct_institution_basis() {
        let rules = GeoRuleSet::default();
        let mut p = publication("a", 2005, &["Italy", "France", "Spain"], &["X"]);
        // the Italian institution appears twice
        p.affiliations.push(aff("a-i0", "Italy", 2005));
        let instances = MadeInConfig::default();
        let distinct = MadeInConfig::new(0.5, CountingBasis::DistinctInstitutions).unwrap();
        assert!(is_made_in(&p, "Italy", &instances, &rules).unwrap());
        assert!(!is_made_in(&p, "Italy", &distinct, &rules).unwrap());
    }

    #[test]
    fn threshold_bounds() {
        assert!(MadeInConfig::new(0.0, CountingBasis::default()).is_err());
        assert!(MadeInConfig::new(1.5, CountingBasis::default()).is_err());
        assert!(MadeInConfig::new(f64::NAN, CountingBasis::default()).is_err());
        assert!(MadeInConfig::new(1.0, CountingBasis::default()).is_ok());
    }

    #[test]
    fn selection_excludes_uncited_and_foreign() {
        let rules = GeoRuleSet::default();
        let cited = vec![
            publication("uncited", 2005, &["Italy"], &["X"]),
            publication(
                "forty",
                2005,
                &["Italy", "Italy", "France", "France", "Spain"],
                &["X"],
            ),
            publication("full", 2005, &["Italy"], &["X"]),
        ];
        let citing: Vec<Publication> = (0..5)
            .map(|i| publication(&format!("p{i}"), 2010, &["USA"], &[]))
            .collect();
        let mut links: Vec<CitationLink> =
            (0..5).map(|i| link(&format!("p{i}"), "forty")).collect();
        links.push(link("p0", "full"));
        let corpus = Corpus::new("Italy", cited, citing, links).unwrap();
        let selected = select_source_publications(&corpus, &MadeInConfig::default(), &rules);
        assert_eq!(selected, BTreeSet::from(["full".to_string()]));
    }

    #[test]
    fn citing_country_sets() {
        let rules = GeoRuleSet::default();
        let p = publication("p", 2010, &["Italy", "Italy", "France"], &[]);
        assert_eq!(
            citing_countries(&p, &rules),
            BTreeSet::from(["France".to_string(), "Italy".to_string()])
        );
        let uk = publication("q", 2010, &["Scotland", "England"], &[]);
        assert_eq!(
            citing_countries(&uk, &rules),
            BTreeSet::from(["United Kingdom".to_string()])
        );
        let empty = publication("r", 2010, &[], &[]);
        assert!(citing_countries(&empty, &rules).is_empty());
    }

    fn ledger_for(corpus: &Corpus) -> GainLedger {
        let rules = GeoRuleSet::default();
        let src = select_source_publications(corpus, &MadeInConfig::default(), &rules);
        build_ledger(corpus, &src, &rules, Execution::Sequential).unwrap()
    }

    #[test]
    fn full_counting_over_subject_categories() {
        let corpus = Corpus::new(
            "Italy",
            vec![publication("c", 2005, &["Italy"], &["A", "B"])],
            vec![publication("p", 2010, &["Italy"], &[])],
            vec![link("p", "c")],
        )
        .unwrap();
        let l = ledger_for(&corpus);
        assert_eq!(l.total_benefits, 1);
        assert_eq!(l.total_gains, 1);
        assert_eq!(l.sc_gain("A", "Italy"), 1);
        assert_eq!(l.sc_gain("B", "Italy"), 1);
        assert_eq!(l.sc_benefits["A"], 1);
    }

    #[test]
    fn m_times_n_gains() {
        let corpus = Corpus::new(
            "Italy",
            vec![
                publication("c1", 2005, &["Italy"], &["A"]),
                publication("c2", 2005, &["Italy"], &["A"]),
            ],
            vec![publication("p", 2010, &["Italy", "France"], &[])],
            vec![link("p", "c1"), link("p", "c2")],
        )
        .unwrap();
        let l = ledger_for(&corpus);
        assert_eq!(l.total_benefits, 2);
        assert_eq!(l.total_gains, 4);
        assert_eq!(l.citing_publication_count, 1);
        assert_eq!(l.benefits_per_citing_publication(), Some(2.0));
        assert_eq!(l.gains_per_benefit(), Some(2.0));
    }

    #[test]
    fn empty_links_give_zero_ledger() {
        let rules = GeoRuleSet::default();
        let corpus = Corpus::new(
            "Italy",
            vec![publication("c", 2005, &["Italy"], &["A"])],
            vec![],
            vec![],
        )
        .unwrap();
        let l = build_ledger(&corpus, &BTreeSet::new(), &rules, Execution::Parallel).unwrap();
        assert_eq!(l, GainLedger::default());
    }

    #[test]
    fn country_less_citing_publication_yields_benefit_only() {
        let corpus = Corpus::new(
            "Italy",
            vec![publication("c", 2005, &["Italy"], &["A"])],
            vec![publication("p", 2010, &[], &[])],
            vec![link("p", "c")],
        )
        .unwrap();
        let l = ledger_for(&corpus);
        assert_eq!((l.total_benefits, l.total_gains), (1, 0));
        assert!(l.sc_gains.is_empty());
        assert_eq!(l.sc_benefits["A"], 1);
    }

    #[test]
    fn split_predecessor_is_reassigned() {
        let cited = vec![publication("c", 2005, &["Italy"], &["A"])];
        let mut citing = vec![];
        let mut links = vec![];
        // 4 pre-split citations from Serbia-Montenegro / Yugoslavia, then
        // post-split Serbia 3 and Montenegro 1.
        for (i, (country, year)) in [
            ("Yugoslavia", 2004),
            ("Serbia-Montenegro", 2005),
            ("Serbia and Montenegro", 2005),
            ("Serbia-Montenegro", 2004),
            ("Serbia", 2008),
            ("Serbia", 2009),
            ("Serbia", 2010),
            ("Montenegro", 2011),
        ]
        .iter()
        .enumerate()
        {
            let id = format!("p{i}");
            citing.push(publication(&id, *year, &[country], &[]));
            links.push(link(&id, "c"));
        }
        let corpus = Corpus::new("Italy", cited, citing, links).unwrap();
        let l = ledger_for(&corpus);
        assert_eq!(l.pub_level_gains["Serbia"], 6);
        assert_eq!(l.pub_level_gains["Montenegro"], 2);
        assert!(!l.pub_level_gains.contains_key("Serbia-Montenegro"));
        assert_eq!(l.total_gains, 8);
        assert_eq!(l.sc_gain("A", "Serbia"), 6);
        assert!(l.split_fallbacks.is_empty());
    }

    #[test]
    fn csv_export_has_levels() {
        let corpus = Corpus::new(
            "Italy",
            vec![publication("c", 2005, &["Italy"], &["A", "B"])],
            vec![publication("p", 2010, &["Italy", "USA"], &[])],
            vec![link("p", "c")],
        )
        .unwrap();
        let l = ledger_for(&corpus);
        let mut buf = Vec::new();
        l.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("level,sc,country,count\n"));
        assert!(text.contains("publication,,USA,1\n"));
        assert!(text.contains("sc_gain,B,Italy,1\n"));
        assert!(text.contains("sc_benefit,A,,1\n"));
    }
}
