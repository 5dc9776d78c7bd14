//! Fixture builders shared by the integration tests and the acceptance
//! suite. Published table rows live verbatim in `tests/fixtures/*.csv`.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use gainflow::corpus::{Affiliation, CitationLink, Corpus, DocType, Publication};
use gainflow::geo::{apportion, GeoRuleSet};
use gainflow::GainLedger;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn demo_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/demo")
}

pub fn read_rows(name: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(fixture(name))
        .unwrap()
        .records()
        .map(Result::unwrap)
        .collect()
}

/// "90.1%" -> 90.1
pub fn pct(s: &str) -> f64 {
    s.trim_end_matches('%').parse().unwrap()
}

pub fn num<T: std::str::FromStr>(s: &str) -> T
where
    T::Err: std::fmt::Debug,
{
    s.parse().unwrap()
}

// ---------------------------------------------------------------------
// Country-level table (gains and world publication counts)
// ---------------------------------------------------------------------

/// Grand totals implied by the published percentage columns: every share
/// rounds to the printed value only for a gain total in
/// [5_124_088, 5_136_492] and a publication total in
/// [28_311_553, 28_362_133]. The rows not listed are filled by the
/// remaining countries, each below the last listed row on both counts.
pub const TABLE1_GAIN_TOTAL: u64 = 5_130_000;
pub const TABLE1_PUB_TOTAL: u64 = 28_336_000;

pub struct CountryTable {
    pub ledger: GainLedger,
    pub pub_counts: BTreeMap<String, u64>,
    pub listed: Vec<csv::StringRecord>,
    pub fillers: Vec<String>,
}

pub fn table1() -> CountryTable {
    let rules = GeoRuleSet::default();
    let listed = read_rows("table1.csv");
    let mut ledger = GainLedger::default();
    let mut pub_counts = BTreeMap::new();
    let mut names = BTreeSet::new();
    for r in &listed {
        let code = rules.normalize(&r[0]);
        assert_eq!(code, &r[0], "table names are canonical");
        ledger.pub_level_gains.insert(code.clone(), num(&r[1]));
        pub_counts.insert(code.clone(), num(&r[4]));
        names.insert(code);
    }
    let fillers: Vec<String> = rules
        .canonical()
        .iter()
        .filter(|c| !names.contains(*c))
        .cloned()
        .collect();
    let listed_gains: u64 = ledger.pub_level_gains.values().sum();
    let listed_pubs: u64 = pub_counts.values().sum();
    let weights: Vec<u64> = (1..=fillers.len() as u64).rev().collect();
    let g = apportion(TABLE1_GAIN_TOTAL - listed_gains, &weights);
    let p = apportion(TABLE1_PUB_TOTAL - listed_pubs, &weights);
    for ((c, g), p) in fillers.iter().zip(g).zip(p) {
        ledger.pub_level_gains.insert(c.clone(), g);
        pub_counts.insert(c.clone(), p);
    }
    ledger.total_gains = TABLE1_GAIN_TOTAL;
    CountryTable {
        ledger,
        pub_counts,
        listed,
        fillers,
    }
}

// ---------------------------------------------------------------------
// Subject-category corpora
// ---------------------------------------------------------------------

/// One SC to materialize as a corpus: `publications` source publications
/// cited `benefits` times in total, each citing publication citing exactly
/// one of them.
#[derive(Debug, Clone, Default)]
pub struct ScSpec {
    pub name: String,
    pub publications: usize,
    pub benefits: usize,
    /// Citing publications (taken from the front) with an Italian address.
    pub italy: Option<usize>,
    /// Citing publications (taken from the back) with a US address.
    pub usa: Option<usize>,
    /// Total distinct citing countries. The remaining citing publications
    /// cycle through just enough other countries to reach it.
    pub reach: Option<usize>,
}

fn affiliation(country: &str, inst: usize, year: i32) -> Affiliation {
    Affiliation {
        institution: format!("Inst {inst}"),
        raw_country: country.to_owned(),
        record_date: year,
    }
}

/// Countries other than Italy and the USA, in code order.
pub fn foreign_pool() -> Vec<String> {
    GeoRuleSet::default()
        .canonical()
        .iter()
        .filter(|c| *c != "Italy" && *c != "USA")
        .cloned()
        .collect()
}

pub fn sc_corpus(specs: &[ScSpec]) -> Corpus {
    let pool = foreign_pool();
    let mut cited = Vec::new();
    let mut citing = Vec::new();
    let mut links = Vec::new();
    for (s, spec) in specs.iter().enumerate() {
        assert!(spec.publications >= 1 && spec.benefits >= spec.publications);
        for i in 0..spec.publications {
            let year = 2004 + (i % 5) as i32;
            cited.push(Publication {
                id: format!("S{s:03}-{i:05}"),
                year,
                doc_type: DocType::Article,
                affiliations: vec![affiliation("Italy", i % 7, year)],
                subject_categories: BTreeSet::from([spec.name.clone()]),
            });
        }
        let fixed = spec.italy.is_some() as usize + spec.usa.is_some() as usize;
        let n_other = spec.reach.map_or(5, |r| r - fixed);
        assert!(n_other <= pool.len());
        let mut next_other = 0;
        for j in 0..spec.benefits {
            let year = 2009 + (j % 7) as i32;
            let mut affs = Vec::new();
            if spec.italy.is_some_and(|g| j < g) {
                affs.push(affiliation("Italy", j % 11, year));
            }
            if spec.usa.is_some_and(|g| j >= spec.benefits - g) {
                affs.push(affiliation("USA", j % 13, year));
            }
            if affs.is_empty() && n_other > 0 {
                affs.push(affiliation(&pool[next_other % n_other], j % 3, year));
                next_other += 1;
            }
            let id = format!("X{s:03}-{j:06}");
            links.push(CitationLink {
                citing_id: id.clone(),
                cited_id: format!("S{s:03}-{:05}", j % spec.publications),
            });
            citing.push(Publication {
                id,
                year,
                doc_type: DocType::Article,
                affiliations: affs,
                subject_categories: BTreeSet::new(),
            });
        }
        if spec.reach.is_some() {
            assert!(
                next_other >= n_other,
                "{}: not enough citing slots",
                spec.name
            );
        }
    }
    Corpus::new("Italy", cited, citing, links).unwrap()
}

/// Table 3 rows (Italian gains) as SC specs.
pub fn table3_specs() -> Vec<(ScSpec, f64)> {
    read_rows("table3.csv")
        .iter()
        .map(|r| {
            (
                ScSpec {
                    name: r[0].to_owned(),
                    publications: num(&r[2]),
                    benefits: num(&r[3]),
                    italy: Some(num(&r[4])),
                    ..Default::default()
                },
                pct(&r[5]),
            )
        })
        .collect()
}

// ---------------------------------------------------------------------
// Synthetic corpora and ledger identities
// ---------------------------------------------------------------------

use gainflow::synth::{LinkRange, SynthSpec};
use rand::{Rng, SeedableRng};

/// A varied small spec (at most 200 publications) derived from `seed`.
pub fn varied_spec(seed: u64) -> SynthSpec {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n_cited = rng.random_range(1..=60);
    let n_citing = rng.random_range(1..=200 - n_cited);
    let lo = rng.random_range(0..=2);
    let mut spec = SynthSpec::new(seed);
    spec.n_countries = rng.random_range(1..=12);
    spec.n_scs = rng.random_range(1..=8);
    spec.n_cited = n_cited;
    spec.n_citing = n_citing;
    spec.links_per_citing = LinkRange {
        min: lo,
        max: lo + rng.random_range(0..=3),
    };
    spec.home_bias = rng.random_range(0.0..=1.0);
    spec.multi_sc_probability = rng.random_range(0.0..0.8);
    spec.violator_probability = if rng.random_bool(0.5) {
        rng.random_range(0.0..0.5)
    } else {
        0.0
    };
    spec.missing_country_probability = rng.random_range(0.0..0.2);
    spec.max_affiliations = rng.random_range(1..=4);
    spec.geo_variants = rng.random_bool(0.5);
    spec.self_citation_probability = rng.random_range(0.0..0.2);
    spec
}

/// Checks the accounting identities that must hold for any ledger built
/// from `corpus` with source set `sources`.
pub fn check_identities(
    corpus: &Corpus,
    sources: &BTreeSet<String>,
    ledger: &GainLedger,
    rules: &GeoRuleSet,
) -> Result<(), String> {
    let source_links: Vec<_> = corpus
        .links()
        .iter()
        .filter(|l| sources.contains(&l.cited_id))
        .collect();
    let expect = |what: &str, a: u64, b: u64| {
        if a == b {
            Ok(())
        } else {
            Err(format!("{what}: {a} != {b}"))
        }
    };
    expect(
        "total_benefits",
        ledger.total_benefits,
        source_links.len() as u64,
    )?;
    if sources.len() == corpus.cited().len() {
        expect(
            "benefits = |links|",
            ledger.total_benefits,
            corpus.links().len() as u64,
        )?;
    }
    let mut gains = 0u64;
    let mut sc_gains = 0u64;
    for l in &source_links {
        let citing = corpus.citing_by_id(&l.citing_id).unwrap();
        let countries: BTreeSet<String> = citing
            .affiliations
            .iter()
            .map(|a| rules.normalize(&a.raw_country))
            .collect();
        gains += countries.len() as u64;
        let cited = corpus.cited_by_id(&l.cited_id).unwrap();
        sc_gains += (countries.len() * cited.subject_categories.len()) as u64;
    }
    expect("total_gains", ledger.total_gains, gains)?;
    expect(
        "sum pub_level_gains",
        ledger.pub_level_gains.values().sum(),
        ledger.total_gains,
    )?;
    expect(
        "sum sc_gains",
        ledger.sc_gains.values().flat_map(|t| t.values()).sum(),
        sc_gains,
    )?;
    for (sc, &b) in &ledger.sc_benefits {
        let members: u64 = corpus
            .cited()
            .iter()
            .filter(|p| sources.contains(&p.id) && p.subject_categories.contains(sc))
            .map(|p| ledger.pub_benefits[&p.id])
            .sum();
        expect(&format!("sc_benefits[{sc}]"), b, members)?;
    }
    expect(
        "sum pub_benefits",
        ledger.pub_benefits.values().sum(),
        ledger.total_benefits,
    )?;
    Ok(())
}
