//! Batch orchestration: load, normalize, attribute, compute metrics and
//! write the output bundle.
//!
//! All outputs are computed in memory first and written only once every
//! stage has succeeded, so a failed run leaves no partial bundle. Given the
//! same configuration and inputs, every file is byte-identical across runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::attribution::{
    build_ledger, select_source_publications, AttributionError, CountingBasis, Execution,
    GainLedger, LedgerSplitFallback, LedgerTotals, MadeInConfig,
};
use crate::corpus::{
    filter_cited_doc_types, load_corpus, CorpusError, CorpusPaths, DocType, ValidationSummary,
};
use crate::geo::{GeoError, GeoRuleSet, Resolution};
use crate::metrics::{
    self, macro_area_ranges, rank_table, reach_correlations, reach_report, sgsi_matrix_with,
    spearman, top_rank_frequencies, MacroAreaMap, MacroAreaRanges, MetricsError, ReachMeasure,
    SamplingConfig, SgsiConfig,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Attribution(#[from] AttributionError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl ReportError {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            ReportError::Config(_) => "config error",
            ReportError::Corpus(_) | ReportError::Geo(_) => "input error",
            ReportError::Attribution(_) | ReportError::Metrics(_) => "computation error",
            ReportError::Io { .. } => "io error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Config(_) => 2,
            _ => 1,
        }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> ReportError {
    ReportError::Io {
        path: path.to_owned(),
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub cited: PathBuf,
    pub citing: PathBuf,
    pub links: PathBuf,
    /// Built-in rules when `None`.
    pub georules: Option<PathBuf>,
    pub macro_map: Option<PathBuf>,
    pub pub_counts: Option<PathBuf>,
    pub source_country: String,
    pub threshold: f64,
    pub counting_basis: CountingBasis,
    pub doc_types: BTreeSet<DocType>,
    pub sampling: SamplingConfig,
    pub top_n: usize,
    /// Positions counted in `top5.csv`.
    pub top_k: usize,
    /// SCs listed at each end of `sgsi_top_bottom.csv`.
    pub top_bottom: usize,
    pub out_dir: PathBuf,
    pub smoothing: Option<f64>,
}

impl RunConfig {
    pub fn new(corpus: CorpusPaths, source_country: &str, out_dir: PathBuf) -> RunConfig {
        RunConfig {
            cited: corpus.cited,
            citing: corpus.citing,
            links: corpus.links,
            georules: None,
            macro_map: None,
            pub_counts: None,
            source_country: source_country.to_owned(),
            threshold: 0.5,
            counting_basis: CountingBasis::InstitutionInstances,
            doc_types: DocType::RESEARCH.into(),
            sampling: SamplingConfig::default(),
            top_n: 50,
            top_k: 5,
            top_bottom: 10,
            out_dir,
            smoothing: None,
        }
    }

    fn inputs(&self) -> Vec<(&'static str, &Path)> {
        let mut v: Vec<(&'static str, &Path)> = vec![
            ("cited", &self.cited),
            ("citing", &self.citing),
            ("links", &self.links),
        ];
        if let Some(p) = &self.georules {
            v.push(("georules", p));
        }
        if let Some(p) = &self.macro_map {
            v.push(("macro_map", p));
        }
        if let Some(p) = &self.pub_counts {
            v.push(("pub_counts", p));
        }
        v
    }

    /// Checks everything that can be checked before reading data.
    pub fn check(&self) -> Result<MadeInConfig, ReportError> {
        for (name, path) in self.inputs() {
            if !path.is_file() {
                return Err(ReportError::Config(format!(
                    "{name} file not found: {}",
                    path.display()
                )));
            }
        }
        if self.source_country.trim().is_empty() {
            return Err(ReportError::Config("source country is empty".into()));
        }
        if self.doc_types.is_empty() {
            return Err(ReportError::Config("document type filter is empty".into()));
        }
        if self.top_n < 1 || self.top_k < 1 || self.top_bottom < 1 {
            return Err(ReportError::Config(
                "top-n, top-k and top-bottom must be >= 1".into(),
            ));
        }
        if self.sampling.n_samples < 1 || self.sampling.sample_size < 1 {
            return Err(ReportError::Config(
                "samples and sample size must be >= 1".into(),
            ));
        }
        if let Some(eps) = self.smoothing {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(ReportError::Config(
                    "smoothing must be a positive number".into(),
                ));
            }
        }
        MadeInConfig::new(self.threshold, self.counting_basis)
            .map_err(|e| ReportError::Config(e.to_string()))
    }

    fn corpus_paths(&self) -> CorpusPaths {
        CorpusPaths {
            cited: self.cited.clone(),
            citing: self.citing.clone(),
            links: self.links.clone(),
        }
    }

    fn rules(&self) -> Result<GeoRuleSet, ReportError> {
        match &self.georules {
            Some(p) => Ok(GeoRuleSet::load(p)?),
            None => Ok(GeoRuleSet::default()),
        }
    }
}

/// Ingestion and normalization findings.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub validation: ValidationSummary,
    /// Raw country strings matching no rule or canonical name, with counts.
    pub unknown_countries: BTreeMap<String, usize>,
    /// Raw strings rewritten by merge rules, with counts.
    pub merged_names: BTreeMap<String, usize>,
    pub cited_removed_by_doc_type: usize,
    pub source_publications: Option<usize>,
    pub split_fallbacks: Vec<LedgerSplitFallback>,
    pub missing_pub_counts: Vec<String>,
    pub unknown_pub_count_countries: Vec<String>,
}

fn country_diagnostics<'a>(
    pubs: impl IntoIterator<Item = &'a crate::corpus::Publication>,
    rules: &GeoRuleSet,
    diag: &mut Diagnostics,
) {
    for p in pubs {
        for a in &p.affiliations {
            match rules.resolve(&a.raw_country).1 {
                Resolution::Unknown => {
                    *diag
                        .unknown_countries
                        .entry(a.raw_country.clone())
                        .or_insert(0) += 1
                }
                Resolution::Merged => {
                    *diag.merged_names.entry(a.raw_country.clone()).or_insert(0) += 1
                }
                _ => {}
            }
        }
    }
}

/// Runs ingestion and normalization only.
pub fn validate(config: &RunConfig) -> Result<Diagnostics, ReportError> {
    config.check()?;
    let rules = config.rules()?;
    if let Some(p) = &config.macro_map {
        MacroAreaMap::load_csv(p)?;
    }
    if let Some(p) = &config.pub_counts {
        load_pub_counts(p, &rules)?;
    }
    let loaded = load_corpus(&config.corpus_paths(), &config.source_country)?;
    let mut diag = Diagnostics {
        validation: loaded.summary,
        ..Default::default()
    };
    country_diagnostics(
        loaded.corpus.cited().iter().chain(loaded.corpus.citing()),
        &rules,
        &mut diag,
    );
    Ok(diag)
}

/// Publication counts per country from a `country,publications` CSV.
/// Names are normalized; entries that normalize to the same country are
/// summed.
pub fn load_pub_counts(
    path: &Path,
    rules: &GeoRuleSet,
) -> Result<BTreeMap<String, u64>, ReportError> {
    #[derive(serde::Deserialize)]
    struct Row {
        country: String,
        publications: u64,
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| io_error(path, e))?;
    let mut out = BTreeMap::new();
    for row in reader.deserialize::<Row>() {
        let row = row.map_err(|e| io_error(path, e))?;
        *out.entry(rules.normalize(&row.country)).or_insert(0) += row.publications;
    }
    Ok(out)
}

/// Headline numbers of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub source_country: String,
    pub totals: LedgerTotals,
    pub gains_per_benefit: Option<f64>,
    pub benefits_per_citing_publication: Option<f64>,
    /// Spearman rho between rank by gains and rank by publications over
    /// the reported rows of `ranks.csv`.
    pub rank_spearman: Option<f64>,
    pub reach_vs_publications: Option<f64>,
    pub reach_vs_impact: Option<f64>,
    pub reach_impact_degenerate: bool,
    pub sgsi_defined_cells: usize,
}

/// The full set of output files, in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub files: BTreeMap<String, String>,
    pub summary: RunSummary,
    pub diagnostics: Diagnostics,
}

fn fmt_f(v: f64) -> String {
    format!("{v:.6}")
}

fn opt_f(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_default()
}

fn opt_u<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_text(header: &[&str], comments: &[String], rows: Vec<Vec<String>>) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8"));
    out
}

fn json_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

const TIE_NOTE: &str = "ties: broken by ascending country / subject-category code";
const PUB_LEVEL: &str =
    "level: publication-level gains (one gain per citation link and distinct citing country)";
const SC_LEVEL: &str =
    "level: subject-category full counting (each cited publication counts in every one of its SCs)";

/// Computes the whole bundle without touching the output directory.
pub fn compute(config: &RunConfig) -> Result<Bundle, ReportError> {
    let made_in = config.check()?;
    let rules = config.rules()?;
    let macro_map = config
        .macro_map
        .as_deref()
        .map(MacroAreaMap::load_csv)
        .transpose()?;
    let pub_counts = config
        .pub_counts
        .as_deref()
        .map(|p| load_pub_counts(p, &rules))
        .transpose()?;

    let loaded = load_corpus(&config.corpus_paths(), &config.source_country)?;
    let mut diag = Diagnostics {
        validation: loaded.summary,
        ..Default::default()
    };
    country_diagnostics(
        loaded.corpus.cited().iter().chain(loaded.corpus.citing()),
        &rules,
        &mut diag,
    );
    let corpus = filter_cited_doc_types(&loaded.corpus, &config.doc_types)?;
    diag.cited_removed_by_doc_type = loaded.corpus.cited().len() - corpus.cited().len();
    drop(loaded.corpus);

    let sources = select_source_publications(&corpus, &made_in, &rules);
    diag.source_publications = Some(sources.len());
    let ledger = build_ledger(&corpus, &sources, &rules, Execution::Parallel)?;
    diag.split_fallbacks = ledger.split_fallbacks.clone();

    let empty_counts = BTreeMap::new();
    let counts = pub_counts.as_ref().unwrap_or(&empty_counts);
    let ranks = rank_table::<f64>(&ledger, counts, config.top_n)?;
    if pub_counts.is_some() {
        diag.missing_pub_counts = ranks.missing_pub_counts.clone();
        diag.unknown_pub_count_countries = counts
            .keys()
            .filter(|c| rules.resolve(c).1 == Resolution::Unknown)
            .cloned()
            .collect();
    }
    let top = top_rank_frequencies(&ledger, config.top_k)?;
    let reach = reach_report::<f64>(
        &corpus,
        &ledger,
        &rules,
        macro_map.as_ref(),
        Some(&config.sampling),
    )?;
    let ranges = match &macro_map {
        Some(m) => Some((
            macro_area_ranges(&reach.rows, m, ReachMeasure::Exact)?,
            macro_area_ranges(&reach.rows, m, ReachMeasure::Sampled)?,
        )),
        None => None,
    };
    let sgsi = sgsi_matrix_with::<f64>(
        &ledger,
        &SgsiConfig {
            smoothing: config.smoothing,
        },
    );

    let rank_pairs: Vec<(f64, f64)> = ranks
        .rows
        .iter()
        .filter_map(|r| Some((r.rank_by_gains as f64, r.rank_by_pubs? as f64)))
        .collect();
    let rank_spearman = if rank_pairs.len() >= 2 {
        let (a, b): (Vec<f64>, Vec<f64>) = rank_pairs.into_iter().unzip();
        Some(spearman(&a, &b)?.rho)
    } else {
        None
    };
    let reach_corr = if reach.rows.len() >= 2 {
        Some(reach_correlations(&reach)?)
    } else {
        None
    };

    let summary = RunSummary {
        source_country: config.source_country.clone(),
        totals: ledger.totals(),
        gains_per_benefit: ledger.gains_per_benefit(),
        benefits_per_citing_publication: ledger.benefits_per_citing_publication(),
        rank_spearman,
        reach_vs_publications: reach_corr.map(|c| c.0.rho),
        reach_vs_impact: reach_corr.map(|c| c.1.rho),
        reach_impact_degenerate: reach_corr.is_some_and(|c| c.1.degenerate),
        sgsi_defined_cells: sgsi.values.values().filter(|v| v.is_some()).count(),
    };

    let mut files = BTreeMap::new();
    files.insert("ranks.csv".to_owned(), ranks_csv(&ranks));
    files.insert("top5.csv".to_owned(), top_csv(&top, config.top_k));
    files.insert(
        "sc_ratios.csv".to_owned(),
        sc_ratios_csv(&ledger, macro_map.as_ref(), &config.source_country),
    );
    files.insert("reach.csv".to_owned(), reach_csv(&reach, &config.sampling));
    if let Some((exact, sampled)) = &ranges {
        files.insert(
            "reach_macro_areas.csv".to_owned(),
            ranges_csv(exact, sampled),
        );
    }
    files.insert("sgsi.csv".to_owned(), sgsi_csv(&sgsi, config.smoothing));
    files.insert(
        "sgsi_top_bottom.csv".to_owned(),
        sgsi_top_bottom_csv(&sgsi, &ledger, config.top_bottom),
    );
    let mut ledger_csv = format!(
        "# level: `publication` rows are publication-level gains; `sc_*` rows use subject-category full counting\n# {TIE_NOTE}\n"
    )
    .into_bytes();
    ledger
        .write_csv(&mut ledger_csv)
        .expect("in-memory ledger export");
    files.insert(
        "ledger.csv".to_owned(),
        String::from_utf8(ledger_csv).expect("utf-8"),
    );
    files.insert("ledger_totals.json".to_owned(), json_text(&ledger.totals()));
    files.insert("summary.json".to_owned(), json_text(&summary));
    files.insert("diagnostics.json".to_owned(), json_text(&diag));

    let manifest = manifest_json(config, &files)?;
    files.insert("manifest.json".to_owned(), manifest);

    Ok(Bundle {
        files,
        summary,
        diagnostics: diag,
    })
}

fn ranks_csv(t: &metrics::RankTable<f64>) -> String {
    let rows = t
        .rows
        .iter()
        .map(|r| {
            vec![
                r.country.clone(),
                r.gains.to_string(),
                fmt_f(r.share),
                r.rank_by_gains.to_string(),
                opt_u(r.external_pub_count),
                opt_f(r.share_of_pubs),
                opt_u(r.rank_by_pubs),
                opt_f(r.gains_per_pub),
                opt_u(r.rank_by_gains_per_pub),
            ]
        })
        .collect();
    csv_text(
        &[
            "country",
            "gains",
            "share_of_gains",
            "rank_by_gains",
            "publications",
            "share_of_publications",
            "rank_by_publications",
            "gains_per_publication",
            "rank_by_gains_per_publication",
        ],
        &[
            PUB_LEVEL.to_owned(),
            TIE_NOTE.to_owned(),
            format!(
                "rows: top {} of {} countries with gains",
                t.rows.len(),
                t.countries_ranked
            ),
        ],
        rows,
    )
}

fn top_csv(freq: &BTreeMap<String, Vec<u64>>, k: usize) -> String {
    let mut entries: Vec<(&String, &Vec<u64>)> = freq.iter().collect();
    entries.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    let mut header: Vec<String> = vec!["country".into()];
    header.extend((1..=k).map(|p| format!("position_{p}")));
    header.push("total".into());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = entries
        .into_iter()
        .map(|(c, counts)| {
            let mut r = vec![c.clone()];
            r.extend(counts.iter().map(u64::to_string));
            r.push(counts.iter().sum::<u64>().to_string());
            r
        })
        .collect();
    csv_text(&header, &[SC_LEVEL.to_owned(), TIE_NOTE.to_owned()], rows)
}

fn sc_ratios_csv(ledger: &GainLedger, macro_map: Option<&MacroAreaMap>, source: &str) -> String {
    let mut cells: Vec<(String, String, u64, f64)> = Vec::new();
    for (sc, &benefits) in &ledger.sc_benefits {
        let tally = ledger.sc_gains.get(sc);
        let mut countries: BTreeSet<&str> = tally
            .map(|t| t.keys().map(String::as_str).collect())
            .unwrap_or_default();
        countries.insert(source);
        for c in countries {
            let g = ledger.sc_gain(sc, c);
            let ratio = metrics::gains_to_benefits_ratio::<f64>(ledger, sc, c).unwrap_or(0.0);
            if benefits > 0 {
                cells.push((c.to_owned(), sc.clone(), g, ratio));
            }
        }
    }
    cells.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| b.3.partial_cmp(&a.3).unwrap())
            .then_with(|| a.1.cmp(&b.1))
    });
    let rows = cells
        .into_iter()
        .map(|(c, sc, g, r)| {
            vec![
                c,
                sc.clone(),
                macro_map
                    .and_then(|m| m.area_of(&sc))
                    .unwrap_or_default()
                    .to_owned(),
                ledger
                    .sc_publications
                    .get(&sc)
                    .copied()
                    .unwrap_or(0)
                    .to_string(),
                ledger.sc_benefits[&sc].to_string(),
                g.to_string(),
                fmt_f(r),
            ]
        })
        .collect();
    csv_text(
        &[
            "country",
            "sc",
            "macro_area",
            "publications",
            "benefits",
            "gains",
            "gains_to_benefits",
        ],
        &[
            SC_LEVEL.to_owned(),
            "rows: every (country, SC) with gains, plus the source country for every SC".into(),
        ],
        rows,
    )
}

fn reach_csv(report: &metrics::ReachReport<f64>, sampling: &SamplingConfig) -> String {
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.sc.clone(),
                r.macro_area.clone().unwrap_or_default(),
                r.publication_count.to_string(),
                fmt_f(r.average_impact),
                r.exact_reach.to_string(),
                opt_f(r.sampled_mean_reach),
            ]
        })
        .collect();
    csv_text(
        &["sc", "macro_area", "pubs", "avg_impact", "reach", "sampled_mean_reach"],
        &[
            SC_LEVEL.to_owned(),
            format!(
                "sampling: {} samples of min({}, |SC|) publications, seed {}, ChaCha8 per-SC sub-seeds, partial Fisher-Yates",
                sampling.n_samples, sampling.sample_size, sampling.seed
            ),
        ],
        rows,
    )
}

fn ranges_csv(exact: &MacroAreaRanges<f64>, sampled: &MacroAreaRanges<f64>) -> String {
    let mut rows = Vec::new();
    for (name, ranges) in [("exact", exact), ("sampled", sampled)] {
        for a in &ranges.areas {
            rows.push(vec![
                name.to_owned(),
                a.area.clone(),
                a.subject_categories.to_string(),
                fmt_f(a.min),
                fmt_f(a.max),
                fmt_f(a.mean),
            ]);
        }
        rows.push(vec![
            name.to_owned(),
            "ALL".to_owned(),
            ranges
                .areas
                .iter()
                .map(|a| a.subject_categories)
                .sum::<usize>()
                .to_string(),
            fmt_f(
                ranges
                    .areas
                    .iter()
                    .map(|a| a.min)
                    .fold(f64::INFINITY, f64::min),
            ),
            fmt_f(
                ranges
                    .areas
                    .iter()
                    .map(|a| a.max)
                    .fold(f64::NEG_INFINITY, f64::max),
            ),
            fmt_f(ranges.global_mean),
        ]);
    }
    csv_text(
        &[
            "measure",
            "macro_area",
            "subject_categories",
            "min",
            "max",
            "mean",
        ],
        &[
            SC_LEVEL.to_owned(),
            "ALL rows: mean over every SC, not over area means".into(),
        ],
        rows,
    )
}

fn sgsi_csv(m: &metrics::SgsiMatrix<f64>, smoothing: Option<f64>) -> String {
    let rows = m
        .values
        .iter()
        .map(|((country, sc), v)| {
            vec![
                country.clone(),
                sc.clone(),
                v.map(fmt_f).unwrap_or_else(|| "undefined".into()),
            ]
        })
        .collect();
    csv_text(
        &["country", "sc", "sgsi"],
        &[
            SC_LEVEL.to_owned(),
            format!(
                "smoothing: {}",
                smoothing.map_or("none".to_owned(), |e| e.to_string())
            ),
        ],
        rows,
    )
}

fn sgsi_top_bottom_csv(m: &metrics::SgsiMatrix<f64>, ledger: &GainLedger, n: usize) -> String {
    let mut rows = Vec::new();
    for country in ledger.countries() {
        let ranked = m.ranked_for(country);
        let top = ranked
            .iter()
            .take(n)
            .enumerate()
            .map(|(i, e)| ("top", i + 1, e));
        let bottom_start = ranked.len().saturating_sub(n).max(n.min(ranked.len()));
        let bottom = ranked[bottom_start..]
            .iter()
            .enumerate()
            .map(|(i, e)| ("bottom", bottom_start + i + 1, e));
        for (part, rank, (sc, v)) in top.chain(bottom) {
            rows.push(vec![
                country.to_owned(),
                part.to_owned(),
                rank.to_string(),
                sc.to_string(),
                ledger
                    .sc_publications
                    .get(*sc)
                    .copied()
                    .unwrap_or(0)
                    .to_string(),
                ledger.sc_gain(sc, country).to_string(),
                ledger
                    .sc_gains
                    .get(*sc)
                    .map_or(0, |t| t.values().sum::<u64>())
                    .to_string(),
                fmt_f(*v),
            ]);
        }
    }
    csv_text(
        &[
            "country",
            "part",
            "rank",
            "sc",
            "total_cited_publications",
            "country_gains",
            "total_gains",
            "sgsi",
        ],
        &[
            SC_LEVEL.to_owned(),
            TIE_NOTE.to_owned(),
            format!("rows: top and bottom {n} SCs by SGSI per country; undefined values skipped"),
        ],
        rows,
    )
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn manifest_json(
    config: &RunConfig,
    files: &BTreeMap<String, String>,
) -> Result<String, ReportError> {
    #[derive(Serialize)]
    struct Manifest<'a> {
        tool: &'static str,
        version: &'static str,
        config: &'a RunConfig,
        georules_builtin_sha256: Option<String>,
        inputs: BTreeMap<&'static str, String>,
        outputs: BTreeMap<&'a str, String>,
    }
    let mut inputs = BTreeMap::new();
    for (name, path) in config.inputs() {
        let bytes = std::fs::read(path).map_err(|e| io_error(path, e))?;
        inputs.insert(name, sha256_hex(&bytes));
    }
    Ok(json_text(&Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config,
        georules_builtin_sha256: config
            .georules
            .is_none()
            .then(|| sha256_hex(crate::geo::DEFAULT_RULES_JSON.as_bytes())),
        inputs,
        outputs: files
            .iter()
            .map(|(k, v)| (k.as_str(), sha256_hex(v.as_bytes())))
            .collect(),
    }))
}

/// Computes the bundle and writes it into `config.out_dir`.
pub fn run(config: &RunConfig) -> Result<Bundle, ReportError> {
    let bundle = compute(config)?;
    std::fs::create_dir_all(&config.out_dir).map_err(|e| io_error(&config.out_dir, e))?;
    for (name, body) in &bundle.files {
        let path = config.out_dir.join(name);
        std::fs::write(&path, body).map_err(|e| io_error(&path, e))?;
    }
    Ok(bundle)
}
