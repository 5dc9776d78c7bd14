//! Bibliographic data model and corpus ingestion.
//!
//! Three line-delimited JSON files make up a corpus: the cited publications
//! (the source country's output), the citing publications, and the citation
//! links between them. Links may also come as a two-column CSV file.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocType {
    Article,
    Review,
    Letter,
    Proceedings,
    Other,
}

impl DocType {
    pub const ALL: [DocType; 5] = [
        DocType::Article,
        DocType::Review,
        DocType::Letter,
        DocType::Proceedings,
        DocType::Other,
    ];

    /// Cited-side kinds retained by default: articles, reviews, letters and
    /// conference proceedings.
    pub const RESEARCH: [DocType; 4] = [
        DocType::Article,
        DocType::Review,
        DocType::Letter,
        DocType::Proceedings,
    ];

    /// Lenient parse; anything unrecognized (editorials, notes, ...) is `Other`.
    pub fn parse(s: &str) -> DocType {
        match s.trim().to_ascii_lowercase().as_str() {
            "article" | "journal article" => DocType::Article,
            "review" => DocType::Review,
            "letter" => DocType::Letter,
            "proceedings" | "proceedings paper" | "conference proceedings" | "conference paper" => {
                DocType::Proceedings
            }
            _ => DocType::Other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DocType::Article => "article",
            DocType::Review => "review",
            DocType::Letter => "letter",
            DocType::Proceedings => "proceedings",
            DocType::Other => "other",
        }
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DocType {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(DocType::parse(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affiliation {
    pub institution: String,
    /// Country string exactly as found in the record; never empty.
    pub raw_country: String,
    /// Year of the publication carrying this address.
    pub record_date: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub id: String,
    pub year: i32,
    pub doc_type: DocType,
    pub affiliations: Vec<Affiliation>,
    pub subject_categories: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CitationLink {
    pub citing_id: String,
    pub cited_id: String,
}

/// A link resolved to positions in [`Corpus::citing`] and [`Corpus::cited`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkRef {
    pub citing: u32,
    pub cited: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Cited,
    Citing,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Cited => "cited",
            Side::Citing => "citing",
        })
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("duplicate {side} publication id {id:?}")]
    DuplicatePublication { side: Side, id: String },
    #[error("dangling link ids: unknown cited {cited:?}, unknown citing {citing:?}")]
    DanglingLinks {
        cited: Vec<String>,
        citing: Vec<String>,
    },
    #[error("duplicate citation links: {0:?}")]
    DuplicateLinks(Vec<(String, String)>),
    #[error("publication {0:?} links to itself")]
    SelfLink(String),
    #[error("cited publication {0:?} has no subject category")]
    MissingSubjectCategories(String),
    #[error("cited publication {0:?} has no address with a country")]
    MissingAffiliations(String),
    #[error("document type filter is empty")]
    EmptyDocTypeFilter,
}

/// Immutable, validated corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    source_country: String,
    cited: Vec<Publication>,
    citing: Vec<Publication>,
    links: Vec<CitationLink>,
    cited_index: HashMap<String, u32>,
    citing_index: HashMap<String, u32>,
    resolved: Vec<LinkRef>,
}

fn index_of(pubs: &[Publication], side: Side) -> Result<HashMap<String, u32>, CorpusError> {
    let mut index = HashMap::with_capacity(pubs.len());
    for (i, p) in pubs.iter().enumerate() {
        if index.insert(p.id.clone(), i as u32).is_some() {
            return Err(CorpusError::DuplicatePublication {
                side,
                id: p.id.clone(),
            });
        }
    }
    Ok(index)
}

impl Corpus {
    /// Validates and indexes the parts.
    ///
    /// Ids must be unique within each side; the same id may appear on both
    /// sides (a source publication that cites other source publications).
    pub fn new(
        source_country: impl Into<String>,
        cited: Vec<Publication>,
        citing: Vec<Publication>,
        links: Vec<CitationLink>,
    ) -> Result<Corpus, CorpusError> {
        for p in &cited {
            if p.subject_categories.is_empty() {
                return Err(CorpusError::MissingSubjectCategories(p.id.clone()));
            }
            if p.affiliations.is_empty() {
                return Err(CorpusError::MissingAffiliations(p.id.clone()));
            }
        }
        let cited_index = index_of(&cited, Side::Cited)?;
        let citing_index = index_of(&citing, Side::Citing)?;

        let mut unknown_cited = BTreeSet::new();
        let mut unknown_citing = BTreeSet::new();
        let mut resolved = Vec::with_capacity(links.len());
        for link in &links {
            if link.citing_id == link.cited_id {
                return Err(CorpusError::SelfLink(link.cited_id.clone()));
            }
            let ci = citing_index.get(&link.citing_id);
            let cd = cited_index.get(&link.cited_id);
            if ci.is_none() {
                unknown_citing.insert(link.citing_id.clone());
            }
            if cd.is_none() {
                unknown_cited.insert(link.cited_id.clone());
            }
            if let (Some(&citing), Some(&cited)) = (ci, cd) {
                resolved.push(LinkRef { citing, cited });
            }
        }
        if !unknown_cited.is_empty() || !unknown_citing.is_empty() {
            return Err(CorpusError::DanglingLinks {
                cited: unknown_cited.into_iter().collect(),
                citing: unknown_citing.into_iter().collect(),
            });
        }

        let mut seen = HashSet::with_capacity(resolved.len());
        let mut dups = BTreeSet::new();
        for (r, link) in resolved.iter().zip(&links) {
            if !seen.insert((r.citing, r.cited)) {
                dups.insert((link.citing_id.clone(), link.cited_id.clone()));
            }
        }
        if !dups.is_empty() {
            return Err(CorpusError::DuplicateLinks(dups.into_iter().collect()));
        }

        Ok(Corpus {
            source_country: source_country.into(),
            cited,
            citing,
            links,
            cited_index,
            citing_index,
            resolved,
        })
    }

    pub fn source_country(&self) -> &str {
        &self.source_country
    }

    pub fn cited(&self) -> &[Publication] {
        &self.cited
    }

    pub fn citing(&self) -> &[Publication] {
        &self.citing
    }

    pub fn links(&self) -> &[CitationLink] {
        &self.links
    }

    /// Links as index pairs, in the same order as [`Corpus::links`].
    pub fn resolved_links(&self) -> &[LinkRef] {
        &self.resolved
    }

    pub fn cited_position(&self, id: &str) -> Option<usize> {
        self.cited_index.get(id).map(|&i| i as usize)
    }

    pub fn citing_position(&self, id: &str) -> Option<usize> {
        self.citing_index.get(id).map(|&i| i as usize)
    }

    pub fn cited_by_id(&self, id: &str) -> Option<&Publication> {
        self.cited_position(id).map(|i| &self.cited[i])
    }

    pub fn citing_by_id(&self, id: &str) -> Option<&Publication> {
        self.citing_position(id).map(|i| &self.citing[i])
    }

    /// Writes `cited.jsonl`, `citing.jsonl` and `links.jsonl` into `dir`.
    pub fn write_jsonl(&self, dir: &Path) -> Result<CorpusPaths, CorpusError> {
        let paths = CorpusPaths::in_dir(dir);
        write_publications(&paths.cited, &self.cited, Side::Cited)?;
        write_publications(&paths.citing, &self.citing, Side::Citing)?;
        write_links(&paths.links, &self.links)?;
        Ok(paths)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPaths {
    pub cited: PathBuf,
    pub citing: PathBuf,
    pub links: PathBuf,
}

impl CorpusPaths {
    pub fn in_dir(dir: &Path) -> CorpusPaths {
        CorpusPaths {
            cited: dir.join("cited.jsonl"),
            citing: dir.join("citing.jsonl"),
            links: dir.join("links.jsonl"),
        }
    }
}

/// Ingestion report. Country-less addresses are dropped, not fatal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationSummary {
    pub cited_records: usize,
    pub citing_records: usize,
    pub links: usize,
    pub dropped_addresses: usize,
    pub dropped_addresses_cited: usize,
    pub dropped_addresses_citing: usize,
    /// Citing publications whose every address lacked a country. They are
    /// kept: they still produce benefits, just no gains.
    pub citing_without_affiliations: Vec<String>,
}

#[derive(Debug)]
pub struct LoadedCorpus {
    pub corpus: Corpus,
    pub summary: ValidationSummary,
}

#[derive(Deserialize)]
struct AffiliationRecord {
    institution: String,
    #[serde(default)]
    country: Option<String>,
}

#[derive(Deserialize)]
struct PublicationRecord {
    id: String,
    year: i32,
    doc_type: String,
    #[serde(default)]
    affiliations: Vec<AffiliationRecord>,
    #[serde(default)]
    subject_categories: Vec<String>,
}

#[derive(Serialize)]
struct AffiliationOut<'a> {
    institution: &'a str,
    country: &'a str,
}

#[derive(Serialize)]
struct PublicationOut<'a> {
    id: &'a str,
    year: i32,
    doc_type: DocType,
    affiliations: Vec<AffiliationOut<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subject_categories: Option<&'a BTreeSet<String>>,
}

fn open(path: &Path) -> Result<BufReader<File>, CorpusError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| CorpusError::Io {
            path: path.to_owned(),
            source,
        })
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_owned(),
        source,
    }
}

struct PublicationFile {
    pubs: Vec<Publication>,
    dropped: usize,
}

fn read_publications(path: &Path) -> Result<PublicationFile, CorpusError> {
    let reader = open(path)?;
    let mut pubs = Vec::new();
    let mut dropped = 0;
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let rec: PublicationRecord =
            serde_json::from_str(trimmed).map_err(|e| CorpusError::Malformed {
                path: path.to_owned(),
                line: n as u64 + 1,
                message: e.to_string(),
            })?;
        let mut affiliations = Vec::with_capacity(rec.affiliations.len());
        for a in rec.affiliations {
            match a.country.as_deref().map(str::trim) {
                Some(c) if !c.is_empty() => affiliations.push(Affiliation {
                    institution: a.institution,
                    raw_country: c.to_owned(),
                    record_date: rec.year,
                }),
                _ => dropped += 1,
            }
        }
        pubs.push(Publication {
            id: rec.id,
            year: rec.year,
            doc_type: DocType::parse(&rec.doc_type),
            affiliations,
            subject_categories: rec
                .subject_categories
                .into_iter()
                .map(|s| s.trim().to_owned())
                .filter(|s| !s.is_empty())
                .collect(),
        });
    }
    Ok(PublicationFile { pubs, dropped })
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn read_links(path: &Path) -> Result<Vec<CitationLink>, CorpusError> {
    if is_csv(path) {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(open(path)?);
        let mut links = Vec::new();
        for rec in reader.deserialize::<CitationLink>() {
            let link = rec.map_err(|e| CorpusError::Malformed {
                path: path.to_owned(),
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            links.push(link);
        }
        return Ok(links);
    }
    let mut links = Vec::new();
    for (n, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let link: CitationLink =
            serde_json::from_str(trimmed).map_err(|e| CorpusError::Malformed {
                path: path.to_owned(),
                line: n as u64 + 1,
                message: e.to_string(),
            })?;
        links.push(link);
    }
    Ok(links)
}

/// Reads and validates the three corpus files. The files are parsed
/// concurrently.
pub fn load_corpus(paths: &CorpusPaths, source_country: &str) -> Result<LoadedCorpus, CorpusError> {
    let (cited, citing, links) = std::thread::scope(|s| {
        let cited = s.spawn(|| read_publications(&paths.cited));
        let citing = s.spawn(|| read_publications(&paths.citing));
        let links = read_links(&paths.links);
        (
            cited.join().expect("cited reader panicked"),
            citing.join().expect("citing reader panicked"),
            links,
        )
    });
    let (cited, citing, links) = (cited?, citing?, links?);

    let summary = ValidationSummary {
        cited_records: cited.pubs.len(),
        citing_records: citing.pubs.len(),
        links: links.len(),
        dropped_addresses: cited.dropped + citing.dropped,
        dropped_addresses_cited: cited.dropped,
        dropped_addresses_citing: citing.dropped,
        citing_without_affiliations: citing
            .pubs
            .iter()
            .filter(|p| p.affiliations.is_empty())
            .map(|p| p.id.clone())
            .collect(),
    };
    let corpus = Corpus::new(source_country, cited.pubs, citing.pubs, links)?;
    Ok(LoadedCorpus { corpus, summary })
}

/// Restricts the cited side to `allowed` document kinds and drops the links
/// that pointed at removed publications. The citing side is untouched.
pub fn filter_cited_doc_types(
    corpus: &Corpus,
    allowed: &BTreeSet<DocType>,
) -> Result<Corpus, CorpusError> {
    if allowed.is_empty() {
        return Err(CorpusError::EmptyDocTypeFilter);
    }
    if corpus.cited.iter().all(|p| allowed.contains(&p.doc_type)) {
        return Ok(corpus.clone());
    }
    let cited: Vec<Publication> = corpus
        .cited
        .iter()
        .filter(|p| allowed.contains(&p.doc_type))
        .cloned()
        .collect();
    let kept: HashSet<&str> = cited.iter().map(|p| p.id.as_str()).collect();
    let links = corpus
        .links
        .iter()
        .filter(|l| kept.contains(l.cited_id.as_str()))
        .cloned()
        .collect();
    Corpus::new(
        corpus.source_country.clone(),
        cited,
        corpus.citing.clone(),
        links,
    )
}

fn write_publications(path: &Path, pubs: &[Publication], side: Side) -> Result<(), CorpusError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    for p in pubs {
        let rec = PublicationOut {
            id: &p.id,
            year: p.year,
            doc_type: p.doc_type,
            affiliations: p
                .affiliations
                .iter()
                .map(|a| AffiliationOut {
                    institution: &a.institution,
                    country: &a.raw_country,
                })
                .collect(),
            subject_categories: match side {
                Side::Cited => Some(&p.subject_categories),
                Side::Citing if p.subject_categories.is_empty() => None,
                Side::Citing => Some(&p.subject_categories),
            },
        };
        serde_json::to_writer(&mut out, &rec).map_err(|e| io_err(path)(e.into()))?;
        out.write_all(b"\n").map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

fn write_links(path: &Path, links: &[CitationLink]) -> Result<(), CorpusError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    if is_csv(path) {
        let mut w = csv::Writer::from_writer(out);
        for l in links {
            w.serialize(l).map_err(|e| io_err(path)(e.into()))?;
        }
        return w.flush().map_err(io_err(path));
    }
    for l in links {
        serde_json::to_writer(&mut out, l).map_err(|e| io_err(path)(e.into()))?;
        out.write_all(b"\n").map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn small_dir() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "cited.jsonl",
            r#"{"id":"C1","year":2005,"doc_type":"article","affiliations":[{"institution":"i1","country":"Italy"}],"subject_categories":["Geology"]}
{"id":"C2","year":2006,"doc_type":"review","affiliations":[{"institution":"i1","country":"Italy"},{"institution":"i2","country":"France"}],"subject_categories":["Geology","Mathematics"]}
{"id":"C3","year":2007,"doc_type":"letter","affiliations":[{"institution":"i3","country":"Italy"}],"subject_categories":["Mathematics"]}
"#,
        );
        write(
            dir.path(),
            "citing.jsonl",
            r#"{"id":"P1","year":2010,"doc_type":"article","affiliations":[{"institution":"a","country":"USA"}]}
{"id":"P2","year":2011,"doc_type":"article","affiliations":[{"institution":"b","country":"Italy"},{"institution":"c","country":"France"}]}
{"id":"P3","year":2012,"doc_type":"editorial","affiliations":[{"institution":"d","country":""}]}
{"id":"P4","year":2013,"doc_type":"article","affiliations":[{"institution":"e","country":"Germany"},{"institution":"f"}]}

{"id":"P5","year":2014,"doc_type":"article","affiliations":[{"institution":"g","country":"Spain"}]}
"#,
        );
        write(
            dir.path(),
            "links.jsonl",
            r#"{"citing_id":"P1","cited_id":"C1"}
{"citing_id":"P2","cited_id":"C1"}
{"citing_id":"P2","cited_id":"C2"}
{"citing_id":"P3","cited_id":"C3"}
{"citing_id":"P4","cited_id":"C2"}
{"citing_id":"P5","cited_id":"C3"}
"#,
        );
        dir
    }

    #[test]
    fn loads_valid_corpus() {
        let dir = small_dir();
        let loaded = load_corpus(&CorpusPaths::in_dir(dir.path()), "Italy").unwrap();
        let c = &loaded.corpus;
        assert_eq!(
            (c.cited().len(), c.citing().len(), c.links().len()),
            (3, 5, 6)
        );
        assert_eq!(loaded.summary.dropped_addresses, 2);
        assert_eq!(loaded.summary.citing_without_affiliations, vec!["P3"]);
        // P3 is kept even though its only address had no country.
        assert!(c.citing_by_id("P3").unwrap().affiliations.is_empty());
        assert_eq!(c.citing_by_id("P3").unwrap().doc_type, DocType::Other);
    }

    #[test]
    fn dangling_link_lists_the_id() {
        let dir = small_dir();
        write(
            dir.path(),
            "links.jsonl",
            "{\"citing_id\":\"P1\",\"cited_id\":\"X9\"}\n",
        );
        let err = load_corpus(&CorpusPaths::in_dir(dir.path()), "Italy").unwrap_err();
        match err {
            CorpusError::DanglingLinks { cited, citing } => {
                assert_eq!(cited, vec!["X9"]);
                assert!(citing.is_empty());
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_line_names_file_and_line() {
        let dir = small_dir();
        write(
            dir.path(),
            "links.jsonl",
            "{\"citing_id\":\"P1\",\"cited_id\":\"C1\"}\n{not json\n",
        );
        let err = load_corpus(&CorpusPaths::in_dir(dir.path()), "Italy").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("links.jsonl:2:"), "{msg}");
    }

    #[test]
    fn duplicate_ids_and_links_are_errors() {
        let dir = small_dir();
        let cited = std::fs::read_to_string(dir.path().join("cited.jsonl")).unwrap();
        let first = cited.lines().next().unwrap().to_owned();
        write(dir.path(), "cited.jsonl", &format!("{cited}{first}\n"));
        let err = load_corpus(&CorpusPaths::in_dir(dir.path()), "Italy").unwrap_err();
        assert!(matches!(
            err,
            CorpusError::DuplicatePublication {
                side: Side::Cited,
                ..
            }
        ));

        let dir = small_dir();
        write(
            dir.path(),
            "links.jsonl",
            "{\"citing_id\":\"P1\",\"cited_id\":\"C1\"}\n{\"citing_id\":\"P1\",\"cited_id\":\"C1\"}\n",
        );
        let err = load_corpus(&CorpusPaths::in_dir(dir.path()), "Italy").unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateLinks(ref d) if d.len() == 1));
    }

    #[test]
    fn csv_links_are_accepted() {
        let dir = small_dir();
        let csv_path = write(
            dir.path(),
            "links.csv",
            "citing_id,cited_id\nP1,C1\nP5,C3\n",
        );
        let paths = CorpusPaths {
            links: csv_path,
            ..CorpusPaths::in_dir(dir.path())
        };
        let loaded = load_corpus(&paths, "Italy").unwrap();
        assert_eq!(loaded.corpus.links().len(), 2);
        assert_eq!(
            loaded.corpus.resolved_links()[1],
            LinkRef {
                citing: 4,
                cited: 2
            }
        );
    }

    #[test]
    fn filter_by_doc_type() {
        let dir = small_dir();
        let corpus = load_corpus(&CorpusPaths::in_dir(dir.path()), "Italy")
            .unwrap()
            .corpus;
        let only_articles = filter_cited_doc_types(&corpus, &[DocType::Article].into()).unwrap();
        assert_eq!(only_articles.cited().len(), 1);
        assert_eq!(only_articles.links().len(), 2);
        assert!(only_articles.links().iter().all(|l| l.cited_id == "C1"));
        assert_eq!(only_articles.citing().len(), 5);

        let all = filter_cited_doc_types(&corpus, &DocType::ALL.into()).unwrap();
        assert_eq!(all, corpus);
        let research = filter_cited_doc_types(&corpus, &DocType::RESEARCH.into()).unwrap();
        assert_eq!(research.cited().len(), 3);

        assert!(matches!(
            filter_cited_doc_types(&corpus, &BTreeSet::new()),
            Err(CorpusError::EmptyDocTypeFilter)
        ));
    }

    #[test]
    fn round_trip_is_stable() {
        let dir = small_dir();
        let first = load_corpus(&CorpusPaths::in_dir(dir.path()), "Italy")
            .unwrap()
            .corpus;
        let out = tempfile::tempdir().unwrap();
        let paths = first.write_jsonl(out.path()).unwrap();
        let second = load_corpus(&paths, "Italy").unwrap().corpus;
        assert_eq!(first, second);
    }

    #[test]
    fn cited_without_subject_category_rejected() {
        let p = Publication {
            id: "C".into(),
            year: 2005,
            doc_type: DocType::Article,
            affiliations: vec![Affiliation {
                institution: "i".into(),
                raw_country: "Italy".into(),
                record_date: 2005,
            }],
            subject_categories: BTreeSet::new(),
        };
        assert!(matches!(
            Corpus::new("Italy", vec![p], vec![], vec![]),
            Err(CorpusError::MissingSubjectCategories(_))
        ));
    }
}
