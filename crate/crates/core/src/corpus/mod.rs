//! Benchmark corpus: data model, JSON-Lines ingestion, validation,
//! filtering hooks and statistics.
//!
//! A corpus file holds one instance object per line:
//!
//! ```json
//! {"id":"s001","source_text":"...","reference_text":"...",
//!  "source_span":[4,5],"reference_span":[18,22],"category":"Material",
//!  "explication":"...","standard_equivalent":"kang","domain":"literary"}
//! ```
//!
//! Spans are `[start, end)` offsets counted in Unicode scalar values
//! (chars), not bytes. The reference-side span may be `null` for
//! instances whose reference never renders the term; such instances are
//! excluded from span-based metrics.

mod filter;
mod stats;

pub use filter::{filter_instances, FilterConfig, RejectReason, Rejection};
pub use stats::{corpus_stats, render_stats_table, CategoryStats, CorpusStats};

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The five-way cultural taxonomy. Every instance carries exactly one
/// category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CulturalCategory {
    Material,
    Social,
    Linguistic,
    Religious,
    Ecological,
}

impl CulturalCategory {
    pub const ALL: [CulturalCategory; 5] = [
        CulturalCategory::Material,
        CulturalCategory::Social,
        CulturalCategory::Linguistic,
        CulturalCategory::Religious,
        CulturalCategory::Ecological,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CulturalCategory::Material => "Material",
            CulturalCategory::Social => "Social",
            CulturalCategory::Linguistic => "Linguistic",
            CulturalCategory::Religious => "Religious",
            CulturalCategory::Ecological => "Ecological",
        }
    }

    /// Accepts bare names and the long "X Culture" forms used by the
    /// taxonomy classifier, case-insensitively.
    pub fn parse_label(label: &str) -> Option<CulturalCategory> {
        let norm = label
            .trim()
            .trim_end_matches(|c: char| c.is_whitespace())
            .to_ascii_lowercase();
        let norm = norm.strip_suffix(" culture").unwrap_or(&norm);
        match norm {
            "material" => Some(CulturalCategory::Material),
            "social" => Some(CulturalCategory::Social),
            "linguistic" => Some(CulturalCategory::Linguistic),
            "religious" => Some(CulturalCategory::Religious),
            "ecological" => Some(CulturalCategory::Ecological),
            _ => None,
        }
    }
}

impl fmt::Display for CulturalCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Source register of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Literary,
    Institutional,
}

/// A `[start, end)` character-offset range. Serialized as a two-element
/// array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    /// Extracts the spanned text, by char offsets.
    pub fn slice<'a>(&self, text: &'a str) -> &'a str {
        let mut byte_start = text.len();
        let mut byte_end = text.len();
        for (char_idx, (byte_idx, _)) in text.char_indices().enumerate() {
            if char_idx == self.start {
                byte_start = byte_idx;
            }
            if char_idx == self.end {
                byte_end = byte_idx;
                break;
            }
        }
        if self.start == 0 {
            byte_start = 0;
        }
        &text[byte_start..byte_end]
    }
}

impl From<(usize, usize)> for Span {
    fn from((start, end): (usize, usize)) -> Self {
        Span { start, end }
    }
}

impl From<Span> for (usize, usize) {
    fn from(s: Span) -> Self {
        (s.start, s.end)
    }
}

/// One benchmark item: a source sentence with an annotated
/// culture-loaded span, its reference translation, and the cultural
/// explication that anchors validity checking.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    pub source_text: String,
    pub reference_text: String,
    pub source_span: Span,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_span: Option<Span>,
    pub category: CulturalCategory,
    pub explication: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_equivalent: Option<String>,
    pub domain: Domain,
}

impl Instance {
    /// The culture-loaded term as it appears in the source sentence.
    pub fn source_term(&self) -> &str {
        self.source_span.slice(&self.source_text)
    }

    /// The reference-side rendering of the term, when annotated.
    pub fn reference_term(&self) -> Option<&str> {
        self.reference_span
            .as_ref()
            .map(|s| s.slice(&self.reference_text))
    }

    /// Source text with the cultural span wrapped in brackets, as the
    /// protocol dispatcher expects.
    pub fn source_with_brackets(&self) -> String {
        let chars: Vec<char> = self.source_text.chars().collect();
        let mut out = String::new();
        out.extend(&chars[..self.source_span.start]);
        out.push('[');
        out.extend(&chars[self.source_span.start..self.source_span.end]);
        out.push(']');
        out.extend(&chars[self.source_span.end..]);
        out
    }

    /// Characters of source context outside the cultural span.
    pub fn context_len(&self) -> usize {
        self.source_text.chars().count() - self.source_span.len()
    }

    fn validate(&self, line: usize) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(Error::MalformedLine {
                line,
                message: "empty id".into(),
            });
        }
        if self.reference_text.is_empty() {
            return Err(Error::EmptyField {
                id: self.id.clone(),
                field: "reference_text",
            });
        }
        if self.explication.trim().is_empty() {
            return Err(Error::EmptyField {
                id: self.id.clone(),
                field: "explication",
            });
        }
        check_span(&self.id, "source_span", &self.source_span, &self.source_text)?;
        if let Some(span) = &self.reference_span {
            check_span(&self.id, "reference_span", span, &self.reference_text)?;
        }
        Ok(())
    }
}

fn check_span(id: &str, field: &'static str, span: &Span, text: &str) -> Result<()> {
    let len = text.chars().count();
    if span.is_empty() || span.end > len {
        return Err(Error::SpanOutOfBounds {
            id: id.to_string(),
            field,
            start: span.start,
            end: span.end,
            len,
        });
    }
    Ok(())
}

/// Corpus-level metadata. Lives in an optional `<stem>.meta.json`
/// sidecar next to the corpus file; the JSON-Lines file itself holds
/// only instances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusMeta {
    pub name: String,
    pub language_pair: String,
    pub version: String,
    /// Set to "judge" when explications were machine-generated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explication_source: Option<String>,
}

impl Default for CorpusMeta {
    fn default() -> Self {
        CorpusMeta {
            name: "corpus".into(),
            language_pair: "zh-en".into(),
            version: "0".into(),
            explication_source: None,
        }
    }
}

/// An ordered, validated collection of instances. Immutable after load;
/// safe to share across threads.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corpus {
    pub instances: Vec<Instance>,
    pub metadata: CorpusMeta,
}

impl Corpus {
    /// Builds a corpus from already-constructed instances, enforcing the
    /// same invariants as [`load_corpus`].
    pub fn from_instances(instances: Vec<Instance>, metadata: CorpusMeta) -> Result<Self> {
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (idx, inst) in instances.iter().enumerate() {
            inst.validate(idx + 1)?;
            if let Some(first) = seen.insert(inst.id.clone(), idx + 1) {
                return Err(Error::DuplicateId {
                    id: inst.id.clone(),
                    first_line: first,
                    second_line: idx + 1,
                });
            }
        }
        Ok(Corpus {
            instances,
            metadata,
        })
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Instance> {
        self.instances.iter().find(|i| i.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.instances.iter().map(|i| i.id.as_str())
    }
}

/// Path of the metadata sidecar for a corpus file: `corpus.jsonl` ->
/// `corpus.meta.json`.
fn meta_path(path: &Path) -> std::path::PathBuf {
    path.with_extension("meta.json")
}

/// Loads and validates a JSON-Lines corpus file. Order-preserving.
///
/// Blank lines are skipped. Errors name the offending line, instance id
/// and field.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut instances = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, line) in raw.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let inst = parse_instance_line(line, lineno)?;
        inst.validate(lineno)?;
        if let Some(first) = seen.insert(inst.id.clone(), lineno) {
            return Err(Error::DuplicateId {
                id: inst.id.clone(),
                first_line: first,
                second_line: lineno,
            });
        }
        instances.push(inst);
    }

    let metadata = match std::fs::read_to_string(meta_path(path)) {
        Ok(text) => serde_json::from_str(&text).map_err(|e| Error::MalformedLine {
            line: 0,
            message: format!("metadata sidecar: {e}"),
        })?,
        Err(_) => CorpusMeta {
            name: path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "corpus".into()),
            ..CorpusMeta::default()
        },
    };

    Ok(Corpus {
        instances,
        metadata,
    })
}

/// Parses one corpus line, mapping unknown category strings to a
/// dedicated error.
fn parse_instance_line(line: &str, lineno: usize) -> Result<Instance> {
    // Probe the category field first so an unknown name is reported as
    // such rather than as a generic deserialization failure.
    let value: serde_json::Value =
        serde_json::from_str(line).map_err(|e| Error::MalformedLine {
            line: lineno,
            message: e.to_string(),
        })?;
    if let Some(cat) = value.get("category").and_then(|v| v.as_str()) {
        if CulturalCategory::parse_label(cat).is_none() {
            return Err(Error::UnknownCategory {
                line: lineno,
                value: cat.to_string(),
            });
        }
    }
    serde_json::from_value(value).map_err(|e| Error::MalformedLine {
        line: lineno,
        message: e.to_string(),
    })
}

/// Serializes a corpus back to JSON-Lines (plus a metadata sidecar when
/// the metadata records an explication source).
pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    for inst in &corpus.instances {
        out.push_str(&serde_json::to_string(inst).expect("instance serializes"));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::io(path.display().to_string(), e))?;
    if corpus.metadata.explication_source.is_some() {
        let meta = serde_json::to_string_pretty(&corpus.metadata).expect("meta serializes");
        std::fs::write(meta_path(path), meta)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_lines(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new()
            .suffix(".jsonl")
            .tempfile()
            .unwrap();
        for l in lines {
            writeln!(f, "{l}").unwrap();
        }
        f.flush().unwrap();
        f
    }

    fn line(id: &str, category: &str) -> String {
        format!(
            r#"{{"id":"{id}","source_text":"他睡在炕上。","reference_text":"He sleeps on the kang.","source_span":[3,4],"reference_span":[17,21],"category":"{category}","explication":"A heated brick bed used in northern China.","domain":"literary"}}"#
        )
    }

    #[test]
    fn round_trips_well_formed_file() {
        let lines: Vec<String> = (1..=5).map(|i| line(&format!("x{i}"), "Material")).collect();
        let refs: Vec<&str> = lines.iter().map(|s| s.as_str()).collect();
        let f = write_lines(&refs);
        let corpus = load_corpus(f.path()).unwrap();
        assert_eq!(corpus.len(), 5);
        assert_eq!(corpus.instances[0].source_term(), "炕");
        assert_eq!(corpus.instances[0].reference_term(), Some("kang"));

        let out = tempfile::Builder::new().suffix(".jsonl").tempfile().unwrap();
        save_corpus(&corpus, out.path()).unwrap();
        let again = load_corpus(out.path()).unwrap();
        assert_eq!(corpus.len(), again.len());
        for (a, b) in corpus.instances.iter().zip(again.instances.iter()) {
            assert_eq!(serde_json::to_string(a).unwrap(), serde_json::to_string(b).unwrap());
        }
    }

    #[test]
    fn span_past_end_names_id_and_field() {
        let bad = r#"{"id":"b1","source_text":"短","reference_text":"short","source_span":[0,9],"category":"Material","explication":"x.","domain":"literary"}"#;
        let f = write_lines(&[bad]);
        match load_corpus(f.path()) {
            Err(Error::SpanOutOfBounds { id, field, .. }) => {
                assert_eq!(id, "b1");
                assert_eq!(field, "source_span");
            }
            other => panic!("expected span error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_cites_both_lines() {
        let l1 = line("a", "Material");
        let dup = line("x1", "Material");
        let filler: Vec<String> = (0..4).map(|i| line(&format!("f{i}"), "Social")).collect();
        let mut all = vec![l1.clone(), dup.clone()];
        all.extend(filler);
        all.push(dup.clone());
        let refs: Vec<&str> = all.iter().map(|s| s.as_str()).collect();
        let f = write_lines(&refs);
        match load_corpus(f.path()) {
            Err(Error::DuplicateId {
                id,
                first_line,
                second_line,
            }) => {
                assert_eq!(id, "x1");
                assert_eq!(first_line, 2);
                assert_eq!(second_line, 7);
            }
            other => panic!("expected duplicate-id error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_category_is_reported() {
        let bad = r#"{"id":"c1","source_text":"词","reference_text":"word","source_span":[0,1],"category":"Cuisine","explication":"x.","domain":"literary"}"#;
        let f = write_lines(&[bad]);
        match load_corpus(f.path()) {
            Err(Error::UnknownCategory { line, value }) => {
                assert_eq!(line, 1);
                assert_eq!(value, "Cuisine");
            }
            other => panic!("expected unknown-category error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_line_number() {
        let good = line("x1", "Material");
        let f = write_lines(&[good.as_str(), "{not json"]);
        match load_corpus(f.path()) {
            Err(Error::MalformedLine { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected malformed-line error, got {other:?}"),
        }
    }

    #[test]
    fn bracketing_uses_char_offsets() {
        let inst: Instance = serde_json::from_str(&line("x1", "Linguistic")).unwrap();
        assert_eq!(inst.source_with_brackets(), "他睡在[炕]上。");
        assert_eq!(inst.context_len(), 5);
    }
}
