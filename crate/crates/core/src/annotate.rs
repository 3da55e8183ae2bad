//! Entity annotations and identifier substitution.
//!
//! Annotations arrive as standoff TSV, one mention per row:
//!
//! ```text
//! doc_id  entity_id  etype  start_char  end_char  surface
//! ```
//!
//! Offsets are 0-based character offsets into the document's raw text
//! (sentences joined by `\n`), end exclusive. Substitution rewrites every
//! mention of an entity, pronouns included, into the entity's identifier
//! token (`A21person1`), so all references to one referent share a single
//! vocabulary item that no stop list removes.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::corpus::SourceDocument;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityType {
    Person,
    Location,
    Date,
    Group,
}

impl EntityType {
    pub const ALL: [EntityType; 4] = [
        EntityType::Person,
        EntityType::Location,
        EntityType::Date,
        EntityType::Group,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntityType::Person => "person",
            EntityType::Location => "location",
            EntityType::Date => "date",
            EntityType::Group => "group",
        }
    }
}

impl fmt::Display for EntityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntityType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        EntityType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown entity type {s:?} (expected person, location, date or group)"))
    }
}

/// Detects identifier tokens in running text. Group 1 is the entity type.
pub fn identifier_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\b\w+?(person|location|date|group)[0-9]+\b").unwrap())
}

/// Whether `token` is, in its entirety, an identifier token.
pub fn is_identifier(token: &str) -> bool {
    identifier_regex()
        .find(token)
        .is_some_and(|m| m.start() == 0 && m.end() == token.len())
}

/// Pronouns (and relative pronouns) recognised as coreferent mentions.
pub const ENGLISH_PRONOUNS: &[&str] = &[
    "i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself", "yourselves", "he",
    "him", "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself", "we", "us",
    "our", "ours", "ourselves", "they", "them", "their", "theirs", "themselves", "who", "whom",
    "whose", "which", "that",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub start: usize,
    pub end: usize,
    pub surface: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityRecord {
    pub entity_id: String,
    pub etype: EntityType,
    pub mentions: Vec<Mention>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationSet {
    pub doc_id: String,
    pub entities: Vec<EntityRecord>,
}

fn check_entity_id(doc_id: &str, entity_id: &str, etype: EntityType) -> Result<()> {
    let ordinal = entity_id
        .strip_prefix(doc_id)
        .and_then(|rest| rest.strip_prefix(etype.as_str()));
    match ordinal {
        Some(o) if !o.is_empty() && o.bytes().all(|b| b.is_ascii_digit()) && is_identifier(entity_id) => Ok(()),
        _ => Err(Error::annotation(
            doc_id,
            format!("entity id {entity_id:?} does not match {doc_id}{etype}<ordinal>"),
        )),
    }
}

impl AnnotationSet {
    pub fn empty(doc_id: impl Into<String>) -> Self {
        AnnotationSet {
            doc_id: doc_id.into(),
            entities: Vec::new(),
        }
    }

    /// Build and validate: id grammar, unique ids, well-formed spans and no
    /// character shared between two mentions.
    pub fn new(doc_id: impl Into<String>, entities: Vec<EntityRecord>) -> Result<Self> {
        let set = AnnotationSet {
            doc_id: doc_id.into(),
            entities,
        };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<()> {
        let mut ids = HashSet::new();
        let mut spans = Vec::new();
        for e in &self.entities {
            check_entity_id(&self.doc_id, &e.entity_id, e.etype)?;
            if !ids.insert(e.entity_id.as_str()) {
                return Err(Error::annotation(
                    &self.doc_id,
                    format!("entity id {} listed twice", e.entity_id),
                ));
            }
            for m in &e.mentions {
                if m.end <= m.start {
                    return Err(Error::annotation(
                        &self.doc_id,
                        format!("{}: empty or inverted span {}..{}", e.entity_id, m.start, m.end),
                    ));
                }
                if m.surface.chars().count() != m.end - m.start {
                    return Err(Error::annotation(
                        &self.doc_id,
                        format!(
                            "{}: surface {:?} does not fit span {}..{}",
                            e.entity_id, m.surface, m.start, m.end
                        ),
                    ));
                }
                spans.push((m.start, m.end, e.entity_id.as_str()));
            }
        }
        spans.sort();
        for pair in spans.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b.0 < a.1 {
                return Err(Error::OverlappingMentions {
                    first: a.2.to_string(),
                    second: b.2.to_string(),
                    start: b.0,
                    end: a.1.min(b.1),
                });
            }
        }
        Ok(())
    }

    pub fn mention_count(&self) -> usize {
        self.entities.iter().map(|e| e.mentions.len()).sum()
    }

    /// Keep only mentions for which `keep` returns true; entities left
    /// without mentions are dropped.
    pub fn filter_mentions(&self, mut keep: impl FnMut(&Mention) -> bool) -> AnnotationSet {
        let entities = self
            .entities
            .iter()
            .filter_map(|e| {
                let mentions: Vec<Mention> = e.mentions.iter().filter(|m| keep(m)).cloned().collect();
                (!mentions.is_empty()).then(|| EntityRecord {
                    entity_id: e.entity_id.clone(),
                    etype: e.etype,
                    mentions,
                })
            })
            .collect();
        AnnotationSet {
            doc_id: self.doc_id.clone(),
            entities,
        }
    }

    /// Named mentions only: drops mentions whose surface is in `pronouns`
    /// (compared lowercase).
    pub fn without_pronouns(&self, pronouns: &HashSet<String>) -> AnnotationSet {
        self.filter_mentions(|m| !pronouns.contains(&m.surface.trim().to_lowercase()))
    }

    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<(usize, String)> = Vec::new();
        for e in &self.entities {
            for m in &e.mentions {
                rows.push((
                    m.start,
                    format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\n",
                        self.doc_id, e.entity_id, e.etype, m.start, m.end, m.surface
                    ),
                ));
            }
        }
        rows.sort();
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

pub fn default_pronouns() -> HashSet<String> {
    ENGLISH_PRONOUNS.iter().map(|s| s.to_string()).collect()
}

/// Parse one standoff TSV file. An empty file yields an empty set whose doc
/// id is the file stem.
pub fn parse_standoff(path: impl AsRef<Path>) -> Result<AnnotationSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    parse_standoff_str(&text, stem, path)
}

pub fn parse_standoff_str(text: &str, default_doc_id: &str, origin: &Path) -> Result<AnnotationSet> {
    let mut doc_id: Option<String> = None;
    let mut order: Vec<String> = Vec::new();
    let mut entities: HashMap<String, EntityRecord> = HashMap::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::parse(origin, lineno + 1, msg);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 {
            return Err(err(format!("expected 6 tab-separated fields, found {}", fields.len())));
        }
        if lineno == 0 && fields[0] == "doc_id" {
            continue;
        }
        let etype: EntityType = fields[2].parse().map_err(err)?;
        let start: usize = fields[3]
            .parse()
            .map_err(|_| err(format!("bad start offset {:?}", fields[3])))?;
        let end: usize = fields[4]
            .parse()
            .map_err(|_| err(format!("bad end offset {:?}", fields[4])))?;
        match &doc_id {
            None => doc_id = Some(fields[0].to_string()),
            Some(d) if d != fields[0] => {
                return Err(err(format!("doc id {} differs from earlier rows ({d})", fields[0])));
            }
            _ => {}
        }
        let surface = fields[5].to_string();
        if surface.chars().count() != end.saturating_sub(start) {
            return Err(err(format!("surface {surface:?} does not fit span {start}..{end}")));
        }
        let entity_id = fields[1].to_string();
        let record = entities.entry(entity_id.clone()).or_insert_with(|| {
            order.push(entity_id.clone());
            EntityRecord {
                entity_id: entity_id.clone(),
                etype,
                mentions: Vec::new(),
            }
        });
        if record.etype != etype {
            return Err(err(format!(
                "{entity_id} typed {etype} here but {} earlier",
                record.etype
            )));
        }
        record.mentions.push(Mention { start, end, surface });
    }

    let entities = order
        .into_iter()
        .map(|id| {
            let mut e = entities.remove(&id).expect("entity recorded in order");
            e.mentions.sort_by_key(|m| m.start);
            e
        })
        .collect();
    AnnotationSet::new(doc_id.unwrap_or_else(|| default_doc_id.to_string()), entities)
}

/// Load every `*.tsv` file in `dir`, keyed by doc id.
pub fn load_annotations(dir: impl AsRef<Path>) -> Result<BTreeMap<String, AnnotationSet>> {
    let dir = dir.as_ref();
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "tsv"))
        .collect();
    files.sort();
    let mut out = BTreeMap::new();
    for f in files {
        let set = parse_standoff(&f)?;
        if out.contains_key(&set.doc_id) {
            return Err(Error::annotation(
                &set.doc_id,
                format!("annotations split across files ({})", f.display()),
            ));
        }
        out.insert(set.doc_id.clone(), set);
    }
    Ok(out)
}

/// Replace every mention span by its entity identifier.
///
/// Spans must lie inside one sentence, cover whole tokens and match their
/// recorded surface. Text outside mentions and the sentence/paragraph layout
/// are preserved exactly.
pub fn substitute_entities(doc: &SourceDocument, ann: &AnnotationSet) -> Result<SourceDocument> {
    if ann.doc_id != doc.doc_id {
        return Err(Error::annotation(
            &doc.doc_id,
            format!("annotation set belongs to {}", ann.doc_id),
        ));
    }
    // Character offset at which each sentence begins in the raw text.
    let mut sentence_starts = Vec::with_capacity(doc.sentences.len());
    let mut offset = 0;
    let sentence_chars: Vec<Vec<(usize, char)>> = doc
        .sentences
        .iter()
        .map(|s| {
            sentence_starts.push(offset);
            let chars: Vec<(usize, char)> = s.char_indices().collect();
            offset += chars.len() + 1;
            chars
        })
        .collect();

    let mut edits: Vec<Vec<(usize, usize, &str)>> = vec![Vec::new(); doc.sentences.len()];
    for e in &ann.entities {
        for m in &e.mentions {
            let fail = |msg: &str| {
                Error::annotation(
                    &doc.doc_id,
                    format!("{} at {}..{}: {msg}", e.entity_id, m.start, m.end),
                )
            };
            let s = sentence_starts.partition_point(|&st| st <= m.start) - 1;
            let chars = &sentence_chars[s];
            let local_start = m.start - sentence_starts[s];
            let local_end = m.end - sentence_starts[s];
            if local_start >= chars.len() {
                return Err(fail("span starts on a sentence break or past the end"));
            }
            if local_end > chars.len() {
                return Err(fail("span crosses a sentence boundary"));
            }
            let text = &doc.sentences[s];
            let byte_start = chars[local_start].0;
            let byte_end = chars.get(local_end).map_or(text.len(), |c| c.0);
            if text[byte_start..byte_end] != m.surface {
                return Err(fail(&format!(
                    "surface {:?} does not match text {:?}",
                    m.surface,
                    &text[byte_start..byte_end]
                )));
            }
            let inner_first = chars[local_start].1;
            let inner_last = chars[local_end - 1].1;
            let before = local_start.checked_sub(1).map(|i| chars[i].1);
            let after = chars.get(local_end).map(|c| c.1);
            if (inner_first.is_alphanumeric() && before.is_some_and(char::is_alphanumeric))
                || (inner_last.is_alphanumeric() && after.is_some_and(char::is_alphanumeric))
            {
                return Err(fail("span covers only part of a token"));
            }
            edits[s].push((byte_start, byte_end, e.entity_id.as_str()));
        }
    }

    let sentences = doc
        .sentences
        .iter()
        .zip(edits)
        .map(|(sentence, mut edits)| {
            edits.sort_by_key(|e| std::cmp::Reverse(e.0));
            let mut out = sentence.clone();
            for (start, end, id) in edits {
                out.replace_range(start..end, id);
            }
            out
        })
        .collect();
    SourceDocument::new(doc.doc_id.clone(), doc.category.clone(), sentences, doc.paragraphs.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountStats {
    pub min: usize,
    pub max: usize,
    /// Rounded to two decimals.
    pub mean: f64,
}

impl CountStats {
    fn from_counts(counts: &[usize]) -> Self {
        if counts.is_empty() {
            return CountStats { min: 0, max: 0, mean: 0.0 };
        }
        let sum: usize = counts.iter().sum();
        let mean = sum as f64 / counts.len() as f64;
        CountStats {
            min: *counts.iter().min().unwrap(),
            max: *counts.iter().max().unwrap(),
            mean: (mean * 100.0).round() / 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeStats {
    pub units: usize,
    pub overall: CountStats,
    pub per_type: BTreeMap<EntityType, CountStats>,
}

/// Identifier-token occurrences per unit (a segment or document text).
/// Every occurrence counts, so an entity mentioned three times counts three.
pub fn ne_stats<S: AsRef<str>>(units: &[S]) -> NeStats {
    let mut overall = Vec::with_capacity(units.len());
    let mut per_type: BTreeMap<EntityType, Vec<usize>> =
        EntityType::ALL.iter().map(|&t| (t, Vec::with_capacity(units.len()))).collect();
    for unit in units {
        let mut by_type: HashMap<EntityType, usize> = HashMap::new();
        let mut total = 0;
        for cap in identifier_regex().captures_iter(unit.as_ref()) {
            let t: EntityType = cap[1].parse().expect("regex only captures known types");
            *by_type.entry(t).or_default() += 1;
            total += 1;
        }
        overall.push(total);
        for (t, counts) in per_type.iter_mut() {
            counts.push(by_type.get(t).copied().unwrap_or(0));
        }
    }
    NeStats {
        units: units.len(),
        overall: CountStats::from_counts(&overall),
        per_type: per_type
            .into_iter()
            .map(|(t, c)| (t, CountStats::from_counts(&c)))
            .collect(),
    }
}
