//! Document model: multimedia units, rhetorical relations, user profiles and
//! summary budgets, plus the JSON parsers that admit them.
//!
//! Documents arrive pre-segmented: every unit is either a simple unit (a text
//! passage, image, video or audio clip with a duration) or a composite unit
//! (a container of member units with one designated main unit). Relations are
//! declared with explicit nucleus/satellite roles; nothing is inferred from
//! content.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The four media kinds a simple unit can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MediaType {
    Text,
    Image,
    Video,
    Audio,
}

impl MediaType {
    pub const ALL: [MediaType; 4] = [
        MediaType::Text,
        MediaType::Image,
        MediaType::Video,
        MediaType::Audio,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MediaType::Text => "text",
            MediaType::Image => "image",
            MediaType::Video => "video",
            MediaType::Audio => "audio",
        }
    }
}

impl fmt::Display for MediaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Payload distinguishing simple units from composite containers.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitBody {
    /// An atomic unit: one medium and its playback/reading duration.
    Simple { media: MediaType, duration_s: f64 },
    /// A container of member units; the main unit stands in for the
    /// composite during weighting and level computation.
    Composite { members: Vec<String>, main_unit: String },
}

/// One document unit, simple or composite.
#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub id: String,
    pub body: UnitBody,
    /// Free-form topic tags; they only influence tie-breaking.
    pub topics: Vec<String>,
    /// Externally supplied weight for pre-weighted pipelines.
    pub preset_weight: Option<f64>,
}

impl Unit {
    pub fn is_simple(&self) -> bool {
        matches!(self.body, UnitBody::Simple { .. })
    }

    pub fn media(&self) -> Option<MediaType> {
        match &self.body {
            UnitBody::Simple { media, .. } => Some(*media),
            UnitBody::Composite { .. } => None,
        }
    }

    pub fn duration_s(&self) -> Option<f64> {
        match &self.body {
            UnitBody::Simple { duration_s, .. } => Some(*duration_s),
            UnitBody::Composite { .. } => None,
        }
    }
}

/// A typed rhetorical relation between units.
///
/// Nucleus/satellite relations are directional; multi-nucleus relations link
/// peers of equal importance, with the first member acting as the traversal
/// source.
#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    NucleusSatellite {
        rel_type: String,
        nucleus: String,
        satellite: String,
        /// Orbital distance of the satellite; larger means weaker attachment.
        orbit: u32,
    },
    MultiNucleus {
        rel_type: String,
        members: Vec<String>,
    },
}

impl Relation {
    pub fn rel_type(&self) -> &str {
        match self {
            Relation::NucleusSatellite { rel_type, .. } => rel_type,
            Relation::MultiNucleus { rel_type, .. } => rel_type,
        }
    }

    pub fn is_nucleus_satellite(&self) -> bool {
        matches!(self, Relation::NucleusSatellite { .. })
    }
}

/// A parsed multimedia document: title, units in document order, relations in
/// declaration order. The root is always the first unit.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentSpec {
    pub title: String,
    pub root: String,
    pub units: Vec<Unit>,
    pub relations: Vec<Relation>,
}

impl DocumentSpec {
    pub fn unit(&self, id: &str) -> Option<&Unit> {
        self.units.iter().find(|u| u.id == id)
    }

    /// Position of a unit in document order.
    pub fn position(&self, id: &str) -> Option<usize> {
        self.units.iter().position(|u| u.id == id)
    }

    /// Ids of all selectable (simple) units in document order.
    pub fn simple_unit_ids(&self) -> Vec<&str> {
        self.units
            .iter()
            .filter(|u| u.is_simple())
            .map(|u| u.id.as_str())
            .collect()
    }
}

/// A topic the user cares about, weighted in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopicInterest {
    pub tag: String,
    pub weight: f64,
}

/// User preferences consumed by the tie-break cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct UserProfile {
    /// Most-preferred medium first; always a permutation of all four kinds.
    pub media_hierarchy: Vec<MediaType>,
    pub topics: Vec<TopicInterest>,
    pub interactive: bool,
}

impl UserProfile {
    /// Hierarchy position of a medium, 0 = most preferred.
    pub fn media_rank(&self, media: MediaType) -> usize {
        self.media_hierarchy
            .iter()
            .position(|m| *m == media)
            .unwrap_or(MediaType::ALL.len())
    }

    /// Best weight among profile topics matching any of the given tags.
    pub fn topic_affinity(&self, tags: &[String]) -> Option<f64> {
        self.topics
            .iter()
            .filter(|t| tags.iter().any(|tag| *tag == t.tag))
            .map(|t| t.weight)
            .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w))))
    }
}

impl Default for UserProfile {
    /// The pipeline's fallback profile: text first, no topics, non-interactive.
    fn default() -> Self {
        UserProfile {
            media_hierarchy: vec![
                MediaType::Text,
                MediaType::Image,
                MediaType::Video,
                MediaType::Audio,
            ],
            topics: Vec::new(),
            interactive: false,
        }
    }
}

/// Hard upper bound on the total duration of a summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryBudget {
    pub max_duration_s: f64,
}

impl SummaryBudget {
    pub fn new(max_duration_s: f64) -> Result<Self, ParseError> {
        if max_duration_s.is_finite() && max_duration_s > 0.0 {
            Ok(SummaryBudget { max_duration_s })
        } else {
            Err(ParseError::Model {
                subject: "budget".into(),
                message: format!("summary budget must be positive, got {max_duration_s}"),
            })
        }
    }
}

/// Errors raised while admitting documents, profiles or budgets.
#[derive(Debug, Error)]
pub enum ParseError {
    /// Input is not well-formed JSON.
    #[error("syntax error: {0}")]
    Syntax(String),
    /// Input is JSON but does not match the schema (missing, unknown or
    /// ill-typed fields).
    #[error("schema error: {0}")]
    Schema(String),
    /// A relation or composite names an id that does not exist.
    #[error("reference error: {subject}: {message}")]
    Reference { subject: String, message: String },
    /// A structural invariant is violated.
    #[error("model error: {subject}: {message}")]
    Model { subject: String, message: String },
    /// The profile's media hierarchy is not a permutation of all media kinds.
    #[error("hierarchy error: {0}")]
    Hierarchy(String),
}

// The raw mirror of the wire schema. Field names are the contract; unknown
// fields are rejected.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    title: String,
    root: String,
    units: Vec<RawUnit>,
    relations: Vec<RawRelation>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Esu,
    Ecu,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUnit {
    id: String,
    kind: RawKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    media: Option<MediaType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    duration_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    main_unit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    topics: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    preset_weight: Option<f64>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq)]
#[serde(rename_all = "snake_case")]
enum RawCategory {
    NucleusSatellite,
    MultiNucleus,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    category: RawCategory,
    rel_type: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    nucleus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    satellite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    media_hierarchy: Vec<MediaType>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    topics: Vec<TopicInterest>,
    #[serde(default)]
    interactive: bool,
}

fn json_error(err: serde_json::Error) -> ParseError {
    match err.classify() {
        serde_json::error::Category::Syntax | serde_json::error::Category::Eof => {
            ParseError::Syntax(err.to_string())
        }
        _ => ParseError::Schema(err.to_string()),
    }
}

/// Parse and validate a document specification from JSON text.
pub fn parse_document_spec(input: &str) -> Result<DocumentSpec, ParseError> {
    let raw: RawDocument = serde_json::from_str(input).map_err(json_error)?;
    let mut units = Vec::with_capacity(raw.units.len());
    for u in raw.units {
        units.push(unit_from_raw(u)?);
    }
    let mut relations = Vec::with_capacity(raw.relations.len());
    for (idx, r) in raw.relations.into_iter().enumerate() {
        relations.push(relation_from_raw(idx, r)?);
    }
    let doc = DocumentSpec {
        title: raw.title,
        root: raw.root,
        units,
        relations,
    };
    match structural_diagnostics(&doc).into_iter().next() {
        None => Ok(doc),
        Some(d) => Err(d.into_parse_error()),
    }
}

/// Serialize a document back to the wire schema. `parse_document_spec` is the
/// inverse on every valid document.
pub fn serialize_document_spec(doc: &DocumentSpec) -> String {
    let raw = RawDocument {
        title: doc.title.clone(),
        root: doc.root.clone(),
        units: doc.units.iter().map(unit_to_raw).collect(),
        relations: doc.relations.iter().map(relation_to_raw).collect(),
    };
    let mut out = serde_json::to_string_pretty(&raw).expect("document serialization");
    out.push('\n');
    out
}

/// Parse and validate a user profile from JSON text.
pub fn parse_user_profile(input: &str) -> Result<UserProfile, ParseError> {
    let raw: RawProfile = serde_json::from_str(input).map_err(json_error)?;
    let mut seen = HashSet::new();
    for media in &raw.media_hierarchy {
        if !seen.insert(*media) {
            return Err(ParseError::Hierarchy(format!(
                "media_hierarchy lists {media} more than once"
            )));
        }
    }
    if seen.len() != MediaType::ALL.len() {
        let missing: Vec<&str> = MediaType::ALL
            .iter()
            .filter(|m| !seen.contains(m))
            .map(|m| m.as_str())
            .collect();
        return Err(ParseError::Hierarchy(format!(
            "media_hierarchy must list every media type exactly once; missing: {}",
            missing.join(", ")
        )));
    }
    for topic in &raw.topics {
        if !(0.0..=1.0).contains(&topic.weight) || !topic.weight.is_finite() {
            return Err(ParseError::Model {
                subject: topic.tag.clone(),
                message: format!("topic weight must lie in [0, 1], got {}", topic.weight),
            });
        }
    }
    Ok(UserProfile {
        media_hierarchy: raw.media_hierarchy,
        topics: raw.topics,
        interactive: raw.interactive,
    })
}

fn unit_from_raw(raw: RawUnit) -> Result<Unit, ParseError> {
    let id = raw.id;
    let body = match raw.kind {
        RawKind::Esu => {
            if raw.members.is_some() || raw.main_unit.is_some() {
                return Err(ParseError::Schema(format!(
                    "unit {id}: esu must not carry members or main_unit"
                )));
            }
            let media = raw.media.ok_or_else(|| {
                ParseError::Schema(format!("unit {id}: esu requires a media field"))
            })?;
            let duration_s = raw.duration_s.ok_or_else(|| {
                ParseError::Schema(format!("unit {id}: esu requires a duration_s field"))
            })?;
            UnitBody::Simple { media, duration_s }
        }
        RawKind::Ecu => {
            if raw.media.is_some() || raw.duration_s.is_some() {
                return Err(ParseError::Schema(format!(
                    "unit {id}: ecu must not carry media or duration_s"
                )));
            }
            let members = raw.members.ok_or_else(|| {
                ParseError::Schema(format!("unit {id}: ecu requires a members field"))
            })?;
            let main_unit = raw.main_unit.ok_or_else(|| {
                ParseError::Schema(format!("unit {id}: ecu requires a main_unit field"))
            })?;
            UnitBody::Composite { members, main_unit }
        }
    };
    Ok(Unit {
        id,
        body,
        topics: raw.topics.unwrap_or_default(),
        preset_weight: raw.preset_weight,
    })
}

fn unit_to_raw(unit: &Unit) -> RawUnit {
    let (kind, media, duration_s, members, main_unit) = match &unit.body {
        UnitBody::Simple { media, duration_s } => {
            (RawKind::Esu, Some(*media), Some(*duration_s), None, None)
        }
        UnitBody::Composite { members, main_unit } => (
            RawKind::Ecu,
            None,
            None,
            Some(members.clone()),
            Some(main_unit.clone()),
        ),
    };
    RawUnit {
        id: unit.id.clone(),
        kind,
        media,
        duration_s,
        members,
        main_unit,
        topics: if unit.topics.is_empty() {
            None
        } else {
            Some(unit.topics.clone())
        },
        preset_weight: unit.preset_weight,
    }
}

fn relation_from_raw(index: usize, raw: RawRelation) -> Result<Relation, ParseError> {
    let subject = format!("relation #{index}");
    match raw.category {
        RawCategory::NucleusSatellite => {
            if raw.members.is_some() {
                return Err(ParseError::Schema(format!(
                    "{subject}: nucleus_satellite must not carry members"
                )));
            }
            let nucleus = raw.nucleus.ok_or_else(|| {
                ParseError::Schema(format!("{subject}: nucleus_satellite requires nucleus"))
            })?;
            let satellite = raw.satellite.ok_or_else(|| {
                ParseError::Schema(format!("{subject}: nucleus_satellite requires satellite"))
            })?;
            Ok(Relation::NucleusSatellite {
                rel_type: raw.rel_type,
                nucleus,
                satellite,
                orbit: raw.orbit.unwrap_or(1),
            })
        }
        RawCategory::MultiNucleus => {
            if raw.nucleus.is_some() || raw.satellite.is_some() || raw.orbit.is_some() {
                return Err(ParseError::Schema(format!(
                    "{subject}: multi_nucleus must not carry nucleus, satellite or orbit"
                )));
            }
            let members = raw.members.ok_or_else(|| {
                ParseError::Schema(format!("{subject}: multi_nucleus requires members"))
            })?;
            Ok(Relation::MultiNucleus {
                rel_type: raw.rel_type,
                members,
            })
        }
    }
}

fn relation_to_raw(relation: &Relation) -> RawRelation {
    match relation {
        Relation::NucleusSatellite {
            rel_type,
            nucleus,
            satellite,
            orbit,
        } => RawRelation {
            category: RawCategory::NucleusSatellite,
            rel_type: rel_type.clone(),
            nucleus: Some(nucleus.clone()),
            satellite: Some(satellite.clone()),
            orbit: Some(*orbit),
            members: None,
        },
        Relation::MultiNucleus { rel_type, members } => RawRelation {
            category: RawCategory::MultiNucleus,
            rel_type: rel_type.clone(),
            nucleus: None,
            satellite: None,
            orbit: None,
            members: Some(members.clone()),
        },
    }
}

/// What a validation diagnostic reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    DuplicateId,
    UnknownReference,
    InvalidUnit,
    InvalidRelation,
    RelationCycle,
    Unreachable,
}

/// One validation finding, naming the offending unit or relation.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    /// Unit id, or `relation #N` for relations.
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    fn into_parse_error(self) -> ParseError {
        match self.kind {
            DiagnosticKind::UnknownReference => ParseError::Reference {
                subject: self.subject,
                message: self.message,
            },
            _ => ParseError::Model {
                subject: self.subject,
                message: self.message,
            },
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

/// Check every structural invariant of a document, collecting all findings.
///
/// Graph-level checks (acyclicity, reachability) live in
/// [`validate_document`], which combines both.
pub fn structural_diagnostics(doc: &DocumentSpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    if doc.units.is_empty() {
        out.push(Diagnostic {
            kind: DiagnosticKind::InvalidUnit,
            subject: doc.root.clone(),
            message: "document has no units".into(),
        });
        return out;
    }

    let mut seen: HashSet<&str> = HashSet::new();
    for unit in &doc.units {
        if !seen.insert(unit.id.as_str()) {
            out.push(Diagnostic {
                kind: DiagnosticKind::DuplicateId,
                subject: unit.id.clone(),
                message: "unit id declared more than once".into(),
            });
        }
    }
    if doc.units[0].id != doc.root {
        out.push(Diagnostic {
            kind: DiagnosticKind::InvalidUnit,
            subject: doc.root.clone(),
            message: format!(
                "root must be the first listed unit, but first is {}",
                doc.units[0].id
            ),
        });
    }

    let ids: HashSet<&str> = doc.units.iter().map(|u| u.id.as_str()).collect();
    let mut member_parent: HashMap<&str, &str> = HashMap::new();

    for unit in &doc.units {
        match &unit.body {
            UnitBody::Simple { duration_s, .. } => {
                if !duration_s.is_finite() || *duration_s < 0.0 {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::InvalidUnit,
                        subject: unit.id.clone(),
                        message: format!("duration_s must be non-negative, got {duration_s}"),
                    });
                }
            }
            UnitBody::Composite { members, main_unit } => {
                if members.is_empty() {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::InvalidUnit,
                        subject: unit.id.clone(),
                        message: "ecu must have at least one member".into(),
                    });
                }
                let mut member_set: HashSet<&str> = HashSet::new();
                for member in members {
                    if !ids.contains(member.as_str()) {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::UnknownReference,
                            subject: unit.id.clone(),
                            message: format!("member {member} is not a declared unit"),
                        });
                        continue;
                    }
                    if member == &unit.id {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::InvalidUnit,
                            subject: unit.id.clone(),
                            message: "ecu cannot contain itself".into(),
                        });
                        continue;
                    }
                    if !member_set.insert(member.as_str()) {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::InvalidUnit,
                            subject: unit.id.clone(),
                            message: format!("member {member} listed more than once"),
                        });
                        continue;
                    }
                    if let Some(other) = member_parent.insert(member.as_str(), unit.id.as_str()) {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::InvalidUnit,
                            subject: member.clone(),
                            message: format!("unit belongs to two composites: {other} and {}", unit.id),
                        });
                    }
                }
                if !members.contains(main_unit) {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::InvalidUnit,
                        subject: unit.id.clone(),
                        message: format!("main unit {main_unit} is not among the members"),
                    });
                }
            }
        }
        if let Some(w) = unit.preset_weight {
            if !w.is_finite() || w < 0.0 {
                out.push(Diagnostic {
                    kind: DiagnosticKind::InvalidUnit,
                    subject: unit.id.clone(),
                    message: format!("preset_weight must be non-negative, got {w}"),
                });
            }
        }
    }

    // Membership must form a forest: the parent map above rejects shared
    // members; walking parent chains rejects containment cycles.
    for unit in &doc.units {
        let mut hops = 0usize;
        let mut current = unit.id.as_str();
        while let Some(parent) = member_parent.get(current) {
            hops += 1;
            if hops > doc.units.len() {
                out.push(Diagnostic {
                    kind: DiagnosticKind::InvalidUnit,
                    subject: unit.id.clone(),
                    message: "composite membership forms a cycle".into(),
                });
                break;
            }
            current = parent;
        }
    }

    for (index, relation) in doc.relations.iter().enumerate() {
        let subject = format!("relation #{index}");
        match relation {
            Relation::NucleusSatellite {
                nucleus,
                satellite,
                orbit,
                ..
            } => {
                for endpoint in [nucleus, satellite] {
                    if !ids.contains(endpoint.as_str()) {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::UnknownReference,
                            subject: subject.clone(),
                            message: format!("references unknown unit {endpoint}"),
                        });
                    }
                }
                if nucleus == satellite {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::InvalidRelation,
                        subject: subject.clone(),
                        message: format!("nucleus and satellite are both {nucleus}"),
                    });
                }
                if *orbit < 1 {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::InvalidRelation,
                        subject: subject.clone(),
                        message: "orbit must be at least 1".into(),
                    });
                }
            }
            Relation::MultiNucleus { members, .. } => {
                if members.len() < 2 {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::InvalidRelation,
                        subject: subject.clone(),
                        message: "multi_nucleus requires at least two members".into(),
                    });
                }
                let mut member_set: HashSet<&str> = HashSet::new();
                for member in members {
                    if !ids.contains(member.as_str()) {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::UnknownReference,
                            subject: subject.clone(),
                            message: format!("references unknown unit {member}"),
                        });
                    }
                    if !member_set.insert(member.as_str()) {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::InvalidRelation,
                            subject: subject.clone(),
                            message: format!("member {member} listed more than once"),
                        });
                    }
                }
            }
        }
    }

    out
}

/// Full document validation: structural invariants plus the graph-level
/// checks (relation acyclicity and reachability from the root).
///
/// Returns an empty list exactly when the document is admissible for
/// summarization.
pub fn validate_document(doc: &DocumentSpec) -> Vec<Diagnostic> {
    let mut out = structural_diagnostics(doc);
    if out.is_empty() {
        out.extend(crate::graph::structure_diagnostics(doc));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_doc() -> &'static str {
        r#"{
            "title": "One",
            "root": "a",
            "units": [{"id": "a", "kind": "esu", "media": "text", "duration_s": 5.0}],
            "relations": []
        }"#
    }

    #[test]
    fn parses_minimal_document() {
        let doc = parse_document_spec(minimal_doc()).unwrap();
        assert_eq!(doc.units.len(), 1);
        assert_eq!(doc.relations.len(), 0);
        assert_eq!(doc.root, "a");
        assert_eq!(doc.units[0].media(), Some(MediaType::Text));
    }

    #[test]
    fn parses_fixture_document() {
        let input = include_str!("../fixtures/space_history.json");
        let doc = parse_document_spec(input).unwrap();
        assert_eq!(doc.units.len(), 6);
        assert_eq!(doc.relations.len(), 7);
        assert_eq!(doc.root, "Introduction");
        assert!(validate_document(&doc).is_empty());
    }

    #[test]
    fn rejects_ecu_with_foreign_main_unit() {
        let input = r#"{
            "title": "bad",
            "root": "x",
            "units": [
                {"id": "x", "kind": "esu", "media": "text", "duration_s": 1},
                {"id": "y", "kind": "esu", "media": "text", "duration_s": 1},
                {"id": "z", "kind": "esu", "media": "text", "duration_s": 1},
                {"id": "c", "kind": "ecu", "members": ["x", "y"], "main_unit": "z"}
            ],
            "relations": []
        }"#;
        match parse_document_spec(input) {
            Err(ParseError::Model { subject, .. }) => assert_eq!(subject, "c"),
            other => panic!("expected model error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_ids() {
        let input = r#"{
            "title": "dup",
            "root": "a",
            "units": [
                {"id": "a", "kind": "esu", "media": "text", "duration_s": 1},
                {"id": "a", "kind": "esu", "media": "text", "duration_s": 2}
            ],
            "relations": []
        }"#;
        assert!(matches!(
            parse_document_spec(input),
            Err(ParseError::Model { .. })
        ));
    }

    #[test]
    fn rejects_unknown_fields() {
        let input = r#"{
            "title": "extra",
            "root": "a",
            "units": [{"id": "a", "kind": "esu", "media": "text", "duration_s": 5, "color": "red"}],
            "relations": []
        }"#;
        assert!(matches!(
            parse_document_spec(input),
            Err(ParseError::Schema(_))
        ));
    }

    #[test]
    fn rejects_relation_with_unknown_id() {
        let input = r#"{
            "title": "ref",
            "root": "a",
            "units": [{"id": "a", "kind": "esu", "media": "text", "duration_s": 5}],
            "relations": [{"category": "nucleus_satellite", "rel_type": "Cause", "nucleus": "a", "satellite": "ghost"}]
        }"#;
        assert!(matches!(
            parse_document_spec(input),
            Err(ParseError::Reference { .. })
        ));
    }

    #[test]
    fn rejects_malformed_json_as_syntax_error() {
        assert!(matches!(
            parse_document_spec("{not json"),
            Err(ParseError::Syntax(_))
        ));
    }

    #[test]
    fn profile_hierarchy_must_be_permutation() {
        let dup = r#"{"media_hierarchy": ["text", "text", "video", "audio"]}"#;
        assert!(matches!(
            parse_user_profile(dup),
            Err(ParseError::Hierarchy(_))
        ));
        let short = r#"{"media_hierarchy": ["text", "image"]}"#;
        assert!(matches!(
            parse_user_profile(short),
            Err(ParseError::Hierarchy(_))
        ));
    }

    #[test]
    fn profile_topics_are_optional() {
        let input = r#"{"media_hierarchy": ["image", "text", "video", "audio"]}"#;
        let profile = parse_user_profile(input).unwrap();
        assert_eq!(profile.media_hierarchy[0], MediaType::Image);
        assert!(profile.topics.is_empty());
        assert!(!profile.interactive);
    }

    #[test]
    fn profile_topic_weight_bounds() {
        let input = r#"{
            "media_hierarchy": ["text", "image", "video", "audio"],
            "topics": [{"tag": "space", "weight": 1.5}]
        }"#;
        assert!(matches!(
            parse_user_profile(input),
            Err(ParseError::Model { .. })
        ));
    }

    #[test]
    fn budget_must_be_positive() {
        assert!(SummaryBudget::new(600.0).is_ok());
        assert!(SummaryBudget::new(0.0).is_err());
        assert!(SummaryBudget::new(-3.0).is_err());
        assert!(SummaryBudget::new(f64::NAN).is_err());
    }

    #[test]
    fn serialize_parse_round_trip_on_fixture() {
        let input = include_str!("../fixtures/space_history.json");
        let doc = parse_document_spec(input).unwrap();
        let round = parse_document_spec(&serialize_document_spec(&doc)).unwrap();
        assert_eq!(doc, round);
    }
}
