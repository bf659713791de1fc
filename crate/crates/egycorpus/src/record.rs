use serde::{Deserialize, Serialize};

/// Origin of a record, which also selects the cleaning pipeline applied to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Tweet,
    Forum,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Tweet => "tweet",
            Source::Forum => "forum",
        }
    }
}

impl std::str::FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tweet" => Ok(Source::Tweet),
            "forum" => Ok(Source::Forum),
            other => Err(format!("unknown source `{other}`")),
        }
    }
}

/// An ingested unit (tweet or forum block) before cleaning.
///
/// `id` is the tweet id for tweets, or `<relative path>#<block index>` for
/// forum blocks. `location` is the raw tweet location field and is absent
/// for forum records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    pub id: String,
    pub text: String,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
}

/// One cleaned corpus line with provenance.
///
/// The text is a single line: no newlines or tabs survive cleaning, and the
/// record passed the minimum-word and majority-English filters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanRecord {
    pub id: String,
    pub text: String,
    pub source: Source,
}

/// Why a record was dropped. Every reason maps to a counter in the stats
/// report; per-record drops never abort a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropReason {
    /// Tweet location did not match the term list.
    NotEgyptian,
    /// Input line was not parseable (bad JSON, missing fields).
    ParseError,
    /// Fewer words than the configured minimum after cleaning.
    MinWords,
    /// More than the configured fraction of tokens is English.
    MajorityEnglish,
    /// Exact text already seen earlier in the stream.
    Duplicate,
    /// File could not be read.
    UnreadableFile,
}

impl DropReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DropReason::NotEgyptian => "not_egyptian",
            DropReason::ParseError => "parse_error",
            DropReason::MinWords => "min_words",
            DropReason::MajorityEnglish => "majority_english",
            DropReason::Duplicate => "duplicate",
            DropReason::UnreadableFile => "unreadable_file",
        }
    }
}
