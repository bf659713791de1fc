//! Record-level cleaning transforms and the two composite pipelines.
//!
//! Every transform is pure, never grows the text, and finishes by
//! collapsing whitespace runs to single spaces and trimming, so composing
//! transforms directly equals running them with explicit whitespace
//! collapse steps in between. The tweet pipeline applies, in order: URL/
//! mention/hashtag removal, whitespace collapse, large-number removal,
//! letter-run limiting, other-character-run limiting. The forum pipeline
//! additionally removes emails first and BBCode tags, HTML tags, and
//! percent-encoded sequences at the end. Deduplication is corpus-level and
//! lives in [`crate::corpus`].

use std::sync::LazyLock;

use regex::Regex;
use unicode_segmentation::UnicodeSegmentation;

use crate::normalize::{cap_letter_runs, collapse_whitespace};
use crate::record::{CleanRecord, DropReason, RawRecord, Source};

/// Knobs for the cleaning pipelines. Defaults follow the rules the
/// pipelines were built around: letter runs capped at five, other runs at
/// four, digit runs longer than seven removed, records under three words
/// or more than half English dropped.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct CleanConfig {
    pub max_letter_run: usize,
    pub max_other_run: usize,
    pub max_digit_run_kept: usize,
    pub min_words: usize,
    pub english_majority_threshold: f64,
    /// Keep the hashtag body (drop only the `#`). Off by default: hashtags
    /// are removed as whole tokens.
    pub keep_hashtag_body: bool,
}

impl Default for CleanConfig {
    fn default() -> Self {
        CleanConfig {
            max_letter_run: 5,
            max_other_run: 4,
            max_digit_run_kept: 7,
            min_words: 3,
            english_majority_threshold: 0.5,
            keep_hashtag_body: false,
        }
    }
}

impl CleanConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_letter_run < 1 || self.max_other_run < 1 || self.max_digit_run_kept < 1 {
            return Err("run caps must be >= 1".into());
        }
        if self.min_words < 1 {
            return Err("min_words must be >= 1".into());
        }
        if !(self.english_majority_threshold > 0.0 && self.english_majority_threshold <= 1.0) {
            return Err("english_majority_threshold must be in (0, 1]".into());
        }
        Ok(())
    }
}

/// Result of cleaning one record: either a kept record or the reason it
/// was dropped, for the stats counters.
#[derive(Debug, Clone, PartialEq)]
pub enum CleanOutcome {
    Kept(CleanRecord),
    Dropped(DropReason),
}

impl CleanOutcome {
    pub fn into_option(self) -> Option<CleanRecord> {
        match self {
            CleanOutcome::Kept(r) => Some(r),
            CleanOutcome::Dropped(_) => None,
        }
    }
}

fn is_url_token(token: &str) -> bool {
    let lower = token.to_ascii_lowercase();
    lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.")
}

fn is_email_token(token: &str) -> bool {
    let Some((local, domain)) = token.split_once('@') else {
        return false;
    };
    if local.is_empty() || domain.is_empty() || domain.contains('@') {
        return false;
    }
    match domain.split_once('.') {
        Some((host, tld)) => !host.is_empty() && !tld.is_empty(),
        None => false,
    }
}

fn retain_tokens(text: &str, mut keep: impl FnMut(&str) -> Option<String>) -> String {
    let mut out = String::with_capacity(text.len());
    for token in text.split_whitespace() {
        if let Some(kept) = keep(token) {
            if !kept.is_empty() {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(&kept);
            }
        }
    }
    out
}

/// Drop URL, @-mention, and #-hashtag tokens whole; remaining tokens are
/// joined by single spaces.
pub fn remove_urls_mentions_hashtags(text: &str) -> String {
    remove_urls_mentions_hashtags_with(text, false)
}

/// Like [`remove_urls_mentions_hashtags`], optionally keeping hashtag
/// bodies (`#tag` becomes `tag`).
pub fn remove_urls_mentions_hashtags_with(text: &str, keep_hashtag_body: bool) -> String {
    retain_tokens(text, |token| {
        if is_url_token(token) || token.starts_with('@') {
            return None;
        }
        if let Some(body) = token.strip_prefix('#') {
            if keep_hashtag_body {
                return Some(body.to_string());
            }
            return None;
        }
        Some(token.to_string())
    })
}

/// Drop URL tokens whole.
pub fn remove_urls(text: &str) -> String {
    retain_tokens(text, |t| (!is_url_token(t)).then(|| t.to_string()))
}

/// Drop email-address tokens whole.
pub fn remove_emails(text: &str) -> String {
    retain_tokens(text, |t| (!is_email_token(t)).then(|| t.to_string()))
}

fn is_digit_char(c: char) -> bool {
    c.is_ascii_digit() || ('\u{0660}'..='\u{0669}').contains(&c) || ('\u{06F0}'..='\u{06F9}').contains(&c)
}

/// Delete every maximal digit run longer than `max_kept` digits. ASCII and
/// Arabic-Indic digits form a single run class; shorter runs are untouched.
pub fn remove_large_numbers(text: &str, max_kept: usize) -> String {
    retain_tokens(text, |token| {
        let mut kept = String::with_capacity(token.len());
        let mut run = String::new();
        for c in token.chars() {
            if is_digit_char(c) {
                run.push(c);
            } else {
                if run.chars().count() <= max_kept {
                    kept.push_str(&run);
                }
                run.clear();
                kept.push(c);
            }
        }
        if run.chars().count() <= max_kept {
            kept.push_str(&run);
        }
        Some(kept)
    })
}

/// Truncate runs of the same letter codepoint to `max_letter_run`.
pub fn limit_letter_repetition(text: &str, max_letter_run: usize) -> String {
    collapse_whitespace(&cap_letter_runs(text, max_letter_run.max(1)))
}

/// Truncate runs of identical non-letter grapheme clusters (punctuation,
/// emoji, digits) to `max_other_run`.
pub fn limit_char_repetition(text: &str, max_other_run: usize) -> String {
    let cap = max_other_run.max(1);
    let mut out = String::with_capacity(text.len());
    let mut run_cluster = "";
    let mut run_len = 0usize;
    for cluster in text.graphemes(true) {
        if cluster == run_cluster {
            run_len += 1;
        } else {
            run_cluster = cluster;
            run_len = 1;
        }
        let is_letter = cluster.chars().next().is_some_and(char::is_alphabetic);
        if !is_letter && run_len > cap {
            continue;
        }
        out.push_str(cluster);
    }
    collapse_whitespace(&out)
}

static BBCODE_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"\[/?[a-zA-Z][a-zA-Z0-9]*(?:=[^\[\]]*)?\]|\[\*\]").unwrap()
});
static HTML_TAG_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"<[^>]*>").unwrap());
static PERCENT_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"%[0-9a-fA-F]{2}").unwrap());

fn replace_to_fixpoint(re: &Regex, text: &str) -> String {
    let mut current = text.to_string();
    loop {
        let next = re.replace_all(&current, "");
        if next == current {
            return current;
        }
        current = next.into_owned();
    }
}

/// Remove `[tag]`/`[/tag]` BBCode markers, keeping the enclosed text.
pub fn remove_bbcode(text: &str) -> String {
    collapse_whitespace(&replace_to_fixpoint(&BBCODE_RE, text))
}

/// Remove `<...>` tag markers, keeping the enclosed text.
pub fn remove_html_tags(text: &str) -> String {
    collapse_whitespace(&replace_to_fixpoint(&HTML_TAG_RE, text))
}

/// Remove `%XX` percent-encoded byte sequences.
pub fn remove_percent_encoded(text: &str) -> String {
    collapse_whitespace(&replace_to_fixpoint(&PERCENT_RE, text))
}

/// Number of maximal non-whitespace runs.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}

/// True iff the fraction of English tokens exceeds `threshold`. A token is
/// English when more than half of its alphabetic characters are ASCII
/// Latin; a text with no tokens is not majority-English.
pub fn is_majority_english(text: &str, threshold: f64) -> bool {
    let mut total = 0usize;
    let mut english = 0usize;
    for token in text.split_whitespace() {
        total += 1;
        let mut alpha = 0usize;
        let mut latin = 0usize;
        for c in token.chars() {
            if c.is_alphabetic() {
                alpha += 1;
                if c.is_ascii_alphabetic() {
                    latin += 1;
                }
            }
        }
        if latin * 2 > alpha {
            english += 1;
        }
    }
    if total == 0 {
        return false;
    }
    english as f64 / total as f64 > threshold
}

/// The tweet text pipeline (no filters): URL/mention/hashtag removal,
/// whitespace collapse, large-number removal, letter-run limit,
/// other-run limit.
pub fn clean_tweet_text(text: &str, cfg: &CleanConfig) -> String {
    let t = remove_urls_mentions_hashtags_with(text, cfg.keep_hashtag_body);
    let t = collapse_whitespace(&t);
    let t = remove_large_numbers(&t, cfg.max_digit_run_kept);
    let t = limit_letter_repetition(&t, cfg.max_letter_run);
    limit_char_repetition(&t, cfg.max_other_run)
}

/// The forum text pipeline (no filters): URL removal, email removal,
/// whitespace collapse, large-number removal, run limits, then BBCode,
/// HTML tag, and percent-encoding removal.
pub fn clean_forum_text(text: &str, cfg: &CleanConfig) -> String {
    let t = remove_urls(text);
    let t = remove_emails(&t);
    let t = collapse_whitespace(&t);
    let t = remove_large_numbers(&t, cfg.max_digit_run_kept);
    let t = limit_letter_repetition(&t, cfg.max_letter_run);
    let t = limit_char_repetition(&t, cfg.max_other_run);
    let t = remove_bbcode(&t);
    let t = remove_html_tags(&t);
    remove_percent_encoded(&t)
}

fn filter_cleaned(raw: &RawRecord, text: String, cfg: &CleanConfig) -> CleanOutcome {
    if word_count(&text) < cfg.min_words {
        return CleanOutcome::Dropped(DropReason::MinWords);
    }
    if is_majority_english(&text, cfg.english_majority_threshold) {
        return CleanOutcome::Dropped(DropReason::MajorityEnglish);
    }
    CleanOutcome::Kept(CleanRecord {
        id: raw.id.clone(),
        text,
        source: raw.source,
    })
}

/// Run the tweet pipeline on one record and apply the min-words and
/// majority-English filters. Deduplication is not performed here.
pub fn clean_tweet(raw: &RawRecord, cfg: &CleanConfig) -> CleanOutcome {
    debug_assert_eq!(raw.source, Source::Tweet);
    filter_cleaned(raw, clean_tweet_text(&raw.text, cfg), cfg)
}

/// Run the forum pipeline on one record and apply the same filters.
pub fn clean_forum(raw: &RawRecord, cfg: &CleanConfig) -> CleanOutcome {
    debug_assert_eq!(raw.source, Source::Forum);
    filter_cleaned(raw, clean_forum_text(&raw.text, cfg), cfg)
}

/// Dispatch on the record's source.
pub fn clean_record(raw: &RawRecord, cfg: &CleanConfig) -> CleanOutcome {
    match raw.source {
        Source::Tweet => clean_tweet(raw, cfg),
        Source::Forum => clean_forum(raw, cfg),
    }
}

/// Check every invariant a kept record must satisfy. Used by tests and the
/// `--paranoid` pipeline mode.
pub fn validate_clean_record(record: &CleanRecord, cfg: &CleanConfig) -> Result<(), String> {
    let text = &record.text;
    if text.contains('\n') || text.contains('\t') || text.contains('\r') {
        return Err("text contains newline or tab".into());
    }
    if word_count(text) < cfg.min_words {
        return Err(format!("fewer than {} words", cfg.min_words));
    }
    for token in text.split_whitespace() {
        if is_url_token(token) {
            return Err(format!("URL token survived: {token:?}"));
        }
        if token.starts_with('@') && record.source == Source::Tweet {
            return Err(format!("mention token survived: {token:?}"));
        }
    }
    if is_majority_english(text, cfg.english_majority_threshold) {
        return Err("majority English".into());
    }
    Ok(())
}
