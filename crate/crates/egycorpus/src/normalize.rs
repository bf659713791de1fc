//! Character-level Arabic/Latin normalization.
//!
//! Used to canonicalize the tweet `location` field before term matching,
//! and reusable as a general text utility. Transformations run in a fixed
//! order: letter unification, diacritic strip, tatweel strip, Latin accent
//! fold, symbol/punctuation/emoji strip, letter-run collapse, whitespace
//! collapse and trim. The function is idempotent for any profile.
//!
//! The Arabic letter-unification table and the diacritics set are loaded
//! from `data/arabic_letter_map.tsv` and `data/arabic_diacritics.txt`,
//! which are embedded at compile time.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use unicode_normalization::char::{decompose_canonical, is_combining_mark};
use unicode_properties::{EmojiStatus, GeneralCategoryGroup, UnicodeEmoji, UnicodeGeneralCategory};
use unicode_segmentation::UnicodeSegmentation;

const LETTER_MAP_TSV: &str = include_str!("../data/arabic_letter_map.tsv");
const DIACRITICS_TXT: &str = include_str!("../data/arabic_diacritics.txt");

/// The Egyptian flag emoji, allowlisted by the default location profile.
pub const EGYPT_FLAG: &str = "\u{1F1EA}\u{1F1EC}";

/// Which transformations `normalize` applies.
///
/// `Default` is the identity profile (all flags off); `location()` is the
/// aggressive profile used on tweet location fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct NormalizationProfile {
    /// Map alef variants (hamza above/below, madda, wasla) to bare alef and
    /// alef maqsura to ya.
    pub unify_arabic_letters: bool,
    /// Additionally map taa marbuta to haa. Off by default.
    pub unify_taa_marbuta: bool,
    /// Remove Arabic short vowels, shadda, sukun, and tanween.
    pub strip_diacritics: bool,
    /// Remove the Arabic letter-extension character (U+0640).
    pub strip_tatweel: bool,
    /// Fold accented Latin letters to their unaccented ASCII base.
    pub fold_latin_accents: bool,
    /// Drop punctuation and symbol characters. Emoji are carved out of this
    /// category and controlled by `strip_emoji`.
    pub strip_symbols_punct: bool,
    /// Drop emoji grapheme clusters.
    pub strip_emoji: bool,
    /// Grapheme clusters never stripped, matched exactly.
    pub emoji_allowlist: BTreeSet<String>,
    /// Cap on consecutive identical letter codepoints, if any.
    pub collapse_letter_runs: Option<usize>,
    /// Collapse whitespace runs to single spaces and trim. Enabled by every
    /// shipped profile; runs last.
    pub collapse_whitespace: bool,
}

impl Default for NormalizationProfile {
    fn default() -> Self {
        NormalizationProfile {
            unify_arabic_letters: false,
            unify_taa_marbuta: false,
            strip_diacritics: false,
            strip_tatweel: false,
            fold_latin_accents: false,
            strip_symbols_punct: false,
            strip_emoji: false,
            emoji_allowlist: BTreeSet::new(),
            collapse_letter_runs: None,
            collapse_whitespace: false,
        }
    }
}

impl NormalizationProfile {
    /// The profile applied to tweet location fields: everything on, letter
    /// runs collapsed to one, with the Egyptian flag allowlisted.
    pub fn location() -> Self {
        NormalizationProfile {
            unify_arabic_letters: true,
            unify_taa_marbuta: false,
            strip_diacritics: true,
            strip_tatweel: true,
            fold_latin_accents: true,
            strip_symbols_punct: true,
            strip_emoji: true,
            emoji_allowlist: BTreeSet::from([EGYPT_FLAG.to_string()]),
            collapse_letter_runs: Some(1),
            collapse_whitespace: true,
        }
    }

    fn is_identity(&self) -> bool {
        *self == NormalizationProfile::default()
    }
}

struct LetterMap {
    alef_ya: Vec<(char, char)>,
    taa_marbuta: Vec<(char, char)>,
}

fn parse_codepoint(field: &str) -> char {
    let hex = field
        .strip_prefix("U+")
        .unwrap_or_else(|| panic!("bad codepoint field `{field}` in letter map"));
    let value = u32::from_str_radix(hex, 16).expect("bad hex in letter map");
    char::from_u32(value).expect("invalid codepoint in letter map")
}

static LETTER_MAP: LazyLock<LetterMap> = LazyLock::new(|| {
    let mut map = LetterMap {
        alef_ya: Vec::new(),
        taa_marbuta: Vec::new(),
    };
    for line in LETTER_MAP_TSV.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let source = parse_codepoint(fields.next().expect("missing source column"));
        let target = parse_codepoint(fields.next().expect("missing target column"));
        let group = fields.next().expect("missing group column");
        match group {
            "alef" | "ya" => map.alef_ya.push((source, target)),
            "taa_marbuta" => map.taa_marbuta.push((source, target)),
            other => panic!("unknown letter-map group `{other}`"),
        }
    }
    map
});

static DIACRITICS: LazyLock<Vec<char>> = LazyLock::new(|| {
    DIACRITICS_TXT
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_codepoint(l.split('\t').next().unwrap()))
        .collect()
});

const TATWEEL: char = '\u{0640}';

fn is_arabic_diacritic(c: char) -> bool {
    DIACRITICS.contains(&c)
}

fn unify_letters(text: &str, taa_marbuta: bool) -> String {
    let map = &*LETTER_MAP;
    text.chars()
        .map(|c| {
            if let Some(&(_, t)) = map.alef_ya.iter().find(|&&(s, _)| s == c) {
                return t;
            }
            if taa_marbuta {
                if let Some(&(_, t)) = map.taa_marbuta.iter().find(|&&(s, _)| s == c) {
                    return t;
                }
            }
            c
        })
        .collect()
}

/// Fold precomposed accented Latin letters to their base letter and drop
/// combining marks that sit on an ASCII letter. Non-Latin text passes
/// through untouched.
fn fold_latin_accents(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if c.is_ascii() {
            out.push(c);
            continue;
        }
        if is_combining_mark(c) && out.chars().last().is_some_and(|p| p.is_ascii_alphabetic()) {
            continue;
        }
        let mut decomposed = Vec::new();
        decompose_canonical(c, |d| decomposed.push(d));
        if decomposed.first().is_some_and(|d| d.is_ascii_alphabetic()) {
            for d in decomposed {
                if !is_combining_mark(d) {
                    out.push(d);
                }
            }
        } else {
            out.push(c);
        }
    }
    out
}

fn is_regional_indicator(c: char) -> bool {
    ('\u{1F1E6}'..='\u{1F1FF}').contains(&c)
}

/// Whether a grapheme cluster renders as emoji: regional-indicator pairs,
/// default emoji-presentation characters, and text-default emoji upgraded
/// by a variation selector (VS16).
pub fn cluster_is_emoji(cluster: &str) -> bool {
    let Some(first) = cluster.chars().next() else {
        return false;
    };
    if is_regional_indicator(first) {
        return true;
    }
    match first.emoji_status() {
        EmojiStatus::EmojiPresentation
        | EmojiStatus::EmojiPresentationAndModifierBase
        | EmojiStatus::EmojiPresentationAndEmojiComponent
        | EmojiStatus::EmojiPresentationAndModifierAndEmojiComponent => true,
        EmojiStatus::NonEmoji | EmojiStatus::NonEmojiButEmojiComponent => false,
        // Text-default emoji (hearts, keycap bases, digits) only count when
        // the cluster requests emoji presentation via VS16.
        _ => cluster.contains('\u{FE0F}'),
    }
}

fn is_symbol_or_punct(c: char) -> bool {
    matches!(
        c.general_category_group(),
        GeneralCategoryGroup::Punctuation | GeneralCategoryGroup::Symbol
    )
}

fn strip_clusters(
    text: &str,
    strip_symbols_punct: bool,
    strip_emoji: bool,
    allowlist: &BTreeSet<String>,
) -> String {
    let mut out = String::with_capacity(text.len());
    for cluster in text.graphemes(true) {
        if allowlist.contains(cluster) {
            out.push_str(cluster);
            continue;
        }
        if cluster_is_emoji(cluster) {
            if !strip_emoji {
                out.push_str(cluster);
            }
            continue;
        }
        for c in cluster.chars() {
            if strip_symbols_punct && is_symbol_or_punct(c) {
                continue;
            }
            out.push(c);
        }
    }
    out
}

/// Truncate runs of the same letter codepoint to at most `cap` occurrences.
/// Non-letter characters are untouched.
pub(crate) fn cap_letter_runs(text: &str, cap: usize) -> String {
    let mut out = String::with_capacity(text.len());
    let mut run_char = '\0';
    let mut run_len = 0usize;
    for c in text.chars() {
        if c == run_char {
            run_len += 1;
        } else {
            run_char = c;
            run_len = 1;
        }
        if c.is_alphabetic() && run_len > cap {
            continue;
        }
        out.push(c);
    }
    out
}

/// Collapse all whitespace runs to single spaces and trim the ends.
pub fn collapse_whitespace(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for token in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(token);
    }
    out
}

/// Apply every transformation enabled in `profile`, in the documented
/// order. Total on valid Unicode text and idempotent; with the default
/// (all-off) profile it is the exact identity.
pub fn normalize(text: &str, profile: &NormalizationProfile) -> String {
    if profile.is_identity() {
        return text.to_string();
    }
    let mut current = if profile.unify_arabic_letters || profile.unify_taa_marbuta {
        unify_letters(text, profile.unify_taa_marbuta)
    } else {
        text.to_string()
    };
    if profile.strip_diacritics {
        current.retain(|c| !is_arabic_diacritic(c));
    }
    if profile.strip_tatweel {
        current.retain(|c| c != TATWEEL);
    }
    if profile.fold_latin_accents {
        current = fold_latin_accents(&current);
    }
    if profile.strip_symbols_punct || profile.strip_emoji {
        current = strip_clusters(
            &current,
            profile.strip_symbols_punct,
            profile.strip_emoji,
            &profile.emoji_allowlist,
        );
    }
    if let Some(cap) = profile.collapse_letter_runs {
        let cap = cap.max(1);
        current = cap_letter_runs(&current, cap);
    }
    if profile.collapse_whitespace {
        current = collapse_whitespace(&current);
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    fn location() -> NormalizationProfile {
        NormalizationProfile::location()
    }

    #[test]
    fn tatweel_removed() {
        assert_eq!(normalize("القـــاهرة", &location()), "القاهرة");
    }

    #[test]
    fn accent_fold_and_punct_strip() {
        assert_eq!(normalize("Çairo!", &location()), "Cairo");
    }

    /// Character-by-character reference for the location profile, written
    /// independently of the staged pipeline: walk clusters, keep the
    /// allowlisted flag, drop other emoji/marks/symbols, then tidy spaces.
    fn location_oracle(text: &str) -> String {
        let mut kept = String::new();
        for cluster in text.graphemes(true) {
            if cluster == EGYPT_FLAG {
                kept.push_str(cluster);
                continue;
            }
            for c in cluster.chars() {
                let folded = match c {
                    '\u{0622}' | '\u{0623}' | '\u{0625}' | '\u{0671}' => '\u{0627}',
                    '\u{0649}' => '\u{064A}',
                    _ => c,
                };
                if ('\u{064B}'..='\u{0652}').contains(&folded) || folded == '\u{0640}' {
                    continue;
                }
                if cluster_is_emoji(cluster) || is_symbol_or_punct(folded) {
                    continue;
                }
                kept.push(folded);
            }
        }
        collapse_whitespace(&cap_letter_runs(&kept, 1))
    }

    #[test]
    fn flag_allowlisted_heart_and_diacritic_removed() {
        let input = "مَصر 🇪🇬 ❤️";
        let expected = location_oracle(input);
        assert_eq!(expected, "مصر 🇪🇬");
        assert_eq!(normalize(input, &location()), expected);
    }

    #[test]
    fn alef_variants_unified() {
        // Four alef variants unify, then the run collapses to one.
        assert_eq!(normalize("أإآٱ", &location()), "ا");
        assert_eq!(normalize("إسكندرية", &location()), "اسكندرية");
        assert_eq!(normalize("مصطفى", &location()), "مصطفي");
    }

    #[test]
    fn taa_marbuta_off_by_default() {
        assert_eq!(normalize("القاهرة", &location()), "القاهرة");
        let mut profile = location();
        profile.unify_taa_marbuta = true;
        assert_eq!(normalize("القاهرة", &profile), "القاهره");
    }

    #[test]
    fn identity_profile_is_exact_identity() {
        let weird = "  a  b\t\nширокий نصّ 🇪🇬🇪🇬 %41 [b]x[/b]  ";
        assert_eq!(normalize(weird, &NormalizationProfile::default()), weird);
    }

    #[test]
    fn idempotent_on_samples() {
        let samples = [
            "مَصر 🇪🇬 ❤️",
            "Çairo!! ... القـــاهرةةةة",
            "😂😂😂 test ٠١٢٣ <b>bold</b>",
            "👨‍👩‍👧 family ﷺ",
            "e\u{0301}toile précédée",
        ];
        let profile = location();
        for s in samples {
            let once = normalize(s, &profile);
            assert_eq!(normalize(&once, &profile), once, "not idempotent on {s:?}");
        }
    }

    #[test]
    fn allowlist_count_preserved() {
        let text = "🇪🇬 x 🇪🇬🇪🇬 ❤️";
        let out = normalize(text, &location());
        let count = |s: &str| s.graphemes(true).filter(|g| *g == EGYPT_FLAG).count();
        assert_eq!(count(&out), count(text));
    }

    #[test]
    fn emoji_kept_when_only_symbols_stripped() {
        let mut profile = NormalizationProfile::default();
        profile.strip_symbols_punct = true;
        assert_eq!(normalize("ok! 😂", &profile), "ok 😂");
        profile.strip_emoji = true;
        assert_eq!(normalize("ok! 😂", &profile), "ok ");
    }

    #[test]
    fn letter_run_collapse() {
        let mut profile = NormalizationProfile::default();
        profile.collapse_letter_runs = Some(1);
        assert_eq!(normalize("cooool ههههه", &profile), "col ه");
        profile.collapse_letter_runs = Some(2);
        assert_eq!(normalize("cooool", &profile), "cool");
    }

    #[test]
    fn digits_pass_through_location_profile() {
        assert_eq!(normalize("sector 12", &location()), "sector 12");
    }
}
