//! Location-based dialect gating.
//!
//! A tweet is kept when its `location` metadata, normalized under the
//! location profile, contains any term from a [`TermList`]. The default
//! list (`egypt-default`, 52 entries) ships in `data/egypt_terms.txt` and
//! is a reconstruction; pass your own file to override it.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::normalize::{normalize, NormalizationProfile};

const DEFAULT_TERMS: &str = include_str!("../data/egypt_terms.txt");

/// An ordered set of location terms, stored pre-normalized (and
/// case-folded) under the profile they will be matched with.
#[derive(Debug, Clone)]
pub struct TermList {
    name: String,
    terms: Vec<String>,
}

impl TermList {
    /// Parse a term list: UTF-8, one term per line, `#` starts a comment
    /// line, blank lines ignored. Terms are canonicalized under `profile`
    /// and duplicates (after canonicalization) are collapsed, keeping first
    /// occurrence order. A term that normalizes to the empty string is a
    /// config error.
    pub fn parse(name: &str, content: &str, profile: &NormalizationProfile) -> Result<Self> {
        let mut terms = Vec::new();
        let mut seen = HashSet::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let canon = normalize(line, profile).to_lowercase();
            if canon.is_empty() {
                return Err(Error::config(format!(
                    "term list {name:?} line {}: term {line:?} normalizes to the empty string",
                    lineno + 1
                )));
            }
            if seen.insert(canon.clone()) {
                terms.push(canon);
            }
        }
        Ok(TermList {
            name: name.to_string(),
            terms,
        })
    }

    pub fn load(path: &Path, profile: &NormalizationProfile) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "terms".to_string());
        Self::parse(&name, &content, profile)
    }

    /// The built-in Egyptian list.
    pub fn egypt_default(profile: &NormalizationProfile) -> Self {
        Self::parse("egypt-default", DEFAULT_TERMS, profile)
            .expect("embedded default term list must parse")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// True iff the normalized location contains at least one term as a
/// substring, with Latin text compared case-insensitively. Empty or absent
/// locations never match.
pub fn match_location(
    location_raw: &str,
    terms: &TermList,
    profile: &NormalizationProfile,
) -> bool {
    if location_raw.is_empty() {
        return false;
    }
    let canon = normalize(location_raw, profile).to_lowercase();
    if canon.is_empty() {
        return false;
    }
    terms.terms.iter().any(|t| canon.contains(t.as_str()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (TermList, NormalizationProfile) {
        let profile = NormalizationProfile::location();
        (TermList::egypt_default(&profile), profile)
    }

    #[test]
    fn default_list_has_52_canonical_terms() {
        let (list, profile) = setup();
        assert_eq!(list.len(), 52);
        for term in list.terms() {
            assert!(!term.is_empty());
            assert_eq!(&normalize(term, &profile).to_lowercase(), term);
        }
    }

    #[test]
    fn english_location_matches() {
        let (list, profile) = setup();
        assert!(match_location("Cairo, Egypt", &list, &profile));
    }

    #[test]
    fn foreign_location_does_not_match() {
        let (list, profile) = setup();
        assert!(!match_location("Riyadh, KSA", &list, &profile));
        assert!(!match_location("", &list, &profile));
    }

    #[test]
    fn tatweel_and_flag_location_matches() {
        let (list, profile) = setup();
        // Normalize-then-substring oracle: tatweel is removed before the
        // containment test, so the stretched spelling still matches.
        let raw = "القـــاهرة 🇪🇬";
        let canon = normalize(raw, &profile).to_lowercase();
        assert!(canon.contains("القاهرة"));
        assert!(match_location(raw, &list, &profile));
        // The flag alone is itself a term.
        assert!(match_location("🇪🇬", &list, &profile));
    }

    #[test]
    fn matching_invariant_under_pre_normalization() {
        let (list, profile) = setup();
        for raw in ["القـــاهرة 🇪🇬", "Çairo!", "riyadh", "مَصر", "Alexandria, VA"] {
            let pre = normalize(raw, &profile);
            assert_eq!(
                match_location(raw, &list, &profile),
                match_location(&pre, &list, &profile),
                "mismatch for {raw:?}"
            );
        }
    }

    #[test]
    fn empty_list_matches_nothing() {
        let profile = NormalizationProfile::location();
        let empty = TermList::parse("empty", "# nothing here\n", &profile).unwrap();
        assert!(!match_location("Cairo", &empty, &profile));
    }

    #[test]
    fn duplicate_terms_collapse() {
        let profile = NormalizationProfile::location();
        let list = TermList::parse("t", "Cairo\ncairo\nCAIRO\ngiza\n", &profile).unwrap();
        assert_eq!(list.terms(), ["cairo", "giza"]);
    }

    #[test]
    fn term_normalizing_to_empty_is_rejected() {
        let profile = NormalizationProfile::location();
        assert!(TermList::parse("t", "!!!\n", &profile).is_err());
    }

    #[test]
    fn adding_a_term_is_monotone() {
        let profile = NormalizationProfile::location();
        let small = TermList::parse("s", "cairo\n", &profile).unwrap();
        let big = TermList::parse("b", "cairo\nriyadh\n", &profile).unwrap();
        for loc in ["Cairo", "Riyadh", "Tanta", "القاهرة"] {
            if match_location(loc, &small, &profile) {
                assert!(match_location(loc, &big, &profile));
            }
        }
    }
}
