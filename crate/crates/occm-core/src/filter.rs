//! Redundancy removal: one representative pattern per distinct k-cover.
//!
//! Patterns inducing the same k-cover describe the same cluster, so only the
//! largest one is kept. Processing in size-ascending order and overwriting a
//! cover's map entry leaves exactly the maximal pattern per cover; equal-size
//! ties go to the item-lexicographically greatest pattern so results are
//! reproducible.

use std::collections::{BTreeMap, HashMap};

use crate::data::{k_covers_of, k_covers_of_seq, CoverSet, Pattern, TransactionDB};
use crate::error::Error;
use crate::miner::PatternCollection;
use crate::Result;

/// Partial map from k-cover to its current representative pattern.
#[derive(Default)]
pub struct CoverMap {
    map: HashMap<CoverSet, Pattern>,
}

impl CoverMap {
    pub fn new() -> Self {
        CoverMap::default()
    }

    /// Insert, overwriting any previous pattern with the same cover;
    /// returns the displaced pattern.
    pub fn insert(&mut self, cover: CoverSet, pattern: Pattern) -> Option<Pattern> {
        self.map.insert(cover, pattern)
    }

    pub fn get(&self, cover: &CoverSet) -> Option<&Pattern> {
        self.map.get(cover)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CoverSet, &Pattern)> {
        self.map.iter()
    }

    /// Recheck that every stored pattern's k-cover equals its key.
    pub fn verify(&self, db: &TransactionDB, k: usize) -> Result<bool> {
        for (cover, pattern) in &self.map {
            if &crate::data::k_cover(pattern, db, k)? != cover {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of a filtering pass.
#[derive(Clone, Debug)]
pub struct FilterReport {
    /// |A|: patterns before filtering.
    pub before: usize,
    /// |A_f|: patterns after filtering.
    pub after: usize,
    /// 100·(|A|−|A_f|)/|A|; 0 for empty input (see `empty_input`).
    pub delta_percent: f64,
    /// cover-class size -> number of classes of that size
    pub class_histogram: BTreeMap<usize, usize>,
    /// The reduction is undefined on empty input; reported as 0 and flagged.
    pub empty_input: bool,
}

impl FilterReport {
    fn from_counts(before: usize, after: usize, class_histogram: BTreeMap<usize, usize>) -> Self {
        let empty_input = before == 0;
        let delta_percent = if empty_input {
            0.0
        } else {
            100.0 * (before - after) as f64 / before as f64
        };
        FilterReport {
            before,
            after,
            delta_percent,
            class_histogram,
            empty_input,
        }
    }
}

/// Keep one maximal pattern per distinct k-cover.
///
/// Cached covers are reused when they were computed over `db` with this `k`;
/// otherwise covers are recomputed (in parallel under the default feature).
pub fn filter_redundant(
    patterns: &PatternCollection,
    db: &TransactionDB,
    k: usize,
) -> Result<(PatternCollection, FilterReport)> {
    filter_with(patterns, db, k, k_covers_of)
}

/// Single-threaded variant of [`filter_redundant`].
pub fn filter_redundant_seq(
    patterns: &PatternCollection,
    db: &TransactionDB,
    k: usize,
) -> Result<(PatternCollection, FilterReport)> {
    filter_with(patterns, db, k, k_covers_of_seq)
}

fn filter_with(
    patterns: &PatternCollection,
    db: &TransactionDB,
    k: usize,
    covers_of: fn(&[Pattern], &TransactionDB, usize) -> Result<Vec<CoverSet>>,
) -> Result<(PatternCollection, FilterReport)> {
    let covers: Vec<CoverSet> = if patterns.cache_valid_for(db, k) {
        patterns.covers().to_vec()
    } else {
        covers_of(patterns.patterns(), db, k)?
    };

    // collection order is size-ascending and lexicographic within a size, so
    // the last writer per cover is the maximal representative
    let mut map = CoverMap::new();
    let mut class_sizes: HashMap<CoverSet, usize> = HashMap::new();
    for (pattern, cover) in patterns.patterns().iter().zip(covers.iter()) {
        *class_sizes.entry(cover.clone()).or_insert(0) += 1;
        map.insert(cover.clone(), pattern.clone());
    }

    let mut class_histogram = BTreeMap::new();
    for (_, count) in class_sizes {
        *class_histogram.entry(count).or_insert(0) += 1;
    }

    let survivors: Vec<(Pattern, CoverSet)> = map
        .map
        .into_iter()
        .map(|(cover, pattern)| (pattern, cover))
        .collect();
    let report = FilterReport::from_counts(patterns.len(), survivors.len(), class_histogram);
    let filtered =
        PatternCollection::from_parts(survivors, *patterns.provenance(), *patterns.stats());
    Ok((filtered, report))
}

/// Redundancy census for a k-cover, per the closed-form count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RedundancyCount {
    /// The census hypotheses hold; `m` patterns of the form `Q ∪ E` with
    /// `E ⊆ R`, `|E| = k` share the cover.
    Count(u64),
    /// The common core is empty, or some residual item occurs in more than
    /// one member transaction.
    NotApplicable,
}

/// Number of distinct k-RFPs of the form `Q ∪ E` sharing the cover `h`,
/// where `Q` is the intersection of the member transactions and `E` draws
/// `k` items from the residue `R`.
///
/// Applicable only when `Q` is non-empty and every item of `R` occurs in
/// exactly one member transaction; then the count is `C(|R|, k)`.
pub fn redundancy_count(
    h: &CoverSet,
    db: &TransactionDB,
    k: usize,
) -> Result<RedundancyCount> {
    let members = h.cardinality();
    if members < 3 {
        return Err(Error::CensusCoverTooSmall { got: members });
    }

    let mut core = crate::bitset::Bitset::full(db.universe().len());
    let mut union = crate::bitset::Bitset::new(db.universe().len());
    for tid in h.indices() {
        core.intersect_with(db.transaction(tid));
        union.union_with(db.transaction(tid));
    }
    if core.is_empty() {
        return Ok(RedundancyCount::NotApplicable);
    }

    // residue = union minus core; each residue item must be unique to one
    // member transaction
    let mut residue_size = 0usize;
    for item in union.ones() {
        if core.contains(item) {
            continue;
        }
        let occurrences = h
            .indices()
            .filter(|&tid| db.transaction(tid).contains(item))
            .count();
        if occurrences != 1 {
            return Ok(RedundancyCount::NotApplicable);
        }
        residue_size += 1;
    }

    Ok(RedundancyCount::Count(binomial(residue_size, k)))
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial count exceeds u64")
}
