//! Enumeration of k-relaxed frequent patterns and classical closed itemsets.
//!
//! Patterns are found by depth-first extension over items in ascending id
//! order. For a prefix larger than `k` the k-support can only shrink when
//! items are added, so an infrequent prefix prunes its whole subtree; at
//! depths `1..=k` no such bound exists (there the k-cover is the union of the
//! member items' covers, which grows) and enumeration is exhaustive.

use crate::bitset::Bitset;
use crate::data::{closure_of_cover, k_cover, CoverSet, Pattern, TransactionDB};
use crate::error::Error;
use crate::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Largest universe the bitset encoding will accept before erroring out.
pub const MAX_UNIVERSE: usize = 1 << 22;

/// Minimum-support threshold, absolute or as a fraction of `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Alpha {
    /// Absolute transaction count, `1..=n`.
    Absolute(usize),
    /// Fraction of the database in `(0, 1]`, resolved as `ceil(alpha * n)`.
    Fraction(f64),
}

impl Alpha {
    pub fn resolve(&self, n: usize) -> Result<usize> {
        match *self {
            Alpha::Absolute(a) => {
                if a == 0 {
                    return Err(Error::InvalidAlpha {
                        reason: "absolute support must be at least 1".into(),
                    });
                }
                if a > n {
                    return Err(Error::InfeasibleThreshold { alpha: a, n });
                }
                Ok(a)
            }
            Alpha::Fraction(f) => {
                if !(f > 0.0 && f <= 1.0) {
                    return Err(Error::InvalidAlpha {
                        reason: format!("fraction {f} outside (0, 1]"),
                    });
                }
                // interpret the float as a decimal with 9 places so that
                // inputs like 20% of 335 resolve to 67, not 68
                let num = (f * 1e9).round() as u128;
                if num == 0 {
                    return Err(Error::InvalidAlpha {
                        reason: format!("fraction {f} rounds to zero"),
                    });
                }
                let den = 1_000_000_000u128;
                let resolved = (num * n as u128).div_ceil(den) as usize;
                Ok(resolved.max(1))
            }
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Alpha::Absolute(a) => a.to_string(),
            Alpha::Fraction(f) => {
                let pct = f * 100.0;
                if (pct - pct.round()).abs() < 1e-9 {
                    format!("{}%", pct.round() as i64)
                } else {
                    format!("{pct}%")
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MiningConfig {
    pub k: usize,
    pub alpha: Alpha,
    /// Cap on emitted pattern size; defaults to the full universe. Pattern
    /// counts explode at low support, so runs should set this deliberately.
    pub max_pattern_size: Option<usize>,
    /// Keep only classically closed patterns.
    pub require_closed: bool,
}

impl MiningConfig {
    pub fn new(k: usize, alpha: Alpha) -> Self {
        MiningConfig {
            k,
            alpha,
            max_pattern_size: None,
            require_closed: false,
        }
    }

    pub fn with_max_pattern_size(mut self, max: usize) -> Self {
        self.max_pattern_size = Some(max);
        self
    }

    pub fn with_require_closed(mut self, yes: bool) -> Self {
        self.require_closed = yes;
        self
    }

    fn resolve(&self, db: &TransactionDB) -> Result<(usize, usize)> {
        let u = db.universe().len();
        if u > MAX_UNIVERSE {
            return Err(Error::CapacityExceeded {
                items: u,
                cap: MAX_UNIVERSE,
            });
        }
        let alpha = self.alpha.resolve(db.n())?;
        let max_size = self.max_pattern_size.unwrap_or(u);
        if max_size == 0 || max_size > u {
            return Err(Error::InvalidMaxPatternSize {
                got: max_size,
                universe: u,
            });
        }
        Ok((alpha, max_size))
    }
}

/// What produced a collection: relaxation, resolved threshold, and the
/// fingerprint of the database the cached covers were computed on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Provenance {
    pub k: usize,
    pub alpha: usize,
    pub db_fingerprint: u64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MiningStats {
    pub nodes_visited: u64,
    pub subtrees_pruned: u64,
}

/// Mined patterns with their cached k-covers, in canonical order
/// (size ascending, item-lexicographic within a size).
#[derive(Clone, Debug)]
pub struct PatternCollection {
    patterns: Vec<Pattern>,
    covers: Vec<CoverSet>,
    provenance: Provenance,
    stats: MiningStats,
}

impl PatternCollection {
    /// Assemble a collection from explicit patterns, computing their
    /// k-covers. Duplicate itemsets collapse.
    pub fn from_patterns(db: &TransactionDB, k: usize, patterns: Vec<Pattern>) -> Result<Self> {
        let mut entries = Vec::with_capacity(patterns.len());
        for p in patterns {
            let cov = k_cover(&p, db, k)?;
            entries.push((p, cov));
        }
        entries.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        entries.dedup_by(|a, b| a.0 == b.0);
        let alpha = entries
            .iter()
            .map(|(_, c)| c.cardinality())
            .min()
            .unwrap_or(0);
        let (patterns, covers) = entries.into_iter().unzip();
        Ok(PatternCollection {
            patterns,
            covers,
            provenance: Provenance {
                k,
                alpha,
                db_fingerprint: db.fingerprint(),
            },
            stats: MiningStats::default(),
        })
    }

    pub(crate) fn from_parts(
        mut entries: Vec<(Pattern, CoverSet)>,
        provenance: Provenance,
        stats: MiningStats,
    ) -> Self {
        entries.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        let (patterns, covers) = entries.into_iter().unzip();
        PatternCollection {
            patterns,
            covers,
            provenance,
            stats,
        }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn covers(&self) -> &[CoverSet] {
        &self.covers
    }

    pub fn pattern(&self, i: usize) -> &Pattern {
        &self.patterns[i]
    }

    pub fn cover(&self, i: usize) -> &CoverSet {
        &self.covers[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Pattern, &CoverSet)> {
        self.patterns.iter().zip(self.covers.iter())
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn stats(&self) -> &MiningStats {
        &self.stats
    }

    /// True when the cached covers are k-covers over `db` for this `k`.
    pub fn cache_valid_for(&self, db: &TransactionDB, k: usize) -> bool {
        self.provenance.k == k && self.provenance.db_fingerprint == db.fingerprint()
    }
}

/// All patterns `I` with `|I| <= max_pattern_size` and k-support at least
/// alpha (restricted to classically closed ones when `require_closed`).
pub fn mine_krfp(db: &TransactionDB, cfg: &MiningConfig) -> Result<PatternCollection> {
    #[cfg(feature = "parallel")]
    {
        mine_krfp_par(db, cfg)
    }
    #[cfg(not(feature = "parallel"))]
    {
        mine_krfp_seq(db, cfg)
    }
}

/// Single-threaded enumeration; same output as [`mine_krfp`].
pub fn mine_krfp_seq(db: &TransactionDB, cfg: &MiningConfig) -> Result<PatternCollection> {
    let (alpha, max_size) = cfg.resolve(db)?;
    let tidsets = db.item_tidsets();
    let mut dfs = Dfs::new(db, &tidsets, cfg.k, alpha, max_size, cfg.require_closed);
    for first in 0..db.universe().len() {
        dfs.run_root(first);
    }
    Ok(collect_mined(db, cfg.k, alpha, dfs.out, dfs.stats))
}

#[cfg(feature = "parallel")]
fn mine_krfp_par(db: &TransactionDB, cfg: &MiningConfig) -> Result<PatternCollection> {
    let (alpha, max_size) = cfg.resolve(db)?;
    let tidsets = db.item_tidsets();
    // each root item owns a disjoint prefix subtree; collect preserves
    // root order, so the merged output is schedule-independent
    let per_root: Vec<(Vec<(Bitset, Bitset)>, MiningStats)> = (0..db.universe().len())
        .into_par_iter()
        .map(|first| {
            let mut dfs = Dfs::new(db, &tidsets, cfg.k, alpha, max_size, cfg.require_closed);
            dfs.run_root(first);
            (dfs.out, dfs.stats)
        })
        .collect();
    let mut out = Vec::new();
    let mut stats = MiningStats::default();
    for (mut part, s) in per_root {
        out.append(&mut part);
        stats.nodes_visited += s.nodes_visited;
        stats.subtrees_pruned += s.subtrees_pruned;
    }
    Ok(collect_mined(db, cfg.k, alpha, out, stats))
}

fn collect_mined(
    db: &TransactionDB,
    k: usize,
    alpha: usize,
    out: Vec<(Bitset, Bitset)>,
    stats: MiningStats,
) -> PatternCollection {
    let entries = out
        .into_iter()
        .map(|(pat, cov)| (Pattern::new(pat).expect("miner emits non-empty"), CoverSet::new(cov)))
        .collect();
    PatternCollection::from_parts(
        entries,
        Provenance {
            k,
            alpha,
            db_fingerprint: db.fingerprint(),
        },
        stats,
    )
}

struct Dfs<'a> {
    db: &'a TransactionDB,
    tidsets: &'a [Bitset],
    k: usize,
    alpha: usize,
    max_size: usize,
    require_closed: bool,
    /// |I ∩ τ| per transaction for the current path.
    inter: Vec<u32>,
    path: Vec<usize>,
    pattern_bits: Bitset,
    out: Vec<(Bitset, Bitset)>,
    stats: MiningStats,
}

impl<'a> Dfs<'a> {
    fn new(
        db: &'a TransactionDB,
        tidsets: &'a [Bitset],
        k: usize,
        alpha: usize,
        max_size: usize,
        require_closed: bool,
    ) -> Self {
        Dfs {
            db,
            tidsets,
            k,
            alpha,
            max_size,
            require_closed,
            inter: vec![0; db.n()],
            path: Vec::new(),
            pattern_bits: Bitset::new(db.universe().len()),
            out: Vec::new(),
            stats: MiningStats::default(),
        }
    }

    fn run_root(&mut self, first: usize) {
        self.push(first);
        self.visit(first);
        self.pop(first);
    }

    fn push(&mut self, item: usize) {
        for tid in self.tidsets[item].ones() {
            self.inter[tid] += 1;
        }
        self.path.push(item);
        self.pattern_bits.insert(item);
    }

    fn pop(&mut self, item: usize) {
        for tid in self.tidsets[item].ones() {
            self.inter[tid] -= 1;
        }
        self.path.pop();
        self.pattern_bits.remove(item);
    }

    fn visit(&mut self, last: usize) {
        self.stats.nodes_visited += 1;
        let size = self.path.len() as u32;
        let k = self.k as u32;
        let mut kcover = Bitset::new(self.db.n());
        let mut ksup = 0usize;
        for (tid, &shared) in self.inter.iter().enumerate() {
            if shared >= 1 && size - shared <= k {
                kcover.insert(tid);
                ksup += 1;
            }
        }
        // adding items can only shrink the k-cover once |I| > k
        if self.path.len() > self.k && ksup < self.alpha {
            self.stats.subtrees_pruned += 1;
            return;
        }
        if ksup >= self.alpha && (!self.require_closed || self.is_closed_here()) {
            self.out.push((self.pattern_bits.clone(), kcover));
        }
        if self.path.len() < self.max_size {
            for next in last + 1..self.db.universe().len() {
                self.push(next);
                self.visit(next);
                self.pop(next);
            }
        }
    }

    fn is_closed_here(&self) -> bool {
        let mut cov = self.tidsets[self.path[0]].clone();
        for &item in &self.path[1..] {
            cov.intersect_with(&self.tidsets[item]);
        }
        if cov.is_empty() {
            return false;
        }
        let closure = closure_of_cover(&CoverSet::new(cov), self.db);
        closure == self.pattern_bits
    }
}

/// All classically closed itemsets with support at least alpha, via
/// closure extension with a prefix-preservation check so each closed set is
/// produced exactly once.
pub fn mine_closed(db: &TransactionDB, alpha: Alpha) -> Result<PatternCollection> {
    let u = db.universe().len();
    if u > MAX_UNIVERSE {
        return Err(Error::CapacityExceeded {
            items: u,
            cap: MAX_UNIVERSE,
        });
    }
    let a = alpha.resolve(db.n())?;
    let tidsets = db.item_tidsets();
    let mut out: Vec<(Bitset, Bitset)> = Vec::new();

    let full_cover = Bitset::full(db.n());
    let root = closure_of_cover(&CoverSet::new(full_cover.clone()), db);
    if !root.is_empty() {
        out.push((root.clone(), full_cover.clone()));
    }
    closed_extend(db, &tidsets, a, &root, &full_cover, 0, &mut out);

    let entries = out
        .into_iter()
        .map(|(pat, cov)| (Pattern::new(pat).expect("closed sets are non-empty"), CoverSet::new(cov)))
        .collect();
    Ok(PatternCollection::from_parts(
        entries,
        Provenance {
            k: 0,
            alpha: a,
            db_fingerprint: db.fingerprint(),
        },
        MiningStats::default(),
    ))
}

fn closed_extend(
    db: &TransactionDB,
    tidsets: &[Bitset],
    alpha: usize,
    current: &Bitset,
    cover: &Bitset,
    start: usize,
    out: &mut Vec<(Bitset, Bitset)>,
) {
    for item in start..db.universe().len() {
        if current.contains(item) {
            continue;
        }
        let new_cover = cover.intersection(&tidsets[item]);
        if new_cover.count_ones() < alpha {
            continue;
        }
        let closure = closure_of_cover(&CoverSet::new(new_cover.clone()), db);
        // accept only when closing adds nothing below the extension item,
        // otherwise this closed set is reachable from an earlier prefix
        if items_below_equal(&closure, current, item) {
            out.push((closure.clone(), new_cover.clone()));
            closed_extend(db, tidsets, alpha, &closure, &new_cover, item + 1, out);
        }
    }
}

fn items_below_equal(a: &Bitset, b: &Bitset, limit: usize) -> bool {
    let mut ia = a.ones().take_while(|&i| i < limit);
    let mut ib = b.ones().take_while(|&i| i < limit);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return true,
            (x, y) if x == y => continue,
            _ => return false,
        }
    }
}
