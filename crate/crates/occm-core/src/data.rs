//! Domain types: item universe, transaction database, patterns, covers.
//!
//! A transaction database is immutable once built; every operation here is a
//! pure function, safe to call from any number of threads.

use crate::bitset::Bitset;
use crate::error::Error;
use crate::Result;

/// Dense item identifiers `0..|U|` with optional display names.
#[derive(Clone, Debug)]
pub struct ItemUniverse {
    size: usize,
    names: Option<Vec<String>>,
}

impl ItemUniverse {
    pub fn unnamed(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        Ok(ItemUniverse { size, names: None })
    }

    pub fn with_names(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        Ok(ItemUniverse {
            size: names.len(),
            names: Some(names),
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false // enforced non-empty at construction
    }

    /// Display label for an item: its name if one was attached, else its id.
    pub fn label(&self, item: usize) -> String {
        match &self.names {
            Some(names) if item < names.len() => names[item].clone(),
            _ => item.to_string(),
        }
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.size {
            return Err(Error::LabelCountMismatch {
                labels: names.len(),
                transactions: self.size,
            });
        }
        self.names = Some(names);
        Ok(())
    }
}

/// A non-empty itemset over a fixed universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    items: Bitset,
}

impl Pattern {
    pub fn new(items: Bitset) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern { items })
    }

    pub fn from_items(universe: usize, items: &[usize]) -> Result<Self> {
        if let Some(&bad) = items.iter().find(|&&i| i >= universe) {
            return Err(Error::ItemOutOfRange {
                item: bad,
                universe,
            });
        }
        Pattern::new(Bitset::from_indices(universe, items))
    }

    pub fn bits(&self) -> &Bitset {
        &self.items
    }

    pub fn size(&self) -> usize {
        self.items.count_ones()
    }

    pub fn universe_size(&self) -> usize {
        self.items.width()
    }

    pub fn items(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.ones()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.items.contains(item)
    }

    /// Lexicographic order on ascending item lists.
    pub fn cmp_lex(&self, other: &Pattern) -> std::cmp::Ordering {
        self.items.cmp_lex(&other.items)
    }

    /// Sort key used everywhere patterns are ordered: size, then item-lex.
    pub fn cmp_canonical(&self, other: &Pattern) -> std::cmp::Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.cmp_lex(other))
    }
}

impl std::fmt::Debug for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pattern{:?}", self.items)
    }
}

/// A set of transaction indices, stored as a bitset of width `n` so cover
/// equality is a block compare and covers can key hash maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverSet {
    members: Bitset,
}

impl CoverSet {
    pub fn new(members: Bitset) -> Self {
        CoverSet { members }
    }

    pub fn empty(n: usize) -> Self {
        CoverSet {
            members: Bitset::new(n),
        }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        CoverSet {
            members: Bitset::from_indices(n, indices),
        }
    }

    pub fn bits(&self) -> &Bitset {
        &self.members
    }

    pub fn cardinality(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, transaction: usize) -> bool {
        self.members.contains(transaction)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.members.to_indices()
    }

    pub fn is_subset(&self, other: &CoverSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &CoverSet) -> bool {
        !self.members.intersects(&other.members)
    }

    pub fn jaccard_parts(&self, other: &CoverSet) -> (usize, usize) {
        let inter = self.members.intersection_count(&other.members);
        let union = self.cardinality() + other.cardinality() - inter;
        (inter, union)
    }
}

impl std::fmt::Debug for CoverSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cover{:?}", self.members)
    }
}

/// Bitset-encoded transaction database over a fixed item universe.
#[derive(Clone, Debug)]
pub struct TransactionDB {
    universe: ItemUniverse,
    transactions: Vec<Bitset>,
}

impl TransactionDB {
    pub fn new(universe: ItemUniverse, transactions: Vec<Bitset>) -> Result<Self> {
        if transactions.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        for (i, t) in transactions.iter().enumerate() {
            if t.width() != universe.len() {
                return Err(Error::TransactionWidth {
                    index: i,
                    got: t.width(),
                    expected: universe.len(),
                });
            }
        }
        Ok(TransactionDB {
            universe,
            transactions,
        })
    }

    /// Convenience constructor from item-id lists; duplicates within a
    /// transaction collapse, duplicate transactions stay distinct rows.
    pub fn from_item_lists(universe: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let uni = ItemUniverse::unnamed(universe)?;
        let mut transactions = Vec::with_capacity(rows.len());
        for row in rows {
            if let Some(&bad) = row.iter().find(|&&i| i >= universe) {
                return Err(Error::ItemOutOfRange {
                    item: bad,
                    universe,
                });
            }
            transactions.push(Bitset::from_indices(universe, row));
        }
        TransactionDB::new(uni, transactions)
    }

    pub fn universe(&self) -> &ItemUniverse {
        &self.universe
    }

    pub fn universe_mut(&mut self) -> &mut ItemUniverse {
        &mut self.universe
    }

    pub fn n(&self) -> usize {
        self.transactions.len()
    }

    pub fn transactions(&self) -> &[Bitset] {
        &self.transactions
    }

    pub fn transaction(&self, i: usize) -> &Bitset {
        &self.transactions[i]
    }

    /// Fraction of set item flags: `Σ|τ| / (n·|U|)`.
    pub fn density(&self) -> f64 {
        let set: usize = self.transactions.iter().map(Bitset::count_ones).sum();
        set as f64 / (self.n() * self.universe.len()) as f64
    }

    /// Per-item transaction-index bitsets (the vertical layout miners use).
    pub fn item_tidsets(&self) -> Vec<Bitset> {
        let n = self.n();
        let mut tidsets = vec![Bitset::new(n); self.universe.len()];
        for (tid, t) in self.transactions.iter().enumerate() {
            for item in t.ones() {
                tidsets[item].insert(tid);
            }
        }
        tidsets
    }

    /// Stable content hash used to validate cached covers against the
    /// database they were computed on (FNV-1a over widths and blocks).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |v: u64| {
            for byte in v.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(self.universe.len() as u64);
        eat(self.n() as u64);
        for t in &self.transactions {
            for item in t.ones() {
                eat(item as u64);
            }
            eat(u64::MAX); // row separator
        }
        h
    }

    fn check_pattern(&self, pattern: &Pattern) -> Result<()> {
        if pattern.universe_size() != self.universe.len() {
            return Err(Error::UniverseMismatch {
                pattern: pattern.universe_size(),
                db: self.universe.len(),
            });
        }
        Ok(())
    }
}

/// Transactions containing every item of `pattern`.
pub fn cover(pattern: &Pattern, db: &TransactionDB) -> Result<CoverSet> {
    db.check_pattern(pattern)?;
    let mut members = Bitset::new(db.n());
    for (tid, t) in db.transactions().iter().enumerate() {
        if pattern.bits().is_subset(t) {
            members.insert(tid);
        }
    }
    Ok(CoverSet::new(members))
}

/// Classical support: `|cover(pattern)|`.
pub fn support(pattern: &Pattern, db: &TransactionDB) -> Result<usize> {
    Ok(cover(pattern, db)?.cardinality())
}

/// Transactions that intersect `pattern` and miss at most `k` of its items.
pub fn k_cover(pattern: &Pattern, db: &TransactionDB, k: usize) -> Result<CoverSet> {
    db.check_pattern(pattern)?;
    Ok(CoverSet::new(k_cover_bits(pattern.bits(), db, k)))
}

pub fn k_support(pattern: &Pattern, db: &TransactionDB, k: usize) -> Result<usize> {
    Ok(k_cover(pattern, db, k)?.cardinality())
}

/// k-cover over a raw, possibly empty itemset. The empty set covers nothing:
/// no transaction intersects it. `explain` relies on this when it removes the
/// only item of a singleton pattern.
pub(crate) fn k_cover_bits(items: &Bitset, db: &TransactionDB, k: usize) -> Bitset {
    let size = items.count_ones();
    let mut members = Bitset::new(db.n());
    for (tid, t) in db.transactions().iter().enumerate() {
        let shared = items.intersection_count(t);
        if shared >= 1 && size - shared <= k {
            members.insert(tid);
        }
    }
    members
}

/// k-covers for a batch of patterns. Runs on rayon when the `parallel`
/// feature is enabled; output order always matches the input order.
pub fn k_covers_of(patterns: &[Pattern], db: &TransactionDB, k: usize) -> Result<Vec<CoverSet>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        patterns
            .par_iter()
            .map(|p| k_cover(p, db, k))
            .collect::<Result<Vec<_>>>()
    }
    #[cfg(not(feature = "parallel"))]
    {
        k_covers_of_seq(patterns, db, k)
    }
}

/// Single-threaded variant of [`k_covers_of`].
pub fn k_covers_of_seq(
    patterns: &[Pattern],
    db: &TransactionDB,
    k: usize,
) -> Result<Vec<CoverSet>> {
    patterns.iter().map(|p| k_cover(p, db, k)).collect()
}

/// True iff `pattern` equals the intersection of all transactions in its
/// classical cover. Patterns with an empty cover are not closed.
pub fn is_closed(pattern: &Pattern, db: &TransactionDB) -> Result<bool> {
    db.check_pattern(pattern)?;
    let cov = cover(pattern, db)?;
    if cov.is_empty() {
        return Ok(false);
    }
    let closure = closure_of_cover(&cov, db);
    Ok(&closure == pattern.bits())
}

/// Intersection of the transactions in `cov`; all-ones if `cov` is empty.
pub(crate) fn closure_of_cover(cov: &CoverSet, db: &TransactionDB) -> Bitset {
    let mut acc = Bitset::full(db.universe().len());
    for tid in cov.indices() {
        acc.intersect_with(db.transaction(tid));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Four transactions over items a..h (0..8):
    /// t0={a,b,c,e} t1={e,f} t2={a,b,d,h} t3={g,h}
    pub(crate) fn toy_db() -> TransactionDB {
        TransactionDB::from_item_lists(
            8,
            &[vec![0, 1, 2, 4], vec![4, 5], vec![0, 1, 3, 7], vec![6, 7]],
        )
        .unwrap()
    }

    fn pat(db: &TransactionDB, items: &[usize]) -> Pattern {
        Pattern::from_items(db.universe().len(), items).unwrap()
    }

    #[test]
    fn cover_matches_subset_semantics() {
        let db = toy_db();
        let ab = pat(&db, &[0, 1]);
        assert_eq!(cover(&ab, &db).unwrap().to_indices(), vec![0, 2]);
        assert_eq!(support(&ab, &db).unwrap(), 2);
    }

    #[test]
    fn cover_of_full_universe_transaction() {
        let db = TransactionDB::from_item_lists(3, &[vec![0, 1, 2], vec![0]]).unwrap();
        let full = pat(&db, &[0, 1, 2]);
        assert!(cover(&full, &db).unwrap().contains(0));
    }

    #[test]
    fn cover_agrees_with_per_transaction_scan() {
        // brute-force oracle: check I ⊆ τ row by row
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..30 {
            let rows: Vec<Vec<usize>> = (0..8)
                .map(|_| (0..10).filter(|_| next() % 2 == 0).collect())
                .collect();
            let db = TransactionDB::from_item_lists(10, &rows).unwrap();
            let items: Vec<usize> = (0..10).filter(|_| next() % 3 == 0).collect();
            if items.is_empty() {
                continue;
            }
            let p = pat(&db, &items);
            let got = cover(&p, &db).unwrap();
            for (tid, row) in rows.iter().enumerate() {
                let expect = items.iter().all(|i| row.contains(i));
                assert_eq!(got.contains(tid), expect);
            }
        }
    }

    #[test]
    fn k_cover_relaxes_membership() {
        let db = toy_db();
        // {a,b,c,h} and {a,b,c,d} both 1-cover exactly {t0, t2}
        let i = pat(&db, &[0, 1, 2, 7]);
        let j = pat(&db, &[0, 1, 2, 3]);
        assert_eq!(k_cover(&i, &db, 1).unwrap().to_indices(), vec![0, 2]);
        assert_eq!(k_cover(&j, &db, 1).unwrap().to_indices(), vec![0, 2]);
    }

    #[test]
    fn zero_relaxation_is_classical_cover() {
        let db = toy_db();
        for items in [vec![0], vec![0, 1], vec![4, 5], vec![6, 7], vec![0, 1, 2]] {
            let p = pat(&db, &items);
            assert_eq!(
                k_cover(&p, &db, 0).unwrap().to_indices(),
                cover(&p, &db).unwrap().to_indices()
            );
        }
    }

    #[test]
    fn small_pattern_k_cover_is_union_of_item_covers() {
        // |I| <= k: the miss bound is vacuous, membership is intersection only
        let db = toy_db();
        let p = pat(&db, &[4]); // {e}
        assert_eq!(k_cover(&p, &db, 1).unwrap().to_indices(), vec![0, 1]);
        let q = pat(&db, &[4, 7]); // {e,h}, k=2
        assert_eq!(k_cover(&q, &db, 2).unwrap().to_indices(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn closedness_by_cover_intersection() {
        let db = toy_db();
        assert!(is_closed(&pat(&db, &[0, 1]), &db).unwrap()); // {a,b}
        assert!(!is_closed(&pat(&db, &[0]), &db).unwrap()); // {a}: closure {a,b}
        let single = TransactionDB::from_item_lists(2, &[vec![0, 1]]).unwrap();
        assert!(is_closed(&pat(&single, &[0, 1]), &single).unwrap());
        // empty cover -> not closed
        assert!(!is_closed(&pat(&db, &[2, 5]), &db).unwrap());
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let db = toy_db();
        let p = Pattern::from_items(9, &[0]).unwrap();
        assert!(matches!(
            cover(&p, &db),
            Err(Error::UniverseMismatch { .. })
        ));
        assert!(matches!(
            k_cover(&p, &db, 1),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn empty_pattern_rejected() {
        assert!(matches!(
            Pattern::from_items(4, &[]),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn empty_itemset_covers_nothing() {
        let db = toy_db();
        let empty = Bitset::new(8);
        assert!(k_cover_bits(&empty, &db, 3).is_empty());
    }

    #[test]
    fn density_counts_set_flags() {
        let db = toy_db();
        // 4+2+4+2 = 12 flags over 4*8 slots
        assert!((db.density() - 12.0 / 32.0).abs() < 1e-12);
    }

    #[test]
    fn fingerprint_distinguishes_content() {
        let a = toy_db();
        let b = TransactionDB::from_item_lists(
            8,
            &[vec![0, 1, 2, 4], vec![4, 5], vec![0, 1, 3, 7], vec![6]],
        )
        .unwrap();
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), toy_db().fingerprint());
    }

    #[test]
    fn duplicate_transactions_stay_distinct() {
        let db = TransactionDB::from_item_lists(3, &[vec![0, 1], vec![0, 1]]).unwrap();
        let p = pat(&db, &[0, 1]);
        assert_eq!(support(&p, &db).unwrap(), 2);
    }
}
