//! Interpretability measures for selected patterns: importance, exact
//! Shapley values of items, Shapley value variance, and average cluster
//! stability.
//!
//! Everything is computed in exact rational arithmetic; callers render to
//! decimals only at the report boundary, so equality assertions in tests need
//! no tolerances.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, FromPrimitive, Signed, ToPrimitive, Zero};

use crate::bitset::Bitset;
use crate::data::{k_cover, k_cover_bits, CoverSet, Pattern, TransactionDB};
use crate::error::Error;
use crate::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Largest pattern for which the exact 2^|I| Shapley evaluation runs.
pub const SHAPLEY_CAP: usize = 20;

/// Per-pattern interpretability report.
#[derive(Clone, Debug)]
pub struct ExplanationReport {
    pub pattern: Pattern,
    /// The induced cluster, `Cov^k(I, D)`.
    pub cluster: CoverSet,
    pub importance: BigRational,
    pub shapley: BTreeMap<usize, BigRational>,
    pub svv: BigRational,
    pub acs: BigRational,
    /// The pattern k-covers nothing; stability is vacuous (Jaccard of two
    /// empty clusters is 1 by convention).
    pub empty_cluster: bool,
}

impl ExplanationReport {
    pub fn importance_f64(&self) -> f64 {
        to_f64(&self.importance)
    }

    pub fn svv_f64(&self) -> f64 {
        to_f64(&self.svv)
    }

    pub fn acs_f64(&self) -> f64 {
        to_f64(&self.acs)
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `Imp(I) = Σ_{τ ∈ Cov^k(I)} |I ∩ τ| / |I|`: how consistently the items of
/// the pattern appear across its induced cluster.
pub fn importance(pattern: &Pattern, db: &TransactionDB, k: usize) -> Result<BigRational> {
    let cluster = k_cover(pattern, db, k)?;
    let mut present: u64 = 0;
    for tid in cluster.indices() {
        present += pattern.bits().intersection_count(db.transaction(tid)) as u64;
    }
    Ok(BigRational::new(
        BigInt::from(present),
        BigInt::from(pattern.size() as u64),
    ))
}

/// Exact Shapley value of every item of the pattern under the cooperative
/// game `v(S) = Imp(S)`, `v(∅) = 0`. Subset evaluations run on rayon when
/// the `parallel` feature is on.
pub fn shapley(
    pattern: &Pattern,
    db: &TransactionDB,
    k: usize,
) -> Result<BTreeMap<usize, BigRational>> {
    let table = SubsetGame::build(pattern, db, k, true)?;
    Ok(table.shapley_values(true))
}

/// Single-threaded variant of [`shapley`]; identical values.
pub fn shapley_seq(
    pattern: &Pattern,
    db: &TransactionDB,
    k: usize,
) -> Result<BTreeMap<usize, BigRational>> {
    let table = SubsetGame::build(pattern, db, k, false)?;
    Ok(table.shapley_values(false))
}

/// Population variance of the Shapley values: `(1/|I|) Σ (φ(a) − φ̄)²`.
pub fn svv(values: &BTreeMap<usize, BigRational>) -> Result<BigRational> {
    if values.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let m = BigRational::from_integer(BigInt::from(values.len() as u64));
    let mean: BigRational = values.values().sum::<BigRational>() / &m;
    let ss: BigRational = values
        .values()
        .map(|phi| {
            let d = phi - &mean;
            &d * &d
        })
        .sum();
    Ok(ss / m)
}

/// Average cluster stability: mean Jaccard similarity between the pattern's
/// cluster and each leave-one-item-out cluster. Removing the only item of a
/// singleton yields the empty itemset, which covers nothing; the Jaccard of
/// two empty clusters is 1.
pub fn acs(pattern: &Pattern, db: &TransactionDB, k: usize) -> Result<BigRational> {
    let cluster = k_cover(pattern, db, k)?;
    let mut total = BigRational::zero();
    for item in pattern.items() {
        let mut reduced = pattern.bits().clone();
        reduced.remove(item);
        let loo = CoverSet::new(k_cover_bits(&reduced, db, k));
        total += jaccard(&cluster, &loo);
    }
    Ok(total / BigRational::from_integer(BigInt::from(pattern.size() as u64)))
}

fn jaccard(a: &CoverSet, b: &CoverSet) -> BigRational {
    let (inter, union) = a.jaccard_parts(b);
    if union == 0 {
        return BigRational::from_integer(BigInt::from(1));
    }
    BigRational::new(BigInt::from(inter as u64), BigInt::from(union as u64))
}

/// Full report for one pattern: importance, Shapley map, SVV, ACS.
pub fn explain_pattern(
    pattern: &Pattern,
    db: &TransactionDB,
    k: usize,
) -> Result<ExplanationReport> {
    let cluster = k_cover(pattern, db, k)?;
    let imp = importance(pattern, db, k)?;
    let shapley_values = shapley(pattern, db, k)?;
    debug_assert_eq!(
        shapley_values.values().sum::<BigRational>(),
        imp,
        "Shapley efficiency"
    );
    let svv_value = svv(&shapley_values)?;
    let acs_value = acs(pattern, db, k)?;
    debug_assert!(!svv_value.is_negative());
    Ok(ExplanationReport {
        pattern: pattern.clone(),
        cluster: cluster.clone(),
        importance: imp,
        shapley: shapley_values,
        svv: svv_value,
        acs: acs_value,
        empty_cluster: cluster.is_empty(),
    })
}

/// v(S) for every subset mask of the pattern's items.
struct SubsetGame {
    /// items of the pattern, ascending; mask bit p stands for `items[p]`
    items: Vec<usize>,
    /// v indexed by mask, as (present-item count over members, subset size);
    /// v(mask) = sums[mask] / |mask|
    sums: Vec<u64>,
}

impl SubsetGame {
    fn build(pattern: &Pattern, db: &TransactionDB, k: usize, par: bool) -> Result<Self> {
        let m = pattern.size();
        if m > SHAPLEY_CAP {
            return Err(Error::ShapleyCapExceeded {
                size: m,
                cap: SHAPLEY_CAP,
            });
        }
        if pattern.universe_size() != db.universe().len() {
            return Err(Error::UniverseMismatch {
                pattern: pattern.universe_size(),
                db: db.universe().len(),
            });
        }
        let items: Vec<usize> = pattern.items().collect();
        // project each transaction onto the pattern's items
        let tmasks: Vec<u32> = db
            .transactions()
            .iter()
            .map(|t| {
                let mut mask = 0u32;
                for (pos, &item) in items.iter().enumerate() {
                    if t.contains(item) {
                        mask |= 1 << pos;
                    }
                }
                mask
            })
            .collect();

        let eval = |mask: usize| -> u64 {
            let size = (mask as u32).count_ones();
            let mut present = 0u64;
            for &tm in &tmasks {
                let shared = (tm & mask as u32).count_ones();
                if shared >= 1 && size - shared <= k as u32 {
                    present += shared as u64;
                }
            }
            present
        };

        let n_masks = 1usize << m;
        let sums: Vec<u64>;
        #[cfg(feature = "parallel")]
        {
            sums = if par {
                (0..n_masks).into_par_iter().map(eval).collect()
            } else {
                (0..n_masks).map(eval).collect()
            };
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = par;
            sums = (0..n_masks).map(eval).collect();
        }
        Ok(SubsetGame { items, sums })
    }

    /// v(mask) as an exact rational; v(∅) = 0.
    fn value(&self, mask: usize) -> BigRational {
        if mask == 0 {
            return BigRational::zero();
        }
        let size = (mask as u32).count_ones() as u64;
        BigRational::new(BigInt::from(self.sums[mask]), BigInt::from(size))
    }

    /// Subset-weighted Shapley formula:
    /// `φ(a) = Σ_{S ⊆ I\{a}} |S|!(|I|−|S|−1)!/|I|! (v(S∪a) − v(S))`.
    fn shapley_values(&self, par: bool) -> BTreeMap<usize, BigRational> {
        let m = self.items.len();
        let factorials: Vec<BigInt> = {
            let mut f = vec![BigInt::from(1u32); m + 1];
            for i in 1..=m {
                f[i] = &f[i - 1] * BigInt::from(i as u64);
            }
            f
        };
        let total = BigRational::from_integer(factorials[m].clone());

        let phi_for = |pos: usize| -> BigRational {
            // group subsets by size; the factorial weight is shared per size
            let mut by_size: Vec<BigRational> = vec![BigRational::zero(); m];
            let bit = 1usize << pos;
            for mask in 0..self.sums.len() {
                if mask & bit != 0 {
                    continue;
                }
                let s = (mask as u32).count_ones() as usize;
                by_size[s] += self.value(mask | bit) - self.value(mask);
            }
            let mut phi = BigRational::zero();
            for (s, sum) in by_size.into_iter().enumerate() {
                if sum.is_zero() {
                    continue;
                }
                let weight = BigRational::from_integer(&factorials[s] * &factorials[m - 1 - s]);
                phi += weight * sum;
            }
            phi / &total
        };

        let values: Vec<BigRational>;
        #[cfg(feature = "parallel")]
        {
            values = if par {
                (0..m).into_par_iter().map(phi_for).collect()
            } else {
                (0..m).map(phi_for).collect()
            };
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = par;
            values = (0..m).map(phi_for).collect();
        }
        self.items.iter().copied().zip(values).collect()
    }
}

/// Convenience for tests and reports: v(S) of an arbitrary raw itemset,
/// with the empty set mapping to 0.
pub fn characteristic_value(items: &Bitset, db: &TransactionDB, k: usize) -> BigRational {
    let size = items.count_ones();
    if size == 0 {
        return BigRational::zero();
    }
    let cluster = k_cover_bits(items, db, k);
    let mut present: u64 = 0;
    for tid in cluster.ones() {
        present += items.intersection_count(db.transaction(tid)) as u64;
    }
    BigRational::new(BigInt::from(present), BigInt::from(size as u64))
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(
        BigInt::from_i64(n).unwrap(),
        BigInt::from_i64(d).unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wide_db() -> TransactionDB {
        TransactionDB::from_item_lists(
            10,
            &[
                vec![0, 1, 2, 4],
                vec![0, 1, 2, 5],
                vec![0, 1, 2, 6],
                vec![0, 7, 8],
                vec![0, 7, 8, 9],
            ],
        )
        .unwrap()
    }

    fn pat(universe: usize, items: &[usize]) -> Pattern {
        Pattern::from_items(universe, items).unwrap()
    }

    #[test]
    fn importance_sums_present_fractions() {
        let db = wide_db();
        // Cov¹({a,b,c,e}) = {t0,t1,t2}: 4/4 + 3/4 + 3/4 = 5/2
        let p = pat(10, &[0, 1, 2, 4]);
        assert_eq!(importance(&p, &db, 1).unwrap(), rational(5, 2));
    }

    #[test]
    fn importance_of_uncovered_pattern_is_zero() {
        let db = wide_db();
        let p = pat(10, &[3]); // item d occurs nowhere
        assert_eq!(importance(&p, &db, 1).unwrap(), BigRational::zero());
    }

    #[test]
    fn importance_at_zero_relaxation_counts_cover() {
        let db = wide_db();
        // every covering transaction contributes exactly 1
        let p = pat(10, &[0]);
        assert_eq!(importance(&p, &db, 0).unwrap(), rational(5, 1));
    }

    #[test]
    fn shapley_efficiency_on_reference_pattern() {
        let db = wide_db();
        let p = pat(10, &[0, 1, 2, 4]);
        let phi = shapley(&p, &db, 1).unwrap();
        assert_eq!(phi.values().sum::<BigRational>(), rational(5, 2));
        let seq = shapley_seq(&p, &db, 1).unwrap();
        assert_eq!(phi, seq);
    }

    #[test]
    fn shapley_symmetry_for_interchangeable_items() {
        // a and b occur in exactly the same transactions
        let db = TransactionDB::from_item_lists(
            3,
            &[vec![0, 1], vec![0, 1, 2], vec![2]],
        )
        .unwrap();
        let p = pat(3, &[0, 1]);
        for k in 0..=2 {
            let phi = shapley(&p, &db, k).unwrap();
            assert_eq!(phi[&0], phi[&1], "k={k}");
        }
    }

    #[test]
    fn dead_items_are_dummies() {
        // neither item occurs: v is identically zero, so both get φ = 0,
        // the cluster is empty, and stability is vacuously 1
        let db = TransactionDB::from_item_lists(4, &[vec![0], vec![0, 1]]).unwrap();
        let p = pat(4, &[2, 3]);
        let report = explain_pattern(&p, &db, 1).unwrap();
        assert!(report.empty_cluster);
        assert_eq!(report.importance, BigRational::zero());
        assert!(report.shapley.values().all(|phi| phi.is_zero()));
        assert_eq!(report.svv, BigRational::zero());
        assert_eq!(report.acs, rational(1, 1));
    }

    #[test]
    fn svv_examples() {
        let all_equal: BTreeMap<usize, BigRational> =
            [(0, rational(3, 4)), (1, rational(3, 4))].into();
        assert_eq!(svv(&all_equal).unwrap(), BigRational::zero());

        let spread: BTreeMap<usize, BigRational> =
            [(0, rational(1, 1)), (1, rational(3, 1))].into();
        assert_eq!(svv(&spread).unwrap(), rational(1, 1));

        assert!(matches!(
            svv(&BTreeMap::new()),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn svv_matches_two_pass_oracle() {
        let db = wide_db();
        let p = pat(10, &[0, 1, 2, 4]);
        let phi = shapley(&p, &db, 1).unwrap();
        let got = svv(&phi).unwrap();
        // naive two-pass mean/variance recomputation
        let m = phi.len() as i64;
        let mean = phi.values().sum::<BigRational>() / rational(m, 1);
        let expect = phi
            .values()
            .map(|v| (v - &mean) * (v - &mean))
            .sum::<BigRational>()
            / rational(m, 1);
        assert_eq!(got, expect);
    }

    #[test]
    fn acs_is_one_when_removals_keep_the_cluster() {
        let db = wide_db();
        // every leave-one-out 1-cover of {a,b,c,e} stays {t0,t1,t2}
        let p = pat(10, &[0, 1, 2, 4]);
        assert_eq!(acs(&p, &db, 1).unwrap(), rational(1, 1));
    }

    #[test]
    fn acs_penalizes_cover_drift() {
        let db = wide_db();
        // dropping a from {a,b,c} widens the cover to all five transactions
        // twice: (1 + 3/5 + 3/5) / 3 = 11/15
        let p = pat(10, &[0, 1, 2]);
        assert_eq!(acs(&p, &db, 1).unwrap(), rational(11, 15));
    }

    #[test]
    fn acs_of_covered_singleton_is_zero() {
        let db = wide_db();
        let p = pat(10, &[4]); // {e} covers t0 at k=1
        assert_eq!(acs(&p, &db, 1).unwrap(), BigRational::zero());
    }

    #[test]
    fn cap_is_enforced() {
        let db = TransactionDB::from_item_lists(25, &[(0..25).collect()]).unwrap();
        let p = pat(25, &(0..21).collect::<Vec<_>>());
        assert!(matches!(
            shapley(&p, &db, 1),
            Err(Error::ShapleyCapExceeded { size: 21, cap: 20 })
        ));
    }

    #[test]
    fn report_bundles_consistent_measures() {
        let db = wide_db();
        let p = pat(10, &[0, 1, 2, 4]);
        let report = explain_pattern(&p, &db, 1).unwrap();
        assert_eq!(report.cluster.to_indices(), vec![0, 1, 2]);
        assert_eq!(report.importance, rational(5, 2));
        assert_eq!(
            report.shapley.values().sum::<BigRational>(),
            report.importance
        );
        assert_eq!(report.acs, rational(1, 1));
        assert!(!report.empty_cluster);
        assert!(!report.svv.is_negative());
    }
}
