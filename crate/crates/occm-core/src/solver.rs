//! Exact selection of theta patterns that partition the database.
//!
//! The model: binary variable per candidate pattern, each transaction covered
//! by exactly one selected pattern, exactly theta patterns selected, total
//! pattern size maximized. Constraint structure is exact cover, so the search
//! branches on the lowest-index uncovered transaction over the columns that
//! cover it, bounding with the current weight plus the largest remaining
//! compatible weights.
//!
//! Ties between co-optimal selections resolve to the lexicographically
//! smallest index tuple, so results do not depend on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::bitset::Bitset;
use crate::data::{k_covers_of, CoverSet, TransactionDB};
use crate::error::Error;
use crate::miner::PatternCollection;
use crate::Result;

/// Subset cap for the brute-force oracle.
pub const BRUTE_FORCE_CAP: u128 = 10_000_000;

/// Coverage matrix in column form: one k-cover and one weight per candidate.
#[derive(Clone, Debug)]
pub struct IlpInstance {
    columns: Vec<CoverSet>,
    weights: Vec<u64>,
    n: usize,
    theta: usize,
}

impl IlpInstance {
    pub fn new(columns: Vec<CoverSet>, weights: Vec<u64>, n: usize, theta: usize) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::NoCandidatePatterns);
        }
        if theta == 0 {
            return Err(Error::InvalidTheta);
        }
        assert_eq!(columns.len(), weights.len());
        for c in &columns {
            assert_eq!(c.bits().width(), n, "cover width must equal n");
        }
        assert!(weights.iter().all(|&w| w >= 1), "weights are pattern sizes");
        Ok(IlpInstance {
            columns,
            weights,
            n,
            theta,
        })
    }

    pub fn p(&self) -> usize {
        self.columns.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn columns(&self) -> &[CoverSet] {
        &self.columns
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// More clusters requested than candidate patterns exist.
    pub fn is_trivially_infeasible(&self) -> bool {
        self.theta > self.p()
    }

    /// Render as CPLEX LP text for cross-checking with external solvers.
    pub fn to_lp_format(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        s.push_str("Maximize\n obj:");
        for (i, w) in self.weights.iter().enumerate() {
            let _ = write!(s, "{} {} x{}", if i == 0 { "" } else { " +" }, w, i);
        }
        s.push_str("\nSubject To\n");
        for t in 0..self.n {
            let _ = write!(s, " t{}:", t);
            let mut any = false;
            for (i, c) in self.columns.iter().enumerate() {
                if c.contains(t) {
                    let _ = write!(s, "{} x{}", if any { " +" } else { "" }, i);
                    any = true;
                }
            }
            if !any {
                let _ = write!(s, " 0 x0");
            }
            s.push_str(" = 1\n");
        }
        s.push_str(" theta:");
        for i in 0..self.p() {
            let _ = write!(s, "{} x{}", if i == 0 { "" } else { " +" }, i);
        }
        let _ = writeln!(s, " = {}", self.theta);
        s.push_str("Binary\n");
        for i in 0..self.p() {
            let _ = write!(s, " x{}", i);
        }
        s.push_str("\nEnd\n");
        s
    }
}

/// Materialize the coverage matrix for a candidate collection. Cached covers
/// are reused when valid for `(db, k)`, otherwise recomputed.
pub fn build_instance(
    patterns: &PatternCollection,
    db: &TransactionDB,
    k: usize,
    theta: usize,
) -> Result<IlpInstance> {
    if patterns.is_empty() {
        return Err(Error::NoCandidatePatterns);
    }
    if theta == 0 {
        return Err(Error::InvalidTheta);
    }
    let columns = if patterns.cache_valid_for(db, k) {
        patterns.covers().to_vec()
    } else {
        k_covers_of(patterns.patterns(), db, k)?
    };
    let weights = patterns.patterns().iter().map(|p| p.size() as u64).collect();
    IlpInstance::new(columns, weights, db.n(), theta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Timeout,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Timeout => "timeout",
        }
    }
}

/// Result of a selection run. `selected` holds ascending candidate indices
/// and `clusters` the matching covers; both are empty unless optimal.
#[derive(Clone, Debug)]
pub struct ClusteringSolution {
    pub status: SolveStatus,
    pub selected: Vec<usize>,
    pub objective: u64,
    pub clusters: Vec<CoverSet>,
}

impl ClusteringSolution {
    fn not_found(status: SolveStatus) -> Self {
        ClusteringSolution {
            status,
            selected: Vec::new(),
            objective: 0,
            clusters: Vec::new(),
        }
    }

    fn from_selection(instance: &IlpInstance, selected: Vec<usize>, objective: u64) -> Self {
        let clusters = selected
            .iter()
            .map(|&i| instance.columns[i].clone())
            .collect();
        ClusteringSolution {
            status: SolveStatus::Optimal,
            selected,
            objective,
            clusters,
        }
    }

    /// Check the partition conditions against an instance: theta clusters,
    /// pairwise disjoint, union covering every transaction.
    pub fn is_valid_partition(&self, instance: &IlpInstance) -> bool {
        if self.status != SolveStatus::Optimal || self.selected.len() != instance.theta() {
            return false;
        }
        let mut union = Bitset::new(instance.n());
        for cluster in &self.clusters {
            if cluster.bits().intersects(&union) {
                return false;
            }
            union.union_with(cluster.bits());
        }
        union.count_ones() == instance.n()
    }
}

/// Maximize total selected weight subject to the partition constraints.
/// Splits the root branching across threads under the `parallel` feature.
pub fn solve(instance: &IlpInstance, time_budget: Duration) -> ClusteringSolution {
    #[cfg(feature = "parallel")]
    {
        solve_par(instance, time_budget)
    }
    #[cfg(not(feature = "parallel"))]
    {
        solve_seq(instance, time_budget)
    }
}

/// Single-threaded variant of [`solve`]; identical results.
pub fn solve_seq(instance: &IlpInstance, time_budget: Duration) -> ClusteringSolution {
    let Some(prep) = Prepared::new(instance) else {
        return ClusteringSolution::not_found(SolveStatus::Infeasible);
    };
    let shared = SharedState::new(time_budget);
    let mut best = Incumbent::none();
    let root_candidates = prep.root_candidates();
    for &col in &root_candidates {
        let mut search = Search::new(&prep, &shared);
        search.enter(col);
        search.explore();
        best.merge(search.best);
    }
    finish(instance, &prep, &shared, best)
}

#[cfg(feature = "parallel")]
fn solve_par(instance: &IlpInstance, time_budget: Duration) -> ClusteringSolution {
    use rayon::prelude::*;
    let Some(prep) = Prepared::new(instance) else {
        return ClusteringSolution::not_found(SolveStatus::Infeasible);
    };
    let shared = SharedState::new(time_budget);
    let root_candidates = prep.root_candidates();
    // each worker owns one root subtree; the shared incumbent only tightens
    // strictly-worse pruning, so every co-optimal leaf is still reached and
    // the deterministic reduction below fixes the reported selection
    let best = root_candidates
        .par_iter()
        .map(|&col| {
            let mut search = Search::new(&prep, &shared);
            search.enter(col);
            search.explore();
            search.best
        })
        .reduce(Incumbent::none, |mut a, b| {
            a.merge(b);
            a
        });
    finish(instance, &prep, &shared, best)
}

fn finish(
    instance: &IlpInstance,
    prep: &Prepared,
    shared: &SharedState,
    best: Incumbent,
) -> ClusteringSolution {
    if shared.timed_out.load(Ordering::Relaxed) {
        return ClusteringSolution::not_found(SolveStatus::Timeout);
    }
    match best.selection {
        Some(mut selected) => {
            selected.sort_unstable();
            let objective = best.value;
            debug_assert_eq!(selected.len(), prep.theta);
            ClusteringSolution::from_selection(instance, selected, objective)
        }
        None => ClusteringSolution::not_found(SolveStatus::Infeasible),
    }
}

/// Instance view split into covering and zero-cover columns.
struct Prepared<'a> {
    instance: &'a IlpInstance,
    theta: usize,
    /// indices of columns with non-empty covers, ascending
    covering: Vec<usize>,
    /// zero-cover columns sorted by weight descending, index ascending
    zeros: Vec<usize>,
    /// prefix sums over `zeros` weights
    zero_prefix: Vec<u64>,
}

impl<'a> Prepared<'a> {
    fn new(instance: &'a IlpInstance) -> Option<Self> {
        if instance.is_trivially_infeasible() {
            return None;
        }
        let mut covering = Vec::new();
        let mut zeros = Vec::new();
        for (i, c) in instance.columns.iter().enumerate() {
            if c.is_empty() {
                zeros.push(i);
            } else {
                covering.push(i);
            }
        }
        zeros.sort_by(|&a, &b| {
            instance.weights[b]
                .cmp(&instance.weights[a])
                .then(a.cmp(&b))
        });
        let mut zero_prefix = vec![0u64; zeros.len() + 1];
        for (i, &z) in zeros.iter().enumerate() {
            zero_prefix[i + 1] = zero_prefix[i] + instance.weights[z];
        }
        Some(Prepared {
            instance,
            theta: instance.theta,
            covering,
            zeros,
            zero_prefix,
        })
    }

    /// Every solution selects some column covering transaction 0, unless the
    /// instance is coverable by zero columns alone (impossible: n >= 1).
    fn root_candidates(&self) -> Vec<usize> {
        self.covering
            .iter()
            .copied()
            .filter(|&c| self.instance.columns[c].contains(0))
            .collect()
    }
}

struct SharedState {
    /// best objective proven attainable so far, for strictly-worse pruning
    incumbent: AtomicU64,
    /// set when a feasible selection exists (distinguishes objective 0)
    any_found: AtomicBool,
    timed_out: AtomicBool,
    deadline: Instant,
}

impl SharedState {
    fn new(budget: Duration) -> Self {
        SharedState {
            incumbent: AtomicU64::new(0),
            any_found: AtomicBool::new(false),
            timed_out: AtomicBool::new(false),
            deadline: Instant::now() + budget,
        }
    }
}

#[derive(Clone, Debug)]
struct Incumbent {
    value: u64,
    selection: Option<Vec<usize>>,
}

impl Incumbent {
    fn none() -> Self {
        Incumbent {
            value: 0,
            selection: None,
        }
    }

    fn offer(&mut self, value: u64, mut selection: Vec<usize>) {
        selection.sort_unstable();
        let better = match &self.selection {
            None => true,
            Some(current) => {
                value > self.value || (value == self.value && selection < *current)
            }
        };
        if better {
            self.value = value;
            self.selection = Some(selection);
        }
    }

    fn merge(&mut self, other: Incumbent) {
        if let Some(sel) = other.selection {
            self.offer(other.value, sel);
        }
    }
}

struct Search<'a> {
    prep: &'a Prepared<'a>,
    shared: &'a SharedState,
    covered: Bitset,
    chosen: Vec<usize>,
    weight: u64,
    nodes: u64,
    best: Incumbent,
}

impl<'a> Search<'a> {
    fn new(prep: &'a Prepared<'a>, shared: &'a SharedState) -> Self {
        Search {
            prep,
            shared,
            covered: Bitset::new(prep.instance.n()),
            chosen: Vec::with_capacity(prep.theta),
            weight: 0,
            nodes: 0,
            best: Incumbent::none(),
        }
    }

    fn enter(&mut self, col: usize) {
        self.covered.union_with(self.prep.instance.columns[col].bits());
        self.chosen.push(col);
        self.weight += self.prep.instance.weights[col];
    }

    fn leave(&mut self, col: usize) {
        for t in self.prep.instance.columns[col].indices() {
            self.covered.remove(t);
        }
        self.chosen.pop();
        self.weight -= self.prep.instance.weights[col];
    }

    fn out_of_time(&mut self) -> bool {
        if self.shared.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 1 && Instant::now() >= self.shared.deadline {
            self.shared.timed_out.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn explore(&mut self) {
        if self.out_of_time() {
            return;
        }
        let depth = self.chosen.len();
        let n = self.prep.instance.n();
        if self.covered.count_ones() == n {
            self.complete_with_zeros(depth);
            return;
        }
        if depth == self.prep.theta {
            return;
        }
        if self.bound(depth) < self.pruning_floor() {
            return;
        }
        let Some(next_t) = (0..n).find(|&t| !self.covered.contains(t)) else {
            return;
        };
        let candidates: Vec<usize> = self
            .prep
            .covering
            .iter()
            .copied()
            .filter(|&c| {
                let bits = self.prep.instance.columns[c].bits();
                bits.contains(next_t) && !bits.intersects(&self.covered)
            })
            .collect();
        for col in candidates {
            self.enter(col);
            self.explore();
            self.leave(col);
        }
    }

    /// All transactions covered: pad the selection to theta with the
    /// highest-weight zero-cover columns (smallest indices on weight ties).
    fn complete_with_zeros(&mut self, depth: usize) {
        let missing = self.prep.theta - depth;
        if missing > self.prep.zeros.len() {
            return;
        }
        let value = self.weight + self.prep.zero_prefix[missing];
        let mut selection = self.chosen.clone();
        selection.extend_from_slice(&self.prep.zeros[..missing]);
        self.shared.incumbent.fetch_max(value, Ordering::Relaxed);
        self.shared.any_found.store(true, Ordering::Relaxed);
        self.best.offer(value, selection);
    }

    /// Upper bound below which a subtree cannot beat the incumbent. Pruning
    /// is strict so co-optimal leaves always survive for the tie-break.
    fn pruning_floor(&self) -> u64 {
        if self.shared.any_found.load(Ordering::Relaxed) {
            self.shared.incumbent.load(Ordering::Relaxed)
        } else {
            0
        }
    }

    fn bound(&self, depth: usize) -> u64 {
        let slots = self.prep.theta - depth;
        let mut top: Vec<u64> = Vec::with_capacity(slots + 1);
        let mut consider = |w: u64| {
            let pos = top.partition_point(|&x| x > w);
            if pos < slots {
                top.insert(pos, w);
                top.truncate(slots);
            }
        };
        for &c in &self.prep.covering {
            if self.chosen.contains(&c) {
                continue;
            }
            if !self.prep.instance.columns[c].bits().intersects(&self.covered) {
                consider(self.prep.instance.weights[c]);
            }
        }
        for &z in &self.prep.zeros {
            consider(self.prep.instance.weights[z]);
        }
        self.weight + top.iter().sum::<u64>()
    }
}

/// Exhaustive check over all theta-subsets of candidates; provably optimal.
/// Refuses when `C(p, theta)` exceeds [`BRUTE_FORCE_CAP`].
pub fn brute_force_solve(instance: &IlpInstance) -> Result<ClusteringSolution> {
    use itertools::Itertools;

    let p = instance.p();
    let theta = instance.theta();
    if instance.is_trivially_infeasible() {
        return Ok(ClusteringSolution::not_found(SolveStatus::Infeasible));
    }
    let subsets = count_combinations(p, theta);
    if subsets > BRUTE_FORCE_CAP {
        return Err(Error::EnumerationCapExceeded {
            subsets,
            cap: BRUTE_FORCE_CAP,
        });
    }

    let mut best: Option<(u64, Vec<usize>)> = None;
    for subset in (0..p).combinations(theta) {
        let mut union = Bitset::new(instance.n());
        let mut feasible = true;
        for &i in &subset {
            let bits = instance.columns[i].bits();
            if bits.intersects(&union) {
                feasible = false;
                break;
            }
            union.union_with(bits);
        }
        if !feasible || union.count_ones() != instance.n() {
            continue;
        }
        let value: u64 = subset.iter().map(|&i| instance.weights[i]).sum();
        // combinations arrive in lexicographic order, so strictly-greater
        // replacement keeps the lex-smallest co-optimal subset
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, subset));
        }
    }

    Ok(match best {
        Some((value, selected)) => ClusteringSolution::from_selection(instance, selected, value),
        None => ClusteringSolution::not_found(SolveStatus::Infeasible),
    })
}

fn count_combinations(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > BRUTE_FORCE_CAP * 2 {
            return acc; // already past any cap we compare against
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Pattern;
    use crate::miner::PatternCollection;

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

    fn instance(n: usize, theta: usize, cols: &[(&[usize], u64)]) -> IlpInstance {
        IlpInstance::new(
            cols.iter()
                .map(|(c, _)| CoverSet::from_indices(n, c))
                .collect(),
            cols.iter().map(|&(_, w)| w).collect(),
            n,
            theta,
        )
        .unwrap()
    }

    const BUDGET: Duration = Duration::from_secs(30);

    #[test]
    fn build_instance_materializes_cached_covers() {
        let db = wide_db();
        let coll = PatternCollection::from_patterns(
            &db,
            1,
            vec![
                Pattern::from_items(10, &[0, 1, 2, 4]).unwrap(),
                Pattern::from_items(10, &[0, 7, 8]).unwrap(),
            ],
        )
        .unwrap();
        let inst = build_instance(&coll, &db, 1, 2).unwrap();
        assert_eq!(inst.p(), 2);
        assert_eq!(inst.columns()[0].to_indices(), vec![0, 1, 2]);
        assert_eq!(inst.columns()[1].to_indices(), vec![3, 4]);
        assert_eq!(inst.weights(), &[4, 3]);
        assert!(!inst.is_trivially_infeasible());
    }

    #[test]
    fn build_instance_rejects_empty_candidates() {
        let db = wide_db();
        let coll = PatternCollection::from_patterns(&db, 1, vec![]).unwrap();
        assert!(matches!(
            build_instance(&coll, &db, 1, 2),
            Err(Error::NoCandidatePatterns)
        ));
    }

    #[test]
    fn single_column_covering_everything() {
        let inst = instance(3, 1, &[(&[0, 1, 2], 2)]);
        let sol = solve(&inst, BUDGET);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.objective, 2);
        assert_eq!(sol.selected, vec![0]);
        assert!(sol.is_valid_partition(&inst));
    }

    #[test]
    fn picks_heavier_of_two_equivalent_partitions() {
        // two columns share {0,1,2}; third covers {3,4}
        let inst = instance(5, 2, &[(&[0, 1, 2], 4), (&[0, 1, 2], 4), (&[3, 4], 3)]);
        let sol = solve(&inst, BUDGET);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.objective, 7);
        // co-optimal with {1,2}: lexicographically smallest tuple wins
        assert_eq!(sol.selected, vec![0, 2]);
        let brute = brute_force_solve(&inst).unwrap();
        assert_eq!(brute.objective, 7);
        assert_eq!(brute.selected, vec![0, 2]);
    }

    #[test]
    fn overlapping_covers_are_infeasible() {
        let inst = instance(3, 2, &[(&[0, 1], 2), (&[1, 2], 2)]);
        assert_eq!(solve(&inst, BUDGET).status, SolveStatus::Infeasible);
        assert_eq!(
            brute_force_solve(&inst).unwrap().status,
            SolveStatus::Infeasible
        );
    }

    #[test]
    fn theta_equal_to_p_takes_all_columns_iff_partition() {
        let good = instance(4, 2, &[(&[0, 1], 2), (&[2, 3], 1)]);
        let sol = brute_force_solve(&good).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.selected, vec![0, 1]);

        let bad = instance(4, 2, &[(&[0, 1], 2), (&[1, 2, 3], 1)]);
        assert_eq!(
            brute_force_solve(&bad).unwrap().status,
            SolveStatus::Infeasible
        );
    }

    #[test]
    fn theta_larger_than_p_is_infeasible() {
        let inst = instance(2, 3, &[(&[0], 1), (&[1], 1)]);
        assert!(inst.is_trivially_infeasible());
        assert_eq!(solve(&inst, BUDGET).status, SolveStatus::Infeasible);
        assert_eq!(
            brute_force_solve(&inst).unwrap().status,
            SolveStatus::Infeasible
        );
    }

    #[test]
    fn zero_cover_columns_can_pad_theta() {
        // one column covers everything; empty columns make up the count
        let inst = instance(
            3,
            3,
            &[(&[0, 1, 2], 3), (&[], 2), (&[], 5), (&[], 2)],
        );
        let sol = solve(&inst, BUDGET);
        assert_eq!(sol.status, SolveStatus::Optimal);
        // padding takes the heaviest zeros, index-ascending on ties
        assert_eq!(sol.objective, 3 + 5 + 2);
        assert_eq!(sol.selected, vec![0, 1, 2]);
        let brute = brute_force_solve(&inst).unwrap();
        assert_eq!(brute.objective, sol.objective);
        assert_eq!(brute.selected, sol.selected);
    }

    #[test]
    fn uncoverable_transaction_is_infeasible() {
        let inst = instance(3, 2, &[(&[0], 1), (&[1], 1)]);
        assert_eq!(solve(&inst, BUDGET).status, SolveStatus::Infeasible);
    }

    #[test]
    fn zero_budget_times_out() {
        let inst = instance(4, 2, &[(&[0, 1], 2), (&[2, 3], 1), (&[0, 2], 1)]);
        let sol = solve(&inst, Duration::ZERO);
        assert_eq!(sol.status, SolveStatus::Timeout);
        assert!(sol.selected.is_empty());
    }

    #[test]
    fn brute_force_guardrail() {
        let cols: Vec<(Vec<usize>, u64)> = (0..60).map(|i| (vec![i % 4], 1)).collect();
        let refs: Vec<(&[usize], u64)> = cols.iter().map(|(c, w)| (&c[..], *w)).collect();
        let inst = instance(4, 10, &refs);
        assert!(matches!(
            brute_force_solve(&inst),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn lp_export_contains_model_pieces() {
        let inst = instance(2, 1, &[(&[0, 1], 2)]);
        let lp = inst.to_lp_format();
        assert!(lp.contains("Maximize"));
        assert!(lp.contains("2 x0"));
        assert!(lp.contains("t0:"));
        assert!(lp.contains("theta:"));
        assert!(lp.contains("= 1"));
        assert!(lp.contains("Binary"));
    }

    #[test]
    fn agrees_with_brute_force_on_random_instances() {
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for case in 0..120 {
            let n = 3 + (next() % 8) as usize;
            let p = 2 + (next() % 16) as usize;
            let theta = 2 + (next() % 2) as usize;
            let cols: Vec<CoverSet> = (0..p)
                .map(|_| {
                    let members: Vec<usize> =
                        (0..n).filter(|_| next() % 3 == 0).collect();
                    CoverSet::from_indices(n, &members)
                })
                .collect();
            let weights: Vec<u64> = (0..p).map(|_| 1 + next() % 5).collect();
            let inst = IlpInstance::new(cols, weights, n, theta).unwrap();
            let fast = solve(&inst, BUDGET);
            let slow = brute_force_solve(&inst).unwrap();
            assert_eq!(fast.status, slow.status, "case {case}");
            if fast.status == SolveStatus::Optimal {
                assert_eq!(fast.objective, slow.objective, "case {case}");
                assert_eq!(fast.selected, slow.selected, "case {case}");
                assert!(fast.is_valid_partition(&inst));
            }
        }
    }
}
