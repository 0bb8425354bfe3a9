//! Exhaustive generation of small connected graphs and free trees, and the
//! sweeps that check the volcano lower bound over them.
//!
//! Labeled sweeps walk every upper-triangle bitmask for the order and are
//! split into contiguous mask ranges; with the `parallel` feature the
//! ranges are folded on a rayon pool and merged by an associative,
//! commutative reduction, otherwise they are folded in order on the
//! calling thread.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{make_volcano, volcano_splits};
use crate::graph::{canonical_form, profile, CanonicalForm, Graph};
use crate::indices::{eci_from_profile, eci_volcano_closed_form, EciValue};
use crate::io::to_graph6;

/// Largest order for sweeps over general connected graphs.
pub const MAX_GRAPH_ORDER: usize = 8;
/// Largest order for free-tree sweeps.
pub const MAX_TREE_ORDER: usize = 10;

const CHUNKS_PER_SWEEP: u64 = 1024;

fn check_order(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n < 2 || n > cap {
        return Err(Error::Capacity {
            what,
            value: n,
            cap,
        });
    }
    Ok(())
}

fn pair_count(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Connectivity straight from the bitmask, without building a graph.
pub fn mask_is_connected(n: usize, mask: u64) -> bool {
    let mut adj = [0u16; 16];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    let all: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    let mut reached: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !reached;
        reached |= next;
    }
    reached == all
}

/// Every connected labeled graph on `n` vertices, in mask order.
pub fn connected_labeled(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_order(n, MAX_GRAPH_ORDER, "connected graph order")?;
    Ok((0..1u64 << pair_count(n))
        .filter(move |&m| mask_is_connected(n, m))
        .map(move |m| Graph::from_upper_mask(n, m)))
}

/// One canonical representative per isomorphism class of connected graphs
/// on `n` vertices, ordered by certificate.
///
/// Classes are grown one vertex at a time: every connected graph has a
/// vertex whose removal keeps it connected, so joining a new vertex to each
/// nonempty subset of each class on `n - 1` vertices reaches every class.
pub fn connected_classes(n: usize) -> Result<Vec<Graph>> {
    check_order(n, MAX_GRAPH_ORDER, "connected graph order")?;
    let mut classes = vec![Graph::empty(1)];
    for order in 2..=n {
        let mut next: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
        for base in &classes {
            for subset in 1u32..1 << (order - 1) {
                let mut g = Graph::empty(order);
                for (u, v) in base.edges() {
                    g.add_edge(u, v)?;
                }
                for u in 0..order - 1 {
                    if subset >> u & 1 == 1 {
                        g.add_edge(u, order - 1)?;
                    }
                }
                next.insert(canonical_form(&g)?, ());
            }
        }
        classes = next.into_keys().map(|c| c.to_graph()).collect();
    }
    Ok(classes)
}

/// Connected graphs on `n` vertices: all labeled graphs, or one
/// representative per isomorphism class when `dedup` is set.
pub fn enumerate_connected_graphs(
    n: usize,
    dedup: bool,
) -> Result<Box<dyn Iterator<Item = Graph>>> {
    if dedup {
        Ok(Box::new(connected_classes(n)?.into_iter()))
    } else {
        Ok(Box::new(connected_labeled(n)?))
    }
}

/// Decodes a Prüfer sequence over `0..n` into its labeled tree.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<Graph> {
    if n < 2 || seq.len() != n - 2 || seq.iter().any(|&x| x >= n) {
        return Err(Error::input(
            "Prüfer sequence must have n - 2 entries in 0..n",
        ));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut g = Graph::new(n)?;
    for &x in seq {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always remains");
        g.add_edge(leaf, x)?;
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1])?;
    Ok(g)
}

/// All `n^(n-2)` labeled trees on `n` vertices via Prüfer sequences.
pub fn labeled_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_order(n, MAX_TREE_ORDER, "tree order")?;
    let total = (n as u64).pow(n as u32 - 2);
    Ok((0..total).map(move |mut code| {
        let seq: Vec<usize> = (0..n - 2)
            .map(|_| {
                let digit = (code % n as u64) as usize;
                code /= n as u64;
                digit
            })
            .collect();
        prufer_decode(n, &seq).expect("digits are in range")
    }))
}

/// One canonical representative per free tree on `n` vertices, ordered by
/// certificate. Trees on `n` vertices are grown from trees on `n - 1` by
/// attaching a leaf at every vertex.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    check_order(n, MAX_TREE_ORDER, "tree order")?;
    let mut trees = vec![Graph::empty(1)];
    for order in 2..=n {
        let mut next: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
        for base in &trees {
            for attach in 0..order - 1 {
                let mut g = Graph::empty(order);
                for (u, v) in base.edges() {
                    g.add_edge(u, v)?;
                }
                g.add_edge(attach, order - 1)?;
                next.insert(canonical_form(&g)?, ());
            }
        }
        trees = next.into_keys().map(|c| c.to_graph()).collect();
    }
    Ok(trees)
}

/// Folds `fold` over every connected labeled graph on `n` vertices.
///
/// The mask space is cut into contiguous ranges; each range is folded from
/// `identity()` and the partial results are combined with `reduce`, which
/// must be associative and commutative for the result to be independent of
/// `workers`.
pub fn fold_connected_labeled<A, I, F, R>(
    n: usize,
    workers: usize,
    identity: I,
    fold: F,
    reduce: R,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &Graph) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    check_order(n, MAX_GRAPH_ORDER, "connected graph order")?;
    if workers == 0 {
        return Err(Error::input("worker count must be positive"));
    }
    let total = 1u64 << pair_count(n);
    let chunk = total.div_ceil(CHUNKS_PER_SWEEP).max(1);
    let chunks = total.div_ceil(chunk);
    let run_chunk = |c: u64| {
        let start = c * chunk;
        let end = (start + chunk).min(total);
        (start..end)
            .filter(|&m| mask_is_connected(n, m))
            .fold(identity(), |acc, m| {
                fold(acc, &Graph::from_upper_mask(n, m))
            })
    };
    run_chunks(workers, chunks, &run_chunk, &identity, &reduce)
}

#[cfg(feature = "parallel")]
fn run_chunks<A, C, I, R>(
    workers: usize,
    chunks: u64,
    run_chunk: &C,
    identity: &I,
    reduce: &R,
) -> Result<A>
where
    A: Send,
    C: Fn(u64) -> A + Sync,
    I: Fn() -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    use rayon::prelude::*;

    if workers == 1 {
        return Ok((0..chunks).map(run_chunk).fold(identity(), reduce));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::input(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(run_chunk)
            .reduce(identity, reduce)
    }))
}

#[cfg(not(feature = "parallel"))]
fn run_chunks<A, C, I, R>(
    _workers: usize,
    chunks: u64,
    run_chunk: &C,
    identity: &I,
    reduce: &R,
) -> Result<A>
where
    C: Fn(u64) -> A,
    I: Fn() -> A,
    R: Fn(A, A) -> A,
{
    Ok((0..chunks).map(run_chunk).fold(identity(), reduce))
}

/// What to sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub order: usize,
    /// Inclusive diameter range; `None` means every diameter `>= 2`.
    pub diameter_filter: Option<(usize, usize)>,
    /// Sweep isomorphism classes instead of labeled graphs.
    pub dedup: bool,
    pub trees_only: bool,
    pub workers: usize,
}

impl SweepConfig {
    pub fn new(order: usize) -> Self {
        SweepConfig {
            order,
            diameter_filter: None,
            dedup: false,
            trees_only: false,
            workers: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trees_only {
            check_order(self.order, MAX_TREE_ORDER, "tree order")?;
        } else {
            check_order(self.order, MAX_GRAPH_ORDER, "connected graph order")?;
        }
        if self.workers == 0 {
            return Err(Error::input("worker count must be positive"));
        }
        if let Some((lo, hi)) = self.diameter_filter {
            if lo > hi {
                return Err(Error::input(format!("empty diameter range {lo}..={hi}")));
            }
        }
        Ok(())
    }

    fn accepts(&self, d: usize) -> bool {
        d >= 2
            && self
                .diameter_filter
                .is_none_or(|(lo, hi)| (lo..=hi).contains(&d))
    }
}

/// Mergeable per-diameter tally.
#[derive(Debug, Clone, Default)]
struct Bucket {
    graphs: u64,
    min_eci: Option<u64>,
    violating: u64,
    violations: BTreeSet<Vec<u8>>,
    equality: BTreeSet<Vec<u8>>,
}

impl Bucket {
    fn merge(mut self, other: Bucket) -> Bucket {
        self.graphs += other.graphs;
        self.min_eci = match (self.min_eci, other.min_eci) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violating += other.violating;
        self.violations.extend(other.violations);
        self.equality.extend(other.equality);
        self
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    buckets: BTreeMap<usize, Bucket>,
}

impl Tally {
    /// Records `g` if its diameter passes the filter. Witnesses are stored
    /// as upper-triangle masks (labeled) and canonicalized at the end.
    fn record(&mut self, config: &SweepConfig, g: &Graph) {
        let p = profile(g).expect("sweeps only yield connected graphs");
        let d = p.diameter;
        if !config.accepts(d) {
            return;
        }
        let value = eci_from_profile(&p).get();
        let reference = eci_volcano_closed_form(g.order() as u64, d as u64)
            .expect("d >= 2 and n >= d + 1")
            .get();
        let bucket = self.buckets.entry(d).or_default();
        bucket.graphs += 1;
        bucket.min_eci = Some(bucket.min_eci.map_or(value, |m| m.min(value)));
        let key = || {
            g.upper_mask()
                .expect("sweep orders fit a mask")
                .to_le_bytes()
                .to_vec()
        };
        if value < reference {
            bucket.violating += 1;
            bucket.violations.insert(key());
        } else if value == reference {
            bucket.equality.insert(key());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (d, b) in other.buckets {
            let mine = self.buckets.remove(&d).unwrap_or_default();
            self.buckets.insert(d, mine.merge(b));
        }
        self
    }
}

/// Per-diameter outcome of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BucketReport {
    pub diameter: usize,
    pub graphs_checked: u64,
    /// Number of isomorphism classes seen; only known for class sweeps.
    pub isomorphism_classes: Option<usize>,
    pub min_eci: EciValue,
    pub volcano_eci: EciValue,
    /// Labeled graphs (or classes) below the volcano value.
    pub violating_graphs: u64,
    /// graph6 of the canonical representative of each violating class.
    pub violations: Vec<String>,
    /// graph6 of the canonical representative of each class attaining the
    /// volcano value.
    pub equality_witnesses: Vec<String>,
    /// Some volcano graph is among the equality witnesses.
    pub volcano_attains: bool,
    /// The equality witnesses are nonempty and all volcano graphs.
    pub equality_all_volcano: bool,
    /// Violations in this bucket count as failures (`d >= 3`).
    pub asserted: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub order: usize,
    pub trees_only: bool,
    pub dedup: bool,
    pub buckets: Vec<BucketReport>,
}

impl VerificationReport {
    /// Violations in buckets where the bound is asserted.
    pub fn asserted_violations(&self) -> u64 {
        self.buckets
            .iter()
            .filter(|b| b.asserted)
            .map(|b| b.violating_graphs)
            .sum()
    }

    pub fn passed(&self) -> bool {
        self.asserted_violations() == 0
    }

    pub fn bucket(&self, d: usize) -> Option<&BucketReport> {
        self.buckets.iter().find(|b| b.diameter == d)
    }
}

pub const D2_NOTE: &str =
    "d = 2 lies outside the asserted range d >= 3; findings are reported, not enforced";

/// Canonical forms of every volcano graph with the given order and diameter.
pub fn volcano_certificates(n: usize, d: usize) -> Result<BTreeSet<CanonicalForm>> {
    volcano_splits(n, d)
        .into_iter()
        .map(|s| canonical_form(&make_volcano(n, d, Some(s))?))
        .collect()
}

fn classes_of(keys: &BTreeSet<Vec<u8>>, n: usize) -> Result<BTreeSet<CanonicalForm>> {
    keys.iter()
        .map(|k| {
            let mask = u64::from_le_bytes(k.as_slice().try_into().expect("8-byte mask"));
            canonical_form(&Graph::from_upper_mask(n, mask))
        })
        .collect()
}

fn finish(config: &SweepConfig, tally: Tally, classes_known: bool) -> Result<VerificationReport> {
    let n = config.order;
    let mut buckets = Vec::new();
    for (d, b) in tally.buckets {
        let volcano_eci = eci_volcano_closed_form(n as u64, d as u64)?;
        let equality = classes_of(&b.equality, n)?;
        let violations = classes_of(&b.violations, n)?;
        let volcanos = volcano_certificates(n, d)?;
        let volcano_attains = equality.iter().any(|c| volcanos.contains(c));
        let equality_all_volcano =
            !equality.is_empty() && equality.iter().all(|c| volcanos.contains(c));
        buckets.push(BucketReport {
            diameter: d,
            graphs_checked: b.graphs,
            isomorphism_classes: classes_known.then_some(b.graphs as usize),
            min_eci: EciValue(b.min_eci.expect("bucket is nonempty")),
            volcano_eci,
            violating_graphs: b.violating,
            violations: violations
                .iter()
                .map(|c| to_graph6(&c.to_graph()))
                .collect(),
            equality_witnesses: equality.iter().map(|c| to_graph6(&c.to_graph())).collect(),
            volcano_attains,
            equality_all_volcano,
            asserted: d >= 3,
            note: (d == 2).then(|| D2_NOTE.to_string()),
        });
    }
    Ok(VerificationReport {
        order: n,
        trees_only: config.trees_only,
        dedup: config.dedup,
        buckets,
    })
}

/// Compares every swept graph with the volcano value for its order and
/// diameter. Violations at `d >= 3` make [`VerificationReport::passed`]
/// false; `d = 2` buckets are informational.
pub fn verify_bound(config: &SweepConfig) -> Result<VerificationReport> {
    config.validate()?;
    if config.trees_only || config.dedup {
        let graphs = if config.trees_only {
            enumerate_trees(config.order)?
        } else {
            connected_classes(config.order)?
        };
        let mut tally = Tally::default();
        for g in &graphs {
            tally.record(config, g);
        }
        return finish(config, tally, true);
    }
    let tally = fold_connected_labeled(
        config.order,
        config.workers,
        Tally::default,
        |mut t, g| {
            t.record(config, g);
            t
        },
        Tally::merge,
    )?;
    finish(config, tally, false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub order: usize,
    pub diameter: usize,
    pub witnesses: Vec<String>,
    pub all_volcano: bool,
}

/// Every isomorphism class attaining the volcano value, per diameter.
pub fn equality_census(config: &SweepConfig) -> Result<Vec<CensusEntry>> {
    let report = verify_bound(config)?;
    Ok(report
        .buckets
        .into_iter()
        .map(|b| CensusEntry {
            order: report.order,
            diameter: b.diameter,
            witnesses: b.equality_witnesses,
            all_volcano: b.equality_all_volcano,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_path;

    /// Connected labeled graphs by inclusion-exclusion on the component of
    /// vertex 0.
    fn connected_labeled_count(n: usize) -> u64 {
        let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        let mut c = vec![0u64; n + 1];
        for m in 1..=n {
            let all = 1u64 << (m * (m - 1) / 2);
            let disconnected: u64 = (1..m)
                .map(|k| {
                    binom(m as u64 - 1, k as u64 - 1) * c[k] * (1u64 << ((m - k) * (m - k - 1) / 2))
                })
                .sum();
            c[m] = all - disconnected;
        }
        c[n]
    }

    #[test]
    fn labeled_counts_match_inclusion_exclusion() {
        assert_eq!(connected_labeled_count(4), 38);
        for n in 2..=5 {
            assert_eq!(
                connected_labeled(n).unwrap().count() as u64,
                connected_labeled_count(n)
            );
        }
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(connected_labeled(2).unwrap().count(), 1);
        assert_eq!(connected_labeled(3).unwrap().count(), 4);
        let c3 = connected_classes(3).unwrap();
        assert_eq!(c3.len(), 2);
        assert_eq!(connected_classes(4).unwrap().len(), 6);
        // OEIS A001349
        assert_eq!(connected_classes(5).unwrap().len(), 21);
        assert_eq!(connected_classes(6).unwrap().len(), 112);
    }

    #[test]
    fn classes_match_labeled_dedup() {
        for n in 2..=5 {
            let from_labeled: BTreeSet<CanonicalForm> = connected_labeled(n)
                .unwrap()
                .map(|g| canonical_form(&g).unwrap())
                .collect();
            let grown: BTreeSet<CanonicalForm> = connected_classes(n)
                .unwrap()
                .iter()
                .map(|g| canonical_form(g).unwrap())
                .collect();
            assert_eq!(from_labeled, grown);
        }
    }

    #[test]
    fn tree_counts() {
        // OEIS A000055
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for n in 2..=10 {
            assert_eq!(
                enumerate_trees(n).unwrap().len(),
                expected[n - 1],
                "n = {n}"
            );
        }
        let t4 = enumerate_trees(4).unwrap();
        assert!(t4.iter().all(Graph::is_tree));
    }

    #[test]
    fn prufer_oracle_agrees_with_leaf_growth() {
        for n in 2..=7 {
            let via_prufer: BTreeSet<CanonicalForm> = labeled_trees(n)
                .unwrap()
                .map(|t| canonical_form(&t).unwrap())
                .collect();
            let grown: BTreeSet<CanonicalForm> = enumerate_trees(n)
                .unwrap()
                .iter()
                .map(|t| canonical_form(t).unwrap())
                .collect();
            assert_eq!(via_prufer, grown, "n = {n}");
        }
        assert_eq!(labeled_trees(7).unwrap().count(), 16807);
    }

    #[test]
    fn prufer_decode_known() {
        let t = prufer_decode(4, &[1, 1]).unwrap();
        assert_eq!(t.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (1, 3)]);
        assert!(prufer_decode(4, &[4, 0]).is_err());
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(connected_labeled(9), Err(Error::Capacity { .. })));
        assert!(matches!(enumerate_trees(11), Err(Error::Capacity { .. })));
        assert!(matches!(connected_classes(1), Err(Error::Capacity { .. })));
        let mut c = SweepConfig::new(9);
        assert!(verify_bound(&c).is_err());
        c.trees_only = true;
        c.order = 11;
        assert!(verify_bound(&c).is_err());
    }

    #[test]
    fn diameter_six_on_seven_vertices_is_the_path() {
        let mut c = SweepConfig::new(7);
        c.diameter_filter = Some((6, 6));
        c.dedup = true;
        let r = verify_bound(&c).unwrap();
        let b = r.bucket(6).unwrap();
        assert_eq!(b.isomorphism_classes, Some(1));
        assert_eq!(b.min_eci, EciValue(54));
        let p7 = canonical_form(&make_path(7).unwrap()).unwrap();
        assert_eq!(b.equality_witnesses, vec![to_graph6(&p7.to_graph())]);
        assert!(b.equality_all_volcano);
    }

    #[test]
    fn labeled_and_class_sweeps_agree() {
        let mut c = SweepConfig::new(6);
        let labeled = verify_bound(&c).unwrap();
        c.dedup = true;
        let classes = verify_bound(&c).unwrap();
        assert!(labeled.passed() && classes.passed());
        for (a, b) in labeled.buckets.iter().zip(&classes.buckets) {
            assert_eq!(a.diameter, b.diameter);
            assert_eq!(a.min_eci, b.min_eci);
            assert_eq!(a.equality_witnesses, b.equality_witnesses);
            assert_eq!(a.violations, b.violations);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn worker_count_does_not_change_the_report() {
        let mut c = SweepConfig::new(6);
        let one = verify_bound(&c).unwrap();
        c.workers = 4;
        assert_eq!(verify_bound(&c).unwrap(), one);
    }

    #[test]
    fn census_small_orders() {
        let mut c = SweepConfig::new(7);
        c.dedup = true;
        c.diameter_filter = Some((4, 4));
        let census = equality_census(&c).unwrap();
        assert_eq!(census.len(), 1);
        let v74 = canonical_form(&make_volcano(7, 4, None).unwrap()).unwrap();
        assert!(census[0].witnesses.contains(&to_graph6(&v74.to_graph())));
    }

    #[test]
    fn mask_connectivity_agrees_with_bfs() {
        for m in 0..1u64 << 10 {
            assert_eq!(
                mask_is_connected(5, m),
                Graph::from_upper_mask(5, m).is_connected()
            );
        }
    }
}
