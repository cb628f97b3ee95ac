//! Depth-bounded exhaustive search of the oriented exchange graph.
//!
//! The search starts at `[B0; I]` and tries green directions in increasing
//! order. Every branch ends in one of three ways: the stop predicate holds,
//! no direction is green, or the depth bound is hit. The last case is
//! counted as a truncated branch, so a report always says whether it is
//! exhaustive.
//!
//! Affine quivers have infinite green paths (the Kronecker spiral is the
//! smallest example), so no depth bound removes every truncation there.
//! For those inputs the set of maximal green sequences is certified by
//! re-running at twice the depth and requiring the same set; see
//! [`enumerate_mgs_with_stability`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exchange::{ExchangeError, MutationIndex, QuiverSpec, Seed};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search is incomplete: {0}")]
    IncompleteSearch(String),
    #[error("mutation {index} at step {step} is not green")]
    NotGreen { step: usize, index: MutationIndex },
    #[error("sequence does not end at a seed with nonpositive c-matrix")]
    NotMaximal,
    #[error("maximal green sequence ends at {0:?}, not at [B0; -I] up to relabelling")]
    WrongEndpoint(Seed),
    #[error("maximal green sequence of length {len} is shorter than the rank {n}")]
    TooShort { len: usize, n: usize },
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
}

/// Knobs for one search run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_depth: usize,
    /// Cap on stored paths; exceeding it marks the report as overflowed.
    pub max_count: usize,
    /// Check skew-symmetrizability, `|det C| = 1`, sign coherence, the
    /// c-vector rule and the Nakanishi-Zelevinsky identity on every edge.
    pub audit_edges: bool,
}

impl SearchConfig {
    pub const DEFAULT_MAX_COUNT: usize = 1_000_000;

    pub fn with_depth(max_depth: usize) -> Self {
        Self {
            max_depth,
            max_count: Self::DEFAULT_MAX_COUNT,
            audit_edges: false,
        }
    }

    /// Depth `4 n^2`.
    pub fn default_for(spec: &QuiverSpec) -> Self {
        let n = spec.rank();
        Self::with_depth(4 * n * n)
    }

    pub fn audited(mut self) -> Self {
        self.audit_edges = true;
        self
    }
}

/// A green mutation sequence together with every seed it visits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenPath {
    indices: Vec<MutationIndex>,
    trail: Vec<Seed>,
}

impl GreenPath {
    /// Replays `indices` from the initial seed, requiring each step green.
    pub fn replay(spec: &QuiverSpec, indices: &[MutationIndex]) -> Result<Self, SearchError> {
        Self::replay_from(Seed::initial(spec), indices)
    }

    pub(crate) fn replay_from(start: Seed, indices: &[MutationIndex]) -> Result<Self, SearchError> {
        let n = start.rank();
        let mut trail = Vec::with_capacity(indices.len() + 1);
        trail.push(start);
        for (step, &k) in indices.iter().enumerate() {
            if k.get() > n {
                return Err(ExchangeError::IndexOutOfRange { k: k.get(), n }.into());
            }
            let cur = trail.last().expect("trail is never empty");
            if !cur.is_green(k) {
                return Err(SearchError::NotGreen { step, index: k });
            }
            let next = cur.mutate(k);
            trail.push(next);
        }
        Ok(Self {
            indices: indices.to_vec(),
            trail,
        })
    }

    pub fn indices(&self) -> &[MutationIndex] {
        &self.indices
    }

    pub fn trail(&self) -> &[Seed] {
        &self.trail
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn last_seed(&self) -> &Seed {
        self.trail.last().expect("trail is never empty")
    }

    pub fn index_values(&self) -> Vec<usize> {
        self.indices.iter().map(|k| k.get()).collect()
    }
}

/// A maximal green sequence: a green path from `[B0; I]` to `[B0; -I]`
/// (up to relabelling of directions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Mgs(GreenPath);

impl Mgs {
    /// Checks that `path` ends at `[B0; -I]` up to relabelling, where `B0`
    /// is the exchange matrix of its first seed.
    pub fn from_path(path: GreenPath) -> Result<Self, SearchError> {
        let start = &path.trail()[0];
        let n = start.rank();
        let end = path.last_seed();
        if !end.is_final() {
            return Err(SearchError::NotMaximal);
        }
        let terminal = Seed::from_parts(start.b().clone(), IntMatrix::identity(n).neg())?;
        if canonicalize(end) != canonicalize(&terminal) {
            return Err(SearchError::WrongEndpoint(end.clone()));
        }
        if path.len() < n {
            return Err(SearchError::TooShort { len: path.len(), n });
        }
        Ok(Self(path))
    }

    pub fn replay(spec: &QuiverSpec, indices: &[MutationIndex]) -> Result<Self, SearchError> {
        Self::from_path(GreenPath::replay(spec, indices)?)
    }

    /// Replays from the first seed of this sequence's trail.
    pub fn replay_like(&self, indices: &[MutationIndex]) -> Result<Self, SearchError> {
        Self::from_path(GreenPath::replay_from(self.trail()[0].clone(), indices)?)
    }

    pub fn path(&self) -> &GreenPath {
        &self.0
    }

    pub fn indices(&self) -> &[MutationIndex] {
        self.0.indices()
    }

    pub fn trail(&self) -> &[Seed] {
        self.0.trail()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_values(&self) -> Vec<usize> {
        self.0.index_values()
    }
}

impl fmt::Display for Mgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_sequence(&self.index_values()))
    }
}

/// `(1,2,1)`.
pub fn format_sequence(ks: &[usize]) -> String {
    let inner: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Per-edge invariant checks accumulated during a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeAudit {
    pub edges: usize,
    pub skew_failures: usize,
    pub det_failures: usize,
    pub sign_failures: usize,
    pub c_rule_failures: usize,
    pub nz_failures: usize,
}

impl EdgeAudit {
    pub fn is_clean(&self) -> bool {
        self.skew_failures == 0
            && self.det_failures == 0
            && self.sign_failures == 0
            && self.c_rule_failures == 0
            && self.nz_failures == 0
    }

    fn merge(&mut self, o: &EdgeAudit) {
        self.edges += o.edges;
        self.skew_failures += o.skew_failures;
        self.det_failures += o.det_failures;
        self.sign_failures += o.sign_failures;
        self.c_rule_failures += o.c_rule_failures;
        self.nz_failures += o.nz_failures;
    }

    fn check(&mut self, before: &Seed, after: &Seed, k: MutationIndex, d: &[i64]) {
        self.edges += 1;
        if !after.is_skew_symmetrizable_by(d) {
            self.skew_failures += 1;
        }
        if !after.has_unimodular_c() {
            self.det_failures += 1;
        }
        if !after.is_sign_coherent() {
            self.sign_failures += 1;
        }
        if !crate::exchange::c_vector_rule_holds(before, after, k) {
            self.c_rule_failures += 1;
        }
        if !nz_identity_holds(before, after, k, d) {
            self.nz_failures += 1;
        }
    }
}

/// Integer form of the Nakanishi-Zelevinsky check for a green step at `k`.
/// The transition matrix `X` differs from the identity only in row `k`
/// (`X_kk = -1`, `X_kp = max(0, b_kp)`); `C X = C'` together with
/// `|det C| = 1` identifies it with `C^{-1} C'`.
fn nz_identity_holds(before: &Seed, after: &Seed, k: MutationIndex, d: &[i64]) -> bool {
    let n = before.rank();
    let kk = k.zero_based();
    let mut x = IntMatrix::identity(n);
    for p in 0..n {
        let v = if p == kk {
            -1
        } else {
            before.b().get(kk, p).max(0)
        };
        x.set(kk, p, v);
    }
    if before.c().mul(&x) != *after.c() {
        return false;
    }
    let dm = IntMatrix::diagonal(d);
    dm.mul(after.b()) == x.transpose().mul(&dm).mul(before.b()).mul(&x)
}

/// Raw result of [`enumerate_green_paths`].
#[derive(Clone, Debug, Serialize)]
pub struct PathSearch {
    pub paths: Vec<GreenPath>,
    pub max_depth: usize,
    /// No branch hit the depth bound and the path cap was not exceeded.
    pub complete: bool,
    pub truncated_branches: usize,
    /// Branches with no green direction on which the stop predicate failed.
    pub dead_ends: usize,
    /// Branches cut because a canonical seed repeated along the path.
    pub repeated_seeds: usize,
    pub overflow: bool,
    pub explored_nodes: usize,
    pub audit: EdgeAudit,
}

#[derive(Default)]
struct Collector {
    paths: Vec<GreenPath>,
    truncated: usize,
    dead_ends: usize,
    repeated: usize,
    overflow: bool,
    nodes: usize,
    audit: EdgeAudit,
}

struct Dfs<'a> {
    d: &'a [i64],
    cfg: SearchConfig,
    stop: &'a (dyn Fn(&Seed) -> bool + Sync),
    out: Collector,
    indices: Vec<MutationIndex>,
    trail: Vec<Seed>,
    on_path: HashSet<CanonicalSeed>,
}

impl Dfs<'_> {
    fn visit(&mut self) {
        self.out.nodes += 1;
        let seed = self.trail.last().expect("trail is never empty").clone();
        if (self.stop)(&seed) {
            if self.out.paths.len() < self.cfg.max_count {
                self.out.paths.push(GreenPath {
                    indices: self.indices.clone(),
                    trail: self.trail.clone(),
                });
            } else {
                self.out.overflow = true;
            }
            return;
        }
        let greens = seed.green_directions();
        if greens.is_empty() {
            self.out.dead_ends += 1;
            return;
        }
        if self.indices.len() >= self.cfg.max_depth {
            self.out.truncated += 1;
            return;
        }
        for k in greens {
            self.descend(&seed, k);
        }
    }

    fn descend(&mut self, seed: &Seed, k: MutationIndex) {
        let next = seed.mutate(k);
        if self.cfg.audit_edges {
            self.out.audit.check(seed, &next, k, self.d);
        }
        let canon = canonicalize(&next);
        if !self.on_path.insert(canon.clone()) {
            self.out.repeated += 1;
            return;
        }
        self.indices.push(k);
        self.trail.push(next);
        self.visit();
        self.trail.pop();
        self.indices.pop();
        self.on_path.remove(&canon);
    }
}

/// Enumerates green paths from the initial seed until `stop` holds.
///
/// First-level subtrees run in parallel; results are merged in direction
/// order, so the output is the same as a sequential run.
pub fn enumerate_green_paths(
    spec: &QuiverSpec,
    cfg: SearchConfig,
    stop: &(dyn Fn(&Seed) -> bool + Sync),
) -> PathSearch {
    let root = Seed::initial(spec);
    let new_dfs = |trail: Vec<Seed>, indices: Vec<MutationIndex>| {
        let on_path = trail.iter().map(canonicalize).collect();
        Dfs {
            d: spec.symmetrizer(),
            cfg,
            stop,
            out: Collector::default(),
            indices,
            trail,
            on_path,
        }
    };

    let mut parts: Vec<Collector> = Vec::new();
    let root_stops = stop(&root);
    let greens = root.green_directions();
    if root_stops || greens.is_empty() || cfg.max_depth == 0 {
        let mut dfs = new_dfs(vec![root], Vec::new());
        dfs.visit();
        parts.push(dfs.out);
    } else {
        let mut head = Collector {
            nodes: 1,
            ..Collector::default()
        };
        if cfg.audit_edges {
            for &k in &greens {
                head.audit
                    .check(&root, &root.mutate(k), k, spec.symmetrizer());
            }
        }
        parts.push(head);
        let subtrees: Vec<Collector> = greens
            .par_iter()
            .map(|&k| {
                let next = root.mutate(k);
                let mut dfs = new_dfs(vec![root.clone(), next], vec![k]);
                dfs.visit();
                dfs.out
            })
            .collect();
        parts.extend(subtrees);
    }

    let mut paths = Vec::new();
    let (mut truncated, mut dead_ends, mut repeated, mut nodes) = (0, 0, 0, 0);
    let mut overflow = false;
    let mut audit = EdgeAudit::default();
    for p in parts {
        paths.extend(p.paths);
        truncated += p.truncated;
        dead_ends += p.dead_ends;
        repeated += p.repeated;
        nodes += p.nodes;
        overflow |= p.overflow;
        audit.merge(&p.audit);
    }
    paths.sort_by(|a, b| a.indices.cmp(&b.indices));
    if paths.len() > cfg.max_count {
        paths.truncate(cfg.max_count);
        overflow = true;
    }
    PathSearch {
        paths,
        max_depth: cfg.max_depth,
        complete: truncated == 0 && !overflow,
        truncated_branches: truncated,
        dead_ends,
        repeated_seeds: repeated,
        overflow,
        explored_nodes: nodes,
        audit,
    }
}

/// Result of re-running a search at a larger depth bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityCheck {
    pub depth: usize,
    /// The deeper run found exactly the same maximal green sequences.
    pub stable: bool,
    pub truncated_branches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub rank: usize,
    pub max_depth: usize,
    /// Sorted lexicographically by index sequence.
    pub mgs_list: Vec<Mgs>,
    /// No branch was truncated by the depth bound (and no overflow).
    pub complete: bool,
    pub truncated_branches: usize,
    pub overflow: bool,
    /// Length -> number of sequences of that length.
    pub lengths: BTreeMap<usize, usize>,
    pub stability: Option<StabilityCheck>,
    pub dead_ends: usize,
    pub repeated_seeds: usize,
    pub explored_nodes: usize,
    pub audit: EdgeAudit,
    /// Paths the engine produced that failed an MGS invariant.
    pub violations: Vec<String>,
}

impl SearchReport {
    /// Every maximal green sequence is in `mgs_list`: either no branch was
    /// truncated, or a doubled-depth rerun found the same set.
    pub fn mgs_set_complete(&self) -> bool {
        !self.overflow && (self.complete || self.stability.is_some_and(|s| s.stable))
    }

    pub fn require_mgs_set_complete(&self) -> Result<(), SearchError> {
        if self.mgs_set_complete() {
            return Ok(());
        }
        let why = if self.overflow {
            "stored sequence count exceeded max_count".to_string()
        } else if let Some(s) = self.stability {
            format!(
                "MGS set changed between depth {} and depth {}",
                self.max_depth, s.depth
            )
        } else {
            format!(
                "{} branches truncated at depth {} and no stability check was run",
                self.truncated_branches, self.max_depth
            )
        };
        Err(SearchError::IncompleteSearch(why))
    }

    pub fn length_set(&self) -> BTreeSet<usize> {
        self.lengths.keys().copied().collect()
    }

    pub fn min_length(&self) -> Option<usize> {
        self.lengths.keys().next().copied()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.lengths.keys().next_back().copied()
    }

    pub fn sequences(&self) -> Vec<Vec<usize>> {
        self.mgs_list.iter().map(Mgs::index_values).collect()
    }
}

/// Enumerates maximal green sequences (stop predicate: final seed).
pub fn enumerate_mgs(spec: &QuiverSpec, cfg: SearchConfig) -> SearchReport {
    let raw = enumerate_green_paths(spec, cfg, &Seed::is_final);
    let mut violations = Vec::new();
    let mut mgs_list = Vec::with_capacity(raw.paths.len());
    for path in raw.paths {
        let label = format_sequence(&path.index_values());
        match Mgs::from_path(path) {
            Ok(m) => mgs_list.push(m),
            Err(e) => violations.push(format!("{label}: {e}")),
        }
    }
    if raw.repeated_seeds > 0 {
        violations.push(format!(
            "{} green paths revisited a cluster",
            raw.repeated_seeds
        ));
    }
    let mut lengths = BTreeMap::new();
    for m in &mgs_list {
        *lengths.entry(m.len()).or_insert(0) += 1;
    }
    SearchReport {
        rank: spec.rank(),
        max_depth: raw.max_depth,
        mgs_list,
        complete: raw.complete,
        truncated_branches: raw.truncated_branches,
        overflow: raw.overflow,
        lengths,
        stability: None,
        dead_ends: raw.dead_ends,
        repeated_seeds: raw.repeated_seeds,
        explored_nodes: raw.explored_nodes,
        audit: raw.audit,
        violations,
    }
}

/// Runs [`enumerate_mgs`] and, when branches were truncated, reruns at
/// twice the depth and records whether the MGS sets agree.
pub fn enumerate_mgs_with_stability(spec: &QuiverSpec, cfg: SearchConfig) -> SearchReport {
    let mut report = enumerate_mgs(spec, cfg);
    if !report.complete && !report.overflow {
        let deeper_cfg = SearchConfig {
            max_depth: cfg.max_depth * 2,
            ..cfg
        };
        let deeper = enumerate_mgs(spec, deeper_cfg);
        report.stability = Some(StabilityCheck {
            depth: deeper_cfg.max_depth,
            stable: !deeper.overflow && deeper.sequences() == report.sequences(),
            truncated_branches: deeper.truncated_branches,
        });
        report.audit.merge(&deeper.audit);
        report.violations.extend(deeper.violations);
    }
    report
}

/// The set of lengths is an integer interval.
pub fn no_gap(report: &SearchReport) -> Result<bool, SearchError> {
    report.require_mgs_set_complete()?;
    Ok(lengths_form_interval(&report.length_set()))
}

pub fn lengths_form_interval(lengths: &BTreeSet<usize>) -> bool {
    match (lengths.first(), lengths.last()) {
        (Some(&lo), Some(&hi)) => hi - lo + 1 == lengths.len(),
        _ => true,
    }
}

/// Smallest `l0` with `#{len <= l0} > 0` and `#{len <= l0} = #{len <= l0 + 1}`.
pub fn empirical_max_from_lengths(lengths: &BTreeMap<usize, usize>) -> Option<usize> {
    let max = *lengths.keys().next_back()?;
    let at_most = |l: usize| -> usize { lengths.range(..=l).map(|(_, c)| c).sum() };
    (1..=max).find(|&l| at_most(l) > 0 && at_most(l) == at_most(l + 1))
}

/// Runs the search at each depth of `schedule` in turn and stops at the
/// first run that is exhaustive or agrees with its predecessor; the
/// empirical maximum length of that MGS set is returned.
pub fn empirical_max_length(
    spec: &QuiverSpec,
    schedule: &[usize],
    base: SearchConfig,
) -> Result<usize, SearchError> {
    let mut previous: Option<SearchReport> = None;
    for &depth in schedule {
        let report = enumerate_mgs(
            spec,
            SearchConfig {
                max_depth: depth,
                ..base
            },
        );
        let settled = !report.overflow
            && (report.complete
                || previous
                    .as_ref()
                    .is_some_and(|p| !p.overflow && p.sequences() == report.sequences()));
        if settled {
            return empirical_max_from_lengths(&report.lengths).ok_or_else(|| {
                SearchError::IncompleteSearch("no maximal green sequence found".into())
            });
        }
        previous = Some(report);
    }
    Err(SearchError::IncompleteSearch(format!(
        "MGS set did not stabilise over depths {schedule:?}"
    )))
}

/// A seed with its directions relabelled so that the columns of `C` are in
/// strictly decreasing lexicographic order. Two seeds are the same unlabelled
/// cluster exactly when their canonical forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalSeed(Seed);

impl CanonicalSeed {
    pub fn seed(&self) -> &Seed {
        &self.0
    }

    pub fn into_seed(self) -> Seed {
        self.0
    }
}

/// Position `t` of the canonical form carries original label `perm[t]`.
pub fn canonical_permutation(seed: &Seed) -> Vec<usize> {
    let c = seed.c();
    let cols: Vec<Vec<i64>> = (0..seed.rank()).map(|j| c.col(j)).collect();
    let mut perm: Vec<usize> = (0..seed.rank()).collect();
    perm.sort_by(|&a, &b| cols[b].cmp(&cols[a]).then(a.cmp(&b)));
    perm
}

pub fn canonicalize(seed: &Seed) -> CanonicalSeed {
    CanonicalSeed(seed.relabel(&canonical_permutation(seed)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// Mutation indices (as used along the trails) realising this edge.
    pub labels: BTreeSet<usize>,
}

/// The part of the oriented exchange graph covered by the MGS trails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeGraph {
    pub nodes: Vec<CanonicalSeed>,
    pub edges: Vec<GraphEdge>,
}

/// Nodes are numbered in order of first appearance along the sorted MGS
/// list; edges follow the same order.
pub fn export_exchange_graph(report: &SearchReport) -> ExchangeGraph {
    let mut ids: HashMap<CanonicalSeed, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges: Vec<GraphEdge> = Vec::new();
    let mut id_of = |s: &Seed, nodes: &mut Vec<CanonicalSeed>| {
        let c = canonicalize(s);
        *ids.entry(c.clone()).or_insert_with(|| {
            nodes.push(c);
            nodes.len() - 1
        })
    };
    for m in &report.mgs_list {
        let trail = m.trail();
        let mut prev = id_of(&trail[0], &mut nodes);
        for (t, k) in m.indices().iter().enumerate() {
            let next = id_of(&trail[t + 1], &mut nodes);
            let e = *edge_ids.entry((prev, next)).or_insert_with(|| {
                edges.push(GraphEdge {
                    from: prev,
                    to: next,
                    labels: BTreeSet::new(),
                });
                edges.len() - 1
            });
            edges[e].labels.insert(k.get());
            prev = next;
        }
    }
    ExchangeGraph { nodes, edges }
}
