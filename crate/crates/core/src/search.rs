//! Extremal family search.
//!
//! Each family kind's pairwise condition is a symmetric binary
//! predicate, so the largest qualifying family is a maximum clique in
//! the compatibility graph over candidate subspaces. The clique engine
//! is branch-and-bound over bitset candidate sets with greedy-coloring
//! upper bounds, optionally parallel: workers pull disjoint top-level
//! subtrees and share the incumbent size through an atomic.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bitset::BitSet;
use crate::error::Error;
use crate::family::{
    self, construct_extremal, BoundStatus, Construction, Family, FamilyKind, TheoremBound,
    VerificationReport,
};
use crate::field::FieldSpec;
use crate::qcount;
use crate::subspace::{self, enumerate_subspaces, Subspace};

/// Default cap on compatibility-graph size.
pub const DEFAULT_VERTEX_LIMIT: usize = 20_000;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub time_limit: Option<Duration>,
    pub worker_count: usize,
    /// With one worker, rewrite the witness to the lexicographically
    /// smallest maximum clique in vertex order. Parallel runs guarantee
    /// only the size.
    pub deterministic_witness: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            time_limit: None,
            worker_count: 1,
            deterministic_witness: true,
        }
    }
}

/// Compatibility graph over candidate subspaces. Vertex i and j are
/// adjacent exactly when the pair satisfies the kind's pairwise
/// condition; vertices that cannot pair with anything (the whole space,
/// say) simply stay isolated.
#[derive(Debug, Clone)]
pub struct CompatGraph {
    kind: FamilyKind,
    field: FieldSpec,
    n: usize,
    vertices: Vec<Subspace>,
    adj: Vec<BitSet>,
}

impl CompatGraph {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &[BitSet] {
        &self.adj
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].get(j)
    }
}

fn candidate_dims(kind: FamilyKind, n: usize) -> Vec<usize> {
    match kind {
        FamilyKind::Oddtown | FamilyKind::SkewPairs => (1..=n).filter(|d| d % 2 == 1).collect(),
        FamilyKind::ReverseOddtown => (2..=n).filter(|d| d % 2 == 0).collect(),
        FamilyKind::Fisher(k) => (k.get()..=n).collect(),
    }
}

fn pair_compatible(kind: FamilyKind, a: &Subspace, b: &Subspace) -> bool {
    let d = subspace::intersection_dim(a, b).unwrap();
    match kind {
        FamilyKind::Fisher(k) => d == k.get(),
        FamilyKind::Oddtown | FamilyKind::SkewPairs => d % 2 == 0,
        FamilyKind::ReverseOddtown => d % 2 == 1,
    }
}

pub fn build_compat_graph(
    kind: FamilyKind,
    field: &FieldSpec,
    n: usize,
) -> Result<CompatGraph, Error> {
    build_compat_graph_with_limit(kind, field, n, DEFAULT_VERTEX_LIMIT)
}

pub fn build_compat_graph_with_limit(
    kind: FamilyKind,
    field: &FieldSpec,
    n: usize,
    limit: usize,
) -> Result<CompatGraph, Error> {
    let q = field.order() as u64;
    let dims = candidate_dims(kind, n);
    let count: BigUint = dims
        .iter()
        .map(|&d| qcount::q_binomial(n as u64, d as u64, q).unwrap())
        .sum();
    if count > BigUint::from(limit) {
        return Err(Error::TooLarge {
            candidates: count.to_usize().unwrap_or(usize::MAX),
            limit,
        });
    }
    let vertices: Vec<Subspace> = dims
        .iter()
        .flat_map(|&d| enumerate_subspaces(field, n, d))
        .collect();
    let nv = vertices.len();
    let mut adj = vec![BitSet::new(nv); nv];
    for i in 0..nv {
        for j in i + 1..nv {
            if pair_compatible(kind, &vertices[i], &vertices[j]) {
                adj[i].set(j, true);
                adj[j].set(i, true);
            }
        }
    }
    Ok(CompatGraph {
        kind,
        field: field.clone(),
        n,
        vertices,
        adj,
    })
}

#[derive(Debug, Clone)]
pub struct CliqueResult {
    pub max_size: usize,
    /// Vertex indices of one maximum clique, ascending.
    pub witness: Vec<usize>,
    /// True when the search space was exhausted; `max_size` is then
    /// exact rather than a lower bound.
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

struct Solver<'a> {
    adj: &'a [BitSet],
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
}

impl<'a> Solver<'a> {
    fn new(adj: &'a [BitSet], seed: &[usize], deadline: Option<Instant>) -> Self {
        Solver {
            adj,
            best: AtomicUsize::new(seed.len()),
            witness: Mutex::new(seed.to_vec()),
            nodes: AtomicU64::new(0),
            deadline,
            timed_out: AtomicBool::new(false),
        }
    }

    fn out_of_time(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                self.timed_out.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn record(&self, clique: &[usize]) {
        let size = clique.len();
        let mut cur = self.best.load(Ordering::Relaxed);
        while size > cur {
            match self
                .best
                .compare_exchange(cur, size, Ordering::SeqCst, Ordering::Relaxed)
            {
                Ok(_) => {
                    let mut w = self.witness.lock().unwrap();
                    if size > w.len() {
                        let mut sorted = clique.to_vec();
                        sorted.sort_unstable();
                        *w = sorted;
                    }
                    return;
                }
                Err(actual) => cur = actual,
            }
        }
    }

    /// Greedy sequential coloring of `p`; returns (vertex, color) with
    /// colors ascending. The number of colors bounds any clique in `p`.
    fn color_order(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut rest = p.clone();
        let mut out = Vec::with_capacity(p.count_ones());
        let mut color = 0;
        while rest.any() {
            color += 1;
            let mut class = rest.clone();
            while let Some(v) = class.first_set() {
                class.set(v, false);
                class.and_not_assign(&self.adj[v]);
                rest.set(v, false);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&self, r: &mut Vec<usize>, p: &BitSet) {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.out_of_time() {
            return;
        }
        let order = self.color_order(p);
        let mut p = p.clone();
        for &(v, color) in order.iter().rev() {
            if r.len() + color <= self.best.load(Ordering::Relaxed) {
                return;
            }
            let mut child = p.clone();
            child.and_assign(&self.adj[v]);
            r.push(v);
            if child.any() {
                self.expand(r, &child);
            } else {
                self.record(r);
            }
            r.pop();
            if self.timed_out.load(Ordering::Relaxed) {
                return;
            }
            p.set(v, false);
        }
    }

    /// Decision search: does `p` contain a clique of size >= `need`?
    fn has_clique(&self, p: &BitSet, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if p.count_ones() < need {
            return false;
        }
        let order = self.color_order(p);
        let mut p = p.clone();
        for &(v, color) in order.iter().rev() {
            if color < need {
                return false;
            }
            let mut child = p.clone();
            child.and_assign(&self.adj[v]);
            if self.has_clique(&child, need - 1) {
                return true;
            }
            p.set(v, false);
        }
        false
    }

    /// The lexicographically smallest clique of size `omega`, built by
    /// greedy extension with feasibility checks.
    fn lex_smallest(&self, omega: usize) -> Vec<usize> {
        let nv = self.adj.len();
        let mut chosen = Vec::with_capacity(omega);
        let mut p = BitSet::full(nv);
        while chosen.len() < omega {
            let mut advanced = false;
            let candidates: Vec<usize> = p.iter_ones().collect();
            for v in candidates {
                let mut rest = p.clone();
                rest.and_assign(&self.adj[v]);
                rest.clear_below(v + 1);
                if self.has_clique(&rest, omega - chosen.len() - 1) {
                    chosen.push(v);
                    p = rest;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "a maximum clique of the proven size must exist");
        }
        chosen
    }
}

/// Maximum clique over an explicit adjacency structure. `seed` is an
/// optional known clique used as the initial incumbent.
pub fn max_clique_adjacency(
    adj: &[BitSet],
    cfg: &SearchConfig,
    seed: Option<&[usize]>,
) -> CliqueResult {
    let start = Instant::now();
    let nv = adj.len();
    let seed = seed.unwrap_or(&[]);
    debug_assert!(is_clique(adj, seed), "seed must be a clique");
    let deadline = cfg.time_limit.map(|l| start + l);
    let solver = Solver::new(adj, seed, deadline);

    if nv > 0 {
        // Top-level branches in the same order the sequential loop
        // would take, each a disjoint subtree.
        let root = BitSet::full(nv);
        let order = solver.color_order(&root);
        let mut p = root;
        let mut branches = Vec::with_capacity(order.len());
        for &(v, color) in order.iter().rev() {
            let mut child = p.clone();
            child.and_assign(&adj[v]);
            branches.push((v, color, child));
            p.set(v, false);
        }
        let next = AtomicUsize::new(0);
        let workers = cfg.worker_count.max(1).min(branches.len().max(1));
        let run = |solver: &Solver| loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            if i >= branches.len() || solver.out_of_time() {
                break;
            }
            let (v, color, child) = &branches[i];
            if *color <= solver.best.load(Ordering::Relaxed) {
                continue;
            }
            solver.nodes.fetch_add(1, Ordering::Relaxed);
            let mut r = vec![*v];
            if child.any() {
                solver.expand(&mut r, child);
            } else {
                solver.record(&r);
            }
        };
        if workers == 1 {
            run(&solver);
        } else {
            std::thread::scope(|s| {
                for _ in 0..workers {
                    s.spawn(|| run(&solver));
                }
            });
        }
    }

    let timed_out = solver.timed_out.load(Ordering::Relaxed);
    let max_size = solver.best.load(Ordering::Relaxed);
    let mut witness = solver.witness.lock().unwrap().clone();
    if cfg.deterministic_witness && cfg.worker_count == 1 && !timed_out && max_size > 0 {
        witness = solver.lex_smallest(max_size);
    }
    CliqueResult {
        max_size,
        witness,
        proven_optimal: !timed_out,
        nodes_explored: solver.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    }
}

fn is_clique(adj: &[BitSet], vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(a, &i)| vs[a + 1..].iter().all(|&j| adj[i].get(j)))
}

pub fn max_clique(graph: &CompatGraph, cfg: &SearchConfig) -> CliqueResult {
    max_clique_adjacency(&graph.adj, cfg, None)
}

/// Search outcome for one (kind, q, n) instance, with the witness
/// family re-verified through the family checks before emission.
#[derive(Debug, Clone)]
pub struct ExtremalReport {
    pub kind: FamilyKind,
    pub q: u64,
    pub n: usize,
    pub vertex_count: usize,
    pub max_size: usize,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub bound: TheoremBound,
    /// max_size <= bound value (for open bounds: the reference value).
    pub bound_satisfied: bool,
    /// max_size equals the bound value exactly.
    pub bound_tight: bool,
    /// A witness strictly above the conjectured value: a reportable
    /// discovery, never an error.
    pub exceeds_conjectured: bool,
    pub witness: Family,
    pub verification: VerificationReport,
}

/// The constructions give known qualifying families; inject one as the
/// initial incumbent where the kind admits one.
fn paper_seed(kind: FamilyKind, field: &FieldSpec, n: usize) -> Option<Family> {
    match kind {
        FamilyKind::Oddtown | FamilyKind::SkewPairs => {
            construct_extremal(Construction::AllLines, field, n).ok()
        }
        FamilyKind::ReverseOddtown => {
            let which = if n % 2 == 1 {
                Construction::AllHyperplanes
            } else {
                Construction::InsideHyperplane
            };
            construct_extremal(which, field, n).ok()
        }
        FamilyKind::Fisher(k) if k.get() == 0 => {
            construct_extremal(Construction::AllLines, field, n).ok()
        }
        FamilyKind::Fisher(_) => None,
    }
}

pub fn search_extremal(
    kind: FamilyKind,
    field: &FieldSpec,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ExtremalReport, Error> {
    let graph = build_compat_graph(kind, field, n)?;
    let index: HashMap<&Subspace, usize> = graph
        .vertices
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let seed_indices: Option<Vec<usize>> = paper_seed(kind, field, n).and_then(|f| {
        f.members()
            .iter()
            .map(|m| index.get(m).copied())
            .collect::<Option<Vec<usize>>>()
    });

    let (clique, witness_members) = if graph.vertex_count() == 0 {
        // No candidate can pair with anything, but a singleton family
        // always qualifies vacuously.
        let clique = CliqueResult {
            max_size: 1,
            witness: Vec::new(),
            proven_optimal: true,
            nodes_explored: 0,
            elapsed: Duration::ZERO,
        };
        (clique, vec![Subspace::zero(field, n)])
    } else {
        let clique = max_clique_adjacency(&graph.adj, cfg, seed_indices.as_deref());
        let members = clique
            .witness
            .iter()
            .map(|&i| graph.vertices[i].clone())
            .collect();
        (clique, members)
    };

    let witness = Family::new(field.clone(), n, witness_members)?;
    let verification = family::verify_family(&witness, kind);
    if !verification.conditions_hold || !verification.witnesses_consistent {
        return Err(Error::InternalInconsistency(format!(
            "search witness fails verification: {}",
            verification
                .failure_detail
                .as_deref()
                .unwrap_or("unknown cause")
        )));
    }

    let q = field.order() as u64;
    let bound = family::bound_for(kind, n, q);
    let max_size = clique.max_size;
    let big_max = BigUint::from(max_size);
    if bound.status == BoundStatus::Proven && big_max > bound.value {
        return Err(Error::InternalInconsistency(format!(
            "witness of size {max_size} exceeds the proven bound {}",
            bound.value
        )));
    }
    let bound_satisfied = big_max <= bound.value;
    let bound_tight = big_max == bound.value;
    let exceeds_conjectured = bound
        .conjectured
        .as_ref()
        .map(|c| big_max > *c)
        .unwrap_or(false);

    Ok(ExtremalReport {
        kind,
        q,
        n,
        vertex_count: graph.vertex_count(),
        max_size,
        proven_optimal: clique.proven_optimal,
        nodes_explored: clique.nodes_explored,
        elapsed: clique.elapsed,
        bound,
        bound_satisfied,
        bound_tight,
        exceeds_conjectured,
        witness,
        verification,
    })
}

/// One entry of a batch experiment; oversized or invalid instances are
/// recorded and the batch continues.
#[derive(Debug)]
pub enum InstanceOutcome {
    Completed(Box<ExtremalReport>),
    Skipped {
        kind: FamilyKind,
        q: u64,
        n: usize,
        reason: String,
    },
}

#[derive(Debug)]
pub struct BatchReport {
    pub experiment: String,
    pub instances: Vec<InstanceOutcome>,
}

fn run_instance(kind: FamilyKind, q: u64, n: usize, cfg: &SearchConfig) -> InstanceOutcome {
    let field = match FieldSpec::new(q) {
        Ok(f) => f,
        Err(e) => {
            return InstanceOutcome::Skipped {
                kind,
                q,
                n,
                reason: e.to_string(),
            }
        }
    };
    match search_extremal(kind, &field, n, cfg) {
        Ok(report) => InstanceOutcome::Completed(Box::new(report)),
        Err(e) => InstanceOutcome::Skipped {
            kind,
            q,
            n,
            reason: e.to_string(),
        },
    }
}

/// Reverse-oddtown searches over a (q, n) grid, testing whether the
/// observed maxima stay within the conjectured [n-1]_q at even n.
/// The outcome is recorded evidence per instance; it never labels the
/// conjecture proven or refuted.
pub fn run_conjecture_experiment(grid: &[(u64, usize)], cfg: &SearchConfig) -> BatchReport {
    let instances = grid
        .iter()
        .map(|&(q, n)| run_instance(FamilyKind::ReverseOddtown, q, n, cfg))
        .collect();
    BatchReport {
        experiment: "conjecture".to_string(),
        instances,
    }
}

/// Oddtown/reverse-oddtown searches at even q, where no theorem
/// constrains the maximum; every bound in the reports carries the
/// "open" status.
pub fn run_even_q_exploration(
    grid: &[(u64, usize)],
    kinds: &[FamilyKind],
    cfg: &SearchConfig,
) -> BatchReport {
    let instances = grid
        .iter()
        .flat_map(|&(q, n)| kinds.iter().map(move |&k| run_instance(k, q, n, cfg)))
        .collect();
    BatchReport {
        experiment: "explore_even_q".to_string(),
        instances,
    }
}
