//! Worklist driver combining k-core reduction, CH-partitioning and vertex
//! splitting.
//!
//! Every queued [`Subproblem`] carries a set of *forced* vertices: the
//! split vertices chosen on the way down, all adjacent to each other and to
//! every vertex of the subproblem graph. A clique `K` of the subproblem
//! stands for the clique `K ∪ forced` of the input, so bounds are shifted by
//! `|forced|` before reducing.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Condvar, Mutex};

use super::shrink::Shrinking;
use super::{ch_partition, CHPartition};
use crate::graph::{CliqueResult, Graph, SolveStats};
use crate::reduce::{k_core, reduce_graph_with, ReduceOptions};
use crate::{derive_seed, rng_from_seed, Error, Result};

/// Exact (or best-effort) maximum-clique solver for graphs of at most
/// `vertex_limit` vertices. Results are in the labels of the graph passed.
pub trait SubproblemSolver: Sync {
    fn name(&self) -> &str;

    /// `call_index` numbers the calls of one run, for seeding.
    fn solve(&self, g: &Graph, call_index: u64) -> Result<CliqueResult>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parts {
    /// Try `s = 1, 2, 4, ...` up to `max(2, 2|V| / vertex_limit)` and keep
    /// the cheapest partition (fewest parts on ties) among those whose part
    /// sizes `m_i` satisfy `sum m_i^2 <= |V|^2`.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitConfig {
    pub vertex_limit: usize,
    pub seed: u64,
    pub parts: Parts,
    /// Known clique size; defaults to the size of a greedy clique.
    pub lower_bound: Option<usize>,
    /// Worker threads for concurrent subproblem processing.
    pub workers: Option<usize>,
    /// Guard against runaway decompositions.
    pub max_subproblems: u64,
    pub reduce_options: ReduceOptions,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            vertex_limit: 45,
            seed: 0,
            parts: Parts::Auto,
            lower_bound: None,
            workers: None,
            max_subproblems: 50_000_000,
            reduce_options: ReduceOptions::default(),
        }
    }
}

impl SplitConfig {
    pub fn new(vertex_limit: usize, seed: u64) -> Self {
        SplitConfig {
            vertex_limit,
            seed,
            ..SplitConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subproblem {
    pub graph: Graph,
    /// Labels of vertices adjacent to all of `graph` and to each other.
    pub forced: Vec<usize>,
    id: u64,
}

impl Subproblem {
    pub fn new(graph: Graph, forced: Vec<usize>) -> Self {
        Subproblem {
            graph,
            forced,
            id: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }
}

/// Subproblems sorted by ascending vertex count, plus the incumbent.
#[derive(Debug, Clone, Default)]
pub struct SubproblemQueue {
    items: Vec<Subproblem>,
    lower_bound: usize,
    incumbent: Vec<usize>,
    history: Vec<usize>,
}

impl SubproblemQueue {
    /// Starts from `incumbent`; `lower_bound` is at least its size.
    pub fn new(incumbent: Vec<usize>, lower_bound: usize) -> Self {
        let lower_bound = lower_bound.max(incumbent.len());
        SubproblemQueue {
            items: Vec::new(),
            lower_bound,
            incumbent,
            history: vec![lower_bound],
        }
    }

    /// Inserts after any items of equal size.
    pub fn sorted_insert(&mut self, item: Subproblem) {
        let at = self.items.partition_point(|x| x.len() <= item.len());
        self.items.insert(at, item);
    }

    pub fn pop_largest(&mut self) -> Option<Subproblem> {
        self.items.pop()
    }

    pub fn peek_largest(&self) -> Option<&Subproblem> {
        self.items.last()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.items.iter().map(Subproblem::len).collect()
    }

    pub fn lower_bound(&self) -> usize {
        self.lower_bound
    }

    pub fn incumbent(&self) -> &[usize] {
        &self.incumbent
    }

    /// Keeps `clique` only if strictly larger than the incumbent.
    pub fn offer(&mut self, clique: Vec<usize>) -> bool {
        if clique.len() <= self.incumbent.len() {
            return false;
        }
        if clique.len() > self.lower_bound {
            self.lower_bound = clique.len();
            self.history.push(self.lower_bound);
        }
        self.incumbent = clique;
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitOutcome {
    pub clique: CliqueResult,
    /// Lower bound after initialization and after every increase.
    pub lower_bound_history: Vec<usize>,
    pub subproblems_created: u64,
    /// Oversized subproblems found to be complete graphs and taken whole.
    pub complete_shortcuts: u64,
}

/// Maximum clique of `g` via decomposition into pieces of at most
/// `cfg.vertex_limit` vertices. With an exact `solver` the result is a
/// maximum clique; `stats.subproblems_solved` counts solver calls.
pub fn split_solve<S: SubproblemSolver + ?Sized>(
    g: &Graph,
    cfg: &SplitConfig,
    solver: &S,
) -> Result<CliqueResult> {
    split_solve_detailed(g, cfg, solver).map(|o| o.clique)
}

pub fn split_solve_detailed<S: SubproblemSolver + ?Sized>(
    g: &Graph,
    cfg: &SplitConfig,
    solver: &S,
) -> Result<SplitOutcome> {
    if cfg.vertex_limit == 0 {
        return Err(Error::InvalidArgument("vertex_limit must be at least 1".into()));
    }
    let greedy = multi_start_greedy_clique(g);
    let lower_bound = cfg.lower_bound.unwrap_or(0).max(greedy.len());
    let run = Run {
        cfg,
        solver,
        state: Mutex::new(State {
            queue: SubproblemQueue::new(greedy, lower_bound),
            in_flight: 0,
        }),
        wake: Condvar::new(),
        lower_bound: AtomicUsize::new(lower_bound),
        calls: AtomicU64::new(0),
        reductions: AtomicU64::new(0),
        created: AtomicU64::new(0),
        shortcuts: AtomicU64::new(0),
        failed: AtomicBool::new(false),
        error: Mutex::new(None),
    };
    run.seed_queue(g)?;
    match cfg.workers {
        Some(w) if w > 1 => {
            std::thread::scope(|scope| {
                for _ in 0..w {
                    scope.spawn(|| run.work());
                }
            });
        }
        _ => run.work(),
    }
    if let Some(err) = run.error.into_inner().expect("error slot") {
        return Err(err);
    }
    let state = run.state.into_inner().expect("driver state");
    let stats = SolveStats {
        subproblems_solved: run.calls.into_inner(),
        reductions: run.reductions.into_inner(),
    };
    let clique = CliqueResult::new(state.queue.incumbent.clone(), solver.name()).with_stats(stats);
    Ok(SplitOutcome {
        clique,
        lower_bound_history: state.queue.history,
        subproblems_created: run.created.into_inner(),
        complete_shortcuts: run.shortcuts.into_inner(),
    })
}

/// Greedy clique: repeatedly add the highest-degree vertex adjacent to all
/// chosen so far (smallest id on ties). Returns labels.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    grow_greedy(g, Vec::new(), (0..g.num_vertices()).collect())
}

/// The greedy rule started from every vertex in turn; returns the largest
/// clique found (labels, first found on ties).
pub fn multi_start_greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best = greedy_clique(g);
    for v in 0..g.num_vertices() {
        if g.degree(v) < best.len() {
            continue;
        }
        let clique = grow_greedy(g, vec![v], g.neighbors(v).to_vec());
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

fn grow_greedy(g: &Graph, mut clique: Vec<usize>, mut candidates: Vec<usize>) -> Vec<usize> {
    while let Some(&v) = candidates
        .iter()
        .max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v)))
    {
        clique.push(v);
        candidates.retain(|&u| u != v && g.has_edge(u, v));
    }
    clique.into_iter().map(|v| g.label(v)).collect()
}

struct State {
    queue: SubproblemQueue,
    in_flight: usize,
}

struct Run<'a, S: ?Sized> {
    cfg: &'a SplitConfig,
    solver: &'a S,
    state: Mutex<State>,
    wake: Condvar,
    /// Mirror of the queue's lower bound for lock-free reads.
    lower_bound: AtomicUsize,
    calls: AtomicU64,
    reductions: AtomicU64,
    created: AtomicU64,
    shortcuts: AtomicU64,
    failed: AtomicBool,
    error: Mutex<Option<Error>>,
}

/// Work produced by one step: pieces to queue.
type Pieces = Vec<Subproblem>;

impl<S: SubproblemSolver + ?Sized> Run<'_, S> {
    fn limit(&self) -> usize {
        self.cfg.vertex_limit
    }

    fn bound_for(&self, forced: usize) -> usize {
        self.lower_bound.load(Ordering::Acquire).saturating_sub(forced)
    }

    fn offer(&self, clique: Vec<usize>) {
        let mut state = self.state.lock().expect("driver state");
        if state.queue.offer(clique) {
            self.lower_bound
                .fetch_max(state.queue.lower_bound(), Ordering::AcqRel);
        }
    }

    fn new_id(&self) -> Result<u64> {
        let id = self.created.fetch_add(1, Ordering::Relaxed);
        if id >= self.cfg.max_subproblems {
            return Err(Error::TooManySubproblems(self.cfg.max_subproblems));
        }
        Ok(id)
    }

    fn solve(&self, graph: &Graph, forced: &[usize]) -> Result<()> {
        let call = self.calls.fetch_add(1, Ordering::Relaxed);
        let found = self
            .solver
            .solve(graph, call)
            .map_err(|source| Error::Subproblem {
                graph: Box::new(graph.clone()),
                source: Box::new(source),
            })?;
        let mut clique = found.vertices;
        clique.extend_from_slice(forced);
        self.offer(clique);
        Ok(())
    }

    /// Solves `graph` if it fits, records `forced` if it is empty, and
    /// otherwise hands it back for queueing.
    fn settle(&self, graph: Graph, forced: Vec<usize>, pieces: &mut Pieces) -> Result<()> {
        if graph.is_empty() {
            self.offer(forced);
        } else if graph.num_vertices() <= self.limit() {
            self.solve(&graph, &forced)?;
        } else {
            let mut item = Subproblem::new(graph, forced);
            item.id = self.new_id()?;
            pieces.push(item);
        }
        Ok(())
    }

    fn reduce(&self, g: &Graph, bound: usize, rng: &mut crate::Rng) -> Graph {
        self.reductions.fetch_add(1, Ordering::Relaxed);
        reduce_graph_with(g, bound, rng, self.cfg.reduce_options).graph
    }

    /// k-core of the input, then one CH-partitioning; fills the queue.
    fn seed_queue(&self, g: &Graph) -> Result<()> {
        let mut pieces = Vec::new();
        if g.num_vertices() <= self.limit() {
            if !g.is_empty() {
                self.solve(g, &[])?;
            }
            return Ok(());
        }
        self.reductions.fetch_add(1, Ordering::Relaxed);
        let core = k_core(g, self.bound_for(0));
        if core.num_vertices() <= self.limit() {
            self.settle(core, Vec::new(), &mut pieces)?;
            return Ok(());
        }
        let partition = self.partition(&core)?;
        for i in 0..partition.num_parts() {
            let part = k_core(&partition.part_graph(&core, i), self.bound_for(0));
            self.settle(part, Vec::new(), &mut pieces)?;
        }
        let mut state = self.state.lock().expect("driver state");
        for item in pieces {
            state.queue.sorted_insert(item);
        }
        Ok(())
    }

    /// Cheapest partition among the candidate part counts. Every part is
    /// decomposed separately and that work grows faster than linearly in
    /// the part size, so partitions with `sum m_i^2 > |V|^2` are skipped:
    /// on random graphs a lower cost often means parts that each hold
    /// nearly the whole graph.
    fn partition(&self, g: &Graph) -> Result<CHPartition> {
        let n = g.num_vertices();
        let candidates: Vec<usize> = match self.cfg.parts {
            Parts::Fixed(s) => vec![s.min(n)],
            Parts::Auto => {
                let max_parts = (2 * n / self.limit()).max(2).min(n);
                std::iter::successors(Some(1usize), |&s| Some(s * 2))
                    .take_while(|&s| s <= max_parts)
                    .collect()
            }
        };
        let auto = candidates.len() > 1;
        let mut best: Option<CHPartition> = None;
        for s in candidates {
            let p = ch_partition(g, s, derive_seed(self.cfg.seed, s as u64))?;
            if auto && s > 1 && p.squared_size() > n * n {
                continue;
            }
            if best.as_ref().is_none_or(|b| p.cost() < b.cost()) {
                best = Some(p);
            }
        }
        Ok(best.expect("one part is always admissible"))
    }

    fn enqueue(&self, pieces: Pieces) {
        let mut state = self.state.lock().expect("driver state");
        for piece in pieces {
            state.queue.sorted_insert(piece);
        }
        drop(state);
        self.wake.notify_all();
    }

    /// Splitting steps on an oversized subproblem. The remainder `sg - v`
    /// of a step is usually the next item the queue would hand out; while
    /// it is, the next step runs on it in place instead of copying it.
    fn process(&self, item: Subproblem) -> Result<()> {
        let Subproblem {
            graph,
            forced,
            mut id,
        } = item;
        let mut sg = Shrinking::new(graph);
        loop {
            if self.failed.load(Ordering::Acquire) {
                return Ok(());
            }
            let mut rng = rng_from_seed(derive_seed(self.cfg.seed, id));
            if sg.is_complete() {
                self.shortcuts.fetch_add(1, Ordering::Relaxed);
                let mut clique = forced;
                clique.extend(sg.live_labels());
                self.offer(clique);
                return Ok(());
            }

            // Prefer a split vertex whose neighborhood fits after reduction.
            let mut tried = Vec::with_capacity(3);
            let mut chosen: Option<(usize, Graph)> = None;
            for attempt in 0..3 {
                let v = sg.choose_vertex(attempt);
                if tried.contains(&v) {
                    continue;
                }
                tried.push(v);
                let neighborhood = sg.neighborhood(v);
                let reduced = self.reduce(&neighborhood, self.bound_for(forced.len() + 1), &mut rng);
                let fits = reduced.num_vertices() <= self.limit();
                chosen = Some((v, reduced));
                if fits {
                    break;
                }
            }
            let (v, ssg) = chosen.expect("at least one attempt");

            sg.remove_vertex(v);
            self.reductions.fetch_add(1, Ordering::Relaxed);
            sg.reduce(self.bound_for(forced.len()), &mut rng, self.cfg.reduce_options);
            let rest_id = if sg.is_empty() {
                self.offer(forced.clone());
                None
            } else if sg.len() <= self.limit() {
                self.solve(&sg.materialize(), &forced)?;
                None
            } else {
                Some(self.new_id()?)
            };

            let mut with_v = forced.clone();
            with_v.push(sg.label(v));
            let bound = self.bound_for(with_v.len());
            let ssg = if ssg.is_empty() {
                ssg
            } else {
                self.reduce(&ssg, bound, &mut rng)
            };
            let mut pieces = Vec::new();
            self.settle(ssg, with_v, &mut pieces)?;

            let Some(rest_id) = rest_id else {
                self.enqueue(pieces);
                return Ok(());
            };
            // Queued after the remainder, an equal-sized piece comes out first.
            let mut state = self.state.lock().expect("driver state");
            let next = state.queue.peek_largest().map_or(0, Subproblem::len);
            let piece = pieces.first().map_or(0, Subproblem::len);
            if next <= sg.len() && piece < sg.len() {
                for piece in pieces {
                    state.queue.sorted_insert(piece);
                }
                drop(state);
                self.wake.notify_all();
                id = rest_id;
                continue;
            }
            let mut rest = Subproblem::new(sg.materialize(), forced);
            rest.id = rest_id;
            state.queue.sorted_insert(rest);
            for piece in pieces {
                state.queue.sorted_insert(piece);
            }
            drop(state);
            self.wake.notify_all();
            return Ok(());
        }
    }

    fn fail(&self, err: Error) {
        let mut slot = self.error.lock().expect("error slot");
        if slot.is_none() {
            *slot = Some(err);
        }
        self.failed.store(true, Ordering::Release);
        self.wake.notify_all();
    }

    fn work(&self) {
        loop {
            let item = {
                let mut state = self.state.lock().expect("driver state");
                loop {
                    if self.failed.load(Ordering::Acquire) {
                        return;
                    }
                    if let Some(item) = state.queue.pop_largest() {
                        state.in_flight += 1;
                        break item;
                    }
                    if state.in_flight == 0 {
                        self.wake.notify_all();
                        return;
                    }
                    state = self.wake.wait(state).expect("driver state");
                }
            };
            let result = self.process(item);
            let mut state = self.state.lock().expect("driver state");
            state.in_flight -= 1;
            drop(state);
            if let Err(err) = result {
                self.fail(err);
                return;
            }
            self.wake.notify_all();
        }
    }
}
