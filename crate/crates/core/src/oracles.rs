//! Exact search oracles on built graphs.
//!
//! Polynomial checks (components, girth, Euler tours) run on graphs of any
//! size. The exponential searches (Hamiltonicity, fixed-length cycles, longest
//! induced cycles and paths) copy the graph into 128-bit adjacency masks and
//! refuse anything above the configured vertex limit. Every search explores
//! candidates in ascending vertex id, so witnesses are reproducible.

use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::jgraph::JacobsonGraph;
use crate::theorems::{HamStatus, LengthValue};

pub const DEFAULT_ORACLE_VERTEX_LIMIT: usize = 24;
pub const DEFAULT_TIME_LIMIT_MS: u64 = 60_000;
/// Width of the adjacency masks used by the exponential searches.
pub const KERNEL_CAPACITY: usize = 128;
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub vertex_limit: usize,
    pub time_limit_ms: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            vertex_limit: DEFAULT_ORACLE_VERTEX_LIMIT,
            time_limit_ms: DEFAULT_TIME_LIMIT_MS,
        }
    }
}

impl SearchBudget {
    pub fn with_vertex_limit(vertex_limit: usize) -> Self {
        SearchBudget {
            vertex_limit,
            ..Self::default()
        }
    }
}

/// Why a search gave up without an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Exceeded {
    VertexLimit { vertices: usize, limit: usize },
    TimeLimit { limit_ms: u64 },
}

impl std::fmt::Display for Exceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exceeded::VertexLimit { vertices, limit } => {
                write!(f, "{vertices} vertices exceed the oracle limit of {limit}")
            }
            Exceeded::TimeLimit { limit_ms } => write!(f, "time limit of {limit_ms} ms reached"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    ProvedAbsent,
    BudgetExceeded(Exceeded),
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    /// Distinct vertices, at least three, last adjacent to first. The first
    /// vertex is not repeated.
    Cycle,
    /// Distinct vertices, at least one.
    Path,
    /// Closed walk with distinct edges; the first vertex is repeated at the end.
    Tour,
    /// Open walk with distinct edges.
    Trail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub kind: WalkKind,
    pub vertices: Vec<usize>,
}

impl Walk {
    pub fn new(kind: WalkKind, vertices: Vec<usize>) -> Self {
        Walk { kind, vertices }
    }

    pub fn cycle(vertices: Vec<usize>) -> Self {
        Walk::new(WalkKind::Cycle, vertices)
    }

    pub fn path(vertices: Vec<usize>) -> Self {
        Walk::new(WalkKind::Path, vertices)
    }

    /// Number of edges traversed.
    pub fn length(&self) -> usize {
        match self.kind {
            WalkKind::Cycle => self.vertices.len(),
            _ => self.vertices.len().saturating_sub(1),
        }
    }

    /// Consecutive vertex pairs, including the closing pair of a cycle.
    pub fn steps(&self) -> Vec<(usize, usize)> {
        let v = &self.vertices;
        let mut out: Vec<(usize, usize)> = v.windows(2).map(|w| (w[0], w[1])).collect();
        if self.kind == WalkKind::Cycle && v.len() >= 2 {
            out.push((v[v.len() - 1], v[0]));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    TooShort { len: usize },
    OutOfRange { index: usize, vertex: usize },
    NotAdjacent { index: usize, from: usize, to: usize },
    DuplicateVertex { index: usize, vertex: usize },
    NotClosed,
    RepeatedEdge { index: usize, from: usize, to: usize },
    Chord { from: usize, to: usize },
    MissingVertices { count: usize },
    MissingEdges { count: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Empty => f.write_str("walk is empty"),
            Violation::TooShort { len } => write!(f, "cycle has only {len} vertices"),
            Violation::OutOfRange { index, vertex } => {
                write!(f, "vertex {vertex} at index {index} is not in the graph")
            }
            Violation::NotAdjacent { index, from, to } => {
                write!(f, "step {index}: {from} and {to} are not adjacent")
            }
            Violation::DuplicateVertex { index, vertex } => {
                write!(f, "vertex {vertex} repeats at index {index}")
            }
            Violation::NotClosed => f.write_str("closed walk does not return to its start"),
            Violation::RepeatedEdge { index, from, to } => {
                write!(f, "edge {from}-{to} repeats at step {index}")
            }
            Violation::Chord { from, to } => write!(f, "chord between {from} and {to}"),
            Violation::MissingVertices { count } => write!(f, "{count} vertices not visited"),
            Violation::MissingEdges { count } => write!(f, "{count} edges not traversed"),
        }
    }
}

/// Checks adjacency, closure and distinctness rules for the walk's kind.
pub fn validate_walk(g: &JacobsonGraph, w: &Walk) -> Result<(), Violation> {
    let v = &w.vertices;
    if v.is_empty() {
        return Err(Violation::Empty);
    }
    if let Some((index, &vertex)) = v.iter().enumerate().find(|&(_, &x)| x >= g.vertex_count()) {
        return Err(Violation::OutOfRange { index, vertex });
    }
    if w.kind == WalkKind::Cycle && v.len() < 3 {
        return Err(Violation::TooShort { len: v.len() });
    }
    if w.kind == WalkKind::Tour && v.first() != v.last() {
        return Err(Violation::NotClosed);
    }
    match w.kind {
        WalkKind::Cycle | WalkKind::Path => {
            let mut seen = vec![false; g.vertex_count()];
            for (index, &x) in v.iter().enumerate() {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Violation::DuplicateVertex { index, vertex: x });
                }
            }
        }
        WalkKind::Tour | WalkKind::Trail => {
            let mut used = std::collections::HashSet::new();
            for (index, (a, b)) in w.steps().into_iter().enumerate() {
                if !used.insert((a.min(b), a.max(b))) {
                    return Err(Violation::RepeatedEdge { index, from: a, to: b });
                }
            }
        }
    }
    for (index, (a, b)) in w.steps().into_iter().enumerate() {
        if !g.has_edge(a, b) {
            if w.kind == WalkKind::Cycle && index == v.len() - 1 {
                return Err(Violation::NotClosed);
            }
            return Err(Violation::NotAdjacent { index, from: a, to: b });
        }
    }
    Ok(())
}

/// A valid cycle or path with no edges between non-consecutive vertices.
pub fn validate_induced(g: &JacobsonGraph, w: &Walk) -> Result<(), Violation> {
    validate_walk(g, w)?;
    let v = &w.vertices;
    let len = v.len();
    for i in 0..len {
        for j in i + 2..len {
            let closing = w.kind == WalkKind::Cycle && i == 0 && j == len - 1;
            if !closing && g.has_edge(v[i], v[j]) {
                return Err(Violation::Chord { from: v[i], to: v[j] });
            }
        }
    }
    Ok(())
}

/// A valid walk visiting every vertex.
pub fn validate_spanning(g: &JacobsonGraph, w: &Walk) -> Result<(), Violation> {
    validate_walk(g, w)?;
    let mut seen = vec![false; g.vertex_count()];
    for &x in &w.vertices {
        seen[x] = true;
    }
    match seen.iter().filter(|&&s| !s).count() {
        0 => Ok(()),
        count => Err(Violation::MissingVertices { count }),
    }
}

/// A valid tour or trail traversing every edge.
pub fn validate_eulerian(g: &JacobsonGraph, w: &Walk) -> Result<(), Violation> {
    validate_walk(g, w)?;
    match g.edge_count_oracle() - w.length() {
        0 => Ok(()),
        count => Err(Violation::MissingEdges { count }),
    }
}

/// Connected components by BFS, each sorted, ordered by smallest member.
pub fn components(g: &JacobsonGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).iter() {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &JacobsonGraph) -> bool {
    components(g).len() <= 1
}

/// Shortest cycle length via BFS from every vertex.
pub fn girth(g: &JacobsonGraph) -> LengthValue {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for v in g.neighbors(u).iter() {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    match best {
        usize::MAX => LengthValue::NoCycle,
        b => LengthValue::Finite(b as u64),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerOutcome {
    Tour(Walk),
    Trail(Walk),
    Neither,
}

impl EulerOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            EulerOutcome::Tour(_) => "tour",
            EulerOutcome::Trail(_) => "trail",
            EulerOutcome::Neither => "neither",
        }
    }
}

/// Euler tour or trail by Hierholzer's algorithm. The whole graph must be
/// connected, so isolated vertices rule out both.
pub fn eulerian(g: &JacobsonGraph) -> EulerOutcome {
    let n = g.vertex_count();
    if n == 0 || !is_connected(g) {
        return EulerOutcome::Neither;
    }
    let odd: Vec<usize> = (0..n).filter(|&u| g.degree_oracle(u) % 2 == 1).collect();
    let start = match odd.len() {
        0 => 0,
        2 => odd[0],
        _ => return EulerOutcome::Neither,
    };
    let adj: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).iter().collect()).collect();
    let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (id, e) in g.edges().enumerate() {
        edge_ids.insert(e, id);
    }
    let mut used = vec![false; edge_ids.len()];
    let mut next = vec![0usize; n];
    let mut stack = vec![start];
    let mut walk = Vec::with_capacity(used.len() + 1);
    while let Some(&u) = stack.last() {
        let mut advanced = false;
        while next[u] < adj[u].len() {
            let v = adj[u][next[u]];
            next[u] += 1;
            let id = edge_ids[&(u.min(v), u.max(v))];
            if !used[id] {
                used[id] = true;
                stack.push(v);
                advanced = true;
                break;
            }
        }
        if !advanced {
            walk.push(stack.pop().expect("non-empty"));
        }
    }
    walk.reverse();
    if odd.is_empty() {
        EulerOutcome::Tour(Walk::new(WalkKind::Tour, walk))
    } else {
        EulerOutcome::Trail(Walk::new(WalkKind::Trail, walk))
    }
}

struct Clock {
    start: Instant,
    limit: Duration,
    limit_ms: u64,
    ticks: u32,
}

impl Clock {
    fn new(limit_ms: u64) -> Self {
        Clock {
            start: Instant::now(),
            limit: Duration::from_millis(limit_ms),
            limit_ms,
            ticks: 0,
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), Exceeded> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(512) && self.start.elapsed() >= self.limit {
            return Err(Exceeded::TimeLimit {
                limit_ms: self.limit_ms,
            });
        }
        Ok(())
    }
}

#[inline]
fn bit(v: usize) -> u128 {
    1u128 << v
}

fn members(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

/// Adjacency masks for graphs of at most [`KERNEL_CAPACITY`] vertices.
struct Kernel {
    n: usize,
    adj: Vec<u128>,
    full: u128,
}

impl Kernel {
    fn new(g: &JacobsonGraph, budget: &SearchBudget) -> Result<Self, Exceeded> {
        let n = g.vertex_count();
        let limit = budget.vertex_limit.min(KERNEL_CAPACITY);
        if n > limit {
            return Err(Exceeded::VertexLimit { vertices: n, limit });
        }
        Ok(Kernel {
            n,
            adj: (0..n).map(|u| g.neighbors(u).to_u128()).collect(),
            full: if n == 128 { u128::MAX } else { bit(n) - 1 },
        })
    }

    /// Vertices of `within` reachable from `from` (which need not be in
    /// `within`) through `within`.
    fn reach(&self, from: usize, within: u128) -> u128 {
        let mut seen = 0u128;
        let mut frontier = self.adj[from] & within;
        while frontier != 0 {
            seen |= frontier;
            let mut next = 0u128;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            frontier = next & within & !seen;
        }
        seen
    }

    /// Vertices with id greater than `s`.
    fn above(&self, s: usize) -> u128 {
        if s >= 127 {
            0
        } else {
            self.full & !(bit(s + 1) - 1)
        }
    }

    fn connected(&self) -> bool {
        self.n == 0 || (self.reach(0, self.full) | bit(0)) == self.full
    }
}

struct HamSearch<'a> {
    k: &'a Kernel,
    clock: Clock,
    path: Vec<usize>,
    closed: bool,
}

impl HamSearch<'_> {
    fn extend(&mut self, visited: u128) -> Result<bool, Exceeded> {
        self.clock.tick()?;
        let k = self.k;
        let cur = *self.path.last().expect("non-empty");
        let start = self.path[0];
        let unvisited = k.full & !visited;
        if unvisited == 0 {
            return Ok(!self.closed || k.adj[cur] & bit(start) != 0);
        }
        let pool = unvisited | bit(cur) | if self.closed { bit(start) } else { 0 };
        let mut dead_ends = 0;
        for v in members(unvisited) {
            let d = (k.adj[v] & pool).count_ones();
            if d == 0 || (self.closed && d < 2) {
                return Ok(false);
            }
            if d == 1 {
                dead_ends += 1;
            }
        }
        if dead_ends > 1 {
            return Ok(false);
        }
        if k.reach(cur, unvisited) != unvisited {
            return Ok(false);
        }
        if self.closed && k.adj[start] & unvisited == 0 {
            return Ok(false);
        }
        for v in members(k.adj[cur] & unvisited) {
            self.path.push(v);
            if self.extend(visited | bit(v))? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

fn ham_search(g: &JacobsonGraph, budget: &SearchBudget, closed: bool) -> Search<Walk> {
    let k = match Kernel::new(g, budget) {
        Ok(k) => k,
        Err(e) => return Search::BudgetExceeded(e),
    };
    let min_len = if closed { 3 } else { 2 };
    if k.n < min_len || !k.connected() {
        return Search::ProvedAbsent;
    }
    let degrees: Vec<u32> = k.adj.iter().map(|a| a.count_ones()).collect();
    let leaves: Vec<usize> = (0..k.n).filter(|&u| degrees[u] == 1).collect();
    if closed && !leaves.is_empty() || leaves.len() > 2 {
        return Search::ProvedAbsent;
    }
    let starts: Vec<usize> = if closed {
        vec![0]
    } else if !leaves.is_empty() {
        vec![leaves[0]]
    } else {
        (0..k.n).collect()
    };
    let mut search = HamSearch {
        k: &k,
        clock: Clock::new(budget.time_limit_ms),
        path: Vec::with_capacity(k.n),
        closed,
    };
    for s in starts {
        search.path.clear();
        search.path.push(s);
        match search.extend(bit(s)) {
            Ok(true) => {
                let kind = if closed { WalkKind::Cycle } else { WalkKind::Path };
                return Search::Found(Walk::new(kind, search.path));
            }
            Ok(false) => {}
            Err(e) => return Search::BudgetExceeded(e),
        }
    }
    Search::ProvedAbsent
}

pub fn hamiltonian_cycle(g: &JacobsonGraph, budget: &SearchBudget) -> Search<Walk> {
    ham_search(g, budget, true)
}

/// Hamiltonian path with at least one edge; a single vertex does not count.
pub fn hamiltonian_path(g: &JacobsonGraph, budget: &SearchBudget) -> Search<Walk> {
    ham_search(g, budget, false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamResult {
    pub status: HamStatus,
    pub witness: Option<Walk>,
}

pub fn hamiltonian_status(g: &JacobsonGraph, budget: &SearchBudget) -> Result<HamResult, Exceeded> {
    match hamiltonian_cycle(g, budget) {
        Search::Found(w) => Ok(HamResult {
            status: HamStatus::HamiltonianCycle,
            witness: Some(w),
        }),
        Search::BudgetExceeded(e) => Err(e),
        Search::ProvedAbsent => match hamiltonian_path(g, budget) {
            Search::Found(w) => Ok(HamResult {
                status: HamStatus::HamiltonianPathOnly,
                witness: Some(w),
            }),
            Search::BudgetExceeded(e) => Err(e),
            Search::ProvedAbsent => Ok(HamResult {
                status: HamStatus::Neither,
                witness: None,
            }),
        },
    }
}

struct FixedCycle<'a> {
    k: &'a Kernel,
    clock: Clock,
    target: usize,
    path: Vec<usize>,
}

impl FixedCycle<'_> {
    fn extend(&mut self, allowed: u128, visited: u128) -> Result<bool, Exceeded> {
        self.clock.tick()?;
        let k = self.k;
        let s = self.path[0];
        let cur = *self.path.last().expect("non-empty");
        if self.path.len() == self.target {
            return Ok(k.adj[cur] & bit(s) != 0);
        }
        let remaining = allowed & !visited;
        if (remaining.count_ones() as usize) < self.target - self.path.len() {
            return Ok(false);
        }
        let mut cand = k.adj[cur] & remaining;
        if self.path.len() + 1 == self.target {
            cand &= k.adj[s];
        }
        for v in members(cand) {
            self.path.push(v);
            if self.extend(allowed, visited | bit(v))? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// A cycle with exactly `len` vertices, smallest vertex first.
pub fn cycle_of_length(g: &JacobsonGraph, len: usize, budget: &SearchBudget) -> Search<Walk> {
    let k = match Kernel::new(g, budget) {
        Ok(k) => k,
        Err(e) => return Search::BudgetExceeded(e),
    };
    if len < 3 || len > k.n {
        return Search::ProvedAbsent;
    }
    let mut search = FixedCycle {
        k: &k,
        clock: Clock::new(budget.time_limit_ms),
        target: len,
        path: Vec::with_capacity(len),
    };
    for s in 0..k.n {
        let allowed = k.above(s) | bit(s);
        search.path.clear();
        search.path.push(s);
        match search.extend(allowed, bit(s)) {
            Ok(true) => return Search::Found(Walk::cycle(search.path)),
            Ok(false) => {}
            Err(e) => return Search::BudgetExceeded(e),
        }
    }
    Search::ProvedAbsent
}

/// Shorter cycles read off a spanning cycle: both arcs closed by each chord,
/// then repeated removal of a vertex whose two cycle neighbours are adjacent.
pub fn cycles_from_hamiltonian(g: &JacobsonGraph, cycle: &Walk) -> BTreeMap<usize, Walk> {
    let c = &cycle.vertices;
    let n = c.len();
    let mut out = BTreeMap::new();
    out.insert(n, cycle.clone());
    for i in 0..n {
        for j in i + 2..n {
            if (i == 0 && j == n - 1) || !g.has_edge(c[i], c[j]) {
                continue;
            }
            let inner = j - i + 1;
            out.entry(inner).or_insert_with(|| Walk::cycle(c[i..=j].to_vec()));
            let outer = n - (j - i) + 1;
            out.entry(outer).or_insert_with(|| {
                let mut v = c[j..].to_vec();
                v.extend_from_slice(&c[..=i]);
                Walk::cycle(v)
            });
        }
    }
    let mut cur = c.clone();
    while cur.len() > 3 {
        let m = cur.len();
        let Some(i) = (0..m).find(|&i| g.has_edge(cur[(i + m - 1) % m], cur[(i + 1) % m])) else {
            break;
        };
        cur.remove(i);
        out.entry(cur.len()).or_insert_with(|| Walk::cycle(cur.clone()));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PancyclicResult {
    pub pancyclic: bool,
    /// One cycle per length found, ascending by length.
    pub witnesses: Vec<Walk>,
    pub missing: Vec<usize>,
}

pub fn pancyclic_check(g: &JacobsonGraph, budget: &SearchBudget) -> Result<PancyclicResult, Exceeded> {
    let n = g.vertex_count();
    let mut found: BTreeMap<usize, Walk> = BTreeMap::new();
    match hamiltonian_cycle(g, budget) {
        Search::Found(w) => found = cycles_from_hamiltonian(g, &w),
        Search::BudgetExceeded(e) => return Err(e),
        Search::ProvedAbsent => {}
    }
    let mut missing = Vec::new();
    for len in 3..n {
        if found.contains_key(&len) {
            continue;
        }
        match cycle_of_length(g, len, budget) {
            Search::Found(w) => {
                found.insert(len, w);
            }
            Search::ProvedAbsent => missing.push(len),
            Search::BudgetExceeded(e) => return Err(e),
        }
    }
    if n >= 3 && !found.contains_key(&n) {
        missing.push(n);
    }
    Ok(PancyclicResult {
        pancyclic: n >= 3 && missing.is_empty(),
        witnesses: found.into_values().collect(),
        missing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Longest {
    pub length: LengthValue,
    pub witness: Option<Walk>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Cycle,
    Path,
}

struct Induced<'a> {
    k: &'a Kernel,
    clock: Clock,
    mode: Mode,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl Induced<'_> {
    fn offer(&mut self, extra: Option<usize>) {
        let len = self.path.len() + usize::from(extra.is_some());
        if len > self.best.len() {
            self.best = self.path.clone();
            self.best.extend(extra);
        }
    }

    /// `blocked` holds the path and every neighbour of its interior vertices.
    fn extend(&mut self, allowed: u128, blocked: u128) -> Result<(), Exceeded> {
        self.clock.tick()?;
        let k = self.k;
        let s = self.path[0];
        let tail = *self.path.last().expect("non-empty");
        let free = allowed & !blocked;
        let bound = self.path.len()
            + match self.mode {
                Mode::Cycle => {
                    let inner = k.reach(tail, free & !k.adj[s]);
                    let mut touched = k.adj[tail];
                    for v in members(inner) {
                        touched |= k.adj[v];
                    }
                    if touched & free & k.adj[s] == 0 {
                        return Ok(());
                    }
                    inner.count_ones() as usize + 1
                }
                Mode::Path => k.reach(tail, free).count_ones() as usize,
            };
        if bound <= self.best.len() {
            return Ok(());
        }
        let cand = k.adj[tail] & free;
        let next_blocked = blocked | k.adj[tail] | bit(tail);
        for v in members(cand) {
            let closes = self.mode == Mode::Cycle && k.adj[s] & bit(v) != 0;
            if closes {
                if self.path.len() >= 2 {
                    self.offer(Some(v));
                }
                continue;
            }
            self.path.push(v);
            if self.mode == Mode::Path {
                self.offer(None);
            }
            self.extend(allowed, next_blocked)?;
            self.path.pop();
        }
        Ok(())
    }
}

fn longest_induced(g: &JacobsonGraph, budget: &SearchBudget, mode: Mode) -> Result<Longest, Exceeded> {
    let k = Kernel::new(g, budget)?;
    let mut search = Induced {
        k: &k,
        clock: Clock::new(budget.time_limit_ms),
        mode,
        path: Vec::new(),
        best: Vec::new(),
    };
    for s in 0..k.n {
        let allowed = match mode {
            Mode::Cycle => k.above(s),
            Mode::Path => k.full,
        };
        if mode == Mode::Cycle && (allowed.count_ones() as usize) < search.best.len() {
            break;
        }
        search.path.clear();
        search.path.push(s);
        match mode {
            Mode::Path => {
                search.offer(None);
                search.extend(allowed, bit(s))?;
            }
            Mode::Cycle => {
                for p1 in members(k.adj[s] & allowed) {
                    search.path.push(p1);
                    search.extend(allowed, bit(s) | bit(p1))?;
                    search.path.pop();
                }
            }
        }
    }
    Ok(match mode {
        Mode::Cycle if search.best.is_empty() => Longest {
            length: LengthValue::NoCycle,
            witness: None,
        },
        Mode::Path if search.best.is_empty() => Longest {
            length: LengthValue::NoPath,
            witness: None,
        },
        Mode::Cycle => Longest {
            length: LengthValue::Finite(search.best.len() as u64),
            witness: Some(Walk::cycle(search.best)),
        },
        Mode::Path => Longest {
            length: LengthValue::Finite(search.best.len() as u64 - 1),
            witness: Some(Walk::path(search.best)),
        },
    })
}

/// Longest chordless cycle by branch and bound; the witness starts at its
/// smallest vertex.
pub fn longest_induced_cycle(g: &JacobsonGraph, budget: &SearchBudget) -> Result<Longest, Exceeded> {
    longest_induced(g, budget, Mode::Cycle)
}

/// Longest chordless path, in edges.
pub fn longest_induced_path(g: &JacobsonGraph, budget: &SearchBudget) -> Result<Longest, Exceeded> {
    longest_induced(g, budget, Mode::Path)
}

fn subset_shape(adj: &[u128], subset: u128) -> Option<(bool, usize)> {
    let size = subset.count_ones() as usize;
    let mut degree_one = 0;
    let mut edges = 0;
    for v in members(subset) {
        let d = (adj[v] & subset).count_ones();
        match d {
            0 if size > 1 => return None,
            0 => {}
            1 => degree_one += 1,
            2 => {}
            _ => return None,
        }
        edges += d as usize;
    }
    edges /= 2;
    let first = subset.trailing_zeros() as usize;
    let mut seen = bit(first);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in members(frontier) {
            next |= adj[v];
        }
        frontier = next & subset & !seen;
        seen |= frontier;
    }
    if seen != subset {
        return None;
    }
    let is_cycle = size >= 3 && degree_one == 0 && edges == size;
    let is_path = edges + 1 == size;
    Some((is_cycle, usize::from(is_path)))
}

/// Longest induced cycle and path by testing every vertex subset. Only for
/// graphs with at most [`BRUTE_FORCE_LIMIT`] vertices.
pub fn naive_longest_induced(g: &JacobsonGraph) -> Option<(LengthValue, LengthValue)> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return None;
    }
    let adj: Vec<u128> = (0..n).map(|u| g.neighbors(u).to_u128()).collect();
    let mut cycle = LengthValue::NoCycle;
    let mut path = LengthValue::NoPath;
    for subset in 1u128..(1u128 << n) {
        let size = subset.count_ones() as u64;
        if let Some((is_cycle, is_path)) = subset_shape(&adj, subset) {
            if is_cycle && cycle.finite().is_none_or(|c| size > c) {
                cycle = LengthValue::Finite(size);
            }
            if is_path == 1 && path.finite().is_none_or(|p| size - 1 > p) {
                path = LengthValue::Finite(size - 1);
            }
        }
    }
    Some((cycle, path))
}
