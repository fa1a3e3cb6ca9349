//! Exact maximization of induced edge counts at desk scale.
//!
//! Two backends: exhaustive search over every size-m subset, and search
//! restricted to left-compressed down-sets, which normalization shows is
//! enough to find the maximum. Both return the complete set of optima of
//! their search space, deterministically, for any worker count.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex::{binomial, degree, delta_masks, edges_within, VertexFamily, MAX_DIM};

/// Resource limits for the exact backends. The environment variable
/// `CUBEISO_BUDGET` ("combinations[,dim[,nodes]]") may raise them, never
/// lower them.
#[derive(Copy, Clone, Debug)]
pub struct SolverBudget {
    /// The exhaustive backend refuses when C(2^n, m) exceeds this.
    pub max_combinations: u128,
    /// The compressed backend refuses dimensions above this.
    pub max_dim: u32,
    /// The compressed backend aborts after visiting this many search nodes.
    pub max_nodes: u64,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            max_combinations: 1 << 24,
            max_dim: 8,
            max_nodes: 1 << 26,
        }
    }
}

impl SolverBudget {
    /// The default budget, raised by any components present in
    /// `CUBEISO_BUDGET`. Malformed components are ignored.
    pub fn from_env() -> Self {
        let mut budget = SolverBudget::default();
        if let Ok(text) = std::env::var("CUBEISO_BUDGET") {
            let mut parts = text.split(',');
            if let Some(v) = parts.next().and_then(|s| s.trim().parse::<u128>().ok()) {
                budget.max_combinations = budget.max_combinations.max(v);
            }
            if let Some(v) = parts.next().and_then(|s| s.trim().parse::<u32>().ok()) {
                budget.max_dim = budget.max_dim.max(v);
            }
            if let Some(v) = parts.next().and_then(|s| s.trim().parse::<u64>().ok()) {
                budget.max_nodes = budget.max_nodes.max(v);
            }
        }
        budget
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Exhaustive,
    Compressed,
}

/// The outcome of one exact solve: the maximum induced edge count over the
/// backend's search space and every family attaining it, canonically
/// sorted.
#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub n: u32,
    pub m: u64,
    pub r: u32,
    pub value: u64,
    pub witnesses: Vec<VertexFamily>,
    pub backend: Backend,
    pub witness_complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

fn check_instance(n: u32, m: u64, r: u32) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::invalid(format!(
            "dimension {n} out of range 1..={MAX_DIM}"
        )));
    }
    if r == 0 || r > n {
        return Err(Error::invalid(format!("radius {r} out of range 1..={n}")));
    }
    if n < 64 && m > 1u64 << n {
        return Err(Error::invalid(format!(
            "family size {m} exceeds 2^{n} vertices"
        )));
    }
    Ok(())
}

/// Growable bitset over the 2^n vertex values.
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(verts: u64) -> Self {
        Bits {
            words: vec![0; (verts as usize).div_ceil(64)],
        }
    }
    #[inline]
    fn contains(&self, v: u32) -> bool {
        self.words[(v / 64) as usize] & (1 << (v % 64)) != 0
    }
    #[inline]
    fn insert(&mut self, v: u32) {
        self.words[(v / 64) as usize] |= 1 << (v % 64);
    }
    #[inline]
    fn remove(&mut self, v: u32) {
        self.words[(v / 64) as usize] &= !(1 << (v % 64));
    }
}

/// Edges gained by adding `v` to the current members, whichever is cheaper
/// to scan: the member list or the distance-r neighborhood.
#[inline]
fn added_edges(v: u32, r: u32, members: &[u32], set: &Bits, deltas: &[u32]) -> u64 {
    if members.len() <= deltas.len() {
        members
            .iter()
            .filter(|&&x| (x ^ v).count_ones() <= r)
            .count() as u64
    } else {
        deltas.iter().filter(|&&d| set.contains(v ^ d)).count() as u64
    }
}

/// Largest possible number of edges still to gain when `have` of `m`
/// members are placed and each vertex has `deg` neighbors: the i-th new
/// member can meet at most min(deg, i) earlier ones.
fn optimistic_gain(have: u64, m: u64, deg: u64) -> u64 {
    if have >= m {
        return 0;
    }
    let lo = have;
    let hi = m - 1;
    // indices lo..=hi, each contributing min(deg, i)
    let ramp_hi = hi.min(deg.saturating_sub(1));
    let mut total = 0u64;
    if ramp_hi >= lo {
        let k = ramp_hi - lo + 1;
        total += (lo + ramp_hi) * k / 2;
    }
    let flat_lo = lo.max(deg);
    if hi >= flat_lo {
        total += (hi - flat_lo + 1) * deg;
    }
    total
}

fn sort_canonically(witnesses: &mut Vec<Vec<u32>>) {
    witnesses.sort_unstable();
    witnesses.dedup();
}

fn to_families(n: u32, witnesses: Vec<Vec<u32>>) -> Vec<VertexFamily> {
    witnesses
        .into_iter()
        .map(|bits| VertexFamily::from_bits(n, bits).expect("search emits valid families"))
        .collect()
}

struct ExhaustiveCtx {
    verts: u32,
    m: u64,
    r: u32,
    deg: u64,
    deltas: Vec<u32>,
    best: AtomicU64,
}

struct SearchState {
    members: Vec<u32>,
    set: Bits,
    edges: u64,
}

struct TaskResult {
    best: u64,
    witnesses: Vec<Vec<u32>>,
}

impl TaskResult {
    fn absorb(&mut self, value: u64, members: &[u32]) {
        match value.cmp(&self.best) {
            std::cmp::Ordering::Greater => {
                self.best = value;
                self.witnesses.clear();
                self.witnesses.push(members.to_vec());
            }
            std::cmp::Ordering::Equal => self.witnesses.push(members.to_vec()),
            std::cmp::Ordering::Less => {}
        }
    }

    fn merge(mut self, other: TaskResult) -> TaskResult {
        match other.best.cmp(&self.best) {
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal => {
                self.witnesses.extend(other.witnesses);
                self
            }
            std::cmp::Ordering::Less => self,
        }
    }
}

fn exhaustive_dfs(ctx: &ExhaustiveCtx, state: &mut SearchState, next: u32, out: &mut TaskResult) {
    let have = state.members.len() as u64;
    if have == ctx.m {
        out.absorb(state.edges, &state.members);
        return;
    }
    // admissible prune: even the rosiest completion stays strictly below
    // the best value already found
    let ceiling = state.edges + optimistic_gain(have, ctx.m, ctx.deg);
    if ceiling < ctx.best.load(Ordering::Relaxed) {
        return;
    }
    let still_needed = ctx.m - have;
    // last value of `v` leaving enough vertices after it
    let last = ctx.verts as u64 - still_needed;
    let mut v = next;
    while v as u64 <= last {
        let gained = added_edges(v, ctx.r, &state.members, &state.set, &ctx.deltas);
        state.members.push(v);
        state.set.insert(v);
        state.edges += gained;
        if state.members.len() as u64 == ctx.m {
            ctx.best.fetch_max(state.edges, Ordering::Relaxed);
        }
        exhaustive_dfs(ctx, state, v + 1, out);
        state.edges -= gained;
        state.set.remove(v);
        state.members.pop();
        v += 1;
    }
}

/// Exact maximum and all optimal families over every size-m subset of
/// {0,1}^n, by depth-first combination search with an admissible prune.
pub fn solve_exhaustive(n: u32, m: u64, r: u32, budget: &SolverBudget) -> Result<SolveResult> {
    check_instance(n, m, r)?;
    if n > 20 {
        return Err(Error::limit(format!(
            "exhaustive search materializes all 2^{n} vertices; n is capped at 20 \
             (the compressed backend is not, within its dimension budget)"
        )));
    }
    let verts = 1u64 << n;
    let combos = binomial(verts, m)
        .ok_or_else(|| Error::limit("combination count overflows".to_string()))?;
    if combos > budget.max_combinations {
        return Err(Error::limit(format!(
            "exhaustive search over C(2^{n}, {m}) = {combos} subsets exceeds the budget of \
             {}; try the compressed backend or raise CUBEISO_BUDGET",
            budget.max_combinations
        )));
    }
    let started = Instant::now();
    let ctx = ExhaustiveCtx {
        verts: verts as u32,
        m,
        r,
        deg: degree(n, r)?.min(u64::MAX as u128) as u64,
        deltas: delta_masks(n, r),
        best: AtomicU64::new(0),
    };
    let merged = if m == 0 {
        TaskResult {
            best: 0,
            witnesses: vec![Vec::new()],
        }
    } else {
        // split on the first chosen vertex; each worker owns one subtree
        let firsts: Vec<u32> = (0..=(verts - m) as u32).collect();
        firsts
            .into_par_iter()
            .map(|v0| {
                let mut state = SearchState {
                    members: vec![v0],
                    set: Bits::new(verts),
                    edges: 0,
                };
                state.set.insert(v0);
                let mut out = TaskResult {
                    best: 0,
                    witnesses: Vec::new(),
                };
                exhaustive_dfs(&ctx, &mut state, v0 + 1, &mut out);
                out
            })
            .reduce(
                || TaskResult {
                    best: 0,
                    witnesses: Vec::new(),
                },
                TaskResult::merge,
            )
    };
    let mut witnesses = merged.witnesses;
    sort_canonically(&mut witnesses);
    let result = SolveResult {
        n,
        m,
        r,
        value: merged.best,
        witnesses: to_families(n, witnesses),
        backend: Backend::Exhaustive,
        witness_complete: true,
        wall_time_ms: Some(started.elapsed().as_millis() as u64),
    };
    debug_assert!(result
        .witnesses
        .iter()
        .all(|w| w.len() == m && edges_within(w, r).unwrap_or(u64::MAX) == result.value || m == 0));
    Ok(result)
}

/// Predecessors of each vertex value under "delete an element" and "shift
/// an element to a smaller coordinate": exactly the covers whose presence a
/// left-compressed down-set requires. Every predecessor has a smaller
/// value, so deciding vertices in value order keeps the check local.
fn predecessor_table(n: u32) -> Vec<Vec<u32>> {
    let verts = 1u64 << n;
    let mut preds = vec![Vec::new(); verts as usize];
    for v in 0..verts as u32 {
        let out = &mut preds[v as usize];
        for j in 0..n {
            if v & (1 << j) == 0 {
                continue;
            }
            out.push(v & !(1 << j));
            for i in 0..j {
                if v & (1 << i) == 0 {
                    out.push((v & !(1 << j)) | (1 << i));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
    }
    preds
}

struct IdealCtx {
    verts: u32,
    m: u64,
    r: u32,
    deg: u64,
    deltas: Vec<u32>,
    preds: Vec<Vec<u32>>,
    max_nodes: u64,
    best: AtomicU64,
    nodes: AtomicU64,
}

impl IdealCtx {
    fn new(n: u32, m: u64, r: u32, budget: &SolverBudget) -> Result<Self> {
        Ok(IdealCtx {
            verts: 1u32 << n,
            m,
            r,
            deg: degree(n, r)?.min(u64::MAX as u128) as u64,
            deltas: delta_masks(n, r),
            preds: predecessor_table(n),
            max_nodes: budget.max_nodes,
            best: AtomicU64::new(0),
            nodes: AtomicU64::new(0),
        })
    }

    fn spend_node(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.max_nodes {
            return Err(Error::limit(format!(
                "search exceeded the node budget of {}; raise CUBEISO_BUDGET",
                self.max_nodes
            )));
        }
        Ok(())
    }

    fn closed_under_predecessors(&self, v: u32, set: &Bits) -> bool {
        self.preds[v as usize].iter().all(|&p| set.contains(p))
    }
}

fn ideal_solve_dfs(
    ctx: &IdealCtx,
    state: &mut SearchState,
    v: u32,
    out: &mut TaskResult,
) -> Result<()> {
    ctx.spend_node()?;
    let have = state.members.len() as u64;
    if have == ctx.m {
        out.absorb(state.edges, &state.members);
        return Ok(());
    }
    if ((ctx.verts - v) as u64) < (ctx.m - have) {
        return Ok(());
    }
    let ceiling = state.edges + optimistic_gain(have, ctx.m, ctx.deg);
    if ceiling < ctx.best.load(Ordering::Relaxed) {
        return Ok(());
    }
    if ctx.closed_under_predecessors(v, &state.set) {
        let gained = added_edges(v, ctx.r, &state.members, &state.set, &ctx.deltas);
        state.members.push(v);
        state.set.insert(v);
        state.edges += gained;
        if state.members.len() as u64 == ctx.m {
            ctx.best.fetch_max(state.edges, Ordering::Relaxed);
        }
        ideal_solve_dfs(ctx, state, v + 1, out)?;
        state.edges -= gained;
        state.set.remove(v);
        state.members.pop();
    }
    ideal_solve_dfs(ctx, state, v + 1, out)
}

/// Exact maximum and all optimal families over every left-compressed
/// down-set of size m, by ideal enumeration in vertex-value order.
pub fn solve_compressed(n: u32, m: u64, r: u32, budget: &SolverBudget) -> Result<SolveResult> {
    check_instance(n, m, r)?;
    if n > budget.max_dim {
        return Err(Error::limit(format!(
            "compressed search is budgeted to dimension {}; raise CUBEISO_BUDGET to go higher",
            budget.max_dim
        )));
    }
    let started = Instant::now();
    let ctx = IdealCtx::new(n, m, r, budget)?;
    let verts = ctx.verts as u64;

    // Grow a frontier of independent subtrees, then search them in
    // parallel. Splitting only at the exclude/include decision points keeps
    // the union of leaves identical for every worker count.
    struct Node {
        state: SearchState,
        v: u32,
    }
    let mut frontier = vec![Node {
        state: SearchState {
            members: Vec::new(),
            set: Bits::new(verts),
            edges: 0,
        },
        v: 0,
    }];
    let want = 4 * rayon::current_num_threads().max(1);
    let mut leaves = TaskResult {
        best: 0,
        witnesses: Vec::new(),
    };
    while frontier.len() < want {
        // expand the shallowest node (they are kept in v order)
        let Some(pos) = frontier.iter().position(|nd| nd.v < ctx.verts) else {
            break;
        };
        let node = frontier.swap_remove(pos);
        let have = node.state.members.len() as u64;
        if have == ctx.m {
            ctx.spend_node()?;
            ctx.best.fetch_max(node.state.edges, Ordering::Relaxed);
            leaves.absorb(node.state.edges, &node.state.members);
            continue;
        }
        if ((ctx.verts - node.v) as u64) < ctx.m - have {
            continue;
        }
        let v = node.v;
        if ctx.closed_under_predecessors(v, &node.state.set) {
            let gained = added_edges(v, ctx.r, &node.state.members, &node.state.set, &ctx.deltas);
            let mut members = node.state.members.clone();
            members.push(v);
            let mut set = Bits::new(verts);
            for &x in &members {
                set.insert(x);
            }
            frontier.push(Node {
                state: SearchState {
                    members,
                    set,
                    edges: node.state.edges + gained,
                },
                v: v + 1,
            });
        }
        frontier.push(Node {
            state: node.state,
            v: v + 1,
        });
    }
    let tails: Vec<Result<TaskResult>> = frontier
        .into_par_iter()
        .map(|mut node| {
            let mut out = TaskResult {
                best: 0,
                witnesses: Vec::new(),
            };
            if node.v >= ctx.verts {
                if node.state.members.len() as u64 == ctx.m {
                    ctx.best.fetch_max(node.state.edges, Ordering::Relaxed);
                    out.absorb(node.state.edges, &node.state.members);
                }
            } else {
                ideal_solve_dfs(&ctx, &mut node.state, node.v, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut merged = leaves;
    for tail in tails {
        merged = merged.merge(tail?);
    }
    let mut witnesses = merged.witnesses;
    sort_canonically(&mut witnesses);
    let result = SolveResult {
        n,
        m,
        r,
        value: merged.best,
        witnesses: to_families(n, witnesses),
        backend: Backend::Compressed,
        witness_complete: true,
        wall_time_ms: Some(started.elapsed().as_millis() as u64),
    };
    debug_assert!(result
        .witnesses
        .iter()
        .all(|w| edges_within(w, r).unwrap_or(u64::MAX) == result.value || m == 0));
    Ok(result)
}

fn ideal_enumerate_dfs(
    verts: u32,
    m: Option<u64>,
    preds: &[Vec<u32>],
    state: &mut SearchState,
    v: u32,
    f: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if let Some(m) = m {
        if state.members.len() as u64 == m {
            return f(&state.members);
        }
        if ((verts - v) as u64) < m - state.members.len() as u64 {
            return Ok(());
        }
    } else if v == verts {
        return f(&state.members);
    }
    if v == verts {
        return Ok(());
    }
    if preds[v as usize].iter().all(|&p| state.set.contains(p)) {
        state.members.push(v);
        state.set.insert(v);
        ideal_enumerate_dfs(verts, m, preds, state, v + 1, f)?;
        state.set.remove(v);
        state.members.pop();
    }
    ideal_enumerate_dfs(verts, m, preds, state, v + 1, f)
}

fn for_each_ideal(
    n: u32,
    m: Option<u64>,
    budget: &SolverBudget,
    preds: &[Vec<u32>],
    f: &mut dyn FnMut(&VertexFamily) -> Result<()>,
) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::invalid(format!(
            "dimension {n} out of range 1..={MAX_DIM}"
        )));
    }
    if n > budget.max_dim {
        return Err(Error::limit(format!(
            "enumeration is budgeted to dimension {}; raise CUBEISO_BUDGET to go higher",
            budget.max_dim
        )));
    }
    if let Some(m) = m {
        if n < 64 && m > 1u64 << n {
            return Err(Error::invalid(format!(
                "family size {m} exceeds 2^{n} vertices"
            )));
        }
    }
    let verts = 1u32 << n;
    let mut state = SearchState {
        members: Vec::new(),
        set: Bits::new(verts as u64),
        edges: 0,
    };
    ideal_enumerate_dfs(verts, m, preds, &mut state, 0, &mut |members| {
        f(&VertexFamily::from_bits(n, members.iter().copied())?)
    })
}

/// Calls `f` once for every left-compressed down-set of {0,1}^n — of size
/// m if given, of every size otherwise — in a fixed deterministic order.
pub fn for_each_lcd(
    n: u32,
    m: Option<u64>,
    budget: &SolverBudget,
    f: &mut dyn FnMut(&VertexFamily) -> Result<()>,
) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::invalid(format!(
            "dimension {n} out of range 1..={MAX_DIM}"
        )));
    }
    for_each_ideal(n, m, budget, &predecessor_table(n), f)
}

/// Calls `f` once for every down-set of {0,1}^n (left-compressed or not) —
/// of size m if given, of every size otherwise — in a fixed deterministic
/// order. The count over all sizes grows like the Dedekind numbers, so this
/// is only for small n.
pub fn for_each_down_set(
    n: u32,
    m: Option<u64>,
    budget: &SolverBudget,
    f: &mut dyn FnMut(&VertexFamily) -> Result<()>,
) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::invalid(format!(
            "dimension {n} out of range 1..={MAX_DIM}"
        )));
    }
    let verts = 1u64 << n;
    let mut preds = vec![Vec::new(); verts as usize];
    for (v, out) in preds.iter_mut().enumerate() {
        let v = v as u32;
        for j in 0..n {
            if v & (1 << j) != 0 {
                out.push(v & !(1 << j));
            }
        }
    }
    for_each_ideal(n, m, budget, &preds, f)
}

/// Every left-compressed down-set of size m, in the enumeration order of
/// [`for_each_lcd`].
pub fn enumerate_lcds(n: u32, m: u64, budget: &SolverBudget) -> Result<Vec<VertexFamily>> {
    let mut out = Vec::new();
    for_each_lcd(n, Some(m), budget, &mut |fam| {
        out.push(fam.clone());
        Ok(())
    })?;
    Ok(out)
}

/// True iff for every size, the initial segment of the binary order attains
/// the minimum distance-1 edge boundary, checked against all subsets.
pub fn verify_harper_small(n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive".to_string()));
    }
    if n > 4 {
        return Err(Error::limit(format!(
            "checking all subsets of {{0,1}}^{n} means 2^{} families; n is capped at 4",
            1u64 << n
        )));
    }
    let verts = 1u32 << n;
    let mut min_boundary = vec![u64::MAX; verts as usize + 1];
    for mask in 0u32..(1u32 << verts) {
        let mut boundary = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros();
            for b in 0..n {
                if mask & (1 << (v ^ (1 << b))) == 0 {
                    boundary += 1;
                }
            }
            rest &= rest - 1;
        }
        let size = mask.count_ones() as usize;
        min_boundary[size] = min_boundary[size].min(boundary);
    }
    for m in 0..=verts as u64 {
        let segment = crate::construct::initial_segment(n, m)?;
        let b = if m == 0 {
            0
        } else {
            crate::vertex::edge_boundary(&segment, 1)?
        };
        if b != min_boundary[m as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}
