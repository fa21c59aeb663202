//! `H^2(L, L)` by exact sparse elimination, block by block.
//!
//! In a block, let `P` be the pivot columns of an echelon basis of `im d1`
//! and `Q` the remaining `C^2` coordinates. Every class has a unique
//! representative supported on `Q`, so `dim H^2 = |Q| - rank(d2 on span e_Q)`
//! and `rank d2 = rank(d2 on span e_Q)`. Only the `|Q|` images `d2(e_q)` are
//! ever formed.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::sparse::{SparseEchelon, SpanSolver};

use super::blocks::{c3_counts, BlockKey, BlockWeights};
use super::cochain::{decode, Cochain};
use super::differential::{merge_entries, DiffContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Dense,
    Graded,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Mode::Dense),
            "graded" => Ok(Mode::Graded),
            other => Err(Error::InvalidParameters(format!("unknown mode '{other}'"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Dense => "dense",
            Mode::Graded => "graded",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyOptions {
    pub mode: Mode,
    /// Skip blocks on which some toral element acts by a nonzero scalar.
    pub toral_shortcut: bool,
    /// Largest number of `C^2` coordinates a block may have.
    pub block_cap: usize,
    /// Global wall-clock budget.
    pub time_cap: Option<Duration>,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    pub representatives: bool,
    /// Restrict the computation to these blocks.
    pub only_blocks: Option<Vec<BlockKey>>,
    /// Count `C^3` block dimensions (enumerates all basis triples).
    pub count_c3: bool,
    /// In graded mode, split by the stored grading alone instead of the
    /// full lattice and toral refinement.
    pub principal_only: bool,
}

pub const DEFAULT_BLOCK_CAP: usize = 2_000_000;

impl Default for CohomologyOptions {
    fn default() -> Self {
        CohomologyOptions {
            mode: Mode::Graded,
            toral_shortcut: true,
            block_cap: DEFAULT_BLOCK_CAP,
            time_cap: None,
            jobs: 0,
            representatives: false,
            only_blocks: None,
            count_c3: false,
            principal_only: false,
        }
    }
}

impl CohomologyOptions {
    pub fn dense() -> Self {
        CohomologyOptions {
            mode: Mode::Dense,
            toral_shortcut: false,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockStatus {
    Computed,
    OverCap,
    TimedOut,
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    pub key: BlockKey,
    pub lattice: Vec<i64>,
    pub toral: Vec<u32>,
    /// Principal weight, when the algebra carries a grading.
    pub weight: Option<i64>,
    pub status: BlockStatus,
    pub c1: usize,
    pub c2: usize,
    pub c3: Option<u64>,
    pub rank_d1: usize,
    pub rank_d2: usize,
    pub h2: usize,
    pub representatives: Vec<Cochain>,
    pub elapsed: Duration,
}

impl BlockReport {
    pub fn ker_d2(&self) -> usize {
        self.c2 - self.rank_d2
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub q: usize,
    pub mode: Mode,
    pub lattice_rank: usize,
    pub toral_lanes: usize,
    /// Computed or attempted blocks, in key order.
    pub blocks: Vec<BlockReport>,
    /// Blocks skipped because a toral element acts invertibly on them.
    pub acyclic_blocks: usize,
    pub acyclic_coords: u64,
    pub h_dim: usize,
    pub complete: bool,
    pub elapsed: Duration,
}

impl CohomologyReport {
    pub fn incomplete_blocks(&self) -> impl Iterator<Item = &BlockReport> {
        self.blocks.iter().filter(|b| b.status != BlockStatus::Computed)
    }

    pub fn nonzero_blocks(&self) -> impl Iterator<Item = &BlockReport> {
        self.blocks.iter().filter(|b| b.h2 > 0)
    }
}

pub(crate) fn block_weights_for(l: &LieAlgebra, opts: &CohomologyOptions) -> Result<BlockWeights> {
    match opts.mode {
        Mode::Dense => Ok(BlockWeights::trivial(l)),
        Mode::Graded if opts.principal_only => BlockWeights::principal(l),
        Mode::Graded => {
            if l.grading().is_none() {
                return Err(Error::Ungraded);
            }
            BlockWeights::refined(l)
        }
    }
}

/// Map packed keys to positions in a sorted key list.
fn localize(sorted: &[u64], v: &[(u64, u32)]) -> SparseVec {
    v.iter()
        .map(|&(k, c)| {
            let i = sorted.binary_search(&k).expect("differential leaves its weight block");
            (i as u32, c)
        })
        .collect()
}

/// Echelon basis of `d1(C^1_w)` over the local `C^2_w` columns.
pub(crate) fn d1_echelon(ctx: &DiffContext, c1: &[u64], c2: &[u64]) -> SparseEchelon {
    let d = ctx.dim();
    let f = ctx.algebra().field();
    let mut ech = SparseEchelon::new(f, c2.len());
    let mut buf = Vec::new();
    for &k in c1 {
        let (tuple, t) = decode(d, 1, k);
        buf.clear();
        ctx.d1_basis(tuple[0], t, 1, &mut buf);
        merge_entries(f, &mut buf);
        ech.insert(&localize(c2, &buf));
    }
    ech
}

struct BlockInput {
    key: BlockKey,
    weight: Option<i64>,
    c1: Vec<u64>,
    c2: Vec<u64>,
}

fn compute_block(
    ctx: &DiffContext,
    bw: &BlockWeights,
    input: &BlockInput,
    opts: &CohomologyOptions,
    deadline: Option<Instant>,
) -> BlockReport {
    let start = Instant::now();
    let mut rep = BlockReport {
        key: input.key,
        lattice: bw.lattice_weight(&input.key),
        toral: bw.toral_weight(&input.key),
        weight: input.weight,
        status: BlockStatus::Computed,
        c1: input.c1.len(),
        c2: input.c2.len(),
        c3: None,
        rank_d1: 0,
        rank_d2: 0,
        h2: 0,
        representatives: Vec::new(),
        elapsed: Duration::ZERO,
    };
    let timed_out = || deadline.is_some_and(|dl| Instant::now() > dl);
    if input.c2.len() > opts.block_cap {
        rep.status = BlockStatus::OverCap;
        return rep;
    }
    if timed_out() {
        rep.status = BlockStatus::TimedOut;
        return rep;
    }
    let l = ctx.algebra();
    let f = l.field();
    let d = l.dim();
    let e1 = d1_echelon(ctx, &input.c1, &input.c2);
    rep.rank_d1 = e1.rank();
    let q_cols: Vec<u32> = (0..input.c2.len() as u32).filter(|&c| !e1.is_pivot(c)).collect();
    drop(e1);

    // images d2(e_q), q in Q
    let mut images: Vec<Vec<(u64, u32)>> = Vec::with_capacity(q_cols.len());
    let mut buf = Vec::new();
    for &qc in &q_cols {
        let (tuple, t) = decode(d, 2, input.c2[qc as usize]);
        buf.clear();
        ctx.d2_basis(tuple[0], tuple[1], t, 1, &mut buf);
        merge_entries(f, &mut buf);
        images.push(buf.clone());
    }
    let mut c3_keys: Vec<u64> = images.iter().flat_map(|v| v.iter().map(|e| e.0)).collect();
    c3_keys.sort_unstable();
    c3_keys.dedup();
    let mut weights = vec![0u32; c3_keys.len()];
    let local: Vec<SparseVec> = images
        .into_iter()
        .map(|v| {
            let lv = localize(&c3_keys, &v);
            for &(c, _) in &lv {
                weights[c as usize] += 1;
            }
            lv
        })
        .collect();
    let mut order: Vec<usize> = (0..local.len()).collect();
    order.sort_by_key(|&i| (local[i].len(), i));

    if opts.representatives {
        let mut solver = SpanSolver::new(f, c3_keys.len(), std::iter::empty());
        for (n, &i) in order.iter().enumerate() {
            if n % 256 == 0 && timed_out() {
                rep.status = BlockStatus::TimedOut;
                return rep;
            }
            solver.add_generator(&local[i]);
        }
        rep.rank_d2 = solver.rank();
        for dep in solver.dependencies() {
            let entries = dep.iter().map(|&(g, c)| (input.c2[q_cols[order[g as usize]] as usize], c));
            rep.representatives.push(Cochain::from_keys(l, 2, entries));
        }
    } else {
        let mut ech = SparseEchelon::new(f, c3_keys.len()).with_column_weights(weights);
        for (n, &i) in order.iter().enumerate() {
            if n % 256 == 0 && timed_out() {
                rep.status = BlockStatus::TimedOut;
                return rep;
            }
            ech.insert(&local[i]);
        }
        rep.rank_d2 = ech.rank();
    }
    rep.h2 = q_cols.len() - rep.rank_d2;
    rep.elapsed = start.elapsed();
    rep
}

/// Gather the `C^1` and `C^2` coordinates of every block that needs work.
fn collect_blocks(
    l: &LieAlgebra,
    bw: &BlockWeights,
    opts: &CohomologyOptions,
) -> (Vec<BlockInput>, usize, u64) {
    let d = l.dim() as u32;
    let only: Option<HashSet<BlockKey>> = opts.only_blocks.as_ref().map(|v| v.iter().copied().collect());
    let keep = |k: &BlockKey| only.as_ref().is_none_or(|s| s.contains(k));
    let shortcut = opts.toral_shortcut && bw.toral_lanes() > 0;
    let mut c2: BTreeMap<BlockKey, (Option<i64>, Vec<u64>)> = BTreeMap::new();
    let mut acyclic: HashSet<BlockKey> = HashSet::new();
    let mut acyclic_coords = 0u64;
    for x0 in 0..d {
        for x1 in x0 + 1..d {
            for t in 0..d {
                let k = bw.key(&[x0, x1], t);
                if !keep(&k) {
                    continue;
                }
                if shortcut && k.toral != 0 {
                    acyclic.insert(k);
                    acyclic_coords += 1;
                    continue;
                }
                c2.entry(k)
                    .or_insert_with(|| (bw.principal_weight(&[x0, x1], t), Vec::new()))
                    .1
                    .push(super::cochain::encode(d as usize, &[x0, x1], t));
            }
        }
    }
    let mut c1: BTreeMap<BlockKey, Vec<u64>> = BTreeMap::new();
    for a in 0..d {
        for t in 0..d {
            let k = bw.key(&[a], t);
            if c2.contains_key(&k) {
                c1.entry(k).or_default().push(super::cochain::encode(d as usize, &[a], t));
            }
        }
    }
    let inputs = c2
        .into_iter()
        .map(|(key, (weight, coords))| BlockInput {
            key,
            weight,
            c1: c1.remove(&key).unwrap_or_default(),
            c2: coords,
        })
        .collect();
    (inputs, acyclic.len(), acyclic_coords)
}

/// Dimension of `H^q(L, L)`; only `q = 2` is supported.
pub fn h_dim(l: &LieAlgebra, q: usize, opts: &CohomologyOptions) -> Result<CohomologyReport> {
    if q != 2 {
        return Err(Error::UnsupportedDegree(q));
    }
    let start = Instant::now();
    let deadline = opts.time_cap.map(|c| start + c);
    let bw = block_weights_for(l, opts)?;
    let ctx = DiffContext::new(l);
    let (inputs, acyclic_blocks, acyclic_coords) = collect_blocks(l, &bw, opts);
    let run = || -> Vec<BlockReport> {
        inputs
            .par_iter()
            .map(|b| compute_block(&ctx, &bw, b, opts, deadline))
            .collect()
    };
    let mut blocks = if opts.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?
            .install(run)
    } else {
        run()
    };
    if opts.count_c3 {
        let keys: Vec<BlockKey> = blocks.iter().map(|b| b.key).collect();
        let counts = c3_counts(l, &bw, &keys);
        for b in &mut blocks {
            b.c3 = counts.get(&b.key).copied();
        }
    }
    let complete = blocks.iter().all(|b| b.status == BlockStatus::Computed);
    let h = blocks.iter().map(|b| b.h2).sum();
    Ok(CohomologyReport {
        q,
        mode: opts.mode,
        lattice_rank: bw.lattice_rank(),
        toral_lanes: bw.toral_lanes(),
        blocks,
        acyclic_blocks,
        acyclic_coords,
        h_dim: h,
        complete,
        elapsed: start.elapsed(),
    })
}
