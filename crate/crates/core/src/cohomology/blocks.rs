//! Weight decomposition of the cochain spaces.
//!
//! Block keys combine every integer grading of the algebra (a lattice basis
//! packed into 16-bit lanes of a `u128`) with the eigenvalues mod p of the
//! toral basis vectors. The differential preserves both, so each key spans
//! a subcomplex.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::grading::{grading_lattice, grading_violation, toral_weights};

const LANES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub lattice: u128,
    pub toral: u64,
}

fn pack(v: &[i64]) -> u128 {
    let mut k: u128 = 0;
    for (i, &x) in v.iter().enumerate() {
        k = k.wrapping_add((x as i128 as u128).wrapping_shl(16 * i as u32));
    }
    k
}

fn unpack(mut k: u128, lanes: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(lanes);
    for _ in 0..lanes {
        let low = (k & 0xffff) as u16 as i16 as i64;
        out.push(low);
        k = k.wrapping_sub(low as i128 as u128) >> 16;
    }
    out
}

/// Per-basis weight data used to assign cochain coordinates to blocks.
#[derive(Clone, Debug)]
pub struct BlockWeights {
    p: u32,
    lattice_rank: usize,
    lattice: Vec<u128>,
    lattice_raw: Vec<Vec<i64>>,
    toral_lanes: usize,
    toral: Vec<[u8; LANES]>,
    principal: Option<Vec<i64>>,
}

impl BlockWeights {
    /// Full refinement: all gradings plus toral eigenvalues.
    pub fn refined(l: &LieAlgebra) -> Result<Self> {
        if let Some(g) = l.grading() {
            if let Some((i, j, k)) = grading_violation(l, &g.weights) {
                return Err(Error::Construction(format!(
                    "stored grading violated by [{}, {}] -> {}",
                    l.label(i),
                    l.label(j),
                    l.label(k)
                )));
            }
        }
        let lat = grading_lattice(l);
        let rank = lat.rank.min(LANES);
        let raw: Vec<Vec<i64>> = lat.weights.iter().map(|w| w[..rank].to_vec()).collect();
        let tor = toral_weights(l);
        let lanes = tor.len().min(LANES);
        let mut toral = vec![[0u8; LANES]; l.dim()];
        for (lane, lam) in tor.iter().take(lanes).enumerate() {
            for (x, &v) in lam.iter().enumerate() {
                toral[x][lane] = v as u8;
            }
        }
        Ok(BlockWeights {
            p: l.p(),
            lattice_rank: rank,
            lattice: raw.iter().map(|w| pack(w)).collect(),
            lattice_raw: raw,
            toral_lanes: lanes,
            toral,
            principal: l.grading().map(|g| g.weights.clone()),
        })
    }

    /// Only the stored principal grading (the plain weight decomposition).
    pub fn principal(l: &LieAlgebra) -> Result<Self> {
        let g = l.grading().ok_or(Error::Ungraded)?;
        let raw: Vec<Vec<i64>> = g.weights.iter().map(|&w| vec![w]).collect();
        Ok(BlockWeights {
            p: l.p(),
            lattice_rank: 1,
            lattice: raw.iter().map(|w| pack(w)).collect(),
            lattice_raw: raw,
            toral_lanes: 0,
            toral: vec![[0u8; LANES]; l.dim()],
            principal: Some(g.weights.clone()),
        })
    }

    /// A single block holding everything.
    pub fn trivial(l: &LieAlgebra) -> Self {
        BlockWeights {
            p: l.p(),
            lattice_rank: 0,
            lattice: vec![0; l.dim()],
            lattice_raw: vec![Vec::new(); l.dim()],
            toral_lanes: 0,
            toral: vec![[0u8; LANES]; l.dim()],
            principal: None,
        }
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn toral_lanes(&self) -> usize {
        self.toral_lanes
    }

    /// Key of the coordinate `(tuple; target)`: weight of the target minus
    /// the weights of the arguments.
    #[inline]
    pub fn key(&self, tuple: &[u32], target: u32) -> BlockKey {
        let mut lat = self.lattice[target as usize];
        for &x in tuple {
            lat = lat.wrapping_sub(self.lattice[x as usize]);
        }
        let mut toral = 0u64;
        if self.toral_lanes > 0 {
            let p = self.p as i64;
            let tt = &self.toral[target as usize];
            for lane in (0..self.toral_lanes).rev() {
                let mut v = tt[lane] as i64;
                for &x in tuple {
                    v -= self.toral[x as usize][lane] as i64;
                }
                toral = toral * self.p as u64 + v.rem_euclid(p) as u64;
            }
        }
        BlockKey { lattice: lat, toral }
    }

    pub fn lattice_weight(&self, key: &BlockKey) -> Vec<i64> {
        unpack(key.lattice, self.lattice_rank)
    }

    pub fn toral_weight(&self, key: &BlockKey) -> Vec<u32> {
        let mut t = key.toral;
        (0..self.toral_lanes)
            .map(|_| {
                let v = (t % self.p as u64) as u32;
                t /= self.p as u64;
                v
            })
            .collect()
    }

    /// Principal weight of a coordinate, when a principal grading is stored.
    pub fn principal_weight(&self, tuple: &[u32], target: u32) -> Option<i64> {
        self.principal
            .as_ref()
            .map(|w| w[target as usize] - tuple.iter().map(|&x| w[x as usize]).sum::<i64>())
    }

    pub fn basis_lattice(&self, x: usize) -> &[i64] {
        &self.lattice_raw[x]
    }
}

/// The coordinates of one weight block of `C^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBlock {
    pub degree: usize,
    pub key: BlockKey,
    /// `target weight - sum of argument weights` under the principal grading.
    pub weight: Option<i64>,
    /// Packed cochain keys (see [`super::cochain::encode`]), sorted.
    pub coords: Vec<u64>,
}

/// Partition the coordinates of `C^q` (q <= 3) by block key. Blocks are
/// returned in key order with sorted coordinates.
pub fn blocks_of_degree(l: &LieAlgebra, bw: &BlockWeights, q: usize) -> Result<Vec<WeightBlock>> {
    if q == 0 || q > 3 {
        return Err(Error::UnsupportedDegree(q));
    }
    let d = l.dim() as u32;
    let mut map: BTreeMap<BlockKey, (Option<i64>, Vec<u64>)> = BTreeMap::new();
    let mut tuple = vec![0u32; q];
    let mut visit = |tuple: &[u32]| {
        for t in 0..d {
            let k = bw.key(tuple, t);
            let e = map.entry(k).or_insert_with(|| (bw.principal_weight(tuple, t), Vec::new()));
            e.1.push(super::cochain::encode(d as usize, tuple, t));
        }
    };
    fn rec(pos: usize, start: u32, d: u32, tuple: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if pos == tuple.len() {
            visit(tuple);
            return;
        }
        for x in start..d {
            tuple[pos] = x;
            rec(pos + 1, x + 1, d, tuple, visit);
        }
    }
    rec(0, 0, d, &mut tuple, &mut visit);
    Ok(map
        .into_iter()
        .map(|(key, (weight, mut coords))| {
            coords.sort_unstable();
            WeightBlock {
                degree: q,
                key,
                weight,
                coords,
            }
        })
        .collect())
}

/// Blocks of `C^q` for the stored principal grading.
pub fn weight_blocks(l: &LieAlgebra, q: usize) -> Result<Vec<WeightBlock>> {
    let bw = BlockWeights::principal(l)?;
    blocks_of_degree(l, &bw, q)
}

/// Number of coordinates of `C^3` in each requested block, by counting
/// triples through pair-sum tables instead of enumerating them.
pub fn c3_counts(l: &LieAlgebra, bw: &BlockWeights, keys: &[BlockKey]) -> HashMap<BlockKey, u64> {
    // with toral lanes the counting trick needs residues; fall back to
    // explicit enumeration restricted to the requested keys
    let d = l.dim() as u32;
    let wanted: std::collections::HashSet<BlockKey> = keys.iter().copied().collect();
    let mut out: HashMap<BlockKey, u64> = keys.iter().map(|&k| (k, 0)).collect();
    if wanted.is_empty() {
        return out;
    }
    // group targets by their own key so the inner loop is a hash lookup
    let mut by_target: HashMap<BlockKey, u64> = HashMap::new();
    for t in 0..d {
        *by_target.entry(bw.key(&[], t)).or_insert(0) += 1;
    }
    let target_keys: Vec<(BlockKey, u64)> = by_target.into_iter().collect();
    // a triple with argument key s contributes to block k(t) - s
    let mut arg_counts: HashMap<BlockKey, u64> = HashMap::new();
    for x0 in 0..d {
        for x1 in x0 + 1..d {
            for x2 in x1 + 1..d {
                *arg_counts.entry(bw.key(&[x0, x1, x2], 0)).or_insert(0) += 1;
            }
        }
    }
    // key(tuple, t) = key(t) - args, and key(tuple, 0) = key(0) - args
    let zero = bw.key(&[], 0);
    for (neg_args, n) in arg_counts {
        for &(tk, m) in &target_keys {
            let k = combine(bw, tk, neg_args, zero);
            if let Some(c) = out.get_mut(&k) {
                *c += n * m;
            }
        }
    }
    out
}

/// `a + b - c` on block keys.
fn combine(bw: &BlockWeights, a: BlockKey, b: BlockKey, c: BlockKey) -> BlockKey {
    let lattice = a.lattice.wrapping_add(b.lattice).wrapping_sub(c.lattice);
    let p = bw.p as u64;
    let (mut x, mut y, mut z) = (a.toral, b.toral, c.toral);
    let mut toral = 0u64;
    let mut place = 1u64;
    for _ in 0..bw.toral_lanes {
        let v = (x % p + y % p + p - z % p) % p;
        toral += v * place;
        place *= p;
        x /= p;
        y /= p;
        z /= p;
    }
    BlockKey { lattice, toral }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_w;

    #[test]
    fn pack_roundtrip() {
        let v = vec![-3, 0, 17, -1];
        assert_eq!(unpack(pack(&v), 4), v);
    }

    #[test]
    fn w1_degree_two_blocks() {
        let w = build_w(1, 5).unwrap();
        let blocks = weight_blocks(&w, 2).unwrap();
        assert_eq!(blocks.iter().map(|b| b.coords.len()).sum::<usize>(), 50);
        let bw = BlockWeights::refined(&w).unwrap();
        let refined = blocks_of_degree(&w, &bw, 2).unwrap();
        assert_eq!(refined.iter().map(|b| b.coords.len()).sum::<usize>(), 50);
    }

    #[test]
    fn c3_counts_match_enumeration() {
        let w = build_w(2, 5).unwrap();
        let bw = BlockWeights::refined(&w).unwrap();
        let blocks = blocks_of_degree(&w, &bw, 3).unwrap();
        let keys: Vec<BlockKey> = blocks.iter().map(|b| b.key).collect();
        let counts = c3_counts(&w, &bw, &keys);
        for b in &blocks {
            assert_eq!(counts[&b.key], b.coords.len() as u64);
        }
    }
}
