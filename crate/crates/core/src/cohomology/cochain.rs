//! Alternating cochains with values in the adjoint module, stored sparsely
//! on strictly increasing basis tuples.

use std::collections::BTreeMap;

use crate::algebra::{Element, LieAlgebra};
use crate::error::{Error, Result};
use crate::fp::Field;
use crate::linalg::{Accumulator, SparseVec};

/// Pack `(x_0 < .. < x_{q-1}; t)` into one integer: `((x_0 d + x_1) d ..) d + t`.
#[inline]
pub fn encode(dim: usize, tuple: &[u32], target: u32) -> u64 {
    let d = dim as u64;
    let mut k = 0u64;
    for &x in tuple {
        k = k * d + x as u64;
    }
    k * d + target as u64
}

/// Inverse of [`encode`] for a tuple of length `q`.
pub fn decode(dim: usize, q: usize, mut key: u64) -> (Vec<u32>, u32) {
    let d = dim as u64;
    let t = (key % d) as u32;
    key /= d;
    let mut tuple = vec![0u32; q];
    for slot in tuple.iter_mut().rev() {
        *slot = (key % d) as u32;
        key /= d;
    }
    (tuple, t)
}

/// Sort a tuple in place and return the sign of the sorting permutation,
/// or `None` when an index repeats.
pub fn sort_with_sign(tuple: &mut [u32]) -> Option<bool> {
    let mut neg = false;
    for i in 1..tuple.len() {
        let mut j = i;
        while j > 0 && tuple[j - 1] > tuple[j] {
            tuple.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if tuple.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(neg)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    dim: usize,
    parent: u64,
    field: Field,
    entries: BTreeMap<u64, u32>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cochain")
            .field("degree", &self.degree)
            .field("nnz", &self.entries.len())
            .finish()
    }
}

impl Cochain {
    pub fn zero(l: &LieAlgebra, degree: usize) -> Self {
        Cochain {
            degree,
            dim: l.dim(),
            parent: l.id(),
            field: l.field(),
            entries: BTreeMap::new(),
        }
    }

    /// Build from packed keys; duplicate keys are summed.
    pub fn from_keys(l: &LieAlgebra, degree: usize, entries: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut c = Cochain::zero(l, degree);
        for (k, v) in entries {
            c.add_key(k, v);
        }
        c
    }

    /// Build a 2-cochain from its values on basis pairs `i < j`.
    pub fn from_pairs(l: &LieAlgebra, mut value: impl FnMut(usize, usize) -> SparseVec) -> Self {
        let mut c = Cochain::zero(l, 2);
        let d = l.dim();
        for i in 0..d {
            for j in i + 1..d {
                for (t, v) in value(i, j) {
                    c.add_key(encode(d, &[i as u32, j as u32], t), v);
                }
            }
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parent(&self) -> u64 {
        self.parent
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<u64, u32> {
        &self.entries
    }

    /// `(tuple, target, value)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<u32>, u32, u32)> + '_ {
        self.entries.iter().map(|(&k, &v)| {
            let (tuple, t) = decode(self.dim, self.degree, k);
            (tuple, t, v)
        })
    }

    pub fn add_key(&mut self, key: u64, v: u32) {
        if v == 0 {
            return;
        }
        let f = self.field;
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), v);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Add `v e_target` to the value on the (unsorted) tuple, respecting
    /// alternation. Repeated indices are ignored.
    pub fn add_value(&mut self, tuple: &[u32], target: u32, v: u32) -> Result<()> {
        if tuple.len() != self.degree {
            return Err(Error::ArityMismatch {
                left: tuple.len(),
                right: self.degree,
            });
        }
        for &x in tuple.iter().chain(std::iter::once(&target)) {
            if x as usize >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: x as usize,
                    bound: self.dim,
                });
            }
        }
        let mut t = tuple.to_vec();
        let Some(neg) = sort_with_sign(&mut t) else {
            return Ok(());
        };
        let v = if neg { self.field.neg(v) } else { v };
        self.add_key(encode(self.dim, &t, target), v);
        Ok(())
    }

    /// Value on a basis tuple, as a sparse vector over the targets.
    pub fn basis_value(&self, tuple: &[u32]) -> SparseVec {
        let mut t = tuple.to_vec();
        let Some(neg) = sort_with_sign(&mut t) else {
            return Vec::new();
        };
        let lo = encode(self.dim, &t, 0);
        let hi = lo + self.dim as u64;
        self.entries
            .range(lo..hi)
            .map(|(&k, &v)| ((k - lo) as u32, if neg { self.field.neg(v) } else { v }))
            .collect()
    }

    fn check_same(&self, other: &Cochain) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::ArityMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn axpy(&self, other: &Cochain, c: u32) -> Result<Cochain> {
        self.check_same(other)?;
        let mut out = self.clone();
        let c = c % self.field.p();
        for (&k, &v) in &other.entries {
            out.add_key(k, self.field.mul(v, c));
        }
        Ok(out)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.axpy(other, 1)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.axpy(other, self.field.p() - 1)
    }

    pub fn scale(&self, c: u32) -> Cochain {
        let f = self.field;
        let c = c % f.p();
        let mut out = Cochain {
            entries: BTreeMap::new(),
            ..self.clone()
        };
        if c != 0 {
            out.entries = self.entries.iter().map(|(&k, &v)| (k, f.mul(v, c))).collect();
        }
        out
    }
}

/// Alternating multilinear extension: `c(args[0], .., args[q-1])`.
pub fn cochain_eval(l: &LieAlgebra, c: &Cochain, args: &[Element]) -> Result<Element> {
    if c.parent != l.id() || args.iter().any(|a| a.parent() != l.id()) {
        return Err(Error::ParentMismatch);
    }
    let q = c.degree;
    if args.len() != q {
        return Err(Error::ArityMismatch {
            left: args.len(),
            right: q,
        });
    }
    let f = l.field();
    let perms = permutations(q);
    let mut acc = Accumulator::new(f, l.dim());
    for (tuple, t, v) in c.iter() {
        // sum over permutations s of sign(s) prod_i args[i][tuple[s(i)]]
        let mut coef = 0u32;
        for (perm, neg) in &perms {
            let mut prod = 1u32;
            for (i, &s) in perm.iter().enumerate() {
                prod = f.mul(prod, args[i].coords()[tuple[s] as usize]);
                if prod == 0 {
                    break;
                }
            }
            coef = if *neg { f.sub(coef, prod) } else { f.add(coef, prod) };
        }
        acc.add(t, f.mul(coef, v));
    }
    Ok(l.element_from_sparse(&acc.drain()))
}

/// All permutations of `0..q` with their signs.
fn permutations(q: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, q: usize, out: &mut Vec<(Vec<usize>, bool)>) {
        if prefix.len() == q {
            let mut p: Vec<u32> = prefix.iter().map(|&x| x as u32).collect();
            let neg = sort_with_sign(&mut p).unwrap();
            out.push((prefix.clone(), neg));
            return;
        }
        for i in 0..q {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, q, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; q], q, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_w;

    #[test]
    fn encode_roundtrip() {
        let k = encode(50, &[3, 17, 40], 9);
        assert_eq!(decode(50, 3, k), (vec![3, 17, 40], 9));
    }

    #[test]
    fn alternation() {
        let w = build_w(1, 5).unwrap();
        let mut c = Cochain::zero(&w, 2);
        c.add_value(&[3, 1], 2, 1).unwrap();
        assert_eq!(c.basis_value(&[1, 3]), vec![(2, 4)]);
        assert_eq!(c.basis_value(&[3, 1]), vec![(2, 1)]);
        let x = w.basis_element(1);
        let y = w.basis_element(3);
        let v = cochain_eval(&w, &c, &[x.clone(), x.clone()]).unwrap();
        assert!(v.is_zero());
        let a = cochain_eval(&w, &c, &[x.clone(), y.clone()]).unwrap();
        let b = cochain_eval(&w, &c, &[y, x]).unwrap();
        assert_eq!(w.add(&a, &b).unwrap(), w.zero());
        assert_eq!(a.coords()[2], 4);
    }
}
