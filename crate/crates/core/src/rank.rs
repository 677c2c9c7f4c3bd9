//! Exact rank of sparse integer matrices by fraction-free elimination with Markowitz pivoting,
//! plus a dense rational elimination used as an independent oracle.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// A list of sparse integer vectors over coordinates `0..dim`; the rank is that of their span.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVectors {
    pub dim: usize,
    pub vectors: Vec<Vec<(u32, i64)>>,
}

impl SparseVectors {
    pub fn new(dim: usize) -> Self {
        Self { dim, vectors: Vec::new() }
    }

    /// Adds a vector; duplicate coordinates are summed and zeros dropped.
    pub fn push(&mut self, mut v: Vec<(u32, i64)>) {
        v.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(v.len());
        for (c, x) in v {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += x,
                _ => merged.push((c, x)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.vectors.push(merged);
    }

    pub fn rank(&self) -> usize {
        eliminate::<i64>(self, |x| x).unwrap_or_else(|| {
            eliminate::<BigInt>(self, BigInt::from).expect("arbitrary precision elimination cannot overflow")
        })
    }
}

trait ExactInt: Clone + PartialEq + Zero + One + Integer + Signed {
    fn checked_mul_(&self, o: &Self) -> Option<Self>;
    fn checked_sub_(&self, o: &Self) -> Option<Self>;
}

impl ExactInt for i64 {
    fn checked_mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn checked_sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
}

impl ExactInt for BigInt {
    fn checked_mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
}

type Vector<T> = Vec<(u32, T)>;

fn value_at<T>(v: &Vector<T>, c: u32) -> Option<&T> {
    v.binary_search_by_key(&c, |e| e.0).ok().map(|i| &v[i].1)
}

/// `a·w − b·p`, divided by its content; `None` on overflow.
fn combine<T: ExactInt>(w: &Vector<T>, a: &T, p: &Vector<T>, b: &T) -> Option<Vector<T>> {
    let mut out = Vec::with_capacity(w.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < w.len() || j < p.len() {
        let take_w = j >= p.len() || (i < w.len() && w[i].0 < p[j].0);
        let take_p = i >= w.len() || (j < p.len() && p[j].0 < w[i].0);
        let (c, val) = if take_w {
            i += 1;
            (w[i - 1].0, w[i - 1].1.checked_mul_(a)?)
        } else if take_p {
            j += 1;
            (p[j - 1].0, T::zero().checked_sub_(&p[j - 1].1.checked_mul_(b)?)?)
        } else {
            i += 1;
            j += 1;
            (w[i - 1].0, w[i - 1].1.checked_mul_(a)?.checked_sub_(&p[j - 1].1.checked_mul_(b)?)?)
        };
        if !val.is_zero() {
            out.push((c, val));
        }
    }
    let content = out.iter().fold(T::zero(), |g, e| g.gcd(&e.1));
    if !content.is_zero() && !content.is_one() {
        for e in &mut out {
            e.1 = e.1.div_floor(&content);
        }
    }
    Some(out)
}

fn eliminate<T: ExactInt>(m: &SparseVectors, convert: impl Fn(i64) -> T) -> Option<usize> {
    let mut vecs: Vec<Option<Vector<T>>> = m
        .vectors
        .iter()
        .map(|v| (!v.is_empty()).then(|| v.iter().map(|&(c, x)| (c, convert(x))).collect()))
        .collect();
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); m.dim];
    let mut count = vec![0usize; m.dim];
    for (id, v) in vecs.iter().enumerate() {
        for (c, _) in v.iter().flatten() {
            occ[*c as usize].push(id as u32);
            count[*c as usize] += 1;
        }
    }
    let mut done = vec![false; m.dim];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..m.dim).filter(|&c| count[c] > 0).map(|c| Reverse((count[c], c as u32))).collect();
    let mut rank = 0;
    while let Some(Reverse((cnt, c))) = heap.pop() {
        let cu = c as usize;
        if done[cu] || cnt != count[cu] {
            continue;
        }
        let holders: Vec<u32> = {
            let list = &mut occ[cu];
            list.sort_unstable();
            list.dedup();
            list.retain(|&id| vecs[id as usize].as_ref().is_some_and(|v| value_at(v, c).is_some()));
            list.clone()
        };
        done[cu] = true;
        if holders.is_empty() {
            continue;
        }
        let pivot_id = *holders
            .iter()
            .min_by_key(|&&id| {
                let v = vecs[id as usize].as_ref().unwrap();
                (v.len(), !value_at(v, c).unwrap().abs().is_one(), id)
            })
            .unwrap();
        let pivot = vecs[pivot_id as usize].take().unwrap();
        rank += 1;
        for (pc, _) in &pivot {
            count[*pc as usize] -= 1;
        }
        let a = value_at(&pivot, c).unwrap().clone();
        let mut touched = Vec::new();
        for &id in holders.iter().filter(|&&id| id != pivot_id) {
            let w = vecs[id as usize].take().unwrap();
            let b = value_at(&w, c).unwrap().clone();
            let g = a.gcd(&b);
            let (a_red, b_red) = (a.div_floor(&g), b.div_floor(&g));
            let nw = combine(&w, &a_red, &pivot, &b_red)?;
            for (wc, _) in &w {
                count[*wc as usize] -= 1;
            }
            for (nc, _) in &nw {
                count[*nc as usize] += 1;
                occ[*nc as usize].push(id);
            }
            touched.extend(w.iter().map(|e| e.0));
            touched.extend(nw.iter().map(|e| e.0));
            if !nw.is_empty() {
                vecs[id as usize] = Some(nw);
            }
        }
        touched.extend(pivot.iter().map(|e| e.0));
        touched.sort_unstable();
        touched.dedup();
        for t in touched {
            let tu = t as usize;
            if !done[tu] && count[tu] > 0 {
                heap.push(Reverse((count[tu], t)));
            }
        }
    }
    Some(rank)
}

/// Rank over Q of a dense matrix by textbook Gaussian elimination.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pivot);
        let inv = Rational::one() / &a[rank][col];
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] * &inv;
                for k in col..ncols {
                    let delta = &factor * &a[rank][k];
                    a[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
