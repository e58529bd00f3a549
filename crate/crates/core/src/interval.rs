//! Bruhat intervals `[u,v]` as explicit posets carrying the restriction of the
//! Bruhat graph.
//!
//! Edge convention: `x → y` iff `y = x·t` for a transposition `t` and
//! `ℓ(x) < ℓ(y)`; the edge is labelled by `t = x⁻¹y`.
//!
//! An [`Interval`] is a cheap handle onto shared, immutable data for an
//! ambient interval `[u,v]` together with a bottom element. Every interval the
//! decomposition machinery needs has the form `[x,v]` with `x ∈ [u,v]`, so
//! [`Interval::subinterval`] shares the ambient tables (distances, order
//! matrix, memo tables) instead of rebuilding them.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::memo::PairMemo;
use crate::perm::{Permutation, Reflection};
use crate::poly::QPoly;
use crate::rpoly::RtildeCache;

pub(crate) const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Reflection,
}

/// Memo tables shared by all views of one ambient interval. Keys are
/// `(bottom, z)` element indices, i.e. a query about `z` in `[bottom, v]`.
pub(crate) struct Memos {
    pub(crate) upper_hcd: PairMemo<bool>,
    pub(crate) amazing: PairMemo<bool>,
    pub(crate) shortcuts: PairMemo<Vec<usize>>,
    pub(crate) r_element: PairMemo<bool>,
    pub(crate) rtilde: PairMemo<QPoly>,
}

pub(crate) struct IntervalData {
    n: usize,
    elements: Vec<Permutation>,
    lengths: Vec<usize>,
    index: HashMap<Permutation, usize>,
    up: Vec<FixedBitSet>,
    out_edges: Vec<Vec<Edge>>,
    in_edges: Vec<Vec<Edge>>,
    dist: Vec<u32>,
    pub(crate) cache: Arc<RtildeCache>,
    pub(crate) memo: Memos,
}

/// The interval `[bottom, v]` inside an ambient interval `[u, v]`.
#[derive(Clone)]
pub struct Interval {
    data: Arc<IntervalData>,
    bottom: usize,
}

impl Interval {
    /// Builds `[u,v]` using the process-wide in-memory R̃ cache.
    pub fn new(u: Permutation, v: Permutation) -> Result<Self> {
        Self::with_cache(u, v, RtildeCache::global())
    }

    pub fn with_cache(u: Permutation, v: Permutation, cache: Arc<RtildeCache>) -> Result<Self> {
        if u.n() != v.n() {
            return Err(Error::RankMismatch {
                left: u.n(),
                right: v.n(),
            });
        }
        if !u.bruhat_leq(&v) {
            return Err(Error::NotComparable { u, v });
        }
        let n = u.n();
        let reflections = Reflection::all(n);

        // upward closure from u along length-increasing edges, cut at v
        let mut elements = vec![u];
        let mut seen: HashMap<Permutation, ()> = HashMap::from([(u, ())]);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let lx = x.length();
            for &t in &reflections {
                let y = x.right_multiply(t);
                if y.length() > lx && y.bruhat_leq(&v) && seen.insert(y, ()).is_none() {
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_by_key(|w| (w.length(), *w));
        let size = elements.len();
        let lengths: Vec<usize> = elements.iter().map(Permutation::length).collect();
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(k, w)| (*w, k)).collect();

        let mut up = Vec::with_capacity(size);
        for (a, x) in elements.iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(size);
            for (b, y) in elements.iter().enumerate().skip(a) {
                if lengths[b] >= lengths[a] && x.bruhat_leq(y) {
                    row.insert(b);
                }
            }
            up.push(row);
        }

        let mut out_edges = vec![Vec::new(); size];
        let mut in_edges = vec![Vec::new(); size];
        for (a, x) in elements.iter().enumerate() {
            for &t in &reflections {
                let y = x.right_multiply(t);
                if let Some(&b) = index.get(&y) {
                    if lengths[b] > lengths[a] {
                        let e = Edge {
                            source: a,
                            target: b,
                            label: t,
                        };
                        out_edges[a].push(e);
                        in_edges[b].push(e);
                    }
                }
            }
        }

        let mut dist = vec![UNREACHABLE; size * size];
        let mut queue = VecDeque::new();
        for s in 0..size {
            let row = &mut dist[s * size..(s + 1) * size];
            row[s] = 0;
            queue.push_back(s);
            while let Some(a) = queue.pop_front() {
                for e in &out_edges[a] {
                    if row[e.target] == UNREACHABLE {
                        row[e.target] = row[a] + 1;
                        queue.push_back(e.target);
                    }
                }
            }
        }

        let memo = Memos {
            upper_hcd: PairMemo::new(size),
            amazing: PairMemo::new(size),
            shortcuts: PairMemo::new(size),
            r_element: PairMemo::new(size),
            rtilde: PairMemo::new(size),
        };
        let data = IntervalData {
            n,
            elements,
            lengths,
            index,
            up,
            out_edges,
            in_edges,
            dist,
            cache,
            memo,
        };
        Ok(Self {
            data: Arc::new(data),
            bottom: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn u(&self) -> Permutation {
        self.data.elements[self.bottom]
    }

    pub fn v(&self) -> Permutation {
        *self.data.elements.last().expect("interval is never empty")
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.data.up[self.bottom].count_ones(..)
    }

    /// Elements ordered by length, then window.
    pub fn elements(&self) -> Vec<Permutation> {
        self.members().map(|k| self.data.elements[k]).collect()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.data.index.get(x).is_some_and(|&k| self.is_member(k))
    }

    /// `[x, v]` sharing this interval's tables.
    pub fn subinterval(&self, x: &Permutation) -> Result<Self> {
        let k = self.idx(x)?;
        Ok(self.sub(k))
    }

    pub fn rtilde_cache(&self) -> &Arc<RtildeCache> {
        &self.data.cache
    }

    /// The directed Bruhat-graph distance, `None` when `x ≰ y`.
    pub fn distance(&self, x: &Permutation, y: &Permutation) -> Result<Option<u32>> {
        let (a, b) = (self.idx(x)?, self.idx(y)?);
        Ok(self.dist(a, b))
    }

    pub fn leq(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        Ok(self.leq_idx(self.idx(x)?, self.idx(y)?))
    }

    /// All Bruhat-graph edges with both endpoints in the interval.
    pub fn edges(&self) -> Vec<(Permutation, Permutation, Reflection)> {
        self.members()
            .flat_map(|a| self.out_edges(a))
            .map(|e| (self.perm(e.source), self.perm(e.target), e.label))
            .collect()
    }

    /// All shortest directed paths from `x` to `y`.
    pub fn geodesics(&self, x: &Permutation, y: &Permutation) -> Result<Vec<Path>> {
        let (a, b) = (self.idx(x)?, self.idx(y)?);
        Ok(self
            .geodesics_idx(a, b)
            .into_iter()
            .map(|walk| self.path_from_indices(&walk))
            .collect())
    }

    /// Whether `[z,v]` is diamond complete with respect to this interval: any
    /// `x` with two distinct out-neighbours `a1, a2 ∈ [z,v]` sharing an
    /// out-neighbour `y ∈ [z,v]` lies in `[z,v]` itself.
    pub fn is_diamond_complete(&self, z: &Permutation) -> Result<bool> {
        Ok(self.diamond_complete_idx(self.idx(z)?))
    }

    /// Labels of the edges `c → y` for the coatoms `c` of `[x,y]`.
    pub fn coatom_reflections(&self, x: &Permutation, y: &Permutation) -> Result<Vec<Reflection>> {
        let (a, b) = (self.idx(x)?, self.idx(y)?);
        Ok(self.coatom_labels_idx(a, b))
    }

    /// The dual interval `[v·w0, u·w0]` with the order-reversing map `x ↦ x·w0`.
    pub fn dual(&self) -> Result<DualInterval> {
        let w0 = Permutation::longest(self.n());
        let u = self.v().compose(&w0)?;
        let v = self.u().compose(&w0)?;
        Ok(DualInterval {
            interval: Interval::with_cache(u, v, self.data.cache.clone())?,
            w0,
        })
    }

    pub fn summary(&self) -> IntervalSummary {
        IntervalSummary {
            n: self.n(),
            u: self.u(),
            v: self.v(),
            size: self.size(),
        }
    }

    // ---- index-level API -------------------------------------------------

    pub(crate) fn sub(&self, bottom: usize) -> Self {
        debug_assert!(self.is_member(bottom));
        Self {
            data: self.data.clone(),
            bottom,
        }
    }

    pub(crate) fn data(&self) -> &IntervalData {
        &self.data
    }

    #[inline]
    pub(crate) fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub(crate) fn top(&self) -> usize {
        self.data.elements.len() - 1
    }

    pub(crate) fn ambient_size(&self) -> usize {
        self.data.elements.len()
    }

    pub(crate) fn idx(&self, x: &Permutation) -> Result<usize> {
        match self.data.index.get(x) {
            Some(&k) if self.is_member(k) => Ok(k),
            _ => Err(Error::NotInInterval(*x)),
        }
    }

    #[inline]
    pub(crate) fn perm(&self, k: usize) -> Permutation {
        self.data.elements[k]
    }

    #[inline]
    pub(crate) fn length_of(&self, k: usize) -> usize {
        self.data.lengths[k]
    }

    #[inline]
    pub(crate) fn is_member(&self, k: usize) -> bool {
        self.data.up[self.bottom].contains(k)
    }

    /// Element indices in increasing (length, window) order.
    pub(crate) fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.data.up[self.bottom].ones()
    }

    /// `[z, v]` as a bitset over ambient indices.
    #[inline]
    pub(crate) fn upper_set(&self, z: usize) -> &FixedBitSet {
        &self.data.up[z]
    }

    #[inline]
    pub(crate) fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.data.up[a].contains(b)
    }

    #[inline]
    pub(crate) fn dist(&self, a: usize, b: usize) -> Option<u32> {
        let d = self.data.dist[a * self.data.elements.len() + b];
        (d != UNREACHABLE).then_some(d)
    }

    /// Out-edges of `a` (their targets are automatically in the view when `a` is).
    pub(crate) fn out_edges(&self, a: usize) -> &[Edge] {
        &self.data.out_edges[a]
    }

    /// In-edges of `b` whose source lies in the view.
    pub(crate) fn in_edges(&self, b: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.data.in_edges[b]
            .iter()
            .filter(move |e| self.is_member(e.source))
    }

    pub(crate) fn has_edge(&self, a: usize, b: usize) -> bool {
        self.data.out_edges[a].iter().any(|e| e.target == b)
    }

    pub(crate) fn geodesics_idx(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let Some(d) = self.dist(a, b) else {
            return out;
        };
        let mut walk = vec![a];
        self.geodesic_dfs(b, d, &mut walk, &mut out);
        out
    }

    fn geodesic_dfs(
        &self,
        target: usize,
        remaining: u32,
        walk: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let here = *walk.last().unwrap();
        debug_assert!(self.leq_idx(walk[0], here) && self.leq_idx(here, target));
        if remaining == 0 {
            out.push(walk.clone());
            return;
        }
        for e in self.out_edges(here) {
            if self.dist(e.target, target) == Some(remaining - 1) {
                walk.push(e.target);
                self.geodesic_dfs(target, remaining - 1, walk, out);
                walk.pop();
            }
        }
    }

    pub(crate) fn diamond_complete_idx(&self, z: usize) -> bool {
        let upper = self.upper_set(z);
        for y in upper.ones() {
            let tops: Vec<usize> = self
                .in_edges(y)
                .map(|e| e.source)
                .filter(|&a| upper.contains(a))
                .collect();
            if tops.len() < 2 {
                continue;
            }
            for x in self.members().filter(|&x| !upper.contains(x)) {
                let hits = self
                    .out_edges(x)
                    .iter()
                    .filter(|e| tops.contains(&e.target))
                    .count();
                if hits >= 2 {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn coatom_labels_idx(&self, x: usize, y: usize) -> Vec<Reflection> {
        let ly = self.length_of(y);
        let mut labels: Vec<Reflection> = self.data.in_edges[y]
            .iter()
            .filter(|e| self.length_of(e.source) + 1 == ly && self.leq_idx(x, e.source))
            .map(|e| e.label)
            .collect();
        labels.sort();
        labels
    }

    pub(crate) fn path_from_indices(&self, walk: &[usize]) -> Path {
        let vertices: Vec<Permutation> = walk.iter().map(|&k| self.perm(k)).collect();
        let labels = vertices
            .windows(2)
            .map(|w| {
                w[0].right_reflection_to(&w[1])
                    .expect("consecutive path vertices differ by a reflection")
            })
            .collect();
        Path { vertices, labels }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}] ({} elements)", self.u(), self.v(), self.size())
    }
}

/// A directed path `x0 → x1 → ... → xr` in the Bruhat graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<Permutation>,
    pub labels: Vec<Reflection>,
}

impl Path {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn support(&self) -> &[Permutation] {
        &self.vertices
    }
}

pub struct DualInterval {
    pub interval: Interval,
    w0: Permutation,
}

impl DualInterval {
    /// `x ↦ x·w0`.
    pub fn map(&self, x: &Permutation) -> Permutation {
        x.compose(&self.w0).expect("same rank")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSummary {
    pub n: usize,
    pub u: Permutation,
    pub v: Permutation,
    pub size: usize,
}

/// `[u,v]` via [`Interval::new`].
pub fn build_interval(u: Permutation, v: Permutation) -> Result<Interval> {
    Interval::new(u, v)
}
