//! Permutations of `S_n` in one-line notation, transpositions, and the
//! Bruhat order.
//!
//! Permutations act on positions under right multiplication: `x·t` swaps two
//! entries of the window of `x`, while `t·x` swaps two values.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported rank parameter.
pub const MAX_RANK: usize = 16;

/// An element of `S_n` stored as its window `(w(1), ..., w(n))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: u8,
    window: [u8; MAX_RANK],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        let mut window = [0u8; MAX_RANK];
        for (i, slot) in window.iter_mut().enumerate().take(n) {
            *slot = (i + 1) as u8;
        }
        Self { n: n as u8, window }
    }

    /// Builds a permutation from its one-line notation, checking that it is a
    /// bijection on `{1..n}`.
    pub fn from_window(values: &[u8]) -> Result<Self> {
        let n = values.len();
        if n > MAX_RANK {
            return Err(Error::InvalidPermutation(format!(
                "rank {n} exceeds {MAX_RANK}"
            )));
        }
        let mut seen = [false; MAX_RANK + 1];
        let mut window = [0u8; MAX_RANK];
        for (i, &value) in values.iter().enumerate() {
            let vi = value as usize;
            if vi == 0 || vi > n || seen[vi] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..{n}"
                )));
            }
            seen[vi] = true;
            window[i] = value;
        }
        Ok(Self { n: n as u8, window })
    }

    /// The longest element `w0 = (n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        let mut w = Self::identity(n);
        for i in 0..n {
            w.window[i] = (n - i) as u8;
        }
        w
    }

    /// The simple transposition `s_i = t(i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not a generator of S_{n}");
        Self::identity(n).right_multiply(Reflection::new(i, i + 1))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn window(&self) -> &[u8] {
        &self.window[..self.n()]
    }

    /// `w(i)` for a 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.window()
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = self.window();
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn inverse(&self) -> Self {
        let mut inv = *self;
        for (i, &v) in self.window().iter().enumerate() {
            inv.window[v as usize - 1] = (i + 1) as u8;
        }
        inv
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let mut out = *self;
        for i in 0..self.n() {
            out.window[i] = self.window[other.window[i] as usize - 1];
        }
        Ok(out)
    }

    /// `x·t`: swaps positions `t.i` and `t.j` of the window.
    pub fn right_multiply(&self, t: Reflection) -> Self {
        debug_assert!(t.j() <= self.n());
        let mut out = *self;
        out.window.swap(t.i() - 1, t.j() - 1);
        out
    }

    /// `t·x`: swaps the values `t.i` and `t.j` in the window.
    pub fn left_multiply(&self, t: Reflection) -> Self {
        let mut out = *self;
        for v in out.window[..self.n()].iter_mut() {
            if *v as usize == t.i() {
                *v = t.j() as u8;
            } else if *v as usize == t.j() {
                *v = t.i() as u8;
            }
        }
        out
    }

    /// If `other = self·t` for a transposition `t`, returns `t`.
    pub fn right_reflection_to(&self, other: &Self) -> Option<Reflection> {
        if self.n != other.n {
            return None;
        }
        let mut diff = (0..self.n()).filter(|&k| self.window[k] != other.window[k]);
        let a = diff.next()?;
        let b = diff.next()?;
        if diff.next().is_some() || self.window[a] != other.window[b] {
            return None;
        }
        Some(Reflection::new(a + 1, b + 1))
    }

    /// Bruhat comparison by the tableau criterion: `x ≤ y` iff for every `k`
    /// the increasingly sorted prefix `x(1..k)` is entrywise at most the
    /// sorted prefix `y(1..k)`.
    pub fn bruhat_leq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let n = self.n();
        let mut xs = [0u8; MAX_RANK];
        let mut ys = [0u8; MAX_RANK];
        for k in 0..n {
            insert_sorted(&mut xs, k, self.window[k]);
            insert_sorted(&mut ys, k, other.window[k]);
            if xs[..=k].iter().zip(&ys[..=k]).any(|(a, b)| a > b) {
                return false;
            }
        }
        true
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn right_descents(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n()).filter(move |&i| self.window[i - 1] > self.window[i])
    }

    /// The permutation of `S_{a+b}` acting as `self` on `1..a` and as `other`
    /// shifted by `a` on `a+1..a+b`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let total = self.n() + other.n();
        if total > MAX_RANK {
            return Err(Error::InvalidPermutation(format!(
                "direct sum rank {total} exceeds {MAX_RANK}"
            )));
        }
        let mut window = [0u8; MAX_RANK];
        window[..self.n()].copy_from_slice(self.window());
        for (k, &v) in other.window().iter().enumerate() {
            window[self.n() + k] = v + self.n;
        }
        Ok(Self {
            n: total as u8,
            window,
        })
    }

    /// Restriction to the block of positions `start+1..=start+len`, provided
    /// the block maps onto itself.
    pub fn block(&self, start: usize, len: usize) -> Option<Self> {
        let mut values = Vec::with_capacity(len);
        for &v in &self.window[start..start + len] {
            let v = v as usize;
            if v <= start || v > start + len {
                return None;
            }
            values.push((v - start) as u8);
        }
        Self::from_window(&values).ok()
    }

    /// Iterates over all of `S_n` in lexicographic order of windows.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some(Self::identity(n));
        std::iter::from_fn(move || {
            let current = next?;
            next = current.lex_successor();
            Some(current)
        })
    }

    fn lex_successor(&self) -> Option<Self> {
        let n = self.n();
        let w = &self.window[..n];
        let i = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1])?;
        let j = (i + 1..n).rev().find(|&j| w[j] > w[i])?;
        let mut out = *self;
        out.window.swap(i, j);
        out.window[i + 1..n].reverse();
        Some(out)
    }
}

fn insert_sorted(buf: &mut [u8; MAX_RANK], len: usize, value: u8) {
    let mut k = len;
    while k > 0 && buf[k - 1] > value {
        buf[k] = buf[k - 1];
        k -= 1;
    }
    buf[k] = value;
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by rank, then window lexicographically. This is not the Bruhat
/// order; see [`Permutation::bruhat_leq`].
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.window().cmp(other.window()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in self.window() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.window().iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad entry {part:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::from_window(&values).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A transposition `t(i,j)` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reflection {
    i: u8,
    j: u8,
}

impl Reflection {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(
            a != b && a >= 1 && b >= 1,
            "t({a},{b}) is not a transposition"
        );
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        Self {
            i: i as u8,
            j: j as u8,
        }
    }

    #[inline]
    pub fn i(&self) -> usize {
        self.i as usize
    }

    #[inline]
    pub fn j(&self) -> usize {
        self.j as usize
    }

    /// All `n(n-1)/2` transpositions of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Reflection> {
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Reflection::new(i, j));
            }
        }
        out
    }

    /// Position of `self` in [`Reflection::all`] for rank `n`.
    pub fn ordinal(&self, n: usize) -> usize {
        let i = self.i();
        // rows 1..i-1 contribute (n-1) + (n-2) + ... + (n-i+1)
        (i - 1) * n - (i - 1) * i / 2 + (self.j() - i - 1)
    }

    pub fn as_permutation(&self, n: usize) -> Permutation {
        Permutation::identity(n).right_multiply(*self)
    }

    /// The root `e_i - e_j` as an integer vector of length `n`.
    pub fn root(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        v[self.i() - 1] = 1;
        v[self.j() - 1] = -1;
        v
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{})", self.i, self.j)
    }
}

impl fmt::Debug for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Reflection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad reflection {s:?}, expected t(i,j)"));
        let inner = s
            .trim()
            .strip_prefix("t(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b == 0 || a == b {
            return Err(bad());
        }
        Ok(Reflection::new(a, b))
    }
}

/// `w0` of `S_n`.
pub fn longest_element(n: usize) -> Permutation {
    Permutation::longest(n)
}
