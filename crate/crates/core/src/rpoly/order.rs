//! Reflection orders of `S_n`.
//!
//! A total order on the transpositions is a reflection order iff for all
//! `i < j < k` the transposition `t(i,k)` lies strictly between `t(i,j)` and
//! `t(j,k)`. Reflection orders are in bijection with reduced words of `w0`: the
//! word `s_{i1} s_{i2} ... s_{iN}` yields `t_k = s_{i1}···s_{i(k-1)} s_{ik}
//! s_{i(k-1)}···s_{i1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Reflection};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReflectionOrder {
    n: usize,
    sequence: Vec<Reflection>,
    /// position of each reflection, indexed by [`Reflection::ordinal`]
    position: Vec<usize>,
}

impl ReflectionOrder {
    /// Wraps a list containing every transposition of `S_n` exactly once.
    /// The betweenness law is checked too.
    pub fn new(n: usize, sequence: Vec<Reflection>) -> Result<Self> {
        let order = Self::from_sequence(n, sequence)?;
        if !order.is_valid() {
            return Err(Error::InvalidOrder(format!(
                "{order} violates the betweenness law"
            )));
        }
        Ok(order)
    }

    fn from_sequence(n: usize, sequence: Vec<Reflection>) -> Result<Self> {
        let total = n * n.saturating_sub(1) / 2;
        if sequence.len() != total {
            return Err(Error::InvalidOrder(format!(
                "expected {total} reflections, got {}",
                sequence.len()
            )));
        }
        let mut position = vec![usize::MAX; total];
        for (k, t) in sequence.iter().enumerate() {
            if t.j() > n || position[t.ordinal(n)] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{t} repeated or out of range")));
            }
            position[t.ordinal(n)] = k;
        }
        Ok(Self {
            n,
            sequence,
            position,
        })
    }

    /// The order induced by a reduced word of `w0` (letters are the indices
    /// `i` of the simple transpositions `s_i`).
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let total = n * n.saturating_sub(1) / 2;
        if word.len() != total {
            return Err(Error::InvalidWord(format!(
                "{word:?} has length {}, a reduced word of w0 in S_{n} has length {total}",
                word.len()
            )));
        }
        let mut w = Permutation::identity(n);
        let mut sequence = Vec::with_capacity(total);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::InvalidWord(format!(
                    "letter {i} is not a generator of S_{n}"
                )));
            }
            // ℓ(w·s_i) > ℓ(w) iff w(i) < w(i+1); the prefix conjugate swaps those values
            if w.at(i) > w.at(i + 1) {
                return Err(Error::InvalidWord(format!("{word:?} is not reduced")));
            }
            sequence.push(Reflection::new(w.at(i), w.at(i + 1)));
            w = w.right_multiply(Reflection::new(i, i + 1));
        }
        debug_assert_eq!(w, Permutation::longest(n));
        let order = Self::from_sequence(n, sequence)?;
        debug_assert!(order.is_valid());
        Ok(order)
    }

    /// The order of the word `1, 21, 321, ..., (n-1)...1`.
    pub fn standard(n: usize) -> Self {
        Self::from_word(n, &standard_word(n)).expect("standard word is reduced")
    }

    /// The order of the standard word with every letter `i` replaced by `n - i`.
    pub fn mirrored(n: usize) -> Self {
        let word: Vec<usize> = standard_word(n).into_iter().map(|i| n - i).collect();
        Self::from_word(n, &word).expect("mirrored standard word is reduced")
    }

    /// The order of the standard word read backwards.
    pub fn reversed(n: usize) -> Self {
        let mut word = standard_word(n);
        word.reverse();
        Self::from_word(n, &word).expect("reversed standard word is reduced")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sequence(&self) -> &[Reflection] {
        &self.sequence
    }

    #[inline]
    pub fn position(&self, t: Reflection) -> usize {
        self.position[t.ordinal(self.n)]
    }

    pub fn is_valid(&self) -> bool {
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                for k in j + 1..=self.n {
                    let a = self.position(Reflection::new(i, j));
                    let b = self.position(Reflection::new(i, k));
                    let c = self.position(Reflection::new(j, k));
                    if !((a < b && b < c) || (c < b && b < a)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn standard_word(n: usize) -> Vec<usize> {
    (1..n).flat_map(|k| (1..=k).rev()).collect()
}

impl fmt::Display for ReflectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sequence.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" < "))
    }
}

impl fmt::Debug for ReflectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Checks the betweenness law for a list of transpositions of `S_n` that
/// contains each one exactly once. Lists that are not such a permutation
/// return `false`.
pub fn is_reflection_order(n: usize, sequence: &[Reflection]) -> bool {
    ReflectionOrder::from_sequence(n, sequence.to_vec()).is_ok_and(|o| o.is_valid())
}

/// Reflection orders of `S_n` in which `a` comes strictly before `b` for every
/// `(a, b)` in `must_precede`, at most `limit` of them.
///
/// Depth-first search over reduced-word prefixes of `w0`; a letter is only
/// appended when every required predecessor of the reflection it introduces
/// has already been placed.
pub fn constrained_orders(
    n: usize,
    must_precede: &[(Reflection, Reflection)],
    limit: usize,
) -> Vec<ReflectionOrder> {
    let total = n * n.saturating_sub(1) / 2;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (a, b) in must_precede {
        if a == b {
            return Vec::new();
        }
        preds[b.ordinal(n)].push(a.ordinal(n));
    }
    let mut search = OrderSearch {
        n,
        preds,
        placed: vec![false; total],
        word: Vec::with_capacity(total),
        limit,
        found: Vec::new(),
    };
    search.run(Permutation::identity(n));
    search.found
}

struct OrderSearch {
    n: usize,
    preds: Vec<Vec<usize>>,
    placed: Vec<bool>,
    word: Vec<usize>,
    limit: usize,
    found: Vec<ReflectionOrder>,
}

impl OrderSearch {
    fn run(&mut self, w: Permutation) {
        if self.found.len() >= self.limit {
            return;
        }
        if self.word.len() == self.placed.len() {
            let order = ReflectionOrder::from_word(self.n, &self.word)
                .expect("search yields reduced words");
            self.found.push(order);
            return;
        }
        for i in 1..self.n {
            if w.at(i) > w.at(i + 1) {
                continue;
            }
            let t = Reflection::new(w.at(i), w.at(i + 1)).ordinal(self.n);
            if self.preds[t].iter().any(|&a| !self.placed[a]) {
                continue;
            }
            self.placed[t] = true;
            self.word.push(i);
            self.run(w.right_multiply(Reflection::new(i, i + 1)));
            self.word.pop();
            self.placed[t] = false;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}
