//! Counting paths in the Bruhat graph whose labels increase in a reflection
//! order.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::Permutation;
use crate::poly::QPoly;

use super::ReflectionOrder;

/// For each `p ∈ [z,v]`, the generating polynomial `Σ_k a[p][k] q^k` of
/// increasing paths from `u` to `p` whose support meets `[z,v]` only at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCountTable {
    pub rows: Vec<(Permutation, QPoly)>,
}

impl PathCountTable {
    pub fn row(&self, p: &Permutation) -> Option<&QPoly> {
        self.rows.iter().find(|(x, _)| x == p).map(|(_, poly)| poly)
    }

    /// `a[p][k]`; zero for elements outside the table.
    pub fn count(&self, p: &Permutation, k: usize) -> u64 {
        self.row(p)
            .map(|poly| u64::try_from(poly.coeff(k)).expect("desk-scale path counts fit in u64"))
            .unwrap_or(0)
    }
}

fn check_order(interval: &Interval, order: &ReflectionOrder) -> Result<()> {
    if order.n() != interval.n() {
        return Err(Error::InvalidOrder(format!(
            "order is for S_{}, interval lives in S_{}",
            order.n(),
            interval.n()
        )));
    }
    if !order.is_valid() {
        return Err(Error::InvalidOrder(order.to_string()));
    }
    Ok(())
}

/// Increasing-path counts from `u` to every `p ∈ [z,v]`, with supports meeting
/// `[z,v]` only at `p`. The empty path counts (length 0) when `p = u`.
pub fn increasing_path_counts(
    interval: &Interval,
    z: &Permutation,
    order: &ReflectionOrder,
) -> Result<PathCountTable> {
    check_order(interval, order)?;
    let zi = interval.idx(z)?;
    let rows = path_counts_idx(interval, zi, order)
        .into_iter()
        .map(|(k, poly)| (interval.perm(k), poly))
        .collect();
    Ok(PathCountTable { rows })
}

/// `Σ q^{|Γ|}` over increasing paths `u → v`.
pub fn rtilde_dyer(interval: &Interval, order: &ReflectionOrder) -> Result<QPoly> {
    check_order(interval, order)?;
    let top = interval.top();
    let rows = path_counts_idx(interval, top, order);
    Ok(rows
        .into_iter()
        .find(|&(k, _)| k == top)
        .map(|(_, poly)| poly)
        .unwrap_or_default())
}

/// Dynamic program over elements in increasing length. State: the current
/// vertex and the order position of the last label used (slot 0 = no label
/// yet). Vertices of `[z,v]` are terminal.
pub(crate) fn path_counts_idx(
    interval: &Interval,
    z: usize,
    order: &ReflectionOrder,
) -> Vec<(usize, QPoly)> {
    let size = interval.ambient_size();
    let slots = order.sequence().len() + 1;
    let upper = interval.upper_set(z);
    let mut states: Vec<Vec<QPoly>> = vec![Vec::new(); size];
    states[interval.bottom()] = vec![QPoly::zero(); slots];
    states[interval.bottom()][0] = QPoly::one();

    let mut rows = Vec::new();
    for x in interval.members() {
        let here = std::mem::take(&mut states[x]);
        if upper.contains(x) {
            rows.push((x, here.into_iter().sum()));
            continue;
        }
        if here.is_empty() {
            continue;
        }
        for (slot, poly) in here.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let extended = poly.shift(1);
            for e in interval.out_edges(x) {
                let next = order.position(e.label) + 1;
                if next > slot {
                    let target = &mut states[e.target];
                    if target.is_empty() {
                        *target = vec![QPoly::zero(); slots];
                    }
                    target[next] += &extended;
                }
            }
        }
    }
    rows
}
