//! Co-simple intervals, hypercubes spanned by antichains, double hypercubes
//! `DH(z,z')`, and the increasing-path lemma behind their symmetry.
//!
//! A hypercube of `ℋ^z` has its top at `p`, is spanned by in-edges of `p`
//! whose sources are pairwise incomparable, and has bottom `θ(∅) = u`.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hcd::{
    enumerate_hcds_idx, for_each_antichain, is_amazing_idx, join_idx, rtilde_idx, shortcuts_idx,
    standard_hcds_idx, unique_cube, EdgeSet, HypercubeEmbedding,
};
use crate::interval::Interval;
use crate::multiset::DegreeMultiset;
use crate::perm::{Permutation, Reflection};
use crate::poly::QPoly;
use crate::report::{CheckKind, Record, Status};
use crate::rpoly::constrained_orders;

/// Roots `e_i − e_j` as integer rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl RootMatrix {
    pub fn from_reflections(n: usize, reflections: &[Reflection]) -> Self {
        Self {
            rows: reflections.iter().map(|t| t.root(n)).collect(),
        }
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in rank + 1..m.len() {
                for k in c + 1..cols {
                    m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
                }
                m[r][c] = 0;
            }
            prev = m[rank][c];
            rank += 1;
        }
        rank
    }
}

pub(crate) fn coatom_roots(iv: &Interval) -> RootMatrix {
    RootMatrix::from_reflections(iv.n(), &iv.coatom_labels_idx(iv.bottom(), iv.top()))
}

/// The roots labeling the lower covers of `v` in `[u,v]` are linearly
/// independent.
pub fn is_cosimple(iv: &Interval) -> bool {
    let roots = coatom_roots(iv);
    roots.rank() == roots.rows.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntichainHypercube {
    pub embedding: HypercubeEmbedding,
}

impl AntichainHypercube {
    pub fn rank(&self) -> usize {
        self.embedding.rank()
    }

    pub fn bottom(&self) -> Permutation {
        self.embedding.bottom()
    }

    pub fn top(&self) -> Permutation {
        self.embedding.top()
    }
}

/// `(rank, cube vertices, p)` for every member of `ℋ^z` of the view.
pub(crate) fn antichain_hypercubes_idx(iv: &Interval, z: usize) -> Vec<(usize, Vec<usize>, usize)> {
    let upper = iv.upper_set(z);
    let mut out = Vec::new();
    for p in upper.ones() {
        let sources: Vec<usize> = iv.in_edges(p).map(|e| e.source).collect();
        for_each_antichain(iv, &sources, &mut |chosen| {
            if let Some(theta) = unique_cube(iv, p, chosen) {
                let meets_only_p = theta[..theta.len() - 1].iter().all(|&x| !upper.contains(x));
                if theta[0] == iv.bottom() && meets_only_p {
                    out.push((chosen.len(), theta, p));
                }
            }
            true
        });
    }
    out
}

/// `ℋ^z_{[u,v]}`: pairs `(ℋ, p)` with `p ∈ [z,v]`, `ℋ` a hypercube in `[u,v]`
/// with bottom `u`, spanned by in-edges of `p` with incomparable sources, and
/// `ℋ ∩ [z,v] = {p}`. The rank-0 cube `{p}` qualifies only when `p = u`.
pub fn antichain_hypercubes(
    iv: &Interval,
    z: &Permutation,
) -> Result<Vec<(AntichainHypercube, Permutation)>> {
    let zi = iv.idx(z)?;
    Ok(antichain_hypercubes_idx(iv, zi)
        .into_iter()
        .map(|(_, theta, p)| {
            let k = theta.len().trailing_zeros() as usize;
            let full = theta.len() - 1;
            let sources = (0..k)
                .map(|bit| iv.perm(theta[full ^ (1 << bit)]))
                .collect();
            let cube = AntichainHypercube {
                embedding: HypercubeEmbedding {
                    edges: EdgeSet::new(iv.perm(p), sources),
                    assignment: theta.into_iter().map(|x| iv.perm(x)).collect(),
                },
            };
            (cube, iv.perm(p))
        })
        .collect())
}

pub(crate) fn dh_multiset_idx(iv: &Interval, z: usize, z2: usize) -> Result<DegreeMultiset> {
    let mut pairs = Vec::new();
    for (r1, _, p) in antichain_hypercubes_idx(iv, z) {
        let j = join_idx(iv, z2, p).ok_or(Error::MissingJoin {
            z: iv.perm(z2),
            x: iv.perm(p),
        })?;
        for (r2, _, b) in antichain_hypercubes_idx(&iv.sub(p), j) {
            pairs.push((r1 + r2, iv.perm(b)));
        }
    }
    Ok(pairs.into_iter().collect())
}

/// `DH(z,z') = {(|ℋ₁| + |ℋ₂|, b) : (ℋ₁,p) ∈ ℋ^z_{[u,v]}, (ℋ₂,b) ∈ ℋ^{z'∨p}_{[p,v]}}`.
pub fn dh_multiset(iv: &Interval, z: &Permutation, z2: &Permutation) -> Result<DegreeMultiset> {
    dh_multiset_idx(iv, iv.idx(z)?, iv.idx(z2)?)
}

fn is_standard(iv: &Interval, z: usize) -> bool {
    standard_hcds_idx(iv).is_ok_and(|s| s.iter().any(|(k, _)| *k == z))
}

pub(crate) fn dh_symmetry_idx(iv: &Interval, z: usize, z2: usize) -> Result<Record> {
    let record = Record::new(CheckKind::CosimpleDh, iv, Status::Skip)
        .with_kind("dh-symmetry")
        .with_pair(Some(iv.perm(z)), Some(iv.perm(z2)));
    if !is_cosimple(iv) || !is_amazing_idx(iv, z) || !is_amazing_idx(iv, z2) {
        return Ok(record.with_detail(json!({ "cosimple": is_cosimple(iv), "spanning": "top" })));
    }
    let dh = dh_multiset_idx(iv, z, z2)?;
    let dh_rev = dh_multiset_idx(iv, z2, z)?;
    let mut record = record.with_detail(json!({
        "dh": dh.to_string(),
        "dh_reversed": dh_rev.to_string(),
        "spanning": "top",
    }));
    record.status = if dh == dh_rev {
        Status::Pass
    } else if is_standard(iv, z) && is_standard(iv, z2) {
        Status::Fail
    } else {
        // strongness of the pair cannot be decided here
        Status::Finding
    };
    Ok(record)
}

/// `DH(z,z') = DH(z',z)` on a co-simple interval. A mismatch is a failure for
/// standard pairs and a finding otherwise. Non-co-simple intervals and
/// non-amazing inputs are skipped.
pub fn verify_dh_symmetry(iv: &Interval, z: &Permutation, z2: &Permutation) -> Result<Record> {
    dh_symmetry_idx(iv, iv.idx(z)?, iv.idx(z2)?)
}

/// DH symmetry for every pair of distinct amazing decompositions.
pub fn verify_dh_symmetry_all(iv: &Interval) -> Result<Record> {
    if !is_cosimple(iv) {
        return Ok(Record::new(CheckKind::CosimpleDh, iv, Status::Skip)
            .with_kind("dh-symmetry")
            .with_detail(json!({ "cosimple": false })));
    }
    let amazing = enumerate_hcds_idx(iv, true);
    let mut worst: Option<Record> = None;
    let mut pairs = 0usize;
    for (a, &z) in amazing.iter().enumerate() {
        for &z2 in &amazing[a + 1..] {
            pairs += 1;
            let r = dh_symmetry_idx(iv, z, z2)?;
            match (r.status, worst.as_ref().map(|w| w.status)) {
                (Status::Fail, Some(Status::Fail)) => {}
                (Status::Fail, _) | (Status::Finding, None) => worst = Some(r),
                _ => {}
            }
        }
    }
    Ok(worst.unwrap_or_else(|| {
        Record::new(CheckKind::CosimpleDh, iv, Status::Pass)
            .with_kind("dh-symmetry")
            .with_detail(json!({ "pairs": pairs, "spanning": "top" }))
    }))
}

pub(crate) fn hw_projection_idx(iv: &Interval, z: usize) -> Record {
    let cubes = antichain_hypercubes_idx(iv, z);
    let mut image: Vec<usize> = cubes.iter().map(|&(_, _, p)| p).collect();
    image.sort_unstable();
    let injective = image.windows(2).all(|w| w[0] != w[1]);
    image.dedup();
    let onto_shortcuts = image == shortcuts_idx(iv, z);
    let rank_is_distance = cubes
        .iter()
        .all(|&(r, _, p)| iv.dist(iv.bottom(), p) == Some(r as u32));
    let status = if injective && onto_shortcuts {
        Status::Pass
    } else {
        Status::Finding
    };
    Record::new(CheckKind::HwBijection, iv, status)
        .with_kind("hw-bijection")
        .with_pair(Some(iv.perm(z)), None)
        .with_detail(json!({
            "injective": injective,
            "image_is_shortcuts": onto_shortcuts,
            "rank_is_distance": rank_is_distance,
            "cubes": cubes.len(),
            "spanning": "top",
        }))
}

/// Whether `(ℋ,p) ↦ p` is a bijection from `ℋ^z` onto `W^z`. Failures are
/// findings.
pub fn verify_hw_projection(iv: &Interval, z: &Permutation) -> Result<Record> {
    let zi = iv.idx(z)?;
    if !is_amazing_idx(iv, zi) {
        return Ok(Record::new(CheckKind::HwBijection, iv, Status::Skip)
            .with_kind("hw-bijection")
            .with_pair(Some(*z), None));
    }
    Ok(hw_projection_idx(iv, zi))
}

pub fn verify_hw_projection_all(iv: &Interval) -> Result<Record> {
    let amazing = enumerate_hcds_idx(iv, true);
    for &z in &amazing {
        let r = hw_projection_idx(iv, z);
        if r.status != Status::Pass {
            return Ok(r);
        }
    }
    Ok(Record::new(CheckKind::HwBijection, iv, Status::Pass)
        .with_kind("hw-bijection")
        .with_detail(json!({ "amazing": amazing.len(), "spanning": "top" })))
}

/// How the ordering hypothesis of the increasing-path lemma is turned into
/// constraints on reflection orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintReading {
    /// Labels of coatom edges of `[u,v]` not among those of `[z,v]` precede
    /// coatom labels of `[z,v]`.
    Coatom,
    /// Labels of edges leaving `[u,v] \ [z,v]` precede labels of edges inside
    /// `[z,v]`.
    Edge,
}

impl std::str::FromStr for ConstraintReading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coatom" => Ok(ConstraintReading::Coatom),
            "edge" => Ok(ConstraintReading::Edge),
            _ => Err(Error::Config(format!("unknown constraint reading {s:?}"))),
        }
    }
}

pub(crate) fn lemma_constraints(
    iv: &Interval,
    z: usize,
    reading: ConstraintReading,
) -> Vec<(Reflection, Reflection)> {
    let (before, after): (Vec<Reflection>, Vec<Reflection>) = match reading {
        ConstraintReading::Coatom => {
            let inner = iv.coatom_labels_idx(z, iv.top());
            let outer = iv
                .coatom_labels_idx(iv.bottom(), iv.top())
                .into_iter()
                .filter(|t| !inner.contains(t))
                .collect();
            (outer, inner)
        }
        ConstraintReading::Edge => {
            let upper = iv.upper_set(z);
            let mut outer = Vec::new();
            let mut inner = Vec::new();
            for x in iv.members() {
                for e in iv.out_edges(x) {
                    if upper.contains(x) {
                        inner.push(e.label);
                    } else {
                        outer.push(e.label);
                    }
                }
            }
            for v in [&mut outer, &mut inner] {
                v.sort();
                v.dedup();
            }
            (outer, inner)
        }
    };
    let mut pairs = Vec::new();
    for &a in &before {
        for &b in &after {
            pairs.push((a, b));
        }
    }
    pairs
}

/// Checks the identity `Σ_{x ∈ [z,p]} a^x(q) R̃_{x,p} = R̃_{u,p}` for every `p`.
fn identity_holds(iv: &Interval, table: &[(usize, QPoly)]) -> bool {
    table.iter().all(|&(p, _)| {
        let lhs: QPoly = table
            .iter()
            .filter(|&&(x, _)| iv.leq_idx(x, p))
            .map(|(x, a)| a * rtilde_idx(iv, *x, p))
            .sum();
        lhs == *rtilde_idx(iv, iv.bottom(), p)
    })
}

/// All reflection orders satisfying the constraints give the same increasing
/// path tables `a[p][k]`, and each satisfies the concatenation identity.
/// Skipped when the interval is not co-simple, `[z,v]` is not diamond
/// complete, or no order satisfies the constraints.
pub fn verify_lemma_incpaths(
    iv: &Interval,
    z: &Permutation,
    reading: ConstraintReading,
    limit: usize,
) -> Result<Record> {
    Ok(lemma_idx(iv, iv.idx(z)?, reading, limit))
}

pub(crate) fn lemma_idx(
    iv: &Interval,
    z: usize,
    reading: ConstraintReading,
    limit: usize,
) -> Record {
    let record = Record::new(CheckKind::LemmaPaths, iv, Status::Skip)
        .with_kind("lemma-paths")
        .with_pair(Some(iv.perm(z)), None);
    if !is_cosimple(iv) || !iv.diamond_complete_idx(z) {
        return record.with_detail(json!({
            "cosimple": is_cosimple(iv),
            "diamond_complete": iv.diamond_complete_idx(z),
        }));
    }
    let constraints = lemma_constraints(iv, z, reading);
    let orders = constrained_orders(iv.n(), &constraints, limit);
    if orders.is_empty() {
        return record.with_detail(json!({ "orders": 0, "constraints": constraints.len() }));
    }
    let tables: Vec<Vec<(usize, QPoly)>> = orders
        .iter()
        .map(|o| crate::rpoly::path_counts_idx(iv, z, o))
        .collect();
    let identical = tables.windows(2).all(|w| w[0] == w[1]);
    let identity = tables.iter().all(|t| identity_holds(iv, t));
    let mut record = record.with_detail(json!({
        "orders": orders.len(),
        "constraints": constraints.len(),
        "identical": identical,
        "identity": identity,
    }));
    record.status = if identical && identity {
        Status::Pass
    } else {
        Status::Fail
    };
    record
}

/// The lemma for every standard decomposition of the interval.
pub fn verify_lemma_all(iv: &Interval, reading: ConstraintReading, limit: usize) -> Result<Record> {
    let Ok(standard) = standard_hcds_idx(iv) else {
        return Ok(Record::new(CheckKind::LemmaPaths, iv, Status::Skip).with_kind("lemma-paths"));
    };
    let mut checked = 0usize;
    for (z, _) in standard {
        let r = lemma_idx(iv, z, reading, limit);
        match r.status {
            Status::Fail => return Ok(r),
            Status::Pass => checked += 1,
            _ => {}
        }
    }
    let status = if checked > 0 {
        Status::Pass
    } else {
        Status::Skip
    };
    Ok(Record::new(CheckKind::LemmaPaths, iv, status)
        .with_kind("lemma-paths")
        .with_detail(json!({ "checked": checked })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn s3() -> Interval {
        Interval::new(p("123"), p("321")).unwrap()
    }

    /// Rank of a set of roots `e_i − e_j` = vertices minus components of the
    /// graph with those edges (ignoring isolated vertices).
    fn forest_rank(n: usize, ts: &[Reflection]) -> usize {
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            if parent[x] == x {
                x
            } else {
                let r = find(parent, parent[x]);
                parent[x] = r;
                r
            }
        }
        let mut rank = 0;
        for t in ts {
            let (a, b) = (find(&mut parent, t.i()), find(&mut parent, t.j()));
            if a != b {
                parent[a] = b;
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn rank_matches_graph_forest() {
        for n in 2..=5 {
            let all = Reflection::all(n);
            for mask in 0u32..(1 << all.len()).min(1 << 10) {
                let chosen: Vec<Reflection> = (0..all.len())
                    .filter(|&k| mask & (1 << k) != 0)
                    .map(|k| all[k])
                    .collect();
                assert_eq!(
                    RootMatrix::from_reflections(n, &chosen).rank(),
                    forest_rank(n, &chosen)
                );
            }
        }
    }

    #[test]
    fn cosimple_examples() {
        assert!(is_cosimple(&s3()));
        for u in Permutation::all(4) {
            let iv = Interval::new(u, Permutation::longest(4)).unwrap();
            assert!(is_cosimple(&iv), "[{u},4321]");
        }
        let roots = RootMatrix::from_reflections(3, &Reflection::all(3));
        assert_eq!(roots.rank(), 2);
    }

    #[test]
    fn antichain_hypercube_examples() {
        let i = s3();
        let at_u = antichain_hypercubes(&i, &p("123")).unwrap();
        assert_eq!(at_u.len(), 1);
        assert_eq!(at_u[0].0.rank(), 0);
        assert_eq!(at_u[0].1, p("123"));

        let cubes = antichain_hypercubes(&i, &p("231")).unwrap();
        assert_eq!(cubes.len(), 2);
        let (c231, p231) = &cubes[0];
        assert_eq!(*p231, p("231"));
        assert_eq!(c231.rank(), 2);
        let mut verts = c231.embedding.vertices().to_vec();
        verts.sort();
        assert_eq!(verts, vec![p("123"), p("132"), p("213"), p("231")]);
        let (c321, p321) = &cubes[1];
        assert_eq!(*p321, p("321"));
        assert_eq!(c321.rank(), 1);
        assert_eq!(c321.embedding.vertices(), &[p("123"), p("321")]);
    }

    #[test]
    fn dh_examples() {
        let i = s3();
        assert_eq!(
            dh_multiset(&i, &p("123"), &p("123")).unwrap().to_string(),
            "{(0,123)}"
        );
        let dh = dh_multiset(&i, &p("231"), &p("312")).unwrap();
        assert_eq!(dh.to_string(), "{(1,321), (3,321)}");
        assert_eq!(
            dh,
            crate::doubles::ds_multiset(&i, &p("231"), &p("312")).unwrap()
        );
        let r = verify_dh_symmetry(&i, &p("231"), &p("312")).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.kind.as_deref(), Some("dh-symmetry"));
        assert_eq!(
            verify_dh_symmetry(&i, &p("231"), &p("231")).unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn hw_examples() {
        let i = s3();
        assert_eq!(
            verify_hw_projection(&i, &p("123")).unwrap().status,
            Status::Pass
        );
        let r = verify_hw_projection(&i, &p("231")).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.detail.unwrap()["rank_is_distance"], json!(true));
    }

    #[test]
    fn lemma_examples() {
        let i = s3();
        let z = i.idx(&p("231")).unwrap();
        let cons = lemma_constraints(&i, z, ConstraintReading::Coatom);
        assert_eq!(cons, vec![(Reflection::new(2, 3), Reflection::new(1, 2))]);
        let r =
            verify_lemma_incpaths(&i, &p("231"), ConstraintReading::Coatom, usize::MAX).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.detail.unwrap()["orders"], json!(1));

        // z = v: no constraints, every order gives the R̃ coefficients
        let r =
            verify_lemma_incpaths(&i, &p("321"), ConstraintReading::Coatom, usize::MAX).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.detail.unwrap()["orders"], json!(2));
    }
}
