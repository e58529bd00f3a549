//! Hypercubes in the Bruhat graph, upper hypercube decompositions, joins,
//! shortcuts and R-elements.
//!
//! Hypercube vertices are searched inside the interval under consideration,
//! and the inflow set `E^p` only contains edges whose source lies in the
//! interval. Every query is about some `[x,v]` inside one ambient interval
//! and is memoized on the ambient tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::{Permutation, Reflection};
use crate::poly::QPoly;

/// Edges of the Bruhat graph sharing the target `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    pub target: Permutation,
    pub sources: Vec<Permutation>,
}

impl EdgeSet {
    pub fn new(target: Permutation, sources: Vec<Permutation>) -> Self {
        Self { target, sources }
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn labels(&self) -> Vec<Reflection> {
        self.sources
            .iter()
            .map(|s| {
                s.right_reflection_to(&self.target)
                    .expect("edge endpoints differ by a reflection")
            })
            .collect()
    }
}

/// The embedding `θ` of the Boolean algebra on an edge set `E` with top `p`.
/// `assignment[mask]` is `θ` of the subset of `E` selected by the bits of
/// `mask` (bit `k` = `sources[k]`'s edge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeEmbedding {
    pub edges: EdgeSet,
    pub assignment: Vec<Permutation>,
}

impl HypercubeEmbedding {
    pub fn rank(&self) -> usize {
        self.edges.len()
    }

    pub fn top(&self) -> Permutation {
        *self.assignment.last().expect("non-empty cube")
    }

    /// `θ(∅)`.
    pub fn bottom(&self) -> Permutation {
        self.assignment[0]
    }

    /// The image of `θ`, in assignment order.
    pub fn vertices(&self) -> &[Permutation] {
        &self.assignment
    }
}

// ---- hypercube search -----------------------------------------------------

/// Complete assignments `θ` (indexed by subset mask) for the edges from
/// `sources` into `top`, stopping after `limit` of them.
pub(crate) fn cube_assignments(
    iv: &Interval,
    top: usize,
    sources: &[usize],
    limit: usize,
) -> Vec<Vec<usize>> {
    let k = sources.len();
    let full = (1usize << k) - 1;
    let mut theta = vec![usize::MAX; 1 << k];
    let mut used = vec![false; iv.ambient_size()];
    theta[full] = top;
    used[top] = true;
    for (bit, &s) in sources.iter().enumerate() {
        if used[s] {
            return Vec::new();
        }
        theta[full ^ (1 << bit)] = s;
        used[s] = true;
    }
    // remaining masks by decreasing size so every superset is fixed first
    let mut free: Vec<usize> = (0..full)
        .filter(|&m| (m.count_ones() as usize) + 1 < k)
        .collect();
    free.sort_by_key(|&m| std::cmp::Reverse(m.count_ones()));
    let mut search = CubeSearch {
        iv,
        k,
        theta,
        used,
        free,
        limit,
        found: Vec::new(),
    };
    search.fill(0);
    search.found
}

struct CubeSearch<'a> {
    iv: &'a Interval,
    k: usize,
    theta: Vec<usize>,
    used: Vec<bool>,
    free: Vec<usize>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl CubeSearch<'_> {
    fn fill(&mut self, at: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if at == self.free.len() {
            self.found.push(self.theta.clone());
            return;
        }
        let mask = self.free[at];
        let uppers: Vec<usize> = (0..self.k)
            .filter(|&b| mask & (1 << b) == 0)
            .map(|b| self.theta[mask | (1 << b)])
            .collect();
        let candidates: Vec<usize> = self
            .iv
            .in_edges(uppers[0])
            .map(|e| e.source)
            .filter(|&c| !self.used[c] && uppers[1..].iter().all(|&w| self.iv.has_edge(c, w)))
            .collect();
        for c in candidates {
            self.theta[mask] = c;
            self.used[c] = true;
            self.fill(at + 1);
            self.used[c] = false;
            self.theta[mask] = usize::MAX;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// The unique assignment, if exactly one exists.
pub(crate) fn unique_cube(iv: &Interval, top: usize, sources: &[usize]) -> Option<Vec<usize>> {
    let mut found = cube_assignments(iv, top, sources, 2);
    (found.len() == 1).then(|| found.pop().unwrap())
}

/// Calls `f` on every subset of `items` whose members are pairwise
/// Bruhat-incomparable, including the empty set.
pub(crate) fn for_each_antichain(
    iv: &Interval,
    items: &[usize],
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    fn go(
        iv: &Interval,
        items: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if !f(chosen) {
            return false;
        }
        for k in start..items.len() {
            let c = items[k];
            if chosen
                .iter()
                .all(|&a| !iv.leq_idx(a, c) && !iv.leq_idx(c, a))
            {
                chosen.push(c);
                let keep_going = go(iv, items, k + 1, chosen, f);
                chosen.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    go(iv, items, 0, &mut Vec::new(), f)
}

pub(crate) fn spans_cluster_idx(iv: &Interval, top: usize, sources: &[usize]) -> bool {
    for_each_antichain(iv, sources, &mut |chosen| {
        chosen.len() < 2 || unique_cube(iv, top, chosen).is_some()
    })
}

pub(crate) fn inflow_idx(iv: &Interval, z: usize, p: usize) -> Vec<usize> {
    let upper = iv.upper_set(z);
    iv.in_edges(p)
        .map(|e| e.source)
        .filter(|&x| !upper.contains(x))
        .collect()
}

pub(crate) fn is_upper_hcd_idx(iv: &Interval, z: usize) -> bool {
    *iv.data().memo.upper_hcd.get_or_init(iv.bottom(), z, || {
        iv.diamond_complete_idx(z)
            && iv
                .upper_set(z)
                .ones()
                .all(|p| spans_cluster_idx(iv, p, &inflow_idx(iv, z, p)))
    })
}

pub(crate) fn join_idx(iv: &Interval, z: usize, x: usize) -> Option<usize> {
    let mut both = iv.upper_set(z).clone();
    both.intersect_with(iv.upper_set(x));
    let first = both.ones().next()?;
    both.ones().all(|y| iv.leq_idx(first, y)).then_some(first)
}

pub(crate) fn is_amazing_idx(iv: &Interval, z: usize) -> bool {
    *iv.data().memo.amazing.get_or_init(iv.bottom(), z, || {
        iv.members().all(|x| match join_idx(iv, z, x) {
            Some(j) => is_upper_hcd_idx(&iv.sub(x), j),
            None => false,
        })
    })
}

/// Shortcuts of `[bottom,v]` with respect to `z`, sorted. A geodesic from the
/// bottom to `p` passes through `y` iff `d(b,y) + d(y,p) = d(b,p)`, so `p` is a
/// shortcut iff no `y ∈ [z,v] \ {p}` satisfies that equation.
pub(crate) fn shortcuts_idx(iv: &Interval, z: usize) -> &[usize] {
    iv.data().memo.shortcuts.get_or_init(iv.bottom(), z, || {
        let b = iv.bottom();
        let upper = iv.upper_set(z);
        upper
            .ones()
            .filter(|&p| {
                let d = iv.dist(b, p).expect("p is in the interval");
                !upper.ones().any(|y| {
                    y != p
                        && matches!(
                            (iv.dist(b, y), iv.dist(y, p)),
                            (Some(d1), Some(d2)) if d1 + d2 == d
                        )
                })
            })
            .collect()
    })
}

/// Shortcuts by enumerating every geodesic.
pub(crate) fn shortcuts_by_geodesics_idx(iv: &Interval, z: usize) -> Vec<usize> {
    let upper = iv.upper_set(z);
    upper
        .ones()
        .filter(|&p| {
            iv.geodesics_idx(iv.bottom(), p)
                .iter()
                .all(|walk| walk[..walk.len() - 1].iter().all(|&x| !upper.contains(x)))
        })
        .collect()
}

/// Shortcuts via the cover criterion: `d(u,p) < d(u,x)` for every `x ∈ [z,p]`
/// with `d(x,p) = 1`.
pub(crate) fn shortcuts_by_cover_distance_idx(iv: &Interval, z: usize) -> Vec<usize> {
    let b = iv.bottom();
    let upper = iv.upper_set(z);
    upper
        .ones()
        .filter(|&p| {
            let d = iv.dist(b, p).unwrap();
            iv.in_edges(p)
                .map(|e| e.source)
                .filter(|&x| upper.contains(x))
                .all(|x| d < iv.dist(b, x).unwrap())
        })
        .collect()
}

/// `R̃_{x,y}` for ambient indices, memoized on the interval.
pub(crate) fn rtilde_idx(iv: &Interval, x: usize, y: usize) -> &QPoly {
    iv.data()
        .memo
        .rtilde
        .get_or_init(x, y, || iv.rtilde_cache().rtilde(&iv.perm(x), &iv.perm(y)))
}

pub(crate) fn rtilde_z_idx(iv: &Interval, z: usize) -> QPoly {
    let b = iv.bottom();
    let top = iv.top();
    shortcuts_idx(iv, z)
        .iter()
        .map(|&p| rtilde_idx(iv, p, top).shift(iv.dist(b, p).unwrap() as usize))
        .sum()
}

pub(crate) fn is_r_element_idx(iv: &Interval, z: usize) -> bool {
    *iv.data().memo.r_element.get_or_init(iv.bottom(), z, || {
        rtilde_z_idx(iv, z) == *rtilde_idx(iv, iv.bottom(), iv.top())
    })
}

pub(crate) fn is_amazing_r_element_idx(iv: &Interval, z: usize) -> bool {
    is_amazing_idx(iv, z)
        && iv.members().all(|x| match join_idx(iv, z, x) {
            Some(j) => is_r_element_idx(&iv.sub(x), j),
            None => false,
        })
}

pub(crate) fn enumerate_hcds_idx(iv: &Interval, amazing_only: bool) -> Vec<usize> {
    iv.members()
        .filter(|&z| is_upper_hcd_idx(iv, z) && (!amazing_only || is_amazing_idx(iv, z)))
        .collect()
}

// ---- public, permutation-level API ----------------------------------------

/// The embedding `θ` for `E`, if exactly one exists with all vertices in the
/// interval.
pub fn spans_hypercube(iv: &Interval, edges: &EdgeSet) -> Result<Option<HypercubeEmbedding>> {
    let (top, sources) = edge_set_indices(iv, edges)?;
    Ok(
        unique_cube(iv, top, &sources).map(|theta| HypercubeEmbedding {
            edges: edges.clone(),
            assignment: theta.into_iter().map(|k| iv.perm(k)).collect(),
        }),
    )
}

/// Number of valid assignments `θ` for `E`, counted up to `limit`.
pub fn count_hypercube_embeddings(iv: &Interval, edges: &EdgeSet, limit: usize) -> Result<usize> {
    let (top, sources) = edge_set_indices(iv, edges)?;
    Ok(cube_assignments(iv, top, &sources, limit).len())
}

/// Whether every subfamily of `E` with pairwise incomparable sources spans a
/// hypercube.
pub fn spans_cluster(iv: &Interval, edges: &EdgeSet) -> Result<bool> {
    let (top, sources) = edge_set_indices(iv, edges)?;
    Ok(spans_cluster_idx(iv, top, &sources))
}

fn edge_set_indices(iv: &Interval, edges: &EdgeSet) -> Result<(usize, Vec<usize>)> {
    let top = iv.idx(&edges.target)?;
    let sources = edges
        .sources
        .iter()
        .map(|s| {
            let k = iv.idx(s)?;
            if iv.has_edge(k, top) {
                Ok(k)
            } else {
                Err(Error::InvalidPermutation(format!(
                    "{s} → {} is not a Bruhat-graph edge",
                    edges.target
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((top, sources))
}

/// `E^p = { x → p : x ∈ [u,v] \ [z,v] }`.
pub fn inflow(iv: &Interval, z: &Permutation, p: &Permutation) -> Result<EdgeSet> {
    let (zi, pi) = (iv.idx(z)?, iv.idx(p)?);
    if !iv.leq_idx(zi, pi) {
        return Err(Error::NotInInterval(*p));
    }
    Ok(EdgeSet::new(
        *p,
        inflow_idx(iv, zi, pi)
            .into_iter()
            .map(|k| iv.perm(k))
            .collect(),
    ))
}

pub fn is_upper_hcd(iv: &Interval, z: &Permutation) -> Result<bool> {
    Ok(is_upper_hcd_idx(iv, iv.idx(z)?))
}

/// The four cosets whose Bruhat minima are the standard decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StandardKind {
    /// `W_{S∖{s_{n-1}}}·v`: the position of the value `n` is fixed.
    LeftDropLast,
    /// `W_{S∖{s_1}}·v`: the position of the value `1` is fixed.
    LeftDropFirst,
    /// `v·W_{S∖{s_{n-1}}}`: the last entry is fixed.
    RightDropLast,
    /// `v·W_{S∖{s_1}}`: the first entry is fixed.
    RightDropFirst,
}

impl StandardKind {
    pub const ALL: [StandardKind; 4] = [
        StandardKind::LeftDropLast,
        StandardKind::LeftDropFirst,
        StandardKind::RightDropLast,
        StandardKind::RightDropFirst,
    ];

    fn in_coset(self, x: &Permutation, v: &Permutation) -> bool {
        let n = v.n();
        match self {
            StandardKind::LeftDropLast => x.inverse().at(n) == v.inverse().at(n),
            StandardKind::LeftDropFirst => x.inverse().at(1) == v.inverse().at(1),
            StandardKind::RightDropLast => x.at(n) == v.at(n),
            StandardKind::RightDropFirst => x.at(1) == v.at(1),
        }
    }

    fn name(self) -> &'static str {
        match self {
            StandardKind::LeftDropLast => "left-drop-last",
            StandardKind::LeftDropFirst => "left-drop-first",
            StandardKind::RightDropLast => "right-drop-last",
            StandardKind::RightDropFirst => "right-drop-first",
        }
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardHcd {
    pub element: Permutation,
    pub kinds: Vec<StandardKind>,
}

pub(crate) fn standard_hcds_idx(iv: &Interval) -> Result<Vec<(usize, Vec<StandardKind>)>> {
    let v = iv.v();
    let mut out: Vec<(usize, Vec<StandardKind>)> = Vec::new();
    for kind in StandardKind::ALL {
        let coset: Vec<usize> = iv
            .members()
            .filter(|&k| kind.in_coset(&iv.perm(k), &v))
            .collect();
        let min = coset
            .iter()
            .copied()
            .find(|&m| coset.iter().all(|&y| iv.leq_idx(m, y)))
            .ok_or(Error::MissingMinimum {
                kind: kind.name(),
                u: iv.u(),
                v,
            })?;
        match out.iter_mut().find(|(e, _)| *e == min) {
            Some((_, kinds)) => kinds.push(kind),
            None => out.push((min, vec![kind])),
        }
    }
    out.sort_by_key(|(e, _)| *e);
    Ok(out)
}

/// The standard upper hypercube decompositions, deduplicated and tagged with
/// the cosets they come from.
pub fn standard_hcds(iv: &Interval) -> Result<Vec<StandardHcd>> {
    Ok(standard_hcds_idx(iv)?
        .into_iter()
        .map(|(k, kinds)| StandardHcd {
            element: iv.perm(k),
            kinds,
        })
        .collect())
}

/// `z ∨ x = min([z,v] ∩ [x,v])`, if the minimum exists.
pub fn join(iv: &Interval, z: &Permutation, x: &Permutation) -> Result<Option<Permutation>> {
    let (zi, xi) = (iv.idx(z)?, iv.idx(x)?);
    Ok(join_idx(iv, zi, xi).map(|k| iv.perm(k)))
}

pub fn is_amazing(iv: &Interval, z: &Permutation) -> Result<bool> {
    Ok(is_amazing_idx(iv, iv.idx(z)?))
}

/// Upper shortcuts `W^z`: elements `p ∈ [z,v]` all of whose geodesics from `u`
/// meet `[z,v]` only at `p`.
pub fn shortcuts(iv: &Interval, z: &Permutation) -> Result<Vec<Permutation>> {
    let zi = iv.idx(z)?;
    Ok(shortcuts_idx(iv, zi).iter().map(|&k| iv.perm(k)).collect())
}

/// Shortcuts computed by explicit geodesic enumeration.
pub fn shortcuts_by_geodesics(iv: &Interval, z: &Permutation) -> Result<Vec<Permutation>> {
    let zi = iv.idx(z)?;
    Ok(shortcuts_by_geodesics_idx(iv, zi)
        .into_iter()
        .map(|k| iv.perm(k))
        .collect())
}

/// Shortcuts by the cover-distance criterion; agrees with [`shortcuts`] when
/// `z` is an upper hypercube decomposition.
pub fn shortcuts_by_cover_distance(iv: &Interval, z: &Permutation) -> Result<Vec<Permutation>> {
    let zi = iv.idx(z)?;
    Ok(shortcuts_by_cover_distance_idx(iv, zi)
        .into_iter()
        .map(|k| iv.perm(k))
        .collect())
}

/// `R̃^z_{u,v} = Σ_{p ∈ W^z} q^{d(u,p)} R̃_{p,v}`.
pub fn rtilde_z(iv: &Interval, z: &Permutation) -> Result<QPoly> {
    Ok(rtilde_z_idx(iv, iv.idx(z)?))
}

/// `R̃_{u,v}` of the interval.
pub fn rtilde(iv: &Interval) -> QPoly {
    rtilde_idx(iv, iv.bottom(), iv.top()).clone()
}

pub fn is_r_element(iv: &Interval, z: &Permutation) -> Result<bool> {
    Ok(is_r_element_idx(iv, iv.idx(z)?))
}

pub fn is_amazing_r_element(iv: &Interval, z: &Permutation) -> Result<bool> {
    Ok(is_amazing_r_element_idx(iv, iv.idx(z)?))
}

pub fn enumerate_hcds(iv: &Interval, amazing_only: bool) -> Vec<Permutation> {
    enumerate_hcds_idx(iv, amazing_only)
        .into_iter()
        .map(|k| iv.perm(k))
        .collect()
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

    #[test]
    fn hypercube_examples() {
        let i = s3();
        let empty = spans_hypercube(&i, &EdgeSet::new(p("231"), vec![]))
            .unwrap()
            .unwrap();
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.vertices(), &[p("231")]);

        let square = spans_hypercube(&i, &EdgeSet::new(p("231"), vec![p("132"), p("213")]))
            .unwrap()
            .unwrap();
        assert_eq!(square.rank(), 2);
        assert_eq!(square.bottom(), p("123"));
        let mut verts = square.vertices().to_vec();
        verts.sort();
        assert_eq!(verts, vec![p("123"), p("132"), p("213"), p("231")]);

        let top = EdgeSet::new(p("321"), vec![p("231"), p("312")]);
        assert!(spans_hypercube(&i, &top).unwrap().is_none());
        assert_eq!(count_hypercube_embeddings(&i, &top, 10).unwrap(), 2);

        assert!(spans_hypercube(&i, &EdgeSet::new(p("321"), vec![p("132")])).is_err());
    }

    #[test]
    fn cluster_examples() {
        let i = s3();
        assert!(spans_cluster(&i, &EdgeSet::new(p("321"), vec![p("231")])).unwrap());
        assert!(spans_cluster(&i, &EdgeSet::new(p("321"), vec![p("123"), p("312")])).unwrap());
        assert!(spans_cluster(&i, &EdgeSet::new(p("231"), vec![p("132"), p("213")])).unwrap());
        assert!(!spans_cluster(&i, &EdgeSet::new(p("321"), vec![p("231"), p("312")])).unwrap());
    }

    #[test]
    fn inflow_examples() {
        let i = s3();
        for y in i.elements() {
            assert!(inflow(&i, &p("123"), &y).unwrap().is_empty());
        }
        assert_eq!(
            inflow(&i, &p("231"), &p("321")).unwrap().sources,
            vec![p("123"), p("312")]
        );
        assert_eq!(
            inflow(&i, &p("231"), &p("231")).unwrap().sources,
            vec![p("132"), p("213")]
        );
    }

    #[test]
    fn upper_hcd_examples() {
        let i = s3();
        assert!(is_upper_hcd(&i, &p("123")).unwrap());
        assert!(is_upper_hcd(&i, &p("231")).unwrap());
        assert!(is_upper_hcd(&i, &p("312")).unwrap());
        // E^v contains 231 → 321 and 312 → 321, which do not span a unique square
        assert!(!is_upper_hcd(&i, &p("321")).unwrap());
        // not diamond complete
        assert!(!is_upper_hcd(&i, &p("132")).unwrap());
        assert!(!is_upper_hcd(&i, &p("213")).unwrap());
    }

    #[test]
    fn standard_examples() {
        let i = s3();
        let std = standard_hcds(&i).unwrap();
        let elems: Vec<Permutation> = std.iter().map(|s| s.element).collect();
        assert_eq!(elems, vec![p("231"), p("312")]);
        assert_eq!(
            std[0].kinds,
            vec![StandardKind::LeftDropFirst, StandardKind::RightDropLast]
        );
        let point = Interval::new(p("321"), p("321")).unwrap();
        let std = standard_hcds(&point).unwrap();
        assert_eq!(std.len(), 1);
        assert_eq!(std[0].element, p("321"));
        assert_eq!(std[0].kinds.len(), 4);
    }

    #[test]
    fn join_examples() {
        let i = s3();
        for z in i.elements() {
            assert_eq!(join(&i, &z, &p("123")).unwrap(), Some(z));
        }
        assert_eq!(join(&i, &p("231"), &p("132")).unwrap(), Some(p("231")));
        assert_eq!(join(&i, &p("231"), &p("312")).unwrap(), Some(p("321")));
        // [132,321] ∩ [213,321] = {231, 312, 321} has two minimal elements
        assert_eq!(join(&i, &p("132"), &p("213")).unwrap(), None);
    }

    #[test]
    fn amazing_examples() {
        let i = s3();
        assert!(is_amazing(&i, &p("123")).unwrap());
        assert!(is_amazing(&i, &p("231")).unwrap());
        assert!(is_amazing(&i, &p("312")).unwrap());
        assert!(!is_amazing(&i, &p("132")).unwrap());
    }

    #[test]
    fn shortcut_examples() {
        let i = s3();
        assert_eq!(shortcuts(&i, &p("123")).unwrap(), vec![p("123")]);
        assert_eq!(shortcuts(&i, &p("231")).unwrap(), vec![p("231"), p("321")]);
        assert_eq!(shortcuts(&i, &p("321")).unwrap(), vec![p("321")]);
        for z in i.elements() {
            assert_eq!(
                shortcuts(&i, &z).unwrap(),
                shortcuts_by_geodesics(&i, &z).unwrap()
            );
        }
        assert_eq!(
            shortcuts_by_cover_distance(&i, &p("231")).unwrap(),
            vec![p("231"), p("321")]
        );
    }

    #[test]
    fn rtilde_z_examples() {
        let i = s3();
        assert_eq!(rtilde_z(&i, &p("123")).unwrap(), rtilde(&i));
        assert_eq!(rtilde_z(&i, &p("231")).unwrap().to_string(), "q^3+q");
        let point = Interval::new(p("321"), p("321")).unwrap();
        assert_eq!(rtilde_z(&point, &p("321")).unwrap(), QPoly::one());
    }

    #[test]
    fn r_element_examples() {
        let i = s3();
        assert!(is_r_element(&i, &p("123")).unwrap());
        assert!(is_r_element(&i, &p("231")).unwrap());
        for s in standard_hcds(&i).unwrap() {
            assert!(is_amazing_r_element(&i, &s.element).unwrap());
        }
    }

    #[test]
    fn enumerate_examples() {
        let point = Interval::new(p("321"), p("321")).unwrap();
        assert_eq!(enumerate_hcds(&point, false), vec![p("321")]);
        let i = s3();
        let all = enumerate_hcds(&i, false);
        for z in ["123", "231", "312"] {
            assert!(all.contains(&p(z)));
        }
        let amazing = enumerate_hcds(&i, true);
        for s in standard_hcds(&i).unwrap() {
            assert!(amazing.contains(&s.element));
        }
    }

    #[test]
    fn subinterval_queries_use_the_smaller_interval() {
        let i = s3();
        let sub = i.subinterval(&p("231")).unwrap();
        assert_eq!(shortcuts(&sub, &p("321")).unwrap(), vec![p("321")]);
        assert_eq!(rtilde(&sub), QPoly::monomial(1));
        assert!(is_upper_hcd(&sub, &p("231")).unwrap());
        assert!(shortcuts(&sub, &p("123")).is_err());
    }
}
