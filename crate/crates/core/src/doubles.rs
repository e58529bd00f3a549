//! Double shortcuts `DS(z,z')`, the equivalence relation they generate on
//! amazing decompositions, and the verification drivers built on them.

use std::collections::BTreeSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::hcd::{
    enumerate_hcds_idx, is_amazing_idx, is_amazing_r_element_idx, is_r_element_idx, join_idx,
    rtilde_idx, shortcuts, shortcuts_idx, standard_hcds_idx,
};
use crate::interval::Interval;
use crate::multiset::DegreeMultiset;
use crate::perm::Permutation;
use crate::poly::QPoly;
use crate::report::{verdict, CheckKind, Record, Status};

pub(crate) fn ds_multiset_idx(iv: &Interval, z: usize, z2: usize) -> Result<DegreeMultiset> {
    let base = iv.bottom();
    let mut pairs = Vec::new();
    for &p in shortcuts_idx(iv, z) {
        let j = join_idx(iv, z2, p).ok_or(Error::MissingJoin {
            z: iv.perm(z2),
            x: iv.perm(p),
        })?;
        let d_up = iv.dist(base, p).unwrap() as usize;
        let sub = iv.sub(p);
        for &b in shortcuts_idx(&sub, j) {
            pairs.push((d_up + iv.dist(p, b).unwrap() as usize, iv.perm(b)));
        }
    }
    Ok(pairs.into_iter().collect())
}

/// `DS(z,z') = {(d(u,p) + d(p,b), b) : p ∈ W^z_{[u,v]}, b ∈ W^{z'∨p}_{[p,v]}}`.
///
/// Fails with [`Error::MissingJoin`] when some `z' ∨ p` does not exist, which
/// cannot happen for amazing `z'`.
pub fn ds_multiset(iv: &Interval, z: &Permutation, z2: &Permutation) -> Result<DegreeMultiset> {
    ds_multiset_idx(iv, iv.idx(z)?, iv.idx(z2)?)
}

pub(crate) fn ds_symmetric_idx(iv: &Interval, z: usize, z2: usize) -> Result<bool> {
    Ok(z == z2 || ds_multiset_idx(iv, z, z2)? == ds_multiset_idx(iv, z2, z)?)
}

pub fn ds_symmetric(iv: &Interval, z: &Permutation, z2: &Permutation) -> Result<bool> {
    ds_symmetric_idx(iv, iv.idx(z)?, iv.idx(z2)?)
}

/// `Σ_{(a,b) ∈ M} q^a R̃_{b,v}`.
pub fn multiset_sum(iv: &Interval, multiset: &DegreeMultiset) -> Result<QPoly> {
    let top = iv.top();
    multiset
        .iter()
        .map(|(a, b)| Ok(rtilde_idx(iv, iv.idx(&b)?, top).shift(a)))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClasses {
    /// Each class sorted; classes ordered by their first element.
    pub classes: Vec<Vec<Permutation>>,
}

impl EquivalenceClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Connected components of the relation `z ∼ z'` iff `DS(z,z') = DS(z',z)` on
/// the given decompositions, which must all be amazing.
pub fn equivalence_classes_of(
    iv: &Interval,
    members: &[Permutation],
) -> Result<EquivalenceClasses> {
    let idx: Vec<usize> = members.iter().map(|z| iv.idx(z)).collect::<Result<_>>()?;
    let k = idx.len();
    let mut adjacent = vec![vec![false; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let related = ds_symmetric_idx(iv, idx[a], idx[b])?;
            adjacent[a][b] = related;
            adjacent[b][a] = related;
        }
    }
    let mut seen = vec![false; k];
    let mut classes = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut class = BTreeSet::new();
        while let Some(a) = stack.pop() {
            class.insert(iv.perm(idx[a]));
            for b in 0..k {
                if adjacent[a][b] && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        classes.push(class.into_iter().collect::<Vec<_>>());
    }
    classes.sort();
    Ok(EquivalenceClasses { classes })
}

/// Classes on all amazing upper hypercube decompositions, `u` included.
pub fn equivalence_classes(iv: &Interval) -> Result<EquivalenceClasses> {
    let amazing: Vec<Permutation> = enumerate_hcds_idx(iv, true)
        .into_iter()
        .map(|k| iv.perm(k))
        .collect();
    equivalence_classes_of(iv, &amazing)
}

/// Classes on the amazing decompositions other than `u`.
pub fn equivalence_classes_without_bottom(iv: &Interval) -> Result<EquivalenceClasses> {
    let amazing: Vec<Permutation> = enumerate_hcds_idx(iv, true)
        .into_iter()
        .filter(|&k| k != iv.bottom())
        .map(|k| iv.perm(k))
        .collect();
    equivalence_classes_of(iv, &amazing)
}

/// Every amazing decomposition is an R-element.
pub fn verify_congettura(iv: &Interval) -> Result<Record> {
    let amazing = enumerate_hcds_idx(iv, true);
    let witness = amazing.iter().copied().find(|&z| !is_r_element_idx(iv, z));
    let record = Record::new(
        CheckKind::Congettura,
        iv,
        verdict(CheckKind::Congettura, witness.is_none()),
    )
    .with_detail(json!({ "amazing": amazing.len() }));
    Ok(match witness {
        Some(z) => record.with_pair(Some(iv.perm(z)), None).with_detail(json!({
            "amazing": amazing.len(),
            "rtilde": rtilde_idx(iv, iv.bottom(), iv.top()).to_string(),
            "rtilde_z": crate::hcd::rtilde_z_idx(iv, z).to_string(),
        })),
        None => record,
    })
}

/// The relation has a single class. The detail also reports the class count
/// without `u` and whether each class holds an amazing R-element.
pub fn verify_em0(iv: &Interval) -> Result<Record> {
    let with_u = equivalence_classes(iv)?;
    let without_u = equivalence_classes_without_bottom(iv)?;
    let em = with_u.classes.iter().all(|class| {
        class.iter().any(|z| {
            is_amazing_r_element_idx(iv, iv.idx(z).expect("class members are in the interval"))
        })
    });
    let ok = with_u.len() == 1 && without_u.len() <= 1;
    let mut record =
        Record::new(CheckKind::Em0, iv, verdict(CheckKind::Em0, ok)).with_detail(json!({
            "classes": with_u.len(),
            "classes_without_u": without_u.len(),
            "em": em,
        }));
    if !ok {
        let witness = without_u.classes.get(1).or(with_u.classes.get(1));
        record = record.with_pair(with_u.classes.first().map(|c| c[0]), witness.map(|c| c[0]));
    }
    Ok(record)
}

/// `DS(z,z') = DS(z',z)` for every pair of amazing decompositions.
pub fn verify_strong_ds(iv: &Interval) -> Result<Record> {
    let amazing = enumerate_hcds_idx(iv, true);
    let mut pairs = 0usize;
    for (a, &z) in amazing.iter().enumerate() {
        for &z2 in &amazing[a + 1..] {
            pairs += 1;
            if !ds_symmetric_idx(iv, z, z2)? {
                return Ok(Record::new(CheckKind::StrongDs, iv, Status::Finding)
                    .with_pair(Some(iv.perm(z)), Some(iv.perm(z2)))
                    .with_detail(json!({
                        "ds": ds_multiset_idx(iv, z, z2)?.to_string(),
                        "ds_reversed": ds_multiset_idx(iv, z2, z)?.to_string(),
                    })));
            }
        }
    }
    Ok(Record::new(CheckKind::StrongDs, iv, Status::Pass).with_detail(json!({ "pairs": pairs })))
}

/// The evaluated hypotheses, equation chain, and conclusion of the
/// two-decomposition transfer theorem for one pair `(z, z')`.
#[derive(Clone, Debug)]
pub struct BolognaOutcome {
    /// (1) `z` is an amazing R-element; (2) `z'∨x` is an R-element of `[x,v]`
    /// for every `x ≠ u`; (3) `DS(z,z') = DS(z',z)`.
    pub hypotheses: [bool; 3],
    /// The seven expressions of the chain, from `R̃_{u,v}` through the nested
    /// double sums to `R̃^{z'}_{u,v}`.
    pub lines: Vec<QPoly>,
    /// `z'` is an R-element.
    pub conclusion: bool,
}

impl BolognaOutcome {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|&h| h)
    }

    pub fn chain_holds(&self) -> bool {
        self.lines.windows(2).all(|w| w[0] == w[1])
    }

    /// The steps that hold by definition of `DS`, whatever the hypotheses.
    pub fn definitional_steps_hold(&self) -> bool {
        self.lines[2] == self.lines[3] && self.lines[4] == self.lines[5]
    }

    pub fn status(&self) -> Status {
        if !self.definitional_steps_hold() {
            Status::Fail
        } else if self.hypotheses_hold() {
            if self.chain_holds() && self.conclusion {
                Status::Pass
            } else {
                Status::Fail
            }
        } else {
            Status::Skip
        }
    }
}

fn nested_double_sum(iv: &Interval, outer: usize, inner: usize) -> Result<QPoly> {
    let base = iv.bottom();
    let top = iv.top();
    let mut total = QPoly::zero();
    for &p in shortcuts_idx(iv, outer) {
        let j = join_idx(iv, inner, p).ok_or(Error::MissingJoin {
            z: iv.perm(inner),
            x: iv.perm(p),
        })?;
        let sub = iv.sub(p);
        let inner_sum: QPoly = shortcuts_idx(&sub, j)
            .iter()
            .map(|&b| rtilde_idx(iv, b, top).shift(iv.dist(p, b).unwrap() as usize))
            .sum();
        total += &inner_sum.shift(iv.dist(base, p).unwrap() as usize);
    }
    Ok(total)
}

pub(crate) fn bologna_outcome_idx(iv: &Interval, z: usize, z2: usize) -> Result<BolognaOutcome> {
    let base = iv.bottom();
    let h1 = is_amazing_r_element_idx(iv, z);
    let h2 = iv
        .members()
        .filter(|&x| x != base)
        .all(|x| join_idx(iv, z2, x).is_some_and(|j| is_r_element_idx(&iv.sub(x), j)));
    let ds = ds_multiset_idx(iv, z, z2)?;
    let ds_rev = ds_multiset_idx(iv, z2, z)?;
    let h3 = ds == ds_rev;
    let lines = vec![
        rtilde_idx(iv, base, iv.top()).clone(),
        crate::hcd::rtilde_z_idx(iv, z),
        nested_double_sum(iv, z, z2)?,
        multiset_sum(iv, &ds)?,
        multiset_sum(iv, &ds_rev)?,
        nested_double_sum(iv, z2, z)?,
        crate::hcd::rtilde_z_idx(iv, z2),
    ];
    Ok(BolognaOutcome {
        hypotheses: [h1, h2, h3],
        lines,
        conclusion: is_r_element_idx(iv, z2),
    })
}

/// Evaluates the transfer theorem for `(z, z')`, both of which must be
/// amazing.
pub fn bologna_outcome(iv: &Interval, z: &Permutation, z2: &Permutation) -> Result<BolognaOutcome> {
    let (zi, z2i) = (iv.idx(z)?, iv.idx(z2)?);
    if !is_amazing_idx(iv, zi) || !is_amazing_idx(iv, z2i) {
        return Err(Error::Config(format!(
            "{z} and {z2} must both be amazing decompositions"
        )));
    }
    bologna_outcome_idx(iv, zi, z2i)
}

pub fn verify_bologna(iv: &Interval, z: &Permutation, z2: &Permutation) -> Result<Record> {
    let outcome = bologna_outcome(iv, z, z2)?;
    Ok(bologna_record(iv, *z, *z2, &outcome))
}

pub(crate) fn bologna_record(
    iv: &Interval,
    z: Permutation,
    z2: Permutation,
    o: &BolognaOutcome,
) -> Record {
    Record::new(CheckKind::Bologna, iv, o.status())
        .with_pair(Some(z), Some(z2))
        .with_detail(json!({
            "hypotheses": o.hypotheses,
            "lines": o.lines.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "conclusion": o.conclusion,
        }))
}

/// Aggregated transfer-theorem check over all ordered pairs of amazing
/// decompositions of one interval.
pub fn verify_bologna_all(iv: &Interval) -> Result<Record> {
    let amazing = enumerate_hcds_idx(iv, true);
    let (mut applicable, mut pairs) = (0usize, 0usize);
    for &z in &amazing {
        for &z2 in &amazing {
            pairs += 1;
            let outcome = bologna_outcome_idx(iv, z, z2)?;
            match outcome.status() {
                Status::Fail => return Ok(bologna_record(iv, iv.perm(z), iv.perm(z2), &outcome)),
                Status::Pass => applicable += 1,
                _ => {}
            }
        }
    }
    Ok(Record::new(CheckKind::Bologna, iv, Status::Pass)
        .with_detail(json!({ "pairs": pairs, "hypotheses_held": applicable })))
}

/// Product of two intervals via direct sums, with decompositions given
/// componentwise.
pub struct ProductCase<'a> {
    pub left: &'a Interval,
    pub right: &'a Interval,
    /// `(z₁, z₁')` in the left factor.
    pub left_pair: (Permutation, Permutation),
    /// `(z₂, z₂')` in the right factor.
    pub right_pair: (Permutation, Permutation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductOutcome {
    /// The product interval is the componentwise product poset.
    pub isomorphic: bool,
    /// `z₁⊕z₂` and `z₁'⊕z₂'` are amazing in the product.
    pub amazing: bool,
    /// Shortcut membership splits componentwise (all four statements).
    pub bullets: bool,
    pub components_symmetric: bool,
    pub product_symmetric: bool,
}

impl ProductOutcome {
    pub fn status(&self) -> Status {
        let transfer = !self.components_symmetric || self.product_symmetric;
        if self.isomorphic && self.amazing && self.bullets && transfer {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

pub fn product_outcome(case: &ProductCase<'_>) -> Result<(Interval, ProductOutcome)> {
    let (left, right) = (case.left, case.right);
    let a = left.n();
    let b = right.n();
    let sum = |x: &Permutation, y: &Permutation| x.direct_sum(y);
    let product = Interval::with_cache(
        sum(&left.u(), &right.u())?,
        sum(&left.v(), &right.v())?,
        left.rtilde_cache().clone(),
    )?;
    let split = |x: &Permutation| -> Option<(Permutation, Permutation)> {
        Some((x.block(0, a)?, x.block(a, b)?))
    };

    let elems = product.elements();
    let mut isomorphic = elems.len() == left.size() * right.size();
    let parts: Vec<(Permutation, Permutation)> = elems.iter().filter_map(split).collect();
    isomorphic &= parts.len() == elems.len();
    if isomorphic {
        for (x, (x1, x2)) in elems.iter().zip(&parts) {
            isomorphic &= left.contains(x1) && right.contains(x2);
            for (y, (y1, y2)) in elems.iter().zip(&parts) {
                let whole = product.leq(x, y)?;
                let comp = x1.bruhat_leq(y1) && x2.bruhat_leq(y2);
                isomorphic &= whole == comp;
            }
        }
    }
    if !isomorphic {
        return Ok((
            product,
            ProductOutcome {
                isomorphic,
                amazing: false,
                bullets: false,
                components_symmetric: false,
                product_symmetric: false,
            },
        ));
    }

    let (z1, z1b) = case.left_pair;
    let (z2, z2b) = case.right_pair;
    let z = sum(&z1, &z2)?;
    let zb = sum(&z1b, &z2b)?;
    let amazing = crate::hcd::is_amazing(&product, &z)? && crate::hcd::is_amazing(&product, &zb)?;

    let mut bullets = true;
    for (first, (f1, f2)) in [(z, (z1, z2)), (zb, (z1b, z2b))] {
        // p ∈ W^z iff p₁ ∈ W^{z₁} and p₂ ∈ W^{z₂}
        let whole = shortcuts(&product, &first)?;
        let w1 = shortcuts(left, &f1)?;
        let w2 = shortcuts(right, &f2)?;
        for (x, (x1, x2)) in elems.iter().zip(&parts) {
            if !first.bruhat_leq(x) {
                continue;
            }
            bullets &= whole.contains(x) == (w1.contains(x1) && w2.contains(x2));
        }
    }
    for (other, (o1, o2)) in [(zb, (z1b, z2b)), (z, (z1, z2))] {
        // b ∈ W^{z'∨p}_{[p,v]} iff componentwise
        for (p, (p1, p2)) in elems.iter().zip(&parts) {
            let (Some(j), Some(j1), Some(j2)) = (
                crate::hcd::join(&product, &other, p)?,
                crate::hcd::join(left, &o1, p1)?,
                crate::hcd::join(right, &o2, p2)?,
            ) else {
                bullets = false;
                continue;
            };
            let whole = shortcuts(&product.subinterval(p)?, &j)?;
            let w1 = shortcuts(&left.subinterval(p1)?, &j1)?;
            let w2 = shortcuts(&right.subinterval(p2)?, &j2)?;
            for (x, (x1, x2)) in elems.iter().zip(&parts) {
                if !j.bruhat_leq(x) {
                    continue;
                }
                bullets &= whole.contains(x) == (w1.contains(x1) && w2.contains(x2));
            }
        }
    }

    let components_symmetric = ds_symmetric(left, &z1, &z1b)? && ds_symmetric(right, &z2, &z2b)?;
    let product_symmetric = amazing && ds_symmetric(&product, &z, &zb)?;
    Ok((
        product,
        ProductOutcome {
            isomorphic,
            amazing,
            bullets,
            components_symmetric,
            product_symmetric,
        },
    ))
}

pub fn verify_product(case: &ProductCase<'_>) -> Result<Record> {
    let (product, o) = product_outcome(case)?;
    let z = case.left_pair.0.direct_sum(&case.right_pair.0)?;
    let zb = case.left_pair.1.direct_sum(&case.right_pair.1)?;
    Ok(Record::new(CheckKind::Product, &product, o.status())
        .with_pair(Some(z), Some(zb))
        .with_detail(json!({
            "isomorphic": o.isomorphic,
            "amazing": o.amazing,
            "bullets": o.bullets,
            "components_symmetric": o.components_symmetric,
            "product_symmetric": o.product_symmetric,
        })))
}

/// Standard decompositions exist, are upper hypercube decompositions, are
/// amazing, and are amazing R-elements.
pub fn verify_standard(iv: &Interval) -> Result<Record> {
    let std = match standard_hcds_idx(iv) {
        Ok(s) => s,
        Err(Error::MissingMinimum { kind, .. }) => {
            return Ok(Record::new(CheckKind::StandardHcd, iv, Status::Fail)
                .with_detail(json!({ "missing_minimum": kind })));
        }
        Err(e) => return Err(e),
    };
    for (z, kinds) in &std {
        let hcd = crate::hcd::is_upper_hcd_idx(iv, *z);
        let amazing = hcd && is_amazing_idx(iv, *z);
        let r = amazing && is_amazing_r_element_idx(iv, *z);
        if !(hcd && amazing && r) {
            return Ok(Record::new(CheckKind::StandardHcd, iv, Status::Fail)
                .with_pair(Some(iv.perm(*z)), None)
                .with_detail(json!({
                    "kinds": kinds.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "upper_hcd": hcd,
                    "amazing": amazing,
                    "amazing_r_element": r,
                })));
        }
    }
    Ok(Record::new(CheckKind::StandardHcd, iv, Status::Pass)
        .with_detail(json!({ "standard": std.iter().map(|(z, _)| iv.perm(*z).to_string()).collect::<Vec<_>>() })))
}
