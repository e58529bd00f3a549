use std::collections::BTreeMap;

use bruhat::doubles::{
    bologna_outcome, ds_multiset, equivalence_classes, equivalence_classes_of, multiset_sum,
    product_outcome, ProductCase,
};
use bruhat::hcd::{
    count_hypercube_embeddings, enumerate_hcds, inflow, is_amazing, is_amazing_r_element,
    is_r_element, join, rtilde, shortcuts, shortcuts_by_cover_distance, shortcuts_by_geodesics,
    standard_hcds, EdgeSet,
};
use bruhat::sweep::comparable_pairs;
use bruhat::{DegreeMultiset, Interval, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn intervals(n: usize) -> Vec<Interval> {
    comparable_pairs(n)
        .into_iter()
        .map(|(u, v)| Interval::new(u, v).unwrap())
        .collect()
}

fn sorted(mut xs: Vec<Permutation>) -> Vec<Permutation> {
    xs.sort();
    xs
}

fn edge_map(iv: &Interval) -> BTreeMap<(Permutation, Permutation), ()> {
    iv.edges()
        .into_iter()
        .map(|(a, b, _)| ((a, b), ()))
        .collect()
}

/// Number of injective maps `θ` from subsets of `sources` into the interval
/// with `θ(full) = top`, `θ(full ∖ {k}) = sources[k]`, and an edge
/// `θ(S) → θ(S ∪ {k})` for every `S` and `k ∉ S`; plain exhaustive search.
fn brute_cube_count(iv: &Interval, top: Permutation, sources: &[Permutation]) -> usize {
    let k = sources.len();
    let full = (1usize << k) - 1;
    let edges = edge_map(iv);
    let elems = iv.elements();
    let free: Vec<usize> = (0..full)
        .filter(|m| m.count_ones() as usize + 1 < k)
        .collect();
    let mut theta = vec![None; 1 << k];
    theta[full] = Some(top);
    for (b, s) in sources.iter().enumerate() {
        theta[full ^ (1 << b)] = Some(*s);
    }
    fn go(
        at: usize,
        free: &[usize],
        theta: &mut Vec<Option<Permutation>>,
        elems: &[Permutation],
        edges: &BTreeMap<(Permutation, Permutation), ()>,
        k: usize,
    ) -> usize {
        if at == free.len() {
            let vals: Vec<Permutation> = theta.iter().map(|t| t.unwrap()).collect();
            let mut sorted = vals.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != vals.len() {
                return 0;
            }
            for m in 0..vals.len() {
                for b in 0..k {
                    if m & (1 << b) == 0 && !edges.contains_key(&(vals[m], vals[m | (1 << b)])) {
                        return 0;
                    }
                }
            }
            return 1;
        }
        let mut total = 0;
        for &e in elems {
            theta[free[at]] = Some(e);
            total += go(at + 1, free, theta, elems, edges, k);
        }
        theta[free[at]] = None;
        total
    }
    go(0, &free, &mut theta, &elems, &edges, k)
}

#[test]
fn edges_have_odd_length_jumps_and_reflection_labels() {
    for iv in intervals(4) {
        for (a, b, t) in iv.edges() {
            assert!(iv.contains(&a) && iv.contains(&b));
            assert!(b.length() > a.length());
            assert_eq!((b.length() - a.length()) % 2, 1);
            assert_eq!(a.compose(&t.as_permutation(4)).unwrap(), b);
        }
    }
}

#[test]
fn hypercube_counts_match_exhaustive_search() {
    let iv = Interval::new(Permutation::identity(4), Permutation::longest(4)).unwrap();
    let mut checked = 0;
    for p in iv.elements() {
        let into: Vec<Permutation> = iv
            .edges()
            .into_iter()
            .filter(|e| e.1 == p)
            .map(|e| e.0)
            .collect();
        for mask in 1u32..(1 << into.len()) {
            let chosen: Vec<Permutation> = (0..into.len())
                .filter(|&k| mask & (1 << k) != 0)
                .map(|k| into[k])
                .collect();
            if chosen.len() > 3 {
                continue;
            }
            let expected = brute_cube_count(&iv, p, &chosen);
            let got = count_hypercube_embeddings(&iv, &EdgeSet::new(p, chosen.clone()), usize::MAX)
                .unwrap();
            assert_eq!(got, expected, "p={p} sources={chosen:?}");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn shortcut_routes_agree() {
    for iv in intervals(4) {
        for z in iv.elements() {
            let primary = shortcuts(&iv, &z).unwrap();
            assert_eq!(
                primary,
                shortcuts_by_geodesics(&iv, &z).unwrap(),
                "{iv:?} z={z}"
            );
        }
        for z in enumerate_hcds(&iv, false) {
            let primary = shortcuts(&iv, &z).unwrap();
            assert_eq!(
                primary,
                shortcuts_by_cover_distance(&iv, &z).unwrap(),
                "{iv:?} z={z}"
            );
        }
    }
}

#[test]
fn bottom_is_always_an_amazing_r_element() {
    for iv in intervals(4) {
        let u = iv.u();
        assert!(is_amazing(&iv, &u).unwrap());
        assert!(is_amazing_r_element(&iv, &u).unwrap());
        assert_eq!(shortcuts(&iv, &u).unwrap(), vec![u]);
        assert!(inflow(&iv, &u, &iv.v()).unwrap().is_empty());
    }
}

#[test]
fn standard_decompositions_are_amazing_r_elements() {
    for iv in intervals(4) {
        for h in standard_hcds(&iv).unwrap() {
            assert!(
                is_amazing_r_element(&iv, &h.element).unwrap(),
                "{iv:?} {}",
                h.element
            );
        }
    }
}

fn brute_join(iv: &Interval, z: &Permutation, x: &Permutation) -> Option<Permutation> {
    let common: Vec<Permutation> = iv
        .elements()
        .into_iter()
        .filter(|y| z.bruhat_leq(y) && x.bruhat_leq(y))
        .collect();
    common
        .iter()
        .copied()
        .find(|m| common.iter().all(|y| m.bruhat_leq(y)))
}

/// DS from public shortcut sets, geodesic route, with joins found by search.
fn ds_oracle(iv: &Interval, z: &Permutation, z2: &Permutation) -> DegreeMultiset {
    let mut pairs = Vec::new();
    for p in shortcuts_by_geodesics(iv, z).unwrap() {
        let j = brute_join(iv, z2, &p).expect("amazing inputs have joins");
        let sub = Interval::new(p, iv.v()).unwrap();
        for b in shortcuts_by_geodesics(&sub, &j).unwrap() {
            let d =
                iv.distance(&iv.u(), &p).unwrap().unwrap() + iv.distance(&p, &b).unwrap().unwrap();
            pairs.push((d as usize, b));
        }
    }
    pairs.into_iter().collect()
}

#[test]
fn joins_and_ds_match_independent_recomputation() {
    for iv in intervals(4) {
        for z in iv.elements() {
            for x in iv.elements() {
                assert_eq!(join(&iv, &z, &x).unwrap(), brute_join(&iv, &z, &x));
            }
        }
        let amazing = enumerate_hcds(&iv, true);
        for z in &amazing {
            for z2 in &amazing {
                assert_eq!(
                    ds_multiset(&iv, z, z2).unwrap(),
                    ds_oracle(&iv, z, z2),
                    "{iv:?} {z} {z2}"
                );
            }
        }
    }
}

#[test]
fn ds_sum_recovers_rtilde_under_the_first_two_hypotheses() {
    let mut applicable = 0;
    for iv in intervals(4) {
        let amazing = enumerate_hcds(&iv, true);
        for z in &amazing {
            for z2 in &amazing {
                let o = bologna_outcome(&iv, z, z2).unwrap();
                assert!(o.definitional_steps_hold());
                if o.hypotheses[0] && o.hypotheses[1] {
                    applicable += 1;
                    let ds = ds_multiset(&iv, z, z2).unwrap();
                    assert_eq!(
                        multiset_sum(&iv, &ds).unwrap(),
                        rtilde(&iv),
                        "{iv:?} {z} {z2}"
                    );
                }
            }
        }
    }
    assert!(applicable > 213);
}

#[test]
fn ds_of_bottom_with_itself() {
    for iv in intervals(4) {
        let u = iv.u();
        let ds = ds_multiset(&iv, &u, &u).unwrap();
        assert_eq!(ds.entries(), &[((0, u), 1)]);
    }
}

#[test]
fn equivalence_classes_ignore_enumeration_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for iv in intervals(4) {
        let canonical = equivalence_classes(&iv).unwrap();
        let mut amazing = enumerate_hcds(&iv, true);
        for _ in 0..2 {
            amazing.shuffle(&mut rng);
            assert_eq!(equivalence_classes_of(&iv, &amazing).unwrap(), canonical);
        }
    }
}

/// The inversion map `x ↦ x⁻¹` is a poset isomorphism `[u,v] → [u⁻¹,v⁻¹]`
/// that relabels edges, so every poset-level notion must be transported.
#[test]
fn notions_are_invariant_under_inversion_on_s3_and_s4() {
    for n in [3, 4] {
        for iv in intervals(n) {
            let inv = Interval::new(iv.u().inverse(), iv.v().inverse()).unwrap();
            let mut hcds: Vec<Permutation> = enumerate_hcds(&iv, false)
                .iter()
                .map(Permutation::inverse)
                .collect();
            hcds.sort();
            assert_eq!(hcds, sorted(enumerate_hcds(&inv, false)));
            let mut amazing: Vec<Permutation> = enumerate_hcds(&iv, true)
                .iter()
                .map(Permutation::inverse)
                .collect();
            amazing.sort();
            assert_eq!(amazing, sorted(enumerate_hcds(&inv, true)));
            for z in enumerate_hcds(&iv, false) {
                let mut w: Vec<Permutation> = shortcuts(&iv, &z)
                    .unwrap()
                    .iter()
                    .map(Permutation::inverse)
                    .collect();
                w.sort();
                assert_eq!(w, sorted(shortcuts(&inv, &z.inverse()).unwrap()));
                assert_eq!(
                    is_r_element(&iv, &z).unwrap(),
                    is_r_element(&inv, &z.inverse()).unwrap()
                );
            }
        }
    }
}

#[test]
fn direct_sums_are_componentwise_products() {
    for (u1, v1) in comparable_pairs(2) {
        for (u2, v2) in comparable_pairs(3) {
            let left = Interval::new(u1, v1).unwrap();
            let right = Interval::new(u2, v2).unwrap();
            let case = ProductCase {
                left: &left,
                right: &right,
                left_pair: (u1, u1),
                right_pair: (u2, u2),
            };
            let (product, o) = product_outcome(&case).unwrap();
            assert!(o.isomorphic, "{product:?}");
            assert_eq!(product.size(), left.size() * right.size());
            assert_eq!(rtilde(&product), &rtilde(&left) * &rtilde(&right));
        }
    }
}
