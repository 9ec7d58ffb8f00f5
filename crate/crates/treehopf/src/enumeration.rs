//! Exhaustive tree generation, counting recurrences, and the ⊙-product
//! with its indecomposable factorization.
//!
//! Trees of degree n are generated as lifted forests with n nodes:
//! multiset forests as non-decreasing component sequences, sequence
//! forests as compositions, heap forests as all parent arrays (each
//! node either starts a component or hangs under an earlier node).
//!
//! Index conventions: dimension series are indexed by degree (value at
//! d counts trees with d+1 nodes, so `values[0] = 1` by connectedness);
//! primitive and generator series (`p`, `g`) are indexed from degree 1.

use num::traits::{One, Zero};
use num::BigInt;
use serde_json::json;

use crate::error::Error;
use crate::family::{
    CanonicalForest, CanonicalTree, FamilyId, ForestRepr, Selector, StructureKind, Subtree,
    TreeRepr,
};
use crate::linking::LinkingMap;

/// All distinct canonical trees of the given degree, sorted.
pub fn enumerate_trees(family: &FamilyId, degree: usize) -> Vec<CanonicalTree> {
    let mut trees: Vec<CanonicalTree> = enumerate_forests(family, degree)
        .into_iter()
        .map(|f| f.lift_tree())
        .collect();
    trees.sort();
    trees
}

/// All distinct canonical forests with the given total node count,
/// sorted.
pub fn enumerate_forests(family: &FamilyId, total_nodes: usize) -> Vec<CanonicalForest> {
    let mut out = match family.structure() {
        StructureKind::Multiset => {
            let comps = components_by_size(family, total_nodes);
            let mut out = Vec::new();
            let mut acc = Vec::new();
            multiset_rec(family, &comps, total_nodes, None, &mut acc, &mut out);
            out
        }
        StructureKind::Sequence => {
            let comps = components_by_size(family, total_nodes);
            let mut out = Vec::new();
            let mut acc = Vec::new();
            sequence_rec(family, &comps, total_nodes, &mut acc, &mut out);
            out
        }
        StructureKind::Heap => heap_forests(family, total_nodes),
    };
    out.sort();
    out
}

/// Labeled-root components with exactly `nodes` nodes, per size up to
/// `max`; `lists[s]` is sorted.
fn components_by_size(family: &FamilyId, max: usize) -> Vec<Vec<Subtree>> {
    let mut lists: Vec<Vec<Subtree>> = vec![Vec::new()];
    for size in 1..=max {
        let mut list = Vec::new();
        for label in 1..=family.label_count() {
            for t in enumerate_trees(family, size - 1) {
                if let TreeRepr::Nested(children) = t.repr() {
                    list.push(Subtree {
                        label,
                        children: children.clone(),
                    });
                }
            }
        }
        list.sort();
        lists.push(list);
    }
    lists
}

fn multiset_rec(
    family: &FamilyId,
    comps: &[Vec<Subtree>],
    remaining: usize,
    min: Option<&Subtree>,
    acc: &mut Vec<Subtree>,
    out: &mut Vec<CanonicalForest>,
) {
    if remaining == 0 {
        out.push(CanonicalForest::from_parts(
            *family,
            ForestRepr::Nested(acc.clone()),
        ));
        return;
    }
    for size in 1..=remaining {
        for c in &comps[size] {
            if min.is_some_and(|m| c < m) {
                continue;
            }
            acc.push(c.clone());
            multiset_rec(family, comps, remaining - size, Some(c), acc, out);
            acc.pop();
        }
    }
}

fn sequence_rec(
    family: &FamilyId,
    comps: &[Vec<Subtree>],
    remaining: usize,
    acc: &mut Vec<Subtree>,
    out: &mut Vec<CanonicalForest>,
) {
    if remaining == 0 {
        out.push(CanonicalForest::from_parts(
            *family,
            ForestRepr::Nested(acc.clone()),
        ));
        return;
    }
    for size in 1..=remaining {
        for c in &comps[size] {
            acc.push(c.clone());
            sequence_rec(family, comps, remaining - size, acc, out);
            acc.pop();
        }
    }
}

fn heap_forests(family: &FamilyId, total_nodes: usize) -> Vec<CanonicalForest> {
    let m = family.label_count();
    let mut partial: Vec<(Vec<Option<usize>>, Vec<u32>)> = vec![(Vec::new(), Vec::new())];
    for i in 0..total_nodes {
        let mut next = Vec::with_capacity(partial.len() * (i + 1) * m as usize);
        for (parents, labels) in &partial {
            let mut choices: Vec<Option<usize>> = vec![None];
            choices.extend((0..i).map(Some));
            for parent in choices {
                for label in 1..=m {
                    let mut p = parents.clone();
                    p.push(parent);
                    let mut l = labels.clone();
                    l.push(label);
                    next.push((p, l));
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(parents, labels)| {
            CanonicalForest::from_parts(*family, ForestRepr::Heap { parents, labels })
        })
        .collect()
}

/// Exact binomial coefficient `C(a, k)` for `a >= 0`.
pub(crate) fn binomial(a: &BigInt, k: usize) -> BigInt {
    let mut numerator = BigInt::one();
    for i in 0..k {
        numerator *= a - BigInt::from(i);
    }
    let mut denominator = BigInt::one();
    for i in 1..=k {
        denominator *= BigInt::from(i);
    }
    numerator / denominator
}

/// `C(w + k - 1, k)`: multisets of size k from w kinds.
fn multiset_binomial(w: &BigInt, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    binomial(&(w + BigInt::from(k) - BigInt::one()), k)
}

/// Sum over partitions `m_1 + 2 m_2 + ... + r m_r = n` of the product
/// `Π C(m_i + w_i - 1, m_i)`, with `weights[i-1] = w_i`.
pub fn partition_sum(weights: &[BigInt], n: usize) -> BigInt {
    assert!(weights.len() >= n, "need weights for parts 1..={n}");
    let mut total = BigInt::zero();
    fn rec(weights: &[BigInt], part: usize, remaining: usize, acc: BigInt, total: &mut BigInt) {
        if remaining == 0 {
            *total += acc;
            return;
        }
        if part == 0 {
            return;
        }
        for mult in 0..=(remaining / part) {
            let factor = multiset_binomial(&weights[part - 1], mult);
            if factor.is_zero() {
                continue;
            }
            rec(
                weights,
                part - 1,
                remaining - mult * part,
                &acc * factor,
                total,
            );
        }
    }
    rec(weights, n, n, BigInt::one(), &mut total);
    total
}

/// Dimensions of the multiset families by degree: `a[0] = 1` and
/// `a[n] = Σ_partitions Π C(m_i + M·a[i-1] - 1, m_i)` — equivalently
/// the rooted-tree count `t_{n+1}` with M labels.
pub fn cayley_counts(m: u32, upto: usize) -> Vec<BigInt> {
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=upto {
        let weights: Vec<BigInt> = (1..=n).map(|i| BigInt::from(m) * &a[i - 1]).collect();
        a.push(partition_sum(&weights, n));
    }
    a
}

/// Dimensions of the sequence families by degree:
/// `a[n] = M · Σ a[i]·a[n-1-i]`.
pub fn ordered_counts(m: u32, upto: usize) -> Vec<BigInt> {
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=upto {
        let mut s = BigInt::zero();
        for i in 0..n {
            s += &a[i] * &a[n - 1 - i];
        }
        a.push(BigInt::from(m) * s);
    }
    a
}

/// Closed form for the sequence families: degree d dimension
/// `M^d · C(2d, d) / (d + 1)` (the Catalan numbers when M = 1).
pub fn ordered_closed_form(m: u32, degree: usize) -> BigInt {
    let num = BigInt::from(m).pow(degree as u32) * binomial(&BigInt::from(2 * degree), degree);
    num / BigInt::from(degree + 1)
}

/// Heap-ordered dimensions by degree: d!.
pub fn hot_counts(upto: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::one()];
    for n in 1..=upto {
        let prev = a[n - 1].clone();
        a.push(prev * BigInt::from(n));
    }
    a
}

/// Enveloping-algebra dimensions from primitive dimensions:
/// `a[n] = Σ_partitions Π C(m_i + p_i - 1, m_i)` with `p[i-1] = p_i`
/// (indexed from degree 1). Requires `p.len() >= upto`.
pub fn pbw_dimensions(p: &[BigInt], upto: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::one()];
    for n in 1..=upto {
        a.push(partition_sum(&p[..n], n));
    }
    a
}

/// Invert [`pbw_dimensions`] degree by degree: the unique `p` with
/// `pbw_dimensions(p) = a`. Fails if `a[0] != 1` or some `p_n` would be
/// negative.
pub fn pbw_invert(a: &[BigInt]) -> Result<Vec<BigInt>, Error> {
    if a.first() != Some(&BigInt::one()) {
        return Err(Error::NotConnected);
    }
    let mut p: Vec<BigInt> = Vec::new();
    for n in 1..a.len() {
        // With p_n = 0, partitions using part n contribute nothing.
        p.push(BigInt::zero());
        let rest = partition_sum(&p, n);
        let pn = &a[n] - rest;
        if pn < BigInt::zero() {
            return Err(Error::NoIntegerSolution { degree: n });
        }
        p[n - 1] = pn;
    }
    Ok(p)
}

/// Indecomposable heap-ordered counts, indexed from degree 1:
/// `g_1 = 1`, `g_n = n! - Σ_{i<n} (n-i)!·g_i`.
pub fn indecomposable_counts(upto: usize) -> Vec<BigInt> {
    let fact = hot_counts(upto);
    let mut g: Vec<BigInt> = Vec::new();
    for n in 1..=upto {
        let mut v = fact[n].clone();
        for i in 1..n {
            v -= &fact[n - i] * &g[i - 1];
        }
        g.push(v);
    }
    g
}

/// `t1 ⊙ t2`: attach all of `DelRoot(t1)` directly to the root of
/// `t2`. Associative; the top-filtration part of the full product.
pub fn odot(t1: &CanonicalTree, t2: &CanonicalTree) -> Result<CanonicalTree, Error> {
    t1.family().check_same(t2.family())?;
    let x = t1.del_root();
    let map = LinkingMap::constant_root(x.forest.component_count());
    Ok(t2.attach(&x.forest, &map)?.tree)
}

/// Minimal blocks of `DelRoot(t)` under ⊙-splitting, in forest order.
///
/// Nested kinds split between any two occurrences, so every occurrence
/// is its own block. Heap kinds split only where no parent link crosses
/// the prefix boundary.
fn cut_blocks(t: &CanonicalTree) -> Vec<Selector> {
    let dr = t.del_root();
    match dr.forest.repr() {
        ForestRepr::Nested(comps) => (0..comps.len()).map(|i| Selector::new(vec![i])).collect(),
        ForestRepr::Heap { parents, .. } => {
            let n = parents.len();
            let mut cuts = vec![0];
            for s in 1..n {
                if (s..n).all(|i| parents[i].is_none_or(|p| p >= s)) {
                    cuts.push(s);
                }
            }
            cuts.push(n);
            let comps = crate::family::heap_components(parents);
            let mut blocks = Vec::with_capacity(cuts.len() - 1);
            for w in cuts.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let occs: Vec<usize> = comps
                    .iter()
                    .enumerate()
                    .filter(|(_, nodes)| nodes[0] >= lo && nodes[0] < hi)
                    .map(|(occ, _)| occ)
                    .collect();
                blocks.push(Selector::new(occs));
            }
            blocks
        }
    }
}

/// Whether `t` (≠ e) admits no splitting `t = t1 ⊙ t2` with both
/// factors nontrivial.
pub fn is_indecomposable(t: &CanonicalTree) -> bool {
    !t.is_unit() && cut_blocks(t).len() == 1
}

/// Factor `t` into indecomposables whose ⊙-product is `t`.
///
/// For the unique-decomposition families (OT, LOT, HOT, LHOT) this is
/// the unique such sequence. For T/LT the factors commute; one
/// canonical (sorted) sequence is returned.
pub fn factor_odot(t: &CanonicalTree) -> Result<Vec<CanonicalTree>, Error> {
    if t.is_unit() {
        return Err(Error::FactorUnit);
    }
    let dr = t.del_root();
    let mut factors: Vec<CanonicalTree> = cut_blocks(t)
        .iter()
        .rev()
        .map(|sel| dr.forest.restrict(sel).expect("block in range").lift_tree())
        .collect();
    if t.family().structure() == StructureKind::Multiset {
        factors.sort();
    }
    Ok(factors)
}

/// ⊙-product of a nonempty factor sequence.
pub fn odot_chain(factors: &[CanonicalTree]) -> Result<CanonicalTree, Error> {
    let mut iter = factors.iter();
    let mut acc = iter.next().expect("nonempty factor sequence").clone();
    for f in iter {
        acc = odot(&acc, f)?;
    }
    Ok(acc)
}

/// A counting table for one family, indexed by degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountSeries {
    family: FamilyId,
    values: Vec<BigInt>,
}

impl CountSeries {
    pub fn new(family: FamilyId, values: Vec<BigInt>) -> Self {
        CountSeries { family, values }
    }

    pub fn family(&self) -> &FamilyId {
        &self.family
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value(&self, degree: usize) -> &BigInt {
        &self.values[degree]
    }

    /// `degree,count` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (d, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{d},{v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.family.kind().code(),
            "M": self.family.label_count(),
            "counts": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Dimension table of a family by degree, from its counting recurrence
/// (not from enumeration).
pub fn dimension_series(family: &FamilyId, upto: usize) -> CountSeries {
    let m = family.label_count();
    let values = match family.structure() {
        StructureKind::Multiset => cayley_counts(m, upto),
        StructureKind::Sequence => ordered_counts(m, upto),
        StructureKind::Heap => {
            // d! heap orders times M^d labelings.
            let mut v = hot_counts(upto);
            for (d, value) in v.iter_mut().enumerate() {
                *value *= BigInt::from(m).pow(d as u32);
            }
            v
        }
    };
    CountSeries::new(*family, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_tree;

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|v| BigInt::from(*v)).collect()
    }

    #[test]
    fn enumerate_smallest() {
        let t = FamilyId::unordered();
        assert_eq!(enumerate_trees(&t, 0), vec![t.unit_tree()]);
        assert_eq!(enumerate_trees(&FamilyId::heap_ordered(), 3).len(), 6);
        assert_eq!(enumerate_trees(&FamilyId::ordered(), 3).len(), 5);
    }

    #[test]
    fn enumerate_is_duplicate_free() {
        for (family, upto) in [
            (FamilyId::unordered(), 5),
            (FamilyId::labeled(2).unwrap(), 4),
            (FamilyId::ordered(), 5),
            (FamilyId::heap_ordered(), 4),
            (FamilyId::labeled_heap_ordered(2).unwrap(), 3),
        ] {
            for d in 0..=upto {
                let trees = enumerate_trees(&family, d);
                let mut dedup = trees.clone();
                dedup.dedup();
                assert_eq!(trees.len(), dedup.len(), "{family} degree {d}");
            }
        }
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley_counts(1, 4), big(&[1, 1, 2, 4, 9]));
        assert_eq!(cayley_counts(2, 2), big(&[1, 2, 7]));
        // Single-partition case: t_2 = C(1 + 1 - 1, 1) = 1.
        assert_eq!(cayley_counts(1, 1)[1], BigInt::one());
    }

    #[test]
    fn enumeration_matches_recurrences() {
        for d in 0..=6 {
            assert_eq!(
                BigInt::from(enumerate_trees(&FamilyId::unordered(), d).len()),
                cayley_counts(1, d)[d],
                "T degree {d}"
            );
        }
        let lt2 = FamilyId::labeled(2).unwrap();
        for d in 0..=4 {
            assert_eq!(
                BigInt::from(enumerate_trees(&lt2, d).len()),
                cayley_counts(2, d)[d]
            );
        }
        for d in 0..=5 {
            assert_eq!(
                BigInt::from(enumerate_trees(&FamilyId::ordered(), d).len()),
                ordered_counts(1, d)[d]
            );
            assert_eq!(
                BigInt::from(enumerate_trees(&FamilyId::heap_ordered(), d).len()),
                hot_counts(d)[d]
            );
        }
        let lot2 = FamilyId::labeled_ordered(2).unwrap();
        for d in 0..=3 {
            assert_eq!(
                BigInt::from(enumerate_trees(&lot2, d).len()),
                ordered_counts(2, d)[d]
            );
        }
        let lhot2 = FamilyId::labeled_heap_ordered(2).unwrap();
        for d in 0..=3 {
            assert_eq!(
                BigInt::from(enumerate_trees(&lhot2, d).len()),
                *dimension_series(&lhot2, d).value(d)
            );
        }
    }

    #[test]
    fn ordered_examples() {
        assert_eq!(ordered_counts(1, 5), big(&[1, 1, 2, 5, 14, 42]));
        // M = 2: t_3 = 2(t_1 t_2 + t_2 t_1) = 8, i.e. degree 2.
        assert_eq!(ordered_counts(2, 2), big(&[1, 2, 8]));
        assert_eq!(ordered_closed_form(1, 2), BigInt::from(2));
        for d in 0..=6 {
            assert_eq!(ordered_closed_form(1, d), ordered_counts(1, d)[d]);
            assert_eq!(ordered_closed_form(2, d), ordered_counts(2, d)[d]);
        }
    }

    #[test]
    fn hot_examples() {
        let v = hot_counts(5);
        assert_eq!(v[0], BigInt::one());
        assert_eq!(v[4], BigInt::from(24));
        assert_eq!(v, big(&[1, 1, 2, 6, 24, 120]));
    }

    #[test]
    fn pbw_examples() {
        assert_eq!(
            pbw_dimensions(&big(&[1, 1, 2, 4]), 4),
            big(&[1, 1, 2, 4, 9])
        );
        assert_eq!(
            pbw_dimensions(&big(&[1, 0, 0, 0]), 4),
            big(&[1, 1, 1, 1, 1])
        );
        assert_eq!(
            pbw_dimensions(&big(&[1, 1, 3, 8]), 4),
            big(&[1, 1, 2, 5, 14])
        );
    }

    #[test]
    fn pbw_invert_examples() {
        assert_eq!(
            pbw_invert(&big(&[1, 1, 2, 4, 9])).unwrap(),
            big(&[1, 1, 2, 4])
        );
        assert_eq!(pbw_invert(&big(&[1, 1, 1, 1])).unwrap(), big(&[1, 0, 0]));
        assert_eq!(
            pbw_invert(&big(&[1, 1, 2, 5, 14])).unwrap(),
            big(&[1, 1, 3, 8])
        );
        assert_eq!(pbw_invert(&big(&[2, 1])), Err(Error::NotConnected));
        assert_eq!(
            pbw_invert(&big(&[1, 2, 1])),
            Err(Error::NoIntegerSolution { degree: 2 }),
            "a_2 = 1 < C(2+2-1,2) forces p_2 < 0"
        );
        // Round trip on an arbitrary series.
        let a = pbw_dimensions(&big(&[2, 0, 5, 1]), 4);
        assert_eq!(pbw_dimensions(&pbw_invert(&a).unwrap(), 4), a);
    }

    #[test]
    fn odot_examples() {
        let fam = FamilyId::unordered();
        let t = parse_tree(fam, "(())").unwrap();
        let e = fam.unit_tree();
        assert_eq!(odot(&t, &e).unwrap(), t);
        assert_eq!(odot(&e, &t).unwrap(), t);
        assert_eq!(odot(&t, &t).unwrap(), parse_tree(fam, "(()())").unwrap());

        let hot = FamilyId::heap_ordered();
        let h = parse_tree(hot, "h:[1]").unwrap();
        assert_eq!(odot(&h, &h).unwrap(), parse_tree(hot, "h:[1,1]").unwrap());
    }

    #[test]
    fn odot_associativity_small() {
        for family in [
            FamilyId::unordered(),
            FamilyId::ordered(),
            FamilyId::heap_ordered(),
        ] {
            let mut trees = Vec::new();
            for d in 0..=4 {
                trees.extend(enumerate_trees(&family, d));
            }
            for a in &trees {
                for b in &trees {
                    for c in &trees {
                        if a.degree() + b.degree() + c.degree() > 4 {
                            continue;
                        }
                        let left = odot(&odot(a, b).unwrap(), c).unwrap();
                        let right = odot(a, &odot(b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        let hot = FamilyId::heap_ordered();
        let cherry = parse_tree(hot, "h:[1,1]").unwrap();
        let single = parse_tree(hot, "h:[1]").unwrap();
        assert_eq!(
            factor_odot(&cherry).unwrap(),
            vec![single.clone(), single.clone()]
        );
        let chain = parse_tree(hot, "h:[1,2]").unwrap();
        assert_eq!(factor_odot(&chain).unwrap(), vec![chain.clone()]);
        assert!(is_indecomposable(&chain));
        assert!(!is_indecomposable(&cherry));
        assert_eq!(factor_odot(&hot.unit_tree()), Err(Error::FactorUnit));

        let indecomposable = enumerate_trees(&hot, 3)
            .iter()
            .filter(|t| is_indecomposable(t))
            .count();
        assert_eq!(indecomposable, 3);
    }

    #[test]
    fn factor_round_trip() {
        for family in [
            FamilyId::unordered(),
            FamilyId::ordered(),
            FamilyId::heap_ordered(),
            FamilyId::labeled_heap_ordered(2).unwrap(),
        ] {
            for d in 1..=4 {
                for t in enumerate_trees(&family, d) {
                    let factors = factor_odot(&t).unwrap();
                    assert!(factors.iter().all(is_indecomposable));
                    assert_eq!(odot_chain(&factors).unwrap(), t, "{family} {t}");
                }
            }
        }
    }

    #[test]
    fn indecomposable_count_examples() {
        let g = indecomposable_counts(4);
        assert_eq!(g, big(&[1, 1, 3, 13]));
        // t_n = Σ g_i t_{n-i} reproduces n!.
        let fact = hot_counts(6);
        let g = indecomposable_counts(6);
        for n in 1..=6 {
            let mut s = BigInt::zero();
            for i in 1..=n {
                s += &g[i - 1] * &fact[n - i];
            }
            assert_eq!(s, fact[n]);
        }
        // And matches exhaustive factorization counts.
        for d in 1..=4 {
            let count = enumerate_trees(&FamilyId::heap_ordered(), d)
                .iter()
                .filter(|t| is_indecomposable(t))
                .count();
            assert_eq!(BigInt::from(count), indecomposable_counts(d)[d - 1]);
        }
    }

    #[test]
    fn count_series_formats() {
        let s = dimension_series(&FamilyId::heap_ordered(), 4);
        assert_eq!(s.to_csv(), "0,1\n1,1\n2,2\n3,6\n4,24\n");
        let j = s.to_json();
        assert_eq!(j["family"], "HOT");
        assert_eq!(j["counts"][4], "24");
    }
}
