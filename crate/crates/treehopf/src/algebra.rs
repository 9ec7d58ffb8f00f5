//! Exact-rational linear combinations of trees and the graded Hopf
//! algebra operations on them.
//!
//! On basis trees the product attaches `DelRoot(t1)` to the nodes of
//! `t2` over all linking maps, and the coproduct splits `DelRoot(t)`
//! over all subforest selectors; both extend bilinearly. Coefficients
//! are exact rationals (always reduced, positive denominators), so the
//! antipode recursion and nullspace computations stay exact.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Signed, Zero};
use num::BigRational;
use serde_json::json;

use crate::error::Error;
use crate::family::{CanonicalTree, FamilyId, Subtree, TreeRepr};
use crate::linking::{all_linking_maps, all_selectors};

/// Exact scalar: arbitrary-precision rational.
pub type Coefficient = BigRational;

pub fn format_coefficient(c: &Coefficient) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn write_terms<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (T, Coefficient)>,
) -> fmt::Result {
    let mut any = false;
    for (i, (body, coeff)) in terms.enumerate() {
        if i == 0 {
            if coeff.is_negative() {
                f.write_str("-")?;
            }
        } else if coeff.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        write!(f, "{}*{}", format_coefficient(&coeff.abs()), body)?;
        any = true;
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

/// A graded element of the tree algebra: a finite linear combination of
/// canonical trees of one family. Zero coefficients are never stored,
/// and terms iterate in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeVector {
    family: FamilyId,
    terms: BTreeMap<CanonicalTree, Coefficient>,
}

impl TreeVector {
    pub fn zero(family: FamilyId) -> Self {
        TreeVector {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_tree(tree: CanonicalTree) -> Self {
        let family = *tree.family();
        let mut v = TreeVector::zero(family);
        v.add_term(tree, Coefficient::one());
        v
    }

    pub fn from_terms(
        family: FamilyId,
        terms: impl IntoIterator<Item = (CanonicalTree, Coefficient)>,
    ) -> Result<Self, Error> {
        let mut v = TreeVector::zero(family);
        for (t, c) in terms {
            family.check_same(t.family())?;
            v.add_term(t, c);
        }
        Ok(v)
    }

    pub fn family(&self) -> &FamilyId {
        &self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalTree, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tree: &CanonicalTree) -> Coefficient {
        self.terms
            .get(tree)
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    pub(crate) fn add_term(&mut self, tree: CanonicalTree, coeff: Coefficient) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(tree).or_insert_with(Coefficient::zero);
        *entry += coeff;
        if entry.is_zero() {
            // `entry` borrows the map; re-find the key to drop it.
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn plus(&self, other: &TreeVector) -> Result<TreeVector, Error> {
        self.family.check_same(&other.family)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &TreeVector) -> Result<TreeVector, Error> {
        self.plus(&other.scaled(&-Coefficient::one()))
    }

    pub fn scaled(&self, factor: &Coefficient) -> TreeVector {
        if factor.is_zero() {
            return TreeVector::zero(self.family);
        }
        TreeVector {
            family: self.family,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c * factor))
                .collect(),
        }
    }

    /// Degrees occurring with nonzero coefficient.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(CanonicalTree::degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The part of the vector in a single degree.
    pub fn homogeneous_part(&self, degree: usize) -> TreeVector {
        TreeVector {
            family: self.family,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.degree() == degree)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Bilinear extension of the basis product.
    pub fn multiply(&self, other: &TreeVector) -> Result<TreeVector, Error> {
        self.family.check_same(&other.family)?;
        let mut out = TreeVector::zero(self.family);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                let prod = multiply_trees(ta, tb)?;
                let scale = ca * cb;
                for (t, c) in prod.terms {
                    out.add_term(t, c * &scale);
                }
            }
        }
        Ok(out)
    }

    /// Linear extension of the basis coproduct.
    pub fn coproduct(&self) -> TensorVector {
        let mut out = TensorVector::zero(self.family);
        for (t, c) in &self.terms {
            for ((l, r), ct) in coproduct_tree(t).terms {
                out.add_term(l, r, ct * c);
            }
        }
        out
    }

    /// Coefficient of the one-node tree.
    pub fn counit(&self) -> Coefficient {
        self.coefficient(&self.family.unit_tree())
    }

    /// The antipode, by the graded-connected recursion
    /// `S(e) = e`, `S(t) = -t - Σ S(t')·t''` over the coproduct terms
    /// with both tensor factors of positive degree.
    pub fn antipode(&self) -> TreeVector {
        let mut cache: BTreeMap<CanonicalTree, TreeVector> = BTreeMap::new();
        let mut out = TreeVector::zero(self.family);
        for (t, c) in &self.terms {
            let s = antipode_tree(t, &mut cache);
            for (st, sc) in s.terms {
                out.add_term(st, sc * c);
            }
        }
        out
    }

    /// Whether `Δ(a) = e ⊗ a + a ⊗ e` exactly.
    pub fn is_primitive(&self) -> bool {
        let e = self.family.unit_tree();
        let mut expected = TensorVector::zero(self.family);
        for (t, c) in &self.terms {
            expected.add_term(e.clone(), t.clone(), c.clone());
            expected.add_term(t.clone(), e.clone(), c.clone());
        }
        self.coproduct() == expected
    }
}

impl fmt::Display for TreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(t, c)| (t, c.clone())))
    }
}

/// Product of two basis trees: attach `DelRoot(t1)` to `t2` over all
/// linking maps and merge canonically. All structure constants are
/// nonnegative integers by construction.
pub fn multiply_trees(t1: &CanonicalTree, t2: &CanonicalTree) -> Result<TreeVector, Error> {
    t1.family().check_same(t2.family())?;
    let x = t1.del_root();
    let mut out = TreeVector::zero(*t1.family());
    for d in all_linking_maps(x.forest.component_count(), t2.node_count()) {
        let attached = t2
            .attach(&x.forest, &d)
            .expect("enumerated linking map is valid");
        out.add_term(attached.tree, Coefficient::one());
    }
    Ok(out)
}

/// Coproduct of a basis tree: split `DelRoot(t)` over all subforest
/// selectors, lifting both halves.
pub fn coproduct_tree(t: &CanonicalTree) -> TensorVector {
    let x = t.del_root();
    let k = x.forest.component_count();
    let mut out = TensorVector::zero(*t.family());
    for u in all_selectors(k) {
        let left = x
            .forest
            .restrict(&u)
            .expect("selector in range")
            .lift_tree();
        let right = x
            .forest
            .restrict(&u.complement(k))
            .expect("selector in range")
            .lift_tree();
        out.add_term(left, right, Coefficient::one());
    }
    out
}

fn antipode_tree(t: &CanonicalTree, cache: &mut BTreeMap<CanonicalTree, TreeVector>) -> TreeVector {
    if t.is_unit() {
        return TreeVector::from_tree(t.clone());
    }
    if let Some(hit) = cache.get(t) {
        return hit.clone();
    }
    let mut acc = TreeVector::from_tree(t.clone()).scaled(&-Coefficient::one());
    for ((l, r), c) in coproduct_tree(t).terms {
        if l.is_unit() || r.is_unit() {
            continue;
        }
        let sl = antipode_tree(&l, cache);
        let prod = sl.multiply(&TreeVector::from_tree(r)).expect("same family");
        for (pt, pc) in prod.terms {
            acc.add_term(pt, -(pc * &c));
        }
    }
    cache.insert(t.clone(), acc.clone());
    acc
}

/// `[a, b] = a·b - b·a`.
pub fn lie_bracket(a: &TreeVector, b: &TreeVector) -> Result<TreeVector, Error> {
    a.multiply(b)?.minus(&b.multiply(a)?)
}

/// An element of the tensor square: a linear combination of ordered
/// pairs of trees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorVector {
    family: FamilyId,
    terms: BTreeMap<(CanonicalTree, CanonicalTree), Coefficient>,
}

impl TensorVector {
    pub fn zero(family: FamilyId) -> Self {
        TensorVector {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn family(&self) -> &FamilyId {
        &self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(CanonicalTree, CanonicalTree), &Coefficient)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(
        &mut self,
        left: CanonicalTree,
        right: CanonicalTree,
        coeff: Coefficient,
    ) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((left, right))
            .or_insert_with(Coefficient::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn plus(&self, other: &TensorVector) -> Result<TensorVector, Error> {
        self.family.check_same(&other.family)?;
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &TensorVector) -> Result<TensorVector, Error> {
        self.plus(&other.scaled(&-Coefficient::one()))
    }

    pub fn scaled(&self, factor: &Coefficient) -> TensorVector {
        if factor.is_zero() {
            return TensorVector::zero(self.family);
        }
        TensorVector {
            family: self.family,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// Swap the tensor factors.
    pub fn swap(&self) -> TensorVector {
        TensorVector {
            family: self.family,
            terms: self
                .terms
                .iter()
                .map(|((l, r), c)| ((r.clone(), l.clone()), c.clone()))
                .collect(),
        }
    }

    /// Componentwise product (no signs: the algebra is cocommutative,
    /// not super-graded).
    pub fn multiply(&self, other: &TensorVector) -> Result<TensorVector, Error> {
        self.family.check_same(&other.family)?;
        let mut out = TensorVector::zero(self.family);
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let lp = multiply_trees(l1, l2)?;
                let rp = multiply_trees(r1, r2)?;
                let scale = c1 * c2;
                for (lt, lc) in lp.terms() {
                    for (rt, rc) in rp.terms() {
                        out.add_term(lt.clone(), rt.clone(), lc * rc * &scale);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply the counit to the left factor: `(ε ⊗ id)`.
    pub fn contract_left_counit(&self) -> TreeVector {
        let mut out = TreeVector::zero(self.family);
        for ((l, r), c) in &self.terms {
            if l.is_unit() {
                out.add_term(r.clone(), c.clone());
            }
        }
        out
    }

    /// Apply the counit to the right factor: `(id ⊗ ε)`.
    pub fn contract_right_counit(&self) -> TreeVector {
        let mut out = TreeVector::zero(self.family);
        for ((l, r), c) in &self.terms {
            if r.is_unit() {
                out.add_term(l.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct Pair<'a>(&'a CanonicalTree, &'a CanonicalTree);
        impl fmt::Display for Pair<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}⊗{}", self.0, self.1)
            }
        }
        write_terms(
            f,
            self.terms.iter().map(|((l, r), c)| (Pair(l, r), c.clone())),
        )
    }
}

/// Glue two trees at their roots: the children of both roots become the
/// children of a common root. For sequence kinds the left tree's
/// children come first; for heap kinds the left tree's nodes precede
/// the right tree's.
pub fn glue_roots(t1: &CanonicalTree, t2: &CanonicalTree) -> Result<CanonicalTree, Error> {
    t1.family().check_same(t2.family())?;
    let family = *t1.family();
    match (t1.repr(), t2.repr()) {
        (TreeRepr::Nested(a), TreeRepr::Nested(b)) => {
            let mut children: Vec<Subtree> = a.clone();
            children.extend(b.iter().cloned());
            CanonicalTree::new(family, TreeRepr::Nested(children))
        }
        (
            TreeRepr::Heap {
                parents: pa,
                labels: la,
            },
            TreeRepr::Heap {
                parents: pb,
                labels: lb,
            },
        ) => {
            let shift = pa.len();
            let mut parents = pa.clone();
            parents.extend(pb.iter().map(|p| if *p == 0 { 0 } else { p + shift }));
            let mut labels = la.clone();
            labels.extend_from_slice(lb);
            CanonicalTree::new(family, TreeRepr::Heap { parents, labels })
        }
        _ => unreachable!("reprs match the family"),
    }
}

/// Linear extension of root gluing; satisfies `π∘Δ(t) = 2^r t` (r =
/// root child count) for the multiset kinds.
pub fn pi_fold(x: &TensorVector) -> TreeVector {
    let mut out = TreeVector::zero(*x.family());
    for ((l, r), c) in x.terms() {
        let glued = glue_roots(l, r).expect("tensor factors share a family");
        out.add_term(glued, c.clone());
    }
    out
}

/// `{"family":"T","M":1,"terms":[{"coeff":"1","tree":"(())"},...]}`
pub fn tree_vector_json(v: &TreeVector) -> serde_json::Value {
    json!({
        "family": v.family().kind().code(),
        "M": v.family().label_count(),
        "terms": v
            .terms()
            .map(|(t, c)| json!({"coeff": format_coefficient(c), "tree": t.to_string()}))
            .collect::<Vec<_>>(),
    })
}

/// Like [`tree_vector_json`] with `left`/`right` tree fields.
pub fn tensor_vector_json(v: &TensorVector) -> serde_json::Value {
    json!({
        "family": v.family().kind().code(),
        "M": v.family().label_count(),
        "terms": v
            .terms()
            .map(|((l, r), c)| {
                json!({"coeff": format_coefficient(c), "left": l.to_string(), "right": r.to_string()})
            })
            .collect::<Vec<_>>(),
    })
}

/// Check `m ∘ (S ⊗ id) ∘ Δ = unit ∘ ε` and the mirrored identity on a
/// single basis tree.
pub fn antipode_convolution_holds(t: &CanonicalTree) -> bool {
    let family = *t.family();
    let expected = TreeVector::from_tree(family.unit_tree())
        .scaled(&TreeVector::from_tree(t.clone()).counit());
    let mut left = TreeVector::zero(family);
    let mut right = TreeVector::zero(family);
    let mut cache = BTreeMap::new();
    for ((a, b), c) in coproduct_tree(t).terms {
        let sa = antipode_tree(&a, &mut cache).scaled(&c);
        for (pt, pc) in sa
            .multiply(&TreeVector::from_tree(b.clone()))
            .expect("same family")
            .terms
        {
            left.add_term(pt, pc);
        }
        let sb = antipode_tree(&b, &mut cache).scaled(&c);
        for (pt, pc) in TreeVector::from_tree(a)
            .multiply(&sb)
            .expect("same family")
            .terms
        {
            right.add_term(pt, pc);
        }
    }
    left == expected && right == expected
}
