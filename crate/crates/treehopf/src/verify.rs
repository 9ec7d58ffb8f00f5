//! Exhaustive verification suites.
//!
//! Every suite sweeps all instances of its identities up to a size
//! bound, counts them, and reports the first counterexample (inputs
//! and both sides serialized) on failure. Sweeps run in canonical
//! enumeration order, so reports are deterministic and a first failure
//! is already size-minimal.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num::traits::{One, Zero};
use num::{BigInt, BigRational};
use serde::Serialize;

use crate::algebra::{
    antipode_convolution_holds, coproduct_tree, multiply_trees, Coefficient, TensorVector,
    TreeVector,
};
use crate::enumeration::{
    enumerate_forests, enumerate_trees, factor_odot, indecomposable_counts, is_indecomposable,
    odot, odot_chain, pbw_dimensions,
};
use crate::error::Error;
use crate::family::{CanonicalForest, CanonicalTree, FamilyId, Selector, StructureKind};
use crate::linalg::rank;
use crate::linking::{
    all_linking_maps, all_selectors, merge_attachment, reassociate_left, reassociate_right,
    split_attachment, LinkingMap, SplitParts,
};

/// One identity, its instance count, and the first counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub instances: u64,
    pub ok: bool,
    pub counterexample: Option<String>,
}

/// A suite run over one family at one bound.
///
/// Wall time is measured but not serialized, so reports are
/// byte-stable across runs.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub family: String,
    pub bound: usize,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub wall: Duration,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line per check plus a trailing suite line.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} instances={}\n",
                if c.ok { "ok  " } else { "FAIL" },
                c.name,
                c.instances
            ));
            if let Some(cex) = &c.counterexample {
                out.push_str(&format!("     counterexample: {cex}\n"));
            }
        }
        out.push_str(&format!(
            "suite={} family={} bound={}: {}\n",
            self.suite,
            self.family,
            self.bound,
            if self.all_ok() {
                "all checks passed"
            } else {
                "FAILURES"
            }
        ));
        out
    }
}

/// A level of the root-arity filtration: `F_p` is spanned by the trees
/// whose root has at most `p` children. `F_(-1)` contains only zero,
/// every tree lies in some level, and products satisfy
/// `F_p · F_q ⊆ F_(p+q)` (checked by [`verify_freeness`]).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FiltrationLevel(pub i64);

impl FiltrationLevel {
    pub fn contains_tree(&self, t: &CanonicalTree) -> bool {
        t.root_child_count() as i64 <= self.0
    }

    pub fn contains(&self, v: &TreeVector) -> bool {
        v.terms().all(|(t, _)| self.contains_tree(t))
    }

    /// Least level containing the tree: its root child count.
    pub fn of_tree(t: &CanonicalTree) -> FiltrationLevel {
        FiltrationLevel(t.root_child_count() as i64)
    }

    /// Least level containing the vector; -1 for zero.
    pub fn of_vector(v: &TreeVector) -> FiltrationLevel {
        FiltrationLevel(
            v.terms()
                .map(|(t, _)| t.root_child_count() as i64)
                .max()
                .unwrap_or(-1),
        )
    }
}

struct Check {
    name: &'static str,
    instances: u64,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            instances: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(counterexample());
        }
    }

    fn outcome(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.to_string(),
            instances: self.instances,
            ok: self.failure.is_none(),
            counterexample: self.failure,
        }
    }
}

fn report(
    suite: &str,
    family: &FamilyId,
    bound: usize,
    checks: Vec<Check>,
    start: Instant,
) -> VerificationReport {
    VerificationReport {
        suite: suite.to_string(),
        family: family.to_string(),
        bound,
        checks: checks.into_iter().map(Check::outcome).collect(),
        wall: start.elapsed(),
    }
}

fn trees_up_to_nodes(family: &FamilyId, max_nodes: usize) -> Vec<CanonicalTree> {
    (0..max_nodes)
        .flat_map(|d| enumerate_trees(family, d))
        .collect()
}

fn forests_up_to_nodes(family: &FamilyId, max_nodes: usize) -> Vec<CanonicalForest> {
    (0..=max_nodes)
        .flat_map(|n| enumerate_forests(family, n))
        .collect()
}

/// Sweep the restriction axioms, the unit laws, the attachment
/// associativity equality, the coproduct splitting equality, and all
/// four bijection round trips.
///
/// Bounds: forests range over at most `max_nodes` total nodes, trees
/// over at most `max_nodes` nodes (each tree of a triple), and the
/// splitting sweeps require tree-degree + forest nodes ≤ `max_nodes`.
pub fn verify_family_axioms(family: &FamilyId, max_nodes: usize) -> VerificationReport {
    let start = Instant::now();
    let trees = trees_up_to_nodes(family, max_nodes);
    let forests = forests_up_to_nodes(family, max_nodes);

    // V|V = V.
    let mut ax2 = Check::new("restriction_identity");
    for v in &forests {
        let r = v
            .restrict(&Selector::full(v.component_count()))
            .expect("full selector");
        ax2.record(r == *v, || format!("V={v} V|V={r}"));
    }

    // The underlying forest of V|U is U itself.
    let mut ax3 = Check::new("restriction_underlying_forest");
    for v in &forests {
        let shapes = v.underlying_shapes();
        for sel in all_selectors(v.component_count()) {
            let r = v.restrict(&sel).expect("selector in range");
            let expected: Vec<_> = sel.iter().map(|i| shapes[i].clone()).collect();
            let mut actual = r.underlying_shapes();
            let mut expected_sorted = expected;
            // Multiset restriction may reorder equal components; compare
            // occurrence multisets of underlying shapes.
            actual.sort();
            expected_sorted.sort();
            ax3.record(actual == expected_sorted, || {
                format!("V={v} sel={sel} V|U={r}")
            });
        }
    }

    // W|U = (W|V)|U for U ⊆ V ⊆ W.
    let mut ax4 = Check::new("restriction_composition");
    for w in &forests {
        let k = w.component_count();
        for v_sel in all_selectors(k) {
            let wv = w.restrict(&v_sel).expect("in range");
            for u_mask in 0..(1usize << v_sel.len()) {
                let u_sel = Selector::new(
                    v_sel
                        .iter()
                        .enumerate()
                        .filter(|(pos, _)| u_mask & (1 << pos) != 0)
                        .map(|(_, i)| i)
                        .collect(),
                );
                let inner = Selector::new(
                    u_sel
                        .iter()
                        .map(|i| v_sel.position_of(i).expect("U ⊆ V"))
                        .collect(),
                );
                let lhs = w.restrict(&u_sel).expect("in range");
                let rhs = wv.restrict(&inner).expect("in range");
                ax4.record(lhs == rhs, || {
                    format!("W={w} V={v_sel} U={u_sel} W|U={lhs} (W|V)|U={rhs}")
                });
            }
        }
    }

    // t = e ⇽1 DelRoot(t), t = t ⇽0 ∅, U = DelRoot(e ⇽1 U).
    let mut ax7 = Check::new("unit_attachment_laws");
    for t in &trees {
        let lifted = t.del_root().forest.lift_tree();
        ax7.record(lifted == *t, || format!("t={t} rebuilt={lifted}"));
        let attached = t
            .attach(&family.empty_forest(), &LinkingMap::empty())
            .expect("empty attach")
            .tree;
        ax7.record(attached == *t, || format!("t={t} t⇽∅={attached}"));
    }
    for u in &forests {
        if u.node_count() >= max_nodes {
            continue;
        }
        let back = u.lift_tree().del_root().forest;
        ax7.record(back == *u, || format!("U={u} DelRoot(lift U)={back}"));
    }

    // Nested-attachment associativity plus both reassociation
    // round trips.
    let mut ax8 = Check::new("attachment_associativity");
    let mut lr = Check::new("bijection_left_of_right");
    let mut rl = Check::new("bijection_right_of_left");
    for t1 in &trees {
        let x1 = t1.del_root();
        let k1 = x1.forest.component_count();
        for t2 in &trees {
            let y2 = t2.del_root();
            let m2 = t2.node_count();
            for d in all_linking_maps(k1, m2) {
                let ar1 = t2.attach(&x1.forest, &d).expect("valid map");
                let dr12 = ar1.tree.del_root();
                let k12 = dr12.forest.component_count();
                for t3 in &trees {
                    let m3 = t3.node_count();
                    for e in all_linking_maps(k12, m3) {
                        let lhs = t3.attach(&dr12.forest, &e).expect("valid map").tree;
                        let (f, g) = reassociate_right(t1, t2, t3, &d, &e).expect("valid data");
                        let inner = t3.attach(&y2.forest, &f).expect("valid map").tree;
                        let rhs = inner.attach(&x1.forest, &g).expect("valid map").tree;
                        ax8.record(lhs == rhs, || {
                            format!("t1={t1} t2={t2} t3={t3} d={d} e={e} lhs={lhs} rhs={rhs}")
                        });
                        let back = reassociate_left(t1, t2, t3, &f, &g).expect("valid data");
                        lr.record(back == (d.clone(), e.clone()), || {
                            format!("t1={t1} t2={t2} t3={t3} d={d} e={e} f={f} g={g} L(R)={back:?}")
                        });
                    }
                }
            }
        }
    }
    for t1 in &trees {
        let k1 = t1.del_root().forest.component_count();
        for t2 in &trees {
            let y2 = t2.del_root();
            let k2 = y2.forest.component_count();
            for t3 in &trees {
                let m3 = t3.node_count();
                for f in all_linking_maps(k2, m3) {
                    let t23 = t3.attach(&y2.forest, &f).expect("valid map").tree;
                    for g in all_linking_maps(k1, t23.node_count()) {
                        let (d, e) = reassociate_left(t1, t2, t3, &f, &g).expect("valid data");
                        let back = reassociate_right(t1, t2, t3, &d, &e).expect("valid data");
                        rl.record(back == (f.clone(), g.clone()), || {
                            format!("t1={t1} t2={t2} t3={t3} f={f} g={g} R(L)={back:?}")
                        });
                    }
                }
            }
        }
    }

    // Attach-then-select splitting equality plus both round trips,
    // over degree(t) + nodes(X) ≤ max_nodes.
    let mut ax9 = Check::new("attachment_split_equality");
    let mut dm = Check::new("bijection_merge_of_split");
    let mut md = Check::new("bijection_split_of_merge");
    for t in &trees {
        let budget = max_nodes.saturating_sub(t.degree());
        let dr_t = t.del_root();
        let kt = dr_t.forest.component_count();
        for x in forests_up_to_nodes(family, budget) {
            let kx = x.component_count();
            for d in all_linking_maps(kx, t.node_count()) {
                let ar = t.attach(&x, &d).expect("valid map");
                let drx = ar.tree.del_root();
                for u in all_selectors(drx.forest.component_count()) {
                    let parts = split_attachment(t, &x, &d, &u).expect("valid data");
                    let lhs = drx.forest.restrict(&u).expect("in range").lift_tree();
                    let left = dr_t
                        .forest
                        .restrict(&parts.left_base)
                        .expect("in range")
                        .lift_tree();
                    let xw = x.restrict(&parts.left_forest).expect("in range");
                    let rhs = left.attach(&xw, &parts.left_links).expect("valid map").tree;
                    ax9.record(lhs == rhs, || {
                        format!("t={t} X={x} d={d} U={u} lhs={lhs} rhs={rhs}")
                    });
                    let back = merge_attachment(t, &x, &parts).expect("valid data");
                    dm.record(back == (d.clone(), u.clone()), || {
                        format!("t={t} X={x} d={d} U={u} D(M)={back:?}")
                    });
                }
            }
            for v_sel in all_selectors(kt) {
                let vc = v_sel.complement(kt);
                let left_nodes = dr_t.forest.restrict(&v_sel).expect("in range").node_count() + 1;
                let right_nodes = dr_t.forest.restrict(&vc).expect("in range").node_count() + 1;
                for w_sel in all_selectors(kx) {
                    let wc = w_sel.complement(kx);
                    for e in all_linking_maps(w_sel.len(), left_nodes) {
                        for f in all_linking_maps(wc.len(), right_nodes) {
                            let parts = SplitParts {
                                left_base: v_sel.clone(),
                                left_forest: w_sel.clone(),
                                left_links: e.clone(),
                                right_links: f.clone(),
                            };
                            let (d, u) = merge_attachment(t, &x, &parts).expect("valid data");
                            let back = split_attachment(t, &x, &d, &u).expect("valid data");
                            md.record(back == parts, || {
                                format!("t={t} X={x} V={v_sel} W={w_sel} e={e} f={f} M(D)={back:?}")
                            });
                        }
                    }
                }
            }
        }
    }

    report(
        "family-axioms",
        family,
        max_nodes,
        vec![ax2, ax3, ax4, ax7, ax8, lr, rl, ax9, dm, md],
        start,
    )
}

/// Sweep the Hopf algebra identities over all basis tuples within a
/// total-degree bound.
pub fn verify_hopf_axioms(family: &FamilyId, max_total_degree: usize) -> VerificationReport {
    let start = Instant::now();
    let basis: Vec<Vec<CanonicalTree>> = (0..=max_total_degree)
        .map(|d| enumerate_trees(family, d))
        .collect();
    let all: Vec<&CanonicalTree> = basis.iter().flatten().collect();
    let unit = TreeVector::from_tree(family.unit_tree());

    let mut assoc = Check::new("product_associativity");
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() > max_total_degree {
                continue;
            }
            let ab = multiply_trees(a, b).expect("same family");
            for c in &all {
                if a.degree() + b.degree() + c.degree() > max_total_degree {
                    continue;
                }
                let cv = TreeVector::from_tree((*c).clone());
                let lhs = ab.multiply(&cv).expect("same family");
                let bc = multiply_trees(b, c).expect("same family");
                let rhs = TreeVector::from_tree((*a).clone())
                    .multiply(&bc)
                    .expect("same family");
                assoc.record(lhs == rhs, || {
                    format!("a={a} b={b} c={c} (ab)c={lhs} a(bc)={rhs}")
                });
            }
        }
    }

    let mut unit_laws = Check::new("unit_laws");
    for t in &all {
        let tv = TreeVector::from_tree((*t).clone());
        let left = unit.multiply(&tv).expect("same family");
        let right = tv.multiply(&unit).expect("same family");
        unit_laws.record(left == tv && right == tv, || {
            format!("t={t} e·t={left} t·e={right}")
        });
    }

    let mut coassoc = Check::new("coproduct_coassociativity");
    for t in &all {
        let d = coproduct_tree(t);
        let mut lhs: BTreeMap<(CanonicalTree, CanonicalTree, CanonicalTree), Coefficient> =
            BTreeMap::new();
        let mut rhs = lhs.clone();
        for ((x, y), c) in d.terms() {
            for ((x1, x2), c2) in coproduct_tree(x).terms() {
                let entry = lhs
                    .entry((x1.clone(), x2.clone(), y.clone()))
                    .or_insert_with(Coefficient::zero);
                *entry += c * c2;
            }
            for ((y1, y2), c2) in coproduct_tree(y).terms() {
                let entry = rhs
                    .entry((x.clone(), y1.clone(), y2.clone()))
                    .or_insert_with(Coefficient::zero);
                *entry += c * c2;
            }
        }
        lhs.retain(|_, c| !c.is_zero());
        rhs.retain(|_, c| !c.is_zero());
        coassoc.record(lhs == rhs, || format!("t={t}"));
    }

    let mut counit_laws = Check::new("counit_laws");
    for t in &all {
        let tv = TreeVector::from_tree((*t).clone());
        let d = tv.coproduct();
        let left = d.contract_left_counit();
        let right = d.contract_right_counit();
        counit_laws.record(left == tv && right == tv, || {
            format!("t={t} (ε⊗id)Δ={left} (id⊗ε)Δ={right}")
        });
    }

    let mut cocomm = Check::new("coproduct_cocommutativity");
    for t in &all {
        let d = coproduct_tree(t);
        let s = d.swap();
        cocomm.record(d == s, || format!("t={t} Δ={d} swap={s}"));
    }

    let mut compat = Check::new("coproduct_multiplicativity");
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() > max_total_degree {
                continue;
            }
            let prod = multiply_trees(a, b).expect("same family");
            let lhs = prod.coproduct();
            let rhs = coproduct_tree(a)
                .multiply(&coproduct_tree(b))
                .expect("same family");
            compat.record(lhs == rhs, || {
                format!("a={a} b={b} Δ(ab)={lhs} Δ(a)Δ(b)={rhs}")
            });
        }
    }

    let mut antipode = Check::new("antipode_convolution");
    for t in &all {
        antipode.record(antipode_convolution_holds(t), || format!("t={t}"));
    }

    let mut grading = Check::new("grading");
    for t in &all {
        let ok = coproduct_tree(t)
            .terms()
            .all(|((l, r), _)| l.degree() + r.degree() == t.degree());
        grading.record(ok, || format!("Δ({t}) is not degree-additive"));
    }
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() > max_total_degree {
                continue;
            }
            let prod = multiply_trees(a, b).expect("same family");
            let expected = a.degree() + b.degree();
            let ok = prod.terms().all(|(t, _)| t.degree() == expected);
            grading.record(ok, || format!("deg({a}·{b}) is not {expected}"));
        }
    }

    report(
        "hopf-axioms",
        family,
        max_total_degree,
        vec![
            assoc,
            unit_laws,
            coassoc,
            counit_laws,
            cocomm,
            compat,
            antipode,
            grading,
        ],
        start,
    )
}

/// Exact dimension of the primitive subspace in one degree: the
/// nullity of `a ↦ Δ(a) - e⊗a - a⊗e` on the degree-`n` basis.
pub fn primitive_space_dimension(family: &FamilyId, degree: usize) -> usize {
    assert!(degree >= 1);
    let basis = enumerate_trees(family, degree);
    let unit = family.unit_tree();
    let mut row_index: BTreeMap<(CanonicalTree, CanonicalTree), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, Coefficient>> = Vec::with_capacity(basis.len());
    for t in &basis {
        let mut image = coproduct_tree(t);
        image.add_term(unit.clone(), t.clone(), -Coefficient::one());
        image.add_term(t.clone(), unit.clone(), -Coefficient::one());
        let mut col = BTreeMap::new();
        for ((l, r), c) in image.terms() {
            let next = row_index.len();
            let idx = *row_index.entry((l.clone(), r.clone())).or_insert(next);
            col.insert(idx, c.clone());
        }
        columns.push(col);
    }
    let rows_total = row_index.len();
    let mut rows = vec![vec![BigRational::zero(); basis.len()]; rows_total];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            rows[*i][j] = c.clone();
        }
    }
    basis.len() - rank(&rows, basis.len())
}

/// Check the enveloping-algebra dimension identity: primitive
/// dimensions from the nullspace, pushed through the partition
/// formula, must reproduce the enumerated dimensions. For the multiset
/// kinds additionally verify the primitive basis description
/// (single-child-root trees, `p_n = M·a_{n-1}`).
pub fn verify_milnor_moore(family: &FamilyId, upto: usize) -> VerificationReport {
    let start = Instant::now();
    let a: Vec<BigInt> = (0..=upto)
        .map(|d| BigInt::from(enumerate_trees(family, d).len()))
        .collect();
    let p: Vec<BigInt> = (1..=upto)
        .map(|n| BigInt::from(primitive_space_dimension(family, n)))
        .collect();

    let mut pbw = Check::new("pbw_dimension_identity");
    let derived = pbw_dimensions(&p, upto);
    for n in 0..=upto {
        pbw.record(derived[n] == a[n], || {
            format!(
                "degree {n}: pbw={} enumerated={} (p={p:?})",
                derived[n], a[n]
            )
        });
    }

    let mut checks = vec![pbw];
    if family.structure() == StructureKind::Multiset {
        let m = BigInt::from(family.label_count());
        let mut single = Check::new("primitive_basis_single_child");
        for n in 1..=upto {
            single.record(p[n - 1] == &m * &a[n - 1], || {
                format!(
                    "degree {n}: nullity={} M·a[n-1]={}",
                    p[n - 1],
                    &m * &a[n - 1]
                )
            });
            for t in enumerate_trees(family, n) {
                let is_single = t.root_child_count() == 1;
                let prim = TreeVector::from_tree(t.clone()).is_primitive();
                single.record(is_single == prim, || {
                    format!("t={t}: single_child={is_single} primitive={prim}")
                });
            }
        }
        checks.push(single);
    }
    report("milnor-moore", family, upto, checks, start)
}

/// Freeness over the indecomposables for the unique-decomposition
/// families: generator dimension identity, triangularity with respect
/// to the root-arity filtration, and global unique factorization.
pub fn verify_freeness(family: &FamilyId, upto: usize) -> Result<VerificationReport, Error> {
    if family.structure() == StructureKind::Multiset {
        return Err(Error::NoUniqueDecomposition(family.to_string()));
    }
    let start = Instant::now();
    let basis: Vec<Vec<CanonicalTree>> = (0..=upto).map(|d| enumerate_trees(family, d)).collect();
    let a: Vec<BigInt> = basis.iter().map(|b| BigInt::from(b.len())).collect();
    let indec: Vec<Vec<CanonicalTree>> = basis
        .iter()
        .map(|b| b.iter().filter(|t| is_indecomposable(t)).cloned().collect())
        .collect();
    let g: Vec<BigInt> = indec.iter().map(|b| BigInt::from(b.len())).collect();

    // a_n = Σ g_i a_{n-i}, plus the family-specific generator counts.
    let mut dims = Check::new("generator_dimension_identity");
    for n in 1..=upto {
        let mut s = BigInt::zero();
        for i in 1..=n {
            s += &g[i] * &a[n - i];
        }
        dims.record(s == a[n], || {
            format!("degree {n}: Σ g_i a_(n-i) = {s}, a_n = {}", a[n])
        });
    }
    match family.structure() {
        StructureKind::Sequence => {
            let m = BigInt::from(family.label_count());
            for n in 1..=upto {
                dims.record(g[n] == &m * &a[n - 1], || {
                    format!("degree {n}: g_n={} M·a_(n-1)={}", g[n], &m * &a[n - 1])
                });
            }
        }
        StructureKind::Heap => {
            if family.label_count() == 1 {
                let rec = indecomposable_counts(upto);
                for n in 1..=upto {
                    dims.record(g[n] == rec[n - 1], || {
                        format!(
                            "degree {n}: exhaustive g_n={} recurrence={}",
                            g[n],
                            rec[n - 1]
                        )
                    });
                }
            }
        }
        StructureKind::Multiset => unreachable!(),
    }

    // F_p · F_q ⊆ F_{p+q} on all basis pairs within the bound.
    let mut subadd = Check::new("filtration_subadditivity");
    let all: Vec<&CanonicalTree> = basis.iter().flatten().collect();
    for x in &all {
        for y in &all {
            if x.degree() + y.degree() > upto {
                continue;
            }
            let cap =
                FiltrationLevel(FiltrationLevel::of_tree(x).0 + FiltrationLevel::of_tree(y).0);
            let prod = multiply_trees(x, y).expect("same family");
            subadd.record(cap.contains(&prod), || {
                format!("x={x} y={y} product exceeds filtration level {}", cap.0)
            });
        }
    }

    // Full product of a factor sequence = ⊙-chain + strictly lower
    // filtration terms, with the chain's coefficient exactly 1.
    let mut tri = Check::new("triangularity");
    let mut uf = Check::new("unique_factorization");
    let mut sequences: Vec<Vec<&CanonicalTree>> = vec![Vec::new()];
    let mut seen: BTreeMap<CanonicalTree, Vec<String>> = BTreeMap::new();
    // Enumerate all nonempty sequences of indecomposables with total
    // degree ≤ upto, depth-first in canonical order.
    fn extend<'a>(
        indec: &'a [Vec<CanonicalTree>],
        upto: usize,
        acc: &mut Vec<&'a CanonicalTree>,
        used: usize,
        out: &mut Vec<Vec<&'a CanonicalTree>>,
    ) {
        for d in 1..=(upto - used) {
            for t in &indec[d] {
                acc.push(t);
                out.push(acc.clone());
                extend(indec, upto, acc, used + d, out);
                acc.pop();
            }
        }
    }
    let mut acc = Vec::new();
    extend(&indec, upto, &mut acc, 0, &mut sequences);
    for seq in sequences.iter().filter(|s| !s.is_empty()) {
        let owned: Vec<CanonicalTree> = seq.iter().map(|t| (*t).clone()).collect();
        let leading = odot_chain(&owned).expect("same family");
        let arity_sum: usize = seq.iter().map(|t| t.root_child_count()).sum();
        let mut full = TreeVector::from_tree(owned[0].clone());
        for t in &owned[1..] {
            full = full
                .multiply(&TreeVector::from_tree(t.clone()))
                .expect("same family");
        }
        let diff = full
            .minus(&TreeVector::from_tree(leading.clone()))
            .expect("same family");
        let ok = leading.root_child_count() == arity_sum
            && full.coefficient(&leading) == Coefficient::one()
            && FiltrationLevel(arity_sum as i64 - 1).contains(&diff);
        tri.record(ok, || {
            format!(
                "sequence {:?}: product {full} vs leading {leading}",
                seq_to_string(seq)
            )
        });
        let key = format!("{:?}", seq_to_string(seq));
        seen.entry(leading).or_default().push(key);
    }
    // Distinct sequences give distinct leading terms, and they
    // exhaust each graded piece: Σ counts = a_n per degree.
    let mut per_degree: Vec<BigInt> = vec![BigInt::zero(); upto + 1];
    for (tree, sources) in &seen {
        uf.record(sources.len() == 1, || {
            format!("{tree} factors as each of {sources:?}")
        });
        per_degree[tree.degree()] += BigInt::one();
    }
    for n in 1..=upto {
        uf.record(per_degree[n] == a[n], || {
            format!(
                "degree {n}: {} distinct ⊙-products, a_n = {}",
                per_degree[n], a[n]
            )
        });
    }
    // factor_odot inverts the chain on every basis tree.
    for bucket in basis.iter().skip(1) {
        for t in bucket {
            let factors = factor_odot(t).expect("nonunit tree");
            let ok = factors.iter().all(is_indecomposable)
                && odot_chain(&factors).expect("same family") == *t;
            uf.record(ok, || format!("t={t} factors={factors:?}"));
        }
    }

    Ok(report(
        "freeness",
        family,
        upto,
        vec![dims, subadd, tri, uf],
        start,
    ))
}

fn seq_to_string(seq: &[&CanonicalTree]) -> Vec<String> {
    seq.iter().map(|t| t.to_string()).collect()
}

/// The associated-graded structure: ⊙ is the top root-arity part of
/// the product, and the coproduct is still multiplicative for ⊙.
pub fn verify_associated_graded(family: &FamilyId, upto: usize) -> VerificationReport {
    let start = Instant::now();
    let all: Vec<CanonicalTree> = (0..=upto)
        .flat_map(|d| enumerate_trees(family, d))
        .collect();

    let mut top = Check::new("odot_is_top_filtration_part");
    let mut compat = Check::new("coproduct_odot_multiplicativity");
    for t1 in &all {
        for t2 in &all {
            if t1.degree() + t2.degree() > upto {
                continue;
            }
            let cap = t1.root_child_count() + t2.root_child_count();
            let glued = odot(t1, t2).expect("same family");
            let prod = multiply_trees(t1, t2).expect("same family");
            let mut top_part = TreeVector::zero(*family);
            for (t, c) in prod.terms() {
                if t.root_child_count() == cap {
                    top_part = top_part
                        .plus(&TreeVector::from_tree(t.clone()).scaled(c))
                        .expect("same family");
                }
            }
            top.record(top_part == TreeVector::from_tree(glued.clone()), || {
                format!("t1={t1} t2={t2} top part {top_part} vs ⊙ {glued}")
            });

            let lhs = coproduct_tree(&glued);
            let mut rhs = TensorVector::zero(*family);
            for ((l1, r1), c1) in coproduct_tree(t1).terms() {
                for ((l2, r2), c2) in coproduct_tree(t2).terms() {
                    rhs.add_term(
                        odot(l1, l2).expect("same family"),
                        odot(r1, r2).expect("same family"),
                        c1 * c2,
                    );
                }
            }
            compat.record(lhs == rhs, || {
                format!("t1={t1} t2={t2} Δ(t1⊙t2)={lhs} Δ(t1)⊙Δ(t2)={rhs}")
            });
        }
    }
    report("associated-graded", family, upto, vec![top, compat], start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_axioms_small() {
        for family in [
            FamilyId::unordered(),
            FamilyId::ordered(),
            FamilyId::heap_ordered(),
            FamilyId::labeled(2).unwrap(),
        ] {
            let r = verify_family_axioms(&family, 3);
            assert!(r.all_ok(), "{}", r.summary());
            assert!(r.checks.iter().all(|c| c.instances > 0));
        }
    }

    #[test]
    fn hopf_axioms_small() {
        for family in [
            FamilyId::unordered(),
            FamilyId::ordered(),
            FamilyId::heap_ordered(),
            FamilyId::labeled(2).unwrap(),
            FamilyId::labeled_ordered(2).unwrap(),
            FamilyId::labeled_heap_ordered(2).unwrap(),
        ] {
            let r = verify_hopf_axioms(&family, 3);
            assert!(r.all_ok(), "{}", r.summary());
        }
    }

    #[test]
    fn primitive_dimensions_match_theorems() {
        let t = FamilyId::unordered();
        assert_eq!(primitive_space_dimension(&t, 3), 2);
        let lt2 = FamilyId::labeled(2).unwrap();
        assert_eq!(primitive_space_dimension(&lt2, 1), 2);
        let ot = FamilyId::ordered();
        assert_eq!(primitive_space_dimension(&ot, 3), 3);
    }

    #[test]
    fn milnor_moore_small() {
        for family in [FamilyId::unordered(), FamilyId::heap_ordered()] {
            let r = verify_milnor_moore(&family, 4);
            assert!(r.all_ok(), "{}", r.summary());
        }
        let r = verify_milnor_moore(&FamilyId::labeled(2).unwrap(), 3);
        assert!(r.all_ok(), "{}", r.summary());
    }

    #[test]
    fn freeness_small() {
        for family in [FamilyId::ordered(), FamilyId::heap_ordered()] {
            let r = verify_freeness(&family, 3).unwrap();
            assert!(r.all_ok(), "{}", r.summary());
        }
        assert!(matches!(
            verify_freeness(&FamilyId::unordered(), 3),
            Err(Error::NoUniqueDecomposition(_))
        ));
    }

    #[test]
    fn associated_graded_small() {
        for (family, bound) in [
            (FamilyId::ordered(), 4),
            (FamilyId::heap_ordered(), 3),
            (FamilyId::unordered(), 3),
        ] {
            let r = verify_associated_graded(&family, bound);
            assert!(r.all_ok(), "{}", r.summary());
        }
    }

    #[test]
    fn filtration_levels() {
        let fam = FamilyId::unordered();
        let trees: Vec<_> = (0..=3).flat_map(|d| enumerate_trees(&fam, d)).collect();
        let bottom = FiltrationLevel(-1);
        for t in &trees {
            assert!(!bottom.contains_tree(t), "F_(-1) holds no basis tree");
            assert!(FiltrationLevel::of_tree(t).contains_tree(t));
        }
        let zero = TreeVector::zero(fam);
        assert!(bottom.contains(&zero), "F_(-1) is exactly zero");
        assert_eq!(FiltrationLevel::of_vector(&zero), bottom);
        let star = crate::text::parse_tree(fam, "(()()())").unwrap();
        assert_eq!(FiltrationLevel::of_tree(&star), FiltrationLevel(3));
    }

    #[test]
    fn report_json_shape() {
        let r = verify_hopf_axioms(&FamilyId::unordered(), 2);
        let j = r.to_json();
        assert_eq!(j["suite"], "hopf-axioms");
        assert_eq!(j["family"], "T");
        assert_eq!(j["bound"], 2);
        assert!(j["checks"][0]["ok"].as_bool().unwrap());
        assert!(j["checks"][0]["instances"].as_u64().unwrap() > 0);
        assert!(j["checks"][0]["counterexample"].is_null());
        assert!(
            j.get("wall").is_none(),
            "wall time stays out of the stable format"
        );
    }
}
