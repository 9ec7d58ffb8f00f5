//! Structural-axiom sweeps at the documented per-axiom bounds
//! (complementing the per-tree-node bounds of the acceptance suite):
//! restriction laws on forests up to 5 total nodes, the unit laws up
//! to degree 5, and attachment associativity with its bijection round
//! trips for all triples of total degree at most 5 (4 for HOT).

use treehopf::enumeration::{enumerate_forests, enumerate_trees};
use treehopf::family::{CanonicalForest, CanonicalTree, FamilyId, Selector};
use treehopf::linking::{
    all_linking_maps, all_selectors, reassociate_left, reassociate_right, LinkingMap,
};

fn forests_up_to(family: &FamilyId, max_nodes: usize) -> Vec<CanonicalForest> {
    (0..=max_nodes)
        .flat_map(|n| enumerate_forests(family, n))
        .collect()
}

fn standard_families() -> Vec<(FamilyId, usize)> {
    vec![
        (FamilyId::unordered(), 5),
        (FamilyId::labeled(2).unwrap(), 5),
        (FamilyId::ordered(), 5),
        (FamilyId::heap_ordered(), 5),
        (FamilyId::labeled_ordered(2).unwrap(), 4),
        (FamilyId::labeled_heap_ordered(2).unwrap(), 4),
    ]
}

#[test]
fn restriction_laws_to_five_nodes() {
    for (family, bound) in standard_families() {
        for w in forests_up_to(&family, bound) {
            let k = w.component_count();
            assert_eq!(
                w.restrict(&Selector::full(k)).unwrap(),
                w,
                "V|V = V for {w}"
            );
            for v_sel in all_selectors(k) {
                let wv = w.restrict(&v_sel).unwrap();
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
                            .map(|i| v_sel.position_of(i).unwrap())
                            .collect(),
                    );
                    assert_eq!(
                        w.restrict(&u_sel).unwrap(),
                        wv.restrict(&inner).unwrap(),
                        "W|U = (W|V)|U for W={w} V={v_sel} U={u_sel}"
                    );
                }
            }
        }
    }
}

#[test]
fn unit_laws_to_degree_five() {
    for (family, bound) in standard_families() {
        for degree in 0..=bound {
            for t in enumerate_trees(&family, degree) {
                assert_eq!(t.del_root().forest.lift_tree(), t);
                let kept = t
                    .attach(&family.empty_forest(), &LinkingMap::empty())
                    .unwrap()
                    .tree;
                assert_eq!(kept, t);
            }
        }
        for u in forests_up_to(&family, bound) {
            assert_eq!(u.lift_tree().del_root().forest, u);
        }
    }
}

fn attach_associativity_sweep(family: &FamilyId, max_total_degree: usize) {
    let trees: Vec<CanonicalTree> = (0..=max_total_degree)
        .flat_map(|d| enumerate_trees(family, d))
        .collect();
    for t1 in &trees {
        let x1 = t1.del_root();
        for t2 in &trees {
            if t1.degree() + t2.degree() > max_total_degree {
                continue;
            }
            let y2 = t2.del_root();
            for t3 in &trees {
                if t1.degree() + t2.degree() + t3.degree() > max_total_degree {
                    continue;
                }
                for d in all_linking_maps(x1.forest.component_count(), t2.node_count()) {
                    let ar1 = t2.attach(&x1.forest, &d).unwrap();
                    let dr12 = ar1.tree.del_root();
                    for e in all_linking_maps(dr12.forest.component_count(), t3.node_count()) {
                        let lhs = t3.attach(&dr12.forest, &e).unwrap().tree;
                        let (f, g) = reassociate_right(t1, t2, t3, &d, &e).unwrap();
                        let inner = t3.attach(&y2.forest, &f).unwrap().tree;
                        let rhs = inner.attach(&x1.forest, &g).unwrap().tree;
                        assert_eq!(lhs, rhs, "t1={t1} t2={t2} t3={t3} d={d} e={e}");
                        let back = reassociate_left(t1, t2, t3, &f, &g).unwrap();
                        assert_eq!(back, (d.clone(), e.clone()));
                    }
                }
                for f in all_linking_maps(y2.forest.component_count(), t3.node_count()) {
                    let t23 = t3.attach(&y2.forest, &f).unwrap().tree;
                    for g in all_linking_maps(x1.forest.component_count(), t23.node_count()) {
                        let (d, e) = reassociate_left(t1, t2, t3, &f, &g).unwrap();
                        let back = reassociate_right(t1, t2, t3, &d, &e).unwrap();
                        assert_eq!(back, (f.clone(), g.clone()));
                    }
                }
            }
        }
    }
}

#[test]
fn attach_associativity_total_degree_five() {
    attach_associativity_sweep(&FamilyId::unordered(), 5);
    attach_associativity_sweep(&FamilyId::ordered(), 5);
    attach_associativity_sweep(&FamilyId::labeled(2).unwrap(), 5);
}

#[test]
fn attach_associativity_heap_total_degree_four() {
    attach_associativity_sweep(&FamilyId::heap_ordered(), 4);
}
