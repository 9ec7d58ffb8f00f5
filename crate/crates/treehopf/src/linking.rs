//! Linking maps and the bijections behind associativity of the product
//! and multiplicativity of the coproduct.
//!
//! A linking map assigns each component occurrence of a forest to a
//! node of a target tree. Attachment identifies nodes and occurrences
//! of its result with those of its inputs (via [`AttachResult`]
//! bookkeeping), and the four conversions here — `reassociate_right`
//! / `reassociate_left` on pairs of maps, `split_attachment` /
//! `merge_attachment` on attach-then-select data — are mutually inverse
//! relative to those identifications.

use crate::error::Error;
use crate::family::{CanonicalForest, CanonicalTree, Selector};
use crate::ops::{AttachResult, DelRootResult, NodeOrigin};

/// Assignment of each forest component occurrence to a target node.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LinkingMap {
    targets: Vec<usize>,
}

impl LinkingMap {
    pub fn new(targets: Vec<usize>) -> Self {
        LinkingMap { targets }
    }

    /// The unique map from the empty forest.
    pub fn empty() -> Self {
        LinkingMap {
            targets: Vec::new(),
        }
    }

    /// Every component to the root: the map `d0`, and also the unique
    /// map into the one-node tree.
    pub fn constant_root(components: usize) -> Self {
        LinkingMap {
            targets: vec![0; components],
        }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn target(&self, occurrence: usize) -> usize {
        self.targets[occurrence]
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }
}

impl std::fmt::Display for LinkingMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.targets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

/// All `nodes^components` linking maps, in lexicographic order.
pub fn all_linking_maps(components: usize, nodes: usize) -> Vec<LinkingMap> {
    assert!(nodes > 0, "target tree always has a root");
    let mut out = Vec::new();
    let mut current = vec![0usize; components];
    loop {
        out.push(LinkingMap::new(current.clone()));
        let mut i = components;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < nodes {
                break;
            }
            current[i] = 0;
        }
    }
}

/// All `2^components` subforest selectors, in mask order.
pub fn all_selectors(components: usize) -> Vec<Selector> {
    (0..(1usize << components))
        .map(|mask| Selector::from_mask(mask, components))
        .collect()
}

fn check_map(map: &LinkingMap, components: usize, nodes: usize) -> Result<(), Error> {
    if map.len() != components {
        return Err(Error::LinkingArity {
            targets: map.len(),
            components,
        });
    }
    for t in map.targets() {
        if *t >= nodes {
            return Err(Error::NodeOutOfRange { node: *t, nodes });
        }
    }
    Ok(())
}

fn check_selector(sel: &Selector, components: usize) -> Result<(), Error> {
    if let Some(&max) = sel.indices().last() {
        if max >= components {
            return Err(Error::ComponentOutOfRange {
                index: max,
                components,
            });
        }
    }
    Ok(())
}

/// Occurrence in `DelRoot(base ⇽ ...)` of the image of root child
/// number `j` of the base tree.
fn image_occurrence(
    base_delroot: &DelRootResult,
    attach: &AttachResult,
    result_delroot: &DelRootResult,
    j: usize,
) -> usize {
    let child = base_delroot.node_at(j, 0);
    result_delroot
        .occurrence_of_child(attach.base_node(child))
        .expect("image of a root child is again a root child")
}

/// From `d : DelRoot(t1) -> Nodes(t2)` and
/// `e : DelRoot(t2 ⇽_d DelRoot(t1)) -> Nodes(t3)`, build
/// `f : DelRoot(t2) -> Nodes(t3)` and
/// `g : DelRoot(t1) -> Nodes(t3 ⇽_f DelRoot(t2))`.
pub fn reassociate_right(
    t1: &CanonicalTree,
    t2: &CanonicalTree,
    t3: &CanonicalTree,
    d: &LinkingMap,
    e: &LinkingMap,
) -> Result<(LinkingMap, LinkingMap), Error> {
    t1.family().check_same(t2.family())?;
    t2.family().check_same(t3.family())?;
    let x1 = t1.del_root();
    let ar1 = t2.attach(&x1.forest, d)?;
    let dr12 = ar1.tree.del_root();
    check_map(e, dr12.forest.component_count(), t3.node_count())?;

    let y2 = t2.del_root();
    let f = LinkingMap::new(
        (0..y2.forest.component_count())
            .map(|j| e.target(image_occurrence(&y2, &ar1, &dr12, j)))
            .collect(),
    );
    let ar2 = t3.attach(&y2.forest, &f)?;

    let mut g = Vec::with_capacity(d.len());
    for i in 0..d.len() {
        if d.target(i) != 0 {
            // d lands on a non-root node of t2, which persists inside
            // t3 ⇽_f DelRoot(t2).
            let (occ, local) = y2.node_location(d.target(i)).expect("non-root node");
            g.push(ar2.component_node(occ, local));
        } else {
            // d lands on the root: the component survives into
            // DelRoot(t2 ⇽_d ...), where e sends it into t3.
            let u = dr12
                .occurrence_of_child(ar1.component_node(i, 0))
                .expect("root-linked component is a root child");
            g.push(ar2.base_node(e.target(u)));
        }
    }
    Ok((f, LinkingMap::new(g)))
}

/// Inverse of [`reassociate_right`].
pub fn reassociate_left(
    t1: &CanonicalTree,
    t2: &CanonicalTree,
    t3: &CanonicalTree,
    f: &LinkingMap,
    g: &LinkingMap,
) -> Result<(LinkingMap, LinkingMap), Error> {
    t1.family().check_same(t2.family())?;
    t2.family().check_same(t3.family())?;
    let y2 = t2.del_root();
    let ar2 = t3.attach(&y2.forest, f)?;
    let x1 = t1.del_root();
    check_map(g, x1.forest.component_count(), ar2.tree.node_count())?;

    let d = LinkingMap::new(
        (0..g.len())
            .map(|i| match ar2.origin(g.target(i)) {
                NodeOrigin::Component { occurrence, local } => y2.node_at(occurrence, local),
                NodeOrigin::Base(_) => 0,
            })
            .collect(),
    );
    let ar1 = t2
        .attach(&x1.forest, &d)
        .expect("d is valid by construction");
    let dr12 = ar1.tree.del_root();

    let mut e = vec![0usize; dr12.forest.component_count()];
    for (u, entry) in e.iter_mut().enumerate() {
        let root = dr12.node_at(u, 0);
        match ar1.origin(root) {
            NodeOrigin::Base(c) => {
                let j = y2.occurrence_of_child(c).expect("root child of t2");
                *entry = f.target(j);
            }
            NodeOrigin::Component { occurrence, .. } => match ar2.origin(g.target(occurrence)) {
                NodeOrigin::Base(w) => *entry = w,
                NodeOrigin::Component { .. } => {
                    unreachable!("components sent to the root have g landing in t3")
                }
            },
        }
    }
    Ok((d, LinkingMap::new(e)))
}

/// The data of one coproduct term of a product: how an attach-then-
/// select pair `(d, U)` splits into independent left/right halves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitParts {
    /// V: occurrences of `DelRoot(t)` on the left side.
    pub left_base: Selector,
    /// W: occurrences of the attached forest on the left side.
    pub left_forest: Selector,
    /// e: `X|W -> Nodes(lift(DelRoot(t)|V))`.
    pub left_links: LinkingMap,
    /// f: `X|(X∖W) -> Nodes(lift(DelRoot(t)|V^c))`.
    pub right_links: LinkingMap,
}

/// Split `(d, U)` — a linking map `d : X -> Nodes(t)` plus a subforest
/// `U` of `DelRoot(t ⇽_d X)` — into [`SplitParts`].
pub fn split_attachment(
    t: &CanonicalTree,
    x: &CanonicalForest,
    d: &LinkingMap,
    u: &Selector,
) -> Result<SplitParts, Error> {
    t.family().check_same(x.family())?;
    let ar = t.attach(x, d)?;
    let drx = ar.tree.del_root();
    check_selector(u, drx.forest.component_count())?;
    let dr_t = t.del_root();
    let base_comps = dr_t.forest.component_count();

    let left_base = Selector::new(
        (0..base_comps)
            .filter(|j| u.contains(image_occurrence(&dr_t, &ar, &drx, *j)))
            .collect(),
    );
    let mut left_forest_ids = Vec::new();
    for i in 0..x.component_count() {
        let keep = if d.target(i) == 0 {
            let occ = drx
                .occurrence_of_child(ar.component_node(i, 0))
                .expect("root-linked component is a root child");
            u.contains(occ)
        } else {
            let (occ, _) = dr_t.node_location(d.target(i)).expect("non-root node");
            left_base.contains(occ)
        };
        if keep {
            left_forest_ids.push(i);
        }
    }
    let left_forest = Selector::new(left_forest_ids);
    let right_base = left_base.complement(base_comps);

    let left_lift = dr_t.forest.restrict(&left_base)?.lift();
    let right_lift = dr_t.forest.restrict(&right_base)?.lift();
    let mut left_links = Vec::new();
    let mut right_links = Vec::new();
    for i in 0..x.component_count() {
        let in_left = left_forest.contains(i);
        let target = if d.target(i) == 0 {
            0
        } else {
            let (occ, local) = dr_t.node_location(d.target(i)).expect("non-root node");
            if in_left {
                left_lift.component_node(left_base.position_of(occ).expect("occ in V"), local)
            } else {
                right_lift.component_node(right_base.position_of(occ).expect("occ in V^c"), local)
            }
        };
        if in_left {
            left_links.push(target);
        } else {
            right_links.push(target);
        }
    }
    Ok(SplitParts {
        left_base,
        left_forest,
        left_links: LinkingMap::new(left_links),
        right_links: LinkingMap::new(right_links),
    })
}

/// Inverse of [`split_attachment`]: rebuild `(d, U)`.
pub fn merge_attachment(
    t: &CanonicalTree,
    x: &CanonicalForest,
    parts: &SplitParts,
) -> Result<(LinkingMap, Selector), Error> {
    t.family().check_same(x.family())?;
    let dr_t = t.del_root();
    let base_comps = dr_t.forest.component_count();
    let forest_comps = x.component_count();
    check_selector(&parts.left_base, base_comps)?;
    check_selector(&parts.left_forest, forest_comps)?;
    let right_base = parts.left_base.complement(base_comps);
    let right_forest = parts.left_forest.complement(forest_comps);

    let left_lift = dr_t.forest.restrict(&parts.left_base)?.lift();
    let right_lift = dr_t.forest.restrict(&right_base)?.lift();
    check_map(
        &parts.left_links,
        parts.left_forest.len(),
        left_lift.tree.node_count(),
    )?;
    check_map(
        &parts.right_links,
        right_forest.len(),
        right_lift.tree.node_count(),
    )?;

    let mut d = vec![0usize; forest_comps];
    let mut fill = |sel: &Selector,
                    links: &LinkingMap,
                    lift: &AttachResult,
                    base_sel: &Selector| {
        for (pos, i) in sel.iter().enumerate() {
            let val = links.target(pos);
            d[i] = if val == 0 {
                0
            } else {
                match lift.origin(val) {
                    NodeOrigin::Component { occurrence, local } => {
                        dr_t.node_at(base_sel.indices()[occurrence], local)
                    }
                    NodeOrigin::Base(_) => unreachable!("only the root of a lift is a base node"),
                }
            };
        }
    };
    fill(
        &parts.left_forest,
        &parts.left_links,
        &left_lift,
        &parts.left_base,
    );
    fill(&right_forest, &parts.right_links, &right_lift, &right_base);
    let d = LinkingMap::new(d);

    let ar = t.attach(x, &d).expect("d is valid by construction");
    let drx = ar.tree.del_root();
    let mut u_ids: Vec<usize> = parts
        .left_base
        .iter()
        .map(|j| image_occurrence(&dr_t, &ar, &drx, j))
        .collect();
    for i in parts.left_forest.iter() {
        if d.target(i) == 0 {
            u_ids.push(
                drx.occurrence_of_child(ar.component_node(i, 0))
                    .expect("root-linked component is a root child"),
            );
        }
    }
    Ok((d, Selector::new(u_ids)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyId;
    use crate::text::{parse_forest, parse_tree};

    #[test]
    fn map_enumeration_is_exhaustive_and_ordered() {
        let maps = all_linking_maps(2, 3);
        assert_eq!(maps.len(), 9);
        assert_eq!(maps[0], LinkingMap::new(vec![0, 0]));
        assert_eq!(maps[1], LinkingMap::new(vec![0, 1]));
        assert_eq!(maps[8], LinkingMap::new(vec![2, 2]));
        assert_eq!(all_linking_maps(0, 5).len(), 1);
        assert_eq!(all_selectors(3).len(), 8);
    }

    #[test]
    fn reassociate_hand_trace() {
        // t1 = t2 = t3 = (()), d sends the lone component to root(t2),
        // e sends both components to root(t3).
        let fam = FamilyId::unordered();
        let t = parse_tree(fam, "(())").unwrap();
        let d = LinkingMap::new(vec![0]);
        let e = LinkingMap::new(vec![0, 0]);
        let (f, g) = reassociate_right(&t, &t, &t, &d, &e).unwrap();
        assert_eq!(f, LinkingMap::new(vec![0]));
        assert_eq!(g, LinkingMap::new(vec![0]));
        let (d2, e2) = reassociate_left(&t, &t, &t, &f, &g).unwrap();
        assert_eq!(d2, d);
        assert_eq!(e2, e);
    }

    #[test]
    fn reassociate_preserves_non_root_targets() {
        // d into a non-root node: g equals d on that component.
        let fam = FamilyId::unordered();
        let t = parse_tree(fam, "(())").unwrap();
        let d = LinkingMap::new(vec![1]);
        for e_target in 0..2 {
            let e = LinkingMap::new(vec![e_target]);
            let (f, g) = reassociate_right(&t, &t, &t, &d, &e).unwrap();
            // Node 1 of t2 keeps its shifted identity inside
            // t3 ⇽_f DelRoot(t2); check the round trip instead of ids.
            let (d2, e2) = reassociate_left(&t, &t, &t, &f, &g).unwrap();
            assert_eq!((d2, e2), (d.clone(), e));
        }
    }

    #[test]
    fn reassociate_degenerate_first_tree() {
        // t1 = e: both maps on that side are empty, f = e.
        let fam = FamilyId::unordered();
        let e_tree = fam.unit_tree();
        let t = parse_tree(fam, "(())").unwrap();
        let d = LinkingMap::empty();
        let e = LinkingMap::new(vec![1]);
        let (f, g) = reassociate_right(&e_tree, &t, &t, &d, &e).unwrap();
        assert_eq!(f, LinkingMap::new(vec![1]));
        assert!(g.is_empty());
    }

    #[test]
    fn split_hand_trace() {
        // t = (()), X = {()}, d to root, U = the X component only.
        let fam = FamilyId::unordered();
        let t = parse_tree(fam, "(())").unwrap();
        let x = parse_forest(fam, "{()}").unwrap();
        let d = LinkingMap::new(vec![0]);
        // DelRoot(t ⇽_d X) = {(), ()}; the two occurrences are the image
        // of t's child and the X component, in canonical order. Identify
        // the X occurrence via the bookkeeping rather than guessing.
        let ar = t.attach(&x, &d).unwrap();
        let drx = ar.tree.del_root();
        let x_occ = drx.occurrence_of_child(ar.component_node(0, 0)).unwrap();
        let u = Selector::new(vec![x_occ]);
        let parts = split_attachment(&t, &x, &d, &u).unwrap();
        assert_eq!(parts.left_base, Selector::empty());
        assert_eq!(parts.left_forest, Selector::new(vec![0]));
        assert_eq!(parts.left_links, LinkingMap::new(vec![0]));
        assert!(parts.right_links.is_empty());
        let (d2, u2) = merge_attachment(&t, &x, &parts).unwrap();
        assert_eq!(d2, d);
        assert_eq!(u2, u);
    }

    #[test]
    fn split_full_and_empty_subforests() {
        let fam = FamilyId::unordered();
        let t = parse_tree(fam, "(()())").unwrap();
        let x = parse_forest(fam, "{(),(())}").unwrap();
        for d in all_linking_maps(2, t.node_count()) {
            let ar = t.attach(&x, &d).unwrap();
            let total = ar.tree.del_root().forest.component_count();
            let parts = split_attachment(&t, &x, &d, &Selector::full(total)).unwrap();
            assert_eq!(parts.left_base, Selector::full(2));
            assert_eq!(parts.left_forest, Selector::full(2));
            assert!(parts.right_links.is_empty());
            let parts = split_attachment(&t, &x, &d, &Selector::empty()).unwrap();
            assert_eq!(parts.left_base, Selector::empty());
            assert_eq!(parts.left_forest, Selector::empty());
            assert!(parts.left_links.is_empty());
        }
    }
}
