//! The four family operations: root deletion, restriction, attachment,
//! and the unit elements (on [`FamilyId`]).
//!
//! `del_root` and `attach` return bookkeeping alongside their result:
//! where every input node ended up, and (via [`AttachResult::origin`])
//! where every output node came from. Restriction needs no bookkeeping
//! because `(occurrence, local)` addresses are stable under it.

use crate::error::Error;
use crate::family::{
    heap_components, CanonicalForest, CanonicalTree, ForestRepr, Selector, StructureKind, Subtree,
    TreeRepr,
};
use crate::linking::LinkingMap;

/// Result of deleting the root of a tree.
#[derive(Clone, Debug)]
pub struct DelRootResult {
    pub forest: CanonicalForest,
    /// For each tree node, its `(occurrence, local)` address in the
    /// forest; `None` for the root.
    node_loc: Vec<Option<(usize, usize)>>,
    /// Inverse map: tree node at each forest address.
    loc_to_node: Vec<Vec<usize>>,
}

impl DelRootResult {
    pub fn node_location(&self, node: usize) -> Option<(usize, usize)> {
        self.node_loc[node]
    }

    /// The occurrence whose component root is `node`, if `node` is a
    /// child of the deleted root.
    pub fn occurrence_of_child(&self, node: usize) -> Option<usize> {
        match self.node_loc[node] {
            Some((occ, 0)) => Some(occ),
            _ => None,
        }
    }

    /// Tree node at forest address `(occurrence, local)`.
    pub fn node_at(&self, occurrence: usize, local: usize) -> usize {
        self.loc_to_node[occurrence][local]
    }
}

/// Provenance of a node of an attachment result.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeOrigin {
    /// Node of the base tree.
    Base(usize),
    /// Node of the attached forest, by forest address.
    Component { occurrence: usize, local: usize },
}

/// Result of attaching a forest to a tree along a linking map.
#[derive(Clone, Debug)]
pub struct AttachResult {
    pub tree: CanonicalTree,
    base_node_map: Vec<usize>,
    comp_node_maps: Vec<Vec<usize>>,
    origins: Vec<NodeOrigin>,
}

impl AttachResult {
    /// Image in the result of a node of the base tree.
    pub fn base_node(&self, node: usize) -> usize {
        self.base_node_map[node]
    }

    /// Image in the result of forest node `(occurrence, local)`.
    pub fn component_node(&self, occurrence: usize, local: usize) -> usize {
        self.comp_node_maps[occurrence][local]
    }

    pub fn origin(&self, node: usize) -> NodeOrigin {
        self.origins[node]
    }
}

impl CanonicalTree {
    /// Delete the root; the children become the forest components with
    /// order data inherited from the tree.
    pub fn del_root(&self) -> DelRootResult {
        match self.repr() {
            TreeRepr::Nested(children) => {
                let mut node_loc = vec![None; self.node_count()];
                let mut loc_to_node = Vec::with_capacity(children.len());
                let mut next = 1;
                for (occ, child) in children.iter().enumerate() {
                    let size = child.node_count();
                    let mut nodes = Vec::with_capacity(size);
                    for local in 0..size {
                        node_loc[next + local] = Some((occ, local));
                        nodes.push(next + local);
                    }
                    loc_to_node.push(nodes);
                    next += size;
                }
                let forest = CanonicalForest::from_parts(
                    *self.family(),
                    ForestRepr::Nested(children.clone()),
                );
                DelRootResult {
                    forest,
                    node_loc,
                    loc_to_node,
                }
            }
            TreeRepr::Heap { parents, labels } => {
                let fparents: Vec<Option<usize>> = parents
                    .iter()
                    .map(|p| if *p == 0 { None } else { Some(*p - 1) })
                    .collect();
                let comps = heap_components(&fparents);
                let mut node_loc = vec![None; self.node_count()];
                let mut loc_to_node = Vec::with_capacity(comps.len());
                for (occ, nodes) in comps.iter().enumerate() {
                    let mut tree_nodes = Vec::with_capacity(nodes.len());
                    for (local, g) in nodes.iter().enumerate() {
                        node_loc[g + 1] = Some((occ, local));
                        tree_nodes.push(g + 1);
                    }
                    loc_to_node.push(tree_nodes);
                }
                let forest = CanonicalForest::from_parts(
                    *self.family(),
                    ForestRepr::Heap {
                        parents: fparents,
                        labels: labels.clone(),
                    },
                );
                DelRootResult {
                    forest,
                    node_loc,
                    loc_to_node,
                }
            }
        }
    }

    /// Attach each component of `forest` below the node of `self` that
    /// `map` assigns to it.
    ///
    /// Sequence kinds: newly linked children follow the original
    /// children of their node, keeping the forest order among
    /// themselves. Heap kinds: all forest nodes follow all base nodes,
    /// keeping both internal orders. Multiset kinds re-canonicalize.
    pub fn attach(
        &self,
        forest: &CanonicalForest,
        map: &LinkingMap,
    ) -> Result<AttachResult, Error> {
        self.family().check_same(forest.family())?;
        let components = forest.component_count();
        if map.len() != components {
            return Err(Error::LinkingArity {
                targets: map.len(),
                components,
            });
        }
        let nodes = self.node_count();
        for t in map.targets() {
            if *t >= nodes {
                return Err(Error::NodeOutOfRange { node: *t, nodes });
            }
        }
        match self.family().structure() {
            StructureKind::Heap => Ok(self.attach_heap(forest, map)),
            _ => Ok(self.attach_nested(forest, map)),
        }
    }

    fn attach_heap(&self, forest: &CanonicalForest, map: &LinkingMap) -> AttachResult {
        let (tparents, tlabels) = match self.repr() {
            TreeRepr::Heap { parents, labels } => (parents, labels),
            _ => unreachable!(),
        };
        let (fparents, flabels) = match forest.repr() {
            ForestRepr::Heap { parents, labels } => (parents, labels),
            _ => unreachable!(),
        };
        let m = self.node_count();
        let comps = heap_components(fparents);
        let mut occ_of_root = vec![usize::MAX; fparents.len()];
        for (occ, nodes) in comps.iter().enumerate() {
            occ_of_root[nodes[0]] = occ;
        }
        let mut parents = Vec::with_capacity(tparents.len() + fparents.len());
        parents.extend_from_slice(tparents);
        for (g, p) in fparents.iter().enumerate() {
            parents.push(match p {
                Some(p) => m + p,
                None => map.target(occ_of_root[g]),
            });
        }
        let mut labels = Vec::with_capacity(parents.len());
        labels.extend_from_slice(tlabels);
        labels.extend_from_slice(flabels);
        let tree = CanonicalTree::from_parts(*self.family(), TreeRepr::Heap { parents, labels });

        let base_node_map: Vec<usize> = (0..m).collect();
        let comp_node_maps: Vec<Vec<usize>> = comps
            .iter()
            .map(|nodes| nodes.iter().map(|g| m + g).collect())
            .collect();
        let mut origins = vec![NodeOrigin::Base(0); m + fparents.len()];
        for (i, o) in origins.iter_mut().enumerate().take(m) {
            *o = NodeOrigin::Base(i);
        }
        for (occ, nodes) in comps.iter().enumerate() {
            for (local, g) in nodes.iter().enumerate() {
                origins[m + g] = NodeOrigin::Component {
                    occurrence: occ,
                    local,
                };
            }
        }
        AttachResult {
            tree,
            base_node_map,
            comp_node_maps,
            origins,
        }
    }

    fn attach_nested(&self, forest: &CanonicalForest, map: &LinkingMap) -> AttachResult {
        let base_children = match self.repr() {
            TreeRepr::Nested(children) => children,
            _ => unreachable!(),
        };
        let fcomps = match forest.repr() {
            ForestRepr::Nested(comps) => comps,
            _ => unreachable!(),
        };

        // Arena ids: base tree in preorder (root = 0), then each
        // component in preorder. Parents always precede children.
        let mut labels: Vec<u32> = vec![0];
        let mut kids: Vec<Vec<usize>> = vec![Vec::new()];
        fn load(labels: &mut Vec<u32>, kids: &mut Vec<Vec<usize>>, st: &Subtree) -> usize {
            let id = labels.len();
            labels.push(st.label);
            kids.push(Vec::new());
            for c in &st.children {
                let cid = load(labels, kids, c);
                kids[id].push(cid);
            }
            id
        }
        for c in base_children {
            let cid = load(&mut labels, &mut kids, c);
            kids[0].push(cid);
        }
        let m = labels.len();
        debug_assert_eq!(m, self.node_count());
        let mut comp_roots = Vec::with_capacity(fcomps.len());
        let mut comp_sizes = Vec::with_capacity(fcomps.len());
        for (occ, comp) in fcomps.iter().enumerate() {
            let rid = load(&mut labels, &mut kids, comp);
            kids[map.target(occ)].push(rid);
            comp_roots.push(rid);
            comp_sizes.push(comp.node_count());
        }
        let n = labels.len();

        // Canonical subtree of every arena node, bottom-up; multiset
        // kinds sort child ids stably by that key.
        let sorted = self.family().structure() == StructureKind::Multiset;
        let mut key: Vec<Option<Subtree>> = vec![None; n];
        for i in (0..n).rev() {
            if sorted {
                kids[i].sort_by(|a, b| key[*a].cmp(&key[*b]));
            }
            let children: Vec<Subtree> = kids[i]
                .iter()
                .map(|c| key[*c].clone().expect("child key computed"))
                .collect();
            key[i] = Some(Subtree {
                label: labels[i],
                children,
            });
        }

        // Final preorder numbering over the (possibly re-sorted) arena.
        let mut new_id = vec![usize::MAX; n];
        let mut stack = vec![0usize];
        let mut next = 0;
        while let Some(i) = stack.pop() {
            new_id[i] = next;
            next += 1;
            for c in kids[i].iter().rev() {
                stack.push(*c);
            }
        }

        let root_key = key[0].take().expect("root key computed");
        let tree = CanonicalTree::from_parts(*self.family(), TreeRepr::Nested(root_key.children));

        let base_node_map: Vec<usize> = (0..m).map(|i| new_id[i]).collect();
        let comp_node_maps: Vec<Vec<usize>> = comp_roots
            .iter()
            .zip(&comp_sizes)
            .map(|(rid, size)| (0..*size).map(|l| new_id[rid + l]).collect())
            .collect();
        let mut origins = vec![NodeOrigin::Base(0); n];
        for (i, id) in new_id.iter().enumerate().take(m) {
            origins[*id] = NodeOrigin::Base(i);
        }
        for (occ, (rid, size)) in comp_roots.iter().zip(&comp_sizes).enumerate() {
            for l in 0..*size {
                origins[new_id[rid + l]] = NodeOrigin::Component {
                    occurrence: occ,
                    local: l,
                };
            }
        }
        AttachResult {
            tree,
            base_node_map,
            comp_node_maps,
            origins,
        }
    }
}

impl CanonicalForest {
    /// Restriction to the selected component occurrences, with induced
    /// order data (heap numbering compressed, preserving relative
    /// order).
    pub fn restrict(&self, sel: &Selector) -> Result<CanonicalForest, Error> {
        let count = self.component_count();
        if let Some(&max) = sel.indices().last() {
            if max >= count {
                return Err(Error::ComponentOutOfRange {
                    index: max,
                    components: count,
                });
            }
        }
        match self.repr() {
            ForestRepr::Nested(comps) => {
                let picked: Vec<Subtree> = sel.iter().map(|i| comps[i].clone()).collect();
                Ok(CanonicalForest::from_parts(
                    *self.family(),
                    ForestRepr::Nested(picked),
                ))
            }
            ForestRepr::Heap { parents, labels } => {
                let comps = heap_components(parents);
                let mut kept: Vec<usize> = Vec::new();
                for occ in sel.iter() {
                    kept.extend_from_slice(&comps[occ]);
                }
                kept.sort_unstable();
                let mut new_index = vec![usize::MAX; parents.len()];
                for (ni, g) in kept.iter().enumerate() {
                    new_index[*g] = ni;
                }
                let new_parents: Vec<Option<usize>> = kept
                    .iter()
                    .map(|g| parents[*g].map(|p| new_index[p]))
                    .collect();
                let new_labels: Vec<u32> = kept.iter().map(|g| labels[*g]).collect();
                Ok(CanonicalForest::from_parts(
                    *self.family(),
                    ForestRepr::Heap {
                        parents: new_parents,
                        labels: new_labels,
                    },
                ))
            }
        }
    }

    /// Attach every component to a fresh root: the inverse of
    /// [`CanonicalTree::del_root`].
    pub fn lift(&self) -> AttachResult {
        self.family()
            .unit_tree()
            .attach(self, &LinkingMap::constant_root(self.component_count()))
            .expect("attaching to the unit tree cannot fail")
    }

    pub fn lift_tree(&self) -> CanonicalTree {
        self.lift().tree
    }
}
