//! Canonical representations of the six tree families.
//!
//! A tree family pairs rooted trees with extra structure (child order,
//! a global heap order, node labels). Values here are always stored in
//! canonical form, so `==` on [`CanonicalTree`] / [`CanonicalForest`]
//! decides equality in the family, and the derived `Ord` gives the
//! deterministic term order used everywhere else.
//!
//! Node identifiers are positions in a fixed traversal of the canonical
//! form: preorder for the nested kinds (T, LT, OT, LOT) and the heap
//! numbering for HOT/LHOT. The root is node 0 in both schemes. Forest
//! nodes are addressed as `(occurrence, local)` where `occurrence` is
//! the component position and `local` is the node's position inside its
//! component (preorder, or rank in the heap order).

use std::fmt;

use crate::error::Error;

/// How a family carries its order data.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StructureKind {
    /// Children form multisets; canonical form sorts them.
    Multiset,
    /// Children form sequences kept in their given order.
    Sequence,
    /// A total order on all nodes with parents preceding children.
    Heap,
}

/// The six supported family kinds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FamilyKind {
    Unordered,
    LabeledUnordered,
    Ordered,
    LabeledOrdered,
    HeapOrdered,
    LabeledHeapOrdered,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Unordered,
        FamilyKind::LabeledUnordered,
        FamilyKind::Ordered,
        FamilyKind::LabeledOrdered,
        FamilyKind::HeapOrdered,
        FamilyKind::LabeledHeapOrdered,
    ];

    /// Short code used by the CLI and serialized formats.
    pub fn code(self) -> &'static str {
        match self {
            FamilyKind::Unordered => "T",
            FamilyKind::LabeledUnordered => "LT",
            FamilyKind::Ordered => "OT",
            FamilyKind::LabeledOrdered => "LOT",
            FamilyKind::HeapOrdered => "HOT",
            FamilyKind::LabeledHeapOrdered => "LHOT",
        }
    }

    pub fn from_code(code: &str) -> Option<FamilyKind> {
        FamilyKind::ALL.iter().copied().find(|k| k.code() == code)
    }

    pub fn structure(self) -> StructureKind {
        match self {
            FamilyKind::Unordered | FamilyKind::LabeledUnordered => StructureKind::Multiset,
            FamilyKind::Ordered | FamilyKind::LabeledOrdered => StructureKind::Sequence,
            FamilyKind::HeapOrdered | FamilyKind::LabeledHeapOrdered => StructureKind::Heap,
        }
    }

    pub fn is_labeled(self) -> bool {
        matches!(
            self,
            FamilyKind::LabeledUnordered
                | FamilyKind::LabeledOrdered
                | FamilyKind::LabeledHeapOrdered
        )
    }
}

/// A family kind together with its label alphabet size M.
///
/// M is fixed at 1 for the unlabeled kinds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FamilyId {
    kind: FamilyKind,
    label_count: u32,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, label_count: u32) -> Result<Self, Error> {
        if label_count < 1 || (!kind.is_labeled() && label_count != 1) {
            return Err(Error::BadLabelCount);
        }
        Ok(FamilyId { kind, label_count })
    }

    pub fn unordered() -> Self {
        FamilyId {
            kind: FamilyKind::Unordered,
            label_count: 1,
        }
    }

    pub fn labeled(m: u32) -> Result<Self, Error> {
        FamilyId::new(FamilyKind::LabeledUnordered, m)
    }

    pub fn ordered() -> Self {
        FamilyId {
            kind: FamilyKind::Ordered,
            label_count: 1,
        }
    }

    pub fn labeled_ordered(m: u32) -> Result<Self, Error> {
        FamilyId::new(FamilyKind::LabeledOrdered, m)
    }

    pub fn heap_ordered() -> Self {
        FamilyId {
            kind: FamilyKind::HeapOrdered,
            label_count: 1,
        }
    }

    pub fn labeled_heap_ordered(m: u32) -> Result<Self, Error> {
        FamilyId::new(FamilyKind::LabeledHeapOrdered, m)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn label_count(&self) -> u32 {
        self.label_count
    }

    pub fn structure(&self) -> StructureKind {
        self.kind.structure()
    }

    pub fn is_labeled(&self) -> bool {
        self.kind.is_labeled()
    }

    /// The unique one-node tree e.
    pub fn unit_tree(&self) -> CanonicalTree {
        let repr = match self.structure() {
            StructureKind::Heap => TreeRepr::Heap {
                parents: Vec::new(),
                labels: Vec::new(),
            },
            _ => TreeRepr::Nested(Vec::new()),
        };
        CanonicalTree {
            family: *self,
            repr,
        }
    }

    /// The unique empty forest.
    pub fn empty_forest(&self) -> CanonicalForest {
        let repr = match self.structure() {
            StructureKind::Heap => ForestRepr::Heap {
                parents: Vec::new(),
                labels: Vec::new(),
            },
            _ => ForestRepr::Nested(Vec::new()),
        };
        CanonicalForest {
            family: *self,
            repr,
        }
    }

    pub(crate) fn check_same(&self, other: &FamilyId) -> Result<(), Error> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    fn check_label(&self, label: u32) -> Result<(), Error> {
        if label < 1 || label > self.label_count {
            Err(Error::LabelOutOfRange {
                label,
                max: self.label_count,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.is_labeled() {
            write!(f, "{}(M={})", self.kind.code(), self.label_count)
        } else {
            write!(f, "{}", self.kind.code())
        }
    }
}

/// A node below a root: its label and ordered list of child subtrees.
///
/// Labels are 1-based indices into the family alphabet; unlabeled kinds
/// store label 1 uniformly. The derived `Ord` compares the label first
/// and then the children lexicographically, which is exactly the sort
/// key of the multiset canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subtree {
    pub label: u32,
    pub children: Vec<Subtree>,
}

impl Subtree {
    pub fn leaf(label: u32) -> Self {
        Subtree {
            label,
            children: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Subtree::node_count).sum::<usize>()
    }
}

/// Recursively sort child lists into multiset canonical form.
pub(crate) fn sort_subtrees(children: &mut [Subtree]) {
    for c in children.iter_mut() {
        sort_subtrees(&mut c.children);
    }
    children.sort();
}

fn validate_subtree(family: &FamilyId, st: &Subtree) -> Result<(), Error> {
    family.check_label(st.label)?;
    for c in &st.children {
        validate_subtree(family, c)?;
    }
    Ok(())
}

/// Structure of a canonical tree. The root itself is implicit (and
/// unlabeled); only the material below it is stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TreeRepr {
    /// Root's children, sorted for multiset kinds.
    Nested(Vec<Subtree>),
    /// Heap numbering: node i+1 has parent `parents[i]` (0-based,
    /// `parents[i] <= i`) and label `labels[i]`; node 0 is the root.
    Heap {
        parents: Vec<usize>,
        labels: Vec<u32>,
    },
}

/// One basis element: a tree of a fixed family in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalTree {
    family: FamilyId,
    repr: TreeRepr,
}

impl CanonicalTree {
    /// Build a tree, canonicalizing multiset child order and validating
    /// labels and heap precedence.
    pub fn new(family: FamilyId, repr: TreeRepr) -> Result<Self, Error> {
        let repr = match (family.structure(), repr) {
            (StructureKind::Heap, TreeRepr::Heap { parents, labels }) => {
                if labels.len() != parents.len() {
                    return Err(Error::BadHeapOrder);
                }
                for (i, p) in parents.iter().enumerate() {
                    if *p > i {
                        return Err(Error::BadHeapOrder);
                    }
                }
                for l in &labels {
                    family.check_label(*l)?;
                }
                TreeRepr::Heap { parents, labels }
            }
            (StructureKind::Multiset, TreeRepr::Nested(mut children)) => {
                for c in &children {
                    validate_subtree(&family, c)?;
                }
                sort_subtrees(&mut children);
                TreeRepr::Nested(children)
            }
            (StructureKind::Sequence, TreeRepr::Nested(children)) => {
                for c in &children {
                    validate_subtree(&family, c)?;
                }
                TreeRepr::Nested(children)
            }
            _ => return Err(Error::BadHeapOrder),
        };
        Ok(CanonicalTree { family, repr })
    }

    /// Internal constructor for data already in canonical form.
    pub(crate) fn from_parts(family: FamilyId, repr: TreeRepr) -> Self {
        CanonicalTree { family, repr }
    }

    pub fn family(&self) -> &FamilyId {
        &self.family
    }

    pub fn repr(&self) -> &TreeRepr {
        &self.repr
    }

    pub fn node_count(&self) -> usize {
        match &self.repr {
            TreeRepr::Nested(children) => {
                1 + children.iter().map(Subtree::node_count).sum::<usize>()
            }
            TreeRepr::Heap { parents, .. } => 1 + parents.len(),
        }
    }

    /// Degree = node count - 1.
    pub fn degree(&self) -> usize {
        self.node_count() - 1
    }

    pub fn is_unit(&self) -> bool {
        self.node_count() == 1
    }

    /// Number of children of the root (the filtration level).
    pub fn root_child_count(&self) -> usize {
        match &self.repr {
            TreeRepr::Nested(children) => children.len(),
            TreeRepr::Heap { parents, .. } => parents.iter().filter(|p| **p == 0).count(),
        }
    }

    /// The underlying unstructured shape: labels and order data erased.
    pub fn underlying_shape(&self) -> Subtree {
        match &self.repr {
            TreeRepr::Nested(children) => {
                let mut root = Subtree {
                    label: 0,
                    children: children.clone(),
                };
                erase_labels(&mut root);
                sort_subtrees(&mut root.children);
                root
            }
            TreeRepr::Heap { parents, .. } => {
                let mut kids: Vec<Vec<usize>> = vec![Vec::new(); parents.len() + 1];
                for (i, p) in parents.iter().enumerate() {
                    kids[*p].push(i + 1);
                }
                let mut root = shape_from_lists(&kids, 0);
                sort_subtrees(&mut root.children);
                root
            }
        }
    }
}

fn erase_labels(st: &mut Subtree) {
    st.label = 0;
    for c in &mut st.children {
        erase_labels(c);
    }
}

fn shape_from_lists(kids: &[Vec<usize>], node: usize) -> Subtree {
    Subtree {
        label: 0,
        children: kids[node]
            .iter()
            .map(|c| shape_from_lists(kids, *c))
            .collect(),
    }
}

/// Structure of a canonical forest.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ForestRepr {
    /// Components with labeled roots; sorted for multiset kinds.
    Nested(Vec<Subtree>),
    /// Global heap numbering over all nodes: `parents[i]` is `None` for
    /// component roots and `Some(p)` with `p < i` otherwise; `labels[i]`
    /// labels node i (all forest nodes are labeled).
    Heap {
        parents: Vec<Option<usize>>,
        labels: Vec<u32>,
    },
}

/// A forest of a fixed family in canonical form.
///
/// Components are an occurrence sequence: a multiset forest with two
/// equal components still has two distinct occurrence positions, and
/// selectors and linking maps range over those positions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForest {
    family: FamilyId,
    repr: ForestRepr,
}

impl CanonicalForest {
    pub fn new(family: FamilyId, repr: ForestRepr) -> Result<Self, Error> {
        let repr = match (family.structure(), repr) {
            (StructureKind::Heap, ForestRepr::Heap { parents, labels }) => {
                if labels.len() != parents.len() {
                    return Err(Error::BadHeapOrder);
                }
                for (i, p) in parents.iter().enumerate() {
                    if let Some(p) = p {
                        if *p >= i {
                            return Err(Error::BadHeapOrder);
                        }
                    }
                }
                for l in &labels {
                    family.check_label(*l)?;
                }
                ForestRepr::Heap { parents, labels }
            }
            (StructureKind::Multiset, ForestRepr::Nested(mut comps)) => {
                for c in &comps {
                    validate_subtree(&family, c)?;
                }
                sort_subtrees(&mut comps);
                ForestRepr::Nested(comps)
            }
            (StructureKind::Sequence, ForestRepr::Nested(comps)) => {
                for c in &comps {
                    validate_subtree(&family, c)?;
                }
                ForestRepr::Nested(comps)
            }
            _ => return Err(Error::BadHeapOrder),
        };
        Ok(CanonicalForest { family, repr })
    }

    pub(crate) fn from_parts(family: FamilyId, repr: ForestRepr) -> Self {
        CanonicalForest { family, repr }
    }

    pub fn family(&self) -> &FamilyId {
        &self.family
    }

    pub fn repr(&self) -> &ForestRepr {
        &self.repr
    }

    pub fn is_empty(&self) -> bool {
        self.component_count() == 0
    }

    pub fn component_count(&self) -> usize {
        match &self.repr {
            ForestRepr::Nested(comps) => comps.len(),
            ForestRepr::Heap { parents, .. } => parents.iter().filter(|p| p.is_none()).count(),
        }
    }

    pub fn node_count(&self) -> usize {
        match &self.repr {
            ForestRepr::Nested(comps) => comps.iter().map(Subtree::node_count).sum(),
            ForestRepr::Heap { parents, .. } => parents.len(),
        }
    }

    pub fn component_size(&self, occurrence: usize) -> usize {
        match &self.repr {
            ForestRepr::Nested(comps) => comps[occurrence].node_count(),
            ForestRepr::Heap { parents, .. } => heap_components(parents)[occurrence].len(),
        }
    }

    /// Underlying shapes of the components, one per occurrence.
    pub fn underlying_shapes(&self) -> Vec<Subtree> {
        match &self.repr {
            ForestRepr::Nested(comps) => comps
                .iter()
                .map(|c| {
                    let mut s = c.clone();
                    erase_labels(&mut s);
                    sort_subtrees(&mut s.children);
                    s
                })
                .collect(),
            ForestRepr::Heap { parents, .. } => {
                let comps = heap_components(parents);
                let mut kids: Vec<Vec<usize>> = vec![Vec::new(); parents.len()];
                for (i, p) in parents.iter().enumerate() {
                    if let Some(p) = p {
                        kids[*p].push(i);
                    }
                }
                comps
                    .iter()
                    .map(|nodes| {
                        let mut s = shape_from_lists(&kids, nodes[0]);
                        sort_subtrees(&mut s.children);
                        s
                    })
                    .collect()
            }
        }
    }
}

/// Group heap-forest nodes into components, in occurrence order.
///
/// Components are ordered by their root's global number, which is also
/// the order in which `None` entries appear. Each component's node list
/// is ascending, so positions within it are the `local` addresses.
pub(crate) fn heap_components(parents: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut comp_of = vec![usize::MAX; parents.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for (i, p) in parents.iter().enumerate() {
        let c = match p {
            None => {
                comps.push(Vec::new());
                comps.len() - 1
            }
            Some(p) => comp_of[*p],
        };
        comp_of[i] = c;
        comps[c].push(i);
    }
    comps
}

/// A subforest: a strictly increasing set of component occurrences.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Selector(Vec<usize>);

impl Selector {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Selector(indices)
    }

    pub fn empty() -> Self {
        Selector(Vec::new())
    }

    /// All of `0..count`.
    pub fn full(count: usize) -> Self {
        Selector((0..count).collect())
    }

    /// Occurrences whose bit is set in `mask`.
    pub fn from_mask(mask: usize, count: usize) -> Self {
        Selector((0..count).filter(|i| mask & (1 << i) != 0).collect())
    }

    pub fn complement(&self, count: usize) -> Self {
        Selector((0..count).filter(|i| !self.contains(*i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// Position of `index` within the selection, if selected.
    pub fn position_of(&self, index: usize) -> Option<usize> {
        self.0.binary_search(&index).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}
