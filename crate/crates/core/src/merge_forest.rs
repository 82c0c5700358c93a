//! Merge forest: leaves are vertices, internal nodes are negative edges,
//! levels are event indices. Supports the six dynamic-forest-of-trees
//! operations (`root`, `cut`, `link`, `nca`, `change_val`, `subtree_min`)
//! in O(log n) amortized time via an Euler-tour sequence maintained in a
//! splay tree, with an explicit parent/children side structure for O(1)
//! adjacency lookups.
//!
//! The tour stores each node as an enter/leave occurrence pair. Depths are
//! maintained with lazy range-adds, so `nca(u, v)` is the minimum-depth
//! occurrence between `enter(u)` and `enter(v)`, and `subtree_min(v)` is a
//! value argmin over the contiguous segment `[enter(v), leave(v)]`.

const NONE: u32 = u32::MAX;
const NO_VALUE: i64 = i64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MfNode(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MergeForestError {
    #[error("node has no parent")]
    NoParent,
    #[error("nodes are in different trees")]
    DifferentTrees,
    #[error("nodes already in the same tree")]
    SameTree,
}

#[derive(Clone)]
struct Occ {
    parent: u32,
    ch: [u32; 2],
    node: u32,
    depth: i64,
    lazy: i64,
    min_depth: i64,
    min_depth_occ: u32,
    value: i64,
    min_value: i64,
    min_value_occ: u32,
}

#[derive(Clone)]
pub struct MergeForest {
    occs: Vec<Occ>,
    enter: Vec<u32>,
    leave: Vec<u32>,
    level: Vec<i64>,
    is_leaf: Vec<bool>,
    parent_of: Vec<u32>,
    children: Vec<Vec<u32>>,
    rotations: u64,
}

impl Default for MergeForest {
    fn default() -> Self {
        Self::new()
    }
}

impl MergeForest {
    pub fn new() -> Self {
        MergeForest {
            occs: Vec::new(),
            enter: Vec::new(),
            leave: Vec::new(),
            level: Vec::new(),
            is_leaf: Vec::new(),
            parent_of: Vec::new(),
            children: Vec::new(),
            rotations: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.enter.len()
    }

    pub fn is_empty(&self) -> bool {
        self.enter.is_empty()
    }

    pub fn rotations(&self) -> u64 {
        self.rotations
    }

    fn new_node(&mut self, level: i64, leaf: bool) -> MfNode {
        let id = self.enter.len() as u32;
        let e = self.occs.len() as u32;
        let l = e + 1;
        self.occs.push(Occ {
            parent: NONE,
            ch: [NONE, l],
            node: id,
            depth: 0,
            lazy: 0,
            min_depth: -1,
            min_depth_occ: l,
            value: if leaf { level } else { NO_VALUE },
            min_value: if leaf { level } else { NO_VALUE },
            min_value_occ: e,
        });
        self.occs.push(Occ {
            parent: e,
            ch: [NONE, NONE],
            node: id,
            depth: -1,
            lazy: 0,
            min_depth: -1,
            min_depth_occ: l,
            value: NO_VALUE,
            min_value: NO_VALUE,
            min_value_occ: l,
        });
        self.enter.push(e);
        self.leave.push(l);
        self.level.push(level);
        self.is_leaf.push(leaf);
        self.parent_of.push(NONE);
        self.children.push(Vec::new());
        MfNode(id)
    }

    /// Fresh isolated leaf; its subtree-min value starts at its level.
    pub fn new_leaf(&mut self, level: i64) -> MfNode {
        self.new_node(level, true)
    }

    /// Fresh isolated internal node (no value for subtree-min).
    pub fn new_internal(&mut self, level: i64) -> MfNode {
        self.new_node(level, false)
    }

    pub fn is_leaf(&self, v: MfNode) -> bool {
        self.is_leaf[v.0 as usize]
    }

    pub fn level(&self, v: MfNode) -> i64 {
        self.level[v.0 as usize]
    }

    pub fn set_level(&mut self, v: MfNode, level: i64) {
        self.level[v.0 as usize] = level;
    }

    pub fn parent(&self, v: MfNode) -> Option<MfNode> {
        let p = self.parent_of[v.0 as usize];
        (p != NONE).then_some(MfNode(p))
    }

    pub fn children_of(&self, v: MfNode) -> Vec<MfNode> {
        self.children[v.0 as usize].iter().map(|&c| MfNode(c)).collect()
    }

    // --- splay machinery over the euler tour -------------------------------

    fn apply_lazy(&mut self, x: u32, delta: i64) {
        let o = &mut self.occs[x as usize];
        o.depth += delta;
        o.min_depth += delta;
        o.lazy += delta;
    }

    fn push_down(&mut self, x: u32) {
        let lz = self.occs[x as usize].lazy;
        if lz != 0 {
            self.occs[x as usize].lazy = 0;
            for c in self.occs[x as usize].ch {
                if c != NONE {
                    self.apply_lazy(c, lz);
                }
            }
        }
    }

    fn pull(&mut self, x: u32) {
        let (mut md, mut mdo) = (self.occs[x as usize].depth, x);
        let (mut mv, mut mvo) = (self.occs[x as usize].value, x);
        for c in self.occs[x as usize].ch {
            if c != NONE {
                let co = &self.occs[c as usize];
                if co.min_depth < md {
                    md = co.min_depth;
                    mdo = co.min_depth_occ;
                }
                if co.min_value < mv {
                    mv = co.min_value;
                    mvo = co.min_value_occ;
                }
            }
        }
        let o = &mut self.occs[x as usize];
        o.min_depth = md;
        o.min_depth_occ = mdo;
        o.min_value = mv;
        o.min_value_occ = mvo;
    }

    fn splay_parent(&self, x: u32) -> Option<(u32, usize)> {
        let p = self.occs[x as usize].parent;
        if p == NONE {
            return None;
        }
        if self.occs[p as usize].ch[0] == x {
            Some((p, 0))
        } else {
            Some((p, 1))
        }
    }

    fn attach(&mut self, p: u32, c: u32, side: usize) {
        self.occs[p as usize].ch[side] = c;
        if c != NONE {
            self.occs[c as usize].parent = p;
        }
    }

    fn rotate(&mut self, x: u32) {
        self.rotations += 1;
        let (p, side) = self.splay_parent(x).expect("rotate at root");
        let g = self.splay_parent(p);
        let b = self.occs[x as usize].ch[1 - side];
        self.attach(p, b, side);
        match g {
            Some((gp, gside)) => self.attach(gp, x, gside),
            None => self.occs[x as usize].parent = NONE,
        }
        self.attach(x, p, 1 - side);
        self.pull(p);
        self.pull(x);
    }

    fn splay(&mut self, x: u32) {
        let mut path = vec![x];
        let mut cur = x;
        while let Some((p, _)) = self.splay_parent(cur) {
            path.push(p);
            cur = p;
        }
        for &n in path.iter().rev() {
            self.push_down(n);
        }
        while let Some((p, side)) = self.splay_parent(x) {
            if let Some((_, gside)) = self.splay_parent(p) {
                if side == gside {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            if self.splay_parent(x).is_some() {
                self.rotate(x);
            }
        }
    }

    /// Splay root of the sequence containing `x`.
    fn seq_root(&mut self, x: u32) -> u32 {
        self.splay(x);
        x
    }

    fn leftmost(&mut self, x: u32) -> u32 {
        self.splay(x);
        let mut cur = x;
        while self.occs[cur as usize].ch[0] != NONE {
            cur = self.occs[cur as usize].ch[0];
        }
        self.splay(cur);
        cur
    }

    fn rightmost(&mut self, x: u32) -> u32 {
        self.splay(x);
        let mut cur = x;
        while self.occs[cur as usize].ch[1] != NONE {
            cur = self.occs[cur as usize].ch[1];
        }
        self.splay(cur);
        cur
    }

    /// Joins two sequences (either may be NONE), returning the new root.
    fn merge_seq(&mut self, a: u32, b: u32) -> u32 {
        if a == NONE {
            return b;
        }
        if b == NONE {
            return a;
        }
        let r = self.rightmost(a);
        self.attach(r, b, 1);
        self.pull(r);
        r
    }

    /// Splits after `x`: left part ends at `x`, right part is returned.
    fn split_after(&mut self, x: u32) -> u32 {
        self.splay(x);
        let r = self.occs[x as usize].ch[1];
        if r != NONE {
            self.occs[x as usize].ch[1] = NONE;
            self.occs[r as usize].parent = NONE;
            self.pull(x);
        }
        r
    }

    /// Splits before `x`: right part starts at `x`, left part is returned.
    fn split_before(&mut self, x: u32) -> u32 {
        self.splay(x);
        let l = self.occs[x as usize].ch[0];
        if l != NONE {
            self.occs[x as usize].ch[0] = NONE;
            self.occs[l as usize].parent = NONE;
            self.pull(x);
        }
        l
    }

    /// Detaches the inclusive occurrence range `[a, b]`; returns the three
    /// sequence roots (left, middle, right).
    fn extract(&mut self, a: u32, b: u32) -> (u32, u32, u32) {
        let left = self.split_before(a);
        let right = self.split_after(b);
        (left, self.seq_root(a), right)
    }

    fn rejoin(&mut self, left: u32, mid: u32, right: u32) {
        let lm = self.merge_seq(left, mid);
        self.merge_seq(lm, right);
    }

    /// True iff `a` occurs strictly before `b` in the tour (same sequence).
    fn occ_before(&mut self, a: u32, b: u32) -> bool {
        debug_assert_ne!(a, b);
        self.splay(a);
        self.splay(b);
        let mut cur = a;
        let mut top_side = 0;
        while let Some((p, side)) = self.splay_parent(cur) {
            top_side = side;
            cur = p;
        }
        debug_assert_eq!(cur, b);
        self.splay(a);
        top_side == 0
    }

    // --- public forest operations ------------------------------------------

    /// Root of the tree containing `v`.
    pub fn root(&mut self, v: MfNode) -> MfNode {
        let first = self.leftmost(self.enter[v.0 as usize]);
        MfNode(self.occs[first as usize].node)
    }

    fn depth_of(&mut self, v: MfNode) -> i64 {
        let e = self.enter[v.0 as usize];
        self.splay(e);
        self.occs[e as usize].depth
    }

    /// Makes the root of the tree containing `v` a child of `u`.
    pub fn link(&mut self, u: MfNode, v: MfNode) -> Result<(), MergeForestError> {
        let r = self.root(v);
        if r == self.root(u) {
            return Err(MergeForestError::SameTree);
        }
        let du = self.depth_of(u);
        let rroot = self.seq_root(self.enter[r.0 as usize]);
        self.apply_lazy(rroot, du + 1);
        let eu = self.enter[u.0 as usize];
        let rest = self.split_after(eu);
        let left = self.seq_root(eu);
        let lm = self.merge_seq(left, rroot);
        self.merge_seq(lm, rest);
        self.parent_of[r.0 as usize] = u.0;
        self.children[u.0 as usize].push(r.0);
        Ok(())
    }

    /// Deletes the edge connecting `v` to its parent.
    pub fn cut(&mut self, v: MfNode) -> Result<(), MergeForestError> {
        let p = self.parent_of[v.0 as usize];
        if p == NONE {
            return Err(MergeForestError::NoParent);
        }
        let dv = self.depth_of(v);
        let (l, mid, r) = self.extract(self.enter[v.0 as usize], self.leave[v.0 as usize]);
        self.merge_seq(l, r);
        self.apply_lazy(mid, -dv);
        self.parent_of[v.0 as usize] = NONE;
        self.children[p as usize].retain(|&c| c != v.0);
        Ok(())
    }

    /// Nearest common ancestor of `u` and `v` (requires the same tree).
    pub fn nca(&mut self, u: MfNode, v: MfNode) -> Result<MfNode, MergeForestError> {
        if self.root(u) != self.root(v) {
            return Err(MergeForestError::DifferentTrees);
        }
        if u == v {
            return Ok(u);
        }
        let (eu, ev) = (self.enter[u.0 as usize], self.enter[v.0 as usize]);
        let (a, b) = if self.occ_before(eu, ev) { (eu, ev) } else { (ev, eu) };
        let (l, mid, r) = self.extract(a, b);
        let occ = self.occs[mid as usize].min_depth_occ;
        let node = self.occs[occ as usize].node;
        self.rejoin(l, mid, r);
        if occ == self.enter[node as usize] {
            Ok(MfNode(node))
        } else {
            let p = self.parent_of[node as usize];
            debug_assert_ne!(p, NONE, "walk minimum at a root leave");
            Ok(MfNode(p))
        }
    }

    /// Assigns the value associated to leaf `v`.
    pub fn change_val(&mut self, v: MfNode, x: i64) {
        assert!(self.is_leaf[v.0 as usize], "change_val on internal node");
        let e = self.enter[v.0 as usize];
        self.splay(e);
        self.occs[e as usize].value = x;
        self.pull(e);
    }

    /// Leaf with the minimum associated value in the subtree rooted at `v`,
    /// or `None` when the subtree contains no leaf.
    pub fn subtree_min(&mut self, v: MfNode) -> Option<MfNode> {
        let (l, mid, r) = self.extract(self.enter[v.0 as usize], self.leave[v.0 as usize]);
        let res = if self.occs[mid as usize].min_value == NO_VALUE {
            None
        } else {
            Some(MfNode(self.occs[self.occs[mid as usize].min_value_occ as usize].node))
        };
        self.rejoin(l, mid, r);
        res
    }

    // --- debug / test support ----------------------------------------------

    /// Nested parenthesized dump `(level children…)` of the subtree at `v`,
    /// children in insertion order.
    pub fn dump(&self, v: MfNode) -> String {
        let mut s = format!("({}", self.level[v.0 as usize]);
        for &c in &self.children[v.0 as usize] {
            s.push(' ');
            s.push_str(&self.dump(MfNode(c)));
        }
        s.push(')');
        s
    }

    /// Canonical dump of the whole forest for level-labelled isomorphism
    /// comparison: children sorted recursively, roots sorted.
    pub fn canonical_dump(&self) -> String {
        fn go(f: &MergeForest, v: u32) -> String {
            let mut kids: Vec<String> =
                f.children[v as usize].iter().map(|&c| go(f, c)).collect();
            kids.sort();
            let mut s = format!("({}", f.level[v as usize]);
            for k in kids {
                s.push(' ');
                s.push_str(&k);
            }
            s.push(')');
            s
        }
        let mut roots: Vec<String> = (0..self.parent_of.len())
            .filter(|&v| self.parent_of[v] == NONE)
            .map(|v| go(self, v as u32))
            .collect();
        roots.sort();
        roots.join(" ")
    }
}

/// Constructive merge-forest build for a standard filtration: a vertex
/// event adds a leaf at its index; a negative edge (read off the pairing)
/// adds an internal node over the roots of its endpoints' trees. Returns
/// the forest plus the node of each event (`None` for positive edges).
pub fn build(
    f: &crate::model::Filtration,
    pairing: &crate::model::Pairing,
) -> (MergeForest, Vec<Option<MfNode>>) {
    use crate::model::Simplex;
    use std::collections::HashMap;

    let mut mf = MergeForest::new();
    let mut node_of: Vec<Option<MfNode>> = vec![None; f.len()];
    let mut leaf_of: HashMap<u64, MfNode> = HashMap::new();
    for (i, ev) in f.events().iter().enumerate() {
        match ev.simplex {
            Simplex::Vertex(v) => {
                let leaf = mf.new_leaf(i as i64);
                leaf_of.insert(v, leaf);
                node_of[i] = Some(leaf);
            }
            Simplex::Edge(u, v) => {
                let negative = pairing.pairs.values().any(|&d| d == i);
                if negative {
                    let ru = mf.root(leaf_of[&u]);
                    let rv = mf.root(leaf_of[&v]);
                    let x = mf.new_internal(i as i64);
                    mf.link(x, ru).expect("negative edge merges distinct trees");
                    mf.link(x, rv).expect("negative edge merges distinct trees");
                    node_of[i] = Some(x);
                }
            }
        }
    }
    (mf, node_of)
}
