//! Weighted dynamic forest with link/cut/connectivity/path-bottleneck,
//! backed by a splay-based link-cut tree.
//!
//! Edges carry integer weights (event indices) and are realized as
//! subdivision nodes, so a path-maximum over edge weights is a plain path
//! aggregate. Handles to edges are generation-checked so that operations on
//! edges removed by `cut` fail with `StaleHandle` instead of corrupting the
//! forest.

use std::fmt;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeHandle {
    idx: u32,
    gen: u32,
}

impl fmt::Display for EdgeHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}g{}", self.idx, self.gen)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DynForestError {
    #[error("endpoints already in the same tree")]
    SameTree,
    #[error("edge handle is stale")]
    StaleHandle,
    #[error("nodes are not connected")]
    NotConnected,
}

#[derive(Clone)]
struct Node {
    parent: u32,
    ch: [u32; 2],
    flip: bool,
    /// `Some` for edge (subdivision) nodes, `None` for vertex nodes.
    weight: Option<u32>,
    /// Max weight and carrying node over the splay subtree.
    agg: Option<(u32, u32)>,
}

impl Node {
    fn fresh(weight: Option<u32>) -> Self {
        Node { parent: NONE, ch: [NONE, NONE], flip: false, weight, agg: weight.map(|w| (w, NONE)) }
    }
}

#[derive(Clone)]
pub struct DynForest {
    nodes: Vec<Node>,
    /// Edge bookkeeping, indexed like `nodes`; vertices hold `None`.
    ends: Vec<Option<(u32, u32)>>,
    gens: Vec<u32>,
    free: Vec<u32>,
    n_vertices: usize,
    n_edges: usize,
    rotations: u64,
}

impl Default for DynForest {
    fn default() -> Self {
        Self::new()
    }
}

impl DynForest {
    pub fn new() -> Self {
        DynForest {
            nodes: Vec::new(),
            ends: Vec::new(),
            gens: Vec::new(),
            free: Vec::new(),
            n_vertices: 0,
            n_edges: 0,
            rotations: 0,
        }
    }

    pub fn with_vertices(n: usize) -> Self {
        let mut f = Self::new();
        for _ in 0..n {
            f.add_node();
        }
        f
    }

    pub fn add_node(&mut self) -> NodeId {
        let id = self.nodes.len() as u32;
        self.nodes.push(Node::fresh(None));
        self.ends.push(None);
        self.gens.push(0);
        self.n_vertices += 1;
        NodeId(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    /// Total splay rotations performed; the primitive-operation counter used
    /// by the complexity checks.
    pub fn rotations(&self) -> u64 {
        self.rotations
    }

    // --- splay internals -------------------------------------------------

    fn push_down(&mut self, x: u32) {
        if self.nodes[x as usize].flip {
            self.nodes[x as usize].flip = false;
            self.nodes[x as usize].ch.swap(0, 1);
            for c in self.nodes[x as usize].ch {
                if c != NONE {
                    self.nodes[c as usize].flip ^= true;
                }
            }
        }
    }

    fn pull(&mut self, x: u32) {
        let mut agg = self.nodes[x as usize].weight.map(|w| (w, x));
        for c in self.nodes[x as usize].ch {
            if c != NONE {
                agg = match (agg, self.nodes[c as usize].agg) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, None) => a,
                    (None, b) => b,
                };
            }
        }
        self.nodes[x as usize].agg = agg;
    }

    /// Splay-tree parent, or Err(path parent / none) when `x` is a splay root.
    fn splay_parent(&self, x: u32) -> Result<(u32, usize), u32> {
        let p = self.nodes[x as usize].parent;
        if p != NONE {
            if self.nodes[p as usize].ch[0] == x {
                return Ok((p, 0));
            }
            if self.nodes[p as usize].ch[1] == x {
                return Ok((p, 1));
            }
        }
        Err(p)
    }

    fn attach(&mut self, p: u32, c: u32, side: usize) {
        self.nodes[p as usize].ch[side] = c;
        if c != NONE {
            self.nodes[c as usize].parent = p;
        }
    }

    fn rotate(&mut self, x: u32) {
        self.rotations += 1;
        let (p, side) = self.splay_parent(x).expect("rotate at splay root");
        let g = self.splay_parent(p);
        let b = self.nodes[x as usize].ch[1 - side];
        self.attach(p, b, side);
        match g {
            Ok((gp, gside)) => self.attach(gp, x, gside),
            Err(pp) => self.nodes[x as usize].parent = pp,
        }
        self.attach(x, p, 1 - side);
        self.pull(p);
        self.pull(x);
    }

    fn splay(&mut self, x: u32) {
        // push pending flips from the splay root down to x first
        let mut path = vec![x];
        let mut cur = x;
        while let Ok((p, _)) = self.splay_parent(cur) {
            path.push(p);
            cur = p;
        }
        for &n in path.iter().rev() {
            self.push_down(n);
        }
        while let Ok((p, side)) = self.splay_parent(x) {
            if let Ok((_, gside)) = self.splay_parent(p) {
                if side == gside {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            if self.splay_parent(x).is_ok() {
                self.rotate(x);
            }
        }
    }

    fn access(&mut self, x: u32) {
        self.splay(x);
        self.nodes[x as usize].ch[1] = NONE;
        self.pull(x);
        loop {
            let pp = match self.splay_parent(x) {
                Err(pp) => pp,
                Ok(_) => unreachable!("x splayed"),
            };
            if pp == NONE {
                break;
            }
            self.splay(pp);
            self.nodes[pp as usize].ch[1] = x;
            self.nodes[x as usize].parent = pp;
            self.pull(pp);
            self.splay(x);
        }
    }

    fn make_root(&mut self, x: u32) {
        self.access(x);
        self.nodes[x as usize].flip ^= true;
        self.push_down(x);
    }

    fn find_root(&mut self, x: u32) -> u32 {
        self.access(x);
        let mut cur = x;
        loop {
            self.push_down(cur);
            let l = self.nodes[cur as usize].ch[0];
            if l == NONE {
                break;
            }
            cur = l;
        }
        self.splay(cur);
        cur
    }

    /// Attaches `child` (a represented-tree root) under `parent`.
    fn link_root(&mut self, child: u32, parent: u32) {
        self.make_root(child);
        self.access(parent);
        self.nodes[child as usize].parent = parent;
    }

    /// Severs the represented-tree edge between two adjacent nodes.
    fn cut_adjacent(&mut self, a: u32, b: u32) {
        self.make_root(a);
        self.access(b);
        debug_assert_eq!(self.nodes[b as usize].ch[0], a, "nodes must be adjacent");
        self.nodes[b as usize].ch[0] = NONE;
        self.nodes[a as usize].parent = NONE;
        self.pull(b);
    }

    // --- public operations ------------------------------------------------

    pub fn connected(&mut self, u: NodeId, v: NodeId) -> bool {
        if u == v {
            return true;
        }
        self.find_root(u.0) == self.find_root(v.0)
    }

    pub fn link(&mut self, u: NodeId, v: NodeId, weight: u32) -> Result<EdgeHandle, DynForestError> {
        if self.connected(u, v) {
            return Err(DynForestError::SameTree);
        }
        let e = match self.free.pop() {
            Some(slot) => {
                self.nodes[slot as usize] = Node::fresh(Some(weight));
                slot
            }
            None => {
                self.nodes.push(Node::fresh(Some(weight)));
                self.ends.push(None);
                self.gens.push(0);
                (self.nodes.len() - 1) as u32
            }
        };
        self.nodes[e as usize].agg = Some((weight, e));
        self.ends[e as usize] = Some((u.0, v.0));
        self.link_root(e, u.0);
        self.link_root(v.0, e);
        self.n_edges += 1;
        Ok(EdgeHandle { idx: e, gen: self.gens[e as usize] })
    }

    fn check(&self, h: EdgeHandle) -> Result<u32, DynForestError> {
        if (h.idx as usize) < self.nodes.len()
            && self.gens[h.idx as usize] == h.gen
            && self.ends[h.idx as usize].is_some()
        {
            Ok(h.idx)
        } else {
            Err(DynForestError::StaleHandle)
        }
    }

    pub fn cut(&mut self, h: EdgeHandle) -> Result<(), DynForestError> {
        let e = self.check(h)?;
        let (a, b) = self.ends[e as usize].unwrap();
        self.cut_adjacent(a, e);
        self.cut_adjacent(e, b);
        self.ends[e as usize] = None;
        self.gens[e as usize] += 1;
        self.free.push(e);
        self.n_edges -= 1;
        Ok(())
    }

    /// Maximum edge weight on the tree path `u..v` plus a handle to one edge
    /// achieving it.
    pub fn path_bottleneck(&mut self, u: NodeId, v: NodeId) -> Result<(u32, EdgeHandle), DynForestError> {
        if u == v || !self.connected(u, v) {
            return Err(DynForestError::NotConnected);
        }
        self.make_root(u.0);
        self.access(v.0);
        let (w, e) = self.nodes[v.0 as usize].agg.expect("path of length >= 1 has an edge");
        Ok((w, EdgeHandle { idx: e, gen: self.gens[e as usize] }))
    }

    pub fn set_weight(&mut self, h: EdgeHandle, weight: u32) -> Result<(), DynForestError> {
        let e = self.check(h)?;
        self.access(e);
        self.nodes[e as usize].weight = Some(weight);
        self.pull(e);
        Ok(())
    }

    pub fn edge_weight(&self, h: EdgeHandle) -> Result<u32, DynForestError> {
        let e = self.check(h)?;
        Ok(self.nodes[e as usize].weight.unwrap())
    }

    pub fn edge_endpoints(&self, h: EdgeHandle) -> Result<(NodeId, NodeId), DynForestError> {
        let e = self.check(h)?;
        let (a, b) = self.ends[e as usize].unwrap();
        Ok((NodeId(a), NodeId(b)))
    }
}

impl fmt::Debug for DynForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DynForest")
            .field("vertices", &self.n_vertices)
            .field("edges", &self.n_edges)
            .finish()
    }
}
