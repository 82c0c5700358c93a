//! Standard graph persistence via union-find with elder-rule representative
//! tracking.
//!
//! Internally a standard filtration is a reorderable sequence of events with
//! stable ids over dense vertex slots (`StdEvents`); this shared shape also
//! hosts the ascending/descending parts of up-down cell filtrations, where
//! parallel edges are legal.

use crate::model::{Filtration, Flavor, Pairing, Simplex, VertexId};
use std::collections::HashMap;

pub type EventId = u32;
pub type Slot = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StdKind {
    Vertex { slot: Slot },
    Edge { a: Slot, b: Slot },
}

impl StdKind {
    pub fn is_vertex(&self) -> bool {
        matches!(self, StdKind::Vertex { .. })
    }
}

/// Addition-only event sequence with a mutable order. `kinds` is indexed by
/// stable event id; `order`/`pos` translate between ids and positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdEvents {
    pub kinds: Vec<StdKind>,
    pub order: Vec<EventId>,
    pub pos: Vec<u32>,
    pub n_slots: usize,
}

impl StdEvents {
    pub fn new(kinds: Vec<StdKind>, n_slots: usize) -> Self {
        let order: Vec<EventId> = (0..kinds.len() as u32).collect();
        let pos = order.clone();
        StdEvents { kinds, order, pos, n_slots }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn kind_at(&self, position: usize) -> StdKind {
        self.kinds[self.order[position] as usize]
    }

    pub fn id_at(&self, position: usize) -> EventId {
        self.order[position]
    }

    pub fn position(&self, id: EventId) -> usize {
        self.pos[id as usize] as usize
    }

    pub fn swap_positions(&mut self, i: usize) {
        self.order.swap(i - 1, i);
        self.pos[self.order[i - 1] as usize] = (i - 1) as u32;
        self.pos[self.order[i] as usize] = i as u32;
    }

    /// Builds from a validated standard filtration; user vertex ids are
    /// densely renumbered in order of addition (never exposed).
    pub fn from_filtration(f: &Filtration) -> Self {
        assert_eq!(f.flavor(), Flavor::Standard);
        let mut slot_of: HashMap<VertexId, Slot> = HashMap::new();
        let mut kinds = Vec::with_capacity(f.len());
        for ev in f.events() {
            match ev.simplex {
                Simplex::Vertex(v) => {
                    let slot = slot_of.len() as Slot;
                    slot_of.insert(v, slot);
                    kinds.push(StdKind::Vertex { slot });
                }
                Simplex::Edge(u, v) => {
                    kinds.push(StdKind::Edge { a: slot_of[&u], b: slot_of[&v] });
                }
            }
        }
        let n_slots = slot_of.len();
        StdEvents::new(kinds, n_slots)
    }
}

/// Union by rank with path compression. The elder-rule representative (the
/// oldest unpaired vertex of each component) is tracked separately from the
/// union-find roots.
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    /// Representative vertex event id per root.
    rep: Vec<EventId>,
    finds: u64,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            rep: vec![u32::MAX; n],
            finds: 0,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        self.finds += 1;
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = p;
        }
        root
    }

    pub fn set_rep(&mut self, root: u32, rep: EventId) {
        self.rep[root as usize] = rep;
    }

    pub fn rep(&self, root: u32) -> EventId {
        self.rep[root as usize]
    }

    /// Unions two distinct roots, returning the new root.
    pub fn union_roots(&mut self, a: u32, b: u32) -> u32 {
        debug_assert_ne!(a, b);
        let (mut a, mut b) = (a, b);
        if self.rank[a as usize] < self.rank[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        if self.rank[a as usize] == self.rank[b as usize] {
            self.rank[a as usize] += 1;
        }
        a
    }

    pub fn finds(&self) -> u64 {
        self.finds
    }
}

/// Elder-rule pairing by event id: `partner[e]` is the paired event, `None`
/// for unpaired vertices (component representatives) and positive edges.
pub fn pair_std_events(ev: &StdEvents) -> Vec<Option<EventId>> {
    let mut partner: Vec<Option<EventId>> = vec![None; ev.kinds.len()];
    let mut uf = UnionFind::new(ev.n_slots);
    for p in 0..ev.len() {
        let id = ev.id_at(p);
        match ev.kinds[id as usize] {
            StdKind::Vertex { slot } => {
                let r = uf.find(slot);
                uf.set_rep(r, id);
            }
            StdKind::Edge { a, b } => {
                let ra = uf.find(a);
                let rb = uf.find(b);
                if ra == rb {
                    continue; // positive edge
                }
                let (r1, r2) = (uf.rep(ra), uf.rep(rb));
                // elder rule: the younger representative pairs with the edge
                let (older, younger) = if ev.position(r1) < ev.position(r2) { (r1, r2) } else { (r2, r1) };
                partner[younger as usize] = Some(id);
                partner[id as usize] = Some(younger);
                let root = uf.union_roots(ra, rb);
                uf.set_rep(root, older);
            }
        }
    }
    partner
}

/// Converts an id-keyed partner table to a position-keyed `Pairing`.
pub fn pairing_by_position(ev: &StdEvents, partner: &[Option<EventId>]) -> Pairing {
    let mut pairing = Pairing::default();
    for (id, p) in partner.iter().enumerate() {
        let my = ev.position(id as EventId);
        match p {
            Some(other) => {
                let theirs = ev.position(*other);
                if my < theirs {
                    pairing.pairs.insert(my, theirs);
                }
            }
            None => {
                pairing.unpaired.insert(my);
            }
        }
    }
    pairing
}

/// Standard persistence pairing of a validated standard filtration in
/// near-linear time. Creators are positive simplices, destroyers negative
/// edges; unpaired creators generate infinite bars.
pub fn compute_pairing(f: &Filtration) -> Pairing {
    let ev = StdEvents::from_filtration(f);
    let partner = pair_std_events(&ev);
    pairing_by_position(&ev, &partner)
}
