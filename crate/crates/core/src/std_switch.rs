//! O(log m) switch updates on standard graph filtrations.
//!
//! The state maintains, for the current event order: the elder-rule pairing,
//! the merge forest (levels = event positions), and the minimum spanning
//! forest of the final graph with edge weights equal to event positions.
//! A switch swaps the events at positions `i-1` and `i` and patches all
//! three structures according to the case table:
//!
//! * vertex/edge mixed switches only touch levels and weights;
//! * a vertex-vertex switch may swap the two vertices' paired partners;
//! * an edge-edge switch with a negative edge moving past a positive one
//!   relabels the merge-forest node and swaps the edges' roles when the
//!   negative edge lies in a 1-cycle afterwards (bottleneck query);
//! * two negative edges in parent-child position restructure the forest
//!   according to which components the later edge connects, and may swap
//!   the paired vertices.

use crate::dynforest::{DynForest, EdgeHandle, NodeId};
use crate::merge_forest::{MergeForest, MfNode};
use crate::model::{Filtration, Pairing};
use crate::standard::{pair_std_events, pairing_by_position, EventId, Slot, StdEvents, StdKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SwitchError {
    #[error("switch position {0} out of range")]
    OutOfRange(usize),
    #[error("invalid switch at position {0}: the first event is a face of the second")]
    InvalidSwitch(usize),
    #[error("events at position {0} do not match the requested switch kind")]
    KindMismatch(usize),
}

/// Which pair of components the later edge connects directly, for the
/// both-negative parent-child case. `ToYounger` is the configuration where
/// it reaches the subtree holding the younger minimum leaf (and pairing may
/// change); `ToOlder` leaves the pairing untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Configuration {
    ToOlder,
    ToYounger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchCase {
    VertexVertex,
    VertexEdge,
    EdgeVertex,
    EdgeBothPositive,
    EdgePosNeg,
    EdgeNegPos { in_cycle: bool },
    EdgeBothNegative { parent_child: bool },
}

/// What a switch did; used by the differential tests to pin down the only
/// cases in which the pairing is allowed to change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwitchReport {
    pub case: SwitchCase,
    pub pairing_changed: bool,
    pub configuration: Option<Configuration>,
}

pub struct StdUpdateState {
    ev: StdEvents,
    /// pairing by stable event id; `None` = unpaired (positive)
    partner: Vec<Option<EventId>>,
    mf: MergeForest,
    /// event id -> merge forest node (leaves for vertices, internal nodes
    /// for currently negative edges)
    node_of: Vec<Option<MfNode>>,
    /// merge forest node -> event id
    event_of_node: Vec<EventId>,
    msf: DynForest,
    /// vertex slot -> forest node
    vnode: Vec<NodeId>,
    /// event id -> msf edge handle (present iff the edge is negative)
    ehandle: Vec<Option<EdgeHandle>>,
}

impl StdUpdateState {
    /// Builds pairing, merge forest and MSF for the given event order.
    /// O(m log m).
    pub fn preprocess(ev: StdEvents) -> Self {
        let partner = pair_std_events(&ev);
        let n = ev.kinds.len();
        let mut mf = MergeForest::new();
        let mut node_of: Vec<Option<MfNode>> = vec![None; n];
        let mut event_of_node: Vec<EventId> = Vec::new();
        let mut msf = DynForest::with_vertices(ev.n_slots);
        let vnode: Vec<NodeId> = (0..ev.n_slots as u32).map(NodeId).collect();
        let mut ehandle: Vec<Option<EdgeHandle>> = vec![None; n];
        let mut vertex_event: Vec<EventId> = vec![u32::MAX; ev.n_slots];

        for p in 0..ev.len() {
            let id = ev.id_at(p);
            match ev.kinds[id as usize] {
                StdKind::Vertex { slot } => {
                    let leaf = mf.new_leaf(p as i64);
                    node_of[id as usize] = Some(leaf);
                    debug_assert_eq!(event_of_node.len(), leaf.0 as usize);
                    event_of_node.push(id);
                    vertex_event[slot as usize] = id;
                }
                StdKind::Edge { a, b } => {
                    if partner[id as usize].is_some() {
                        // negative: merge the two trees under a new node
                        let la = node_of[vertex_event[a as usize] as usize].unwrap();
                        let lb = node_of[vertex_event[b as usize] as usize].unwrap();
                        let ra = mf.root(la);
                        let rb = mf.root(lb);
                        let x = mf.new_internal(p as i64);
                        node_of[id as usize] = Some(x);
                        event_of_node.push(id);
                        mf.link(x, ra).expect("distinct trees");
                        mf.link(x, rb).expect("distinct trees");
                        let h = msf
                            .link(vnode[a as usize], vnode[b as usize], p as u32)
                            .expect("negative edge joins distinct trees");
                        ehandle[id as usize] = Some(h);
                    } else {
                        debug_assert!(msf.connected(vnode[a as usize], vnode[b as usize]));
                    }
                }
            }
        }
        StdUpdateState { ev, partner, mf, node_of, event_of_node, msf, vnode, ehandle }
    }

    pub fn from_filtration(f: &Filtration) -> Self {
        Self::preprocess(StdEvents::from_filtration(f))
    }

    pub fn events(&self) -> &StdEvents {
        &self.ev
    }

    pub fn len(&self) -> usize {
        self.ev.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ev.is_empty()
    }

    pub fn partner_of(&self, id: EventId) -> Option<EventId> {
        self.partner[id as usize]
    }

    pub fn is_negative(&self, id: EventId) -> bool {
        self.partner[id as usize].is_some()
    }

    /// Dynamic-tree primitive operations performed so far.
    pub fn ops(&self) -> u64 {
        self.mf.rotations() + self.msf.rotations()
    }

    pub fn pairing(&self) -> Pairing {
        pairing_by_position(&self.ev, &self.partner)
    }

    pub fn forest_canonical(&self) -> String {
        self.mf.canonical_dump()
    }

    /// Current MSF content as (weight = position) set, for differential
    /// comparison against a fresh Kruskal run.
    pub fn msf_edge_positions(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .ehandle
            .iter()
            .enumerate()
            .filter(|(_, h)| h.is_some())
            .map(|(id, _)| self.ev.position(id as EventId))
            .collect();
        v.sort_unstable();
        v
    }

    /// Bottleneck weight between two vertex slots on the maintained MSF.
    pub fn msf_bottleneck(&mut self, a: Slot, b: Slot) -> Option<u32> {
        self.msf
            .path_bottleneck(self.vnode[a as usize], self.vnode[b as usize])
            .ok()
            .map(|(w, _)| w)
    }

    fn edge_slots(&self, id: EventId) -> (Slot, Slot) {
        match self.ev.kinds[id as usize] {
            StdKind::Edge { a, b } => (a, b),
            StdKind::Vertex { .. } => unreachable!("edge event expected"),
        }
    }

    /// Whether the negative edge at position `i-1` lies in a 1-cycle of
    /// `G_{i+1}`, given a positive edge at position `i`: true iff the MSF
    /// bottleneck between the positive edge's endpoints equals `i-1`.
    pub fn detect_cycle(&mut self, i: usize) -> Result<bool, SwitchError> {
        if i == 0 || i >= self.ev.len() {
            return Err(SwitchError::OutOfRange(i));
        }
        let e1 = self.ev.id_at(i - 1);
        let e2 = self.ev.id_at(i);
        if !matches!(self.ev.kinds[e1 as usize], StdKind::Edge { .. })
            || !matches!(self.ev.kinds[e2 as usize], StdKind::Edge { .. })
            || !self.is_negative(e1)
            || self.is_negative(e2)
        {
            return Err(SwitchError::KindMismatch(i));
        }
        let (a, b) = self.edge_slots(e2);
        let w = self.msf_bottleneck(a, b).expect("positive edge endpoints are connected");
        Ok(w as usize == i - 1)
    }

    /// Connecting-configuration test for the both-negative parent-child
    /// case: with the MSF already carrying the post-switch weights, the
    /// later edge connects the younger minimum leaf's component iff `u` and
    /// `w` are first connected no later than graph index `j`.
    pub fn configuration(&mut self, u: Slot, w: Slot, j: usize) -> Configuration {
        let bottleneck = self.msf_bottleneck(u, w).expect("u and w are connected in G_m");
        if (bottleneck as usize) + 1 <= j {
            Configuration::ToYounger
        } else {
            Configuration::ToOlder
        }
    }

    fn swap_partners(&mut self, x: EventId, y: EventId) {
        let px = self.partner[x as usize];
        let py = self.partner[y as usize];
        self.partner[x as usize] = py;
        self.partner[y as usize] = px;
        if let Some(p) = px {
            self.partner[p as usize] = Some(y);
        }
        if let Some(p) = py {
            self.partner[p as usize] = Some(x);
        }
    }

    /// Refreshes the merge-forest level (and leaf value) plus the MSF weight
    /// of one moved event, after positions were swapped.
    fn refresh_event(&mut self, id: EventId) {
        let p = self.ev.position(id) as i64;
        if let Some(node) = self.node_of[id as usize] {
            self.mf.set_level(node, p);
            if self.mf.is_leaf(node) {
                self.mf.change_val(node, p);
            }
        }
        if let Some(h) = self.ehandle[id as usize] {
            self.msf.set_weight(h, p as u32).expect("live handle");
        }
    }

    /// Swaps the events at positions `i-1` and `i`, updating pairing, merge
    /// forest and MSF. O(log m).
    pub fn switch(&mut self, i: usize) -> Result<SwitchReport, SwitchError> {
        if i == 0 || i >= self.ev.len() {
            return Err(SwitchError::OutOfRange(i));
        }
        let sigma = self.ev.id_at(i - 1);
        let tau = self.ev.id_at(i);
        let ks = self.ev.kinds[sigma as usize];
        let kt = self.ev.kinds[tau as usize];
        if let (StdKind::Vertex { slot }, StdKind::Edge { a, b }) = (ks, kt) {
            if slot == a || slot == b {
                return Err(SwitchError::InvalidSwitch(i));
            }
        }

        let report = match (ks.is_vertex(), kt.is_vertex()) {
            (true, true) => self.switch_vertex_vertex(i, sigma, tau),
            (true, false) => {
                self.ev.swap_positions(i);
                SwitchReport {
                    case: SwitchCase::VertexEdge,
                    pairing_changed: false,
                    configuration: None,
                }
            }
            (false, true) => {
                self.ev.swap_positions(i);
                SwitchReport {
                    case: SwitchCase::EdgeVertex,
                    pairing_changed: false,
                    configuration: None,
                }
            }
            (false, false) => self.switch_edge_edge(i, sigma, tau)?,
        };
        self.refresh_event(sigma);
        self.refresh_event(tau);
        Ok(report)
    }

    fn switch_vertex_vertex(&mut self, i: usize, v1: EventId, v2: EventId) -> SwitchReport {
        let l1 = self.node_of[v1 as usize].unwrap();
        let l2 = self.node_of[v2 as usize].unwrap();
        let mut changed = false;
        if self.mf.root(l1) == self.mf.root(l2) {
            let x = self.mf.nca(l1, l2).expect("same tree");
            let e = self.event_of_node[x.0 as usize];
            let je = self.ev.position(e);
            let unpaired_at = |s: &Self, v: EventId| {
                s.partner[v as usize].map_or(true, |p| s.ev.position(p) >= je)
            };
            if unpaired_at(self, v1) && unpaired_at(self, v2) {
                self.swap_partners(v1, v2);
                changed = true;
            }
        }
        self.ev.swap_positions(i);
        SwitchReport {
            case: SwitchCase::VertexVertex,
            pairing_changed: changed,
            configuration: None,
        }
    }

    fn switch_edge_edge(
        &mut self,
        i: usize,
        e1: EventId,
        e2: EventId,
    ) -> Result<SwitchReport, SwitchError> {
        let neg1 = self.is_negative(e1);
        let neg2 = self.is_negative(e2);
        match (neg1, neg2) {
            (false, false) => {
                self.ev.swap_positions(i);
                Ok(SwitchReport {
                    case: SwitchCase::EdgeBothPositive,
                    pairing_changed: false,
                    configuration: None,
                })
            }
            (false, true) => {
                // weights refreshed by the caller
                self.ev.swap_positions(i);
                Ok(SwitchReport {
                    case: SwitchCase::EdgePosNeg,
                    pairing_changed: false,
                    configuration: None,
                })
            }
            (true, false) => {
                let in_cycle = self.detect_cycle(i)?;
                self.ev.swap_positions(i);
                if in_cycle {
                    // the merge-forest node of e1 now stands for e2
                    let x = self.node_of[e1 as usize].take().unwrap();
                    self.node_of[e2 as usize] = Some(x);
                    self.event_of_node[x.0 as usize] = e2;
                    let v = self.partner[e1 as usize].take().expect("negative edge is paired");
                    self.partner[e2 as usize] = Some(v);
                    self.partner[v as usize] = Some(e2);
                    let h = self.ehandle[e1 as usize].take().unwrap();
                    self.msf.cut(h).expect("live handle");
                    let (a2, b2) = self.edge_slots(e2);
                    let h2 = self
                        .msf
                        .link(self.vnode[a2 as usize], self.vnode[b2 as usize], (i - 1) as u32)
                        .expect("swap keeps the forest acyclic");
                    self.ehandle[e2 as usize] = Some(h2);
                }
                Ok(SwitchReport {
                    case: SwitchCase::EdgeNegPos { in_cycle },
                    pairing_changed: in_cycle,
                    configuration: None,
                })
            }
            (true, true) => {
                self.ev.swap_positions(i);
                // weights must reflect the new order before the
                // configuration query below
                self.refresh_event(e1);
                self.refresh_event(e2);
                let x1 = self.node_of[e1 as usize].unwrap();
                let x2 = self.node_of[e2 as usize].unwrap();
                if self.mf.parent(x1) != Some(x2) {
                    return Ok(SwitchReport {
                        case: SwitchCase::EdgeBothNegative { parent_child: false },
                        pairing_changed: false,
                        configuration: None,
                    });
                }
                let kids = self.mf.children_of(x1);
                debug_assert_eq!(kids.len(), 2, "merge forest nodes are binary");
                let c3 = self
                    .mf
                    .children_of(x2)
                    .into_iter()
                    .find(|&c| c != x1)
                    .expect("other child of e2");
                let m0 = self.mf.subtree_min(kids[0]).expect("subtree has a leaf");
                let m1 = self.mf.subtree_min(kids[1]).expect("subtree has a leaf");
                let pos_of_leaf =
                    |s: &Self, l: MfNode| s.ev.position(s.event_of_node[l.0 as usize]);
                // normalize so that u is the younger minimum leaf (idx(v) < idx(u))
                let (u_leaf, t1_root, t2_root) = if pos_of_leaf(self, m0) > pos_of_leaf(self, m1) {
                    (m0, kids[0], kids[1])
                } else {
                    (m1, kids[1], kids[0])
                };
                let w_leaf = self.mf.subtree_min(c3).expect("subtree has a leaf");
                let slot_of = |s: &Self, l: MfNode| match s.ev.kinds[s.event_of_node[l.0 as usize] as usize] {
                    StdKind::Vertex { slot } => slot,
                    StdKind::Edge { .. } => unreachable!("leaf is a vertex"),
                };
                let u_slot = slot_of(self, u_leaf);
                let w_slot = slot_of(self, w_leaf);
                let config = self.configuration(u_slot, w_slot, i);

                let parent_above = self.mf.parent(x2);
                self.mf.cut(x1).expect("child of e2");
                if parent_above.is_some() {
                    self.mf.cut(x2).expect("has parent");
                }
                let moved = match config {
                    Configuration::ToOlder => t2_root,
                    Configuration::ToYounger => t1_root,
                };
                self.mf.cut(moved).expect("child of e1");
                self.mf.link(x2, moved).expect("distinct trees");
                self.mf.link(x1, x2).expect("distinct trees");
                if let Some(p) = parent_above {
                    self.mf.link(p, x1).expect("distinct trees");
                }

                let mut changed = false;
                if config == Configuration::ToYounger
                    && pos_of_leaf(self, w_leaf) < pos_of_leaf(self, u_leaf)
                {
                    self.swap_partners(e1, e2);
                    changed = true;
                }
                Ok(SwitchReport {
                    case: SwitchCase::EdgeBothNegative { parent_child: true },
                    pairing_changed: changed,
                    configuration: Some(config),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_filtration, Flavor};
    use crate::standard::compute_pairing;

    const TRI: &str = "+ v 0\n+ v 1\n+ v 2\n+ e 0 1\n+ e 1 2\n+ e 0 2\n";

    fn state(text: &str) -> StdUpdateState {
        let f = parse_filtration(text, Flavor::Standard).unwrap();
        StdUpdateState::from_filtration(&f)
    }

    /// Recomputes everything from scratch for the current order and compares.
    fn assert_consistent(s: &StdUpdateState) {
        let fresh = StdUpdateState::preprocess(s.ev.clone());
        assert_eq!(s.pairing(), fresh.pairing(), "pairing differs from recomputation");
        assert_eq!(
            s.forest_canonical(),
            fresh.forest_canonical(),
            "merge forest differs from recomputation"
        );
        assert_eq!(s.msf_edge_positions(), fresh.msf_edge_positions(), "msf differs");
    }

    #[test]
    fn preprocess_tri() {
        let s = state(TRI);
        assert_eq!(s.msf_edge_positions(), vec![3, 4]);
        let f = parse_filtration(TRI, Flavor::Standard).unwrap();
        assert_eq!(s.pairing(), compute_pairing(&f));
    }

    #[test]
    fn preprocess_vertex_only() {
        let s = state("+ v 0\n+ v 1\n+ v 2\n");
        assert!(s.msf_edge_positions().is_empty());
        assert_eq!(s.forest_canonical(), "(0) (1) (2)");
    }

    #[test]
    fn preprocess_path() {
        let s = state("+ v 0\n+ v 1\n+ v 2\n+ e 0 1\n+ e 1 2\n");
        assert_eq!(s.msf_edge_positions(), vec![3, 4]);
        assert_eq!(s.forest_canonical(), "(4 (2) (3 (0) (1)))");
    }

    #[test]
    fn vertex_vertex_swap() {
        let mut s = state("+ v 0\n+ v 1\n+ e 0 1\n");
        let before = s.pairing();
        assert_eq!(before.pairs.get(&1), Some(&2));
        let r = s.switch(1).unwrap();
        assert!(r.pairing_changed);
        let after = s.pairing();
        // after the switch the vertex now at position 1 pairs with the edge
        assert_eq!(after.pairs.get(&1), Some(&2));
        assert!(after.unpaired.contains(&0));
        assert_consistent(&s);
    }

    #[test]
    fn tri_neg_pos_switch() {
        let mut s = state(TRI);
        assert!(s.detect_cycle(5).unwrap());
        let r = s.switch(5).unwrap();
        assert_eq!(r.case, SwitchCase::EdgeNegPos { in_cycle: true });
        assert!(r.pairing_changed);
        // after: (c, ac) paired, bc unpaired; MSF = {ab, ac} at positions 3, 4
        let p = s.pairing();
        assert_eq!(p.pairs.get(&2), Some(&4));
        assert!(p.unpaired.contains(&5));
        assert_eq!(s.msf_edge_positions(), vec![3, 4]);
        assert_consistent(&s);
    }

    #[test]
    fn square_cycle_detection() {
        let mut s = state("+ v 0\n+ v 1\n+ v 2\n+ v 3\n+ e 0 1\n+ e 1 2\n+ e 2 3\n+ e 0 3\n");
        assert!(s.detect_cycle(7).unwrap());
    }

    #[test]
    fn disjoint_cycle_not_detected() {
        // e2 closes a cycle that avoids e1
        let s = "+ v 0\n+ v 1\n+ v 2\n+ v 3\n+ e 0 1\n+ e 2 3\n+ e 1 2\n+ e 0 1\n";
        // (0,1) parallel is illegal; build differently: cycle on 0-1-2 away from e1=(2,3)
        let _ = s;
        let mut s =
            state("+ v 0\n+ v 1\n+ v 2\n+ v 3\n+ e 0 1\n+ e 1 2\n+ e 2 3\n+ e 0 2\n");
        // positions: e1 = (2,3)@6 negative, e2 = (0,2)@7 positive closing 0-1-2
        assert!(!s.detect_cycle(7).unwrap());
        let r = s.switch(7).unwrap();
        assert_eq!(r.case, SwitchCase::EdgeNegPos { in_cycle: false });
        assert!(!r.pairing_changed);
        assert_consistent(&s);
    }

    #[test]
    fn both_negative_parent_child_swap() {
        // [+a,+b,+c,+bc,+ac]: switching bc, ac swaps the paired vertices
        let mut s = state("+ v 0\n+ v 1\n+ v 2\n+ e 1 2\n+ e 0 2\n");
        let before = s.pairing();
        assert_eq!(before.pairs.get(&2), Some(&3)); // (c, bc)
        assert_eq!(before.pairs.get(&1), Some(&4)); // (b, ac)
        let r = s.switch(4).unwrap();
        assert_eq!(r.case, SwitchCase::EdgeBothNegative { parent_child: true });
        assert_eq!(r.configuration, Some(Configuration::ToYounger));
        assert!(r.pairing_changed);
        let after = s.pairing();
        assert_eq!(after.pairs.get(&2), Some(&3)); // (c, ac) by position
        assert_eq!(after.pairs.get(&1), Some(&4)); // (b, bc) by position
        assert_consistent(&s);
    }

    #[test]
    fn configuration_threshold() {
        // path a-b-c: a, b first connect at graph index 4 (edge ab at 3)
        let mut s = state("+ v 0\n+ v 1\n+ v 2\n+ e 0 1\n+ e 1 2\n");
        assert_eq!(s.configuration(0, 1, 4), Configuration::ToYounger);
        assert_eq!(s.configuration(0, 1, 3), Configuration::ToOlder);
        // endpoints joined via an older edge stay ToYounger at any later index
        assert_eq!(s.configuration(0, 2, 5), Configuration::ToYounger);
    }

    #[test]
    fn both_negative_other_configuration_keeps_pairing() {
        // [+b,+a,+c,+ab,+bc]: bc reaches the subtree of the older minimum
        // leaf, so the forest restructures but the pairing stays
        let mut s = state("+ v 1\n+ v 0\n+ v 2\n+ e 0 1\n+ e 1 2\n");
        let r = s.switch(4).unwrap();
        assert_eq!(r.case, SwitchCase::EdgeBothNegative { parent_child: true });
        assert_eq!(r.configuration, Some(Configuration::ToOlder));
        assert!(!r.pairing_changed, "partners stay with their edges");
        assert_consistent(&s);
    }

    #[test]
    fn switch_twice_is_identity() {
        for text in [TRI, "+ v 0\n+ v 1\n+ v 2\n+ e 1 2\n+ e 0 2\n"] {
            for i in 1..5 {
                let mut s = state(text);
                let before_pairing = s.pairing();
                let before_forest = s.forest_canonical();
                let before_msf = s.msf_edge_positions();
                if s.switch(i).is_err() {
                    continue;
                }
                s.switch(i).unwrap();
                assert_eq!(s.pairing(), before_pairing, "{text} switch {i}");
                assert_eq!(s.forest_canonical(), before_forest);
                assert_eq!(s.msf_edge_positions(), before_msf);
            }
        }
    }

    #[test]
    fn random_switch_differential() {
        use crate::gen::{random_standard, random_standard_switch};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd1ff);
        for round in 0..30 {
            let f = random_standard(&mut rng, 10, 50);
            let mut s = StdUpdateState::from_filtration(&f);
            for step in 0..30 {
                let Some(i) = random_standard_switch(&mut rng, &f) else { break };
                // translate to the current order: position i of the ORIGINAL
                // is meaningless after switches, so sample on current kinds
                let i = {
                    use rand::Rng;
                    let mut pick = None;
                    for _ in 0..200 {
                        let c = rng.gen_range(1..s.len());
                        let a = s.ev.kind_at(c - 1);
                        let b = s.ev.kind_at(c);
                        let face = match (a, b) {
                            (StdKind::Vertex { slot }, StdKind::Edge { a, b }) => {
                                slot == a || slot == b
                            }
                            _ => false,
                        };
                        if !face {
                            pick = Some(c);
                            break;
                        }
                    }
                    match pick {
                        Some(c) => c,
                        None => i,
                    }
                };
                let report = s.switch(i).unwrap();
                let fresh = StdUpdateState::preprocess(s.ev.clone());
                assert_eq!(s.pairing(), fresh.pairing(), "round {round} step {step} pos {i}");
                assert_eq!(s.forest_canonical(), fresh.forest_canonical(), "round {round} step {step}");
                assert_eq!(s.msf_edge_positions(), fresh.msf_edge_positions());
                // pairing changes only in the allowed cases
                if report.pairing_changed {
                    assert!(matches!(
                        report.case,
                        SwitchCase::VertexVertex
                            | SwitchCase::EdgeNegPos { in_cycle: true }
                            | SwitchCase::EdgeBothNegative { parent_child: true }
                    ));
                    if report.case == (SwitchCase::EdgeBothNegative { parent_child: true }) {
                        assert_eq!(report.configuration, Some(Configuration::ToYounger));
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_switch_rejected() {
        let mut s = state("+ v 0\n+ v 1\n+ e 0 1\n");
        assert_eq!(s.switch(2), Err(SwitchError::InvalidSwitch(2)));
        assert_eq!(s.switch(0), Err(SwitchError::OutOfRange(0)));
        assert_eq!(s.switch(3), Err(SwitchError::OutOfRange(3)));
    }
}
