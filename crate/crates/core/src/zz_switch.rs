//! Maintained zigzag barcodes under switches.
//!
//! The state lives on the up-down side of the conversion: one standard
//! update state for the ascending part (closed-open intervals), one for the
//! reversed descending part (open-closed), constant-time bookkeeping of the
//! oldest vertices per component (closed-closed dim 0), and the edge-edge
//! pair set (open-open dim 0 / closed-closed dim 1).
//!
//! Outward and inward switches leave the up-down filtration untouched and
//! only remap two event indices. Forward and backward switches act on one
//! monotone part; the edge-edge pairs are maintained without
//! representatives, by connectivity queries of the form "are `u`, `v`
//! connected in (ascending prefix) ∩ (descending graph)": a bottleneck
//! query with an ascending-index threshold against the MSF of the
//! descending graph. Those MSFs are materialized at sqrt(m)-spaced
//! checkpoints, extended on demand by replaying at most sqrt(m) deleted
//! edges and rolled back afterwards; a backward switch instead reconstructs
//! at most one checkpoint from its neighbor's recorded delta.

use crate::dynforest::{DynForest, EdgeHandle, NodeId};
use crate::model::{
    barcode_from_pairing, Direction, Event, Filtration, Flavor, Interval, Pairing,
};
use crate::standard::EventId;
use crate::std_switch::{StdUpdateState, SwitchError};
use crate::zigzag::{convert, updown_pairs, CellId, CellKind, UpDown};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZzKind {
    Forward,
    Backward,
    Outward,
    Inward,
}

/// Which edge-edge case fired, for targeted tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EeOutcome {
    NotApplicable,
    BothNegative,
    PosNeg,
    NegPos { transferred: bool },
    BothPositive { relevant: bool, changed: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZzReport {
    pub kind: ZzKind,
    pub ee: EeOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UPos {
    Asc(usize),
    Del(usize),
}

struct Checkpoint {
    lambda: usize,
    forest: DynForest,
    handle_of: HashMap<CellId, EdgeHandle>,
    cell_of: HashMap<EdgeHandle, CellId>,
    /// content delta against the previous (smaller) checkpoint graph
    delta_add: BTreeSet<CellId>,
    delta_rm: BTreeSet<CellId>,
}

enum UndoOp {
    Linked(CellId),
    Replaced { added: CellId, removed: CellId },
}

impl Checkpoint {
    fn link(&mut self, cell: CellId, a: u32, b: u32, w: u32) {
        let h = self.forest.link(NodeId(a), NodeId(b), w).expect("distinct trees");
        self.handle_of.insert(cell, h);
        self.cell_of.insert(h, cell);
    }

    fn cut(&mut self, cell: CellId) {
        let h = self.handle_of.remove(&cell).expect("tracked edge");
        self.cell_of.remove(&h);
        self.forest.cut(h).expect("live handle");
    }

    /// MSF insertion with replacement; returns what happened.
    fn insert(&mut self, cell: CellId, a: u32, b: u32, w: u32) -> Option<UndoOp> {
        if !self.forest.connected(NodeId(a), NodeId(b)) {
            self.link(cell, a, b, w);
            return Some(UndoOp::Linked(cell));
        }
        let (bw, bh) = self.forest.path_bottleneck(NodeId(a), NodeId(b)).expect("connected");
        if bw > w {
            let removed = self.cell_of[&bh];
            self.cut(removed);
            self.link(cell, a, b, w);
            return Some(UndoOp::Replaced { added: cell, removed });
        }
        None
    }
}

pub struct ZzUpdateState {
    events: Vec<Event>,
    kinds: Vec<CellKind>,
    vslot: Vec<u32>,
    n_vslots: usize,
    asc: StdUpdateState,
    desc: StdUpdateState,
    phi_asc: Vec<usize>,
    phi_del: Vec<usize>,
    inv_phi: Vec<UPos>,
    /// vertex slot -> final-graph component root (static across switches)
    comp: Vec<u32>,
    oldest_asc: HashMap<u32, CellId>,
    oldest_desc: HashMap<u32, CellId>,
    ee_asc: Vec<Option<CellId>>,
    ee_desc: Vec<Option<CellId>>,
    cps: Vec<Checkpoint>,
    gap: usize,
    extra_ops: u64,
}

impl ZzUpdateState {
    /// Builds the full update state: both monotone standard states, the
    /// oldest-vertex tables, the edge-edge pairs, and one Kruskal-built MSF
    /// per checkpoint graph. O(m^1.5 log m).
    pub fn preprocess(f: &Filtration) -> Self {
        assert_eq!(f.flavor(), Flavor::Zigzag);
        let ud = convert(f);
        let pairs = updown_pairs(&ud);
        let k = ud.cell_count();
        let m = 2 * k;

        let asc = StdUpdateState::preprocess(ud.asc_events());
        let desc = StdUpdateState::preprocess(ud.desc_events());

        let mut inv_phi = vec![UPos::Asc(0); m];
        for (p, &i) in ud.phi_asc.iter().enumerate() {
            inv_phi[i] = UPos::Asc(p);
        }
        for (p, &i) in ud.phi_del.iter().enumerate() {
            inv_phi[i] = UPos::Del(p);
        }

        // component table plus the per-component oldest vertices
        let mut comp_uf = crate::standard::UnionFind::new(ud.n_vslots);
        for kind in &ud.kinds {
            if let CellKind::Edge(u, v) = *kind {
                let (ru, rv) = (
                    comp_uf.find(ud.vslot[u as usize]),
                    comp_uf.find(ud.vslot[v as usize]),
                );
                if ru != rv {
                    comp_uf.union_roots(ru, rv);
                }
            }
        }
        let comp: Vec<u32> = (0..ud.n_vslots as u32).map(|s| comp_uf.find(s)).collect();
        let mut oldest_asc = HashMap::new();
        let mut oldest_desc = HashMap::new();
        for &(a, d) in &pairs.cc0 {
            let root = comp[ud.vslot[a as usize] as usize];
            oldest_asc.insert(root, a);
            oldest_desc.insert(root, d);
        }

        let mut ee_asc: Vec<Option<CellId>> = vec![None; k];
        let mut ee_desc: Vec<Option<CellId>> = vec![None; k];
        for &(a, c) in &pairs.ee {
            ee_asc[a as usize] = Some(c);
            ee_desc[c as usize] = Some(a);
        }

        // checkpoint MSFs of the descending graphs, ascending weights
        let gap = (m as f64).sqrt().ceil().max(1.0) as usize;
        let mut cps = Vec::new();
        let mut lambda = m;
        while lambda >= k {
            let mut cp = Checkpoint {
                lambda,
                forest: DynForest::with_vertices(ud.n_vslots),
                handle_of: HashMap::new(),
                cell_of: HashMap::new(),
                delta_add: BTreeSet::new(),
                delta_rm: BTreeSet::new(),
            };
            let mut live: Vec<CellId> = (0..k as u32)
                .filter(|&c| {
                    matches!(ud.kinds[c as usize], CellKind::Edge(..))
                        && k + ud.del_pos[c as usize] as usize >= lambda
                })
                .collect();
            live.sort_by_key(|&c| ud.asc_pos[c as usize]);
            for c in live {
                let (a, b) = ud.edge_slots(c);
                if !cp.forest.connected(NodeId(a), NodeId(b)) {
                    cp.link(c, a, b, ud.asc_pos[c as usize]);
                }
            }
            cps.push(cp);
            if lambda < gap {
                break;
            }
            lambda -= gap;
        }
        for t in 1..cps.len() {
            let (prev, cur) = {
                let (a, b) = cps.split_at_mut(t);
                (&a[t - 1], &mut b[0])
            };
            cur.delta_add = cur
                .handle_of
                .keys()
                .filter(|c| !prev.handle_of.contains_key(c))
                .copied()
                .collect();
            cur.delta_rm = prev
                .handle_of
                .keys()
                .filter(|c| !cur.handle_of.contains_key(c))
                .copied()
                .collect();
        }

        ZzUpdateState {
            events: f.events().to_vec(),
            kinds: ud.kinds,
            vslot: ud.vslot,
            n_vslots: ud.n_vslots,
            asc,
            desc,
            phi_asc: ud.phi_asc,
            phi_del: ud.phi_del,
            inv_phi,
            comp,
            oldest_asc,
            oldest_desc,
            ee_asc,
            ee_desc,
            cps,
            gap,
            extra_ops: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    fn k(&self) -> usize {
        self.kinds.len()
    }

    pub fn filtration(&self) -> Filtration {
        Filtration::zigzag(self.events.clone()).expect("switches preserve validity")
    }

    /// Dynamic-tree primitive operations across every owned structure.
    pub fn ops(&self) -> u64 {
        let cp_ops: u64 = self.cps.iter().map(|c| c.forest.rotations()).sum();
        self.asc.ops() + self.desc.ops() + cp_ops + self.extra_ops
    }

    pub fn edge_edge_pairs(&self) -> BTreeSet<(CellId, CellId)> {
        self.ee_asc
            .iter()
            .enumerate()
            .filter_map(|(a, d)| d.map(|d| (a as u32, d)))
            .collect()
    }

    fn asc_pos(&self, c: CellId) -> usize {
        self.asc.events().position(c)
    }

    fn del_pos(&self, c: CellId) -> usize {
        self.k() - 1 - self.desc.events().position(c)
    }

    fn del_uidx(&self, c: CellId) -> usize {
        self.k() + self.del_pos(c)
    }

    fn edge_slots(&self, c: CellId) -> (u32, u32) {
        match self.kinds[c as usize] {
            CellKind::Edge(u, v) => (self.vslot[u as usize], self.vslot[v as usize]),
            CellKind::Vertex => unreachable!("edge cell expected"),
        }
    }

    fn cell_deleted_at(&self, dpos: usize) -> CellId {
        self.desc.events().id_at(self.k() - 1 - dpos)
    }

    /// The current up-down view (used for barcode export).
    fn updown_view(&self) -> UpDown {
        let k = self.k();
        let asc_order: Vec<CellId> = (0..k).map(|p| self.asc.events().id_at(p)).collect();
        let mut asc_pos = vec![0u32; k];
        for (p, &c) in asc_order.iter().enumerate() {
            asc_pos[c as usize] = p as u32;
        }
        let del_order: Vec<CellId> = (0..k).map(|p| self.cell_deleted_at(p)).collect();
        let mut del_pos = vec![0u32; k];
        for (p, &c) in del_order.iter().enumerate() {
            del_pos[c as usize] = p as u32;
        }
        UpDown {
            kinds: self.kinds.clone(),
            asc_order,
            asc_pos,
            del_order,
            del_pos,
            phi_asc: self.phi_asc.clone(),
            phi_del: self.phi_del.clone(),
            vslot: self.vslot.clone(),
            n_vslots: self.n_vslots,
        }
    }

    /// Assembles the maintained typed barcode (no recomputation).
    pub fn barcode(&self) -> Vec<Interval> {
        let ud = self.updown_view();
        let k = self.k();
        let mut pairing = Pairing::default();
        for c in 0..k as u32 {
            if matches!(self.kinds[c as usize], CellKind::Vertex) {
                if let Some(e) = self.asc.partner_of(c as EventId) {
                    pairing.pairs.insert(self.asc_pos(c), self.asc_pos(e));
                }
                if let Some(e) = self.desc.partner_of(c as EventId) {
                    pairing.pairs.insert(self.del_uidx(e), self.del_uidx(c));
                }
            }
        }
        for (&root, &a) in &self.oldest_asc {
            let d = self.oldest_desc[&root];
            pairing.pairs.insert(self.asc_pos(a), self.del_uidx(d));
        }
        for (a, d) in self.edge_edge_pairs() {
            pairing.pairs.insert(self.asc_pos(a), self.del_uidx(d));
        }
        let uf = ud.to_filtration();
        let pers_u = barcode_from_pairing(&uf, &pairing).expect("maintained pairing is consistent");
        crate::zigzag::map_intervals(&ud, &pers_u).expect("valid mapping")
    }

    // --- checkpoint machinery ------------------------------------------------

    /// Recomputes the delta membership of `cell` between checkpoints `t-1`
    /// and `t`, from the current handle maps.
    fn sync_delta(&mut self, t: usize, cell: CellId) {
        if t == 0 || t >= self.cps.len() {
            return;
        }
        let in_prev = self.cps[t - 1].handle_of.contains_key(&cell);
        let in_cur = self.cps[t].handle_of.contains_key(&cell);
        let cp = &mut self.cps[t];
        if in_cur && !in_prev {
            cp.delta_add.insert(cell);
        } else {
            cp.delta_add.remove(&cell);
        }
        if in_prev && !in_cur {
            cp.delta_rm.insert(cell);
        } else {
            cp.delta_rm.remove(&cell);
        }
    }

    /// Refreshes the ascending weights of the two switched edges in every
    /// materialized checkpoint, swapping the edges where the reorder changes
    /// the checkpoint's MSF. `ca` moved to position `j`, `cb` to `j-1`.
    fn refresh_checkpoints(&mut self, ca: CellId, cb: CellId, j: usize) {
        let (da, db) = (self.del_uidx(ca), self.del_uidx(cb));
        for t in 0..self.cps.len() {
            let lambda = self.cps[t].lambda;
            let pa = da >= lambda;
            let pb = db >= lambda;
            let in_a = pa && self.cps[t].handle_of.contains_key(&ca);
            let in_b = pb && self.cps[t].handle_of.contains_key(&cb);
            if in_a {
                let h = self.cps[t].handle_of[&ca];
                self.cps[t].forest.set_weight(h, j as u32).expect("live");
            }
            if in_b {
                let h = self.cps[t].handle_of[&cb];
                self.cps[t].forest.set_weight(h, (j - 1) as u32).expect("live");
            }
            if pa && pb && in_a && !in_b {
                // cb (now lighter) may displace ca on its cycle
                let (x, y) = self.edge_slots(cb);
                let (w, bh) = self.cps[t]
                    .forest
                    .path_bottleneck(NodeId(x), NodeId(y))
                    .expect("rejected edge endpoints are connected");
                if w as usize > j - 1 {
                    debug_assert_eq!(self.cps[t].cell_of[&bh], ca, "only the moved edge can outweigh");
                    self.cps[t].cut(ca);
                    self.cps[t].link(cb, x, y, (j - 1) as u32);
                    self.sync_delta(t, ca);
                    self.sync_delta(t, cb);
                    self.sync_delta(t + 1, ca);
                    self.sync_delta(t + 1, cb);
                }
            }
        }
    }

    /// Temporarily extends the nearest checkpoint above `lambda` down to
    /// `lambda`, answers whether the two slots are connected using only
    /// edges of ascending position `<= threshold`, then rolls back.
    fn intersection_connected(&mut self, lambda: usize, x: u32, y: u32, threshold: isize) -> bool {
        debug_assert!(lambda >= self.k() && lambda <= 2 * self.k());
        if threshold < 0 {
            return false;
        }
        let m = 2 * self.k();
        let t = (m - lambda) / self.gap;
        let cp_lambda = self.cps[t].lambda;
        debug_assert!(cp_lambda >= lambda);
        let mut undo: Vec<UndoOp> = Vec::new();
        for dpos in (lambda - self.k())..(cp_lambda - self.k()) {
            let cell = self.cell_deleted_at(dpos);
            if matches!(self.kinds[cell as usize], CellKind::Edge(..)) {
                let (a, b) = self.edge_slots(cell);
                let w = self.asc_pos(cell) as u32;
                if let Some(op) = self.cps[t].insert(cell, a, b, w) {
                    undo.push(op);
                }
            }
            self.extra_ops += 1;
        }
        let cp = &mut self.cps[t];
        let answer = if x == y {
            true
        } else {
            cp.forest.connected(NodeId(x), NodeId(y))
                && cp.forest.path_bottleneck(NodeId(x), NodeId(y)).expect("connected").0 as usize
                    <= threshold as usize
        };
        for op in undo.into_iter().rev() {
            match op {
                UndoOp::Linked(cell) => self.cps[t].cut(cell),
                UndoOp::Replaced { added, removed } => {
                    self.cps[t].cut(added);
                    let (a, b) = self.edge_slots(removed);
                    let w = self.asc_pos(removed) as u32;
                    self.cps[t].link(removed, a, b, w);
                }
            }
        }
        answer
    }

    /// After a backward switch changed the descending graph at `lambda`,
    /// reconstructs that checkpoint's MSF from its smaller neighbor via the
    /// recorded delta, then re-extends over the (new) slice.
    fn rebuild_checkpoint(&mut self, lambda: usize) {
        let m = 2 * self.k();
        if (m - lambda) % self.gap != 0 {
            return;
        }
        let t = (m - lambda) / self.gap;
        if t >= self.cps.len() {
            return;
        }
        debug_assert!(t >= 1, "the empty top checkpoint never changes");
        let mut candidates: BTreeSet<CellId> = BTreeSet::new();
        // revert to the previous checkpoint's content
        let add: Vec<CellId> = self.cps[t].delta_add.iter().copied().collect();
        let rm: Vec<CellId> = self.cps[t].delta_rm.iter().copied().collect();
        for cell in add {
            self.cps[t].cut(cell);
            candidates.insert(cell);
            self.extra_ops += 1;
        }
        for cell in rm {
            let (a, b) = self.edge_slots(cell);
            let w = self.asc_pos(cell) as u32;
            self.cps[t].link(cell, a, b, w);
            candidates.insert(cell);
            self.extra_ops += 1;
        }
        self.cps[t].delta_add.clear();
        self.cps[t].delta_rm.clear();
        // re-extend over the current slice
        let hi = self.cps[t - 1].lambda;
        for dpos in (lambda - self.k())..(hi - self.k()) {
            let cell = self.cell_deleted_at(dpos);
            if matches!(self.kinds[cell as usize], CellKind::Edge(..)) {
                let (a, b) = self.edge_slots(cell);
                let w = self.asc_pos(cell) as u32;
                candidates.insert(cell);
                if let Some(UndoOp::Replaced { removed, .. }) = self.cps[t].insert(cell, a, b, w) {
                    candidates.insert(removed);
                }
            }
            self.extra_ops += 1;
        }
        for cell in candidates {
            self.sync_delta(t, cell);
            self.sync_delta(t + 1, cell);
        }
    }

    // --- switches --------------------------------------------------------------

    fn check_kind(&self, kind: ZzKind, i: usize) -> Result<(), SwitchError> {
        if i == 0 || i >= self.events.len() {
            return Err(SwitchError::OutOfRange(i));
        }
        let a = self.events[i - 1];
        let b = self.events[i];
        let dirs = (a.direction, b.direction);
        let want = match kind {
            ZzKind::Forward => (Direction::Add, Direction::Add),
            ZzKind::Backward => (Direction::Remove, Direction::Remove),
            ZzKind::Outward => (Direction::Add, Direction::Remove),
            ZzKind::Inward => (Direction::Remove, Direction::Add),
        };
        if dirs != want {
            return Err(SwitchError::KindMismatch(i));
        }
        let legal = match kind {
            ZzKind::Forward => !a.simplex.is_face_of(&b.simplex),
            ZzKind::Backward => !b.simplex.is_face_of(&a.simplex),
            ZzKind::Outward | ZzKind::Inward => a.simplex != b.simplex,
        };
        if !legal {
            return Err(SwitchError::InvalidSwitch(i));
        }
        Ok(())
    }

    pub fn switch(&mut self, kind: ZzKind, i: usize) -> Result<ZzReport, SwitchError> {
        self.check_kind(kind, i)?;
        let ee = match kind {
            ZzKind::Forward => self.forward(i),
            ZzKind::Backward => self.backward(i),
            ZzKind::Outward | ZzKind::Inward => {
                // the up-down filtration is unchanged; only phi moves
                let (pa, pd) = match kind {
                    ZzKind::Outward => match (self.inv_phi[i - 1], self.inv_phi[i]) {
                        (UPos::Asc(pa), UPos::Del(pd)) => (pa, pd),
                        _ => unreachable!("kind checked"),
                    },
                    _ => match (self.inv_phi[i - 1], self.inv_phi[i]) {
                        (UPos::Del(pd), UPos::Asc(pa)) => (pa, pd),
                        _ => unreachable!("kind checked"),
                    },
                };
                let (fa, fd) = (self.phi_asc[pa], self.phi_del[pd]);
                self.phi_asc[pa] = fd;
                self.phi_del[pd] = fa;
                self.inv_phi.swap(i - 1, i);
                self.events.swap(i - 1, i);
                EeOutcome::NotApplicable
            }
        };
        Ok(ZzReport { kind, ee })
    }

    fn forward(&mut self, i: usize) -> EeOutcome {
        let (UPos::Asc(p1), UPos::Asc(p2)) = (self.inv_phi[i - 1], self.inv_phi[i]) else {
            unreachable!("kind checked")
        };
        debug_assert_eq!(p2, p1 + 1);
        let j = p2;
        let ca = self.asc.events().id_at(j - 1);
        let cb = self.asc.events().id_at(j);
        let both_edges = matches!(self.kinds[ca as usize], CellKind::Edge(..))
            && matches!(self.kinds[cb as usize], CellKind::Edge(..));
        let pre_signs = (self.asc.is_negative(ca), self.asc.is_negative(cb));

        self.asc.switch(j).expect("legal switch");
        self.events.swap(i - 1, i);

        if let (CellKind::Vertex, CellKind::Vertex) = (self.kinds[ca as usize], self.kinds[cb as usize])
        {
            let (ra, rb) = (
                self.comp[self.vslot[ca as usize] as usize],
                self.comp[self.vslot[cb as usize] as usize],
            );
            if ra == rb && self.oldest_asc.get(&ra) == Some(&ca) {
                self.oldest_asc.insert(ra, cb);
            }
            return EeOutcome::NotApplicable;
        }
        if !both_edges {
            // one edge: its ascending weight moved by one, across a vertex
            // position; checkpoint weights must follow
            let edge = if matches!(self.kinds[ca as usize], CellKind::Edge(..)) { ca } else { cb };
            let w = self.asc_pos(edge);
            let du = self.del_uidx(edge);
            for t in 0..self.cps.len() {
                if du >= self.cps[t].lambda {
                    if let Some(&h) = self.cps[t].handle_of.get(&edge) {
                        self.cps[t].forest.set_weight(h, w as u32).expect("live");
                    }
                }
            }
            return EeOutcome::NotApplicable;
        }

        self.refresh_checkpoints(ca, cb, j);
        match pre_signs {
            (true, true) => EeOutcome::BothNegative,
            (false, true) => EeOutcome::PosNeg,
            (true, false) => {
                // transfer iff the previously negative edge lies in a
                // 1-cycle of the post-switch prefix: post-switch bottleneck
                // between cb's endpoints equals j-1
                let (x, y) = self.edge_slots(cb);
                let transferred = self.asc.msf_bottleneck(x, y) == Some((j - 1) as u32);
                if transferred {
                    let eps = self.ee_asc[cb as usize].take().expect("positive edge is paired");
                    self.ee_asc[ca as usize] = Some(eps);
                    self.ee_desc[eps as usize] = Some(ca);
                }
                EeOutcome::NegPos { transferred }
            }
            (false, false) => {
                let eps = self.ee_asc[ca as usize].expect("positive edge is paired");
                let eps2 = self.ee_asc[cb as usize].expect("positive edge is paired");
                let h = self.del_uidx(eps2);
                let he = self.del_uidx(eps);
                if h < he {
                    return EeOutcome::BothPositive { relevant: false, changed: false };
                }
                // pairing stays iff a cycle through cb and eps2 exists in
                // (post-switch prefix j) ∩ (graph right before eps2 dies)
                let (x2, y2) = self.edge_slots(cb);
                let qa = self.intersection_connected(h, x2, y2, j as isize - 2);
                let qb = self.asc_pos(eps2) <= j - 1 && {
                    let (ex, ey) = self.edge_slots(eps2);
                    self.intersection_connected(h + 1, ex, ey, j as isize - 1)
                };
                let changed = !(qa && qb);
                if changed {
                    self.ee_asc[ca as usize] = Some(eps2);
                    self.ee_asc[cb as usize] = Some(eps);
                    self.ee_desc[eps2 as usize] = Some(ca);
                    self.ee_desc[eps as usize] = Some(cb);
                }
                EeOutcome::BothPositive { relevant: true, changed }
            }
        }
    }

    fn backward(&mut self, i: usize) -> EeOutcome {
        let (UPos::Del(pa), UPos::Del(pb)) = (self.inv_phi[i - 1], self.inv_phi[i]) else {
            unreachable!("kind checked")
        };
        debug_assert_eq!(pb, pa + 1);
        let p = pa;
        let csig = self.cell_deleted_at(p);
        let ctau = self.cell_deleted_at(p + 1);
        let both_edges = matches!(self.kinds[csig as usize], CellKind::Edge(..))
            && matches!(self.kinds[ctau as usize], CellKind::Edge(..));
        let any_edge = matches!(self.kinds[csig as usize], CellKind::Edge(..))
            || matches!(self.kinds[ctau as usize], CellKind::Edge(..));
        // mirrored ascending roles: the later deletion comes first in the
        // reversed part
        let pre_signs = (self.desc.is_negative(ctau), self.desc.is_negative(csig));
        let q = self.k() - 1 - p;

        self.desc.switch(q).expect("legal switch");
        self.events.swap(i - 1, i);
        let delta = self.k() + p;

        if let (CellKind::Vertex, CellKind::Vertex) =
            (self.kinds[csig as usize], self.kinds[ctau as usize])
        {
            let (ra, rb) = (
                self.comp[self.vslot[csig as usize] as usize],
                self.comp[self.vslot[ctau as usize] as usize],
            );
            if ra == rb && self.oldest_desc.get(&ra) == Some(&ctau) {
                self.oldest_desc.insert(ra, csig);
            }
            return EeOutcome::NotApplicable;
        }
        if any_edge {
            self.rebuild_checkpoint(delta + 1);
        }
        if !both_edges {
            return EeOutcome::NotApplicable;
        }

        match pre_signs {
            (true, true) => EeOutcome::BothNegative,
            (false, true) => EeOutcome::PosNeg,
            (true, false) => {
                // mirrored case C on the descending side
                let (x, y) = self.edge_slots(csig);
                let transferred = self.desc.msf_bottleneck(x, y) == Some((q - 1) as u32);
                if transferred {
                    let a = self.ee_desc[csig as usize].take().expect("positive edge is paired");
                    self.ee_desc[ctau as usize] = Some(a);
                    self.ee_asc[a as usize] = Some(ctau);
                }
                EeOutcome::NegPos { transferred }
            }
            (false, false) => {
                let a2 = self.ee_desc[ctau as usize].expect("positive edge is paired");
                let a1 = self.ee_desc[csig as usize].expect("positive edge is paired");
                if self.asc_pos(a1) > self.asc_pos(a2) {
                    return EeOutcome::BothPositive { relevant: false, changed: false };
                }
                let (x, y) = self.edge_slots(csig);
                let qa = self.intersection_connected(delta + 2, x, y, self.asc_pos(a1) as isize);
                let qb = self.del_uidx(a1) >= delta + 1 && {
                    let (ex, ey) = self.edge_slots(a1);
                    self.intersection_connected(delta + 1, ex, ey, self.asc_pos(a1) as isize - 1)
                };
                let changed = !(qa && qb);
                if changed {
                    self.ee_desc[ctau as usize] = Some(a1);
                    self.ee_desc[csig as usize] = Some(a2);
                    self.ee_asc[a1 as usize] = Some(ctau);
                    self.ee_asc[a2 as usize] = Some(csig);
                }
                EeOutcome::BothPositive { relevant: true, changed }
            }
        }
    }
}
