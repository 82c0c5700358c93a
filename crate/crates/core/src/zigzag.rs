//! Graph zigzag persistence in O(m log m): convert the input filtration to
//! a cell-wise up-down filtration (parallel edges allowed), pair cells with
//! union-find plus a spanning-forest scan, and map the intervals back.

use crate::dynforest::DynForest;
use crate::model::{
    barcode_from_pairing, sort_barcode, Death, Direction, EndType, Event, Filtration, Flavor,
    Interval, Pairing, Simplex,
};
use crate::standard::{pair_std_events, StdEvents, StdKind, UnionFind};
use std::collections::HashMap;

pub type CellId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Vertex,
    /// Endpoints are vertex cell ids; parallel copies of the same edge get
    /// distinct cells.
    Edge(CellId, CellId),
}

/// The cell-wise up-down filtration: all `k` additions (cells in addition
/// order) followed by the same `k` cells deleted in their deletion order,
/// with the event bijection back to the original filtration.
#[derive(Debug, Clone)]
pub struct UpDown {
    pub kinds: Vec<CellKind>,
    /// ascending position -> cell (identity right after conversion)
    pub asc_order: Vec<CellId>,
    pub asc_pos: Vec<u32>,
    /// deletion position (0-based within the descending part) -> cell
    pub del_order: Vec<CellId>,
    pub del_pos: Vec<u32>,
    /// ascending position -> original event index
    pub phi_asc: Vec<usize>,
    /// deletion position -> original event index
    pub phi_del: Vec<usize>,
    /// vertex cell -> dense slot
    pub vslot: Vec<u32>,
    pub n_vslots: usize,
}

impl UpDown {
    pub fn cell_count(&self) -> usize {
        self.kinds.len()
    }

    /// Number of events of the up-down filtration (2k).
    pub fn len(&self) -> usize {
        2 * self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    /// phi: up-down event index -> original event index.
    pub fn phi(&self, u_index: usize) -> usize {
        let k = self.cell_count();
        if u_index < k {
            self.phi_asc[u_index]
        } else {
            self.phi_del[u_index - k]
        }
    }

    /// Deletion event index (in the up-down filtration) of a cell.
    pub fn del_index(&self, cell: CellId) -> usize {
        self.cell_count() + self.del_pos[cell as usize] as usize
    }

    pub fn edge_slots(&self, cell: CellId) -> (u32, u32) {
        match self.kinds[cell as usize] {
            CellKind::Edge(u, v) => (self.vslot[u as usize], self.vslot[v as usize]),
            CellKind::Vertex => unreachable!("edge cell expected"),
        }
    }

    /// Ascending part as a reorderable standard event sequence, event id =
    /// cell id.
    pub fn asc_events(&self) -> StdEvents {
        let kinds = self.std_kinds();
        let mut ev = StdEvents::new(kinds, self.n_vslots);
        ev.order = self.asc_order.clone();
        ev.pos = self.asc_pos.clone();
        ev
    }

    /// Descending part read backwards (an ascending cell filtration ending
    /// at the full graph), event id = cell id.
    pub fn desc_events(&self) -> StdEvents {
        let kinds = self.std_kinds();
        let mut ev = StdEvents::new(kinds, self.n_vslots);
        ev.order = self.del_order.iter().rev().copied().collect();
        for (p, &c) in ev.order.iter().enumerate() {
            ev.pos[c as usize] = p as u32;
        }
        ev
    }

    fn std_kinds(&self) -> Vec<StdKind> {
        (0..self.kinds.len())
            .map(|c| match self.kinds[c] {
                CellKind::Vertex => StdKind::Vertex { slot: self.vslot[c] },
                CellKind::Edge(u, v) => {
                    StdKind::Edge { a: self.vslot[u as usize], b: self.vslot[v as usize] }
                }
            })
            .collect()
    }

    /// The up-down filtration as a plain (parallel-edge) event sequence;
    /// cells are named by their ids.
    pub fn to_filtration(&self) -> Filtration {
        let simplex = |c: CellId| match self.kinds[c as usize] {
            CellKind::Vertex => Simplex::Vertex(c as u64),
            CellKind::Edge(u, v) => Simplex::edge(u as u64, v as u64),
        };
        let mut events: Vec<Event> =
            self.asc_order.iter().map(|&c| Event::add(simplex(c))).collect();
        events.extend(self.del_order.iter().map(|&c| Event::remove(simplex(c))));
        Filtration::new_parallel(Flavor::Zigzag, events).expect("conversion preserves validity")
    }

    /// Debug dump of the converted filtration: additions then deletions,
    /// cells named by occurrence id.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for &c in &self.asc_order {
            match self.kinds[c as usize] {
                CellKind::Vertex => s.push_str(&format!("+ v {c}\n")),
                CellKind::Edge(u, v) => s.push_str(&format!("+ e {c} {u} {v}\n")),
            }
        }
        for &c in &self.del_order {
            match self.kinds[c as usize] {
                CellKind::Vertex => s.push_str(&format!("- v {c}\n")),
                CellKind::Edge(u, v) => s.push_str(&format!("- e {c} {u} {v}\n")),
            }
        }
        s
    }
}

/// Converts a validated zigzag filtration into its cell-wise up-down form:
/// additions become uniquely identified cells in order, deletions reference
/// the live cell of the deleted simplex.
pub fn convert(f: &Filtration) -> UpDown {
    assert_eq!(f.flavor(), Flavor::Zigzag);
    let mut live: HashMap<Simplex, CellId> = HashMap::new();
    let mut kinds: Vec<CellKind> = Vec::new();
    let mut vslot: Vec<u32> = Vec::new();
    let mut n_vslots = 0u32;
    let mut del_order: Vec<CellId> = Vec::new();
    let mut phi_asc = Vec::new();
    let mut phi_del = Vec::new();
    for (i, ev) in f.events().iter().enumerate() {
        match ev.direction {
            Direction::Add => {
                let id = kinds.len() as CellId;
                match ev.simplex {
                    Simplex::Vertex(_) => {
                        kinds.push(CellKind::Vertex);
                        vslot.push(n_vslots);
                        n_vslots += 1;
                    }
                    Simplex::Edge(u, v) => {
                        kinds.push(CellKind::Edge(
                            live[&Simplex::Vertex(u)],
                            live[&Simplex::Vertex(v)],
                        ));
                        vslot.push(u32::MAX);
                    }
                }
                live.insert(ev.simplex, id);
                phi_asc.push(i);
            }
            Direction::Remove => {
                let cell = live.remove(&ev.simplex).expect("validated filtration");
                del_order.push(cell);
                phi_del.push(i);
            }
        }
    }
    let k = kinds.len();
    debug_assert_eq!(del_order.len(), k, "zigzag filtrations end empty");
    let asc_order: Vec<CellId> = (0..k as u32).collect();
    let asc_pos = asc_order.clone();
    let mut del_pos = vec![0u32; k];
    for (p, &c) in del_order.iter().enumerate() {
        del_pos[c as usize] = p as u32;
    }
    UpDown {
        kinds,
        asc_order,
        asc_pos,
        del_order,
        del_pos,
        phi_asc,
        phi_del,
        vslot,
        n_vslots: n_vslots as usize,
    }
}

/// Full cell pairing of an up-down filtration: vertex-edge pairs of both
/// monotone parts, the per-component closed-closed dim-0 pairs, and the
/// edge-edge pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgePairState {
    /// ascending-part pairing by cell (negative edge <-> vertex)
    pub asc_partner: Vec<Option<CellId>>,
    /// reversed-descending-part pairing by cell
    pub desc_partner: Vec<Option<CellId>>,
    /// per final-graph component: (first ascending vertex, last deleted vertex)
    pub cc0: Vec<(CellId, CellId)>,
    /// (positive ascending edge, positive descending edge) pairs
    pub ee: Vec<(CellId, CellId)>,
}

/// Union-find pass over the whole graph, grouping vertex cells by final
/// component.
fn final_components(ud: &UpDown) -> Vec<u32> {
    let mut uf = UnionFind::new(ud.n_vslots);
    for kind in &ud.kinds {
        if let CellKind::Edge(u, v) = *kind {
            let ru = uf.find(ud.vslot[u as usize]);
            let rv = uf.find(ud.vslot[v as usize]);
            if ru != rv {
                uf.union_roots(ru, rv);
            }
        }
    }
    (0..ud.n_vslots as u32).map(|s| uf.find(s)).collect()
}

pub fn updown_pairs(ud: &UpDown) -> EdgePairState {
    updown_pairs_counted(ud, &mut 0, false)
}

/// `check_invariant` additionally verifies, after every scan step, that the
/// maintained forest spans the full graph (the loop invariant of the
/// edge-edge pairing scan).
pub fn updown_pairs_counted(ud: &UpDown, ops: &mut u64, check_invariant: bool) -> EdgePairState {
    let asc = ud.asc_events();
    let desc = ud.desc_events();
    let asc_partner = pair_std_events(&asc);
    let desc_partner = pair_std_events(&desc);

    // closed-closed dim-0 pairs: the unpaired vertex per component on each side
    let comp = final_components(ud);
    let mut asc_rep: HashMap<u32, CellId> = HashMap::new();
    let mut desc_rep: HashMap<u32, CellId> = HashMap::new();
    for c in 0..ud.cell_count() as u32 {
        if matches!(ud.kinds[c as usize], CellKind::Vertex) {
            let root = comp[ud.vslot[c as usize] as usize];
            if asc_partner[c as usize].is_none() {
                let prev = asc_rep.insert(root, c);
                debug_assert!(prev.is_none(), "one unpaired vertex per component");
            }
            if desc_partner[c as usize].is_none() {
                let prev = desc_rep.insert(root, c);
                debug_assert!(prev.is_none());
            }
        }
    }
    let mut cc0: Vec<(CellId, CellId)> = asc_rep
        .iter()
        .map(|(root, &a)| (a, *desc_rep.get(root).expect("components match")))
        .collect();
    cc0.sort_unstable();

    // edge-edge pairs: scan the descending part, keeping a spanning forest
    // of the full graph weighted by ascending positions
    let mut forest = DynForest::with_vertices(ud.n_vslots);
    let mut cell_of: HashMap<crate::dynforest::EdgeHandle, CellId> = HashMap::new();
    for p in 0..desc.len() {
        let c = desc.id_at(p);
        if desc_partner[c as usize].is_some() {
            if let CellKind::Edge(..) = ud.kinds[c as usize] {
                let (a, b) = ud.edge_slots(c);
                let h = forest
                    .link(
                        crate::dynforest::NodeId(a),
                        crate::dynforest::NodeId(b),
                        ud.asc_pos[c as usize],
                    )
                    .expect("negative edges form a forest");
                cell_of.insert(h, c);
            }
        }
    }
    let mut ee: Vec<(CellId, CellId)> = Vec::new();
    for p in 0..desc.len() {
        let c = desc.id_at(p);
        if desc_partner[c as usize].is_some() || matches!(ud.kinds[c as usize], CellKind::Vertex) {
            continue;
        }
        let (a, b) = ud.edge_slots(c);
        let (w, eps_handle) = forest
            .path_bottleneck(crate::dynforest::NodeId(a), crate::dynforest::NodeId(b))
            .expect("positive edge endpoints are connected in the forest");
        // pair the younger of {c, eps} with respect to the ascending part
        if ud.asc_pos[c as usize] > w {
            ee.push((c, c));
        } else {
            let eps = cell_of.remove(&eps_handle).expect("bottleneck edge is tracked");
            ee.push((eps, c));
            forest.cut(eps_handle).expect("live handle");
            let h = forest
                .link(crate::dynforest::NodeId(a), crate::dynforest::NodeId(b), ud.asc_pos[c as usize])
                .expect("replacement keeps the forest acyclic");
            cell_of.insert(h, c);
        }
        if check_invariant {
            // the forest must keep spanning every component of the full graph
            let comp_now = final_components(ud);
            for s in 0..ud.n_vslots as u32 {
                let r = comp_now[s as usize];
                assert!(
                    forest.connected(crate::dynforest::NodeId(s), crate::dynforest::NodeId(r)),
                    "forest no longer spans its component after step {p}"
                );
            }
        }
    }
    ee.sort_unstable();
    *ops += forest.rotations();
    EdgePairState { asc_partner, desc_partner, cc0, ee }
}

/// Assembles the up-down pairing as creator/destroyer event indices of the
/// up-down filtration.
pub fn updown_pairing(ud: &UpDown, pairs: &EdgePairState) -> Pairing {
    let k = ud.cell_count();
    let mut pairing = Pairing::default();
    for c in 0..k as u32 {
        if let Some(e) = pairs.asc_partner[c as usize] {
            if matches!(ud.kinds[c as usize], CellKind::Vertex) {
                pairing
                    .pairs
                    .insert(ud.asc_pos[c as usize] as usize, ud.asc_pos[e as usize] as usize);
            }
        }
        if let Some(e) = pairs.desc_partner[c as usize] {
            if matches!(ud.kinds[c as usize], CellKind::Vertex) {
                pairing.pairs.insert(ud.del_index(e), ud.del_index(c));
            }
        }
    }
    for &(a, d) in &pairs.cc0 {
        pairing.pairs.insert(ud.asc_pos[a as usize] as usize, ud.del_index(d));
    }
    for &(a, c) in &pairs.ee {
        pairing.pairs.insert(ud.asc_pos[a as usize] as usize, ud.del_index(c));
    }
    pairing
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("interval mapping produced negative dimension at [{0}, {1}]")]
    DimensionUnderflow(usize, usize),
}

/// Maps intervals of the up-down filtration back to the original: an
/// interval with creator `b-1` and destroyer `d` keeps its creator and
/// destroyer (via phi); when their original order is reversed the roles
/// swap and the dimension drops by one. Endpoint types follow the original
/// arrow directions.
pub fn map_intervals(ud: &UpDown, pers_u: &[Interval]) -> Result<Vec<Interval>, MapError> {
    let k = ud.cell_count();
    let mut out = Vec::with_capacity(pers_u.len());
    for iv in pers_u {
        let Death::Finite(d) = iv.death else {
            panic!("up-down intervals are finite");
        };
        let (b1, d) = (iv.birth - 1, d);
        let (fb, fd) = (ud.phi(b1), ud.phi(d));
        let (creator_u, destroyer_u, dim) = if fb < fd {
            (b1, d, iv.dim)
        } else {
            if iv.dim == 0 {
                return Err(MapError::DimensionUnderflow(iv.birth, d));
            }
            (d, b1, iv.dim - 1)
        };
        let (cf, df) = (ud.phi(creator_u), ud.phi(destroyer_u));
        out.push(Interval {
            dim,
            birth: cf + 1,
            death: Death::Finite(df),
            birth_type: if creator_u < k { EndType::Closed } else { EndType::Open },
            death_type: if destroyer_u < k { EndType::Open } else { EndType::Closed },
        });
    }
    sort_barcode(&mut out);
    Ok(out)
}

/// Full zigzag barcode of a validated zigzag filtration, O(m log m).
pub fn compute_zigzag(f: &Filtration) -> Vec<Interval> {
    compute_zigzag_counted(f, &mut 0)
}

pub fn compute_zigzag_counted(f: &Filtration, ops: &mut u64) -> Vec<Interval> {
    let ud = convert(f);
    let pairs = updown_pairs_counted(&ud, ops, false);
    let pairing = updown_pairing(&ud, &pairs);
    let uf = ud.to_filtration();
    let pers_u = barcode_from_pairing(&uf, &pairing).expect("pairing is consistent");
    debug_assert_eq!(pers_u.len(), f.len() / 2, "one interval per cell pair");
    debug_assert!(
        pers_u
            .iter()
            .all(|iv| !(iv.birth_type == EndType::Open && iv.death_type == EndType::Open)),
        "up-down filtrations admit no open-open intervals"
    );
    debug_assert!(
        pers_u.iter().all(|iv| iv.dim == 0
            || (iv.birth_type == EndType::Closed && iv.death_type == EndType::Closed)),
        "dim-1 intervals are closed-closed"
    );
    map_intervals(&ud, &pers_u).expect("valid inputs never underflow")
}
