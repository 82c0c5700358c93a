//! Independent brute-force references: boundary-matrix reduction for
//! standard persistence, a rank-counting zigzag decomposition, and the
//! representative-maintaining edge-edge update (the O(m) form of the switch
//! algorithm). These share nothing with the production paths beyond the
//! core model types; clarity over speed throughout.

use crate::model::{
    sort_barcode, Death, Direction, EndType, Filtration, Flavor, Interval, Pairing, Simplex,
};
use std::collections::{BTreeMap, BTreeSet, HashMap};

// ---------------------------------------------------------------------------
// Standard persistence by column reduction over F2
// ---------------------------------------------------------------------------

/// Left-to-right column reduction with lowest-one pairing. Rows are the
/// vertex addition indices; an edge column holds its two endpoint rows.
pub fn reduce_standard(f: &Filtration) -> Pairing {
    assert_eq!(f.flavor(), Flavor::Standard);
    let mut vertex_row: HashMap<Simplex, usize> = HashMap::new();
    let mut low_inv: HashMap<usize, usize> = HashMap::new();
    let mut cols: Vec<BTreeSet<usize>> = Vec::with_capacity(f.len());
    let mut pairing = Pairing::default();

    for (i, ev) in f.events().iter().enumerate() {
        let mut col = BTreeSet::new();
        match ev.simplex {
            Simplex::Vertex(_) => {
                vertex_row.insert(ev.simplex, i);
            }
            Simplex::Edge(u, v) => {
                col.insert(vertex_row[&Simplex::Vertex(u)]);
                col.insert(vertex_row[&Simplex::Vertex(v)]);
            }
        }
        while let Some(&low) = col.iter().next_back() {
            match low_inv.get(&low) {
                Some(&other) => {
                    let other_col = cols[other].clone();
                    for r in other_col {
                        if !col.remove(&r) {
                            col.insert(r);
                        }
                    }
                }
                None => break,
            }
        }
        match col.iter().next_back() {
            Some(&low) => {
                low_inv.insert(low, i);
                pairing.pairs.insert(low, i);
            }
            None => {
                pairing.unpaired.insert(i);
            }
        }
        cols.push(col);
    }
    // positive paired simplices are not creators of infinite bars
    for (&c, _) in &pairing.pairs {
        pairing.unpaired.remove(&c);
    }
    pairing
}

// ---------------------------------------------------------------------------
// Zigzag barcode by rank counting over F2
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("filtration too large for the brute-force oracle ({0} events)")]
    TooLarge(usize),
}

/// Width-fixed F2 row basis with distinct lead pivots.
#[derive(Clone, PartialEq, Eq)]
struct Rows {
    words: usize,
    data: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Rows {
    fn new(bits: usize) -> Self {
        Rows { words: bits.div_ceil(64), data: Vec::new(), pivots: Vec::new() }
    }

    fn zero_row(&self) -> Vec<u64> {
        vec![0u64; self.words]
    }

    /// Inserts `row` if independent of the current rows.
    fn append(&mut self, mut row: Vec<u64>) {
        for (r, &p) in self.data.iter().zip(&self.pivots) {
            if get(&row, p) {
                xor(&mut row, r);
            }
        }
        if let Some(p) = lead(&row) {
            self.data.push(row);
            self.pivots.push(p);
        }
    }

    /// Restricts the span to vectors with coordinate `bit` zero: eliminates
    /// with one row carrying the bit, drops it, and re-echelonizes.
    fn filter_bit(&mut self, bit: usize) {
        let Some(k) = self.data.iter().position(|r| get(r, bit)) else {
            return;
        };
        let pivot_row = self.data.swap_remove(k);
        self.pivots.clear();
        for r in &mut self.data {
            if get(r, bit) {
                xor(r, &pivot_row);
            }
        }
        let rows = std::mem::take(&mut self.data);
        for r in rows {
            self.append(r);
        }
    }

    fn dim(&self) -> usize {
        self.data.len()
    }

    /// Rank of the projection onto the bit range `[lo, hi)`.
    fn rank_range(&self, lo: usize, hi: usize) -> usize {
        let w = (hi - lo).div_ceil(64);
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for r in &self.data {
            let mut v = vec![0u64; w];
            for b in lo..hi {
                if get(r, b) {
                    v[(b - lo) / 64] |= 1 << ((b - lo) % 64);
                }
            }
            for br in &basis {
                if let Some(p) = lead(br) {
                    if get(&v, p) {
                        xor(&mut v, br);
                    }
                }
            }
            if lead(&v).is_some() {
                basis.push(v);
            }
        }
        basis.len()
    }
}

fn get(r: &[u64], bit: usize) -> bool {
    r[bit / 64] >> (bit % 64) & 1 == 1
}

fn set(r: &mut [u64], bit: usize) {
    r[bit / 64] |= 1 << (bit % 64);
}

fn xor(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= *y;
    }
}

fn lead(r: &[u64]) -> Option<usize> {
    for (w, &x) in r.iter().enumerate() {
        if x != 0 {
            return Some(w * 64 + x.trailing_zeros() as usize);
        }
    }
    None
}

/// Graph snapshot bookkeeping shared by both homology dimensions.
struct ZigzagGraphs {
    m: usize,
    /// dense vertex universe
    n_verts: usize,
    /// dense edge-pair universe
    n_edges: usize,
    /// per event: direction + dense simplex
    steps: Vec<(Direction, DenseSimplex)>,
    /// live vertices / edges before each event index (len m+1)
    live_v: Vec<Vec<bool>>,
    live_e: Vec<Vec<bool>>,
    edge_ends: Vec<(usize, usize)>,
}

#[derive(Clone, Copy)]
enum DenseSimplex {
    V(usize),
    E(usize),
}

impl ZigzagGraphs {
    fn new(f: &Filtration) -> Self {
        let mut vid: BTreeMap<u64, usize> = BTreeMap::new();
        let mut eid: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for ev in f.events() {
            match ev.simplex {
                Simplex::Vertex(v) => {
                    let n = vid.len();
                    vid.entry(v).or_insert(n);
                }
                Simplex::Edge(u, v) => {
                    let n = eid.len();
                    eid.entry((u, v)).or_insert(n);
                }
            }
        }
        let mut edge_ends = vec![(0, 0); eid.len()];
        for (&(u, v), &e) in &eid {
            edge_ends[e] = (vid[&u], vid[&v]);
        }
        let steps: Vec<(Direction, DenseSimplex)> = f
            .events()
            .iter()
            .map(|ev| {
                let ds = match ev.simplex {
                    Simplex::Vertex(v) => DenseSimplex::V(vid[&v]),
                    Simplex::Edge(u, v) => DenseSimplex::E(eid[&(u, v)]),
                };
                (ev.direction, ds)
            })
            .collect();
        let m = steps.len();
        let mut live_v = Vec::with_capacity(m + 1);
        let mut live_e = Vec::with_capacity(m + 1);
        let mut lv = vec![false; vid.len()];
        let mut le = vec![false; eid.len()];
        live_v.push(lv.clone());
        live_e.push(le.clone());
        for &(dir, ds) in &steps {
            let on = dir == Direction::Add;
            match ds {
                DenseSimplex::V(v) => lv[v] = on,
                DenseSimplex::E(e) => le[e] = on,
            }
            live_v.push(lv.clone());
            live_e.push(le.clone());
        }
        ZigzagGraphs {
            m,
            n_verts: vid.len(),
            n_edges: eid.len(),
            steps,
            live_v,
            live_e,
            edge_ends,
        }
    }

    fn components(&self, i: usize) -> Vec<usize> {
        let mut comp: Vec<usize> = (0..self.n_verts).collect();
        fn find(comp: &mut Vec<usize>, mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for e in 0..self.n_edges {
            if self.live_e[i][e] {
                let (u, v) = self.edge_ends[e];
                let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
                if ru != rv {
                    comp[ru] = rv;
                }
            }
        }
        (0..self.n_verts).map(|v| find(&mut comp, v)).collect()
    }

    /// Cycle-space basis of G_i as edge-bit rows.
    fn cycle_basis(&self, i: usize) -> Vec<Vec<u64>> {
        let words = self.n_edges.div_ceil(64);
        let mut comp: Vec<usize> = (0..self.n_verts).collect();
        fn find(comp: &mut Vec<usize>, mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        // spanning forest + fundamental cycle per non-tree edge
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n_verts];
        let mut basis = Vec::new();
        for e in 0..self.n_edges {
            if !self.live_e[i][e] {
                continue;
            }
            let (u, v) = self.edge_ends[e];
            let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
            if ru != rv {
                comp[ru] = rv;
                adj[u].push((v, e));
                adj[v].push((u, e));
            } else {
                // path u -> v in the forest
                let mut row = vec![0u64; words];
                set(&mut row, e);
                let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.n_verts];
                let mut stack = vec![u];
                let mut seen = vec![false; self.n_verts];
                seen[u] = true;
                while let Some(x) = stack.pop() {
                    if x == v {
                        break;
                    }
                    for &(y, ee) in &adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            prev[y] = Some((x, ee));
                            stack.push(y);
                        }
                    }
                }
                let mut cur = v;
                while let Some((px, pe)) = prev[cur] {
                    set(&mut row, pe);
                    cur = px;
                }
                basis.push(row);
            }
        }
        basis
    }

    fn betti(&self, i: usize, p: usize) -> usize {
        let comps = {
            let comp = self.components(i);
            (0..self.n_verts)
                .filter(|&v| self.live_v[i][v])
                .map(|v| comp[v])
                .collect::<BTreeSet<_>>()
                .len()
        };
        if p == 0 {
            comps
        } else {
            let nv = self.live_v[i].iter().filter(|&&b| b).count();
            let ne = self.live_e[i].iter().filter(|&&b| b).count();
            ne + comps - nv
        }
    }
}

/// Generalized rank `r(i, j)` for all `i <= j` via relation propagation,
/// with interval multiplicities by inclusion-exclusion.
fn ranks_to_multiplicities(r: &[Vec<usize>], m: usize) -> BTreeMap<(usize, usize), usize> {
    let mut mult = BTreeMap::new();
    for b in 1..m {
        for d in b..m {
            let n = r[b][d] + r[b - 1][d + 1] - r[b - 1][d] - r[b][d + 1];
            if n > 0 {
                mult.insert((b, d), n);
            }
        }
    }
    mult
}

fn relation_ranks_h0(g: &ZigzagGraphs) -> Vec<Vec<usize>> {
    let m = g.m;
    let nv = g.n_verts;
    let width = 2 * nv;
    let mut r = vec![vec![0usize; m + 1]; m + 1];
    for i in 0..=m {
        let mut rows = Rows::new(width);
        // diagonal classes plus boundary relations on both sides
        for v in 0..nv {
            if g.live_v[i][v] {
                let mut row = rows.zero_row();
                set(&mut row, v);
                set(&mut row, nv + v);
                rows.append(row);
            }
        }
        for e in 0..g.n_edges {
            if g.live_e[i][e] {
                let (u, v) = g.edge_ends[e];
                let mut row = rows.zero_row();
                set(&mut row, u);
                set(&mut row, v);
                rows.append(row);
                let mut row = rows.zero_row();
                set(&mut row, nv + u);
                set(&mut row, nv + v);
                rows.append(row);
            }
        }
        for j in i..=m {
            let ra = rows.rank_range(0, nv);
            let rb = rows.rank_range(nv, width);
            r[i][j] = (ra + rb).saturating_sub(rows.dim());
            if j == m {
                break;
            }
            match g.steps[j] {
                (Direction::Add, DenseSimplex::E(e)) => {
                    let (u, v) = g.edge_ends[e];
                    let mut row = rows.zero_row();
                    set(&mut row, nv + u);
                    set(&mut row, nv + v);
                    rows.append(row);
                }
                (Direction::Add, DenseSimplex::V(_)) => {}
                (Direction::Remove, DenseSimplex::V(v)) => rows.filter_bit(nv + v),
                (Direction::Remove, DenseSimplex::E(_)) => {}
            }
        }
    }
    r
}

fn relation_ranks_h1(g: &ZigzagGraphs) -> Vec<Vec<usize>> {
    let m = g.m;
    let ne = g.n_edges;
    let mut r = vec![vec![0usize; m + 1]; m + 1];
    if ne == 0 {
        return r;
    }
    let width = 2 * ne;
    for i in 0..=m {
        let mut rows = Rows::new(width);
        for z in g.cycle_basis(i) {
            let mut row = rows.zero_row();
            for b in 0..ne {
                if get(&z, b) {
                    set(&mut row, b);
                    set(&mut row, ne + b);
                }
            }
            rows.append(row);
        }
        for j in i..=m {
            let ra = rows.rank_range(0, ne);
            let rb = rows.rank_range(ne, width);
            r[i][j] = (ra + rb).saturating_sub(rows.dim());
            if j == m {
                break;
            }
            if let (Direction::Remove, DenseSimplex::E(e)) = g.steps[j] {
                rows.filter_bit(ne + e);
            }
        }
    }
    r
}

/// Typed zigzag barcode by explicit chain-level linear algebra over F2.
/// Quadratic-to-cubic; guarded to small inputs.
pub fn zigzag_by_ranks(f: &Filtration) -> Result<Vec<Interval>, OracleError> {
    assert_eq!(f.flavor(), Flavor::Zigzag);
    if f.len() > 400 {
        return Err(OracleError::TooLarge(f.len()));
    }
    let g = ZigzagGraphs::new(f);
    let mut out = Vec::new();
    for p in 0..2 {
        let ranks = if p == 0 { relation_ranks_h0(&g) } else { relation_ranks_h1(&g) };
        for ((b, d), n) in ranks_to_multiplicities(&ranks, g.m) {
            let bt = if f.events()[b - 1].is_addition() { EndType::Closed } else { EndType::Open };
            let dt = if f.events()[d].is_addition() { EndType::Open } else { EndType::Closed };
            for _ in 0..n {
                out.push(Interval {
                    dim: p,
                    birth: b,
                    death: Death::Finite(d),
                    birth_type: bt,
                    death_type: dt,
                });
            }
        }
    }
    sort_barcode(&mut out);
    Ok(out)
}

/// Direct betti number of `G_i`, for barcode-correctness cross-checks.
pub fn betti_number(f: &Filtration, i: usize, p: usize) -> usize {
    ZigzagGraphs::new(f).betti(i, p)
}

// ---------------------------------------------------------------------------
// Representative-maintaining edge-edge updates (the O(m) reference)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("representative for pair ({0}, {1}) violates the containment conditions")]
    InvalidRepresentative(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OCell {
    Vertex,
    Edge(u32, u32),
}

/// Independent up-down state with explicit representative cycles per
/// edge-edge pair. Cases A-D of the update are executed literally,
/// including cycle sums; every pair is re-validated after each switch.
#[derive(Clone)]
pub struct RepOracle {
    cells: Vec<OCell>,
    asc_order: Vec<u32>,
    asc_pos: Vec<u32>,
    del_order: Vec<u32>,
    del_pos: Vec<u32>,
    /// ascending edge cell -> (descending cell, representative edge set)
    pairs: BTreeMap<u32, (u32, BTreeSet<u32>)>,
}

impl RepOracle {
    pub fn from_filtration(f: &Filtration) -> Self {
        assert_eq!(f.flavor(), Flavor::Zigzag);
        // own conversion to the cell-wise up-down filtration
        let mut live: HashMap<Simplex, u32> = HashMap::new();
        let mut cells = Vec::new();
        let mut del_order = Vec::new();
        for ev in f.events() {
            match ev.direction {
                Direction::Add => {
                    let id = cells.len() as u32;
                    let kind = match ev.simplex {
                        Simplex::Vertex(_) => OCell::Vertex,
                        Simplex::Edge(u, v) => {
                            OCell::Edge(live[&Simplex::Vertex(u)], live[&Simplex::Vertex(v)])
                        }
                    };
                    cells.push(kind);
                    live.insert(ev.simplex, id);
                }
                Direction::Remove => {
                    del_order.push(live.remove(&ev.simplex).expect("validated"));
                }
            }
        }
        let k = cells.len();
        let asc_order: Vec<u32> = (0..k as u32).collect();
        let asc_pos = asc_order.clone();
        let mut del_pos = vec![0u32; k];
        for (p, &c) in del_order.iter().enumerate() {
            del_pos[c as usize] = p as u32;
        }
        let mut s = RepOracle { cells, asc_order, asc_pos, del_order, del_pos, pairs: BTreeMap::new() };
        s.initial_pairs();
        s
    }

    fn signs_in(&self, order: &[u32]) -> Vec<bool> {
        // negative = true, via a tiny union-find over vertex cells
        let mut parent: HashMap<u32, u32> = HashMap::new();
        fn find(parent: &mut HashMap<u32, u32>, mut x: u32) -> u32 {
            while parent[&x] != x {
                let p = parent[&x];
                let pp = parent[&p];
                parent.insert(x, pp);
                x = pp;
            }
            x
        }
        let mut neg = vec![false; self.cells.len()];
        for &c in order {
            match self.cells[c as usize] {
                OCell::Vertex => {
                    parent.insert(c, c);
                }
                OCell::Edge(u, v) => {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent.insert(ru, rv);
                        neg[c as usize] = true;
                    }
                }
            }
        }
        neg
    }

    fn desc_scan_order(&self) -> Vec<u32> {
        self.del_order.iter().rev().copied().collect()
    }

    /// Initial edge-edge pairs and representatives via the spanning-forest
    /// scan of the descending part, with explicit path recovery.
    fn initial_pairs(&mut self) {
        let rev = self.desc_scan_order();
        let neg_desc = self.signs_in(&rev);
        let mut adj: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            if *c == OCell::Vertex {
                adj.insert(i as u32, Vec::new());
            }
        }
        let add_edge = |adj: &mut HashMap<u32, Vec<(u32, u32)>>, e: u32, u: u32, v: u32| {
            adj.get_mut(&u).unwrap().push((v, e));
            adj.get_mut(&v).unwrap().push((u, e));
        };
        let remove_edge = |adj: &mut HashMap<u32, Vec<(u32, u32)>>, e: u32, u: u32, v: u32| {
            adj.get_mut(&u).unwrap().retain(|&(_, x)| x != e);
            adj.get_mut(&v).unwrap().retain(|&(_, x)| x != e);
        };
        for &c in &rev {
            if neg_desc[c as usize] {
                if let OCell::Edge(u, v) = self.cells[c as usize] {
                    add_edge(&mut adj, c, u, v);
                }
            }
        }
        for &c in &rev {
            if neg_desc[c as usize] || self.cells[c as usize] == OCell::Vertex {
                continue;
            }
            let OCell::Edge(u, v) = self.cells[c as usize] else { unreachable!() };
            let path = tree_path(&adj, u, v).expect("positive edge endpoints connected in T");
            let eps = *path
                .iter()
                .max_by_key(|&&e| self.asc_pos[e as usize])
                .expect("nonempty path");
            let younger =
                if self.asc_pos[c as usize] > self.asc_pos[eps as usize] { c } else { eps };
            let mut z: BTreeSet<u32> = path.into_iter().collect();
            z.insert(c);
            self.pairs.insert(younger, (c, z));
            if younger == eps {
                if let OCell::Edge(a, b) = self.cells[eps as usize] {
                    remove_edge(&mut adj, eps, a, b);
                }
                add_edge(&mut adj, c, u, v);
            }
        }
    }

    pub fn pairs(&self) -> BTreeSet<(u32, u32)> {
        self.pairs.iter().map(|(&a, &(d, _))| (a, d)).collect()
    }

    pub fn representatives(&self) -> BTreeMap<(u32, u32), BTreeSet<u32>> {
        self.pairs.iter().map(|(&a, &(d, ref z))| ((a, d), z.clone())).collect()
    }

    fn pair_of_desc(&self, d: u32) -> Option<u32> {
        self.pairs.iter().find(|(_, &(dd, _))| dd == d).map(|(&a, _)| a)
    }

    /// Forward switch of the ascending cells at positions `j-1`, `j`.
    pub fn forward(&mut self, j: usize) -> Result<(), RepError> {
        let e1 = self.asc_order[j - 1];
        let e2 = self.asc_order[j];
        let both_edges = matches!(self.cells[e1 as usize], OCell::Edge(..))
            && matches!(self.cells[e2 as usize], OCell::Edge(..));
        if both_edges {
            let neg = self.signs_in(&self.asc_order.clone());
            self.edge_edge(e1, e2, neg[e1 as usize], neg[e2 as usize], Side::Asc);
        }
        self.asc_order.swap(j - 1, j);
        self.asc_pos[self.asc_order[j - 1] as usize] = (j - 1) as u32;
        self.asc_pos[self.asc_order[j] as usize] = j as u32;
        self.validate()
    }

    /// Backward switch of the deletions at descending positions `p`, `p+1`.
    pub fn backward(&mut self, p: usize) -> Result<(), RepError> {
        let csig = self.del_order[p];
        let ctau = self.del_order[p + 1];
        let both_edges = matches!(self.cells[csig as usize], OCell::Edge(..))
            && matches!(self.cells[ctau as usize], OCell::Edge(..));
        if both_edges {
            let neg = self.signs_in(&self.desc_scan_order());
            // mirrored roles: the later deletion acts as the earlier addition
            self.edge_edge(ctau, csig, neg[ctau as usize], neg[csig as usize], Side::Desc);
        }
        self.del_order.swap(p, p + 1);
        self.del_pos[self.del_order[p] as usize] = p as u32;
        self.del_pos[self.del_order[p + 1] as usize] = (p + 1) as u32;
        self.validate()
    }

    fn edge_edge(&mut self, e1: u32, e2: u32, neg1: bool, neg2: bool, side: Side) {
        // partner lookup on the side opposite to the switch
        let pair_of = |s: &Self, c: u32| -> Option<(u32, BTreeSet<u32>)> {
            match side {
                Side::Asc => s.pairs.get(&c).map(|(d, z)| (*d, z.clone())),
                Side::Desc => {
                    s.pair_of_desc(c).map(|a| (a, s.pairs[&a].1.clone()))
                }
            }
        };
        match (neg1, neg2) {
            (true, true) | (false, true) => {} // cases A and B
            (true, false) => {
                // case C: e1 joins the pair if it lies on the representative
                let (eps, z) = pair_of(self, e2).expect("positive edge is paired");
                if z.contains(&e1) {
                    match side {
                        Side::Asc => {
                            self.pairs.remove(&e2);
                            self.pairs.insert(e1, (eps, z));
                        }
                        Side::Desc => {
                            self.pairs.insert(eps, (e1, z));
                        }
                    }
                }
            }
            (false, false) => {
                // case D
                let (eps, z) = pair_of(self, e1).expect("positive edge is paired");
                let (eps2, z2) = pair_of(self, e2).expect("positive edge is paired");
                if !z2.contains(&e1) {
                    return;
                }
                // deletion order of the partners on the opposite axis
                let after = match side {
                    Side::Asc => self.del_pos[eps2 as usize] > self.del_pos[eps as usize],
                    Side::Desc => self.asc_pos[eps2 as usize] < self.asc_pos[eps as usize],
                };
                let zsum: BTreeSet<u32> = z.symmetric_difference(&z2).copied().collect();
                if after {
                    // pairing changes: e1 <-> eps2 keeps z2; e2 <-> eps gets z + z2
                    match side {
                        Side::Asc => {
                            self.pairs.insert(e1, (eps2, z2));
                            self.pairs.insert(e2, (eps, zsum));
                        }
                        Side::Desc => {
                            self.pairs.insert(eps2, (e1, z2));
                            self.pairs.insert(eps, (e2, zsum));
                        }
                    }
                } else {
                    // pairing stays; the representative of (e2, eps2) becomes z + z2
                    match side {
                        Side::Asc => {
                            self.pairs.insert(e2, (eps2, zsum));
                        }
                        Side::Desc => {
                            self.pairs.insert(eps2, (e2, zsum));
                        }
                    }
                }
            }
        }
    }

    /// Containment check: for a pair `(a, c)` with representative
    /// `z`, `a` is the youngest ascending cell of `z` allowed (`z` within the
    /// prefix through `a`) and `c` the earliest-deleted (`z` alive at `c`'s
    /// deletion); `z` must be a cycle containing both.
    pub fn validate(&self) -> Result<(), RepError> {
        for (&a, &(c, ref z)) in &self.pairs {
            let err = || RepError::InvalidRepresentative(a, c);
            if !z.contains(&a) || !z.contains(&c) {
                return Err(err());
            }
            let mut deg: HashMap<u32, usize> = HashMap::new();
            for &e in z {
                let OCell::Edge(u, v) = self.cells[e as usize] else {
                    return Err(err());
                };
                *deg.entry(u).or_insert(0) += 1;
                *deg.entry(v).or_insert(0) += 1;
                if self.asc_pos[e as usize] > self.asc_pos[a as usize] {
                    return Err(err());
                }
                if self.del_pos[e as usize] < self.del_pos[c as usize] {
                    return Err(err());
                }
            }
            if deg.values().any(|&d| d % 2 != 0) {
                return Err(err());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Asc,
    Desc,
}

fn tree_path(adj: &HashMap<u32, Vec<(u32, u32)>>, u: u32, v: u32) -> Option<Vec<u32>> {
    let mut prev: HashMap<u32, (u32, u32)> = HashMap::new();
    let mut stack = vec![u];
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    seen.insert(u);
    while let Some(x) = stack.pop() {
        if x == v {
            let mut path = Vec::new();
            let mut cur = v;
            while cur != u {
                let (px, pe) = prev[&cur];
                path.push(pe);
                cur = px;
            }
            return Some(path);
        }
        for &(y, e) in adj.get(&x).into_iter().flatten() {
            if seen.insert(y) {
                prev.insert(y, (x, e));
                stack.push(y);
            }
        }
    }
    None
}
