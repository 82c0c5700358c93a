//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `-- --nocapture` to see them). Every tolerance and threshold
//! is pinned here as a constant.

use graph_persistence::gen::{
    random_standard, random_standard_switch, random_switch, random_zigzag, switched,
};
use graph_persistence::model::{
    parse_filtration, Death, EndType, Event, Filtration, Flavor, Interval, Simplex, SwitchKind,
};
use graph_persistence::oracle::{betti_number, reduce_standard, zigzag_by_ranks, RepOracle};
use graph_persistence::standard::compute_pairing;
use graph_persistence::std_switch::StdUpdateState;
use graph_persistence::zigzag::{
    compute_zigzag, compute_zigzag_counted, convert, map_intervals, updown_pairing,
    updown_pairs_counted,
};
use graph_persistence::zz_switch::{ZzKind, ZzUpdateState};
use graph_persistence::{barcode_from_pairing, format_filtration};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

// -- pinned budgets and thresholds -------------------------------------------

/// Criterion 1: exhaustive + 10^4 random standard equivalence, under 1 minute.
const C1_RANDOM_INSTANCES: usize = 10_000;
const C1_MAX_M: usize = 200;
const C1_BUDGET: Duration = Duration::from_secs(60);

/// Criterion 2: 10^3 random zigzag equivalences, under 5 minutes.
const C2_RANDOM_INSTANCES: usize = 1_000;
const C2_MAX_M: usize = 120;
const C2_BUDGET: Duration = Duration::from_secs(300);

/// Criterion 3: 100 filtrations x 50 switches, recomputed each time, < 2 min.
const C3_INSTANCES: usize = 100;
const C3_SWITCHES: usize = 50;
const C3_MAX_M: usize = 300;
const C3_BUDGET: Duration = Duration::from_secs(120);

/// Criterion 4: 50 zigzag filtrations x 40 mixed switches, < 5 min.
const C4_INSTANCES: usize = 50;
const C4_SWITCHES: usize = 40;
const C4_MAX_M: usize = 200;
const C4_BUDGET: Duration = Duration::from_secs(300);

/// Criterion 5: counter bounds, calibrated once at m = 2^10 with 2x headroom.
const C5_SIZES: [usize; 4] = [1 << 10, 1 << 12, 1 << 14, 1 << 16];
const C5_HEADROOM: f64 = 2.0;
const C5_SWITCHES: usize = 200;
/// outward/inward switches may touch at most this many primitive ops
const C5_OI_CONST: u64 = 8;

/// Criterion 6: compute_zigzag scaling, op ratio and wall-clock caps.
const C6_SIZES: [usize; 2] = [100_000, 200_000];
const C6_OP_RATIO: f64 = 2.3;
const C6_WALL: Duration = Duration::from_secs(30);

fn zz(text: &str) -> Filtration {
    parse_filtration(text, Flavor::Zigzag).unwrap()
}

const ZZ1: &str = "+ v 0\n+ v 1\n+ e 0 1\n- e 0 1\n+ e 0 1\n- e 0 1\n- v 1\n- v 0\n";
const UD_TRI: &str = "+ v 0\n+ v 1\n+ v 2\n+ e 0 1\n+ e 1 2\n+ e 0 2\n- e 0 1\n- e 1 2\n- e 0 2\n- v 2\n- v 1\n- v 0\n";
/// UD2 cell structure (ascending a b ab1 ab2 ab3) via repeated re-addition.
const UD2: &str = "+ v 0\n+ v 1\n+ e 0 1\n- e 0 1\n+ e 0 1\n- e 0 1\n+ e 0 1\n- e 0 1\n- v 1\n- v 0\n";

/// All standard filtrations on <= 4 vertices: every edge subset once in
/// index order, plus random valid interleavings.
fn exhaustive_small_standard(rng: &mut ChaCha8Rng) -> Vec<Filtration> {
    let all_edges: Vec<(u64, u64)> =
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut out = Vec::new();
    for mask in 0u32..(1 << all_edges.len()) {
        let mut events: Vec<Event> = (0..4).map(|v| Event::add(Simplex::Vertex(v))).collect();
        for (b, &(u, v)) in all_edges.iter().enumerate() {
            if mask >> b & 1 == 1 {
                events.push(Event::add(Simplex::edge(u, v)));
            }
        }
        out.push(Filtration::standard(events).unwrap());
    }
    for _ in 0..200 {
        let mask = rng.gen_range(0u32..(1 << all_edges.len()));
        let mut pending_v: Vec<u64> = (0..4).collect();
        let mut pending_e: Vec<(u64, u64)> = all_edges
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let mut live = [false; 4];
        let mut events = Vec::new();
        while !pending_v.is_empty() || !pending_e.is_empty() {
            let addable: Vec<usize> = pending_e
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| live[u as usize] && live[v as usize])
                .map(|(i, _)| i)
                .collect();
            if !pending_v.is_empty() && (addable.is_empty() || rng.gen_bool(0.5)) {
                let i = rng.gen_range(0..pending_v.len());
                let v = pending_v.swap_remove(i);
                live[v as usize] = true;
                events.push(Event::add(Simplex::Vertex(v)));
            } else {
                let i = addable[rng.gen_range(0..addable.len())];
                let (u, v) = pending_e.swap_remove(i);
                events.push(Event::add(Simplex::edge(u, v)));
            }
        }
        out.push(Filtration::standard(events).unwrap());
    }
    out
}

#[test]
fn criterion_1_standard_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce01);
    let mut count = 0usize;
    for f in exhaustive_small_standard(&mut rng) {
        assert_eq!(compute_pairing(&f), reduce_standard(&f), "{}", format_filtration(&f));
        count += 1;
    }
    for _ in 0..C1_RANDOM_INSTANCES {
        let n = rng.gen_range(1..=24);
        let f = random_standard(&mut rng, n, C1_MAX_M);
        assert_eq!(compute_pairing(&f), reduce_standard(&f), "{}", format_filtration(&f));
        count += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < C1_BUDGET, "criterion 1 took {elapsed:?}");
    println!("ACCEPTANCE 1 standard-equivalence: PASS ({count} instances, {elapsed:?})");
}

#[test]
fn criterion_2_zigzag_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce02);
    let mut inputs = vec![zz(ZZ1), zz(UD_TRI), zz(UD2)];
    for _ in 0..C2_RANDOM_INSTANCES {
        let n = rng.gen_range(2..=12);
        let target = rng.gen_range(8..=C2_MAX_M);
        inputs.push(random_zigzag(&mut rng, n, target));
    }
    for f in &inputs {
        assert!(f.len() <= C2_MAX_M + 8);
        let got = compute_zigzag(f);
        let want = zigzag_by_ranks(f).unwrap();
        assert_eq!(got, want, "{}", format_filtration(f));
    }
    let elapsed = start.elapsed();
    assert!(elapsed < C2_BUDGET, "criterion 2 took {elapsed:?}");
    println!("ACCEPTANCE 2 zigzag-equivalence: PASS ({} instances, {elapsed:?})", inputs.len());
}

#[test]
fn criterion_3_standard_switch_differential() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce03);
    let mut switches = 0usize;
    for _ in 0..C3_INSTANCES {
        let f = loop {
            let n = rng.gen_range(8..=30);
            let f = random_standard(&mut rng, n, C3_MAX_M);
            if f.len() >= 16 {
                break f;
            }
        };
        let mut state = StdUpdateState::from_filtration(&f);
        let mut cur = f;
        for _ in 0..C3_SWITCHES {
            let Some(i) = random_standard_switch(&mut rng, &cur) else { break };
            state.switch(i).unwrap();
            cur = switched(&cur, i);
            let fresh = StdUpdateState::from_filtration(&cur);
            assert_eq!(state.pairing(), fresh.pairing());
            assert_eq!(state.forest_canonical(), fresh.forest_canonical());
            assert_eq!(state.msf_edge_positions(), fresh.msf_edge_positions());
            switches += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < C3_BUDGET, "criterion 3 took {elapsed:?}");
    println!("ACCEPTANCE 3 standard-switch-differential: PASS ({switches} switches, {elapsed:?})");
}

fn to_zz_kind(k: SwitchKind) -> ZzKind {
    match k {
        SwitchKind::Forward => ZzKind::Forward,
        SwitchKind::Backward => ZzKind::Backward,
        SwitchKind::Outward => ZzKind::Outward,
        SwitchKind::Inward => ZzKind::Inward,
        SwitchKind::Standard => unreachable!(),
    }
}

#[test]
fn criterion_4_zigzag_switch_differential() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce04);
    let mut switches = 0usize;
    for _ in 0..C4_INSTANCES {
        let f = loop {
            let n = rng.gen_range(2..=14);
            let f = random_zigzag(&mut rng, n, C4_MAX_M);
            if f.len() >= 16 {
                break f;
            }
        };
        let mut state = ZzUpdateState::preprocess(&f);
        let mut oracle = RepOracle::from_filtration(&f);
        let mut cur = f;
        for _ in 0..C4_SWITCHES {
            let Some((kind, i)) = random_switch(&mut rng, &cur) else { break };
            state.switch(to_zz_kind(kind), i).unwrap();
            // mirror the switch on the representative-maintaining oracle
            match kind {
                SwitchKind::Forward => {
                    let adds = cur.events()[..i].iter().filter(|e| e.is_addition()).count();
                    oracle.forward(adds).unwrap();
                }
                SwitchKind::Backward => {
                    let dels = cur.events()[..i - 1].iter().filter(|e| !e.is_addition()).count();
                    oracle.backward(dels).unwrap();
                }
                _ => {}
            }
            cur = switched(&cur, i);
            assert_eq!(state.filtration(), cur);
            assert_eq!(state.barcode(), compute_zigzag(&cur), "{}", format_filtration(&cur));
            assert_eq!(state.edge_edge_pairs(), oracle.pairs());
            switches += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < C4_BUDGET, "criterion 4 took {elapsed:?}");
    println!("ACCEPTANCE 4 zigzag-switch-differential: PASS ({switches} switches, {elapsed:?})");
}

/// Max per-switch op delta over a batch of random switches on one instance.
fn std_switch_max_ops(rng: &mut ChaCha8Rng, m: usize) -> u64 {
    let n = (m as f64).sqrt() as usize + 4;
    let f = random_standard(rng, n, m);
    let mut state = StdUpdateState::from_filtration(&f);
    let mut max = 0;
    for _ in 0..C5_SWITCHES {
        if let Some(i) = random_standard_switch(rng, &f) {
            let before = state.ops();
            if state.switch(i).is_ok() {
                max = max.max(state.ops() - before);
            }
        }
    }
    max
}

fn zz_switch_max_ops(rng: &mut ChaCha8Rng, m: usize) -> (u64, u64) {
    let n = (m as f64).sqrt() as usize + 4;
    let f = random_zigzag(rng, n, m);
    let mut state = ZzUpdateState::preprocess(&f);
    let mut cur = f;
    let (mut max_fb, mut max_oi) = (0, 0);
    for _ in 0..C5_SWITCHES {
        let Some((kind, i)) = random_switch(rng, &cur) else { break };
        let before = state.ops();
        state.switch(to_zz_kind(kind), i).unwrap();
        let d = state.ops() - before;
        match kind {
            SwitchKind::Forward | SwitchKind::Backward => max_fb = max_fb.max(d),
            _ => max_oi = max_oi.max(d),
        }
        cur = switched(&cur, i);
    }
    (max_fb, max_oi)
}

#[test]
fn criterion_5_complexity_counters() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce05);
    // (a) standard switches: ops <= C * log2(m)
    let base = C5_SIZES[0];
    let c_std = C5_HEADROOM * std_switch_max_ops(&mut rng, base) as f64 / (base as f64).log2();
    for &m in &C5_SIZES[1..] {
        let max = std_switch_max_ops(&mut rng, m) as f64;
        let bound = c_std * (m as f64).log2();
        assert!(max <= bound, "std switch at m={m}: {max} > {bound}");
    }
    // (b) forward/backward zigzag: ops <= C * sqrt(m) * log2(m);
    // (c) outward/inward touch O(1) state
    let (fb0, oi0) = zz_switch_max_ops(&mut rng, base);
    assert!(oi0 <= C5_OI_CONST);
    let c_zz = C5_HEADROOM * fb0 as f64 / ((base as f64).sqrt() * (base as f64).log2());
    for &m in &C5_SIZES[1..] {
        let (fb, oi) = zz_switch_max_ops(&mut rng, m);
        let bound = c_zz * (m as f64).sqrt() * (m as f64).log2();
        assert!(fb as f64 <= bound, "zigzag switch at m={m}: {fb} > {bound}");
        assert!(oi <= C5_OI_CONST, "outward/inward at m={m} touched {oi} ops");
    }
    println!(
        "ACCEPTANCE 5 complexity-counters: PASS (C_std {:.1}, C_zz {:.2}, oi <= {})",
        c_std, c_zz, C5_OI_CONST
    );
}

#[test]
fn criterion_6_zigzag_scaling_smoke() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce06);
    let mut ops = Vec::new();
    for &m in &C6_SIZES {
        let n = (m as f64).sqrt() as usize;
        let f = random_zigzag(&mut rng, n, m);
        let start = Instant::now();
        let mut count = 0u64;
        let bars = compute_zigzag_counted(&f, &mut count);
        let elapsed = start.elapsed();
        assert!(elapsed < C6_WALL, "compute_zigzag at m={m} took {elapsed:?}");
        assert_eq!(bars.len(), f.len() / 2);
        ops.push(count);
    }
    let ratio = ops[1] as f64 / ops[0] as f64;
    assert!(ratio <= C6_OP_RATIO, "op ratio {ratio:.3} exceeds {C6_OP_RATIO}");
    println!("ACCEPTANCE 6 zigzag-scaling: PASS (ops {:?}, ratio {ratio:.3})", ops);
}

#[test]
fn criterion_7_structural_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce07);

    // interval-type row membership of every mapped interval, and betti-number
    // reconstruction at every graph index
    let mut inputs = vec![zz(ZZ1), zz(UD_TRI), zz(UD2)];
    for _ in 0..60 {
        inputs.push(random_zigzag(&mut rng, 8, 80));
    }
    for f in &inputs {
        let ud = convert(f);
        let pairs = updown_pairs_counted(&ud, &mut 0, false);
        let pairing = updown_pairing(&ud, &pairs);
        let uf = ud.to_filtration();
        let pers_u = barcode_from_pairing(&uf, &pairing).unwrap();
        for iv in &pers_u {
            let row = (iv.dim, iv.birth_type, iv.death_type);
            assert_ne!(
                (iv.birth_type, iv.death_type),
                (EndType::Open, EndType::Open),
                "open-open interval in the up-down barcode"
            );
            let mapped = map_intervals(&ud, std::slice::from_ref(iv)).unwrap()[0];
            let frow = (mapped.dim, mapped.birth_type, mapped.death_type);
            match row {
                (0, EndType::Closed, EndType::Open) => assert_eq!(frow, row),
                (0, EndType::Open, EndType::Closed) => assert_eq!(frow, row),
                (0, EndType::Closed, EndType::Closed) => assert_eq!(frow, row),
                (1, EndType::Closed, EndType::Closed) => assert!(
                    frow == (0, EndType::Open, EndType::Open)
                        || frow == (1, EndType::Closed, EndType::Closed),
                    "dim-1 closed-closed mapped to {frow:?}"
                ),
                other => panic!("unexpected up-down interval type {other:?}"),
            }
        }
        let bars = compute_zigzag(f);
        for i in 0..=f.len() {
            for p in 0..2 {
                let count =
                    bars.iter().filter(|iv| iv.dim == p && iv.contains(i, Flavor::Zigzag)).count();
                assert_eq!(count, betti_number(f, i, p), "betti mismatch at {i} dim {p}");
            }
        }
    }

    // edge-edge scan loop invariant (spanning forest at every step)
    for _ in 0..25 {
        let f = random_zigzag(&mut rng, 6, 60);
        updown_pairs_counted(&convert(&f), &mut 0, true);
    }

    // representative containment along random oracle switch sequences
    // (validate() runs after every switch and errors on violation)
    for _ in 0..25 {
        let f = random_zigzag(&mut rng, 6, 60);
        let mut oracle = RepOracle::from_filtration(&f);
        let mut cur = f;
        for _ in 0..20 {
            let Some((kind, i)) = random_switch(&mut rng, &cur) else { break };
            match kind {
                SwitchKind::Forward => {
                    let adds = cur.events()[..i].iter().filter(|e| e.is_addition()).count();
                    oracle.forward(adds).unwrap();
                }
                SwitchKind::Backward => {
                    let dels = cur.events()[..i - 1].iter().filter(|e| !e.is_addition()).count();
                    oracle.backward(dels).unwrap();
                }
                _ => {}
            }
            cur = switched(&cur, i);
        }
    }

    // switch involution: applying a switch and its inverse restores the
    // state exactly
    for _ in 0..20 {
        let f = random_standard(&mut rng, 10, 60);
        let mut state = StdUpdateState::from_filtration(&f);
        let Some(i) = random_standard_switch(&mut rng, &f) else { continue };
        let (p0, f0, m0) = (state.pairing(), state.forest_canonical(), state.msf_edge_positions());
        state.switch(i).unwrap();
        state.switch(i).unwrap();
        assert_eq!(state.pairing(), p0);
        assert_eq!(state.forest_canonical(), f0);
        assert_eq!(state.msf_edge_positions(), m0);
    }
    for _ in 0..20 {
        let f = random_zigzag(&mut rng, 8, 60);
        let mut state = ZzUpdateState::preprocess(&f);
        let Some((kind, i)) = random_switch(&mut rng, &f) else { continue };
        let before_bars = state.barcode();
        let before_pairs = state.edge_edge_pairs();
        state.switch(to_zz_kind(kind), i).unwrap();
        let inverse = match kind {
            SwitchKind::Outward => ZzKind::Inward,
            SwitchKind::Inward => ZzKind::Outward,
            other => to_zz_kind(other),
        };
        state.switch(inverse, i).unwrap();
        assert_eq!(state.filtration(), f);
        assert_eq!(state.barcode(), before_bars);
        assert_eq!(state.edge_edge_pairs(), before_pairs);
    }

    println!("ACCEPTANCE 7 structural-invariants: PASS");
}

/// The barcode fixtures stay pinned end to end.
#[test]
fn fixtures_stay_pinned() {
    let bars = compute_zigzag(&zz(ZZ1));
    let dump: Vec<String> = bars.iter().map(|b| b.to_string()).collect();
    assert_eq!(dump, vec!["0 1 7 c c", "0 2 2 c o", "0 4 4 o o", "0 6 6 o c"]);

    let tri = parse_filtration("+ v 0\n+ v 1\n+ v 2\n+ e 0 1\n+ e 1 2\n+ e 0 2\n", Flavor::Standard)
        .unwrap();
    let bars = barcode_from_pairing(&tri, &compute_pairing(&tri)).unwrap();
    let dump: Vec<String> = bars.iter().map(|b| b.to_string()).collect();
    assert_eq!(dump, vec!["0 1 inf c o", "0 2 3 c o", "0 3 4 c o", "1 6 inf c o"]);
    assert!(bars.iter().any(|b| b.dim == 0
        && b.birth == 2
        && b.death == Death::Finite(3)
        && b.birth_type == EndType::Closed));
    let _: Vec<Interval> = bars;
}
