//! Deterministic random instance generators for tests and benchmarks.

use crate::model::{Direction, Event, Filtration, Simplex, SwitchKind, VertexId};
use rand::Rng;
use std::collections::BTreeSet;

/// Random valid standard filtration with at most `max_n` vertices and at
/// most `max_m` events.
pub fn random_standard<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> Filtration {
    let n = rng.gen_range(1..=max_n.max(1));
    let mut events = Vec::new();
    let mut live_v: Vec<VertexId> = Vec::new();
    let mut next_v: VertexId = 0;
    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    while events.len() < max_m {
        let can_add_vertex = (next_v as usize) < n;
        let edge_candidate = if live_v.len() >= 2 {
            let u = live_v[rng.gen_range(0..live_v.len())];
            let v = live_v[rng.gen_range(0..live_v.len())];
            let key = (u.min(v), u.max(v));
            (u != v && !edges.contains(&key)).then_some(key)
        } else {
            None
        };
        match (can_add_vertex, edge_candidate) {
            (true, Some(key)) => {
                if rng.gen_bool(0.45) {
                    events.push(Event::add(Simplex::Vertex(next_v)));
                    live_v.push(next_v);
                    next_v += 1;
                } else {
                    edges.insert(key);
                    events.push(Event::add(Simplex::edge(key.0, key.1)));
                }
            }
            (true, None) => {
                events.push(Event::add(Simplex::Vertex(next_v)));
                live_v.push(next_v);
                next_v += 1;
            }
            (false, Some(key)) => {
                edges.insert(key);
                events.push(Event::add(Simplex::edge(key.0, key.1)));
            }
            (false, None) => break,
        }
    }
    Filtration::standard(events).expect("generator preserves validity")
}

/// Random valid zigzag filtration over at most `max_n` vertex ids, aiming
/// for roughly `target_m` events (always even, always ending empty).
pub fn random_zigzag<R: Rng>(rng: &mut R, max_n: usize, target_m: usize) -> Filtration {
    let n = max_n.max(1);
    let mut events = Vec::new();
    let mut live_v: BTreeSet<VertexId> = BTreeSet::new();
    let mut live_e: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut degree: Vec<usize> = vec![0; n];

    loop {
        let growing = events.len() + live_v.len() + live_e.len() < target_m;
        let mut moves: Vec<u8> = Vec::with_capacity(4);
        if growing && live_v.len() < n {
            moves.push(0); // add vertex
        }
        if growing && live_v.len() >= 2 {
            moves.push(1); // try add edge
        }
        if !live_e.is_empty() {
            moves.push(2); // delete edge
        }
        if live_v.iter().any(|&v| degree[v as usize] == 0) {
            moves.push(3); // delete isolated vertex
        }
        if moves.is_empty() {
            break;
        }
        // bias towards additions while growing, deletions when wrapping up
        let weighted: Vec<u8> = moves
            .iter()
            .copied()
            .flat_map(|m| {
                let w = if growing == (m <= 1) { 3 } else { 1 };
                std::iter::repeat(m).take(w)
            })
            .collect();
        match weighted[rng.gen_range(0..weighted.len())] {
            0 => {
                let free: Vec<VertexId> =
                    (0..n as VertexId).filter(|v| !live_v.contains(v)).collect();
                let v = free[rng.gen_range(0..free.len())];
                live_v.insert(v);
                events.push(Event::add(Simplex::Vertex(v)));
            }
            1 => {
                let vs: Vec<VertexId> = live_v.iter().copied().collect();
                let u = vs[rng.gen_range(0..vs.len())];
                let v = vs[rng.gen_range(0..vs.len())];
                let key = (u.min(v), u.max(v));
                if u != v && !live_e.contains(&key) {
                    live_e.insert(key);
                    degree[key.0 as usize] += 1;
                    degree[key.1 as usize] += 1;
                    events.push(Event::add(Simplex::edge(key.0, key.1)));
                }
            }
            2 => {
                let es: Vec<(VertexId, VertexId)> = live_e.iter().copied().collect();
                let key = es[rng.gen_range(0..es.len())];
                live_e.remove(&key);
                degree[key.0 as usize] -= 1;
                degree[key.1 as usize] -= 1;
                events.push(Event::remove(Simplex::edge(key.0, key.1)));
            }
            _ => {
                let vs: Vec<VertexId> =
                    live_v.iter().copied().filter(|&v| degree[v as usize] == 0).collect();
                let v = vs[rng.gen_range(0..vs.len())];
                live_v.remove(&v);
                events.push(Event::remove(Simplex::Vertex(v)));
            }
        }
        if !growing && live_v.is_empty() && live_e.is_empty() {
            break;
        }
    }
    Filtration::zigzag(events).expect("generator preserves validity")
}

/// The switch kind legal at position `i` of a zigzag filtration, if any.
pub fn switch_kind_at(f: &Filtration, i: usize) -> Option<SwitchKind> {
    if i == 0 || i >= f.len() {
        return None;
    }
    let a = f.events()[i - 1];
    let b = f.events()[i];
    match (a.direction, b.direction) {
        (Direction::Add, Direction::Add) => {
            (!a.simplex.is_face_of(&b.simplex)).then_some(SwitchKind::Forward)
        }
        (Direction::Remove, Direction::Remove) => {
            (!b.simplex.is_face_of(&a.simplex)).then_some(SwitchKind::Backward)
        }
        (Direction::Add, Direction::Remove) => {
            (a.simplex != b.simplex).then_some(SwitchKind::Outward)
        }
        (Direction::Remove, Direction::Add) => {
            (a.simplex != b.simplex).then_some(SwitchKind::Inward)
        }
    }
}

/// Uniformly samples a legal switch position (with its kind).
pub fn random_switch<R: Rng>(rng: &mut R, f: &Filtration) -> Option<(SwitchKind, usize)> {
    if f.len() < 2 {
        return None;
    }
    for _ in 0..8 * f.len() {
        let i = rng.gen_range(1..f.len());
        if let Some(kind) = switch_kind_at(f, i) {
            return Some((kind, i));
        }
    }
    None
}

/// Standard-filtration variant: any position where the earlier event is not
/// a face of the later one.
pub fn random_standard_switch<R: Rng>(rng: &mut R, f: &Filtration) -> Option<usize> {
    if f.len() < 2 {
        return None;
    }
    for _ in 0..8 * f.len() {
        let i = rng.gen_range(1..f.len());
        let a = f.events()[i - 1];
        let b = f.events()[i];
        if !a.simplex.is_face_of(&b.simplex) {
            return Some(i);
        }
    }
    None
}

/// The filtration with events `i-1` and `i` swapped (revalidated).
pub fn switched(f: &Filtration, i: usize) -> Filtration {
    let mut events = f.events().to_vec();
    events.swap(i - 1, i);
    Filtration::new(f.flavor(), events).expect("legal switch keeps the filtration valid")
}
