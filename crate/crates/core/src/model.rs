//! Core data model: simplices, events, filtrations, pairings and barcodes.
//!
//! A filtration is an ordered sequence of signed vertex/edge events. The
//! `standard` flavor contains additions only; the `zigzag` flavor mixes
//! additions and deletions and must start and end with the empty graph.
//! Barcodes are derived from a pairing of creator/destroyer events.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Vertex identifiers are arbitrary non-negative integers chosen by the user.
pub type VertexId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simplex {
    Vertex(VertexId),
    /// Endpoints are stored normalized (`u < v`); `(u, v)` and `(v, u)` are
    /// the same edge in a simple graph.
    Edge(VertexId, VertexId),
}

impl Simplex {
    pub fn vertex(v: VertexId) -> Self {
        Simplex::Vertex(v)
    }

    /// Panics on self-loops; parsers must reject those earlier.
    pub fn edge(u: VertexId, v: VertexId) -> Self {
        assert!(u != v, "self-loop edge ({u}, {v})");
        if u < v {
            Simplex::Edge(u, v)
        } else {
            Simplex::Edge(v, u)
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Simplex::Vertex(_) => 0,
            Simplex::Edge(..) => 1,
        }
    }

    /// Face relation: `self ⊆ other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        match (self, other) {
            (a, b) if a == b => true,
            (Simplex::Vertex(x), Simplex::Edge(u, v)) => x == u || x == v,
            _ => false,
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simplex::Vertex(v) => write!(f, "v {v}"),
            Simplex::Edge(u, v) => write!(f, "e {u} {v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Add,
    Remove,
}

/// One inclusion arrow of the filtration. Its index is its position in the
/// owning event sequence and uniquely identifies the arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    pub direction: Direction,
    pub simplex: Simplex,
}

impl Event {
    pub fn add(s: Simplex) -> Self {
        Event { direction: Direction::Add, simplex: s }
    }

    pub fn remove(s: Simplex) -> Self {
        Event { direction: Direction::Remove, simplex: s }
    }

    pub fn is_addition(&self) -> bool {
        self.direction == Direction::Add
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Standard,
    Zigzag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationErrorKind {
    /// An edge was added while one of its endpoints is absent.
    EdgeBeforeVertex,
    /// A deletion targets a simplex that is absent, or a vertex that still
    /// has a live incident edge.
    DeleteAbsent,
    /// An addition duplicates a live simplex (simple graphs only).
    DuplicateLive,
    /// A zigzag filtration must end with the empty graph.
    NonEmptyEnds,
    /// Standard filtrations contain additions only.
    DeletionInStandard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{kind:?} at event index {index}")]
pub struct ValidationError {
    pub kind: ValidationErrorKind,
    /// First offending event index.
    pub index: usize,
}

/// An ordered, validated sequence of simplex events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    events: Vec<Event>,
    flavor: Flavor,
    /// Internal cell complexes (the up-down conversion) allow parallel
    /// copies of an edge; user-facing filtrations never do.
    allow_parallel: bool,
}

impl Filtration {
    pub fn new(flavor: Flavor, events: Vec<Event>) -> Result<Self, ValidationError> {
        let f = Filtration { events, flavor, allow_parallel: false };
        f.validate()?;
        Ok(f)
    }

    pub fn standard(events: Vec<Event>) -> Result<Self, ValidationError> {
        Self::new(Flavor::Standard, events)
    }

    pub fn zigzag(events: Vec<Event>) -> Result<Self, ValidationError> {
        Self::new(Flavor::Zigzag, events)
    }

    /// Cell-level filtration that tolerates parallel edges. Only used for
    /// the internal up-down complex.
    pub(crate) fn new_parallel(flavor: Flavor, events: Vec<Event>) -> Result<Self, ValidationError> {
        let f = Filtration { events, flavor, allow_parallel: true };
        f.validate()?;
        Ok(f)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Size of the union of all graphs in the filtration (distinct vertices).
    pub fn vertex_bound(&self) -> usize {
        let mut seen = BTreeSet::new();
        for e in &self.events {
            match e.simplex {
                Simplex::Vertex(v) => {
                    seen.insert(v);
                }
                Simplex::Edge(u, v) => {
                    seen.insert(u);
                    seen.insert(v);
                }
            }
        }
        seen.len()
    }

    /// Checks every well-formedness invariant; on failure pinpoints the
    /// first offending event index.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let err = |kind, index| Err(ValidationError { kind, index });
        // live counts per simplex (counts only exceed 1 with allow_parallel)
        let mut live: HashMap<Simplex, usize> = HashMap::new();
        // live incident edge count per vertex
        let mut incident: HashMap<VertexId, usize> = HashMap::new();
        // index of the earliest still-live addition, for NonEmptyEnds
        let mut first_live_add: BTreeMap<usize, Simplex> = BTreeMap::new();
        let mut live_add_of: HashMap<Simplex, Vec<usize>> = HashMap::new();

        for (i, ev) in self.events.iter().enumerate() {
            let s = ev.simplex;
            match ev.direction {
                Direction::Add => {
                    if let Simplex::Edge(u, v) = s {
                        if live.get(&Simplex::Vertex(u)).copied().unwrap_or(0) == 0
                            || live.get(&Simplex::Vertex(v)).copied().unwrap_or(0) == 0
                        {
                            return err(ValidationErrorKind::EdgeBeforeVertex, i);
                        }
                    }
                    let cnt = live.entry(s).or_insert(0);
                    if *cnt > 0 && !self.allow_parallel {
                        return err(ValidationErrorKind::DuplicateLive, i);
                    }
                    if *cnt > 0 && matches!(s, Simplex::Vertex(_)) {
                        // parallel vertices never make sense
                        return err(ValidationErrorKind::DuplicateLive, i);
                    }
                    *cnt += 1;
                    if let Simplex::Edge(u, v) = s {
                        *incident.entry(u).or_insert(0) += 1;
                        *incident.entry(v).or_insert(0) += 1;
                    }
                    first_live_add.insert(i, s);
                    live_add_of.entry(s).or_default().push(i);
                }
                Direction::Remove => {
                    if self.flavor == Flavor::Standard {
                        return err(ValidationErrorKind::DeletionInStandard, i);
                    }
                    let cnt = live.entry(s).or_insert(0);
                    if *cnt == 0 {
                        return err(ValidationErrorKind::DeleteAbsent, i);
                    }
                    if let Simplex::Vertex(v) = s {
                        if incident.get(&v).copied().unwrap_or(0) > 0 {
                            return err(ValidationErrorKind::DeleteAbsent, i);
                        }
                    }
                    *cnt -= 1;
                    if let Simplex::Edge(u, v) = s {
                        *incident.entry(u).or_insert(0) -= 1;
                        *incident.entry(v).or_insert(0) -= 1;
                    }
                    let adds = live_add_of.entry(s).or_default();
                    let add_idx = adds.pop().expect("live simplex has a live addition");
                    first_live_add.remove(&add_idx);
                }
            }
        }
        if self.flavor == Flavor::Zigzag {
            if let Some((&idx, _)) = first_live_add.iter().next() {
                return err(ValidationErrorKind::NonEmptyEnds, idx);
            }
        }
        Ok(())
    }
}

/// Bijective creator/destroyer pairing over event indices, plus the set of
/// unpaired creators (standard flavor only; zigzag pairings are total).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: BTreeMap<usize, usize>,
    pub unpaired: BTreeSet<usize>,
}

impl Pairing {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndType {
    Closed,
    Open,
}

impl EndType {
    pub fn letter(&self) -> char {
        match self {
            EndType::Closed => 'c',
            EndType::Open => 'o',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    Finite(usize),
    Infinite,
}

/// A persistence interval over graph indices, with Def-4.2-style endpoint
/// types derived from the arrow directions at its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub dim: usize,
    pub birth: usize,
    pub death: Death,
    pub birth_type: EndType,
    pub death_type: EndType,
}

impl Interval {
    /// Whether graph index `i` lies inside this interval. Standard-flavor
    /// intervals are half-open `[b, d)`, zigzag intervals closed `[b, d]`.
    pub fn contains(&self, i: usize, flavor: Flavor) -> bool {
        match (flavor, self.death) {
            (_, Death::Infinite) => i >= self.birth,
            (Flavor::Standard, Death::Finite(d)) => i >= self.birth && i < d,
            (Flavor::Zigzag, Death::Finite(d)) => i >= self.birth && i <= d,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.death {
            Death::Finite(d) => write!(
                f,
                "{} {} {} {} {}",
                self.dim,
                self.birth,
                d,
                self.birth_type.letter(),
                self.death_type.letter()
            ),
            Death::Infinite => write!(
                f,
                "{} {} inf {} {}",
                self.dim,
                self.birth,
                self.birth_type.letter(),
                self.death_type.letter()
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("pair ({0}, {1}) does not reference valid creator/destroyer events")]
    InconsistentPairing(usize, usize),
}

fn interval_dim(f: &Filtration, creator: usize, destroyer: Option<usize>) -> Result<usize, PairingError> {
    let ev = f.events()[creator];
    let dim = match (ev.direction, ev.simplex.dim()) {
        (Direction::Add, 0) => 0,
        (Direction::Add, 1) => 1,
        (Direction::Remove, 1) => 0,
        _ => return Err(PairingError::InconsistentPairing(creator, destroyer.unwrap_or(creator))),
    };
    if let Some(d) = destroyer {
        let dv = f.events()[d];
        let ok = match dim {
            0 => matches!(
                (dv.direction, dv.simplex.dim()),
                (Direction::Add, 1) | (Direction::Remove, 0)
            ),
            _ => matches!((dv.direction, dv.simplex.dim()), (Direction::Remove, 1)),
        };
        if !ok {
            return Err(PairingError::InconsistentPairing(creator, d));
        }
    }
    Ok(dim)
}

/// Derives the barcode generated by a pairing: the pair `(c, d)` yields the
/// interval with creator at index `c` and destroyer at index `d`, i.e.
/// `[c+1, d]` (zigzag, closed) or `[c+1, d)` (standard). Endpoint types come
/// from the arrow directions alone.
pub fn barcode_from_pairing(f: &Filtration, pairing: &Pairing) -> Result<Vec<Interval>, PairingError> {
    let m = f.len();
    let mut out = Vec::with_capacity(pairing.pairs.len() + pairing.unpaired.len());
    for (&c, &d) in &pairing.pairs {
        if c >= d || d >= m {
            return Err(PairingError::InconsistentPairing(c, d));
        }
        let dim = interval_dim(f, c, Some(d))?;
        let (bt, dt) = match f.flavor() {
            Flavor::Standard => (EndType::Closed, EndType::Open),
            Flavor::Zigzag => (
                if f.events()[c].is_addition() { EndType::Closed } else { EndType::Open },
                if f.events()[d].is_addition() { EndType::Open } else { EndType::Closed },
            ),
        };
        out.push(Interval { dim, birth: c + 1, death: Death::Finite(d), birth_type: bt, death_type: dt });
    }
    for &c in &pairing.unpaired {
        if c >= m {
            return Err(PairingError::InconsistentPairing(c, c));
        }
        let dim = interval_dim(f, c, None)?;
        out.push(Interval {
            dim,
            birth: c + 1,
            death: Death::Infinite,
            birth_type: EndType::Closed,
            death_type: EndType::Open,
        });
    }
    sort_barcode(&mut out);
    Ok(out)
}

pub fn sort_barcode(intervals: &mut [Interval]) {
    intervals.sort();
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {0}: malformed event `{1}`")]
    BadEvent(usize, String),
    #[error("line {0}: self-loop edge")]
    SelfLoop(usize),
    #[error("line {0}: malformed script command `{1}`")]
    BadCommand(usize, String),
    #[error("{0}")]
    Invalid(#[from] ValidationError),
}

/// Parses the one-event-per-line filtration format: `+ v <id>`, `- v <id>`,
/// `+ e <id> <id>`, `- e <id> <id>`. `#` starts a comment; blank lines are
/// skipped. The event index is the 0-based order of event lines.
pub fn parse_filtration(text: &str, flavor: Flavor) -> Result<Filtration, FormatError> {
    let mut events = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut it = line.split_whitespace();
        let Some(sign) = it.next() else { continue };
        let bad = || FormatError::BadEvent(lineno + 1, raw.trim().to_string());
        let direction = match sign {
            "+" => Direction::Add,
            "-" => Direction::Remove,
            _ => return Err(bad()),
        };
        let kind = it.next().ok_or_else(bad)?;
        let simplex = match kind {
            "v" => {
                let v: VertexId = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Simplex::Vertex(v)
            }
            "e" => {
                let u: VertexId = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let v: VertexId = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if u == v {
                    return Err(FormatError::SelfLoop(lineno + 1));
                }
                Simplex::edge(u, v)
            }
            _ => return Err(bad()),
        };
        if it.next().is_some() {
            return Err(bad());
        }
        events.push(Event { direction, simplex });
    }
    Ok(Filtration::new(flavor, events)?)
}

pub fn format_filtration(f: &Filtration) -> String {
    let mut s = String::new();
    for ev in f.events() {
        let sign = if ev.is_addition() { '+' } else { '-' };
        s.push_str(&format!("{sign} {}\n", ev.simplex));
    }
    s
}

/// One line per interval: `dim b d btype dtype`, sorted for determinism.
pub fn format_barcode(intervals: &[Interval]) -> String {
    let mut sorted = intervals.to_vec();
    sort_barcode(&mut sorted);
    let mut s = String::new();
    for iv in &sorted {
        s.push_str(&iv.to_string());
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchKind {
    Standard,
    Forward,
    Backward,
    Outward,
    Inward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwitchCmd {
    pub kind: SwitchKind,
    /// Events `pos-1` and `pos` are swapped.
    pub pos: usize,
}

/// Parses switch scripts: `S <i>` for standard filtrations; `F <i>`,
/// `B <i>`, `O <i>`, `I <i>` for zigzag filtrations.
pub fn parse_script(text: &str) -> Result<Vec<SwitchCmd>, FormatError> {
    let mut cmds = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut it = line.split_whitespace();
        let Some(op) = it.next() else { continue };
        let bad = || FormatError::BadCommand(lineno + 1, raw.trim().to_string());
        let kind = match op {
            "S" => SwitchKind::Standard,
            "F" => SwitchKind::Forward,
            "B" => SwitchKind::Backward,
            "O" => SwitchKind::Outward,
            "I" => SwitchKind::Inward,
            _ => return Err(bad()),
        };
        let pos: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if it.next().is_some() {
            return Err(bad());
        }
        cmds.push(SwitchCmd { kind, pos });
    }
    Ok(cmds)
}
