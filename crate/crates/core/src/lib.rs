//! Standard and zigzag persistence on graph filtrations, with dynamic
//! maintenance of barcodes under switches (transpositions of consecutive
//! events).
//!
//! The crate is organized around a small data model ([`model`]): filtrations
//! of vertex/edge events, creator/destroyer pairings, and typed persistence
//! intervals. On top of it sit
//!
//! * [`standard`]: union-find standard persistence,
//! * [`std_switch`]: O(log m) switch updates on standard filtrations backed
//!   by a merge forest and a minimum spanning forest,
//! * [`zigzag`]: O(m log m) zigzag barcodes via the cell-wise up-down
//!   conversion,
//! * [`zz_switch`]: maintained zigzag barcodes under forward / backward /
//!   outward / inward switches with sqrt-decomposed checkpoint forests,
//! * [`oracle`]: independent brute-force references used by the test suites.

pub mod dynforest;
pub mod merge_forest;
pub mod model;
pub mod oracle;
pub mod gen;
pub mod standard;
pub mod std_switch;
pub mod zigzag;
pub mod zz_switch;

pub use model::{
    barcode_from_pairing, format_barcode, format_filtration, parse_filtration, parse_script,
    Death, Direction, EndType, Event, Filtration, Flavor, Interval, Pairing, Simplex, SwitchCmd,
    SwitchKind, ValidationError, ValidationErrorKind, VertexId,
};
pub use standard::compute_pairing;
pub use zigzag::compute_zigzag;
