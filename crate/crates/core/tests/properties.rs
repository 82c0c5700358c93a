//! Property-based invariants over randomly generated filtrations.

use graph_persistence::gen::{random_standard, random_standard_switch, random_zigzag, switched};
use graph_persistence::model::{format_filtration, parse_filtration, Flavor, Simplex};
use graph_persistence::oracle::betti_number;
use graph_persistence::standard::compute_pairing;
use graph_persistence::std_switch::StdUpdateState;
use graph_persistence::zigzag::compute_zigzag;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    /// Text round-trip: formatting then parsing reproduces the filtration.
    #[test]
    fn prop_format_parse_roundtrip(seed in any::<u64>(), zigzag in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, flavor) = if zigzag {
            (random_zigzag(&mut rng, 8, 40), Flavor::Zigzag)
        } else {
            (random_standard(&mut rng, 8, 40), Flavor::Standard)
        };
        let back = parse_filtration(&format_filtration(&f), flavor).unwrap();
        prop_assert_eq!(f, back);
    }

    /// A zigzag barcode has exactly m/2 intervals (each creator pairs once)
    /// and reconstructs every betti number.
    #[test]
    fn prop_zigzag_barcode_counts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_zigzag(&mut rng, 6, 36);
        let bars = compute_zigzag(&f);
        prop_assert_eq!(bars.len(), f.len() / 2);
        for i in 0..=f.len() {
            for p in 0..2 {
                let count = bars
                    .iter()
                    .filter(|iv| iv.dim == p && iv.contains(i, Flavor::Zigzag))
                    .count();
                prop_assert_eq!(count, betti_number(&f, i, p));
            }
        }
    }

    /// Endpoint types depend only on the arrow directions at the ends.
    #[test]
    fn prop_endpoint_types_follow_arrows(seed in any::<u64>()) {
        use graph_persistence::model::{Death, EndType};
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_zigzag(&mut rng, 6, 36);
        for iv in compute_zigzag(&f) {
            let closed_birth = f.events()[iv.birth - 1].is_addition();
            prop_assert_eq!(iv.birth_type == EndType::Closed, closed_birth);
            let Death::Finite(d) = iv.death else { unreachable!() };
            let closed_death = !f.events()[d].is_addition();
            prop_assert_eq!(iv.death_type == EndType::Closed, closed_death);
        }
    }

    /// Unpaired vertices count the components of the final graph; unpaired
    /// edges its first betti number.
    #[test]
    fn prop_standard_unpaired_counts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_standard(&mut rng, 8, 60);
        let p = compute_pairing(&f);
        let unpaired_vertices = p
            .unpaired
            .iter()
            .filter(|&&i| matches!(f.events()[i].simplex, Simplex::Vertex(_)))
            .count();
        let unpaired_edges = p.unpaired.len() - unpaired_vertices;
        prop_assert_eq!(unpaired_vertices, betti_number(&f, f.len(), 0));
        prop_assert_eq!(unpaired_edges, betti_number(&f, f.len(), 1));
    }

    /// Applying a legal switch twice restores pairing, forest shape and MSF.
    #[test]
    fn prop_switch_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_standard(&mut rng, 8, 40);
        prop_assume!(f.len() >= 3);
        let Some(i) = random_standard_switch(&mut rng, &f) else {
            return Ok(());
        };
        let mut state = StdUpdateState::from_filtration(&f);
        let before = (state.pairing(), state.forest_canonical(), state.msf_edge_positions());
        state.switch(i).unwrap();
        state.switch(i).unwrap();
        prop_assert_eq!(state.pairing(), before.0);
        prop_assert_eq!(state.forest_canonical(), before.1);
        prop_assert_eq!(state.msf_edge_positions(), before.2);
    }

    /// A legal switch keeps the filtration valid and changes exactly two
    /// adjacent events.
    #[test]
    fn prop_switch_keeps_validity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_zigzag(&mut rng, 6, 36);
        if let Some((_, i)) = graph_persistence::gen::random_switch(&mut rng, &f) {
            let g = switched(&f, i);
            prop_assert!(g.validate().is_ok());
            let diff: Vec<usize> =
                (0..f.len()).filter(|&t| f.events()[t] != g.events()[t]).collect();
            prop_assert_eq!(diff, vec![i - 1, i]);
        }
    }
}
