//! Randomized invariants tying the constructors to the independent checks:
//! everything a constructive routine emits must pass verification, small
//! instances must agree with exhaustive search, the two graphicality tests
//! must agree with each other, and serialization must round-trip.

mod common;

use catpack::graphicality::{erdos_gallai, havel_hakimi};
use catpack::io::{graph_to_json, matrix_to_json, parse_graph, parse_matrix};
use catpack::oracle::{exhaustive_realize, random_matrix, OracleOutcome, SearchLimits};
use catpack::two_trees::{check_two_tree_conditions, realize_two};
use catpack::walecki::walecki_pack;
use catpack::{canonical_form, realize, DegreeMatrix, Realization};
use common::assert_valid_realization;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    /// Erdős–Gallai and Havel–Hakimi accept exactly the same sequences.
    #[test]
    fn erdos_gallai_and_havel_hakimi_agree(
        seq in prop::collection::vec(0usize..12, 0..12),
    ) {
        prop_assert_eq!(erdos_gallai(&seq).graphical, havel_hakimi(&seq));
    }

    /// Whatever `realize` constructs, the verifier accepts. One and two
    /// rows may share leaf columns; three and four rows stay inside the
    /// engine's domain, where construction is complete and `Unknown` would
    /// be a bug.
    #[test]
    fn constructed_realizations_always_verify(
        k in 1usize..=4,
        extra in 0usize..=12,
        seed in any::<u64>(),
    ) {
        let n = 2 * k + extra;
        let m = random_matrix(k, n, seed, k <= 2).unwrap();
        match realize(&m) {
            Realization::Exists { graph, .. } => assert_valid_realization(&m, &graph),
            Realization::NotExists { .. } => prop_assert_eq!(k, 2),
            Realization::Unknown { reason } => {
                prop_assert!(false, "gave up on {:?}: {reason}", m.rows())
            }
        }
    }

    /// The three-condition decision for two rows agrees with unlimited
    /// exhaustive search, and the constructor agrees with the decision.
    #[test]
    fn two_row_decision_matches_exhaustive_search(
        n in 2usize..=6,
        seed in any::<u64>(),
    ) {
        let m = random_matrix(2, n, seed, true).unwrap();
        let predicted = check_two_tree_conditions(&m).realizable();
        let run = exhaustive_realize(&m, &SearchLimits::unlimited());
        match run.outcome {
            OracleOutcome::Exists(g) => {
                prop_assert!(predicted, "search found what the conditions reject");
                assert_valid_realization(&m, &g);
            }
            OracleOutcome::NotExists => prop_assert!(!predicted),
            OracleOutcome::Unknown(_) => unreachable!("unlimited search"),
        }
        match realize_two(&m) {
            Realization::Exists { graph, .. } => {
                prop_assert!(predicted);
                assert_valid_realization(&m, &graph);
            }
            Realization::NotExists { .. } => prop_assert!(!predicted),
            Realization::Unknown { reason } => {
                prop_assert!(false, "two rows must be decided, got: {reason}")
            }
        }
    }

    /// Three rows without common leaves always realize, and exhaustive
    /// search independently confirms existence on small instances.
    #[test]
    fn three_row_construction_matches_exhaustive_search(
        extra in 0usize..=1,
        seed in any::<u64>(),
    ) {
        let m = random_matrix(3, 6 + extra, seed, false).unwrap();
        match realize(&m) {
            Realization::Exists { graph, .. } => assert_valid_realization(&m, &graph),
            other => prop_assert!(false, "expected a realization, got {other:?}"),
        }
        let run = exhaustive_realize(&m, &SearchLimits::unlimited());
        prop_assert!(matches!(run.outcome, OracleOutcome::Exists(_)));
    }

    /// The canonical form is unchanged by shuffling rows and columns.
    #[test]
    fn canonical_form_ignores_row_and_column_order(
        k in 1usize..=3,
        extra in 0usize..=6,
        seed in any::<u64>(),
        perm_seed in any::<u64>(),
    ) {
        let n = 2 * k + extra;
        let m = random_matrix(k, n, seed, true).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
        let mut rows: Vec<usize> = (0..k).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        for i in (1..k).rev() {
            let j = rng.random_range(0..=i);
            rows.swap(i, j);
        }
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            cols.swap(i, j);
        }
        let shuffled = DegreeMatrix::new(
            rows.iter()
                .map(|&r| cols.iter().map(|&c| m.entry(r, c)).collect())
                .collect(),
        )
        .unwrap();
        let a = canonical_form(&m).0;
        let b = canonical_form(&shuffled).0;
        prop_assert_eq!(a.rows(), b.rows());
    }

    /// Every all-path matrix with distinct leaf columns packs, whatever
    /// the leaf placement.
    #[test]
    fn walecki_packs_random_all_path_matrices(
        k in 1usize..=6,
        extra in 0usize..=15,
        seed in any::<u64>(),
    ) {
        let n = 2 * k + extra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut columns: Vec<usize> = (0..n).collect();
        for i in 0..2 * k {
            let j = rng.random_range(i..n);
            columns.swap(i, j);
        }
        let mut rows = vec![vec![2usize; n]; k];
        for (r, row) in rows.iter_mut().enumerate() {
            row[columns[2 * r]] = 1;
            row[columns[2 * r + 1]] = 1;
        }
        let m = DegreeMatrix::new(rows).unwrap();
        let g = walecki_pack(&m).unwrap();
        assert_valid_realization(&m, &g);
    }

    /// Matrices survive a trip through their JSON encoding.
    #[test]
    fn matrix_json_round_trips(
        k in 1usize..=4,
        extra in 0usize..=10,
        seed in any::<u64>(),
    ) {
        let n = 2 * k + extra;
        let m = random_matrix(k, n, seed, true).unwrap();
        let back = parse_matrix(&matrix_to_json(&m)).unwrap();
        prop_assert_eq!(back.rows(), m.rows());
    }

    /// Constructed graphs survive a trip through their JSON encoding.
    #[test]
    fn graph_json_round_trips(
        k in 1usize..=4,
        extra in 0usize..=10,
        seed in any::<u64>(),
    ) {
        let n = 2 * k + extra;
        let m = random_matrix(k, n, seed, k <= 2).unwrap();
        if let Realization::Exists { graph, .. } = realize(&m) {
            let back = parse_graph(&graph_to_json(&graph), Some(graph.k())).unwrap();
            prop_assert_eq!(back.edges(), graph.edges());
        }
    }
}
