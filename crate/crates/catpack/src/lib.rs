//! Edge-disjoint caterpillar realizations of tree degree matrices.
//!
//! A `k x n` degree matrix is *realizable* if the complete graph on `n`
//! vertices contains `k` pairwise edge-disjoint caterpillar trees, one per
//! row, such that tree `r` has degree `m[r][c]` at vertex `c`. This crate
//! decides, constructs, and verifies such realizations:
//!
//! * [`model`] — matrices, colored graphs, caterpillar recognition, and
//!   realization verification.
//! * [`graphicality`] — Erdős–Gallai and Havel–Hakimi tests for plain
//!   degree sequences.
//! * [`walecki`] — edge-disjoint Hamiltonian path packings for all-path
//!   matrices, after Walecki's round-robin decomposition.
//! * [`rainbow`] — rainbow matchings across caterpillar spines and the
//!   spine-length lower bounds guaranteeing them.
//! * [`engine`] — the leaf-reduction induction shared by the constructive
//!   routines, complete for up to four rows without common leaves.
//! * [`two_trees`] — the exact decision procedure and construction for two
//!   rows, common leaves allowed.
//! * [`large_n`] — the unconditional two-phase construction for five or
//!   more rows on a large vertex set.
//! * [`oracle`] — exhaustive search and instance generators for
//!   cross-checking every constructive path on small cases.
//! * [`io`] — file formats and DOT export.
//!
//! [`realize`] dispatches a matrix to the strongest applicable routine and
//! returns a verified graph, a refutation witness, or an honest `Unknown`.

pub mod engine;
mod fixtures;
pub mod graphicality;
pub mod io;
pub mod large_n;
pub mod model;
pub mod oracle;
pub mod rainbow;
pub mod two_trees;
pub mod walecki;

pub use model::{
    canonical_form, caterpillar_view, verify_realization, CaterpillarView, ColoredGraph,
    DegreeMatrix, ModelError, Realization, TraceStep, VerifyReport,
};

use engine::{realize_generic_conditional, realize_k_le_4, BaseProvider};
use large_n::realize_large;
use two_trees::realize_two;

/// Decide and construct a realization of `m` with the strongest routine
/// that applies:
///
/// * any non-tree row refutes outright;
/// * one row is always realizable directly;
/// * two rows get the exact three-condition decision procedure;
/// * three or four rows without common leaves are always realizable by
///   leaf reduction;
/// * five or more rows without common leaves and `n >= max(22k - 11, 396)`
///   are always realizable by the dense two-phase construction;
/// * everything else is `Unknown` (use the oracle for small instances, or
///   [`engine::realize_generic_conditional`] with an oracle base).
pub fn realize(m: &DegreeMatrix) -> Realization {
    if !m.is_tree_matrix() {
        return Realization::NotExists {
            reason: "some row is not a tree degree row".into(),
        };
    }
    let k = m.k();
    match k {
        1 => match realize_k_le_4(m) {
            Ok((graph, trace)) => Realization::Exists { graph, trace },
            Err(e) => Realization::Unknown {
                reason: e.to_string(),
            },
        },
        2 => realize_two(m),
        3 | 4 => {
            if m.has_common_leaves() {
                Realization::Unknown {
                    reason: format!(
                        "{k} rows with common leaves are outside this build's decision procedures"
                    ),
                }
            } else {
                match realize_k_le_4(m) {
                    Ok((graph, trace)) => Realization::Exists { graph, trace },
                    Err(e) => Realization::Unknown {
                        reason: e.to_string(),
                    },
                }
            }
        }
        _ => {
            if m.has_common_leaves() {
                return Realization::Unknown {
                    reason: format!(
                        "{k} rows with common leaves are outside this build's decision procedures"
                    ),
                };
            }
            let n = m.n();
            if n >= (22 * k - 11).max(396) {
                realize_large(m)
            } else {
                realize_generic_conditional(m, BaseProvider::None)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(rows: &[&[usize]]) -> DegreeMatrix {
        DegreeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn realize_dispatches_by_row_count() {
        let one = dm(&[&[1, 2, 2, 1]]);
        assert!(realize(&one).exists());

        let two = dm(&[&[1, 1, 2, 2], &[2, 2, 1, 1]]);
        assert!(realize(&two).exists());

        let three = dm(&[
            &[1, 1, 2, 2, 2, 2, 2, 2],
            &[2, 2, 1, 1, 2, 2, 2, 2],
            &[2, 2, 2, 2, 1, 1, 2, 2],
        ]);
        let r = realize(&three);
        let Realization::Exists { graph, .. } = &r else {
            panic!("expected a realization");
        };
        assert!(verify_realization(&three, graph).ok);
    }

    #[test]
    fn realize_refutes_non_tree_rows() {
        let bad = dm(&[&[2, 2, 2, 2]]);
        assert!(matches!(realize(&bad), Realization::NotExists { .. }));
    }

    #[test]
    fn realize_is_honest_outside_its_coverage() {
        // Three rows with a common leaf column.
        let m = dm(&[
            &[1, 1, 2, 2, 2, 2],
            &[1, 2, 1, 2, 2, 2],
            &[1, 2, 2, 1, 2, 2],
        ]);
        assert!(matches!(realize(&m), Realization::Unknown { .. }));

        // Five rows, not all paths, below both the dense floor and the
        // greedy reduction floor: no base is available.
        let five = dm(&[
            &[3, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1],
            &[1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
            &[2, 2, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2],
            &[2, 2, 2, 2, 1, 1, 2, 2, 2, 2, 2, 2],
            &[2, 2, 2, 2, 2, 2, 1, 1, 2, 2, 2, 2],
        ]);
        assert!(matches!(realize(&five), Realization::Unknown { .. }));

        // All-path five-row matrices are covered by the path packing even
        // below the dense floor.
        let paths = dm(&[
            &[1, 1, 2, 2, 2, 2, 2, 2, 2, 2],
            &[2, 2, 1, 1, 2, 2, 2, 2, 2, 2],
            &[2, 2, 2, 2, 1, 1, 2, 2, 2, 2],
            &[2, 2, 2, 2, 2, 2, 1, 1, 2, 2],
            &[2, 2, 2, 2, 2, 2, 2, 2, 1, 1],
        ]);
        assert!(realize(&paths).exists());
    }
}
