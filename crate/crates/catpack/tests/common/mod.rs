//! Shared assertions for integration tests: every realization checked in
//! this suite must satisfy the degree/caterpillar contract, and — whenever
//! the matrix has no common leaves — the spine-length bounds as well.

use catpack::model::{verify_realization, ColoredGraph, DegreeMatrix};
use catpack::rainbow::check_spine_bounds;

/// Panic unless `g` realizes `m` and, for matrices without common leaves,
/// all spine-length bounds hold.
pub fn assert_valid_realization(m: &DegreeMatrix, g: &ColoredGraph) {
    let report = verify_realization(m, g);
    assert!(
        report.ok,
        "graph does not realize the matrix {:?}: {report:?}",
        m.rows()
    );
    if !m.has_common_leaves() {
        let bounds = check_spine_bounds(g, m).expect("spine bounds must be computable");
        assert!(
            bounds.ok(),
            "spine bound violations for {:?}: {:?}",
            m.rows(),
            bounds.violations
        );
    }
}
