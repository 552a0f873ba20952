//! Stored caterpillar realizations for every four-row tree degree matrix
//! without common leaves on at most ten vertices (14 matrices up to row and
//! column permutation). Each entry pairs the degree matrix with an adjacency
//! table in which 0 means "no edge" and a nonzero entry is the edge's color.

use crate::model::{verify_realization, ColoredGraph, DegreeMatrix};
use std::sync::OnceLock;

/// One stored realization: its 1-based case number, the degree matrix, and
/// a verified edge-disjoint caterpillar realization.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub case: usize,
    pub matrix: DegreeMatrix,
    pub graph: ColoredGraph,
}

const RAW: [(&str, &str); 14] = [
    // Case 1: eight vertices, all rows paths.
    (
        "
        1 2 2 2 1 2 2 2
        2 1 2 2 2 1 2 2
        2 2 1 2 2 2 1 2
        2 2 2 1 2 2 2 1
        ",
        "
        0 1 2 2 3 3 4 4
        1 0 2 3 3 4 4 1
        2 2 0 3 4 4 1 1
        2 3 3 0 4 1 1 2
        3 3 4 4 0 1 2 2
        3 4 4 1 1 0 2 3
        4 4 1 1 2 2 0 3
        4 1 1 2 2 3 3 0
        ",
    ),
    // Case 2: nine vertices, all rows paths.
    (
        "
        1 2 2 2 2 1 2 2 2
        2 1 2 2 2 2 1 2 2
        2 2 1 2 2 2 2 1 2
        2 2 2 1 2 2 2 2 1
        ",
        "
        0 1 2 2 3 3 4 4 0
        1 0 2 3 3 4 4 0 1
        2 2 0 3 4 4 0 1 1
        2 3 3 0 4 0 1 1 2
        3 3 4 4 0 1 1 2 2
        3 4 4 0 1 0 2 2 3
        4 4 0 1 1 2 0 3 3
        4 0 1 1 2 2 3 0 4
        0 1 1 2 2 3 3 4 0
        ",
    ),
    // Case 3: nine vertices, one degree 3.
    (
        "
        1 3 2 2 1 2 2 2 1
        2 1 2 2 2 1 2 2 2
        2 2 1 2 2 2 1 2 2
        2 2 2 1 2 2 2 1 2
        ",
        "
        0 1 0 2 3 3 4 4 2
        1 0 2 3 3 4 4 1 1
        0 2 0 3 4 4 1 1 2
        2 3 3 0 0 1 1 2 4
        3 3 4 0 0 1 2 2 4
        3 4 4 1 1 0 2 0 3
        4 4 1 1 2 2 0 3 0
        4 1 1 2 2 0 3 0 3
        2 1 2 4 4 3 0 3 0
        ",
    ),
    // Case 4: ten vertices, all rows paths.
    (
        "
        1 2 2 2 2 1 2 2 2 2
        2 1 2 2 2 2 1 2 2 2
        2 2 1 2 2 2 2 1 2 2
        2 2 2 1 2 2 2 2 1 2
        ",
        "
        0 1 2 2 3 3 4 4 0 0
        1 0 2 3 3 4 4 0 0 1
        2 2 0 3 4 4 0 0 1 1
        2 3 3 0 4 0 0 1 1 2
        3 3 4 4 0 0 1 1 2 2
        3 4 4 0 0 0 1 2 2 3
        4 4 0 0 1 1 0 2 3 3
        4 0 0 1 1 2 2 0 3 4
        0 0 1 1 2 2 3 3 0 4
        0 1 1 2 2 3 3 4 4 0
        ",
    ),
    // Case 5: ten vertices, one degree 3 on a vertex that also carries a
    // leaf in another row.
    (
        "
        1 3 2 2 2 1 2 2 2 1
        2 1 2 2 2 2 1 2 2 2
        2 2 1 2 2 2 2 1 2 2
        2 2 2 1 2 2 2 2 1 2
        ",
        "
        0 1 0 2 3 3 4 4 0 2
        1 0 2 3 3 4 4 0 1 1
        0 2 0 3 4 4 0 1 1 2
        2 3 3 0 0 0 1 1 2 4
        3 3 4 0 0 1 1 2 2 4
        3 4 4 0 1 0 2 2 3 0
        4 4 0 1 1 2 0 0 3 3
        4 0 1 1 2 2 0 0 4 3
        0 1 1 2 2 3 3 4 0 0
        2 1 2 4 4 0 3 3 0 0
        ",
    ),
    // Case 6: ten vertices, one degree 3 on a vertex without a leaf.
    (
        "
        1 2 2 2 3 1 2 2 2 1
        2 1 2 2 2 2 1 2 2 2
        2 2 1 2 2 2 2 1 2 2
        2 2 2 1 2 2 2 2 1 2
        ",
        "
        0 1 0 2 3 3 4 4 0 2
        1 0 2 0 3 4 4 0 1 3
        0 2 0 3 4 4 0 1 1 2
        2 0 3 0 4 0 1 1 2 3
        3 3 4 4 0 1 1 2 2 1
        3 4 4 0 1 0 2 2 3 0
        4 4 0 1 1 2 0 3 3 0
        4 0 1 1 2 2 3 0 0 4
        0 1 1 2 2 3 3 0 0 4
        2 3 2 3 1 0 0 4 4 0
        ",
    ),
    // Case 7: ten vertices, one degree 4.
    (
        "
        1 4 2 2 1 2 2 2 1 1
        2 1 2 2 2 1 2 2 2 2
        2 2 1 2 2 2 1 2 2 2
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 1 0 0 3 3 4 4 2 2
        1 0 2 3 3 4 4 1 1 1
        0 2 0 3 0 4 1 1 2 4
        0 3 3 0 0 1 1 2 4 2
        3 3 0 0 0 1 2 2 4 4
        3 4 4 1 1 0 2 0 3 0
        4 4 1 1 2 2 0 0 0 3
        4 1 1 2 2 0 0 0 3 3
        2 1 2 4 4 3 0 3 0 0
        2 1 4 2 4 0 3 3 0 0
        ",
    ),
    // Case 8: two degree 3s in the same row, their leaves in one other row.
    (
        "
        1 3 2 2 1 3 2 2 1 1
        2 1 2 2 2 1 2 2 2 2
        2 2 1 2 2 2 1 2 2 2
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 1 0 2 0 3 4 4 2 3
        1 0 0 3 3 4 4 1 1 2
        0 0 0 3 4 4 1 1 2 2
        2 3 3 0 0 1 1 2 0 4
        0 3 4 0 0 1 2 2 4 3
        3 4 4 1 1 0 2 0 3 1
        4 4 1 1 2 2 0 3 0 0
        4 1 1 2 2 0 3 0 3 0
        2 1 2 0 4 3 0 3 0 4
        3 2 2 4 3 1 0 0 4 0
        ",
    ),
    // Case 9: two degree 3s in the same row, their leaves in different rows.
    (
        "
        1 3 3 2 1 2 2 2 1 1
        2 1 2 2 2 1 2 2 2 2
        2 2 1 2 2 2 1 2 2 2
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 1 0 0 3 3 4 4 2 2
        1 0 2 3 3 0 4 1 1 4
        0 2 0 3 4 4 1 1 2 1
        0 3 3 0 0 1 1 2 4 2
        3 3 4 0 0 1 2 2 4 0
        3 0 4 1 1 0 2 0 3 4
        4 4 1 1 2 2 0 0 0 3
        4 1 1 2 2 0 0 0 3 3
        2 1 2 4 4 3 0 3 0 0
        2 4 1 2 0 4 3 3 0 0
        ",
    ),
    // Case 10: two degree 3s in different rows on the same vertex.
    (
        "
        1 3 2 2 1 2 2 2 1 2
        2 1 2 2 2 1 2 2 2 2
        2 3 1 2 2 2 1 2 2 1
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 1 0 2 3 3 4 0 2 4
        1 0 2 3 3 4 4 1 1 3
        0 2 0 3 4 4 1 1 2 0
        2 3 3 0 0 0 1 2 4 1
        3 3 4 0 0 1 0 2 4 2
        3 4 4 0 1 0 2 0 3 1
        4 4 1 1 0 2 0 3 0 2
        0 1 1 2 2 0 3 0 3 4
        2 1 2 4 4 3 0 3 0 0
        4 3 0 1 2 1 2 4 0 0
        ",
    ),
    // Case 11: degree 3s in different rows on different vertices, both
    // paired with a degree 1 on the other vertex.
    (
        "
        1 3 2 2 1 2 2 2 1 2
        3 1 2 2 2 1 2 2 2 1
        2 2 1 2 2 2 1 2 2 2
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 1 0 2 3 3 4 4 2 2
        1 0 2 3 3 4 4 1 1 0
        0 2 0 3 0 4 1 1 2 4
        2 3 3 0 0 0 1 2 4 1
        3 3 0 0 0 1 2 2 4 4
        3 4 4 0 1 0 2 0 3 1
        4 4 1 1 2 2 0 0 0 3
        4 1 1 2 2 0 0 0 3 3
        2 1 2 4 4 3 0 3 0 0
        2 0 4 1 4 1 3 3 0 0
        ",
    ),
    // Case 12: degree 3s in different rows on different vertices, one
    // paired with a 1 and the other with a 2.
    (
        "
        1 3 2 2 1 2 2 2 1 2
        2 1 3 2 2 1 2 2 2 1
        2 2 1 2 2 2 1 2 2 2
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 0 0 2 3 3 4 4 2 1
        0 0 2 3 3 4 4 1 1 1
        0 2 0 3 4 4 1 1 2 2
        2 3 3 0 0 1 1 2 0 4
        3 3 4 0 0 1 2 2 4 0
        3 4 4 1 1 0 2 0 3 0
        4 4 1 1 2 2 0 0 0 3
        4 1 1 2 2 0 0 0 3 3
        2 1 2 0 4 3 0 3 0 4
        1 1 2 4 0 0 3 3 4 0
        ",
    ),
    // Case 13: degree 3s in different rows on different vertices, both
    // paired with 2s; the two 1s on those vertices share a row.
    (
        "
        1 3 2 2 1 2 2 2 1 2
        2 1 2 2 2 1 2 2 2 2
        2 2 1 2 2 3 1 2 2 1
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 0 0 2 3 3 4 4 2 1
        0 0 2 3 3 4 4 1 1 1
        0 2 0 3 4 4 1 1 2 0
        2 3 3 0 0 1 1 2 0 4
        3 3 4 0 0 1 0 2 4 2
        3 4 4 1 1 0 2 0 3 3
        4 4 1 1 0 2 0 3 0 2
        4 1 1 2 2 0 3 0 3 0
        2 1 2 0 4 3 0 3 0 4
        1 1 0 4 2 3 2 0 4 0
        ",
    ),
    // Case 14: degree 3s in different rows on different vertices, both
    // paired with 2s; the two 1s on those vertices lie in different rows.
    (
        "
        1 3 2 2 1 2 2 2 1 2
        2 1 2 2 2 1 2 2 2 2
        2 2 1 3 2 2 1 2 2 1
        2 2 2 1 2 2 2 1 2 2
        ",
        "
        0 0 0 2 3 3 4 4 2 1
        0 0 2 3 3 4 4 1 1 1
        0 2 0 3 4 0 1 1 2 4
        2 3 3 0 0 1 1 2 4 3
        3 3 4 0 0 1 0 2 4 2
        3 4 0 1 1 0 2 0 3 4
        4 4 1 1 0 2 0 3 0 2
        4 1 1 2 2 0 3 0 3 0
        2 1 2 4 4 3 0 3 0 0
        1 1 4 3 2 4 2 0 0 0
        ",
    ),
];

fn parse_table(text: &str) -> Vec<Vec<usize>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse().expect("stored table entry is an integer"))
                .collect()
        })
        .collect()
}

fn build(case: usize, d_text: &str, a_text: &str) -> Fixture {
    let matrix = DegreeMatrix::new(parse_table(d_text)).expect("stored matrix is well formed");
    let table = parse_table(a_text);
    let n = matrix.n();
    assert_eq!(table.len(), n, "case {case}: adjacency table height");
    let mut graph = ColoredGraph::new(n, matrix.k());
    for (u, row) in table.iter().enumerate() {
        assert_eq!(row.len(), n, "case {case}: adjacency table width");
        assert_eq!(row[u], 0, "case {case}: zero diagonal");
        for (v, &color) in row.iter().enumerate().skip(u + 1) {
            assert_eq!(
                color, table[v][u],
                "case {case}: adjacency table symmetry at ({u},{v})"
            );
            if color != 0 {
                graph
                    .add_edge(u, v, color)
                    .unwrap_or_else(|e| panic!("case {case}: {e}"));
            }
        }
    }
    let report = verify_realization(&matrix, &graph);
    assert!(
        report.ok,
        "case {case}: stored realization fails verification"
    );
    Fixture {
        case,
        matrix,
        graph,
    }
}

/// All stored realizations, parsed and verified once.
pub fn all() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        RAW.iter()
            .enumerate()
            .map(|(i, (d, a))| build(i + 1, d, a))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse_and_verify() {
        let fixtures = all();
        assert_eq!(fixtures.len(), 14);
        assert_eq!(fixtures[0].matrix.n(), 8);
        assert_eq!(fixtures[1].matrix.n(), 9);
        assert_eq!(fixtures[2].matrix.n(), 9);
        for f in &fixtures[3..] {
            assert_eq!(f.matrix.n(), 10);
        }
        for f in fixtures {
            assert_eq!(f.matrix.k(), 4);
            assert!(f.matrix.is_tree_matrix());
            assert!(!f.matrix.has_common_leaves());
        }
    }

    #[test]
    fn fixture_cases_are_pairwise_distinct() {
        use crate::model::canonical_form;
        let mut forms = std::collections::BTreeSet::new();
        for f in all() {
            let (c, _, _) = canonical_form(&f.matrix);
            assert!(forms.insert(c), "case {} duplicates another", f.case);
        }
    }
}
