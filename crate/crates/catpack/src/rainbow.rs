//! Rainbow matchings across caterpillar spines, and the spine-length lower
//! bounds that make them available.
//!
//! A rainbow matching here is a set of edges, at most one per spine (spines
//! are tagged with distinct colors), pairwise vertex-disjoint and avoiding
//! one forbidden vertex. The induction engine pulls such matchings onto a
//! newly inserted vertex.

use crate::model::{caterpillar_view, ColoredGraph, DegreeMatrix};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RainbowError {
    #[error("no rainbow matching of size {size} exists in the given spines avoiding {avoid}")]
    NotFound { size: usize, avoid: usize },
    #[error("fewer spines ({0}) than the requested matching size ({1})")]
    TooFewSpines(usize, usize),
    #[error("spine bounds apply only to matrices without common leaves")]
    CommonLeaves,
    #[error("color {color} is not a caterpillar: {reason}")]
    NotACaterpillar { color: usize, reason: String },
}

/// A rainbow matching: edges `(color, u, v)`, plus whether the greedy
/// first-fit scan found it without any backtracking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowMatching {
    pub edges: Vec<(usize, usize, usize)>,
    pub greedy: bool,
}

/// Edge list of a spine sequence, scanned from its lower-labeled end.
fn spine_edges_oriented(spine: &[usize]) -> Vec<(usize, usize)> {
    let mut seq: Vec<usize> = spine.to_vec();
    if seq.first() > seq.last() {
        seq.reverse();
    }
    seq.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Find `size` pairwise vertex-disjoint edges, at most one per spine and
/// none incident to `avoid`. Spines are processed shortest first (ties by
/// color); each spine is scanned from its lower end. A pure first-fit pass
/// is tried first (`greedy = true` on success); otherwise an exhaustive
/// search with backtracking and spine skipping decides existence.
pub fn find_rainbow_avoiding(
    spines: &[(usize, Vec<usize>)],
    avoid: usize,
    size: usize,
) -> Result<RainbowMatching, RainbowError> {
    if spines.len() < size {
        return Err(RainbowError::TooFewSpines(spines.len(), size));
    }
    if size == 0 {
        return Ok(RainbowMatching {
            edges: vec![],
            greedy: true,
        });
    }
    let mut order: Vec<usize> = (0..spines.len()).collect();
    order.sort_by_key(|&i| (spines[i].1.len(), spines[i].0));
    let candidate_lists: Vec<(usize, Vec<(usize, usize)>)> = order
        .iter()
        .map(|&i| (spines[i].0, spine_edges_oriented(&spines[i].1)))
        .collect();

    let compatible = |used: &[usize], (u, v): (usize, usize)| -> bool {
        u != avoid && v != avoid && !used.contains(&u) && !used.contains(&v)
    };

    // Greedy pass: take the first compatible edge of each spine in order.
    {
        let mut used: Vec<usize> = Vec::with_capacity(2 * size);
        let mut picked: Vec<(usize, usize, usize)> = Vec::with_capacity(size);
        for (color, edges) in &candidate_lists {
            if picked.len() == size {
                break;
            }
            match edges.iter().find(|&&e| compatible(&used, e)) {
                Some(&(u, v)) => {
                    used.push(u);
                    used.push(v);
                    picked.push((*color, u, v));
                }
                None => {
                    picked.clear();
                    break;
                }
            }
        }
        if picked.len() == size {
            return Ok(RainbowMatching {
                edges: picked,
                greedy: true,
            });
        }
    }

    // Exhaustive pass: depth-first over spines in the same order, allowed
    // to skip as many spines as the surplus permits.
    type Compatible<'a> = dyn Fn(&[usize], (usize, usize)) -> bool + 'a;
    fn dfs(
        lists: &[(usize, Vec<(usize, usize)>)],
        idx: usize,
        need: usize,
        used: &mut Vec<usize>,
        picked: &mut Vec<(usize, usize, usize)>,
        compatible: &Compatible,
    ) -> bool {
        if need == 0 {
            return true;
        }
        if lists.len() - idx < need {
            return false;
        }
        let (color, edges) = &lists[idx];
        for &(u, v) in edges {
            if compatible(used, (u, v)) {
                used.push(u);
                used.push(v);
                picked.push((*color, u, v));
                if dfs(lists, idx + 1, need - 1, used, picked, compatible) {
                    return true;
                }
                picked.pop();
                used.pop();
                used.pop();
            }
        }
        // Skip this spine if the remaining ones can still supply `need`.
        dfs(lists, idx + 1, need, used, picked, compatible)
    }

    let mut used = Vec::new();
    let mut picked = Vec::new();
    if dfs(
        &candidate_lists,
        0,
        size,
        &mut used,
        &mut picked,
        &compatible,
    ) {
        Ok(RainbowMatching {
            edges: picked,
            greedy: false,
        })
    } else {
        Err(RainbowError::NotFound { size, avoid })
    }
}

/// Spine-length bounds of a realization of a matrix without common leaves.
///
/// With `t_1 <= ... <= t_k` the spine edge counts:
/// - every spine has at least `2k - 1` edges;
/// - for `k >= 4` and `n >= 2k + 2`, the second largest has at least
///   `2k + 1` edges;
/// - for every `l` in `1..k`, `l * t_l >= (l - 1) * n + 2k - l` (each
///   caterpillar has `n + 1 - t` leaves and leaf sets are disjoint; the
///   bound is tight when all rows are paths and `n = 2k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineBoundsReport {
    /// Spine edge counts, ascending.
    pub spine_edges: Vec<usize>,
    pub min_spine_ok: bool,
    pub second_largest_checked: bool,
    pub second_largest_ok: bool,
    pub weighted_ok: bool,
    pub violations: Vec<String>,
}

impl SpineBoundsReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate all spine-length bounds of `g` as a realization of `m`.
/// Only defined for matrices without common leaves.
pub fn check_spine_bounds(
    g: &ColoredGraph,
    m: &DegreeMatrix,
) -> Result<SpineBoundsReport, RainbowError> {
    if m.has_common_leaves() {
        return Err(RainbowError::CommonLeaves);
    }
    let k = m.k();
    let n = m.n();
    let mut spine_edges = Vec::with_capacity(k);
    for color in 1..=k {
        let view = caterpillar_view(g, color).map_err(|e| match e {
            crate::model::ModelError::NotACaterpillar { color, reason } => {
                RainbowError::NotACaterpillar { color, reason }
            }
            other => RainbowError::NotACaterpillar {
                color,
                reason: other.to_string(),
            },
        })?;
        spine_edges.push(view.spine_edges());
    }
    spine_edges.sort_unstable();

    let mut violations = Vec::new();
    let min_spine_ok = spine_edges[0] >= 2 * k - 1;
    if !min_spine_ok {
        violations.push(format!(
            "shortest spine has {} edges, below the minimum 2k-1 = {}",
            spine_edges[0],
            2 * k - 1
        ));
    }
    let second_largest_checked = k >= 4 && n >= 2 * k + 2;
    let mut second_largest_ok = true;
    if second_largest_checked && spine_edges[k - 2] < 2 * k + 1 {
        second_largest_ok = false;
        violations.push(format!(
            "second-largest spine has {} edges, below 2k+1 = {}",
            spine_edges[k - 2],
            2 * k + 1
        ));
    }
    let mut weighted_ok = true;
    for l in 1..k {
        let lhs = l * spine_edges[l - 1];
        let rhs = (l - 1) * n + 2 * k - l;
        if lhs < rhs {
            weighted_ok = false;
            violations.push(format!(
                "weighted spine bound failed at l = {l}: {l} * {} = {lhs} < {rhs}",
                spine_edges[l - 1]
            ));
        }
    }
    Ok(SpineBoundsReport {
        spine_edges,
        min_spine_ok,
        second_largest_checked,
        second_largest_ok,
        weighted_ok,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DegreeMatrix;
    use crate::walecki::walecki_pack;

    #[test]
    fn single_spine_frozen_example() {
        // Spine 1-5-2-3-4 scanned from the end labeled 1; avoiding vertex 1
        // the first compatible edge is (5, 2).
        let spines = vec![(7usize, vec![1, 5, 2, 3, 4])];
        let m = find_rainbow_avoiding(&spines, 1, 1).unwrap();
        assert_eq!(m.edges, vec![(7, 5, 2)]);
        assert!(m.greedy);
    }

    #[test]
    fn exhausted_spine_reports_not_found() {
        let spines = vec![(1usize, vec![1, 2, 3])];
        assert_eq!(
            find_rainbow_avoiding(&spines, 2, 1),
            Err(RainbowError::NotFound { size: 1, avoid: 2 })
        );
    }

    #[test]
    fn scans_from_lower_labeled_end() {
        // Reversed spine is normalized before scanning.
        let spines = vec![(1usize, vec![4, 3, 2, 5, 1])];
        let m = find_rainbow_avoiding(&spines, 0, 1).unwrap();
        assert_eq!(m.edges, vec![(1, 1, 5)]);
    }

    #[test]
    fn backtracking_finds_what_greedy_misses() {
        // Both spines have length 3, so color 1 is processed first. Greedy
        // takes its first edge (1,2), which blocks every edge of spine 2;
        // the exhaustive pass recovers by taking (2,3) instead.
        let spines = vec![(1usize, vec![1, 2, 3]), (2usize, vec![1, 5, 2])];
        let m = find_rainbow_avoiding(&spines, 0, 2).unwrap();
        assert!(!m.greedy);
        assert_eq!(m.edges, vec![(1, 2, 3), (2, 1, 5)]);
    }

    #[test]
    fn shorter_spines_are_processed_first() {
        let spines = vec![(1usize, vec![1, 2, 3, 4, 5]), (2usize, vec![6, 7])];
        let m = find_rainbow_avoiding(&spines, 0, 2).unwrap();
        // Spine 2 is shorter: its only edge must appear, chosen first.
        assert!(m.edges.contains(&(2, 6, 7)));
    }

    #[test]
    fn too_few_spines_is_an_error() {
        assert_eq!(
            find_rainbow_avoiding(&[], 0, 1),
            Err(RainbowError::TooFewSpines(0, 1))
        );
    }

    #[test]
    fn spine_bounds_tight_at_full_path_packing() {
        // k = 4, n = 2k = 8, all paths: every spine has 7 edges, and the
        // weighted bound is met with equality at l = 3: 3*7 = 21 = 2*8 + 8 - 3.
        let d = DegreeMatrix::new(vec![
            vec![1, 2, 2, 2, 1, 2, 2, 2],
            vec![2, 1, 2, 2, 2, 1, 2, 2],
            vec![2, 2, 1, 2, 2, 2, 1, 2],
            vec![2, 2, 2, 1, 2, 2, 2, 1],
        ])
        .unwrap();
        let g = walecki_pack(&d).unwrap();
        let rep = check_spine_bounds(&g, &d).unwrap();
        assert_eq!(rep.spine_edges, vec![7, 7, 7, 7]);
        assert!(rep.ok(), "{:?}", rep.violations);
        assert_eq!(3 * rep.spine_edges[2], 2 * 8 + 2 * 4 - 3);
    }

    #[test]
    fn spine_bounds_reject_common_leaves() {
        let d = DegreeMatrix::new(vec![vec![1, 2, 2, 1], vec![1, 2, 2, 1]]).unwrap();
        let g = ColoredGraph::new(4, 2);
        assert_eq!(check_spine_bounds(&g, &d), Err(RainbowError::CommonLeaves));
    }

    #[test]
    fn spine_bounds_flag_short_spines() {
        // Color 1 is a star (spine 2 edges) while k = 2 demands spines of
        // at least 3 edges; both the minimum and the weighted bound at
        // l = 1 must be flagged.
        let d = DegreeMatrix::new(vec![vec![1, 2, 2, 2, 2, 1], vec![2, 1, 1, 2, 2, 2]]).unwrap();
        assert!(!d.has_common_leaves());
        let mut g = ColoredGraph::new(6, 2);
        for v in 1..6 {
            g.add_edge(0, v, 1).unwrap();
        }
        for v in 1..5 {
            g.add_edge(v, v + 1, 2).unwrap();
        }
        let rep = check_spine_bounds(&g, &d).unwrap();
        assert_eq!(rep.spine_edges, vec![2, 4]);
        assert!(!rep.min_spine_ok);
        assert!(!rep.second_largest_checked);
        assert!(!rep.weighted_ok);
        assert!(!rep.ok());
        assert_eq!(rep.violations.len(), 2);
    }
}
