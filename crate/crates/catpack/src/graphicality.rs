//! Degree-sequence graphicality tests: the Erdős–Gallai inequalities (with
//! the smallest violated index reported), a prefix-limited variant that only
//! checks the leading inequalities, and the Havel–Hakimi reduction.

use serde::Serialize;

/// The smallest violated Erdős–Gallai inequality: index `s` (1-based over
/// the nonincreasing sequence) with `lhs > rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EgViolation {
    pub s: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// Result of the Erdős–Gallai test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EgReport {
    pub graphical: bool,
    pub parity_ok: bool,
    pub violation: Option<EgViolation>,
}

/// Evaluate `sum_{i<=s} f_i` vs `s(s-1) + sum_{j>s} min(s, f_j)` over the
/// nonincreasing copy of `seq`, for `s` in `1..=bound`, returning the first
/// violation. `sorted` must be nonincreasing.
fn first_violation(sorted: &[usize], bound: usize) -> Option<EgViolation> {
    let n = sorted.len();
    let mut suffix: Vec<usize> = vec![0; n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1] + sorted[j];
    }
    let mut lhs = 0usize;
    for s in 1..=bound.min(n) {
        lhs += sorted[s - 1];
        // First index j >= s (0-based) with sorted[j] < s: below it the
        // minimum is s, from it on the minimum is the entry itself.
        let b = sorted.partition_point(|&d| d >= s).max(s);
        let rhs = s * (s - 1) + s * (b - s) + suffix[b];
        if lhs > rhs {
            return Some(EgViolation { s, lhs, rhs });
        }
    }
    None
}

/// Erdős–Gallai test: a sequence of non-negative integers is the degree
/// sequence of a simple graph iff its sum is even and every inequality
/// `sum_{i<=s} f_i <= s(s-1) + sum_{j>s} min(s, f_j)` holds for the
/// nonincreasing ordering. Reports the smallest violated `s` when one
/// exists; an odd sum alone yields no violation index.
pub fn erdos_gallai(seq: &[usize]) -> EgReport {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let parity_ok = sorted.iter().sum::<usize>() % 2 == 0;
    if !parity_ok {
        return EgReport {
            graphical: false,
            parity_ok: false,
            violation: None,
        };
    }
    let violation = first_violation(&sorted, sorted.len());
    EgReport {
        graphical: violation.is_none(),
        parity_ok: true,
        violation,
    }
}

/// Prefix-limited Erdős–Gallai: parity plus only the inequalities for
/// `s < s_max` (strict). For certain structured sequences the leading
/// inequalities are known to imply all the rest, which makes this an `O(n)`
/// check after sorting.
pub fn eg_prefix_check(seq: &[usize], s_max: usize) -> bool {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.iter().sum::<usize>() % 2 != 0 {
        return false;
    }
    if s_max <= 1 {
        return true;
    }
    first_violation(&sorted, s_max - 1).is_none()
}

/// Havel–Hakimi reduction: repeatedly connect the largest-degree vertex to
/// the next largest ones. Linear-logarithmic per round; used as an
/// independent oracle for the Erdős–Gallai test.
pub fn havel_hakimi(seq: &[usize]) -> bool {
    let mut s: Vec<usize> = seq.to_vec();
    loop {
        s.sort_unstable_by(|a, b| b.cmp(a));
        while let Some(&last) = s.last() {
            if last == 0 {
                s.pop();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return true;
        }
        let d = s[0];
        if d > s.len() - 1 {
            return false;
        }
        s.remove(0);
        if s[d - 1] == 0 {
            // Not enough positive-degree partners (sequence is nonincreasing).
            return false;
        }
        for item in s.iter_mut().take(d) {
            *item -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erdos_gallai_reports_smallest_violation() {
        let rep = erdos_gallai(&[5, 5, 4, 2, 2, 2]);
        assert!(!rep.graphical);
        assert!(rep.parity_ok);
        assert_eq!(
            rep.violation,
            Some(EgViolation {
                s: 3,
                lhs: 14,
                rhs: 12
            })
        );

        let rep = erdos_gallai(&[4, 4, 4, 2, 2]);
        assert!(!rep.graphical);
        assert_eq!(
            rep.violation,
            Some(EgViolation {
                s: 3,
                lhs: 12,
                rhs: 10
            })
        );
    }

    #[test]
    fn erdos_gallai_accepts_graphical_sequences() {
        for seq in [
            vec![],
            vec![0],
            vec![1, 1],
            vec![2, 2, 2],
            vec![3, 3, 3, 3],
            vec![3, 2, 2, 2, 1],
            vec![4, 4, 4, 4, 4], // K5
        ] {
            let rep = erdos_gallai(&seq);
            assert!(rep.graphical, "{seq:?} should be graphical: {rep:?}");
        }
    }

    #[test]
    fn erdos_gallai_odd_sum_has_no_violation_index() {
        let rep = erdos_gallai(&[3, 2, 2]);
        assert!(!rep.graphical);
        assert!(!rep.parity_ok);
        assert_eq!(rep.violation, None);
    }

    #[test]
    fn erdos_gallai_is_order_insensitive() {
        let a = erdos_gallai(&[2, 5, 2, 5, 4, 2]);
        let b = erdos_gallai(&[5, 5, 4, 2, 2, 2]);
        assert_eq!(a, b);
    }

    #[test]
    fn prefix_check_frozen_values() {
        assert!(!eg_prefix_check(&[5, 5, 4, 2, 2, 2], 4)); // s = 3 violated
        assert!(eg_prefix_check(&[2, 2], 1)); // nothing to check, even sum
        assert!(!eg_prefix_check(&[2, 1], 1)); // odd sum caught by parity
        assert!(eg_prefix_check(&[5, 5, 4, 2, 2, 2], 3)); // s = 1, 2 hold
    }

    #[test]
    fn havel_hakimi_frozen_values() {
        assert!(havel_hakimi(&[3, 1, 1, 1]));
        assert!(!havel_hakimi(&[3, 3, 1, 1]));
        assert!(havel_hakimi(&[]));
        assert!(havel_hakimi(&[0, 0]));
        assert!(!havel_hakimi(&[1]));
        assert!(havel_hakimi(&[2, 1, 1, 1, 1]));
        assert!(!havel_hakimi(&[2, 1, 1, 1])); // odd sum
    }

    #[test]
    fn havel_hakimi_matches_erdos_gallai_on_small_cases() {
        // Exhaustive over all nonincreasing sequences of length 4 with
        // entries at most 4.
        fn rec(prefix: &mut Vec<usize>, max: usize, len: usize) {
            if prefix.len() == len {
                let eg = erdos_gallai(prefix).graphical;
                let hh = havel_hakimi(prefix);
                assert_eq!(eg, hh, "disagree on {prefix:?}");
                return;
            }
            for d in (0..=max).rev() {
                prefix.push(d);
                rec(prefix, d, len);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 4, 4);
    }
}
