//! Helpers for eventually periodic sequences `pre, period, period, ...`.

/// Replaces `period` by its primitive root, e.g. `[1, 2, 1, 2]` by `[1, 2]`.
pub(crate) fn shrink_period<T: PartialEq>(period: &mut Vec<T>) {
    let n = period.len();
    if let Some(p) = (1..n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| period[i] == period[i % p])) {
        period.truncate(p);
    }
}

/// Rewrites `(preperiod, period)` so that the period is primitive and the
/// preperiod is as short as possible. `period` must be non-empty.
pub(crate) fn minimize<T: PartialEq>(mut pre: Vec<T>, mut period: Vec<T>) -> (Vec<T>, Vec<T>) {
    assert!(!period.is_empty(), "empty period");
    shrink_period(&mut period);
    while pre.last().is_some() && pre.last() == period.last() {
        pre.pop();
        period.rotate_right(1);
    }
    (pre, period)
}

/// Element `i` of the infinite sequence.
pub(crate) fn nth<'a, T>(pre: &'a [T], period: &'a [T], i: usize) -> &'a T {
    if i < pre.len() {
        &pre[i]
    } else {
        &period[(i - pre.len()) % period.len()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shrinks_period_and_preperiod() {
        assert_eq!(minimize(vec![1, 2], vec![1, 2, 1, 2]), (vec![], vec![1, 2]));
        assert_eq!(minimize(vec![0, 1, 1], vec![0, 0, 1, 1]), (vec![], vec![0, 1, 1, 0]));
        assert_eq!(minimize(vec![5], vec![3, 3, 3]), (vec![5], vec![3]));
        let mut p = vec![1, 0, 1, 0, 1, 0];
        shrink_period(&mut p);
        assert_eq!(p, vec![1, 0]);
    }

    #[test]
    fn same_sequence_after_minimizing() {
        let (pre, per) = (vec![4, 1, 2, 3], vec![1, 2, 3, 1, 2, 3]);
        let (a, b) = minimize(pre.clone(), per.clone());
        for i in 0..40 {
            assert_eq!(nth(&pre, &per, i), nth(&a, &b, i));
        }
        assert_eq!((a.len(), b.len()), (1, 3));
    }
}
