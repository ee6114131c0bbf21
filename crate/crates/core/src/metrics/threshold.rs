/// Minimizes `cands[k] + h(k)` over `k`, where `cands` is sorted ascending
/// and `h` is nonincreasing in `k`.
///
/// Intervals whose endpoints share the same `h` value, or whose best
/// conceivable value `cands[lo + 1] + h(hi)` cannot beat the incumbent, are
/// skipped, so the number of `h` evaluations grows with the number of
/// distinct values of `h` rather than with `cands.len()`. Ties go to the
/// smallest index. Returns `(index, cands[index] + h(index), h(index))`.
pub(crate) fn minimize_sum<F>(cands: &[f64], mut h: F) -> (usize, f64, f64)
where
    F: FnMut(usize) -> f64,
{
    assert!(!cands.is_empty(), "no candidates");
    let m = cands.len();
    let mut evals: Vec<Option<f64>> = vec![None; m];
    let mut eval = |k: usize, evals: &mut Vec<Option<f64>>| -> f64 {
        if let Some(v) = evals[k] {
            return v;
        }
        let v = h(k);
        evals[k] = Some(v);
        v
    };
    let h0 = eval(0, &mut evals);
    let mut best = (cands[0] + h0, 0usize);
    if m == 1 {
        return (0, best.0, h0);
    }
    let hm = eval(m - 1, &mut evals);
    consider(&mut best, cands[m - 1] + hm, m - 1);
    let mut stack = vec![(0usize, m - 1, h0, hm)];
    while let Some((lo, hi, hlo, hhi)) = stack.pop() {
        if hi - lo <= 1 || hlo == hhi || cands[lo + 1] + hhi > best.0 {
            continue;
        }
        let mid = lo + (hi - lo) / 2;
        let hmid = eval(mid, &mut evals);
        consider(&mut best, cands[mid] + hmid, mid);
        stack.push((mid, hi, hmid, hhi));
        stack.push((lo, mid, hlo, hmid));
    }
    let hb = evals[best.1].expect("best index was evaluated");
    (best.1, best.0, hb)
}

fn consider(best: &mut (f64, usize), value: f64, k: usize) {
    if value < best.0 || (value == best.0 && k < best.1) {
        *best = (value, k);
    }
}

/// Sorted, deduplicated copy of `values`.
pub(crate) fn sorted_unique(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(c: &[f64], h: &[f64]) -> (usize, f64) {
        let mut best = (0, c[0] + h[0]);
        for k in 1..c.len() {
            if c[k] + h[k] < best.1 {
                best = (k, c[k] + h[k]);
            }
        }
        best
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(raw_c in proptest::collection::vec(0u32..50, 1..60),
                                   raw_h in proptest::collection::vec(0u32..6, 1..60)) {
            let c: Vec<f64> = sorted_unique(raw_c.iter().map(|&x| x as f64 / 10.0).collect());
            let mut h: Vec<f64> = (0..c.len()).map(|k| raw_h[k % raw_h.len()] as f64 / 4.0).collect();
            h.sort_by(|a, b| b.total_cmp(a));
            let (k, v, hk) = minimize_sum(&c, |k| h[k]);
            let (bk, bv) = brute(&c, &h);
            prop_assert_eq!(v, bv);
            prop_assert_eq!(k, bk);
            prop_assert_eq!(hk, h[k]);
        }
    }

    #[test]
    fn evaluations_track_distinct_values() {
        let c: Vec<f64> = (0..1000).map(|k| k as f64 * 1e-3).collect();
        let mut calls = 0;
        let (k, v, _) = minimize_sum(&c, |k| {
            calls += 1;
            if k < 500 {
                1.0
            } else {
                0.0
            }
        });
        assert_eq!((k, v), (500, 0.5));
        assert!(calls < 40, "{calls} evaluations");
    }
}
