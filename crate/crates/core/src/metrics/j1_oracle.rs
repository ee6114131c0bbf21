use super::j1::j1_objective;
use super::{DistanceReport, GroundMetric, Penalty, Witness};
use crate::paths::{CadlagPath, TimeChange};
use crate::{Error, Result};

/// Largest total number of interior jumps [`j1_oracle`] accepts.
pub const J1_ORACLE_MAX_JUMPS: usize = 8;

/// Brute-force J1 for small step paths.
///
/// Enumerates every monotone partial matching between the jump times of
/// `g` and of `f`, builds the piecewise-linear time change through the
/// matched pairs, applies it to `f` and measures the objective directly.
/// The first matching in lexicographic order wins ties, so the empty
/// matching (the identity) is preferred.
pub fn j1_oracle(
    f: &CadlagPath,
    g: &CadlagPath,
    penalty: Penalty,
    metric: &GroundMetric,
) -> Result<DistanceReport> {
    f.check_compatible(g)?;
    metric.check_dim(f.dim())?;
    if !(f.is_step() && g.is_step()) {
        return Err(Error::InvalidParameter(
            "the J1 oracle only takes step paths".into(),
        ));
    }
    let fa = f.interior_jump_times();
    let gb = g.interior_jump_times();
    if fa.len() + gb.len() > J1_ORACLE_MAX_JUMPS {
        return Err(Error::SizeLimit(format!(
            "{} jumps exceed the oracle limit of {J1_ORACLE_MAX_JUMPS}",
            fa.len() + gb.len()
        )));
    }
    let horizon = f.horizon();
    let mut best: Option<(f64, TimeChange)> = None;
    let mut matched: Vec<(f64, f64)> = Vec::new();
    enumerate(&gb, &fa, 0, 0, &mut matched, &mut |pairs| {
        let mut nodes = vec![(0.0, 0.0)];
        nodes.extend_from_slice(pairs);
        nodes.push((horizon, horizon));
        let lambda = TimeChange::new(horizon, nodes)?;
        let v = j1_objective(f, g, &lambda, penalty, metric)?;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, lambda));
        }
        Ok(())
    })?;
    let (value, lambda) = best.expect("the empty matching is always enumerated");
    Ok(DistanceReport::exact(value, Witness::TimeChange { lambda }))
}

/// Calls `visit` on every strictly increasing matching extending `matched`
/// with pairs from `gb[i..] x fa[j..]`.
fn enumerate<F>(
    gb: &[f64],
    fa: &[f64],
    i: usize,
    j: usize,
    matched: &mut Vec<(f64, f64)>,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[(f64, f64)]) -> Result<()>,
{
    visit(matched)?;
    for ii in i..gb.len() {
        for jj in j..fa.len() {
            matched.push((gb[ii], fa[jj]));
            enumerate(gb, fa, ii + 1, jj + 1, matched, visit)?;
            matched.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_matchings() {
        let mut count = 0;
        enumerate(
            &[1.0, 2.0, 3.0],
            &[1.0, 2.0],
            0,
            0,
            &mut Vec::new(),
            &mut |_| {
                count += 1;
                Ok(())
            },
        )
        .unwrap();
        // sum_k C(3,k) C(2,k) = 1 + 6 + 3
        assert_eq!(count, 10);
    }

    #[test]
    fn shared_jump_needs_no_time_change() {
        let f = CadlagPath::step(1.0, &[0.0, 0.5], &[0.0, 1.0]).unwrap();
        let g = CadlagPath::step(1.0, &[0.0, 0.5], &[0.0, 2.0]).unwrap();
        let r = j1_oracle(&f, &g, Penalty::Absolute, &GroundMetric::Abs).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.time_change().unwrap().is_identity());
    }

    #[test]
    fn far_jumps_are_not_matched() {
        let f = CadlagPath::indicator(1.0, 0.1, 1.0).unwrap();
        let g = CadlagPath::step(1.0, &[0.0, 0.9], &[0.0, 0.2]).unwrap();
        let r = j1_oracle(&f, &g, Penalty::Absolute, &GroundMetric::Abs).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.time_change().unwrap().is_identity());
    }

    #[test]
    fn rejects_large_or_linear_inputs() {
        let times: Vec<f64> = (0..6).map(|k| k as f64 / 6.0).collect();
        let vals: Vec<f64> = (0..6).map(|k| (k % 2) as f64).collect();
        let f = CadlagPath::step(1.0, &times, &vals).unwrap();
        assert!(matches!(
            j1_oracle(&f, &f, Penalty::Absolute, &GroundMetric::Abs),
            Err(Error::SizeLimit(_))
        ));
        let l = CadlagPath::piecewise_linear(1.0, &[0.0, 1.0], &[0.0, 1.0], &[]).unwrap();
        assert!(j1_oracle(&l, &l, Penalty::Absolute, &GroundMetric::Abs).is_err());
    }
}
