use crate::error::{Error, Result};

fn check_exponents(q: f64, p: f64) -> Result<()> {
    if !(1.0 <= q && q <= p) {
        return Err(Error::invalid(format!(
            "need 1 <= q <= p, got q={q}, p={p}"
        )));
    }
    Ok(())
}

fn check_sorted(a: &[f64]) -> Result<()> {
    if a.iter().any(|&x| !(x >= 0.0)) {
        return Err(Error::invalid("sequence must be nonnegative"));
    }
    if a.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid("sequence must be nonincreasing"));
    }
    Ok(())
}

/// `(sum_{k>=m} a_k^p w_k)^{1/p}` with 1-based `m`; the weighted maximum for `p = inf`.
fn tail(a: &[f64], w: &[f64], m: usize, p: f64) -> f64 {
    let it = a.iter().zip(w).skip(m - 1);
    if p.is_infinite() {
        return it.fold(0.0, |acc, (&x, _)| acc.max(x));
    }
    it.map(|(&x, &wk)| x.powf(p) * wk)
        .sum::<f64>()
        .powf(1.0 / p)
}

fn weighted_bounds(a: &[f64], w: &[f64], q: f64, p: f64, m: usize) -> Result<(f64, f64)> {
    check_exponents(q, p)?;
    check_sorted(a)?;
    if a.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: w.len(),
        });
    }
    if w.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::invalid("weights must be positive"));
    }
    if m < 1 || m >= a.len() {
        return Err(Error::invalid(format!(
            "need 1 <= m < {}, got {m}",
            a.len()
        )));
    }
    let beta = 1.0 / q - if p.is_infinite() { 0.0 } else { 1.0 / p };
    let lhs = tail(a, w, m, p);
    let head: f64 = w[..m].iter().sum();
    let total: f64 = a
        .iter()
        .zip(w)
        .map(|(&x, &wk)| x.powf(q) * wk)
        .sum::<f64>()
        .powf(1.0 / q);
    Ok((lhs, head.powf(-beta) * total))
}

/// Both sides of `(sum_{k>=m} a_k^p)^{1/p} <= m^{-beta} (sum_k a_k^q)^{1/q}` for nonincreasing `a`.
pub fn rearrangement_bound_lqp(a: &[f64], q: f64, p: f64, m: usize) -> Result<(f64, f64)> {
    weighted_bounds(a, &vec![1.0; a.len()], q, p, m)
}

/// Weighted form: `(sum_{k>=m} a_k^p w_k)^{1/p} <= (sum_{k<=m} w_k)^{-beta} (sum_k a_k^q w_k)^{1/q}`.
pub fn rearrangement_bound_lqpw(
    a: &[f64],
    w: &[f64],
    q: f64,
    p: f64,
    m: usize,
) -> Result<(f64, f64)> {
    weighted_bounds(a, w, q, p, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_examples() {
        let (l, r) = rearrangement_bound_lqp(&[4.0, 2.0, 1.0], 1.0, 2.0, 2).unwrap();
        assert!((l - 5f64.sqrt()).abs() < 1e-14);
        assert!((r - 7.0 / 2f64.sqrt()).abs() < 1e-14);
        let (l, r) = rearrangement_bound_lqpw(&[2.0, 1.0], &[3.0, 1.0], 1.0, 2.0, 1).unwrap();
        assert!((l - 13f64.sqrt()).abs() < 1e-14);
        assert!((r - 7.0 / 3f64.sqrt()).abs() < 1e-14);
        let (l, r) = rearrangement_bound_lqp(&[3.0, 1.0, 0.5], 1.5, f64::INFINITY, 1).unwrap();
        assert_eq!(l, 3.0);
        assert!(l <= r);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(rearrangement_bound_lqp(&[1.0, 2.0, 0.5], 1.0, 2.0, 1).is_err());
        assert!(rearrangement_bound_lqp(&[2.0, 1.0], 3.0, 2.0, 1).is_err());
        assert!(rearrangement_bound_lqp(&[2.0, 1.0], 1.0, 2.0, 2).is_err());
        assert!(rearrangement_bound_lqpw(&[2.0, 1.0], &[1.0, 0.0], 1.0, 2.0, 1).is_err());
    }

    #[test]
    fn unit_weights_reduce() {
        let a = [5.0, 3.0, 3.0, 1.0, 0.2];
        assert_eq!(
            rearrangement_bound_lqp(&a, 1.3, 3.0, 2).unwrap(),
            rearrangement_bound_lqpw(&a, &[1.0; 5], 1.3, 3.0, 2).unwrap()
        );
    }
}
