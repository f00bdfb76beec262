//! Frequency-set geometry: dyadic shells, step hyperbolic crosses `Q_n`,
//! hyperbolic crosses `Gamma(N)` and boxes `Pi(N, d)`.

use super::index::{DyadicShell, FrequencyIndex};

/// All `s in N_0^d` with `||s||_1 = n`, in lexicographic order.
pub fn compositions(n: u32, d: usize) -> Vec<DyadicShell> {
    fn rec(rem: u32, axis: usize, d: usize, cur: &mut Vec<u32>, out: &mut Vec<DyadicShell>) {
        if axis + 1 == d {
            cur.push(rem);
            out.push(DyadicShell::new(cur.clone()));
            cur.pop();
            return;
        }
        for v in 0..=rem {
            cur.push(v);
            rec(rem - v, axis + 1, d, cur, out);
            cur.pop();
        }
    }
    assert!(d >= 1, "dimension must be positive");
    let mut out = Vec::new();
    rec(n, 0, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// All shells with `||s||_1 <= n`, level by level.
pub fn shells_up_to(n: u32, d: usize) -> Vec<DyadicShell> {
    (0..=n).flat_map(|l| compositions(l, d)).collect()
}

/// `rho(s)`: frequencies with `[2^{s_j-1}] <= |k_j| < 2^{s_j}` on every axis,
/// sorted lexicographically.
pub fn shell_frequencies(s: &DyadicShell) -> Vec<FrequencyIndex> {
    let axes: Vec<Vec<i64>> = (0..s.dim())
        .map(|j| {
            let (lo, hi) = s.axis_range(j);
            if lo == 0 {
                vec![0]
            } else {
                (-hi + 1..=-lo).chain(lo..hi).collect()
            }
        })
        .collect();
    cartesian(&axes)
}

fn cartesian(axes: &[Vec<i64>]) -> Vec<FrequencyIndex> {
    let total: usize = axes.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; axes.len()];
    if total == 0 {
        return out;
    }
    loop {
        out.push(FrequencyIndex::from(
            idx.iter().zip(axes).map(|(&i, a)| a[i]).collect::<Vec<_>>(),
        ));
        let mut j = axes.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < axes[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// `Delta Q_l = Q_l \ Q_{l-1}`: the union of shells with `||s||_1 = l`.
pub fn shell_layer(l: u32, d: usize) -> Vec<FrequencyIndex> {
    let mut out: Vec<FrequencyIndex> = compositions(l, d)
        .iter()
        .flat_map(shell_frequencies)
        .collect();
    out.sort();
    out
}

/// Step hyperbolic cross `Q_n`, sorted lexicographically.
pub fn step_cross(n: u32, d: usize) -> Vec<FrequencyIndex> {
    let mut out: Vec<FrequencyIndex> = (0..=n).flat_map(|l| shell_layer(l, d)).collect();
    out.sort();
    out
}

/// `|Delta Q_l| = C(l+d-1, d-1) 2^l`, without enumeration.
pub fn shell_layer_size(l: u32, d: usize) -> u128 {
    binomial(l as u128 + d as u128 - 1, d as u128 - 1) << l
}

/// `|Q_n|`, without enumeration.
pub fn step_cross_size(n: u32, d: usize) -> u128 {
    (0..=n).map(|l| shell_layer_size(l, d)).sum()
}

pub fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Hyperbolic cross `Gamma(N) = { k : prod_j max(|k_j|,1) <= N }`, sorted.
pub fn full_cross(big_n: u64, d: usize) -> Vec<FrequencyIndex> {
    fn rec(budget: u64, axis: usize, d: usize, cur: &mut Vec<i64>, out: &mut Vec<FrequencyIndex>) {
        if axis == d {
            out.push(FrequencyIndex::new(cur));
            return;
        }
        let b = budget as i64;
        for k in -b..=b {
            cur.push(k);
            rec(budget / (k.unsigned_abs().max(1)), axis + 1, d, cur, out);
            cur.pop();
        }
    }
    assert!(d >= 1, "dimension must be positive");
    let mut out = Vec::new();
    if big_n == 0 {
        return out;
    }
    rec(big_n, 0, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// `theta(N) = prod_j (2 N_j + 1)`, the dimension of `T(N, d)`.
pub fn box_dim(nvec: &[u64]) -> u128 {
    nvec.iter().map(|&n| 2 * n as u128 + 1).product()
}

/// All frequencies of the box `Pi(N, d)`, sorted.
pub fn box_frequencies(nvec: &[u64]) -> Vec<FrequencyIndex> {
    let axes: Vec<Vec<i64>> = nvec
        .iter()
        .map(|&n| (-(n as i64)..=n as i64).collect())
        .collect();
    cartesian(&axes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute_shell(s: &DyadicShell, bound: i64) -> BTreeSet<FrequencyIndex> {
        let axes: Vec<Vec<i64>> = (0..s.dim()).map(|_| (-bound..=bound).collect()).collect();
        cartesian(&axes)
            .into_iter()
            .filter(|k| {
                k.coords().iter().zip(s.levels()).all(|(&c, &sj)| {
                    let lo = (2f64.powi(sj as i32 - 1)).floor() as i64;
                    lo <= c.abs() && c.abs() < (1i64 << sj)
                })
            })
            .collect()
    }

    #[test]
    fn shell_examples() {
        assert_eq!(
            shell_frequencies(&DyadicShell::new(vec![0])),
            vec![FrequencyIndex::new(&[0])]
        );
        let s2: Vec<i64> = shell_frequencies(&DyadicShell::new(vec![2]))
            .iter()
            .map(|k| k.coords()[0])
            .collect();
        assert_eq!(s2, vec![-3, -2, 2, 3]);
        let s11 = shell_frequencies(&DyadicShell::new(vec![1, 1]));
        assert_eq!(s11.len(), 4);
        let set: BTreeSet<_> = s11.into_iter().collect();
        assert_eq!(set, brute_shell(&DyadicShell::new(vec![1, 1]), 4));
    }

    #[test]
    fn shells_match_brute_force() {
        for d in 1..=2 {
            for s in shells_up_to(5, d) {
                let got: BTreeSet<_> = shell_frequencies(&s).into_iter().collect();
                assert_eq!(got, brute_shell(&s, 40), "{s:?}");
                assert_eq!(got.len() as u64, s.cardinality());
            }
        }
    }

    #[test]
    fn step_cross_examples() {
        assert_eq!(step_cross(0, 2), vec![FrequencyIndex::new(&[0, 0])]);
        let q2: Vec<i64> = step_cross(2, 1).iter().map(|k| k.coords()[0]).collect();
        assert_eq!(q2, (-3..=3).collect::<Vec<_>>());
        for d in 1..=3 {
            for n in 0..6 {
                assert_eq!(step_cross(n, d).len() as u128, step_cross_size(n, d));
                assert_eq!(shell_layer(n, d).len() as u128, shell_layer_size(n, d));
            }
        }
    }

    #[test]
    fn step_cross_growth_is_2n_n_dm1() {
        let ratios: Vec<f64> = (4..=12)
            .map(|n| step_cross_size(n, 2) as f64 / (2f64.powi(n as i32) * n as f64))
            .collect();
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(0.0, f64::max);
        assert!(hi / lo < 2.0, "{ratios:?}");
    }

    #[test]
    fn full_cross_examples() {
        let g1 = full_cross(1, 2);
        assert_eq!(g1.len(), 9);
        assert_eq!(full_cross(2, 2).len(), 21);
        let g3: Vec<i64> = full_cross(3, 1).iter().map(|k| k.coords()[0]).collect();
        assert_eq!(g3, (-3..=3).collect::<Vec<_>>());
        // brute-force oracle
        for d in 1..=3usize {
            for n in 1..=12u64 {
                let b = n as i64;
                let axes: Vec<Vec<i64>> = (0..d).map(|_| (-b..=b).collect()).collect();
                let brute: Vec<_> = cartesian(&axes)
                    .into_iter()
                    .filter(|k| k.cross_weight() <= n as u128)
                    .collect();
                assert_eq!(full_cross(n, d), brute);
            }
        }
    }

    #[test]
    fn box_dim_examples() {
        assert_eq!(box_dim(&[2, 3]), 35);
        assert_eq!(box_dim(&[0, 0, 0]), 1);
        assert_eq!(box_dim(&[4]), 9);
        assert_eq!(box_frequencies(&[2, 3]).len(), 35);
    }

    #[test]
    fn compositions_lexicographic() {
        let c = compositions(2, 2);
        let lv: Vec<Vec<u32>> = c.iter().map(|s| s.levels().to_vec()).collect();
        assert_eq!(lv, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(4, 3).len(), 15);
    }
}
