use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::DyadicShell;

/// Score of one dyadic block: a norm-like value and a positive weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockScore {
    pub shell: DyadicShell,
    pub value: f64,
    pub weight: f64,
}

impl BlockScore {
    pub fn new(shell: DyadicShell, value: f64, weight: f64) -> Result<Self> {
        if !(value >= 0.0) || !(weight > 0.0) {
            return Err(Error::invalid(format!(
                "block score needs value >= 0 and weight > 0, got {value}, {weight}"
            )));
        }
        Ok(Self {
            shell,
            value,
            weight,
        })
    }

    pub fn unweighted(shell: DyadicShell, value: f64) -> Result<Self> {
        Self::new(shell, value, 1.0)
    }
}

/// Decreasing value, then lexicographic shell order.
fn ranked(scores: &[BlockScore]) -> Vec<&BlockScore> {
    let mut v: Vec<&BlockScore> = scores.iter().collect();
    v.sort_by(|a, b| {
        b.value
            .total_cmp(&a.value)
            .then_with(|| a.shell.cmp(&b.shell))
    });
    v
}

/// The `m` shells with largest value (all of them when `m` exceeds the list).
pub fn top_blocks(scores: &[BlockScore], m: usize) -> Vec<DyadicShell> {
    let mut out: Vec<DyadicShell> = ranked(scores)
        .into_iter()
        .take(m)
        .map(|s| s.shell.clone())
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSelection {
    pub shells: Vec<DyadicShell>,
    pub total_weight: f64,
    /// The whole list was taken without reaching the budget.
    pub exhausted: bool,
}

/// Takes shells in decreasing value until the accumulated weight first reaches `budget`.
pub fn weighted_budget_select(scores: &[BlockScore], budget: f64) -> Result<WeightedSelection> {
    if !(budget >= 0.0) {
        return Err(Error::invalid(format!(
            "budget must be nonnegative, got {budget}"
        )));
    }
    let mut shells = Vec::new();
    let mut total = 0.0;
    for s in ranked(scores) {
        if total >= budget {
            break;
        }
        total += s.weight;
        shells.push(s.shell.clone());
    }
    let exhausted = total < budget;
    shells.sort();
    Ok(WeightedSelection {
        shells,
        total_weight: total,
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(l: u32, v: f64, w: f64) -> BlockScore {
        BlockScore::new(DyadicShell::new(vec![l]), v, w).unwrap()
    }

    #[test]
    fn top_blocks_examples() {
        let s = vec![sc(1, 4.0, 1.0), sc(2, 2.0, 1.0), sc(3, 1.0, 1.0)];
        assert_eq!(
            top_blocks(&s, 2),
            vec![DyadicShell::new(vec![1]), DyadicShell::new(vec![2])]
        );
        assert!(top_blocks(&s, 0).is_empty());
        assert_eq!(top_blocks(&s, 10).len(), 3);
        let tied = vec![sc(5, 1.0, 1.0), sc(3, 1.0, 1.0), sc(4, 1.0, 1.0)];
        assert_eq!(
            top_blocks(&tied, 2),
            vec![DyadicShell::new(vec![3]), DyadicShell::new(vec![4])]
        );
    }

    #[test]
    fn weighted_examples() {
        let s = vec![sc(1, 5.0, 2.0), sc(2, 4.0, 2.0), sc(3, 1.0, 2.0)];
        let sel = weighted_budget_select(&s, 4.0).unwrap();
        assert_eq!(
            sel.shells,
            vec![DyadicShell::new(vec![1]), DyadicShell::new(vec![2])]
        );
        assert!(!sel.exhausted);
        assert!(weighted_budget_select(&s, 0.0).unwrap().shells.is_empty());
        let all = weighted_budget_select(&s, 100.0).unwrap();
        assert!(all.exhausted && all.shells.len() == 3);
        assert!(BlockScore::new(DyadicShell::new(vec![1]), 1.0, 0.0).is_err());
    }
}
