use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::sweep::RateTable;

/// Which part of the m-grid a slope is fitted on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Window {
    /// The upper half of the grid, at least four points.
    #[default]
    UpperHalf,
    All,
    Range {
        lo: usize,
        hi: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in `log2` units.
    pub residual: f64,
    pub points: usize,
}

/// Least-squares line through `(log2 m, log2 error)`; zero errors are skipped.
pub fn fit_points(points: &[(usize, f64)], window: Window) -> Result<SlopeFit> {
    let mut pts: Vec<(usize, f64)> = points.to_vec();
    pts.sort_by_key(|p| p.0);
    let pts: Vec<(usize, f64)> = match window {
        Window::All => pts,
        Window::Range { lo, hi } => pts.into_iter().filter(|p| p.0 >= lo && p.0 <= hi).collect(),
        Window::UpperHalf => {
            let keep = pts.len().div_ceil(2).max(4).min(pts.len());
            pts[pts.len() - keep..].to_vec()
        }
    };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (m, e) in pts {
        if e == 0.0 {
            log::warn!("m={m}: zero error excluded from the slope fit");
            continue;
        }
        if !(e > 0.0) || !e.is_finite() || m == 0 {
            return Err(Error::invalid(format!("m={m}: error {e} cannot be fitted")));
        }
        xs.push((m as f64).log2());
        ys.push(e.log2());
    }
    if xs.len() < 4 {
        return Err(Error::invalid(format!(
            "slope fit needs at least 4 points, got {}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("slope fit needs distinct m values"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(SlopeFit {
        slope,
        intercept,
        residual: (rss / n).sqrt(),
        points: xs.len(),
    })
}

/// Slope of the max-over-seeds error curve of a table.
pub fn fit_slope(table: &RateTable, window: Window) -> Result<SlopeFit> {
    fit_points(&table.aggregate_max(), window)
}
