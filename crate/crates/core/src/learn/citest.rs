use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::Dataset;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::model::DependencyModel;

/// Outcome of a G² conditional-independence test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CiDecision {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub independent: bool,
    /// No degrees of freedom were left (constant variables or empty strata);
    /// reported as independent.
    pub degenerate: bool,
}

impl CiDecision {
    fn degenerate() -> Self {
        CiDecision {
            statistic: 0.0,
            dof: 0,
            p_value: 1.0,
            independent: true,
            degenerate: true,
        }
    }
}

/// Likelihood-ratio test of `x ⊥ y | z` on categorical data.
///
/// `G² = 2 Σ o ln(o / e)` over every stratum of `z`, with zero cells
/// contributing nothing. Each stratum adds `(r'_x - 1)(r'_y - 1)` degrees of
/// freedom, where `r'` counts the levels with a non-zero marginal in that
/// stratum; with no empty margins this is `(r_x - 1)(r_y - 1) Π r_z`.
pub fn g2_test(data: &Dataset, x: usize, y: usize, z: VertexSet, alpha: f64) -> Result<CiDecision> {
    let n = data.n_vars();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if x >= n || y >= n || x == y {
        return Err(Error::InvalidArgument(format!(
            "need two distinct variables below {n}, got {x} and {y}"
        )));
    }
    if z.contains(x) || z.contains(y) || z.max().is_some_and(|m| m >= n) {
        return Err(Error::InvalidArgument(format!(
            "conditioning set {z} must exclude {x} and {y} and stay below {n}"
        )));
    }
    if data.n_rows() == 0 {
        return Err(Error::EmptyDataset);
    }

    let (rx, ry) = (data.arity(x), data.arity(y));
    let (cx, cy) = (data.column(x), data.column(y));
    let zcols: Vec<(&[u32], u64)> = z
        .iter()
        .map(|v| (data.column(v), data.arity(v) as u64))
        .collect();
    let mut radix = 1u64;
    for &(_, r) in &zcols {
        radix = radix
            .checked_mul(r)
            .ok_or_else(|| Error::InvalidArgument(format!("conditioning set {z} has too many configurations")))?;
    }

    // ordered map keeps the floating-point summation order fixed
    let mut strata: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for row in 0..data.n_rows() {
        let mut key = 0u64;
        for &(col, r) in zcols.iter().rev() {
            key = key * r + col[row] as u64;
        }
        strata.entry(key).or_insert_with(|| vec![0; rx * ry])[cx[row] as usize * ry + cy[row] as usize] += 1;
    }

    let mut statistic = 0.0;
    let mut dof = 0usize;
    let mut row_tot = vec![0u64; rx];
    let mut col_tot = vec![0u64; ry];
    for table in strata.values() {
        row_tot.iter_mut().for_each(|t| *t = 0);
        col_tot.iter_mut().for_each(|t| *t = 0);
        let mut total = 0u64;
        for i in 0..rx {
            for j in 0..ry {
                let o = table[i * ry + j] as u64;
                row_tot[i] += o;
                col_tot[j] += o;
                total += o;
            }
        }
        let live_rows = row_tot.iter().filter(|&&t| t > 0).count();
        let live_cols = col_tot.iter().filter(|&&t| t > 0).count();
        dof += live_rows.saturating_sub(1) * live_cols.saturating_sub(1);
        for i in 0..rx {
            for j in 0..ry {
                let o = table[i * ry + j] as f64;
                if o > 0.0 {
                    let e = row_tot[i] as f64 * col_tot[j] as f64 / total as f64;
                    statistic += o * (o / e).ln();
                }
            }
        }
    }
    if dof == 0 {
        return Ok(CiDecision::degenerate());
    }
    // rounding can leave a tiny negative sum when observed equals expected
    let statistic = (2.0 * statistic).max(0.0);
    let p_value = ChiSquared::new(dof as f64)
        .expect("positive degrees of freedom")
        .sf(statistic);
    Ok(CiDecision {
        statistic,
        dof,
        p_value,
        independent: p_value > alpha,
        degenerate: false,
    })
}

/// Anything that can answer `I(a, b | cond)` for the learner.
pub trait CiSource {
    fn n(&self) -> usize;

    fn independent(&self, a: usize, b: usize, cond: VertexSet) -> Result<bool>;
}

/// Exact answers from a dependency model.
pub struct OracleCi<M>(pub M);

impl<M: DependencyModel> CiSource for OracleCi<M> {
    fn n(&self) -> usize {
        self.0.n()
    }

    fn independent(&self, a: usize, b: usize, cond: VertexSet) -> Result<bool> {
        Ok(self.0.query_pair(a, b, cond))
    }
}

/// G² tests on a dataset at a fixed significance level.
pub struct DataCi<'a> {
    pub data: &'a Dataset,
    pub alpha: f64,
}

impl<'a> DataCi<'a> {
    pub fn new(data: &'a Dataset, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if data.n_rows() == 0 {
            return Err(Error::EmptyDataset);
        }
        if data.n_vars() > crate::graph::MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "learning",
                n: data.n_vars(),
                cap: crate::graph::MAX_VERTICES,
            });
        }
        Ok(DataCi { data, alpha })
    }
}

impl CiSource for DataCi<'_> {
    fn n(&self) -> usize {
        self.data.n_vars()
    }

    fn independent(&self, a: usize, b: usize, cond: VertexSet) -> Result<bool> {
        Ok(g2_test(self.data, a, b, cond, self.alpha)?.independent)
    }
}
