use crate::error::{Error, Result};

/// Sampled giant-component curve together with its materialized step function.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessCurve {
    /// Sample positions `p_1 < ... < p_X`, numbers of removed nodes.
    pub positions: Vec<usize>,
    /// Giant-component fraction observed at each position.
    pub gcs: Vec<f64>,
    /// Step function over `Q = 0..=N`.
    pub materialized: Vec<f64>,
    pub r: f64,
}

impl RobustnessCurve {
    pub fn from_samples(
        positions: Vec<usize>,
        gcs: Vec<f64>,
        node_count: usize,
        intact_fraction: f64,
    ) -> Result<Self> {
        let materialized = materialize_step(&positions, &gcs, node_count, intact_fraction)?;
        let r = compute_r(&materialized, node_count);
        Ok(Self {
            positions,
            gcs,
            materialized,
            r,
        })
    }

    /// Wraps an exact per-`Q` curve of length `N + 1`, sampling every position.
    pub fn from_dense(curve: Vec<f64>) -> Self {
        let n = curve.len().saturating_sub(1);
        let r = compute_r(&curve, n);
        Self {
            positions: (1..=n).collect(),
            gcs: curve[1..].to_vec(),
            materialized: curve,
            r,
        }
    }

    pub fn node_count(&self) -> usize {
        self.materialized.len() - 1
    }
}

/// Step function `out[Q] = gcs_i` for the largest `i` with `p_i <= Q`, and
/// `intact_fraction` before the first sample.
pub fn materialize_step(
    positions: &[usize],
    gcs: &[f64],
    node_count: usize,
    intact_fraction: f64,
) -> Result<Vec<f64>> {
    if positions.len() != gcs.len() {
        return Err(Error::LengthMismatch {
            expected: positions.len(),
            actual: gcs.len(),
        });
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "sample positions must be strictly increasing",
        ));
    }
    if positions.last().is_some_and(|&p| p > node_count) {
        return Err(Error::invalid("sample position beyond the node count"));
    }
    let mut out = vec![intact_fraction; node_count + 1];
    for (i, (&p, &value)) in positions.iter().zip(gcs).enumerate() {
        let end = positions.get(i + 1).copied().unwrap_or(node_count + 1);
        for slot in &mut out[p.max(1)..end] {
            *slot = value;
        }
    }
    Ok(out)
}

/// Pointwise minimum of two materialized curves.
pub fn merge_min(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.min(*y)).collect())
}

/// `R = (1/N) * sum_{Q=1..N} materialized[Q]`.
pub fn compute_r(materialized: &[f64], node_count: usize) -> f64 {
    assert_eq!(
        materialized.len(),
        node_count + 1,
        "materialized curve must cover Q = 0..=N"
    );
    if node_count == 0 {
        return 0.0;
    }
    materialized[1..].iter().sum::<f64>() / node_count as f64
}
