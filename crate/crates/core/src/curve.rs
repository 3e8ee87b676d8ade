use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Crb,
    ZzbExact,
    ZzbQcb,
    AsymptoteLow,
    AsymptoteHigh,
    Advantage,
    ContourRow,
}

/// A sampled bound or figure-of-merit curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCurve {
    pub kind: CurveKind,
    pub abscissa: Vec<f64>,
    pub abscissa_unit: String,
    pub ordinate: Vec<f64>,
    pub ordinate_unit: String,
    /// Free-form echo of the parameters that produced the curve.
    pub metadata: BTreeMap<String, String>,
}

impl BoundCurve {
    pub fn new(
        kind: CurveKind,
        abscissa: Vec<f64>,
        abscissa_unit: impl Into<String>,
        ordinate: Vec<f64>,
        ordinate_unit: impl Into<String>,
    ) -> Result<Self> {
        if abscissa.len() != ordinate.len() {
            return Err(Error::InvalidParameter {
                name: "curve length",
                value: ordinate.len() as f64,
                detail: "abscissa and ordinate lengths differ",
            });
        }
        if abscissa.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter {
                name: "abscissa",
                value: f64::NAN,
                detail: "abscissa must be strictly increasing",
            });
        }
        if let Some(bad) = ordinate.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "ordinate",
                value: *bad,
                detail: "ordinate values must be finite",
            });
        }
        Ok(BoundCurve {
            kind,
            abscissa,
            abscissa_unit: abscissa_unit.into(),
            ordinate,
            ordinate_unit: ordinate_unit.into(),
            metadata: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.metadata.insert(key.into(), value.to_string());
        self
    }

    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }

    /// First abscissa, scanning upward, at which `self - reference` falls to
    /// `gap`, linearly interpolated between samples.
    pub fn first_departure(&self, reference: &BoundCurve, gap: f64) -> Option<f64> {
        first_crossing(&self.abscissa, &self.ordinate, &reference.ordinate, gap)
    }
}

/// First `x` at which `a - b` drops to `gap`, linearly interpolated.
pub fn first_crossing(x: &[f64], a: &[f64], b: &[f64], gap: f64) -> Option<f64> {
    let d: Vec<f64> = a.iter().zip(b).map(|(p, q)| p - q - gap).collect();
    (1..x.len().min(d.len())).find_map(|i| {
        if d[i - 1] > 0.0 && d[i] <= 0.0 {
            let t = d[i - 1] / (d[i - 1] - d[i]);
            Some(x[i - 1] + t * (x[i] - x[i - 1]))
        } else {
            None
        }
    })
}

pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

pub fn logspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    linspace(start.ln(), stop.ln(), points)
        .into_iter()
        .map(f64::exp)
        .collect()
}

/// `10 log10(x)`, for power-like ratios.
pub fn db10(x: f64) -> f64 {
    10.0 * x.log10()
}

/// `20 log10(x)`, for amplitude-like ratios.
pub fn db20(x: f64) -> f64 {
    20.0 * x.log10()
}

pub fn from_db10(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
