//! Statistical measures of risk for a discrete random variable.
//!
//! Every measure comes in a probability-weighted form, computed from the
//! values and their probabilities, and, where one exists, an estimator form
//! computed from the values alone with the `n - 1` denominator.
//!
//! The hinge `(t)₊ = max(t, 0)` is squared (or raised to `p`) inside the
//! expectation: `E[((T - X)₊)²]`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

/// Values `x_i` with probabilities `p_i` (uniform when omitted).
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    probabilities: Option<Vec<f64>>,
}

impl Sample {
    /// Sample with uniform probabilities `1/n`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        Ok(Sample { values, probabilities: None })
    }

    /// Sample with explicit probabilities; they must be non-negative and sum to 1.
    pub fn with_probabilities(values: Vec<f64>, probabilities: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        if probabilities.len() != values.len() {
            return Err(Error::InvalidSample(format!(
                "{} probabilities for {} values",
                probabilities.len(),
                values.len()
            )));
        }
        if let Some(p) = probabilities.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
            return Err(Error::InvalidSample(format!("probability {p} is negative or not finite")));
        }
        let total: f64 = probabilities.iter().sum();
        if libm::fabs(total - 1.0) > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::InvalidSample(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Sample { values, probabilities: Some(probabilities) })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.probabilities.is_none()
    }

    /// Probability of the `i`-th value.
    pub fn probability(&self, i: usize) -> f64 {
        match &self.probabilities {
            Some(p) => p[i],
            None => 1.0 / self.values.len() as f64,
        }
    }

    /// Probability-weighted expectation of `g(x)`.
    fn expect(&self, g: impl Fn(f64) -> f64) -> f64 {
        match &self.probabilities {
            Some(p) => self.values.iter().zip(p).map(|(&x, &w)| w * g(x)).sum(),
            None => self.values.iter().map(|&x| g(x)).sum::<f64>() / self.values.len() as f64,
        }
    }

    /// Plain sum of `g(x)` over the values.
    fn sum(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.values.iter().map(|&x| g(x)).sum()
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::InvalidSample(format!("needs at least 2 values, got {}", values.len())));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidSample(format!("value {v} is not finite")));
    }
    Ok(())
}

fn hinge(t: f64) -> f64 {
    if t > 0.0 {
        t
    } else {
        0.0
    }
}

fn powu(x: f64, p: u32) -> f64 {
    (0..p).fold(1.0, |acc, _| acc * x)
}

/// Probability-weighted mean `m = Σ p_i x_i`.
pub fn mean(s: &Sample) -> f64 {
    s.expect(|x| x)
}

/// Estimator mean `X̄ = Σ x_i / n`.
pub fn estimator_mean(s: &Sample) -> f64 {
    s.sum(|x| x) / s.len() as f64
}

/// A measure in both its weighted and its estimator form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion {
    pub weighted: f64,
    pub estimator: f64,
}

/// Variance measure: `σ² = E[(m - X)²]` and `s² = Σ (X̄ - x_i)² / (n - 1)`.
pub fn variance_measure(s: &Sample) -> Dispersion {
    let m = mean(s);
    let xbar = estimator_mean(s);
    Dispersion {
        weighted: s.expect(|x| (m - x) * (m - x)),
        estimator: s.sum(|x| (xbar - x) * (xbar - x)) / (s.len() - 1) as f64,
    }
}

fn lower_partial_moment(s: &Sample, t: f64, p: u32) -> f64 {
    s.expect(|x| powu(hinge(t - x), p))
}

/// Below-threshold measure `E[((T - X)₊)²]`; values above `T` do not count.
pub fn threshold_below(s: &Sample, t: f64) -> f64 {
    lower_partial_moment(s, t, 2)
}

/// Above-threshold measure `E[((X - T)₊)²]`; values below `T` do not count.
pub fn threshold_above(s: &Sample, t: f64) -> f64 {
    s.expect(|x| powu(hinge(x - t), 2))
}

/// Generalised below-threshold measure `E[((T - X)₊)^p]`, `p >= 1`.
pub fn power_measure(s: &Sample, t: f64, p: u32) -> Result<f64> {
    if p == 0 {
        return Err(Error::InvalidParameter { name: "p", value: 0.0 });
    }
    Ok(lower_partial_moment(s, t, p))
}

/// Semi-variance in weighted and estimator form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiDispersion {
    /// `E[((m - X)₊)²]`.
    pub weighted: f64,
    /// `Σ ((X̄ - x_i)₊)²`.
    pub sum_of_squares: f64,
    /// `Ss² = Σ ((X̄ - x_i)₊)² / (n - 1)`.
    pub estimator: f64,
}

/// Semi-variance: only outcomes below the mean contribute.
pub fn semivariance(s: &Sample) -> SemiDispersion {
    let m = mean(s);
    let xbar = estimator_mean(s);
    let sum_of_squares = s.sum(|x| powu(hinge(xbar - x), 2));
    SemiDispersion {
        weighted: s.expect(|x| powu(hinge(m - x), 2)),
        sum_of_squares,
        estimator: sum_of_squares / (s.len() - 1) as f64,
    }
}

/// Taguchi loss `k [Var(X) + (m - T)²]` and its estimator `k [s² + (X̄ - T)²]`.
pub fn taguchi(s: &Sample, t: f64, k: f64) -> Result<Dispersion> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter { name: "k", value: k });
    }
    let var = variance_measure(s);
    let bias = mean(s) - t;
    let est_bias = estimator_mean(s) - t;
    Ok(Dispersion {
        weighted: k * (var.weighted + bias * bias),
        estimator: k * (var.estimator + est_bias * est_bias),
    })
}

/// A risk measure and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    Variance,
    Below { t: f64 },
    Above { t: f64 },
    Power { t: f64, p: u32 },
    Semivariance,
    Taguchi { t: f64, k: f64 },
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::Variance => "variance",
            Measure::Below { .. } => "below",
            Measure::Above { .. } => "above",
            Measure::Power { .. } => "power",
            Measure::Semivariance => "semivar",
            Measure::Taguchi { .. } => "taguchi",
        }
    }

    fn threshold(&self) -> Option<f64> {
        match *self {
            Measure::Below { t } | Measure::Above { t } | Measure::Power { t, .. } | Measure::Taguchi { t, .. } => Some(t),
            Measure::Variance | Measure::Semivariance => None,
        }
    }
}

/// Summary statistics of a sample plus one evaluated measure.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub n: usize,
    pub mean: f64,
    pub estimator_mean: f64,
    pub variance: f64,
    pub estimator_variance: f64,
    pub measure: String,
    pub threshold: Option<f64>,
    pub power: Option<u32>,
    pub k: Option<f64>,
    /// Probability-weighted value of the measure.
    pub value: f64,
    /// Estimator value, for measures that define one.
    pub estimator_value: Option<f64>,
    /// `Σ ((X̄ - x_i)₊)²`, reported with the semi-variance.
    pub semivariance_sum: Option<f64>,
}

/// Evaluates `measure` on `s`.
pub fn evaluate(s: &Sample, measure: Measure) -> Result<MeasureReport> {
    let var = variance_measure(s);
    let (value, estimator_value, semivariance_sum) = match measure {
        Measure::Variance => (var.weighted, Some(var.estimator), None),
        Measure::Below { t } => (threshold_below(s, t), None, None),
        Measure::Above { t } => (threshold_above(s, t), None, None),
        Measure::Power { t, p } => (power_measure(s, t, p)?, None, None),
        Measure::Semivariance => {
            let sv = semivariance(s);
            (sv.weighted, Some(sv.estimator), Some(sv.sum_of_squares))
        }
        Measure::Taguchi { t, k } => {
            let d = taguchi(s, t, k)?;
            (d.weighted, Some(d.estimator), None)
        }
    };
    if let Some(t) = measure.threshold() {
        if !t.is_finite() {
            return Err(Error::InvalidParameter { name: "T", value: t });
        }
    }
    Ok(MeasureReport {
        n: s.len(),
        mean: mean(s),
        estimator_mean: estimator_mean(s),
        variance: var.weighted,
        estimator_variance: var.estimator,
        measure: String::from(measure.name()),
        threshold: measure.threshold(),
        power: match measure {
            Measure::Power { p, .. } => Some(p),
            _ => None,
        },
        k: match measure {
            Measure::Taguchi { k, .. } => Some(k),
            _ => None,
        },
        value,
        estimator_value,
        semivariance_sum,
    })
}
