//! Box-occupation probabilities and the q-parameterized entropies built on
//! them. Entropies are in natural-log units with the Boltzmann constant
//! fixed to 1.

use crate::cover::BoxCovering;
use crate::error::{Error, Result};

/// Below this distance from 1, `q` is treated as exactly 1 and the Shannon
/// form is used instead of the removable singularity.
pub const Q_ONE_TOLERANCE: f64 = 1e-9;

/// Allowed deviation of `Σ p_i` from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Strictly positive probabilities summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Probabilities(Vec<f64>);

impl Probabilities {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Domain("empty probability vector".into()));
        }
        if let Some(bad) = p.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
            return Err(Error::Domain(format!("probability {bad} outside (0, 1]")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Domain(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Probabilities(p))
    }

    /// `p_i = n_i / n` from box occupation counts.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        let n: usize = counts.iter().sum();
        if n == 0 || counts.contains(&0) {
            return Err(Error::Domain("box counts must be positive".into()));
        }
        let n = n as f64;
        Probabilities::new(counts.iter().map(|&c| c as f64 / n).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Entropy of a distribution at a given `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub q: f64,
    pub value: f64,
}

/// Occupation probabilities `|box_i| / n`, in the covering's box order.
pub fn box_probabilities(covering: &BoxCovering, n: usize) -> Result<Probabilities> {
    let sizes = covering.box_sizes();
    let total: usize = sizes.iter().sum();
    if total != n {
        return Err(Error::Consistency(format!(
            "boxes hold {total} nodes but n = {n}"
        )));
    }
    Probabilities::from_counts(&sizes)
}

fn near_one(q: f64) -> bool {
    (q - 1.0).abs() < Q_ONE_TOLERANCE
}

/// The q-logarithm `(x^(1-q) - 1) / (1 - q)`, with `ln x` at `q = 1`.
pub fn q_log(x: f64, q: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("q-logarithm of non-positive {x}")));
    }
    if near_one(q) {
        return Ok(x.ln());
    }
    let one_minus_q = 1.0 - q;
    Ok(((one_minus_q * x.ln()).exp() - 1.0) / one_minus_q)
}

/// `-Σ p_i ln p_i`.
pub fn shannon_entropy(p: &Probabilities) -> EntropyValue {
    // `+ 0.0` turns the -0.0 of a single certain box into 0.0.
    let value = -p.as_slice().iter().map(|&x| x * x.ln()).sum::<f64>() + 0.0;
    EntropyValue { q: 1.0, value }
}

/// Tsallis entropy `(1 - Σ p_i^q) / (q - 1)`; Shannon entropy at `q = 1`.
pub fn tsallis_entropy(p: &Probabilities, q: f64) -> EntropyValue {
    if near_one(q) {
        return EntropyValue {
            q,
            value: shannon_entropy(p).value,
        };
    }
    // p_i > 0, so exp(q ln p_i) is defined for negative q as well.
    let power_sum: f64 = p.as_slice().iter().map(|&x| (q * x.ln()).exp()).sum();
    EntropyValue {
        q,
        value: (1.0 - power_sum) / (q - 1.0) + 0.0,
    }
}

/// Information volume of a covering; the same expression as
/// [`tsallis_entropy`], kept as a separate name for reports.
pub fn information_volume(p: &Probabilities, q: f64) -> f64 {
    tsallis_entropy(p, q).value
}
