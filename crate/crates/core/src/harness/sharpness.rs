use crate::band::BandSet;
use crate::error::{Error, Result};

/// `1 − Σ rad(μ_i) / Σ rad(ω_i)`, clamped to `[0, 1]`.
///
/// Zero means the inner and outer bands coincide.
pub fn sharpness(inner: &BandSet, outer: &BandSet) -> Result<f64> {
    if inner.len() != outer.len() {
        return Err(Error::DimensionMismatch { expected: outer.len(), found: inner.len() });
    }
    let denom = outer.total_radius();
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::Precondition("outer bands are all degenerate".into()));
    }
    Ok((1.0 - inner.total_radius() / denom).clamp(0.0, 1.0))
}
