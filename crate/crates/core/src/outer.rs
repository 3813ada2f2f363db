//! Baseline outer bands `ω_i ⊇ λ_i(A^S)` and their tightening.

use crate::band::BandSet;
use crate::eig::{spectral_radius_nonneg, sym_eigenvalues};
use crate::error::{Error, Result};
use crate::interval::Band;
use crate::symmetric::SymmetricIntervalMatrix;

pub type OuterBands = BandSet;

/// Relative slack used when checking inner bands against outer bands that
/// were supplied from outside (typically rounded to a few decimals).
pub const OUTER_SLACK: f64 = 1e-4;

fn slack(x: f64) -> f64 {
    OUTER_SLACK * x.abs().max(1.0)
}

/// `ω_i = [λ_i(A_c) − ρ(A_Δ), λ_i(A_c) + ρ(A_Δ)]`.
///
/// Any member is `A_c + E` with `|E| ≤ A_Δ`, and `‖E‖_2 ≤ ρ(|E|) ≤ ρ(A_Δ)`,
/// so Weyl's inequality puts every `λ_i(A)` inside `ω_i`.
pub fn outer_bounds(a: &SymmetricIntervalMatrix) -> Result<OuterBands> {
    let centre = sym_eigenvalues(a.mid())?;
    let rho = spectral_radius_nonneg(a.rad())?;
    Ok(BandSet::new(centre.into_iter().map(|c| Band::from_mid_rad(c, rho)).collect()))
}

/// Pulls `ω̄_1` down to `μ̄_1` and `ω̲_n` up to `μ̲_n`, both of which are
/// exact when `vertex_inner` comes from full vertex enumeration. The new
/// endpoints are then propagated so the outer bands stay ordered
/// (`ω̄_i ≤ ω̄_{i−1}`, `ω̲_i ≥ ω̲_{i+1}`), which never widens anything.
pub fn tighten_outer(outer: &OuterBands, vertex_inner: &BandSet) -> Result<OuterBands> {
    let n = outer.len();
    if vertex_inner.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: vertex_inner.len() });
    }
    if n == 0 {
        return Ok(outer.clone());
    }
    let top = vertex_inner.bands[0].hi();
    let bottom = vertex_inner.bands[n - 1].lo();
    if top > outer.bands[0].hi() + slack(outer.bands[0].hi()) {
        return Err(Error::Inconsistent(format!(
            "inner upper endpoint {top} exceeds outer upper endpoint {}",
            outer.bands[0].hi()
        )));
    }
    if bottom < outer.bands[n - 1].lo() - slack(outer.bands[n - 1].lo()) {
        return Err(Error::Inconsistent(format!(
            "inner lower endpoint {bottom} is below outer lower endpoint {}",
            outer.bands[n - 1].lo()
        )));
    }

    let mut upper = outer.upper();
    let mut lower = outer.lower();
    upper[0] = top;
    lower[n - 1] = bottom;
    for i in 1..n {
        upper[i] = upper[i].min(upper[i - 1]);
    }
    for i in (0..n - 1).rev() {
        lower[i] = lower[i].max(lower[i + 1]);
    }
    let mut tightened = BandSet::from_endpoints(&lower, &upper)?;
    tightened.exact_lo = outer.exact_lo.clone();
    tightened.exact_hi = outer.exact_hi.clone();
    Ok(tightened)
}

/// Checks that `outer` contains `inner` up to [`OUTER_SLACK`] and returns
/// the bandwise hull, so downstream code can rely on exact containment.
pub fn reconcile_outer(outer: &OuterBands, inner: &BandSet) -> Result<OuterBands> {
    if outer.len() != inner.len() {
        return Err(Error::InvalidOuter(format!(
            "expected {} outer bands, found {}",
            inner.len(),
            outer.len()
        )));
    }
    let mut merged = outer.clone();
    for (i, (o, m)) in outer.bands.iter().zip(&inner.bands).enumerate() {
        if m.lo() < o.lo() - slack(o.lo()) || m.hi() > o.hi() + slack(o.hi()) {
            return Err(Error::InvalidOuter(format!(
                "band {} outer {o} does not contain inner {m}",
                i + 1
            )));
        }
        merged.bands[i] = o.hull(m);
    }
    Ok(merged)
}
