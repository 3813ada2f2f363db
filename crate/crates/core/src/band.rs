use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Band;

/// Which end of an eigenvalue set a computation is pushing on.
///
/// `Upper` works with the vertex matrices `A_c + D_z A_Δ D_z` and raises
/// upper endpoints, `Lower` uses `A_c − D_z A_Δ D_z` and lowers lower ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Upper, Side::Lower];

    /// `+1` for `Upper`, `-1` for `Lower`.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Side::Upper => 1.0,
            Side::Lower => -1.0,
        }
    }

    /// True when `candidate` is strictly better than `current` on this side.
    #[inline]
    pub fn improves(self, candidate: f64, current: f64) -> bool {
        match self {
            Side::Upper => candidate > current,
            Side::Lower => candidate < current,
        }
    }
}

/// `n` eigenvalue bands, `bands[0]` belonging to the largest eigenvalue,
/// plus per-endpoint exactness flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandSet {
    pub bands: Vec<Band>,
    pub exact_lo: Vec<bool>,
    pub exact_hi: Vec<bool>,
}

impl BandSet {
    pub fn new(bands: Vec<Band>) -> Self {
        let n = bands.len();
        Self { bands, exact_lo: vec![false; n], exact_hi: vec![false; n] }
    }

    /// Assembles bands from separately computed lower and upper endpoints.
    pub fn from_endpoints(lower: &[f64], upper: &[f64]) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), found: upper.len() });
        }
        let bands = lower
            .iter()
            .zip(upper)
            .map(|(&lo, &hi)| Band::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(bands))
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn lower(&self) -> Vec<f64> {
        self.bands.iter().map(|b| b.lo()).collect()
    }

    pub fn upper(&self) -> Vec<f64> {
        self.bands.iter().map(|b| b.hi()).collect()
    }

    pub fn endpoint(&self, i: usize, side: Side) -> f64 {
        match side {
            Side::Upper => self.bands[i].hi(),
            Side::Lower => self.bands[i].lo(),
        }
    }

    /// Replaces one endpoint, keeping the band well formed.
    pub fn set_endpoint(&mut self, i: usize, side: Side, value: f64) {
        self.bands[i] = match side {
            Side::Upper => self.bands[i].with_hi(value),
            Side::Lower => self.bands[i].with_lo(value),
        };
    }

    pub fn exact(&self, i: usize, side: Side) -> bool {
        match side {
            Side::Upper => self.exact_hi[i],
            Side::Lower => self.exact_lo[i],
        }
    }

    /// Bandwise `self ⊆ other` with slack `tol` per endpoint.
    pub fn is_within(&self, other: &BandSet, tol: f64) -> bool {
        self.len() == other.len()
            && self.bands.iter().zip(&other.bands).all(|(a, b)| a.is_subset_of(b, tol))
    }

    /// Upper and lower endpoints are both nonincreasing in the band index.
    pub fn is_ordered(&self) -> bool {
        self.bands.windows(2).all(|w| w[0].lo() >= w[1].lo() && w[0].hi() >= w[1].hi())
    }

    pub fn total_radius(&self) -> f64 {
        self.bands.iter().map(|b| b.rad()).sum()
    }

    /// Keeps the first `q` bands.
    pub fn truncated(&self, q: usize) -> BandSet {
        BandSet {
            bands: self.bands[..q].to_vec(),
            exact_lo: self.exact_lo[..q].to_vec(),
            exact_hi: self.exact_hi[..q].to_vec(),
        }
    }
}
