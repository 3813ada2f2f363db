//! Singular value bands via the symmetric embedding `[[0, Aᵀ], [A, 0]]`.

use crate::band::BandSet;
use crate::error::{Error, Result};
use crate::harness::{run_inner, InnerOptions, InnerRun, Method};
use crate::interval::{Band, IntervalMatrix};
use crate::symmetric::jordan_wielandt;

/// Extends outer bands for the `q` singular value sets of an `m × n` matrix
/// to all `m + n` eigenvalue sets of its embedding, whose spectrum is
/// `{±σ_i} ∪ {0}^{m+n−2q}`.
pub fn complete_outer(singular: &BandSet, size: usize) -> Result<BandSet> {
    let q = singular.len();
    if 2 * q > size {
        return Err(Error::InvalidOuter(format!("{q} singular value bands do not fit size {size}")));
    }
    let mut bands = singular.bands.clone();
    bands.extend(std::iter::repeat_n(Band::point(0.0), size - 2 * q));
    bands.extend(singular.bands.iter().rev().map(|b| -*b));
    Ok(BandSet::new(bands))
}

#[derive(Clone, Debug)]
pub struct SingularResult {
    /// Bands for `σ_1 ≥ … ≥ σ_q`.
    pub bands: BandSet,
    /// The full run on the embedding.
    pub embedding: InnerRun,
}

/// Runs `opts.method` on the embedding of `a` and keeps the `q = min(m, n)`
/// largest bands.
///
/// `opts.outer` may hold either `q` singular value bands or all `m + n`
/// bands of the embedding. The submatrix method only searches the first
/// `q` indices unless `opts.submatrix.indices` says otherwise.
pub fn singular_bounds(a: &IntervalMatrix, opts: &InnerOptions) -> Result<SingularResult> {
    let (m, n) = (a.rows(), a.cols());
    let q = m.min(n);
    let size = m + n;
    let embedded = jordan_wielandt(a);
    let mut opts = opts.clone();
    if let Some(outer) = &opts.outer {
        opts.outer = Some(match outer.len() {
            len if len == size => outer.clone(),
            len if len == q => complete_outer(outer, size)?,
            len => {
                return Err(Error::InvalidOuter(format!(
                    "expected {q} or {size} outer bands, found {len}"
                )))
            }
        });
    }
    if opts.method == Method::Submatrix && opts.submatrix.indices.is_none() {
        opts.submatrix.indices = Some((0..q).collect());
    }
    let run = run_inner(&embedded, &opts)?;
    Ok(SingularResult { bands: run.bands.truncated(q), embedding: run })
}
