//! Glue shared by the CLI, the benchmark runner and the acceptance suite.

pub mod bench;
pub mod format;
pub mod oracle;
pub mod random;
pub mod sharpness;
pub mod singular;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::band::BandSet;
use crate::error::{Error, Result};
use crate::local::local_inner;
use crate::outer::reconcile_outer;
use crate::submatrix::{submatrix_inner, SubmatrixOptions};
use crate::symmetric::SymmetricIntervalMatrix;
use crate::vertex::{vertex_enum_bounds, DEFAULT_VERTEX_CAP};

/// Inner approximation algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Local,
    Vertex,
    Submatrix,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Local, Method::Vertex, Method::Submatrix];

    pub fn name(self) -> &'static str {
        match self {
            Method::Local => "local",
            Method::Vertex => "vertex",
            Method::Submatrix => "submatrix",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct InnerOptions {
    pub method: Method,
    pub vertex_cap: usize,
    pub submatrix: SubmatrixOptions,
    /// Outer bands for the submatrix method; the baseline is used if absent.
    pub outer: Option<BandSet>,
}

impl InnerOptions {
    pub fn new(method: Method) -> Self {
        Self { method, vertex_cap: DEFAULT_VERTEX_CAP, submatrix: SubmatrixOptions::default(), outer: None }
    }
}

/// Inner bands with their witnesses and work counters.
#[derive(Clone, Debug)]
pub struct InnerRun {
    pub bands: BandSet,
    /// Outer bands the method worked against, if any.
    pub outer: Option<BandSet>,
    pub upper_witnesses: Vec<DMatrix<f64>>,
    pub lower_witnesses: Vec<DMatrix<f64>>,
    pub counters: BTreeMap<String, u64>,
}

/// Runs one inner method on a symmetric interval matrix.
pub fn run_inner(a: &SymmetricIntervalMatrix, opts: &InnerOptions) -> Result<InnerRun> {
    let mut counters = BTreeMap::new();
    match opts.method {
        Method::Local => {
            let r = local_inner(a)?;
            let all = r.upper.iterations.iter().chain(&r.lower.iterations);
            counters.insert("iterations".into(), all.clone().sum());
            counters.insert("max_iterations".into(), all.copied().max().unwrap_or(0));
            let outer = opts.outer.as_ref().map(|o| reconcile_outer(o, &r.bands)).transpose()?;
            Ok(InnerRun {
                bands: r.bands,
                outer,
                upper_witnesses: r.upper.witnesses,
                lower_witnesses: r.lower.witnesses,
                counters,
            })
        }
        Method::Vertex => {
            let r = vertex_enum_bounds(a, opts.vertex_cap)?;
            counters.insert("vertices".into(), 2 * r.vertices);
            let witness = |w: &Option<_>, side| match w {
                Some(z) => a.vertex_matrix(z, side),
                None => Ok(a.mid().clone()),
            };
            let upper_witnesses = r
                .upper_witnesses
                .iter()
                .map(|w| witness(w, crate::band::Side::Upper))
                .collect::<Result<Vec<_>>>()?;
            let lower_witnesses = r
                .lower_witnesses
                .iter()
                .map(|w| witness(w, crate::band::Side::Lower))
                .collect::<Result<Vec<_>>>()?;
            let outer = opts.outer.as_ref().map(|o| reconcile_outer(o, &r.bands)).transpose()?;
            Ok(InnerRun { bands: r.bands, outer, upper_witnesses, lower_witnesses, counters })
        }
        Method::Submatrix => {
            let r = submatrix_inner(a, opts.outer.as_ref(), &opts.submatrix)?;
            let s = r.stats;
            for (k, v) in [
                ("nodes", s.nodes),
                ("pruned", s.pruned),
                ("certificates", s.certificates),
                ("vertices", s.vertices),
                ("candidates", s.candidates),
                ("improvements", s.improvements),
                ("direct_improvements", s.direct_improvements),
            ] {
                counters.insert(k.into(), v);
            }
            Ok(InnerRun {
                bands: r.bands,
                outer: Some(r.outer),
                upper_witnesses: r.upper_witnesses,
                lower_witnesses: r.lower_witnesses,
                counters,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::sym_eigenvalues;
    use crate::fixtures::small_3x3;

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
    }

    #[test]
    fn vertex_witnesses_attain_endpoints() {
        let a = small_3x3();
        let r = run_inner(&a, &InnerOptions::new(Method::Vertex)).unwrap();
        for i in 0..3 {
            assert_eq!(sym_eigenvalues(&r.upper_witnesses[i]).unwrap()[i], r.bands.bands[i].hi());
            assert_eq!(sym_eigenvalues(&r.lower_witnesses[i]).unwrap()[i], r.bands.bands[i].lo());
        }
    }
}
