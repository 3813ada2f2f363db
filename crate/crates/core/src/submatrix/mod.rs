//! Submatrix vertex enumeration.
//!
//! Every boundary point of the eigenvalue sets is an eigenvalue of a vertex
//! of some principal submatrix block `D` whose eigenvector `y` satisfies
//! `0 ∈ [C] y` for the coupling block `C`. The search walks all index sets
//! `J` depth-first, enumerates the vertices of `D`, and uses every eigenpair
//! that falls into the improvement window of the endpoint being pushed. In
//! branch and bound mode a linear relaxation is checked at each node and
//! the whole subtree is skipped when it certifies that no eigenvalue of the
//! window can be reached.

mod certificate;
mod exact;
mod select;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use certificate::{feasibility_certificate, FeasibilityVerdict};
pub use exact::{certify_exact, gap_indices, restrict_to_gap_indices, restrict_to_lower_gap_indices};
pub use select::select_matrix_with_zero_product;

use crate::band::{BandSet, Side};
use crate::eig::{sym_eigen, sym_eigenvalues};
use crate::error::{Error, Result};
use crate::interval::{interval_matvec, Band, Interval};
use crate::local::{local_inner, repair_monotone};
use crate::outer::{outer_bounds, reconcile_outer, OuterBands};
use crate::symmetric::{Blocks, IndexSet, SignVector, SymmetricIntervalMatrix};

/// Default dimension guard; the search touches up to `(3^n − 1)/2` vertices.
pub const DEFAULT_SUBMATRIX_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "direct")]
    Direct,
    #[serde(rename = "bb")]
    BranchBound,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Index sets visited, including pruned ones.
    pub nodes: u64,
    pub pruned: u64,
    pub certificates: u64,
    /// Vertex eigendecompositions.
    pub vertices: u64,
    /// Eigenpairs inside the window with `0 ∈ [C] y`.
    pub candidates: u64,
    pub improvements: u64,
    pub direct_improvements: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, o: Self) {
        self.nodes += o.nodes;
        self.pruned += o.pruned;
        self.certificates += o.certificates;
        self.vertices += o.vertices;
        self.candidates += o.candidates;
        self.improvements += o.improvements;
        self.direct_improvements += o.direct_improvements;
    }
}

/// An eigenpair of a block vertex that passed the window and zero tests.
#[derive(Clone, Debug)]
pub struct CandidateEigenpair {
    pub j: IndexSet,
    pub z: SignVector,
    /// Index of `λ` within the spectrum of the block.
    pub i: usize,
    pub lambda: f64,
    pub y: Vec<f64>,
    /// The endpoint value just before this candidate was processed.
    pub bound_before: f64,
    pub improved: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub mode: Mode,
    pub cap: usize,
    pub record_candidates: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { mode: Mode::BranchBound, cap: DEFAULT_SUBMATRIX_CAP, record_candidates: false }
    }
}

/// Result of pushing one endpoint.
#[derive(Clone, Debug)]
pub struct EndpointSearch {
    pub p: usize,
    pub side: Side,
    pub value: f64,
    /// Member of the set whose `p`-th eigenvalue is at least (upper side) or
    /// at most (lower side) `value`; `None` if the seed was not improved.
    pub witness: Option<DMatrix<f64>>,
    pub stats: SearchStats,
    pub candidates: Vec<CandidateEigenpair>,
}

struct Search<'a> {
    a: &'a SymmetricIntervalMatrix,
    outer: &'a OuterBands,
    p: usize,
    side: Side,
    mode: Mode,
    record: bool,
    value: f64,
    witness: Option<DMatrix<f64>>,
    stats: SearchStats,
    candidates: Vec<CandidateEigenpair>,
}

impl Search<'_> {
    /// Closed window `[μ̄_p, ω̄_p]` or `[ω̲_p, μ̲_p]`; `None` once it is empty.
    fn window(&self) -> Option<Band> {
        let o = self.outer.bands[self.p];
        match self.side {
            Side::Upper if self.value < o.hi() => Interval::new(self.value, o.hi()).ok(),
            Side::Lower if self.value > o.lo() => Interval::new(o.lo(), self.value).ok(),
            _ => None,
        }
    }

    fn in_window(&self, lambda: f64) -> bool {
        let o = self.outer.bands[self.p];
        match self.side {
            Side::Upper => lambda > self.value && lambda <= o.hi(),
            Side::Lower => lambda < self.value && lambda >= o.lo(),
        }
    }

    /// Whether `λ` can only belong to the `p`-th set.
    fn is_direct(&self, lambda: f64) -> bool {
        let (p, n) = (self.p, self.outer.len());
        match self.side {
            Side::Upper => p == 0 || lambda < self.outer.bands[p - 1].lo(),
            Side::Lower => p + 1 == n || lambda > self.outer.bands[p + 1].hi(),
        }
    }

    fn visit(&mut self, members: &[usize], last: Option<usize>) -> Result<()> {
        self.stats.nodes += 1;
        let blocks = self.a.decompose(&IndexSet::new(members.to_vec())?)?;
        if self.mode == Mode::BranchBound {
            let prune = match self.window() {
                None => true,
                Some(w) => {
                    self.stats.certificates += 1;
                    feasibility_certificate(&blocks.d, &blocks.c, w) == FeasibilityVerdict::CertifiedInfeasible
                }
            };
            if prune {
                self.stats.pruned += 1;
                return Ok(());
            }
        }
        self.scan_node(&blocks)?;
        if members.len() > 1 {
            for (pos, &k) in members.iter().enumerate() {
                if last.is_none_or(|l| k > l) {
                    let mut child = members.to_vec();
                    child.remove(pos);
                    self.visit(&child, Some(k))?;
                }
            }
        }
        Ok(())
    }

    fn scan_node(&mut self, blocks: &Blocks) -> Result<()> {
        let d = &blocks.d;
        let k = d.n();
        let mut signs = vec![1i8; k];
        let mut m = d.vertex_matrix(&SignVector::ones(k), self.side)?;
        for g in 0..1u64 << (k - 1) {
            if g > 0 {
                let b = g.trailing_zeros() as usize + 1;
                signs[b] = -signs[b];
                d.refresh_vertex_line(&signs, self.side, b, &mut m);
            }
            self.stats.vertices += 1;
            let pairs = sym_eigen(&m)?;
            for i in 0..k {
                let lambda = pairs.values[i];
                if !self.in_window(lambda) {
                    continue;
                }
                let y = pairs.vector(i);
                if !interval_matvec(&blocks.c, &y)?.contains_zero {
                    continue;
                }
                let c_star = match select_matrix_with_zero_product(&blocks.c, &y) {
                    Ok(c) => c,
                    Err(Error::Precondition(_)) => continue,
                    Err(e) => return Err(e),
                };
                let a_star = blocks.assemble(blocks.b.mid(), &c_star, &m);
                self.stats.candidates += 1;
                let before = self.value;
                let improved = if self.is_direct(lambda) {
                    self.stats.direct_improvements += 1;
                    self.value = lambda;
                    self.witness = Some(a_star);
                    true
                } else {
                    let lp = sym_eigenvalues(&a_star)?[self.p];
                    if self.side.improves(lp, self.value) {
                        self.value = lp;
                        self.witness = Some(a_star);
                        true
                    } else {
                        false
                    }
                };
                if improved {
                    self.stats.improvements += 1;
                }
                if self.record {
                    self.candidates.push(CandidateEigenpair {
                        j: blocks.j.clone(),
                        z: SignVector::new(signs.clone())?,
                        i,
                        lambda,
                        y,
                        bound_before: before,
                        improved,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Pushes endpoint `p` on `side` outward from `seed` using the outer bands
/// `outer` to decide which eigenvalues may belong to the `p`-th set.
///
/// Both modes visit index sets in the same depth-first order: the root is
/// `{1..n}` and a child drops one member larger than the last one dropped.
/// Since pruning only removes subtrees that cannot contain an eigenvalue of
/// the current window, the two modes return bit-identical endpoints.
pub fn submatrix_enum(
    a: &SymmetricIntervalMatrix,
    outer: &OuterBands,
    p: usize,
    seed: f64,
    side: Side,
    config: SearchConfig,
) -> Result<EndpointSearch> {
    let n = a.n();
    if n > config.cap {
        return Err(Error::CapExceeded { n, cap: config.cap });
    }
    if outer.len() != n {
        return Err(Error::InvalidOuter(format!("expected {n} outer bands, found {}", outer.len())));
    }
    if p >= n {
        return Err(Error::IndexOutOfRange { index: p, n });
    }
    let mut search = Search {
        a,
        outer,
        p,
        side,
        mode: config.mode,
        record: config.record_candidates,
        value: seed,
        witness: None,
        stats: SearchStats::default(),
        candidates: Vec::new(),
    };
    let root: Vec<usize> = (0..n).collect();
    search.visit(&root, None)?;
    Ok(EndpointSearch {
        p,
        side,
        value: search.value,
        witness: search.witness,
        stats: search.stats,
        candidates: search.candidates,
    })
}

/// [`submatrix_enum`] in branch and bound mode.
pub fn bb_traverse(
    a: &SymmetricIntervalMatrix,
    outer: &OuterBands,
    p: usize,
    seed: f64,
    side: Side,
    cap: usize,
) -> Result<EndpointSearch> {
    submatrix_enum(a, outer, p, seed, side, SearchConfig { mode: Mode::BranchBound, cap, record_candidates: false })
}

/// Index sets on the depth-first path from `{1..n}` down to `j`, ending with
/// `j` itself.
pub fn dfs_path(j: &IndexSet, n: usize) -> Vec<IndexSet> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut path = vec![IndexSet::full(n)];
    for r in j.complement(n).members() {
        current.retain(|x| x != r);
        path.push(IndexSet::new(current.clone()).expect("sorted subset"));
    }
    path
}

#[derive(Clone, Debug)]
pub struct SubmatrixOptions {
    pub mode: Mode,
    pub cap: usize,
    /// Search only endpoints whose exactness could be certified.
    pub gaps_only: bool,
    pub sides: Vec<Side>,
    /// Restrict to these 0-based indices.
    pub indices: Option<Vec<usize>>,
    pub record_candidates: bool,
}

impl Default for SubmatrixOptions {
    fn default() -> Self {
        Self {
            mode: Mode::BranchBound,
            cap: DEFAULT_SUBMATRIX_CAP,
            gaps_only: false,
            sides: Side::BOTH.to_vec(),
            indices: None,
            record_candidates: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubmatrixResult {
    pub bands: BandSet,
    /// Outer bands actually used (after reconciliation with the seed).
    pub outer: OuterBands,
    /// Local-improvement bands the searches started from.
    pub seed: BandSet,
    pub searches: Vec<EndpointSearch>,
    pub upper_witnesses: Vec<DMatrix<f64>>,
    pub lower_witnesses: Vec<DMatrix<f64>>,
    pub stats: SearchStats,
}

/// Full pipeline: local improvement as seed, outer bands (supplied or
/// baseline), one search per requested `(p, side)` run in parallel, then
/// monotone repair and exactness flags.
pub fn submatrix_inner(
    a: &SymmetricIntervalMatrix,
    outer: Option<&OuterBands>,
    opts: &SubmatrixOptions,
) -> Result<SubmatrixResult> {
    let n = a.n();
    if n > opts.cap {
        return Err(Error::CapExceeded { n, cap: opts.cap });
    }
    let local = local_inner(a)?;
    let outer = match outer {
        Some(o) => reconcile_outer(o, &local.bands)?,
        None => outer_bounds(a)?,
    };

    let mut tasks = Vec::new();
    for &side in &opts.sides {
        let mut indices = match &opts.indices {
            Some(list) => list.clone(),
            None => (0..n).collect(),
        };
        if let Some(&bad) = indices.iter().find(|&&p| p >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        if opts.gaps_only {
            let gaps = gap_indices(&outer, side);
            indices.retain(|p| gaps.contains(p));
        }
        indices.sort_unstable();
        indices.dedup();
        tasks.extend(indices.into_iter().map(|p| (side, p)));
    }

    let config = SearchConfig { mode: opts.mode, cap: opts.cap, record_candidates: opts.record_candidates };
    let searches = tasks
        .par_iter()
        .map(|&(side, p)| {
            let seed = local.bands.endpoint(p, side);
            submatrix_enum(a, &outer, p, seed, side, config)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut upper = local.upper.values.clone();
    let mut lower = local.lower.values.clone();
    let mut upper_witnesses = local.upper.witnesses.clone();
    let mut lower_witnesses = local.lower.witnesses.clone();
    let mut searched_upper = vec![false; n];
    let mut searched_lower = vec![false; n];
    let mut stats = SearchStats::default();
    for s in &searches {
        stats += s.stats;
        let (values, witnesses, searched) = match s.side {
            Side::Upper => (&mut upper, &mut upper_witnesses, &mut searched_upper),
            Side::Lower => (&mut lower, &mut lower_witnesses, &mut searched_lower),
        };
        searched[s.p] = true;
        if let Some(w) = &s.witness {
            values[s.p] = s.value;
            witnesses[s.p] = w.clone();
        }
    }
    repair_monotone(&mut upper, &mut upper_witnesses, Side::Upper)?;
    repair_monotone(&mut lower, &mut lower_witnesses, Side::Lower)?;

    let mut bands = BandSet::from_endpoints(&lower, &upper)?;
    let (exact_lo, exact_hi) = certify_exact(&outer, &searched_upper, &searched_lower, &BandSet::new(Vec::new()));
    bands.exact_lo = exact_lo;
    bands.exact_hi = exact_hi;
    Ok(SubmatrixResult {
        bands,
        outer,
        seed: local.bands,
        searches,
        upper_witnesses,
        lower_witnesses,
        stats,
    })
}
