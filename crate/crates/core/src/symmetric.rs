//! Symmetric interval matrices and the objects used to pick members out of
//! them: sign vectors (vertex matrices) and index sets (principal blocks).

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::band::Side;
use crate::error::{Error, Result};
use crate::interval::{check_finite, Interval, IntervalMatrix};

/// The set of symmetric members of an interval matrix with symmetric
/// midpoint `mid` and symmetric, entrywise nonnegative radius `rad`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricIntervalMatrix {
    mid: DMatrix<f64>,
    rad: DMatrix<f64>,
}

fn symmetrize_checked(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
    }
    check_finite(m)?;
    let scale = m.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let mut out = m.clone();
    for i in 0..n {
        for j in i + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
            out[(j, i)] = out[(i, j)];
        }
    }
    Ok(out)
}

impl SymmetricIntervalMatrix {
    /// Validates symmetry to `1e-12` relative and copies the upper triangle
    /// over the lower one so that the stored matrices are exactly symmetric.
    pub fn from_mid_rad(mid: DMatrix<f64>, rad: DMatrix<f64>) -> Result<Self> {
        if mid.shape() != rad.shape() {
            return Err(Error::DimensionMismatch { expected: mid.nrows(), found: rad.nrows() });
        }
        let mid = symmetrize_checked(&mid)?;
        let rad = symmetrize_checked(&rad)?;
        for j in 0..rad.ncols() {
            for i in 0..rad.nrows() {
                if rad[(i, j)] < 0.0 {
                    return Err(Error::NegativeEntry { row: i, col: j, value: rad[(i, j)] });
                }
            }
        }
        Ok(Self { mid, rad })
    }

    pub fn from_bounds(lower: &DMatrix<f64>, upper: &DMatrix<f64>) -> Result<Self> {
        let general = IntervalMatrix::from_bounds(lower, upper)?;
        Self::from_interval_matrix(&general)
    }

    pub fn from_interval_matrix(m: &IntervalMatrix) -> Result<Self> {
        Self::from_mid_rad(m.mid().clone(), m.rad().clone())
    }

    pub fn point(m: DMatrix<f64>) -> Result<Self> {
        let n = m.nrows();
        Self::from_mid_rad(m, DMatrix::zeros(n, n))
    }

    pub fn n(&self) -> usize {
        self.mid.nrows()
    }

    pub fn mid(&self) -> &DMatrix<f64> {
        &self.mid
    }

    pub fn rad(&self) -> &DMatrix<f64> {
        &self.rad
    }

    pub fn lower(&self) -> DMatrix<f64> {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> DMatrix<f64> {
        &self.mid + &self.rad
    }

    pub fn entry(&self, i: usize, j: usize) -> Interval {
        Interval::from_mid_rad(self.mid[(i, j)], self.rad[(i, j)])
    }

    pub fn to_interval_matrix(&self) -> IntervalMatrix {
        IntervalMatrix::from_mid_rad(self.mid.clone(), self.rad.clone())
            .expect("validated on construction")
    }

    pub fn is_point(&self) -> bool {
        self.rad.iter().all(|&r| r == 0.0)
    }

    /// Whether `m` is a symmetric member (entrywise slack `tol`).
    pub fn contains(&self, m: &DMatrix<f64>, tol: f64) -> bool {
        m.shape() == self.mid.shape()
            && (0..self.n()).all(|i| (0..self.n()).all(|j| m[(i, j)] == m[(j, i)]))
            && self.to_interval_matrix().contains(m, tol)
    }

    /// `A_c ± D_z A_Δ D_z`: entry `(i, j)` is `mid_ij ± z_i z_j rad_ij`.
    pub fn vertex_matrix(&self, z: &SignVector, side: Side) -> Result<DMatrix<f64>> {
        if z.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: z.len() });
        }
        let s = side.sign();
        Ok(DMatrix::from_fn(self.n(), self.n(), |i, j| {
            self.mid[(i, j)] + s * z.product(i, j) * self.rad[(i, j)]
        }))
    }

    /// Writes row and column `k` of the vertex matrix for `signs` into `out`.
    /// Used by enumerations that flip one sign at a time; the entries are
    /// recomputed from `mid`/`rad`, so the result is bit-identical to a
    /// fresh [`vertex_matrix`](Self::vertex_matrix).
    pub(crate) fn refresh_vertex_line(&self, signs: &[i8], side: Side, k: usize, out: &mut DMatrix<f64>) {
        let s = side.sign();
        for j in 0..self.n() {
            let zz = f64::from(signs[k] * signs[j]);
            let v = self.mid[(k, j)] + s * zz * self.rad[(k, j)];
            out[(k, j)] = v;
            out[(j, k)] = v;
        }
    }

    /// Restriction to the rows and columns in `rows` (need not be sorted).
    pub fn principal(&self, rows: &IndexSet) -> SymmetricIntervalMatrix {
        let idx = rows.members();
        let k = idx.len();
        SymmetricIntervalMatrix {
            mid: DMatrix::from_fn(k, k, |i, j| self.mid[(idx[i], idx[j])]),
            rad: DMatrix::from_fn(k, k, |i, j| self.rad[(idx[i], idx[j])]),
        }
    }

    /// Splits into the blocks `B` (complement), `C` (complement × J) and
    /// `D` (J × J) of the permuted matrix `[[B, C], [Cᵀ, D]]`.
    pub fn decompose(&self, j: &IndexSet) -> Result<Blocks> {
        if j.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if let Some(&last) = j.members().last() {
            if last >= self.n() {
                return Err(Error::IndexOutOfRange { index: last, n: self.n() });
            }
        }
        let comp = j.complement(self.n());
        let (ci, ji) = (comp.members(), j.members());
        let c_mid = DMatrix::from_fn(ci.len(), ji.len(), |r, c| self.mid[(ci[r], ji[c])]);
        let c_rad = DMatrix::from_fn(ci.len(), ji.len(), |r, c| self.rad[(ci[r], ji[c])]);
        Ok(Blocks {
            b: self.principal(&comp),
            c: IntervalMatrix::from_mid_rad(c_mid, c_rad)?,
            d: self.principal(j),
            j: j.clone(),
            complement: comp,
        })
    }

    /// Draws a member with upper-triangle entries uniform in their
    /// intervals, mirrored to the lower triangle.
    pub fn sample_member_with<R: Rng + ?Sized>(&self, rng: &mut R) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let r = self.rad[(i, j)];
                let v = if r == 0.0 {
                    self.mid[(i, j)]
                } else {
                    self.mid[(i, j)] + r * (2.0 * rng.gen::<f64>() - 1.0)
                };
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    /// Deterministic member sample for a given seed.
    pub fn sample_member(&self, seed: u64) -> DMatrix<f64> {
        self.sample_member_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }
}

/// Blocks of a symmetric interval matrix relative to an index set `J`.
#[derive(Clone, Debug)]
pub struct Blocks {
    pub b: SymmetricIntervalMatrix,
    pub c: IntervalMatrix,
    pub d: SymmetricIntervalMatrix,
    pub j: IndexSet,
    pub complement: IndexSet,
}

impl Blocks {
    /// Puts point blocks back in their original positions.
    pub fn assemble(&self, b: &DMatrix<f64>, c: &DMatrix<f64>, d: &DMatrix<f64>) -> DMatrix<f64> {
        let (ci, ji) = (self.complement.members(), self.j.members());
        let n = ci.len() + ji.len();
        let mut a = DMatrix::zeros(n, n);
        for (r, &gr) in ci.iter().enumerate() {
            for (s, &gs) in ci.iter().enumerate() {
                a[(gr, gs)] = b[(r, s)];
            }
            for (s, &gs) in ji.iter().enumerate() {
                a[(gr, gs)] = c[(r, s)];
                a[(gs, gr)] = c[(r, s)];
            }
        }
        for (r, &gr) in ji.iter().enumerate() {
            for (s, &gs) in ji.iter().enumerate() {
                a[(gr, gs)] = d[(r, s)];
            }
        }
        a
    }
}

/// A vector in `{±1}^k` selecting a vertex matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSign(i64::from(bad)));
        }
        Ok(Self(signs))
    }

    pub fn ones(k: usize) -> Self {
        Self(vec![1; k])
    }

    /// Componentwise sign of `v`, with `sgn(0) = +1`.
    pub fn from_signs_of(v: &[f64]) -> Self {
        Self(v.iter().map(|&x| if x < 0.0 { -1 } else { 1 }).collect())
    }

    /// The `index`-th sign vector with `z_1 = +1`; bit `b` of `index` sets
    /// component `b + 1` to `-1`.
    pub fn from_index(k: usize, index: u64) -> Self {
        Self((0..k).map(|c| if c > 0 && (index >> (c - 1)) & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> f64 {
        f64::from(self.0[i] * self.0[j])
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|s| -s).collect())
    }

    /// `z` or `−z`, whichever has a positive first component.
    pub fn canonical(&self) -> Self {
        match self.0.first() {
            Some(-1) => self.negated(),
            _ => self.clone(),
        }
    }
}

/// A strictly increasing list of zero-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndexSet);
        }
        Ok(Self(members))
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|i| !self.contains(*i)).collect())
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

/// The symmetric embedding `[[0, Aᵀ], [A, 0]]` of an `m × n` interval
/// matrix. Its `min(m, n)` largest eigenvalue sets are the singular value
/// sets of `A`.
pub fn jordan_wielandt(a: &IntervalMatrix) -> SymmetricIntervalMatrix {
    let (m, n) = (a.rows(), a.cols());
    let size = m + n;
    let mut mid = DMatrix::zeros(size, size);
    let mut rad = DMatrix::zeros(size, size);
    for i in 0..m {
        for j in 0..n {
            mid[(n + i, j)] = a.mid()[(i, j)];
            mid[(j, n + i)] = a.mid()[(i, j)];
            rad[(n + i, j)] = a.rad()[(i, j)];
            rad[(j, n + i)] = a.rad()[(i, j)];
        }
    }
    SymmetricIntervalMatrix { mid, rad }
}

/// Interval enclosure of `{AᵀA : A ∈ [A]}`, evaluated entrywise by interval
/// sums of products. Diagonal terms use the dependent square.
pub fn gram_product(a: &IntervalMatrix) -> SymmetricIntervalMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut mid = DMatrix::zeros(n, n);
    let mut rad = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Interval::point(0.0);
            for k in 0..m {
                acc = acc
                    + if i == j { a.entry(k, i).sqr() } else { a.entry(k, i) * a.entry(k, j) };
            }
            mid[(i, j)] = acc.mid();
            mid[(j, i)] = acc.mid();
            rad[(i, j)] = acc.rad();
            rad[(j, i)] = acc.rad();
        }
    }
    SymmetricIntervalMatrix { mid, rad }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::small_3x3 as example_one;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn vertex_matrix_examples() {
        let a = example_one();
        let up = a.vertex_matrix(&SignVector::ones(3), Side::Upper).unwrap();
        assert_eq!(up, DMatrix::from_row_slice(3, 3, &[1., 2., 5., 2., 1., 1., 5., 1., 1.]));
        let z = SignVector::new(vec![1, 1, -1]).unwrap();
        let up = a.vertex_matrix(&z, Side::Upper).unwrap();
        assert_eq!(up, DMatrix::from_row_slice(3, 3, &[1., 2., 1., 2., 1., 1., 1., 1., 1.]));
        for side in Side::BOTH {
            assert_eq!(a.vertex_matrix(&z, side).unwrap(), a.vertex_matrix(&z.negated(), side).unwrap());
        }
        assert!(a.vertex_matrix(&SignVector::ones(2), Side::Upper).is_err());
    }

    #[test]
    fn sign_vectors() {
        assert!(SignVector::new(vec![1, 0]).is_err());
        assert_eq!(SignVector::from_signs_of(&[0.0, -2.0, 3.0]).signs(), &[1, -1, 1]);
        assert_eq!(SignVector::from_index(3, 0b10).signs(), &[1, 1, -1]);
        assert_eq!(SignVector::new(vec![-1, 1]).unwrap().canonical().signs(), &[1, -1]);
    }

    #[test]
    fn decompose_single_index() {
        let a = example_one();
        let blocks = a.decompose(&IndexSet::new(vec![2]).unwrap()).unwrap();
        assert_eq!(blocks.d.n(), 1);
        assert_eq!(blocks.d.entry(0, 0), iv(1.0, 1.0));
        assert_eq!((blocks.c.rows(), blocks.c.cols()), (2, 1));
        assert_eq!(blocks.c.entry(0, 0), iv(1.0, 5.0));
        assert_eq!(blocks.c.entry(1, 0), iv(1.0, 1.0));
        assert!(blocks.b.is_point());
        assert_eq!(blocks.b.mid(), &DMatrix::from_row_slice(2, 2, &[1., 2., 2., 1.]));
    }

    #[test]
    fn decompose_pair_and_full() {
        let a = example_one();
        let blocks = a.decompose(&IndexSet::new(vec![1, 2]).unwrap()).unwrap();
        assert!(blocks.d.is_point());
        assert_eq!(blocks.d.mid(), &DMatrix::from_element(2, 2, 1.0));
        assert_eq!(blocks.c.entry(0, 0), iv(2.0, 2.0));
        assert_eq!(blocks.c.entry(0, 1), iv(1.0, 5.0));

        let full = a.decompose(&IndexSet::full(3)).unwrap();
        assert_eq!(full.d, a);
        assert_eq!(full.b.n(), 0);
        assert_eq!(full.c.rows(), 0);

        assert!(matches!(a.decompose(&IndexSet::new(vec![]).unwrap()), Err(Error::EmptyIndexSet)));
    }

    #[test]
    fn assemble_reproduces_midpoint() {
        let a = example_one();
        for j in [vec![0], vec![1, 2], vec![0, 2], vec![0, 1, 2]] {
            let blocks = a.decompose(&IndexSet::new(j).unwrap()).unwrap();
            let m = blocks.assemble(blocks.b.mid(), blocks.c.mid(), blocks.d.mid());
            assert_eq!(&m, a.mid());
        }
    }

    #[test]
    fn jordan_wielandt_point() {
        let a = IntervalMatrix::point(DMatrix::from_element(1, 1, 1.0));
        let m = jordan_wielandt(&a);
        assert_eq!(m.mid(), &DMatrix::from_row_slice(2, 2, &[0., 1., 1., 0.]));
        let ev = crate::eig::sym_eigenvalues(m.mid()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn gram_examples() {
        let a = IntervalMatrix::from_entries(1, 1, &[iv(-1.0, 2.0)]).unwrap();
        assert_eq!(gram_product(&a).entry(0, 0), iv(0.0, 4.0));
        let a = IntervalMatrix::from_entries(2, 1, &[iv(0.0, 1.0), iv(1.0, 1.0)]).unwrap();
        assert_eq!(gram_product(&a).entry(0, 0), iv(1.0, 2.0));
        let p = DMatrix::from_row_slice(3, 2, &[1., 2., -3., 0.5, 4., 1.]);
        let g = gram_product(&IntervalMatrix::point(p.clone()));
        assert!(g.is_point());
        assert_eq!(g.mid(), &(p.transpose() * &p));
    }

    #[test]
    fn sampling() {
        let a = example_one();
        let m = a.sample_member(7);
        assert_eq!(m, a.sample_member(7));
        assert!(a.contains(&m, 0.0));
        let p = SymmetricIntervalMatrix::point(a.mid().clone()).unwrap();
        assert_eq!(&p.sample_member(3), a.mid());
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mid = DMatrix::from_row_slice(2, 2, &[1., 2., 3., 1.]);
        assert!(matches!(
            SymmetricIntervalMatrix::from_mid_rad(mid, DMatrix::zeros(2, 2)),
            Err(Error::NotSymmetric { .. })
        ));
    }
}
