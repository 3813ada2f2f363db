//! Dense phase-one simplex for small box-bounded linear feasibility problems.
//!
//! Only feasibility is needed, so there is no phase two. Bland's rule keeps
//! the method from cycling. Rows are scaled to unit max-norm before pivoting
//! so that the feasibility tolerance is relative.
//!
//! An `Infeasible` verdict is never taken from the tableau alone: the final
//! reduced costs of the slack columns are a candidate Farkas multiplier,
//! which is rechecked against the original rows and the variable box.

/// Phase-one objective below this is accepted as feasible.
pub const FEAS_TOL: f64 = 1e-9;

/// Smallest pivot element accepted in the ratio test.
const PIVOT_EPS: f64 = 1e-9;

/// Reduced costs above `-COST_EPS` count as nonnegative.
const COST_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible,
    Unknown,
}

/// `{x : lower ≤ x ≤ upper, a_r·x ≤ b_r for every row r}`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    lower: Vec<f64>,
    upper: Vec<f64>,
    rows: Vec<(Vec<f64>, f64)>,
}

impl LinearSystem {
    /// A system over variables with the given finite bounds.
    pub fn with_bounds(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        assert_eq!(lower.len(), upper.len());
        Self { lower, upper, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.lower.len()
    }

    /// Adds `coeffs · x ≤ rhs`.
    pub fn leq(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.vars());
        self.rows.push((coeffs, rhs));
    }

    /// Adds `lo ≤ coeffs · x ≤ hi`.
    pub fn between(&mut self, coeffs: Vec<f64>, lo: f64, hi: f64) {
        let neg = coeffs.iter().map(|c| -c).collect();
        self.leq(coeffs, hi);
        self.leq(neg, -lo);
    }

    /// Checks a point against every constraint with slack `tol`.
    pub fn satisfies(&self, x: &[f64], tol: f64) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(v, (l, u))| *v >= l - tol && *v <= u + tol)
            && self.rows.iter().all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() <= b + tol)
    }

    pub fn solve(&self) -> Feasibility {
        let n = self.vars();
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l.is_nan() || u.is_nan() || l > u) {
            return Feasibility::Infeasible;
        }

        // Shift to u = x − lower ∈ [0, width] and collect scaled rows.
        let mut rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(self.rows.len() + n);
        let mut push = |coeffs: Vec<f64>, rhs: f64| -> bool {
            let scale = coeffs.iter().fold(rhs.abs(), |m, c| m.max(c.abs()));
            if !scale.is_finite() {
                return false;
            }
            let amax = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            if amax <= PIVOT_EPS * scale || scale == 0.0 {
                // 0 ≤ rhs: trivially true, or infeasible if rhs is clearly negative.
                return rhs >= -FEAS_TOL * scale.max(1.0);
            }
            rows.push((coeffs.iter().map(|c| c / scale).collect(), rhs / scale));
            true
        };
        for (a, b) in &self.rows {
            let shift: f64 = a.iter().zip(&self.lower).map(|(c, l)| c * l).sum();
            if !push(a.clone(), b - shift) {
                return Feasibility::Infeasible;
            }
        }
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            if !push(e, self.upper[j] - self.lower[j]) {
                return Feasibility::Infeasible;
            }
        }
        let widths: Vec<f64> = self.upper.iter().zip(&self.lower).map(|(u, l)| u - l).collect();
        let mut tableau = Tableau::build(n, &rows);
        match tableau.run() {
            None => Feasibility::Unknown,
            Some(obj) if obj <= FEAS_TOL => Feasibility::Feasible,
            Some(_) => {
                if farkas_holds(&rows, &widths, &tableau.slack_costs()) {
                    Feasibility::Infeasible
                } else {
                    Feasibility::Unknown
                }
            }
        }
    }
}

/// Checks that `w ≥ 0` proves `{u ∈ [0, widths] : a_r·u ≤ b_r}` empty:
/// `min_u wᵀA u > wᵀb` over the box, with a margin for rounding.
fn farkas_holds(rows: &[(Vec<f64>, f64)], widths: &[f64], w: &[f64]) -> bool {
    let n = widths.len();
    let mut g = vec![0.0; n];
    let mut wb = 0.0;
    let mut mass = 0.0;
    for ((a, b), &wr) in rows.iter().zip(w) {
        let wr = wr.max(0.0);
        if wr == 0.0 {
            continue;
        }
        for (gj, aj) in g.iter_mut().zip(a) {
            *gj += wr * aj;
        }
        wb += wr * b;
        mass += wr * (1.0 + b.abs());
    }
    let min_lhs: f64 = g.iter().zip(widths).map(|(gj, wj)| gj.min(0.0) * wj).sum();
    let scale = mass * (1.0 + widths.iter().fold(0.0_f64, |m, v| m.max(*v)));
    mass > 0.0 && min_lhs - wb > FEAS_TOL * scale
}

/// Columns: structural `0..n`, slacks `n..n+m`, artificials after that.
struct Tableau {
    n: usize,
    m: usize,
    cols: usize,
    first_artificial: usize,
    /// `m` constraint rows of `cols + 1` entries (last is the rhs), then the
    /// reduced-cost row.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn build(n: usize, rows: &[(Vec<f64>, f64)]) -> Self {
        let m = rows.len();
        let negative: Vec<usize> = (0..m).filter(|&r| rows[r].1 < 0.0).collect();
        let first_artificial = n + m;
        let cols = n + m + negative.len();
        let mut t = vec![vec![0.0; cols + 1]; m + 1];
        let mut basis = vec![0; m];
        let mut art = first_artificial;
        for (r, (a, b)) in rows.iter().enumerate() {
            let flip = if *b < 0.0 { -1.0 } else { 1.0 };
            for (j, c) in a.iter().enumerate() {
                t[r][j] = flip * c;
            }
            t[r][n + r] = flip;
            t[r][cols] = flip * b;
            if *b < 0.0 {
                t[r][art] = 1.0;
                basis[r] = art;
                art += 1;
            } else {
                basis[r] = n + r;
            }
        }
        // Reduced costs of the phase-one objective Σ artificials.
        for &r in &negative {
            let row = t[r].clone();
            for (j, v) in row.into_iter().enumerate() {
                if j < first_artificial || j == cols {
                    t[m][j] -= v;
                }
            }
        }
        Self { n, m, cols, first_artificial, t, basis }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let f = line[col];
            if f != 0.0 {
                for (v, pv) in line.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    fn objective(&self) -> f64 {
        (0..self.m)
            .filter(|&r| self.basis[r] >= self.first_artificial)
            .map(|r| self.t[r][self.cols].max(0.0))
            .sum()
    }

    /// Reduced costs of the slack columns, i.e. the phase-one multipliers of
    /// the original `≤` rows.
    fn slack_costs(&self) -> Vec<f64> {
        (0..self.m).map(|r| self.t[self.m][self.n + r]).collect()
    }

    /// Optimal phase-one objective, or `None` if the iteration limit is hit.
    fn run(&mut self) -> Option<f64> {
        if self.first_artificial == self.cols {
            return Some(0.0);
        }
        let limit = 50 * (self.m + self.cols) + 100;
        for _ in 0..limit {
            let entering = (0..self.cols).find(|&j| self.t[self.m][j] < -COST_EPS);
            let Some(col) = entering else {
                return Some(self.objective());
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.m {
                let a = self.t[r][col];
                if a > PIVOT_EPS {
                    let ratio = self.t[r][self.cols].max(0.0) / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((br, bratio)) => {
                            if ratio < bratio || (ratio == bratio && self.basis[r] < self.basis[br]) {
                                Some((r, ratio))
                            } else {
                                Some((br, bratio))
                            }
                        }
                    };
                }
            }
            match leave {
                // Phase one is bounded, so this only happens when every
                // candidate pivot is too small to trust.
                None => return None,
                Some((row, _)) => self.pivot(row, col),
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_only_is_feasible() {
        let sys = LinearSystem::with_bounds(vec![-1.0, -1.0], vec![1.0, 1.0]);
        assert_eq!(sys.solve(), Feasibility::Feasible);
    }

    #[test]
    fn simple_infeasible() {
        // x ≥ 2 with x ≤ 1.
        let mut sys = LinearSystem::with_bounds(vec![-1.0], vec![1.0]);
        sys.leq(vec![-1.0], -2.0);
        assert_eq!(sys.solve(), Feasibility::Infeasible);
    }

    #[test]
    fn triangle() {
        // x + y ≥ 1.5, x − y ≤ 0.1, y ≤ 0.8 within [0,1]^2: feasible at (0.75, 0.8).
        let mut sys = LinearSystem::with_bounds(vec![0.0, 0.0], vec![1.0, 1.0]);
        sys.leq(vec![-1.0, -1.0], -1.5);
        sys.leq(vec![1.0, -1.0], 0.1);
        sys.leq(vec![0.0, 1.0], 0.8);
        assert_eq!(sys.solve(), Feasibility::Feasible);
        // Tighten y ≤ 0.6: x ≤ 0.7, x + y ≤ 1.3 < 1.5.
        sys.leq(vec![0.0, 1.0], 0.6);
        assert_eq!(sys.solve(), Feasibility::Infeasible);
    }

    #[test]
    fn equality_through_between() {
        let mut sys = LinearSystem::with_bounds(vec![-1.0, -1.0], vec![1.0, 1.0]);
        sys.between(vec![1.0, 2.0], 3.0, 3.0);
        assert_eq!(sys.solve(), Feasibility::Feasible);
        sys.between(vec![1.0, -1.0], 0.5, 0.5);
        // x + 2y = 3 forces x = y = 1, contradicting x − y = 0.5.
        assert_eq!(sys.solve(), Feasibility::Infeasible);
    }

    #[test]
    fn zero_row_with_negative_rhs() {
        let mut sys = LinearSystem::with_bounds(vec![0.0], vec![1.0]);
        sys.leq(vec![0.0], -1.0);
        assert_eq!(sys.solve(), Feasibility::Infeasible);
    }
}
