//! Dense exact simplex.
//!
//! Solves `max cᵀy  s.t.  A y ≤ b, y ≥ 0` over [`Rational`] with Bland's
//! rule. Rows with a negative right-hand side get an artificial variable and
//! a first phase. The columns of the initial basis (slacks, or artificials
//! for flipped rows) stay in the tableau for the whole run, so `B⁻¹` and
//! the duals can be read off directly and a column can be appended to an
//! optimal tableau without refactoring.

use num_traits::{Signed, Zero};

use crate::{Error, Rational, Result};

/// One `coeffs · y <= rhs` row, with sparse coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

/// Maximization LP over nonnegative variables with `≤` rows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub rows: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rational)>, rhs: Rational) -> &mut Self {
        self.rows.push(Constraint { coeffs, rhs });
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisVar {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Value of every structural variable.
    pub primal: Vec<Rational>,
    /// One dual per row; nonnegative at optimality.
    pub duals: Vec<Rational>,
    /// Basic variable of each row.
    pub basis: Vec<BasisVar>,
    pub objective: Rational,
    /// Pivots performed since the solver was created.
    pub pivots: usize,
}

/// Upper bound on pivots before the solver gives up with an internal error.
pub const DEFAULT_PIVOT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct Simplex {
    vars: Vec<BasisVar>,
    tableau: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Phase-two reduced costs `c_j - c_Bᵀ B⁻¹ A_j`.
    reduced: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
    /// Column holding the initial basic variable of each row.
    initial: Vec<usize>,
    flipped: Vec<bool>,
    structural: Vec<usize>,
    feasible: bool,
    pivots: usize,
    pivot_limit: usize,
}

impl Simplex {
    pub fn new(lp: &LinearProgram) -> Result<Self> {
        let m = lp.rows.len();
        let flipped: Vec<bool> = lp.rows.iter().map(|r| r.rhs.is_negative()).collect();
        let mut vars = Vec::new();
        let mut initial = Vec::with_capacity(m);
        for (i, &f) in flipped.iter().enumerate() {
            vars.push(BasisVar::Slack(i));
            if f {
                vars.push(BasisVar::Artificial(i));
            }
            initial.push(vars.len() - 1);
        }
        let width = vars.len();
        let mut tableau = vec![vec![Rational::zero(); width]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut col = 0;
        for (i, row) in lp.rows.iter().enumerate() {
            let sign = if flipped[i] { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
            tableau[i][col] = sign.clone();
            col += 1;
            if flipped[i] {
                tableau[i][col] = Rational::from_integer(1.into());
                col += 1;
            }
            rhs.push(&row.rhs * &sign);
        }
        let mut solver = Simplex {
            reduced: vec![Rational::zero(); width],
            vars,
            tableau,
            rhs,
            value: Rational::zero(),
            basis: initial.clone(),
            initial,
            flipped,
            structural: Vec::new(),
            feasible: false,
            pivots: 0,
            pivot_limit: DEFAULT_PIVOT_LIMIT,
        };
        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); lp.num_vars()];
        for (i, row) in lp.rows.iter().enumerate() {
            for (j, a) in &row.coeffs {
                if *j >= lp.num_vars() {
                    return Err(Error::Model(format!("row {i} references variable {j} of {}", lp.num_vars())));
                }
                if !a.is_zero() {
                    columns[*j].push((i, a.clone()));
                }
            }
        }
        for (j, coeffs) in columns.into_iter().enumerate() {
            solver.add_column(lp.objective[j].clone(), &coeffs)?;
        }
        Ok(solver)
    }

    pub fn with_pivot_limit(mut self, limit: usize) -> Self {
        self.pivot_limit = limit;
        self
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_structural(&self) -> usize {
        self.structural.len()
    }

    /// Appends a structural variable with the given objective coefficient
    /// and original (unflipped) row coefficients. The current basis stays
    /// valid, so a following [`Simplex::solve`] resumes from it.
    pub fn add_column(&mut self, objective: Rational, coeffs: &[(usize, Rational)]) -> Result<usize> {
        let m = self.rows();
        let mut column = vec![Rational::zero(); m];
        let mut reduced = objective;
        for (i, a) in coeffs {
            if *i >= m {
                return Err(Error::Model(format!("coefficient for row {i} of {m}")));
            }
            if a.is_zero() {
                continue;
            }
            let a = if self.flipped[*i] { -a } else { a.clone() };
            let init = self.initial[*i];
            for (k, cell) in column.iter_mut().enumerate() {
                let b = &self.tableau[k][init];
                if !b.is_zero() {
                    *cell += &a * b;
                }
            }
            reduced += &a * &self.reduced[init];
        }
        let id = self.structural.len();
        self.vars.push(BasisVar::Structural(id));
        self.structural.push(self.vars.len() - 1);
        for (row, value) in self.tableau.iter_mut().zip(column) {
            row.push(value);
        }
        self.reduced.push(reduced);
        Ok(id)
    }

    fn key(&self, col: usize) -> (u8, usize) {
        match self.vars[col] {
            BasisVar::Structural(j) => (0, j),
            BasisVar::Slack(i) => (1, i),
            BasisVar::Artificial(i) => (2, i),
        }
    }

    fn is_artificial(&self, col: usize) -> bool {
        matches!(self.vars[col], BasisVar::Artificial(_))
    }

    fn pivot(&mut self, r: usize, c: usize, phase_one: Option<(&mut Vec<Rational>, &mut Rational)>) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.pivot_limit {
            return Err(Error::Internal(format!("pivot limit {} exceeded", self.pivot_limit)));
        }
        let p = self.tableau[r][c].clone();
        for cell in self.tableau[r].iter_mut() {
            if !cell.is_zero() {
                *cell /= &p;
            }
        }
        self.rhs[r] /= &p;
        let nonzero: Vec<usize> = (0..self.tableau[r].len()).filter(|&j| !self.tableau[r][j].is_zero()).collect();
        let pivot_row = self.tableau[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows() {
            if i == r || self.tableau[i][c].is_zero() {
                continue;
            }
            let f = self.tableau[i][c].clone();
            for &j in &nonzero {
                let delta = &f * &pivot_row[j];
                self.tableau[i][j] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let update = |row: &mut Vec<Rational>, value: &mut Rational| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nonzero {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
            *value += &f * &pivot_rhs;
        };
        let mut value = std::mem::take(&mut self.value);
        update(&mut self.reduced, &mut value);
        self.value = value;
        if let Some((row, value)) = phase_one {
            update(row, value);
        }
        self.basis[r] = c;
        Ok(())
    }

    /// Bland iterations on `objective` (phase one) or the phase-two row.
    /// Returns false when unbounded.
    fn iterate(&mut self, mut phase_one: Option<(&mut Vec<Rational>, &mut Rational)>) -> Result<bool> {
        loop {
            let entering = {
                let row = match &phase_one {
                    Some((row, _)) => &**row,
                    None => &self.reduced,
                };
                (0..row.len())
                    .filter(|&j| row[j].is_positive() && (phase_one.is_some() || !self.is_artificial(j)))
                    .min_by_key(|&j| self.key(j))
            };
            let Some(c) = entering else {
                return Ok(true);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows() {
                let a = &self.tableau[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.key(self.basis[i]) < self.key(self.basis[*r]))
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            self.pivot(r, c, phase_one.as_mut().map(|(row, v)| (&mut **row, &mut **v)))?;
        }
    }

    fn phase_one(&mut self) -> Result<()> {
        if self.feasible {
            return Ok(());
        }
        if self.flipped.iter().any(|&f| f) {
            // Maximize minus the sum of artificials.
            let width = self.vars.len();
            let mut row = vec![Rational::zero(); width];
            let mut value = Rational::zero();
            for (j, cell) in row.iter_mut().enumerate() {
                if self.is_artificial(j) {
                    *cell = -Rational::from_integer(1.into());
                }
            }
            for i in 0..self.rows() {
                if self.is_artificial(self.basis[i]) {
                    for (j, cell) in row.iter_mut().enumerate() {
                        *cell += &self.tableau[i][j];
                    }
                    value -= &self.rhs[i];
                }
            }
            self.iterate(Some((&mut row, &mut value)))?;
            if value.is_negative() {
                return Err(Error::Infeasible);
            }
            for i in 0..self.rows() {
                if self.is_artificial(self.basis[i]) {
                    let c = (0..self.vars.len())
                        .filter(|&j| !self.is_artificial(j) && !self.tableau[i][j].is_zero())
                        .min_by_key(|&j| self.key(j))
                        .ok_or_else(|| Error::Internal("artificial cannot leave the basis".into()))?;
                    self.pivot(i, c, None)?;
                }
            }
        }
        self.feasible = true;
        Ok(())
    }

    pub fn solve(&mut self) -> Result<LpSolution> {
        self.phase_one()?;
        let bounded = self.iterate(None)?;
        Ok(self.snapshot(if bounded { LpStatus::Optimal } else { LpStatus::Unbounded }))
    }

    fn snapshot(&self, status: LpStatus) -> LpSolution {
        let mut primal = vec![Rational::zero(); self.structural.len()];
        for (i, &c) in self.basis.iter().enumerate() {
            if let BasisVar::Structural(j) = self.vars[c] {
                primal[j] = self.rhs[i].clone();
            }
        }
        let duals = (0..self.rows())
            .map(|i| {
                let d = &self.reduced[self.initial[i]];
                if self.flipped[i] { d.clone() } else { -d }
            })
            .collect();
        LpSolution {
            status,
            primal,
            duals,
            basis: self.basis.iter().map(|&c| self.vars[c]).collect(),
            objective: self.value.clone(),
            pivots: self.pivots,
        }
    }

    /// Reduced cost of structural variable `j` in the current tableau.
    pub fn reduced_cost(&self, j: usize) -> &Rational {
        &self.reduced[self.structural[j]]
    }
}

/// One-shot solve.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    Simplex::new(lp)?.solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    fn row(c: &[i64]) -> Vec<(usize, Rational)> {
        c.iter().enumerate().map(|(j, &a)| (j, int(a))).collect()
    }

    #[test]
    fn single_bound() {
        let mut lp = LinearProgram::new(vec![int(1)]);
        lp.add_row(row(&[1]), int(1));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, int(1));
        assert_eq!(s.primal, vec![int(1)]);
        assert_eq!(s.duals, vec![int(1)]);
    }

    #[test]
    fn zero_objective() {
        let mut lp = LinearProgram::new(vec![int(0), int(0)]);
        lp.add_row(row(&[1, 1]), int(3));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.objective, int(0));
        assert_eq!(s.pivots, 0);
    }

    #[test]
    fn textbook_with_duals() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 → (2, 6), 36.
        let mut lp = LinearProgram::new(vec![int(3), int(5)]);
        lp.add_row(row(&[1, 0]), int(4))
            .add_row(row(&[0, 2]), int(12))
            .add_row(row(&[3, 2]), int(18));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.objective, int(36));
        assert_eq!(s.primal, vec![int(2), int(6)]);
        assert_eq!(s.duals, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn unbounded() {
        let mut lp = LinearProgram::new(vec![int(1), int(1)]);
        lp.add_row(row(&[1, -1]), int(1));
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn negative_rhs_phase_one() {
        // max -x - y with x + y >= 2 (as -x - y <= -2), x <= 3.
        let mut lp = LinearProgram::new(vec![int(-1), int(-1)]);
        lp.add_row(row(&[-1, -1]), int(-2)).add_row(row(&[1, 0]), int(3));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.objective, int(-2));
        assert_eq!(s.duals, vec![int(1), int(0)]);
        let mut bad = LinearProgram::new(vec![int(1)]);
        bad.add_row(row(&[1]), int(-1));
        assert_eq!(solve_lp(&bad), Err(Error::Infeasible));
    }

    #[test]
    fn warm_start_matches_cold() {
        let mut lp = LinearProgram::new(vec![int(3), int(5)]);
        lp.add_row(row(&[1, 0]), int(4))
            .add_row(row(&[0, 2]), int(12))
            .add_row(row(&[3, 2]), int(18));
        let mut s = Simplex::new(&lp).unwrap();
        s.solve().unwrap();
        let extra = [(0, int(1)), (2, int(1))];
        s.add_column(int(4), &extra).unwrap();
        let warm = s.solve().unwrap();

        lp.objective.push(int(4));
        lp.rows[0].coeffs.push((2, int(1)));
        lp.rows[2].coeffs.push((2, int(1)));
        let cold = solve_lp(&lp).unwrap();
        assert_eq!(warm.objective, cold.objective);
        assert_eq!(warm.primal, cold.primal);
    }
}
