//! Dense two-phase tableau simplex.
//!
//! Minimizes `c·x` subject to linear rows and `x ≥ 0`. Pricing is Dantzig's
//! most-negative reduced cost; after a run of degenerate pivots the phase
//! switches to Bland's rule for good, which rules out cycling. Ties in the
//! ratio test go to the basic variable with the smallest index, so a given
//! model always follows the same pivot sequence.

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-9;
const DROP_EPS: f64 = 1e-13;
const DEGENERATE_RUN: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearProgram {
    pub num_vars: usize,
    /// Minimized.
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// One dual value per constraint, in the original row orientation.
    pub duals: Vec<f64>,
    /// `|c·x − b·y|` at termination.
    pub duality_gap: f64,
    /// Largest violation of any row or sign constraint by `x`.
    pub max_infeasibility: f64,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SimplexError {
    #[error("infeasible")]
    Infeasible,
    #[error("unbounded")]
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    barred: Vec<bool>,
    pivots: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width() + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let p = self.data[r * w + c];
        let (before, rest) = self.data.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for v in prow.iter_mut() {
            *v /= p;
        }
        prow[c] = 1.0;
        let eliminate = |row: &mut [f64]| {
            let f = row[c];
            if f != 0.0 {
                for (v, &pv) in row.iter_mut().zip(prow.iter()) {
                    if pv != 0.0 {
                        *v -= f * pv;
                        if v.abs() < DROP_EPS {
                            *v = 0.0;
                        }
                    }
                }
                row[c] = 0.0;
            }
        };
        for row in before.chunks_mut(w) {
            eliminate(row);
        }
        for row in after.chunks_mut(w) {
            eliminate(row);
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.cols {
            if self.barred[j] {
                continue;
            }
            let d = self.obj[j];
            if d < -COST_EPS {
                if bland {
                    return Some(j);
                }
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
        }
        best.map(|(j, _)| j)
    }

    fn leaving(&self, c: usize) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.rows {
            let a = self.at(i, c);
            if a > PIVOT_EPS {
                let ratio = self.rhs(i).max(0.0) / a;
                let take = match best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < br - 1e-12 || (ratio <= br + 1e-12 && self.basis[i] < self.basis[bi])
                    }
                };
                if take {
                    best = Some((i, ratio));
                }
            }
        }
        best
    }

    fn optimize(&mut self) -> Result<(), SimplexError> {
        let mut bland = false;
        let mut degenerate = 0;
        while let Some(c) = self.entering(bland) {
            let (r, ratio) = self.leaving(c).ok_or(SimplexError::Unbounded)?;
            if ratio <= PIVOT_EPS {
                degenerate += 1;
                if degenerate > DEGENERATE_RUN {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(r, c);
        }
        Ok(())
    }

    fn set_objective(&mut self, cost: &[f64]) {
        let w = self.width();
        self.obj = vec![0.0; w];
        self.obj[..self.cols].copy_from_slice(cost);
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.data[i * w..(i + 1) * w];
                for (o, &v) in self.obj.iter_mut().zip(row) {
                    *o -= cb * v;
                }
            }
        }
        for i in 0..self.rows {
            self.obj[self.basis[i]] = 0.0;
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution, SimplexError> {
    let m = lp.constraints.len();
    let nv = lp.num_vars;
    // Column layout: originals, then per row a slack/surplus and/or an artificial.
    let mut unit_col = vec![0usize; m];
    let mut is_artificial = Vec::new();
    let mut sign = vec![1.0; m];
    let mut senses = Vec::with_capacity(m);
    let mut next = nv;
    let mut extra: Vec<(usize, usize, f64)> = Vec::new();
    for (i, row) in lp.constraints.iter().enumerate() {
        let mut sense = row.sense;
        if row.rhs < 0.0 {
            sign[i] = -1.0;
            sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
        senses.push(sense);
        match sense {
            Sense::Le => {
                extra.push((i, next, 1.0));
                unit_col[i] = next;
                next += 1;
            }
            Sense::Ge => {
                extra.push((i, next, -1.0));
                extra.push((i, next + 1, 1.0));
                unit_col[i] = next + 1;
                next += 2;
            }
            Sense::Eq => {
                extra.push((i, next, 1.0));
                unit_col[i] = next;
                next += 1;
            }
        }
    }
    let cols = next;
    let w = cols + 1;
    let mut data = vec![0.0; m * w];
    is_artificial.resize(cols, false);
    for (i, row) in lp.constraints.iter().enumerate() {
        for &(j, a) in &row.coeffs {
            data[i * w + j] += sign[i] * a;
        }
        data[i * w + cols] = sign[i] * row.rhs;
        if senses[i] != Sense::Le {
            is_artificial[unit_col[i]] = true;
        }
    }
    for &(i, j, a) in &extra {
        data[i * w + j] = a;
    }
    let mut t = Tableau {
        rows: m,
        cols,
        data,
        obj: Vec::new(),
        basis: unit_col.clone(),
        barred: vec![false; cols],
        pivots: 0,
    };

    // Phase 1.
    if is_artificial.iter().any(|&a| a) {
        let cost: Vec<f64> = is_artificial.iter().map(|&a| if a { 1.0 } else { 0.0 }).collect();
        t.set_objective(&cost);
        t.optimize().map_err(|_| SimplexError::Infeasible)?;
        let scale = 1.0 + lp.constraints.iter().map(|r| r.rhs.abs()).sum::<f64>();
        if -t.obj[cols] > 1e-9 * scale {
            return Err(SimplexError::Infeasible);
        }
        for i in 0..m {
            if is_artificial[t.basis[i]] {
                if let Some(j) = (0..cols).find(|&j| !is_artificial[j] && t.at(i, j).abs() > PIVOT_EPS) {
                    t.pivot(i, j);
                }
            }
        }
        for (j, &a) in is_artificial.iter().enumerate() {
            t.barred[j] = a;
        }
    }

    // Phase 2.
    let mut cost = vec![0.0; cols];
    cost[..nv].copy_from_slice(&lp.objective);
    t.set_objective(&cost);
    t.optimize()?;

    let mut x = vec![0.0; nv];
    for i in 0..m {
        if t.basis[i] < nv {
            x[t.basis[i]] = t.rhs(i).max(0.0);
        }
    }
    let objective: f64 = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
    let duals: Vec<f64> = (0..m).map(|i| -t.obj[unit_col[i]] * sign[i]).collect();
    let dual_objective: f64 = duals.iter().zip(&lp.constraints).map(|(y, r)| y * r.rhs).sum();
    let max_infeasibility = lp
        .constraints
        .iter()
        .map(|r| {
            let lhs: f64 = r.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
            match r.sense {
                Sense::Le => (lhs - r.rhs).max(0.0),
                Sense::Ge => (r.rhs - lhs).max(0.0),
                Sense::Eq => (lhs - r.rhs).abs(),
            }
        })
        .fold(0.0, f64::max);
    Ok(LpSolution {
        x,
        objective,
        duals,
        duality_gap: (objective - dual_objective).abs(),
        max_infeasibility,
        pivots: t.pivots,
    })
}
