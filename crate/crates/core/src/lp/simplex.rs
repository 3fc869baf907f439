//! Two-phase primal simplex on a condensed dense tableau.
//!
//! The tableau stores only nonbasic columns: each row reads
//! `x_B[r] = beta[r] - sum_c T[r][c] * x_N[c]`, and each objective row reads
//! `w = w0 + sum_c d[c] * x_N[c]`. Free variables are kept unsplit: a free
//! column may enter in either direction (its sign is flipped to make the
//! reduced cost positive) and a basic free variable never leaves, so its row
//! is skipped in the ratio test.
//!
//! Pricing is Dantzig's largest reduced cost. After a run of degenerate
//! pivots the solver switches to Bland's smallest-index rule until the
//! objective moves again, which rules out cycling.

use super::{LpError, LpModel, LpSolution, LpSolver, LpStatus, Relation, FEASIBILITY_TOL};

#[derive(Debug, Clone)]
pub struct DenseSimplex {
    /// Reduced-cost threshold for optimality.
    pub optimality_tol: f64,
    /// Smallest pivot element accepted by the ratio test.
    pub pivot_tol: f64,
    /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
    pub degenerate_limit: usize,
    /// Iteration cap; `None` picks one from the problem size.
    pub max_iterations: Option<usize>,
}

impl Default for DenseSimplex {
    fn default() -> Self {
        DenseSimplex {
            optimality_tol: 1e-9,
            pivot_tol: 1e-9,
            degenerate_limit: 50,
            max_iterations: None,
        }
    }
}

impl LpSolver for DenseSimplex {
    fn solve(&self, model: &LpModel) -> Result<LpSolution, LpError> {
        model.check()?;
        let std = StandardForm::new(model);
        let mut tab = Tableau::new(&std, model);
        let limit = self.max_iterations.unwrap_or(20_000 + 50 * (tab.m + tab.k));

        if tab.has_artificials {
            match tab.run(Phase::One, self, limit)? {
                Outcome::Optimal => {}
                Outcome::Unbounded => unreachable!("phase one objective is bounded by zero"),
            }
            let scale = 1.0 + tab.rhs_scale;
            if tab.aux0 < -1e-9 * scale {
                return Ok(LpSolution {
                    status: LpStatus::Infeasible,
                    objective: f64::NAN,
                    values: Vec::new(),
                    iterations: tab.iterations,
                });
            }
            tab.drive_out_artificials(self.pivot_tol);
        }

        let status = match tab.run(Phase::Two, self, limit)? {
            Outcome::Optimal => LpStatus::Optimal,
            Outcome::Unbounded => LpStatus::Unbounded,
        };
        if status == LpStatus::Unbounded {
            return Ok(LpSolution {
                status,
                objective: f64::INFINITY,
                values: Vec::new(),
                iterations: tab.iterations,
            });
        }

        let values = std.recover(&tab);
        let (row, violation) = model.max_violation(&values);
        if violation > FEASIBILITY_TOL {
            return Err(LpError::Numerical { row, violation });
        }
        let objective = model
            .objective()
            .iter()
            .zip(&values)
            .map(|(c, x)| c * x)
            .sum();
        Ok(LpSolution {
            status,
            objective,
            values,
            iterations: tab.iterations,
        })
    }
}

/// How each model variable maps onto a tableau column variable `y`.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = offset + sign * y`, `y >= 0`.
    Shifted { offset: f64, sign: f64 },
    /// `x = y`, `y` free.
    Free,
}

struct StandardForm {
    maps: Vec<VarMap>,
    /// Extra `y <= upper - lower` rows for doubly bounded variables.
    bound_rows: Vec<(usize, f64)>,
}

impl StandardForm {
    fn new(model: &LpModel) -> Self {
        let mut maps = Vec::with_capacity(model.num_vars());
        let mut bound_rows = Vec::new();
        for j in 0..model.num_vars() {
            let (lo, hi) = model.bounds(j);
            let map = match (lo.is_finite(), hi.is_finite()) {
                (true, _) => {
                    if hi.is_finite() {
                        bound_rows.push((j, hi - lo));
                    }
                    VarMap::Shifted {
                        offset: lo,
                        sign: 1.0,
                    }
                }
                (false, true) => VarMap::Shifted {
                    offset: hi,
                    sign: -1.0,
                },
                (false, false) => VarMap::Free,
            };
            maps.push(map);
        }
        StandardForm { maps, bound_rows }
    }

    fn recover(&self, tab: &Tableau) -> Vec<f64> {
        let mut y = vec![0.0; self.maps.len()];
        for (r, &var) in tab.basic.iter().enumerate() {
            if var < y.len() {
                y[var] = tab.beta[r];
            }
        }
        self.maps
            .iter()
            .enumerate()
            .map(|(j, map)| {
                let yj = if tab.flipped[j] { -y[j] } else { y[j] };
                match *map {
                    VarMap::Shifted { offset, sign } => offset + sign * yj,
                    VarMap::Free => yj,
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Tableau {
    m: usize,
    k: usize,
    t: Vec<f64>,
    beta: Vec<f64>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    obj: Vec<f64>,
    obj0: f64,
    aux: Vec<f64>,
    aux0: f64,
    /// Indexed by variable id.
    free: Vec<bool>,
    flipped: Vec<bool>,
    artificial_base: usize,
    has_artificials: bool,
    rhs_scale: f64,
    iterations: usize,
}

impl Tableau {
    fn new(std: &StandardForm, model: &LpModel) -> Self {
        let n = model.num_vars();

        // Rows in y-space: (coefficients, relation, rhs).
        let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
        for c in model.constraints() {
            let mut coeffs = Vec::with_capacity(n);
            let mut rhs = c.rhs;
            for (j, &a) in c.coeffs.iter().enumerate() {
                match std.maps[j] {
                    VarMap::Shifted { offset, sign } => {
                        rhs -= a * offset;
                        coeffs.push(a * sign);
                    }
                    VarMap::Free => coeffs.push(a),
                }
            }
            rows.push((coeffs, c.relation, rhs));
        }
        for &(j, width) in &std.bound_rows {
            let mut coeffs = vec![0.0; n];
            coeffs[j] = 1.0;
            rows.push((coeffs, Relation::Le, width));
        }

        let m = rows.len();
        let artificial_base = n + m;
        // Normalise every row to a non-negative right-hand side, then give it
        // a slack (basic), or a surplus column plus an artificial, or just an
        // artificial for equalities.
        let mut basic = Vec::with_capacity(m);
        let mut surplus_rows = Vec::new();
        let mut norm_rows = Vec::with_capacity(m);
        for (r, (mut coeffs, mut rel, mut rhs)) in rows.into_iter().enumerate() {
            if rhs < 0.0 {
                coeffs.iter_mut().for_each(|a| *a = -*a);
                rhs = -rhs;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            // A `>= 0` row is a `<= 0` row after negation; keep it slack-based.
            if rel == Relation::Ge && rhs == 0.0 {
                coeffs.iter_mut().for_each(|a| *a = -*a);
                rel = Relation::Le;
            }
            match rel {
                Relation::Le => basic.push(n + r),
                Relation::Ge => {
                    surplus_rows.push(r);
                    basic.push(artificial_base + r);
                }
                Relation::Eq => basic.push(artificial_base + r),
            }
            norm_rows.push((coeffs, rhs));
        }

        let k = n + surplus_rows.len();
        let mut t = vec![0.0; m * k];
        let mut beta = vec![0.0; m];
        for (r, (coeffs, rhs)) in norm_rows.iter().enumerate() {
            t[r * k..r * k + n].copy_from_slice(coeffs);
            beta[r] = *rhs;
        }
        let mut nonbasic: Vec<usize> = (0..n).collect();
        for (s, &r) in surplus_rows.iter().enumerate() {
            // artificial = rhs - a.y + surplus
            t[r * k + n + s] = -1.0;
            nonbasic.push(n + r);
        }

        let mut obj = vec![0.0; k];
        let mut obj0 = 0.0;
        for (j, &cj) in model.objective().iter().enumerate() {
            match std.maps[j] {
                VarMap::Shifted { offset, sign } => {
                    obj0 += cj * offset;
                    obj[j] = cj * sign;
                }
                VarMap::Free => obj[j] = cj,
            }
        }

        let mut aux = vec![0.0; k];
        let mut aux0 = 0.0;
        let mut has_artificials = false;
        for r in 0..m {
            if basic[r] >= artificial_base {
                has_artificials = true;
                aux0 -= beta[r];
                for c in 0..k {
                    aux[c] += t[r * k + c];
                }
            }
        }

        let total = n + 2 * m;
        let mut free = vec![false; total];
        for (j, map) in std.maps.iter().enumerate() {
            free[j] = matches!(map, VarMap::Free);
        }
        let rhs_scale = beta.iter().fold(0.0f64, |a, b| a.max(b.abs()));

        Tableau {
            m,
            k,
            t,
            beta,
            basic,
            nonbasic,
            obj,
            obj0,
            aux,
            aux0,
            free,
            flipped: vec![false; total],
            artificial_base,
            has_artificials,
            rhs_scale,
            iterations: 0,
        }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.artificial_base
    }

    fn reduced(&self, phase: Phase) -> &[f64] {
        match phase {
            Phase::One => &self.aux,
            Phase::Two => &self.obj,
        }
    }

    fn choose_entering(&self, phase: Phase, tol: f64, bland: bool) -> Option<usize> {
        let d = self.reduced(phase);
        let mut best: Option<(usize, f64)> = None;
        for c in 0..self.k {
            let var = self.nonbasic[c];
            if self.is_artificial(var) {
                continue;
            }
            let gain = if self.free[var] { d[c].abs() } else { d[c] };
            if gain <= tol {
                continue;
            }
            best = match best {
                None => Some((c, gain)),
                Some((bc, bg)) => {
                    let better = if bland {
                        var < self.nonbasic[bc]
                    } else {
                        gain > bg
                    };
                    if better {
                        Some((c, gain))
                    } else {
                        Some((bc, bg))
                    }
                }
            };
        }
        best.map(|(c, _)| c)
    }

    fn flip_column(&mut self, c: usize) {
        let k = self.k;
        for r in 0..self.m {
            self.t[r * k + c] = -self.t[r * k + c];
        }
        self.obj[c] = -self.obj[c];
        self.aux[c] = -self.aux[c];
        let var = self.nonbasic[c];
        self.flipped[var] = !self.flipped[var];
    }

    /// Returns the leaving row and the step length, or `None` if the column is unbounded.
    fn ratio_test(&self, c: usize, tol: f64, bland: bool) -> Option<(usize, f64)> {
        let k = self.k;
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.m {
            if self.free[self.basic[r]] {
                continue;
            }
            let a = self.t[r * k + c];
            if a <= tol {
                continue;
            }
            let ratio = self.beta[r].max(0.0) / a;
            best = match best {
                None => Some((r, ratio)),
                Some((br, bratio)) => {
                    let slack = 1e-12 * (1.0 + bratio.abs());
                    if ratio < bratio - slack {
                        Some((r, ratio))
                    } else if ratio <= bratio + slack {
                        let better = if bland {
                            self.basic[r] < self.basic[br]
                        } else {
                            a > self.t[br * k + c]
                        };
                        if better {
                            Some((r, ratio.min(bratio)))
                        } else {
                            Some((br, bratio))
                        }
                    } else {
                        Some((br, bratio))
                    }
                }
            };
        }
        best
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let k = self.k;
        let p = self.t[r * k + c];
        let inv = 1.0 / p;

        let (before, rest) = self.t.split_at_mut(r * k);
        let (prow, after) = rest.split_at_mut(k);
        for (j, v) in prow.iter_mut().enumerate() {
            if j == c {
                *v = inv;
            } else {
                *v *= inv;
            }
        }
        self.beta[r] *= inv;
        let beta_r = self.beta[r];

        // Constraint rows read x_B = beta - T.x_N while objective rows read
        // w = w0 + d.x_N, so the constant moves in opposite directions.
        let update = |row: &mut [f64], constant: &mut f64, sign: f64| {
            let factor = row[c];
            if factor == 0.0 {
                return;
            }
            for (j, v) in row.iter_mut().enumerate() {
                if j == c {
                    *v = -factor * inv;
                } else {
                    *v -= factor * prow[j];
                }
            }
            *constant -= sign * factor * beta_r;
        };
        let (beta_before, beta_rest) = self.beta.split_at_mut(r);
        for (i, row) in before.chunks_exact_mut(k).enumerate() {
            update(row, &mut beta_before[i], 1.0);
        }
        for (i, row) in after.chunks_exact_mut(k).enumerate() {
            update(row, &mut beta_rest[i + 1], 1.0);
        }
        update(&mut self.obj, &mut self.obj0, -1.0);
        update(&mut self.aux, &mut self.aux0, -1.0);

        for b in self.beta.iter_mut() {
            if *b < 0.0 && *b > -1e-11 {
                *b = 0.0;
            }
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[c]);
        self.iterations += 1;
    }

    fn run(&mut self, phase: Phase, cfg: &DenseSimplex, limit: usize) -> Result<Outcome, LpError> {
        let mut degenerate_run = 0usize;
        loop {
            if self.iterations >= limit {
                return Err(LpError::IterationLimit(limit));
            }
            let bland = degenerate_run >= cfg.degenerate_limit;
            let Some(c) = self.choose_entering(phase, cfg.optimality_tol, bland) else {
                return Ok(Outcome::Optimal);
            };
            if self.free[self.nonbasic[c]] && self.reduced(phase)[c] < 0.0 {
                self.flip_column(c);
            }
            let Some((r, step)) = self.ratio_test(c, cfg.pivot_tol, bland) else {
                return Ok(Outcome::Unbounded);
            };
            if step <= 1e-12 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, c);
        }
    }

    /// Pivots zero-level artificials out of the basis; rows where that is
    /// impossible are redundant and dropped.
    fn drive_out_artificials(&mut self, tol: f64) {
        let mut r = 0;
        while r < self.m {
            if !self.is_artificial(self.basic[r]) {
                r += 1;
                continue;
            }
            self.beta[r] = 0.0;
            let k = self.k;
            let mut best: Option<(usize, f64)> = None;
            for c in 0..k {
                if self.is_artificial(self.nonbasic[c]) {
                    continue;
                }
                let a = self.t[r * k + c].abs();
                if a > tol && best.is_none_or(|(_, b)| a > b) {
                    best = Some((c, a));
                }
            }
            match best {
                Some((c, _)) => {
                    self.pivot(r, c);
                    r += 1;
                }
                None => self.remove_row(r),
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        let k = self.k;
        self.t.drain(r * k..(r + 1) * k);
        self.beta.remove(r);
        self.basic.remove(r);
        self.m -= 1;
    }
}
