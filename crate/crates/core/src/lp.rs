//! Exact two-phase simplex over the rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Var {
    NonNegative,
    Free,
    Between(Rational, Rational),
}

/// `minimize c·x` subject to row constraints and per-variable domains.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    vars: Vec<Var>,
    rows: Vec<(Vec<Rational>, Cmp, Rational)>,
    objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(vars: Vec<Var>) -> LinearProgram {
        let n = vars.len();
        LinearProgram {
            vars,
            rows: Vec::new(),
            objective: vec![Rational::zero(); n],
        }
    }

    pub fn nonnegative(n: usize) -> LinearProgram {
        LinearProgram::new(vec![Var::NonNegative; n])
    }

    pub fn constrain(&mut self, row: Vec<Rational>, cmp: Cmp, rhs: Rational) -> &mut Self {
        assert_eq!(row.len(), self.vars.len());
        self.rows.push((row, cmp, rhs));
        self
    }

    pub fn objective(&mut self, c: Vec<Rational>) -> &mut Self {
        assert_eq!(c.len(), self.vars.len());
        self.objective = c;
        self
    }

    pub fn minimize(&self) -> LpOutcome {
        self.solve(false)
    }

    pub fn maximize(&self) -> LpOutcome {
        match self.solve(true) {
            LpOutcome::Optimal { value, x } => LpOutcome::Optimal { value: -value, x },
            other => other,
        }
    }

    fn solve(&self, negate: bool) -> LpOutcome {
        // column layout in standard form: one or two columns per variable, then slacks
        let mut cols: Vec<(usize, Rational)> = Vec::new(); // (original var, sign)
        let mut offset = vec![Rational::zero(); self.vars.len()];
        let mut extra_rows: Vec<(Vec<(usize, Rational)>, Rational)> = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            match v {
                Var::NonNegative => cols.push((i, Rational::one())),
                Var::Free => {
                    cols.push((i, Rational::one()));
                    cols.push((i, -Rational::one()));
                }
                Var::Between(lo, hi) => {
                    if lo > hi {
                        return LpOutcome::Infeasible;
                    }
                    offset[i] = lo.clone();
                    cols.push((i, Rational::one()));
                    extra_rows.push((vec![(cols.len() - 1, Rational::one())], hi - lo));
                }
            }
        }
        let structural = cols.len();
        let mut a: Vec<Vec<Rational>> = Vec::new();
        let mut b: Vec<Rational> = Vec::new();
        let mut slack_rows: Vec<(usize, Rational)> = Vec::new();
        for (row, cmp, rhs) in &self.rows {
            let mut r = vec![Rational::zero(); structural];
            for (j, (var, sign)) in cols.iter().enumerate() {
                r[j] = &row[*var] * sign;
            }
            let shift: Rational = row.iter().zip(&offset).map(|(x, o)| x * o).sum();
            match cmp {
                Cmp::Le => slack_rows.push((a.len(), Rational::one())),
                Cmp::Ge => slack_rows.push((a.len(), -Rational::one())),
                Cmp::Eq => {}
            }
            a.push(r);
            b.push(rhs - shift);
        }
        for (entries, rhs) in extra_rows {
            let mut r = vec![Rational::zero(); structural];
            for (j, x) in entries {
                r[j] = x;
            }
            slack_rows.push((a.len(), Rational::one()));
            a.push(r);
            b.push(rhs);
        }
        let total = structural + slack_rows.len();
        for row in a.iter_mut() {
            row.resize(total, Rational::zero());
        }
        for (k, (ri, sign)) in slack_rows.into_iter().enumerate() {
            a[ri][structural + k] = sign;
        }
        let mut c = vec![Rational::zero(); total];
        for (j, (var, sign)) in cols.iter().enumerate() {
            c[j] = &self.objective[*var] * sign;
            if negate {
                c[j] = -c[j].clone();
            }
        }
        let const_term: Rational = self
            .objective
            .iter()
            .zip(&offset)
            .map(|(x, o)| x * o)
            .sum::<Rational>();
        match simplex_standard(&c, &a, &b) {
            LpOutcome::Optimal { value, x: y } => {
                let mut x = offset.clone();
                for (j, (var, sign)) in cols.iter().enumerate() {
                    x[*var] += &y[j] * sign;
                }
                let value = if negate {
                    value - &const_term
                } else {
                    value + &const_term
                };
                LpOutcome::Optimal { value, x }
            }
            other => other,
        }
    }
}

/// `minimize c·x` subject to `A x = b`, `x ≥ 0`.
pub fn simplex_standard(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    // tableau rows: [A | I | b], artificial basis
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Rational> = a[i]
            .iter()
            .map(|x| if neg { -x.clone() } else { x.clone() })
            .collect();
        row.resize(n + m, Rational::zero());
        row[n + i] = Rational::one();
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: minimise the sum of artificials
    let mut cost = vec![Rational::zero(); n + m];
    for x in cost.iter_mut().skip(n) {
        *x = Rational::one();
    }
    if let Phase::Unbounded = run(&mut t, &mut basis, &cost, n + m) {
        unreachable!("phase one is bounded below by zero");
    }
    let infeas: Rational = basis
        .iter()
        .zip(&t)
        .filter(|(&bv, _)| bv >= n)
        .map(|(_, row)| row[n + m].clone())
        .sum();
    if !infeas.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    let mut cost = c.to_vec();
    cost.resize(n + m, Rational::zero());
    match run(&mut t, &mut basis, &cost, n) {
        Phase::Unbounded => LpOutcome::Unbounded,
        Phase::Optimal => {
            let mut x = vec![Rational::zero(); n];
            for (row, &bv) in t.iter().zip(&basis) {
                if bv < n {
                    x[bv] = row[n + m].clone();
                }
            }
            let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
            LpOutcome::Optimal { value, x }
        }
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

/// Primal simplex iterations; columns `>= allowed` may not enter.
fn run(t: &mut [Vec<Rational>], basis: &mut [usize], cost: &[Rational], allowed: usize) -> Phase {
    let rhs = t.first().map_or(0, |r| r.len() - 1);
    loop {
        // reduced cost d_j = c_j - Σ_i c_{B(i)} t_ij; Bland: smallest index with d_j < 0
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut d = cost[j].clone();
            for (row, &bv) in t.iter().zip(basis.iter()) {
                if !cost[bv].is_zero() && !row[j].is_zero() {
                    d -= &cost[bv] * &row[j];
                }
            }
            d.is_negative()
        });
        let Some(j) = entering else {
            return Phase::Optimal;
        };
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = &row[rhs] / &row[j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = best else {
            return Phase::Unbounded;
        };
        pivot(t, basis, i, j);
    }
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], i: usize, j: usize) {
    let inv = t[i][j].recip();
    for x in t[i].iter_mut() {
        *x *= &inv;
    }
    let prow = t[i].clone();
    for (k, row) in t.iter_mut().enumerate() {
        if k != i && !row[j].is_zero() {
            let f = row[j].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    basis[i] = j;
}
