//! Integer points of a box cut out by rational linear equalities and
//! inequalities.
//!
//! The equalities are put in reduced echelon form; the widest variables are
//! chosen as pivots and are solved for exactly, so only the remaining free
//! variables are branched on. Every constraint is rewritten over the free
//! variables and used to narrow the range of the next branching variable.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{lcm_of_denominators, Rational};
use crate::error::{GkzError, Result};
use crate::linalg::rref_with_order;

#[derive(Debug, Clone)]
pub struct BoxSystem {
    lo: Vec<i64>,
    hi: Vec<i64>,
    equalities: Vec<(Vec<Rational>, Rational)>,
    inequalities: Vec<(Vec<Rational>, Rational)>,
}

/// One integer linear form over the free variables, with a target range.
#[derive(Debug, Clone)]
struct Form {
    coef: Vec<i128>,
    constant: i128,
    lo: i128,
    hi: i128,
}

#[derive(Debug)]
struct Pivot {
    var: usize,
    form: usize,
    den: i128,
}

impl BoxSystem {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> BoxSystem {
        assert_eq!(lo.len(), hi.len());
        BoxSystem {
            lo,
            hi,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Adds the constraint `row · x = rhs`.
    pub fn equal(mut self, row: Vec<Rational>, rhs: Rational) -> BoxSystem {
        assert_eq!(row.len(), self.dim());
        self.equalities.push((row, rhs));
        self
    }

    /// Adds the constraint `row · x ≥ rhs`.
    pub fn at_least(mut self, row: Vec<Rational>, rhs: Rational) -> BoxSystem {
        assert_eq!(row.len(), self.dim());
        self.inequalities.push((row, rhs));
        self
    }

    /// All solutions, sorted lexicographically. `max_nodes` bounds the search tree.
    pub fn points(&self, max_nodes: u64) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.for_each(max_nodes, |x| {
            out.push(x.to_vec());
            true
        })?;
        out.sort();
        Ok(out)
    }

    pub fn count(&self, max_nodes: u64) -> Result<u64> {
        let mut n = 0u64;
        self.for_each(max_nodes, |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }

    /// Calls `visit` on every solution (in search order, not sorted) until it
    /// returns `false`.
    pub fn for_each(&self, max_nodes: u64, mut visit: impl FnMut(&[i64]) -> bool) -> Result<()> {
        let n = self.dim();
        if (0..n).any(|i| self.lo[i] > self.hi[i]) {
            return Ok(());
        }
        let Some(plan) = self.plan()? else {
            return Ok(());
        };
        let mut search = Search {
            sys: self,
            plan: &plan,
            x: self.lo.clone(),
            sums: plan.forms.iter().map(|f| f.constant).collect(),
            nodes: 0,
            max_nodes,
            stop: false,
        };
        search.descend(0, &mut visit)
    }

    fn plan(&self) -> Result<Option<Plan>> {
        let n = self.dim();
        let width = |i: usize| self.hi[i] as i128 - self.lo[i] as i128;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(width(i)), i));
        order.push(n);
        let aug: Vec<Vec<Rational>> = self
            .equalities
            .iter()
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect();
        let (red, piv) = rref_with_order(&aug, &order);
        if piv.contains(&n) {
            return Ok(None);
        }
        let free: Vec<usize> = (0..n).filter(|i| !piv.contains(i)).collect();
        // pivot variable x_p = f - Σ m_j x_j, as rational expressions over the free variables
        let pivot_expr: Vec<(usize, Vec<Rational>, Rational)> = red
            .iter()
            .zip(&piv)
            .map(|(row, &p)| {
                let m: Vec<Rational> = free.iter().map(|&j| -row[j].clone()).collect();
                (p, m, row[n].clone())
            })
            .collect();

        let mut forms = Vec::new();
        let mut pivots = Vec::new();
        for (p, m, c) in &pivot_expr {
            let den = lcm_of_denominators(m.iter().chain(std::iter::once(c)));
            let den_r = Rational::from_integer(den.clone());
            let coef = m
                .iter()
                .map(|x| to_i128(&(x * &den_r)))
                .collect::<Result<Vec<_>>>()?;
            let d = to_i128_int(&den)?;
            forms.push(Form {
                coef,
                constant: to_i128(&(c * &den_r))?,
                lo: d * self.lo[*p] as i128,
                hi: d * self.hi[*p] as i128,
            });
            pivots.push(Pivot {
                var: *p,
                form: forms.len() - 1,
                den: d,
            });
        }
        for (row, rhs) in &self.inequalities {
            let mut m: Vec<Rational> = free.iter().map(|&j| row[j].clone()).collect();
            let mut c = Rational::zero();
            for (p, pm, pc) in &pivot_expr {
                if row[*p].is_zero() {
                    continue;
                }
                for (mj, x) in m.iter_mut().zip(pm) {
                    *mj += &row[*p] * x;
                }
                c += &row[*p] * pc;
            }
            let target = rhs - &c;
            let den = lcm_of_denominators(m.iter().chain(std::iter::once(&target)));
            let den_r = Rational::from_integer(den);
            let coef = m
                .iter()
                .map(|x| to_i128(&(x * &den_r)))
                .collect::<Result<Vec<_>>>()?;
            if coef.iter().all(|&c| c == 0) {
                if target > Rational::zero() {
                    return Ok(None);
                }
                continue;
            }
            forms.push(Form {
                coef,
                constant: 0,
                lo: to_i128(&(target * &den_r))?,
                hi: i128::MAX,
            });
        }

        // suffix extremes of each form over the not-yet-assigned free variables
        let k = free.len();
        let mut suffix_min = vec![vec![0i128; k + 1]; forms.len()];
        let mut suffix_max = vec![vec![0i128; k + 1]; forms.len()];
        for (fi, f) in forms.iter().enumerate() {
            for t in (0..k).rev() {
                let j = free[t];
                let a = f.coef[t] * self.lo[j] as i128;
                let b = f.coef[t] * self.hi[j] as i128;
                suffix_min[fi][t] = suffix_min[fi][t + 1] + a.min(b);
                suffix_max[fi][t] = suffix_max[fi][t + 1] + a.max(b);
            }
        }
        Ok(Some(Plan {
            free,
            forms,
            pivots,
            suffix_min,
            suffix_max,
        }))
    }
}

struct Plan {
    free: Vec<usize>,
    forms: Vec<Form>,
    pivots: Vec<Pivot>,
    suffix_min: Vec<Vec<i128>>,
    suffix_max: Vec<Vec<i128>>,
}

struct Search<'a> {
    sys: &'a BoxSystem,
    plan: &'a Plan,
    x: Vec<i64>,
    sums: Vec<i128>,
    nodes: u64,
    max_nodes: u64,
    stop: bool,
}

impl Search<'_> {
    fn descend(&mut self, t: usize, visit: &mut impl FnMut(&[i64]) -> bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(GkzError::cap("lattice search nodes", self.max_nodes));
        }
        let plan = self.plan;
        if t == plan.free.len() {
            for pv in &plan.pivots {
                let num = self.sums[pv.form];
                if num % pv.den != 0 {
                    return Ok(());
                }
                self.x[pv.var] = (num / pv.den) as i64;
            }
            if !visit(&self.x) {
                self.stop = true;
            }
            return Ok(());
        }
        let j = plan.free[t];
        let mut lo = self.sys.lo[j] as i128;
        let mut hi = self.sys.hi[j] as i128;
        for (fi, f) in plan.forms.iter().enumerate() {
            let c = f.coef[t];
            let s = self.sums[fi];
            let rest_lo = plan.suffix_min[fi][t + 1];
            let rest_hi = plan.suffix_max[fi][t + 1];
            // f.lo ≤ s + c x + rest ≤ f.hi
            let need_lo = f.lo.saturating_sub(s).saturating_sub(rest_hi);
            let need_hi = f.hi.saturating_sub(s).saturating_sub(rest_lo);
            if c == 0 {
                if need_lo > 0 || need_hi < 0 {
                    return Ok(());
                }
                continue;
            }
            let (a, b) = if c > 0 {
                (ceil_div(need_lo, c), Integer::div_floor(&need_hi, &c))
            } else {
                (ceil_div(need_hi, c), Integer::div_floor(&need_lo, &c))
            };
            lo = lo.max(a);
            hi = hi.min(b);
            if lo > hi {
                return Ok(());
            }
        }
        for v in lo..=hi {
            self.x[j] = v as i64;
            for (fi, f) in plan.forms.iter().enumerate() {
                self.sums[fi] += f.coef[t] * v;
            }
            let r = self.descend(t + 1, visit);
            for (fi, f) in plan.forms.iter().enumerate() {
                self.sums[fi] -= f.coef[t] * v;
            }
            r?;
            if self.stop {
                break;
            }
        }
        Ok(())
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

fn to_i128(x: &Rational) -> Result<i128> {
    debug_assert!(x.is_integer());
    to_i128_int(x.numer())
}

fn to_i128_int(x: &num_bigint::BigInt) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.unsigned_abs() < 1u128 << 100)
        .ok_or_else(|| GkzError::Overflow("lattice constraint coefficient".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn brute(sys: &BoxSystem, check: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
        let n = sys.dim();
        let mut out = Vec::new();
        let mut x = sys.lo.clone();
        loop {
            if check(&x) {
                out.push(x.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if x[i] < sys.hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = sys.lo[i];
            }
        }
    }

    #[test]
    fn digit_equations_of_example_one() {
        // 3 s1 + 2 s3 = 2, 3 s2 + 2 s3 = 2 with s in [0, 2]^3
        let sys = BoxSystem::new(vec![0; 3], vec![2; 3])
            .equal(vec![int(3), int(0), int(2)], int(2))
            .equal(vec![int(0), int(3), int(2)], int(2));
        assert_eq!(sys.points(1000).unwrap(), vec![vec![0, 0, 1]]);
    }

    #[test]
    fn matches_brute_force() {
        let sys = BoxSystem::new(vec![-3, -2, 0, -1], vec![3, 4, 5, 2])
            .equal(vec![int(1), int(2), int(-1), int(3)], int(1))
            .at_least(vec![rat(1, 2), int(1), int(0), int(-1)], rat(-1, 3));
        let expect = brute(&sys, |x| {
            x[0] + 2 * x[1] - x[2] + 3 * x[3] == 1 && 3 * x[0] + 6 * x[1] - 6 * x[3] >= -2
        });
        assert_eq!(sys.points(100_000).unwrap(), expect);
        assert!(!expect.is_empty());
    }

    #[test]
    fn rational_equalities_and_empty_cases() {
        let sys = BoxSystem::new(vec![0, 0], vec![5, 5]).equal(vec![int(2), int(2)], int(3));
        assert!(sys.points(100).unwrap().is_empty());
        let sys = BoxSystem::new(vec![0, 0], vec![5, 5])
            .equal(vec![int(1), int(1)], int(3))
            .equal(vec![int(2), int(2)], int(7));
        assert!(sys.points(100).unwrap().is_empty());
        let sys = BoxSystem::new(vec![0], vec![4]).equal(vec![rat(1, 2)], int(1));
        assert_eq!(sys.points(100).unwrap(), vec![vec![2]]);
    }

    #[test]
    fn node_cap_is_reported() {
        let sys = BoxSystem::new(vec![0; 4], vec![9; 4]);
        assert!(matches!(sys.points(50), Err(GkzError::CapExceeded { .. })));
        assert_eq!(sys.count(100_000).unwrap(), 10_000);
    }
}
