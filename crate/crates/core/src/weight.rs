//! The weight function on `R`, digit-shift orbits, and the finite sets
//! `R_{β,b}`.
//!
//! For a p-integral `r ∈ [-1, 0]^N` choose `a` with `s = (1 - p^a) r` integral;
//! then `w(r) = w_p(s) / a`, independent of the choice of `a`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    int, is_integer, lcm_of_denominators, multiplicative_order, p_weight, p_weight_u64,
    serde_rational, DigitVector, Prime, Rational,
};
use crate::error::{GkzError, Result};
use crate::gkz::Configuration;
use crate::lattice::BoxSystem;
use crate::limits::Limits;

/// `w(r)` together with the digit source `s = (1 - p^a) r` it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    #[serde(with = "serde_rational")]
    pub w: Rational,
    pub s: Vec<String>,
    pub a: u32,
}

fn check_entries(r: &[Rational], p: Prime) -> Result<()> {
    for (i, x) in r.iter().enumerate() {
        if x.is_positive() || *x < -Rational::one() {
            return Err(GkzError::invalid(format!(
                "entry {i} = {x} is outside [-1, 0]"
            )));
        }
        if (x.denom() % p.big()).is_zero() {
            return Err(GkzError::NotPIntegral {
                what: format!("entry {i} = {x}"),
                p: p.get(),
            });
        }
    }
    Ok(())
}

/// The least `a ≥ 1` with `(1 - p^a) r` integral: the order of `p` modulo the
/// lcm of the denominators.
pub fn normalization_exponent(r: &[Rational], p: Prime) -> Result<u32> {
    check_entries(r, p)?;
    multiplicative_order(p, &lcm_of_denominators(r))
}

/// `s = (1 - p^a) r` as nonnegative integers; errors if `a` is not admissible.
pub fn digit_source(r: &[Rational], p: Prime, a: u32) -> Result<Vec<BigInt>> {
    check_entries(r, p)?;
    let m = Rational::from_integer(BigInt::one() - p.pow(a));
    r.iter()
        .map(|x| {
            let s = x * &m;
            if is_integer(&s) {
                Ok(s.to_integer())
            } else {
                Err(GkzError::invalid(format!(
                    "(1 - {p}^{a}) * {x} is not an integer"
                )))
            }
        })
        .collect()
}

pub fn weight_with_exponent(r: &[Rational], p: Prime, a: u32) -> Result<Rational> {
    let s = digit_source(r, p, a)?;
    let total: u64 = s.iter().map(|t| p_weight(t, p)).sum::<Result<u64>>()?;
    Ok(Rational::new(total.into(), a.into()))
}

pub fn weight(r: &[Rational], p: Prime) -> Result<WeightReport> {
    let a = normalization_exponent(r, p)?;
    let s = digit_source(r, p, a)?;
    let total: u64 = s.iter().map(|t| p_weight(t, p)).sum::<Result<u64>>()?;
    Ok(WeightReport {
        w: Rational::new(total.into(), a.into()),
        s: s.iter().map(|t| t.to_string()).collect(),
        a,
    })
}

/// `r^{(k)}`: rotate the base-p digits of `(1 - p^a) r` by `k` places.
pub fn shift_r(r: &[Rational], p: Prime, k: u64) -> Result<Vec<Rational>> {
    let a = normalization_exponent(r, p)?;
    shift_r_with_exponent(r, p, a, k)
}

pub fn shift_r_with_exponent(r: &[Rational], p: Prime, a: u32, k: u64) -> Result<Vec<Rational>> {
    let s = digit_source(r, p, a)?;
    let den = Rational::from_integer(BigInt::one() - p.pow(a));
    s.iter()
        .map(|t| {
            let rotated = DigitVector::from_int(t, p, a)?.rotated(k).to_int();
            Ok(Rational::from_integer(rotated) / &den)
        })
        .collect()
}

/// One element of `R_{β,b}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct REntry {
    #[serde(with = "serde_rational::vec")]
    pub r: Vec<Rational>,
    /// `s = (q^b - 1)(-r)`.
    pub s: Vec<i64>,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

/// Checks that `(p^a - 1) β` is integral.
pub fn check_beta(beta: &[Rational], p: Prime, a: u32) -> Result<()> {
    let m = Rational::from_integer(p.pow(a) - 1);
    if let Some((i, x)) = beta.iter().enumerate().find(|(_, x)| !is_integer(&(*x * &m))) {
        return Err(GkzError::invalid(format!(
            "beta entry {i} = {x} is not compatible with a = {a} (times {p}^{a} - 1 is not integral)"
        )));
    }
    Ok(())
}

/// All `r ∈ R_β` with `(1 - q^b) r` integral, `q = p^a`, sorted lexicographically.
///
/// Solves `Σ s_i a_i = -(q^b - 1) β` over `s ∈ [0, q^b - 1]^N` exactly.
pub fn enumerate_r_beta_b(
    config: &Configuration,
    beta: &[Rational],
    p: Prime,
    a: u32,
    b: u32,
    limits: &Limits,
) -> Result<Vec<REntry>> {
    if beta.len() != config.dim() {
        return Err(GkzError::invalid(format!(
            "beta has {} entries, configuration dimension is {}",
            beta.len(),
            config.dim()
        )));
    }
    check_beta(beta, p, a)?;
    let qb = limits.q_power(p, a, b)?;
    let m = qb as i64 - 1;
    let mr = int(m);
    let n = config.num_columns();
    let mut sys = BoxSystem::new(vec![0; n], vec![m; n]);
    for (row, bi) in config.rows().into_iter().zip(beta) {
        sys = sys.equal(row, -(bi * &mr));
    }
    let ab = u64::from(a) * u64::from(b);
    let mut out: Vec<REntry> = sys
        .points(limits.max_nodes)?
        .into_iter()
        .map(|s| {
            let total: u64 = s.iter().map(|&t| p_weight_u64(t as u64, p.get())).sum();
            REntry {
                r: s.iter().map(|&t| Rational::new((-t).into(), m.into())).collect(),
                weight: Rational::new(total.into(), ab.into()),
                s,
            }
        })
        .collect();
    out.sort_by(|x, y| x.r.cmp(&y.r));
    Ok(out)
}

/// `w(R_{β,b})` and the elements attaining it.
pub fn w_r_beta_b(
    config: &Configuration,
    beta: &[Rational],
    p: Prime,
    a: u32,
    b: u32,
    limits: &Limits,
) -> Result<(Rational, Vec<Vec<Rational>>)> {
    let all = enumerate_r_beta_b(config, beta, p, a, b, limits)?;
    let min = all
        .iter()
        .map(|e| e.weight.clone())
        .min()
        .ok_or_else(|| GkzError::EmptySet(format!("R_(beta,{b}) for p = {p}, a = {a}")))?;
    let argmin = all
        .into_iter()
        .filter(|e| e.weight == min)
        .map(|e| e.r)
        .collect();
    Ok((min, argmin))
}

/// `l = (1 - q^b)(r - v)` with `q = p^a`.
pub fn lemma_2_3_map(r: &[Rational], v: &[Rational], p: Prime, a: u32, b: u32) -> Result<Vec<i64>> {
    let m = Rational::from_integer(BigInt::one() - p.pow(a * b));
    r.iter()
        .zip(v)
        .map(|(x, y)| {
            let l = (x - y) * &m;
            if !is_integer(&l) {
                return Err(GkzError::invalid(format!(
                    "(1 - q^b)(r - v) has non-integral entry {l}"
                )));
            }
            crate::arith::to_i64(&l.to_integer(), "lattice vector entry")
        })
        .collect()
}

/// `r = v + (1 - q^b)^{-1} l`.
pub fn lemma_2_3_inverse(l: &[i64], v: &[Rational], p: Prime, a: u32, b: u32) -> Vec<Rational> {
    let m = Rational::from_integer(BigInt::one() - p.pow(a * b));
    v.iter().zip(l).map(|(x, &y)| x + int(y) / &m).collect()
}

/// The shift data of `β`: a canonical `r ∈ R_β`, the representatives
/// `β^{(k)} = Σ r_i^{(k)} a_i`, and the period `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftOrbit {
    #[serde(with = "serde_rational::vec")]
    pub witness: Vec<Rational>,
    /// Exponent `a` of the witness (so `r^{(a)} = r`).
    pub a: u32,
    pub betas: Vec<Vec<String>>,
    pub e: u32,
    #[serde(skip)]
    pub beta_shifts: Vec<Vec<Rational>>,
}

/// The lexicographically least element of the first nonempty `R_{β,b}`, `b ≤ b_max`.
pub fn canonical_witness(
    config: &Configuration,
    beta: &[Rational],
    p: Prime,
    a: u32,
    b_max: u32,
    limits: &Limits,
) -> Result<Vec<Rational>> {
    for b in 1..=b_max {
        let all = enumerate_r_beta_b(config, beta, p, a, b, limits)?;
        if let Some(first) = all.into_iter().next() {
            return Ok(first.r);
        }
    }
    Err(GkzError::NotFound(format!(
        "no element of R_beta with b <= {b_max}"
    )))
}

pub fn shift_orbit(config: &Configuration, witness: &[Rational], p: Prime) -> Result<ShiftOrbit> {
    let a = normalization_exponent(witness, p)?;
    let beta_shifts: Vec<Vec<Rational>> = (0..a)
        .map(|k| Ok(config.combine(&shift_r_with_exponent(witness, p, a, k as u64)?)))
        .collect::<Result<_>>()?;
    let base = &beta_shifts[0];
    let e = (1..=a)
        .find(|&k| {
            let bk = &beta_shifts[(k % a) as usize];
            bk.iter().zip(base).all(|(x, y)| is_integer(&(x - y)))
        })
        .expect("k = a always returns to beta");
    Ok(ShiftOrbit {
        witness: witness.to_vec(),
        a,
        betas: beta_shifts
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect())
            .collect(),
        e,
        beta_shifts,
    })
}

/// The period `e`: least `k ≥ 1` with `β^{(k)} ≡ β (mod ℤ^n)`.
pub fn period_e(
    config: &Configuration,
    beta: &[Rational],
    p: Prime,
    a: u32,
    b_max: u32,
    limits: &Limits,
) -> Result<u32> {
    let r = canonical_witness(config, beta, p, a, b_max, limits)?;
    Ok(shift_orbit(config, &r, p)?.e)
}

/// For `Σ r_i = -1`, returns `w(r) - (p - 1)`, which is never negative.
pub fn sum_minus_one_bound_check(r: &[Rational], p: Prime) -> Result<Rational> {
    let total: Rational = r.iter().sum();
    if total != int(-1) {
        return Err(GkzError::invalid(format!(
            "entries sum to {total}, expected -1"
        )));
    }
    let w = weight(r, p)?.w;
    Ok(w - p.minus_one())
}

/// Given the base-p digits `s_i` of `s = Σ t_i p^i` (with any `t_i ≥ 0`), checks
/// both prefix inequalities `Σ_{j≤i} s_j ≤ Σ_{j≤i} t_j` and
/// `Σ_{j≤i} s_j p^j ≤ Σ_{j≤i} t_j p^j` for every `i < t.len()`.
pub fn prefix_inequalities_hold(t: &[u64], p: Prime) -> bool {
    let pb = BigInt::from(p.get());
    let s: BigInt = t
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &x| acc * &pb + BigInt::from(x));
    let mut rest = s;
    let (mut sum_s, mut sum_t) = (BigInt::zero(), BigInt::zero());
    let (mut pow_s, mut pow_t) = (BigInt::zero(), BigInt::zero());
    let mut pk = BigInt::one();
    for &ti in t {
        let si = &rest % &pb;
        rest /= &pb;
        sum_s += &si;
        sum_t += ti;
        pow_s += &si * &pk;
        pow_t += BigInt::from(ti) * &pk;
        if sum_s > sum_t || pow_s > pow_t {
            return false;
        }
        pk *= &pb;
    }
    true
}

/// Minimum of `w` over `R_{γ, ab}` computed digit by digit with carries, as an
/// independent check of the lattice enumeration. Returns `None` when the set is empty.
///
/// Writing `s_i = Σ_k d_{k,i} q^k` with `q = p^a`, the constraint
/// `Σ s_i a_i = (q^b - 1)(-γ)` is processed from the least significant block:
/// `c_0 = (q^b - 1)(-γ)`, `c_{k+1} = (c_k - Σ_i d_{k,i} a_i) / q`, and `c_b = 0`.
pub fn min_weight_by_carries(
    config: &Configuration,
    gamma: &[Rational],
    p: Prime,
    a: u32,
    b: u32,
    limits: &Limits,
) -> Result<Option<Rational>> {
    let q = limits.q_power(p, a, 1)? as i64;
    let qb = limits.q_power(p, a, b)? as i64;
    let target: Vec<i64> = gamma
        .iter()
        .map(|x| {
            let t = -(x * int(qb - 1));
            if is_integer(&t) {
                t.to_integer()
                    .to_i64()
                    .ok_or_else(|| GkzError::Overflow("carry target".into()))
            } else {
                Err(GkzError::invalid(format!(
                    "gamma entry {x} incompatible with q^b - 1 = {}",
                    qb - 1
                )))
            }
        })
        .collect::<Result<_>>()?;
    let n = config.dim();
    let cols = config.columns();
    // every block digit vector with its image and weight
    let big_n = cols.len();
    let count = (q as u64)
        .checked_pow(big_n as u32)
        .filter(|&c| c <= limits.max_cells)
        .ok_or_else(|| GkzError::cap("digit block vectors", limits.max_cells))?;
    let mut blocks: Vec<(Vec<i64>, u64)> = Vec::with_capacity(count as usize);
    let mut d = vec![0i64; big_n];
    loop {
        let mut img = vec![0i64; n];
        let mut w = 0u64;
        for (di, col) in d.iter().zip(cols) {
            w += p_weight_u64(*di as u64, p.get());
            for (o, &x) in img.iter_mut().zip(col) {
                *o += di * x;
            }
        }
        blocks.push((img, w));
        let mut i = 0;
        while i < big_n && d[i] == q - 1 {
            d[i] = 0;
            i += 1;
        }
        if i == big_n {
            break;
        }
        d[i] += 1;
    }
    // carries stay within (q^b - 1)/(q - 1) times the per-coordinate column ranges
    let mut layer: std::collections::HashMap<Vec<i64>, u64> = std::collections::HashMap::new();
    layer.insert(target, 0);
    for _ in 0..b {
        let mut next: std::collections::HashMap<Vec<i64>, u64> = std::collections::HashMap::new();
        for (c, w) in &layer {
            for (img, bw) in &blocks {
                let mut nc = Vec::with_capacity(n);
                let mut ok = true;
                for (x, y) in c.iter().zip(img) {
                    let diff = x - y;
                    if diff % q != 0 {
                        ok = false;
                        break;
                    }
                    nc.push(diff / q);
                }
                if !ok {
                    continue;
                }
                let nw = w + bw;
                let e = next.entry(nc).or_insert(u64::MAX);
                if nw < *e {
                    *e = nw;
                }
            }
        }
        if next.len() as u64 > limits.max_cells {
            return Err(GkzError::cap("carry states", limits.max_cells));
        }
        layer = next;
    }
    let zero = vec![0i64; n];
    Ok(layer
        .get(&zero)
        .map(|&w| Rational::new(w.into(), (u64::from(a) * u64::from(b)).into())))
}
