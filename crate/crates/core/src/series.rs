//! Truncated normalized series `Φ_{v,b}`, their exact coefficients and
//! valuations, the integrality verdict, and formal-solution checks.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{int, is_integer, ord_p, serde_rational, Prime, Rational, Valuation};
use crate::error::{GkzError, Result};
use crate::gkz::{l_vb_elements, nsupp, Configuration, LatticeBasis};
use crate::limits::Limits;
use crate::polytope::{corollary_3_5_bound, BoundReport};
use crate::weight::{
    lemma_2_3_inverse, normalization_exponent, w_r_beta_b, weight, weight_with_exponent,
};

/// `([v]_{l_-}, [v+l]_{l_+})`.
pub fn pochhammer_products(v: &[Rational], l: &[i64]) -> Result<(Rational, Rational)> {
    let mut falling = Rational::one();
    let mut rising = Rational::one();
    for (x, &li) in v.iter().zip(l) {
        if li < 0 {
            for j in 1..=-li {
                falling *= x - int(j - 1);
            }
        } else {
            for j in 1..=li {
                let f = x + int(j);
                if f.is_zero() {
                    return Err(GkzError::DegenerateTerm(format!(
                        "rising factor vanishes for l = {l:?}"
                    )));
                }
                rising *= f;
            }
        }
    }
    Ok((falling, rising))
}

/// `[v]_{l_-} / [v+l]_{l_+}`.
pub fn coefficient(v: &[Rational], l: &[i64]) -> Result<Rational> {
    let (f, r) = pochhammer_products(v, l)?;
    Ok(f / r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTerm {
    pub l: Vec<i64>,
    #[serde(with = "serde_rational::vec")]
    pub exponent: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
    pub pi_exponent: i64,
    #[serde(serialize_with = "serialize_valuation")]
    pub valuation: Valuation,
}

fn serialize_valuation<S: serde::Serializer>(v: &Valuation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The term of `Φ_v` at `l`, with valuation `ord_p(coeff) + Σ l_i / (p - 1)`.
pub fn term(v: &[Rational], l: &[i64], p: Prime) -> Result<SeriesTerm> {
    let coeff = coefficient(v, l)?;
    let pi_exponent: i64 = l.iter().sum();
    let valuation = match ord_p(&coeff, p) {
        Valuation::Finite(x) => Valuation::Finite(x + int(pi_exponent) / p.minus_one()),
        Valuation::Infinite => Valuation::Infinite,
    };
    Ok(SeriesTerm {
        l: l.to_vec(),
        exponent: v.iter().zip(l).map(|(x, &y)| x + int(y)).collect(),
        coeff,
        pi_exponent,
        valuation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    #[serde(with = "serde_rational::vec")]
    pub v: Vec<Rational>,
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub terms: Vec<SeriesTerm>,
}

impl TruncatedSeries {
    pub fn min_valuation(&self) -> Valuation {
        self.terms
            .iter()
            .map(|t| t.valuation.clone())
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    pub fn find(&self, l: &[i64]) -> Option<&SeriesTerm> {
        self.terms
            .binary_search_by(|t| t.l.as_slice().cmp(l))
            .ok()
            .map(|i| &self.terms[i])
    }
}

/// `Φ_{v,b}`: one term per `l ∈ L_{v,b}`, sorted by `l`.
pub fn truncate_phi(
    config: &Configuration,
    v: &[Rational],
    p: Prime,
    a: u32,
    b: u32,
    limits: &Limits,
) -> Result<TruncatedSeries> {
    let ls = l_vb_elements(config, v, p, a, b, limits)?;
    let terms = ls
        .iter()
        .map(|l| term(v, l, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries {
        v: v.to_vec(),
        p: p.get(),
        a,
        b,
        terms,
    })
}

/// `(ab/(p-1)) (w(v + (1 - q^b)^{-1} l) - w(v))`.
pub fn valuation_via_weights(v: &[Rational], l: &[i64], p: Prime, a: u32, b: u32) -> Result<Rational> {
    let r = lemma_2_3_inverse(l, v, p, a, b);
    if r.iter().any(|x| x.is_positive() || *x < -Rational::one()) || nsupp(&add(v, l)) != nsupp(v) {
        return Err(GkzError::invalid(format!("l = {l:?} is not in L_(v,{b})")));
    }
    let ab = a * b;
    let wr = weight_with_exponent(&r, p, ab)
        .map_err(|_| GkzError::invalid(format!("l = {l:?} is not in L_(v,{b})")))?;
    let wv = weight_with_exponent(v, p, ab)?;
    Ok(int(ab as i64) / p.minus_one() * (wr - wv))
}

fn add(v: &[Rational], l: &[i64]) -> Vec<Rational> {
    v.iter().zip(l).map(|(x, &y)| x + int(y)).collect()
}

/// One truncation level of the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub b: u32,
    #[serde(with = "serde_rational")]
    pub w_min: Rational,
    pub r_count: usize,
    #[serde(with = "serde_rational::vec")]
    pub argmin: Vec<Rational>,
    pub terms: usize,
    #[serde(serialize_with = "serialize_valuation")]
    pub min_valuation: Valuation,
    pub integral: bool,
    /// Every term valuation agreed with its weight-difference formula.
    pub identity_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    IntegralUpTo { b_max: u32 },
    Witness { b: u32, term: SeriesTerm },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The lower bound on `w(R_β)` equals `w(v)`: integral in every truncation.
    Certified {
        #[serde(with = "serde_rational")]
        bound: Rational,
    },
    /// Some `r ∈ R_β` has `w(r) < w(v)`: the coefficients are p-adically unbounded.
    NonIntegral {
        #[serde(with = "serde_rational::vec")]
        r: Vec<Rational>,
        #[serde(with = "serde_rational")]
        w: Rational,
    },
    /// Neither side of the sandwich closes.
    Undecided {
        #[serde(with = "serde_rational::opt")]
        bound: Option<Rational>,
        #[serde(with = "serde_rational")]
        best_found: Rational,
        note: String,
    },
}

impl Certificate {
    pub fn summary(&self) -> String {
        match self {
            Certificate::Certified { bound } => {
                format!("certified: lower bound {bound} equals w(v)")
            }
            Certificate::NonIntegral { w, .. } => {
                format!("non-integral: witness r with w(r) = {w} < w(v)")
            }
            Certificate::Undecided { .. } => "undecided by this route".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(with = "serde_rational::vec")]
    pub v: Vec<Rational>,
    pub p: u64,
    pub a: u32,
    #[serde(with = "serde_rational")]
    pub w_v: Rational,
    pub levels: Vec<LevelReport>,
    pub outcome: Outcome,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundReport>,
}

impl Verdict {
    pub fn is_integral(&self) -> bool {
        matches!(self.outcome, Outcome::IntegralUpTo { .. })
    }
}

/// Checks `w(v) = w(R_{β,b})` for `b ≤ b_max` against the actual term valuations
/// and reports a negative-valuation term if one exists.
pub fn integrality_verdict(
    config: &Configuration,
    v: &[Rational],
    beta: &[Rational],
    p: Prime,
    b_max: u32,
    limits: &Limits,
) -> Result<Verdict> {
    if b_max == 0 {
        return Err(GkzError::invalid("b_max must be at least 1"));
    }
    if config.combine(v) != beta {
        return Err(GkzError::invalid(format!(
            "sum of v_i a_i is {}, not beta = {}",
            crate::arith::format_vector(&config.combine(v)),
            crate::arith::format_vector(beta)
        )));
    }
    let a = normalization_exponent(v, p)?;
    let w_v = weight(v, p)?.w;
    let mut levels = Vec::new();
    let mut witness: Option<(u32, SeriesTerm)> = None;
    let mut best_r: Option<(Rational, Vec<Rational>)> = None;
    for b in 1..=b_max {
        let (w_min, argmin) = w_r_beta_b(config, beta, p, a, b, limits)?;
        let r_count = crate::weight::enumerate_r_beta_b(config, beta, p, a, b, limits)?.len();
        let ts = truncate_phi(config, v, p, a, b, limits)?;
        let mut identity_checked = true;
        for t in &ts.terms {
            let via = valuation_via_weights(v, &t.l, p, a, b)?;
            if t.valuation != Valuation::Finite(via) {
                identity_checked = false;
            }
        }
        let min_valuation = ts.min_valuation();
        let integral = min_valuation.is_nonnegative();
        if integral != (w_v == w_min) {
            identity_checked = false;
        }
        if !integral && witness.is_none() {
            let t = ts
                .terms
                .iter()
                .min_by(|x, y| x.valuation.cmp(&y.valuation).then(x.l.cmp(&y.l)))
                .expect("nonempty truncation")
                .clone();
            witness = Some((b, t));
        }
        if best_r.as_ref().is_none_or(|(w, _)| w_min < *w) {
            best_r = Some((w_min.clone(), argmin[0].clone()));
        }
        levels.push(LevelReport {
            b,
            w_min,
            r_count,
            argmin: argmin[0].clone(),
            terms: ts.terms.len(),
            min_valuation,
            integral,
            identity_checked,
        });
    }
    let outcome = match witness {
        Some((b, term)) => Outcome::Witness { b, term },
        None => Outcome::IntegralUpTo { b_max },
    };
    let (best_w, best_arg) = best_r.expect("b_max >= 1");
    let bound = corollary_3_5_bound(config, beta, p, a, b_max, limits);
    let certificate = if best_w < w_v {
        Certificate::NonIntegral {
            r: best_arg,
            w: best_w,
        }
    } else {
        match &bound {
            Ok(br) if br.bound == w_v => Certificate::Certified {
                bound: br.bound.clone(),
            },
            Ok(br) => Certificate::Undecided {
                bound: Some(br.bound.clone()),
                best_found: best_w,
                note: format!(
                    "lower bound {} is below w(v) = {w_v} and no r of smaller weight was found",
                    br.bound
                ),
            },
            Err(e) => Certificate::Undecided {
                bound: None,
                best_found: best_w,
                note: format!("lower bound unavailable: {e}"),
            },
        }
    };
    Ok(Verdict {
        v: v.to_vec(),
        p: p.get(),
        a,
        w_v,
        levels,
        outcome,
        certificate,
        bound: bound.ok(),
    })
}

/// Residual of the box operator at one exponent of the truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxResidual {
    /// Lattice index `k` of the exponent `v + k - l0_+`.
    pub k: Vec<i64>,
    pub interior: bool,
    #[serde(with = "serde_rational")]
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxCheck {
    pub l0: Vec<i64>,
    pub interior_checked: usize,
    pub interior_nonzero: usize,
    pub boundary_nonzero: Vec<BoxResidual>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalReport {
    pub euler_ok: bool,
    pub euler_failures: Vec<Vec<i64>>,
    pub box_checks: Vec<BoxCheck>,
}

impl FormalReport {
    pub fn ok(&self) -> bool {
        self.euler_ok && self.box_checks.iter().all(|c| c.interior_nonzero == 0)
    }
}

/// `∏_i ∏_{k < m_i} (u_i - k)`: the factor produced by `∂^m λ^u`.
fn derivative_factor(u: &[Rational], m: &[i64]) -> Rational {
    let mut f = Rational::one();
    for (x, &mi) in u.iter().zip(m) {
        for k in 0..mi {
            f *= x - int(k);
        }
    }
    f
}

/// Checks the Euler equations term by term and applies each box operator
/// `∂^{l0_+} - ∂^{l0_-}` to the (un-normalized) truncation. Residuals at
/// exponents whose two contributing terms both lie in the truncation must vanish.
pub fn verify_formal_solution(
    ts: &TruncatedSeries,
    config: &Configuration,
    beta: &[Rational],
    basis: &LatticeBasis,
) -> Result<FormalReport> {
    let mut euler_failures = Vec::new();
    for t in &ts.terms {
        let img = config.combine(&t.exponent);
        if img.iter().zip(beta).any(|(x, y)| x != y) {
            euler_failures.push(t.l.clone());
        }
    }
    let v = &ts.v;
    let coeff_of = |l: &[i64]| -> Option<Rational> {
        ts.find(l).map(|_| coefficient(v, l).expect("terms have nonzero rising factors"))
    };
    let mut box_checks = Vec::new();
    for l0 in &basis.vectors {
        let plus: Vec<i64> = l0.iter().map(|&x| x.max(0)).collect();
        let minus: Vec<i64> = l0.iter().map(|&x| (-x).max(0)).collect();
        let mut ks: Vec<Vec<i64>> = ts.terms.iter().map(|t| t.l.clone()).collect();
        ks.extend(
            ts.terms
                .iter()
                .map(|t| t.l.iter().zip(l0).map(|(a, b)| a + b).collect()),
        );
        ks.sort();
        ks.dedup();
        let mut check = BoxCheck {
            l0: l0.clone(),
            interior_checked: 0,
            interior_nonzero: 0,
            boundary_nonzero: Vec::new(),
        };
        for k in ks {
            let partner: Vec<i64> = k.iter().zip(l0).map(|(a, b)| a - b).collect();
            let first = coeff_of(&k).map(|c| c * derivative_factor(&add(v, &k), &plus));
            let second = coeff_of(&partner).map(|c| c * derivative_factor(&add(v, &partner), &minus));
            let interior = first.is_some() && second.is_some();
            let residual = first.unwrap_or_else(Rational::zero) - second.unwrap_or_else(Rational::zero);
            if interior {
                check.interior_checked += 1;
                if !residual.is_zero() {
                    check.interior_nonzero += 1;
                }
            } else if !residual.is_zero() {
                check.boundary_nonzero.push(BoxResidual {
                    k,
                    interior,
                    residual,
                });
            }
        }
        box_checks.push(check);
    }
    Ok(FormalReport {
        euler_ok: euler_failures.is_empty(),
        euler_failures,
        box_checks,
    })
}

/// `(3c)!^2 / c!^6`, the coefficients of the Libgober–Teitelbaum family.
pub fn lt_coefficient(c: u32) -> BigInt {
    let fact = |m: u32| (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let num = fact(3 * c).pow(2);
    let den = fact(c).pow(6);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Whether every coefficient of the truncation is an integer.
pub fn all_integral(ts: &TruncatedSeries) -> bool {
    ts.terms.iter().all(|t| is_integer(&t.coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::gkz::relation_lattice;

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    fn example1() -> Configuration {
        Configuration::new(vec![vec![3, 0], vec![0, 3], vec![2, 2]]).unwrap()
    }

    #[test]
    fn pochhammer_of_example_one() {
        let v = [int(0), int(0), rat(-1, 2)];
        let (f, r) = pochhammer_products(&v, &[2, 2, -3]).unwrap();
        assert_eq!((f.clone(), r.clone()), (rat(-15, 8), int(4)));
        assert_eq!(f / r, rat(-15, 32));
        assert_eq!(pochhammer_products(&v, &[0, 0, 0]).unwrap(), (int(1), int(1)));
        assert!(pochhammer_products(&[int(-1)], &[1]).is_err());
    }

    #[test]
    fn truncation_of_example_one() {
        let v = [int(0), int(0), rat(-1, 2)];
        let ts = truncate_phi(&example1(), &v, p(3), 1, 2, &Limits::default()).unwrap();
        let t = ts.find(&[2, 2, -3]).unwrap();
        assert_eq!(t.valuation, Valuation::Finite(rat(3, 2)));
        assert_eq!(ts.find(&[0, 0, 0]).unwrap().valuation, Valuation::Finite(int(0)));
        assert_eq!(valuation_via_weights(&v, &[2, 2, -3], p(3), 1, 2).unwrap(), rat(3, 2));
        assert_eq!(valuation_via_weights(&v, &[0, 0, 0], p(3), 1, 2).unwrap(), int(0));
    }

    #[test]
    fn negative_case() {
        let v = [rat(-2, 3), rat(-2, 3), int(0)];
        assert_eq!(valuation_via_weights(&v, &[-4, -4, 6], p(7), 1, 1).unwrap(), rat(-1, 3));
        let t = term(&v, &[-4, -4, 6], p(7)).unwrap();
        assert_eq!(t.valuation, Valuation::Finite(rat(-1, 3)));
    }

    #[test]
    fn verdict_example_one() {
        let v = [int(0), int(0), rat(-1, 2)];
        let out = integrality_verdict(&example1(), &v, &[int(-1), int(-1)], p(3), 3, &Limits::default())
            .unwrap();
        assert!(out.is_integral());
        assert!(out.levels.iter().all(|l| l.w_min == int(1) && l.identity_checked));
        assert_eq!(out.certificate, Certificate::Certified { bound: int(1) });
    }

    #[test]
    fn box_operator_on_example_one() {
        let c = example1();
        let v = [int(0), int(0), rat(-1, 2)];
        let ts = truncate_phi(&c, &v, p(3), 1, 3, &Limits::default()).unwrap();
        assert_eq!(ts.terms.len(), 5);
        let basis = relation_lattice(&c).unwrap();
        let rep = verify_formal_solution(&ts, &c, &[int(-1), int(-1)], &basis).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.box_checks[0].boundary_nonzero.len(), 1);
        assert_eq!(rep.box_checks[0].boundary_nonzero[0].k, vec![10, 10, -15]);
    }

    #[test]
    fn lt_coefficients() {
        assert_eq!(lt_coefficient(0), BigInt::from(1));
        assert_eq!(lt_coefficient(1), BigInt::from(36));
        assert_eq!(lt_coefficient(2), BigInt::from(8100));
    }
}
