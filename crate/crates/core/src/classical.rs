//! Classical series `rF_{s-1}(θ; σ | π^{s-r} t)` with parameters in `(0, 1]`:
//! domination of parameter lists, the shifted-domination and digit-wise
//! integrality criteria, exact coefficient valuations, and the embedding as
//! an A-hypergeometric series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    int, lcm_of_denominators, multiplicative_order, ord_p_int, serde_rational, DigitVector, Prime,
    Rational,
};
use crate::error::{GkzError, Result};
use crate::gkz::Configuration;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalParams {
    #[serde(with = "serde_rational::vec")]
    pub thetas: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub sigmas: Vec<Rational>,
}

impl ClassicalParams {
    pub fn new(thetas: Vec<Rational>, sigmas: Vec<Rational>) -> Result<ClassicalParams> {
        let p = ClassicalParams { thetas, sigmas };
        p.validate()?;
        Ok(p)
    }

    pub fn r(&self) -> usize {
        self.thetas.len()
    }

    pub fn s(&self) -> usize {
        self.sigmas.len() + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.s() < self.r() {
            return Err(GkzError::invalid(format!(
                "need s >= r, got r = {}, s = {}",
                self.r(),
                self.s()
            )));
        }
        for (name, list) in [("theta", &self.thetas), ("sigma", &self.sigmas)] {
            for (i, x) in list.iter().enumerate() {
                if !x.is_positive() || *x > Rational::one() {
                    return Err(GkzError::invalid(format!(
                        "{name}[{i}] = {x} is outside (0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_p_integral(&self, p: Prime) -> Result<()> {
        for x in self.thetas.iter().chain(&self.sigmas) {
            if (x.denom() % p.big()).is_zero() {
                return Err(GkzError::NotPIntegral {
                    what: format!("parameter {x}"),
                    p: p.get(),
                });
            }
        }
        Ok(())
    }

    /// The least `a` with `(p^a - 1) α` integral for every parameter.
    pub fn common_exponent(&self, p: Prime) -> Result<u32> {
        self.check_p_integral(p)?;
        let mut a: u32 = 1;
        for x in self.thetas.iter().chain(&self.sigmas) {
            a = a.lcm(&multiplicative_order(p, x.denom())?);
        }
        debug_assert_eq!(
            a,
            multiplicative_order(p, &lcm_of_denominators(self.thetas.iter().chain(&self.sigmas)))?
        );
        Ok(a)
    }
}

/// One entry of the merged sequence: a value and whether it is one of the
/// inserted `k/(s-r)` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergedEntry {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub marked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationCertificate {
    pub verdict: bool,
    pub ordered: bool,
    pub counting: bool,
    /// The counting form without the bound on the deficit `J_j - I_j`; it
    /// differs from the ordered form only when some `θ_i = σ_j = 1`.
    pub counting_as_stated: bool,
    pub forms_agree: bool,
    pub i_counts: Vec<usize>,
    pub j_counts: Vec<usize>,
    /// The sorted lower sequence actually compared (augmented or merged).
    pub lower: Vec<MergedEntry>,
    /// The sorted upper sequence actually compared.
    #[serde(with = "serde_rational::vec")]
    pub upper: Vec<Rational>,
}

/// Domination of `θ` by `σ`, computed in both the ordered and counting forms.
pub fn dominated(params: &ClassicalParams) -> Result<DominationCertificate> {
    params.validate()?;
    Ok(dominated_unchecked(&params.thetas, &params.sigmas))
}

/// As [`dominated`] but without range checks; used for digit sequences in
/// `[0, 1]`. The verdict is the ordered form.
pub fn dominated_unchecked(thetas: &[Rational], sigmas: &[Rational]) -> DominationCertificate {
    let r = thetas.len();
    let s = sigmas.len() + 1;
    let mut th = thetas.to_vec();
    th.sort();
    let mut sg = sigmas.to_vec();
    sg.sort();

    let (lower, upper): (Vec<MergedEntry>, Vec<Rational>) = if r == s {
        sg.push(Rational::one());
        sg.sort();
        (
            th.iter()
                .map(|x| MergedEntry {
                    value: x.clone(),
                    marked: false,
                })
                .collect(),
            sg,
        )
    } else {
        let d = (s - r) as i64;
        let mut merged: Vec<MergedEntry> = Vec::with_capacity(s - 1);
        let mut it = th.iter().peekable();
        for k in 1..d {
            let q = Rational::new(k.into(), d.into());
            while let Some(x) = it.next_if(|x| **x < q) {
                merged.push(MergedEntry {
                    value: x.clone(),
                    marked: false,
                });
            }
            merged.push(MergedEntry {
                value: q,
                marked: true,
            });
        }
        merged.extend(it.map(|x| MergedEntry {
            value: x.clone(),
            marked: false,
        }));
        (merged, sg)
    };
    let ordered = lower.iter().zip(&upper).all(|(t, u)| {
        if t.marked {
            t.value <= *u
        } else {
            t.value < *u
        }
    });

    let i_counts: Vec<usize> = sigmas
        .iter()
        .map(|sj| thetas.iter().filter(|t| *t < sj).count())
        .collect();
    let j_counts: Vec<usize> = sigmas
        .iter()
        .map(|sj| sigmas.iter().filter(|sk| sj >= *sk).count())
        .collect();
    let pairs = i_counts.iter().zip(&j_counts).zip(sigmas);
    let counting = if r == s {
        thetas.iter().all(|t| *t < Rational::one()) && pairs.clone().all(|((i, j), _)| i >= j)
    } else if s == r + 1 {
        pairs.clone().all(|((i, j), _)| i >= j)
    } else {
        // only s - r - 1 inserted values exist, so a deficit of s - r cannot be covered
        pairs.clone().all(|((&i, &j), sj)| i >= j || (j - i < s - r && covers(sj, i, j, s - r)))
    };
    let counting_as_stated = if r == s || s == r + 1 {
        counting
    } else {
        pairs.clone().all(|((&i, &j), sj)| i >= j || covers(sj, i, j, s - r))
    };
    DominationCertificate {
        verdict: ordered,
        ordered,
        counting,
        counting_as_stated,
        forms_agree: ordered == counting,
        i_counts,
        j_counts,
        lower,
        upper,
    }
}

/// `σ_j ≥ (J_j - I_j) / d`.
fn covers(sigma: &Rational, i: usize, j: usize, d: usize) -> bool {
    *sigma >= Rational::new(BigInt::from(j - i), BigInt::from(d))
}

/// `α^{(k)} = t^{(k)} / (p^a - 1)` with `t = (p^a - 1) α`.
pub fn shift_parameter(alpha: &Rational, p: Prime, a: u32, k: u64) -> Result<Rational> {
    let m = Rational::from_integer(p.pow(a) - 1);
    let t = alpha * &m;
    if !t.is_integer() {
        return Err(GkzError::invalid(format!("(p^a - 1) * {alpha} is not integral")));
    }
    let rotated = DigitVector::from_int(&t.to_integer(), p, a)?.rotated(k).to_int();
    Ok(Rational::from_integer(rotated) / m)
}

/// Digit `k` (least significant first) of `(p^a - 1) α`.
fn digit(alpha: &Rational, p: Prime, a: u32, k: usize) -> Result<u64> {
    let t = alpha * Rational::from_integer(p.pow(a) - 1);
    Ok(DigitVector::from_int(&t.to_integer(), p, a)?.digits()[k])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub holds: bool,
    pub failing_k: Option<u32>,
    pub a: u32,
    pub per_k: Vec<DominationCertificate>,
}

/// Domination of `θ^{(k)}` by `σ^{(k)}` for `k = 0, ..., a-1`.
pub fn prop_4_7_check(params: &ClassicalParams, p: Prime) -> Result<CriterionReport> {
    params.validate()?;
    let a = params.common_exponent(p)?;
    let mut per_k = Vec::new();
    for k in 0..a {
        let th = params
            .thetas
            .iter()
            .map(|x| shift_parameter(x, p, a, k as u64))
            .collect::<Result<Vec<_>>>()?;
        let sg = params
            .sigmas
            .iter()
            .map(|x| shift_parameter(x, p, a, k as u64))
            .collect::<Result<Vec<_>>>()?;
        per_k.push(dominated(&ClassicalParams::new(th, sg)?)?);
    }
    Ok(report(a, per_k))
}

/// Dwork's digit-wise criterion: domination of `(θ_{ik}/(p-1))_i` by
/// `(σ_{jk}/(p-1))_j` for each digit position `k`.
pub fn dwork_check(params: &ClassicalParams, p: Prime) -> Result<CriterionReport> {
    params.validate()?;
    let a = params.common_exponent(p)?;
    let pm1 = p.minus_one();
    let mut per_k = Vec::new();
    for k in 0..a as usize {
        let th = params
            .thetas
            .iter()
            .map(|x| Ok(int(digit(x, p, a, k)? as i64) / &pm1))
            .collect::<Result<Vec<_>>>()?;
        let sg = params
            .sigmas
            .iter()
            .map(|x| Ok(int(digit(x, p, a, k)? as i64) / &pm1))
            .collect::<Result<Vec<_>>>()?;
        per_k.push(dominated_unchecked(&th, &sg));
    }
    Ok(report(a, per_k))
}

fn report(a: u32, per_k: Vec<DominationCertificate>) -> CriterionReport {
    let failing_k = per_k.iter().position(|c| !c.verdict).map(|k| k as u32);
    CriterionReport {
        holds: failing_k.is_none(),
        failing_k,
        a,
        per_k,
    }
}

fn ord_p_rational(x: &Rational, p: Prime) -> i64 {
    let n = ord_p_int(x.numer(), p).expect("nonzero factor") as i64;
    let d = ord_p_int(x.denom(), p).expect("nonzero denominator") as i64;
    n - d
}

/// The coefficient `(θ_1)_j ⋯ (θ_r)_j / (j! (σ_1)_j ⋯ (σ_{s-1})_j)` without the π power.
pub fn classical_coefficient(params: &ClassicalParams, j: u32) -> Rational {
    let mut c = Rational::one();
    for t in 0..j {
        let tt = int(t as i64);
        for th in &params.thetas {
            c *= th + &tt;
        }
        c /= int(t as i64 + 1);
        for sg in &params.sigmas {
            c /= sg + &tt;
        }
    }
    c
}

/// Valuations of the normalized coefficients for `j = 0, ..., j_max`.
pub fn classical_valuations(params: &ClassicalParams, p: Prime, j_max: u32) -> Result<Vec<Rational>> {
    params.validate()?;
    params.check_p_integral(p)?;
    let step = int((params.s() - params.r()) as i64) / p.minus_one();
    let mut out = Vec::with_capacity(j_max as usize + 1);
    let mut acc: i64 = 0;
    out.push(Rational::zero());
    for t in 0..j_max {
        let tt = int(t as i64);
        for th in &params.thetas {
            acc += ord_p_rational(&(th + &tt), p);
        }
        acc -= ord_p_rational(&int(t as i64 + 1), p);
        for sg in &params.sigmas {
            acc -= ord_p_rational(&(sg + &tt), p);
        }
        out.push(int(acc) + &step * int(t as i64 + 1));
    }
    Ok(out)
}

pub fn classical_coefficient_valuation(params: &ClassicalParams, p: Prime, j: u32) -> Result<Rational> {
    Ok(classical_valuations(params, p, j)?.pop().expect("j_max + 1 entries"))
}

/// The classical series as an A-hypergeometric one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalEmbedding {
    pub config: Configuration,
    #[serde(with = "serde_rational::vec")]
    pub v: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub beta: Vec<Rational>,
}

impl ClassicalEmbedding {
    /// The relation `(-l, ..., -l, l, ..., l)` carrying the `t^l` term.
    pub fn lattice_vector(&self, r: usize, s: usize, l: i64) -> Vec<i64> {
        let mut out = vec![-l; r];
        out.extend(std::iter::repeat_n(l, s));
        out
    }
}

/// Columns `e_1, ..., e_{r+s-1}, (1^r, (-1)^{s-1})` and
/// `v = (-θ, σ - 1, 0)`, `β = (-θ, σ - 1)`.
pub fn to_gkz(params: &ClassicalParams) -> Result<ClassicalEmbedding> {
    params.validate()?;
    let (r, s) = (params.r(), params.s());
    let n = r + s - 1;
    if n == 0 {
        // only the 1F0-free case r = 0, s = 1: the single zero column
        return Ok(ClassicalEmbedding {
            config: Configuration::new(vec![vec![0]])?,
            v: vec![Rational::zero()],
            beta: vec![Rational::zero()],
        });
    }
    let mut columns: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    let last: Vec<i64> = (0..n).map(|k| if k < r { 1 } else { -1 }).collect();
    if columns.contains(&last) {
        return Err(GkzError::DegenerateEmbedding(format!(
            "r = {r}, s = {s}: the last column coincides with a unit vector"
        )));
    }
    columns.push(last);
    let mut v: Vec<Rational> = params.thetas.iter().map(|x| -x.clone()).collect();
    v.extend(params.sigmas.iter().map(|x| x - Rational::one()));
    let beta = v.clone();
    v.push(Rational::zero());
    Ok(ClassicalEmbedding {
        config: Configuration::new(columns)?,
        v,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    fn params(t: &[(i64, i64)], s: &[(i64, i64)]) -> ClassicalParams {
        ClassicalParams::new(
            t.iter().map(|&(a, b)| rat(a, b)).collect(),
            s.iter().map(|&(a, b)| rat(a, b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn domination_examples() {
        let c = dominated(&params(&[], &[(3, 8), (5, 8)])).unwrap();
        assert!(!c.verdict && c.forms_agree);
        let c = dominated(&params(&[], &[(41, 120), (81, 120)])).unwrap();
        assert!(c.verdict && c.forms_agree);
        let c = dominated(&params(&[(1, 2), (1, 2)], &[(1, 1)])).unwrap();
        assert!(c.verdict && c.forms_agree);
        assert!(ClassicalParams::new(vec![int(0)], vec![]).is_err());
        // a deficit of s - r at σ_j = 1 is not covered by the s - r - 1 inserted values
        let c = dominated(&params(&[(1, 4), (1, 1)], &[(1, 1), (1, 1), (1, 1)])).unwrap();
        assert!(!c.ordered && !c.counting && c.counting_as_stated);
    }

    #[test]
    fn example_two() {
        let e2 = params(&[(5, 13), (6, 13)], &[(1, 2)]);
        let c = prop_4_7_check(&e2, p(3)).unwrap();
        assert!(c.holds);
        assert_eq!(c.a, 3);
        let d = dwork_check(&e2, p(3)).unwrap();
        assert!(!d.holds);
        assert_eq!(shift_parameter(&rat(5, 13), p(3), 3, 1).unwrap(), rat(6, 13));
        assert_eq!(shift_parameter(&rat(5, 13), p(3), 3, 2).unwrap(), rat(2, 13));
        assert_eq!(classical_coefficient(&e2, 1), rat(60, 169));
        assert_eq!(classical_coefficient_valuation(&e2, p(3), 1).unwrap(), int(1));
        assert_eq!(classical_coefficient_valuation(&e2, p(3), 0).unwrap(), int(0));
    }

    #[test]
    fn discriminating_pairs() {
        let a = params(&[], &[(3, 8), (5, 8)]);
        assert!(dwork_check(&a, p(7)).unwrap().holds);
        let r = prop_4_7_check(&a, p(7)).unwrap();
        assert_eq!((r.holds, r.failing_k), (false, Some(0)));
        let b = params(&[], &[(41, 120), (81, 120)]);
        assert!(prop_4_7_check(&b, p(11)).unwrap().holds);
        let r = dwork_check(&b, p(11)).unwrap();
        assert_eq!((r.holds, r.failing_k), (false, Some(1)));
    }

    #[test]
    fn embedding() {
        let e = to_gkz(&params(&[(5, 13), (6, 13)], &[(1, 2)])).unwrap();
        assert_eq!(
            e.config.columns(),
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]]
        );
        assert_eq!(e.v, vec![rat(-5, 13), rat(-6, 13), rat(-1, 2), int(0)]);
        let trivial = to_gkz(&params(&[], &[])).unwrap();
        assert_eq!(trivial.config.num_columns(), 1);
        assert!(matches!(
            to_gkz(&params(&[(1, 2)], &[])),
            Err(GkzError::DegenerateEmbedding(_))
        ));
    }
}
