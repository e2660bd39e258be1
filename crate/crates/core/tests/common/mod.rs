//! Exact identity checks shared by the property tests and the acceptance suite.
//! Each check panics on the first failure and returns the number of cases it verified.

#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use padic_gkz::arith::{int, rat, Prime, Rational};
use padic_gkz::classical::{dominated, to_gkz, ClassicalParams};
use padic_gkz::gkz::{complete_intersection_config, is_nonconfluent, l_vb_elements, CompleteIntersection};
use padic_gkz::polytope::{cone_facets, in_relative_interior, smallest_face, w_delta};
use padic_gkz::search::{find_collision, lemma_6_2_split};
use padic_gkz::series::{truncate_phi, valuation_via_weights};
use padic_gkz::weight::{
    enumerate_r_beta_b, lemma_2_3_inverse, lemma_2_3_map, normalization_exponent, prefix_inequalities_hold,
    shift_r, shift_r_with_exponent, sum_minus_one_bound_check, weight, weight_with_exponent,
};
use padic_gkz::{Configuration, Limits, Valuation};

pub fn rng(name: &str, seed: u64) -> ChaCha8Rng {
    println!("{name}: seed {seed}");
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn example1() -> Configuration {
    Configuration::new(vec![vec![3, 0], vec![0, 3], vec![2, 2]]).unwrap()
}

pub fn example3() -> CompleteIntersection {
    let e = |i: usize, k: i64| {
        let mut v = vec![0; 6];
        v[i] = k;
        v
    };
    let a1 = vec![e(0, 3), e(1, 3), e(2, 3), vec![0, 0, 0, 1, 1, 1]];
    let a2 = vec![e(3, 3), e(4, 3), e(5, 3), vec![1, 1, 1, 0, 0, 0]];
    complete_intersection_config(&[a1, a2]).unwrap()
}

/// `(configuration, v, p, b_max)` for every truncation exercised by the identity checks.
pub fn truncations() -> Vec<(Configuration, Vec<Rational>, u64, u32)> {
    let ci = example3();
    let v3 = ci.distinguished_v(&[3, 3]).unwrap();
    let e2 = to_gkz(&ClassicalParams::new(vec![rat(5, 13), rat(6, 13)], vec![rat(1, 2)]).unwrap()).unwrap();
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        out.push((example1(), vec![int(0), int(0), rat(-1, 2)], p, 3));
    }
    out.push((example1(), vec![rat(-2, 3), rat(-2, 3), int(0)], 7, 3));
    out.push((example1(), vec![rat(-1, 4), rat(-1, 4), rat(-1, 8)], 3, 1));
    for p in [2, 3, 5] {
        out.push((ci.config.clone(), v3.clone(), p, 2));
    }
    out.push((e2.config, e2.v, 3, 1));
    out
}

pub fn term_valuations_match_weight_formula() -> usize {
    let limits = Limits::default();
    let mut checked = 0;
    for (config, v, p, b_max) in truncations() {
        let p = prime(p);
        let a = normalization_exponent(&v, p).unwrap();
        for b in 1..=b_max {
            let ts = truncate_phi(&config, &v, p, a, b, &limits).unwrap();
            for t in &ts.terms {
                let via = valuation_via_weights(&v, &t.l, p, a, b).unwrap();
                assert_eq!(t.valuation, Valuation::Finite(via), "v = {v:?}, l = {:?}", t.l);
                checked += 1;
            }
        }
    }
    println!("checked {checked} terms");
    assert!(checked > 100);
    checked
}

pub fn lemma_2_3_round_trip() -> usize {
    let limits = Limits::default();
    let mut checked = 0;
    for (config, v, p, b_max) in truncations() {
        let p = prime(p);
        let a = normalization_exponent(&v, p).unwrap();
        let beta = config.combine(&v);
        for b in 1..=b_max {
            let ls = l_vb_elements(&config, &v, p, a, b, &limits).unwrap();
            let rs = enumerate_r_beta_b(&config, &beta, p, a, b, &limits).unwrap();
            assert_eq!(ls.len(), rs.len());
            let mut mapped: Vec<Vec<i64>> = rs
                .iter()
                .map(|e| {
                    let l = lemma_2_3_map(&e.r, &v, p, a, b).unwrap();
                    assert_eq!(lemma_2_3_inverse(&l, &v, p, a, b), e.r);
                    l
                })
                .collect();
            mapped.sort();
            let mut ls = ls;
            ls.sort();
            assert_eq!(mapped, ls);
            checked += ls.len();
        }
    }
    println!("round-tripped {checked} elements");
    checked
}

fn random_r(g: &mut ChaCha8Rng, p: u64, a: u32, n: usize) -> Vec<Rational> {
    let m = p.pow(a) as i64 - 1;
    (0..n).map(|_| rat(-g.gen_range(0..=m), m)).collect()
}

pub fn weight_is_independent_of_exponent_and_shift_invariant() -> usize {
    let mut g = rng("weight invariance", 20_261_016);
    for _ in 0..500 {
        let p = [2u64, 3, 5, 7][g.gen_range(0..4)];
        let a = g.gen_range(1..=3);
        let n = g.gen_range(1..=5);
        let r = random_r(&mut g, p, a, n);
        let p = prime(p);
        let w = weight(&r, p).unwrap().w;
        let a0 = normalization_exponent(&r, p).unwrap();
        for k in 1..=3 {
            assert_eq!(weight_with_exponent(&r, p, a0 * k).unwrap(), w, "r = {r:?}");
        }
        for k in 0..(a0 as u64 + 2) {
            let s = shift_r(&r, p, k).unwrap();
            assert_eq!(weight(&s, p).unwrap().w, w, "r = {r:?}, k = {k}");
            assert_eq!(shift_r_with_exponent(&r, p, a0, k + a0 as u64).unwrap(), s);
        }
    }
    500
}

pub fn prefix_inequalities_random_decompositions() -> usize {
    let mut g = rng("prefix inequalities", 53);
    for _ in 0..500 {
        let p = [2u64, 3, 5, 7, 11][g.gen_range(0..5)];
        let len = g.gen_range(1..=8);
        let t: Vec<u64> = (0..len).map(|_| g.gen_range(0..=3 * p)).collect();
        assert!(prefix_inequalities_hold(&t, prime(p)), "p = {p}, t = {t:?}");
    }
    500
}

pub fn sum_minus_one_vectors_have_weight_at_least_p_minus_one() -> usize {
    let mut g = rng("sum -1 bound", 58);
    for _ in 0..500 {
        let p = [2u64, 3, 5, 7][g.gen_range(0..4)];
        let a = g.gen_range(1..=3);
        let m = p.pow(a) - 1;
        let n = g.gen_range(1..=6);
        // split m into n nonnegative parts
        let mut cuts: Vec<u64> = (0..n - 1).map(|_| g.gen_range(0..=m)).collect();
        cuts.push(0);
        cuts.push(m);
        cuts.sort();
        let r: Vec<Rational> = cuts.windows(2).map(|w| rat(-((w[1] - w[0]) as i64), m as i64)).collect();
        let margin = sum_minus_one_bound_check(&r, prime(p)).unwrap();
        assert!(margin >= Rational::zero(), "p = {p}, r = {r:?}, margin {margin}");
    }
    500
}

fn random_params(g: &mut ChaCha8Rng) -> ClassicalParams {
    let s = g.gen_range(1..=5);
    let r = g.gen_range(0..=s);
    let entry = |g: &mut ChaCha8Rng| {
        let d = g.gen_range(1..=12);
        rat(g.gen_range(1..=d), d)
    };
    let thetas = (0..r).map(|_| entry(g)).collect();
    let sigmas = (0..s - 1).map(|_| entry(g)).collect();
    ClassicalParams::new(thetas, sigmas).unwrap()
}

pub fn domination_ordered_and_counting_forms_agree() -> usize {
    let mut g = rng("domination forms", 43);
    let mut dominated_count = 0;
    for _ in 0..1000 {
        let params = random_params(&mut g);
        let c = dominated(&params).unwrap();
        assert!(c.forms_agree, "{params:?}: ordered {} counting {}", c.ordered, c.counting);
        dominated_count += usize::from(c.verdict);
    }
    println!("{dominated_count} of 1000 dominated");
    assert!(dominated_count > 50 && dominated_count < 950);
    1000
}

pub fn nonconfluent_polytope_weight_is_the_linear_form() -> usize {
    let ci = example3();
    let h = is_nonconfluent(&ci.config).expect("every column has last two coordinates summing to 1");
    assert!(ci.config.columns().iter().all(|c| {
        let a: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
        a.iter().zip(&h).map(|(x, y)| x * y).sum::<Rational>().is_one()
    }));
    let mut g = rng("nonconfluent w_delta", 32);
    for _ in 0..60 {
        let coeffs: Vec<Rational> = (0..ci.config.num_columns()).map(|_| rat(g.gen_range(0..6), g.gen_range(1..4))).collect();
        let gamma = ci.config.combine(&coeffs);
        let hv: Rational = gamma.iter().zip(&h).map(|(x, y)| x * y).sum();
        assert_eq!(w_delta(&ci.config, &gamma).unwrap(), hv);
    }
    60
}

pub fn shifted_sums_stay_in_the_relative_interior() -> usize {
    let limits = Limits::default();
    let mut checked = 0;
    for (config, v, p, b_max) in truncations() {
        let p = prime(p);
        let a = normalization_exponent(&v, p).unwrap();
        let beta = config.combine(&v);
        let geom = cone_facets(&config).unwrap();
        let minus: Vec<Rational> = beta.iter().map(|x| -x.clone()).collect();
        let face = smallest_face(&minus, &geom).unwrap();
        for b in 1..=b_max {
            for e in enumerate_r_beta_b(&config, &beta, p, a, b, &limits).unwrap() {
                for k in 0..u64::from(a * b) {
                    let s = shift_r_with_exponent(&e.r, p, a * b, k).unwrap();
                    let pt: Vec<Rational> = config.combine(&s).iter().map(|x| -x.clone()).collect();
                    assert!(in_relative_interior(&pt, &face, &geom), "r = {:?}, k = {k}", e.r);
                    checked += 1;
                }
            }
        }
    }
    println!("checked {checked} shifted sums");
    assert!(checked > 0);
    checked
}

pub fn colliding_vectors_split_without_losing_weight() -> usize {
    let mut g = rng("split", 62);
    let limits = Limits::default();
    let mut splits = 0;
    for _ in 0..1500 {
        let p = [2u64, 3][g.gen_range(0..2)];
        let dim = g.gen_range(1..=2);
        let n = g.gen_range(2..=3);
        let cols: Vec<Vec<i64>> = (0..n).map(|_| (0..dim).map(|_| g.gen_range(-2..=3)).collect()).collect();
        let Ok(config) = Configuration::new(cols) else { continue };
        let b = g.gen_range(3..=6);
        let r = random_r(&mut g, p, b, n);
        let p = prime(p);
        let Some((k1, k2)) = find_collision(&config, &r, p, 1, b).unwrap() else { continue };
        let sp = lemma_6_2_split(&config, &r, p, 1, b, k1, k2).unwrap();
        let w_r = weight_with_exponent(&r, p, b).unwrap();
        assert_eq!(sp.w_s, w_r);
        assert!(w_r >= sp.w_u.clone().min(sp.w_v.clone()));
        // u and v really are elements of R_{ε,t} and R_{ε,b-t}
        for (x, len) in [(&sp.u, sp.t), (&sp.v, b - sp.t)] {
            let all = enumerate_r_beta_b(&config, &sp.epsilon, p, len, 1, &limits).unwrap();
            assert!(all.iter().any(|e| &e.r == x), "{x:?} not found by enumeration");
        }
        splits += 1;
    }
    println!("{splits} splits verified");
    assert!(splits > 50);
    splits
}

