//! Parameters modulo `ℤ^n`: the finite set `Γ`, the globally optimal
//! `(γ, b, v)` search, and the digit-block split of a colliding vector.
//!
//! An element `r ∈ R_{γ,ab}` is the same thing as a closed walk of length `b`
//! from `γ` in the graph whose edges are `δ -> (δ - Σ d_i a_i) / q` for digit
//! vectors `d ∈ [0, q-1]^N`, `q = p^a`, with edge cost `w_p(d)`; `w(r)` is the
//! walk's mean cost divided by `a`. The search is a minimum mean cycle
//! computation, certified by vertex potentials.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{int, is_integer, p_weight_u64, serde_rational, to_i64, Prime, Rational};
use crate::error::{GkzError, Result};
use crate::gkz::Configuration;
use crate::limits::Limits;
use crate::lattice::BoxSystem;
use crate::lp::{Cmp, LinearProgram, Var};
use crate::polytope::{cone_facets, in_relative_interior, smallest_face, ConeGeometry, Face};
use crate::weight::{check_beta, enumerate_r_beta_b, shift_r_with_exponent, weight_with_exponent};

/// A certified superset of `Γ = (-σ°_{-β}) ∩ (β + ℤ^n) ∩ RA`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSet {
    #[serde(with = "serde_rational::vec")]
    pub beta: Vec<Rational>,
    pub a: u32,
    #[serde(serialize_with = "ser_points")]
    pub elements: Vec<Vec<Rational>>,
    /// The smallest face of `C(Δ)` containing `-β`.
    pub face: Face,
    pub box_points: u64,
}

fn ser_points<S: serde::Serializer>(xs: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.iter().map(crate::arith::format_rational).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl GammaSet {
    /// `B' = |Γ'| ≥ B`.
    pub fn bound(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, gamma: &[Rational]) -> bool {
        self.elements.binary_search_by(|x| x.as_slice().cmp(gamma)).is_ok()
    }
}

/// Whether `Σ r_i a_i = γ` has a real solution with `r ∈ [-1, 0]^N`.
pub fn in_ra_relaxed(config: &Configuration, gamma: &[Rational]) -> bool {
    let n = config.num_columns();
    let mut lp = LinearProgram::new(vec![Var::Between(int(-1), int(0)); n]);
    for (row, g) in config.rows().into_iter().zip(gamma) {
        lp.constrain(row, Cmp::Eq, g.clone());
    }
    lp.objective(vec![Rational::zero(); n]);
    lp.minimize().is_feasible()
}

pub fn compute_gamma(config: &Configuration, beta: &[Rational], p: Prime, a: u32, limits: &Limits) -> Result<GammaSet> {
    let geom = cone_facets(config)?;
    compute_gamma_with(config, &geom, beta, p, a, limits)
}

pub fn compute_gamma_with(
    config: &Configuration,
    geom: &ConeGeometry,
    beta: &[Rational],
    p: Prime,
    a: u32,
    limits: &Limits,
) -> Result<GammaSet> {
    if beta.len() != config.dim() {
        return Err(GkzError::invalid(format!(
            "beta has {} entries, configuration dimension is {}",
            beta.len(),
            config.dim()
        )));
    }
    check_beta(beta, p, a)?;
    let minus_beta: Vec<Rational> = beta.iter().map(|x| -x.clone()).collect();
    let face = smallest_face(&minus_beta, geom)?;
    let n = config.dim();
    // zonotope box: coordinate j of Σ r_i a_i with r ∈ [-1, 0]^N
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for col in config.columns() {
        for j in 0..n {
            lo[j] += (-col[j]).min(0);
            hi[j] += (-col[j]).max(0);
        }
    }
    let zlo: Vec<i64> = (0..n)
        .map(|j| to_i64(&(int(lo[j]) - &beta[j]).ceil().to_integer(), "gamma box"))
        .collect::<Result<_>>()?;
    let zhi: Vec<i64> = (0..n)
        .map(|j| to_i64(&(int(hi[j]) - &beta[j]).floor().to_integer(), "gamma box"))
        .collect::<Result<_>>()?;
    let mut sys = BoxSystem::new(zlo, zhi);
    for y in &geom.span_equations {
        let rhs = -crate::linalg::dot(y, beta);
        sys = sys.equal(y.clone(), rhs);
    }
    let mut box_points = 0u64;
    let mut elements = Vec::new();
    sys.for_each(limits.max_nodes, |z| {
        box_points += 1;
        let gamma: Vec<Rational> = z.iter().zip(beta).map(|(&zi, b)| b + int(zi)).collect();
        let minus: Vec<Rational> = gamma.iter().map(|x| -x.clone()).collect();
        if in_relative_interior(&minus, &face, geom) && in_ra_relaxed(config, &gamma) {
            elements.push(gamma);
        }
        true
    })?;
    if elements.is_empty() {
        return Err(GkzError::EmptySet(format!(
            "Gamma for beta = {}",
            crate::arith::format_vector(beta)
        )));
    }
    elements.sort();
    Ok(GammaSet {
        beta: beta.to_vec(),
        a,
        elements,
        face,
        box_points,
    })
}

/// One edge of the shift graph: the cheapest digit vector realizing `from -> to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftEdge {
    pub from: usize,
    pub to: usize,
    pub cost: u64,
    pub digits: Vec<u64>,
}

/// The shift graph on a `Γ` superset.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftGraph {
    pub q: u64,
    pub edges: Vec<ShiftEdge>,
    /// `(q - 1) γ` for each node, indexed like the `Γ` elements.
    pub keys: Vec<Vec<i64>>,
}

impl ShiftGraph {
    pub fn build(config: &Configuration, gamma: &GammaSet, p: Prime, limits: &Limits) -> Result<ShiftGraph> {
        let q = limits.q_power(p, gamma.a, 1)?;
        let qm1 = int(q as i64 - 1);
        let keys: Vec<Vec<i64>> = gamma
            .elements
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| to_i64(&(x * &qm1).to_integer(), "gamma key"))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let index: HashMap<&[i64], usize> = keys.iter().enumerate().map(|(i, k)| (k.as_slice(), i)).collect();
        let big_n = config.num_columns();
        let count = q
            .checked_pow(big_n as u32)
            .filter(|&c| c <= limits.max_cells)
            .ok_or_else(|| GkzError::cap("digit block vectors", limits.max_cells))?;
        // cheapest digit vector per image (q - 1) Σ d_i a_i; first in counting order on ties
        let mut images: HashMap<Vec<i64>, (u64, Vec<u64>)> = HashMap::new();
        let mut d = vec![0u64; big_n];
        for _ in 0..count {
            let mut img = vec![0i64; config.dim()];
            let mut w = 0;
            for (di, col) in d.iter().zip(config.columns()) {
                w += p_weight_u64(*di, p.get());
                for (o, &x) in img.iter_mut().zip(col) {
                    *o += *di as i64 * x * (q as i64 - 1);
                }
            }
            match images.get(&img) {
                Some((w0, _)) if *w0 <= w => {}
                _ => {
                    images.insert(img, (w, d.clone()));
                }
            }
            for x in d.iter_mut() {
                *x += 1;
                if *x < q {
                    break;
                }
                *x = 0;
            }
        }
        let mut images: Vec<(Vec<i64>, (u64, Vec<u64>))> = images.into_iter().collect();
        images.sort();
        let qi = q as i64;
        let mut edges = Vec::new();
        for (from, key) in keys.iter().enumerate() {
            for (img, (cost, digits)) in &images {
                let mut target = Vec::with_capacity(key.len());
                let mut ok = true;
                for (k, x) in key.iter().zip(img) {
                    let diff = k - x;
                    if diff % qi != 0 {
                        ok = false;
                        break;
                    }
                    target.push(diff / qi);
                }
                if !ok {
                    continue;
                }
                if let Some(&to) = index.get(target.as_slice()) {
                    edges.push(ShiftEdge {
                        from,
                        to,
                        cost: *cost,
                        digits: digits.clone(),
                    });
                }
            }
        }
        edges.sort_by(|x, y| (x.from, x.to, x.cost).cmp(&(y.from, y.to, y.cost)));
        edges.dedup_by(|later, earlier| later.from == earlier.from && later.to == earlier.to);
        Ok(ShiftGraph { q, edges, keys })
    }

    pub fn num_nodes(&self) -> usize {
        self.keys.len()
    }

    /// Karp's minimum cycle mean `(total cost, length)` in lowest terms, or
    /// `None` for an acyclic graph.
    pub fn min_cycle_mean(&self) -> Option<Rational> {
        let v = self.num_nodes();
        const INF: i64 = i64::MAX / 4;
        let mut d = vec![vec![INF; v]; v + 1];
        d[0].iter_mut().for_each(|x| *x = 0);
        for k in 1..=v {
            let (prev, cur) = d.split_at_mut(k);
            let (prev, cur) = (&prev[k - 1], &mut cur[0]);
            for e in &self.edges {
                if prev[e.from] < INF {
                    let c = prev[e.from] + e.cost as i64;
                    if c < cur[e.to] {
                        cur[e.to] = c;
                    }
                }
            }
        }
        let mut best: Option<Rational> = None;
        for x in 0..v {
            if d[v][x] >= INF {
                continue;
            }
            let worst = (0..v)
                .filter(|&k| d[k][x] < INF)
                .map(|k| Rational::new((d[v][x] - d[k][x]).into(), ((v - k) as i64).into()))
                .max()
                .expect("k = 0 is finite");
            if best.as_ref().is_none_or(|b| worst < *b) {
                best = Some(worst);
            }
        }
        best
    }

    /// Potentials `π` with `cost(e) - μ + π(from) - π(to) ≥ 0` on every edge,
    /// scaled by the denominator of `μ`; `None` if `μ` is not a lower bound.
    pub fn potentials(&self, mu: &Rational) -> Option<Vec<i64>> {
        let num = mu.numer().to_i64()?;
        let den = mu.denom().to_i64()?;
        let v = self.num_nodes();
        // shortest paths from a virtual source under the shifted costs
        let mut dist = vec![0i64; v];
        for round in 0..=v {
            let mut changed = false;
            for e in &self.edges {
                let c = e.cost as i64 * den - num;
                if dist[e.from] + c < dist[e.to] {
                    dist[e.to] = dist[e.from] + c;
                    changed = true;
                }
            }
            if !changed {
                return Some(dist);
            }
            if round == v {
                return None;
            }
        }
        None
    }

    fn reduced(&self, e: &ShiftEdge, mu: &Rational, pi: &[i64]) -> i64 {
        let c = e.cost as i64 * mu.denom().to_i64().unwrap_or(1) - mu.numer().to_i64().unwrap_or(0);
        c + pi[e.from] - pi[e.to]
    }

    /// Checks the potential certificate: every reduced cost is nonnegative.
    pub fn certifies(&self, mu: &Rational, pi: &[i64]) -> bool {
        pi.len() == self.num_nodes() && self.edges.iter().all(|e| self.reduced(e, mu, pi) >= 0)
    }

    /// The shortest closed walk through `start` using only tight edges.
    fn shortest_tight_cycle(&self, start: usize, mu: &Rational, pi: &[i64]) -> Option<Vec<&ShiftEdge>> {
        let mut out: Vec<Vec<&ShiftEdge>> = vec![Vec::new(); self.num_nodes()];
        for e in &self.edges {
            if self.reduced(e, mu, pi) == 0 {
                out[e.from].push(e);
            }
        }
        let mut parent: Vec<Option<&ShiftEdge>> = vec![None; self.num_nodes()];
        let mut queue = VecDeque::new();
        for e in &out[start] {
            if e.to == start {
                return Some(vec![e]);
            }
            if parent[e.to].is_none() {
                parent[e.to] = Some(e);
                queue.push_back(e.to);
            }
        }
        while let Some(x) = queue.pop_front() {
            for e in &out[x] {
                if e.to == start {
                    let mut walk = vec![*e];
                    let mut y = x;
                    while y != start {
                        let pe = parent[y].expect("visited");
                        walk.push(pe);
                        y = pe.from;
                    }
                    walk.reverse();
                    return Some(walk);
                }
                if parent[e.to].is_none() {
                    parent[e.to] = Some(e);
                    queue.push_back(e.to);
                }
            }
        }
        None
    }
}

/// `r ∈ R_{γ,ab}` from a closed walk with digit blocks `d_0, ..., d_{b-1}`.
pub fn r_from_blocks(blocks: &[Vec<u64>], q: u64) -> Vec<Rational> {
    let b = blocks.len() as u32;
    let qb = BigInt::from(q).pow(b);
    let n = blocks.first().map_or(0, |d| d.len());
    (0..n)
        .map(|i| {
            let mut s = BigInt::zero();
            for d in blocks.iter().rev() {
                s = s * q + d[i];
            }
            Rational::new(-s, &qb - 1)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaRow {
    #[serde(with = "serde_rational::vec")]
    pub gamma: Vec<Rational>,
    /// Length of the shortest optimal closed walk through `γ`, if any.
    pub optimal_b: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    #[serde(with = "serde_rational::vec")]
    pub gamma: Vec<Rational>,
    pub b: u32,
    #[serde(with = "serde_rational::vec")]
    pub v: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub w: Rational,
    pub a: u32,
    pub b_prime: usize,
    pub num_edges: usize,
    /// Scaled vertex potentials certifying that no closed walk has smaller mean.
    pub potentials: Vec<i64>,
    /// Whether `v` is the lexicographically least minimizer in `R_{γ,ab}`.
    pub v_lex_least: bool,
    pub table: Vec<GammaRow>,
}

/// The global minimum of `w(R_{γ,ab})` over the `Γ` superset and all `b`,
/// attained with `b ≤ B'`. Ties: least `γ`, then least `b`, then least `v`.
pub fn theorem_6_1_search(config: &Configuration, beta: &[Rational], p: Prime, limits: &Limits) -> Result<SearchReport> {
    let a = crate::arith::multiplicative_order(p, &crate::arith::lcm_of_denominators(beta))?;
    let gamma = compute_gamma(config, beta, p, a, limits)?;
    search_on(config, &gamma, p, limits)
}

pub fn search_on(config: &Configuration, gamma: &GammaSet, p: Prime, limits: &Limits) -> Result<SearchReport> {
    let graph = ShiftGraph::build(config, gamma, p, limits)?;
    let mu = graph
        .min_cycle_mean()
        .ok_or_else(|| GkzError::EmptySet("no closed walk in the shift graph: every R_(gamma,ab) is empty".into()))?;
    let pi = graph
        .potentials(&mu)
        .ok_or_else(|| GkzError::Overflow("potential certificate".into()))?;
    if !graph.certifies(&mu, &pi) {
        return Err(GkzError::Overflow("potential certificate failed".into()));
    }
    let a = gamma.a;
    let w = &mu / int(a as i64);
    let mut table = Vec::with_capacity(gamma.bound());
    let mut best: Option<(usize, Vec<Vec<u64>>)> = None;
    for (i, g) in gamma.elements.iter().enumerate() {
        let walk = graph.shortest_tight_cycle(i, &mu, &pi);
        table.push(GammaRow {
            gamma: g.clone(),
            optimal_b: walk.as_ref().map(|w| w.len()),
        });
        if best.is_none() {
            if let Some(walk) = walk {
                best = Some((i, walk.iter().map(|e| e.digits.clone()).collect()));
            }
        }
    }
    let (gi, blocks) = best.expect("a minimum mean cycle passes through some node");
    let b = blocks.len() as u32;
    let g = gamma.elements[gi].clone();
    let mut v = r_from_blocks(&blocks, graph.q);
    let mut v_lex_least = false;
    if limits.q_power(p, a, b).is_ok() {
        if let Some(e) = enumerate_r_beta_b(config, &g, p, a, b, limits)?
            .into_iter()
            .find(|e| e.weight == w)
        {
            v = e.r;
            v_lex_least = true;
        }
    }
    debug_assert_eq!(weight_with_exponent(&v, p, a * b)?, w);
    Ok(SearchReport {
        gamma: g,
        b,
        v,
        w,
        a,
        b_prime: gamma.bound(),
        num_edges: graph.edges.len(),
        potentials: pi,
        v_lex_least,
        table,
    })
}

/// The split of a colliding vector into two shorter digit blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Split {
    /// `ε = Σ s_i a_i` with `s = r^{(a k_1)}`.
    #[serde(with = "serde_rational::vec")]
    pub epsilon: Vec<Rational>,
    pub t: u32,
    #[serde(with = "serde_rational::vec")]
    pub s: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub u: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub v: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub w_s: Rational,
    #[serde(with = "serde_rational")]
    pub w_u: Rational,
    #[serde(with = "serde_rational")]
    pub w_v: Rational,
}

/// Splits `r ∈ R_{γ,ab}` at a collision `Σ r^{(ak_1)}_i a_i = Σ r^{(ak_2)}_i a_i`
/// into `u ∈ R_{ε,at}` and `v ∈ R_{ε,a(b-t)}` with `t = k_2 - k_1`, checking
/// `Σ u_i a_i = Σ v_i a_i = ε` and `w(s) = (t/b) w(u) + (1 - t/b) w(v)`.
pub fn lemma_6_2_split(
    config: &Configuration,
    r: &[Rational],
    p: Prime,
    a: u32,
    b: u32,
    k1: u32,
    k2: u32,
) -> Result<Split> {
    if !(k1 < k2 && k2 < b) {
        return Err(GkzError::invalid(format!(
            "need 0 <= k1 < k2 < b, got k1 = {k1}, k2 = {k2}, b = {b}"
        )));
    }
    let ab = a * b;
    let s = shift_r_with_exponent(r, p, ab, u64::from(a * k1))?;
    let s2 = shift_r_with_exponent(r, p, ab, u64::from(a * k2))?;
    let epsilon = config.combine(&s);
    if config.combine(&s2) != epsilon {
        return Err(GkzError::invalid(format!(
            "no collision between shifts {k1} and {k2}: {} vs {}",
            crate::arith::format_vector(&epsilon),
            crate::arith::format_vector(&config.combine(&s2))
        )));
    }
    let t = k2 - k1;
    let q = p.pow(a);
    let qb = q.pow(b);
    let qt = q.pow(t);
    let mut u = Vec::with_capacity(s.len());
    let mut v = Vec::with_capacity(s.len());
    for x in &s {
        let big = -(x * Rational::from_integer(&qb - 1));
        if !is_integer(&big) {
            return Err(GkzError::invalid(format!("{x} is not in R with exponent {ab}")));
        }
        let (hi, lo) = big.to_integer().div_rem(&qt);
        u.push(Rational::new(-lo, &qt - 1));
        v.push(Rational::new(-hi, q.pow(b - t) - 1));
    }
    for (name, x) in [("u", &u), ("v", &v)] {
        if config.combine(x) != epsilon {
            return Err(GkzError::invalid(format!("split vector {name} misses epsilon")));
        }
    }
    let w_s = weight_with_exponent(&s, p, ab)?;
    let w_u = weight_with_exponent(&u, p, a * t)?;
    let w_v = weight_with_exponent(&v, p, a * (b - t))?;
    let bt = Rational::new(t.into(), b.into());
    if w_s != &bt * &w_u + (Rational::one() - &bt) * &w_v {
        return Err(GkzError::invalid("split weights violate the convexity identity"));
    }
    Ok(Split {
        epsilon,
        t,
        s,
        u,
        v,
        w_s,
        w_u,
        w_v,
    })
}

/// The first collision among the shifts `r^{(ak)}`, `k < b`, if any.
pub fn find_collision(config: &Configuration, r: &[Rational], p: Prime, a: u32, b: u32) -> Result<Option<(u32, u32)>> {
    let mut seen: HashMap<Vec<Rational>, u32> = HashMap::new();
    for k in 0..b {
        let eps = config.combine(&shift_r_with_exponent(r, p, a * b, u64::from(a * k))?);
        if let Some(&k1) = seen.get(&eps) {
            return Ok(Some((k1, k)));
        }
        seen.insert(eps, k);
    }
    Ok(None)
}

/// Brute-force `min_{γ ∈ Γ', b ≤ b_max} w(R_{γ,ab})` via the digit carry
/// recursion, independent of the shift graph.
pub fn brute_force_min(
    config: &Configuration,
    gamma: &GammaSet,
    p: Prime,
    b_max: u32,
    limits: &Limits,
) -> Result<Option<(Rational, Vec<Rational>, u32)>> {
    let mut best: Option<(Rational, Vec<Rational>, u32)> = None;
    for g in &gamma.elements {
        for b in 1..=b_max {
            if let Some(w) = crate::weight::min_weight_by_carries(config, g, p, gamma.a, b, limits)? {
                if best.as_ref().is_none_or(|(bw, _, _)| w < *bw) {
                    best = Some((w, g.clone(), b));
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn example1() -> Configuration {
        Configuration::new(vec![vec![3, 0], vec![0, 3], vec![2, 2]]).unwrap()
    }

    #[test]
    fn gamma_example1() {
        let cfg = example1();
        let g = compute_gamma(&cfg, &[int(-1), int(-1)], Prime::new(3).unwrap(), 1, &Limits::default()).unwrap();
        assert!(g.contains(&[int(-1), int(-1)]));
        assert!(g.elements.iter().all(|x| x.iter().all(|c| *c < int(0) && *c >= int(-5))));
    }

    #[test]
    fn search_example1() {
        let cfg = example1();
        for p in [3u64, 5, 7] {
            let p = Prime::new(p).unwrap();
            let rep = theorem_6_1_search(&cfg, &[int(-1), int(-1)], p, &Limits::default()).unwrap();
            assert_eq!(rep.w, p.minus_one() / int(2));
            assert_eq!(rep.gamma, vec![int(-1), int(-1)]);
            assert_eq!((rep.b, rep.b_prime), (1, 23));
            assert_eq!(rep.v, vec![int(0), int(0), rat(-1, 2)]);
            let g = compute_gamma(&cfg, &[int(-1), int(-1)], p, 1, &Limits::default()).unwrap();
            let graph = ShiftGraph::build(&cfg, &g, p, &Limits::default()).unwrap();
            assert!(graph.certifies(&(rep.w.clone() * int(rep.a as i64)), &rep.potentials));
        }
    }

    #[test]
    fn zero_weight() {
        let cfg = example1();
        let rep = theorem_6_1_search(&cfg, &[int(0), int(0)], Prime::new(3).unwrap(), &Limits::default()).unwrap();
        assert_eq!(rep.w, int(0));
        assert_eq!(rep.gamma, vec![int(0), int(0)]);
        assert_eq!(rep.v, vec![int(0); 3]);
    }

    #[test]
    fn split_example() {
        let cfg = example1();
        let r = vec![rat(-1, 4), rat(-1, 4), rat(-1, 8)];
        let p = Prime::new(3).unwrap();
        assert!(lemma_6_2_split(&cfg, &r, p, 1, 2, 0, 1).is_err());
        // a periodic vector splits into itself
        let r = vec![rat(-1, 2), rat(-1, 2), int(0)];
        let sp = lemma_6_2_split(&cfg, &r, p, 1, 2, 0, 1).unwrap();
        assert_eq!(sp.u, r);
        assert_eq!(sp.v, r);
    }
}

#[cfg(test)]
mod example3_tests {
    use super::*;
    use crate::gkz::complete_intersection_config;

    #[test]
    fn search_example3() {
        let e = |i: usize, k: i64| {
            let mut v = vec![0; 6];
            v[i] = k;
            v
        };
        let a1 = vec![e(0, 3), e(1, 3), e(2, 3), vec![0, 0, 0, 1, 1, 1]];
        let a2 = vec![e(3, 3), e(4, 3), e(5, 3), vec![1, 1, 1, 0, 0, 0]];
        let ci = complete_intersection_config(&[a1, a2]).unwrap();
        let beta = ci.beta_hat(&[3, 3]).unwrap();
        for p in [2u64, 3] {
            let p = Prime::new(p).unwrap();
            let rep = theorem_6_1_search(&ci.config, &beta, p, &Limits::default()).unwrap();
            assert_eq!(rep.w, p.minus_one() * int(2));
            assert_eq!(rep.gamma, beta);
            assert_eq!(rep.b, 1);
            assert_eq!(rep.v, ci.distinguished_v(&[3, 3]).unwrap());
        }
    }
}
