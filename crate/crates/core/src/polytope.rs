//! The polytope `Δ = conv(A ∪ {0})`, its cone `C(Δ)`, faces, the polytope
//! weight `w_Δ`, and minima of `w_Δ` over shifted lattices.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{ceil, floor, int, serde_rational, to_i64, Prime, Rational};
use crate::error::{GkzError, Result};
use crate::gkz::Configuration;
use crate::lattice::BoxSystem;
use crate::limits::Limits;
use crate::linalg::{dot, nullspace, primitive, rank, rref, to_rational_matrix};
use crate::lp::{Cmp, LinearProgram, LpOutcome};
use crate::weight::{canonical_witness, shift_orbit, ShiftOrbit};

/// Facet description of `C(Δ)` and of `Δ` itself, inside the rational span of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGeometry {
    pub dim: usize,
    /// `y · x = 0` on the span of `A`.
    pub span_equations: Vec<Vec<Rational>>,
    /// Primitive integer normals `h` with `C(Δ) = {x in span : h · x ≥ 0}`.
    pub facets: Vec<Vec<Rational>>,
    /// `(h0, h)` with `Δ = {x in span : h0 + h · x ≥ 0}`.
    pub delta_facets: Vec<(Rational, Vec<Rational>)>,
    /// Vertices of `Δ` (possibly including the origin).
    pub vertices: Vec<Vec<i64>>,
    columns: Vec<Vec<i64>>,
}

/// Facets of the cone generated by `gens` inside their span, via the normals
/// of all spanning `(d - 1)`-subsets that support the whole generator set.
fn cone_facets_of(gens: &[Vec<Rational>], n: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let span_equations: Vec<Vec<Rational>> = nullspace(&gens.to_vec(), n)
        .iter()
        .map(|y| primitive(y).into_iter().map(Rational::from_integer).collect())
        .collect();
    let (row_basis, _) = rref(&gens.to_vec());
    let d = row_basis.len();
    let mut facets: Vec<Vec<Rational>> = Vec::new();
    if d == 0 {
        return (span_equations, facets);
    }
    let mut subset: Vec<usize> = (0..d - 1).collect();
    let total = gens.len();
    if d - 1 > total {
        return (span_equations, facets);
    }
    loop {
        let sub: Vec<Vec<Rational>> = subset.iter().map(|&i| gens[i].clone()).collect();
        if d == 1 || rank(&sub) == d - 1 {
            // h = Σ c_k b_k with h · g = 0 for g in the subset
            let m: Vec<Vec<Rational>> = sub
                .iter()
                .map(|g| row_basis.iter().map(|b| dot(b, g)).collect())
                .collect();
            let cs = if d == 1 {
                vec![vec![Rational::one()]]
            } else {
                nullspace(&m, d)
            };
            if cs.len() == 1 {
                let mut h = vec![Rational::zero(); n];
                for (c, b) in cs[0].iter().zip(&row_basis) {
                    for (x, y) in h.iter_mut().zip(b) {
                        *x += c * y;
                    }
                }
                let vals: Vec<Rational> = gens.iter().map(|g| dot(&h, g)).collect();
                let sign = if vals.iter().all(|x| !x.is_negative()) {
                    Some(Rational::one())
                } else if vals.iter().all(|x| !x.is_positive()) {
                    Some(-Rational::one())
                } else {
                    None
                };
                if let Some(sign) = sign {
                    if vals.iter().any(|x| !x.is_zero()) {
                        let h: Vec<Rational> = primitive(&h.iter().map(|x| x * &sign).collect::<Vec<_>>())
                            .into_iter()
                            .map(Rational::from_integer)
                            .collect();
                        if !facets.contains(&h) {
                            facets.push(h);
                        }
                    }
                }
            }
        }
        // next (d-1)-subset in lexicographic order
        let k = d - 1;
        let mut i = k;
        loop {
            if i == 0 {
                facets.sort();
                return (span_equations, facets);
            }
            i -= 1;
            if subset[i] < total - k + i {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            facets.sort();
            return (span_equations, facets);
        }
    }
}

pub fn cone_facets(config: &Configuration) -> Result<ConeGeometry> {
    let n = config.dim();
    let gens = to_rational_matrix(config.columns());
    let (span_equations, facets) = cone_facets_of(&gens, n);

    let mut hom: Vec<Vec<Rational>> = vec![std::iter::once(Rational::one())
        .chain((0..n).map(|_| Rational::zero()))
        .collect()];
    for g in &gens {
        hom.push(std::iter::once(Rational::one()).chain(g.iter().cloned()).collect());
    }
    let (_, hfacets) = cone_facets_of(&hom, n + 1);
    let delta_facets = hfacets
        .into_iter()
        .map(|f| (f[0].clone(), f[1..].to_vec()))
        .collect();

    let mut points: Vec<Vec<i64>> = vec![vec![0; n]];
    points.extend(config.columns().iter().cloned());
    let mut vertices = Vec::new();
    for (i, pt) in points.iter().enumerate() {
        // pt is a vertex iff it is not a convex combination of the other points
        let others: Vec<&Vec<i64>> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q)
            .collect();
        let mut lp = LinearProgram::nonnegative(others.len());
        for coord in 0..n {
            lp.constrain(
                others.iter().map(|q| int(q[coord])).collect(),
                Cmp::Eq,
                int(pt[coord]),
            );
        }
        lp.constrain(vec![Rational::one(); others.len()], Cmp::Eq, Rational::one());
        if !lp.minimize().is_feasible() {
            vertices.push(pt.clone());
        }
    }
    Ok(ConeGeometry {
        dim: n,
        span_equations,
        facets,
        delta_facets,
        vertices,
        columns: config.columns().to_vec(),
    })
}

impl ConeGeometry {
    pub fn in_span(&self, x: &[Rational]) -> bool {
        self.span_equations.iter().all(|y| dot(y, x).is_zero())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.in_span(x) && self.facets.iter().all(|h| !dot(h, x).is_negative())
    }

    fn tight(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| dot(&self.facets[i], x).is_zero())
            .collect()
    }

    /// Coordinate ranges of `Δ` (the hull of the origin and the columns).
    fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![0i64; self.dim];
        let mut hi = vec![0i64; self.dim];
        for c in &self.columns {
            for j in 0..self.dim {
                lo[j] = lo[j].min(c[j]);
                hi[j] = hi[j].max(c[j]);
            }
        }
        (lo, hi)
    }
}

/// `w_Δ(γ) = min { Σ t_i : t ≥ 0, Σ t_i a_i = γ }`.
pub fn w_delta(config: &Configuration, gamma: &[Rational]) -> Result<Rational> {
    let big_n = config.num_columns();
    let mut lp = LinearProgram::nonnegative(big_n);
    for (row, g) in config.rows().into_iter().zip(gamma) {
        lp.constrain(row, Cmp::Eq, g.clone());
    }
    lp.objective(vec![Rational::one(); big_n]);
    match lp.minimize() {
        LpOutcome::Optimal { value, .. } => Ok(value),
        _ => Err(GkzError::OutsideCone(crate::arith::format_vector(gamma))),
    }
}

/// A face of `C(Δ)`, identified by the facets vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub facets: Vec<usize>,
    /// Columns of `A` lying on the face.
    pub columns: Vec<usize>,
}

pub fn smallest_face(gamma: &[Rational], geom: &ConeGeometry) -> Result<Face> {
    if !geom.contains(gamma) {
        return Err(GkzError::OutsideCone(crate::arith::format_vector(gamma)));
    }
    let facets = geom.tight(gamma);
    let columns = (0..geom.columns.len())
        .filter(|&i| {
            let a: Vec<Rational> = geom.columns[i].iter().map(|&x| int(x)).collect();
            facets.iter().all(|&f| dot(&geom.facets[f], &a).is_zero())
        })
        .collect();
    Ok(Face { facets, columns })
}

/// Whether `gamma` lies in the relative interior of `face`: in the cone, and
/// tight on exactly the facets defining the face.
pub fn in_relative_interior(gamma: &[Rational], face: &Face, geom: &ConeGeometry) -> bool {
    geom.contains(gamma) && geom.tight(gamma) == face.facets
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Cone,
    FaceInterior(Face),
}

impl Region {
    fn admits(&self, gamma: &[Rational], geom: &ConeGeometry) -> bool {
        match self {
            Region::Cone => geom.contains(gamma),
            Region::FaceInterior(face) => in_relative_interior(gamma, face, geom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetMinimum {
    #[serde(with = "serde_rational")]
    pub min: Rational,
    #[serde(with = "serde_rational::vec")]
    pub argmin: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub dilation: Rational,
    pub points_scanned: u64,
}

/// Minimum of `w_Δ` over `(rep + ℤ^n) ∩ region`, scanning the coset points of
/// the dilate `W·Δ`. Every point with `w_Δ ≤ W` lies in `W·Δ`, so the result is
/// the global minimum; if no point is found the cap is reported.
pub fn min_wdelta_on_coset(
    config: &Configuration,
    geom: &ConeGeometry,
    rep: &[Rational],
    region: &Region,
    cap_w: &Rational,
    limits: &Limits,
) -> Result<CosetMinimum> {
    let n = geom.dim;
    if rep.len() != n {
        return Err(GkzError::invalid("coset representative has wrong length"));
    }
    let (blo, bhi) = geom.bounding_box();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        lo.push(to_i64(&ceil(&(cap_w * int(blo[j]) - &rep[j])), "coset box")?);
        hi.push(to_i64(&floor(&(cap_w * int(bhi[j]) - &rep[j])), "coset box")?);
    }
    let mut sys = BoxSystem::new(lo, hi);
    for y in &geom.span_equations {
        sys = sys.equal(y.clone(), -dot(y, rep));
    }
    for (h0, h) in &geom.delta_facets {
        sys = sys.at_least(h.clone(), -(h0 * cap_w) - dot(h, rep));
    }
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut scanned = 0u64;
    let mut failure = None;
    sys.for_each(limits.max_nodes, |z| {
        scanned += 1;
        if scanned > limits.max_cells {
            failure = Some(GkzError::cap("coset points scanned", limits.max_cells));
            return false;
        }
        let gamma: Vec<Rational> = rep.iter().zip(z).map(|(r, &x)| r + int(x)).collect();
        if !region.admits(&gamma, geom) {
            return true;
        }
        match w_delta(config, &gamma) {
            Ok(w) => {
                let better = match &best {
                    None => true,
                    Some((bw, bg)) => w < *bw || (w == *bw && gamma < *bg),
                };
                if better {
                    best = Some((w, gamma));
                }
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    match best {
        Some((min, argmin)) if min <= *cap_w => Ok(CosetMinimum {
            min,
            argmin,
            dilation: cap_w.clone(),
            points_scanned: scanned,
        }),
        _ => Err(GkzError::cap(
            format!("no coset point with w_delta <= {cap_w}"),
            cap_w,
        )),
    }
}

/// As [`min_wdelta_on_coset`], starting from `W = w_Δ(rep)` when `rep` itself
/// is admissible (else `W = 1`) and doubling up to `limits.max_dilation`.
pub fn min_wdelta_on_coset_auto(
    config: &Configuration,
    geom: &ConeGeometry,
    rep: &[Rational],
    region: &Region,
    limits: &Limits,
) -> Result<CosetMinimum> {
    let mut w = if region.admits(rep, geom) {
        w_delta(config, rep)?
    } else {
        Rational::one()
    };
    let ceiling = int(limits.max_dilation as i64);
    loop {
        match min_wdelta_on_coset(config, geom, rep, region, &w, limits) {
            Err(GkzError::CapExceeded { what, .. }) if what.starts_with("no coset point") => {
                if w >= ceiling {
                    return Err(GkzError::cap("coset dilation", limits.max_dilation));
                }
                w = if w.is_zero() { Rational::one() } else { w * int(2) };
                if w > ceiling {
                    w = ceiling.clone();
                }
            }
            other => return other,
        }
    }
}

/// The lower bound `(p-1)/e · Σ_k w_Δ(σ°_{-β} ∩ (-β^{(k)} + ℤ^n)) ≤ w(R_β)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    pub e: u32,
    pub orbit: ShiftOrbit,
    pub face: Face,
    pub per_shift: Vec<CosetMinimum>,
}

pub fn corollary_3_5_bound(
    config: &Configuration,
    beta: &[Rational],
    p: Prime,
    a: u32,
    b_max: u32,
    limits: &Limits,
) -> Result<BoundReport> {
    let witness = canonical_witness(config, beta, p, a, b_max, limits)?;
    let orbit = shift_orbit(config, &witness, p)?;
    let geom = cone_facets(config)?;
    let minus_beta: Vec<Rational> = beta.iter().map(|x| -x.clone()).collect();
    let face = smallest_face(&minus_beta, &geom)?;
    let region = Region::FaceInterior(face.clone());
    let mut per_shift = Vec::new();
    let mut total = Rational::zero();
    for k in 0..orbit.e as usize {
        let rep: Vec<Rational> = orbit.beta_shifts[k].iter().map(|x| -x.clone()).collect();
        let m = min_wdelta_on_coset_auto(config, &geom, &rep, &region, limits)?;
        total += &m.min;
        per_shift.push(m);
    }
    let bound = total * p.minus_one() / int(orbit.e as i64);
    Ok(BoundReport {
        bound,
        e: orbit.e,
        orbit,
        face,
        per_shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn example1() -> Configuration {
        Configuration::new(vec![vec![3, 0], vec![0, 3], vec![2, 2]]).unwrap()
    }

    #[test]
    fn facets_of_example_one() {
        let g = cone_facets(&example1()).unwrap();
        assert_eq!(g.facets, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert!(g.span_equations.is_empty());
        assert_eq!(g.vertices, vec![vec![0, 0], vec![3, 0], vec![0, 3], vec![2, 2]]);
    }

    #[test]
    fn facets_of_orthant_and_confluent_example() {
        let id = Configuration::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(cone_facets(&id).unwrap().facets.len(), 3);
        let c = Configuration::new(vec![vec![1, 0], vec![0, 1], vec![1, -1]]).unwrap();
        let g = cone_facets(&c).unwrap();
        for h in &g.facets {
            let tight = c
                .columns()
                .iter()
                .filter(|a| dot(h, &a.iter().map(|&x| int(x)).collect::<Vec<_>>()).is_zero())
                .count();
            assert!(tight >= 1);
            for a in c.columns() {
                assert!(!dot(h, &a.iter().map(|&x| int(x)).collect::<Vec<_>>()).is_negative());
            }
        }
    }

    #[test]
    fn lower_dimensional_span() {
        let c = Configuration::new(vec![vec![1, 1, 0], vec![2, 2, 1]]).unwrap();
        let g = cone_facets(&c).unwrap();
        assert_eq!(g.span_equations.len(), 1);
        assert!(g.contains(&[int(3), int(3), int(1)]));
        assert!(!g.contains(&[int(3), int(2), int(1)]));
        assert_eq!(w_delta(&c, &[int(3), int(3), int(1)]).unwrap(), int(2));
    }

    #[test]
    fn polytope_weights() {
        let c = example1();
        assert_eq!(w_delta(&c, &[int(1), int(1)]).unwrap(), rat(1, 2));
        assert_eq!(w_delta(&c, &[int(2), int(2)]).unwrap(), int(1));
        assert_eq!(w_delta(&c, &[int(4), int(1)]).unwrap(), rat(3, 2));
        assert!(matches!(w_delta(&c, &[int(-1), int(0)]), Err(GkzError::OutsideCone(_))));
    }

    #[test]
    fn faces() {
        let g = cone_facets(&example1()).unwrap();
        let full = smallest_face(&[int(1), int(1)], &g).unwrap();
        assert!(full.facets.is_empty());
        let origin = smallest_face(&[int(0), int(0)], &g).unwrap();
        assert_eq!(origin.facets.len(), 2);
        assert!(in_relative_interior(&[int(0), int(0)], &origin, &g));
        let ray = smallest_face(&[int(1), int(0)], &g).unwrap();
        assert!(in_relative_interior(&[int(1), int(0)], &ray, &g));
        assert!(!in_relative_interior(&[int(0), int(0)], &ray, &g));
        assert_eq!(ray.columns, vec![0]);
    }

    #[test]
    fn coset_minima() {
        let c = example1();
        let g = cone_facets(&c).unwrap();
        let lim = Limits::default();
        let face = smallest_face(&[int(1), int(1)], &g).unwrap();
        let m = min_wdelta_on_coset(&c, &g, &[int(1), int(1)], &Region::FaceInterior(face), &int(2), &lim)
            .unwrap();
        assert_eq!((m.min, m.argmin), (rat(1, 2), vec![int(1), int(1)]));
        let m = min_wdelta_on_coset(&c, &g, &[int(0), int(0)], &Region::Cone, &int(3), &lim).unwrap();
        assert_eq!(m.min, int(0));
    }

    #[test]
    fn bounds_for_example_one() {
        let c = example1();
        let lim = Limits::default();
        let beta = [int(-1), int(-1)];
        for (p, expect) in [(3, 1), (7, 3)] {
            let rep = corollary_3_5_bound(&c, &beta, Prime::new(p).unwrap(), 1, 3, &lim).unwrap();
            assert_eq!(rep.bound, int(expect));
            assert_eq!(rep.e, 1);
        }
        let zero = corollary_3_5_bound(&c, &[int(0), int(0)], Prime::new(3).unwrap(), 1, 1, &lim).unwrap();
        assert_eq!(zero.bound, int(0));
    }
}
