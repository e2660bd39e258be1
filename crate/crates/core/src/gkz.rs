//! Point configurations, their relation lattices, negative supports and the
//! finite sets `L_{v,b}`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, is_integer, Prime, Rational};
use crate::error::{GkzError, Result};
use crate::lattice::BoxSystem;
use crate::limits::Limits;
use crate::linalg::{integer_kernel, solve, to_rational_matrix, transpose};

/// A finite set `A = {a_1, ..., a_N}` of distinct integer vectors in `ℤ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationData", into = "ConfigurationData")]
pub struct Configuration {
    dim: usize,
    columns: Vec<Vec<i64>>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigurationData {
    pub columns: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl TryFrom<ConfigurationData> for Configuration {
    type Error = GkzError;

    fn try_from(d: ConfigurationData) -> Result<Configuration> {
        Configuration::with_labels(d.columns, d.labels)
    }
}

impl From<Configuration> for ConfigurationData {
    fn from(c: Configuration) -> ConfigurationData {
        ConfigurationData {
            columns: c.columns,
            labels: c.labels,
        }
    }
}

impl Configuration {
    pub fn new(columns: Vec<Vec<i64>>) -> Result<Configuration> {
        Configuration::with_labels(columns, Vec::new())
    }

    pub fn with_labels(columns: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Configuration> {
        let Some(first) = columns.first() else {
            return Err(GkzError::invalid("configuration needs at least one column"));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(GkzError::invalid("columns must have at least one coordinate"));
        }
        for (i, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(GkzError::invalid(format!(
                    "column {i} has {} coordinates, expected {dim}",
                    c.len()
                )));
            }
            if let Some(j) = columns[..i].iter().position(|d| d == c) {
                return Err(GkzError::invalid(format!("columns {j} and {i} coincide")));
            }
        }
        if !labels.is_empty() && labels.len() != columns.len() {
            return Err(GkzError::invalid(format!(
                "{} labels given for {} columns",
                labels.len(),
                columns.len()
            )));
        }
        Ok(Configuration {
            dim,
            columns,
            labels,
        })
    }

    /// Builds a configuration from an `n × N` matrix given by rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Configuration> {
        Configuration::new(transpose(rows))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[i64] {
        &self.columns[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The `n × N` matrix by rows, over ℚ.
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        to_rational_matrix(&transpose(&self.columns))
    }

    /// `Σ c_i a_i`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        assert_eq!(coeffs.len(), self.num_columns());
        let mut out = vec![Rational::zero(); self.dim];
        for (c, col) in coeffs.iter().zip(&self.columns) {
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(col) {
                *o += c * int(x);
            }
        }
        out
    }

    pub fn combine_int(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for (&c, col) in coeffs.iter().zip(&self.columns) {
            for (o, &x) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        out
    }
}

/// A basis of the lattice of relations `L = {l ∈ ℤ^N : Σ l_i a_i = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<i64>>,
    pub ambient: usize,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// `Σ c_j b_j`.
    pub fn combination(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ambient];
        for (&c, b) in coeffs.iter().zip(&self.vectors) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// Whether `l` is an integer combination of the basis.
    pub fn contains(&self, l: &[i64]) -> bool {
        if self.vectors.is_empty() {
            return l.iter().all(|&x| x == 0);
        }
        let m = to_rational_matrix(&transpose(&self.vectors));
        let rhs: Vec<Rational> = l.iter().map(|&x| int(x)).collect();
        solve(&m, &rhs).is_some_and(|c| c.iter().all(is_integer))
    }
}

pub fn relation_lattice(config: &Configuration) -> Result<LatticeBasis> {
    let vectors = integer_kernel(config.columns(), config.dim())?;
    debug_assert!(vectors
        .iter()
        .all(|l| config.combine_int(l).iter().all(|&x| x == 0)));
    Ok(LatticeBasis {
        vectors,
        ambient: config.num_columns(),
    })
}

/// A candidate exponent vector `v ∈ ℚ^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentVector {
    #[serde(with = "crate::arith::serde_rational::vec")]
    entries: Vec<Rational>,
}

impl ExponentVector {
    pub fn new(entries: Vec<Rational>) -> ExponentVector {
        ExponentVector { entries }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn nsupp(&self) -> Vec<usize> {
        nsupp(&self.entries)
    }

    pub fn shifted(&self, l: &[i64]) -> ExponentVector {
        ExponentVector::new(add_lattice(&self.entries, l))
    }
}

/// Indices (0-based) at which `v_i` is a negative integer.
pub fn nsupp(v: &[Rational]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| is_integer(x) && x.is_negative())
        .map(|(i, _)| i)
        .collect()
}

pub fn add_lattice(v: &[Rational], l: &[i64]) -> Vec<Rational> {
    v.iter().zip(l).map(|(x, &y)| x + int(y)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Minimality {
    MinimalWithinRadius { radius: u32 },
    Counterexample { l: Vec<i64>, nsupp: Vec<usize> },
}

/// Searches `l = Σ c_j b_j` with `|c_j| ≤ radius` for `nsupp(v+l) ⊊ nsupp(v)`.
/// Coefficient vectors are scanned in lexicographic order; the first hit is returned.
pub fn minimal_negative_support(
    v: &[Rational],
    basis: &LatticeBasis,
    radius: u32,
    max_cells: u64,
) -> Result<Minimality> {
    let own = nsupp(v);
    let k = basis.rank();
    let side = 2 * radius as u64 + 1;
    let cells = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(side));
    if cells.is_none_or(|c| c > max_cells) {
        return Err(GkzError::cap("minimality search ball", max_cells));
    }
    if own.is_empty() || k == 0 {
        return Ok(Minimality::MinimalWithinRadius { radius });
    }
    let r = radius as i64;
    let mut c = vec![-r; k];
    loop {
        if c.iter().any(|&x| x != 0) {
            let l = basis.combination(&c);
            let s = nsupp(&add_lattice(v, &l));
            if s.len() < own.len() && s.iter().all(|i| own.contains(i)) {
                return Ok(Minimality::Counterexample { l, nsupp: s });
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(Minimality::MinimalWithinRadius { radius });
            }
            i -= 1;
            if c[i] < r {
                c[i] += 1;
                break;
            }
            c[i] = -r;
        }
    }
}

/// Checks that every `v_i` lies in `[-1, 0]` and that `(p^a - 1) v` is integral.
pub fn check_in_r(v: &[Rational], p: Prime, a: u32) -> Result<()> {
    for (i, x) in v.iter().enumerate() {
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
        let scaled = x * Rational::from_integer(p.pow(a) - 1);
        if !is_integer(&scaled) {
            return Err(GkzError::invalid(format!(
                "entry {i} = {x}: (p^a - 1) times it is not an integer for a = {a}"
            )));
        }
    }
    Ok(())
}

/// The finite set `L_{v,b} = {l ∈ L_v : v + (1 - q^b)^{-1} l ∈ R_{β,b}}`, `q = p^a`, sorted.
///
/// The condition `-1 ≤ v_i + l_i/(1 - q^b) ≤ 0` is the box
/// `(q^b - 1) v_i ≤ l_i ≤ (q^b - 1)(1 + v_i)`; the relation `Σ l_i a_i = 0`
/// cuts out exactly `L` because the integer kernel is saturated.
pub fn l_vb_elements(
    config: &Configuration,
    v: &[Rational],
    p: Prime,
    a: u32,
    b: u32,
    limits: &Limits,
) -> Result<Vec<Vec<i64>>> {
    if v.len() != config.num_columns() {
        return Err(GkzError::invalid(format!(
            "v has {} entries, configuration has {} columns",
            v.len(),
            config.num_columns()
        )));
    }
    check_in_r(v, p, a)?;
    let m = Rational::from_integer((limits.q_power(p, a, b)? - 1).into());
    let to_i = |x: Rational| -> i64 {
        crate::arith::to_i64(&x.to_integer(), "box bound").expect("q^b is capped")
    };
    let lo: Vec<i64> = v.iter().map(|x| to_i(&m * x)).collect();
    let hi: Vec<i64> = v.iter().map(|x| to_i(&m * (Rational::one() + x))).collect();
    let mut sys = BoxSystem::new(lo, hi);
    for row in config.rows() {
        sys = sys.equal(row, Rational::zero());
    }
    let own = nsupp(v);
    let mut out = sys.points(limits.max_nodes)?;
    out.retain(|l| nsupp(&add_lattice(v, l)) == own);
    Ok(out)
}

/// A linear form `h` with `h(a_i) = 1` for every column, if one exists.
pub fn is_nonconfluent(config: &Configuration) -> Option<Vec<Rational>> {
    let m = to_rational_matrix(config.columns());
    let ones = vec![Rational::one(); config.num_columns()];
    solve(&m, &ones)
}

/// The configuration `{(a_j^{(i)}, e_i)}` in `ℤ^{n+M}` built from `M` point sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteIntersection {
    pub config: Configuration,
    /// `(i, j)` for each column: block `i`, position `j` within the block.
    pub index: Vec<(usize, usize)>,
    pub base_dim: usize,
}

pub fn complete_intersection_config(blocks: &[Vec<Vec<i64>>]) -> Result<CompleteIntersection> {
    if blocks.is_empty() {
        return Err(GkzError::invalid("need at least one block"));
    }
    let big_m = blocks.len();
    let n = blocks
        .iter()
        .flatten()
        .map(|c| c.len())
        .next()
        .ok_or_else(|| GkzError::invalid("blocks are empty"))?;
    let mut columns = Vec::new();
    let mut index = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(GkzError::invalid(format!("block {i} is empty")));
        }
        for (j, a) in block.iter().enumerate() {
            if a.len() != n {
                return Err(GkzError::invalid(format!(
                    "block {i} column {j} has {} coordinates, expected {n}",
                    a.len()
                )));
            }
            let mut col = a.clone();
            col.extend((0..big_m).map(|k| i64::from(k == i)));
            columns.push(col);
            index.push((i, j));
        }
    }
    Ok(CompleteIntersection {
        config: Configuration::new(columns)?,
        index,
        base_dim: n,
    })
}

impl CompleteIntersection {
    pub fn num_blocks(&self) -> usize {
        self.config.dim() - self.base_dim
    }

    /// `v` with `-1` at the distinguished column of each block and `0` elsewhere.
    pub fn distinguished_v(&self, choice: &[usize]) -> Result<Vec<Rational>> {
        if choice.len() != self.num_blocks() {
            return Err(GkzError::invalid(format!(
                "need one distinguished column per block ({}), got {}",
                self.num_blocks(),
                choice.len()
            )));
        }
        let v: Vec<Rational> = self
            .index
            .iter()
            .map(|&(i, j)| if choice[i] == j { int(-1) } else { int(0) })
            .collect();
        if v.iter().filter(|x| !x.is_zero()).count() != choice.len() {
            return Err(GkzError::invalid("distinguished column index out of range"));
        }
        Ok(v)
    }

    /// `β̂ = Σ v_j^{(i)} â_j^{(i)} = (β, -1, ..., -1)`.
    pub fn beta_hat(&self, choice: &[usize]) -> Result<Vec<Rational>> {
        Ok(self.config.combine(&self.distinguished_v(choice)?))
    }
}
