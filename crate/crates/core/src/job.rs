//! Declarative job descriptions and the built-in presets.

use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, Prime, Rational};
use crate::classical::{to_gkz, ClassicalParams};
use crate::error::{GkzError, Result};
use crate::gkz::{complete_intersection_config, Configuration};
use crate::limits::Limits;

/// A rational entry in a job file: an integer or a string such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn parse(&self, field: &str) -> Result<Rational> {
        match self {
            Entry::Int(n) => Ok(Rational::from_integer((*n).into())),
            Entry::Text(s) => parse_rational(s, field),
        }
    }
}

impl From<&str> for Entry {
    fn from(s: &str) -> Entry {
        Entry::Text(s.to_string())
    }
}

/// Every field is optional; a preset fills in whatever the file leaves out.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub preset: Option<String>,
    pub columns: Option<Vec<Vec<i64>>>,
    pub labels: Option<Vec<String>>,
    pub p: Option<u64>,
    pub v: Option<Vec<Entry>>,
    pub beta: Option<Vec<Entry>>,
    pub r: Option<Vec<Entry>>,
    pub theta: Option<Vec<Entry>>,
    pub sigma: Option<Vec<Entry>>,
    pub b: Option<u32>,
    pub b_max: Option<u32>,
    pub radius: Option<u32>,
    pub cap_w: Option<u32>,
    pub j_max: Option<u32>,
    pub limits: Option<Limits>,
}

pub const PRESETS: [&str; 4] = ["example1", "example2", "example3", "libgober-teitelbaum"];

fn entries(xs: &[&str]) -> Option<Vec<Entry>> {
    Some(xs.iter().map(|&s| Entry::from(s)).collect())
}

fn cubic_pair() -> Vec<Vec<i64>> {
    let e = |i: usize, k: i64| {
        let mut v = vec![0; 6];
        v[i] = k;
        v
    };
    let a1 = vec![e(0, 3), e(1, 3), e(2, 3), vec![0, 0, 0, 1, 1, 1]];
    let a2 = vec![e(3, 3), e(4, 3), e(5, 3), vec![1, 1, 1, 0, 0, 0]];
    complete_intersection_config(&[a1, a2])
        .expect("fixed blocks")
        .config
        .columns()
        .to_vec()
}

pub fn preset(name: &str) -> Result<JobSpec> {
    let base = JobSpec {
        preset: Some(name.to_string()),
        ..JobSpec::default()
    };
    let eight = ["0", "0", "0", "-1", "0", "0", "0", "-1"];
    let spec = match name {
        "example1" => JobSpec {
            columns: Some(vec![vec![3, 0], vec![0, 3], vec![2, 2]]),
            p: Some(3),
            v: entries(&["0", "0", "-1/2"]),
            beta: entries(&["-1", "-1"]),
            b_max: Some(3),
            ..base
        },
        "example2" => JobSpec {
            p: Some(3),
            theta: entries(&["5/13", "6/13"]),
            sigma: entries(&["1/2"]),
            j_max: Some(200),
            b_max: Some(1),
            ..base
        },
        "example3" => JobSpec {
            columns: Some(cubic_pair()),
            p: Some(2),
            v: entries(&eight),
            beta: entries(&["-1"; 8]),
            b_max: Some(2),
            ..base
        },
        "libgober-teitelbaum" => JobSpec {
            columns: Some(cubic_pair()),
            p: Some(5),
            v: entries(&eight),
            beta: entries(&["-1"; 8]),
            b: Some(1),
            b_max: Some(1),
            j_max: Some(40),
            ..base
        },
        other => {
            return Err(GkzError::Parse {
                field: "preset".into(),
                message: format!("unknown preset {other:?}; known: {}", PRESETS.join(", ")),
            })
        }
    };
    Ok(spec)
}

impl JobSpec {
    pub fn from_toml(text: &str) -> Result<JobSpec> {
        toml::from_str(text).map_err(|e| GkzError::Parse {
            field: "job file".into(),
            message: e.to_string(),
        })
    }

    /// Fields of `self` win over those of `other`. An explicit `v` without an
    /// explicit `β` drops the other side's `β`, which is then recomputed from `v`.
    pub fn or(self, other: JobSpec) -> JobSpec {
        let other_beta = if self.v.is_some() { None } else { other.beta };
        JobSpec {
            preset: self.preset.or(other.preset),
            columns: self.columns.or(other.columns),
            labels: self.labels.or(other.labels),
            p: self.p.or(other.p),
            v: self.v.or(other.v),
            beta: self.beta.or(other_beta),
            r: self.r.or(other.r),
            theta: self.theta.or(other.theta),
            sigma: self.sigma.or(other.sigma),
            b: self.b.or(other.b),
            b_max: self.b_max.or(other.b_max),
            radius: self.radius.or(other.radius),
            cap_w: self.cap_w.or(other.cap_w),
            j_max: self.j_max.or(other.j_max),
            limits: self.limits.or(other.limits),
        }
    }

    /// Expands the named preset underneath the explicit fields.
    pub fn resolved(self) -> Result<JobSpec> {
        match self.preset.clone() {
            Some(name) => Ok(self.or(preset(&name)?)),
            None => Ok(self),
        }
    }

    pub fn prime(&self) -> Result<Prime> {
        Prime::new(self.p.ok_or_else(|| missing("p"))?)
    }

    pub fn limits(&self) -> Limits {
        self.limits.unwrap_or_default()
    }

    fn list(&self, xs: &Option<Vec<Entry>>, field: &str) -> Result<Option<Vec<Rational>>> {
        xs.as_ref()
            .map(|xs| {
                xs.iter()
                    .enumerate()
                    .map(|(i, x)| x.parse(&format!("{field}[{i}]")))
                    .collect()
            })
            .transpose()
    }

    pub fn classical(&self) -> Result<Option<ClassicalParams>> {
        match (self.list(&self.theta, "theta")?, self.list(&self.sigma, "sigma")?) {
            (None, None) => Ok(None),
            (t, s) => ClassicalParams::new(t.unwrap_or_default(), s.unwrap_or_default()).map(Some),
        }
    }

    /// The configuration, taken from `columns` or from the classical embedding.
    pub fn configuration(&self) -> Result<Configuration> {
        if let Some(cols) = &self.columns {
            return match &self.labels {
                Some(l) => Configuration::with_labels(cols.clone(), l.clone()),
                None => Configuration::new(cols.clone()),
            };
        }
        match self.classical()? {
            Some(params) => Ok(to_gkz(&params)?.config),
            None => Err(missing("columns")),
        }
    }

    pub fn v(&self) -> Result<Vec<Rational>> {
        if let Some(v) = self.list(&self.v, "v")? {
            return Ok(v);
        }
        match (&self.columns, self.classical()?) {
            (None, Some(params)) => Ok(to_gkz(&params)?.v),
            _ => Err(missing("v")),
        }
    }

    /// `β`, defaulting to `Σ v_i a_i`.
    pub fn beta(&self) -> Result<Vec<Rational>> {
        if let Some(b) = self.list(&self.beta, "beta")? {
            return Ok(b);
        }
        let config = self.configuration()?;
        let v = self.v().map_err(|_| missing("beta"))?;
        if v.len() != config.num_columns() {
            return Err(dimension("v", v.len(), config.num_columns()));
        }
        Ok(config.combine(&v))
    }

    pub fn r(&self) -> Result<Vec<Rational>> {
        self.list(&self.r, "r")?.ok_or_else(|| missing("r"))
    }
}

fn missing(field: &str) -> GkzError {
    GkzError::Parse {
        field: field.into(),
        message: "required by this command but not given".into(),
    }
}

pub(crate) fn dimension(field: &str, got: usize, want: usize) -> GkzError {
    GkzError::Parse {
        field: field.into(),
        message: format!("has {got} entries, expected {want}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn presets_expand() {
        for name in PRESETS {
            let job = preset(name).unwrap();
            assert!(job.configuration().is_ok(), "{name}");
            assert!(job.prime().is_ok());
        }
        let e1 = preset("example1").unwrap();
        assert_eq!(e1.v().unwrap(), vec![int(0), int(0), rat(-1, 2)]);
        assert_eq!(e1.beta().unwrap(), vec![int(-1), int(-1)]);
        let e2 = preset("example2").unwrap();
        assert_eq!(e2.configuration().unwrap().num_columns(), 4);
        assert_eq!(e2.beta().unwrap(), vec![rat(-5, 13), rat(-6, 13), rat(-1, 2)]);
        assert!(preset("nope").is_err());
    }

    #[test]
    fn toml_overrides_preset() {
        let job = JobSpec::from_toml("preset = \"example1\"\np = 7\nv = [\"-2/3\", \"-2/3\", 0]\n")
            .unwrap()
            .resolved()
            .unwrap();
        assert_eq!(job.p, Some(7));
        assert_eq!(job.v().unwrap()[0], rat(-2, 3));
        assert_eq!(job.beta().unwrap(), vec![int(-2), int(-2)]);
        assert!(JobSpec::from_toml("bogus = 1").is_err());
        let bad = JobSpec::from_toml("v = [\"1/0\"]").unwrap();
        assert!(matches!(bad.v(), Err(GkzError::Parse { .. })));
    }
}
