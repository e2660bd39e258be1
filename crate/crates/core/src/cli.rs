//! Command dispatch for the `padic-gkz` binary: every command turns a
//! [`JobSpec`] into a plain-text summary, a JSON report, and an exit status.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{format_int_vector, format_vector, lcm_of_denominators, multiplicative_order};
use crate::classical::{classical_valuations, dominated, dwork_check, prop_4_7_check, to_gkz};
use crate::error::{GkzError, Result};
use crate::gkz::{minimal_negative_support, nsupp, relation_lattice, Minimality};
use crate::job::{dimension, preset, JobSpec};
use crate::polytope::{
    cone_facets, corollary_3_5_bound, min_wdelta_on_coset, min_wdelta_on_coset_auto, w_delta, Region,
};
use crate::search::theorem_6_1_search;
use crate::series::{coefficient, integrality_verdict, truncate_phi, Outcome};
use crate::weight::{enumerate_r_beta_b, normalization_exponent, weight};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Kernel,
    Weight,
    Enumerate,
    Truncate,
    Verdict,
    Wdelta,
    Bound,
    Classical,
    Search,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Kernel,
        Command::Weight,
        Command::Enumerate,
        Command::Truncate,
        Command::Verdict,
        Command::Wdelta,
        Command::Bound,
        Command::Classical,
        Command::Search,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Kernel => "kernel",
            Command::Weight => "weight",
            Command::Enumerate => "enumerate",
            Command::Truncate => "truncate",
            Command::Verdict => "verdict",
            Command::Wdelta => "wdelta",
            Command::Bound => "bound",
            Command::Classical => "classical",
            Command::Search => "search",
        }
    }
}

impl FromStr for Command {
    type Err = GkzError;

    fn from_str(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| GkzError::Parse {
                field: "command".into(),
                message: format!("unknown command {s:?}"),
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Command,
    pub text: String,
    pub json: Value,
    pub exit: u8,
}

pub fn exit_code(e: &GkzError) -> u8 {
    match e {
        GkzError::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INVALID,
    }
}

pub fn run(command: Command, job: &JobSpec) -> Result<Report> {
    let (text, result, exit) = match command {
        Command::Kernel => kernel(job)?,
        Command::Weight => weight_cmd(job)?,
        Command::Enumerate => enumerate(job)?,
        Command::Truncate => truncate(job)?,
        Command::Verdict => verdict(job)?,
        Command::Wdelta => wdelta(job)?,
        Command::Bound => bound(job)?,
        Command::Classical => classical(job)?,
        Command::Search => search(job)?,
    };
    let json = json!({
        "command": command.name(),
        "preset": job.preset,
        "p": job.p,
        "result": result,
    });
    Ok(Report {
        command,
        text,
        json,
        exit,
    })
}

type Outcome3 = (String, Value, u8);

fn to_json<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| GkzError::invalid(format!("serializing report: {e}")))
}

fn exponent_for(xs: &[crate::Rational], job: &JobSpec) -> Result<u32> {
    multiplicative_order(job.prime()?, &lcm_of_denominators(xs))
}

fn checked_v(job: &JobSpec, n: usize) -> Result<Vec<crate::Rational>> {
    let v = job.v()?;
    if v.len() != n {
        return Err(dimension("v", v.len(), n));
    }
    Ok(v)
}

fn checked_beta(job: &JobSpec, n: usize) -> Result<Vec<crate::Rational>> {
    let b = job.beta()?;
    if b.len() != n {
        return Err(dimension("beta", b.len(), n));
    }
    Ok(b)
}

fn kernel(job: &JobSpec) -> Result<Outcome3> {
    let config = job.configuration()?;
    let basis = relation_lattice(&config)?;
    let mut text = format!("relation lattice: rank {}\n", basis.rank());
    for g in &basis.vectors {
        writeln!(text, "  {}", format_int_vector(g)).ok();
    }
    let mut result = json!({ "rank": basis.rank(), "basis": basis.vectors });
    if job.v.is_some() {
        let v = checked_v(job, config.num_columns())?;
        let radius = job.radius.unwrap_or(3);
        let m = minimal_negative_support(&v, &basis, radius, job.limits().max_cells)?;
        match &m {
            Minimality::MinimalWithinRadius { radius } => writeln!(
                text,
                "nsupp(v) = {} is minimal within radius {radius}",
                format_int_vector(&nsupp(&v))
            ),
            Minimality::Counterexample { l, nsupp } => writeln!(
                text,
                "nsupp(v) is not minimal: l = {} gives nsupp {}",
                format_int_vector(l),
                format_int_vector(nsupp)
            ),
        }
        .ok();
        result["minimality"] = to_json(&m)?;
    }
    Ok((text, result, EXIT_OK))
}

fn weight_cmd(job: &JobSpec) -> Result<Outcome3> {
    let r = job.r()?;
    let rep = weight(&r, job.prime()?)?;
    let text = format!(
        "w({}) = {} (a = {}, digit sources {})\n",
        format_vector(&r),
        rep.w,
        rep.a,
        rep.s.join(", ")
    );
    Ok((text, to_json(&rep)?, EXIT_OK))
}

fn enumerate(job: &JobSpec) -> Result<Outcome3> {
    let config = job.configuration()?;
    let beta = checked_beta(job, config.dim())?;
    let p = job.prime()?;
    let a = exponent_for(&beta, job)?;
    let b = job.b.unwrap_or(1);
    let all = enumerate_r_beta_b(&config, &beta, p, a, b, &job.limits())?;
    let mut text = format!("R_(beta,{b}) for beta = {}, p = {p}, a = {a}: {} elements\n", format_vector(&beta), all.len());
    for e in &all {
        writeln!(text, "  r = {}  w = {}", format_vector(&e.r), e.weight).ok();
    }
    if let Some(min) = all.iter().map(|e| &e.weight).min() {
        writeln!(text, "w(R_(beta,{b})) = {min}").ok();
    }
    Ok((text, json!({ "a": a, "b": b, "elements": to_json(&all)? }), EXIT_OK))
}

fn truncate(job: &JobSpec) -> Result<Outcome3> {
    let config = job.configuration()?;
    let v = checked_v(job, config.num_columns())?;
    let p = job.prime()?;
    let a = normalization_exponent(&v, p)?;
    let b = job.b.unwrap_or(1);
    let ts = truncate_phi(&config, &v, p, a, b, &job.limits())?;
    let mut text = format!("Phi_(v,{b}) for v = {}, p = {p}: {} terms\n", format_vector(&v), ts.terms.len());
    for t in &ts.terms {
        writeln!(
            text,
            "  l = {}  coeff = {}  pi^{}  ord = {}",
            format_int_vector(&t.l),
            t.coeff,
            t.pi_exponent,
            t.valuation
        )
        .ok();
    }
    writeln!(text, "min valuation: {}", ts.min_valuation()).ok();
    let mut result = json!({ "series": to_json(&ts)? });
    // along a rank-one relation lattice, list the coefficients of the generator's multiples
    let basis = relation_lattice(&config)?;
    if let (Some(j_max), [g]) = (job.j_max, basis.vectors.as_slice()) {
        let sign = ray_sign(&v, g);
        let mut coeffs = Vec::new();
        for j in 0..=i64::from(j_max) {
            let l: Vec<i64> = g.iter().map(|x| sign * j * x).collect();
            coeffs.push(coefficient(&v, &l)?.to_string());
        }
        writeln!(text, "ray coefficients (j = 0..{j_max}): {}", coeffs[..coeffs.len().min(6)].join(", ")).ok();
        result["ray"] = json!({ "generator": g.iter().map(|x| sign * x).collect::<Vec<_>>(), "coefficients": coeffs });
    }
    Ok((text, result, EXIT_OK))
}

/// The direction along the generator that keeps the negative support of `v`.
fn ray_sign(v: &[crate::Rational], g: &[i64]) -> i64 {
    let own = nsupp(v);
    let shifted: Vec<crate::Rational> = v.iter().zip(g).map(|(x, &y)| x + crate::arith::int(y)).collect();
    if nsupp(&shifted) == own {
        1
    } else {
        -1
    }
}

fn verdict(job: &JobSpec) -> Result<Outcome3> {
    let config = job.configuration()?;
    let v = checked_v(job, config.num_columns())?;
    let beta = checked_beta(job, config.dim())?;
    let p = job.prime()?;
    let b_max = job.b_max.unwrap_or(3);
    let vd = integrality_verdict(&config, &v, &beta, p, b_max, &job.limits())?;
    let mut text = String::new();
    let exit = match &vd.outcome {
        Outcome::IntegralUpTo { b_max } => {
            writeln!(text, "integral-up-to-{b_max}, w(v)=w(R_{{β,b}})={}", vd.w_v).ok();
            EXIT_OK
        }
        Outcome::Witness { b, term } => {
            writeln!(
                text,
                "not integral: witness at b={b}, l = {}, coefficient {} pi^{}, valuation {}",
                format_int_vector(&term.l),
                term.coeff,
                term.pi_exponent,
                term.valuation
            )
            .ok();
            EXIT_NEGATIVE
        }
    };
    for lv in &vd.levels {
        writeln!(
            text,
            "  b={}: |R_(beta,b)| = {}, w(R_(beta,b)) = {}, {} terms, min valuation {}",
            lv.b, lv.r_count, lv.w_min, lv.terms, lv.min_valuation
        )
        .ok();
    }
    writeln!(text, "certificate: {}", vd.certificate.summary()).ok();
    Ok((text, to_json(&vd)?, exit))
}

fn wdelta(job: &JobSpec) -> Result<Outcome3> {
    let config = job.configuration()?;
    let gamma = checked_beta(job, config.dim())?;
    let geom = cone_facets(&config)?;
    let limits = job.limits();
    let mut text = String::new();
    let mut result = json!({ "facets": geom.facets.iter().map(|h| format_vector(h)).collect::<Vec<_>>() });
    match w_delta(&config, &gamma) {
        Ok(w) => {
            writeln!(text, "w_Delta({}) = {w}", format_vector(&gamma)).ok();
            result["w_delta"] = json!(w.to_string());
        }
        Err(GkzError::OutsideCone(_)) => {
            writeln!(text, "{} lies outside the cone", format_vector(&gamma)).ok();
            result["w_delta"] = Value::Null;
        }
        Err(e) => return Err(e),
    }
    let coset = match job.cap_w {
        Some(cap) => min_wdelta_on_coset(&config, &geom, &gamma, &Region::Cone, &crate::arith::int(cap.into()), &limits)?,
        None => min_wdelta_on_coset_auto(&config, &geom, &gamma, &Region::Cone, &limits)?,
    };
    writeln!(
        text,
        "min w_Delta on the coset: {} at {}",
        coset.min,
        format_vector(&coset.argmin)
    )
    .ok();
    result["coset"] = to_json(&coset)?;
    Ok((text, result, EXIT_OK))
}

fn bound(job: &JobSpec) -> Result<Outcome3> {
    let config = job.configuration()?;
    let beta = checked_beta(job, config.dim())?;
    let p = job.prime()?;
    let a = exponent_for(&beta, job)?;
    let rep = corollary_3_5_bound(&config, &beta, p, a, job.b_max.unwrap_or(3), &job.limits())?;
    let mut text = format!("lower bound on w(R_beta): {} (e = {})\n", rep.bound, rep.e);
    for (k, m) in rep.per_shift.iter().enumerate() {
        writeln!(text, "  shift {k}: coset minimum {} at {}", m.min, format_vector(&m.argmin)).ok();
    }
    Ok((text, to_json(&rep)?, EXIT_OK))
}

fn classical(job: &JobSpec) -> Result<Outcome3> {
    let params = job.classical()?.ok_or_else(|| GkzError::Parse {
        field: "theta/sigma".into(),
        message: "required by this command but not given".into(),
    })?;
    let p = job.prime()?;
    let dom = dominated(&params)?;
    let shifted = prop_4_7_check(&params, p)?;
    let digits = dwork_check(&params, p)?;
    let j_max = job.j_max.unwrap_or(200);
    let vals = classical_valuations(&params, p, j_max)?;
    let (j_min, v_min) = vals
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.cmp(y.1))
        .map(|(j, v)| (j, v.clone()))
        .expect("j = 0 is present");
    let mut text = format!("Prop4.7: {}, Prop4.10: {}\n", shifted.holds, digits.holds);
    writeln!(text, "dominated: {} (a = {})", dom.verdict, shifted.a).ok();
    if let Some(k) = shifted.failing_k {
        writeln!(text, "shifted domination fails at k = {k}").ok();
    }
    if let Some(k) = digits.failing_k {
        writeln!(text, "digit domination fails at k = {k}").ok();
    }
    writeln!(text, "min coefficient valuation for j <= {j_max}: {v_min} at j = {j_min}").ok();
    let embedding = match to_gkz(&params) {
        Ok(e) => to_json(&e)?,
        Err(GkzError::DegenerateEmbedding(m)) => json!({ "degenerate": m }),
        Err(e) => return Err(e),
    };
    let result = json!({
        "dominated": to_json(&dom)?,
        "shifted_domination": to_json(&shifted)?,
        "digit_domination": to_json(&digits)?,
        "j_max": j_max,
        "min_valuation": v_min.to_string(),
        "argmin_j": j_min,
        "all_nonnegative": v_min >= crate::Rational::zero(),
        "embedding": embedding,
    });
    Ok((text, result, EXIT_OK))
}

fn search(job: &JobSpec) -> Result<Outcome3> {
    let config = job.configuration()?;
    let beta = checked_beta(job, config.dim())?;
    let p = job.prime()?;
    let limits = job.limits();
    let rep = theorem_6_1_search(&config, &beta, p, &limits)?;
    let b_max = job.b_max.unwrap_or(3);
    let vd = integrality_verdict(&config, &rep.v, &rep.gamma, p, b_max, &limits)?;
    let mut text = format!(
        "optimum over Gamma' (B' = {}): w = {} at gamma = {}, b = {}, v = {}\n",
        rep.b_prime,
        rep.w,
        format_vector(&rep.gamma),
        rep.b,
        format_vector(&rep.v)
    );
    writeln!(text, "shift graph: {} edges, potential certificate verified", rep.num_edges).ok();
    writeln!(
        text,
        "verdict for v up to b = {b_max}: {}",
        if vd.is_integral() { "integral" } else { "not integral" }
    )
    .ok();
    let exit = if vd.is_integral() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((text, json!({ "search": to_json(&rep)?, "verdict": to_json(&vd)? }), exit))
}

/// The `(preset, command)` pairs checked by `demo`.
pub const DEMO: [(&str, Command); 7] = [
    ("example1", Command::Verdict),
    ("example1", Command::Bound),
    ("example1", Command::Search),
    ("example2", Command::Classical),
    ("example3", Command::Kernel),
    ("example3", Command::Verdict),
    ("libgober-teitelbaum", Command::Truncate),
];

pub fn golden_name(preset: &str, command: Command) -> String {
    format!("{preset}.{}.json", command.name())
}

/// Canonical serialized form of a report, as stored in the golden files.
pub fn golden_text(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct DemoEntry {
    pub preset: &'static str,
    pub command: Command,
    pub report: Report,
    pub matches: Option<bool>,
}

/// Runs every demo job; `golden` maps a file name to its expected content.
pub fn demo(golden: impl Fn(&str) -> Option<String>) -> Result<Vec<DemoEntry>> {
    DEMO.iter()
        .map(|&(name, command)| {
            let report = run(command, &preset(name)?)?;
            let matches = golden(&golden_name(name, command)).map(|g| {
                serde_json::from_str::<Value>(&g).map(|v| v == report.json).unwrap_or(false)
            });
            Ok(DemoEntry {
                preset: name,
                command,
                report,
                matches,
            })
        })
        .collect()
}
