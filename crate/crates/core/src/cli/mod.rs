//! Command-line front end: `rbx <command> <model.json> [flags]`.
//!
//! Exit codes: 0 when every asserted property holds, 1 when a checked
//! property fails, 2 on input errors.

pub mod model;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::action::{self, ActionModel, MorphismCochain, Poly, PolySection};
use crate::deform::{self, DeformationSeries, GaugeSeries};
use crate::error::{Error, Result};
use crate::exactlin::QMatrix;
use crate::kv::{self, KvSetting, SymTensor};
use crate::liealg::{validate_lie, validate_rep, Cochain};
use crate::prelie::{self, validate_prelie};
use crate::rbcx::{self, RbOperator};

pub use model::Model;
use report::{fmt_vec, matrix_value, vec_value, Report};

#[derive(Debug, Parser)]
#[command(name = "rbx", version, about = "Exact checks for Rota-Baxter, pre-Lie and Koszul-Vinberg structures")]
struct Cli {
    /// Print a JSON report instead of a table
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FileArg {
    file: PathBuf,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    file: PathBuf,
    #[arg(long)]
    operator: String,
    /// Comma-separated operator names T1,T2,..
    #[arg(long, value_delimiter = ',', required = true)]
    terms: Vec<String>,
}

#[derive(Debug, Args)]
struct KvSeriesArgs {
    file: PathBuf,
    #[arg(long)]
    tensor: String,
    /// Comma-separated tensor names H1,H2,..
    #[arg(long, value_delimiter = ',', required = true)]
    terms: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that every structure in the model is well formed
    Validate(FileArg),
    /// Check the relative Rota-Baxter identity
    RbCheck {
        file: PathBuf,
        #[arg(long)]
        operator: String,
    },
    /// Cohomology of a relative Rota-Baxter operator
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        operator: String,
        /// Inclusive range A:B
        #[arg(long, default_value = "0:1")]
        degrees: String,
    },
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Apply exp(ad_X) to T + T1 t + .. + Tn t^n
    Gauge {
        file: PathBuf,
        #[arg(long)]
        operator: String,
        #[arg(long)]
        series: String,
        #[arg(long)]
        order: usize,
        /// Deformation terms; zero when omitted
        #[arg(long, value_delimiter = ',')]
        terms: Vec<String>,
    },
    #[command(subcommand)]
    Prelie(PrelieCommand),
    #[command(subcommand)]
    Kv(KvCommand),
    /// Check that a symmetric form is pseudo-Hessian
    HessianCheck {
        file: PathBuf,
        #[arg(long)]
        form: String,
    },
    #[command(subcommand)]
    Action(ActionCommand),
}

#[derive(Debug, Subcommand)]
enum DeformCommand {
    Check(SeriesArgs),
    Obstruction(SeriesArgs),
    Extend(SeriesArgs),
}

#[derive(Debug, Subcommand)]
enum PrelieCommand {
    Validate(FileArg),
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value = "0:1")]
        degrees: String,
    },
}

#[derive(Debug, Subcommand)]
enum KvCommand {
    Check {
        file: PathBuf,
        #[arg(long)]
        tensor: String,
    },
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        tensor: String,
        #[arg(long, default_value = "1:2")]
        degrees: String,
        /// Use the restricted subcomplex
        #[arg(long)]
        restricted: bool,
    },
    Obstruction(KvSeriesArgs),
    Extend(KvSeriesArgs),
}

#[derive(Debug, Subcommand)]
enum ActionCommand {
    Verify(FileArg),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command; `args` includes the program name.
pub fn run_cli<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliOutput { code: 0, stdout: text, stderr: String::new() }
                }
                _ => CliOutput { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(r) => CliOutput {
            code: if r.ok { 0 } else { 1 },
            stdout: if cli.json { format!("{}\n", r.to_json()) } else { r.to_table() },
            stderr: String::new(),
        },
        Err(Error::Precondition(msg)) => CliOutput { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(e) => CliOutput { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("RBX_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn parse_degrees(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Input(format!("--degrees expects A:B with A <= B, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn load(file: &PathBuf, r: &mut Report) -> Result<Model> {
    r.input("file", file.display().to_string());
    Model::from_path(file)
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Validate(a) => validate(&a.file),
        Command::RbCheck { file, operator } => rb_check(file, operator),
        Command::Cohomology { file, operator, degrees } => cohomology(file, operator, degrees),
        Command::Deform(d) => deform_cmd(d),
        Command::Gauge { file, operator, series, order, terms } => gauge(file, operator, series, *order, terms),
        Command::Prelie(PrelieCommand::Validate(a)) => prelie_validate(&a.file),
        Command::Prelie(PrelieCommand::Cohomology { file, degrees }) => prelie_cohomology(file, degrees),
        Command::Kv(k) => kv_cmd(k),
        Command::HessianCheck { file, form } => hessian_check(file, form),
        Command::Action(ActionCommand::Verify(a)) => action_verify(&a.file),
    }
}

fn validate(file: &PathBuf) -> Result<Report> {
    let mut r = Report::new("validate");
    let m = load(file, &mut r)?;
    if let Some(g) = &m.lie_algebra {
        let v = validate_lie(g);
        r.verdict("lie_algebra", v.is_empty(), true);
        if !v.is_empty() {
            r.residuals.insert("lie_algebra".into(), violations_value(&v));
        }
        let pair = m.pair()?;
        let rv = validate_rep(&pair)?;
        r.verdict("representation", rv.is_empty(), true);
        if !rv.is_empty() {
            let list = rv.iter().map(|v| json!({"i": v.i, "j": v.j, "residual": matrix_value(&v.residual)})).collect();
            r.residuals.insert("representation".into(), Value::Array(list));
        }
        for (name, t) in &m.operators {
            let op = RbOperator::new(pair.clone().into(), t.clone())?;
            r.row(&format!("operator {name}"), if rbcx::is_relative_rb(&op) { "relative Rota-Baxter" } else { "not Rota-Baxter" });
        }
    }
    if let Some(p) = &m.prelie {
        let v = validate_prelie(p);
        r.verdict("prelie", v.is_empty(), true);
        if !v.is_empty() {
            r.residuals.insert("prelie".into(), violations_value(&v));
        }
    }
    if let Some(a) = &m.action {
        r.verdict("action", a.validate().is_valid(), true);
    }
    Ok(r)
}

fn violations_value(v: &[crate::liealg::Violation]) -> Value {
    Value::Array(v.iter().map(|x| json!({"kind": x.kind, "indices": x.indices, "residual": vec_value(&x.residual)})).collect())
}

fn operator(m: &Model, name: &str) -> Result<RbOperator> {
    RbOperator::new(m.pair()?.into(), m.operator(name)?.clone())
}

fn rb_check(file: &PathBuf, name: &str) -> Result<Report> {
    let mut r = Report::new("rb-check");
    let m = load(file, &mut r)?;
    r.input("operator", name);
    let t = operator(&m, name)?;
    let ok = rbcx::is_relative_rb(&t);
    r.verdict("relative_rota_baxter", ok, true);
    r.residuals.insert("definition".into(), vec_value(rbcx::definition_residual(&t).values()));
    Ok(r)
}

fn require_rb(t: &RbOperator) -> Result<()> {
    if rbcx::is_relative_rb(t) {
        Ok(())
    } else {
        Err(Error::Precondition("operator is not a relative Rota-Baxter operator".into()))
    }
}

fn cohomology(file: &PathBuf, name: &str, degrees: &str) -> Result<Report> {
    let mut r = Report::new("cohomology");
    let m = load(file, &mut r)?;
    r.input("operator", name).input("degrees", degrees);
    let (a, b) = parse_degrees(degrees)?;
    let t = operator(&m, name)?;
    require_rb(&t)?;
    r.verdict("relative_rota_baxter", true, true);
    let mut dims = Vec::new();
    for k in a..=b {
        let h = rbcx::rb_cohomology(&t, k)?;
        dims.push((k, h.dim));
        let reps = h.representatives.iter().map(|c| vec_value(c.values())).collect();
        r.representatives.insert(format!("H{k}"), Value::Array(reps));
    }
    r.cohomology_dims(&dims);
    Ok(r)
}

fn series_from(m: &Model, a: &SeriesArgs, r: &mut Report) -> Result<DeformationSeries> {
    r.input("operator", a.operator.as_str()).input("terms", a.terms.join(","));
    let t = operator(m, &a.operator)?;
    require_rb(&t)?;
    let terms = a.terms.iter().map(|n| m.operator(n).cloned()).collect::<Result<_>>()?;
    DeformationSeries::new(t, terms)
}

fn deform_cmd(d: &DeformCommand) -> Result<Report> {
    let (name, a) = match d {
        DeformCommand::Check(a) => ("deform check", a),
        DeformCommand::Obstruction(a) => ("deform obstruction", a),
        DeformCommand::Extend(a) => ("deform extend", a),
    };
    let mut r = Report::new(name);
    let m = load(&a.file, &mut r)?;
    let s = series_from(&m, a, &mut r)?;
    match d {
        DeformCommand::Check(_) => {
            r.verdict("deformation", deform::is_deformation(&s), true);
            for (i, res) in deform::order_residuals(&s).iter().enumerate() {
                r.residuals.insert(format!("t^{}", i + 1), vec_value(res.values()));
            }
        }
        DeformCommand::Obstruction(_) => {
            let o = deform::obstruction(&s)?;
            let d1 = rbcx::dt_matrix(s.base(), 1)?;
            let exact = d1.solve(o.theta.values())?.is_some();
            r.verdict("closed", o.is_closed(), true);
            r.verdict("coboundary", exact, false);
            r.row("theta", fmt_vec(o.theta.values()));
            r.residuals.insert("theta".into(), vec_value(o.theta.values()));
        }
        DeformCommand::Extend(_) => {
            let next = deform::extend(&s)?;
            r.verdict("extendable", next.is_some(), true);
            if let Some(x) = next {
                r.row("next term", fmt_vec(x.entries()));
                r.representatives.insert("next_term".into(), matrix_value(&x));
            }
        }
    }
    Ok(r)
}

fn gauge(file: &PathBuf, name: &str, series: &str, order: usize, terms: &[String]) -> Result<Report> {
    let mut r = Report::new("gauge");
    let m = load(file, &mut r)?;
    r.input("operator", name).input("series", series).input("order", order).input("terms", terms.join(","));
    let t = operator(&m, name)?;
    require_rb(&t)?;
    let (na, ne) = (t.pair().dim_a(), t.pair().dim_e());
    let mut ts: Vec<QMatrix> = terms.iter().map(|n| m.operator(n).cloned()).collect::<Result<_>>()?;
    if ts.len() > order {
        return Err(Error::Input(format!("{} terms given for order {order}", ts.len())));
    }
    ts.resize(order, QMatrix::zeros(na, ne));
    let s = DeformationSeries::new(t, ts)?;
    let x = GaugeSeries { terms: m.gauge_series(series)?.clone() };
    let out = deform::gauge_transform(&s, &x)?;
    r.verdict("deformation", deform::is_deformation(&out), true);
    let list = out.terms().iter().map(matrix_value).collect();
    r.representatives.insert("terms".into(), Value::Array(list));
    for (i, c) in out.terms().iter().enumerate() {
        r.row(&format!("T'{}", i + 1), fmt_vec(c.entries()));
    }
    Ok(r)
}

fn prelie_validate(file: &PathBuf) -> Result<Report> {
    let mut r = Report::new("prelie validate");
    let m = load(file, &mut r)?;
    let p = m.prelie()?;
    let v = validate_prelie(p);
    r.verdict("left_symmetric", v.is_empty(), true);
    let pi = p.as_multiderivation();
    let sq = prelie::mn_bracket(&pi, &pi)?;
    r.verdict("mn_square_zero", sq.is_zero(), true);
    if !v.is_empty() {
        r.residuals.insert("associator".into(), violations_value(&v));
    }
    Ok(r)
}

fn require_prelie(p: &crate::prelie::PreLieAlgebra) -> Result<()> {
    if validate_prelie(p).is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition("product is not left-symmetric".into()))
    }
}

fn prelie_cohomology(file: &PathBuf, degrees: &str) -> Result<Report> {
    let mut r = Report::new("prelie cohomology");
    let m = load(file, &mut r)?;
    r.input("degrees", degrees);
    let (a, b) = parse_degrees(degrees)?;
    let p = m.prelie()?;
    require_prelie(p)?;
    r.verdict("left_symmetric", true, true);
    let mut dims = Vec::new();
    for k in a..=b {
        let h = prelie::def_cohomology(p, k)?;
        dims.push((k, h.dim));
        let reps = h.representatives.iter().map(|c| vec_value(c.values())).collect();
        r.representatives.insert(format!("H{k}"), Value::Array(reps));
    }
    r.cohomology_dims(&dims);
    Ok(r)
}

fn kv_setting(m: &Model) -> Result<KvSetting> {
    let p = m.prelie()?;
    require_prelie(p)?;
    KvSetting::new(p.clone())
}

fn kv_cmd(k: &KvCommand) -> Result<Report> {
    match k {
        KvCommand::Check { file, tensor } => {
            let mut r = Report::new("kv check");
            let m = load(file, &mut r)?;
            r.input("tensor", tensor.as_str());
            let s = kv_setting(&m)?;
            let h = m.tensor(tensor)?;
            let hh = kv::hh_bracket(&s, h)?;
            r.verdict("koszul_vinberg", hh.is_zero(), true);
            r.verdict("sharp_relative_rota_baxter", kv::sharp_is_rb(&s, h)?, false);
            r.residuals.insert("hh".into(), vec_value(hh.values()));
            Ok(r)
        }
        KvCommand::Cohomology { file, tensor, degrees, restricted } => {
            let mut r = Report::new("kv cohomology");
            let m = load(file, &mut r)?;
            r.input("tensor", tensor.as_str()).input("degrees", degrees.as_str()).input("restricted", *restricted);
            let (a, b) = parse_degrees(degrees)?;
            let s = kv_setting(&m)?;
            let h = m.tensor(tensor)?;
            r.verdict("koszul_vinberg", kv::is_kv(&s, h)?, true);
            if !r.ok {
                return Err(Error::Precondition("tensor is not a Koszul-Vinberg structure".into()));
            }
            let mut dims = Vec::new();
            for k in a..=b {
                let c = kv::kv_cohomology(&s, h, k, *restricted)?;
                dims.push((k, c.dim));
                let reps = c.representatives.iter().map(|c| vec_value(c.values())).collect();
                r.representatives.insert(format!("H{k}"), Value::Array(reps));
            }
            r.cohomology_dims(&dims);
            Ok(r)
        }
        KvCommand::Obstruction(a) | KvCommand::Extend(a) => {
            let extend = matches!(k, KvCommand::Extend(_));
            let mut r = Report::new(if extend { "kv extend" } else { "kv obstruction" });
            let m = load(&a.file, &mut r)?;
            r.input("tensor", a.tensor.as_str()).input("terms", a.terms.join(","));
            let s = kv_setting(&m)?;
            let h = m.tensor(&a.tensor)?;
            let terms: Vec<SymTensor> = a.terms.iter().map(|n| m.tensor(n).cloned()).collect::<Result<_>>()?;
            if extend {
                let next = kv::kv_extend(&s, h, &terms)?;
                r.verdict("extendable", next.is_some(), true);
                if let Some(x) = next {
                    r.row("next term", fmt_vec(x.matrix().entries()));
                    r.representatives.insert("next_term".into(), matrix_value(x.matrix()));
                }
            } else {
                let o = kv::kv_obstruction(&s, h, &terms)?;
                r.verdict("closed", o.closed, true);
                r.verdict("cyclic_sum_zero", o.cyclic_sum_zero, true);
                r.row("theta", fmt_vec(o.theta.values()));
                r.residuals.insert("theta".into(), vec_value(o.theta.values()));
            }
            Ok(r)
        }
    }
}

fn hessian_check(file: &PathBuf, form: &str) -> Result<Report> {
    let mut r = Report::new("hessian-check");
    let m = load(file, &mut r)?;
    r.input("form", form);
    let p = m.prelie()?;
    require_prelie(p)?;
    let b = m.form(form)?;
    let nondegenerate = !num_traits::Zero::is_zero(&b.matrix().determinant()?);
    let closed = kv::delta_scalar_apply(p, &b.as_cochain())?;
    r.verdict("nondegenerate", nondegenerate, false);
    r.verdict("closed", closed.is_zero(), false);
    r.verdict("pseudo_hessian", kv::pseudo_hessian_check(p, b)?, true);
    r.residuals.insert("delta".into(), vec_value(closed.values()));
    Ok(r)
}

/// Sections `f ⊗ e_i` with `f` running over monomials of degree ≤ 2.
fn sample_sections(a: &ActionModel) -> Vec<PolySection> {
    let m = a.base_dim();
    let mut polys = vec![Poly::one(m)];
    for i in 0..m {
        polys.push(Poly::var(m, i));
        for j in i..m {
            polys.push(Poly::var(m, i).mul(&Poly::var(m, j)));
        }
    }
    let mut out = Vec::new();
    for i in 0..a.dim_g() {
        for p in &polys {
            out.push(PolySection::pure(a.dim_g(), i, p.clone()));
        }
    }
    out
}

fn action_verify(file: &PathBuf) -> Result<Report> {
    let mut r = Report::new("action verify");
    let m = load(file, &mut r)?;
    let a = m.action()?;
    let report = a.validate();
    r.verdict("rota_baxter_lie", report.rb.is_valid(), true);
    r.verdict("homomorphism", report.homomorphism.is_empty(), true);
    if !r.ok {
        return Ok(r);
    }
    let sections = sample_sections(a);
    let mut rb_ok = true;
    for s in &sections {
        for t in &sections {
            rb_ok &= action::rb_identity_residual(a, s, t)?.is_zero();
        }
    }
    r.verdict("rb_identity", rb_ok, true);

    let n = a.dim_g();
    let t = RbOperator::on_lie_algebra(a.rb().algebra().clone(), a.rb().bmap().clone())?;
    let mut agree = true;
    for k in 0..=n {
        agree &= action::db_matrix(a.rb(), k)? == rbcx::dt_matrix(&t, k)?;
    }
    r.verdict("db_matches_dt", agree, true);

    let id = Cochain::from_matrix(&QMatrix::identity(n));
    let phi = a.phi_cochain();
    let mut residuals = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let res = action::xi_chain_residual(a, &id, &phi, &[i, j])?;
            if !res.is_zero() {
                residuals.push(json!({"args": [i, j], "residual": res.to_string()}));
            }
        }
    }
    let zero_args: Vec<usize> = (0..2).map(|i| i.min(n - 1)).collect();
    let zero = action::xi_chain_residual(a, &Cochain::zero(n, n, 1), &MorphismCochain::zero(n, a.base_dim(), 1), &zero_args)?;
    r.verdict("xi_chain_map", residuals.is_empty() && zero.is_zero(), true);
    if !residuals.is_empty() {
        r.residuals.insert("xi".into(), Value::Array(residuals));
    }
    Ok(r)
}
