//! Command driver behind the `nsym` binary: configuration, dispatch and
//! rendering of JSON or text reports.

pub mod eval;
pub mod parse;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::circle::{self, real_trig_string, CircleObservable};
use crate::csphere::{self, HoloPoly, S3Observable};
use crate::exact::{GaussianRational, Rational};
use crate::frame::{self, FrameObservable};
use crate::opalg::{OpGen, OpMonomial};
use crate::verify::{self, Check, SuiteOptions, SuiteSpace};
use crate::{Error, Result};

pub use eval::{Ordering, Value};
pub use parse::{parse, Expr};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    Frame(usize),
    Circle,
    C2,
    S3,
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circle" => Ok(Space::Circle),
            "c2" => Ok(Space::C2),
            "s3" => Ok(Space::S3),
            _ => {
                let n = s
                    .strip_prefix("frame:")
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::UnknownSymbol(format!("space `{s}`")))?;
                if n < 2 {
                    return Err(Error::InvalidDimension(n));
                }
                Ok(Space::Frame(n))
            }
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Frame(n) => write!(f, "frame:{n}"),
            Space::Circle => write!(f, "circle"),
            Space::C2 => write!(f, "c2"),
            Space::S3 => write!(f, "s3"),
        }
    }
}

impl From<Space> for SuiteSpace {
    fn from(s: Space) -> Self {
        match s {
            Space::Frame(n) => SuiteSpace::Frame(n),
            Space::Circle => SuiteSpace::Circle,
            Space::C2 => SuiteSpace::C2,
            Space::S3 => SuiteSpace::S3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Command {
    Bracket,
    Hvf,
    Quantize,
    Project,
    Verify,
    Kernel,
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bracket" => Ok(Command::Bracket),
            "hvf" => Ok(Command::Hvf),
            "quantize" => Ok(Command::Quantize),
            "project" => Ok(Command::Project),
            "verify" => Ok(Command::Verify),
            "kernel" => Ok(Command::Kernel),
            _ => Err(Error::UnknownSymbol(format!("command `{s}`"))),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Bracket => "bracket",
            Command::Hvf => "hvf",
            Command::Quantize => "quantize",
            Command::Project => "project",
            Command::Verify => "verify",
            Command::Kernel => "kernel",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Text,
}

/// Full configuration of one run; identical configurations give identical
/// output.
#[derive(Clone, PartialEq, Debug)]
pub struct RunConfig {
    pub space: Space,
    pub mode: Ordering,
    pub format: Format,
    pub seed: u64,
    pub trials: usize,
    pub max_mode: i64,
    pub max_deg: u32,
    /// Covector for `project`; defaults to the first basis covector.
    pub alpha: Option<Vec<Rational>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SuiteOptions::default();
        Self {
            space: Space::Frame(2),
            mode: Ordering::Sym,
            format: Format::Json,
            seed: s.seed,
            trials: s.trials,
            max_mode: s.max_mode,
            max_deg: s.max_deg,
            alpha: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Space::Frame(n) = self.space {
            if n < 2 {
                return Err(Error::InvalidDimension(n));
            }
        }
        if self.trials == 0 || self.max_mode < 1 || self.max_deg == 0 {
            return Err(Error::Unsupported("trials, max-mode and max-deg must be at least 1".into()));
        }
        if let Some(a) = &self.alpha {
            if let Space::Frame(n) = self.space {
                if a.len() != n {
                    return Err(Error::DimensionMismatch(a.len(), n));
                }
            }
        }
        Ok(())
    }

    fn suite_options(&self) -> SuiteOptions {
        SuiteOptions {
            seed: self.seed,
            trials: self.trials,
            max_mode: self.max_mode,
            max_deg: self.max_deg,
        }
    }
}

/// Report of one command.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Output {
    pub space: String,
    pub command: String,
    pub inputs: Vec<String>,
    pub result: Json,
    pub checks: Vec<Check>,
    pub paper_notes: Vec<String>,
}

impl Output {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output is plain JSON")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_string(),
        }
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} [{}]", self.command, self.inputs.join(" "), self.space)?;
        write_text(f, "", &self.result)?;
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        for n in &self.paper_notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

fn write_text(f: &mut fmt::Formatter<'_>, prefix: &str, v: &Json) -> fmt::Result {
    match v {
        Json::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                write_text(f, &p, x)?;
            }
            Ok(())
        }
        Json::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                write_text(f, &format!("{prefix}[{i}]"), x)?;
            }
            Ok(())
        }
        Json::String(s) => writeln!(f, "{prefix} = {s}"),
        other => writeln!(f, "{prefix} = {other}"),
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Runs one command on the given expressions (or suite names for `verify`).
pub fn run(cfg: &RunConfig, command: Command, inputs: &[String]) -> Result<Output> {
    cfg.validate()?;
    let mut out = Output {
        space: cfg.space.to_string(),
        command: command.to_string(),
        inputs: inputs.to_vec(),
        result: Json::Null,
        checks: Vec::new(),
        paper_notes: Vec::new(),
    };
    match command {
        Command::Verify => verify_cmd(cfg, inputs, &mut out)?,
        Command::Kernel => kernel_cmd(cfg, inputs, &mut out)?,
        _ => {
            let exprs = inputs.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
            match command {
                Command::Bracket => bracket_cmd(cfg, &exprs, &mut out)?,
                Command::Hvf => hvf_cmd(cfg, &exprs, &mut out)?,
                Command::Quantize => quantize_cmd(cfg, &exprs, &mut out)?,
                Command::Project => project_cmd(cfg, &exprs, &mut out)?,
                Command::Verify | Command::Kernel => unreachable!(),
            }
        }
    }
    Ok(out)
}

fn single(exprs: &[Expr], what: &str) -> Result<Expr> {
    match exprs {
        [e] => Ok(e.clone()),
        _ => Err(Error::Unsupported(format!("{what} takes exactly one expression, got {}", exprs.len()))),
    }
}

// ---------------------------------------------------------------------------
// Rendering of values

fn frame_json(f: &FrameObservable) -> Json {
    let mut comps = Map::new();
    for slot in f.slots() {
        let key: Vec<String> = slot.iter().map(|i| (i + 1).to_string()).collect();
        comps.insert(key.join(","), Json::String(f.component(&slot).to_string()));
    }
    json!({ "rank": f.rank(), "components": comps })
}

fn circle_json(f: &CircleObservable) -> Json {
    json!({
        "A": real_trig_string(f.a()),
        "B": real_trig_string(f.b()),
        "C": real_trig_string(f.c()),
    })
}

fn sphere_json(f: &S3Observable) -> Json {
    json!({
        "components": f.components.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "field": f.field.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Frame(f) => frame_json(f),
        Value::Circle(f) => circle_json(f),
        Value::Holo(f) => json!({ "f": f.to_string() }),
        Value::Sphere(f) => sphere_json(f),
    }
}

fn negate(v: &Value) -> Result<Value> {
    use crate::exact::int;
    Ok(match v {
        Value::Frame(f) => Value::Frame(f.scale(&int(-1))),
        Value::Circle(f) => Value::Circle(f.scale(&int(-1))),
        Value::Holo(f) => Value::Holo(-f.clone()),
        Value::Sphere(f) => Value::Sphere(csphere::s3_observable(f.components.clone().map(|c| -c))?),
    })
}

// ---------------------------------------------------------------------------
// Commands

fn bracket_operands(exprs: &[Expr]) -> Result<(Expr, Expr)> {
    match exprs {
        [a, b] => Ok((a.clone(), b.clone())),
        [Expr::Bracket(a, b)] => Ok(((**a).clone(), (**b).clone())),
        _ => Err(Error::Unsupported("bracket takes two expressions or one `{f, g}`".into())),
    }
}

fn bracket_cmd(cfg: &RunConfig, exprs: &[Expr], out: &mut Output) -> Result<()> {
    let (a, b) = bracket_operands(exprs)?;
    let fg = Expr::Bracket(Box::new(a.clone()), Box::new(b.clone()));
    let gf = Expr::Bracket(Box::new(b.clone()), Box::new(a.clone()));
    let value = eval::eval(&fg, cfg.space)?;
    let swapped = eval::eval(&gf, cfg.space)?;
    out.result = value_json(&value);
    out.checks.push(check("antisymmetry", negate(&swapped)? == value, "{g, f} = -{f, g}"));
    if let (Value::Circle(f), Value::Circle(g)) = (eval::eval(&a, cfg.space)?, eval::eval(&b, cfg.space)?) {
        let via = circle::bracket_via_field(&f, &g)?;
        out.checks.push(check("field route", Value::Circle(via) == value, "X_f(g) agrees with the complex formula"));
    }
    if let Value::Frame(f) = &value {
        let field = frame::hamiltonian_field(f)?;
        let ok = field.check_structure_equation(f).is_ok();
        out.checks.push(check("structure equation", ok, "result has a Hamiltonian field"));
    }
    Ok(())
}

fn frame_field_json(field: &frame::HamiltonianField) -> Json {
    let label = |idx: &[usize]| idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
    let mut m = Map::new();
    for ((idx, c), v) in field.q_part() {
        if !v.is_zero() {
            m.insert(format!("[{}] d/dq{}", label(idx), c + 1), Json::String(v.to_string()));
        }
    }
    for ((full, b), v) in field.pi_part() {
        if !v.is_zero() {
            let (head, a) = full.split_at(full.len() - 1);
            m.insert(
                format!("[{}] d/dpi{}_{}", label(head), a[0] + 1, b + 1),
                Json::String(v.to_string()),
            );
        }
    }
    Json::Object(m)
}

fn hvf_cmd(cfg: &RunConfig, exprs: &[Expr], out: &mut Output) -> Result<()> {
    let e = single(exprs, "hvf")?;
    match eval::eval(&e, cfg.space)? {
        Value::Frame(f) => {
            let field = frame::hamiltonian_field(&f)?;
            let verdict = field.check_structure_equation(&f);
            out.result = json!({ "observable": frame_json(&f), "field": frame_field_json(&field) });
            out.checks.push(check(
                "structure equation",
                verdict.is_ok(),
                verdict.err().map_or("df = -X ⌟ dtheta holds".into(), |e| e.to_string()),
            ));
        }
        Value::Circle(f) => {
            let field = circle::hamiltonian_field(&f)?;
            out.result = json!({
                "observable": circle_json(&f),
                "field": { "d/dphi": field.x_phi.to_string(), "d/dq1": field.x1.to_string(), "d/dq2": field.x2.to_string() },
            });
            let round = circle::solve_structure(&f.components()).map(|s| s.observable == f);
            out.checks.push(check("structure equations", round == Ok(true), "all six component equations hold"));
        }
        Value::Holo(f) => {
            let field = csphere::c2_hamiltonian_field(&f);
            let (f1, f2) = csphere::split_to_vector(&f);
            let same = csphere::c2_structure_field(&f1) == field;
            out.result = json!({
                "observable": { "f1": f1.to_string(), "f2": f2.to_string() },
                "field": field.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            out.checks.push(check("field route", same, "field from f1 alone agrees with the holomorphic field"));
        }
        Value::Sphere(f) => {
            out.result = sphere_json(&f);
            let again = csphere::s3_observable(f.components.clone());
            out.checks.push(check("structure equations", again.as_ref() == Ok(&f), "df^i = X ⌟ dtheta^i"));
        }
    }
    Ok(())
}

fn frame_n(space: Space, command: Command) -> Result<usize> {
    match space {
        Space::Frame(n) => Ok(n),
        other => Err(Error::Unsupported(format!("{command} is not available in space {other}"))),
    }
}

fn quantize_cmd(cfg: &RunConfig, exprs: &[Expr], out: &mut Output) -> Result<()> {
    let e = single(exprs, "quantize")?;
    if cfg.space == Space::Circle {
        let Value::Circle(f) = eval::eval(&e, cfg.space)? else { unreachable!() };
        out.result = json!({ "observable": circle_json(&f), "operator": circle::quantize(&f).to_string() });
        return Ok(());
    }
    let n = frame_n(cfg.space, Command::Quantize)?;
    let (op, words) = eval::quantize_words(&e, n, cfg.mode)?;
    out.result = json!({
        "operator": op.to_string(),
        "words": words.iter().map(|w| w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>(),
    });
    for w in &words {
        if cfg.mode == Ordering::Sym {
            if let Some(a) = quartic_index(w) {
                let single = crate::opalg::quantize_sym(w);
                let kappa = single.coeff(&OpMonomial::generator(OpGen::I(a))).coeff(2);
                let (_, reference, brute) = verify::quartic_kappa();
                out.checks.push(check(
                    "kappa",
                    kappa == reference && kappa == brute,
                    format!("hbar^2 coefficient {kappa}; 24 orderings give {brute}"),
                ));
                let published = GaussianRational::from(crate::exact::rat(-1, 3));
                let verdict = if kappa == published { "agrees with" } else { "disagrees with" };
                out.paper_notes.push(format!("kappa = {kappa}, which {verdict} the published value -1/3"));
            }
        } else if w.len() == 3 && !crate::opalg::quantize_antisym(w).is_zero() {
            out.paper_notes.push(format!(
                "alternating word {} quantizes to a nonzero operator; the published claim is that cubic alternating words vanish",
                w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
            ));
        }
    }
    Ok(())
}

/// Index `a` when the word is a permutation of `P_a P_a X_a X_a`.
fn quartic_index(w: &[OpGen]) -> Option<usize> {
    let first = w.first()?;
    let a = match first {
        OpGen::X(a) | OpGen::P(a) => *a,
        OpGen::I(_) => return None,
    };
    let ps = w.iter().filter(|g| **g == OpGen::P(a)).count();
    let xs = w.iter().filter(|g| **g == OpGen::X(a)).count();
    (w.len() == 4 && ps == 2 && xs == 2).then_some(a)
}

fn project_cmd(cfg: &RunConfig, exprs: &[Expr], out: &mut Output) -> Result<()> {
    let n = frame_n(cfg.space, Command::Project)?;
    let alpha = cfg.alpha.clone().unwrap_or_else(|| {
        let mut a = vec![Rational::from_integer(0.into()); n];
        a[0] = Rational::from_integer(1.into());
        a
    });
    let values = exprs
        .iter()
        .map(|e| match eval::eval(e, cfg.space)? {
            Value::Frame(f) => Ok(f),
            _ => unreachable!(),
        })
        .collect::<Result<Vec<FrameObservable>>>()?;
    let projected = values
        .iter()
        .map(|f| frame::project_to_cotangent(f, &alpha))
        .collect::<Result<Vec<_>>>()?;
    out.result = json!({
        "alpha": alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "projections": projected.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    if let ([f, g], [pf, pg]) = (values.as_slice(), projected.as_slice()) {
        let lhs = frame::project_to_cotangent(&frame::poisson_bracket(f, g)?, &alpha)?;
        let rhs = frame::cotangent_bracket(pf, pg)?;
        out.checks.push(check("bracket compatibility", lhs == rhs, format!("projection of bracket {lhs}, bracket of projections {rhs}")));
    }
    Ok(())
}

fn verify_cmd(cfg: &RunConfig, names: &[String], out: &mut Output) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Unsupported("verify needs a suite name such as c1 or e2".into()));
    }
    let mut reports = Vec::new();
    for name in names {
        let r = verify::run_named(name, cfg.space.into(), &cfg.suite_options())?;
        out.checks.extend(r.checks.iter().cloned());
        out.paper_notes.extend(r.notes.iter().cloned());
        reports.push(json!({ "suite": name, "title": r.title, "passed": r.passed() }));
    }
    out.result = Json::Array(reports);
    Ok(())
}

fn holo_strings(ps: &[HoloPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn kernel_cmd(cfg: &RunConfig, inputs: &[String], out: &mut Output) -> Result<()> {
    if !inputs.is_empty() {
        return Err(Error::Unsupported("kernel takes no expressions".into()));
    }
    match cfg.space {
        Space::Circle => {
            let k = circle::jform_kernel(cfg.max_mode, cfg.max_deg);
            let basis: Vec<Json> = k
                .basis
                .iter()
                .map(|s| {
                    let modes: Map<String, Json> = s
                        .modes
                        .iter()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(m, p)| (m.to_string(), Json::String(p.to_string())))
                        .collect();
                    json!({ "A": modes, "B": s.b.to_string() })
                })
                .collect();
            out.result = json!({
                "max_mode": k.max_mode, "max_deg": k.max_qdeg,
                "unknowns": k.unknowns, "equations": k.equations,
                "dimension": k.dimension(), "basis": basis,
            });
            let constant = k.basis.iter().all(|s| s.is_constant());
            out.checks.push(check("only constants", constant, format!("{} unknowns, {} equations", k.unknowns, k.equations)));
            out.checks.push(check("dimension 1", k.dimension() == 1, format!("dimension {}", k.dimension())));
            if k.basis.iter().any(|s| s.has_fibre_part()) {
                out.paper_notes.push(
                    "a constant fibre mode A_0 survives next to the constant B; the published value is a kernel of constants B only".into(),
                );
            }
        }
        Space::C2 => {
            let k = csphere::spin_kernel(cfg.max_deg);
            out.result = json!({
                "max_deg": k.max_deg,
                "dimension": k.dimension(),
                "constants": holo_strings(&k.constants),
                "spin": holo_strings(&k.spin),
            });
            let same = csphere::same_real_span(&k.spin, &csphere::spin_x());
            out.checks.push(check("spin span", k.spin_dimension() == 3 && same, "kernel modulo constants is spanned by x1, x2, x3"));
        }
        other => return Err(Error::Unsupported(format!("kernel is not available in space {other}"))),
    }
    Ok(())
}
