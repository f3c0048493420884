//! Command-line front end: argument handling, dispatch and rendering.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use fixgroup_core::expr::{parse_field, parse_ratfun, parse_unit, parse_unit_list};
use fixgroup_core::fixing::{StageError, DEFAULT_MAX_EXTENSION};
use fixgroup_core::moebius::DEFAULT_CLOSURE_CAP;
use fixgroup_core::{
    brute_force_fixing_group, finite_field_canonical_generators, fixed_field_generator, fixing_report,
    normality_flag, Error, Field, FixingOptions, MoebiusUnit, RatFun, UnitGroup, UnitOrder,
};

/// Fixing groups of rational functions and generators of fixed fields.
#[derive(Debug, Parser)]
#[command(name = "fixgroup", version)]
pub struct Cli {
    /// Coefficient field: Q, Qi, GF(p), GF(p^n) or GF(p^n; c0,...,cn).
    #[arg(long)]
    pub field: String,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest group a closure may produce before it is declared infinite.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP)]
    pub cap: usize,
    /// Largest extension degree tried when the field is too small for a normal form.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EXTENSION)]
    pub max_extension: u32,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Units u, v and the normal form u∘f∘v.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// The fixing group of f, its type, and a decomposition f = g∘h.
    FixGroup {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// A generator of the field fixed by the group generated by UNITS.
    FixedField {
        #[arg(allow_hyphen_values = true)]
        units: String,
    },
    /// The g with f = g∘h, if any.
    LeftFactor {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// The composition f∘g.
    Compose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// The group generated by UNITS conjugated by v, i.e. v·G·v⁻¹.
    Conjugate {
        #[arg(allow_hyphen_values = true)]
        units: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Klein type of the group generated by UNITS.
    Classify {
        #[arg(allow_hyphen_values = true)]
        units: String,
    },
    /// Order of a unit, up to the cap.
    Order {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// All units over a finite field.
    Enumerate {
        /// Only the affine units a*x+b.
        #[arg(long)]
        linear: bool,
    },
    /// The fixing group by testing every unit of a finite field.
    BruteFixGroup {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Closed-form generators of the fields fixed by the affine and full unit groups.
    CanonicalGenerators,
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Normalize { .. } => "normalize",
            Verb::FixGroup { .. } => "fix-group",
            Verb::FixedField { .. } => "fixed-field",
            Verb::LeftFactor { .. } => "left-factor",
            Verb::Compose { .. } => "compose",
            Verb::Conjugate { .. } => "conjugate",
            Verb::Classify { .. } => "classify",
            Verb::Order { .. } => "order",
            Verb::Enumerate { .. } => "enumerate",
            Verb::BruteFixGroup { .. } => "brute-fix-group",
            Verb::CanonicalGenerators => "canonical-generators",
        }
    }
}

/// A failed command: the diagnostic and whether it was a usage problem.
#[derive(Debug)]
pub struct Failure {
    pub usage: bool,
    pub message: String,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        if self.usage { 2 } else { 1 }
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::ClosureCapExceeded(_) => "InfiniteGroup",
        Error::ConstantInput | Error::ConstantInner => "ConstantInput",
        Error::Syntax { .. } => "SyntaxError",
        Error::CoefficientNotInField(_) => "CoefficientNotInField",
        Error::InvalidField(_) | Error::NotPrime(_) => "InvalidField",
        Error::FieldTooSmall(_) => "FieldTooSmall",
        Error::NotAUnit(_) => "NotAUnit",
        Error::InfiniteField => "InfiniteField",
        Error::TooLarge(_) => "TooLarge",
        _ => "Error",
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. } | Error::CoefficientNotInField(_) | Error::InvalidField(_) | Error::NotPrime(_)
    )
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { usage: is_usage(&e), message: format!("{}: {e}", kind(&e)) }
    }
}

impl From<StageError> for Failure {
    fn from(e: StageError) -> Self {
        Failure { usage: is_usage(&e.error), message: format!("{}: {e}", kind(&e.error)) }
    }
}

/// The outcome of a command, rendered either as text lines or as JSON.
#[derive(Debug, Default)]
pub struct Output {
    lines: Vec<String>,
    json: Map<String, Value>,
}

impl Output {
    fn new(field: &Field, verb: &str) -> Self {
        let mut out = Output::default();
        out.json.insert("field".into(), json!(field.to_string()));
        out.json.insert("verb".into(), json!(verb));
        out
    }

    fn put(&mut self, key: &str, label: &str, text: String, value: Value) {
        self.lines.push(format!("{label}: {text}"));
        self.json.insert(key.into(), value);
    }

    fn group(&mut self, g: &UnitGroup) {
        let text = g.elements().iter().map(|u| u.to_string()).collect::<Vec<_>>().join(", ");
        let units: Vec<Value> = g.elements().iter().map(unit_json).collect();
        self.put("group", "group", format!("{{{text}}}"), Value::Array(units));
        self.put("order", "order", g.order().to_string(), json!(g.order()));
        let class = g.classify().to_string();
        self.put("classification", "classification", class.clone(), json!(class));
    }

    fn ratfun(&mut self, key: &str, label: &str, f: Option<&RatFun>) {
        match f {
            Some(f) => self.put(key, label, f.to_string(), ratfun_json(f)),
            None => self.put(key, label, "none".into(), Value::Null),
        }
    }

    fn unit(&mut self, key: &str, label: &str, u: &MoebiusUnit) {
        self.put(key, label, u.to_string(), unit_json(u));
    }

    pub fn text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.json.clone())
    }
}

fn unit_json(u: &MoebiusUnit) -> Value {
    let [a, b, c, d] = u.entries();
    json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "d": d.to_string()})
}

fn ratfun_json(f: &RatFun) -> Value {
    let coeffs = |p: &fixgroup_core::Poly| p.coeffs().iter().map(|c| json!(c.to_string())).collect::<Vec<_>>();
    json!({"num": coeffs(f.num()), "den": coeffs(f.den())})
}

fn closure(units: &str, field: &Field, cap: usize) -> Result<UnitGroup, Failure> {
    let gens = parse_unit_list(units, field)?;
    Ok(UnitGroup::closure(field, &gens, cap)?)
}

/// Run a parsed command.
pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    let field = parse_field(&cli.field)?;
    let opts = FixingOptions { max_extension: cli.max_extension };
    let mut out = Output::new(&field, cli.verb.name());
    match &cli.verb {
        Verb::Normalize { f } => {
            let f = parse_ratfun(f, &field)?;
            if f.is_constant() {
                return Err(Error::ConstantInput.into());
            }
            let nf = f.normal_form()?;
            out.unit("left", "left unit", &nf.left);
            out.unit("right", "right unit", &nf.right);
            out.ratfun("normalized", "normal form", Some(&nf.normalized));
        }
        Verb::FixGroup { f } => {
            let f = parse_ratfun(f, &field)?;
            let report = fixing_report(&f, opts)?;
            out.group(&report.trace.group);
            out.put(
                "normal_certified",
                "normal",
                report.normal_certified.to_string(),
                json!(report.normal_certified),
            );
            out.ratfun("generator", "generator", report.generator.as_ref());
            out.ratfun("left_factor", "left factor", report.left_factor.as_ref());
            let e = report.trace.extension_degree;
            if e > 1 {
                out.put("extension_degree", "computed over extension of degree", e.to_string(), json!(e));
            }
        }
        Verb::BruteFixGroup { f } => {
            let f = parse_ratfun(f, &field)?;
            if f.is_constant() {
                return Err(Error::ConstantInput.into());
            }
            let g = brute_force_fixing_group(&f)?;
            out.group(&g);
            let normal = normality_flag(&f, &g);
            out.put("normal_certified", "normal", normal.to_string(), json!(normal));
        }
        Verb::FixedField { units } => {
            let g = closure(units, &field, cli.cap)?;
            out.group(&g);
            let h = fixed_field_generator(&g)?;
            out.ratfun("generator", "generator", Some(&h));
        }
        Verb::LeftFactor { f, h } => {
            let f = parse_ratfun(f, &field)?;
            let h = parse_ratfun(h, &field)?;
            if h.is_constant() {
                return Err(Error::ConstantInner.into());
            }
            out.ratfun("left_factor", "left factor", f.left_factor(&h).as_ref());
        }
        Verb::Compose { f, g } => {
            let f = parse_ratfun(f, &field)?;
            let g = parse_ratfun(g, &field)?;
            out.ratfun("result", "composition", Some(&f.compose(&g)?));
        }
        Verb::Conjugate { units, v } => {
            let g = closure(units, &field, cli.cap)?;
            let v = parse_unit(v, &field)?;
            out.group(&g.conjugate(&v));
        }
        Verb::Classify { units } => {
            out.group(&closure(units, &field, cli.cap)?);
        }
        Verb::Order { u } => {
            let u = parse_unit(u, &field)?;
            out.unit("unit", "unit", &u);
            match u.order(cli.cap) {
                UnitOrder::Finite(n) => out.put("order", "order", n.to_string(), json!(n)),
                UnitOrder::Infinite => {
                    out.put("order", "order", format!("infinite (exceeds {})", cli.cap), Value::Null)
                }
            }
        }
        Verb::Enumerate { linear } => {
            out.group(&UnitGroup::enumerate(&field, *linear)?);
        }
        Verb::CanonicalGenerators => {
            let (f0, g_full) = finite_field_canonical_generators(&field)?;
            out.ratfun("f0", "affine generator", Some(&f0));
            out.ratfun("g_full", "full generator", Some(&g_full));
        }
    }
    Ok(out)
}

/// Parse `args`, run the command and write the result. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let rendered = if cli.json { format!("{}\n", out.to_json()) } else { out.text() };
            let _ = stdout.write_all(rendered.as_bytes());
            0
        }
        Err(failure) => {
            let _ = writeln!(stderr, "fixgroup {}: {}", cli.verb.name(), failure.message);
            failure.exit_code()
        }
    }
}
