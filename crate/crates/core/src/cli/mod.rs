//! Command-line front end: `cornerjet <command> [args]`.
//!
//! Exit codes: 0 accepted / smooth / pass, 2 rejected / pole / fail, 1 usage
//! or parse errors.

pub mod json;
pub mod parse;
pub mod print;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::capacity::{capacity, capacity_table, verify_capacity, DEFAULT_M_MAX};
use crate::decompose::{check_gamma_parity, decompose_halfline, decompose_quadrant};
use crate::error::Error;
use crate::jets::DEFAULT_ORDER;
use crate::metric::{check_metric, MetricVerdict, TestPlotFamily};
use crate::numeric::{
    glaeser_landau_check_with, numeric_pullback_probe, Enlargement, GlaeserLandauReport, SampledFunction,
    DEFAULT_GRID_N, DEFAULT_TOL,
};
use crate::plots::QuadrantPlotGerm;
use crate::pullback::{pullback_halfline, pullback_quadrant, QuadrantPullback};
use crate::Rational;

use json::*;
use parse::{parse_function, parse_halfline, parse_plot, parse_quadrant, parse_rational, split_top, ParseError, Space};
use print::{format_jet1, format_laurent, format_laurent2, format_sum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;

const TENSOR_HELP: &str = "Tensor expression. Half-line: coeff(x)*dx^k, e.g. \"(1/x)*dx^2\". \
Quadrant: a*dx^2 + b*dy^2 + c*dx*dy in x and y; the coefficient written in front of dx*dy \
is stored as the off-diagonal entry c of the symmetric coefficient matrix, it is not halved. \
Rational literals only; exponents of x and y must be at least -4.";

#[derive(Parser, Debug)]
#[command(
    name = "cornerjet",
    version,
    about = "Exact jet calculus for tensors on the half-line and the quadrant"
)]
struct Cli {
    /// Truncation order of all jets.
    #[arg(long, global = true, env = "CORNERJET_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a tensor into its singular and regular parts.
    Decompose {
        #[arg(long, value_enum, default_value_t = Space::Halfline)]
        space: Space,
        #[arg(help = TENSOR_HELP, allow_hyphen_values = true)]
        tensor: String,
    },
    /// Pull a tensor back along a plot germ and classify the result.
    Pullback {
        #[arg(long, value_enum, default_value_t = Space::Halfline)]
        space: Space,
        /// Half-line: t^2, t^4*(1+t), interior(x0; poly), flat.
        /// Quadrant: sq2, or pair(P1, P2) with half-line germs.
        #[arg(long)]
        plot: String,
        #[arg(help = TENSOR_HELP, allow_hyphen_values = true)]
        tensor: String,
    },
    /// Largest pole order a k-tensor can carry at the boundary.
    Capacity {
        k: i64,
        /// Recompute the table for 0..=k from scaling margins.
        #[arg(long)]
        table: bool,
    },
    /// Scaling margins of x^-p*dx^k along t^(2m), checked against exact pullbacks.
    VerifyCapacity {
        k: i64,
        p: i64,
        #[arg(long, default_value_t = DEFAULT_M_MAX as i64)]
        m_max: i64,
    },
    /// Test a half-line 2-tensor against the default plot family.
    CheckMetric {
        #[arg(help = TENSOR_HELP, allow_hyphen_values = true)]
        tensor: String,
    },
    /// Grid check of f'(t)^2 <= 2*C*f(t) with C = sup|f''|.
    GlCheck {
        /// Polynomial in t, or sos(p1; p2; ...) for a sum of squares.
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        interval: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_GRID_N)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Interval for sup|f''|: none, taylor, or a margin delta.
        #[arg(long, default_value = "taylor")]
        enlargement: String,
        /// Also probe the pullback of this half-line tensor along f.
        #[arg(long, allow_hyphen_values = true)]
        probe: Option<String>,
    },
    /// Parity sectors of the square-map pullback of a quadrant tensor.
    Parity {
        #[arg(help = TENSOR_HELP, allow_hyphen_values = true)]
        tensor: String,
    },
}

enum Failure {
    Parse(ParseError),
    Domain(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn new<T: Serialize>(code: i32, text: String, result: &T) -> Self {
        Outcome {
            code,
            text,
            json: serde_json::to_value(result).expect("serializable"),
        }
    }
}

/// Parses `argv` (program name first) and runs the command, returning the
/// exit code and the rendered output.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let name = command_name(&cli.command);
    let result = dispatch(&cli);
    let (code, text, json) = match result {
        Ok(o) => (o.code, o.text, Some(o.json)),
        Err(f) => {
            let (code, msg, dto) = match &f {
                Failure::Parse(e) => (
                    EXIT_ERROR,
                    format!("error: {e}"),
                    ErrorDto {
                        kind: "parse".into(),
                        message: e.to_string(),
                    },
                ),
                Failure::Domain(e) => (exit_for(e), format!("error: {e}"), ErrorDto::from_error(e)),
            };
            return match cli.format {
                Format::Text => (code, msg),
                Format::Json => {
                    let env: Envelope<Value> = Envelope {
                        command: name.into(),
                        exit_code: code,
                        result: None,
                        error: Some(dto),
                    };
                    (code, serde_json::to_string_pretty(&env).expect("serializable"))
                }
            };
        }
    };
    match cli.format {
        Format::Text => (code, text),
        Format::Json => {
            let env = Envelope {
                command: name.into(),
                exit_code: code,
                result: json,
                error: None,
            };
            (code, serde_json::to_string_pretty(&env).expect("serializable"))
        }
    }
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::CapacityExceeded { .. }
        | Error::SingularCrossTerm(_)
        | Error::NotSmoothQuadrant(_)
        | Error::FunctionNegative { .. } => EXIT_REJECTED,
        _ => EXIT_ERROR,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Decompose { .. } => "decompose",
        Command::Pullback { .. } => "pullback",
        Command::Capacity { .. } => "capacity",
        Command::VerifyCapacity { .. } => "verify-capacity",
        Command::CheckMetric { .. } => "check-metric",
        Command::GlCheck { .. } => "gl-check",
        Command::Parity { .. } => "parity",
    }
}

fn code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_REJECTED
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let order = cli.order;
    match &cli.command {
        Command::Decompose {
            space: Space::Halfline,
            tensor,
        } => {
            let tau = parse_halfline(tensor, order)?;
            let d = decompose_halfline(&tau)?;
            let text = format!("c = {}\nregular = {}", d.c, format_jet1(&d.regular, "x"));
            let input = TensorDto {
                space: "halfline".into(),
                text: print::format_halfline(&tau),
            };
            Ok(Outcome::new(EXIT_OK, text, &HalflineDecompositionDto::new(input, &d)))
        }
        Command::Decompose {
            space: Space::Quadrant,
            tensor,
        } => {
            let tau = parse_quadrant(tensor, order)?;
            let d = decompose_quadrant(&tau)?;
            let regular =
                format_sum(
                    d.regular
                        .dx2
                        .terms()
                        .map(|((i, j), c)| (vec![("x", i as i64), ("y", j as i64), ("dx", 2)], c.clone()))
                        .chain(
                            d.regular
                                .dy2
                                .terms()
                                .map(|((i, j), c)| (vec![("x", i as i64), ("y", j as i64), ("dy", 2)], c.clone())),
                        )
                        .chain(d.regular.dxdy.terms().map(|((i, j), c)| {
                            (vec![("x", i as i64), ("y", j as i64), ("dx", 1), ("dy", 1)], c.clone())
                        })),
                );
            let text = format!(
                "A(y) = {}\nB(x) = {}\nregular = {}\nparity: {}",
                format_jet1(&d.a_sing, "y"),
                format_jet1(&d.b_sing, "x"),
                regular,
                if d.parity_report.holds() { "holds" } else { "violated" }
            );
            let input = TensorDto {
                space: "quadrant".into(),
                text: print::format_quadrant(&tau),
            };
            Ok(Outcome::new(EXIT_OK, text, &QuadrantDecompositionDto::new(input, &d)))
        }
        Command::Pullback {
            space: Space::Halfline,
            plot,
            tensor,
        } => {
            let tau = parse_halfline(tensor, order)?;
            let p = parse_plot(plot)?;
            let v = pullback_halfline(&tau, &p, order)?;
            let mut text = v.status.to_string();
            if let Some(w) = &v.witness {
                text.push_str(&format!(
                    "\nwitness = {} + O(t^{})",
                    format_laurent(w, "t"),
                    w.order() + 1
                ));
            }
            Ok(Outcome::new(
                code(v.is_smooth()),
                text,
                &PullbackDto::new(p.to_string(), &v),
            ))
        }
        Command::Pullback {
            space: Space::Quadrant,
            plot,
            tensor,
        } => {
            let tau = parse_quadrant(tensor, order)?;
            let p = parse_quadrant_plot(plot)?;
            match pullback_quadrant(&tau, &p, order)? {
                QuadrantPullback::Square(s) => {
                    let ok = [&s.du2, &s.dv2, &s.dudv].iter().all(|c| c.first_pole().is_none());
                    let text = format!(
                        "{}\ndu^2: {}\ndv^2: {}\ndu*dv: {}",
                        if ok { "Smooth" } else { "Pole" },
                        format_laurent2(&s.du2, ("u", "v")),
                        format_laurent2(&s.dv2, ("u", "v")),
                        format_laurent2(&s.dudv, ("u", "v")),
                    );
                    Ok(Outcome::new(code(ok), text, &Sq2PullbackDto::new(&s)))
                }
                QuadrantPullback::Path(v) => {
                    let mut text = v.status.to_string();
                    if let Some(w) = &v.witness {
                        text.push_str(&format!(
                            "\nwitness = {} + O(t^{})",
                            format_laurent(w, "t"),
                            w.order() + 1
                        ));
                    }
                    Ok(Outcome::new(
                        code(v.is_smooth()),
                        text,
                        &PullbackDto::new(plot.trim().to_string(), &v),
                    ))
                }
            }
        }
        Command::Capacity { k, table: false } => {
            let c = capacity(*k)?;
            Ok(Outcome::new(
                EXIT_OK,
                c.to_string(),
                &CapacityDto {
                    k: *k as u32,
                    capacity: c,
                },
            ))
        }
        Command::Capacity { k, table: true } => {
            let rows: Vec<CapacityDto> = capacity_table(*k)?
                .into_iter()
                .map(|(k, capacity)| CapacityDto { k, capacity })
                .collect();
            let text = rows
                .iter()
                .map(|r| format!("{} {}", r.k, r.capacity))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::new(EXIT_OK, text, &CapacityTableDto { rows }))
        }
        Command::VerifyCapacity { k, p, m_max } => {
            let r = verify_capacity(*k, *p, *m_max)?;
            let mut text = format!(
                "k = {}, p = {}: {} (binding m = {})\nm margin valuation",
                r.k,
                r.p,
                if r.admissible {
                    "admissible"
                } else {
                    "capacity exceeded"
                },
                r.binding_m
            );
            for (i, (m, v)) in r.margins.iter().zip(&r.oracle_valuations).enumerate() {
                text.push_str(&format!("\n{} {m} {v}", i + 1));
            }
            Ok(Outcome::new(code(r.admissible), text, &r))
        }
        Command::CheckMetric { tensor } => {
            let tau = parse_halfline(tensor, order)?;
            let fam = TestPlotFamily {
                order,
                ..TestPlotFamily::default()
            };
            let v = check_metric(&tau, &fam)?;
            let text = match &v.witness {
                None => format!("accepted ({})", MetricVerdict::<Rational>::NOTE),
                Some(w) => format!(
                    "rejected: {} at plot {}, value {} at degree {}",
                    w.clause, w.plot, w.value, w.degree
                ),
            };
            Ok(Outcome::new(code(v.accepted), text, &MetricDto::new(&v)))
        }
        Command::GlCheck {
            f,
            interval,
            grid,
            tol,
            enlargement,
            probe,
        } => {
            let rep = parse_function(f)?;
            let (a, b) = (parse_rational(&interval[0])?, parse_rational(&interval[1])?);
            let sf = SampledFunction::new(rep, a, b, *grid)?;
            let enl = parse_enlargement(enlargement)?;
            let report = glaeser_landau_check_with(&sf, *tol, enl)?;
            let mut ok = report.pass;
            let mut text = format!(
                "{}: C = {}, max_violation = {:e} at t = {}, tol = {:e}",
                if report.pass { "pass" } else { "fail" },
                report.c,
                report.max_violation,
                report.argmax,
                report.tol
            );
            let probe = match probe {
                Some(t) => {
                    let tau = parse_halfline(t, order)?;
                    let pr = numeric_pullback_probe(&tau, &sf, *tol)?;
                    ok &= pr.passes();
                    text.push_str(&format!(
                        "\nprobe: {}, sup = {}",
                        if pr.bounded { "bounded" } else { "unbounded" },
                        pr.sup()
                    ));
                    if let (Some(bd), Some(w)) = (pr.bound, pr.within_bound) {
                        text.push_str(&format!(", bound = {bd} ({})", if w { "within" } else { "exceeded" }));
                    }
                    Some(pr)
                }
                None => None,
            };
            let dto = GlCheckDto {
                report,
                caveat: GlaeserLandauReport::<f64>::CAVEAT.into(),
                probe,
            };
            Ok(Outcome::new(code(ok), text, &dto))
        }
        Command::Parity { tensor } => {
            let tau = parse_quadrant(tensor, order)?;
            let r = check_gamma_parity(&tau);
            let mut lines = vec![if r.holds() {
                "holds".to_string()
            } else {
                "violated".to_string()
            }];
            for c in r.components() {
                let sectors: Vec<String> = c.occupied().iter().map(|(a, b)| format!("({a}, {b})")).collect();
                let vals = c.valuations.map_or("none".to_string(), |(i, j)| format!("({i}, {j})"));
                lines.push(format!(
                    "{}: sectors [{}], valuations {}, parity {}, {}",
                    c.component,
                    sectors.join(", "),
                    vals,
                    if c.parity_ok { "ok" } else { "violated" },
                    if c.pole_free { "pole-free" } else { "pole" }
                ));
            }
            Ok(Outcome::new(code(r.holds()), lines.join("\n"), &ParityDto::new(&r)))
        }
    }
}

fn parse_enlargement(s: &str) -> Result<Enlargement, Failure> {
    match s.trim() {
        "none" => Ok(Enlargement::None),
        "taylor" => Ok(Enlargement::TaylorExcursion),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|d| d.is_finite() && *d >= 0.0)
            .map(Enlargement::Fixed)
            .ok_or_else(|| {
                Failure::Parse(ParseError {
                    line: 1,
                    column: 1,
                    message: format!("enlargement must be none, taylor or a margin, got '{other}'"),
                })
            }),
    }
}

fn parse_quadrant_plot(s: &str) -> Result<QuadrantPlotGerm<Rational>, ParseError> {
    let s = s.trim();
    if s == "sq2" {
        return Ok(QuadrantPlotGerm::SqMap2);
    }
    let bad = || ParseError {
        line: 1,
        column: 1,
        message: "quadrant plots are sq2 or pair(P1, P2)".into(),
    };
    let inner = s
        .strip_prefix("pair")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.trim_end().strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts = split_top(inner, ',');
    let [px, py] = parts.as_slice() else {
        return Err(bad());
    };
    Ok(QuadrantPlotGerm::Pair(parse_plot(px)?, parse_plot(py)?))
}
