#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use phasekit::distributions::{self, uniform_grid, Variable, DEFAULT_MARGIN};
use phasekit::families::recurrence_table;
use phasekit::format::{fmt_e, fmt_g};
use phasekit::operators::{
    arccos_op, arccos_series, arcsin_op, arcsin_series, build_cosine, build_sine, shift_ops, unitary_exp,
    TruncatedOperator,
};
use phasekit::states::{
    closed_form_report, coherent, coherent_auto, coherent_report, coherent_table_len, custom_from_csv, fock,
    trace_report, DensityState, StateOrigin, DEFAULT_TAIL_TOL,
};
use phasekit::verify::{run_suite, VerifyOptions};
use phasekit::{Error, Execution, FamilySpec, RecurrenceTable};

mod figures;

#[derive(Parser, Debug)]
#[command(name = "phasekit", version, about = "Cosine and sine phase operators from orthogonal polynomial families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recurrence data of a polynomial family.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Dump a truncated operator matrix as `row,col,re,im`.
    Op {
        #[arg(value_enum)]
        kind: OpKind,
        /// Truncation dimension N.
        #[arg(long)]
        dim: usize,
        /// Use the power series with this many terms (arccos/arcsin only).
        #[arg(long)]
        series: Option<usize>,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One-row CSV of all expectation values for a state.
    Expect {
        /// fock:<n>, coherent:<re>,<im> or file:<path> (row,col,re,im CSV).
        #[arg(long, value_parser = parse_state)]
        state: StateSpec,
        #[command(flatten)]
        family: FamilyArgs,
        /// Truncation dimension (chosen from the state when absent).
        #[arg(long)]
        dim: Option<usize>,
        /// Poisson tail bound for coherent states.
        #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
        tail_tol: f64,
        /// closed: banded sums; trace: matrix products; coherent: Poisson series.
        #[arg(long, value_enum, default_value_t = Route::Closed)]
        route: Route,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Probability density of a phase variable on a uniform grid.
    Dist {
        /// cos, sin, arccos or arcsin.
        #[arg(long = "var", value_parser = parse_variable)]
        variable: Variable,
        /// fock:<n>, coherent:<re>,<im> or file:<path> (row,col,re,im CSV).
        #[arg(long, value_parser = parse_state)]
        state: StateSpec,
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of grid points.
        #[arg(long, default_value_t = 401)]
        grid: usize,
        /// Distance kept from each domain endpoint.
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        /// Truncation dimension (chosen from the state when absent).
        #[arg(long)]
        dim: Option<usize>,
        /// Poisson tail bound for coherent states.
        #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
        tail_tol: f64,
        /// Emit the classical reference density instead of the state's.
        #[arg(long)]
        classical: bool,
        /// Disable the parallel executor.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the CSV curves of a figure into a directory.
    Figure {
        #[arg(value_enum)]
        figure: figures::FigureId,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Number of grid points.
        #[arg(long, default_value_t = 401)]
        grid: usize,
        /// Distance kept from each domain endpoint.
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        /// Disable the parallel executor.
        #[arg(long)]
        sequential: bool,
    },
    /// Run the acceptance checks.
    Verify {
        /// all, families, operators, states, distributions, or a criterion number.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = phasekit::quadrature::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Disable the parallel executor.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyAction {
    /// `n,f,g,d` for n = 0..=K.
    Coeffs {
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Jacobi exponent of (1 - x).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// Jacobi exponent of (1 + x).
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Gegenbauer parameter, > -1/2 and nonzero.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyName {
    Legendre,
    ChebyshevT,
    ChebyshevU,
    Gegenbauer,
    Jacobi,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OpKind {
    Cosine,
    Sine,
    Arccos,
    Arcsin,
    Shift,
    ShiftDag,
    Diagonal,
    Number,
    Uc,
    Us,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Closed,
    Trace,
    Coherent,
}

#[derive(Debug, Clone, PartialEq)]
enum StateSpec {
    Fock(usize),
    Coherent(Complex64),
    File(PathBuf),
}

fn parse_state(s: &str) -> Result<StateSpec, String> {
    let (kind, rest) = s.split_once(':').ok_or("expected fock:<n>, coherent:<re>,<im> or file:<path>")?;
    match kind {
        "fock" => rest.parse().map(StateSpec::Fock).map_err(|_| format!("invalid Fock level '{rest}'")),
        "coherent" => {
            let (re, im) = rest.split_once(',').ok_or("expected coherent:<re>,<im>")?;
            let re: f64 = re.trim().parse().map_err(|_| format!("invalid real part '{re}'"))?;
            let im: f64 = im.trim().parse().map_err(|_| format!("invalid imaginary part '{im}'"))?;
            Ok(StateSpec::Coherent(Complex64::new(re, im)))
        }
        "file" if !rest.is_empty() => Ok(StateSpec::File(PathBuf::from(rest))),
        _ => Err(format!("unknown state '{s}'")),
    }
}

fn parse_variable(s: &str) -> Result<Variable, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Flag combinations that clap cannot express; reported as usage errors.
fn validate(cli: &Cli) -> Result<(), String> {
    let family = match &cli.command {
        Command::Family { family, .. }
        | Command::Op { family, .. }
        | Command::Expect { family, .. }
        | Command::Dist { family, .. } => Some(family),
        _ => None,
    };
    if let Some(f) = family {
        let (needs_lambda, needs_jacobi) = match f.family {
            FamilyName::Gegenbauer => (true, false),
            FamilyName::Jacobi => (false, true),
            _ => (false, false),
        };
        if needs_lambda != f.lambda.is_some() {
            return Err(if needs_lambda {
                "--family gegenbauer requires --lambda".into()
            } else {
                "--lambda is only valid with --family gegenbauer".into()
            });
        }
        if needs_jacobi != (f.mu.is_some() && f.nu.is_some()) || (!needs_jacobi && (f.mu.is_some() || f.nu.is_some())) {
            return Err(if needs_jacobi {
                "--family jacobi requires both --mu and --nu".into()
            } else {
                "--mu/--nu are only valid with --family jacobi".into()
            });
        }
    }
    match &cli.command {
        Command::Op { kind, series: Some(_), .. } if !matches!(kind, OpKind::Arccos | OpKind::Arcsin) => {
            Err("--series is only valid for arccos and arcsin".into())
        }
        Command::Op { dim: 0, .. } => Err("--dim must be positive".into()),
        Command::Expect { state: StateSpec::Fock(_) | StateSpec::File(_), route: Route::Coherent, .. } => {
            Err("--route coherent requires a coherent state".into())
        }
        Command::Dist { grid: 0, .. } | Command::Figure { grid: 0, .. } => Err("--grid must be positive".into()),
        Command::Dist { margin, .. } | Command::Figure { margin, .. } if !(*margin > 0.0) => {
            Err("--margin must be positive".into())
        }
        Command::Expect { tail_tol, .. } | Command::Dist { tail_tol, .. } if !(*tail_tol > 0.0 && *tail_tol < 1.0) => {
            Err("--tail-tol must lie in (0, 1)".into())
        }
        Command::Verify { tol, .. } if !(*tol > 0.0) => Err("--tol must be positive".into()),
        _ => Ok(()),
    }
}

fn family_spec(args: &FamilyArgs) -> phasekit::Result<FamilySpec> {
    match args.family {
        FamilyName::Legendre => Ok(FamilySpec::legendre()),
        FamilyName::ChebyshevT => Ok(FamilySpec::chebyshev_t()),
        FamilyName::ChebyshevU => Ok(FamilySpec::chebyshev_u()),
        FamilyName::Gegenbauer => FamilySpec::gegenbauer(args.lambda.unwrap_or(f64::NAN)),
        FamilyName::Jacobi => FamilySpec::jacobi(args.mu.unwrap_or(f64::NAN), args.nu.unwrap_or(f64::NAN)),
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn build_state(spec: &StateSpec, dim: Option<usize>, tail_tol: f64) -> phasekit::Result<DensityState> {
    match spec {
        StateSpec::Fock(n) => fock(*n, dim.unwrap_or(n + 3)),
        StateSpec::Coherent(alpha) => match dim {
            Some(d) => coherent(*alpha, d, tail_tol),
            None => coherent_auto(*alpha, tail_tol),
        },
        StateSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let state = custom_from_csv(&text)?;
            match dim {
                Some(d) if d != state.dim() => Err(Error::DimensionMismatch(d, state.dim())),
                _ => Ok(state),
            }
        }
    }
}

fn emit(output: &OutputArgs, text: &str) -> phasekit::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn coefficients_csv(table: &RecurrenceTable) -> String {
    let mut out = String::from("n,f,g,d\n");
    for n in 0..table.len() {
        let _ = writeln!(out, "{n},{},{},{}", fmt_g(table.f(n), 17), fmt_g(table.g(n), 17), fmt_g(table.d(n), 17));
    }
    out
}

fn operator(kind: OpKind, table: &RecurrenceTable, dim: usize, series: Option<usize>) -> phasekit::Result<TruncatedOperator> {
    Ok(match kind {
        OpKind::Cosine => build_cosine(table, dim)?,
        OpKind::Sine => build_sine(table, dim)?,
        OpKind::Arccos => match series {
            Some(k) => arccos_series(&build_cosine(table, dim)?, k)?.operator,
            None => arccos_op(&build_cosine(table, dim)?)?,
        },
        OpKind::Arcsin => match series {
            Some(k) => arcsin_series(&build_sine(table, dim)?, k)?.operator,
            None => arcsin_op(&build_sine(table, dim)?)?,
        },
        OpKind::Shift => shift_ops(table, dim)?.0,
        OpKind::ShiftDag => shift_ops(table, dim)?.1,
        OpKind::Diagonal => shift_ops(table, dim)?.2,
        OpKind::Number => TruncatedOperator::number(dim),
        OpKind::Uc => unitary_exp(&arccos_op(&build_cosine(table, dim)?)?)?,
        OpKind::Us => unitary_exp(&arcsin_op(&build_sine(table, dim)?)?)?,
    })
}

fn run(cli: Cli) -> phasekit::Result<ExitCode> {
    match cli.command {
        Command::Family { family, action: FamilyAction::Coeffs { n_max } } => {
            let spec = family_spec(&family)?;
            print!("{}", coefficients_csv(&recurrence_table(&spec, n_max)));
        }
        Command::Op { kind, dim, series, family, output } => {
            let spec = family_spec(&family)?;
            let table = recurrence_table(&spec, dim);
            emit(&output, &operator(kind, &table, dim, series)?.to_csv())?;
        }
        Command::Expect { state, family, dim, tail_tol, route, output } => {
            let spec = family_spec(&family)?;
            let st = build_state(&state, dim, tail_tol)?;
            let len = match st.origin() {
                StateOrigin::Coherent { alpha, .. } => st.dim().max(coherent_table_len(alpha.norm(), tail_tol)?),
                _ => st.dim(),
            };
            let table = recurrence_table(&spec, len + 1);
            let report = match (route, st.origin()) {
                (Route::Closed, _) => closed_form_report(&table, &st)?,
                (Route::Trace, _) => trace_report(&table, &st)?,
                (Route::Coherent, StateOrigin::Coherent { alpha, .. }) => coherent_report(&table, alpha, tail_tol)?,
                (Route::Coherent, _) => unreachable!("rejected during validation"),
            };
            let mut text = String::new();
            let _ = writeln!(text, "# family: {spec}");
            let _ = writeln!(text, "# state: {}", st.describe());
            let _ = writeln!(text, "# dim: {}", st.dim());
            let names: Vec<&str> = report.fields().map(|(n, _)| n).collect();
            let values: Vec<String> = report.fields().map(|(_, v)| fmt_e(v, 12)).collect();
            let _ = writeln!(text, "{}", names.join(","));
            let _ = writeln!(text, "{}", values.join(","));
            emit(&output, &text)?;
        }
        Command::Dist { variable, state, family, grid, margin, dim, tail_tol, classical, sequential, output } => {
            let spec = family_spec(&family)?;
            let points = uniform_grid(variable, grid, margin)?;
            let mut result = if classical {
                distributions::classical_density(variable, &points)?
            } else {
                let st = build_state(&state, dim, tail_tol)?;
                let table = recurrence_table(&spec, st.support() + 1);
                distributions::density(&table, &spec, &st, &points, variable, execution(sequential))?
            };
            result.meta.margin = margin;
            emit(&output, &result.to_csv())?;
        }
        Command::Figure { figure, out, grid, margin, sequential } => {
            let files = figures::write_figure(figure, &out, grid, margin, execution(sequential))?;
            for f in files {
                println!("{}", f.display());
            }
        }
        Command::Verify { suite, tol, sequential } => {
            let opts = VerifyOptions { exec: execution(sequential), quad_tol: tol };
            let outcomes = run_suite(&suite, &opts)?;
            let passed = outcomes.iter().filter(|o| o.passed).count();
            for o in &outcomes {
                println!("{o}");
            }
            println!("{passed}/{} checks passed", outcomes.len());
            if passed != outcomes.len() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = validate(&cli) {
        Cli::command().error(ErrorKind::ArgumentConflict, msg).exit();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ERROR {}: {}", e.code(), e.to_string().replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
