//! Curve data behind each figure, one CSV per curve.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num_complex::Complex64;

use phasekit::distributions::{self, uniform_grid, Variable};
use phasekit::families::recurrence_table;
use phasekit::format::{fmt_e, fmt_g};
use phasekit::quadrature::DEFAULT_TOLERANCE;
use phasekit::states::{closed_form_report, coherent_auto, coherent_fg, fock, DensityState, DEFAULT_TAIL_TOL};
use phasekit::verify::fock_angle_variance;
use phasekit::{Error, Execution, FamilySpec, Result};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    F1,
    F2,
    F3,
    F5,
    F6,
    F7,
    F11,
    F12,
    F14,
    F16,
    F17,
}

impl FigureId {
    fn name(self) -> &'static str {
        match self {
            FigureId::F1 => "f1",
            FigureId::F2 => "f2",
            FigureId::F3 => "f3",
            FigureId::F5 => "f5",
            FigureId::F6 => "f6",
            FigureId::F7 => "f7",
            FigureId::F11 => "f11",
            FigureId::F12 => "f12",
            FigureId::F14 => "f14",
            FigureId::F16 => "f16",
            FigureId::F17 => "f17",
        }
    }
}

/// A curve to compute: file stem plus what to evaluate.
enum Job {
    FockVariance { n: usize },
    AngleVariance { n: usize },
    SweepClassical { value: f64, column: &'static str },
    F1 { lambda: f64 },
    Density { spec: FamilySpec, state: StateChoice, variable: Variable },
    Classical { variable: Variable },
}

#[derive(Clone, Copy)]
enum StateChoice {
    Fock(usize),
    Coherent(Complex64),
}

const COHERENT_ALPHAS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.0, 0.0)];
const COHERENT_LAMBDAS: [f64; 2] = [-0.25, 1.0];
const VACUUM_LAMBDAS: [f64; 6] = [-0.25, 0.0, 0.25, 0.5, 1.0, 2.0];

/// `λ = −0.45, −0.40, ..., 3.00`.
pub fn lambda_sweep() -> Vec<f64> {
    (0..=69).map(|k| (-45 + 5 * k) as f64 / 100.0).collect()
}

/// Gegenbauer family at `λ`, with the first-kind Chebyshev limit at 0.
pub fn gegenbauer_or_limit(lambda: f64) -> Result<FamilySpec> {
    if lambda == 0.0 {
        Ok(FamilySpec::chebyshev_t())
    } else {
        FamilySpec::gegenbauer(lambda)
    }
}

fn lambda_label(lambda: f64) -> String {
    format!("lambda{}", fmt_g(lambda, 6))
}

fn alpha_label(alpha: Complex64) -> String {
    let sign = if alpha.im < 0.0 { "-" } else { "+" };
    format!("alpha{}{sign}{}i", fmt_g(alpha.re, 6), fmt_g(alpha.im.abs(), 6))
}

fn jobs(figure: FigureId) -> Result<Vec<(String, Job)>> {
    let mut jobs = Vec::new();
    let coherent_set = |variable: Variable, jobs: &mut Vec<(String, Job)>| -> Result<()> {
        for lambda in COHERENT_LAMBDAS {
            for (re, im) in COHERENT_ALPHAS {
                let alpha = Complex64::new(re, im);
                jobs.push((
                    format!("{}_{}", lambda_label(lambda), alpha_label(alpha)),
                    Job::Density { spec: FamilySpec::gegenbauer(lambda)?, state: StateChoice::Coherent(alpha), variable },
                ));
            }
        }
        Ok(())
    };
    match figure {
        FigureId::F1 => {
            for n in 0..4 {
                jobs.push((format!("n{n}"), Job::FockVariance { n }));
            }
            jobs.push(("classical".into(), Job::SweepClassical { value: 0.5, column: "var_C" }));
        }
        FigureId::F7 => {
            for n in 0..4 {
                jobs.push((format!("n{n}"), Job::AngleVariance { n }));
            }
            jobs.push(("classical".into(), Job::SweepClassical { value: PI * PI / 12.0, column: "var_ThetaC" }));
        }
        FigureId::F2 => {
            for lambda in [-0.25, 0.5, 1.0, 5.0] {
                jobs.push((lambda_label(lambda), Job::F1 { lambda }));
            }
        }
        FigureId::F3 => {
            for lambda in COHERENT_LAMBDAS {
                for n in [0, 1, 5] {
                    jobs.push((
                        format!("{}_n{n}", lambda_label(lambda)),
                        Job::Density {
                            spec: FamilySpec::gegenbauer(lambda)?,
                            state: StateChoice::Fock(n),
                            variable: Variable::Cosine,
                        },
                    ));
                }
            }
            jobs.push(("classical".into(), Job::Classical { variable: Variable::Cosine }));
        }
        FigureId::F5 | FigureId::F11 => {
            let variable = if figure == FigureId::F5 { Variable::Cosine } else { Variable::ArcCosine };
            for lambda in VACUUM_LAMBDAS {
                jobs.push((
                    lambda_label(lambda),
                    Job::Density { spec: gegenbauer_or_limit(lambda)?, state: StateChoice::Fock(0), variable },
                ));
            }
            jobs.push(("classical".into(), Job::Classical { variable }));
        }
        FigureId::F14 => {
            for (mu, nu) in [(-0.5, -0.25), (-0.5, 0.5), (0.5, -0.5), (0.25, 0.5)] {
                jobs.push((
                    format!("mu{}_nu{}", fmt_g(mu, 6), fmt_g(nu, 6)),
                    Job::Density {
                        spec: FamilySpec::jacobi(mu, nu)?,
                        state: StateChoice::Fock(0),
                        variable: Variable::Cosine,
                    },
                ));
            }
            jobs.push(("classical".into(), Job::Classical { variable: Variable::Cosine }));
        }
        FigureId::F6 => coherent_set(Variable::Cosine, &mut jobs)?,
        FigureId::F16 => coherent_set(Variable::Sine, &mut jobs)?,
        FigureId::F12 => coherent_set(Variable::ArcCosine, &mut jobs)?,
        FigureId::F17 => coherent_set(Variable::ArcSine, &mut jobs)?,
    }
    Ok(jobs)
}

fn header(figure: FigureId, lines: &[(&str, String)]) -> String {
    let mut out = format!("# figure: {}\n", figure.name());
    for (k, v) in lines {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let _ = writeln!(out, "# version: phasekit {}", env!("CARGO_PKG_VERSION"));
    out
}

fn xy_rows(out: &mut String, columns: &str, rows: &[(f64, f64)]) {
    let _ = writeln!(out, "{columns}");
    for (x, y) in rows {
        let _ = writeln!(out, "{},{}", fmt_e(*x, 12), fmt_e(*y, 12));
    }
}

fn sweep<F: Fn(&FamilySpec) -> Result<f64> + Sync + Send>(f: F) -> Result<Vec<(f64, f64)>> {
    lambda_sweep()
        .into_iter()
        .map(|lambda| Ok((lambda, f(&gegenbauer_or_limit(lambda)?)?)))
        .collect()
}

fn build(figure: FigureId, job: &Job, grid: usize, margin: f64, exec: Execution) -> Result<String> {
    match job {
        Job::FockVariance { n } => {
            let rows = sweep(|spec| {
                let table = recurrence_table(spec, n + 4);
                Ok(closed_form_report(&table, &fock(*n, n + 3)?)?.var_c)
            })?;
            let mut out = header(figure, &[("family", "gegenbauer(lambda)".into()), ("state", format!("fock:{n}"))]);
            xy_rows(&mut out, "lambda,var_C", &rows);
            Ok(out)
        }
        Job::AngleVariance { n } => {
            let rows = sweep(|spec| fock_angle_variance(spec, *n, Variable::ArcCosine, DEFAULT_TOLERANCE))?;
            let mut out = header(figure, &[("family", "gegenbauer(lambda)".into()), ("state", format!("fock:{n}"))]);
            xy_rows(&mut out, "lambda,var_ThetaC", &rows);
            Ok(out)
        }
        Job::SweepClassical { value, column } => {
            let rows: Vec<(f64, f64)> = lambda_sweep().into_iter().map(|l| (l, *value)).collect();
            let mut out = header(figure, &[("family", "classical".into()), ("state", "classical".into())]);
            xy_rows(&mut out, &format!("lambda,{column}"), &rows);
            Ok(out)
        }
        Job::F1 { lambda } => {
            let spec = FamilySpec::gegenbauer(*lambda)?;
            let table = recurrence_table(&spec, 300);
            let grid: Vec<f64> = (0..=200).map(|k| k as f64 * 0.05).collect();
            let values = exec.try_map(&grid, |&a| coherent_fg(&table, a, DEFAULT_TAIL_TOL).map(|fg| fg.f1))?;
            let rows: Vec<(f64, f64)> = grid.into_iter().zip(values).collect();
            let mut out = header(figure, &[("family", spec.to_string()), ("state", "coherent |alpha|".into())]);
            xy_rows(&mut out, "alpha_abs,F1", &rows);
            Ok(out)
        }
        Job::Density { spec, state, variable } => {
            let st: DensityState = match state {
                StateChoice::Fock(n) => fock(*n, n + 3)?,
                StateChoice::Coherent(alpha) => coherent_auto(*alpha, DEFAULT_TAIL_TOL)?,
            };
            let table = recurrence_table(spec, st.support() + 1);
            let points = uniform_grid(*variable, grid, margin)?;
            let mut d = distributions::density(&table, spec, &st, &points, *variable, exec)?;
            d.meta.margin = margin;
            Ok(format!("# figure: {}\n{}", figure.name(), d.to_csv()))
        }
        Job::Classical { variable } => {
            let points = uniform_grid(*variable, grid, margin)?;
            let mut d = distributions::classical_density(*variable, &points)?;
            d.meta.margin = margin;
            Ok(format!("# figure: {}\n{}", figure.name(), d.to_csv()))
        }
    }
}

/// Computes every curve of `figure` and writes `<dir>/<figure>_<curve>.csv`.
pub fn write_figure(figure: FigureId, dir: &Path, grid: usize, margin: f64, exec: Execution) -> Result<Vec<PathBuf>> {
    let jobs = jobs(figure)?;
    let contents = exec.try_map(&jobs, |(_, job)| build(figure, job, grid, margin, exec))?;
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::with_capacity(jobs.len());
    for ((stem, _), text) in jobs.iter().zip(contents) {
        let path = dir.join(format!("{}_{stem}.csv", figure.name()));
        std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_includes_chebyshev_limit() {
        let s = lambda_sweep();
        assert_eq!(s.first(), Some(&-0.45));
        assert_eq!(s.last(), Some(&3.0));
        assert!(s.contains(&0.0));
        assert_eq!(gegenbauer_or_limit(0.0).unwrap(), FamilySpec::chebyshev_t());
    }

    #[test]
    fn labels() {
        assert_eq!(lambda_label(-0.25), "lambda-0.25");
        assert_eq!(alpha_label(Complex64::new(1.0, 1.0)), "alpha1+1i");
        assert_eq!(alpha_label(Complex64::new(0.0, -2.5)), "alpha0-2.5i");
    }
}
