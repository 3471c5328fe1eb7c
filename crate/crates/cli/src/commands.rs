use std::fs;
use std::path::Path;

use bergman_spectra::spectra::{
    asymptotic_constants, singular_value_r_with, singular_value_t_with, Method, Operator, SingularValueRecord,
    Settings,
};
use bergman_spectra::verify::run_all;
use bergman_spectra::Params;
use rayon::prelude::*;

use crate::config::{OutputFormat, RunConfig};
use crate::output::{asymptotics_csv, asymptotics_json, table_csv, table_json, AsymptoticRow, TableRow};
use crate::plot::{render, Marker, Panel, Series};
use crate::CliError;

/// What a command printed and whether every number converged.
pub struct Outcome {
    pub stdout: String,
    pub all_converged: bool,
}

const METHOD_COLORS: [&str; 3] = ["black", "blue", "red"];

fn compute(operator: Operator, n: u64, method: Method, params: &Params, settings: &Settings) -> Result<SingularValueRecord, String> {
    let r = match operator {
        Operator::T => singular_value_t_with(n, params, method, settings),
        Operator::R => singular_value_r_with(n, params, method, settings),
    };
    r.map_err(|e| e.to_string())
}

/// A record as emitted: non-converged values keep their number but carry an
/// infinite error estimate.
fn emitted(rec: &Result<SingularValueRecord, String>) -> (f64, f64, bool) {
    match rec {
        Ok(r) if r.converged => (r.value, r.error_est, true),
        Ok(r) => (r.value, f64::INFINITY, false),
        Err(_) => (f64::NAN, f64::INFINITY, false),
    }
}

fn write_plot(path: &Path, panels: &[Panel]) -> Result<(), CliError> {
    fs::write(path, render(panels)).map_err(|e| CliError::Write(format!("cannot write {}: {e}", path.display())))
}

fn title(operator: Operator, params: &Params) -> String {
    format!("Singular values of {operator}_{{{},{}}}", params.alpha(), params.beta())
}

pub fn table(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let settings = Settings::with_rel_tol(cfg.rel_tol);
    let mut tasks = Vec::new();
    for operator in cfg.operator.operators() {
        for n in cfg.n_min..=cfg.n_max {
            for &method in &cfg.methods {
                if method == Method::Asymptotic && n == 0 {
                    continue;
                }
                tasks.push((operator, n, method));
            }
        }
    }
    if cfg.n_min == 0 && cfg.methods.contains(&Method::Asymptotic) {
        eprintln!("note: the approximant c / n^(alpha+1) is undefined at n = 0; those rows are omitted");
    }
    if tasks.is_empty() {
        return Err(CliError::Config("the operator/method/range combination selects no rows".into()));
    }
    let results: Vec<_> = tasks
        .par_iter()
        .map(|&(op, n, m)| compute(op, n, m, &cfg.params, &settings))
        .collect();

    let mut rows = Vec::with_capacity(tasks.len());
    let mut all_converged = true;
    for (&(operator, n, method), rec) in tasks.iter().zip(&results) {
        let (value, error_est, ok) = emitted(rec);
        if !ok {
            all_converged = false;
            match rec {
                Err(e) => eprintln!("warning: {operator} n={n} {method}: {e}"),
                Ok(r) => eprintln!(
                    "warning: {operator} n={n} {method}: not converged (error estimate {:e})",
                    r.error_est
                ),
            }
        }
        rows.push(TableRow {
            operator,
            alpha: cfg.params.alpha(),
            beta: cfg.params.beta(),
            n,
            method,
            value,
            error_est,
        });
    }

    if let Some(path) = &cfg.plot {
        let panels: Vec<Panel> = cfg
            .operator
            .operators()
            .into_iter()
            .map(|op| Panel {
                title: title(op, &cfg.params),
                series: cfg
                    .methods
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| Series {
                        label: m.to_string(),
                        marker: if m == Method::Asymptotic { Marker::Cross } else { Marker::Circle },
                        color: METHOD_COLORS[i % METHOD_COLORS.len()],
                        points: rows
                            .iter()
                            .filter(|r| r.operator == op && r.method == m)
                            .map(|r| (r.n as f64, r.value))
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        write_plot(path, &panels)?;
    }

    let stdout = match cfg.format {
        OutputFormat::Csv => table_csv(&rows),
        OutputFormat::Json => table_json(&rows),
    };
    Ok(Outcome { stdout, all_converged })
}

/// `start, 2·start, 4·start, ...` up to `n_max`, which is always included.
pub fn geometric_grid(n_min: u64, n_max: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    let mut n = n_min.max(1);
    while n <= n_max {
        grid.push(n);
        n = n.saturating_mul(2);
    }
    if grid.last() != Some(&n_max) && n_max >= 1 {
        grid.push(n_max);
    }
    grid
}

pub fn asymptotics(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let method = cfg
        .methods
        .iter()
        .copied()
        .find(|m| *m != Method::Asymptotic)
        .ok_or_else(|| CliError::Config("asymptotics needs quadrature or hypergeometric among the methods".into()))?;
    let settings = Settings::with_rel_tol(cfg.rel_tol);
    let constants = asymptotic_constants(&cfg.params).map_err(|e| CliError::Config(e.to_string()))?;
    let grid = geometric_grid(cfg.n_min, cfg.n_max);
    if grid.is_empty() {
        return Err(CliError::Config("the n range contains no n >= 1".into()));
    }
    let tasks: Vec<(Operator, u64)> = cfg
        .operator
        .operators()
        .into_iter()
        .flat_map(|op| grid.iter().map(move |&n| (op, n)))
        .collect();
    let results: Vec<_> = tasks
        .par_iter()
        .map(|&(op, n)| compute(op, n, method, &cfg.params, &settings))
        .collect();

    let mut rows = Vec::with_capacity(tasks.len());
    let mut all_converged = true;
    for (&(operator, n), rec) in tasks.iter().zip(&results) {
        let (s_n, error_est, ok) = emitted(rec);
        if !ok {
            all_converged = false;
            if let Err(e) = rec {
                eprintln!("warning: {operator} n={n}: {e}");
            } else {
                eprintln!("warning: {operator} n={n}: not converged");
            }
        }
        let c = constants.get(operator);
        let scale = (-(cfg.params.alpha() + 1.0) * (n as f64).ln()).exp();
        rows.push(AsymptoticRow {
            operator,
            alpha: cfg.params.alpha(),
            beta: cfg.params.beta(),
            n,
            s_n,
            s_n_approx: c * scale,
            ratio: s_n / (c * scale),
            error_est,
        });
    }

    if let Some(path) = &cfg.plot {
        let panels: Vec<Panel> = cfg
            .operator
            .operators()
            .into_iter()
            .map(|op| {
                let mine = rows.iter().filter(|r| r.operator == op);
                Panel {
                    title: title(op, &cfg.params),
                    series: vec![
                        Series {
                            label: "s_n".into(),
                            marker: Marker::Circle,
                            color: "black",
                            points: mine.clone().map(|r| (r.n as f64, r.s_n)).collect(),
                        },
                        Series {
                            label: "c / n^(alpha+1)".into(),
                            marker: Marker::Cross,
                            color: "red",
                            points: mine.map(|r| (r.n as f64, r.s_n_approx)).collect(),
                        },
                    ],
                }
            })
            .collect();
        write_plot(path, &panels)?;
    }

    let stdout = match cfg.format {
        OutputFormat::Csv => asymptotics_csv(&rows),
        OutputFormat::Json => asymptotics_json(&rows),
    };
    Ok(Outcome { stdout, all_converged })
}

pub fn verify(cfg: &RunConfig) -> Outcome {
    let reports = run_all(&cfg.params);
    let mut stdout = format!("verification suites for alpha = {}, beta = {}\n", cfg.params.alpha(), cfg.params.beta());
    for r in &reports {
        stdout.push_str(&r.to_string());
        stdout.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    stdout.push_str(&if failed == 0 {
        "all suites passed\n".to_string()
    } else {
        format!("{failed} suite(s) failed\n")
    });
    Outcome {
        stdout,
        all_converged: failed == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_geometric_and_ends_at_n_max() {
        assert_eq!(geometric_grid(1, 16), vec![1, 2, 4, 8, 16]);
        assert_eq!(geometric_grid(0, 20), vec![1, 2, 4, 8, 16, 20]);
        assert_eq!(geometric_grid(3, 3), vec![3]);
        assert!(geometric_grid(0, 0).is_empty());
    }
}
