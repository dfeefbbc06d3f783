use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use stratalloc::verify::{
    check_optimal, check_optimal_upper, oracle_grid, oracle_subsets, oracle_upper, Reason, Verdict,
    DEFAULT_TOL,
};
use stratalloc::{
    cost, from_lower, lrna, neyman, rna, solve_min_cost, to_lower, Allocation, RoundMode,
    SolveOptions, StrataFrame, UpperProblem,
};

use crate::args::{Method, OracleArgs, Round, SolveArgs, VerifyArgs};
use crate::error::{CliError, Result};
use crate::input::{parse_allocation, read};
use crate::problem::{build, tolerance, Problem};
use crate::report::{entries, oracle_labels, to_json, Comparison, OracleReport, Report};

pub fn solve(args: &SolveArgs) -> i32 {
    if args.input.len() > 1 && args.out_dir.is_none() {
        eprintln!("error: --out-dir is required with more than one --input");
        return 2;
    }
    if let Some(dir) = &args.out_dir {
        let mut stems = HashSet::new();
        for path in &args.input {
            if !stems.insert(output_path(dir, path)) {
                eprintln!(
                    "error: two inputs would both write {}",
                    output_path(dir, path).display()
                );
                return 2;
            }
        }
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: {}: {e}", dir.display());
            return 2;
        }
    }

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let results: Vec<Result<String>> = pool.install(|| {
        args.input
            .par_iter()
            .map(|path| {
                let report = solve_one(args, path)?;
                match &args.out_dir {
                    Some(dir) => {
                        let out = output_path(dir, path);
                        fs::write(&out, &report)
                            .map_err(|source| CliError::Io { path: out, source })?;
                        Ok(String::new())
                    }
                    None => Ok(report),
                }
            })
            .collect()
    });

    let mut code = 0;
    for (path, result) in args.input.iter().zip(results) {
        match result {
            Ok(report) => print!("{report}"),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                code = code.max(e.exit_code());
            }
        }
    }
    code
}

fn output_path(dir: &Path, input: &Path) -> PathBuf {
    let stem = input.file_stem().unwrap_or(input.as_os_str());
    dir.join(stem).with_extension("json")
}

fn solve_one(args: &SolveArgs, path: &Path) -> Result<String> {
    let built = build(&args.problem, &read(path)?)?;
    let opts = SolveOptions {
        tol: tolerance(&args.problem)?.unwrap_or(0.0),
        trace: args.trace,
        duals: args.duals,
        round: match args.round {
            Round::None => RoundMode::None,
            Round::Ceil => RoundMode::Ceil,
        },
    };
    let frame = built.problem.frame();
    let (alloc, trace) = match &built.problem {
        Problem::Lower(p) => {
            let (alloc, trace) = lrna(p, &opts);
            (alloc, Some(trace))
        }
        Problem::MinCost(p) => {
            let (alloc, trace) = solve_min_cost(p, &opts)?;
            (alloc, Some(trace))
        }
        Problem::Upper(p) => {
            let (alloc, trace) = rna(p, &opts);
            (alloc, Some(trace))
        }
        Problem::Classical(p) => {
            let mut alloc = neyman(p);
            if opts.round == RoundMode::Ceil {
                alloc.rounded = Some(alloc.values.iter().map(|v| v.ceil()).collect());
            }
            (alloc, None)
        }
    };

    let mut report = Report::new(built.echo.clone(), frame, &alloc);
    // multipliers are only derived for the lower-bounded problems
    if args.duals && matches!(built.problem, Problem::Lower(_) | Problem::MinCost(_)) {
        report = report.with_duals(frame, &alloc);
    }
    if let (true, Some(trace)) = (args.trace, &trace) {
        report = report.with_trace(frame, trace);
    }
    Ok(to_json(&report))
}

pub fn verify(args: &VerifyArgs) -> i32 {
    match try_verify(args) {
        Ok(verdict) => {
            print!("{}", to_json(&verdict));
            if verdict.accepted {
                0
            } else {
                3
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_verify(args: &VerifyArgs) -> Result<Verdict> {
    let built = build(&args.problem, &read(&args.input)?)?;
    let tol = tolerance(&args.problem)?.unwrap_or(DEFAULT_TOL);
    let frame = built.problem.frame();
    let x = align(frame, parse_allocation(&read(&args.allocation)?)?)?;

    Ok(match &built.problem {
        Problem::Lower(p) => check_optimal(p, &x, tol),
        Problem::MinCost(p) => {
            if let Some(h) = (0..x.len()).find(|&h| !(x[h] > 0.0)) {
                return Ok(Verdict::rejected(Reason::BoundViolated {
                    label: frame.label(h).to_owned(),
                }));
            }
            let (a, c) = (frame.a(), frame.c());
            let z: Vec<f64> = (0..x.len()).map(|h| a[h] * a[h] / (c[h] * x[h])).collect();
            check_optimal(&to_lower(p)?, &z, tol)
        }
        Problem::Upper(p) => check_optimal_upper(p, &x, tol)?,
        Problem::Classical(p) => {
            let total: f64 = frame.order().iter().map(|&h| x[h]).sum();
            if (total - p.n()).abs() > tol * p.n() {
                return Ok(Verdict::rejected(Reason::EqualityResidual {
                    value: total - p.n(),
                }));
            }
            let best = neyman(p);
            match (0..x.len()).find(|&h| (x[h] - best.values[h]).abs() > tol * best.values[h]) {
                Some(_) => Verdict::rejected(Reason::NotCandidateForm),
                None => Verdict::optimal(Vec::new()),
            }
        }
    })
}

/// Values from `(label, value)` pairs, rearranged into frame order.
fn align(frame: &StrataFrame, pairs: Vec<(String, f64)>) -> Result<Vec<f64>> {
    let mut values = vec![None; frame.len()];
    for (label, value) in pairs {
        let h = frame.index_of(&label).ok_or_else(|| {
            CliError::invalid(format!("allocation names unknown stratum {label:?}"))
        })?;
        if values[h].replace(value).is_some() {
            return Err(CliError::invalid(format!(
                "stratum {label:?} appears twice in the allocation"
            )));
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(h, v)| {
            v.ok_or_else(|| {
                CliError::invalid(format!(
                    "allocation has no value for stratum {:?}",
                    frame.label(h)
                ))
            })
        })
        .collect()
}

pub fn oracle(args: &OracleArgs) -> i32 {
    match try_oracle(args) {
        Ok(report) => {
            print!("{}", to_json(&report));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_oracle(args: &OracleArgs) -> Result<OracleReport> {
    let built = build(&args.problem, &read(&args.input)?)?;
    let frame = built.problem.frame();
    let (a, c) = (frame.a(), frame.c());
    let grid_only_lower =
        || CliError::invalid("--method grid applies to the lower and mincost kinds");
    let opts = SolveOptions::default();

    // (oracle values, take-set when known, objective, solver values)
    let (values, take_set, objective, solver): (Vec<f64>, Option<Vec<String>>, f64, Vec<f64>) =
        match (&built.problem, args.method) {
            (Problem::Lower(p), Method::Subsets) => {
                let best = oracle_subsets(p)?;
                let labels = oracle_labels(frame, &best);
                (
                    best.values,
                    Some(labels),
                    best.objective,
                    lrna(p, &opts).0.values,
                )
            }
            (Problem::Lower(p), Method::Grid) => {
                let z = oracle_grid(p, args.resolution)?;
                let f = (0..z.len()).map(|h| a[h] * a[h] / z[h]).sum();
                (z, None, f, lrna(p, &opts).0.values)
            }
            (Problem::MinCost(p), method) => {
                let lower = to_lower(p)?;
                let solver = solve_min_cost(p, &opts)?.0.values;
                match method {
                    Method::Subsets => {
                        let x = from_lower(p, &oracle_subsets(&lower)?);
                        let labels = oracle_labels(frame, &x);
                        (x.values, Some(labels), x.objective, solver)
                    }
                    Method::Grid => {
                        let z = oracle_grid(&lower, args.resolution)?;
                        let upper = p.upper();
                        let x: Vec<f64> = (0..z.len())
                            .map(|h| (a[h] * a[h] / (c[h] * z[h])).min(upper[h]))
                            .collect();
                        let total = cost(frame, p.c0(), &x);
                        (x, None, total, solver)
                    }
                }
            }
            (Problem::Upper(p), Method::Subsets) => {
                let best = oracle_upper(p)?;
                let labels = oracle_labels(frame, &best);
                (
                    best.values,
                    Some(labels),
                    best.objective,
                    rna(p, &opts).0.values,
                )
            }
            (Problem::Classical(p), Method::Subsets) => {
                // no stratum can exceed n, so capping every stratum at n
                // leaves the problem unchanged
                let capped = StrataFrame::new(frame.labels().to_vec(), a.to_vec(), c.to_vec())?
                    .with_upper(vec![p.n(); frame.len()])?;
                let best: Allocation = oracle_upper(&UpperProblem::new(capped, p.n())?)?;
                (
                    best.values,
                    Some(Vec::new()),
                    best.objective,
                    neyman(p).values,
                )
            }
            (Problem::Upper(_) | Problem::Classical(_), Method::Grid) => {
                return Err(grid_only_lower())
            }
        };

    let compare = args.compare.then(|| Comparison {
        max_rel_dev: solver
            .iter()
            .zip(&values)
            .map(|(s, o)| (s - o).abs() / o.abs())
            .fold(0.0, f64::max),
        solver: entries(frame, &solver),
    });
    Ok(OracleReport {
        problem: built.echo,
        method: match args.method {
            Method::Subsets => "subsets",
            Method::Grid => "grid",
        },
        allocation: entries(frame, &values),
        take_set,
        objective,
        compare,
    })
}
