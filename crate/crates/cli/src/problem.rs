use serde::Serialize;
use stratalloc::{
    srswor_params, ClassicalProblem, LowerProblem, MinCostProblem, StrataFrame, UpperProblem,
};

use crate::args::{Kind, ProblemArgs};
use crate::error::{CliError, Result};
use crate::input::{parse_table, Scalars, Table};

pub enum Problem {
    Lower(LowerProblem),
    MinCost(MinCostProblem),
    Classical(ClassicalProblem),
    Upper(UpperProblem),
}

impl Problem {
    pub fn frame(&self) -> &StrataFrame {
        match self {
            Problem::Lower(p) => p.frame(),
            Problem::MinCost(p) => p.frame(),
            Problem::Classical(p) => p.frame(),
            Problem::Upper(p) => p.frame(),
        }
    }
}

/// The kind and the scalar parameters a problem was built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Echo {
    pub kind: &'static str,
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(rename = "A0", skip_serializing_if = "Option::is_none")]
    pub a0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    #[serde(rename = "Vt", skip_serializing_if = "Option::is_none")]
    pub vt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub from_srswor: bool,
}

pub struct Built {
    pub problem: Problem,
    pub echo: Echo,
}

pub fn build(args: &ProblemArgs, text: &str) -> Result<Built> {
    let (table, scalars) = parse_table(text)?;
    let scalars = Scalars {
        v: args.v.or(scalars.v),
        a0: args.a0.or(scalars.a0),
        c0: args.c0.or(scalars.c0),
        vt: args.vt.or(scalars.vt),
        n: args.n.or(scalars.n),
    };
    let (frame, derived_a0) = frame(&table, args.from_srswor)?;
    let mut echo = Echo {
        kind: args.kind.name(),
        v: None,
        a0: None,
        c0: None,
        vt: None,
        n: None,
        from_srswor: args.from_srswor,
    };

    let problem = match args.kind {
        Kind::Lower => {
            let vt = required(scalars.vt, "--vt")?;
            echo.vt = Some(vt);
            let m = column(&table.m, "m")?;
            Problem::Lower(LowerProblem::new(frame.with_lower(m)?, vt)?)
        }
        Kind::Mincost => {
            let v = required(scalars.v, "--v")?;
            let a0 = match (derived_a0, scalars.a0) {
                (Some(_), Some(_)) => {
                    return Err(CliError::invalid(
                        "--from-srswor derives A0; do not also give it",
                    ))
                }
                (Some(a0), None) => a0,
                (None, a0) => required(a0, "--a0")?,
            };
            let c0 = scalars.c0.unwrap_or(0.0);
            (echo.v, echo.a0, echo.c0) = (Some(v), Some(a0), Some(c0));
            let upper = column(&table.upper, "M")?;
            Problem::MinCost(MinCostProblem::new(frame.with_upper(upper)?, v, a0, c0)?)
        }
        Kind::Classical => {
            let n = required(scalars.n, "--n")?;
            echo.n = Some(n);
            Problem::Classical(ClassicalProblem::new(frame, n)?)
        }
        Kind::Upper => {
            let n = required(scalars.n, "--n")?;
            echo.n = Some(n);
            let upper = column(&table.upper, "M")?;
            Problem::Upper(UpperProblem::new(frame.with_upper(upper)?, n)?)
        }
    };
    Ok(Built { problem, echo })
}

fn frame(table: &Table, from_srswor: bool) -> Result<(StrataFrame, Option<f64>)> {
    let (a, a0) = if from_srswor {
        if table.a.is_some() {
            return Err(CliError::invalid(
                "--from-srswor derives A; drop the A column",
            ));
        }
        let (a, a0) = srswor_params(&column(&table.sizes, "N")?, &column(&table.sd, "S")?)?;
        (a, Some(a0))
    } else {
        (column(&table.a, "A")?, None)
    };
    let c = table
        .c
        .clone()
        .unwrap_or_else(|| vec![1.0; table.labels.len()]);
    let mut frame = StrataFrame::new(table.labels.clone(), a, c)?;
    if let Some(sizes) = &table.sizes {
        frame = frame.with_sizes(sizes.clone())?;
    }
    if let Some(sd) = &table.sd {
        frame = frame.with_sd(sd.clone())?;
    }
    Ok((frame, a0))
}

fn column(values: &Option<Vec<f64>>, name: &str) -> Result<Vec<f64>> {
    values
        .clone()
        .ok_or_else(|| CliError::invalid(format!("column {name} is required for this problem")))
}

fn required(value: Option<f64>, flag: &str) -> Result<f64> {
    value.ok_or_else(|| CliError::invalid(format!("{flag} is required for this problem")))
}

/// The tolerance from `--tol` or `STRATALLOC_TOL`, if given.
pub fn tolerance(args: &ProblemArgs) -> Result<Option<f64>> {
    match args.tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => Err(CliError::invalid(format!(
            "tolerance must be a finite non-negative number, got {t}"
        ))),
        t => Ok(t),
    }
}
