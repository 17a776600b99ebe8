use std::path::Path;

use menurev::constructions::{
    gap_construction, hypercube_points, shell_points, tbound_menu, worked_example, ConstructionTrace, PointSequence,
    WORKED_NAMES,
};
use menurev::{FiniteDistribution, Menu};
use serde::Serialize;

use super::{decimal, exact, join};
use crate::args::{ConstructArgs, Format};
use crate::error::CliError;
use crate::output::{csv_text, emit, json_text};
use crate::Status;

#[derive(Serialize)]
struct Construction {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    distribution: Option<FiniteDistribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    menu: Option<Menu>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<PointSequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<ConstructionTrace>,
}

fn prefix_of(seq: &PointSequence, prefix: Option<usize>) -> usize {
    prefix.unwrap_or(seq.len())
}

fn build(a: &ConstructArgs) -> Result<Construction, CliError> {
    let usage = |m: &str| CliError::Usage(m.to_string());
    match a.name.as_str() {
        "hypercube" => {
            let k = a.k.ok_or_else(|| usage("hypercube needs --k"))?;
            let seq = hypercube_points(k)?;
            let trace = gap_construction(&seq, prefix_of(&seq, a.prefix))?;
            Ok(gap_output(format!("hypercube(k={k})"), seq, trace))
        }
        "shell" => {
            let count = a.count.ok_or_else(|| usage("shell needs --count"))?;
            let seq = shell_points(count, a.precision)?;
            let trace = gap_construction(&seq, prefix_of(&seq, a.prefix))?;
            Ok(gap_output(format!("shell(count={count})"), seq, trace))
        }
        "tbound-shell" => {
            let count = a.count.ok_or_else(|| usage("tbound-shell needs --count"))?;
            let seq = shell_points(count, a.precision)?;
            let menu = tbound_menu(&seq, prefix_of(&seq, a.prefix))?;
            Ok(Construction { name: format!("tbound-shell(count={count})"), distribution: None, menu: Some(menu), points: Some(seq), trace: None })
        }
        "worked" => {
            let example = a
                .example
                .as_deref()
                .ok_or_else(|| usage(&format!("worked needs an example name: {}", WORKED_NAMES.join(", "))))?;
            let param = if example == "line" { a.n } else { a.m };
            let w = worked_example(example, param).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Construction { name: w.name, distribution: w.distribution, menu: w.menu, points: None, trace: None })
        }
        other => Err(CliError::Usage(format!(
            "unknown construction {other:?}; expected hypercube, shell, tbound-shell or worked"
        ))),
    }
}

fn gap_output(name: String, seq: PointSequence, trace: ConstructionTrace) -> Construction {
    Construction {
        name,
        distribution: Some(trace.distribution.clone()),
        menu: Some(trace.menu.clone()),
        points: Some(seq),
        trace: Some(trace),
    }
}

fn distribution_csv(f: &FiniteDistribution) -> Result<String, CliError> {
    let mut header: Vec<String> = (1..=f.k()).map(|i| format!("x{i}")).collect();
    header.extend(["p".into(), "p_decimal".into()]);
    let rows: Vec<Vec<String>> = f
        .atoms()
        .iter()
        .map(|a| {
            let mut r: Vec<String> = a.x.values().iter().map(exact).collect();
            r.push(exact(&a.p));
            r.push(decimal(&a.p));
            r
        })
        .collect();
    csv_text(&header, &rows)
}

fn menu_csv(m: &Menu) -> Result<String, CliError> {
    let mut header: Vec<String> = (1..=m.k()).map(|i| format!("q{i}")).collect();
    header.extend(["s".into(), "s_decimal".into()]);
    let rows: Vec<Vec<String>> = m
        .entries()
        .iter()
        .map(|e| {
            let mut r: Vec<String> = e.q.iter().map(exact).collect();
            r.push(exact(&e.s));
            r.push(decimal(&e.s));
            r
        })
        .collect();
    csv_text(&header, &rows)
}

pub fn run(a: ConstructArgs) -> Result<Status, CliError> {
    let c = build(&a)?;
    match (&a.output.out, a.output.format) {
        (None, Format::Json) => emit(None, &json_text(&c)?)?,
        (None, Format::Csv) => {
            if let Some(f) = &c.distribution {
                emit(None, &distribution_csv(f)?)?;
            } else if let Some(m) = &c.menu {
                emit(None, &menu_csv(m)?)?;
            }
        }
        (Some(dir), format) => {
            let file = |name: &str| dir.join(name);
            let ext = if format == Format::Json { "json" } else { "csv" };
            if let Some(f) = &c.distribution {
                let text = if format == Format::Json { json_text(f)? } else { distribution_csv(f)? };
                emit(Some(&file(&format!("distribution.{ext}"))), &text)?;
            }
            if let Some(m) = &c.menu {
                let text = if format == Format::Json { json_text(m)? } else { menu_csv(m)? };
                emit(Some(&file(&format!("menu.{ext}"))), &text)?;
            }
            if let Some(t) = &c.trace {
                let text = if format == Format::Json { json_text(t)? } else { trace_csv(t, c.points.as_ref())? };
                emit(Some(&file(&format!("trace.{ext}"))), &text)?;
            }
            summarize(dir, &c);
        }
    }
    Ok(Status::Ok)
}

fn trace_csv(t: &ConstructionTrace, points: Option<&PointSequence>) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = (0..t.gaps.len())
        .map(|n| {
            vec![
                (n + 1).to_string(),
                points.map(|p| join(&p.points[n])).unwrap_or_default(),
                exact(&t.gaps[n]),
                decimal(&t.gaps[n]),
                exact(&t.scales[n]),
                exact(&t.prices[n]),
            ]
        })
        .collect();
    csv_text(&["n", "q", "gap", "gap_decimal", "scale", "price"], &rows)
}

fn summarize(dir: &Path, c: &Construction) {
    let atoms = c.distribution.as_ref().map_or(0, FiniteDistribution::len);
    let entries = c.menu.as_ref().map_or(0, Menu::len);
    eprintln!("{}: {atoms} atoms, {entries} menu entries written to {}", c.name, dir.display());
}
