use menurev::analysis::{t_values, tight_distribution_from, TBoundReport};
use menurev::constructions::worked_example;
use menurev::revenue::brev;
use menurev::{expected_revenue, FiniteDistribution, Menu, Rational};
use serde::Serialize;

use super::{decimal, exact, read_menu};
use crate::args::{Format, TboundArgs};
use crate::error::CliError;
use crate::output::{csv_text, emit, json_text};
use crate::Status;

/// Revenue of the menu on its own tight distribution against `T · BRev`.
#[derive(Serialize)]
struct Tight {
    distribution: FiniteDistribution,
    #[serde(with = "menurev::rational::serde_rational")]
    menu_revenue: Rational,
    #[serde(with = "menurev::rational::serde_rational")]
    brev: Rational,
    #[serde(with = "menurev::rational::serde_rational")]
    t_times_brev: Rational,
    equal: bool,
}

#[derive(Serialize)]
struct Output {
    #[serde(flatten)]
    report: TBoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    tight: Option<Tight>,
}

fn load(a: &TboundArgs) -> Result<Menu, CliError> {
    if let Some(name) = &a.example {
        let w = worked_example(name, a.m).map_err(|e| CliError::Usage(e.to_string()))?;
        return w.menu.ok_or_else(|| CliError::Usage(format!("example {name:?} has no menu")));
    }
    let path = a.input.as_deref().ok_or_else(|| CliError::Usage("a menu file or --example is required".into()))?;
    read_menu(path)
}

pub fn run(a: TboundArgs) -> Result<Status, CliError> {
    let menu = load(&a)?;
    let report = t_values(&menu)?;
    let tight = if a.tight {
        let f = tight_distribution_from(&report)?;
        let menu_revenue = expected_revenue(&menu, &f)?;
        let b = brev(&f)?.value;
        let t_times_brev = &report.value * &b;
        Some(Tight { equal: menu_revenue == t_times_brev, distribution: f, menu_revenue, brev: b, t_times_brev })
    } else {
        None
    };
    eprintln!("T = {} ({})", exact(&report.value), report.value_decimal);
    if let Some(t) = &tight {
        eprintln!(
            "tight distribution: revenue {} vs T*BREV {} ({})",
            decimal(&t.menu_revenue),
            decimal(&t.t_times_brev),
            if t.equal { "equal" } else { "differ" }
        );
    }
    let text = match a.output.format {
        Format::Json => json_text(&Output { report, tight })?,
        Format::Csv => csv_text(&TBoundReport::csv_header(), &report.csv_rows())?,
    };
    emit(a.output.out.as_deref(), &text)?;
    Ok(Status::Ok)
}
