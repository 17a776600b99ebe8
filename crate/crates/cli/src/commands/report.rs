use menurev::analysis::t_values;
use menurev::constructions::{
    deterministic_tight_family, deterministic_tight_menu, gap_construction, growth_table, hypercube_points, line_grid,
    separate_tight_family, shell_points, symmetric_example, t_example_menus,
};
use menurev::revenue::{brev, drev, srev, SearchConfig};
use menurev::Rational;
use serde::Serialize;

use super::{decimal, exact};
use crate::args::{Format, ReportArgs};
use crate::error::CliError;
use crate::output::{csv_text, emit, json_text, table};
use crate::Status;

#[derive(Serialize)]
struct Row {
    item: String,
    value: String,
    decimal: String,
}

#[derive(Default)]
struct Rows(Vec<Row>);

impl Rows {
    fn exact(&mut self, item: impl Into<String>, v: &Rational) {
        self.0.push(Row { item: item.into(), value: exact(v), decimal: decimal(v) });
    }

    fn float(&mut self, item: impl Into<String>, v: f64) {
        self.0.push(Row { item: item.into(), value: String::new(), decimal: format!("{v:.6}") });
    }

    /// Records a search result, or marks the cell when the budget refused it.
    fn searched(&mut self, item: impl Into<String>, r: menurev::Result<Rational>) -> Result<(), CliError> {
        match r {
            Ok(v) => self.exact(item, &v),
            Err(e) if e.is_budget_refusal() => {
                self.0.push(Row { item: item.into(), value: "refused".into(), decimal: String::new() })
            }
            Err(e) => return Err(e.into()),
        }
        Ok(())
    }
}

pub fn run(a: ReportArgs) -> Result<Status, CliError> {
    let cfg = SearchConfig { budget: a.budget, ..SearchConfig::default() };
    let mut rows = Rows::default();

    for (i, menu) in t_example_menus().iter().enumerate() {
        rows.exact(format!("T(t-example-{})", i + 1), &t_values(menu)?.value);
    }

    let sym = symmetric_example();
    rows.exact("symmetric BREV", &brev(&sym)?.value);
    rows.exact("symmetric SREV", &srev(&sym)?.value);
    rows.searched("symmetric DREV", drev(&sym, cfg).map(|r| r.value))?;

    let m = a.m;
    let fm = deterministic_tight_family(m)?;
    let fm_brev = brev(&fm)?.value;
    rows.exact(format!("fm(M={m}) BREV"), &fm_brev);
    match drev(&fm, cfg) {
        Ok(r) => {
            rows.exact(format!("fm(M={m}) DREV"), &r.value);
            rows.exact(format!("fm(M={m}) DREV/BREV"), &(&r.value / &fm_brev));
        }
        Err(e) => rows.searched(format!("fm(M={m}) DREV"), Err(e))?,
    }
    rows.exact(format!("fm-menu(M={m}) T"), &t_values(&deterministic_tight_menu(m)?)?.value);

    let product = separate_tight_family(m)?;
    rows.exact(format!("product(M={m}) SREV"), &srev(&product)?.value);
    rows.exact(format!("product(M={m}) BREV"), &brev(&product)?.value);

    for k in [2usize, 3] {
        let seq = hypercube_points(k)?;
        let trace = gap_construction(&seq, seq.len())?;
        let f = &trace.distribution;
        rows.exact(format!("hypercube(k={k}) gap sum"), &trace.gap_sum());
        rows.exact(format!("hypercube(k={k}) BREV"), &brev(f)?.value);
        rows.exact(format!("hypercube(k={k}) SREV"), &srev(f)?.value);
        rows.searched(format!("hypercube(k={k}) DREV"), drev(f, cfg).map(|r| r.value))?;
    }

    let line = line_grid(100)?;
    rows.exact("line(n=100) BREV", &brev(&line)?.value);
    rows.exact("line(n=100) SREV", &srev(&line)?.value);

    let seq = shell_points(a.prefix, 1_000_000_000_000)?;
    let growth = growth_table(&seq, a.prefix)?;
    if let Some(last) = growth.rows.last() {
        rows.exact(format!("shell gap sum (m={})", last.m), &last.gap_sum);
    }
    rows.float("shell log-log slope", growth.loglog_slope);

    let rows = rows.0;
    let cells: Vec<Vec<String>> = rows.iter().map(|r| vec![r.item.clone(), r.value.clone(), r.decimal.clone()]).collect();
    let header = ["item", "value", "decimal"];
    if a.output.out.is_some() {
        eprint!("{}", table(&header, &cells));
    }
    let text = match a.output.format {
        Format::Json => json_text(&rows)?,
        Format::Csv => csv_text(&header, &cells)?,
    };
    emit(a.output.out.as_deref(), &text)?;
    Ok(Status::Ok)
}
