use std::time::{Duration, Instant};

use menurev::revenue::{brev, drev, drev_ud, m_rev, rev, rev_ud, srev, Quantity, RevenueReport, SearchConfig, Strategy};
use menurev::{FiniteDistribution, Menu};
use serde::Serialize;

use super::{decimal, exact, read_distribution};
use crate::args::{Format, RevenueArgs};
use crate::error::CliError;
use crate::output::{csv_text, emit, json_text, table};
use crate::Status;

const ALL: [Quantity; 6] =
    [Quantity::BRev, Quantity::SRev, Quantity::Rev, Quantity::DRev, Quantity::RevUd, Quantity::DRevUd];

/// Parses `BREV,SREV,MREV(1..4)`. `MREV(a..b)` expands to `MREV(a)` through `MREV(b)`.
pub fn parse_quantities(text: &str) -> Result<Vec<Quantity>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let upper = item.to_ascii_uppercase();
        let range = upper
            .strip_prefix("MREV(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.split_once(".."));
        match range {
            Some((a, b)) => {
                let bad = || CliError::Usage(format!("bad range in {item:?}"));
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                if a == 0 || a > b {
                    return Err(bad());
                }
                out.extend((a..=b).map(Quantity::MRev));
            }
            None => out.push(item.parse().map_err(|e: menurev::Error| CliError::Usage(e.to_string()))?),
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Row {
    quantity: Quantity,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lp_solves: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Menu>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

#[derive(Serialize)]
struct Output {
    k: usize,
    atoms: usize,
    budget: u64,
    strategy: &'static str,
    results: Vec<Row>,
}

fn compute(f: &FiniteDistribution, q: Quantity, cfg: SearchConfig) -> menurev::Result<RevenueReport> {
    match q {
        Quantity::BRev => brev(f),
        Quantity::SRev => srev(f),
        Quantity::Rev => rev(f),
        Quantity::DRev => drev(f, cfg),
        Quantity::MRev(m) => m_rev(f, m, cfg),
        Quantity::RevUd => rev_ud(f),
        Quantity::DRevUd => drev_ud(f, cfg),
    }
}

fn row(q: Quantity, result: menurev::Result<RevenueReport>) -> Result<Row, CliError> {
    match result {
        Ok(r) => Ok(Row {
            quantity: q,
            status: "ok",
            value: Some(exact(&r.value)),
            value_decimal: Some(decimal(&r.value)),
            method: Some(serde_json::to_value(r.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()),
            lp_solves: Some(r.lp_solves),
            witness: Some(r.witness),
            message: None,
        }),
        Err(e) if e.is_budget_refusal() => Ok(Row {
            quantity: q,
            status: "refused",
            value: None,
            value_decimal: None,
            method: None,
            lp_solves: None,
            witness: None,
            message: Some(e.to_string()),
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn run(a: RevenueArgs) -> Result<Status, CliError> {
    let f = read_distribution(&a.input)?;
    let mut quantities = match &a.quantities {
        Some(text) => parse_quantities(text)?,
        None => ALL.to_vec(),
    };
    if let Some(m) = a.m {
        quantities.extend((1..=m).map(Quantity::MRev));
    }
    let strategy = if a.exhaustive { Strategy::Exhaustive } else { Strategy::BranchAndBound };
    let cfg = SearchConfig { strategy, budget: a.budget };

    let timed: Vec<(menurev::Result<RevenueReport>, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = quantities
            .iter()
            .map(|&q| {
                let f = &f;
                s.spawn(move || {
                    let start = Instant::now();
                    let r = compute(f, q, cfg);
                    (r, start.elapsed())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (Err(menurev::Error::Internal("worker panicked".into())), Duration::ZERO)))
            .collect()
    });

    let mut rows = Vec::with_capacity(timed.len());
    let mut times = Vec::with_capacity(timed.len());
    for (&q, (result, time)) in quantities.iter().zip(timed) {
        rows.push(row(q, result)?);
        times.push(time);
    }

    let terminal: Vec<Vec<String>> = rows
        .iter()
        .zip(&times)
        .map(|(r, t)| {
            vec![
                r.quantity.to_string(),
                r.value.clone().unwrap_or_else(|| "refused".into()),
                r.value_decimal.clone().unwrap_or_default(),
                format!("{:.3}s", t.as_secs_f64()),
            ]
        })
        .collect();
    eprint!("{}", table(&["quantity", "value", "decimal", "time"], &terminal));

    let text = match a.output.format {
        Format::Json => json_text(&Output {
            k: f.k(),
            atoms: f.len(),
            budget: a.budget,
            strategy: if a.exhaustive { "exhaustive" } else { "branch-and-bound" },
            results: rows,
        })?,
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.quantity.to_string(),
                        r.status.to_string(),
                        r.value.clone().unwrap_or_default(),
                        r.value_decimal.clone().unwrap_or_default(),
                        r.method.clone().unwrap_or_default(),
                        r.lp_solves.map(|n| n.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(&["quantity", "status", "value", "value_decimal", "method", "lp_solves"], &cells)?
        }
    };
    emit(a.output.out.as_deref(), &text)?;
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_expand() {
        let q = parse_quantities("brev, MREV(2..4),drev_ud").unwrap();
        assert_eq!(
            q,
            vec![Quantity::BRev, Quantity::MRev(2), Quantity::MRev(3), Quantity::MRev(4), Quantity::DRevUd]
        );
        assert!(parse_quantities("").unwrap().is_empty());
        assert!(parse_quantities("MREV(3..1)").is_err());
        assert!(parse_quantities("XREV").is_err());
    }
}
