use menurev::invariants::{run_suite, SuiteConfig};

use crate::args::{Format, VerifyArgs};
use crate::error::CliError;
use crate::output::{csv_text, emit, json_text};
use crate::Status;

pub fn run(a: VerifyArgs) -> Result<Status, CliError> {
    if a.construction != "shell" {
        return Err(CliError::Usage(format!("unsupported construction {:?}; only shell is available", a.construction)));
    }
    let cfg = SuiteConfig { seed: a.seed, trials: a.trials, budget: a.budget, prefix: a.prefix };
    let report = run_suite(&a.suite, &cfg).map_err(|e| match e {
        menurev::Error::InvalidInput(m) => CliError::Usage(m),
        other => other.into(),
    })?;

    for c in &report.checks {
        let verdict = if c.failed == 0 { "PASS" } else { "FAIL" };
        eprintln!("{verdict} {} (passed {}, failed {}, refused {})", c.name, c.passed, c.failed, c.refused);
        if let Some(ce) = &c.counterexample {
            eprintln!("  counterexample: {ce}");
        }
    }
    for (k, v) in &report.notes {
        eprintln!("  {k} = {v}");
    }

    let text = match a.output.format {
        Format::Json => json_text(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.passed.to_string(),
                        c.failed.to_string(),
                        c.refused.to_string(),
                        c.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(&["check", "passed", "failed", "refused", "counterexample"], &rows)?
        }
    };
    emit(a.output.out.as_deref(), &text)?;
    Ok(if report.all_passed() { Status::Ok } else { Status::InvariantFailure })
}
