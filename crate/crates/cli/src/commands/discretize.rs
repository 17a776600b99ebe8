use menurev::analysis::{discretize_two_item, round_grid_k, DiscretizationReport};

use super::{decimal, read_distribution, read_menu};
use crate::args::{DiscretizeArgs, Format};
use crate::error::CliError;
use crate::output::{csv_text, emit, json_text};
use crate::Status;

pub fn run(a: DiscretizeArgs) -> Result<Status, CliError> {
    let menu = read_menu(&a.input)?;
    let test = a.dist.as_deref().map(read_distribution).transpose()?;
    let report = match (a.n, &a.h, &a.delta) {
        (Some(n), _, _) => round_grid_k(&menu, n, test.as_ref())?,
        (None, Some(h), Some(delta)) => discretize_two_item(&menu, h, delta, test.as_ref())?,
        _ => return Err(CliError::Usage("give either --n, or both --H and --delta".into())),
    };
    eprintln!("{} entries -> {} (bound {})", report.input.len(), report.size, decimal(&report.size_bound));
    if let Some(c) = &report.certificate {
        eprintln!(
            "revenue {} -> {}; certificate {}",
            decimal(&c.old_revenue),
            decimal(&c.new_revenue),
            if c.holds { "holds" } else { "FAILS" }
        );
    }
    let text = match a.output.format {
        Format::Json => json_text(&report)?,
        Format::Csv => csv_text(&DiscretizationReport::csv_header(), &report.csv_rows())?,
    };
    emit(a.output.out.as_deref(), &text)?;
    let failed = report.certificate.as_ref().is_some_and(|c| !c.holds);
    Ok(if failed { Status::InvariantFailure } else { Status::Ok })
}
