pub mod construct;
pub mod discretize;
pub mod report;
pub mod revenue;
pub mod tbound;
pub mod verify;

use std::fs;
use std::path::Path;

use menurev::rational::{format, to_decimal};
use menurev::{FiniteDistribution, Menu, Rational};
use serde::de::DeserializeOwned;

use crate::error::CliError;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_distribution(path: &Path) -> Result<FiniteDistribution, CliError> {
    read_json(path)
}

pub fn read_menu(path: &Path) -> Result<Menu, CliError> {
    read_json(path)
}

pub fn decimal(r: &Rational) -> String {
    to_decimal(r, 15)
}

pub fn exact(r: &Rational) -> String {
    format(r)
}

pub fn join(v: &[Rational]) -> String {
    v.iter().map(format).collect::<Vec<_>>().join(" ")
}
