//! The versioned report envelope every subcommand emits.

use std::time::Instant;

use anyhow::Result;
use serde::Serialize;

pub const SCHEMA: &str = "apexgon/1";

#[derive(Serialize)]
pub struct RunReport<C: Serialize, R: Serialize> {
    pub schema: &'static str,
    pub command: &'static str,
    pub config_echo: C,
    pub seed: u64,
    pub versions: String,
    pub wall_time_ms: u128,
    pub results: R,
}

pub fn make<C: Serialize, R: Serialize>(
    command: &'static str,
    config_echo: C,
    seed: u64,
    started: Instant,
    results: R,
) -> RunReport<C, R> {
    RunReport {
        schema: SCHEMA,
        command,
        config_echo,
        seed,
        versions: format!("apexgon {}", env!("CARGO_PKG_VERSION")),
        wall_time_ms: started.elapsed().as_millis(),
        results,
    }
}

pub fn emit<C: Serialize, R: Serialize>(
    report: &RunReport<C, R>,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
