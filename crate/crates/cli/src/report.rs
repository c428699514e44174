use std::io::Write;

use serde_json::Value;

use crate::bench::BenchReport;
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.replace(['\t', '\n'], " "),
        other => other.to_string(),
    }
}

/// Writes `report` as one JSON object or as a TSV header and one row.
pub fn emit_report(report: &BenchReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, report)?;
            writeln!(out).map_err(CliError::Output)
        }
        Format::Tsv => {
            let Value::Object(fields) = serde_json::to_value(report)? else {
                unreachable!("reports serialize to objects");
            };
            let header: Vec<&str> = fields.keys().map(String::as_str).collect();
            let row: Vec<String> = fields.values().map(cell).collect();
            writeln!(out, "{}\n{}", header.join("\t"), row.join("\t")).map_err(CliError::Output)
        }
    }
}
