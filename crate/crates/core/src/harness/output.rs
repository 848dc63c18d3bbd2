use std::fs;
use std::io::Write;

use super::{ExperimentReport, OutputConfig, OutputFormat, TrialRecord};
use crate::error::Result;

/// Column order of the per-trial CSV.
pub const CSV_COLUMNS: [&str; 13] = [
    "trial_index",
    "oracle_seed",
    "estimator_seed",
    "estimate",
    "alg1",
    "alg2",
    "opt_value",
    "ratio",
    "success",
    "words_used",
    "oracle_queries",
    "h_tilde",
    "wall_time_ms",
];

pub fn write_records_csv<W: Write>(records: &[TrialRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if records.is_empty() {
        out.write_record(CSV_COLUMNS)?;
    }
    for r in records {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_output(report: &ExperimentReport, out: &OutputConfig) -> Result<()> {
    match out.format {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(report)?;
            text.push('\n');
            fs::write(&out.path, text)?;
        }
        OutputFormat::Csv => write_records_csv(&report.records, fs::File::create(&out.path)?)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_follows_documented_order() {
        let rec = TrialRecord {
            trial_index: 0,
            oracle_seed: 1,
            estimator_seed: 2,
            estimate: 10,
            alg1: 10,
            alg2: 4,
            opt_value: Some(12),
            ratio: Some(10.0 / 12.0),
            success: Some(true),
            words_used: 1,
            oracle_queries: 5,
            h_tilde: 0,
            wall_time_ms: None,
        };
        let mut buf = Vec::new();
        write_records_csv(&[rec], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        assert!(text.lines().nth(1).unwrap().ends_with(",5,0,"));

        let mut empty = Vec::new();
        write_records_csv(&[], &mut empty).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().trim(), CSV_COLUMNS.join(","));
    }
}
