//! Writes results under `<output_dir>/<experiment>/`. Files are staged in a
//! sibling temporary directory and moved into place only when every write
//! has succeeded.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::config::OutputFormat;
use crate::result::ExperimentResult;

pub const METADATA_FILE: &str = "metadata.json";

pub fn write_result(
    result: &ExperimentResult,
    output_dir: &Path,
    format: OutputFormat,
) -> io::Result<PathBuf> {
    fs::create_dir_all(output_dir)?;
    let name = &result.metadata.experiment;
    let target = output_dir.join(name);
    let staging = output_dir.join(format!(".{name}.partial-{}", std::process::id()));
    if staging.exists() {
        fs::remove_dir_all(&staging)?;
    }
    fs::create_dir(&staging)?;
    if let Err(e) = write_files(result, &staging, format) {
        let _ = fs::remove_dir_all(&staging);
        return Err(e);
    }
    if target.exists() {
        fs::remove_dir_all(&target)?;
    }
    fs::rename(&staging, &target)?;
    Ok(target)
}

fn write_files(result: &ExperimentResult, dir: &Path, format: OutputFormat) -> io::Result<()> {
    for table in &result.tables {
        match format {
            OutputFormat::Csv => {
                fs::write(dir.join(format!("{}.csv", table.name)), table.to_csv())?
            }
            OutputFormat::Json => {
                let mut text = serde_json::to_string_pretty(&table.to_json())
                    .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
                text.push('\n');
                fs::write(dir.join(format!("{}.json", table.name)), text)?
            }
        }
    }
    fs::write(dir.join(METADATA_FILE), result.metadata_json())
}
