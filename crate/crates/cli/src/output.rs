use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::CliError;

/// Shortest-free rendering with 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// CSV writer over a file or stdout; every row is formatted with [`num`].
pub struct Table {
    writer: csv::Writer<Box<dyn Write>>,
}

impl Table {
    pub fn create(path: Option<&Path>, header: &[&str]) -> Result<Self, CliError> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).map_err(|e| io_error(p, e))?)),
            None => Box::new(io::stdout().lock()),
        };
        let mut writer = csv::Writer::from_writer(sink);
        writer.write_record(header).map_err(csv_error)?;
        Ok(Self { writer })
    }

    pub fn row(&mut self, values: &[f64]) -> Result<(), CliError> {
        self.writer
            .write_record(values.iter().map(|&v| num(v)))
            .map_err(csv_error)
    }

    /// Row whose fields are already rendered (empty cells, integers).
    pub fn raw(&mut self, fields: &[String]) -> Result<(), CliError> {
        self.writer.write_record(fields).map_err(csv_error)
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.writer.flush().map_err(|e| CliError::Io(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = to_json(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_error(path, e))
}

/// Prints JSON to stdout or writes it to `path`.
pub fn emit_json<T: Serialize + ?Sized>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    match path {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", to_json(value)?);
            Ok(())
        }
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

/// Wall-clock facts about a run, kept out of the data files so those stay
/// byte-identical across repeated runs.
#[derive(Serialize)]
pub struct RunMeta {
    tool: &'static str,
    version: &'static str,
    args: Vec<String>,
    threads: usize,
    started_unix_seconds: u64,
    elapsed_seconds: f64,
    outputs: Vec<String>,
}

pub struct RunClock {
    started: SystemTime,
    timer: Instant,
}

impl RunClock {
    pub fn start() -> Self {
        Self {
            started: SystemTime::now(),
            timer: Instant::now(),
        }
    }

    pub fn write_sidecar(&self, path: &Path, outputs: &[&Path]) -> Result<(), CliError> {
        let meta = RunMeta {
            tool: "nse",
            version: env!("CARGO_PKG_VERSION"),
            args: std::env::args().collect(),
            threads: rayon::current_num_threads(),
            started_unix_seconds: self.started.duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            elapsed_seconds: self.timer.elapsed().as_secs_f64(),
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        };
        write_json(path, &meta)
    }
}

/// `<file>.meta.json` next to a single output file.
pub fn sidecar_for(path: &Path) -> std::path::PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
        assert_eq!(num(f64::NEG_INFINITY), "-inf");
        let x = std::f64::consts::PI;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_for(Path::new("out/g.csv")), Path::new("out/g.csv.meta.json"));
    }
}
