//! Scenario execution and result files.
//!
//! CSV columns, in order: `tau,t,x,y,z,u0,u1,u2,u3,norm_err,u0_drift`, every
//! real printed with 17 significant digits so that parsing a row recovers the
//! exact doubles. `norm_err` is `|u·u − 1|` of the row's own `u` columns and
//! `u0_drift` is `u0 − u0(τ=0)`.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use lorentzgen_core::dynamics::InvariantMonitor;
use lorentzgen_core::{simulate_each, InvariantReport, ParticleState, Sample};
use tempfile::NamedTempFile;

use crate::config::ScenarioConfig;
use crate::error::CliError;

pub const CSV_HEADER: &str = "tau,t,x,y,z,u0,u1,u2,u3,norm_err,u0_drift";

/// Shortest form with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(sample: &Sample, initial_energy: f64) -> String {
    let s = &sample.state;
    let mut row = format_real(s.tau);
    for x in s.position.0.iter().chain(s.u.0.iter()) {
        row.push(',');
        row.push_str(&format_real(*x));
    }
    row.push(',');
    row.push_str(&format_real(sample.norm_err));
    row.push(',');
    row.push_str(&format_real(sample.energy - initial_energy));
    row
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub csv_path: PathBuf,
    pub report_path: PathBuf,
    pub rows: usize,
    pub final_state: ParticleState,
    pub report: InvariantReport,
    pub report_text: String,
}

/// `trajectory.csv` → `trajectory.report.txt`.
pub fn report_path_for(csv: &Path) -> PathBuf {
    csv.with_extension("report.txt")
}

/// Writes `path` by filling a temporary sibling and renaming it into place.
fn write_atomically<T>(
    path: &Path,
    fill: impl FnOnce(&mut BufWriter<&mut fs::File>) -> Result<T, CliError>,
) -> Result<T, CliError> {
    let werr = |source: io::Error| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(werr)?;
    let mut tmp = NamedTempFile::new_in(&dir).map_err(werr)?;
    let value = {
        let mut w = BufWriter::new(tmp.as_file_mut());
        let value = fill(&mut w)?;
        w.flush().map_err(werr)?;
        value
    };
    tmp.persist(path).map_err(|e| werr(e.error))?;
    Ok(value)
}

fn describe_field(cfg: &ScenarioConfig) -> String {
    let mut parts = Vec::new();
    if let Some(u) = cfg.field.uniform {
        let t = |v: lorentzgen_core::ThreeVector| format!("({} {} {})", v[0], v[1], v[2]);
        parts.push(format!("uniform E={} B={}", t(u.e), t(u.b)));
    }
    if let Some(c) = cfg.field.coulomb {
        parts.push(format!("coulomb q={} r_min={}", c.q, c.r_min));
    }
    parts.join(" + ")
}

pub fn format_report(
    cfg: &ScenarioConfig,
    rows: usize,
    last: &ParticleState,
    r: &InvariantReport,
) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<16}{v}");
    };
    line("scenario", cfg.name.clone());
    line("field", describe_field(cfg));
    line("stepper", cfg.stepper.to_string());
    line("k", format_real(cfg.k));
    line("dtau", format_real(cfg.dtau));
    line("steps", cfg.steps.to_string());
    line("rows written", rows.to_string());
    line("final tau", format_real(last.tau));
    line(
        "final u",
        last.u
            .0
            .iter()
            .map(|x| format_real(*x))
            .collect::<Vec<_>>()
            .join(" "),
    );
    line("max |u.u-1|", format!("{:.6e}", r.max_norm_err));
    line("max |du.u|", format!("{:.6e}", r.max_orthogonality));
    line("max |u0-u0(0)|", format!("{:.6e}", r.max_energy_drift));
    out
}

/// Runs the scenario, writing the trajectory CSV (every `stride`-th sample
/// plus the final one) and a report file next to it.
pub fn run_scenario(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<RunOutcome, CliError> {
    let csv_path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| cfg.output_path());
    let report_path = report_path_for(&csv_path);
    let initial = cfg.initial_state();
    let fp = cfg.field.provider();

    let (rows, last, report) = write_atomically(&csv_path, |w| {
        let werr = |source: io::Error| CliError::Write {
            path: csv_path.clone(),
            source,
        };
        writeln!(w, "{CSV_HEADER}").map_err(werr)?;
        let mut monitor = InvariantMonitor::new(cfg.dtau);
        let mut initial_energy = None;
        let mut io_error = None;
        let mut rows = 0usize;
        let mut last = initial;
        simulate_each(
            &initial,
            &fp,
            cfg.charge_ratio(),
            cfg.dtau,
            cfg.steps,
            cfg.stepper,
            |n, s| {
                monitor.observe(s);
                last = s.state;
                let e0 = *initial_energy.get_or_insert(s.energy);
                if io_error.is_none() && (n % cfg.stride == 0 || n == cfg.steps) {
                    match writeln!(w, "{}", csv_row(s, e0)) {
                        Ok(()) => rows += 1,
                        Err(e) => io_error = Some(e),
                    }
                }
            },
        )?;
        if let Some(e) = io_error {
            return Err(werr(e));
        }
        Ok((rows, last, monitor.report()))
    })?;

    let report_text = format_report(cfg, rows, &last, &report);
    write_atomically(&report_path, |w| {
        w.write_all(report_text.as_bytes())
            .map_err(|source| CliError::Write {
                path: report_path.clone(),
                source,
            })
    })?;

    Ok(RunOutcome {
        csv_path,
        report_path,
        rows,
        final_state: last,
        report,
        report_text,
    })
}
