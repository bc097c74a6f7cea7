use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use harnack::bounds::{extremal_u1, extremal_u2, gradient_norm_extremal, stronger_harnack, Extremal};
use harnack::harness::{run_all, run_all_with_workers, TrialConfig, VerificationReport};
use harnack::hyperbolic::{halfplane_disc_image, halfplane_disc_re_interval};
use harnack::DiscPoint;
use serde_json::json;

use crate::sweep::{sweep_rows, write_csv};
use crate::{CliError, Result};

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Parses a `NAME=VALUE` tolerance override.
pub fn parse_tolerance(spec: &str) -> Result<(String, f64)> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("tolerance override `{spec}` is not NAME=VALUE")))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("tolerance `{spec}`: {e}")))?;
    Ok((name.trim().to_string(), value))
}

/// Runs the campaign, writes the JSON report and returns it.
pub fn verify(config: &TrialConfig, workers: Option<usize>, out: Option<&Path>) -> Result<VerificationReport> {
    let report = match workers {
        Some(n) => run_all_with_workers(config, n)?,
        None => run_all(config)?,
    };
    for s in &report.suites {
        eprintln!(
            "{:<8} {:<32} cases={:<7} violations={:<6} worst_slack={}",
            if s.passed() { "PASS" } else { "FAIL" },
            s.suite,
            s.trials,
            s.violations,
            s.worst_slack.map_or_else(|| "n/a".to_string(), |w| format!("{w:e}")),
        );
    }
    let mut w = open_output(out)?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    w.flush()?;
    Ok(report)
}

pub fn sweep(c: f64, t_min: f64, t_max: f64, step: f64, out: Option<&Path>) -> Result<usize> {
    let rows = sweep_rows(c, t_min, t_max, step)?;
    write_csv(&rows, open_output(out)?)?;
    Ok(rows.len())
}

pub fn extremal<W: Write>(c: f64, x: f64, mut out: W) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(CliError::Usage(format!("c = {c} must lie in [0, 1]")));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(CliError::Usage(format!("x = {x} must lie in [0, 1)")));
    }
    let z = DiscPoint::real(x)?;
    let bound = stronger_harnack(z, c)?;
    let u1 = extremal_u1(c, z)?;
    let u2 = extremal_u2(c, z)?;
    let rows = [
        ("c", c),
        ("x", x),
        ("u1(x)", u1),
        ("u2(x)", u2),
        ("strong_upper", bound.upper),
        ("strong_lower", bound.lower),
        ("|grad u1(0)|", gradient_norm_extremal(c, Extremal::U1)?),
        ("|grad u2(0)|", gradient_norm_extremal(c, Extremal::U2)?),
        ("2c", 2.0 * c),
        ("gap_upper", (u1 - bound.upper).abs() / bound.upper),
        ("gap_lower", (u2 - bound.lower).abs() / bound.lower),
    ];
    for (name, value) in rows {
        writeln!(out, "{name:<14} {value:.17e}")?;
    }
    Ok(())
}

pub fn disc_image<W: Write>(b: f64, r: f64, as_json: bool, mut out: W) -> Result<()> {
    let disc = halfplane_disc_image(b, r)?;
    let interval = halfplane_disc_re_interval(b, r)?;
    if as_json {
        let v = json!({
            "center": [disc.center.re, disc.center.im],
            "radius": disc.radius,
            "re_interval": [interval.lower, interval.upper],
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        writeln!(out, "center      {:.17e}", disc.center.re)?;
        writeln!(out, "radius      {:.17e}", disc.radius)?;
        writeln!(out, "re_interval [{:.17e}, {:.17e}]", interval.lower, interval.upper)?;
    }
    Ok(())
}
