//! Bound envelopes along the positive real axis, as CSV.

use std::io::{Read, Write};

use harnack::bounds::{classical_harnack, extremal_u1, extremal_u2, stronger_harnack};
use harnack::DiscPoint;

use crate::{CliError, Result};

pub const HEADER: [&str; 7] = ["t", "classical_lo", "classical_hi", "strong_lo", "strong_hi", "u1", "u2"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub classical_lo: f64,
    pub classical_hi: f64,
    pub strong_lo: f64,
    pub strong_hi: f64,
    pub u1: f64,
    pub u2: f64,
}

impl SweepRow {
    pub fn at(c: f64, t: f64) -> Result<Self> {
        let z = DiscPoint::real(t)?;
        let classical = classical_harnack(z);
        let strong = stronger_harnack(z, c)?;
        Ok(SweepRow {
            t,
            classical_lo: classical.lower,
            classical_hi: classical.upper,
            strong_lo: strong.lower,
            strong_hi: strong.upper,
            u1: extremal_u1(c, z)?,
            u2: extremal_u2(c, z)?,
        })
    }

    fn fields(&self) -> [f64; 7] {
        [self.t, self.classical_lo, self.classical_hi, self.strong_lo, self.strong_hi, self.u1, self.u2]
    }
}

/// Renders with 17 significant digits, enough to round-trip any `f64`.
pub fn render(v: f64) -> String {
    format!("{v:.16e}")
}

/// Rows at `t_min, t_min + step, …` up to and including `t_max`.
pub fn sweep_rows(c: f64, t_min: f64, t_max: f64, step: f64) -> Result<Vec<SweepRow>> {
    if !(0.0..=1.0).contains(&c) {
        return Err(CliError::Usage(format!("c = {c} must lie in [0, 1]")));
    }
    if !(t_min >= 0.0 && t_min < t_max && t_max < 1.0) {
        return Err(CliError::Usage(format!(
            "need 0 <= t-min < t-max < 1, got t-min = {t_min}, t-max = {t_max}"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Usage(format!("step = {step} must be positive")));
    }
    let n = ((t_max - t_min) / step + 1e-9).floor() as usize + 1;
    (0..n)
        .map(|k| SweepRow::at(c, (t_min + k as f64 * step).min(t_max)))
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields().map(render))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(HEADER) {
        return Err(CliError::Usage("unexpected sweep header".into()));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let mut v = [0.0; 7];
        for (slot, field) in v.iter_mut().zip(record.iter()) {
            *slot = field
                .parse()
                .map_err(|e| CliError::Usage(format!("bad number `{field}`: {e}")))?;
        }
        rows.push(SweepRow {
            t: v[0],
            classical_lo: v[1],
            classical_hi: v[2],
            strong_lo: v[3],
            strong_hi: v[4],
            u1: v[5],
            u2: v[6],
        });
    }
    Ok(rows)
}
