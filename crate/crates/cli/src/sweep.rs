use std::fmt;
use std::io::Write;
use std::str::FromStr;

use cohtele::{Complex64, MemsParams, Resource};

use crate::error::CliError;
use crate::format::{csv_writer, write_csv_header, write_csv_row};
use crate::run::{Record, RunParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Theta,
    Phi,
    /// `|n|` of a nonmax resource, keeping its phase.
    NAbs,
    /// Phase of `n`, keeping `|n|`.
    NArg,
    WernerP,
    /// `p_k` (1-based) of a MEMS resource; the other three weights are rescaled
    /// to keep the sum at 1.
    MemsP(usize),
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "theta" => SweepParam::Theta,
            "phi" => SweepParam::Phi,
            "n_abs" => SweepParam::NAbs,
            "n_arg" => SweepParam::NArg,
            "werner_p" => SweepParam::WernerP,
            "mems_p1" => SweepParam::MemsP(1),
            "mems_p2" => SweepParam::MemsP(2),
            "mems_p3" => SweepParam::MemsP(3),
            "mems_p4" => SweepParam::MemsP(4),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown sweep parameter {other:?} (expected theta, phi, n_abs, n_arg, werner_p, mems_p1..mems_p4)"
                )))
            }
        })
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepParam::Theta => f.write_str("theta"),
            SweepParam::Phi => f.write_str("phi"),
            SweepParam::NAbs => f.write_str("n_abs"),
            SweepParam::NArg => f.write_str("n_arg"),
            SweepParam::WernerP => f.write_str("werner_p"),
            SweepParam::MemsP(k) => write!(f, "mems_p{k}"),
        }
    }
}

/// A one-parameter grid over a base configuration. The grid is inclusive:
/// `count` points from `start` to `stop`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub base: RunParams,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.count < 2 {
            return Err(CliError::Usage(format!(
                "--count must be at least 2, got {}",
                self.count
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::Usage(format!(
                "need start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        let (lo, hi, family) = match self.param {
            SweepParam::Theta => (0.0, std::f64::consts::PI, None),
            SweepParam::Phi => (f64::NEG_INFINITY, f64::INFINITY, None),
            SweepParam::NAbs => (0.0, f64::INFINITY, Some("nonmax")),
            SweepParam::NArg => (f64::NEG_INFINITY, f64::INFINITY, Some("nonmax")),
            SweepParam::WernerP | SweepParam::MemsP(_) => (
                0.0,
                1.0,
                Some(if self.param == SweepParam::WernerP {
                    "werner"
                } else {
                    "mems"
                }),
            ),
        };
        if self.start < lo || self.stop > hi {
            return Err(CliError::Usage(format!(
                "{} range [{}, {}] leaves [{lo}, {hi}]",
                self.param, self.start, self.stop
            )));
        }
        if let Some(family) = family {
            if self.base.resource.family().to_string() != family {
                return Err(CliError::Usage(format!(
                    "sweeping {} needs a {family} resource, got {}",
                    self.param, self.base.resource
                )));
            }
        }
        self.base.input()?;
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }

    /// Base parameters with the swept value substituted.
    pub fn point(&self, value: f64) -> Result<RunParams, CliError> {
        let mut p = self.base.clone();
        match (self.param, p.resource) {
            (SweepParam::Theta, _) => p.theta = value,
            (SweepParam::Phi, _) => p.phi = value,
            (SweepParam::NAbs, Resource::NonMax(n)) => {
                p.resource = Resource::NonMax(Complex64::from_polar(value, n.arg()));
            }
            (SweepParam::NArg, Resource::NonMax(n)) => {
                p.resource = Resource::NonMax(Complex64::from_polar(n.norm(), value));
            }
            (SweepParam::WernerP, Resource::Werner(_)) => p.resource = Resource::Werner(value),
            (SweepParam::MemsP(k), Resource::Mems(m)) => {
                p.resource = Resource::Mems(rescale_mems(m, k, value)?)
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "cannot sweep {} on {}",
                    self.param, p.resource
                )))
            }
        }
        Ok(p)
    }

    pub fn records(&self) -> Result<Vec<Record>, CliError> {
        self.validate()?;
        self.values()
            .into_iter()
            .enumerate()
            .map(|(i, v)| self.point(v)?.run_lenient(i))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let records = self.records()?;
        let mut w = csv_writer(out);
        write_csv_header(&mut w)?;
        for r in &records {
            write_csv_row(&mut w, r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn rescale_mems(m: MemsParams, k: usize, value: f64) -> Result<MemsParams, CliError> {
    let mut w = m.weights();
    let rest: f64 = w
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k - 1)
        .map(|(_, x)| x)
        .sum();
    for (i, x) in w.iter_mut().enumerate() {
        if i == k - 1 {
            *x = value;
        } else if rest > 0.0 {
            *x *= (1.0 - value) / rest;
        } else {
            *x = (1.0 - value) / 3.0;
        }
    }
    Ok(MemsParams::new_relaxed(w[0], w[1], w[2], w[3])?)
}
