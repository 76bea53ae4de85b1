//! Number formatting and the CSV/JSON record layouts.

use std::io::Write;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::CliError;
use crate::run::Record;

pub const CSV_HEADER: [&str; 12] = [
    "index",
    "theta",
    "phi",
    "n_re",
    "n_im",
    "resource",
    "case",
    "outcome",
    "probability",
    "coherence_in",
    "coherence_out",
    "ratio",
];

/// `x` with 17 significant digits, shortest form, in the style of C's `%.17g`.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    trim_fraction(&format!("{x:.*}", (16 - exp) as usize)).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub fn write_csv_header<W: Write>(w: &mut csv::Writer<W>) -> Result<(), CliError> {
    w.write_record(CSV_HEADER)?;
    Ok(())
}

pub fn write_csv_row<W: Write>(w: &mut csv::Writer<W>, r: &Record) -> Result<(), CliError> {
    w.write_record([
        r.index.to_string(),
        fmt17(r.theta),
        fmt17(r.phi),
        opt(r.n.map(|n| n.re)),
        opt(r.n.map(|n| n.im)),
        r.resource.to_string(),
        r.case.to_string(),
        r.outcome.to_string(),
        fmt17(r.probability),
        fmt17(r.coherence_in),
        opt(r.coherence_out),
        opt(r.ratio),
    ])?;
    Ok(())
}

fn raw(x: f64) -> Box<RawValue> {
    let s = if x.is_finite() {
        fmt17(x)
    } else {
        "null".into()
    };
    RawValue::from_string(s).expect("numeric literal is valid JSON")
}

#[derive(Serialize)]
struct JsonRecord {
    index: usize,
    theta: Box<RawValue>,
    phi: Box<RawValue>,
    n_re: Option<Box<RawValue>>,
    n_im: Option<Box<RawValue>>,
    resource: String,
    case: String,
    outcome: usize,
    probability: Box<RawValue>,
    coherence_in: Box<RawValue>,
    coherence_out: Option<Box<RawValue>>,
    ratio: Option<Box<RawValue>>,
    route: String,
    bob_state: Vec<[Box<RawValue>; 2]>,
}

/// Flat JSON object with the CSV keys, `route`, and `bob_state` as row-major `[re, im]` pairs.
pub fn record_json(r: &Record) -> Result<String, CliError> {
    let bob_state = r
        .bob_state
        .as_ref()
        .map(|m| {
            m.as_slice()
                .iter()
                .map(|z| [raw(z.re), raw(z.im)])
                .collect()
        })
        .unwrap_or_default();
    let j = JsonRecord {
        index: r.index,
        theta: raw(r.theta),
        phi: raw(r.phi),
        n_re: r.n.map(|n| raw(n.re)),
        n_im: r.n.map(|n| raw(n.im)),
        resource: r.resource.to_string(),
        case: r.case.to_string(),
        outcome: r.outcome.index(),
        probability: raw(r.probability),
        coherence_in: raw(r.coherence_in),
        coherence_out: r.coherence_out.map(raw),
        ratio: r.ratio.map(raw),
        route: r.route.to_string(),
        bob_state,
    };
    Ok(serde_json::to_string_pretty(&j)?)
}

struct Numbers<'a>(&'a [(&'a str, f64)]);

impl Serialize for Numbers<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (*k, raw(*v))))
    }
}

/// JSON object of named numbers, 17 significant digits each, in the given order.
pub fn numbers_json(fields: &[(&str, f64)]) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(&Numbers(fields))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt17_matches_printf_g() {
        let cases = [
            (0.5, "0.5"),
            (1.0, "1"),
            (-2.0, "-2"),
            (0.1, "0.10000000000000001"),
            (1.0 / 3.0, "0.33333333333333331"),
            (8.0 / 17.0, "0.47058823529411764"),
            (0.68, "0.68000000000000005"),
            (1e-5, "1.0000000000000001e-05"),
            (1.5e-7, "1.4999999999999999e-07"),
            (123456.0, "123456"),
            (1e17, "1e+17"),
            (0.0001, "0.0001"),
            (-0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt17(x), want, "{x:e}");
        }
    }

    #[test]
    fn fmt17_round_trips() {
        for x in [
            std::f64::consts::PI,
            1e-300,
            6.02214076e23,
            -7.25e-12,
            0.1 + 0.2,
        ] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn numbers_json_keeps_digits() {
        let s = numbers_json(&[("coherence", 0.1)]).unwrap();
        assert!(s.contains("0.10000000000000001"), "{s}");
    }
}
