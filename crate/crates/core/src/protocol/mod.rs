//! One-cbit teleportation of l1 coherence.
//!
//! Alice holds the unknown input (system 1) and half of a shared two-qubit
//! resource (system 2); Bob holds system 3. Alice measures a two-outcome POVM
//! on systems 1,2 and sends the outcome bit. Bob's conditional state is computed
//! two ways: directly as `Tr_12[(√E⊗𝕀)(ρ⊗τ)(√E⊗𝕀)]`, and as the composition
//! `T ∘ Φ*_E` of the maps whose Choi matrices are the resource `τ` and the POVM
//! element `E`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{self, DensityMatrix, MemsParams};

pub mod decomposition;
pub mod formulas;
pub mod povm;
pub mod teleport;
pub mod unitary;

pub use decomposition::bell_decomposition_check;
pub use formulas::{coherence_formula, probability_formula, ClosedForm, FormulaSource};
pub use povm::{povm_catalog, CatalogId, PovmElement};
pub use teleport::{teleport, teleport_direct, teleport_via_theorem, Route, TeleportOutcome};
pub use unitary::{bob_unitary_coherence, BobUnitary};

/// Which pair of projectors Alice sums into her two POVM elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
    III,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::I, Case::II, Case::III];
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" | "1" => Ok(Case::I),
            "II" | "ii" | "2" => Ok(Case::II),
            "III" | "iii" | "3" => Ok(Case::III),
            other => Err(Error::InvalidParameter(format!(
                "unknown case {other:?} (expected I, II or III)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Zero,
    One,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Zero, Outcome::One];

    pub fn index(self) -> usize {
        match self {
            Outcome::Zero => 0,
            Outcome::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Outcome::Zero),
            1 => Ok(Outcome::One),
            _ => Err(Error::InvalidParameter(format!(
                "outcome {i} is not 0 or 1"
            ))),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResourceFamily {
    MaxEnt,
    NonMax,
    Mems,
    Werner,
}

impl fmt::Display for ResourceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResourceFamily::MaxEnt => "maxent",
            ResourceFamily::NonMax => "nonmax",
            ResourceFamily::Mems => "mems",
            ResourceFamily::Werner => "werner",
        })
    }
}

/// A shared resource together with its parameters.
///
/// Textual form: `maxent`, `nonmax:<re>+<im>i`, `mems:<p1>,<p2>,<p3>,<p4>`,
/// `werner:<p>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resource {
    /// `|Φ⁺⟩`.
    MaxEnt,
    /// `(|00⟩ + n|11⟩)/√(1+|n|²)`.
    NonMax(Complex64),
    Mems(MemsParams),
    /// `p|Ψ⁻⟩⟨Ψ⁻| + (1−p)𝕀/4`.
    Werner(f64),
}

impl Resource {
    pub fn family(&self) -> ResourceFamily {
        match self {
            Resource::MaxEnt => ResourceFamily::MaxEnt,
            Resource::NonMax(_) => ResourceFamily::NonMax,
            Resource::Mems(_) => ResourceFamily::Mems,
            Resource::Werner(_) => ResourceFamily::Werner,
        }
    }

    pub fn n(&self) -> Option<Complex64> {
        match self {
            Resource::NonMax(n) => Some(*n),
            _ => None,
        }
    }

    /// The shared two-qubit state `τ` on systems 2,3.
    pub fn state(&self) -> Result<DensityMatrix> {
        match self {
            Resource::MaxEnt => Ok(states::bell_state(states::BellLabel::PhiPlus)),
            Resource::NonMax(n) => Ok(states::nonmax_state(*n)),
            Resource::Mems(p) => Ok(states::mems_state(p)),
            Resource::Werner(p) => states::werner_state(*p),
        }
    }

    /// The matching two-element POVM for `case`.
    pub fn povm(&self, case: Case) -> Result<[PovmElement; 2]> {
        povm_catalog(case, self.family(), self.n())
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::MaxEnt => f.write_str("maxent"),
            Resource::NonMax(n) => write!(f, "nonmax:{}", format_complex(*n)),
            Resource::Mems(p) => {
                let [a, b, c, d] = p.weights();
                write!(f, "mems:{a},{b},{c},{d}")
            }
            Resource::Werner(p) => write!(f, "werner:{p}"),
        }
    }
}

impl FromStr for Resource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, arg) = match s.split_once(':') {
            Some((f, a)) => (f, Some(a)),
            None => (s, None),
        };
        let need = |what: &str| {
            arg.filter(|a| !a.is_empty()).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "resource {family:?} needs {what}, e.g. {family}:..."
                ))
            })
        };
        match family {
            "maxent" => match arg {
                None => Ok(Resource::MaxEnt),
                Some(_) => Err(Error::InvalidParameter("maxent takes no parameter".into())),
            },
            "nonmax" => Ok(Resource::NonMax(parse_complex(need("a complex n")?)?)),
            "werner" => {
                let p = parse_f64(need("a weight p")?)?;
                states::werner_state(p)?;
                Ok(Resource::Werner(p))
            }
            "mems" => {
                let parts = need("four weights")?
                    .split(',')
                    .map(parse_f64)
                    .collect::<Result<Vec<_>>>()?;
                let [p1, p2, p3, p4] = parts[..] else {
                    return Err(Error::InvalidParameter(format!("mems needs 4 weights, got {}", parts.len())));
                };
                Ok(Resource::Mems(MemsParams::new(p1, p2, p3, p4)?))
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown resource {other:?} (expected maxent, nonmax:N, mems:P1,P2,P3,P4 or werner:P)"
            ))),
        }
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "not a finite number: {s:?}"
        )));
    }
    Ok(v)
}

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i` (exponents allowed in each part).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
    let bad = || {
        Error::InvalidParameter(format!(
            "cannot parse complex number {s:?} (expected re+imi)"
        ))
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_f64(&t).map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |part: &str| -> Result<f64> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => parse_f64(p).map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(
            parse_f64(&body[..k]).map_err(|_| bad())?,
            imag(&body[k..])?,
        )),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
