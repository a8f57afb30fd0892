//! Named construction families and their parameter tuples.
//!
//! A [`GeneratorSpec`] is parsed from `key=value` pairs (CLI flags and grid
//! files share the same keys) and renders back to the same form.

use std::collections::BTreeMap;
use std::fmt;

use crate::deterministic::{
    construct_circulant, construct_d1, construct_d2, construct_d3, construct_d4, construct_d4s,
    construct_multiplicative, optimal_double_loop, D3Spec, D4Spec, HubGraphKind,
};
use crate::error::{Error, Result};
use crate::graph::Network;
use crate::stochastic::StochasticSpec;

pub const FAMILIES: &[&str] = &[
    "ring",
    "s1",
    "s1m",
    "s2",
    "d1",
    "d2",
    "circulant",
    "multiplicative",
    "d3",
    "d4s",
    "d4",
];

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Ring { size: usize },
    Stochastic(StochasticSpec),
    D1 { size: usize, t: usize },
    D2 { size: usize },
    Circulant { size: usize, steps: Vec<usize> },
    Multiplicative { s: usize, k: u32 },
    D3(D3Spec),
    D4s { size: usize, b: usize, k: u32 },
    D4(D4Spec),
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Ring { .. } => "ring",
            GeneratorSpec::Stochastic(StochasticSpec::S1 { .. }) => "s1",
            GeneratorSpec::Stochastic(StochasticSpec::S1m { .. }) => "s1m",
            GeneratorSpec::Stochastic(StochasticSpec::S2 { .. }) => "s2",
            GeneratorSpec::D1 { .. } => "d1",
            GeneratorSpec::D2 { .. } => "d2",
            GeneratorSpec::Circulant { .. } => "circulant",
            GeneratorSpec::Multiplicative { .. } => "multiplicative",
            GeneratorSpec::D3(_) => "d3",
            GeneratorSpec::D4s { .. } => "d4s",
            GeneratorSpec::D4(_) => "d4",
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, GeneratorSpec::Stochastic(_))
    }

    /// Instances needed for an ensemble of `n`: deterministic families are
    /// built once.
    pub fn instance_count(&self, n: usize) -> usize {
        if self.is_stochastic() {
            n
        } else {
            n.min(1)
        }
    }

    pub fn size(&self) -> usize {
        match self {
            GeneratorSpec::Ring { size }
            | GeneratorSpec::D1 { size, .. }
            | GeneratorSpec::D2 { size }
            | GeneratorSpec::Circulant { size, .. }
            | GeneratorSpec::D4s { size, .. } => *size,
            GeneratorSpec::Stochastic(s) => s.size(),
            GeneratorSpec::Multiplicative { s, k } => s.saturating_pow(*k),
            GeneratorSpec::D3(spec) => spec.size,
            GeneratorSpec::D4(spec) => spec.size,
        }
    }

    /// Checks parameters without building the network.
    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorSpec::Ring { size } => {
                if *size < 3 {
                    return Err(Error::InvalidSize(*size));
                }
            }
            GeneratorSpec::Stochastic(spec) => spec.validate()?,
            GeneratorSpec::D1 { size, t } => {
                if *size < 3 {
                    return Err(Error::InvalidSize(*size));
                }
                if *t == 0 {
                    return Err(Error::param("t", "at least one shortcut is required"));
                }
            }
            GeneratorSpec::D2 { size } => {
                if *size < 8 || !size.is_power_of_two() {
                    return Err(Error::param("L", format!("{size} is not a power of two >= 8")));
                }
            }
            GeneratorSpec::Circulant { size, steps } => {
                if *size < 3 {
                    return Err(Error::InvalidSize(*size));
                }
                if let Some(bad) = steps.iter().find(|&&s| s == 0 || s > size / 2) {
                    return Err(Error::param("steps", format!("step {bad} is outside 1..={}", size / 2)));
                }
            }
            GeneratorSpec::Multiplicative { s, k } => {
                if *s < 2 || *k == 0 || s.checked_pow(*k).is_none_or(|l| l < 3) {
                    return Err(Error::param("s", "need s >= 2, k >= 1 and 3 <= s^k"));
                }
            }
            GeneratorSpec::D3(spec) => spec.validate()?,
            GeneratorSpec::D4s { size, b, k } => {
                if *b < 2 || *k == 0 {
                    return Err(Error::param("b", "D4s needs b >= 2 and k >= 1"));
                }
                match b.checked_pow(*k) {
                    Some(top) if size % top == 0 => {}
                    _ => return Err(Error::constraint("L = m b^k", format!("L = {size}, b = {b}, k = {k}"))),
                }
            }
            GeneratorSpec::D4(spec) => spec.validate()?,
        }
        Ok(())
    }

    /// Builds one instance. `seed` is ignored by deterministic families.
    pub fn build(&self, seed: u64) -> Result<Network> {
        match self {
            GeneratorSpec::Ring { size } => Network::new_ring(*size),
            GeneratorSpec::Stochastic(spec) => spec.construct(seed),
            GeneratorSpec::D1 { size, t } => construct_d1(*size, *t),
            GeneratorSpec::D2 { size } => construct_d2(*size),
            GeneratorSpec::Circulant { size, steps } => construct_circulant(*size, steps),
            GeneratorSpec::Multiplicative { s, k } => construct_multiplicative(*s, *k),
            GeneratorSpec::D3(spec) => construct_d3(spec),
            GeneratorSpec::D4s { size, b, k } => construct_d4s(*size, *b, *k),
            GeneratorSpec::D4(spec) => construct_d4(spec),
        }
    }

    /// Parameters as `(key, value)` pairs, family first.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("family", self.family().to_string())];
        match self {
            GeneratorSpec::Ring { size } | GeneratorSpec::D2 { size } => out.push(("L", size.to_string())),
            GeneratorSpec::Stochastic(spec) => match *spec {
                StochasticSpec::S1 { size, p, alpha } => {
                    out.push(("L", size.to_string()));
                    out.push(("p", p.to_string()));
                    out.push(("alpha", alpha.to_string()));
                }
                StochasticSpec::S1m { size, t, alpha } => {
                    out.push(("L", size.to_string()));
                    out.push(("t", t.to_string()));
                    out.push(("alpha", alpha.to_string()));
                }
                StochasticSpec::S2 { size, t, c, alpha } => {
                    out.push(("L", size.to_string()));
                    out.push(("t", t.to_string()));
                    out.push(("c", c.to_string()));
                    out.push(("alpha", alpha.to_string()));
                }
            },
            GeneratorSpec::D1 { size, t } => {
                out.push(("L", size.to_string()));
                out.push(("t", t.to_string()));
            }
            GeneratorSpec::Circulant { size, steps } => {
                out.push(("L", size.to_string()));
                let steps: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
                out.push(("steps", steps.join(",")));
            }
            GeneratorSpec::Multiplicative { s, k } => {
                out.push(("s", s.to_string()));
                out.push(("k", k.to_string()));
            }
            GeneratorSpec::D3(spec) => {
                out.push(("L", spec.size.to_string()));
                out.push(("K", spec.degree.to_string()));
                out.push(("h", spec.hubs.to_string()));
                let hub = match spec.hub_kind {
                    HubGraphKind::Star => "star".to_string(),
                    HubGraphKind::DoubleLoop { a, b } => format!("loop:{a}:{b}"),
                };
                out.push(("hub", hub));
            }
            GeneratorSpec::D4s { size, b, k } => {
                out.push(("L", size.to_string()));
                out.push(("b", b.to_string()));
                out.push(("k", k.to_string()));
            }
            GeneratorSpec::D4(spec) => {
                out.push(("L", spec.size.to_string()));
                out.push(("b", spec.b.to_string()));
                out.push(("k", spec.k.to_string()));
            }
        }
        out
    }

    /// Parameters without the family, as `key=value` joined by spaces.
    pub fn params_string(&self) -> String {
        self.params()
            .into_iter()
            .skip(1)
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a spec from `key=value` pairs. `family` must be present.
    pub fn from_params(params: &BTreeMap<String, String>) -> Result<GeneratorSpec> {
        let mut reader = ParamReader {
            params,
            used: Vec::new(),
        };
        let family = reader.string("family")?;
        let spec = match family.as_str() {
            "ring" => GeneratorSpec::Ring { size: reader.int("L")? },
            "s1" => GeneratorSpec::Stochastic(StochasticSpec::S1 {
                size: reader.int("L")?,
                p: reader.float("p")?,
                alpha: reader.float_or("alpha", 0.0)?,
            }),
            "s1m" => GeneratorSpec::Stochastic(StochasticSpec::S1m {
                size: reader.int("L")?,
                t: reader.int("t")?,
                alpha: reader.float_or("alpha", 0.0)?,
            }),
            "s2" => GeneratorSpec::Stochastic(StochasticSpec::S2 {
                size: reader.int("L")?,
                t: reader.int("t")?,
                c: reader.int("c")?,
                alpha: reader.float_or("alpha", 0.0)?,
            }),
            "d1" => GeneratorSpec::D1 {
                size: reader.int("L")?,
                t: reader.int("t")?,
            },
            "d2" => GeneratorSpec::D2 { size: reader.int("L")? },
            "circulant" => GeneratorSpec::Circulant {
                size: reader.int("L")?,
                steps: reader.list("steps")?,
            },
            "multiplicative" => GeneratorSpec::Multiplicative {
                s: reader.int("s")?,
                k: reader.int("k")?,
            },
            "d3" => {
                let hubs: usize = reader.int("h")?;
                let hub = reader.string_or("hub", "star")?;
                let hub_kind = parse_hub_kind(&hub, hubs)?;
                GeneratorSpec::D3(D3Spec {
                    size: reader.int("L")?,
                    degree: reader.int_or("K", 2)?,
                    hubs,
                    hub_kind,
                    equalize_degrees: false,
                })
            }
            "d4s" => GeneratorSpec::D4s {
                size: reader.int("L")?,
                b: reader.int("b")?,
                k: reader.int("k")?,
            },
            "d4" => GeneratorSpec::D4(D4Spec {
                size: reader.int("L")?,
                b: reader.int("b")?,
                k: reader.int("k")?,
            }),
            other => {
                return Err(Error::param(
                    "family",
                    format!("unknown family `{other}` (expected one of {})", FAMILIES.join(", ")),
                ))
            }
        };
        reader.finish()?;
        spec.validate()?;
        Ok(spec)
    }

    /// Parses whitespace-separated `key=value` tokens.
    pub fn parse_line(line: &str) -> Result<GeneratorSpec> {
        GeneratorSpec::from_params(&parse_pairs(line)?)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.family(), self.params_string())
    }
}

/// Splits `key=value` tokens separated by whitespace.
pub fn parse_pairs(line: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for token in line.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("token `{token}`"), "expected key=value"))?;
        if key.is_empty() || value.is_empty() {
            return Err(Error::parse(format!("token `{token}`"), "empty key or value"));
        }
        if out.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::parse(format!("token `{token}`"), "key given twice"));
        }
    }
    Ok(out)
}

fn parse_hub_kind(text: &str, hubs: usize) -> Result<HubGraphKind> {
    match text {
        "star" => Ok(HubGraphKind::Star),
        "loop" | "double-loop" => optimal_double_loop(hubs),
        other => {
            let parts: Vec<&str> = other.split(':').collect();
            match parts.as_slice() {
                ["loop", a, b] => {
                    let a = a
                        .parse()
                        .map_err(|_| Error::param("hub", format!("bad generator `{a}`")))?;
                    let b = b
                        .parse()
                        .map_err(|_| Error::param("hub", format!("bad generator `{b}`")))?;
                    Ok(HubGraphKind::DoubleLoop { a, b })
                }
                _ => Err(Error::param("hub", format!("`{other}` is not star, loop or loop:a:b"))),
            }
        }
    }
}

struct ParamReader<'a> {
    params: &'a BTreeMap<String, String>,
    used: Vec<&'static str>,
}

impl ParamReader<'_> {
    fn raw(&mut self, key: &'static str) -> Option<&str> {
        self.used.push(key);
        self.params.get(key).map(String::as_str)
    }

    fn string(&mut self, key: &'static str) -> Result<String> {
        self.raw(key)
            .map(str::to_string)
            .ok_or_else(|| Error::param(key, "missing"))
    }

    fn string_or(&mut self, key: &'static str, default: &str) -> Result<String> {
        Ok(self.raw(key).unwrap_or(default).to_string())
    }

    fn int<T: std::str::FromStr>(&mut self, key: &'static str) -> Result<T> {
        let text = self.raw(key).ok_or_else(|| Error::param(key, "missing"))?;
        text.parse()
            .map_err(|_| Error::param(key, format!("`{text}` is not a non-negative integer")))
    }

    fn int_or<T: std::str::FromStr>(&mut self, key: &'static str, default: T) -> Result<T> {
        match self.params.contains_key(key) {
            true => self.int(key),
            false => {
                self.used.push(key);
                Ok(default)
            }
        }
    }

    fn float(&mut self, key: &'static str) -> Result<f64> {
        let text = self.raw(key).ok_or_else(|| Error::param(key, "missing"))?;
        text.parse()
            .map_err(|_| Error::param(key, format!("`{text}` is not a number")))
    }

    fn float_or(&mut self, key: &'static str, default: f64) -> Result<f64> {
        match self.params.contains_key(key) {
            true => self.float(key),
            false => {
                self.used.push(key);
                Ok(default)
            }
        }
    }

    fn list(&mut self, key: &'static str) -> Result<Vec<usize>> {
        let text = self.raw(key).ok_or_else(|| Error::param(key, "missing"))?;
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::param(key, format!("`{s}` is not an integer")))
            })
            .collect()
    }

    fn finish(self) -> Result<()> {
        if let Some(extra) = self.params.keys().find(|k| !self.used.contains(&k.as_str())) {
            return Err(Error::parse(format!("key `{extra}`"), "not a parameter of this family"));
        }
        Ok(())
    }
}
