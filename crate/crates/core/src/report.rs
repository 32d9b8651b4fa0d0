//! Grids, per-point records and the JSON/CSV encodings shared by the CLI.
//!
//! JSON floats are written with 17 significant digits (`{:.16e}`), so every
//! value re-parses to the same `f64` and identical runs give identical bytes.

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::pipeline::PointAnalysis;

/// Version tag written at the top of every JSON document.
pub const SCHEMA: &str = "centroframe/1";

/// `lo:hi:count`, inclusive at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Config(format!("grid bounds must be finite, got {lo}:{hi}")));
        }
        if count == 0 {
            return Err(Error::Config("grid count must be at least 1".into()));
        }
        Ok(Grid { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| if k + 1 == self.count { self.hi } else { self.lo + step * k as f64 })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Config(format!("grid `{s}` is not lo:hi:count"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo = parse_bound(parts[0]).ok_or_else(bad)?;
        let hi = parse_bound(parts[1]).ok_or_else(bad)?;
        let count = parts[2].trim().parse().map_err(|_| bad())?;
        Grid::new(lo, hi, count)
    }
}

/// Numbers, optionally written as multiples of `pi` (`pi`, `-pi/2`, `0.5pi`).
fn parse_bound(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Some(x);
    }
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, s),
    };
    let (num, den) = match rest.split_once('/') {
        Some((a, b)) => (a, b.parse::<f64>().ok()?),
        None => (rest, 1.0),
    };
    let coef = match num.strip_suffix("pi")?.trim_end_matches('*') {
        "" => 1.0,
        c => c.parse::<f64>().ok()?,
    };
    Some(sign * coef * std::f64::consts::PI / den)
}

/// Two grids; points are visited u-major (all v for the first u, then the next u).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub u: Grid,
    pub v: Grid,
}

impl GridSpec {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let vs = self.v.points();
        self.u
            .points()
            .into_iter()
            .flat_map(|u| vs.iter().map(move |&v| (u, v)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.u.count * self.v.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        ErrorRecord {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

/// One grid point of an `analyze` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub u: f64,
    pub v: f64,
    pub error: Option<ErrorRecord>,
    #[serde(rename = "type")]
    pub surface_type: Option<String>,
    pub epsilon: Option<i8>,
    pub h: BTreeMap<String, f64>,
    /// α = alpha[0]ω¹₀ + alpha[1]ω²₀.
    pub alpha: Option<[f64; 2]>,
    pub k_gauss: Option<f64>,
    pub k_connection: Option<f64>,
    /// (E, F, G) of E du² + 2F du dv + G dv².
    pub metric: Option<[f64; 3]>,
    pub diagnostics: BTreeMap<String, f64>,
}

impl PointRecord {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn failed(u: f64, v: f64, e: &Error) -> Self {
        PointRecord {
            u,
            v,
            error: Some(e.into()),
            surface_type: None,
            epsilon: None,
            h: BTreeMap::new(),
            alpha: None,
            k_gauss: None,
            k_connection: None,
            metric: None,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn from_analysis(p: &PointAnalysis) -> Self {
        let d = &p.diagnostics;
        let mut diagnostics = BTreeMap::new();
        let mut put = |k: &str, v: f64| {
            diagnostics.insert(k.to_string(), v);
        };
        put("first_vanishing", d.first_vanishing);
        put("cartan_symmetry", d.cartan_symmetry.iter().fold(0.0, |m, x| m.max(x.abs())));
        if let Some(s) = d.structure_equation {
            put("structure_equation", s);
        }
        put("level2_relations", d.level2_relations);
        put("level3_relations", d.level3_relations);
        put("normal_h0", d.normal_h0);
        put(
            "level3_symmetry",
            p.invariants.symmetry_residuals.iter().fold(0.0, |m, x| m.max(x.abs())),
        );
        if let Some(c) = d.connection_identities {
            put("connection_identities", c[0].abs().max(c[1].abs()));
        }
        PointRecord {
            u: p.u,
            v: p.v,
            error: None,
            surface_type: Some(p.surface_type.kind.name().to_string()),
            epsilon: p.epsilon,
            h: p.invariants.h.0.iter().map(|(n, x)| (n.to_string(), *x)).collect(),
            alpha: Some(p.invariants.alpha),
            k_gauss: Some(p.invariants.k),
            k_connection: p.k_connection,
            metric: Some(p.metric.first),
            diagnostics,
        }
    }
}

/// serde_json formatter: pretty layout, floats as `{:.16e}`.
pub struct ExactFloatFormatter(PrettyFormatter<'static>);

impl Default for ExactFloatFormatter {
    fn default() -> Self {
        ExactFloatFormatter(PrettyFormatter::with_indent(b"  "))
    }
}

impl Formatter for ExactFloatFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        write!(w, "{:.16e}", value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes with [`ExactFloatFormatter`]; ends with a newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloatFormatter::default());
    value.serialize(&mut ser).expect("report types serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Wraps a payload as `{"schema": ..., "command": ..., ...payload}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Envelope<T> {
    pub schema: String,
    pub command: String,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Envelope<T> {
    pub fn new(command: &str, body: T) -> Self {
        Envelope {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            body,
        }
    }
}

/// Formats a float for CSV cells.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// h-value columns of the CSV layout, in order.
pub const H_COLUMNS: [&str; 28] = [
    "h0_31", "h0_32", "h0_41", "h0_42", "h1_11", "h1_12", "h1_21", "h1_22", "h2_11", "h2_12", "h2_21", "h2_22",
    "h3_31", "h3_32", "h3_41", "h3_42", "h4_31", "h4_32", "h4_41", "h4_42", "h1_31", "h1_32", "h1_41", "h1_42",
    "h2_31", "h2_32", "h2_41", "h2_42",
];
pub const DIAGNOSTIC_COLUMNS: [&str; 8] = [
    "first_vanishing",
    "cartan_symmetry",
    "structure_equation",
    "level2_relations",
    "level3_relations",
    "normal_h0",
    "level3_symmetry",
    "connection_identities",
];
const LEAD: [&str; 14] = [
    "u",
    "v",
    "error_kind",
    "error_message",
    "type",
    "epsilon",
    "alpha1",
    "alpha2",
    "k_gauss",
    "k_connection",
    "E",
    "F",
    "G",
    "ok",
];

/// Header of the analyze CSV.
pub fn csv_header() -> Vec<&'static str> {
    LEAD.iter()
        .chain(H_COLUMNS.iter())
        .chain(DIAGNOSTIC_COLUMNS.iter())
        .copied()
        .collect()
}

/// Writes records as CSV; absent values are empty cells.
pub fn write_records_csv<W: Write>(w: W, records: &[PointRecord]) -> Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    let cfg = |e: csv::Error| Error::Config(format!("csv: {e}"));
    out.write_record(csv_header()).map_err(cfg)?;
    for r in records {
        let mut row = vec![
            fmt_f64(r.u),
            fmt_f64(r.v),
            r.error.as_ref().map(|e| e.kind.clone()).unwrap_or_default(),
            r.error.as_ref().map(|e| e.message.clone()).unwrap_or_default(),
            r.surface_type.clone().unwrap_or_default(),
            r.epsilon.map(|e| e.to_string()).unwrap_or_default(),
            opt(r.alpha.map(|a| a[0])),
            opt(r.alpha.map(|a| a[1])),
            opt(r.k_gauss),
            opt(r.k_connection),
            opt(r.metric.map(|m| m[0])),
            opt(r.metric.map(|m| m[1])),
            opt(r.metric.map(|m| m[2])),
            (r.ok() as u8).to_string(),
        ];
        for n in H_COLUMNS {
            row.push(opt(r.h.get(n).copied()));
        }
        for n in DIAGNOSTIC_COLUMNS {
            row.push(opt(r.diagnostics.get(n).copied()));
        }
        out.write_record(&row).map_err(cfg)?;
    }
    out.flush().map_err(|e| Error::Config(e.to_string()))?;
    Ok(())
}

/// Reads records written by [`write_records_csv`].
pub fn read_records_csv<R: Read>(r: R) -> Result<Vec<PointRecord>> {
    let mut rd = csv::Reader::from_reader(r);
    let cfg = |e: csv::Error| Error::Config(format!("csv: {e}"));
    let header: Vec<String> = rd.headers().map_err(cfg)?.iter().map(str::to_string).collect();
    if header != csv_header() {
        return Err(Error::Config("csv header does not match the analyze layout".into()));
    }
    let num = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|_| Error::Config(format!("csv: bad number `{s}`")))
        }
    };
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(cfg)?;
        let f = |k: usize| row.get(k).unwrap_or("");
        let pair = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| [a, b]);
        let error = match f(2) {
            "" => None,
            k => Some(ErrorRecord {
                kind: k.to_string(),
                message: f(3).to_string(),
            }),
        };
        let metric = match (num(f(10))?, num(f(11))?, num(f(12))?) {
            (Some(e), Some(g), Some(h)) => Some([e, g, h]),
            _ => None,
        };
        let mut h = BTreeMap::new();
        let mut diagnostics = BTreeMap::new();
        for (k, name) in header.iter().enumerate().skip(LEAD.len()) {
            if let Some(x) = num(f(k))? {
                if DIAGNOSTIC_COLUMNS.contains(&name.as_str()) {
                    diagnostics.insert(name.clone(), x);
                } else {
                    h.insert(name.clone(), x);
                }
            }
        }
        out.push(PointRecord {
            u: num(f(0))?.unwrap_or(f64::NAN),
            v: num(f(1))?.unwrap_or(f64::NAN),
            error,
            surface_type: Some(f(4).to_string()).filter(|s| !s.is_empty()),
            epsilon: match f(5) {
                "" => None,
                s => Some(s.parse().map_err(|_| Error::Config(format!("csv: bad epsilon `{s}`")))?),
            },
            alpha: pair(num(f(6))?, num(f(7))?),
            k_gauss: num(f(8))?,
            k_connection: num(f(9))?,
            metric,
            h,
            diagnostics,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive() {
        let g: Grid = "-1:1:5".parse().unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let one: Grid = "0.3:2:1".parse().unwrap();
        assert_eq!(one.points(), vec![0.3]);
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:inf:3".parse::<Grid>().is_err());
    }

    #[test]
    fn pi_bounds() {
        let g: Grid = "-pi/2:pi/2:3".parse().unwrap();
        assert_eq!(g.points()[2], std::f64::consts::FRAC_PI_2);
        assert_eq!(parse_bound("0.5pi"), Some(std::f64::consts::FRAC_PI_2));
        assert_eq!(parse_bound("2*pi"), Some(2.0 * std::f64::consts::PI));
    }

    #[test]
    fn floats_keep_every_bit() {
        let xs = [1.0 / 3.0, -2.0f64.sqrt(), 1e-300, 6.02214076e23];
        let s = to_json(&xs);
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, xs);
    }

    #[test]
    fn csv_round_trip_of_failed_record() {
        let r = PointRecord::failed(0.25, -1.0, &Error::NullTypeUnsupported);
        let mut buf = Vec::new();
        write_records_csv(&mut buf, std::slice::from_ref(&r)).unwrap();
        let back = read_records_csv(buf.as_slice()).unwrap();
        assert_eq!(back, vec![r]);
    }
}
