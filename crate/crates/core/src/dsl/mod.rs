//! Surface description language: five scalar expressions in `u` and `v`.
//!
//! ```
//! use centroframe::dsl::{parse_surface, eval_surface};
//! let spec = parse_surface("cosh(u)*cosh(v); sinh(u); sinh(v); 1; 0").unwrap();
//! let jet = eval_surface(&spec, 0.0, 0.0, 4).unwrap();
//! assert_eq!(jet[0].value(), 1.0);
//! ```

mod ast;
mod parser;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

pub use ast::{BinOp, Expr, Func, DIV_TOL};
pub use parser::parse_expr;

use crate::error::{Error, Result};
use crate::taylor::{coordinate_jets, Taylor};

/// Jet of an immersion: five Taylor polynomials.
pub type Jet5 = [Taylor; 5];

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSpec {
    pub name: String,
    pub components: [Expr; 5],
    pub params: BTreeMap<String, f64>,
}

/// Parameters every surface may use.
pub fn default_params() -> BTreeMap<String, f64> {
    BTreeMap::from([("pi".to_string(), std::f64::consts::PI)])
}

/// Parses a surface with only the default parameters declared.
pub fn parse_surface(text: &str) -> Result<SurfaceSpec> {
    parse_surface_with(text, "inline", &BTreeMap::new())
}

/// Parses a surface; `params` extends (and may override) the defaults.
pub fn parse_surface_with(text: &str, name: &str, params: &BTreeMap<String, f64>) -> Result<SurfaceSpec> {
    let mut all = default_params();
    all.extend(params.iter().map(|(k, v)| (k.clone(), *v)));
    let comps = parser::parse_components(text, &all)?;
    let components: [Expr; 5] = comps.try_into().expect("parser checks the component count");
    Ok(SurfaceSpec {
        name: name.to_string(),
        components,
        params: all,
    })
}

/// Reads a surface file: the first line that is neither blank nor a `#` comment.
pub fn load_surface_file(path: &Path, params: &BTreeMap<String, f64>) -> Result<SurfaceSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Config(format!("{} contains no surface", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".into());
    parse_surface_with(line, &name, params)
}

/// Degree-`degree` jet of the surface at (u0, v0).
pub fn eval_surface(spec: &SurfaceSpec, u0: f64, v0: f64, degree: usize) -> Result<Jet5> {
    let (u, v) = coordinate_jets(u0, v0, degree);
    let mut out = [Taylor::zero(degree); 5];
    for (slot, e) in out.iter_mut().zip(spec.components.iter()) {
        *slot = e.eval_taylor(&u, &v, &spec.params)?;
    }
    Ok(out)
}

/// Plain pointwise evaluation.
pub fn eval_point(spec: &SurfaceSpec, u: f64, v: f64) -> Result<[f64; 5]> {
    let mut out = [0.0; 5];
    for (slot, e) in out.iter_mut().zip(spec.components.iter()) {
        *slot = e.eval_f64(u, v, &spec.params)?;
    }
    Ok(out)
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 3] = ["h2", "sphere", "s21"];

/// Source text of the built-in homogeneous surfaces.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "h2" => concat!(
            "0.5*(3*cosh(u)^2*cosh(v)^2 - 1); ",
            "sqrt(3)*sinh(u)*cosh(u)*cosh(v)^2; ",
            "sqrt(3)*cosh(u)*sinh(v)*cosh(v); ",
            "1.5*(cosh(v)^2*(cosh(u)^2 - 2) + 1); ",
            "3*sinh(u)*sinh(v)*cosh(v)"
        ),
        "sphere" => concat!(
            "0.5*(3*cos(u)^2*cos(v)^2 - 1); ",
            "sqrt(3)*sin(u)*cos(u)*cos(v)^2; ",
            "sqrt(3)*cos(u)*sin(v)*cos(v); ",
            "1.5*(cos(v)^2*(2 - cos(u)^2) - 1); ",
            "3*sin(u)*sin(v)*cos(v)"
        ),
        "s21" => concat!(
            "0.25*(3*cos(u)^2*(cosh(2*v) + 1) - 2); ",
            "sqrt(6)*0.25*cos(u)*(sin(u)*(cosh(2*v) + 1) + sinh(2*v)); ",
            "-sqrt(6)*0.25*cos(u)*(sin(u)*(cosh(2*v) + 1) - sinh(2*v)); ",
            "-0.375*(cos(u)^2*(cosh(2*v) + 1) - 2*(cosh(2*v) + sin(u)*sinh(2*v))); ",
            "-0.375*(cos(u)^2*(cosh(2*v) + 1) - 2*(cosh(2*v) - sin(u)*sinh(2*v)))"
        ),
        _ => return None,
    })
}

/// One of the built-in surfaces `h2`, `sphere`, `s21`.
pub fn builtin(name: &str) -> Option<SurfaceSpec> {
    let src = builtin_source(name)?;
    Some(parse_surface_with(src, name, &BTreeMap::new()).expect("built-in surfaces parse"))
}
