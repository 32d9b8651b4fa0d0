//! The surface language: parse five components, print them back and
//! evaluate both pointwise and as jets.
//!
//! `cargo run --example parse_surface -- "a*cos(u); sin(u); v; u*v; 1" a=2`

use std::collections::BTreeMap;

use centroframe::dsl::{builtin, eval_point, eval_surface, parse_surface_with, BUILTIN_NAMES};

fn main() -> centroframe::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args
        .next()
        .unwrap_or_else(|| "a*cosh(u)*cos(v); a*cosh(u)*sin(v); sinh(u); u^2 - v^2/2; 1 + u*v".into());
    let mut params = BTreeMap::new();
    for kv in args {
        if let Some((k, v)) = kv.split_once('=') {
            params.insert(k.to_string(), v.parse().unwrap_or(0.0));
        }
    }
    params.entry("a".to_string()).or_insert(1.5);

    let spec = parse_surface_with(&text, "demo", &params)?;
    println!("parsed:  {spec}");
    let again = parse_surface_with(&spec.to_string(), "demo", &params)?;
    println!("reparse identical: {}", again.components == spec.components);

    let x = eval_point(&spec, 0.4, 0.1)?;
    println!("x(0.4, 0.1) = {x:?}");
    let jet = eval_surface(&spec, 0.4, 0.1, 3)?;
    let du: Vec<f64> = jet.iter().map(|c| c.derivative(1, 0)).collect();
    println!("x_u(0.4, 0.1) = {du:?}");

    for name in BUILTIN_NAMES {
        println!("{name}: {}", builtin(name).expect("built-in"));
    }

    for bad in ["u; v; 1; 2", "u +; v; 1; 2; 3", "u; v; w; 1; 2", "log(u); v; 1; 2; 3"] {
        match parse_surface_with(bad, "bad", &BTreeMap::new()) {
            Ok(_) => println!("{bad:?} accepted"),
            Err(e) => println!("{bad:?} -> {}: {e}", e.kind()),
        }
    }
    Ok(())
}
