use std::io::Read;

use serde_json::Value;

use skewforms::catalog::builtin;
use skewforms::exterior::{json::FormJson, AlternatingForm};
use skewforms::linsys::LinearSystem;
use skewforms::scalars::Rational;

use crate::commands::Failure;
use crate::Source;

fn read(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    Ok(s)
}

/// Either a single form or a system, as found in the input.
pub enum Parsed {
    Form(AlternatingForm<Rational>),
    System(LinearSystem<Rational>),
}

pub fn parse_any(src: &Source) -> Result<Parsed, Failure> {
    if let Some(name) = &src.builtin {
        return builtin(name).map(|n| Parsed::System(n.system)).map_err(|e| Failure::usage(e.to_string()));
    }
    let path = src.input.as_deref().expect("clap requires a source");
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    if value.get("generators").is_some() {
        LinearSystem::parse_json(&text).map(Parsed::System).map_err(|e| Failure::usage(format!("{path}: {e}")))
    } else {
        form_from_value(value).map(Parsed::Form).map_err(|e| Failure::usage(format!("{path}: {e}")))
    }
}

fn form_from_value(value: Value) -> Result<AlternatingForm<Rational>, String> {
    let j: FormJson = serde_json::from_value(value).map_err(|e| e.to_string())?;
    j.to_form().map_err(|e| e.to_string())
}

pub fn system(src: &Source) -> Result<LinearSystem<Rational>, Failure> {
    match parse_any(src)? {
        Parsed::System(a) => Ok(a),
        Parsed::Form(_) => Err(Failure::usage("expected a system with a \"generators\" list, found a single form".into())),
    }
}

pub fn form(path: &str) -> Result<AlternatingForm<Rational>, Failure> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    form_from_value(value).map_err(|e| Failure::usage(format!("{path}: {e}")))
}
