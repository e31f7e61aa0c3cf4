//! JSON encodings: `{"terms":[{"i":1,"j":4,"c":"1"}]}` for forms and
//! `{"generators":[...]}` for systems. Indices are 1-based with `i < j`.

use serde::{Deserialize, Serialize};

use super::{pair_index, AlternatingForm, PAIRS};
use crate::scalars::{Rational, Ring};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub i: usize,
    pub j: usize,
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub generators: Vec<FormJson>,
}

impl FormJson {
    pub fn from_form(f: &AlternatingForm<Rational>) -> Self {
        let terms = PAIRS
            .iter()
            .zip(f.coeffs())
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), c)| TermJson { i: i + 1, j: j + 1, c: c.clone() })
            .collect();
        FormJson { terms }
    }

    pub fn to_form(&self) -> Result<AlternatingForm<Rational>> {
        let mut c: [Rational; 15] = std::array::from_fn(|_| Rational::zero());
        let mut seen = [false; 15];
        for t in &self.terms {
            if !(1 <= t.i && t.i < t.j && t.j <= 6) {
                return Err(Error::Parse(format!("term indices must satisfy 1 <= i < j <= 6, got ({}, {})", t.i, t.j)));
            }
            let k = pair_index(t.i - 1, t.j - 1);
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::Parse(format!("duplicate term ({}, {})", t.i, t.j)));
            }
            c[k] = t.c.clone();
        }
        Ok(AlternatingForm::from_coeffs(c))
    }
}

pub fn form_to_json(f: &AlternatingForm<Rational>) -> String {
    serde_json::to_string(&FormJson::from_form(f)).expect("serializable")
}

pub fn form_from_json(s: &str) -> Result<AlternatingForm<Rational>> {
    let j: FormJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_form()
}

impl Serialize for AlternatingForm<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson::from_form(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlternatingForm<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FormJson::deserialize(d)?.to_form().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize)]
struct SubspaceJson<'a> {
    ambient: super::Ambient,
    basis: &'a [[Rational; 6]],
}

impl Serialize for super::Subspace<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceJson { ambient: self.ambient(), basis: self.basis() }.serialize(s)
    }
}
