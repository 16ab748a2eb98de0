//! Arguments are inline JSON when they start with `{` or `[`, file paths otherwise.

use std::fmt;
use std::fs;

use serde_json::Value;

use tsetlin::action::FormalVector;
use tsetlin::gg::IndexFamily;
use tsetlin::rational::serde_q;
use tsetlin::{Error, RelationSet, Tableau, Q};

#[derive(Debug)]
pub enum InputError {
    Io(String, std::io::Error),
    Json(String, serde_json::Error),
    Engine(Error),
    Usage(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(path, e) => write!(f, "{path}: {e}"),
            InputError::Json(src, e) => write!(f, "{src}: {e}"),
            InputError::Engine(e) => write!(f, "{e}"),
            InputError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Engine(e)
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Json("output".into(), e)
    }
}

fn source_name(arg: &str) -> String {
    if is_inline(arg) {
        "inline JSON".into()
    } else {
        arg.to_string()
    }
}

fn is_inline(arg: &str) -> bool {
    matches!(arg.trim_start().chars().next(), Some('{' | '['))
}

fn read(arg: &str) -> Result<String, InputError> {
    if is_inline(arg) {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| InputError::Io(arg.to_string(), e))
    }
}

fn parse<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, InputError> {
    let text = read(arg)?;
    serde_json::from_str(&text).map_err(|e| InputError::Json(source_name(arg), e))
}

pub fn load_tableau(arg: &str) -> Result<Tableau, InputError> {
    parse(arg)
}

pub fn load_relations(arg: &str) -> Result<RelationSet, InputError> {
    parse(arg)
}

pub fn load_vector(arg: &str) -> Result<FormalVector, InputError> {
    parse(arg)
}

pub fn load_family(arg: &str) -> Result<IndexFamily, InputError> {
    parse(arg)
}

pub fn load_top_row(arg: &str) -> Result<Vec<Q>, InputError> {
    let v: Vec<Value> = parse(arg)?;
    Ok(v.iter().map(serde_q::from_json).collect::<Result<_, _>>()?)
}
