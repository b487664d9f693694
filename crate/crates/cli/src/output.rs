use std::fs;
use std::path::PathBuf;

use dpp_core::Scalar;
use serde_json::Value;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Where and how to write: `None` is stdout in the command's default format,
/// `json`/`csv`/`text` pick a format on stdout, anything else is a path.
pub struct Sink {
    path: Option<PathBuf>,
    pub format: Format,
}

impl Sink {
    pub fn new(out: Option<&str>, default: Format) -> Self {
        match out {
            None => Self { path: None, format: default },
            Some("json") => Self { path: None, format: Format::Json },
            Some("csv") => Self { path: None, format: Format::Csv },
            Some("text") => Self { path: None, format: Format::Text },
            Some(p) => {
                let format = match p.rsplit_once('.').map(|(_, e)| e.to_ascii_lowercase()) {
                    Some(e) if e == "csv" => Format::Csv,
                    Some(e) if e == "json" => Format::Json,
                    Some(e) if e == "txt" => Format::Text,
                    _ => default,
                };
                Self {
                    path: Some(PathBuf::from(p)),
                    format,
                }
            }
        }
    }

    pub fn write(&self, text: &str) -> Result<(), Failure> {
        match &self.path {
            Some(p) => fs::write(p, text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    pub fn write_json(&self, v: &Value) -> Result<(), Failure> {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        self.write(&s)
    }
}

/// `(re, im)` columns: `p/q` and `0` for rationals, 17 significant digits otherwise.
pub fn parts<S: Scalar>(x: &S) -> (String, String) {
    if S::EXACT {
        (x.render(), "0".to_string())
    } else {
        let c = x.to_complex();
        (float(c.re), float(c.im))
    }
}

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows of comma-separated cells after a header.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}
