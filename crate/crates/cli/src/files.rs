//! Input and output paths, where `-` means stdin or stdout.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use waring_core::io::{from_json, to_json};
use waring_core::{Error, Matrix, NcPolynomial, Rational};

use crate::failure::Failure;

pub fn read_text(path: &Path) -> Result<String, Failure> {
    let io_err = |e: std::io::Error| Failure::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_text(path)?;
    from_json(&text).map_err(|e| match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())).into(),
        other => other.into(),
    })
}

pub fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    read_json(path)
}

/// Writes pretty JSON to `out`, or to stdout when `out` is absent or `-`.
pub fn write_json<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<String, Failure> {
    let text = to_json(value);
    write_text(&text, out)?;
    Ok(text)
}

fn write_text(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) if path != Path::new("-") => std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        _ => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| Failure::Io {
                path: "-".into(),
                message: e.to_string(),
            })
        }
    }
}

/// Comma-separated scalars such as `1,-2,3/4`.
pub fn parse_scalars(list: &str) -> Result<Vec<Rational>, Failure> {
    list.split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(Failure::from))
        .collect()
}

/// Exactly one of inline text or a file holding it.
pub fn polynomial(text: Option<&str>, file: Option<&PathBuf>) -> Result<NcPolynomial, Failure> {
    let source = match (text, file) {
        (Some(t), None) => t.to_string(),
        (None, Some(path)) => read_text(path)?,
        _ => {
            return Err(Failure::Usage(
                "give the polynomial with exactly one of --f or --f-file".into(),
            ))
        }
    };
    Ok(source.trim().parse()?)
}
