//! Arguments that may be a file path, `-` for stdin, or inline text.

use std::io::Read;
use std::path::Path;

use widealloc::{Error, Result};

/// Reads `arg` as stdin (`-`), an existing file, or the literal text.
pub fn read_arg(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(std::fs::read_to_string(path)?);
    }
    Ok(arg.to_string())
}

/// Like [`read_arg`] but the argument must name a file or `-`.
pub fn read_file(arg: &str) -> Result<String> {
    if arg != "-" && !Path::new(arg).is_file() {
        return Err(Error::InvalidInput(format!("no such file: {arg}")));
    }
    read_arg(arg)
}

pub fn parse_json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    Ok(serde_json::from_str(&read_arg(arg)?)?)
}
