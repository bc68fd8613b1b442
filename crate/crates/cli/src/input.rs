//! Resolving command inputs: a file path, or a catalog name looked up in
//! `$STROP_CATALOG` first and in the bundled data second.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use strop_core::catalog::{bundled, bundled_cross};
use strop_core::Error;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Input text and the label it is reported under.
#[derive(Clone, Debug)]
pub struct Source {
    pub label: String,
    pub text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Complex,
    Cross,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))
}

fn catalog_file(dir: &Path, kind: Kind, name: &str) -> Option<PathBuf> {
    let dir = match kind {
        Kind::Complex => dir.to_path_buf(),
        Kind::Cross => dir.join("cross"),
    };
    [
        name.to_string(),
        name.to_ascii_lowercase(),
        name.to_ascii_uppercase(),
    ]
    .iter()
    .map(|n| dir.join(format!("{n}.json")))
    .find(|p| p.is_file())
}

pub fn resolve(arg: &str, kind: Kind, catalog: Option<&Path>) -> Result<Source, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Source {
            label: arg.to_string(),
            text: read(path)?,
        });
    }
    let is_name = !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if is_name {
        if let Some(file) = catalog.and_then(|dir| catalog_file(dir, kind, arg)) {
            return Ok(Source {
                label: format!("catalog:{arg}"),
                text: read(&file)?,
            });
        }
        let found = match kind {
            Kind::Complex => bundled(arg),
            Kind::Cross => bundled_cross(arg),
        };
        if let Some(text) = found {
            return Ok(Source {
                label: format!("catalog:{arg}"),
                text: text.to_string(),
            });
        }
    }
    Err(Error::Format(format!(
        "{arg} is neither a readable file nor a catalog entry"
    )))
}

/// A plain file; torus chains have no catalog.
pub fn resolve_file(arg: &str) -> Result<Source, Error> {
    Ok(Source {
        label: arg.to_string(),
        text: read(Path::new(arg))?,
    })
}
