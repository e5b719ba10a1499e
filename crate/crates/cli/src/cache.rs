//! Content-addressed report cache.
//!
//! A file `<key>.json` holds `{version, key, checksum, payload}` where
//! `payload` is the report text and `checksum` its SHA-256. Anything that
//! fails to read, parse or verify is a miss.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever report contents change for the same inputs.
pub const VERSION_TAG: &str = concat!("kummer-", env!("CARGO_PKG_VERSION"), "/1");

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    checksum: String,
    payload: String,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex(&Sha256::digest(data))
}

/// Key of a canonical job description.
pub fn key(canonical: &serde_json::Value) -> String {
    let mut h = Sha256::new();
    h.update(VERSION_TAG.as_bytes());
    h.update([0]);
    h.update(canonical.to_string().as_bytes());
    hex(&h.finalize())
}

pub fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

pub fn get(dir: &Path, key: &str) -> Option<String> {
    let text = fs::read_to_string(path(dir, key)).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    let valid =
        entry.version == VERSION_TAG && entry.key == key && entry.checksum == sha256_hex(entry.payload.as_bytes());
    valid.then_some(entry.payload)
}

/// Best effort; a failed write only costs a recomputation later.
pub fn put(dir: &Path, key: &str, payload: &str) -> bool {
    let entry = Entry {
        version: VERSION_TAG.into(),
        key: key.into(),
        checksum: sha256_hex(payload.as_bytes()),
        payload: payload.into(),
    };
    let Ok(text) = serde_json::to_string(&entry) else { return false };
    if fs::create_dir_all(dir).is_err() {
        return false;
    }
    // write then rename so readers never see a partial file
    let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
    fs::write(&tmp, text).is_ok() && fs::rename(&tmp, path(dir, key)).is_ok()
}
