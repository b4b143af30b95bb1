//! Run manifest: config echo, tool version, wall-clock time, and a sha256
//! checksum for every emitted artifact.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub version: String,
    pub task: String,
    pub wall_clock_seconds: f64,
    pub config: BTreeMap<String, String>,
    /// file name -> sha256 hex digest of its bytes
    pub outputs: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects output files, writing each one immediately and remembering its
/// checksum for the manifest.
pub struct OutputWriter {
    dir: PathBuf,
    checksums: BTreeMap<String, String>,
}

impl OutputWriter {
    pub fn new(dir: &Path) -> io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            checksums: BTreeMap::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &[u8]) -> io::Result<()> {
        std::fs::write(self.dir.join(name), contents)?;
        self.checksums.insert(name.to_string(), sha256_hex(contents));
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> io::Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    pub fn finish(
        self,
        task: &str,
        config: BTreeMap<String, String>,
        wall_clock_seconds: f64,
    ) -> io::Result<()> {
        let manifest = RunManifest {
            version: env!("CARGO_PKG_VERSION").to_string(),
            task: task.to_string(),
            wall_clock_seconds,
            config,
            outputs: self.checksums.clone(),
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        std::fs::write(self.dir.join("manifest.json"), text)?;
        Ok(())
    }
}
