use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Failure;

/// An output directory whose files appear only once fully written.
pub struct OutputDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, Failure> {
        fs::create_dir_all(root).map_err(|e| Failure::Output(format!("{}: {e}", root.display())))?;
        Ok(OutputDir { root: root.to_path_buf(), written: Vec::new() })
    }

    /// Writes `name` through a temporary sibling and renames it into place.
    pub fn write<F>(&mut self, name: &str, fill: F) -> Result<(), Failure>
    where
        F: FnOnce(&mut BufWriter<File>) -> zdscan::Result<()>,
    {
        let target = self.root.join(name);
        let tmp = self.root.join(format!(".{name}.tmp"));
        let fail = |e: &dyn std::fmt::Display| Failure::Output(format!("{}: {e}", target.display()));
        let file = File::create(&tmp).map_err(|e| fail(&e))?;
        let mut writer = BufWriter::new(file);
        let result = fill(&mut writer)
            .and_then(|_| writer.flush().map_err(zdscan::Error::from))
            .and_then(|_| writer.get_ref().sync_all().map_err(zdscan::Error::from));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            return Err(fail(&e));
        }
        drop(writer);
        fs::rename(&tmp, &target).map_err(|e| fail(&e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn write_text(&mut self, name: &str, text: &str) -> Result<(), Failure> {
        self.write(name, |w| Ok(w.write_all(text.as_bytes())?))
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }
}

pub fn sha256_file(path: &Path) -> Result<String, Failure> {
    let mut file = File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = file.read(&mut buf).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Everything needed to replay a run.
#[derive(Serialize)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    pub flags: serde_json::Value,
    pub seed: u64,
    pub catalog_version: String,
    pub input_digests: BTreeMap<String, String>,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn write(mut self, out: &mut OutputDir) -> Result<(), Failure> {
        self.outputs = out.written().to_vec();
        self.outputs.push("manifest.json".to_string());
        let text = serde_json::to_string_pretty(&self).map_err(|e| Failure::Output(e.to_string()))?;
        out.write_text("manifest.json", &(text + "\n"))
    }
}
