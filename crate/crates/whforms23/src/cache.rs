//! On-disk cache of built forms, one JSON file per `(D, m, parity, order)`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::level::LEVEL;
use crate::{Parity, WHForm};

/// A directory of cached forms.
#[derive(Clone, Debug)]
pub struct FormCache {
    dir: PathBuf,
}

impl FormCache {
    /// A cache rooted at `dir` (created on first store).
    pub fn new(dir: impl AsRef<Path>) -> Self {
        FormCache { dir: dir.as_ref().to_path_buf() }
    }

    /// The file holding `(m, parity, order)`.
    pub fn path(&self, m: i64, parity: Parity, order: i64) -> PathBuf {
        self.dir.join(format!("whform_D-{LEVEL}_m{m}_{parity}_o{order}.json"))
    }

    /// The cached form, if present and readable.
    pub fn load(&self, m: i64, parity: Parity, order: i64) -> Option<WHForm> {
        let text = fs::read_to_string(self.path(m, parity, order)).ok()?;
        let v: serde_json::Value = serde_json::from_str(&text).ok()?;
        let f = WHForm::from_json(&v).ok()?;
        (f.pole_order() == m && f.parity() == parity && f.trunc() >= order).then_some(f)
    }

    /// Stores `f` under its key at `order`.
    pub fn store(&self, f: &WHForm, order: i64) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let text = serde_json::to_string(&f.to_json()).map_err(io::Error::other)?;
        fs::write(self.path(f.pole_order(), f.parity(), order), text)
    }
}
