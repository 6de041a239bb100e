use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use sanctions_migration::reports::Table;

/// Output directory. Files are written to a hidden temporary name and
/// renamed into place, so readers never see a partial file.
#[derive(Debug, Clone)]
pub struct OutputDir {
    root: PathBuf,
    precision: usize,
}

impl OutputDir {
    pub fn create(root: &Path, precision: usize) -> anyhow::Result<Self> {
        fs::create_dir_all(root).with_context(|| format!("creating output directory {}", root.display()))?;
        Ok(OutputDir { root: root.to_path_buf(), precision })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write_bytes(&self, name: &str, bytes: &[u8]) -> anyhow::Result<PathBuf> {
        let target = self.path(name);
        let tmp = self.path(&format!(".{name}.tmp"));
        let mut file = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        file.write_all(bytes)?;
        file.sync_all()?;
        drop(file);
        fs::rename(&tmp, &target).with_context(|| format!("moving output into {}", target.display()))?;
        Ok(target)
    }

    /// Writes `<stem>.csv` at display precision and `<stem>_full.csv` at full
    /// precision.
    pub fn write_table(&self, stem: &str, table: &Table) -> anyhow::Result<()> {
        self.write_table_at(stem, table, self.precision)
    }

    /// As [`write_table`](Self::write_table) with an explicit display precision.
    pub fn write_table_at(&self, stem: &str, table: &Table, precision: usize) -> anyhow::Result<()> {
        self.write_bytes(&format!("{stem}.csv"), table.to_csv_string(Some(precision)).as_bytes())?;
        self.write_bytes(&format!("{stem}_full.csv"), table.to_csv_string(None).as_bytes())?;
        Ok(())
    }

    pub fn precision(&self) -> usize {
        self.precision
    }
}
