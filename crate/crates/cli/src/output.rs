use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;
use sssp_frontier::empirical::{DijkstraRun, PathGeometry};
use tempfile::NamedTempFile;

/// Exit status 2 for bad input, 3 when a computation fails, 1 for I/O.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
    Io(String),
}

impl Failure {
    pub fn usage(msg: impl ToString) -> Self {
        Failure::Usage(msg.to_string())
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Compute(m) | Failure::Io(m) => m,
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) => 3,
            Failure::Io(_) => 1,
        }
    }
}

impl From<sssp_frontier::Error> for Failure {
    fn from(e: sssp_frontier::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Files produced by one command, written only once everything is ready.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<(String, String)>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Self {
        Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    pub fn add(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    /// Stages every file as a temporary in the output directory, then renames
    /// them into place. A failure while staging leaves nothing behind.
    pub fn commit(self) -> Result<(), Failure> {
        let io = |what: &str, e: std::io::Error| Failure::Io(format!("{what}: {e}"));
        std::fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir.display().to_string(), e))?;
        let mut staged = Vec::with_capacity(self.files.len());
        for (name, contents) in &self.files {
            let target = self.dir.join(name);
            let mut tmp =
                staging_file(&self.dir).map_err(|e| io(&target.display().to_string(), e))?;
            tmp.write_all(contents.as_bytes())
                .and_then(|()| tmp.as_file().sync_all())
                .map_err(|e| io(&target.display().to_string(), e))?;
            staged.push((tmp, target));
        }
        for (tmp, target) in staged {
            tmp.persist(&target)
                .map_err(|e| io(&target.display().to_string(), e.error))?;
            println!("wrote {}", target.display());
        }
        Ok(())
    }
}

fn staging_file(dir: &Path) -> std::io::Result<NamedTempFile> {
    let mut builder = tempfile::Builder::new();
    builder.prefix(".sssp-frontier-");
    // Temporaries default to owner-only; outputs should be world-readable.
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(std::fs::Permissions::from_mode(0o644));
    }
    builder.tempfile_in(dir)
}

/// One row per vertex: distance (`inf` if unreachable), hops and predecessor.
pub fn distances_csv(run: &DijkstraRun) -> String {
    let mut s = String::from("vertex,dist,hops,pred\n");
    for (v, &d) in run.dist.iter().enumerate() {
        let pred = run.pred[v].map(|p| p.to_string()).unwrap_or_default();
        let _ = writeln!(s, "{v},{d},{},{pred}", run.hops[v]);
    }
    s
}

pub fn run_json(run: &DijkstraRun, geo: &PathGeometry) -> Result<String, Failure> {
    let doc = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "source": run.source,
        "stats": run.stats,
        "hop_length": run.hop_length,
        "weighted_length": run.weighted_length,
        "geometry": geo,
    });
    serde_json::to_string_pretty(&doc).map_err(|e| Failure::Compute(e.to_string()))
}
