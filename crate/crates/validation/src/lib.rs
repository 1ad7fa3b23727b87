//! Helpers shared by the acceptance suite: the checked-in recipes,
//! their golden outputs, and an in-process CLI runner.

use std::fs;
use std::path::{Path, PathBuf};

pub fn recipes_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../gascap/recipes")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../gascap/tests/golden")
}

/// Recipe files in name order.
pub fn recipes() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(recipes_dir())
        .expect("recipes directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    out.sort();
    out
}

/// The subcommand named on the recipe's `# Run with: gascap <command>` line.
pub fn recipe_command(recipe: &Path) -> Option<String> {
    let text = fs::read_to_string(recipe).ok()?;
    text.lines()
        .find_map(|l| l.strip_prefix("# Run with: gascap "))
        .and_then(|rest| rest.split_whitespace().next())
        .map(str::to_string)
}

pub struct Run {
    pub code: u8,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Runs the CLI in-process; `args` excludes the program name.
pub fn run_cli<S: AsRef<str>>(args: &[S]) -> Run {
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let argv = std::iter::once("gascap").chain(args.iter().map(|a| a.as_ref()));
    let code = gascap::cli::run(argv, &mut stdout, &mut stderr);
    Run {
        code,
        stdout,
        stderr: String::from_utf8_lossy(&stderr).into_owned(),
    }
}
