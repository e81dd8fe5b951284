//! Recomputes every worked example and compares it with its stored golden set.

use clap::ValueEnum;
use ncx::cli::{reproduce, Example};

fn main() -> ncx::Result<()> {
    for ex in Example::value_variants() {
        let r = reproduce(*ex)?;
        let failed: Vec<_> = r.reports.iter().filter(|x| !x.passed).collect();
        println!("{:<16} {:>3} checks, {} failed", ex.tag(), r.reports.len(), failed.len());
        for x in failed {
            println!("  {}", x.to_json_line());
        }
    }
    Ok(())
}
