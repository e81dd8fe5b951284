//! Every oracle battery for the Rockafellar family, one JSON line per check.

use std::time::Instant;

use ncx::num::qr;
use ncx::oracle::suite;

fn main() -> ncx::Result<()> {
    let mut failed = 0;
    for alpha in [qr(1, 2), qr(1, 1), qr(2, 1)] {
        let t = Instant::now();
        let mut reports = suite::rockafellar_case_reports(&alpha, 81)?;
        reports.extend(suite::rockafellar_set_reports(&alpha)?);
        reports.push(suite::rockafellar_monotone_report(&alpha)?);
        reports.extend(suite::rockafellar_structure_reports(&alpha)?);
        reports.extend(suite::rockafellar_conjugate_reports(&alpha, 500, 50, 7, 200)?);
        for r in &reports {
            if !r.passed {
                failed += 1;
                println!("{}", r.to_json_line());
            }
        }
        eprintln!("alpha = {alpha}: {} checks in {:.2?}", reports.len(), t.elapsed());
    }
    println!("{failed} failed");
    Ok(())
}
