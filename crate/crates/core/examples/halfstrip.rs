//! The half-strip function, whose subdifferential domain is an open half
//! plane plus a closed ray on its boundary: neither open nor closed.

use ncx::num::QSqrt2;
use ncx::oracle::suite::halfstrip_reports;
use ncx::subdiff::halfstrip_dom;

fn main() -> ncx::Result<()> {
    for alpha in [0, 1] {
        let dom = halfstrip_dom(&QSqrt2::rational(ncx::num::q(alpha))).rationalize()?;
        println!("alpha = {alpha}: dom ∂f = {}", serde_json::to_string(&dom)?);
        let reports = halfstrip_reports(&ncx::num::q(alpha), 81)?;
        let failed = reports.iter().filter(|r| !r.passed).count();
        println!("  {} oracle checks, {failed} failed", reports.len());
    }
    Ok(())
}
