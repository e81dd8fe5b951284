//! Writes SVG figures of two planar sets to the system temp directory.

use ncx::cli::{render_svg, strip_with_corners, FigureSpec};
use ncx::subdiff::ncpolygon_golden;

fn main() -> ncx::Result<()> {
    let dir = std::env::temp_dir();
    for (name, e) in [("strip", strip_with_corners()), ("ncpolygon", ncpolygon_golden())] {
        let svg = render_svg(&e, &FigureSpec::fit(&e))?;
        let path = dir.join(format!("ncx-{name}.svg"));
        std::fs::write(&path, &svg)?;
        println!("{} ({} bytes)", path.display(), svg.len());
    }
    Ok(())
}
