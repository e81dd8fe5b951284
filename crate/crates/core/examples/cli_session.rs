//! Drives the command line front end in process, the way the `ncx` binary does.

use ncx::cli::main_with;

fn main() -> std::io::Result<()> {
    let f = std::env::temp_dir().join("ncx-rockafellar.json");
    std::fs::write(&f, r#"{"kind": "rockafellar", "alpha": "1"}"#)?;
    let f = f.to_string_lossy().into_owned();
    let runs: Vec<Vec<&str>> = vec![
        vec!["ncx", "reproduce", "sec2-sum"],
        vec!["ncx", "fn", "--in", &f, "--op", "all", "--at", "1,0", "--at", "1/4,-3/4"],
        vec!["ncx", "verify", "halfstrip", "--grid", "41"],
    ];
    for args in &runs {
        eprintln!("$ {}", args.join(" "));
        let code = main_with(args.iter());
        eprintln!("exit {code}");
    }
    Ok(())
}
