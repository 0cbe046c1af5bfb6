//! Running a mode through the library API and rendering its report in each
//! format.
//!
//! `cargo run --example report_json`

use multishift::cli::{run, RunConfig};
use multishift::report::{Format, Mode, Report};

fn main() -> multishift::Result<()> {
    let dir = std::env::temp_dir().join("multishift-example");
    std::fs::create_dir_all(&dir)?;
    let matrix = dir.join("golden.txt");
    std::fs::write(&matrix, "2\n1 1\n1 0\n")?;
    let config = RunConfig {
        mode: Mode::Dims,
        matrix,
        measure: None,
        tol: 1e-8,
        seed: 0,
        depth: None,
        n: 1024,
        count: 1000,
        format: Format::Json,
        out: None,
    };
    let outcome = run(&config)?;
    print!("{}", outcome.rendered);
    let parsed = Report::from_json(&outcome.rendered)?;
    assert_eq!(parsed, outcome.report);
    print!("\n{}", parsed.render(Format::Csv)?);
    Ok(())
}
