// The full analysis pipeline behind `ultragram analyze`, rendered as JSON.

use ultragram::cli::{analyze, AnalyzeOptions};
use ultragram::io::{parse_bytes, Format};
use ultragram::report::{write_report, OutputFormat};

const MATRIX: &str = "\
a,b,c,d,e
0,1,3,3,3
1,0,3,3,3
3,3,0,2,2
3,3,2,0,1
3,3,2,1,0
";

pub fn run_example() -> ultragram::Result<()> {
    let d = parse_bytes(MATRIX.as_bytes(), Format::Csv)?;
    let opts = AnalyzeOptions {
        p: 1.5,
        gap: Some((2_000, 7)),
        embed: false,
        supremal: Some((32.0, 1e-6)),
        timings: false,
    };
    let report = analyze(&d, &opts)?;
    print!(
        "{}",
        String::from_utf8_lossy(&write_report(&report, OutputFormat::Text))
    );
    print!(
        "{}",
        String::from_utf8_lossy(&write_report(&report, OutputFormat::Json))
    );
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}
