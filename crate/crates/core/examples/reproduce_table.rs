//! Prints the 5×4 error/COC/ACOC table and optionally writes the CSV.
//!
//! cargo run --release --example reproduce_table -- [digits] [csv_path]

use multiroot::table::table1;
use multiroot::Precision;

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let digits = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let report = table1(Precision::Digits(digits));
    print!("{}", report.to_text());
    if let Some(path) = args.next() {
        std::fs::write(&path, report.to_csv())?;
        println!("wrote {path}");
    }
    Ok(())
}
