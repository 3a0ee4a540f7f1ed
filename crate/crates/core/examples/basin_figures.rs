//! Renders every panel of the basin figures as PPM files.
//!
//! cargo run --release --example basin_figures -- [out_dir] [size]

use std::path::PathBuf;
use std::time::Instant;

use multiroot::basin::{figure_panels, render, GridSpec};
use sha2::{Digest, Sha256};

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "basins".into()));
    let size: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(256);
    std::fs::create_dir_all(&dir)?;
    let grid = GridSpec::default().with_size(size, size).expect("positive size");

    for panel in figure_panels() {
        let started = Instant::now();
        let img = render(&panel.problem(), &panel.spec(), grid).expect("figure problems are complex");
        let ppm = img.encode_ppm();
        let path = dir.join(img.file_name());
        std::fs::write(&path, &ppm)?;
        let digest: String = Sha256::digest(&ppm).iter().map(|b| format!("{b:02x}")).collect();
        println!(
            "fig {} {:>7} {:>5}  {}  sha256 {}  {:.2?}",
            panel.figure,
            panel.problem,
            panel.method.name(),
            img.summary(),
            &digest[..16],
            started.elapsed()
        );
    }
    Ok(())
}
