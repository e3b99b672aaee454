//! Delta-sequence completeness: sup-norm reconstruction error of the
//! probe corpus as the expansion order grows.
//!
//! Run: cargo run --release --example completeness_convergence

use num_complex::Complex64;
use ptscarf::completeness::{convergence_grid, corpus, delta_convergence_report};
use ptscarf::ptproduct::default_rule;
use ptscarf::scarf::ModelParams;

fn main() {
    let p = ModelParams::new(Complex64::new(1.0, 0.5)).unwrap();
    let rule = default_rule();
    let grid = convergence_grid();
    for f in corpus(&p) {
        let rows = delta_convergence_report(&f, &[5, 10, 20, 40], &p, &rule, &grid).unwrap();
        println!("{} ({})", f.name, f.note);
        for (n, err) in rows {
            println!("  N = {n:<3} sup error {err:.3e}");
        }
    }
}
