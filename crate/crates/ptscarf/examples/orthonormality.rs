//! Gram matrix of the PT inner product: <psi_m, psi_n>_PT = (-1)^n delta_mn.
//!
//! Run: cargo run --release --example orthonormality

use num_complex::Complex64;
use ptscarf::ptproduct::{default_rule, gram_deviation, gram_matrix};
use ptscarf::scarf::ModelParams;

fn main() {
    let rule = default_rule();
    for alpha in [Complex64::new(1.0, 0.5), Complex64::new(0.8, 1.2)] {
        let p = ModelParams::new(alpha).unwrap();
        let g = gram_matrix(8, &p, &rule).unwrap();
        println!("alpha = {alpha}");
        for row in &g {
            let cells: Vec<String> = row.iter().map(|e| format!("{:+.2e}", e.re)).collect();
            println!("  [{}]", cells.join(", "));
        }
        println!("  max deviation from diag((-1)^n): {:.3e}\n", gram_deviation(&g));
    }
}
