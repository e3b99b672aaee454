//! Hermitian limit alpha_I -> 0: the C operator degenerates to parity,
//! C(x, y) = delta(x + y), checked through the Abel-regularized action.
//!
//! Run: cargo run --release --example parity_limit

use num_complex::Complex64;
use ptscarf::ckernel::{kernel_constant, parity_limit_check, AbelSchedule};
use ptscarf::ptproduct::default_rule;
use ptscarf::scarf::ModelParams;

fn main() {
    let p = ModelParams::new(Complex64::new(1.0, 0.0)).unwrap();
    let n = kernel_constant(&p).unwrap();
    println!(
        "closed-form constant N = {} (parity degeneration flagged: {})",
        n.value, n.parity_limit
    );
    let rule = default_rule();
    let sched = AbelSchedule::default();
    for &x in &[-0.7, 0.0, 0.3] {
        let r = parity_limit_check(&p, |y| Complex64::new(y.cos(), 0.0), x, &sched, &rule)
            .unwrap();
        println!("|(C cos)({x}) - cos(-{x})| after extrapolation: {r:.3e}");
    }
}
