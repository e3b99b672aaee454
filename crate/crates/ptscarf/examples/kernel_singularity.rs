//! Kernel behavior on the approach to the singular line y = -x: the
//! measured log-log slope of |C| against |1 - z|.
//!
//! Run: cargo run --release --example kernel_singularity

use num_complex::Complex64;
use ptscarf::ckernel::{kernel_closed, singularity_slope, KernelPoint};
use ptscarf::scarf::ModelParams;

fn main() {
    let p = ModelParams::new(Complex64::new(1.0, 0.5)).unwrap();
    let x = 0.4;
    println!("delta      |1-z|      |C(x, -x+delta)|");
    for delta in [0.1, 0.03, 0.01, 0.003, 0.001] {
        let pt = KernelPoint::new(x, -x + delta).unwrap();
        let value = kernel_closed(&pt, &p).unwrap();
        println!("{delta:<9}  {:.3e}  {:.6e}", (1.0 - pt.z()).abs(), value.norm());
    }
    let slope = singularity_slope(&p, x, &[0.1, 0.03, 0.01, 0.003, 0.001]).unwrap();
    println!("fitted slope: {slope:.4} (simple pole: the 2F1 parameters give c - a - b = -1)");
}
