//! C acting on eigenfunctions (C psi_n = (-1)^n psi_n) and the
//! involution check C^2 = 1.
//!
//! Run: cargo run --release --example c_action

use num_complex::Complex64;
use ptscarf::ckernel::{c_apply, c_squared_check, ActionGrading};
use ptscarf::scarf::{eigenfunction, ModelParams};

fn main() {
    let p = ModelParams::new(Complex64::new(1.0, 0.5)).unwrap();
    let grading = ActionGrading::default();
    let x = 0.4;
    println!("n   (C psi_n)(0.4)                  (-1)^n psi_n(0.4)               rel err");
    for n in 0..=4u32 {
        let f = |y: f64| eigenfunction(n, &p, y).unwrap();
        let got = c_apply(f, x, &p, &grading).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let want = sign * eigenfunction(n, &p, x).unwrap();
        println!(
            "{n}   {:+.6} {:+.6}i   {:+.6} {:+.6}i   {:.2e}",
            got.re,
            got.im,
            want.re,
            want.im,
            (got - want).norm() / want.norm()
        );
    }
    let f = |y: f64| eigenfunction(0, &p, y).unwrap() + 0.5 * eigenfunction(2, &p, y).unwrap();
    let resid = c_squared_check(f, &[-0.6, 0.1, 0.8], &p, &grading, 241).unwrap();
    println!("C^2 residual on psi0 + psi2/2: {resid:.3e}");
}
