//! Scarf I eigensystem: real spectrum, PT-invariant eigenfunctions, and
//! the finite-difference Schrodinger residual with its h^4 law.
//!
//! Run: cargo run --release --example eigensystem

use num_complex::Complex64;
use ptscarf::scarf::{
    default_residual_grid, eigenfunction, energy, potential, schrodinger_residual, ModelParams,
};

fn main() {
    let p = ModelParams::new(Complex64::new(1.0, 0.5)).unwrap();
    println!("V(0) = {}", potential(0.0, &p).unwrap());
    println!("n    E_n        residual(h=1e-2)  residual(h=2e-3)");
    let grid = default_residual_grid();
    for n in 0..=6 {
        let coarse = schrodinger_residual(n, &p, &grid, 1e-2).unwrap();
        let fine = schrodinger_residual(n, &p, &grid, 2e-3).unwrap();
        println!("{n}    {:<9.4}  {coarse:.3e}         {fine:.3e}", energy(n, &p));
    }
    // unbroken PT: psi_n*(-x) = psi_n(x)
    let mut worst = 0.0f64;
    for n in 0..=8u32 {
        for i in 0..33 {
            let x = -1.4 + 2.8 * i as f64 / 32.0;
            let dev = (eigenfunction(n, &p, -x).unwrap().conj() - eigenfunction(n, &p, x).unwrap())
                .norm();
            worst = worst.max(dev);
        }
    }
    println!("max |psi_n*(-x) - psi_n(x)| over n <= 8: {worst:.3e}");
}
