//! The C(x, y) kernel three independent ways: Abel-regularized series,
//! closed hypergeometric form, and the explicit limit series.
//!
//! Run: cargo run --release --example kernel_three_routes

use num_complex::Complex64;
use ptscarf::ckernel::{f4_limit, kernel_abel, kernel_closed, AbelSchedule, KernelPoint};
use ptscarf::scarf::ModelParams;
use ptscarf::specfun::SeriesControl;

fn main() {
    let p = ModelParams::new(Complex64::new(1.0, 0.5)).unwrap();
    let sched = AbelSchedule::default();
    let ctrl = SeriesControl::default();
    for (x, y) in [(0.3, 0.7), (-0.5, 0.2), (1.1, -0.4)] {
        let pt = KernelPoint::new(x, y).unwrap();
        let abel = kernel_abel(&pt, &p, &sched, &ctrl).unwrap();
        let closed = kernel_closed(&pt, &p).unwrap();
        let limit = f4_limit(&pt, &p, &ctrl).unwrap();
        println!("C({x}, {y})  [z = {:.4}]", pt.z());
        println!("  abel   : {abel}");
        println!("  closed : {closed}");
        println!("  limit  : {limit}");
        println!(
            "  closed vs abel rel err: {:.3e}\n",
            (closed - abel).norm() / abel.norm()
        );
    }
}
