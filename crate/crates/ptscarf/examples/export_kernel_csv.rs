//! Kernel sample export in the CSV interchange format (columns x, y,
//! re_closed, im_closed, re_abel, im_abel, rel_err; singular-band rows
//! are marked excluded).
//!
//! Run: cargo run --release --example export_kernel_csv -- out.csv

use num_complex::Complex64;
use ptscarf::ckernel::{kernel_abel, kernel_closed, AbelSchedule, KernelPoint};
use ptscarf::report::{kernel_samples_csv, write_atomic, KernelSampleRow};
use ptscarf::scarf::ModelParams;
use ptscarf::specfun::SeriesControl;

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "kernel_samples.csv".into());
    let p = ModelParams::new(Complex64::new(1.0, 0.5)).unwrap();
    let sched = AbelSchedule::default();
    let ctrl = SeriesControl::default();
    let axis: Vec<f64> = (0..9).map(|i| -1.2 + 2.4 * i as f64 / 8.0).collect();
    let mut rows = Vec::new();
    for &x in &axis {
        for &y in &axis {
            let pt = KernelPoint::new(x, y).unwrap();
            if pt.singular_measure() <= 0.1 {
                rows.push(KernelSampleRow::Excluded { x, y });
            } else {
                let closed = kernel_closed(&pt, &p).unwrap();
                let abel = kernel_abel(&pt, &p, &sched, &ctrl).unwrap();
                rows.push(KernelSampleRow::Value {
                    x,
                    y,
                    closed,
                    abel,
                    rel_err: (closed - abel).norm() / abel.norm(),
                });
            }
        }
    }
    write_atomic(std::path::Path::new(&out), kernel_samples_csv(&rows).as_bytes()).unwrap();
    println!("wrote {} rows to {out}", rows.len());
}
