//! Fast additive transform vs the quadratic definition, timed head to head.
//!
//! The fast path decimates over the base-p digit structure of F^d and then
//! fixes up the output order through the trace-pairing change of basis; the
//! reference path evaluates the defining double sum. Both produce exact
//! cyclotomic integers, so agreement is literal equality.
//!
//! Run with: cargo run --example dft_bench

use incidence_lab::chargroup::additive_dft;
use incidence_lab::cyclotomic::CycInt;
use incidence_lab::gf::FieldSpec;
use incidence_lab::sampling::{cell_rng, uniform_u64};
use std::time::Instant;

fn naive(spec: &FieldSpec, d: usize, hist: &[i64]) -> Vec<CycInt> {
    (0..hist.len())
        .map(|ui| {
            let u = spec.poly_from_index(d, ui as u64);
            let mut acc = CycInt::zero(spec.p());
            for (xi, &c) in hist.iter().enumerate() {
                let x = spec.poly_from_index(d, xi as u64);
                let mut dot = spec.zero();
                for (uc, xc) in u.coeffs().iter().zip(x.coeffs()) {
                    dot = spec.add(&dot, &spec.mul(uc, xc));
                }
                acc.add_scaled_root(spec.trace(&dot), c as i128);
            }
            acc
        })
        .collect()
}

fn main() {
    println!("{:>6} {:>3} {:>6} {:>12} {:>12} {:>8}", "Q", "d", "n", "fast", "naive", "ratio");
    for (p, m) in [(2u64, 2usize), (3, 2), (2, 4), (5, 2), (3, 3)] {
        let spec = FieldSpec::new(p, m).unwrap();
        let d = 2usize;
        let n = spec.poly_count(d).unwrap() as usize;
        let mut rng = cell_rng(2024, (p << 8) ^ m as u64);
        let hist: Vec<i64> = (0..n).map(|_| uniform_u64(&mut rng, 9) as i64 - 4).collect();

        let t0 = Instant::now();
        let fast = additive_dft(&spec, d, &hist).unwrap();
        let fast_dt = t0.elapsed();
        let t1 = Instant::now();
        let slow = naive(&spec, d, &hist);
        let naive_dt = t1.elapsed();
        assert_eq!(fast, slow);

        println!(
            "{:>6} {:>3} {:>6} {:>12?} {:>12?} {:>7.1}x",
            spec.q(),
            d,
            n,
            fast_dt,
            naive_dt,
            naive_dt.as_secs_f64() / fast_dt.as_secs_f64().max(1e-9),
        );
    }
    println!("\nall transforms agree with the quadratic definition exactly");
}
