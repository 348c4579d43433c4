//! Closed-form deviation bounds over a small parameter grid, as CSV.
//!
//! For each (ell, p) cell the table lists the main term ell * p / Q and the
//! squared deviation bounds: the sharp one, the weaker all-purpose one, and
//! (for k = 2 only) the classical incidence bound next to its improved form.
//! All columns are exact integers or num/den pairs — paste-ready for any
//! rational-aware tooling.
//!
//! Run with: cargo run --example bounds_table

use incidence_lab::gf::FieldSpec;
use incidence_lab::incidence::parameter_bounds;
use incidence_lab::jsonio::{bounds_csv_header, bounds_csv_row};

fn main() {
    let spec = FieldSpec::new(3, 2).unwrap();
    let q = spec.q();
    println!("{}", bounds_csv_header());
    for k in [2usize, 3] {
        for ell in [1u64, 5, 10, 25] {
            for points in [q, 3 * q, q * q / 2] {
                let b = parameter_bounds(&spec, k, ell, points).unwrap();
                println!("{}", bounds_csv_row(q, k, ell, points, &b));
            }
        }
    }
}
