//! Exact verification laboratory for incidences between plane points and
//! low-degree polynomial graphs over finite fields.
//!
//! Everything computes exactly: field elements of GF(p^m) in [`gf`],
//! cyclotomic integers of Z[zeta_p] in [`cyclotomic`] as the value domain
//! for character sums, and arbitrary-precision rationals for masses,
//! bounds, and decoding radii. No check in this crate tolerates rounding —
//! every comparison is a literal equality or an exact rational inequality.
//!
//! The pieces, bottom up:
//!
//! - [`gf`]: GF(p^m) arithmetic with canonical integer indices for elements,
//!   coefficient vectors, and plane points.
//! - [`cyclotomic`]: Z[zeta_p] on the reduced power basis.
//! - [`sets`]: validated, deduplicated polynomial and point sets.
//! - [`chargroup`]: additive characters of F^k, group-algebra convolution,
//!   projection masses, and the fast additive transform.
//! - [`incidence`]: the polynomials-by-points incidence operator, its exact
//!   spectra and singular structure, and the squared deviation bounds.
//! - [`reed_solomon`]: Reed-Solomon encoding plus the average-radius
//!   list-decoding certifier (random or exhaustive search).
//! - [`sampling`]: splitmix-keyed ChaCha12 streams; every randomized routine
//!   is bit-reproducible given (seed, cell).
//! - [`jsonio`]: flat JSONL/CSV records with exact `_num`/`_den` rational
//!   fields.
//!
//! Each capability has a runnable demo under `examples/`: `verify_spectrum`,
//! `incidence_sweep`, `bounds_table`, `certify_rs`, `dft_bench`, and
//! `svd_reconstruction`. The `incidence-lab` binary exposes the same entry
//! points as subcommands for scripted use.

pub mod chargroup;
pub mod cyclotomic;
pub mod gf;
pub mod incidence;
pub mod jsonio;
pub mod reed_solomon;
pub mod sampling;
pub mod sets;
