//! Flat JSON records for the line-oriented outputs.
//!
//! Every rational value is emitted as a `<key>_num` / `<key>_den` pair of
//! plain JSON integers (arbitrary width, via the arbitrary-precision number
//! support), never as a float and never as a string, so downstream tooling
//! can reproduce every comparison exactly. The CSV emitted for bound tables
//! carries the same integer columns.

use crate::incidence::{IncidenceBounds, IncidenceReport, SpectrumReport, SvdReport};
use crate::reed_solomon::{CertifyReport, SearchMode};
use num::{BigInt, BigRational};
use serde_json::{Map, Number, Value};
use std::str::FromStr;

/// An arbitrary-width integer as a JSON number.
pub fn big_int_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer is a JSON number"))
}

/// Inserts `<key>_num` and `<key>_den` for an exact rational.
pub fn put_rational(map: &mut Map<String, Value>, key: &str, r: &BigRational) {
    map.insert(format!("{key}_num"), big_int_value(r.numer()));
    map.insert(format!("{key}_den"), big_int_value(r.denom()));
}

/// One sweep / verification record for an incidence instance. `seed` and
/// `cell` echo how the instance was drawn, when it was drawn at random.
pub fn incidence_record(rep: &IncidenceReport, seed: Option<u64>, cell: Option<u64>) -> Value {
    let mut m = Map::new();
    m.insert("Q".into(), rep.q.into());
    m.insert("k".into(), (rep.k as u64).into());
    m.insert("ell".into(), rep.ell.into());
    m.insert("p".into(), rep.points.into());
    m.insert("I".into(), rep.incidences.into());
    if let Some(s) = seed {
        m.insert("seed".into(), s.into());
    }
    if let Some(c) = cell {
        m.insert("cell".into(), c.into());
    }
    put_rational(&mut m, "main", &rep.main_term);
    put_rational(&mut m, "dev_sq", &rep.dev_sq);
    put_rational(&mut m, "tight_sq", &rep.bounds.tight_sq);
    put_rational(&mut m, "loose_sq", &rep.bounds.loose_sq);
    put_rational(&mut m, "cs_sq", &rep.cs_sq);
    if let Some(v) = &rep.bounds.vinh_sq {
        put_rational(&mut m, "vinh_sq", v);
    }
    if let Some(v) = &rep.bounds.vinh_improved_sq {
        put_rational(&mut m, "vinh_improved_sq", v);
    }
    m.insert("ok_tight".into(), rep.ok_tight.into());
    m.insert("ok_loose".into(), rep.ok_loose.into());
    m.insert("ok_cs".into(), rep.ok_cs.into());
    if let Some(b) = rep.ok_vinh {
        m.insert("ok_vinh".into(), b.into());
    }
    if let Some(b) = rep.ok_vinh_improved {
        m.insert("ok_vinh_improved".into(), b.into());
    }
    Value::Object(m)
}

/// One row of the closed-form bound table.
pub fn bounds_record(q: u64, k: usize, ell: u64, points: u64, b: &IncidenceBounds) -> Value {
    let mut m = Map::new();
    m.insert("Q".into(), q.into());
    m.insert("k".into(), (k as u64).into());
    m.insert("ell".into(), ell.into());
    m.insert("p".into(), points.into());
    put_rational(&mut m, "main", &b.main_term);
    put_rational(&mut m, "tight_sq", &b.tight_sq);
    put_rational(&mut m, "loose_sq", &b.loose_sq);
    if let Some(v) = &b.vinh_sq {
        put_rational(&mut m, "vinh_sq", v);
    }
    if let Some(v) = &b.vinh_improved_sq {
        put_rational(&mut m, "vinh_improved_sq", v);
    }
    Value::Object(m)
}

pub fn bounds_csv_header() -> String {
    "Q,k,ell,p,main_num,main_den,tight_sq_num,tight_sq_den,loose_sq_num,loose_sq_den,\
     vinh_sq_num,vinh_sq_den,vinh_improved_sq_num,vinh_improved_sq_den"
        .replace(' ', "")
}

pub fn bounds_csv_row(q: u64, k: usize, ell: u64, points: u64, b: &IncidenceBounds) -> String {
    let pair = |r: &BigRational| format!("{},{}", r.numer(), r.denom());
    let opt = |r: &Option<BigRational>| match r {
        Some(v) => pair(v),
        None => ",".into(),
    };
    format!(
        "{q},{k},{ell},{points},{},{},{},{}",
        pair(&b.main_term),
        pair(&b.tight_sq),
        pair(&b.loose_sq),
        format_args!("{},{}", opt(&b.vinh_sq), opt(&b.vinh_improved_sq)),
    )
}

/// One spectrum verification record (one line per operator side).
pub fn spectrum_record(rep: &SpectrumReport) -> Value {
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("eigenvalue".into(), r.eigenvalue.into());
            m.insert("expected_multiplicity".into(), r.expected_multiplicity.into());
            m.insert("observed_multiplicity".into(), r.observed_multiplicity.into());
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("Q".into(), rep.q.into());
    m.insert("k".into(), (rep.k as u64).into());
    m.insert("side".into(), rep.side.to_string().into());
    m.insert("characters_checked".into(), rep.characters_checked.into());
    m.insert("convolution_failures".into(), rep.convolution_failures.into());
    m.insert("classification_failures".into(), rep.classification_failures.into());
    m.insert("trace_ok".into(), rep.trace_ok.into());
    m.insert("rows".into(), Value::Array(rows));
    m.insert("ok".into(), rep.ok().into());
    Value::Object(m)
}

pub fn svd_record(rep: &SvdReport) -> Value {
    let mut m = Map::new();
    m.insert("Q".into(), rep.q.into());
    m.insert("k".into(), (rep.k as u64).into());
    m.insert("all_ones_ok".into(), rep.all_ones_ok.into());
    m.insert("annihilated_ok".into(), rep.annihilated_ok.into());
    m.insert("mid_norm_ok".into(), rep.mid_norm_ok.into());
    m.insert("mid_eigenvector_ok".into(), rep.mid_eigenvector_ok.into());
    m.insert("mid_characters".into(), rep.mid_characters.into());
    m.insert("ok".into(), rep.ok().into());
    Value::Object(m)
}

pub fn certify_record(rep: &CertifyReport) -> Value {
    let mut m = Map::new();
    m.insert("Q".into(), rep.q.into());
    m.insert("n".into(), rep.n.into());
    m.insert("k".into(), (rep.k as u64).into());
    m.insert("ell".into(), rep.ell.into());
    put_rational(&mut m, "eps", &rep.eps);
    put_rational(&mut m, "rate", &rep.rate);
    match rep.mode {
        SearchMode::Random { seed, trials } => {
            m.insert("mode".into(), "random".into());
            m.insert("seed".into(), seed.into());
            m.insert("trials".into(), trials.into());
        }
        SearchMode::Exhaustive => {
            m.insert("mode".into(), "exhaustive".into());
        }
    }
    m.insert("lists_checked".into(), rep.lists_checked.into());
    put_rational(&mut m, "min_avg_radius", &rep.min_avg_radius);
    m.insert("min_total_mismatches".into(), rep.min_total_mismatches.into());
    m.insert(
        "witness_polys".into(),
        Value::Array(rep.witness_polys.iter().map(|&i| i.into()).collect()),
    );
    m.insert(
        "witness_center".into(),
        Value::Array(rep.witness_center.iter().map(|&i| i.into()).collect()),
    );
    put_rational(&mut m, "margin", &rep.margin);
    m.insert("violated".into(), rep.violated.into());
    Value::Object(m)
}

/// One transform benchmark record.
pub fn dft_record(q: u64, d: usize, trial: u64, fast_ns: u128, naive_ns: u128, equal: bool) -> Value {
    let mut m = Map::new();
    m.insert("Q".into(), q.into());
    m.insert("d".into(), (d as u64).into());
    m.insert("trial".into(), trial.into());
    m.insert("fast_ns".into(), big_int_value(&BigInt::from(fast_ns)));
    m.insert("naive_ns".into(), big_int_value(&BigInt::from(naive_ns)));
    m.insert("equal".into(), equal.into());
    Value::Object(m)
}
