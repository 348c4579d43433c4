//! The incidence operator between points of F x F and polynomials of degree
//! below k, with exact spectral verification and deviation bounds.
//!
//! A polynomial f is incident to a point (x, y) when f(x) = y, so the 0/1
//! incidence matrix T has one row per polynomial (the indicator of its
//! graph) and one column per point. Both Gram operators T T* and T* T are
//! convolution operators on the respective additive groups, which is what
//! makes their spectra exactly computable:
//!
//! * point side (T* T on F x F): kernel value Q^(k-1) at the origin,
//!   Q^(k-2) off the origin when the first coordinate moves, 0 otherwise;
//!   eigenvalues Q^k (once), Q^(k-1) (Q(Q-1) times, second frequency
//!   coordinate nonzero), 0 (Q-1 times);
//! * polynomial side (T T* on F^k): kernel value = number of roots of the
//!   difference; eigenvalues Q^k (once), Q^(k-1) (Q(Q-1) times, frequencies
//!   on the moment curve beta * (1, alpha, ..., alpha^(k-1))), 0 (the rest).
//!
//! The verifiers here recompute every eigenvalue by direct convolution of
//! the kernel against the character's value table — no orthogonality
//! shortcut — and compare against the classification above, so a pass is a
//! finite proof for the instance checked. The deviation bounds in
//! [`incidence_bounds`] are exact rationals kept in squared form; nothing
//! in this module rounds.

use crate::chargroup::{
    char_value_table, convolve_dense_int, ga_inner, projection_mass_points,
    projection_mass_polys, Character, ChargroupError, GAElem,
};
use crate::cyclotomic::CycInt;
use crate::gf::{FPoly, FieldSpec, GfError};
use crate::sampling::{cell_rng, sample_distinct_sorted};
use crate::sets::{PointSet, PolySet, SetError};
use num::{BigInt, BigRational};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("polynomial degree bound k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("cannot draw {want} distinct samples from a space of size {have}")]
    SampleTooLarge { want: u64, have: u64 },
    #[error("reconstruction check needs Q^k <= {gate}, got {size}")]
    SvdSizeGate { size: u64, gate: u64 },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Chargroup(#[from] ChargroupError),
}

/// The explicit 0/1 incidence matrix, stored row-sparse: row f lists the
/// Q column (point) indices of the graph of f, position x holding the
/// point (x, f(x)).
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    q: u64,
    k: usize,
    cols: Vec<u64>,
}

impl IncidenceMatrix {
    pub fn build(spec: &FieldSpec, k: usize) -> Result<IncidenceMatrix, IncidenceError> {
        if k < 2 {
            return Err(IncidenceError::KTooSmall(k));
        }
        let q = spec.q();
        let rows = spec.poly_count(k)?;
        spec.check_cap(rows as u128 * q as u128)?;
        let elems: Vec<_> = spec.elements().collect();
        let mut cols = Vec::with_capacity((rows * q) as usize);
        for f in spec.polys(k)? {
            for (xi, x) in elems.iter().enumerate() {
                let y = spec.poly_eval_raw(&f, x);
                cols.push(xi as u64 + q * spec.elem_index(&y));
            }
        }
        Ok(IncidenceMatrix { q, k, cols })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> u64 {
        self.cols.len() as u64 / self.q
    }

    /// Column indices of the points on the graph of row `r`, position x
    /// holding the point above x.
    pub fn row(&self, r: u64) -> &[u64] {
        let q = self.q as usize;
        &self.cols[r as usize * q..(r as usize + 1) * q]
    }

    /// Whether row `r` passes through point column `c`, in O(1): a graph
    /// holds exactly one point above each first coordinate.
    pub fn entry(&self, r: u64, c: u64) -> bool {
        self.row(r)[(c % self.q) as usize] == c
    }

    /// T applied to a vector indexed by points: out(f) = sum of the input
    /// over the graph of f.
    pub fn apply(&self, point_vec: &[CycInt]) -> Vec<CycInt> {
        let p = point_vec[0].p();
        let mut out = Vec::with_capacity(self.rows() as usize);
        for r in 0..self.rows() {
            let mut acc = CycInt::zero(p);
            for &c in self.row(r) {
                acc += &point_vec[c as usize];
            }
            out.push(acc);
        }
        out
    }

    /// T* applied to a vector indexed by polynomials: out(pt) = sum of the
    /// input over the rows through pt.
    pub fn apply_adjoint(&self, poly_vec: &[CycInt]) -> Vec<CycInt> {
        let p = poly_vec[0].p();
        let mut out = vec![CycInt::zero(p); (self.q * self.q) as usize];
        for r in 0..self.rows() {
            for &c in self.row(r) {
                out[c as usize] += &poly_vec[r as usize];
            }
        }
        out
    }

    /// Dot product of two rows by direct intersection of the stored graphs.
    pub fn row_dot(&self, r1: u64, r2: u64) -> u64 {
        self.row(r1)
            .iter()
            .zip(self.row(r2))
            .filter(|(a, b)| a == b)
            .count() as u64
    }

    /// Dot product of two columns by scanning every row.
    pub fn col_dot(&self, c1: u64, c2: u64) -> u64 {
        (0..self.rows())
            .filter(|&r| self.entry(r, c1) && self.entry(r, c2))
            .count() as u64
    }
}

/// Number of incidences I(L, P) = #{(f, pt) in L x P : f passes through pt},
/// computed by evaluating each member of L across P's columns (no explicit
/// matrix; memory stays O(|P| + Q)).
pub fn count_incidences(
    spec: &FieldSpec,
    polys: &PolySet,
    points: &PointSet,
) -> Result<u64, IncidenceError> {
    polys.check(spec)?;
    points.check(spec)?;
    spec.check_cap(polys.len() as u128 * spec.q() as u128)?;
    let q = spec.q();
    let mut ycols: Vec<Vec<u64>> = vec![Vec::new(); q as usize];
    for &pi in points.indices() {
        ycols[(pi % q) as usize].push(pi / q);
    }
    let elems: Vec<_> = spec.elements().collect();
    let mut count = 0u64;
    for f in polys.iter_polys(spec) {
        for (xi, x) in elems.iter().enumerate() {
            let y = spec.poly_eval_raw(&f, x);
            if ycols[xi].binary_search(&spec.elem_index(&y)).is_ok() {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Closed-form point-side Gram entry: the number of polynomials of degree
/// below k through both points. Q^(k-1) on the diagonal, Q^(k-2) when the
/// first coordinates differ (one linear evaluation condition each), 0 when
/// two distinct points share a first coordinate.
pub fn gram_points_entry(
    spec: &FieldSpec,
    k: usize,
    c1: u64,
    c2: u64,
) -> Result<u64, IncidenceError> {
    if k < 2 {
        return Err(IncidenceError::KTooSmall(k));
    }
    let q = spec.q();
    let size = q * q;
    for c in [c1, c2] {
        if c >= size {
            return Err(IncidenceError::Set(SetError::IndexOutOfRange { idx: c, size }));
        }
    }
    let qk2 = q.pow(k as u32 - 2);
    Ok(if c1 == c2 {
        qk2 * q
    } else if c1 % q == c2 % q {
        0
    } else {
        qk2
    })
}

/// Polynomial-side Gram entry: the number of points shared by the graphs of
/// f and g, i.e. the number of roots of f - g.
pub fn gram_polys_entry(spec: &FieldSpec, f: &FPoly, g: &FPoly) -> Result<u64, IncidenceError> {
    let diff = spec.poly_sub(f, g)?;
    Ok(spec.roots_count(&diff))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorSide {
    Points,
    Polys,
}

impl std::fmt::Display for OperatorSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorSide::Points => write!(f, "points"),
            OperatorSide::Polys => write!(f, "polys"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumRow {
    pub eigenvalue: u64,
    pub expected_multiplicity: u64,
    pub observed_multiplicity: u64,
}

/// Result of verifying one Gram operator's full spectrum. `ok()` means
/// every character was an exact eigenvector with the classified eigenvalue,
/// the multiplicities came out right, and the trace identity held.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub side: OperatorSide,
    pub q: u64,
    pub k: usize,
    pub rows: Vec<SpectrumRow>,
    pub characters_checked: u64,
    pub convolution_failures: u64,
    pub classification_failures: u64,
    pub trace_ok: bool,
}

impl SpectrumReport {
    pub fn ok(&self) -> bool {
        self.convolution_failures == 0
            && self.classification_failures == 0
            && self.trace_ok
            && self
                .rows
                .iter()
                .all(|r| r.expected_multiplicity == r.observed_multiplicity)
    }
}

fn run_spectrum(
    spec: &FieldSpec,
    group_dim: usize,
    side: OperatorSide,
    k: usize,
    z_dense: &[i64],
    expect: impl Fn(u64) -> u64 + Sync,
    expected_rows: &[(u64, u64)],
) -> Result<SpectrumReport, IncidenceError> {
    let n = z_dense.len() as u64;
    let z_ga = GAElem::from_entries(
        spec,
        group_dim,
        z_dense.iter().enumerate().map(|(i, &c)| (i as u64, c)),
    )?;
    let per_char: Vec<(Option<i128>, bool)> = (0..n)
        .into_par_iter()
        .map(|ci| -> Result<(Option<i128>, bool), IncidenceError> {
            let chi = Character::from_index(spec, group_dim, ci);
            let table = char_value_table(spec, &chi)?;
            let lambda = ga_inner(spec, &z_ga, &chi)?;
            let conv = convolve_dense_int(spec, group_dim, z_dense, &table)?;
            let conv_ok = conv
                .iter()
                .zip(&table)
                .all(|(w, t)| w == &(&lambda * t));
            Ok((lambda.to_int(), conv_ok))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut convolution_failures = 0u64;
    let mut classification_failures = 0u64;
    let mut trace_sum: i128 = 0;
    for (ci, (lam, conv_ok)) in per_char.iter().enumerate() {
        if !conv_ok {
            convolution_failures += 1;
        }
        match lam {
            Some(l) => {
                trace_sum += l;
                if *l != expect(ci as u64) as i128 {
                    classification_failures += 1;
                }
            }
            None => classification_failures += 1,
        }
    }
    let rows = expected_rows
        .iter()
        .map(|&(ev, mult)| SpectrumRow {
            eigenvalue: ev,
            expected_multiplicity: mult,
            observed_multiplicity: per_char
                .iter()
                .filter(|(lam, _)| *lam == Some(ev as i128))
                .count() as u64,
        })
        .collect();
    let q = spec.q() as i128;
    Ok(SpectrumReport {
        side,
        q: spec.q(),
        k,
        rows,
        characters_checked: n,
        convolution_failures,
        classification_failures,
        trace_ok: trace_sum == q.pow(k as u32 + 1),
    })
}

/// Verifies the spectrum of T* T on the point plane by direct convolution
/// against every character of F x F.
pub fn verify_spectrum_points(spec: &FieldSpec, k: usize) -> Result<SpectrumReport, IncidenceError> {
    if k < 2 {
        return Err(IncidenceError::KTooSmall(k));
    }
    let q = spec.q();
    let n = spec.poly_count(2)?;
    spec.check_cap(n as u128 * n as u128)?;
    let qk = q.pow(k as u32);
    let qk1 = q.pow(k as u32 - 1);
    let qk2 = q.pow(k as u32 - 2);
    let z_dense: Vec<i64> = (0..n)
        .map(|u| {
            if u == 0 {
                qk1 as i64
            } else if u % q != 0 {
                qk2 as i64
            } else {
                0
            }
        })
        .collect();
    run_spectrum(
        spec,
        2,
        OperatorSide::Points,
        k,
        &z_dense,
        |v| {
            if v == 0 {
                qk
            } else if v / q != 0 {
                qk1
            } else {
                0
            }
        },
        &[(qk, 1), (qk1, q * (q - 1)), (0, q - 1)],
    )
}

/// Verifies the spectrum of T T* on the polynomial space by direct
/// convolution of the root-count kernel against every character of F^k.
pub fn verify_spectrum_polys(spec: &FieldSpec, k: usize) -> Result<SpectrumReport, IncidenceError> {
    if k < 2 {
        return Err(IncidenceError::KTooSmall(k));
    }
    let q = spec.q();
    let n = spec.poly_count(k)?;
    spec.check_cap(n as u128 * n as u128)?;
    let qk = q.pow(k as u32);
    let qk1 = q.pow(k as u32 - 1);
    let z_dense: Vec<i64> = spec.polys(k)?.map(|g| spec.roots_count(&g) as i64).collect();
    let on_moment_curve = |vi: u64| -> bool {
        let v = spec.poly_from_index(k, vi);
        let v = v.coeffs();
        if v[0].is_zero() {
            return false;
        }
        let alpha = spec.mul(&v[1], &spec.inv(&v[0]).expect("nonzero"));
        for i in 1..k {
            if v[i] != spec.mul(&v[i - 1], &alpha) {
                return false;
            }
        }
        true
    };
    run_spectrum(
        spec,
        k,
        OperatorSide::Polys,
        k,
        &z_dense,
        |v| {
            if v == 0 {
                qk
            } else if on_moment_curve(v) {
                qk1
            } else {
                0
            }
        },
        &[(qk, 1), (qk1, q * (q - 1)), (0, qk - 1 - q * (q - 1))],
    )
}

/// Result of replaying the singular-value structure of T itself: T fixes
/// the all-ones direction with row sum Q, kills the characters whose second
/// frequency coordinate vanishes, and maps each remaining character to an
/// exact eigenvector of T T* with eigenvalue Q^(k-1) and squared norm
/// Q^(k-1) * Q^2.
#[derive(Debug, Clone)]
pub struct SvdReport {
    pub q: u64,
    pub k: usize,
    pub all_ones_ok: bool,
    pub annihilated_ok: bool,
    pub mid_norm_ok: bool,
    pub mid_eigenvector_ok: bool,
    pub mid_characters: u64,
}

impl SvdReport {
    pub fn ok(&self) -> bool {
        self.all_ones_ok && self.annihilated_ok && self.mid_norm_ok && self.mid_eigenvector_ok
    }
}

const SVD_GATE: u64 = 1 << 12;

/// Applies T to every character of the point plane and checks the three
/// behaviours that make up its singular value decomposition. Dense over
/// Q^k, so gated at Q^k <= 2^12.
pub fn verify_svd_reconstruction(spec: &FieldSpec, k: usize) -> Result<SvdReport, IncidenceError> {
    if k < 2 {
        return Err(IncidenceError::KTooSmall(k));
    }
    let q = spec.q();
    let qk = spec.poly_count(k)?;
    if qk > SVD_GATE {
        return Err(IncidenceError::SvdSizeGate { size: qk, gate: SVD_GATE });
    }
    let p = spec.p();
    let t = IncidenceMatrix::build(spec, k)?;
    let z_dense: Vec<i64> = spec.polys(k)?.map(|g| spec.roots_count(&g) as i64).collect();
    let qk1 = q.pow(k as u32 - 1) as i128;

    let ones = vec![CycInt::one(p); (q * q) as usize];
    let all_ones_ok = t
        .apply(&ones)
        .into_iter()
        .all(|v| v == CycInt::from_int(p, q as i128));

    let results: Vec<(bool, bool, bool)> = (1..q * q)
        .into_par_iter()
        .map(|ci| -> Result<(bool, bool, bool), IncidenceError> {
            let chi = Character::from_index(spec, 2, ci);
            let table = char_value_table(spec, &chi)?;
            let tv = t.apply(&table);
            if ci / q == 0 {
                // second frequency coordinate zero: T must annihilate
                return Ok((tv.iter().all(|v| v.is_zero()), true, true));
            }
            let mut norm = CycInt::zero(p);
            for v in &tv {
                norm += &(v * &v.conj());
            }
            let norm_ok = norm.to_int() == Some(qk1 * (q as i128) * (q as i128));
            let conv = convolve_dense_int(spec, k, &z_dense, &tv)?;
            let eig_ok = conv
                .iter()
                .zip(&tv)
                .all(|(w, v)| w == &v.scale(qk1));
            Ok((true, norm_ok, eig_ok))
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(SvdReport {
        q,
        k,
        all_ones_ok,
        annihilated_ok: results.iter().all(|r| r.0),
        mid_norm_ok: results.iter().all(|r| r.1),
        mid_eigenvector_ok: results.iter().all(|r| r.2),
        mid_characters: q * (q - 1),
    })
}

/// Exact deviation bounds for |I(L, P) - ell * p' / Q| that depend only on
/// the parameters (Q, k, ell, p'), all kept in squared form so that no
/// square root is ever taken:
///
/// * `tight_sq`:  ell p' (Q + ell (k-1)) (1 - 1/Q)
/// * `loose_sq`:  ell p' (Q + ell k)
/// * `vinh_sq` / `vinh_improved_sq` (k = 2 only): ell p' Q and
///   ell p' Q (1 - 1/Q)^2
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceBounds {
    pub main_term: BigRational,
    pub tight_sq: BigRational,
    pub loose_sq: BigRational,
    pub vinh_sq: Option<BigRational>,
    pub vinh_improved_sq: Option<BigRational>,
}

fn rat(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parameter_bounds(
    spec: &FieldSpec,
    k: usize,
    ell: u64,
    n_points: u64,
) -> Result<IncidenceBounds, IncidenceError> {
    if k < 2 {
        return Err(IncidenceError::KTooSmall(k));
    }
    spec.poly_count(k)?;
    let q = spec.q() as i128;
    let ell = ell as i128;
    let pp = n_points as i128;
    let ki = k as i128;
    let (vinh_sq, vinh_improved_sq) = if k == 2 {
        let base = rat(ell * pp * q, 1);
        let shrink = rat((q - 1) * (q - 1), q * q);
        (Some(base.clone()), Some(base * shrink))
    } else {
        (None, None)
    };
    Ok(IncidenceBounds {
        main_term: rat(ell * pp, q),
        tight_sq: rat(ell * pp * (q + ell * (ki - 1)) * (q - 1), q),
        loose_sq: rat(ell * pp * (q + ell * ki), 1),
        vinh_sq,
        vinh_improved_sq,
    })
}

/// The squared Cauchy-Schwarz intermediate the parameter bounds relax:
/// Q^(k-1) * mass_mid(L) * mass_mid(P). Unlike [`parameter_bounds`] this
/// needs the actual sets, through their projection masses.
pub fn cs_bound_sq(
    spec: &FieldSpec,
    polys: &PolySet,
    points: &PointSet,
) -> Result<BigRational, IncidenceError> {
    let k = polys.k();
    if k < 2 {
        return Err(IncidenceError::KTooSmall(k));
    }
    let mass_l = projection_mass_polys(spec, polys)?;
    let mass_p = projection_mass_points(spec, points)?;
    let qk1 = BigRational::from_integer(BigInt::from(spec.q()).pow(k as u32 - 1));
    Ok(qk1 * mass_l.mid * mass_p.mid)
}

/// One fully checked incidence instance: the exact count, the main term,
/// the squared deviation, and which squared bounds contain it.
#[derive(Debug, Clone)]
pub struct IncidenceReport {
    pub q: u64,
    pub k: usize,
    pub ell: u64,
    pub points: u64,
    pub incidences: u64,
    pub main_term: BigRational,
    pub dev_sq: BigRational,
    pub bounds: IncidenceBounds,
    pub cs_sq: BigRational,
    pub ok_tight: bool,
    pub ok_loose: bool,
    pub ok_cs: bool,
    pub ok_vinh: Option<bool>,
    pub ok_vinh_improved: Option<bool>,
}

pub fn incidence_report(
    spec: &FieldSpec,
    polys: &PolySet,
    points: &PointSet,
) -> Result<IncidenceReport, IncidenceError> {
    let incidences = count_incidences(spec, polys, points)?;
    let bounds = parameter_bounds(spec, polys.k(), polys.len(), points.len())?;
    let cs_sq = cs_bound_sq(spec, polys, points)?;
    let dev = BigRational::from_integer(BigInt::from(incidences)) - bounds.main_term.clone();
    let dev_sq = dev.clone() * dev;
    Ok(IncidenceReport {
        q: spec.q(),
        k: polys.k(),
        ell: polys.len(),
        points: points.len(),
        incidences,
        main_term: bounds.main_term.clone(),
        dev_sq: dev_sq.clone(),
        ok_tight: dev_sq <= bounds.tight_sq,
        ok_loose: dev_sq <= bounds.loose_sq,
        ok_cs: dev_sq <= cs_sq,
        ok_vinh: bounds.vinh_sq.as_ref().map(|b| &dev_sq <= b),
        ok_vinh_improved: bounds.vinh_improved_sq.as_ref().map(|b| &dev_sq <= b),
        bounds,
        cs_sq,
    })
}

/// Draws a reproducible random instance: `ell` distinct polynomials, then
/// `n_points` distinct points, from the stream of `(seed, cell)`. The two
/// draws share one stream in that order, so a record is replayed from its
/// seed and cell alone.
pub fn random_instance(
    spec: &FieldSpec,
    k: usize,
    ell: u64,
    n_points: u64,
    seed: u64,
    cell: u64,
) -> Result<(PolySet, PointSet), IncidenceError> {
    let n_polys = spec.poly_count(k)?;
    let plane = spec.q() * spec.q();
    if ell > n_polys {
        return Err(IncidenceError::SampleTooLarge { want: ell, have: n_polys });
    }
    if n_points > plane {
        return Err(IncidenceError::SampleTooLarge { want: n_points, have: plane });
    }
    let mut rng = cell_rng(seed, cell);
    let polys = PolySet::from_indices(spec, k, sample_distinct_sorted(&mut rng, n_polys, ell))?;
    let points = PointSet::from_indices(spec, sample_distinct_sorted(&mut rng, plane, n_points))?;
    Ok((polys, points))
}
