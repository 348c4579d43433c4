//! Additive characters of F^k and the integer group algebra that acts on
//! them by convolution.
//!
//! The additive group of F^k is elementary abelian, so its characters are
//! exactly `chi_v(x) = zeta_p^(tr(<v, x>))` for frequency vectors `v` in
//! F^k; all values are exact roots of unity ([`CycInt`]), and all inner
//! products and convolutions here are exact integer/cyclotomic sums. This is
//! the layer where "projection of an indicator onto a character space" turns
//! into counting, via the closed forms in [`projection_mass_points`] and
//! [`projection_mass_polys`] (their naive character-sum counterparts live in
//! the test suite as oracles).
//!
//! [`additive_dft`] evaluates all character sums of a histogram at once by
//! radix-p decimation over the m*d prime-field coordinates; it exists as the
//! fast path for mass and transform checks, not as a replacement for the
//! closed forms.

use crate::cyclotomic::CycInt;
use crate::gf::{FieldElement, FieldSpec, GfError};
use crate::sets::{PointSet, PolySet, SetError};
use num::{BigInt, BigRational};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChargroupError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("histogram length {got} does not match the group size {expected}")]
    BadLength { expected: u64, got: u64 },
    #[error("transforms are implemented for dimensions 1 and 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("index {idx} out of range for a group of size {size}")]
    IndexOutOfRange { idx: u64, size: u64 },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Set(#[from] SetError),
}

/// Index arithmetic for the additive group of F^k: canonical indices are
/// base-p digit strings (m*k digits), and group addition is digitwise
/// addition mod p, so no field context is needed once the layout is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct GroupLayout {
    pub p: u64,
    pub digits: usize,
    pub size: u64,
}

impl GroupLayout {
    pub fn new(spec: &FieldSpec, k: usize) -> Result<GroupLayout, GfError> {
        let size = spec.poly_count(k)?;
        Ok(GroupLayout { p: spec.p(), digits: spec.m() * k, size })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let (mut a, mut b) = (a, b);
        let mut place = 1u64;
        for _ in 0..self.digits {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[cfg(test)]
    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut a = a;
        let mut place = 1u64;
        for _ in 0..self.digits {
            let d = a % self.p;
            out += if d == 0 { 0 } else { self.p - d } * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[cfg(test)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }
}

/// An additive character of F^k, identified by its frequency vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    v: Vec<FieldElement>,
}

impl Character {
    pub fn new(spec: &FieldSpec, v: Vec<FieldElement>) -> Result<Character, ChargroupError> {
        if v.is_empty() {
            return Err(ChargroupError::DimensionMismatch { expected: 1, got: 0 });
        }
        for e in &v {
            spec.validate(e)?;
        }
        Ok(Character { v })
    }

    /// The trivial character (v = 0), constant 1.
    pub fn trivial(spec: &FieldSpec, k: usize) -> Character {
        Character { v: vec![spec.zero(); k] }
    }

    /// The character at position `idx` of the canonical enumeration of F^k.
    pub fn from_index(spec: &FieldSpec, k: usize, idx: u64) -> Character {
        Character { v: spec.poly_from_index(k, idx).coeffs().to_vec() }
    }

    pub fn index(&self, spec: &FieldSpec) -> u64 {
        let mut v = 0u64;
        for e in self.v.iter().rev() {
            v = v * spec.q() + spec.elem_index(e);
        }
        v
    }

    pub fn v(&self) -> &[FieldElement] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.v.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.v.iter().all(|e| e.is_zero())
    }
}

/// tr(<v, x>) as a residue mod p.
fn pairing_exponent(spec: &FieldSpec, v: &[FieldElement], x: &[FieldElement]) -> u64 {
    let mut acc = spec.zero();
    for (a, b) in v.iter().zip(x) {
        acc = spec.add(&acc, &spec.mul(a, b));
    }
    spec.trace(&acc)
}

/// chi_v(x) = zeta_p^(tr(<v, x>)), exactly.
pub fn char_eval(
    spec: &FieldSpec,
    chi: &Character,
    x: &[FieldElement],
) -> Result<CycInt, ChargroupError> {
    if chi.k() != x.len() {
        return Err(ChargroupError::DimensionMismatch { expected: chi.k(), got: x.len() });
    }
    for e in chi.v().iter().chain(x) {
        spec.validate(e)?;
    }
    Ok(CycInt::root_power(spec.p(), pairing_exponent(spec, chi.v(), x)))
}

/// The exponent table of a character over all of F^k: entry `g` is
/// tr(<v, g>) mod p, indexed canonically. The value table is recovered as
/// `zeta^exp`, but most consumers only need the exponents.
pub fn char_exponent_table(spec: &FieldSpec, chi: &Character) -> Result<Vec<u64>, ChargroupError> {
    let k = chi.k();
    let n = spec.poly_count(k)?;
    let q = spec.q();
    // Per coordinate, the trace pairing against every field element.
    let mut coord: Vec<Vec<u64>> = Vec::with_capacity(k);
    for vi in chi.v() {
        spec.validate(vi)?;
        let table: Vec<u64> = spec
            .elements()
            .map(|e| spec.trace(&spec.mul(vi, &e)))
            .collect();
        coord.push(table);
    }
    let p = spec.p();
    let mut out = Vec::with_capacity(n as usize);
    for idx in 0..n {
        let mut rest = idx;
        let mut e = 0u64;
        for table in coord.iter() {
            e += table[(rest % q) as usize];
            rest /= q;
        }
        out.push(e % p);
    }
    Ok(out)
}

/// The full value table of a character over F^k in canonical order.
pub fn char_value_table(spec: &FieldSpec, chi: &Character) -> Result<Vec<CycInt>, ChargroupError> {
    let p = spec.p();
    Ok(char_exponent_table(spec, chi)?
        .into_iter()
        .map(|e| CycInt::root_power(p, e))
        .collect())
}

/// Sum over F^k of chi1(x) * conj(chi2(x)): Q^k when the characters are
/// equal, 0 otherwise. Computed honestly from exponent sums, not from the
/// orthogonality theorem.
pub fn char_inner(
    spec: &FieldSpec,
    chi1: &Character,
    chi2: &Character,
) -> Result<CycInt, ChargroupError> {
    if chi1.k() != chi2.k() {
        return Err(ChargroupError::DimensionMismatch { expected: chi1.k(), got: chi2.k() });
    }
    let p = spec.p();
    let e1 = char_exponent_table(spec, chi1)?;
    let e2 = char_exponent_table(spec, chi2)?;
    let mut acc = CycInt::zero(p);
    for (&a, &b) in e1.iter().zip(&e2) {
        acc.add_scaled_root((a + p - b) % p, 1);
    }
    Ok(acc)
}

/// All Q^k characters of F^k in canonical frequency order.
pub fn characters<'a>(
    spec: &'a FieldSpec,
    k: usize,
) -> Result<impl Iterator<Item = Character> + 'a, ChargroupError> {
    let n = spec.poly_count(k)?;
    Ok((0..n).map(move |i| Character::from_index(spec, k, i)))
}

/// The frequency vector beta * (1, alpha, alpha^2, ..., alpha^(k-1)).
///
/// These vectors (together with 0) are exactly the frequencies whose
/// characters act on polynomial coefficient vectors through a single
/// evaluation point: <v, f> = beta * f(alpha).
pub fn moment_curve_vector(
    spec: &FieldSpec,
    k: usize,
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<Vec<FieldElement>, ChargroupError> {
    spec.validate(alpha)?;
    spec.validate(beta)?;
    let mut v = Vec::with_capacity(k);
    let mut pw = spec.one();
    for _ in 0..k {
        v.push(spec.mul(beta, &pw));
        pw = spec.mul(&pw, alpha);
    }
    Ok(v)
}

/// A sparse element of the integer group algebra Z[F^k], keyed by canonical
/// indices of F^k. Coefficients stay integers in production code; character
/// value tables (cyclotomic coefficients) are handled as plain vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GAElem {
    p: u64,
    m: usize,
    k: usize,
    size: u64,
    coeffs: BTreeMap<u64, i64>,
}

impl GAElem {
    pub fn zero(spec: &FieldSpec, k: usize) -> Result<GAElem, ChargroupError> {
        let size = spec.poly_count(k)?;
        Ok(GAElem { p: spec.p(), m: spec.m(), k, size, coeffs: BTreeMap::new() })
    }

    /// The delta element at one group index.
    pub fn delta(spec: &FieldSpec, k: usize, idx: u64) -> Result<GAElem, ChargroupError> {
        let mut z = GAElem::zero(spec, k)?;
        z.set(idx, 1)?;
        Ok(z)
    }

    /// Accumulates entries (duplicate indices add up; zeros are dropped).
    pub fn from_entries(
        spec: &FieldSpec,
        k: usize,
        entries: impl IntoIterator<Item = (u64, i64)>,
    ) -> Result<GAElem, ChargroupError> {
        let mut z = GAElem::zero(spec, k)?;
        for (idx, c) in entries {
            let cur = z.get(idx);
            z.set(idx, cur + c)?;
        }
        Ok(z)
    }

    /// The 0/1 indicator of a polynomial set.
    pub fn indicator(spec: &FieldSpec, set: &PolySet) -> Result<GAElem, ChargroupError> {
        set.check(spec)?;
        GAElem::from_entries(spec, set.k(), set.indices().iter().map(|&i| (i, 1)))
    }

    pub fn set(&mut self, idx: u64, c: i64) -> Result<(), ChargroupError> {
        if idx >= self.size {
            return Err(ChargroupError::IndexOutOfRange { idx, size: self.size });
        }
        if c == 0 {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
        Ok(())
    }

    pub fn get(&self, idx: u64) -> i64 {
        self.coeffs.get(&idx).copied().unwrap_or(0)
    }

    /// Nonzero entries in ascending index order.
    pub fn support(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn group_size(&self) -> u64 {
        self.size
    }

    fn compat(&self, other: &GAElem) -> Result<(), ChargroupError> {
        if self.p == other.p && self.m == other.m && self.k == other.k {
            Ok(())
        } else {
            Err(ChargroupError::DimensionMismatch { expected: self.k, got: other.k })
        }
    }

    fn compat_spec(&self, spec: &FieldSpec) -> Result<(), ChargroupError> {
        if self.p == spec.p() && self.m == spec.m() {
            Ok(())
        } else {
            Err(ChargroupError::Field(GfError::SpecMismatch { p: spec.p(), m: spec.m() }))
        }
    }
}

/// Convolution product in the group algebra:
/// `(z * a)(g) = sum_h z(g - h) a(h)` — the matrix of "multiply by z"
/// applied to `a`.
pub fn convolve(spec: &FieldSpec, z: &GAElem, a: &GAElem) -> Result<GAElem, ChargroupError> {
    z.compat_spec(spec)?;
    z.compat(a)?;
    let layout = GroupLayout::new(spec, z.k())?;
    let mut out = GAElem::zero(spec, z.k())?;
    for (s, zc) in z.support() {
        for (h, ac) in a.support() {
            let g = layout.add(s, h);
            let cur = out.get(g);
            out.set(g, cur + zc * ac)?;
        }
    }
    Ok(out)
}

/// Convolution of an integer vector against a cyclotomic value table, both
/// dense over F^k in canonical order: `out[g] = sum_h z[g - h] * table[h]`.
/// This is how the spectrum checks apply a multiplication operator to a
/// character's value table.
pub fn convolve_dense_int(
    spec: &FieldSpec,
    k: usize,
    z: &[i64],
    table: &[CycInt],
) -> Result<Vec<CycInt>, ChargroupError> {
    let layout = GroupLayout::new(spec, k)?;
    if z.len() as u64 != layout.size {
        return Err(ChargroupError::BadLength { expected: layout.size, got: z.len() as u64 });
    }
    if table.len() as u64 != layout.size {
        return Err(ChargroupError::BadLength { expected: layout.size, got: table.len() as u64 });
    }
    let p = spec.p();
    let mut out = vec![CycInt::zero(p); table.len()];
    for (s, &zc) in z.iter().enumerate() {
        if zc == 0 {
            continue;
        }
        for (h, val) in table.iter().enumerate() {
            out[layout.add(s as u64, h as u64) as usize].add_mul_int(val, zc as i128);
        }
    }
    Ok(out)
}

/// Inner product of a group-algebra element against a character:
/// `<a, chi> = sum_x a(x) * conj(chi(x))`.
pub fn ga_inner(spec: &FieldSpec, a: &GAElem, chi: &Character) -> Result<CycInt, ChargroupError> {
    a.compat_spec(spec)?;
    if a.k() != chi.k() {
        return Err(ChargroupError::DimensionMismatch { expected: a.k(), got: chi.k() });
    }
    let p = spec.p();
    let mut acc = CycInt::zero(p);
    for (idx, c) in a.support() {
        let x = spec.poly_from_index(a.k(), idx);
        let e = pairing_exponent(spec, chi.v(), x.coeffs());
        acc.add_scaled_root((p - e) % p, c as i128);
    }
    Ok(acc)
}

/// Exact squared projection masses of an indicator vector: `trivial` is the
/// mass on the constant character direction, `mid` the total mass on the
/// remaining character directions that the incidence operator keeps (second
/// frequency coordinate nonzero for points; all nontrivial frequencies for
/// polynomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMasses {
    pub trivial: BigRational,
    pub mid: BigRational,
}

/// Projection masses of a point set P inside F x F, by the closed form
/// `mid = |P| - (1/Q) * sum_x c_x^2` with `c_x` the column histogram
/// (points of P above first coordinate x), and `trivial = |P|^2 / Q^2`.
pub fn projection_mass_points(
    spec: &FieldSpec,
    points: &PointSet,
) -> Result<ProjectionMasses, ChargroupError> {
    points.check(spec)?;
    let q = spec.q();
    let mut col = vec![0u64; q as usize];
    for &idx in points.indices() {
        col[(idx % q) as usize] += 1;
    }
    let sum_sq: i128 = col.iter().map(|&c| (c as i128) * (c as i128)).sum();
    let n = points.len() as i128;
    let q = q as i128;
    Ok(ProjectionMasses {
        trivial: ratio(n * n, q * q),
        mid: ratio(q * n - sum_sq, q),
    })
}

/// Projection masses of a polynomial set L inside F^k[x], by the closed form
/// `mid = Q^(1-k) * (sum_(alpha,y) c_(alpha,y)^2 - |L|^2)` with `c_(alpha,y)`
/// counting members of L through the point (alpha, y), and
/// `trivial = |L|^2 / Q^k`.
///
/// Both fields are squared projection norms. In particular the trivial mass
/// is `|L|^2 / Q^k`, not the unsquared `|L| / Q^(k/2)` — the two are easy to
/// conflate since only the squared form stays rational for every field size.
pub fn projection_mass_polys(
    spec: &FieldSpec,
    polys: &PolySet,
) -> Result<ProjectionMasses, ChargroupError> {
    polys.check(spec)?;
    let q = spec.q();
    let k = polys.k();
    spec.check_cap((q as u128) * (q as u128))?;
    let elems: Vec<FieldElement> = spec.elements().collect();
    let mut counts = vec![0u32; (q * q) as usize];
    for f in polys.iter_polys(spec) {
        for (ai, alpha) in elems.iter().enumerate() {
            let y = spec.poly_eval_raw(&f, alpha);
            counts[ai * q as usize + spec.elem_index(&y) as usize] += 1;
        }
    }
    let sum_sq: i128 = counts.iter().map(|&c| (c as i128) * (c as i128)).sum();
    let ell = polys.len() as i128;
    let qk1 = (q as i128).pow(k as u32 - 1);
    Ok(ProjectionMasses {
        trivial: ratio(ell * ell, qk1 * q as i128),
        mid: ratio(sum_sq - ell * ell, qk1),
    })
}

fn ratio(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// All character sums of an integer histogram over F^d at once:
/// `out[u] = sum_x hist[x] * zeta^(tr(<u, x>))`, canonical indexing on both
/// sides, for d in {1, 2}.
///
/// Runs as a radix-p decimation over the m*d prime-field coordinates against
/// the standard digit pairing, followed by the index permutation that turns
/// the digit pairing into the trace pairing (the Gram matrix of the trace
/// form on the power basis is invertible because the extension is
/// separable). Cost is O(Q^d * md * p^2) root-rotations instead of the
/// naive Q^(2d) field pairings.
pub fn additive_dft(
    spec: &FieldSpec,
    d: usize,
    hist: &[i64],
) -> Result<Vec<CycInt>, ChargroupError> {
    if d == 0 || d > 2 {
        return Err(ChargroupError::UnsupportedDimension(d));
    }
    let n = spec.poly_count(d)? as usize;
    if hist.len() != n {
        return Err(ChargroupError::BadLength { expected: n as u64, got: hist.len() as u64 });
    }
    let p = spec.p();
    let m = spec.m();
    let md = m * d;

    // Trace of each power-basis product: tau[s] = tr(t^s), s <= 2m-2.
    let gen = if m == 1 { spec.one() } else { spec.elem_from_index(p) };
    let mut tau = vec![0u64; 2 * m - 1];
    let mut pw = spec.one();
    for t in tau.iter_mut() {
        *t = spec.trace(&pw);
        pw = spec.mul(&pw, &gen);
    }

    // Decimation along each prime-field coordinate.
    let mut cur: Vec<CycInt> = hist.iter().map(|&c| CycInt::from_int(p, c as i128)).collect();
    let mut nxt = vec![CycInt::zero(p); n];
    let mut stride = 1usize;
    for _axis in 0..md {
        let block = stride * p as usize;
        for base in (0..n).step_by(block) {
            for off in 0..stride {
                for j in 0..p as usize {
                    let mut acc = CycInt::zero(p);
                    for t in 0..p as usize {
                        acc.add_rotated(&cur[base + off + t * stride], (j * t) as u64 % p);
                    }
                    nxt[base + off + j * stride] = acc;
                }
            }
        }
        std::mem::swap(&mut cur, &mut nxt);
        stride *= p as usize;
    }

    // out[u] = transformed[M u], where M is the block-diagonal Gram matrix
    // of the trace pairing on base-p digits.
    let mut out = vec![CycInt::zero(p); n];
    let mut seen = vec![false; n];
    for (u, slot) in out.iter_mut().enumerate() {
        let mut digits = vec![0u64; md];
        let mut rest = u as u64;
        for dd in digits.iter_mut() {
            *dd = rest % p;
            rest /= p;
        }
        let mut w = 0u64;
        let mut place = 1u64;
        for r in 0..md {
            let (comp, a) = (r / m, r % m);
            let mut s = 0u64;
            for b in 0..m {
                s += tau[a + b] * digits[comp * m + b];
            }
            w += (s % p) * place;
            place *= p;
        }
        debug_assert!(!seen[w as usize], "trace pairing must be nondegenerate");
        seen[w as usize] = true;
        *slot = cur[w as usize].clone();
    }
    Ok(out)
}
