//! Exact arithmetic in GF(p^m) with canonical enumerations.
//!
//! A [`FieldSpec`] fixes the prime `p`, the extension degree `m`, and a
//! deterministic monic irreducible modulus, and owns every operation on
//! elements and low-degree polynomials. Elements are plain coefficient
//! vectors over the prime subfield; they carry no back-reference to their
//! field, so all context flows through the `FieldSpec` explicitly. Two
//! fields with the same `(p, m)` always pick the same modulus, which is what
//! makes element indices stable across runs.
//!
//! Everything here is sized for desk-scale verification work: enumerations
//! are capped (default `2^24` items per operation), arithmetic is exact, and
//! there is no probabilistic machinery anywhere.

use thiserror::Error;

/// Default bound on the length of any single enumeration (`Q^k`, `Q^2`, ...).
pub const DEFAULT_SIZE_CAP: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("enumeration of length {len} exceeds the size cap {cap}")]
    SizeCapExceeded { len: u128, cap: u64 },
    #[error("element or polynomial does not belong to GF({p}^{m})")]
    SpecMismatch { p: u64, m: usize },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
}

/// An element of GF(p^m): `m` residues mod p, `coeffs[i]` multiplying `t^i`
/// where `t` is the class of `x` modulo the field's modulus.
///
/// Elements are only meaningful relative to the [`FieldSpec`] that produced
/// them. Cross-field misuse is caught structurally (wrong length or residue
/// range); two distinct fields with identical `(p, m)` share representations
/// by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    /// Coefficients over the prime subfield, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}t^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// A polynomial of degree `< k` over the field, stored as exactly `k`
/// coefficients with `coeffs[i]` on `x^i` (zero-padded).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FPoly {
    coeffs: Vec<FieldElement>,
}

impl FPoly {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// The fixed coefficient count `k` (not the degree).
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }
}

impl std::fmt::Display for FPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            parts.push(match i {
                0 => cs,
                1 if cs == "1" => "x".to_string(),
                1 => format!("{cs}x"),
                _ if cs == "1" => format!("x^{i}"),
                _ => format!("{cs}x^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A finite field GF(p^m) with its deterministic modulus and size cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Monic modulus of degree m, constant term first, length m+1.
    modulus: Vec<u64>,
    q: u64,
    cap: u64,
}

impl FieldSpec {
    /// Builds GF(p^m) with the default size cap.
    ///
    /// The modulus is the lexicographically smallest monic irreducible of
    /// degree `m` over GF(p), comparing coefficient vectors from the
    /// constant term up, so the same `(p, m)` always yields the same field.
    /// For `m = 1` the modulus is `x` and elements are plain residues.
    pub fn new(p: u64, m: usize) -> Result<FieldSpec, GfError> {
        FieldSpec::with_cap(p, m, DEFAULT_SIZE_CAP)
    }

    /// Same as [`FieldSpec::new`] with an explicit size cap; `p^m` itself
    /// must stay within the cap.
    pub fn with_cap(p: u64, m: usize, cap: u64) -> Result<FieldSpec, GfError> {
        if !is_prime_u64(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::DegreeZero);
        }
        let q = (p as u128).checked_pow(m as u32).ok_or(GfError::SizeCapExceeded {
            len: u128::MAX,
            cap,
        })?;
        if q > cap as u128 {
            return Err(GfError::SizeCapExceeded { len: q, cap });
        }
        let modulus = smallest_irreducible(p, m);
        Ok(FieldSpec { p, m, modulus, q: q as u64, cap })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The field order Q = p^m.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus coefficients, constant term first (length m+1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size_cap(&self) -> u64 {
        self.cap
    }

    /// Errors unless `len` fits under this field's size cap.
    pub fn check_cap(&self, len: u128) -> Result<(), GfError> {
        if len > self.cap as u128 {
            Err(GfError::SizeCapExceeded { len, cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn mismatch(&self) -> GfError {
        GfError::SpecMismatch { p: self.p, m: self.m }
    }

    /// Checks that an element structurally belongs to this field.
    pub fn validate(&self, a: &FieldElement) -> Result<(), GfError> {
        if a.coeffs.len() == self.m && a.coeffs.iter().all(|&c| c < self.p) {
            Ok(())
        } else {
            Err(self.mismatch())
        }
    }

    pub fn validate_poly(&self, f: &FPoly) -> Result<(), GfError> {
        for c in &f.coeffs {
            self.validate(c)?;
        }
        Ok(())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    /// The prime-subfield element with residue `r` (reduced mod p).
    pub fn scalar(&self, r: u64) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = r % self.p;
        FieldElement { coeffs }
    }

    /// Builds an element from explicit coefficients (length m, residues < p).
    pub fn elem(&self, coeffs: Vec<u64>) -> Result<FieldElement, GfError> {
        let e = FieldElement { coeffs };
        self.validate(&e)?;
        Ok(e)
    }

    /// The element at position `i` of the canonical enumeration: base-p
    /// digits of `i`, least significant digit = constant coefficient.
    pub fn elem_from_index(&self, i: u64) -> FieldElement {
        assert!(i < self.q, "element index {i} out of range for field of order {}", self.q);
        let mut coeffs = vec![0; self.m];
        let mut v = i;
        for c in coeffs.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        FieldElement { coeffs }
    }

    /// Position of `a` in the canonical enumeration (inverse of
    /// [`FieldSpec::elem_from_index`]); also the canonical order used for
    /// tie-breaking wherever a deterministic choice of element is needed.
    pub fn elem_index(&self, a: &FieldElement) -> u64 {
        let mut v = 0u64;
        for &c in a.coeffs.iter().rev() {
            v = v * self.p + c;
        }
        v
    }

    /// All field elements in canonical order (length Q, starts at zero).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.elem_from_index(i))
    }

    // ---- element arithmetic ------------------------------------------------

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(self.validate(a).is_ok() && self.validate(b).is_ok());
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        debug_assert!(self.validate(a).is_ok());
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(self.validate(a).is_ok() && self.validate(b).is_ok());
        let m = self.m;
        if m == 1 {
            return FieldElement {
                coeffs: vec![mulmod(a.coeffs[0], b.coeffs[0], self.p)],
            };
        }
        // Schoolbook product, then reduction by the monic modulus.
        let mut buf = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..m {
                // x^i = x^(i-m) * x^m = -x^(i-m) * (modulus - x^m)
                let sub = mulmod(c, self.modulus[j], self.p);
                buf[i - m + j] = (buf[i - m + j] + self.p - sub) % self.p;
            }
        }
        buf.truncate(m);
        FieldElement { coeffs: buf }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, via a^(Q-2).
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::InverseOfZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Frobenius map a -> a^p.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// Trace onto the prime subfield: tr(a) = a + a^p + ... + a^(p^(m-1)),
    /// returned as a residue mod p.
    pub fn trace(&self, a: &FieldElement) -> u64 {
        let mut acc = a.clone();
        let mut t = a.clone();
        for _ in 1..self.m {
            t = self.frobenius(&t);
            acc = self.add(&acc, &t);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace landed outside the prime subfield");
        acc.coeffs[0]
    }

    /// Trace of every element, indexed by canonical element index.
    pub fn trace_table(&self) -> Vec<u64> {
        self.elements().map(|a| self.trace(&a)).collect()
    }

    // ---- polynomials of degree < k -----------------------------------------

    /// Number of polynomials of degree < k, after checking it against the cap.
    pub fn poly_count(&self, k: usize) -> Result<u64, GfError> {
        let n = (self.q as u128).checked_pow(k as u32).ok_or(GfError::SizeCapExceeded {
            len: u128::MAX,
            cap: self.cap,
        })?;
        self.check_cap(n)?;
        Ok(n as u64)
    }

    /// Wraps explicit coefficients (length = k) as a polynomial.
    pub fn poly(&self, coeffs: Vec<FieldElement>) -> Result<FPoly, GfError> {
        if coeffs.is_empty() {
            return Err(self.mismatch());
        }
        let f = FPoly { coeffs };
        self.validate_poly(&f)?;
        Ok(f)
    }

    /// The polynomial at position `i` of the canonical enumeration: base-Q
    /// digits of `i`, least significant digit = constant coefficient.
    pub fn poly_from_index(&self, k: usize, i: u64) -> FPoly {
        let mut coeffs = Vec::with_capacity(k);
        let mut v = i;
        for _ in 0..k {
            coeffs.push(self.elem_from_index(v % self.q));
            v /= self.q;
        }
        assert!(v == 0, "polynomial index out of range");
        FPoly { coeffs }
    }

    pub fn poly_index(&self, f: &FPoly) -> u64 {
        let mut v = 0u64;
        for c in f.coeffs.iter().rev() {
            v = v * self.q + self.elem_index(c);
        }
        v
    }

    /// All polynomials of degree < k in canonical order (length Q^k).
    pub fn polys(&self, k: usize) -> Result<impl Iterator<Item = FPoly> + '_, GfError> {
        let n = self.poly_count(k)?;
        Ok((0..n).map(move |i| self.poly_from_index(k, i)))
    }

    /// All points (x, y) of the affine plane F x F in canonical order
    /// (length Q^2, x least significant).
    pub fn points(&self) -> Result<impl Iterator<Item = (FieldElement, FieldElement)> + '_, GfError> {
        let n = (self.q as u128) * (self.q as u128);
        self.check_cap(n)?;
        Ok((0..n as u64).map(move |i| self.point_from_index(i)))
    }

    /// Canonical index of the point (x, y): `idx(x) + Q * idx(y)`.
    pub fn point_index(&self, x: &FieldElement, y: &FieldElement) -> u64 {
        self.elem_index(x) + self.q * self.elem_index(y)
    }

    pub fn point_from_index(&self, i: u64) -> (FieldElement, FieldElement) {
        assert!(i < self.q * self.q, "point index out of range");
        (self.elem_from_index(i % self.q), self.elem_from_index(i / self.q))
    }

    /// Horner evaluation of `f` at `x`.
    pub fn poly_eval(&self, f: &FPoly, x: &FieldElement) -> Result<FieldElement, GfError> {
        self.validate_poly(f)?;
        self.validate(x)?;
        Ok(self.poly_eval_raw(f, x))
    }

    pub(crate) fn poly_eval_raw(&self, f: &FPoly, x: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in f.coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, c);
        }
        acc
    }

    pub fn poly_add(&self, f: &FPoly, g: &FPoly) -> Result<FPoly, GfError> {
        if f.k() != g.k() {
            return Err(self.mismatch());
        }
        let coeffs = f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| self.add(a, b)).collect();
        Ok(FPoly { coeffs })
    }

    pub fn poly_sub(&self, f: &FPoly, g: &FPoly) -> Result<FPoly, GfError> {
        if f.k() != g.k() {
            return Err(self.mismatch());
        }
        let coeffs = f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| self.sub(a, b)).collect();
        Ok(FPoly { coeffs })
    }

    /// Number of roots of `f` in the field (the zero polynomial has Q).
    pub fn roots_count(&self, f: &FPoly) -> u64 {
        self.elements()
            .filter(|x| self.poly_eval_raw(f, x).is_zero())
            .count() as u64
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5u64;
    while d.checked_mul(d).map(|s| s <= n).unwrap_or(false) {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over GF(p),
/// comparing coefficient vectors `(c_0, ..., c_(m-1))` constant term first.
/// Returned constant-first including the leading 1 (length m+1).
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    // Walk candidates in lexicographic order by odometer, starting at
    // constant term 1 (constant term 0 means divisible by x).
    let mut c = vec![0u64; m + 1];
    c[m] = 1;
    c[0] = 1;
    loop {
        if prime_poly_is_irreducible(&c, p) {
            return c;
        }
        let mut j = m - 1;
        loop {
            c[j] += 1;
            if c[j] < p {
                break;
            }
            c[j] = 0;
            assert!(j > 0, "no irreducible of degree {m} over GF({p})");
            j -= 1;
        }
    }
}

/// Irreducibility over GF(p) by exhaustive trial division: a monic f of
/// degree m is reducible iff some monic polynomial of degree 1..=m/2
/// divides it. Linear factors are ruled out by a direct root scan first.
fn prime_poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    for x in 0..p {
        let mut acc = 0u64;
        for &c in f.iter().rev() {
            acc = (mulmod(acc, x, p) + c) % p;
        }
        if acc == 0 {
            return false;
        }
    }
    for d in 2..=m / 2 {
        let count = (p as u128).pow(d as u32);
        for i in 0..count {
            let mut g = vec![0u64; d + 1];
            g[d] = 1;
            let mut v = i;
            for gj in g.iter_mut().take(d) {
                *gj = (v % p as u128) as u64;
                v /= p as u128;
            }
            if prime_poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

/// Whether monic `g` divides `f` exactly, over GF(p).
fn prime_poly_rem_is_zero(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for j in 0..=dg {
                let sub = mulmod(lead, g[j], p);
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c % p == 0)
}
