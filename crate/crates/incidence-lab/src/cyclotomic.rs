//! Exact integer arithmetic in the cyclotomic ring Z[zeta_p], p prime.
//!
//! Values are kept in the reduced power basis `1, zeta, ..., zeta^(p-2)`
//! (`zeta^(p-1) = -1 - zeta - ... - zeta^(p-2)`), which makes equality a
//! plain coefficient comparison: character sums that cancel really are the
//! zero vector, with no tolerance anywhere. For p = 2 the basis is just `1`
//! and the ring degenerates to the ordinary integers with zeta = -1.
//!
//! Coefficients are `i128`. The verification work drives sums of at most a
//! few million roots of unity with small multiplicities, so headroom is
//! enormous; overflow would indicate misuse and panics in debug builds.

use num::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("a * conj(a) is not a rational integer")]
    NonRationalNormSq,
}

/// An element of Z[zeta_p] in the reduced power basis (length p-1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u64,
    coeffs: Vec<i128>,
}

impl CycInt {
    /// The zero element of Z[zeta_p]. `p` must be prime.
    pub fn zero(p: u64) -> CycInt {
        assert!(crate::gf::is_prime_u64(p), "{p} is not prime");
        CycInt { p, coeffs: vec![0; (p - 1) as usize] }
    }

    pub fn from_int(p: u64, n: i128) -> CycInt {
        let mut z = CycInt::zero(p);
        z.coeffs[0] = n;
        z
    }

    pub fn one(p: u64) -> CycInt {
        CycInt::from_int(p, 1)
    }

    /// zeta_p^e, with e reduced mod p.
    pub fn root_power(p: u64, e: u64) -> CycInt {
        let mut z = CycInt::zero(p);
        z.add_scaled_root(e, 1);
        z
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduced power-basis coefficients (length p-1, constant first).
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Whether the value lies in Z, i.e. every non-constant coordinate
    /// vanishes in the reduced basis.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The integer value, when rational.
    pub fn to_int(&self) -> Option<i128> {
        if self.is_rational() {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// In-place `self += c * zeta^e` (e reduced mod p), the accumulation
    /// primitive behind every character sum here.
    pub fn add_scaled_root(&mut self, e: u64, c: i128) {
        let e = (e % self.p) as usize;
        let last = (self.p - 1) as usize;
        if e == last {
            for x in self.coeffs.iter_mut() {
                *x -= c;
            }
        } else {
            self.coeffs[e] += c;
        }
    }

    /// In-place `self += c * a`.
    pub fn add_mul_int(&mut self, a: &CycInt, c: i128) {
        assert_eq!(self.p, a.p, "cyclotomic orders differ: {} vs {}", self.p, a.p);
        for (x, &y) in self.coeffs.iter_mut().zip(&a.coeffs) {
            *x += c * y;
        }
    }

    /// In-place `self += a * zeta^e`, without allocating.
    pub fn add_rotated(&mut self, a: &CycInt, e: u64) {
        assert_eq!(self.p, a.p, "cyclotomic orders differ: {} vs {}", self.p, a.p);
        let p = self.p;
        let e = e % p;
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let t = (i as u64 + e) % p;
            if t == p - 1 {
                for x in self.coeffs.iter_mut() {
                    *x -= c;
                }
            } else {
                self.coeffs[t as usize] += c;
            }
        }
    }

    /// `self * zeta^e`.
    pub fn mul_root_power(&self, e: u64) -> CycInt {
        let mut out = CycInt::zero(self.p);
        out.add_rotated(self, e);
        out
    }

    /// Complex conjugate: zeta -> zeta^(p-1).
    pub fn conj(&self) -> CycInt {
        let mut out = CycInt::zero(self.p);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out.add_scaled_root((self.p - i as u64) % self.p, c);
            }
        }
        out
    }

    pub fn scale(&self, c: i128) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }

    /// Image under the embedding zeta = exp(2*pi*i/p), as (re, im).
    pub fn embed(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (self.p as f64);
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re, im)
    }
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "cyclotomic orders differ: {} vs {}", self.p, rhs.p);
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "cyclotomic orders differ: {} vs {}", self.p, rhs.p);
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|&a| -a).collect() }
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "cyclotomic orders differ: {} vs {}", self.p, rhs.p);
        let p = self.p as usize;
        // Accumulate in the redundant exponent range 0..p (zeta^p = 1),
        // then fold zeta^(p-1) back into the reduced basis.
        let mut buf = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                buf[(i + j) % p] += a * b;
            }
        }
        let top = buf[p - 1];
        let coeffs = buf[..p - 1].iter().map(|&c| c - top).collect();
        CycInt { p: self.p, coeffs }
    }
}

impl std::ops::AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.p, rhs.p, "cyclotomic orders differ: {} vs {}", self.p, rhs.p);
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "z".into(),
                (1, -1) => "-z".into(),
                (1, _) => format!("{c}z"),
                (_, 1) => format!("z^{i}"),
                (_, -1) => format!("-z^{i}"),
                _ => format!("{c}z^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+").replace("+-", "-"))
        }
    }
}

/// Exact squared modulus |a|^2 = a * conj(a), demanded to be a rational
/// integer (equivalently: the average of a * conj(a) over all p complex
/// embeddings, which picks out the constant coordinate of the reduced
/// basis). Errors when a * conj(a) has a nonzero non-constant coordinate,
/// which signals that a caller summed norms in the wrong place: individual
/// character values always pass, arbitrary ring elements need not.
pub fn cyc_norm_sq(a: &CycInt) -> Result<BigRational, CycError> {
    let b = a * &a.conj();
    match b.to_int() {
        Some(n) => Ok(BigRational::from_integer(n.into())),
        None => Err(CycError::NonRationalNormSq),
    }
}
