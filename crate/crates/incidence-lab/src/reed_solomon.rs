//! Reed-Solomon codewords, average-radius list decoding, and an exact
//! certifier for the list-size consequence of the incidence bounds.
//!
//! A codeword is the evaluation vector of a polynomial of degree below k at
//! n distinct field points. For a list of ell + 1 distinct codewords the
//! center minimizing the average relative distance is the coordinatewise
//! plurality vote, so the certified claim — no list of ell + 1 codewords
//! fits inside average radius 1 - eps - sqrt(R) when
//! ell = ceil(Q / (2 eps n sqrt(R))) — reduces to an integer search over
//! lists: minimizing the average radius is minimizing the total mismatch
//! count against the plurality center. Every comparison here is exact;
//! square roots never materialize (the threshold test is done on squares,
//! the list bound on a squared inequality).

use crate::gf::{FPoly, FieldElement, FieldSpec, GfError};
use crate::sampling::{cell_rng, sample_distinct_sorted};
use num::{BigInt, BigRational, One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsError {
    #[error("need 1 <= k < n <= Q, got k = {k}, n = {n}, Q = {q}")]
    BadShape { k: usize, n: u64, q: u64 },
    #[error("evaluation points must be distinct")]
    RepeatedEvaluationPoint,
    #[error("word length {got} does not match code length {expected}")]
    LengthMismatch { expected: u64, got: u64 },
    #[error("list of words is empty")]
    EmptyList,
    #[error("list contains duplicate words")]
    DuplicateWords,
    #[error("eps must satisfy 0 < eps < 1")]
    BadEpsilon,
    #[error("cannot place {want} distinct codewords in a code with {have}")]
    ListTooLarge { want: u64, have: u64 },
    #[error("exhaustive search over {lists} lists exceeds the size cap {cap}")]
    ExhaustiveTooLarge { lists: u128, cap: u64 },
    #[error("random search needs at least one trial")]
    NoTrials,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// An [n, k] Reed-Solomon code: polynomials of degree below k evaluated at
/// n distinct points.
#[derive(Debug, Clone)]
pub struct RsInstance {
    k: usize,
    points: Vec<FieldElement>,
}

impl RsInstance {
    pub fn new(spec: &FieldSpec, k: usize, points: Vec<FieldElement>) -> Result<RsInstance, RsError> {
        let n = points.len() as u64;
        if k == 0 || (k as u64) >= n || n > spec.q() {
            return Err(RsError::BadShape { k, n, q: spec.q() });
        }
        let mut seen = vec![false; spec.q() as usize];
        for pt in &points {
            spec.validate(pt)?;
            let idx = spec.elem_index(pt) as usize;
            if seen[idx] {
                return Err(RsError::RepeatedEvaluationPoint);
            }
            seen[idx] = true;
        }
        Ok(RsInstance { k, points })
    }

    /// The full-length code: every field element is an evaluation point, in
    /// canonical order (n = Q).
    pub fn full_length(spec: &FieldSpec, k: usize) -> Result<RsInstance, RsError> {
        RsInstance::new(spec, k, spec.elements().collect())
    }

    pub fn n(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    /// The rate R = k / n, exactly.
    pub fn rate(&self) -> BigRational {
        BigRational::new(BigInt::from(self.k), BigInt::from(self.n()))
    }

    /// The evaluation vector of `f` at the instance's points.
    pub fn encode(&self, spec: &FieldSpec, f: &FPoly) -> Result<Vec<FieldElement>, RsError> {
        spec.validate_poly(f)?;
        if f.k() != self.k {
            return Err(RsError::LengthMismatch { expected: self.k as u64, got: f.k() as u64 });
        }
        Ok(self.points.iter().map(|x| spec.poly_eval_raw(f, x)).collect())
    }

    /// Codeword of the polynomial with canonical index `idx`, as element
    /// indices (the integer form the certifier searches over).
    fn encode_indices(&self, spec: &FieldSpec, idx: u64) -> Vec<u32> {
        let f = spec.poly_from_index(self.k, idx);
        self.points
            .iter()
            .map(|x| spec.elem_index(&spec.poly_eval_raw(&f, x)) as u32)
            .collect()
    }
}

fn check_words(
    spec: &FieldSpec,
    words: &[Vec<FieldElement>],
) -> Result<u64, RsError> {
    if words.is_empty() {
        return Err(RsError::EmptyList);
    }
    let n = words[0].len() as u64;
    for w in words {
        if w.len() as u64 != n {
            return Err(RsError::LengthMismatch { expected: n, got: w.len() as u64 });
        }
        for e in w {
            spec.validate(e)?;
        }
    }
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words[i] == words[j] {
                return Err(RsError::DuplicateWords);
            }
        }
    }
    Ok(n)
}

/// Relative Hamming distance between two words of equal length, exactly.
pub fn relative_distance(
    spec: &FieldSpec,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Result<BigRational, RsError> {
    if a.len() != b.len() {
        return Err(RsError::LengthMismatch { expected: a.len() as u64, got: b.len() as u64 });
    }
    if a.is_empty() {
        return Err(RsError::EmptyList);
    }
    for e in a.iter().chain(b) {
        spec.validate(e)?;
    }
    let mismatches = a.iter().zip(b).filter(|(x, y)| x != y).count();
    Ok(BigRational::new(BigInt::from(mismatches), BigInt::from(a.len())))
}

/// Mean relative distance from `center` to each word of a list of distinct
/// words, exactly.
pub fn average_radius(
    spec: &FieldSpec,
    center: &[FieldElement],
    words: &[Vec<FieldElement>],
) -> Result<BigRational, RsError> {
    let n = check_words(spec, words)?;
    if center.len() as u64 != n {
        return Err(RsError::LengthMismatch { expected: n, got: center.len() as u64 });
    }
    let mut total = BigRational::zero();
    for w in words {
        total += relative_distance(spec, center, w)?;
    }
    Ok(total / BigRational::from_integer(BigInt::from(words.len())))
}

/// The coordinatewise plurality vote over a list of distinct words — the
/// center that minimizes the average relative distance to the list. Ties
/// pick the symbol with the smallest canonical index, so the result is a
/// pure function of the list.
pub fn plurality_center(
    spec: &FieldSpec,
    words: &[Vec<FieldElement>],
) -> Result<Vec<FieldElement>, RsError> {
    let n = check_words(spec, words)?;
    let q = spec.q() as usize;
    let mut center = Vec::with_capacity(n as usize);
    let mut counts = vec![0u64; q];
    for i in 0..n as usize {
        counts.iter_mut().for_each(|c| *c = 0);
        for w in words {
            counts[spec.elem_index(&w[i]) as usize] += 1;
        }
        let best = counts
            .iter()
            .enumerate()
            .max_by(|(i1, c1), (i2, c2)| c1.cmp(c2).then(i2.cmp(i1)))
            .map(|(i, _)| i as u64)
            .unwrap();
        center.push(spec.elem_from_index(best));
    }
    Ok(center)
}

/// The guaranteed list size ell = ceil(Q / (2 eps n sqrt(R))): the smallest
/// positive integer t with t^2 * 4 eps^2 n k >= Q^2, decided entirely on
/// integers (eps = a/b enters as a^2, b^2).
pub fn list_size_bound(
    spec: &FieldSpec,
    n: u64,
    k: usize,
    eps: &BigRational,
) -> Result<u64, RsError> {
    if k == 0 || (k as u64) >= n || n > spec.q() {
        return Err(RsError::BadShape { k, n, q: spec.q() });
    }
    if !(eps > &BigRational::zero() && eps < &BigRational::one()) {
        return Err(RsError::BadEpsilon);
    }
    let a = eps.numer();
    let b = eps.denom();
    let q = BigInt::from(spec.q());
    let rhs = &q * &q * b * b;
    let scale = BigInt::from(4u64) * a * a * BigInt::from(n) * BigInt::from(k as u64);
    let mut t = (&rhs / &scale).sqrt();
    if t < BigInt::one() {
        t = BigInt::one();
    }
    while &t * &t * &scale < rhs {
        t += 1u32;
    }
    while t > BigInt::one() && (&t - 1u32) * (&t - 1u32) * &scale >= rhs {
        t -= 1u32;
    }
    Ok(u64::try_from(&t).expect("list bound fits u64"))
}

/// How the certifier walks the space of lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// `trials` independent lists, list t drawn from the stream keyed by
    /// `(seed, t)`; bit-reproducible regardless of thread count.
    Random { seed: u64, trials: u64 },
    /// Every list of ell + 1 distinct codewords, gated by the size cap.
    Exhaustive,
}

/// Outcome of a certify run. `violated` is the honest answer: true means a
/// witness list beat the average-radius threshold and the claim fails on
/// this instance; `margin` = R - a*|a| with a = 1 - eps - min_avg_radius is
/// positive exactly when every list checked kept the claim safe.
#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub q: u64,
    pub n: u64,
    pub k: usize,
    pub ell: u64,
    pub eps: BigRational,
    pub rate: BigRational,
    pub mode: SearchMode,
    pub lists_checked: u64,
    pub min_avg_radius: BigRational,
    pub min_total_mismatches: u64,
    pub witness_polys: Vec<u64>,
    pub witness_center: Vec<u64>,
    pub margin: BigRational,
    pub violated: bool,
}

/// Total mismatches of a list against its plurality center, as an integer:
/// sum over coordinates of (list size - plurality count).
fn total_mismatches(words: &[&[u32]], n: usize) -> u64 {
    let r = words.len() as u64;
    let mut total = 0u64;
    for i in 0..n {
        let mut best = 0u64;
        for (a, wa) in words.iter().enumerate() {
            let s = wa[i];
            // count occurrences of s, scanning from the front so each
            // symbol's count is computed once (at its first holder)
            if words[..a].iter().any(|wb| wb[i] == s) {
                continue;
            }
            let c = 1 + words[a + 1..].iter().filter(|wb| wb[i] == s).count() as u64;
            best = best.max(c);
        }
        total += r - best;
    }
    total
}

struct SearchBest {
    mismatches: u64,
    polys: Vec<u64>,
}

impl SearchBest {
    fn better_than(&self, other: &SearchBest) -> bool {
        (self.mismatches, &self.polys) < (other.mismatches, &other.polys)
    }
}

fn merge_best(a: Option<SearchBest>, b: Option<SearchBest>) -> Option<SearchBest> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.better_than(&y) { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Visits every r-combination of [0, n) whose first entry is `first`, in
/// lexicographic order.
fn combinations_with_first(n: u64, r: usize, first: u64, visit: &mut impl FnMut(&[u64])) {
    let mut c: Vec<u64> = (0..r as u64).map(|i| first + i).collect();
    if c[r - 1] >= n {
        return;
    }
    loop {
        visit(&c);
        if r == 1 {
            return;
        }
        let mut i = r - 1;
        loop {
            c[i] += 1;
            if c[i] <= n - (r - i) as u64 {
                for j in i + 1..r {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
            if i == 1 {
                return;
            }
            i -= 1;
        }
    }
}

fn binomial_capped(n: u64, r: u64, cap: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > cap.saturating_mul(2) {
            return None;
        }
    }
    Some(acc)
}

/// Searches lists of ell + 1 distinct codewords for the smallest average
/// radius around their plurality center and returns the exact outcome,
/// re-checking the winning witness through the public distance functions
/// before reporting.
pub fn certify(
    spec: &FieldSpec,
    inst: &RsInstance,
    eps: &BigRational,
    ell: u64,
    mode: SearchMode,
) -> Result<CertifyReport, RsError> {
    if !(eps > &BigRational::zero() && eps < &BigRational::one()) {
        return Err(RsError::BadEpsilon);
    }
    let list_len = ell + 1;
    let codewords = spec.poly_count(inst.k)?;
    if list_len > codewords {
        return Err(RsError::ListTooLarge { want: list_len, have: codewords });
    }
    let n = inst.n() as usize;

    let (best, lists_checked) = match mode {
        SearchMode::Random { seed, trials } => {
            if trials == 0 {
                return Err(RsError::NoTrials);
            }
            let best = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = cell_rng(seed, t);
                    let polys = sample_distinct_sorted(&mut rng, codewords, list_len);
                    let words: Vec<Vec<u32>> =
                        polys.iter().map(|&i| inst.encode_indices(spec, i)).collect();
                    let refs: Vec<&[u32]> = words.iter().map(|w| w.as_slice()).collect();
                    Some(SearchBest { mismatches: total_mismatches(&refs, n), polys })
                })
                .reduce(|| None, merge_best);
            (best, trials)
        }
        SearchMode::Exhaustive => {
            let lists = binomial_capped(codewords, list_len, spec.size_cap() as u128)
                .filter(|&c| c <= spec.size_cap() as u128)
                .ok_or(RsError::ExhaustiveTooLarge {
                    lists: binomial_capped(codewords, list_len, u128::MAX / 4)
                        .unwrap_or(u128::MAX),
                    cap: spec.size_cap(),
                })?;
            spec.check_cap(codewords as u128 * n as u128)?;
            let book: Vec<Vec<u32>> =
                (0..codewords).map(|i| inst.encode_indices(spec, i)).collect();
            let best = (0..=codewords - list_len)
                .into_par_iter()
                .map(|first| {
                    let mut local: Option<SearchBest> = None;
                    let mut words: Vec<&[u32]> = Vec::with_capacity(list_len as usize);
                    combinations_with_first(codewords, list_len as usize, first, &mut |c| {
                        words.clear();
                        words.extend(c.iter().map(|&i| book[i as usize].as_slice()));
                        let mis = total_mismatches(&words, n);
                        let cand = SearchBest { mismatches: mis, polys: c.to_vec() };
                        if local.as_ref().is_none_or(|b| cand.better_than(b)) {
                            local = Some(cand);
                        }
                    });
                    local
                })
                .reduce(|| None, merge_best);
            (best, lists as u64)
        }
    };

    let best = best.expect("at least one list visited");

    // Re-derive the winner's radius through the public API as a cross-check
    // on the integer reduction.
    let words: Vec<Vec<FieldElement>> = best
        .polys
        .iter()
        .map(|&i| inst.encode(spec, &spec.poly_from_index(inst.k, i)))
        .collect::<Result<_, _>>()?;
    let center = plurality_center(spec, &words)?;
    let min_avg = average_radius(spec, &center, &words)?;
    let direct = BigRational::new(
        BigInt::from(best.mismatches),
        BigInt::from(n as u64 * list_len),
    );
    assert_eq!(min_avg, direct, "mismatch reduction disagrees with public radius");

    let rate = inst.rate();
    let a = BigRational::one() - eps - &min_avg;
    let margin = &rate - &a * a.abs();
    Ok(CertifyReport {
        q: spec.q(),
        n: inst.n(),
        k: inst.k,
        ell,
        eps: eps.clone(),
        rate,
        mode,
        lists_checked,
        min_avg_radius: min_avg,
        min_total_mismatches: best.mismatches,
        witness_polys: best.polys,
        witness_center: center.iter().map(|e| spec.elem_index(e)).collect(),
        margin: margin.clone(),
        violated: margin <= BigRational::zero(),
    })
}
