//! Exact arithmetic on truncated Dirichlet series.
//!
//! A series lives at a fixed truncation limit `N` and stores exact rational
//! coefficients `c_1..c_N`; operations never extrapolate beyond `N`, which
//! keeps Euler products exact and finite. Floating point enters only through
//! [`asymptotic_ratio_probe`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::primes::{is_prime, primes_up_to};

/// Exact coefficient type.
pub type Coeff = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirichletError {
    /// The two operands of a convolution have different truncation limits.
    LimitMismatch { left: u64, right: u64 },
    /// Coefficient index outside `[1, N]`.
    IndexOutOfRange { index: u64, limit: u64 },
    /// Truncation limit must be positive.
    ZeroLimit,
    /// A rational-in-u local factor whose denominator has constant term != 1.
    NonUnitConstantTerm,
    /// Rational-in-u local factors require a prime base.
    NotPrime(u64),
    /// Explicit-support indices must be strictly increasing and start at >= 1.
    BadSupport,
    /// An Euler product is missing the factor of a prime within the limit.
    MissingPrimeFactor(u64),
}

impl fmt::Display for DirichletError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirichletError::LimitMismatch { left, right } => {
                write!(f, "truncation limits differ: {left} vs {right}")
            }
            DirichletError::IndexOutOfRange { index, limit } => {
                write!(f, "index {index} outside [1, {limit}]")
            }
            DirichletError::ZeroLimit => write!(f, "truncation limit must be positive"),
            DirichletError::NonUnitConstantTerm => {
                write!(f, "denominator constant term must be 1")
            }
            DirichletError::NotPrime(p) => write!(f, "{p} is not prime"),
            DirichletError::BadSupport => {
                write!(f, "support indices must be strictly increasing and >= 1")
            }
            DirichletError::MissingPrimeFactor(p) => {
                write!(f, "no local factor supplied for prime {p}")
            }
        }
    }
}

/// A Dirichlet series truncated at a fixed limit, with exact rational
/// coefficients. Absent indices are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDirichletSeries {
    limit: u64,
    coeffs: BTreeMap<u64, Coeff>,
}

impl TruncatedDirichletSeries {
    /// The zero series at limit `n`.
    pub fn zero(limit: u64) -> Result<Self, DirichletError> {
        if limit == 0 {
            return Err(DirichletError::ZeroLimit);
        }
        Ok(Self { limit, coeffs: BTreeMap::new() })
    }

    /// The identity of Dirichlet convolution: `c_1 = 1`, rest zero.
    pub fn delta(limit: u64) -> Result<Self, DirichletError> {
        let mut s = Self::zero(limit)?;
        s.coeffs.insert(1, Coeff::one());
        Ok(s)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Coefficient `c_n` (zero if unset).
    pub fn coeff(&self, n: u64) -> Coeff {
        self.coeffs.get(&n).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn set_coeff(&mut self, n: u64, value: Coeff) -> Result<(), DirichletError> {
        if n == 0 || n > self.limit {
            return Err(DirichletError::IndexOutOfRange { index: n, limit: self.limit });
        }
        if value.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, value);
        }
        Ok(())
    }

    pub fn add_to_coeff(&mut self, n: u64, value: &Coeff) -> Result<(), DirichletError> {
        let current = self.coeff(n);
        self.set_coeff(n, current + value)
    }

    /// Nonzero coefficients in index order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Coeff)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_delta(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(1).is_one()
    }

    /// Re-truncate to a new limit, dropping coefficients above it. Growing the
    /// limit is only sound when the series is a complete polynomial (all
    /// coefficients beyond the old limit known to be zero); the caller decides.
    pub fn resized(&self, limit: u64) -> Result<Self, DirichletError> {
        let mut out = Self::zero(limit)?;
        for (n, c) in self.iter() {
            if n <= limit {
                out.coeffs.insert(n, c.clone());
            }
        }
        Ok(out)
    }

    /// Dirichlet convolution `c_n = Σ_{d|n} a_d b_{n/d}`, truncated at the
    /// common limit. Exact.
    pub fn series_mul(&self, other: &Self) -> Result<Self, DirichletError> {
        if self.limit != other.limit {
            return Err(DirichletError::LimitMismatch { left: self.limit, right: other.limit });
        }
        // Iterate with the sparser operand innermost and stop the outer scan
        // once products can no longer land inside the limit.
        let (a, b) = if self.coeffs.len() <= other.coeffs.len() {
            (other, self)
        } else {
            (self, other)
        };
        let mut out = Self::zero(self.limit)?;
        let b_min = match b.coeffs.keys().next() {
            Some(&m) => m,
            None => return Ok(out),
        };
        let max_n = self.limit / b_min;
        for (&n, ca) in a.coeffs.range(1..=max_n) {
            for (&m, cb) in &b.coeffs {
                let idx = match n.checked_mul(m) {
                    Some(idx) if idx <= self.limit => idx,
                    _ => break,
                };
                out.add_to_coeff(idx, &(ca * cb))?;
            }
        }
        Ok(out)
    }

    /// Running sums `(c_{<=1}, ..., c_{<=N})`, exact.
    pub fn partial_sums(&self) -> Vec<Coeff> {
        let mut out = Vec::with_capacity(self.limit as usize);
        let mut acc = Coeff::zero();
        for n in 1..=self.limit {
            if let Some(c) = self.coeffs.get(&n) {
                acc += c;
            }
            out.push(acc.clone());
        }
        out
    }
}

/// A single local (per-place) factor of an Euler product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalFactor {
    /// Finite list of `(index, coefficient)` pairs with strictly increasing
    /// indices; `c_1 = 1` is implicit when index 1 is not listed. The empty
    /// list is the trivial factor.
    ExplicitSupport(Vec<(u64, Coeff)>),
    /// A power series `num(u)/den(u)` in `u = p^{-s}`: the `u^k` term
    /// contributes at index `p^k`. Requires `den(0) = 1`.
    RationalInU {
        numerator: Vec<BigInt>,
        denominator: Vec<BigInt>,
        prime: u64,
    },
}

impl LocalFactor {
    /// The trivial factor (expands to the delta series).
    pub fn trivial() -> Self {
        LocalFactor::ExplicitSupport(Vec::new())
    }

    /// Smallest support index above 1, if any, at the given truncation.
    fn first_nontrivial_index(&self) -> Option<u64> {
        match self {
            LocalFactor::ExplicitSupport(pairs) => {
                pairs.iter().map(|&(n, _)| n).find(|&n| n > 1)
            }
            LocalFactor::RationalInU { prime, .. } => Some(*prime),
        }
    }
}

/// Expands a local factor into a truncated series.
///
/// For `RationalInU` the coefficient at index `p^k` is the `u^k` coefficient
/// of `num/den` as a formal power series; for `ExplicitSupport` the listed
/// coefficients are placed at their indices (with the implicit `c_1 = 1`).
pub fn expand_local_factor(
    factor: &LocalFactor,
    limit: u64,
) -> Result<TruncatedDirichletSeries, DirichletError> {
    let mut out = TruncatedDirichletSeries::delta(limit)?;
    match factor {
        LocalFactor::ExplicitSupport(pairs) => {
            let mut prev = 0u64;
            for (n, c) in pairs {
                if *n < 1 || *n <= prev {
                    return Err(DirichletError::BadSupport);
                }
                prev = *n;
                if *n <= limit {
                    out.set_coeff(*n, c.clone())?;
                }
            }
        }
        LocalFactor::RationalInU { numerator, denominator, prime } => {
            let den0 = denominator.first().cloned().unwrap_or_else(BigInt::zero);
            if !den0.is_one() {
                return Err(DirichletError::NonUnitConstantTerm);
            }
            if !is_prime(*prime) {
                return Err(DirichletError::NotPrime(*prime));
            }
            // q_k = num_k - Σ_{j=1..k} den_j q_{k-j}, the power-series quotient.
            let mut quotient: Vec<BigInt> = Vec::new();
            let mut index = 1u64;
            let mut k = 0usize;
            loop {
                let mut q = numerator.get(k).cloned().unwrap_or_else(BigInt::zero);
                for j in 1..=k {
                    if let Some(dj) = denominator.get(j) {
                        q -= dj * &quotient[k - j];
                    }
                }
                quotient.push(q.clone());
                out.set_coeff(index, Coeff::from_integer(q))?;
                index = match index.checked_mul(*prime) {
                    Some(next) if next <= limit => next,
                    _ => break,
                };
                k += 1;
            }
        }
    }
    Ok(out)
}

/// Multiplies out local factors into the truncated global series.
///
/// The factor list must cover every prime `<= limit`; triviality of a place
/// has to be stated explicitly (with [`LocalFactor::trivial`]). Trivial
/// factors are skipped in the product.
pub fn euler_product(
    factors: &[(u64, LocalFactor)],
    limit: u64,
) -> Result<TruncatedDirichletSeries, DirichletError> {
    let labels: alloc::collections::BTreeSet<u64> = factors.iter().map(|&(p, _)| p).collect();
    for p in primes_up_to(limit) {
        if !labels.contains(&p) {
            return Err(DirichletError::MissingPrimeFactor(p));
        }
    }
    // Dense accumulator, multiplied by one factor at a time in place. Every
    // factor has constant term 1, so walking n downward reads only indices
    // below n, which still hold the previous product.
    let mut acc: Vec<Coeff> = alloc::vec![Coeff::zero(); limit as usize + 1];
    acc[1] = Coeff::one();
    for (_, factor) in factors {
        if factor.first_nontrivial_index().map_or(true, |n| n > limit) {
            continue;
        }
        let expanded = expand_local_factor(factor, limit)?;
        let terms: Vec<(u64, Coeff)> = expanded
            .iter()
            .filter(|&(n, _)| n > 1)
            .map(|(n, c)| (n, c.clone()))
            .collect();
        let lead = match terms.first() {
            Some(&(n, _)) => n,
            None => continue,
        };
        for n in (lead..=limit).rev() {
            for (t, c) in &terms {
                if *t > n {
                    break;
                }
                if n % t == 0 && !acc[(n / t) as usize].is_zero() {
                    let add = c * &acc[(n / t) as usize];
                    acc[n as usize] += add;
                }
            }
        }
    }
    let coeffs: BTreeMap<u64, Coeff> = acc
        .into_iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n as u64, c))
        .collect();
    Ok(TruncatedDirichletSeries { limit, coeffs })
}

/// Result of a numerical growth-exponent probe.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioProbe {
    /// `(n, c_{<=n} / n^alpha)` at geometrically spaced checkpoints.
    pub checkpoints: Vec<(u64, f64)>,
    /// Minimum of the ratio over the top half of the range.
    pub band_min: f64,
    /// Maximum of the ratio over the top half of the range.
    pub band_max: f64,
}

fn ratio_at(partials: &[Coeff], n: u64, alpha: f64) -> f64 {
    let sum = partials[(n - 1) as usize].to_f64().unwrap_or(f64::NAN);
    sum / libm::pow(n as f64, alpha)
}

/// Min/max of `c_{<=n} / n^alpha` over `n` in `[lo, hi]`.
pub fn ratio_band(
    series: &TruncatedDirichletSeries,
    alpha: Rational64,
    lo: u64,
    hi: u64,
) -> (f64, f64) {
    let alpha = (*alpha.numer() as f64) / (*alpha.denom() as f64);
    let partials = series.partial_sums();
    let hi = hi.min(series.limit());
    let lo = lo.max(1);
    let mut band_min = f64::INFINITY;
    let mut band_max = f64::NEG_INFINITY;
    for n in lo..=hi {
        let r = ratio_at(&partials, n, alpha);
        band_min = band_min.min(r);
        band_max = band_max.max(r);
    }
    (band_min, band_max)
}

/// Samples `c_{<=n} / n^alpha` at checkpoints `n = ceil(N / 2^k)` and reports
/// the min/max band over the top half of the range. The probe reports a band
/// rather than asserting a limit; floating point is confined to this function.
pub fn asymptotic_ratio_probe(
    series: &TruncatedDirichletSeries,
    alpha: Rational64,
) -> RatioProbe {
    assert!(!alpha.is_negative(), "probe exponent must be nonnegative");
    let alpha_f = (*alpha.numer() as f64) / (*alpha.denom() as f64);
    let n_max = series.limit();
    let partials = series.partial_sums();
    let mut points = Vec::new();
    let mut n = n_max;
    loop {
        points.push(n);
        if n == 1 {
            break;
        }
        n = n.div_ceil(2);
    }
    points.reverse();
    points.dedup();
    let checkpoints: Vec<(u64, f64)> =
        points.into_iter().map(|n| (n, ratio_at(&partials, n, alpha_f))).collect();
    let (band_min, band_max) = ratio_band(series, alpha, n_max.div_ceil(2), n_max);
    RatioProbe { checkpoints, band_min, band_max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64) -> Coeff {
        Coeff::from_i64(n).unwrap()
    }

    fn sparse(limit: u64, entries: &[(u64, i64)]) -> TruncatedDirichletSeries {
        let mut s = TruncatedDirichletSeries::zero(limit).unwrap();
        for &(n, c) in entries {
            s.set_coeff(n, rat(c)).unwrap();
        }
        s
    }

    #[test]
    fn delta_is_identity() {
        let d = TruncatedDirichletSeries::delta(20).unwrap();
        let b = sparse(20, &[(1, 1), (3, 5), (7, -2), (20, 9)]);
        assert_eq!(d.series_mul(&b).unwrap(), b);
        assert_eq!(b.series_mul(&d).unwrap(), b);
    }

    #[test]
    fn single_term_convolution() {
        let a = sparse(10, &[(2, 3)]);
        let b = sparse(10, &[(3, 8)]);
        let p = a.series_mul(&b).unwrap();
        assert_eq!(p.coeff(6), rat(24));
        assert_eq!(p.iter().count(), 1);
    }

    #[test]
    fn limit_mismatch_rejected() {
        let a = sparse(10, &[(2, 3)]);
        let b = sparse(12, &[(3, 8)]);
        assert_eq!(
            a.series_mul(&b),
            Err(DirichletError::LimitMismatch { left: 10, right: 12 })
        );
    }

    fn heisenberg_factor(p: u64) -> LocalFactor {
        LocalFactor::RationalInU {
            numerator: alloc::vec![BigInt::from(1), BigInt::from(-1)],
            denominator: alloc::vec![BigInt::from(1), BigInt::from(-((p * p) as i64))],
            prime: p,
        }
    }

    #[test]
    fn heisenberg_local_product_at_36() {
        // c_4 at p=2 is 12, c_9 at p=3 is 72; the product has c_36 = 864.
        let f2 = expand_local_factor(&heisenberg_factor(2), 36).unwrap();
        let f3 = expand_local_factor(&heisenberg_factor(3), 36).unwrap();
        assert_eq!(f2.coeff(4), rat(12));
        assert_eq!(f3.coeff(9), rat(72));
        let p = f2.series_mul(&f3).unwrap();
        assert_eq!(p.coeff(36), rat(864));
    }

    #[test]
    fn rational_in_u_expansion() {
        // (1-u)/(1-4u) at p=2: 1, 3, 12, 48 at indices 1, 2, 4, 8.
        let s = expand_local_factor(&heisenberg_factor(2), 8).unwrap();
        assert_eq!(s.coeff(1), rat(1));
        assert_eq!(s.coeff(2), rat(3));
        assert_eq!(s.coeff(4), rat(12));
        assert_eq!(s.coeff(8), rat(48));
        assert_eq!(s.coeff(3), rat(0));
        assert_eq!(s.coeff(6), rat(0));
    }

    #[test]
    fn constant_factor_expands_to_delta() {
        let f = LocalFactor::RationalInU {
            numerator: alloc::vec![BigInt::from(1)],
            denominator: alloc::vec![BigInt::from(1)],
            prime: 7,
        };
        let s = expand_local_factor(&f, 30).unwrap();
        assert!(s.is_delta());
    }

    #[test]
    fn explicit_support_placement() {
        let f = LocalFactor::ExplicitSupport(alloc::vec![
            (3, rat(3)),
            (6, rat(6)),
            (12, rat(12)),
        ]);
        let s = expand_local_factor(&f, 12).unwrap();
        assert_eq!(s.coeff(1), rat(1));
        assert_eq!(s.coeff(3), rat(3));
        assert_eq!(s.coeff(6), rat(6));
        assert_eq!(s.coeff(12), rat(12));
    }

    #[test]
    fn bad_factors_rejected() {
        let f = LocalFactor::RationalInU {
            numerator: alloc::vec![BigInt::from(1)],
            denominator: alloc::vec![BigInt::from(2)],
            prime: 2,
        };
        assert_eq!(expand_local_factor(&f, 4), Err(DirichletError::NonUnitConstantTerm));
        let f = LocalFactor::RationalInU {
            numerator: alloc::vec![BigInt::from(1)],
            denominator: alloc::vec![BigInt::from(1)],
            prime: 6,
        };
        assert_eq!(expand_local_factor(&f, 4), Err(DirichletError::NotPrime(6)));
        let f = LocalFactor::ExplicitSupport(alloc::vec![(5, rat(1)), (5, rat(2))]);
        assert_eq!(expand_local_factor(&f, 8), Err(DirichletError::BadSupport));
    }

    #[test]
    fn euler_product_of_trivial_factors() {
        let factors: Vec<(u64, LocalFactor)> =
            primes_up_to(30).into_iter().map(|p| (p, LocalFactor::trivial())).collect();
        let s = euler_product(&factors, 30).unwrap();
        assert!(s.is_delta());
    }

    #[test]
    fn euler_product_requires_full_coverage() {
        let factors = alloc::vec![(2u64, heisenberg_factor(2))];
        assert_eq!(euler_product(&factors, 10), Err(DirichletError::MissingPrimeFactor(3)));
    }

    #[test]
    fn heisenberg_euler_product_matches_moebius_inversion() {
        // Coefficients of zeta(s-2)/zeta(s) are (mu * n^2)(n).
        let limit = 100u64;
        let factors: Vec<(u64, LocalFactor)> =
            primes_up_to(limit).into_iter().map(|p| (p, heisenberg_factor(p))).collect();
        let s = euler_product(&factors, limit).unwrap();
        for n in 1..=limit {
            assert_eq!(s.coeff(n), rat(moebius_times_square(n)), "n = {n}");
        }
    }

    /// Independent oracle: (mu * n^2)(n) by direct divisor sum.
    fn moebius_times_square(n: u64) -> i64 {
        let mut total = 0i64;
        for d in 1..=n {
            if n % d == 0 {
                let m = n / d;
                total += moebius(d) * (m * m) as i64;
            }
        }
        total
    }

    fn moebius(mut n: u64) -> i64 {
        let mut sign = 1i64;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn pgl2_style_product_at_12() {
        // Split PGL2 factors at every prime <= 12: supports (q+1)q^{n-1}
        // with coefficient equal to the index. Index 12 receives 12 from
        // (q=2, n=3), 12 from (q=3, n=2), 12 from q=11, and 3*4 from the
        // cross term of q=2 and q=3.
        let factors: Vec<(u64, LocalFactor)> = primes_up_to(12)
            .into_iter()
            .map(|q| {
                let mut support = Vec::new();
                let mut m = q + 1;
                while m <= 12 {
                    support.push((m, rat(m as i64)));
                    m *= q;
                }
                (q, LocalFactor::ExplicitSupport(support))
            })
            .collect();
        let s = euler_product(&factors, 12).unwrap();
        assert_eq!(s.coeff(12), rat(48));
    }

    #[test]
    fn partial_sums_examples() {
        let d = TruncatedDirichletSeries::delta(5).unwrap();
        assert_eq!(d.partial_sums(), alloc::vec![rat(1); 5]);

        let factors: Vec<(u64, LocalFactor)> =
            primes_up_to(4).into_iter().map(|p| (p, heisenberg_factor(p))).collect();
        let s = euler_product(&factors, 4).unwrap();
        let sums = s.partial_sums();
        assert_eq!(sums[3], rat(24)); // 1 + 3 + 8 + 12
    }

    #[test]
    fn probe_on_delta() {
        let d = TruncatedDirichletSeries::delta(64).unwrap();
        let probe = asymptotic_ratio_probe(&d, Rational64::from_integer(0));
        for &(_, r) in &probe.checkpoints {
            assert_eq!(r, 1.0);
        }
        assert_eq!(probe.band_min, 1.0);
        assert_eq!(probe.band_max, 1.0);
    }
}
