//! Commensurizer growth of the integral Heisenberg group.
//!
//! Cosets of the normalizer in `G(Q_p)` are parameterized by pairs
//! `(a, b) in (Q_p/Z_p)^2`, stored as reduced rationals in `[0, 1)` with
//! p-power denominators; the valuation is read off the denominator, so no
//! p-adic library is needed. The index formula
//! `max{p^{-val(a)}, p^{-val(b)}, 1}` is checked against a symplectic-form
//! enumeration oracle, and the local counts assemble into the global series
//! with coefficients of `zeta(s-2)/zeta(s)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;

use crate::dirichlet::{euler_product, DirichletError, LocalFactor, TruncatedDirichletSeries};
use crate::primes::{is_prime, primes_up_to, valuation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeisenbergError {
    NotPrime(u64),
    /// Coordinate outside `[0, 1)` or with a denominator that is not a power
    /// of `p`.
    BadCoordinate(Rational64),
    /// Oracle depth smaller than the largest denominator exponent.
    DepthTooSmall { depth: u32, needed: u32 },
}

impl fmt::Display for HeisenbergError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeisenbergError::NotPrime(p) => write!(f, "{p} is not prime"),
            HeisenbergError::BadCoordinate(x) => {
                write!(f, "{x} is not a p-power-denominator rational in [0,1)")
            }
            HeisenbergError::DepthTooSmall { depth, needed } => {
                write!(f, "oracle depth {depth} below denominator exponent {needed}")
            }
        }
    }
}

/// A point of `(Q_p/Z_p)^2`: a pair of reduced rationals in `[0, 1)` whose
/// denominators are powers of `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicCosetRep {
    p: u64,
    a: Rational64,
    b: Rational64,
}

fn denominator_exponent(x: Rational64, p: u64) -> Option<u32> {
    if x < Rational64::zero() || x >= Rational64::from_integer(1) {
        return None;
    }
    let den = *x.denom() as u64;
    let e = valuation(den, p)?;
    if p.pow(e) == den {
        Some(e)
    } else {
        None
    }
}

impl PadicCosetRep {
    pub fn new(p: u64, a: Rational64, b: Rational64) -> Result<Self, HeisenbergError> {
        if !is_prime(p) {
            return Err(HeisenbergError::NotPrime(p));
        }
        for x in [a, b] {
            if denominator_exponent(x, p).is_none() {
                return Err(HeisenbergError::BadCoordinate(x));
            }
        }
        Ok(Self { p, a, b })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `-val(a)`: the denominator exponent of the first coordinate.
    pub fn exp_a(&self) -> u32 {
        denominator_exponent(self.a, self.p).expect("validated on construction")
    }

    pub fn exp_b(&self) -> u32 {
        denominator_exponent(self.b, self.p).expect("validated on construction")
    }
}

/// The index `[G(Z_p) : G(Z_p) ∩ G(Z_p)^g]` for the coset represented by
/// `(a, b)`: `max{p^{-val(a)}, p^{-val(b)}, 1}`. A zero coordinate has
/// infinite valuation and contributes 1.
pub fn heisenberg_index(rep: &PadicCosetRep) -> u64 {
    rep.p.pow(rep.exp_a().max(rep.exp_b()))
}

/// Enumeration oracle for [`heisenberg_index`]: counts the fraction of pairs
/// `(x, y)` in `(Z/p^K)^2` for which the symplectic form `xb - ya` is
/// integral, and returns the reciprocal fraction.
pub fn heisenberg_index_oracle(rep: &PadicCosetRep, depth: u32) -> Result<u64, HeisenbergError> {
    let needed = rep.exp_a().max(rep.exp_b());
    if depth < needed {
        return Err(HeisenbergError::DepthTooSmall { depth, needed });
    }
    let p = rep.p;
    let modulus = p.pow(depth);
    // x*b - y*a is integral iff x*b_num*p^(K-eb) - y*a_num*p^(K-ea) = 0
    // mod p^K, after writing a = a_num / p^ea, b = b_num / p^eb.
    let a_num = (*rep.a.numer() as u64) % modulus;
    let b_num = (*rep.b.numer() as u64) % modulus;
    let a_scaled = a_num * p.pow(depth - rep.exp_a()) % modulus;
    let b_scaled = b_num * p.pow(depth - rep.exp_b()) % modulus;
    let mut hits = 0u64;
    for x in 0..modulus {
        let xb = x * b_scaled % modulus;
        for y in 0..modulus {
            let ya = y * a_scaled % modulus;
            if (xb + modulus - ya) % modulus == 0 {
                hits += 1;
            }
        }
    }
    Ok(modulus * modulus / hits)
}

/// Exact local count `c_{p^n}(G(Z_p), G(Q_p))` by enumerating all coset
/// representatives with denominators dividing `p^n` and tallying those whose
/// index is exactly `p^n`.
pub fn local_count(p: u64, n: u32) -> u64 {
    assert!(is_prime(p), "p must be prime");
    if n == 0 {
        return 1;
    }
    let pn = p.pow(n);
    let mut tally = 0u64;
    for i in 0..pn {
        for j in 0..pn {
            let a = Rational64::new(i as i64, pn as i64);
            let b = Rational64::new(j as i64, pn as i64);
            let rep = PadicCosetRep::new(p, a, b).expect("in range by construction");
            if heisenberg_index(&rep) == pn {
                tally += 1;
            }
        }
    }
    tally
}

/// The local zeta factor `(1 - p^{-s}) / (1 - p^{2-s})` as a rational power
/// series in `u = p^{-s}`.
pub fn local_factor(p: u64) -> LocalFactor {
    LocalFactor::RationalInU {
        numerator: alloc::vec![BigInt::from(1), BigInt::from(-1)],
        denominator: alloc::vec![BigInt::from(1), -BigInt::from(p) * BigInt::from(p)],
        prime: p,
    }
}

/// The global series `Z_{G(Z), G(R)} = zeta(s-2)/zeta(s)` truncated at `N`,
/// assembled as the Euler product of the local factors.
pub fn global_series(limit: u64) -> Result<TruncatedDirichletSeries, DirichletError> {
    let factors: Vec<(u64, LocalFactor)> =
        primes_up_to(limit).into_iter().map(|p| (p, local_factor(p))).collect();
    euler_product(&factors, limit)
}
