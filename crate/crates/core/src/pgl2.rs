//! Commensurizer growth of arithmetic lattices in `PGL_2` over a local field.
//!
//! The Cartan-cell index `(q+1)q^{n-1}` is verified against a brute-force
//! congruence-quotient oracle in `PGL_2(Z/p^n)`, exactly as in the proof: the
//! n-th congruence subgroup lies inside `K^{t^n} ∩ K`, so the index is read
//! off the image of the upper-triangular subgroup in the finite quotient.
//! Because the local factor has terms `m^{1-s} = m * m^{-s}` with
//! `m = (q+1)q^{n-1}` not a power of `q`, it is stored with explicit support:
//! coefficient `m` at index `m`. Only the `k = Q` global assembly is provided;
//! ramified places (where the form does not split) contribute the trivial
//! factor.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::dirichlet::{euler_product, Coeff, DirichletError, LocalFactor, TruncatedDirichletSeries};
use crate::primes::{is_prime, primes_up_to};

/// Default cap on `|PGL_2(Z/p^n)|` for the enumeration oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pgl2Error {
    NotPrime(u64),
    /// Residue field size must be at least 2.
    BadResidueSize(u64),
    /// Oracle group order exceeds the cap.
    OracleCapExceeded { order: u64, cap: u64 },
}

impl fmt::Display for Pgl2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pgl2Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Pgl2Error::BadResidueSize(q) => write!(f, "residue field size {q} < 2"),
            Pgl2Error::OracleCapExceeded { order, cap } => {
                write!(f, "PGL2 quotient of order {order} exceeds cap {cap}")
            }
        }
    }
}

/// A non-archimedean place: residue field size and whether the form splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalPlace {
    pub q: u64,
    pub split: bool,
}

impl LocalPlace {
    pub fn new(q: u64, split: bool) -> Result<Self, Pgl2Error> {
        if q < 2 {
            return Err(Pgl2Error::BadResidueSize(q));
        }
        Ok(Self { q, split })
    }
}

/// The index of `K^{t^n} ∩ K` in `K = PGL_2(R_w)`: 1 for `n = 0`, else
/// `(q+1)q^{n-1}`.
pub fn cartan_index(q: u64, n: u32) -> u64 {
    if n == 0 {
        1
    } else {
        (q + 1) * q.pow(n - 1)
    }
}

/// Brute-force oracle for [`cartan_index`]: materializes `PGL_2(Z/p^n)`
/// (unit-determinant-free matrices modulo scalars, scalars quotiented by
/// normalizing the first unit entry) and returns the index of the image of
/// the upper-triangular subgroup `{c = 0 mod p^n}`.
pub fn cartan_index_oracle(p: u64, n: u32, cap: u64) -> Result<u64, Pgl2Error> {
    if !is_prime(p) {
        return Err(Pgl2Error::NotPrime(p));
    }
    assert!(n >= 1, "oracle needs n >= 1");
    let order = (p * p - 1) * p.pow(3 * n - 2);
    if order > cap {
        return Err(Pgl2Error::OracleCapExceeded { order, cap });
    }
    let m = p.pow(n);
    let mut total = 0u64;
    let mut upper = 0u64;
    // A matrix class has a canonical representative whose first unit entry
    // (in scan order) is 1; counting canonical matrices counts the quotient.
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let det = (a * d % m + m - b * c % m) % m;
                    if det % p == 0 {
                        continue;
                    }
                    let first_unit = [a, b, c, d].into_iter().find(|&x| x % p != 0);
                    if first_unit != Some(1) {
                        continue;
                    }
                    total += 1;
                    if c == 0 {
                        upper += 1;
                    }
                }
            }
        }
    }
    debug_assert_eq!(total, order);
    debug_assert_eq!(total % upper, 0);
    Ok(total / upper)
}

/// The number of cosets of `K` inside the Cartan cell `K t^n K`, equal to
/// [`cartan_index`] and to the number of vertices at distance `n` from a
/// fixed vertex of the `(q+1)`-regular tree; the tree count is cross-checked
/// by explicit breadth-first enumeration when small enough.
pub fn coset_count(q: u64, n: u32) -> u64 {
    assert!(n >= 1);
    let count = cartan_index(q, n);
    if n <= 6 && count <= 1_000_000 {
        debug_assert_eq!(count, tree_sphere_size(q + 1, n));
    }
    count
}

/// Vertices at distance `n` from the root of the `d`-regular tree, counted by
/// materializing the breadth-first levels.
pub fn tree_sphere_size(d: u64, n: u32) -> u64 {
    // Nodes carry no data; each level is built child by child.
    let mut level: Vec<()> = alloc::vec![()];
    for depth in 1..=n {
        let children_each = if depth == 1 { d } else { d - 1 };
        let mut next = Vec::new();
        for _ in &level {
            for _ in 0..children_each {
                next.push(());
            }
        }
        level = next;
    }
    level.len() as u64
}

/// The local zeta factor of a place: trivial when the form does not split,
/// otherwise explicit support `(m, m)` at `m = (q+1)q^{n-1} <= limit`.
pub fn local_factor_pgl2(place: LocalPlace, limit: u64) -> LocalFactor {
    if !place.split {
        return LocalFactor::trivial();
    }
    let mut support = Vec::new();
    let mut n = 1u32;
    loop {
        let m = cartan_index(place.q, n);
        if m > limit {
            break;
        }
        support.push((m, Coeff::from_integer(BigInt::from(m))));
        n += 1;
    }
    LocalFactor::ExplicitSupport(support)
}

/// The truncated global series over `k = Q`: the Euler product of the split
/// factors at all primes `<= limit`, with the trivial factor at ramified
/// primes.
pub fn global_series_pgl2(
    ramified: &BTreeSet<u64>,
    limit: u64,
) -> Result<TruncatedDirichletSeries, DirichletError> {
    let factors: Vec<(u64, LocalFactor)> = primes_up_to(limit)
        .into_iter()
        .map(|p| {
            let factor = if ramified.contains(&p) {
                LocalFactor::trivial()
            } else {
                local_factor_pgl2(LocalPlace { q: p, split: true }, limit)
            };
            (p, factor)
        })
        .collect();
    euler_product(&factors, limit)
}
