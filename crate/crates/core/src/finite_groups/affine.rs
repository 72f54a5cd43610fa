//! The finite affine groups `GL_n(F_p) ⋉ F_p^n` and the arbitrary-growth
//! construction built from their zeta polynomials.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::dirichlet::{euler_product, Coeff, LocalFactor, TruncatedDirichletSeries};
use crate::primes::primes_up_to;

use super::{FiniteGroupTable, GroupError, Subgroup};

/// Default cap on the order of a materialized affine group.
pub const DEFAULT_SIZE_CAP: u128 = 100_000;

/// Square matrix over `F_p`, row-major.
type Mat = Vec<u64>;

fn mat_mul(a: &Mat, b: &Mat, n: usize, p: u64) -> Mat {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + aik * b[k * n + j]) % p;
            }
        }
    }
    out
}

fn mat_vec(a: &Mat, v: &[u64], n: usize, p: u64) -> Vec<u64> {
    (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum::<u64>() % p)
        .collect()
}

fn is_invertible(m: &Mat, n: usize, p: u64) -> bool {
    // Gaussian elimination over F_p.
    let mut a = m.clone();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| a[r * n + col] != 0) {
            Some(r) => r,
            None => return false,
        };
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
        }
        let inv = mod_inverse(a[col * n + col], p);
        for r in col + 1..n {
            let factor = a[r * n + col] * inv % p;
            if factor == 0 {
                continue;
            }
            for j in col..n {
                a[r * n + j] = (a[r * n + j] + (p - factor) * a[col * n + j]) % p;
            }
        }
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat, p prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// `|GL_n(F_p)| * p^n`, the order of the affine group.
fn affine_order(n: usize, p: u64) -> Option<u128> {
    let pn = (p as u128).checked_pow(n as u32)?;
    let mut gl = 1u128;
    let mut pi = 1u128;
    for _ in 0..n {
        gl = gl.checked_mul(pn.checked_sub(pi)?)?;
        pi = pi.checked_mul(p as u128)?;
    }
    gl.checked_mul(pn)
}

/// Builds `G = GL_n(F_p) ⋉ F_p^n` as a table, together with the line subgroup
/// `A = {((t, 0, ..., 0), Id)}` of translations along the first axis.
///
/// Multiplication is affine composition `(M, v)(M', v') = (MM', Mv' + v)`, so
/// conjugating a translation by `(M, v)` gives the translation by `M^{-1}w`;
/// the normalizer of `A` is then the line stabilizer extended by all
/// translations, which the tests verify.
pub fn build_affine_group(
    n: usize,
    p: u64,
    size_cap: u128,
) -> Result<(FiniteGroupTable, Subgroup), GroupError> {
    assert!(n >= 1, "dimension must be positive");
    assert!(crate::primes::is_prime(p), "p must be prime");
    let order = affine_order(n, p).ok_or(GroupError::SizeCapExceeded {
        required: u128::MAX,
        cap: size_cap,
    })?;
    if order > size_cap {
        return Err(GroupError::SizeCapExceeded { required: order, cap: size_cap });
    }

    let pn = (p as u64).pow(n as u32) as usize;

    // Enumerate GL_n(F_p), identity matrix first.
    let mut matrices: Vec<Mat> = Vec::new();
    let mut identity = vec![0u64; n * n];
    for i in 0..n {
        identity[i * n + i] = 1;
    }
    matrices.push(identity.clone());
    let total_mats = (p as u128).pow((n * n) as u32) as usize;
    let mut current = vec![0u64; n * n];
    for _ in 0..total_mats {
        if current != identity && is_invertible(&current, n, p) {
            matrices.push(current.clone());
        }
        // odometer
        for digit in current.iter_mut() {
            *digit += 1;
            if *digit < p {
                break;
            }
            *digit = 0;
        }
    }
    let gl_order = matrices.len();
    let mat_index: BTreeMap<Mat, u32> =
        matrices.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();

    // Vectors are indexed with coordinate 0 least significant; index 0 is the
    // zero vector, so element 0 = (Id, 0) is the group identity.
    let vec_of = |idx: usize| -> Vec<u64> {
        let mut v = Vec::with_capacity(n);
        let mut rest = idx as u64;
        for _ in 0..n {
            v.push(rest % p);
            rest /= p;
        }
        v
    };
    let idx_of = |v: &[u64]| -> usize {
        v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
    };

    // Precompute M*M' (as matrix indices) and M*v (as vector indices).
    let mut matmul = vec![0u32; gl_order * gl_order];
    for (i, a) in matrices.iter().enumerate() {
        for (j, b) in matrices.iter().enumerate() {
            matmul[i * gl_order + j] = mat_index[&mat_mul(a, b, n, p)];
        }
    }
    let mut matvec = vec![0u32; gl_order * pn];
    for (i, m) in matrices.iter().enumerate() {
        for w in 0..pn {
            matvec[i * pn + w] = idx_of(&mat_vec(m, &vec_of(w), n, p)) as u32;
        }
    }

    let order = order as usize;
    let mut mul = vec![0u32; order * order];
    let elem = |m: usize, w: usize| m * pn + w;
    for m1 in 0..gl_order {
        for w1 in 0..pn {
            let e1 = elem(m1, w1);
            let v1 = vec_of(w1);
            for m2 in 0..gl_order {
                let mm = matmul[m1 * gl_order + m2] as usize;
                for w2 in 0..pn {
                    let moved = vec_of(matvec[m1 * pn + w2] as usize);
                    let sum: Vec<u64> =
                        moved.iter().zip(&v1).map(|(&a, &b)| (a + b) % p).collect();
                    mul[e1 * order + elem(m2, w2)] = elem(mm, idx_of(&sum)) as u32;
                }
            }
        }
    }

    let table = FiniteGroupTable::from_mul_table(order, mul, None)?;
    // A = translations along e_1: matrix index 0 (identity), vectors t*e_1
    // which have vector index t.
    let line: Vec<u32> = (0..p as u32).collect();
    let subgroup = table.subgroup_from_elements(&line)?;
    Ok((table, subgroup))
}

/// Realizes a growth floor: picks, for each prime `p <= N`, a dimension `n_p`
/// with `(p^{n_p} - 1)/(p - 1) > f(n)` for `n` in `[p, 2p]`, and assembles the
/// Euler product of the corresponding affine zeta polynomials
/// `1 + ((p^{n_p}-1)/(p-1) - 1) p^{-s}`.
///
/// The partial sums of the result dominate `f` pointwise for `n >= 2` (checked
/// before returning). At `n = 1` no construction can beat `c_1 = 1`.
pub fn growth_floor_demo(f: &[u64]) -> Result<TruncatedDirichletSeries, GroupError> {
    let limit = f.len() as u64;
    assert!(limit >= 1, "target must be defined on [1, N]");
    let mut factors: Vec<(u64, LocalFactor)> = Vec::new();
    for p in primes_up_to(limit) {
        let hi = (2 * p).min(limit);
        let target = (p..=hi).map(|n| f[(n - 1) as usize]).max().unwrap_or(0);
        // Smallest n_p with (p^{n_p} - 1)/(p - 1) > target.
        let mut line_count = 1u128; // n_p = 1
        while line_count <= target as u128 {
            line_count = line_count * p as u128 + 1;
        }
        let classes = line_count - 1;
        let coeff = Coeff::from_integer(BigInt::from(classes));
        factors.push((p, LocalFactor::ExplicitSupport(vec![(p, coeff)])));
    }
    let series = euler_product(&factors, limit).expect("every prime <= N has a factor");
    let sums = series.partial_sums();
    for n in 2..=limit {
        let floor = Coeff::from_integer(BigInt::from(f[(n - 1) as usize]));
        if sums[(n - 1) as usize] < floor {
            return Err(GroupError::FloorNotDominated { index: n });
        }
    }
    Ok(series)
}
