//! Acceptance suite: one test per criterion, each printing a PASS or FAIL
//! line. Closed forms are held against independent brute-force oracles, and
//! enumeration totals against frozen regression constants.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use commzeta_cli::{format_sig12, moebius_times_square, rational_to_f64, ZETA3};
use commzeta_core::dirichlet::{Coeff, TruncatedDirichletSeries};
use commzeta_core::finite_groups::random::{
    random_group, random_nested_subgroup, random_subgroup,
};
use commzeta_core::finite_groups::{build_affine_group, growth_floor_demo};
use commzeta_core::heisenberg;
use commzeta_core::pgl2;
use commzeta_core::primes::primes_up_to;
use commzeta_core::twin_covers::{
    count_comm_classes, enumerate_pointed_covers, hall_count, DartMultigraph,
    EnumerationBudget,
};

const GLOBAL_LIMIT: u64 = 10_000;

fn heisenberg_global() -> &'static TruncatedDirichletSeries {
    static SERIES: OnceLock<TruncatedDirichletSeries> = OnceLock::new();
    SERIES.get_or_init(|| heisenberg::global_series(GLOBAL_LIMIT).expect("complete factor set"))
}

fn pgl2_global() -> &'static TruncatedDirichletSeries {
    static SERIES: OnceLock<TruncatedDirichletSeries> = OnceLock::new();
    SERIES.get_or_init(|| {
        pgl2::global_series_pgl2(&BTreeSet::new(), GLOBAL_LIMIT).expect("complete factor set")
    })
}

fn report(ok: bool, criterion: u32, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} criterion {criterion}: {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_heisenberg_local_counts() {
    let mut ok = true;
    for p in [2u64, 3, 5] {
        for n in 1..=4u32 {
            let formula = p.pow(2 * n) - p.pow(2 * n - 2);
            ok &= heisenberg::local_count(p, n) == formula;
        }
    }
    report(ok, 1, "local counts equal p^{2n}(1 - p^{-2}) for p in {2,3,5}, n in 1..=4");
}

#[test]
fn criterion_02_heisenberg_index_oracle() {
    let mut ok = true;
    for p in [2u64, 3, 5] {
        let pk = p.pow(3);
        for i in 0..pk {
            for j in 0..pk {
                let rep = heisenberg::PadicCosetRep::new(
                    p,
                    Rational64::new(i as i64, pk as i64),
                    Rational64::new(j as i64, pk as i64),
                )
                .expect("valid coset representative");
                ok &= heisenberg::heisenberg_index_oracle(&rep, 3).expect("depth suffices")
                    == heisenberg::heisenberg_index(&rep);
            }
        }
    }
    report(ok, 2, "index formula matches enumeration on all reps with exponent <= 3");
}

#[test]
fn criterion_03_global_heisenberg_identity() {
    let series = heisenberg_global();
    let oracle = moebius_times_square(GLOBAL_LIMIT);
    let ok = (1..=GLOBAL_LIMIT)
        .all(|n| series.coeff(n) == Coeff::from(BigInt::from(oracle[n as usize])));
    report(ok, 3, "Euler product equals Moebius-inverted zeta(s-2)/zeta(s) up to 10^4");
}

#[test]
fn criterion_04_cubic_limit_probe() {
    let sums = heisenberg_global().partial_sums();
    let total = &sums[GLOBAL_LIMIT as usize - 1];
    // Frozen regression value of c_{<=10^4}.
    let frozen = Coeff::from(BigInt::from(277_335_915_120u64));
    let ratio = rational_to_f64(total) / (GLOBAL_LIMIT as f64).powi(3);
    let target = 1.0 / (3.0 * ZETA3);
    let ok = *total == frozen && (ratio - target).abs() <= 0.1 * target;
    report(
        ok,
        4,
        &format!(
            "c_upto_N/N^3 = {} within 10% of 1/(3 zeta(3)) = {}",
            format_sig12(ratio),
            format_sig12(target)
        ),
    );
}

#[test]
fn criterion_05_pgl2_cartan_oracle() {
    let cap = 1_000_000u64;
    let mut ok = true;
    let mut checked = Vec::new();
    for p in primes_up_to(100) {
        for n in 1.. {
            let order = match p.checked_pow(3 * n - 2).map(|q| q * (p * p - 1)) {
                Some(order) if order <= cap => order,
                _ => break,
            };
            let _ = order;
            let oracle = pgl2::cartan_index_oracle(p, n, cap).expect("order within cap");
            ok &= oracle == pgl2::cartan_index(p, n);
            checked.push((p, n));
        }
    }
    let required = [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)];
    ok &= required.iter().all(|pair| checked.contains(pair));
    report(
        ok,
        5,
        &format!("cartan index matches oracle on {} quotients of order <= 10^6", checked.len()),
    );
}

#[test]
fn criterion_06_quadratic_band() {
    let sums = pgl2_global().partial_sums();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for n in 1_000..=GLOBAL_LIMIT {
        let r = rational_to_f64(&sums[n as usize - 1]) / (n as f64 * n as f64);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    // Frozen regression values of the band and of c_{<=10^4}.
    let frozen_total = Coeff::from(BigInt::from(35_079_250u64));
    let band_ok = lo > 0.0 && hi.is_finite();
    let frozen_ok = sums[GLOBAL_LIMIT as usize - 1] == frozen_total
        && (lo - 0.339_443_163_003).abs() < 1e-9
        && (hi - 0.366_216_965_664).abs() < 1e-9;
    report(
        band_ok && frozen_ok,
        6,
        &format!(
            "c_upto_n/n^2 band over [10^3, 10^4] is [{}, {}]",
            format_sig12(lo),
            format_sig12(hi)
        ),
    );
}

#[test]
fn criterion_07_finite_affine_growth() {
    let mut ok = true;
    for (n, p, order) in [(2usize, 2u64, 24usize), (2, 3, 432), (3, 2, 1344)] {
        let (group, translations) = build_affine_group(n, p, 1 << 40).expect("within cap");
        ok &= group.order() == order;
        let classes = group.comm_classes(&translations);
        let lines = (p.pow(n as u32) - 1) / (p - 1);
        let mut expected = std::collections::BTreeMap::new();
        expected.insert(1u64, 1u64);
        expected.insert(p, lines - 1);
        ok &= classes == expected;
    }
    report(ok, 7, "affine groups give c = {1: 1, p: (p^n - 1)/(p - 1) - 1}");
}

#[test]
fn criterion_08_index_inequality_trials() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut violations = 0u32;
    let mut trials = 0u32;
    while trials < 1_000 {
        let g = random_group(&mut rng, 500);
        let a = random_subgroup(&mut rng, &g);
        let b = random_subgroup(&mut rng, &g);
        let nested = random_nested_subgroup(&mut rng, &g, &a);
        let t = (a.len() / nested.len()) as u64;
        // Intersection index bound [G : B n C] <= [G:B][G:C].
        let meet = g.intersection(&a, &b);
        if g.index_of(&meet) > g.index_of(&a) * g.index_of(&b) {
            violations += 1;
        }
        for _ in 0..8 {
            if trials >= 1_000 {
                break;
            }
            trials += 1;
            let x = rand::Rng::gen_range(&mut rng, 0..g.order() as u32);
            let y = rand::Rng::gen_range(&mut rng, 0..g.order() as u32);
            if g.chi(&a, x) != g.chi(&a, g.inv(x)) {
                violations += 1;
            }
            if g.chi(&a, g.mul(x, y)) > g.chi(&a, x) * g.chi(&a, y) {
                violations += 1;
            }
            let outer = g.chi(&a, x);
            let inner = g.chi(&nested, x);
            if inner > t * outer || outer > t * inner {
                violations += 1;
            }
        }
    }
    report(
        violations == 0,
        8,
        &format!("{trials} randomized trials, {violations} inequality violations"),
    );
}

#[test]
fn criterion_09_subgroup_growth_oracle() {
    let mut ok = true;
    let rank2 = [1u128, 3, 13, 71];
    for (m, &expected) in rank2.iter().enumerate() {
        ok &= hall_count(2, m as u32 + 1) == expected;
    }
    for (k, max_m) in [(2u32, 6u32), (3, 4)] {
        let y = DartMultigraph::bouquet(k);
        for m in 1..=max_m {
            ok &= enumerate_pointed_covers(&y, 0, m).len() as u128 == hall_count(k, m);
        }
    }
    report(ok, 9, "pointed cover counts equal the Hall subgroup numbers");
}

fn bouquet_counts() -> &'static [commzeta_core::twin_covers::DegreeCount] {
    static COUNTS: OnceLock<Vec<commzeta_core::twin_covers::DegreeCount>> = OnceLock::new();
    COUNTS.get_or_init(|| {
        let y = DartMultigraph::bouquet(2);
        count_comm_classes(&y, 0, 4, EnumerationBudget::default(), false)
            .expect("degree 4 within budget")
    })
}

#[test]
fn criterion_10_twin_cover_suite() {
    let counts = bouquet_counts();
    let y = DartMultigraph::bouquet(2);
    let unfiltered = count_comm_classes(&y, 0, 4, EnumerationBudget::default(), true)
        .expect("degree 4 within budget");

    // Frozen regression constants from the full enumeration.
    let frozen_pointed = [1u64, 3, 13, 71];
    let frozen_twin = [8u64, 56, 512, 5760];
    let frozen_minimal = [8u64, 56, 512, 5384];
    let mut ok = counts.len() == 4;
    for (i, c) in counts.iter().enumerate() {
        ok &= c.pointed_covers == frozen_pointed[i];
        ok &= c.twin_covers == frozen_twin[i];
        ok &= c.minimal_classes == frozen_minimal[i];
    }
    ok &= counts[0].minimal_classes == 8;
    for (a, b) in counts.iter().zip(&unfiltered) {
        ok &= a.twin_covers == b.twin_covers;
        if commzeta_core::primes::is_prime(a.degree as u64) {
            ok &= a.minimal_classes == b.minimal_classes;
        }
    }
    report(ok, 10, "bouquet-2 counts (8, 56, 512, 5384) with prime degrees unfiltered");
}

#[test]
fn criterion_11_growth_trend() {
    let counts = bouquet_counts();
    let mut ok = true;
    let mut values = Vec::new();
    for c in counts.iter().filter(|c| c.degree >= 2) {
        let n = c.degree as f64;
        let trend = (c.minimal_classes as f64).log2() / (n * n.log2());
        ok &= trend > 0.0 && trend.is_finite();
        values.push(format!("n={}: {}", c.degree, format_sig12(trend)));
    }
    report(ok, 11, &format!("log2 c(n)/(n lg n) positive: {}", values.join(", ")));
}

#[test]
fn criterion_12_growth_floor() {
    let f: Vec<u64> = (1..=20u64).map(|n| n * n).collect();
    let series = growth_floor_demo(&f).expect("floor construction succeeds");
    let sums = series.partial_sums();
    let ok = (1..=20u64).all(|n| {
        sums[n as usize - 1] >= Coeff::from(BigInt::from(f[n as usize - 1]))
    });
    report(ok, 12, "partial sums of the floor series dominate f(n) = n^2 up to N = 20");
}

// Keep the numeric oracle honest about its own small values.
#[test]
fn moebius_oracle_self_check() {
    let c = moebius_times_square(10);
    assert_eq!(&c[1..=10], &[1, 3, 8, 12, 24, 24, 48, 48, 72, 72]);
    assert!(heisenberg_global().partial_sums()[9].to_f64().unwrap() > 0.0);
}
