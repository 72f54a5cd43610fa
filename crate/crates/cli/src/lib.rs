//! Text formats and command implementations behind the `commzeta` binary.
//!
//! Group tables arrive as `order k` followed by k rows of k entries.
//! Multigraphs arrive as `vertices V darts D`, then D lines
//! `dart_id vertex_id partner_dart_id`, then `base v0`.
//! Output is CSV with exact rational entries, or JSON embedding the config
//! echo, the library version, and the seed.

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use commzeta_core::dirichlet::TruncatedDirichletSeries;
use commzeta_core::finite_groups::random::{random_group, random_subgroup};
use commzeta_core::finite_groups::{build_affine_group, FiniteGroupTable, Subgroup};
use commzeta_core::heisenberg;
use commzeta_core::pgl2;
use commzeta_core::primes::is_prime;
use commzeta_core::twin_covers::{
    count_comm_classes, DartMultigraph, DegreeCount, EnumerationBudget, TwinError,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors sorted by exit code: validation failures exit 2, exceeded caps
/// exit 3, reproduction mismatches exit 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Invalid(String),
    CapExceeded(String),
    Mismatch(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "invalid input: {msg}"),
            CliError::CapExceeded(msg) => write!(f, "cap exceeded: {msg}"),
            CliError::Mismatch(msg) => write!(f, "reproduction mismatch: {msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::CapExceeded(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Twelve significant digits, the fixed precision for all floating output.
pub fn format_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

// ---------------------------------------------------------------------------
// Text formats

pub fn parse_multigraph(text: &str) -> Result<(DartMultigraph, u32), CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| invalid("empty multigraph file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "vertices" || fields[2] != "darts" {
        return Err(invalid("expected header `vertices V darts D`"));
    }
    let v: u32 = fields[1].parse().map_err(|_| invalid("bad vertex count"))?;
    let d: u32 = fields[3].parse().map_err(|_| invalid("bad dart count"))?;
    let mut dart_vertex = vec![0u32; d as usize];
    let mut partner = vec![0u32; d as usize];
    let mut seen = vec![false; d as usize];
    for _ in 0..d {
        let line = lines.next().ok_or_else(|| invalid("missing dart line"))?;
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| invalid(format!("bad dart line `{line}`"))))
            .collect::<Result<_, _>>()?;
        if nums.len() != 3 {
            return Err(invalid(format!("expected 3 fields in dart line `{line}`")));
        }
        let id = nums[0] as usize;
        if id >= d as usize || seen[id] {
            return Err(invalid(format!("dart id {id} out of range or repeated")));
        }
        seen[id] = true;
        dart_vertex[id] = nums[1];
        partner[id] = nums[2];
    }
    let base_line = lines.next().ok_or_else(|| invalid("missing `base v0` line"))?;
    let fields: Vec<&str> = base_line.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "base" {
        return Err(invalid("expected final line `base v0`"));
    }
    let base: u32 = fields[1].parse().map_err(|_| invalid("bad basepoint"))?;
    if base >= v {
        return Err(invalid(format!("basepoint {base} out of range")));
    }
    let graph = DartMultigraph::new(v, dart_vertex, partner)
        .map_err(|e| invalid(format!("bad multigraph: {e}")))?;
    Ok((graph, base))
}

pub fn write_multigraph(g: &DartMultigraph, base: u32) -> String {
    let mut out = format!("vertices {} darts {}\n", g.num_vertices(), g.num_darts());
    for d in 0..g.num_darts() {
        out.push_str(&format!("{d} {} {}\n", g.dart_vertex(d), g.partner(d)));
    }
    out.push_str(&format!("base {base}\n"));
    out
}

pub fn parse_group_table(text: &str) -> Result<FiniteGroupTable, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| invalid("empty group file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "order" {
        return Err(invalid("expected header `order k`"));
    }
    let k: usize = fields[1].parse().map_err(|_| invalid("bad order"))?;
    let mut mul = Vec::with_capacity(k * k);
    for _ in 0..k {
        let line = lines.next().ok_or_else(|| invalid("missing table row"))?;
        let row: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| invalid(format!("bad table row `{line}`"))))
            .collect::<Result<_, _>>()?;
        if row.len() != k {
            return Err(invalid(format!("expected {k} entries per row")));
        }
        mul.extend(row);
    }
    FiniteGroupTable::from_mul_table(k, mul, None)
        .map_err(|e| invalid(format!("not a group table: {e}")))
}

// ---------------------------------------------------------------------------
// Output rendering

pub fn series_to_rows(series: &TruncatedDirichletSeries, cumulative: bool) -> Vec<(u64, String)> {
    if cumulative {
        series
            .partial_sums()
            .iter()
            .enumerate()
            .map(|(i, c)| (i as u64 + 1, c.to_string()))
            .collect()
    } else {
        (1..=series.limit()).map(|n| (n, series.coeff(n).to_string())).collect()
    }
}

pub fn rows_to_csv(header: &str, rows: &[(u64, String)]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for (n, c) in rows {
        out.push_str(&format!("{n},{c}\n"));
    }
    out
}

pub fn degree_counts_to_csv(counts: &[DegreeCount]) -> String {
    let mut out = String::from("degree,pointed_covers,twin_covers,minimal_classes\n");
    for c in counts {
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.degree, c.pointed_covers, c.twin_covers, c.minimal_classes
        ));
    }
    out
}

/// JSON envelope shared by every subcommand: config echo, version, seed.
pub fn json_envelope(subcommand: &str, config: Value, seed: u64, results: Value) -> String {
    let doc = json!({
        "subcommand": subcommand,
        "config": config,
        "version": VERSION,
        "seed": seed,
        "results": results,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

pub fn rows_to_json_pairs(rows: &[(u64, String)]) -> Value {
    Value::Array(rows.iter().map(|(n, c)| json!([n, c])).collect())
}

// ---------------------------------------------------------------------------
// Command implementations; each returns the rendered output text.

pub fn cmd_heisenberg(
    p: u64,
    max_n: u32,
    oracle: bool,
    format: OutputFormat,
    seed: u64,
) -> Result<String, CliError> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let work = (p as u128).checked_pow(2 * max_n);
    if oracle && work.map_or(true, |w| w > 100_000_000) {
        return Err(CliError::CapExceeded(format!(
            "oracle enumeration p^(2n) at p={p}, n={max_n} is over 10^8"
        )));
    }
    let mut rows: Vec<Value> = Vec::new();
    let mut csv = String::from(if oracle {
        "n,index,c_formula,c_enumerated,match\n"
    } else {
        "n,index,c_formula\n"
    });
    for n in 0..=max_n {
        let index = p.pow(n);
        let formula = if n == 0 { 1 } else { p.pow(2 * n) - p.pow(2 * n - 2) };
        if oracle {
            let enumerated = heisenberg::local_count(p, n);
            csv.push_str(&format!(
                "{n},{index},{formula},{enumerated},{}\n",
                formula == enumerated
            ));
            rows.push(json!([n, index, formula, enumerated, formula == enumerated]));
        } else {
            csv.push_str(&format!("{n},{index},{formula}\n"));
            rows.push(json!([n, index, formula]));
        }
    }
    Ok(match format {
        OutputFormat::Csv => csv,
        OutputFormat::Json => json_envelope(
            "heisenberg",
            json!({"p": p, "max_n": max_n, "oracle": oracle}),
            seed,
            Value::Array(rows),
        ),
    })
}

pub fn cmd_pgl2_oracle(
    p: u64,
    n: u32,
    format: OutputFormat,
    seed: u64,
) -> Result<String, CliError> {
    let formula = pgl2::cartan_index(p, n);
    let oracle = pgl2::cartan_index_oracle(p, n, pgl2::DEFAULT_ORACLE_CAP).map_err(|e| match e {
        pgl2::Pgl2Error::OracleCapExceeded { .. } => CliError::CapExceeded(e.to_string()),
        other => invalid(other.to_string()),
    })?;
    let matches = formula == oracle;
    Ok(match format {
        OutputFormat::Csv => format!(
            "p,n,formula,oracle,match\n{p},{n},{formula},{oracle},{matches}\n"
        ),
        OutputFormat::Json => json_envelope(
            "pgl2",
            json!({"p": p, "n": n, "oracle": true}),
            seed,
            json!({"formula": formula, "oracle": oracle, "match": matches}),
        ),
    })
}

pub fn cmd_pgl2_global(
    limit: u64,
    ramified: &BTreeSet<u64>,
    cumulative: bool,
    format: OutputFormat,
    seed: u64,
) -> Result<String, CliError> {
    if limit == 0 {
        return Err(invalid("limit must be positive"));
    }
    for &p in ramified {
        if !is_prime(p) {
            return Err(invalid(format!("ramified entry {p} is not prime")));
        }
    }
    let series = pgl2::global_series_pgl2(ramified, limit)
        .map_err(|e| invalid(e.to_string()))?;
    let rows = series_to_rows(&series, cumulative);
    Ok(match format {
        OutputFormat::Csv => rows_to_csv(if cumulative { "n,c_upto_n" } else { "n,c_n" }, &rows),
        OutputFormat::Json => json_envelope(
            "pgl2",
            json!({
                "limit": limit,
                "ramified": ramified.iter().collect::<Vec<_>>(),
                "cumulative": cumulative,
            }),
            seed,
            rows_to_json_pairs(&rows),
        ),
    })
}

pub fn cmd_tree(
    base_text: &str,
    max_degree: u32,
    skip_minimality: bool,
    budget: EnumerationBudget,
    format: OutputFormat,
    seed: u64,
) -> Result<String, CliError> {
    let (graph, basepoint) = parse_multigraph(base_text)?;
    let counts = match count_comm_classes(&graph, basepoint, max_degree, budget, skip_minimality)
    {
        Ok(counts) => counts,
        Err(TwinError::BudgetExceeded { requested, allowed, .. }) => {
            return Err(CliError::CapExceeded(format!(
                "degree {requested} over budget {allowed}"
            )));
        }
        Err(e) => return Err(invalid(e.to_string())),
    };
    Ok(match format {
        OutputFormat::Csv => degree_counts_to_csv(&counts),
        OutputFormat::Json => json_envelope(
            "tree",
            json!({
                "max_degree": max_degree,
                "skip_minimality": skip_minimality,
                "budget_degree": budget.max_degree,
                "budget_base_vertices": budget.max_base_vertices,
            }),
            seed,
            Value::Array(
                counts
                    .iter()
                    .map(|c| {
                        json!([c.degree, c.pointed_covers, c.twin_covers, c.minimal_classes])
                    })
                    .collect(),
            ),
        ),
    })
}

fn comm_rows(group: &FiniteGroupTable, subgroup: &Subgroup) -> Vec<(u64, String)> {
    group
        .comm_classes(subgroup)
        .into_iter()
        .map(|(n, c)| (n, c.to_string()))
        .collect()
}

pub fn cmd_finite_table(
    group_text: &str,
    subgroup: &[u32],
    format: OutputFormat,
    seed: u64,
) -> Result<String, CliError> {
    let group = parse_group_table(group_text)?;
    let subgroup = group
        .subgroup_from_elements(subgroup)
        .map_err(|e| invalid(format!("bad subgroup: {e}")))?;
    let rows = comm_rows(&group, &subgroup);
    Ok(match format {
        OutputFormat::Csv => rows_to_csv("n,c_n", &rows),
        OutputFormat::Json => json_envelope(
            "finite",
            json!({"order": group.order(), "subgroup_size": subgroup.len()}),
            seed,
            rows_to_json_pairs(&rows),
        ),
    })
}

pub fn cmd_finite_affine(
    dim: usize,
    p: u64,
    size_cap: u128,
    format: OutputFormat,
    seed: u64,
) -> Result<String, CliError> {
    if dim == 0 {
        return Err(invalid("dimension must be positive"));
    }
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let (group, translations) = build_affine_group(dim, p, size_cap).map_err(|e| {
        use commzeta_core::finite_groups::GroupError;
        match e {
            GroupError::SizeCapExceeded { .. } => CliError::CapExceeded(e.to_string()),
            other => invalid(other.to_string()),
        }
    })?;
    let rows = comm_rows(&group, &translations);
    Ok(match format {
        OutputFormat::Csv => rows_to_csv("n,c_n", &rows),
        OutputFormat::Json => json_envelope(
            "finite",
            json!({"affine_dim": dim, "p": p, "order": group.order()}),
            seed,
            rows_to_json_pairs(&rows),
        ),
    })
}

/// Randomized check of the index inequalities on `trials` (group, element)
/// samples; reports the violation count, which must be zero.
pub fn cmd_finite_random(
    trials: u32,
    max_order: usize,
    seed: u64,
    format: OutputFormat,
) -> Result<String, CliError> {
    if max_order < 2 {
        return Err(invalid("max order must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0u32;
    let mut done = 0u32;
    while done < trials {
        let group = random_group(&mut rng, max_order);
        let a = random_subgroup(&mut rng, &group);
        for _ in 0..8 {
            if done >= trials {
                break;
            }
            done += 1;
            let x = rand::Rng::gen_range(&mut rng, 0..group.order() as u32);
            let y = rand::Rng::gen_range(&mut rng, 0..group.order() as u32);
            if group.chi(&a, x) != group.chi(&a, group.inv(x)) {
                violations += 1;
            }
            if group.chi(&a, group.mul(x, y)) > group.chi(&a, x) * group.chi(&a, y) {
                violations += 1;
            }
        }
    }
    Ok(match format {
        OutputFormat::Csv => format!("trials,violations\n{trials},{violations}\n"),
        OutputFormat::Json => json_envelope(
            "finite",
            json!({"random_trials": trials, "max_order": max_order}),
            seed,
            json!({"violations": violations}),
        ),
    })
}

pub fn cmd_series(
    kind: &str,
    limit: u64,
    ramified: &BTreeSet<u64>,
    cumulative: bool,
    format: OutputFormat,
    seed: u64,
) -> Result<String, CliError> {
    if limit == 0 {
        return Err(invalid("limit must be positive"));
    }
    let series = match kind {
        "identity" => TruncatedDirichletSeries::delta(limit).map_err(|e| invalid(e.to_string()))?,
        "heisenberg" => heisenberg::global_series(limit).map_err(|e| invalid(e.to_string()))?,
        "pgl2" => {
            pgl2::global_series_pgl2(ramified, limit).map_err(|e| invalid(e.to_string()))?
        }
        other => return Err(invalid(format!("unknown series kind `{other}`"))),
    };
    let rows = series_to_rows(&series, cumulative);
    Ok(match format {
        OutputFormat::Csv => rows_to_csv(if cumulative { "n,c_upto_n" } else { "n,c_n" }, &rows),
        OutputFormat::Json => json_envelope(
            "series",
            json!({"kind": kind, "limit": limit, "cumulative": cumulative}),
            seed,
            rows_to_json_pairs(&rows),
        ),
    })
}

// ---------------------------------------------------------------------------
// Theorem reproductions at desk scale. Each returns a human-readable summary
// and fails with `Mismatch` when a check is violated.

struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn new() -> Self {
        Self { lines: Vec::new(), failed: false }
    }

    fn check(&mut self, ok: bool, label: &str, detail: String) {
        let status = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!("{status} {label}: {detail}"));
        if !ok {
            self.failed = true;
        }
    }

    fn finish(self, title: &str) -> Result<String, CliError> {
        let mut text = format!("{title}\n");
        for line in &self.lines {
            text.push_str(line);
            text.push('\n');
        }
        if self.failed {
            Err(CliError::Mismatch(text))
        } else {
            Ok(text)
        }
    }
}

/// Cubic growth of the Heisenberg commensurizer: local counts, the global
/// Euler product against Moebius inversion, and the c_{<=N}/N^3 limit.
pub fn cmd_repro_thm1() -> Result<String, CliError> {
    let mut report = Report::new();

    for p in [2u64, 3] {
        for n in 1..=3u32 {
            let formula = p.pow(2 * n) - p.pow(2 * n - 2);
            let counted = heisenberg::local_count(p, n);
            report.check(
                counted == formula,
                "local count",
                format!("p={p} n={n} formula={formula} enumerated={counted}"),
            );
        }
    }

    let limit = 2000u64;
    let series = heisenberg::global_series(limit).expect("factors cover all primes");
    let oracle = moebius_times_square(limit);
    let agree = (1..=limit).all(|n| {
        series.coeff(n) == commzeta_core::dirichlet::Coeff::from(num_bigint_value(oracle[n as usize]))
    });
    report.check(agree, "euler product", format!("matches Moebius inversion up to N={limit}"));

    let sums = series.partial_sums();
    let ratio = rational_to_f64(&sums[limit as usize - 1]) / (limit as f64).powi(3);
    let target = 1.0 / (3.0 * ZETA3);
    let close = (ratio - target).abs() <= 0.1 * target;
    report.check(
        close,
        "cubic limit",
        format!(
            "c_upto_N/N^3 = {} vs 1/(3 zeta(3)) = {}",
            format_sig12(ratio),
            format_sig12(target)
        ),
    );

    report.finish("growth of the Heisenberg commensurizer (N=2000)")
}

/// Quadratic band for the arithmetic lattice series: oracle agreement and
/// boundedness of c_{<=n}/n^2.
pub fn cmd_repro_thm2() -> Result<String, CliError> {
    let mut report = Report::new();

    for (p, n) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let formula = pgl2::cartan_index(p, n);
        let oracle = pgl2::cartan_index_oracle(p, n, pgl2::DEFAULT_ORACLE_CAP)
            .expect("within default cap");
        report.check(
            formula == oracle,
            "cartan index",
            format!("p={p} n={n} formula={formula} oracle={oracle}"),
        );
    }

    let limit = 2000u64;
    let series =
        pgl2::global_series_pgl2(&BTreeSet::new(), limit).expect("factors cover all primes");
    let sums = series.partial_sums();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for n in 200..=limit {
        let r = rational_to_f64(&sums[n as usize - 1]) / (n as f64 * n as f64);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    report.check(
        lo > 0.0 && hi.is_finite(),
        "quadratic band",
        format!(
            "c_upto_n/n^2 in [{}, {}] over n in [200, {limit}]",
            format_sig12(lo),
            format_sig12(hi)
        ),
    );

    report.finish("quadratic growth band for the arithmetic lattice series (N=2000)")
}

/// Tree-lattice growth via twin covers of the 2-loop bouquet: the degree-1
/// class count, prime-degree minimality, and the superexponential trend.
pub fn cmd_repro_thm3() -> Result<String, CliError> {
    let mut report = Report::new();
    let bouquet = DartMultigraph::bouquet(2);
    let budget = EnumerationBudget::default();
    let filtered =
        count_comm_classes(&bouquet, 0, 3, budget, false).expect("within budget");
    let unfiltered =
        count_comm_classes(&bouquet, 0, 3, budget, true).expect("within budget");

    report.check(
        filtered[0].minimal_classes == 8,
        "degree one",
        format!("classes={} expected=8", filtered[0].minimal_classes),
    );
    for (a, b) in filtered.iter().zip(&unfiltered) {
        if is_prime(a.degree as u64) {
            report.check(
                a.minimal_classes == b.minimal_classes,
                "prime minimality",
                format!(
                    "degree={} filtered={} unfiltered={}",
                    a.degree, a.minimal_classes, b.minimal_classes
                ),
            );
        }
    }
    for c in filtered.iter().skip(1) {
        let n = c.degree as f64;
        let trend = (c.minimal_classes as f64).log2() / (n * n.log2());
        report.check(
            trend > 0.0,
            "growth trend",
            format!("degree={} log2(c)/(n lg n) = {}", c.degree, format_sig12(trend)),
        );
    }

    report.finish("tree lattice growth via twin covers (bouquet of 2 loops)")
}

pub const ZETA3: f64 = 1.202_056_903_159_594_2;

pub fn rational_to_f64(x: &commzeta_core::dirichlet::Coeff) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().expect("finite rational")
}

fn num_bigint_value(v: i128) -> num_bigint::BigInt {
    num_bigint::BigInt::from(v)
}

/// Coefficients of zeta(s-2)/zeta(s): the Dirichlet convolution of the
/// Moebius function with n^2, by direct divisor sieving.
pub fn moebius_times_square(limit: u64) -> Vec<i128> {
    let n = limit as usize;
    let mut mu = vec![1i64; n + 1];
    for p in commzeta_core::primes::primes_up_to(limit) {
        let p = p as usize;
        let mut k = p;
        while k <= n {
            mu[k] = -mu[k];
            k += p;
        }
        let p2 = p * p;
        let mut k = p2;
        while k <= n {
            mu[k] = 0;
            k += p2;
        }
    }
    let mut out = vec![0i128; n + 1];
    for d in 1..=n {
        if mu[d] == 0 {
            continue;
        }
        let mut m = d;
        while m <= n {
            let q = (m / d) as i128;
            out[m] += mu[d] as i128 * q * q;
            m += d;
        }
    }
    out
}
