//! Seeded fuzzing against the reference solvers, and counter-based
//! benchmarks.
//!
//! Every random instance is a pure function of `(seed, index)`, so a failure
//! report can always be replayed. Benchmarks assert on `cells_computed`,
//! never on wall time.

use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::codec::{contains_substring, ProblemInstance};
use crate::dp::{backtrack, run_diagonals, Back, DpConfig, Tables};
use crate::oracles::{brute_force, nakatsu_lcs, wang_dp, BRUTE_FORCE_LIMIT, WANG_DEFAULT_BUDGET};
use crate::Error;

/// Log-log slope above which cell growth no longer counts as near-linear.
pub const LINEAR_SLOPE_LIMIT: f64 = 1.3;

/// `2 (L + 2)(m - L + 2) r`: the work bound every solve must respect.
pub fn cell_bound(m: usize, length: usize, r: usize) -> u64 {
    2 * (length as u64 + 2) * ((m - length) as u64 + 2) * r as u64
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzConfig {
    pub instance_count: usize,
    pub max_m: usize,
    pub max_n: usize,
    pub max_r: usize,
    pub alphabet_size: usize,
    pub seed: u64,
    /// Compare against [`brute_force`] as well as [`wang_dp`].
    pub brute: bool,
    pub wang_budget: u128,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            instance_count: 10_000,
            max_m: 12,
            max_n: 12,
            max_r: 4,
            alphabet_size: 3,
            seed: 1,
            brute: true,
            wang_budget: WANG_DEFAULT_BUDGET,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.max_r == 0 {
            return Err(Error::Config("max_r must be at least 1".into()));
        }
        if self.alphabet_size == 0 {
            return Err(Error::Config("alphabet_size must be at least 1".into()));
        }
        if self.brute && self.max_m.min(self.max_n) > BRUTE_FORCE_LIMIT {
            return Err(Error::Config(format!(
                "brute force comparison needs min(max_m, max_n) <= {BRUTE_FORCE_LIMIT}"
            )));
        }
        Ok(())
    }
}

/// Raw strings of one test case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RawInstance {
    pub a: String,
    pub b: String,
    pub p: String,
}

impl RawInstance {
    pub fn encode(&self) -> Result<ProblemInstance, Error> {
        ProblemInstance::new(&self.a, &self.b, &self.p)
    }
}

/// The first `size` characters of a fixed alphabet `a, b, c, ...`.
pub fn alphabet(size: usize) -> Vec<char> {
    (0..size)
        .map(|i| {
            if i < 26 {
                (b'a' + i as u8) as char
            } else {
                char::from_u32(0x100 + i as u32).expect("valid code point")
            }
        })
        .collect()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_string(rng: &mut impl Rng, chars: &[char], len: usize) -> String {
    (0..len).map(|_| chars[rng.gen_range(0..chars.len())]).collect()
}

/// Regenerates instance `index` of a fuzz run.
pub fn replay(config: &FuzzConfig, index: usize) -> RawInstance {
    let mut rng = rng_for(config.seed, index as u64);
    let chars = alphabet(config.alphabet_size);
    let m = rng.gen_range(0..=config.max_m);
    let n = rng.gen_range(0..=config.max_n);
    let r = rng.gen_range(1..=config.max_r);
    RawInstance {
        a: random_string(&mut rng, &chars, m),
        b: random_string(&mut rng, &chars, n),
        p: random_string(&mut rng, &chars, r),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub length: usize,
    pub lcs_length: usize,
    pub cells_computed: u64,
    pub cell_bound: u64,
    pub brute_checked: bool,
    pub wang_checked: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub instances: usize,
    pub brute_checked: usize,
    pub wang_checked: usize,
    pub max_length: usize,
    pub total_cells: u64,
    /// Largest `cells_computed / cell_bound` seen.
    pub max_bound_ratio: f64,
    pub records: Vec<InstanceRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub seed: u64,
    pub index: usize,
    pub instance: RawInstance,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] Error),

    #[error(
        "counterexample (seed {}, index {}): {}\n  A = {:?}\n  B = {:?}\n  P = {:?}",
        .0.seed, .0.index, .0.reason, .0.instance.a, .0.instance.b, .0.instance.p
    )]
    Counterexample(Box<Counterexample>),

    #[error("instance generation failed: {0}")]
    Generation(String),
}

/// Runs the fast solver and the oracles on one instance and checks every
/// invariant. Returns a description of the first violation.
pub fn check_instance(
    instance: &ProblemInstance,
    brute: bool,
    wang_budget: u128,
) -> Result<InstanceRecord, String> {
    let (m, n, r) = (instance.m(), instance.n(), instance.r());
    let tables = Tables::build(instance);
    let (table, stats) = run_diagonals(instance, &tables, DpConfig::WITNESS);
    let length = stats.best_length;
    let witness = backtrack(&table, instance, length);

    if witness.len() != length || !instance.validate_witness(&witness) {
        return Err(format!("fast witness {:?} is invalid for length {length}", instance.decode(&witness)));
    }

    let sentinel = table.sentinel();
    for (i, s, cell) in table.cells() {
        for (k, &v) in cell.iter().enumerate() {
            if i >= 1 && s < i && v > table.value(i - 1, s, k) {
                return Err(format!("d({i},{s},{k}) = {v} exceeds d({},{s},{k})", i - 1));
            }
            if v == 0 && (s != 0 || k != 0) {
                return Err(format!("d({i},{s},{k}) is 0"));
            }
            if let Some(Back::Extend(t)) = table.back(i, s, k) {
                let next = tables.automaton.step(t, instance.a[i - 1]) as usize;
                if next != k || next >= r {
                    return Err(format!("d({i},{s},{k}) extends state {t} into {next}"));
                }
                if table.value(i - 1, s - 1, t) >= sentinel {
                    return Err(format!("d({i},{s},{k}) extends a sentinel entry"));
                }
            }
        }
    }

    let bound = cell_bound(m, length, r);
    if stats.cells_computed > bound {
        return Err(format!("cells_computed {} exceeds bound {bound}", stats.cells_computed));
    }
    if stats.cells_computed < (r * length) as u64 {
        return Err("cells_computed below r * length".into());
    }

    let lcs = nakatsu_lcs(&instance.a, &instance.b);
    if length > lcs.length {
        return Err(format!("length {length} exceeds plain LCS {}", lcs.length));
    }
    if r > m && length != lcs.length {
        return Err(format!("r > m but length {length} differs from LCS {}", lcs.length));
    }

    let mut wang_checked = false;
    if let Ok(wang) = wang_dp(instance, wang_budget) {
        if wang.length != length {
            return Err(format!("fast {length} vs wang {}", wang.length));
        }
        if !instance.validate_witness(&wang.witness) {
            return Err("wang witness is invalid".into());
        }
        wang_checked = true;
    }

    if brute {
        let bf = brute_force(instance).map_err(|e| e.to_string())?;
        if bf.length != length {
            return Err(format!("fast {length} vs brute force {}", bf.length));
        }
        if !instance.validate_witness(&bf.witness) {
            return Err("brute-force witness is invalid".into());
        }
    }

    Ok(InstanceRecord {
        index: 0,
        m,
        n,
        r,
        length,
        lcs_length: lcs.length,
        cells_computed: stats.cells_computed,
        cell_bound: bound,
        brute_checked: brute,
        wang_checked,
    })
}

/// Checks `instance_count` seeded random instances in parallel. The first
/// failing index (in index order) is reported.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport, HarnessError> {
    config.validate()?;
    let outcomes: Vec<Result<InstanceRecord, Counterexample>> = (0..config.instance_count)
        .into_par_iter()
        .map(|index| {
            let raw = replay(config, index);
            let fail = |reason: String| Counterexample {
                seed: config.seed,
                index,
                instance: raw.clone(),
                reason,
            };
            let instance = raw.encode().map_err(|e| fail(e.to_string()))?;
            check_instance(&instance, config.brute, config.wang_budget)
                .map(|rec| InstanceRecord { index, ..rec })
                .map_err(fail)
        })
        .collect();

    let mut records = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        records.push(outcome.map_err(|c| HarnessError::Counterexample(Box::new(c)))?);
    }

    Ok(FuzzReport {
        config: config.clone(),
        instances: records.len(),
        brute_checked: records.iter().filter(|r| r.brute_checked).count(),
        wang_checked: records.iter().filter(|r| r.wang_checked).count(),
        max_length: records.iter().map(|r| r.length).max().unwrap_or(0),
        total_cells: records.iter().map(|r| r.cells_computed).sum(),
        max_bound_ratio: records
            .iter()
            .map(|r| r.cells_computed as f64 / r.cell_bound as f64)
            .fold(0.0, f64::max),
        records,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EditBudget {
    Fixed(usize),
    /// `ceil(fraction * n)` edits.
    Fraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Generator {
    /// `B` random, `A` = `B` with a few deletions/substitutions, `P` absent
    /// from both.
    HighSimilarity { edits: EditBudget },
    /// `A` over one half of the alphabet, `B` over the other, plus `overlap`
    /// forced cross insertions in each.
    LowSimilarity { overlap: usize },
    Random,
    /// Long runs of one character with sparse separators, `P` = that
    /// character repeated `r` times.
    AdversarialPattern { separators: usize },
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::HighSimilarity { .. } => "high-similarity",
            Generator::LowSimilarity { .. } => "low-similarity",
            Generator::Random => "random",
            Generator::AdversarialPattern { .. } => "adversarial-pattern",
        }
    }

    /// Families whose answer satisfies `L = O(1)` or `m - L = O(1)`.
    pub fn expects_linear_cells(&self) -> bool {
        match self {
            Generator::HighSimilarity { edits } => matches!(edits, EditBudget::Fixed(_)),
            Generator::LowSimilarity { .. } | Generator::AdversarialPattern { .. } => true,
            Generator::Random => false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchFamily {
    pub generator: Generator,
    /// Raw lengths of `B` (and of `A` before edits).
    pub sizes: Vec<usize>,
    pub r: usize,
    pub alphabet_size: usize,
    pub repetitions: usize,
    pub seed: u64,
    /// Run [`wang_dp`] where its table fits this budget; 0 disables it.
    pub wang_budget: u128,
}

impl BenchFamily {
    /// `m = n` in `{2^10, .., 2^14}`, `r = 4`, 16 edits.
    pub fn high_similarity_sweep() -> Self {
        BenchFamily {
            generator: Generator::HighSimilarity {
                edits: EditBudget::Fixed(16),
            },
            sizes: (10..=14).map(|e| 1 << e).collect(),
            r: 4,
            alphabet_size: 20,
            repetitions: 1,
            seed: 7,
            wang_budget: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub size: usize,
    pub repetition: usize,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub length: usize,
    pub cells_computed: u64,
    pub cell_bound: u64,
    pub diagonals_opened: usize,
    pub wang_table_size: u128,
    pub wang_length: Option<usize>,
    pub fast_ms: f64,
    pub wang_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub family: String,
    pub rows: Vec<BenchRow>,
    /// Log-log slope of `cells_computed` against `m`.
    pub cells_slope: Option<f64>,
    /// Log-log slope of `(m + 1)(n + 1) r` against `m`.
    pub wang_slope: Option<f64>,
    /// `cells_slope < LINEAR_SLOPE_LIMIT`, for families where that is expected.
    pub linear_check: Option<bool>,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Deterministically generates repetition `rep` of size `size`.
pub fn generate(family: &BenchFamily, size: usize, rep: usize) -> Result<RawInstance, HarnessError> {
    let chars = alphabet(family.alphabet_size);
    let r = family.r;
    if r == 0 || r > size {
        return Err(HarnessError::Config(Error::Config(format!("need 1 <= r <= size, got r = {r}"))));
    }
    let mut rng = rng_for(family.seed, ((size as u64) << 20) | rep as u64);

    let raw = match family.generator {
        Generator::Random => RawInstance {
            a: random_string(&mut rng, &chars, size),
            b: random_string(&mut rng, &chars, size),
            p: random_string(&mut rng, &chars, r),
        },
        Generator::HighSimilarity { edits } => {
            let edits = match edits {
                EditBudget::Fixed(e) => e,
                EditBudget::Fraction(f) => (f * size as f64).ceil() as usize,
            };
            high_similarity(&mut rng, &chars, size, r, edits)?
        }
        Generator::LowSimilarity { overlap } => {
            if chars.len() < 2 {
                return Err(HarnessError::Generation("low-similarity needs at least 2 characters".into()));
            }
            let (x, y) = chars.split_at(chars.len() / 2);
            let forced = overlap.max(x.len()).max(y.len()).min(size);
            let mut a: Vec<char> = random_string(&mut rng, x, size).chars().collect();
            let mut b: Vec<char> = random_string(&mut rng, y, size).chars().collect();
            for (q, pos) in sample(&mut rng, size, forced).into_iter().enumerate() {
                a[pos] = y[q % y.len()];
            }
            for (q, pos) in sample(&mut rng, size, forced).into_iter().enumerate() {
                b[pos] = x[q % x.len()];
            }
            RawInstance {
                a: a.into_iter().collect(),
                b: b.into_iter().collect(),
                p: random_string(&mut rng, &chars, r),
            }
        }
        Generator::AdversarialPattern { separators } => {
            if chars.len() < 2 {
                return Err(HarnessError::Generation("adversarial-pattern needs at least 2 characters".into()));
            }
            let runs = |rng: &mut ChaCha8Rng| -> String {
                let mut s = vec![chars[0]; size];
                for pos in sample(rng, size, separators.min(size)) {
                    s[pos] = chars[rng.gen_range(1..chars.len())];
                }
                s.into_iter().collect()
            };
            RawInstance {
                a: runs(&mut rng),
                b: runs(&mut rng),
                p: std::iter::repeat_n(chars[0], r).collect(),
            }
        }
    };
    Ok(raw)
}

fn high_similarity(
    rng: &mut ChaCha8Rng,
    chars: &[char],
    size: usize,
    r: usize,
    edits: usize,
) -> Result<RawInstance, HarnessError> {
    const ATTEMPTS: usize = 1000;
    for _ in 0..ATTEMPTS {
        let p: Vec<char> = random_string(rng, chars, r).chars().collect();
        let b: Vec<char> = random_string(rng, chars, size).chars().collect();
        if contains_substring(&b, &p) {
            continue;
        }
        let mut a = b.clone();
        for _ in 0..edits {
            let pos = rng.gen_range(0..a.len());
            if a.len() > r && rng.gen_bool(0.5) {
                a.remove(pos);
            } else if chars.len() > 1 {
                let mut c = a[pos];
                while c == a[pos] {
                    c = chars[rng.gen_range(0..chars.len())];
                }
                a[pos] = c;
            }
        }
        if contains_substring(&a, &p) {
            continue;
        }
        return Ok(RawInstance {
            a: a.into_iter().collect(),
            b: b.into_iter().collect(),
            p: p.into_iter().collect(),
        });
    }
    Err(HarnessError::Generation(format!(
        "no length-{r} pattern absent from a length-{size} string after {ATTEMPTS} attempts; use a larger alphabet"
    )))
}

fn counterexample(family: &BenchFamily, size: usize, rep: usize, raw: &RawInstance, reason: String) -> HarnessError {
    HarnessError::Counterexample(Box::new(Counterexample {
        seed: family.seed,
        index: size * 1000 + rep,
        instance: raw.clone(),
        reason,
    }))
}

/// Runs the fast solver (and the cubic oracle where it fits the budget)
/// over every size and repetition of a family.
pub fn bench(family: &BenchFamily) -> Result<BenchReport, HarnessError> {
    let mut rows = Vec::new();
    for &size in &family.sizes {
        for rep in 0..family.repetitions {
            let raw = generate(family, size, rep)?;
            let instance = raw.encode()?;
            let (m, n, r) = (instance.m(), instance.n(), instance.r());
            if r > m {
                return Err(HarnessError::Generation(format!("generated r = {r} > m = {m}")));
            }

            let start = Instant::now();
            let tables = Tables::build(&instance);
            let (_, stats) = run_diagonals(&instance, &tables, DpConfig::LENGTH_ONLY);
            let fast_ms = start.elapsed().as_secs_f64() * 1e3;
            let length = stats.best_length;
            let bound = cell_bound(m, length, r);
            if stats.cells_computed > bound {
                return Err(counterexample(
                    family,
                    size,
                    rep,
                    &raw,
                    format!("cells_computed {} exceeds bound {bound}", stats.cells_computed),
                ));
            }

            let wang_table_size = (m as u128 + 1) * (n as u128 + 1) * r as u128;
            let (mut wang_length, mut wang_ms) = (None, None);
            if family.wang_budget > 0 && wang_table_size <= family.wang_budget {
                let start = Instant::now();
                let wang = wang_dp(&instance, family.wang_budget)?;
                wang_ms = Some(start.elapsed().as_secs_f64() * 1e3);
                if wang.length != length {
                    return Err(counterexample(
                        family,
                        size,
                        rep,
                        &raw,
                        format!("fast {length} vs wang {}", wang.length),
                    ));
                }
                wang_length = Some(wang.length);
            }

            rows.push(BenchRow {
                size,
                repetition: rep,
                m,
                n,
                r,
                length,
                cells_computed: stats.cells_computed,
                cell_bound: bound,
                diagonals_opened: stats.diagonals_opened,
                wang_table_size,
                wang_length,
                fast_ms,
                wang_ms,
            });
        }
    }

    let cells: Vec<(f64, f64)> = rows.iter().map(|r| (r.m as f64, r.cells_computed as f64)).collect();
    let wang: Vec<(f64, f64)> = rows.iter().map(|r| (r.m as f64, r.wang_table_size as f64)).collect();
    let cells_slope = loglog_slope(&cells);
    let linear_check = family
        .generator
        .expects_linear_cells()
        .then(|| cells_slope.is_some_and(|s| s < LINEAR_SLOPE_LIMIT));

    Ok(BenchReport {
        family: family.generator.name().to_string(),
        rows,
        cells_slope,
        wang_slope: loglog_slope(&wang),
        linear_check,
    })
}
