//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; any failure makes the target fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use streclcs::dp::{run_diagonals, solve, Back, DpConfig, Tables};
use streclcs::harness::{self, BenchFamily, FuzzConfig, Generator, LINEAR_SLOPE_LIMIT};
use streclcs::oracles::nakatsu_lcs;
use streclcs::{NextOcc, OverlapAutomaton, ProblemInstance, Symbol};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn codes(inst: &ProblemInstance, s: &str) -> Vec<Symbol> {
    s.chars().map(|c| inst.codec.encode_char(c).unwrap()).collect()
}

fn worked_example() -> Outcome {
    let inst = ProblemInstance::new("abcabac", "acbcaacbaa", "abc").unwrap();
    let mut fastest = Duration::MAX;
    let mut res = None;
    for _ in 0..5 {
        let start = Instant::now();
        let r = solve(&inst, true);
        fastest = fastest.min(start.elapsed());
        res = Some(r);
    }
    let res = res.unwrap();
    ensure!(res.length == 5, "length {} != 5", res.length);
    ensure!(fastest < Duration::from_millis(1), "solve took {fastest:?}");
    for z in ["bcaac", "bcaba", "acaac", "acaba", "abaac", "ababa"] {
        ensure!(inst.validate_witness(&codes(&inst, z)), "{z} rejected");
    }
    for z in ["abcaba", "abcaac"] {
        ensure!(!inst.validate_witness(&codes(&inst, z)), "{z} accepted");
    }
    let lcs = nakatsu_lcs(&inst.a, &inst.b).length;
    ensure!(lcs == 6, "plain LCS {lcs} != 6");
    Ok(format!("length 5, LCS 6, solve {fastest:?}"))
}

fn figure_example() -> Outcome {
    let inst = ProblemInstance::new("aabacab", "baabbcaa", "aab").unwrap();
    let res = solve(&inst, true);
    ensure!(res.length == 4, "length {} != 4", res.length);
    let w = res.witness.unwrap();
    ensure!(inst.validate_witness(&w), "witness {} invalid", inst.decode(&w));

    let (table, _) = run_diagonals(&inst, &Tables::build(&inst), DpConfig::WITNESS);
    let (d641, d530) = (table.value(6, 4, 1), table.value(5, 3, 0));
    ensure!(d641 == 7, "d(6,4,1) = {d641}");
    ensure!(d530 == 6, "d(5,3,0) = {d530}");
    let back = table.back(6, 4, 1);
    ensure!(back == Some(Back::Extend(0)), "d(6,4,1) backpointer {back:?}");
    Ok(format!("length 4, witness {}, d(6,4,1)=7 <- d(5,3,0)=6", inst.decode(&w)))
}

fn lcs_figure() -> Outcome {
    let inst = ProblemInstance::new("aabacab", "baabbcaa", "z").unwrap();
    let lcs = nakatsu_lcs(&inst.a, &inst.b).length;
    ensure!(lcs == 5, "LCS {lcs} != 5");
    Ok("LCS 5".into())
}

fn oracle_equivalence() -> Outcome {
    let config = FuzzConfig::default();
    ensure!(config.instance_count >= 10_000, "too few instances");
    let start = Instant::now();
    let report = harness::fuzz(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(report.brute_checked == report.instances, "brute skipped on some instances");
    ensure!(report.wang_checked == report.instances, "wang skipped on some instances");
    ensure!(elapsed < Duration::from_secs(60), "fuzzing took {elapsed:?}");
    Ok(format!("{} instances agree, {elapsed:.2?}", report.instances))
}

fn scan_next(b: &[Symbol], j: usize, alpha: Symbol) -> u32 {
    (j.max(1)..=b.len()).find(|&q| b[q - 1] == alpha).unwrap_or(b.len() + 1) as u32
}

fn brute_overlap(p: &[Symbol], s: &[Symbol]) -> u32 {
    (0..=p.len().min(s.len())).rev().find(|&l| p[..l] == s[s.len() - l..]).unwrap() as u32
}

fn preprocessing_tables() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs = 1000;
    for _ in 0..pairs {
        let sigma = rng.gen_range(1..=4usize);
        let n = rng.gen_range(0..=24);
        let r = rng.gen_range(1..=8);
        let b: Vec<Symbol> = (0..n).map(|_| rng.gen_range(1..=sigma as Symbol)).collect();
        let p: Vec<Symbol> = (0..r).map(|_| rng.gen_range(1..=sigma as Symbol)).collect();

        let next = NextOcc::build(&b, sigma);
        for j in 1..=n + 1 {
            for alpha in 1..=sigma as Symbol {
                let (got, want) = (next.query(j as u32, alpha), scan_next(&b, j, alpha));
                ensure!(got == want, "next_B({j},{alpha}) = {got}, want {want} for B={b:?}");
            }
        }
        let automaton = OverlapAutomaton::build(&p, sigma);
        for t in 0..r {
            for alpha in 1..=sigma as Symbol {
                let mut s = p[..t].to_vec();
                s.push(alpha);
                let (got, want) = (automaton.step(t, alpha), brute_overlap(&p, &s));
                ensure!(got == want, "next_sigma({t},{alpha}) = {got}, want {want} for P={p:?}");
            }
        }
    }
    Ok(format!("{pairs} (B, P) pairs match"))
}

fn complexity() -> Outcome {
    let report = harness::fuzz(&FuzzConfig::default()).map_err(|e| e.to_string())?;
    for rec in &report.records {
        ensure!(
            rec.cells_computed <= rec.cell_bound,
            "instance {}: {} cells > bound {}",
            rec.index,
            rec.cells_computed,
            rec.cell_bound
        );
    }

    let sweep = BenchFamily::high_similarity_sweep();
    ensure!(sweep.sizes == vec![1024, 2048, 4096, 8192, 16384] && sweep.r == 4, "sweep parameters");
    let bench = harness::bench(&sweep).map_err(|e| e.to_string())?;
    for row in &bench.rows {
        ensure!(row.m.abs_diff(row.n) * 100 <= row.n, "m = {} far from n = {}", row.m, row.n);
    }
    let cells = bench.cells_slope.ok_or("no slope")?;
    let wang = bench.wang_slope.ok_or("no slope")?;
    ensure!(cells < LINEAR_SLOPE_LIMIT, "cells slope {cells:.3} >= {LINEAR_SLOPE_LIMIT}");
    ensure!((wang - 2.0).abs() < 0.1, "wang table slope {wang:.3} not ~2");

    let random = BenchFamily {
        generator: Generator::Random,
        sizes: vec![4096],
        r: 8,
        alphabet_size: 4,
        repetitions: 1,
        seed: 11,
        wang_budget: 0,
    };
    let row = &harness::bench(&random).map_err(|e| e.to_string())?.rows[0];
    ensure!(row.cells_computed as u128 <= row.wang_table_size, "random: {} cells vs table {}", row.cells_computed, row.wang_table_size);
    let mnr = (row.m * row.n * row.r) as u64;
    ensure!(row.cells_computed < mnr, "random: {} cells >= m*n*r = {mnr}", row.cells_computed);

    Ok(format!(
        "bound holds on {} fuzzed; sweep slope {cells:.3}, wang slope {wang:.3}; random {} < {mnr}",
        report.instances, row.cells_computed
    ))
}

fn reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let chars = ['a', 'b', 'c'];
    let gen = |rng: &mut ChaCha8Rng, len: usize| -> String { (0..len).map(|_| chars[rng.gen_range(0..3)]).collect() };
    let count = 1000;
    for idx in 0..count {
        let (ma, nb) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
        let a = gen(&mut rng, ma);
        let b = gen(&mut rng, nb);
        let r = ma.min(nb) + rng.gen_range(1..=3);
        let p = gen(&mut rng, r);
        let inst = ProblemInstance::new(&a, &b, &p).unwrap();
        ensure!(inst.r() > inst.m(), "instance {idx} does not satisfy r > min(m, n)");
        let (fast, lcs) = (solve(&inst, false).length, nakatsu_lcs(&inst.a, &inst.b).length);
        ensure!(fast == lcs, "instance {idx}: fast {fast} vs LCS {lcs} ({a:?}, {b:?}, {p:?})");
    }
    Ok(format!("{count} instances equal plain LCS"))
}

fn determinism() -> Outcome {
    for (a, b, p) in [("abcabac", "acbcaacbaa", "abc"), ("aabacab", "baabbcaa", "aab"), ("abababbaab", "babaabbab", "ab")] {
        let inst = ProblemInstance::new(a, b, p).unwrap();
        ensure!(solve(&inst, true) == solve(&inst, true), "solve differs on {a}/{b}/{p}");
    }
    let config = FuzzConfig {
        instance_count: 2000,
        seed: 42,
        ..FuzzConfig::default()
    };
    let first = harness::fuzz(&config).map_err(|e| e.to_string())?;
    let second = harness::fuzz(&config).map_err(|e| e.to_string())?;
    let key = |r: &harness::InstanceRecord| (r.index, r.m, r.n, r.r, r.length, r.cells_computed);
    ensure!(
        first.records.iter().map(key).eq(second.records.iter().map(key)),
        "fuzz records differ between runs"
    );
    for index in [0, 1, 999] {
        let raw = harness::replay(&config, index);
        let x = solve(&raw.encode().unwrap(), true);
        let y = solve(&harness::replay(&config, index).encode().unwrap(), true);
        ensure!(x == y, "replay {index} differs");
    }
    let sweep = BenchFamily {
        sizes: vec![1024, 2048],
        ..BenchFamily::high_similarity_sweep()
    };
    let (x, y) = (harness::bench(&sweep).unwrap(), harness::bench(&sweep).unwrap());
    ensure!(
        x.rows.iter().map(|r| (r.length, r.cells_computed)).eq(y.rows.iter().map(|r| (r.length, r.cells_computed))),
        "bench counters differ"
    );
    Ok("solve, fuzz, replay, bench repeat identically".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 worked example (length 5, witnesses, LCS 6, < 1 ms)", worked_example),
        ("AC2 figure instance (length 4, witness, d(6,4,1) trace)", figure_example),
        ("AC3 plain LCS of the figure strings is 5", lcs_figure),
        ("AC4 oracle equivalence over 10^4 seeded instances", oracle_equivalence),
        ("AC5 preprocessing tables match their definitions", preprocessing_tables),
        ("AC6 work bound and near-linear high-similarity sweep", complexity),
        ("AC7 r > min(m, n) reduces to plain LCS", reduction),
        ("AC8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
