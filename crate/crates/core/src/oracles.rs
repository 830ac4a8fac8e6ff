//! Reference solvers for differential testing and benchmarking.
//!
//! * [`brute_force`] enumerates subsequences directly. Exponential.
//! * [`wang_dp`] fills the cubic `f(i, j, k)` table.
//! * [`nakatsu_lcs`] is the unconstrained shortest-prefix LCS; it is the
//!   answer whenever `r > min(m, n)`.
//!
//! None of them shares code with [`crate::dp`]. `wang_dp` reuses the
//! overlap automaton and `nakatsu_lcs` reuses the next-occurrence table;
//! both tables are checked against their definitions in their own module.

use serde::Serialize;

use crate::codec::{ProblemInstance, Symbol};
use crate::next_tables::{NextOcc, OverlapAutomaton};
use crate::{Error, Result};

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Default cap on `(m + 1)(n + 1)r` for [`wang_dp`].
pub const WANG_DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSolution {
    pub length: usize,
    pub witness: Vec<Symbol>,
    /// Solver-specific work counter: search nodes, table entries, or steps.
    pub work: u64,
}

struct Enumeration<'a> {
    a: &'a [Symbol],
    b: &'a [Symbol],
    p: &'a [Symbol],
    z: Vec<Symbol>,
    best: Vec<Symbol>,
    work: u64,
}

impl Enumeration<'_> {
    // `z` is P-free and embeds in b[..b_pos] greedily.
    fn extend(&mut self, from: usize, b_pos: usize) {
        self.work += 1;
        if self.z.len() > self.best.len() || (self.z.len() == self.best.len() && self.z < self.best) {
            self.best.clone_from(&self.z);
        }
        for i in from..self.a.len() {
            let c = self.a[i];
            let Some(off) = self.b[b_pos..].iter().position(|&x| x == c) else {
                continue;
            };
            self.z.push(c);
            // anything extending a string that contains P contains P too
            if !self.z.ends_with(self.p) {
                self.extend(i + 1, b_pos + off + 1);
            }
            self.z.pop();
        }
    }
}

/// Exhaustive search over subsequences of the shorter string. Returns the
/// lexicographically smallest (by code) among the longest valid ones.
pub fn brute_force(instance: &ProblemInstance) -> Result<OracleSolution> {
    let (a, b) = if instance.a.len() <= instance.b.len() {
        (&instance.a, &instance.b)
    } else {
        (&instance.b, &instance.a)
    };
    if a.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::InstanceTooLarge {
            limit: BRUTE_FORCE_LIMIT,
            actual: a.len(),
        });
    }
    assert!(!instance.p.is_empty());
    let mut search = Enumeration {
        a,
        b,
        p: &instance.p,
        z: Vec::new(),
        best: Vec::new(),
        work: 0,
    };
    search.extend(0, 0);
    Ok(OracleSolution {
        length: search.best.len(),
        witness: search.best,
        work: search.work,
    })
}

const UNREACHABLE: i32 = -1;

/// Cubic DP over `f(i, j, k)`: the longest P-free common subsequence of
/// `A[1..i]` and `B[1..j]` whose overlap with `P` is `k`.
pub fn wang_dp(instance: &ProblemInstance, budget: u128) -> Result<OracleSolution> {
    let (a, b) = (&instance.a, &instance.b);
    let (m, n, r) = (a.len(), b.len(), instance.r());
    let required = (m as u128 + 1) * (n as u128 + 1) * r as u128;
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let automaton = OverlapAutomaton::build(&instance.p, instance.alphabet_size());
    // preds[(alpha - 1) * r + k] = all t with step(t, alpha) = k < r
    let sigma = instance.sigma_size;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); sigma * r];
    for alpha in 1..=sigma as Symbol {
        for t in 0..r {
            let k = automaton.step(t, alpha) as usize;
            if k < r {
                preds[(alpha as usize - 1) * r + k].push(t);
            }
        }
    }

    let idx = |i: usize, j: usize, k: usize| (i * (n + 1) + j) * r + k;
    let mut f = vec![UNREACHABLE; required as usize];
    for i in 0..=m {
        f[idx(i, 0, 0)] = 0;
    }
    for j in 0..=n {
        f[idx(0, j, 0)] = 0;
    }
    for i in 1..=m {
        for j in 1..=n {
            let matched = (a[i - 1] == b[j - 1]).then_some(a[i - 1]);
            for k in 0..r {
                let mut v = f[idx(i - 1, j, k)].max(f[idx(i, j - 1, k)]);
                if let Some(alpha) = matched {
                    for &t in &preds[(alpha as usize - 1) * r + k] {
                        let prev = f[idx(i - 1, j - 1, t)];
                        if prev != UNREACHABLE {
                            v = v.max(prev + 1);
                        }
                    }
                }
                f[idx(i, j, k)] = v;
            }
        }
    }

    let (mut k, length) = (0..r)
        .map(|t| (t, f[idx(m, n, t)]))
        .max_by_key(|&(t, v)| (v, std::cmp::Reverse(t)))
        .expect("r >= 1");
    debug_assert!(length >= 0);

    let (mut i, mut j, mut v) = (m, n, length);
    let mut witness = Vec::with_capacity(length as usize);
    while v > 0 {
        if f[idx(i - 1, j, k)] == v {
            i -= 1;
        } else if f[idx(i, j - 1, k)] == v {
            j -= 1;
        } else {
            let alpha = a[i - 1];
            debug_assert_eq!(alpha, b[j - 1]);
            let t = *preds[(alpha as usize - 1) * r + k]
                .iter()
                .find(|&&t| f[idx(i - 1, j - 1, t)] == v - 1)
                .expect("f value has a predecessor");
            witness.push(alpha);
            i -= 1;
            j -= 1;
            k = t;
            v -= 1;
        }
    }
    witness.reverse();

    Ok(OracleSolution {
        length: length as usize,
        witness,
        work: required as u64,
    })
}

/// Shortest-prefix table for plain LCS: `e(i, s)` is the length of the
/// shortest prefix of `B` whose LCS with `A[1..i]` has length `s`.
#[derive(Debug, Clone)]
pub struct ETable {
    // per diagonal c = i - s: (value, extended?) for s = 0, 1, ..
    diagonals: Vec<Vec<(u32, bool)>>,
    n: usize,
    steps: u64,
    best: usize,
}

impl ETable {
    /// With `skip_dominated`, diagonals that cannot exceed the best row are
    /// never opened, and their cells read as sentinel.
    pub fn build(a: &[Symbol], b: &[Symbol], skip_dominated: bool) -> Self {
        let (m, n) = (a.len(), b.len());
        let sigma = a.iter().chain(b).copied().max().unwrap_or(0) as usize;
        let next = NextOcc::build(b, sigma);
        let sentinel = (n + 1) as u32;
        let mut diagonals: Vec<Vec<(u32, bool)>> = Vec::new();
        let mut best = 0;
        let mut steps = 0u64;

        for c in 0..=m {
            if skip_dominated && m - c <= best {
                break;
            }
            let mut diag = vec![(0u32, false)];
            steps += 1;
            for s in 1..=m - c {
                let i = c + s;
                let left = c
                    .checked_sub(1)
                    .and_then(|p| diagonals[p].get(s))
                    .map_or(sentinel, |&(v, _)| v);
                let j = next.query(diag[s - 1].0 + 1, a[i - 1]);
                steps += 1;
                let cell = if j < left { (j, true) } else { (left, false) };
                if cell.0 >= sentinel {
                    break;
                }
                diag.push(cell);
                best = best.max(s);
            }
            diagonals.push(diag);
        }

        ETable {
            diagonals,
            n,
            steps,
            best,
        }
    }

    pub fn sentinel(&self) -> u32 {
        (self.n + 1) as u32
    }

    /// `e(i, s)`; cells never stored read as sentinel.
    pub fn value(&self, i: usize, s: usize) -> u32 {
        if s > i {
            return self.sentinel();
        }
        self.diagonals
            .get(i - s)
            .and_then(|d| d.get(s))
            .map_or(self.sentinel(), |&(v, _)| v)
    }

    pub fn lcs_length(&self) -> usize {
        self.best
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn witness(&self, a: &[Symbol]) -> Vec<Symbol> {
        let l = self.best;
        if l == 0 {
            return Vec::new();
        }
        let (_, mut i) = (0..self.diagonals.len())
            .filter_map(|c| self.diagonals[c].get(l).map(|&(v, _)| (v, c + l)))
            .min()
            .expect("some diagonal reaches the best row");
        let mut s = l;
        let mut out = Vec::with_capacity(l);
        while s > 0 {
            let (_, extended) = self.diagonals[i - s][s];
            if extended {
                out.push(a[i - 1]);
                s -= 1;
            }
            i -= 1;
        }
        out.reverse();
        out
    }
}

/// Plain LCS of two coded strings with one witness.
pub fn nakatsu_lcs(a: &[Symbol], b: &[Symbol]) -> OracleSolution {
    let table = ETable::build(a, b, true);
    OracleSolution {
        length: table.lcs_length(),
        witness: table.witness(a),
        work: table.steps(),
    }
}
