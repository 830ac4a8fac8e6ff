//! Diagonal shortest-prefix DP for pattern-excluding LCS.
//!
//! `d(i, s, k)` is the length of the shortest prefix of `B` that contains a
//! subsequence `Z` of `A[1..i]` with `|Z| = s`, no occurrence of `P`, and
//! `overlap(Z) = k`; `n + 1` means no such prefix exists. The answer is the
//! largest `s` with a non-sentinel entry.
//!
//! Cells are computed one diagonal (`c = i - s`) at a time, left to right.
//! A diagonal stops at its first all-sentinel cell (every deeper cell on it
//! is sentinel as well), and a diagonal is not opened at all once it cannot
//! reach past the best row found so far. Together these bound the work by
//! `O((L + 1)(m - L + 1) r)`.

use serde::Serialize;

use crate::codec::{ProblemInstance, Symbol};
use crate::next_tables::{NextOcc, OverlapAutomaton};

const UNSET: u32 = 0;
const CARRY: u32 = 1;
const EXTEND_BASE: u32 = 2;

/// Where a cell entry's value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Back {
    /// Sentinel entry, or a base-row entry.
    Unset,
    /// Copied from `d(i - 1, s, k)`.
    Carry,
    /// `A[i]` appended to the witness of `d(i - 1, s - 1, t)`.
    Extend(usize),
}

impl Back {
    fn decode(raw: u32) -> Back {
        match raw {
            UNSET => Back::Unset,
            CARRY => Back::Carry,
            t => Back::Extend((t - EXTEND_BASE) as usize),
        }
    }
}

/// Preprocessing shared by every solve on the same instance.
#[derive(Debug, Clone)]
pub struct Tables {
    pub next_occ: NextOcc,
    pub automaton: OverlapAutomaton,
}

impl Tables {
    pub fn build(instance: &ProblemInstance) -> Self {
        Tables {
            next_occ: NextOcc::build(&instance.b, instance.sigma_size),
            automaton: OverlapAutomaton::build(&instance.p, instance.alphabet_size()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpConfig {
    /// Record a [`Back`] for every entry (needed for witnesses).
    pub backpointers: bool,
    /// Keep every diagonal. Otherwise a diagonal is dropped once its successor is done.
    pub retain_all: bool,
    /// Skip diagonals that cannot beat the best row found so far.
    pub skip_dominated_diagonals: bool,
}

impl DpConfig {
    pub const LENGTH_ONLY: DpConfig = DpConfig {
        backpointers: false,
        retain_all: false,
        skip_dominated_diagonals: true,
    };

    pub const WITNESS: DpConfig = DpConfig {
        backpointers: true,
        retain_all: true,
        skip_dominated_diagonals: true,
    };
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig::LENGTH_ONLY
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DpStats {
    /// Steps executed times `r`.
    pub cells_computed: u64,
    pub diagonals_opened: usize,
    pub best_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub length: usize,
    pub witness: Option<Vec<Symbol>>,
    pub stats: DpStats,
}

#[derive(Debug, Clone, Default)]
struct Diagonal {
    values: Vec<u32>,
    back: Vec<u32>,
    cells: usize,
    capacity: usize,
    released: bool,
}

impl Diagonal {
    fn push(&mut self, r: usize, values: &[u32], back: Option<&[u32]>) {
        if self.cells == self.capacity {
            let grown = (self.capacity * 2).max(1);
            self.values.reserve_exact(grown * r - self.values.len());
            if back.is_some() {
                self.back.reserve_exact(grown * r - self.back.len());
            }
            self.capacity = grown;
        }
        self.values.extend_from_slice(values);
        if let Some(back) = back {
            self.back.extend_from_slice(back);
        }
        self.cells += 1;
    }

    fn cell(&self, r: usize, s: usize) -> Option<&[u32]> {
        (s < self.cells).then(|| &self.values[s * r..(s + 1) * r])
    }

    fn release(&mut self) {
        self.values = Vec::new();
        self.back = Vec::new();
        self.released = true;
    }
}

/// Sparse storage of `d`: one growable array per diagonal, capacity doubled
/// on demand. Cells that were never stored read as all-sentinel.
#[derive(Debug, Clone)]
pub struct DiagonalTable {
    diagonals: Vec<Diagonal>,
    m: usize,
    n: usize,
    r: usize,
    backpointers: bool,
}

impl DiagonalTable {
    fn new(m: usize, n: usize, r: usize, backpointers: bool) -> Self {
        DiagonalTable {
            diagonals: Vec::new(),
            m,
            n,
            r,
            backpointers,
        }
    }

    pub fn sentinel(&self) -> u32 {
        (self.n + 1) as u32
    }

    pub fn diagonals_opened(&self) -> usize {
        self.diagonals.len()
    }

    /// Number of stored cells on diagonal `c`.
    pub fn diagonal_len(&self, c: usize) -> usize {
        self.diagonals.get(c).map_or(0, |d| d.cells)
    }

    /// Allocated capacity, in cells, of diagonal `c`.
    pub fn diagonal_capacity(&self, c: usize) -> usize {
        self.diagonals.get(c).map_or(0, |d| d.capacity)
    }

    fn diagonal(&self, i: usize, s: usize) -> Option<&Diagonal> {
        assert!(s <= i && i <= self.m, "cell ({i}, {s}) outside 0 <= s <= i <= {}", self.m);
        let diag = self.diagonals.get(i - s)?;
        assert!(!diag.released, "diagonal {} was released", i - s);
        Some(diag)
    }

    /// The stored entries of cell `(i, s)`, if it was computed and kept.
    pub fn cell(&self, i: usize, s: usize) -> Option<&[u32]> {
        self.diagonal(i, s)?.cell(self.r, s)
    }

    /// `d(i, s, k)`; absent cells read as the sentinel.
    pub fn value(&self, i: usize, s: usize, k: usize) -> u32 {
        assert!(k < self.r);
        self.cell(i, s).map_or(self.sentinel(), |c| c[k])
    }

    /// Backpointer of `d(i, s, k)`, when recorded and the cell is stored.
    pub fn back(&self, i: usize, s: usize, k: usize) -> Option<Back> {
        if !self.backpointers {
            return None;
        }
        let diag = self.diagonal(i, s)?;
        (s < diag.cells).then(|| Back::decode(diag.back[s * self.r + k]))
    }

    /// Every stored cell as `(i, s, entries)`, diagonal by diagonal.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &[u32])> + '_ {
        let r = self.r;
        self.diagonals
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.released)
            .flat_map(move |(c, d)| (0..d.cells).map(move |s| (c + s, s, &d.values[s * r..(s + 1) * r])))
    }
}

/// Computes one cell `(i, s)` with `s >= 1`.
///
/// `same` is cell `(i - 1, s - 1)` and `left` is cell `(i - 1, s)` (`None`
/// when absent). `alpha` is `A[i]`. Writes the new entries into `values`
/// (and `back`, if given) and returns whether any entry is below the
/// sentinel.
pub fn step(
    same: &[u32],
    left: Option<&[u32]>,
    alpha: Symbol,
    next_occ: &NextOcc,
    automaton: &OverlapAutomaton,
    values: &mut [u32],
    mut back: Option<&mut [u32]>,
) -> bool {
    let sentinel = next_occ.sentinel();
    let r = values.len();
    match left {
        Some(left) => {
            values.copy_from_slice(left);
            if let Some(back) = back.as_deref_mut() {
                for (b, &v) in back.iter_mut().zip(left) {
                    *b = if v < sentinel { CARRY } else { UNSET };
                }
            }
        }
        None => {
            values.fill(sentinel);
            if let Some(back) = back.as_deref_mut() {
                back.fill(UNSET);
            }
        }
    }

    for (t, &prev) in same.iter().enumerate() {
        if prev >= sentinel {
            continue;
        }
        let target = automaton.step(t, alpha) as usize;
        if target >= r {
            // would complete an occurrence of P
            continue;
        }
        let j = next_occ.query(prev + 1, alpha);
        if j < values[target] {
            values[target] = j;
            if let Some(back) = back.as_deref_mut() {
                back[target] = EXTEND_BASE + t as u32;
            }
        }
    }

    values.iter().any(|&v| v < sentinel)
}

/// Fills the diagonal table and returns it with the work counters.
pub fn run_diagonals(
    instance: &ProblemInstance,
    tables: &Tables,
    config: DpConfig,
) -> (DiagonalTable, DpStats) {
    let (m, n, r) = (instance.m(), instance.n(), instance.r());
    assert!(r >= 1, "pattern must be nonempty");
    assert!(m <= n, "instance must be normalized so that m <= n");
    let sentinel = (n + 1) as u32;
    let a = &instance.a;

    let mut table = DiagonalTable::new(m, n, r, config.backpointers);
    let mut stats = DpStats::default();
    let mut best = 0usize;

    let mut base = vec![sentinel; r];
    base[0] = 0;
    let base_back = vec![UNSET; r];
    let mut values = vec![sentinel; r];
    let mut back = vec![UNSET; r];

    for c in 0..=m {
        if config.skip_dominated_diagonals && m - c <= best {
            break;
        }
        stats.diagonals_opened += 1;

        let mut diag = Diagonal::default();
        diag.push(r, &base, config.backpointers.then_some(&base_back[..]));
        stats.cells_computed += r as u64;

        let left_diag = c.checked_sub(1).map(|p| &table.diagonals[p]);
        for s in 1..=m - c {
            let i = c + s;
            let same = diag.cell(r, s - 1).expect("previous cell on the diagonal");
            let left = left_diag.and_then(|d| d.cell(r, s));
            let live = step(
                same,
                left,
                a[i - 1],
                &tables.next_occ,
                &tables.automaton,
                &mut values,
                config.backpointers.then_some(&mut back[..]),
            );
            stats.cells_computed += r as u64;
            if !live {
                break;
            }
            diag.push(r, &values, config.backpointers.then_some(&back[..]));
            best = best.max(s);
        }

        if !config.retain_all && c >= 1 {
            table.diagonals[c - 1].release();
        }
        table.diagonals.push(diag);
    }

    stats.best_length = best;
    (table, stats)
}

/// Recovers a witness of length `length` from a table built with
/// backpointers and full retention.
///
/// The start is the entry `d(i, length, k) < n + 1` with the smallest
/// value, then the smallest `i`, then the smallest `k`.
pub fn backtrack(table: &DiagonalTable, instance: &ProblemInstance, length: usize) -> Vec<Symbol> {
    assert!(table.backpointers, "backtracking needs backpointers");
    if length == 0 {
        return Vec::new();
    }
    let sentinel = table.sentinel();
    let mut start: Option<(u32, usize, usize)> = None;
    for c in 0..table.diagonals.len() {
        let i = c + length;
        if i > table.m {
            break;
        }
        if let Some(cell) = table.cell(i, length) {
            for (k, &v) in cell.iter().enumerate() {
                if v < sentinel && start.is_none_or(|best| (v, i, k) < best) {
                    start = Some((v, i, k));
                }
            }
        }
    }
    let (_, mut i, mut k) = start.expect("no cell reaches the requested length");

    let mut s = length;
    let mut out = Vec::with_capacity(length);
    while s > 0 {
        match table.back(i, s, k).expect("cell on the backtracking path is stored") {
            Back::Extend(t) => {
                out.push(instance.a[i - 1]);
                s -= 1;
                k = t;
            }
            Back::Carry => {}
            Back::Unset => unreachable!("unset backpointer at ({i}, {s}, {k})"),
        }
        i -= 1;
    }
    out.reverse();
    out
}

/// Length of a longest common subsequence of `a` and `b` avoiding `p`, and
/// optionally one such subsequence.
pub fn solve(instance: &ProblemInstance, want_witness: bool) -> SolveResult {
    let tables = Tables::build(instance);
    solve_with_tables(instance, &tables, want_witness)
}

pub fn solve_with_tables(
    instance: &ProblemInstance,
    tables: &Tables,
    want_witness: bool,
) -> SolveResult {
    let config = if want_witness {
        DpConfig::WITNESS
    } else {
        DpConfig::LENGTH_ONLY
    };
    let (table, stats) = run_diagonals(instance, tables, config);
    let length = stats.best_length;
    let witness = want_witness.then(|| backtrack(&table, instance, length));
    SolveResult {
        length,
        witness,
        stats,
    }
}
