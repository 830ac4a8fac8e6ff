//! Constant-time lookup tables built once per instance.
//!
//! [`NextOcc`] answers "leftmost occurrence of `α` in `B[j..n]`" and
//! [`OverlapAutomaton`] answers "longest prefix of `P` that is a suffix of
//! `P[1..t]·α`". Both are row-major with the alphabet as the minor axis, so
//! one DP step touches a single contiguous stripe.

use crate::codec::Symbol;

/// Leftmost-occurrence table over `B`. Positions are 1-based and `n + 1`
/// means "no occurrence".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NextOcc {
    n: usize,
    sigma: usize,
    // rows 0..=n+1; row 0 mirrors row 1
    table: Vec<u32>,
}

impl NextOcc {
    /// One right-to-left pass, `O(n * sigma_size)` time and space.
    pub fn build(b: &[Symbol], sigma_size: usize) -> Self {
        let n = b.len();
        let sigma = sigma_size;
        let sentinel = (n + 1) as u32;
        let mut table = vec![sentinel; (n + 2) * sigma];
        for j in (1..=n).rev() {
            let (head, tail) = table.split_at_mut((j + 1) * sigma);
            let row = &mut head[j * sigma..];
            row.copy_from_slice(&tail[..sigma]);
            let code = b[j - 1] as usize;
            debug_assert!((1..=sigma).contains(&code), "code {code} outside 1..={sigma}");
            row[code - 1] = j as u32;
        }
        if n > 0 {
            table.copy_within(sigma..2 * sigma, 0);
        }
        NextOcc { n, sigma, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma_size(&self) -> usize {
        self.sigma
    }

    pub fn sentinel(&self) -> u32 {
        (self.n + 1) as u32
    }

    /// `min{q | B[q] = alpha, q >= j}`, or `n + 1`.
    #[inline]
    pub fn query(&self, j: u32, alpha: Symbol) -> u32 {
        debug_assert!((j as usize) <= self.n + 1);
        debug_assert!(alpha >= 1 && (alpha as usize) <= self.sigma);
        self.table[j as usize * self.sigma + alpha as usize - 1]
    }
}

/// KMP failure function of `p`, indexed by prefix length: `kmp[0] = -1` and
/// `kmp[i]` is the longest proper border of `p[..i]`.
pub fn failure_function(p: &[Symbol]) -> Vec<i32> {
    let r = p.len();
    let mut kmp = vec![-1i32; r + 1];
    if r == 0 {
        return kmp;
    }
    kmp[1] = 0;
    let mut k: i32 = 0;
    for i in 2..=r {
        while k >= 0 && p[k as usize] != p[i - 1] {
            k = kmp[k as usize];
        }
        k += 1;
        kmp[i] = k;
    }
    kmp
}

/// Transition table of the prefix-overlap automaton of `P`.
///
/// States are `0..r`; a transition may return `r`, which marks an extension
/// that would complete an occurrence of `P`. There is no row for state `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapAutomaton {
    r: usize,
    alphabet: usize,
    failure: Vec<i32>,
    delta: Vec<u32>,
}

impl OverlapAutomaton {
    /// `alphabet_size` must cover every code of `Σ` and of `p`.
    pub fn build(p: &[Symbol], alphabet_size: usize) -> Self {
        let r = p.len();
        assert!(r >= 1, "pattern must be nonempty");
        assert!(
            p.iter().all(|&c| c >= 1 && c as usize <= alphabet_size),
            "pattern code outside 1..={alphabet_size}"
        );
        let failure = failure_function(p);
        let w = alphabet_size;
        let mut delta = vec![0u32; r * w];
        delta[p[0] as usize - 1] = 1;
        for k in 1..r {
            let border = failure[k] as usize;
            delta.copy_within(border * w..(border + 1) * w, k * w);
            delta[k * w + p[k] as usize - 1] = (k + 1) as u32;
        }
        OverlapAutomaton {
            r,
            alphabet: w,
            failure,
            delta,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn failure(&self) -> &[i32] {
        &self.failure
    }

    /// `overlap(P[1..t]·alpha)`; a result equal to `r` means the extension
    /// is forbidden.
    #[inline]
    pub fn step(&self, t: usize, alpha: Symbol) -> u32 {
        debug_assert!(t < self.r);
        debug_assert!(alpha >= 1 && (alpha as usize) <= self.alphabet);
        self.delta[t * self.alphabet + alpha as usize - 1]
    }

    /// Transitions out of state `t`, indexed by `code - 1`.
    pub fn row(&self, t: usize) -> &[u32] {
        &self.delta[t * self.alphabet..(t + 1) * self.alphabet]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // a = 1, b = 2, c = 3
    fn codes(s: &str) -> Vec<Symbol> {
        s.bytes().map(|c| (c - b'a' + 1) as Symbol).collect()
    }

    fn scan_next(b: &[Symbol], j: usize, alpha: Symbol) -> u32 {
        (j.max(1)..=b.len())
            .find(|&q| b[q - 1] == alpha)
            .unwrap_or(b.len() + 1) as u32
    }

    fn brute_border(p: &[Symbol]) -> usize {
        (0..p.len())
            .rev()
            .find(|&l| p[..l] == p[p.len() - l..])
            .unwrap_or(0)
    }

    fn brute_overlap(p: &[Symbol], s: &[Symbol]) -> u32 {
        (0..=p.len().min(s.len()))
            .rev()
            .find(|&l| p[..l] == s[s.len() - l..])
            .unwrap() as u32
    }

    #[test]
    fn next_occ_examples() {
        let b = codes("baabbcaa");
        let t = NextOcc::build(&b, 3);
        let (a_, b_, c_) = (1, 2, 3);
        assert_eq!(t.query(1, b_), 1);
        assert_eq!(t.query(2, b_), 4);
        assert_eq!(t.query(7, b_), 9);
        for alpha in [a_, b_, c_] {
            assert_eq!(t.query(9, alpha), 9);
        }
        assert_eq!(t.query(0, c_), 6);
        // oracle sweep
        for j in 0..=9 {
            for alpha in 1..=3 {
                assert_eq!(t.query(j, alpha), scan_next(&b, j as usize, alpha));
            }
        }
    }

    #[test]
    fn next_occ_on_empty_b() {
        let t = NextOcc::build(&[], 2);
        assert_eq!(t.query(1, 1), 1);
        assert_eq!(t.query(0, 2), 1);
    }

    #[test]
    fn failure_examples() {
        assert_eq!(failure_function(&codes("aab")), vec![-1, 0, 1, 0]);
        assert_eq!(failure_function(&codes("aaa")), vec![-1, 0, 1, 2]);
        assert_eq!(failure_function(&codes("c")), vec![-1, 0]);
        let p = codes("aab");
        for i in 1..=3 {
            assert_eq!(failure_function(&p)[i] as usize, brute_border(&p[..i]));
        }
    }

    #[test]
    fn automaton_examples() {
        let au = OverlapAutomaton::build(&codes("aab"), 3);
        assert_eq!(au.step(0, 1), 1);
        assert_eq!(au.step(0, 2), 0);
        assert_eq!(au.step(0, 3), 0);
        assert_eq!(au.step(1, 1), 2);
        assert_eq!(au.step(2, 1), 2);
        assert_eq!(au.step(2, 2), 3);
        assert_eq!(au.failure(), &[-1, 0, 1, 0]);
    }

    #[test]
    fn automaton_with_foreign_pattern_character() {
        // P = "az" with z outside Σ = {a}: z gets code 2
        let au = OverlapAutomaton::build(&[1, 2], 2);
        assert_eq!(au.step(0, 1), 1);
        assert_eq!(au.step(1, 1), 1);
        assert_eq!(au.row(1), &[1, 2]);
    }

    proptest! {
        #[test]
        fn next_occ_matches_scan(b in prop::collection::vec(1u32..=4, 0..20)) {
            let t = NextOcc::build(&b, 4);
            for j in 0..=b.len() + 1 {
                for alpha in 1..=4 {
                    prop_assert_eq!(t.query(j as u32, alpha), scan_next(&b, j, alpha));
                    if j <= b.len() {
                        prop_assert!(t.query(j as u32, alpha) <= t.query(j as u32 + 1, alpha));
                    }
                }
            }
            prop_assert_eq!(NextOcc::build(&b, 4), t);
        }

        #[test]
        fn automaton_matches_overlap_definition(p in prop::collection::vec(1u32..=3, 1..=8)) {
            let au = OverlapAutomaton::build(&p, 3);
            let kmp = failure_function(&p);
            for i in 1..=p.len() {
                prop_assert_eq!(kmp[i] as usize, brute_border(&p[..i]));
            }
            for t in 0..p.len() {
                prop_assert_eq!(au.step(t, p[t]) as usize, t + 1);
                for alpha in 1..=3 {
                    let mut s = p[..t].to_vec();
                    s.push(alpha);
                    let d = au.step(t, alpha);
                    prop_assert_eq!(d, brute_overlap(&p, &s));
                    prop_assert!(d as usize <= t + 1);
                    if d as usize == p.len() {
                        prop_assert!(s.ends_with(&p));
                    }
                }
            }
        }

        #[test]
        fn automaton_tracks_overlap_along_a_string(
            p in prop::collection::vec(1u32..=2, 1..=5),
            s in prop::collection::vec(1u32..=2, 0..24),
        ) {
            let au = OverlapAutomaton::build(&p, 2);
            let mut state = 0usize;
            for i in 0..s.len() {
                state = au.step(state, s[i]) as usize;
                prop_assert_eq!(state as u32, brute_overlap(&p, &s[..=i]));
                if state == p.len() {
                    break;
                }
            }
        }
    }
}
