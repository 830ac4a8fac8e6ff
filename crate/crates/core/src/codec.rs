//! Dense recoding of raw input characters.
//!
//! Characters that occur in only one of `A` and `B` can never be part of a
//! common subsequence, so they are dropped before solving. The remaining
//! alphabet is recoded to `1..=sigma_size` in order of first occurrence in
//! `A`. Characters of `P` that survive nowhere get their own codes above
//! `sigma_size`: the pattern is never shortened.

use std::collections::{HashMap, HashSet};

use crate::{Error, Result};

/// Dense character code. Codes start at 1.
pub type Symbol = u32;

/// Longest accepted filtered input; positions up to `n + 1` must fit a `u32`.
pub const MAX_INPUT_LEN: usize = (u32::MAX - 2) as usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codec {
    forward: HashMap<char, Symbol>,
    backward: Vec<char>,
    sigma_size: usize,
}

impl Codec {
    /// Number of characters shared by `A` and `B`.
    pub fn sigma_size(&self) -> usize {
        self.sigma_size
    }

    /// Shared characters plus pattern characters outside the shared set.
    pub fn alphabet_size(&self) -> usize {
        self.backward.len()
    }

    pub fn encode_char(&self, c: char) -> Option<Symbol> {
        self.forward.get(&c).copied()
    }

    pub fn decode_symbol(&self, code: Symbol) -> Option<char> {
        let idx = (code as usize).checked_sub(1)?;
        self.backward.get(idx).copied()
    }

    /// Decodes a coded string. Panics on codes the codec never issued.
    pub fn decode(&self, codes: &[Symbol]) -> String {
        codes
            .iter()
            .map(|&c| {
                self.decode_symbol(c)
                    .unwrap_or_else(|| panic!("symbol {c} was not issued by this codec"))
            })
            .collect()
    }

    fn is_shared(&self, code: Symbol) -> bool {
        (code as usize) <= self.sigma_size
    }
}

/// Builds the codec for one `(A, B, P)` triple.
pub fn build_codec(a_raw: &[char], b_raw: &[char], p_raw: &[char]) -> Codec {
    let in_b: HashSet<char> = b_raw.iter().copied().collect();
    let mut forward = HashMap::new();
    let mut backward = Vec::new();

    for &c in a_raw {
        if in_b.contains(&c) && !forward.contains_key(&c) {
            backward.push(c);
            forward.insert(c, backward.len() as Symbol);
        }
    }
    let sigma_size = backward.len();

    for &c in p_raw {
        if let std::collections::hash_map::Entry::Vacant(e) = forward.entry(c) {
            backward.push(c);
            e.insert(backward.len() as Symbol);
        }
    }

    Codec {
        forward,
        backward,
        sigma_size,
    }
}

/// A normalized instance: filtered, recoded, and ordered so that `m <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub a: Vec<Symbol>,
    pub b: Vec<Symbol>,
    pub p: Vec<Symbol>,
    pub sigma_size: usize,
    /// `a` and `b` hold the raw `B` and `A` respectively.
    pub swapped: bool,
    pub original_a: Vec<char>,
    pub original_b: Vec<char>,
    pub codec: Codec,
}

/// Filters and recodes the raw strings with a codec built from them.
pub fn encode_instance(
    a_raw: &[char],
    b_raw: &[char],
    p_raw: &[char],
    codec: Codec,
) -> Result<ProblemInstance> {
    if p_raw.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let filter = |raw: &[char]| -> Vec<Symbol> {
        raw.iter()
            .filter_map(|&c| codec.encode_char(c))
            .filter(|&code| codec.is_shared(code))
            .collect()
    };
    let mut a = filter(a_raw);
    let mut b = filter(b_raw);
    let p: Vec<Symbol> = p_raw
        .iter()
        .map(|&c| codec.encode_char(c).expect("codec built from a different pattern"))
        .collect();

    for len in [a.len(), b.len(), p.len()] {
        if len > MAX_INPUT_LEN {
            return Err(Error::InputTooLong {
                len,
                max: MAX_INPUT_LEN,
            });
        }
    }

    let swapped = a.len() > b.len();
    if swapped {
        std::mem::swap(&mut a, &mut b);
    }

    Ok(ProblemInstance {
        a,
        b,
        p,
        sigma_size: codec.sigma_size,
        swapped,
        original_a: a_raw.to_vec(),
        original_b: b_raw.to_vec(),
        codec,
    })
}

impl ProblemInstance {
    pub fn new(a: &str, b: &str, p: &str) -> Result<Self> {
        let a: Vec<char> = a.chars().collect();
        let b: Vec<char> = b.chars().collect();
        let p: Vec<char> = p.chars().collect();
        Self::from_chars(&a, &b, &p)
    }

    pub fn from_chars(a: &[char], b: &[char], p: &[char]) -> Result<Self> {
        let codec = build_codec(a, b, p);
        encode_instance(a, b, p, codec)
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn r(&self) -> usize {
        self.p.len()
    }

    /// Size of the code space, including pattern-only characters.
    pub fn alphabet_size(&self) -> usize {
        self.codec.alphabet_size()
    }

    pub fn decode(&self, z: &[Symbol]) -> String {
        self.codec.decode(z)
    }

    /// True iff `z` is a common subsequence of `a` and `b` that does not
    /// contain `p` as a substring. Optimality is not checked.
    pub fn validate_witness(&self, z: &[Symbol]) -> bool {
        is_subsequence(z, &self.a) && is_subsequence(z, &self.b) && !contains_substring(z, &self.p)
    }

    /// [`validate_witness`](Self::validate_witness) against the raw inputs.
    pub fn validate_raw_witness(&self, z: &str) -> bool {
        let z: Vec<char> = z.chars().collect();
        is_subsequence(&z, &self.original_a)
            && is_subsequence(&z, &self.original_b)
            && !contains_substring(&z, &self.codec.decode(&self.p).chars().collect::<Vec<_>>())
    }
}

/// Greedy left-to-right embedding test.
pub fn is_subsequence<T: PartialEq>(z: &[T], s: &[T]) -> bool {
    let mut it = s.iter();
    z.iter().all(|c| it.any(|x| x == c))
}

pub fn contains_substring<T: PartialEq>(z: &[T], p: &[T]) -> bool {
    p.is_empty() || z.windows(p.len()).any(|w| w == p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn code_str(inst: &ProblemInstance, s: &str) -> Vec<Symbol> {
        s.chars().map(|c| inst.codec.encode_char(c).unwrap()).collect()
    }

    #[test]
    fn codec_drops_unshared_characters() {
        let codec = build_codec(&chars("abcx"), &chars("abcy"), &chars("b"));
        assert_eq!(codec.sigma_size(), 3);
        assert_eq!(codec.encode_char('x'), None);
        assert_eq!(codec.encode_char('y'), None);
        assert_eq!(codec.encode_char('a'), Some(1));
        assert_eq!(codec.encode_char('c'), Some(3));
    }

    #[test]
    fn codec_on_worked_example() {
        let codec = build_codec(&chars("abcabac"), &chars("acbcaacbaa"), &chars("abc"));
        assert_eq!(codec.sigma_size(), 3);
        assert_eq!(codec.alphabet_size(), 3);
    }

    #[test]
    fn codec_empty_intersection() {
        let codec = build_codec(&chars(""), &chars("abc"), &chars("a"));
        assert_eq!(codec.sigma_size(), 0);
        // the pattern character still gets a code
        assert_eq!(codec.encode_char('a'), Some(1));
        assert_eq!(codec.alphabet_size(), 1);
    }

    #[test]
    fn foreign_pattern_characters_are_coded_above_sigma() {
        let codec = build_codec(&chars("ab"), &chars("ba"), &chars("zaz"));
        assert_eq!(codec.sigma_size(), 2);
        assert_eq!(codec.encode_char('z'), Some(3));
    }

    #[test]
    fn encode_small_instance() {
        let inst = ProblemInstance::new("abcx", "abcy", "b").unwrap();
        assert_eq!(inst.a, vec![1, 2, 3]);
        assert_eq!(inst.b, vec![1, 2, 3]);
        assert_eq!(inst.p, vec![2]);
        assert!(!inst.swapped);
    }

    #[test]
    fn encode_worked_example_dimensions() {
        let inst = ProblemInstance::new("abcabac", "acbcaacbaa", "abc").unwrap();
        assert_eq!((inst.m(), inst.n(), inst.r()), (7, 10, 3));
        assert!(!inst.swapped);
    }

    #[test]
    fn encode_swaps_to_keep_a_shorter() {
        let inst = ProblemInstance::new("aabbaabbaabbaabb", "ab", "a").unwrap();
        assert!(inst.swapped);
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.n(), 16);
    }

    #[test]
    fn empty_pattern_is_rejected() {
        assert_eq!(ProblemInstance::new("ab", "ab", "").unwrap_err(), Error::EmptyPattern);
    }

    #[test]
    fn witness_validation_on_worked_example() {
        let inst = ProblemInstance::new("abcabac", "acbcaacbaa", "abc").unwrap();
        for z in ["bcaac", "bcaba", "acaac", "acaba", "abaac", "ababa"] {
            assert!(inst.validate_witness(&code_str(&inst, z)), "{z}");
            assert!(inst.validate_raw_witness(z), "{z}");
        }
        for z in ["abcaba", "abcaac"] {
            assert!(!inst.validate_witness(&code_str(&inst, z)), "{z}");
        }
        assert!(inst.validate_witness(&[]));
        // not a subsequence of A
        assert!(!inst.validate_witness(&code_str(&inst, "cccc")));
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(a in "[a-e]{0,12}", b in "[a-e]{0,12}", p in "[a-g]{1,4}") {
            let inst = ProblemInstance::new(&a, &b, &p).unwrap();
            prop_assert_eq!(inst.decode(&inst.p), p.clone());

            let sigma: HashSet<char> = a.chars().filter(|c| b.contains(*c)).collect();
            let keep = |s: &str| s.chars().filter(|c| sigma.contains(c)).collect::<String>();
            let (fa, fb) = if inst.swapped { (&inst.b, &inst.a) } else { (&inst.a, &inst.b) };
            prop_assert_eq!(inst.decode(fa), keep(&a));
            prop_assert_eq!(inst.decode(fb), keep(&b));

            prop_assert!(inst.m() <= inst.n());
            prop_assert!(inst.sigma_size <= inst.m());
            for &c in inst.a.iter().chain(&inst.b) {
                prop_assert!(c >= 1 && c as usize <= inst.sigma_size);
            }
            for &c in &inst.a {
                prop_assert!(inst.b.contains(&c));
            }
            for &c in &inst.b {
                prop_assert!(inst.a.contains(&c));
            }
        }
    }
}
