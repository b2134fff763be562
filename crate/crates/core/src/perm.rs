//! k-permutations of `[n] = {1, ..., n}`, their lexicographic ranking, and
//! cyclic symbol sequences together with the universal-cycle validator.
//!
//! Symbols are 1-based everywhere a user can see them. Ranks are 0-based so
//! they can index dense arrays directly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported alphabet; symbol sets are tracked in a `u128` bitmask.
pub const MAX_ALPHABET: usize = 127;

/// The symbol set `{1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ALPHABET {
            return Err(Error::Parameter(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {n}"
            )));
        }
        Ok(Alphabet(n))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn contains(self, symbol: u32) -> bool {
        symbol >= 1 && symbol as usize <= self.0
    }
}

/// Number of k-permutations of an n-set, `n! / (n - k)!`.
///
/// Returns `None` on overflow or when `k > n`.
pub fn count_k_permutations(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return None;
    }
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul((n - i) as u64))
}

/// An ordered arrangement of `k` distinct symbols from `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KPermutation {
    symbols: Vec<u32>,
}

impl KPermutation {
    pub fn new(symbols: Vec<u32>, n: usize) -> Result<Self> {
        let alphabet = Alphabet::new(n)?;
        if symbols.is_empty() || symbols.len() > n {
            return Err(Error::InvalidPermutation(format!(
                "length {} not in 1..={n}",
                symbols.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &s in &symbols {
            if !alphabet.contains(s) {
                return Err(Error::InvalidPermutation(format!(
                    "symbol {s} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[s as usize], true) {
                return Err(Error::InvalidPermutation(format!("symbol {s} repeated")));
            }
        }
        Ok(KPermutation { symbols })
    }

    /// Builds a permutation from symbols already known to be valid.
    pub(crate) fn from_trusted(symbols: Vec<u32>) -> Self {
        KPermutation { symbols }
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbols concatenated without separators when every symbol is a single
    /// digit, otherwise joined with `,`.
    pub fn to_compact_string(&self) -> String {
        compact(&self.symbols)
    }
}

pub(crate) fn compact(symbols: &[u32]) -> String {
    if symbols.iter().all(|&s| s < 10) {
        symbols.iter().map(|s| s.to_string()).collect()
    } else {
        symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for KPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

/// Zero-based lexicographic rank of `p` among all `|p|`-permutations of `[n]`.
pub fn rank(p: &KPermutation, n: usize) -> Result<u64> {
    // Re-validate: `p` may have been built for a different alphabet.
    let p = KPermutation::new(p.symbols.clone(), n)?;
    Ok(rank_unchecked(&p.symbols, n))
}

/// Rank of a symbol slice that is known to be a valid permutation over `[n]`.
pub(crate) fn rank_unchecked(symbols: &[u32], n: usize) -> u64 {
    let k = symbols.len();
    let mut used = 0u128;
    let mut r = 0u64;
    for (i, &s) in symbols.iter().enumerate() {
        let smaller_unused = (1..s).filter(|&t| used & (1 << t) == 0).count() as u64;
        // Each choice at position i fixes a block of (n-i-1)!/(n-k)! suffixes.
        let block = count_k_permutations(n - i - 1, k - i - 1).unwrap_or(u64::MAX);
        r += smaller_unused * block;
        used |= 1 << s;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(r: u64, n: usize, k: usize) -> Result<KPermutation> {
    Alphabet::new(n)?;
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("k = {k} not in 1..={n}")));
    }
    let total = count_k_permutations(n, k)
        .ok_or_else(|| Error::Parameter(format!("P({n},{k}) does not fit in 64 bits")))?;
    if r >= total {
        return Err(Error::RankOutOfRange { rank: r, total });
    }
    let mut remaining: Vec<u32> = (1..=n as u32).collect();
    let mut rest = r;
    let mut symbols = Vec::with_capacity(k);
    for i in 0..k {
        let block = count_k_permutations(n - i - 1, k - i - 1).expect("fits, since total fits");
        let idx = (rest / block) as usize;
        rest %= block;
        symbols.push(remaining.remove(idx));
    }
    Ok(KPermutation::from_trusted(symbols))
}

/// A symbol sequence read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicSequence {
    symbols: Vec<u32>,
}

impl CyclicSequence {
    pub fn new(symbols: Vec<u32>) -> Self {
        CyclicSequence { symbols }
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The sequence rotated left by `shift` positions.
    pub fn rotated(&self, shift: usize) -> CyclicSequence {
        let mut symbols = self.symbols.clone();
        if !symbols.is_empty() {
            let len = symbols.len();
            symbols.rotate_left(shift % len);
        }
        CyclicSequence { symbols }
    }

    /// The `k` symbols starting at `pos`, wrapping around the end.
    pub fn window(&self, pos: usize, k: usize) -> Vec<u32> {
        let len = self.symbols.len();
        (0..k).map(|i| self.symbols[(pos + i) % len]).collect()
    }
}

/// Cycle text format: decimal symbols separated by single spaces.
impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for CyclicSequence {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Parameter(format!("not a symbol: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(CyclicSequence::new)
    }
}

/// Why a sequence is not a universal cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `k` is not in `1..=n`.
    BadParameters {
        n: usize,
        k: usize,
    },
    WrongLength {
        expected: u64,
        got: usize,
    },
    /// The window starting at `position` repeats a symbol or leaves `[n]`.
    InvalidWindow {
        position: usize,
        window: Vec<u32>,
    },
    /// The same k-permutation starts at two positions.
    RepeatedWindow {
        first: usize,
        second: usize,
        window: Vec<u32>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadParameters { n, k } => write!(f, "k = {k} not in 1..={n}"),
            Violation::WrongLength { expected, got } => {
                write!(f, "wrong length: expected {expected}, got {got}")
            }
            Violation::InvalidWindow { position, window } => write!(
                f,
                "window at position {position} is not a k-permutation: {}",
                CyclicSequence::new(window.clone())
            ),
            Violation::RepeatedWindow {
                first,
                second,
                window,
            } => write!(
                f,
                "window {} repeated at positions {first} and {second}",
                CyclicSequence::new(window.clone())
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}

/// Checks that every k-permutation of `[n]` occurs exactly once among the
/// cyclic windows of `c`. Reversals are not identified: a cycle and its
/// reversal are judged independently.
pub fn is_universal_cycle(c: &CyclicSequence, n: usize, k: usize) -> Verdict {
    if n == 0 || n > MAX_ALPHABET || k == 0 || k > n {
        return Verdict::Invalid(Violation::BadParameters { n, k });
    }
    let expected = match count_k_permutations(n, k) {
        Some(e) => e,
        None => {
            return Verdict::Invalid(Violation::WrongLength {
                expected: u64::MAX,
                got: c.len(),
            })
        }
    };
    if c.len() as u64 != expected {
        return Verdict::Invalid(Violation::WrongLength {
            expected,
            got: c.len(),
        });
    }
    let alphabet = Alphabet(n);
    let mut first_seen: HashMap<u64, usize> = HashMap::with_capacity(c.len());
    for pos in 0..c.len() {
        let window = c.window(pos, k);
        let mut mask = 0u128;
        let valid = window.iter().all(|&s| {
            let fresh = alphabet.contains(s) && mask & (1 << s) == 0;
            if fresh {
                mask |= 1 << s;
            }
            fresh
        });
        if !valid {
            return Verdict::Invalid(Violation::InvalidWindow {
                position: pos,
                window,
            });
        }
        let r = rank_unchecked(&window, n);
        if let Some(&first) = first_seen.get(&r) {
            return Verdict::Invalid(Violation::RepeatedWindow {
                first,
                second: pos,
                window,
            });
        }
        first_seen.insert(r, pos);
    }
    Verdict::Valid
}

/// The lexicographically least rotation of `c`.
pub fn canonical_rotation(c: &CyclicSequence) -> Result<CyclicSequence> {
    if c.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(c.rotated(least_rotation(&c.symbols)))
}

/// Start index of the least rotation (two-candidate scan, linear time).
fn least_rotation(s: &[u32]) -> usize {
    let len = s.len();
    let (mut i, mut j, mut off) = (0usize, 1usize, 0usize);
    while i < len && j < len && off < len {
        let a = s[(i + off) % len];
        let b = s[(j + off) % len];
        if a == b {
            off += 1;
            continue;
        }
        if a > b {
            i += off + 1;
        } else {
            j += off + 1;
        }
        if i == j {
            j += 1;
        }
        off = 0;
    }
    i.min(j)
}
