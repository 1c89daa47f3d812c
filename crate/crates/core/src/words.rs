//! Binary words over the alphabet {1,2} and their isospectral clusters.
//!
//! A word encodes a matrix product (1 for the first matrix of a pair, 2 for
//! the second). Cyclic shifts of a word always yield products with the same
//! spectrum, and for 2x2 pairs so does the mirror image, so primitive words
//! group into clusters sharing one normalized spectral radius. Clusters are
//! complete as shift+mirror orbits only up to length 8; longer words are
//! rejected by the cluster operations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest word length for which shift+mirror orbits are known to be the
/// full isospectral clusters.
pub const MAX_CLUSTER_LEN: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("a word must contain at least one symbol")]
    Empty,
    #[error("invalid symbol {0}; words use symbols 1 and 2 only")]
    BadSymbol(u8),
    #[error("word {0} is not primitive")]
    NotPrimitive(String),
    #[error("length {0} is outside the supported range 1..={MAX_CLUSTER_LEN}")]
    LengthOutOfRange(usize),
}

/// A nonempty finite word over {1,2}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Result<Self, WordError> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(WordError::Empty);
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s != 1 && s != 2) {
            return Err(WordError::BadSymbol(bad));
        }
        Ok(Word(symbols))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: the empty word is unrepresentable.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    /// Number of occurrences of `symbol` (1 or 2).
    pub fn count(&self, symbol: u8) -> usize {
        self.0.iter().filter(|&&s| s == symbol).count()
    }

    /// The word written in opposite order.
    pub fn mirror(&self) -> Word {
        let mut s = self.0.clone();
        s.reverse();
        Word(s)
    }

    /// Swaps 1 and 2 pointwise.
    pub fn complement(&self) -> Word {
        Word(self.0.iter().map(|&s| 3 - s).collect())
    }

    /// Left rotation by `k` positions.
    pub fn cyclic_shift(&self, k: usize) -> Word {
        let n = self.0.len();
        let k = k % n;
        let mut s = Vec::with_capacity(n);
        s.extend_from_slice(&self.0[k..]);
        s.extend_from_slice(&self.0[..k]);
        Word(s)
    }

    /// The set of all rotations. Its size divides the length and equals the
    /// length exactly when the word is primitive.
    pub fn cyclic_shifts(&self) -> BTreeSet<Word> {
        (0..self.0.len()).map(|k| self.cyclic_shift(k)).collect()
    }

    /// True iff the word is not a power u^k of a strictly shorter word u.
    pub fn is_primitive(&self) -> bool {
        let n = self.0.len();
        for d in 1..n {
            if !n.is_multiple_of(d) {
                continue;
            }
            if (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return false;
            }
        }
        true
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut s = self.0.clone();
        s.extend_from_slice(&other.0);
        Word(s)
    }
}

// Sort by length first, then by digits; for equal lengths this is the numeric
// order of the words read as integers.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(WordError::Empty);
        }
        let mut symbols = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '1' => symbols.push(1),
                '2' => symbols.push(2),
                _ => return Err(WordError::BadSymbol(c as u8)),
            }
        }
        Ok(Word(symbols))
    }
}

/// Orbit of a primitive word under cyclic shifts and mirror images, together
/// with its numerically minimal member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsospectralCluster {
    members: BTreeSet<Word>,
    representative: Word,
}

impl IsospectralCluster {
    pub fn members(&self) -> &BTreeSet<Word> {
        &self.members
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }
}

/// Cluster of a primitive word of length <= 8: all cyclic shifts of the word
/// and of its mirror image.
pub fn cluster_of(w: &Word) -> Result<IsospectralCluster, WordError> {
    if w.len() > MAX_CLUSTER_LEN {
        return Err(WordError::LengthOutOfRange(w.len()));
    }
    if !w.is_primitive() {
        return Err(WordError::NotPrimitive(w.to_string()));
    }
    let mut members = w.cyclic_shifts();
    members.extend(w.mirror().cyclic_shifts());
    let representative = members.first().expect("orbit is nonempty").clone();
    Ok(IsospectralCluster {
        members,
        representative,
    })
}

/// Representatives of all clusters of primitive words of length <= `max_len`,
/// sorted by length and then numerically. For `max_len = 8` this list has
/// exactly 62 entries.
pub fn enumerate_representatives(max_len: usize) -> Result<Vec<Word>, WordError> {
    if max_len == 0 || max_len > MAX_CLUSTER_LEN {
        return Err(WordError::LengthOutOfRange(max_len));
    }
    let mut reps = BTreeSet::new();
    for n in 1..=max_len {
        for bits in 0..(1u32 << n) {
            let symbols: Vec<u8> = (0..n)
                .map(|i| if bits >> (n - 1 - i) & 1 == 0 { 1 } else { 2 })
                .collect();
            let w = Word(symbols);
            if !w.is_primitive() {
                continue;
            }
            reps.insert(cluster_of(&w)?.representative.clone());
        }
    }
    Ok(reps.into_iter().collect())
}

/// All words of length exactly `n`, in numeric order.
pub fn all_words(n: usize) -> Vec<Word> {
    assert!((1..=24).contains(&n), "word length {n} out of range");
    (0..(1u64 << n))
        .map(|bits| {
            Word(
                (0..n)
                    .map(|i| if bits >> (n - 1 - i) & 1 == 0 { 1 } else { 2 })
                    .collect(),
            )
        })
        .collect()
}
