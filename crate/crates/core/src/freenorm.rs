//! The cancelation norm on free groups.
//!
//! The norm of a word is the least number of letters whose deletion leaves
//! a word that freely reduces to the empty word; it coincides with the
//! conjugation-invariant word norm of the element the word represents.
//! [`NormTable`] fills the triangular table of norms of all contiguous
//! subwords in O(n³) time and O(n²) memory; [`brute_force_norm`] is the
//! independent subset-enumeration oracle used to validate it.

use crate::words::{Word, WordError};
use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreenormError {
    #[error("word of length {len} exceeds the brute-force guard ({max}); use brute_force_norm_with_limit to override")]
    TooLarge { len: usize, max: usize },
}

/// Default length guard for the exponential brute-force oracle.
pub const BRUTE_FORCE_MAX_LEN: usize = 20;

/// Triangular table of cancelation norms of all contiguous subwords,
/// indexed by (start, length). Cell values are `u16`; word lengths up to
/// 2¹⁶−1 are supported.
#[derive(Debug, Clone)]
pub struct NormTable {
    n: usize,
    cells: Vec<u16>,
}

impl NormTable {
    /// Fill the table one start position at a time, longest suffix first.
    /// For a subword `x·w'` the value is the smaller of `1 + ‖w'‖` (the
    /// leading letter is deleted) and `min ‖u‖ + ‖v‖` over all splits
    /// `w' = u x⁻¹ v` (the leading letter cancels against a surviving
    /// `x⁻¹`). Every dependency of row `start` lives in rows to its right,
    /// so scanning starts in descending order keeps reads sequential.
    pub fn build(w: &Word) -> NormTable {
        let letters = w.letters();
        let n = letters.len();
        assert!(
            n < u16::MAX as usize,
            "norm table supports word lengths below {}",
            u16::MAX
        );
        let mut table = NormTable {
            n,
            cells: vec![0u16; n * (n + 1) / 2],
        };
        for start in (0..n).rev() {
            table.set(start, 1, 1);
            let x = letters[start];
            let x_inv = x.inverse();
            for len in 2..=(n - start) {
                let mut best = 1 + table.get_by_len(start + 1, len - 1);
                for p in (start + 1)..(start + len) {
                    if letters[p] == x_inv {
                        let left = table.get_by_len(start + 1, p - start - 1);
                        let right = table.get_by_len(p + 1, start + len - p - 1);
                        let candidate = left + right;
                        if candidate < best {
                            best = candidate;
                        }
                    }
                }
                table.set(start, len, best);
            }
        }
        table
    }

    fn index(&self, start: usize, len: usize) -> usize {
        debug_assert!(len >= 1 && start + len <= self.n);
        // rows are grouped by start: row `start` holds the n-start suffix lengths
        start * (2 * self.n + 1 - start) / 2 + (len - 1)
    }

    fn get_by_len(&self, start: usize, len: usize) -> u16 {
        if len == 0 {
            0
        } else {
            self.cells[self.index(start, len)]
        }
    }

    fn set(&mut self, start: usize, len: usize, value: u16) {
        let idx = self.index(start, len);
        self.cells[idx] = value;
    }

    /// Word length the table was built from.
    pub fn word_len(&self) -> usize {
        self.n
    }

    /// Norm of the subword `letters[i..=j]`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.n, "cell ({i},{j}) out of range");
        self.get_by_len(i, j - i + 1) as usize
    }

    /// Norm of the whole word.
    pub fn norm(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.get(0, self.n - 1)
        }
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn memory_bytes(&self) -> usize {
        self.cells.len() * std::mem::size_of::<u16>()
    }
}

/// The cancelation norm ‖w‖ of the element represented by `w`. The input
/// is not reduced first; the result is invariant under free reduction.
pub fn cancelation_norm(w: &Word) -> usize {
    NormTable::build(w).norm()
}

/// Independent oracle: enumerate deletion subsets by increasing
/// cardinality (lexicographically within each cardinality) and return the
/// first cardinality whose deletion leaves a freely trivial word.
pub fn brute_force_norm(w: &Word) -> Result<usize, FreenormError> {
    brute_force_norm_with_limit(w, BRUTE_FORCE_MAX_LEN)
}

pub fn brute_force_norm_with_limit(w: &Word, max_len: usize) -> Result<usize, FreenormError> {
    let n = w.len();
    if n > max_len {
        return Err(FreenormError::TooLarge { len: n, max: max_len });
    }
    let letters = w.letters();
    let mut survivor = Vec::with_capacity(n);
    let mut k = n % 2;
    loop {
        debug_assert!(k <= n);
        for deleted in (0..n).combinations(k) {
            survivor.clear();
            let mut next = deleted.iter().copied().peekable();
            for (i, &l) in letters.iter().enumerate() {
                if next.peek() == Some(&i) {
                    next.next();
                } else if survivor.last().is_some_and(|&top: &_| l.is_inverse_of(top)) {
                    survivor.pop();
                } else {
                    survivor.push(l);
                }
            }
            if survivor.is_empty() {
                return Ok(k);
            }
        }
        k += 2;
    }
}

/// Positions whose deletion realizes the norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivializingSequence {
    indices: Vec<usize>,
}

impl TrivializingSequence {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The word left after deleting the sequence from `w`.
    pub fn survivor(&self, w: &Word) -> Word {
        let mut next = self.indices.iter().copied().peekable();
        let letters = w
            .letters()
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| {
                if next.peek() == Some(&i) {
                    next.next();
                    None
                } else {
                    Some(l)
                }
            })
            .collect();
        Word::from_letters(w.alphabet(), letters)
    }
}

/// Recover a minimal trivializing sequence by backtracking through the
/// norm table. Ties prefer the delete-first-letter branch, then the
/// smallest split position, so the output is deterministic.
pub fn trivializing_sequence(w: &Word) -> TrivializingSequence {
    let table = NormTable::build(w);
    let letters = w.letters();
    let mut indices = Vec::with_capacity(table.norm());
    // explicit stack of (start, len) segments still to resolve
    let mut segments = vec![(0usize, letters.len())];
    while let Some((start, len)) = segments.pop() {
        if len == 0 {
            continue;
        }
        let value = table.get_by_len(start, len);
        if value == 1 + table.get_by_len(start + 1, len - 1) {
            indices.push(start);
            segments.push((start + 1, len - 1));
            continue;
        }
        let x_inv = letters[start].inverse();
        let mut found = false;
        for p in (start + 1)..(start + len) {
            if letters[p] == x_inv {
                let left = table.get_by_len(start + 1, p - start - 1);
                let right = table.get_by_len(p + 1, start + len - p - 1);
                if left + right == value {
                    // resolve left segment first to keep indices sorted
                    segments.push((p + 1, start + len - p - 1));
                    segments.push((start + 1, p - start - 1));
                    found = true;
                    break;
                }
            }
        }
        assert!(found, "norm table admits no backtracking step");
    }
    indices.sort_unstable();
    let seq = TrivializingSequence { indices };
    debug_assert_eq!(seq.len(), table.norm());
    assert!(
        seq.survivor(w).free_reduce().is_empty(),
        "recovered sequence does not trivialize the word"
    );
    seq
}

/// Biinvariant distance d(g, h) = ‖g h⁻¹‖.
pub fn biinvariant_distance(g: &Word, h: &Word) -> Result<usize, WordError> {
    Ok(cancelation_norm(&g.concat(&h.invert())?))
}

/// The sequence ‖g¹‖, ‖g²‖, …, ‖gᴺ‖. Powers are freely reduced before
/// each norm computation.
pub fn distortion_profile(g: &Word, n_max: usize) -> Vec<usize> {
    let mut profile = Vec::with_capacity(n_max);
    let mut power = Word::empty(g.alphabet());
    for _ in 0..n_max {
        power = power.concat(g).expect("same alphabet").free_reduce();
        profile.push(cancelation_norm(&power));
    }
    profile
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(text, &ab()).unwrap()
    }

    #[test]
    fn norm_of_empty_word_is_zero() {
        assert_eq!(cancelation_norm(&w("")), 0);
    }

    #[test]
    fn positive_words_need_every_letter_deleted() {
        assert_eq!(cancelation_norm(&w("a")), 1);
        assert_eq!(cancelation_norm(&w("aabb")), 4);
    }

    #[test]
    fn norm_matches_oracle_on_small_words() {
        assert_eq!(cancelation_norm(&w("abA")), 1);
        assert_eq!(cancelation_norm(&w("abAB")), 2);
        assert_eq!(brute_force_norm(&w("abA")).unwrap(), 1);
        assert_eq!(brute_force_norm(&w("abAB")).unwrap(), 2);
    }

    #[test]
    fn conjugated_generator_has_norm_one() {
        // b⁴ a b⁻⁴: deleting the single "a" leaves b⁴b⁻⁴
        assert_eq!(cancelation_norm(&w("bbbbaBBBB")), 1);
        assert_eq!(brute_force_norm(&w("bbbbaBBBB")).unwrap(), 1);
    }

    #[test]
    fn table_cells_for_length_two_words() {
        let t = NormTable::build(&w("aA"));
        assert_eq!((t.get(0, 0), t.get(1, 1), t.get(0, 1)), (1, 1, 0));

        let t = NormTable::build(&w("ab"));
        assert_eq!((t.get(0, 0), t.get(1, 1), t.get(0, 1)), (1, 1, 2));
    }

    #[test]
    fn table_cells_satisfy_parity_and_bounds() {
        let word = w("abAB");
        let t = NormTable::build(&word);
        assert_eq!(t.get(0, 3), 2);
        for i in 0..4 {
            for j in i..4 {
                let len = j - i + 1;
                let v = t.get(i, j);
                assert!(v <= len);
                assert_eq!(v % 2, len % 2);
            }
        }
    }

    #[test]
    fn brute_force_guard_rejects_long_words() {
        let long = Word::random(&ab(), 21, 1, true);
        assert_eq!(
            brute_force_norm(&long),
            Err(FreenormError::TooLarge { len: 21, max: 20 })
        );
        assert!(brute_force_norm_with_limit(&long, 21).is_ok());
    }

    #[test]
    fn trivializing_sequence_examples() {
        assert_eq!(trivializing_sequence(&w("abA")).indices(), &[1]);
        assert_eq!(trivializing_sequence(&w("aabb")).indices(), &[0, 1, 2, 3]);
        assert!(trivializing_sequence(&w("")).is_empty());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(biinvariant_distance(&w("ab"), &w("ab")).unwrap(), 0);
        assert_eq!(biinvariant_distance(&w("a"), &w("b")).unwrap(), 2);
    }

    #[test]
    fn distance_rejects_alphabet_mismatch() {
        let abc = Alphabet::new("abc").unwrap();
        let other = Word::parse("a", &abc).unwrap();
        assert!(biinvariant_distance(&w("a"), &other).is_err());
    }

    #[test]
    fn profile_examples() {
        assert_eq!(distortion_profile(&w("a"), 5), vec![1, 2, 3, 4, 5]);
        assert_eq!(distortion_profile(&w(""), 3), vec![0, 0, 0]);

        let profile = distortion_profile(&w("abAB"), 3);
        assert_eq!(profile[0], 2);
        assert!(profile.windows(2).all(|p| p[0] <= p[1]));
        for (i, &v) in profile.iter().enumerate() {
            let power = w("abAB").pow(i as i64 + 1).free_reduce();
            assert_eq!(v, brute_force_norm_with_limit(&power, 16).unwrap());
        }
    }
}
