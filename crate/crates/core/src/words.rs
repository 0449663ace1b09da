//! Alphabets, signed letters, and free words.
//!
//! Words are stored exactly as written; reduction is always an explicit
//! operation. The text format is one ASCII character per letter: lowercase
//! for a generator, uppercase for its inverse (`"abAB"` is the commutator
//! of the first two generators).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown symbol at position {position}")]
    UnknownSymbol { position: usize },
    #[error("words use different alphabets")]
    AlphabetMismatch,
}

/// A finite generating set. Generator `i` prints as `names[i]` and its
/// inverse as the uppercase of the same character.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: &str) -> Result<Self, WordError> {
        let names: Vec<char> = names.chars().collect();
        if names.is_empty() {
            return Err(WordError::InvalidAlphabet("alphabet is empty".into()));
        }
        for &c in &names {
            if !c.is_ascii_lowercase() {
                return Err(WordError::InvalidAlphabet(format!(
                    "generator name {c:?} is not a lowercase ASCII letter"
                )));
            }
        }
        for (i, &c) in names.iter().enumerate() {
            if names[..i].contains(&c) {
                return Err(WordError::InvalidAlphabet(format!(
                    "duplicate generator name {c:?}"
                )));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, gen: usize) -> char {
        self.names[gen]
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    /// Index of the generator whose lowercase name is `c` (case-insensitive).
    pub fn index_of(&self, c: char) -> Option<usize> {
        let lower = c.to_ascii_lowercase();
        self.names.iter().position(|&n| n == lower)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One signed occurrence of a generator. Ordering is by generator index,
/// positive before negative; this is the letter order used for shortlex
/// normal forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u16,
    sign: Sign,
}

impl Letter {
    pub fn new(gen: usize, sign: Sign) -> Letter {
        Letter {
            gen: u16::try_from(gen).expect("generator index fits in u16"),
            sign,
        }
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A word over an alphabet: a finite sequence of signed letters, kept
/// exactly as written (possibly unreduced).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(alphabet: &Alphabet) -> Word {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    pub fn from_letters(alphabet: &Alphabet, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.iter().all(|l| l.gen() < alphabet.rank()));
        Word {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    /// Parse the ASCII text format. Whitespace is skipped; any other
    /// character outside the alphabet is an error carrying its position
    /// in the input.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            if c.is_whitespace() {
                continue;
            }
            let gen = alphabet
                .index_of(c)
                .ok_or(WordError::UnknownSymbol { position })?;
            let sign = if c.is_ascii_lowercase() {
                Sign::Pos
            } else {
                Sign::Neg
            };
            letters.push(Letter::new(gen, sign));
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The unique reduced word freely equal to this one: no adjacent
    /// `x x⁻¹` pair remains.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().is_some_and(|&top| top.is_inverse_of(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word {
            alphabet: self.alphabet.clone(),
            letters: stack,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| !w[0].is_inverse_of(w[1]))
    }

    /// Formal inverse: reversed sequence with every sign flipped. No
    /// reduction is applied.
    pub fn invert(&self) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Juxtaposition, unreduced.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    /// `n`-th power by repetition (unreduced); negative `n` uses the
    /// formal inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(self.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }

    /// Split off a cyclically reduced core: returns `(core, conjugator)`
    /// with the input freely equal to `conjugator · core · conjugator⁻¹`.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let reduced = self.free_reduce();
        let mut letters = reduced.letters;
        let mut conjugator = Vec::new();
        while letters.len() >= 2 && letters[0].is_inverse_of(*letters.last().unwrap()) {
            conjugator.push(letters[0]);
            letters.pop();
            letters.remove(0);
        }
        (
            Word {
                alphabet: self.alphabet.clone(),
                letters,
            },
            Word {
                alphabet: self.alphabet.clone(),
                letters: conjugator,
            },
        )
    }

    /// Deterministic pseudo-random word. With `reduced` set, each letter is
    /// drawn uniformly among the letters that do not cancel the previous
    /// one, so the output is reduced of exactly the requested length.
    pub fn random(alphabet: &Alphabet, length: usize, seed: u64, reduced: bool) -> Word {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rank = alphabet.rank();
        let mut letters: Vec<Letter> = Vec::with_capacity(length);
        while letters.len() < length {
            let pick = |rng: &mut ChaCha8Rng| {
                let i = rng.gen_range(0..2 * rank);
                Letter::new(i / 2, if i % 2 == 0 { Sign::Pos } else { Sign::Neg })
            };
            let l = pick(&mut rng);
            if reduced {
                if let Some(&prev) = letters.last() {
                    if prev.is_inverse_of(l) {
                        continue;
                    }
                }
            }
            letters.push(l);
        }
        Word {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    /// Signed exponent sum per generator (the abelianization image).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.alphabet.rank()];
        for &l in &self.letters {
            match l.sign() {
                Sign::Pos => sums[l.gen()] += 1,
                Sign::Neg => sums[l.gen()] -= 1,
            }
        }
        sums
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            let c = self.alphabet.name(l.gen());
            let c = match l.sign() {
                Sign::Pos => c,
                Sign::Neg => c.to_ascii_uppercase(),
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
