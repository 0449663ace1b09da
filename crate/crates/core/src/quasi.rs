//! Brooks counting quasimorphisms on free groups.
//!
//! A reduced pattern word defines the quasimorphism that counts its
//! overlapping occurrences in a reduced representative, minus those of the
//! inverse pattern. Homogenization is exact: powers of a cyclically
//! reduced core grow by a fixed integer per period, so the per-power value
//! is read off from stabilized consecutive differences instead of a
//! numeric limit. Defects are estimated empirically and every bound
//! derived from them is flagged as such.

use crate::freenorm::cancelation_norm;
use crate::words::{Word, WordError};
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuasiError {
    #[error("pattern must be a reduced word of length >= 2, got {0:?}")]
    BadPattern(String),
    #[error("homogenization did not stabilize for {word} (pattern {pattern})")]
    NonStabilized { pattern: String, word: String },
    #[error("need as many group elements as quasimorphisms ({qs} vs {gs})")]
    SizeMismatch { qs: usize, gs: usize },
    #[error("defect must be positive")]
    NonpositiveDefect,
    #[error("defect estimation needs at least one trial")]
    NoTrials,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Overlapping occurrences of `pattern` as a contiguous subword of `w`.
/// Both words are expected to be reduced.
pub fn count_occurrences(pattern: &Word, w: &Word) -> usize {
    let p = pattern.letters();
    let s = w.letters();
    if p.is_empty() || s.len() < p.len() {
        return 0;
    }
    s.windows(p.len()).filter(|win| *win == p).count()
}

/// The counting quasimorphism attached to a reduced pattern word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrooksQuasimorphism {
    pattern: Word,
}

impl BrooksQuasimorphism {
    pub fn new(pattern: Word) -> Result<Self, QuasiError> {
        if pattern.len() < 2 || !pattern.is_reduced() {
            return Err(QuasiError::BadPattern(pattern.to_string()));
        }
        Ok(BrooksQuasimorphism { pattern })
    }

    pub fn pattern(&self) -> &Word {
        &self.pattern
    }

    /// A pattern equal to its own inverse yields the zero quasimorphism.
    pub fn is_self_inverse(&self) -> bool {
        self.pattern == self.pattern.invert()
    }

    /// Occurrences of the pattern minus occurrences of its inverse in the
    /// reduced representative of `w`.
    pub fn value(&self, w: &Word) -> i64 {
        let reduced = w.free_reduce();
        count_occurrences(&self.pattern, &reduced) as i64
            - count_occurrences(&self.pattern.invert(), &reduced) as i64
    }

    /// The homogenized (per-power) value on `g`: cyclically reduce `g` to
    /// its core `r` and return the stabilized difference
    /// `value(r^{N+1}) - value(r^N)`. The result is conjugation-invariant
    /// and homogeneous.
    pub fn homogenized_value(&self, g: &Word) -> Result<Rational64, QuasiError> {
        let (core, _) = g.cyclic_reduce();
        if core.is_empty() {
            return Ok(Rational64::zero());
        }
        let delta = |n: usize| {
            self.value(&core.pow(n as i64 + 1)) - self.value(&core.pow(n as i64))
        };
        let n0 = self.pattern.len() + 2;
        if delta(n0) == delta(n0 + 1) {
            return Ok(Rational64::from_integer(delta(n0)));
        }
        let n1 = 4 * self.pattern.len();
        if delta(n1) == delta(n1 + 1) {
            return Ok(Rational64::from_integer(delta(n1)));
        }
        Err(QuasiError::NonStabilized {
            pattern: self.pattern.to_string(),
            word: g.to_string(),
        })
    }

    /// Empirical lower estimate of the defect: the largest
    /// `|H(gh) - H(g) - H(h)|` over sampled pairs of random reduced words.
    pub fn defect_estimate(
        &self,
        trials: usize,
        max_len: usize,
        seed: u64,
    ) -> Result<Rational64, QuasiError> {
        if trials == 0 {
            return Err(QuasiError::NoTrials);
        }
        let alphabet = self.pattern.alphabet();
        let mut worst = 0i64;
        for trial in 0..trials as u64 {
            // independent per-trial seeds keep trials order-insensitive
            let g = Word::random(alphabet, (trial as usize * 7 + 3) % (max_len + 1), seed ^ (2 * trial), true);
            let h = Word::random(alphabet, (trial as usize * 11 + 5) % (max_len + 1), seed ^ (2 * trial + 1), true);
            let gh = g.concat(&h).expect("same alphabet");
            let gap = (self.value(&gh) - self.value(&g) - self.value(&h)).abs();
            worst = worst.max(gap);
        }
        Ok(Rational64::from_integer(worst))
    }
}

/// Bundle of a homogenized evaluation and the (empirical) defect used
/// alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QmEvaluation {
    pub value: Rational64,
    pub defect_estimate: Rational64,
    /// The defect is a sampled lower estimate, not a proven bound.
    pub empirical: bool,
}

/// Matrix `M[i][j]` of homogenized values of quasimorphism `i` on element
/// `j`. A dual family evaluates to the identity matrix.
pub fn dual_family_check(
    qs: &[BrooksQuasimorphism],
    gs: &[Word],
) -> Result<Vec<Vec<Rational64>>, QuasiError> {
    if qs.len() != gs.len() {
        return Err(QuasiError::SizeMismatch {
            qs: qs.len(),
            gs: gs.len(),
        });
    }
    qs.iter()
        .map(|q| gs.iter().map(|g| q.homogenized_value(g)).collect())
        .collect()
}

/// Verify the two-sided comparison between the word norm of
/// `g_1^{k_1} ... g_n^{k_n}` and the l¹ size of the exponent vector:
/// `(1/C) Σ|k_i| - D <= ‖Π g_i^{k_i}‖ <= C Σ|k_i|`. The upper bound is
/// guaranteed whenever `C >= max_i ‖g_i‖`.
pub fn qi_sandwich_check(
    gs: &[Word],
    kvec: &[i64],
    c: Rational64,
    d: Rational64,
) -> Result<bool, QuasiError> {
    assert_eq!(gs.len(), kvec.len(), "one exponent per element");
    let alphabet = gs.first().map(|g| g.alphabet());
    let mut product = match alphabet {
        Some(a) => Word::empty(a),
        None => return Ok(true),
    };
    for (g, &k) in gs.iter().zip(kvec) {
        product = product.concat(&g.pow(k))?;
    }
    let norm = Rational64::from_integer(cancelation_norm(&product) as i64);
    let k_sum = Rational64::from_integer(kvec.iter().map(|k| k.abs()).sum());
    Ok(k_sum / c - d <= norm && norm <= c * k_sum)
}

/// Lower bound for the norm of a nontrivial element from a homogenized
/// quasimorphism value: `1 + |q(g)| / D`, valid whenever `D` upper-bounds
/// the true defect and the quasimorphism vanishes on single generators.
pub fn norm_lower_bound(q_value: Rational64, defect: Rational64) -> Result<Rational64, QuasiError> {
    if defect <= Rational64::zero() {
        return Err(QuasiError::NonpositiveDefect);
    }
    Ok(Rational64::from_integer(1) + q_value.abs() / defect)
}
