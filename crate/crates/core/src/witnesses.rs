//! Identity witnesses for bounded cyclic subgroups, checked exactly in
//! concrete models: the integer lamplighter group for the commutator
//! identity [x,t]ⁿ = [xⁿ,t], the integer Heisenberg group for zⁿ = [xⁿ,y],
//! and an affine-map model of the Baumslag-Solitar relation t aᵖ t⁻¹ = a^q.
//! The commutator convention is [x,y] = x y x⁻¹ y⁻¹ throughout.

use num_rational::Rational64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("lamp values sum to {sum}; only zero-sum configurations are commutators with finitely supported witnesses")]
    NotACommutator { sum: i64 },
    #[error("affine map must have nonzero scale")]
    ZeroScale,
}

/// Element (shift, lamps) of the lamplighter group: the shift acts on
/// finitely supported integer lamp configurations by translation.
/// Conjugating a configuration by the shift generator moves every lamp one
/// step: (t f t⁻¹)(i) = f(i + 1).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LamplighterElement {
    shift: i64,
    lamps: BTreeMap<i64, i64>,
}

fn prune(lamps: &mut BTreeMap<i64, i64>) {
    lamps.retain(|_, v| *v != 0);
}

impl LamplighterElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(shift: i64, lamps: BTreeMap<i64, i64>) -> Self {
        let mut lamps = lamps;
        prune(&mut lamps);
        LamplighterElement { shift, lamps }
    }

    /// The generator x: a single lamp of value 1 at position 0.
    pub fn lamp() -> Self {
        Self::new(0, BTreeMap::from([(0, 1)]))
    }

    /// The generator t: shift by one.
    pub fn shift() -> Self {
        Self::new(1, BTreeMap::new())
    }

    pub fn shift_part(&self) -> i64 {
        self.shift
    }

    pub fn lamps(&self) -> &BTreeMap<i64, i64> {
        &self.lamps
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut lamps = self.lamps.clone();
        for (&i, &v) in &other.lamps {
            *lamps.entry(i - self.shift).or_insert(0) += v;
        }
        prune(&mut lamps);
        LamplighterElement {
            shift: self.shift + other.shift,
            lamps,
        }
    }

    pub fn inverse(&self) -> Self {
        let lamps = self.lamps.iter().map(|(&i, &v)| (i + self.shift, -v)).collect();
        LamplighterElement {
            shift: -self.shift,
            lamps,
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }
}

/// Whether [x,t]ⁿ = [xⁿ,t] holds in the lamplighter model.
pub fn lamplighter_identity_check(n: u64) -> bool {
    assert!(n >= 1 && n <= 10_000, "supported range is 1..=10^4");
    let x = LamplighterElement::lamp();
    let t = LamplighterElement::shift();
    let lhs = LamplighterElement::commutator(&x, &t).pow(n);
    let rhs = LamplighterElement::commutator(&x.pow(n), &t);
    lhs == rhs
}

/// Solve bᵢ₊₁ - bᵢ = aᵢ for a finitely supported b and verify that
/// conjugating (0,b) by the shift and cancelling gives exactly (0,a).
/// Finitely supported solutions exist precisely when the lamp values of
/// `a` sum to zero (the commutator subgroup of the lamplighter group).
pub fn lamplighter_commutator_witness(
    a: &BTreeMap<i64, i64>,
) -> Result<BTreeMap<i64, i64>, WitnessError> {
    let sum: i64 = a.values().sum();
    if sum != 0 {
        return Err(WitnessError::NotACommutator { sum });
    }
    let mut b = BTreeMap::new();
    if let (Some((&lo, _)), Some((&hi, _))) = (a.iter().next(), a.iter().next_back()) {
        // prefix sums anchored at zero below the support: b(i+1) = Σ_{j<=i} a(j)
        let mut acc = 0i64;
        for i in lo..=hi {
            acc += a.get(&i).copied().unwrap_or(0);
            if acc != 0 {
                b.insert(i + 1, acc);
            }
        }
    }
    // b(i+1) - b(i) = a(i) for every i
    let lo = a.keys().next().copied().unwrap_or(0).min(b.keys().next().copied().unwrap_or(0)) - 1;
    let hi = a.keys().next_back().copied().unwrap_or(0).max(b.keys().next_back().copied().unwrap_or(0)) + 1;
    for i in lo..=hi {
        let diff = b.get(&(i + 1)).copied().unwrap_or(0) - b.get(&i).copied().unwrap_or(0);
        debug_assert_eq!(diff, a.get(&i).copied().unwrap_or(0), "difference at {i}");
    }
    // (0,a) = t (0,b) t⁻¹ (0,b)⁻¹ in the group itself
    let t = LamplighterElement::shift();
    let b_elt = LamplighterElement::new(0, b.clone());
    let conjugated = LamplighterElement::commutator(&t, &b_elt);
    let target = LamplighterElement::new(0, a.clone());
    assert_eq!(conjugated, target, "witness fails the defining identity");
    Ok(b)
}

/// Upper unitriangular 3x3 integer matrix with entries (1,2) = a,
/// (2,3) = b, (1,3) = c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HeisenbergElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeisenbergElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        HeisenbergElement { a, b, c }
    }

    pub fn mul(&self, other: &Self) -> Self {
        HeisenbergElement {
            a: self.a + other.a,
            b: self.b + other.b,
            c: self.c + other.c + self.a * other.b,
        }
    }

    pub fn inverse(&self) -> Self {
        HeisenbergElement {
            a: -self.a,
            b: -self.b,
            c: -self.c + self.a * self.b,
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    pub fn to_matrix(self) -> [[i64; 3]; 3] {
        [[1, self.a, self.c], [0, 1, self.b], [0, 0, 1]]
    }
}

/// Whether zⁿ = [xⁿ, y] holds for x = (1,0,0), y = (0,1,0) and the central
/// z = [x,y] = (0,0,1).
pub fn heisenberg_identity_check(n: u64) -> bool {
    assert!(n >= 1 && n <= 1_000_000, "supported range is 1..=10^6");
    let x = HeisenbergElement::new(1, 0, 0);
    let y = HeisenbergElement::new(0, 1, 0);
    let z = HeisenbergElement::commutator(&x, &y);
    debug_assert_eq!(z, HeisenbergElement::new(0, 0, 1));
    let lhs = HeisenbergElement::new(0, 0, n as i64);
    debug_assert_eq!(lhs, z.pow(n));
    lhs == HeisenbergElement::commutator(&x.pow(n), &y)
}

/// The affine map x ↦ scale·x + offset over the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineMap {
    scale: Rational64,
    offset: Rational64,
}

impl AffineMap {
    pub fn new(scale: Rational64, offset: Rational64) -> Result<Self, WitnessError> {
        if scale.is_zero() {
            return Err(WitnessError::ZeroScale);
        }
        Ok(AffineMap { scale, offset })
    }

    pub fn identity() -> Self {
        AffineMap {
            scale: Rational64::one(),
            offset: Rational64::zero(),
        }
    }

    pub fn scale(&self) -> Rational64 {
        self.scale
    }

    pub fn offset(&self) -> Rational64 {
        self.offset
    }

    /// Composition (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        AffineMap {
            scale: self.scale * other.scale,
            offset: self.scale * other.offset + self.offset,
        }
    }

    pub fn inverse(&self) -> Self {
        AffineMap {
            scale: self.scale.recip(),
            offset: -self.offset / self.scale,
        }
    }

    pub fn apply(&self, x: Rational64) -> Rational64 {
        self.scale * x + self.offset
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = Self::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.compose(y).compose(&x.inverse()).compose(&y.inverse())
    }
}

/// Outcome of checking the relation t aᵖ t⁻¹ = a^q and the commutator
/// [t, aᵖ] in the affine model t: x ↦ (q/p)x, a: x ↦ x + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BsReport {
    pub p: u64,
    pub q: u64,
    pub relation_holds: bool,
    /// Exponent e with [t, aᵖ] = aᵉ under [x,y] = x y x⁻¹ y⁻¹; the model
    /// always yields e = q - p.
    pub commutator_exponent: i64,
}

pub fn bs_affine_check(p: u64, q: u64) -> BsReport {
    assert!(p >= 1 && q >= 1);
    let t = AffineMap::new(
        Rational64::new(q as i64, p as i64),
        Rational64::zero(),
    )
    .expect("q/p is nonzero");
    let a = AffineMap::new(Rational64::one(), Rational64::one()).expect("translation");

    let lhs = t.compose(&a.pow(p as i64)).compose(&t.inverse());
    let relation_holds = lhs == a.pow(q as i64);

    let commutator = AffineMap::commutator(&t, &a.pow(p as i64));
    assert!(commutator.scale().is_one(), "commutator is a translation");
    assert!(commutator.offset().is_integer());
    BsReport {
        p,
        q,
        relation_holds,
        commutator_exponent: commutator.offset().to_integer(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lamplighter_identity_small_and_large() {
        assert!(lamplighter_identity_check(1));
        assert!(lamplighter_identity_check(2));
        assert!(lamplighter_identity_check(100));
        for n in 1..=200 {
            assert!(lamplighter_identity_check(n), "n = {n}");
        }
    }

    #[test]
    fn lamplighter_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut random_elt = |rng: &mut ChaCha8Rng| {
            let shift = rng.gen_range(-3..=3);
            let lamps = (0..rng.gen_range(0..4))
                .map(|_| (rng.gen_range(-5..=5), rng.gen_range(-4..=4)))
                .collect();
            LamplighterElement::new(shift, lamps)
        };
        for _ in 0..1000 {
            let (x, y, z) = (
                random_elt(&mut rng),
                random_elt(&mut rng),
                random_elt(&mut rng),
            );
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            assert_eq!(x.mul(&x.inverse()), LamplighterElement::identity());
            assert_eq!(
                x.mul(&LamplighterElement::identity()),
                x
            );
        }
    }

    #[test]
    fn shift_conjugation_moves_lamps() {
        let t = LamplighterElement::shift();
        let x = LamplighterElement::lamp();
        let conj = t.mul(&x).mul(&t.inverse());
        assert_eq!(conj, LamplighterElement::new(0, BTreeMap::from([(-1, 1)])));
    }

    #[test]
    fn commutator_witness_zero_sum() {
        assert_eq!(
            lamplighter_commutator_witness(&BTreeMap::new()).unwrap(),
            BTreeMap::new()
        );

        // a = δ₀ - δ₁ has the witness b = δ₁
        let a = BTreeMap::from([(0, 1), (1, -1)]);
        let b = lamplighter_commutator_witness(&a).unwrap();
        assert_eq!(b, BTreeMap::from([(1, 1)]));

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let mut a: BTreeMap<i64, i64> = (-5..5)
                .map(|i| (i, rng.gen_range(-4..=4)))
                .collect();
            let balance: i64 = a.values().sum();
            *a.entry(5).or_insert(0) -= balance;
            lamplighter_commutator_witness(&a).expect("zero-sum witness exists");
        }
    }

    #[test]
    fn commutator_witness_rejects_nonzero_sum() {
        let a = BTreeMap::from([(0, 1)]);
        assert_eq!(
            lamplighter_commutator_witness(&a),
            Err(WitnessError::NotACommutator { sum: 1 })
        );
    }

    #[test]
    fn heisenberg_identity_range() {
        assert!(heisenberg_identity_check(1));
        assert!(heisenberg_identity_check(100));
        assert!(heisenberg_identity_check(1_000_000));
        for n in 1..=200 {
            assert!(heisenberg_identity_check(n), "n = {n}");
        }
    }

    #[test]
    fn heisenberg_matches_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut random_elt = |rng: &mut ChaCha8Rng| {
            HeisenbergElement::new(
                rng.gen_range(-50..=50),
                rng.gen_range(-50..=50),
                rng.gen_range(-50..=50),
            )
        };
        let matmul = |x: [[i64; 3]; 3], y: [[i64; 3]; 3]| {
            let mut out = [[0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
                }
            }
            out
        };
        for _ in 0..1000 {
            let (x, y, z) = (
                random_elt(&mut rng),
                random_elt(&mut rng),
                random_elt(&mut rng),
            );
            assert_eq!(
                x.mul(&y).to_matrix(),
                matmul(x.to_matrix(), y.to_matrix())
            );
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            assert_eq!(x.mul(&x.inverse()), HeisenbergElement::identity());
        }
    }

    #[test]
    fn affine_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut random_map = |rng: &mut ChaCha8Rng| {
            let num = *[-3, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap();
            AffineMap::new(
                Rational64::new(num, rng.gen_range(1..=4)),
                Rational64::new(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
            )
            .unwrap()
        };
        for _ in 0..1000 {
            let (f, g, h) = (
                random_map(&mut rng),
                random_map(&mut rng),
                random_map(&mut rng),
            );
            assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
            assert_eq!(f.compose(&f.inverse()), AffineMap::identity());
            let x = Rational64::new(3, 7);
            assert_eq!(f.compose(&g).apply(x), f.apply(g.apply(x)));
        }
        assert!(AffineMap::new(Rational64::zero(), Rational64::one()).is_err());
    }

    #[test]
    fn bs_examples() {
        let r = bs_affine_check(2, 5);
        assert!(r.relation_holds);
        assert_eq!(r.commutator_exponent, 3);

        let r = bs_affine_check(1, 1);
        assert!(r.relation_holds);
        assert_eq!(r.commutator_exponent, 0);

        let r = bs_affine_check(1, 2);
        assert!(r.relation_holds);
        assert_eq!(r.commutator_exponent, 1);
    }
}
