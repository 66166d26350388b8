//! Scalar algebras for generalized matrix multiplication.
//!
//! Graph algorithms phrased as matrix products need more than the field
//! (+, ×): shortest paths want (min, +), reachability wants (∨, ∧). Every
//! kernel and executor in this crate is generic over a [`Semiring`], so the
//! same code multiplies over any of them.
//!
//! | Semiring     | ⊕   | ⊗   | zero | one   | scalar |
//! |--------------|-----|-----|------|-------|--------|
//! | [`Real`]     | +   | ×   | 0.0  | 1.0   | `f64`  |
//! | [`Tropical`] | min | +   | +∞   | 0.0   | `f64`  |
//! | [`Boolean`]  | ∨   | ∧   | false| true  | `bool` |
//!
//! Output entries that compare equal to the semiring's zero are pruned from
//! stored structures. Exact equality is used even for `f64`; callers working
//! with values that only approximately cancel should not rely on pruning.

use std::fmt::Debug;

/// A semiring over a copyable scalar type.
///
/// Implementors are zero-sized marker types; the operations are associated
/// functions so a semiring can be selected with a type parameter alone.
/// Definitions are immutable and freely shareable across threads.
pub trait Semiring: Copy + Send + Sync + 'static {
    /// The element type the algebra operates on.
    type Scalar: Copy + PartialEq + Debug + Send + Sync + 'static;

    /// Name used by command-line front ends and reports.
    const NAME: &'static str;

    /// Additive identity. Also the implicit value of absent matrix entries.
    fn zero() -> Self::Scalar;

    /// Multiplicative identity.
    fn one() -> Self::Scalar;

    /// Addition (⊕): associative and commutative.
    fn add(a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;

    /// Multiplication (⊗): distributes over ⊕; zero annihilates.
    fn mul(a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;

    /// Decidable test against the additive identity, used for output pruning.
    fn is_zero(x: &Self::Scalar) -> bool {
        *x == Self::zero()
    }

    /// Equality notion used by the axiom checker. Defaults to exact
    /// equality; floating-point semirings whose ⊕ is only approximately
    /// associative override this with a small relative tolerance.
    fn axiom_eq(a: Self::Scalar, b: Self::Scalar) -> bool {
        a == b
    }
}

/// Ordinary arithmetic (+, ×) over `f64`.
#[derive(Clone, Copy, Debug)]
pub struct Real;

impl Semiring for Real {
    type Scalar = f64;
    const NAME: &'static str = "real";

    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn add(a: f64, b: f64) -> f64 {
        a + b
    }
    fn mul(a: f64, b: f64) -> f64 {
        a * b
    }
    fn axiom_eq(a: f64, b: f64) -> bool {
        // Floating-point + is commutative but only approximately associative.
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= 1e-9 * scale
    }
}

/// Tropical (min, +) over `f64`: zero is +∞, one is 0. Matrix powers over
/// this semiring compute shortest path lengths.
#[derive(Clone, Copy, Debug)]
pub struct Tropical;

impl Semiring for Tropical {
    type Scalar = f64;
    const NAME: &'static str = "tropical";

    fn zero() -> f64 {
        f64::INFINITY
    }
    fn one() -> f64 {
        0.0
    }
    fn add(a: f64, b: f64) -> f64 {
        a.min(b)
    }
    fn mul(a: f64, b: f64) -> f64 {
        a + b
    }
}

/// Boolean (∨, ∧): structure-only products, e.g. reachability.
#[derive(Clone, Copy, Debug)]
pub struct Boolean;

impl Semiring for Boolean {
    type Scalar = bool;
    const NAME: &'static str = "boolean";

    fn zero() -> bool {
        false
    }
    fn one() -> bool {
        true
    }
    fn add(a: bool, b: bool) -> bool {
        a || b
    }
    fn mul(a: bool, b: bool) -> bool {
        a && b
    }
}

/// Per-axiom outcome of [`check_semiring_axioms`].
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub add_associative: bool,
    pub add_commutative: bool,
    pub distributive: bool,
    pub add_identity: bool,
    pub mul_identity: bool,
    pub zero_annihilates: bool,
    /// Human-readable description of the first counterexample found, if any.
    pub first_failure: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.add_associative
            && self.add_commutative
            && self.distributive
            && self.add_identity
            && self.mul_identity
            && self.zero_annihilates
    }
}

/// Checks the semiring axioms over every pair and triple drawn from
/// `samples`: associativity and commutativity of ⊕, distributivity of ⊗
/// over ⊕, both identities, and annihilation by zero.
///
/// The check is exhaustive over the sample set (cubic in its length), so
/// keep samples in the hundreds. An empty sample set passes vacuously.
pub fn check_semiring_axioms<S: Semiring>(samples: &[S::Scalar]) -> AxiomReport {
    let mut report = AxiomReport {
        add_associative: true,
        add_commutative: true,
        distributive: true,
        add_identity: true,
        mul_identity: true,
        zero_annihilates: true,
        first_failure: None,
    };
    let fail = |flag: &mut bool, msg: String, first: &mut Option<String>| {
        *flag = false;
        if first.is_none() {
            *first = Some(msg);
        }
    };

    for &x in samples {
        if !S::axiom_eq(S::add(x, S::zero()), x) {
            fail(
                &mut report.add_identity,
                format!("add({x:?}, zero) != {x:?}"),
                &mut report.first_failure,
            );
        }
        if !S::axiom_eq(S::mul(x, S::one()), x) || !S::axiom_eq(S::mul(S::one(), x), x) {
            fail(
                &mut report.mul_identity,
                format!("mul identity fails at {x:?}"),
                &mut report.first_failure,
            );
        }
        if !S::is_zero(&S::mul(S::zero(), x)) || !S::is_zero(&S::mul(x, S::zero())) {
            fail(
                &mut report.zero_annihilates,
                format!("mul(zero, {x:?}) is not zero"),
                &mut report.first_failure,
            );
        }
    }

    for &x in samples {
        for &y in samples {
            if !S::axiom_eq(S::add(x, y), S::add(y, x)) {
                fail(
                    &mut report.add_commutative,
                    format!("add({x:?}, {y:?}) != add({y:?}, {x:?})"),
                    &mut report.first_failure,
                );
            }
            for &z in samples {
                if !S::axiom_eq(S::add(S::add(x, y), z), S::add(x, S::add(y, z))) {
                    fail(
                        &mut report.add_associative,
                        format!("add not associative at ({x:?}, {y:?}, {z:?})"),
                        &mut report.first_failure,
                    );
                }
                let lhs = S::mul(x, S::add(y, z));
                let rhs = S::add(S::mul(x, y), S::mul(x, z));
                let lhs_r = S::mul(S::add(y, z), x);
                let rhs_r = S::add(S::mul(y, x), S::mul(z, x));
                if !S::axiom_eq(lhs, rhs) || !S::axiom_eq(lhs_r, rhs_r) {
                    fail(
                        &mut report.distributive,
                        format!("distributivity fails at ({x:?}, {y:?}, {z:?})"),
                        &mut report.first_failure,
                    );
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deliberately broken algebra: ⊕ is subtraction.
    #[derive(Clone, Copy)]
    struct Subtractive;

    impl Semiring for Subtractive {
        type Scalar = f64;
        const NAME: &'static str = "subtractive";
        fn zero() -> f64 {
            0.0
        }
        fn one() -> f64 {
            1.0
        }
        fn add(a: f64, b: f64) -> f64 {
            a - b
        }
        fn mul(a: f64, b: f64) -> f64 {
            a * b
        }
    }

    #[test]
    fn real_axioms_pass_on_small_set() {
        let report = check_semiring_axioms::<Real>(&[0.0, 1.0, 2.0, -1.0]);
        assert!(report.all_pass(), "{:?}", report.first_failure);
    }

    #[test]
    fn tropical_axioms_pass_on_small_set() {
        let report = check_semiring_axioms::<Tropical>(&[0.0, 1.0, 5.0, f64::INFINITY]);
        assert!(report.all_pass(), "{:?}", report.first_failure);
    }

    #[test]
    fn boolean_axioms_pass() {
        let report = check_semiring_axioms::<Boolean>(&[true, false]);
        assert!(report.all_pass(), "{:?}", report.first_failure);
    }

    #[test]
    fn subtraction_fails_commutativity() {
        let report = check_semiring_axioms::<Subtractive>(&[0.0, 1.0, 2.0]);
        assert!(!report.add_commutative);
        assert!(!report.all_pass());
    }

    #[test]
    fn builtin_axioms_pass_on_random_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);

        let mut reals: Vec<f64> = (0..100).map(|_| rng.gen_range(-4.0..4.0)).collect();
        reals.extend([0.0, 1.0, -1.0]);
        let report = check_semiring_axioms::<Real>(&reals);
        assert!(report.all_pass(), "{:?}", report.first_failure);

        let mut trop: Vec<f64> = (0..100).map(|_| rng.gen_range(0.0..10.0)).collect();
        trop.extend([0.0, f64::INFINITY]);
        let report = check_semiring_axioms::<Tropical>(&trop);
        assert!(report.all_pass(), "{:?}", report.first_failure);

        for &x in &reals {
            assert!(Real::is_zero(&Real::mul(Real::zero(), x)));
        }
        for &x in &trop {
            assert!(Tropical::is_zero(&Tropical::mul(Tropical::zero(), x)));
        }
    }
}
