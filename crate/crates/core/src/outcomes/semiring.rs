use std::fmt::Debug;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::NonNegRational;

/// A commutative semiring of distribution values.
pub trait Semiring: Clone + Debug + PartialEq + Eq + Ord + Send + Sync {
    const IS_SEMIFIELD: bool;
    const IS_BOOLEAN: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Multiplicative inverse of a nonzero element in a semifield.
    fn inv(&self) -> Option<Self>;

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self
    where
        Self: 'a,
    {
        items.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }
}

impl Semiring for NonNegRational {
    const IS_SEMIFIELD: bool = true;
    const IS_BOOLEAN: bool = false;

    fn zero() -> Self {
        NonNegRational::default()
    }

    fn one() -> Self {
        NonNegRational::from_int(1)
    }

    fn add(&self, other: &Self) -> Self {
        NonNegRational::new(self.value() + other.value()).expect("sum of nonnegatives")
    }

    fn mul(&self, other: &Self) -> Self {
        NonNegRational::new(self.value() * other.value()).expect("product of nonnegatives")
    }

    fn is_zero(&self) -> bool {
        self.value().is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.value().is_zero() {
            None
        } else {
            NonNegRational::new(self.value().recip())
        }
    }
}

/// The Boolean semiring `({0, 1}, OR, AND)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Boolean(pub bool);

impl Semiring for Boolean {
    const IS_SEMIFIELD: bool = true;
    const IS_BOOLEAN: bool = true;

    fn zero() -> Self {
        Boolean(false)
    }

    fn one() -> Self {
        Boolean(true)
    }

    fn add(&self, other: &Self) -> Self {
        Boolean(self.0 || other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Boolean(self.0 && other.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 {
            Some(*self)
        } else {
            None
        }
    }
}

/// The support map `R≥0 -> B`, which is a semiring homomorphism.
pub fn support_map(x: &NonNegRational) -> Boolean {
    Boolean(!x.value().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_laws() {
        let t = Boolean(true);
        let f = Boolean(false);
        assert_eq!(t.add(&t), t);
        assert_eq!(t.mul(&f), f);
        assert_eq!(Boolean::one().inv(), Some(t));
        assert!(f.inv().is_none());
    }

    #[test]
    fn rational_semifield() {
        let h = NonNegRational::from_ratio(1, 2);
        assert_eq!(h.add(&h), NonNegRational::one());
        assert_eq!(h.inv(), Some(NonNegRational::from_int(2)));
        assert!(NonNegRational::zero().inv().is_none());
        assert_eq!(support_map(&h), Boolean(true));
    }
}
