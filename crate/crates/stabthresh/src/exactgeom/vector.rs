//! Exact rational vectors and the pairing between weight and cocharacter space.

use crate::rat::{fmt_rat, primitive_direction, Int, Rat};
use num::traits::Zero;
use std::cmp::Ordering;
use std::fmt;

/// A point of `M_Q` or a vector of `N_Q`, with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    coords: Vec<Rat>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    /// Vector with the given integer coordinates.
    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Rat::from_integer(Int::from(c))).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Rat::zero(); dim])
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[i] = Rat::from_integer(Int::from(1));
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// True if every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// The perfect pairing `<. , .>` between `M_Q` and `N_Q`.
    pub fn dot(&self, other: &RationalVector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "pairing dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, t: &Rat) -> RationalVector {
        Self::new(self.coords.iter().map(|c| c * t).collect())
    }

    pub fn neg(&self) -> RationalVector {
        Self::new(self.coords.iter().map(|c| -c).collect())
    }

    /// Primitive integer vector in the same direction; `None` for zero.
    pub fn primitive(&self) -> Option<Vec<Int>> {
        primitive_direction(&self.coords)
    }

    /// Primitive integer rescaling kept as a `RationalVector`.
    pub fn primitive_vector(&self) -> Option<RationalVector> {
        self.primitive()
            .map(|ints| Self::new(ints.into_iter().map(Rat::from_integer).collect()))
    }

    pub fn lex_cmp(&self, other: &RationalVector) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }
}

impl PartialOrd for RationalVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rat(c))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn pairing_is_bilinear() {
        let u = RationalVector::from_ints(&[1, -2]);
        let v = RationalVector::new(vec![rat(1, 2), rat(3, 4)]);
        assert_eq!(u.dot(&v), rat(-1, 1));
        assert_eq!(u.scale(&rat(2, 1)).dot(&v), rat(-2, 1));
    }

    #[test]
    fn lex_order_is_total_on_fixed_dim() {
        let a = RationalVector::from_ints(&[0, 1]);
        let b = RationalVector::from_ints(&[1, -5]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&a), Ordering::Greater);
        assert_eq!(a.lex_cmp(&a), Ordering::Equal);
    }
}
