//! Threshold values and K-semistability verdicts shared by the pipelines.

use crate::rat::{fmt_rat, Rat};
use num::traits::One;
use std::cmp::Ordering;
use std::fmt;

/// A stability threshold: a positive rational, or infinite when no
/// candidate valuation binds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(Rat),
    Infinite,
}

impl Threshold {
    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Threshold::Finite(r) => Some(r),
            Threshold::Infinite => None,
        }
    }

    pub fn is_at_least_one(&self) -> bool {
        match self {
            Threshold::Finite(r) => *r >= Rat::one(),
            Threshold::Infinite => true,
        }
    }
}

impl PartialOrd for Threshold {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Threshold {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Threshold::Finite(a), Threshold::Finite(b)) => a.cmp(b),
            (Threshold::Finite(_), Threshold::Infinite) => Ordering::Less,
            (Threshold::Infinite, Threshold::Finite(_)) => Ordering::Greater,
            (Threshold::Infinite, Threshold::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(r) => write!(f, "{}", fmt_rat(r)),
            Threshold::Infinite => write!(f, "inf"),
        }
    }
}

/// Outcome of the K-semistability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    KSemistable,
    KUnstable,
    /// The datum is not anticanonically polarized, so the test does not apply.
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Verdict::KSemistable => "K-semistable",
            Verdict::KUnstable => "K-unstable",
            Verdict::Inapplicable => "inapplicable",
        };
        write!(f, "{text}")
    }
}

impl Verdict {
    /// Verdict from a threshold of an anticanonically polarized datum.
    pub fn from_threshold(t: &Threshold) -> Verdict {
        if t.is_at_least_one() {
            Verdict::KSemistable
        } else {
            Verdict::KUnstable
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn ordering_and_display() {
        let a = Threshold::Finite(rat(6, 7));
        let b = Threshold::Finite(rat(1, 1));
        assert!(a < b);
        assert!(b < Threshold::Infinite);
        assert_eq!(a.to_string(), "6/7");
        assert_eq!(Threshold::Infinite.to_string(), "inf");
    }

    #[test]
    fn verdicts_follow_the_unit_cutoff() {
        assert_eq!(
            Verdict::from_threshold(&Threshold::Finite(rat(6, 7))),
            Verdict::KUnstable
        );
        assert_eq!(
            Verdict::from_threshold(&Threshold::Finite(rat(1, 1))),
            Verdict::KSemistable
        );
        assert_eq!(
            Verdict::from_threshold(&Threshold::Infinite),
            Verdict::KSemistable
        );
    }
}
