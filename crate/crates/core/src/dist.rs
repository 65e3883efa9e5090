//! Distances with an explicit infinity.

use std::fmt;
use std::ops::Add;

/// A non-negative path length, or `Inf` when no path (or cycle) exists.
///
/// `Finite` values order before `Inf`, so `min` behaves as expected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Dist {
    Finite(u64),
    #[default]
    Inf,
}

pub use Dist::{Finite, Inf};

impl Dist {
    pub const ZERO: Dist = Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Inf)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(x) => Some(x),
            Inf => None,
        }
    }

    /// Panics on `Inf`; for call sites that have already checked reachability.
    pub fn unwrap(self) -> u64 {
        self.finite().expect("infinite distance")
    }

    /// Saturating at `Inf`; overflow of finite values panics rather than wrapping.
    pub fn plus(self, w: u64) -> Dist {
        match self {
            Finite(x) => Finite(x.checked_add(w).expect("distance overflow")),
            Inf => Inf,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Finite(x) => x as f64,
            Inf => f64::INFINITY,
        }
    }
}

impl Add for Dist {
    type Output = Dist;
    fn add(self, rhs: Dist) -> Dist {
        match rhs {
            Finite(w) => self.plus(w),
            Inf => Inf,
        }
    }
}

impl Add<u64> for Dist {
    type Output = Dist;
    fn add(self, rhs: u64) -> Dist {
        self.plus(rhs)
    }
}

impl From<u64> for Dist {
    fn from(x: u64) -> Self {
        Finite(x)
    }
}

impl From<Option<u64>> for Dist {
    fn from(x: Option<u64>) -> Self {
        x.map_or(Inf, Finite)
    }
}

impl fmt::Display for Dist {
    /// Infinite values print as `inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(x) => write!(f, "{x}"),
            Inf => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Dist {
    type Err = std::num::ParseIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            Ok(Inf)
        } else {
            s.parse().map(Finite)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_inf_last() {
        assert!(Finite(u64::MAX) < Inf);
        assert_eq!(Finite(3).min(Inf), Finite(3));
        assert_eq!(Inf + Finite(2), Inf);
        assert_eq!(Finite(2) + 5, Finite(7));
    }

    #[test]
    fn display_round_trip() {
        for d in [Finite(0), Finite(17), Inf] {
            assert_eq!(d.to_string().parse::<Dist>().unwrap(), d);
        }
    }
}
