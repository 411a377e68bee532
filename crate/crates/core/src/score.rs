//! Scalar types usable as search values.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A totally-ordered-enough number the search can minimax over.
///
/// Floating point types use their infinities as the open window bounds.
/// Integer types use `-MAX`/`MAX` so that negation stays symmetric.
pub trait Score:
    Copy + PartialOrd + Debug + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn lowest() -> Self;
    fn highest() -> Self;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! float_score {
    ($($t:ty),*) => {$(
        impl Score for $t {
            fn lowest() -> Self { <$t>::NEG_INFINITY }
            fn highest() -> Self { <$t>::INFINITY }
        }
    )*};
}

macro_rules! int_score {
    ($($t:ty),*) => {$(
        impl Score for $t {
            fn lowest() -> Self { -<$t>::MAX }
            fn highest() -> Self { <$t>::MAX }
        }
    )*};
}

float_score!(f32, f64);
int_score!(i32, i64);

/// Converts an integer evaluation into `V`, saturating at the window bounds.
pub fn from_i64<V: Score>(x: i64) -> V {
    V::from_i64(x).unwrap_or(if x < 0 { V::lowest() } else { V::highest() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_symmetric() {
        assert_eq!(-<i64 as Score>::lowest(), <i64 as Score>::highest());
        assert_eq!(-<f64 as Score>::lowest(), <f64 as Score>::highest());
        assert!(<f32 as Score>::lowest() < 0.0);
    }

    #[test]
    fn integer_conversion_saturates() {
        assert_eq!(from_i64::<i32>(i64::MAX), i32::MAX);
        assert_eq!(from_i64::<i32>(-5), -5);
        assert_eq!(from_i64::<f64>(10_000_000), 1e7);
    }
}
