//! Shared vocabulary: exact scalars, generators, words, the word order and
//! linear combinations.

mod generator;
mod lincomb;
mod word;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use generator::{Alphabet, Generator};
pub use lincomb::LinComb;
pub use word::{Atom, AtomKind, Degrees, LieWord, MLetter, RAtom, Word};

pub(crate) use generator::is_identifier;
pub use word::is_lyndon as is_lyndon_word;

/// Exact rational coefficient.
pub type Scalar = BigRational;

/// An element of the free algebra.
pub type Element = LinComb<Word>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("generators from different generating sets: `{left}` vs `{right}`")]
    MixedUniverse { left: String, right: String },
    #[error("leading word of the zero combination")]
    EmptyCombination,
    #[error("`{0}` is not a valid generator symbol")]
    BadSymbol(String),
    #[error("duplicate generator symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
}

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(s: &str) -> Result<Scalar, KernelError> {
    let bad = || KernelError::BadScalar(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// The weight parameter of a Rota–Baxter operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Scalar);

impl Weight {
    pub fn new(lambda: Scalar) -> Self {
        Weight(lambda)
    }

    pub fn int(n: i64) -> Self {
        Weight(scalar(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_scalar(&self.0))
    }
}

/// Which operator identity the free operator satisfies. The two laws differ
/// only in the correction term: `λ·(x∘y)` for Rota–Baxter, `−Op(x∘y)` for
/// Nijenhuis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Policy {
    RotaBaxter(Weight),
    Nijenhuis,
}

impl Policy {
    pub fn rota_baxter(lambda: i64) -> Self {
        Policy::RotaBaxter(Weight::int(lambda))
    }

    /// Printed operator symbol.
    pub fn symbol(&self) -> char {
        match self {
            Policy::RotaBaxter(_) => 'R',
            Policy::Nijenhuis => 'N',
        }
    }
}

impl Default for Policy {
    fn default() -> Self {
        Policy::RotaBaxter(Weight(Scalar::one()))
    }
}

/// Total order on words with a check that both sides live over the same
/// generating set.
pub fn cmp_word(a: &Word, b: &Word) -> Result<Ordering, KernelError> {
    let mut ga = Vec::new();
    let mut gb = Vec::new();
    a.collect_generators(&mut ga);
    b.collect_generators(&mut gb);
    for x in &ga {
        for y in &gb {
            x.checked_cmp(y)?;
        }
    }
    Ok(a.cmp(b))
}

/// The order-maximal word of a nonzero combination with its coefficient.
pub fn leading_word(c: &Element) -> Result<(Scalar, Word), KernelError> {
    c.leading()
        .map(|(w, s)| (s.clone(), w.clone()))
        .ok_or(KernelError::EmptyCombination)
}

/// Number of operator applications anywhere in `w`.
pub fn r_degree(w: &Word) -> u32 {
    w.degrees().r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("3").unwrap(), scalar(3));
        assert_eq!(parse_scalar("-2/4").unwrap(), ratio(-1, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(fmt_scalar(&ratio(6, -4)), "-3/2");
    }
}
