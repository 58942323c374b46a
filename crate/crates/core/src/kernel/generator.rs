use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::KernelError;

/// A free generator. Generators compare by their rank in the well-order of
/// the generating set; the symbol is carried along for printing.
#[derive(Clone)]
pub struct Generator {
    rank: u32,
    symbol: Arc<str>,
}

impl Generator {
    pub fn new(rank: u32, symbol: &str) -> Self {
        Generator { rank, symbol: Arc::from(symbol) }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    /// Like `cmp`, but refuses to compare generators drawn from different
    /// generating sets (same rank, different symbol).
    pub fn checked_cmp(&self, other: &Generator) -> Result<Ordering, KernelError> {
        if self.rank == other.rank && self.symbol != other.symbol {
            return Err(KernelError::MixedUniverse {
                left: self.symbol.to_string(),
                right: other.symbol.to_string(),
            });
        }
        Ok(self.rank.cmp(&other.rank))
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.symbol == other.symbol
    }
}
impl Eq for Generator {}

impl Hash for Generator {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.symbol.hash(state);
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.symbol.cmp(&other.symbol))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.symbol, self.rank)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)
    }
}

/// A well-ordered generating set. Ranks follow insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, KernelError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut gens: Vec<Generator> = Vec::new();
        for s in symbols {
            let s = s.as_ref();
            if !is_identifier(s) || s == "R" || s == "N" {
                return Err(KernelError::BadSymbol(s.to_string()));
            }
            if gens.iter().any(|g| g.symbol() == s) {
                return Err(KernelError::DuplicateSymbol(s.to_string()));
            }
            gens.push(Generator::new(gens.len() as u32, s));
        }
        Ok(Alphabet { gens })
    }

    /// `x1, …, xn`.
    pub fn indexed(n: usize) -> Self {
        Alphabet::new((1..=n).map(|i| format!("x{i}"))).expect("indexed symbols are valid")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, symbol: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.symbol() == symbol)
    }

    pub fn by_rank(&self, rank: usize) -> &Generator {
        &self.gens[rank]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.gens.get(g.rank() as usize) == Some(g)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_follow_insertion_order() {
        let a = Alphabet::new(["y", "x"]).unwrap();
        assert!(a.get("y").unwrap() < a.get("x").unwrap());
    }

    #[test]
    fn rejects_operator_symbols_and_duplicates() {
        assert!(Alphabet::new(["R"]).is_err());
        assert!(Alphabet::new(["x", "x"]).is_err());
        assert!(Alphabet::new(["1x"]).is_err());
    }

    #[test]
    fn mixed_universes_are_a_domain_error() {
        let a = Generator::new(0, "x");
        let b = Generator::new(0, "t");
        assert!(a.checked_cmp(&b).is_err());
        assert_eq!(a.checked_cmp(&a).unwrap(), Ordering::Equal);
    }
}
