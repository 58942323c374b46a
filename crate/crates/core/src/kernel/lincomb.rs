use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hash};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{fmt_scalar, Scalar, Word};

fn mul(a: &Scalar, c: &Scalar) -> Scalar {
    if c.is_one() {
        a.clone()
    } else if a.denom().is_one() && c.denom().is_one() {
        Scalar::new_raw(a.numer() * c.numer(), a.denom().clone())
    } else {
        a * c
    }
}

type Map<T> = HashMap<T, Scalar, BuildHasherDefault<rustc_hash::FxHasher>>;

/// A finite formal sum with exact coefficients. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<T: Eq + Hash> {
    terms: Map<T>,
}

impl<T: Eq + Hash> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: Map::default() }
    }
}

impl<T: Clone + Eq + Hash + Ord> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: T) -> Self {
        Self::term(Scalar::one(), t)
    }

    pub fn term(c: Scalar, t: T) -> Self {
        let mut s = Self::zero();
        s.add_term(t, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &T) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, t: T, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            Entry::Occupied(mut e) => {
                let a = e.get_mut();
                // Integer fast path: skips the gcd in `Ratio`'s addition.
                if a.denom().is_one() && c.denom().is_one() {
                    *a = Scalar::new_raw(a.numer() + c.numer(), a.denom().clone());
                } else {
                    *a += c;
                }
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &LinComb<T>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (t, a) in other.terms.iter() {
            self.add_term(t.clone(), mul(a, c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(t, a)| (t.clone(), mul(a, c))).collect(),
        }
    }

    /// Unordered iteration.
    pub fn iter(&self) -> impl Iterator<Item = (&T, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in descending order (leading term first).
    pub fn sorted_terms(&self) -> Vec<(&T, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v
    }

    pub fn leading(&self) -> Option<(&T, &Scalar)> {
        self.terms.iter().max_by(|a, b| a.0.cmp(b.0))
    }

    /// Linear extension of `f`.
    pub fn flat_map<U, F>(&self, mut f: F) -> LinComb<U>
    where
        U: Clone + Eq + Hash + Ord,
        F: FnMut(&T) -> LinComb<U>,
    {
        let mut out = LinComb::zero();
        for (t, c) in self.terms.iter() {
            out.add_scaled(&f(t), c);
        }
        out
    }

    /// Collects an arbitrary list of terms, merging repeats and dropping
    /// zeros.
    pub fn collect<I: IntoIterator<Item = (T, Scalar)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (t, c) in it {
            s.add_term(t, c);
        }
        s
    }
}

impl<T: Clone + Eq + Hash + Ord> LinComb<T> {
    /// Leading term first; `term` prints one basis element.
    pub fn render(&self, mut term: impl FnMut(&T) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&fmt_scalar(&abs));
                out.push('*');
            }
            out.push_str(&term(w));
        }
        out
    }
}

impl LinComb<Word> {
    pub fn from_word(w: Word) -> Self {
        Self::from_term(w)
    }

    /// Canonical text: leading term first, `*`-joined factors.
    pub fn to_text(&self, sym: char) -> String {
        self.render(|w| w.display(sym).to_string())
    }
}

impl<T: Clone + Eq + Hash + Ord + std::fmt::Display> std::fmt::Debug for LinComb<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render(|t| t.to_string()))
    }
}

impl<T: Clone + Eq + Hash + Ord> AddAssign<&LinComb<T>> for LinComb<T> {
    fn add_assign(&mut self, o: &LinComb<T>) {
        for (t, c) in o.terms.iter() {
            self.add_term(t.clone(), c.clone());
        }
    }
}

impl<T: Clone + Eq + Hash + Ord> SubAssign<&LinComb<T>> for LinComb<T> {
    fn sub_assign(&mut self, o: &LinComb<T>) {
        for (t, c) in o.terms.iter() {
            self.add_term(t.clone(), -c.clone());
        }
    }
}

impl<T: Clone + Eq + Hash + Ord> Add for LinComb<T> {
    type Output = LinComb<T>;
    fn add(mut self, o: LinComb<T>) -> LinComb<T> {
        self += &o;
        self
    }
}

impl<T: Clone + Eq + Hash + Ord> Add<&LinComb<T>> for &LinComb<T> {
    type Output = LinComb<T>;
    fn add(self, o: &LinComb<T>) -> LinComb<T> {
        let mut s = self.clone();
        s += o;
        s
    }
}

impl<T: Clone + Eq + Hash + Ord> Sub for LinComb<T> {
    type Output = LinComb<T>;
    fn sub(mut self, o: LinComb<T>) -> LinComb<T> {
        self -= &o;
        self
    }
}

impl<T: Clone + Eq + Hash + Ord> Sub<&LinComb<T>> for &LinComb<T> {
    type Output = LinComb<T>;
    fn sub(self, o: &LinComb<T>) -> LinComb<T> {
        let mut s = self.clone();
        s -= o;
        s
    }
}

impl<T: Clone + Eq + Hash + Ord> Neg for LinComb<T> {
    type Output = LinComb<T>;
    fn neg(self) -> LinComb<T> {
        self.scaled(&-Scalar::one())
    }
}

impl<T: Clone + Eq + Hash + Ord> Neg for &LinComb<T> {
    type Output = LinComb<T>;
    fn neg(self) -> LinComb<T> {
        self.scaled(&-Scalar::one())
    }
}

impl<T: Clone + Eq + Hash + Ord> Mul<&Scalar> for &LinComb<T> {
    type Output = LinComb<T>;
    fn mul(self, c: &Scalar) -> LinComb<T> {
        self.scaled(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{scalar, Generator};

    fn w(r: u32, s: &str) -> Word {
        Word::generator(Generator::new(r, s))
    }

    #[test]
    fn cancellation_and_scaling() {
        let x = w(0, "x");
        let a = LinComb::term(scalar(2), x.clone());
        let b = LinComb::term(scalar(-2), x.clone());
        assert!((a.clone() + b).is_zero());
        assert!(a.scaled(&scalar(0)).is_zero());
        let s = LinComb::from_word(x) + LinComb::from_word(w(1, "y"));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn leading_and_text() {
        let x = w(0, "x");
        let y = w(1, "y");
        let c = LinComb::term(scalar(3), x) + LinComb::term(scalar(5), y.clone());
        let (lw, lc) = c.leading().unwrap();
        assert_eq!((lw, lc), (&y, &scalar(5)));
        assert_eq!(c.to_text('R'), "5*y + 3*x");
        assert_eq!((-c).to_text('R'), "-5*y - 3*x");
    }
}
