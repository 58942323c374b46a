//! Free commutative Rota–Baxter (or Nijenhuis) algebra over an ordered
//! alphabet, on its standard basis of nested words
//! `R(R(…R(u_n)u_{n−1}…)u_2)u_1`.
//!
//! The alphabet is generic: plain generators for the standalone algebra, or
//! the Lie letters of the Poisson construction when deciding expressibility
//! there.

use std::cell::RefCell;
use std::cmp::Ordering;
use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;
use std::sync::Arc;

use num_traits::Signed;
use thiserror::Error;

use crate::kernel::{Degrees, Generator, LinComb, Policy, Scalar};

/// A letter of the commutative alphabet.
pub trait Letter: Clone + Eq + Ord + Hash + fmt::Display {
    /// Degrees contributed by one occurrence. Plain generators weigh
    /// `(1, 0, 0)`.
    fn degrees(&self) -> Degrees {
        Degrees::GENERATOR
    }
}

impl Letter for Generator {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RbComError {
    #[error("`{0}` is not an operator letter")]
    NotAnRLetter(String),
    #[error("a stack word needs a nonempty innermost monomial")]
    EmptyInnermost,
}

struct SInner<L> {
    inner: Option<StackWord<L>>,
    letters: Vec<L>,
    deg: Degrees,
    hash: u64,
}

/// A standard basis word: an optional outer operator atom `R(inner)` times a
/// (possibly empty) monomial `letters`, not both absent.
pub struct StackWord<L>(Arc<SInner<L>>);

impl<L> Clone for StackWord<L> {
    fn clone(&self) -> Self {
        StackWord(self.0.clone())
    }
}

impl<L: Letter> StackWord<L> {
    pub fn new(inner: Option<StackWord<L>>, mut letters: Vec<L>) -> Result<Self, RbComError> {
        if inner.is_none() && letters.is_empty() {
            return Err(RbComError::EmptyInnermost);
        }
        letters.sort_by(|a, b| b.cmp(a));
        Ok(Self::build(inner, letters))
    }

    fn build(inner: Option<StackWord<L>>, letters: Vec<L>) -> Self {
        let mut deg = letters
            .iter()
            .fold(Degrees::default(), |d, l| d.plus(l.degrees()));
        if let Some(i) = &inner {
            deg = deg.plus(i.degrees().wrapped());
        }
        let mut h = rustc_hash::FxHasher::default();
        inner.as_ref().map(|i| i.0.hash).hash(&mut h);
        letters.hash(&mut h);
        let hash = h.finish();
        StackWord(Arc::new(SInner { inner, letters, deg, hash }))
    }

    pub fn letter(l: L) -> Self {
        Self::build(None, vec![l])
    }

    pub fn monomial(letters: Vec<L>) -> Result<Self, RbComError> {
        Self::new(None, letters)
    }

    /// `[u_1, …, u_n]`, outermost level first.
    pub fn from_levels(levels: Vec<Vec<L>>) -> Result<Self, RbComError> {
        let mut it = levels.into_iter().rev();
        let innermost = it.next().ok_or(RbComError::EmptyInnermost)?;
        let mut w = Self::new(None, innermost)?;
        for u in it {
            w = Self::new(Some(w), u)?;
        }
        Ok(w)
    }

    pub fn levels(&self) -> Vec<Vec<L>> {
        let mut out = vec![self.0.letters.clone()];
        let mut cur = self.0.inner.clone();
        while let Some(w) = cur {
            out.push(w.0.letters.clone());
            cur = w.0.inner.clone();
        }
        out
    }

    /// `R(self)`.
    pub fn wrapped(&self) -> Self {
        Self::build(Some(self.clone()), Vec::new())
    }

    pub fn inner(&self) -> Option<&StackWord<L>> {
        self.0.inner.as_ref()
    }

    pub fn letters(&self) -> &[L] {
        &self.0.letters
    }

    pub fn degrees(&self) -> Degrees {
        self.0.deg
    }

    pub fn r_degree(&self) -> u32 {
        self.0.deg.r
    }

    /// True for a lone operator atom `R(u)`.
    pub fn is_r_letter(&self) -> bool {
        self.0.inner.is_some() && self.0.letters.is_empty()
    }

    fn with_letters(&self, extra: &[L]) -> Self {
        if extra.is_empty() {
            return self.clone();
        }
        let mut ls = self.0.letters.clone();
        ls.extend(extra.iter().cloned());
        ls.sort_by(|a, b| b.cmp(a));
        Self::build(self.0.inner.clone(), ls)
    }

    /// All letters at every level.
    pub fn all_letters(&self) -> Vec<L> {
        let mut out = Vec::new();
        let mut cur = Some(self.clone());
        while let Some(w) = cur {
            out.extend(w.0.letters.iter().cloned());
            cur = w.0.inner.clone();
        }
        out.sort();
        out
    }

    fn factors(&self) -> Vec<SFactor<'_, L>> {
        let mut f: Vec<SFactor<'_, L>> = self.0.letters.iter().map(SFactor::Letter).collect();
        if let Some(i) = &self.0.inner {
            f.push(SFactor::Atom(i));
        }
        f.sort_by(|a, b| b.cmp(a));
        f
    }
}

enum SFactor<'a, L> {
    Letter(&'a L),
    Atom(&'a StackWord<L>),
}

impl<L: Letter> SFactor<'_, L> {
    fn degrees(&self) -> Degrees {
        match self {
            SFactor::Letter(l) => l.degrees(),
            SFactor::Atom(i) => i.degrees().wrapped(),
        }
    }
}

impl<L: Letter> PartialEq for SFactor<'_, L> {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl<L: Letter> Eq for SFactor<'_, L> {}
impl<L: Letter> PartialOrd for SFactor<'_, L> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<L: Letter> Ord for SFactor<'_, L> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degrees().tier_cmp(&o.degrees()).then_with(|| match (self, o) {
            (SFactor::Letter(a), SFactor::Letter(b)) => a.cmp(b),
            (SFactor::Letter(_), SFactor::Atom(_)) => Ordering::Less,
            (SFactor::Atom(_), SFactor::Letter(_)) => Ordering::Greater,
            (SFactor::Atom(a), SFactor::Atom(b)) => a.cmp(b),
        })
    }
}

impl<L: Letter> PartialEq for StackWord<L> {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.hash == o.0.hash
                && self.0.letters == o.0.letters
                && self.0.inner == o.0.inner)
    }
}
impl<L: Letter> Eq for StackWord<L> {}

impl<L: Letter> Hash for StackWord<L> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl<L: Letter> Ord for StackWord<L> {
    fn cmp(&self, o: &Self) -> Ordering {
        if self == o {
            return Ordering::Equal;
        }
        self.0
            .deg
            .tier_cmp(&o.0.deg)
            .then_with(|| self.factors().cmp(&o.factors()))
    }
}
impl<L: Letter> PartialOrd for StackWord<L> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<L: Letter> fmt::Display for StackWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match x {
                SFactor::Letter(l) => write!(f, "{l}")?,
                SFactor::Atom(a) => write!(f, "R({a})")?,
            }
        }
        Ok(())
    }
}

impl<L: Letter> fmt::Debug for StackWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type StackComb<L> = LinComb<StackWord<L>>;

/// Witness that an operator letter `w` is, up to the factor `k`, the
/// leading word of `R(a)·R(b)`. `residual = R(a)·R(b) − k·w`; all its
/// words are smaller than `w` and carry the same letters.
#[derive(Clone, Debug)]
pub struct Expressibility<L: Letter> {
    pub k: Scalar,
    pub a: StackWord<L>,
    pub b: StackWord<L>,
    pub residual: StackComb<L>,
}

type Pair<L> = (StackWord<L>, StackWord<L>);

/// Product engine for one operator law. Caches are per instance.
pub struct RbCom<L: Letter> {
    policy: Policy,
    atom_products: RefCell<HashMap<Pair<L>, Rc<StackComb<L>>>>,
    producers: RefCell<HashMap<StackWord<L>, Rc<Vec<Pair<L>>>>>,
}

impl<L: Letter> RbCom<L> {
    pub fn new(policy: Policy) -> Self {
        RbCom {
            policy,
            atom_products: RefCell::new(HashMap::default()),
            producers: RefCell::new(HashMap::default()),
        }
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    /// `R` extended linearly.
    pub fn rb_wrap(&self, c: &StackComb<L>) -> StackComb<L> {
        LinComb::collect(c.iter().map(|(w, s)| (w.wrapped(), s.clone())))
    }

    pub fn product(&self, u: &StackWord<L>, v: &StackWord<L>) -> StackComb<L> {
        match (u.inner(), v.inner()) {
            (Some(a), Some(b)) => {
                let atoms = self.atom_product(a, b);
                if u.letters().is_empty() && v.letters().is_empty() {
                    return (*atoms).clone();
                }
                let mut extra = u.letters().to_vec();
                extra.extend(v.letters().iter().cloned());
                LinComb::collect(atoms.iter().map(|(w, c)| (w.with_letters(&extra), c.clone())))
            }
            _ => {
                let inner = u.inner().or(v.inner()).cloned();
                let mut ls = u.letters().to_vec();
                ls.extend(v.letters().iter().cloned());
                ls.sort_by(|a, b| b.cmp(a));
                LinComb::from_term(StackWord::build(inner, ls))
            }
        }
    }

    pub fn product_lc(&self, u: &StackComb<L>, v: &StackComb<L>) -> StackComb<L> {
        let mut out = LinComb::zero();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                out.add_scaled(&self.product(a, b), &(ca * cb));
            }
        }
        out
    }

    /// `R(a)·R(b) = R(R(a)·b + a·R(b) + corr(a·b))`.
    fn atom_product(&self, a: &StackWord<L>, b: &StackWord<L>) -> Rc<StackComb<L>> {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(hit) = self.atom_products.borrow().get(&key) {
            return hit.clone();
        }
        let (a, b) = (&key.0, &key.1);
        let mut inner = self.product(&a.wrapped(), b);
        inner += &self.product(a, &b.wrapped());
        let ab = self.product(a, b);
        match &self.policy {
            Policy::RotaBaxter(w) => inner.add_scaled(&ab, &w.0),
            Policy::Nijenhuis => inner -= &self.rb_wrap(&ab),
        }
        let out = Rc::new(self.rb_wrap(&inner));
        self.atom_products.borrow_mut().insert(key, out.clone());
        out
    }

    /// Leading word and coefficient of `R(a)·R(b)`.
    pub fn leading_of_product(&self, a: &StackWord<L>, b: &StackWord<L>) -> (StackWord<L>, Scalar) {
        let p = self.atom_product(a, b);
        let (w, c) = p.leading().expect("products of operator letters are nonzero");
        (w.clone(), c.clone())
    }

    /// Every unordered pair `(a, b)`, `a ≤ b`, whose product `R(a)·R(b)` has
    /// leading word `w` (with positive coefficient), in ascending order.
    pub fn producers(&self, w: &StackWord<L>) -> Rc<Vec<Pair<L>>> {
        if let Some(hit) = self.producers.borrow().get(w) {
            return hit.clone();
        }
        let mut found: Vec<Pair<L>> = Vec::new();
        if let Some(v) = w.inner().filter(|_| w.is_r_letter()) {
            if let Some(core) = v.inner() {
                let rest = v.letters();
                let mut cands: Vec<Pair<L>> = Vec::new();
                if !rest.is_empty() {
                    cands.push((core.clone(), StackWord::build(None, rest.to_vec())));
                }
                // The outer atom of the argument may itself come from a product.
                for (p, q) in self.producers(&core.wrapped()).iter() {
                    cands.push((p.clone(), StackWord::build(Some(q.clone()), rest.to_vec())));
                    cands.push((StackWord::build(Some(p.clone()), rest.to_vec()), q.clone()));
                }
                for (a, b) in cands {
                    let pair = if a <= b { (a, b) } else { (b, a) };
                    if found.contains(&pair) {
                        continue;
                    }
                    let (lw, lc) = self.leading_of_product(&pair.0, &pair.1);
                    if &lw == w && lc.is_positive() {
                        found.push(pair);
                    }
                }
            }
        }
        found.sort();
        let found = Rc::new(found);
        self.producers.borrow_mut().insert(w.clone(), found.clone());
        found
    }

    /// Expressibility witness of an operator letter, with the smallest
    /// producing pair.
    pub fn is_expressible(&self, w: &StackWord<L>) -> Result<Option<Expressibility<L>>, RbComError> {
        if !w.is_r_letter() {
            return Err(RbComError::NotAnRLetter(w.to_string()));
        }
        let prods = self.producers(w);
        let Some((a, b)) = prods.first() else {
            return Ok(None);
        };
        let p = self.atom_product(a, b);
        let k = p.coeff(w);
        assert!(k.is_positive(), "leading coefficient of an operator product must be positive");
        let mut residual = (*p).clone();
        residual.add_term(w.clone(), -k.clone());
        Ok(Some(Expressibility { k, a: a.clone(), b: b.clone(), residual }))
    }
}

/// All stack words over `alphabet` with X-degree in `1..=max_xdeg` and
/// R-degree at most `max_rdeg`, ascending.
pub fn enumerate_words<L: Letter>(alphabet: &[L], max_xdeg: u32, max_rdeg: u32) -> Vec<StackWord<L>> {
    let mut memo: HashMap<(u32, u32), Vec<StackWord<L>>> = HashMap::default();
    let mut out = words_within(alphabet, max_xdeg, max_rdeg, &mut memo);
    out.sort();
    out
}

fn words_within<L: Letter>(
    alphabet: &[L],
    xb: u32,
    rb: u32,
    memo: &mut HashMap<(u32, u32), Vec<StackWord<L>>>,
) -> Vec<StackWord<L>> {
    if let Some(v) = memo.get(&(xb, rb)) {
        return v.clone();
    }
    let mut out = Vec::new();
    let mut monos: Vec<Vec<L>> = Vec::new();
    multisets(alphabet, 0, xb, &mut Vec::new(), &mut monos);
    for m in &monos {
        let used: u32 = m.iter().map(|l| l.degrees().x).sum();
        if !m.is_empty() {
            out.push(StackWord::build(None, sorted_desc(m.clone())));
        }
        if rb > 0 && used < xb {
            for inner in words_within(alphabet, xb - used, rb - 1, memo) {
                out.push(StackWord::build(Some(inner), sorted_desc(m.clone())));
            }
        }
    }
    memo.insert((xb, rb), out.clone());
    out
}

fn sorted_desc<L: Letter>(mut v: Vec<L>) -> Vec<L> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

fn multisets<L: Letter>(alphabet: &[L], from: usize, budget: u32, cur: &mut Vec<L>, out: &mut Vec<Vec<L>>) {
    out.push(cur.clone());
    for i in from..alphabet.len() {
        let d = alphabet[i].degrees().x;
        if d <= budget {
            cur.push(alphabet[i].clone());
            multisets(alphabet, i, budget - d, cur, out);
            cur.pop();
        }
    }
}

impl<L: Letter> StackWord<L> {
    pub fn as_comb(&self) -> StackComb<L> {
        LinComb::from_term(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{scalar, Alphabet};

    fn xy() -> (Generator, Generator) {
        let a = Alphabet::new(["x", "y"]).unwrap();
        (a.by_rank(0).clone(), a.by_rank(1).clone())
    }

    fn lw(l: &Generator) -> StackWord<Generator> {
        StackWord::letter(l.clone())
    }

    #[test]
    fn square_of_r_x() {
        let (x, _) = xy();
        for lam in [0i64, 1, -1, 2] {
            let e = RbCom::new(Policy::rota_baxter(lam));
            let rx = lw(&x).wrapped();
            let p = e.product(&rx, &rx);
            let rxx = StackWord::new(Some(lw(&x)), vec![x.clone()]).unwrap().wrapped();
            let rx2 = StackWord::monomial(vec![x.clone(), x.clone()]).unwrap().wrapped();
            let expect = LinComb::term(scalar(2), rxx) + LinComb::term(scalar(lam), rx2);
            assert_eq!(p, expect, "λ = {lam}");
        }
    }

    #[test]
    fn plain_letters_multiply_as_monomials() {
        let (x, y) = xy();
        let e = RbCom::new(Policy::rota_baxter(1));
        let p = e.product(&lw(&x), &lw(&y));
        assert_eq!(p, StackWord::monomial(vec![x, y]).unwrap().as_comb());
    }

    #[test]
    fn r_x_times_r_y() {
        let (x, y) = xy();
        let e = RbCom::new(Policy::rota_baxter(1));
        let p = e.product(&lw(&x).wrapped(), &lw(&y).wrapped());
        let a = StackWord::new(Some(lw(&x)), vec![y.clone()]).unwrap().wrapped();
        let b = StackWord::new(Some(lw(&y)), vec![x.clone()]).unwrap().wrapped();
        let c = StackWord::monomial(vec![x, y]).unwrap().wrapped();
        assert_eq!(p, a.as_comb() + b.as_comb() + c.as_comb());
    }

    #[test]
    fn wrap_is_linear() {
        let (x, _) = xy();
        let e: RbCom<Generator> = RbCom::new(Policy::rota_baxter(1));
        assert!(e.rb_wrap(&LinComb::zero()).is_zero());
        let w = StackWord::new(Some(lw(&x)), vec![x.clone()]).unwrap();
        assert_eq!(e.rb_wrap(&w.as_comb()), w.wrapped().as_comb());
    }

    #[test]
    fn expressibility_examples() {
        let (x, _) = xy();
        let e = RbCom::new(Policy::rota_baxter(1));
        let w = StackWord::new(Some(lw(&x)), vec![x.clone()]).unwrap().wrapped();
        let ex = e.is_expressible(&w).unwrap().unwrap();
        assert_eq!(ex.k, scalar(2));
        assert_eq!((ex.a.clone(), ex.b.clone()), (lw(&x), lw(&x)));
        let rx2 = StackWord::monomial(vec![x.clone(), x.clone()]).unwrap().wrapped();
        assert_eq!(ex.residual, rx2.as_comb());
        assert!(e.is_expressible(&lw(&x).wrapped()).unwrap().is_none());
        assert!(e.is_expressible(&lw(&x).wrapped().wrapped()).unwrap().is_none());
        assert!(e.is_expressible(&lw(&x)).is_err());
    }

    #[test]
    fn levels_round_trip() {
        let (x, y) = xy();
        let w = StackWord::from_levels(vec![vec![y.clone()], vec![], vec![x.clone()]]).unwrap();
        assert_eq!(w.to_string(), "R(R(x))*y");
        assert_eq!(w.levels(), vec![vec![y], vec![], vec![x]]);
        assert!(StackWord::<Generator>::from_levels(vec![vec![]]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let (x, _) = xy();
        // x, R(x), R(R(x))
        assert_eq!(enumerate_words(&[x.clone()], 1, 2).len(), 3);
        // x, x², R(x), R(x)x, R(x²), R(R(x)x), R(x)·? …
        let ws = enumerate_words(&[x], 2, 1);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }
}
