//! Basis words of the free algebra.
//!
//! A [`Word`] is a commutative monomial: a nonempty multiset of factors
//! ([`Atom`]s) with at most one operator atom among them. Non-operator
//! factors are Lie letters: either a bare generator or a Lyndon word over
//! [`MLetter`]s. An `MLetter` is a generator with a (possibly empty) sorted
//! prefix of non-expressible operator atoms acting on it by the adjoint
//! action, i.e. `[b1,[b2,…[bk,x]…]]` with `b1 ≥ b2 ≥ … ≥ bk`.
//!
//! Order: total X-degree, then R-degree, then coverage (smaller wins; see
//! [`Degrees`]), then structure. Structure ranks factor kinds
//! generator < Lie word < operator atom; operator atoms compare by argument,
//! monomials compare their descending factor lists lexicographically.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{Generator, KernelError};

/// Degree bookkeeping carried by every word and factor.
///
/// `cov` sums, over every operator application, the X-degree of its
/// argument. At equal X- and R-degree a word with smaller coverage is
/// larger, so `Op(a)·b` outranks `Op(a·b)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Degrees {
    pub x: u32,
    pub r: u32,
    pub cov: u32,
}

impl Degrees {
    pub const GENERATOR: Degrees = Degrees { x: 1, r: 0, cov: 0 };

    pub fn plus(self, o: Degrees) -> Degrees {
        Degrees { x: self.x + o.x, r: self.r + o.r, cov: self.cov + o.cov }
    }

    /// Degrees of `Op(w)` given those of `w`.
    pub fn wrapped(self) -> Degrees {
        Degrees { x: self.x, r: self.r + 1, cov: self.cov + self.x }
    }

    pub fn tier_cmp(&self, o: &Degrees) -> Ordering {
        self.x
            .cmp(&o.x)
            .then(self.r.cmp(&o.r))
            .then(o.cov.cmp(&self.cov))
    }
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = rustc_hash::FxHasher::default();
    t.hash(&mut h);
    h.finish()
}

// ---------------------------------------------------------------------------
// Operator atoms

struct RInner {
    arg: Word,
    deg: Degrees,
    hash: u64,
}

/// `Op(arg)` as a commutative factor.
#[derive(Clone)]
pub struct RAtom(Arc<RInner>);

impl RAtom {
    pub fn new(arg: Word) -> Self {
        let deg = arg.degrees().wrapped();
        let hash = hash_of(&(0xA7u8, arg.hash_value()));
        RAtom(Arc::new(RInner { arg, deg, hash }))
    }

    pub fn arg(&self) -> &Word {
        &self.0.arg
    }

    pub fn degrees(&self) -> Degrees {
        self.0.deg
    }

    /// The single-factor word `Op(arg)`.
    pub fn to_word(&self) -> Word {
        Word::from_sorted(vec![Atom::R(self.clone())])
    }
}

impl PartialEq for RAtom {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.hash == o.0.hash && self.0.arg == o.0.arg)
    }
}
impl Eq for RAtom {}

impl Hash for RAtom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for RAtom {
    fn cmp(&self, o: &Self) -> Ordering {
        if self == o {
            return Ordering::Equal;
        }
        self.0.arg.cmp(&o.0.arg)
    }
}
impl PartialOrd for RAtom {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for RAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({:?})", self.0.arg)
    }
}

// ---------------------------------------------------------------------------
// Lie letters

struct MInner {
    ops: Vec<RAtom>,
    base: Generator,
    deg: Degrees,
    hash: u64,
}

/// `[b1,[b2,…[bk,x]…]]` with `b1 ≥ … ≥ bk` non-expressible operator atoms.
#[derive(Clone)]
pub struct MLetter(Arc<MInner>);

impl MLetter {
    /// `ops` may be in any order; they are sorted descending.
    pub fn new(mut ops: Vec<RAtom>, base: Generator) -> Self {
        ops.sort_by(|a, b| b.cmp(a));
        let deg = ops
            .iter()
            .fold(Degrees::GENERATOR, |d, b| d.plus(b.degrees()));
        let hs: Vec<u64> = ops.iter().map(|b| b.0.hash).collect();
        let hash = hash_of(&(0x3Cu8, &base, hs));
        MLetter(Arc::new(MInner { ops, base, deg, hash }))
    }

    pub fn generator(g: Generator) -> Self {
        MLetter::new(Vec::new(), g)
    }

    pub fn ops(&self) -> &[RAtom] {
        &self.0.ops
    }

    pub fn base(&self) -> &Generator {
        &self.0.base
    }

    pub fn degrees(&self) -> Degrees {
        self.0.deg
    }

    pub fn is_generator(&self) -> bool {
        self.0.ops.is_empty()
    }
}

impl PartialEq for MLetter {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.hash == o.0.hash && self.0.base == o.0.base && self.0.ops == o.0.ops)
    }
}
impl Eq for MLetter {}

impl Hash for MLetter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for MLetter {
    fn cmp(&self, o: &Self) -> Ordering {
        if self == o {
            return Ordering::Equal;
        }
        self.0
            .deg
            .tier_cmp(&o.0.deg)
            .then_with(|| self.0.base.cmp(&o.0.base))
            .then_with(|| self.0.ops.cmp(&o.0.ops))
    }
}
impl PartialOrd for MLetter {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for MLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayMLetter { m: self, sym: 'R' })
    }
}

struct LInner {
    letters: Vec<MLetter>,
    deg: Degrees,
    hash: u64,
}

/// A Lyndon word over [`MLetter`]s; it stands for the bracketing given by
/// its standard factorization.
#[derive(Clone)]
pub struct LieWord(Arc<LInner>);

impl LieWord {
    /// Caller guarantees `letters` is a Lyndon word.
    pub(crate) fn from_lyndon(letters: Vec<MLetter>) -> Self {
        debug_assert!(is_lyndon(&letters));
        let deg = letters
            .iter()
            .fold(Degrees::default(), |d, m| d.plus(m.degrees()));
        let hs: Vec<u64> = letters.iter().map(|m| m.0.hash).collect();
        let hash = hash_of(&(0x5Du8, hs));
        LieWord(Arc::new(LInner { letters, deg, hash }))
    }

    pub fn new(letters: Vec<MLetter>) -> Result<Self, KernelError> {
        if !is_lyndon(&letters) {
            return Err(KernelError::InvalidWord("Lie word is not a Lyndon word".into()));
        }
        Ok(LieWord::from_lyndon(letters))
    }

    pub fn letter(m: MLetter) -> Self {
        LieWord::from_lyndon(vec![m])
    }

    pub fn generator(g: Generator) -> Self {
        LieWord::letter(MLetter::generator(g))
    }

    pub fn letters(&self) -> &[MLetter] {
        &self.0.letters
    }

    pub fn degrees(&self) -> Degrees {
        self.0.deg
    }

    /// Number of generator leaves plus operator leaves.
    pub fn leaf_count(&self) -> usize {
        self.0.letters.iter().map(|m| 1 + m.ops().len()).sum()
    }

    /// Standard factorization `(u, v)`; `None` for a single letter.
    pub fn factorization(&self) -> Option<(LieWord, LieWord)> {
        let ls = &self.0.letters;
        if ls.len() < 2 {
            return None;
        }
        let k = std_split(ls);
        Some((
            LieWord::from_lyndon(ls[..k].to_vec()),
            LieWord::from_lyndon(ls[k..].to_vec()),
        ))
    }

    /// Lexicographic order on the letter sequence (the Lyndon order).
    pub fn lex_cmp(&self, o: &LieWord) -> Ordering {
        self.0.letters.as_slice().cmp(o.0.letters.as_slice())
    }

    /// The commutative factor this Lie element occupies.
    pub fn to_atom(&self) -> Atom {
        let ls = &self.0.letters;
        if ls.len() == 1 && ls[0].is_generator() {
            Atom::Gen(ls[0].base().clone())
        } else {
            Atom::Lie(self.clone())
        }
    }

    pub fn to_word(&self) -> Word {
        Word::from_sorted(vec![self.to_atom()])
    }
}

impl PartialEq for LieWord {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.hash == o.0.hash && self.0.letters == o.0.letters)
    }
}
impl Eq for LieWord {}

impl Hash for LieWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for LieWord {
    fn cmp(&self, o: &Self) -> Ordering {
        if self == o {
            return Ordering::Equal;
        }
        self.0
            .deg
            .tier_cmp(&o.0.deg)
            .then(self.0.letters.len().cmp(&o.0.letters.len()))
            .then_with(|| self.lex_cmp(o))
    }
}
impl PartialOrd for LieWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayLie { l: self, sym: 'R' })
    }
}

/// True for a nonempty word strictly smaller than each proper suffix.
pub fn is_lyndon(w: &[MLetter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Split point of the standard factorization: the longest proper Lyndon
/// suffix starts at the returned index.
pub(crate) fn std_split(w: &[MLetter]) -> usize {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a Lyndon word of length ≥ 2 has a proper Lyndon suffix")
}

// ---------------------------------------------------------------------------
// Factors

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    Generator,
    Lie,
    Operator,
}

/// A commutative factor of a basis word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Gen(Generator),
    Lie(LieWord),
    R(RAtom),
}

impl Atom {
    pub fn degrees(&self) -> Degrees {
        match self {
            Atom::Gen(_) => Degrees::GENERATOR,
            Atom::Lie(l) => l.degrees(),
            Atom::R(r) => r.degrees(),
        }
    }

    pub fn kind(&self) -> AtomKind {
        match self {
            Atom::Gen(_) => AtomKind::Generator,
            Atom::Lie(_) => AtomKind::Lie,
            Atom::R(_) => AtomKind::Operator,
        }
    }

    /// The Lie-layer element for a non-operator factor.
    pub fn as_lie(&self) -> Option<LieWord> {
        match self {
            Atom::Gen(g) => Some(LieWord::generator(g.clone())),
            Atom::Lie(l) => Some(l.clone()),
            Atom::R(_) => None,
        }
    }

    pub fn as_r(&self) -> Option<&RAtom> {
        match self {
            Atom::R(r) => Some(r),
            _ => None,
        }
    }

    fn hash_value(&self) -> u64 {
        match self {
            Atom::Gen(g) => hash_of(&(0x11u8, g)),
            Atom::Lie(l) => l.0.hash,
            Atom::R(r) => r.0.hash,
        }
    }

    fn collect_generators(&self, out: &mut Vec<Generator>) {
        match self {
            Atom::Gen(g) => out.push(g.clone()),
            Atom::Lie(l) => {
                for m in l.letters() {
                    out.push(m.base().clone());
                    for b in m.ops() {
                        b.arg().collect_generators(out);
                    }
                }
            }
            Atom::R(r) => r.arg().collect_generators(out),
        }
    }
}

impl Ord for Atom {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degrees()
            .tier_cmp(&o.degrees())
            .then(self.kind().cmp(&o.kind()))
            .then_with(|| match (self, o) {
                (Atom::Gen(a), Atom::Gen(b)) => a.cmp(b),
                (Atom::Lie(a), Atom::Lie(b)) => a.cmp(b),
                (Atom::R(a), Atom::R(b)) => a.cmp(b),
                _ => unreachable!("kinds already compared"),
            })
    }
}
impl PartialOrd for Atom {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayAtom { a: self, sym: 'R' })
    }
}

// ---------------------------------------------------------------------------
// Words

struct WInner {
    factors: Vec<Atom>,
    deg: Degrees,
    hash: u64,
}

/// A basis word: a nonempty commutative monomial in [`Atom`]s with at most
/// one operator atom.
#[derive(Clone)]
pub struct Word(Arc<WInner>);

impl Word {
    /// Validating constructor.
    pub fn new(factors: Vec<Atom>) -> Result<Word, KernelError> {
        if factors.is_empty() {
            return Err(KernelError::InvalidWord("empty monomial".into()));
        }
        if factors.iter().filter(|a| a.kind() == AtomKind::Operator).count() > 1 {
            return Err(KernelError::InvalidWord(
                "more than one operator atom at the outer level".into(),
            ));
        }
        for a in &factors {
            if let Atom::Lie(l) = a {
                if l.letters().len() == 1 && l.letters()[0].is_generator() {
                    return Err(KernelError::InvalidWord(
                        "bare generator stored as a Lie word".into(),
                    ));
                }
            }
        }
        Ok(Word::from_unsorted(factors))
    }

    pub(crate) fn from_unsorted(mut factors: Vec<Atom>) -> Word {
        factors.sort_by(|a, b| b.cmp(a));
        Word::from_sorted(factors)
    }

    pub(crate) fn from_sorted(factors: Vec<Atom>) -> Word {
        debug_assert!(!factors.is_empty());
        debug_assert!(factors.windows(2).all(|p| p[0] >= p[1]));
        let deg = factors
            .iter()
            .fold(Degrees::default(), |d, a| d.plus(a.degrees()));
        let hs: Vec<u64> = factors.iter().map(Atom::hash_value).collect();
        let hash = hash_of(&(0x77u8, hs));
        Word(Arc::new(WInner { factors, deg, hash }))
    }

    pub fn generator(g: Generator) -> Word {
        Word::from_sorted(vec![Atom::Gen(g)])
    }

    pub fn factors(&self) -> &[Atom] {
        &self.0.factors
    }

    pub fn degrees(&self) -> Degrees {
        self.0.deg
    }

    pub(crate) fn hash_value(&self) -> u64 {
        self.0.hash
    }

    /// The outer operator atom, if any.
    pub fn r_atom(&self) -> Option<&RAtom> {
        self.0.factors.iter().find_map(Atom::as_r)
    }

    /// `Some` iff the word is a single operator atom.
    pub fn as_r_letter(&self) -> Option<&RAtom> {
        match self.0.factors.as_slice() {
            [Atom::R(r)] => Some(r),
            _ => None,
        }
    }

    /// Non-operator factors, in descending order.
    pub fn lie_factors(&self) -> impl Iterator<Item = &Atom> {
        self.0.factors.iter().filter(|a| a.kind() != AtomKind::Operator)
    }

    /// The word with its `i`-th factor deleted; `None` if nothing is left.
    pub fn without(&self, i: usize) -> Option<Word> {
        if self.0.factors.len() == 1 {
            return None;
        }
        let mut f = self.0.factors.clone();
        f.remove(i);
        Some(Word::from_sorted(f))
    }

    /// Plain monomial concatenation. The caller guarantees at most one
    /// operator atom among both sides.
    pub(crate) fn concat(&self, o: &Word) -> Word {
        let mut f = Vec::with_capacity(self.0.factors.len() + o.0.factors.len());
        f.extend(self.0.factors.iter().cloned());
        f.extend(o.0.factors.iter().cloned());
        Word::from_unsorted(f)
    }

    pub(crate) fn concat_atoms(&self, extra: &[Atom]) -> Word {
        let mut f = self.0.factors.clone();
        f.extend(extra.iter().cloned());
        Word::from_unsorted(f)
    }

    pub fn collect_generators(&self, out: &mut Vec<Generator>) {
        for a in &self.0.factors {
            a.collect_generators(out);
        }
    }

    /// Multiplicity of each generator rank, all nesting levels included.
    pub fn content(&self, n_gens: usize) -> Vec<u32> {
        let mut gs = Vec::new();
        self.collect_generators(&mut gs);
        let mut c = vec![0u32; n_gens.max(gs.iter().map(|g| g.rank() as usize + 1).max().unwrap_or(0))];
        for g in gs {
            c[g.rank() as usize] += 1;
        }
        c
    }

    pub fn display(&self, sym: char) -> DisplayWord<'_> {
        DisplayWord { w: self, sym }
    }
}

impl PartialEq for Word {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.hash == o.0.hash && self.0.factors == o.0.factors)
    }
}
impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        if self == o {
            return Ordering::Equal;
        }
        self.0
            .deg
            .tier_cmp(&o.0.deg)
            .then_with(|| self.0.factors.cmp(&o.0.factors))
    }
}
impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('R'))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('R'))
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayLie { l: self, sym: 'R' })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayAtom { a: self, sym: 'R' })
    }
}

// ---------------------------------------------------------------------------
// Canonical text

pub struct DisplayWord<'a> {
    w: &'a Word,
    sym: char,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.w.factors().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}", DisplayAtom { a, sym: self.sym })?;
        }
        Ok(())
    }
}

struct DisplayAtom<'a> {
    a: &'a Atom,
    sym: char,
}

impl fmt::Display for DisplayAtom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a {
            Atom::Gen(g) => write!(f, "{g}"),
            Atom::Lie(l) => write!(f, "{}", DisplayLie { l, sym: self.sym }),
            Atom::R(r) => write!(f, "{}({})", self.sym, r.arg().display(self.sym)),
        }
    }
}

pub(crate) struct DisplayLie<'a> {
    pub(crate) l: &'a LieWord,
    pub(crate) sym: char,
}

impl fmt::Display for DisplayLie<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.l.factorization() {
            None => write!(f, "{}", DisplayMLetter { m: &self.l.letters()[0], sym: self.sym }),
            Some((u, v)) => write!(
                f,
                "[{},{}]",
                DisplayLie { l: &u, sym: self.sym },
                DisplayLie { l: &v, sym: self.sym }
            ),
        }
    }
}

struct DisplayMLetter<'a> {
    m: &'a MLetter,
    sym: char,
}

impl fmt::Display for DisplayMLetter<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.m.ops() {
            write!(f, "[{}({}),", self.sym, b.arg().display(self.sym))?;
        }
        write!(f, "{}", self.m.base())?;
        for _ in self.m.ops() {
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(r: u32, s: &str) -> Generator {
        Generator::new(r, s)
    }
    fn gw(r: u32, s: &str) -> Word {
        Word::generator(g(r, s))
    }
    fn rw(w: &Word) -> Word {
        RAtom::new(w.clone()).to_word()
    }

    #[test]
    fn generator_below_operator_letter() {
        let x = gw(0, "x");
        assert!(x < rw(&x));
        assert_eq!(x.cmp(&x), Ordering::Equal);
    }

    #[test]
    fn operator_is_monotone() {
        let x = gw(0, "x");
        let y = gw(1, "y");
        assert!(rw(&x) < rw(&y));
        assert!(rw(&rw(&x)) < rw(&rw(&y)));
    }

    #[test]
    fn coverage_ranks_inner_application_lower() {
        // R(x)*y outranks R(x*y): same X- and R-degree, smaller coverage.
        let x = gw(0, "x");
        let y = gw(1, "y");
        let rx_y = rw(&x).concat(&y);
        let r_xy = rw(&x.concat(&y));
        assert!(rx_y > r_xy);
    }

    #[test]
    fn word_validation() {
        let x = gw(0, "x");
        let r = RAtom::new(x.clone());
        assert!(Word::new(vec![]).is_err());
        assert!(Word::new(vec![Atom::R(r.clone()), Atom::R(r.clone())]).is_err());
        assert!(Word::new(vec![Atom::Lie(LieWord::generator(g(0, "x")))]).is_err());
        assert!(Word::new(vec![Atom::R(r), Atom::Gen(g(0, "x"))]).is_ok());
    }

    #[test]
    fn lyndon_helpers() {
        let a = MLetter::generator(g(0, "a"));
        let b = MLetter::generator(g(1, "b"));
        assert!(is_lyndon(&[a.clone(), b.clone()]));
        assert!(!is_lyndon(&[b.clone(), a.clone()]));
        assert!(!is_lyndon(&[a.clone(), a.clone()]));
        let aab = vec![a.clone(), a.clone(), b.clone()];
        assert_eq!(std_split(&aab), 1);
        let abb = vec![a.clone(), b.clone(), b.clone()];
        assert_eq!(std_split(&abb), 2);
        let l = LieWord::new(abb).unwrap();
        assert_eq!(format!("{l:?}"), "[[a,b],b]");
    }

    #[test]
    fn printing() {
        let x = gw(0, "x");
        let w = rw(&rw(&x).concat(&x)).concat(&gw(1, "y"));
        assert_eq!(w.to_string(), "R(R(x)*x)*y");
        let m = MLetter::new(vec![RAtom::new(x.clone())], g(1, "y"));
        assert_eq!(LieWord::letter(m).to_word().display('N').to_string(), "[N(x),y]");
    }
}
