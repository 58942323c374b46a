//! Normal forms of the free Poisson algebra with a Rota–Baxter (or
//! Nijenhuis) operator: commutative product, Poisson bracket and operator
//! application on basis words.

mod enumerate;
mod fuel;

use std::cell::{Cell, RefCell};
use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::rc::Rc;

use num_traits::One;
use thiserror::Error;

use crate::kernel::{Atom, Degrees, Element, LieWord, LinComb, MLetter, Policy, RAtom, Scalar, Word};
use crate::rbcom::{Letter, RbCom, StackWord};
use crate::rblie::{lie_to_element, lyndon_bracket, prepend_op};

pub use enumerate::{stratum, BoundsError};
pub use fuel::FuelExhausted;

/// Environment variable holding the default fuel cap.
pub const FUEL_ENV: &str = "RBPOIS_FUEL";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(u64),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// A non-operator factor seen as a letter of the commutative layer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PLetter(pub Atom);

impl Letter for PLetter {
    fn degrees(&self) -> Degrees {
        self.0.degrees()
    }
}

impl fmt::Display for PLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Word::from_sorted(vec![self.0.clone()]))
    }
}

/// `k·Op(arg) = Op(e)·Op(f) − residual`, with `Op(e)·Op(f)` having leading
/// word `Op(arg)`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub k: Scalar,
    pub e: Word,
    pub f: Word,
    pub residual: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Lie,
    Free,
    Expressible,
}

type Memo<K> = RefCell<HashMap<K, Element>>;

/// Normal-form engine for one operator law. Caches live inside the engine;
/// use one engine per thread.
pub struct Engine {
    policy: Policy,
    rbc: RbCom<PLetter>,
    stacks: RefCell<HashMap<Word, StackWord<PLetter>>>,
    witnesses: RefCell<HashMap<RAtom, Option<Rc<Witness>>>>,
    op_products: Memo<(RAtom, RAtom)>,
    atom_brackets: Memo<(Atom, Atom)>,
    word_brackets: Memo<(Word, Word)>,
    fuel_cap: Option<u64>,
    fuel_left: Cell<u64>,
}

impl Engine {
    pub fn new(policy: Policy) -> Self {
        Engine {
            rbc: RbCom::new(policy.clone()),
            policy,
            stacks: RefCell::default(),
            witnesses: RefCell::default(),
            op_products: RefCell::default(),
            atom_brackets: RefCell::default(),
            word_brackets: RefCell::default(),
            fuel_cap: None,
            fuel_left: Cell::new(u64::MAX),
        }
    }

    pub fn rota_baxter(lambda: Scalar) -> Self {
        Engine::new(Policy::RotaBaxter(crate::kernel::Weight(lambda)))
    }

    pub fn nijenhuis() -> Self {
        Engine::new(Policy::Nijenhuis)
    }

    /// Caps the work of each [`Engine::guarded`] call.
    pub fn with_fuel(mut self, cap: u64) -> Self {
        self.fuel_cap = Some(cap);
        self
    }

    /// Reads the cap from [`FUEL_ENV`] if set.
    pub fn with_env_fuel(self) -> Self {
        match std::env::var(FUEL_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            Some(cap) => self.with_fuel(cap),
            None => self,
        }
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    pub fn symbol(&self) -> char {
        self.policy.symbol()
    }

    /// Runs `f` with a fresh fuel budget. Exhaustion aborts the computation,
    /// drops partially filled caches and returns an error.
    pub fn guarded<T>(&self, f: impl FnOnce(&Engine) -> T) -> Result<T, EngineError> {
        let Some(cap) = self.fuel_cap else {
            return Ok(f(self));
        };
        self.fuel_left.set(cap);
        let r = fuel::catch(|| f(self));
        self.fuel_left.set(u64::MAX);
        r.map_err(|_| {
            self.clear_caches();
            EngineError::FuelExhausted(cap)
        })
    }

    pub fn clear_caches(&self) {
        self.stacks.borrow_mut().clear();
        self.witnesses.borrow_mut().clear();
        self.op_products.borrow_mut().clear();
        self.atom_brackets.borrow_mut().clear();
        self.word_brackets.borrow_mut().clear();
    }

    fn tick(&self) {
        if self.fuel_cap.is_some() {
            let left = self.fuel_left.get();
            if left == 0 {
                fuel::exhausted();
            }
            self.fuel_left.set(left - 1);
        }
    }

    // -----------------------------------------------------------------------
    // Operator application

    pub fn apply_word(&self, w: &Word) -> Word {
        RAtom::new(w.clone()).to_word()
    }

    /// The free operator, extended linearly.
    pub fn apply(&self, c: &Element) -> Element {
        LinComb::collect(c.iter().map(|(w, s)| (self.apply_word(w), s.clone())))
    }

    // -----------------------------------------------------------------------
    // Commutative product

    pub fn mul_words(&self, u: &Word, v: &Word) -> Element {
        match (u.r_atom(), v.r_atom()) {
            (Some(a), Some(b)) => {
                let head = self.op_product(a, b);
                let rest: Vec<Atom> = u
                    .lie_factors()
                    .chain(v.lie_factors())
                    .cloned()
                    .collect();
                if rest.is_empty() {
                    return head;
                }
                LinComb::collect(head.iter().map(|(w, c)| (w.concat_atoms(&rest), c.clone())))
            }
            _ => LinComb::from_term(u.concat(v)),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                out.add_scaled(&self.mul_words(u, v), &(cu * cv));
            }
        }
        out
    }

    /// `Op(s1)·Op(s2) = Op(Op(s1)·s2 + s1·Op(s2) + corr(s1·s2))`.
    fn op_product(&self, a: &RAtom, b: &RAtom) -> Element {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(hit) = self.op_products.borrow().get(&key) {
            return hit.clone();
        }
        self.tick();
        let (s1, s2) = (key.0.arg(), key.1.arg());
        let mut inner = self.mul_words(&key.0.to_word(), s2);
        inner += &self.mul_words(s1, &key.1.to_word());
        let p = self.mul_words(s1, s2);
        self.add_correction(&mut inner, &p);
        let out = self.apply(&inner);
        self.op_products.borrow_mut().insert(key, out.clone());
        out
    }

    /// Adds the weight term of the operator law for the raw product `p`.
    fn add_correction(&self, acc: &mut Element, p: &Element) {
        match &self.policy {
            Policy::RotaBaxter(w) => acc.add_scaled(p, &w.0),
            Policy::Nijenhuis => *acc -= &self.apply(p),
        }
    }

    // -----------------------------------------------------------------------
    // Expressibility

    fn to_stack(&self, w: &Word) -> StackWord<PLetter> {
        if let Some(s) = self.stacks.borrow().get(w) {
            return s.clone();
        }
        let inner = w.r_atom().map(|r| self.to_stack(r.arg()));
        let letters = w.lie_factors().cloned().map(PLetter).collect();
        let s = StackWord::new(inner, letters).expect("basis words are nonempty");
        self.stacks.borrow_mut().insert(w.clone(), s.clone());
        s
    }

    fn from_stack(s: &StackWord<PLetter>) -> Word {
        let mut f: Vec<Atom> = s.letters().iter().map(|l| l.0.clone()).collect();
        if let Some(i) = s.inner() {
            f.push(Atom::R(RAtom::new(Self::from_stack(i))));
        }
        Word::from_unsorted(f)
    }

    /// Witness for an expressible operator atom, `None` otherwise.
    pub fn witness(&self, a: &RAtom) -> Option<Rc<Witness>> {
        if let Some(hit) = self.witnesses.borrow().get(a) {
            return hit.clone();
        }
        self.tick();
        let sw = self.to_stack(&a.to_word());
        let found = self
            .rbc
            .is_expressible(&sw)
            .expect("operator atoms are operator letters")
            .map(|ex| {
                let residual = LinComb::collect(
                    ex.residual.iter().map(|(w, c)| (Self::from_stack(w), c.clone())),
                );
                Rc::new(Witness {
                    k: ex.k,
                    e: Self::from_stack(&ex.a),
                    f: Self::from_stack(&ex.b),
                    residual,
                })
            });
        self.witnesses.borrow_mut().insert(a.clone(), found.clone());
        found
    }

    pub fn is_expressible(&self, a: &RAtom) -> bool {
        self.witness(a).is_some()
    }

    fn class(&self, a: &Atom) -> Class {
        match a {
            Atom::R(r) if self.is_expressible(r) => Class::Expressible,
            Atom::R(_) => Class::Free,
            _ => Class::Lie,
        }
    }

    // -----------------------------------------------------------------------
    // Bracket

    pub fn bracket(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                out.add_scaled(&self.bracket_words(u, v), &(cu * cv));
            }
        }
        out
    }

    /// `[u,v] = Σ [a_i,b_j]·u(i)·v(j)`.
    pub fn bracket_words(&self, u: &Word, v: &Word) -> Element {
        if u == v {
            return Element::zero();
        }
        if u > v {
            return -self.bracket_words(v, u);
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.word_brackets.borrow().get(&key) {
            return hit.clone();
        }
        let mut out = Element::zero();
        for (i, a) in u.factors().iter().enumerate() {
            let ui = u.without(i);
            for (j, b) in v.factors().iter().enumerate() {
                let ab = self.bracket_atoms(a, b);
                if ab.is_zero() {
                    continue;
                }
                let term = match (&ui, v.without(j)) {
                    (None, None) => ab,
                    (Some(x), None) => self.mul(&ab, &LinComb::from_term(x.clone())),
                    (None, Some(y)) => self.mul(&ab, &LinComb::from_term(y)),
                    (Some(x), Some(y)) => self.mul(&ab, &self.mul_words(x, &y)),
                };
                out += &term;
            }
        }
        self.word_brackets.borrow_mut().insert(key, out.clone());
        out
    }

    /// Bracket of two commutative factors.
    pub fn bracket_atoms(&self, a: &Atom, b: &Atom) -> Element {
        if a == b {
            return Element::zero();
        }
        if a > b {
            return -self.bracket_atoms(b, a);
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.atom_brackets.borrow().get(&key) {
            return hit.clone();
        }
        self.tick();
        let out = match (self.class(a), self.class(b)) {
            (Class::Expressible, Class::Expressible) | (Class::Free, Class::Free) => {
                self.expand_operator_bracket(a.as_r().unwrap(), b.as_r().unwrap())
            }
            (Class::Expressible, _) => self.bracket_expressible(a.as_r().unwrap(), b),
            (_, Class::Expressible) => -self.bracket_expressible(b.as_r().unwrap(), a),
            (Class::Free, Class::Lie) => self.ad(a.as_r().unwrap(), &b.as_lie().unwrap()),
            (Class::Lie, Class::Free) => -self.ad(b.as_r().unwrap(), &a.as_lie().unwrap()),
            (Class::Lie, Class::Lie) => {
                lie_to_element(&lyndon_bracket(&a.as_lie().unwrap(), &b.as_lie().unwrap()))
            }
        };
        self.atom_brackets.borrow_mut().insert(key, out.clone());
        out
    }

    /// `[Op(c),Op(d)] = Op([Op(c),d] + [c,Op(d)] + corr([c,d]))`.
    pub fn expand_operator_bracket(&self, a: &RAtom, b: &RAtom) -> Element {
        if a == b {
            return Element::zero();
        }
        let (c, d) = (a.arg(), b.arg());
        let mut inner = self.bracket_words(&a.to_word(), d);
        inner += &self.bracket_words(c, &b.to_word());
        let p = self.bracket_words(c, d);
        self.add_correction(&mut inner, &p);
        self.apply(&inner)
    }

    /// `[w,b]` for an expressible `w` with `k·w = Op(e)·Op(f) − s`:
    /// `(1/k)([Op(e),b]·Op(f) + [Op(f),b]·Op(e) − [s,b])`.
    fn bracket_expressible(&self, w: &RAtom, b: &Atom) -> Element {
        let wit = self.witness(w).expect("caller checked expressibility");
        let bw = LinComb::from_term(Word::from_unsorted(vec![b.clone()]));
        let re = LinComb::from_term(self.apply_word(&wit.e));
        let rf = LinComb::from_term(self.apply_word(&wit.f));
        let mut out = self.mul(&self.bracket(&re, &bw), &rf);
        out += &self.mul(&self.bracket(&rf, &bw), &re);
        out -= &self.bracket(&wit.residual, &bw);
        out.scaled(&(Scalar::one() / &wit.k))
    }

    /// Adjoint action of a non-expressible operator atom on a Lie word.
    fn ad(&self, b: &RAtom, y: &LieWord) -> Element {
        match y.factorization() {
            None => {
                let m = &y.letters()[0];
                if let Some(n) = prepend_op(b, m) {
                    return LieWord::letter(n).to_word().into();
                }
                // [b,[b1,m']] = [b1,[b,m']] + [[b,b1],m'] for b < b1.
                let b1 = m.ops()[0].clone();
                let rest = MLetter::new(m.ops()[1..].to_vec(), m.base().clone());
                let rest_w = LinComb::from_term(LieWord::letter(rest.clone()).to_word());
                let inner = self.ad(b, &LieWord::letter(rest));
                let mut out = self.bracket(&LinComb::from_term(b1.to_word()), &inner);
                let bb1 = self.bracket_atoms(&Atom::R(b.clone()), &Atom::R(b1));
                out += &self.bracket(&bb1, &rest_w);
                out
            }
            Some((y1, y2)) => {
                let w1 = LinComb::from_term(y1.to_word());
                let w2 = LinComb::from_term(y2.to_word());
                let mut out = self.bracket(&self.ad(b, &y1), &w2);
                out += &self.bracket(&w1, &self.ad(b, &y2));
                out
            }
        }
    }

    // -----------------------------------------------------------------------
    // Checks

    /// Verifies the structural invariants of every word of `c`.
    pub fn validate(&self, c: &Element) -> Result<(), String> {
        for (w, _) in c.iter() {
            self.validate_word(w)?;
        }
        Ok(())
    }

    pub fn validate_word(&self, w: &Word) -> Result<(), String> {
        let f = w.factors();
        if f.windows(2).any(|p| p[0] < p[1]) {
            return Err(format!("factors of {w} not descending"));
        }
        if w.factors().iter().filter(|a| a.as_r().is_some()).count() > 1 {
            return Err(format!("{w} has two outer operator atoms"));
        }
        for a in f {
            match a {
                Atom::Gen(_) => {}
                Atom::R(r) => self.validate_word(r.arg())?,
                Atom::Lie(l) => {
                    if !crate::kernel::is_lyndon_word(l.letters()) {
                        return Err(format!("{w}: Lie factor is not Lyndon"));
                    }
                    if l.letters().len() == 1 && l.letters()[0].is_generator() {
                        return Err(format!("{w}: bare generator stored as a Lie word"));
                    }
                    for m in l.letters() {
                        if m.ops().windows(2).any(|p| p[0] < p[1]) {
                            return Err(format!("{w}: operator prefix not sorted"));
                        }
                        for op in m.ops() {
                            if self.is_expressible(op) {
                                return Err(format!("{w}: expressible atom inside a Lie word"));
                            }
                            self.validate_word(op.arg())?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl From<Word> for Element {
    fn from(w: Word) -> Element {
        LinComb::from_term(w)
    }
}
