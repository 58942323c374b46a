//! The Lie layer.
//!
//! Lie factors are Lyndon words over M-letters (see [`crate::kernel`]), which
//! makes the Lie part free over the M-letter alphabet: brackets of two Lie
//! words are computed by the classical Lyndon straightening below. Brackets
//! involving operator atoms go through the engine, which applies the
//! operator identity to atom–atom nodes and the adjoint action otherwise.

use std::cmp::Ordering;

use crate::kernel::{Atom, Element, LieWord, LinComb, MLetter, RAtom, Scalar, Word};
use crate::poisrb::Engine;

pub type LieComb = LinComb<LieWord>;

/// Bracket of two Lyndon words in the free Lie algebra over M-letters,
/// expanded on the Lyndon basis.
pub fn lyndon_bracket(u: &LieWord, v: &LieWord) -> LieComb {
    match u.lex_cmp(v) {
        Ordering::Equal => LinComb::zero(),
        Ordering::Greater => -lyndon_bracket(v, u),
        Ordering::Less => match u.factorization() {
            Some((u1, u2)) if u2.lex_cmp(v) == Ordering::Less => {
                // [[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]
                let mut out = bracket_left(&u1, &lyndon_bracket(&u2, v));
                out += &bracket_right(&lyndon_bracket(&u1, v), &u2);
                out
            }
            _ => {
                let mut ls = u.letters().to_vec();
                ls.extend(v.letters().iter().cloned());
                LinComb::from_term(LieWord::from_lyndon(ls))
            }
        },
    }
}

fn bracket_left(u: &LieWord, c: &LieComb) -> LieComb {
    c.flat_map(|v| lyndon_bracket(u, v))
}

fn bracket_right(c: &LieComb, v: &LieWord) -> LieComb {
    c.flat_map(|u| lyndon_bracket(u, v))
}

/// Lie-layer combination as an element of the algebra.
pub fn lie_to_element(c: &LieComb) -> Element {
    LinComb::collect(c.iter().map(|(l, s)| (l.to_word(), s.clone())))
}

/// Raw bracket expression over atoms.
#[derive(Clone, Debug)]
pub enum BracketTree {
    Leaf(Atom),
    Bracket(Box<BracketTree>, Box<BracketTree>),
    Sum(Vec<(Scalar, BracketTree)>),
}

impl BracketTree {
    pub fn leaf(a: Atom) -> Self {
        BracketTree::Leaf(a)
    }

    pub fn gen(g: crate::kernel::Generator) -> Self {
        BracketTree::Leaf(Atom::Gen(g))
    }

    pub fn op(arg: Word) -> Self {
        BracketTree::Leaf(Atom::R(RAtom::new(arg)))
    }

    pub fn br(a: BracketTree, b: BracketTree) -> Self {
        BracketTree::Bracket(Box::new(a), Box::new(b))
    }
}

/// Order in which a raw tree is reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Normalize both children, then bracket the results.
    BottomUp,
    /// Rewrite the tree into left-normed brackets of leaves by the Jacobi
    /// identity first, then fold from the left.
    LeftNormed,
}

pub fn lie_normalize(engine: &Engine, t: &BracketTree, strategy: Strategy) -> Element {
    match strategy {
        Strategy::BottomUp => bottom_up(engine, t),
        Strategy::LeftNormed => {
            let mut out = Element::zero();
            for (c, seq) in left_normed(t) {
                let mut acc = seq[0].to_word_elem();
                for l in &seq[1..] {
                    acc = engine.bracket(&acc, &l.to_word_elem());
                }
                out.add_scaled(&acc, &c);
            }
            out
        }
    }
}

trait AtomElem {
    fn to_word_elem(&self) -> Element;
}

impl AtomElem for Atom {
    fn to_word_elem(&self) -> Element {
        LinComb::from_term(Word::from_unsorted(vec![self.clone()]))
    }
}

fn bottom_up(engine: &Engine, t: &BracketTree) -> Element {
    match t {
        BracketTree::Leaf(a) => a.to_word_elem(),
        BracketTree::Bracket(a, b) => engine.bracket(&bottom_up(engine, a), &bottom_up(engine, b)),
        BracketTree::Sum(ts) => {
            let mut out = Element::zero();
            for (c, s) in ts {
                out.add_scaled(&bottom_up(engine, s), c);
            }
            out
        }
    }
}

type Seq = Vec<Atom>;

fn left_normed(t: &BracketTree) -> Vec<(Scalar, Seq)> {
    match t {
        BracketTree::Leaf(a) => vec![(Scalar::from_integer(1.into()), vec![a.clone()])],
        BracketTree::Bracket(a, b) => push(left_normed(a), b),
        BracketTree::Sum(ts) => ts
            .iter()
            .flat_map(|(c, s)| left_normed(s).into_iter().map(move |(d, q)| (c * d, q)))
            .collect(),
    }
}

/// `[X, t]` for a left-normed combination `X`.
fn push(x: Vec<(Scalar, Seq)>, t: &BracketTree) -> Vec<(Scalar, Seq)> {
    match t {
        BracketTree::Leaf(a) => x
            .into_iter()
            .map(|(c, mut s)| {
                s.push(a.clone());
                (c, s)
            })
            .collect(),
        BracketTree::Bracket(b1, b2) => {
            // [X,[b1,b2]] = [[X,b1],b2] − [[X,b2],b1]
            let mut out = push(push(x.clone(), b1), b2);
            out.extend(push(push(x, b2), b1).into_iter().map(|(c, s)| (-c, s)));
            out
        }
        BracketTree::Sum(ts) => ts
            .iter()
            .flat_map(|(c, s)| push(x.clone(), s).into_iter().map(move |(d, q)| (c * d, q)))
            .collect(),
    }
}

/// `[u, v]` for two canonical Lie-layer factors.
pub fn lie_bracket(engine: &Engine, u: &Atom, v: &Atom) -> Element {
    engine.bracket_atoms(u, v)
}

/// The operator identity on a bracket of two operator atoms:
/// `[Op(a),Op(b)] = Op([Op(a),b] + [a,Op(b)] + corr([a,b]))`.
pub fn rb_expand_bracket(engine: &Engine, a: &RAtom, b: &RAtom) -> Element {
    engine.expand_operator_bracket(a, b)
}

/// M-letter obtained by letting `b` act on `m` when `b` may be put in front.
pub(crate) fn prepend_op(b: &RAtom, m: &MLetter) -> Option<MLetter> {
    match m.ops().first() {
        Some(top) if b < top => None,
        _ => {
            let mut ops = m.ops().to_vec();
            ops.push(b.clone());
            Some(MLetter::new(ops, m.base().clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{scalar, Generator};

    fn l(r: u32, s: &str) -> LieWord {
        LieWord::generator(Generator::new(r, s))
    }

    #[test]
    fn anticommutativity() {
        let (x, y) = (l(0, "x"), l(1, "y"));
        assert!(lyndon_bracket(&x, &x).is_zero());
        let xy = lyndon_bracket(&x, &y);
        assert_eq!(lyndon_bracket(&y, &x), -xy.clone());
        assert_eq!(xy.len(), 1);
    }

    #[test]
    fn jacobi_on_letters() {
        let (x, y, z) = (l(0, "x"), l(1, "y"), l(2, "z"));
        let j = |a: &LieWord, b: &LieWord, c: &LieWord| bracket_right(&lyndon_bracket(a, b), c);
        let mut s = j(&x, &y, &z);
        s += &j(&y, &z, &x);
        s += &j(&z, &x, &y);
        assert!(s.is_zero());
    }

    #[test]
    fn straightening_x_xy() {
        let (x, y) = (l(0, "x"), l(1, "y"));
        let xy = lyndon_bracket(&x, &y).leading().unwrap().0.clone();
        let r = lyndon_bracket(&x, &xy);
        assert_eq!(r.len(), 1);
        let (w, c) = r.leading().unwrap();
        assert_eq!(c, &scalar(1));
        assert_eq!(format!("{w:?}"), "[x,[x,y]]");
        // [[x,y],y] is itself Lyndon: xyy
        let r2 = lyndon_bracket(&xy, &y);
        assert_eq!(format!("{:?}", r2.leading().unwrap().0), "[[x,y],y]");
    }
}
