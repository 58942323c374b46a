//! The Nijenhuis variant: the same normal forms with the weight terms
//! replaced by `−N(xy)` and `−N([x,y])`, and the NS-Poisson structures such
//! operators induce.

use std::fmt;

use crate::kernel::{Element, Policy};
use crate::models::{IdentityOutcome, ModelError, Operator, PoissonModel, PrePoisson, VerifiedModel};
use crate::poisrb::Engine;

/// `u·v` in the free Poisson Nijenhuis algebra.
pub fn ns_com_product(e: &Engine, u: &Element, v: &Element) -> Element {
    assert_nijenhuis(e);
    e.mul(u, v)
}

/// `[u,v]` in the free Poisson Nijenhuis algebra.
pub fn ns_bracket(e: &Engine, u: &Element, v: &Element) -> Element {
    assert_nijenhuis(e);
    e.bracket(u, v)
}

pub fn ns_apply(e: &Engine, c: &Element) -> Element {
    assert_nijenhuis(e);
    e.apply(c)
}

fn assert_nijenhuis(e: &Engine) {
    assert!(matches!(e.policy(), Policy::Nijenhuis), "engine is not a Nijenhuis engine");
}

type Product<'a, E> = Box<dyn Fn(&E, &E) -> E + 'a>;

/// A carrier with the four products `·`, `∧`, `∘`, `∨`.
pub struct NsOps<'a, M: PoissonModel> {
    model: &'a M,
    dot: Product<'a, M::Elem>,
    wedge: Product<'a, M::Elem>,
    circ: Product<'a, M::Elem>,
    vee: Product<'a, M::Elem>,
}

impl<'a, M: PoissonModel> NsOps<'a, M> {
    pub fn from_products(
        model: &'a M,
        dot: impl Fn(&M::Elem, &M::Elem) -> M::Elem + 'a,
        wedge: impl Fn(&M::Elem, &M::Elem) -> M::Elem + 'a,
        circ: impl Fn(&M::Elem, &M::Elem) -> M::Elem + 'a,
        vee: impl Fn(&M::Elem, &M::Elem) -> M::Elem + 'a,
    ) -> Self {
        NsOps { model, dot: Box::new(dot), wedge: Box::new(wedge), circ: Box::new(circ), vee: Box::new(vee) }
    }

    /// `a∘b = N(a)b`, `a∨b = −N(ab)`, `a·b = [N(a),b]`, `a∧b = −N([a,b])`.
    pub fn from_nijenhuis<O: Operator<M>>(vm: &'a VerifiedModel<M, O>) -> Result<Self, ModelError> {
        if !matches!(vm.policy(), Policy::Nijenhuis) {
            return Err(ModelError::Precondition(format!("expected a Nijenhuis operator, got {:?}", vm.policy())));
        }
        let m = vm.model();
        Ok(Self::from_products(
            m,
            move |a, b| m.bracket(&vm.apply(a), b),
            move |a, b| m.scale(&-crate::kernel::scalar(1), &vm.apply(&m.bracket(a, b))),
            move |a, b| m.mul(&vm.apply(a), b),
            move |a, b| m.scale(&-crate::kernel::scalar(1), &vm.apply(&m.mul(a, b))),
        ))
    }

    /// `·` is the prePoisson `*`, `∘` is the prePoisson `∘`, `∧ = ∨ = 0`.
    pub fn from_prepoisson(p: &'a PrePoisson<'a, M>, model: &'a M) -> Self {
        Self::from_products(
            model,
            move |a, b| p.star(a, b),
            move |_, _| model.zero(),
            move |a, b| p.circ(a, b),
            move |_, _| model.zero(),
        )
    }

    pub fn dot(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        (self.dot)(a, b)
    }

    pub fn wedge(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        (self.wedge)(a, b)
    }

    pub fn circ(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        (self.circ)(a, b)
    }

    pub fn vee(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        (self.vee)(a, b)
    }

    /// `a⋆b = a·b − b·a + a∧b`.
    pub fn star(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        let m = self.model;
        m.add(&m.sub(&self.dot(a, b), &self.dot(b, a)), &self.wedge(a, b))
    }

    /// `a*b = a∘b + b∘a + a∨b`.
    pub fn asterisk(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        let m = self.model;
        m.add(&m.add(&self.circ(a, b), &self.circ(b, a)), &self.vee(a, b))
    }
}

#[derive(Clone, Debug)]
pub struct NsReport {
    pub identities: Vec<IdentityOutcome>,
}

impl NsReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityOutcome::holds)
    }

    pub fn first_failure(&self) -> Option<&IdentityOutcome> {
        self.identities.iter().find(|o| !o.holds())
    }
}

impl fmt::Display for NsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.identities {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

type Ternary<'a, E> = Box<dyn Fn(&E, &E, &E) -> E + 'a>;

/// Evaluates the NS-Lie, NS-commutative and compatibility identities on all
/// sample pairs and triples.
pub fn check_ns_poisson<M: PoissonModel>(ops: &NsOps<'_, M>, s: &[M::Elem]) -> NsReport {
    let m = ops.model;
    let pairs: Vec<(&'static str, Product<'_, M::Elem>)> = vec![
        ("a∧b = −b∧a", Box::new(|a, b| m.add(&ops.wedge(a, b), &ops.wedge(b, a)))),
        ("a∨b = b∨a", Box::new(|a, b| m.sub(&ops.vee(a, b), &ops.vee(b, a)))),
    ];
    let st = |a: &M::Elem, b: &M::Elem| ops.star(a, b);
    let ast = |a: &M::Elem, b: &M::Elem| ops.asterisk(a, b);
    let triples: Vec<(&'static str, Ternary<'_, M::Elem>)> = vec![
        (
            "(a⋆b)·c = a·(b·c) − b·(a·c)",
            Box::new(|a, b, c| {
                m.sub(&ops.dot(&st(a, b), c), &m.sub(&ops.dot(a, &ops.dot(b, c)), &ops.dot(b, &ops.dot(a, c))))
            }),
        ),
        (
            "(a⋆b)⋆c + (b⋆c)⋆a + (c⋆a)⋆b = 0",
            Box::new(|a, b, c| m.add(&m.add(&st(&st(a, b), c), &st(&st(b, c), a)), &st(&st(c, a), b))),
        ),
        ("a∘(b∘c) = (a*b)∘c", Box::new(|a, b, c| m.sub(&ops.circ(a, &ops.circ(b, c)), &ops.circ(&ast(a, b), c)))),
        ("a*(b*c) = (a*b)*c", Box::new(|a, b, c| m.sub(&ast(a, &ast(b, c)), &ast(&ast(a, b), c)))),
        (
            "(a*b)⋆c = a*(b⋆c) + b*(a⋆c)",
            Box::new(|a, b, c| m.sub(&st(&ast(a, b), c), &m.add(&ast(a, &st(b, c)), &ast(b, &st(a, c))))),
        ),
        (
            "(a*b)·c = a∘(b·c) + b∘(a·c)",
            Box::new(|a, b, c| {
                m.sub(&ops.dot(&ast(a, b), c), &m.add(&ops.circ(a, &ops.dot(b, c)), &ops.circ(b, &ops.dot(a, c))))
            }),
        ),
        (
            "(a⋆b)∘c = a∘(b·c) − b·(a∘c)",
            Box::new(|a, b, c| {
                m.sub(&ops.circ(&st(a, b), c), &m.sub(&ops.circ(a, &ops.dot(b, c)), &ops.dot(b, &ops.circ(a, c))))
            }),
        ),
    ];
    let mut identities = Vec::new();
    for (name, f) in &pairs {
        let mut o = IdentityOutcome { name, first_failure: None };
        'p: for (i, a) in s.iter().enumerate() {
            for (j, b) in s.iter().enumerate() {
                if !m.is_zero(&f(a, b)) {
                    o.first_failure = Some(vec![i, j]);
                    break 'p;
                }
            }
        }
        identities.push(o);
    }
    for (name, f) in &triples {
        let mut o = IdentityOutcome { name, first_failure: None };
        't: for (i, a) in s.iter().enumerate() {
            for (j, b) in s.iter().enumerate() {
                for (k, c) in s.iter().enumerate() {
                    if !m.is_zero(&f(a, b, c)) {
                        o.first_failure = Some(vec![i, j, k]);
                        break 't;
                    }
                }
            }
        }
        identities.push(o);
    }
    NsReport { identities }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{scalar, Weight};
    use crate::models::{derived_prepoisson, truncated_poly2, truncated_weight0, IdealProjection, PolyPoisson2};
    use crate::syntax::normalize_in;

    #[test]
    fn one_step_products() {
        let e = Engine::nijenhuis();
        let abc = crate::kernel::Alphabet::new(["x", "y"]).unwrap();
        let p = |t: &str| normalize_in(&e, &abc, t).unwrap();
        assert_eq!(ns_com_product(&e, &p("N(x)"), &p("N(y)")), p("N(N(x)*y) + N(N(y)*x) - N(N(x*y))"));
        assert_eq!(ns_bracket(&e, &p("N(x)"), &p("N(y)")), p("N([N(x),y]) + N([x,N(y)]) - N(N([x,y]))"));
        assert!(ns_apply(&e, &Element::zero()).is_zero());
    }

    #[test]
    fn nijenhuis_products_on_polynomials() {
        let pp = PolyPoisson2::new();
        let s = pp.monomials(2);
        let vm = VerifiedModel::verify(pp, IdealProjection, Policy::Nijenhuis, &s).unwrap();
        let ops = NsOps::from_nijenhuis(&vm).unwrap();
        let rep = check_ns_poisson(&ops, &s);
        assert!(rep.passed(), "{rep}");
        let m = vm.model();
        let bad = NsOps::from_products(m, |a, b| ops.dot(a, b), |a, b| ops.wedge(a, b), |a, b| m.mul(a, b), |a, b| ops.vee(a, b));
        assert!(!check_ns_poisson(&bad, &s).passed());
    }

    #[test]
    fn prepoisson_degeneration() {
        let (a, _) = truncated_poly2(3);
        let vm = VerifiedModel::verify(a, truncated_weight0(3), Policy::RotaBaxter(Weight(scalar(0))), &[]).unwrap();
        let pre = derived_prepoisson(&vm).unwrap();
        let ops = NsOps::from_prepoisson(&pre, vm.model());
        assert!(check_ns_poisson(&ops, &vm.model().basis()).passed());
    }
}
