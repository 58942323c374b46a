//! Concrete Poisson algebras with operators: evaluation targets for the
//! free construction and executable forms of the classical constructions of
//! operators (Yang–Baxter tensors, derived pre- and postPoisson products).

mod derived;
mod poly;
mod structalg;
mod tensor;

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::kernel::{Atom, Element, Generator, LieWord, MLetter, Policy, Scalar, Word};

pub use derived::{derived_postpoisson, derived_prepoisson, IdentityOutcome, PostPoisson, PrePoisson, PrePoissonReport};
pub use poly::{IdealProjection, Poly, PolyPoisson2, SplitOperator};
pub use structalg::{
    truncated_poly2, truncated_weight0, Coeff, LinearMap, ModelFile, OperatorSpec, StructAlgebra, TensorSpec, Vector,
};
pub use tensor::{check_aybe, check_prop2, contraction_holds, principal_operator, Prop2Report, Tensor2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("axiom `{axiom}` fails at basis indices {indices:?}")]
    Axiom { axiom: &'static str, indices: Vec<usize> },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("the algebra has no unit")]
    NoUnit,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A Poisson algebra given by exact operations on canonical elements.
pub trait PoissonModel {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&-Scalar::one(), b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// A linear operator on a model.
pub trait Operator<M: PoissonModel + ?Sized> {
    fn apply(&self, model: &M, a: &M::Elem) -> M::Elem;
}

impl<M: PoissonModel + ?Sized, F: Fn(&M::Elem) -> M::Elem> Operator<M> for F {
    fn apply(&self, _: &M, a: &M::Elem) -> M::Elem {
        self(a)
    }
}

/// The zero operator.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroOperator;

impl<M: PoissonModel + ?Sized> Operator<M> for ZeroOperator {
    fn apply(&self, m: &M, _: &M::Elem) -> M::Elem {
        m.zero()
    }
}

/// The identity operator.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityOperator;

impl<M: PoissonModel + ?Sized> Operator<M> for IdentityOperator {
    fn apply(&self, _: &M, a: &M::Elem) -> M::Elem {
        a.clone()
    }
}

/// The free algebra of an engine, viewed as a model.
impl PoissonModel for crate::poisrb::Engine {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::zero()
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }

    fn scale(&self, c: &Scalar, a: &Element) -> Element {
        a * c
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        crate::poisrb::Engine::mul(self, a, b)
    }

    fn bracket(&self, a: &Element, b: &Element) -> Element {
        crate::poisrb::Engine::bracket(self, a, b)
    }

    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
}

/// The operator of the free algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeOperator;

impl Operator<crate::poisrb::Engine> for FreeOperator {
    fn apply(&self, e: &crate::poisrb::Engine, a: &Element) -> Element {
        e.apply(a)
    }
}

/// One failing sample pair with the nonzero residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub i: usize,
    pub j: usize,
    pub residual: String,
}

/// Per-identity outcome of an operator check.
#[derive(Clone, Debug)]
pub struct OperatorReport {
    pub policy: Policy,
    pub pairs: usize,
    pub commutative: Vec<Failure>,
    pub lie: Vec<Failure>,
}

impl OperatorReport {
    pub fn passed(&self) -> bool {
        self.commutative.is_empty() && self.lie.is_empty()
    }
}

impl fmt::Display for OperatorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let law = match &self.policy {
            Policy::RotaBaxter(w) => format!("Rota-Baxter of weight {w}"),
            Policy::Nijenhuis => "Nijenhuis".to_string(),
        };
        write!(
            f,
            "{law} on {} pairs: product {}, bracket {}",
            self.pairs,
            verdict(&self.commutative),
            verdict(&self.lie)
        )
    }
}

fn verdict(fs: &[Failure]) -> String {
    match fs.first() {
        None => "ok".into(),
        Some(x) => format!("{} failures, first at ({}, {}): {}", fs.len(), x.i, x.j, x.residual),
    }
}

/// `op(a)∘op(b) − op(op(a)∘b + a∘op(b) + corr(a∘b))` for one product `∘`.
fn operator_defect<M: PoissonModel + ?Sized, O: Operator<M> + ?Sized>(
    m: &M,
    op: &O,
    policy: &Policy,
    prod: &dyn Fn(&M::Elem, &M::Elem) -> M::Elem,
    a: &M::Elem,
    b: &M::Elem,
) -> M::Elem {
    let (ra, rb) = (op.apply(m, a), op.apply(m, b));
    let lhs = prod(&ra, &rb);
    let mut inner = m.add(&prod(&ra, b), &prod(a, &rb));
    let ab = prod(a, b);
    inner = match policy {
        Policy::RotaBaxter(w) => m.add(&inner, &m.scale(&w.0, &ab)),
        Policy::Nijenhuis => m.sub(&inner, &op.apply(m, &ab)),
    };
    m.sub(&lhs, &op.apply(m, &inner))
}

/// Checks the operator identity for both products on all sample pairs.
pub fn check_operator<M: PoissonModel + ?Sized, O: Operator<M> + ?Sized>(
    m: &M,
    op: &O,
    policy: &Policy,
    samples: &[M::Elem],
) -> OperatorReport {
    let mut rep = OperatorReport { policy: policy.clone(), pairs: 0, commutative: Vec::new(), lie: Vec::new() };
    let mul = |a: &M::Elem, b: &M::Elem| m.mul(a, b);
    let br = |a: &M::Elem, b: &M::Elem| m.bracket(a, b);
    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            rep.pairs += 1;
            let d = operator_defect(m, op, policy, &mul, a, b);
            if !m.is_zero(&d) {
                rep.commutative.push(Failure { i, j, residual: format!("{d:?}") });
            }
            let d = operator_defect(m, op, policy, &br, a, b);
            if !m.is_zero(&d) {
                rep.lie.push(Failure { i, j, residual: format!("{d:?}") });
            }
        }
    }
    rep
}

/// Rota–Baxter check of weight `weight`.
pub fn check_rb_operator<M: PoissonModel + ?Sized, O: Operator<M> + ?Sized>(
    m: &M,
    op: &O,
    weight: &Scalar,
    samples: &[M::Elem],
) -> OperatorReport {
    check_operator(m, op, &Policy::RotaBaxter(crate::kernel::Weight(weight.clone())), samples)
}

/// Checks the Poisson axioms of a model on samples; returns the name of the
/// first failing axiom with sample indices.
pub fn check_poisson_axioms<M: PoissonModel + ?Sized>(m: &M, s: &[M::Elem]) -> Result<(), ModelError> {
    let fail = |axiom, indices: Vec<usize>| Err(ModelError::Axiom { axiom, indices });
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate() {
            if m.mul(a, b) != m.mul(b, a) {
                return fail("commutativity", vec![i, j]);
            }
            if !m.is_zero(&m.add(&m.bracket(a, b), &m.bracket(b, a))) {
                return fail("anticommutativity", vec![i, j]);
            }
            for (k, c) in s.iter().enumerate() {
                if m.mul(&m.mul(a, b), c) != m.mul(a, &m.mul(b, c)) {
                    return fail("associativity", vec![i, j, k]);
                }
                let jac = m.add(
                    &m.add(&m.bracket(&m.bracket(a, b), c), &m.bracket(&m.bracket(b, c), a)),
                    &m.bracket(&m.bracket(c, a), b),
                );
                if !m.is_zero(&jac) {
                    return fail("Jacobi", vec![i, j, k]);
                }
                let leib = m.sub(
                    &m.bracket(a, &m.mul(b, c)),
                    &m.add(&m.mul(&m.bracket(a, b), c), &m.mul(b, &m.bracket(a, c))),
                );
                if !m.is_zero(&leib) {
                    return fail("Leibniz", vec![i, j, k]);
                }
            }
        }
    }
    Ok(())
}

/// A model together with an operator that passed [`check_operator`] for the
/// recorded law. Only such pairs are accepted by [`eval_hom`].
pub struct VerifiedModel<M: PoissonModel, O: Operator<M>> {
    model: M,
    op: O,
    policy: Policy,
    report: OperatorReport,
}

impl<M: PoissonModel, O: Operator<M>> VerifiedModel<M, O> {
    pub fn verify(model: M, op: O, policy: Policy, samples: &[M::Elem]) -> Result<Self, OperatorReport> {
        let report = check_operator(&model, &op, &policy, samples);
        if !report.passed() {
            return Err(report);
        }
        Ok(VerifiedModel { model, op, policy, report })
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    pub fn report(&self) -> &OperatorReport {
        &self.report
    }

    pub fn apply(&self, a: &M::Elem) -> M::Elem {
        self.op.apply(&self.model, a)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalHomError {
    #[error("operator verified as {verified:?} but the element lives in a free algebra for {requested:?}")]
    PolicyMismatch { verified: Policy, requested: Policy },
    #[error("no image assigned to generator `{0}`")]
    Unassigned(String),
}

/// The homomorphism from the free algebra (for `policy`) into a verified
/// model determined by `assign` on generators.
pub fn eval_hom<M: PoissonModel, O: Operator<M>>(
    vm: &VerifiedModel<M, O>,
    policy: &Policy,
    assign: &dyn Fn(&Generator) -> Option<M::Elem>,
    c: &Element,
) -> Result<M::Elem, EvalHomError> {
    if policy != vm.policy() {
        return Err(EvalHomError::PolicyMismatch { verified: vm.policy.clone(), requested: policy.clone() });
    }
    let ev = Evaluator { vm, assign };
    let m = vm.model();
    let mut out = m.zero();
    for (w, s) in c.sorted_terms() {
        out = m.add(&out, &m.scale(s, &ev.word(w)?));
    }
    Ok(out)
}

struct Evaluator<'a, M: PoissonModel, O: Operator<M>> {
    vm: &'a VerifiedModel<M, O>,
    assign: &'a dyn Fn(&Generator) -> Option<M::Elem>,
}

impl<M: PoissonModel, O: Operator<M>> Evaluator<'_, M, O> {
    fn word(&self, w: &Word) -> Result<M::Elem, EvalHomError> {
        let m = self.vm.model();
        let mut acc: Option<M::Elem> = None;
        for a in w.factors() {
            let v = self.atom(a)?;
            acc = Some(match acc {
                None => v,
                Some(x) => m.mul(&x, &v),
            });
        }
        Ok(acc.expect("basis words are nonempty"))
    }

    fn atom(&self, a: &Atom) -> Result<M::Elem, EvalHomError> {
        match a {
            Atom::Gen(g) => self.gen(g),
            Atom::R(r) => Ok(self.vm.apply(&self.word(r.arg())?)),
            Atom::Lie(l) => self.lie(l),
        }
    }

    fn gen(&self, g: &Generator) -> Result<M::Elem, EvalHomError> {
        (self.assign)(g).ok_or_else(|| EvalHomError::Unassigned(g.symbol().to_string()))
    }

    fn lie(&self, l: &LieWord) -> Result<M::Elem, EvalHomError> {
        match l.factorization() {
            Some((u, v)) => Ok(self.vm.model().bracket(&self.lie(&u)?, &self.lie(&v)?)),
            None => self.mletter(&l.letters()[0]),
        }
    }

    /// `[b1,[b2,…[bk,x]]]`.
    fn mletter(&self, m: &MLetter) -> Result<M::Elem, EvalHomError> {
        let mut acc = self.gen(m.base())?;
        for b in m.ops().iter().rev() {
            let rb = self.vm.apply(&self.word(b.arg())?);
            acc = self.vm.model().bracket(&rb, &acc);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{ratio, scalar, Weight};

    #[test]
    fn split_operator_is_weight_one() {
        let pp = PolyPoisson2::new();
        let s = pp.monomials(3);
        assert!(check_rb_operator(&pp, &SplitOperator, &scalar(1), &s).passed());
        assert!(!check_rb_operator(&pp, &IdentityOperator, &scalar(0), &s).passed());
        assert!(check_operator(&pp, &IdealProjection, &Policy::Nijenhuis, &s).passed());
    }

    #[test]
    fn leibniz_bracket_matches_closed_form() {
        let pp = PolyPoisson2::new();
        let s = pp.monomials(3);
        for f in &s {
            for g in &s {
                assert_eq!(pp.bracket_leibniz(f, g), pp.bracket_closed(f, g));
            }
        }
        check_poisson_axioms(&pp, &s).unwrap();
    }

    #[test]
    fn truncation_carries_both_operators() {
        let (a, p) = truncated_poly2(2);
        assert_eq!(a.dim(), 6);
        check_poisson_axioms(&a, &a.basis()).unwrap();
        assert!(check_rb_operator(&a, &p, &scalar(1), &a.basis()).passed());
        let r0 = truncated_weight0(2);
        assert!(check_rb_operator(&a, &r0, &scalar(0), &a.basis()).passed());
        assert!(!check_rb_operator(&a, &r0, &scalar(1), &a.basis()).passed());
    }

    #[test]
    fn prepoisson_identities() {
        let (a, _) = truncated_poly2(3);
        let vm = VerifiedModel::verify(a, truncated_weight0(3), Policy::RotaBaxter(Weight(scalar(0))), &[]).unwrap();
        let s = vm.model().basis();
        let pre = derived_prepoisson(&vm).unwrap();
        assert!(pre.check(&s).passed());
        let m = vm.model();
        let bad = PrePoisson::from_products(m, |x, y| m.mul(x, y), |x, y| m.bracket(&vm.apply(x), y));
        assert!(!bad.check(&s).passed());
        assert!(derived_postpoisson(&vm).is_err());
    }

    #[test]
    fn aybe_unit_tensor() {
        let (a, _) = truncated_poly2(2);
        let one = a.unit().unwrap();
        for l in [scalar(0), scalar(1), ratio(-3, 2)] {
            let r = Tensor2::simple(&l, &one, &one);
            let rep = check_prop2(&a, &r, &l).unwrap();
            assert!(rep.passed(), "{}", rep.operator);
        }
        let r = Tensor2::simple(&scalar(1), &one, &one);
        assert!(matches!(check_prop2(&a, &r, &scalar(2)), Err(ModelError::Precondition(_))));
    }

    #[test]
    fn free_prepoisson_and_minus_variant() {
        let e = crate::poisrb::Engine::rota_baxter(scalar(0));
        let abc = crate::kernel::Alphabet::new(["x", "y"]).unwrap();
        let s: Vec<Element> = ["x", "y", "R(x)", "x*y", "R(y)*x"]
            .iter()
            .map(|t| crate::syntax::normalize_in(&e, &abc, t).unwrap())
            .collect();
        let vm = VerifiedModel::verify(e, FreeOperator, Policy::RotaBaxter(Weight(scalar(0))), &s).unwrap();
        let rep = derived_prepoisson(&vm).unwrap().check(&s);
        assert!(rep.passed(), "{rep}");
        assert!(!rep.minus_variant.holds());
    }
}
