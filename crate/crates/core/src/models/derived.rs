use std::fmt;

use num_traits::Zero;

use super::{ModelError, Operator, PoissonModel, VerifiedModel};
use crate::kernel::{Policy, Scalar};

type Product<'a, E> = Box<dyn Fn(&E, &E) -> E + 'a>;

/// Outcome of one identity over all sampled triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub first_failure: Option<Vec<usize>>,
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for IdentityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => write!(f, "{}: ok", self.name),
            Some(ix) => write!(f, "{}: fails at samples {ix:?}", self.name),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrePoissonReport {
    pub triples: usize,
    pub identities: Vec<IdentityOutcome>,
    /// The companion identity with `x∘y − y∘x` in place of `x∘y + y∘x`.
    /// Recorded for comparison only; it is not a prePoisson axiom.
    pub minus_variant: IdentityOutcome,
}

impl PrePoissonReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityOutcome::holds)
    }
}

impl fmt::Display for PrePoissonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} triples", self.triples)?;
        for o in self.identities.iter().chain(std::iter::once(&self.minus_variant)) {
            writeln!(f, "  {o}")?;
        }
        Ok(())
    }
}

/// A space with products `∘` and `*`.
pub struct PrePoisson<'a, M: PoissonModel> {
    model: &'a M,
    circ: Product<'a, M::Elem>,
    star: Product<'a, M::Elem>,
}

impl<'a, M: PoissonModel> PrePoisson<'a, M> {
    /// Arbitrary products on the carrier of `model`.
    pub fn from_products(
        model: &'a M,
        circ: impl Fn(&M::Elem, &M::Elem) -> M::Elem + 'a,
        star: impl Fn(&M::Elem, &M::Elem) -> M::Elem + 'a,
    ) -> Self {
        PrePoisson { model, circ: Box::new(circ), star: Box::new(star) }
    }

    pub fn circ(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        (self.circ)(a, b)
    }

    pub fn star(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        (self.star)(a, b)
    }

    /// Checks the precommutative, preLie and two compatibility identities on
    /// every ordered triple of samples.
    pub fn check(&self, s: &[M::Elem]) -> PrePoissonReport {
        let m = self.model;
        let c = |a: &M::Elem, b: &M::Elem| self.circ(a, b);
        let st = |a: &M::Elem, b: &M::Elem| self.star(a, b);
        let zinbiel = |x: &M::Elem, y: &M::Elem, z: &M::Elem| {
            m.sub(&c(x, &c(y, z)), &c(&m.add(&c(x, y), &c(y, x)), z))
        };
        let prelie = |x: &M::Elem, y: &M::Elem, z: &M::Elem| {
            let l = m.sub(&st(&st(x, y), z), &st(x, &st(y, z)));
            let r = m.sub(&st(&st(y, x), z), &st(y, &st(x, z)));
            m.sub(&l, &r)
        };
        let first = |x: &M::Elem, y: &M::Elem, z: &M::Elem| {
            let l = c(&m.sub(&st(x, y), &st(y, x)), z);
            m.sub(&l, &m.sub(&st(x, &c(y, z)), &c(y, &st(x, z))))
        };
        let second = |sign: bool, x: &M::Elem, y: &M::Elem, z: &M::Elem| {
            let sym = if sign { m.add(&c(x, y), &c(y, x)) } else { m.sub(&c(x, y), &c(y, x)) };
            m.sub(&st(&sym, z), &m.add(&c(x, &st(y, z)), &c(y, &st(x, z))))
        };
        let checks: [(&'static str, &dyn Fn(&M::Elem, &M::Elem, &M::Elem) -> M::Elem); 5] = [
            ("x∘(y∘z) = (x∘y+y∘x)∘z", &zinbiel),
            ("(x*y)*z − x*(y*z) = (y*x)*z − y*(x*z)", &prelie),
            ("(x*y−y*x)∘z = x*(y∘z) − y∘(x*z)", &first),
            ("(x∘y+y∘x)*z = x∘(y*z) + y∘(x*z)", &|x, y, z| second(true, x, y, z)),
            ("(x∘y−y∘x)*z = x∘(y*z) + y∘(x*z)", &|x, y, z| second(false, x, y, z)),
        ];
        let mut outcomes: Vec<IdentityOutcome> =
            checks.iter().map(|(name, _)| IdentityOutcome { name, first_failure: None }).collect();
        let mut triples = 0;
        for (i, x) in s.iter().enumerate() {
            for (j, y) in s.iter().enumerate() {
                for (k, z) in s.iter().enumerate() {
                    triples += 1;
                    for (o, (_, f)) in outcomes.iter_mut().zip(&checks) {
                        if o.first_failure.is_none() && !m.is_zero(&f(x, y, z)) {
                            o.first_failure = Some(vec![i, j, k]);
                        }
                    }
                }
            }
        }
        let minus_variant = outcomes.pop().expect("five identities");
        PrePoissonReport { triples, identities: outcomes, minus_variant }
    }
}

/// `x∘y = R(x)y`, `x*y = [R(x),y]` for a weight-0 Rota–Baxter operator.
pub fn derived_prepoisson<M: PoissonModel, O: Operator<M>>(
    vm: &VerifiedModel<M, O>,
) -> Result<PrePoisson<'_, M>, ModelError> {
    match vm.policy() {
        Policy::RotaBaxter(w) if w.0.is_zero() => {}
        p => return Err(ModelError::Precondition(format!("expected a Rota-Baxter operator of weight 0, got {p:?}"))),
    }
    let m = vm.model();
    Ok(PrePoisson::from_products(m, move |a, b| m.mul(&vm.apply(a), b), move |a, b| m.bracket(&vm.apply(a), b)))
}

/// `x∘y = R(x)y`, `x·y = λxy`, `x*y = [R(x),y]`, `x⋆y = λ[x,y]` for a
/// Rota–Baxter operator of nonzero weight `λ`.
pub struct PostPoisson<'a, M: PoissonModel, O: Operator<M>> {
    vm: &'a VerifiedModel<M, O>,
    lambda: Scalar,
}

impl<M: PoissonModel, O: Operator<M>> PostPoisson<'_, M, O> {
    pub fn weight(&self) -> &Scalar {
        &self.lambda
    }

    pub fn circ(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.vm.model().mul(&self.vm.apply(a), b)
    }

    pub fn dot(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        let m = self.vm.model();
        m.scale(&self.lambda, &m.mul(a, b))
    }

    pub fn star(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.vm.model().bracket(&self.vm.apply(a), b)
    }

    pub fn lstar(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        let m = self.vm.model();
        m.scale(&self.lambda, &m.bracket(a, b))
    }
}

pub fn derived_postpoisson<M: PoissonModel, O: Operator<M>>(
    vm: &VerifiedModel<M, O>,
) -> Result<PostPoisson<'_, M, O>, ModelError> {
    match vm.policy() {
        Policy::RotaBaxter(w) if !w.0.is_zero() => Ok(PostPoisson { vm, lambda: w.0.clone() }),
        p => Err(ModelError::Precondition(format!("expected a Rota-Baxter operator of nonzero weight, got {p:?}"))),
    }
}
