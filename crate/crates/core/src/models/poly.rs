use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::{Operator, PoissonModel};
use crate::kernel::{fmt_scalar, Scalar};

/// Polynomial in `x`, `y` with exact coefficients; keys are exponent pairs.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<(u32, u32), Scalar>);

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(c: Scalar, a: u32, b: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn x() -> Self {
        Poly::monomial(Scalar::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly::monomial(Scalar::one(), 0, 1)
    }

    pub fn one() -> Self {
        Poly::monomial(Scalar::one(), 0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.0.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Scalar {
        self.0.get(&(a, b)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().map(|(a, b)| a + b).max()
    }

    fn add_term(&mut self, a: u32, b: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry((a, b)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&(a, b));
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (&(a, b), c) in &o.0 {
            p.add_term(a, b, c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (&(a, b), c) in &self.0 {
            for (&(d, e), f) in &o.0 {
                p.add_term(a + d, b + e, c * f);
            }
        }
        p
    }

    pub fn dx(&self) -> Poly {
        let mut p = Poly::zero();
        for (&(a, b), c) in &self.0 {
            if a > 0 {
                p.add_term(a - 1, b, c * Scalar::from_integer(a.into()));
            }
        }
        p
    }

    pub fn dy(&self) -> Poly {
        let mut p = Poly::zero();
        for (&(a, b), c) in &self.0 {
            if b > 0 {
                p.add_term(a, b - 1, c * Scalar::from_integer(b.into()));
            }
        }
        p
    }

    /// Drops every monomial of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Poly {
        Poly(self.0.iter().filter(|((a, b), _)| a + b <= d).map(|(k, v)| (*k, v.clone())).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(a, b), c) in self.0.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", fmt_scalar(c))?;
            if a > 0 {
                write!(f, "*x^{a}")?;
            }
            if b > 0 {
                write!(f, "*y^{b}")?;
            }
        }
        Ok(())
    }
}

/// `F[x,y]` with the Poisson bracket determined by `{x,y} = y`.
#[derive(Default)]
pub struct PolyPoisson2 {
    leibniz_memo: RefCell<HashMap<((u32, u32), (u32, u32)), Poly>>,
}

impl PolyPoisson2 {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{f,g} = (f_x·g_y − f_y·g_x)·y`.
    pub fn bracket_closed(&self, f: &Poly, g: &Poly) -> Poly {
        let a = f.dx().mul(&g.dy());
        let b = f.dy().mul(&g.dx());
        a.add(&b.scale(&-Scalar::one())).mul(&Poly::y())
    }

    /// The same bracket, obtained from `{x,y} = y` by the Leibniz rule alone.
    pub fn bracket_leibniz(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&m, c) in f.terms() {
            for (&n, d) in g.terms() {
                out = out.add(&self.mono_bracket(m, n).scale(&(c * d)));
            }
        }
        out
    }

    fn mono_bracket(&self, m: (u32, u32), n: (u32, u32)) -> Poly {
        if let Some(p) = self.leibniz_memo.borrow().get(&(m, n)) {
            return p.clone();
        }
        let one = Scalar::one();
        let mono = |e: (u32, u32)| Poly::monomial(one.clone(), e.0, e.1);
        let out = if m == (0, 0) || n == (0, 0) {
            Poly::zero()
        } else if m.0 + m.1 > 1 {
            // {u·v, n} = u{v,n} + v{u,n}, peeling one variable off m.
            let (u, v) = if m.0 > 0 { ((1, 0), (m.0 - 1, m.1)) } else { ((0, 1), (m.0, m.1 - 1)) };
            mono(u).mul(&self.mono_bracket(v, n)).add(&mono(v).mul(&self.mono_bracket(u, n)))
        } else if n.0 + n.1 > 1 {
            let (u, v) = if n.0 > 0 { ((1, 0), (n.0 - 1, n.1)) } else { ((0, 1), (n.0, n.1 - 1)) };
            self.mono_bracket(m, u).mul(&mono(v)).add(&self.mono_bracket(m, v).mul(&mono(u)))
        } else {
            match (m, n) {
                ((1, 0), (0, 1)) => Poly::y(),
                ((0, 1), (1, 0)) => Poly::y().scale(&-one.clone()),
                _ => Poly::zero(),
            }
        };
        self.leibniz_memo.borrow_mut().insert((m, n), out.clone());
        out
    }

    /// All monomials `x^a y^b` with `a + b ≤ d`.
    pub fn monomials(&self, d: u32) -> Vec<Poly> {
        let mut out = Vec::new();
        for t in 0..=d {
            for a in 0..=t {
                out.push(Poly::monomial(Scalar::one(), a, t - a));
            }
        }
        out
    }
}

impl PoissonModel for PolyPoisson2 {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    fn scale(&self, c: &Scalar, a: &Poly) -> Poly {
        a.scale(c)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }

    fn bracket(&self, a: &Poly, b: &Poly) -> Poly {
        self.bracket_closed(a, b)
    }
}

/// `P(f(x)) = 0`, `P(y·g) = −y·g`: minus the projection onto `yF[x,y]`
/// along `F[x]`. A Rota–Baxter operator of weight 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct SplitOperator;

impl Operator<PolyPoisson2> for SplitOperator {
    fn apply(&self, _: &PolyPoisson2, f: &Poly) -> Poly {
        Poly(f.0.iter().filter(|((_, b), _)| *b > 0).map(|(k, v)| (*k, -v.clone())).collect())
    }
}

/// The projection onto `yF[x,y]` along `F[x]`; both summands are
/// subalgebras for both products and the second is an ideal, which makes
/// the projection a Nijenhuis operator.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdealProjection;

impl Operator<PolyPoisson2> for IdealProjection {
    fn apply(&self, _: &PolyPoisson2, f: &Poly) -> Poly {
        Poly(f.0.iter().filter(|((_, b), _)| *b > 0).map(|(k, v)| (*k, v.clone())).collect())
    }
}
