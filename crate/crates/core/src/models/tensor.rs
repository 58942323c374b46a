use num_traits::{One, Zero};

use super::{check_rb_operator, LinearMap, ModelError, OperatorReport, PoissonModel, StructAlgebra, Vector};
use crate::kernel::Scalar;

/// `r = Σ t_ij e_i ⊗ e_j` over a [`StructAlgebra`].
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2 {
    t: Vec<Vec<Scalar>>,
}

impl Tensor2 {
    pub fn zero(dim: usize) -> Self {
        Tensor2 { t: vec![vec![Scalar::zero(); dim]; dim] }
    }

    pub fn from_matrix(t: Vec<Vec<Scalar>>) -> Self {
        Tensor2 { t }
    }

    /// `c·(u ⊗ v)`.
    pub fn simple(c: &Scalar, u: &Vector, v: &Vector) -> Self {
        Tensor2 { t: u.iter().map(|a| v.iter().map(|b| c * a * b).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.t[i][j]
    }

    fn support(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.t.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    /// Relabels the basis by `perm` (new index of old `i` is `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        let mut t = vec![vec![Scalar::zero(); n]; n];
        for (i, j, c) in self.support() {
            t[perm[i]][perm[j]] = c;
        }
        Tensor2 { t }
    }
}

fn check_dim(a: &StructAlgebra, r: &Tensor2) -> Result<(), ModelError> {
    if r.dim() != a.dim() || r.t.iter().any(|row| row.len() != a.dim()) {
        return Err(ModelError::Dimension(format!("tensor of size {} over an algebra of dimension {}", r.dim(), a.dim())));
    }
    Ok(())
}

type Cube = Vec<Vec<Vec<Scalar>>>;

fn add_into(cube: &mut Cube, c: &Scalar, u: &Vector, v: &Vector, w: &Vector) {
    for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            for (k, d) in w.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
                cube[i][j][k] += c * a * b * d;
            }
        }
    }
}

/// Evaluates `r13·r12 − r12·r23 + r23·r13 − λ·r13` in `A⊗A⊗A` and reports
/// whether it vanishes. The unit is only needed when `λ ≠ 0`.
pub fn check_aybe(a: &StructAlgebra, r: &Tensor2, lambda: &Scalar) -> Result<bool, ModelError> {
    check_dim(a, r)?;
    let n = a.dim();
    let mut cube: Cube = vec![vec![vec![Scalar::zero(); n]; n]; n];
    let e = |i: usize| a.basis_vector(i);
    let sup = r.support();
    let minus = -Scalar::one();
    for (p, q, t1) in &sup {
        for (s, u, t2) in &sup {
            let c = t1 * t2;
            // r13 r12 = Σ a_i a_j ⊗ b_j ⊗ b_i
            add_into(&mut cube, &c, a.product_of(*p, *s), &e(*u), &e(*q));
            // r12 r23 = Σ a_i ⊗ b_i a_j ⊗ b_j
            add_into(&mut cube, &(&c * &minus), &e(*p), a.product_of(*q, *s), &e(*u));
            // r23 r13 = Σ a_j ⊗ a_i ⊗ b_i b_j
            add_into(&mut cube, &c, &e(*s), &e(*p), a.product_of(*q, *u));
        }
    }
    if !lambda.is_zero() {
        let one = a.unit().ok_or(ModelError::NoUnit)?;
        for (p, q, t) in &sup {
            add_into(&mut cube, &(-(lambda * t)), &e(*p), &one, &e(*q));
        }
    }
    Ok(cube.iter().flatten().flatten().all(Zero::is_zero))
}

/// `P(x) = Σ a_i·x·b_i`.
pub fn principal_operator(a: &StructAlgebra, r: &Tensor2) -> Result<LinearMap, ModelError> {
    check_dim(a, r)?;
    let sup = r.support();
    let images = (0..a.dim())
        .map(|k| {
            let mut out = a.zero();
            for (p, q, t) in &sup {
                let v = a.mul(&a.mul(&a.basis_vector(*p), &a.basis_vector(k)), &a.basis_vector(*q));
                out = a.add(&out, &a.scale(t, &v));
            }
            out
        })
        .collect();
    Ok(LinearMap::from_images(images))
}

/// `Σ a_i a_j b_i b_j = λ Σ a_k b_k`.
pub fn contraction_holds(a: &StructAlgebra, r: &Tensor2, lambda: &Scalar) -> Result<bool, ModelError> {
    check_dim(a, r)?;
    let sup = r.support();
    let mut lhs = a.zero();
    let mut rhs = a.zero();
    for (p, q, t1) in &sup {
        rhs = a.add(&rhs, &a.scale(&(lambda * t1), a.product_of(*p, *q)));
        for (s, u, t2) in &sup {
            let v = a.mul(&a.mul(a.product_of(*p, *s), &a.basis_vector(*q)), &a.basis_vector(*u));
            lhs = a.add(&lhs, &a.scale(&(t1 * t2), &v));
        }
    }
    Ok(lhs == rhs)
}

/// Outcome of the weighted-AYBE-to-operator construction. The tensor solves
/// the equation of weight `aybe_weight`; the induced operator is checked as
/// a Rota–Baxter operator of weight `operator_weight = −aybe_weight`.
#[derive(Clone, Debug)]
pub struct Prop2Report {
    pub aybe_weight: Scalar,
    pub operator_weight: Scalar,
    pub operator: OperatorReport,
    pub contraction: bool,
}

impl Prop2Report {
    pub fn passed(&self) -> bool {
        self.operator.passed() && self.contraction
    }
}

pub fn check_prop2(a: &StructAlgebra, r: &Tensor2, lambda: &Scalar) -> Result<Prop2Report, ModelError> {
    if !check_aybe(a, r, lambda)? {
        return Err(ModelError::Precondition(format!(
            "the tensor does not solve the associative Yang-Baxter equation of weight {}",
            crate::kernel::fmt_scalar(lambda)
        )));
    }
    let p = principal_operator(a, r)?;
    let w = -lambda.clone();
    let operator = check_rb_operator(a, &p, &w, &a.basis());
    Ok(Prop2Report {
        aybe_weight: lambda.clone(),
        operator_weight: w,
        operator,
        contraction: contraction_holds(a, r, lambda)?,
    })
}
