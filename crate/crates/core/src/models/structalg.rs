use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{check_poisson_axioms, ModelError, Operator, Poly, PolyPoisson2, PoissonModel, Tensor2};
use crate::kernel::{fmt_scalar, parse_scalar, Policy, Scalar, Weight};
use crate::linalg::solve;

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

type Table = Vec<Vec<Vector>>;

/// Finite-dimensional commutative associative algebra given by structure
/// constants, with an optional Poisson bracket (zero when absent).
#[derive(Clone, Debug, PartialEq)]
pub struct StructAlgebra {
    names: Vec<String>,
    product: Table,
    bracket: Option<Table>,
}

impl StructAlgebra {
    /// Validates shapes and every Poisson axiom on basis elements.
    pub fn new(names: Vec<String>, product: Table, bracket: Option<Table>) -> Result<Self, ModelError> {
        let n = names.len();
        let shape_ok = |t: &Table| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n));
        if !shape_ok(&product) {
            return Err(ModelError::Dimension(format!("product table is not {n}x{n} of length-{n} vectors")));
        }
        if let Some(b) = &bracket {
            if !shape_ok(b) {
                return Err(ModelError::Dimension(format!("bracket table is not {n}x{n} of length-{n} vectors")));
            }
        }
        let a = StructAlgebra { names, product, bracket };
        check_poisson_axioms(&a, &a.basis())?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn has_bracket(&self) -> bool {
        self.bracket.is_some()
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    /// `e_i·e_j`.
    pub fn product_of(&self, i: usize, j: usize) -> &Vector {
        &self.product[i][j]
    }

    /// The unit element, if there is one.
    pub fn unit(&self) -> Option<Vector> {
        let n = self.dim();
        // Unknown u: Σ_i u_i (e_i e_j)_k = δ_jk for all j, k.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.product[i][j][k].clone()).collect());
                rhs.push(if j == k { Scalar::one() } else { Scalar::zero() });
            }
        }
        solve(&rows, &rhs)
    }

    fn bilinear(&self, t: &Table, a: &Vector, b: &Vector) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let c = &a[i] * &b[j];
                for (k, v) in t[i][j].iter().enumerate() {
                    if !v.is_zero() {
                        out[k] += &c * v;
                    }
                }
            }
        }
        out
    }

    /// Human-readable vector.
    pub fn show(&self, v: &Vector) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*{}", fmt_scalar(c), self.names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl PoissonModel for StructAlgebra {
    type Elem = Vector;

    fn zero(&self) -> Vector {
        vec![Scalar::zero(); self.dim()]
    }

    fn add(&self, a: &Vector, b: &Vector) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn scale(&self, c: &Scalar, a: &Vector) -> Vector {
        a.iter().map(|x| x * c).collect()
    }

    fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.bilinear(&self.product, a, b)
    }

    fn bracket(&self, a: &Vector, b: &Vector) -> Vector {
        match &self.bracket {
            Some(t) => self.bilinear(t, a, b),
            None => self.zero(),
        }
    }

    fn is_zero(&self, a: &Vector) -> bool {
        a.iter().all(Zero::is_zero)
    }
}

/// A linear map stored by the images of basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    images: Vec<Vector>,
}

impl LinearMap {
    pub fn from_images(images: Vec<Vector>) -> Self {
        LinearMap { images }
    }

    pub fn zero(dim: usize) -> Self {
        LinearMap { images: vec![vec![Scalar::zero(); dim]; dim] }
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn image(&self, v: &Vector) -> Vector {
        let n = self.images.first().map_or(0, Vec::len);
        let mut out = vec![Scalar::zero(); n];
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                for (k, x) in self.images[j].iter().enumerate() {
                    out[k] += c * x;
                }
            }
        }
        out
    }
}

impl Operator<StructAlgebra> for LinearMap {
    fn apply(&self, _: &StructAlgebra, a: &Vector) -> Vector {
        self.image(a)
    }
}

// ---------------------------------------------------------------------------
// JSON

/// A coefficient written either as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn value(&self) -> Result<Scalar, ModelError> {
        match self {
            Coeff::Int(n) => Ok(Scalar::from_integer((*n).into())),
            Coeff::Text(s) => parse_scalar(s).map_err(|e| ModelError::Malformed(e.to_string())),
        }
    }

    fn of(c: &Scalar) -> Coeff {
        Coeff::Text(fmt_scalar(c))
    }
}

type Sparse = Vec<(usize, Coeff)>;

/// On-disk form: `{dim, basis_names, product, bracket?, operator?}` where
/// `product[i][j]` lists `[k, coeff]` pairs of `e_i·e_j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub product: Vec<Vec<Sparse>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<Vec<Sparse>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorSpec>,
}

/// A tensor `r = Σ c·e_i⊗e_j` as `[i, j, c]` triples, with the weight of the
/// Yang–Baxter equation it is claimed to solve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorSpec {
    pub weight: Coeff,
    pub entries: Vec<(usize, usize, Coeff)>,
}

/// Operator attached to a model file: images of basis vectors and the law.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorSpec {
    /// `"rota-baxter"` or `"nijenhuis"`.
    pub law: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Coeff>,
    pub images: Vec<Sparse>,
}

fn dense(n: usize, s: &Sparse) -> Result<Vector, ModelError> {
    let mut v = vec![Scalar::zero(); n];
    for (k, c) in s {
        if *k >= n {
            return Err(ModelError::Dimension(format!("index {k} out of range for dimension {n}")));
        }
        v[*k] += c.value()?;
    }
    Ok(v)
}

fn sparse(v: &Vector) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, Coeff::of(c))).collect()
}

fn table(n: usize, t: &[Vec<Sparse>]) -> Result<Table, ModelError> {
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(ModelError::Dimension(format!("table must be {n}x{n}")));
    }
    t.iter().map(|r| r.iter().map(|s| dense(n, s)).collect()).collect()
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Malformed(e.to_string()))
    }

    pub fn algebra(&self) -> Result<StructAlgebra, ModelError> {
        if self.basis_names.len() != self.dim {
            return Err(ModelError::Dimension("basis_names length differs from dim".into()));
        }
        let product = table(self.dim, &self.product)?;
        let bracket = self.bracket.as_ref().map(|b| table(self.dim, b)).transpose()?;
        StructAlgebra::new(self.basis_names.clone(), product, bracket)
    }

    /// The attached operator with its law.
    pub fn operator(&self) -> Result<Option<(LinearMap, Policy)>, ModelError> {
        let Some(spec) = &self.operator else {
            return Ok(None);
        };
        if spec.images.len() != self.dim {
            return Err(ModelError::Dimension("operator needs one image per basis vector".into()));
        }
        let images = spec.images.iter().map(|s| dense(self.dim, s)).collect::<Result<_, _>>()?;
        let policy = match spec.law.as_str() {
            "rota-baxter" => Policy::RotaBaxter(Weight(
                spec.weight.as_ref().map(Coeff::value).transpose()?.unwrap_or_else(Scalar::zero),
            )),
            "nijenhuis" => Policy::Nijenhuis,
            other => return Err(ModelError::Malformed(format!("unknown operator law `{other}`"))),
        };
        Ok(Some((LinearMap::from_images(images), policy)))
    }

    /// The attached tensor with its weight.
    pub fn tensor(&self) -> Result<Option<(Tensor2, Scalar)>, ModelError> {
        let Some(spec) = &self.tensor else {
            return Ok(None);
        };
        let n = self.dim;
        let mut t = vec![vec![Scalar::zero(); n]; n];
        for (i, j, c) in &spec.entries {
            if *i >= n || *j >= n {
                return Err(ModelError::Dimension(format!("tensor index ({i}, {j}) out of range for dimension {n}")));
            }
            t[*i][*j] += c.value()?;
        }
        Ok(Some((Tensor2::from_matrix(t), spec.weight.value()?)))
    }

    pub fn from_algebra(a: &StructAlgebra, op: Option<(&LinearMap, &Policy)>) -> Self {
        let n = a.dim();
        let tab = |t: &Table| t.iter().map(|r| r.iter().map(sparse).collect()).collect();
        ModelFile {
            dim: n,
            basis_names: a.names.clone(),
            product: tab(&a.product),
            bracket: a.bracket.as_ref().map(tab),
            operator: op.map(|(m, p)| OperatorSpec {
                law: match p {
                    Policy::RotaBaxter(_) => "rota-baxter".into(),
                    Policy::Nijenhuis => "nijenhuis".into(),
                },
                weight: match p {
                    Policy::RotaBaxter(w) => Some(Coeff::of(&w.0)),
                    Policy::Nijenhuis => None,
                },
                images: m.images.iter().map(sparse).collect(),
            }),
            tensor: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }
}

/// `F[x,y]` with `{x,y} = y` modulo monomials of degree above `d`, with the
/// split operator. The ideal is a Poisson ideal and is preserved by the
/// operator, so both descend.
pub fn truncated_poly2(d: u32) -> (StructAlgebra, LinearMap) {
    let pp = PolyPoisson2::new();
    let monos: Vec<(u32, u32)> = (0..=d).flat_map(|t| (0..=t).rev().map(move |a| (a, t - a))).collect();
    let n = monos.len();
    let idx = |p: &Poly| -> Vector {
        let mut v = vec![Scalar::zero(); n];
        for (&(a, b), c) in p.terms() {
            if a + b <= d {
                let k = monos.iter().position(|m| *m == (a, b)).unwrap();
                v[k] = c.clone();
            }
        }
        v
    };
    let mono = |m: &(u32, u32)| Poly::monomial(Scalar::one(), m.0, m.1);
    let product = monos
        .iter()
        .map(|m| monos.iter().map(|k| idx(&mono(m).mul(&mono(k)))).collect())
        .collect();
    let bracket = monos
        .iter()
        .map(|m| monos.iter().map(|k| idx(&pp.bracket_closed(&mono(m), &mono(k)))).collect())
        .collect();
    let names = monos
        .iter()
        .map(|&(a, b)| match (a, b) {
            (0, 0) => "1".to_string(),
            _ => {
                let mut parts = Vec::new();
                parts.extend(std::iter::repeat("x").take(a as usize));
                parts.extend(std::iter::repeat("y").take(b as usize));
                parts.join("*")
            }
        })
        .collect();
    let alg = StructAlgebra::new(names, product, Some(bracket)).expect("truncation of a Poisson algebra");
    let images = monos
        .iter()
        .enumerate()
        .map(|(k, &(_, b))| {
            let mut v = vec![Scalar::zero(); n];
            if b > 0 {
                v[k] = -Scalar::one();
            }
            v
        })
        .collect();
    (alg, LinearMap::from_images(images))
}

/// On the truncation of degree `d ≥ 2`: `R(a) = (a_1 + a_x)·y^d`. Its image
/// squares to zero and `R` kills every monomial of degree at least two, so
/// it is a Rota–Baxter operator of weight 0.
pub fn truncated_weight0(d: u32) -> LinearMap {
    assert!(d >= 2, "needs degree at least 2");
    let n = ((d + 1) * (d + 2) / 2) as usize;
    // monomials of degree t start at t(t+1)/2, ordered by descending x-power
    let top = n - 1;
    let images = (0..n)
        .map(|k| {
            let mut v = vec![Scalar::zero(); n];
            if k <= 1 {
                v[top] = Scalar::one();
            }
            v
        })
        .collect();
    LinearMap::from_images(images)
}
