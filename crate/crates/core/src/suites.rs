//! Seeded identity suites over the free algebras and the models.
//!
//! Every case draws its inputs from its own generator seeded by
//! `(seed, case id)`, so cases can run in any order and reports are
//! byte-identical across runs. On failure the sampled inputs are split into
//! their basis words and the smallest failing tuple is reported.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::kernel::{scalar, Alphabet, Element, Generator, Policy, Scalar, Word};
use crate::models::{
    check_operator, check_rb_operator, eval_hom, IdealProjection, ModelFile, Poly, PolyPoisson2, PoissonModel,
    SplitOperator, VerifiedModel,
};
use crate::poisrb::{BoundsError, Engine};
use crate::rbcom::{enumerate_words, RbCom, StackComb, StackWord};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    RbCom,
    PoisRb,
    NsPois,
    Models,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rbcom" => Ok(Suite::RbCom),
            "poisrb" => Ok(Suite::PoisRb),
            "nspois" => Ok(Suite::NsPois),
            "models" => Ok(Suite::Models),
            _ => Err(format!("unknown suite `{s}` (expected rbcom, poisrb, nspois or models)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::RbCom => "rbcom",
            Suite::PoisRb => "poisrb",
            Suite::NsPois => "nspois",
            Suite::Models => "models",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub xdeg: u32,
    pub rdeg: u32,
    /// Number of random cases; each case checks every law once.
    pub cases: usize,
    pub gens: usize,
    /// Terms per random element.
    pub max_terms: usize,
    pub policy: Policy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, xdeg: 3, rdeg: 2, cases: 200, gens: 2, max_terms: 2, policy: Policy::rota_baxter(1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: u64,
    pub identity: String,
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub policy: String,
    pub seed: u64,
    /// Instances checked per identity.
    pub checked: BTreeMap<String, u64>,
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    fn new(suite: Suite, policy: &Policy, seed: u64) -> Self {
        SuiteReport {
            schema: REPORT_SCHEMA,
            suite: suite.to_string(),
            policy: policy_name(policy),
            seed,
            checked: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn count(&mut self, name: &str, n: u64) {
        *self.checked.entry(name.to_string()).or_default() += n;
    }

    fn finish(mut self) -> Self {
        self.failures.sort_by(|a, b| (a.case, &a.identity).cmp(&(b.case, &b.identity)));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} ({}), seed {}", self.suite, self.policy, self.seed)?;
        for (name, n) in &self.checked {
            let bad = self.failures.iter().filter(|c| &c.identity == name).count();
            writeln!(f, "  {name}: {n} checked, {bad} failed")?;
        }
        for c in &self.failures {
            writeln!(f, "  case {} {}: inputs {:?}, residual {}", c.case, c.identity, c.inputs, c.residual)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn policy_name(p: &Policy) -> String {
    match p {
        Policy::RotaBaxter(w) => format!("rota-baxter weight {w}"),
        Policy::Nijenhuis => "nijenhuis".into(),
    }
}

fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ case)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Scalar {
    let n = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
    if rng.gen_bool(0.2) {
        crate::kernel::ratio(n, 2)
    } else {
        scalar(n)
    }
}

/// A random combination of `1..=max_terms` distinct words.
fn random_comb<T: Clone>(rng: &mut ChaCha8Rng, words: &[T], max_terms: usize) -> Vec<(T, Scalar)> {
    let k = rng.gen_range(1..=max_terms.max(1));
    words.choose_multiple(rng, k).map(|w| (w.clone(), random_coeff(rng))).collect()
}

fn alphabet(n: usize) -> Alphabet {
    if n <= 3 {
        Alphabet::new(["x", "y", "z"].into_iter().take(n)).expect("distinct symbols")
    } else {
        Alphabet::indexed(n)
    }
}

// ---------------------------------------------------------------------------
// Free Poisson algebras with an operator

type Law = fn(&Engine, &[Element]) -> Element;

fn correction(e: &Engine, p: &Element) -> Element {
    match e.policy() {
        Policy::RotaBaxter(w) => p * &w.0,
        Policy::Nijenhuis => -e.apply(p),
    }
}

fn law_anticommutativity(e: &Engine, v: &[Element]) -> Element {
    e.bracket(&v[0], &v[1]) + e.bracket(&v[1], &v[0])
}

fn law_commutativity(e: &Engine, v: &[Element]) -> Element {
    e.mul(&v[0], &v[1]) - e.mul(&v[1], &v[0])
}

fn law_associativity(e: &Engine, v: &[Element]) -> Element {
    e.mul(&e.mul(&v[0], &v[1]), &v[2]) - e.mul(&v[0], &e.mul(&v[1], &v[2]))
}

fn law_jacobi(e: &Engine, v: &[Element]) -> Element {
    let (a, b, c) = (&v[0], &v[1], &v[2]);
    e.bracket(&e.bracket(a, b), c) + e.bracket(&e.bracket(b, c), a) + e.bracket(&e.bracket(c, a), b)
}

fn law_leibniz(e: &Engine, v: &[Element]) -> Element {
    let (a, b, c) = (&v[0], &v[1], &v[2]);
    e.bracket(a, &e.mul(b, c)) - e.mul(&e.bracket(a, b), c) - e.mul(b, &e.bracket(a, c))
}

fn operator_law(e: &Engine, v: &[Element], prod: &dyn Fn(&Element, &Element) -> Element) -> Element {
    let (ra, rb) = (e.apply(&v[0]), e.apply(&v[1]));
    let inner = prod(&ra, &v[1]) + prod(&v[0], &rb) + correction(e, &prod(&v[0], &v[1]));
    prod(&ra, &rb) - e.apply(&inner)
}

fn law_operator_product(e: &Engine, v: &[Element]) -> Element {
    operator_law(e, v, &|a, b| e.mul(a, b))
}

fn law_operator_bracket(e: &Engine, v: &[Element]) -> Element {
    operator_law(e, v, &|a, b| e.bracket(a, b))
}

fn law_coherence(e: &Engine, v: &[Element]) -> Element {
    let (a, rb, rc) = (&v[0], e.apply(&v[1]), e.apply(&v[2]));
    e.bracket(a, &e.mul(&rb, &rc)) - e.mul(&e.bracket(a, &rb), &rc) - e.mul(&e.bracket(a, &rc), &rb)
}

const LAWS: &[(&str, usize, Law)] = &[
    ("anticommutativity", 2, law_anticommutativity),
    ("commutativity", 2, law_commutativity),
    ("associativity", 3, law_associativity),
    ("jacobi", 3, law_jacobi),
    ("leibniz", 3, law_leibniz),
    ("operator-product", 2, law_operator_product),
    ("operator-bracket", 2, law_operator_bracket),
    ("operator-coherence", 3, law_coherence),
];

/// Smallest tuple of basis words (by total X-degree, then R-degree) on
/// which a multilinear law fails.
fn minimize(e: &Engine, law: Law, inputs: &[Element]) -> Option<(Vec<Element>, Element)> {
    let parts: Vec<Vec<Word>> = inputs.iter().map(|c| c.iter().map(|(w, _)| w.clone()).collect()).collect();
    let mut tuples: Vec<Vec<Word>> = vec![Vec::new()];
    for p in &parts {
        tuples = tuples.into_iter().flat_map(|t| p.iter().map(move |w| [t.clone(), vec![w.clone()]].concat())).collect();
    }
    let size = |t: &Vec<Word>| {
        t.iter().fold((0, 0), |(x, r), w| (x + w.degrees().x, r + w.degrees().r))
    };
    tuples.sort_by(|a, b| size(a).cmp(&size(b)).then_with(|| a.cmp(b)));
    tuples.into_iter().find_map(|t| {
        let v: Vec<Element> = t.into_iter().map(Element::from).collect();
        let r = law(e, &v);
        (!r.is_zero()).then_some((v, r))
    })
}

fn poisson_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport, BoundsError> {
    let abc = alphabet(cfg.gens);
    let e = Engine::new(cfg.policy.clone());
    let words = e.enumerate_basis(&abc, cfg.xdeg, cfg.rdeg, false)?;
    let sym = e.symbol();
    let mut report = SuiteReport::new(suite, &cfg.policy, cfg.seed);
    if words.is_empty() {
        return Ok(report.finish());
    }
    let results: Vec<Vec<Counterexample>> = (0..cfg.cases as u64)
        .into_par_iter()
        .map_init(
            || Engine::new(cfg.policy.clone()),
            |e, case| {
                let mut rng = case_rng(cfg.seed, case);
                let v: Vec<Element> = (0..3)
                    .map(|_| Element::collect(random_comb(&mut rng, &words, cfg.max_terms)))
                    .collect();
                let mut out = Vec::new();
                for (name, arity, law) in LAWS {
                    let r = law(e, &v[..*arity]);
                    if r.is_zero() {
                        continue;
                    }
                    let (inputs, residual) = minimize(e, *law, &v[..*arity]).unwrap_or((v[..*arity].to_vec(), r));
                    out.push(Counterexample {
                        case,
                        identity: name.to_string(),
                        inputs: inputs.iter().map(|c| c.to_text(sym)).collect(),
                        residual: residual.to_text(sym),
                    });
                }
                out
            },
        )
        .collect();
    for (name, _, _) in LAWS {
        report.count(name, cfg.cases as u64);
    }
    report.failures = results.into_iter().flatten().collect();
    Ok(report.finish())
}

// ---------------------------------------------------------------------------
// Free commutative Rota–Baxter algebra

fn rb_identity(rb: &RbCom<Generator>, a: &StackComb<Generator>, b: &StackComb<Generator>) -> StackComb<Generator> {
    let (ra, rbb) = (rb.rb_wrap(a), rb.rb_wrap(b));
    let mut inner = rb.product_lc(&ra, b);
    inner += &rb.product_lc(a, &rbb);
    let ab = rb.product_lc(a, b);
    match rb.policy() {
        Policy::RotaBaxter(w) => inner += &(&ab * &w.0),
        Policy::Nijenhuis => inner -= &rb.rb_wrap(&ab),
    }
    rb.product_lc(&ra, &rbb) - rb.rb_wrap(&inner)
}

fn rbcom_suite(cfg: &SuiteConfig) -> SuiteReport {
    let abc: Vec<Generator> = alphabet(cfg.gens).iter().cloned().collect();
    let words = enumerate_words(&abc, cfg.xdeg, cfg.rdeg);
    let mut report = SuiteReport::new(Suite::RbCom, &cfg.policy, cfg.seed);
    if words.is_empty() {
        return report.finish();
    }
    let show = |c: &StackComb<Generator>| c.render(|w| w.to_string());
    let comb = |v: Vec<(StackWord<Generator>, Scalar)>| StackComb::collect(v);
    let random: Vec<Vec<Counterexample>> = (0..cfg.cases as u64)
        .into_par_iter()
        .map_init(
            || RbCom::new(cfg.policy.clone()),
            |rb, case| {
                let mut rng = case_rng(cfg.seed, case);
                let v: Vec<StackComb<Generator>> =
                    (0..3).map(|_| comb(random_comb(&mut rng, &words, cfg.max_terms))).collect();
                let mut out = Vec::new();
                let comm = rb.product_lc(&v[0], &v[1]) - rb.product_lc(&v[1], &v[0]);
                let assoc = rb.product_lc(&rb.product_lc(&v[0], &v[1]), &v[2])
                    - rb.product_lc(&v[0], &rb.product_lc(&v[1], &v[2]));
                for (name, r, k) in [("commutativity", comm, 2), ("associativity", assoc, 3)] {
                    if !r.is_zero() {
                        out.push(Counterexample {
                            case,
                            identity: name.into(),
                            inputs: v[..k].iter().map(show).collect(),
                            residual: show(&r),
                        });
                    }
                }
                out
            },
        )
        .collect();
    report.count("commutativity", cfg.cases as u64);
    report.count("associativity", cfg.cases as u64);
    // The operator identity on every ordered pair of basis words.
    let n = words.len() as u64;
    let exhaustive: Vec<Vec<Counterexample>> = (0..n)
        .into_par_iter()
        .map_init(
            || RbCom::new(cfg.policy.clone()),
            |rb, i| {
                let a = words[i as usize].as_comb();
                let mut out = Vec::new();
                for (j, w) in words.iter().enumerate() {
                    let b = w.as_comb();
                    let r = rb_identity(rb, &a, &b);
                    if !r.is_zero() {
                        out.push(Counterexample {
                            case: i * n + j as u64,
                            identity: "operator-product".into(),
                            inputs: vec![show(&a), show(&b)],
                            residual: show(&r),
                        });
                    }
                }
                out
            },
        )
        .collect();
    report.count("operator-product", n * n);
    report.failures = random.into_iter().chain(exhaustive).flatten().collect();
    report.finish()
}

// ---------------------------------------------------------------------------
// Models

/// The polynomial model (`F[x,y]`, `{x,y} = y`, the split operator) and the
/// homomorphism oracle from the free algebra of weight 1.
fn polynomial_suite(cfg: &SuiteConfig) -> Result<SuiteReport, BoundsError> {
    let mut report = SuiteReport::new(Suite::Models, &Policy::rota_baxter(1), cfg.seed);
    let pp = PolyPoisson2::new();
    let monos = pp.monomials(4);
    let push = |report: &mut SuiteReport, name: &str, inputs: Vec<String>, residual: String| {
        report.failures.push(Counterexample { case: 0, identity: name.into(), inputs, residual });
    };
    report.count("poly-poisson-axioms", 1);
    if let Err(err) = crate::models::check_poisson_axioms(&pp, &monos) {
        push(&mut report, "poly-poisson-axioms", vec![], err.to_string());
    }
    let rep = check_rb_operator(&pp, &SplitOperator, &Scalar::one(), &monos);
    report.count("poly-split-operator", rep.pairs as u64);
    if !rep.passed() {
        push(&mut report, "poly-split-operator", vec![], rep.to_string());
    }
    let rep = check_operator(&pp, &IdealProjection, &Policy::Nijenhuis, &monos);
    report.count("poly-ideal-projection", rep.pairs as u64);
    if !rep.passed() {
        push(&mut report, "poly-ideal-projection", vec![], rep.to_string());
    }
    let hom = homomorphism_cases(cfg, PolyPoisson2::new(), SplitOperator, &|g| match g.rank() {
        0 => Some(Poly::x()),
        1 => Some(Poly::y()),
        _ => None,
    })?;
    merge_hom(&mut report, hom, cfg.cases);
    Ok(report.finish())
}

/// A model file: axioms on the basis, the operator law, and the
/// homomorphism oracle with generator `i` sent to basis vector `i`.
pub fn model_file_suite(cfg: &SuiteConfig, file: &ModelFile) -> Result<SuiteReport, String> {
    let alg = file.algebra().map_err(|e| e.to_string())?;
    let (op, policy) = file
        .operator()
        .map_err(|e| e.to_string())?
        .ok_or("the model file has no operator")?;
    let mut report = SuiteReport::new(Suite::Models, &policy, cfg.seed);
    let rep = check_operator(&alg, &op, &policy, &alg.basis());
    report.count("model-operator", rep.pairs as u64);
    if !rep.passed() {
        report.failures.push(Counterexample {
            case: 0,
            identity: "model-operator".into(),
            inputs: vec![],
            residual: rep.to_string(),
        });
        return Ok(report.finish());
    }
    let dim = alg.dim();
    let cfg = SuiteConfig { policy, gens: cfg.gens.min(dim), ..cfg.clone() };
    let basis: Vec<_> = alg.basis();
    let hom = homomorphism_cases(&cfg, alg, op, &|g: &Generator| basis.get(g.rank() as usize).cloned())
        .map_err(|e| e.to_string())?;
    merge_hom(&mut report, hom, cfg.cases);
    Ok(report.finish())
}

fn merge_hom(report: &mut SuiteReport, hom: Vec<Counterexample>, cases: usize) {
    for name in ["hom-product", "hom-bracket", "hom-operator"] {
        report.count(name, cases as u64);
    }
    report.failures.extend(hom);
}

fn homomorphism_cases<M, O>(
    cfg: &SuiteConfig,
    model: M,
    op: O,
    assign: &dyn Fn(&Generator) -> Option<M::Elem>,
) -> Result<Vec<Counterexample>, BoundsError>
where
    M: PoissonModel,
    O: crate::models::Operator<M>,
{
    let policy = cfg.policy.clone();
    let e = Engine::new(policy.clone());
    let words = e.enumerate_basis(&alphabet(cfg.gens), cfg.xdeg, cfg.rdeg, false)?;
    let sym = e.symbol();
    let Ok(vm) = VerifiedModel::verify(model, op, policy.clone(), &[]) else {
        unreachable!("no samples")
    };
    if words.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for case in 0..cfg.cases as u64 {
        let mut rng = case_rng(cfg.seed, case);
        let u = Element::collect(random_comb(&mut rng, &words, cfg.max_terms));
        let v = Element::collect(random_comb(&mut rng, &words, cfg.max_terms));
        let ev = |c: &Element| eval_hom(&vm, &policy, assign, c);
        let m = vm.model();
        let (eu, evv) = (ev(&u), ev(&v));
        let checks = [
            ("hom-product", ev(&e.mul(&u, &v)), eu.as_ref().map(|a| m.mul(a, evv.as_ref().unwrap()))),
            ("hom-bracket", ev(&e.bracket(&u, &v)), eu.as_ref().map(|a| m.bracket(a, evv.as_ref().unwrap()))),
            ("hom-operator", ev(&e.apply(&u)), eu.as_ref().map(|a| vm.apply(a))),
        ];
        for (name, lhs, rhs) in checks {
            let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
            if !ok {
                out.push(Counterexample {
                    case,
                    identity: name.into(),
                    inputs: vec![u.to_text(sym), v.to_text(sym)],
                    residual: format!("{lhs:?} vs {rhs:?}"),
                });
            }
        }
        if case % 32 == 31 {
            e.clear_caches();
        }
    }
    Ok(out)
}

/// Runs a suite. `Models` without a file runs the built-in polynomial suite
/// at weight 1 regardless of `cfg.policy`.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport, BoundsError> {
    match suite {
        Suite::RbCom => Ok(rbcom_suite(cfg)),
        Suite::PoisRb => {
            if matches!(cfg.policy, Policy::Nijenhuis) {
                return Err(BoundsError::Invalid("the poisrb suite needs a Rota-Baxter weight".into()));
            }
            poisson_suite(suite, cfg)
        }
        Suite::NsPois => poisson_suite(suite, &SuiteConfig { policy: Policy::Nijenhuis, ..cfg.clone() }),
        Suite::Models => polynomial_suite(&SuiteConfig { policy: Policy::rota_baxter(1), ..cfg.clone() }),
    }
}
