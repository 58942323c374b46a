//! One line per acceptance criterion. Runs without the test harness so the
//! lines are always shown; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rbpois::json::element_to_string;
use rbpois::kernel::{scalar, Alphabet, Element, Policy};
use rbpois::models::{
    check_aybe, check_prop2, check_rb_operator, derived_prepoisson, truncated_poly2, truncated_weight0,
    FreeOperator, IdealProjection, Operator, Poly, PolyPoisson2, SplitOperator, Tensor2, VerifiedModel,
};
use rbpois::nspois::{check_ns_poisson, NsOps};
use rbpois::poisrb::Engine;
use rbpois::rblie::Strategy;
use rbpois::suites::{run_suite, Suite, SuiteConfig, SuiteReport};
use rbpois::syntax::{evaluate, normalize_in, Expr};

type Outcome = Result<String, String>;

fn within(t: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    if e > budget {
        return Err(format!("{what} took {e:.1?}, budget {budget:?}"));
    }
    Ok(())
}

fn suite_ok(r: &SuiteReport) -> Result<u64, String> {
    if !r.passed() {
        return Err(format!("{r}"));
    }
    Ok(r.checked.values().sum())
}

fn c1() -> Outcome {
    let t = Instant::now();
    let abc = Alphabet::new(["x"]).unwrap();
    for l in [0, 1, -1, 2] {
        let e = Engine::rota_baxter(scalar(l));
        let got = normalize_in(&e, &abc, "R(x)*R(x)").unwrap();
        let want = normalize_in(&e, &abc, &format!("2*R(R(x)*x) + ({l})*R(x*x)")).unwrap();
        if got != want {
            return Err(format!("weight {l}: got {}", got.to_text('R')));
        }
        let w = normalize_in(&e, &abc, "R(R(x)*x)").unwrap();
        let (word, _) = w.leading().unwrap();
        match e.witness(word.as_r_letter().unwrap()) {
            Some(wit) if wit.k == scalar(2) => {}
            other => return Err(format!("weight {l}: witness {:?}", other.map(|w| w.k.clone()))),
        }
    }
    within(t, Duration::from_secs(1), "worked example")?;
    Ok(format!("4 weights in {:.0?}", t.elapsed()))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let cfg = SuiteConfig { seed: 2, xdeg: 4, rdeg: 3, cases: 200, gens: 2, max_terms: 3, policy: Policy::rota_baxter(1) };
    let r = run_suite(Suite::RbCom, &cfg).map_err(|e| e.to_string())?;
    let n = suite_ok(&r)?;
    within(t, Duration::from_secs(120), "commutative suite")?;
    Ok(format!("{} operator-identity pairs, {n} checks in {:.1?}", r.checked["operator-product"], t.elapsed()))
}

fn c3() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for l in [0, 1, -1] {
        let cfg = SuiteConfig { seed: 3, xdeg: 3, rdeg: 2, cases: 500, gens: 2, max_terms: 2, policy: Policy::rota_baxter(l) };
        n += suite_ok(&run_suite(Suite::PoisRb, &cfg).map_err(|e| e.to_string())?)?;
    }
    within(t, Duration::from_secs(600), "Poisson suite")?;
    Ok(format!("{n} checks over weights 0, 1, -1 in {:.1?}", t.elapsed()))
}

fn c4() -> Outcome {
    let t = Instant::now();
    let cfg = SuiteConfig { seed: 4, xdeg: 3, rdeg: 2, cases: 500, gens: 2, max_terms: 2, policy: Policy::Nijenhuis };
    let n = suite_ok(&run_suite(Suite::NsPois, &cfg).map_err(|e| e.to_string())?)?;
    Ok(format!("{n} checks in {:.1?}", t.elapsed()))
}

/// Multilinear Lie dimension by brute force: the rank of all bracketings of
/// a permutation of `0..k`, expanded as noncommutative polynomials.
fn lie_dim(k: usize) -> usize {
    fn trees(items: &[usize]) -> Vec<BTreeMap<Vec<usize>, i64>> {
        if items.len() == 1 {
            return vec![BTreeMap::from([(items.to_vec(), 1)])];
        }
        let mut out = Vec::new();
        for cut in 1..items.len() {
            for l in trees(&items[..cut]) {
                for r in trees(&items[cut..]) {
                    let mut p = BTreeMap::new();
                    for (a, ca) in &l {
                        for (b, cb) in &r {
                            *p.entry([a.clone(), b.clone()].concat()).or_insert(0) += ca * cb;
                            *p.entry([b.clone(), a.clone()].concat()).or_insert(0) -= ca * cb;
                        }
                    }
                    p.retain(|_, c| *c != 0);
                    out.push(p);
                }
            }
        }
        out
    }
    fn perms(v: Vec<usize>) -> Vec<Vec<usize>> {
        if v.len() <= 1 {
            return vec![v];
        }
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut rest = v.clone();
            let x = rest.remove(i);
            for mut p in perms(rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let polys: Vec<_> = perms((0..k).collect()).iter().flat_map(|p| trees(p)).collect();
    let keys: Vec<Vec<usize>> = perms((0..k).collect());
    let mut rows: Vec<Vec<f64>> =
        polys.iter().map(|p| keys.iter().map(|m| *p.get(m).unwrap_or(&0) as f64).collect()).collect();
    let mut rank = 0;
    for col in 0..keys.len() {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col].abs() > 1e-9) else { continue };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank {
                let f = rows[r][col] / rows[rank][col];
                for c in 0..keys.len() {
                    rows[r][c] -= f * rows[rank][c];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Multilinear Com∘Lie dimension: set partitions with a Lie factor per block.
fn com_lie_dim(n: usize) -> usize {
    fn go(rest: &[usize], lie: &[usize]) -> usize {
        let Some((&first, others)) = rest.split_first() else { return 1 };
        let _ = first;
        let mut total = 0;
        for mask in 0..(1usize << others.len()) {
            let block = 1 + mask.count_ones() as usize;
            let remaining: Vec<usize> =
                others.iter().enumerate().filter(|(i, _)| mask & (1 << i) == 0).map(|(_, &v)| v).collect();
            total += lie[block] * go(&remaining, lie);
        }
        total
    }
    let lie: Vec<usize> = (0..=n).map(|k| if k == 0 { 0 } else { lie_dim(k) }).collect();
    go(&(0..n).collect::<Vec<_>>(), &lie)
}

fn c5() -> Outcome {
    let t = Instant::now();
    let e = Engine::rota_baxter(scalar(1));
    let mut got = Vec::new();
    for n in 1..=3 {
        let words = e.enumerate_basis(&Alphabet::indexed(n), 0, 0, true).map_err(|e| e.to_string())?;
        let oracle = com_lie_dim(n);
        if words.len() != oracle {
            return Err(format!("n = {n}: {} words, oracle {oracle}", words.len()));
        }
        got.push(words.len());
    }
    if got != [1, 2, 6] {
        return Err(format!("counts {got:?}"));
    }
    within(t, Duration::from_secs(10), "enumeration")?;
    Ok(format!("counts {got:?} match the brute-force oracle in {:.0?}", t.elapsed()))
}

fn c6() -> Outcome {
    let pp = PolyPoisson2::new();
    let monos = pp.monomials(4);
    let rep = check_rb_operator(&pp, &SplitOperator, &scalar(1), &monos);
    if !rep.passed() {
        return Err(rep.to_string());
    }
    let p = |f: &Poly| SplitOperator.apply(&pp, f);
    let y = Poly::y();
    let lhs = p(&y).mul(&p(&y));
    let rhs = p(&p(&y).mul(&y).add(&y.mul(&p(&y))).add(&y.mul(&y)));
    let y2 = Poly::monomial(scalar(1), 0, 2);
    if lhs != y2 || rhs != y2 {
        return Err(format!("spot instance: {lhs:?} vs {rhs:?}"));
    }
    Ok(format!("{} monomial pairs, P(y)P(y) = y^2 = P(P(y)y + yP(y) + y^2)", rep.pairs))
}

fn c7() -> Outcome {
    let cfg = SuiteConfig { seed: 7, xdeg: 3, rdeg: 2, cases: 200, gens: 2, max_terms: 3, policy: Policy::rota_baxter(1) };
    let r = run_suite(Suite::Models, &cfg).map_err(|e| e.to_string())?;
    suite_ok(&r)?;
    Ok(format!("{} random pairs, product/bracket/operator commute with evaluation", r.checked["hom-product"]))
}

fn c8() -> Outcome {
    let (a, _) = truncated_poly2(2);
    let one = a.unit().ok_or("no unit")?;
    for l in [scalar(0), scalar(1), scalar(-1), scalar(2)] {
        let r = Tensor2::simple(&l, &one, &one);
        if !check_aybe(&a, &r, &l).map_err(|e| e.to_string())? {
            return Err(format!("λ(1⊗1) fails the equation at λ = {l}"));
        }
        let rep = check_prop2(&a, &r, &l).map_err(|e| e.to_string())?;
        if !rep.passed() || rep.operator_weight != -l.clone() {
            return Err(format!("λ = {l}: {} contraction {}", rep.operator, rep.contraction));
        }
    }
    let r = Tensor2::simple(&scalar(1), &one, &one);
    if check_aybe(&a, &r, &scalar(0)).map_err(|e| e.to_string())? {
        return Err("negative control 1⊗1 at weight 0 passes".into());
    }
    Ok("λ ∈ {0, 1, -1, 2} pass with operator weight -λ and the contraction identity; 1⊗1 at 0 rejected".into())
}

fn random_elements(e: &Engine, n: usize, seed: u64, xdeg: u32, rdeg: u32) -> Vec<Element> {
    let abc = Alphabet::new(["x", "y"]).unwrap();
    let words = e.enumerate_basis(&abc, xdeg, rdeg, false).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            Element::collect((0..k).map(|_| (words[rng.gen_range(0..words.len())].clone(), scalar(rng.gen_range(1..=3)))))
        })
        .collect()
}

fn c9() -> Outcome {
    // prePoisson identities on 200 random triples of the free weight-0 algebra.
    let e = Engine::rota_baxter(scalar(0));
    let pool = random_elements(&e, 600, 9, 2, 1);
    let vm = VerifiedModel::verify(e, FreeOperator, Policy::rota_baxter(0), &pool[..6]).map_err(|r| r.to_string())?;
    let pre = derived_prepoisson(&vm).map_err(|e| e.to_string())?;
    for t in pool.chunks(3).take(200) {
        let rep = pre.check(t);
        if !rep.passed() {
            return Err(rep.to_string());
        }
    }
    let (alg, _) = truncated_poly2(3);
    let vm0 = VerifiedModel::verify(alg, truncated_weight0(3), Policy::rota_baxter(0), &[]).map_err(|r| r.to_string())?;
    let basis = vm0.model().basis();
    let pre0 = derived_prepoisson(&vm0).map_err(|e| e.to_string())?;
    if !pre0.check(&basis).passed() {
        return Err("truncated weight-0 model".into());
    }
    // NS-Poisson operations induced by Nijenhuis operators.
    let pp = PolyPoisson2::new();
    let monos = pp.monomials(2);
    let vmn = VerifiedModel::verify(pp, IdealProjection, Policy::Nijenhuis, &monos).map_err(|r| r.to_string())?;
    let rep = check_ns_poisson(&NsOps::from_nijenhuis(&vmn).map_err(|e| e.to_string())?, &monos);
    if !rep.passed() {
        return Err(format!("polynomial Nijenhuis model: {rep}"));
    }
    let en = Engine::nijenhuis();
    let npool = random_elements(&en, 30, 19, 2, 1);
    let vmf = VerifiedModel::verify(en, FreeOperator, Policy::Nijenhuis, &npool[..4]).map_err(|r| r.to_string())?;
    let fops = NsOps::from_nijenhuis(&vmf).map_err(|e| e.to_string())?;
    for t in npool.chunks(3) {
        let rep = check_ns_poisson(&fops, t);
        if !rep.passed() {
            return Err(format!("free Nijenhuis algebra: {rep}"));
        }
    }
    // Trivial ∧, ∨: the prePoisson degeneration.
    let deg = NsOps::from_prepoisson(&pre, vm.model());
    for t in pool.chunks(3).take(20) {
        let rep = check_ns_poisson(&deg, t);
        if !rep.passed() {
            return Err(format!("prePoisson degeneration: {rep}"));
        }
    }
    Ok("prePoisson on 200 free triples and a truncated model; NS-Poisson for two Nijenhuis models and the degeneration".into())
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let gens = ["x", "y", "z"];
    if depth == 0 || rng.gen_bool(0.25) {
        return Expr::Gen(gens[rng.gen_range(0..3)].to_string());
    }
    let b = |rng: &mut ChaCha8Rng| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..5) {
        0 => Expr::Mul(b(rng), b(rng)),
        1 => Expr::Bracket(b(rng), b(rng)),
        2 => Expr::Op('R', b(rng)),
        3 => Expr::Add(b(rng), Box::new(Expr::Mul(Box::new(Expr::Num(scalar(rng.gen_range(-2..=2)))), b(rng)))),
        _ => Expr::Sub(b(rng), b(rng)),
    }
}

fn c10() -> Outcome {
    let abc = Alphabet::new(["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let exprs: Vec<Expr> = (0..100).map(|_| random_expr(&mut rng, 3)).collect();
    let run = |strategy: Strategy| -> Vec<String> {
        let e = Engine::rota_baxter(scalar(1));
        exprs.iter().map(|x| element_to_string(&evaluate(&e, &abc, x, strategy).unwrap(), 'R')).collect()
    };
    let a = run(Strategy::BottomUp);
    let b = run(Strategy::LeftNormed);
    if let Some(i) = (0..a.len()).find(|&i| a[i] != b[i]) {
        return Err(format!("expression {} differs between strategies", exprs[i]));
    }
    if run(Strategy::BottomUp) != a {
        return Err("repeated run differs".into());
    }
    let cfg = SuiteConfig { cases: 20, ..Default::default() };
    let r1 = run_suite(Suite::PoisRb, &cfg).map_err(|e| e.to_string())?.to_json();
    let r2 = run_suite(Suite::PoisRb, &cfg).map_err(|e| e.to_string())?.to_json();
    if r1 != r2 {
        return Err("suite reports differ between runs".into());
    }
    Ok("100 random expressions agree under both strategies; reruns byte-identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("worked example R(x)*R(x) and expressibility", c1),
        ("free commutative Rota-Baxter suite", c2),
        ("free Poisson Rota-Baxter suite", c3),
        ("free Poisson Nijenhuis suite", c4),
        ("multilinear dimension cross-check", c5),
        ("polynomial split operator", c6),
        ("evaluation homomorphism oracle", c7),
        ("Yang-Baxter tensors and principal operators", c8),
        ("prePoisson and NS-Poisson derived structures", c9),
        ("confluence and determinism", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
