use rbpois::kernel::{scalar, Alphabet, Generator, Policy};
use rbpois::models::{
    check_aybe, check_operator, eval_hom, truncated_poly2, EvalHomError, IdealProjection, ModelError, ModelFile, Poly,
    PolyPoisson2, SplitOperator, Tensor2, VerifiedModel,
};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

const EXAMPLE1: &str = include_str!("../examples/data/example1.json");

#[test]
fn leibniz_bracket_agrees_with_closed_form() {
    let pp = PolyPoisson2::new();
    let ms = pp.monomials(5);
    for f in &ms {
        for g in &ms {
            assert_eq!(pp.bracket_leibniz(f, g), pp.bracket_closed(f, g));
        }
    }
}

/// Swapping `x` and `y` is an automorphism of the truncated commutative
/// product, so it maps solutions to solutions.
#[test]
fn yang_baxter_is_invariant_under_relabelling() {
    let (a, _) = truncated_poly2(2);
    let swap = [0, 2, 1, 5, 4, 3];
    let mut solutions = 0;
    for seed in 0..60u64 {
        let mut t = vec![vec![scalar(0); 6]; 6];
        for k in 0..3u64 {
            let h = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(7 * k as u32 + 3);
            t[(h % 6) as usize][((h >> 8) % 6) as usize] = scalar((h >> 16) as i64 % 3 - 1);
        }
        let r = Tensor2::from_matrix(t);
        assert_eq!(r.relabel(&swap).relabel(&swap), r);
        for l in [0, 1] {
            let here = check_aybe(&a, &r, &scalar(l)).unwrap();
            assert_eq!(check_aybe(&a, &r.relabel(&swap), &scalar(l)).unwrap(), here);
            solutions += here as usize;
        }
    }
    assert!(solutions > 0);
    let one = a.unit().unwrap();
    assert!(check_aybe(&a, &Tensor2::simple(&scalar(3), &one, &one), &scalar(3)).unwrap());
    assert!(check_aybe(&a, &Tensor2::zero(a.dim()), &scalar(5)).unwrap());
}

#[test]
fn evaluation_refuses_a_different_law() {
    let pp = PolyPoisson2::new();
    let s = pp.monomials(3);
    let vm = VerifiedModel::verify(pp, SplitOperator, Policy::rota_baxter(1), &s).unwrap();
    let e = Engine::rota_baxter(scalar(1));
    let c = normalize_in(&e, &Alphabet::new(["x", "y"]).unwrap(), "R(x)*y").unwrap();
    let assign = |g: &Generator| Some(if g.symbol() == "x" { Poly::x() } else { Poly::y() });
    assert!(eval_hom(&vm, &Policy::rota_baxter(1), &assign, &c).is_ok());
    match eval_hom(&vm, &Policy::rota_baxter(2), &assign, &c) {
        Err(EvalHomError::PolicyMismatch { .. }) => {}
        other => panic!("expected a policy mismatch, got {other:?}"),
    }
    let none = |_: &Generator| None;
    assert!(matches!(eval_hom(&vm, &Policy::rota_baxter(1), &none, &c), Err(EvalHomError::Unassigned(_))));
}

#[test]
fn unverified_operators_are_refused() {
    let pp = PolyPoisson2::new();
    let s = pp.monomials(3);
    assert!(VerifiedModel::verify(PolyPoisson2::new(), SplitOperator, Policy::rota_baxter(-1), &s).is_err());
    assert!(VerifiedModel::verify(PolyPoisson2::new(), IdealProjection, Policy::rota_baxter(0), &s).is_err());
    assert!(VerifiedModel::verify(pp, IdealProjection, Policy::Nijenhuis, &s).is_ok());
}

#[test]
fn model_file_round_trip() {
    let mf = ModelFile::parse(EXAMPLE1).unwrap();
    let alg = mf.algebra().unwrap();
    let (op, policy) = mf.operator().unwrap().unwrap();
    assert!(check_operator(&alg, &op, &policy, &alg.basis()).passed());
    let again = ModelFile::from_algebra(&alg, Some((&op, &policy)));
    assert_eq!(ModelFile::parse(&again.to_json()).unwrap().algebra().unwrap().dim(), alg.dim());
    assert!(mf.tensor().unwrap().is_some());
}

#[test]
fn corrupted_model_file_names_the_axiom() {
    let mut v: serde_json::Value = serde_json::from_str(EXAMPLE1).unwrap();
    v["bracket"][1][2] = serde_json::json!([[0, "1"]]);
    v["bracket"][2][1] = serde_json::json!([[0, "-1"]]);
    let mf = ModelFile::parse(&v.to_string()).unwrap();
    match mf.algebra() {
        Err(ModelError::Axiom { axiom, indices }) => {
            assert!(!axiom.is_empty());
            assert!(indices.iter().all(|&i| i < 6));
        }
        other => panic!("expected an axiom failure, got {other:?}"),
    }
    let mut v: serde_json::Value = serde_json::from_str(EXAMPLE1).unwrap();
    v["dim"] = serde_json::json!(5);
    assert!(ModelFile::parse(&v.to_string()).and_then(|m| m.algebra()).is_err());
}
