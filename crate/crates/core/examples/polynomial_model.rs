//! `F[x,y]` with `{x,y} = y` and the split operator, and the evaluation
//! homomorphism from the free algebra of weight 1.

use rbpois::kernel::{scalar, Alphabet, Policy};
use rbpois::models::{check_rb_operator, eval_hom, Operator, Poly, PolyPoisson2, SplitOperator, VerifiedModel};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

fn main() {
    let pp = PolyPoisson2::new();
    let monos = pp.monomials(4);
    println!("{}", check_rb_operator(&pp, &SplitOperator, &scalar(1), &monos));
    let py = SplitOperator.apply(&pp, &Poly::y());
    println!("P(y)P(y) = {:?}", py.clone().mul(&py));

    let vm = VerifiedModel::verify(pp, SplitOperator, Policy::rota_baxter(1), &monos).unwrap();
    let e = Engine::rota_baxter(scalar(1));
    let abc = Alphabet::new(["x", "y"]).unwrap();
    let assign = |g: &rbpois::kernel::Generator| match g.symbol() {
        "x" => Some(Poly::x()),
        "y" => Some(Poly::y()),
        _ => None,
    };
    for src in ["R(x)", "[x,y]", "R(y)*R(y)", "[R(x*y),R(y)]", "R(R(y)*x)*[x,y]"] {
        let c = normalize_in(&e, &abc, src).unwrap();
        let v = eval_hom(&vm, e.policy(), &assign, &c).unwrap();
        println!("eval({src}) = {v:?}    [{}]", c.to_text('R'));
    }
}
