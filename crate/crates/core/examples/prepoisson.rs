//! The prePoisson products `x∘y = R(x)y`, `x*y = [R(x),y]` of a weight-0
//! operator, checked on the free algebra itself. The companion identity
//! holds with `x∘y + y∘x` and fails with `x∘y − y∘x`.

use rbpois::kernel::{scalar, Alphabet, Element, Policy};
use rbpois::models::{derived_postpoisson, derived_prepoisson, FreeOperator, PolyPoisson2, SplitOperator, VerifiedModel};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

fn main() {
    let e = Engine::rota_baxter(scalar(0));
    let abc = Alphabet::new(["x", "y"]).unwrap();
    let s: Vec<Element> =
        ["x", "y", "R(x)", "x*y", "[x,y]"].iter().map(|t| normalize_in(&e, &abc, t).unwrap()).collect();
    let vm = VerifiedModel::verify(e, FreeOperator, Policy::rota_baxter(0), &s).unwrap();
    let pre = derived_prepoisson(&vm).unwrap();
    println!("x∘y = {}", pre.circ(&s[0], &s[1]).to_text('R'));
    println!("x*y = {}", pre.star(&s[0], &s[1]).to_text('R'));
    print!("{}", pre.check(&s));

    let pp = PolyPoisson2::new();
    let monos = pp.monomials(2);
    let vm = VerifiedModel::verify(pp, SplitOperator, Policy::rota_baxter(1), &monos).unwrap();
    let post = derived_postpoisson(&vm).unwrap();
    let (x, y) = (&monos[1], &monos[2]);
    println!(
        "postPoisson on F[x,y]: x∘y = {:?}, x·y = {:?}, x*y = {:?}, x⋆y = {:?}",
        post.circ(x, y),
        post.dot(x, y),
        post.star(x, y),
        post.lstar(x, y)
    );
}
