//! The free Poisson Nijenhuis algebra and the NS-Poisson structure a
//! Nijenhuis operator induces on a model.

use rbpois::kernel::{Alphabet, Policy};
use rbpois::models::{IdealProjection, PolyPoisson2, VerifiedModel};
use rbpois::nspois::{check_ns_poisson, ns_bracket, ns_com_product, NsOps};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

fn main() {
    let e = Engine::nijenhuis();
    let abc = Alphabet::new(["x", "y"]).unwrap();
    let p = |s: &str| normalize_in(&e, &abc, s).unwrap();
    println!("N(x)*N(y) = {}", ns_com_product(&e, &p("N(x)"), &p("N(y)")).to_text('N'));
    println!("[N(x),N(y)] = {}", ns_bracket(&e, &p("N(x)"), &p("N(y)")).to_text('N'));

    let pp = PolyPoisson2::new();
    let s = pp.monomials(2);
    let vm = VerifiedModel::verify(pp, IdealProjection, Policy::Nijenhuis, &s).unwrap();
    println!("{}", vm.report());
    let ops = NsOps::from_nijenhuis(&vm).unwrap();
    print!("{}", check_ns_poisson(&ops, &s));
}
