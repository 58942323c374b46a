//! Products and brackets in the free Poisson Rota-Baxter algebra.

use rbpois::kernel::{scalar, Alphabet};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

fn main() {
    let e = Engine::rota_baxter(scalar(1));
    let abc = Alphabet::new(["x", "y", "z"]).unwrap();
    for src in [
        "[x,y*z]",
        "[x,R(y)]",
        "[R(x),R(y)]",
        "[R(R(x)*x),y]",
        "R(x)*R(y)*z",
        "[R(R(x)*x),R(R(y)*y)]",
        "[[x,y],z] + [[y,z],x] + [[z,x],y]",
    ] {
        let c = normalize_in(&e, &abc, src).unwrap();
        println!("{src:<36} = {}", c.to_text('R'));
    }
}
