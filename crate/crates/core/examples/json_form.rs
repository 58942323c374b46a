//! The versioned JSON form of normalized elements.

use rbpois::json::{element_from_str, element_to_string};
use rbpois::kernel::{scalar, Alphabet};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

fn main() {
    let e = Engine::rota_baxter(scalar(1));
    let abc = Alphabet::new(["x", "y"]).unwrap();
    let c = normalize_in(&e, &abc, "[R(R(x)*x),y] + 3/2*R([x,y])").unwrap();
    let s = element_to_string(&c, 'R');
    println!("{s}");
    let back = element_from_str(&s).unwrap();
    e.validate(&back).unwrap();
    println!("round trip: {}", back.to_text('R'));
}
