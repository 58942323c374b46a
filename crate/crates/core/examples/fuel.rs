//! Bounding the work of a computation; the cap also comes from `RBPOIS_FUEL`.

use rbpois::kernel::{scalar, Alphabet};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

fn main() {
    let abc = Alphabet::new(["x", "y"]).unwrap();
    let src = "[R(R(x)*x),R(R(y)*y)]";
    for cap in [10, 100_000] {
        let e = Engine::rota_baxter(scalar(1)).with_fuel(cap);
        match e.guarded(|e| normalize_in(e, &abc, src)) {
            Ok(c) => println!("cap {cap}: {} terms", c.unwrap().len()),
            Err(err) => println!("cap {cap}: {err}"),
        }
    }
}
