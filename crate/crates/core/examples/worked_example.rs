//! `R(x)·R(x)` across weights, and the expressibility of its leading word.

use rbpois::kernel::{scalar, Alphabet};
use rbpois::poisrb::Engine;
use rbpois::syntax::normalize_in;

fn main() {
    let abc = Alphabet::new(["x"]).unwrap();
    for lambda in [0, 1, -1, 2] {
        let e = Engine::rota_baxter(scalar(lambda));
        let c = normalize_in(&e, &abc, "R(x)*R(x)").unwrap();
        println!("weight {lambda:>2}: R(x)*R(x) = {}", c.to_text('R'));
        let lead = normalize_in(&e, &abc, "R(R(x)*x)").unwrap();
        let (w, _) = lead.leading().unwrap();
        let wit = e.witness(w.as_r_letter().unwrap()).unwrap();
        println!("          R(R(x)*x) is expressible with k = {}", wit.k);
    }
    let n = Engine::nijenhuis();
    println!("Nijenhuis: N(x)*N(x) = {}", normalize_in(&n, &abc, "N(x)*N(x)").unwrap().to_text('N'));
}
