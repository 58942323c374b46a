//! Basis words within bounds; multilinear counts at R-degree 0 are 1, 2, 6.

use rbpois::kernel::{scalar, Alphabet};
use rbpois::poisrb::Engine;

fn main() {
    let e = Engine::rota_baxter(scalar(1));
    for n in 1..=4 {
        let abc = Alphabet::indexed(n);
        let counts: Vec<usize> =
            (0..=2).map(|r| e.enumerate_basis(&abc, 0, r, true).unwrap().len()).collect();
        println!("n = {n}: multilinear words with R-degree <= 0, 1, 2: {counts:?}");
    }
    let abc = Alphabet::new(["x", "y"]).unwrap();
    for w in e.enumerate_basis(&abc, 2, 1, false).unwrap() {
        println!("  {w}");
    }
}
