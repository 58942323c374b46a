//! Which operator letters are leading words of products `R(a)·R(b)`.

use rbpois::kernel::{fmt_scalar, scalar, Alphabet};
use rbpois::poisrb::Engine;

fn main() {
    let e = Engine::rota_baxter(scalar(0));
    let abc = Alphabet::new(["x", "y"]).unwrap();
    let words = e.enumerate_basis(&abc, 3, 2, false).unwrap();
    let (mut yes, mut no) = (0, 0);
    for w in &words {
        let Some(a) = w.as_r_letter() else { continue };
        match e.witness(a) {
            Some(wit) => {
                yes += 1;
                println!("{}·{} = R({})·R({}) - ({})", fmt_scalar(&wit.k), w, wit.e, wit.f, wit.residual.to_text('R'));
            }
            None => no += 1,
        }
    }
    println!("{yes} expressible, {no} not expressible operator letters");
}
