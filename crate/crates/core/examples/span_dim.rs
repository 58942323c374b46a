//! Dimensions of the multilinear span of iterated `R(a)·b` and `[R(a),b]`.

use rbpois::kernel::scalar;
use rbpois::poisrb::Engine;

fn main() {
    for (name, e) in [("weight 0", Engine::rota_baxter(scalar(0))), ("weight 1", Engine::rota_baxter(scalar(1))), ("Nijenhuis", Engine::nijenhuis())] {
        let dims: Vec<usize> = (1..=3).map(|n| e.pre_post_span_dim(n, 3).unwrap()).collect();
        println!("{name}: n = 1, 2, 3 -> {dims:?}");
    }
}
