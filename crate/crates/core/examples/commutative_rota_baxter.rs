//! The free commutative Rota-Baxter algebra on standard stacked words.

use rbpois::kernel::{Generator, Policy};
use rbpois::rbcom::{enumerate_words, RbCom, StackWord};

fn main() {
    let x = Generator::new(0, "x");
    let y = Generator::new(1, "y");
    let rb = RbCom::new(Policy::rota_baxter(1));
    let rx = StackWord::letter(x.clone()).wrapped();
    let ry = StackWord::letter(y.clone()).wrapped();
    println!("R(x)*R(x) = {:?}", rb.product(&rx, &rx));
    println!("R(x)*R(y) = {:?}", rb.product(&rx, &ry));
    let w = StackWord::from_levels(vec![vec![x.clone()], vec![x.clone()]]).unwrap();
    println!("{w} has levels {:?}", w.levels().iter().map(|l| l.len()).collect::<Vec<_>>());
    match rb.is_expressible(&w.wrapped()).unwrap() {
        Some(ex) => println!("R({w}) is expressible with k = {}", ex.k),
        None => println!("R({w}) is not expressible"),
    }
    for (d, r) in [(2, 1), (3, 2), (4, 3)] {
        println!("words over {{x,y}} with X-degree <= {d}, R-degree <= {r}: {}", enumerate_words(&[x.clone(), y.clone()], d, r).len());
    }
}
