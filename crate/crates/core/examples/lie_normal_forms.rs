//! Lyndon-Shirshov normal forms of Lie monomials, and two reduction orders
//! reaching the same normal form.

use rbpois::kernel::{scalar, Alphabet, LieWord, Word};
use rbpois::poisrb::Engine;
use rbpois::rblie::{lie_normalize, lyndon_bracket, BracketTree, Strategy};

fn main() {
    let abc = Alphabet::new(["x", "y", "z"]).unwrap();
    let g = |s: &str| abc.get(s).unwrap().clone();
    let (x, y, z) = (LieWord::generator(g("x")), LieWord::generator(g("y")), LieWord::generator(g("z")));
    let xy = lyndon_bracket(&x, &y);
    println!("[x,y] = {xy:?}");
    let (w, _) = xy.leading().unwrap();
    println!("[[x,y],z] = {:?}", lyndon_bracket(w, &z));
    println!("[z,[x,y]] = {:?}", lyndon_bracket(&z, w));

    let e = Engine::rota_baxter(scalar(1));
    let t = BracketTree::br(
        BracketTree::br(BracketTree::gen(g("z")), BracketTree::op(Word::generator(g("x")))),
        BracketTree::br(BracketTree::gen(g("y")), BracketTree::gen(g("x"))),
    );
    for s in [Strategy::BottomUp, Strategy::LeftNormed] {
        println!("{s:?}: [[z,R(x)],[y,x]] = {}", lie_normalize(&e, &t, s).to_text('R'));
    }
}
