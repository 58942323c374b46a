//! Writes and re-reads the truncated polynomial model, with its split
//! operator and a Yang-Baxter tensor, as JSON.

use rbpois::kernel::scalar;
use rbpois::models::{check_operator, truncated_poly2, Coeff, ModelFile, TensorSpec};

fn main() {
    let (alg, op) = truncated_poly2(2);
    let mut file = ModelFile::from_algebra(&alg, Some((&op, &rbpois::kernel::Policy::rota_baxter(1))));
    file.tensor = Some(TensorSpec { weight: Coeff::Int(2), entries: vec![(0, 0, Coeff::Int(2))] });
    let text = file.to_json();
    let out = std::env::args().nth(1);
    match &out {
        Some(path) => std::fs::write(path, &text).unwrap(),
        None => println!("{text}"),
    }
    let back = ModelFile::parse(&text).unwrap();
    let alg2 = back.algebra().unwrap();
    let (op2, policy) = back.operator().unwrap().unwrap();
    println!("reloaded: dimension {}, {}", alg2.dim(), check_operator(&alg2, &op2, &policy, &alg2.basis()));
    let (_, w) = back.tensor().unwrap().unwrap();
    assert_eq!(w, scalar(2));
}
