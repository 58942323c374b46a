//! Solutions of the associative Yang-Baxter equation of weight λ and their
//! principal Rota-Baxter operators of weight −λ.

use rbpois::kernel::{ratio, scalar};
use rbpois::models::{check_aybe, check_prop2, truncated_poly2, Tensor2};

fn main() {
    let (a, _) = truncated_poly2(2);
    let one = a.unit().unwrap();
    for l in [scalar(0), scalar(1), scalar(-1), ratio(3, 2)] {
        let r = Tensor2::simple(&l, &one, &one);
        let rep = check_prop2(&a, &r, &l).unwrap();
        println!(
            "r = {l}(1⊗1): equation of weight {} holds, operator weight {}: {}, contraction {}",
            rep.aybe_weight, rep.operator_weight, rep.operator, rep.contraction
        );
    }
    let r = Tensor2::simple(&scalar(1), &one, &one);
    println!("1⊗1 at weight 0 solves the equation: {}", check_aybe(&a, &r, &scalar(0)).unwrap());
    println!("{}", check_prop2(&a, &r, &scalar(0)).unwrap_err());
}
