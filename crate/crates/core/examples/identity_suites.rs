//! The seeded identity suites, as run by `rbpois check`.

use rbpois::kernel::Policy;
use rbpois::suites::{run_suite, Suite, SuiteConfig};

fn main() {
    let runs = [
        (Suite::RbCom, Policy::rota_baxter(1), 2, 1),
        (Suite::PoisRb, Policy::rota_baxter(-1), 3, 2),
        (Suite::NsPois, Policy::Nijenhuis, 3, 2),
        (Suite::Models, Policy::rota_baxter(1), 3, 2),
    ];
    for (suite, policy, xdeg, rdeg) in runs {
        let cfg = SuiteConfig { cases: 40, xdeg, rdeg, policy, ..Default::default() };
        println!("{}\n", run_suite(suite, &cfg).unwrap());
    }
}
