//! Anti-symmetric mode model: closed-form steady state against integration.

use qsync::experiments::{ou_check, ExperimentConfig};

fn main() {
    let sets: Vec<String> = std::env::args().skip(1).collect();
    let cfg = ExperimentConfig::load(None, &sets).expect("config");
    let r = ou_check(&cfg).expect("ou check");
    println!("closed form:{}", r.analytic);
    println!("integrated:{}", r.numerical);
    println!("max deviation {:.3e}", r.max_deviation);
    println!("Σ_pp - Σ_qq = {:.6e} (bound holds: {})", r.anisotropy, r.bound_holds);
}
