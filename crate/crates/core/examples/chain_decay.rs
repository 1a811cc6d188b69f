//! Complete synchronization between ring sites as a function of distance.
//! Takes about a minute with the default 20-site ring.

use qsync::experiments::{chain, ExperimentConfig};

fn main() {
    let sets: Vec<String> = std::env::args().skip(1).collect();
    let cfg = ExperimentConfig::load(None, &sets).expect("config");
    let profile = chain(&cfg).expect("chain run");
    println!("{:>3} {:>12} {:>12}", "h", "S_c(h)", "ln S_c(h)");
    for (h, s, _) in profile.rows() {
        println!("{h:>3} {s:>12.6} {:>12.6}", s.ln());
    }
}
