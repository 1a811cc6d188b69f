//! Time-averaged synchronization against the mechanical bath occupation.

use qsync::experiments::{sweep_nb, ExperimentConfig};

fn main() {
    let sets: Vec<String> = std::env::args().skip(1).collect();
    let cfg = ExperimentConfig::load(None, &sets).expect("config");
    println!("{:>5} {:>10} {:>10} {:>14}", "n_b", "S_c", "S_p", "S_c*(2n_b+1)");
    for p in sweep_nb(&cfg).expect("sweep") {
        match p.ok() {
            Some(s) => println!(
                "{:>5} {:>10.5} {:>10.5} {:>14.5}",
                p.value,
                s.summary.sync.s_c,
                s.summary.sync.s_p.unwrap_or(f64::NAN),
                s.summary.sync.s_c * (2.0 * p.value + 1.0)
            ),
            None => println!("{:>5} failed: {}", p.value, p.outcome.as_ref().unwrap_err()),
        }
    }
}
