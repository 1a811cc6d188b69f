//! Time-averaged synchronization and discord against the tunneling rate.

use qsync::experiments::{sweep_mu, ExperimentConfig};

fn main() {
    let sets: Vec<String> = std::env::args().skip(1).collect();
    let cfg = ExperimentConfig::load(None, &sets).expect("config");
    println!("{:>7} {:>10} {:>10} {:>10} {:>10}", "mu", "S_c", "S_p", "D_G", "E_N");
    for p in sweep_mu(&cfg).expect("sweep") {
        match p.ok() {
            Some(s) => println!(
                "{:>7.3} {:>10.5} {:>10.5} {:>10.5} {:>10.2e}",
                p.value,
                s.summary.sync.s_c,
                s.summary.sync.s_p.unwrap_or(f64::NAN),
                s.summary.correlations.discord,
                s.summary.correlations.log_negativity
            ),
            None => println!("{:>7.3} failed: {}", p.value, p.outcome.as_ref().unwrap_err()),
        }
    }
}
