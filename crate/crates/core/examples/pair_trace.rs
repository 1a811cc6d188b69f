//! Synchronization of two optomechanical resonators over time.
//!
//! Extra arguments are config overrides, e.g.
//! `cargo run --release --example pair_trace -- params.drive=50`.

use qsync::experiments::{pair_trace, Experiment, ExperimentConfig};

fn main() {
    let sets: Vec<String> = std::env::args().skip(1).collect();
    let cfg = ExperimentConfig::load(None, &sets).expect("config");
    assert_eq!(cfg.experiment, Experiment::PairTrace);
    let trace = match pair_trace(&cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("run failed: {e}");
            std::process::exit(1);
        }
    };
    let r = &trace.record;
    let n = r.sync.len();
    println!("{:>10} {:>9} {:>9} {:>9} {:>9}", "t", "S_c", "S_p", "D_G", "E_N");
    for k in (0..n).step_by((n / 20).max(1)) {
        let s = &r.sync[k];
        println!(
            "{:>10.1} {:>9.4} {:>9.4} {:>9.4} {:>9.2e}",
            s.t,
            s.s_c,
            s.s_p().unwrap_or(f64::NAN),
            r.correlations[k].discord,
            r.correlations[k].log_negativity
        );
    }
    let m = &trace.summary;
    println!("mean S_c = {:.6}, mean S_p = {:?}", m.sync.s_c, m.sync.s_p);
    println!("squeezed samples: {}", trace.bounds.iter().filter(|b| b.squeezing == Some(true)).count());
    println!("min eig(C + iΩ/2) = {:.3e}", trace.min_physical_eigenvalue());
}
