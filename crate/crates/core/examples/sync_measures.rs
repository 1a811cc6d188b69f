//! Complete and phase synchronization of hand-built two-mode states.

use qsync::gaussian::{fixtures, TwoModeCm};
use qsync::model::C64;
use qsync::sync::{check_bounds, s_complete, s_phase, PhasePair, SyncSample};

fn main() -> qsync::Result<()> {
    let vac = fixtures::coherent_pair();
    println!("coherent pair: S_c = {}", s_complete(&vac)?.s_c);

    let phases = [0.4, 0.4];
    for eps in [0.5, 0.25, 0.1, 0.02] {
        let hands = fixtures::squeezed_clock_hands(eps, phases);
        let p = s_phase(&hands, PhasePair::new(phases[0], phases[1]))?;
        println!("clock hands eps = {eps:<5} S_p = {:>8.3} squeezed = {}", p.s_p, p.squeezed);
    }

    let tmsv = TwoModeCm::two_mode_squeezed_vacuum(0.8);
    let b = C64::from_polar(10.0, 0.0);
    let sample = SyncSample::evaluate(0.0, &tmsv, b, b)?;
    let bounds = check_bounds(&sample, 1e-9);
    println!(
        "TMSV r = 0.8: S_c = {:.4}, Heisenberg limit = {:.4}, S_p = {:?}",
        sample.s_c,
        bounds.heisenberg_limit,
        sample.s_p()
    );
    Ok(())
}
