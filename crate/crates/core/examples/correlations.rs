//! Logarithmic negativity and Gaussian discord of a few reference states.

use nalgebra::Matrix4;
use qsync::correlations::{gaussian_discord, gaussian_discord_measuring, log_negativity, MeasuredMode};
use qsync::gaussian::TwoModeCm;

fn main() -> qsync::Result<()> {
    println!("{:>8} {:>12} {:>12}", "r", "E_N", "D_G");
    for r in [0.0, 0.25, 0.5, 1.0] {
        let s = TwoModeCm::two_mode_squeezed_vacuum(r);
        println!("{r:>8.2} {:>12.6} {:>12.6}", log_negativity(&s)?, gaussian_discord(&s)?);
    }

    // Classically correlated thermal modes: separable, yet discordant.
    let mixed = TwoModeCm(Matrix4::new(
        1.5, 0.0, 0.6, 0.0, //
        0.0, 1.5, 0.0, 0.6, //
        0.6, 0.0, 1.5, 0.0, //
        0.0, 0.6, 0.0, 1.5,
    ));
    println!("correlated thermal pair: E_N = {}, D_G = {:.6}", log_negativity(&mixed)?, gaussian_discord(&mixed)?);

    let lopsided = TwoModeCm(Matrix4::new(
        2.0, 0.0, 0.6, 0.0, //
        0.0, 2.0, 0.0, -0.6, //
        0.6, 0.0, 0.8, 0.0, //
        0.0, -0.6, 0.0, 0.8,
    ));
    for side in [MeasuredMode::First, MeasuredMode::Second, MeasuredMode::Either] {
        println!("asymmetric state, measuring {side:?}: D_G = {:.6}", gaussian_discord_measuring(&lopsided, side)?);
    }
    Ok(())
}
