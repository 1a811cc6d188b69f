//! Two-mode Gaussian states: symplectic spectra, purity, local rotations.

use qsync::gaussian::{extract_pair, fixtures, symplectic_eigenvalues, vacuum_cm, ModeId, ModeLayout, TwoModeCm};

fn main() -> qsync::Result<()> {
    let tmsv = TwoModeCm::two_mode_squeezed_vacuum(0.5);
    let (nu_minus, nu_plus) = symplectic_eigenvalues(&tmsv)?;
    println!("two-mode squeezed vacuum r = 0.5: nu = ({nu_minus:.6}, {nu_plus:.6})");

    // Rotating one mode leaves the spectrum alone.
    let turned = tmsv.rotate(1, 0.7);
    println!("  after a local rotation:        nu = {:.6?}", symplectic_eigenvalues(&turned)?);

    let thermal = vacuum_cm(ModeLayout::new(2)?, 2.0);
    let mech = extract_pair(&thermal, ModeId::mechanical(0), ModeId::mechanical(1))?;
    println!("two sites at n_b = 2, mechanical pair block:{}", mech.0);
    println!("  nu = {:.3?}", symplectic_eigenvalues(&mech)?);
    let optical = extract_pair(&thermal, ModeId::optical(0), ModeId::mechanical(0))?;
    println!("  optical-mechanical pair of site 0: nu = {:.3?}", symplectic_eigenvalues(&optical)?);

    let hands = fixtures::squeezed_clock_hands(0.1, [0.3, 1.2]);
    println!("squeezed clock hands physical: {}", hands.check_physical(1e-9).is_ok());
    Ok(())
}
