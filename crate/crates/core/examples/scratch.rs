use std::time::Instant;

use pistar_core::congruence::{check_congruence_theorem, lattices_coincide};
use pistar_core::Family;

fn main() {
    for (fam, n) in [
        (Family::IStar, 3),
        (Family::PIStar, 3),
    ] {
        let t = Instant::now();
        let r = check_congruence_theorem(fam, n).unwrap();
        println!(
            "{fam:?} n={n}: lattice={} rho={} eq={} traces={} pairs={} ok={} ({:?})",
            r.lattice_size,
            r.rho_family_size,
            r.lattice_equals_rho_family,
            r.traces_classified,
            r.pairs_match,
            r.ok(),
            t.elapsed()
        );
    }
    let t = Instant::now();
    println!("coincide n=3: {} ({:?})", lattices_coincide(3).unwrap(), t.elapsed());
}
