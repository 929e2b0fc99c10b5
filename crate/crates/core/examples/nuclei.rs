//! Nuclei and center of Petit algebras, and the link between associativity
//! and two-sided `f`.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::finite::{induce_map, quotient};
use petit_lattice::order::IdealLattice;
use petit_lattice::petit::PetitAlgebra;
use petit_lattice::presets;
use petit_lattice::skew::SkewContext;

fn main() -> petit_lattice::Result<()> {
    let g = presets::gaussian();
    let f9 = quotient(&g, &IdealLattice::rational(&g, 3)?)?;
    let sigma = induce_map(&presets::gaussian_conj(&g), &f9)?;
    let ctx = SkewContext::new(f9.clone(), &sigma, None)?;
    let bounds = EnumerationBounds::default();
    for (name, c) in [("t² − i", [0, 1]), ("t² − 1", [1, 0])] {
        let f = ctx.binomial(2, &f9.project(&c));
        let alg = PetitAlgebra::new(ctx.clone(), f.clone())?;
        let n = alg.nuclei(&bounds)?;
        println!(
            "{name}: two-sided {}, associative {}, |Nuc_l| {:?}, |Nuc_r| {:?}, |Z| {:?}",
            ctx.is_two_sided(&f)?,
            alg.is_associative(),
            n.left.cardinality,
            n.right.cardinality,
            n.center.cardinality
        );
    }
    Ok(())
}
