//! At the ramified prime 2 the residue ring is the chain ring F2[v]/(v²),
//! both `t² − v̄` and `t² − (v̄ + 1)` are irreducible, and the algebra still
//! has zero divisors.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::finite::{classify, induce_map, quotient};
use petit_lattice::order::IdealLattice;
use petit_lattice::petit::PetitAlgebra;
use petit_lattice::presets;
use petit_lattice::ring::Ring;
use petit_lattice::skew::SkewContext;

fn main() -> petit_lattice::Result<()> {
    let g = presets::gaussian();
    let r = quotient(&g, &IdealLattice::rational(&g, 2)?)?;
    let bounds = EnumerationBounds::default();
    println!("residue ring: {}", classify(&r, bounds.max_ring)?.describe());
    let v = r.project(&[1, 1]);
    println!("v² = 0: {}", r.is_zero(&r.mul(&v, &v)));
    let sigma = induce_map(&presets::gaussian_conj(&g), &r)?;
    let ctx = SkewContext::new(r.clone(), &sigma, None)?;
    for c in [v.clone(), r.add(&v, &r.one())] {
        let f = ctx.binomial(2, &c);
        let alg = PetitAlgebra::new(ctx.clone(), f.clone())?;
        let zd = alg.zero_divisor(&bounds)?;
        println!("t² − {:?}: irreducible {}, zero divisor {:?}", c.0, ctx.is_irreducible(&f, &bounds)?, zd.map(|(x, y)| (x.0, y.0)));
    }
    Ok(())
}
