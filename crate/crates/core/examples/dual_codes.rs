//! The dual of a skew constacyclic code as the code of `g⊥`, checked
//! against the brute-force Euclidean dual, and a violated hypothesis.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::codes::dual_divisor;
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
    let p = |c: &[[i128; 2]]| ctx.poly(c.iter().map(|x| f9.project(x)).collect());
    let bounds = EnumerationBounds::default();

    let alg = PetitAlgebra::new(ctx.clone(), p(&[[-1, 0], [0, 0], [0, 0], [0, 0], [1, 0]]))?;
    let rep = dual_divisor(&alg, &p(&[[1, 0], [0, 0], [1, 0]]), &p(&[[-1, 0], [0, 0], [1, 0]]), &bounds)?;
    println!("g⊥ = {:?}", rep.g_perp_monic.iter().map(|c| c.0.clone()).collect::<Vec<_>>());
    println!("|C|·|C⊥| = {}, oracle match: {}", rep.code_cardinality * rep.dual_cardinality, rep.oracle_match);

    let bad = PetitAlgebra::new(ctx.clone(), p(&[[-1, 0], [1, 0], [1, 0]]))?;
    let err = dual_divisor(&bad, &p(&[[1, 0]]), bad.f(), &bounds).unwrap_err();
    println!("t² + t − 1: {err}");
    Ok(())
}
