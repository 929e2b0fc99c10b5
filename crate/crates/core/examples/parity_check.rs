//! Parity checks for a central `h`: over F9 with the Frobenius, `t⁴ − 1 =
//! (t² + 1)(t² − 1)` and `h = t² − 1` is central, so `c ∈ C ⟺ c∘h = 0`.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::codes::{code_from_divisor, min_distance, parity_check_verify};
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
    let (one, zero) = (f9.project(&[1, 0]), f9.project(&[0, 0]));
    let f = ctx.binomial(4, &one);
    let gp = ctx.poly(vec![one.clone(), zero.clone(), one.clone()]);
    let h = ctx.poly(vec![f9.project(&[-1, 0]), zero, one]);
    let alg = PetitAlgebra::new(ctx.clone(), f)?;
    let bounds = EnumerationBounds::default();
    let code = code_from_divisor(&alg, &gp, &bounds)?;
    println!("h central: {}", ctx.is_central(&h));
    println!("|C| = {}, d = {}", code.cardinality(), min_distance(&f9, &code)?);
    println!("c ∈ C ⟺ c∘h = 0 on all of S^4: {}", parity_check_verify(&alg, &gp, &h, &bounds)?);
    Ok(())
}
