//! `Z[i]`, `f = t² − i`, reduced at the inert prime 3: a nonassociative
//! division algebra over F3 with only the trivial codes.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::codes::all_divisor_codes;
use petit_lattice::finite::classify;
use petit_lattice::lattice::natural_order;
use petit_lattice::presets;

fn main() -> petit_lattice::Result<()> {
    let g = presets::gaussian();
    let lambda = natural_order(&g, &presets::gaussian_conj(&g), None, &[vec![0, -1], vec![0, 0], vec![1, 0]])?;
    let red = lambda.reduce_rational(3)?;
    let bounds = EnumerationBounds::default();
    println!("reduced ring: {}", classify(&red.ring, bounds.max_ring)?.describe());
    let ctx = red.algebra.context();
    println!("f̄ irreducible: {}", ctx.is_irreducible(red.algebra.f(), &bounds)?);
    println!("division algebra: {}", red.algebra.is_division(&bounds)?);
    println!("associative: {}", red.algebra.is_associative());
    let sizes: Vec<u128> = all_divisor_codes(&red.algebra, &bounds)?.iter().map(|c| c.cardinality()).collect();
    println!("code sizes: {sizes:?}");
    Ok(())
}
