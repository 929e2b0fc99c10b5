//! Construction A over the natural order: lift codes, attach the trace-form
//! Gram matrix, find the minimum norm and compare lattices.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::codes::all_principal_ideals;
use petit_lattice::lattice::{ambient_gram, lattice_compare, natural_order, shortest_vector, slot_gram};
use petit_lattice::presets;

fn main() -> petit_lattice::Result<()> {
    let g = presets::gaussian();
    let conj = presets::gaussian_conj(&g);
    let lambda = natural_order(&g, &conj, None, &[vec![0, -1], vec![0, 0], vec![1, 0]])?;
    let red = lambda.reduce_rational(2)?;
    let g0 = ambient_gram(&slot_gram(&g, &conj)?, lambda.m());
    let bounds = EnumerationBounds::default();
    let codes = all_principal_ideals(&red.algebra, &bounds)?;
    let mut lattices = Vec::new();
    for code in &codes {
        let lat = red.lift_code(code)?.with_gram(&g0)?;
        let (norm, _) = shortest_vector(&lat, bounds.max_candidates)?;
        println!("|C| = {:>2}  [Λ : L] = {:>2}  det Gram = {:>5}  min norm = {norm}", code.cardinality(), lat.index(), lat.gram_det().unwrap());
        lattices.push(lat);
    }
    for i in 1..lattices.len() {
        println!("L{} vs L{}: {:?}", i - 1, i, lattice_compare(&lattices[i - 1], &lattices[i])?);
    }
    Ok(())
}
