//! At the split prime 5 the residue ring is F5 × F5, σ̄ swaps the factors and
//! an idempotent generates a proper left ideal whose lift sits strictly
//! between 5Λ and Λ.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::codes::principal_left_ideal;
use petit_lattice::finite::crt_decompose;
use petit_lattice::intmat;
use petit_lattice::lattice::{lattice_compare, natural_order, IntegerLattice};
use petit_lattice::presets;

fn main() -> petit_lattice::Result<()> {
    let g = presets::gaussian();
    let lambda = natural_order(&g, &presets::gaussian_conj(&g), None, &[vec![0, -1], vec![0, 0], vec![1, 0]])?;
    let red = lambda.reduce_rational(5)?;
    let bounds = EnumerationBounds::default();
    let factors = crt_decompose(&red.ring, bounds.max_ring)?;
    let e = factors[0].idempotent.clone();
    println!("CRT factor sizes: {:?}", factors.iter().map(|f| f.local.size()).collect::<Vec<_>>());
    println!("σ̄(e) = e' : {}", red.algebra.context().sigma(&e) == factors[1].idempotent);

    let code = principal_left_ideal(&red.algebra, &red.algebra.constant(e), &bounds)?;
    let lat = red.lift_code(&code)?;
    let full = IntegerLattice::from_rows(&intmat::identity(4), 4)?;
    let p_lambda = IntegerLattice::from_rows(&red.p_lambda, 4)?;
    println!("|C| = {}, [Λ : L] = {}", code.cardinality(), lat.index());
    println!("L vs Λ: {:?}", lattice_compare(&lat, &full)?);
    println!("5Λ vs L: {:?}", lattice_compare(&p_lambda, &lat)?);
    println!("index law: {}", red.index_law_holds(&lat, &code));
    Ok(())
}
