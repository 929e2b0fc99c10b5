//! `(F64/F8, σ̄, −1)` from structure constants: the reduction of
//! `(Z[ω]⊗Z[θ], ρ, −1)` at 2 is a split quaternion algebra.

use petit_lattice::bounds::EnumerationBounds;
use petit_lattice::cyclic::{is_split_quaternion, make_cyclic, reduce_cyclic};
use petit_lattice::presets;
use petit_lattice::ring::Ring;

fn main() -> petit_lattice::Result<()> {
    let t = presets::eisenstein_theta7();
    let alg = make_cyclic(&t.order, &t.rho, &t.order.from_int(-1), 2)?;
    let red = reduce_cyclic(&alg, &[alg.embed(&t.order.from_int(2))])?;
    println!("|D̄| = {}", red.size());
    let rep = is_split_quaternion(&red, 2, &EnumerationBounds::default())?;
    let (x, y) = rep.witness.clone().expect("split");
    println!("split: {}; x = {:?}, y = {:?}, x·y = 0: {}", rep.split, x.0, y.0, red.is_zero(&red.mul(&x, &y)));
    Ok(())
}
