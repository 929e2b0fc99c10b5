//! Codeword matrices `λ(x)` over `Z[i]` and `λ(M(x))` over the quaternion
//! order `(Z[i, √2], ρ, −1)`, with exact determinants.

use petit_lattice::cyclic::make_cyclic;
use petit_lattice::lattice::natural_order;
use petit_lattice::presets;
use petit_lattice::ring::Ring;
use petit_lattice::stbc::{CyclicStbc, DetMode, IteratedStbc};

fn main() -> petit_lattice::Result<()> {
    let g = presets::gaussian();
    let lambda = natural_order(&g, &presets::gaussian_conj(&g), None, &[vec![0, -1], vec![0, 0], vec![1, 0]])?;
    let s = CyclicStbc::new(lambda)?;
    let m = s.matrix(&[1, 2, 0, -1])?;
    println!("λ(x) = {:?}\ndet = {:?}", m.entries, m.det);

    let t = presets::gaussian_sqrt2();
    // basis element 1 is 1 ⊗ √2
    let d = t.order.basis(1);
    let alg = make_cyclic(&t.order, &t.rho, &t.order.from_int(-1), 2)?;
    let q = IteratedStbc::new(alg, &t.sigma, &d, 2)?;
    let x: Vec<i128> = (0..16).map(|k| (k % 5) as i128 - 2).collect();
    let mx = q.matrix(&x)?;
    println!("λ(M(x)) is {}×{}, det = {:?}", mx.size, mx.size, mx.det);
    println!("det ∈ O_F: {}", q.det_membership(&x, DetMode::DInOF)?.member);
    Ok(())
}

