//! Twisted multiplication, right division and the θ anti-isomorphism in
//! `F9[t; σ]`, `σ` the Frobenius.

use petit_lattice::finite::{induce_map, quotient};
use petit_lattice::order::IdealLattice;
use petit_lattice::presets;
use petit_lattice::skew::SkewContext;

fn main() -> petit_lattice::Result<()> {
    let g = presets::gaussian();
    let f9 = quotient(&g, &IdealLattice::rational(&g, 3)?)?;
    let sigma = induce_map(&presets::gaussian_conj(&g), &f9)?;
    let ctx = SkewContext::new(f9.clone(), &sigma, None)?;

    let i = f9.project(&[0, 1]);
    let t = ctx.t_pow(1);
    let ti = ctx.mul(&t, &ctx.constant(i.clone()));
    println!("t·i = {:?}", ti.coeffs());

    let f = ctx.binomial(4, &f9.project(&[1, 0]));
    let g2 = ctx.poly(vec![f9.project(&[1, 0]), f9.project(&[0, 0]), f9.project(&[1, 0])]);
    let (q, r) = ctx.right_divide(&f, &g2)?;
    println!("t^4 - 1 = q·(t^2 + 1) + r with q = {:?}, r = {:?}", q.coeffs(), r.coeffs());
    assert_eq!(ctx.add(&ctx.mul(&q, &g2), &r), f);

    let a = ctx.poly(vec![i.clone(), f9.project(&[1, 1])]);
    let b = ctx.poly(vec![f9.project(&[2, 0]), i]);
    let lhs = ctx.theta(&ctx.mul(&a, &b))?;
    let rhs = ctx.laurent_mul(&ctx.theta(&b)?, &ctx.theta(&a)?)?;
    println!("θ(ab) = θ(b)θ(a): {}", lhs == rhs);
    Ok(())
}
