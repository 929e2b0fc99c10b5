//! Associative cyclic algebras `D = O_K ⊕ O_K·e ⊕ ⋯ ⊕ O_K·e^{n−1}` with
//! `e·x = ρ(x)·e` and `eⁿ = c`, as structure-constant orders.

use serde::Serialize;

use crate::bounds::EnumerationBounds;
use crate::error::{Error, Result};
use crate::finite::{quotient, FiniteRing};
use crate::intmat::{Int, Matrix};
use crate::order::{IdealLattice, IntegralOrder, MapKind, RingMap};
use crate::ring::{self, Ring};

/// A cyclic algebra order over a commutative base order.
///
/// Basis element `b_j·e^i` has index `i·d + j`, where `d` is the base rank.
#[derive(Debug, Clone)]
pub struct CyclicAlgebraOrder {
    pub base: IntegralOrder,
    pub rho: RingMap,
    pub c: Vec<Int>,
    pub n: usize,
    order: IntegralOrder,
}

/// Outcome of the split test, with a replayable zero-divisor pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport<E> {
    pub split: bool,
    pub witness: Option<(E, E)>,
}

/// Build `(K/F, ρ, c)` of degree `n`; the assembled table is checked for
/// associativity by the order constructor.
pub fn make_cyclic(base: &IntegralOrder, rho: &RingMap, c: &[Int], n: usize) -> Result<CyclicAlgebraOrder> {
    let d = base.rank();
    if n == 0 {
        return Err(Error::RhoOrderWrong("degree must be positive".into()));
    }
    if !base.is_commutative() {
        return Err(Error::NotCommutative);
    }
    rho.verify(base)?;
    let order_of_rho = ring::map_order(base, &rho.matrix, n.max(1) * 4);
    if order_of_rho != Some(n) {
        return Err(Error::RhoOrderWrong(format!("expected {n}, found {order_of_rho:?}")));
    }
    if c.len() != d || c.iter().all(|&x| x == 0) {
        return Err(Error::CNotFixed);
    }
    if rho.apply(base, &c.to_vec()) != c {
        return Err(Error::CNotFixed);
    }
    let rho_pow: Vec<Matrix> = (0..n).map(|i| ring::map_power(base, &rho.matrix, i)).collect();
    let rank = n * d;
    let mut table = vec![vec![vec![0; rank]; rank]; rank];
    for i in 0..n {
        for j in 0..d {
            for l in 0..n {
                for k in 0..d {
                    // (b_j e^i)(b_k e^l) = b_j ρ^i(b_k) e^{i+l}, with e^n = c
                    let bk = ring::apply_map(base, &rho_pow[i], &base.basis(k));
                    let mut coeff = base.mul(&base.basis(j), &bk);
                    let mut slot = i + l;
                    if slot >= n {
                        coeff = base.mul(&coeff, &c.to_vec());
                        slot -= n;
                    }
                    let out = &mut table[i * d + j][l * d + k];
                    out[slot * d..(slot + 1) * d].copy_from_slice(&coeff);
                }
            }
        }
    }
    let mut one = vec![0; rank];
    one[..d].copy_from_slice(base.one_coords());
    let order = IntegralOrder::new(rank, table, one).map_err(|e| Error::AssociativityFail(e.to_string()))?;
    Ok(CyclicAlgebraOrder { base: base.clone(), rho: rho.clone(), c: c.to_vec(), n, order })
}

impl CyclicAlgebraOrder {
    pub fn order(&self) -> &IntegralOrder {
        &self.order
    }

    /// `x ∈ O_K` placed in slot 0.
    pub fn embed(&self, x: &[Int]) -> Vec<Int> {
        self.from_slots(&[x.to_vec()])
    }

    /// The element `e`.
    pub fn e(&self) -> Vec<Int> {
        let d = self.base.rank();
        let mut v = vec![0; self.order.rank()];
        if self.n == 1 {
            v[..d].copy_from_slice(&self.c);
        } else {
            v[d..2 * d].copy_from_slice(self.base.one_coords());
        }
        v
    }

    /// Left `O_K`-coefficients `x = Σ xᵢ eⁱ`.
    pub fn slots(&self, x: &[Int]) -> Vec<Vec<Int>> {
        x.chunks(self.base.rank()).map(|c| c.to_vec()).collect()
    }

    pub fn from_slots(&self, slots: &[Vec<Int>]) -> Vec<Int> {
        let d = self.base.rank();
        let mut v = vec![0; self.order.rank()];
        for (i, s) in slots.iter().enumerate() {
            v[i * d..(i + 1) * d].copy_from_slice(s);
        }
        v
    }

    /// `ρ^k` on the base, `k` taken modulo `n`.
    pub fn rho_pow(&self, x: &[Int], k: i64) -> Vec<Int> {
        let k = k.rem_euclid(self.n as i64) as usize;
        ring::apply_map(&self.base, &ring::map_power(&self.base, &self.rho.matrix, k), &x.to_vec())
    }

    /// Whether `x` commutes with every basis element of `D`.
    pub fn is_central(&self, x: &[Int]) -> bool {
        let x = x.to_vec();
        (0..self.order.rank()).all(|k| {
            let b = self.order.basis(k);
            self.order.mul(&x, &b) == self.order.mul(&b, &x)
        })
    }
}

/// Extend σ on the base to `D` coefficientwise:
/// `σ(Σ xᵢeⁱ) = Σ σ(xᵢ)eⁱ`.
pub fn extend_sigma(sigma: &RingMap, alg: &CyclicAlgebraOrder) -> Result<RingMap> {
    let base = &alg.base;
    sigma.verify(base)?;
    for g in base.generators() {
        if sigma.apply(base, &alg.rho.apply(base, &g)) != alg.rho.apply(base, &sigma.apply(base, &g)) {
            return Err(Error::DoesNotCommute);
        }
    }
    if sigma.apply(base, &alg.c) != alg.c {
        return Err(Error::CMoved);
    }
    let d = base.rank();
    let rank = alg.order.rank();
    let mut m = vec![vec![0; rank]; rank];
    for i in 0..alg.n {
        for r in 0..d {
            for s in 0..d {
                m[i * d + r][i * d + s] = sigma.matrix[r][s];
            }
        }
    }
    RingMap::new(&alg.order, m, MapKind::Endomorphism)
}

/// `D / 𝔭D` for an ideal generated by the given central elements of `D`
/// (usually elements of the fixed subring of the base, embedded in slot 0).
pub fn reduce_cyclic(alg: &CyclicAlgebraOrder, generators: &[Vec<Int>]) -> Result<FiniteRing> {
    for g in generators {
        if !alg.is_central(g) {
            return Err(Error::NotCentral(format!("{g:?}")));
        }
    }
    let ideal = IdealLattice::generated_by(&alg.order, generators)?;
    quotient(&alg.order, &ideal)
}

/// A finite algebra of degree 2 over its center is split iff it has zero
/// divisors. Works for reduced cyclic algebras and for Petit algebras alike.
pub fn is_split_quaternion<R: Ring>(reduced: &R, degree: usize, bounds: &EnumerationBounds) -> Result<SplitReport<R::Elem>> {
    if degree != 2 {
        return Err(Error::WrongShape(format!("degree {degree} is not 2")));
    }
    let witness = ring::zero_divisor(reduced, bounds)?;
    Ok(SplitReport { split: witness.is_some(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::induce_map;
    use crate::presets;

    #[test]
    fn degree_one_is_the_base() {
        let g = presets::gaussian();
        let alg = make_cyclic(&g, &RingMap::identity(&g), &[1, 0], 1).unwrap();
        assert_eq!(alg.order().table(), g.table());
    }

    #[test]
    fn quaternion_type_orders() {
        let g = presets::gaussian();
        let conj = presets::gaussian_conj(&g);
        for c in [[-1, 0], [2, 0]] {
            let alg = make_cyclic(&g, &conj, &c, 2).unwrap();
            let o = alg.order();
            assert_eq!(o.rank(), 4);
            assert!(!o.is_commutative());
            let e = alg.e();
            assert_eq!(o.mul(&e, &e), alg.embed(&c));
            for k in 0..2 {
                let x = alg.embed(&g.basis(k));
                let lhs = o.mul(&e, &x);
                let rhs = o.mul(&alg.embed(&conj.apply(&g, &g.basis(k))), &e);
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(make_cyclic(&g, &conj, &[0, 1], 2).unwrap_err(), Error::CNotFixed);
        assert!(matches!(make_cyclic(&g, &conj, &[1, 0], 3), Err(Error::RhoOrderWrong(_))));
    }

    #[test]
    fn extension_errors_and_sigma_power() {
        let t = presets::eisenstein_theta7();
        let alg = make_cyclic(&t.order, &t.rho, &t.order.from_int(-1), 2).unwrap();
        let s = extend_sigma(&t.sigma, &alg).unwrap();
        assert_eq!(ring::map_order(alg.order(), &s.matrix, 10), Some(3));
        let id = extend_sigma(&RingMap::identity(&t.order), &alg).unwrap();
        assert_eq!(id.matrix, crate::intmat::identity(12));
        // on the base, σ moves θ, so using it as c fails
        let theta = t.order.basis(2);
        let alg2 = make_cyclic(&t.order, &t.rho, &theta, 2).unwrap();
        assert_eq!(extend_sigma(&t.sigma, &alg2).unwrap_err(), Error::CMoved);
    }

    #[test]
    fn split_quaternion_over_f8() {
        let t = presets::eisenstein_theta7();
        let alg = make_cyclic(&t.order, &t.rho, &t.order.from_int(-1), 2).unwrap();
        let two = alg.embed(&t.order.from_int(2));
        let red = reduce_cyclic(&alg, &[two]).unwrap();
        assert_eq!(red.size(), 4096);
        let rep = is_split_quaternion(&red, alg.n, &EnumerationBounds::default()).unwrap();
        let (x, y) = rep.witness.clone().unwrap();
        assert!(rep.split);
        assert!(red.is_zero(&red.mul(&x, &y)) && !red.is_zero(&x) && !red.is_zero(&y));
        let s = extend_sigma(&t.sigma, &alg).unwrap();
        induce_map(&s, &red).unwrap();
    }

    #[test]
    fn finite_quaternions_split_but_the_inert_petit_algebra_does_not() {
        // every quaternion algebra over a finite field is split
        let g = presets::gaussian();
        let alg = make_cyclic(&g, &presets::gaussian_conj(&g), &[-1, 0], 2).unwrap();
        let red = reduce_cyclic(&alg, &[alg.embed(&[3, 0])]).unwrap();
        assert!(is_split_quaternion(&red, alg.n, &EnumerationBounds::default()).unwrap().split);
        assert!(matches!(reduce_cyclic(&alg, &[alg.embed(&[0, 1])]), Err(Error::NotCentral(_))));
        // the nonassociative (F9/F3, σ̄, ī) has no zero divisors
        let r = quotient(&g, &IdealLattice::rational(&g, 3).unwrap()).unwrap();
        let s = induce_map(&presets::gaussian_conj(&g), &r).unwrap();
        let ctx = crate::skew::SkewContext::new(r.clone(), &s, None).unwrap();
        let f = ctx.binomial(2, &r.project(&[0, 1]));
        let a = crate::petit::PetitAlgebra::new(ctx, f).unwrap();
        let rep = is_split_quaternion(&a, 2, &EnumerationBounds::default()).unwrap();
        assert!(!rep.split && rep.witness.is_none());
    }
}
