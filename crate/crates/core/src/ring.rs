//! The coefficient-ring interface shared by integral orders and their finite
//! quotients.
//!
//! Every supported ring is a finitely generated abelian group
//! `Z^a ⊕ Z/d₁ ⊕ … ⊕ Z/d_b` with a bilinear multiplication. Elements expose
//! integer coordinates on a fixed generating set, which is what maps
//! (σ, δ, conjugation) act on.

use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;

use crate::bounds::EnumerationBounds;
use crate::error::{Error, Result};
use crate::intmat::{self, Int, Matrix};

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Number of additive generators.
    fn rank(&self) -> usize;
    /// Order of each additive generator; zero for a free summand.
    fn moduli(&self) -> Vec<Int>;
    fn coords(&self, a: &Self::Elem) -> Vec<Int>;
    /// Build an element from (unreduced) coordinates.
    fn from_coords(&self, c: &[Int]) -> Self::Elem;
    fn is_commutative(&self) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_int(&self, n: Int) -> Self::Elem {
        let one = self.coords(&self.one());
        self.from_coords(&one.iter().map(|x| x * n).collect::<Vec<_>>())
    }

    fn generators(&self) -> Vec<Self::Elem> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                self.from_coords(&c)
            })
            .collect()
    }

    fn is_finite(&self) -> bool {
        self.moduli().iter().all(|&m| m > 0)
    }

    fn cardinality(&self) -> Option<u128> {
        self.is_finite()
            .then(|| self.moduli().iter().map(|&m| m as u128).product())
    }

    /// All elements in lexicographic coordinate order (finite rings only).
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        if !self.is_finite() {
            return None;
        }
        Some(
            enumerate_box(&self.moduli())
                .map(|c| self.from_coords(&c))
                .collect(),
        )
    }

    /// Matrix of `y ↦ a·y` on coordinates: row `k` is `a·g_k`.
    fn left_mul_rows(&self, a: &Self::Elem) -> Matrix {
        self.generators()
            .iter()
            .map(|g| self.coords(&self.mul(a, g)))
            .collect()
    }

    /// Two-sided inverse of `a`, if it is a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let mut rows = self.left_mul_rows(a);
        let moduli = self.moduli();
        let n = self.rank();
        let k = rows.len();
        for (j, &m) in moduli.iter().enumerate() {
            if m > 0 {
                let mut r = vec![0; n];
                r[j] = m;
                rows.push(r);
            }
        }
        let c = intmat::solve_combination(&rows, &self.coords(&self.one()))?;
        let y = self.from_coords(&c[..k]);
        (self.mul(&y, a) == self.one()).then_some(y)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// Iterate the integer box `[0, m₀) × … × [0, m_{k-1})` in lexicographic order,
/// first coordinate slowest.
pub fn enumerate_box(moduli: &[Int]) -> impl Iterator<Item = Vec<Int>> + '_ {
    let total: u128 = moduli.iter().map(|&m| m as u128).product();
    (0..total).map(move |mut idx| {
        let mut c = vec![0; moduli.len()];
        for (slot, &m) in c.iter_mut().zip(moduli).rev() {
            *slot = (idx % m as u128) as Int;
            idx /= m as u128;
        }
        c
    })
}

/// Apply a coordinate map (row `j` = image of generator `j`).
pub fn apply_map<R: Ring>(ring: &R, map: &Matrix, a: &R::Elem) -> R::Elem {
    ring.from_coords(&intmat::vec_mat(&ring.coords(a), map))
}

/// Multiplicative order of a coordinate map, up to `limit`.
pub fn map_order<R: Ring>(ring: &R, map: &Matrix, limit: usize) -> Option<usize> {
    let gens = ring.generators();
    let mut images = gens.clone();
    for k in 1..=limit {
        images = images.iter().map(|g| apply_map(ring, map, g)).collect();
        if images == gens {
            return Some(k);
        }
    }
    None
}

/// `map^k` as a coordinate matrix.
pub fn map_power<R: Ring>(ring: &R, map: &Matrix, k: usize) -> Matrix {
    ring.generators()
        .iter()
        .map(|g| {
            let mut x = g.clone();
            for _ in 0..k {
                x = apply_map(ring, map, &x);
            }
            ring.coords(&x)
        })
        .collect()
}

/// Check the endomorphism laws on generator pairs and on the unity.
pub fn check_endomorphism<R: Ring>(ring: &R, map: &Matrix) -> std::result::Result<(), String> {
    let gens = ring.generators();
    if apply_map(ring, map, &ring.one()) != ring.one() {
        return Err("map(1) != 1".into());
    }
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            let lhs = apply_map(ring, map, &ring.mul(a, b));
            let rhs = ring.mul(&apply_map(ring, map, a), &apply_map(ring, map, b));
            if lhs != rhs {
                return Err(format!("map(b{i}·b{j}) != map(b{i})·map(b{j})"));
            }
        }
    }
    Ok(())
}

/// Check `δ(ab) = σ(a)δ(b) + δ(a)b` on generator pairs.
pub fn check_derivation<R: Ring>(ring: &R, delta: &Matrix, sigma: &Matrix) -> std::result::Result<(), String> {
    let gens = ring.generators();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            let lhs = apply_map(ring, delta, &ring.mul(a, b));
            let rhs = ring.add(
                &ring.mul(&apply_map(ring, sigma, a), &apply_map(ring, delta, b)),
                &ring.mul(&apply_map(ring, delta, a), b),
            );
            if lhs != rhs {
                return Err(format!("derivation law fails on (b{i}, b{j})"));
            }
        }
    }
    Ok(())
}

/// A pair of nonzero `x, y` with `x·y = 0` in a finite ring (associative or
/// not), scanning `x` in lexicographic order.
///
/// `L_x` is injective iff its image has full size, and a kernel vector of a
/// non-injective `L_x` is the partner `y`.
pub fn zero_divisor<R: Ring>(ring: &R, bounds: &EnumerationBounds) -> Result<Option<(R::Elem, R::Elem)>> {
    let card = ring.cardinality().ok_or(Error::InfiniteRing)?;
    bounds.elements("ring elements", card)?;
    let moduli = ring.moduli();
    let elems = ring.elements().unwrap();
    Ok(elems.par_iter().filter(|x| !ring.is_zero(x)).find_map_first(|x| {
        let rows = ring.left_mul_rows(x);
        if intmat::subgroup_order(&rows, &moduli) == card {
            return None;
        }
        intmat::kernel(&rows, &moduli)
            .into_iter()
            .map(|z| ring.from_coords(&z))
            .find(|y| !ring.is_zero(y))
            .map(|y| (x.clone(), y))
    }))
}
