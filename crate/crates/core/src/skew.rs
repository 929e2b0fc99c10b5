//! Skew polynomial rings `R[t; σ, δ]` with `t·a = σ(a)·t + δ(a)`.
//!
//! Polynomials are plain coefficient vectors (lowest degree first); all
//! arithmetic goes through a [`SkewContext`], which owns the coefficient ring
//! and the twisting maps.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::EnumerationBounds;
use crate::error::{Error, Result};
use crate::intmat::{self, Int, Matrix};
use crate::order::{MapKind, RingMap};
use crate::ring::{self, enumerate_box, Ring};

/// Degree of a polynomial, with `deg 0 = −∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `deg a + deg b` with `−∞` absorbing.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

/// A skew polynomial; the highest stored coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SkewPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> SkewPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficients padded with `zero` to length `n`.
    pub fn padded(&self, n: usize, zero: &E) -> Vec<E> {
        let mut c = self.coeffs.clone();
        c.resize(n.max(c.len()), zero.clone());
        c
    }
}

/// The image of `θ`: a polynomial in `s = t⁻¹` with `s·a = σ⁻¹(a)·s`.
/// Coefficient `i` belongs to `s^i = t^{−i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LaurentSkewPoly<E> {
    pub poly: SkewPoly<E>,
}

/// A coefficient ring with an injective endomorphism σ and an optional
/// σ-derivation δ.
#[derive(Debug, Clone)]
pub struct SkewContext<R: Ring> {
    ring: R,
    sigma: Matrix,
    sigma_order: Option<usize>,
    sigma_inv: Option<Matrix>,
    delta: Option<Matrix>,
}

/// Largest order of σ searched for when inverting it.
const SIGMA_ORDER_LIMIT: usize = 1024;

impl<R: Ring> SkewContext<R> {
    /// Verify σ (endomorphism, injective) and δ (σ-derivation) and build the
    /// context. A zero δ is dropped.
    pub fn new(ring: R, sigma: &RingMap, delta: Option<&RingMap>) -> Result<Self> {
        if matches!(sigma.kind, MapKind::Derivation { .. }) {
            return Err(Error::BadMap("sigma must be an endomorphism".into()));
        }
        sigma.verify(&ring)?;
        let injective = match ring.cardinality() {
            Some(n) => intmat::subgroup_order(&sigma.matrix, &ring.moduli()) == n,
            None => intmat::det(&sigma.matrix) != 0,
        };
        if !injective {
            return Err(Error::BadMap("sigma is not injective".into()));
        }
        let delta = match delta {
            Some(d) if !d.is_zero() => {
                ring::check_derivation(&ring, &d.matrix, &sigma.matrix).map_err(Error::BadMap)?;
                Some(d.matrix.clone())
            }
            _ => None,
        };
        let sigma_order = ring::map_order(&ring, &sigma.matrix, SIGMA_ORDER_LIMIT);
        let sigma_inv = sigma_order.map(|k| ring::map_power(&ring, &sigma.matrix, k - 1));
        Ok(SkewContext { ring, sigma: sigma.matrix.clone(), sigma_order, sigma_inv, delta })
    }

    /// `R[t; id, 0]`.
    pub fn untwisted(ring: R) -> Self {
        let id = RingMap::identity(&ring);
        Self::new(ring, &id, None).expect("identity is an automorphism")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn sigma_matrix(&self) -> &Matrix {
        &self.sigma
    }

    pub fn sigma_inverse_matrix(&self) -> Option<&Matrix> {
        self.sigma_inv.as_ref()
    }

    pub fn delta_matrix(&self) -> Option<&Matrix> {
        self.delta.as_ref()
    }

    pub fn has_derivation(&self) -> bool {
        self.delta.is_some()
    }

    /// Multiplicative order of σ, if finite.
    pub fn sigma_order(&self) -> Option<usize> {
        self.sigma_order
    }

    pub fn sigma(&self, a: &R::Elem) -> R::Elem {
        ring::apply_map(&self.ring, &self.sigma, a)
    }

    pub fn delta(&self, a: &R::Elem) -> R::Elem {
        match &self.delta {
            Some(d) => ring::apply_map(&self.ring, d, a),
            None => self.ring.zero(),
        }
    }

    /// `σ^k(a)` for any integer `k`; negative powers need σ of finite order.
    pub fn sigma_pow(&self, a: &R::Elem, k: i64) -> Result<R::Elem> {
        let k = match self.sigma_order {
            Some(n) => k.rem_euclid(n as i64) as usize,
            None if k >= 0 => k as usize,
            None => return Err(Error::SigmaNotInvertible),
        };
        let mut x = a.clone();
        for _ in 0..k {
            x = self.sigma(&x);
        }
        Ok(x)
    }

    pub fn sigma_inv(&self, a: &R::Elem) -> Result<R::Elem> {
        self.sigma_pow(a, -1)
    }

    // ---- construction ----

    /// Polynomial from coefficients, lowest degree first; trailing zeros are dropped.
    pub fn poly(&self, mut coeffs: Vec<R::Elem>) -> SkewPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero(&self) -> SkewPoly<R::Elem> {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> SkewPoly<R::Elem> {
        self.constant(self.ring.one())
    }

    pub fn constant(&self, a: R::Elem) -> SkewPoly<R::Elem> {
        self.poly(vec![a])
    }

    /// `a·t^k`.
    pub fn monomial(&self, a: R::Elem, k: usize) -> SkewPoly<R::Elem> {
        let mut c = vec![self.ring.zero(); k];
        c.push(a);
        self.poly(c)
    }

    /// `t^k`.
    pub fn t_pow(&self, k: usize) -> SkewPoly<R::Elem> {
        self.monomial(self.ring.one(), k)
    }

    /// `t^m − c`.
    pub fn binomial(&self, m: usize, c: &R::Elem) -> SkewPoly<R::Elem> {
        self.sub(&self.t_pow(m), &self.constant(c.clone()))
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &SkewPoly<R::Elem>, b: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.ring.zero();
        let c = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.ring.add(x, y)
            })
            .collect();
        self.poly(c)
    }

    pub fn neg(&self, a: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.poly(a.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn sub(&self, a: &SkewPoly<R::Elem>, b: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.add(a, &self.neg(b))
    }

    /// `a·p` for a constant `a`, coefficientwise on the left.
    pub fn scale_left(&self, a: &R::Elem, p: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.poly(p.coeffs.iter().map(|c| self.ring.mul(a, c)).collect())
    }

    /// `t·p`, using `t·c·t^k = σ(c)·t^{k+1} + δ(c)·t^k`.
    pub fn t_times(&self, p: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        let n = p.coeffs.len();
        let mut out = vec![self.ring.zero(); n + 1];
        for (k, c) in p.coeffs.iter().enumerate() {
            out[k + 1] = self.ring.add(&out[k + 1], &self.sigma(c));
            if self.delta.is_some() {
                out[k] = self.ring.add(&out[k], &self.delta(c));
            }
        }
        self.poly(out)
    }

    /// Product in `R[t; σ, δ]`: `a·b = Σ aᵢ·(tⁱ·b)`.
    pub fn mul(&self, a: &SkewPoly<R::Elem>, b: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        let mut acc = self.zero();
        let mut q = b.clone();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if !self.ring.is_zero(ai) {
                acc = self.add(&acc, &self.scale_left(ai, &q));
            }
            if i + 1 < a.coeffs.len() {
                q = self.t_times(&q);
            }
        }
        acc
    }

    /// Right division `g = q·f + r` with `deg r < deg f`.
    ///
    /// The leading term `c·t^{k−m}` of each quotient step must satisfy
    /// `c·σ^{k−m}(u) = lead(r)` where `u = lead(f)`, so every `σ^j(u)` that is
    /// needed must be a unit.
    pub fn right_divide(
        &self,
        g: &SkewPoly<R::Elem>,
        f: &SkewPoly<R::Elem>,
    ) -> Result<(SkewPoly<R::Elem>, SkewPoly<R::Elem>)> {
        let m = f.degree().finite().ok_or(Error::LeadingCoeffNotInvertible)?;
        let u = f.leading().unwrap().clone();
        let mut inverses: Vec<Option<R::Elem>> = Vec::new();
        let mut q = vec![self.ring.zero(); g.coeffs.len().saturating_sub(m)];
        let mut r = g.clone();
        while let Some(k) = r.degree().finite().filter(|&k| k >= m) {
            let j = k - m;
            while inverses.len() <= j {
                let s = self.sigma_pow(&u, inverses.len() as i64)?;
                inverses.push(self.ring.inverse(&s));
            }
            let inv = inverses[j].as_ref().ok_or(Error::LeadingCoeffNotInvertible)?;
            let c = self.ring.mul(r.leading().unwrap(), inv);
            let step = self.mul(&self.monomial(c.clone(), j), f);
            r = self.sub(&r, &step);
            q[j] = self.ring.add(&q[j], &c);
        }
        Ok((self.poly(q), r))
    }

    pub fn right_remainder(&self, g: &SkewPoly<R::Elem>, f: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        Ok(self.right_divide(g, f)?.1)
    }

    /// Whether `h` divides `f` on the right (`f = q·h`).
    pub fn is_right_divisor(&self, h: &SkewPoly<R::Elem>, f: &SkewPoly<R::Elem>) -> Result<bool> {
        Ok(self.right_remainder(f, h)?.is_zero())
    }

    /// Whether `p` is monic.
    pub fn is_monic(&self, p: &SkewPoly<R::Elem>) -> bool {
        p.leading().is_some_and(|c| *c == self.ring.one())
    }

    /// `u⁻¹·f` for the leading coefficient `u`, when `u` is a unit.
    pub fn make_monic(&self, f: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        let u = f.leading().ok_or(Error::NotMonic)?;
        let inv = self.ring.inverse(u).ok_or(Error::LeadingCoeffNotInvertible)?;
        Ok(self.scale_left(&inv, f))
    }

    /// `R·f` is a two-sided ideal iff `f·a` and `f·t` lie in `R·f` for every
    /// additive generator `a` of the coefficient ring.
    pub fn is_two_sided(&self, f: &SkewPoly<R::Elem>) -> Result<bool> {
        let mut probes: Vec<SkewPoly<R::Elem>> =
            self.ring.generators().into_iter().map(|a| self.constant(a)).collect();
        probes.push(self.t_pow(1));
        for p in &probes {
            if !self.right_remainder(&self.mul(f, p), f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `h` commutes with every additive generator of the ring and with `t`.
    pub fn is_central(&self, h: &SkewPoly<R::Elem>) -> bool {
        let mut probes: Vec<SkewPoly<R::Elem>> =
            self.ring.generators().into_iter().map(|a| self.constant(a)).collect();
        probes.push(self.t_pow(1));
        probes.iter().all(|p| self.mul(h, p) == self.mul(p, h))
    }

    // ---- enumeration (finite rings) ----

    fn ring_elements(&self) -> Result<Vec<R::Elem>> {
        self.ring.elements().ok_or(Error::InfiniteRing)
    }

    /// All monic polynomials of degree `l`, in lexicographic order of their
    /// lower coefficients (constant term slowest).
    pub fn monic_of_degree(&self, l: usize, bounds: &EnumerationBounds) -> Result<Vec<SkewPoly<R::Elem>>> {
        let elems = self.ring_elements()?;
        let q = elems.len() as u128;
        EnumerationBounds::check("monic polynomials", q.saturating_pow(l as u32), bounds.max_candidates)?;
        let radix = vec![elems.len() as Int; l];
        Ok(enumerate_box(&radix)
            .map(|idx| {
                let mut c: Vec<R::Elem> = idx.iter().map(|&i| elems[i as usize].clone()).collect();
                c.push(self.ring.one());
                SkewPoly { coeffs: c }
            })
            .collect())
    }

    /// All monic right divisors of `f`, ordered by degree then coefficients.
    /// Includes `1` and `f` itself.
    pub fn monic_right_divisors(
        &self,
        f: &SkewPoly<R::Elem>,
        bounds: &EnumerationBounds,
    ) -> Result<Vec<SkewPoly<R::Elem>>> {
        let m = f.degree().finite().ok_or(Error::NotMonic)?;
        let mut out = Vec::new();
        for l in 0..=m {
            let cands = self.monic_of_degree(l, bounds)?;
            let found: Vec<SkewPoly<R::Elem>> = cands
                .into_par_iter()
                .filter(|h| self.is_right_divisor(h, f).unwrap_or(false))
                .collect();
            out.extend(found);
        }
        Ok(out)
    }

    /// Whether every nonzero coefficient is a unit (finite rings only).
    pub fn is_division_ring(&self) -> Result<bool> {
        let elems = self.ring_elements()?;
        Ok(elems
            .par_iter()
            .filter(|x| !self.ring.is_zero(x))
            .all(|x| self.ring.inverse(x).is_some()))
    }

    /// Solve `f = g·h` for `g` with `deg g < deg f`, treating `g ↦ g·h` as an
    /// additive map on coefficient coordinates.
    fn left_cofactor(&self, f: &SkewPoly<R::Elem>, h: &SkewPoly<R::Elem>, m: usize) -> Option<SkewPoly<R::Elem>> {
        let l = h.degree().finite()?;
        let width = m + l;
        let rank = self.ring.rank();
        let zero = self.ring.zero();
        let flat = |p: &SkewPoly<R::Elem>| -> Vec<Int> {
            p.padded(width, &zero).iter().flat_map(|c| self.ring.coords(c)).collect()
        };
        let gens = self.ring.generators();
        let mut rows = Vec::with_capacity(m * rank);
        for i in 0..m {
            for g in &gens {
                rows.push(flat(&self.mul(&self.monomial(g.clone(), i), h)));
            }
        }
        let moduli = self.ring.moduli();
        for slot in 0..width {
            for (k, &md) in moduli.iter().enumerate() {
                if md > 0 {
                    let mut r = vec![0; width * rank];
                    r[slot * rank + k] = md;
                    rows.push(r);
                }
            }
        }
        let x = intmat::solve_combination(&rows, &flat(f))?;
        let coeffs = (0..m)
            .map(|i| self.ring.from_coords(&x[i * rank..(i + 1) * rank]))
            .collect();
        let g = self.poly(coeffs);
        debug_assert_eq!(self.mul(&g, h), *f);
        Some(g)
    }

    /// A factorization `f = g·h` with `1 ≤ deg g, deg h < deg f`, if one exists.
    ///
    /// A nonzero `f` is replaced by `u⁻¹f` for its leading coefficient `u`,
    /// which does not change whether it factors since `f = gh` iff
    /// `u⁻¹f = (u⁻¹g)h`.
    ///
    /// Over a finite division ring every factorization has
    /// `lead(g)·σ^k(lead(h)) = 1`, so `lead(h)` is a unit and
    /// `f = (g·lead(h))·(lead(h)⁻¹h)` has a monic right factor; then only monic
    /// `h` need be tried. Over other rings a degree drop `deg g + deg h > deg f`
    /// is possible, so every `h` of degree `1..m` is tried and the cofactor `g`
    /// is found by an exact linear solve.
    pub fn find_factorization(
        &self,
        f: &SkewPoly<R::Elem>,
        bounds: &EnumerationBounds,
    ) -> Result<Option<(SkewPoly<R::Elem>, SkewPoly<R::Elem>)>> {
        let card = self.ring.cardinality().ok_or(Error::InfiniteRing)?;
        EnumerationBounds::check("coefficient ring", card, bounds.max_ring)?;
        let m = f.degree().finite().ok_or(Error::NotMonic)?;
        EnumerationBounds::check("polynomial degree", m as u128, bounds.max_degree as u128)?;
        let u = f.leading().unwrap().clone();
        let u_inv = self.ring.inverse(&u).ok_or(Error::LeadingCoeffNotInvertible)?;
        let monic_f = self.scale_left(&u_inv, f);
        let division = self.is_division_ring()?;
        let elems = self.ring_elements()?;
        let mut needed: u128 = 0;
        for l in 1..m {
            let n = if division { card.saturating_pow(l as u32) } else { card.saturating_pow(l as u32 + 1) };
            needed = needed.saturating_add(n);
        }
        EnumerationBounds::check("factor candidates", needed, bounds.max_candidates)?;
        for l in 1..m {
            let cands: Vec<SkewPoly<R::Elem>> = if division {
                self.monic_of_degree(l, bounds)?
            } else {
                let radix = vec![elems.len() as Int; l + 1];
                enumerate_box(&radix)
                    .filter(|idx| idx[l] != 0)
                    .map(|idx| SkewPoly { coeffs: idx.iter().map(|&i| elems[i as usize].clone()).collect() })
                    .filter(|h| !self.ring.is_zero(h.leading().unwrap()))
                    .collect()
            };
            let hit = cands.par_iter().find_map_first(|h| {
                if division {
                    let (q, r) = self.right_divide(&monic_f, h).ok()?;
                    r.is_zero().then_some((q, h.clone()))
                } else {
                    self.left_cofactor(&monic_f, h, m).map(|g| (g, h.clone()))
                }
            });
            if let Some((g, h)) = hit {
                return Ok(Some((self.scale_left(&u, &g), h)));
            }
        }
        Ok(None)
    }

    /// `f` is irreducible: not a unit and without a factorization into two
    /// polynomials of smaller degree.
    pub fn is_irreducible(&self, f: &SkewPoly<R::Elem>, bounds: &EnumerationBounds) -> Result<bool> {
        match f.degree() {
            Degree::NegInf | Degree::Finite(0) => Ok(false),
            Degree::Finite(_) => Ok(self.find_factorization(f, bounds)?.is_none()),
        }
    }

    // ---- θ ----

    /// The context of `R[s; σ⁻¹]` with `s = t⁻¹`.
    pub fn laurent_context(&self) -> Result<SkewContext<R>> {
        if self.delta.is_some() {
            return Err(Error::DerivationNotZero);
        }
        let inv = self.sigma_inv.clone().ok_or(Error::SigmaNotInvertible)?;
        Ok(SkewContext {
            ring: self.ring.clone(),
            sigma: inv,
            sigma_order: self.sigma_order,
            sigma_inv: Some(self.sigma.clone()),
            delta: None,
        })
    }

    /// `θ(Σ aᵢtⁱ) = Σ t^{−i}aᵢ = Σ σ^{−i}(aᵢ)·s^i`.
    pub fn theta(&self, p: &SkewPoly<R::Elem>) -> Result<LaurentSkewPoly<R::Elem>> {
        if self.delta.is_some() {
            return Err(Error::DerivationNotZero);
        }
        let coeffs = p
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| self.sigma_pow(a, -(i as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentSkewPoly { poly: self.poly(coeffs) })
    }

    /// Product of two `θ` images in `R[s; σ⁻¹]`.
    pub fn laurent_mul(
        &self,
        a: &LaurentSkewPoly<R::Elem>,
        b: &LaurentSkewPoly<R::Elem>,
    ) -> Result<LaurentSkewPoly<R::Elem>> {
        let lc = self.laurent_context()?;
        Ok(LaurentSkewPoly { poly: lc.mul(&a.poly, &b.poly) })
    }
}
