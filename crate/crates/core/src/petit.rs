//! Petit algebras `S_f = R[t; σ, δ] / R[t; σ, δ]·f` with `g ∘ h = gh mod_r f`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::EnumerationBounds;
use crate::error::{Error, Result};
use crate::intmat::{self, Int, Matrix};
use crate::ring::{self, Ring};
use crate::skew::{SkewContext, SkewPoly};

/// An element of `S_f`: the coefficients `(a₀, …, a_{m−1})` of `Σ aᵢtⁱ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AlgElem<E>(pub Vec<E>);

/// `S_f` for a monic `f` of degree `m ≥ 1`.
#[derive(Debug, Clone)]
pub struct PetitAlgebra<R: Ring> {
    ctx: SkewContext<R>,
    f: SkewPoly<R::Elem>,
    m: usize,
}

/// An additive subgroup of the algebra: generators, size (finite case), and
/// the full element list when small enough.
#[derive(Debug, Clone, Serialize)]
pub struct Substructure<E> {
    pub generators: Vec<AlgElem<E>>,
    pub cardinality: Option<u128>,
    pub elements: Option<Vec<AlgElem<E>>>,
}

/// Left, middle and right nuclei, the nucleus and the center.
#[derive(Debug, Clone, Serialize)]
pub struct Nuclei<E> {
    pub left: Substructure<E>,
    pub middle: Substructure<E>,
    pub right: Substructure<E>,
    pub nucleus: Substructure<E>,
    pub center: Substructure<E>,
}

/// Division verdict next to the irreducibility verdict for a field alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisionReport {
    pub division: bool,
    pub irreducible: bool,
}

impl<R: Ring> PetitAlgebra<R> {
    pub fn new(ctx: SkewContext<R>, f: SkewPoly<R::Elem>) -> Result<Self> {
        if !ctx.is_monic(&f) {
            return Err(Error::NotMonic);
        }
        let m = f.degree().finite().unwrap();
        if m == 0 {
            return Err(Error::WrongShape("f must have degree at least 1".into()));
        }
        Ok(PetitAlgebra { ctx, f, m })
    }

    pub fn context(&self) -> &SkewContext<R> {
        &self.ctx
    }

    pub fn base(&self) -> &R {
        self.ctx.ring()
    }

    pub fn f(&self) -> &SkewPoly<R::Elem> {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Checked element constructor.
    pub fn elem(&self, coeffs: Vec<R::Elem>) -> Result<AlgElem<R::Elem>> {
        if coeffs.len() != self.m {
            return Err(Error::AlgebraMismatch { expected: self.m, got: coeffs.len() });
        }
        Ok(AlgElem(coeffs))
    }

    pub fn to_poly(&self, x: &AlgElem<R::Elem>) -> SkewPoly<R::Elem> {
        self.ctx.poly(x.0.clone())
    }

    /// Reduce a polynomial into `S_f` by right division.
    pub fn from_poly(&self, p: &SkewPoly<R::Elem>) -> AlgElem<R::Elem> {
        let r = self.ctx.right_remainder(p, &self.f).expect("f is monic");
        AlgElem(r.padded(self.m, &self.base().zero()))
    }

    pub fn constant(&self, a: R::Elem) -> AlgElem<R::Elem> {
        self.from_poly(&self.ctx.constant(a))
    }

    /// The class of `t`.
    pub fn t(&self) -> AlgElem<R::Elem> {
        self.from_poly(&self.ctx.t_pow(1))
    }

    /// `x ∘ y` after checking both lengths.
    pub fn alg_mul(&self, x: &AlgElem<R::Elem>, y: &AlgElem<R::Elem>) -> Result<AlgElem<R::Elem>> {
        for v in [x, y] {
            if v.0.len() != self.m {
                return Err(Error::AlgebraMismatch { expected: self.m, got: v.0.len() });
            }
        }
        Ok(self.mul(x, y))
    }

    /// `[x, y, z] = (x∘y)∘z − x∘(y∘z)`.
    pub fn associator(&self, x: &AlgElem<R::Elem>, y: &AlgElem<R::Elem>, z: &AlgElem<R::Elem>) -> AlgElem<R::Elem> {
        self.sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    pub fn commutator(&self, x: &AlgElem<R::Elem>, y: &AlgElem<R::Elem>) -> AlgElem<R::Elem> {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// A triple of additive generators with nonzero associator, if any.
    pub fn nonassociative_witness(&self) -> Option<[AlgElem<R::Elem>; 3]> {
        let g = self.generators();
        for x in &g {
            for y in &g {
                for z in &g {
                    if !self.is_zero(&self.associator(x, y, z)) {
                        return Some([x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.nonassociative_witness().is_none()
    }

    fn substructure(&self, rows: &Matrix, col_moduli: &[Int], bounds: &EnumerationBounds) -> Substructure<R::Elem> {
        let moduli = self.moduli();
        let gens: Vec<AlgElem<R::Elem>> = intmat::kernel(rows, col_moduli)
            .into_iter()
            .map(|z| self.from_coords(&z))
            .filter(|e| !self.is_zero(e))
            .collect();
        let coords: Matrix = gens.iter().map(|g| self.coords(g)).collect();
        let cardinality = self
            .is_finite()
            .then(|| intmat::subgroup_order(&coords, &moduli));
        let elements = cardinality.filter(|&n| n <= bounds.max_elements).map(|_| self.span(&gens));
        Substructure { generators: gens, cardinality, elements }
    }

    /// All `Z`-combinations of `gens` in a finite algebra, sorted.
    pub fn span(&self, gens: &[AlgElem<R::Elem>]) -> Vec<AlgElem<R::Elem>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(self.zero());
        for g in gens {
            let mut frontier: Vec<AlgElem<R::Elem>> = set.iter().cloned().collect();
            loop {
                let next: Vec<AlgElem<R::Elem>> = frontier
                    .iter()
                    .map(|x| self.add(x, g))
                    .filter(|x| !set.contains(x))
                    .collect();
                if next.is_empty() {
                    break;
                }
                set.extend(next.iter().cloned());
                frontier = next;
            }
        }
        set.into_iter().collect()
    }

    /// Condition rows for `x` in one associator slot: row `k` lists the
    /// associators with `x = g_k` against every pair of generators.
    fn slot_rows(&self, slot: usize) -> Matrix {
        let g = self.generators();
        g.iter()
            .map(|x| {
                let mut row = Vec::new();
                for a in &g {
                    for b in &g {
                        let v = match slot {
                            0 => self.associator(x, a, b),
                            1 => self.associator(a, x, b),
                            _ => self.associator(a, b, x),
                        };
                        row.extend(self.coords(&v));
                    }
                }
                row
            })
            .collect()
    }

    fn commutator_rows(&self) -> Matrix {
        let g = self.generators();
        g.iter()
            .map(|x| g.iter().flat_map(|a| self.coords(&self.commutator(x, a))).collect())
            .collect()
    }

    /// Nuclei and center as kernels of the linear associator conditions.
    pub fn nuclei(&self, bounds: &EnumerationBounds) -> Result<Nuclei<R::Elem>> {
        let n = self.rank() as u128;
        EnumerationBounds::check("associator conditions", n * n * n * n, bounds.max_candidates)?;
        let moduli = self.moduli();
        let tiled = |reps: usize| -> Vec<Int> { moduli.iter().cycle().take(reps * moduli.len()).cloned().collect() };
        let pairs = self.rank() * self.rank();
        let rows: Vec<Matrix> = (0..3).map(|s| self.slot_rows(s)).collect();
        let concat = |parts: &[&Matrix]| -> Matrix {
            (0..self.rank())
                .map(|k| parts.iter().flat_map(|p| p[k].iter().cloned()).collect())
                .collect()
        };
        let left = self.substructure(&rows[0], &tiled(pairs), bounds);
        let middle = self.substructure(&rows[1], &tiled(pairs), bounds);
        let right = self.substructure(&rows[2], &tiled(pairs), bounds);
        let all = concat(&[&rows[0], &rows[1], &rows[2]]);
        let nucleus = self.substructure(&all, &tiled(3 * pairs), bounds);
        let comm = self.commutator_rows();
        let center_rows = concat(&[&all, &comm]);
        let center = self.substructure(&center_rows, &tiled(3 * pairs + self.rank()), bounds);
        Ok(Nuclei { left, middle, right, nucleus, center })
    }

    /// `{g : deg g < m, f·g ∈ R·f}`, listed by enumeration over a finite ring.
    pub fn right_nucleus_by_divisibility(&self, bounds: &EnumerationBounds) -> Result<Vec<AlgElem<R::Elem>>> {
        let card = self.cardinality().ok_or(Error::InfiniteRing)?;
        bounds.elements("algebra elements", card)?;
        let elems = self.elements().unwrap();
        Ok(elems
            .into_par_iter()
            .filter(|g| {
                let fg = self.ctx.mul(&self.f, &self.to_poly(g));
                self.ctx.right_remainder(&fg, &self.f).map(|r| r.is_zero()).unwrap_or(false)
            })
            .collect())
    }

    /// Constants `a` with `a∘x = x∘a` for all `x`.
    pub fn commuting_constants(&self) -> Result<Vec<R::Elem>> {
        let elems = self.base().elements().ok_or(Error::InfiniteRing)?;
        let g = self.generators();
        Ok(elems
            .into_iter()
            .filter(|a| {
                let c = self.constant(a.clone());
                g.iter().all(|x| self.is_zero(&self.commutator(&c, x)))
            })
            .collect())
    }

    /// A pair of nonzero `x, y` with `x∘y = 0`, if one exists.
    ///
    /// In a finite algebra `L_x` is injective iff its image has full size,
    /// and a zero divisor exists iff some `L_x` fails to be injective.
    pub fn zero_divisor(&self, bounds: &EnumerationBounds) -> Result<Option<(AlgElem<R::Elem>, AlgElem<R::Elem>)>> {
        ring::zero_divisor(self, bounds)
    }

    /// `S_f` is a division algebra: every `L_x` and `R_x` with `x ≠ 0` is
    /// bijective, which for a finite algebra means there are no zero divisors.
    pub fn is_division(&self, bounds: &EnumerationBounds) -> Result<bool> {
        Ok(self.zero_divisor(bounds)?.is_none())
    }

    /// Compare `is_division` with `is_irreducible(f)`; these agree whenever
    /// the coefficient ring is a finite field.
    pub fn division_check_equivalence(&self, bounds: &EnumerationBounds) -> Result<DivisionReport> {
        if !self.base().is_commutative() || !self.ctx.is_division_ring()? {
            return Err(Error::CoefficientRingNotField);
        }
        Ok(DivisionReport {
            division: self.is_division(bounds)?,
            irreducible: self.ctx.is_irreducible(&self.f, bounds)?,
        })
    }

    /// The constant `c` when `f = t^m − c` and δ = 0.
    pub fn binomial_constant(&self) -> Result<R::Elem> {
        if self.ctx.has_derivation() {
            return Err(Error::DerivationNotZero);
        }
        let c = self.f.coeffs();
        if c[1..self.m].iter().any(|x| !self.base().is_zero(x)) {
            return Err(Error::WrongShape("middle coefficients must vanish".into()));
        }
        Ok(self.base().neg(&c[0]))
    }

    /// Right coefficients: `x = Σ tⁱ·x̂ᵢ` with `x̂ᵢ = σ^{−i}(xᵢ)` (δ = 0).
    pub fn right_coeffs(&self, x: &AlgElem<R::Elem>) -> Result<Vec<R::Elem>> {
        x.0.iter()
            .enumerate()
            .map(|(i, a)| self.ctx.sigma_pow(a, -(i as i64)))
            .collect()
    }

    pub fn from_right_coeffs(&self, v: &[R::Elem]) -> Result<AlgElem<R::Elem>> {
        let c = v
            .iter()
            .enumerate()
            .map(|(i, a)| self.ctx.sigma_pow(a, i as i64))
            .collect::<Result<Vec<_>>>()?;
        self.elem(c)
    }

    /// `λ(x)` for `f = t^m − c`: the `m × m` matrix with entry
    /// `σ^{−j}(x̂_{r−j})` below and on the diagonal and `c·σ^{−j}(x̂_{m+r−j})`
    /// above it, acting on right-coefficient columns.
    ///
    /// `λ(x)·ŷ = (x∘y)^` holds when σ^m = id and `c` is central.
    pub fn left_mul_matrix(&self, x: &AlgElem<R::Elem>) -> Result<Vec<Vec<R::Elem>>> {
        let c = self.binomial_constant()?;
        let xh = self.right_coeffs(x)?;
        let m = self.m;
        (0..m)
            .map(|r| {
                (0..m)
                    .map(|j| {
                        let (idx, wrap) = if r >= j { (r - j, false) } else { (m + r - j, true) };
                        let e = self.ctx.sigma_pow(&xh[idx], -(j as i64))?;
                        Ok(if wrap { self.base().mul(&c, &e) } else { e })
                    })
                    .collect()
            })
            .collect()
    }

    /// Apply a coefficient matrix to a right-coefficient column.
    pub fn apply_matrix(&self, mat: &[Vec<R::Elem>], v: &[R::Elem]) -> Vec<R::Elem> {
        let ring = self.base();
        mat.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
            })
            .collect()
    }
}

impl<R: Ring> Ring for PetitAlgebra<R> {
    type Elem = AlgElem<R::Elem>;

    fn zero(&self) -> Self::Elem {
        AlgElem(vec![self.base().zero(); self.m])
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base().one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        AlgElem(a.0.iter().zip(&b.0).map(|(x, y)| self.base().add(x, y)).collect())
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        AlgElem(a.0.iter().map(|x| self.base().neg(x)).collect())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_poly(&self.ctx.mul(&self.to_poly(a), &self.to_poly(b)))
    }
    fn rank(&self) -> usize {
        self.m * self.base().rank()
    }
    fn moduli(&self) -> Vec<Int> {
        let m = self.base().moduli();
        m.iter().cycle().take(self.m * m.len()).cloned().collect()
    }
    fn coords(&self, a: &Self::Elem) -> Vec<Int> {
        a.0.iter().flat_map(|x| self.base().coords(x)).collect()
    }
    fn from_coords(&self, c: &[Int]) -> Self::Elem {
        let r = self.base().rank();
        AlgElem((0..self.m).map(|i| self.base().from_coords(&c[i * r..(i + 1) * r])).collect())
    }
    fn is_commutative(&self) -> bool {
        self.m == 1 && self.base().is_commutative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{induce_map, quotient, FiniteRing};
    use crate::order::IdealLattice;
    use crate::presets;
    use proptest::prelude::*;

    fn gauss_ctx(p: Int) -> SkewContext<FiniteRing> {
        let g = presets::gaussian();
        let r = quotient(&g, &IdealLattice::rational(&g, p).unwrap()).unwrap();
        let s = induce_map(&presets::gaussian_conj(&g), &r).unwrap();
        SkewContext::new(r, &s, None).unwrap()
    }

    fn inert() -> PetitAlgebra<FiniteRing> {
        let ctx = gauss_ctx(3);
        let i = ctx.ring().project(&[0, 1]);
        let f = ctx.binomial(2, &i);
        PetitAlgebra::new(ctx, f).unwrap()
    }

    #[test]
    fn unity_and_t_squared() {
        let a = inert();
        let i = a.base().project(&[0, 1]);
        assert_eq!(a.mul(&a.t(), &a.t()), a.constant(i));
        for y in a.elements().unwrap().into_iter().step_by(5) {
            assert_eq!(a.mul(&a.one(), &y), y);
            assert_eq!(a.mul(&y, &a.one()), y);
        }
        assert!(matches!(a.alg_mul(&AlgElem(vec![]), &a.one()), Err(Error::AlgebraMismatch { .. })));
    }

    #[test]
    fn inert_algebra_is_nonassociative_division() {
        let a = inert();
        let b = EnumerationBounds::default();
        assert!(a.nonassociative_witness().is_some());
        assert!(a.is_division(&b).unwrap());
        let n = a.nuclei(&b).unwrap();
        assert_eq!(n.nucleus.cardinality, Some(9));
        assert_eq!(n.center.cardinality, Some(3));
        assert_eq!(n.left.cardinality, Some(9));
        assert_eq!(n.middle.cardinality, Some(9));
        let rn = a.right_nucleus_by_divisibility(&b).unwrap();
        assert_eq!(Some(rn), n.right.elements);
        let rep = a.division_check_equivalence(&b).unwrap();
        assert_eq!(rep, DivisionReport { division: true, irreducible: true });
    }

    #[test]
    fn two_sided_f_gives_associative_algebra() {
        let ctx = gauss_ctx(3);
        let f = ctx.binomial(2, &ctx.ring().from_int(2));
        let a = PetitAlgebra::new(ctx, f).unwrap();
        assert!(a.is_associative());
        let n = a.nuclei(&EnumerationBounds::default()).unwrap();
        assert_eq!(n.nucleus.cardinality, Some(81));
    }

    #[test]
    fn product_and_chain_rings_have_zero_divisors() {
        let b = EnumerationBounds::default();
        for p in [5, 2] {
            let ctx = gauss_ctx(p);
            let c = ctx.ring().project(&[0, 1]);
            let a = PetitAlgebra::new(ctx.clone(), ctx.binomial(2, &c)).unwrap();
            let (x, y) = a.zero_divisor(&b).unwrap().expect("zero divisor");
            assert!(a.is_zero(&a.mul(&x, &y)));
            assert!(!a.is_zero(&x) && !a.is_zero(&y));
        }
        let ctx = gauss_ctx(2);
        let v = ctx.ring().project(&[1, 1]);
        let a = PetitAlgebra::new(ctx.clone(), ctx.binomial(2, &v)).unwrap();
        assert_eq!(a.division_check_equivalence(&b), Err(Error::CoefficientRingNotField));
    }

    #[test]
    fn reducible_f_is_not_division() {
        let ctx = gauss_ctx(3);
        let r = ctx.ring().clone();
        let (x, y) = (r.project(&[1, 1]), r.project(&[2, 0]));
        let f = ctx.mul(&ctx.poly(vec![r.neg(&x), r.one()]), &ctx.poly(vec![r.neg(&y), r.one()]));
        let a = PetitAlgebra::new(ctx, f).unwrap();
        let rep = a.division_check_equivalence(&EnumerationBounds::default()).unwrap();
        assert_eq!(rep, DivisionReport { division: false, irreducible: false });
    }

    #[test]
    fn lambda_of_one_and_t() {
        let a = inert();
        let r = a.base().clone();
        let ident = a.left_mul_matrix(&a.one()).unwrap();
        assert_eq!(ident, vec![vec![r.one(), r.zero()], vec![r.zero(), r.one()]]);
        let i = r.project(&[0, 1]);
        let lt = a.left_mul_matrix(&a.t()).unwrap();
        assert_eq!(lt, vec![vec![r.zero(), i], vec![r.one(), r.zero()]]);
    }

    proptest! {
        #[test]
        fn prop_lambda_matches_product(x in 0usize..81, y in 0usize..81) {
            let a = inert();
            let e = a.elements().unwrap();
            let (x, y) = (&e[x], &e[y]);
            let lhs = a.apply_matrix(&a.left_mul_matrix(x).unwrap(), &a.right_coeffs(y).unwrap());
            prop_assert_eq!(lhs, a.right_coeffs(&a.mul(x, y)).unwrap());
        }

        #[test]
        fn prop_distributive_and_constants_in_nuclei(x in 0usize..81, y in 0usize..81, z in 0usize..81, c in 0usize..9) {
            let a = inert();
            let e = a.elements().unwrap();
            let (x, y, z) = (&e[x], &e[y], &e[z]);
            prop_assert_eq!(a.mul(x, &a.add(y, z)), a.add(&a.mul(x, y), &a.mul(x, z)));
            prop_assert_eq!(a.mul(&a.add(x, y), z), a.add(&a.mul(x, z), &a.mul(y, z)));
            let k = a.constant(a.base().elements().unwrap()[c].clone());
            prop_assert!(a.is_zero(&a.associator(&k, y, z)));
            prop_assert!(a.is_zero(&a.associator(y, &k, z)));
        }
    }
}
