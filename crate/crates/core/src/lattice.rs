//! Natural orders `Λ = O ⊕ O·t ⊕ ⋯ ⊕ O·t^{m−1}`, their reduction modulo a
//! central prime, and the lift `L = ρ⁻¹(C)` of a code to an integer lattice.
//!
//! Coordinates on `Λ` are slot-major: index `i·d + j` is basis element
//! `b_j` of the coefficient order in slot `tⁱ`.

use serde::Serialize;

use crate::codes::{self, LinearCode};
use crate::error::{Error, Result};
use crate::finite::{induce_map, quotient, FiniteRing, FiniteRingElem};
use crate::intmat::{self, Int, Matrix};
use crate::order::{self, IdealLattice, IntegralOrder, MapKind, RingMap};
use crate::petit::{AlgElem, PetitAlgebra};
use crate::ring::Ring;
use crate::skew::{SkewContext, SkewPoly};

/// The natural order of `S_f` over an integral coefficient order.
#[derive(Debug, Clone)]
pub struct NaturalOrder {
    pub algebra: PetitAlgebra<IntegralOrder>,
    sigma: RingMap,
    delta: Option<RingMap>,
}

/// `Λ/𝔭Λ` realized as a Petit algebra over `O/𝔭O`, with the projection ρ.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub ring: FiniteRing,
    pub algebra: PetitAlgebra<FiniteRing>,
    /// Basis of `𝔭Λ` in `Λ`-coordinates.
    pub p_lambda: Matrix,
}

/// A full-rank sublattice of `Λ` with its exact Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegerLattice {
    pub rank: usize,
    /// Hermite basis, rows in `Λ`-coordinates.
    pub basis: Matrix,
    pub gram: Option<Matrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeRelation {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

/// Build `Λ` from a coefficient order, σ, optional δ and the coefficients of
/// a monic `f` (lowest degree first, each a coordinate vector).
pub fn natural_order(
    order: &IntegralOrder,
    sigma: &RingMap,
    delta: Option<&RingMap>,
    f: &[Vec<Int>],
) -> Result<NaturalOrder> {
    // integer matrices keep the order stable; the remaining checks are the map laws
    let wrap = |e: Error| Error::NotStable(e.to_string());
    let delta_checked = match delta {
        Some(d) if !d.is_zero() => {
            let kind = MapKind::Derivation { sigma: sigma.matrix.clone() };
            Some(RingMap::new(order, d.matrix.clone(), kind).map_err(wrap)?)
        }
        _ => None,
    };
    let ctx = SkewContext::new(order.clone(), sigma, delta_checked.as_ref()).map_err(|e| match e {
        Error::BadMap(m) => Error::NotStable(m),
        other => other,
    })?;
    if f.iter().any(|c| c.len() != order.rank()) {
        return Err(Error::BadShape { rank: order.rank(), detail: "coefficient length".into() });
    }
    let fp = ctx.poly(f.to_vec());
    let algebra = PetitAlgebra::new(ctx, fp)?;
    Ok(NaturalOrder { algebra, sigma: sigma.clone(), delta: delta_checked })
}

impl NaturalOrder {
    pub fn order(&self) -> &IntegralOrder {
        self.algebra.base()
    }

    pub fn m(&self) -> usize {
        self.algebra.degree()
    }

    /// Rank of `Λ` over the integers.
    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn f(&self) -> &SkewPoly<Vec<Int>> {
        self.algebra.f()
    }

    pub fn mul(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let a = &self.algebra;
        a.coords(&a.mul(&a.from_coords(x), &a.from_coords(y)))
    }

    /// Reduce modulo the two-sided ideal generated by central elements of `Λ`
    /// (given as coefficient-order coordinates).
    pub fn reduce(&self, generators: &[Vec<Int>]) -> Result<Reduction> {
        let order = self.order();
        let ctx = self.algebra.context();
        for g in generators {
            let central = (0..order.rank()).all(|k| {
                let b = order.basis(k);
                order.mul(g, &b) == order.mul(&b, g)
            });
            if !central || ctx.sigma(g) != *g || !order.is_zero(&ctx.delta(g)) {
                return Err(Error::NotCentral(format!("{g:?}")));
            }
        }
        let ideal = IdealLattice::generated_by(order, generators)?;
        self.reduce_by_ideal(&ideal)
    }

    /// Reduce modulo `p·Λ` for a rational integer `p`.
    pub fn reduce_rational(&self, p: Int) -> Result<Reduction> {
        self.reduce(&[self.order().from_int(p)])
    }

    fn reduce_by_ideal(&self, ideal: &IdealLattice) -> Result<Reduction> {
        let order = self.order();
        let ring = quotient(order, ideal)?;
        let sigma = induce_map(&self.sigma, &ring)?;
        let delta = self.delta.as_ref().map(|d| induce_map(d, &ring)).transpose()?;
        let ctx = SkewContext::new(ring.clone(), &sigma, delta.as_ref())?;
        let fbar = ctx.poly(self.f().coeffs().iter().map(|c| ring.project(c)).collect());
        let algebra = PetitAlgebra::new(ctx, fbar)?;
        let d = order.rank();
        let m = self.m();
        let mut p_lambda = intmat::zeros(m * d, m * d);
        for i in 0..m {
            for (r, row) in ideal.basis().iter().enumerate() {
                p_lambda[i * d + r][i * d..(i + 1) * d].copy_from_slice(row);
            }
        }
        Ok(Reduction { ring, algebra, p_lambda })
    }
}

impl Reduction {
    /// ρ on `Λ`-coordinates.
    pub fn project(&self, v: &[Int]) -> AlgElem<FiniteRingElem> {
        let d = self.ring.host().rank();
        AlgElem(v.chunks(d).map(|c| self.ring.project(c)).collect())
    }

    /// Canonical preimage under ρ.
    pub fn lift(&self, x: &AlgElem<FiniteRingElem>) -> Vec<Int> {
        x.0.iter().flat_map(|c| self.ring.lift(c)).collect()
    }

    /// `|Λ/𝔭Λ|`.
    pub fn size(&self) -> u128 {
        self.algebra.cardinality().expect("finite")
    }

    /// `𝔭Λ` maps to zero and `[Λ : 𝔭Λ] = |S_f̄|`, so ρ is onto with kernel
    /// exactly `𝔭Λ`.
    pub fn verify_kernel(&self) -> bool {
        let zero = self.algebra.zero();
        let killed = self.p_lambda.iter().all(|r| self.project(r) == zero);
        let index = intmat::det(&self.p_lambda).unsigned_abs();
        killed && index == self.size()
    }

    /// `L = ρ⁻¹(C)`: lifts of an additive basis of `C` together with `𝔭Λ`.
    pub fn lift_code(&self, code: &LinearCode<FiniteRingElem>) -> Result<IntegerLattice> {
        let m = self.algebra.degree();
        if code.length != m {
            return Err(Error::CodeAlgebraMismatch(format!("length {} vs {m}", code.length)));
        }
        let r = self.ring.rank();
        if code.codewords.iter().any(|w| w.0.len() != m || w.0.iter().any(|c| c.0.len() != r)) {
            return Err(Error::CodeAlgebraMismatch("codeword shape".into()));
        }
        let mut rows: Matrix = codes::additive_basis(&self.algebra, &code.codewords)
            .iter()
            .map(|w| self.lift(w))
            .collect();
        rows.extend(self.p_lambda.iter().cloned());
        let n = self.p_lambda.len();
        let basis = intmat::hermite_full(&rows, n).ok_or(Error::ZeroDeterminant)?;
        Ok(IntegerLattice { rank: n, basis, gram: None })
    }

    /// Index law `[Λ : L]·|C| = |Λ/𝔭Λ|`.
    pub fn index_law_holds(&self, lattice: &IntegerLattice, code: &LinearCode<FiniteRingElem>) -> bool {
        lattice.index() * code.cardinality() == self.size()
    }
}

impl IntegerLattice {
    /// The lattice spanned by the given rows (must have full rank).
    pub fn from_rows(rows: &[Vec<Int>], rank: usize) -> Result<Self> {
        let basis = intmat::hermite_full(rows, rank).ok_or(Error::ZeroDeterminant)?;
        Ok(IntegerLattice { rank, basis, gram: None })
    }

    pub fn index(&self) -> u128 {
        intmat::det(&self.basis).unsigned_abs()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        intmat::in_span(&self.basis, v)
    }

    /// Attach `B·G₀·Bᵀ` and check positive definiteness.
    pub fn with_gram(mut self, ambient: &Matrix) -> Result<Self> {
        let g = intmat::mat_mul(&intmat::mat_mul(&self.basis, ambient), &intmat::transpose(&self.basis));
        order::check_positive_definite(&g)?;
        self.gram = Some(g);
        Ok(self)
    }

    pub fn gram_det(&self) -> Option<Int> {
        self.gram.as_ref().map(intmat::det)
    }
}

/// Trace-form Gram of a commutative coefficient order on its own basis.
pub fn slot_gram(order: &IntegralOrder, conj: &RingMap) -> Result<Matrix> {
    order::trace_gram(order, conj, &intmat::identity(order.rank()))
}

/// Ambient Gram `G₀`: one copy of the slot Gram per coefficient slot.
pub fn ambient_gram(slot: &Matrix, copies: usize) -> Matrix {
    order::block_diag(&vec![slot.clone(); copies])
}

/// `L` with Gram `B·G₀·Bᵀ`.
pub fn gram_of(lattice: &IntegerLattice, ambient: &Matrix) -> Result<Matrix> {
    Ok(lattice.clone().with_gram(ambient)?.gram.unwrap())
}

/// Approximate lower-triangular generator matrix `M` with `M·Mᵀ = Gram`
/// (Cholesky), for export only.
pub fn float_generator(gram: &Matrix) -> Vec<Vec<f64>> {
    let n = gram.len();
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            let g = gram[i][j] as f64;
            l[i][j] = if i == j { (g - s).max(0.0).sqrt() } else { (g - s) / l[j][j] };
        }
    }
    l
}

fn isqrt(n: Int) -> Int {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as Int;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Shortest nonzero vector by exhaustive enumeration.
///
/// With `R` the smallest diagonal Gram entry, any `x` with `xᵀGx ≤ R`
/// satisfies `xᵢ² ≤ R·(G⁻¹)ᵢᵢ = R·cofᵢᵢ/det`, which gives an exact box.
/// Returns the norm and the coefficient vector on the lattice basis.
pub fn shortest_vector(lattice: &IntegerLattice, max_candidates: u128) -> Result<(Int, Vec<Int>)> {
    let g = lattice.gram.as_ref().ok_or(Error::Config("lattice has no Gram matrix".into()))?;
    let n = g.len();
    let det = intmat::det(g);
    let radius = (0..n).map(|i| g[i][i]).min().unwrap_or(0);
    let box_bounds: Vec<Int> = (0..n)
        .map(|i| {
            let cof = if n == 1 { 1 } else { intmat::det(&intmat::minor(g, i, i)) };
            isqrt(radius * cof / det)
        })
        .collect();
    let size = box_bounds.iter().fold(1u128, |acc, &b| acc.saturating_mul(2 * b as u128 + 1));
    crate::bounds::EnumerationBounds::check("lattice points", size, max_candidates)?;
    let widths: Vec<Int> = box_bounds.iter().map(|b| 2 * b + 1).collect();
    let mut best: Option<(Int, Vec<Int>)> = None;
    for idx in crate::ring::enumerate_box(&widths) {
        let x: Vec<Int> = idx.iter().zip(&box_bounds).map(|(i, b)| i - b).collect();
        if x.iter().all(|&v| v == 0) {
            continue;
        }
        let gx = intmat::vec_mat(&x, g);
        let norm: Int = gx.iter().zip(&x).map(|(a, b)| a * b).sum();
        if best.as_ref().map_or(true, |(b, _)| norm < *b) {
            best = Some((norm, x));
        }
    }
    best.ok_or(Error::ZeroCode)
}

/// Inclusion relation between two lattices of the same ambient rank.
pub fn lattice_compare(a: &IntegerLattice, b: &IntegerLattice) -> Result<LatticeRelation> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    let a_in_b = a.basis.iter().all(|r| b.contains(r));
    let b_in_a = b.basis.iter().all(|r| a.contains(r));
    Ok(match (a_in_b, b_in_a) {
        (true, true) => LatticeRelation::Equal,
        (true, false) => LatticeRelation::Subset,
        (false, true) => LatticeRelation::Superset,
        (false, false) => LatticeRelation::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::EnumerationBounds;
    use crate::codes::{code_from_divisor, principal_left_ideal, zero_code};
    use crate::presets;

    fn gaussian_lambda() -> NaturalOrder {
        let g = presets::gaussian();
        let sigma = presets::gaussian_conj(&g);
        natural_order(&g, &sigma, None, &[vec![0, -1], vec![0, 0], vec![1, 0]]).unwrap()
    }

    #[test]
    fn rank_and_trivial_order() {
        let l = gaussian_lambda();
        assert_eq!(l.rank(), 4);
        let g = presets::gaussian();
        let one = natural_order(&g, &presets::gaussian_conj(&g), None, &[vec![-1, 0], vec![1, 0]]).unwrap();
        assert_eq!(one.rank(), 2);
        assert_eq!(
            natural_order(&g, &RingMap::identity(&g), None, &[vec![0, 1], vec![0, 2]]).unwrap_err(),
            Error::NotMonic
        );
    }

    #[test]
    fn reductions_and_projection() {
        let l = gaussian_lambda();
        for p in [2, 3, 5] {
            let red = l.reduce_rational(p).unwrap();
            assert!(red.verify_kernel());
            assert_eq!(red.size(), (p * p * p * p) as u128);
        }
        let red = l.reduce_rational(3).unwrap();
        let x = [1, 2, -3, 4];
        let y = [0, -1, 5, 2];
        let lhs = red.project(&l.mul(&x, &y));
        let rhs = red.algebra.mul(&red.project(&x), &red.project(&y));
        assert_eq!(lhs, rhs);
        assert!(matches!(l.reduce(&[vec![0, 1]]), Err(Error::NotCentral(_))));
    }

    #[test]
    fn trivial_lifts_and_gram() {
        let l = gaussian_lambda();
        let red = l.reduce_rational(3).unwrap();
        let b = EnumerationBounds::default();
        let full = code_from_divisor(&red.algebra, &red.algebra.context().one(), &b).unwrap();
        let lf = red.lift_code(&full).unwrap();
        assert_eq!(lf.basis, intmat::identity(4));
        let lz = red.lift_code(&zero_code(&red.algebra)).unwrap();
        assert_eq!(lz.index(), 81);
        let g = presets::gaussian();
        let g0 = ambient_gram(&slot_gram(&g, &presets::gaussian_conj(&g)).unwrap(), 2);
        assert_eq!(g0, order::block_diag(&vec![vec![vec![2]]; 4]));
        let lf = lf.with_gram(&g0).unwrap();
        let lz = lz.with_gram(&g0).unwrap();
        assert_eq!(lz.gram.clone().unwrap(), ambient_gram(&vec![vec![18]], 4));
        assert_eq!(lz.gram_det().unwrap(), intmat::det(&lz.basis).pow(2) * intmat::det(&g0));
        assert_eq!(shortest_vector(&lf, 1 << 20).unwrap().0, 2);
        assert_eq!(shortest_vector(&lz, 1 << 20).unwrap().0, 18);
        assert_eq!(lattice_compare(&lz, &lf).unwrap(), LatticeRelation::Subset);
        assert_eq!(lattice_compare(&lf, &lf).unwrap(), LatticeRelation::Equal);
    }

    #[test]
    fn split_code_lifts_strictly_between() {
        let l = gaussian_lambda();
        let red = l.reduce_rational(5).unwrap();
        let b = EnumerationBounds::default();
        let one = red.ring.one();
        let e = red.ring.idempotents(100).unwrap().into_iter().find(|e| !red.ring.is_zero(e) && *e != one).unwrap();
        let code = principal_left_ideal(&red.algebra, &red.algebra.constant(e), &b).unwrap();
        let lat = red.lift_code(&code).unwrap();
        assert!(red.index_law_holds(&lat, &code));
        let full = IntegerLattice::from_rows(&intmat::identity(4), 4).unwrap();
        let pl = IntegerLattice::from_rows(&red.p_lambda, 4).unwrap();
        assert_eq!(lattice_compare(&lat, &full).unwrap(), LatticeRelation::Subset);
        assert_eq!(lattice_compare(&pl, &lat).unwrap(), LatticeRelation::Subset);
        // the lift reduces back onto the code
        for r in &lat.basis {
            assert!(code.contains(&red.project(r)));
        }
    }

    #[test]
    fn float_export_reproduces_gram() {
        let gram = vec![vec![4, 2], vec![2, 3]];
        let l = float_generator(&gram);
        for i in 0..2 {
            for j in 0..2 {
                let v: f64 = (0..2).map(|k| l[i][k] * l[j][k]).sum();
                assert!((v - gram[i][j] as f64).abs() < 1e-9);
            }
        }
    }
}
