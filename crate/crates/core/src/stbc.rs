//! Space-time codeword matrices over natural orders.
//!
//! Columns act on right coefficients: `y = Σ tʲ·ŷⱼ`. Over a cyclic algebra
//! order `𝒟` each `ŷⱼ` is further written as `Σ eᵏ·y_{jk}` with
//! `y_{jk} ∈ O_K`, so every matrix here has entries in the commutative base
//! and `x∘(y·a) = (x∘y)·a` for `a ∈ O_K` makes left multiplication linear.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{extend_sigma, CyclicAlgebraOrder};
use crate::error::{Error, Result};
use crate::intmat::{self, Int, Matrix};
use crate::lattice::{natural_order, NaturalOrder};
use crate::order::{IntegralOrder, RingMap};
use crate::petit::AlgElem;
use crate::ring::Ring;

/// A square matrix over a commutative base order with its exact determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodewordMatrix {
    pub size: usize,
    /// `entries[r][j]` is a coordinate vector over the base basis.
    pub entries: Vec<Vec<Vec<Int>>>,
    pub det: Vec<Int>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DetMode {
    #[serde(rename = "d_in_OF")]
    DInOF,
    #[serde(rename = "d_in_OL")]
    DInOL,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub mode: DetMode,
    pub det: Vec<Int>,
    pub member: bool,
    /// Coordinates of the determinant on the subring basis, when a member.
    pub subring_coords: Option<Vec<Int>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiversityReport {
    pub trials: usize,
    pub seed: u64,
    pub box_bound: Int,
    pub singular: usize,
    /// Nonzero samples with vanishing determinant, as `Λ`-coordinates.
    pub counterexamples: Vec<Vec<Int>>,
}

/// Determinant over a commutative order by dynamic programming on column
/// subsets (no division needed).
pub fn det_over(base: &IntegralOrder, m: &[Vec<Vec<Int>>]) -> Vec<Int> {
    let n = m.len();
    let mut dp: Vec<Option<Vec<Int>>> = vec![None; 1 << n];
    dp[0] = Some(base.one());
    for mask in 0usize..(1 << n) {
        let Some(acc) = dp[mask].clone() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 || base.is_zero(&m[row][col]) {
                continue;
            }
            // sign from the number of already used columns to the right
            let above = (mask >> (col + 1)).count_ones();
            let mut term = base.mul(&acc, &m[row][col]);
            if above % 2 == 1 {
                term = base.neg(&term);
            }
            let slot = &mut dp[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(s) => base.add(&s, &term),
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].clone().unwrap_or_else(|| base.zero())
}

fn mat_vec(base: &IntegralOrder, m: &[Vec<Vec<Int>>], v: &[Vec<Int>]) -> Vec<Vec<Int>> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(base.zero(), |acc, (a, b)| base.add(&acc, &base.mul(a, b))))
        .collect()
}

/// A natural order over a commutative `O_K` with `f = t^m − c`.
#[derive(Debug, Clone)]
pub struct CyclicStbc {
    pub lambda: NaturalOrder,
}

impl CyclicStbc {
    pub fn new(lambda: NaturalOrder) -> Result<Self> {
        if !lambda.order().is_commutative() {
            return Err(Error::NotCommutative);
        }
        lambda.algebra.binomial_constant()?;
        Ok(CyclicStbc { lambda })
    }

    fn base(&self) -> &IntegralOrder {
        self.lambda.order()
    }

    /// `λ(x)` for `x` in `Λ`-coordinates.
    pub fn matrix(&self, x: &[Int]) -> Result<CodewordMatrix> {
        let a = &self.lambda.algebra;
        let entries = a.left_mul_matrix(&a.from_coords(x))?;
        let det = det_over(self.base(), &entries);
        Ok(CodewordMatrix { size: entries.len(), entries, det })
    }

    /// Right-coefficient column of `y`.
    pub fn column(&self, y: &[Int]) -> Result<Vec<Vec<Int>>> {
        let a = &self.lambda.algebra;
        a.right_coeffs(&a.from_coords(y))
    }

    /// `λ(x)·ŷ = (x∘y)^`.
    pub fn product_holds(&self, x: &[Int], y: &[Int]) -> Result<bool> {
        let lhs = mat_vec(self.base(), &self.matrix(x)?.entries, &self.column(y)?);
        Ok(lhs == self.column(&self.lambda.mul(x, y))?)
    }
}

/// A natural order over a cyclic algebra order `𝒟` with `f = t^m − d`,
/// `d ∈ O_K` placed in slot 0.
#[derive(Debug, Clone)]
pub struct IteratedStbc {
    pub cyclic: CyclicAlgebraOrder,
    pub lambda: NaturalOrder,
    pub sigma: RingMap,
    pub d: Vec<Int>,
    pub m: usize,
}

impl IteratedStbc {
    /// `σ` is given on `O_K` and extended to `𝒟` coefficientwise.
    pub fn new(cyclic: CyclicAlgebraOrder, sigma: &RingMap, d: &[Int], m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::WrongShape("degree must be positive".into()));
        }
        let base = &cyclic.base;
        if d.len() != base.rank() || base.is_zero(&d.to_vec()) {
            return Err(Error::WrongShape("d must be a nonzero element of the base".into()));
        }
        let ext = extend_sigma(sigma, &cyclic)?;
        let order = cyclic.order();
        let mut f = vec![order.zero(); m + 1];
        f[0] = order.neg(&cyclic.embed(d));
        f[m] = order.one();
        let lambda = natural_order(order, &ext, None, &f)?;
        Ok(IteratedStbc { cyclic, lambda, sigma: sigma.clone(), d: d.to_vec(), m })
    }

    fn base(&self) -> &IntegralOrder {
        &self.cyclic.base
    }

    /// Right `e`-coordinates of `z ∈ 𝒟`: `z = Σ eⁱ·z'ᵢ`.
    pub fn right_e_coords(&self, z: &[Int]) -> Vec<Vec<Int>> {
        self.cyclic
            .slots(z)
            .iter()
            .enumerate()
            .map(|(i, zi)| self.cyclic.rho_pow(zi, -(i as i64)))
            .collect()
    }

    /// Left regular representation of `a ∈ 𝒟` on right `e`-coordinates.
    pub fn lambda_d(&self, a: &[Int]) -> Vec<Vec<Vec<Int>>> {
        let n = self.cyclic.n;
        let o = self.cyclic.order();
        let base = self.base();
        let cols: Vec<Vec<Vec<Int>>> = (0..n)
            .map(|k| {
                let mut slots = vec![base.zero(); n];
                slots[k] = base.one();
                self.right_e_coords(&o.mul(&a.to_vec(), &self.cyclic.from_slots(&slots)))
            })
            .collect();
        (0..n).map(|r| (0..n).map(|k| cols[k][r].clone()).collect()).collect()
    }

    /// `M(x)` over `𝒟` on right coefficients, with the wrap factor `d` kept
    /// separate: entry `(r, j)` is `(σ^{−j}(x̂_{r−j}), false)` or
    /// `(σ^{−j}(x̂_{m+r−j}), true)` when it carries `d`.
    pub fn m_of(&self, x: &[Int]) -> Result<Vec<Vec<(Vec<Int>, bool)>>> {
        let a = &self.lambda.algebra;
        let ctx = a.context();
        let xh = a.right_coeffs(&a.from_coords(x))?;
        let m = self.m;
        (0..m)
            .map(|r| {
                (0..m)
                    .map(|j| {
                        let (idx, wrap) = if r >= j { (r - j, false) } else { (m + r - j, true) };
                        Ok((ctx.sigma_pow(&xh[idx], -(j as i64))?, wrap))
                    })
                    .collect()
            })
            .collect()
    }

    /// `λ(M(x))`: blocks `λ_𝒟` of the entries of `M(x)`, wrap blocks scaled by `d`.
    pub fn matrix(&self, x: &[Int]) -> Result<CodewordMatrix> {
        let n = self.cyclic.n;
        let m = self.m;
        let base = self.base();
        let mx = self.m_of(x)?;
        let size = m * n;
        let mut entries = vec![vec![base.zero(); size]; size];
        for r in 0..m {
            for j in 0..m {
                let (z, wrap) = &mx[r][j];
                let block = self.lambda_d(z);
                for (br, row) in block.iter().enumerate() {
                    for (bc, v) in row.iter().enumerate() {
                        entries[r * n + br][j * n + bc] = if *wrap { base.mul(&self.d, v) } else { v.clone() };
                    }
                }
            }
        }
        let det = det_over(base, &entries);
        Ok(CodewordMatrix { size, entries, det })
    }

    /// Column of `y` of length `mn` over `O_K`.
    pub fn column(&self, y: &[Int]) -> Result<Vec<Vec<Int>>> {
        let a = &self.lambda.algebra;
        Ok(a.right_coeffs(&a.from_coords(y))?.iter().flat_map(|z| self.right_e_coords(z)).collect())
    }

    pub fn product_holds(&self, x: &[Int], y: &[Int]) -> Result<bool> {
        let lhs = mat_vec(self.base(), &self.matrix(x)?.entries, &self.column(y)?);
        Ok(lhs == self.column(&self.lambda.mul(x, y))?)
    }

    /// Check `d` against the requested mode and test whether `det λ(M(x))`
    /// lies in `O_F = Fix(ρ)` or `O_L = Fix(σ)`.
    pub fn det_membership(&self, x: &[Int], mode: DetMode) -> Result<MembershipReport> {
        let base = self.base();
        let map = match mode {
            DetMode::DInOF => &self.cyclic.rho,
            DetMode::DInOL => &self.sigma,
        };
        if map.apply(base, &self.d) != self.d {
            return Err(Error::ModeMismatch(format!("{mode:?}")));
        }
        let det = self.matrix(x)?.det;
        let basis = fixed_basis(base, map);
        let subring_coords = intmat::solve_combination(&basis, &det);
        Ok(MembershipReport { mode, member: subring_coords.is_some(), det, subring_coords })
    }
}

/// Integral basis of the fixed points of a ring map on an order.
pub fn fixed_basis(order: &IntegralOrder, map: &RingMap) -> Matrix {
    let n = order.rank();
    let shifted: Matrix = (0..n)
        .map(|i| (0..n).map(|j| map.matrix[i][j] - Int::from(i == j)).collect())
        .collect();
    intmat::kernel(&shifted, &vec![0; n])
}

/// A nonzero sample with coordinates in `[−b, b]`, seeded per trial.
pub fn sample_nonzero(rank: usize, seed: u64, trial: u64, b: Int) -> Vec<Int> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    loop {
        let v: Vec<Int> = (0..rank).map(|_| rng.gen_range(-b..=b)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Count sampled nonzero `x` whose determinant vanishes. Results do not
/// depend on the thread count.
pub fn full_diversity_sample<F>(rank: usize, trials: usize, seed: u64, b: Int, det: F) -> Result<DiversityReport>
where
    F: Fn(&[Int]) -> Result<Vec<Int>> + Sync,
{
    let found: Vec<Option<Vec<Int>>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let x = sample_nonzero(rank, seed, t, b);
            let d = det(&x)?;
            Ok(d.iter().all(|&v| v == 0).then_some(x))
        })
        .collect::<Result<_>>()?;
    let counterexamples: Vec<Vec<Int>> = found.into_iter().flatten().collect();
    Ok(DiversityReport { trials, seed, box_bound: b, singular: counterexamples.len(), counterexamples })
}

impl CodewordMatrix {
    /// Entries flattened to integers, base coordinates innermost.
    pub fn flattened(&self) -> Vec<Vec<Int>> {
        self.entries.iter().map(|row| row.iter().flatten().copied().collect()).collect()
    }
}

/// Coordinates of `x` as an algebra element.
pub fn as_elem(lambda: &NaturalOrder, x: &[Int]) -> AlgElem<Vec<Int>> {
    lambda.algebra.from_coords(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::make_cyclic;
    use crate::presets;
    use proptest::prelude::*;

    fn gaussian_stbc(c: [Int; 2]) -> CyclicStbc {
        let g = presets::gaussian();
        let l = natural_order(&g, &presets::gaussian_conj(&g), None, &[vec![-c[0], -c[1]], vec![0, 0], vec![1, 0]]).unwrap();
        CyclicStbc::new(l).unwrap()
    }

    fn quaternion_stbc(d: &[Int]) -> IteratedStbc {
        let t = presets::gaussian_sqrt2();
        let alg = make_cyclic(&t.order, &t.rho, &t.order.from_int(-1), 2).unwrap();
        IteratedStbc::new(alg, &t.sigma, d, 2).unwrap()
    }

    fn sqrt2() -> Vec<Int> {
        let t = presets::gaussian_sqrt2();
        let s = t.order.basis(1);
        assert_eq!(t.order.mul(&s, &s), t.order.from_int(2));
        s
    }

    fn unit_i() -> Vec<Int> {
        let t = presets::gaussian_sqrt2();
        let i = t.order.basis(2);
        assert_eq!(t.order.mul(&i, &i), t.order.from_int(-1));
        i
    }

    #[test]
    fn identity_matrices() {
        let s = gaussian_stbc([0, 1]);
        let one = s.matrix(&[1, 0, 0, 0]).unwrap();
        assert_eq!(one.entries, vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]]);
        assert_eq!(one.det, vec![1, 0]);
        let q = quaternion_stbc(&sqrt2());
        let mut x = vec![0; 16];
        x[0] = 1;
        let m = q.matrix(&x).unwrap();
        assert_eq!(m.size, 4);
        for r in 0..4 {
            for j in 0..4 {
                assert_eq!(m.entries[r][j], if r == j { q.base().one() } else { q.base().zero() });
            }
        }
    }

    #[test]
    fn m2_pattern_over_gaussians() {
        // x = a₀ + a₁t with right coefficients â₀ = a₀, â₁ = σ(a₁)
        let s = gaussian_stbc([0, 1]);
        let m = s.matrix(&[1, 2, 3, -1]).unwrap();
        let conj = |v: &Vec<Int>| vec![v[0], -v[1]];
        let mul_i = |v: &Vec<Int>| vec![-v[1], v[0]];
        let a0 = vec![1, 2];
        let a1h = conj(&vec![3, -1]);
        assert_eq!(m.entries[0][0], a0);
        assert_eq!(m.entries[1][0], a1h);
        assert_eq!(m.entries[1][1], conj(&a0));
        assert_eq!(m.entries[0][1], mul_i(&conj(&a1h)));
    }

    #[test]
    fn reducible_f_has_singular_codewords() {
        let s = gaussian_stbc([1, 0]);
        let rep = full_diversity_sample(4, 1000, 7, 3, |x| Ok(s.matrix(x)?.det)).unwrap();
        assert!(rep.singular > 0);
        for x in &rep.counterexamples {
            assert!(x.iter().any(|&v| v != 0));
            assert_eq!(s.matrix(x).unwrap().det, vec![0, 0]);
        }
    }

    #[test]
    fn degree_one_cyclic_agrees() {
        let g = presets::gaussian();
        let conj = presets::gaussian_conj(&g);
        let alg = make_cyclic(&g, &RingMap::identity(&g), &[1, 0], 1).unwrap();
        let it = IteratedStbc::new(alg, &conj, &[0, 1], 2).unwrap();
        let cy = gaussian_stbc([0, 1]);
        let x = [2, -1, 0, 3];
        assert_eq!(it.matrix(&x).unwrap(), cy.matrix(&x).unwrap());
    }

    #[test]
    fn mode_checks() {
        let q = quaternion_stbc(&sqrt2());
        let mut x = vec![0; 16];
        x[0] = 1;
        let r = q.det_membership(&x, DetMode::DInOF).unwrap();
        assert!(r.member);
        assert!(matches!(q.det_membership(&x, DetMode::DInOL), Err(Error::ModeMismatch(_))));
        let qi = quaternion_stbc(&unit_i());
        assert!(matches!(qi.det_membership(&x, DetMode::DInOF), Err(Error::ModeMismatch(_))));
    }

    #[test]
    fn sampling_is_seed_determined() {
        assert_eq!(sample_nonzero(6, 9, 4, 3), sample_nonzero(6, 9, 4, 3));
        assert_ne!(sample_nonzero(6, 9, 4, 3), sample_nonzero(6, 9, 5, 3));
        assert_eq!(det_over(&presets::integers(), &[vec![vec![1], vec![2]], vec![vec![3], vec![4]]]), vec![-2]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn cyclic_product(x in prop::collection::vec(-4i128..=4, 4), y in prop::collection::vec(-4i128..=4, 4)) {
            let s = gaussian_stbc([0, 1]);
            prop_assert!(s.product_holds(&x, &y).unwrap());
            let xy: Vec<Int> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let sum: Vec<Vec<Vec<Int>>> = s.matrix(&x).unwrap().entries.iter().zip(&s.matrix(&y).unwrap().entries)
                .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| vec![a[0] + b[0], a[1] + b[1]]).collect()).collect();
            prop_assert_eq!(s.matrix(&xy).unwrap().entries, sum);
        }

        #[test]
        fn iterated_product_and_membership(x in prop::collection::vec(-2i128..=2, 16), y in prop::collection::vec(-2i128..=2, 16)) {
            for (d, mode) in [(sqrt2(), DetMode::DInOF), (unit_i(), DetMode::DInOL)] {
                let q = quaternion_stbc(&d);
                prop_assert!(q.product_holds(&x, &y).unwrap());
                prop_assert!(q.det_membership(&x, mode).unwrap().member);
                // the first column is the column of x itself
                let m = q.matrix(&x).unwrap();
                let first: Vec<Vec<Int>> = m.entries.iter().map(|r| r[0].clone()).collect();
                prop_assert_eq!(first, q.column(&x).unwrap());
            }
        }
    }
}
