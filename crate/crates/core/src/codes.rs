//! Cyclic `(f, σ, δ)`-codes: left ideals of a finite Petit algebra read as
//! coefficient vectors in `S^m`.

use std::collections::BTreeSet;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::EnumerationBounds;
use crate::error::{Error, Result};
use crate::intmat::{self, Matrix};
use crate::petit::{AlgElem, PetitAlgebra};
use crate::ring::Ring;
use crate::skew::SkewPoly;

/// Where a code came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance<E> {
    FromDivisor { g: Vec<E> },
    FromIdealGenerator { x: Vec<E> },
    DualOf { cardinality: u128 },
    Zero,
}

/// A code of length `m` over a finite alphabet, stored with its full sorted
/// codeword list and a set of spanning rows.
#[derive(Debug, Clone, Serialize)]
pub struct LinearCode<E> {
    pub length: usize,
    pub generator_rows: Vec<AlgElem<E>>,
    pub codewords: Vec<AlgElem<E>>,
    pub provenance: Provenance<E>,
}

impl<E: Clone + Ord> LinearCode<E> {
    pub fn cardinality(&self) -> u128 {
        self.codewords.len() as u128
    }

    pub fn contains(&self, w: &AlgElem<E>) -> bool {
        self.codewords.binary_search(w).is_ok()
    }

    pub fn is_subcode_of(&self, other: &LinearCode<E>) -> bool {
        self.codewords.iter().all(|w| other.contains(w))
    }

    pub fn same_words(&self, other: &LinearCode<E>) -> bool {
        self.codewords == other.codewords
    }

    /// `log_q |C|` when `|C|` is a power of `q`.
    pub fn dimension(&self, q: u128) -> Option<u32> {
        let mut n = self.cardinality();
        let mut k = 0;
        while n > 1 && q > 1 && n % q == 0 {
            n /= q;
            k += 1;
        }
        (n == 1).then_some(k)
    }
}

/// Minimum Hamming weight over nonzero codewords.
pub fn min_distance<R: Ring>(alphabet: &R, code: &LinearCode<R::Elem>) -> Result<usize> {
    code.codewords
        .iter()
        .map(|w| w.0.iter().filter(|x| !alphabet.is_zero(x)).count())
        .filter(|&w| w > 0)
        .min()
        .ok_or(Error::ZeroCode)
}

/// Spanning rows of an additive subgroup, in Hermite order.
pub fn additive_basis<R: Ring>(alg: &PetitAlgebra<R>, words: &[AlgElem<R::Elem>]) -> Vec<AlgElem<R::Elem>> {
    let mut rows: Matrix = words.iter().map(|w| alg.coords(w)).collect();
    rows.extend(modulus_rows(&alg.moduli()));
    intmat::hermite(&rows, alg.rank())
        .into_iter()
        .map(|r| alg.from_coords(&r))
        .filter(|w| !alg.is_zero(w))
        .collect()
}

fn modulus_rows(moduli: &[intmat::Int]) -> Matrix {
    moduli
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(k, &m)| {
            let mut r = vec![0; moduli.len()];
            r[k] = m;
            r
        })
        .collect()
}

fn finite_size<R: Ring>(alg: &PetitAlgebra<R>) -> Result<u128> {
    alg.cardinality().ok_or(Error::InfiniteRing)
}

/// The code `{p·g : deg p < m − deg g}` of a monic right divisor `g` of `f`,
/// spanned by `tⁱ∘g` for `i < m − deg g`.
pub fn code_from_divisor<R: Ring>(
    alg: &PetitAlgebra<R>,
    g: &SkewPoly<R::Elem>,
    bounds: &EnumerationBounds,
) -> Result<LinearCode<R::Elem>> {
    let ctx = alg.context();
    if !ctx.is_monic(g) {
        return Err(Error::NotMonic);
    }
    let m = alg.degree();
    let k = g.degree().finite().unwrap();
    if k >= m {
        return Err(Error::WrongShape("divisor must have degree below m".into()));
    }
    if !ctx.is_right_divisor(g, alg.f())? {
        return Err(Error::NotARightDivisor);
    }
    let q = alg.base().cardinality().ok_or(Error::InfiniteRing)?;
    let dim = (m - k) as u32;
    bounds.elements("codewords", q.saturating_pow(dim))?;
    let rows: Vec<AlgElem<R::Elem>> = (0..m - k)
        .map(|i| alg.from_poly(&ctx.mul(&ctx.t_pow(i), g)))
        .collect();
    let elems = alg.base().elements().unwrap();
    let radix = vec![elems.len() as intmat::Int; m - k];
    let set: BTreeSet<AlgElem<R::Elem>> = crate::ring::enumerate_box(&radix)
        .map(|idx| {
            let p = ctx.poly(idx.iter().map(|&i| elems[i as usize].clone()).collect());
            alg.from_poly(&ctx.mul(&p, g))
        })
        .collect();
    Ok(LinearCode {
        length: m,
        generator_rows: rows,
        codewords: set.into_iter().collect(),
        provenance: Provenance::FromDivisor { g: g.coeffs().to_vec() },
    })
}

/// The zero code of length `m`.
pub fn zero_code<R: Ring>(alg: &PetitAlgebra<R>) -> LinearCode<R::Elem> {
    LinearCode {
        length: alg.degree(),
        generator_rows: Vec::new(),
        codewords: vec![alg.zero()],
        provenance: Provenance::Zero,
    }
}

/// Smallest additive subgroup containing `x` and closed under left
/// multiplication by the algebra, found by a fixed-point loop over the
/// additive generators.
pub fn principal_left_ideal<R: Ring>(
    alg: &PetitAlgebra<R>,
    x: &AlgElem<R::Elem>,
    bounds: &EnumerationBounds,
) -> Result<LinearCode<R::Elem>> {
    finite_size(alg)?;
    let n = alg.rank();
    let moduli = alg.moduli();
    let mods = modulus_rows(&moduli);
    let echelon = |gens: &Matrix| {
        let mut rows = gens.clone();
        rows.extend(mods.iter().cloned());
        intmat::hermite(&rows, n)
    };
    let mut gens: Matrix = vec![alg.coords(x)];
    let mut ech = echelon(&gens);
    let left = alg.generators();
    let mut done = 0;
    while done < gens.len() {
        let y = alg.from_coords(&gens[done]);
        for a in &left {
            let v = alg.coords(&alg.mul(a, &y));
            if !intmat::in_span(&ech, &v) {
                gens.push(v);
                ech = echelon(&gens);
            }
        }
        done += 1;
    }
    let card = intmat::subgroup_order(&gens, &moduli);
    bounds.elements("ideal elements", card)?;
    let words: Vec<AlgElem<R::Elem>> = gens.iter().map(|g| alg.from_coords(g)).collect();
    let generator_rows = additive_basis(alg, &words);
    Ok(LinearCode {
        length: alg.degree(),
        codewords: alg.span(&generator_rows),
        generator_rows,
        provenance: Provenance::FromIdealGenerator { x: x.0.clone() },
    })
}

/// Codes from every monic right divisor of `f` of degree below `m`, followed
/// by the zero code.
pub fn all_divisor_codes<R: Ring>(alg: &PetitAlgebra<R>, bounds: &EnumerationBounds) -> Result<Vec<LinearCode<R::Elem>>> {
    let divisors = alg.context().monic_right_divisors(alg.f(), bounds)?;
    let mut out = divisors
        .iter()
        .filter(|g| g.degree().finite().unwrap() < alg.degree())
        .map(|g| code_from_divisor(alg, g, bounds))
        .collect::<Result<Vec<_>>>()?;
    out.push(zero_code(alg));
    Ok(out)
}

/// Every distinct principal left ideal, ordered by cardinality then by
/// codeword list.
pub fn all_principal_ideals<R: Ring>(alg: &PetitAlgebra<R>, bounds: &EnumerationBounds) -> Result<Vec<LinearCode<R::Elem>>> {
    let card = finite_size(alg)?;
    bounds.elements("algebra elements", card)?;
    let elems = alg.elements().unwrap();
    let codes = elems
        .par_iter()
        .map(|x| principal_left_ideal(alg, x, bounds))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = BTreeSet::new();
    let mut out: Vec<LinearCode<R::Elem>> = Vec::new();
    for c in codes {
        if seen.insert(c.codewords.clone()) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.cardinality().cmp(&b.cardinality()).then_with(|| a.codewords.cmp(&b.codewords)));
    Ok(out)
}

/// Membership in the code of `g` by right division: `c ∈ C` iff `g` divides
/// `c` on the right.
pub fn in_divisor_code<R: Ring>(alg: &PetitAlgebra<R>, g: &SkewPoly<R::Elem>, c: &AlgElem<R::Elem>) -> Result<bool> {
    Ok(alg.context().right_remainder(&alg.to_poly(c), g)?.is_zero())
}

/// Check `c ∈ C(g) ⟺ c∘h = 0` for central monic `h` with `f = g·h`,
/// exhaustively when the algebra is within bounds and on a fixed-seed sample
/// otherwise.
pub fn parity_check_verify<R: Ring>(
    alg: &PetitAlgebra<R>,
    g: &SkewPoly<R::Elem>,
    h: &SkewPoly<R::Elem>,
    bounds: &EnumerationBounds,
) -> Result<bool> {
    let ctx = alg.context();
    if !ctx.is_monic(h) {
        return Err(Error::NotMonic);
    }
    if !ctx.is_central(h) {
        return Err(Error::HNotCentral);
    }
    if ctx.mul(g, h) != *alg.f() {
        return Err(Error::FactorizationWrong("g·h != f".into()));
    }
    if ctx.mul(h, g) != *alg.f() {
        return Err(Error::FactorizationWrong("h·g != f".into()));
    }
    let hh = alg.from_poly(h);
    let check = |c: &AlgElem<R::Elem>| -> Result<bool> {
        Ok(in_divisor_code(alg, g, c)? == alg.is_zero(&alg.mul(c, &hh)))
    };
    let card = finite_size(alg)?;
    if card <= bounds.max_elements {
        let elems = alg.elements().unwrap();
        let bad = elems.par_iter().map(check).collect::<Result<Vec<bool>>>()?;
        return Ok(bad.into_iter().all(|ok| ok));
    }
    // sampled: random words, and random codewords p·g
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let moduli = alg.moduli();
    let k = g.degree().finite().unwrap();
    for _ in 0..bounds.max_elements {
        let c: Vec<intmat::Int> = moduli.iter().map(|&m| rng.gen_range(0..m)).collect();
        if !check(&alg.from_coords(&c))? {
            return Ok(false);
        }
        let p: Vec<intmat::Int> = moduli[..(alg.degree() - k) * alg.base().rank()]
            .iter()
            .map(|&m| rng.gen_range(0..m))
            .collect();
        let pc = AlgElem(
            p.chunks(alg.base().rank())
                .map(|ch| alg.base().from_coords(ch))
                .collect(),
        );
        let word = alg.from_poly(&ctx.mul(&alg.context().poly(pc.0), g));
        if !check(&word)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(σ(a_{m−1})·c, σ(a₀), …, σ(a_{m−2}))`.
pub fn constacyclic_shift<R: Ring>(alg: &PetitAlgebra<R>, w: &AlgElem<R::Elem>, c: &R::Elem) -> AlgElem<R::Elem> {
    let ctx = alg.context();
    let m = w.0.len();
    let mut out = Vec::with_capacity(m);
    out.push(alg.base().mul(&ctx.sigma(&w.0[m - 1]), c));
    out.extend(w.0[..m - 1].iter().map(|a| ctx.sigma(a)));
    AlgElem(out)
}

/// A codeword whose shift leaves the code, if any.
pub fn constacyclic_witness<R: Ring>(
    alg: &PetitAlgebra<R>,
    code: &LinearCode<R::Elem>,
    c: &R::Elem,
) -> Option<AlgElem<R::Elem>> {
    code.codewords
        .iter()
        .find(|w| !code.contains(&constacyclic_shift(alg, w, c)))
        .cloned()
}

pub fn is_constacyclic<R: Ring>(alg: &PetitAlgebra<R>, code: &LinearCode<R::Elem>, c: &R::Elem) -> bool {
    constacyclic_witness(alg, code, c).is_none()
}

fn dot<R: Ring>(ring: &R, a: &AlgElem<R::Elem>, b: &AlgElem<R::Elem>) -> R::Elem {
    a.0.iter()
        .zip(&b.0)
        .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
}

/// `C⊥ = {b : Σ cᵢbᵢ = 0 for all c ∈ C}` by exhaustive scan, tested
/// against the spanning rows of `C` (the form is additive in `c`).
pub fn euclidean_dual<R: Ring>(
    alg: &PetitAlgebra<R>,
    code: &LinearCode<R::Elem>,
    bounds: &EnumerationBounds,
) -> Result<LinearCode<R::Elem>> {
    let card = finite_size(alg)?;
    bounds.elements("ambient space", card)?;
    let ring = alg.base();
    let spanning = additive_basis(alg, &code.codewords);
    let words: Vec<AlgElem<R::Elem>> = alg
        .elements()
        .unwrap()
        .into_par_iter()
        .filter(|b| spanning.iter().all(|c| ring.is_zero(&dot(ring, c, b))))
        .collect();
    Ok(LinearCode {
        length: alg.degree(),
        generator_rows: additive_basis(alg, &words),
        codewords: words,
        provenance: Provenance::DualOf { cardinality: code.cardinality() },
    })
}

/// Outcome of the dual-divisor construction.
#[derive(Debug, Clone, Serialize)]
pub struct DualReport<E> {
    /// `g⊥ = t^k·θ(h) = Σ σ^{j}(h_{k−j}) t^j`.
    pub g_perp: Vec<E>,
    /// `g⊥` scaled on the left to be monic; it spans the same left ideal.
    pub g_perp_monic: Vec<E>,
    /// The variant `Σ σ^{−j}(h_{k−j}) t^j`, monic. It agrees with `g⊥` when
    /// σ² fixes the coefficients of `h`.
    pub inverse_twist_monic: Vec<E>,
    /// The variant right-divides `f` and its code is also the dual.
    pub inverse_twist_match: bool,
    pub a0_squared_is_one: bool,
    pub code_cardinality: u128,
    pub dual_cardinality: u128,
    /// The code of `g⊥` equals the brute-force Euclidean dual.
    pub oracle_match: bool,
}

/// The dual divisor for a code with parity-check polynomial `h`, under the
/// hypotheses `h·g = f = g·h`, (i) `a₀ ∈ Fix(σ)` invertible and
/// (ii) `aᵢ = a₀⁻¹σ^{m−k−i}(a_{m−i})` for all `i`, where `f = Σ aᵢtⁱ` and
/// `k = deg h`, plus `g⊥` right-dividing `f`.
pub fn dual_divisor<R: Ring>(
    alg: &PetitAlgebra<R>,
    g: &SkewPoly<R::Elem>,
    h: &SkewPoly<R::Elem>,
    bounds: &EnumerationBounds,
) -> Result<DualReport<R::Elem>> {
    let ctx = alg.context();
    let ring = alg.base();
    if ctx.has_derivation() {
        return Err(Error::DerivationNotZero);
    }
    if !ring.is_commutative() {
        return Err(Error::NotCommutative);
    }
    if !ctx.is_monic(h) {
        return Err(Error::NotMonic);
    }
    let f = alg.f();
    if ctx.mul(h, g) != *f {
        return Err(Error::HypothesisFailed { which: "h·g = f".into(), index: None });
    }
    if ctx.mul(g, h) != *f {
        return Err(Error::HypothesisFailed { which: "g·h = f".into(), index: None });
    }
    let m = alg.degree() as i64;
    let k = h.degree().finite().unwrap();
    let a = f.coeffs();
    let a0 = &a[0];
    let a0_inv = match ring.inverse(a0) {
        Some(inv) if ctx.sigma(a0) == *a0 => inv,
        _ => return Err(Error::HypothesisFailed { which: "(i)".into(), index: None }),
    };
    for i in 0..=m as usize {
        let rhs = ring.mul(&a0_inv, &ctx.sigma_pow(&a[m as usize - i], m - k as i64 - i as i64)?);
        if a[i] != rhs {
            return Err(Error::HypothesisFailed { which: "(ii)".into(), index: Some(i) });
        }
    }
    // t^k·θ(h) = Σ t^{k−i}hᵢ = Σ σ^{k−i}(hᵢ)t^{k−i}
    let hc = h.coeffs();
    let twisted = |sign: i64| -> Result<SkewPoly<R::Elem>> {
        let coeffs = (0..=k).map(|j| ctx.sigma_pow(&hc[k - j], sign * j as i64)).collect::<Result<Vec<_>>>()?;
        Ok(ctx.poly(coeffs))
    };
    let g_perp = twisted(1)?;
    let monic = ctx.make_monic(&g_perp)?;
    if !ctx.is_right_divisor(&monic, f)? {
        return Err(Error::HypothesisFailed { which: "right_divisor".into(), index: None });
    }
    let code = code_from_divisor(alg, g, bounds)?;
    let dual = euclidean_dual(alg, &code, bounds)?;
    let code_of = |p: &SkewPoly<R::Elem>| -> Result<Option<LinearCode<R::Elem>>> {
        if !ctx.is_right_divisor(p, f)? {
            return Ok(None);
        }
        Ok(Some(if p.degree().finite() == Some(alg.degree()) { zero_code(alg) } else { code_from_divisor(alg, p, bounds)? }))
    };
    let perp_code = code_of(&monic)?.expect("checked above");
    let inverse = ctx.make_monic(&twisted(-1)?)?;
    let inverse_match = code_of(&inverse)?.is_some_and(|c| c.same_words(&dual));
    Ok(DualReport {
        g_perp: g_perp.coeffs().to_vec(),
        g_perp_monic: monic.coeffs().to_vec(),
        inverse_twist_monic: inverse.coeffs().to_vec(),
        inverse_twist_match: inverse_match,
        a0_squared_is_one: ring.mul(a0, a0) == ring.one(),
        code_cardinality: code.cardinality(),
        dual_cardinality: dual.cardinality(),
        oracle_match: perp_code.same_words(&dual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{induce_map, quotient, FiniteRing};
    use crate::order::IdealLattice;
    use crate::presets;
    use crate::skew::SkewContext;

    fn gauss_ctx(p: intmat::Int) -> SkewContext<FiniteRing> {
        let g = presets::gaussian();
        let r = quotient(&g, &IdealLattice::rational(&g, p).unwrap()).unwrap();
        let s = induce_map(&presets::gaussian_conj(&g), &r).unwrap();
        SkewContext::new(r, &s, None).unwrap()
    }

    fn algebra(p: intmat::Int, c: [intmat::Int; 2], m: usize) -> PetitAlgebra<FiniteRing> {
        let ctx = gauss_ctx(p);
        let f = ctx.binomial(m, &ctx.ring().project(&c));
        PetitAlgebra::new(ctx, f).unwrap()
    }

    #[test]
    fn trivial_codes() {
        let a = algebra(3, [0, 1], 2);
        let b = EnumerationBounds::default();
        let full = code_from_divisor(&a, &a.context().one(), &b).unwrap();
        assert_eq!(full.cardinality(), 81);
        assert_eq!(min_distance(a.base(), &full).unwrap(), 1);
        assert_eq!(min_distance(a.base(), &zero_code(&a)), Err(Error::ZeroCode));
        assert_eq!(principal_left_ideal(&a, &a.one(), &b).unwrap().cardinality(), 81);
        assert_eq!(principal_left_ideal(&a, &a.zero(), &b).unwrap().cardinality(), 1);
        let codes = all_principal_ideals(&a, &b).unwrap();
        assert_eq!(codes.iter().map(|c| c.cardinality()).collect::<Vec<_>>(), vec![1, 81]);
        assert!(euclidean_dual(&a, &full, &b).unwrap().cardinality() == 1);
        assert!(euclidean_dual(&a, &zero_code(&a), &b).unwrap().cardinality() == 81);
        assert!(is_constacyclic(&a, &full, &a.base().one()));
    }

    #[test]
    fn reducible_f_gives_rank_one_code() {
        let ctx = gauss_ctx(3);
        let r = ctx.ring().clone();
        let (x, y) = (r.project(&[1, 1]), r.project(&[2, 0]));
        let gx = ctx.poly(vec![r.neg(&x), r.one()]);
        let gy = ctx.poly(vec![r.neg(&y), r.one()]);
        let f = ctx.mul(&gx, &gy);
        let a = PetitAlgebra::new(ctx, f).unwrap();
        let b = EnumerationBounds::default();
        let code = code_from_divisor(&a, &gy, &b).unwrap();
        assert_eq!(code.cardinality(), 9);
        assert_eq!(code.dimension(9), Some(1));
        assert_eq!(min_distance(a.base(), &code).unwrap(), 2);
        assert_eq!(code_from_divisor(&a, &gx, &b).unwrap_err(), Error::NotARightDivisor);
        assert!(principal_left_ideal(&a, &a.from_poly(&gy), &b).unwrap().same_words(&code));
    }

    #[test]
    fn split_idempotent_ideal_and_its_dual() {
        let a = algebra(5, [0, 1], 2);
        let b = EnumerationBounds::default();
        let e = a.base().idempotents(100).unwrap().into_iter().find(|e| {
            !a.base().is_zero(e) && *e != a.base().one()
        });
        let code = principal_left_ideal(&a, &a.constant(e.unwrap()), &b).unwrap();
        assert!(code.cardinality() > 1 && code.cardinality() < 625);
        let dual = euclidean_dual(&a, &code, &b).unwrap();
        assert_eq!(code.cardinality() * dual.cardinality(), 625);
        let c = a.base().project(&[0, 1]);
        assert!(is_constacyclic(&a, &code, &c));
    }

    #[test]
    fn non_ideal_submodule_is_not_constacyclic() {
        let a = algebra(3, [0, 1], 2);
        let r = a.base().clone();
        let w = a.elem(vec![r.one(), r.zero()]).unwrap();
        let words = a.span(&[w.clone()]);
        let code = LinearCode { length: 2, generator_rows: vec![w], codewords: words, provenance: Provenance::Zero };
        assert!(constacyclic_witness(&a, &code, &r.project(&[0, 1])).is_some());
    }

    #[test]
    fn parity_check_on_central_factorization() {
        // f = t⁴ − 1 over F9 with Frobenius: h = t² − 1 is central
        let a = algebra(3, [1, 0], 4);
        let ctx = a.context();
        let one = a.base().one();
        let h = ctx.binomial(2, &one);
        let g = ctx.poly(vec![one.clone(), a.base().zero(), one.clone()]);
        let b = EnumerationBounds::default();
        assert!(parity_check_verify(&a, &g, &h, &b).unwrap());
        assert_eq!(parity_check_verify(&a, &g, &ctx.t_pow(1), &b), Err(Error::HNotCentral));
        let f = a.f().clone();
        assert!(parity_check_verify(&a, &ctx.one(), &f, &b).unwrap());
    }

    #[test]
    fn dual_divisor_for_binomial() {
        let a = algebra(3, [1, 0], 4);
        let ctx = a.context();
        let one = a.base().one();
        let h = ctx.binomial(2, &one);
        let g = ctx.poly(vec![one.clone(), a.base().zero(), one.clone()]);
        let rep = dual_divisor(&a, &g, &h, &EnumerationBounds::default()).unwrap();
        assert!(rep.oracle_match);
        assert!(rep.a0_squared_is_one);
        assert_eq!(rep.code_cardinality * rep.dual_cardinality, 9u128.pow(4));
    }

    #[test]
    fn dual_divisor_twist_direction() {
        // σ of order 3 on F8 separates σ^{j} from σ^{−j}
        let t = crate::presets::theta7();
        let r = quotient(&t, &crate::order::IdealLattice::rational(&t, 2).unwrap()).unwrap();
        let s = induce_map(&crate::presets::theta7_tau(&t), &r).unwrap();
        let ctx = crate::skew::SkewContext::new(r.clone(), &s, None).unwrap();
        let f = ctx.binomial(3, &r.one());
        let a = PetitAlgebra::new(ctx.clone(), f.clone()).unwrap();
        let b = EnumerationBounds::default();
        let mut inverse_failures = 0;
        for g in ctx.monic_right_divisors(&f, &b).unwrap() {
            let (h, _) = ctx.right_divide(&f, &g).unwrap();
            if let Ok(rep) = dual_divisor(&a, &g, &h, &b) {
                assert!(rep.oracle_match);
                inverse_failures += usize::from(!rep.inverse_twist_match);
            }
        }
        assert!(inverse_failures > 0);
    }

    #[test]
    fn dual_hypothesis_failures_are_named() {
        let a = algebra(3, [0, 1], 2);
        let ctx = a.context();
        let b = EnumerationBounds::default();
        let err = dual_divisor(&a, &ctx.one(), a.f(), &b).unwrap_err();
        assert_eq!(err, Error::HypothesisFailed { which: "(i)".into(), index: None });
    }
}
