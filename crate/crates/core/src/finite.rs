//! Finite quotient rings `O / I` realized through the Smith normal form of the
//! ideal basis, with CRT idempotents, induced maps and fixed subrings.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::{self, Int, Matrix};
use crate::order::{IdealLattice, IntegralOrder, MapKind, RingMap};
use crate::ring::Ring;

/// A residue vector; coordinate `k` lies in `[0, d_k)` for the `k`-th
/// nontrivial elementary divisor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FiniteRingElem(pub Vec<Int>);

#[derive(Debug)]
struct Quotient {
    host: IntegralOrder,
    ideal: IdealLattice,
    divisors: Vec<Int>,
    active: Vec<usize>,
    moduli: Vec<Int>,
    v: Matrix,
    vinv: Matrix,
    table: Vec<Vec<Vec<Int>>>,
    one: Vec<Int>,
    commutative: bool,
}

/// `host / ideal` as a finite ring.
#[derive(Debug, Clone)]
pub struct FiniteRing(Arc<Quotient>);

/// Build the quotient ring. Multiplication is transported through the
/// Smith change of basis, so `project` is a ring homomorphism with kernel
/// exactly the ideal.
pub fn quotient(order: &IntegralOrder, ideal: &IdealLattice) -> Result<FiniteRing> {
    let (divisors, v, vinv) = intmat::smith(ideal.basis());
    if divisors.iter().any(|&d| d == 0) {
        return Err(Error::ZeroDeterminant);
    }
    let active: Vec<usize> = (0..divisors.len()).filter(|&k| divisors[k] > 1).collect();
    let moduli: Vec<Int> = active.iter().map(|&k| divisors[k]).collect();
    let mut q = Quotient {
        host: order.clone(),
        ideal: ideal.clone(),
        divisors,
        active,
        moduli,
        v,
        vinv,
        table: Vec::new(),
        one: Vec::new(),
        commutative: true,
    };
    let r = q.active.len();
    let lifts: Vec<Vec<Int>> = (0..r)
        .map(|k| {
            let mut e = vec![0; r];
            e[k] = 1;
            q.lift(&e)
        })
        .collect();
    q.table = (0..r)
        .map(|i| (0..r).map(|j| q.project(&order.mul(&lifts[i], &lifts[j]))).collect())
        .collect();
    q.one = q.project(order.one_coords());
    q.commutative = (0..r).all(|i| (0..r).all(|j| q.table[i][j] == q.table[j][i]));
    Ok(FiniteRing(Arc::new(q)))
}

impl Quotient {
    fn project(&self, x: &[Int]) -> Vec<Int> {
        let y = intmat::vec_mat(x, &self.v);
        self.active
            .iter()
            .zip(&self.moduli)
            .map(|(&k, &m)| intmat::modulo(y[k], m))
            .collect()
    }

    fn lift(&self, r: &[Int]) -> Vec<Int> {
        let mut y = vec![0; self.divisors.len()];
        for (&k, &x) in self.active.iter().zip(r) {
            y[k] = x;
        }
        intmat::vec_mat(&y, &self.vinv)
    }
}

impl FiniteRing {
    pub fn host(&self) -> &IntegralOrder {
        &self.0.host
    }

    pub fn ideal(&self) -> &IdealLattice {
        &self.0.ideal
    }

    /// Full Smith diagonal, including unit divisors.
    pub fn elementary_divisors(&self) -> &[Int] {
        &self.0.divisors
    }

    pub fn project(&self, x: &[Int]) -> FiniteRingElem {
        FiniteRingElem(self.0.project(x))
    }

    /// Canonical integer representative of a residue.
    pub fn lift(&self, e: &FiniteRingElem) -> Vec<Int> {
        self.0.lift(&e.0)
    }

    pub fn size(&self) -> u128 {
        self.cardinality().expect("finite")
    }

    fn check_bound(&self, bound: u128, what: &str) -> Result<()> {
        let n = self.size();
        if n > bound {
            return Err(Error::TooLarge { what: what.into(), needed: n, bound });
        }
        Ok(())
    }

    /// `x` is a unit iff left multiplication by `x` is injective.
    pub fn is_unit_fast(&self, x: &FiniteRingElem) -> bool {
        intmat::subgroup_order(&self.left_mul_rows(x), &self.0.moduli) == self.size()
    }

    /// Non-units, in lexicographic order.
    pub fn non_units(&self, bound: u128) -> Result<Vec<FiniteRingElem>> {
        self.check_bound(bound, "ring elements")?;
        Ok(self
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| !self.is_unit_fast(x))
            .collect())
    }

    /// Idempotents `e² = e`, in lexicographic order.
    pub fn idempotents(&self, bound: u128) -> Result<Vec<FiniteRingElem>> {
        self.check_bound(bound, "idempotent search")?;
        Ok(self
            .elements()
            .unwrap()
            .into_iter()
            .filter(|e| self.mul(e, e) == *e)
            .collect())
    }
}

impl Ring for FiniteRing {
    type Elem = FiniteRingElem;

    fn zero(&self) -> FiniteRingElem {
        FiniteRingElem(vec![0; self.0.moduli.len()])
    }
    fn one(&self) -> FiniteRingElem {
        FiniteRingElem(self.0.one.clone())
    }
    fn add(&self, a: &FiniteRingElem, b: &FiniteRingElem) -> FiniteRingElem {
        FiniteRingElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.0.moduli)
                .map(|((x, y), &m)| intmat::modulo(x + y, m))
                .collect(),
        )
    }
    fn neg(&self, a: &FiniteRingElem) -> FiniteRingElem {
        FiniteRingElem(
            a.0.iter()
                .zip(&self.0.moduli)
                .map(|(x, &m)| intmat::modulo(-x, m))
                .collect(),
        )
    }
    fn mul(&self, a: &FiniteRingElem, b: &FiniteRingElem) -> FiniteRingElem {
        let r = self.0.moduli.len();
        let mut out = vec![0; r];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y;
                for (o, &c) in out.iter_mut().zip(&self.0.table[i][j]) {
                    *o += xy * c;
                }
            }
        }
        FiniteRingElem(
            out.into_iter()
                .zip(&self.0.moduli)
                .map(|(x, &m)| intmat::modulo(x, m))
                .collect(),
        )
    }
    fn rank(&self) -> usize {
        self.0.moduli.len()
    }
    fn moduli(&self) -> Vec<Int> {
        self.0.moduli.clone()
    }
    fn coords(&self, a: &FiniteRingElem) -> Vec<Int> {
        a.0.clone()
    }
    fn from_coords(&self, c: &[Int]) -> FiniteRingElem {
        FiniteRingElem(
            c.iter()
                .zip(&self.0.moduli)
                .map(|(&x, &m)| intmat::modulo(x, m))
                .collect(),
        )
    }
    fn is_commutative(&self) -> bool {
        self.0.commutative
    }
}

/// One CRT component: a primitive idempotent and the local factor `e·R`.
#[derive(Debug, Clone)]
pub struct CrtFactor {
    pub idempotent: FiniteRingElem,
    pub local: FiniteRing,
}

/// Complete orthogonal set of primitive idempotents with their local factor
/// rings, ordered lexicographically by residue vector.
pub fn crt_decompose(ring: &FiniteRing, bound: u128) -> Result<Vec<CrtFactor>> {
    if !ring.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let idem = ring.idempotents(bound)?;
    let zero = ring.zero();
    let primitive: Vec<FiniteRingElem> = idem
        .iter()
        .filter(|e| **e != zero)
        .filter(|e| {
            idem.iter().all(|f| {
                let ef = ring.mul(e, f);
                ef == zero || ef == **e
            })
        })
        .cloned()
        .collect();
    let host = ring.host();
    primitive
        .into_iter()
        .map(|e| {
            let complement = ring.lift(&ring.sub(&ring.one(), &e));
            let mut rows = ring.ideal().basis().clone();
            for k in 0..host.rank() {
                rows.push(host.mul(&complement, &host.basis(k)));
            }
            let ideal = IdealLattice::from_basis(host, &rows)?;
            Ok(CrtFactor { idempotent: e, local: quotient(host, &ideal)? })
        })
        .collect()
}

/// Transport a map on the host order to the quotient; the ideal must be
/// stable under it.
pub fn induce_map(map: &RingMap, ring: &FiniteRing) -> Result<RingMap> {
    let stable = |m: &Matrix| {
        ring.ideal().basis().iter().all(|row| {
            let img = intmat::vec_mat(row, m);
            ring.ideal().contains(&img)
        })
    };
    if !stable(&map.matrix) {
        return Err(Error::IdealNotStable("map moves the ideal".into()));
    }
    let induce = |m: &Matrix| -> Matrix {
        ring.generators()
            .iter()
            .map(|g| ring.0.project(&intmat::vec_mat(&ring.lift(g), m)))
            .collect()
    };
    let kind = match &map.kind {
        MapKind::Derivation { sigma } => {
            if !stable(sigma) {
                return Err(Error::IdealNotStable("twisting map moves the ideal".into()));
            }
            MapKind::Derivation { sigma: induce(sigma) }
        }
        k => k.clone(),
    };
    RingMap::new(ring, induce(&map.matrix), kind)
}

/// Additive description of a subring: Z-generators and cardinality.
#[derive(Debug, Clone, Serialize)]
pub struct SubringDescription {
    pub generators: Vec<FiniteRingElem>,
    pub cardinality: u128,
}

/// Fixed points of an endomorphism of a finite ring, verified to be a unital
/// subring.
pub fn fixed_subring(ring: &FiniteRing, map: &RingMap) -> Result<SubringDescription> {
    let n = ring.rank();
    let shifted: Matrix = (0..n)
        .map(|i| (0..n).map(|j| map.matrix[i][j] - Int::from(i == j)).collect())
        .collect();
    subgroup_kernel(ring, &shifted).and_then(|desc| {
        for a in &desc.generators {
            for b in &desc.generators {
                let ab = ring.mul(a, b);
                if map.apply(ring, &ab) != ab {
                    return Err(Error::BadMap("fixed points are not closed".into()));
                }
            }
        }
        if map.apply(ring, &ring.one()) != ring.one() {
            return Err(Error::BadMap("unity is not fixed".into()));
        }
        Ok(desc)
    })
}

/// Kernel of the additive map with coordinate matrix `m` on a finite ring.
pub fn subgroup_kernel<R: Ring<Elem = FiniteRingElem>>(ring: &R, m: &Matrix) -> Result<SubringDescription> {
    let moduli = ring.moduli();
    let gens: Vec<FiniteRingElem> = intmat::kernel(m, &moduli)
        .into_iter()
        .map(|r| ring.from_coords(&r))
        .filter(|e| !ring.is_zero(e))
        .collect();
    let coords: Matrix = gens.iter().map(|g| g.0.clone()).collect();
    let cardinality = intmat::subgroup_order(&coords, &moduli);
    Ok(SubringDescription { generators: gens, cardinality })
}

/// Coarse structure of a finite commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingStructure {
    Field { size: u128 },
    ChainRing { size: u128, residue_field: u128 },
    Local { size: u128, residue_field: u128 },
    Product { factors: Vec<RingStructure> },
}

fn classify_local(ring: &FiniteRing, bound: u128) -> Result<RingStructure> {
    let size = ring.size();
    let maximal = ring.non_units(bound)?;
    if maximal.len() == 1 {
        return Ok(RingStructure::Field { size });
    }
    let residue_field = size / maximal.len() as u128;
    let m_set: std::collections::BTreeSet<_> = maximal.iter().cloned().collect();
    let elements = ring.elements().unwrap();
    let principal = maximal.iter().any(|g| {
        let span: std::collections::BTreeSet<_> = elements.iter().map(|r| ring.mul(r, g)).collect();
        span == m_set
    });
    Ok(if principal {
        RingStructure::ChainRing { size, residue_field }
    } else {
        RingStructure::Local { size, residue_field }
    })
}

pub fn classify(ring: &FiniteRing, bound: u128) -> Result<RingStructure> {
    let factors = crt_decompose(ring, bound)?;
    if factors.len() == 1 {
        return classify_local(ring, bound);
    }
    Ok(RingStructure::Product {
        factors: factors
            .iter()
            .map(|f| classify_local(&f.local, bound))
            .collect::<Result<_>>()?,
    })
}

impl RingStructure {
    pub fn is_field(&self) -> bool {
        matches!(self, RingStructure::Field { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            RingStructure::Field { size } => format!("field of {size}"),
            RingStructure::ChainRing { size, residue_field } => {
                format!("chain ring of {size} with residue field of {residue_field}")
            }
            RingStructure::Local { size, residue_field } => {
                format!("local ring of {size} with residue field of {residue_field}")
            }
            RingStructure::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|f| f.describe()).collect();
                format!("product of {}", parts.join(" × "))
            }
        }
    }
}

/// `Z/p` as a finite ring.
pub fn prime_field(p: Int) -> Result<FiniteRing> {
    let z = crate::presets::integers();
    quotient(&z, &IdealLattice::rational(&z, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn gauss_mod(p: Int) -> FiniteRing {
        let g = presets::gaussian();
        quotient(&g, &IdealLattice::rational(&g, p).unwrap()).unwrap()
    }

    #[test]
    fn quotient_cardinalities_and_structure() {
        let r3 = gauss_mod(3);
        assert_eq!(r3.size(), 9);
        assert_eq!(classify(&r3, 10_000).unwrap(), RingStructure::Field { size: 9 });
        let r5 = gauss_mod(5);
        assert_eq!(r5.size(), 25);
        assert_eq!(
            classify(&r5, 10_000).unwrap(),
            RingStructure::Product {
                factors: vec![RingStructure::Field { size: 5 }, RingStructure::Field { size: 5 }]
            }
        );
        let r2 = gauss_mod(2);
        assert_eq!(r2.size(), 4);
        assert_eq!(
            classify(&r2, 10_000).unwrap(),
            RingStructure::ChainRing { size: 4, residue_field: 2 }
        );
        let v = r2.project(&[1, 1]);
        assert_ne!(v, r2.zero());
        assert_eq!(r2.mul(&v, &v), r2.zero());
    }

    #[test]
    fn project_is_a_homomorphism_with_ideal_kernel() {
        let g = presets::gaussian();
        let r = gauss_mod(5);
        for a in -4..5 {
            for b in -3..4 {
                let x = vec![a, b];
                let y = vec![b - 1, 2 * a + 1];
                assert_eq!(r.project(&g.mul(&x, &y)), r.ring_mul_proj(&x, &y));
                assert_eq!(r.project(&x) == r.zero(), r.ideal().contains(&x));
            }
        }
        for e in r.elements().unwrap() {
            assert_eq!(r.project(&r.lift(&e)), e);
        }
    }

    impl FiniteRing {
        fn ring_mul_proj(&self, x: &[Int], y: &[Int]) -> FiniteRingElem {
            self.mul(&self.project(x), &self.project(y))
        }
    }

    #[test]
    fn crt_idempotents_are_orthogonal_and_complete() {
        let r = gauss_mod(5);
        let f = crt_decompose(&r, 10_000).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].local.size() * f[1].local.size(), 25);
        let (e0, e1) = (&f[0].idempotent, &f[1].idempotent);
        assert_eq!(r.mul(e0, e0), *e0);
        assert_eq!(r.mul(e0, e1), r.zero());
        assert_eq!(r.add(e0, e1), r.one());
        for p in [2, 3] {
            let f = crt_decompose(&gauss_mod(p), 10_000).unwrap();
            assert_eq!(f.len(), 1);
            assert_eq!(f[0].idempotent, gauss_mod(p).one());
        }
        assert!(matches!(crt_decompose(&r, 10), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn induced_conjugation() {
        let g = presets::gaussian();
        let conj = presets::gaussian_conj(&g);
        let r3 = gauss_mod(3);
        let s3 = induce_map(&conj, &r3).unwrap();
        for x in r3.elements().unwrap() {
            assert_eq!(s3.apply(&r3, &x), r3.pow(&x, 3));
        }
        let r2 = gauss_mod(2);
        let s2 = induce_map(&conj, &r2).unwrap();
        for x in r2.elements().unwrap() {
            assert_eq!(s2.apply(&r2, &x), x);
        }
        let id = induce_map(&RingMap::identity(&g), &r3).unwrap();
        assert_eq!(id.matrix, intmat::identity(2));
        // conjugation moves the prime (1+2i)
        let p = IdealLattice::generated_by(&g, &[vec![1, 2]]).unwrap();
        let rp = quotient(&g, &p).unwrap();
        assert!(matches!(induce_map(&conj, &rp), Err(Error::IdealNotStable(_))));
    }

    #[test]
    fn fixed_subrings() {
        let g = presets::gaussian();
        let conj = presets::gaussian_conj(&g);
        let r3 = gauss_mod(3);
        let s = induce_map(&conj, &r3).unwrap();
        assert_eq!(fixed_subring(&r3, &s).unwrap().cardinality, 3);
        let r5 = gauss_mod(5);
        let s = induce_map(&conj, &r5).unwrap();
        let fixed = fixed_subring(&r5, &s).unwrap();
        assert_eq!(fixed.cardinality, 5);
        // σ̄ swaps the two CRT idempotents
        let f = crt_decompose(&r5, 10_000).unwrap();
        assert_eq!(s.apply(&r5, &f[0].idempotent), f[1].idempotent);
        let id = RingMap::identity(&r5);
        assert_eq!(fixed_subring(&r5, &id).unwrap().cardinality, 25);
    }
}
