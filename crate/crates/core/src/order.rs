//! Integral orders given by structure constants, their maps and ideals, and
//! the exact trace form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{self, Int, Matrix};
use crate::ring::{self, Ring};

/// A unital ring free of finite rank over the integers.
///
/// `table[i][j]` holds the coordinates of `bᵢ·bⱼ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralOrder {
    rank: usize,
    table: Vec<Vec<Vec<Int>>>,
    one: Vec<Int>,
    commutative: bool,
}

impl IntegralOrder {
    /// Validate the structure constants and build the order.
    ///
    /// Associativity and the unity law are checked on every basis triple.
    pub fn new(rank: usize, table: Vec<Vec<Vec<Int>>>, one: Vec<Int>) -> Result<Self> {
        let shape_err = |detail: &str| Error::BadShape { rank, detail: detail.to_string() };
        if rank == 0 {
            return Err(shape_err("rank must be positive"));
        }
        if table.len() != rank
            || table.iter().any(|r| r.len() != rank || r.iter().any(|c| c.len() != rank))
        {
            return Err(shape_err("mul_table must be rank × rank × rank"));
        }
        if one.len() != rank {
            return Err(shape_err("unity has the wrong length"));
        }
        let commutative = (0..rank).all(|i| (0..rank).all(|j| table[i][j] == table[j][i]));
        let order = IntegralOrder { rank, table, one, commutative };
        for i in 0..rank {
            let b = order.basis(i);
            if order.mul(&order.one, &b) != b || order.mul(&b, &order.one) != b {
                return Err(Error::BadUnity(i));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                let ij = order.mul(&order.basis(i), &order.basis(j));
                for k in 0..rank {
                    let bk = order.basis(k);
                    let jk = order.mul(&order.basis(j), &bk);
                    if order.mul(&ij, &bk) != order.mul(&order.basis(i), &jk) {
                        return Err(Error::NonAssociativeTable(i, j, k));
                    }
                }
            }
        }
        Ok(order)
    }

    pub fn basis(&self, i: usize) -> Vec<Int> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    pub fn table(&self) -> &Vec<Vec<Vec<Int>>> {
        &self.table
    }

    pub fn one_coords(&self) -> &[Int] {
        &self.one
    }

    /// Tensor product `A ⊗_Z B` with basis `aᵢ ⊗ bⱼ` at index `i·rank(B) + j`.
    pub fn tensor(a: &IntegralOrder, b: &IntegralOrder) -> Result<IntegralOrder> {
        let (ra, rb) = (a.rank, b.rank);
        let n = ra * rb;
        let mut table = vec![vec![vec![0; n]; n]; n];
        for i1 in 0..ra {
            for j1 in 0..rb {
                for i2 in 0..ra {
                    for j2 in 0..rb {
                        let out = &mut table[i1 * rb + j1][i2 * rb + j2];
                        for (k1, &x) in a.table[i1][i2].iter().enumerate() {
                            for (k2, &y) in b.table[j1][j2].iter().enumerate() {
                                out[k1 * rb + k2] += x * y;
                            }
                        }
                    }
                }
            }
        }
        let one = kron_vec(&a.one, &b.one);
        IntegralOrder::new(n, table, one)
    }

    /// Matrix of the left regular representation: row `k` is `x·b_k`.
    pub fn regular_rep(&self, x: &[Int]) -> Matrix {
        self.left_mul_rows(&x.to_vec())
    }

    /// Trace of the left regular representation of `x`.
    pub fn trace(&self, x: &[Int]) -> Int {
        let rep = self.regular_rep(x);
        (0..self.rank).map(|k| rep[k][k]).sum()
    }
}

pub(crate) fn kron_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

impl Ring for IntegralOrder {
    type Elem = Vec<Int>;

    fn zero(&self) -> Vec<Int> {
        vec![0; self.rank]
    }
    fn one(&self) -> Vec<Int> {
        self.one.clone()
    }
    fn add(&self, a: &Vec<Int>, b: &Vec<Int>) -> Vec<Int> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<Int>) -> Vec<Int> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<Int>, b: &Vec<Int>) -> Vec<Int> {
        let mut out = vec![0; self.rank];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                for (o, &c) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += x * y * c;
                }
            }
        }
        out
    }
    fn rank(&self) -> usize {
        self.rank
    }
    fn moduli(&self) -> Vec<Int> {
        vec![0; self.rank]
    }
    fn coords(&self, a: &Vec<Int>) -> Vec<Int> {
        a.clone()
    }
    fn from_coords(&self, c: &[Int]) -> Vec<Int> {
        c.to_vec()
    }
    fn is_commutative(&self) -> bool {
        self.commutative
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    Endomorphism,
    /// A left σ-derivation; `sigma` is the twisting endomorphism.
    Derivation { sigma: Matrix },
    Involution,
}

/// An additive map on a ring, acting on coordinates: row `j` of `matrix` is
/// the image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingMap {
    pub matrix: Matrix,
    pub kind: MapKind,
}

impl RingMap {
    /// Build and verify the kind invariant on all generator pairs.
    pub fn new<R: Ring>(ring: &R, matrix: Matrix, kind: MapKind) -> Result<Self> {
        let n = ring.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::BadMap(format!("matrix must be {n} × {n}")));
        }
        let map = RingMap { matrix, kind };
        map.verify(ring)?;
        Ok(map)
    }

    pub fn identity<R: Ring>(ring: &R) -> Self {
        RingMap { matrix: intmat::identity(ring.rank()), kind: MapKind::Involution }
    }

    pub fn zero_derivation<R: Ring>(ring: &R) -> Self {
        RingMap {
            matrix: intmat::zeros(ring.rank(), ring.rank()),
            kind: MapKind::Derivation { sigma: intmat::identity(ring.rank()) },
        }
    }

    pub fn verify<R: Ring>(&self, ring: &R) -> Result<()> {
        match &self.kind {
            MapKind::Endomorphism => ring::check_endomorphism(ring, &self.matrix),
            MapKind::Derivation { sigma } => ring::check_derivation(ring, &self.matrix, sigma),
            MapKind::Involution => ring::check_endomorphism(ring, &self.matrix).and_then(|_| {
                let gens = ring.generators();
                for (i, g) in gens.iter().enumerate() {
                    let twice = self.apply(ring, &self.apply(ring, g));
                    if twice != *g {
                        return Err(format!("map is not self-inverse on b{i}"));
                    }
                }
                Ok(())
            }),
        }
        .map_err(Error::BadMap)
    }

    pub fn apply<R: Ring>(&self, ring: &R, a: &R::Elem) -> R::Elem {
        ring::apply_map(ring, &self.matrix, a)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// `self ⊗ other` acting on a tensor product order.
    pub fn tensor(&self, other: &RingMap, kind: MapKind) -> RingMap {
        let mut matrix = Vec::new();
        for ra in &self.matrix {
            for rb in &other.matrix {
                matrix.push(kron_vec(ra, rb));
            }
        }
        RingMap { matrix, kind }
    }
}

/// A full-rank two-sided ideal of an integral order, stored in Hermite form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealLattice {
    basis: Matrix,
}

impl IdealLattice {
    /// Ideal with the given HNF (or any spanning) basis; checked for full rank
    /// and closure under left and right multiplication by basis elements.
    pub fn from_basis(order: &IntegralOrder, rows: &[Vec<Int>]) -> Result<Self> {
        let n = order.rank;
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotAnIdeal(format!("rows must have length {n}")));
        }
        let basis = intmat::hermite_full(rows, n).ok_or(Error::ZeroDeterminant)?;
        let ideal = IdealLattice { basis };
        for row in &ideal.basis {
            for k in 0..n {
                let bk = order.basis(k);
                for prod in [order.mul(row, &bk), order.mul(&bk, row)] {
                    if !ideal.contains(&prod) {
                        return Err(Error::NotAnIdeal(format!(
                            "{row:?} times basis element {k} leaves the lattice"
                        )));
                    }
                }
            }
        }
        Ok(ideal)
    }

    /// `p·O` for a rational integer `p ≥ 2`.
    pub fn rational(order: &IntegralOrder, p: Int) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroDeterminant);
        }
        let rows: Matrix = (0..order.rank)
            .map(|i| order.basis(i).iter().map(|x| x * p.abs()).collect())
            .collect();
        Self::from_basis(order, &rows)
    }

    /// Two-sided ideal generated by the given elements.
    pub fn generated_by(order: &IntegralOrder, gens: &[Vec<Int>]) -> Result<Self> {
        let mut rows = Vec::new();
        for g in gens {
            for i in 0..order.rank {
                let bi = order.basis(i);
                let left = order.mul(&bi, g);
                for j in 0..order.rank {
                    rows.push(order.mul(&left, &order.basis(j)));
                }
            }
        }
        Self::from_basis(order, &rows)
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        intmat::in_span(&self.basis, v)
    }

    /// Index in the host order.
    pub fn norm(&self) -> Int {
        self.basis.iter().enumerate().map(|(i, r)| r[i]).product()
    }
}

/// Exact trace-form Gram matrix `Tr(x·conj(y))` on the rows of `basis`.
///
/// There is no ½ normalization, so `Gram(1,1) = 2` for the Gaussian integers.
pub fn trace_gram(order: &IntegralOrder, conj: &RingMap, basis: &[Vec<Int>]) -> Result<Matrix> {
    if !matches!(conj.kind, MapKind::Involution) {
        return Err(Error::BadMap("conjugation must be an involution".into()));
    }
    let gram: Matrix = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| order.trace(&order.mul(x, &conj.apply(order, y))))
                .collect()
        })
        .collect();
    check_positive_definite(&gram)?;
    Ok(gram)
}

pub fn check_positive_definite(gram: &Matrix) -> Result<()> {
    let n = gram.len();
    for i in 0..n {
        for j in 0..n {
            if gram[i][j] != gram[j][i] {
                return Err(Error::NotPositiveDefinite { index: i, minor: 0 });
            }
        }
    }
    for (k, m) in intmat::leading_minors(gram).into_iter().enumerate() {
        if m <= 0 {
            return Err(Error::NotPositiveDefinite { index: k + 1, minor: m });
        }
    }
    Ok(())
}

/// Block-diagonal matrix with the given blocks.
pub fn block_diag(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = intmat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            out[off + i][off..off + row.len()].copy_from_slice(row);
        }
        off += b.len();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn gaussian_and_eisenstein_construct() {
        let g = presets::gaussian();
        assert_eq!(g.mul(&vec![0, 1], &vec![0, 1]), vec![-1, 0]);
        let e = presets::eisenstein();
        assert_eq!(e.mul(&vec![0, 1], &vec![0, 1]), vec![-1, -1]);
        let z = presets::integers();
        assert_eq!(z.rank(), 1);
    }

    #[test]
    fn rejects_bad_tables() {
        // b1·b1 = b0 + b1 but with b0 not the unity
        let table = vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]];
        assert!(matches!(IntegralOrder::new(2, table, vec![1, 0]), Err(Error::BadUnity(_))));
        let table = vec![vec![vec![1]]];
        assert!(matches!(IntegralOrder::new(1, table, vec![2]), Err(Error::BadUnity(0))));
    }

    #[test]
    fn nonassociative_table_is_rejected() {
        // unity b0, b1·b1 = b2, b2·b1 = b0, b1·b2 = b1, b2·b2 = 0
        let mut t = vec![vec![vec![0; 3]; 3]; 3];
        for i in 0..3 {
            t[0][i][i] = 1;
            t[i][0][i] = 1;
        }
        t[1][1] = vec![0, 0, 1];
        t[2][1] = vec![1, 0, 0];
        t[1][2] = vec![0, 1, 0];
        assert!(matches!(
            IntegralOrder::new(3, t, vec![1, 0, 0]),
            Err(Error::NonAssociativeTable(..))
        ));
    }

    #[test]
    fn trace_gram_values() {
        let g = presets::gaussian();
        let conj = presets::gaussian_conj(&g);
        let basis = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(trace_gram(&g, &conj, &basis).unwrap(), vec![vec![2, 0], vec![0, 2]]);
        let id = RingMap::identity(&g);
        assert!(matches!(
            trace_gram(&g, &id, &basis),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let z = presets::integers();
        assert_eq!(
            trace_gram(&z, &RingMap::identity(&z), &[vec![1]]).unwrap(),
            vec![vec![1]]
        );
    }

    #[test]
    fn ideal_checks() {
        let g = presets::gaussian();
        let three = IdealLattice::rational(&g, 3).unwrap();
        assert_eq!(three.norm(), 9);
        assert!(three.contains(&[3, -6]));
        // (1+i) is an ideal of norm 2; the lattice spanned by (1,0),(0,2) is not
        let p = IdealLattice::generated_by(&g, &[vec![1, 1]]).unwrap();
        assert_eq!(p.norm(), 2);
        assert!(matches!(
            IdealLattice::from_basis(&g, &[vec![1, 0], vec![0, 2]]),
            Err(Error::NotAnIdeal(_))
        ));
        assert!(matches!(
            IdealLattice::from_basis(&g, &[vec![1, 0], vec![2, 0]]),
            Err(Error::ZeroDeterminant)
        ));
    }
}
