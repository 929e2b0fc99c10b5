//! Built-in orders and their standard automorphisms.

use crate::intmat::Int;
use crate::order::{IntegralOrder, MapKind, RingMap};
use crate::ring::Ring;

/// Quadratic order `Z[x]/(x² − tr·x + nm)` on the basis `(1, x)`.
fn quadratic(trace: Int, norm: Int) -> IntegralOrder {
    let table = vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![-norm, trace]],
    ];
    IntegralOrder::new(2, table, vec![1, 0]).expect("quadratic table is valid")
}

pub fn integers() -> IntegralOrder {
    IntegralOrder::new(1, vec![vec![vec![1]]], vec![1]).expect("Z is valid")
}

/// `Z[i]`, basis `(1, i)`.
pub fn gaussian() -> IntegralOrder {
    quadratic(0, 1)
}

/// `Z[ω]` with `ω² = −1 − ω`, basis `(1, ω)`.
pub fn eisenstein() -> IntegralOrder {
    quadratic(-1, 1)
}

/// `Z[√2]`, basis `(1, √2)`.
pub fn sqrt2() -> IntegralOrder {
    quadratic(0, -2)
}

/// `Z[θ]` with `θ = 2cos(2π/7)`, `θ³ = 1 + 2θ − θ²`, basis `(1, θ, θ²)`.
pub fn theta7() -> IntegralOrder {
    // powers θ^0..θ^4 in the basis (1, θ, θ²)
    let pow: [[Int; 3]; 5] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, -1], [-1, -1, 3]];
    let mut table = vec![vec![vec![0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            table[i][j] = pow[i + j].to_vec();
        }
    }
    IntegralOrder::new(3, table, vec![1, 0, 0]).expect("Z[θ] table is valid")
}

/// The nontrivial automorphism `x ↦ tr − x` of a quadratic order.
fn quadratic_conj(order: &IntegralOrder, trace: Int) -> RingMap {
    RingMap::new(order, vec![vec![1, 0], vec![trace, -1]], MapKind::Involution)
        .expect("quadratic conjugation is an involution")
}

pub fn gaussian_conj(order: &IntegralOrder) -> RingMap {
    quadratic_conj(order, 0)
}

pub fn eisenstein_conj(order: &IntegralOrder) -> RingMap {
    quadratic_conj(order, -1)
}

pub fn sqrt2_conj(order: &IntegralOrder) -> RingMap {
    quadratic_conj(order, 0)
}

/// `τ: θ ↦ θ² − 2` on `Z[θ]`, of order 3.
pub fn theta7_tau(order: &IntegralOrder) -> RingMap {
    let t = vec![-2, 0, 1];
    let t2 = order.mul(&t, &t);
    RingMap::new(order, vec![vec![1, 0, 0], t, t2], MapKind::Endomorphism)
        .expect("τ is an automorphism of Z[θ]")
}

/// A biquadratic or sextic base order `A ⊗ B` with two commuting automorphisms.
#[derive(Debug, Clone)]
pub struct TowerPreset {
    pub order: IntegralOrder,
    /// Generator of the Galois group of the cyclic-algebra extension `K/F`.
    pub rho: RingMap,
    /// The automorphism extended to the cyclic algebra, generating `K/L`.
    pub sigma: RingMap,
    /// Complex conjugation, used for the trace form.
    pub conj: RingMap,
}

/// `Z[i] ⊗ Z[√2]` with `ρ: i ↦ −i` and `σ: √2 ↦ −√2`, both of order 2.
/// Fixed rings: `O_F = Z[√2]` under ρ and `O_L = Z[i]` under σ.
pub fn gaussian_sqrt2() -> TowerPreset {
    let a = gaussian();
    let b = sqrt2();
    let order = IntegralOrder::tensor(&a, &b).expect("tensor of commutative orders");
    let ca = gaussian_conj(&a);
    let cb = sqrt2_conj(&b);
    let ia = RingMap::identity(&a);
    let ib = RingMap::identity(&b);
    let rho = ca.tensor(&ib, MapKind::Involution);
    let sigma = ia.tensor(&cb, MapKind::Involution);
    for m in [&rho, &sigma] {
        m.verify(&order).expect("tensor maps are automorphisms");
    }
    TowerPreset { order, conj: rho.clone(), rho, sigma }
}

/// `Z[ω] ⊗ Z[θ]` with `ρ: ω ↦ ω²` (order 2) and `σ = τ: θ ↦ θ² − 2` (order 3).
pub fn eisenstein_theta7() -> TowerPreset {
    let a = eisenstein();
    let b = theta7();
    let order = IntegralOrder::tensor(&a, &b).expect("tensor of commutative orders");
    let rho = eisenstein_conj(&a).tensor(&RingMap::identity(&b), MapKind::Involution);
    let sigma = RingMap::identity(&a).tensor(&theta7_tau(&b), MapKind::Endomorphism);
    for m in [&rho, &sigma] {
        m.verify(&order).expect("tensor maps are automorphisms");
    }
    TowerPreset { order, conj: rho.clone(), rho, sigma }
}
