//! Strictly validated JSON pipeline configuration and the objects it builds.
//!
//! Integers are read as `i64` so untagged variants deserialize cleanly, then
//! widened to the library integer type.

use serde::Deserialize;

use crate::bounds::EnumerationBounds;
use crate::cyclic::{extend_sigma, make_cyclic, CyclicAlgebraOrder};
use crate::error::{Error, Result};
use crate::intmat::{Int, Matrix};
use crate::lattice::{ambient_gram, natural_order, slot_gram, NaturalOrder, Reduction};
use crate::order::{IdealLattice, IntegralOrder, MapKind, RingMap};
use crate::presets;
use crate::ring::Ring;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub order: OrderSpec,
    #[serde(default)]
    pub maps: MapsSpec,
    #[serde(default)]
    pub cyclic: Option<CyclicSpec>,
    /// Coefficients of `f`, lowest degree first, on the coefficient-order basis.
    pub f: Vec<Vec<i64>>,
    #[serde(default)]
    pub prime: Option<PrimeSpec>,
    #[serde(default)]
    pub codes: CodeSelection,
    #[serde(default)]
    pub dual: Option<DualSpec>,
    #[serde(default)]
    pub lattice: LatticeSpec,
    #[serde(default)]
    pub stbc: StbcSpec,
    #[serde(default)]
    pub bounds: EnumerationBounds,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Preset(String),
    Inline(InlineOrder),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineOrder {
    pub rank: usize,
    /// `mul_table[i][j]` is the coordinate vector of `bᵢ·bⱼ`.
    pub mul_table: Vec<Vec<Vec<i64>>>,
    pub one: Vec<i64>,
}

/// A named map of the chosen preset or an explicit matrix (row `j` is the
/// image of basis element `j`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Named(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsSpec {
    #[serde(default = "identity_spec")]
    pub sigma: MapSpec,
    #[serde(default)]
    pub delta: Option<MapSpec>,
    #[serde(default)]
    pub conj: Option<MapSpec>,
}

fn identity_spec() -> MapSpec {
    MapSpec::Named("identity".into())
}

impl Default for MapsSpec {
    fn default() -> Self {
        MapsSpec { sigma: identity_spec(), delta: None, conj: None }
    }
}

/// Replace the coefficient order by the cyclic algebra order `(K/F, ρ, c)`;
/// `maps.sigma` is then given on `K` and extended coefficientwise.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicSpec {
    pub rho: MapSpec,
    pub c: Vec<i64>,
    pub n: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PrimeSpec {
    Rational(i64),
    Hnf { hnf: Vec<Vec<i64>> },
    Generators { generators: Vec<Vec<i64>> },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeSelection {
    #[default]
    AllDivisors,
    AllPrincipalIdeals,
    Full,
    Zero,
    Divisor(Vec<Vec<i64>>),
    IdealGenerator(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualSpec {
    pub g: Vec<Vec<i64>>,
    #[serde(default)]
    pub h: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    #[serde(default)]
    pub min_norm: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StbcSpec {
    #[serde(default = "default_box")]
    pub box_bound: i64,
    /// How many sampled matrices to write out in full.
    #[serde(default = "default_emit")]
    pub emit: usize,
}

fn default_box() -> i64 {
    3
}

fn default_emit() -> usize {
    4
}

impl Default for StbcSpec {
    fn default() -> Self {
        StbcSpec { box_bound: default_box(), emit: default_emit() }
    }
}

pub fn widen(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| x as Int).collect()
}

pub fn widen_matrix(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| widen(r)).collect()
}

/// Everything a command needs, built and checked from a config.
#[derive(Debug, Clone)]
pub struct Setup {
    pub config: PipelineConfig,
    pub preset: Option<String>,
    pub base: IntegralOrder,
    /// `σ` on the base order.
    pub base_sigma: RingMap,
    pub cyclic: Option<CyclicAlgebraOrder>,
    pub lambda: NaturalOrder,
    /// Involution defining the trace form on each coefficient slot.
    pub conj: RingMap,
}

impl PipelineConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

fn preset_order(name: &str) -> Result<(IntegralOrder, Vec<(&'static str, RingMap)>)> {
    Ok(match name {
        "integers" => (presets::integers(), vec![]),
        "gaussian" => {
            let o = presets::gaussian();
            let c = presets::gaussian_conj(&o);
            (o, vec![("conj", c)])
        }
        "eisenstein" => {
            let o = presets::eisenstein();
            let c = presets::eisenstein_conj(&o);
            (o, vec![("conj", c)])
        }
        "sqrt2" => {
            let o = presets::sqrt2();
            let c = presets::sqrt2_conj(&o);
            (o, vec![("conj", c)])
        }
        "theta7" => {
            let o = presets::theta7();
            let t = presets::theta7_tau(&o);
            (o, vec![("tau", t)])
        }
        "gaussian-sqrt2" | "eisenstein-theta7" => {
            let t = if name == "gaussian-sqrt2" { presets::gaussian_sqrt2() } else { presets::eisenstein_theta7() };
            (t.order, vec![("rho", t.rho), ("sigma", t.sigma), ("conj", t.conj)])
        }
        other => return Err(Error::Config(format!("unknown order preset {other:?}"))),
    })
}

fn resolve_map(
    spec: &MapSpec,
    order: &IntegralOrder,
    named: &[(&'static str, RingMap)],
    kind: MapKind,
) -> Result<RingMap> {
    match spec {
        MapSpec::Named(n) if n == "identity" => Ok(RingMap::identity(order)),
        MapSpec::Named(n) if n == "zero" => Ok(RingMap::zero_derivation(order)),
        MapSpec::Named(n) => named
            .iter()
            .find(|(k, _)| k == n)
            .map(|(_, m)| RingMap { matrix: m.matrix.clone(), kind: kind.clone() })
            .ok_or_else(|| Error::Config(format!("unknown map {n:?} for this order"))),
        MapSpec::Matrix(m) => {
            let n = order.rank();
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::Config(format!("map matrix must be {n}×{n}")));
            }
            Ok(RingMap { matrix: widen_matrix(m), kind })
        }
    }
}

impl Setup {
    pub fn build(config: PipelineConfig) -> Result<Self> {
        let (base, named, preset) = match &config.order {
            OrderSpec::Preset(name) => {
                let (o, named) = preset_order(name)?;
                (o, named, Some(name.clone()))
            }
            OrderSpec::Inline(inl) => {
                let table: Vec<Vec<Vec<Int>>> = inl.mul_table.iter().map(|m| widen_matrix(m)).collect();
                (IntegralOrder::new(inl.rank, table, widen(&inl.one))?, vec![], None)
            }
        };
        let base_sigma = resolve_map(&config.maps.sigma, &base, &named, MapKind::Endomorphism)?;
        base_sigma.verify(&base)?;
        let conj = match &config.maps.conj {
            Some(s) => resolve_map(s, &base, &named, MapKind::Involution)?,
            None => named
                .iter()
                .find(|(k, _)| *k == "conj")
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| RingMap::identity(&base)),
        };
        conj.verify(&base)?;
        let (coeff_order, sigma, delta, cyclic) = match &config.cyclic {
            None => {
                let delta = match &config.maps.delta {
                    Some(s) => {
                        let kind = MapKind::Derivation { sigma: base_sigma.matrix.clone() };
                        let d = resolve_map(s, &base, &named, kind)?;
                        d.verify(&base)?;
                        Some(d)
                    }
                    None => None,
                };
                (base.clone(), base_sigma.clone(), delta, None)
            }
            Some(cy) => {
                if config.maps.delta.is_some() {
                    return Err(Error::Config("a derivation is not supported over a cyclic algebra order".into()));
                }
                let rho = resolve_map(&cy.rho, &base, &named, MapKind::Endomorphism)?;
                let alg = make_cyclic(&base, &rho, &widen(&cy.c), cy.n)?;
                let ext = extend_sigma(&base_sigma, &alg)?;
                (alg.order().clone(), ext, None, Some(alg))
            }
        };
        let f: Vec<Vec<Int>> = config.f.iter().map(|c| widen(c)).collect();
        if f.iter().any(|c| c.len() != coeff_order.rank()) {
            return Err(Error::Config(format!("coefficients of f must have length {}", coeff_order.rank())));
        }
        let lambda = natural_order(&coeff_order, &sigma, delta.as_ref(), &f)?;
        Ok(Setup { config, preset, base, base_sigma, cyclic, lambda, conj })
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::build(PipelineConfig::parse(text)?)
    }

    /// Ambient Gram on `Λ`-coordinates: the base trace form once per base
    /// slot (`m` slots, times `n` over a cyclic algebra order).
    pub fn gram(&self) -> Result<Matrix> {
        let copies = self.cyclic.as_ref().map_or(1, |c| c.n) * self.lambda.m();
        Ok(ambient_gram(&slot_gram(&self.base, &self.conj)?, copies))
    }

    pub fn bounds(&self) -> &EnumerationBounds {
        &self.config.bounds
    }

    /// Generators of the reducing ideal (each must be central in `Λ`).
    pub fn prime_generators(&self) -> Result<Vec<Vec<Int>>> {
        let order = self.lambda.order();
        match &self.config.prime {
            None => Err(Error::Config("this command needs a prime".into())),
            Some(PrimeSpec::Rational(p)) => {
                if *p < 2 {
                    return Err(Error::Config("prime must be at least 2".into()));
                }
                Ok(vec![order.from_int(*p as Int)])
            }
            Some(PrimeSpec::Generators { generators }) => {
                if generators.is_empty() || generators.iter().any(|g| g.len() != order.rank()) {
                    return Err(Error::Config("ideal generators have the wrong length".into()));
                }
                Ok(widen_matrix(generators))
            }
            Some(PrimeSpec::Hnf { hnf }) => {
                let ideal = IdealLattice::from_basis(order, &widen_matrix(hnf))?;
                Ok(ideal.basis().clone())
            }
        }
    }

    pub fn reduction(&self) -> Result<Reduction> {
        self.lambda.reduce(&self.prime_generators()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_presets_and_inline_orders() {
        let s = Setup::from_text(r#"{"order":"gaussian","maps":{"sigma":"conj"},"f":[[0,-1],[0,0],[1,0]],"prime":3}"#).unwrap();
        assert_eq!(s.lambda.rank(), 4);
        assert_eq!(s.reduction().unwrap().size(), 81);
        let inline = r#"{"order":{"rank":2,"mul_table":[[[1,0],[0,1]],[[0,1],[-1,0]]],"one":[1,0]},
            "maps":{"sigma":[[1,0],[0,-1]]},"f":[[0,-1],[0,0],[1,0]],"prime":{"generators":[[3,0]]}}"#;
        let s = Setup::from_text(inline).unwrap();
        assert_eq!(s.reduction().unwrap().size(), 81);
        assert!(matches!(s.gram(), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn rejects_bad_configs() {
        for bad in [
            r#"{"order":"gaussian","f":[[1,0]],"extra":1}"#,
            r#"{"order":"nope","f":[[1,0]]}"#,
            r#"{"order":"gaussian","maps":{"sigma":"tau"},"f":[[1,0]]}"#,
            r#"{"order":"gaussian","f":[[1,0,0]]}"#,
            r#"{"order":"gaussian","maps":{"sigma":[[1,1],[0,1]]},"f":[[0,1],[1,0]]}"#,
        ] {
            assert!(Setup::from_text(bad).is_err(), "{bad}");
        }
        let s = Setup::from_text(r#"{"order":"gaussian","maps":{"sigma":"conj"},"f":[[0,-1],[1,0]],"prime":{"generators":[[0,1]]}}"#).unwrap();
        assert!(matches!(s.reduction(), Err(Error::NotCentral(_))));
    }

    #[test]
    fn cyclic_block_builds_the_iterated_order() {
        let s = Setup::from_text(
            r#"{"order":"gaussian-sqrt2","maps":{"sigma":"sigma"},"cyclic":{"rho":"rho","c":[-1,0,0,0],"n":2},
                "f":[[0,-1,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],[1,0,0,0,0,0,0,0]]}"#,
        )
        .unwrap();
        assert_eq!(s.lambda.rank(), 16);
        assert_eq!(s.gram().unwrap().len(), 16);
    }
}
