//! The batch commands behind the `petit` binary. Each command is a pure
//! function from config text and run options to a set of named output files
//! plus a one-line summary, so outputs are reproducible byte for byte.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::codes::{self, LinearCode};
use crate::config::{widen, CodeSelection, Setup};
use crate::cyclic::is_split_quaternion;
use crate::error::{Error, Result};
use crate::finite::{classify, crt_decompose, fixed_subring, FiniteRing, FiniteRingElem};
use crate::intmat::{self, Int, Matrix};
use crate::order::{MapKind, RingMap};
use crate::lattice::{float_generator, lattice_compare, shortest_vector, IntegerLattice, Reduction};
use crate::petit::PetitAlgebra;
use crate::ring::Ring;
use crate::skew::SkewPoly;
use crate::stbc::{full_diversity_sample, sample_nonzero, CyclicStbc, DetMode, IteratedStbc};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Inspect,
    Codes,
    Lattice,
    Dual,
    Stbc,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Inspect => "inspect",
            Command::Codes => "codes",
            Command::Lattice => "lattice",
            Command::Dual => "dual",
            Command::Stbc => "stbc",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: u64,
    pub trials: usize,
    pub float_export: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, trials: 1000, float_export: false }
    }
}

/// Named output files (in write order) and a summary line for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub files: Vec<(String, String)>,
    pub summary: String,
}

/// Process exit code for an error: 3 for a bound, 4 for a failed hypothesis,
/// 2 for everything else (invalid input).
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => 3,
        Error::HypothesisFailed { .. } => 4,
        _ => 2,
    }
}

/// Machine-readable error description.
pub fn error_json(e: &Error) -> String {
    let debug = format!("{e:?}");
    let kind: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut v = json!({ "error": kind, "message": e.to_string(), "exit_code": exit_code(e) });
    if let Error::HypothesisFailed { which, index } = e {
        v["hypothesis"] = json!({ "which": which, "index": index });
    }
    pretty(&v)
}

pub fn config_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn to_json<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Config(format!("serialization: {e}")))
}

fn elem(e: &FiniteRingElem) -> Value {
    json!(e.0.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

fn poly_json(p: &[FiniteRingElem]) -> Value {
    Value::Array(p.iter().map(elem).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.iter().map(|r| r.iter().map(|&x| x as i64).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn csv_matrix(m: &Matrix) -> String {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n").collect()
}

pub fn run(cmd: Command, config_text: &str, opts: RunOptions) -> Result<Output> {
    let setup = Setup::from_text(config_text)?;
    let meta = json!({
        "command": cmd.name(),
        "config_sha256": config_hash(config_text),
        "library_version": VERSION,
        "seed": opts.seed,
        "trials": opts.trials,
    });
    match cmd {
        Command::Inspect => inspect(&setup, meta),
        Command::Codes => cmd_codes(&setup, meta),
        Command::Lattice => cmd_lattice(&setup, meta, opts),
        Command::Dual => cmd_dual(&setup, meta),
        Command::Stbc => cmd_stbc(&setup, meta, opts),
    }
}

/// Run a bounded computation, recording a skipped section instead of failing
/// when it exceeds the enumeration bounds.
fn bounded<T>(r: Result<T>, f: impl FnOnce(T) -> Value) -> Result<Value> {
    match r {
        Ok(x) => Ok(f(x)),
        Err(e @ Error::TooLarge { .. }) => Ok(json!({ "skipped": e.to_string() })),
        Err(e) => Err(e),
    }
}

fn project_poly(red: &Reduction, coeffs: &[Vec<i64>]) -> Result<SkewPoly<FiniteRingElem>> {
    let rank = red.ring.host().rank();
    if coeffs.iter().any(|c| c.len() != rank) {
        return Err(Error::Config(format!("coefficients must have length {rank}")));
    }
    Ok(red.algebra.context().poly(coeffs.iter().map(|c| red.ring.project(&widen(c))).collect()))
}

fn inspect(setup: &Setup, meta: Value) -> Result<Output> {
    let lambda = &setup.lambda;
    let ctx = lambda.algebra.context();
    let bounds = setup.bounds();
    let mut report = json!({
        "meta": meta,
        "order": {
            "preset": setup.preset,
            "base_rank": setup.base.rank(),
            "coefficient_rank": lambda.order().rank(),
            "coefficient_commutative": lambda.order().is_commutative(),
            "cyclic_degree": setup.cyclic.as_ref().map(|c| c.n),
        },
        "sigma_order": ctx.sigma_order(),
        "derivation": ctx.has_derivation(),
        "f": {
            "degree": lambda.m(),
            "monic": true,
            "two_sided": ctx.is_two_sided(lambda.f())?,
        },
        "lambda_rank": lambda.rank(),
    });
    let mut summary = format!("natural order of rank {}", lambda.rank());
    if setup.config.prime.is_some() {
        let red = setup.reduction()?;
        let ring = &red.ring;
        let rctx = red.algebra.context();
        let size = ring.size();
        let structure = if ring.is_commutative() {
            let s = classify(ring, bounds.max_ring)?;
            let factors: Vec<u128> = crt_decompose(ring, bounds.max_ring)?.iter().map(|f| f.local.size()).collect();
            let fixed = fixed_subring(ring, &RingMap { matrix: rctx.sigma_matrix().clone(), kind: MapKind::Endomorphism })?.cardinality;
            let idem = ring.idempotents(bounds.max_ring)?.len().saturating_sub(2);
            json!({
                "description": s.describe(),
                "is_field": s.is_field(),
                "crt_factor_sizes": factors,
                "fixed_subring_size": fixed,
                "nontrivial_idempotents": idem,
            })
        } else {
            let split = match setup.cyclic.as_ref().map(|c| c.n) {
                Some(2) => bounded(is_split_quaternion(ring, 2, bounds), |r| json!(r.split))?,
                _ => Value::Null,
            };
            json!({ "description": format!("noncommutative ring of {size}"), "is_field": false, "split_quaternion": split })
        };
        let description = structure["description"].as_str().unwrap_or_default().to_string();
        let irreducible = bounded(rctx.is_irreducible(red.algebra.f(), bounds), |b| json!(b))?;
        let alg = &red.algebra;
        let witness = bounded(alg.zero_divisor(bounds), |w| match w {
            Some((x, y)) => json!({ "x": poly_json(&x.0), "y": poly_json(&y.0) }),
            None => Value::Null,
        })?;
        let nuclei = bounded(alg.nuclei(bounds), |n| {
            json!({
                "left": n.left.cardinality,
                "middle": n.middle.cardinality,
                "right": n.right.cardinality,
                "nucleus": n.nucleus.cardinality,
                "center": n.center.cardinality,
            })
        })?;
        let division = if witness.get("skipped").is_some() { Value::Null } else { json!(witness.is_null()) };
        report["reduced"] = json!({
            "ring_size": size,
            "structure": structure,
            "sigma_bar_order": rctx.sigma_order(),
            "sigma_bar_is_identity": rctx.sigma_matrix() == &intmat::identity(ring.rank()),
            "f_bar_irreducible": irreducible,
            "algebra": {
                "size": alg.cardinality(),
                "associative": alg.is_associative(),
                "division": division,
                "zero_divisor": witness,
                "nuclei": nuclei,
            },
        });
        let irr = match irreducible.as_bool() {
            Some(true) => "f̄ irreducible",
            Some(false) => "f̄ reducible",
            None => "f̄ irreducibility skipped",
        };
        let kind = match division.as_bool() {
            Some(true) => "division",
            Some(false) => "zero divisors present",
            None => "division check skipped",
        };
        summary = format!("reduced ring: {description}; {irr}; algebra: {kind}");
    }
    Ok(Output { files: vec![("inspect.json".into(), pretty(&report))], summary })
}

fn select_codes(setup: &Setup, red: &Reduction) -> Result<Vec<LinearCode<FiniteRingElem>>> {
    let alg = &red.algebra;
    let bounds = setup.bounds();
    match &setup.config.codes {
        CodeSelection::AllDivisors => codes::all_divisor_codes(alg, bounds),
        CodeSelection::AllPrincipalIdeals => codes::all_principal_ideals(alg, bounds),
        CodeSelection::Full => Ok(vec![codes::code_from_divisor(alg, &alg.context().one(), bounds)?]),
        CodeSelection::Zero => Ok(vec![codes::zero_code(alg)]),
        CodeSelection::Divisor(g) => Ok(vec![codes::code_from_divisor(alg, &project_poly(red, g)?, bounds)?]),
        CodeSelection::IdealGenerator(x) => {
            let p = project_poly(red, x)?;
            let x = alg.from_poly(&p);
            Ok(vec![codes::principal_left_ideal(alg, &x, bounds)?])
        }
    }
}

fn code_json(i: usize, code: &LinearCode<FiniteRingElem>, alg: &PetitAlgebra<FiniteRing>) -> Result<Value> {
    let ring = alg.base();
    let min_distance = if code.cardinality() > 1 { Some(codes::min_distance(ring, code)?) } else { None };
    let constacyclic = alg.binomial_constant().ok().map(|c| codes::is_constacyclic(alg, code, &c));
    Ok(json!({
        "index": i,
        "provenance": to_json(&code.provenance)?,
        "cardinality": code.cardinality(),
        "dimension": code.dimension(ring.size()),
        "min_distance": min_distance,
        "constacyclic": constacyclic,
        "generator_rows": code.generator_rows.iter().map(|r| poly_json(&r.0)).collect::<Vec<_>>(),
    }))
}

fn cmd_codes(setup: &Setup, meta: Value) -> Result<Output> {
    let red = setup.reduction()?;
    let list = select_codes(setup, &red)?;
    let entries = list.iter().enumerate().map(|(i, c)| code_json(i, c, &red.algebra)).collect::<Result<Vec<_>>>()?;
    let mut csv = String::from("index,kind,cardinality,min_distance,constacyclic\n");
    for e in &entries {
        csv += &format!(
            "{},{},{},{},{}\n",
            e["index"],
            e["provenance"]["kind"].as_str().unwrap_or_default(),
            e["cardinality"],
            e["min_distance"],
            e["constacyclic"]
        );
    }
    let cards: Vec<String> = list.iter().map(|c| c.cardinality().to_string()).collect();
    let summary = format!("codes: {} (cardinalities {})", list.len(), cards.join(", "));
    let report = json!({ "meta": meta, "algebra_size": red.size(), "codes": entries });
    Ok(Output { files: vec![("codes.json".into(), pretty(&report)), ("codes.csv".into(), csv)], summary })
}

struct Lifted {
    lattice: IntegerLattice,
    index_law: bool,
    to_lambda: crate::lattice::LatticeRelation,
    to_p_lambda: crate::lattice::LatticeRelation,
    min_norm: Option<Int>,
}

fn lift_all(setup: &Setup, red: &Reduction, list: &[LinearCode<FiniteRingElem>]) -> Result<Vec<Lifted>> {
    let gram = setup.gram()?;
    let n = setup.lambda.rank();
    let full = IntegerLattice::from_rows(&intmat::identity(n), n)?;
    let pl = IntegerLattice::from_rows(&red.p_lambda, n)?;
    let want_min = setup.config.lattice.min_norm;
    let max_candidates = setup.bounds().max_candidates;
    list.par_iter()
        .map(|code| {
            let lattice = red.lift_code(code)?.with_gram(&gram)?;
            let min_norm = if want_min { Some(shortest_vector(&lattice, max_candidates)?.0) } else { None };
            Ok(Lifted {
                index_law: red.index_law_holds(&lattice, code),
                to_lambda: lattice_compare(&lattice, &full)?,
                to_p_lambda: lattice_compare(&lattice, &pl)?,
                lattice,
                min_norm,
            })
        })
        .collect()
}

fn lattice_json(i: usize, code: &LinearCode<FiniteRingElem>, l: &Lifted) -> Result<Value> {
    let gram = l.lattice.gram.as_ref().expect("gram attached");
    Ok(json!({
        "code_index": i,
        "code_cardinality": code.cardinality(),
        "rank": l.lattice.rank,
        "basis_hnf": matrix_json(&l.lattice.basis),
        "gram": matrix_json(gram),
        "det": intmat::det(gram).to_string(),
        "index": l.lattice.index().to_string(),
        "index_law": l.index_law,
        "relation_to_lambda": to_json(&l.to_lambda)?,
        "relation_to_p_lambda": to_json(&l.to_p_lambda)?,
        "min_norm": l.min_norm.map(|v| v.to_string()),
    }))
}

fn cmd_lattice(setup: &Setup, meta: Value, opts: RunOptions) -> Result<Output> {
    let red = setup.reduction()?;
    let list = select_codes(setup, &red)?;
    let lifted = lift_all(setup, &red, &list)?;
    let mut files = Vec::new();
    let mut csv = String::from("code_index,code_cardinality,lattice_index,gram_det,index_law\n");
    let mut entries = Vec::new();
    for (i, (code, l)) in list.iter().zip(&lifted).enumerate() {
        let gram = l.lattice.gram.as_ref().expect("gram attached");
        csv += &format!("{i},{},{},{},{}\n", code.cardinality(), l.lattice.index(), intmat::det(gram), l.index_law);
        entries.push(lattice_json(i, code, l)?);
    }
    let all_law = lifted.iter().all(|l| l.index_law);
    let report = json!({
        "meta": meta,
        "lambda_rank": setup.lambda.rank(),
        "p_lambda_index": red.size().to_string(),
        "lattices": entries,
    });
    files.push(("lattice.json".into(), pretty(&report)));
    files.push(("lattice.csv".into(), csv));
    for (i, l) in lifted.iter().enumerate() {
        files.push((format!("lattice_{i}_basis.csv"), csv_matrix(&l.lattice.basis)));
        files.push((format!("lattice_{i}_gram.csv"), csv_matrix(l.lattice.gram.as_ref().unwrap())));
    }
    if opts.float_export {
        let gens: Vec<Value> = lifted.iter().map(|l| json!(float_generator(l.lattice.gram.as_ref().unwrap()))).collect();
        let v = json!({ "meta": report["meta"], "approximate": true, "generator_matrices": gens });
        files.push(("lattice_float.json".into(), pretty(&v)));
    }
    let summary = format!("lattices: {}; index law {}", lifted.len(), if all_law { "holds" } else { "FAILS" });
    Ok(Output { files, summary })
}

fn cmd_dual(setup: &Setup, meta: Value) -> Result<Output> {
    let spec = setup.config.dual.as_ref().ok_or_else(|| Error::Config("the dual command needs a \"dual\" block".into()))?;
    let red = setup.reduction()?;
    let alg = &red.algebra;
    let ctx = alg.context();
    let bounds = setup.bounds();
    let g = project_poly(&red, &spec.g)?;
    let h = match &spec.h {
        Some(h) => project_poly(&red, h)?,
        None => {
            let (q, r) = ctx.right_divide(alg.f(), &g)?;
            if !r.is_zero() {
                return Err(Error::HypothesisFailed { which: "g right-divides f".into(), index: None });
            }
            q
        }
    };
    let rep = codes::dual_divisor(alg, &g, &h, bounds)?;
    let code = codes::code_from_divisor(alg, &g, bounds)?;
    let dual = codes::code_from_divisor(alg, &ctx.poly(rep.g_perp_monic.clone()), bounds)?;
    let lifted = lift_all(setup, &red, &[code.clone(), dual.clone()])?;
    let relation = lattice_compare(&lifted[0].lattice, &lifted[1].lattice)?;
    let self_orth = code.is_subcode_of(&dual);
    let lattice_inclusion = self_orth.then(|| matches!(relation, crate::lattice::LatticeRelation::Subset | crate::lattice::LatticeRelation::Equal));
    let report = json!({
        "meta": meta,
        "g": poly_json(g.coeffs()),
        "h": poly_json(h.coeffs()),
        "g_perp": poly_json(&rep.g_perp),
        "g_perp_monic": poly_json(&rep.g_perp_monic),
        "inverse_twist_monic": poly_json(&rep.inverse_twist_monic),
        "inverse_twist_match": rep.inverse_twist_match,
        "a0_squared_is_one": rep.a0_squared_is_one,
        "code_cardinality": rep.code_cardinality,
        "dual_cardinality": rep.dual_cardinality,
        "oracle_match": rep.oracle_match,
        "dual_code": code_json(1, &dual, alg)?,
        "self_orthogonal": self_orth,
        "lattices": [lattice_json(0, &code, &lifted[0])?, lattice_json(1, &dual, &lifted[1])?],
        "lattice_relation": to_json(&relation)?,
        "lattice_inclusion_confirmed": lattice_inclusion,
    });
    let summary = format!("oracle match: {}; |C|·|C⊥| = {}", rep.oracle_match, rep.code_cardinality * rep.dual_cardinality);
    Ok(Output { files: vec![("dual.json".into(), pretty(&report))], summary })
}

enum Emitter {
    Cyclic(CyclicStbc),
    Iterated(IteratedStbc),
}

impl Emitter {
    fn matrix(&self, x: &[Int]) -> Result<crate::stbc::CodewordMatrix> {
        match self {
            Emitter::Cyclic(s) => s.matrix(x),
            Emitter::Iterated(s) => s.matrix(x),
        }
    }

    fn product_holds(&self, x: &[Int], y: &[Int]) -> Result<bool> {
        match self {
            Emitter::Cyclic(s) => s.product_holds(x, y),
            Emitter::Iterated(s) => s.product_holds(x, y),
        }
    }
}

fn build_emitter(setup: &Setup) -> Result<Emitter> {
    let lambda = &setup.lambda;
    match &setup.cyclic {
        None => Ok(Emitter::Cyclic(CyclicStbc::new(lambda.clone())?)),
        Some(cy) => {
            let f = lambda.f().coeffs();
            let d_rank = cy.base.rank();
            let m = lambda.m();
            if f[1..m].iter().any(|c| c.iter().any(|&v| v != 0)) || f[0][d_rank..].iter().any(|&v| v != 0) {
                return Err(Error::WrongShape("f must be t^m - d with d in the base order".into()));
            }
            let d: Vec<Int> = f[0][..d_rank].iter().map(|v| -v).collect();
            Ok(Emitter::Iterated(IteratedStbc::new(cy.clone(), &setup.base_sigma, &d, m)?))
        }
    }
}

fn cmd_stbc(setup: &Setup, meta: Value, opts: RunOptions) -> Result<Output> {
    let emitter = build_emitter(setup)?;
    let rank = setup.lambda.rank();
    let b = setup.config.stbc.box_bound as Int;
    let (seed, trials) = (opts.seed, opts.trials);
    // y samples come from a disjoint range of streams
    let y_stream = 1u64 << 40;
    let product_failures = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let x = sample_nonzero(rank, seed, t, b);
            let y = sample_nonzero(rank, seed, y_stream + t, b);
            emitter.product_holds(&x, &y).map(|ok| usize::from(!ok))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<usize>();
    let diversity = full_diversity_sample(rank, trials, seed, b, |x| Ok(emitter.matrix(x)?.det))?;
    let modes: Vec<Value> = [DetMode::DInOF, DetMode::DInOL]
        .into_iter()
        .map(|mode| {
            let Emitter::Iterated(it) = &emitter else {
                return Ok(json!({ "mode": to_json(&mode)?, "applicable": false }));
            };
            let members = (0..trials as u64)
                .into_par_iter()
                .map(|t| it.det_membership(&sample_nonzero(rank, seed, t, b), mode).map(|r| r.member))
                .collect::<Result<Vec<bool>>>();
            match members {
                Err(Error::ModeMismatch(_)) => Ok(json!({ "mode": to_json(&mode)?, "applicable": false })),
                Err(e) => Err(e),
                Ok(v) => Ok(json!({
                    "mode": to_json(&mode)?,
                    "applicable": true,
                    "samples": v.len(),
                    "members": v.iter().filter(|&&m| m).count(),
                })),
            }
        })
        .collect::<Result<_>>()?;
    let emit = setup.config.stbc.emit.min(trials);
    let mut csv = String::from("sample,row,col,entry\n");
    let mut matrices = Vec::new();
    for t in 0..emit as u64 {
        let x = sample_nonzero(rank, seed, t, b);
        let m = emitter.matrix(&x)?;
        for (r, row) in m.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                let coords: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                csv += &format!("{t},{r},{c},{}\n", coords.join(";"));
            }
        }
        matrices.push(json!({
            "x": matrix_json(&vec![x]).as_array().unwrap()[0],
            "size": m.size,
            "entries": m.entries.iter().map(|r| matrix_json(r)).collect::<Vec<_>>(),
            "flattened": matrix_json(&m.flattened()),
            "det": matrix_json(&vec![m.det.clone()]).as_array().unwrap()[0],
        }));
    }
    let kind = match emitter {
        Emitter::Cyclic(_) => "cyclic",
        Emitter::Iterated(_) => "iterated",
    };
    let report = json!({
        "meta": meta,
        "kind": kind,
        "box_bound": b as i64,
        "product_identity_failures": product_failures,
        "diversity": to_json(&diversity)?,
        "det_membership": modes,
        "number_field_irreducibility": "assumed, not verified; see the diversity sample",
        "matrices": matrices,
    });
    let summary = format!(
        "{kind} codeword matrices: {} singular of {trials} sampled; product identity failures: {product_failures}",
        diversity.singular
    );
    Ok(Output { files: vec![("stbc.json".into(), pretty(&report)), ("stbc_matrices.csv".into(), csv)], summary })
}
