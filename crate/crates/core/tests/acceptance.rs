//! Acceptance gate: one line per criterion, exact arithmetic throughout.
//! Exits nonzero when any criterion fails or overruns its time budget.

use std::process::{Command as Process, ExitCode};
use std::time::{Duration, Instant};

use pvp_core::arith::Ring;
use pvp_core::base_field::{OperatorSpec, RatFunc};
use pvp_core::error::Result;
use pvp_core::ideals::{invariance_check, substitute_gb, IdealGens};
use pvp_core::jet::Jet;
use pvp_core::matrix::{parse_matrix, SqMatrix};
use pvp_core::mpoly::{MPoly, Var};
use pvp_core::oracles::{monomials_up_to, BoundedSpan};
use pvp_core::prolong::{eq2_from_leibniz, prolong_system, verify_against, verify_fundamental};
use pvp_core::sampling::Sampler;
use pvp_core::structure::{cocycle_check, exact_sequence_check, sigma_orbits, MonomialModel};
use pvp_core::Limits;

const SPECS: [OperatorSpec; 2] = [OperatorSpec::shift(), OperatorSpec::q_dilation()];
const SEED: u64 = 20_240_611;
const MODEL_ORDERS: [u32; 5] = [1, 2, 3, 4, 6];
/// Truncation degree for the linear-algebra membership oracle.
const ORACLE_DEGREE: u32 = 10;

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Result<Outcome>,
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "sigma/delta commutation",
            budget: secs(5),
            run: commutation,
        },
        Criterion {
            id: 2,
            name: "Leibniz closed form",
            budget: secs(30),
            run: leibniz_closed_form,
        },
        Criterion {
            id: 3,
            name: "fundamental solution and mutants",
            budget: secs(60),
            run: fundamental_solution,
        },
        Criterion {
            id: 4,
            name: "jet group block embedding",
            budget: secs(10),
            run: block_embedding,
        },
        Criterion {
            id: 5,
            name: "cocycle law",
            budget: secs(10),
            run: cocycle,
        },
        Criterion {
            id: 6,
            name: "invariance and membership",
            budget: secs(60),
            run: invariance_membership,
        },
        Criterion {
            id: 7,
            name: "component counts",
            budget: secs(10),
            run: component_counts,
        },
        Criterion {
            id: 8,
            name: "exact sequence",
            budget: secs(10),
            run: exact_sequence,
        },
        Criterion {
            id: 9,
            name: "selftest determinism",
            budget: None,
            run: determinism,
        },
    ]
}

fn main() -> ExitCode {
    let mut failures = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let elapsed = start.elapsed();
        let in_time = c.budget.is_none_or(|b| elapsed < b);
        let pass = outcome.pass && in_time;
        let limit = c.budget.map_or("-".to_string(), |b| format!("{}s", b.as_secs()));
        println!(
            "{} criterion {}: {:<34} {:>8.3}s (limit {limit}) {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            outcome.detail,
        );
        if !pass {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion(s) failed");
        ExitCode::FAILURE
    }
}

fn commutation() -> Result<Outcome> {
    let mut s = Sampler::new(SEED);
    let mut checked = 0;
    for spec in &SPECS {
        for _ in 0..200 {
            let f = s.ratfunc(spec, 4);
            if spec.apply_delta(&spec.apply_sigma(&f)) != spec.apply_sigma(&spec.apply_delta(&f)) {
                return Ok(Outcome::new(
                    false,
                    format!("{spec:?}: {}", pvp_core::base_field::format_ratfunc(&f)),
                ));
            }
            checked += 1;
        }
    }
    Ok(Outcome::new(true, format!("{checked} functions")))
}

fn leibniz_closed_form() -> Result<Outcome> {
    let limits = Limits::default();
    let mut s = Sampler::new(SEED + 1);
    for k in 0..20 {
        let spec = &SPECS[k % 2];
        let a = s.invertible_matrix(spec, 1 + k % 2, 2);
        for j in 0..=4 {
            if !eq2_from_leibniz(spec, &a, j, &limits)? {
                return Ok(Outcome::new(false, format!("sample {k}, j = {j}")));
            }
        }
    }
    Ok(Outcome::new(true, "20 matrices, j = 0..4"))
}

/// Adds the identity to block `(r, c)` of a prolonged matrix.
fn mutate(matrix: &SqMatrix, m: usize, r: usize, c: usize) -> SqMatrix {
    let mut out = matrix.clone();
    for i in 0..m {
        let (row, col) = (r * m + i, c * m + i);
        out.set(row, col, matrix.get(row, col).add(&RatFunc::one()));
    }
    out
}

fn fundamental_solution() -> Result<Outcome> {
    let limits = Limits::default();
    let mut s = Sampler::new(SEED + 2);
    let mut systems = 0;
    for spec in &SPECS {
        for m in 1..=3 {
            let a = s.invertible_matrix(spec, m, if m == 3 { 1 } else { 2 });
            for n in 0..=3 {
                if !verify_fundamental(spec, &a, n, &limits)? {
                    return Ok(Outcome::new(false, format!("{spec:?}, m = {m}, n = {n}")));
                }
                systems += 1;
            }
        }
    }
    let mut mutants = 0;
    for spec in &SPECS {
        for (m, n) in [(1, 3), (2, 2)] {
            let a = s.invertible_matrix(spec, m, 2);
            let good = prolong_system(spec, &a, n, &limits)?.to_matrix();
            for r in 0..=n {
                for c in 0..=r {
                    if verify_against(spec, &a, n, &mutate(&good, m, r, c))? {
                        return Ok(Outcome::new(
                            false,
                            format!("mutant ({r}, {c}) accepted, m = {m}, n = {n}"),
                        ));
                    }
                    mutants += 1;
                }
            }
        }
    }
    Ok(Outcome::new(
        mutants >= 10,
        format!("{systems} systems, {mutants} mutants rejected"),
    ))
}

fn block_embedding() -> Result<Outcome> {
    let mut s = Sampler::new(SEED + 3);
    for k in 0..100 {
        let spec = &SPECS[k % 2];
        let order = k % 4;
        let (b, c) = (s.group_jet(spec, order, 2), s.group_jet(spec, order, 2));
        let unit = Jet::unit(order, 2);
        let homomorphism = b.mul(&c)?.to_block() == b.to_block().mul(&c.to_block())?;
        let inv = b.inverse()?;
        if !homomorphism || b.mul(&inv)? != unit || inv.mul(&b)? != unit {
            return Ok(Outcome::new(false, format!("pair {k}, order {order}")));
        }
    }
    Ok(Outcome::new(true, "100 pairs, orders 0..3"))
}

fn cocycle() -> Result<Outcome> {
    let mut s = Sampler::new(SEED + 4);
    let mut laws = 0;
    for spec in &SPECS {
        for k in 0..10 {
            let a = s.invertible_matrix(spec, 1 + k % 2, 1);
            for left in 1..6 {
                for right in 1..=6 - left {
                    if !cocycle_check(spec, &a, left, right)? {
                        return Ok(Outcome::new(false, format!("{spec:?}, a = {left}, b = {right}")));
                    }
                    laws += 1;
                }
            }
        }
    }
    Ok(Outcome::new(true, format!("{laws} instances")))
}

fn invariance_membership() -> Result<Outcome> {
    let (diag, detail) = diagonal_patterns()?;
    if !diag {
        return Ok(Outcome::new(false, detail));
    }
    let (functorial, detail) = functoriality()?;
    if !functorial {
        return Ok(Outcome::new(false, detail));
    }
    let (agree, membership) = membership_family()?;
    Ok(Outcome::new(
        agree,
        format!("16 patterns x 2 orders x 2 specs, 100 triples, {membership}"),
    ))
}

/// Every 2x2 matrix with entries in {0, 1}, checked as a constant jet
/// against the diagonal ideal at orders 0 and 1.
fn diagonal_patterns() -> Result<(bool, String)> {
    for spec in SPECS {
        let ideals = [
            IdealGens::parse(spec, 0, 2, &["Y12", "Y21"])?,
            IdealGens::parse(spec, 1, 2, &["Y12", "Y21", "Y'12", "Y'21"])?,
        ];
        for bits in 0u8..16 {
            let entries: Vec<Vec<String>> = (0..2)
                .map(|r| (0..2).map(|c| ((bits >> (2 * r + c)) & 1).to_string()).collect())
                .collect();
            let b = parse_matrix(&spec, &entries)?;
            let diagonal = b.get(0, 1).is_zero() && b.get(1, 0).is_zero();
            for ideal in &ideals {
                let jet = Jet::constant(b.clone(), ideal.order())?;
                if invariance_check(ideal, &jet, 10_000)?.invariant != diagonal {
                    return Ok((false, format!("pattern {entries:?} at order {}", ideal.order())));
                }
            }
        }
    }
    Ok((true, String::new()))
}

fn functoriality() -> Result<(bool, String)> {
    let mut s = Sampler::new(SEED + 5);
    for k in 0..100 {
        let spec = &SPECS[k % 2];
        let order = k % 3 / 2;
        let p = s.jet_polynomial(spec, order, 2, 2, 3);
        let (b, c) = (s.group_jet(spec, order, 2), s.group_jet(spec, order, 2));
        if substitute_gb(&substitute_gb(&p, &c)?, &b)? != substitute_gb(&p, &b.mul(&c)?)? {
            return Ok((false, format!("triple {k}: {}", p.render())));
        }
    }
    Ok((true, String::new()))
}

/// Generators of degree at most 3 in three variables, with one or two terms.
const GENERATOR_POOL: [&str; 12] = [
    "Y11",
    "Y12^2",
    "Y11*Y12",
    "Y11 - Y12",
    "Y11^2 - Y12",
    "Y11*Y12 - 1",
    "Y11^2 - Y12*Y21",
    "Y12^2 + 2*Y21",
    "Y11^3 - Y21",
    "Y11*Y12*Y21 - 1",
    "Y21^2 - Y11*Y12",
    "Y12*Y21 + Y11",
];

/// Gröbner membership against bounded-degree linear algebra for every
/// ideal spanned by one or two pool generators and every test polynomial
/// (all monomials of degree at most 3 and all differences of two monomials
/// of degree at most 2).
fn membership_family() -> Result<(bool, String)> {
    let spec = OperatorSpec::shift();
    let vars = [Var::new(0, 0, 0), Var::new(0, 0, 1), Var::new(0, 1, 0)];
    let pool: Vec<MPoly> = GENERATOR_POOL
        .iter()
        .map(|g| MPoly::parse(&spec, g))
        .collect::<Result<_>>()?;

    let monomials: Vec<MPoly> = monomials_up_to(&vars, 3)
        .into_iter()
        .map(|m| MPoly::term(RatFunc::one(), m))
        .collect();
    let low: Vec<&MPoly> = monomials.iter().filter(|p| p.total_degree() <= 2).collect();
    let mut targets = monomials.clone();
    for (i, p) in low.iter().enumerate() {
        for q in &low[i + 1..] {
            targets.push(p.sub(q));
        }
    }

    let mut families: Vec<Vec<MPoly>> = pool.iter().map(|g| vec![g.clone()]).collect();
    for (i, g) in pool.iter().enumerate() {
        for h in &pool[i + 1..] {
            families.push(vec![g.clone(), h.clone()]);
        }
    }

    let (mut instances, mut members) = (0, 0);
    for gens in &families {
        let ideal = IdealGens::new(spec, 0, 2, gens.clone())?;
        let span = BoundedSpan::new(gens, &vars, ORACLE_DEGREE);
        for p in &targets {
            let by_groebner = ideal.contains(p, 10_000)?;
            if by_groebner != span.contains(p) {
                let gens: Vec<String> = gens.iter().map(MPoly::render).collect();
                return Ok((false, format!("disagree on {} in {gens:?}", p.render())));
            }
            instances += 1;
            members += usize::from(by_groebner);
        }
    }
    Ok((true, format!("{instances} membership instances ({members} members)")))
}

fn component_counts() -> Result<Outcome> {
    let limits = Limits::default();
    for r in MODEL_ORDERS {
        let report = sigma_orbits(&MonomialModel::new(vec![r])?, &limits)?;
        let ok = report.single_orbit
            && report.l == r as usize
            && report.orbits.len() == 1
            && report.sigma_cycles
            && report.fixed_by_sigma_l.iter().all(|&b| b)
            && report.idempotent_axioms;
        if !ok {
            return Ok(Outcome::new(false, format!("r = {r}, l = {}", report.l)));
        }
    }
    Ok(Outcome::new(true, "r in {1, 2, 3, 4, 6}"))
}

fn exact_sequence() -> Result<Outcome> {
    let limits = Limits::default();
    let mut orders = Vec::new();
    for r in MODEL_ORDERS {
        let report = exact_sequence_check(&MonomialModel::new(vec![r])?, &limits)?;
        let ok = report.exact
            && report.morphism
            && report.surjective
            && report.l == r as usize
            && report.kernel_matches_component_group
            && report.group_order == report.kernel_order * r as usize;
        if !ok {
            return Ok(Outcome::new(false, format!("r = {r}")));
        }
        orders.push(format!("{}={}x{r}", report.group_order, report.kernel_order));
    }
    Ok(Outcome::new(true, orders.join(" ")))
}

fn determinism() -> Result<Outcome> {
    let run = |jobs: &str| {
        Process::new(env!("CARGO_BIN_EXE_pvp"))
            .args(["selftest", "--seed", "42", "--jobs", jobs])
            .env_remove("PVP_OUTPUT")
            .env_remove("PVP_BUDGET")
            .env_remove("PVP_ORDER")
            .output()
    };
    let (first, second) = match (run("1"), run("4")) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Ok(Outcome::new(false, format!("cannot run binary: {e}"))),
    };
    let identical = first.stdout == second.stdout && !first.stdout.is_empty();
    let ok = first.status.success() && second.status.success();
    Ok(Outcome::new(
        identical && ok,
        format!("{} bytes, jobs 1 vs 4", first.stdout.len()),
    ))
}
