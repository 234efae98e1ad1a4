//! The invariant suite run by `selftest`: every module property at
//! default sizes, each check seeded independently so results do not
//! depend on scheduling.

use rayon::prelude::*;
use serde_json::json;

use super::io::{Check, Report, Status};
use super::RunOptions;
use crate::arith::Ring;
use crate::base_field::{format_ratfunc, OperatorSpec, RatFunc};
use crate::error::Result;
use crate::groebner::groebner_basis;
use crate::ideals::{invariance_check, stabilization_scan, substitute_gb, IdealGens};
use crate::jet::Jet;
use crate::matrix::{mat_delta, mat_sigma, parse_matrix, SqMatrix};
use crate::mpoly::{MPoly, Var};
use crate::oracles::member_certificate_degree;
use crate::prolong::{eq2_from_leibniz, prolong_system, verify_against, verify_fundamental};
use crate::sampling::Sampler;
use crate::structure::{
    cocycle_check, enumerate_automorphisms, exact_sequence_check, sigma_orbits, sigma_power_product, MonomialModel,
};
use crate::Limits;

type CheckFn = fn(&Limits, &mut Sampler) -> Result<bool>;

const SPECS: [OperatorSpec; 2] = [OperatorSpec::shift(), OperatorSpec::q_dilation()];

/// Every check in report order.
pub fn suite() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("base_field.sigma_delta_commute", sigma_delta_commute),
        ("base_field.sigma_inverse_round_trip", sigma_inverse_round_trip),
        ("base_field.delta_leibniz_rule", delta_leibniz_rule),
        ("base_field.linearity", linearity),
        ("base_field.format_parse_round_trip", format_parse_round_trip),
        ("matrices_jets.inverse_round_trip", matrix_inverse_round_trip),
        ("matrices_jets.determinant_multiplicative", determinant_multiplicative),
        ("matrices_jets.sigma_delta_commute", matrix_sigma_delta_commute),
        ("matrices_jets.jet_group_axioms", jet_group_axioms),
        ("matrices_jets.block_homomorphism", block_homomorphism),
        ("matrices_jets.block_injective", block_injective),
        ("prolongation.fundamental_identity", fundamental_identity),
        ("prolongation.mutants_rejected", mutants_rejected),
        ("prolongation.leibniz_closed_form", leibniz_closed_form),
        ("prolongation.tower_consistency", tower_consistency),
        ("prolongation.determinant_power", determinant_power),
        ("ideals.diagonal_invariance", diagonal_invariance),
        ("ideals.functoriality", functoriality),
        ("ideals.invariant_jets_closed", invariant_jets_closed),
        ("ideals.zero_and_unit_ideals", zero_and_unit_ideals),
        ("ideals.groebner_idempotent", groebner_idempotent),
        ("ideals.membership_matches_oracle", membership_matches_oracle),
        ("ideals.stabilization_examples", stabilization_examples),
        ("structure.cocycle_law", cocycle_law),
        ("structure.idempotent_axioms", idempotent_axioms),
        ("structure.orbit_lengths", orbit_lengths),
        ("structure.automorphism_groups", automorphism_groups),
        ("structure.exact_sequences", exact_sequences),
    ]
}

/// Per-check seed, independent of evaluation order.
fn check_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64 + 1)
}

fn evaluate(name: &str, f: CheckFn, limits: &Limits, seed: u64) -> (Check, Option<Status>) {
    let mut sampler = Sampler::new(seed);
    match f(limits, &mut sampler) {
        Ok(pass) => (Check::new(name, pass), None),
        Err(e) => {
            let status = Status::of_error(&e);
            (Check::with_detail(name, false, e.to_string()), Some(status))
        }
    }
}

pub fn run(options: &RunOptions) -> Report {
    let checks = suite();
    let limits = options.limits;
    let evaluate_all = || -> Vec<(Check, Option<Status>)> {
        checks
            .par_iter()
            .enumerate()
            .map(|(i, &(name, f))| evaluate(name, f, &limits, check_seed(options.seed, i)))
            .collect()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build() {
        Ok(pool) => pool.install(evaluate_all),
        Err(_) => evaluate_all(),
    };

    let failed = results.iter().any(|(c, s)| !c.pass && s.is_none());
    let undecided = results.iter().any(|(_, s)| *s == Some(Status::BudgetExceeded));
    let invalid = results.iter().any(|(_, s)| *s == Some(Status::InvalidInput));
    let status = if failed || invalid {
        Status::CheckFailed
    } else if undecided {
        Status::BudgetExceeded
    } else {
        Status::Ok
    };
    let checks: Vec<Check> = results.into_iter().map(|(c, _)| c).collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    Report {
        command: "selftest".into(),
        inputs_echo: json!({
            "seed": options.seed,
            "max_order": limits.max_order,
            "budget": limits.groebner_budget,
            "max_group_order": limits.max_group_order,
        }),
        result: json!({ "total": checks.len(), "passed": passed, "failed": checks.len() - passed }),
        checks,
        status,
    }
}

fn all<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<bool>) -> Result<bool> {
    for item in items {
        if !f(item)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sigma_delta_commute(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 30)), |spec| {
        let f = s.ratfunc(spec, 4);
        Ok(spec.apply_delta(&spec.apply_sigma(&f)) == spec.apply_sigma(&spec.apply_delta(&f)))
    })
}

fn sigma_inverse_round_trip(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 20)), |spec| {
        let f = s.ratfunc(spec, 3);
        Ok(spec.apply_sigma_inv(&spec.apply_sigma(&f)) == f && spec.apply_sigma(&spec.apply_sigma_inv(&f)) == f)
    })
}

fn delta_leibniz_rule(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 15)), |spec| {
        let (f, g) = (s.ratfunc(spec, 2), s.ratfunc(spec, 2));
        let lhs = spec.apply_delta(&f.mul(&g));
        Ok(lhs == spec.apply_delta(&f).mul(&g).add(&f.mul(&spec.apply_delta(&g))))
    })
}

fn linearity(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 15)), |spec| {
        let (f, g, c) = (s.ratfunc(spec, 2), s.ratfunc(spec, 2), s.constant(spec));
        let combo = f.mul(&c).add(&g);
        let delta = spec.apply_delta(&combo) == spec.apply_delta(&f).mul(&c).add(&spec.apply_delta(&g));
        let sigma = spec.apply_sigma(&combo) == spec.apply_sigma(&f).mul(&c).add(&spec.apply_sigma(&g));
        Ok(delta && sigma)
    })
}

fn format_parse_round_trip(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 20)), |spec| {
        let f = s.ratfunc(spec, 3);
        Ok(spec.parse(&format_ratfunc(&f))? == f)
    })
}

fn matrix_inverse_round_trip(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 4)), |spec| {
        let a = s.invertible_matrix(spec, 2, 2);
        let id = SqMatrix::identity(2);
        Ok(a.mul(&a.inverse()?)? == id && a.inverse()?.mul(&a)? == id)
    })
}

fn determinant_multiplicative(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 4)), |spec| {
        let (a, b) = (s.matrix(spec, 3, 1), s.matrix(spec, 3, 1));
        Ok(a.mul(&b)?.det()? == a.det()?.mul(&b.det()?))
    })
}

fn matrix_sigma_delta_commute(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter().flat_map(|spec| std::iter::repeat_n(spec, 4)), |spec| {
        let a = s.matrix(spec, 2, 3);
        Ok(mat_sigma(spec, &mat_delta(spec, &a)) == mat_delta(spec, &mat_sigma(spec, &a)))
    })
}

fn jet_group_axioms(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(0..12, |k| {
        let spec = &SPECS[k % 2];
        let order = k % 4;
        let (b, c, d) = (
            s.group_jet(spec, order, 2),
            s.group_jet(spec, order, 2),
            s.group_jet(spec, order, 2),
        );
        let unit = Jet::unit(order, 2);
        let assoc = b.mul(&c)?.mul(&d)? == b.mul(&c.mul(&d)?)?;
        let identity = unit.mul(&b)? == b && b.mul(&unit)? == b;
        let inv = b.inverse()?;
        Ok(assoc && identity && b.mul(&inv)? == unit && inv.mul(&b)? == unit)
    })
}

fn block_homomorphism(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(0..16, |k| {
        let spec = &SPECS[k % 2];
        let order = k % 4;
        let (b, c) = (s.group_jet(spec, order, 2), s.group_jet(spec, order, 2));
        Ok(b.mul(&c)?.to_block() == b.to_block().mul(&c.to_block())?)
    })
}

fn block_injective(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(0..8, |k| {
        let b = s.group_jet(&SPECS[k % 2], 3, 2);
        Ok(b.to_block().column_zero() == b.terms())
    })
}

fn fundamental_identity(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    all(0..6, |k| {
        let spec = &SPECS[k % 2];
        let m = 1 + k % 2;
        let a = s.invertible_matrix(spec, m, 2);
        all(0..=2, |n| verify_fundamental(spec, &a, n, limits))
    })
}

fn mutants_rejected(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter(), |spec| {
        let a = s.invertible_matrix(spec, 1, 2);
        let n = 2;
        let good = prolong_system(spec, &a, n, limits)?.to_matrix();
        all((0..=n).flat_map(|r| (0..=r).map(move |c| (r, c))), |(r, c)| {
            let mut bad = good.clone();
            bad.set(r, c, good.get(r, c).add(&RatFunc::one()));
            Ok(!verify_against(spec, &a, n, &bad)?)
        })
    })
}

fn leibniz_closed_form(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    all(0..4, |k| {
        let spec = &SPECS[k % 2];
        let a = s.invertible_matrix(spec, 1 + k / 2, 2);
        all(0..=4, |j| eq2_from_leibniz(spec, &a, j, limits))
    })
}

fn tower_consistency(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter(), |spec| {
        let a = s.invertible_matrix(spec, 2, 2);
        let top = prolong_system(spec, &a, 3, limits)?;
        all(0..3, |k| {
            Ok(top.blocks().leading(k)? == *prolong_system(spec, &a, k, limits)?.blocks())
        })
    })
}

fn determinant_power(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    all(SPECS.iter(), |spec| {
        let a = s.invertible_matrix(spec, 2, 1);
        let det = a.det()?;
        all(0..=2, |n| {
            Ok(prolong_system(spec, &a, n, limits)?.to_matrix().det()? == det.pow(n as u32 + 1))
        })
    })
}

fn diag_ideal(order: usize) -> Result<IdealGens> {
    let gens: &[&str] = if order == 0 {
        &["Y12", "Y21"]
    } else {
        &["Y12", "Y21", "Y'12", "Y'21"]
    };
    IdealGens::parse(OperatorSpec::shift(), order, 2, gens)
}

fn constant_jet(rows: [[i64; 2]; 2], order: usize) -> Result<Jet> {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(i64::to_string).collect()).collect();
    Jet::constant(parse_matrix(&OperatorSpec::shift(), &rows)?, order)
}

fn diagonal_invariance(limits: &Limits, _: &mut Sampler) -> Result<bool> {
    let ideal = diag_ideal(0)?;
    let budget = limits.groebner_budget;
    let diag = invariance_check(&ideal, &constant_jet([[2, 0], [0, 3]], 0)?, budget)?.invariant;
    let anti = invariance_check(&ideal, &constant_jet([[0, 1], [1, 0]], 0)?, budget)?;
    Ok(diag && !anti.invariant && anti.failing_generator == Some(0))
}

fn functoriality(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(0..8, |k| {
        let spec = &SPECS[k % 2];
        let order = k % 2;
        let p = s.jet_polynomial(spec, order, 2, 2, 3);
        let (b, c) = (s.group_jet(spec, order, 2), s.group_jet(spec, order, 2));
        Ok(substitute_gb(&substitute_gb(&p, &c)?, &b)? == substitute_gb(&p, &b.mul(&c)?)?)
    })
}

fn invariant_jets_closed(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    let ideal = diag_ideal(1)?;
    let spec = OperatorSpec::shift();
    let budget = limits.groebner_budget;
    let mut members = Vec::new();
    for _ in 0..8 {
        let mut b = s.group_jet(&spec, 1, 2);
        if s.coin() {
            // Make the sample diagonal so some candidates are accepted.
            let mut terms = b.terms().to_vec();
            for t in &mut terms {
                t.set(0, 1, RatFunc::zero());
                t.set(1, 0, RatFunc::zero());
            }
            if terms[0].det()?.is_zero() {
                continue;
            }
            b = Jet::new(terms)?;
        }
        if invariance_check(&ideal, &b, budget)?.invariant {
            members.push(b);
        }
    }
    all(
        members.iter().flat_map(|b| members.iter().map(move |c| (b, c))),
        |(b, c)| {
            Ok(invariance_check(&ideal, &b.mul(c)?, budget)?.invariant
                && invariance_check(&ideal, &b.inverse()?, budget)?.invariant)
        },
    )
}

fn zero_and_unit_ideals(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    let spec = OperatorSpec::shift();
    let zero = IdealGens::parse::<&str>(spec, 1, 2, &[])?;
    let unit = IdealGens::parse(spec, 1, 2, &["Y11*Y22 - Y12*Y21 - 1", "Y11*Y22 - Y12*Y21 - 2"])?;
    all(0..4, |_| {
        let b = s.group_jet(&spec, 1, 2);
        Ok(invariance_check(&zero, &b, limits.groebner_budget)?.invariant
            && invariance_check(&unit, &b, limits.groebner_budget)?.invariant)
    })
}

fn groebner_idempotent(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    let spec = OperatorSpec::shift();
    let vars = [Var::new(0, 0, 0), Var::new(0, 0, 1), Var::new(0, 1, 0)];
    all(0..4, |_| {
        let gens: Vec<MPoly> = (0..2).map(|_| s.polynomial_in(&spec, &vars, 2, 3)).collect();
        let basis = groebner_basis(&gens, limits.groebner_budget)?;
        Ok(groebner_basis(&basis, limits.groebner_budget)? == basis)
    })
}

fn membership_matches_oracle(limits: &Limits, s: &mut Sampler) -> Result<bool> {
    let spec = OperatorSpec::shift();
    let vars = [Var::new(0, 0, 0), Var::new(0, 0, 1), Var::new(0, 1, 0)];
    all(0..6, |k| {
        let gens: Vec<MPoly> = (0..2).map(|_| s.polynomial_in(&spec, &vars, 2, 2)).collect();
        let ideal = IdealGens::new(spec, 0, 2, gens.clone())?;
        let p = if k % 2 == 0 {
            s.polynomial_in(&spec, &vars, 3, 3)
        } else {
            let h: Vec<MPoly> = (0..2).map(|_| s.polynomial_in(&spec, &vars, 1, 2)).collect();
            gens.iter()
                .zip(&h)
                .fold(MPoly::zero(), |acc, (g, h)| acc.add(&g.mul(h)))
        };
        let member = ideal.contains(&p, limits.groebner_budget)?;
        Ok(member == member_certificate_degree(&p, &gens, 6).is_some())
    })
}

fn stabilization_examples(limits: &Limits, _: &mut Sampler) -> Result<bool> {
    let spec = OperatorSpec::shift();
    let budget = limits.groebner_budget;
    let jets = [constant_jet([[2, 0], [0, 5]], 1)?, constant_jet([[1, 0], [0, 1]], 1)?];
    let diag = stabilization_scan(&[diag_ideal(0)?, diag_ideal(1)?], &jets, budget)?;
    let zero = [
        IdealGens::parse::<&str>(spec, 0, 2, &[])?,
        IdealGens::parse::<&str>(spec, 1, 2, &[])?,
    ];
    let flat = stabilization_scan(&zero, &jets, budget)?;
    Ok(diag.stabilized_at == Some(0) && flat.stabilized_at == Some(0) && flat.first_differing_level.is_none())
}

fn cocycle_law(_: &Limits, s: &mut Sampler) -> Result<bool> {
    all(0..4, |k| {
        let spec = &SPECS[k % 2];
        let a = s.invertible_matrix(spec, 2, 1);
        let ok = all((1..6).flat_map(|x| (1..=6 - x).map(move |y| (x, y))), |(x, y)| {
            cocycle_check(spec, &a, x, y)
        })?;
        Ok(ok && sigma_power_product(spec, &a, 1)? == a)
    })
}

fn idempotent_axioms(limits: &Limits, _: &mut Sampler) -> Result<bool> {
    all(1..=8, |r| {
        Ok(sigma_orbits(&MonomialModel::new(vec![r])?, limits)?.idempotent_axioms)
    })
}

fn orbit_lengths(limits: &Limits, _: &mut Sampler) -> Result<bool> {
    all(1..=8u32, |r| {
        let report = sigma_orbits(&MonomialModel::new(vec![r])?, limits)?;
        Ok(report.single_orbit
            && report.l == r as usize
            && report.root_order == r
            && report.sigma_cycles
            && report.fixed_by_sigma_l.iter().all(|&b| b))
    })
}

fn automorphism_groups(limits: &Limits, _: &mut Sampler) -> Result<bool> {
    all(1..=limits.max_group_order.min(8) as u32, |r| {
        let group = enumerate_automorphisms(&MonomialModel::new(vec![r])?, limits)?;
        Ok(group.order() == r as usize && group.generator().is_some())
    })
}

fn exact_sequences(limits: &Limits, _: &mut Sampler) -> Result<bool> {
    all([1u32, 2, 3, 4, 6], |r| {
        let report = exact_sequence_check(&MonomialModel::new(vec![r])?, limits)?;
        Ok(report.exact && report.l == r as usize && report.group_order == report.kernel_order * r as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes_and_is_deterministic() {
        let options = RunOptions {
            jobs: 2,
            ..RunOptions::default()
        };
        let first = run(&options);
        let failing: Vec<&Check> = first.checks.iter().filter(|c| !c.pass).collect();
        assert!(failing.is_empty(), "{failing:?}");
        assert_eq!(first.status, Status::Ok);
        let again = run(&RunOptions { jobs: 1, ..options });
        assert_eq!(first.to_json(), again.to_json());
    }

    #[test]
    fn tiny_budget_is_undecided() {
        let mut options = RunOptions::default();
        options.limits.groebner_budget = 1;
        let report = run(&options);
        assert_eq!(report.status, Status::BudgetExceeded);
        assert_eq!(report.exit_code(), 3);
    }
}
