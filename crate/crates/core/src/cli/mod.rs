//! The batch frontend: subcommand dispatch over JSON inputs, producing a
//! report envelope and an exit code.
//!
//! Exit codes: 0 success, 1 a verified identity failed, 2 malformed or
//! out-of-domain input, 3 a resource limit was hit before deciding.

pub mod io;
pub mod selftest;

use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::arith::Ring;
use crate::error::{Error, Result};
use crate::ideals::{invariance_check, IdealGens};
use crate::jet::Jet;
use crate::matrix::{format_matrix, SqMatrix};
use crate::prolong::{eq2_from_leibniz, prolong_system, verify_against};
use crate::structure::{cocycle_check, exact_sequence_check, sigma_orbits, sigma_power_product, MonomialModel};
use crate::Limits;
use io::{
    format_blocks, matrix, Check, ComposeInput, InvarianceInput, JetOut, JetsInput, ModelInput, ProlongInput, Report,
    Status, VerifyInput,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Prolong,
    Verify,
    Compose,
    Jets,
    CheckInvariance,
    Components,
    ExactSeq,
    Selftest,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Prolong,
        Command::Verify,
        Command::Compose,
        Command::Jets,
        Command::CheckInvariance,
        Command::Components,
        Command::ExactSeq,
        Command::Selftest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Prolong => "prolong",
            Command::Verify => "verify",
            Command::Compose => "compose",
            Command::Jets => "jets",
            Command::CheckInvariance => "check-invariance",
            Command::Components => "components",
            Command::ExactSeq => "exact-seq",
            Command::Selftest => "selftest",
        }
    }

    pub fn needs_input(self) -> bool {
        self != Command::Selftest
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub limits: Limits,
    pub seed: u64,
    /// Worker threads for independent checks; 0 picks the default.
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            limits: Limits::default(),
            seed: 0,
            jobs: 1,
        }
    }
}

/// Computed payload of a successful run.
struct Outcome {
    result: Value,
    checks: Vec<Check>,
}

fn status_of(checks: &[Check]) -> Status {
    if checks.iter().all(|c| c.pass) {
        Status::Ok
    } else {
        Status::CheckFailed
    }
}

/// Runs `command` on the JSON text `input` (ignored by `selftest`).
pub fn run(command: Command, input: Option<&str>, options: &RunOptions) -> Report {
    if command == Command::Selftest {
        return selftest::run(options);
    }
    let text = input.unwrap_or("");
    let echo: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return failure(command, Value::Null, &Error::Input(e.to_string())),
    };
    let outcome = match command {
        Command::Prolong => typed(&echo).and_then(|i| prolong(i, options)),
        Command::Verify => typed(&echo).and_then(|i| verify(i, options)),
        Command::Compose => typed(&echo).and_then(|i| compose(i, options)),
        Command::Jets => typed(&echo).and_then(|i| jets(i, options)),
        Command::CheckInvariance => typed(&echo).and_then(|i| check_invariance(i, options)),
        Command::Components => typed(&echo).and_then(|i| components(i, options)),
        Command::ExactSeq => typed(&echo).and_then(|i| exact_seq(i, options)),
        Command::Selftest => unreachable!("handled above"),
    };
    match outcome {
        Ok(Outcome { result, checks }) => Report {
            command: command.name().into(),
            inputs_echo: echo,
            result,
            status: status_of(&checks),
            checks,
        },
        Err(e) => failure(command, echo, &e),
    }
}

fn typed<T: DeserializeOwned>(v: &Value) -> Result<T> {
    Ok(T::deserialize(v)?)
}

fn failure(command: Command, echo: Value, e: &Error) -> Report {
    Report {
        command: command.name().into(),
        inputs_echo: echo,
        result: json!({ "error": e.to_string() }),
        checks: Vec::new(),
        status: Status::of_error(e),
    }
}

fn nonsingular(a: &SqMatrix) -> Result<()> {
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    Ok(())
}

fn prolong(input: ProlongInput, options: &RunOptions) -> Result<Outcome> {
    let spec = input.spec;
    let a = matrix(&spec, &input.a)?;
    nonsingular(&a)?;
    let system = prolong_system(&spec, &a, input.n, &options.limits)?;
    let blocks = system.blocks();
    let flat = system.to_matrix();

    let m = a.rows();
    let structure = (0..=input.n).all(|r| blocks.block(r, r) == a)
        && (0..=input.n).all(|r| (r + 1..=input.n).all(|c| blocks.block(r, c).is_zero()));
    let det_a = a.det()?;
    let determinant = flat.det()? == det_a.pow(input.n as u32 + 1);
    let tower = (0..input.n).all(|k| {
        prolong_system(&spec, &a, k, &options.limits)
            .is_ok_and(|lower| blocks.leading(k).is_ok_and(|b| b == *lower.blocks()))
    });
    Ok(Outcome {
        result: json!({
            "order": input.n,
            "m": m,
            "blocks": format_blocks(blocks),
            "matrix": format_matrix(&flat),
        }),
        checks: vec![
            Check::new("block_structure", structure),
            Check::new("determinant_power", determinant),
            Check::new("tower_consistency", tower),
        ],
    })
}

fn verify(input: VerifyInput, options: &RunOptions) -> Result<Outcome> {
    let spec = input.spec;
    let a = matrix(&spec, &input.a)?;
    nonsingular(&a)?;
    let system = prolong_system(&spec, &a, input.n, &options.limits)?;
    let mut candidate = system.to_matrix();
    if let Some([r, c]) = input.corrupt_block {
        if c > r || r > input.n {
            return Err(Error::Input(format!(
                "block ({r}, {c}) is not in the lower triangle of order {}",
                input.n
            )));
        }
        let m = a.rows();
        let block = candidate.submatrix(r * m, c * m, m, m).add(&SqMatrix::identity(m))?;
        candidate.set_block(r * m, c * m, &block);
    }
    let fundamental = verify_against(&spec, &a, input.n, &candidate)?;
    let orders: Vec<usize> = (0..=input.n).collect();
    let mut checks = vec![Check::new("fundamental", fundamental)];
    for &j in &orders {
        checks.push(Check::new(
            format!("leibniz_order_{j}"),
            eq2_from_leibniz(&spec, &a, j, &options.limits)?,
        ));
    }
    let mut result = json!({
        "fundamental": fundamental,
        "leibniz_orders_checked": orders,
    });
    if let Some(block) = input.corrupt_block {
        result["corrupted_block"] = json!(block);
    }
    Ok(Outcome { result, checks })
}

fn compose(input: ComposeInput, _options: &RunOptions) -> Result<Outcome> {
    let spec = input.spec;
    let a = matrix(&spec, &input.a)?;
    nonsingular(&a)?;
    let product = sigma_power_product(&spec, &a, input.l)?;
    let checks = (1..input.l)
        .map(|left| {
            let right = input.l - left;
            Ok(Check::new(
                format!("cocycle_{left}_{right}"),
                cocycle_check(&spec, &a, left, right)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        result: json!({ "l": input.l, "A_l": format_matrix(&product) }),
        checks,
    })
}

fn jets(input: JetsInput, options: &RunOptions) -> Result<Outcome> {
    let spec = input.spec;
    let parsed: Vec<Jet> = input.jets.iter().map(|j| j.parse(&spec)).collect::<Result<_>>()?;
    let Some(first) = parsed.first() else {
        return Err(Error::Input("at least one jet is required".into()));
    };
    for b in &parsed {
        options.limits.check_order(b.order())?;
    }
    let product = parsed[1..].iter().try_fold(first.clone(), |acc, b| acc.mul(b))?;
    let inverses: Vec<Jet> = parsed.iter().map(Jet::inverse).collect::<Result<_>>()?;

    let block_product = parsed[1..]
        .iter()
        .try_fold(first.to_block(), |acc, b| acc.mul(&b.to_block()))?;
    let unit = Jet::unit(first.order(), first.dim());
    let mut checks = vec![
        Check::new("constant_entries", parsed.iter().all(|b| b.is_constant(&spec))),
        Check::new("block_homomorphism", block_product == product.to_block()),
    ];
    for (k, (b, inv)) in parsed.iter().zip(&inverses).enumerate() {
        let round_trip = b.mul(inv)? == unit && inv.mul(b)? == unit;
        checks.push(Check::new(format!("inverse_round_trip_{k}"), round_trip));
    }
    if parsed.len() >= 3 {
        let left = parsed[0].mul(&parsed[1])?.mul(&parsed[2])?;
        let right = parsed[0].mul(&parsed[1].mul(&parsed[2])?)?;
        checks.push(Check::new("associativity", left == right));
    }
    Ok(Outcome {
        result: json!({
            "product": JetOut::from(&product),
            "inverses": inverses.iter().map(JetOut::from).collect::<Vec<_>>(),
            "product_block": format_blocks(&product.to_block()),
        }),
        checks,
    })
}

fn check_invariance(input: InvarianceInput, options: &RunOptions) -> Result<Outcome> {
    let spec = input.spec;
    options.limits.check_order(input.order)?;
    let ideal = IdealGens::parse(spec, input.order, input.m, &input.generators)?;
    let jet = input.jet.parse(&spec)?;
    let outcome = invariance_check(&ideal, &jet, options.limits.groebner_budget)?;
    Ok(Outcome {
        checks: vec![Check::new("invariance", outcome.invariant)],
        result: serde_json::to_value(&outcome)?,
    })
}

fn components(input: ModelInput, options: &RunOptions) -> Result<Outcome> {
    let model = MonomialModel::new(input.r)?;
    let report = sigma_orbits(&model, &options.limits)?;
    let divides = report
        .least_fixing_power
        .iter()
        .all(|&t| (report.root_order as usize).is_multiple_of(t));
    let mut checks = vec![
        Check::new("idempotent_axioms", report.idempotent_axioms),
        Check::new("sigma_permutes_cyclically", report.sigma_cycles),
        Check::new("sigma_l_fixes_idempotents", report.fixed_by_sigma_l.iter().all(|&b| b)),
        Check::new("components_are_fields", report.component_is_field.iter().all(|&b| b)),
        Check::new("orbit_length_divides_root_order", divides),
    ];
    if report.single_orbit {
        checks.push(Check::new(
            "orbit_length_equals_root_order",
            report.l == report.root_order as usize,
        ));
    }
    Ok(Outcome {
        result: serde_json::to_value(&report)?,
        checks,
    })
}

fn exact_seq(input: ModelInput, options: &RunOptions) -> Result<Outcome> {
    let model = MonomialModel::new(input.r)?;
    let report = exact_sequence_check(&model, &options.limits)?;
    Ok(Outcome {
        checks: vec![
            Check::new("morphism", report.morphism),
            Check::new("surjective", report.surjective),
            Check::new("kernel_preserves_components", report.kernel_preserves_components),
            Check::new("kernel_matches_component_group", report.kernel_matches_component_group),
            Check::new("order_identity", report.order_identity),
            Check::new("exact", report.exact),
        ],
        result: serde_json::to_value(&report)?,
    })
}
