//! Ideals in the jet variables, the substitution action of a jet, and
//! invariance of an ideal under that action.

use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::Ring;
use crate::base_field::{format_ratfunc, OperatorSpec, RatFunc};
use crate::error::{Error, Result};
use crate::groebner;
use crate::jet::{binomial_scalar, Jet};
use crate::mpoly::{MPoly, Var};

/// Generators of an ideal in `Y⁽⁰⁾, …, Y⁽ⁿ⁾` (each `m × m`), with a lazily
/// computed reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct IdealGens {
    spec: OperatorSpec,
    order: usize,
    dim: usize,
    generators: Vec<MPoly>,
    basis: OnceLock<Vec<MPoly>>,
}

fn check_vars(p: &MPoly, order: usize, dim: usize) -> Result<()> {
    match p
        .variables()
        .into_iter()
        .find(|v| v.order as usize > order || v.row as usize >= dim || v.col as usize >= dim)
    {
        Some(v) => Err(Error::dims(format!(
            "variable {} lies outside order {order}, dimension {dim}",
            crate::expr::format_var(v)
        ))),
        None => Ok(()),
    }
}

impl IdealGens {
    pub fn new(spec: OperatorSpec, order: usize, dim: usize, generators: Vec<MPoly>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        for g in &generators {
            check_vars(g, order, dim)?;
        }
        Ok(IdealGens {
            spec,
            order,
            dim,
            generators,
            basis: OnceLock::new(),
        })
    }

    pub fn parse<S: AsRef<str>>(spec: OperatorSpec, order: usize, dim: usize, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| MPoly::parse(&spec, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, order, dim, gens)
    }

    pub fn spec(&self) -> OperatorSpec {
        self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    /// The reduced Gröbner basis, computed on first use. A budget failure
    /// leaves the cache empty.
    pub fn groebner(&self, budget: usize) -> Result<&[MPoly]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner::groebner_basis(&self.generators, budget)?;
        Ok(self.basis.get_or_init(|| b))
    }

    pub fn contains(&self, p: &MPoly, budget: usize) -> Result<bool> {
        check_vars(p, self.order, self.dim)?;
        let basis = self.groebner(budget)?;
        Ok(groebner::normal_form(p, basis).is_zero())
    }
}

/// The same ideal presented by its reduced Gröbner basis.
pub fn groebner_basis(ideal: &IdealGens, budget: usize) -> Result<IdealGens> {
    let basis = ideal.groebner(budget)?.to_vec();
    let out = IdealGens::new(ideal.spec, ideal.order, ideal.dim, basis.clone())?;
    let _ = out.basis.set(basis);
    Ok(out)
}

pub fn ideal_member(p: &MPoly, ideal: &IdealGens, budget: usize) -> Result<bool> {
    ideal.contains(p, budget)
}

/// The action `g_B`: every `Y⁽ʲ⁾` becomes `Σᵢ binom(j, i) Y⁽ⁱ⁾ B⁽ʲ⁻ⁱ⁾`.
pub fn substitute_gb(p: &MPoly, b: &Jet) -> Result<MPoly> {
    check_vars(p, b.order(), b.dim())?;
    let m = b.dim();
    Ok(p.substitute(RatFunc::clone, |v| {
        let j = v.order as usize;
        let mut image = MPoly::zero();
        for i in 0..=j {
            let scale: RatFunc = binomial_scalar(j, i);
            for c in 0..m {
                let entry = b.term(j - i).get(c, v.col as usize);
                if entry.is_zero() {
                    continue;
                }
                let var = MPoly::var(Var::new(i as u32, v.row, c as u32));
                image = image.add(&var.scale(&entry.mul(&scale)));
            }
        }
        image
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceOutcome {
    pub invariant: bool,
    /// Index of the first generator whose image leaves the ideal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_generator: Option<usize>,
}

/// Whether `g_B` maps every generator of `ideal` back into it.
///
/// `B` must match the ideal's order and dimension and have entries in the
/// constant field. Invertibility of `B⁽⁰⁾` is not required, so singular
/// test matrices can be screened too.
pub fn invariance_check(ideal: &IdealGens, b: &Jet, budget: usize) -> Result<InvarianceOutcome> {
    if b.order() != ideal.order || b.dim() != ideal.dim {
        return Err(Error::dims(format!(
            "jet of order {} and dimension {} against an ideal of order {} and dimension {}",
            b.order(),
            b.dim(),
            ideal.order,
            ideal.dim
        )));
    }
    if let Some(bad) = b
        .terms()
        .iter()
        .flat_map(|t| t.entries())
        .find(|f| !ideal.spec.in_constant_field(f))
    {
        return Err(Error::NotConstant(format_ratfunc(bad)));
    }
    for (k, g) in ideal.generators.iter().enumerate() {
        if !ideal.contains(&substitute_gb(g, b)?, budget)? {
            return Ok(InvarianceOutcome {
                invariant: false,
                failing_generator: Some(k),
            });
        }
    }
    Ok(InvarianceOutcome {
        invariant: true,
        failing_generator: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    /// Highest level `N` of the tower.
    pub bound: usize,
    /// `accepted[n][k]`: jet `k`, truncated to order `n`, preserves `Iₙ`.
    pub accepted: Vec<Vec<bool>>,
    /// Least `n < N` from which acceptance at level `n` implies acceptance
    /// at every higher level, for the supplied jets; `None` means
    /// inconclusive up to `N`.
    pub stabilized_at: Option<usize>,
    /// Least `n ≥ 1` whose accepted set differs from level `n − 1`.
    pub first_differing_level: Option<usize>,
}

/// Heuristic search for the order beyond which invariance stops changing.
///
/// `tower[n]` is the user-supplied order-`n` ideal; each test jet must
/// have order at least `N = tower.len() − 1` and is truncated per level.
/// The report only describes the supplied jets and never certifies a
/// true stabilization order.
pub fn stabilization_scan(tower: &[IdealGens], jets: &[Jet], budget: usize) -> Result<StabilizationReport> {
    let Some(top) = tower.len().checked_sub(1) else {
        return Err(Error::InvalidArgument("the ideal tower is empty".into()));
    };
    let mut accepted = Vec::with_capacity(tower.len());
    for (n, ideal) in tower.iter().enumerate() {
        if ideal.order != n {
            return Err(Error::dims(format!(
                "tower level {n} holds an ideal of order {}",
                ideal.order
            )));
        }
        let row = jets
            .iter()
            .map(|b| Ok(invariance_check(ideal, &b.truncate(n)?, budget)?.invariant))
            .collect::<Result<Vec<bool>>>()?;
        accepted.push(row);
    }
    let implies_above =
        |n: usize| (n + 1..=top).all(|h| accepted[n].iter().zip(&accepted[h]).all(|(&lo, &hi)| !lo || hi));
    let stabilized_at = (0..top).find(|&n| implies_above(n));
    let first_differing_level = (1..=top).find(|&n| accepted[n] != accepted[n - 1]);
    Ok(StabilizationReport {
        bound: top,
        accepted,
        stabilized_at,
        first_differing_level,
    })
}
