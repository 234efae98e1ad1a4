//! Finite monomial models `C[y₁,…,y_m]/(y_iʳⁱ − 1)` over `C = ℚ(ζ_N)`,
//! `N = lcm(rᵢ)`, with `σ(y_i) = ζ_N^{N/rᵢ}·y_i`, σ trivial on `C`, and
//! δ = 0.

use num_integer::Integer;
use serde::Serialize;

use crate::arith::rational;
use crate::error::{Error, Result};
use crate::structure::cyclotomic::{CycNum, CyclotomicField};
use crate::Limits;

/// Largest ring dimension `Π rᵢ` accepted.
pub const MAX_MODEL_DIM: usize = 256;

/// Dense element: coefficient of `y^k` at the mixed-radix index of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelElement(Vec<CycNum>);

impl ModelElement {
    pub fn coeffs(&self) -> &[CycNum] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(CycNum::is_zero)
    }
}

#[derive(Clone, Debug)]
pub struct MonomialModel {
    exponents: Vec<u32>,
    field: CyclotomicField,
    /// `strides[i] = Π_{j<i} r_j`
    strides: Vec<usize>,
    dim: usize,
}

impl MonomialModel {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() || exponents.contains(&0) {
            return Err(Error::InvalidModel(
                "exponents must be a nonempty list of positive integers".into(),
            ));
        }
        let mut strides = Vec::with_capacity(exponents.len());
        let mut dim = 1usize;
        for &r in &exponents {
            strides.push(dim);
            dim = dim
                .checked_mul(r as usize)
                .filter(|&d| d <= MAX_MODEL_DIM)
                .ok_or_else(|| Error::InvalidModel(format!("ring dimension exceeds {MAX_MODEL_DIM}")))?;
        }
        let period = exponents.iter().fold(1u32, |acc, &r| acc.lcm(&r));
        Ok(MonomialModel {
            field: CyclotomicField::new(period)?,
            exponents,
            strides,
            dim,
        })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// `Π rᵢ`, the `C`-dimension of the ring.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N = lcm(rᵢ)`, the order of σ.
    pub fn period(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn index_of(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.exponents)
            .zip(&self.strides)
            .map(|((&k, &r), &s)| (k % r) as usize * s)
            .sum()
    }

    pub fn exponents_of(&self, index: usize) -> Vec<u32> {
        self.exponents
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| ((index / s) % r as usize) as u32)
            .collect()
    }

    pub fn zero(&self) -> ModelElement {
        ModelElement(vec![self.field.zero(); self.dim])
    }

    pub fn constant(&self, c: CycNum) -> ModelElement {
        self.monomial(c, &vec![0; self.num_vars()])
    }

    pub fn one(&self) -> ModelElement {
        self.constant(self.field.one())
    }

    /// `c·y^k`
    pub fn monomial(&self, c: CycNum, exps: &[u32]) -> ModelElement {
        let mut e = self.zero();
        e.0[self.index_of(exps)] = c;
        e
    }

    pub fn var(&self, i: usize) -> ModelElement {
        let mut exps = vec![0; self.num_vars()];
        exps[i] = 1;
        self.monomial(self.field.one(), &exps)
    }

    pub fn add(&self, a: &ModelElement, b: &ModelElement) -> ModelElement {
        ModelElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &ModelElement, b: &ModelElement) -> ModelElement {
        ModelElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.sub(x, y)).collect())
    }

    pub fn scale(&self, a: &ModelElement, c: &CycNum) -> ModelElement {
        ModelElement(a.0.iter().map(|x| self.field.mul(x, c)).collect())
    }

    /// Index of `y^{k+l}` from the indices of `y^k` and `y^l`.
    pub fn index_product(&self, i: usize, j: usize) -> usize {
        let (a, b) = (self.exponents_of(i), self.exponents_of(j));
        let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        self.index_of(&sum)
    }

    pub fn mul(&self, a: &ModelElement, b: &ModelElement) -> ModelElement {
        let mut out = self.zero();
        for (i, x) in a.0.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.0.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let k = self.index_product(i, j);
                out.0[k] = self.field.add(&out.0[k], &self.field.mul(x, y));
            }
        }
        out
    }

    pub fn pow(&self, a: &ModelElement, exp: u32) -> ModelElement {
        (0..exp).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// The exponent `w` with `σ(y^k) = ζ_N^w·y^k`.
    pub fn sigma_weight(&self, index: usize) -> u32 {
        let n = self.period();
        self.exponents_of(index)
            .iter()
            .zip(&self.exponents)
            .map(|(&k, &r)| k * (n / r))
            .sum::<u32>()
            % n
    }

    /// σᵗ, acting diagonally on the monomial basis.
    pub fn sigma_pow(&self, a: &ModelElement, t: u32) -> ModelElement {
        ModelElement(
            a.0.iter()
                .enumerate()
                .map(|(k, c)| {
                    let w = self.sigma_weight(k) as i64 * t as i64;
                    self.field.mul(c, &self.field.zeta_pow(w))
                })
                .collect(),
        )
    }

    pub fn sigma(&self, a: &ModelElement) -> ModelElement {
        self.sigma_pow(a, 1)
    }

    /// δ is the zero derivation on the model.
    pub fn delta(&self, _a: &ModelElement) -> ModelElement {
        self.zero()
    }

    /// Primitive idempotent `e_j` of `C[y]/(yʳ − 1)`:
    /// `(1/r)·Σ_k ζ_r^{−jk} yᵏ` with `ζ_r = ζ_N^{N/r}`, as coefficients.
    fn factor_idempotent(&self, var: usize, j: u32) -> Vec<CycNum> {
        let r = self.exponents[var];
        let step = (self.period() / r) as i64;
        let inv_r = rational(1, r as i64);
        (0..r)
            .map(|k| {
                let z = self.field.zeta_pow(-step * j as i64 * k as i64);
                self.field.scale(&z, &inv_r)
            })
            .collect()
    }

    /// Labels `(j₁, …, j_m)` of the primitive idempotents, mixed-radix
    /// ordered like the monomial basis.
    pub fn idempotent_labels(&self) -> Vec<Vec<u32>> {
        (0..self.dim).map(|i| self.exponents_of(i)).collect()
    }

    /// `e_{j₁…j_m} = Π_i e^{(i)}_{jᵢ}`, all primitive idempotents in label
    /// order.
    pub fn primitive_idempotents(&self) -> Vec<ModelElement> {
        self.idempotent_labels()
            .iter()
            .map(|label| {
                let factors: Vec<Vec<CycNum>> = label
                    .iter()
                    .enumerate()
                    .map(|(var, &j)| self.factor_idempotent(var, j))
                    .collect();
                let coeffs = (0..self.dim)
                    .map(|idx| {
                        let exps = self.exponents_of(idx);
                        exps.iter().enumerate().fold(self.field.one(), |acc, (var, &k)| {
                            self.field.mul(&acc, &factors[var][k as usize])
                        })
                    })
                    .collect();
                ModelElement(coeffs)
            })
            .collect()
    }

    /// Renders as a polynomial in `y` (one variable) or `y1, …, y_m`.
    pub fn render(&self, a: &ModelElement) -> String {
        let name = |i: usize| {
            if self.num_vars() == 1 {
                "y".to_string()
            } else {
                format!("y{}", i + 1)
            }
        };
        let mut terms = Vec::new();
        for (idx, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono: Vec<String> = self
                .exponents_of(idx)
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{k}", name(i)) })
                .collect();
            let coeff = self.field.render(c);
            let simple = c.as_poly().degree() == Some(0);
            terms.push(match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                (false, _) if simple => format!("{coeff}*{}", mono.join("*")),
                (false, _) => format!("({coeff})*{}", mono.join("*")),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            crate::arith::poly::join_signed(&terms)
        }
    }
}

/// Rank over `C` of a list of vectors, by Gaussian elimination.
pub fn rank(field: &CyclotomicField, rows: &[Vec<CycNum>]) -> usize {
    let mut rows: Vec<Vec<CycNum>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = field.mul(&rows[i][col], &pivot_inv);
            let (head, tail) = rows.split_at_mut(i);
            for (target, source) in tail[0][col..cols].iter_mut().zip(&head[rank][col..cols]) {
                *target = field.sub(target, &field.mul(&f, source));
            }
        }
        rank += 1;
    }
    rank
}

/// σ-orbit structure of the primitive idempotents of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub exponents: Vec<u32>,
    /// Length of the σ-orbit of `e₀`; the number of components when the
    /// orbit is single.
    pub l: usize,
    pub idempotent_count: usize,
    pub single_orbit: bool,
    /// Indices into the idempotent list, each orbit in σ-order.
    pub orbits: Vec<Vec<usize>>,
    /// The orbit of `e₀` in σ-order, rendered.
    pub orbit: Vec<String>,
    /// `σ(e_{(k)}) = e_{(k+1)}` cyclically along every orbit.
    pub sigma_cycles: bool,
    /// Per idempotent: least `t ≥ 1` with `σᵗ(e) = e`.
    pub least_fixing_power: Vec<usize>,
    /// Per idempotent: `σˡ(e) = e`.
    pub fixed_by_sigma_l: Vec<bool>,
    /// Per idempotent: `e·R` is a field (here: one-dimensional over `C`).
    pub component_is_field: Vec<bool>,
    /// `e² = e`, pairwise orthogonal, summing to 1.
    pub idempotent_axioms: bool,
    /// Order of σ computed from the roots of unity directly: the lcm of the
    /// multiplicative orders of `ζ_N^{N/rᵢ}`.
    pub root_order: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_order: Option<usize>,
}

fn idempotent_axioms(model: &MonomialModel, es: &[ModelElement]) -> bool {
    let squares = es.iter().all(|e| model.mul(e, e) == *e);
    let orthogonal = es
        .iter()
        .enumerate()
        .all(|(i, a)| es[i + 1..].iter().all(|b| model.mul(a, b).is_zero()));
    let total = es.iter().fold(model.zero(), |acc, e| model.add(&acc, e));
    squares && orthogonal && total == model.one()
}

/// Dimension over `C` of `e·R`.
pub fn component_dim(model: &MonomialModel, e: &ModelElement) -> usize {
    let span: Vec<Vec<CycNum>> = (0..model.dim())
        .map(|k| {
            model
                .mul(e, &model.monomial(model.field().one(), &model.exponents_of(k)))
                .0
        })
        .collect();
    rank(model.field(), &span)
}

/// Groups the primitive idempotents into σ-orbits by brute force.
pub fn sigma_orbits(model: &MonomialModel, limits: &Limits) -> Result<DecompositionReport> {
    let es = model.primitive_idempotents();
    let images: Vec<usize> = es
        .iter()
        .map(|e| {
            let s = model.sigma(e);
            es.iter()
                .position(|f| *f == s)
                .ok_or_else(|| Error::InvalidModel("σ does not permute the primitive idempotents".into()))
        })
        .collect::<Result<_>>()?;

    let mut seen = vec![false; es.len()];
    let mut orbits = Vec::new();
    for start in 0..es.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut k = images[start];
        while k != start {
            seen[k] = true;
            orbit.push(k);
            k = images[k];
        }
        orbits.push(orbit);
    }
    let l = orbits[0].len();

    // Independent check of the cycle structure with σ applied afresh.
    let sigma_cycles = orbits.iter().all(|orbit| {
        orbit
            .iter()
            .enumerate()
            .all(|(pos, &i)| model.sigma(&es[i]) == es[orbit[(pos + 1) % orbit.len()]])
    });
    let least_fixing_power = es
        .iter()
        .map(|e| {
            let mut t = 1;
            let mut cur = model.sigma(e);
            while cur != *e {
                cur = model.sigma(&cur);
                t += 1;
            }
            t
        })
        .collect();
    let fixed_by_sigma_l = es.iter().map(|e| model.sigma_pow(e, l as u32) == *e).collect();
    let component_is_field = es.iter().map(|e| component_dim(model, e) == 1).collect();

    let field = model.field();
    let n = model.period();
    let root_order = model.exponents().iter().fold(1u32, |acc, &r| {
        let order = field
            .multiplicative_order(&field.zeta_pow((n / r) as i64))
            .expect("a root of unity");
        acc.lcm(&order)
    });

    let (group_order, kernel_order) = match super::automorphisms::enumerate_automorphisms(model, limits) {
        Ok(group) => {
            let kernel = group
                .elements()
                .iter()
                .filter(|g| es.iter().all(|e| model.apply(g, e) == *e))
                .count();
            (Some(group.order()), Some(kernel))
        }
        Err(Error::OrderLimit { .. }) => (None, None),
        Err(e) => return Err(e),
    };

    Ok(DecompositionReport {
        exponents: model.exponents().to_vec(),
        l,
        idempotent_count: es.len(),
        single_orbit: orbits.len() == 1,
        orbit: orbits[0].iter().map(|&i| model.render(&es[i])).collect(),
        orbits,
        sigma_cycles,
        least_fixing_power,
        fixed_by_sigma_l,
        component_is_field,
        idempotent_axioms: idempotent_axioms(model, &es),
        root_order,
        group_order,
        kernel_order,
    })
}

pub fn primitive_idempotents(model: &MonomialModel) -> Vec<ModelElement> {
    model.primitive_idempotents()
}
