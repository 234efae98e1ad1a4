//! Ring automorphisms of a monomial model that fix `C` and commute with σ
//! and δ, and the exact sequence
//! `0 → Aut(component) → ℍ → ℤ/lℤ → 0` checked by enumeration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::structure::cyclotomic::CycNum;
use crate::structure::model::{component_dim, rank, ModelElement, MonomialModel};
use crate::Limits;

/// `y_i ↦ ζ_N^{root}·y^{exponents}` for every variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialImage {
    pub root: u32,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<MonomialImage>,
}

impl Automorphism {
    pub fn images(&self) -> &[MonomialImage] {
        &self.images
    }
}

impl MonomialModel {
    /// Image of the basis monomial `y^k` (by index) as `(root, index)`.
    fn image_of_basis(&self, g: &Automorphism, index: usize) -> (u32, usize) {
        let n = self.period();
        let mut root = 0u32;
        let mut exps = vec![0u32; self.num_vars()];
        for (img, &k) in g.images.iter().zip(&self.exponents_of(index)) {
            root = (root + img.root * k) % n;
            for (e, &f) in exps.iter_mut().zip(&img.exponents) {
                *e += f * k;
            }
        }
        (root, self.index_of(&exps))
    }

    /// Applies the ring endomorphism determined by `g` on the generators.
    pub fn apply(&self, g: &Automorphism, a: &ModelElement) -> ModelElement {
        let field = self.field();
        let mut out = self.zero();
        for (k, c) in a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (root, idx) = self.image_of_basis(g, k);
            let term = self.monomial(field.mul(c, &field.zeta_pow(root as i64)), &self.exponents_of(idx));
            out = self.add(&out, &term);
        }
        out
    }

    fn compose(&self, g: &Automorphism, h: &Automorphism) -> Automorphism {
        let n = self.period();
        let images = h
            .images
            .iter()
            .map(|img| {
                let (root, idx) = self.image_of_basis(g, self.index_of(&img.exponents));
                MonomialImage {
                    root: (root + img.root) % n,
                    exponents: self.exponents_of(idx),
                }
            })
            .collect();
        Automorphism { images }
    }

    fn identity_automorphism(&self) -> Automorphism {
        Automorphism {
            images: (0..self.num_vars())
                .map(|i| {
                    let unit: Vec<u32> = (0..self.num_vars()).map(|j| u32::from(i == j)).collect();
                    MonomialImage {
                        root: 0,
                        exponents: self.exponents_of(self.index_of(&unit)),
                    }
                })
                .collect(),
        }
    }
}

/// A finite group given by its elements and Cayley table.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    elements: Vec<Automorphism>,
    /// `table[a][b]` is the index of `a ∘ b`.
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl AutomorphismGroup {
    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != self.identity {
            cur = self.table[cur][a];
            k += 1;
        }
        k
    }

    /// An element generating the whole group, if it is cyclic.
    pub fn generator(&self) -> Option<usize> {
        (0..self.order()).find(|&a| self.element_order(a) == self.order())
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Candidate images of `y_i`: scaled monomials `u = c·y^e` with
/// `u^{rᵢ} = 1` and `σ(u) = ζ_{rᵢ}·u`, checked in the model.
fn generator_images(model: &MonomialModel, var: usize) -> Vec<MonomialImage> {
    let field = model.field();
    let n = model.period();
    let r = model.exponents()[var];
    let eigenvalue = field.zeta_pow((n / r) as i64);
    let one = model.one();
    let mut out = Vec::new();
    for idx in 0..model.dim() {
        for root in 0..n {
            let u = model.monomial(field.zeta_pow(root as i64), &model.exponents_of(idx));
            if model.pow(&u, r) == one && model.sigma(&u) == model.scale(&u, &eigenvalue) {
                out.push(MonomialImage {
                    root,
                    exponents: model.exponents_of(idx),
                });
            }
        }
    }
    out
}

/// Full rank of the images of the monomial basis.
fn is_bijective(model: &MonomialModel, g: &Automorphism) -> bool {
    let rows: Vec<Vec<CycNum>> = (0..model.dim())
        .map(|k| {
            let basis = model.monomial(model.field().one(), &model.exponents_of(k));
            model.apply(g, &basis).coeffs().to_vec()
        })
        .collect();
    rank(model.field(), &rows) == model.dim()
}

fn commutes_with_sigma(model: &MonomialModel, g: &Automorphism) -> bool {
    (0..model.dim()).all(|k| {
        let b = model.monomial(model.field().one(), &model.exponents_of(k));
        model.apply(g, &model.sigma(&b)) == model.sigma(&model.apply(g, &b))
    })
}

/// Enumerates the automorphisms with monomial generator images (every
/// automorphism, for one variable) and builds the Cayley table.
///
/// Fails with [`Error::OrderLimit`] when more than
/// `limits.max_group_order` automorphisms are found.
pub fn enumerate_automorphisms(model: &MonomialModel, limits: &Limits) -> Result<AutomorphismGroup> {
    let candidates: Vec<Vec<MonomialImage>> = (0..model.num_vars()).map(|i| generator_images(model, i)).collect();
    let mut elements = Vec::new();
    let mut choice = vec![0usize; candidates.len()];
    if candidates.iter().all(|c| !c.is_empty()) {
        loop {
            let g = Automorphism {
                images: choice
                    .iter()
                    .zip(&candidates)
                    .map(|(&c, list)| list[c].clone())
                    .collect(),
            };
            // δ = 0 on the model, so commuting with δ is automatic.
            if is_bijective(model, &g) && commutes_with_sigma(model, &g) {
                elements.push(g);
                if elements.len() > limits.max_group_order {
                    return Err(Error::OrderLimit {
                        requested: elements.len(),
                        max: limits.max_group_order,
                    });
                }
            }
            // Mixed-radix increment over the candidate lists.
            let mut pos = 0;
            while pos < choice.len() {
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }

    let identity_map = model.identity_automorphism();
    let identity = elements
        .iter()
        .position(|g| *g == identity_map)
        .ok_or_else(|| Error::InvalidModel("the identity was not enumerated".into()))?;
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let ab = model.compose(a, b);
                    elements
                        .iter()
                        .position(|g| *g == ab)
                        .ok_or_else(|| Error::InvalidModel("automorphisms are not closed under composition".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AutomorphismGroup {
        elements,
        table,
        identity,
    })
}

/// Serializable summary of an [`AutomorphismGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDescription {
    pub order: usize,
    /// Generator images, e.g. `y -> zeta^3*y`.
    pub elements: Vec<Vec<String>>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub abelian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<usize>,
}

pub fn describe(model: &MonomialModel, group: &AutomorphismGroup) -> GroupDescription {
    let elements = group
        .elements
        .iter()
        .map(|g| {
            (0..model.num_vars())
                .map(|i| {
                    let source = model.render(&model.var(i));
                    let image = model.apply(g, &model.var(i));
                    format!("{source} -> {}", model.render(&image))
                })
                .collect()
        })
        .collect();
    GroupDescription {
        order: group.order(),
        elements,
        table: group.table.clone(),
        identity: group.identity,
        abelian: group.is_abelian(),
        generator: group.generator(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub exact: bool,
    pub l: usize,
    pub group_order: usize,
    pub kernel_order: usize,
    /// Order of the automorphism group of the component `e₀·R` over `C`
    /// commuting with `σˡ`.
    pub component_group_order: usize,
    /// `Δ(g)` for every group element, in enumeration order.
    pub shifts: Vec<usize>,
    pub morphism: bool,
    pub surjective: bool,
    pub kernel_preserves_components: bool,
    pub kernel_matches_component_group: bool,
    pub order_identity: bool,
}

/// Checks `0 → Aut(e₀R) → ℍ → ℤ/lℤ → 0` exhaustively, where `ℍ` is the
/// automorphism group and `Δ(g)` is the cyclic shift `g` induces on the
/// σ-orbit `e₀, σ(e₀), …, σ^{l−1}(e₀)`.
pub fn exact_sequence_check(model: &MonomialModel, limits: &Limits) -> Result<ExactSequenceReport> {
    let es = model.primitive_idempotents();
    let e0 = es[0].clone();
    let mut orbit = vec![e0.clone()];
    loop {
        let next = model.sigma(orbit.last().expect("nonempty"));
        if next == e0 {
            break;
        }
        orbit.push(next);
    }
    let l = orbit.len();
    if l != es.len() {
        return Err(Error::InvalidModel(format!(
            "σ has {} orbits on the primitive idempotents; a single orbit is required",
            es.len() / l
        )));
    }

    let group = enumerate_automorphisms(model, limits)?;
    // Δ(g): the k with g(σʲe₀) = σ^{j+k}e₀ for every j.
    let mut shifts = Vec::with_capacity(group.order());
    let mut consistent = true;
    for g in group.elements() {
        let image = model.apply(g, &e0);
        let k = orbit
            .iter()
            .position(|f| *f == image)
            .ok_or_else(|| Error::InvalidModel("an automorphism leaves the idempotent orbit".into()))?;
        consistent &= (0..l).all(|j| model.apply(g, &orbit[j]) == orbit[(j + k) % l]);
        shifts.push(k);
    }

    let n = group.order();
    let morphism =
        consistent && (0..n).all(|a| (0..n).all(|b| shifts[group.table()[a][b]] == (shifts[a] + shifts[b]) % l));
    let mut hit = vec![false; l];
    for &k in &shifts {
        hit[k] = true;
    }
    let surjective = hit.iter().all(|&h| h);

    let kernel: Vec<usize> = (0..n).filter(|&a| shifts[a] == 0).collect();
    let kernel_preserves_components = (0..n).all(|a| {
        let preserves = orbit.iter().all(|f| model.apply(&group.elements()[a], f) == *f);
        preserves == (shifts[a] == 0)
    });

    // The component e₀R is split over C, so when it is one-dimensional its
    // only C-automorphism is the identity.
    let component_dimension = component_dim(model, &e0);
    if component_dimension != 1 {
        return Err(Error::InvalidModel(format!(
            "component of dimension {component_dimension} is not a copy of the constants"
        )));
    }
    let component_group_order = 1;
    let restrictions_trivial = kernel.iter().all(|&a| {
        (0..model.dim()).all(|k| {
            let v = model.mul(&e0, &model.monomial(model.field().one(), &model.exponents_of(k)));
            model.apply(&group.elements()[a], &v) == v
        })
    });
    let kernel_matches_component_group = restrictions_trivial && kernel.len() == component_group_order;
    let order_identity = n == kernel.len() * l;

    Ok(ExactSequenceReport {
        exact: morphism
            && surjective
            && kernel_preserves_components
            && kernel_matches_component_group
            && order_identity,
        l,
        group_order: n,
        kernel_order: kernel.len(),
        component_group_order,
        shifts,
        morphism,
        surjective,
        kernel_preserves_components,
        kernel_matches_component_group,
        order_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(r: &[u32]) -> MonomialModel {
        MonomialModel::new(r.to_vec()).unwrap()
    }

    #[test]
    fn groups() {
        let limits = Limits::default();
        let g1 = enumerate_automorphisms(&model(&[1]), &limits).unwrap();
        assert_eq!(g1.order(), 1);
        let m2 = model(&[2]);
        let g2 = enumerate_automorphisms(&m2, &limits).unwrap();
        let d = describe(&m2, &g2);
        assert_eq!(d.elements, [["y -> y"], ["y -> -y"]]);
        let g6 = enumerate_automorphisms(&model(&[6]), &limits).unwrap();
        assert_eq!(g6.order(), 6);
        assert!(g6.generator().is_some() && g6.is_abelian());
        let small = Limits {
            max_group_order: 4,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_automorphisms(&model(&[6]), &small),
            Err(Error::OrderLimit { .. })
        ));
    }

    #[test]
    fn sequences() {
        let limits = Limits::default();
        for r in [1, 2, 3, 4, 6] {
            let rep = exact_sequence_check(&model(&[r]), &limits).unwrap();
            assert!(rep.exact, "r = {r}: {rep:?}");
            assert_eq!((rep.l, rep.group_order, rep.kernel_order), (r as usize, r as usize, 1));
        }
        // Coprime exponents give a single orbit of length 6.
        let rep = exact_sequence_check(&model(&[2, 3]), &limits).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.l, 6);
        assert!(matches!(
            exact_sequence_check(&model(&[2, 2]), &limits),
            Err(Error::InvalidModel(_))
        ));
    }
}
