//! Group actions on polynomial algebras by algebra automorphisms.
//!
//! An action stores, for every group element g and variable v, the image
//! polynomial (v)g. Actions are right actions: act(act(f, g), h) = act(f, gh).
//! The full action law is verified exhaustively at construction, so every
//! `AlgebraAction` in circulation is valid.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;
use crate::field::PrimeField;
use crate::group::{GroupTable, Subgroup};
use crate::linalg::Matrix;
use crate::poly::Polynomial;

#[derive(Debug, Clone)]
pub struct AlgebraAction {
    field: PrimeField,
    vars: Vec<String>,
    group: Arc<GroupTable>,
    // images[g][v] = (v)g
    images: Vec<Vec<Polynomial>>,
    graded: bool,
}

impl AlgebraAction {
    /// Build from generator images by composing substitutions along each
    /// element's generator word, then validate the whole table.
    pub fn make_action(
        field: PrimeField,
        vars: Vec<String>,
        group: Arc<GroupTable>,
        generator_images: &[Vec<Polynomial>],
    ) -> Result<Self, Error> {
        if generator_images.len() != group.num_gens() {
            return Err(Error::GeneratorCount {
                expected: group.num_gens(),
                got: generator_images.len(),
            });
        }
        let n = vars.len();
        let mut gen_maps = Vec::with_capacity(generator_images.len());
        for imgs in generator_images {
            if imgs.len() != n {
                return Err(Error::ImageCount {
                    expected: n,
                    got: imgs.len(),
                });
            }
            let mut map = BTreeMap::new();
            for (v, img) in imgs.iter().enumerate() {
                if let Some(mv) = img.max_var() {
                    if mv >= n {
                        return Err(Error::VariableRange(mv));
                    }
                }
                map.insert(v, img.clone());
            }
            gen_maps.push(map);
        }
        let mut images = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut imgs = Vec::with_capacity(n);
            for v in 0..n {
                let mut img = Polynomial::var(field, v);
                for &letter in group.gen_word(g) {
                    img = img.substitute(&gen_maps[letter])?;
                }
                imgs.push(img);
            }
            images.push(imgs);
        }
        AlgebraAction::from_element_images(field, vars, group, images)
    }

    /// Build from a complete per-element image table and validate it.
    pub fn from_element_images(
        field: PrimeField,
        vars: Vec<String>,
        group: Arc<GroupTable>,
        images: Vec<Vec<Polynomial>>,
    ) -> Result<Self, Error> {
        let n = vars.len();
        {
            let mut sorted = vars.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::Invalid("duplicate variable names".to_string()));
            }
        }
        if images.len() != group.order() {
            return Err(Error::GeneratorCount {
                expected: group.order(),
                got: images.len(),
            });
        }
        for imgs in &images {
            if imgs.len() != n {
                return Err(Error::ImageCount {
                    expected: n,
                    got: imgs.len(),
                });
            }
            for img in imgs {
                if let Some(mv) = img.max_var() {
                    if mv >= n {
                        return Err(Error::VariableRange(mv));
                    }
                }
            }
        }
        for v in 0..n {
            if images[0][v] != Polynomial::var(field, v) {
                return Err(Error::IdentityAction(v));
            }
        }
        let maps: Vec<BTreeMap<usize, Polynomial>> = images
            .iter()
            .map(|imgs| imgs.iter().cloned().enumerate().collect())
            .collect();
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mult(g, h);
                for v in 0..n {
                    let composed = images[g][v].substitute(&maps[h])?;
                    if composed != images[gh][v] {
                        return Err(Error::ActionLaw { g, h, var: v });
                    }
                }
            }
        }
        let graded = images.iter().flatten().all(|img| {
            img.is_homogeneous() && img.degree() == Some(1)
        });
        Ok(AlgebraAction {
            field,
            vars,
            group,
            images,
            graded,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn image(&self, g: usize, v: usize) -> &Polynomial {
        &self.images[g][v]
    }

    pub fn subst_map(&self, g: usize) -> BTreeMap<usize, Polynomial> {
        self.images[g].iter().cloned().enumerate().collect()
    }

    /// Every variable image has degree at most one, so the total-degree
    /// filtration is preserved.
    pub fn is_filtration_preserving(&self) -> bool {
        self.images
            .iter()
            .flatten()
            .all(|img| img.degree().unwrap_or(0) <= 1)
    }

    pub fn act(&self, f: &Polynomial, g: usize) -> Result<Polynomial, Error> {
        if let Some(mv) = f.max_var() {
            if mv >= self.num_vars() {
                return Err(Error::VariableRange(mv));
            }
        }
        f.substitute(&self.subst_map(g))
    }

    /// For a graded action, the matrix of g on the degree-1 span:
    /// act(x_v, g) = Σ_w M[v][w]·x_w, so M(g)·M(h) = M(gh).
    pub fn degree_one_matrix(&self, g: usize) -> Result<Matrix, Error> {
        if !self.graded {
            return Err(Error::NotGraded);
        }
        let n = self.num_vars();
        let mut m = Matrix::zero(self.field, n, n);
        for v in 0..n {
            for (mono, c) in self.images[g][v].terms() {
                let w = mono.max_var().unwrap();
                m.set(v, w, c);
            }
        }
        Ok(m)
    }

    /// The generator elements, in letter order. For permutation-built groups
    /// these are the declared generators; for table groups, every
    /// non-identity element.
    pub fn generator_elements(&self) -> Vec<usize> {
        (0..self.group.num_gens())
            .map(|letter| {
                self.group
                    .generator_element(letter)
                    .expect("generator word missing")
            })
            .collect()
    }
}

/// Variables x1..xn with (x_i)g = Σ_j M[g]_{ij}·x_j, one matrix per
/// generator.
pub fn linear_action(
    field: PrimeField,
    group: Arc<GroupTable>,
    matrices: &[Matrix],
) -> Result<AlgebraAction, Error> {
    let n = matrices.first().map_or(0, |m| m.rows);
    let vars: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
    let mut generator_images = Vec::with_capacity(matrices.len());
    for m in matrices {
        if m.rows != n || m.cols != n {
            return Err(Error::MatrixShape("generator matrices differ in size".to_string()));
        }
        let mut imgs = Vec::with_capacity(n);
        for i in 0..n {
            let mut img = Polynomial::zero(field);
            for j in 0..n {
                img = img.add(&Polynomial::var(field, j).scale(m.get(i, j)));
            }
            imgs.push(img);
        }
        generator_images.push(imgs);
    }
    AlgebraAction::make_action(field, vars, group, &generator_images)
}

/// The graded action on Sym of the dual regular module: one variable X_g per
/// group element, permuted by right translation.
pub fn regular_linear_action(
    group: Arc<GroupTable>,
    field: PrimeField,
) -> Result<AlgebraAction, Error> {
    let n = group.order();
    let vars: Vec<String> = (0..n).map(|g| format!("X{}", g)).collect();
    let images: Vec<Vec<Polynomial>> = group
        .elements()
        .map(|h| {
            (0..n)
                .map(|g| Polynomial::var(field, group.mult(g, h)))
                .collect()
        })
        .collect();
    AlgebraAction::from_element_images(field, vars, group, images)
}

/// The dehomogenized regular algebra: variables y_g for g ≠ e, with the
/// eliminated slot represented as 1 − Σ_{g≠e} y_g.
pub fn d_reg(group: Arc<GroupTable>, field: PrimeField) -> Result<AlgebraAction, Error> {
    let n = group.order();
    let vars: Vec<String> = (1..n).map(|g| format!("y{}", g)).collect();
    let wrap = {
        let mut w = Polynomial::one(field);
        for v in 0..n - 1 {
            w = w.sub(&Polynomial::var(field, v));
        }
        w
    };
    let images: Vec<Vec<Polynomial>> = group
        .elements()
        .map(|h| {
            (1..n)
                .map(|g| {
                    let gh = group.mult(g, h);
                    if gh == 0 {
                        wrap.clone()
                    } else {
                        Polynomial::var(field, gh - 1)
                    }
                })
                .collect()
        })
        .collect();
    AlgebraAction::from_element_images(field, vars, group, images)
}

/// Quotient by (x − 1) for a degree-one invariant x of a graded action.
/// The variable of largest index in x's support is eliminated.
pub fn dehomogenize(a: &AlgebraAction, x: &Polynomial) -> Result<AlgebraAction, Error> {
    if !a.is_graded() {
        return Err(Error::NotGraded);
    }
    if x.is_zero() || !x.is_homogeneous() || x.degree() != Some(1) {
        return Err(Error::BadDehomogenizer);
    }
    for g in a.group().elements() {
        if &a.act(x, g)? != x {
            return Err(Error::NotInvariant(g));
        }
    }
    let field = a.field();
    let elim = x.max_var().unwrap();
    let c = x.coeff(&crate::poly::Monomial::var(elim));
    let c_inv = field.inv(c)?;
    let n = a.num_vars();
    let new_index = |old: usize| if old < elim { old } else { old - 1 };
    // elim := c^{-1}(1 - (x - c*elim)), written in the new indexing
    let elim_expr = {
        let mut rest = Polynomial::one(field);
        for (mono, coeff) in x.terms() {
            let v = mono.max_var().unwrap();
            if v != elim {
                rest = rest.sub(&Polynomial::var(field, new_index(v)).scale(coeff));
            }
        }
        rest.scale(c_inv)
    };
    let mut remap: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for old in 0..n {
        if old == elim {
            remap.insert(old, elim_expr.clone());
        } else {
            remap.insert(old, Polynomial::var(field, new_index(old)));
        }
    }
    let new_vars: Vec<String> = (0..n)
        .filter(|&v| v != elim)
        .map(|v| a.vars()[v].clone())
        .collect();
    let images: Vec<Vec<Polynomial>> = a
        .group()
        .elements()
        .map(|g| {
            (0..n)
                .filter(|&v| v != elim)
                .map(|v| a.image(g, v).substitute(&remap))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    AlgebraAction::from_element_images(field, new_vars, a.group().clone(), images)
}

/// The same algebra with only the subgroup acting, on the subgroup's own
/// table. Returns the restricted action and the local-to-parent element map.
pub fn restrict_action(
    a: &AlgebraAction,
    h: &Subgroup,
) -> Result<(AlgebraAction, Vec<usize>), Error> {
    let (local, to_parent) = h.to_group_table()?;
    let images: Vec<Vec<Polynomial>> = to_parent
        .iter()
        .map(|&e| (0..a.num_vars()).map(|v| a.image(e, v).clone()).collect())
        .collect();
    let action =
        AlgebraAction::from_element_images(a.field(), a.vars().to_vec(), local, images)?;
    Ok((action, to_parent))
}

#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    source: Arc<AlgebraAction>,
    target: Arc<AlgebraAction>,
    var_images: Vec<Polynomial>,
}

impl AlgebraMorphism {
    pub fn new(
        source: Arc<AlgebraAction>,
        target: Arc<AlgebraAction>,
        var_images: Vec<Polynomial>,
    ) -> Result<Self, Error> {
        if source.field() != target.field()
            || !source.group().same_multiplication(target.group())
        {
            return Err(Error::MorphismMismatch);
        }
        if var_images.len() != source.num_vars() {
            return Err(Error::ImageCount {
                expected: source.num_vars(),
                got: var_images.len(),
            });
        }
        for img in &var_images {
            if let Some(mv) = img.max_var() {
                if mv >= target.num_vars() {
                    return Err(Error::VariableRange(mv));
                }
            }
        }
        Ok(AlgebraMorphism {
            source,
            target,
            var_images,
        })
    }

    pub fn source(&self) -> &Arc<AlgebraAction> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraAction> {
        &self.target
    }

    pub fn var_images(&self) -> &[Polynomial] {
        &self.var_images
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, Error> {
        let map: BTreeMap<usize, Polynomial> =
            self.var_images.iter().cloned().enumerate().collect();
        f.substitute(&map)
    }

    /// Equivariance on generators suffices: both sides are algebra maps and
    /// the generators produce the whole group.
    pub fn is_equivariant(&self) -> Result<bool, Error> {
        for g in self.source.generator_elements() {
            for v in 0..self.source.num_vars() {
                let lhs = self.apply(self.source.image(g, v))?;
                let rhs = self.target.act(&self.var_images[v], g)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The matrix of the degree-1 truncation: row v holds the linear
    /// component of the image of source variable v.
    pub fn linear_part(&self) -> Result<Matrix, Error> {
        if !self.source.is_graded() || !self.target.is_graded() {
            return Err(Error::NotGraded);
        }
        let rows = self.source.num_vars();
        let cols = self.target.num_vars();
        let mut m = Matrix::zero(self.source.field(), rows, cols);
        for v in 0..rows {
            for (mono, c) in self.var_images[v].graded_component(1).terms() {
                m.set(v, mono.max_var().unwrap(), c);
            }
        }
        Ok(m)
    }
}
