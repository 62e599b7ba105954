//! Induction of algebra actions along a subgroup inclusion H ≤ G with a
//! fixed right-coset cross-section R, via the embedding of G into the wreath
//! product H ≀ Σ_R.
//!
//! Tensor induction produces a polynomial G-algebra on |R|·n variables
//! x_{r,v}; product induction produces the |R|-fold tuple algebra with
//! componentwise multiplication. The adjunction maps between the two and the
//! restriction functor are implemented concretely on variable images.
//!
//! Base actions are given on the subgroup's own table (local numbering =
//! sorted parent indices), so "the same algebra seen as an H-algebra" is
//! exactly the output of `restrict_action`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::action::{restrict_action, AlgebraAction, AlgebraMorphism};
use crate::error::Error;
use crate::group::{CrossSection, GroupTable};
use crate::poly::Polynomial;

/// An element (f, σ) of H ≀ Σ_R: one subgroup element per cross-section slot
/// plus a permutation of the slots. `base` holds parent-group indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathElement {
    pub base: Vec<usize>,
    pub perm: Vec<usize>,
}

/// (f1, σ1)·(f2, σ2) = (r ↦ f1(r)·f2(r^{σ1}), σ1 then σ2).
pub fn wreath_mul(group: &GroupTable, a: &WreathElement, b: &WreathElement) -> WreathElement {
    let m = a.base.len();
    let mut base = Vec::with_capacity(m);
    let mut perm = Vec::with_capacity(m);
    for r in 0..m {
        base.push(group.mult(a.base[r], b.base[a.perm[r]]));
        perm.push(b.perm[a.perm[r]]);
    }
    WreathElement { base, perm }
}

pub fn wreath_inv(group: &GroupTable, a: &WreathElement) -> WreathElement {
    let m = a.base.len();
    let mut base = vec![0; m];
    let mut perm = vec![0; m];
    for r in 0..m {
        perm[a.perm[r]] = r;
        base[a.perm[r]] = group.inv(a.base[r]);
    }
    WreathElement { base, perm }
}

/// The image of g under the embedding into H ≀ Σ_R: slot r carries the coset
/// decomposition r·g = base(r)·reps[perm(r)].
pub fn frobenius_embedding(cs: &CrossSection, g: usize) -> WreathElement {
    let m = cs.len();
    let mut base = Vec::with_capacity(m);
    let mut perm = Vec::with_capacity(m);
    for r_pos in 0..m {
        let (h, rp) = cs.coset_data(r_pos, g);
        base.push(h);
        perm.push(rp);
    }
    WreathElement { base, perm }
}

fn check_base_compatible(
    base: &AlgebraAction,
    cs: &CrossSection,
) -> Result<Vec<usize>, Error> {
    let (local, to_parent) = cs.subgroup().to_group_table()?;
    if !base.group().same_multiplication(&local) {
        return Err(Error::GroupMismatch);
    }
    Ok(to_parent)
}

/// Index of the variable x_{r,v} in an induced algebra over an n-variable
/// base.
pub fn slot_var(n: usize, r_pos: usize, v: usize) -> usize {
    r_pos * n + v
}

/// The polynomial G-algebra on variables x_{r,v}; g sends x_{r,v} to the
/// image of v under the H-part of the coset decomposition, placed in the
/// slot the permutation part points at.
pub fn tensor_induce(
    base: &AlgebraAction,
    cs: &CrossSection,
) -> Result<AlgebraAction, Error> {
    let to_parent = check_base_compatible(base, cs)?;
    let local_of = |e: usize| to_parent.binary_search(&e).unwrap();
    let parent = cs.subgroup().parent().clone();
    let field = base.field();
    let n = base.num_vars();
    let m = cs.len();
    let vars: Vec<String> = (0..m)
        .flat_map(|r| {
            base.vars()
                .iter()
                .map(move |v| format!("x{}_{}", r, v))
        })
        .collect();
    let images: Vec<Vec<Polynomial>> = parent
        .elements()
        .map(|g| {
            let mut imgs = Vec::with_capacity(m * n);
            for r_pos in 0..m {
                let (h, rp) = cs.coset_data(r_pos, g);
                let h_local = local_of(h);
                let rename: BTreeMap<usize, Polynomial> = (0..n)
                    .map(|u| (u, Polynomial::var(field, slot_var(n, rp, u))))
                    .collect();
                for v in 0..n {
                    imgs.push(base.image(h_local, v).substitute(&rename)?);
                }
            }
            Ok(imgs)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    AlgebraAction::from_element_images(field, vars, parent, images)
}

/// The |R|-tuple algebra with componentwise multiplication and the twisted
/// permutation action of the parent group.
#[derive(Debug, Clone)]
pub struct TupleAlgebra {
    base: Arc<AlgebraAction>,
    section: CrossSection,
    to_parent: Vec<usize>,
}

impl TupleAlgebra {
    pub fn new(base: Arc<AlgebraAction>, section: CrossSection) -> Result<Self, Error> {
        let to_parent = check_base_compatible(&base, &section)?;
        let out = TupleAlgebra {
            base,
            section,
            to_parent,
        };
        // action law on single-variable tuples, exhaustively
        let parent = out.section.subgroup().parent().clone();
        for slot in 0..out.components() {
            for v in 0..out.base.num_vars() {
                let mut t = out.zero_tuple();
                t[slot] = Polynomial::var(out.base.field(), v);
                for g in parent.elements() {
                    for h in parent.elements() {
                        let lhs = out.act(&out.act(&t, g)?, h)?;
                        let rhs = out.act(&t, parent.mult(g, h))?;
                        if lhs != rhs {
                            return Err(Error::ActionLaw { g, h, var: v });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn base(&self) -> &Arc<AlgebraAction> {
        &self.base
    }

    pub fn section(&self) -> &CrossSection {
        &self.section
    }

    pub fn components(&self) -> usize {
        self.section.len()
    }

    pub fn zero_tuple(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(self.base.field()); self.components()]
    }

    pub fn unit_tuple(&self) -> Vec<Polynomial> {
        vec![Polynomial::one(self.base.field()); self.components()]
    }

    pub fn const_tuple(&self, a: &Polynomial) -> Vec<Polynomial> {
        vec![a.clone(); self.components()]
    }

    pub fn add(&self, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    pub fn mul(&self, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
        a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
    }

    pub fn scale(&self, a: &[Polynomial], c: u64) -> Vec<Polynomial> {
        a.iter().map(|x| x.scale(c)).collect()
    }

    /// Slot perm(r) of the result receives the base action of the H-part on
    /// slot r.
    pub fn act(&self, t: &[Polynomial], g: usize) -> Result<Vec<Polynomial>, Error> {
        if t.len() != self.components() {
            return Err(Error::ImageCount {
                expected: self.components(),
                got: t.len(),
            });
        }
        let local_of = |e: usize| self.to_parent.binary_search(&e).unwrap();
        let mut out = self.zero_tuple();
        for r_pos in 0..self.components() {
            let (h, rp) = self.section.coset_data(r_pos, g);
            out[rp] = self.base.act(&t[r_pos], local_of(h))?;
        }
        Ok(out)
    }

    /// Full trace over the parent group.
    pub fn trace(&self, t: &[Polynomial]) -> Result<Vec<Polynomial>, Error> {
        let parent = self.section.subgroup().parent();
        let mut acc = self.zero_tuple();
        for g in parent.elements() {
            acc = self.add(&acc, &self.act(t, g)?);
        }
        Ok(acc)
    }
}

pub fn product_induce(
    base: Arc<AlgebraAction>,
    cs: CrossSection,
) -> Result<TupleAlgebra, Error> {
    TupleAlgebra::new(base, cs)
}

/// An algebra map from a parent-group algebra into a tuple algebra, given by
/// one image tuple per source variable.
#[derive(Debug, Clone)]
pub struct TupleMorphism {
    source: Arc<AlgebraAction>,
    target: TupleAlgebra,
    var_images: Vec<Vec<Polynomial>>,
}

impl TupleMorphism {
    pub fn new(
        source: Arc<AlgebraAction>,
        target: TupleAlgebra,
        var_images: Vec<Vec<Polynomial>>,
    ) -> Result<Self, Error> {
        if !source.group().same_multiplication(target.section.subgroup().parent()) {
            return Err(Error::MorphismMismatch);
        }
        if var_images.len() != source.num_vars() {
            return Err(Error::ImageCount {
                expected: source.num_vars(),
                got: var_images.len(),
            });
        }
        for t in &var_images {
            if t.len() != target.components() {
                return Err(Error::ImageCount {
                    expected: target.components(),
                    got: t.len(),
                });
            }
        }
        Ok(TupleMorphism {
            source,
            target,
            var_images,
        })
    }

    pub fn source(&self) -> &Arc<AlgebraAction> {
        &self.source
    }

    pub fn target(&self) -> &TupleAlgebra {
        &self.target
    }

    pub fn var_images(&self) -> &[Vec<Polynomial>] {
        &self.var_images
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Vec<Polynomial>, Error> {
        let mut out = Vec::with_capacity(self.target.components());
        for slot in 0..self.target.components() {
            let map: BTreeMap<usize, Polynomial> = self
                .var_images
                .iter()
                .enumerate()
                .map(|(v, t)| (v, t[slot].clone()))
                .collect();
            out.push(f.substitute(&map)?);
        }
        Ok(out)
    }

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
}

/// Left adjunction: an H-map α: A → res B extends to the G-map
/// Ind^⊗(A) → B with x_{r,v} ↦ (α(v))·r.
pub fn chi_adjunction(
    base: &Arc<AlgebraAction>,
    cs: &CrossSection,
    ind: &Arc<AlgebraAction>,
    b: &Arc<AlgebraAction>,
    alpha: &AlgebraMorphism,
) -> Result<AlgebraMorphism, Error> {
    if !alpha.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    let n = base.num_vars();
    let mut images = Vec::with_capacity(cs.len() * n);
    for r_pos in 0..cs.len() {
        let r = cs.reps()[r_pos];
        for v in 0..n {
            images.push(b.act(&alpha.var_images()[v], r)?);
        }
    }
    let out = AlgebraMorphism::new(ind.clone(), b.clone(), images)?;
    if !out.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    Ok(out)
}

/// Inverse of [`chi_adjunction`]: precompose a G-map Ind^⊗(A) → B with the
/// slot-e embedding, giving back the H-map A → res B.
pub fn iota1_star(
    base: &Arc<AlgebraAction>,
    cs: &CrossSection,
    beta: &AlgebraMorphism,
) -> Result<AlgebraMorphism, Error> {
    let n = base.num_vars();
    let images: Vec<Polynomial> = (0..n)
        .map(|v| beta.var_images()[slot_var(n, 0, v)].clone())
        .collect();
    let (res_b, _) = restrict_action(beta.target(), cs.subgroup())?;
    let out = AlgebraMorphism::new(base.clone(), Arc::new(res_b), images)?;
    if !out.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    Ok(out)
}

/// Right adjunction: an H-map α: res B → A extends to the G-map
/// B → Ind^×(A) with slot r of the image of b equal to α(b·r⁻¹).
pub fn psi_adjunction(
    b: &Arc<AlgebraAction>,
    cs: &CrossSection,
    alpha: &AlgebraMorphism,
) -> Result<TupleMorphism, Error> {
    if !alpha.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    let parent = cs.subgroup().parent().clone();
    let target = TupleAlgebra::new(alpha.target().clone(), cs.clone())?;
    let mut var_images = Vec::with_capacity(b.num_vars());
    for v in 0..b.num_vars() {
        let mut tuple = Vec::with_capacity(cs.len());
        for &r in cs.reps() {
            let moved = b.act(&Polynomial::var(b.field(), v), parent.inv(r))?;
            tuple.push(alpha.apply(&moved)?);
        }
        var_images.push(tuple);
    }
    let out = TupleMorphism::new(b.clone(), target, var_images)?;
    if !out.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    Ok(out)
}

/// Inverse of [`psi_adjunction`]: postcompose with the slot-e projection.
pub fn pi1_star(
    b: &Arc<AlgebraAction>,
    cs: &CrossSection,
    m: &TupleMorphism,
) -> Result<AlgebraMorphism, Error> {
    let images: Vec<Polynomial> = m.var_images().iter().map(|t| t[0].clone()).collect();
    let (res_b, _) = restrict_action(b, cs.subgroup())?;
    let out = AlgebraMorphism::new(Arc::new(res_b), m.target().base().clone(), images)?;
    if !out.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    Ok(out)
}

/// Unit of tensor induction: A → res Ind^⊗(A), v ↦ x_{e,v}.
pub fn tensor_unit(
    base: &Arc<AlgebraAction>,
    cs: &CrossSection,
    ind: &Arc<AlgebraAction>,
) -> Result<AlgebraMorphism, Error> {
    let n = base.num_vars();
    let (res_ind, _) = restrict_action(ind, cs.subgroup())?;
    let images: Vec<Polynomial> = (0..n)
        .map(|v| Polynomial::var(base.field(), slot_var(n, 0, v)))
        .collect();
    let out = AlgebraMorphism::new(base.clone(), Arc::new(res_ind), images)?;
    if !out.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    Ok(out)
}

/// Counit of tensor induction: Ind^⊗(res B) → B, x_{r,w} ↦ w·r.
/// Returns the induced algebra together with the map.
pub fn tensor_counit(
    b: &Arc<AlgebraAction>,
    cs: &CrossSection,
) -> Result<(Arc<AlgebraAction>, AlgebraMorphism), Error> {
    let (res_b, _) = restrict_action(b, cs.subgroup())?;
    let res_b = Arc::new(res_b);
    let ind = Arc::new(tensor_induce(&res_b, cs)?);
    let n = b.num_vars();
    let mut images = Vec::with_capacity(cs.len() * n);
    for &r in cs.reps() {
        for w in 0..n {
            images.push(b.act(&Polynomial::var(b.field(), w), r)?);
        }
    }
    let out = AlgebraMorphism::new(ind.clone(), b.clone(), images)?;
    if !out.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    Ok((ind, out))
}

/// Unit of product induction: B → Ind^×(res B), b ↦ (b·r⁻¹)_r.
pub fn times_unit(b: &Arc<AlgebraAction>, cs: &CrossSection) -> Result<TupleMorphism, Error> {
    let (res_b, _) = restrict_action(b, cs.subgroup())?;
    let alpha = AlgebraMorphism::new(
        Arc::new(res_b.clone()),
        Arc::new(res_b),
        (0..b.num_vars())
            .map(|v| Polynomial::var(b.field(), v))
            .collect(),
    )?;
    psi_adjunction(b, cs, &alpha)
}

/// Counit of product induction: Ind^×(A) → A, the slot-e projection.
pub fn times_counit(t: &[Polynomial]) -> Polynomial {
    t[0].clone()
}

/// The trace of a G-map α: Ind^⊗(A) → Ind^×(A') along the adjunctions: the
/// H-map v ↦ slot-e of α(x_{e,v}).
pub fn f_trace(
    base: &Arc<AlgebraAction>,
    base_prime: &Arc<AlgebraAction>,
    alpha: &TupleMorphism,
) -> Result<AlgebraMorphism, Error> {
    if !alpha.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    let n = base.num_vars();
    let images: Vec<Polynomial> = (0..n)
        .map(|v| alpha.var_images()[slot_var(n, 0, v)][0].clone())
        .collect();
    let out = AlgebraMorphism::new(base.clone(), base_prime.clone(), images)?;
    if !out.is_equivariant()? {
        return Err(Error::NotEquivariant);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplittingReport {
    pub normalized: bool,
    pub mu_equivariant: bool,
    pub const_equivariant: bool,
}

/// Whether the cross-section is normalized by the subgroup, and whether the
/// two candidate splitting maps (slot-collapse on Ind^⊗ and the diagonal
/// into Ind^×) are H-equivariant. The maps are checked regardless, since
/// their failure without normalization is informative.
pub fn check_normalized_splitting(
    base: &Arc<AlgebraAction>,
    cs: &CrossSection,
) -> Result<SplittingReport, Error> {
    let to_parent = check_base_compatible(base, cs)?;
    let local_of = |e: usize| to_parent.binary_search(&e).unwrap();
    let parent = cs.subgroup().parent().clone();
    let h_elems: Vec<usize> = cs.subgroup().elements().to_vec();
    let normalized = h_elems.iter().all(|&h| {
        cs.reps()
            .iter()
            .all(|&r| cs.reps().contains(&parent.mult(parent.mult(parent.inv(h), r), h)))
    });

    let ind = tensor_induce(base, cs)?;
    let n = base.num_vars();
    let field = base.field();
    // collapse: x_{r,v} -> v
    let collapse: BTreeMap<usize, Polynomial> = (0..cs.len() * n)
        .map(|i| (i, Polynomial::var(field, i % n)))
        .collect();
    let mut mu_equivariant = true;
    'mu: for &h in &h_elems {
        for i in 0..cs.len() * n {
            let lhs = ind.image(h, i).substitute(&collapse)?;
            let rhs = base.act(&Polynomial::var(field, i % n), local_of(h))?;
            if lhs != rhs {
                mu_equivariant = false;
                break 'mu;
            }
        }
    }

    let tuples = TupleAlgebra::new(base.clone(), cs.clone())?;
    let mut const_equivariant = true;
    'cst: for &h in &h_elems {
        for v in 0..n {
            let moved = base.act(&Polynomial::var(field, v), local_of(h))?;
            let lhs = tuples.const_tuple(&moved);
            let rhs = tuples.act(&tuples.const_tuple(&Polynomial::var(field, v)), h)?;
            if lhs != rhs {
                const_equivariant = false;
                break 'cst;
            }
        }
    }
    Ok(SplittingReport {
        normalized,
        mu_equivariant,
        const_equivariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::s3_group;
    use crate::action::d_reg;
    use crate::field::PrimeField;
    use crate::group::{Subgroup, DEFAULT_CLOSURE_CAP};
    
    use crate::trace::trace_full;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn c3_dreg() -> Arc<AlgebraAction> {
        let c3 = GroupTable::from_permutations(&[vec![1, 2, 0]], DEFAULT_CLOSURE_CAP).unwrap();
        Arc::new(d_reg(c3, f3()).unwrap())
    }

    fn a3_section() -> CrossSection {
        let g = s3_group();
        CrossSection::greedy(Subgroup::new(g, vec![0, 1, 3]).unwrap())
    }

    #[test]
    fn embedding_values_for_s3_over_a3() {
        let cs = a3_section();
        let rho_sigma = frobenius_embedding(&cs, 1);
        assert_eq!(rho_sigma.perm, vec![0, 1]);
        assert_eq!(rho_sigma.base, vec![1, 3]);
        let rho_t = frobenius_embedding(&cs, 2);
        assert_eq!(rho_t.perm, vec![1, 0]);
        assert_eq!(rho_t.base, vec![0, 0]);
        let rho_e = frobenius_embedding(&cs, 0);
        assert_eq!(rho_e.perm, vec![0, 1]);
        assert_eq!(rho_e.base, vec![0, 0]);
    }

    #[test]
    fn embedding_is_a_homomorphism_on_all_pairs() {
        let cs = a3_section();
        let g = s3_group();
        for a in g.elements() {
            for b in g.elements() {
                let lhs = wreath_mul(
                    &g,
                    &frobenius_embedding(&cs, a),
                    &frobenius_embedding(&cs, b),
                );
                assert_eq!(lhs, frobenius_embedding(&cs, g.mult(a, b)));
            }
        }
    }

    #[test]
    fn wreath_inverse_cancels() {
        let cs = a3_section();
        let g = s3_group();
        for a in g.elements() {
            let w = frobenius_embedding(&cs, a);
            let prod = wreath_mul(&g, &w, &wreath_inv(&g, &w));
            assert_eq!(prod.base, vec![0, 0]);
            assert_eq!(prod.perm, vec![0, 1]);
        }
    }

    #[test]
    fn cross_section_change_is_an_inner_twist() {
        let g = s3_group();
        let h = Subgroup::new(g.clone(), vec![0, 1, 3]).unwrap();
        let cs1 = CrossSection::greedy(h.clone());
        let cs2 = CrossSection::with_reps(h, vec![0, 4]).unwrap();
        // slot pairing by coset: h_bar(r) with reps2[i] = h_bar(i) * reps1[i]
        let hbar = WreathElement {
            base: (0..cs1.len())
                .map(|i| g.mult(cs2.reps()[i], g.inv(cs1.reps()[i])))
                .collect(),
            perm: (0..cs1.len()).collect(),
        };
        for e in g.elements() {
            let conj = wreath_mul(
                &g,
                &wreath_mul(&g, &hbar, &frobenius_embedding(&cs1, e)),
                &wreath_inv(&g, &hbar),
            );
            assert_eq!(conj, frobenius_embedding(&cs2, e));
        }
    }

    #[test]
    fn tensor_induction_over_the_full_group_is_the_base() {
        let a = c3_dreg();
        let cs = CrossSection::greedy(Subgroup::full(a.group().clone()));
        let ind = tensor_induce(&a, &cs).unwrap();
        assert_eq!(ind.num_vars(), a.num_vars());
        for g in a.group().elements() {
            for v in 0..a.num_vars() {
                assert_eq!(ind.image(g, v), a.image(g, v));
            }
        }
    }

    #[test]
    fn tensor_induction_slot_structure() {
        let a = c3_dreg();
        let cs = a3_section();
        let ind = tensor_induce(&a, &cs).unwrap();
        assert_eq!(ind.num_vars(), 4);
        assert_eq!(
            ind.vars(),
            &["x0_y1", "x0_y2", "x1_y1", "x1_y2"]
                .map(String::from)
        );
        let field = a.field();
        // restriction to the subgroup acts on slot-e variables like the base
        for (h_local, h_parent) in [(1usize, 1usize), (2, 3)] {
            for v in 0..2 {
                let rename: BTreeMap<usize, Polynomial> =
                    (0..2).map(|u| (u, Polynomial::var(field, u))).collect();
                let expected = a.image(h_local, v).substitute(&rename).unwrap();
                assert_eq!(ind.image(h_parent, v), &expected);
            }
        }
        // slot shift: x_{e,v} moved by a rep lands at that rep's slot
        for (pos, &r) in cs.reps().iter().enumerate() {
            for v in 0..2 {
                assert_eq!(
                    ind.image(r, v),
                    &Polynomial::var(field, slot_var(2, pos, v))
                );
            }
        }
    }

    #[test]
    fn tensor_induction_rejects_wrong_base_group() {
        let a = c3_dreg();
        let g = s3_group();
        let wrong = CrossSection::greedy(Subgroup::new(g, vec![0, 2]).unwrap());
        assert!(matches!(
            tensor_induce(&a, &wrong),
            Err(Error::GroupMismatch)
        ));
    }

    #[test]
    fn tuple_algebra_validates_and_acts() {
        let a = c3_dreg();
        let cs = a3_section();
        let tuples = TupleAlgebra::new(a.clone(), cs).unwrap();
        assert_eq!(tuples.components(), 2);
        let y1 = Polynomial::var(f3(), 0);
        let t = vec![y1.clone(), Polynomial::zero(f3())];
        // the transposition swaps the two slots
        let moved = tuples.act(&t, 2).unwrap();
        assert!(moved[0].is_zero());
        assert_eq!(moved[1], y1);
    }

    #[test]
    fn induced_points_from_a_subgroup_point() {
        // a = y1 is a point of the base algebra
        let a = c3_dreg();
        let cs = a3_section();
        let field = f3();
        let y1 = Polynomial::var(field, 0);
        // tensor side: embed in slot e and divide by the index
        let ind = tensor_induce(&a, &cs).unwrap();
        let m_inv = field.inv(2).unwrap();
        let candidate = Polynomial::var(field, 0).scale(m_inv);
        assert_eq!(
            trace_full(&ind, &candidate).unwrap(),
            Polynomial::one(field)
        );
        // product side: the diagonal tuple divided by the index
        let tuples = TupleAlgebra::new(a.clone(), cs).unwrap();
        let diag = tuples.scale(&tuples.const_tuple(&y1), m_inv);
        assert_eq!(tuples.trace(&diag).unwrap(), tuples.unit_tuple());
    }

    #[test]
    fn group_point_restricts_to_a_subgroup_point() {
        let f = f3();
        let a = d_reg(s3_group(), f).unwrap();
        let w = crate::trace::is_trace_surjective(&a, 1, true)
            .unwrap()
            .witness
            .unwrap();
        let p = crate::group::sylow_subgroup(a.group(), 3).unwrap();
        let cs = CrossSection::greedy(p.clone());
        // sum the point over inverse representatives
        let mut pulled = Polynomial::zero(f);
        for &r in cs.reps() {
            pulled = pulled.add(&a.act(&w, a.group().inv(r)).unwrap());
        }
        let (restricted, _) = restrict_action(&a, &p).unwrap();
        assert_eq!(
            trace_full(&restricted, &pulled).unwrap(),
            Polynomial::one(f)
        );
    }

    fn sampled_h_points(
        res_b: &AlgebraAction,
        count: usize,
    ) -> Vec<Polynomial> {
        // solutions of tr_H(c) = 1 at degree <= 1: particular + kernel shifts
        let r = crate::trace::find_point(res_b, 1).unwrap();
        let c0 = r.witness.expect("restricted algebra must have a point");
        let kernel = crate::trace::trace_kernel_basis(res_b, 1).unwrap();
        let mut out = vec![c0.clone()];
        for k in kernel.iter().take(count - 1) {
            out.push(c0.add(k));
        }
        out
    }

    #[test]
    fn chi_roundtrip_on_sampled_morphisms() {
        let a = c3_dreg();
        let cs = a3_section();
        let ind = Arc::new(tensor_induce(&a, &cs).unwrap());
        let (res_ind, to_parent) = restrict_action(&ind, cs.subgroup()).unwrap();
        let res_ind = Arc::new(res_ind);
        let points = sampled_h_points(&res_ind, 3);
        assert!(points.len() >= 3);
        for c in points {
            // the base is free on one point: y_h -> c·h
            let images: Vec<Polynomial> = (1..=2)
                .map(|h_local| {
                    let _ = to_parent;
                    res_ind.act(&c, h_local).unwrap()
                })
                .collect();
            let alpha = AlgebraMorphism::new(a.clone(), res_ind.clone(), images).unwrap();
            assert!(alpha.is_equivariant().unwrap());
            let beta = chi_adjunction(&a, &cs, &ind, &ind, &alpha).unwrap();
            let back = iota1_star(&a, &cs, &beta).unwrap();
            assert_eq!(back.var_images(), alpha.var_images());
        }
    }

    #[test]
    fn chi_of_the_unit_is_the_identity() {
        let a = c3_dreg();
        let cs = a3_section();
        let ind = Arc::new(tensor_induce(&a, &cs).unwrap());
        let u = tensor_unit(&a, &cs, &ind).unwrap();
        let beta = chi_adjunction(&a, &cs, &ind, &ind, &u).unwrap();
        for (v, img) in beta.var_images().iter().enumerate() {
            assert_eq!(img, &Polynomial::var(a.field(), v));
        }
        // and back again
        let back = iota1_star(&a, &cs, &beta).unwrap();
        assert_eq!(back.var_images(), u.var_images());
    }

    fn sampled_res_morphisms(
        b: &Arc<AlgebraAction>,
        a: &Arc<AlgebraAction>,
        cs: &CrossSection,
    ) -> Vec<AlgebraMorphism> {
        // maps res B -> A for B free on variables y_g (g != e): pick the
        // image on one variable per left H-orbit, extend equivariantly, and
        // fix the wrap constraint with a trace-one correction.
        let parent = cs.subgroup().parent().clone();
        let to_parent = cs.subgroup().elements().to_vec();
        let local_of = |e: usize| to_parent.binary_search(&e).unwrap();
        let field = a.field();
        let (res_b, _) = restrict_action(b, cs.subgroup()).unwrap();
        let res_b = Arc::new(res_b);
        let h_elems: Vec<usize> = cs.subgroup().elements().to_vec();
        let mut out = Vec::new();
        for b_choice in [
            Polynomial::zero(field),
            Polynomial::var(field, 0),
            Polynomial::var(field, 1),
        ] {
            // trace of the chosen image over H, summed over non-trivial orbits
            let mut tr_b_total = Polynomial::zero(field);
            let mut images = vec![Polynomial::zero(field); parent.order() - 1];
            let mut assigned = vec![false; parent.order() - 1];
            for g in parent.elements().filter(|&g| g != 0) {
                if assigned[g - 1] || cs.subgroup().contains(g) {
                    continue;
                }
                // orbit gH gets b_choice at g, propagated by the action
                for &h in &h_elems {
                    let gh = parent.mult(g, h);
                    images[gh - 1] = a.act(&b_choice, local_of(h)).unwrap();
                    assigned[gh - 1] = true;
                    tr_b_total = tr_b_total.add(&images[gh - 1]);
                }
            }
            // orbit of H itself: a_img·h at y_h, where tr_H(a_img) closes the wrap
            let deficit = Polynomial::one(field).sub(&tr_b_total);
            let a_img = Polynomial::var(field, 0).mul(&deficit);
            for &h in h_elems.iter().filter(|&&h| h != 0) {
                images[h - 1] = a.act(&a_img, local_of(h)).unwrap();
            }
            let alpha = AlgebraMorphism::new(res_b.clone(), a.clone(), images).unwrap();
            assert!(alpha.is_equivariant().unwrap());
            out.push(alpha);
        }
        out
    }

    #[test]
    fn psi_roundtrip_on_sampled_morphisms() {
        let a = c3_dreg();
        let cs = a3_section();
        let b = Arc::new(d_reg(s3_group(), f3()).unwrap());
        let morphisms = sampled_res_morphisms(&b, &a, &cs);
        assert!(morphisms.len() >= 3);
        for alpha in morphisms {
            let m = psi_adjunction(&b, &cs, &alpha).unwrap();
            let back = pi1_star(&b, &cs, &m).unwrap();
            assert_eq!(back.var_images(), alpha.var_images());
        }
    }

    #[test]
    fn psi_of_the_identity_is_the_unit() {
        let b = Arc::new(d_reg(s3_group(), f3()).unwrap());
        let cs = a3_section();
        let u = times_unit(&b, &cs).unwrap();
        for (v, tuple) in u.var_images().iter().enumerate() {
            assert_eq!(tuple[0], Polynomial::var(f3(), v));
            let parent = cs.subgroup().parent();
            for (pos, &r) in cs.reps().iter().enumerate() {
                assert_eq!(
                    tuple[pos],
                    b.act(&Polynomial::var(f3(), v), parent.inv(r)).unwrap()
                );
            }
        }
        assert!(u.is_equivariant().unwrap());
    }

    #[test]
    fn triangle_identities_hold() {
        let a = c3_dreg();
        let cs = a3_section();
        // counit after induced unit: identity on the induced algebra
        let b = Arc::new(tensor_induce(&a, &cs).unwrap());
        let (ind2, c) = tensor_counit(&b, &cs).unwrap();
        // Ind(u): x_{r,v} of ind2 -> act of rep on the unit image, which is
        // x_{r,v} of b itself; the composite must be the identity
        let u = tensor_unit(&a, &cs, &b).unwrap();
        let beta = chi_adjunction(&a, &cs, &b, &b, &u).unwrap();
        for (v, img) in beta.var_images().iter().enumerate() {
            assert_eq!(img, &Polynomial::var(a.field(), v));
        }
        let _ = (ind2, c);
        // product side: slot-e of the unit tuple map is the identity
        let un = times_unit(&b, &cs).unwrap();
        for (v, tuple) in un.var_images().iter().enumerate() {
            assert_eq!(times_counit(tuple), Polynomial::var(a.field(), v));
        }
    }

    #[test]
    fn tensor_counit_is_equivariant_and_collapses_slots() {
        let b = Arc::new(d_reg(s3_group(), f3()).unwrap());
        let cs = a3_section();
        let (ind, c) = tensor_counit(&b, &cs).unwrap();
        assert_eq!(ind.num_vars(), 2 * b.num_vars());
        // slot-e variables map to themselves
        for v in 0..b.num_vars() {
            assert_eq!(c.var_images()[v], Polynomial::var(f3(), v));
        }
    }

    #[test]
    fn f_trace_of_the_composite_unit_counit_is_identity() {
        let a = c3_dreg();
        let cs = a3_section();
        let b = Arc::new(tensor_induce(&a, &cs).unwrap());
        let (res_b, _) = restrict_action(&b, cs.subgroup()).unwrap();
        let res_b = Arc::new(res_b);
        // alpha = (unit of Ind^x) after (counit of Ind^tensor), as one
        // tuple morphism Ind^tensor(res B) -> Ind^x(res B)
        let (ind2, c) = tensor_counit(&b, &cs).unwrap();
        let u = times_unit(&b, &cs).unwrap();
        let images: Vec<Vec<Polynomial>> = c
            .var_images()
            .iter()
            .map(|img| u.apply(img).unwrap())
            .collect();
        let target = TupleAlgebra::new(res_b.clone(), cs.clone()).unwrap();
        let alpha = TupleMorphism::new(ind2.clone(), target, images).unwrap();
        assert!(alpha.is_equivariant().unwrap());
        let t = f_trace(&res_b, &res_b, &alpha).unwrap();
        for (v, img) in t.var_images().iter().enumerate() {
            assert_eq!(img, &Polynomial::var(f3(), v));
        }
    }

    #[test]
    fn normalized_sections_split_for_c6_over_c3() {
        let f = f3();
        let c6 = GroupTable::from_permutations(&[vec![1, 2, 3, 4, 5, 0]], 64).unwrap();
        // BFS numbering: element k is the k-th power of the generator
        let h = Subgroup::new(c6.clone(), vec![0, 2, 4]).unwrap();
        let a = Arc::new(d_reg(
            GroupTable::from_permutations(&[vec![1, 2, 0]], 64).unwrap(),
            f,
        )
        .unwrap());
        let cs = CrossSection::greedy(h);
        let report = check_normalized_splitting(&a, &cs).unwrap();
        assert!(report.normalized);
        assert!(report.mu_equivariant);
        assert!(report.const_equivariant);
    }

    #[test]
    fn non_normalized_section_breaks_the_collapse_map() {
        let a = c3_dreg();
        let cs = a3_section();
        let report = check_normalized_splitting(&a, &cs).unwrap();
        assert!(!report.normalized);
        assert!(!report.mu_equivariant);
    }
}
