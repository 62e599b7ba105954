//! Finite-dimensional right modules over a group algebra: one matrix per
//! group element, acting on row vectors. Fixed points, Hom spaces, socles
//! and relative-projectivity witnesses are all exact linear algebra.

use std::sync::Arc;

use crate::action::AlgebraAction;
use crate::error::Error;
use crate::field::PrimeField;
use crate::group::{right_coset_reps, GroupTable, Subgroup};
use crate::linalg::{Matrix, RowSpan};
use crate::poly::{monomials_of_degree, monomials_up_to_degree, Monomial, Polynomial};

#[derive(Debug, Clone)]
pub struct KGModule {
    group: Arc<GroupTable>,
    field: PrimeField,
    dim: usize,
    rho: Vec<Matrix>,
}

impl KGModule {
    /// One matrix per generator; the rest are composed along generator
    /// words, then the homomorphism law is verified exhaustively.
    pub fn make_module(
        group: Arc<GroupTable>,
        field: PrimeField,
        generator_matrices: &[Matrix],
    ) -> Result<Self, Error> {
        if generator_matrices.len() != group.num_gens() {
            return Err(Error::GeneratorCount {
                expected: group.num_gens(),
                got: generator_matrices.len(),
            });
        }
        let dim = generator_matrices.first().map_or(0, |m| m.rows);
        for m in generator_matrices {
            if m.rows != dim || m.cols != dim {
                return Err(Error::MatrixShape(
                    "generator matrices differ in size".to_string(),
                ));
            }
        }
        let mut rho = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut acc = Matrix::identity(field, dim);
            for &letter in group.gen_word(g) {
                acc = acc.mul(&generator_matrices[letter])?;
            }
            rho.push(acc);
        }
        KGModule::from_element_matrices(group, field, rho)
    }

    pub fn from_element_matrices(
        group: Arc<GroupTable>,
        field: PrimeField,
        rho: Vec<Matrix>,
    ) -> Result<Self, Error> {
        let dim = rho.first().map_or(0, |m| m.rows);
        if rho.len() != group.order() {
            return Err(Error::GeneratorCount {
                expected: group.order(),
                got: rho.len(),
            });
        }
        if rho[0] != Matrix::identity(field, dim) {
            return Err(Error::ModuleLaw { g: 0, h: 0 });
        }
        for g in group.elements() {
            for h in group.elements() {
                if rho[g].mul(&rho[h])? != rho[group.mult(g, h)] {
                    return Err(Error::ModuleLaw { g, h });
                }
            }
        }
        Ok(KGModule {
            group,
            field,
            dim,
            rho,
        })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: usize) -> &Matrix {
        &self.rho[g]
    }

    pub fn act_vector(&self, v: &[u64], g: usize) -> Result<Vec<u64>, Error> {
        self.rho[g].act_row(v)
    }

    /// Elements acting as the identity matrix.
    pub fn kernel_elements(&self) -> Vec<usize> {
        let id = Matrix::identity(self.field, self.dim);
        self.group
            .elements()
            .filter(|&g| self.rho[g] == id)
            .collect()
    }

    /// The diagonal action on the tensor product.
    pub fn tensor(&self, other: &KGModule) -> Result<KGModule, Error> {
        if !self.group.same_multiplication(&other.group) || self.field != other.field {
            return Err(Error::GroupMismatch);
        }
        let rho = self
            .group
            .elements()
            .map(|g| self.rho[g].kronecker(&other.rho[g]))
            .collect();
        KGModule::from_element_matrices(self.group.clone(), self.field, rho)
    }

    pub fn direct_sum(&self, other: &KGModule) -> Result<KGModule, Error> {
        if !self.group.same_multiplication(&other.group) || self.field != other.field {
            return Err(Error::GroupMismatch);
        }
        let n = self.dim + other.dim;
        let rho = self
            .group
            .elements()
            .map(|g| {
                let mut m = Matrix::zero(self.field, n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, self.rho[g].get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, other.rho[g].get(i, j));
                    }
                }
                m
            })
            .collect();
        KGModule::from_element_matrices(self.group.clone(), self.field, rho)
    }
}

pub fn trivial_module(group: Arc<GroupTable>, field: PrimeField) -> KGModule {
    let rho = group.elements().map(|_| Matrix::identity(field, 1)).collect();
    KGModule::from_element_matrices(group, field, rho).unwrap()
}

/// The free rank-one module: basis vectors permuted by right translation.
pub fn regular_module(group: Arc<GroupTable>, field: PrimeField) -> KGModule {
    let n = group.order();
    let rho = group
        .elements()
        .map(|h| {
            let mut m = Matrix::zero(field, n, n);
            for g in group.elements() {
                m.set(g, group.mult(g, h), 1);
            }
            m
        })
        .collect();
    KGModule::from_element_matrices(group, field, rho).unwrap()
}

fn check_subgroup(m: &KGModule, h: &Subgroup) -> Result<(), Error> {
    if !m.group().same_multiplication(h.parent()) {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// Echelonized basis of the vectors fixed by every element of H.
pub fn fixed_points(m: &KGModule, h: &Subgroup) -> Result<Vec<Vec<u64>>, Error> {
    check_subgroup(m, h)?;
    let field = m.field();
    let n = m.dim();
    let mut stacked = Matrix::zero(field, n * h.order(), n);
    for (k, &g) in h.elements().iter().enumerate() {
        // rows of (rho(g) - I) transposed: constraints on row vectors
        for i in 0..n {
            for j in 0..n {
                let mut v = m.rho(g).get(j, i);
                if i == j {
                    v = field.sub(v, 1);
                }
                stacked.set(k * n + i, j, v);
            }
        }
    }
    let mut span = RowSpan::new(field, n);
    for v in stacked.nullspace_basis() {
        span.insert(&v);
    }
    Ok(span.rows().to_vec())
}

/// Basis of the space of module maps M → N, as dim(M) × dim(N) matrices
/// acting on row vectors.
pub fn hom_space(m: &KGModule, n: &KGModule) -> Result<Vec<Matrix>, Error> {
    if !m.group().same_multiplication(n.group()) || m.field() != n.field() {
        return Err(Error::GroupMismatch);
    }
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let order = m.group().order();
    // unknowns X[a][b]; constraints rho_M(g)·X = X·rho_N(g)
    let mut sys = Matrix::zero(field, order * dm * dn, dm * dn);
    for g in m.group().elements() {
        for i in 0..dm {
            for j in 0..dn {
                let row = (g * dm + i) * dn + j;
                for a in 0..dm {
                    let col = a * dn + j;
                    sys.set(row, col, field.add(sys.get(row, col), m.rho(g).get(i, a)));
                }
                for b in 0..dn {
                    let col = i * dn + b;
                    sys.set(row, col, field.sub(sys.get(row, col), n.rho(g).get(b, j)));
                }
            }
        }
    }
    let mut span = RowSpan::new(field, dm * dn);
    for v in sys.nullspace_basis() {
        span.insert(&v);
    }
    span.rows()
        .iter()
        .map(|v| {
            Matrix::from_rows(
                field,
                (0..dm).map(|a| v[a * dn..(a + 1) * dn].to_vec()).collect(),
            )
        })
        .collect()
}

pub const ENUMERATION_CAP: u64 = 1 << 20;

/// Exhaustive test: every nonzero vector must generate the whole module.
pub fn is_simple(m: &KGModule) -> Result<bool, Error> {
    let field = m.field();
    let n = m.dim();
    if n == 0 {
        return Ok(false);
    }
    let total = (field.p() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_CAP as u128 {
        return Err(Error::EnumerationCap(ENUMERATION_CAP));
    }
    for idx in 1..total as u64 {
        let mut v = vec![0u64; n];
        let mut rem = idx;
        for c in v.iter_mut() {
            *c = rem % field.p();
            rem /= field.p();
        }
        let mut span = RowSpan::new(field, n);
        for g in m.group().elements() {
            span.insert(&m.act_vector(&v, g)?);
        }
        if span.dim() < n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sum of the images of all maps from the supplied simple modules.
pub fn socle(m: &KGModule, simples: &[KGModule]) -> Result<Vec<Vec<u64>>, Error> {
    let mut span = RowSpan::new(m.field(), m.dim());
    for s in simples {
        if !is_simple(s)? {
            return Err(Error::NotSimple);
        }
        if !s.group().same_multiplication(m.group()) {
            return Err(Error::GroupMismatch);
        }
        for x in hom_space(s, m)? {
            for r in 0..x.rows {
                span.insert(x.row(r));
            }
        }
    }
    Ok(span.rows().to_vec())
}

/// An H-endomorphism whose relative trace over a right cross-section of H
/// is the identity, or None. The linear system is exact, so None is a
/// proof of non-existence.
pub fn higman_witness(m: &KGModule, h: &Subgroup) -> Result<Option<Matrix>, Error> {
    check_subgroup(m, h)?;
    let field = m.field();
    let n = m.dim();
    let group = m.group();
    let all: Vec<usize> = group.elements().collect();
    let reps = right_coset_reps(group, h.elements(), &all);
    // unknowns alpha[a][b]
    let commute_rows = h.order() * n * n;
    let mut sys = Matrix::zero(field, commute_rows + n * n, n * n);
    let mut rhs = vec![0u64; commute_rows + n * n];
    for (k, &he) in h.elements().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = (k * n + i) * n + j;
                // (alpha·rho(h) - rho(h)·alpha)[i][j] = 0
                for b in 0..n {
                    let col = i * n + b;
                    sys.set(row, col, field.add(sys.get(row, col), m.rho(he).get(b, j)));
                }
                for a in 0..n {
                    let col = a * n + j;
                    sys.set(row, col, field.sub(sys.get(row, col), m.rho(he).get(i, a)));
                }
            }
        }
    }
    // sum over reps of rho(g)^{-1}·alpha·rho(g) = I
    for &g in &reps {
        let gi = m.rho(group.inv(g));
        let gr = m.rho(g);
        for i in 0..n {
            for j in 0..n {
                let row = commute_rows + i * n + j;
                for a in 0..n {
                    for b in 0..n {
                        let col = a * n + b;
                        let coeff = field.mul(gi.get(i, a), gr.get(b, j));
                        sys.set(row, col, field.add(sys.get(row, col), coeff));
                    }
                }
            }
        }
    }
    for i in 0..n {
        rhs[commute_rows + i * n + i] = 1;
    }
    let Some(x) = sys.solve(&rhs)? else {
        return Ok(None);
    };
    let alpha = Matrix::from_rows(
        field,
        (0..n).map(|a| x[a * n..(a + 1) * n].to_vec()).collect(),
    )?;
    // re-verify both conditions
    for &he in h.elements() {
        if alpha.mul(m.rho(he))? != m.rho(he).mul(&alpha)? {
            return Err(Error::Invalid("witness fails the commuting check".into()));
        }
    }
    let mut total = Matrix::zero(field, n, n);
    for &g in &reps {
        total = total.add(&m.rho(group.inv(g)).mul(&alpha)?.mul(m.rho(g))?)?;
    }
    if total != Matrix::identity(field, n) {
        return Err(Error::Invalid("witness fails the trace check".into()));
    }
    Ok(Some(alpha))
}

pub fn is_projective_module(m: &KGModule) -> Result<bool, Error> {
    let trivial = Subgroup::trivial(m.group().clone());
    Ok(higman_witness(m, &trivial)?.is_some())
}

/// The degree-d slice of a graded action (or the degree-≤d slice of a
/// filtration-preserving one) as a module on its monomial basis.
pub fn graded_slice_module(
    a: &AlgebraAction,
    d: u32,
) -> Result<(KGModule, Vec<Monomial>), Error> {
    let monos = if a.is_graded() {
        monomials_of_degree(a.num_vars(), d)
    } else if a.is_filtration_preserving() {
        monomials_up_to_degree(a.num_vars(), d)
    } else {
        return Err(Error::FiltrationIncreasing);
    };
    let field = a.field();
    let index: std::collections::HashMap<Monomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let n = monos.len();
    let mut rho = Vec::with_capacity(a.group().order());
    for g in a.group().elements() {
        let mut m = Matrix::zero(field, n, n);
        for (i, mono) in monos.iter().enumerate() {
            let img = a.act(&Polynomial::monomial(field, mono.clone(), 1), g)?;
            for (t, c) in img.terms() {
                m.set(i, index[t], c);
            }
        }
        rho.push(m);
    }
    let module = KGModule::from_element_matrices(a.group().clone(), field, rho)?;
    Ok((module, monos))
}

/// Per-degree socle generators of the action's slice modules, as
/// polynomials, for every degree up to the bound.
pub fn algebra_socle(
    a: &AlgebraAction,
    max_degree: u32,
    simples: &[KGModule],
) -> Result<Vec<Vec<Polynomial>>, Error> {
    let field = a.field();
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let (slice, monos) = graded_slice_module(a, d)?;
        let basis = socle(&slice, simples)?;
        let polys = basis
            .iter()
            .map(|v| {
                let mut p = Polynomial::zero(field);
                for (i, mono) in monos.iter().enumerate() {
                    p = p.add(&Polynomial::monomial(field, mono.clone(), v[i]));
                }
                p
            })
            .collect();
        out.push(polys);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::{c2_group, c4_unitriangular, s3_group};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn sign_s3(field: PrimeField) -> KGModule {
        let minus = Matrix::from_rows(field, vec![vec![field.neg(1)]]).unwrap();
        let plus = Matrix::identity(field, 1);
        KGModule::make_module(s3_group(), field, &[plus, minus]).unwrap()
    }

    fn perm_s3(field: PrimeField) -> KGModule {
        let mats: Vec<Matrix> = [[1usize, 2, 0], [1usize, 0, 2]]
            .iter()
            .map(|p| {
                let mut m = Matrix::zero(field, 3, 3);
                for (i, &j) in p.iter().enumerate() {
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        KGModule::make_module(s3_group(), field, &mats).unwrap()
    }

    #[test]
    fn law_violations_are_caught() {
        // an order-3 matrix cannot represent the generator of C2
        let m = Matrix::from_rows(f3(), vec![vec![0, 1], vec![2, 2]]).unwrap();
        assert!(matches!(
            KGModule::make_module(c2_group(), f3(), &[m]),
            Err(Error::ModuleLaw { .. })
        ));
    }

    #[test]
    fn regular_c2_structure() {
        let m = regular_module(c2_group(), f2());
        assert_eq!(m.dim(), 2);
        let fixed = fixed_points(&m, &Subgroup::full(c2_group())).unwrap();
        assert_eq!(fixed, vec![vec![1, 1]]);
        // trivial subgroup fixes everything
        let all = fixed_points(&m, &Subgroup::trivial(c2_group())).unwrap();
        assert_eq!(all.len(), 2);
        assert!(!is_simple(&m).unwrap());
        assert!(is_projective_module(&m).unwrap());
    }

    #[test]
    fn s3_permutation_fixed_line() {
        let m = perm_s3(f3());
        let fixed = fixed_points(&m, &Subgroup::full(s3_group())).unwrap();
        assert_eq!(fixed, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn hom_space_dimensions() {
        let triv2 = trivial_module(c2_group(), f2());
        let reg2 = regular_module(c2_group(), f2());
        assert_eq!(hom_space(&triv2, &reg2).unwrap().len(), 1);
        let triv3 = trivial_module(s3_group(), f3());
        assert_eq!(hom_space(&triv3, &sign_s3(f3())).unwrap().len(), 0);
        assert_eq!(hom_space(&triv3, &triv3).unwrap().len(), 1);
    }

    #[test]
    fn simplicity_checks() {
        assert!(is_simple(&trivial_module(s3_group(), f3())).unwrap());
        assert!(is_simple(&sign_s3(f3())).unwrap());
        assert!(!is_simple(&regular_module(c2_group(), f2())).unwrap());
        assert!(!is_simple(&perm_s3(f3())).unwrap());
    }

    #[test]
    fn socle_of_the_regular_c2_module() {
        let reg = regular_module(c2_group(), f2());
        let triv = trivial_module(c2_group(), f2());
        let s = socle(&reg, &[triv]).unwrap();
        assert_eq!(s, vec![vec![1, 1]]);
    }

    #[test]
    fn socle_of_a_simple_is_everything() {
        let sign = sign_s3(f3());
        let s = socle(&sign, &[sign.clone()]).unwrap();
        assert_eq!(s.len(), 1);
        let double = sign.direct_sum(&sign).unwrap();
        assert_eq!(socle(&double, &[sign]).unwrap().len(), 2);
    }

    #[test]
    fn socle_rejects_non_simple_input() {
        let reg = regular_module(c2_group(), f2());
        assert!(matches!(
            socle(&reg, &[reg.clone()]),
            Err(Error::NotSimple)
        ));
    }

    #[test]
    fn socle_spin_check_stays_inside() {
        let m = perm_s3(f3());
        let triv = trivial_module(s3_group(), f3());
        let s = socle(&m, &[triv, sign_s3(f3())]).unwrap();
        let mut span = RowSpan::new(f3(), m.dim());
        for v in &s {
            span.insert(v);
        }
        for v in &s {
            for g in m.group().elements() {
                assert!(span.contains(&m.act_vector(v, g).unwrap()));
            }
        }
    }

    #[test]
    fn higman_witness_values() {
        // free module: projective
        let reg = regular_module(c2_group(), f2());
        assert!(higman_witness(&reg, &Subgroup::trivial(c2_group()))
            .unwrap()
            .is_some());
        // trivial module in characteristic dividing the order: none
        let triv = trivial_module(c2_group(), f2());
        assert!(higman_witness(&triv, &Subgroup::trivial(c2_group()))
            .unwrap()
            .is_none());
        // H = G is always relatively projective (alpha = I)
        assert!(higman_witness(&triv, &Subgroup::full(c2_group()))
            .unwrap()
            .is_some());
        // coprime characteristic: the scaled identity works
        let triv3 = trivial_module(c2_group(), f3());
        let w = higman_witness(&triv3, &Subgroup::trivial(c2_group()))
            .unwrap()
            .unwrap();
        assert_eq!(w.get(0, 0), 2);
    }

    #[test]
    fn projectivity_of_sums() {
        let reg = regular_module(c2_group(), f2());
        let double = reg.direct_sum(&reg).unwrap();
        assert!(is_projective_module(&double).unwrap());
        // the point stabilizers have order coprime to 3, so this is free
        // over the Sylow 3-subgroup and hence projective
        assert!(is_projective_module(&perm_s3(f3())).unwrap());
        assert!(!is_projective_module(&trivial_module(s3_group(), f3())).unwrap());
    }

    #[test]
    fn slice_modules_of_the_unitriangular_action() {
        let a = c4_unitriangular();
        let (m, monos) = graded_slice_module(&a, 1).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(monos.len(), 3);
        assert_eq!(m.rho(1), &a.degree_one_matrix(1).unwrap());
        let (m0, _) = graded_slice_module(&a, 0).unwrap();
        assert_eq!(m0.rho(1), &Matrix::identity(f2(), 1));
    }

    #[test]
    fn algebra_socle_degree_one_values() {
        let a = c4_unitriangular();
        let triv = trivial_module(c4_group_local(), f2());
        let soc = algebra_socle(&a, 1, &[triv]).unwrap();
        assert_eq!(soc[1].len(), 1);
        assert_eq!(
            soc[1][0],
            crate::poly::parse_poly("x1", a.vars(), f2()).unwrap()
        );

        let f = f3();
        let b = {
            let mats: Vec<Matrix> = [[1usize, 2, 0], [1usize, 0, 2]]
                .iter()
                .map(|p| {
                    let mut m = Matrix::zero(f, 3, 3);
                    for (i, &j) in p.iter().enumerate() {
                        m.set(i, j, 1);
                    }
                    m
                })
                .collect();
            crate::action::linear_action(f, s3_group(), &mats).unwrap()
        };
        let soc = algebra_socle(&b, 1, &[trivial_module(s3_group(), f), sign_s3(f)]).unwrap();
        assert_eq!(soc[1].len(), 1);
        assert_eq!(
            soc[1][0],
            crate::poly::parse_poly("x1+x2+x3", b.vars(), f).unwrap()
        );
    }

    fn c4_group_local() -> Arc<GroupTable> {
        crate::action::tests::c4_group()
    }

    #[test]
    fn tensoring_with_a_free_module_forgets_the_twist() {
        // free ⊗ uniserial ≅ free ⊗ (trivial ⊕ trivial)
        let field = f2();
        let reg = regular_module(c2_group(), field);
        let uniserial = KGModule::make_module(
            c2_group(),
            field,
            &[Matrix::from_rows(field, vec![vec![1, 0], vec![1, 1]]).unwrap()],
        )
        .unwrap();
        let triv = trivial_module(c2_group(), field);
        let split = triv.direct_sum(&triv).unwrap();
        let lhs = reg.tensor(&uniserial).unwrap();
        let rhs = reg.tensor(&split).unwrap();
        let homs = hom_space(&lhs, &rhs).unwrap();
        // look for an invertible combination of the hom basis
        let k = homs.len();
        let total = 2u64.pow(k as u32);
        let found = (1..total).any(|mask| {
            let mut x = Matrix::zero(field, lhs.dim(), rhs.dim());
            for (i, h) in homs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x = x.add(h).unwrap();
                }
            }
            x.rank() == lhs.dim()
        });
        assert!(found);
    }
}
