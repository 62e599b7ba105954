//! Trace (transfer) maps, point search, trace-surjectivity, degree-truncated
//! invariant spaces and subalgebra membership.
//!
//! A "point" is an element with full trace exactly 1. For a graded action
//! with p dividing the group order no point can exist, since the trace
//! preserves degree and kills constants; that case is decided outright.
//! Otherwise point search is a linear system over the coefficients of a
//! candidate of bounded degree, and a miss is only "inconclusive at this
//! bound".

use crate::action::{restrict_action, AlgebraAction};
use crate::error::Error;
use crate::group::{right_coset_reps, sylow_subgroup, Subgroup};
use crate::linalg::{Matrix, RowSpan};
use crate::poly::{monomials_of_degree, monomials_up_to_degree, Monomial, Polynomial};

pub fn trace_full(a: &AlgebraAction, f: &Polynomial) -> Result<Polynomial, Error> {
    let mut acc = Polynomial::zero(a.field());
    for g in a.group().elements() {
        acc = acc.add(&a.act(f, g)?);
    }
    Ok(acc)
}

/// Relative transfer from H-invariants to Y-invariants, for H ≤ Y inside
/// A's group, summing over a greedy right-coset cross-section of H in Y.
pub fn rel_trace(
    a: &AlgebraAction,
    h: &Subgroup,
    y: &Subgroup,
    f: &Polynomial,
) -> Result<Polynomial, Error> {
    let reps = right_coset_reps(a.group(), h.elements(), y.elements());
    rel_trace_with_reps(a, h, y, f, &reps)
}

/// Same, over caller-chosen representatives (used to assert cross-section
/// independence).
pub fn rel_trace_with_reps(
    a: &AlgebraAction,
    h: &Subgroup,
    y: &Subgroup,
    f: &Polynomial,
    reps: &[usize],
) -> Result<Polynomial, Error> {
    if h.elements().iter().any(|e| !y.contains(*e)) {
        return Err(Error::GroupMismatch);
    }
    for &e in h.elements() {
        if &a.act(f, e)? != f {
            return Err(Error::NotInvariant(e));
        }
    }
    let mut acc = Polynomial::zero(a.field());
    for &r in reps {
        acc = acc.add(&a.act(f, r)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    Found,
    NoneGradedExact,
    InconclusiveAtBound,
}

#[derive(Debug, Clone)]
pub struct PointSearchResult {
    pub status: PointStatus,
    pub witness: Option<Polynomial>,
    pub bound: u32,
}

/// Search for an element of trace 1, among candidates of degree at most
/// `max_degree`.
pub fn find_point(a: &AlgebraAction, max_degree: u32) -> Result<PointSearchResult, Error> {
    let field = a.field();
    let order = a.group().order() as u64;
    if field.reduce(order) != 0 {
        let witness = Polynomial::constant(field, field.inv(order)?);
        debug_assert_eq!(trace_full(a, &witness)?, Polynomial::one(field));
        return Ok(PointSearchResult {
            status: PointStatus::Found,
            witness: Some(witness),
            bound: max_degree,
        });
    }
    if a.is_graded() {
        return Ok(PointSearchResult {
            status: PointStatus::NoneGradedExact,
            witness: None,
            bound: max_degree,
        });
    }
    if !a.is_filtration_preserving() {
        return Err(Error::FiltrationIncreasing);
    }
    let n = a.num_vars();
    let unknowns = monomials_up_to_degree(n, max_degree);
    let index: std::collections::HashMap<Monomial, usize> = unknowns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    // rows: target monomials, columns: candidate monomials
    let mut sys = Matrix::zero(field, unknowns.len(), unknowns.len());
    for (col, m) in unknowns.iter().enumerate() {
        let tr = trace_full(a, &Polynomial::monomial(field, m.clone(), 1))?;
        for (mono, c) in tr.terms() {
            sys.set(index[mono], col, c);
        }
    }
    let mut rhs = vec![0u64; unknowns.len()];
    rhs[index[&Monomial::one()]] = 1;
    match sys.solve(&rhs)? {
        Some(x) => {
            let mut witness = Polynomial::zero(field);
            for (i, m) in unknowns.iter().enumerate() {
                witness = witness.add(&Polynomial::monomial(field, m.clone(), x[i]));
            }
            if trace_full(a, &witness)? != Polynomial::one(field) {
                return Err(Error::Invalid("point witness failed re-verification".into()));
            }
            Ok(PointSearchResult {
                status: PointStatus::Found,
                witness: Some(witness),
                bound: max_degree,
            })
        }
        None => Ok(PointSearchResult {
            status: PointStatus::InconclusiveAtBound,
            witness: None,
            bound: max_degree,
        }),
    }
}

/// Decide trace-surjectivity up to the degree bound. With `use_sylow` the
/// search runs in the restriction to a Sylow p-subgroup P and a found
/// P-point `a` lifts to the group-level point `a / [G:P]`.
pub fn is_trace_surjective(
    a: &AlgebraAction,
    max_degree: u32,
    use_sylow: bool,
) -> Result<PointSearchResult, Error> {
    if !use_sylow {
        return find_point(a, max_degree);
    }
    let p = a.field().p();
    let sylow = sylow_subgroup(a.group(), p)?;
    if sylow.order() == a.group().order() {
        return find_point(a, max_degree);
    }
    let m = sylow.index_in_parent() as u64;
    let (restricted, _) = restrict_action(a, &sylow)?;
    let inner = find_point(&restricted, max_degree)?;
    match inner.status {
        PointStatus::Found => {
            let w = inner.witness.unwrap();
            let lifted = w.scale(a.field().inv(m)?);
            if trace_full(a, &lifted)? != Polynomial::one(a.field()) {
                return Err(Error::Invalid("lifted point failed re-verification".into()));
            }
            Ok(PointSearchResult {
                status: PointStatus::Found,
                witness: Some(lifted),
                bound: max_degree,
            })
        }
        _ => Ok(inner),
    }
}

fn slice_monomials(a: &AlgebraAction, d: u32) -> Result<Vec<Monomial>, Error> {
    if a.is_graded() {
        Ok(monomials_of_degree(a.num_vars(), d))
    } else if a.is_filtration_preserving() {
        Ok(monomials_up_to_degree(a.num_vars(), d))
    } else {
        Err(Error::FiltrationIncreasing)
    }
}

fn from_coeff_vector(field: crate::field::PrimeField, v: &[u64], monos: &[Monomial]) -> Polynomial {
    let mut out = Polynomial::zero(field);
    for (i, m) in monos.iter().enumerate() {
        out = out.add(&Polynomial::monomial(field, m.clone(), v[i]));
    }
    out
}

/// Echelonized basis of the invariants in degree d (graded) or the degree-≤d
/// filtration slice (non-graded, filtration preserving).
pub fn invariant_basis(a: &AlgebraAction, d: u32) -> Result<Vec<Polynomial>, Error> {
    let field = a.field();
    let monos = slice_monomials(a, d)?;
    let dim = monos.len();
    let index: std::collections::HashMap<Monomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let gens = a.generator_elements();
    let mut stacked = Matrix::zero(field, dim * gens.len(), dim);
    for (k, &g) in gens.iter().enumerate() {
        for (i, m) in monos.iter().enumerate() {
            let img = a.act(&Polynomial::monomial(field, m.clone(), 1), g)?;
            // row block k: (S_g - I) transposed acting on coefficient vectors
            for (mono, c) in img.terms() {
                let j = index[mono];
                let r = k * dim + j;
                stacked.set(r, i, field.add(stacked.get(r, i), c));
            }
            let r = k * dim + i;
            stacked.set(r, i, field.sub(stacked.get(r, i), 1));
        }
    }
    let mut span = RowSpan::new(field, dim);
    for v in stacked.nullspace_basis() {
        span.insert(&v);
    }
    Ok(span
        .rows()
        .iter()
        .map(|v| from_coeff_vector(field, v, &monos))
        .collect())
}

pub fn verify_invariant(a: &AlgebraAction, f: &Polynomial) -> Result<bool, Error> {
    for g in a.generator_elements() {
        if &a.act(f, g)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Echelonized basis of the kernel of the full trace on the degree-≤d slice.
pub fn trace_kernel_basis(a: &AlgebraAction, d: u32) -> Result<Vec<Polynomial>, Error> {
    let field = a.field();
    let monos = slice_monomials(a, d)?;
    let dim = monos.len();
    let index: std::collections::HashMap<Monomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut t = Matrix::zero(field, dim, dim);
    for (i, m) in monos.iter().enumerate() {
        let tr = trace_full(a, &Polynomial::monomial(field, m.clone(), 1))?;
        for (mono, c) in tr.terms() {
            t.set(index[mono], i, c);
        }
    }
    let mut span = RowSpan::new(field, dim);
    for v in t.nullspace_basis() {
        span.insert(&v);
    }
    Ok(span
        .rows()
        .iter()
        .map(|v| from_coeff_vector(field, v, &monos))
        .collect())
}

/// Whether `target` lies in the linear span of all products of the given
/// generators with total degree at most `degree_cap`. A negative answer
/// only rules out this cap.
pub fn subalgebra_contains(
    generators: &[Polynomial],
    target: &Polynomial,
    degree_cap: u32,
) -> Result<bool, Error> {
    let field = match generators.first() {
        Some(g) => g.field(),
        None => target.field(),
    };
    if let Some(td) = target.degree() {
        if td > degree_cap {
            return Err(Error::CapTooSmall {
                cap: degree_cap,
                target: td,
            });
        }
    }
    let nvars = generators
        .iter()
        .chain(std::iter::once(target))
        .filter_map(|p| p.max_var())
        .max()
        .map_or(0, |v| v + 1);
    let monos = monomials_up_to_degree(nvars, degree_cap);
    let index: std::collections::HashMap<Monomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut span = RowSpan::new(field, monos.len());
    let vec_of = |p: &Polynomial| {
        let mut v = vec![0u64; monos.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c;
        }
        v
    };
    // positive-degree generators only: scalar factors never enlarge a span
    let gens: Vec<&Polynomial> = generators
        .iter()
        .filter(|g| g.degree().unwrap_or(0) > 0)
        .collect();
    span.insert(&vec_of(&Polynomial::one(field)));
    let mut frontier = vec![Polynomial::one(field)];
    while let Some(q) = frontier.pop() {
        for g in &gens {
            let r = q.mul(g);
            if r.degree().unwrap_or(0) > degree_cap {
                continue;
            }
            if span.insert(&vec_of(&r)) {
                frontier.push(r);
            }
        }
    }
    Ok(span.contains(&vec_of(target)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::{c2_group, c4_unitriangular, s3_group};
    use crate::action::{d_reg, linear_action};
    use crate::field::PrimeField;
    use crate::group::GroupTable;
    use crate::poly::parse_poly;
    

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn c4_trace_of_x1x2x3_is_x1_cubed() {
        let a = c4_unitriangular();
        let f = parse_poly("x1*x2*x3", a.vars(), a.field()).unwrap();
        let tr = trace_full(&a, &f).unwrap();
        assert_eq!(tr, parse_poly("x1^3", a.vars(), a.field()).unwrap());
        assert!(verify_invariant(&a, &tr).unwrap());
    }

    #[test]
    fn c4_trace_of_constants_vanishes() {
        let a = c4_unitriangular();
        let one = Polynomial::one(a.field());
        assert!(trace_full(&a, &one).unwrap().is_zero());
    }

    #[test]
    fn d_reg_variable_has_trace_one() {
        let a = d_reg(c2_group(), f2()).unwrap();
        let y = Polynomial::var(f2(), 0);
        assert_eq!(trace_full(&a, &y).unwrap(), Polynomial::one(f2()));
        let f3 = PrimeField::new(3).unwrap();
        let c3 = GroupTable::from_permutations(&[vec![1, 2, 0]], 64).unwrap();
        let b = d_reg(c3, f3).unwrap();
        assert_eq!(
            trace_full(&b, &Polynomial::var(f3, 0)).unwrap(),
            Polynomial::one(f3)
        );
    }

    #[test]
    fn rel_trace_c4_over_the_square() {
        let a = c4_unitriangular();
        let g = a.group().clone();
        let h = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let y = Subgroup::full(g);
        let x2 = parse_poly("x2", a.vars(), a.field()).unwrap();
        assert_eq!(
            rel_trace(&a, &h, &y, &x2).unwrap(),
            parse_poly("x1", a.vars(), a.field()).unwrap()
        );
    }

    #[test]
    fn rel_trace_degenerate_cases() {
        let a = c4_unitriangular();
        let g = a.group().clone();
        let h = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let x2 = parse_poly("x2", a.vars(), a.field()).unwrap();
        // H = Y: a single coset
        assert_eq!(rel_trace(&a, &h, &h, &x2).unwrap(), x2);
        // H = {e}: the full trace over Y
        let trivial = Subgroup::trivial(g.clone());
        let full = Subgroup::full(g);
        let f = parse_poly("x1*x2*x3", a.vars(), a.field()).unwrap();
        assert_eq!(
            rel_trace(&a, &trivial, &full, &f).unwrap(),
            trace_full(&a, &f).unwrap()
        );
    }

    #[test]
    fn rel_trace_rejects_non_invariant_input() {
        let a = c4_unitriangular();
        let g = a.group().clone();
        let h = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let y = Subgroup::full(g);
        let x3 = parse_poly("x3", a.vars(), a.field()).unwrap();
        assert!(matches!(
            rel_trace(&a, &h, &y, &x3),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn rel_trace_is_cross_section_independent() {
        let a = c4_unitriangular();
        let g = a.group().clone();
        let h = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let y = Subgroup::full(g.clone());
        let x2 = parse_poly("x2", a.vars(), a.field()).unwrap();
        let first = rel_trace_with_reps(&a, &h, &y, &x2, &[0, 1]).unwrap();
        let second = rel_trace_with_reps(&a, &h, &y, &x2, &[0, 3]).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn trace_transitivity_through_a_subgroup() {
        let a = c4_unitriangular();
        let g = a.group().clone();
        let h = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let trivial = Subgroup::trivial(g.clone());
        let full = Subgroup::full(g);
        for text in ["x3", "x2*x3", "x1+x2^2", "x1*x2*x3"] {
            let f = parse_poly(text, a.vars(), a.field()).unwrap();
            let inner = rel_trace(&a, &trivial, &Subgroup::new(a.group().clone(), vec![0, 2]).unwrap(), &f).unwrap();
            let outer = rel_trace(&a, &h, &full, &inner).unwrap();
            assert_eq!(outer, trace_full(&a, &f).unwrap());
        }
    }

    #[test]
    fn trace_is_invariant_linear() {
        let a = c4_unitriangular();
        let field = a.field();
        let u = parse_poly("x1*x2+x2^2", a.vars(), field).unwrap();
        assert!(verify_invariant(&a, &u).unwrap());
        for text in ["x3", "x2*x3", "x1*x3^2"] {
            let f = parse_poly(text, a.vars(), field).unwrap();
            assert_eq!(
                trace_full(&a, &u.mul(&f)).unwrap(),
                u.mul(&trace_full(&a, &f).unwrap())
            );
        }
    }

    #[test]
    fn find_point_on_the_affine_line() {
        let a = d_reg(c2_group(), f2()).unwrap();
        let r = find_point(&a, 1).unwrap();
        assert_eq!(r.status, PointStatus::Found);
        let w = r.witness.unwrap();
        assert_eq!(trace_full(&a, &w).unwrap(), Polynomial::one(f2()));
    }

    #[test]
    fn graded_modular_action_has_no_point() {
        let a = c4_unitriangular();
        let r = find_point(&a, 5).unwrap();
        assert_eq!(r.status, PointStatus::NoneGradedExact);
        assert!(r.witness.is_none());
    }

    #[test]
    fn dehomogenized_c4_has_a_degree_two_point() {
        let a = crate::action::dehomogenize(&c4_unitriangular(), &Polynomial::var(f2(), 0))
            .unwrap();
        assert_eq!(find_point(&a, 1).unwrap().status, PointStatus::InconclusiveAtBound);
        let r = find_point(&a, 2).unwrap();
        assert_eq!(r.status, PointStatus::Found);
        let w = r.witness.unwrap();
        assert_eq!(trace_full(&a, &w).unwrap(), Polynomial::one(f2()));
        // the product of the two variables is one explicit point
        let x2x3 = parse_poly("x2*x3", a.vars(), f2()).unwrap();
        assert_eq!(trace_full(&a, &x2x3).unwrap(), Polynomial::one(f2()));
    }

    #[test]
    fn coprime_order_point_is_a_constant() {
        let f3 = PrimeField::new(3).unwrap();
        let vars = vec!["u".to_string()];
        let gen = vec![Polynomial::var(f3, 0)];
        let a = AlgebraAction::make_action(f3, vars, c2_group(), &[gen]).unwrap();
        let r = find_point(&a, 0).unwrap();
        assert_eq!(r.status, PointStatus::Found);
        assert_eq!(r.witness.unwrap(), Polynomial::constant(f3, 2));
    }

    #[test]
    fn sylow_reduction_lifts_a_point_for_s3() {
        let f3 = PrimeField::new(3).unwrap();
        let a = d_reg(s3_group(), f3).unwrap();
        let r = is_trace_surjective(&a, 1, true).unwrap();
        assert_eq!(r.status, PointStatus::Found);
        let w = r.witness.unwrap();
        assert_eq!(trace_full(&a, &w).unwrap(), Polynomial::one(f3));
        assert!(w.degree().unwrap_or(0) <= 1);
    }

    #[test]
    fn sylow_reduction_detects_graded_obstruction() {
        let f3 = PrimeField::new(3).unwrap();
        let perms = [vec![1usize, 2, 0], vec![1usize, 0, 2]];
        let mats: Vec<Matrix> = perms
            .iter()
            .map(|p| {
                let mut m = Matrix::zero(f3, 3, 3);
                for (i, &j) in p.iter().enumerate() {
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        let a = linear_action(f3, s3_group(), &mats).unwrap();
        let r = is_trace_surjective(&a, 3, true).unwrap();
        assert_eq!(r.status, PointStatus::NoneGradedExact);
    }

    #[test]
    fn c4_invariants_degree_one_and_two() {
        let a = c4_unitriangular();
        let b1 = invariant_basis(&a, 1).unwrap();
        assert_eq!(b1.len(), 1);
        assert_eq!(b1[0], parse_poly("x1", a.vars(), a.field()).unwrap());
        let b2 = invariant_basis(&a, 2).unwrap();
        assert_eq!(b2.len(), 2);
        for f in &b2 {
            assert!(verify_invariant(&a, f).unwrap());
        }
        // f2 lies in the degree-2 invariant space
        let f2poly = parse_poly("x1*x2+x2^2", a.vars(), a.field()).unwrap();
        assert!(subalgebra_contains(&b2, &f2poly, 2).unwrap());
    }

    #[test]
    fn filtered_invariants_of_the_affine_line() {
        let a = d_reg(c2_group(), f2()).unwrap();
        let b = invariant_basis(&a, 1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_constant());
    }

    #[test]
    fn c4_named_invariants_verify() {
        let a = c4_unitriangular();
        let field = a.field();
        for text in [
            "x1*x2+x2^2",
            "x1^2*x3+x1*x2^2+x1*x3^2+x2^3",
            "x1^2*x2*x3+x1^2*x3^2+x1*x2^2*x3+x1*x2*x3^2+x2^2*x3^2+x3^4",
        ] {
            let f = parse_poly(text, a.vars(), field).unwrap();
            assert!(verify_invariant(&a, &f).unwrap(), "{}", text);
        }
        let x2 = parse_poly("x2", a.vars(), field).unwrap();
        assert!(!verify_invariant(&a, &x2).unwrap());
    }

    #[test]
    fn c4_fundamental_relation_vanishes() {
        let a = c4_unitriangular();
        let field = a.field();
        let vars = a.vars().to_vec();
        let x1 = parse_poly("x1", &vars, field).unwrap();
        let f2p = parse_poly("x1*x2+x2^2", &vars, field).unwrap();
        let f3p = parse_poly("x1^2*x3+x1*x2^2+x1*x3^2+x2^3", &vars, field).unwrap();
        let f4p = parse_poly(
            "x1^2*x2*x3+x1^2*x3^2+x1*x2^2*x3+x1*x2*x3^2+x2^2*x3^2+x3^4",
            &vars,
            field,
        )
        .unwrap();
        let relation = x1
            .pow(2)
            .mul(&f4p)
            .sub(&f2p.pow(3))
            .sub(&x1.mul(&f2p).mul(&f3p))
            .sub(&f3p.pow(2));
        assert!(relation.is_zero());
        // and the monomial generators span anything of bounded degree
        let gens = vec![x1.clone(), f2p, f3p, f4p];
        assert!(subalgebra_contains(&gens, &x1.pow(3), 6).unwrap());
    }

    #[test]
    fn subalgebra_membership_basics() {
        let field = f2();
        let x = Polynomial::var(field, 0);
        let y = Polynomial::var(field, 1);
        let gens = vec![x.clone(), y.clone()];
        let target = parse_poly(
            "x^2*y + y^3 + 1",
            &["x".to_string(), "y".to_string()],
            field,
        )
        .unwrap();
        assert!(subalgebra_contains(&gens, &target, 3).unwrap());
        assert!(matches!(
            subalgebra_contains(&gens, &target, 2),
            Err(Error::CapTooSmall { .. })
        ));
        // x is not in the span of powers of y
        assert!(!subalgebra_contains(&[y], &x, 4).unwrap());
    }

    #[test]
    fn trace_kernel_on_the_affine_line() {
        let a = d_reg(c2_group(), f2()).unwrap();
        let basis = trace_kernel_basis(&a, 1).unwrap();
        // span {1, y} with tr(1) = 0, tr(y) = 1: kernel is the constants
        assert_eq!(basis.len(), 1);
        for f in &basis {
            assert!(trace_full(&a, f).unwrap().is_zero());
        }
    }

    #[test]
    fn invariants_come_from_the_trace_when_a_point_exists() {
        let a = crate::action::dehomogenize(&c4_unitriangular(), &Polynomial::var(f2(), 0))
            .unwrap();
        let lambda = parse_poly("x2*x3", a.vars(), a.field()).unwrap();
        for d in 0..=2 {
            for u in invariant_basis(&a, d).unwrap() {
                assert_eq!(trace_full(&a, &u.mul(&lambda)).unwrap(), u);
            }
        }
    }
}
