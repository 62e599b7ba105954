//! Separability witnesses for the extension of invariants, and the p-local
//! freeness test via stabilizers of rational points over extension fields.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::AlgebraAction;
use crate::error::Error;
use crate::field::ExtField;
use crate::group::Subgroup;
use crate::poly::{monomials_up_to_degree, Monomial, Polynomial};

/// Pairs (x_i, y_i) with Σ x_i·(y_i)h = 1 at the identity and 0 elsewhere.
#[derive(Debug, Clone)]
pub struct ChrWitness {
    pub pairs: Vec<(Polynomial, Polynomial)>,
}

pub fn verify_chr(a: &AlgebraAction, h: &Subgroup, pairs: &[(Polynomial, Polynomial)]) -> Result<bool, Error> {
    if !h.parent().same_multiplication(a.group()) {
        return Err(Error::GroupMismatch);
    }
    let field = a.field();
    for &he in h.elements() {
        let mut sum = Polynomial::zero(field);
        for (x, y) in pairs {
            sum = sum.add(&x.mul(&a.act(y, he)?));
        }
        let expected = if he == 0 {
            Polynomial::one(field)
        } else {
            Polynomial::zero(field)
        };
        if sum != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixes the y-side to the monomials of degree ≤ y_degree, which makes the
/// defining identity linear in the coefficients of the x_i (degree ≤
/// x_degree). Complete relative to the bounds; None means none at bound.
pub fn search_chr(
    a: &AlgebraAction,
    h: &Subgroup,
    y_degree: u32,
    x_degree: u32,
) -> Result<Option<ChrWitness>, Error> {
    if !h.parent().same_multiplication(a.group()) {
        return Err(Error::GroupMismatch);
    }
    let field = a.field();
    let ys: Vec<Monomial> = monomials_up_to_degree(a.num_vars(), y_degree);
    let xs: Vec<Monomial> = monomials_up_to_degree(a.num_vars(), x_degree);
    // products xm·(y_i)h, computed up front so the equation rows can be
    // indexed by every monomial that actually appears
    let mut products = Vec::with_capacity(h.order());
    let mut row_monos = std::collections::BTreeSet::new();
    row_monos.insert(Monomial::one());
    for &he in h.elements() {
        let mut per_y = Vec::with_capacity(ys.len());
        for y in &ys {
            let img = a.act(&Polynomial::monomial(field, y.clone(), 1), he)?;
            let mut per_x = Vec::with_capacity(xs.len());
            for xm in &xs {
                let prod = Polynomial::monomial(field, xm.clone(), 1).mul(&img);
                for (t, _) in prod.terms() {
                    row_monos.insert(t.clone());
                }
                per_x.push(prod);
            }
            per_y.push(per_x);
        }
        products.push(per_y);
    }
    let row_index: Vec<Monomial> = row_monos.into_iter().collect();
    let ncols = ys.len() * xs.len();
    let nrows = h.order() * row_index.len();
    let mut sys = crate::linalg::Matrix::zero(field, nrows, ncols);
    let mut rhs = vec![0u64; nrows];
    for (hk, &he) in h.elements().iter().enumerate() {
        for (ti, t) in row_index.iter().enumerate() {
            let row = hk * row_index.len() + ti;
            for (yi, per_x) in products[hk].iter().enumerate() {
                for (xi, prod) in per_x.iter().enumerate() {
                    sys.set(row, yi * xs.len() + xi, prod.coeff(t));
                }
            }
            if he == 0 && t.total_degree() == 0 {
                rhs[row] = 1;
            }
        }
    }
    let Some(sol) = sys.solve(&rhs)? else {
        return Ok(None);
    };
    let pairs: Vec<(Polynomial, Polynomial)> = ys
        .iter()
        .enumerate()
        .map(|(yi, y)| {
            let mut x = Polynomial::zero(field);
            for (xi, xm) in xs.iter().enumerate() {
                x = x.add(&Polynomial::monomial(field, xm.clone(), sol[yi * xs.len() + xi]));
            }
            (x, Polynomial::monomial(field, y.clone(), 1))
        })
        .filter(|(x, _)| !x.is_zero())
        .collect();
    if !verify_chr(a, h, &pairs)? {
        return Err(Error::Invalid("solver output failed re-verification".into()));
    }
    Ok(Some(ChrWitness { pairs }))
}

pub const POINT_CAP: u64 = 1 << 20;

/// Elements fixing a given point of 𝔽_{p^k}^n coordinatewise.
pub fn stabilizer_of_point(
    a: &AlgebraAction,
    point: &[crate::field::ExtElem],
    ext: &ExtField,
) -> Result<Vec<usize>, Error> {
    if point.len() != a.num_vars() {
        return Err(Error::PointDimension {
            expected: a.num_vars(),
            got: point.len(),
        });
    }
    let mut stab = Vec::new();
    'outer: for g in a.group().elements() {
        for v in 0..a.num_vars() {
            if a.image(g, v).evaluate_point(point, ext)? != point[v] {
                continue 'outer;
            }
        }
        stab.push(g);
    }
    Ok(stab)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StabilizerLevel {
    pub level: u32,
    pub points_checked: u64,
    pub worst_stabilizer_order: usize,
    pub p_locally_free: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StabilizerReport {
    pub levels: Vec<StabilizerLevel>,
    pub p_locally_free: bool,
}

/// Enumerates every point with coordinates in 𝔽_{p^k} for each k ≤ K and
/// checks whether p divides any stabilizer order. A finite-level
/// approximation: a falsifier is conclusive, a clean pass is labeled with
/// its level.
pub fn point_stabilizers(a: &AlgebraAction, ext_degree: u32) -> Result<StabilizerReport, Error> {
    let p = a.field().p();
    let n = a.num_vars() as u32;
    let mut levels = Vec::new();
    for k in 1..=ext_degree {
        let per_coord = (p as u128).pow(k);
        let total = per_coord.pow(n);
        if total > POINT_CAP as u128 {
            return Err(Error::EnumerationCap(POINT_CAP));
        }
        let ext = ExtField::new(p, k)?;
        let coords: Vec<crate::field::ExtElem> = ext.elements().collect();
        let (worst, divisible) = (0..total as u64)
            .into_par_iter()
            .map(|idx| {
                let mut point = Vec::with_capacity(n as usize);
                let mut rem = idx as u128;
                for _ in 0..n {
                    point.push(coords[(rem % per_coord) as usize].clone());
                    rem /= per_coord;
                }
                let order = stabilizer_of_point(a, &point, &ext)?.len();
                Ok::<_, Error>((order, order as u64 % p == 0))
            })
            .try_reduce(
                || (1, false),
                |x: (usize, bool), y| Ok((x.0.max(y.0), x.1 || y.1)),
            )?;
        levels.push(StabilizerLevel {
            level: k,
            points_checked: total as u64,
            worst_stabilizer_order: worst,
            p_locally_free: !divisible,
        });
    }
    let free = levels.iter().all(|l| l.p_locally_free);
    Ok(StabilizerReport {
        levels,
        p_locally_free: free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::{c2_group, c4_unitriangular, s3_group};
    use crate::action::{d_reg, dehomogenize, linear_action};
    use crate::field::PrimeField;
    use crate::group::GroupTable;
    use crate::linalg::Matrix;
    use crate::poly::parse_poly;

    fn c2_dreg() -> AlgebraAction {
        d_reg(c2_group(), PrimeField::new(2).unwrap()).unwrap()
    }

    #[test]
    fn hand_witness_for_the_regular_c2_action() {
        let a = c2_dreg();
        let f = a.field();
        let pairs = vec![
            (
                Polynomial::one(f),
                parse_poly("y1", a.vars(), f).unwrap(),
            ),
            (
                parse_poly("1+y1", a.vars(), f).unwrap(),
                Polynomial::one(f),
            ),
        ];
        assert!(verify_chr(&a, &Subgroup::full(c2_group()), &pairs).unwrap());
        // dropping a pair breaks the identity-component equation
        assert!(!verify_chr(&a, &Subgroup::full(c2_group()), &pairs[..1]).unwrap());
    }

    #[test]
    fn trivial_group_witness() {
        let e = GroupTable::from_permutations(&[vec![0]], 8).unwrap();
        let f = PrimeField::new(2).unwrap();
        let a = linear_action(f, e.clone(), &[Matrix::identity(f, 1)]).unwrap();
        let pairs = vec![(Polynomial::one(f), Polynomial::one(f))];
        assert!(verify_chr(&a, &Subgroup::full(e.clone()), &pairs).unwrap());
        let found = search_chr(&a, &Subgroup::full(e), 0, 0).unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn search_finds_a_witness_for_the_regular_c2_action() {
        let a = c2_dreg();
        let w = search_chr(&a, &Subgroup::full(c2_group()), 1, 1)
            .unwrap()
            .expect("witness at degree (1,1)");
        assert!(verify_chr(&a, &Subgroup::full(c2_group()), &w.pairs).unwrap());
    }

    #[test]
    fn no_witness_at_bound_for_the_graded_unitriangular_action() {
        let a = c4_unitriangular();
        let found = search_chr(&a, &Subgroup::full(a.group().clone()), 2, 2).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn dehomogenized_unitriangular_action_is_fixed_point_free() {
        let g = c4_unitriangular();
        let x1 = parse_poly("x1", g.vars(), g.field()).unwrap();
        let a = dehomogenize(&g, &x1).unwrap();
        let report = point_stabilizers(&a, 1).unwrap();
        assert_eq!(report.levels[0].points_checked, 4);
        assert_eq!(report.levels[0].worst_stabilizer_order, 1);
        assert!(report.p_locally_free);
    }

    #[test]
    fn dehomogenized_action_stays_free_over_extensions() {
        let g = c4_unitriangular();
        let x1 = parse_poly("x1", g.vars(), g.field()).unwrap();
        let a = dehomogenize(&g, &x1).unwrap();
        let report = point_stabilizers(&a, 3).unwrap();
        assert!(report.p_locally_free);
        assert_eq!(report.levels.len(), 3);
        assert_eq!(report.levels[2].points_checked, 64);
    }

    #[test]
    fn diagonal_point_of_the_permutation_action() {
        let f = PrimeField::new(3).unwrap();
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
        let a = linear_action(f, s3_group(), &mats).unwrap();
        let ext = ExtField::new(3, 1).unwrap();
        let one = ext.one();
        let stab = stabilizer_of_point(&a, &[one.clone(), one.clone(), one], &ext).unwrap();
        assert_eq!(stab.len(), 6);
        let report = point_stabilizers(&a, 1).unwrap();
        assert_eq!(report.levels[0].worst_stabilizer_order, 6);
        assert!(!report.p_locally_free);
    }

    #[test]
    fn graded_action_with_dividing_characteristic_has_a_bad_point() {
        // the origin of a graded action is always fixed by everything
        let a = c4_unitriangular();
        let report = point_stabilizers(&a, 1).unwrap();
        assert_eq!(report.levels[0].worst_stabilizer_order, 4);
        assert!(!report.p_locally_free);
    }
}
