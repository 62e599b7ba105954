//! Named check suites over a fixed registry of small worked examples.
//! Every suite is exact and deterministic, so its JSON report can be
//! compared byte for byte across runs and thread counts.

use std::sync::Arc;

use serde::Serialize;

use crate::action::{
    d_reg, dehomogenize, linear_action, restrict_action, AlgebraAction, AlgebraMorphism,
};
use crate::error::Error;
use crate::field::{ExtField, PrimeField};
use crate::galois::{point_stabilizers, search_chr, stabilizer_of_point, verify_chr};
use crate::group::{p_core, CrossSection, GroupTable, Subgroup, DEFAULT_CLOSURE_CAP};
use crate::induction::{
    check_normalized_splitting, chi_adjunction, f_trace, frobenius_embedding, iota1_star,
    pi1_star, psi_adjunction, tensor_counit, tensor_induce, tensor_unit, times_counit,
    times_unit, wreath_inv, wreath_mul, TupleAlgebra, TupleMorphism, WreathElement,
};
use crate::linalg::{Matrix, RowSpan};
use crate::modules::{
    fixed_points, graded_slice_module, is_projective_module, is_simple, regular_module, socle,
    trivial_module, KGModule,
};
use crate::poly::{parse_poly, Polynomial};
use crate::trace::{
    find_point, invariant_basis, is_trace_surjective, subalgebra_contains, trace_full,
    trace_kernel_basis, verify_invariant, PointStatus,
};

pub const FIXTURE_NAMES: [&str; 10] = [
    "c4-paper",
    "c4-dehom",
    "c2-dreg",
    "c3-dreg",
    "s3-perm",
    "s3-dreg",
    "c6-split",
    "adjunction-s3",
    "wreath-s3",
    "modules-catalog",
];

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FixtureReport {
    pub fixture: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Checks(Vec<Check>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn record(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.to_string(),
            status: if ok { "pass" } else { "fail" }.to_string(),
            detail: detail.into(),
        });
    }

    fn finish(self, fixture: &str) -> FixtureReport {
        let passed = self.0.iter().all(|c| c.status == "pass");
        FixtureReport {
            fixture: fixture.to_string(),
            passed,
            checks: self.0,
        }
    }
}

pub fn run_fixture(name: &str) -> Result<FixtureReport, Error> {
    match name {
        "c4-paper" => c4_paper(),
        "c4-dehom" => c4_dehom(),
        "c2-dreg" => c2_dreg(),
        "c3-dreg" => c3_dreg(),
        "s3-perm" => s3_perm(),
        "s3-dreg" => s3_dreg(),
        "c6-split" => c6_split(),
        "adjunction-s3" => adjunction_s3(),
        "wreath-s3" => wreath_s3(),
        "modules-catalog" => modules_catalog(),
        _ => Err(Error::Invalid(format!("unknown fixture: {}", name))),
    }
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn c2_table() -> Arc<GroupTable> {
    GroupTable::from_permutations(&[vec![1, 0]], DEFAULT_CLOSURE_CAP).unwrap()
}

fn c3_table() -> Arc<GroupTable> {
    GroupTable::from_permutations(&[vec![1, 2, 0]], DEFAULT_CLOSURE_CAP).unwrap()
}

fn c4_table() -> Arc<GroupTable> {
    GroupTable::from_permutations(&[vec![1, 2, 3, 0]], DEFAULT_CLOSURE_CAP).unwrap()
}

fn c6_table() -> Arc<GroupTable> {
    GroupTable::from_permutations(&[vec![1, 2, 3, 4, 5, 0]], DEFAULT_CLOSURE_CAP).unwrap()
}

fn s3_table() -> Arc<GroupTable> {
    GroupTable::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_CLOSURE_CAP).unwrap()
}

/// The order-4 unitriangular action on three variables in characteristic 2.
pub fn c4_action() -> AlgebraAction {
    let field = f2();
    let vars: Vec<String> = ["x1", "x2", "x3"].map(String::from).to_vec();
    let images = vec![vec![
        parse_poly("x1", &vars, field).unwrap(),
        parse_poly("x1+x2", &vars, field).unwrap(),
        parse_poly("x2+x3", &vars, field).unwrap(),
    ]];
    AlgebraAction::make_action(field, vars, c4_table(), &images).unwrap()
}

fn s3_perm_action() -> AlgebraAction {
    let field = f3();
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
    linear_action(field, s3_table(), &mats).unwrap()
}

fn a3_section() -> CrossSection {
    CrossSection::greedy(Subgroup::new(s3_table(), vec![0, 1, 3]).unwrap())
}

fn c3_dreg_base() -> Arc<AlgebraAction> {
    Arc::new(d_reg(c3_table(), f3()).unwrap())
}

/// Fixed-space dimension of the degree-d slice, computed by ranking the
/// stacked constraint matrix. Deliberately a different code path from
/// invariant_basis.
fn brute_force_invariant_dim(a: &AlgebraAction, d: u32) -> Result<usize, Error> {
    let (slice, monos) = graded_slice_module(a, d)?;
    let field = a.field();
    let n = monos.len();
    let order = slice.group().order();
    let mut stacked = Matrix::zero(field, n * order, n);
    for g in 0..order {
        for i in 0..n {
            for j in 0..n {
                let mut v = slice.rho(g).get(j, i);
                if i == j {
                    v = field.sub(v, 1);
                }
                stacked.set(g * n + i, j, v);
            }
        }
    }
    Ok(n - stacked.rank())
}

fn c4_paper() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let a = c4_action();
    let field = a.field();
    checks.record(
        "action-validates-and-is-graded",
        a.is_graded(),
        "order-4 unitriangular action on 3 variables over GF(2)",
    );

    let f2p = parse_poly("x1*x2+x2^2", a.vars(), field)?;
    let f3p = parse_poly("x1^2*x3+x1*x2^2+x1*x3^2+x2^3", a.vars(), field)?;
    let f4p = parse_poly(
        "x1^2*x2*x3+x1^2*x3^2+x1*x2^2*x3+x1*x2*x3^2+x2^2*x3^2+x3^4",
        a.vars(),
        field,
    )?;
    let all_invariant = verify_invariant(&a, &f2p)?
        && verify_invariant(&a, &f3p)?
        && verify_invariant(&a, &f4p)?;
    checks.record(
        "named-invariants-verify",
        all_invariant,
        "degree 2, 3 and 4 generators fixed by the full group",
    );

    let x1 = Polynomial::var(field, 0);
    let relation = x1
        .pow(2)
        .mul(&f4p)
        .sub(&f2p.pow(3))
        .sub(&x1.mul(&f2p).mul(&f3p))
        .sub(&f3p.pow(2));
    checks.record(
        "generator-relation-vanishes",
        relation.is_zero(),
        "x1^2*f4 - f2^3 - x1*f2*f3 - f3^2 = 0",
    );

    let t = trace_full(&a, &parse_poly("x1*x2*x3", a.vars(), field)?)?;
    checks.record(
        "trace-of-top-monomial",
        t == x1.pow(3),
        format!("trace(x1*x2*x3) = {}", t.render(a.vars())),
    );

    let mut dims = Vec::new();
    let mut brute = Vec::new();
    for d in 1..=6 {
        dims.push(invariant_basis(&a, d)?.len());
        brute.push(brute_force_invariant_dim(&a, d)?);
    }
    checks.record(
        "invariant-dimensions-match-brute-force",
        dims == brute && dims == vec![1, 2, 3, 5, 6, 8],
        format!("degrees 1..6: {:?} vs rank method {:?}", dims, brute),
    );

    let witness = search_chr(&a, &Subgroup::full(a.group().clone()), 2, 2)?;
    checks.record(
        "separability-search-none-at-bound",
        witness.is_none(),
        "no witness with both degrees bounded by 2",
    );
    Ok(checks.finish("c4-paper"))
}

fn c4_dehom() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let graded = c4_action();
    let field = graded.field();
    let a = dehomogenize(&graded, &Polynomial::var(field, 0))?;

    let result = find_point(&a, 2)?;
    let found = matches!(result.status, PointStatus::Found);
    let witness = result.witness.clone();
    let witness_ok = match &witness {
        Some(w) => trace_full(&a, w)? == Polynomial::one(field),
        None => false,
    };
    let x2x3 = parse_poly("x2*x3", a.vars(), field)?;
    let hand_ok = trace_full(&a, &x2x3)? == Polynomial::one(field);
    checks.record(
        "point-found-and-verified",
        found && witness_ok && hand_ok,
        "searched witness and x2*x3 both have trace 1",
    );

    let report = point_stabilizers(&a, 3)?;
    let all_trivial = report
        .levels
        .iter()
        .all(|l| l.worst_stabilizer_order == 1 && l.p_locally_free);
    checks.record(
        "stabilizers-trivial-at-levels-1-to-3",
        all_trivial && report.p_locally_free,
        format!(
            "points checked per level: {:?}",
            report.levels.iter().map(|l| l.points_checked).collect::<Vec<_>>()
        ),
    );

    let mut gens = vec![witness.unwrap_or(x2x3)];
    gens.extend(trace_kernel_basis(&a, 2)?);
    let mut all_member = true;
    for v in 0..a.num_vars() {
        if !subalgebra_contains(&gens, &Polynomial::var(field, v), 4)? {
            all_member = false;
        }
    }
    checks.record(
        "variables-generated-by-point-and-trace-kernel",
        all_member,
        "membership with generator degrees <= 2 and product cap 4",
    );
    Ok(checks.finish("c4-dehom"))
}

fn dreg_common(checks: &mut Checks, a: &AlgebraAction) -> Result<(), Error> {
    let field = a.field();
    checks.record(
        "action-validates",
        a.is_filtration_preserving() && !a.is_graded(),
        "affine regular action, filtration-preserving",
    );
    let tr = trace_full(a, &Polynomial::var(field, 0))?;
    checks.record(
        "trace-of-first-variable-is-one",
        tr == Polynomial::one(field),
        format!("trace = {}", tr.render(a.vars())),
    );
    let lifted = is_trace_surjective(a, 1, true)?;
    let ok = matches!(lifted.status, PointStatus::Found)
        && match &lifted.witness {
            Some(w) => trace_full(a, w)? == Polynomial::one(field),
            None => false,
        };
    checks.record(
        "point-via-sylow-restriction-and-lift",
        ok,
        "restricted point scaled by the inverse index has full trace 1",
    );
    Ok(())
}

fn c2_dreg() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let field = f2();
    let a = d_reg(c2_table(), field)?;
    dreg_common(&mut checks, &a)?;

    let full = Subgroup::full(a.group().clone());
    let pairs = vec![
        (Polynomial::one(field), parse_poly("y1", a.vars(), field)?),
        (parse_poly("1+y1", a.vars(), field)?, Polynomial::one(field)),
    ];
    checks.record(
        "hand-separability-witness-verifies",
        verify_chr(&a, &full, &pairs)?,
        "pairs {(1, y), (1+y, 1)}",
    );

    let searched = search_chr(&a, &full, 1, 1)?;
    let search_ok = match &searched {
        Some(w) => verify_chr(&a, &full, &w.pairs)?,
        None => false,
    };
    checks.record(
        "separability-search-finds-witness",
        search_ok,
        "degree bounds (1, 1), output re-verified",
    );

    let point = find_point(&a, 1)?.witness.ok_or(Error::Invalid(
        "regular algebra of C2 must have a point".into(),
    ))?;
    let mut gens = vec![point];
    gens.extend(trace_kernel_basis(&a, 2)?);
    let all_member = (0..a.num_vars())
        .map(|v| subalgebra_contains(&gens, &Polynomial::var(field, v), 4))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|b| b);
    checks.record(
        "variables-generated-by-point-and-trace-kernel",
        all_member,
        "membership with generator degrees <= 2 and product cap 4",
    );
    Ok(checks.finish("c2-dreg"))
}

fn c3_dreg() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let field = f3();
    let a = d_reg(c3_table(), field)?;
    dreg_common(&mut checks, &a)?;

    // induced points over the index-2 embedding into the symmetric group
    let base = c3_dreg_base();
    let cs = a3_section();
    let y1 = Polynomial::var(field, 0);
    let m_inv = field.inv(2)?;

    let ind = tensor_induce(&base, &cs)?;
    let candidate = Polynomial::var(field, 0).scale(m_inv);
    let tensor_ok = trace_full(&ind, &candidate)? == Polynomial::one(field);
    checks.record(
        "tensor-induced-point-has-trace-one",
        tensor_ok,
        "slot-e embedding of the base point, scaled by the inverse index",
    );

    let tuples = TupleAlgebra::new(base.clone(), cs)?;
    let diag = tuples.scale(&tuples.const_tuple(&y1), m_inv);
    let product_ok = tuples.trace(&diag)? == tuples.unit_tuple();
    checks.record(
        "product-induced-point-has-trace-one",
        product_ok,
        "diagonal tuple of the base point, scaled by the inverse index",
    );
    Ok(checks.finish("c3-dreg"))
}

fn s3_perm() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let a = s3_perm_action();
    let field = a.field();
    checks.record(
        "action-validates-and-is-graded",
        a.is_graded(),
        "coordinate permutation action on 3 variables over GF(3)",
    );

    let basis = invariant_basis(&a, 1)?;
    let line = parse_poly("x1+x2+x3", a.vars(), field)?;
    checks.record(
        "fixed-line-in-degree-one",
        basis.len() == 1 && basis[0] == line,
        "invariants of degree 1 are spanned by x1+x2+x3",
    );

    let r = find_point(&a, 3)?;
    checks.record(
        "no-point-in-graded-dividing-characteristic",
        matches!(r.status, PointStatus::NoneGradedExact),
        "graded action with 3 dividing the group order has trace in the maximal ideal",
    );

    let ext = ExtField::new(3, 1)?;
    let one = ext.one();
    let stab = stabilizer_of_point(&a, &[one.clone(), one.clone(), one], &ext)?;
    let report = point_stabilizers(&a, 1)?;
    checks.record(
        "diagonal-point-stabilizer-is-everything",
        stab.len() == 6 && report.levels[0].worst_stabilizer_order == 6 && !report.p_locally_free,
        "the all-ones point is fixed by the whole group",
    );

    let simples = vec![trivial_module(s3_table(), field), sign_module_s3(field)];
    let soc = crate::modules::algebra_socle(&a, 1, &simples)?;
    checks.record(
        "socle-of-degree-one-slice-is-the-fixed-line",
        soc[1].len() == 1 && soc[1][0] == line,
        "socle generators of the linear slice",
    );
    Ok(checks.finish("s3-perm"))
}

fn s3_dreg() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let a = d_reg(s3_table(), f3())?;
    dreg_common(&mut checks, &a)?;
    Ok(checks.finish("s3-dreg"))
}

fn c6_split() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let base = c3_dreg_base();
    let h = Subgroup::new(c6_table(), vec![0, 2, 4])?;
    let cs = CrossSection::greedy(h);
    let report = check_normalized_splitting(&base, &cs)?;
    checks.record(
        "cross-section-is-normalized",
        report.normalized,
        "the index-2 cross-section of the order-3 subgroup is stable under conjugation",
    );
    checks.record(
        "slot-collapse-is-equivariant",
        report.mu_equivariant,
        "collapsing all slots onto the base commutes with the subgroup action",
    );
    checks.record(
        "diagonal-is-equivariant",
        report.const_equivariant,
        "the diagonal into the product induction commutes with the subgroup action",
    );
    Ok(checks.finish("c6-split"))
}

fn sampled_h_points(res_b: &AlgebraAction, count: usize) -> Result<Vec<Polynomial>, Error> {
    let r = find_point(res_b, 1)?;
    let c0 = r
        .witness
        .ok_or(Error::Invalid("restricted algebra must have a point".into()))?;
    let kernel = trace_kernel_basis(res_b, 1)?;
    let mut out = vec![c0.clone()];
    for k in kernel.iter().take(count - 1) {
        out.push(c0.add(k));
    }
    Ok(out)
}

fn sampled_res_morphisms(
    b: &Arc<AlgebraAction>,
    a: &Arc<AlgebraAction>,
    cs: &CrossSection,
) -> Result<Vec<AlgebraMorphism>, Error> {
    // maps res B -> A for B free on variables y_g (g != e): pick the image
    // on one variable per left-coset orbit, extend equivariantly, and fix
    // the wrap constraint with a trace-one correction
    let parent = cs.subgroup().parent().clone();
    let to_parent = cs.subgroup().elements().to_vec();
    let local_of = |e: usize| to_parent.binary_search(&e).unwrap();
    let field = a.field();
    let (res_b, _) = restrict_action(b, cs.subgroup())?;
    let res_b = Arc::new(res_b);
    let h_elems: Vec<usize> = cs.subgroup().elements().to_vec();
    let mut out = Vec::new();
    for b_choice in [
        Polynomial::zero(field),
        Polynomial::var(field, 0),
        Polynomial::var(field, 1),
    ] {
        let mut tr_b_total = Polynomial::zero(field);
        let mut images = vec![Polynomial::zero(field); parent.order() - 1];
        let mut assigned = vec![false; parent.order() - 1];
        for g in parent.elements().filter(|&g| g != 0) {
            if assigned[g - 1] || cs.subgroup().contains(g) {
                continue;
            }
            for &h in &h_elems {
                let gh = parent.mult(g, h);
                images[gh - 1] = a.act(&b_choice, local_of(h))?;
                assigned[gh - 1] = true;
                tr_b_total = tr_b_total.add(&images[gh - 1]);
            }
        }
        let deficit = Polynomial::one(field).sub(&tr_b_total);
        let a_img = Polynomial::var(field, 0).mul(&deficit);
        for &h in h_elems.iter().filter(|&&h| h != 0) {
            images[h - 1] = a.act(&a_img, local_of(h))?;
        }
        let alpha = AlgebraMorphism::new(res_b.clone(), a.clone(), images)?;
        out.push(alpha);
    }
    Ok(out)
}

fn adjunction_s3() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let a = c3_dreg_base();
    let cs = a3_section();
    let field = f3();

    let ind = Arc::new(tensor_induce(&a, &cs)?);
    let (res_ind, _) = restrict_action(&ind, cs.subgroup())?;
    let res_ind = Arc::new(res_ind);
    let points = sampled_h_points(&res_ind, 3)?;
    let mut chi_ok = points.len() >= 3;
    for c in &points {
        let images: Vec<Polynomial> = (1..=2)
            .map(|h_local| res_ind.act(c, h_local))
            .collect::<Result<Vec<_>, _>>()?;
        let alpha = AlgebraMorphism::new(a.clone(), res_ind.clone(), images)?;
        let beta = chi_adjunction(&a, &cs, &ind, &ind, &alpha)?;
        let back = iota1_star(&a, &cs, &beta)?;
        if back.var_images() != alpha.var_images() {
            chi_ok = false;
        }
    }
    checks.record(
        "left-adjunction-roundtrips-on-sampled-morphisms",
        chi_ok,
        "3 point-induced maps recover themselves after extension and slot-e restriction",
    );

    let u = tensor_unit(&a, &cs, &ind)?;
    let beta = chi_adjunction(&a, &cs, &ind, &ind, &u)?;
    let unit_ok = beta
        .var_images()
        .iter()
        .enumerate()
        .all(|(v, img)| img == &Polynomial::var(field, v))
        && iota1_star(&a, &cs, &beta)?.var_images() == u.var_images();
    checks.record(
        "extension-of-the-unit-is-the-identity",
        unit_ok,
        "the adjoint of the slot-e embedding fixes every variable",
    );

    let b = Arc::new(d_reg(s3_table(), field)?);
    let morphisms = sampled_res_morphisms(&b, &a, &cs)?;
    let mut psi_ok = morphisms.len() >= 3;
    for alpha in &morphisms {
        let m = psi_adjunction(&b, &cs, alpha)?;
        let back = pi1_star(&b, &cs, &m)?;
        if back.var_images() != alpha.var_images() {
            psi_ok = false;
        }
    }
    checks.record(
        "right-adjunction-roundtrips-on-sampled-morphisms",
        psi_ok,
        "3 equivariant maps recover themselves after extension and slot-e projection",
    );

    let un = times_unit(&b, &cs)?;
    let triangle_ok = {
        let u2 = tensor_unit(&a, &cs, &ind)?;
        let beta2 = chi_adjunction(&a, &cs, &ind, &ind, &u2)?;
        let tensor_side = beta2
            .var_images()
            .iter()
            .enumerate()
            .all(|(v, img)| img == &Polynomial::var(field, v));
        let product_side = un
            .var_images()
            .iter()
            .enumerate()
            .all(|(v, tuple)| times_counit(tuple) == Polynomial::var(field, v));
        tensor_side && product_side
    };
    checks.record(
        "triangle-identities-hold",
        triangle_ok,
        "counit after induced unit is the identity on both inductions",
    );

    let f_ok = {
        let big = Arc::new(tensor_induce(&a, &cs)?);
        let (res_b2, _) = restrict_action(&big, cs.subgroup())?;
        let res_b2 = Arc::new(res_b2);
        let (ind2, c) = tensor_counit(&big, &cs)?;
        let u3 = times_unit(&big, &cs)?;
        let images: Vec<Vec<Polynomial>> = c
            .var_images()
            .iter()
            .map(|img| u3.apply(img))
            .collect::<Result<Vec<_>, _>>()?;
        let target = TupleAlgebra::new(res_b2.clone(), cs.clone())?;
        let alpha = TupleMorphism::new(ind2.clone(), target, images)?;
        let t = f_trace(&res_b2, &res_b2, &alpha)?;
        t.var_images()
            .iter()
            .enumerate()
            .all(|(v, img)| img == &Polynomial::var(field, v))
    };
    checks.record(
        "trace-of-unit-counit-composite-is-identity",
        f_ok,
        "collapsing the composite along both adjunctions gives the identity map",
    );
    Ok(checks.finish("adjunction-s3"))
}

fn wreath_s3() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let g = s3_table();
    let cs = a3_section();

    let rho_sigma = frobenius_embedding(&cs, 1);
    let rho_t = frobenius_embedding(&cs, 2);
    let values_ok = rho_sigma.base == vec![1, 3]
        && rho_sigma.perm == vec![0, 1]
        && rho_t.base == vec![0, 0]
        && rho_t.perm == vec![1, 0];
    checks.record(
        "embedding-values-on-generators",
        values_ok,
        "3-cycle lands in the base, the transposition swaps the slots",
    );

    let mut homo_ok = true;
    for x in g.elements() {
        for y in g.elements() {
            let lhs = wreath_mul(&g, &frobenius_embedding(&cs, x), &frobenius_embedding(&cs, y));
            if lhs != frobenius_embedding(&cs, g.mult(x, y)) {
                homo_ok = false;
            }
        }
    }
    checks.record(
        "embedding-is-a-homomorphism-on-all-36-pairs",
        homo_ok,
        "exhaustive multiplication check",
    );

    let h = Subgroup::new(g.clone(), vec![0, 1, 3])?;
    let cs2 = CrossSection::with_reps(h, vec![0, 4])?;
    let hbar = WreathElement {
        base: (0..cs.len())
            .map(|i| g.mult(cs2.reps()[i], g.inv(cs.reps()[i])))
            .collect(),
        perm: (0..cs.len()).collect(),
    };
    let mut conj_ok = true;
    for e in g.elements() {
        let conj = wreath_mul(
            &g,
            &wreath_mul(&g, &hbar, &frobenius_embedding(&cs, e)),
            &wreath_inv(&g, &hbar),
        );
        if conj != frobenius_embedding(&cs2, e) {
            conj_ok = false;
        }
    }
    checks.record(
        "cross-section-change-is-an-inner-twist",
        conj_ok,
        "second cross-section obtained by conjugating with the slot shift",
    );

    let base = c3_dreg_base();
    let report = check_normalized_splitting(&base, &cs)?;
    checks.record(
        "non-normalized-cross-section-breaks-the-collapse",
        !report.normalized && !report.mu_equivariant,
        "the transposition does not normalize the cross-section, and the slot collapse fails",
    );
    Ok(checks.finish("wreath-s3"))
}

fn sign_module_s3(field: PrimeField) -> KGModule {
    let minus = Matrix::from_rows(field, vec![vec![field.neg(1)]]).unwrap();
    let plus = Matrix::identity(field, 1);
    KGModule::make_module(s3_table(), field, &[plus, minus]).unwrap()
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub p: u64,
    pub group: Arc<GroupTable>,
    pub simples: Vec<KGModule>,
}

/// Small groups with a verified list of their simple modules in the given
/// characteristic.
pub fn simples_catalog() -> Vec<CatalogEntry> {
    let mk1 = |g: &Arc<GroupTable>, field: PrimeField, entries: &[u64]| {
        let mats: Vec<Matrix> = entries
            .iter()
            .map(|&e| Matrix::from_rows(field, vec![vec![e]]).unwrap())
            .collect();
        KGModule::make_module(g.clone(), field, &mats).unwrap()
    };
    let p2 = f2();
    let p3 = f3();
    let c2 = c2_table();
    let c3 = c3_table();
    let c4 = c4_table();
    let c6 = c6_table();
    let s3 = s3_table();

    let standard_s3_gf2 = KGModule::make_module(
        s3.clone(),
        p2,
        &[
            Matrix::from_rows(p2, vec![vec![0, 1], vec![1, 1]]).unwrap(),
            Matrix::from_rows(p2, vec![vec![1, 0], vec![1, 1]]).unwrap(),
        ],
    )
    .unwrap();
    let companion_c3_gf2 = KGModule::make_module(
        c3.clone(),
        p2,
        &[Matrix::from_rows(p2, vec![vec![0, 1], vec![1, 1]]).unwrap()],
    )
    .unwrap();

    vec![
        CatalogEntry {
            name: "c2-gf2",
            p: 2,
            group: c2.clone(),
            simples: vec![trivial_module(c2.clone(), p2)],
        },
        CatalogEntry {
            name: "c2-gf3",
            p: 3,
            group: c2.clone(),
            simples: vec![trivial_module(c2.clone(), p3), mk1(&c2, p3, &[2])],
        },
        CatalogEntry {
            name: "c3-gf3",
            p: 3,
            group: c3.clone(),
            simples: vec![trivial_module(c3.clone(), p3)],
        },
        CatalogEntry {
            name: "c3-gf2",
            p: 2,
            group: c3.clone(),
            simples: vec![trivial_module(c3.clone(), p2), companion_c3_gf2],
        },
        CatalogEntry {
            name: "c4-gf2",
            p: 2,
            group: c4.clone(),
            simples: vec![trivial_module(c4.clone(), p2)],
        },
        CatalogEntry {
            name: "c6-gf3",
            p: 3,
            group: c6.clone(),
            simples: vec![trivial_module(c6.clone(), p3), mk1(&c6, p3, &[2])],
        },
        CatalogEntry {
            name: "s3-gf3",
            p: 3,
            group: s3.clone(),
            simples: vec![trivial_module(s3.clone(), p3), sign_module_s3(p3)],
        },
        CatalogEntry {
            name: "s3-gf2",
            p: 2,
            group: s3.clone(),
            simples: vec![trivial_module(s3.clone(), p2), standard_s3_gf2],
        },
    ]
}

fn c6_linear_action() -> AlgebraAction {
    // order-6 element of GL_3(F_3): a sign on the first coordinate and a
    // unipotent block on the rest
    let field = f3();
    let m = Matrix::from_rows(
        field,
        vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 1, 1]],
    )
    .unwrap();
    linear_action(field, c6_table(), &[m]).unwrap()
}

fn modules_catalog() -> Result<FixtureReport, Error> {
    let mut checks = Checks::new();
    let catalog = simples_catalog();

    let mut simple_ok = true;
    for entry in &catalog {
        for s in &entry.simples {
            if !is_simple(s)? {
                simple_ok = false;
            }
        }
    }
    checks.record(
        "catalog-modules-are-simple",
        simple_ok,
        format!("{} groups, exhaustive vector check", catalog.len()),
    );

    let mut core_ok = true;
    let mut details = Vec::new();
    for entry in &catalog {
        let mut inter: Vec<usize> = entry.group.elements().collect();
        for s in &entry.simples {
            let ker = s.kernel_elements();
            inter.retain(|g| ker.contains(g));
        }
        let core = p_core(&entry.group, entry.p)?;
        let matches = inter == core.elements();
        if !matches {
            core_ok = false;
        }
        details.push(format!("{}:{}", entry.name, inter.len()));
    }
    checks.record(
        "kernel-intersection-equals-p-core",
        core_ok,
        details.join(" "),
    );

    let mut proj_ok = true;
    for entry in &catalog {
        let field = PrimeField::new(entry.p)?;
        if !is_projective_module(&regular_module(entry.group.clone(), field))? {
            proj_ok = false;
        }
        let triv = trivial_module(entry.group.clone(), field);
        let expected = entry.group.order() as u64 % entry.p != 0;
        if is_projective_module(&triv)? != expected {
            proj_ok = false;
        }
    }
    checks.record(
        "regular-free-and-trivial-projective-iff-coprime",
        proj_ok,
        "projectivity witnesses solved exactly for every catalog group",
    );

    let reg_c2 = regular_module(c2_table(), f2());
    let soc_reg = socle(&reg_c2, &[trivial_module(c2_table(), f2())])?;
    let perm = {
        let a = s3_perm_action();
        graded_slice_module(&a, 1)?.0
    };
    let soc_perm = socle(&perm, &[trivial_module(s3_table(), f3()), sign_module_s3(f3())])?;
    checks.record(
        "socle-dimensions",
        soc_reg.len() == 1 && soc_perm.len() == 1,
        format!(
            "regular order-2 module: {}, permutation module: {}",
            soc_reg.len(),
            soc_perm.len()
        ),
    );

    let mut slices_ok = true;
    for (action, group, p, simples) in [
        (
            s3_perm_action(),
            s3_table(),
            3u64,
            vec![trivial_module(s3_table(), f3()), sign_module_s3(f3())],
        ),
        (
            c6_linear_action(),
            c6_table(),
            3,
            vec![
                trivial_module(c6_table(), f3()),
                {
                    let m = Matrix::from_rows(f3(), vec![vec![2]]).unwrap();
                    KGModule::make_module(c6_table(), f3(), &[m]).unwrap()
                },
            ],
        ),
    ] {
        let core = p_core(&group, p)?;
        for d in 0..=4 {
            let (slice, _) = graded_slice_module(&action, d)?;
            let soc = socle(&slice, &simples)?;
            let fixed = fixed_points(&slice, &core)?;
            let mut span = RowSpan::new(slice.field(), slice.dim());
            for v in &fixed {
                span.insert(v);
            }
            for v in &soc {
                if !span.contains(v) {
                    slices_ok = false;
                }
            }
        }
    }
    checks.record(
        "slice-socles-inside-p-core-fixed-points",
        slices_ok,
        "degrees 0..4 of the permutation and order-6 linear actions",
    );
    Ok(checks.finish("modules-catalog"))
}

/// Stable JSON rendering of a report, ending in a newline.
pub fn report_json(report: &FixtureReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        for name in FIXTURE_NAMES {
            let report = run_fixture(name).unwrap();
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| c.status != "pass")
                .map(|c| c.name.as_str())
                .collect();
            assert!(
                report.passed,
                "fixture {} failed checks: {:?}",
                name, failed
            );
        }
    }

    #[test]
    fn unknown_fixture_is_rejected() {
        assert!(run_fixture("no-such-fixture").is_err());
    }

    #[test]
    fn reports_are_stable_across_runs() {
        let a = report_json(&run_fixture("modules-catalog").unwrap());
        let b = report_json(&run_fixture("modules-catalog").unwrap());
        assert_eq!(a, b);
    }
}
