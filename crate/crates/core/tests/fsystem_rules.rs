use proptest::prelude::*;
use sbo_core::fsystem::*;
use sbo_core::gegenbauer::op_s;
use sbo_core::poly::{ParityPoly, TriPoly, UniPoly};
use sbo_core::solver::{closed_form_solution, dual_triple, duality_phi};
use sbo_core::GR;

fn c(n: i64) -> GR {
    GR::from_int(n)
}

fn t_of(b: i64, h: &UniPoly) -> TriPoly {
    t_saturate(&ParityPoly::new(b, h.clone()).expect("parity"))
}

fn z(axis: usize) -> TriPoly {
    TriPoly::var(axis)
}

#[test]
fn t_saturation_rules_on_monomials() {
    let q = q2();
    for l in 0..=10i64 {
        let lambda = GR::from_frac(2 * l - 7, 3);
        for e in ParityPoly::basis(l) {
            let g = UniPoly::monomial(e, c(1));
            let tg = t_of(l, &g);
            // T_l g = Q T_(l-2) g for g in Pol_(l-2)
            if (e as i64) <= l - 2 {
                assert_eq!(tg, q.mul(&t_of(l - 2, &g)), "rule 2, l={l} e={e}");
            }
            // Q d_j T_l g = zeta_j T_l((l - theta) g)
            let shifted = g.scale(&c(l)).sub(&g.euler());
            for j in 0..2 {
                assert_eq!(q.mul(&tg.differentiate(j)), z(j).mul(&t_of(l, &shifted)), "rule 3, l={l} e={e}");
            }
            // d_3 T_l g = T_(l-1)(g')
            assert_eq!(tg.differentiate(2), t_of(l - 1, &g.differentiate()), "rule 4, l={l} e={e}");
            // Q hat_dpi(T_l g) = zeta1 T_l(S^(lambda-1)_l g)
            let lhs = q.mul(&hat_dpi_scalar(&lambda, &tg));
            let rhs = z(0).mul(&t_of(l, &op_s(&(&lambda - &c(1)), l, &g)));
            assert_eq!(lhs, rhs, "rule 1, l={l} e={e}");
        }
    }
}

/// Explicit T-saturated expressions for `M_1, M_2, M_3` (m >= 1), multiplied
/// through by `Q = zeta1^2 + zeta2^2` and, for `m = 1`, by `zeta1 + i zeta2`.
fn explicit_m(lambda: &GR, g: &GeneratorTriple) -> [TriPoly; 3] {
    let m = g.m;
    let a = g.a;
    let i = GR::i();
    let q = q2();
    let zp = z_plus(1);
    let lam1 = lambda - &c(1);
    let [g0, g1, g2] = g.parts();
    let [b0, b1, b2] = GeneratorTriple::bounds(a, m);
    let z11 = z(0).pow(2);
    let z22 = z(1).pow(2);
    let z12 = z(0).mul(&z(1));
    let theta = |b: i64, f: &UniPoly| f.scale(&c(b)).sub(&f.euler());
    let combine = |b: i64, p11: UniPoly, p22: UniPoly, p12: UniPoly, p0: UniPoly| {
        z11.mul(&t_of(b, &p11))
            .add(&z22.mul(&t_of(b, &p22)))
            .add(&z12.mul(&t_of(b, &p12)))
            .add(&q.mul(&t_of(b, &p0)))
    };

    let s0 = op_s(&lam1, b0, g0);
    let d1 = g1.differentiate();
    let inner1 = combine(
        b0,
        s0.add(&d1.scale(&c(2))),
        theta(b0, g0).scale(&c(2)).sub(&d1.scale(&c(2))),
        s0.scale(&i).sub(&theta(b0, g0).scale(&(&c(2) * &i))).add(&d1.scale(&(&c(4) * &i))),
        g0.scale(&(&c(2 * (m - 1)) * &(lambda + &c(a)))),
    );
    let s1 = op_s(&lam1, b1, g1);
    let d2 = g2.differentiate();
    let inner2 = combine(
        b1,
        s1.add(&d2),
        d2.scale(&c(-1)),
        s1.scale(&i).add(&d2.scale(&(&c(2) * &i))),
        g1.scale(&(&c(2 * m) * &(lambda + &c(a - 1)))).sub(&g0.differentiate()),
    );
    let s2 = op_s(&lam1, b2, g2);
    let inner3 = combine(
        b2,
        s2.clone(),
        theta(b2, g2).scale(&c(-2)),
        s2.scale(&i).add(&theta(b2, g2).scale(&(&c(2) * &i))),
        g2.scale(&(&c(2 * (m + 1)) * &(lambda + &c(a - 2)))).sub(&d1.scale(&c(2))),
    );
    let first = if m >= 2 { zp.pow((m - 2) as u32).mul(&inner1) } else { inner1 };
    [first, zp.pow((m - 1) as u32).mul(&inner2), zp.pow(m as u32).mul(&inner3)]
}

fn arb_coeff() -> impl Strategy<Value = GR> {
    (-4i64..5, -2i64..3, 0u8..3).prop_map(|(r, i, zero)| {
        if zero == 0 {
            GR::zero()
        } else {
            GR::new(GR::from_int(r).re, GR::from_int(i).re)
        }
    })
}

fn arb_case() -> impl Strategy<Value = (GeneratorTriple, GR)> {
    (1i64..5, 0i64..6, -6i64..4, 1i64..3).prop_flat_map(|(m, da, ln, ld)| {
        let a = m - 1 + da;
        let n = GeneratorTriple::zero(a, m).coefficient_vector().len();
        (prop::collection::vec(arb_coeff(), n), 0u8..4).prop_map(move |(v, mask)| {
            let mut g = GeneratorTriple::from_coefficients(a, m, &v).unwrap();
            // zero out whole slots now and then so partial solutions occur
            let [g0, g1, g2] = g.parts().map(|p| p.clone());
            g = match mask {
                1 => GeneratorTriple::new(a, m, [g0, UniPoly::zero(), UniPoly::zero()]).unwrap(),
                2 => GeneratorTriple::new(a, m, [UniPoly::zero(), g1, g2]).unwrap(),
                _ => g,
            };
            (g, GR::from_frac(ln, ld))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn m_coeffs_match_explicit_form((g, lambda) in arb_case()) {
        let ms = m_coeffs(&lambda, &build_psi(&g).unwrap());
        let want = explicit_m(&lambda, &g);
        let q = q2();
        let m1 = if g.m == 1 { q.mul(&z_plus(1)).mul(&ms.0[0]) } else { q.mul(&ms.0[0]) };
        prop_assert_eq!(m1, want[0].clone());
        prop_assert_eq!(q.mul(&ms.0[1]), want[1].clone());
        prop_assert_eq!(q.mul(&ms.0[2]), want[2].clone());
    }

    #[test]
    fn m_vanishing_pairs_with_l((g, lambda) in arb_case()) {
        let ms = m_coeffs(&lambda, &build_psi(&g).unwrap());
        let p = FParams::from_a(lambda.clone(), g.a, g.m).unwrap();
        let ls = l_operators_on(&p, &g).unwrap();
        prop_assert_eq!(ms.0[0].is_zero(), ls[0].is_zero() && ls[4].is_zero());
        prop_assert_eq!(ms.0[1].is_zero(), ls[2].is_zero() && ls[3].is_zero());
        prop_assert_eq!(ms.0[2].is_zero(), ls[1].is_zero() && ls[5].is_zero());
    }

    #[test]
    fn psi_is_homogeneous_of_degree_a((g, _lambda) in arb_case()) {
        let psi = build_psi(&g).unwrap();
        for p in &psi.0 {
            prop_assert!(p.is_homogeneous(g.a as u32));
        }
    }

    #[test]
    fn duality_intertwines_construction((g, lambda) in arb_case()) {
        let psi = build_psi(&g).unwrap();
        let dual = build_psi(&dual_triple(&g)).unwrap();
        prop_assert_eq!(duality_phi(&psi), dual.clone());
        prop_assert_eq!(duality_phi(&dual), psi.clone());
        // M vanishes on psi exactly when it vanishes on Phi(psi)
        prop_assert_eq!(
            m_coeffs(&lambda, &psi).is_zero(),
            m_coeffs(&lambda, &dual).is_zero()
        );
    }
}

#[test]
fn closed_forms_pair_with_l_for_negative_m() {
    for (lambda, a, m) in [(c(-3), 4, -2), (GR::from_frac(1, 2), 3, -1), (c(-5), 7, -4)] {
        let g = closed_form_solution(&lambda, a, m).unwrap();
        let p = FParams::from_a(lambda.clone(), a, m).unwrap();
        assert!(l_operators_on(&p, &g).unwrap().iter().all(UniPoly::is_zero));
        assert!(m_coeffs(&lambda, &build_psi(&g).unwrap()).is_zero());
    }
}
