//! Classification of `(lambda, nu, m)`, the constants `A, B, C`, closed-form
//! solutions of the F-system, and an independent brute-force kernel.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::GR;
use crate::fsystem::{build_psi, l_operators, m_coeffs, FParams, GeneratorTriple};
use crate::gegenbauer::{gamma_factor, gegenbauer_imag};
use crate::linalg::{nullspace, Matrix};
use crate::poly::{Exp3, TriPoly, UniPoly, VecTriPoly};

pub use crate::linalg::nullspace as kernel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    One,
    Two,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::One => "1",
            Case::Two => "2",
        })
    }
}

/// Position of `a` relative to `|m| - 1` together with `|m| = 1` (I) or
/// `|m| > 1` (II), for example `3.II`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subcase {
    pub step: u8,
    pub wide: bool,
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.step, if self.wide { "II" } else { "I" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dimension: u8,
    pub case: Option<Case>,
    pub subcase: Option<Subcase>,
}

fn nonneg_integer(x: &GR) -> Option<i64> {
    x.as_integer().filter(|n| *n >= 0)
}

/// Dimension of the space of symmetry breaking operators for `(lambda, nu, m)`.
pub fn classify(lambda: &GR, nu: &GR, m: i64) -> Result<Classification> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    let p = m.abs();
    let a = nonneg_integer(&(nu - lambda));
    let case = if p == 1 && a.is_some() {
        Some(Case::One)
    } else if p > 1
        && lambda.as_integer().is_some_and(|l| l <= 1 - p)
        && nu.as_integer().is_some_and(|n| (0..=2).contains(&n))
    {
        Some(Case::Two)
    } else {
        None
    };
    let subcase = case.map(|_| {
        let a = a.expect("a is a natural number in both cases");
        Subcase { step: (a - p + 2).min(3) as u8, wide: p > 1 }
    });
    Ok(Classification { dimension: case.is_some() as u8, case, subcase })
}

/// The constants `A`, `B`, `C` of the `|m| > 1` solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abc {
    pub a: GR,
    pub b: GR,
    pub c: GR,
}

/// `A = (-1)^nu (lambda + floor((-lambda - |m|)/2))^(1 - nu)`,
/// `B = -2 gamma(lambda - 1, nu - lambda - |m|)`, `C = |m|(nu - 1) + lambda - 2`.
pub fn constants_abc(lambda: &GR, nu: &GR, m: i64) -> Result<Abc> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    let p = m.abs();
    let nu_i = nu
        .as_integer()
        .filter(|n| (0..=2).contains(n))
        .ok_or_else(|| Error::NotAdmissible(format!("nu = {nu} is not in {{0, 1, 2}}")))?;
    let shift = nu - lambda - GR::from_int(p);
    let l_b = shift
        .as_integer()
        .ok_or_else(|| Error::NotAdmissible("nu - lambda - |m| is not an integer".into()))?;
    let half = (&(-lambda - GR::from_int(p)) / &GR::from_int(2)).floor_i64()?;
    let bracket = lambda + &GR::from_int(half);
    let a_const = match nu_i {
        0 => bracket,
        1 => GR::from_int(-1),
        _ => bracket
            .inv()
            .map_err(|_| Error::Pole(format!("A at lambda = {lambda}, nu = 2")))?,
    };
    let b_const = &GR::from_int(-2) * &gamma_factor(&(lambda - &GR::one()), l_b)?;
    let c_const = &(&GR::from_int(p * (nu_i - 1)) + lambda) - &GR::from_int(2);
    Ok(Abc { a: a_const, b: b_const, c: c_const })
}

/// Closed-form solution of the F-system.
///
/// `m <= -1` returns the dual of the `|m|` solution, `(g_lo, -g_mid, g_hi)`.
pub fn closed_form_solution(lambda: &GR, a: i64, m: i64) -> Result<GeneratorTriple> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    if m < 0 {
        return closed_form_solution(lambda, a, -m).map(|g| dual_triple(&g));
    }
    if a < m - 1 {
        return Err(Error::NotAdmissible(format!("a = {a} < |m| - 1")));
    }
    if a == m - 1 {
        return GeneratorTriple::new(a, m, [UniPoly::constant(GR::one()), UniPoly::zero(), UniPoly::zero()]);
    }
    let i = GR::i();
    if m == 1 {
        let h = GR::from_int((a - 1).div_euclid(2));
        let g0 = gegenbauer_imag(lambda, a).scale(&-(lambda + &h));
        let g1 = gegenbauer_imag(lambda, a - 1).scale(&-(&i * &gamma_factor(&(lambda - &GR::one()), a)?));
        let g2 = gegenbauer_imag(lambda, a - 2);
        return GeneratorTriple::new(a, m, [g0, g1, g2]);
    }
    let nu = lambda + &GR::from_int(a);
    let cls = classify(lambda, &nu, m)?;
    if cls.case != Some(Case::Two) {
        return Err(Error::NotAdmissible(format!("lambda = {lambda}, nu = {nu}, m = {m}")));
    }
    let nu_i = nu.as_integer().expect("checked by classify");
    let abc = constants_abc(lambda, &nu, m)?;
    let sign = GR::from_int(if nu_i % 2 == 0 { -1 } else { 1 });
    let ib = &i * &abc.b;
    let g0 = gegenbauer_imag(lambda, a - m + 1 - 2 * nu_i).scale(&(&(&sign * &i) * &(&abc.a * &abc.b)));
    let g1 = gegenbauer_imag(&(lambda - &GR::one()), a - m)
        .scale(&-&abc.c)
        .add(&gegenbauer_imag(lambda, a - m - 1).shift(1).scale(&ib));
    let g2 = gegenbauer_imag(lambda, a - m - 1).scale(&ib);
    GeneratorTriple::new(a, m, [g0, g1, g2])
}

/// `(g_lo, g_mid, g_hi; m) -> (g_lo, -g_mid, g_hi; -m)`.
pub fn dual_triple(g: &GeneratorTriple) -> GeneratorTriple {
    let [g0, g1, g2] = g.parts();
    GeneratorTriple::new(g.a, -g.m, [g0.clone(), g1.scale(&GR::from_int(-1)), g2.clone()])
        .expect("same bounds")
}

/// `Phi(psi)(z1, z2, z3) = (psi3, -psi2, psi1)(z1, -z2, z3)`.
pub fn duality_phi(psi: &VecTriPoly) -> VecTriPoly {
    let [p1, p2, p3] = &psi.0;
    VecTriPoly([p3.reflect(1), p2.reflect(1).scale(&GR::from_int(-1)), p1.reflect(1)])
}

/// Kernel basis of a brute-force solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiBasis {
    pub lambda: GR,
    pub a: i64,
    pub m: i64,
    pub basis: Vec<GeneratorTriple>,
}

impl XiBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Kernel of a linear map from generator triples to keyed coefficients.
fn kernel_of<K: Ord + Clone>(
    a: i64,
    m: i64,
    mut image: impl FnMut(&GeneratorTriple) -> Result<Vec<(K, GR)>>,
) -> Result<Vec<GeneratorTriple>> {
    let n = GeneratorTriple::zero(a, m).coefficient_vector().len();
    let mut rows: BTreeMap<K, usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![GR::zero(); n];
        e[j] = GR::one();
        let g = GeneratorTriple::from_coefficients(a, m, &e)?;
        let col = image(&g)?;
        for (k, _) in &col {
            let next = rows.len();
            rows.entry(k.clone()).or_insert(next);
        }
        columns.push(col);
    }
    let mut mat: Matrix = vec![vec![GR::zero(); n]; rows.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (k, v) in col {
            mat[rows[&k]][j] = v;
        }
    }
    nullspace(&mat, n)
        .into_iter()
        .map(|v| GeneratorTriple::from_coefficients(a, m, &v))
        .collect()
}

/// Brute-force kernel of `L_1..L_6` for `m >= 1`, with a pluggable
/// evaluator of the six operators.
pub fn brute_force_xi_with<F>(lambda: &GR, a: i64, m: i64, mut l_ops: F) -> Result<XiBasis>
where
    F: FnMut(&FParams, &GeneratorTriple) -> Result<[UniPoly; 6]>,
{
    if m < 1 {
        return Err(Error::NotAdmissible(format!("brute force on L requires m >= 1, got {m}")));
    }
    let params = FParams::from_a(lambda.clone(), a, m)?;
    let basis = kernel_of(a, m, |g| {
        let ls = l_ops(&params, g)?;
        Ok(ls
            .iter()
            .enumerate()
            .flat_map(|(r, p)| p.terms().map(move |(e, c)| ((r, e), c.clone())))
            .collect())
    })?;
    for g in &basis {
        debug_assert!(l_ops(&params, g)?.iter().all(UniPoly::is_zero));
    }
    Ok(XiBasis { lambda: lambda.clone(), a, m, basis })
}

/// Brute-force kernel of `L_1..L_6` for `m >= 1`.
pub fn brute_force_xi(lambda: &GR, a: i64, m: i64) -> Result<XiBasis> {
    brute_force_xi_with(lambda, a, m, |p, g| {
        let [f0, f1, f2] = g.parts();
        l_operators(p, f0, f1, f2)
    })
}

/// Brute-force kernel of the F-system `M_1 = M_2 = M_3 = 0` on `psi` built
/// from generator triples. Works for either sign of `m` and does not use `L`.
pub fn brute_force_sol(lambda: &GR, a: i64, m: i64) -> Result<XiBasis> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    let basis = kernel_of::<(usize, Exp3)>(a, m, |g| {
        let ms = m_coeffs(lambda, &build_psi(g)?);
        Ok(ms
            .0
            .iter()
            .enumerate()
            .flat_map(|(s, p): (usize, &TriPoly)| p.terms().map(move |(e, c)| ((s, *e), c.clone())))
            .collect())
    })?;
    Ok(XiBasis { lambda: lambda.clone(), a, m, basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> GR {
        GR::from_int(n)
    }

    #[test]
    fn classify_examples() {
        let cl = classify(&c(-4), &c(1), 3).unwrap();
        assert_eq!(cl.dimension, 1);
        assert_eq!(cl.case, Some(Case::Two));
        assert_eq!(cl.subcase.unwrap().to_string(), "3.II");
        let cl = classify(&GR::from_frac(1, 2), &GR::from_frac(5, 2), -1).unwrap();
        assert_eq!((cl.case, cl.subcase.unwrap().to_string()), (Some(Case::One), "3.I".into()));
        assert_eq!(classify(&c(0), &c(0), 2).unwrap().dimension, 0);
        assert_eq!(classify(&c(-1), &c(0), 2).unwrap().subcase.unwrap().to_string(), "1.II");
        assert_eq!(classify(&c(0), &c(0), 0), Err(Error::ZeroM));
        assert_eq!(classify(&c(1), &c(0), 1).unwrap().dimension, 0);
    }

    #[test]
    fn abc_example() {
        // lambda = -4, nu = 1, m = 3: A = -1, B = -2 gamma(-5, 2) = 8,
        // C = 3 * 0 - 4 - 2 = -6
        let abc = constants_abc(&c(-4), &c(1), 3).unwrap();
        assert_eq!(abc, Abc { a: c(-1), b: c(8), c: c(-6) });
        // nu = 0, lambda = -3, m = 2: bracket = -3 + floor(1/2) = -3
        let abc = constants_abc(&c(-3), &c(0), 2).unwrap();
        assert_eq!(abc.a, c(-3));
        assert!(constants_abc(&c(-4), &c(3), 3).is_err());
    }

    #[test]
    fn base_case_triple() {
        let g = closed_form_solution(&c(-2), 2, 3).unwrap();
        assert_eq!(g.g_lo.body(), &UniPoly::constant(c(1)));
        assert!(g.g_mid.is_zero() && g.g_hi.is_zero());
    }

    #[test]
    fn phi_is_an_involution_on_a_sample() {
        let psi = VecTriPoly([
            TriPoly::var(0).mul(&TriPoly::var(1)),
            TriPoly::var(1).pow(3),
            TriPoly::var(2).scale(&GR::i()),
        ]);
        assert_eq!(duality_phi(&duality_phi(&psi)), psi);
    }
}
