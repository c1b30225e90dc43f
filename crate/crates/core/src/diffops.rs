//! Differential operators `V^3`-valued sections on `R^3` to `C_m` on `R^2`.
//!
//! Scalar operators are stored by their symbol in `(dz, dzbar, dx3)` with
//! `dx1 = dz + dzbar`, `dx2 = i (dz - dzbar)`, so that `dx1 + i dx2 = 2 dzbar`
//! and the planar Laplacian is `4 dz dzbar`. Every component of a
//! [`DiffOp`] is followed by restriction to `x3 = 0`.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_arith::GR;
use crate::gegenbauer::{gamma_factor, gegenbauer_renorm};
use crate::linalg::{invert, Matrix};
use crate::poly::{Exp3, TriPoly, VecTriPoly};
use crate::solver::{classify, constants_abc, Case};

/// Symbol of a constant-coefficient scalar operator in `(dz, dzbar, dx3)`.
pub type Symbol = TriPoly;

/// `Rest_{x3=0} o sum_s P_s (x) u_s^dual`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOp {
    pub components: [Symbol; 3],
}

/// Section of `V^3` with polynomial coefficients in `(z, zbar, x3)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolySection(pub [TriPoly; 3]);

/// 1-form `f1 dx1 + f2 dx2 + f3 dx3` with coefficients in `(x1, x2, x3)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OneForm3(pub [TriPoly; 3]);

fn dz() -> Symbol {
    TriPoly::var(0)
}

fn dzbar() -> Symbol {
    TriPoly::var(1)
}

fn dx3() -> Symbol {
    TriPoly::var(2)
}

fn c(n: i64) -> GR {
    GR::from_int(n)
}

/// `(I_l C~^mu_l)(-4 dz dzbar, dx3)`; zero for `l < 0`.
///
/// `(I_l f)(x, y) = x^(l/2) f(y / sqrt x)`, so `z^(l-2k)` becomes
/// `y^(l-2k) x^k`.
pub fn script_d(mu: &GR, l: i64) -> Symbol {
    let g = gegenbauer_renorm(mu, l);
    TriPoly::from_terms(g.terms().map(|(n, coef)| {
        let k = (l as u32 - n) / 2;
        let scale = GR::from_int(-4).pow(k as i64).expect("non-negative power");
        ([k, k, n], coef * &scale)
    }))
}

/// `C~_{lambda, nu} = Rest o D^(lambda-1)_(nu-lambda)`, as a symbol.
pub fn scalar_ctilde(lambda: &GR, nu: &GR) -> Result<Symbol> {
    let l = (nu - lambda)
        .as_integer()
        .ok_or_else(|| Error::NotAdmissible(format!("nu - lambda = {} is not an integer", nu - lambda)))?;
    Ok(script_d(&(lambda - &GR::one()), l))
}

/// `dz -> (z1 - i z2)/2`, `dzbar -> (z1 + i z2)/2`, `dx3 -> z3`.
pub fn to_real_symbol(p: &Symbol) -> TriPoly {
    let half = GR::from_frac(1, 2);
    let i = GR::i();
    let x1 = TriPoly::var(0);
    let x2 = TriPoly::var(1);
    let ddz = x1.sub(&x2.scale(&i)).scale(&half);
    let ddzbar = x1.add(&x2.scale(&i)).scale(&half);
    p.substitute(&[ddz, ddzbar, TriPoly::var(2)])
}

/// `z1 -> dz + dzbar`, `z2 -> i (dz - dzbar)`, `z3 -> dx3`.
pub fn from_real_symbol(p: &TriPoly) -> Symbol {
    let i = GR::i();
    p.substitute(&[dz().add(&dzbar()), dz().sub(&dzbar()).scale(&i), dx3()])
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(TriPoly::is_zero)
    }

    pub fn scale(&self, k: &GR) -> Self {
        DiffOp { components: std::array::from_fn(|s| self.components[s].scale(k)) }
    }

    /// `Some(k)` with `self = k * other`.
    pub fn ratio_to(&self, other: &Self) -> Option<GR> {
        VecTriPoly(self.components.clone()).ratio_to(&VecTriPoly(other.components.clone()))
    }

    /// Swap `u1 <-> u3`, negate `u2`, swap `dz <-> dzbar`.
    pub fn mirror(&self) -> Self {
        let flip = |p: &Symbol| TriPoly::from_terms(p.terms().map(|(e, v)| ([e[1], e[0], e[2]], v.clone())));
        let [p1, p2, p3] = &self.components;
        DiffOp { components: [flip(p3), flip(p2).scale(&c(-1)), flip(p1)] }
    }

    /// Symbol in the Fourier variables `(z1, z2, z3)`.
    pub fn symbol(&self) -> VecTriPoly {
        VecTriPoly(std::array::from_fn(|s| to_real_symbol(&self.components[s])))
    }

    /// `sum_s Rest(P_s f_s)`, a polynomial in `(z, zbar)`.
    pub fn apply(&self, f: &PolySection) -> TriPoly {
        let mut acc = TriPoly::zero();
        for (p, fs) in self.components.iter().zip(&f.0) {
            acc = acc.add(&p.apply_as_operator(fs));
        }
        acc.restrict_zero(2)
    }

    /// Same as [`Self::apply`] for a section whose coefficients are written
    /// in the real coordinates `(x1, x2, x3)`.
    pub fn apply_real(&self, f: &[TriPoly; 3]) -> TriPoly {
        let mut acc = TriPoly::zero();
        for (p, fs) in self.components.iter().zip(f) {
            acc = acc.add(&to_real_symbol(p).apply_as_operator(fs));
        }
        acc.restrict_zero(2)
    }
}

/// Free function form of [`DiffOp::apply`].
pub fn apply(d: &DiffOp, f: &PolySection) -> TriPoly {
    d.apply(f)
}

/// The symmetry breaking operator `D^m_{lambda, nu}` in closed form.
pub fn emit_operator(lambda: &GR, nu: &GR, m: i64) -> Result<DiffOp> {
    let cls = classify(lambda, nu, m)?;
    let Some(case) = cls.case else {
        return Err(Error::NotAdmissible(format!("no operator for lambda = {lambda}, nu = {nu}, m = {m}")));
    };
    let a = (nu - lambda).as_integer().expect("classified");
    let p = m.abs();
    let mut comps: [Symbol; 3] = Default::default();
    if a == p - 1 {
        comps[0] = dzbar().pow((p - 1) as u32);
        let op = DiffOp { components: comps };
        return Ok(if m > 0 { op } else { op.mirror() });
    }
    match case {
        Case::One => {
            let h = GR::from_int((a - 1).div_euclid(2));
            let gam = gamma_factor(&(lambda - &GR::one()), a)?;
            comps[0] = script_d(lambda, a).scale(&(lambda + &h));
            comps[1] = script_d(lambda, a - 1).mul(&dzbar()).scale(&(&c(2) * &gam));
            comps[2] = script_d(lambda, a - 2).mul(&dzbar().pow(2)).scale(&c(4));
        }
        Case::Two => {
            let nu_i = nu.as_integer().expect("classified");
            let abc = constants_abc(lambda, nu, p)?;
            let pow2 = GR::from_int(2).pow(2 * nu_i - 1)?;
            let lam1 = lambda + &GR::one();
            // C~_{lambda+1, 2-nu-|m|}, C~_{lambda, nu-|m|}, C~_{lambda+1, nu-|m|}
            let c_lo = scalar_ctilde(&lam1, &GR::from_int(2 - nu_i - p))?;
            let c_mid = scalar_ctilde(lambda, &GR::from_int(nu_i - p))?;
            let c_hi = scalar_ctilde(&lam1, &GR::from_int(nu_i - p))?;
            comps[0] = c_lo
                .mul(&dz().pow(nu_i as u32))
                .mul(&dzbar().pow((nu_i + p - 1) as u32))
                .scale(&(&pow2 * &(&abc.a * &abc.b)));
            comps[1] = c_mid
                .scale(&-&abc.c)
                .add(&dx3().mul(&c_hi).scale(&abc.b))
                .mul(&dzbar().pow(p as u32));
            comps[2] = c_hi.mul(&dzbar().pow((p + 1) as u32)).scale(&(&c(2) * &abc.b));
        }
    }
    let op = DiffOp { components: comps };
    Ok(if m > 0 { op } else { op.mirror() })
}

/// Scalar `i^(a-|m|+1) 2^(|m|-1)` divided out by [`symbol_inverse`]; with
/// it the base cases `a = |m| - 1` map to `dzbar^(m-1)` (resp. `dz^(|m|-1)`)
/// on the nose.
pub fn symbol_normalization(a: i64, m: i64) -> GR {
    let p = m.abs();
    &GR::i_pow(a - p + 1) * &GR::from_int(2).pow(p - 1).expect("non-negative power")
}

/// Inverse symbol map `zeta_j -> d/dx_j`, rescaled by
/// [`symbol_normalization`]. `psi` must be homogeneous.
pub fn symbol_inverse(psi: &VecTriPoly, m: i64) -> Result<DiffOp> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    let Some(a) = psi.0.iter().find_map(|p| p.terms().next().map(|(e, _)| (e[0] + e[1] + e[2]) as i64)) else {
        return Ok(DiffOp::zero());
    };
    if !psi.0.iter().all(|p| p.is_homogeneous(a as u32)) {
        return Err(Error::NotAdmissible("symbol is not homogeneous".into()));
    }
    let k = symbol_normalization(a, m).inv()?;
    Ok(DiffOp { components: std::array::from_fn(|s| from_real_symbol(&psi.0[s]).scale(&k)) })
}

/// `A^{-1}`: coefficients `(f1, f2, f3)` of a 1-form to the `u`-basis.
pub fn a_inverse() -> &'static Matrix {
    static INV: OnceLock<Matrix> = OnceLock::new();
    INV.get_or_init(|| invert(&a_matrix()).expect("A is invertible"))
}

/// `A`: `u`-basis coefficients to `(f1, f2, f3)`.
pub fn a_matrix() -> Matrix {
    let i = GR::i();
    vec![
        vec![c(1), c(0), c(-1)],
        vec![-&i, c(0), -&i],
        vec![c(0), c(-1), c(0)],
    ]
}

/// Sign in `d* omega = sign * (d1 f1 + d2 f2 + d3 f3)`.
pub const CODIFFERENTIAL_SIGN: i64 = -1;

/// Restriction to `x3 = 0` of the `(dx1, dx2)` part of `C~^{1,1}_{lambda,nu} omega`.
pub fn kkp_operator(lambda: &GR, nu: &GR, omega: &OneForm3) -> Result<[TriPoly; 2]> {
    let a = (nu - lambda)
        .as_integer()
        .filter(|a| *a >= 0)
        .ok_or_else(|| Error::NotAdmissible("nu - lambda is not a natural number".into()))?;
    let [f1, f2, f3] = &omega.0;
    if a == 0 {
        return Ok([f1.restrict_zero(2), f2.restrict_zero(2)]);
    }
    let lam_m1 = lambda - &GR::one();
    let c_dd = to_real_symbol(&script_d(lambda, a - 2));
    let c_di = to_real_symbol(&script_d(&lam_m1, a - 1));
    let c_id = to_real_symbol(&script_d(&lam_m1, a));
    let gam = gamma_factor(&(lambda - &GR::from_frac(3, 2)), a)?;
    let half_coef = &(&lam_m1 + &GR::from_int(a)) / &c(2);
    let div = f1.differentiate(0).add(&f2.differentiate(1)).add(&f3.differentiate(2));
    let codiff = div.scale(&c(CODIFFERENTIAL_SIGN));
    let out = [0usize, 1].map(|j| {
        let fj = [f1, f2][j];
        c_dd.apply_as_operator(&codiff.differentiate(j))
            .sub(&c_di.apply_as_operator(&f3.differentiate(j)).scale(&gam))
            .add(&c_id.apply_as_operator(fj).scale(&half_coef))
            .restrict_zero(2)
    });
    Ok(out)
}

/// `(dx1, dx2)` coefficients of `iota o (D^1 - D^{-1}) o A^{-1} omega`.
pub fn kkp_lhs(d_plus: &DiffOp, d_minus: &DiffOp, omega: &OneForm3) -> [TriPoly; 2] {
    let inv = a_inverse();
    let sec: [TriPoly; 3] = std::array::from_fn(|s| {
        let mut acc = TriPoly::zero();
        for (k, f) in omega.0.iter().enumerate() {
            acc = acc.add(&f.scale(&inv[s][k]));
        }
        acc
    });
    let psi_plus = d_plus.apply_real(&sec);
    let psi_minus = d_minus.apply_real(&sec).scale(&c(-1));
    let i = GR::i();
    // psi_{-1} (dx1 + i dx2) + psi_1 (dx1 - i dx2)
    [psi_minus.add(&psi_plus), psi_minus.sub(&psi_plus).scale(&i)]
}

/// Outcome of [`compare_kkp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KkpReport {
    pub agrees: bool,
    pub k: GR,
    pub checked: usize,
    /// `(slot, exponent)` of the first monomial 1-form that disagrees.
    pub witness: Option<(usize, Exp3)>,
}

/// All monomials in three variables of total degree at most `d`.
pub fn monomials_up_to(d: u32) -> Vec<Exp3> {
    let mut out = Vec::new();
    for n in 0..=d {
        for e1 in 0..=n {
            for e2 in 0..=(n - e1) {
                out.push([e1, e2, n - e1 - e2]);
            }
        }
    }
    out
}

/// Compare `iota o (D^1 - D^{-1}) o A^{-1}` against `K * rhs` on every
/// monomial 1-form of degree at most `max_degree`.
pub fn compare_kkp_with<F>(lambda: &GR, nu: &GR, max_degree: u32, mut rhs: F) -> Result<KkpReport>
where
    F: FnMut(&OneForm3) -> Result<[TriPoly; 2]>,
{
    let a = (nu - lambda)
        .as_integer()
        .filter(|a| *a >= 0)
        .ok_or_else(|| Error::NotAdmissible("nu - lambda is not a natural number".into()))?;
    let k = if a == 0 { c(1) } else { c(2) };
    let d_plus = emit_operator(lambda, nu, 1)?;
    let d_minus = emit_operator(lambda, nu, -1)?;
    let mut checked = 0;
    for slot in 0..3 {
        for e in monomials_up_to(max_degree) {
            let mut omega = OneForm3::default();
            omega.0[slot] = TriPoly::monomial(e, GR::one());
            let lhs = kkp_lhs(&d_plus, &d_minus, &omega);
            let r = rhs(&omega)?;
            checked += 1;
            if lhs[0] != r[0].scale(&k) || lhs[1] != r[1].scale(&k) {
                return Ok(KkpReport { agrees: false, k, checked, witness: Some((slot, e)) });
            }
        }
    }
    Ok(KkpReport { agrees: true, k, checked, witness: None })
}

pub fn compare_kkp(lambda: &GR, nu: &GR, max_degree: u32) -> Result<KkpReport> {
    compare_kkp_with(lambda, nu, max_degree, |w| kkp_operator(lambda, nu, w))
}

fn latex_coeff(v: &GR) -> String {
    fn frac(r: &crate::exact_arith::Rational) -> String {
        let n = r.numer();
        let d = r.denom();
        if d.is_one() {
            n.to_string()
        } else if n.is_negative() {
            format!("-\\frac{{{}}}{{{}}}", -n, d)
        } else {
            format!("\\frac{{{n}}}{{{d}}}")
        }
    }
    if v.is_real() {
        return frac(&v.re);
    }
    let im = if v.im.is_one() {
        "i".to_string()
    } else if (-&v.im).is_one() {
        "-i".to_string()
    } else {
        format!("{}i", frac(&v.im))
    };
    if v.re.is_zero() {
        im
    } else if im.starts_with('-') {
        format!("\\left({}{}\\right)", frac(&v.re), im)
    } else {
        format!("\\left({}+{}\\right)", frac(&v.re), im)
    }
}

fn latex_partials(e: &Exp3) -> String {
    let mut s = String::new();
    for (name, k) in [("z", e[0]), ("\\bar z", e[1]), ("x_3", e[2])] {
        match k {
            0 => {}
            1 => write!(s, "\\partial_{{{name}}}").unwrap(),
            _ => write!(s, "\\partial_{{{name}}}^{{{k}}}").unwrap(),
        }
    }
    s
}

/// LaTeX rendering, one summand per nonzero component.
pub fn render_latex(d: &DiffOp) -> String {
    let mut parts = Vec::new();
    for (s, p) in d.components.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let mut body = String::new();
        for (idx, (e, v)) in p.terms().enumerate() {
            let mut coef = latex_coeff(v);
            let partials = latex_partials(e);
            if !partials.is_empty() {
                if coef == "1" {
                    coef.clear();
                } else if coef == "-1" {
                    coef = "-".into();
                }
            }
            let term = format!("{coef}{partials}");
            if idx == 0 {
                body.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(body, " - {rest}").unwrap();
            } else {
                write!(body, " + {term}").unwrap();
            }
        }
        parts.push(format!(
            "\\operatorname{{Rest}}_{{x_3=0}} \\circ \\left( {body} \\right) \\otimes u_{}^{{\\vee}}",
            s + 1
        ));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("\n  + ")
    }
}

/// JSON rendering: `{"components": {"u1": [{"dz", "dzbar", "dx3", "coeff"}], ...}}`.
pub fn render_json(d: &DiffOp) -> Value {
    let mut comps = serde_json::Map::new();
    for (s, p) in d.components.iter().enumerate() {
        let terms: Vec<Value> = p
            .terms()
            .map(|(e, v)| json!({"dz": e[0], "dzbar": e[1], "dx3": e[2], "coeff": v.to_string()}))
            .collect();
        comps.insert(format!("u{}", s + 1), Value::Array(terms));
    }
    json!({ "components": comps })
}

/// Plain text rendering, one line per component.
pub fn render_text(d: &DiffOp) -> String {
    d.components
        .iter()
        .enumerate()
        .map(|(s, p)| format!("u{}: {}", s + 1, p.render(["dz", "dzbar", "dx3"])))
        .collect::<Vec<_>>()
        .join("\n")
}
