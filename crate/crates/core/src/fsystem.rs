//! Step 1 and Step 2 of the F-method for `V^3 -> C_m`.
//!
//! Step 1 builds the `SO(2)`-equivariant polynomial triple `psi` from three
//! one-variable polynomials via T-saturation. Step 2 evaluates the three
//! components `M_s` of the F-system and the scalar operators `L_1..L_6`.
//!
//! Polynomials in `(z1, z2, z3)` stand for the Fourier variables `zeta_j`.

use crate::error::{Error, Result};
use crate::exact_arith::GR;
use crate::gegenbauer::op_s;
use crate::poly::{ParityPoly, TriPoly, UniPoly, VecTriPoly};

/// Parameters `(lambda, nu, m)` with `nu - lambda = a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FParams {
    pub lambda: GR,
    pub nu: GR,
    pub m: i64,
}

impl FParams {
    pub fn new(lambda: GR, nu: GR, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroM);
        }
        Ok(FParams { lambda, nu, m })
    }

    pub fn from_a(lambda: GR, a: i64, m: i64) -> Result<Self> {
        let nu = &lambda + &GR::from_int(a);
        Self::new(lambda, nu, m)
    }

    /// `nu - lambda` when it is an integer.
    pub fn a(&self) -> Option<i64> {
        (&self.nu - &self.lambda).as_integer()
    }
}

/// `K(m) = {|m-1|, |m|, |m+1|}`.
pub fn k_set(m: i64) -> Result<[i64; 3]> {
    if m == 0 {
        return Err(Error::ZeroM);
    }
    let p = m.abs();
    Ok([p - 1, p, p + 1])
}

/// `zeta1 + i zeta2` for `sign = 1`, `zeta1 - i zeta2` for `sign = -1`.
pub fn z_plus(sign: i64) -> TriPoly {
    TriPoly::var(0).add(&TriPoly::var(1).scale(&GR::i().pow(sign).unwrap()))
}

/// `zeta1^2 + zeta2^2`.
pub fn q2() -> TriPoly {
    TriPoly::var(0).pow(2).add(&TriPoly::var(1).pow(2))
}

/// Generator of the `K`-type of degree `k` inside `Hom(V^3, C_m (x) H^k)`:
/// one harmonic power of `zeta1 +- i zeta2` placed in one component.
///
/// Component placement follows the `SO(2)` weights `1, 0, -1` of
/// `u1, u2, u3`: for `m >= 1` degree `|m| - 1` sits in `u1`; for `m <= -1`
/// degree `|m| + 1` sits in `u1`.
pub fn harmonic_generator(k: i64, m: i64) -> Result<VecTriPoly> {
    let ks = k_set(m)?;
    let Some(pos) = ks.iter().position(|x| *x == k) else {
        return Err(Error::Index { k, m });
    };
    let slot = if m > 0 { pos } else { 2 - pos };
    let mut out = VecTriPoly::zero();
    out.0[slot] = z_plus(m.signum()).pow(k as u32);
    Ok(out)
}

/// `T_b g`: `t^(b-2j) -> zeta3^(b-2j) (zeta1^2 + zeta2^2)^j`.
pub fn t_saturate(g: &ParityPoly) -> TriPoly {
    let b = g.bound();
    let q = q2();
    let mut acc = TriPoly::zero();
    for (e, c) in g.body().terms() {
        let j = ((b - e as i64) / 2) as u32;
        acc = acc.add(&q.pow(j).shift([0, 0, e]).scale(c));
    }
    acc
}

/// Three polynomials attached to `K(m)`, lowest degree first.
///
/// `g_lo`, `g_mid`, `g_hi` pair with `|m|-1`, `|m|`, `|m|+1` and live in the
/// parity spaces of bound `a - |m| + 1`, `a - |m|`, `a - |m| - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTriple {
    pub a: i64,
    pub m: i64,
    pub g_lo: ParityPoly,
    pub g_mid: ParityPoly,
    pub g_hi: ParityPoly,
}

impl GeneratorTriple {
    pub fn bounds(a: i64, m: i64) -> [i64; 3] {
        let p = m.abs();
        [a - p + 1, a - p, a - p - 1]
    }

    pub fn new(a: i64, m: i64, g: [UniPoly; 3]) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroM);
        }
        let [b0, b1, b2] = Self::bounds(a, m);
        let [g0, g1, g2] = g;
        Ok(GeneratorTriple {
            a,
            m,
            g_lo: ParityPoly::new(b0, g0)?,
            g_mid: ParityPoly::new(b1, g1)?,
            g_hi: ParityPoly::new(b2, g2)?,
        })
    }

    pub fn zero(a: i64, m: i64) -> Self {
        let [b0, b1, b2] = Self::bounds(a, m);
        GeneratorTriple {
            a,
            m,
            g_lo: ParityPoly::zero(b0),
            g_mid: ParityPoly::zero(b1),
            g_hi: ParityPoly::zero(b2),
        }
    }

    pub fn parts(&self) -> [&UniPoly; 3] {
        [self.g_lo.body(), self.g_mid.body(), self.g_hi.body()]
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|p| p.is_zero())
    }

    pub fn scale(&self, c: &GR) -> Self {
        GeneratorTriple {
            a: self.a,
            m: self.m,
            g_lo: self.g_lo.scale(c),
            g_mid: self.g_mid.scale(c),
            g_hi: self.g_hi.scale(c),
        }
    }

    /// Coefficients in the order g_lo (ascending), g_mid, g_hi.
    pub fn coefficient_vector(&self) -> Vec<GR> {
        let mut out = Vec::new();
        for (p, b) in [&self.g_lo, &self.g_mid, &self.g_hi].iter().map(|p| (p.body(), p.bound())) {
            for e in ParityPoly::basis(b) {
                out.push(p.coeff(e));
            }
        }
        out
    }

    /// Inverse of [`Self::coefficient_vector`].
    pub fn from_coefficients(a: i64, m: i64, v: &[GR]) -> Result<Self> {
        let mut it = v.iter();
        let mut polys: [UniPoly; 3] = Default::default();
        for (slot, b) in Self::bounds(a, m).into_iter().enumerate() {
            polys[slot] = UniPoly::from_terms(
                ParityPoly::basis(b)
                    .into_iter()
                    .map(|e| (e, it.next().cloned().unwrap_or_default())),
            );
        }
        Self::new(a, m, polys)
    }

    /// Scale so the first nonzero coefficient (g_lo ascending, then g_mid,
    /// then g_hi) equals 1. Zero stays zero.
    pub fn normalized(&self) -> Self {
        match self.coefficient_vector().into_iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn is_proportional_to(&self, other: &Self) -> bool {
        self.a == other.a
            && self.m == other.m
            && !self.is_zero()
            && !other.is_zero()
            && self.normalized() == other.normalized()
    }
}

/// `psi = sum_k T_{a-k} g_k (x) h_k`.
pub fn build_psi(g: &GeneratorTriple) -> Result<VecTriPoly> {
    let ks = k_set(g.m)?;
    let mut out = VecTriPoly::zero();
    for (k, gk) in ks.iter().zip([&g.g_lo, &g.g_mid, &g.g_hi]) {
        let h = harmonic_generator(*k, g.m)?;
        let tg = t_saturate(gk);
        out = out.add(&VecTriPoly(std::array::from_fn(|s| h.0[s].mul(&tg))));
    }
    Ok(out)
}

/// Scalar part of `d pi^(C_1^+)`: `2 lambda d1 p + 2 E(d1 p) - zeta1 Lap p`.
pub fn hat_dpi_scalar(lambda: &GR, p: &TriPoly) -> TriPoly {
    let d1 = p.differentiate(0);
    d1.scale(&(lambda + lambda))
        .add(&d1.euler().scale(&GR::from_int(2)))
        .sub(&TriPoly::var(0).mul(&p.laplacian()))
}

/// Components `(M_1, M_2, M_3)` of `d pi^(C_1^+) psi`.
pub fn m_coeffs(lambda: &GR, psi: &VecTriPoly) -> VecTriPoly {
    let [p1, p2, p3] = &psi.0;
    let two = GR::from_int(2);
    let two_i = &two * &GR::i();
    let m1 = hat_dpi_scalar(lambda, p1)
        .sub(&p1.differentiate(1).scale(&two_i))
        .add(&p2.differentiate(2).scale(&two));
    let m2 = hat_dpi_scalar(lambda, p2)
        .sub(&p1.differentiate(2))
        .add(&p3.differentiate(2));
    let m3 = hat_dpi_scalar(lambda, p3)
        .sub(&p2.differentiate(2).scale(&two))
        .add(&p3.differentiate(1).scale(&two_i));
    VecTriPoly([m1, m2, m3])
}

/// `(c + theta) f`
fn shifted_theta(c: &GR, f: &UniPoly) -> UniPoly {
    f.scale(c).add(&f.euler())
}

/// The six scalar operators `L_1..L_6` applied to `(f0, f1, f2)`.
///
/// Written for `m >= 1`. For `m <= -1` the dual system is evaluated, namely
/// the `|m|` system on `(f0, -f1, f2)`, which matches the duality map on
/// solutions.
pub fn l_operators(p: &FParams, f0: &UniPoly, f1: &UniPoly, f2: &UniPoly) -> Result<[UniPoly; 6]> {
    let a = p.a().ok_or_else(|| Error::NotAdmissible("nu - lambda is not an integer".into()))?;
    let m = p.m.abs();
    let f1 = if p.m < 0 { f1.scale(&GR::from_int(-1)) } else { f1.clone() };
    let lam = &p.lambda;
    let lam1 = lam - &GR::one();
    let two = GR::from_int(2);
    let d0 = f0.differentiate();
    let d1 = f1.differentiate();
    let d2 = f2.differentiate();
    // m (lambda + a - 1)
    let mla = &GR::from_int(m) * &(lam + &GR::from_int(a - 1));
    let l1 = op_s(lam, a + m - 1, f0);
    let l2 = op_s(lam, a - m - 1, f2);
    let l3 = op_s(&lam1, a + m, &f1).sub(&d0.scale(&two));
    let l4 = op_s(&lam1, a - m, &f1).add(&d2.scale(&two));
    let l5 = shifted_theta(&(&lam1 - &mla), f0).add(&d1);
    let l6 = shifted_theta(&(&lam1 + &mla), f2).sub(&d1);
    Ok([l1, l2, l3, l4, l5, l6])
}

/// `L_r` on the canonical slot assignment of a generator triple:
/// `(f0, f1, f2) = (g_lo, g_mid, g_hi)`.
pub fn l_operators_on(p: &FParams, g: &GeneratorTriple) -> Result<[UniPoly; 6]> {
    let [f0, f1, f2] = g.parts();
    l_operators(p, f0, f1, f2)
}
