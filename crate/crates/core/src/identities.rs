//! Batteries of polynomial and operator identities among renormalized
//! Gegenbauer polynomials, used by the `suite` command.

use crate::diffops::{monomials_up_to, script_d, to_real_symbol};
use crate::exact_arith::{gamma_ratio, GR};
use crate::gegenbauer::{gamma_factor, gegenbauer_imag, gegenbauer_renorm, op_g, op_s};
use crate::poly::{TriPoly, UniPoly};

/// Outcome of one named identity over its whole parameter range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub checked: usize,
    /// First failing instance, if any.
    pub failure: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn done(self) -> IdentityReport {
        IdentityReport { name: self.name, checked: self.checked, failure: self.failure }
    }
}

/// `{-6..6} u {1/2, -5/2, 2/3}`.
pub fn default_mus() -> Vec<GR> {
    let mut v: Vec<GR> = (-6..=6).map(GR::from_int).collect();
    v.extend([GR::from_frac(1, 2), GR::from_frac(-5, 2), GR::from_frac(2, 3)]);
    v
}

fn c(n: i64) -> GR {
    GR::from_int(n)
}

fn half_up(l: i64) -> i64 {
    (l + 1).div_euclid(2)
}

/// One-variable identities for `0 <= l <= max_l`, plus the reflection
/// identity at negative integer parameter for `k <= max_k`.
pub fn appendix_battery(max_l: i64, mus: &[GR], max_k: i64) -> Vec<IdentityReport> {
    let i = GR::i();
    let mut g_zero = Tally::new("G annihilates C~");
    let mut s_g = Tally::new("S g = (G f)(i t)");
    let mut slmu1 = Tally::new("S^(mu+1) - S^mu = 2(l - theta)");
    let mut slmu2 = Tally::new("t S^(mu+1)_(l-1) - S^mu_l t = 2 d/dt");
    let mut der1 = Tally::new("d/dt C~^mu_l(it) = 2i gamma C~^(mu+1)_(l-1)(it)");
    let mut der2 = Tally::new("(t d/dt - l) C~^mu_l(it) = 2 C~^(mu+1)_(l-2)(it)");
    let mut three1 = Tally::new("three-term relation 1");
    let mut three2 = Tally::new("three-term relation 2");
    let mut three3 = Tally::new("three-term relation 3");
    let mut reflection = Tally::new("reflection C~^-k_l ~ C~^-k_(2k-l)");

    for mu in mus {
        let mu1 = mu + &GR::one();
        for l in 0..=max_l {
            let f = gegenbauer_renorm(mu, l);
            g_zero.check(op_g(mu, l, &f).is_zero(), || format!("mu={mu} l={l}"));
            let g = gegenbauer_imag(mu, l);
            let gam = gamma_factor(mu, l).expect("l >= 0");
            for e in 0..=(l as u32 + 2) {
                let probe = UniPoly::monomial(e, GR::one());
                let lhs = op_s(mu, l, &probe.rescale_var(&i));
                let rhs = op_g(mu, l, &probe).rescale_var(&i);
                s_g.check(lhs == rhs, || format!("mu={mu} l={l} z^{e}"));
                let lhs = op_s(&mu1, l, &probe).sub(&op_s(mu, l, &probe));
                let rhs = probe.scale(&c(l)).sub(&probe.euler()).scale(&c(2));
                slmu1.check(lhs == rhs, || format!("mu={mu} l={l} t^{e}"));
                let lhs = op_s(&mu1, l - 1, &probe).shift(1).sub(&op_s(mu, l, &probe.shift(1)));
                slmu2.check(lhs == probe.differentiate().scale(&c(2)), || format!("mu={mu} l={l} t^{e}"));
            }
            let rhs = gegenbauer_imag(&mu1, l - 1).scale(&(&(&c(2) * &i) * &gam));
            der1.check(g.differentiate() == rhs, || format!("mu={mu} l={l}"));
            let lhs = g.euler().sub(&g.scale(&c(l)));
            der2.check(lhs == gegenbauer_imag(&mu1, l - 2).scale(&c(2)), || format!("mu={mu} l={l}"));
            let lhs = g.scale(&(mu + &c(l))).add(&gegenbauer_imag(&mu1, l - 2));
            let rhs = gegenbauer_imag(&mu1, l).scale(&(mu + &c(half_up(l))));
            three1.check(lhs == rhs, || format!("mu={mu} l={l}"));
            let rhs = gegenbauer_imag(&mu1, l - 1)
                .shift(1)
                .scale(&(&gam * &i))
                .sub(&g.scale(&GR::from_frac(l, 2)));
            three2.check(gegenbauer_imag(&mu1, l - 2) == rhs, || format!("mu={mu} l={l}"));
            let mu_half = mu - &GR::from_frac(1, 2);
            let lhs = gegenbauer_imag(&mu1, l - 1)
                .shift(1)
                .scale(&i)
                .sub(&gegenbauer_imag(&mu1, l).scale(&gamma_factor(mu, l + 1).expect("l >= 0")))
                .add(&g.scale(&gamma_factor(&mu_half, l + 1).expect("l >= 0")));
            three3.check(lhs.is_zero(), || format!("mu={mu} l={l}"));
        }
    }
    for k in 0..=max_k {
        let mu = c(-k);
        for l in 0..=2 * k {
            let x = c(-k + half_up(2 * k - l));
            let n = half_up(l) - half_up(2 * k - l);
            match gamma_ratio(&x, n) {
                Ok(r) => {
                    let lhs = gegenbauer_renorm(&mu, l).scale(&r);
                    reflection.check(lhs == gegenbauer_renorm(&mu, 2 * k - l), || format!("k={k} l={l}"));
                }
                Err(e) => reflection.check(false, || format!("k={k} l={l}: {e}")),
            }
        }
    }
    [g_zero, s_g, slmu1, slmu2, der1, der2, three1, three2, three3, reflection]
        .into_iter()
        .map(Tally::done)
        .collect()
}

/// Operator identities among `D^mu_l = (I_l C~^mu_l)(-Lap, d/dx3)`, checked
/// by applying both sides to every monomial in `(x1, x2, x3)` of degree at
/// most `l + 2`.
pub fn operator_battery(max_l: i64, mus: &[GR]) -> Vec<IdentityReport> {
    let lap = TriPoly::var(0).pow(2).add(&TriPoly::var(1).pow(2));
    let d3 = TriPoly::var(2);
    let dd = |mu: &GR, l: i64| to_real_symbol(&script_d(mu, l));
    let mut d1 = Tally::new("operator relation 1");
    let mut d2 = Tally::new("operator relation 2");
    let mut d3t = Tally::new("operator relation 3");
    for mu in mus {
        let mu1 = mu + &GR::one();
        for l in 0..=max_l {
            let gam = gamma_factor(mu, l).expect("l >= 0");
            let gam_half = gamma_factor(&(mu - &GR::from_frac(1, 2)), l).expect("l >= 0");
            let lhs1 = dd(mu, l).scale(&(mu + &c(l))).sub(&dd(&mu1, l - 2).mul(&lap));
            let rhs1 = dd(&mu1, l).scale(&(mu + &c(half_up(l))));
            let lhs2 = dd(&mu1, l - 2).mul(&lap).add(&dd(&mu1, l - 1).mul(&d3).scale(&gam));
            let rhs2 = dd(mu, l).scale(&GR::from_frac(l, 2));
            let lhs3 = dd(&mu1, l - 2)
                .mul(&d3)
                .sub(&dd(&mu1, l - 1).scale(&gam))
                .add(&dd(mu, l - 1).scale(&gam_half));
            for e in monomials_up_to(l as u32 + 2) {
                let f = TriPoly::monomial(e, GR::one());
                d1.check(lhs1.apply_as_operator(&f) == rhs1.apply_as_operator(&f), || {
                    format!("mu={mu} l={l} x^{e:?}")
                });
                d2.check(lhs2.apply_as_operator(&f) == rhs2.apply_as_operator(&f), || {
                    format!("mu={mu} l={l} x^{e:?}")
                });
                d3t.check(lhs3.apply_as_operator(&f).is_zero(), || format!("mu={mu} l={l} x^{e:?}"));
            }
        }
    }
    [d1, d2, d3t].into_iter().map(Tally::done).collect()
}
