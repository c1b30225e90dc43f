//! Renormalized Gegenbauer polynomials and the associated second order
//! operators `G^mu_l` (in `z`) and `S^mu_l` (in `t`).
//!
//! `C~^mu_l(z) = Gamma(mu) / Gamma(mu + floor((l+1)/2)) * C^mu_l(z)`, which is
//! a nonzero polynomial for every `mu`, including non-positive integers.

use crate::error::{Error, Result};
use crate::exact_arith::{factorial, rising_factorial, GR};
use crate::poly::UniPoly;

fn half_up(l: i64) -> i64 {
    (l + 1).div_euclid(2)
}

/// `C~^mu_l(z)` as a polynomial in `z`; zero for `l < 0`.
pub fn gegenbauer_renorm(mu: &GR, l: i64) -> UniPoly {
    if l < 0 {
        return UniPoly::zero();
    }
    let h = half_up(l);
    let base = mu + &GR::from_int(h);
    let mut terms = Vec::new();
    for k in 0..=(l / 2) {
        let n = l - 2 * k;
        let sign = if k % 2 == 0 { GR::one() } else { GR::from_int(-1) };
        let num = rising_factorial(&base, (l - k - h) as u32);
        let den = &factorial(k as u32) * &factorial(n as u32);
        let two_n = GR::from_int(2).pow(n).expect("non-negative power");
        terms.push((n as u32, &(&sign * &num) * &(&two_n / &den)));
    }
    UniPoly::from_terms(terms)
}

/// `t -> C~^mu_l(i t)`.
pub fn gegenbauer_imag(mu: &GR, l: i64) -> UniPoly {
    gegenbauer_renorm(mu, l).rescale_var(&GR::i())
}

/// `gamma(mu, l)`: 1 for odd `l`, `mu + l/2` for even `l`.
pub fn gamma_factor(mu: &GR, l: i64) -> Result<GR> {
    if l < 0 {
        return Err(Error::NegativeDegree(l));
    }
    if l % 2 == 1 {
        Ok(GR::one())
    } else {
        Ok(mu + &GR::from_int(l / 2))
    }
}

fn casimir(mu: &GR, l: i64) -> GR {
    let l_gr = GR::from_int(l);
    &l_gr * &(&l_gr + &(mu + mu))
}

/// `G^mu_l f = (1 - z^2) f'' - (2 mu + 1) z f' + l (l + 2 mu) f`.
pub fn op_g(mu: &GR, l: i64, f: &UniPoly) -> UniPoly {
    let f1 = f.differentiate();
    let f2 = f1.differentiate();
    let two_mu_one = &(mu + mu) + &GR::one();
    f2.sub(&f2.shift(2))
        .sub(&f1.shift(1).scale(&two_mu_one))
        .add(&f.scale(&casimir(mu, l)))
}

/// `S^mu_l g = -((1 + t^2) g'' + (1 + 2 mu) t g' - l (l + 2 mu) g)`.
pub fn op_s(mu: &GR, l: i64, g: &UniPoly) -> UniPoly {
    let g1 = g.differentiate();
    let g2 = g1.differentiate();
    let two_mu_one = &(mu + mu) + &GR::one();
    g2.add(&g2.shift(2))
        .add(&g1.shift(1).scale(&two_mu_one))
        .sub(&g.scale(&casimir(mu, l)))
        .scale(&GR::from_int(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z_poly(terms: &[(u32, GR)]) -> UniPoly {
        UniPoly::from_terms(terms.iter().cloned())
    }

    /// Closed forms for small degrees, expanded by hand.
    fn listed(mu: &GR, l: i64) -> UniPoly {
        let c = |n: i64| GR::from_int(n);
        let f = |n: i64, d: i64| GR::from_frac(n, d);
        let m = |k: i64| mu + &c(k);
        match l {
            0 => z_poly(&[(0, c(1))]),
            1 => z_poly(&[(1, c(2))]),
            2 => z_poly(&[(2, &c(2) * &m(1)), (0, c(-1))]),
            3 => z_poly(&[(3, &f(4, 3) * &m(2)), (1, c(-2))]),
            4 => z_poly(&[
                (4, &(&f(2, 3) * &m(2)) * &m(3)),
                (2, &c(-2) * &m(2)),
                (0, f(1, 2)),
            ]),
            5 => z_poly(&[
                (5, &(&f(4, 15) * &m(3)) * &m(4)),
                (3, &f(-4, 3) * &m(3)),
                (1, c(1)),
            ]),
            6 => z_poly(&[
                (6, &(&(&f(4, 45) * &m(3)) * &m(4)) * &m(5)),
                (4, &(&f(-2, 3) * &m(3)) * &m(4)),
                (2, m(3)),
                (0, f(-1, 6)),
            ]),
            _ => unreachable!(),
        }
    }

    fn mus() -> Vec<GR> {
        let mut v: Vec<GR> = (-6..=6).map(GR::from_int).collect();
        v.push(GR::from_frac(1, 2));
        v.push(GR::from_frac(-5, 2));
        v.push("2/3+1/5*i".parse().unwrap());
        v
    }

    #[test]
    fn listed_values() {
        for mu in mus() {
            for l in 0..=6 {
                assert_eq!(gegenbauer_renorm(&mu, l), listed(&mu, l), "mu={mu} l={l}");
            }
        }
    }

    #[test]
    fn negative_degree() {
        assert!(gegenbauer_renorm(&GR::one(), -1).is_zero());
        assert_eq!(gamma_factor(&GR::one(), -2), Err(Error::NegativeDegree(-2)));
    }

    #[test]
    fn gamma_factor_values() {
        let mu = GR::from_frac(-3, 2);
        assert_eq!(gamma_factor(&mu, 3).unwrap(), GR::one());
        assert_eq!(gamma_factor(&mu, 4).unwrap(), GR::from_frac(1, 2));
    }

    #[test]
    fn annihilated_by_g() {
        for mu in mus() {
            for l in 0..=12 {
                assert!(op_g(&mu, l, &gegenbauer_renorm(&mu, l)).is_zero(), "mu={mu} l={l}");
                assert!(op_s(&mu, l, &gegenbauer_imag(&mu, l)).is_zero(), "mu={mu} l={l}");
            }
        }
    }

    proptest! {
        #[test]
        fn s_is_g_after_imaginary_substitution(
            coeffs in prop::collection::vec(-20i64..20, 1..8),
            mu_n in -8i64..8, mu_d in 1i64..4, l in 0i64..10,
        ) {
            let mu = GR::from_frac(mu_n, mu_d);
            let f = UniPoly::from_terms(coeffs.iter().enumerate().map(|(e, c)| (e as u32, GR::from_int(*c))));
            let g = f.rescale_var(&GR::i());
            prop_assert_eq!(op_s(&mu, l, &g), op_g(&mu, l, &f).rescale_var(&GR::i()));
        }

        #[test]
        fn nonzero_with_parity(mu_n in -8i64..8, mu_d in 1i64..4, l in 0i64..14) {
            let p = gegenbauer_renorm(&GR::from_frac(mu_n, mu_d), l);
            // the lowest coefficient is a bare sign/factorial, so never zero
            prop_assert!(!p.is_zero());
            prop_assert!(p.degree() <= crate::poly::Degree::Finite(l as u32));
            prop_assert!(p.terms().all(|(e, _)| (l - e as i64) % 2 == 0));
        }
    }
}
