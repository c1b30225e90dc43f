//! Sparse exact polynomials: univariate in `t`, parity spaces `Pol_b[t]_even`,
//! trivariate in `(z1, z2, z3)`, and triples of trivariates.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::GR;

/// Degree with a sentinel below every finite degree for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, GR>, k: K, c: &GR) {
    if c.is_zero() {
        return;
    }
    *map.entry(k).or_default() += c;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, GR>) {
    map.retain(|_, c| !c.is_zero());
}

fn render_coeff(c: &GR) -> String {
    if c.is_real() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

/// Univariate polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    terms: BTreeMap<u32, GR>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GR) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(e: u32, c: GR) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        UniPoly { terms }
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, GR::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, GR)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in it {
            add_term(&mut terms, e, &c);
        }
        prune(&mut terms);
        UniPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GR)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: u32) -> GR {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(e) => Degree::Finite(*e),
            None => Degree::NegInfinity,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            add_term(&mut terms, *e, c);
        }
        prune(&mut terms);
        UniPoly { terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GR::from_int(-1)))
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                add_term(&mut terms, e1 + e2, &(c1 * c2));
            }
        }
        prune(&mut terms);
        UniPoly { terms }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        UniPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// `d/dt`
    pub fn differentiate(&self) -> Self {
        UniPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c * &GR::from_int(*e as i64)))
                .collect(),
        }
    }

    /// Euler operator `t d/dt`.
    pub fn euler(&self) -> Self {
        UniPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (*e, c * &GR::from_int(*e as i64)))
                .collect(),
        }
    }

    /// Substitute `t -> c t`.
    pub fn rescale_var(&self, c: &GR) -> Self {
        let mut out = BTreeMap::new();
        for (e, v) in &self.terms {
            out.insert(*e, v * &c.pow(*e as i64).expect("non-negative power"));
        }
        prune(&mut out);
        UniPoly { terms: out }
    }

    pub fn eval(&self, x: &GR) -> GR {
        let mut acc = GR::zero();
        for (e, c) in &self.terms {
            acc += &(c * &x.pow(*e as i64).expect("non-negative power"));
        }
        acc
    }

    /// Canonical text form in the variable `var`, ascending exponents.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => render_coeff(c),
                1 => format!("{}*{var}", render_coeff(c)),
                _ => format!("{}*{var}^{e}", render_coeff(c)),
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Element of `Pol_b[t]_even`: degree at most `b`, parity of `b`. The space
/// is `{0}` for `b < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityPoly {
    bound: i64,
    body: UniPoly,
}

impl ParityPoly {
    pub fn new(bound: i64, body: UniPoly) -> Result<Self> {
        let ok = body
            .terms()
            .all(|(e, _)| (e as i64) <= bound && (bound - e as i64) % 2 == 0);
        if ok {
            Ok(ParityPoly { bound, body })
        } else {
            Err(Error::Parity { bound })
        }
    }

    pub fn zero(bound: i64) -> Self {
        ParityPoly { bound, body: UniPoly::zero() }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn body(&self) -> &UniPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Admissible exponents, ascending.
    pub fn basis(bound: i64) -> Vec<u32> {
        if bound < 0 {
            return Vec::new();
        }
        ((bound % 2)..=bound).step_by(2).map(|e| e as u32).collect()
    }

    pub fn scale(&self, c: &GR) -> Self {
        ParityPoly { bound: self.bound, body: self.body.scale(c) }
    }
}

/// Exponent triple `(e1, e2, e3)`.
pub type Exp3 = [u32; 3];

/// Sparse polynomial in three commuting variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<Exp3, GR>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GR) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Self::constant(GR::one())
    }

    pub fn monomial(e: Exp3, c: GR) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TriPoly { terms }
    }

    /// The coordinate variable with index `axis` (0, 1 or 2).
    pub fn var(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        Self::monomial(e, GR::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp3, GR)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in it {
            add_term(&mut terms, e, &c);
        }
        prune(&mut terms);
        TriPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &GR)> + '_ {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp3) -> GR {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Degree {
        match self.terms.keys().map(|e| e[0] + e[1] + e[2]).max() {
            Some(d) => Degree::Finite(d),
            None => Degree::NegInfinity,
        }
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e[0] + e[1] + e[2] == d)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            add_term(&mut terms, *e, c);
        }
        prune(&mut terms);
        TriPoly { terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            add_term(&mut terms, *e, &-c);
        }
        prune(&mut terms);
        TriPoly { terms }
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TriPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                add_term(&mut terms, e, &(c1 * c2));
            }
        }
        prune(&mut terms);
        TriPoly { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: Exp3) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ([k[0] + e[0], k[1] + e[1], k[2] + e[2]], c.clone()))
                .collect(),
        }
    }

    /// Partial derivative along `axis`.
    pub fn differentiate(&self, axis: usize) -> Self {
        self.differentiate_n(axis, 1)
    }

    /// `n`-th partial derivative along `axis`.
    pub fn differentiate_n(&self, axis: usize, n: u32) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[axis] < n {
                continue;
            }
            let mut k = *e;
            k[axis] -= n;
            let f = crate::exact_arith::rising_factorial(&GR::from_int((e[axis] - n + 1) as i64), n);
            terms.insert(k, c * &f);
        }
        TriPoly { terms }
    }

    /// Euler operator `sum_j x_j d/dx_j`.
    pub fn euler(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[0] + e[1] + e[2];
            if d > 0 {
                terms.insert(*e, c * &GR::from_int(d as i64));
            }
        }
        TriPoly { terms }
    }

    /// Flat Laplacian in all three variables.
    pub fn laplacian(&self) -> Self {
        self.differentiate_n(0, 2)
            .add(&self.differentiate_n(1, 2))
            .add(&self.differentiate_n(2, 2))
    }

    /// Substitute `x_axis -> -x_axis`.
    pub fn reflect(&self, axis: usize) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e[axis] % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Set `x_axis = 0`.
    pub fn restrict_zero(&self, axis: usize) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[axis] == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Substitute each variable by a polynomial.
    pub fn substitute(&self, images: &[TriPoly; 3]) -> Self {
        let mut acc = TriPoly::zero();
        let mut cache: [Vec<TriPoly>; 3] = [vec![Self::one()], vec![Self::one()], vec![Self::one()]];
        for (e, c) in &self.terms {
            let mut term = TriPoly::constant(c.clone());
            for axis in 0..3 {
                while cache[axis].len() <= e[axis] as usize {
                    let next = cache[axis].last().unwrap().mul(&images[axis]);
                    cache[axis].push(next);
                }
                term = term.mul(&cache[axis][e[axis] as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Apply the constant-coefficient operator with this symbol to `f`:
    /// each `x^e` becomes `d^e`.
    pub fn apply_as_operator(&self, f: &TriPoly) -> TriPoly {
        let mut acc = TriPoly::zero();
        for (e, c) in &self.terms {
            let d = f
                .differentiate_n(0, e[0])
                .differentiate_n(1, e[1])
                .differentiate_n(2, e[2]);
            acc = acc.add(&d.scale(c));
        }
        acc
    }

    /// Divide by the first nonzero coefficient so it becomes 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// Canonical text form, lexicographic exponent order.
    pub fn render(&self, names: [&str; 3]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = render_coeff(c);
                for (axis, name) in names.iter().enumerate() {
                    match e[axis] {
                        0 => {}
                        1 => s.push_str(&format!("*{name}")),
                        k => s.push_str(&format!("*{name}^{k}")),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["z1", "z2", "z3"]))
    }
}

/// Triple of trivariate polynomials, indexed by `u1, u2, u3`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VecTriPoly(pub [TriPoly; 3]);

impl VecTriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(TriPoly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        VecTriPoly(std::array::from_fn(|k| self.0[k].add(&o.0[k])))
    }

    pub fn sub(&self, o: &Self) -> Self {
        VecTriPoly(std::array::from_fn(|k| self.0[k].sub(&o.0[k])))
    }

    pub fn scale(&self, c: &GR) -> Self {
        VecTriPoly(std::array::from_fn(|k| self.0[k].scale(c)))
    }

    /// First nonzero coefficient, scanning components in order.
    pub fn leading_coeff(&self) -> Option<GR> {
        self.0.iter().find_map(|p| p.terms().next().map(|(_, c)| c.clone()))
    }

    /// `Some(c)` when `self = c * other`.
    pub fn ratio_to(&self, other: &Self) -> Option<GR> {
        match (self.leading_coeff(), other.leading_coeff()) {
            (None, None) => Some(GR::zero()),
            (Some(a), Some(b)) => {
                let c = &a / &b;
                (other.scale(&c) == *self).then_some(c)
            }
            _ => None,
        }
    }
}

impl fmt::Display for VecTriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}
