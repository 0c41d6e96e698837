//! Multivariate polynomials over `Q` with dense exponent vectors.
//!
//! The term order used everywhere is degree-reverse-lexicographic with
//! `x_1 > x_2 > ... > x_d`; it is baked into `Ord for Monomial` so a
//! `BTreeMap` keyed by monomials keeps terms sorted with the lead term
//! last. A second order that eliminates the first variable is provided
//! for intersection computations in an extended ring.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational coefficient.
pub type Coeff = num_rational::BigRational;

/// `n` as a rational coefficient.
pub fn rat(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

/// `p/q` as a rational coefficient. Panics if `q == 0`.
pub fn rat_frac(p: i64, q: i64) -> Coeff {
    Coeff::new(BigInt::from(p), BigInt::from(q))
}

/// A power product `x_1^{e_1} ... x_d^{e_d}`, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The single variable `x_i` (0-indexed axis).
    pub fn var(axis: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[axis] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, axis: usize) -> u32 {
        self.exps[axis]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Degrevlex with `x_1 > ... > x_d`: higher total degree wins, ties go to
/// the monomial whose last unequal exponent is smaller.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                for i in (0..self.exps.len()).rev() {
                    match self.exps[i].cmp(&other.exps[i]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial orders understood by the Groebner engine.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TermOrder {
    /// Degree-reverse-lexicographic, `x_1 > ... > x_d`.
    DegRevLex,
    /// Eliminates the first variable: its exponent is compared first,
    /// ties fall back to degrevlex. Used for ideal intersections in a
    /// ring extended by an auxiliary variable in position 0.
    ElimFirst,
}

impl TermOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::DegRevLex => a.cmp(b),
            TermOrder::ElimFirst => match a.exp(0).cmp(&b.exp(0)) {
                Ordering::Equal => a.cmp(b),
                ord => ord,
            },
        }
    }
}

/// A polynomial in `Q[x_1..x_d]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(Coeff::one(), nvars)
    }

    pub fn constant(c: Coeff, nvars: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_axis` as a polynomial.
    pub fn var(axis: usize, nvars: usize) -> Self {
        Polynomial::from_monomial(Monomial::var(axis, nvars), nvars)
    }

    pub fn from_monomial(m: Monomial, nvars: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(m, Coeff::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing degrevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff_of(&Monomial::one(self.nvars))
    }

    /// Adds `c * m` in place, dropping the term if the sum cancels.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Lead term under degrevlex.
    pub fn lead_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.last_key_value()
    }

    /// Lead term under an arbitrary order.
    pub fn lead_term_under(&self, ord: TermOrder) -> Option<(&Monomial, &Coeff)> {
        match ord {
            TermOrder::DegRevLex => self.lead_term(),
            TermOrder::ElimFirst => self
                .terms
                .iter()
                .max_by(|(m1, _), (m2, _)| ord.cmp(m1, m2)),
        }
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.lead_term().map(|(m, _)| m)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The order `o(f)`: minimal total degree of a term, `None` (treated
    /// as infinity) for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Divides by the lead coefficient so the degrevlex lead term is monic.
    pub fn monic(&self) -> Polynomial {
        match self.lead_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Generalized derivative `d/d(x_axis^a)`: sends `x^b` to
    /// `floor(b_axis / a) * x^(b - a*e_axis)` and drops terms with
    /// `b_axis < a`. Requires `a >= 1`.
    pub fn gen_derivative(&self, axis: usize, a: u32) -> Polynomial {
        assert!(a >= 1, "generalized derivative needs a positive step");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let b = m.exp(axis);
            if b < a {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[axis] = b - a;
            let factor = rat(i64::from(b / a));
            out.add_term(Monomial::from_exps(exps), c * factor);
        }
        out
    }

    /// Splits into A-graded components for the grading in which `x^b`
    /// has degree `sum_i floor(b_i / a_i)`.
    pub fn a_degree_split(&self, a: &[u32]) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let deg = a_degree(m, a);
            out.entry(deg)
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Renders with the given variable names; names beyond `nvars` are ignored.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

/// A-degree of a monomial: `sum_i floor(b_i / a_i)`. Entries of `a` must
/// be positive.
pub fn a_degree(m: &Monomial, a: &[u32]) -> u32 {
    debug_assert_eq!(m.nvars(), a.len());
    m.exps().iter().zip(a).map(|(b, ai)| b / ai).sum()
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// A composition `(a_1, ..., a_d)` with every part positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Panics unless every part is at least 1.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(!parts.is_empty() && parts.iter().all(|&p| p >= 1));
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// All positive compositions of `total` into `parts` parts, in
/// lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if parts == 1 {
            if total >= 1 {
                cur.push(total);
                out.push(Composition::new(cur.clone()));
                cur.pop();
            }
            return;
        }
        let spare = total.saturating_sub(parts as u32 - 1);
        for first in 1..=spare {
            cur.push(first);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    if parts >= 1 && total >= parts as u32 {
        rec(total, parts, &mut cur, &mut out);
    }
    out
}

/// Default variable names: `x, y, z, w`, then `x1, x2, ...` beyond four.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 4 {
        ["x", "y", "z", "w"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(self.names[i].clone());
                } else {
                    factors.push(format!("{}^{}", self.names[i], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    fn p(nvars: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(nvars, terms.iter().map(|(c, e)| (m(e), rat(*c))))
    }

    #[test]
    fn degrevlex_orders_x2_above_xy_above_y2() {
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[0, 5]) > m(&[2, 2]), "higher total degree wins");
        assert!(m(&[2, 3]) > m(&[0, 5]), "ties break against the later variable");
    }

    #[test]
    fn degrevlex_three_variables() {
        // x*z vs y^2 at degree 2: difference (1,-2,1) ends positive, so x*z < y^2.
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn elimination_order_puts_t_first() {
        let ord = TermOrder::ElimFirst;
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn order_of_zero_is_infinite() {
        assert_eq!(Polynomial::zero(2).order(), None);
    }

    #[test]
    fn order_takes_minimal_degree() {
        assert_eq!(p(2, &[(1, &[2, 1]), (1, &[0, 5])]).order(), Some(3));
        assert_eq!(p(2, &[(1, &[2, 2]), (1, &[0, 5])]).order(), Some(4));
    }

    #[test]
    fn gen_derivative_x5_by_x2() {
        let f = p(1, &[(1, &[5])]);
        assert_eq!(f.gen_derivative(0, 2), p(1, &[(2, &[3])]));
    }

    #[test]
    fn gen_derivative_drops_low_exponents() {
        let f = p(2, &[(1, &[1, 0]), (1, &[0, 3])]);
        assert_eq!(f.gen_derivative(0, 2), Polynomial::zero(2));
        assert_eq!(f.gen_derivative(1, 2), p(2, &[(1, &[0, 1])]));
    }

    #[test]
    fn a_degree_split_groups_by_floor_degrees() {
        // x^2 + y^3 + x*y with a = (2,3): x^2 and y^3 sit in degree 1, x*y in 0.
        let f = p(2, &[(1, &[2, 0]), (1, &[0, 3]), (1, &[1, 1])]);
        let split = f.a_degree_split(&[2, 3]);
        assert_eq!(split.len(), 2);
        assert_eq!(split[&0], p(2, &[(1, &[1, 1])]));
        assert_eq!(split[&1], p(2, &[(1, &[2, 0]), (1, &[0, 3])]));
    }

    #[test]
    fn arithmetic_cancels_cleanly() {
        let f = p(2, &[(2, &[1, 1]), (1, &[0, 2])]);
        let g = p(2, &[(2, &[1, 1])]);
        assert_eq!(&f - &g, p(2, &[(1, &[0, 2])]));
        assert!((&f - &f).is_zero());
        let h = &p(2, &[(1, &[1, 0]), (1, &[0, 1])]) * &p(2, &[(1, &[1, 0]), (-1, &[0, 1])]);
        assert_eq!(h, p(2, &[(1, &[2, 0]), (-1, &[0, 2])]));
    }

    #[test]
    fn monic_normalizes_lead_coefficient() {
        let f = p(2, &[(3, &[2, 0]), (6, &[1, 0])]);
        let g = f.monic();
        assert_eq!(g.lead_term().unwrap().1, &rat(1));
        assert_eq!(g.coeff_of(&m(&[1, 0])), rat(2));
    }

    #[test]
    fn compositions_are_positive_and_lexicographic() {
        let cs = compositions(3, 2);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].parts(), &[1, 2]);
        assert_eq!(cs[1].parts(), &[2, 1]);
        let cs = compositions(4, 3);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].parts(), &[1, 1, 2]);
        assert_eq!(cs[2].parts(), &[2, 1, 1]);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn display_uses_given_names() {
        let names = default_names(2);
        let f = p(2, &[(1, &[2, 2]), (1, &[0, 5])]);
        assert_eq!(format!("{}", f.display(&names)), "y^5 + x^2*y^2");
        let g = p(2, &[(-1, &[1, 0]), (7, &[0, 0])]);
        assert_eq!(format!("{}", g.display(&names)), "-x + 7");
        assert_eq!(format!("{}", Polynomial::zero(2).display(&names)), "0");
        let h = Polynomial::from_terms(2, [(m(&[1, 0]), rat_frac(1, 2))]);
        assert_eq!(format!("{}", h.display(&names)), "1/2*x");
    }
}
