//! The Koszul complex on the pure powers `x_1^{a_1}, ..., x_d^{a_d}`,
//! its contracting homotopy built from generalized partial derivatives,
//! and the staircase construction lifting resolution data to cycles.

use crate::ideal::IdealHandle;
use crate::poly::{rat_frac, Coeff, Composition, Monomial, Polynomial};
use crate::resolution::FreeComplex;
use crate::{Error, Result};
use num_traits::One;
use std::collections::BTreeMap;

/// An element of the Koszul complex on `x_1^{a_1}, ..., x_d^{a_d}`,
/// stored as polynomial coefficients indexed by subset bitmasks of the
/// axes (bit `i` set means the factor `e_{i+1}` is present).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KoszulElement {
    nvars: usize,
    a: Composition,
    hom_degree: usize,
    coeffs: BTreeMap<u32, Polynomial>,
}

fn mask_ones_below(mask: u32, axis: usize) -> u32 {
    (mask & ((1u32 << axis) - 1)).count_ones()
}

impl KoszulElement {
    pub fn zero(a: &Composition, hom_degree: usize) -> Self {
        KoszulElement {
            nvars: a.len(),
            a: a.clone(),
            hom_degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit `1 * e_{}` in homological degree zero.
    pub fn unit(a: &Composition) -> Self {
        let nvars = a.len();
        let mut e = KoszulElement::zero(a, 0);
        e.coeffs.insert(0, Polynomial::one(nvars));
        e
    }

    /// Builds from (subset, coefficient) pairs; subsets are 1-based axis
    /// lists, coefficients for equal subsets accumulate.
    pub fn from_parts(a: &Composition, hom_degree: usize, parts: Vec<(Vec<usize>, Polynomial)>) -> Self {
        let mut e = KoszulElement::zero(a, hom_degree);
        for (subset, p) in parts {
            let mut mask = 0u32;
            for idx in subset {
                assert!((1..=a.len()).contains(&idx), "axis index out of range");
                assert_eq!(mask & (1 << (idx - 1)), 0, "repeated axis in a subset");
                mask |= 1 << (idx - 1);
            }
            assert_eq!(mask.count_ones() as usize, hom_degree, "subset size must match the degree");
            e.add_part(mask, p);
        }
        e
    }

    fn add_part(&mut self, mask: u32, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        debug_assert_eq!(mask.count_ones() as usize, self.hom_degree);
        match self.coeffs.remove(&mask) {
            None => {
                self.coeffs.insert(mask, p);
            }
            Some(old) => {
                let sum = &old + &p;
                if !sum.is_zero() {
                    self.coeffs.insert(mask, sum);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn powers(&self) -> &Composition {
        &self.a
    }

    pub fn hom_degree(&self) -> usize {
        self.hom_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of the basis element for a 1-based axis subset.
    pub fn coeff(&self, subset: &[usize]) -> Polynomial {
        let mut mask = 0u32;
        for &idx in subset {
            mask |= 1 << (idx - 1);
        }
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// Iterates (1-based subset, coefficient) pairs in mask order.
    pub fn parts(&self) -> impl Iterator<Item = (Vec<usize>, &Polynomial)> {
        self.coeffs.iter().map(move |(&mask, p)| {
            let subset: Vec<usize> =
                (0..self.nvars).filter(|&i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            (subset, p)
        })
    }

    pub fn add(&self, other: &KoszulElement) -> KoszulElement {
        assert_eq!(self.a, other.a);
        assert_eq!(self.hom_degree, other.hom_degree);
        let mut out = self.clone();
        for (&mask, p) in &other.coeffs {
            out.add_part(mask, p.clone());
        }
        out
    }

    pub fn scale_poly(&self, p: &Polynomial) -> KoszulElement {
        let mut out = KoszulElement::zero(&self.a, self.hom_degree);
        if p.is_zero() {
            return out;
        }
        for (&mask, r) in &self.coeffs {
            out.add_part(mask, r * p);
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> KoszulElement {
        let mut out = KoszulElement::zero(&self.a, self.hom_degree);
        for (&mask, r) in &self.coeffs {
            out.add_part(mask, r.scale(c));
        }
        out
    }

    /// Exterior product; signs follow from moving each factor of `self`
    /// past the smaller factors of `other`.
    pub fn wedge(&self, other: &KoszulElement) -> KoszulElement {
        assert_eq!(self.a, other.a);
        let degree = self.hom_degree + other.hom_degree;
        let mut out = KoszulElement::zero(&self.a, degree);
        for (&s_mask, r) in &self.coeffs {
            for (&t_mask, q) in &other.coeffs {
                if s_mask & t_mask != 0 {
                    continue;
                }
                let mut flips = 0u32;
                for axis in 0..self.nvars {
                    if s_mask & (1 << axis) != 0 {
                        flips += mask_ones_below(t_mask, axis);
                    }
                }
                let prod = r * q;
                out.add_part(s_mask | t_mask, if flips % 2 == 0 { prod } else { -&prod });
            }
        }
        out
    }

    /// The Koszul differential; undefined in homological degree zero.
    pub fn differential(&self) -> Result<KoszulElement> {
        if self.hom_degree == 0 {
            return Err(Error::HomDegreeZero);
        }
        let mut out = KoszulElement::zero(&self.a, self.hom_degree - 1);
        for (&mask, r) in &self.coeffs {
            let mut position = 0u32;
            for axis in 0..self.nvars {
                if mask & (1 << axis) == 0 {
                    continue;
                }
                position += 1;
                let mut exps = vec![0u32; self.nvars];
                exps[axis] = self.a.parts()[axis];
                let term = r.mul_monomial(&Monomial::from_exps(exps));
                out.add_part(mask & !(1 << axis), if position % 2 == 1 { term } else { -&term });
            }
        }
        Ok(out)
    }

    /// The connection sending `r * v` to `sum_i (dr/dx^{a_i}) e_i ∧ v`,
    /// with the generalized partial derivatives.
    pub fn nabla(&self) -> KoszulElement {
        let mut out = KoszulElement::zero(&self.a, self.hom_degree + 1);
        for (&mask, r) in &self.coeffs {
            for axis in 0..self.nvars {
                if mask & (1 << axis) != 0 {
                    continue;
                }
                let d = r.gen_derivative(axis, self.a.parts()[axis]);
                if d.is_zero() {
                    continue;
                }
                let signed = if mask_ones_below(mask, axis) % 2 == 0 { d } else { -&d };
                out.add_part(mask | (1 << axis), signed);
            }
        }
        out
    }

    /// The weighted connection: each part of internal degree `m + l`
    /// (grading degree `m`, homological degree `l`) is scaled by
    /// `1/(m + l)` before applying [`nabla`]. Defined only on elements of
    /// positive internal degree.
    pub fn nabla_tilde(&self) -> Result<KoszulElement> {
        let mut out = KoszulElement::zero(&self.a, self.hom_degree + 1);
        for (&mask, r) in &self.coeffs {
            for (m, component) in r.a_degree_split(self.a.parts()) {
                if m == 0 {
                    if self.hom_degree == 0 {
                        return Err(Error::NotPositiveDegree);
                    }
                    continue;
                }
                let weight = rat_frac(1, i64::from(m) + self.hom_degree as i64);
                for axis in 0..self.nvars {
                    if mask & (1 << axis) != 0 {
                        continue;
                    }
                    let d = component.gen_derivative(axis, self.a.parts()[axis]);
                    if d.is_zero() {
                        continue;
                    }
                    let scaled = d.scale(&weight);
                    let signed =
                        if mask_ones_below(mask, axis) % 2 == 0 { scaled } else { -&scaled };
                    out.add_part(mask | (1 << axis), signed);
                }
            }
        }
        Ok(out)
    }

    /// Reduces every coefficient modulo the ideal.
    pub fn reduce_mod(&self, i: &IdealHandle) -> KoszulElement {
        let mut out = KoszulElement::zero(&self.a, self.hom_degree);
        for (&mask, r) in &self.coeffs {
            out.add_part(mask, i.normal_form(r));
        }
        out
    }

    /// Scales so the first nonzero coefficient (in mask order) is monic.
    pub fn normalize(&self) -> KoszulElement {
        match self.coeffs.values().next() {
            None => self.clone(),
            Some(first) => {
                let (_, lc) = first.lead_term().expect("stored coefficients are nonzero");
                let inv = Coeff::one() / lc;
                self.scale(&inv)
            }
        }
    }
}

/// Lifts each basis vector of the free module in homological degree `t`
/// through `t` staircase steps, alternating the resolution map with the
/// weighted connection, landing in Koszul degree `t`. The coefficients of
/// the results are reduced modulo `i` and normalized. Requires every
/// entry of the degree-`t` map to lie in the monomial ideal of the pure
/// powers `x_i^{a_i}`.
pub fn koszul_cycle_generators(
    complex: &FreeComplex,
    i: &IdealHandle,
    a: &Composition,
    t: usize,
) -> Result<Vec<KoszulElement>> {
    let nvars = complex.nvars;
    assert_eq!(a.len(), nvars, "power vector length must match the ring");
    assert!(t >= 1 && t <= complex.length(), "homological degree out of range");
    let top = complex.map(t);
    for r in 0..top.rows() {
        for c in 0..top.cols() {
            if top.entry(r, c).a_degree_split(a.parts()).contains_key(&0) {
                return Err(Error::BadInput(format!(
                    "entry ({},{}) of the degree-{t} map lies outside the ideal of the pure powers",
                    r + 1,
                    c + 1
                )));
            }
        }
    }
    let mut out = Vec::with_capacity(complex.betti[t]);
    for start in 0..complex.betti[t] {
        let mut state: Vec<KoszulElement> = (0..complex.betti[t])
            .map(|k| if k == start { KoszulElement::unit(a) } else { KoszulElement::zero(a, 0) })
            .collect();
        for step in (1..=t).rev() {
            let phi = complex.map(step);
            let degree = state[0].hom_degree();
            let mut next: Vec<KoszulElement> =
                (0..phi.rows()).map(|_| KoszulElement::zero(a, degree)).collect();
            for (col, v) in state.iter().enumerate() {
                for (row, slot) in next.iter_mut().enumerate() {
                    *slot = slot.add(&v.scale_poly(phi.entry(row, col)));
                }
            }
            state = next
                .into_iter()
                .map(|v| v.nabla_tilde())
                .collect::<Result<Vec<_>>>()?;
        }
        debug_assert_eq!(state.len(), 1);
        let cycle = state.pop().expect("resolutions start at rank one");
        out.push(cycle.reduce_mod(i).normalize());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::IdealHandle;
    use crate::input::parse_poly;
    use crate::poly::default_names;
    use crate::resolution::minimal_free_resolution;

    fn p2(src: &str) -> Polynomial {
        parse_poly(src, &default_names(2)).unwrap()
    }

    fn a2(parts: [u32; 2]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn differential_of_the_top_generator() {
        let a = a2([1, 1]);
        let e12 = KoszulElement::from_parts(&a, 2, vec![(vec![1, 2], p2("1"))]);
        let d = e12.differential().unwrap();
        assert_eq!(d.coeff(&[1]), p2("-y"));
        assert_eq!(d.coeff(&[2]), p2("x"));
    }

    #[test]
    fn differential_squares_to_zero() {
        let a = Composition::new(vec![2, 3, 2]);
        let names = default_names(3);
        let r = parse_poly("x^2*y + 5*z^4 + x*y*z", &names).unwrap();
        let v = KoszulElement::from_parts(&a, 2, vec![(vec![1, 3], r), (vec![2, 3], parse_poly("x^5 - y^3", &names).unwrap())]);
        let dd = v.differential().unwrap().differential().unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn differential_rejects_degree_zero() {
        let a = a2([1, 1]);
        match KoszulElement::unit(&a).differential() {
            Err(crate::Error::HomDegreeZero) => {}
            other => panic!("expected the degree-zero error, got {other:?}"),
        }
    }

    #[test]
    fn nabla_uses_generalized_derivatives() {
        let a = a2([2, 3]);
        let v = KoszulElement::from_parts(&a, 0, vec![(vec![], p2("x^5"))]);
        let g = v.nabla();
        assert_eq!(g.coeff(&[1]), p2("2*x^3"));
        assert!(g.coeff(&[2]).is_zero());
    }

    #[test]
    fn nabla_picks_up_the_wedge_sign() {
        let a = a2([1, 1]);
        let v = KoszulElement::from_parts(&a, 1, vec![(vec![2], p2("x*y"))]);
        let g = v.nabla();
        assert_eq!(g.coeff(&[1, 2]), p2("y"));
        let w = KoszulElement::from_parts(&a, 1, vec![(vec![1], p2("x*y"))]);
        assert_eq!(w.nabla().coeff(&[1, 2]), p2("-x"));
    }

    #[test]
    fn weighted_connection_on_a_cycle() {
        let a = a2([1, 1]);
        let v = KoszulElement::from_parts(&a, 1, vec![(vec![1], p2("x*y"))]);
        let g = v.nabla_tilde().unwrap();
        assert_eq!(g.coeff(&[1, 2]), p2("-1/3*x"));
    }

    #[test]
    fn weighted_connection_rejects_internal_degree_zero() {
        let a = a2([2, 3]);
        let v = KoszulElement::from_parts(&a, 0, vec![(vec![], p2("x"))]);
        match v.nabla_tilde() {
            Err(crate::Error::NotPositiveDegree) => {}
            other => panic!("expected the positivity error, got {other:?}"),
        }
    }

    #[test]
    fn homotopy_identity_on_a_positive_degree_element() {
        let a = a2([1, 1]);
        let v = KoszulElement::from_parts(&a, 1, vec![(vec![1], p2("x*y"))]);
        let lhs = v.nabla_tilde().unwrap().differential().unwrap();
        let rhs = v.differential().unwrap().nabla_tilde().unwrap();
        assert_eq!(lhs.add(&rhs), v);
    }

    #[test]
    fn homotopy_identity_in_degree_zero() {
        let a = a2([2, 2]);
        let v = KoszulElement::from_parts(&a, 0, vec![(vec![], p2("x^3*y^2 + x^2"))]);
        let back = v.nabla_tilde().unwrap().differential().unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn wedge_is_alternating_and_signed() {
        let a = a2([1, 1]);
        let e1 = KoszulElement::from_parts(&a, 1, vec![(vec![1], p2("1"))]);
        let e2 = KoszulElement::from_parts(&a, 1, vec![(vec![2], p2("1"))]);
        assert_eq!(e1.wedge(&e2).coeff(&[1, 2]), p2("1"));
        assert_eq!(e2.wedge(&e1).coeff(&[1, 2]), p2("-1"));
        assert!(e1.wedge(&e1).is_zero());
    }

    #[test]
    fn staircase_on_a_plane_complete_intersection() {
        let i = IdealHandle::new(2, vec![p2("x^2"), p2("y^2")]);
        let c = minimal_free_resolution(&i).unwrap();
        let cycles = koszul_cycle_generators(&c, &i, &a2([1, 1]), 2).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].coeff(&[1, 2]), p2("x*y"));
    }

    #[test]
    fn staircase_on_the_maximal_ideal() {
        let i = IdealHandle::new(2, vec![p2("x"), p2("y")]);
        let c = minimal_free_resolution(&i).unwrap();
        let cycles = koszul_cycle_generators(&c, &i, &a2([1, 1]), 2).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].coeff(&[1, 2]), p2("1"));
    }

    #[test]
    fn staircase_checks_the_entry_containment() {
        let i = IdealHandle::new(2, vec![p2("x"), p2("y")]);
        let c = minimal_free_resolution(&i).unwrap();
        match koszul_cycle_generators(&c, &i, &a2([2, 2]), 2) {
            Err(crate::Error::BadInput(_)) => {}
            other => panic!("expected the containment error, got {other:?}"),
        }
    }
}
