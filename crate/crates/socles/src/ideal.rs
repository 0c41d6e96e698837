//! Ideal and submodule handles with cached reduced Groebner bases, and
//! the ideal calculus built on them: sums, products, quotients,
//! intersections, colengths, and membership at the origin.

use crate::groebner::{
    buchberger, groebner_basis, groebner_basis_ord, normal_form, normal_form_vec, syzygy_generators,
    vec_is_zero,
};
use crate::poly::{Monomial, Polynomial, TermOrder};
use crate::{Error, Result};
use num_traits::Zero;
use std::sync::OnceLock;

/// An ideal of `Q[x_1..x_d]`, carrying its generators and a lazily
/// computed reduced degrevlex Groebner basis. The basis is written once
/// and shared afterwards.
#[derive(Debug)]
pub struct IdealHandle {
    nvars: usize,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let out = IdealHandle {
            nvars: self.nvars,
            gens: self.gens.clone(),
            gb: OnceLock::new(),
        };
        if let Some(b) = self.gb.get() {
            let _ = out.gb.set(b.clone());
        }
        out
    }
}

impl IdealHandle {
    /// Builds from generators; zero generators are dropped.
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "generator lives in the wrong ring");
        }
        IdealHandle { nvars, gens, gb: OnceLock::new() }
    }

    /// Wraps an already reduced Groebner basis without recomputing it.
    fn from_reduced_basis(nvars: usize, basis: Vec<Polynomial>) -> Self {
        let h = IdealHandle::new(nvars, basis.clone());
        let _ = h.gb.set(basis);
        h
    }

    pub fn unit(nvars: usize) -> Self {
        IdealHandle::from_reduced_basis(nvars, vec![Polynomial::one(nvars)])
    }

    pub fn zero(nvars: usize) -> Self {
        IdealHandle::from_reduced_basis(nvars, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced degrevlex Groebner basis, computed on first use.
    pub fn basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| groebner_basis(&self.gens, self.nvars))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.basis())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis().iter().any(|p| p.degree() == Some(0))
    }
}

/// A submodule of a free module `R^rank`, with the same caching scheme.
#[derive(Debug)]
pub struct ModuleHandle {
    nvars: usize,
    rank: usize,
    gens: Vec<Vec<Polynomial>>,
    gb: OnceLock<Vec<Vec<Polynomial>>>,
}

impl Clone for ModuleHandle {
    fn clone(&self) -> Self {
        let out = ModuleHandle {
            nvars: self.nvars,
            rank: self.rank,
            gens: self.gens.clone(),
            gb: OnceLock::new(),
        };
        if let Some(b) = self.gb.get() {
            let _ = out.gb.set(b.clone());
        }
        out
    }
}

impl ModuleHandle {
    pub fn new(nvars: usize, rank: usize, gens: Vec<Vec<Polynomial>>) -> Self {
        assert!(rank >= 1);
        let gens: Vec<Vec<Polynomial>> = gens.into_iter().filter(|v| !vec_is_zero(v)).collect();
        for v in &gens {
            assert_eq!(v.len(), rank, "generator rank mismatch");
        }
        ModuleHandle { nvars, rank, gens, gb: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    pub fn basis(&self) -> &[Vec<Polynomial>] {
        self.gb
            .get_or_init(|| buchberger(self.rank, self.nvars, &self.gens, TermOrder::DegRevLex))
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        vec_is_zero(&normal_form_vec(v, self.basis(), TermOrder::DegRevLex))
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.is_empty()
    }
}

/// The colon ideal `(N : v) = { r : r*v in N }` for a vector `v`, read off
/// the tracking coordinates of syzygies of `[v | gens N]`.
pub fn module_colon_vector(n: &ModuleHandle, v: &[Polynomial]) -> IdealHandle {
    assert_eq!(v.len(), n.rank());
    let mut columns = vec![v.to_vec()];
    columns.extend(n.gens().iter().cloned());
    let syz = syzygy_generators(n.rank(), n.nvars(), &columns);
    IdealHandle::new(n.nvars(), syz.into_iter().map(|w| w.into_iter().next().unwrap()).collect())
}

/// Whether `v` lies in `N` after localizing at the origin: some generator
/// of `(N : v)` must have a nonzero constant term.
pub fn local_membership(v: &[Polynomial], n: &ModuleHandle) -> bool {
    let colon = module_colon_vector(n, v);
    colon.gens().iter().any(|p| !p.constant_term().is_zero())
}

/// Ideal version of [`local_membership`].
pub fn local_membership_ideal(f: &Polynomial, i: &IdealHandle) -> bool {
    let n = ModuleHandle::new(i.nvars(), 1, i.gens().iter().map(|g| vec![g.clone()]).collect());
    local_membership(std::slice::from_ref(f), &n)
}

/// `(I : g)` for a single polynomial.
pub fn ideal_colon_element(i: &IdealHandle, g: &Polynomial) -> IdealHandle {
    let n = ModuleHandle::new(i.nvars(), 1, i.gens().iter().map(|f| vec![f.clone()]).collect());
    module_colon_vector(&n, std::slice::from_ref(g))
}

fn extend_by_t(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.nvars() + 1,
        p.terms().map(|(m, c)| {
            let mut exps = Vec::with_capacity(m.nvars() + 1);
            exps.push(0);
            exps.extend_from_slice(m.exps());
            (Monomial::from_exps(exps), c.clone())
        }),
    )
}

fn contract_t(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.nvars() - 1,
        p.terms().map(|(m, c)| {
            debug_assert_eq!(m.exp(0), 0);
            (Monomial::from_exps(m.exps()[1..].to_vec()), c.clone())
        }),
    )
}

/// `I ∩ J` by eliminating `t` from `t*I + (1-t)*J` in `Q[t, x_1..x_d]`.
pub fn ideal_intersection(a: &IdealHandle, b: &IdealHandle) -> IdealHandle {
    assert_eq!(a.nvars(), b.nvars());
    let nvars = a.nvars();
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return IdealHandle::zero(nvars);
    }
    let ext = nvars + 1;
    let t = Polynomial::var(0, ext);
    let one_minus_t = &Polynomial::one(ext) - &t;
    let mut gens = Vec::with_capacity(a.gens().len() + b.gens().len());
    for f in a.gens() {
        gens.push(&t * &extend_by_t(f));
    }
    for g in b.gens() {
        gens.push(&one_minus_t * &extend_by_t(g));
    }
    let basis = groebner_basis_ord(&gens, ext, TermOrder::ElimFirst);
    let mut kept: Vec<Polynomial> = basis
        .into_iter()
        .filter(|p| p.terms().all(|(m, _)| m.exp(0) == 0))
        .map(|p| contract_t(&p))
        .collect();
    let mut wrapped: Vec<Vec<Polynomial>> = kept.drain(..).map(|p| vec![p]).collect();
    crate::groebner::sort_canonical(&mut wrapped, TermOrder::DegRevLex);
    IdealHandle::from_reduced_basis(nvars, wrapped.into_iter().map(|mut v| v.pop().unwrap()).collect())
}

/// `(I : J)`, as the intersection of `(I : g)` over the generators of `J`.
pub fn ideal_quotient(i: &IdealHandle, j: &IdealHandle) -> Result<IdealHandle> {
    if j.is_zero_ideal() {
        return Err(Error::ColonByZeroIdeal);
    }
    let mut acc: Option<IdealHandle> = None;
    for g in j.gens() {
        let colon = ideal_colon_element(i, g);
        acc = Some(match acc {
            None => colon,
            Some(prev) => ideal_intersection(&prev, &colon),
        });
    }
    Ok(acc.expect("nonzero ideal has a generator"))
}

pub fn ideal_sum(a: &IdealHandle, b: &IdealHandle) -> IdealHandle {
    assert_eq!(a.nvars(), b.nvars());
    let mut gens = a.gens().to_vec();
    gens.extend(b.gens().iter().cloned());
    IdealHandle::new(a.nvars(), gens)
}

pub fn ideal_product(a: &IdealHandle, b: &IdealHandle) -> IdealHandle {
    assert_eq!(a.nvars(), b.nvars());
    let mut gens = Vec::with_capacity(a.gens().len() * b.gens().len());
    for f in a.gens() {
        for g in b.gens() {
            gens.push(f * g);
        }
    }
    IdealHandle::new(a.nvars(), gens)
}

/// Equality of ideals via their unique reduced bases.
pub fn ideal_equal(a: &IdealHandle, b: &IdealHandle) -> bool {
    a.basis() == b.basis()
}

/// The monomials outside the lead-term ideal, sorted ascending; errors
/// with the first axis lacking a pure power when the quotient is not
/// finite-dimensional.
pub fn standard_monomials(i: &IdealHandle) -> Result<Vec<Monomial>> {
    let nvars = i.nvars();
    let basis = i.basis();
    if basis.iter().any(|p| p.degree() == Some(0)) {
        return Ok(Vec::new());
    }
    let leads: Vec<&Monomial> = basis.iter().map(|p| p.lead_monomial().expect("basis elements are nonzero")).collect();
    let mut bounds: Vec<Option<u32>> = vec![None; nvars];
    for m in &leads {
        let nonzero: Vec<usize> = (0..nvars).filter(|&k| m.exp(k) > 0).collect();
        if let [axis] = nonzero[..] {
            let e = m.exp(axis);
            bounds[axis] = Some(bounds[axis].map_or(e, |b| b.min(e)));
        }
    }
    let mut box_bounds = Vec::with_capacity(nvars);
    for (axis, b) in bounds.iter().enumerate() {
        box_bounds.push(b.ok_or(Error::NotArtinian(axis + 1))?);
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exps(exps.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut axis = 0;
        loop {
            if axis == nvars {
                out.sort();
                return Ok(out);
            }
            exps[axis] += 1;
            if exps[axis] < box_bounds[axis] {
                break;
            }
            exps[axis] = 0;
            axis += 1;
        }
    }
}

/// `dim_Q R/I`, the number of standard monomials.
pub fn colength(i: &IdealHandle) -> Result<usize> {
    standard_monomials(i).map(|v| v.len())
}

/// All monomials of total degree `s` in `d` variables.
pub fn monomials_of_degree(s: u32, nvars: usize) -> Vec<Monomial> {
    fn rec(s: u32, axis: usize, nvars: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if axis == nvars - 1 {
            cur.push(s);
            out.push(Monomial::from_exps(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=s {
            cur.push(e);
            rec(s - e, axis + 1, nvars, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(nvars);
    rec(s, 0, nvars, &mut cur, &mut out);
    out
}

/// The power `m^s` of the irrelevant maximal ideal, `s >= 1`.
pub fn max_ideal_power(s: u32, nvars: usize) -> IdealHandle {
    assert!(s >= 1, "m^0 is the unit ideal; powers start at s = 1");
    IdealHandle::new(
        nvars,
        monomials_of_degree(s, nvars)
            .into_iter()
            .map(|m| Polynomial::from_monomial(m, nvars))
            .collect(),
    )
}

/// Outcome of the origin-primality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OriginPrimary {
    pub ok: bool,
    /// A witness exponent with `m^D ⊆ I`, present when `ok`.
    pub bound: Option<u32>,
}

/// Decides whether `I` is primary to the origin: every variable must be
/// nilpotent modulo `I`. With `N_i` the least power putting `x_i^{N_i}`
/// into `I`, any monomial of degree `D = 1 + sum_i (N_i - 1)` is divisible
/// by some `x_i^{N_i}`, so `m^D ⊆ I`; if some `x_i^colength` stays out,
/// `x_i` has a nonzero value on the zero set. The unit ideal is rejected.
pub fn origin_primary_check(i: &IdealHandle) -> OriginPrimary {
    let nvars = i.nvars();
    if i.basis().iter().any(|p| p.degree() == Some(0)) {
        return OriginPrimary { ok: false, bound: None };
    }
    let n = match colength(i) {
        Ok(n) => n as u32,
        Err(_) => return OriginPrimary { ok: false, bound: None },
    };
    let mut d_bound: u32 = 1;
    for axis in 0..nvars {
        let nilpotency = (1..=n).find(|&t| {
            let mut exps = vec![0u32; nvars];
            exps[axis] = t;
            i.contains(&Polynomial::from_monomial(Monomial::from_exps(exps), nvars))
        });
        match nilpotency {
            Some(t) => d_bound += t - 1,
            None => return OriginPrimary { ok: false, bound: None },
        }
    }
    OriginPrimary { ok: true, bound: Some(d_bound) }
}
