//! Iterated socles `I : m^s` three ways: a double-checked quotient
//! oracle, the decomposition over pure-power colons, and closed-form
//! generators from the Koszul staircase. Also the downstream checks:
//! reduction number one, the dimension drop, and complete-intersection
//! socles by a single determinant.

use crate::ideal::{
    ideal_equal, ideal_product, ideal_quotient, ideal_sum, max_ideal_power, monomials_of_degree,
    origin_primary_check, standard_monomials, IdealHandle,
};
use crate::koszul::koszul_cycle_generators;
use crate::linalg::nullspace;
use crate::matrix::PolyMatrix;
use crate::poly::{compositions, Coeff, Monomial, Polynomial};
use crate::resolution::FreeComplex;
use crate::{Error, Result};
use num_traits::Zero;

/// `C(n, k)` for the small counts that appear in rank formulas.
pub fn binomial(n: u64, k: u64) -> u64 {
    num_integer::binomial(n, k)
}

fn pure_power_ideal(a: &[u32], nvars: usize) -> IdealHandle {
    IdealHandle::new(
        nvars,
        a.iter()
            .enumerate()
            .map(|(axis, &k)| {
                let mut exps = vec![0u32; nvars];
                exps[axis] = k;
                Polynomial::from_monomial(Monomial::from_exps(exps), nvars)
            })
            .collect(),
    )
}

/// `I : m^s` by exact linear algebra alone: the multiplication action of
/// every degree-`s` monomial on the standard monomial basis of `R/I` is
/// assembled into one stacked matrix whose kernel is the socle. Shares no
/// code path with the Groebner quotient route.
pub fn socle_via_kernel(i: &IdealHandle, s: u32) -> Result<IdealHandle> {
    assert!(s >= 1);
    if !origin_primary_check(i).ok {
        return Err(Error::NotOriginPrimary);
    }
    let nvars = i.nvars();
    let std_mons = standard_monomials(i)?;
    let n = std_mons.len();
    let multipliers = monomials_of_degree(s, nvars);
    let mut rows: Vec<Vec<Coeff>> = Vec::with_capacity(multipliers.len() * n);
    for u in &multipliers {
        let mut block = vec![vec![Coeff::zero(); n]; n];
        for (j, b) in std_mons.iter().enumerate() {
            let nf = i.normal_form(&Polynomial::from_monomial(u.mul(b), nvars));
            for (m, c) in nf.terms() {
                let r = std_mons.binary_search(m).expect("normal forms live on standard monomials");
                block[r][j] = c.clone();
            }
        }
        rows.extend(block);
    }
    let kernel = nullspace(rows, n);
    let elements: Vec<Polynomial> = kernel
        .into_iter()
        .map(|v| {
            Polynomial::from_terms(
                nvars,
                std_mons.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect();
    Ok(ideal_sum(i, &IdealHandle::new(nvars, elements)))
}

/// `I : m^s` by Groebner quotient, cross-checked against an exact linear
/// kernel over the standard monomial basis of `R/I`. The two routes must
/// agree on the nose.
pub fn socle_oracle(i: &IdealHandle, s: u32) -> Result<IdealHandle> {
    assert!(s >= 1);
    if !origin_primary_check(i).ok {
        return Err(Error::NotOriginPrimary);
    }
    let quotient_route = ideal_quotient(i, &max_ideal_power(s, i.nvars()))?;
    let kernel_route = socle_via_kernel(i, s)?;
    if !ideal_equal(&quotient_route, &kernel_route) {
        return Err(Error::Internal("socle routes disagree".into()));
    }
    Ok(quotient_route)
}

/// `I : m^s` as the sum of `I : (x_1^{a_1}, ..., x_d^{a_d})` over all
/// positive `a` with `|a| = s + d - 1`; valid for `s` up to the order of
/// the last resolution map.
pub fn socle_via_decomposition(
    i: &IdealHandle,
    s: u32,
    complex: &FreeComplex,
) -> Result<IdealHandle> {
    assert!(s >= 1);
    let bound = complex.order_of_last_map();
    if s > bound {
        return Err(Error::SocleBound { s, bound });
    }
    let d = i.nvars();
    let mut acc = i.clone();
    for a in compositions(s + d as u32 - 1, d) {
        let colon = ideal_quotient(i, &pure_power_ideal(a.parts(), d))?;
        acc = ideal_sum(&acc, &colon);
    }
    Ok(acc)
}

/// Closed-form socle generators: for each positive composition `a` of
/// `s + d - 1` the Koszul staircase turns the last resolution map into
/// elements of `I : (x^a)`; their union generates `I : m^s` modulo `I`.
/// Coefficients reducing to zero modulo `I` are dropped.
pub fn socle_generators_formula(
    i: &IdealHandle,
    s: u32,
    complex: &FreeComplex,
) -> Result<Vec<Polynomial>> {
    assert!(s >= 1);
    let bound = complex.order_of_last_map();
    if s > bound {
        return Err(Error::SocleBound { s, bound });
    }
    let d = i.nvars();
    let top: Vec<usize> = (1..=d).collect();
    let mut out = Vec::new();
    for a in compositions(s + d as u32 - 1, d) {
        for cycle in koszul_cycle_generators(complex, i, &a, d)? {
            let coeff = cycle.coeff(&top);
            if !coeff.is_zero() {
                out.push(coeff);
            }
        }
    }
    Ok(out)
}

/// The predicted vector-space dimension of `(I : m^s)/I`, namely the
/// rank of the last free module times `C(s + d - 1, d)`.
pub fn predicted_socle_dimension(complex: &FreeComplex, s: u32) -> Result<u64> {
    assert!(s >= 1);
    let bound = complex.order_of_last_map();
    if s > bound {
        return Err(Error::SocleBound { s, bound });
    }
    let d = complex.nvars as u64;
    let rank = *complex.betti.last().expect("complex has ranks") as u64;
    Ok(rank * binomial(u64::from(s) + d - 1, d))
}

/// Result of checking `K^2 = I K` for `K = I : m^s`.
#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    pub s: u32,
    /// Largest `s` the theorem covers: the order of the last map minus one.
    pub bound: u32,
    pub in_range: bool,
    pub equal: bool,
    /// A product of two socle generators lying outside `I K`, when unequal.
    pub witness: Option<Polynomial>,
}

/// Checks that the iterated socle has reduction number one over the
/// ideal, reporting a witness product when it does not.
pub fn verify_reduction_one(
    i: &IdealHandle,
    s: u32,
    complex: &FreeComplex,
) -> Result<ReductionOutcome> {
    assert!(s >= 1);
    if i.nvars() < 2 {
        return Err(Error::BadInput(
            "the reduction check needs at least two variables".into(),
        ));
    }
    let bound = complex.order_of_last_map().saturating_sub(1);
    let in_range = s <= bound;
    let k = socle_oracle(i, s)?;
    let k_squared = ideal_product(&k, &k);
    let ik = ideal_product(i, &k);
    let equal = ideal_equal(&k_squared, &ik);
    let mut witness = None;
    if !equal {
        'outer: for (idx, f) in k.basis().iter().enumerate() {
            for g in &k.basis()[idx..] {
                let prod = f * g;
                if !ik.contains(&prod) {
                    witness = Some(prod);
                    break 'outer;
                }
            }
        }
    }
    Ok(ReductionOutcome { s, bound, in_range, equal, witness })
}

/// Result of comparing the observed and predicted dimension drops.
#[derive(Clone, Debug)]
pub struct DimensionOutcome {
    pub s: u32,
    pub bound: u32,
    pub in_range: bool,
    pub colength_ideal: usize,
    pub colength_socle: usize,
    pub observed_drop: usize,
    pub predicted_drop: u64,
    pub agrees: bool,
}

/// Compares `dim R/I - dim R/(I : m^s)` with the rank formula. Out of
/// range the numbers are still reported; no claim is made there.
pub fn verify_dimension_drop(
    i: &IdealHandle,
    s: u32,
    complex: &FreeComplex,
) -> Result<DimensionOutcome> {
    assert!(s >= 1);
    let bound = complex.order_of_last_map();
    let in_range = s <= bound;
    let socle = socle_oracle(i, s)?;
    let colength_ideal = crate::ideal::colength(i)?;
    let colength_socle = crate::ideal::colength(&socle)?;
    let observed_drop = colength_ideal - colength_socle;
    let d = i.nvars() as u64;
    let rank = *complex.betti.last().expect("complex has ranks") as u64;
    let predicted_drop = rank * binomial(u64::from(s) + d - 1, d);
    Ok(DimensionOutcome {
        s,
        bound,
        in_range,
        colength_ideal,
        colength_socle,
        observed_drop,
        predicted_drop,
        agrees: observed_drop as u64 == predicted_drop,
    })
}

/// The data of a complete-intersection socle: the coefficient matrix
/// expressing the parameters in the variables, its determinant, and the
/// socle `I + (det)`.
#[derive(Clone, Debug)]
pub struct CiSocleOutcome {
    pub matrix: PolyMatrix,
    pub determinant: Polynomial,
    pub socle: IdealHandle,
}

/// For a regular sequence `f_1, ..., f_d` cutting out the origin,
/// `I : m = I + (det C)` where `f_i = sum_j C_ij x_j`. Each monomial of
/// `f_i` is assigned to its smallest participating axis.
pub fn ci_socle(fs: &[Polynomial]) -> Result<CiSocleOutcome> {
    if fs.is_empty() {
        return Err(Error::BadInput("no parameters given".into()));
    }
    let d = fs[0].nvars();
    if fs.len() != d {
        return Err(Error::NotCompleteIntersection(format!(
            "need exactly {d} parameters in {d} variables, got {}",
            fs.len()
        )));
    }
    for (idx, f) in fs.iter().enumerate() {
        if !f.constant_term().is_zero() {
            return Err(Error::NotCompleteIntersection(format!(
                "parameter {} has a nonzero constant term",
                idx + 1
            )));
        }
    }
    let i = IdealHandle::new(d, fs.to_vec());
    if !origin_primary_check(&i).ok {
        return Err(Error::NotCompleteIntersection(
            "the parameters do not cut out the origin".into(),
        ));
    }
    let mut entries = vec![vec![Polynomial::zero(d); d]; d];
    for (row, f) in fs.iter().enumerate() {
        for (m, c) in f.terms() {
            let axis = (0..d).find(|&k| m.exp(k) > 0).expect("constant terms were rejected");
            let mut exps = m.exps().to_vec();
            exps[axis] -= 1;
            entries[row][axis].add_term(Monomial::from_exps(exps), c.clone());
        }
    }
    let matrix = PolyMatrix::new(entries)?;
    let determinant = matrix.det()?;
    let socle = ideal_sum(&i, &IdealHandle::new(d, vec![determinant.clone()]));
    Ok(CiSocleOutcome { matrix, determinant, socle })
}
