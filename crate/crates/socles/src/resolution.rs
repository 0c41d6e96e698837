//! Minimal free resolutions of origin-primary quotients, built by
//! iterated syzygy computation with minimalization at the origin.

use crate::groebner::{sort_canonical, syzygy_generators, vec_is_zero, vec_monic};
use crate::ideal::{local_membership, origin_primary_check, IdealHandle, ModuleHandle};
use crate::matrix::PolyMatrix;
use crate::poly::{Polynomial, TermOrder};
use crate::{Error, Result};
use num_traits::Zero;

/// Prunes a generating set down to a minimal one over the local ring at
/// the origin: a vector is dropped when it lies in the submodule spanned
/// by the others together with `m` times the original module.
pub fn minimal_generators(
    nvars: usize,
    rank: usize,
    gens: &[Vec<Polynomial>],
) -> Vec<Vec<Polynomial>> {
    let mut kept: Vec<Vec<Polynomial>> = gens.iter().filter(|v| !vec_is_zero(v)).cloned().collect();
    sort_canonical(&mut kept, TermOrder::DegRevLex);
    let m_times: Vec<Vec<Polynomial>> = kept
        .iter()
        .flat_map(|v| {
            (0..nvars).map(move |axis| {
                let x = Polynomial::var(axis, nvars);
                v.iter().map(|p| &x * p).collect::<Vec<_>>()
            })
        })
        .collect();
    'scan: loop {
        for i in 0..kept.len() {
            let mut others: Vec<Vec<Polynomial>> = Vec::with_capacity(kept.len() - 1 + m_times.len());
            others.extend(kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()));
            others.extend(m_times.iter().cloned());
            let n = ModuleHandle::new(nvars, rank, others);
            if local_membership(&kept[i], &n) {
                kept.remove(i);
                continue 'scan;
            }
        }
        break;
    }
    let mut out: Vec<Vec<Polynomial>> = kept.into_iter().map(|v| vec_monic(&v, TermOrder::DegRevLex)).collect();
    sort_canonical(&mut out, TermOrder::DegRevLex);
    out
}

/// A finite complex of free modules `R^{b_0} <- R^{b_1} <- ...` with the
/// maps stored as matrices acting on column vectors.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub nvars: usize,
    /// Ranks `b_0, b_1, ..., b_len`.
    pub betti: Vec<usize>,
    /// `maps[i]` is the matrix of `phi_{i+1} : R^{b_{i+1}} -> R^{b_i}`.
    pub maps: Vec<PolyMatrix>,
}

impl FreeComplex {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// The map `phi_i` for `1 <= i <= length`.
    pub fn map(&self, i: usize) -> &PolyMatrix {
        &self.maps[i - 1]
    }

    /// Checks shape consistency, `phi_i * phi_{i+1} = 0`, vanishing of all
    /// entries of `phi_{i >= 2}` at the origin, and the alternating rank sum.
    pub fn validate(&self) -> Result<()> {
        if self.betti.len() != self.maps.len() + 1 {
            return Err(Error::Internal("rank list does not match the maps".into()));
        }
        for (i, mx) in self.maps.iter().enumerate() {
            if mx.rows() != self.betti[i] || mx.cols() != self.betti[i + 1] {
                return Err(Error::Internal(format!("map {} has the wrong shape", i + 1)));
            }
        }
        for i in 1..self.maps.len() {
            let prod = self.maps[i - 1].matmul(&self.maps[i]);
            for r in 0..prod.rows() {
                for c in 0..prod.cols() {
                    if !prod.entry(r, c).is_zero() {
                        return Err(Error::Internal(format!(
                            "composite phi_{}*phi_{} is nonzero",
                            i,
                            i + 1
                        )));
                    }
                }
            }
        }
        for (i, mx) in self.maps.iter().enumerate() {
            for r in 0..mx.rows() {
                for c in 0..mx.cols() {
                    if !mx.entry(r, c).constant_term().is_zero() {
                        return Err(Error::Internal(format!(
                            "entry ({r},{c}) of phi_{} is a unit at the origin",
                            i + 1
                        )));
                    }
                }
            }
        }
        let mut euler: i64 = 0;
        for (i, b) in self.betti.iter().enumerate() {
            let signed = *b as i64;
            euler += if i % 2 == 0 { signed } else { -signed };
        }
        if euler != 0 {
            return Err(Error::Internal("alternating rank sum is nonzero".into()));
        }
        Ok(())
    }

    /// The smallest order among the entries of the ideal of entries of the
    /// last map; infinite orders (zero entries) are skipped.
    pub fn order_of_last_map(&self) -> u32 {
        let last = self.maps.last().expect("complex has at least one map");
        let mut best: Option<u32> = None;
        for r in 0..last.rows() {
            for c in 0..last.cols() {
                if let Some(o) = last.entry(r, c).order() {
                    best = Some(best.map_or(o, |b| b.min(o)));
                }
            }
        }
        best.expect("last map of a resolution is nonzero")
    }

    /// The ideal generated by the entries of `phi_i`.
    pub fn entry_ideal(&self, i: usize) -> IdealHandle {
        let mx = self.map(i);
        let mut gens = Vec::new();
        for r in 0..mx.rows() {
            for c in 0..mx.cols() {
                gens.push(mx.entry(r, c).clone());
            }
        }
        IdealHandle::new(self.nvars, gens)
    }
}

fn columns_to_matrix(nvars: usize, rank: usize, cols: &[Vec<Polynomial>]) -> PolyMatrix {
    let mut entries = vec![vec![Polynomial::zero(nvars); cols.len()]; rank];
    for (j, col) in cols.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            entries[i][j] = p.clone();
        }
    }
    PolyMatrix::new(entries).expect("columns share a rank")
}

/// Resolves `R/I` for an origin-primary ideal by a minimal free
/// resolution; the length always comes out equal to the number of
/// variables.
pub fn minimal_free_resolution(i: &IdealHandle) -> Result<FreeComplex> {
    let nvars = i.nvars();
    if !origin_primary_check(i).ok {
        return Err(Error::NotOriginPrimary);
    }
    let gens1 = minimal_generators(nvars, 1, &i.gens().iter().map(|g| vec![g.clone()]).collect::<Vec<_>>());
    let mut betti = vec![1usize, gens1.len()];
    let mut maps = vec![columns_to_matrix(nvars, 1, &gens1)];
    let mut current_rank = 1usize;
    let mut current_cols = gens1;
    loop {
        let syz = syzygy_generators(current_rank, nvars, &current_cols);
        let minimal = minimal_generators(nvars, current_cols.len(), &syz);
        if minimal.is_empty() {
            break;
        }
        if maps.len() == nvars {
            return Err(Error::Internal(
                "resolution exceeds the number of variables".into(),
            ));
        }
        current_rank = current_cols.len();
        betti.push(minimal.len());
        maps.push(columns_to_matrix(nvars, current_rank, &minimal));
        current_cols = minimal;
    }
    if maps.len() != nvars {
        return Err(Error::Internal(format!(
            "resolution of an Artinian quotient must have length {nvars}, got {}",
            maps.len()
        )));
    }
    let complex = FreeComplex { nvars, betti, maps };
    complex.validate()?;
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ideal_equal, IdealHandle};
    use crate::input::parse_poly;
    use crate::poly::default_names;

    fn ideal(nvars: usize, srcs: &[&str]) -> IdealHandle {
        let names = default_names(nvars);
        IdealHandle::new(nvars, srcs.iter().map(|s| parse_poly(s, &names).unwrap()).collect())
    }

    fn entry_strings(mx: &PolyMatrix, names: &[String]) -> Vec<Vec<String>> {
        (0..mx.rows())
            .map(|r| (0..mx.cols()).map(|c| format!("{}", mx.entry(r, c).display(names))).collect())
            .collect()
    }

    #[test]
    fn complete_intersection_in_two_variables() {
        let i = ideal(2, &["x^2", "y^2"]);
        let c = minimal_free_resolution(&i).unwrap();
        assert_eq!(c.betti, vec![1, 2, 1]);
        let names = default_names(2);
        assert_eq!(entry_strings(c.map(2), &names), vec![vec!["y^2"], vec!["-x^2"]]);
        assert_eq!(c.order_of_last_map(), 2);
    }

    #[test]
    fn square_of_the_maximal_ideal() {
        let i = ideal(2, &["x^2", "x*y", "y^2"]);
        let c = minimal_free_resolution(&i).unwrap();
        assert_eq!(c.betti, vec![1, 3, 2]);
        assert_eq!(c.order_of_last_map(), 1);
    }

    #[test]
    fn minimal_generators_drop_redundant_elements() {
        let gens: Vec<Vec<Polynomial>> = ["x^2", "y^2", "x^2 + y^2", "x^3"]
            .iter()
            .map(|s| vec![parse_poly(s, &default_names(2)).unwrap()])
            .collect();
        let minimal = minimal_generators(2, 1, &gens);
        assert_eq!(minimal.len(), 2);
    }

    #[test]
    fn mixed_generators_resolve_with_expected_ranks() {
        let i = ideal(2, &["x^2*y^2 + y^5", "x^4 + x^2*y^3", "x^6"]);
        let c = minimal_free_resolution(&i).unwrap();
        assert_eq!(c.betti, vec![1, 3, 2]);
        let entries = c.entry_ideal(2);
        assert!(ideal_equal(&entries, &ideal(2, &["x^2", "y^2"])));
        assert_eq!(c.order_of_last_map(), 2);
    }

    #[test]
    fn order_of_last_map_for_a_plane_complete_intersection() {
        let i = ideal(2, &["x^2", "y^3"]);
        let c = minimal_free_resolution(&i).unwrap();
        assert_eq!(c.betti, vec![1, 2, 1]);
        assert_eq!(c.order_of_last_map(), 2);
    }

    #[test]
    fn monomial_complete_intersections_have_last_order_min_exponent() {
        for (exps, expect) in [(vec![2u32, 2], 2u32), (vec![3, 2], 2), (vec![2, 3, 4], 2)] {
            let nvars = exps.len();
            let gens: Vec<Polynomial> = exps
                .iter()
                .enumerate()
                .map(|(axis, &k)| {
                    let mut e = vec![0u32; nvars];
                    e[axis] = k;
                    Polynomial::from_monomial(crate::poly::Monomial::from_exps(e), nvars)
                })
                .collect();
            let c = minimal_free_resolution(&IdealHandle::new(nvars, gens)).unwrap();
            assert_eq!(c.length(), nvars);
            assert_eq!(c.order_of_last_map(), expect);
        }
    }

    #[test]
    fn non_primary_input_is_rejected() {
        match minimal_free_resolution(&ideal(2, &["x"])) {
            Err(crate::Error::NotOriginPrimary) => {}
            other => panic!("expected the primality error, got {other:?}"),
        }
    }
}
