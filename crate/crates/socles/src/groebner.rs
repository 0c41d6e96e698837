//! Buchberger's algorithm for ideals and submodules of free modules.
//!
//! Elements of `R^rank` are `Vec<Polynomial>` of that length. The module
//! order is position-over-term: a term in an earlier coordinate beats any
//! term in a later one, ties within a coordinate fall to the scalar
//! order. Ideals are the rank-1 case. Pair selection is the normal
//! strategy (smallest lcm degree first); the coprimality criterion is
//! applied for ideals and the chain criterion in general. Reduced bases
//! are unique, so results do not depend on generator order.

use crate::poly::{Coeff, Monomial, Polynomial, TermOrder};
use std::cmp::Ordering;
use std::collections::BTreeSet;

pub fn vec_zero(rank: usize, nvars: usize) -> Vec<Polynomial> {
    vec![Polynomial::zero(nvars); rank]
}

pub fn vec_is_zero(v: &[Polynomial]) -> bool {
    v.iter().all(|p| p.is_zero())
}

/// Lead term under (position-over-term, `ord`): the first nonzero
/// coordinate carries it.
pub fn vec_lead<'a>(v: &'a [Polynomial], ord: TermOrder) -> Option<(usize, &'a Monomial, &'a Coeff)> {
    for (i, p) in v.iter().enumerate() {
        if !p.is_zero() {
            let (m, c) = p.lead_term_under(ord).expect("nonzero polynomial has a lead term");
            return Some((i, m, c));
        }
    }
    None
}

/// Compares module terms: earlier position wins, ties go to the scalar order.
pub fn cmp_module_terms(a: (usize, &Monomial), b: (usize, &Monomial), ord: TermOrder) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => ord.cmp(a.1, b.1),
    }
}

/// `target -= c * m * src`, coordinatewise.
fn vec_sub_scaled(target: &mut [Polynomial], src: &[Polynomial], m: &Monomial, c: &Coeff) {
    for (t, s) in target.iter_mut().zip(src) {
        for (sm, sc) in s.terms().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>() {
            t.add_term(sm.mul(m), -(sc * c));
        }
    }
}

/// Scales so the lead coefficient is 1.
pub fn vec_monic(v: &[Polynomial], ord: TermOrder) -> Vec<Polynomial> {
    match vec_lead(v, ord) {
        None => v.to_vec(),
        Some((_, _, c)) => {
            let inv = c.clone().recip();
            v.iter().map(|p| p.scale(&inv)).collect()
        }
    }
}

/// Outcome of dividing `v` by a list of vectors: `v = sum q_i b_i + remainder`
/// and no term of the remainder is divisible by any divisor's lead term.
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Vec<Polynomial>,
}

/// Full division of a vector by a list of vectors of the same rank.
pub fn divide_vec(v: &[Polynomial], basis: &[Vec<Polynomial>], ord: TermOrder) -> Division {
    let rank = v.len();
    assert!(rank >= 1, "vectors must have positive rank");
    let nvars = v[0].nvars();
    let leads: Vec<Option<(usize, Monomial, Coeff)>> = basis
        .iter()
        .map(|b| vec_lead(b, ord).map(|(p, m, c)| (p, m.clone(), c.clone())))
        .collect();
    let mut work = v.to_vec();
    let mut remainder = vec_zero(rank, nvars);
    let mut quotients = vec![Polynomial::zero(nvars); basis.len()];
    'outer: while let Some((pos, m, c)) = vec_lead(&work, ord) {
        let (pos, m, c) = (pos, m.clone(), c.clone());
        for (bi, lead) in leads.iter().enumerate() {
            if let Some((bpos, bm, bc)) = lead {
                if *bpos == pos && bm.divides(&m) {
                    let factor_m = bm.div_into(&m);
                    let factor_c = &c / bc;
                    vec_sub_scaled(&mut work, &basis[bi], &factor_m, &factor_c);
                    quotients[bi].add_term(factor_m, factor_c);
                    continue 'outer;
                }
            }
        }
        work[pos].add_term(m.clone(), -c.clone());
        remainder[pos].add_term(m, c);
    }
    Division { quotients, remainder }
}

/// Normal form of a vector modulo a basis.
pub fn normal_form_vec(v: &[Polynomial], basis: &[Vec<Polynomial>], ord: TermOrder) -> Vec<Polynomial> {
    divide_vec(v, basis, ord).remainder
}

fn spair(
    a: &[Polynomial],
    (am, _ac): (&Monomial, &Coeff),
    b: &[Polynomial],
    (bm, _bc): (&Monomial, &Coeff),
    nvars: usize,
) -> Vec<Polynomial> {
    let lcm = am.lcm(bm);
    let rank = a.len();
    let mut s = vec_zero(rank, nvars);
    vec_sub_scaled(&mut s, a, &am.div_into(&lcm), &crate::poly::rat(-1));
    vec_sub_scaled(&mut s, b, &bm.div_into(&lcm), &crate::poly::rat(1));
    s
}

/// Reduced Groebner basis of the submodule of `R^rank` generated by `gens`.
/// Every element is monic and fully reduced against the others; the list
/// is sorted by (order, descending lead term), which makes it canonical.
pub fn buchberger(rank: usize, nvars: usize, gens: &[Vec<Polynomial>], ord: TermOrder) -> Vec<Vec<Polynomial>> {
    let mut basis: Vec<Vec<Polynomial>> = Vec::new();
    for g in gens {
        assert_eq!(g.len(), rank, "generator rank mismatch");
        if !vec_is_zero(g) {
            basis.push(vec_monic(g, ord));
        }
    }

    let lead_of = |v: &[Polynomial]| -> (usize, Monomial) {
        let (p, m, _) = vec_lead(v, ord).expect("basis vectors are nonzero");
        (p, m.clone())
    };
    let mut leads: Vec<(usize, Monomial)> = basis.iter().map(|v| lead_of(v)).collect();

    // Pending S-pairs keyed by (lcm degree, i, j): normal selection strategy.
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pair = |queue: &mut BTreeSet<(u32, usize, usize)>,
                     pending: &mut BTreeSet<(usize, usize)>,
                     leads: &[(usize, Monomial)],
                     i: usize,
                     j: usize| {
        let (pi, mi) = &leads[i];
        let (pj, mj) = &leads[j];
        if pi == pj {
            let deg = mi.lcm(mj).degree();
            queue.insert((deg, i, j));
            pending.insert((i, j));
        }
    };

    for j in 1..basis.len() {
        for i in 0..j {
            push_pair(&mut queue, &mut pending, &leads, i, j);
        }
    }

    while let Some(&(deg, i, j)) = queue.iter().next() {
        queue.remove(&(deg, i, j));
        pending.remove(&(i, j));
        let (pi, mi) = leads[i].clone();
        let (_, mj) = leads[j].clone();

        if rank == 1 && mi.is_coprime(&mj) {
            continue;
        }
        let lcm = mi.lcm(&mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].0 == pi
                && leads[k].1.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let (lm_i, lc_i) = basis[i][pi].lead_term_under(ord).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let (lm_j, lc_j) = basis[j][pi].lead_term_under(ord).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let s = spair(&basis[i], (&lm_i, &lc_i), &basis[j], (&lm_j, &lc_j), nvars);
        let r = normal_form_vec(&s, &basis, ord);
        if !vec_is_zero(&r) {
            let r = vec_monic(&r, ord);
            leads.push(lead_of(&r));
            basis.push(r);
            let new = basis.len() - 1;
            for k in 0..new {
                push_pair(&mut queue, &mut pending, &leads, k, new);
            }
        }
    }

    reduced_basis(basis, ord)
}

/// Minimizes and tail-reduces a basis whose S-pairs all reduce to zero,
/// yielding the unique reduced basis sorted ascending by lead term.
fn reduced_basis(basis: Vec<Vec<Polynomial>>, ord: TermOrder) -> Vec<Vec<Polynomial>> {
    let leads: Vec<Option<(usize, Monomial)>> = basis
        .iter()
        .map(|v| vec_lead(v, ord).map(|(p, m, _)| (p, m.clone())))
        .collect();
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        if leads[i].is_none() {
            keep[i] = false;
            continue;
        }
        let (pi, mi) = leads[i].as_ref().unwrap();
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            if let Some((pj, mj)) = leads[j].as_ref() {
                if pj == pi && mj.divides(mi) && (mj != mi || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let mut survivors: Vec<Vec<Polynomial>> = basis
        .into_iter()
        .zip(&keep)
        .filter_map(|(v, &k)| if k { Some(v) } else { None })
        .collect();
    for i in 0..survivors.len() {
        let others: Vec<Vec<Polynomial>> = survivors
            .iter()
            .enumerate()
            .filter_map(|(j, v)| if j != i { Some(v.clone()) } else { None })
            .collect();
        survivors[i] = vec_monic(&normal_form_vec(&survivors[i], &others, ord), ord);
    }
    sort_canonical(&mut survivors, ord);
    survivors
}

/// Canonical list order for generator and basis lists: ascending order
/// `o(v)`, ties by descending lead term.
pub fn sort_canonical(vectors: &mut [Vec<Polynomial>], ord: TermOrder) {
    vectors.sort_by(|u, v| {
        let ou = u.iter().filter_map(|p| p.order()).min();
        let ov = v.iter().filter_map(|p| p.order()).min();
        match (ou, ov) {
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            _ => {
                let lu = vec_lead(u, ord).map(|(p, m, _)| (p, m.clone()));
                let lv = vec_lead(v, ord).map(|(p, m, _)| (p, m.clone()));
                match (lu, lv) {
                    (Some((pu, mu)), Some((pv, mv))) => {
                        cmp_module_terms((pv, &mv), (pu, &mu), ord)
                    }
                    _ => Ordering::Equal,
                }
            }
        }
    });
}

/// Generators of the syzygy module of the given columns: all coefficient
/// vectors `(a_1..a_k)` with `sum a_i col_i = 0`. Computed by appending a
/// tracking block to each column and eliminating the ambient block, which
/// position-over-term does for free.
pub fn syzygy_generators(rank: usize, nvars: usize, columns: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let k = columns.len();
    if k == 0 {
        return Vec::new();
    }
    let mut embedded = Vec::with_capacity(k);
    for (i, col) in columns.iter().enumerate() {
        assert_eq!(col.len(), rank, "column rank mismatch");
        let mut v = vec_zero(rank + k, nvars);
        v[..rank].clone_from_slice(col);
        v[rank + i] = Polynomial::one(nvars);
        embedded.push(v);
    }
    let basis = buchberger(rank + k, nvars, &embedded, TermOrder::DegRevLex);
    basis
        .into_iter()
        .filter(|v| v[..rank].iter().all(|p| p.is_zero()))
        .map(|v| v[rank..].to_vec())
        .collect()
}

/// Reduced Groebner basis of an ideal under the given order.
pub fn groebner_basis_ord(gens: &[Polynomial], nvars: usize, ord: TermOrder) -> Vec<Polynomial> {
    let vecs: Vec<Vec<Polynomial>> = gens.iter().filter(|g| !g.is_zero()).map(|g| vec![g.clone()]).collect();
    buchberger(1, nvars, &vecs, ord)
        .into_iter()
        .map(|mut v| v.pop().expect("rank-1 vectors have one coordinate"))
        .collect()
}

/// Reduced degrevlex Groebner basis of an ideal.
pub fn groebner_basis(gens: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    groebner_basis_ord(gens, nvars, TermOrder::DegRevLex)
}

/// Division of a polynomial, returning quotients against `basis` and the
/// remainder.
pub fn divide_poly(f: &Polynomial, basis: &[Polynomial], ord: TermOrder) -> (Vec<Polynomial>, Polynomial) {
    let vecs: Vec<Vec<Polynomial>> = basis.iter().map(|b| vec![b.clone()]).collect();
    let mut division = divide_vec(std::slice::from_ref(f), &vecs, ord);
    (division.quotients, division.remainder.pop().unwrap())
}

/// Normal form of a polynomial modulo a basis under degrevlex.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    divide_poly(f, basis, TermOrder::DegRevLex).1
}
