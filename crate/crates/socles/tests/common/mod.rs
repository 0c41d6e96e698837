//! Seeded generators and shared fixtures for the integration suites.
//! The base seed is fixed for reproducible runs; set SOCLES_SEED to
//! explore other draws.

use std::sync::OnceLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use socles::ideal::{origin_primary_check, IdealHandle};
use socles::matrix::{minors, signed_maximal_minors, PolyMatrix};
use socles::poly::{rat, Monomial, Polynomial};
use socles::resolution::{minimal_free_resolution, FreeComplex};
use socles::socle::socle_oracle;

pub fn base_seed() -> u64 {
    std::env::var("SOCLES_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0x50C1E5)
}

/// One independent stream per suite so adding draws to one suite does not
/// reshuffle another.
pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(base_seed());
    r.set_stream(stream);
    r
}

pub fn mono(exps: &[u32]) -> Polynomial {
    Polynomial::from_monomial(Monomial::from_exps(exps.to_vec()), exps.len())
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.gen_range(1..=4i64);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// A random polynomial supported away from the constant term, at most
/// `max_terms` terms, every exponent at most `max_exp`, total degree at
/// most `max_deg`. Never zero.
pub fn random_positive_order_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    max_terms: usize,
    max_exp: u32,
    max_deg: u32,
) -> Polynomial {
    loop {
        let mut p = Polynomial::zero(nvars);
        for _ in 0..rng.gen_range(1..=max_terms) {
            let exps: Vec<u32> = loop {
                let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
                let total: u32 = e.iter().sum();
                if total >= 1 && total <= max_deg {
                    break e;
                }
            };
            p.add_term(Monomial::from_exps(exps), rat(nonzero_coeff(rng)));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A monomial complete intersection `x_i^{k_i}` enlarged by a few random
/// elements of the maximal ideal. Always primary to the origin: the pure
/// powers keep the quotient Artinian and every extra generator stays in m.
pub fn random_origin_primary_ideal(rng: &mut ChaCha8Rng, nvars: usize) -> IdealHandle {
    let max_pure = if nvars >= 3 { 3 } else { 4 };
    let mut gens: Vec<Polynomial> = Vec::new();
    for axis in 0..nvars {
        let mut exps = vec![0u32; nvars];
        exps[axis] = rng.gen_range(2..=max_pure);
        gens.push(mono(&exps));
    }
    for _ in 0..rng.gen_range(0..=2usize) {
        gens.push(random_positive_order_poly(rng, nvars, 3, 4, 5));
    }
    let ideal = IdealHandle::new(nvars, gens);
    debug_assert!(origin_primary_check(&ideal).ok);
    ideal
}

pub struct SuiteMember {
    pub ideal: IdealHandle,
    pub complex: FreeComplex,
    pub order: u32,
}

/// Thirty random origin-primary ideals, half in two and half in three
/// variables, with their minimal free resolutions computed once and
/// shared across the acceptance tests.
pub fn resolved_suite() -> &'static [SuiteMember] {
    static SUITE: OnceLock<Vec<SuiteMember>> = OnceLock::new();
    SUITE.get_or_init(|| {
        let mut rng = rng(1);
        let mut members = Vec::with_capacity(30);
        for k in 0..30 {
            let nvars = if k % 2 == 0 { 2 } else { 3 };
            let ideal = random_origin_primary_ideal(&mut rng, nvars);
            let complex = minimal_free_resolution(&ideal).expect("suite ideals resolve");
            let order = complex.order_of_last_map();
            members.push(SuiteMember { ideal, complex, order });
        }
        members
    })
}

/// A random Hilbert-Burch matrix of shape `(cols+1) x cols` over `Q[x, y]`
/// whose entries all have order at least `s`: an `x`/`y` staircase on the
/// two main diagonals plus monomial noise strictly above the diagonal.
/// The two corner minors stay pure powers, so the minor ideal is always
/// primary to the origin.
pub fn random_hb_matrix(rng: &mut ChaCha8Rng, cols: usize, s: u32) -> PolyMatrix {
    let rows = cols + 1;
    let mut entries = vec![vec![Polynomial::zero(2); cols]; rows];
    for c in 0..cols {
        entries[c][c] = mono(&[rng.gen_range(s..=s + 1), 0]);
        entries[c + 1][c] = mono(&[0, rng.gen_range(s..=s + 1)]).scale(&rat(-1));
    }
    for r in 0..rows {
        for c in r + 1..cols {
            if rng.gen_bool(0.6) {
                let a = rng.gen_range(0..=s + 1);
                let b = rng.gen_range(s.saturating_sub(a)..=s + 1);
                let mut p = mono(&[a, b]).scale(&rat(nonzero_coeff(rng)));
                if rng.gen_bool(0.3) {
                    p = &p + &mono(&[a + 1, b]).scale(&rat(nonzero_coeff(rng)));
                }
                entries[r][c] = p;
            }
        }
    }
    let phi = PolyMatrix::new(entries).expect("staircase is rectangular");
    debug_assert!(phi
        .entry(0, 0)
        .order()
        .is_some_and(|o| o >= s));
    phi
}

pub struct HbMember {
    pub phi: PolyMatrix,
    pub s: u32,
    pub ideal: IdealHandle,
    pub socle: IdealHandle,
}

/// Fifteen random Hilbert-Burch presentations with two or three columns,
/// paired with the minor ideal and its oracle socle, computed once.
pub fn hb_suite() -> &'static [HbMember] {
    static SUITE: OnceLock<Vec<HbMember>> = OnceLock::new();
    SUITE.get_or_init(|| {
        let mut draw = rng(7);
        (0..15)
            .map(|k| {
                let cols = if k % 2 == 0 { 2 } else { 3 };
                let s = k as u32 % 3 + 1;
                let phi = random_hb_matrix(&mut draw, cols, s);
                let ideal =
                    IdealHandle::new(2, signed_maximal_minors(&phi).expect("staircase shape"));
                let socle = socle_oracle(&ideal, s).expect("minor ideals cut out the origin");
                HbMember { phi, s, ideal, socle }
            })
            .collect()
    })
}

/// A random 2x3 matrix over `Q[x, y]` with entries in `m^s` whose 2x2
/// minors cut out the origin. A two-step staircase guarantees pure powers
/// of `x` and `y` among the minors; the two off-staircase slots take
/// monomial noise half the time, redrawing when the noise ruins
/// primality. A fully monomial matrix with no zero entries almost never
/// qualifies: proportional rows then have solutions on the torus.
pub fn random_wide_matrix(rng: &mut ChaCha8Rng, s: u32) -> PolyMatrix {
    for _ in 0..200 {
        let mut entries = vec![
            vec![
                mono(&[rng.gen_range(s..=s + 1), 0]).scale(&rat(nonzero_coeff(rng))),
                mono(&[0, rng.gen_range(s..=s + 1)]).scale(&rat(nonzero_coeff(rng))),
                Polynomial::zero(2),
            ],
            vec![
                Polynomial::zero(2),
                mono(&[rng.gen_range(s..=s + 1), 0]).scale(&rat(nonzero_coeff(rng))),
                mono(&[0, rng.gen_range(s..=s + 1)]).scale(&rat(nonzero_coeff(rng))),
            ],
        ];
        for (r, c) in [(0usize, 2usize), (1usize, 0usize)] {
            if rng.gen_bool(0.5) {
                let a = rng.gen_range(0..=s + 1);
                let b = rng.gen_range(s.saturating_sub(a)..=s + 1);
                entries[r][c] = mono(&[a, b]).scale(&rat(nonzero_coeff(rng)));
            }
        }
        let phi = PolyMatrix::new(entries).expect("fixed shape");
        if origin_primary_check(&minors(&phi, 2)).ok {
            return phi;
        }
    }
    panic!("no origin-primary 2x3 matrix found in 200 draws");
}

/// A triangular binomial complete intersection: each parameter is a pure
/// power minus a monomial in strictly later variables, the last one a pure
/// power. Back-substitution kills every coordinate, so the only common
/// zero is the origin.
pub fn random_binomial_ci(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<Polynomial> {
    let max_pure = if nvars >= 3 { 3 } else { 4 };
    let mut fs = Vec::with_capacity(nvars);
    for axis in 0..nvars {
        let mut exps = vec![0u32; nvars];
        exps[axis] = rng.gen_range(2..=max_pure);
        let mut f = mono(&exps);
        if axis + 1 < nvars {
            let mut tail = vec![0u32; nvars];
            for later in axis + 1..nvars {
                tail[later] = rng.gen_range(0..=2u32);
            }
            if tail.iter().sum::<u32>() >= 1 {
                f = &f + &mono(&tail).scale(&rat(nonzero_coeff(rng)));
            }
        }
        fs.push(f);
    }
    fs
}

pub fn random_monomial_ci(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<Polynomial> {
    let max_pure = if nvars >= 3 { 3 } else { 4 };
    (0..nvars)
        .map(|axis| {
            let mut exps = vec![0u32; nvars];
            exps[axis] = rng.gen_range(2..=max_pure);
            mono(&exps)
        })
        .collect()
}

/// Prints the one-line verdict for an acceptance criterion and fails the
/// test when the verdict is not a pass.
pub fn criterion_verdict(number: u32, description: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {number:02} PASS: {description}");
    } else {
        println!(
            "criterion {number:02} FAIL: {description} ({} problem(s))",
            failures.len()
        );
    }
    assert!(failures.is_empty(), "criterion {number:02}: {failures:#?}");
}
