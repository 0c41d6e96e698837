//! Matrices of polynomials: exact determinants, minor ideals, and the
//! Hilbert-Burch constructions in two variables.

use crate::ideal::{ideal_sum, origin_primary_check, IdealHandle};
use crate::poly::{Monomial, Polynomial};
use crate::{Error, Result};

/// A rectangular matrix of polynomials over a fixed ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    /// Builds from rows; they must be nonempty and rectangular.
    pub fn new(entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let rows = entries.len();
        if rows == 0 || entries[0].is_empty() {
            return Err(Error::BadInput("matrix must have at least one row and column".into()));
        }
        let cols = entries[0].len();
        let nvars = entries[0][0].nvars();
        for row in &entries {
            if row.len() != cols {
                return Err(Error::BadInput("matrix rows have unequal lengths".into()));
            }
            for e in row {
                if e.nvars() != nvars {
                    return Err(Error::BadInput("matrix entries live in different rings".into()));
                }
            }
        }
        Ok(PolyMatrix { nvars, rows, cols, entries })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r]
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.entries[r][c].clone()).collect()
    }

    /// Submatrix on the given row and column indices, in the order given.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> PolyMatrix {
        let entries = row_idx
            .iter()
            .map(|&r| col_idx.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect();
        PolyMatrix::new(entries).expect("submatrix of a valid matrix is valid")
    }

    /// Exact determinant by Laplace expansion along the first column.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::BadInput(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(det_rec(&self.entries, &(0..self.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>(), self.nvars))
    }

    /// Matrix product; panics unless the shapes are compatible.
    pub fn matmul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let entries = (0..self.rows)
            .map(|r| {
                (0..other.cols)
                    .map(|c| {
                        let mut acc = Polynomial::zero(self.nvars);
                        for k in 0..self.cols {
                            acc = &acc + &(&self.entries[r][k] * &other.entries[k][c]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(entries).expect("product of valid matrices is valid")
    }
}

fn det_rec(entries: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], nvars: usize) -> Polynomial {
    if rows.len() == 1 {
        return entries[rows[0]][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    let sub_cols: Vec<usize> = cols[1..].to_vec();
    for (k, &r) in rows.iter().enumerate() {
        let pivot = &entries[r][cols[0]];
        if pivot.is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&rr| rr != r).collect();
        let minor = det_rec(entries, &sub_rows, &sub_cols, nvars);
        let term = pivot * &minor;
        if k % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// All k-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// For a matrix with one more row than columns: the maximal minors signed
/// by `(-1)^(l+1)` where row `l` (1-indexed) is the one deleted.
pub fn signed_maximal_minors(mx: &PolyMatrix) -> Result<Vec<Polynomial>> {
    if mx.rows() != mx.cols() + 1 {
        return Err(Error::BadInput(format!(
            "signed maximal minors need shape (k+1) x k, got {}x{}",
            mx.rows(),
            mx.cols()
        )));
    }
    let all_cols: Vec<usize> = (0..mx.cols()).collect();
    let mut out = Vec::with_capacity(mx.rows());
    for l in 0..mx.rows() {
        let rows: Vec<usize> = (0..mx.rows()).filter(|&r| r != l).collect();
        let d = mx.submatrix(&rows, &all_cols).det()?;
        out.push(if l % 2 == 0 { d } else { -&d });
    }
    Ok(out)
}

/// The ideal of `n x n` minors; `n = 0` gives the unit ideal and `n`
/// beyond the shape gives the zero ideal.
pub fn minors(mx: &PolyMatrix, n: usize) -> IdealHandle {
    if n == 0 {
        return IdealHandle::unit(mx.nvars());
    }
    if n > mx.rows().min(mx.cols()) {
        return IdealHandle::zero(mx.nvars());
    }
    let mut gens = Vec::new();
    for rows in combinations(mx.rows(), n) {
        for cols in combinations(mx.cols(), n) {
            gens.push(mx.submatrix(&rows, &cols).det().expect("square by construction"));
        }
    }
    IdealHandle::new(mx.nvars(), gens)
}

fn check_hb_shape(phi: &PolyMatrix) -> Result<usize> {
    if phi.nvars() != 2 {
        return Err(Error::BadInput(
            "Hilbert-Burch constructions need a polynomial ring in two variables".into(),
        ));
    }
    if phi.rows() != phi.cols() + 1 || phi.rows() < 2 {
        return Err(Error::BadInput(format!(
            "presentation matrix must have shape n x (n-1) with n >= 2, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    Ok(phi.rows())
}

fn check_entry_orders(phi: &PolyMatrix, s: u32) -> Result<()> {
    for r in 0..phi.rows() {
        for c in 0..phi.cols() {
            if let Some(o) = phi.entry(r, c).order() {
                if o < s {
                    return Err(Error::EntryOrderTooLow {
                        row: r + 1,
                        col: c + 1,
                        s,
                        found: o.to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn mono2(p: u32, q: u32) -> Monomial {
    Monomial::from_exps(vec![p, q])
}

fn scale_column(col: &[Polynomial], m: &Monomial) -> Vec<Polynomial> {
    col.iter().map(|e| e.mul_monomial(m)).collect()
}

fn add_columns(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn replace_column_pair(
    phi: &PolyMatrix,
    col: usize,
    eta: &[Polynomial],
    xi: &[Polynomial],
) -> PolyMatrix {
    let n = phi.rows();
    let entries = (0..n)
        .map(|r| {
            let mut row = Vec::with_capacity(n);
            for c in 0..phi.cols() {
                if c == col {
                    row.push(eta[r].clone());
                    row.push(xi[r].clone());
                } else {
                    row.push(phi.entry(r, c).clone());
                }
            }
            row
        })
        .collect();
    PolyMatrix::new(entries).expect("replacement keeps the matrix rectangular")
}

/// One determinant socle generator, labeled by the column it modifies
/// and the power split `x^(s+1-a) eta + y^a xi` it uses.
#[derive(Clone, Debug)]
pub struct HbDelta {
    pub column: usize,
    pub shift: u32,
    pub value: Polynomial,
}

/// The determinant socle generators of a Hilbert-Burch presentation.
#[derive(Clone, Debug)]
pub struct HbDeltaOutcome {
    pub s: u32,
    pub ideal: IdealHandle,
    pub deltas: Vec<HbDelta>,
    pub socle: IdealHandle,
}

/// For `phi` of shape `n x (n-1)` over `Q[x, y]` with entries in `m^s`
/// presenting `I`, each column splits as `x^(s+1-a) eta + y^a xi`; the
/// determinant of `phi` with that column replaced by the pair `(eta, xi)`
/// lies in `I : m^s`, and together the determinants generate it with `I`.
pub fn hb_delta(phi: &PolyMatrix, s: u32) -> Result<HbDeltaOutcome> {
    assert!(s >= 1);
    let n = check_hb_shape(phi)?;
    check_entry_orders(phi, s)?;
    let ideal = IdealHandle::new(2, signed_maximal_minors(phi)?);
    if !origin_primary_check(&ideal).ok {
        return Err(Error::NotOriginPrimary);
    }
    let mut deltas = Vec::with_capacity((n - 1) * s as usize);
    for col in 0..n - 1 {
        for a in 1..=s {
            let x_exp = s + 1 - a;
            let mut eta = vec![Polynomial::zero(2); n];
            let mut xi = vec![Polynomial::zero(2); n];
            for r in 0..n {
                for (m, c) in phi.entry(r, col).terms() {
                    let (p, q) = (m.exp(0), m.exp(1));
                    if p >= x_exp {
                        eta[r].add_term(mono2(p - x_exp, q), c.clone());
                    } else {
                        debug_assert!(q >= a, "entry order guarantees the y power");
                        xi[r].add_term(mono2(p, q - a), c.clone());
                    }
                }
            }
            let value = replace_column_pair(phi, col, &eta, &xi).det()?;
            deltas.push(HbDelta { column: col + 1, shift: a, value });
        }
    }
    let socle = ideal_sum(
        &ideal,
        &IdealHandle::new(2, deltas.iter().map(|d| d.value.clone()).collect()),
    );
    Ok(HbDeltaOutcome { s, ideal, deltas, socle })
}

/// The slot decomposition `phi_{.,i} = sum_j x^(s-j) y^j phi_{.,i,j}`,
/// assigning each monomial `x^p y^q` to slot `min(q, s)`.
fn column_slots(phi: &PolyMatrix, col: usize, s: u32) -> Vec<Vec<Polynomial>> {
    let n = phi.rows();
    let mut slots = vec![vec![Polynomial::zero(2); n]; s as usize + 1];
    for r in 0..n {
        for (m, c) in phi.entry(r, col).terms() {
            let (p, q) = (m.exp(0), m.exp(1));
            let j = q.min(s);
            slots[j as usize][r].add_term(mono2(p - (s - j), q - j), c.clone());
        }
    }
    slots
}

/// The enlarged presentation matrix whose maximal minors recover both
/// the generators of `I` and the determinant socle generators: the slot
/// coefficients stacked over bidiagonal `(-y, x)` syzygy blocks.
pub fn hb_psi(phi: &PolyMatrix, s: u32) -> Result<PolyMatrix> {
    assert!(s >= 1);
    let n = check_hb_shape(phi)?;
    check_entry_orders(phi, s)?;
    let width = (n - 1) * (s as usize + 1);
    let height = n + (n - 1) * s as usize;
    let mut entries = vec![vec![Polynomial::zero(2); width]; height];
    for col in 0..n - 1 {
        let slots = column_slots(phi, col, s);
        for (j, slot) in slots.iter().enumerate() {
            for r in 0..n {
                entries[r][col * (s as usize + 1) + j] = slot[r].clone();
            }
        }
        let x = Polynomial::var(0, 2);
        let y = Polynomial::var(1, 2);
        for r in 0..s as usize {
            let row = n + col * s as usize + r;
            let base = col * (s as usize + 1);
            entries[row][base + r] = -&y;
            entries[row][base + r + 1] = x.clone();
        }
    }
    PolyMatrix::new(entries)
}

/// Comparison of the signed maximal minors of the enlarged matrix with
/// the generators of `I`, the determinant socle generators, and the
/// socle itself.
#[derive(Clone, Debug)]
pub struct HbMinorsOutcome {
    pub s: u32,
    pub psi: PolyMatrix,
    pub minors: Vec<Polynomial>,
    /// The global sign relating the first `n` minors to those of the
    /// original presentation.
    pub sigma: i64,
    pub generator_minors_match: bool,
    pub delta_minors_match: bool,
    pub socle_match: bool,
    pub socle_generator_count: usize,
    pub expected_generator_count: usize,
    pub minimal: bool,
}

/// Verifies that the first `n` signed maximal minors of the enlarged
/// matrix reproduce the generators of `I` up to one global sign, that the
/// remaining ones reproduce the determinant socle generators built from
/// the slot decomposition (each up to sign: deleting a different filler
/// row flips the complementary-expansion parity), and that all of them
/// together present `I : m^s`; also reports whether that presentation is
/// minimal.
pub fn hb_psi_minors(phi: &PolyMatrix, s: u32) -> Result<HbMinorsOutcome> {
    assert!(s >= 1);
    let n = check_hb_shape(phi)?;
    check_entry_orders(phi, s)?;
    let phi_minors = signed_maximal_minors(phi)?;
    let ideal = IdealHandle::new(2, phi_minors.clone());
    if !origin_primary_check(&ideal).ok {
        return Err(Error::NotOriginPrimary);
    }
    let psi = hb_psi(phi, s)?;
    let psi_minors = signed_maximal_minors(&psi)?;

    let mut sigma: i64 = 0;
    let mut generator_minors_match = true;
    for l in 0..n {
        let lhs = &psi_minors[l];
        let rhs = &phi_minors[l];
        if lhs.is_zero() != rhs.is_zero() {
            generator_minors_match = false;
            break;
        }
        if lhs.is_zero() {
            continue;
        }
        let here = if lhs == rhs {
            1
        } else if *lhs == -rhs {
            -1
        } else {
            generator_minors_match = false;
            break;
        };
        if sigma == 0 {
            sigma = here;
        } else if sigma != here {
            generator_minors_match = false;
            break;
        }
    }
    if sigma == 0 {
        sigma = 1;
    }

    let mut delta_minors_match = generator_minors_match;
    if delta_minors_match {
        'cols: for col in 0..n - 1 {
            let slots = column_slots(phi, col, s);
            for a in 1..=s {
                let mut eta = vec![Polynomial::zero(2); n];
                let mut xi = vec![Polynomial::zero(2); n];
                for (j, slot) in slots.iter().enumerate() {
                    let j = j as u32;
                    if j < a {
                        eta = add_columns(&eta, &scale_column(slot, &mono2(a - 1 - j, j)));
                    } else {
                        xi = add_columns(&xi, &scale_column(slot, &mono2(s - j, j - a)));
                    }
                }
                let delta = replace_column_pair(phi, col, &eta, &xi).det()?;
                let l = n + col * s as usize + a as usize - 1;
                if psi_minors[l] != delta && psi_minors[l] != -&delta {
                    delta_minors_match = false;
                    break 'cols;
                }
            }
        }
    }

    let socle = crate::socle::socle_oracle(&ideal, s)?;
    let minor_ideal = IdealHandle::new(2, psi_minors.clone());
    let socle_match = crate::ideal::ideal_equal(&minor_ideal, &socle);
    let socle_generator_count = crate::resolution::minimal_generators(
        2,
        1,
        &socle.basis().iter().map(|g| vec![g.clone()]).collect::<Vec<_>>(),
    )
    .len();
    let expected_generator_count = (n - 1) * (s as usize + 1) + 1;
    Ok(HbMinorsOutcome {
        s,
        psi,
        minors: psi_minors,
        sigma,
        generator_minors_match,
        delta_minors_match,
        socle_match,
        socle_generator_count,
        expected_generator_count,
        minimal: socle_generator_count == expected_generator_count,
    })
}

/// Result of testing `I : m^s` against the next lower minor ideal.
#[derive(Clone, Debug)]
pub struct LowerMinorOutcome {
    pub s: u32,
    pub n: usize,
    pub socle: IdealHandle,
    pub lower_minors: IdealHandle,
    pub contained: bool,
    /// A socle generator escaping the lower minor ideal, when one exists.
    pub offender: Option<Polynomial>,
}

/// For `I = I_n(phi)` with entries of `phi` in `m^s` and the expected
/// codimension filling the whole ring, checks the containment
/// `I : m^s ⊆ I_{n-1}(phi)`.
pub fn verify_lower_minor_containment(
    phi: &PolyMatrix,
    n: usize,
    s: u32,
) -> Result<LowerMinorOutcome> {
    assert!(s >= 1);
    if n == 0 || n > phi.rows().min(phi.cols()) {
        return Err(Error::BadInput(format!(
            "minor size {n} does not fit a {}x{} matrix",
            phi.rows(),
            phi.cols()
        )));
    }
    check_entry_orders(phi, s)?;
    let d = phi.nvars();
    let expected_codim = (phi.rows() - n + 1) * (phi.cols() - n + 1);
    if expected_codim != d {
        return Err(Error::BadInput(format!(
            "expected codimension ({} - {n} + 1)({} - {n} + 1) = {expected_codim} must equal the number of variables {d}",
            phi.rows(),
            phi.cols()
        )));
    }
    let ideal = minors(phi, n);
    if !origin_primary_check(&ideal).ok {
        return Err(Error::NotOriginPrimary);
    }
    let socle = crate::socle::socle_oracle(&ideal, s)?;
    let lower = minors(phi, n - 1);
    let mut offender = None;
    for g in socle.basis() {
        if !lower.contains(g) {
            offender = Some(g.clone());
            break;
        }
    }
    Ok(LowerMinorOutcome {
        s,
        n,
        socle,
        lower_minors: lower,
        contained: offender.is_none(),
        offender,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Monomial, Polynomial};

    fn pm(nvars: usize, rows: &[&[(i64, &[u32])]]) -> PolyMatrix {
        let entries = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| {
                        Polynomial::from_terms(
                            nvars,
                            std::iter::once(*terms).map(|(c, e)| (Monomial::from_exps(e.to_vec()), rat(c))),
                        )
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(entries).unwrap()
    }

    #[test]
    fn det_of_2x2() {
        // [[x, y], [y, x]] has determinant x^2 - y^2.
        let mx = pm(2, &[&[(1, &[1, 0]), (1, &[0, 1])], &[(1, &[0, 1]), (1, &[1, 0])]]);
        let d = mx.det().unwrap();
        let expect = Polynomial::from_terms(
            2,
            [
                (Monomial::from_exps(vec![2, 0]), rat(1)),
                (Monomial::from_exps(vec![0, 2]), rat(-1)),
            ],
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn det_of_diagonal_3x3() {
        let mx = pm(
            3,
            &[
                &[(2, &[1, 0, 0]), (0, &[0, 0, 0]), (0, &[0, 0, 0])],
                &[(0, &[0, 0, 0]), (1, &[0, 1, 0]), (0, &[0, 0, 0])],
                &[(0, &[0, 0, 0]), (0, &[0, 0, 0]), (1, &[0, 0, 1])],
            ],
        );
        let d = mx.det().unwrap();
        assert_eq!(
            d,
            Polynomial::from_terms(3, [(Monomial::from_exps(vec![1, 1, 1]), rat(2))])
        );
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn signed_minors_contract_against_the_matrix() {
        // For any (k+1) x k matrix the row of signed minors multiplies it to zero.
        let mx = pm(
            2,
            &[
                &[(1, &[2, 0]), (1, &[0, 1])],
                &[(1, &[1, 1]), (3, &[1, 0])],
                &[(1, &[0, 2]), (1, &[2, 1])],
            ],
        );
        let minors = signed_maximal_minors(&mx).unwrap();
        for c in 0..mx.cols() {
            let mut acc = Polynomial::zero(2);
            for (l, m) in minors.iter().enumerate() {
                acc = &acc + &(m * mx.entry(l, c));
            }
            assert!(acc.is_zero(), "column {c} does not contract to zero");
        }
    }

    fn pmx(nvars: usize, rows: &[&[&str]]) -> PolyMatrix {
        let names = crate::poly::default_names(nvars);
        let entries = rows
            .iter()
            .map(|row| {
                row.iter().map(|src| crate::input::parse_poly(src, &names).unwrap()).collect()
            })
            .collect();
        PolyMatrix::new(entries).unwrap()
    }

    fn poly2(src: &str) -> Polynomial {
        crate::input::parse_poly(src, &crate::poly::default_names(2)).unwrap()
    }

    #[test]
    fn minor_ideals_at_the_edges() {
        let mx = pmx(2, &[&["x^2", "y^2", "0"], &["0", "x^2", "y^2"]]);
        let i2 = minors(&mx, 2);
        assert!(crate::ideal::ideal_equal(
            &i2,
            &IdealHandle::new(2, vec![poly2("x^4"), poly2("x^2*y^2"), poly2("y^4")])
        ));
        assert!(minors(&mx, 0).is_unit_ideal());
        assert!(minors(&mx, 3).is_zero_ideal());
    }

    #[test]
    fn delta_values_for_a_plane_complete_intersection() {
        let phi = pmx(2, &[&["y^2"], &["-x^2"]]);
        let out = hb_delta(&phi, 2).unwrap();
        assert_eq!(out.deltas.len(), 2);
        assert_eq!(out.deltas[0].value, poly2("y"));
        assert_eq!(out.deltas[1].value, poly2("x"));
        let expect = crate::socle::socle_oracle(&out.ideal, 2).unwrap();
        assert!(crate::ideal::ideal_equal(&out.socle, &expect));
    }

    #[test]
    fn delta_rejects_entries_of_low_order() {
        let phi = pmx(2, &[&["y^2"], &["-x"]]);
        match hb_delta(&phi, 2) {
            Err(Error::EntryOrderTooLow { row: 2, col: 1, s: 2, found }) => {
                assert_eq!(found, "1");
            }
            other => panic!("expected the order error, got {other:?}"),
        }
    }

    #[test]
    fn psi_for_the_plane_complete_intersection_at_s_1() {
        let phi = pmx(2, &[&["y^2"], &["-x^2"]]);
        let psi = hb_psi(&phi, 1).unwrap();
        let expect = pmx(2, &[&["0", "y"], &["-x", "0"], &["-y", "x"]]);
        assert_eq!(psi, expect);
        let minors = signed_maximal_minors(&psi).unwrap();
        assert_eq!(minors, vec![poly2("-x^2"), poly2("-y^2"), poly2("x*y")]);
    }

    #[test]
    fn psi_minors_reproduce_generators_and_deltas() {
        let phi = pmx(2, &[&["y^2"], &["-x^2"]]);
        let out = hb_psi_minors(&phi, 2).unwrap();
        assert_eq!(out.sigma, 1);
        assert!(out.generator_minors_match);
        assert!(out.delta_minors_match);
        assert!(out.socle_match);
        assert_eq!(out.minors[2..], [poly2("y"), poly2("x")]);
        assert_eq!(out.expected_generator_count, 4);
        assert_eq!(out.socle_generator_count, 2);
        assert!(!out.minimal);
    }

    #[test]
    fn psi_minors_is_minimal_at_s_1() {
        let phi = pmx(2, &[&["y^2"], &["-x^2"]]);
        let out = hb_psi_minors(&phi, 1).unwrap();
        assert!(out.generator_minors_match && out.delta_minors_match && out.socle_match);
        assert_eq!(out.socle_generator_count, 3);
        assert!(out.minimal);
    }

    #[test]
    fn lower_minor_containment_on_a_structured_matrix() {
        let phi = pmx(2, &[&["x^2", "y^2", "0"], &["0", "x^2", "y^2"]]);
        let out = verify_lower_minor_containment(&phi, 2, 2).unwrap();
        assert!(out.contained);
        assert!(out.offender.is_none());
    }

    #[test]
    fn lower_minor_containment_is_sharp_at_the_lower_index() {
        let phi = pmx(2, &[&["x", "y", "0"], &["0", "x", "y"]]);
        let out = verify_lower_minor_containment(&phi, 2, 1).unwrap();
        assert!(out.contained);
        let i2 = minors(&phi, 2);
        let socle = crate::socle::socle_oracle(&i2, 1).unwrap();
        assert!(socle.basis().iter().any(|g| !i2.contains(g)));
    }

    #[test]
    fn lower_minor_containment_checks_the_size_hypothesis() {
        let phi = pmx(2, &[&["x", "y"], &["y", "x"]]);
        match verify_lower_minor_containment(&phi, 2, 1) {
            Err(Error::BadInput(msg)) => assert!(msg.contains("codimension")),
            other => panic!("expected the hypothesis error, got {other:?}"),
        }
    }

    #[test]
    fn block_triangular_determinants_factor() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let random_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut p = Polynomial::zero(2);
            for _ in 0..rng.gen_range(1..=3) {
                let e = [rng.gen_range(0..3u32), rng.gen_range(0..3u32)];
                p.add_term(Monomial::from_exps(e.to_vec()), rat(rng.gen_range(-4..=4)));
            }
            p
        };
        for _ in 0..10 {
            let ra = rng.gen_range(1..=3usize);
            let rc = rng.gen_range(1..=3usize);
            let size = ra + rc;
            let mut entries = vec![vec![Polynomial::zero(2); size]; size];
            for (r, row) in entries.iter_mut().enumerate() {
                for (c, e) in row.iter_mut().enumerate() {
                    if r < ra && c >= ra {
                        continue;
                    }
                    *e = random_poly(&mut rng);
                }
            }
            let full = PolyMatrix::new(entries).unwrap();
            let upper: Vec<usize> = (0..ra).collect();
            let lower: Vec<usize> = (ra..size).collect();
            let da = full.submatrix(&upper, &upper).det().unwrap();
            let dc = full.submatrix(&lower, &lower).det().unwrap();
            assert_eq!(full.det().unwrap(), &da * &dc);
        }
    }

    #[test]
    fn derivatives_of_generic_minors_drop_to_lower_minors() {
        for n in [2usize, 3] {
            let nvars = n * n;
            let entries: Vec<Vec<Polynomial>> = (0..n)
                .map(|r| (0..n).map(|c| Polynomial::var(r * n + c, nvars)).collect())
                .collect();
            let generic = PolyMatrix::new(entries).unwrap();
            let det = generic.det().unwrap();
            let lower = minors(&generic, n - 1);
            for v in 0..nvars {
                let partial = det.gen_derivative(v, 1);
                assert!(lower.contains(&partial), "derivative in variable {v} escapes");
            }
        }
    }
}
