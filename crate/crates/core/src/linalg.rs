//! Exact rational linear algebra.
//!
//! Every spectral decision in this crate reduces to the sign of a determinant
//! or to Sylvester's criterion on a symmetric matrix of the form `A_G + qI`
//! with rational `q`. Matrices are cleared of denominators and handled with
//! fraction-free (Bareiss) elimination over big integers, so intermediate
//! entries stay bounded by minors of the input.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds `num/den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense symmetric matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged or asymmetric input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Matrix(format!("row of length {} in a {n}x{n} matrix", row.len())));
            }
            entries.extend(row);
        }
        let m = RatMatrix { n, entries };
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::Matrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    /// Sets `(i, j)` and `(j, i)` together so the matrix stays symmetric.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[j * self.n + i] = value.clone();
        self.entries[i * self.n + j] = value;
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading(&self, k: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.entries[i * k + j] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Multiplies through by the lcm of all denominators. The scale factor is
    /// positive, so signs of all minors are preserved.
    fn to_integer(&self) -> (Vec<BigInt>, BigInt) {
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = self
            .entries
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        (ints, lcm)
    }
}

/// `A_G + shift * I`, optionally with `amount` subtracted from one diagonal
/// entry (the matrix-unit perturbation `- amount * E_{v,v}`).
pub fn shifted_adjacency(
    g: &Graph,
    shift: &Rational,
    diag_adjust: Option<(usize, &Rational)>,
) -> Result<RatMatrix> {
    let n = g.order();
    let mut m = RatMatrix::zeros(n);
    for v in 0..n {
        m.entries[v * n + v] = shift.clone();
        for u in bits(g.neighbors(v)) {
            m.entries[v * n + u] = Rational::one();
        }
    }
    if let Some((v, amount)) = diag_adjust {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
        m.entries[v * n + v] -= amount;
    }
    Ok(m)
}

/// Integer matrix `den * A_G + num * I`, a positive multiple of
/// `A_G + (num/den) I`.
pub(crate) fn scaled_shift(g: &Graph, num: &BigInt, den: &BigInt) -> Vec<BigInt> {
    let n = g.order();
    let mut m = vec![BigInt::zero(); n * n];
    for v in 0..n {
        m[v * n + v] = num.clone();
        for u in bits(g.neighbors(v)) {
            m[v * n + u] = den.clone();
        }
    }
    m
}

/// Bareiss elimination with row pivoting. Returns the determinant.
fn bareiss_det(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k * n + k] * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sylvester's criterion on an integer matrix without pivoting: the Bareiss
/// pivots are exactly the leading principal minors, so the sweep stops at the
/// first nonpositive one.
fn bareiss_leading_minors_positive(mut a: Vec<BigInt>, n: usize) -> bool {
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].sign() != Sign::Plus {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k * n + k] * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    true
}

/// Exact determinant.
pub fn det(m: &RatMatrix) -> Rational {
    let (ints, scale) = m.to_integer();
    let d = bareiss_det(ints, m.n);
    Rational::new(d, num_traits::pow(scale, m.n))
}

/// True iff every leading principal minor is strictly positive.
pub fn is_positive_definite(m: &RatMatrix) -> bool {
    let (ints, _) = m.to_integer();
    bareiss_leading_minors_positive(ints, m.n)
}

/// Exact positive semidefiniteness by symmetric elimination: a negative pivot
/// refutes, a zero pivot is allowed only when its whole remaining row is zero.
pub fn is_positive_semidefinite(m: &RatMatrix) -> bool {
    let n = m.n;
    let mut a = m.entries.clone();
    for k in 0..n {
        let pivot = a[k * n + k].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !a[k * n + j].is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            let f = &a[i * n + k] / &pivot;
            for j in k + 1..n {
                let delta = &f * &a[k * n + j];
                a[i * n + j] -= delta;
            }
        }
    }
    true
}

/// Integer `A_G + (num/den) I` test used by the searches.
pub(crate) fn shift_is_positive_definite(g: &Graph, shift: &Rational) -> bool {
    let a = scaled_shift(g, shift.numer(), shift.denom());
    bareiss_leading_minors_positive(a, g.order())
}

/// Sign of `det(A_G + (num/den) I)`.
pub(crate) fn shift_det_sign(g: &Graph, shift: &Rational) -> Ordering {
    let a = scaled_shift(g, shift.numer(), shift.denom());
    bareiss_det(a, g.order()).cmp(&BigInt::zero())
}

/// Positive definiteness of `A_G + shift * I` by rational elimination in
/// minimum-degree order. Zero entries are skipped, so sparse graphs such as
/// long paths cost close to linear time.
pub(crate) fn sparse_shift_is_positive_definite(g: &Graph, shift: &Rational) -> bool {
    let n = g.order();
    let mut diag = vec![shift.clone(); n];
    // off-diagonal entries of the remaining matrix, keyed by vertex pairs
    let mut off: Vec<std::collections::BTreeMap<usize, Rational>> = (0..n)
        .map(|v| bits(g.neighbors(v)).map(|u| (u, Rational::one())).collect())
        .collect();
    let mut alive = vec![true; n];
    for _ in 0..n {
        let k = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| off[v].len())
            .expect("vertex left");
        let pivot = diag[k].clone();
        if !pivot.is_positive() {
            return false;
        }
        alive[k] = false;
        let row: Vec<(usize, Rational)> = std::mem::take(&mut off[k]).into_iter().collect();
        for &(i, _) in &row {
            off[i].remove(&k);
        }
        for (a, (i, x)) in row.iter().enumerate() {
            let f = x / &pivot;
            diag[*i] -= &f * x;
            for (j, y) in &row[a + 1..] {
                let delta = &f * y;
                let e = off[*i].entry(*j).or_insert_with(Rational::zero);
                *e -= &delta;
                let value = e.clone();
                if value.is_zero() {
                    off[*i].remove(j);
                    off[*j].remove(i);
                } else {
                    off[*j].insert(*i, value);
                }
            }
        }
    }
    true
}

/// A rational `r` with `r*r <= q`.
///
/// Perfect squares are returned exactly. Otherwise the bound is
/// `floor(sqrt(q) * 2^b) / 2^b` with `b = 8 * 2^iters` bits (capped at 4096),
/// computed by integer Newton iteration; finer dyadic floors never decrease, so
/// the bound is monotone in `iters`.
pub fn sqrt_lower_bound(q: &Rational, iters: u32) -> Result<Rational> {
    if q.is_negative() {
        return Err(Error::NegativeSqrt(q.to_string()));
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return Ok(Rational::new(rn, rd));
    }
    let bits = 8u64.saturating_mul(1u64 << iters.min(16)).min(4096);
    // sqrt(n/d) * 2^b = sqrt(n * d * 4^b) / d
    let scaled: BigInt = (n * d) << (2 * bits);
    let root = scaled.sqrt();
    Ok(Rational::new(root, d << bits))
}

/// Cached adjugate of an integer matrix `M = den * A_G + num * I` known to be
/// positive definite. A child graph obtained by appending one vertex adjacent
/// to `S` has matrix `[[M, den*b], [den*b^T, num]]`, whose determinant is
/// `num * det(M) - den^2 * b^T adj(M) b`. Each child test is then a sum over
/// `S x S` instead of a fresh elimination.
pub(crate) struct BorderedFactor {
    n: usize,
    num: BigInt,
    den_sq: BigInt,
    det: BigInt,
    adj: Vec<BigInt>,
}

impl BorderedFactor {
    /// Fraction-free Gauss-Jordan on `[M | I]`; ends as `[det * I | adj(M)]`.
    /// Returns `None` when `M` is not positive definite (a pivot, which is a
    /// leading principal minor, fails to be positive).
    pub(crate) fn new(g: &Graph, shift: &Rational) -> Option<Self> {
        let n = g.order();
        let (num, den) = (shift.numer().clone(), shift.denom().clone());
        let m = scaled_shift(g, &num, &den);
        let w = 2 * n;
        let mut a = vec![BigInt::zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = m[i * n + j].clone();
            }
            a[i * w + n + i] = BigInt::one();
        }
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * w + k].sign() != Sign::Plus {
                return None;
            }
            let pivot = a[k * w + k].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * w + k].clone();
                for j in 0..w {
                    if j == k {
                        continue;
                    }
                    let v = &pivot * &a[i * w + j] - &f * &a[k * w + j];
                    a[i * w + j] = v / &prev;
                }
                a[i * w + k] = BigInt::zero();
            }
            prev = pivot;
        }
        let det = if n == 0 { BigInt::one() } else { a[(n - 1) * w + n - 1].clone() };
        let mut adj = Vec::with_capacity(n * n);
        for i in 0..n {
            adj.extend_from_slice(&a[i * w + n..i * w + w]);
        }
        Some(BorderedFactor { n, den_sq: &den * &den, num, det, adj })
    }

    /// Sign of the child determinant when the new vertex is joined to the
    /// vertex set `subset`.
    pub(crate) fn child_det_sign(&self, subset: u64) -> Ordering {
        debug_assert!(self.n == 64 || subset >> self.n == 0);
        let mut quad = BigInt::zero();
        for i in bits(subset) {
            let row = &self.adj[i * self.n..(i + 1) * self.n];
            for j in bits(subset) {
                quad += &row[j];
            }
        }
        let value = &self.num * &self.det - &self.den_sq * quad;
        value.cmp(&BigInt::zero())
    }

    #[cfg(test)]
    pub(crate) fn det(&self) -> &BigInt {
        &self.det
    }

    #[cfg(test)]
    pub(crate) fn adj(&self, i: usize, j: usize) -> &BigInt {
        &self.adj[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn shift_of_k2() {
        let g = Graph::complete(2);
        let m = shifted_adjacency(&g, &r(2), None).unwrap();
        assert_eq!(m, RatMatrix::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(2)]]).unwrap());
        assert_eq!(det(&m), r(3));
    }

    #[test]
    fn shift_with_diag_adjust() {
        let g = Graph::new(1);
        let m = shifted_adjacency(&g, &rat(5, 3), Some((0, &rat(1, 3)))).unwrap();
        assert_eq!(m.get(0, 0), &rat(4, 3));
        assert!(matches!(
            shifted_adjacency(&g, &r(1), Some((1, &r(1)))),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn shift_of_path() {
        let g = Graph::path(3);
        let m = shifted_adjacency(&g, &rat(101, 50), None).unwrap();
        for i in 0..3 {
            assert_eq!(m.get(i, i), &rat(101, 50));
        }
        assert_eq!(m.get(0, 1), &r(1));
        assert_eq!(m.get(1, 2), &r(1));
        assert_eq!(m.get(0, 2), &r(0));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&RatMatrix::identity(4)), r(1));
        assert_eq!(det(&RatMatrix::zeros(0)), r(1));
        let m = RatMatrix::from_rows(vec![
            vec![r(0), r(1), r(2)],
            vec![r(1), r(0), r(3)],
            vec![r(2), r(3), r(0)],
        ])
        .unwrap();
        // 0 - 1*(0-6) + 2*(3-0)
        assert_eq!(det(&m), r(12));
    }

    #[test]
    fn asymmetric_rejected() {
        assert!(RatMatrix::from_rows(vec![vec![r(1), r(2)], vec![r(3), r(1)]]).is_err());
    }

    #[test]
    fn definiteness() {
        for n in 1..6 {
            assert!(is_positive_definite(&RatMatrix::identity(n)));
        }
        let m = RatMatrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(1)]]).unwrap();
        assert!(!is_positive_definite(&m));
        assert!(!is_positive_semidefinite(&m));
        let singular = RatMatrix::from_rows(vec![vec![r(1), r(1)], vec![r(1), r(1)]]).unwrap();
        assert!(!is_positive_definite(&singular));
        assert!(is_positive_semidefinite(&singular));
        let zero_row = RatMatrix::from_rows(vec![vec![r(0), r(0)], vec![r(0), r(2)]]).unwrap();
        assert!(is_positive_semidefinite(&zero_row));
        let zero_pivot = RatMatrix::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(2)]]).unwrap();
        assert!(!is_positive_semidefinite(&zero_pivot));
    }

    #[test]
    fn sqrt_bounds() {
        assert_eq!(sqrt_lower_bound(&r(4), 0).unwrap(), r(2));
        assert_eq!(sqrt_lower_bound(&rat(9, 4), 3).unwrap(), rat(3, 2));
        assert_eq!(sqrt_lower_bound(&r(0), 5).unwrap(), r(0));
        assert!(sqrt_lower_bound(&r(-1), 5).is_err());
        let q = r(21);
        let mut last = r(0);
        for iters in 0..8 {
            let b = sqrt_lower_bound(&q, iters).unwrap();
            assert!(&b * &b <= q);
            assert!(b >= last);
            last = b;
        }
        // Upper bound 21/r on sqrt(21) certifies the 6/7 coefficient.
        let upper = &q / &last;
        assert!(rat(95, 94) - rat(3, 94) * upper > rat(6, 7));
    }

    #[test]
    fn bordered_factor_matches_rational_inverse() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let shift = rat(7, 2);
        let f = BorderedFactor::new(&g, &shift).unwrap();
        let m = shifted_adjacency(&g, &r(7), None).unwrap(); // 2*A + 7I
        let m = {
            let mut s = m;
            for i in 0..4 {
                for j in i + 1..4 {
                    let v = s.get(i, j) * r(2);
                    s.set(i, j, v);
                }
            }
            s
        };
        let d = det(&m);
        assert_eq!(Rational::from(f.det().clone()), d);
        // adj(M) * M = det * I
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = r(0);
                for k in 0..4 {
                    acc += Rational::from(f.adj(i, k).clone()) * m.get(k, j);
                }
                assert_eq!(acc, if i == j { d.clone() } else { r(0) });
            }
        }
    }

    #[test]
    fn bordered_child_sign_matches_full_det() {
        let g = Graph::path(5);
        let shift = rat(18259, 9040);
        let f = BorderedFactor::new(&g, &shift).unwrap();
        for subset in 1u64..32 {
            let child = g.with_new_vertex(subset);
            assert_eq!(f.child_det_sign(subset), shift_det_sign(&child, &shift), "subset {subset:b}");
        }
        assert!(BorderedFactor::new(&Graph::star(5), &r(2)).is_none());
    }
}
