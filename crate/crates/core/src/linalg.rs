//! Exact linear algebra over `Q`.
//!
//! Everything here works on dense vectors of [`Scalar`]s. Elimination uses the
//! first nonzero entry as pivot; `BigRational` keeps every entry in lowest
//! terms after each operation, so there is no rounding anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector length {found} does not match expected length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient span")]
    NotContained,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty scalar")]
    Empty,
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with an optional sign on `p`.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarParseError> {
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let malformed = || ScalarParseError::Malformed(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['-', '+']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let numer: BigInt = num.parse().map_err(|_| malformed())?;
    let denom: BigInt = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            d.parse().map_err(|_| malformed())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Scalar::new(numer, denom))
}

/// Lowest-terms text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = zero_vector(n);
    v[k] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| scalar(x)).collect()).collect();
        Self::from_rows(cols, &rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] *= &inv;
            }
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = -a[(i, c)].clone();
            for j in c..a.cols {
                if !pivot_row[j].is_zero() {
                    let d = &f * &pivot_row[j];
                    a[(i, j)] += d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: a,
        rank: pivots.len(),
        pivot_columns: pivots,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Basis of `{k : m k = 0}`, one vector per free column, with a `1` in that
/// column.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    let Rref {
        reduced,
        pivot_columns,
        ..
    } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivot_columns {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut k = zero_vector(m.cols);
            k[free] = Scalar::one();
            for (row, &p) in pivot_columns.iter().enumerate() {
                k[p] = -reduced[(row, free)].clone();
            }
            k
        })
        .collect()
}

fn check_lengths<'a>(len: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Result<(), LinalgError> {
    for v in vs {
        if v.len() != len {
            return Err(LinalgError::LengthMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    Ok(())
}

pub fn span_contains(basis: &[Vector], v: &[Scalar]) -> Result<bool, LinalgError> {
    check_lengths(v.len(), basis)?;
    let mut e = EchelonBasis::new(v.len());
    for b in basis {
        e.insert(b.clone());
    }
    Ok(e.contains(v))
}

/// Greedily extends `sub` by vectors taken from `ambient` (in order) until the
/// span of `ambient` is reached; returns the vectors that were added.
pub fn complement(sub: &[Vector], ambient: &[Vector]) -> Result<Vec<Vector>, LinalgError> {
    let Some(len) = sub.first().or(ambient.first()).map(Vec::len) else {
        return Ok(Vec::new());
    };
    check_lengths(len, sub.iter().chain(ambient))?;
    let mut amb = EchelonBasis::new(len);
    for a in ambient {
        amb.insert(a.clone());
    }
    let mut e = EchelonBasis::new(len);
    for s in sub {
        if !amb.contains(s) {
            return Err(LinalgError::NotContained);
        }
        e.insert(s.clone());
    }
    Ok(ambient
        .iter()
        .filter(|a| e.insert((*a).clone()))
        .cloned()
        .collect())
}

/// A subspace of `Q^n` kept as a fully reduced row-echelon basis, sorted by
/// pivot column. Supports incremental insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = -w[p].clone();
                axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.len, "echelon insert length mismatch");
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -row[p].clone();
                axpy(row, &c, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    /// Coordinates of `v` in the stored basis, or `None` when `v` is outside
    /// the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_all(&self, other: &EchelonBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| scalar(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(2);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let z = Matrix::zeros(3, 3);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivot_columns.is_empty());
        assert_eq!(r.rank, 0);

        let r = rref(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn span_contains_examples() {
        assert!(span_contains(&[v(&[1, 0])], &v(&[3, 0])).unwrap());
        assert!(!span_contains(&[v(&[1, 0])], &v(&[0, 1])).unwrap());
        assert!(span_contains(&[], &v(&[0, 0])).unwrap());
        assert!(span_contains(&[v(&[1, 0, 0])], &v(&[0, 1])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(2)).is_empty());
        assert_eq!(kernel(&Matrix::zeros(1, 3)).len(), 3);
        let k = kernel(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], scalar(0));
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn complement_examples() {
        let c = complement(&[v(&[1, 0])], &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(c, vec![v(&[0, 1])]);
        let c = complement(&[v(&[1, 0]), v(&[0, 1])], &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(c.is_empty());
        let c = complement(&[], &[v(&[1, 1])]).unwrap();
        assert_eq!(c, vec![v(&[1, 1])]);
        assert_eq!(
            complement(&[v(&[0, 1])], &[v(&[1, 0])]),
            Err(LinalgError::NotContained)
        );
    }

    #[test]
    fn scalar_text_forms() {
        assert_eq!(format_scalar(&ratio(-3, 6)), "-1/2");
        assert_eq!(format_scalar(&scalar(4)), "4");
        assert_eq!(parse_scalar("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_scalar("+7").unwrap(), scalar(7));
        assert!(matches!(parse_scalar("1/0"), Err(ScalarParseError::ZeroDenominator(_))));
        for bad in ["", "/", "1/", "/2", "1/-2", "1.5", "--1", " 1", "1/2/3", "0x1"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn echelon_coordinates_reconstruct() {
        let mut e = EchelonBasis::new(3);
        e.insert(v(&[1, 2, 3]));
        e.insert(v(&[0, 1, 1]));
        let target = v(&[2, 7, 9]);
        let coords = e.coordinates(&target).unwrap();
        let mut back = zero_vector(3);
        for (c, r) in coords.iter().zip(e.rows()) {
            axpy(&mut back, c, r);
        }
        assert_eq!(back, target);
        assert!(e.coordinates(&v(&[0, 0, 1])).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |xs| {
                let rows: Vec<Vector> = xs.chunks(c).map(|ch| ch.iter().map(|&(n, d)| ratio(n, d)).collect()).collect();
                Matrix::from_rows(c, &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let once = rref(&m).reduced;
            prop_assert_eq!(rref(&once).reduced, once);
        }

        #[test]
        fn row_rank_equals_column_rank(m in arb_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn kernel_vectors_are_exact(m in arb_matrix()) {
            let k = kernel(&m);
            prop_assert_eq!(k.len(), m.cols() - rank(&m));
            for kv in &k {
                prop_assert!(is_zero_vector(&m.mul_vec(kv).unwrap()));
            }
        }

        #[test]
        fn complement_fills_ambient(m in arb_matrix(), take in 0usize..5) {
            let ambient = m.row_vectors();
            let sub: Vec<Vector> = ambient.iter().take(take).cloned().collect();
            let c = complement(&sub, &ambient).unwrap();
            let sub_dim = rank(&Matrix::from_rows(m.cols(), &sub).unwrap());
            prop_assert_eq!(sub_dim + c.len(), rank(&m));
        }

        #[test]
        fn scalar_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let x = ratio(n, d);
            let s = format_scalar(&x);
            prop_assert_eq!(parse_scalar(&s).unwrap(), x);
        }
    }
}
