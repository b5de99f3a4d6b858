//! Dense matrices and the semi-tensor product.
//!
//! Everything here is built from two primitives, the Kronecker product and the
//! ordinary matrix product. The semi-tensor product `A ⋉ B` pads both factors
//! with identities up to `t = lcm(cols(A), rows(B))` and multiplies:
//!
//! ```text
//! A ⋉ B = (A ⊗ I_{t/n}) (B ⊗ I_{t/p})
//! ```
//!
//! so it is defined for every pair of matrices and coincides with `A·B` when
//! the inner dimensions agree.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense real matrix, row-major.
///
/// Entries are always finite. Zero-sized dimensions are allowed so that empty
/// blocks (an empty harmonic basis for one player, say) need no special casing.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// The column `1_n`.
    pub fn ones(n: usize) -> Self {
        Self {
            rows: n,
            cols: 1,
            data: vec![1.0; n],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                what: format!("{rows}x{cols} matrix entries"),
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "matrix entry ({}, {})",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    what: format!("matrix row {i}"),
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        debug_assert!(data.iter().all(|v| v.is_finite()));
        Self { rows, cols, data }
    }

    pub fn column_vector(v: &[f64]) -> Self {
        Self::from_fn(v.len(), 1, |r, _| v[r])
    }

    pub fn row_vector(v: &[f64]) -> Self {
        Self::from_fn(1, v.len(), |_, c| v[c])
    }

    pub fn diag(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |r, c| if r == c { d[r] } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.cols, "column range out of bounds");
        Self::from_fn(self.rows, range.len(), |r, c| self[(r, range.start + c)])
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.rows, "row range out of bounds");
        Self {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = vec![0.0; self.rows * rhs.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        })
    }

    /// `self · v` for a column given as a slice.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `selfᵀ · v`.
    pub fn tr_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        let mut out = vec![0.0; self.cols];
        for (r, &x) in v.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o += a * x;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest entrywise difference; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn hstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch(
                "hstack blocks must share a row count".into(),
            ));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(r));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn vstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch(
                "vstack blocks must share a column count".into(),
            ));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                let dst = (r0 + r) * cols + c0;
                m.data[dst..dst + b.cols].copy_from_slice(b.row(r));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    Matrix::from_fn(rows, cols, |r, c| {
        a[(r / b.rows, c / b.cols)] * b[(r % b.rows, c % b.cols)]
    })
}

/// Semi-tensor product `a ⋉ b`. Total on all pairs of non-empty matrices.
pub fn stp(a: &Matrix, b: &Matrix) -> Matrix {
    let t = lcm(a.cols, b.rows);
    if t == a.cols && t == b.rows {
        return a * b;
    }
    let left = kron(a, &Matrix::identity(t / a.cols));
    let right = kron(b, &Matrix::identity(t / b.rows));
    &left * &right
}

/// Left-folded semi-tensor product of a sequence, `((f₁ ⋉ f₂) ⋉ …) ⋉ f_r`.
pub fn stp_all<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Option<Matrix> {
    factors.into_iter().fold(None, |acc, f| match acc {
        None => Some(f.clone()),
        Some(m) => Some(stp(&m, f)),
    })
}

/// The canonical column `δ_n^i` (1-based `i`).
pub fn delta(n: usize, i: usize) -> Result<Matrix> {
    if i == 0 || i > n {
        return Err(Error::DimensionMismatch(format!("δ_{n}^{i} is undefined")));
    }
    Ok(Matrix::from_fn(n, 1, |r, _| if r + 1 == i { 1.0 } else { 0.0 }))
}

/// Matrix whose every column is some `δ_rows^i`, stored as the 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalMatrix {
    rows: usize,
    column_indices: Vec<usize>,
}

impl LogicalMatrix {
    pub fn new(rows: usize, column_indices: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = column_indices.iter().find(|&&i| i == 0 || i > rows) {
            return Err(Error::DimensionMismatch(format!(
                "logical column index {bad} outside 1..={rows}"
            )));
        }
        Ok(Self {
            rows,
            column_indices,
        })
    }

    /// Recovers the compressed form, or `None` if `m` is not logical.
    pub fn from_dense(m: &Matrix) -> Option<Self> {
        let mut idx = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            let col = m.column(c);
            let ones: Vec<usize> = col
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 1.0)
                .map(|(r, _)| r + 1)
                .collect();
            let zeros = col.iter().filter(|&&v| v == 0.0).count();
            if ones.len() != 1 || zeros + 1 != col.len() {
                return None;
            }
            idx.push(ones[0]);
        }
        Some(Self {
            rows: m.rows(),
            column_indices: idx,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.column_indices.len()
    }

    pub fn column_indices(&self) -> &[usize] {
        &self.column_indices
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols());
        let cols = self.cols();
        for (c, &i) in self.column_indices.iter().enumerate() {
            m.data[(i - 1) * cols + c] = 1.0;
        }
        m
    }

    /// `self · m` without expanding `self`: row `i` of the product is the sum
    /// of the rows of `m` whose column maps to `i`.
    pub fn mul_dense(&self, m: &Matrix) -> Result<Matrix> {
        if m.rows() != self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply logical {}x{} by {}x{}",
                self.rows,
                self.cols(),
                m.rows(),
                m.cols()
            )));
        }
        let mut out = Matrix::zeros(self.rows, m.cols());
        for (c, &i) in self.column_indices.iter().enumerate() {
            let dst = (i - 1) * m.cols();
            for (o, &v) in out.data[dst..dst + m.cols()].iter_mut().zip(m.row(c)) {
                *o += v;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LogicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ_{}[", self.rows)?;
        for (n, i) in self.column_indices.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Parses `δ_n[i₁,…,i_r]`; `delta_n[...]` is accepted as an ASCII spelling.
impl FromStr for LogicalMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            path: s.to_string(),
            message: "expected δ_n[i1,...,ir]".into(),
        };
        let s = s.trim();
        let rest = s
            .strip_prefix("δ_")
            .or_else(|| s.strip_prefix("delta_"))
            .ok_or_else(bad)?;
        let (n, list) = rest.split_once('[').ok_or_else(bad)?;
        let list = list.strip_suffix(']').ok_or_else(bad)?;
        let rows: usize = n.trim().parse().map_err(|_| bad())?;
        let cols = if list.trim().is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        LogicalMatrix::new(rows, cols)
    }
}

/// `O^R_p = δ_{p²}[1, p+2, 2p+3, …, p²]`, satisfying `X ⋉ X = O^R_p X` for `X ∈ Δ_p`.
pub fn power_reducing_matrix(p: usize) -> LogicalMatrix {
    assert!(p >= 1, "power reducing matrix needs p >= 1");
    let cols = (0..p).map(|j| j * (p + 1) + 1).collect();
    LogicalMatrix {
        rows: p * p,
        column_indices: cols,
    }
}

/// The dummy operator `E_i = I_{k[1,i-1]} ⊗ 1_{k_i} ⊗ I_{k[i+1,n]}` (player `i` is 1-based).
///
/// `E_i` is `k × k/k_i`; it copies a function of the opponents' joint strategy
/// across every strategy of player `i`.
pub fn dummy_matrix(player: usize, cards: &[usize]) -> Result<Matrix> {
    let n = cards.len();
    if player == 0 || player > n {
        return Err(Error::PlayerOutOfRange { player, players: n });
    }
    let before: usize = cards[..player - 1].iter().product();
    let after: usize = cards[player..].iter().product();
    Ok(kron(
        &kron(&Matrix::identity(before), &Matrix::ones(cards[player - 1])),
        &Matrix::identity(after),
    ))
}
