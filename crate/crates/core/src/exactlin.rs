//! Exact dense linear algebra over ℚ and GF(2): determinants, right-block
//! normalization, congruence diagonalization, regular arrangement and
//! Kronecker's principal-minor sign count.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Field operations needed by the elimination routines.
pub trait FieldElement: Clone + PartialEq + fmt::Debug + fmt::Display {
    const NAME: &'static str;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `self` must be non-zero.
    fn inv(&self) -> Self;
}

impl FieldElement for Rational {
    const NAME: &'static str = "Q";
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// An element of GF(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl FieldElement for Gf2 {
    const NAME: &'static str = "GF2";
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub(&self, other: &Self) -> Self {
        *self - *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        assert!(self.0, "inverse of zero in GF(2)");
        *self
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign_of(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldElement> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[T]) {
        assert_eq!(values.len(), self.rows);
        for (r, v) in values.iter().enumerate() {
            self.set(r, c, v.clone());
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(r, k).mul(other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Columns selected from `self` and `other` side by side.
    pub fn hconcat(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.rows != other.rows {
            return Err(Error::Dimension("row counts differ".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Simultaneous row/column permutation: `out[i][j] = self[p[i]][p[j]]`.
    pub fn permute_symmetric(&self, p: &[usize]) -> Matrix<T> {
        self.submatrix(p, p)
    }

    /// Determinant of the principal submatrix on `indices`; the empty
    /// minor is 1.
    pub fn principal_minor(&self, indices: &[usize]) -> T {
        det_unchecked(self.submatrix(indices, indices))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T: FieldElement> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix<Rational> {
    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("rectangular input")
    }
}

impl Matrix<Gf2> {
    pub fn from_bits(rows: &[Vec<u8>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Gf2(v % 2 == 1)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }
}

fn det_unchecked<T: FieldElement>(mut m: Matrix<T>) -> T {
    let n = m.rows;
    let mut det = T::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
            return T::zero();
        };
        if pivot != col {
            m.swap_rows(pivot, col);
            det = det.neg();
        }
        let p = m.get(col, col).clone();
        det = det.mul(&p);
        let inv = p.inv();
        for r in col + 1..n {
            let factor = m.get(r, col).mul(&inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = m.get(r, c).sub(&factor.mul(m.get(col, c)));
                m.set(r, c, v);
            }
        }
    }
    det
}

/// Exact determinant by Gaussian elimination; the 0×0 determinant is 1.
pub fn det<T: FieldElement>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of {}x{} matrix", m.rows, m.cols)));
    }
    Ok(det_unchecked(m.clone()))
}

/// Rank by exact row reduction.
pub fn rank<T: FieldElement>(m: &Matrix<T>) -> usize {
    let mut m = m.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(pivot, rank);
        let inv = m.get(rank, col).inv();
        for r in rank + 1..m.rows {
            let factor = m.get(r, col).mul(&inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..m.cols {
                let v = m.get(r, c).sub(&factor.mul(m.get(rank, c)));
                m.set(r, c, v);
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Solves `R · X = L` for square invertible `R`, i.e. returns `R⁻¹ L`: the
/// left block obtained once row operations turn the right block into the
/// identity.
pub fn normalize_right_block<T: FieldElement>(left: &Matrix<T>, right: &Matrix<T>) -> Result<Matrix<T>> {
    if !right.is_square() || left.rows != right.rows {
        return Err(Error::Dimension(format!(
            "left {}x{} and right {}x{} blocks are incompatible",
            left.rows, left.cols, right.rows, right.cols
        )));
    }
    let n = right.rows;
    let mut aug = right.hconcat(left)?;
    let width = aug.cols;
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug.get(r, col).is_zero())
            .ok_or_else(|| Error::Singular(format!("right block has no pivot in column {}", col + 1)))?;
        aug.swap_rows(pivot, col);
        let inv = aug.get(col, col).inv();
        for c in 0..width {
            let v = aug.get(col, c).mul(&inv);
            aug.set(col, c, v);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = aug.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..width {
                let v = aug.get(r, c).sub(&factor.mul(aug.get(col, c)));
                aug.set(r, c, v);
            }
        }
    }
    let cols: Vec<usize> = (n..width).collect();
    let rows: Vec<usize> = (0..n).collect();
    Ok(aug.submatrix(&rows, &cols))
}

/// Rank and sign counts of a real quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InertiaProfile {
    pub rank: usize,
    pub positives: usize,
    pub negatives: usize,
}

impl InertiaProfile {
    /// Number of negative squares.
    pub fn index(&self) -> usize {
        self.negatives
    }

    pub fn signature(&self) -> i64 {
        self.positives as i64 - self.negatives as i64
    }
}

fn require_symmetric(s: &Matrix<Rational>) -> Result<()> {
    if !s.is_square() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", s.rows, s.cols)));
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric("quadratic form needs a symmetric matrix".into()));
    }
    Ok(())
}

/// Diagonalizes a symmetric rational matrix by congruence (matched row and
/// column operations) and counts the signs of the resulting diagonal.
pub fn congruence_diagonalize(s: &Matrix<Rational>) -> Result<InertiaProfile> {
    require_symmetric(s)?;
    let mut m = s.clone();
    let n = m.rows;
    let mut profile = InertiaProfile {
        rank: 0,
        positives: 0,
        negatives: 0,
    };
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !Zero::is_zero(m.get(i, i))) {
            Some(p) => p,
            None => {
                // Zero diagonal: add row/column j to i so that the new
                // diagonal entry is 2·a_ij ≠ 0.
                let Some((i, j)) = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !Zero::is_zero(m.get(i, j)))
                else {
                    break;
                };
                for c in 0..n {
                    let v = m.get(i, c) + m.get(j, c);
                    m.set(i, c, v);
                }
                for r in 0..n {
                    let v = m.get(r, i) + m.get(r, j);
                    m.set(r, i, v);
                }
                i
            }
        };
        if pivot != k {
            m.swap_rows(pivot, k);
            for r in 0..n {
                m.data.swap(r * n + pivot, r * n + k);
            }
        }
        let p = m.get(k, k).clone();
        for r in k + 1..n {
            let factor = m.get(r, k) / &p;
            if Zero::is_zero(&factor) {
                continue;
            }
            for c in k..n {
                let v = m.get(r, c) - &factor * m.get(k, c);
                m.set(r, c, v);
            }
            for rr in k..n {
                let v = m.get(rr, r) - &factor * m.get(rr, k);
                m.set(rr, r, v);
            }
        }
        profile.rank += 1;
        if p.is_positive() {
            profile.positives += 1;
        } else {
            profile.negatives += 1;
        }
    }
    debug_assert!(m.is_symmetric());
    Ok(profile)
}

/// Leading principal minors `P_0 = 1, P_1, …, P_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalMinorSequence {
    pub values: Vec<Rational>,
}

impl PrincipalMinorSequence {
    pub fn leading(s: &Matrix<Rational>, upto: usize) -> Self {
        let values = (0..=upto)
            .map(|i| {
                let idx: Vec<usize> = (0..i).collect();
                s.principal_minor(&idx)
            })
            .collect();
        PrincipalMinorSequence { values }
    }

    /// Sign changes after deleting zero terms.
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<i8> = self.values.iter().map(sign_of).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.values.iter().map(sign_of).collect()
    }
}

/// Finds a simultaneous row/column permutation `p` (arranged matrix
/// `S[p[i]][p[j]]`) under which the leading minors never vanish twice in a
/// row before the rank and `P_r ≠ 0`.
pub fn regular_arrangement(s: &Matrix<Rational>) -> Result<Vec<usize>> {
    require_symmetric(s)?;
    let n = s.rows;
    let r = rank(s);
    let mut chosen = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut minors: Vec<Rational> = vec![int(1)];
    if !arrange_dfs(s, r, &mut chosen, &mut used, &mut minors) {
        return Err(Error::Internal("no regular arrangement found".into()));
    }
    chosen.extend((0..n).filter(|&i| !used[i]));
    Ok(chosen)
}

fn arrange_dfs(
    s: &Matrix<Rational>,
    r: usize,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    minors: &mut Vec<Rational>,
) -> bool {
    let i = chosen.len();
    if i == r {
        return true;
    }
    for cand in 0..s.rows {
        if used[cand] {
            continue;
        }
        chosen.push(cand);
        let p = s.principal_minor(chosen);
        let ok = if i + 1 == r {
            !Zero::is_zero(&p)
        } else {
            !(Zero::is_zero(&p) && Zero::is_zero(&minors[i]))
        };
        if ok {
            used[cand] = true;
            minors.push(p);
            if arrange_dfs(s, r, chosen, used, minors) {
                return true;
            }
            minors.pop();
            used[cand] = false;
        }
        chosen.pop();
    }
    false
}

/// Kronecker's index computation, with its intermediate data.
#[derive(Clone, Debug)]
pub struct KroneckerReport {
    pub arrangement: Vec<usize>,
    pub minors: PrincipalMinorSequence,
    pub profile: InertiaProfile,
}

pub fn kronecker(s: &Matrix<Rational>) -> Result<KroneckerReport> {
    let arrangement = regular_arrangement(s)?;
    let arranged = s.permute_symmetric(&arrangement);
    let r = rank(s);
    let minors = PrincipalMinorSequence::leading(&arranged, r);
    let index = minors.sign_changes();
    Ok(KroneckerReport {
        arrangement,
        minors,
        profile: InertiaProfile {
            rank: r,
            positives: r - index,
            negatives: index,
        },
    })
}

/// Index, rank and positive count via regular arrangement and sign changes
/// of the leading principal minors.
pub fn kronecker_index(s: &Matrix<Rational>) -> Result<InertiaProfile> {
    Ok(kronecker(s)?.profile)
}

/// Basis of the right null space `{x : m·x = 0}`.
pub fn null_space(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        let Some(p) = (row..a.rows).find(|&r| !Zero::is_zero(a.get(r, col))) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a.get(row, col).recip();
        for c in 0..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || Zero::is_zero(a.get(r, col)) {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in 0..a.cols {
                let v = a.get(r, c) - &factor * a.get(row, c);
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.rows {
            break;
        }
    }
    (0..a.cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![int(0); a.cols];
            x[free] = int(1);
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -a.get(r, free).clone();
            }
            x
        })
        .collect()
}

/// Whether the origin lies in the convex hull of `points` (all of equal
/// dimension). Exact phase-one simplex with Bland's rule.
pub fn zero_in_convex_hull(points: &[Vec<Rational>]) -> bool {
    let k = points.len();
    if k == 0 {
        return false;
    }
    let d = points[0].len();
    let m = d + 1;
    let rhs = k + m;
    let mut t = vec![vec![int(0); rhs + 1]; m];
    for (j, p) in points.iter().enumerate() {
        for i in 0..d {
            t[i][j] = p[i].clone();
        }
        t[d][j] = int(1);
    }
    for (i, row) in t.iter_mut().enumerate() {
        row[k + i] = int(1);
    }
    t[d][rhs] = int(1);
    let mut basis: Vec<usize> = (k..k + m).collect();
    let cost = |j: usize| if j >= k { 1 } else { 0 };
    loop {
        let entering = (0..rhs).filter(|j| !basis.contains(j)).find(|&j| {
            let mut r = int(cost(j));
            for (i, &b) in basis.iter().enumerate() {
                if cost(b) == 1 {
                    r -= &t[i][j];
                }
            }
            r.is_negative()
        });
        let Some(j) = entering else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][j].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][j];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (pr, _) = leave.expect("bounded phase-one program");
        let inv = t[pr][j].recip();
        for v in t[pr].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pr || Zero::is_zero(&row[j]) {
                continue;
            }
            let factor = row[j].clone();
            for (c, v) in row.iter_mut().enumerate() {
                *v -= &factor * &pivot_row[c];
            }
        }
        basis[pr] = j;
    }
    basis
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b >= k)
        .all(|(i, _)| Zero::is_zero(&t[i][rhs]))
}

/// A matrix over either supported field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactMatrix {
    Rational(Matrix<Rational>),
    Gf2(Matrix<Gf2>),
}

impl ExactMatrix {
    pub fn field_name(&self) -> &'static str {
        match self {
            ExactMatrix::Rational(_) => Rational::NAME,
            ExactMatrix::Gf2(_) => Gf2::NAME,
        }
    }

    pub fn as_rational(&self) -> Result<&Matrix<Rational>> {
        match self {
            ExactMatrix::Rational(m) => Ok(m),
            ExactMatrix::Gf2(_) => Err(Error::UnsupportedField("GF(2)")),
        }
    }
}
