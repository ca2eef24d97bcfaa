//! Dense integer matrices and Smith normal form.
//!
//! Entries are arbitrary precision. The elimination kernel runs on checked
//! `i64` arithmetic first and restarts on `BigInt` if any intermediate value
//! would overflow, so results never depend on machine word size.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn diagonal<T: Into<Int> + Clone>(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let nz: Vec<(usize, &Int)> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for &(k, x) in &nz {
                    let a = &self[(i, k)];
                    if !a.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// `self * v` on machine integers; `None` if an entry leaves `i64`.
    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        let big: Vec<Int> = v.iter().map(|&x| Int::from(x)).collect();
        self.mul_vec(&big).iter().map(ToPrimitive::to_i64).collect()
    }

    /// Entries as machine integers, row-major; `None` on overflow.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|r| self.row(r).iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    pub fn trace(&self) -> Int {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Column-wise nonzero lists, for products against sparse boundary data.
    pub fn sparse_columns(&self) -> Vec<Vec<(usize, Int)>> {
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter_map(|r| {
                        let v = &self[(r, c)];
                        (!v.is_zero()).then(|| (r, v.clone()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Rows `range` of `self` times a matrix given by sparse columns.
    pub fn mul_sparse_rows(
        &self,
        row_range: std::ops::Range<usize>,
        other_cols: &[Vec<(usize, Int)>],
    ) -> IntegerMatrix {
        let mut out = Self::zeros(row_range.len(), other_cols.len());
        for (j, col) in other_cols.iter().enumerate() {
            for (oi, i) in row_range.clone().enumerate() {
                let mut acc = Int::zero();
                for (k, b) in col {
                    let a = &self[(i, *k)];
                    if !a.is_zero() {
                        acc += a * b;
                    }
                }
                out[(oi, j)] = acc;
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (oi, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out[(oi, c)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (oi, &r) in rows.iter().enumerate() {
            for (oj, &c) in cols.iter().enumerate() {
                out[(oi, oj)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a: Vec<Vec<Int>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Exact inverse of a unimodular matrix, `None` if the determinant is not ±1.
    pub fn inverse_unimodular(&self) -> Option<IntegerMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let snf = smith_normal_form(self);
        let n = self.rows;
        if (0..n).any(|i| !snf.d[(i, i)].is_one()) {
            return None;
        }
        // A = U D V with D = I, so A^{-1} = V^{-1} U^{-1}.
        Some(snf.v_inv.mul(&snf.u_inv))
    }
}

/// `A = U · D · V` with `U`, `V` unimodular and `D` diagonal with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SNFDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl SNFDecomposition {
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SNFDecomposition {
    let out = snf_tracked(a, Track { left: true, right: true });
    SNFDecomposition {
        u: out.u.unwrap(),
        u_inv: out.u_inv.unwrap(),
        v: out.v.unwrap(),
        v_inv: out.v_inv.unwrap(),
        rank: out.diag.len(),
        d: IntegerMatrix::diagonal(a.rows(), a.cols(), &out.diag),
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
}

/// Output of the tracked kernel. Untracked sides are `None`.
#[derive(Debug)]
pub(crate) struct SnfParts {
    pub diag: Vec<Int>,
    pub u: Option<IntegerMatrix>,
    pub u_inv: Option<IntegerMatrix>,
    pub v: Option<IntegerMatrix>,
    pub v_inv: Option<IntegerMatrix>,
}

pub(crate) fn snf_tracked(a: &IntegerMatrix, track: Track) -> SnfParts {
    if let Some(small) = to_small(a) {
        if let Ok(parts) = Kernel::<i64>::new(small, a.rows, a.cols, track).run() {
            return parts.into_parts();
        }
    }
    let big: Vec<Vec<Int>> = (0..a.rows).map(|r| a.row(r).to_vec()).collect();
    Kernel::<Int>::new(big, a.rows, a.cols, track).run().expect("bigint kernel cannot overflow").into_parts()
}

fn to_small(a: &IntegerMatrix) -> Option<Vec<Vec<i64>>> {
    (0..a.rows)
        .map(|r| a.row(r).iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>())
        .collect()
}

#[derive(Debug)]
struct Overflow;

trait Scalar: Clone + PartialEq + fmt::Debug {
    fn s_zero() -> Self;
    fn s_one() -> Self;
    fn s_is_zero(&self) -> bool;
    fn abs_le(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn negate(&self) -> Result<Self, Overflow>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow>;
    fn add_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow>;
    fn div_floor(&self, d: &Self) -> Result<Self, Overflow>;
    fn divisible_by(&self, d: &Self) -> bool;
    fn to_int(&self) -> Int;
}

impl Scalar for i64 {
    fn s_zero() -> Self {
        0
    }
    fn s_one() -> Self {
        1
    }
    fn s_is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_le(&self, other: &Self) -> bool {
        self.unsigned_abs() <= other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn negate(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p)).ok_or(Overflow)
    }
    fn add_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        q.checked_mul(*b).and_then(|p| self.checked_add(p)).ok_or(Overflow)
    }
    fn div_floor(&self, d: &Self) -> Result<Self, Overflow> {
        if *self == i64::MIN && *d == -1 {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, d))
    }
    fn divisible_by(&self, d: &Self) -> bool {
        self.checked_rem(*d) == Some(0)
    }
    fn to_int(&self) -> Int {
        Int::from(*self)
    }
}

impl Scalar for Int {
    fn s_zero() -> Self {
        Zero::zero()
    }
    fn s_one() -> Self {
        One::one()
    }
    fn s_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_le(&self, other: &Self) -> bool {
        self.abs() <= other.abs()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negate(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        Ok(self - q * b)
    }
    fn add_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        Ok(self + q * b)
    }
    fn div_floor(&self, d: &Self) -> Result<Self, Overflow> {
        Ok(Integer::div_floor(self, d))
    }
    fn divisible_by(&self, d: &Self) -> bool {
        (self % d).s_is_zero()
    }
    fn to_int(&self) -> Int {
        self.clone()
    }
}

/// Elimination state: `L · A · R = D`, with `U = L^{-1}` and `V = R^{-1}`.
struct Kernel<T: Scalar> {
    a: Vec<Vec<T>>,
    rows: usize,
    l: Option<Vec<Vec<T>>>,
    u: Option<Vec<Vec<T>>>,
    r: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
    diag: Vec<T>,
    col_end: usize,
}

struct KernelOut<T: Scalar> {
    diag: Vec<T>,
    l: Option<Vec<Vec<T>>>,
    u: Option<Vec<Vec<T>>>,
    r: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> KernelOut<T> {
    fn into_parts(self) -> SnfParts {
        let conv = |m: Option<Vec<Vec<T>>>| {
            m.map(|rows| {
                let r = rows.len();
                let c = rows.first().map_or(0, |x| x.len());
                let mut out = IntegerMatrix::zeros(r, c);
                for (i, row) in rows.into_iter().enumerate() {
                    for (j, x) in row.into_iter().enumerate() {
                        if !x.s_is_zero() {
                            out[(i, j)] = x.to_int();
                        }
                    }
                }
                out
            })
        };
        SnfParts {
            diag: self.diag.iter().map(Scalar::to_int).collect(),
            u_inv: conv(self.l),
            u: conv(self.u),
            v_inv: conv(self.r),
            v: conv(self.v),
        }
    }
}

fn ident<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::s_one() } else { T::s_zero() }).collect())
        .collect()
}

impl<T: Scalar> Kernel<T> {
    fn new(a: Vec<Vec<T>>, rows: usize, cols: usize, track: Track) -> Self {
        Kernel {
            a,
            rows,
            l: track.left.then(|| ident(rows)),
            u: track.left.then(|| ident(rows)),
            r: track.right.then(|| ident(cols)),
            v: track.right.then(|| ident(cols)),
            diag: Vec::new(),
            col_end: cols,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(l) = &mut self.l {
            l.swap(i, j);
        }
        if let Some(u) = &mut self.u {
            for row in u.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(r) = &mut self.r {
            for row in r.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(v) = &mut self.v {
            v.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T, from_col: usize) -> Result<(), Overflow> {
        let (ri, rt) = pair_mut(&mut self.a, i, t);
        for c in from_col..ri.len() {
            if !rt[c].s_is_zero() {
                ri[c] = ri[c].sub_mul(q, &rt[c])?;
            }
        }
        if let Some(l) = &mut self.l {
            let (li, lt) = pair_mut(l, i, t);
            for c in 0..li.len() {
                if !lt[c].s_is_zero() {
                    li[c] = li[c].sub_mul(q, &lt[c])?;
                }
            }
        }
        if let Some(u) = &mut self.u {
            // U <- U · E^{-1}: col_t += q col_i
            for row in u.iter_mut() {
                if !row[i].s_is_zero() {
                    row[t] = row[t].add_mul(q, &row[i])?;
                }
            }
        }
        Ok(())
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T, from_row: usize) -> Result<(), Overflow> {
        for row in self.a[from_row..].iter_mut() {
            if !row[t].s_is_zero() {
                row[j] = row[j].sub_mul(q, &row[t])?;
            }
        }
        if let Some(r) = &mut self.r {
            for row in r.iter_mut() {
                if !row[t].s_is_zero() {
                    row[j] = row[j].sub_mul(q, &row[t])?;
                }
            }
        }
        if let Some(v) = &mut self.v {
            // V <- E^{-1} · V: row_t += q row_j
            let (vt, vj) = pair_mut(v, t, j);
            for c in 0..vt.len() {
                if !vj[c].s_is_zero() {
                    vt[c] = vt[c].add_mul(q, &vj[c])?;
                }
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, t: usize) -> Result<(), Overflow> {
        for x in self.a[t].iter_mut() {
            *x = x.negate()?;
        }
        if let Some(l) = &mut self.l {
            for x in l[t].iter_mut() {
                *x = x.negate()?;
            }
        }
        if let Some(u) = &mut self.u {
            for row in u.iter_mut() {
                row[t] = row[t].negate()?;
            }
        }
        Ok(())
    }

    /// Smallest absolute nonzero entry of the trailing block, scanning columns
    /// left to right and rows top to bottom; a unit ends the scan. Columns found
    /// to be zero are parked past `col_end` (they stay zero for good).
    fn find_pivot(&mut self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut c = t;
        while c < self.col_end {
            let mut nonzero = false;
            for r in t..self.rows {
                let x = &self.a[r][c];
                if x.s_is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((r, c));
                }
                nonzero = true;
                match best {
                    Some((br, bc)) if self.a[br][bc].abs_le(x) => {}
                    _ => best = Some((r, c)),
                }
            }
            if nonzero {
                c += 1;
            } else {
                self.col_end -= 1;
                self.swap_cols(c, self.col_end);
            }
        }
        best
    }

    fn run(mut self) -> Result<KernelOut<T>, Overflow> {
        let mut t = 0;
        while t < self.rows.min(self.col_end) {
            let Some((pr, pc)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let mut dirty = false;
                for r in t + 1..self.rows {
                    if self.a[r][t].s_is_zero() {
                        continue;
                    }
                    let q = self.a[r][t].div_floor(&self.a[t][t])?;
                    self.row_sub(r, t, &q, t)?;
                    if !self.a[r][t].s_is_zero() {
                        dirty = true;
                    }
                }
                for c in t + 1..self.col_end {
                    if self.a[t][c].s_is_zero() {
                        continue;
                    }
                    let q = self.a[t][c].div_floor(&self.a[t][t])?;
                    self.col_sub(c, t, &q, t)?;
                    if !self.a[t][c].s_is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // A smaller remainder appeared in the pivot row or column.
                    let (pr, pc) = self.find_pivot_cross(t);
                    self.swap_rows(t, pr);
                    self.swap_cols(t, pc);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = if p.is_unit() {
                    None
                } else {
                    (t + 1..self.rows)
                        .find(|&r| (t + 1..self.col_end).any(|c| !self.a[r][c].divisible_by(&p)))
                };
                match bad {
                    Some(r) => {
                        let minus_one = T::s_one().negate()?;
                        self.row_sub(t, r, &minus_one, t)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            self.diag.push(self.a[t][t].clone());
            t += 1;
        }
        Ok(KernelOut { diag: self.diag, l: self.l, u: self.u, r: self.r, v: self.v })
    }

    fn find_pivot_cross(&self, t: usize) -> (usize, usize) {
        let col_end = self.col_end;
        let mut best = (t, t);
        let better = |x: &T, b: &T| !x.s_is_zero() && (b.s_is_zero() || !b.abs_le(x));
        for r in t..self.rows {
            if better(&self.a[r][t], &self.a[best.0][best.1]) {
                best = (r, t);
            }
        }
        for c in t..col_end {
            if better(&self.a[t][c], &self.a[best.0][best.1]) {
                best = (t, c);
            }
        }
        best
    }
}

fn pair_mut<T>(v: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &Vec<T>) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}
