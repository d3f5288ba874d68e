//! Exact integer linear algebra: Smith and Hermite normal forms, presentations
//! of quotients Z^r / L, and orders of elements in them.
//!
//! Everything is dense and uses arbitrary-precision integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if entries.len() != rows * cols {
            return Err(LatticeError::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, all of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LatticeError::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(IntMatrix { rows: n, cols, entries })
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
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

    pub fn matmul(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        if x.len() != self.rows {
            return Err(LatticeError::DimensionMismatch { expected: self.rows, found: x.len() });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += xi * a;
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * &m[(n - 1, n - 1)])
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows a, b by (x·a + y·b, z·a + w·b).
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = z * &ra + w * &rb;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// U·A·V = D with U, V unimodular and D diagonal, d₁ | d₂ | ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// The min(rows, cols) diagonal entries of D.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Checks U·A·V = D, |det U| = |det V| = 1, diagonality and the
    /// divisibility chain against the source matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let Ok(uav) = self.u.matmul(a).and_then(|ua| ua.matmul(&self.v)) else {
            return false;
        };
        if uav != self.d {
            return false;
        }
        let unimodular = |m: &IntMatrix| m.determinant().map(|d| d.abs().is_one()).unwrap_or(false);
        if !unimodular(&self.u) || !unimodular(&self.v) {
            return false;
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && !self.d[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) })
    }
}

/// Smith normal form with unimodular witnesses.
///
/// The pivot is always the nonzero entry of least absolute value in the
/// remaining submatrix, ties broken by lowest (row, col), so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| x.abs() < d[(pi, pj)].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let p = d[(t, t)].clone();
        let mut clean = true;
        for i in t + 1..m {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = -(&d[(i, t)] / &p);
            d.add_row_multiple(i, t, &q);
            u.add_row_multiple(i, t, &q);
            clean &= d[(i, t)].is_zero();
        }
        for j in t + 1..n {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = -(&d[(t, j)] / &p);
            d.add_col_multiple(j, t, &q);
            v.add_col_multiple(j, t, &q);
            clean &= d[(t, j)].is_zero();
        }
        if !clean {
            // a remainder smaller than the pivot survived; pick again
            continue;
        }
        let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
        if let Some(i) = offender {
            d.add_row_multiple(t, i, &BigInt::one());
            u.add_row_multiple(t, i, &BigInt::one());
            continue;
        }
        if p.is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { u, v, d }
}

fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    // returns (g, x, y) with x·a + y·b = g ≥ 0
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row-style Hermite normal form H = U·A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`, in row order.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of H: the canonical basis of the row lattice.
    pub fn basis(&self) -> IntMatrix {
        let rows = (0..self.rank()).map(|i| self.h.row(i).to_vec()).collect();
        IntMatrix::from_rows(self.h.cols, rows).expect("rows have the matrix width")
    }

    /// Coefficients c with x = Σ c_i·H_i, found by back-substitution down the
    /// pivots; `None` when x is not in the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.h.cols {
            return None;
        }
        let mut residual = x.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (i, &pc) in self.pivots.iter().enumerate() {
            let p = &self.h[(i, pc)];
            let (q, r) = residual[pc].div_rem(p);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (res, h) in residual.iter_mut().zip(self.h.row(i)).skip(pc) {
                    *res -= &q * h;
                }
            }
            coeffs.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solve(x).is_some()
    }

    /// Index of the lattice in Z^cols when it has full rank; `None` otherwise.
    pub fn full_rank_index(&self) -> Option<BigInt> {
        if self.rank() != self.h.cols {
            return None;
        }
        Some(self.pivots.iter().enumerate().map(|(i, &c)| self.h[(i, c)].clone()).product())
    }
}

/// Hermite normal form: upper echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`, zero rows last.
pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        for i in row + 1..m {
            if h[(i, col)].is_zero() {
                continue;
            }
            let a = h[(row, col)].clone();
            let b = h[(i, col)].clone();
            let (g, x, y) = extended_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let nbg = -bg;
            h.combine_rows(row, i, [&x, &y, &nbg, &ag]);
            u.combine_rows(row, i, [&x, &y, &nbg, &ag]);
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let p = h[(row, col)].clone();
        for i in 0..row {
            let q = -h[(i, col)].div_floor(&p);
            if !q.is_zero() {
                h.add_row_multiple(i, row, &q);
                u.add_row_multiple(i, row, &q);
            }
        }
        pivots.push(col);
        row += 1;
    }
    HermiteForm { h, u, pivots }
}

/// Every row of `b` lies in the row lattice of `a`.
pub fn row_span_contains(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.cols != b.cols {
        return false;
    }
    let hnf = hermite_normal_form(a);
    (0..b.rows).all(|i| hnf.contains(b.row(i)))
}

/// Mutual containment of row lattices.
pub fn same_row_span(a: &IntMatrix, b: &IntMatrix) -> bool {
    row_span_contains(a, b) && row_span_contains(b, a)
}

/// Order of a group element: a positive integer or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// Z^r / L written as Z^free ⊕ Z/d₁ ⊕ … ⊕ Z/d_k with d₁ | … | d_k, all d ≥ 2.
///
/// Component order is free summands first, then torsion in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub ambient_rank: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    /// Image of each standard basis vector e_i, one coordinate per component,
    /// torsion coordinates reduced into `[0, d)`.
    pub generator_images: Vec<Vec<BigInt>>,
    projection: IntMatrix,
}

impl AbelianGroupPresentation {
    /// Modulus of each component: 0 for free summands.
    pub fn moduli(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.free_rank).chain(self.invariant_factors.iter().cloned()).collect()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        let raw = self.projection.left_apply(x)?;
        Ok(raw.into_iter().zip(self.moduli()).map(|(c, d)| if d.is_zero() { c } else { c.mod_floor(&d) }).collect())
    }

    /// Torsion part only, as a presentation of its own.
    pub fn torsion_part(&self) -> AbelianGroupPresentation {
        let keep: Vec<usize> = (self.free_rank..self.free_rank + self.invariant_factors.len()).collect();
        let projection = self.projection.select_columns(&keep);
        AbelianGroupPresentation {
            ambient_rank: self.ambient_rank,
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
            generator_images: self.generator_images.iter().map(|g| g[self.free_rank..].to_vec()).collect(),
            projection,
        }
    }

    /// `Z^r + Z/d1 + …`, `Z` for rank one, `0` for the trivial group.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Presentation of Z^r modulo the row lattice of `lattice`.
pub fn quotient_presentation(r: usize, lattice: &IntMatrix) -> Result<AbelianGroupPresentation, LatticeError> {
    if lattice.cols != r {
        return Err(LatticeError::DimensionMismatch { expected: r, found: lattice.cols });
    }
    // U·L·V = D, so rowspan(L) = rowspan(D·V⁻¹) and x ↦ x·V gives coordinates
    // in which the lattice is Σ d_j·Z e_j.
    let snf = smith_normal_form(lattice);
    let diag = snf.diagonal();
    let modulus = |j: usize| diag.get(j).cloned().unwrap_or_else(BigInt::zero);
    let free: Vec<usize> = (0..r).filter(|&j| modulus(j).is_zero()).collect();
    let torsion: Vec<usize> = (0..r).filter(|&j| modulus(j) > BigInt::one()).collect();
    let mut selected = free.clone();
    selected.extend(&torsion);
    let projection = snf.v.select_columns(&selected);
    let mut pres = AbelianGroupPresentation {
        ambient_rank: r,
        free_rank: free.len(),
        invariant_factors: torsion.iter().map(|&j| modulus(j)).collect(),
        generator_images: Vec::new(),
        projection,
    };
    pres.generator_images = (0..r)
        .map(|i| {
            let mut e = vec![BigInt::zero(); r];
            e[i] = BigInt::one();
            pres.coordinates(&e).expect("basis vector has length r")
        })
        .collect();
    Ok(pres)
}

/// Smallest n ≥ 1 with n·x in the lattice, read off the invariant-factor
/// coordinates: lcm of d/gcd(d, c) over torsion coordinates, infinite if any
/// free coordinate is nonzero.
pub fn element_order_in_quotient(p: &AbelianGroupPresentation, x: &[BigInt]) -> Result<Order, LatticeError> {
    let coords = p.coordinates(x)?;
    if coords[..p.free_rank].iter().any(|c| !c.is_zero()) {
        return Ok(Order::Infinite);
    }
    let order = coords[p.free_rank..]
        .iter()
        .zip(&p.invariant_factors)
        .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / d.gcd(c))));
    Ok(Order::Finite(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(cols, rows).unwrap()
    }

    #[test]
    fn snf_small_cases() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
        assert!(s.verify(&id));

        let a = mat(2, &[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), big(&[1, 6]));
        assert!(s.verify(&a));

        let empty = IntMatrix::zeros(0, 3);
        let s = smith_normal_form(&empty);
        assert!(s.diagonal().is_empty());
        assert!(s.verify(&empty));

        let zero = IntMatrix::zeros(2, 2);
        assert_eq!(smith_normal_form(&zero).diagonal(), big(&[0, 0]));
    }

    #[test]
    fn snf_is_deterministic() {
        let a = mat(3, &[&[4, -6, 2], &[8, 3, -1], &[0, 5, 7]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn hnf_small_cases() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id).h, id);
        let row = mat(2, &[&[2, -2]]);
        assert_eq!(hermite_normal_form(&row).h, row);
        let a = mat(2, &[&[2, 0], &[0, 3]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h.h, a);
        assert_eq!(h.full_rank_index(), Some(BigInt::from(6)));
        assert_eq!(smith_normal_form(&a).diagonal(), big(&[1, 6]));
        assert!(same_row_span(&a, &mat(2, &[&[2, 3], &[2, 0]])));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = mat(3, &[&[3, 5, 7], &[0, 4, 9], &[6, 2, -1]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h.u.matmul(&a).unwrap(), h.h);
        assert!(h.u.determinant().unwrap().abs().is_one());
        for (i, &pc) in h.pivots.iter().enumerate() {
            let p = &h.h[(i, pc)];
            assert!(p.is_positive());
            for k in 0..i {
                assert!(!h.h[(k, pc)].is_negative() && &h.h[(k, pc)] < p);
            }
        }
    }

    #[test]
    fn quotients() {
        let p = quotient_presentation(2, &mat(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(p.free_rank, 0);
        assert_eq!(p.invariant_factors, big(&[2, 2]));
        assert_eq!(p.render(), "Z/2 + Z/2");

        let p = quotient_presentation(2, &mat(2, &[&[2, -2]])).unwrap();
        assert_eq!(p.render(), "Z + Z/2");
        assert_eq!(element_order_in_quotient(&p, &big(&[1, -1])).unwrap(), Order::Finite(BigInt::from(2)));
        assert_eq!(element_order_in_quotient(&p, &big(&[1, 0])).unwrap(), Order::Infinite);
        assert_eq!(element_order_in_quotient(&p, &big(&[0, 0])).unwrap(), Order::Finite(BigInt::one()));

        let p = quotient_presentation(3, &IntMatrix::zeros(0, 3)).unwrap();
        assert_eq!(p.render(), "Z^3");
        let p = quotient_presentation(2, &IntMatrix::identity(2)).unwrap();
        assert_eq!(p.render(), "0");

        assert_eq!(
            quotient_presentation(3, &IntMatrix::identity(2)),
            Err(LatticeError::DimensionMismatch { expected: 3, found: 2 })
        );
        assert!(element_order_in_quotient(&p, &big(&[1])).is_err());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        fn cofactor(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * cofactor(&minor)
                })
                .sum()
        }
        let rows = vec![vec![0, 2, -1, 3], vec![1, 0, 4, -2], vec![5, -3, 0, 1], vec![2, 2, 2, 0]];
        let m = IntMatrix::from_rows(4, rows.iter().map(|r| big(r)).collect()).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(cofactor(&rows)));
    }

    fn arb_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c)
                .prop_map(move |e| IntMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    /// gcd of all k×k minors, by enumeration.
    fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                let sub: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
                let det = IntMatrix::from_rows(k, sub).unwrap().determinant().unwrap();
                g = g.gcd(&det);
            }
        }
        g
    }

    proptest! {
        #[test]
        fn snf_is_valid(a in arb_matrix(6)) {
            prop_assert!(smith_normal_form(&a).verify(&a));
        }

        #[test]
        fn snf_prefix_products_are_minor_gcds(e in prop::collection::vec(-9i64..=9, 16)) {
            let a = IntMatrix::new(4, 4, e.into_iter().map(BigInt::from).collect()).unwrap();
            let diag = smith_normal_form(&a).diagonal();
            for k in 1..=4 {
                let prefix: BigInt = diag[..k].iter().product();
                prop_assert_eq!(prefix, minor_gcd(&a, k));
            }
        }

        #[test]
        fn hnf_spans_the_same_lattice(a in arb_matrix(5)) {
            let h = hermite_normal_form(&a);
            prop_assert_eq!(h.u.matmul(&a).unwrap(), h.h.clone());
            prop_assert!(h.u.determinant().unwrap().abs().is_one());
            prop_assert!(same_row_span(&a, &h.basis()));
            let p = quotient_presentation(a.cols(), &a).unwrap();
            prop_assert_eq!(p.free_rank, a.cols() - h.rank());
            if let Some(index) = h.full_rank_index() {
                prop_assert_eq!(index, p.torsion_order());
            }
        }

        #[test]
        fn element_orders_match_brute_force(a in arb_matrix(4), x in prop::collection::vec(-6i64..=6, 4)) {
            let r = a.cols();
            let x: Vec<BigInt> = x.into_iter().take(r).map(BigInt::from).collect();
            let p = quotient_presentation(r, &a).unwrap();
            let hnf = hermite_normal_form(&a);
            let bound: BigInt = p.torsion_order();
            let bound = u64::try_from(&bound).unwrap();
            let brute = (1..=bound)
                .find(|&n| hnf.contains(&x.iter().map(|c| c * n).collect::<Vec<_>>()))
                .map(|n| Order::Finite(BigInt::from(n)))
                .unwrap_or(Order::Infinite);
            prop_assert_eq!(element_order_in_quotient(&p, &x).unwrap(), brute);
        }
    }
}
