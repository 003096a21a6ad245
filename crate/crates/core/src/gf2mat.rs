//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are stored as `u64` words, least significant bit first; the padding
//! bits past `cols` in the last word of every row are kept zero. Public
//! operations never mutate their inputs.

use std::fmt;

use thiserror::Error;

const W: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(W)
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * W + w.trailing_zeros() as usize)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> BitVec {
        let mut v = BitVec { len, words: vec![!0; words_for(len)] };
        v.clear_padding();
        v
    }

    /// Vector with ones at the given positions; repeated positions toggle.
    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> BitVec {
        let mut v = BitVec::zeros(len);
        for i in idx {
            v.toggle(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> BitVec {
        BitVec::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    fn clear_padding(&mut self) {
        let r = self.len % W;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / W] >> (i % W) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        if value {
            self.words[i / W] |= 1 << (i % W);
        } else {
            self.words[i / W] &= !(1 << (i % W));
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / W] ^= 1 << (i % W);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        first_one(&self.words)
    }

    /// Positions of the set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * W + b)
            })
        })
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitVec({s})")
    }
}

/// A dense 0-1 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(32) {
            let s: String = (0..self.cols.min(96)).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Gf2Matrix {
        let wpr = words_for(cols);
        Gf2Matrix { rows, cols, wpr, data: vec![0; rows * wpr] }
    }

    pub fn identity(n: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Gf2Matrix, Gf2Error> {
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            m.row_mut(i).copy_from_slice(&r.words);
        }
        Ok(m)
    }

    pub fn from_columns(rows: usize, cols: &[BitVec]) -> Result<Gf2Matrix, Gf2Error> {
        let mut m = Gf2Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Gf2Error::DimensionMismatch { expected: rows, got: c.len() });
            }
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Build from a dense 0/1 array; any nonzero entry counts as 1.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Gf2Matrix, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            for (j, &x) in r.iter().enumerate() {
                if x != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Words per row.
    pub fn words_per_row(&self) -> usize {
        self.wpr
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.wpr..(i + 1) * self.wpr]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.wpr..(i + 1) * self.wpr]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        self.data[r * self.wpr + c / W] >> (c % W) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        let w = &mut self.data[r * self.wpr + c / W];
        if value {
            *w |= 1 << (c % W);
        } else {
            *w &= !(1 << (c % W));
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        self.data[r * self.wpr + c / W] ^= 1 << (c % W);
    }

    pub fn row_vec(&self, i: usize) -> BitVec {
        BitVec { len: self.cols, words: self.row(i).to_vec() }
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().row_vecs()
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in first_ones(self.row(i)) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Column positions of the ones in row `i`.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        first_ones(self.row(i)).collect()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|w| w.count_ones() as usize).sum())
            .collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.cols];
        for i in 0..self.rows {
            for j in first_ones(self.row(i)) {
                out[j] += 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `M v` over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self.row(i).iter().zip(&v.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let ones: Vec<usize> = first_ones(self.row(i)).collect();
            let dst = out.row_mut(i);
            for k in ones {
                xor_into(dst, other.row(k));
            }
        }
        Ok(out)
    }

    /// Sub-matrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank2(self)
    }
}

fn first_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * W + b)
        })
    })
}

/// Row-reduce `m` in place; returns the pivot column of each of the first
/// `rank` rows. With `reduced` set, pivot columns are cleared above as well.
fn eliminate(m: &mut Gf2Matrix, reduced: bool) -> Vec<usize> {
    let (rows, cols, wpr) = (m.rows, m.cols, m.wpr);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (wi, bit) = (c / W, 1u64 << (c % W));
        let Some(p) = (r..rows).find(|&i| m.data[i * wpr + wi] & bit != 0) else {
            continue;
        };
        if p != r {
            for k in 0..wpr {
                m.data.swap(p * wpr + k, r * wpr + k);
            }
        }
        let (head, tail) = m.data.split_at_mut((r + 1) * wpr);
        let pivot = &head[r * wpr..];
        // Words below `wi` are zero in the pivot row.
        for row in tail.chunks_exact_mut(wpr) {
            if row[wi] & bit != 0 {
                xor_into(&mut row[wi..], &pivot[wi..]);
            }
        }
        if reduced {
            let (above, rest) = head.split_at_mut(r * wpr);
            for row in above.chunks_exact_mut(wpr) {
                if row[wi] & bit != 0 {
                    xor_into(&mut row[wi..], &rest[wi..]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over GF(2) by forward elimination on a working copy.
pub fn rank2(m: &Gf2Matrix) -> usize {
    // Eliminating along the shorter side touches fewer words.
    if m.cols > m.rows * 2 {
        let mut t = m.transpose();
        return eliminate(&mut t, false).len();
    }
    let mut work = m.clone();
    eliminate(&mut work, false).len()
}

pub fn nullspace_dim(m: &Gf2Matrix) -> usize {
    m.cols - rank2(m)
}

/// Basis of `{v : M v = 0}`, one vector per free column of the reduced row
/// echelon form, ordered by free column.
pub fn nullspace_basis(m: &Gf2Matrix) -> Vec<BitVec> {
    let mut work = m.clone();
    let pivots = eliminate(&mut work, true);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVec::zeros(m.cols);
            v.set(free, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if work.get(i, free) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}

/// A subspace of `GF(2)^len`, kept as an echelon basis in insertion order.
#[derive(Clone, Debug)]
pub struct ColumnSpace {
    len: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl ColumnSpace {
    pub fn new(len: usize) -> ColumnSpace {
        ColumnSpace { len, basis: Vec::new(), pivots: Vec::new() }
    }

    /// Span of the columns of `m`.
    pub fn of_columns(m: &Gf2Matrix) -> ColumnSpace {
        let mut s = ColumnSpace::new(m.rows());
        let t = m.transpose();
        for j in 0..t.rows() {
            s.insert_words(t.row(j));
        }
        s
    }

    pub fn of_vectors<'a>(len: usize, vs: impl IntoIterator<Item = &'a BitVec>) -> Result<ColumnSpace, Gf2Error> {
        let mut s = ColumnSpace::new(len);
        for v in vs {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    fn check(&self, v: &BitVec) -> Result<(), Gf2Error> {
        if v.len() != self.len {
            Err(Gf2Error::DimensionMismatch { expected: self.len, got: v.len() })
        } else {
            Ok(())
        }
    }

    fn reduce_words(&self, words: &mut [u64]) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if words[p / W] >> (p % W) & 1 == 1 {
                let start = p / W;
                xor_into(&mut words[start..], &b.words[start..]);
            }
        }
    }

    fn insert_words(&mut self, words: &[u64]) -> bool {
        let mut w = words.to_vec();
        self.reduce_words(&mut w);
        match first_one(&w) {
            Some(p) => {
                self.basis.push(BitVec { len: self.len, words: w });
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    /// Residue of `v` after elimination against the basis.
    pub fn reduce(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        self.check(v)?;
        let mut r = v.clone();
        self.reduce_words(&mut r.words);
        Ok(r)
    }

    /// Add `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: &BitVec) -> Result<bool, Gf2Error> {
        self.check(v)?;
        Ok(self.insert_words(&v.words))
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains_space(&self, other: &ColumnSpace) -> Result<bool, Gf2Error> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &ColumnSpace) -> Result<bool, Gf2Error> {
        Ok(self.dim() == other.dim() && self.contains_space(other)?)
    }

    /// Dimension of `self + other`.
    pub fn sum_dim(&self, other: &ColumnSpace) -> Result<usize, Gf2Error> {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b)?;
        }
        Ok(s.dim())
    }
}

/// Whether `v` lies in the column space of `m`.
pub fn in_colspace(m: &Gf2Matrix, v: &BitVec) -> Result<bool, Gf2Error> {
    if v.len() != m.rows() {
        return Err(Gf2Error::DimensionMismatch { expected: m.rows(), got: v.len() });
    }
    ColumnSpace::of_columns(m).contains(v)
}

/// Dimension of the span of the columns of `m` together with `extra`.
pub fn colspace_dim_union(m: &Gf2Matrix, extra: &[BitVec]) -> Result<usize, Gf2Error> {
    let mut s = ColumnSpace::of_columns(m);
    for v in extra {
        s.insert(v)?;
    }
    Ok(s.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain Gaussian elimination on a byte matrix.
    fn naive_rank(rows: &[Vec<u8>]) -> usize {
        let mut a: Vec<Vec<u8>> = rows.to_vec();
        let ncols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            if let Some(p) = (rank..a.len()).find(|&i| a[i][c] == 1) {
                a.swap(p, rank);
                for i in 0..a.len() {
                    if i != rank && a[i][c] == 1 {
                        for k in 0..ncols {
                            a[i][k] ^= a[rank][k];
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn dense() -> impl Strategy<Value = Vec<Vec<u8>>> {
        (1usize..70, 1usize..70).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0u8..2, c), r))
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank2(&Gf2Matrix::identity(4)), 4);
        let ones = Gf2Matrix::from_dense(&vec![vec![1; 5]; 3]).unwrap();
        assert_eq!(rank2(&ones), 1);
        assert_eq!(rank2(&Gf2Matrix::zeros(3, 4)), 0);
        assert_eq!(rank2(&Gf2Matrix::zeros(0, 0)), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&Gf2Matrix::identity(7)).is_empty());
        let z = Gf2Matrix::zeros(3, 4);
        assert_eq!(nullspace_dim(&z), 4);
        assert_eq!(nullspace_basis(&z).len(), 4);
    }

    #[test]
    fn colspace_examples() {
        let m = Gf2Matrix::from_dense(&[vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(in_colspace(&m, &m.column(0)).unwrap());
        assert!(in_colspace(&m, &BitVec::zeros(3)).unwrap());
        assert!(!in_colspace(&m, &BitVec::ones(3)).unwrap());
        assert_eq!(colspace_dim_union(&m, &[BitVec::ones(3)]).unwrap(), 3);
        assert_eq!(
            in_colspace(&m, &BitVec::zeros(4)),
            Err(Gf2Error::DimensionMismatch { expected: 3, got: 4 })
        );
    }

    #[test]
    fn bitvec_basics() {
        let v = BitVec::from_indices(130, [0, 64, 129, 64]);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 129]);
        assert_eq!(BitVec::ones(130).count_ones(), 130);
        assert_eq!(v.first_one(), Some(0));
    }

    #[test]
    fn wide_matrix_rank() {
        let mut m = Gf2Matrix::zeros(3, 500);
        m.set(0, 499, true);
        m.set(1, 3, true);
        m.set(2, 3, true);
        m.set(2, 200, true);
        assert_eq!(rank2(&m), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_matches_naive(rows in dense()) {
            let m = Gf2Matrix::from_dense(&rows).unwrap();
            prop_assert_eq!(rank2(&m), naive_rank(&rows));
        }

        #[test]
        fn rank_transpose_invariant(rows in dense()) {
            let m = Gf2Matrix::from_dense(&rows).unwrap();
            prop_assert_eq!(rank2(&m), rank2(&m.transpose()));
        }

        #[test]
        fn nullspace_vectors_are_killed(rows in dense()) {
            let m = Gf2Matrix::from_dense(&rows).unwrap();
            let basis = nullspace_basis(&m);
            prop_assert_eq!(basis.len(), nullspace_dim(&m));
            for v in &basis {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            let span = ColumnSpace::of_vectors(m.cols(), &basis).unwrap();
            prop_assert_eq!(span.dim(), basis.len());
        }

        #[test]
        fn colspace_equality_reflexive_and_symmetric(a in dense(), seed in any::<u64>()) {
            let m = Gf2Matrix::from_dense(&a).unwrap();
            let s = ColumnSpace::of_columns(&m);
            prop_assert!(s.equals(&s).unwrap());
            // Reordering and adding a combination of columns keeps the span.
            let mut cols = m.columns();
            let k = (seed as usize) % cols.len();
            let mut extra = cols[k].clone();
            extra.xor_assign(&cols[(k + 1) % cols.len()]);
            cols.reverse();
            cols.push(extra);
            let t = ColumnSpace::of_vectors(m.rows(), &cols).unwrap();
            prop_assert!(s.equals(&t).unwrap());
            prop_assert!(t.equals(&s).unwrap());
            prop_assert_eq!(s.dim(), rank2(&m));
        }
    }
}
