//! The 0-1 matrices attached to the conic: the full incidence matrix `A`, its
//! nine class blocks, `B`/`B0` and `D`/`D'`, plus the tangent spans `M1`, `M2`
//! and the code dimensions derived from `B`.
//!
//! Every builder reads the incidence lists of [`ConicGeometry`], rows and
//! columns in canonical order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::gf2mat::{nullspace_dim, rank2, BitVec, ColumnSpace, Gf2Matrix};
use crate::plane::{ConicGeometry, LineClass, PointClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown matrix {0:?}; expected one of A, A11..A33, B, B0, D, Dprime")]
pub struct UnknownMatrix(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixName {
    A,
    A11,
    A12,
    A13,
    A21,
    A22,
    A23,
    A31,
    A32,
    A33,
    B,
    B0,
    D,
    Dprime,
}

impl MatrixName {
    pub const ALL: [MatrixName; 14] = [
        MatrixName::A,
        MatrixName::A11,
        MatrixName::A12,
        MatrixName::A13,
        MatrixName::A21,
        MatrixName::A22,
        MatrixName::A23,
        MatrixName::A31,
        MatrixName::A32,
        MatrixName::A33,
        MatrixName::B,
        MatrixName::B0,
        MatrixName::D,
        MatrixName::Dprime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixName::A => "A",
            MatrixName::A11 => "A11",
            MatrixName::A12 => "A12",
            MatrixName::A13 => "A13",
            MatrixName::A21 => "A21",
            MatrixName::A22 => "A22",
            MatrixName::A23 => "A23",
            MatrixName::A31 => "A31",
            MatrixName::A32 => "A32",
            MatrixName::A33 => "A33",
            MatrixName::B => "B",
            MatrixName::B0 => "B0",
            MatrixName::D => "D",
            MatrixName::Dprime => "Dprime",
        }
    }

    /// Point and line class of a block `A_ij`.
    pub fn block_classes(self) -> Option<(PointClass, LineClass)> {
        let idx = MatrixName::ALL.iter().position(|&m| m == self)?;
        if !(1..=9).contains(&idx) {
            return None;
        }
        let (i, j) = ((idx - 1) / 3, (idx - 1) % 3);
        let pc = [PointClass::Absolute, PointClass::Internal, PointClass::External][i];
        let lc = [LineClass::Tangent, LineClass::Passant, LineClass::Secant][j];
        Some((pc, lc))
    }

    pub fn block(pc: PointClass, lc: LineClass) -> MatrixName {
        let i = match pc {
            PointClass::Absolute => 0,
            PointClass::Internal => 1,
            PointClass::External => 2,
        };
        let j = match lc {
            LineClass::Tangent => 0,
            LineClass::Passant => 1,
            LineClass::Secant => 2,
        };
        MatrixName::ALL[1 + 3 * i + j]
    }
}

impl fmt::Display for MatrixName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixName {
    type Err = UnknownMatrix;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MatrixName::ALL
            .iter()
            .copied()
            .find(|m| m.as_str().eq_ignore_ascii_case(s) || (s == "D'" && *m == MatrixName::Dprime))
            .ok_or_else(|| UnknownMatrix(s.to_string()))
    }
}

/// Whether a label indexes geometry points or lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Point,
    Line,
}

/// A matrix whose rows and columns carry canonical point or line indices.
#[derive(Clone, Debug)]
pub struct LabeledMatrix {
    pub name: MatrixName,
    pub matrix: Gf2Matrix,
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
    pub row_kind: LabelKind,
    pub col_kind: LabelKind,
}

impl LabeledMatrix {
    pub fn rank2(&self) -> usize {
        rank2(&self.matrix)
    }
}

/// Position of each point of a fixed subset, for restricting vectors to it.
#[derive(Clone, Debug)]
pub struct SubsetIndex {
    pos: Vec<usize>,
    len: usize,
}

impl SubsetIndex {
    pub fn new(universe: usize, members: &[usize]) -> SubsetIndex {
        let mut pos = vec![usize::MAX; universe];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        SubsetIndex { pos, len: members.len() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.pos.get(x).copied().filter(|&p| p != usize::MAX)
    }

    /// Characteristic vector of the members among `xs`; repeats cancel in pairs.
    pub fn vector(&self, xs: impl IntoIterator<Item = usize>) -> BitVec {
        BitVec::from_indices(self.len, xs.into_iter().filter_map(|x| self.position(x)))
    }

    /// Integer multiplicities of the members among `xs`.
    pub fn counts(&self, xs: impl IntoIterator<Item = usize>) -> Vec<u32> {
        let mut c = vec![0; self.len];
        for x in xs {
            if let Some(p) = self.position(x) {
                c[p] += 1;
            }
        }
        c
    }
}

/// Reduce an integer count vector modulo 2.
pub fn counts_mod2(counts: &[u32]) -> BitVec {
    BitVec::from_indices(counts.len(), counts.iter().enumerate().filter(|(_, &c)| c % 2 == 1).map(|(i, _)| i))
}

/// Sub-incidence matrix of the given points against the given lines.
fn incidence_between(geom: &ConicGeometry, points: &[usize], lines: &[usize]) -> Gf2Matrix {
    let cols = SubsetIndex::new(geom.size(), lines);
    let mut m = Gf2Matrix::zeros(points.len(), lines.len());
    for (i, &p) in points.iter().enumerate() {
        for &l in geom.lines_through(p) {
            if let Some(j) = cols.position(l) {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// Full point-line incidence matrix, rows points, columns lines.
pub fn build_a(geom: &ConicGeometry) -> LabeledMatrix {
    let all: Vec<usize> = (0..geom.size()).collect();
    LabeledMatrix {
        name: MatrixName::A,
        matrix: incidence_between(geom, &all, &all),
        row_labels: all.clone(),
        col_labels: all,
        row_kind: LabelKind::Point,
        col_kind: LabelKind::Line,
    }
}

/// The block of `A` with rows of class `pc` and columns of class `lc`.
pub fn build_block(geom: &ConicGeometry, pc: PointClass, lc: LineClass) -> LabeledMatrix {
    let rows = geom.points_of_class(pc).to_vec();
    let cols = geom.lines_of_class(lc).to_vec();
    LabeledMatrix {
        name: MatrixName::block(pc, lc),
        matrix: incidence_between(geom, &rows, &cols),
        row_labels: rows,
        col_labels: cols,
        row_kind: LabelKind::Point,
        col_kind: LabelKind::Line,
    }
}

/// Rows external points, columns internal points `p`; the column of `p` is
/// the set of external points on the passant `p^⊥`.
pub fn build_b(geom: &ConicGeometry) -> LabeledMatrix {
    let rows = geom.external().to_vec();
    let cols = geom.internal().to_vec();
    let e = SubsetIndex::new(geom.size(), &rows);
    let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
    for (j, &p) in cols.iter().enumerate() {
        for &x in geom.points_on(geom.polar_of_point(p)) {
            if let Some(i) = e.position(x) {
                m.set(i, j, true);
            }
        }
    }
    LabeledMatrix {
        name: MatrixName::B,
        matrix: m,
        row_labels: rows,
        col_labels: cols,
        row_kind: LabelKind::Point,
        col_kind: LabelKind::Point,
    }
}

pub fn build_b0(geom: &ConicGeometry) -> LabeledMatrix {
    let b = build_b(geom);
    LabeledMatrix {
        name: MatrixName::B0,
        matrix: b.matrix.transpose(),
        row_labels: b.col_labels,
        col_labels: b.row_labels,
        row_kind: LabelKind::Point,
        col_kind: LabelKind::Point,
    }
}

fn build_neighbourhood_matrix(geom: &ConicGeometry, name: MatrixName, lc: LineClass) -> LabeledMatrix {
    let rows = geom.external().to_vec();
    let cols = geom.internal().to_vec();
    let e = SubsetIndex::new(geom.size(), &rows);
    let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
    for (j, &p) in cols.iter().enumerate() {
        for &l in geom.lines_through(p) {
            if geom.line_class(l) != lc {
                continue;
            }
            for &x in geom.points_on(l) {
                if let Some(i) = e.position(x) {
                    // A point on two chosen lines through p would be p itself.
                    m.set(i, j, true);
                }
            }
        }
    }
    LabeledMatrix {
        name,
        matrix: m,
        row_labels: rows,
        col_labels: cols,
        row_kind: LabelKind::Point,
        col_kind: LabelKind::Point,
    }
}

/// Column of internal `p` is the indicator of `N_{Pa,E}(p)`.
pub fn build_d(geom: &ConicGeometry) -> LabeledMatrix {
    build_neighbourhood_matrix(geom, MatrixName::D, LineClass::Passant)
}

/// Column of internal `p` is the indicator of `N_{Se,E}(p)`.
pub fn build_dprime(geom: &ConicGeometry) -> LabeledMatrix {
    build_neighbourhood_matrix(geom, MatrixName::Dprime, LineClass::Secant)
}

pub fn build_matrix(geom: &ConicGeometry, name: MatrixName) -> LabeledMatrix {
    match name {
        MatrixName::A => build_a(geom),
        MatrixName::B => build_b(geom),
        MatrixName::B0 => build_b0(geom),
        MatrixName::D => build_d(geom),
        MatrixName::Dprime => build_dprime(geom),
        block => {
            let (pc, lc) = block.block_classes().expect("remaining names are blocks");
            build_block(geom, pc, lc)
        }
    }
}

/// Tangent lines restricted to the external points, and their spans.
#[derive(Clone, Debug)]
pub struct TangentSpans {
    /// `χ_ℓ` on `E` for each tangent, in canonical tangent order.
    pub vectors: Vec<BitVec>,
    /// Span of the tangent vectors.
    pub m1: ColumnSpace,
    /// Span of the pairwise sums of tangent vectors.
    pub m2: ColumnSpace,
}

pub fn tangent_spans(geom: &ConicGeometry) -> TangentSpans {
    let e = SubsetIndex::new(geom.size(), geom.external());
    let vectors: Vec<BitVec> = geom.tangents().iter().map(|&l| e.vector(geom.points_on(l).iter().copied())).collect();
    let mut m1 = ColumnSpace::new(e.len());
    let mut m2 = ColumnSpace::new(e.len());
    for v in &vectors {
        m1.insert(v).expect("length |E|");
    }
    for v in &vectors[1..] {
        let mut s = v.clone();
        s.xor_assign(&vectors[0]);
        m2.insert(&s).expect("length |E|");
    }
    TangentSpans { vectors, m1, m2 }
}

/// Closed-form dimensions `(dim L, dim L0)` for the congruence class of `q`.
pub fn conjectured_dims(q: usize) -> (usize, usize) {
    let base = (q * q - 1) / 4;
    if q % 4 == 1 {
        (base - q, base)
    } else {
        (base + 1 - q, base + 1)
    }
}

/// Closed-form 2-rank of `B`.
pub fn expected_rank_b(q: usize) -> usize {
    if q % 4 == 1 {
        q + (q - 1) * (q - 1) / 4
    } else {
        1 + (q - 1) + (q + 1) * (q - 3) / 4
    }
}

/// Closed-form 2-rank of `D`.
pub fn expected_rank_d(q: usize) -> usize {
    if q % 4 == 1 {
        q
    } else {
        q - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub q: usize,
    #[serde(rename = "rank_B")]
    pub rank_b: usize,
    #[serde(rename = "dim_L")]
    pub dim_l: usize,
    #[serde(rename = "dim_L0")]
    pub dim_l0: usize,
    #[serde(rename = "rank_D")]
    pub rank_d: usize,
    #[serde(rename = "rank_Dprime")]
    pub rank_dprime: usize,
    pub congruence_class: usize,
    #[serde(rename = "conjecture_dim_L")]
    pub conjecture_dim_l: usize,
    #[serde(rename = "conjecture_dim_L0")]
    pub conjecture_dim_l0: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn dimension_report(geom: &ConicGeometry) -> DimensionReport {
    let q = geom.q();
    let b = build_b(geom);
    let (rank_b, rank_d, rank_dprime) = {
        let d = build_d(geom);
        let dp = build_dprime(geom);
        let ((rb, rd), rdp) = rayon::join(
            || rayon::join(|| rank2(&b.matrix), || rank2(&d.matrix)),
            || rank2(&dp.matrix),
        );
        (rb, rd, rdp)
    };
    let dim_l = b.matrix.cols() - rank_b;
    let dim_l0 = b.matrix.rows() - rank_b;
    debug_assert_eq!(dim_l, nullspace_dim(&b.matrix));
    let (cl, cl0) = conjectured_dims(q);
    DimensionReport {
        q,
        rank_b,
        dim_l,
        dim_l0,
        rank_d,
        rank_dprime,
        congruence_class: q % 4,
        conjecture_dim_l: cl,
        conjecture_dim_l0: cl0,
        matches: dim_l == cl && dim_l0 == cl0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::gf2mat::in_colspace;
    use crate::plane::build_geometry;

    fn geom(q: u64) -> ConicGeometry {
        build_geometry(&Field::with_order(q, None).unwrap())
    }

    #[test]
    fn names_round_trip() {
        for m in MatrixName::ALL {
            assert_eq!(m.as_str().parse::<MatrixName>().unwrap(), m);
            if let Some((pc, lc)) = m.block_classes() {
                assert_eq!(MatrixName::block(pc, lc), m);
            }
        }
        assert!("C".parse::<MatrixName>().is_err());
    }

    #[test]
    fn full_incidence() {
        let a3 = build_a(&geom(3));
        assert_eq!((a3.matrix.rows(), a3.matrix.cols()), (13, 13));
        assert!(a3.matrix.row_weights().iter().all(|&w| w == 4));
        assert!(a3.matrix.col_weights().iter().all(|&w| w == 4));
        assert_eq!(build_a(&geom(5)).rank2(), 30);
        assert_eq!(build_a(&geom(7)).rank2(), 56);
    }

    #[test]
    fn blocks() {
        let g = geom(5);
        let at = build_block(&g, PointClass::Absolute, LineClass::Tangent);
        assert_eq!((at.matrix.rows(), at.matrix.cols()), (6, 6));
        assert!(at.matrix.row_weights().iter().all(|&w| w == 1));
        let it = build_block(&g, PointClass::Internal, LineClass::Tangent);
        assert_eq!(it.matrix.count_ones(), 0);
        let et = build_block(&g, PointClass::External, LineClass::Tangent);
        assert_eq!((et.matrix.rows(), et.matrix.cols()), (15, 6));
        assert!(et.matrix.row_weights().iter().all(|&w| w == 2));
        assert_eq!(et.name, MatrixName::A31);
    }

    #[test]
    fn b_shapes_and_weights() {
        for q in [5usize, 7, 9] {
            let g = geom(q as u64);
            let b = build_b(&g);
            assert_eq!(b.matrix.rows(), q * (q + 1) / 2);
            assert_eq!(b.matrix.cols(), q * (q - 1) / 2);
            assert!(b.matrix.col_weights().iter().all(|&w| w == (q + 1) / 2));
            assert!(b.matrix.row_weights().iter().all(|&w| w == (q - 1) / 2));
            let b0 = build_b0(&g);
            assert_eq!(b.rank2(), b0.rank2());
        }
        let b5 = build_b(&geom(5));
        assert_eq!(nullspace_dim(&b5.matrix), 1);
        assert_eq!(nullspace_dim(&build_b0(&geom(5)).matrix), 6);
        assert_eq!(nullspace_dim(&build_b(&geom(7)).matrix), 6);
        assert_eq!(nullspace_dim(&build_b0(&geom(7)).matrix), 13);
    }

    #[test]
    fn d_weights_and_ranks() {
        for q in [5usize, 7] {
            let g = geom(q as u64);
            let d = build_d(&g);
            assert!(d.matrix.col_weights().iter().all(|&w| w == (q + 1) * (q + 1) / 4));
            let dp = build_dprime(&g);
            assert!(dp.matrix.col_weights().iter().all(|&w| w == (q * q - 1) / 4));
        }
        assert_eq!(build_d(&geom(5)).rank2(), 5);
        assert_eq!(build_d(&geom(7)).rank2(), 6);
    }

    #[test]
    fn tangent_span_dims() {
        for q in [5usize, 7, 9] {
            let g = geom(q as u64);
            let t = tangent_spans(&g);
            assert_eq!(t.m1.dim(), q);
            assert_eq!(t.m2.dim(), q - 1);
            let ones = BitVec::ones(g.external().len());
            assert!(!t.m1.contains(&ones).unwrap());
            assert!(!t.m2.contains(&ones).unwrap());
            let mut sum = BitVec::zeros(ones.len());
            for v in &t.vectors {
                sum.xor_assign(v);
            }
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn reports() {
        for (q, l, l0) in [(3, 0, 3), (5, 1, 6), (7, 6, 13), (9, 11, 20), (11, 20, 31), (13, 29, 42)] {
            let r = dimension_report(&geom(q));
            assert_eq!((r.dim_l, r.dim_l0), (l, l0), "q={q}");
            assert!(r.matches);
            assert_eq!(r.rank_b, expected_rank_b(q as usize));
            assert_eq!(r.rank_d, expected_rank_d(q as usize));
        }
        let json = serde_json::to_string(&dimension_report(&geom(5))).unwrap();
        assert_eq!(
            json,
            r#"{"q":5,"rank_B":9,"dim_L":1,"dim_L0":6,"rank_D":5,"rank_Dprime":5,"congruence_class":1,"conjecture_dim_L":1,"conjecture_dim_L0":6,"match":true}"#
        );
    }

    #[test]
    fn d_inside_b() {
        let g = geom(7);
        let b = build_b(&g);
        let d = build_d(&g);
        let cb = ColumnSpace::of_columns(&b.matrix);
        for c in d.matrix.columns() {
            assert!(cb.contains(&c).unwrap());
        }
        assert!(in_colspace(&b.matrix, &BitVec::ones(b.matrix.rows())).unwrap());
    }
}
