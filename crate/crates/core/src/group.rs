//! The conic-preserving collineation groups `H ≅ PSL(2,q)` and `G ≅ PGL(2,q)`
//! realized as 3x3 matrices through the symmetric-square map `τ`.
//!
//! Points are row vectors acted on from the right (`p -> p g`); lines are
//! column vectors mapped by `g^{-1}`. Both actions are right actions, so
//! `x^(gh) = (x^g)^h`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{Elem, Field, SquareClass};
use crate::plane::{normalize, triple_index, ConicGeometry, PointClass, Triple};

/// Default largest `q` for which full group tables are built.
pub const DEFAULT_GROUP_BOUND: u32 = 13;

pub type Mat3 = [[Elem; 3]; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("ad - bc must equal 1")]
    NotUnimodular,
    #[error("q = {q} exceeds the group bound {bound}")]
    BoundExceeded { q: u32, bound: u32 },
    #[error("matrix is not an element of the group")]
    NotInGroup,
    #[error("matrix is singular")]
    Singular,
}

pub fn mat_identity() -> Mat3 {
    let (o, z) = (Elem::ONE, Elem::ZERO);
    [[o, z, z], [z, o, z], [z, z, o]]
}

pub fn mat_mul(f: &Field, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[Elem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = Elem::ZERO;
            for k in 0..3 {
                s = f.add(s, f.mul(a[i][k], b[k][j]));
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn mat_det(f: &Field, m: &Mat3) -> Elem {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        f.sub(f.mul(m[r1][c1], m[r2][c2]), f.mul(m[r1][c2], m[r2][c1]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 1, 2));
    let t1 = f.mul(m[0][1], minor(1, 2, 0, 2));
    let t2 = f.mul(m[0][2], minor(1, 2, 0, 1));
    f.add(f.sub(t0, t1), t2)
}

/// Inverse via the adjugate.
pub fn mat_inv(f: &Field, m: &Mat3) -> Result<Mat3, GroupError> {
    let det_inv = f.inv(mat_det(f, m)).ok_or(GroupError::Singular)?;
    let mut out = [[Elem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // cofactor of (j, i)
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = f.sub(
                f.mul(m[rows[0]][cols[0]], m[rows[1]][cols[1]]),
                f.mul(m[rows[0]][cols[1]], m[rows[1]][cols[0]]),
            );
            let cof = if (i + j) % 2 == 0 { minor } else { f.neg(minor) };
            out[i][j] = f.mul(cof, det_inv);
        }
    }
    Ok(out)
}

/// Projective normal form: scaled so the first nonzero entry is 1.
pub fn mat_normalize(f: &Field, m: &Mat3) -> Mat3 {
    let lead = m.iter().flatten().copied().find(|x| !x.is_zero()).expect("nonzero matrix");
    let inv = f.inv(lead).unwrap();
    let mut out = *m;
    for x in out.iter_mut().flatten() {
        *x = f.mul(*x, inv);
    }
    out
}

pub fn mat_trace(f: &Field, m: &Mat3) -> Elem {
    f.add(f.add(m[0][0], m[1][1]), m[2][2])
}

/// `τ` on an arbitrary 2x2 matrix `[[a,b],[c,d]]`, without a determinant check.
pub fn tau_matrix(f: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Mat3 {
    let two = f.from_int(2);
    [
        [f.square(a), f.mul(a, b), f.square(b)],
        [f.mul(two, f.mul(a, c)), f.add(f.mul(a, d), f.mul(b, c)), f.mul(two, f.mul(b, d))],
        [f.square(c), f.mul(c, d), f.square(d)],
    ]
}

/// Closed-form inverse of `τ(a,b,c,d)` when `ad - bc = 1`, namely `τ(d,-b,-c,a)`.
pub fn tau_inverse_matrix(f: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Mat3 {
    let two = f.from_int(2);
    [
        [f.square(d), f.neg(f.mul(b, d)), f.square(b)],
        [f.neg(f.mul(two, f.mul(c, d))), f.add(f.mul(a, d), f.mul(b, c)), f.neg(f.mul(two, f.mul(a, b)))],
        [f.square(c), f.neg(f.mul(a, c)), f.square(a)],
    ]
}

/// An element of `H`: a `τ`-image together with one unimodular preimage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub mat: Mat3,
    pub source: [Elem; 4],
}

pub fn tau(f: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<GroupElement, GroupError> {
    if f.sub(f.mul(a, d), f.mul(b, c)) != Elem::ONE {
        return Err(GroupError::NotUnimodular);
    }
    Ok(GroupElement { mat: tau_matrix(f, a, b, c, d), source: [a, b, c, d] })
}

/// `p g` for a row vector `p`, normalized.
pub fn act_point_coords(f: &Field, m: &Mat3, p: &Triple) -> Triple {
    let mut v = [Elem::ZERO; 3];
    for (j, vj) in v.iter_mut().enumerate() {
        for i in 0..3 {
            *vj = f.add(*vj, f.mul(p[i], m[i][j]));
        }
    }
    normalize(f, &v).expect("invertible matrix maps nonzero vectors to nonzero vectors")
}

/// `g^{-1} l` for a column vector `l`, normalized; takes `g^{-1}` directly.
pub fn act_line_coords(f: &Field, inv: &Mat3, l: &Triple) -> Triple {
    let mut v = [Elem::ZERO; 3];
    for (i, vi) in v.iter_mut().enumerate() {
        for j in 0..3 {
            *vi = f.add(*vi, f.mul(inv[i][j], l[j]));
        }
    }
    normalize(f, &v).expect("invertible matrix maps nonzero vectors to nonzero vectors")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassKind {
    D,
    FPlus,
    FMinus,
    Zero,
    Theta(usize),
    Pi(usize),
}

/// A conjugacy class of `H`, with the common value of `T = tr + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConjClassLabel {
    pub kind: ClassKind,
    pub t_value: Elem,
}

impl fmt::Display for ConjClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClassKind::D => write!(f, "D"),
            ClassKind::FPlus => write!(f, "F+"),
            ClassKind::FMinus => write!(f, "F-"),
            ClassKind::Zero => write!(f, "[0]"),
            ClassKind::Theta(i) => write!(f, "[theta_{i}]"),
            ClassKind::Pi(k) => write!(f, "[pi_{k}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub label: ConjClassLabel,
    pub members: Vec<usize>,
}

/// `H` and `G` enumerated, with permutation actions on points and lines.
///
/// Elements `0..h_order()` form `H` (in enumeration order of unimodular
/// quadruples); the remaining ones are `d h` for the diagonal
/// `d = τ(diag(1, ξ^{-1}))` and `h` in `H`, in the same order.
pub struct GroupTable {
    field: Field,
    h_elements: Vec<GroupElement>,
    mats: Vec<Mat3>,
    index: HashMap<Mat3, usize>,
    inverse: Vec<usize>,
    point_perm: Vec<Vec<u32>>,
    line_perm: Vec<Vec<u32>>,
    class_of: Vec<usize>,
    classes: Vec<ClassInfo>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("q", &self.field.q())
            .field("h_order", &self.h_elements.len())
            .field("g_order", &self.mats.len())
            .finish()
    }
}

/// All `τ`-images of unimodular quadruples, deduplicated, in enumeration order.
pub fn enumerate_h(field: &Field, bound: u32) -> Result<Vec<GroupElement>, GroupError> {
    let f = field;
    if f.q() > bound {
        return Err(GroupError::BoundExceeded { q: f.q(), bound });
    }
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    let one = Elem::ONE;
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                let ds: Vec<Elem> = if !a.is_zero() {
                    vec![f.div(f.add(one, f.mul(b, c)), a).unwrap()]
                } else if f.mul(b, c) == f.neg(one) {
                    f.elements().collect()
                } else {
                    Vec::new()
                };
                for d in ds {
                    let g = tau(f, a, b, c, d).expect("solved for ad - bc = 1");
                    if seen.insert(g.mat, out.len()).is_none() {
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The diagonal coset representative `d(1, ξ^{-1}, ξ^{-2})`.
pub fn coset_representative(f: &Field) -> Mat3 {
    let xi_inv = f.inv(f.xi()).unwrap();
    tau_matrix(f, Elem::ONE, Elem::ZERO, Elem::ZERO, xi_inv)
}

/// Matrices of `G`: `H` followed by `d H`.
pub fn enumerate_g(field: &Field, bound: u32) -> Result<Vec<Mat3>, GroupError> {
    let h = enumerate_h(field, bound)?;
    let d = coset_representative(field);
    let mut out: Vec<Mat3> = h.iter().map(|g| g.mat).collect();
    out.extend(h.iter().map(|g| mat_mul(field, &d, &g.mat)));
    Ok(out)
}

impl GroupTable {
    pub fn build(geom: &ConicGeometry, bound: u32) -> Result<GroupTable, GroupError> {
        let f = geom.field().clone();
        let h_elements = enumerate_h(&f, bound)?;
        let d = coset_representative(&f);
        let mut mats: Vec<Mat3> = h_elements.iter().map(|g| g.mat).collect();
        mats.extend(h_elements.iter().map(|g| mat_mul(&f, &d, &g.mat)));
        let index: HashMap<Mat3, usize> = mats.iter().enumerate().map(|(i, m)| (mat_normalize(&f, m), i)).collect();
        let invs: Vec<Mat3> = mats.iter().map(|m| mat_inv(&f, m).expect("group elements are invertible")).collect();
        let n = geom.size();
        let (point_perm, line_perm): (Vec<Vec<u32>>, Vec<Vec<u32>>) = mats
            .par_iter()
            .zip(invs.par_iter())
            .map(|(m, inv)| {
                let pp = (0..n)
                    .map(|p| triple_index(&f, &act_point_coords(&f, m, geom.point_coords(p))).unwrap() as u32)
                    .collect();
                let lp = (0..n)
                    .map(|l| triple_index(&f, &act_line_coords(&f, inv, geom.line_coords(l))).unwrap() as u32)
                    .collect();
                (pp, lp)
            })
            .unzip();
        let inverse: Vec<usize> = invs
            .iter()
            .map(|m| *index.get(&mat_normalize(&f, m)).expect("group is closed under inverses"))
            .collect();
        let mut table = GroupTable {
            field: f,
            h_elements,
            mats,
            index,
            inverse,
            point_perm,
            line_perm,
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        table.label_classes();
        Ok(table)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn h_order(&self) -> usize {
        self.h_elements.len()
    }

    pub fn g_order(&self) -> usize {
        self.mats.len()
    }

    pub fn h_elements(&self) -> &[GroupElement] {
        &self.h_elements
    }

    pub fn mat(&self, g: usize) -> &Mat3 {
        &self.mats[g]
    }

    /// Index of the element represented by `m`, up to a scalar.
    pub fn index_of(&self, m: &Mat3) -> Option<usize> {
        self.index.get(&mat_normalize(&self.field, m)).copied()
    }

    pub fn identity(&self) -> usize {
        self.index[&mat_identity()]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// Product `g h` (apply `g` first).
    pub fn compose(&self, g: usize, h: usize) -> usize {
        let m = mat_mul(&self.field, &self.mats[g], &self.mats[h]);
        self.index_of(&m).expect("group is closed under products")
    }

    /// `g^{-1} h g`.
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.compose(self.compose(self.inverse[g], h), g)
    }

    pub fn act_point(&self, g: usize, p: usize) -> usize {
        self.point_perm[g][p] as usize
    }

    pub fn act_line(&self, g: usize, l: usize) -> usize {
        self.line_perm[g][l] as usize
    }

    pub fn point_perm(&self, g: usize) -> &[u32] {
        &self.point_perm[g]
    }

    pub fn line_perm(&self, g: usize) -> &[u32] {
        &self.line_perm[g]
    }

    /// `T = tr + 1`.
    pub fn t_value(&self, g: usize) -> Elem {
        self.field.add(mat_trace(&self.field, &self.mats[g]), Elem::ONE)
    }

    fn label_classes(&mut self) {
        let f = self.field.clone();
        let h = self.h_order();
        let id = self.identity();
        let four = f.from_int(4);
        let fplus_rep = self.index_of(&tau_matrix(&f, Elem::ONE, Elem::ONE, Elem::ZERO, Elem::ONE)).unwrap();
        let fplus: std::collections::HashSet<usize> = (0..h).map(|g| self.conjugate(fplus_rep, g)).collect();

        let mut thetas = Vec::new();
        let mut pis = Vec::new();
        for t in f.units() {
            if t == four || f.square_class(t) != SquareClass::Square {
                continue;
            }
            match f.square_class(f.sub(t, four)) {
                SquareClass::Square => thetas.push(t),
                SquareClass::NonSquare => pis.push(t),
                SquareClass::Zero => {}
            }
        }
        let mut labels = vec![ConjClassLabel { kind: ClassKind::D, t_value: four }];
        labels.push(ConjClassLabel { kind: ClassKind::FPlus, t_value: four });
        labels.push(ConjClassLabel { kind: ClassKind::FMinus, t_value: four });
        labels.push(ConjClassLabel { kind: ClassKind::Zero, t_value: Elem::ZERO });
        labels.extend(thetas.iter().enumerate().map(|(i, &t)| ConjClassLabel { kind: ClassKind::Theta(i + 1), t_value: t }));
        labels.extend(pis.iter().enumerate().map(|(k, &t)| ConjClassLabel { kind: ClassKind::Pi(k + 1), t_value: t }));

        let mut class_of = vec![usize::MAX; h];
        for (g, slot) in class_of.iter_mut().enumerate() {
            let t = self.t_value(g);
            let kind = if g == id {
                ClassKind::D
            } else if t == four {
                if fplus.contains(&g) {
                    ClassKind::FPlus
                } else {
                    ClassKind::FMinus
                }
            } else if t.is_zero() {
                ClassKind::Zero
            } else if let Some(i) = thetas.iter().position(|&x| x == t) {
                ClassKind::Theta(i + 1)
            } else if let Some(k) = pis.iter().position(|&x| x == t) {
                ClassKind::Pi(k + 1)
            } else {
                // T is always a square; leave unlabeled otherwise so the
                // audit reports it.
                continue;
            };
            *slot = labels.iter().position(|l| l.kind == kind).unwrap();
        }
        let mut classes: Vec<ClassInfo> = labels.into_iter().map(|label| ClassInfo { label, members: Vec::new() }).collect();
        for (g, &c) in class_of.iter().enumerate() {
            if c != usize::MAX {
                classes[c].members.push(g);
            }
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    /// Classes in the order D, F+, F-, [0], thetas, pis.
    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    /// Position in [`Self::classes`] of an element of `H`, if it was labeled.
    pub fn class_index(&self, g: usize) -> Option<usize> {
        self.class_of.get(g).copied().filter(|&c| c != usize::MAX)
    }

    pub fn classify_element(&self, g: usize) -> Option<ConjClassLabel> {
        self.class_index(g).map(|c| self.classes[c].label)
    }

    /// Conjugacy classes of `H` found by brute-force conjugation, each sorted,
    /// ordered by smallest member.
    pub fn conjugacy_classes_brute(&self) -> Vec<Vec<usize>> {
        let h = self.h_order();
        let mut seen = vec![false; h];
        let mut out = Vec::new();
        for x in 0..h {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..h).into_par_iter().map(|g| self.conjugate(x, g)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// `{h in H : p^h = p}`.
    pub fn stabilizer(&self, p: usize) -> Vec<usize> {
        (0..self.h_order()).filter(|&g| self.act_point(g, p) == p).collect()
    }

    /// `{g in G : p^g = p}`.
    pub fn stabilizer_g(&self, p: usize) -> Vec<usize> {
        (0..self.g_order()).filter(|&g| self.act_point(g, p) == p).collect()
    }

    pub fn point_orbit(&self, elements: &[usize], p: usize) -> Vec<usize> {
        let mut o: Vec<usize> = elements.iter().map(|&g| self.act_point(g, p)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn line_orbit(&self, elements: &[usize], l: usize) -> Vec<usize> {
        let mut o: Vec<usize> = elements.iter().map(|&g| self.act_line(g, l)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// `H_{p,q}`: elements of `H` carrying `p^⊥` to a line through `q`.
    pub fn hpq(&self, geom: &ConicGeometry, p: usize, q: usize) -> Vec<usize> {
        let polar = geom.polar_of_point(p);
        (0..self.h_order())
            .filter(|&h| geom.points_on(self.act_line(h, polar)).binary_search(&q).is_ok())
            .collect()
    }

    /// `|H_{p,q} ∩ C|` for every class `C`, in class order.
    pub fn hpq_class_counts(&self, geom: &ConicGeometry, p: usize, q: usize) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for h in self.hpq(geom, p, q) {
            if let Some(c) = self.class_index(h) {
                counts[c] += 1;
            }
        }
        counts
    }

    /// For internal `p`: the class counts of `H_{p,x}` for every external `x`
    /// at once, indexed by position in `geom.external()`.
    pub fn hpq_counts_all(&self, geom: &ConicGeometry, p: usize) -> Vec<Vec<usize>> {
        let e = crate::incidence::SubsetIndex::new(geom.size(), geom.external());
        let mut counts = vec![vec![0; self.classes.len()]; e.len()];
        let polar = geom.polar_of_point(p);
        for h in 0..self.h_order() {
            let Some(c) = self.class_index(h) else { continue };
            for &x in geom.points_on(self.act_line(h, polar)) {
                if let Some(i) = e.position(x) {
                    counts[i][c] += 1;
                }
            }
        }
        counts
    }

    /// Parity of `|H_{p,q} ∩ C|` per class.
    pub fn hpq_parity_table(&self, geom: &ConicGeometry, p: usize, q: usize) -> Result<Vec<(ConjClassLabel, bool)>, GroupError> {
        if geom.point_class(p) != PointClass::Internal || geom.point_class(q) != PointClass::External {
            return Err(GroupError::NotInGroup);
        }
        Ok(self
            .hpq_class_counts(geom, p, q)
            .into_iter()
            .zip(&self.classes)
            .map(|(n, c)| (c.label, n % 2 == 1))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::build_geometry;

    fn table(q: u64) -> (ConicGeometry, GroupTable) {
        let g = build_geometry(&Field::with_order(q, None).unwrap());
        let t = GroupTable::build(&g, DEFAULT_GROUP_BOUND).unwrap();
        (g, t)
    }

    #[test]
    fn tau_basics() {
        let f = Field::with_order(5, None).unwrap();
        let (o, z) = (Elem::ONE, Elem::ZERO);
        assert_eq!(tau(&f, o, z, z, o).unwrap().mat, mat_identity());
        assert_eq!(tau(&f, o, o, o, o), Err(GroupError::NotUnimodular));
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        if let Ok(g) = tau(&f, a, b, c, d) {
                            let inv = tau_inverse_matrix(&f, a, b, c, d);
                            assert_eq!(mat_mul(&f, &g.mat, &inv), mat_identity());
                            let neg = tau(&f, f.neg(a), f.neg(b), f.neg(c), f.neg(d)).unwrap();
                            assert_eq!(neg.mat, g.mat);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tau_is_homomorphism() {
        let f = Field::with_order(3, None).unwrap();
        let h = enumerate_h(&f, 13).unwrap();
        for x in &h {
            for y in &h {
                let [a, b, c, d] = x.source;
                let [a2, b2, c2, d2] = y.source;
                let prod = [
                    f.add(f.mul(a, a2), f.mul(b, c2)),
                    f.add(f.mul(a, b2), f.mul(b, d2)),
                    f.add(f.mul(c, a2), f.mul(d, c2)),
                    f.add(f.mul(c, b2), f.mul(d, d2)),
                ];
                let t = tau(&f, prod[0], prod[1], prod[2], prod[3]).unwrap();
                assert_eq!(mat_mul(&f, &x.mat, &y.mat), t.mat);
            }
        }
    }

    #[test]
    fn group_orders() {
        for (q, h) in [(3u64, 12usize), (5, 60), (7, 168), (9, 360)] {
            let f = Field::with_order(q, None).unwrap();
            assert_eq!(enumerate_h(&f, 13).unwrap().len(), h);
            let g = enumerate_g(&f, 13).unwrap();
            let distinct: std::collections::HashSet<_> = g.iter().collect();
            assert_eq!(distinct.len(), 2 * h);
        }
        let f = Field::with_order(17, None).unwrap();
        assert_eq!(enumerate_h(&f, 13).unwrap_err(), GroupError::BoundExceeded { q: 17, bound: 13 });
    }

    #[test]
    fn actions_preserve_incidence() {
        let (g, t) = table(3);
        let id = t.identity();
        for p in 0..g.size() {
            assert_eq!(t.act_point(id, p), p);
        }
        for x in 0..t.g_order() {
            for p in 0..g.size() {
                for l in 0..g.size() {
                    assert_eq!(g.incident(p, l), g.incident(t.act_point(x, p), t.act_line(x, l)));
                }
            }
        }
    }

    #[test]
    fn class_sizes_q5() {
        let (_, t) = table(5);
        let sizes: Vec<(String, usize)> = t.classes().iter().map(|c| (c.label.to_string(), c.members.len())).collect();
        assert_eq!(
            sizes,
            vec![
                ("D".into(), 1),
                ("F+".into(), 12),
                ("F-".into(), 12),
                ("[0]".into(), 15),
                ("[pi_1]".into(), 20)
            ]
        );
        let mut brute: Vec<usize> = t.conjugacy_classes_brute().iter().map(|c| c.len()).collect();
        brute.sort_unstable();
        assert_eq!(brute, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn class_counts_q13() {
        let (_, t) = table(13);
        let thetas = t.classes().iter().filter(|c| matches!(c.label.kind, ClassKind::Theta(_))).count();
        let pis = t.classes().iter().filter(|c| matches!(c.label.kind, ClassKind::Pi(_))).count();
        assert_eq!((thetas, pis), (2, 3));
    }

    #[test]
    fn stabilizers_of_internal_points() {
        let (g, t) = table(5);
        let p = g.internal()[0];
        let k = t.stabilizer(p);
        assert_eq!(k.len(), 6);
        let mut counts: HashMap<String, usize> = HashMap::new();
        for &x in &k {
            *counts.entry(t.classify_element(x).unwrap().to_string()).or_default() += 1;
        }
        assert_eq!(counts["D"], 1);
        assert_eq!(counts["[pi_1]"], 2);
        assert_eq!(counts["[0]"], 3);
        assert_eq!(t.point_orbit(&(0..t.h_order()).collect::<Vec<_>>(), p), g.internal());
    }

    #[test]
    fn zero_class_in_stabilizer_q7() {
        // Exhaustive count: (q+3)/2 involutions fix an internal point when q ≡ 3 mod 4.
        let (g, t) = table(7);
        for &p in g.internal() {
            let zero = t.stabilizer(p).into_iter().filter(|&x| t.classify_element(x).unwrap().kind == ClassKind::Zero).count();
            assert_eq!(zero, 5);
        }
    }

    #[test]
    fn inverses_and_conjugation() {
        let (_, t) = table(5);
        let id = t.identity();
        for g in 0..t.g_order() {
            assert_eq!(t.compose(g, t.inverse(g)), id);
        }
        for h in 0..t.h_order() {
            for g in (0..t.g_order()).step_by(7) {
                let c = t.conjugate(h, g);
                assert!(c < t.h_order());
                assert_eq!(t.t_value(c), t.t_value(h));
            }
        }
    }
}
