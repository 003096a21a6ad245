//! The projective plane PG(2,q), the conic `X1^2 = X0 X2` and its polarity.
//!
//! Points and lines are both stored as normalized triples (leftmost nonzero
//! coordinate equal to 1) in the canonical order
//! `(1,a,b)` with index `a*q+b`, then `(0,1,c)` with index `q^2+c`, then `(0,0,1)`.
//! Incidence lists are built once so that every matrix builder reads the same
//! structure.

use serde::Serialize;
use thiserror::Error;

use crate::gf::{Elem, Field, SquareClass};

pub type Triple = [Elem; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("point {0} lies on the conic")]
    PointOnConic(usize),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("lines {0} and {1} coincide")]
    SameLine(usize, usize),
    #[error("points {0} and {1} coincide")]
    SamePoint(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    Internal,
    Absolute,
    External,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineClass {
    Passant,
    Tangent,
    Secant,
}

impl PointClass {
    pub const ALL: [PointClass; 3] = [PointClass::Absolute, PointClass::Internal, PointClass::External];
}

impl LineClass {
    pub const ALL: [LineClass; 3] = [LineClass::Tangent, LineClass::Passant, LineClass::Secant];
}

/// A point together with its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub index: usize,
    pub coords: Triple,
}

/// A line together with its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine {
    pub index: usize,
    pub coords: Triple,
}

pub fn dot(f: &Field, a: &Triple, b: &Triple) -> Elem {
    let s = f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1]));
    f.add(s, f.mul(a[2], b[2]))
}

pub fn cross(f: &Field, a: &Triple, b: &Triple) -> Triple {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

/// Scale so the leftmost nonzero coordinate is 1.
pub fn normalize(f: &Field, v: &Triple) -> Option<Triple> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    let inv = f.inv(lead)?;
    Some([f.mul(v[0], inv), f.mul(v[1], inv), f.mul(v[2], inv)])
}

/// Canonical index of a nonzero triple (normalizing first).
pub fn triple_index(f: &Field, v: &Triple) -> Option<usize> {
    let n = normalize(f, v)?;
    let q = f.q() as usize;
    Some(if !n[0].is_zero() {
        n[1].index() * q + n[2].index()
    } else if !n[1].is_zero() {
        q * q + n[2].index()
    } else {
        q * q + q
    })
}

/// Normalized triple with the given canonical index.
pub fn triple_at(q: usize, index: usize) -> Triple {
    if index < q * q {
        [Elem(1), Elem((index / q) as u32), Elem((index % q) as u32)]
    } else if index < q * q + q {
        [Elem(0), Elem(1), Elem((index - q * q) as u32)]
    } else {
        [Elem(0), Elem(0), Elem(1)]
    }
}

pub fn classify_point(f: &Field, p: &Triple) -> PointClass {
    let disc = f.sub(f.square(p[1]), f.mul(p[0], p[2]));
    match f.square_class(disc) {
        SquareClass::NonSquare => PointClass::Internal,
        SquareClass::Zero => PointClass::Absolute,
        SquareClass::Square => PointClass::External,
    }
}

pub fn classify_line(f: &Field, l: &Triple) -> LineClass {
    let four = f.from_int(4);
    let disc = f.sub(f.square(l[1]), f.mul(four, f.mul(l[0], l[2])));
    match f.square_class(disc) {
        SquareClass::NonSquare => LineClass::Passant,
        SquareClass::Zero => LineClass::Tangent,
        SquareClass::Square => LineClass::Secant,
    }
}

/// Polar line of a point: `(x,y,z) -> [z,-2y,x]`, normalized.
pub fn polar_of_point_coords(f: &Field, p: &Triple) -> Triple {
    let m2 = f.from_int(-2);
    normalize(f, &[p[2], f.mul(m2, p[1]), p[0]]).expect("polar of a nonzero vector")
}

/// Pole of a line via the inverse Gram matrix: `[b0,b1,b2] -> (-2b2, b1, -2b0)`.
pub fn polar_of_line_coords(f: &Field, l: &Triple) -> Triple {
    let m2 = f.from_int(-2);
    normalize(f, &[f.mul(m2, l[2]), l[1], f.mul(m2, l[0])]).expect("pole of a nonzero vector")
}

/// The assembled plane: points, lines, conic, polarity and all class tables.
#[derive(Clone, Debug)]
pub struct ConicGeometry {
    field: Field,
    points: Vec<Triple>,
    lines: Vec<Triple>,
    point_class: Vec<PointClass>,
    line_class: Vec<LineClass>,
    polar_of_point: Vec<usize>,
    polar_of_line: Vec<usize>,
    points_on: Vec<Vec<usize>>,
    lines_through: Vec<Vec<usize>>,
    conic: Vec<usize>,
    internal: Vec<usize>,
    external: Vec<usize>,
    tangent: Vec<usize>,
    passant: Vec<usize>,
    secant: Vec<usize>,
}

/// Points of the line `l`, in canonical order.
fn enumerate_line(f: &Field, l: &Triple) -> Vec<usize> {
    let basis = [[Elem(1), Elem(0), Elem(0)], [Elem(0), Elem(1), Elem(0)], [Elem(0), Elem(0), Elem(1)]];
    let cands: Vec<Triple> = basis
        .iter()
        .map(|e| cross(f, l, e))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let p = cands[0];
    let q = *cands[1..]
        .iter()
        .find(|c| cross(f, &p, c).iter().any(|x| !x.is_zero()))
        .expect("a line has two distinct points");
    let mut out: Vec<usize> = f
        .elements()
        .map(|t| {
            let v = [f.add(p[0], f.mul(t, q[0])), f.add(p[1], f.mul(t, q[1])), f.add(p[2], f.mul(t, q[2]))];
            triple_index(f, &v).expect("P + tQ is nonzero")
        })
        .collect();
    out.push(triple_index(f, &q).unwrap());
    out.sort_unstable();
    out
}

impl ConicGeometry {
    pub fn build(field: &Field) -> ConicGeometry {
        let f = field;
        let q = f.q() as usize;
        let n = q * q + q + 1;
        let points: Vec<Triple> = (0..n).map(|i| triple_at(q, i)).collect();
        let lines = points.clone();
        let point_class: Vec<PointClass> = points.iter().map(|p| classify_point(f, p)).collect();
        let line_class: Vec<LineClass> = lines.iter().map(|l| classify_line(f, l)).collect();
        let polar_of_point: Vec<usize> = points
            .iter()
            .map(|p| triple_index(f, &polar_of_point_coords(f, p)).unwrap())
            .collect();
        let mut polar_of_line = vec![0; n];
        for (p, &l) in polar_of_point.iter().enumerate() {
            polar_of_line[l] = p;
        }
        let points_on: Vec<Vec<usize>> = lines.iter().map(|l| enumerate_line(f, l)).collect();
        let mut lines_through = vec![Vec::with_capacity(q + 1); n];
        for (l, pts) in points_on.iter().enumerate() {
            for &p in pts {
                lines_through[p].push(l);
            }
        }
        let pick_p = |c| (0..n).filter(|&i| point_class[i] == c).collect::<Vec<_>>();
        let pick_l = |c| (0..n).filter(|&i| line_class[i] == c).collect::<Vec<_>>();
        ConicGeometry {
            field: f.clone(),
            conic: pick_p(PointClass::Absolute),
            internal: pick_p(PointClass::Internal),
            external: pick_p(PointClass::External),
            tangent: pick_l(LineClass::Tangent),
            passant: pick_l(LineClass::Passant),
            secant: pick_l(LineClass::Secant),
            points,
            lines,
            point_class,
            line_class,
            polar_of_point,
            polar_of_line,
            points_on,
            lines_through,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.q() as usize
    }

    /// `q^2 + q + 1`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        ProjPoint { index: i, coords: self.points[i] }
    }

    pub fn line(&self, i: usize) -> ProjLine {
        ProjLine { index: i, coords: self.lines[i] }
    }

    pub fn point_coords(&self, i: usize) -> &Triple {
        &self.points[i]
    }

    pub fn line_coords(&self, i: usize) -> &Triple {
        &self.lines[i]
    }

    /// Index of the point with the given (not necessarily normalized) coordinates.
    pub fn point_index(&self, v: &Triple) -> Result<usize, PlaneError> {
        triple_index(&self.field, v).ok_or(PlaneError::ZeroVector)
    }

    pub fn line_index(&self, v: &Triple) -> Result<usize, PlaneError> {
        triple_index(&self.field, v).ok_or(PlaneError::ZeroVector)
    }

    pub fn point_class(&self, p: usize) -> PointClass {
        self.point_class[p]
    }

    pub fn line_class(&self, l: usize) -> LineClass {
        self.line_class[l]
    }

    pub fn point_classes(&self) -> &[PointClass] {
        &self.point_class
    }

    pub fn line_classes(&self) -> &[LineClass] {
        &self.line_class
    }

    /// Incidence by the bilinear form, independent of the stored lists.
    pub fn incident(&self, p: usize, l: usize) -> bool {
        dot(&self.field, &self.points[p], &self.lines[l]).is_zero()
    }

    /// `p^⊥`.
    pub fn polar_of_point(&self, p: usize) -> usize {
        self.polar_of_point[p]
    }

    /// `ℓ^⊥`.
    pub fn polar_of_line(&self, l: usize) -> usize {
        self.polar_of_line[l]
    }

    pub fn polarity(&self) -> &[usize] {
        &self.polar_of_point
    }

    pub fn points_on(&self, l: usize) -> &[usize] {
        &self.points_on[l]
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.lines_through[p]
    }

    pub fn conic(&self) -> &[usize] {
        &self.conic
    }

    pub fn internal(&self) -> &[usize] {
        &self.internal
    }

    pub fn external(&self) -> &[usize] {
        &self.external
    }

    pub fn tangents(&self) -> &[usize] {
        &self.tangent
    }

    pub fn passants(&self) -> &[usize] {
        &self.passant
    }

    pub fn secants(&self) -> &[usize] {
        &self.secant
    }

    pub fn points_of_class(&self, c: PointClass) -> &[usize] {
        match c {
            PointClass::Absolute => &self.conic,
            PointClass::Internal => &self.internal,
            PointClass::External => &self.external,
        }
    }

    pub fn lines_of_class(&self, c: LineClass) -> &[usize] {
        match c {
            LineClass::Tangent => &self.tangent,
            LineClass::Passant => &self.passant,
            LineClass::Secant => &self.secant,
        }
    }

    /// Points of class `c` on line `l`.
    pub fn points_on_of_class(&self, l: usize, c: PointClass) -> Vec<usize> {
        self.points_on[l].iter().copied().filter(|&p| self.point_class[p] == c).collect()
    }

    /// Lines of class `c` through point `p`.
    pub fn lines_through_of_class(&self, p: usize, c: LineClass) -> Vec<usize> {
        self.lines_through[p].iter().copied().filter(|&l| self.line_class[l] == c).collect()
    }

    /// `E_ℓ`.
    pub fn external_on(&self, l: usize) -> Vec<usize> {
        self.points_on_of_class(l, PointClass::External)
    }

    /// `I_ℓ`.
    pub fn internal_on(&self, l: usize) -> Vec<usize> {
        self.points_on_of_class(l, PointClass::Internal)
    }

    /// `Pa_p`.
    pub fn passants_through(&self, p: usize) -> Vec<usize> {
        self.lines_through_of_class(p, LineClass::Passant)
    }

    /// `Se_p`.
    pub fn secants_through(&self, p: usize) -> Vec<usize> {
        self.lines_through_of_class(p, LineClass::Secant)
    }

    /// `T_p`.
    pub fn tangents_through(&self, p: usize) -> Vec<usize> {
        self.lines_through_of_class(p, LineClass::Tangent)
    }

    fn off_conic(&self, p: usize) -> Result<(), PlaneError> {
        if self.point_class[p] == PointClass::Absolute {
            Err(PlaneError::PointOnConic(p))
        } else {
            Ok(())
        }
    }

    /// External points on the lines of class `c` through `p`, as a sorted set.
    fn external_via(&self, p: usize, c: LineClass) -> Result<Vec<usize>, PlaneError> {
        self.off_conic(p)?;
        let mut out: Vec<usize> = self
            .lines_through_of_class(p, c)
            .into_iter()
            .flat_map(|l| self.external_on(l))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `N_{Pa,E}(p)`: external points on passants through `p`.
    pub fn n_pa_e(&self, p: usize) -> Result<Vec<usize>, PlaneError> {
        self.external_via(p, LineClass::Passant)
    }

    /// `N_{Se,E}(p)`: external points on secants through `p`.
    pub fn n_se_e(&self, p: usize) -> Result<Vec<usize>, PlaneError> {
        self.external_via(p, LineClass::Secant)
    }

    /// The line through two distinct points.
    pub fn join(&self, a: usize, b: usize) -> Result<usize, PlaneError> {
        if a == b {
            return Err(PlaneError::SamePoint(a, b));
        }
        self.line_index(&cross(&self.field, &self.points[a], &self.points[b]))
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, l: usize, m: usize) -> Result<usize, PlaneError> {
        if l == m {
            return Err(PlaneError::SameLine(l, m));
        }
        self.point_index(&cross(&self.field, &self.lines[l], &self.lines[m]))
    }

    /// The tangent to the conic at a conic point.
    pub fn tangent_at(&self, p: usize) -> Option<usize> {
        (self.point_class[p] == PointClass::Absolute).then(|| self.polar_of_point[p])
    }

    /// Toggle one incidence in the stored lists. Fault injection for testing
    /// that the checks notice a damaged structure; never used by builders.
    #[doc(hidden)]
    pub fn corrupt_incidence(&mut self, p: usize, l: usize) {
        let pts = &mut self.points_on[l];
        match pts.binary_search(&p) {
            Ok(i) => {
                pts.remove(i);
            }
            Err(i) => pts.insert(i, p),
        }
        let ls = &mut self.lines_through[p];
        match ls.binary_search(&l) {
            Ok(i) => {
                ls.remove(i);
            }
            Err(i) => ls.insert(i, l),
        }
    }
}

/// Build PG(2,q) with the standard conic.
pub fn build_geometry(field: &Field) -> ConicGeometry {
    ConicGeometry::build(field)
}
