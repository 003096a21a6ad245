//! The lemma audit: every counting, parity and rank statement about the conic
//! codes, evaluated exhaustively for one `q` and reported as verdicts.
//!
//! Checks quantify over all applicable points and lines; the group is used
//! only by the checks that are statements about the group. A failed check is
//! reported, never raised.

pub mod witness;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{square_shift_counts, Field, FieldError, ShiftCounts};
use crate::gf2mat::{BitVec, ColumnSpace};
use crate::group::{
    mat_identity, mat_mul, tau, tau_inverse_matrix, tau_matrix, ClassKind, GroupError, GroupTable,
};
use crate::incidence::{
    build_a, build_b, build_d, build_dprime, conjectured_dims, counts_mod2, dimension_report, tangent_spans,
    LabeledMatrix, SubsetIndex, TangentSpans,
};
use crate::plane::{build_geometry, ConicGeometry, LineClass, PointClass};
use witness::{canonical_tangent, passant_count, tangent_selection, witness_m, witness_mprime};

/// Largest `q` for which the tangent-meeting lemma is checked (its cost grows as `q^5`).
pub const BASIC_LEMMA_MAX_Q: usize = 27;

/// Up to this `q` the tangent-sum congruence is checked for every tangent
/// choice; above it only for the canonical one.
pub const ALL_TANGENT_CHOICES_MAX_Q: usize = 27;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub lemma_id: String,
    pub q: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Depth {
    #[default]
    Geometry,
    Group,
}

impl FromStr for Depth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "geometry" => Ok(Depth::Geometry),
            "group" | "+group" => Ok(Depth::Group),
            other => Err(format!("unknown depth {other:?}; expected geometry or group")),
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Geometry => "geometry",
            Depth::Group => "group",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

/// Shared, precomputed data for the geometry checks.
struct Context<'a> {
    geom: &'a ConicGeometry,
    q: usize,
    e_index: SubsetIndex,
    i_index: SubsetIndex,
    b: LabeledMatrix,
    d: LabeledMatrix,
    dprime: LabeledMatrix,
    /// Supports (positions in `E`) of the columns of `D` and `D'`.
    d_cols: Vec<Vec<usize>>,
    dprime_cols: Vec<Vec<usize>>,
    spans: TangentSpans,
}

impl<'a> Context<'a> {
    fn new(geom: &'a ConicGeometry) -> Context<'a> {
        let b = build_b(geom);
        let d = build_d(geom);
        let dprime = build_dprime(geom);
        let supports = |m: &LabeledMatrix| {
            let t = m.matrix.transpose();
            (0..t.rows()).map(|j| t.row_support(j)).collect::<Vec<_>>()
        };
        let d_cols = supports(&d);
        let dprime_cols = supports(&dprime);
        Context {
            q: geom.q(),
            e_index: SubsetIndex::new(geom.size(), geom.external()),
            i_index: SubsetIndex::new(geom.size(), geom.internal()),
            spans: tangent_spans(geom),
            geom,
            b,
            d,
            dprime,
            d_cols,
            dprime_cols,
        }
    }

    fn q1(&self) -> bool {
        self.q % 4 == 1
    }

    /// Add the indicator of `N_{Pa,E}(m)` (or `N_{Se,E}(m)`) into `acc`.
    fn add_neighbourhood(&self, acc: &mut [u32], m: usize, secant: bool) {
        let j = self.i_index.position(m).expect("internal point");
        let cols = if secant { &self.dprime_cols } else { &self.d_cols };
        for &i in &cols[j] {
            acc[i] += 1;
        }
    }

    /// Integer indicator on `E` of the points of line `l`.
    fn line_counts(&self, acc: &mut [u32], l: usize) {
        for &x in self.geom.points_on(l) {
            if let Some(i) = self.e_index.position(x) {
                acc[i] += 1;
            }
        }
    }
}

type GeometryCheck = fn(&Context) -> Outcome;

fn geometry_checks(q: usize) -> Vec<(&'static str, GeometryCheck)> {
    let mut v: Vec<(&'static str, GeometryCheck)> = vec![
        ("Eq_number", eq_number),
        ("Lemma_bijection", lemma_bijection),
        ("Polarity_symmetry", polarity_symmetry),
        ("Table1", table1),
        ("Table2", table2),
        ("Lemma_cs", lemma_cs),
        ("Lemma_meet", lemma_meet),
        ("Lemma_bsize", lemma_bsize),
    ];
    if q <= BASIC_LEMMA_MAX_Q {
        v.push(("Lemma_basic", lemma_basic));
    }
    v.push(("Rank_A", rank_a));
    v.push(("Cor_sksum", cor_sksum));
    if q % 4 == 1 {
        v.push(("Lemma_set1", lemma_set1));
        v.push(("Cor_tsum1", cor_tsum1));
    }
    v.push(("Lemma_set22", lemma_set22));
    v.push(("Cor_tsum2", cor_tsum2));
    v.push(("Lemma_u3", lemma_u3));
    v.push(("Lemma_u2", lemma_u2));
    v.push(("Cor_dim", cor_dim));
    if q % 4 == 3 {
        v.push(("Lemma_deofD", lemma_deofd));
    }
    v.push(("Thm_main_ranks", thm_main_ranks));
    v.push(("Conjecture_dims", conjecture_dims));
    v
}

fn verdict(id: &str, q: usize, outcome: Outcome) -> LemmaVerdict {
    let (passed, detail) = match outcome {
        Ok(s) => (true, s),
        Err(s) if s.is_empty() => (false, "check failed".to_string()),
        Err(s) => (false, s),
    };
    LemmaVerdict { lemma_id: id.to_string(), q, passed, detail }
}

/// Build the field and plane for `q` and run every applicable check.
pub fn run_suite(q: u64, modulus: Option<&[u32]>, depth: Depth, group_bound: u32) -> Result<Vec<LemmaVerdict>, VerifyError> {
    let field = Field::with_order(q, modulus)?;
    if depth == Depth::Group && field.q() > group_bound {
        return Err(GroupError::BoundExceeded { q: field.q(), bound: group_bound }.into());
    }
    let geom = build_geometry(&field);
    run_suite_on(&geom, depth, group_bound)
}

/// Run the checks on an already built geometry.
pub fn run_suite_on(geom: &ConicGeometry, depth: Depth, group_bound: u32) -> Result<Vec<LemmaVerdict>, VerifyError> {
    let q = geom.q();
    let table = match depth {
        Depth::Group => Some(GroupTable::build(geom, group_bound)?),
        Depth::Geometry => None,
    };
    let ctx = Context::new(geom);
    let mut out: Vec<LemmaVerdict> = geometry_checks(q)
        .par_iter()
        .map(|(id, check)| verdict(id, q, check(&ctx)))
        .collect();
    if let Some(table) = &table {
        out.extend(group_verdicts(&ctx, table));
    }
    Ok(out)
}

/// Only the checks that are statements about the group, for a prebuilt table.
pub fn run_group_checks(geom: &ConicGeometry, table: &GroupTable) -> Vec<LemmaVerdict> {
    group_verdicts(&Context::new(geom), table)
}

fn group_verdicts(ctx: &Context, table: &GroupTable) -> Vec<LemmaVerdict> {
    let g = GroupContext { ctx, table };
    group_checks(ctx.q)
        .par_iter()
        .map(|(id, check)| verdict(id, ctx.q, check(&g)))
        .collect()
}

fn eq_number(c: &Context) -> Outcome {
    let (g, q) = (c.geom, c.q);
    check!(g.size() == q * q + q + 1, "{} points", g.size());
    let sizes = [
        ("O", g.conic().len(), q + 1),
        ("T", g.tangents().len(), q + 1),
        ("I", g.internal().len(), q * (q - 1) / 2),
        ("Pa", g.passants().len(), q * (q - 1) / 2),
        ("E", g.external().len(), q * (q + 1) / 2),
        ("Se", g.secants().len(), q * (q + 1) / 2),
    ];
    for (name, got, want) in sizes {
        check!(got == want, "|{name}| = {got}, expected {want}");
    }
    // the stored conic is exactly {(1,t,t^2)} ∪ {(0,0,1)}
    let f = g.field();
    let mut conic: Vec<usize> = f.elements().map(|t| g.point_index(&[f.one(), t, f.square(t)]).unwrap()).collect();
    conic.push(g.size() - 1);
    conic.sort_unstable();
    check!(conic == g.conic(), "conic points differ from the parametrization");
    Ok(format!("|O|=|T|={}, |I|=|Pa|={}, |E|=|Se|={}", q + 1, q * (q - 1) / 2, q * (q + 1) / 2))
}

fn lemma_bijection(c: &Context) -> Outcome {
    let g = c.geom;
    let conic_hits: Vec<usize> = (0..g.size())
        .map(|l| g.points_on(l).iter().filter(|&&p| g.point_class(p) == PointClass::Absolute).count())
        .collect();
    for l in 0..g.size() {
        let by_meeting = match conic_hits[l] {
            0 => LineClass::Passant,
            1 => LineClass::Tangent,
            2 => LineClass::Secant,
            n => return Err(format!("line {l} meets the conic in {n} points")),
        };
        check!(by_meeting == g.line_class(l), "line {l}: discriminant says {:?}, meets conic as {by_meeting:?}", g.line_class(l));
    }
    for p in 0..g.size() {
        let tangents = g.lines_through(p).iter().filter(|&&l| conic_hits[l] == 1).count();
        let by_tangents = match tangents {
            0 => PointClass::Internal,
            1 => PointClass::Absolute,
            2 => PointClass::External,
            n => return Err(format!("point {p} lies on {n} tangents")),
        };
        check!(by_tangents == g.point_class(p), "point {p}: discriminant says {:?}, tangents say {by_tangents:?}", g.point_class(p));
        let l = g.polar_of_point(p);
        check!(g.polar_of_line(l) == p, "polarity is not an involution at point {p}");
        let want = match g.point_class(p) {
            PointClass::Internal => LineClass::Passant,
            PointClass::Absolute => LineClass::Tangent,
            PointClass::External => LineClass::Secant,
        };
        check!(g.line_class(l) == want, "polar of {:?} point {p} is {:?}", g.point_class(p), g.line_class(l));
    }
    Ok("σ: I→Pa, O→T, E→Se bijective; classes agree with conic meetings".into())
}

fn polarity_symmetry(c: &Context) -> Outcome {
    let g = c.geom;
    for p in 0..g.size() {
        for &x in g.points_on(g.polar_of_point(p)) {
            check!(
                g.points_on(g.polar_of_point(x)).binary_search(&p).is_ok(),
                "point {x} is on the polar of {p} but not conversely"
            );
        }
    }
    Ok(format!("checked all {} polar lines", g.size()))
}

fn table1(c: &Context) -> Outcome {
    let (g, q) = (c.geom, c.q);
    for l in 0..g.size() {
        let count = |pc| g.points_on(l).iter().filter(|&&p| g.point_class(p) == pc).count();
        let got = (count(PointClass::Absolute), count(PointClass::External), count(PointClass::Internal));
        let want = match g.line_class(l) {
            LineClass::Tangent => (1, q, 0),
            LineClass::Secant => (2, (q - 1) / 2, (q - 1) / 2),
            LineClass::Passant => (0, (q + 1) / 2, (q + 1) / 2),
        };
        check!(got == want, "{:?} line {l}: (abs, ext, int) = {got:?}, expected {want:?}", g.line_class(l));
    }
    Ok("points per line match for all lines".into())
}

fn table2(c: &Context) -> Outcome {
    let (g, q) = (c.geom, c.q);
    for p in 0..g.size() {
        let count = |lc| g.lines_through(p).iter().filter(|&&l| g.line_class(l) == lc).count();
        let got = (count(LineClass::Tangent), count(LineClass::Secant), count(LineClass::Passant));
        let want = match g.point_class(p) {
            PointClass::Absolute => (1, q, 0),
            PointClass::External => (2, (q - 1) / 2, (q - 1) / 2),
            PointClass::Internal => (0, (q + 1) / 2, (q + 1) / 2),
        };
        check!(got == want, "{:?} point {p}: (tan, sec, pas) = {got:?}, expected {want:?}", g.point_class(p));
    }
    Ok("lines per point match for all points".into())
}

fn lemma_cs(c: &Context) -> Outcome {
    let got = square_shift_counts(c.geom.field());
    let want = ShiftCounts::expected(c.q as u32);
    check!(got == want, "counts {:?}, expected {:?}", got.as_tuple(), want.as_tuple());
    Ok(format!("{:?}", got.as_tuple()))
}

/// Common points of two lines according to the incidence lists.
fn common_points(g: &ConicGeometry, l: usize, m: usize) -> Vec<usize> {
    let b = g.points_on(m);
    g.points_on(l).iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn lemma_meet(c: &Context) -> Outcome {
    let g = c.geom;
    let q1 = c.q1();
    let mut cases = 0;
    for p in 0..g.size() {
        let pc = g.point_class(p);
        if pc == PointClass::Absolute {
            continue;
        }
        let polar = g.polar_of_point(p);
        for &l in g.lines_through(p) {
            let lc = g.line_class(l);
            if lc == LineClass::Tangent {
                continue;
            }
            let meet = common_points(g, polar, l);
            check!(meet.len() == 1, "polar of {p} and line {l} share {} points", meet.len());
            let want = match (pc, lc, q1) {
                (PointClass::Internal, LineClass::Passant, true) => PointClass::External,
                (PointClass::Internal, LineClass::Passant, false) => PointClass::Internal,
                (PointClass::Internal, LineClass::Secant, true) => PointClass::Internal,
                (PointClass::Internal, LineClass::Secant, false) => PointClass::External,
                (PointClass::External, LineClass::Passant, true) => PointClass::Internal,
                (PointClass::External, LineClass::Passant, false) => PointClass::External,
                (PointClass::External, LineClass::Secant, true) => PointClass::External,
                _ => PointClass::Internal,
            };
            let got = g.point_class(meet[0]);
            check!(got == want, "{pc:?} point {p}, {lc:?} line {l}: meet is {got:?}, expected {want:?}");
            cases += 1;
        }
    }
    Ok(format!("{cases} incident pairs"))
}

fn lemma_bsize(c: &Context) -> Outcome {
    let (g, q) = (c.geom, c.q);
    let half = (q + 1) / 2;
    for &p in g.internal() {
        let polar = g.polar_of_point(p);
        let sizes = [
            ("E on polar", g.external_on(polar).len(), half),
            ("Se_p", g.secants_through(p).len(), half),
            ("I on polar", g.internal_on(polar).len(), half),
            ("Pa_p", g.passants_through(p).len(), half),
            ("N_Pa,E", g.n_pa_e(p).map_err(|e| e.to_string())?.len(), (q + 1) * (q + 1) / 4),
            ("N_Se,E", g.n_se_e(p).map_err(|e| e.to_string())?.len(), (q * q - 1) / 4),
        ];
        for (name, got, want) in sizes {
            check!(got == want, "internal point {p}: |{name}| = {got}, expected {want}");
        }
    }
    Ok(format!("|N_Pa,E| = {}, |N_Se,E| = {} for all internal points", (q + 1) * (q + 1) / 4, (q * q - 1) / 4))
}

fn lemma_basic(c: &Context) -> Outcome {
    let g = c.geom;
    let mut cases = 0usize;
    for &p in g.internal() {
        let through_p = |x: usize| g.line_class(g.join(p, x).expect("p is internal, x external"));
        for x0 in g.external_on(g.polar_of_point(p)) {
            for star in g.tangents_through(x0) {
                let ext = g.external_on(star);
                for (i, &p1) in ext.iter().enumerate() {
                    let l1 = other_tangent(g, p1, star)?;
                    for &p2 in &ext[i + 1..] {
                        let l2 = other_tangent(g, p2, star)?;
                        let w = g.meet(l1, l2).map_err(|e| e.to_string())?;
                        let lhs = g.point_class(w) == PointClass::External && through_p(w) == LineClass::Secant;
                        let rhs = through_p(p1) == through_p(p2);
                        check!(lhs == rhs, "p={p}, tangent {star}, points {p1},{p2}: meet {w} gives {lhs}, line classes give {rhs}");
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} configurations"))
}

fn other_tangent(g: &ConicGeometry, x: usize, star: usize) -> Result<usize, String> {
    g.tangents_through(x)
        .into_iter()
        .find(|&t| t != star)
        .ok_or_else(|| format!("external point {x} has no second tangent"))
}

fn rank_a(c: &Context) -> Outcome {
    let r = build_a(c.geom).rank2();
    let want = c.q * c.q + c.q;
    check!(r == want, "rank2(A) = {r}, expected {want}");
    Ok(format!("rank2(A) = {r}"))
}

fn cor_sksum(c: &Context) -> Outcome {
    let g = c.geom;
    let all_choices = c.q <= ALL_TANGENT_CHOICES_MAX_Q;
    let n = c.e_index.len();
    let results: Vec<Result<usize, String>> = g
        .internal()
        .par_iter()
        .map(|&p| {
            let mut target = vec![0u32; n];
            for l in g.passants_through(p) {
                c.line_counts(&mut target, l);
            }
            let target = counts_mod2(&target);
            let choices: Vec<usize> = if all_choices {
                let polar = g.polar_of_point(p);
                g.tangents()
                    .iter()
                    .copied()
                    .filter(|&t| common_points(g, t, polar).iter().any(|&x| g.point_class(x) == PointClass::External))
                    .collect()
            } else {
                canonical_tangent(g, p).into_iter().collect()
            };
            check!(!choices.is_empty(), "internal point {p}: no admissible tangent");
            for &t in &choices {
                let sel = tangent_selection(g, p, t).map_err(|e| e.to_string())?;
                check!(sel.len() == (c.q + 1) / 2, "internal point {p}, tangent {t}: {} selected tangents", sel.len());
                let mut acc = vec![0u32; n];
                for &l in &sel {
                    c.line_counts(&mut acc, l);
                }
                check!(counts_mod2(&acc) == target, "internal point {p}, tangent {t}: sum of tangents differs from N_Pa,E");
            }
            Ok(choices.len())
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    let scope = if all_choices { "every tangent choice" } else { "the canonical tangent choice" };
    Ok(format!("{} internal points, {total} (point, tangent) pairs, {scope}", g.internal().len()))
}

fn lemma_set1(c: &Context) -> Outcome {
    let g = c.geom;
    for &p in g.conic() {
        let m = witness_m(g, p).map_err(|e| format!("conic point {p}: {e}"))?;
        check!(m.len() == c.q, "conic point {p}: |M| = {}", m.len());
        for &x in g.points_on(g.polar_of_point(p)) {
            if x == p {
                continue;
            }
            let k = passant_count(g, x, &m);
            check!(k == (c.q + 1) / 2, "conic point {p}, external {x}: {k} passants, expected {}", (c.q + 1) / 2);
        }
    }
    Ok(format!("|M| = {} and {} passants per external point, all conic points", c.q, (c.q + 1) / 2))
}

fn cor_tsum1(c: &Context) -> Outcome {
    let g = c.geom;
    let n = c.e_index.len();
    for &t in g.tangents() {
        let m = witness_m(g, g.polar_of_line(t)).map_err(|e| format!("tangent {t}: {e}"))?;
        let mut lhs = vec![0u32; n];
        c.line_counts(&mut lhs, t);
        let mut rhs = vec![0u32; n];
        for &x in &m {
            c.add_neighbourhood(&mut rhs, x, false);
        }
        check!(counts_mod2(&lhs) == counts_mod2(&rhs), "tangent {t}: congruence fails");
    }
    Ok(format!("all {} tangents", g.tangents().len()))
}

fn lemma_set22(c: &Context) -> Outcome {
    let g = c.geom;
    let want_p = if c.q1() { 0 } else { c.q - 1 };
    let res: Vec<Result<(), String>> = g
        .external()
        .par_iter()
        .map(|&p| {
            let m = witness_mprime(g, p).map_err(|e| format!("external point {p}: {e}"))?;
            check!(m.len() == c.q - 1, "external point {p}: |M'| = {}", m.len());
            let k = passant_count(g, p, &m);
            check!(k == want_p, "external point {p}: {k} passants through p, expected {want_p}");
            Ok(())
        })
        .collect();
    res.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("|M'| = {} for all {} external points", c.q - 1, g.external().len()))
}

fn cor_tsum2(c: &Context) -> Outcome {
    let g = c.geom;
    let n = c.e_index.len();
    let res: Vec<Result<(), String>> = g
        .external()
        .par_iter()
        .map(|&p| {
            let m = witness_mprime(g, p).map_err(|e| format!("external point {p}: {e}"))?;
            let mut lhs = vec![0u32; n];
            for t in g.tangents_through(p) {
                c.line_counts(&mut lhs, t);
            }
            let mut pa = vec![0u32; n];
            let mut se = vec![0u32; n];
            for &x in &m {
                c.add_neighbourhood(&mut pa, x, false);
                c.add_neighbourhood(&mut se, x, true);
            }
            let (lhs, pa, se) = (counts_mod2(&lhs), counts_mod2(&pa), counts_mod2(&se));
            check!(lhs == pa, "external point {p}: tangent pair differs from the N_Pa,E sum");
            check!(pa == se, "external point {p}: N_Pa,E and N_Se,E sums differ");
            Ok(())
        })
        .collect();
    res.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("N_Pa,E form holds and agrees with the N_Se,E form for all external points".into())
}

fn lemma_u3(c: &Context) -> Outcome {
    let s = &c.spans;
    let q = c.q;
    check!(s.m1.dim() == q, "dim M1 = {}, expected {q}", s.m1.dim());
    check!(s.m2.dim() == q - 1, "dim M2 = {}, expected {}", s.m2.dim(), q - 1);
    let ones = BitVec::ones(c.e_index.len());
    check!(!s.m1.contains(&ones).unwrap(), "all-one vector lies in M1");
    check!(!s.m2.contains(&ones).unwrap(), "all-one vector lies in M2");
    let mut sum = BitVec::zeros(ones.len());
    for v in &s.vectors {
        sum.xor_assign(v);
    }
    check!(sum.is_zero(), "tangent vectors do not sum to zero");
    Ok(format!("dim M1 = {q}, dim M2 = {}", q - 1))
}

fn lemma_u2(c: &Context) -> Outcome {
    let col_d = ColumnSpace::of_columns(&c.d.matrix);
    let (target, name) = if c.q1() { (&c.spans.m1, "M1") } else { (&c.spans.m2, "M2") };
    check!(col_d.equals(target).unwrap(), "col(D) (dim {}) differs from {name} (dim {})", col_d.dim(), target.dim());
    Ok(format!("col(D) = {name}"))
}

fn cor_dim(c: &Context) -> Outcome {
    let r = c.d.rank2();
    let want = crate::incidence::expected_rank_d(c.q);
    check!(r == want, "rank2(D) = {r}, expected {want}");
    Ok(format!("rank2(D) = {r}"))
}

fn lemma_deofd(c: &Context) -> Outcome {
    let col_d = ColumnSpace::of_columns(&c.d.matrix);
    let col_dp = ColumnSpace::of_columns(&c.dprime.matrix);
    let ones = BitVec::ones(c.e_index.len());
    check!(col_dp.contains(&ones).unwrap(), "all-one vector not in col(D')");
    check!(!col_d.contains(&ones).unwrap(), "all-one vector lies in col(D)");
    check!(col_dp.contains_space(&col_d).unwrap(), "col(D) not contained in col(D')");
    check!(col_dp.dim() == col_d.dim() + 1, "rank2(D') = {}, rank2(D) = {}", col_dp.dim(), col_d.dim());
    Ok(format!("rank2(D') = {} = rank2(D) + 1", col_dp.dim()))
}

fn thm_main_ranks(c: &Context) -> Outcome {
    let q = c.q;
    let col_b = ColumnSpace::of_columns(&c.b.matrix);
    let col_d = ColumnSpace::of_columns(&c.d.matrix);
    check!(col_b.contains_space(&col_d).unwrap(), "col(D) not contained in col(B)");
    let (rb, rd) = (col_b.dim(), col_d.dim());
    if c.q1() {
        let want = (q - 1) * (q - 1) / 4;
        check!(rb >= rd && rb - rd == want, "rank2(B) - rank2(D) = {rb} - {rd}, expected difference {want}");
    } else {
        let ones = BitVec::ones(c.e_index.len());
        check!(col_b.contains(&ones).unwrap(), "all-one vector not in col(B)");
        check!(!col_d.contains(&ones).unwrap(), "all-one vector lies in col(D)");
        let want = (q + 1) * (q - 3) / 4;
        check!(rb > rd && rb - rd - 1 == want, "rank2(B) - rank2(D) - 1 = {rb} - {rd} - 1, expected {want}");
    }
    Ok(format!("rank2(B) = {rb}, rank2(D) = {rd}"))
}

fn conjecture_dims(c: &Context) -> Outcome {
    let r = dimension_report(c.geom);
    let (l, l0) = conjectured_dims(c.q);
    check!(r.matches, "dim L = {}, dim L0 = {}, expected {l}, {l0}", r.dim_l, r.dim_l0);
    Ok(format!("dim L = {}, dim L0 = {}", r.dim_l, r.dim_l0))
}

struct GroupContext<'a> {
    ctx: &'a Context<'a>,
    table: &'a GroupTable,
}

type GroupCheck = fn(&GroupContext) -> Outcome;

fn group_checks(q: usize) -> Vec<(&'static str, GroupCheck)> {
    let mut v: Vec<(&'static str, GroupCheck)> = vec![
        ("Tau_homomorphism", tau_homomorphism),
        ("Lemma_classes", lemma_classes),
        ("Lemma_transitive", lemma_transitive),
        ("Prop_Ktransitive", prop_ktransitive),
        ("Lemma_a11", lemma_a11),
        ("Eq_interest", eq_interest),
        ("Cor_y11", cor_y11),
    ];
    if q % 4 == 1 {
        v.push(("Lemma_m1", lemma_m1));
    } else {
        v.push(("Lemma_m2", lemma_m2));
    }
    v
}

/// Deterministic spread of `count` indices below `n`.
fn spread(n: usize, count: usize, salt: usize) -> impl Iterator<Item = usize> {
    (0..count.min(n.max(1) * n.max(1))).map(move |i| (i * 7919 + salt * 104_729 + i * i * 31) % n)
}

fn tau_homomorphism(g: &GroupContext) -> Outcome {
    let t = g.table;
    let f = t.field();
    let h = t.h_elements();
    let pairs: Vec<(usize, usize)> = if f.q() == 3 {
        (0..h.len()).flat_map(|i| (0..h.len()).map(move |j| (i, j))).collect()
    } else {
        spread(h.len(), 4096, 1).zip(spread(h.len(), 4096, 2)).collect()
    };
    for &(i, j) in &pairs {
        let [a, b, c, d] = h[i].source;
        let [a2, b2, c2, d2] = h[j].source;
        let prod = tau(
            f,
            f.add(f.mul(a, a2), f.mul(b, c2)),
            f.add(f.mul(a, b2), f.mul(b, d2)),
            f.add(f.mul(c, a2), f.mul(d, c2)),
            f.add(f.mul(c, b2), f.mul(d, d2)),
        )
        .map_err(|e| e.to_string())?;
        check!(mat_mul(f, &h[i].mat, &h[j].mat) == prod.mat, "τ(x)τ(y) ≠ τ(xy) for elements {i}, {j}");
    }
    for (i, x) in h.iter().enumerate() {
        let [a, b, c, d] = x.source;
        check!(mat_mul(f, &x.mat, &tau_inverse_matrix(f, a, b, c, d)) == mat_identity(), "inverse formula fails for element {i}");
        let neg = tau_matrix(f, f.neg(a), f.neg(b), f.neg(c), f.neg(d));
        check!(neg == x.mat, "τ is not even on element {i}");
    }
    let want = f.q() as usize * (f.q() as usize * f.q() as usize - 1) / 2;
    check!(h.len() == want, "|H| = {}, expected {want}", h.len());
    check!(t.g_order() == 2 * want, "|G| = {}, expected {}", t.g_order(), 2 * want);
    Ok(format!("|H| = {}, {} products checked", h.len(), pairs.len()))
}

fn lemma_classes(g: &GroupContext) -> Outcome {
    let t = g.table;
    let f = t.field();
    let q = f.q() as usize;
    let h = t.h_order();
    let labelled: usize = t.classes().iter().map(|c| c.members.len()).sum();
    check!(labelled == h, "{} of {h} elements carry a class label", labelled);
    let mut by_label: Vec<Vec<usize>> = t.classes().iter().map(|c| c.members.clone()).collect();
    by_label.retain(|c| !c.is_empty());
    by_label.sort();
    let mut brute = t.conjugacy_classes_brute();
    brute.sort();
    check!(brute == by_label, "conjugacy orbits ({} classes) differ from the trace labelling ({} classes)", brute.len(), by_label.len());
    let count = |pred: fn(&ClassKind) -> bool| t.classes().iter().filter(|c| pred(&c.label.kind)).count();
    let thetas = count(|k| matches!(k, ClassKind::Theta(_)));
    let pis = count(|k| matches!(k, ClassKind::Pi(_)));
    let (want_theta, want_pi) = if q % 4 == 1 { ((q - 5) / 4, (q - 1) / 4) } else { ((q - 3) / 4, (q - 3) / 4) };
    check!(thetas == want_theta, "{thetas} theta classes, expected {want_theta}");
    check!(pis == want_pi, "{pis} pi classes, expected {want_pi}");
    let size = |k: ClassKind| t.classes().iter().find(|c| c.label.kind == k).map_or(0, |c| c.members.len());
    check!(size(ClassKind::D) == 1, "class D has {} elements", size(ClassKind::D));
    check!(size(ClassKind::FPlus) == size(ClassKind::FMinus), "F+ and F- differ in size");
    let fminus_rep = t
        .index_of(&tau_matrix(f, f.one(), f.xi(), f.zero(), f.one()))
        .ok_or("τ(1,ξ,0,1) not found")?;
    check!(
        t.classify_element(fminus_rep).map(|l| l.kind) == Some(ClassKind::FMinus),
        "τ(1,ξ,0,1) is not in F-"
    );
    let sizes: Vec<String> = t.classes().iter().map(|c| format!("{}:{}", c.label, c.members.len())).collect();
    Ok(sizes.join(" "))
}

fn lemma_transitive(g: &GroupContext) -> Outcome {
    let (geom, t) = (g.ctx.geom, g.table);
    let h: Vec<usize> = (0..t.h_order()).collect();
    for (name, pts) in [("I", geom.internal()), ("E", geom.external()), ("O", geom.conic())] {
        check!(t.point_orbit(&h, pts[0]) == pts, "H is not transitive on {name}");
    }
    for (name, ls) in [("Pa", geom.passants()), ("Se", geom.secants()), ("T", geom.tangents())] {
        check!(t.line_orbit(&h, ls[0]) == ls, "H is not transitive on {name}");
    }
    Ok("H transitive on I, E, O, Pa, Se, T".into())
}

fn prop_ktransitive(g: &GroupContext) -> Outcome {
    let (geom, t) = (g.ctx.geom, g.table);
    let res: Vec<Result<(), String>> = (0..geom.size())
        .into_par_iter()
        .filter(|&p| geom.point_class(p) != PointClass::Absolute)
        .map(|p| {
            let k = t.stabilizer_g(p);
            let polar = geom.polar_of_point(p);
            let point_sets = [("I on polar", geom.internal_on(polar)), ("E on polar", geom.external_on(polar))];
            for (name, s) in point_sets {
                check!(!s.is_empty() && t.point_orbit(&k, s[0]) == s, "point {p}: stabilizer not transitive on {name}");
            }
            let mut line_sets = vec![("Pa_p", geom.passants_through(p)), ("Se_p", geom.secants_through(p))];
            if geom.point_class(p) == PointClass::External {
                line_sets.push(("T_p", geom.tangents_through(p)));
            }
            for (name, s) in line_sets {
                check!(!s.is_empty() && t.line_orbit(&k, s[0]) == s, "point {p}: stabilizer not transitive on {name}");
            }
            Ok(())
        })
        .collect();
    res.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("all points off the conic".into())
}

fn lemma_a11(g: &GroupContext) -> Outcome {
    let (geom, t) = (g.ctx.geom, g.table);
    for p in 0..geom.size() {
        let polar = geom.polar_of_point(p);
        let k = t.stabilizer_g(p);
        for &x in &k {
            check!(t.act_line(x, polar) == polar, "element {x} fixes point {p} but moves its polar");
        }
        let line_stab: Vec<usize> = (0..t.g_order()).filter(|&x| t.act_line(x, polar) == polar).collect();
        check!(line_stab == k, "stabilizers of point {p} and its polar differ");
    }
    Ok("G_p = G_{p^⊥} for all points".into())
}

fn eq_interest(g: &GroupContext) -> Outcome {
    let (geom, t) = (g.ctx.geom, g.table);
    for x in 0..t.g_order() {
        for p in 0..geom.size() {
            let lhs = t.act_line(x, geom.polar_of_point(p));
            let rhs = geom.polar_of_point(t.act_point(x, p));
            check!(lhs == rhs, "polarity does not commute with element {x} at point {p}");
        }
    }
    let (is, es) = (geom.internal(), geom.external());
    let mut cases = 0;
    for (k, x) in spread(t.g_order(), 48, 3).enumerate() {
        let p = is[(k * 13 + 1) % is.len()];
        let qp = es[(k * 29 + 2) % es.len()];
        let mut conj: Vec<usize> = t.hpq(geom, p, qp).into_iter().map(|h| t.conjugate(h, x)).collect();
        conj.sort_unstable();
        let direct = t.hpq(geom, t.act_point(x, p), t.act_point(x, qp));
        check!(conj == direct, "conjugating H_(p,q) by element {x} misses H_(p^g,q^g) at p={p}, q={qp}");
        cases += 1;
    }
    Ok(format!("polarity commutes with G; {cases} sampled conjugations"))
}

fn cor_y11(g: &GroupContext) -> Outcome {
    let (geom, t) = (g.ctx.geom, g.table);
    let q = g.ctx.q;
    let zero_claim = if q % 4 == 1 { (q + 1) / 2 } else { (q - 1) / 2 };
    let mut zero_seen = std::collections::BTreeSet::new();
    let mut failures = Vec::new();
    for &p in geom.internal() {
        let k = t.stabilizer(p);
        check!(k.len() == q + 1, "internal point {p}: |K| = {}", k.len());
        let mut counts = vec![0usize; t.classes().len()];
        for &x in &k {
            if let Some(c) = t.class_index(x) {
                counts[c] += 1;
            }
        }
        for (c, info) in t.classes().iter().enumerate() {
            let want = match info.label.kind {
                ClassKind::D => 1,
                ClassKind::FPlus | ClassKind::FMinus | ClassKind::Theta(_) => 0,
                ClassKind::Pi(_) => 2,
                ClassKind::Zero => {
                    zero_seen.insert(counts[c]);
                    zero_claim
                }
            };
            if counts[c] != want {
                failures.push(format!("internal point {p}: |K ∩ {}| = {}, expected {want}", info.label, counts[c]));
            }
        }
    }
    if let Some(first) = failures.first() {
        return Err(format!("{first} ({} mismatches; observed |K ∩ [0]| values {:?})", failures.len(), zero_seen));
    }
    Ok(format!("|K| = {}, |K ∩ [0]| = {zero_claim}", q + 1))
}

/// Class counts merged over the classes the parity lemmas speak about:
/// `D`, `[4] = F+ ∪ F-`, each theta, each pi. `[0]` is left out.
fn merged_labels(t: &GroupTable) -> Vec<(String, Vec<usize>)> {
    let mut out: Vec<(String, Vec<usize>)> = Vec::new();
    for (c, info) in t.classes().iter().enumerate() {
        match info.label.kind {
            ClassKind::Zero => {}
            ClassKind::FMinus => out.iter_mut().find(|(n, _)| n == "[4]").unwrap().1.push(c),
            ClassKind::FPlus => out.push(("[4]".into(), vec![c])),
            _ => out.push((info.label.to_string(), vec![c])),
        }
    }
    out
}

/// Shared driver for the two parity lemmas. `even_class` is the line class
/// through `p` on which every count is even, `pair_kind` picks the classes
/// carrying the two-point clause.
fn parity_lemma(g: &GroupContext, even_class: LineClass, pair_pred: fn(&ClassKind) -> bool) -> Outcome {
    let (geom, t) = (g.ctx.geom, g.table);
    let merged = merged_labels(t);
    let odd_class = if even_class == LineClass::Secant { LineClass::Passant } else { LineClass::Secant };
    let e = &g.ctx.e_index;
    let res: Vec<Result<usize, String>> = geom
        .internal()
        .par_iter()
        .map(|&p| {
            let all = t.hpq_counts_all(geom, p);
            let polar_pts = geom.points_on(geom.polar_of_point(p));
            let parities = |x: usize| -> Vec<(String, bool)> {
                let row = &all[e.position(x).unwrap()];
                merged
                    .iter()
                    .map(|(name, cs)| (name.clone(), cs.iter().map(|&c| row[c]).sum::<usize>() % 2 == 1))
                    .collect()
            };
            let mut cases = 0;
            for &l in geom.lines_through(p) {
                let lc = geom.line_class(l);
                for x in geom.external_on(l) {
                    let on_polar = polar_pts.binary_search(&x).is_ok();
                    let par = parities(x);
                    if lc == even_class {
                        if let Some((name, _)) = par.iter().find(|(_, odd)| *odd) {
                            return Err(format!("p={p}, q={x} on {lc:?} line: |H_pq ∩ {name}| is odd"));
                        }
                    } else if lc == odd_class && on_polar {
                        for (name, odd) in &par {
                            check!(*odd == (name == "D"), "p={p}, q={x} on polar: |H_pq ∩ {name}| has wrong parity");
                        }
                    }
                    cases += 1;
                }
                if lc == odd_class {
                    // two-point clause
                    let mut used: Vec<usize> = Vec::new();
                    for (ci, info) in t.classes().iter().enumerate() {
                        if !pair_pred(&info.label.kind) {
                            continue;
                        }
                        let odd_pts: Vec<usize> = geom
                            .external_on(l)
                            .into_iter()
                            .filter(|x| polar_pts.binary_search(x).is_err())
                            .filter(|&x| all[e.position(x).unwrap()][ci] % 2 == 1)
                            .collect();
                        check!(odd_pts.len() == 2, "p={p}, line {l}: {} has {} odd points off the polar", info.label, odd_pts.len());
                        check!(odd_pts.iter().all(|x| !used.contains(x)), "p={p}, line {l}: point pairs of distinct classes overlap");
                        used.extend(odd_pts);
                    }
                }
            }
            Ok(cases)
        })
        .collect();
    let mut total = 0;
    for r in res {
        total += r?;
    }
    Ok(format!("{total} (p, q) pairs"))
}

fn lemma_m1(g: &GroupContext) -> Outcome {
    parity_lemma(g, LineClass::Secant, |k| matches!(k, ClassKind::Pi(_)))
}

fn lemma_m2(g: &GroupContext) -> Outcome {
    parity_lemma(g, LineClass::Passant, |k| matches!(k, ClassKind::Theta(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[LemmaVerdict]) -> Vec<&str> {
        v.iter().map(|x| x.lemma_id.as_str()).collect()
    }

    #[test]
    fn q5_everything_passes() {
        let v = run_suite(5, None, Depth::Group, 13).unwrap();
        for x in &v {
            assert!(x.passed, "{x:?}");
        }
        assert!(ids(&v).contains(&"Lemma_set1"));
        assert!(ids(&v).contains(&"Lemma_m1"));
        assert!(!ids(&v).contains(&"Lemma_deofD"));
    }

    #[test]
    fn q7_gating() {
        let v = run_suite(7, None, Depth::Geometry, 13).unwrap();
        let names = ids(&v);
        assert!(!names.contains(&"Lemma_set1") && !names.contains(&"Cor_tsum1"));
        assert!(names.contains(&"Lemma_deofD"));
        assert!(v.iter().all(|x| x.passed), "{v:?}");
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            run_suite(17, None, Depth::Group, 13),
            Err(VerifyError::Group(GroupError::BoundExceeded { q: 17, bound: 13 }))
        ));
        assert!(matches!(run_suite(4, None, Depth::Geometry, 13), Err(VerifyError::Field(_))));
    }

    #[test]
    fn depth_parsing() {
        assert_eq!("geometry".parse::<Depth>().unwrap(), Depth::Geometry);
        assert_eq!("+group".parse::<Depth>().unwrap(), Depth::Group);
        assert!("all".parse::<Depth>().is_err());
    }
}
