//! Explicit internal-point sets whose passant lines reproduce tangent lines
//! modulo 2, and the tangent selections they are built from.

use thiserror::Error;

use crate::gf::{Elem, Field, SquareClass};
use crate::group::{act_point_coords, tau_matrix};
use crate::plane::{ConicGeometry, LineClass, PlaneError, PointClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("no admissible parameter x in the field")]
    NoParameter,
    #[error("parity condition fails at point {point}: {count} passant lines")]
    VerificationFailed { point: usize, count: usize },
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// Conic parameter of a conic point: `t` for `(1,t,t^2)`, `None` for `(0,0,1)`.
pub fn conic_parameter(geom: &ConicGeometry, p: usize) -> Option<Elem> {
    let c = geom.point_coords(p);
    (!c[0].is_zero()).then_some(c[1])
}

/// Number of passant lines joining `x` to the points of `set`, one per point.
pub fn passant_count(geom: &ConicGeometry, x: usize, set: &[usize]) -> usize {
    set.iter()
        .filter(|&&m| m != x)
        .filter(|&&m| geom.line_class(geom.join(x, m).expect("distinct points")) == LineClass::Passant)
        .count()
}

/// For internal `p` and a tangent `ell`: the second tangent through each
/// point where a passant through `p` meets `ell`.
pub fn tangent_selection(geom: &ConicGeometry, p: usize, ell: usize) -> Result<Vec<usize>, WitnessError> {
    if geom.point_class(p) != PointClass::Internal {
        return Err(WitnessError::Hypothesis(format!("point {p} is not internal")));
    }
    if geom.line_class(ell) != LineClass::Tangent {
        return Err(WitnessError::Hypothesis(format!("line {ell} is not a tangent")));
    }
    let mut out = Vec::new();
    for m in geom.passants_through(p) {
        let w = geom.meet(m, ell)?;
        out.extend(geom.tangents_through(w).into_iter().filter(|&t| t != ell));
    }
    Ok(out)
}

/// The first tangent, in canonical order, through an external point of `p^⊥`.
pub fn canonical_tangent(geom: &ConicGeometry, p: usize) -> Option<usize> {
    let polar = geom.polar_of_point(p);
    geom.tangents().iter().copied().find(|&t| {
        geom.points_on(t)
            .iter()
            .any(|&x| geom.point_class(x) == PointClass::External && geom.points_on(polar).binary_search(&x).is_ok())
    })
}

fn transport(geom: &ConicGeometry, m: &[[Elem; 3]; 3], pts: &[[Elem; 3]]) -> Vec<usize> {
    let f = geom.field();
    let mut out: Vec<usize> = pts
        .iter()
        .map(|v| geom.point_index(&act_point_coords(f, m, v)).expect("nonzero image"))
        .collect();
    out.sort_unstable();
    out
}

/// For `q ≡ 1 (mod 4)` and a conic point `p`: the `q` internal points
/// `{(1,-b,b^2-ξ)}` attached to `(0,0,1)`, carried to `p`. Every external
/// point of the tangent at `p` is joined to the set by an odd number of
/// passants; this is checked before returning.
pub fn witness_m(geom: &ConicGeometry, p: usize) -> Result<Vec<usize>, WitnessError> {
    let f = geom.field();
    if f.q() % 4 != 1 {
        return Err(WitnessError::Hypothesis("q must be 1 mod 4".into()));
    }
    if geom.point_class(p) != PointClass::Absolute {
        return Err(WitnessError::Hypothesis(format!("point {p} is not on the conic")));
    }
    let xi = f.xi();
    let base: Vec<[Elem; 3]> = f.elements().map(|b| [Elem::ONE, f.neg(b), f.sub(f.square(b), xi)]).collect();
    let g = match conic_parameter(geom, p) {
        None => crate::group::mat_identity(),
        // τ(0,-1,1,s) sends (0,0,1) to (1,s,s^2).
        Some(s) => tau_matrix(f, Elem::ZERO, f.neg(Elem::ONE), Elem::ONE, s),
    };
    let set = transport(geom, &g, &base);
    check_set(geom, &set, PointClass::Internal, true)?;
    for &x in geom.points_on(geom.polar_of_point(p)) {
        if geom.point_class(x) != PointClass::External {
            continue;
        }
        let count = passant_count(geom, x, &set);
        if count % 2 == 0 {
            return Err(WitnessError::VerificationFailed { point: x, count });
        }
    }
    Ok(set)
}

fn check_set(geom: &ConicGeometry, set: &[usize], class: PointClass, odd: bool) -> Result<(), WitnessError> {
    if let Some(&bad) = set.iter().find(|&&m| geom.point_class(m) != class) {
        return Err(WitnessError::Hypothesis(format!("point {bad} is not {class:?}")));
    }
    if set.windows(2).any(|w| w[0] == w[1]) {
        return Err(WitnessError::Hypothesis("witness points are not distinct".into()));
    }
    if (set.len() % 2 == 1) != odd {
        return Err(WitnessError::Hypothesis(format!("witness has {} points", set.len())));
    }
    Ok(())
}

/// The parameter `x` of the orbit `{(1,w,x w^2)}`: the first field element with
/// `1-x` a non-square and `x` a non-square (`q ≡ 3`) or a square (`q ≡ 1`).
pub fn mprime_parameter(f: &Field) -> Option<Elem> {
    let want = if f.q() % 4 == 3 { SquareClass::NonSquare } else { SquareClass::Square };
    f.elements()
        .find(|&x| f.square_class(x) == want && f.square_class(f.sub(Elem::ONE, x)) == SquareClass::NonSquare)
}

/// Collineation of the conic sending `(0,1,0)` to the external point whose
/// tangents touch the conic at the two given parameters (`None` is infinity).
fn external_transport(f: &Field, sa: Option<Elem>, sb: Option<Elem>) -> [[Elem; 3]; 3] {
    let (o, z) = (Elem::ONE, Elem::ZERO);
    // Conic parameters move by t -> (b + d t)/(a + c t): 0 -> sa, infinity -> sb.
    match (sa, sb) {
        (Some(a), Some(b)) => tau_matrix(f, o, a, o, b),
        (None, Some(b)) => tau_matrix(f, z, o, o, b),
        (Some(a), None) => tau_matrix(f, o, a, z, o),
        (None, None) => unreachable!("two distinct contact points"),
    }
}

/// For an external point `p`: the `q-1` internal points of the orbit
/// `{(1,w,x w^2) : w ≠ 0}` attached to `(0,1,0)`, carried to `p`. Checked
/// before returning: odd passant counts from every external point of the two
/// tangents through `p` other than `p`, and an even count from `p`.
pub fn witness_mprime(geom: &ConicGeometry, p: usize) -> Result<Vec<usize>, WitnessError> {
    let f = geom.field();
    if geom.point_class(p) != PointClass::External {
        return Err(WitnessError::Hypothesis(format!("point {p} is not external")));
    }
    let x = mprime_parameter(f).ok_or(WitnessError::NoParameter)?;
    let base: Vec<[Elem; 3]> = f.units().map(|w| [Elem::ONE, w, f.mul(x, f.square(w))]).collect();
    let tangents = geom.tangents_through(p);
    if tangents.len() != 2 {
        return Err(WitnessError::Hypothesis(format!("point {p} lies on {} tangents", tangents.len())));
    }
    let contacts: Vec<Option<Elem>> = tangents
        .iter()
        .map(|&t| conic_parameter(geom, geom.polar_of_line(t)))
        .collect();
    let g = external_transport(f, contacts[0], contacts[1]);
    let set = transport(geom, &g, &base);
    check_set(geom, &set, PointClass::Internal, false)?;
    for &t in &tangents {
        for &z in geom.points_on(t) {
            if z == p || geom.point_class(z) != PointClass::External {
                continue;
            }
            let count = passant_count(geom, z, &set);
            if count % 2 == 0 {
                return Err(WitnessError::VerificationFailed { point: z, count });
            }
        }
    }
    let count = passant_count(geom, p, &set);
    if count % 2 == 1 {
        return Err(WitnessError::VerificationFailed { point: p, count });
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::build_geometry;

    fn geom(q: u64) -> ConicGeometry {
        build_geometry(&Field::with_order(q, None).unwrap())
    }

    #[test]
    fn m_at_infinity_is_the_displayed_orbit() {
        let g = geom(5);
        let f = g.field().clone();
        let inf = g.point_index(&[Elem(0), Elem(0), Elem(1)]).unwrap();
        let m = witness_m(&g, inf).unwrap();
        let mut expected: Vec<usize> = f
            .elements()
            .map(|b| g.point_index(&[Elem::ONE, f.neg(b), f.sub(f.square(b), f.xi())]).unwrap())
            .collect();
        expected.sort_unstable();
        assert_eq!(m, expected);
    }

    #[test]
    fn m_for_every_conic_point() {
        for q in [5u64, 9, 13] {
            let g = geom(q);
            for &p in g.conic() {
                let m = witness_m(&g, p).unwrap();
                assert_eq!(m.len(), q as usize);
                for &x in g.points_on(g.polar_of_point(p)) {
                    if x != p {
                        assert_eq!(passant_count(&g, x, &m), (q as usize + 1) / 2);
                    }
                }
            }
        }
        assert!(witness_m(&geom(7), geom(7).conic()[0]).is_err());
    }

    #[test]
    fn mprime_for_every_external_point() {
        for q in [3u64, 5, 7, 9, 11] {
            let g = geom(q);
            let through_p = if q % 4 == 1 { 0 } else { q as usize - 1 };
            for &p in g.external() {
                let m = witness_mprime(&g, p).unwrap();
                assert_eq!(m.len(), q as usize - 1);
                assert_eq!(passant_count(&g, p, &m), through_p);
            }
        }
    }

    #[test]
    fn mprime_at_base_point() {
        let g = geom(7);
        let f = g.field().clone();
        let p = g.point_index(&[Elem(0), Elem(1), Elem(0)]).unwrap();
        let x = mprime_parameter(&f).unwrap();
        let m = witness_mprime(&g, p).unwrap();
        let p1 = g.point_index(&[Elem::ONE, Elem::ONE, x]).unwrap();
        assert!(m.contains(&p1));
    }

    #[test]
    fn tangent_selection_size() {
        let g = geom(9);
        for &p in g.internal() {
            let t = canonical_tangent(&g, p).unwrap();
            assert_eq!(tangent_selection(&g, p, t).unwrap().len(), 5);
        }
    }
}
