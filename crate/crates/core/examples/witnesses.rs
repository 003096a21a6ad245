//! Internal-point witness sets: for a conic point (q = 1 mod 4) and for an
//! external point, the sets whose passant neighbourhoods sum to tangent lines
//! modulo 2.
//!
//! cargo run --example witnesses -- 9

use conic_codes::gf::Field;
use conic_codes::plane::build_geometry;
use conic_codes::verify::witness::{passant_count, witness_m, witness_mprime};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(9), |s| s.parse())?;
    let geom = build_geometry(&Field::with_order(q, None)?);
    let f = geom.field();
    let show = |p: usize| {
        let c = geom.point_coords(p);
        format!("({}, {}, {})", f.display(c[0]), f.display(c[1]), f.display(c[2]))
    };

    if q % 4 == 1 {
        let c = geom.conic()[0];
        let m = witness_m(&geom, c)?;
        println!("conic point {}: {} internal points", show(c), m.len());
        for &x in geom.points_on(geom.polar_of_point(c)).iter().filter(|&&x| x != c) {
            println!("  {} sees {} passants", show(x), passant_count(&geom, x, &m));
        }
    }

    let p = geom.external()[0];
    let m = witness_mprime(&geom, p)?;
    println!("external point {}: {} internal points, {} passants through p", show(p), m.len(), passant_count(&geom, p, &m));
    for t in geom.tangents_through(p) {
        let counts: Vec<usize> = geom.external_on(t).into_iter().filter(|&x| x != p).map(|x| passant_count(&geom, x, &m)).collect();
        println!("  tangent {t}: passant counts {counts:?}");
    }
    Ok(())
}
