//! Point and line classes of PG(2,7) with respect to the conic y^2 = xz.
//!
//! cargo run --example conic_geometry -- 7

use conic_codes::gf::Field;
use conic_codes::plane::{build_geometry, LineClass, PointClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(7), |s| s.parse())?;
    let geom = build_geometry(&Field::with_order(q, None)?);
    let f = geom.field();
    println!("PG(2,{q}): {} points, {} lines", geom.size(), geom.size());
    for pc in PointClass::ALL {
        println!("  {pc:?} points: {}", geom.points_of_class(pc).len());
    }
    for lc in LineClass::ALL {
        println!("  {lc:?} lines: {}", geom.lines_of_class(lc).len());
    }

    let p = geom.internal()[0];
    let show = |c: &[conic_codes::gf::Elem; 3]| format!("({}, {}, {})", f.display(c[0]), f.display(c[1]), f.display(c[2]));
    println!("internal point {} and its polar {}", show(geom.point_coords(p)), show(geom.line_coords(geom.polar_of_point(p))));
    println!("  lines through it: {} secants, {} passants", geom.secants_through(p).len(), geom.passants_through(p).len());
    println!("  |N_Pa,E| = {}, |N_Se,E| = {}", geom.n_pa_e(p)?.len(), geom.n_se_e(p)?.len());

    let x = geom.external()[0];
    let t = geom.tangents_through(x);
    println!("external point {} touches the conic at {} and {}", show(geom.point_coords(x)),
        show(geom.point_coords(geom.polar_of_line(t[0]))), show(geom.point_coords(geom.polar_of_line(t[1]))));
    Ok(())
}
