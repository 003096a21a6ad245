//! Dimensions of the two binary codes defined by the external/passant
//! incidence matrix, next to their closed forms.
//!
//! cargo run --release --example code_dimensions -- 3 5 7 9 11 13 81

use conic_codes::gf::Field;
use conic_codes::incidence::dimension_report;
use conic_codes::plane::build_geometry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut qs: Vec<u64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    if qs.is_empty() {
        qs = vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27];
    }
    println!("{:>4} {:>6} {:>7} {:>7} {:>8} {:>8}", "q", "rankB", "dim L", "dim L0", "formula", "match");
    for q in qs {
        let r = dimension_report(&build_geometry(&Field::with_order(q, None)?));
        println!(
            "{:>4} {:>6} {:>7} {:>7} {:>8} {:>8}",
            r.q,
            r.rank_b,
            r.dim_l,
            r.dim_l0,
            format!("{}/{}", r.conjecture_dim_l, r.conjecture_dim_l0),
            r.matches
        );
    }
    Ok(())
}
