//! Conjugacy classes of PSL(2,q) acting on the conic, and how the stabilizer
//! of an internal point meets them.
//!
//! cargo run --release --example group_classes -- 13

use conic_codes::gf::Field;
use conic_codes::group::{GroupTable, DEFAULT_GROUP_BOUND};
use conic_codes::plane::build_geometry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(13), |s| s.parse())?;
    let geom = build_geometry(&Field::with_order(q, None)?);
    let table = GroupTable::build(&geom, DEFAULT_GROUP_BOUND)?;
    println!("|H| = {}, |G| = {}", table.h_order(), table.g_order());

    let p = geom.internal()[0];
    let k = table.stabilizer(p);
    let mut meet = vec![0usize; table.classes().len()];
    for &x in &k {
        if let Some(c) = table.class_index(x) {
            meet[c] += 1;
        }
    }
    println!("stabilizer of internal point {p} has order {}", k.len());
    println!("{:<12} {:>5} {:>6} {:>8}", "class", "T", "size", "in K");
    for (c, info) in table.classes().iter().enumerate() {
        println!("{:<12} {:>5} {:>6} {:>8}", info.label.to_string(), geom.field().display(info.label.t_value), info.members.len(), meet[c]);
    }
    Ok(())
}
