//! Export the LDPC parity-check matrix B in alist form and read it back.
//!
//! cargo run --example export_alist -- 7 /tmp/b7.alist

use conic_codes::cli::{export_matrix, parse_alist, write_file, MatrixFormat};
use conic_codes::gf::Field;
use conic_codes::incidence::{build_matrix, MatrixName};
use conic_codes::plane::build_geometry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(Ok(7), |s| s.parse())?;
    let geom = build_geometry(&Field::with_order(q, None)?);
    let text = export_matrix(&geom, MatrixName::B, MatrixFormat::Alist)?;
    let back = parse_alist(&text)?;
    assert_eq!(back, build_matrix(&geom, MatrixName::B).matrix);
    match args.next() {
        Some(path) => {
            write_file(path.as_ref(), &text)?;
            println!("wrote {} bytes to {path}", text.len());
        }
        None => print!("{text}"),
    }
    Ok(())
}
