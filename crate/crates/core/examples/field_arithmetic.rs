//! Arithmetic in GF(9) and the square/non-square shift counts.
//!
//! cargo run --example field_arithmetic

use conic_codes::gf::{square_shift_counts, Field, SquareClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::with_order(9, None)?;
    println!("GF({}) over GF({}), modulus coefficients {:?}, xi = {}", f.q(), f.p(), f.modulus().unwrap_or(&[]), f.display(f.xi()));
    let g = f.generator();
    for k in 0..f.q() - 1 {
        let x = f.pow(g, k as u64);
        let class = match f.square_class(x) {
            SquareClass::Square => "square",
            SquareClass::NonSquare => "non-square",
            SquareClass::Zero => "zero",
        };
        println!("g^{k} = {:<8} {class}", f.display(x));
    }
    let a = f.from_coeffs(&[1, 2])?;
    let b = f.from_coeffs(&[2, 1])?;
    println!("({}) * ({}) = {}", f.display(a), f.display(b), f.display(f.mul(a, b)));
    println!("({}) / ({}) = {}", f.display(a), f.display(b), f.display(f.div(a, b)?));
    println!("shift counts (SS, SN, NS, NN) = {:?}", square_shift_counts(&f).as_tuple());
    Ok(())
}
