//! Bit-packed GF(2) linear algebra on a random matrix and on the incidence
//! matrix of PG(2,q).
//!
//! cargo run --release --example gf2_rank

use conic_codes::gf::Field;
use conic_codes::gf2mat::{nullspace_basis, rank2, BitVec, ColumnSpace, Gf2Matrix};
use conic_codes::incidence::build_a;
use conic_codes::plane::build_geometry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a small deterministic matrix: row i has ones at i, 2i+1, 3i+2 (mod 12)
    let rows: Vec<BitVec> = (0..8).map(|i| BitVec::from_indices(12, [i % 12, (2 * i + 1) % 12, (3 * i + 2) % 12])).collect();
    let m = Gf2Matrix::from_rows(12, &rows)?;
    let kernel = nullspace_basis(&m);
    println!("8x12 matrix: rank {}, nullspace dimension {}", rank2(&m), kernel.len());
    for v in &kernel {
        assert!(m.mul_vec(v)?.is_zero());
    }

    let cols = ColumnSpace::of_columns(&m);
    println!("column space dimension {}", cols.dim());

    for q in [3u64, 5, 7, 9, 11, 13] {
        let a = build_a(&build_geometry(&Field::with_order(q, None)?));
        println!("PG(2,{q}): rank2(A) = {} (q^2+q = {})", a.rank2(), q * q + q);
    }
    Ok(())
}
