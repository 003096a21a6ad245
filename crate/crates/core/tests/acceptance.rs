//! Acceptance suite. Runs every criterion with its time budget, prints one
//! PASS/FAIL line each, and exits non-zero if any criterion fails.
//!
//! Closed forms and oracles here are written independently of the library
//! code they check.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use conic_codes::cli::{export_matrix, parse_alist, MatrixFormat};
use conic_codes::gf::Field;
use conic_codes::gf2mat::{rank2, BitVec, ColumnSpace, Gf2Matrix};
use conic_codes::incidence::{build_a, build_b, build_d, build_matrix, dimension_report, tangent_spans, MatrixName};
use conic_codes::plane::{build_geometry, ConicGeometry};
use conic_codes::verify::{run_suite, Depth, LemmaVerdict};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

const DIMS_QS: [u64; 11] = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27];

fn geom(q: u64) -> ConicGeometry {
    build_geometry(&Field::with_order(q, None).unwrap())
}

/// `dim L`, `dim L0` from the closed forms for each residue of `q` mod 4.
fn closed_form_dims(q: usize) -> (usize, usize) {
    if q % 4 == 1 {
        ((q * q - 1) / 4 - q, (q * q - 1) / 4)
    } else {
        ((q * q + 3) / 4 - q, (q * q + 3) / 4)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_dimensions() -> Outcome {
    for q in DIMS_QS {
        let r = dimension_report(&geom(q));
        let want = closed_form_dims(q as usize);
        ensure((r.dim_l, r.dim_l0) == want, || format!("q={q}: got ({}, {}), want {want:?}", r.dim_l, r.dim_l0))?;
    }
    Ok(format!("{} values of q", DIMS_QS.len()))
}

fn ac2_rank_a() -> Outcome {
    for q in [3u64, 5, 7, 9, 11, 13] {
        let r = build_a(&geom(q)).rank2();
        ensure(r as u64 == q * q + q, || format!("q={q}: rank2(A) = {r}"))?;
    }
    Ok("rank2(A) = q^2+q".into())
}

fn ac3_rank_d() -> Outcome {
    for q in [5u64, 9, 13, 3, 7, 11] {
        let want = if q % 4 == 1 { q } else { q - 1 } as usize;
        let r = build_d(&geom(q)).rank2();
        ensure(r == want, || format!("q={q}: rank2(D) = {r}, want {want}"))?;
    }
    Ok("q for q=1 mod 4, q-1 for q=3 mod 4".into())
}

fn ac4_main_ranks() -> Outcome {
    for q in DIMS_QS {
        let g = geom(q);
        let q = q as usize;
        let b = ColumnSpace::of_columns(&build_b(&g).matrix);
        let d = ColumnSpace::of_columns(&build_d(&g).matrix);
        ensure(b.contains_space(&d).unwrap(), || format!("q={q}: col(D) not in col(B)"))?;
        let (rb, rd) = (b.dim(), d.dim());
        if q % 4 == 1 {
            ensure(rb - rd == (q - 1) * (q - 1) / 4, || format!("q={q}: {rb} - {rd}"))?;
        } else {
            let ones = BitVec::ones(g.external().len());
            ensure(b.contains(&ones).unwrap(), || format!("q={q}: 1 not in col(B)"))?;
            ensure(!d.contains(&ones).unwrap(), || format!("q={q}: 1 in col(D)"))?;
            ensure(rb - rd - 1 == (q + 1) * (q - 3) / 4, || format!("q={q}: {rb} - {rd} - 1"))?;
        }
    }
    Ok(format!("{} values of q", DIMS_QS.len()))
}

fn ac5_tangent_spans() -> Outcome {
    for q in [5u64, 7, 9, 11, 13] {
        let g = geom(q);
        let q = q as usize;
        let s = tangent_spans(&g);
        ensure(s.m1.dim() == q && s.m2.dim() == q - 1, || format!("q={q}: dims {} {}", s.m1.dim(), s.m2.dim()))?;
        let d = ColumnSpace::of_columns(&build_d(&g).matrix);
        let target = if q % 4 == 1 { &s.m1 } else { &s.m2 };
        ensure(d.equals(target).unwrap(), || format!("q={q}: col(D) differs from the tangent span"))?;
    }
    Ok("dim M1 = q, dim M2 = q-1, col(D) equalities".into())
}

fn verdicts_pass(verdicts: &[LemmaVerdict], ids: &[&str]) -> Result<usize, String> {
    let mut seen = 0;
    for v in verdicts.iter().filter(|v| ids.contains(&v.lemma_id.as_str())) {
        ensure(v.passed, || format!("q={} {}: {}", v.q, v.lemma_id, v.detail))?;
        seen += 1;
    }
    Ok(seen)
}

fn require(verdicts: &[LemmaVerdict], ids: &[&str]) -> Result<(), String> {
    let n = verdicts_pass(verdicts, ids)?;
    ensure(n == ids.len(), || format!("expected {} verdicts, found {n}", ids.len()))
}

fn ac6_counting() -> Outcome {
    for q in DIMS_QS {
        let v = run_suite(q, None, Depth::Geometry, 13).map_err(|e| e.to_string())?;
        require(&v, &["Lemma_cs", "Table1", "Table2", "Lemma_bsize", "Lemma_meet"])?;
    }
    Ok("exhaustive for all q <= 27".into())
}

fn ac7_congruences() -> Outcome {
    for q in [5u64, 7, 9, 11, 13] {
        let v = run_suite(q, None, Depth::Geometry, 13).map_err(|e| e.to_string())?;
        require(&v, &["Cor_sksum"])?;
        if q % 4 == 1 {
            require(&v, &["Lemma_set1", "Cor_tsum1"])?;
        }
        if q <= 11 {
            require(&v, &["Lemma_set22", "Cor_tsum2"])?;
        }
    }
    Ok("sksum, set1/tsum1, set22/tsum2".into())
}

fn ac8_group() -> Outcome {
    for q in [3u64, 5, 7, 9, 11, 13] {
        let v = run_suite(q, None, Depth::Group, 13).map_err(|e| e.to_string())?;
        let parity = if q % 4 == 1 { "Lemma_m1" } else { "Lemma_m2" };
        require(&v, &["Lemma_classes", parity])?;
        if q % 4 == 1 {
            require(&v, &["Cor_y11"])?;
        }
    }
    Ok("class partition, m1/m2 parity tables, y11 for q = 1 mod 4".into())
}

/// The intersection counts as stated, for `q = 3 mod 4`, where the stated
/// `|K ∩ [0]| = (q-1)/2` disagrees with enumeration.
fn ac8_y11_q3() -> Outcome {
    for q in [3u64, 7, 11] {
        let v = run_suite(q, None, Depth::Group, 13).map_err(|e| e.to_string())?;
        require(&v, &["Cor_y11"])?;
    }
    Ok("y11 for q = 3 mod 4".into())
}

fn ac9_q81() -> Outcome {
    let r = dimension_report(&geom(81));
    ensure((r.dim_l, r.dim_l0) == (1559, 1640), || format!("got ({}, {})", r.dim_l, r.dim_l0))?;
    ensure(closed_form_dims(81) == (1559, 1640), || "closed form disagrees".into())?;
    Ok("dim L = 1559, dim L0 = 1640".into())
}

fn naive_rank(mut rows: Vec<Vec<u8>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                for k in 0..cols {
                    rows[r][k] ^= rows[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Product of two coefficient vectors reduced by a monic modulus, mod `p`.
fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let e = m.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + (p - c) * mi % p) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

fn ac10_oracles() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for t in 0..100 {
        let (r, c) = (rng.gen_range(1..=64), rng.gen_range(1..=64));
        let density = rng.gen_range(0.05..0.95);
        let rows: Vec<Vec<u8>> = (0..r).map(|_| (0..c).map(|_| rng.gen_bool(density) as u8).collect()).collect();
        let m = Gf2Matrix::from_dense(&rows).unwrap();
        let (got, want) = (rank2(&m), naive_rank(rows, c));
        ensure(got == want, || format!("matrix {t} ({r}x{c}): rank2 {got}, oracle {want}"))?;
    }
    for q in [9u64, 25, 27] {
        let f = Field::with_order(q, None).unwrap();
        let (p, e) = (f.p(), f.e() as usize);
        let m = f.modulus().expect("extension field").to_vec();
        let pad = |v: Vec<u32>| {
            let mut v = v;
            v.resize(e, 0);
            v
        };
        for a in f.elements() {
            let ca = pad(f.coeffs(a));
            for b in f.elements() {
                let cb = pad(f.coeffs(b));
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                ensure(pad(f.coeffs(f.add(a, b))) == sum, || format!("GF({q}) sum {a:?}+{b:?}"))?;
                ensure(pad(f.coeffs(f.mul(a, b))) == poly_mul_mod(&ca, &cb, &m, p), || format!("GF({q}) product {a:?}*{b:?}"))?;
            }
            if let Some(inv) = f.inv(a) {
                let one = pad(vec![1]);
                ensure(poly_mul_mod(&ca, &pad(f.coeffs(inv)), &m, p) == one, || format!("GF({q}) inverse of {a:?}"))?;
            } else {
                ensure(a.is_zero(), || format!("GF({q}) {a:?} has no inverse"))?;
            }
        }
    }
    Ok("100 random matrices; GF(9), GF(25), GF(27) tables".into())
}

fn ac11_serialization() -> Outcome {
    let mut count = 0;
    for q in [5u64, 7] {
        let g = geom(q);
        for name in MatrixName::ALL {
            let text = export_matrix(&g, name, MatrixFormat::Alist).map_err(|e| e.to_string())?;
            let back = parse_alist(&text).map_err(|e| e.to_string())?;
            ensure(back == build_matrix(&g, name).matrix, || format!("q={q} {name}: round trip differs"))?;
            for format in [MatrixFormat::Alist, MatrixFormat::Bits, MatrixFormat::Json, MatrixFormat::Csv] {
                let again = export_matrix(&geom(q), name, format).map_err(|e| e.to_string())?;
                let first = export_matrix(&g, name, format).map_err(|e| e.to_string())?;
                ensure(again == first, || format!("q={q} {name} {format:?}: reruns differ"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} matrices round-trip, all formats byte-identical on rerun"))
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: "AC1", name: "code dimensions, q <= 27", budget: secs(5), run: ac1_dimensions },
        Criterion { id: "AC2", name: "full-plane rank", budget: secs(2), run: ac2_rank_a },
        Criterion { id: "AC3", name: "rank of D", budget: secs(2), run: ac3_rank_d },
        Criterion { id: "AC4", name: "main rank identities", budget: secs(5), run: ac4_main_ranks },
        Criterion { id: "AC5", name: "tangent spans", budget: secs(2), run: ac5_tangent_spans },
        Criterion { id: "AC6", name: "counting lemmas", budget: secs(10), run: ac6_counting },
        Criterion { id: "AC7", name: "congruence witnesses", budget: secs(30), run: ac7_congruences },
        Criterion { id: "AC8", name: "group audits", budget: secs(60), run: ac8_group },
        Criterion { id: "AC8", name: "stabilizer meets [0], q = 3 mod 4", budget: secs(60), run: ac8_y11_q3 },
        Criterion { id: "AC9", name: "dims at q = 81", budget: secs(10), run: ac9_q81 },
        Criterion { id: "AC10", name: "rank and field oracles", budget: secs(60), run: ac10_oracles },
        Criterion { id: "AC11", name: "serialization", budget: secs(60), run: ac11_serialization },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "{:<5} {:<4} {:<36} {:>7.2}s / {:>3}s  {detail}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
