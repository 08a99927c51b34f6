//! Embedded corpus of instances with independently known answers, run as a
//! smoke test of the whole pipeline.

use num_integer::Integer;

use qtorus_core::analysis::{are_isomorphic, build_intertwiner, formal_simplicity_certificate};
use qtorus_core::intlat::{brute_force_image_size, IntMatrix};
use qtorus_core::normalform::{compute_normal_form, pi_degree, ExponentData};
use qtorus_core::repbuild::build_generators;
use qtorus_core::scalar::{multiplicative_order, root_of_unity, AlphaMonomial, CycScalar};

use crate::formats::{SelftestCase, SelftestReport};

fn mat(rows: &[&[i64]]) -> Result<IntMatrix, String> {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .map_err(|e| e.to_string())
}

fn expect<T: PartialEq + core::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn rank_two_grid() -> Result<String, String> {
    let mut cases = 0u32;
    for m in 2..=8u64 {
        for r in 1..m as i64 {
            let ed = ExponentData::new(mat(&[&[0, r], &[-r, 0]])?, m).map_err(|e| e.to_string())?;
            let pd = pi_degree(&ed).map_err(|e| e.to_string())?;
            expect(&format!("pi degree at r = {r}, m = {m}"), pd, m / (r as u64).gcd(&m))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} rank-2 instances match m/gcd(r,m)"))
}

fn pi_degree_cross_check() -> Result<String, String> {
    let ed = ExponentData::new(mat(&[&[0, 4], &[-4, 0]])?, 6).map_err(|e| e.to_string())?;
    let pd = pi_degree(&ed).map_err(|e| e.to_string())?;
    expect("pi degree", pd, 3)?;
    let image = brute_force_image_size(ed.h(), 6).map_err(|e| e.to_string())?;
    expect("enumerated image size", image, 9)?;
    Ok(String::from("pi degree 3, enumerated image 9"))
}

fn running_instance() -> Result<String, String> {
    let ed = ExponentData::new(mat(&[&[0, 2, 1], &[-2, 0, 3], &[-1, -3, 0]])?, 4)
        .map_err(|e| e.to_string())?;
    let nf = compute_normal_form(&ed).map_err(|e| e.to_string())?;
    expect("s", nf.s(), 1)?;
    expect("d", nf.dlist().iter().map(|d| d.to_string()).collect::<Vec<_>>(), vec![String::from("1")])?;
    expect("k", nf.klist().to_vec(), vec![4])?;
    expect("crank", nf.crank(), 1)?;
    expect("dim", nf.dim().map_err(|e| e.to_string())?, 4)?;
    let rep = build_generators(&nf, &AlphaMonomial::symbols(3, 4).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let report = rep.verify_relations().map_err(|e| e.to_string())?;
    if !report.ok() {
        return Err(format!("relations failed: {:?}", report.failures));
    }
    let cert = formal_simplicity_certificate(&nf).map_err(|e| e.to_string())?;
    if !cert.holds() {
        return Err(format!("simplicity certificate failed: {cert:?}"));
    }
    Ok(format!("normal form (s = 1, k = [4]), {} relations verified, simplicity holds", report.checked))
}

fn commutative_instance() -> Result<String, String> {
    let ed = ExponentData::new(IntMatrix::zeros(3, 3), 5).map_err(|e| e.to_string())?;
    let nf = compute_normal_form(&ed).map_err(|e| e.to_string())?;
    expect("s", nf.s(), 0)?;
    expect("crank", nf.crank(), 3)?;
    expect("dim", nf.dim().map_err(|e| e.to_string())?, 1)?;
    Ok(String::from("H = 0 gives s = 0, crank = n, one-dimensional modules"))
}

fn uniparameter_instance() -> Result<String, String> {
    let h = IntMatrix::from_fn(4, 4, |i, j| match i.cmp(&j) {
        core::cmp::Ordering::Less => 1.into(),
        core::cmp::Ordering::Greater => (-1).into(),
        core::cmp::Ordering::Equal => 0.into(),
    });
    let ed = ExponentData::new(h, 6).map_err(|e| e.to_string())?;
    let pd = pi_degree(&ed).map_err(|e| e.to_string())?;
    expect("pi degree", pd, 36)?;
    let nf = compute_normal_form(&ed).map_err(|e| e.to_string())?;
    expect("dim", nf.dim().map_err(|e| e.to_string())?, 36)?;
    Ok(String::from("uniparameter 4-generator instance has dimension 36 = pi degree"))
}

fn finite_field_root() -> Result<String, String> {
    let q = root_of_unity(13, 4).map_err(|e| e.to_string())?;
    expect("q in GF(13)", q, 8)?;
    expect("order of q", multiplicative_order(q, 13).map_err(|e| e.to_string())?, 4)?;
    Ok(String::from("GF(13) element 8 has exact order 4"))
}

fn planted_isomorphism() -> Result<String, String> {
    let ed = ExponentData::new(mat(&[&[0, 2, 1], &[-2, 0, 3], &[-1, -3, 0]])?, 4)
        .map_err(|e| e.to_string())?;
    let nf = compute_normal_form(&ed).map_err(|e| e.to_string())?;
    let c = |num: i64, qexp: i64| {
        CycScalar::new(num.into(), 1.into(), qexp, 4).map_err(|e| e.to_string())
    };
    let alpha = vec![c(2, 0)?, c(3, 0)?, c(5, 0)?];
    // beta differs by a fourth root of unity on X1 and a shift by r = 2 on X2.
    let beta = vec![c(2, 1)?, c(3, -2)?, c(5, 0)?];
    let w = are_isomorphic(&nf, &alpha, &beta)
        .map_err(|e| e.to_string())?
        .ok_or("planted pair not recognized")?;
    expect("witness r", w.rlist.clone(), vec![2])?;
    build_intertwiner(&nf, &alpha, &beta, &w).map_err(|e| e.to_string())?;
    let corrupted = vec![c(2, 1)?, c(3, -2)?, c(7, 0)?];
    if are_isomorphic(&nf, &alpha, &corrupted).map_err(|e| e.to_string())?.is_some() {
        return Err(String::from("central corruption not detected"));
    }
    Ok(String::from("witness r = [2] recovered, intertwiner verified, corrupted pair refused"))
}

type Case = fn() -> Result<String, String>;

pub fn run() -> SelftestReport {
    let cases: Vec<(&str, Case)> = vec![
        ("rank-2 grid", rank_two_grid),
        ("pi-degree cross-check", pi_degree_cross_check),
        ("three-generator running instance", running_instance),
        ("commutative instance", commutative_instance),
        ("uniparameter instance", uniparameter_instance),
        ("finite-field root of unity", finite_field_root),
        ("planted isomorphism", planted_isomorphism),
    ];
    let mut report = SelftestReport { passed: 0, failed: 0, cases: Vec::new() };
    for (name, f) in cases {
        match f() {
            Ok(detail) => {
                report.passed += 1;
                report.cases.push(SelftestCase { name: name.to_string(), ok: true, detail });
            }
            Err(detail) => {
                report.failed += 1;
                report.cases.push(SelftestCase { name: name.to_string(), ok: false, detail });
            }
        }
    }
    report
}
