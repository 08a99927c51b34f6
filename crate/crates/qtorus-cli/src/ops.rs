//! Command implementations: each takes a parsed instance and returns a
//! report value; the caller decides formatting and exit codes.

use qtorus_core::analysis::{
    are_isomorphic, build_intertwiner, formal_simplicity_certificate, instantiate_finite_field,
    random_vector_generation_test, reduce_zero_support,
};
use qtorus_core::intlat::brute_force_image_size;
use qtorus_core::normalform::{compute_normal_form, pi_degree, ExponentData, TorusNormalForm};
use qtorus_core::repbuild::{build_generators, MonomialMatrix, SimpleModuleRep};
use qtorus_core::scalar::{is_prime_u64, AlphaMonomial, CycScalar, Scalar};
use qtorus_core::Error;

use crate::formats::{
    alpha_value, classify_params, cyc_value, matrix_report, normal_form_report, to_int_matrix,
    BuildReport, ClassifyReport, GenerationOracleReport, IntertwineReport, MatrixReport,
    NormalFormReport, Params, PiDegreeReport, ProblemInstance, RelationFailureReport,
    RelationsReport, ScalarSpec, ScalarValue, SimplicityReport, VerifyReport,
};

pub fn exponent_data(inst: &ProblemInstance) -> Result<ExponentData, Error> {
    ExponentData::new(to_int_matrix(&inst.h)?, inst.m)
}

/// A parameter list resolved against the algebra: the normal form of the
/// (possibly support-reduced) exponent data, numeric values when given, and
/// bookkeeping for the report.
pub struct Prepared {
    pub ed: ExponentData,
    pub nf: TorusNormalForm,
    /// None means the generic symbolic point.
    pub values: Option<Vec<CycScalar>>,
    pub notice: Option<String>,
    /// Surviving original generator indices; None when nothing was dropped.
    pub kept: Option<Vec<usize>>,
}

pub fn prepare(ed: &ExponentData, specs: Option<&[ScalarSpec]>, which: &str) -> Result<Prepared, Error> {
    let params = match specs {
        None => Params::Symbolic,
        Some(s) => {
            if s.len() != ed.n() {
                return Err(Error::DimensionMismatch(format!(
                    "{which} has {} entries but H has {} generators",
                    s.len(),
                    ed.n()
                )));
            }
            classify_params(s, ed.m())?
        }
    };
    match params {
        Params::Symbolic => Ok(Prepared {
            ed: ed.clone(),
            nf: compute_normal_form(ed)?,
            values: None,
            notice: None,
            kept: None,
        }),
        Params::Numeric(opts) if opts.iter().all(Option::is_some) => {
            let values = opts.into_iter().map(|o| o.expect("checked")).collect();
            Ok(Prepared {
                ed: ed.clone(),
                nf: compute_normal_form(ed)?,
                values: Some(values),
                notice: None,
                kept: None,
            })
        }
        Params::Numeric(opts) => {
            let (red, values, kept) = reduce_zero_support(ed, &opts)?;
            let notice = format!(
                "dropped {} generator(s) with zero parameter; surviving values attach to the normal-form generators of the reduced algebra",
                ed.n() - kept.len()
            );
            Ok(Prepared {
                nf: compute_normal_form(&red)?,
                ed: red,
                values: Some(values),
                notice: Some(notice),
                kept: Some(kept),
            })
        }
    }
}

pub fn normal_form(inst: &ProblemInstance) -> Result<NormalFormReport, Error> {
    let ed = exponent_data(inst)?;
    let nf = compute_normal_form(&ed)?;
    normal_form_report(&nf, pi_degree(&ed)?)
}

pub fn pi_degree_report(inst: &ProblemInstance) -> Result<PiDegreeReport, Error> {
    let ed = exponent_data(inst)?;
    let pd = pi_degree(&ed)?;
    let brute_force_image = if ed.n() <= 4 && ed.m() <= 8 {
        let image = brute_force_image_size(ed.h(), ed.m())?;
        if pd * pd != image {
            return Err(Error::InvariantViolation(format!(
                "enumerated image size {image} disagrees with PI degree {pd}"
            )));
        }
        Some(image)
    } else {
        None
    };
    Ok(PiDegreeReport { pi_degree: pd, brute_force_image })
}

fn symbolic_rep(nf: &TorusNormalForm) -> Result<SimpleModuleRep, Error> {
    build_generators(nf, &AlphaMonomial::symbols(nf.n(), nf.m())?)
}

fn check_dense(dense: bool, dim: usize) -> Result<(), Error> {
    if dense && dim > 64 {
        return Err(Error::TooLarge(format!(
            "dense output is capped at dimension 64; this module has dimension {dim}"
        )));
    }
    Ok(())
}

fn render_family<S: Scalar>(
    prefix: &str,
    mats: &[MonomialMatrix<S>],
    dense: bool,
    render: impl Fn(&S) -> ScalarValue,
) -> Vec<MatrixReport> {
    mats.iter()
        .enumerate()
        .map(|(i, m)| matrix_report(&format!("{prefix}{}", i + 1), m, dense, &render))
        .collect()
}

pub fn build(inst: &ProblemInstance, dense: bool) -> Result<BuildReport, Error> {
    let ed = exponent_data(inst)?;
    let prep = prepare(&ed, inst.alpha.as_deref(), "alpha")?;
    let rep = symbolic_rep(&prep.nf)?;
    check_dense(dense, rep.dim())?;
    let (normal, original) = match &prep.values {
        None => (
            render_family("X", rep.normal_generators(), dense, alpha_value),
            render_family("x", rep.original_generators(), dense, alpha_value),
        ),
        Some(values) => {
            let q = CycScalar::q_power(1, prep.nf.m())?;
            let ev = rep.evaluate(&q, values)?;
            (
                render_family("X", &ev.normal, dense, cyc_value),
                render_family("x", &ev.original, dense, cyc_value),
            )
        }
    };
    Ok(BuildReport { dim: rep.dim(), notice: prep.notice, kept: prep.kept, normal, original })
}

/// Smallest prime p with p ≡ 1 (mod m), so GF(p)* has an element of order m.
pub fn smallest_prime_one_mod(m: u64) -> u64 {
    let mut p = m + 1;
    loop {
        if p >= 2 && is_prime_u64(p) {
            return p;
        }
        p += m;
    }
}

pub struct VerifyOpts {
    pub prime: Option<u64>,
    pub seed: u64,
    pub trials: u32,
}

pub fn verify(inst: &ProblemInstance, opts: &VerifyOpts) -> Result<VerifyReport, Error> {
    let ed = exponent_data(inst)?;
    let prep = prepare(&ed, inst.alpha.as_deref(), "alpha")?;
    let rep = symbolic_rep(&prep.nf)?;

    let relations = rep.verify_relations()?;
    let cert = formal_simplicity_certificate(&prep.nf)?;
    let p = opts.prime.unwrap_or_else(|| smallest_prime_one_mod(prep.nf.m()));
    let conc = instantiate_finite_field(&rep, p, opts.seed)?;
    let generation =
        random_vector_generation_test(&conc.rep.normal, conc.rep.dim, p, opts.trials, opts.seed)?;
    let dim = prep.nf.dim()?;
    let pd = pi_degree(&prep.ed)?;

    let mut notice = prep.notice;
    if prep.values.is_some() {
        let extra = "numeric parameters select the support; relations and simplicity are verified at the generic symbolic point";
        notice = Some(match notice {
            Some(n) => format!("{n}; {extra}"),
            None => extra.to_string(),
        });
    }
    let ok = relations.ok() && cert.holds() && generation.ok() && dim == pd;
    Ok(VerifyReport {
        ok,
        notice,
        dim,
        pi_degree: pd,
        relations: RelationsReport {
            checked: relations.checked,
            failures: relations
                .failures
                .iter()
                .map(|f| RelationFailureReport {
                    family: f.family.to_string(),
                    i: f.i,
                    j: f.j,
                    expected_qexp: f.expected_qexp,
                })
                .collect(),
        },
        simplicity: SimplicityReport {
            holds: cert.holds(),
            dim: cert.dim,
            orbit_size: cert.orbit_size,
            separated_pairs: cert.separated_pairs,
            exhaustive: cert.exhaustive,
        },
        generation: GenerationOracleReport {
            prime: p,
            q: conc.q,
            trials: generation.trials,
            failures: generation.failures,
        },
    })
}

fn numeric_prepared(ed: &ExponentData, specs: Option<&[ScalarSpec]>, which: &str) -> Result<Prepared, Error> {
    let specs = specs
        .ok_or_else(|| Error::InvalidParameter(format!("a {which} list is required for this command")))?;
    let prep = prepare(ed, Some(specs), which)?;
    if prep.values.is_none() {
        return Err(Error::UnsupportedDomain(format!(
            "{which} is symbolic; isomorphism comparison needs numeric values"
        )));
    }
    Ok(prep)
}

fn merge_notices(a: Option<String>, b: Option<String>) -> Option<String> {
    match (a, b) {
        (Some(x), Some(y)) => Some(format!("alpha: {x}; beta: {y}")),
        (Some(x), None) => Some(format!("alpha: {x}")),
        (None, Some(y)) => Some(format!("beta: {y}")),
        (None, None) => None,
    }
}

fn support_of(prep: &Prepared, n: usize) -> Vec<usize> {
    prep.kept.clone().unwrap_or_else(|| (0..n).collect())
}

struct ClassifiedPair {
    nf: TorusNormalForm,
    alpha: Vec<CycScalar>,
    beta: Vec<CycScalar>,
    notice: Option<String>,
}

enum Classified {
    Decided(ClassifyReport),
    Comparable(ClassifiedPair),
}

fn classify_inner(inst: &ProblemInstance) -> Result<Classified, Error> {
    let ed = exponent_data(inst)?;
    let a = numeric_prepared(&ed, inst.alpha.as_deref(), "alpha")?;
    let b = numeric_prepared(&ed, inst.beta.as_deref(), "beta")?;
    let notice = merge_notices(a.notice.clone(), b.notice.clone());
    if support_of(&a, ed.n()) != support_of(&b, ed.n()) {
        return Ok(Classified::Decided(ClassifyReport {
            isomorphic: false,
            r: None,
            scale: None,
            reason: Some(String::from(
                "parameter supports differ, so the modules kill different generators",
            )),
            notice,
        }));
    }
    Ok(Classified::Comparable(ClassifiedPair {
        nf: a.nf,
        alpha: a.values.expect("numeric by construction"),
        beta: b.values.expect("numeric by construction"),
        notice,
    }))
}

pub fn classify(inst: &ProblemInstance) -> Result<ClassifyReport, Error> {
    let pair = match classify_inner(inst)? {
        Classified::Decided(report) => return Ok(report),
        Classified::Comparable(pair) => pair,
    };
    match are_isomorphic(&pair.nf, &pair.alpha, &pair.beta)? {
        Some(w) => Ok(ClassifyReport {
            isomorphic: true,
            r: Some(w.rlist),
            scale: Some(w.scale.iter().map(cyc_value).collect()),
            reason: None,
            notice: pair.notice,
        }),
        None => Ok(ClassifyReport {
            isomorphic: false,
            r: None,
            scale: None,
            reason: Some(String::from(
                "no witness: the power, ratio, and central conditions cannot all be met",
            )),
            notice: pair.notice,
        }),
    }
}

pub enum IntertwineOutcome {
    Built(IntertwineReport),
    NotIsomorphic(ClassifyReport),
}

pub fn intertwine(inst: &ProblemInstance, dense: bool) -> Result<IntertwineOutcome, Error> {
    let pair = match classify_inner(inst)? {
        Classified::Decided(report) => return Ok(IntertwineOutcome::NotIsomorphic(report)),
        Classified::Comparable(pair) => pair,
    };
    match are_isomorphic(&pair.nf, &pair.alpha, &pair.beta)? {
        Some(w) => {
            let phi = build_intertwiner(&pair.nf, &pair.alpha, &pair.beta, &w)?;
            check_dense(dense, phi.dim())?;
            Ok(IntertwineOutcome::Built(IntertwineReport {
                r: w.rlist,
                matrix: matrix_report("phi", &phi, dense, cyc_value),
            }))
        }
        None => Ok(IntertwineOutcome::NotIsomorphic(ClassifyReport {
            isomorphic: false,
            r: None,
            scale: None,
            reason: Some(String::from(
                "no witness: the power, ratio, and central conditions cannot all be met",
            )),
            notice: pair.notice,
        })),
    }
}
