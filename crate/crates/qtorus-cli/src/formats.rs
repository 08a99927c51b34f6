//! JSON input and report types. Every exported type round-trips:
//! deserializing its serialized form gives the same value back.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use qtorus_core::intlat::IntMatrix;
use qtorus_core::normalform::TorusNormalForm;
use qtorus_core::repbuild::MonomialMatrix;
use qtorus_core::scalar::{AlphaMonomial, CycScalar, Scalar};
use qtorus_core::Error;

/// One problem: the root-of-unity order, the integer exponent matrix, and
/// optional parameter lists. `alpha`/`beta` entries are either the string
/// "sym" (a formal symbol) or `{"num": .., "den": .., "qexp": ..}` with
/// `den` defaulting to 1 and `qexp` to 0; a zero `num` marks a generator
/// that acts as zero and is dropped by support reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInstance {
    pub m: u64,
    #[serde(rename = "H")]
    pub h: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<ScalarSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<ScalarSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Sym(String),
    Num {
        num: i64,
        #[serde(default = "default_den")]
        den: i64,
        #[serde(default)]
        qexp: i64,
    },
}

fn default_den() -> i64 {
    1
}

/// A parameter list after classification: fully symbolic, or fully numeric
/// with `None` marking zero entries.
pub enum Params {
    Symbolic,
    Numeric(Vec<Option<CycScalar>>),
}

/// Sorts a spec list into symbolic or numeric form. Mixing the two kinds in
/// one list has no consistent evaluation and is rejected.
pub fn classify_params(specs: &[ScalarSpec], m: u64) -> Result<Params, Error> {
    let mut syms = 0usize;
    for s in specs {
        if let ScalarSpec::Sym(tag) = s {
            if tag != "sym" {
                return Err(Error::InvalidParameter(format!(
                    "unknown symbolic marker {tag:?}; the only symbolic entry is \"sym\""
                )));
            }
            syms += 1;
        }
    }
    if syms == specs.len() {
        return Ok(Params::Symbolic);
    }
    if syms != 0 {
        return Err(Error::InvalidParameter(String::from(
            "parameter list mixes \"sym\" with numeric entries; use one kind per list",
        )));
    }
    let mut vals = Vec::with_capacity(specs.len());
    for s in specs {
        match *s {
            ScalarSpec::Sym(_) => unreachable!("counted above"),
            ScalarSpec::Num { num, den, qexp } => {
                if num == 0 {
                    vals.push(None);
                } else {
                    vals.push(Some(CycScalar::new(BigInt::from(num), BigInt::from(den), qexp, m)?));
                }
            }
        }
    }
    Ok(Params::Numeric(vals))
}

/// A scalar in a report: an exact rational times a power of q, or a signed
/// monomial in the formal symbols a1, a2, ... times a power of q. Big
/// numerators and denominators are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarValue {
    Rational { num: String, den: String, qexp: u64 },
    Symbolic { sym: Vec<i64>, qexp: u64 },
}

pub fn cyc_value(s: &CycScalar) -> ScalarValue {
    ScalarValue::Rational {
        num: s.coeff().numer().to_string(),
        den: s.coeff().denom().to_string(),
        qexp: s.qexp(),
    }
}

pub fn alpha_value(s: &AlphaMonomial) -> ScalarValue {
    ScalarValue::Symbolic { sym: s.avec().to_vec(), qexp: s.qexp() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub scalar: ScalarValue,
}

/// A monomial matrix as sparse triplets, with an optional dense layout
/// (null marks a zero cell).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub name: String,
    pub dim: usize,
    pub entries: Vec<MatrixEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<Vec<Vec<Option<ScalarValue>>>>,
}

pub fn matrix_report<S: Scalar>(
    name: &str,
    mat: &MonomialMatrix<S>,
    dense: bool,
    render: impl Fn(&S) -> ScalarValue,
) -> MatrixReport {
    let entries: Vec<MatrixEntry> =
        mat.triplets().map(|(row, col, s)| MatrixEntry { row, col, scalar: render(s) }).collect();
    let dense = dense.then(|| {
        let mut grid: Vec<Vec<Option<ScalarValue>>> = vec![vec![None; mat.dim()]; mat.dim()];
        for e in &entries {
            grid[e.row][e.col] = Some(e.scalar.clone());
        }
        grid
    });
    MatrixReport { name: name.to_string(), dim: mat.dim(), entries, dense }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFormReport {
    pub m: u64,
    pub n: usize,
    pub s: usize,
    pub crank: usize,
    pub d: Vec<i64>,
    pub h: Vec<u64>,
    pub k: Vec<u64>,
    pub central_d: Vec<i64>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<i64>>,
    pub pi_degree: u64,
}

fn bigints_to_i64(xs: &[BigInt]) -> Result<Vec<i64>, Error> {
    xs.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::TooLarge(format!("entry {x} exceeds 64 bits"))))
        .collect()
}

pub fn normal_form_report(nf: &TorusNormalForm, pi_degree: u64) -> Result<NormalFormReport, Error> {
    Ok(NormalFormReport {
        m: nf.m(),
        n: nf.n(),
        s: nf.s(),
        crank: nf.crank(),
        d: bigints_to_i64(nf.dlist())?,
        h: nf.hlist().to_vec(),
        k: nf.klist().to_vec(),
        central_d: bigints_to_i64(nf.central_dlist())?,
        u: nf.u().to_i64_rows()?,
        pi_degree,
    })
}

pub fn to_int_matrix(rows: &[Vec<i64>]) -> Result<IntMatrix, Error> {
    IntMatrix::from_rows(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiDegreeReport {
    pub pi_degree: u64,
    /// Enumerated image size over (Z/m)^n; present when n <= 4 and m <= 8.
    /// Always the exact square of `pi_degree`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_force_image: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildReport {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    /// Original generator indices that survive support reduction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kept: Option<Vec<usize>>,
    pub normal: Vec<MatrixReport>,
    pub original: Vec<MatrixReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub checked: usize,
    pub failures: Vec<RelationFailureReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationFailureReport {
    pub family: String,
    pub i: usize,
    pub j: usize,
    pub expected_qexp: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplicityReport {
    pub holds: bool,
    pub dim: u64,
    pub orbit_size: u64,
    pub separated_pairs: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationOracleReport {
    pub prime: u64,
    pub q: u64,
    pub trials: u32,
    pub failures: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    pub dim: u64,
    pub pi_degree: u64,
    pub relations: RelationsReport,
    pub simplicity: SimplicityReport,
    pub generation: GenerationOracleReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub isomorphic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Vec<ScalarValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwineReport {
    pub r: Vec<u64>,
    pub matrix: MatrixReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub passed: u32,
    pub failed: u32,
    pub cases: Vec<SelftestCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestCase {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}
