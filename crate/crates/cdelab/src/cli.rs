//! Job specifications, report payloads and the dispatcher behind the
//! command-line driver. Reports are deterministic: identical jobs produce
//! byte-identical JSON (timing goes to stderr, never into the payload).

use crate::algebra::DeformedAlgebra;
use crate::cde::CdeReport;
use crate::error::{AlgebraError, CdeError, LatticeError, OslError, ScalarError};
use crate::hecke::{HeckeSpec, HeckeType};
use crate::lattices::{lift_defect_valuation, lift_idempotent_trunc};
use crate::osl2::DualityReport;
use crate::scalars::{euler_phi, parse_scalar, Cyclo, RatFunc, MAX_PHI};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// One unit of work, echoed verbatim into the report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum JobSpec {
    VerifyCde {
        input: String,
    },
    HeckeExample {
        family: String,
        q: String,
        cyclotomic_order: u32,
    },
    Osl2Duality {
        gammas: Vec<i64>,
        depth: usize,
        deform: bool,
    },
    LiftDemo {
        input: String,
        idempotent: String,
        precision: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LiftCertificate {
    pub precision: usize,
    /// Coordinates of the lift, as polynomials in t.
    pub coordinates: Vec<String>,
    /// Exact t-adic valuation of e^2 - e read as polynomials; `None` when
    /// the defect vanishes identically.
    pub defect_valuation: Option<i64>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Payload {
    Cde(CdeReport),
    Duality(DualityReport),
    Lift(LiftCertificate),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub job: JobSpec,
    pub version: String,
    pub payload: Payload,
}

/// Errors mapped to process exit codes: 2 input/schema, 3 audit failure,
/// 4 unsupported input (non-split algebra, degenerate parameter).
#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("{0}")]
    Input(String),
    #[error("mathematical audit failed: {0}")]
    Audit(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Input(_) => 2,
            JobError::Audit(_) => 3,
            JobError::Unsupported(_) => 4,
        }
    }
}

impl From<ScalarError> for JobError {
    fn from(e: ScalarError) -> Self {
        JobError::Input(e.to_string())
    }
}

impl From<AlgebraError> for JobError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NonSplit { .. } | AlgebraError::DegenerateParameter { .. } => {
                JobError::Unsupported(e.to_string())
            }
            other => JobError::Input(other.to_string()),
        }
    }
}

impl From<CdeError> for JobError {
    fn from(e: CdeError) -> Self {
        match e {
            CdeError::AuditFailure { .. } => JobError::Audit(e.to_string()),
            CdeError::Algebra(inner) => inner.into(),
            other => JobError::Input(other.to_string()),
        }
    }
}

impl From<OslError> for JobError {
    fn from(e: OslError) -> Self {
        match e {
            OslError::DualityMismatch { .. } => JobError::Audit(e.to_string()),
            OslError::Algebra(inner) => inner.into(),
            other => JobError::Input(other.to_string()),
        }
    }
}

impl From<LatticeError> for JobError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Algebra(inner) => inner.into(),
            other => JobError::Input(other.to_string()),
        }
    }
}

/// On-disk algebra description.
#[derive(Deserialize)]
struct AlgebraFile {
    field: FieldSpec,
    dimension: usize,
    /// 1-based index of the unit basis element.
    unit: usize,
    /// Row-major over (i, j): sparse rows of [k, scalar] pairs, k 1-based.
    structure: Vec<Vec<(usize, String)>>,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct FieldSpec {
    cyclotomic_order: u32,
}

/// Load an algebra over R from the JSON schema. Errors carry the offending
/// location in JSON-pointer style.
pub fn load_algebra_json(path: &Path) -> Result<(DeformedAlgebra, u32), JobError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| JobError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra_json(&text)
}

pub fn parse_algebra_json(text: &str) -> Result<(DeformedAlgebra, u32), JobError> {
    let file: AlgebraFile = serde_json::from_str(text)
        .map_err(|e| JobError::Input(format!("algebra schema: {e}")))?;
    let order = file.field.cyclotomic_order;
    if order < 1 || euler_phi(order) > MAX_PHI {
        return Err(JobError::Input(format!(
            "/field/cyclotomic_order: order {order} not supported (phi must be <= {MAX_PHI})"
        )));
    }
    let d = file.dimension;
    if file.structure.len() != d * d {
        return Err(JobError::Input(format!(
            "/structure: expected {} sparse rows (dimension^2), found {}",
            d * d,
            file.structure.len()
        )));
    }
    if file.unit == 0 || file.unit > d {
        return Err(JobError::Input(format!(
            "/unit: 1-based index {} out of range 1..={d}",
            file.unit
        )));
    }
    let mut constants = vec![vec![vec![RatFunc::zero(); d]; d]; d];
    for (row_idx, row) in file.structure.iter().enumerate() {
        let (i, j) = (row_idx / d, row_idx % d);
        for (entry_idx, (k, scalar)) in row.iter().enumerate() {
            if *k == 0 || *k > d {
                return Err(JobError::Input(format!(
                    "/structure/{row_idx}/{entry_idx}: basis index {k} out of range 1..={d}"
                )));
            }
            let value = parse_scalar(scalar, order).map_err(|e| {
                JobError::Input(format!("/structure/{row_idx}/{entry_idx}: {e}"))
            })?;
            constants[i][j][*k - 1] = value;
        }
    }
    let algebra = DeformedAlgebra::new(constants, file.unit - 1, file.labels)?;
    Ok((algebra, order))
}

/// Parse an element expression over an algebra: scalars in the usual
/// grammar, basis labels as identifiers, `+ - * ^` and division by scalars.
pub fn parse_element(
    text: &str,
    algebra: &DeformedAlgebra,
    order: u32,
) -> Result<Vec<RatFunc>, JobError> {
    let mut parser = ElementParser {
        bytes: text.as_bytes(),
        pos: 0,
        algebra,
        order,
    };
    let v = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(v)
}

struct ElementParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    algebra: &'a DeformedAlgebra,
    order: u32,
}

impl<'a> ElementParser<'a> {
    fn error(&self, message: &str) -> JobError {
        JobError::Input(format!(
            "element expression, byte {}: {message}",
            self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn scalar_to_element(&self, s: RatFunc) -> Vec<RatFunc> {
        let mut v = vec![RatFunc::zero(); self.algebra.dim()];
        v[self.algebra.generic_fiber().unit_index()] = s;
        v
    }

    fn as_scalar(&self, v: &[RatFunc]) -> Option<RatFunc> {
        let unit = self.algebra.generic_fiber().unit_index();
        for (i, x) in v.iter().enumerate() {
            if i != unit && !x.is_zero() {
                return None;
            }
        }
        Some(v[unit].clone())
    }

    fn expr(&mut self) -> Result<Vec<RatFunc>, JobError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.iter().zip(&rhs).map(|(a, b)| a.add(b)).collect();
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.iter().zip(&rhs).map(|(a, b)| a.sub(b)).collect();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<RatFunc>, JobError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = self.algebra.generic_fiber().multiply(&acc, &rhs);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let scalar = self
                        .as_scalar(&rhs)
                        .ok_or_else(|| self.error("division only by scalar elements"))?;
                    let inv = scalar
                        .inv()
                        .ok_or_else(|| self.error("division by zero"))?;
                    acc = acc.iter().map(|x| x.mul(&inv)).collect();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Vec<RatFunc>, JobError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.iter().map(RatFunc::neg).collect())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    if self.bytes.get(self.pos) == Some(&b'-') {
                        self.pos += 1;
                    }
                    while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                    let e: i64 = text
                        .parse()
                        .map_err(|_| self.error("expected an integer exponent"))?;
                    if e < 0 {
                        let scalar = self
                            .as_scalar(&base)
                            .ok_or_else(|| self.error("negative powers of non-scalars"))?;
                        return Ok(self.scalar_to_element(scalar.pow(e).map_err(|_| {
                            self.error("zero has no negative powers")
                        })?));
                    }
                    let mut acc = self.scalar_to_element(RatFunc::one());
                    for _ in 0..e {
                        acc = self.algebra.generic_fiber().multiply(&acc, &base);
                    }
                    Ok(acc)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Vec<RatFunc>, JobError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let labels = self.algebra.generic_fiber().labels();
                if let Some(idx) = labels.iter().position(|l| l == word) {
                    let mut v = vec![RatFunc::zero(); self.algebra.dim()];
                    v[idx] = RatFunc::one();
                    return Ok(v);
                }
                if word == "z" {
                    return Ok(self.scalar_to_element(RatFunc::constant(Cyclo::zeta(self.order))));
                }
                if word == "t" {
                    return Ok(self.scalar_to_element(RatFunc::var()));
                }
                if let Ok(v) = word.parse::<i64>() {
                    return Ok(self.scalar_to_element(RatFunc::from_int(v)));
                }
                self.pos = start;
                Err(self.error(&format!("unknown identifier '{word}'")))
            }
            Some(_) => Err(self.error("expected a label, number, or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Execute one job.
pub fn run_job(spec: &JobSpec) -> Result<Report, JobError> {
    let payload = match spec {
        JobSpec::VerifyCde { input } => {
            let (algebra, _) = load_algebra_json(Path::new(input))?;
            Payload::Cde(crate::cde::cde_verify(&algebra, None)?)
        }
        JobSpec::HeckeExample {
            family,
            q,
            cyclotomic_order,
        } => {
            let family = match family.as_str() {
                "A1" => HeckeType::A1,
                "A2" => HeckeType::A2,
                other => {
                    return Err(JobError::Input(format!(
                        "unknown Hecke type '{other}', expected A1 or A2"
                    )))
                }
            };
            let q = parse_scalar(q, *cyclotomic_order)?;
            let spec = HeckeSpec::new(family, q)?;
            Payload::Cde(crate::cde::hecke_cde_report(&spec)?)
        }
        JobSpec::Osl2Duality {
            gammas,
            depth,
            deform,
        } => {
            let g: Vec<Cyclo> = gammas.iter().map(|&v| Cyclo::from_int(v)).collect();
            Payload::Duality(crate::osl2::duality_report(&g, *depth, *deform)?)
        }
        JobSpec::LiftDemo {
            input,
            idempotent,
            precision,
        } => {
            let (algebra, order) = load_algebra_json(Path::new(input))?;
            let element = parse_element(idempotent, &algebra, order)?;
            let reduced: Result<Vec<Cyclo>, ScalarError> =
                element.iter().map(RatFunc::reduce_at_zero).collect();
            let reduced = reduced.map_err(|e| {
                JobError::Input(format!("idempotent must be regular at t = 0: {e}"))
            })?;
            let lift = lift_idempotent_trunc(&reduced, &algebra, *precision)?;
            let defect = lift_defect_valuation(&lift, &algebra);
            let ok = defect.is_none_or(|v| v >= *precision as i64);
            Payload::Lift(LiftCertificate {
                precision: *precision,
                coordinates: lift
                    .iter()
                    .map(|s| s.to_ratfunc().to_string())
                    .collect(),
                defect_valuation: defect,
                ok,
            })
        }
    };
    Ok(Report {
        job: spec.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        payload,
    })
}

/// Render a report as a human-readable table.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    match &report.payload {
        Payload::Cde(cde) => {
            let _ = writeln!(out, "generic simples:");
            for s in &cde.generic_simples {
                let _ = writeln!(out, "  {} (dim {})", s.label, s.dim);
            }
            let _ = writeln!(out, "special simples:");
            for s in &cde.special_simples {
                let _ = writeln!(
                    out,
                    "  {} (dim {}, projective cover dim {})",
                    s.label, s.dim, s.projective_cover_dim
                );
            }
            for (name, m) in [("D", &cde.d), ("C", &cde.c), ("E", &cde.e)] {
                let _ = writeln!(out, "{name} =");
                for row in m {
                    let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                    let _ = writeln!(out, "  [{}]", cells.join(" "));
                }
            }
            let _ = writeln!(out, "audits:");
            for a in &cde.audits {
                let _ = writeln!(
                    out,
                    "  {}: {}",
                    a.name,
                    if a.passed { "pass" } else { "FAIL" }
                );
            }
        }
        Payload::Duality(d) => {
            let _ = writeln!(
                out,
                "window: gammas = [{}], depth = {}",
                d.gammas.join(", "),
                d.depth
            );
            let _ = writeln!(out, "{:>8} {:>8} {:>4} {:>4} ok", "lambda", "mu", "lhs", "rhs");
            for p in &d.pairs {
                let _ = writeln!(
                    out,
                    "{:>8} {:>8} {:>4} {:>4} {}",
                    p.lambda,
                    p.mu,
                    p.lhs,
                    p.rhs,
                    if p.equal { "yes" } else { "NO" }
                );
            }
        }
        Payload::Lift(l) => {
            let _ = writeln!(out, "precision: t^{}", l.precision);
            let _ = writeln!(out, "lift coordinates:");
            for (i, c) in l.coordinates.iter().enumerate() {
                let _ = writeln!(out, "  e[{i}] = {c}");
            }
            let _ = writeln!(
                out,
                "defect valuation: {}",
                l.defect_valuation
                    .map_or("infinite (exact idempotent)".into(), |v| v.to_string())
            );
            let _ = writeln!(out, "ok: {}", l.ok);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIVIAL: &str = r#"{
        "field": {"cyclotomic_order": 1},
        "dimension": 1,
        "unit": 1,
        "structure": [[[1, "1"]]],
        "labels": ["1"]
    }"#;

    const A1: &str = r#"{
        "field": {"cyclotomic_order": 1},
        "dimension": 2,
        "unit": 1,
        "structure": [
            [[1, "1"]], [[2, "1"]],
            [[2, "1"]], [[1, "-1 + t"], [2, "-2 + t"]]
        ],
        "labels": ["1", "s"]
    }"#;

    #[test]
    fn trivial_algebra_loads_and_verifies() {
        let (algebra, _) = parse_algebra_json(TRIVIAL).unwrap();
        let report = crate::cde::cde_verify(&algebra, None).unwrap();
        assert_eq!(report.d, vec![vec![1]]);
    }

    #[test]
    fn a1_file_matches_the_builtin() {
        // structure encodes s^2 = (q - 1) s + q at q = -1 + t
        let (algebra, _) = parse_algebra_json(A1).unwrap();
        let report = crate::cde::cde_verify(&algebra, None).unwrap();
        assert_eq!(report.d, vec![vec![1, 1]]);
        assert_eq!(report.c, vec![vec![2]]);
    }

    #[test]
    fn schema_errors_carry_locations() {
        let bad = TRIVIAL.replace("\"1\"", "\"1/(t-t)\"");
        match parse_algebra_json(&bad) {
            Err(JobError::Input(msg)) => assert!(msg.contains("/structure/0/0"), "{msg}"),
            other => panic!("expected input error, got ok = {}", other.is_ok()),
        }
        let bad_unit = TRIVIAL.replace("\"unit\": 1", "\"unit\": 5");
        assert!(parse_algebra_json(&bad_unit).is_err());
    }

    #[test]
    fn element_expressions_evaluate_in_the_algebra() {
        let (algebra, order) = parse_algebra_json(A1).unwrap();
        // (s + 1)(s + 1) = s^2 + 2s + 1 = (q + 1) + (q + 1) s at q = -1 + t
        let sq = parse_element("(s + 1)^2", &algebra, order).unwrap();
        let q1 = parse_scalar("t", 1).unwrap();
        assert_eq!(sq[0], q1);
        assert_eq!(sq[1], q1);
        // scalar division
        let half = parse_element("s / 2", &algebra, order).unwrap();
        assert!(half[0].is_zero());
        assert_eq!(
            half[1],
            parse_scalar("1/2", 1).unwrap()
        );
        assert!(parse_element("1 / s", &algebra, order).is_err());
        assert!(parse_element("nope", &algebra, order).is_err());
    }

    #[test]
    fn lift_job_produces_a_certificate() {
        let dir = std::env::temp_dir().join("cdelab-test-lift");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("a1.json");
        std::fs::write(&path, A1).unwrap();
        let job = JobSpec::LiftDemo {
            input: path.to_string_lossy().into_owned(),
            idempotent: "1".into(),
            precision: 4,
        };
        let report = run_job(&job).unwrap();
        match &report.payload {
            Payload::Lift(cert) => {
                assert!(cert.ok);
                assert!(cert.defect_valuation.is_none());
            }
            other => panic!("expected lift payload, got {other:?}"),
        }
    }

    #[test]
    fn reports_round_trip_and_are_deterministic() {
        let job = JobSpec::HeckeExample {
            family: "A1".into(),
            q: "-1 + t".into(),
            cyclotomic_order: 1,
        };
        let report = run_job(&job).unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        // bit-identical across runs
        let report2 = run_job(&job).unwrap();
        let json2 = serde_json::to_string_pretty(&report2).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn exit_codes_classify_errors() {
        let degenerate = run_job(&JobSpec::HeckeExample {
            family: "A2".into(),
            q: "-1".into(),
            cyclotomic_order: 1,
        });
        match degenerate {
            Err(e) => assert_eq!(e.exit_code(), 4),
            Ok(_) => panic!("degenerate parameter must fail"),
        }
        let missing = run_job(&JobSpec::VerifyCde {
            input: "/nonexistent/file.json".into(),
        });
        match missing {
            Err(e) => assert_eq!(e.exit_code(), 2),
            Ok(_) => panic!("missing file must fail"),
        }
    }
}
