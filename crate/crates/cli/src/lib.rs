//! Library side of the `jacring` command-line tool: requests, dispatch and
//! deterministic JSON reports.

pub mod error;
pub mod random;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use jacring::{
    aj_image_dimension_in, euler_characteristic, hodge_numbers_in, parse_poly, FieldSpec, HyperPoly,
    JacobianRing, Route, SmoothnessCertificate, WSpace,
};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use error::{CliError, ErrorKind, Result};
pub use random::{random_hypersurface, Support};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Overrides the default field when `--field` is absent.
pub const FIELD_ENV: &str = "JACRING_DEFAULT_FIELD";

/// Pairing matrices up to this many entries are echoed in full.
const PAIRING_ENTRY_LIMIT: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hilbert,
    Smooth,
    Hodge,
    AjImage,
    Pairing,
    Random,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Smooth => "smooth",
            Command::Hodge => "hodge",
            Command::AjImage => "aj-image",
            Command::Pairing => "pairing",
            Command::Random => "random",
        }
    }
}

/// Where the polynomial text comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolySource {
    Path(PathBuf),
    Text(String),
}

/// Inclusive degree range `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRange {
    pub start: i64,
    pub end: i64,
}

impl DegreeRange {
    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for DegreeRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("bad degree range `{s}` (expected A..B)"));
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let start: i64 = a.trim().parse().map_err(|_| bad())?;
        let end: i64 = b.trim().parse().map_err(|_| bad())?;
        if start > end || end - start > 10_000 {
            return Err(bad());
        }
        Ok(DegreeRange { start, end })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandRequest {
    pub command: Command,
    pub poly: Option<PolySource>,
    pub field: FieldSpec,
    pub degrees: Option<DegreeRange>,
    pub w: Option<PathBuf>,
    pub seed: Option<u64>,
    pub d: Option<u32>,
    pub support: Support,
    pub route: Route,
}

impl CommandRequest {
    pub fn new(command: Command) -> Self {
        CommandRequest {
            command,
            poly: None,
            field: FieldSpec::default(),
            degrees: None,
            w: None,
            seed: None,
            d: None,
            support: Support::Full,
            route: Route::Auto,
        }
    }
}

/// Field from `--field`, else the environment override, else fp:65521.
pub fn resolve_field(flag: Option<&str>, env: Option<&str>) -> Result<FieldSpec> {
    match flag.or(env) {
        Some(text) => text.parse().map_err(|e: jacring::Error| CliError::Usage(e.to_string())),
        None => Ok(FieldSpec::default()),
    }
}

/// Provenance of an input polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    /// "sha256:<hex>" of the canonical text.
    pub digest: String,
    pub degree: u32,
    pub terms: usize,
    /// Generator line of a file written by `random`, if present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_digest: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JsonReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub field: FieldSpec,
    pub results: Value,
    pub warnings: Vec<String>,
    pub version: String,
}

/// What a successful run produces.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Report(JsonReport),
    /// Text of a polynomial file (the `random` command).
    PolyFile(String),
}

impl Output {
    pub fn render(&self, pretty: bool) -> String {
        match self {
            Output::Report(r) => render_json(r, pretty),
            Output::PolyFile(text) => text.clone(),
        }
    }
}

fn render_json<T: Serialize>(value: &T, pretty: bool) -> String {
    let mut text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("reports serialize");
    text.push('\n');
    text
}

/// The structured object printed on failure.
pub fn error_json(command: Option<Command>, err: &CliError, pretty: bool) -> String {
    let value = json!({
        "error": { "kind": err.kind(), "message": err.to_string() },
        "command": command.map(Command::name),
        "version": VERSION,
    });
    render_json(&value, pretty)
}

pub fn sha256_digest(text: &str) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes())))
}

fn read_source(source: &PolySource) -> Result<String> {
    match source {
        PolySource::Text(t) => Ok(t.clone()),
        PolySource::Path(p) => fs::read_to_string(p).map_err(|e| CliError::Io { path: p.clone(), source: e }),
    }
}

/// Non-comment lines of a polynomial file, and the generator comment.
fn content_lines(text: &str) -> (Vec<&str>, Option<String>) {
    let mut generator = None;
    let mut lines = Vec::new();
    for line in text.lines().map(str::trim) {
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if comment.starts_with("random ") && generator.is_none() {
                generator = Some(comment.to_string());
            }
        } else if !line.is_empty() {
            lines.push(line);
        }
    }
    (lines, generator)
}

/// A polynomial file: `#` comments, the rest joined into one polynomial.
pub fn read_poly(source: &PolySource, field: FieldSpec) -> Result<(HyperPoly, Option<String>)> {
    let text = read_source(source)?;
    let (lines, generator) = content_lines(&text);
    let poly = parse_poly(&lines.join(" "), field)?;
    Ok((poly, generator))
}

/// A W file: one polynomial per non-comment line.
pub fn read_w(path: &Path, field: FieldSpec, d: u32) -> Result<(WSpace, String)> {
    let text = read_source(&PolySource::Path(path.to_path_buf()))?;
    let (lines, _) = content_lines(&text);
    let polys = lines.iter().map(|l| parse_poly(l, field)).collect::<jacring::Result<Vec<_>>>()?;
    let canonical: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    let w = WSpace::from_polys(field, d, polys)?;
    Ok((w, sha256_digest(&canonical.join("\n"))))
}

pub fn run(request: &CommandRequest) -> Result<Output> {
    if request.command == Command::Random {
        return run_random(request).map(Output::PolyFile);
    }
    let source = request
        .poly
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("`{}` needs --poly", request.command.name())))?;
    let field = request.field;
    let (poly, generator) = read_poly(source, field)?;
    let mut warnings = Vec::new();
    if let Some(generator) = &generator {
        if let Some(gen_field) = generator.split_whitespace().find_map(|t| t.strip_prefix("field=")) {
            if gen_field != field.to_string() {
                warnings.push(format!("file was generated over {gen_field} but is read over {field}"));
            }
        }
    }
    let mut input = InputEcho {
        digest: sha256_digest(&poly.to_string()),
        degree: poly.degree(),
        terms: poly.num_terms(),
        generator,
        w_digest: None,
    };
    if poly.degree() < 2 {
        return Err(jacring::Error::DegreeTooLow { degree: poly.degree(), min: 2 }.into());
    }
    let mut ring = JacobianRing::with_route(&poly, request.route)?;
    let results = match request.command {
        Command::Hilbert => hilbert(&mut ring, request.degrees, &mut warnings),
        Command::Smooth => smooth(&mut ring, &mut warnings),
        Command::Hodge => hodge(&mut ring)?,
        Command::AjImage => aj_image(&mut ring, request, &mut input, &mut warnings)?,
        Command::Pairing => pairing(&mut ring, request.degrees)?,
        Command::Random => unreachable!("handled above"),
    };
    Ok(Output::Report(JsonReport {
        command: request.command.name().to_string(),
        input: Some(input),
        field,
        results,
        warnings,
        version: VERSION.to_string(),
    }))
}

fn run_random(request: &CommandRequest) -> Result<String> {
    let d = request.d.ok_or_else(|| CliError::Usage("`random` needs --d".to_string()))?;
    let seed = request.seed.unwrap_or(0);
    let poly = random_hypersurface(request.field, d, request.support, seed)?;
    Ok(format!(
        "# random d={d} support={} seed={seed} field={} version={VERSION}\n{poly}\n",
        request.support, request.field
    ))
}

fn not_smooth_warning(cert: &SmoothnessCertificate, warnings: &mut Vec<String>) {
    if let Some(k) = cert.first_mismatch {
        warnings.push(format!(
            "hypersurface is not smooth: dim R^{k} differs from the complete-intersection series"
        ));
    }
}

#[derive(Serialize)]
struct SeriesEntry {
    degree: i64,
    dim: usize,
    expected: usize,
}

fn hilbert(ring: &mut JacobianRing, degrees: Option<DegreeRange>, warnings: &mut Vec<String>) -> Value {
    let d = ring.degree();
    let sigma = ring.socle_degree();
    let range = degrees.unwrap_or(DegreeRange { start: 0, end: sigma + 1 });
    let cert = ring.smoothness().clone();
    not_smooth_warning(&cert, warnings);
    let series: Vec<SeriesEntry> = range
        .iter()
        .map(|k| SeriesEntry { degree: k, dim: ring.dimension(k), expected: jacring::expected_ci_dimension(d, k) })
        .collect();
    let matches = series.iter().all(|e| e.dim == e.expected);
    json!({
        "degrees": range.to_string(),
        "socle_degree": sigma,
        "series": series,
        "matches_expected": matches,
        "certificate": cert,
    })
}

fn smooth(ring: &mut JacobianRing, warnings: &mut Vec<String>) -> Value {
    let cert = ring.smoothness().clone();
    not_smooth_warning(&cert, warnings);
    json!(cert)
}

fn hodge(ring: &mut JacobianRing) -> Result<Value> {
    let h = hodge_numbers_in(ring)?;
    let expected = euler_characteristic(ring.degree());
    Ok(json!({
        "h30": h.h30,
        "h21": h.h21,
        "euler_characteristic": {
            "from_hodge_numbers": h.euler_characteristic(),
            "from_degree": expected,
            "consistent": h.euler_characteristic() == expected,
        },
    }))
}

fn aj_image(
    ring: &mut JacobianRing,
    request: &CommandRequest,
    input: &mut InputEcho,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let d = ring.degree();
    let w = match &request.w {
        Some(path) => {
            let (w, digest) = read_w(path, request.field, d)?;
            input.w_digest = Some(digest);
            Some(w)
        }
        None => None,
    };
    let report = aj_image_dimension_in(ring, w.as_ref())?;
    if !report.degree_hypothesis_met {
        warnings.push(format!("d = {d} is below the degree hypothesis d >= 6; the map is still computed"));
    }
    if let (FieldSpec::Prime(p), false) = (request.field, report.surjective) {
        warnings.push(format!(
            "rank computed mod {p}: a shortfall does not refute surjectivity for a general hypersurface; \
             re-run with another prime or over q"
        ));
    }
    if report.shortcut_consistent == Some(false) {
        warnings.push("W has codimension 0 but the explicit rank is not full".to_string());
    }
    let mut value = json!(report);
    let obj = value.as_object_mut().expect("report is an object");
    obj.insert("w_source".into(), json!(if w.is_some() { "file" } else { "coefficient-span" }));
    obj.insert("image_part".into(), json!("primitive"));
    Ok(value)
}

fn pairing(ring: &mut JacobianRing, degrees: Option<DegreeRange>) -> Result<Value> {
    ring.require_smooth()?;
    let d = ring.degree() as i64;
    let sigma = ring.socle_degree();
    let ks: Vec<i64> = match degrees {
        Some(r) => r.iter().collect(),
        None => {
            let mut ks: Vec<i64> = [0, 1, d - 5, 2 * d - 5].into_iter().filter(|k| (0..=sigma).contains(k)).collect();
            ks.sort_unstable();
            ks.dedup();
            ks
        }
    };
    let mut out = Vec::with_capacity(ks.len());
    for k in ks {
        let m = ring.socle_pairing(k)?;
        let rank = m.rank();
        let mut entry = json!({
            "k": k,
            "rows": m.rows(),
            "cols": m.cols(),
            "rank": rank,
            "full_rank": rank == m.rows() && rank == m.cols(),
        });
        if m.rows() * m.cols() <= PAIRING_ENTRY_LIMIT {
            let entries: Vec<Vec<String>> =
                (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect();
            entry.as_object_mut().expect("object").insert("entries".into(), json!(entries));
        }
        out.push(entry);
    }
    Ok(json!({ "socle_degree": sigma, "pairings": out }))
}
