//! Instance files, reports and the commands behind the `goppa-fold` binary:
//! generate, fold, verify, sweep and key-size arithmetic.
//!
//! Field elements are written as their integer index (little-endian base-p
//! digits), so files are plain TOML/JSON with no custom encoding.

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::code::{CodeError, CodeKind, CodeSpec};
use crate::field::{Elem, Field, FieldError, SubfieldView};
use crate::folding::{corrupt_spec, fold_dual, prediction_matches, verify_fold, Corruption, FoldError, FoldReport};
use crate::invariant::{AffineMap, InvariantError};
use crate::poly::Poly;
use crate::symmetry::{
    build_qc_goppa, build_qc_instance, build_qm_alternant, build_qm_goppa, fp_independent, GroupParams, GroupSpec,
    SymmetryError,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad parameter: {0}")]
    Params(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("instance file: {0}")]
    TomlDe(#[from] toml::de::Error),
    #[error("instance file: {0}")]
    TomlSer(#[from] toml::ser::Error),
    #[error("report: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

type Result<T, E = HarnessError> = std::result::Result<T, E>;

fn bad(msg: impl Into<String>) -> HarnessError {
    HarnessError::Params(msg.into())
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| bad(format!("{what}: cannot parse {s:?}")))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| parse_num(t, what)).collect()
}

/// GF(p^m) with its defining polynomial, coefficients low to high.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldParams {
    pub fn new(p: u32, m: u32) -> Result<FieldParams> {
        let f = Field::new(p, m, None)?;
        Ok(FieldParams { p, m, modulus: f.modulus().to_vec() })
    }

    /// `p:m` or `p:m:c0,c1,...,cm`.
    pub fn parse(s: &str) -> Result<FieldParams> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [p, m] => FieldParams::new(parse_num(p, "p")?, parse_num(m, "m")?),
            [p, m, modulus] => {
                let fp = FieldParams { p: parse_num(p, "p")?, m: parse_num(m, "m")?, modulus: parse_list(modulus, "modulus")? };
                fp.field()?;
                Ok(fp)
            }
            _ => Err(bad(format!("--field expects p:m[:modulus], got {s:?}"))),
        }
    }

    pub fn field(&self) -> Result<Field> {
        Ok(Field::new(self.p, self.m, Some(&self.modulus))?)
    }
}

/// The alphabet GF(q) and the extension degree m with q^m = |field|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewParams {
    pub q: u32,
    pub m: u32,
}

impl ViewParams {
    pub fn parse(s: &str) -> Result<ViewParams> {
        let (q, m) = s.split_once(':').ok_or_else(|| bad(format!("--view expects q:m, got {s:?}")))?;
        Ok(ViewParams { q: parse_num(q, "q")?, m: parse_num(m, "m")? })
    }

    pub fn prime_subfield(field: &FieldParams) -> ViewParams {
        ViewParams { q: field.p, m: field.m }
    }

    pub fn view(&self, field: &Field) -> Result<SubfieldView> {
        let p = field.characteristic();
        let mut s = 0u32;
        let mut acc = 1u64;
        while acc < self.q as u64 {
            acc *= p as u64;
            s += 1;
        }
        if acc != self.q as u64 || s * self.m != field.degree() {
            return Err(bad(format!("view {}:{} does not fit GF({}^{})", self.q, self.m, p, field.degree())));
        }
        Ok(SubfieldView::new(field, s)?)
    }
}

/// `qc:a,b` or `qm:α0,α1,...` with element indices.
pub fn parse_group(s: &str) -> Result<GroupParams> {
    let (tag, rest) = s.split_once(':').ok_or_else(|| bad(format!("--group expects qc:a,b or qm:..., got {s:?}")))?;
    let elems: Vec<Elem> = parse_list::<u32>(rest, "group element")?.into_iter().map(Elem).collect();
    match (tag, elems.as_slice()) {
        ("qc", [a, b]) => Ok(GroupParams::Qc { a: *a, b: *b }),
        ("qm" | "qd", shifts) if !shifts.is_empty() => Ok(GroupParams::Qm { shifts: shifts.to_vec() }),
        _ => Err(bad(format!("unrecognized group {s:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Qc,
    Qd,
    Qm,
    /// No symmetry recorded, e.g. a folded instance.
    Plain,
}

impl Family {
    fn of(field: &FieldParams, group: &GroupParams) -> Family {
        match group {
            GroupParams::Qc { .. } => Family::Qc,
            GroupParams::Qm { .. } if field.p == 2 => Family::Qd,
            GroupParams::Qm { .. } => Family::Qm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Alternant,
    Goppa,
}

/// Everything needed to rebuild a code and its group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub family: Family,
    pub seed: u64,
    pub field: FieldParams,
    pub view: ViewParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupParams>,
    pub code: CodeSpec,
}

/// Field, view and group of an instance, ready for computation.
pub struct Context {
    pub field: Field,
    pub view: SubfieldView,
    pub group: Option<GroupSpec>,
}

impl InstanceFile {
    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn from_toml(s: &str) -> Result<InstanceFile> {
        Ok(toml::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<InstanceFile> {
        InstanceFile::from_toml(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write(path, &self.to_toml()?)
    }

    /// SHA-256 of the canonical TOML text, hex encoded.
    pub fn digest(&self) -> Result<String> {
        Ok(hex(&Sha256::digest(self.to_toml()?.as_bytes())))
    }

    pub fn context(&self) -> Result<Context> {
        let field = self.field.field()?;
        let view = self.view.view(&field)?;
        let group = self.group.as_ref().map(|g| g.spec(&field)).transpose()?;
        self.code.validate(&field)?;
        Ok(Context { field, view, group })
    }

    pub fn kind(&self) -> Option<Kind> {
        match self.code.kind {
            CodeKind::Alternant { .. } => Some(Kind::Alternant),
            CodeKind::Goppa { .. } => Some(Kind::Goppa),
            CodeKind::Grs { .. } => None,
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(2 * bytes.len()), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| HarnessError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| HarnessError::Io { path: path.display().to_string(), source })
}

/// Inputs of [`generate`]. `degree` is t for alternant codes and deg Q for
/// Goppa codes; `blocks` is the number of orbits (QC) or cosets (QD/QM).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub field: FieldParams,
    pub view: ViewParams,
    pub group: GroupParams,
    pub kind: Kind,
    pub degree: usize,
    #[serde(default)]
    pub d: u64,
    pub blocks: usize,
    #[serde(default)]
    pub strict: bool,
    pub seed: u64,
}

fn random_monic(field: &Field, degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut c: Vec<Elem> = (0..degree).map(|_| Elem(rng.random_range(0..field.size()))).collect();
    c.push(Elem::ONE);
    Poly::new(c)
}

const GOPPA_TRIES: usize = 32;

/// Builds a symmetric instance; deterministic in the parameters.
pub fn generate(params: &GenParams) -> Result<InstanceFile> {
    let field = params.field.field()?;
    params.view.view(&field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let code = match (&params.group, params.kind) {
        (GroupParams::Qc { a, b }, Kind::Alternant) => {
            let map = AffineMap::new(&field, *a, *b)?;
            build_qc_instance(&field, &map, params.blocks, params.degree, params.d, params.seed)?.0
        }
        (GroupParams::Qm { shifts }, Kind::Alternant) => {
            build_qm_alternant(&field, shifts, params.blocks, params.degree, params.seed, params.strict)?.0
        }
        (group, Kind::Goppa) => {
            let mut last = None;
            let mut found = None;
            for _ in 0..GOPPA_TRIES {
                let q = random_monic(&field, params.degree, &mut rng);
                let sub_seed = rng.random();
                let built = match group {
                    GroupParams::Qc { a, b } => {
                        let map = AffineMap::new(&field, *a, *b)?;
                        build_qc_goppa(&field, &map, params.blocks, &q, params.d, sub_seed).map(|r| r.0)
                    }
                    GroupParams::Qm { shifts } => build_qm_goppa(&field, shifts, params.blocks, &q, sub_seed).map(|r| r.0),
                };
                match built {
                    Ok(spec) => {
                        found = Some(spec);
                        break;
                    }
                    Err(e @ SymmetryError::NotEnoughOrbits { .. }) => last = Some(e),
                    Err(e) => return Err(e.into()),
                }
            }
            match found {
                Some(spec) => spec,
                None => return Err(last.expect("at least one attempt").into()),
            }
        }
    };
    Ok(InstanceFile {
        family: Family::of(&params.field, &params.group),
        seed: params.seed,
        field: params.field.clone(),
        view: params.view,
        group: Some(params.group.clone()),
        code,
    })
}

/// Folds an instance along its whole group. Returns the report and the
/// predicted folded instance.
pub fn fold_instance(inst: &InstanceFile) -> Result<(FoldReport, InstanceFile)> {
    let ctx = inst.context()?;
    let group = ctx.group.ok_or_else(|| bad("instance has no group to fold along"))?;
    let report = verify_fold(&ctx.view, &inst.code, &group)?;
    let folded = InstanceFile {
        family: Family::Plain,
        seed: inst.seed,
        field: inst.field.clone(),
        view: inst.view,
        group: None,
        code: report.predicted.clone(),
    };
    Ok((report, folded))
}

/// Like [`fold_instance`], but when `claimed` is given the fold is compared
/// against that code instead of the computed prediction.
pub fn verify_instance(inst: &InstanceFile, claimed: Option<&InstanceFile>) -> Result<FoldReport> {
    let (mut report, _) = fold_instance(inst)?;
    if let Some(c) = claimed {
        let ctx = inst.context()?;
        if c.field != inst.field || c.view != inst.view {
            return Err(bad("claimed folded instance uses a different field or view"));
        }
        let (_, folded) = fold_dual(&ctx.view, &inst.code, ctx.group.as_ref().expect("checked by fold_instance"))?;
        report.verdict = prediction_matches(&ctx.view, &folded, &c.code)?;
        report.folded_degree = c.code.degree();
        report.predicted = c.code.clone();
    }
    Ok(report)
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: usize,
    pub digest: String,
    pub family: Family,
    pub kind: Option<Kind>,
    pub field: String,
    pub q: u32,
    pub group: Option<GroupParams>,
    pub group_order: u64,
    pub d: u64,
    pub n: usize,
    pub k: usize,
    pub n_folded: usize,
    pub k_folded: usize,
    pub degree: usize,
    pub folded_degree: usize,
    pub verdict: bool,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corruption: Option<Corruption>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

impl ReportEntry {
    fn new(id: usize, inst: &InstanceFile, digest: String) -> ReportEntry {
        let group_order = match (&inst.group, inst.field.field()) {
            (Some(g), Ok(f)) => g.spec(&f).map(|s| s.order(&f)).unwrap_or(1),
            _ => 1,
        };
        ReportEntry {
            id,
            digest,
            family: inst.family,
            kind: inst.kind(),
            field: format!("{}^{}", inst.field.p, inst.field.m),
            q: inst.view.q,
            group: inst.group.clone(),
            group_order,
            d: 0,
            n: inst.code.len(),
            k: 0,
            n_folded: 0,
            k_folded: 0,
            degree: inst.code.degree(),
            folded_degree: 0,
            verdict: false,
            passed: false,
            corruption: None,
            error: None,
            micros: None,
        }
    }

    fn fill(&mut self, r: &FoldReport, timing: bool) {
        self.d = r.d;
        self.k = r.k;
        self.n_folded = r.n_folded;
        self.k_folded = r.k_folded;
        self.folded_degree = r.folded_degree;
        self.verdict = r.verdict;
        self.passed = r.passed();
        self.micros = if timing { r.micros } else { None };
    }

    fn group_label(&self) -> String {
        match &self.group {
            None => "-".into(),
            Some(GroupParams::Qc { a, b }) => format!("qc:{}:{}", a.0, b.0),
            Some(GroupParams::Qm { shifts }) => {
                format!("qm:{}", shifts.iter().map(|s| s.0.to_string()).collect::<Vec<_>>().join(":"))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    /// Instances whose prediction was deliberately corrupted.
    pub injected: usize,
    /// Corrupted instances whose verdict came out false.
    pub injected_flagged: usize,
}

impl Summary {
    /// Exit-status contract: every verdict true and no errors.
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub summary: Summary,
    pub entries: Vec<ReportEntry>,
}

impl ReportFile {
    pub fn from_entries(mut entries: Vec<ReportEntry>) -> ReportFile {
        entries.sort_by(|a, b| a.digest.cmp(&b.digest).then(a.id.cmp(&b.id)));
        let mut s = Summary { total: entries.len(), ..Summary::default() };
        for e in &entries {
            if e.error.is_some() {
                s.errors += 1;
            } else if e.passed {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
            if e.corruption.is_some() {
                s.injected += 1;
                if !e.verdict && e.error.is_none() {
                    s.injected_flagged += 1;
                }
            }
        }
        ReportFile { summary: s, entries }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "id,digest,family,kind,field,q,group,group_order,d,n,k,n_folded,k_folded,degree,folded_degree,verdict,passed,corruption,error,micros\n",
        );
        for e in &self.entries {
            let kind = match e.kind {
                Some(Kind::Alternant) => "alternant",
                Some(Kind::Goppa) => "goppa",
                None => "-",
            };
            let family = serde_json::to_value(e.family).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
            let corruption = e
                .corruption
                .and_then(|c| serde_json::to_value(c).ok())
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            let error = e.error.as_deref().unwrap_or("").replace([',', '\n'], ";");
            let micros = e.micros.map(|m| m.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                e.id,
                e.digest,
                family,
                kind,
                e.field,
                e.q,
                e.group_label(),
                e.group_order,
                e.d,
                e.n,
                e.k,
                e.n_folded,
                e.k_folded,
                e.degree,
                e.folded_degree,
                e.verdict,
                e.passed,
                corruption,
                error,
                micros
            );
        }
        out
    }
}

/// Report for a single fold or verification.
pub fn single_report(inst: &InstanceFile, result: &Result<FoldReport>, timing: bool) -> Result<ReportFile> {
    let mut entry = ReportEntry::new(0, inst, inst.digest()?);
    match result {
        Ok(r) => entry.fill(r, timing),
        Err(e) => entry.error = Some(e.to_string()),
    }
    Ok(ReportFile::from_entries(vec![entry]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridFamily {
    Qc,
    Qm,
}

fn one() -> usize {
    1
}

fn default_blocks() -> usize {
    4
}

fn default_max_len() -> usize {
    256
}

/// One line of a sweep grid.
///
/// QC lines walk `orders` (ℓ = p selects translations), every d in `d` (all
/// admissible d when absent) and every degree in the inclusive range
/// `degrees` (t ∈ [1, 3ℓ] for alternant codes when absent). QM lines walk
/// `lambda` instead of `orders`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub field: String,
    #[serde(default)]
    pub view: Option<String>,
    pub family: GridFamily,
    pub kind: Kind,
    #[serde(default)]
    pub orders: Vec<u64>,
    #[serde(default)]
    pub lambda: Vec<usize>,
    #[serde(default)]
    pub d: Option<Vec<u64>>,
    #[serde(default)]
    pub degrees: Option<[usize; 2]>,
    #[serde(default = "default_blocks")]
    pub blocks: usize,
    #[serde(default = "default_max_len")]
    pub max_len: usize,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    #[serde(default)]
    pub seed: u64,
    /// Probability that an instance's prediction is corrupted before comparison.
    #[serde(default)]
    pub corruption: f64,
    #[serde(default, rename = "entry")]
    pub entries: Vec<GridEntry>,
}

impl Grid {
    pub fn from_toml(s: &str) -> Result<Grid> {
        let g: Grid = toml::from_str(s)?;
        if !(0.0..=1.0).contains(&g.corruption) {
            return Err(bad("corruption rate must lie in [0, 1]"));
        }
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<Grid> {
        Grid::from_toml(&read(path)?)
    }

    /// A small grid over GF(2^4), GF(2^6), GF(3^2) and GF(3^4) covering
    /// alternant and Goppa codes with cyclic and translation groups.
    pub fn desk() -> Grid {
        let qc = |field: &str, kind, orders: Vec<u64>, degrees| GridEntry {
            field: field.into(),
            view: None,
            family: GridFamily::Qc,
            kind,
            orders,
            lambda: Vec::new(),
            d: None,
            degrees,
            blocks: 4,
            max_len: 256,
            trials: 1,
            strict: false,
        };
        let qm = |field: &str, kind, lambda: Vec<usize>, degrees| GridEntry {
            family: GridFamily::Qm,
            orders: Vec::new(),
            lambda,
            ..qc(field, kind, Vec::new(), degrees)
        };
        Grid {
            seed: 1,
            corruption: 0.0,
            entries: vec![
                qc("2:4", Kind::Alternant, vec![2, 3, 5], None),
                qc("2:6", Kind::Alternant, vec![3, 7], None),
                qc("3:2", Kind::Alternant, vec![2, 3], None),
                qc("3:4", Kind::Alternant, vec![5], None),
                qc("2:6", Kind::Goppa, vec![2, 3, 7], Some([1, 2])),
                qm("2:6", Kind::Goppa, vec![1, 2, 3], Some([1, 2])),
                qm("3:4", Kind::Goppa, vec![1, 2], Some([1, 1])),
                qm("2:6", Kind::Alternant, vec![2], Some([1, 12])),
            ],
        }
    }
}

/// A single unit of sweep work.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub id: usize,
    pub params: GenParams,
    pub corruption: Option<Corruption>,
}

/// SplitMix64 finalizer, used to derive independent per-instance seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `counter`-th instance of grid line `entry`:
/// splitmix64(grid_seed ⊕ splitmix64(entry · 2^32 + counter)).
pub fn job_seed(grid_seed: u64, entry: usize, counter: u64) -> u64 {
    splitmix64(grid_seed ^ splitmix64(((entry as u64) << 32) | counter))
}

fn random_independent(field: &Field, lambda: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Elem>> {
    if lambda as u32 > field.degree() {
        return Err(bad(format!("λ = {lambda} exceeds the field degree")));
    }
    loop {
        let shifts: Vec<Elem> = (0..lambda).map(|_| Elem(rng.random_range(1..field.size()))).collect();
        if fp_independent(field, &shifts) {
            return Ok(shifts);
        }
    }
}

fn applicable_corruptions(kind: Kind) -> &'static [Corruption] {
    match kind {
        Kind::Alternant => &[Corruption::Multiplier, Corruption::Support, Corruption::DegreeUp, Corruption::DegreeDown],
        Kind::Goppa => &[Corruption::Multiplier, Corruption::Support, Corruption::Polynomial],
    }
}

/// Expands a grid into jobs with deterministic seeds.
pub fn expand_grid(grid: &Grid) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for (ei, entry) in grid.entries.iter().enumerate() {
        let fp = FieldParams::parse(&entry.field)?;
        let field = fp.field()?;
        let view = match &entry.view {
            Some(v) => ViewParams::parse(v)?,
            None => ViewParams::prime_subfield(&fp),
        };
        view.view(&field)?;
        let p = fp.p as u64;
        let size = field.size() as u64;
        let mut counter = 0u64;
        let mut push = |group: GroupParams, ell: u64, d: u64, degree: usize, available: u64| {
            let blocks = (entry.blocks as u64).min(available).min((entry.max_len as u64 / ell).max(1)) as usize;
            for _ in 0..entry.trials {
                let seed = job_seed(grid.seed, ei, counter);
                counter += 1;
                let mut crng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
                let corruption = (grid.corruption > 0.0 && crng.random_bool(grid.corruption)).then(|| {
                    let options = applicable_corruptions(entry.kind);
                    options[crng.random_range(0..options.len())]
                });
                jobs.push(Job {
                    id: jobs.len(),
                    params: GenParams {
                        field: fp.clone(),
                        view,
                        group: group.clone(),
                        kind: entry.kind,
                        degree,
                        d,
                        blocks,
                        strict: entry.strict,
                        seed,
                    },
                    corruption,
                });
            }
        };
        match entry.family {
            GridFamily::Qc => {
                for &ell in &entry.orders {
                    let translation = ell == p;
                    let a = if translation {
                        Elem::ONE
                    } else {
                        field
                            .element_of_order(ell)
                            .filter(|_| ell > 1)
                            .ok_or_else(|| bad(format!("GF({}^{}) has no element of order {ell}", fp.p, fp.m)))?
                    };
                    let ds: Vec<u64> = match &entry.d {
                        Some(ds) => ds.iter().copied().filter(|&d| d < ell && (!translation || d == 0)).collect(),
                        None if translation => vec![0],
                        None => (0..ell).collect(),
                    };
                    let [lo, hi] = entry.degrees.unwrap_or([1, 3 * ell as usize]);
                    let available = if translation { size / p } else { (size - 1) / ell };
                    // per-line offset so that b varies with ℓ
                    let mut brng = ChaCha8Rng::seed_from_u64(job_seed(grid.seed, ei, u64::MAX - ell));
                    for &d in &ds {
                        for degree in lo..=hi {
                            let lo_b = if translation { 1 } else { 0 };
                            let b = Elem(brng.random_range(lo_b..field.size()));
                            let available = if entry.kind == Kind::Goppa { available / 2 } else { available };
                            push(GroupParams::Qc { a, b }, ell, d, degree, available.max(1));
                        }
                    }
                }
            }
            GridFamily::Qm => {
                for &lambda in &entry.lambda {
                    let ell = p.pow(lambda as u32);
                    let [lo, hi] = entry.degrees.unwrap_or([1, 3 * ell as usize]);
                    let mut srng = ChaCha8Rng::seed_from_u64(job_seed(grid.seed, ei, u64::MAX - lambda as u64));
                    let available = size / ell;
                    for degree in lo..=hi {
                        let shifts = random_independent(&field, lambda, &mut srng)?;
                        let available = if entry.kind == Kind::Goppa { available / 2 } else { available };
                        push(GroupParams::Qm { shifts }, ell, 0, degree, available.max(1));
                    }
                }
            }
        }
    }
    Ok(jobs)
}

/// Generates, folds and checks one job. Errors are recorded in the entry.
pub fn run_job(job: &Job, timing: bool) -> ReportEntry {
    let inst = match generate(&job.params) {
        Ok(inst) => inst,
        Err(e) => {
            let placeholder = InstanceFile {
                family: Family::of(&job.params.field, &job.params.group),
                seed: job.params.seed,
                field: job.params.field.clone(),
                view: job.params.view,
                group: Some(job.params.group.clone()),
                code: CodeSpec::alternant(Vec::new(), job.params.degree, Vec::new()),
            };
            let mut entry = ReportEntry::new(job.id, &placeholder, String::new());
            entry.error = Some(format!("generation: {e}"));
            return entry;
        }
    };
    let digest = inst.digest().unwrap_or_default();
    let mut entry = ReportEntry::new(job.id, &inst, digest);
    match fold_instance(&inst) {
        Ok((report, _)) => {
            entry.fill(&report, timing);
            if let Some(kind) = job.corruption {
                match corrupt_and_check(&inst, &report, kind, job.params.seed) {
                    Ok(Some(verdict)) => {
                        entry.corruption = Some(kind);
                        entry.verdict = verdict;
                        entry.passed = verdict && report.passed();
                    }
                    Ok(None) => {}
                    Err(e) => entry.error = Some(e.to_string()),
                }
            }
        }
        Err(e) => entry.error = Some(e.to_string()),
    }
    entry
}

/// Compares the fold against a corrupted prediction. None when the
/// corruption does not apply or the predicted dual is trivial (zero or full),
/// where some corruptions cannot be seen.
pub fn corrupt_and_check(inst: &InstanceFile, report: &FoldReport, kind: Corruption, seed: u64) -> Result<Option<bool>> {
    if report.folded_dual_dim == 0 || report.folded_dual_dim == report.n_folded {
        return Ok(None);
    }
    let ctx = inst.context()?;
    let Some(bad_spec) = corrupt_spec(&ctx.view, &report.predicted, kind, seed) else { return Ok(None) };
    let group = ctx.group.as_ref().ok_or_else(|| bad("instance has no group"))?;
    let (_, folded) = fold_dual(&ctx.view, &inst.code, group)?;
    Ok(Some(prediction_matches(&ctx.view, &folded, &bad_spec)?))
}

/// Runs every job of the grid on `jobs` worker threads.
pub fn run_sweep(grid: &Grid, jobs: usize, timing: bool) -> Result<ReportFile> {
    let work = expand_grid(grid)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| bad(e.to_string()))?;
    let entries: Vec<ReportEntry> = pool.install(|| work.par_iter().map(|j| run_job(j, timing)).collect());
    Ok(ReportFile::from_entries(entries))
}

/// Compact-key and folded parameters for a symmetric code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeySize {
    pub n: u64,
    pub k: u64,
    pub q: u64,
    pub group_order: u64,
    /// k(n - k)/|G| symbols of GF(q).
    pub compact_key_symbols: u64,
    pub compact_key_bits: f64,
    pub folded_n: u64,
    pub folded_k: u64,
}

impl KeySize {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!(
                "public key [{}, {}] over GF({}), compact form: {} symbols ({:.0} bits)",
                self.n, self.k, self.q, self.compact_key_symbols, self.compact_key_bits
            ),
            format!("folded code: [{}, {}]", self.folded_n, self.folded_k),
        ];
        if self.group_order == 1 {
            out.push("trivial group: no reduction".into());
        } else {
            out.push(format!(
                "key recovery on [{}, {}] reduces to key recovery on [{}, {}] (factor {})",
                self.n, self.k, self.folded_n, self.folded_k, self.group_order
            ));
        }
        out
    }
}

pub fn keysize(n: u64, k: u64, q: u64, group_order: u64) -> Result<KeySize> {
    if group_order == 0 || q < 2 || k > n {
        return Err(bad("need k <= n, q >= 2 and a positive group order"));
    }
    if !n.is_multiple_of(group_order) || !k.is_multiple_of(group_order) {
        return Err(bad(format!("group order {group_order} must divide n = {n} and k = {k}")));
    }
    let symbols = k * (n - k) / group_order;
    Ok(KeySize {
        n,
        k,
        q,
        group_order,
        compact_key_symbols: symbols,
        compact_key_bits: symbols as f64 * (q as f64).log2(),
        folded_n: n / group_order,
        folded_k: k / group_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qd_params(seed: u64) -> GenParams {
        GenParams {
            field: FieldParams::new(2, 6).unwrap(),
            view: ViewParams { q: 2, m: 6 },
            group: GroupParams::Qm { shifts: vec![Elem(1), Elem(2)] },
            kind: Kind::Goppa,
            degree: 2,
            d: 0,
            blocks: 4,
            strict: false,
            seed,
        }
    }

    #[test]
    fn parse_flags() {
        let f = FieldParams::parse("2:4").unwrap();
        assert_eq!(f.modulus, vec![1, 1, 0, 0, 1]);
        assert_eq!(FieldParams::parse("2:4:1,0,0,1,1").unwrap().modulus, vec![1, 0, 0, 1, 1]);
        assert!(FieldParams::parse("2:4:1,1,1,1,1,1").is_err());
        assert!(FieldParams::parse("4:2").is_err());
        assert_eq!(ViewParams::parse("4:3").unwrap(), ViewParams { q: 4, m: 3 });
        assert_eq!(parse_group("qc:5,0").unwrap(), GroupParams::Qc { a: Elem(5), b: Elem(0) });
        assert_eq!(parse_group("qm:1,2,4").unwrap(), GroupParams::Qm { shifts: vec![Elem(1), Elem(2), Elem(4)] });
        assert!(parse_group("qc:5").is_err());
        let field = Field::new(2, 6, None).unwrap();
        assert!(ViewParams { q: 4, m: 3 }.view(&field).is_ok());
        assert!(ViewParams { q: 8, m: 3 }.view(&field).is_err());
    }

    #[test]
    fn instance_round_trip_and_determinism() {
        let a = generate(&qd_params(42)).unwrap();
        let text = a.to_toml().unwrap();
        let back = InstanceFile::from_toml(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_toml().unwrap(), text);
        assert_eq!(generate(&qd_params(42)).unwrap().to_toml().unwrap(), text);
        assert_eq!(a.family, Family::Qd);
    }

    #[test]
    fn dependent_shifts_are_rejected() {
        let mut p = qd_params(1);
        p.group = GroupParams::Qm { shifts: vec![Elem(3), Elem(3)] };
        assert!(matches!(generate(&p), Err(HarnessError::Symmetry(SymmetryError::DependentShifts))));
    }

    #[test]
    fn keysize_examples() {
        let k = keysize(8192, 4096, 2, 128).unwrap();
        assert_eq!((k.folded_n, k.folded_k), (64, 32));
        let k = keysize(512, 256, 2, 16).unwrap();
        assert_eq!((k.folded_n, k.folded_k), (32, 16));
        assert!(keysize(512, 256, 2, 1).unwrap().lines()[2].contains("no reduction"));
        assert!(keysize(100, 50, 2, 3).is_err());
    }

    #[test]
    fn empty_grid() {
        let r = run_sweep(&Grid::default(), 2, false).unwrap();
        assert_eq!(r.summary.total, 0);
        assert!(r.summary.all_passed());
    }

    #[test]
    fn job_seeds_differ() {
        assert_ne!(job_seed(0, 0, 0), job_seed(0, 0, 1));
        assert_ne!(job_seed(0, 0, 0), job_seed(0, 1, 0));
        assert_ne!(job_seed(0, 0, 0), job_seed(1, 0, 0));
    }
}
