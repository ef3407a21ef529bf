//! Command-line front end. [`run`] does all the work and returns the exit
//! code with captured output, so the binary is a thin wrapper.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::format::{self, AlgebraFile, FormatError};
use crate::freelie::{self, standard_factorization, GradedAlphabet};
use crate::liealg::{EndoMatrix, GradedLieAlgebra, LieVector, SpanFailure};
use crate::linear::{fmt_rational, Matrix};
use crate::pbw::{self, format_su, PbwMonomial};
use crate::unigroup::{self, AbelianVerdict, AbelianizationData, Presentation};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "gradlie",
    version,
    about = "Graded Lie algebras over non-abelian grading groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Algebra definition file.
    #[arg(long)]
    algebra: PathBuf,
}

#[derive(Args, Debug)]
struct LenArgs {
    #[command(flatten)]
    alg: AlgebraArg,
    /// Largest word length considered.
    #[arg(long, default_value_t = 3)]
    max_len: usize,
}

#[derive(Args, Debug)]
struct AlphabetArgs {
    #[command(flatten)]
    len: LenArgs,
    /// Letters as "x=<degree>; y=<degree>" over the algebra's group;
    /// defaults to the algebra's basis.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args, Debug)]
struct PresentationArgs {
    #[arg(
        long,
        required_unless_present = "presentation",
        conflicts_with = "presentation"
    )]
    algebra: Option<PathBuf>,
    /// Raw presentation file instead of an algebra.
    #[arg(long)]
    presentation: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check grading compatibility, Jacobi and normalization.
    Validate(AlgebraArg),
    /// Straighten a word into the PBW basis.
    Normalize {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        word: String,
    },
    /// Multiply words in the strong enveloping algebra.
    Mul {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
    /// List sorted g.a.s. monomials.
    PbwBasis(LenArgs),
    /// List the known spanning set of the graded enveloping algebra.
    UgSpan(LenArgs),
    /// Check that the algebra embeds in its enveloping algebra.
    EmbedCheck(AlgebraArg),
    /// List the Lyndon basis of the free graded Lie algebra.
    FreeLie(AlphabetArgs),
    /// Check the graded Witt theorem length by length.
    WittCheck(AlphabetArgs),
    /// Check that the lifted projection is graded by the partial map alpha.
    PsiCheck(AlphabetArgs),
    /// Print the universal group presentation.
    Unigroup(AlgebraArg),
    /// Abelianize the universal group or a raw presentation.
    Abelianize(PresentationArgs),
    /// Decide whether support elements have distinct abelianized images.
    IsAbelian(PresentationArgs),
    /// Check that a relabeling of the support is a coarsening.
    CoarsenCheck {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        relabel: PathBuf,
    },
    /// Compute the center.
    Center(AlgebraArg),
    /// List the inner derivations.
    Ider(AlgebraArg),
    /// Check whether a list of endomorphisms spans a graded Lie subalgebra.
    GradedSpanCheck {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        mats: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Validate(_) => "validate",
            Self::Normalize { .. } => "normalize",
            Self::Mul { .. } => "mul",
            Self::PbwBasis(_) => "pbw-basis",
            Self::UgSpan(_) => "ug-span",
            Self::EmbedCheck(_) => "embed-check",
            Self::FreeLie(_) => "free-lie",
            Self::WittCheck(_) => "witt-check",
            Self::PsiCheck(_) => "psi-check",
            Self::Unigroup(_) => "unigroup",
            Self::Abelianize(_) => "abelianize",
            Self::IsAbelian(_) => "is-abelian",
            Self::CoarsenCheck { .. } => "coarsen-check",
            Self::Center(_) => "center",
            Self::Ider(_) => "ider",
            Self::GradedSpanCheck { .. } => "graded-span-check",
        }
    }
}

/// Wall-clock time spent reading inputs and computing, in nanoseconds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub load_ns: u64,
    pub compute_ns: u64,
}

/// Outcome of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub pass: bool,
    pub summary: String,
    /// Human-readable body.
    pub lines: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            inputs: BTreeMap::new(),
            result: Value::Null,
            pass: true,
            summary: String::new(),
            lines: Vec::new(),
            timings: None,
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{}: {}",
            if self.pass { "pass" } else { "FAIL" },
            self.summary
        );
        s
    }

    /// One JSON record on one line.
    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// Captured result of a CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: match cli.format {
                OutputFormat::Text => report.render_text(),
                OutputFormat::Machine => report.render_machine(),
            },
            stderr: String::new(),
        },
        Err(msg) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Input errors; these map to exit code 2.
type CmdResult<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

/// Loads a validated algebra. A file that parses but fails validation
/// yields a failing report instead of an input error.
fn load_valid(path: &Path, report: &mut Report) -> CmdResult<Option<AlgebraFile>> {
    report.inputs.insert("algebra".into(), path_str(path));
    match format::parse_algebra(path) {
        Ok(f) => Ok(Some(f)),
        Err(FormatError::Invalid { report: v, .. }) => {
            report.pass = false;
            report.summary = "algebra fails validation".into();
            report.lines = validation_lines(&v);
            report.result = json!({ "validation": v });
            Ok(None)
        }
        Err(e) => Err(err(e)),
    }
}

fn validation_lines(v: &crate::liealg::ValidationReport) -> Vec<String> {
    v.checks
        .iter()
        .map(|c| {
            if c.passed {
                format!("{}: ok", c.name)
            } else {
                let w = c
                    .witness
                    .as_ref()
                    .map(|w| format!(" {w:?}"))
                    .unwrap_or_default();
                format!(
                    "{}: failed{}: {}",
                    c.name,
                    w,
                    c.message.as_deref().unwrap_or("")
                )
            }
        })
        .collect()
}

fn execute(cmd: &Command) -> CmdResult<Report> {
    let mut report = Report::new(cmd.name());
    let start = Instant::now();
    let mut loaded = None;
    // commands reading an algebra load it first so load time is separate
    let needs_valid: Option<&Path> = match cmd {
        Command::Validate(_) | Command::Abelianize(_) | Command::IsAbelian(_) => None,
        Command::Normalize { alg, .. }
        | Command::Mul { alg, .. }
        | Command::EmbedCheck(alg)
        | Command::Unigroup(alg)
        | Command::CoarsenCheck { alg, .. }
        | Command::Center(alg)
        | Command::Ider(alg)
        | Command::GradedSpanCheck { alg, .. } => Some(&alg.algebra),
        Command::PbwBasis(l) | Command::UgSpan(l) => Some(&l.alg.algebra),
        Command::FreeLie(a) | Command::WittCheck(a) | Command::PsiCheck(a) => {
            Some(&a.len.alg.algebra)
        }
    };
    if let Some(path) = needs_valid {
        match load_valid(path, &mut report)? {
            Some(f) => loaded = Some(f.algebra),
            None => return Ok(report),
        }
    }
    let load_ns = start.elapsed().as_nanos() as u64;
    let compute_start = Instant::now();
    let alg = loaded.as_ref();
    match cmd {
        Command::Validate(a) => cmd_validate(&a.algebra, &mut report)?,
        Command::Normalize { word, .. } => cmd_normalize(alg.expect("loaded"), word, &mut report)?,
        Command::Mul { words, .. } => cmd_mul(alg.expect("loaded"), words, &mut report)?,
        Command::PbwBasis(l) => cmd_monomials(alg.expect("loaded"), l.max_len, false, &mut report)?,
        Command::UgSpan(l) => cmd_monomials(alg.expect("loaded"), l.max_len, true, &mut report)?,
        Command::EmbedCheck(_) => cmd_embed(alg.expect("loaded"), &mut report)?,
        Command::FreeLie(a) => cmd_free_lie(
            &alphabet(alg.expect("loaded"), a, &mut report)?,
            a.len.max_len,
            &mut report,
        )?,
        Command::WittCheck(a) => cmd_witt(
            &alphabet(alg.expect("loaded"), a, &mut report)?,
            a.len.max_len,
            &mut report,
        )?,
        Command::PsiCheck(a) => cmd_psi(
            &alphabet(alg.expect("loaded"), a, &mut report)?,
            a.len.max_len,
            &mut report,
        )?,
        Command::Unigroup(_) => cmd_unigroup(alg.expect("loaded"), &mut report)?,
        Command::Abelianize(p) => cmd_abelianize(p, &mut report)?,
        Command::IsAbelian(p) => cmd_is_abelian(p, &mut report)?,
        Command::CoarsenCheck { relabel, .. } => {
            cmd_coarsen(alg.expect("loaded"), relabel, &mut report)?
        }
        Command::Center(_) => cmd_center(alg.expect("loaded"), &mut report),
        Command::Ider(_) => cmd_ider(alg.expect("loaded"), &mut report),
        Command::GradedSpanCheck { mats, .. } => cmd_span(alg.expect("loaded"), mats, &mut report)?,
    }
    report.timings = Some(Timings {
        load_ns,
        compute_ns: compute_start.elapsed().as_nanos() as u64,
    });
    Ok(report)
}

fn cmd_validate(path: &Path, report: &mut Report) -> CmdResult<()> {
    report.inputs.insert("algebra".into(), path_str(path));
    let file = format::load_algebra(path).map_err(err)?;
    let alg = &file.algebra;
    let v = alg.validate();
    report.lines.push(format!("dim: {}", alg.dim()));
    report.lines.push(format!("group: {}", alg.group().kind()));
    report.lines.extend(validation_lines(&v));
    report.pass = v.passed();
    report.summary = if v.passed() {
        format!("valid {}-dimensional graded Lie algebra", alg.dim())
    } else {
        let failed: Vec<&str> = v
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        format!("failed checks: {}", failed.join(", "))
    };
    report.result = json!({ "name": file.name, "dim": alg.dim(), "validation": v });
    Ok(())
}

fn cmd_normalize(alg: &GradedLieAlgebra, word: &str, report: &mut Report) -> CmdResult<()> {
    report.inputs.insert("word".into(), word.into());
    let letters = pbw::parse_word(alg, word).map_err(err)?;
    let out = pbw::normalize_word(alg, &letters).map_err(err)?;
    let text = format_su(alg, &out);
    report.lines.push(text.clone());
    report.summary = format!("{} terms", out.len());
    report.result = json!({ "normal_form": text, "terms": su_terms(alg, &out) });
    Ok(())
}

fn su_terms(alg: &GradedLieAlgebra, x: &pbw::SuElement) -> Vec<Value> {
    x.iter()
        .rev()
        .map(|(m, c)| json!({ "monomial": m.render(alg), "indices": m.indices(), "coeff": fmt_rational(c) }))
        .collect()
}

fn cmd_mul(alg: &GradedLieAlgebra, words: &[String], report: &mut Report) -> CmdResult<()> {
    report.inputs.insert("words".into(), words.join(" | "));
    let mut acc = pbw::su_one();
    for w in words {
        let letters = pbw::parse_word(alg, w).map_err(err)?;
        let factor = pbw::normalize_word(alg, &letters).map_err(err)?;
        acc = pbw::su_mul(alg, &acc, &factor).map_err(err)?;
    }
    let text = format_su(alg, &acc);
    report.lines.push(text.clone());
    report.summary = format!("product of {} factors", words.len());
    report.result = json!({ "product": text, "terms": su_terms(alg, &acc) });
    Ok(())
}

fn cmd_monomials(
    alg: &GradedLieAlgebra,
    max_len: usize,
    spanning: bool,
    report: &mut Report,
) -> CmdResult<()> {
    report.inputs.insert("max_len".into(), max_len.to_string());
    let list: Vec<PbwMonomial> = if spanning {
        pbw::ug_spanning(alg, max_len)
    } else {
        pbw::pbw_basis(alg, max_len)
    }
    .map_err(err)?;
    let mut per_length = vec![0usize; max_len + 1];
    for m in &list {
        per_length[m.len()] += 1;
        let degree = m.degree(alg).map_err(err)?;
        report.lines.push(format!(
            "{}  deg {}",
            m.render(alg),
            alg.group().format_element(&degree)
        ));
    }
    report.summary = format!("{} monomials; by length {:?}", list.len(), per_length);
    report.result = json!({
        "count": list.len(),
        "by_length": per_length,
        "monomials": list.iter().map(|m| m.render(alg)).collect::<Vec<_>>(),
    });
    Ok(())
}

fn cmd_embed(alg: &GradedLieAlgebra, report: &mut Report) -> CmdResult<()> {
    let r = pbw::embed_check(alg).map_err(err)?;
    report.lines.push(format!(
        "generators: rank {} of {}",
        r.rank_of_generators, r.dim
    ));
    report
        .lines
        .push(format!("pairs checked: {}", r.pairs_checked));
    for f in &r.pair_failures {
        report.lines.push(format!(
            "mismatch ({}, {}): commutator {} but bracket {}",
            alg.name(f.i),
            alg.name(f.j),
            f.commutator,
            f.bracket
        ));
    }
    report.pass = r.passed();
    report.summary = if r.passed() {
        "L embeds in its enveloping algebra".into()
    } else {
        format!(
            "{} pair mismatches, injective = {}",
            r.pair_failures.len(),
            r.injective
        )
    };
    report.result = json!(r);
    Ok(())
}

fn alphabet(
    alg: &GradedLieAlgebra,
    a: &AlphabetArgs,
    report: &mut Report,
) -> CmdResult<GradedAlphabet> {
    report
        .inputs
        .insert("max_len".into(), a.len.max_len.to_string());
    match &a.alphabet {
        None => Ok(GradedAlphabet::from_algebra(alg)),
        Some(s) => {
            report.inputs.insert("alphabet".into(), s.clone());
            GradedAlphabet::parse(alg.group().clone(), s).map_err(err)
        }
    }
}

fn bracketed(alphabet: &GradedAlphabet, w: &[usize]) -> String {
    match standard_factorization(w) {
        None => alphabet.render(w),
        Some((u, v)) => format!("[{}, {}]", bracketed(alphabet, u), bracketed(alphabet, v)),
    }
}

fn cmd_free_lie(alphabet: &GradedAlphabet, max_len: usize, report: &mut Report) -> CmdResult<()> {
    let basis = freelie::lyndon_basis(alphabet, max_len).map_err(err)?;
    let mut dims = vec![0usize; max_len];
    let mut entries = Vec::new();
    for b in &basis {
        dims[b.word.len() - 1] += 1;
        let br = bracketed(alphabet, &b.word);
        let deg = alphabet.group().format_element(&b.degree);
        report.lines.push(format!("{}  deg {}", br, deg));
        entries.push(json!({ "word": alphabet.render(&b.word), "bracket": br, "degree": deg }));
    }
    report.summary = format!("dimensions by length {dims:?}");
    report.result = json!({ "dimensions": dims, "basis": entries });
    Ok(())
}

fn cmd_witt(alphabet: &GradedAlphabet, max_len: usize, report: &mut Report) -> CmdResult<()> {
    let r = freelie::witt_check(alphabet, max_len).map_err(err)?;
    report
        .lines
        .push("length  lyndon  products  rank  monomials".into());
    for row in &r.rows {
        report.lines.push(format!(
            "{:>6}  {:>6}  {:>8}  {:>4}  {:>9}{}",
            row.length,
            row.lyndon_count,
            row.pbw_products,
            row.pbw_rank,
            row.monomial_dim,
            if row.pass { "" } else { "  mismatch" }
        ));
    }
    report.pass = r.passed();
    let failing: Vec<usize> = r
        .rows
        .iter()
        .filter(|x| !x.pass)
        .map(|x| x.length)
        .collect();
    report.summary = if failing.is_empty() {
        format!("rank equals monomial dimension at lengths 1..={max_len}")
    } else {
        format!("mismatch at lengths {failing:?}")
    };
    report.result = json!(r);
    Ok(())
}

fn cmd_psi(alphabet: &GradedAlphabet, max_len: usize, report: &mut Report) -> CmdResult<()> {
    let r = freelie::psi_grading_check(alphabet, max_len).map_err(err)?;
    report.lines.push(format!("lifted rank: {}", r.lifted_rank));
    report
        .lines
        .push(format!("monomials checked: {}", r.monomials_checked));
    report
        .lines
        .push(format!("projected to zero: {}", r.projected_zero));
    report
        .lines
        .push(format!("surviving: {}", r.projected_nonzero));
    for v in &r.violations {
        report
            .lines
            .push(format!("violation at {}: {}", v.word, v.reason));
    }
    report.pass = r.passed();
    report.summary = format!("{} violations", r.violations.len());
    report.result = json!(r);
    Ok(())
}

fn cmd_unigroup(alg: &GradedLieAlgebra, report: &mut Report) -> CmdResult<()> {
    let p = unigroup::universal_presentation(alg).map_err(err)?;
    report
        .lines
        .push(format!("generators: {}", p.generators.join(", ")));
    report.lines.extend(p.render());
    report.summary = format!(
        "{} generators, {} relations",
        p.generators.len(),
        p.relations.len()
    );
    report.result = json!(p);
    Ok(())
}

fn presentation(p: &PresentationArgs, report: &mut Report) -> CmdResult<Option<Presentation>> {
    if let Some(path) = &p.presentation {
        report.inputs.insert("presentation".into(), path_str(path));
        return format::load_presentation(path).map(Some).map_err(err);
    }
    let path = p.algebra.as_ref().expect("clap requires one source");
    let Some(file) = load_valid(path, report)? else {
        return Ok(None);
    };
    unigroup::universal_presentation(&file.algebra)
        .map(Some)
        .map_err(err)
}

fn abelianization_lines(d: &AbelianizationData) -> Vec<String> {
    let mut lines = vec![format!("U_ab = {}", d.describe())];
    for (i, g) in d.generators.iter().enumerate() {
        lines.push(format!("{} -> {}", g, d.render_image(i)));
    }
    lines
}

fn cmd_abelianize(p: &PresentationArgs, report: &mut Report) -> CmdResult<()> {
    let Some(pres) = presentation(p, report)? else {
        return Ok(());
    };
    let d = unigroup::abelianize(&pres).map_err(err)?;
    report.lines = abelianization_lines(&d);
    report.summary = d.describe();
    report.result = json!(d);
    Ok(())
}

fn cmd_is_abelian(p: &PresentationArgs, report: &mut Report) -> CmdResult<()> {
    let Some(pres) = presentation(p, report)? else {
        return Ok(());
    };
    let v: AbelianVerdict = unigroup::is_abelian_presentation(&pres).map_err(err)?;
    report.lines = abelianization_lines(&v.data);
    for &(i, j) in &v.collisions {
        report.lines.push(format!(
            "collision: {} and {}",
            v.data.generators[i], v.data.generators[j]
        ));
    }
    report.pass = v.abelian;
    report.summary = format!("abelian: {}", v.abelian);
    report.result = json!(v);
    Ok(())
}

fn cmd_coarsen(alg: &GradedLieAlgebra, relabel: &Path, report: &mut Report) -> CmdResult<()> {
    report.inputs.insert("relabel".into(), path_str(relabel));
    let file = format::load_relabel(relabel, alg.group()).map_err(err)?;
    let r = unigroup::coarsening_check(alg, &file.group, &file.map).map_err(err)?;
    report.lines.extend(r.coarsening.render());
    let cg = &r.coarsening.coarse_group;
    let fg = &r.coarsening.fine_group;
    for (c, fs) in &r.coarsening.merges {
        if fs.len() > 1 {
            let parts: Vec<String> = fs.iter().map(|f| fg.format_element(f)).collect();
            report.lines.push(format!(
                "merged into {}: {}",
                cg.format_element(c),
                parts.join(", ")
            ));
        }
    }
    if let Some(w) = &r.witness {
        let names: Vec<&str> = w.indices.iter().map(|&i| alg.name(i)).collect();
        report
            .lines
            .push(format!("witness {}: {}", names.join(", "), w.message));
    }
    report.pass = r.valid;
    report.summary = if r.valid {
        "relabeling is a coarsening".into()
    } else {
        "relabeling is not a grading".into()
    };
    let map: Vec<Value> = r
        .coarsening
        .support_map
        .iter()
        .map(|(f, c)| json!({ "fine": fg.format_element(f), "coarse": cg.format_element(c) }))
        .collect();
    report.result = json!({ "valid": r.valid, "support_map": map, "witness": r.witness });
    Ok(())
}

fn render_lie(alg: &GradedLieAlgebra, v: &LieVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(&i, c)| format!("{} * {}", fmt_rational(c), alg.name(i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_center(alg: &GradedLieAlgebra, report: &mut Report) {
    let z = alg.center();
    let rendered: Vec<String> = z.iter().map(|v| render_lie(alg, v)).collect();
    for (v, s) in z.iter().zip(&rendered) {
        let deg = alg
            .homogeneous_degree(v)
            .map(|d| alg.group().format_element(&d))
            .unwrap_or_default();
        report.lines.push(format!("{s}  deg {deg}"));
    }
    report.summary = format!("center has dimension {}", z.len());
    report.result = json!({ "dimension": z.len(), "basis": rendered });
}

fn matrix_rows(m: &Matrix) -> Vec<String> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| fmt_rational(&m[(r, c)]))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn cmd_ider(alg: &GradedLieAlgebra, report: &mut Report) {
    let ders: Vec<EndoMatrix> = alg.inner_derivations();
    let mut out = Vec::new();
    for d in &ders {
        let deg = d
            .degree
            .as_ref()
            .map(|g| alg.group().format_element(g))
            .unwrap_or_default();
        report.lines.push(format!("{}  deg {}", d.name, deg));
        let rows = matrix_rows(&d.matrix);
        report.lines.extend(rows.iter().map(|r| format!("  {r}")));
        out.push(json!({ "name": d.name, "degree": deg, "rows": rows }));
    }
    report.summary = format!("{} independent inner derivations", ders.len());
    report.result = json!({ "dimension": ders.len(), "derivations": out });
}

fn cmd_span(alg: &GradedLieAlgebra, mats: &Path, report: &mut Report) -> CmdResult<()> {
    report.inputs.insert("mats".into(), path_str(mats));
    let list = format::load_matrices(mats, alg).map_err(err)?;
    let r = alg.is_graded_lie_subspace(&list).map_err(err)?;
    report.lines.push(format!(
        "matrices: {}",
        list.iter()
            .map(|m| m.name.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if let Some(w) = &r.witness {
        let why = match w.reason {
            SpanFailure::NonCommutingDegrees => "degrees do not commute",
            SpanFailure::NotInDegreeSpan => "commutator leaves the span",
        };
        report.lines.push(format!(
            "witness: ({}, {}): {}",
            w.first_name, w.second_name, why
        ));
    }
    report.pass = r.graded;
    report.summary = format!("graded Lie subspace: {}", r.graded);
    report.result = json!(r);
    Ok(())
}
