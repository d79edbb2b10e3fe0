//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 verification failure, 2 input error, 3 forbidden or
//! inadmissible omega requested explicitly.

use crate::braidtangle::TangleWord;
use crate::hermforms::{maslov, meyer, IsotropicRelation};
use crate::io::{matrix_to_json, parse_braid, parse_closure, parse_tangle};
use crate::representations::{invariant_form, reduced_rep, unitarity_residual};
use crate::signatures::{
    defect, defect_sweep, seifert_from_braid, ClosureFixtures, ClosureSignature, DefectReport,
    GridSpec, SweepRow,
};
use crate::tanglefunctor::functor_value;
use crate::{omega_from_turns, Complex64, Error, DEFAULT_TOL};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_OMEGA: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tanglesig", version, about = "Signatures, Burau/Gassner matrices and defect checks for coloured braids and tangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Points {
    /// One angle per colour, in turns (fractions of a full circle).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub omega: Option<Vec<f64>>,
    /// Grid of N angles k/N per colour, skipping angle 0.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Shift grid angles to (k + offset)/N.
    #[arg(long, default_value_t = 0.0)]
    pub offset: f64,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Burau/Gassner matrix of a braid and its unitarity residual.
    Rep {
        braid: PathBuf,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        output: Output,
    },
    /// Signature function of a braid closure (one colour) or a fixture.
    Signature {
        input: PathBuf,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        output: Output,
    },
    /// Meyer cocycle of the representation matrices of two braids.
    Meyer {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        output: Output,
    },
    /// Maslov(F(reflected first), diagonal, F(second)).
    Maslov {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        output: Output,
    },
    /// The isotropic relation assigned to a tangle.
    Functor {
        tangle: PathBuf,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        output: Output,
    },
    /// Check the defect formulas; fails if an admissible point disagrees.
    VerifyDefect {
        first: PathBuf,
        second: PathBuf,
        /// Closure fixtures for the product, first and second closures.
        #[arg(long, value_delimiter = ',')]
        closures: Option<Vec<PathBuf>>,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        output: Output,
    },
    /// Defect rows over a grid, without a verdict.
    Sweep {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_delimiter = ',')]
        closures: Option<Vec<PathBuf>>,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        output: Output,
    },
    /// Render a CSV column as an SVG step plot.
    Plot {
        csv: PathBuf,
        /// Column to plot; defaults to "signature", else "lhs".
        #[arg(long)]
        column: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Fail {
    code: i32,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OmegaOnForbiddenLocus { .. } | Error::OmegaNotUnit { .. } => EXIT_OMEGA,
            Error::Parse(_)
            | Error::InvalidColouring(_)
            | Error::InvalidWord(_)
            | Error::ColourMismatch { .. }
            | Error::NotAnEndomorphism
            | Error::OmegaArity { .. }
            | Error::Unsupported(_)
            | Error::TransposeSymmetryViolated(_) => EXIT_INPUT,
            _ => EXIT_VERIFY,
        };
        Fail { code, msg: e.to_string() }
    }
}

fn input_fail(msg: impl Into<String>) -> Fail {
    Fail { code: EXIT_INPUT, msg: msg.into() }
}

type Run<T> = std::result::Result<T, Fail>;

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| input_fail(format!("{}: {e}", path.display())))
}

fn explicit_omega(points: &Points, mu: u32) -> Run<Vec<Complex64>> {
    let a = points
        .omega
        .as_ref()
        .ok_or_else(|| input_fail("--omega is required"))?;
    if a.len() != mu as usize {
        return Err(input_fail(format!("--omega needs {mu} angles, got {}", a.len())));
    }
    Ok(a.iter().map(|&t| omega_from_turns(t)).collect())
}

/// Explicit point as a one-element list, or the grid points.
fn point_list(points: &Points, mu: u32) -> Run<Vec<(Vec<f64>, Vec<Complex64>)>> {
    match (&points.omega, points.grid) {
        (Some(_), None) => {
            let w = explicit_omega(points, mu)?;
            Ok(vec![(points.omega.clone().unwrap(), w)])
        }
        (None, Some(n)) => {
            if n < 2 {
                return Err(input_fail("--grid must be at least 2"));
            }
            let g = GridSpec { n, offset: points.offset };
            Ok(g
                .points(mu as usize)
                .into_iter()
                .map(|idx| {
                    let a: Vec<f64> = idx.iter().map(|&k| g.angle(k)).collect();
                    let w = a.iter().map(|&t| omega_from_turns(t)).collect();
                    (a, w)
                })
                .collect())
        }
        _ => Err(input_fail("give exactly one of --omega or --grid")),
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Run<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| input_fail(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| input_fail(e.to_string())),
    }
}

fn angle_header(mu: usize) -> String {
    (1..=mu).map(|j| format!("omega_{j}_angle")).collect::<Vec<_>>().join(",")
}

fn join_angles(a: &[f64]) -> String {
    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn closures_arg(paths: &Option<Vec<PathBuf>>) -> Run<Option<ClosureFixtures>> {
    let Some(p) = paths else { return Ok(None) };
    if p.len() != 3 {
        return Err(input_fail("--closures needs three files: product,first,second"));
    }
    Ok(Some(ClosureFixtures {
        product: parse_closure(&read(&p[0])?)?,
        first: parse_closure(&read(&p[1])?)?,
        second: parse_closure(&read(&p[2])?)?,
    }))
}

fn load_pair(first: &Path, second: &Path) -> Run<(TangleWord, TangleWord)> {
    let t1 = parse_tangle(&read(first)?)?;
    let t2 = parse_tangle(&read(second)?)?;
    if t1.mu() != t2.mu() {
        return Err(input_fail("the two inputs use different numbers of colours"));
    }
    Ok((t1, t2))
}

fn cmd_rep(braid: &Path, points: &Points, o: &Output, stdout: &mut dyn Write) -> Run<()> {
    let b = parse_braid(&read(braid)?)?;
    let w = explicit_omega(points, b.source().mu)?;
    let r = reduced_rep(&b, &w, o.tol)?;
    let fs = invariant_form(b.source(), &w, o.tol)?;
    let ft = invariant_form(&b.target(), &w, o.tol)?;
    let doc = serde_json::json!({
        "matrix": matrix_to_json(&r.matrix),
        "unitarity_residual": unitarity_residual(&r, &fs, &ft),
    });
    emit(o.out.as_deref(), &format!("{doc:#}\n"), stdout)
}

fn cmd_signature(input: &Path, points: &Points, o: &Output, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Run<()> {
    let text = read(input)?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| input_fail(e.to_string()))?;
    let data = if v.get("word").is_some() {
        let b = parse_braid(&text)?;
        if b.source().mu != 1 {
            return Err(input_fail("signature of a braid closure needs mu = 1; pass a C-complex fixture instead"));
        }
        ClosureSignature::Seifert(seifert_from_braid(&b)?)
    } else {
        parse_closure(&text)?
    };
    let mu = match &data {
        ClosureSignature::Seifert(_) => 1,
        ClosureSignature::CComplex(d) => d.mu,
    };
    let mut csv = format!("{},signature,nullity\n", angle_header(mu as usize));
    for (angles, w) in point_list(points, mu)? {
        match data.signature(&w, o.tol) {
            Ok(s) => writeln!(csv, "{},{},{}", join_angles(&angles), s.value(), s.null).unwrap(),
            Err(e) if points.omega.is_some() => return Err(e.into()),
            Err(e) => {
                writeln!(stderr, "{}: {e}", join_angles(&angles)).ok();
                writeln!(csv, "{},,", join_angles(&angles)).unwrap();
            }
        }
    }
    if o.format == Format::Svg {
        let svg = step_plot_svg(&parse_series(&csv, "signature")?);
        return emit(o.out.as_deref(), &svg, stdout);
    }
    emit(o.out.as_deref(), &csv, stdout)
}

fn cmd_meyer(first: &Path, second: &Path, points: &Points, o: &Output, stdout: &mut dyn Write) -> Run<()> {
    let b1 = parse_braid(&read(first)?)?;
    let b2 = parse_braid(&read(second)?)?;
    if !b1.is_endomorphism() || !b2.is_endomorphism() || b1.source() != b2.source() {
        return Err(input_fail("Meyer needs two braids in the same coloured braid group"));
    }
    let w = explicit_omega(points, b1.source().mu)?;
    let j = invariant_form(b1.source(), &w, o.tol)?.space();
    let r1 = reduced_rep(&b1, &w, o.tol)?.matrix;
    let r2 = reduced_rep(&b2, &w, o.tol)?.matrix;
    let m = meyer(&r1, &r2, &j, o.tol)?;
    emit(o.out.as_deref(), &format!("{m}\n"), stdout)
}

fn cmd_maslov(first: &Path, second: &Path, points: &Points, o: &Output, stdout: &mut dyn Write) -> Run<()> {
    let (t1, t2) = load_pair(first, second)?;
    if !t1.is_endomorphism() || !t2.is_endomorphism() || t1.source() != t2.source() {
        return Err(input_fail("Maslov needs two endomorphisms of the same object"));
    }
    let w = explicit_omega(points, t1.mu())?;
    let f1 = functor_value(&crate::braidtangle::reflect(&t1), &w, o.tol)?;
    let f2 = functor_value(&t2, &w, o.tol)?;
    let d = IsotropicRelation::diagonal(f2.relation.source());
    let m = maslov(f1.relation.space(), d.space(), f2.relation.space(), o.tol)?;
    emit(o.out.as_deref(), &format!("{m}\n"), stdout)
}

fn cmd_functor(tangle: &Path, points: &Points, o: &Output, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Run<()> {
    let t = parse_tangle(&read(tangle)?)?;
    let w = explicit_omega(points, t.mu())?;
    let f = functor_value(&t, &w, o.tol)?;
    if let Some(e) = &f.warning {
        writeln!(stderr, "warning: {e}").ok();
    }
    let r = &f.relation;
    let doc = serde_json::json!({
        "source_dim": r.source().dim(),
        "target_dim": r.target().dim(),
        "dim": r.dim(),
        "isotropy_residual": r.space().isotropy_residual(),
        "lagrangian": r.space().is_lagrangian(o.tol),
        "basis": matrix_to_json(r.space().basis()),
    });
    emit(o.out.as_deref(), &format!("{doc:#}\n"), stdout)
}

/// Angles and the defect report at each point.
type DefectRows = Vec<(Vec<f64>, Result<DefectReport, Error>)>;

fn defect_csv(mu: usize, rows: &[(Vec<f64>, Result<DefectReport, Error>)], stderr: &mut dyn Write) -> String {
    let mut csv = format!("{},lhs,rhs,meyer_rhs,admissible,nullity\n", angle_header(mu));
    for (angles, r) in rows {
        match r {
            Ok(d) => writeln!(
                csv,
                "{},{},{},{},{},{}",
                join_angles(angles),
                opt(d.lhs),
                d.rhs,
                opt(d.meyer_rhs),
                d.admissible,
                opt(d.nullity)
            )
            .unwrap(),
            Err(e) => {
                writeln!(stderr, "{}: {e}", join_angles(angles)).ok();
                writeln!(csv, "{},,,,,", join_angles(angles)).unwrap();
            }
        }
    }
    csv
}

fn defect_rows(t1: &TangleWord, t2: &TangleWord, points: &Points, tol: f64, closures: Option<&ClosureFixtures>) -> Run<DefectRows> {
    if points.omega.is_some() {
        let w = explicit_omega(points, t1.mu())?;
        return Ok(vec![(points.omega.clone().unwrap(), defect(t1, t2, &w, tol, closures))]);
    }
    let n = points.grid.ok_or_else(|| input_fail("give --omega or --grid"))?;
    if n < 2 {
        return Err(input_fail("--grid must be at least 2"));
    }
    let rows: Vec<SweepRow> = defect_sweep(t1, t2, &GridSpec { n, offset: points.offset }, tol, closures);
    Ok(rows.into_iter().map(|r| (r.angles, r.report)).collect())
}

#[allow(clippy::too_many_arguments)]
fn cmd_defect(
    first: &Path,
    second: &Path,
    closures: &Option<Vec<PathBuf>>,
    points: &Points,
    o: &Output,
    verify: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Run<()> {
    let (t1, t2) = load_pair(first, second)?;
    let fixtures = closures_arg(closures)?;
    let rows = defect_rows(&t1, &t2, points, o.tol, fixtures.as_ref())?;
    if points.omega.is_some() {
        match &rows[0].1 {
            Err(e) => return Err(e.clone().into()),
            Ok(d) if verify && !d.admissible => {
                return Err(Fail { code: EXIT_OMEGA, msg: Error::AdmissibilityViolated.to_string() })
            }
            _ => {}
        }
    }
    let csv = defect_csv(t1.mu() as usize, &rows, stderr);
    emit(o.out.as_deref(), &csv, stdout)?;
    if verify {
        let bad: Vec<&Vec<f64>> = rows
            .iter()
            .filter(|(_, r)| !matches!(r, Ok(d) if d.consistent()))
            .map(|(a, _)| a)
            .collect();
        if !bad.is_empty() {
            for a in &bad {
                writeln!(stderr, "defect mismatch or error at {}", join_angles(a)).ok();
            }
            return Err(Fail { code: EXIT_VERIFY, msg: format!("{} failing points", bad.len()) });
        }
    }
    Ok(())
}

/// `(x, y)` points of one CSV column against the first column.
fn parse_series(csv_text: &str, column: &str) -> Run<Vec<(f64, f64)>> {
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = rdr.headers().map_err(|e| input_fail(e.to_string()))?.clone();
    let col = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| input_fail(format!("no column {column:?}")))?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| input_fail(e.to_string()))?;
        let x: f64 = rec[0].parse().map_err(|_| input_fail(format!("bad x value {:?}", &rec[0])))?;
        if rec[col].is_empty() {
            continue;
        }
        let y: f64 = rec[col].parse().map_err(|_| input_fail(format!("bad value {:?}", &rec[col])))?;
        out.push((x, y));
    }
    Ok(out)
}

/// A fixed-size step plot: one horizontal segment per plateau and a marker
/// at every jump.
pub fn step_plot_svg(points: &[(f64, f64)]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 360.0;
    const PAD: f64 = 40.0;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#).unwrap();
    let (ymin, ymax) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let (ymin, ymax) = if points.is_empty() { (-1.0, 1.0) } else { (ymin - 1.0, ymax + 1.0) };
    let px = |x: f64| PAD + x * (W - 2.0 * PAD);
    let py = |y: f64| H - PAD - (y - ymin) / (ymax - ymin) * (H - 2.0 * PAD);
    writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, px(0.0), py(ymin), px(1.0), py(ymin)).unwrap();
    let mut y = ymin.ceil() as i64;
    while (y as f64) <= ymax {
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{y}</text>"#, PAD - 6.0, py(y as f64) + 3.0).unwrap();
        y += 1;
    }
    // Plateaus: runs of equal y, each drawn from its first to last x.
    let mut i = 0;
    while i < points.len() {
        let mut j = i;
        while j + 1 < points.len() && points[j + 1].1 == points[i].1 {
            j += 1;
        }
        writeln!(
            s,
            r#"<line class="plateau" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="steelblue" stroke-width="2"/>"#,
            px(points[i].0),
            py(points[i].1),
            px(points[j].0),
            py(points[i].1)
        )
        .unwrap();
        if j + 1 < points.len() {
            let xm = 0.5 * (points[j].0 + points[j + 1].0);
            writeln!(
                s,
                r#"<circle class="jump" cx="{:.2}" cy="{:.2}" r="3" fill="firebrick"/>"#,
                px(xm),
                py(0.5 * (points[j].1 + points[j + 1].1))
            )
            .unwrap();
        }
        i = j + 1;
    }
    s.push_str("</svg>\n");
    s
}

fn cmd_plot(csv_path: &Path, column: &Option<String>, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Run<()> {
    let text = read(csv_path)?;
    let col = match column {
        Some(c) => c.clone(),
        None if text.lines().next().is_some_and(|h| h.split(',').any(|c| c == "signature")) => "signature".into(),
        None => "lhs".into(),
    };
    let series = parse_series(&text, &col)?;
    emit(out.as_deref(), &step_plot_svg(&series), stdout)
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if code == EXIT_OK {
                write!(stdout, "{e}").ok();
            } else {
                write!(stderr, "{e}").ok();
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Rep { braid, points, output } => cmd_rep(braid, points, output, stdout),
        Command::Signature { input, points, output } => cmd_signature(input, points, output, stdout, stderr),
        Command::Meyer { first, second, points, output } => cmd_meyer(first, second, points, output, stdout),
        Command::Maslov { first, second, points, output } => cmd_maslov(first, second, points, output, stdout),
        Command::Functor { tangle, points, output } => cmd_functor(tangle, points, output, stdout, stderr),
        Command::VerifyDefect { first, second, closures, points, output } => {
            cmd_defect(first, second, closures, points, output, true, stdout, stderr)
        }
        Command::Sweep { first, second, closures, points, output } => {
            cmd_defect(first, second, closures, points, output, false, stdout, stderr)
        }
        Command::Plot { csv, column, out } => cmd_plot(csv, column, out, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            writeln!(stderr, "error: {}", f.msg).ok();
            f.code
        }
    }
}
