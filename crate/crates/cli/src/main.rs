use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use surfcount_core::cone::{ConeError, DdOptions, SolutionCone};
use surfcount_core::counting::{
    assemble_bm, fit_short_gf, load_lw, CountError, CountOptions, FitOptions, DEFAULT_POINT_CAP,
};
use surfcount_core::genus::{
    analyze_genus, genus_counts_by_face, loglog_csv, smooth, svg_scatter, AnalyzeOptions, GenusSeries,
};
use surfcount_core::gf::{smooth_asymptotics, to_quasipolynomial, AsymptoticProfile, ShortGF};
use surfcount_core::normal::{
    closed_quad_system, matching_equations, CoordSystem, NormalError, DEFAULT_DISK_CAP,
};
use surfcount_core::surfaces::{census, CensusOptions};
use surfcount_core::triangulation::{
    find_angle_structure, homology_f2_check, Kind, Strictness, TriError, Triangulation,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "surfcount",
    version,
    about = "Count closed essential surfaces in triangulated 3-manifolds"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write output files into this directory instead of printing.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum lattice points per slice.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP)]
    cap_points: usize,
    /// Maximum normal disks when building a surface.
    #[arg(long, global = true, default_value_t = DEFAULT_DISK_CAP)]
    cap_disks: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Triangulation summaries.
    #[command(subcommand)]
    Tri(TriCommand),
    /// Connected closed normal surfaces with bounded Euler characteristic.
    Surfaces {
        /// Triangulation file or isomorphism signature.
        tri: String,
        /// Lower bound on χ, written as a nonpositive even number such as -8.
        #[arg(long, default_value_t = -8, allow_negative_numbers = true)]
        max_euler: i64,
    },
    /// Vertex rays and maximal admissible faces of the solution cone.
    #[command(subcommand)]
    Cones(ConesCommand),
    /// Surface counts from an LW complex.
    #[command(subcommand)]
    Count(CountCommand),
    /// Analysis of count sequences.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Generating-function utilities.
    #[command(subcommand)]
    Gf(GfCommand),
}

#[derive(Subcommand)]
enum TriCommand {
    Info { tri: String },
    Homology { tri: String },
    Angles { tri: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coords {
    Standard,
    Quad,
    ClosedQuad,
}

#[derive(Subcommand)]
enum ConesCommand {
    Vertices {
        tri: String,
        #[arg(long, value_enum, default_value_t = Coords::Standard)]
        coords: Coords,
    },
    Faces {
        tri: String,
        #[arg(long, value_enum, default_value_t = Coords::Standard)]
        coords: Coords,
    },
}

#[derive(Subcommand)]
enum CountCommand {
    /// `b(−2n)` for `n = 1..=terms` and its generating function.
    Bm {
        lw: PathBuf,
        #[arg(long, default_value_t = 40)]
        terms: usize,
    },
    /// `ã(n) = a(n + 1)` for genus `2..=max-genus`.
    Ag {
        lw: PathBuf,
        #[arg(long, default_value_t = 31)]
        max_genus: usize,
    },
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Regularity, Lambert series and growth of an `n,a` CSV.
    Genus {
        csv: PathBuf,
        /// Terms skipped before the log-log fit.
        #[arg(long, default_value_t = 5)]
        burn_in: usize,
    },
}

#[derive(Subcommand)]
enum GfCommand {
    /// Power series coefficients `n = 1..=terms`.
    Expand {
        /// `P = [..]; Q = [(b, m), ..]`, or a file holding it.
        gf: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Short generating function for an `n,value` CSV starting at `n = 1`.
    Fit {
        csv: PathBuf,
        #[arg(long, default_value_t = 10)]
        guard: usize,
    },
    /// Quasi-polynomial form of the coefficients.
    Quasipoly { gf: String },
    /// Leading growth of the partial sums.
    Asymp { gf: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_FAILURE);
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SURFCOUNT_THREADS") {
        let n: usize = v.parse().with_context(|| format!("SURFCOUNT_THREADS=`{v}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(c) = cause.downcast_ref::<CountError>() {
            return if c.is_cap() {
                EXIT_CAP
            } else if matches!(
                c,
                CountError::Validation { .. }
                    | CountError::Lw { .. }
                    | CountError::Nonorientable(_)
                    | CountError::Tri(_)
            ) {
                EXIT_VALIDATION
            } else {
                EXIT_FAILURE
            };
        }
        if matches!(
            cause.downcast_ref::<NormalError>(),
            Some(NormalError::CapExceeded { .. })
        ) || matches!(
            cause.downcast_ref::<ConeError>(),
            Some(ConeError::CapExceeded { .. })
        ) {
            return EXIT_CAP;
        }
        if cause.downcast_ref::<TriError>().is_some() {
            return EXIT_VALIDATION;
        }
    }
    EXIT_FAILURE
}

/// Prints `content`, or writes it to `name` under `--out`.
fn emit(g: &Global, name: &str, content: &str) -> Result<()> {
    match &g.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| dir.display().to_string())?;
            let path = dir.join(name);
            std::fs::write(&path, content).with_context(|| path.display().to_string())?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn load_tri(arg: &str) -> Result<Triangulation> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| arg.to_string())?
    } else {
        arg.to_string()
    };
    Triangulation::load(&text).with_context(|| format!("cannot read triangulation `{arg}`"))
}

fn load_gf(arg: &str) -> Result<ShortGF> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| arg.to_string())?
    } else {
        arg.to_string()
    };
    text.trim().parse::<ShortGF>().map_err(|e| anyhow!("{e}"))
}

/// `n,value` rows with rational values; `n` must run `1, 2, …`.
fn read_value_csv(path: &Path) -> Result<Vec<BigRational>> {
    let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.starts_with('n')) {
            continue;
        }
        let (n, v) = line.split_once(',').ok_or_else(|| CountError::Lw {
            line: i + 1,
            msg: "expected `n,value`".into(),
        })?;
        let n: usize = n.trim().parse().map_err(|_| CountError::Lw {
            line: i + 1,
            msg: format!("bad index `{n}`"),
        })?;
        if n != out.len() + 1 {
            return Err(CountError::Lw {
                line: i + 1,
                msg: format!("expected n = {}", out.len() + 1),
            }
            .into());
        }
        let v: BigRational = v.trim().parse().map_err(|_| CountError::Lw {
            line: i + 1,
            msg: format!("bad value `{v}`"),
        })?;
        out.push(v);
    }
    Ok(out)
}

fn count_options(g: &Global) -> CountOptions {
    CountOptions {
        point_cap: g.cap_points,
        disk_cap: g.cap_disks,
        ..CountOptions::default()
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let g = &cli.global;
    match &cli.command {
        Command::Tri(c) => tri(g, c),
        Command::Surfaces { tri, max_euler } => surfaces(g, tri, *max_euler),
        Command::Cones(c) => cones(g, c),
        Command::Count(CountCommand::Bm { lw, terms }) => count_bm(g, lw, *terms),
        Command::Count(CountCommand::Ag { lw, max_genus }) => count_ag(g, lw, *max_genus),
        Command::Analyze(AnalyzeCommand::Genus { csv, burn_in }) => analyze(g, csv, *burn_in),
        Command::Gf(c) => gf(g, c),
    }
}

fn tri(g: &Global, c: &TriCommand) -> Result<ExitCode> {
    match c {
        TriCommand::Info { tri } => {
            let t = load_tri(tri)?;
            let valences: Vec<String> = t.edges().iter().map(|e| e.valence().to_string()).collect();
            let links: Vec<String> = t
                .vertices()
                .iter()
                .map(|v| v.link_euler_char.to_string())
                .collect();
            let ideal = t.vertices().iter().filter(|v| v.is_ideal()).count();
            let angles = match t.kind() {
                Kind::Ideal => {
                    if find_angle_structure(&t, Strictness::Strict)?.is_some() {
                        "yes"
                    } else {
                        "no"
                    }
                }
                Kind::Finite => "n/a",
            };
            let h = homology_f2_check(&t)?;
            let mut s = format!(
                "{} tetrahedra; {} edges valence {}; {} cusp{}, link χ={}; strict angle structure: {angles}; F₂ check: {}\n",
                t.size(),
                t.edges().len(),
                valences.join(","),
                ideal,
                if ideal == 1 { "" } else { "s" },
                links.join(","),
                if h.passes { "pass" } else { "fail" }
            );
            if g.format == Format::Csv {
                s = format!(
                    "tetrahedra,edges,valences,cusps,link_euler,strict_angles,f2_check\n{},{},\"{}\",{},\"{}\",{angles},{}\n",
                    t.size(),
                    t.edges().len(),
                    valences.join(" "),
                    ideal,
                    links.join(" "),
                    h.passes
                );
            }
            emit(g, "tri_info.txt", &s)?;
        }
        TriCommand::Homology { tri } => {
            let h = homology_f2_check(&load_tri(tri)?)?;
            let s = format!(
                "dim H1(M; F2) = {}\ndim H1(boundary; F2) = {}\ncheck: {}\n",
                h.h1_manifold,
                h.h1_boundary,
                if h.passes { "pass" } else { "fail" }
            );
            emit(g, "homology.txt", &s)?;
            if !h.passes {
                return Ok(ExitCode::from(EXIT_VALIDATION));
            }
        }
        TriCommand::Angles { tri } => {
            let t = load_tri(tri)?;
            let (kind, a) = match find_angle_structure(&t, Strictness::Strict)? {
                Some(a) => ("strict", a),
                None => match find_angle_structure(&t, Strictness::PartiallyFlat)? {
                    Some(a) => ("partially flat", a),
                    None => {
                        emit(g, "angles.txt", "no angle structure\n")?;
                        return Ok(ExitCode::from(EXIT_VALIDATION));
                    }
                },
            };
            let mut s = String::new();
            if g.format == Format::Csv {
                s.push_str("tet,q0,q1,q2\n");
                for (i, x) in a.angles.iter().enumerate() {
                    let _ = writeln!(s, "{i},{},{},{}", x[0], x[1], x[2]);
                }
            } else {
                let _ = writeln!(s, "{kind} angle structure (units of π)");
                for (i, x) in a.angles.iter().enumerate() {
                    let _ = writeln!(s, "tet {i}: {} {} {}", x[0], x[1], x[2]);
                }
            }
            emit(g, "angles.txt", &s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn surfaces(g: &Global, tri: &str, max_euler: i64) -> Result<ExitCode> {
    if max_euler > 0 {
        bail!("--max-euler must be nonpositive");
    }
    let t = load_tri(tri)?;
    let opts = CensusOptions {
        max_neg_euler: max_euler.unsigned_abs() as usize,
        point_cap: g.cap_points,
        disk_cap: g.cap_disks,
        dd: DdOptions::default(),
    };
    let c = census(&t, &opts)?;
    match g.format {
        Format::Text => emit(g, "surfaces.txt", &c.report())?,
        Format::Csv => emit(g, "surfaces.csv", &c.to_csv())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cones(g: &Global, c: &ConesCommand) -> Result<ExitCode> {
    let (tri, coords, faces) = match c {
        ConesCommand::Vertices { tri, coords } => (tri, *coords, false),
        ConesCommand::Faces { tri, coords } => (tri, *coords, true),
    };
    let t = load_tri(tri)?;
    let system = match coords {
        Coords::Standard => matching_equations(&t, CoordSystem::Standard)?,
        Coords::Quad => matching_equations(&t, CoordSystem::Quad)?,
        Coords::ClosedQuad => closed_quad_system(&t)?,
    };
    let cone = SolutionCone::new(system, &DdOptions::default())?;
    let mut s = String::new();
    if faces {
        let list = cone.maximal_admissible_faces();
        if g.format == Format::Csv {
            s.push_str("face,rays\n");
        }
        for (i, f) in list.iter().enumerate() {
            let rays: Vec<String> = f.rays.iter().map(ToString::to_string).collect();
            match g.format {
                Format::Csv => {
                    let _ = writeln!(s, "{i},\"{}\"", rays.join(" "));
                }
                Format::Text => {
                    let _ = writeln!(s, "face {i}: rays {{{}}}", rays.join(", "));
                }
            }
        }
        if g.format == Format::Text {
            let _ = writeln!(s, "{} maximal admissible faces", list.len());
        }
        emit(g, "faces.txt", &s)?;
    } else {
        if g.format == Format::Csv {
            s.push_str("ray,vector\n");
        }
        for (i, r) in cone.rays().iter().enumerate() {
            match g.format {
                Format::Csv => {
                    let _ = writeln!(s, "{i},\"{r}\"");
                }
                Format::Text => {
                    let _ = writeln!(s, "{i}: {r}");
                }
            }
        }
        if g.format == Format::Text {
            let _ = writeln!(s, "{} vertex rays", cone.rays().len());
        }
        emit(g, "vertices.txt", &s)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn count_bm(g: &Global, lw: &Path, terms: usize) -> Result<ExitCode> {
    let lw = load_lw(lw)?;
    let a = assemble_bm(&lw, terms, &count_options(g))?;
    let mut report = String::new();
    let _ = writeln!(report, "B(x) = {}", a.gf);
    let _ = writeln!(report, "text: {}", a.gf.to_text());
    for (name, _, gf) in &a.per_face {
        let _ = writeln!(report, "face {name}: {gf}");
    }
    let d = &a.disjointness;
    let _ = writeln!(
        report,
        "disjointness up to n = {}: {}",
        d.checked_up_to,
        if d.is_clean() { "clean" } else { "FAILED" }
    );
    for (n, v, faces) in &d.overlaps {
        let _ = writeln!(report, "  overlap at n = {n}: {v} in {}", faces.join(", "));
    }
    for (n, v) in &d.uncovered {
        let _ = writeln!(report, "  uncovered at n = {n}: {v}");
    }
    let csv = a.series.to_csv("b");
    match (&g.out, g.format) {
        (Some(_), _) => {
            emit(g, "bm.csv", &csv)?;
            emit(g, "bm_report.txt", &report)?;
        }
        (None, Format::Csv) => print!("{csv}"),
        (None, Format::Text) => print!("{csv}{report}"),
    }
    if !d.is_clean() {
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }
    Ok(ExitCode::SUCCESS)
}

fn count_ag(g: &Global, lw: &Path, max_genus: usize) -> Result<ExitCode> {
    let lw = load_lw(lw)?;
    let per_face = genus_counts_by_face(&lw, max_genus, &count_options(g))?;
    let mut total = vec![0u64; max_genus.saturating_sub(1)];
    let mut report = String::new();
    for (name, s) in &per_face {
        for (acc, v) in total.iter_mut().zip(&s.values) {
            *acc += v;
        }
        let head: Vec<String> = s.values.iter().take(12).map(ToString::to_string).collect();
        let _ = writeln!(report, "face {name}: {}", head.join(", "));
    }
    let csv = GenusSeries::new(total).to_csv();
    match (&g.out, g.format) {
        (Some(_), _) => {
            emit(g, "ag.csv", &csv)?;
            emit(g, "ag_report.txt", &report)?;
        }
        (None, Format::Csv) => print!("{csv}"),
        (None, Format::Text) => print!("{csv}{report}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze(g: &Global, csv: &Path, burn_in: usize) -> Result<ExitCode> {
    let text = std::fs::read_to_string(csv).with_context(|| csv.display().to_string())?;
    let a = GenusSeries::from_csv(&text)?;
    let analysis = analyze_genus(
        &a.values,
        &AnalyzeOptions {
            burn_in,
            ..AnalyzeOptions::default()
        },
    )?;
    emit(g, "analysis.txt", &analysis.to_text())?;
    if g.out.is_some() {
        let abar = smooth(&a.values);
        emit(g, "loglog.csv", &loglog_csv(&abar))?;
        let pts: Vec<(f64, f64)> = abar
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, &v)| (((i + 1) as f64).ln(), (v as f64).ln()))
            .collect();
        emit(g, "loglog.svg", &svg_scatter(&pts, "log n", "log abar(n)"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn gf(g: &Global, c: &GfCommand) -> Result<ExitCode> {
    match c {
        GfCommand::Expand { gf, terms } => {
            let f = load_gf(gf)?;
            let e = f.expand(terms + 1);
            let mut s = String::from("n,value\n");
            for (n, v) in e.iter().enumerate().skip(1) {
                let _ = writeln!(s, "{n},{v}");
            }
            emit(g, "expand.csv", &s)?;
        }
        GfCommand::Fit { csv, guard } => {
            let values = read_value_csv(csv)?;
            let coeffs: Vec<BigRational> = std::iter::once(BigRational::from_integer(0.into()))
                .chain(values)
                .collect();
            let opts = FitOptions {
                guard: *guard,
                ..FitOptions::default()
            };
            let f = fit_short_gf(&coeffs, &opts)?;
            let s = match g.format {
                Format::Text => format!("{f}\ntext: {}\n", f.to_text()),
                Format::Csv => format!("{}\n", f.to_text()),
            };
            emit(g, "fit.txt", &s)?;
        }
        GfCommand::Quasipoly { gf } => {
            let q = to_quasipolynomial(&load_gf(gf)?)?;
            emit(g, "quasipoly.txt", &format!("period: {}\ns(n) = {q}\n", q.period))?;
        }
        GfCommand::Asymp { gf } => {
            let q = to_quasipolynomial(&load_gf(gf)?)?;
            let s = match smooth_asymptotics(&q)? {
                AsymptoticProfile::Zero => "partial sums vanish\n".to_string(),
                AsymptoticProfile::Power { d, c } => format!("partial sums ~ c n^d\nd: {d}\nc: {c}\n"),
            };
            emit(g, "asymp.txt", &s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
